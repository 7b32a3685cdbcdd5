//! The subcommands.  Payload numbers are decimal or rational strings.

use super::{Command, Config, Outcome};
use crate::classfield::{narrow_class_group, RayClassGroup};
use crate::eisenstein::{
    certify_rational, constant_term, constant_term_quadrature, eisenstein_value, rank_one_constant_term,
    EisensteinPoint, LatticeSumResult, TorusData,
};
use crate::error::{Error, Result};
use crate::field::{NumberField, OInt};
use crate::horospherical::{
    psi_project, random_kernel_function, rho0, sl2_order_formula, spherical_families, HeckeData, LMethod,
    LevelData,
};
use crate::numeric::{dd_to_decimal, effective_bits, CDd, Dd, C64};
use crate::schwartz::{random_s0, FractionalSchwartz, TwistedSchwartz};
use crate::zeta::shintani::euler_factor_at_level;
use crate::zeta::{bernoulli, bernoulli_poly, quadratic_zeta_bernoulli, ray_class_zeta_sum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Read;
use std::path::Path;

pub(super) fn execute(cfg: &Config, cmd: &Command) -> Result<Outcome> {
    let field = NumberField::new(cfg.d)?;
    match cmd {
        Command::Field => cached(cfg, "field", || field_payload(&field)),
        Command::Classgroup => cached(cfg, "classgroup", || classgroup_payload(&field, cfg.level)),
        Command::Fourier { input } => fourier(cfg, &field, input.as_deref()).map(Outcome::ok),
        Command::Zeta { neg } => zeta(&field, cfg.level, *neg).map(Outcome::ok),
        Command::Eisenstein { input, tau, r } => {
            eisenstein(cfg, &field, input.as_deref(), tau.as_deref(), *r).map(Outcome::ok)
        }
        Command::ConstantTerm { input, quadrature } => {
            constant(cfg, &field, input.as_deref(), *quadrature).map(Outcome::ok)
        }
        Command::Certify { input, max_exp } => certify(cfg, &field, input.as_deref(), *max_exp),
        Command::Horospherical { samples } => horospherical(cfg, &field, *samples).map(Outcome::ok),
    }
}

fn cached(cfg: &Config, family: &str, compute: impl FnOnce() -> Result<Value>) -> Result<Outcome> {
    match cfg.cache()? {
        None => compute().map(Outcome::ok),
        Some(c) => {
            let r = c.get_or_compute(family, cfg.d, cfg.level, compute)?;
            Ok(Outcome {
                payload: r.payload,
                cache_hit: r.hit,
                warnings: r.warnings,
                failed: false,
            })
        }
    }
}

fn digits(bits: u32) -> usize {
    ((effective_bits(bits) as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

fn dec(x: Dd, bits: u32) -> String {
    dd_to_decimal(x, digits(bits))
}

fn cdec(z: CDd, bits: u32) -> Value {
    json!({"re": dec(z.re, bits), "im": dec(z.im, bits)})
}

fn sci(x: f64) -> String {
    format!("{:e}", x)
}

fn rat(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// a + bω in the basis (1, √D).
fn sqrt_coordinates(field: &NumberField, x: OInt) -> [String; 2] {
    let t = field.t as i128;
    let one = rat(2 * x.0 + t * x.1, 2);
    let sq = if field.t == 1 { rat(x.1, 2) } else { rat(x.1, 1) };
    [one.to_string(), sq.to_string()]
}

fn field_payload(field: &NumberField) -> Result<Value> {
    let narrow = narrow_class_group(field)?.order();
    if field.is_rational() {
        return Ok(json!({
            "D": 1, "degree": 1, "d_F": 1,
            "fundamental_unit": null,
            "narrow_class_number": narrow,
        }));
    }
    let u = field.unit_data()?;
    Ok(json!({
        "D": field.d,
        "degree": field.degree,
        "d_F": field.disc,
        "omega": {"t": field.t, "n": field.n, "sqrt_basis": sqrt_coordinates(field, (0, 1))},
        "fundamental_unit": {
            "omega_basis": [u.eps.0.to_string(), u.eps.1.to_string()],
            "sqrt_basis": sqrt_coordinates(field, u.eps),
            "norm": u.eps_norm,
        },
        "totally_positive_unit": {
            "omega_basis": [u.eps_plus.0.to_string(), u.eps_plus.1.to_string()],
            "sqrt_basis": sqrt_coordinates(field, u.eps_plus),
            "power": u.plus_exp,
        },
        "narrow_class_number": narrow,
    }))
}

fn classgroup_payload(field: &NumberField, level: u64) -> Result<Value> {
    let g = RayClassGroup::new(field, level)?;
    let narrow = narrow_class_group(field)?.order();
    Ok(json!({
        "D": field.d,
        "N": level,
        "order": g.order(),
        "invariants": g.invariants(),
        "wide_classes": g.class_number(),
        "narrow_class_number": narrow,
        "unit_index": field.unit_index(level)?,
        "characters_even": g.characters_with_sign(0).len(),
        "characters_odd": g.characters_with_sign(1).len(),
    }))
}

fn read_input(path: &Path) -> Result<String> {
    let mut s = String::new();
    let r = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    r.map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path.display(), e)))?;
    Ok(s)
}

/// φ from a text file, or a random S⁰ table at level N.
fn load_phi(cfg: &Config, field: &NumberField, input: Option<&Path>) -> Result<(TwistedSchwartz, String)> {
    let (base, source) = match input {
        Some(p) => {
            let f = FractionalSchwartz::from_text(&read_input(p)?)?;
            if f.field != *field {
                return Err(Error::InvalidInput(format!(
                    "table is over D = {} but --D is {}",
                    f.field.d, field.d
                )));
            }
            (f, p.display().to_string())
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let phi = random_s0(field, cfg.level, &mut rng)
                .map_err(|e| Error::InvalidInput(format!("{} (pass --N > 1 or --input)", e)))?;
            (phi.base, format!("random S0 table, seed {}", cfg.seed))
        }
    };
    let phi = TwistedSchwartz {
        base,
        eta: None,
        n: cfg.n,
    };
    Ok((phi, source))
}

fn fourier(cfg: &Config, field: &NumberField, input: Option<&Path>) -> Result<Value> {
    let (phi, source) = load_phi(cfg, field, input)?;
    let fh = phi.base.fourier_transform()?;
    let back = fh.fourier_transform()?;
    Ok(json!({
        "source": source,
        "input": phi.base.to_text(),
        "transform": fh.to_text(),
        "double_transform_is_identity": back.equals(&phi.base)?,
    }))
}

fn zeta(field: &NumberField, level: u64, k: u32) -> Result<Value> {
    if k == 0 {
        return Err(Error::InvalidInput("--neg must be at least 1".into()));
    }
    let euler = euler_factor_at_level(field, level, k)?;
    let (value, check, method) = if field.is_rational() {
        // Σ_{a ∈ (Z/N)^×} ζ(-k, a/N)·N^k = -N^k/(k+1)·Σ B_{k+1}(a/N)
        let nk = BigRational::from_integer(BigInt::from(level).pow(k));
        let mut s = BigRational::zero();
        for a in 1..=level {
            if num_integer::gcd(a, level) == 1 {
                s += bernoulli_poly(k as usize + 1, &rat(a as i128, level as i128));
            }
        }
        let v = -nk * s / rat(k as i128 + 1, 1);
        let z = -bernoulli(k as usize + 1) / rat(k as i128 + 1, 1);
        (v, z * &euler, "hurwitz")
    } else {
        let v = ray_class_zeta_sum(field, level, k)?;
        (v, quadratic_zeta_bernoulli(field, k) * &euler, "shintani")
    };
    Ok(json!({
        "D": field.d,
        "N": level,
        "s": -(k as i64),
        "value": value.to_string(),
        "method": method,
        "bernoulli_check": check.to_string(),
        "agrees": value == check,
    }))
}

fn parse_tau(field: &NumberField, tau: Option<&str>) -> Result<Vec<C64>> {
    let xi = field.degree as usize;
    let Some(s) = tau else {
        return Ok(if xi == 1 {
            vec![C64::new(0.1, 1.3)]
        } else {
            vec![C64::new(0.1, 1.3), C64::new(0.2, 0.9)]
        });
    };
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("--tau: cannot parse {:?}", s)))?;
    if v.len() != 2 * xi {
        return Err(Error::InvalidInput(format!("--tau needs {} numbers", 2 * xi)));
    }
    Ok(v.chunks(2).map(|c| C64::new(c[0], c[1])).collect())
}

fn lattice_json(r: &LatticeSumResult) -> Value {
    serde_json::to_value(r.record()).expect("records serialize")
}

fn eisenstein(cfg: &Config, field: &NumberField, input: Option<&Path>, tau: Option<&str>, r: f64) -> Result<Value> {
    let (phi, source) = load_phi(cfg, field, input)?;
    let tau = parse_tau(field, tau)?;
    let pt = EisensteinPoint::new(tau.clone(), r);
    let v = eisenstein_value(&phi, cfg.m, 0.0, &pt, cfg.bound, cfg.prec)?;
    Ok(json!({
        "source": source,
        "m": cfg.m,
        "tau": tau.iter().map(|t| [sci(t.re), sci(t.im)]).collect::<Vec<_>>(),
        "r": sci(r),
        "value": lattice_json(&v),
    }))
}

fn constant(cfg: &Config, field: &NumberField, input: Option<&Path>, quadrature: bool) -> Result<Value> {
    let (phi, source) = load_phi(cfg, field, input)?;
    let ct = constant_term(&phi, cfg.m, &TorusData::default(), cfg.bound, cfg.prec)?;
    let mut out = json!({
        "source": source,
        "m": cfg.m,
        "constant_term": lattice_json(&ct),
    });
    if field.is_rational() && cfg.n == 0 {
        let exact = rank_one_constant_term(&phi, cfg.m)?;
        out["exact"] = match exact.as_rational() {
            Some(q) => json!(q.to_string()),
            None => cdec(exact.to_cdd(), cfg.prec),
        };
    }
    if quadrature {
        let y: Vec<f64> = (0..field.degree).map(|i| 1.1 + 0.2 * i as f64).collect();
        let q = constant_term_quadrature(&phi, cfg.m, &y, 1.0, cfg.quad, cfg.bound, cfg.prec)?;
        out["quadrature"] = json!({"points_per_axis": cfg.quad, "y": y.iter().map(|v| sci(*v)).collect::<Vec<_>>(), "value": cdec(q, cfg.prec)});
    }
    Ok(out)
}

fn certify(cfg: &Config, field: &NumberField, input: Option<&Path>, max_exp: u32) -> Result<Outcome> {
    let (phi, source) = load_phi(cfg, field, input)?;
    let t = TorusData::default();
    let a = constant_term(&phi, cfg.m, &t, cfg.bound, cfg.prec)?;
    let b = constant_term(&phi, cfg.m, &t, 2.0 * cfg.bound, cfg.prec + 8)?;
    let primes: Vec<u64> = crate::arith::factorize(phi.base.modulus * field.disc as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let (payload, failed) = match certify_rational(&a, &b, &primes, max_exp) {
        Ok(c) => (json!({"source": source, "m": cfg.m, "primes": primes, "certificate": c}), false),
        Err(f) => (json!({"source": source, "m": cfg.m, "primes": primes, "failure": f}), true),
    };
    Ok(Outcome {
        payload,
        cache_hit: false,
        warnings: Vec::new(),
        failed,
    })
}

fn horospherical(cfg: &Config, field: &NumberField, samples: usize) -> Result<Value> {
    let level = LevelData::new(field, cfg.level)?;
    level.require_narrow_class_number_one()?;
    let g = &level.gl2;
    let bits = cfg.prec;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut kernel = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..samples {
        let phi = random_s0(field, cfg.level, &mut rng)?;
        let r = rho0(&level, &phi, cfg.m, cfg.bound, bits)?;
        let coef = r
            .components
            .iter()
            .map(|c| psi_project(c).coefficient.abs())
            .fold(0.0, f64::max);
        let law = r.components.iter().map(|c| c.law_residual()).fold(0.0, f64::max);
        worst = worst.max(coef);
        kernel.push(json!({"sample": i, "max_coefficient": sci(coef), "law_residual": sci(law)}));
    }

    // round trip through the preimage for a kernel element of the first
    // family of the requested type
    let data = if cfg.m == 0 {
        spherical_families(&level).into_iter().next()
    } else {
        level
            .group
            .characters_with_sign(cfg.m)
            .into_iter()
            .next()
            .map(|chi| HeckeData::new(&level, level.group.characters()[0].clone(), chi, cfg.m, 0))
            .transpose()?
    };
    let round_trip = match data {
        None => Value::Null,
        Some(data) => {
            let psi = random_kernel_function(&level, &data, &mut rng)?;
            let method = LMethod::Lattice { bound: cfg.bound, bits };
            let pre = crate::horospherical::preimage(&psi, method)?;
            let r = rho0(&level, &pre.phi, cfg.m, cfg.bound, bits)?.scaled(pre.scale);
            let comp = r
                .components
                .iter()
                .find(|c| c.data.chi == psi.data.chi)
                .ok_or_else(|| Error::Internal("ρ has no component for χ′".into()))?;
            let mut points = Vec::new();
            let mut residual = 0.0f64;
            let step = (g.order() / 10).max(1);
            for i in (0..g.order()).step_by(step).take(10) {
                let d = (comp.values[i] - psi.values[i]).abs();
                residual = residual.max(d);
                let x = g.elements[i];
                points.push(json!({
                    "x": x.iter().map(|e| [e.0.to_string(), e.1.to_string()]).collect::<Vec<_>>(),
                    "psi": cdec(psi.values[i], bits),
                    "rho": cdec(comp.values[i], bits),
                    "residual": sci(d),
                }));
            }
            json!({
                "lambda": cdec(pre.lambda.value, bits),
                "lambda_tail_bound": sci(pre.lambda.tail_bound),
                "preimage_in_s0": crate::schwartz::is_s0(&pre.phi),
                "points": points,
                "max_residual": sci(residual),
            })
        }
    };
    Ok(json!({
        "D": field.d,
        "N": cfg.level,
        "m": cfg.m,
        "gl2_order": g.order(),
        "sl2_order": g.sl2_order(),
        "sl2_order_formula": sl2_order_formula(field, cfg.level)?.to_string(),
        "ray_class_order": level.group.order(),
        "kernel_check": {"samples": kernel, "max_coefficient": sci(worst)},
        "round_trip": round_trip,
    }))
}
