//! Finite abelian groups from generators and relations via Smith normal form.

use crate::arith::gcd128;

/// Z^k / (row span of the relations), diagonalised.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    /// Invariant factors d_1 | d_2 | ..., all > 1.
    pub invariants: Vec<u64>,
    /// k × r matrix: exponent vectors map to SNF coordinates by e·V.
    transform: Vec<Vec<i128>>,
    ngens: usize,
}

impl AbelianGroup {
    pub fn from_relations(ngens: usize, relations: &[Vec<i128>]) -> Self {
        let mut a: Vec<Vec<i128>> = relations.to_vec();
        for r in &a {
            assert_eq!(r.len(), ngens);
        }
        let mut v: Vec<Vec<i128>> = (0..ngens)
            .map(|i| (0..ngens).map(|j| (i == j) as i128).collect())
            .collect();
        let m = a.len();
        let k = ngens;
        let mut diag = Vec::new();
        let mut t = 0;
        while t < m.min(k) {
            // smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..k {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);
            loop {
                let p = a[t][t];
                let mut dirty = false;
                for i in t + 1..m {
                    let q = a[i][t].div_euclid(p);
                    if q != 0 {
                        for j in t..k {
                            a[i][j] -= q * a[t][j];
                        }
                    }
                    dirty |= a[i][t] != 0;
                }
                for j in t + 1..k {
                    let q = a[t][j].div_euclid(p);
                    if q != 0 {
                        for row in a.iter_mut() {
                            row[j] -= q * row[t];
                        }
                        for row in v.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    dirty |= a[t][j] != 0;
                }
                if !dirty {
                    // divisibility of the remaining block by the pivot
                    let bad = (t + 1..m)
                        .flat_map(|i| (t + 1..k).map(move |j| (i, j)))
                        .find(|&(i, j)| a[i][j] % p != 0);
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            for j in t..k {
                                a[t][j] += a[i][j];
                            }
                            continue;
                        }
                    }
                }
                // move the smallest nonzero entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..m {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..k {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    swap_cols(&mut v, t, best.1);
                }
            }
            diag.push(a[t][t].abs());
            t += 1;
        }
        assert_eq!(diag.len(), k, "relations do not define a finite group");
        let mut invariants = Vec::new();
        let mut transform = vec![Vec::new(); k];
        for (j, &d) in diag.iter().enumerate() {
            if d == 1 {
                continue;
            }
            invariants.push(d as u64);
            for (i, row) in v.iter().enumerate() {
                transform[i].push(row[j].rem_euclid(d));
            }
        }
        AbelianGroup {
            invariants,
            transform,
            ngens: k,
        }
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants
            .iter()
            .fold(1u64, |e, &d| (e / gcd128(e as i128, d as i128) as u64) * d)
    }

    /// Coordinates of the element with the given generator exponents.
    pub fn coordinates(&self, exps: &[i128]) -> Vec<u64> {
        assert_eq!(exps.len(), self.ngens);
        (0..self.invariants.len())
            .map(|j| {
                let d = self.invariants[j] as i128;
                let mut s = 0i128;
                for (i, &e) in exps.iter().enumerate() {
                    s = (s + e.rem_euclid(d) * self.transform[i][j]).rem_euclid(d);
                }
                s as u64
            })
            .collect()
    }

    /// Every character as its coordinate vector c, with
    /// χ_c(x) = e(Σ c_i x_i / d_i).
    pub fn all_characters(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariants {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for c in &out {
                for a in 0..d {
                    let mut c2 = c.clone();
                    c2.push(a);
                    next.push(c2);
                }
            }
            out = next;
        }
        out
    }

    /// χ_c(x) as a numerator over the group exponent.
    pub fn pair(&self, c: &[u64], x: &[u64]) -> u64 {
        let e = self.exponent();
        let mut s = 0u64;
        for ((&ci, &xi), &d) in c.iter().zip(x).zip(&self.invariants) {
            s = (s + (ci * xi % d) * (e / d)) % e;
        }
        s
    }
}

fn swap_cols(a: &mut [Vec<i128>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_products() {
        // Z/4 × Z/6 ≅ Z/2 × Z/12
        let g = AbelianGroup::from_relations(2, &[vec![4, 0], vec![0, 6]]);
        assert_eq!(g.invariants, vec![2, 12]);
        assert_eq!(g.order(), 24);
        // Z/3 × Z/5 is cyclic
        let g = AbelianGroup::from_relations(2, &[vec![3, 0], vec![0, 5], vec![3, 5]]);
        assert_eq!(g.invariants, vec![15]);
        let g = AbelianGroup::from_relations(3, &[vec![2, 0, 0], vec![1, 1, 0], vec![0, 0, 1], vec![0, 2, 0]]);
        assert_eq!(g.invariants, vec![2]);
    }

    #[test]
    fn coordinates_respect_relations() {
        let rels = vec![vec![6, 4], vec![2, 8], vec![0, 12]];
        let g = AbelianGroup::from_relations(2, &rels);
        for r in &rels {
            assert!(g.coordinates(r).iter().all(|&x| x == 0));
        }
        assert_eq!(g.all_characters().len() as u64, g.order());
    }
}
