//! Driving the command-line front end from code.

fn main() {
    let dir = std::env::temp_dir().join("eisen-example-cache");
    let dir = dir.to_str().expect("utf-8 temp dir");
    for args in [
        vec!["eisen", "--cache-dir", dir, "field", "--D", "5"],
        vec!["eisen", "--cache-dir", dir, "zeta", "--D", "5", "--neg", "1", "--format", "text"],
        vec!["eisen", "--no-cache", "certify", "--D", "5", "--N", "3", "--bound", "1e4", "--prec", "96"],
    ] {
        let code = eisen::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
        println!("exit {}", code);
    }
}
