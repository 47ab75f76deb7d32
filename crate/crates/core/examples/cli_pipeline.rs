//! The command-line interface driven in-process on the shipped fixtures.

use std::path::Path;

fn run(args: &[&str]) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let args = std::iter::once("dgcat".to_string()).chain(args.iter().map(|a| {
        if a.ends_with(".json") { dir.join(a).to_string_lossy().into_owned() } else { a.to_string() }
    }));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dgcat::cli::run_with(args, &mut out, &mut err);
    print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    println!("exit {code}\n");
}

fn main() {
    run(&["validate", "kronecker.json"]);
    run(&["validate", "broken_differential.json"]);
    run(&["ext", "beilinson3.json"]);
    run(&["check-sod", "kronecker_sod.json"]);
    run(&["ring", "motivic_ledger.json", "eq", "[P1]*[P1]", "4*[pt]"]);
}
