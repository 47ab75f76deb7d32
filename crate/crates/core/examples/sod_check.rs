//! Semiorthogonal decomposition claims and their audit trails.

use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::sodgen::check_sod;

fn main() {
    let f = Field::Rational;
    for (name, claim) in [
        ("Kronecker", fixtures::kronecker_claim(f)),
        ("Kronecker, wrong triangle", fixtures::kronecker_claim_broken(f)),
        ("mutated Kronecker", fixtures::kronecker_mutated_claim(f)),
        ("K ⊗ A2 by K-blocks", fixtures::induced_tensor_claim(&fixtures::kronecker(f), &fixtures::a2(f))),
    ] {
        let trail = check_sod(&claim).unwrap();
        println!("== {name}: {}\n{trail}", if trail.passed() { "pass" } else { "fail" });
    }
}
