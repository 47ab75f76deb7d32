//! Generation certificates: cone(ev) lies in the second layer of <e1, e2>.

use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::sodgen::verify_generation;

fn main() {
    let cert = fixtures::kronecker_cone_certificate(Field::Rational);
    let r = verify_generation(&cert).unwrap();
    println!("verified {}, layers {}", r.ok, r.layers);
}
