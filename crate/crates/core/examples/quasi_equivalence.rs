//! Quasi-equivalence certificates.

use std::sync::Arc;

use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::functors::{check_quasi_equiv, point_equivalence, EquivCertificate};

fn main() {
    let f = Field::Rational;
    let k = fixtures::kronecker(f);
    for o in k.objects() {
        let block = Arc::new(k.full_subcategory(&[o]).unwrap());
        let cert = point_equivalence(&block).unwrap().expect("exceptional object");
        println!("point → <{}>: {:?}", k.label(o), check_quasi_equiv(&cert).unwrap());
    }
    let whole = Arc::new(k.clone());
    println!("point → K: certificate found {}", point_equivalence(&whole).unwrap().is_some());
    let collapse = EquivCertificate::with_object_witnesses(fixtures::kronecker_collapse(f)).unwrap();
    println!("collapse: {:?}", check_quasi_equiv(&collapse).unwrap());
}
