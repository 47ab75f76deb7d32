//! Serre functors: the A2 quiver has one, the identity on the Kronecker quiver is not one.

use std::sync::Arc;

use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::functors::{verify_serre, DgFunctor, SerreData};

fn main() {
    let f = Field::Rational;
    println!("A2: {:?}", verify_serre(&fixtures::a2_serre(f)).unwrap());
    let k = Arc::new(fixtures::kronecker(f));
    let id = SerreData::endo(DgFunctor::identity(k), vec![vec![f.one()], vec![f.one()]]);
    println!("identity on K: {:?}", verify_serre(&id).unwrap());
}
