//! Twisted complexes over the Kronecker quiver: cones, Hom complexes, contractibility and
//! Gaussian reduction.

use std::sync::Arc;

use dgcat::dgcore::ObjId;
use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::pretr::{cone, ho_hom, is_contractible, reduce, TwistedComplex};

fn main() {
    let k = Arc::new(fixtures::kronecker(Field::Rational));
    let ev = fixtures::evaluation(&k);
    let l = cone(&ev).unwrap();
    println!("cone(ev) = {l}");
    let e1 = TwistedComplex::embed(k.clone(), ObjId(0));
    let e2 = TwistedComplex::embed(k.clone(), ObjId(1));
    for (name, x) in [("e1", &e1), ("e2", &e2), ("L", &l)] {
        let dims: Vec<usize> = (-2..=2).map(|n| ho_hom(x, &l, n).unwrap()).collect();
        println!("H^(-2..2) Hom({name}, L) = {dims:?}");
    }
    let c = cone(&l.identity()).unwrap();
    println!("cone(id_L) has {} terms, contractible: {}", c.len(), is_contractible(&c).unwrap().is_some());
    let (r, _) = reduce(&c).unwrap();
    println!("after reduction: {} terms", r.len());
}
