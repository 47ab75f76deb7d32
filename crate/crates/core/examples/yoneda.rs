//! Representable modules and the Yoneda isomorphism.

use std::sync::Arc;

use dgcat::exactlin::Field;
use dgcat::fixtures;
use dgcat::functors::{evaluation_matrix, module_hom, yoneda};

fn main() {
    let c = Arc::new(fixtures::beilinson(Field::Rational, 2));
    for a in c.objects() {
        for b in c.objects() {
            let h = module_hom(&yoneda(c.clone(), a), &yoneda(c.clone(), b)).unwrap();
            let ev = evaluation_matrix(&h, a, &c, 0, c.hom(a, b).dim(0)).unwrap();
            println!("Hom(h^{}, h^{}): {:?}, evaluation rank {}", c.label(a), c.label(b), h.complex().cohomology_dims(), ev.rank());
        }
    }
}
