//! Tensor products and opposites of DG categories, with a Künneth check.

use dgcat::dgcore::{opposite, tensor, validate, ObjId};
use dgcat::exactlin::Field;
use dgcat::fixtures;

fn main() {
    let f = Field::Rational;
    let k = fixtures::kronecker(f);
    let e = fixtures::epsilon(f);
    let t = tensor(&k, &e).unwrap();
    println!("K ⊗ k[ε]: {} objects, valid {}", t.num_objects(), validate(&t).is_valid());
    for a in t.objects() {
        for b in t.objects() {
            println!("  H Hom({}, {}) = {:?}", t.label(a), t.label(b), t.hom(a, b).complex.cohomology_dims());
        }
    }
    let op = opposite(&k);
    println!("K^op valid {}, Hom_op(e2, e1) = {:?}", validate(&op).is_valid(), op.hom(ObjId(1), ObjId(0)).complex.dims());
}
