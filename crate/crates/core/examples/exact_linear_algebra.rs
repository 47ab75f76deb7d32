//! Ranks, kernels and cohomology over Q and F_p, and the Smith form over Z.

use std::collections::BTreeMap;

use dgcat::exactlin::{smith_normal_form, ChainComplex, Field, IntMatrix, Matrix};

fn main() {
    for field in [Field::Rational, Field::prime(3).unwrap()] {
        // rank of this matrix drops mod 3
        let m = Matrix::from_i64(field, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        println!("over {field}: rank {}, kernel basis {:?}", m.rank(), m.nullspace().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    }

    // the simplicial chain complex of a circle, cohomologically graded
    let f = Field::Rational;
    let d0 = Matrix::from_i64(f, &[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]]);
    let c = ChainComplex::new(f, BTreeMap::from([(0, 3), (1, 3)]), BTreeMap::from([(0, d0)])).unwrap();
    println!("circle cohomology: {:?}", c.cohomology_dims());

    let s = smith_normal_form(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
    println!("invariant factors: {:?}", s.invariant_factors().iter().map(|x| x.to_string()).collect::<Vec<_>>());
}
