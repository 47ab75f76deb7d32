//! The only place where shift-category signs are computed.
//!
//! An entry `C[r] → C'[r']` of underlying degree `u` has degree `u + r - r'`. Its differential is
//! `(-1)^{r'} d`, and entries compose without extra sign through the functional composite
//! `g ∘ f = (-1)^{|f||g|} mul(f, g)` of the base category.

use crate::dgcore::{DgCategory, ObjId};
use crate::exactlin::{Scalar, Vector};

pub fn underlying_degree(degree: i64, src_shift: i64, dst_shift: i64) -> i64 {
    degree - src_shift + dst_shift
}

pub fn abar_d(base: &DgCategory, a: ObjId, b: ObjId, u: i64, dst_shift: i64, v: &[Scalar]) -> Vector {
    let w = base.hom(a, b).complex.apply_diff(u, v);
    if dst_shift.rem_euclid(2) == 1 {
        w.iter().map(|x| -x).collect()
    } else {
        w
    }
}

/// `g ∘ f` for `f: a → b` of underlying degree `uf` and `g: b → c` of underlying degree `ug`.
#[allow(clippy::too_many_arguments)]
pub fn abar_comp(base: &DgCategory, a: ObjId, b: ObjId, c: ObjId, uf: i64, f: &[Scalar], ug: i64, g: &[Scalar]) -> Vector {
    let w = base.mul_coords(a, b, c, uf, f, ug, g);
    if (uf * ug).rem_euclid(2) == 1 {
        w.iter().map(|x| -x).collect()
    } else {
        w
    }
}
