use std::fmt;

use rayon::prelude::*;

use crate::exactlin::{is_zero_vector, Vector};

use super::{DgCategory, ObjId};

/// A violated axiom together with the basis tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DSquared { src: String, dst: String, degree: i64 },
    Leibniz { objects: [String; 3], degrees: (i64, i64), basis: (usize, usize) },
    Associativity { objects: [String; 4], degrees: (i64, i64, i64), basis: (usize, usize, usize) },
    LeftUnit { src: String, dst: String, degree: i64, basis: usize },
    RightUnit { src: String, dst: String, degree: i64, basis: usize },
    UnitNotCycle { object: String },
    MissingUnit { object: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DSquared { src, dst, degree } => write!(f, "d^2 != 0 on Hom({src},{dst}) in degree {degree}"),
            Violation::Leibniz { objects: [a, b, c], degrees: (p, q), basis: (i, j) } => {
                write!(f, "Leibniz fails for Hom({a},{b})^{p}[{i}] x Hom({b},{c})^{q}[{j}]")
            }
            Violation::Associativity { objects: [a, b, c, d], degrees: (p, q, r), basis: (i, j, k) } => write!(
                f,
                "associativity fails for Hom({a},{b})^{p}[{i}] x Hom({b},{c})^{q}[{j}] x Hom({c},{d})^{r}[{k}]"
            ),
            Violation::LeftUnit { src, dst, degree, basis } => {
                write!(f, "mul(id, f) != f for Hom({src},{dst})^{degree}[{basis}]")
            }
            Violation::RightUnit { src, dst, degree, basis } => {
                write!(f, "mul(f, id) != f for Hom({src},{dst})^{degree}[{basis}]")
            }
            Violation::UnitNotCycle { object } => write!(f, "d(id_{object}) != 0"),
            Violation::MissingUnit { object } => write!(f, "id_{object} is missing"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks d², Leibniz, associativity and unit laws on every basis tuple.
pub fn validate(c: &DgCategory) -> ValidationReport {
    let objs: Vec<ObjId> = c.objects().collect();
    let mut violations = Vec::new();

    for ((a, b), hom) in c.homs() {
        for n in hom.complex.d_squared_violations() {
            violations.push(Violation::DSquared { src: c.label(a).into(), dst: c.label(b).into(), degree: n });
        }
    }
    for &a in &objs {
        let id = c.identity_coords(a);
        if id.len() != c.hom(a, a).dim(0) {
            violations.push(Violation::MissingUnit { object: c.label(a).into() });
            continue;
        }
        if !is_zero_vector(&c.hom(a, a).complex.apply_diff(0, id)) {
            violations.push(Violation::UnitNotCycle { object: c.label(a).into() });
        }
    }
    let missing: Vec<bool> = objs.iter().map(|&a| c.identity_coords(a).len() != c.hom(a, a).dim(0)).collect();

    let per_object: Vec<Vec<Violation>> = objs
        .par_iter()
        .map(|&a| {
            let mut out = Vec::new();
            for &b in &objs {
                units(c, a, b, &missing, &mut out);
                for &cc in &objs {
                    leibniz(c, a, b, cc, &mut out);
                    for &d in &objs {
                        associativity(c, [a, b, cc, d], &mut out);
                    }
                }
            }
            out
        })
        .collect();
    violations.extend(per_object.into_iter().flatten());
    ValidationReport { violations }
}

fn basis_vec(c: &DgCategory, len: usize, i: usize) -> Vector {
    let mut v = vec![c.field().zero(); len];
    v[i] = c.field().one();
    v
}

fn units(c: &DgCategory, a: ObjId, b: ObjId, missing: &[bool], out: &mut Vec<Violation>) {
    let hom = c.hom(a, b);
    for (&n, &dim) in hom.complex.dims() {
        for i in 0..dim {
            let f = basis_vec(c, dim, i);
            if !missing[a.0] {
                let l = c.mul_coords(a, a, b, 0, c.identity_coords(a), n, &f);
                if l != f {
                    out.push(Violation::LeftUnit { src: c.label(a).into(), dst: c.label(b).into(), degree: n, basis: i });
                }
            }
            if !missing[b.0] {
                let r = c.mul_coords(a, b, b, n, &f, 0, c.identity_coords(b));
                if r != f {
                    out.push(Violation::RightUnit { src: c.label(a).into(), dst: c.label(b).into(), degree: n, basis: i });
                }
            }
        }
    }
}

fn leibniz(c: &DgCategory, a: ObjId, b: ObjId, cc: ObjId, out: &mut Vec<Violation>) {
    let (hab, hbc, hac) = (c.hom(a, b), c.hom(b, cc), c.hom(a, cc));
    for (&p, &dp) in hab.complex.dims() {
        for (&q, &dq) in hbc.complex.dims() {
            for i in 0..dp {
                let f = basis_vec(c, dp, i);
                let df = hab.complex.apply_diff(p, &f);
                for j in 0..dq {
                    let g = basis_vec(c, dq, j);
                    let dg = hbc.complex.apply_diff(q, &g);
                    let fg = c.mul_coords(a, b, cc, p, &f, q, &g);
                    let lhs = hac.complex.apply_diff(p + q, &fg);
                    let mut rhs = c.mul_coords(a, b, cc, p + 1, &df, q, &g);
                    let sign = c.field().one().signed(p);
                    c.mul_acc(&mut rhs, &sign, a, b, cc, p, &f, q + 1, &dg);
                    if lhs != rhs {
                        out.push(Violation::Leibniz {
                            objects: [c.label(a).into(), c.label(b).into(), c.label(cc).into()],
                            degrees: (p, q),
                            basis: (i, j),
                        });
                    }
                }
            }
        }
    }
}

fn associativity(c: &DgCategory, [a, b, cc, d]: [ObjId; 4], out: &mut Vec<Violation>) {
    let (hab, hbc, hcd) = (c.hom(a, b), c.hom(b, cc), c.hom(cc, d));
    if hab.is_zero() || hbc.is_zero() || hcd.is_zero() {
        return;
    }
    for (&p, &dp) in hab.complex.dims() {
        for (&q, &dq) in hbc.complex.dims() {
            for (&r, &dr) in hcd.complex.dims() {
                for i in 0..dp {
                    let f = basis_vec(c, dp, i);
                    for j in 0..dq {
                        let g = basis_vec(c, dq, j);
                        let fg = c.mul_coords(a, b, cc, p, &f, q, &g);
                        for k in 0..dr {
                            let h = basis_vec(c, dr, k);
                            let left = c.mul_coords(a, cc, d, p + q, &fg, r, &h);
                            let gh = c.mul_coords(b, cc, d, q, &g, r, &h);
                            let right = c.mul_coords(a, b, d, p, &f, q + r, &gh);
                            if left != right {
                                out.push(Violation::Associativity {
                                    objects: [
                                        c.label(a).into(),
                                        c.label(b).into(),
                                        c.label(cc).into(),
                                        c.label(d).into(),
                                    ],
                                    degrees: (p, q, r),
                                    basis: (i, j, k),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}
