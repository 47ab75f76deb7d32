use crate::dgcore::{DgCategory, ObjId};
use crate::exactlin::{Matrix, Scalar, Vector};

use super::{validate_functor, DgFunctor, FunctorError, Verdict};

/// Data for a Serre functor check on `C` realized inside `D`: the candidate `S: C → D`, an
/// inclusion `ι: C → D`, and per object `A` a trace on the cochains `Hom_D(ιA, SA)^0`.
///
/// The pairing is `⟨f, g⟩ = tr_A(mul(ιf, g))` for `f ∈ Hom(A, B)^n`, `g ∈ Hom_D(ιB, SA)^{-n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreData {
    pub functor: DgFunctor,
    pub inclusion: DgFunctor,
    pub traces: Vec<Vector>,
}

impl SerreData {
    /// An endofunctor with `ι` the identity.
    pub fn endo(functor: DgFunctor, traces: Vec<Vector>) -> SerreData {
        let inclusion = DgFunctor::identity(functor.src().clone());
        SerreData { functor, inclusion, traces }
    }

    pub fn rescaled(&self, c: &[Scalar]) -> SerreData {
        let traces = self.traces.iter().zip(c).map(|(t, c)| t.iter().map(|x| x * c).collect()).collect();
        SerreData { traces, ..self.clone() }
    }
}

fn trace(d: &DgCategory, t: &[Scalar], v: &[Scalar]) -> Scalar {
    t.iter().zip(v).fold(d.field().zero(), |acc, (a, b)| &acc + &(a * b))
}

pub fn verify_serre(data: &SerreData) -> Result<Verdict, FunctorError> {
    let (s, i) = (&data.functor, &data.inclusion);
    if s.src() != i.src() || s.dst() != i.dst() {
        return Err(FunctorError::BaseMismatch);
    }
    let (c, d) = (s.src(), s.dst());
    if data.traces.len() != c.num_objects() {
        return Err(FunctorError::Malformed("one trace per object is required".into()));
    }
    for f in [s, i] {
        if let Some(v) = validate_functor(f).first() {
            return Ok(Verdict::fail(format!("not a DG functor: {v}")));
        }
    }
    let tr_space = |a: ObjId| d.hom(i.object(a), s.object(a));
    for a in c.objects() {
        let h = tr_space(a);
        if data.traces[a.0].len() != h.dim(0) {
            return Err(FunctorError::Malformed(format!("trace for {} has the wrong length", c.label(a))));
        }
        let dm = h.complex.diff(-1);
        for col in 0..dm.cols() {
            if !trace(d, &data.traces[a.0], &dm.column(col)).is_zero() {
                return Ok(Verdict::fail(format!("trace for {} does not vanish on boundaries", c.label(a))));
            }
        }
    }
    // dimension symmetry first, across every pair and degree
    for a in c.objects() {
        for b in c.objects() {
            let lhs = c.hom(a, b).complex.cohomology_dims();
            let rhs = d.hom(i.object(b), s.object(a)).complex.cohomology_dims();
            let mut degrees: Vec<i64> = lhs.keys().copied().chain(rhs.keys().map(|n| -n)).collect();
            degrees.sort();
            degrees.dedup();
            for n in degrees {
                let (x, y) = (lhs.get(&n).copied().unwrap_or(0), rhs.get(&-n).copied().unwrap_or(0));
                if x != y {
                    return Ok(Verdict::fail(format!(
                        "dim H^{n} Hom({la},{lb}) = {x} but dim H^{m} Hom({lb},S{la}) = {y}",
                        la = c.label(a),
                        lb = c.label(b),
                        m = -n
                    )));
                }
            }
        }
    }
    // perfectness on cohomology representatives
    for a in c.objects() {
        for b in c.objects() {
            for &n in c.hom(a, b).complex.cohomology_dims().keys() {
                let left = c.hom(a, b).complex.cohomology_basis(n);
                let right = d.hom(i.object(b), s.object(a)).complex.cohomology_basis(-n);
                let block = i.block(a, b, n);
                let mut rows = Vec::new();
                for f in left.representatives() {
                    let jf = block.mul_vec(f)?;
                    rows.push(
                        right
                            .representatives()
                            .iter()
                            .map(|g| {
                                let fg = d.mul_coords(i.object(a), i.object(b), s.object(a), n, &jf, -n, g);
                                trace(d, &data.traces[a.0], &fg)
                            })
                            .collect::<Vector>(),
                    );
                }
                let m = Matrix::from_rows(c.field(), right.dim(), &rows)?;
                if m.rank() != left.dim() {
                    return Ok(Verdict::fail(format!(
                        "pairing on H^{n} Hom({},{}) is degenerate",
                        c.label(a),
                        c.label(b)
                    )));
                }
            }
        }
    }
    // naturality: tr_{A'}(mul(ιk, y)) = (-1)^{|k||y|} tr_A(mul(y, Sk)) for k: A' → A, y: ιA → SA'
    for a1 in c.objects() {
        for a in c.objects() {
            for &p in c.hom(a1, a).complex.cohomology_dims().keys() {
                let ks = c.hom(a1, a).complex.cohomology_basis(p);
                let ys = d.hom(i.object(a), s.object(a1)).complex.cohomology_basis(-p);
                let (ib, sb) = (i.block(a1, a, p), s.block(a1, a, p));
                for k in ks.representatives() {
                    let (ik, sk) = (ib.mul_vec(k)?, sb.mul_vec(k)?);
                    for y in ys.representatives() {
                        let l = d.mul_coords(i.object(a1), i.object(a), s.object(a1), p, &ik, -p, y);
                        let r = d.mul_coords(i.object(a), s.object(a1), s.object(a), -p, y, p, &sk);
                        let l = trace(d, &data.traces[a1.0], &l);
                        let r = trace(d, &data.traces[a.0], &r).signed(p * p);
                        if l != r {
                            return Ok(Verdict::fail(format!(
                                "pairing is not natural along Hom({},{})^{p}",
                                c.label(a1),
                                c.label(a)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}
