use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dgcore::{point_category, DgCategory, ObjId};
use crate::exactlin::Matrix;
use crate::pretr::{is_ho_iso, TwistedComplex, TwistedHom, TwistedMorphism};

use super::{pretr_extend, validate_functor, DgFunctor, FunctorError, Verdict};

/// A twisted complex `x` over the source and a closed degree-0 map `F(x) → b` over the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    pub target: ObjId,
    pub object: TwistedComplex,
    pub map: TwistedMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivCertificate {
    pub functor: DgFunctor,
    pub witnesses: Vec<EquivWitness>,
}

impl EquivCertificate {
    /// Identity witnesses for every target object hit by the functor on objects.
    pub fn with_object_witnesses(functor: DgFunctor) -> Result<EquivCertificate, FunctorError> {
        let mut witnesses = Vec::new();
        for b in functor.dst().objects() {
            let a = functor
                .src()
                .objects()
                .find(|&a| functor.object(a) == b)
                .ok_or_else(|| FunctorError::Malformed(format!("object {} is not in the image", functor.dst().label(b))))?;
            let object = TwistedComplex::embed(functor.src().clone(), a);
            let map = TwistedComplex::embed(functor.dst().clone(), b).identity();
            witnesses.push(EquivWitness { target: b, object, map });
        }
        Ok(EquivCertificate { functor, witnesses })
    }
}

/// Rank of the map induced by `f` on `H^n Hom(a, b)`.
pub(crate) fn induced_rank(f: &DgFunctor, a: ObjId, b: ObjId, n: i64) -> Result<(usize, usize, usize), FunctorError> {
    let (c, d) = (f.src(), f.dst());
    let hs = c.hom(a, b).complex.cohomology_basis(n);
    let ht = d.hom(f.object(a), f.object(b)).complex.cohomology_basis(n);
    let block = f.block(a, b, n);
    let cols = hs
        .representatives()
        .iter()
        .map(|r| Ok(ht.project(&block.mul_vec(r)?)?))
        .collect::<Result<Vec<_>, FunctorError>>()?;
    let rank = Matrix::from_columns(c.field(), ht.dim(), &cols)?.rank();
    Ok((hs.dim(), ht.dim(), rank))
}

/// Full faithfulness on cohomology over every pair and degree, then each witness.
pub fn check_quasi_equiv(cert: &EquivCertificate) -> Result<Verdict, FunctorError> {
    let f = &cert.functor;
    let (c, d) = (f.src(), f.dst());
    if let Some(v) = validate_functor(f).first() {
        return Ok(Verdict::fail(format!("not a DG functor: {v}")));
    }
    for a in c.objects() {
        for b in c.objects() {
            let mut degrees: Vec<i64> = c.hom(a, b).complex.dims().keys().copied().collect();
            degrees.extend(d.hom(f.object(a), f.object(b)).complex.dims().keys());
            degrees.sort();
            degrees.dedup();
            for n in degrees {
                let (ds, dt, rank) = induced_rank(f, a, b, n)?;
                if ds != dt || rank != ds {
                    return Ok(Verdict::fail(format!(
                        "H^{n} Hom({},{}): {ds} vs {dt}, induced rank {rank}",
                        c.label(a),
                        c.label(b)
                    )));
                }
            }
        }
    }
    let ext = pretr_extend(f);
    for b in d.objects() {
        let Some(w) = cert.witnesses.iter().find(|w| w.target == b) else {
            return Ok(Verdict::fail(format!("no witness for {}", d.label(b))));
        };
        let image = ext.object(&w.object)?;
        if w.map.src() != &image || w.map.dst() != &TwistedComplex::embed(d.clone(), b) {
            return Err(FunctorError::Malformed(format!("witness for {} has the wrong endpoints", d.label(b))));
        }
        if w.map.degree() != 0 || !w.map.is_closed() || !is_ho_iso(&w.map)? {
            return Ok(Verdict::fail(format!("witness for {} is not a homotopy equivalence", d.label(b))));
        }
    }
    Ok(Verdict::Pass)
}

/// A certificate that `point → c`, `pt ↦ A`, is a quasi-equivalence, when some object `A` has
/// `H^• End(A) = k` and every object is homotopy equivalent to it.
pub fn point_equivalence(c: &Arc<DgCategory>) -> Result<Option<EquivCertificate>, FunctorError> {
    let pt = Arc::new(point_category(c.field()));
    let one = BTreeMap::from([(0, 1)]);
    'candidates: for a in c.objects() {
        if c.hom(a, a).complex.cohomology_dims() != one {
            continue;
        }
        let col = Matrix::from_columns(c.field(), c.hom(a, a).dim(0), &[c.identity_coords(a).clone()])?;
        let functor = DgFunctor::new(pt.clone(), c.clone(), vec![a], BTreeMap::from([((0, 0, 0), col)]))?;
        let xa = TwistedComplex::embed(c.clone(), a);
        let mut witnesses = Vec::new();
        for b in c.objects() {
            let xb = TwistedComplex::embed(c.clone(), b);
            let hom = TwistedHom::new(&xa, &xb)?;
            if hom.complex().cohomology_dims() != one {
                continue 'candidates;
            }
            let phi = hom.morphism(0, &hom.complex().cohomology_basis(0).representatives()[0]);
            if !is_ho_iso(&phi)? {
                continue 'candidates;
            }
            witnesses.push(EquivWitness { target: b, object: TwistedComplex::embed(pt.clone(), ObjId(0)), map: phi });
        }
        let cert = EquivCertificate { functor, witnesses };
        if check_quasi_equiv(&cert)?.is_pass() {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}
