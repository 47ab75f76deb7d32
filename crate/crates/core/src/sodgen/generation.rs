use std::sync::Arc;

use crate::dgcore::{DgCategory, ObjId};
use crate::pretr::{cone, is_ho_iso, karoubi_inverse, KaroubiObject, TwistedComplex, TwistedMorphism};

use super::SodError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// `gen[shift]`.
    Leaf { generator: ObjId, shift: i64 },
    /// Direct sum of earlier steps; the empty sum is the zero object.
    Sum(Vec<usize>),
    /// `cone(map)` for a closed degree-0 `map` from step `src` to step `dst`.
    Cone { src: usize, dst: usize, map: TwistedMorphism },
    /// The summand of step `of` cut out by a homotopy idempotent.
    Summand { of: usize, idempotent: TwistedMorphism, witness: TwistedMorphism },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationCertificate {
    pub base: Arc<DgCategory>,
    pub generators: Vec<ObjId>,
    pub steps: Vec<Step>,
    pub target: TwistedComplex,
    /// From the last step's object (the zero object when there are no steps) to `target`.
    pub final_iso: TwistedMorphism,
}

/// The object produced by a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Complex(TwistedComplex),
    Summand(KaroubiObject),
}

impl Built {
    fn carrier(&self) -> &TwistedComplex {
        match self {
            Built::Complex(x) => x,
            Built::Summand(k) => k.carrier(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub ok: bool,
    /// Number of `⋄`-layers used: leaves count 1, cones add, sums take the maximum.
    pub layers: usize,
    /// Step index (or `steps.len()` for the final isomorphism) and reason of the first failure.
    pub failure: Option<(usize, String)>,
}

impl GenerationCertificate {
    /// `target = gen`, one leaf and the identity.
    pub fn leaf(base: Arc<DgCategory>, generator: ObjId) -> GenerationCertificate {
        let target = TwistedComplex::embed(base.clone(), generator);
        GenerationCertificate {
            base,
            generators: vec![generator],
            steps: vec![Step::Leaf { generator, shift: 0 }],
            final_iso: target.identity(),
            target,
        }
    }

    /// A contractible `target` built from nothing.
    pub fn zero(base: Arc<DgCategory>, generators: Vec<ObjId>, target: TwistedComplex) -> GenerationCertificate {
        let zero = TwistedComplex::zero(base.clone());
        let final_iso = TwistedMorphism::zero(&zero, &target, 0);
        GenerationCertificate { base, generators, steps: Vec::new(), target, final_iso }
    }

    /// Replays the steps, returning each step's object and layer count.
    pub fn replay(&self) -> Result<Result<Vec<(Built, usize)>, (usize, String)>, SodError> {
        let mut out: Vec<(Built, usize)> = Vec::new();
        for (k, step) in self.steps.iter().enumerate() {
            let refs: Vec<usize> = match step {
                Step::Leaf { .. } => vec![],
                Step::Sum(r) => r.clone(),
                Step::Cone { src, dst, .. } => vec![*src, *dst],
                Step::Summand { of, .. } => vec![*of],
            };
            if let Some(&r) = refs.iter().find(|&&r| r >= k) {
                return Err(SodError::DanglingStep { step: k, reference: r });
            }
            let complex = |r: usize| match &out[r].0 {
                Built::Complex(x) => Ok(x.clone()),
                Built::Summand(_) => Err((k, format!("step {r} is a summand and cannot be reused"))),
            };
            let built = match step {
                Step::Leaf { generator, shift } => {
                    if !self.generators.contains(generator) {
                        return Ok(Err((k, format!("{} is not a generator", self.base.label(*generator)))));
                    }
                    (Built::Complex(TwistedComplex::embed(self.base.clone(), *generator).shift(*shift)), 1)
                }
                Step::Sum(r) => {
                    let mut x = TwistedComplex::zero(self.base.clone());
                    let mut layers = 0;
                    for &i in r {
                        match complex(i) {
                            Ok(y) => x = x.direct_sum(&y)?,
                            Err(e) => return Ok(Err(e)),
                        }
                        layers = layers.max(out[i].1);
                    }
                    (Built::Complex(x), layers)
                }
                Step::Cone { src, dst, map } => {
                    let (x, y) = match (complex(*src), complex(*dst)) {
                        (Ok(x), Ok(y)) => (x, y),
                        (Err(e), _) | (_, Err(e)) => return Ok(Err(e)),
                    };
                    if map.src() != &x || map.dst() != &y {
                        return Ok(Err((k, "cone map does not connect the referenced steps".into())));
                    }
                    if map.degree() != 0 || !map.is_closed() {
                        return Ok(Err((k, "cone map is not closed of degree 0".into())));
                    }
                    (Built::Complex(cone(map)?), out[*src].1 + out[*dst].1)
                }
                Step::Summand { of, idempotent, witness } => {
                    let x = match complex(*of) {
                        Ok(x) => x,
                        Err(e) => return Ok(Err(e)),
                    };
                    match KaroubiObject::new(x, idempotent.clone(), witness.clone()) {
                        Ok(kobj) => (Built::Summand(kobj), out[*of].1),
                        Err(e) => return Ok(Err((k, format!("idempotent does not verify: {e}")))),
                    }
                }
            };
            out.push(built);
        }
        Ok(Ok(out))
    }
}

/// Replays `cert` and checks every invariant; a dangling reference is an error, any other
/// failure is reported with its step index.
pub fn verify_generation(cert: &GenerationCertificate) -> Result<GenerationReport, SodError> {
    let fail = |k: usize, why: String| GenerationReport { ok: false, layers: 0, failure: Some((k, why)) };
    let built = match cert.replay()? {
        Ok(b) => b,
        Err((k, why)) => return Ok(fail(k, why)),
    };
    let end = cert.steps.len();
    let (last, layers) = match built.last() {
        Some((b, l)) => (b.clone(), *l),
        None => (Built::Complex(TwistedComplex::zero(cert.base.clone())), 0),
    };
    let phi = &cert.final_iso;
    if phi.src() != last.carrier() || phi.dst() != &cert.target {
        return Ok(fail(end, "final isomorphism does not connect the last step to the target".into()));
    }
    if phi.degree() != 0 || !phi.is_closed() {
        return Ok(fail(end, "final isomorphism is not closed of degree 0".into()));
    }
    let ok = match &last {
        Built::Complex(_) => is_ho_iso(phi)?,
        Built::Summand(kobj) => karoubi_inverse(kobj, &KaroubiObject::whole(&cert.target), phi)?.is_some(),
    };
    if !ok {
        return Ok(fail(end, "final map is not a homotopy equivalence".into()));
    }
    Ok(GenerationReport { ok: true, layers, failure: None })
}
