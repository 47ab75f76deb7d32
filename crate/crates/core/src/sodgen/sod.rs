use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::dgcore::{DgCategory, ObjId};
use crate::functors::Verdict;
use crate::pretr::{cone, hom_complex, same_base, TwistedComplex, TwistedMorphism};

use super::{verify_generation, GenerationCertificate, SodError};

/// `H^n Hom(e, x) = 0` for every `e ∈ gens` and every degree.
pub fn right_orthogonal_check(gens: &[ObjId], x: &TwistedComplex) -> Result<bool, SodError> {
    for &e in gens {
        let h = hom_complex(&TwistedComplex::embed(x.base().clone(), e), x)?;
        if !h.cohomology_dims().is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H^• Hom(b_j, b_i) = 0` whenever `b_j` lies in a later block than `b_i`.
pub fn check_semiorthogonality(c: &DgCategory, blocks: &[Vec<ObjId>]) -> bool {
    first_semiorthogonality_failure(c, blocks).is_none()
}

fn first_semiorthogonality_failure(c: &DgCategory, blocks: &[Vec<ObjId>]) -> Option<String> {
    for (i, bi) in blocks.iter().enumerate() {
        for bj in &blocks[i + 1..] {
            for &x in bj {
                for &y in bi {
                    let dims = c.hom(x, y).complex.cohomology_dims();
                    if let Some((n, d)) = dims.iter().next() {
                        return Some(format!("dim H^{n} Hom({},{}) = {d}", c.label(x), c.label(y)));
                    }
                }
            }
        }
    }
    None
}

/// Each object has `H^• End = k` in degree 0 and the singleton blocks are semiorthogonal.
pub fn check_exceptional_collection(c: &DgCategory, objs: &[ObjId]) -> bool {
    let one = BTreeMap::from([(0, 1)]);
    objs.iter().all(|&o| {
        let h = &c.hom(o, o).complex;
        h.cohomology_dims() == one && {
            let basis = h.cohomology_basis(0);
            basis.project(c.identity_coords(o)).map(|v| v.iter().any(|x| !x.is_zero())).unwrap_or(false)
        }
    }) && check_semiorthogonality(c, &objs.iter().map(|&o| vec![o]).collect::<Vec<_>>())
}

/// `table[i][j] = (n ↦ dim H^n Hom(e_i, e_j))`.
pub fn ext_table(c: &DgCategory, objs: &[ObjId]) -> Vec<Vec<BTreeMap<i64, usize>>> {
    objs.iter().map(|&a| objs.iter().map(|&b| c.hom(a, b).complex.cohomology_dims()).collect()).collect()
}

/// The triangle `X_B → E → cone(u)` for one ambient generator at one cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub generator: ObjId,
    /// The cut after block `cut` (1-based): blocks `..cut` are earlier, `cut..` later.
    pub cut: usize,
    /// Certificate for `X_B` over the later blocks.
    pub x_b: GenerationCertificate,
    pub u: TwistedMorphism,
    /// Certificate for `cone(u)` over the earlier blocks.
    pub cone: GenerationCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodClaim {
    pub base: Arc<DgCategory>,
    pub ambient_generators: Vec<ObjId>,
    pub blocks: Vec<Vec<ObjId>>,
    pub witnesses: Vec<CutWitness>,
}

impl SodClaim {
    /// The claim whose ambient generators are the block generators themselves, with identity
    /// triangles for generators in the later part of a cut and zero triangles otherwise.
    pub fn from_blocks(base: Arc<DgCategory>, blocks: Vec<Vec<ObjId>>) -> SodClaim {
        let ambient: Vec<ObjId> = blocks.iter().flatten().copied().collect();
        let mut witnesses = Vec::new();
        for cut in 1..blocks.len() {
            let earlier: Vec<ObjId> = blocks[..cut].iter().flatten().copied().collect();
            let later: Vec<ObjId> = blocks[cut..].iter().flatten().copied().collect();
            for &e in &ambient {
                let target = TwistedComplex::embed(base.clone(), e);
                let w = if later.contains(&e) {
                    let mut x_b = GenerationCertificate::leaf(base.clone(), e);
                    x_b.generators = later.clone();
                    let u = target.identity();
                    let c = cone(&u).expect("identity is closed");
                    let cone = GenerationCertificate::zero(base.clone(), earlier.clone(), c);
                    CutWitness { generator: e, cut, x_b, u, cone }
                } else {
                    let zero = TwistedComplex::zero(base.clone());
                    let x_b = GenerationCertificate::zero(base.clone(), later.clone(), zero.clone());
                    let u = TwistedMorphism::zero(&zero, &target, 0);
                    let c = cone(&u).expect("zero is closed");
                    let mut cone = GenerationCertificate::leaf(base.clone(), e);
                    cone.generators = earlier.clone();
                    cone.final_iso = c.identity();
                    cone.target = c;
                    CutWitness { generator: e, cut, x_b, u, cone }
                };
                witnesses.push(w);
            }
        }
        SodClaim { base, ambient_generators: ambient, blocks, witnesses }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditTrail {
    pub obligations: Vec<Obligation>,
    pub notes: Vec<String>,
}

impl AuditTrail {
    pub fn passed(&self) -> bool {
        self.obligations.iter().all(|o| o.passed)
    }

    pub fn verdict(&self) -> Verdict {
        match self.obligations.iter().find(|o| !o.passed) {
            None => Verdict::Pass,
            Some(o) => Verdict::fail(format!("{}: {}", o.name, o.detail)),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Obligation> {
        self.obligations.iter().filter(|o| !o.passed)
    }
}

impl fmt::Display for AuditTrail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.obligations {
            let mark = if o.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", o.name)?;
            if !o.detail.is_empty() {
                write!(f, " ({})", o.detail)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

fn ob(name: String, passed: bool, detail: impl Into<String>) -> Obligation {
    Obligation { name, passed, detail: detail.into() }
}

fn cut_obligations(claim: &SodClaim, e: ObjId, cut: usize) -> Result<Vec<Obligation>, SodError> {
    let c = &claim.base;
    let tag = format!("{} @ cut {cut}", c.label(e));
    let Some(w) = claim.witnesses.iter().find(|w| w.generator == e && w.cut == cut) else {
        return Ok(vec![ob(format!("{tag}: triangle"), false, "no witness supplied")]);
    };
    let earlier: Vec<ObjId> = claim.blocks[..cut].iter().flatten().copied().collect();
    let later: Vec<ObjId> = claim.blocks[cut..].iter().flatten().copied().collect();
    let mut out = Vec::new();
    for (name, cert, allowed) in [("X_B", &w.x_b, &later), ("cone(u)", &w.cone, &earlier)] {
        if !same_base(&cert.base, c) {
            return Err(SodError::Malformed(format!("{tag}: {name} certificate is over another category")));
        }
        let stray: Vec<&str> = cert.generators.iter().filter(|g| !allowed.contains(g)).map(|g| c.label(*g)).collect();
        let r = verify_generation(cert)?;
        let detail = match (&r.failure, stray.is_empty()) {
            (_, false) => format!("uses generators outside its block: {}", stray.join(", ")),
            (Some((k, why)), true) => format!("step {k}: {why}"),
            (None, true) => format!("{} layer(s)", r.layers),
        };
        out.push(ob(format!("{tag}: {name} generated"), r.ok && stray.is_empty(), detail));
    }
    let u_ok = w.u.src() == &w.x_b.target
        && w.u.dst() == &TwistedComplex::embed(c.clone(), e)
        && w.u.degree() == 0
        && w.u.is_closed();
    out.push(ob(format!("{tag}: u closed of degree 0 from X_B to E"), u_ok, ""));
    if u_ok {
        let cu = cone(&w.u)?;
        out.push(ob(format!("{tag}: cone certificate targets cone(u)"), w.cone.target == cu, ""));
        out.push(ob(
            format!("{tag}: cone(u) right-orthogonal to the later blocks"),
            right_orthogonal_check(&later, &cu)?,
            "",
        ));
    }
    Ok(out)
}

/// Semiorthogonality of the blocks, then at every cut and for every ambient generator `E` a
/// triangle `X_B → E → cone(u)` with `X_B` generated by the later blocks and `cone(u)` by the
/// earlier ones and right-orthogonal to the later ones.
pub fn check_sod(claim: &SodClaim) -> Result<AuditTrail, SodError> {
    let c = &claim.base;
    for b in claim.blocks.iter().flatten().chain(&claim.ambient_generators) {
        if b.0 >= c.num_objects() {
            return Err(SodError::Malformed(format!("unknown object {b}")));
        }
    }
    if claim.blocks.is_empty() {
        return Err(SodError::Malformed("no blocks".into()));
    }
    let mut obligations = vec![match first_semiorthogonality_failure(c, &claim.blocks) {
        None => ob("semiorthogonality".into(), true, ""),
        Some(why) => ob("semiorthogonality".into(), false, why),
    }];
    let jobs: Vec<(ObjId, usize)> =
        (1..claim.blocks.len()).flat_map(|cut| claim.ambient_generators.iter().map(move |&e| (e, cut))).collect();
    let results: Vec<Result<Vec<Obligation>, SodError>> =
        jobs.par_iter().map(|&(e, cut)| cut_obligations(claim, e, cut)).collect();
    for r in results {
        obligations.extend(r?);
    }
    let notes = vec!["completeness of the blocks (each block equals the orthogonal of the rest) is not verified".into()];
    Ok(AuditTrail { obligations, notes })
}
