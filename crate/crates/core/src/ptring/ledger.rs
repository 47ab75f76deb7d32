use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::dgcore::{tensor, DgCategory};
use crate::functors::{check_quasi_equiv, point_equivalence, EquivCertificate};
use crate::sodgen::{check_sod, SodClaim};

use super::{ClassExpr, RingError, UNIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    /// Whether the class is geometric (allowed in Γ).
    pub geometric: bool,
    pub category: Option<Arc<DgCategory>>,
}

/// Class of one SOD block, with a certificate when the block is claimed to be the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockClass {
    pub class: ClassExpr,
    pub point: Option<EquivCertificate>,
}

/// A passing SOD claim together with the class of each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodEvidence {
    pub claim: SodClaim,
    pub blocks: Vec<BlockClass>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProductMode {
    /// `Perf(A ⊗ B)`.
    Bullet,
    /// `(A ⊗ B)^pre-tr`, no Karoubi step.
    Circ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorValue {
    /// The product is the registered generator with this label.
    Generator(String),
    /// The product is decomposed by an SOD of the tensor category.
    Decomposed(SodEvidence),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    VerifiedSod { ambient: String, evidence: SodEvidence },
    VerifiedTensor { left: String, right: String, mode: ProductMode, value: TensorValue },
    Paper(String),
}

impl Provenance {
    pub fn tag(&self) -> String {
        match self {
            Provenance::VerifiedSod { .. } => "verified-sod".into(),
            Provenance::VerifiedTensor { mode: ProductMode::Bullet, .. } => "verified-tensor".into(),
            Provenance::VerifiedTensor { mode: ProductMode::Circ, .. } => "verified-tensor (pre-tr product)".into(),
            Provenance::Paper(c) => format!("[PAPER] {c}"),
        }
    }
}

/// `expr = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub expr: ClassExpr,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFact {
    pub left: String,
    pub right: String,
    pub value: ClassExpr,
    pub provenance: Provenance,
}

/// The presented ring: generators, additive relations, product facts and the degree bound
/// used by every equality query. Mutations return a new version.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ledger {
    pub(crate) generators: BTreeMap<String, Generator>,
    pub(crate) aliases: BTreeSet<String>,
    pub(crate) relations: Vec<Relation>,
    pub(crate) facts: BTreeMap<(String, String), ProductFact>,
    pub(crate) degree_bound: usize,
    pub(crate) gamma: bool,
    pub(crate) version: u64,
}

pub const DEFAULT_DEGREE_BOUND: usize = 4;

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// `dim H^n Hom((a,b),(a',b')) = Σ_{p+q=n} dim H^p Hom(a,a') · dim H^q Hom(b,b')` for every pair.
pub fn kunneth_holds(left: &DgCategory, right: &DgCategory, product: &DgCategory) -> bool {
    let nr = right.num_objects();
    if product.num_objects() != left.num_objects() * nr {
        return false;
    }
    for a in left.objects() {
        for a1 in left.objects() {
            let h1 = left.hom(a, a1).complex.cohomology_dims();
            for b in right.objects() {
                for b1 in right.objects() {
                    let h2 = right.hom(b, b1).complex.cohomology_dims();
                    let mut expect: BTreeMap<i64, usize> = BTreeMap::new();
                    for (p, x) in &h1 {
                        for (q, y) in &h2 {
                            *expect.entry(p + q).or_default() += x * y;
                        }
                    }
                    let (s, t) = (crate::dgcore::ObjId(a.0 * nr + b.0), crate::dgcore::ObjId(a1.0 * nr + b1.0));
                    if product.hom(s, t).complex.cohomology_dims() != expect {
                        return false;
                    }
                }
            }
        }
    }
    true
}

impl Ledger {
    pub fn new(degree_bound: usize) -> Ledger {
        Ledger {
            generators: BTreeMap::new(),
            aliases: BTreeSet::new(),
            relations: Vec::new(),
            facts: BTreeMap::new(),
            degree_bound,
            gamma: false,
            version: 0,
        }
    }

    /// A ledger for Γ: only geometric generators may be registered.
    pub fn gamma(degree_bound: usize) -> Ledger {
        Ledger { gamma: true, ..Ledger::new(degree_bound) }
    }

    pub fn is_gamma(&self) -> bool {
        self.gamma
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn with_degree_bound(&self, d: usize) -> Ledger {
        Ledger { degree_bound: d, ..self.clone() }
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.values()
    }

    pub fn generator(&self, label: &str) -> Option<&Generator> {
        self.generators.get(label)
    }

    /// Labels identified with the unit because their category is equivalent to the point.
    pub fn aliases(&self) -> &BTreeSet<String> {
        &self.aliases
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn facts(&self) -> impl Iterator<Item = &ProductFact> {
        self.facts.values()
    }

    pub fn fact(&self, a: &str, b: &str) -> Option<&ProductFact> {
        self.facts.get(&key(a, b))
    }

    fn bump(mut self) -> Ledger {
        self.version += 1;
        self
    }

    pub fn register(&self, label: &str, geometric: bool, category: Option<Arc<DgCategory>>) -> Result<Ledger, RingError> {
        if label == UNIT || self.generators.contains_key(label) {
            return Err(RingError::DuplicateGenerator(label.into()));
        }
        if label.is_empty() || label.contains(['[', ']']) {
            return Err(RingError::Parse(format!("bad generator label {label:?}")));
        }
        if self.gamma && !geometric {
            return Err(RingError::NotGeometric(label.into()));
        }
        let mut out = self.clone();
        if let Some(c) = &category {
            if point_equivalence(c)?.is_some() {
                out.aliases.insert(label.to_string());
            }
        }
        out.generators.insert(label.to_string(), Generator { label: label.to_string(), geometric, category });
        Ok(out.bump())
    }

    /// Checks every label and replaces aliases of the point by the unit.
    pub fn normalize(&self, e: &ClassExpr) -> Result<ClassExpr, RingError> {
        if let Some(l) = e.labels().find(|l| !self.generators.contains_key(*l)) {
            return Err(RingError::UnknownGenerator(l.clone()));
        }
        let mut out = e.clone();
        for a in &self.aliases {
            out = out.dealias(a);
        }
        Ok(out)
    }

    fn payload(&self, label: &str) -> Result<&Arc<DgCategory>, RingError> {
        let g = self.generators.get(label).ok_or_else(|| RingError::UnknownGenerator(label.into()))?;
        g.category.as_ref().ok_or_else(|| RingError::Provenance(format!("{label} has no category attached")))
    }

    /// Re-checks an SOD of `c` and returns the sum of the block classes.
    fn verify_sod(&self, c: &DgCategory, ev: &SodEvidence) -> Result<ClassExpr, RingError> {
        if *ev.claim.base != *c {
            return Err(RingError::Provenance("the SOD claim is about another category".into()));
        }
        let trail = check_sod(&ev.claim)?;
        if !trail.passed() {
            return Err(RingError::Provenance(format!("SOD claim fails: {}", trail.verdict())));
        }
        if ev.blocks.len() != ev.claim.blocks.len() {
            return Err(RingError::Provenance("one class per block is required".into()));
        }
        let mut total = ClassExpr::zero();
        for (k, (b, objs)) in ev.blocks.iter().zip(&ev.claim.blocks).enumerate() {
            let sub = c.full_subcategory(objs)?;
            match &b.point {
                Some(cert) => {
                    if **cert.functor.dst() != sub || !check_quasi_equiv(cert)?.is_pass() {
                        return Err(RingError::Provenance(format!("block {} is not certified equivalent to the point", k + 1)));
                    }
                    if self.normalize(&b.class)? != ClassExpr::one() {
                        return Err(RingError::Provenance(format!("block {} is the point but its class is {}", k + 1, b.class)));
                    }
                }
                None => {
                    let label = match b.class.terms().iter().next() {
                        Some((m, c)) if b.class.terms().len() == 1 && m.len() == 1 && *c == 1.into() => m[0].clone(),
                        _ => return Err(RingError::Provenance(format!("block {} needs a generator class", k + 1))),
                    };
                    if **self.payload(&label)? != sub {
                        return Err(RingError::Provenance(format!("block {} is not the category of [{label}]", k + 1)));
                    }
                }
            }
            total = total + b.class.clone();
        }
        Ok(total)
    }

    /// Evidence for an SOD whose blocks are all certified equivalent to the point.
    pub fn point_blocks(claim: SodClaim) -> Result<SodEvidence, RingError> {
        let mut blocks = Vec::new();
        for (k, objs) in claim.blocks.iter().enumerate() {
            let sub = Arc::new(claim.base.full_subcategory(objs)?);
            let cert = point_equivalence(&sub)?
                .ok_or_else(|| RingError::Provenance(format!("block {} is not equivalent to the point", k + 1)))?;
            blocks.push(BlockClass { class: ClassExpr::one(), point: Some(cert) });
        }
        Ok(SodEvidence { claim, blocks })
    }

    pub fn add_relation(&self, expr: ClassExpr, provenance: Provenance) -> Result<Ledger, RingError> {
        let e = self.normalize(&expr)?;
        match &provenance {
            Provenance::VerifiedSod { ambient, evidence } => {
                let c = self.payload(ambient)?.clone();
                let sum = self.verify_sod(&c, evidence)?;
                let derived = self.normalize(&(ClassExpr::generator(ambient) - sum))?;
                if e != derived && e != -derived.clone() {
                    return Err(RingError::Provenance(format!("the SOD proves {derived} = 0, not {e} = 0")));
                }
            }
            Provenance::VerifiedTensor { .. } => {
                return Err(RingError::Provenance("tensor identifications back product facts, not relations".into()))
            }
            Provenance::Paper(_) => {}
        }
        let mut out = self.clone();
        out.relations.push(Relation { expr, provenance });
        Ok(out.bump())
    }

    /// `[ambient] = Σ [block]` from a verified SOD of the ambient generator's category.
    pub fn add_sod_relation(&self, ambient: &str, evidence: SodEvidence) -> Result<Ledger, RingError> {
        let sum = evidence.blocks.iter().fold(ClassExpr::zero(), |acc, b| acc + b.class.clone());
        let expr = ClassExpr::generator(ambient) - sum;
        self.add_relation(expr, Provenance::VerifiedSod { ambient: ambient.into(), evidence })
    }

    pub fn add_product_fact(&self, a: &str, b: &str, value: ClassExpr, provenance: Provenance) -> Result<Ledger, RingError> {
        for l in [a, b] {
            if !self.generators.contains_key(l) {
                return Err(RingError::UnknownGenerator(l.into()));
            }
        }
        let v = self.normalize(&value)?;
        match &provenance {
            Provenance::VerifiedTensor { left, right, value: tv, .. } => {
                if key(left, right) != key(a, b) {
                    return Err(RingError::Provenance("the tensor identification is about other factors".into()));
                }
                let (l, r) = (self.payload(left)?, self.payload(right)?);
                let product = tensor(l, r)?;
                if !kunneth_holds(l, r, &product) {
                    return Err(RingError::Provenance("Künneth dimensions fail on the tensor category".into()));
                }
                let derived = match tv {
                    TensorValue::Generator(g) => {
                        if **self.payload(g)? != product {
                            return Err(RingError::Provenance(format!("[{g}] is not the tensor category")));
                        }
                        ClassExpr::generator(g)
                    }
                    TensorValue::Decomposed(ev) => self.verify_sod(&product, ev)?,
                };
                if self.normalize(&derived)? != v {
                    return Err(RingError::Provenance(format!("the tensor identification gives {derived}, not {v}")));
                }
            }
            Provenance::VerifiedSod { .. } => {
                return Err(RingError::Provenance("product facts need a tensor identification or a citation".into()))
            }
            Provenance::Paper(_) => {}
        }
        if let Some(old) = self.fact(a, b) {
            let verdict = self.eq(&old.value, &value)?;
            if !matches!(verdict, super::EqOutcome::Equal { .. }) {
                return Err(RingError::Conflict(format!("[{a}]*[{b}] is already {}; {} is {verdict}", old.value, value)));
            }
        }
        let mut out = self.clone();
        let (l, r) = key(a, b);
        out.facts.insert((l.clone(), r.clone()), ProductFact { left: l, right: r, value, provenance });
        Ok(out.bump())
    }

    /// The forgetful map from Γ to PT: the same presentation with the Γ flag cleared.
    pub fn beta(&self) -> (Ledger, BetaReport) {
        let report = BetaReport {
            geometric: self.generators.values().filter(|g| g.geometric).map(|g| g.label.clone()).collect(),
            other: self.generators.values().filter(|g| !g.geometric).map(|g| g.label.clone()).collect(),
        };
        (Ledger { gamma: false, ..self.clone() }.bump(), report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaReport {
    pub geometric: Vec<String>,
    pub other: Vec<String>,
}

impl fmt::Display for BetaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "beta: Γ → PT sends each generator to itself")?;
        writeln!(f, "geometric generators: {}", self.geometric.join(", "))?;
        write!(f, "non-geometric generators: {}", self.other.join(", "))
    }
}
