//! The JSON document schema.
//!
//! Every file is a [`Document`]: `{"body": ..., "field": "Q" | "Fp:<p>", "kind": ...,
//! "schema_version": 1}`. Keys are emitted in sorted order and scalars as strings, so
//! `encode(decode(text)) == text` for every document written by this module.
//!
//! Objects are referenced by label. Twisted complexes, morphisms and certificates nested in a
//! document share the document's base category and do not repeat it.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dgcore::{point_category, tensor, DgCategory, HomSpace, ObjId};
use crate::exactlin::{ChainComplex, Field, Matrix, Scalar, Vector};
use crate::functors::{DgFunctor, EquivCertificate, EquivWitness, SerreData};
use crate::pretr::{KaroubiObject, Term, TwistedComplex, TwistedMorphism};
use crate::ptring::{
    BlockClass, ClassExpr, Ledger, ProductMode, Provenance, SodEvidence, TensorValue,
};
use crate::sodgen::{CutWitness, GenerationCertificate, SodClaim, Step};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Category,
    Functor,
    TwistedComplex,
    TwistedMorphism,
    KaroubiObject,
    GenCertificate,
    SodClaim,
    EquivCertificate,
    SerreData,
    Ledger,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::TwistedComplex => "twisted-complex",
            Kind::TwistedMorphism => "twisted-morphism",
            Kind::KaroubiObject => "karoubi-object",
            Kind::GenCertificate => "gen-certificate",
            Kind::SodClaim => "sod-claim",
            Kind::EquivCertificate => "equiv-certificate",
            Kind::SerreData => "serre-data",
            Kind::Ledger => "ledger",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub kind: Kind,
    pub field: String,
    pub body: Value,
    pub schema_version: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> SchemaError {
    SchemaError::Invalid(e.to_string())
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, SchemaError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(SchemaError::Version(doc.schema_version));
        }
        Ok(doc)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("documents serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn field(&self) -> Result<Field, SchemaError> {
        self.field.parse().map_err(invalid)
    }

    fn new(kind: Kind, field: Field, body: impl Serialize) -> Document {
        let body = serde_json::to_value(body).expect("bodies serialize");
        Document { kind, field: field.to_string(), body, schema_version: SCHEMA_VERSION }
    }

    fn body<T: for<'de> Deserialize<'de>>(&self, kind: Kind) -> Result<(Field, T), SchemaError> {
        if self.kind != kind {
            return Err(SchemaError::WrongKind { expected: kind.name(), found: self.kind.name() });
        }
        let field = self.field()?;
        let body = serde_json::from_value(self.body.clone()).map_err(|e| SchemaError::Json(e.to_string()))?;
        Ok((field, body))
    }
}

// ---------------------------------------------------------------------------------------------
// scalars and matrices

fn enc_vec(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::encode).collect()
}

fn dec_vec(field: Field, v: &[String]) -> Result<Vector, SchemaError> {
    v.iter().map(|s| field.parse(s).map_err(invalid)).collect()
}

type Triplets = Vec<(usize, usize, String)>;

fn enc_matrix(m: &Matrix) -> Triplets {
    m.entries().map(|(r, c, v)| (r, c, v.encode())).collect()
}

fn dec_matrix(field: Field, rows: usize, cols: usize, t: &Triplets) -> Result<Matrix, SchemaError> {
    let entries = t.iter().map(|(r, c, v)| Ok((*r, *c, field.parse(v).map_err(invalid)?))).collect::<Result<Vec<_>, SchemaError>>()?;
    Matrix::from_triplets(field, rows, cols, entries).map_err(invalid)
}

// ---------------------------------------------------------------------------------------------
// categories

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryBody {
    pub objects: Vec<String>,
    pub homs: Vec<HomBody>,
    pub identities: Vec<(String, Vec<String>)>,
    pub composition: Vec<CompBody>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomBody {
    pub src: String,
    pub dst: String,
    /// Basis names per degree.
    pub basis: Vec<(i64, Vec<String>)>,
    /// Sparse `d^n` as `(row, col, value)` triplets.
    pub differential: Vec<(i64, Triplets)>,
}

/// Structure constants of `Hom(a,b)^p ⊗ Hom(b,c)^q → Hom(a,c)^{p+q}`: basis pair `(i, j)` to
/// the sparse coordinates of `mul(f_i, g_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompBody {
    pub a: String,
    pub b: String,
    pub c: String,
    pub p: i64,
    pub q: i64,
    pub table: Vec<(usize, usize, Vec<(usize, String)>)>,
}

pub fn enc_category(c: &DgCategory) -> CategoryBody {
    let l = |i: usize| c.label(ObjId(i)).to_string();
    let homs = c
        .homs()
        .map(|((a, b), h)| HomBody {
            src: l(a.0),
            dst: l(b.0),
            basis: h.basis.iter().map(|(n, names)| (*n, names.clone())).collect(),
            differential: h
                .complex
                .support()
                .map(|n| (n, enc_matrix(&h.complex.diff(n))))
                .filter(|(_, t)| !t.is_empty())
                .collect(),
        })
        .collect();
    let identities = c.objects().map(|a| (l(a.0), enc_vec(c.identity_coords(a)))).collect();
    let composition = c
        .comp_blocks()
        .map(|(&(a, b, cc, p, q), table)| CompBody {
            a: l(a),
            b: l(b),
            c: l(cc),
            p,
            q,
            table: table
                .iter()
                .map(|(&(i, j), v)| (i, j, v.iter().map(|(k, s)| (*k, s.encode())).collect()))
                .collect(),
        })
        .collect();
    CategoryBody { objects: c.labels().to_vec(), homs, identities, composition }
}

pub fn dec_category(field: Field, b: &CategoryBody) -> Result<DgCategory, SchemaError> {
    let mut c = DgCategory::new(field);
    for o in &b.objects {
        c.add_object(o.clone()).map_err(invalid)?;
    }
    for h in &b.homs {
        let (src, dst) = (c.obj(&h.src).map_err(invalid)?, c.obj(&h.dst).map_err(invalid)?);
        let dims: BTreeMap<i64, usize> = h.basis.iter().map(|(n, names)| (*n, names.len())).collect();
        let mut diffs = BTreeMap::new();
        for (n, t) in &h.differential {
            let (rows, cols) = (dims.get(&(n + 1)).copied().unwrap_or(0), dims.get(n).copied().unwrap_or(0));
            diffs.insert(*n, dec_matrix(field, rows, cols, t)?);
        }
        let complex = ChainComplex::new(field, dims, diffs).map_err(invalid)?;
        let hom = HomSpace::new(complex, h.basis.iter().cloned().collect()).map_err(invalid)?;
        c.set_hom(src, dst, hom).map_err(invalid)?;
    }
    for (o, v) in &b.identities {
        let a = c.obj(o).map_err(invalid)?;
        c.set_identity(a, dec_vec(field, v)?).map_err(invalid)?;
    }
    for block in &b.composition {
        let (a, bb, cc) = (c.obj(&block.a).map_err(invalid)?, c.obj(&block.b).map_err(invalid)?, c.obj(&block.c).map_err(invalid)?);
        let len = c.hom(a, cc).dim(block.p + block.q);
        for (i, j, sparse) in &block.table {
            let mut v = vec![field.zero(); len];
            for (k, s) in sparse {
                *v.get_mut(*k).ok_or_else(|| invalid(format!("composition index {k} out of range")))? = field.parse(s).map_err(invalid)?;
            }
            c.set_comp(a, bb, cc, block.p, *i, block.q, *j, v).map_err(invalid)?;
        }
    }
    Ok(c)
}

pub fn category_document(c: &DgCategory) -> Document {
    Document::new(Kind::Category, c.field(), enc_category(c))
}

pub fn category_from(doc: &Document) -> Result<DgCategory, SchemaError> {
    let (field, b) = doc.body::<CategoryBody>(Kind::Category)?;
    dec_category(field, &b)
}

// ---------------------------------------------------------------------------------------------
// twisted complexes and morphisms over a shared base

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexBody {
    /// `(object, shift)` per term.
    pub terms: Vec<(String, i64)>,
    /// `q_ij ∈ Hom(C_j, C_i)` for `i < j`.
    pub twist: Vec<(usize, usize, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismBody {
    pub src: ComplexBody,
    pub dst: ComplexBody,
    pub degree: i64,
    pub entries: Vec<(usize, usize, Vec<String>)>,
}

pub fn enc_complex(x: &TwistedComplex) -> ComplexBody {
    let base = x.base();
    ComplexBody {
        terms: x.terms().iter().map(|t| (base.label(t.obj).to_string(), t.shift)).collect(),
        twist: x.twist().iter().map(|(&(i, j), v)| (i, j, enc_vec(v))).collect(),
    }
}

pub fn dec_complex(base: &Arc<DgCategory>, b: &ComplexBody) -> Result<TwistedComplex, SchemaError> {
    let field = base.field();
    let terms = b
        .terms
        .iter()
        .map(|(o, s)| Ok(Term { obj: base.obj(o).map_err(invalid)?, shift: *s }))
        .collect::<Result<Vec<_>, SchemaError>>()?;
    let mut q = BTreeMap::new();
    for (i, j, v) in &b.twist {
        q.insert((*i, *j), dec_vec(field, v)?);
    }
    TwistedComplex::new_unchecked(base.clone(), terms, q).map_err(invalid)
}

pub fn enc_morphism(f: &TwistedMorphism) -> MorphismBody {
    MorphismBody {
        src: enc_complex(f.src()),
        dst: enc_complex(f.dst()),
        degree: f.degree(),
        entries: f.entries().iter().map(|(&(i, j), v)| (i, j, enc_vec(v))).collect(),
    }
}

pub fn dec_morphism(base: &Arc<DgCategory>, b: &MorphismBody) -> Result<TwistedMorphism, SchemaError> {
    let (src, dst) = (dec_complex(base, &b.src)?, dec_complex(base, &b.dst)?);
    let mut entries = BTreeMap::new();
    for (i, j, v) in &b.entries {
        entries.insert((*i, *j), dec_vec(base.field(), v)?);
    }
    TwistedMorphism::new(src, dst, b.degree, entries).map_err(invalid)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    base: CategoryBody,
    complex: ComplexBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    base: CategoryBody,
    morphism: MorphismBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KaroubiDoc {
    base: CategoryBody,
    carrier: ComplexBody,
    idempotent: MorphismBody,
    witness: MorphismBody,
}

pub fn complex_document(x: &TwistedComplex) -> Document {
    Document::new(Kind::TwistedComplex, x.base().field(), ComplexDoc { base: enc_category(x.base()), complex: enc_complex(x) })
}

pub fn complex_from(doc: &Document) -> Result<TwistedComplex, SchemaError> {
    let (field, b) = doc.body::<ComplexDoc>(Kind::TwistedComplex)?;
    let base = Arc::new(dec_category(field, &b.base)?);
    dec_complex(&base, &b.complex)
}

pub fn morphism_document(f: &TwistedMorphism) -> Document {
    Document::new(Kind::TwistedMorphism, f.base().field(), MorphismDoc { base: enc_category(f.base()), morphism: enc_morphism(f) })
}

pub fn morphism_from(doc: &Document) -> Result<TwistedMorphism, SchemaError> {
    let (field, b) = doc.body::<MorphismDoc>(Kind::TwistedMorphism)?;
    let base = Arc::new(dec_category(field, &b.base)?);
    dec_morphism(&base, &b.morphism)
}

pub fn karoubi_document(k: &KaroubiObject) -> Document {
    let base = k.carrier().base();
    let body = KaroubiDoc {
        base: enc_category(base),
        carrier: enc_complex(k.carrier()),
        idempotent: enc_morphism(k.idempotent()),
        witness: enc_morphism(k.witness()),
    };
    Document::new(Kind::KaroubiObject, base.field(), body)
}

/// Carrier, idempotent and witness, unverified.
pub fn karoubi_parts(doc: &Document) -> Result<(TwistedComplex, TwistedMorphism, TwistedMorphism), SchemaError> {
    let (field, b) = doc.body::<KaroubiDoc>(Kind::KaroubiObject)?;
    let base = Arc::new(dec_category(field, &b.base)?);
    Ok((dec_complex(&base, &b.carrier)?, dec_morphism(&base, &b.idempotent)?, dec_morphism(&base, &b.witness)?))
}

/// Parses and verifies the idempotent.
pub fn karoubi_from(doc: &Document) -> Result<KaroubiObject, SchemaError> {
    let (carrier, idem, witness) = karoubi_parts(doc)?;
    KaroubiObject::new(carrier, idem, witness).map_err(invalid)
}

// ---------------------------------------------------------------------------------------------
// functors

/// A functor between categories given by the context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMaps {
    /// Image of each source object, in source order.
    pub objects: Vec<String>,
    /// `F: Hom(a,b)^n → Hom(Fa,Fb)^n` as triplets.
    pub maps: Vec<(String, String, i64, Triplets)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorDoc {
    src: CategoryBody,
    dst: CategoryBody,
    functor: FunctorMaps,
}

fn enc_functor_maps(f: &DgFunctor) -> FunctorMaps {
    let (c, d) = (f.src(), f.dst());
    FunctorMaps {
        objects: f.object_map().iter().map(|o| d.label(*o).to_string()).collect(),
        maps: f
            .blocks()
            .iter()
            .map(|(&(a, b, n), m)| (c.label(ObjId(a)).to_string(), c.label(ObjId(b)).to_string(), n, enc_matrix(m)))
            .collect(),
    }
}

fn dec_functor_maps(src: &Arc<DgCategory>, dst: &Arc<DgCategory>, b: &FunctorMaps) -> Result<DgFunctor, SchemaError> {
    let objects = b.objects.iter().map(|o| dst.obj(o).map_err(invalid)).collect::<Result<Vec<_>, _>>()?;
    if objects.len() != src.num_objects() {
        return Err(invalid("the object map does not cover the source"));
    }
    let mut maps = BTreeMap::new();
    for (a, bb, n, t) in &b.maps {
        let (a, bb) = (src.obj(a).map_err(invalid)?, src.obj(bb).map_err(invalid)?);
        let (rows, cols) = (dst.hom(objects[a.0], objects[bb.0]).dim(*n), src.hom(a, bb).dim(*n));
        maps.insert((a.0, bb.0, *n), dec_matrix(src.field(), rows, cols, t)?);
    }
    DgFunctor::new(src.clone(), dst.clone(), objects, maps).map_err(invalid)
}

pub fn functor_document(f: &DgFunctor) -> Document {
    let body = FunctorDoc { src: enc_category(f.src()), dst: enc_category(f.dst()), functor: enc_functor_maps(f) };
    Document::new(Kind::Functor, f.src().field(), body)
}

pub fn functor_from(doc: &Document) -> Result<DgFunctor, SchemaError> {
    let (field, b) = doc.body::<FunctorDoc>(Kind::Functor)?;
    let src = Arc::new(dec_category(field, &b.src)?);
    let dst = if b.src == b.dst { src.clone() } else { Arc::new(dec_category(field, &b.dst)?) };
    dec_functor_maps(&src, &dst, &b.functor)
}

// ---------------------------------------------------------------------------------------------
// certificates

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum StepBody {
    Leaf { generator: String, shift: i64 },
    Sum { parts: Vec<usize> },
    Cone { src: usize, dst: usize, map: MorphismBody },
    Summand { of: usize, idempotent: MorphismBody, witness: MorphismBody },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateBody {
    pub generators: Vec<String>,
    pub steps: Vec<StepBody>,
    pub target: ComplexBody,
    pub final_iso: MorphismBody,
}

fn enc_certificate(g: &GenerationCertificate) -> CertificateBody {
    let base = &g.base;
    let steps = g
        .steps
        .iter()
        .map(|s| match s {
            Step::Leaf { generator, shift } => StepBody::Leaf { generator: base.label(*generator).to_string(), shift: *shift },
            Step::Sum(parts) => StepBody::Sum { parts: parts.clone() },
            Step::Cone { src, dst, map } => StepBody::Cone { src: *src, dst: *dst, map: enc_morphism(map) },
            Step::Summand { of, idempotent, witness } => {
                StepBody::Summand { of: *of, idempotent: enc_morphism(idempotent), witness: enc_morphism(witness) }
            }
        })
        .collect();
    CertificateBody {
        generators: g.generators.iter().map(|o| base.label(*o).to_string()).collect(),
        steps,
        target: enc_complex(&g.target),
        final_iso: enc_morphism(&g.final_iso),
    }
}

fn labels_to_ids(base: &DgCategory, ls: &[String]) -> Result<Vec<ObjId>, SchemaError> {
    ls.iter().map(|l| base.obj(l).map_err(invalid)).collect()
}

fn dec_certificate(base: &Arc<DgCategory>, b: &CertificateBody) -> Result<GenerationCertificate, SchemaError> {
    let steps = b
        .steps
        .iter()
        .map(|s| {
            Ok(match s {
                StepBody::Leaf { generator, shift } => Step::Leaf { generator: base.obj(generator).map_err(invalid)?, shift: *shift },
                StepBody::Sum { parts } => Step::Sum(parts.clone()),
                StepBody::Cone { src, dst, map } => Step::Cone { src: *src, dst: *dst, map: dec_morphism(base, map)? },
                StepBody::Summand { of, idempotent, witness } => Step::Summand {
                    of: *of,
                    idempotent: dec_morphism(base, idempotent)?,
                    witness: dec_morphism(base, witness)?,
                },
            })
        })
        .collect::<Result<Vec<_>, SchemaError>>()?;
    Ok(GenerationCertificate {
        base: base.clone(),
        generators: labels_to_ids(base, &b.generators)?,
        steps,
        target: dec_complex(base, &b.target)?,
        final_iso: dec_morphism(base, &b.final_iso)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    base: CategoryBody,
    certificate: CertificateBody,
}

pub fn certificate_document(g: &GenerationCertificate) -> Document {
    Document::new(Kind::GenCertificate, g.base.field(), CertificateDoc { base: enc_category(&g.base), certificate: enc_certificate(g) })
}

pub fn certificate_from(doc: &Document) -> Result<GenerationCertificate, SchemaError> {
    let (field, b) = doc.body::<CertificateDoc>(Kind::GenCertificate)?;
    let base = Arc::new(dec_category(field, &b.base)?);
    dec_certificate(&base, &b.certificate)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessBody {
    pub generator: String,
    pub cut: usize,
    pub x_b: CertificateBody,
    pub u: MorphismBody,
    pub cone: CertificateBody,
}

/// An SOD claim whose base is given by the context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimBody {
    pub ambient_generators: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub witnesses: Vec<WitnessBody>,
}

fn enc_claim(c: &SodClaim) -> ClaimBody {
    let l = |o: &ObjId| c.base.label(*o).to_string();
    ClaimBody {
        ambient_generators: c.ambient_generators.iter().map(l).collect(),
        blocks: c.blocks.iter().map(|b| b.iter().map(l).collect()).collect(),
        witnesses: c
            .witnesses
            .iter()
            .map(|w| WitnessBody {
                generator: l(&w.generator),
                cut: w.cut,
                x_b: enc_certificate(&w.x_b),
                u: enc_morphism(&w.u),
                cone: enc_certificate(&w.cone),
            })
            .collect(),
    }
}

fn dec_claim(base: &Arc<DgCategory>, b: &ClaimBody) -> Result<SodClaim, SchemaError> {
    let witnesses = b
        .witnesses
        .iter()
        .map(|w| {
            Ok(CutWitness {
                generator: base.obj(&w.generator).map_err(invalid)?,
                cut: w.cut,
                x_b: dec_certificate(base, &w.x_b)?,
                u: dec_morphism(base, &w.u)?,
                cone: dec_certificate(base, &w.cone)?,
            })
        })
        .collect::<Result<Vec<_>, SchemaError>>()?;
    Ok(SodClaim {
        base: base.clone(),
        ambient_generators: labels_to_ids(base, &b.ambient_generators)?,
        blocks: b.blocks.iter().map(|bl| labels_to_ids(base, bl)).collect::<Result<_, _>>()?,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClaimDoc {
    base: CategoryBody,
    claim: ClaimBody,
}

pub fn claim_document(c: &SodClaim) -> Document {
    Document::new(Kind::SodClaim, c.base.field(), ClaimDoc { base: enc_category(&c.base), claim: enc_claim(c) })
}

pub fn claim_from(doc: &Document) -> Result<SodClaim, SchemaError> {
    let (field, b) = doc.body::<ClaimDoc>(Kind::SodClaim)?;
    let base = Arc::new(dec_category(field, &b.base)?);
    dec_claim(&base, &b.claim)
}

/// Equivalence witnesses; the functor's categories come from the context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivBody {
    pub functor: FunctorMaps,
    /// `(target object, object over the source, map F(object) → target)`.
    pub witnesses: Vec<(String, ComplexBody, MorphismBody)>,
}

fn enc_equiv(e: &EquivCertificate) -> EquivBody {
    let d = e.functor.dst();
    EquivBody {
        functor: enc_functor_maps(&e.functor),
        witnesses: e
            .witnesses
            .iter()
            .map(|w| (d.label(w.target).to_string(), enc_complex(&w.object), enc_morphism(&w.map)))
            .collect(),
    }
}

fn dec_equiv(src: &Arc<DgCategory>, dst: &Arc<DgCategory>, b: &EquivBody) -> Result<EquivCertificate, SchemaError> {
    let functor = dec_functor_maps(src, dst, &b.functor)?;
    let witnesses = b
        .witnesses
        .iter()
        .map(|(t, x, m)| {
            Ok(EquivWitness { target: dst.obj(t).map_err(invalid)?, object: dec_complex(src, x)?, map: dec_morphism(dst, m)? })
        })
        .collect::<Result<Vec<_>, SchemaError>>()?;
    Ok(EquivCertificate { functor, witnesses })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquivDoc {
    src: CategoryBody,
    dst: CategoryBody,
    certificate: EquivBody,
}

pub fn equiv_document(e: &EquivCertificate) -> Document {
    let f = &e.functor;
    let body = EquivDoc { src: enc_category(f.src()), dst: enc_category(f.dst()), certificate: enc_equiv(e) };
    Document::new(Kind::EquivCertificate, f.src().field(), body)
}

pub fn equiv_from(doc: &Document) -> Result<EquivCertificate, SchemaError> {
    let (field, b) = doc.body::<EquivDoc>(Kind::EquivCertificate)?;
    let src = Arc::new(dec_category(field, &b.src)?);
    let dst = Arc::new(dec_category(field, &b.dst)?);
    dec_equiv(&src, &dst, &b.certificate)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SerreDoc {
    src: CategoryBody,
    dst: CategoryBody,
    functor: FunctorMaps,
    inclusion: FunctorMaps,
    /// Trace on `Hom(ιA, SA)^0` per source object.
    traces: Vec<(String, Vec<String>)>,
}

pub fn serre_document(s: &SerreData) -> Document {
    let c = s.functor.src();
    let body = SerreDoc {
        src: enc_category(c),
        dst: enc_category(s.functor.dst()),
        functor: enc_functor_maps(&s.functor),
        inclusion: enc_functor_maps(&s.inclusion),
        traces: c.objects().zip(&s.traces).map(|(a, t)| (c.label(a).to_string(), enc_vec(t))).collect(),
    };
    Document::new(Kind::SerreData, c.field(), body)
}

pub fn serre_from(doc: &Document) -> Result<SerreData, SchemaError> {
    let (field, b) = doc.body::<SerreDoc>(Kind::SerreData)?;
    let src = Arc::new(dec_category(field, &b.src)?);
    let dst = if b.src == b.dst { src.clone() } else { Arc::new(dec_category(field, &b.dst)?) };
    let functor = dec_functor_maps(&src, &dst, &b.functor)?;
    let inclusion = dec_functor_maps(&src, &dst, &b.inclusion)?;
    let mut traces = vec![Vec::new(); src.num_objects()];
    for (o, t) in &b.traces {
        traces[src.obj(o).map_err(invalid)?.0] = dec_vec(field, t)?;
    }
    Ok(SerreData { functor, inclusion, traces })
}

// ---------------------------------------------------------------------------------------------
// ledgers

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorBody {
    label: String,
    geometric: bool,
    category: Option<CategoryBody>,
}

/// The class of a block, with a point certificate whose categories are the point and the
/// block's full subcategory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockBody {
    class: String,
    point: Option<EquivBody>,
}

/// SOD evidence; the claim's base is the ambient category (or the tensor category).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvidenceBody {
    claim: ClaimBody,
    blocks: Vec<BlockBody>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum TensorValueBody {
    Generator(String),
    Decomposed(EvidenceBody),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
enum ProvenanceBody {
    VerifiedSod { ambient: String, evidence: EvidenceBody },
    VerifiedTensor { left: String, right: String, mode: String, value: TensorValueBody },
    Paper { citation: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationBody {
    expr: String,
    provenance: ProvenanceBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactBody {
    left: String,
    right: String,
    value: String,
    provenance: ProvenanceBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LedgerBody {
    gamma: bool,
    degree_bound: usize,
    version: u64,
    generators: Vec<GeneratorBody>,
    relations: Vec<RelationBody>,
    facts: Vec<FactBody>,
}

fn enc_evidence(e: &SodEvidence) -> EvidenceBody {
    EvidenceBody {
        claim: enc_claim(&e.claim),
        blocks: e.blocks.iter().map(|b| BlockBody { class: b.class.to_string(), point: b.point.as_ref().map(enc_equiv) }).collect(),
    }
}

fn dec_evidence(base: &Arc<DgCategory>, b: &EvidenceBody) -> Result<SodEvidence, SchemaError> {
    let claim = dec_claim(base, &b.claim)?;
    if b.blocks.len() != claim.blocks.len() {
        return Err(invalid("one class per block is required"));
    }
    let pt = Arc::new(point_category(base.field()));
    let blocks = b
        .blocks
        .iter()
        .zip(&claim.blocks)
        .map(|(bb, objs)| {
            let point = match &bb.point {
                Some(e) => {
                    let sub = Arc::new(base.full_subcategory(objs).map_err(invalid)?);
                    Some(dec_equiv(&pt, &sub, e)?)
                }
                None => None,
            };
            Ok(BlockClass { class: ClassExpr::parse(&bb.class).map_err(invalid)?, point })
        })
        .collect::<Result<Vec<_>, SchemaError>>()?;
    Ok(SodEvidence { claim, blocks })
}

fn mode_name(m: ProductMode) -> &'static str {
    match m {
        ProductMode::Bullet => "bullet",
        ProductMode::Circ => "circ",
    }
}

fn enc_provenance(p: &Provenance) -> ProvenanceBody {
    match p {
        Provenance::VerifiedSod { ambient, evidence } => ProvenanceBody::VerifiedSod { ambient: ambient.clone(), evidence: enc_evidence(evidence) },
        Provenance::VerifiedTensor { left, right, mode, value } => ProvenanceBody::VerifiedTensor {
            left: left.clone(),
            right: right.clone(),
            mode: mode_name(*mode).into(),
            value: match value {
                TensorValue::Generator(g) => TensorValueBody::Generator(g.clone()),
                TensorValue::Decomposed(e) => TensorValueBody::Decomposed(enc_evidence(e)),
            },
        },
        Provenance::Paper(c) => ProvenanceBody::Paper { citation: c.clone() },
    }
}

fn payload(cats: &BTreeMap<String, Arc<DgCategory>>, label: &str) -> Result<Arc<DgCategory>, SchemaError> {
    cats.get(label).cloned().ok_or_else(|| invalid(format!("generator {label} has no category")))
}

fn dec_provenance(cats: &BTreeMap<String, Arc<DgCategory>>, p: &ProvenanceBody) -> Result<Provenance, SchemaError> {
    Ok(match p {
        ProvenanceBody::VerifiedSod { ambient, evidence } => {
            let base = payload(cats, ambient)?;
            Provenance::VerifiedSod { ambient: ambient.clone(), evidence: dec_evidence(&base, evidence)? }
        }
        ProvenanceBody::VerifiedTensor { left, right, mode, value } => {
            let mode = match mode.as_str() {
                "bullet" => ProductMode::Bullet,
                "circ" => ProductMode::Circ,
                m => return Err(invalid(format!("unknown product mode {m:?}"))),
            };
            let value = match value {
                TensorValueBody::Generator(g) => TensorValue::Generator(g.clone()),
                TensorValueBody::Decomposed(e) => {
                    let product = Arc::new(tensor(&*payload(cats, left)?, &*payload(cats, right)?).map_err(invalid)?);
                    TensorValue::Decomposed(dec_evidence(&product, e)?)
                }
            };
            Provenance::VerifiedTensor { left: left.clone(), right: right.clone(), mode, value }
        }
        ProvenanceBody::Paper { citation } => Provenance::Paper(citation.clone()),
    })
}

pub fn ledger_document(l: &Ledger, field: Field) -> Document {
    let body = LedgerBody {
        gamma: l.is_gamma(),
        degree_bound: l.degree_bound(),
        version: l.version(),
        generators: l
            .generators()
            .map(|g| GeneratorBody { label: g.label.clone(), geometric: g.geometric, category: g.category.as_deref().map(enc_category) })
            .collect(),
        relations: l.relations().iter().map(|r| RelationBody { expr: r.expr.to_string(), provenance: enc_provenance(&r.provenance) }).collect(),
        facts: l
            .facts()
            .map(|f| FactBody { left: f.left.clone(), right: f.right.clone(), value: f.value.to_string(), provenance: enc_provenance(&f.provenance) })
            .collect(),
    };
    Document::new(Kind::Ledger, field, body)
}

/// Rebuilds the ledger by replaying every registration, relation and fact, so all verified
/// provenance is re-checked. Provenance failures are returned as the inner error.
pub fn ledger_from(doc: &Document) -> Result<Result<Ledger, crate::ptring::RingError>, SchemaError> {
    let (field, b) = doc.body::<LedgerBody>(Kind::Ledger)?;
    let mut cats = BTreeMap::new();
    let mut gens = Vec::new();
    for g in &b.generators {
        let c = match &g.category {
            Some(c) => {
                let c = Arc::new(dec_category(field, c)?);
                cats.insert(g.label.clone(), c.clone());
                Some(c)
            }
            None => None,
        };
        gens.push((g.label.clone(), g.geometric, c));
    }
    let mut relations = Vec::new();
    for r in &b.relations {
        relations.push((ClassExpr::parse(&r.expr).map_err(invalid)?, dec_provenance(&cats, &r.provenance)?));
    }
    let mut facts = Vec::new();
    for f in &b.facts {
        let value = ClassExpr::parse(&f.value).map_err(invalid)?;
        facts.push((f.left.clone(), f.right.clone(), value, dec_provenance(&cats, &f.provenance)?));
    }
    let replay = || -> Result<Ledger, crate::ptring::RingError> {
        let mut l = if b.gamma { Ledger::gamma(b.degree_bound) } else { Ledger::new(b.degree_bound) };
        for (label, geometric, c) in gens {
            l = l.register(&label, geometric, c)?;
        }
        for (e, p) in relations {
            l = l.add_relation(e, p)?;
        }
        for (a, bb, v, p) in facts {
            l = l.add_product_fact(&a, &bb, v, p)?;
        }
        l.version = b.version;
        Ok(l)
    };
    Ok(replay())
}
