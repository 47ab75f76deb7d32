use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::dgcore::{DgCategory, Morphism, ObjId};
use crate::exactlin::{axpy, is_zero_vector, zero_vector, Scalar, Vector};

use super::{signs, PretrError};

/// One summand `C[r]` of a twisted complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub obj: ObjId,
    pub shift: i64,
}

/// A one-sided twisted complex `(⊕ C_i[r_i], q)`.
///
/// `q[(i, j)]`, `i < j`, is an element of `Hom(C_j, C_i)` of underlying degree `1 + r_i - r_j`,
/// stored in the base category's basis (so it lives in `base.hom(C_j, C_i)`).
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    base: Arc<DgCategory>,
    terms: Vec<Term>,
    q: BTreeMap<(usize, usize), Vector>,
}

impl PartialEq for TwistedComplex {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base) && self.terms == other.terms && self.q == other.q
    }
}

impl Eq for TwistedComplex {}

pub(crate) fn same_base(a: &Arc<DgCategory>, b: &Arc<DgCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl TwistedComplex {
    /// Checks shape and the Maurer–Cartan equation `dq + q² = 0`.
    pub fn new(
        base: Arc<DgCategory>,
        terms: Vec<Term>,
        q: BTreeMap<(usize, usize), Vector>,
    ) -> Result<TwistedComplex, PretrError> {
        let x = TwistedComplex::new_unchecked(base, terms, q)?;
        if !x.maurer_cartan_defect().is_empty() {
            return Err(PretrError::MaurerCartan);
        }
        Ok(x)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        base: Arc<DgCategory>,
        terms: Vec<Term>,
        q: BTreeMap<(usize, usize), Vector>,
    ) -> Result<TwistedComplex, PretrError> {
        for t in &terms {
            if t.obj.0 >= base.num_objects() {
                return Err(PretrError::Malformed(format!("unknown object {}", t.obj)));
            }
        }
        let mut kept = BTreeMap::new();
        for ((i, j), v) in q {
            if i >= j || j >= terms.len() {
                return Err(PretrError::Malformed(format!("twist entry ({i},{j}) is not strictly upper triangular")));
            }
            let u = 1 + terms[i].shift - terms[j].shift;
            if v.len() != base.hom(terms[j].obj, terms[i].obj).dim(u) {
                return Err(PretrError::Malformed(format!("twist entry ({i},{j}) has the wrong length")));
            }
            if !is_zero_vector(&v) {
                kept.insert((i, j), v);
            }
        }
        Ok(TwistedComplex { base, terms, q: kept })
    }

    pub fn embed(base: Arc<DgCategory>, a: ObjId) -> TwistedComplex {
        TwistedComplex { base, terms: vec![Term { obj: a, shift: 0 }], q: BTreeMap::new() }
    }

    pub fn zero(base: Arc<DgCategory>) -> TwistedComplex {
        TwistedComplex { base, terms: Vec::new(), q: BTreeMap::new() }
    }

    pub fn base(&self) -> &Arc<DgCategory> {
        &self.base
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn twist(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.q
    }

    /// The twist as a degree-1 endomorphism.
    pub fn q_morphism(&self) -> TwistedMorphism {
        TwistedMorphism { src: self.clone(), dst: self.clone(), degree: 1, entries: self.q.clone() }
    }

    /// Entries `(i, j)` where `dq + q²` is nonzero.
    pub fn maurer_cartan_defect(&self) -> Vec<(usize, usize)> {
        let q = self.q_morphism();
        let mut out = q.d_abar();
        let sq = q.compose_fn_raw(&q);
        for (k, v) in sq {
            let e = out.entry(k).or_insert_with(|| zero_vector(self.base.field(), v.len()));
            axpy(e, &self.base.field().one(), &v);
        }
        out.into_iter().filter(|(_, v)| !is_zero_vector(v)).map(|(k, _)| k).collect()
    }

    /// `X[n]`: shifts raised by `n`, twist multiplied by `(-1)^n`.
    pub fn shift(&self, n: i64) -> TwistedComplex {
        let sign = self.base.field().one().signed(n);
        TwistedComplex {
            base: self.base.clone(),
            terms: self.terms.iter().map(|t| Term { obj: t.obj, shift: t.shift + n }).collect(),
            q: self.q.iter().map(|(k, v)| (*k, v.iter().map(|x| &sign * x).collect())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &TwistedComplex) -> Result<TwistedComplex, PretrError> {
        if !same_base(&self.base, &other.base) {
            return Err(PretrError::BaseMismatch);
        }
        let n = self.terms.len();
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        let mut q = self.q.clone();
        q.extend(other.q.iter().map(|((i, j), v)| ((i + n, j + n), v.clone())));
        Ok(TwistedComplex { base: self.base.clone(), terms, q })
    }

    pub fn identity(&self) -> TwistedMorphism {
        let entries = (0..self.terms.len())
            .map(|i| (i, self.base.identity_coords(self.terms[i].obj).clone()))
            .filter(|(_, v)| !is_zero_vector(v))
            .map(|(i, v)| ((i, i), v))
            .collect();
        TwistedMorphism { src: self.clone(), dst: self.clone(), degree: 0, entries }
    }

    /// Replaces the base by an equal category (used after deserialization).
    pub fn rebase(&self, base: Arc<DgCategory>) -> TwistedComplex {
        TwistedComplex { base, ..self.clone() }
    }

    pub(crate) fn with_parts(base: Arc<DgCategory>, terms: Vec<Term>, q: BTreeMap<(usize, usize), Vector>) -> Self {
        TwistedComplex { base, terms, q }
    }
}

impl fmt::Display for TwistedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let l = self.base.label(t.obj);
                if t.shift == 0 {
                    l.to_string()
                } else {
                    format!("{l}[{}]", t.shift)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))?;
        if !self.q.is_empty() {
            write!(f, " (twisted, {} entries)", self.q.len())?;
        }
        Ok(())
    }
}

/// A morphism of twisted complexes: entries `(i, j)` in `Hom(src_j, dst_i)` of underlying degree
/// `degree + r'_i - r_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedMorphism {
    pub(crate) src: TwistedComplex,
    pub(crate) dst: TwistedComplex,
    pub(crate) degree: i64,
    pub(crate) entries: BTreeMap<(usize, usize), Vector>,
}

impl TwistedMorphism {
    pub fn new(
        src: TwistedComplex,
        dst: TwistedComplex,
        degree: i64,
        entries: BTreeMap<(usize, usize), Vector>,
    ) -> Result<TwistedMorphism, PretrError> {
        if !same_base(&src.base, &dst.base) {
            return Err(PretrError::BaseMismatch);
        }
        let mut kept = BTreeMap::new();
        for ((i, j), v) in entries {
            if i >= dst.len() || j >= src.len() {
                return Err(PretrError::Malformed(format!("entry ({i},{j}) out of range")));
            }
            let u = signs::underlying_degree(degree, src.terms[j].shift, dst.terms[i].shift);
            if v.len() != src.base.hom(src.terms[j].obj, dst.terms[i].obj).dim(u) {
                return Err(PretrError::Malformed(format!("entry ({i},{j}) has the wrong length")));
            }
            if !is_zero_vector(&v) {
                kept.insert((i, j), v);
            }
        }
        Ok(TwistedMorphism { src, dst, degree, entries: kept })
    }

    pub fn zero(src: &TwistedComplex, dst: &TwistedComplex, degree: i64) -> TwistedMorphism {
        TwistedMorphism { src: src.clone(), dst: dst.clone(), degree, entries: BTreeMap::new() }
    }

    /// A base morphism `a → b` as a map `embed(a) → embed(b)`.
    pub fn from_base(base: Arc<DgCategory>, f: &Morphism) -> TwistedMorphism {
        let src = TwistedComplex::embed(base.clone(), f.src);
        let dst = TwistedComplex::embed(base, f.dst);
        let mut entries = BTreeMap::new();
        if !is_zero_vector(&f.coords) {
            entries.insert((0, 0), f.coords.clone());
        }
        TwistedMorphism { src, dst, degree: f.degree, entries }
    }

    pub fn src(&self) -> &TwistedComplex {
        &self.src
    }

    pub fn dst(&self) -> &TwistedComplex {
        &self.dst
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.entries
    }

    pub fn base(&self) -> &Arc<DgCategory> {
        &self.src.base
    }

    pub fn underlying_degree(&self, i: usize, j: usize) -> i64 {
        signs::underlying_degree(self.degree, self.src.terms[j].shift, self.dst.terms[i].shift)
    }

    pub fn entry(&self, i: usize, j: usize) -> Vector {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| {
            let u = self.underlying_degree(i, j);
            zero_vector(self.base().field(), self.base().hom(self.src.terms[j].obj, self.dst.terms[i].obj).dim(u))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, c: &Scalar) -> TwistedMorphism {
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (*k, v.iter().map(|x| c * x).collect::<Vector>()))
            .filter(|(_, v)| !is_zero_vector(v))
            .collect();
        TwistedMorphism { entries, ..self.clone() }
    }

    pub fn add(&self, other: &TwistedMorphism) -> Result<TwistedMorphism, PretrError> {
        if self.src != other.src || self.dst != other.dst || self.degree != other.degree {
            return Err(PretrError::ShapeMismatch);
        }
        let mut entries = self.entries.clone();
        add_into(&mut entries, &other.entries, &self.base().field().one());
        Ok(TwistedMorphism { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &TwistedMorphism) -> Result<TwistedMorphism, PretrError> {
        self.add(&other.scaled(&-self.base().field().one()))
    }

    /// Entrywise `d_Ā`.
    fn d_abar(&self) -> BTreeMap<(usize, usize), Vector> {
        let base = self.base();
        let mut out = BTreeMap::new();
        for (&(i, j), v) in &self.entries {
            let u = self.underlying_degree(i, j);
            let (a, b) = (self.src.terms[j].obj, self.dst.terms[i].obj);
            let w = signs::abar_d(base, a, b, u, self.dst.terms[i].shift, v);
            if !is_zero_vector(&w) {
                out.insert((i, j), w);
            }
        }
        out
    }

    /// Functional matrix product `self ∘ f` in the shift category, as raw entries.
    pub(crate) fn compose_fn_raw(&self, f: &TwistedMorphism) -> BTreeMap<(usize, usize), Vector> {
        let base = self.base();
        let mut out: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (&(k, j), fv) in &f.entries {
            let uf = f.underlying_degree(k, j);
            for (&(i, k2), gv) in &self.entries {
                if k2 != k {
                    continue;
                }
                let ug = self.underlying_degree(i, k);
                let (a, b, c) = (f.src.terms[j].obj, f.dst.terms[k].obj, self.dst.terms[i].obj);
                let w = signs::abar_comp(base, a, b, c, uf, fv, ug, gv);
                match out.get_mut(&(i, j)) {
                    Some(e) => axpy(e, &base.field().one(), &w),
                    None => {
                        out.insert((i, j), w);
                    }
                }
            }
        }
        out.retain(|_, v| !is_zero_vector(v));
        out
    }

    /// `df = (d f_ij) + q' f - (-1)^{deg f} f q`.
    pub fn d(&self) -> TwistedMorphism {
        let field = self.base().field();
        let mut entries = self.d_abar();
        let qy = self.dst.q_morphism();
        let qx = self.src.q_morphism();
        add_into(&mut entries, &qy.compose_fn_raw(self), &field.one());
        add_into(&mut entries, &self.compose_fn_raw(&qx), &-field.one().signed(self.degree));
        TwistedMorphism { src: self.src.clone(), dst: self.dst.clone(), degree: self.degree + 1, entries }
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// Functional composite `self ∘ f` (`f` first).
    pub fn after(&self, f: &TwistedMorphism) -> Result<TwistedMorphism, PretrError> {
        if f.dst != self.src {
            return Err(PretrError::ShapeMismatch);
        }
        Ok(TwistedMorphism {
            src: f.src.clone(),
            dst: self.dst.clone(),
            degree: f.degree + self.degree,
            entries: self.compose_fn_raw(f),
        })
    }

    /// Diagrammatic composite `mul(self, g)` (`self` first), `= (-1)^{|self||g|} g ∘ self`.
    pub fn compose(&self, g: &TwistedMorphism) -> Result<TwistedMorphism, PretrError> {
        let m = g.after(self)?;
        Ok(if (self.degree * g.degree).rem_euclid(2) == 1 { m.scaled(&-self.base().field().one()) } else { m })
    }

    /// The same underlying entries regarded as a morphism between other complexes with the same
    /// objects; the degree is recomputed from the shifts of the entry `(i, j)`.
    pub(crate) fn reinterpret(&self, src: &TwistedComplex, dst: &TwistedComplex, degree: i64) -> TwistedMorphism {
        TwistedMorphism { src: src.clone(), dst: dst.clone(), degree, entries: self.entries.clone() }
    }
}

pub(crate) fn add_into(acc: &mut BTreeMap<(usize, usize), Vector>, x: &BTreeMap<(usize, usize), Vector>, c: &Scalar) {
    for (k, v) in x {
        match acc.get_mut(k) {
            Some(e) => axpy(e, c, v),
            None => {
                acc.insert(*k, v.iter().map(|y| c * y).collect());
            }
        }
    }
    acc.retain(|_, v| !is_zero_vector(v));
}
