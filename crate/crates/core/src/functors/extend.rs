use std::collections::BTreeMap;

use crate::exactlin::Vector;
use crate::pretr::{PretrError, Term, TwistedComplex, TwistedMorphism};

use super::DgFunctor;

/// Entrywise application of a DG functor to twisted complexes and their morphisms.
#[derive(Clone, Debug)]
pub struct PretrFunctor<'a> {
    functor: &'a DgFunctor,
}

pub fn pretr_extend(f: &DgFunctor) -> PretrFunctor<'_> {
    PretrFunctor { functor: f }
}

impl PretrFunctor<'_> {
    fn map_entry(&self, a: crate::dgcore::ObjId, b: crate::dgcore::ObjId, u: i64, v: &[crate::exactlin::Scalar]) -> Vector {
        self.functor.block(a, b, u).mul_vec(v).expect("shape checked")
    }

    pub fn object(&self, x: &TwistedComplex) -> Result<TwistedComplex, PretrError> {
        let f = self.functor;
        let terms: Vec<Term> = x.terms().iter().map(|t| Term { obj: f.object(t.obj), shift: t.shift }).collect();
        let mut q = BTreeMap::new();
        for (&(i, j), v) in x.twist() {
            let (ti, tj) = (x.terms()[i], x.terms()[j]);
            q.insert((i, j), self.map_entry(tj.obj, ti.obj, 1 + ti.shift - tj.shift, v));
        }
        TwistedComplex::new_unchecked(f.dst().clone(), terms, q)
    }

    pub fn morphism(&self, m: &TwistedMorphism) -> Result<TwistedMorphism, PretrError> {
        let src = self.object(m.src())?;
        let dst = self.object(m.dst())?;
        let mut entries = BTreeMap::new();
        for (&(i, j), v) in m.entries() {
            let (a, b) = (m.src().terms()[j].obj, m.dst().terms()[i].obj);
            entries.insert((i, j), self.map_entry(a, b, m.underlying_degree(i, j), v));
        }
        TwistedMorphism::new(src, dst, m.degree(), entries)
    }
}
