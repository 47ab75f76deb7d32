use std::collections::BTreeMap;

use crate::exactlin::is_zero_vector;

use super::{PretrError, Term, TwistedComplex, TwistedHom, TwistedMorphism};

/// A cone `C = Y ⊕ X[1]` of `f: X → Y` with its structure maps
/// `i: X[1] → C`, `p: C → X[1]`, `j: Y → C`, `s: C → Y`.
#[derive(Clone, Debug)]
pub struct ConeMaps {
    pub cone: TwistedComplex,
    pub i: TwistedMorphism,
    pub p: TwistedMorphism,
    pub j: TwistedMorphism,
    pub s: TwistedMorphism,
}

fn check_closed_degree_zero(f: &TwistedMorphism) -> Result<(), PretrError> {
    if f.degree() != 0 {
        return Err(PretrError::NotDegreeZero);
    }
    if !f.is_closed() {
        return Err(PretrError::NotClosed);
    }
    Ok(())
}

/// `Cone(f) = (Y ⊕ X[1], [[q_Y, f], [0, -q_X]])` for closed degree-zero `f: X → Y`.
pub fn cone(f: &TwistedMorphism) -> Result<TwistedComplex, PretrError> {
    Ok(cone_maps(f)?.cone)
}

pub fn cone_maps(f: &TwistedMorphism) -> Result<ConeMaps, PretrError> {
    check_closed_degree_zero(f)?;
    let (x, y) = (f.src(), f.dst());
    let m = y.len();
    let x1 = x.shift(1);
    let mut terms: Vec<Term> = y.terms().to_vec();
    terms.extend_from_slice(x1.terms());
    let mut q = y.twist().clone();
    for ((a, b), v) in x1.twist() {
        q.insert((a + m, b + m), v.clone());
    }
    for ((a, b), v) in f.entries() {
        q.insert((*a, b + m), v.clone());
    }
    let c = TwistedComplex::with_parts(x.base().clone(), terms, q);
    debug_assert!(c.maurer_cartan_defect().is_empty());
    let base = x.base();
    let id = |t: &Term| base.identity_coords(t.obj).clone();
    let block = |off_dst: usize, off_src: usize, ts: &[Term]| -> BTreeMap<(usize, usize), _> {
        ts.iter()
            .enumerate()
            .map(|(k, t)| ((k + off_dst, k + off_src), id(t)))
            .filter(|(_, v)| !is_zero_vector(v))
            .collect()
    };
    let i = TwistedMorphism::new(x1.clone(), c.clone(), 0, block(m, 0, x1.terms()))?;
    let p = TwistedMorphism::new(c.clone(), x1.clone(), 0, block(0, m, x1.terms()))?;
    let j = TwistedMorphism::new(y.clone(), c.clone(), 0, block(0, 0, y.terms()))?;
    let s = TwistedMorphism::new(c.clone(), y.clone(), 0, block(0, 0, y.terms()))?;
    Ok(ConeMaps { cone: c, i, p, j, s })
}

/// Checks `pi = 1, sj = 1, si = 0, pj = 0, ip + js = 1, d(j) = d(p) = 0, d(i) = jf, d(s) = -fp`,
/// products written functionally.
pub fn verify_cone_axioms(maps: &ConeMaps, f: &TwistedMorphism) -> bool {
    verify(maps, f).unwrap_or(false)
}

fn verify(maps: &ConeMaps, f: &TwistedMorphism) -> Result<bool, PretrError> {
    let ConeMaps { cone, i, p, j, s } = maps;
    let x1 = i.src().clone();
    let y = j.src().clone();
    if f.src().shift(1) != x1 || f.dst() != &y {
        return Ok(false);
    }
    // f regarded as a degree-1 map X[1] → Y with the same entries
    let ft = f.reinterpret(&x1, &y, 1);
    let eq = |a: &TwistedMorphism, b: &TwistedMorphism| a == b;
    let ok = eq(&p.after(i)?, &x1.identity())
        && eq(&s.after(j)?, &y.identity())
        && s.after(i)?.is_zero()
        && p.after(j)?.is_zero()
        && eq(&i.after(p)?.add(&j.after(s)?)?, &cone.identity())
        && j.d().is_zero()
        && p.d().is_zero()
        && eq(&i.d(), &j.after(&ft)?)
        && eq(&s.d(), &ft.after(p)?.scaled(&-cone.base().field().one()));
    Ok(ok)
}

/// Solves `d h = 1_x`; returns the verified witness `h` of degree `-1` if `x` is contractible.
pub fn is_contractible(x: &TwistedComplex) -> Result<Option<TwistedMorphism>, PretrError> {
    if x.is_empty() {
        return Ok(Some(TwistedMorphism::zero(x, x, -1)));
    }
    let hom = TwistedHom::new(x, x)?;
    let target = hom.coords(&x.identity());
    let d = hom.complex().diff(-1);
    let Some(sol) = d.solve(&target)? else { return Ok(None) };
    let h = hom.morphism(-1, &sol);
    if h.d() != x.identity() {
        return Err(PretrError::WitnessFailed("contracting homotopy does not verify".into()));
    }
    Ok(Some(h))
}

/// `f` is a homotopy equivalence iff its cone is contractible.
pub fn is_ho_iso(f: &TwistedMorphism) -> Result<bool, PretrError> {
    Ok(is_contractible(&cone(f)?)?.is_some())
}
