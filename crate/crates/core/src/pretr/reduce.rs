use std::collections::{BTreeMap, BTreeSet};

use crate::dgcore::ObjId;
use crate::exactlin::{is_zero_vector, Matrix, Vector};

use super::{is_ho_iso, signs, PretrError, Term, TwistedComplex, TwistedMorphism};

/// Gaussian elimination: repeatedly cancels closed invertible degree-0 twist entries.
/// Returns the reduced complex and a closed degree-0 map `x → y` verified to be a homotopy
/// equivalence.
pub fn reduce(x: &TwistedComplex) -> Result<(TwistedComplex, TwistedMorphism), PretrError> {
    let mut cur = x.clone();
    let mut total = x.identity();
    'outer: loop {
        let candidates: Vec<(usize, usize)> = cur.twist().keys().copied().collect();
        for (i, j) in candidates {
            let Some((y, f)) = eliminate(&cur, i, j)? else { continue };
            if !f.is_closed() || !is_ho_iso(&f)? {
                continue;
            }
            total = f.after(&total)?;
            cur = y;
            continue 'outer;
        }
        break;
    }
    Ok((cur, total))
}

/// Inverse of the pivot `q_ij: C_j → C_i` when it has underlying degree 0, is closed and is
/// invertible in the base category.
fn pivot_inverse(x: &TwistedComplex, i: usize, j: usize) -> Result<Option<Vector>, PretrError> {
    let base = x.base();
    let (ti, tj) = (x.terms()[i], x.terms()[j]);
    if 1 + ti.shift - tj.shift != 0 {
        return Ok(None);
    }
    let q = &x.twist()[&(i, j)];
    if !is_zero_vector(&base.hom(tj.obj, ti.obj).complex.apply_diff(0, q)) {
        return Ok(None);
    }
    let d = base.hom(ti.obj, tj.obj).dim(0);
    if d == 0 {
        return Ok(None);
    }
    let field = base.field();
    let (nj, ni) = (base.hom(tj.obj, tj.obj).dim(0), base.hom(ti.obj, ti.obj).dim(0));
    let cols: Vec<Vector> = (0..d)
        .map(|t| {
            let phi = base.basis_morphism(ti.obj, tj.obj, 0, t).coords;
            let mut col = base.mul_coords(tj.obj, ti.obj, tj.obj, 0, q, 0, &phi);
            col.extend(base.mul_coords(ti.obj, tj.obj, ti.obj, 0, &phi, 0, q));
            col
        })
        .collect();
    let m = Matrix::from_columns(field, nj + ni, &cols)?;
    let mut target = base.identity_coords(tj.obj).clone();
    target.extend(base.identity_coords(ti.obj).iter().cloned());
    Ok(m.solve(&target)?)
}

fn eliminate(x: &TwistedComplex, i: usize, j: usize) -> Result<Option<(TwistedComplex, TwistedMorphism)>, PretrError> {
    let Some(phi) = pivot_inverse(x, i, j)? else { return Ok(None) };
    let base = x.base();
    let field = base.field();
    let terms = x.terms();
    let obj = |k: usize| -> ObjId { terms[k].obj };
    let kept: Vec<usize> = (0..terms.len()).filter(|&k| k != i && k != j).collect();
    let q = x.twist();
    let under = |a: usize, b: usize| 1 + terms[a].shift - terms[b].shift;

    // q'_kl = q_kl - q_kj ∘ φ ∘ q_il
    let mut newq: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for &k in &kept {
        for &l in &kept {
            let mut v = q.get(&(k, l)).cloned();
            if let (Some(qkj), Some(qil)) = (q.get(&(k, j)), q.get(&(i, l))) {
                let t = signs::abar_comp(base, obj(l), obj(i), obj(j), under(i, l), qil, 0, &phi);
                let t = signs::abar_comp(base, obj(l), obj(j), obj(k), under(i, l), &t, under(k, j), qkj);
                let e = v.get_or_insert_with(|| vec![field.zero(); t.len()]);
                crate::exactlin::axpy(e, &-field.one(), &t);
            }
            if let Some(v) = v.filter(|v| !is_zero_vector(v)) {
                newq.insert((k, l), v);
            }
        }
    }
    // order kept terms so that the new twist stays strictly upper triangular
    let Some(order) = topo_order(&kept, &newq) else { return Ok(None) };
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(p, &k)| (k, p)).collect();
    let new_terms: Vec<Term> = order.iter().map(|&k| terms[k]).collect();
    let q2 = newq.into_iter().map(|((k, l), v)| ((pos[&k], pos[&l]), v)).collect();
    let y = TwistedComplex::with_parts(base.clone(), new_terms, q2);
    if !y.maurer_cartan_defect().is_empty() {
        return Ok(None);
    }
    // F: x → y, identity on kept terms and -q_kj ∘ φ out of term i
    let mut entries: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for &k in &kept {
        let id = base.identity_coords(obj(k)).clone();
        if !is_zero_vector(&id) {
            entries.insert((pos[&k], k), id);
        }
        if let Some(qkj) = q.get(&(k, j)) {
            let t = signs::abar_comp(base, obj(i), obj(j), obj(k), 0, &phi, under(k, j), qkj);
            let t: Vector = t.iter().map(|s| -s).collect();
            if !is_zero_vector(&t) {
                entries.insert((pos[&k], i), t);
            }
        }
    }
    let f = TwistedMorphism::new(x.clone(), y.clone(), 0, entries)?;
    Ok(Some((y, f)))
}

fn topo_order(kept: &[usize], q: &BTreeMap<(usize, usize), Vector>) -> Option<Vec<usize>> {
    // k must precede l whenever q_kl ≠ 0
    let mut indeg: BTreeMap<usize, usize> = kept.iter().map(|&k| (k, 0)).collect();
    for &(k, l) in q.keys() {
        if k == l {
            return None;
        }
        *indeg.get_mut(&l).unwrap() += 1;
    }
    let mut ready: BTreeSet<usize> = indeg.iter().filter(|(_, d)| **d == 0).map(|(k, _)| *k).collect();
    let mut out = Vec::new();
    while let Some(&k) = ready.iter().next() {
        ready.remove(&k);
        out.push(k);
        for &(a, l) in q.keys() {
            if a == k {
                let d = indeg.get_mut(&l).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(l);
                }
            }
        }
    }
    (out.len() == kept.len()).then_some(out)
}
