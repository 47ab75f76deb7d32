use std::sync::Arc;

use crate::dgcore::{DgCategory, HomSpace, ObjId};

use super::{PretrError, TwistedComplex, TwistedHom};

/// The full DG subcategory of the pretriangulated hull on the given labelled twisted complexes,
/// as an ordinary finite DG category with diagrammatic composition.
pub fn hull_subcategory(objects: &[(String, TwistedComplex)]) -> Result<DgCategory, PretrError> {
    let Some((_, first)) = objects.first() else {
        return Err(PretrError::Malformed("no objects".into()));
    };
    let base: &Arc<DgCategory> = first.base();
    let mut out = DgCategory::new(base.field());
    for (l, _) in objects {
        out.add_object(l.clone())?;
    }
    let n = objects.len();
    let mut homs: Vec<Vec<TwistedHom>> = Vec::with_capacity(n);
    for (_, x) in objects {
        let row = objects.iter().map(|(_, y)| TwistedHom::new(x, y)).collect::<Result<Vec<_>, _>>()?;
        homs.push(row);
    }
    for a in 0..n {
        for b in 0..n {
            let h = &homs[a][b];
            let basis = h.complex().dims().keys().map(|&d| (d, h.basis_names(d))).collect();
            out.set_hom(ObjId(a), ObjId(b), HomSpace::new(h.complex().clone(), basis)?)?;
        }
        out.set_identity(ObjId(a), homs[a][a].coords(&objects[a].1.identity()))?;
    }
    for a in 0..n {
        for b in 0..n {
            let fs = homs[a][b].basis_morphisms();
            for c in 0..n {
                let gs = homs[b][c].basis_morphisms();
                let mut idx_f = std::collections::BTreeMap::<i64, usize>::new();
                for f in &fs {
                    let i = *idx_f.entry(f.degree()).and_modify(|k| *k += 1).or_insert(0);
                    let mut idx_g = std::collections::BTreeMap::<i64, usize>::new();
                    for g in &gs {
                        let j = *idx_g.entry(g.degree()).and_modify(|k| *k += 1).or_insert(0);
                        let fg = f.compose(g)?;
                        let v = homs[a][c].coords(&fg);
                        out.set_comp(ObjId(a), ObjId(b), ObjId(c), f.degree(), i, g.degree(), j, v)?;
                    }
                }
            }
        }
    }
    Ok(out)
}
