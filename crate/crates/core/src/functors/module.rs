use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dgcore::{DgCategory, ObjId};
use crate::exactlin::{axpy, is_zero_vector, ChainComplex, Matrix, Scalar, Vector};

use super::{DgFunctor, FunctorError};

type ActionTable = BTreeMap<(usize, usize), Vec<(usize, Scalar)>>;

/// A DG module over `base`, acting from the left in diagrammatic order: `f: B' → B` sends
/// `M(B)` to `M(B')`. Representables are `h^A(B) = Hom(B, A)` with `f · x = mul(f, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    base: Arc<DgCategory>,
    values: Vec<ChainComplex>,
    /// `(b', b, p, m)`: basis `f_i ∈ Hom(b', b)^p` and `x_j ∈ M(b)^m` to `f_i · x_j ∈ M(b')^{p+m}`.
    action: BTreeMap<(usize, usize, i64, i64), ActionTable>,
}

impl DgModule {
    pub fn new(
        base: Arc<DgCategory>,
        values: Vec<ChainComplex>,
        action: BTreeMap<(usize, usize, i64, i64), ActionTable>,
    ) -> Result<DgModule, FunctorError> {
        if values.len() != base.num_objects() {
            return Err(FunctorError::Malformed("one value per object is required".into()));
        }
        for (&(b1, b, p, m), t) in &action {
            let (nf, nx, ny) =
                (base.hom(ObjId(b1), ObjId(b)).dim(p), values[b].dim(m), values[b1].dim(p + m));
            for (&(i, j), v) in t {
                if i >= nf || j >= nx || v.iter().any(|(k, _)| *k >= ny) {
                    return Err(FunctorError::Malformed(format!("action entry out of range at ({b1},{b},{p},{m})")));
                }
            }
        }
        Ok(DgModule { base, values, action })
    }

    pub fn base(&self) -> &Arc<DgCategory> {
        &self.base
    }

    pub fn value(&self, b: ObjId) -> &ChainComplex {
        &self.values[b.0]
    }

    /// `f · x` for `f ∈ Hom(b', b)^p` and `x ∈ M(b)^m`.
    pub fn act(&self, b1: ObjId, b: ObjId, p: i64, f: &[Scalar], m: i64, x: &[Scalar]) -> Vector {
        let field = self.base.field();
        let mut out = vec![field.zero(); self.values[b1.0].dim(p + m)];
        let Some(t) = self.action.get(&(b1.0, b.0, p, m)) else { return out };
        for (i, fi) in f.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, xj) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                if let Some(v) = t.get(&(i, j)) {
                    let c = fi * xj;
                    for (k, s) in v {
                        out[*k] = &out[*k] + &(&c * s);
                    }
                }
            }
        }
        out
    }

    /// Violations of the chain-map, associativity and unit axioms.
    pub fn validate(&self) -> Vec<String> {
        let c = &self.base;
        let field = c.field();
        let mut out = Vec::new();
        for b in c.objects() {
            for (&m, &dm) in self.values[b.0].dims() {
                for j in 0..dm {
                    let x = crate::exactlin::unit_vector(field, dm, j);
                    if self.act(b, b, 0, c.identity_coords(b), m, &x) != x {
                        out.push(format!("unit fails on M({})^{m}[{j}]", c.label(b)));
                    }
                }
            }
        }
        for b1 in c.objects() {
            for b in c.objects() {
                for (&p, &dp) in c.hom(b1, b).complex.dims() {
                    for (&m, &dm) in self.values[b.0].dims() {
                        for i in 0..dp {
                            let f = crate::exactlin::unit_vector(field, dp, i);
                            let df = c.hom(b1, b).complex.apply_diff(p, &f);
                            for j in 0..dm {
                                let x = crate::exactlin::unit_vector(field, dm, j);
                                let dx = self.values[b.0].apply_diff(m, &x);
                                let lhs = self.values[b1.0].apply_diff(p + m, &self.act(b1, b, p, &f, m, &x));
                                let mut rhs = self.act(b1, b, p + 1, &df, m, &x);
                                axpy(&mut rhs, &field.one().signed(p), &self.act(b1, b, p, &f, m + 1, &dx));
                                if lhs != rhs {
                                    out.push(format!("action is not a chain map at ({},{},{p},{m})", c.label(b1), c.label(b)));
                                }
                                for b2 in c.objects() {
                                    for (&r, &dr) in c.hom(b2, b1).complex.dims() {
                                        for k in 0..dr {
                                            let g = crate::exactlin::unit_vector(field, dr, k);
                                            let gf = c.mul_coords(b2, b1, b, r, &g, p, &f);
                                            let l = self.act(b2, b, r + p, &gf, m, &x);
                                            let fx = self.act(b1, b, p, &f, m, &x);
                                            let rr = self.act(b2, b1, r, &g, p + m, &fx);
                                            if l != rr {
                                                out.push(format!(
                                                    "action is not associative at ({},{},{})",
                                                    c.label(b2),
                                                    c.label(b1),
                                                    c.label(b)
                                                ));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// The representable module `h^A = Hom(-, A)`.
pub fn yoneda(base: Arc<DgCategory>, a: ObjId) -> DgModule {
    let values = base.objects().map(|b| base.hom(b, a).complex.clone()).collect();
    let mut action: BTreeMap<(usize, usize, i64, i64), ActionTable> = BTreeMap::new();
    for (&(b1, b, c, p, m), t) in base.comp_blocks() {
        if c == a.0 {
            action.insert((b1, b, p, m), t.clone());
        }
    }
    DgModule { base, values, action }
}

/// Restriction along `g: C → D` of a module over `D`.
pub fn restrict_module(g: &DgFunctor, m: &DgModule) -> Result<DgModule, FunctorError> {
    if **g.dst() != *m.base {
        return Err(FunctorError::BaseMismatch);
    }
    let c = g.src();
    let field = c.field();
    let values: Vec<ChainComplex> = c.objects().map(|b| m.value(g.object(b)).clone()).collect();
    let mut action: BTreeMap<(usize, usize, i64, i64), ActionTable> = BTreeMap::new();
    for b1 in c.objects() {
        for b in c.objects() {
            for (&p, &dp) in c.hom(b1, b).complex.dims() {
                let block = g.block(b1, b, p);
                for (&mm, &dm) in values[b.0].dims() {
                    let mut t = ActionTable::new();
                    for i in 0..dp {
                        let gf = block.column(i);
                        for j in 0..dm {
                            let x = crate::exactlin::unit_vector(field, dm, j);
                            let y = m.act(g.object(b1), g.object(b), p, &gf, mm, &x);
                            let sparse: Vec<(usize, Scalar)> =
                                y.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect();
                            if !sparse.is_empty() {
                                t.insert((i, j), sparse);
                            }
                        }
                    }
                    if !t.is_empty() {
                        action.insert((b1.0, b.0, p, mm), t);
                    }
                }
            }
        }
    }
    Ok(DgModule { base: c.clone(), values, action })
}

#[derive(Clone, Debug)]
struct Slot {
    obj: usize,
    m: i64,
    rows: usize,
    cols: usize,
    offset: usize,
}

/// The complex of graded natural transformations `M → N`, with each degree presented by a
/// basis of solutions of the naturality equations.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    complex: ChainComplex,
    layouts: BTreeMap<i64, (Vec<Slot>, usize)>,
    bases: BTreeMap<i64, Vec<Vector>>,
    constraint_ranks: BTreeMap<i64, usize>,
}

impl ModuleHom {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// Rank of the naturality system in degree `k`.
    pub fn constraint_rank(&self, k: i64) -> usize {
        self.constraint_ranks.get(&k).copied().unwrap_or(0)
    }

    /// Raw components `t_B: M(B)^m → N(B)^{m+k}` of the transformation with the given coordinates.
    pub fn component(&self, k: i64, coords: &[Scalar], obj: ObjId, m: i64) -> Option<Matrix> {
        let (slots, total) = self.layouts.get(&k)?;
        let basis = &self.bases[&k];
        let field = coords.first().map(Scalar::field)?;
        let mut flat = vec![field.zero(); *total];
        for (c, v) in coords.iter().zip(basis) {
            axpy(&mut flat, c, v);
        }
        let s = slots.iter().find(|s| s.obj == obj.0 && s.m == m)?;
        let rows: Vec<Vector> = (0..s.rows).map(|r| flat[s.offset + r * s.cols..s.offset + (r + 1) * s.cols].to_vec()).collect();
        Matrix::from_rows(field, s.cols, &rows).ok()
    }
}

fn layout(m: &DgModule, n: &DgModule, k: i64) -> (Vec<Slot>, usize) {
    let mut slots = Vec::new();
    let mut off = 0;
    for b in m.base.objects() {
        for (&mm, &cols) in m.value(b).dims() {
            let rows = n.value(b).dim(mm + k);
            if rows > 0 {
                slots.push(Slot { obj: b.0, m: mm, rows, cols, offset: off });
                off += rows * cols;
            }
        }
    }
    (slots, off)
}

fn slot_of(slots: &[Slot], obj: usize, m: i64) -> Option<&Slot> {
    slots.iter().find(|s| s.obj == obj && s.m == m)
}

/// Hom complex of DG modules over the same base.
pub fn module_hom(m: &DgModule, n: &DgModule) -> Result<ModuleHom, FunctorError> {
    if *m.base != *n.base {
        return Err(FunctorError::BaseMismatch);
    }
    let c = &m.base;
    let field = c.field();
    let mut degrees: Vec<i64> = Vec::new();
    for b in c.objects() {
        for &mm in m.value(b).dims().keys() {
            for &nn in n.value(b).dims().keys() {
                degrees.push(nn - mm);
            }
        }
    }
    degrees.sort();
    degrees.dedup();
    let mut layouts = BTreeMap::new();
    let mut bases = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for &k in &degrees {
        let (slots, total) = layout(m, n, k);
        let mut rows: Vec<Vector> = Vec::new();
        for b1 in c.objects() {
            for b in c.objects() {
                for (&p, &dp) in c.hom(b1, b).complex.dims() {
                    let sign = field.one().signed(k * p);
                    for (&mm, &dm) in m.value(b).dims() {
                        let out_dim = n.value(b1).dim(p + mm + k);
                        if out_dim == 0 {
                            continue;
                        }
                        for i in 0..dp {
                            let f = crate::exactlin::unit_vector(field, dp, i);
                            for j in 0..dm {
                                let x = crate::exactlin::unit_vector(field, dm, j);
                                let mut eqs = vec![vec![field.zero(); total]; out_dim];
                                // t_{b'}(f · x)
                                let y = m.act(b1, b, p, &f, mm, &x);
                                if let Some(s) = slot_of(&slots, b1.0, p + mm) {
                                    for (r, eq) in eqs.iter_mut().enumerate() {
                                        for (col, yc) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                                            eq[s.offset + r * s.cols + col] = &eq[s.offset + r * s.cols + col] + yc;
                                        }
                                    }
                                }
                                // -(-1)^{kp} f · t_b(x)
                                if let Some(s) = slot_of(&slots, b.0, mm) {
                                    for r in 0..s.rows {
                                        let e = crate::exactlin::unit_vector(field, s.rows, r);
                                        let z = n.act(b1, b, p, &f, mm + k, &e);
                                        for (row, zc) in z.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                                            let var = s.offset + r * s.cols + j;
                                            eqs[row][var] = &eqs[row][var] - &(&sign * zc);
                                        }
                                    }
                                }
                                rows.extend(eqs.into_iter().filter(|e| !is_zero_vector(e)));
                            }
                        }
                    }
                }
            }
        }
        let a = Matrix::from_rows(field, total, &rows)?;
        ranks.insert(k, a.rank());
        let basis = a.nullspace();
        bases.insert(k, basis);
        layouts.insert(k, (slots, total));
    }

    let dims: BTreeMap<i64, usize> = bases.iter().map(|(k, b)| (*k, b.len())).collect();
    let mut diffs = BTreeMap::new();
    for &k in &degrees {
        let (Some(src), Some(dst)) = (bases.get(&k), bases.get(&(k + 1))) else { continue };
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let (src_slots, _) = &layouts[&k];
        let (dst_slots, dst_total) = &layouts[&(k + 1)];
        let frame = Matrix::from_columns(field, *dst_total, dst)?;
        let mut cols = Vec::new();
        for t in src {
            let mut out = vec![field.zero(); *dst_total];
            for s in dst_slots {
                let dn = n.value(ObjId(s.obj)).diff(s.m + k);
                let get = |slot: Option<&Slot>| -> Option<Matrix> {
                    let sl = slot?;
                    let rows: Vec<Vector> =
                        (0..sl.rows).map(|r| t[sl.offset + r * sl.cols..sl.offset + (r + 1) * sl.cols].to_vec()).collect();
                    Matrix::from_rows(field, sl.cols, &rows).ok()
                };
                // (dt)_m = d_N ∘ t_m - (-1)^k t_{m+1} ∘ d_M
                let mut res = Matrix::zero(field, s.rows, s.cols);
                if let Some(tm) = get(slot_of(src_slots, s.obj, s.m)) {
                    res = res.add(&dn.mul(&tm)?)?;
                }
                if let Some(tm1) = get(slot_of(src_slots, s.obj, s.m + 1)) {
                    let dmm = m.value(ObjId(s.obj)).diff(s.m);
                    res = res.add(&tm1.mul(&dmm)?.scaled(&-field.one().signed(k)))?;
                }
                for (r, c, v) in res.entries() {
                    out[s.offset + r * s.cols + c] = v.clone();
                }
            }
            let coords = frame.solve(&out)?.ok_or_else(|| FunctorError::Malformed("dt is not natural".into()))?;
            cols.push(coords);
        }
        diffs.insert(k, Matrix::from_columns(field, dst.len(), &cols)?);
    }
    let complex = ChainComplex::new(field, dims, diffs)?;
    Ok(ModuleHom { complex, layouts, bases, constraint_ranks: ranks })
}

/// The evaluation map `Hom(h^A, N)^k → N(A)^k`, `t ↦ t_A(id_A)`, in the chosen bases.
pub fn evaluation_matrix(hom: &ModuleHom, a: ObjId, base: &DgCategory, k: i64, target_dim: usize) -> Result<Matrix, FunctorError> {
    let field = base.field();
    let basis = hom.bases.get(&k).cloned().unwrap_or_default();
    let mut cols = Vec::new();
    for i in 0..basis.len() {
        let coords = crate::exactlin::unit_vector(field, basis.len(), i);
        let v = match hom.component(k, &coords, a, 0) {
            Some(t) => t.mul_vec(base.identity_coords(a))?,
            None => vec![field.zero(); target_dim],
        };
        cols.push(v);
    }
    Ok(Matrix::from_columns(field, target_dim, &cols)?)
}
