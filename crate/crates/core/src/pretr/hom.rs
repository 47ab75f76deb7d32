use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::exactlin::{ChainComplex, Matrix, Scalar, Vector};

use super::{signs, PretrError, TwistedComplex, TwistedMorphism};

#[derive(Clone, Debug)]
struct Block {
    i: usize,
    j: usize,
    u: i64,
    offset: usize,
    dim: usize,
}

/// The Hom complex between two twisted complexes with a flat coordinate layout: in each degree
/// the blocks `(i, j)` in lexicographic order, each in the base category's basis.
#[derive(Clone, Debug)]
pub struct TwistedHom {
    src: TwistedComplex,
    dst: TwistedComplex,
    blocks: BTreeMap<i64, Vec<Block>>,
    complex: ChainComplex,
}

impl TwistedHom {
    pub fn new(x: &TwistedComplex, y: &TwistedComplex) -> Result<TwistedHom, PretrError> {
        if !super::twisted::same_base(x.base(), y.base()) {
            return Err(PretrError::BaseMismatch);
        }
        let base = x.base();
        let mut blocks: BTreeMap<i64, Vec<Block>> = BTreeMap::new();
        for (i, ti) in y.terms().iter().enumerate() {
            for (j, tj) in x.terms().iter().enumerate() {
                for (&u, &dim) in base.hom(tj.obj, ti.obj).complex.dims() {
                    let n = u - ti.shift + tj.shift;
                    debug_assert_eq!(signs::underlying_degree(n, tj.shift, ti.shift), u);
                    blocks.entry(n).or_default().push(Block { i, j, u, offset: 0, dim });
                }
            }
        }
        let mut dims = BTreeMap::new();
        for (n, bs) in blocks.iter_mut() {
            bs.sort_by_key(|b| (b.i, b.j));
            let mut off = 0;
            for b in bs.iter_mut() {
                b.offset = off;
                off += b.dim;
            }
            dims.insert(*n, off);
        }
        let mut hom = TwistedHom {
            src: x.clone(),
            dst: y.clone(),
            blocks,
            complex: ChainComplex::zero(base.field()),
        };
        let mut diffs = BTreeMap::new();
        for (&n, &dim) in &dims {
            let rows = dims.get(&(n + 1)).copied().unwrap_or(0);
            if rows == 0 {
                continue;
            }
            let cols: Vec<Vector> = (0..dim)
                .into_par_iter()
                .map(|c| {
                    let mut e = vec![base.field().zero(); dim];
                    e[c] = base.field().one();
                    hom.coords(&hom.morphism(n, &e).d())
                })
                .collect();
            diffs.insert(n, Matrix::from_columns(base.field(), rows, &cols)?);
        }
        hom.complex = ChainComplex::new(base.field(), dims, diffs)?;
        Ok(hom)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn src(&self) -> &TwistedComplex {
        &self.src
    }

    pub fn dst(&self) -> &TwistedComplex {
        &self.dst
    }

    pub fn dim(&self, n: i64) -> usize {
        self.blocks.get(&n).map_or(0, |bs| bs.iter().map(|b| b.dim).sum())
    }

    /// Flat coordinates of `f`, which must go from `src` to `dst`.
    pub fn coords(&self, f: &TwistedMorphism) -> Vector {
        let field = self.src.base().field();
        let mut out = vec![field.zero(); self.dim(f.degree())];
        if let Some(bs) = self.blocks.get(&f.degree()) {
            for b in bs {
                if let Some(v) = f.entries().get(&(b.i, b.j)) {
                    out[b.offset..b.offset + b.dim].clone_from_slice(v);
                }
            }
        }
        out
    }

    pub fn morphism(&self, degree: i64, coords: &[Scalar]) -> TwistedMorphism {
        let mut entries = BTreeMap::new();
        if let Some(bs) = self.blocks.get(&degree) {
            for b in bs {
                let v: Vector = coords[b.offset..b.offset + b.dim].to_vec();
                if v.iter().any(|x| !x.is_zero()) {
                    entries.insert((b.i, b.j), v);
                }
            }
        }
        let mut f = TwistedMorphism::zero(&self.src, &self.dst, degree);
        f.entries = entries;
        f
    }

    /// Basis element names `[i,j]name` in degree `n`.
    pub fn basis_names(&self, n: i64) -> Vec<String> {
        let base = self.src.base();
        let mut out = Vec::new();
        for b in self.blocks.get(&n).into_iter().flatten() {
            let h = base.hom(self.src.terms()[b.j].obj, self.dst.terms()[b.i].obj);
            for name in &h.basis[&b.u] {
                out.push(format!("[{},{}]{}", b.i, b.j, name));
            }
        }
        out
    }

    pub fn basis_morphisms(&self) -> Vec<TwistedMorphism> {
        let field = self.src.base().field();
        let mut out = Vec::new();
        for (&n, _) in &self.blocks {
            let d = self.dim(n);
            for c in 0..d {
                let mut e = vec![field.zero(); d];
                e[c] = field.one();
                out.push(self.morphism(n, &e));
            }
        }
        out
    }
}

pub fn hom_complex(x: &TwistedComplex, y: &TwistedComplex) -> Result<ChainComplex, PretrError> {
    Ok(TwistedHom::new(x, y)?.complex)
}

/// `dim H^n Hom(x, y)`.
pub fn ho_hom(x: &TwistedComplex, y: &TwistedComplex, n: i64) -> Result<usize, PretrError> {
    Ok(TwistedHom::new(x, y)?.complex.cohomology_dim(n))
}
