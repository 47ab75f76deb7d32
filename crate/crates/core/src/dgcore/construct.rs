use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactlin::{ChainComplex, Matrix, Scalar};
use crate::functors::DgFunctor;

use super::{CompTable, DgCategory, DgError, HomSpace, ObjId};

/// Label of the object `(a, b)` of a tensor product.
pub fn tensor_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// `Hom_op(A, B) = Hom(B, A)` with `mul_op(f, g) = (-1)^{|f||g|} mul(g, f)`.
pub fn opposite(c: &DgCategory) -> DgCategory {
    let mut out = DgCategory::new(c.field());
    for l in c.labels() {
        out.add_object(l.clone()).expect("labels are unique");
    }
    for ((a, b), h) in c.homs() {
        out.insert_hom_raw(b.0, a.0, h.clone());
    }
    let mut tables: BTreeMap<(usize, usize, usize, i64, i64), CompTable> = BTreeMap::new();
    for (&(x, y, z, p, q), t) in c.comp_blocks() {
        // mul(g, f) with g ∈ Hom(x,y)^p, f ∈ Hom(y,z)^q gives mul_op(f, g) on (z, y, x, q, p)
        let sign = c.field().one().signed(p * q);
        let table = tables.entry((z, y, x, q, p)).or_default();
        for (&(i, j), v) in t {
            table.insert((j, i), v.iter().map(|(k, s)| (*k, &sign * s)).collect());
        }
    }
    for (k, t) in tables {
        out.insert_comp_table(k, t);
    }
    for a in c.objects() {
        out.set_identity_raw(a.0, c.identity_coords(a).clone());
    }
    out
}

/// Layout of a tensor Hom space in degree `n`: blocks `(p, q)` with `p + q = n` in increasing `p`,
/// each block indexed `i * dim_q + j`.
struct TensorLayout {
    offsets: BTreeMap<(i64, i64), usize>,
    dims: BTreeMap<i64, usize>,
}

impl TensorLayout {
    fn new(h1: &HomSpace, h2: &HomSpace) -> TensorLayout {
        let mut offsets = BTreeMap::new();
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for (&p, &d1) in h1.complex.dims() {
            for (&q, &d2) in h2.complex.dims() {
                let slot = dims.entry(p + q).or_default();
                offsets.insert((p, q), *slot);
                *slot += d1 * d2;
            }
        }
        TensorLayout { offsets, dims }
    }

    fn index(&self, p: i64, q: i64, i: usize, j: usize, d2: usize) -> usize {
        self.offsets[&(p, q)] + i * d2 + j
    }
}

fn tensor_hom(h1: &HomSpace, h2: &HomSpace) -> Result<(HomSpace, TensorLayout), DgError> {
    let field = h1.complex.field();
    let lay = TensorLayout::new(h1, h2);
    let mut names: BTreeMap<i64, Vec<String>> = lay.dims.iter().map(|(n, d)| (*n, vec![String::new(); *d])).collect();
    let mut diffs: BTreeMap<i64, Matrix> = lay
        .dims
        .keys()
        .map(|&n| (n, Matrix::zero(field, lay.dims.get(&(n + 1)).copied().unwrap_or(0), lay.dims[&n])))
        .collect();
    for (&p, &d1) in h1.complex.dims() {
        let df = h1.complex.diff(p);
        for (&q, &d2) in h2.complex.dims() {
            let dg = h2.complex.diff(q);
            let sign = field.one().signed(p);
            for i in 0..d1 {
                for j in 0..d2 {
                    let col = lay.index(p, q, i, j, d2);
                    names.get_mut(&(p + q)).unwrap()[col] = format!("{}⊗{}", h1.basis[&p][i], h2.basis[&q][j]);
                    let m = diffs.get_mut(&(p + q)).unwrap();
                    for (r, _, v) in df.entries().filter(|(_, c, _)| *c == i) {
                        m.add_at(lay.index(p + 1, q, r, j, d2), col, v);
                    }
                    for (r, _, v) in dg.entries().filter(|(_, c, _)| *c == j) {
                        m.add_at(lay.index(p, q + 1, i, r, h2.dim(q + 1)), col, &(&sign * v));
                    }
                }
            }
        }
    }
    let complex = ChainComplex::new(field, lay.dims.clone(), diffs)?;
    Ok((HomSpace::new(complex, names)?, lay))
}

/// Tensor product with `mul(f1⊗g1, f2⊗g2) = (-1)^{|g1||f2|} mul(f1,f2) ⊗ mul(g1,g2)`.
pub fn tensor(c: &DgCategory, d: &DgCategory) -> Result<DgCategory, DgError> {
    if c.field() != d.field() {
        return Err(DgError::FieldMismatch);
    }
    let field = c.field();
    let nd = d.num_objects();
    let pair = |a: usize, b: usize| a * nd + b;
    let mut out = DgCategory::new(field);
    for a in c.objects() {
        for b in d.objects() {
            out.add_object(tensor_label(c.label(a), d.label(b)))?;
        }
    }
    let mut layouts: BTreeMap<(usize, usize), TensorLayout> = BTreeMap::new();
    for ((a, a2), h1) in c.homs() {
        for ((b, b2), h2) in d.homs() {
            let (h, lay) = tensor_hom(h1, h2)?;
            out.insert_hom_raw(pair(a.0, b.0), pair(a2.0, b2.0), h);
            layouts.insert((pair(a.0, b.0), pair(a2.0, b2.0)), lay);
        }
    }
    let mut tables: BTreeMap<(usize, usize, usize, i64, i64), CompTable> = BTreeMap::new();
    for (&(a, a1, a2, p1, p2), t1) in c.comp_blocks() {
        for (&(b, b1, b2, q1, q2), t2) in d.comp_blocks() {
            let (x, y, z) = (pair(a, b), pair(a1, b1), pair(a2, b2));
            let (lxy, lyz, lxz) = (&layouts[&(x, y)], &layouts[&(y, z)], &layouts[&(x, z)]);
            let dq1 = d.hom(ObjId(b), ObjId(b1)).dim(q1);
            let dq2 = d.hom(ObjId(b1), ObjId(b2)).dim(q2);
            let dq = d.hom(ObjId(b), ObjId(b2)).dim(q1 + q2);
            let sign = field.one().signed(q1 * p2);
            let table = tables.entry((x, y, z, p1 + q1, p2 + q2)).or_default();
            for (&(i1, i2), v1) in t1 {
                for (&(j1, j2), v2) in t2 {
                    let src = lxy.index(p1, q1, i1, j1, dq1);
                    let mid = lyz.index(p2, q2, i2, j2, dq2);
                    let val: Vec<(usize, Scalar)> = v1
                        .iter()
                        .flat_map(|(k, s)| {
                            v2.iter().map(move |(l, w)| (lxz.index(p1 + p2, q1 + q2, *k, *l, dq), s * w))
                        })
                        .map(|(k, s)| (k, &sign * &s))
                        .collect();
                    let mut val = val;
                    val.sort_by_key(|(k, _)| *k);
                    table.insert((src, mid), val);
                }
            }
        }
    }
    for (k, t) in tables {
        out.insert_comp_table(k, t);
    }
    for a in c.objects() {
        for b in d.objects() {
            let x = pair(a.0, b.0);
            let dim = out.hom(ObjId(x), ObjId(x)).dim(0);
            let mut id = vec![field.zero(); dim];
            if dim > 0 {
                let lay = &layouts[&(x, x)];
                let d2 = d.hom(b, b).dim(0);
                for (i, s) in c.identity_coords(a).iter().enumerate() {
                    for (j, t) in d.identity_coords(b).iter().enumerate() {
                        id[lay.index(0, 0, i, j, d2)] = s * t;
                    }
                }
            }
            out.set_identity_raw(x, id);
        }
    }
    Ok(out)
}

/// The isomorphism `c ⊗ d → d ⊗ c`, `f ⊗ g ↦ (-1)^{|f||g|} g ⊗ f`.
pub fn swap_iso(c: &DgCategory, d: &DgCategory) -> Result<DgFunctor, DgError> {
    let cd = tensor(c, d)?;
    let dc = tensor(d, c)?;
    let field = c.field();
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let objects: Vec<ObjId> = (0..nc * nd).map(|x| ObjId((x % nd) * nc + x / nd)).collect();
    let mut maps = BTreeMap::new();
    for ((a, a2), h1) in c.homs() {
        for ((b, b2), h2) in d.homs() {
            let lay = TensorLayout::new(h1, h2);
            let rev = TensorLayout::new(h2, h1);
            let (x, y) = (a.0 * nd + b.0, a2.0 * nd + b2.0);
            for (&n, &dim) in &lay.dims {
                let mut m = Matrix::zero(field, dim, dim);
                for (&p, &d1) in h1.complex.dims() {
                    let q = n - p;
                    let d2 = h2.dim(q);
                    let sign = field.one().signed(p * q);
                    for i in 0..d1 {
                        for j in 0..d2 {
                            m.set(rev.index(q, p, j, i, d1), lay.index(p, q, i, j, d2), sign.clone());
                        }
                    }
                }
                maps.insert((x, y, n), m);
            }
        }
    }
    Ok(DgFunctor::new(Arc::new(cd), Arc::new(dc), objects, maps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcore::{from_quiver, point_category, validate, Quiver};
    use crate::exactlin::Field;

    fn kronecker() -> DgCategory {
        from_quiver(&Quiver::new(Field::Rational).vertex("e1").vertex("e2").arrow("a", "e1", "e2").arrow("b", "e1", "e2"))
            .unwrap()
    }

    fn eps() -> DgCategory {
        from_quiver(&Quiver::new(Field::Rational).vertex("o").graded_arrow("ε", "o", "o", 1).relation(&[(1, "ε*ε")]))
            .unwrap()
    }

    #[test]
    fn opposite_involution_and_validity() {
        let k = kronecker();
        assert_eq!(opposite(&opposite(&k)), k);
        assert!(validate(&opposite(&k)).is_valid());
        let e = eps();
        let eo = opposite(&e);
        assert!(validate(&eo).is_valid());
        let o = eo.obj("o").unwrap();
        let x = eo.named_morphism(o, o, "ε").unwrap();
        assert!(eo.mul(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn kronecker_tensor() {
        let k = kronecker();
        let kk = tensor(&k, &k).unwrap();
        assert_eq!(kk.num_objects(), 4);
        let (s, t) = (kk.obj("(e1,e1)").unwrap(), kk.obj("(e2,e2)").unwrap());
        assert_eq!(kk.hom(s, t).dim(0), 4);
        assert!(validate(&kk).is_valid());
        let kp = tensor(&k, &point_category(Field::Rational)).unwrap();
        let relabeled = kp.relabeled(|l| l.trim_start_matches('(').split(',').next().unwrap().to_string());
        assert!(validate(&kp).is_valid());
        assert_eq!(relabeled.labels(), k.labels());
        for (a, b) in [(0, 1), (0, 0), (1, 1), (1, 0)] {
            assert_eq!(relabeled.hom(ObjId(a), ObjId(b)).complex, k.hom(ObjId(a), ObjId(b)).complex);
        }
    }

    #[test]
    fn epsilon_tensor_signs() {
        let e = eps();
        let ee = tensor(&e, &e).unwrap();
        assert!(validate(&ee).is_valid());
        let o = ee.obj("(o,o)").unwrap();
        assert_eq!(ee.hom(o, o).dim(2), 1);
        let e1 = ee.named_morphism(o, o, "ε⊗id_o").unwrap();
        let e2 = ee.named_morphism(o, o, "id_o⊗ε").unwrap();
        let ab = ee.mul(&e1, &e2).unwrap();
        let ba = ee.mul(&e2, &e1).unwrap();
        assert!(!ab.is_zero());
        assert_eq!(ab, ba.scaled(&Field::Rational.from_i64(-1)));
    }

    #[test]
    fn swap_signs() {
        let e = eps();
        let s = swap_iso(&e, &e).unwrap();
        let src = s.src();
        let o = src.obj("(o,o)").unwrap();
        let x = src.named_morphism(o, o, "ε⊗ε").unwrap();
        assert_eq!(s.apply(&x), x.scaled(&Field::Rational.from_i64(-1)));
        let k = kronecker();
        let sk = swap_iso(&k, &k).unwrap();
        for a in sk.src().objects() {
            for b in sk.src().objects() {
                for f in sk.src().basis_morphisms(a, b) {
                    assert_eq!(sk.apply(&sk.apply(&f)), f);
                }
            }
            assert_eq!(sk.apply(&sk.src().identity(a)), sk.dst().identity(sk.object(a)));
        }
    }
}
