use std::collections::BTreeMap;
use std::fmt;

use crate::exactlin::{axpy, zero_vector, ChainComplex, Field, Scalar, Vector};

use super::DgError;

/// Index of an object inside its category; the label lives in the category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A Hom complex with a named basis in each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub complex: ChainComplex,
    pub basis: BTreeMap<i64, Vec<String>>,
}

impl HomSpace {
    pub fn zero(field: Field) -> HomSpace {
        HomSpace { complex: ChainComplex::zero(field), basis: BTreeMap::new() }
    }

    pub fn new(complex: ChainComplex, basis: BTreeMap<i64, Vec<String>>) -> Result<HomSpace, DgError> {
        for (n, d) in complex.dims() {
            let len = basis.get(n).map_or(0, Vec::len);
            if len != *d {
                return Err(DgError::Malformed(format!("degree {n} has {d} dimensions but {len} basis names")));
            }
        }
        let basis = basis.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        Ok(HomSpace { complex, basis })
    }

    /// Unnamed basis `prefix0, prefix1, ...` per degree.
    pub fn with_generated_names(complex: ChainComplex, prefix: &str) -> HomSpace {
        let basis = complex
            .dims()
            .iter()
            .map(|(n, d)| (*n, (0..*d).map(|i| format!("{prefix}{n}_{i}")).collect()))
            .collect();
        HomSpace { complex, basis }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.complex.dim(n)
    }

    pub fn is_zero(&self) -> bool {
        self.complex.total_dim() == 0
    }
}

/// Composition table for a fixed `(a, b, c, p, q)`: basis pair `(i, j)` to the sparse
/// coordinates of `mul(f_i, g_j)` in `Hom(a, c)^{p+q}`.
pub type CompTable = BTreeMap<(usize, usize), Vec<(usize, Scalar)>>;

/// Key `(a, b, c, p, q)` of a composition block `Hom(a,b)^p ⊗ Hom(b,c)^q → Hom(a,c)^{p+q}`.
pub type CompKey = (usize, usize, usize, i64, i64);

/// A morphism of a DG category in the chosen basis of its Hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub src: ObjId,
    pub dst: ObjId,
    pub degree: i64,
    pub coords: Vector,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scaled(&self, c: &Scalar) -> Morphism {
        Morphism { coords: self.coords.iter().map(|x| c * x).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!((self.src, self.dst, self.degree), (other.src, other.dst, other.degree));
        Morphism {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }
}

/// A finite DG category over an exact field.
///
/// Composition is written in diagrammatic order: `mul(f, g)` for `f: A → B`, `g: B → C` is the
/// composite `A → C`, and the Leibniz rule reads
/// `d(mul(f,g)) = mul(df, g) + (-1)^{deg f} mul(f, dg)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCategory {
    field: Field,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), HomSpace>,
    comp: BTreeMap<CompKey, CompTable>,
    ids: Vec<Vector>,
    empty: HomSpace,
}

impl DgCategory {
    pub fn new(field: Field) -> DgCategory {
        DgCategory {
            field,
            objects: Vec::new(),
            homs: BTreeMap::new(),
            comp: BTreeMap::new(),
            ids: Vec::new(),
            empty: HomSpace::zero(field),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> Result<ObjId, DgError> {
        let label = label.into();
        if self.objects.contains(&label) {
            return Err(DgError::DuplicateObject(label));
        }
        self.objects.push(label);
        self.ids.push(Vec::new());
        Ok(ObjId(self.objects.len() - 1))
    }

    pub fn set_hom(&mut self, a: ObjId, b: ObjId, hom: HomSpace) -> Result<(), DgError> {
        self.check_obj(a)?;
        self.check_obj(b)?;
        if hom.complex.field() != self.field {
            return Err(DgError::FieldMismatch);
        }
        if hom.is_zero() {
            self.homs.remove(&(a.0, b.0));
        } else {
            self.homs.insert((a.0, b.0), hom);
        }
        Ok(())
    }

    /// Sets `mul(f_i, g_j)` for basis elements `f_i ∈ Hom(a,b)^p`, `g_j ∈ Hom(b,c)^q`.
    #[allow(clippy::too_many_arguments)]
    pub fn set_comp(
        &mut self,
        a: ObjId,
        b: ObjId,
        c: ObjId,
        p: i64,
        i: usize,
        q: i64,
        j: usize,
        value: Vector,
    ) -> Result<(), DgError> {
        if i >= self.hom(a, b).dim(p) || j >= self.hom(b, c).dim(q) {
            return Err(DgError::Malformed(format!("composition index out of range for ({a},{b},{c})")));
        }
        if value.len() != self.hom(a, c).dim(p + q) {
            return Err(DgError::Malformed(format!(
                "composition value has length {} but Hom({},{})^{} has dimension {}",
                value.len(),
                self.label(a),
                self.label(c),
                p + q,
                self.hom(a, c).dim(p + q)
            )));
        }
        for v in &value {
            self.field.check(v).map_err(|_| DgError::FieldMismatch)?;
        }
        let sparse: Vec<(usize, Scalar)> =
            value.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        let table = self.comp.entry((a.0, b.0, c.0, p, q)).or_default();
        if sparse.is_empty() {
            table.remove(&(i, j));
        } else {
            table.insert((i, j), sparse);
        }
        if table.is_empty() {
            self.comp.remove(&(a.0, b.0, c.0, p, q));
        }
        Ok(())
    }

    pub fn set_identity(&mut self, a: ObjId, coords: Vector) -> Result<(), DgError> {
        self.check_obj(a)?;
        if coords.len() != self.hom(a, a).dim(0) {
            return Err(DgError::Malformed(format!("identity of {} has wrong length", self.label(a))));
        }
        self.ids[a.0] = coords;
        Ok(())
    }

    fn check_obj(&self, a: ObjId) -> Result<(), DgError> {
        if a.0 < self.objects.len() {
            Ok(())
        } else {
            Err(DgError::UnknownObject(a.to_string()))
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn labels(&self) -> &[String] {
        &self.objects
    }

    pub fn label(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn obj(&self, label: &str) -> Result<ObjId, DgError> {
        self.objects
            .iter()
            .position(|l| l == label)
            .map(ObjId)
            .ok_or_else(|| DgError::UnknownObject(label.to_string()))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &HomSpace {
        self.homs.get(&(a.0, b.0)).unwrap_or(&self.empty)
    }

    pub fn homs(&self) -> impl Iterator<Item = ((ObjId, ObjId), &HomSpace)> {
        self.homs.iter().map(|(k, v)| ((ObjId(k.0), ObjId(k.1)), v))
    }

    pub fn comp_blocks(&self) -> impl Iterator<Item = (&CompKey, &CompTable)> {
        self.comp.iter()
    }

    pub fn identity_coords(&self, a: ObjId) -> &Vector {
        &self.ids[a.0]
    }

    pub fn identity(&self, a: ObjId) -> Morphism {
        Morphism { src: a, dst: a, degree: 0, coords: self.ids[a.0].clone() }
    }

    pub fn zero_morphism(&self, a: ObjId, b: ObjId, degree: i64) -> Morphism {
        Morphism { src: a, dst: b, degree, coords: zero_vector(self.field, self.hom(a, b).dim(degree)) }
    }

    pub fn basis_morphism(&self, a: ObjId, b: ObjId, degree: i64, i: usize) -> Morphism {
        let mut m = self.zero_morphism(a, b, degree);
        m.coords[i] = self.field.one();
        m
    }

    /// All basis morphisms `a → b`, by degree then index.
    pub fn basis_morphisms(&self, a: ObjId, b: ObjId) -> Vec<Morphism> {
        let hom = self.hom(a, b);
        hom.complex
            .dims()
            .iter()
            .flat_map(|(n, d)| (0..*d).map(move |i| (*n, i)))
            .map(|(n, i)| self.basis_morphism(a, b, n, i))
            .collect()
    }

    /// Looks up a basis element by name.
    pub fn named_morphism(&self, a: ObjId, b: ObjId, name: &str) -> Result<Morphism, DgError> {
        for (n, names) in &self.hom(a, b).basis {
            if let Some(i) = names.iter().position(|x| x == name) {
                return Ok(self.basis_morphism(a, b, *n, i));
            }
        }
        Err(DgError::UnknownMorphism(name.to_string()))
    }

    /// Raw composition of coordinate vectors.
    pub fn mul_coords(&self, a: ObjId, b: ObjId, c: ObjId, p: i64, u: &[Scalar], q: i64, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.hom(a, c).dim(p + q));
        let Some(table) = self.comp.get(&(a.0, b.0, c.0, p, q)) else {
            return out;
        };
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(val) = table.get(&(i, j)) {
                    let s = x * y;
                    for (k, w) in val {
                        out[*k] = &out[*k] + &(&s * w);
                    }
                }
            }
        }
        out
    }

    /// Diagrammatic composite of `f: a → b` and `g: b → c`.
    pub fn mul(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, DgError> {
        if f.dst != g.src {
            return Err(DgError::NotComposable);
        }
        Ok(Morphism {
            src: f.src,
            dst: g.dst,
            degree: f.degree + g.degree,
            coords: self.mul_coords(f.src, f.dst, g.dst, f.degree, &f.coords, g.degree, &g.coords),
        })
    }

    /// Functional composite `g ∘ f = (-1)^{|f||g|} mul(f, g)`.
    pub fn compose_fn(&self, g: &Morphism, f: &Morphism) -> Result<Morphism, DgError> {
        let m = self.mul(f, g)?;
        if (f.degree * g.degree).rem_euclid(2) == 1 {
            Ok(m.scaled(&-self.field.one()))
        } else {
            Ok(m)
        }
    }

    pub fn d(&self, f: &Morphism) -> Morphism {
        Morphism {
            src: f.src,
            dst: f.dst,
            degree: f.degree + 1,
            coords: self.hom(f.src, f.dst).complex.apply_diff(f.degree, &f.coords),
        }
    }

    /// Whether `f` is closed.
    pub fn is_closed(&self, f: &Morphism) -> bool {
        self.d(f).is_zero()
    }

    /// Full subcategory on `objs`, in the given order.
    pub fn full_subcategory(&self, objs: &[ObjId]) -> Result<DgCategory, DgError> {
        let mut out = DgCategory::new(self.field);
        for &o in objs {
            self.check_obj(o)?;
            out.add_object(self.label(o))?;
        }
        for (x, &a) in objs.iter().enumerate() {
            for (y, &b) in objs.iter().enumerate() {
                if let Some(h) = self.homs.get(&(a.0, b.0)) {
                    out.homs.insert((x, y), h.clone());
                }
            }
            out.ids[x] = self.ids[a.0].clone();
        }
        for (x, &a) in objs.iter().enumerate() {
            for (y, &b) in objs.iter().enumerate() {
                for (z, &c) in objs.iter().enumerate() {
                    for ((a0, b0, c0, p, q), t) in self.comp.range((a.0, b.0, c.0, i64::MIN, i64::MIN)..) {
                        if (*a0, *b0, *c0) != (a.0, b.0, c.0) {
                            break;
                        }
                        out.comp.insert((x, y, z, *p, *q), t.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Object labels rewritten through `f`; used for tensor-unit identifications.
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> DgCategory {
        let mut out = self.clone();
        out.objects = self.objects.iter().map(|l| f(l)).collect();
        out
    }

    /// Direct access for constructions that fill whole blocks at once.
    pub(crate) fn insert_comp_table(&mut self, key: CompKey, table: CompTable) {
        if !table.is_empty() {
            self.comp.insert(key, table);
        }
    }

    pub(crate) fn insert_hom_raw(&mut self, a: usize, b: usize, hom: HomSpace) {
        if !hom.is_zero() {
            self.homs.insert((a, b), hom);
        }
    }

    pub(crate) fn set_identity_raw(&mut self, a: usize, coords: Vector) {
        self.ids[a] = coords;
    }

    /// Accumulates `c * mul(u, v)` into `acc`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn mul_acc(&self, acc: &mut [Scalar], c: &Scalar, a: ObjId, b: ObjId, cc: ObjId, p: i64, u: &[Scalar], q: i64, v: &[Scalar]) {
        let prod = self.mul_coords(a, b, cc, p, u, q, v);
        axpy(acc, c, &prod);
    }
}

/// A category with one object `pt` and `End(pt) = k` in degree 0.
pub fn point_category(field: Field) -> DgCategory {
    let mut c = DgCategory::new(field);
    let pt = c.add_object("pt").expect("fresh");
    let hom = HomSpace::new(ChainComplex::graded(field, [(0, 1)].into()), [(0, vec!["1".to_string()])].into())
        .expect("consistent");
    c.set_hom(pt, pt, hom).expect("valid");
    c.set_comp(pt, pt, pt, 0, 0, 0, 0, vec![field.one()]).expect("valid");
    c.set_identity(pt, vec![field.one()]).expect("valid");
    c
}
