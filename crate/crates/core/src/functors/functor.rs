use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::dgcore::{DgCategory, DgError, Morphism, ObjId};
use crate::exactlin::Matrix;

/// A DG functor given on objects and, per `(a, b, n)`, by the matrix of
/// `Hom(a, b)^n → Hom(F a, F b)^n`. Missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgFunctor {
    src: Arc<DgCategory>,
    dst: Arc<DgCategory>,
    objects: Vec<ObjId>,
    maps: BTreeMap<(usize, usize, i64), Matrix>,
}

impl DgFunctor {
    pub fn new(
        src: Arc<DgCategory>,
        dst: Arc<DgCategory>,
        objects: Vec<ObjId>,
        maps: BTreeMap<(usize, usize, i64), Matrix>,
    ) -> Result<DgFunctor, DgError> {
        if src.field() != dst.field() {
            return Err(DgError::FieldMismatch);
        }
        if objects.len() != src.num_objects() || objects.iter().any(|o| o.0 >= dst.num_objects()) {
            return Err(DgError::Malformed("object map does not match the categories".into()));
        }
        for (&(a, b, n), m) in &maps {
            let rows = dst.hom(objects[a], objects[b]).dim(n);
            let cols = src.hom(ObjId(a), ObjId(b)).dim(n);
            if m.rows() != rows || m.cols() != cols {
                return Err(DgError::Malformed(format!("functor block ({a},{b},{n}) has the wrong shape")));
            }
        }
        let maps = maps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(DgFunctor { src, dst, objects, maps })
    }

    pub fn identity(c: Arc<DgCategory>) -> DgFunctor {
        let mut maps = BTreeMap::new();
        for ((a, b), h) in c.homs() {
            for (&n, &d) in h.complex.dims() {
                maps.insert((a.0, b.0, n), Matrix::identity(c.field(), d));
            }
        }
        let objects = c.objects().collect();
        DgFunctor { src: c.clone(), dst: c, objects, maps }
    }

    pub fn src(&self) -> &Arc<DgCategory> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<DgCategory> {
        &self.dst
    }

    pub fn object(&self, a: ObjId) -> ObjId {
        self.objects[a.0]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize, i64), Matrix> {
        &self.maps
    }

    pub fn block(&self, a: ObjId, b: ObjId, n: i64) -> Matrix {
        self.maps.get(&(a.0, b.0, n)).cloned().unwrap_or_else(|| {
            Matrix::zero(
                self.src.field(),
                self.dst.hom(self.object(a), self.object(b)).dim(n),
                self.src.hom(a, b).dim(n),
            )
        })
    }

    pub fn apply(&self, f: &Morphism) -> Morphism {
        let (a, b) = (self.object(f.src), self.object(f.dst));
        let coords = match self.maps.get(&(f.src.0, f.dst.0, f.degree)) {
            Some(m) => m.mul_vec(&f.coords).expect("shape checked"),
            None => vec![self.src.field().zero(); self.dst.hom(a, b).dim(f.degree)],
        };
        Morphism { src: a, dst: b, degree: f.degree, coords }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &DgFunctor) -> Result<DgFunctor, DgError> {
        if *self.dst != *g.src {
            return Err(DgError::Malformed("functors are not composable".into()));
        }
        let mut maps = BTreeMap::new();
        for (&(a, b, n), m) in &self.maps {
            let gm = g.block(self.objects[a], self.objects[b], n);
            maps.insert((a, b, n), gm.mul(m)?);
        }
        let objects = self.objects.iter().map(|o| g.object(*o)).collect();
        DgFunctor::new(self.src.clone(), g.dst.clone(), objects, maps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Differential { src: String, dst: String, degree: i64, basis: usize },
    Composition { objects: [String; 3], degrees: (i64, i64), basis: (usize, usize) },
    Identity { object: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Differential { src, dst, degree, basis } => {
                write!(f, "F(df) != dF(f) for Hom({src},{dst})^{degree}[{basis}]")
            }
            FunctorViolation::Composition { objects: [a, b, c], degrees: (p, q), basis: (i, j) } => {
                write!(f, "F(mul(f,g)) != mul(Ff,Fg) for Hom({a},{b})^{p}[{i}] x Hom({b},{c})^{q}[{j}]")
            }
            FunctorViolation::Identity { object } => write!(f, "F(id_{object}) is not an identity"),
        }
    }
}

/// Checks chain-map, composition and identity preservation on every basis element.
pub fn validate_functor(f: &DgFunctor) -> Vec<FunctorViolation> {
    let c = f.src();
    let d = f.dst();
    let mut out = Vec::new();
    for a in c.objects() {
        if f.apply(&c.identity(a)) != d.identity(f.object(a)) {
            out.push(FunctorViolation::Identity { object: c.label(a).into() });
        }
    }
    for a in c.objects() {
        for b in c.objects() {
            for m in c.basis_morphisms(a, b) {
                if f.apply(&c.d(&m)) != d.d(&f.apply(&m)) {
                    let idx = m.coords.iter().position(|x| !x.is_zero()).unwrap_or(0);
                    out.push(FunctorViolation::Differential {
                        src: c.label(a).into(),
                        dst: c.label(b).into(),
                        degree: m.degree,
                        basis: idx,
                    });
                }
            }
        }
    }
    for ((a, b), h1) in c.homs() {
        for cc in c.objects() {
            let h2 = c.hom(b, cc);
            for (&p, &dp) in h1.complex.dims() {
                for (&q, &dq) in h2.complex.dims() {
                    for i in 0..dp {
                        let x = c.basis_morphism(a, b, p, i);
                        for j in 0..dq {
                            let y = c.basis_morphism(b, cc, q, j);
                            let lhs = f.apply(&c.mul(&x, &y).expect("composable"));
                            let rhs = d.mul(&f.apply(&x), &f.apply(&y)).expect("composable");
                            if lhs != rhs {
                                out.push(FunctorViolation::Composition {
                                    objects: [c.label(a).into(), c.label(b).into(), c.label(cc).into()],
                                    degrees: (p, q),
                                    basis: (i, j),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
