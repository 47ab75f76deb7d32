use std::collections::BTreeMap;

use super::matrix::{zero_vector, Vector};
use super::{Field, LinError, Matrix, Scalar};

/// A bounded cochain complex of finite-dimensional vector spaces. The differential
/// in degree `n` is a `dim(n+1) x dim(n)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    /// Checks that every differential has the shape dictated by `dims`. Zero-dimensional
    /// degrees are dropped; missing differentials are zero. `d^2 = 0` is not enforced here;
    /// see [`ChainComplex::d_squared_violations`].
    pub fn new(
        field: Field,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<ChainComplex, LinError> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        let mut kept = BTreeMap::new();
        for (n, m) in diffs {
            if m.field() != field {
                return Err(LinError::FieldMismatch);
            }
            let src = dims.get(&n).copied().unwrap_or(0);
            let dst = dims.get(&(n + 1)).copied().unwrap_or(0);
            if m.rows() != dst || m.cols() != src {
                return Err(LinError::Shape(format!(
                    "differential in degree {n} is {}x{}, expected {dst}x{src}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_zero() {
                kept.insert(n, m);
            }
        }
        Ok(ChainComplex { field, dims, diffs: kept })
    }

    pub fn zero(field: Field) -> ChainComplex {
        ChainComplex { field, dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// A complex with zero differential.
    pub fn graded(field: Field, dims: BTreeMap<i64, usize>) -> ChainComplex {
        ChainComplex::new(field, dims, BTreeMap::new()).expect("no differentials")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn diff(&self, n: i64) -> Matrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.field, self.dim(n + 1), self.dim(n)))
    }

    pub fn apply_diff(&self, n: i64, v: &[Scalar]) -> Vector {
        match self.diffs.get(&n) {
            Some(m) => m.mul_vec(v).expect("shape checked on construction"),
            None => zero_vector(self.field, self.dim(n + 1)),
        }
    }

    /// Degrees `n` where `diff(n+1) * diff(n) != 0`.
    pub fn d_squared_violations(&self) -> Vec<i64> {
        self.diffs
            .iter()
            .filter_map(|(n, d)| {
                let next = self.diffs.get(&(n + 1))?;
                let sq = next.mul(d).expect("shapes chain");
                (!sq.is_zero()).then_some(*n)
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.d_squared_violations().is_empty()
    }

    pub fn cohomology_dim(&self, n: i64) -> usize {
        let dn = self.dim(n);
        if dn == 0 {
            return 0;
        }
        let kernel = dn - self.diffs.get(&n).map_or(0, Matrix::rank);
        let image = self.diffs.get(&(n - 1)).map_or(0, Matrix::rank);
        kernel - image
    }

    /// Graded cohomology dimensions, omitting zero entries.
    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        self.support()
            .map(|n| (n, self.cohomology_dim(n)))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(n, d)| if n.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }).sum()
    }

    pub fn cohomology_basis(&self, n: i64) -> CohomologyBasis {
        CohomologyBasis::compute(self, n)
    }

    /// The complex `V[k]`: degree `n` holds `V^{n+k}` and the differential is multiplied by `(-1)^k`.
    pub fn shifted(&self, k: i64) -> ChainComplex {
        let dims = self.dims.iter().map(|(n, d)| (n - k, *d)).collect();
        let sign = self.field.one().signed(k);
        let diffs = self.diffs.iter().map(|(n, m)| (n - k, m.scaled(&sign))).collect();
        ChainComplex { field: self.field, dims, diffs }
    }
}

/// Chosen cycle representatives for a basis of `H^n`, with coordinate projection.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    field: Field,
    degree: i64,
    ambient: usize,
    reps: Vec<Vector>,
    boundaries: usize,
    /// Columns `[boundary basis | reps]`; cycles are expressed in these columns.
    frame: Matrix,
    cycle_test: Matrix,
}

impl CohomologyBasis {
    fn compute(c: &ChainComplex, n: i64) -> CohomologyBasis {
        let field = c.field;
        let ambient = c.dim(n);
        let dn = c.diff(n);
        let cycles = dn.nullspace();
        // boundary basis: independent columns of d_{n-1}
        let prev = c.diff(n - 1);
        let rref = prev.rref();
        let boundary_cols: Vec<Vector> = rref.pivots.iter().map(|&col| prev.column(col)).collect();
        // greedy extension of the boundary basis by cycles: pivot columns of [B | Z]
        let nb = boundary_cols.len();
        let mut all = boundary_cols.clone();
        all.extend(cycles.iter().cloned());
        let pivots = Matrix::from_columns(field, ambient, &all).expect("consistent lengths").rref().pivots;
        let reps: Vec<Vector> = pivots.iter().filter(|&&p| p >= nb).map(|&p| cycles[p - nb].clone()).collect();
        let mut frame_cols = boundary_cols.clone();
        frame_cols.extend(reps.iter().cloned());
        let frame = Matrix::from_columns(field, ambient, &frame_cols).expect("consistent lengths");
        CohomologyBasis { field, degree: n, ambient, reps, boundaries: boundary_cols.len(), frame, cycle_test: dn }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.reps
    }

    /// Lifts cohomology coordinates to a cycle.
    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.reps.len());
        let mut v = zero_vector(self.field, self.ambient);
        for (c, r) in coords.iter().zip(&self.reps) {
            super::matrix::axpy(&mut v, c, r);
        }
        v
    }

    /// Coordinates of the class of `cycle`; errors if `cycle` is not closed.
    pub fn project(&self, cycle: &[Scalar]) -> Result<Vector, LinError> {
        if cycle.len() != self.ambient {
            return Err(LinError::Shape(format!("cycle of length {} in {}-dim space", cycle.len(), self.ambient)));
        }
        let dz = self.cycle_test.mul_vec(cycle)?;
        if dz.iter().any(|x| !x.is_zero()) {
            return Err(LinError::NotACycle);
        }
        if self.ambient == 0 {
            return Ok(Vec::new());
        }
        let x = self.frame.solve(cycle)?.ok_or(LinError::NotACycle)?;
        Ok(x[self.boundaries..].to_vec())
    }

    /// Whether `cycle` is a boundary.
    pub fn is_boundary(&self, cycle: &[Scalar]) -> Result<bool, LinError> {
        Ok(self.project(cycle)?.iter().all(Scalar::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn identity_complex_is_acyclic() {
        let c = ChainComplex::new(q(), dims(&[(0, 1), (1, 1)]), [(0, Matrix::identity(q(), 1))].into()).unwrap();
        assert_eq!(c.cohomology_dim(0), 0);
        assert_eq!(c.cohomology_dim(1), 0);
        assert!(c.cohomology_basis(0).representatives().is_empty());
        assert!(c.cohomology_basis(1).representatives().is_empty());
    }

    #[test]
    fn zero_differential() {
        let c = ChainComplex::graded(q(), dims(&[(0, 3)]));
        assert_eq!(c.cohomology_dim(0), 3);
        let c2 = ChainComplex::graded(q(), dims(&[(0, 2)]));
        let b = c2.cohomology_basis(0);
        assert_eq!(b.representatives(), &[vec![q().one(), q().zero()], vec![q().zero(), q().one()]]);
    }

    #[test]
    fn three_term_example() {
        // k --0--> k^2 --[1,0]--> k in degrees -1, 0, 1
        let c = ChainComplex::new(
            q(),
            dims(&[(-1, 1), (0, 2), (1, 1)]),
            [(-1, Matrix::zero(q(), 2, 1)), (0, Matrix::from_i64(q(), &[&[1, 0]]))].into(),
        )
        .unwrap();
        assert_eq!((c.cohomology_dim(-1), c.cohomology_dim(0), c.cohomology_dim(1)), (1, 1, 0));
        let b = c.cohomology_basis(0);
        assert_eq!(b.dim(), 1);
        let rep = &b.representatives()[0];
        assert!(rep[0].is_zero() && !rep[1].is_zero());
        assert_eq!(b.project(rep).unwrap(), vec![q().one()]);
        assert!(matches!(b.project(&[q().one(), q().zero()]), Err(LinError::NotACycle)));
    }

    #[test]
    fn shape_errors() {
        let r = ChainComplex::new(q(), dims(&[(0, 1), (1, 2)]), [(0, Matrix::identity(q(), 1))].into());
        assert!(matches!(r, Err(LinError::Shape(_))));
    }

    #[test]
    fn d_squared_detected() {
        let c = ChainComplex::new(
            q(),
            dims(&[(0, 1), (1, 1), (2, 1)]),
            [(0, Matrix::identity(q(), 1)), (1, Matrix::identity(q(), 1))].into(),
        )
        .unwrap();
        assert_eq!(c.d_squared_violations(), vec![0]);
    }

    #[test]
    fn projection_modulo_boundaries() {
        // k --[1,1]^T--> k^2 --0--> 0 : H^1 = k^2 / <(1,1)>
        let c = ChainComplex::new(
            q(),
            dims(&[(0, 1), (1, 2)]),
            [(0, Matrix::from_i64(q(), &[&[1], &[1]]))].into(),
        )
        .unwrap();
        let b = c.cohomology_basis(1);
        assert_eq!(b.dim(), 1);
        assert!(b.is_boundary(&[q().from_i64(3), q().from_i64(3)]).unwrap());
        let x = b.project(&[q().one(), q().zero()]).unwrap();
        let y = b.project(&[q().zero(), q().one()]).unwrap();
        assert_eq!(x, y.iter().map(|v| -v).collect::<Vec<_>>());
    }
}
