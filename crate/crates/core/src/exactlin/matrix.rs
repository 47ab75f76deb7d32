use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::scalar::integerize;
use super::{Field, LinError, Scalar};

/// A dense coefficient vector.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, len: usize) -> Vector {
    vec![field.zero(); len]
}

pub fn unit_vector(field: Field, len: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, len);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * x`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(acc.len(), x.len());
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Sparse matrix over a fixed field, stored as ordered rows of nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<BTreeMap<usize, Scalar>>,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i].insert(i, field.one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Matrix, LinError> {
        let mut m = Matrix::zero(field, rows, cols);
        for (r, c, v) in entries {
            field.check(&v)?;
            if r >= rows || c >= cols {
                return Err(LinError::Shape(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            m.add_at(r, c, &v);
        }
        Ok(m)
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Result<Matrix, LinError> {
        let mut m = Matrix::zero(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinError::Shape(format!("row {r} has length {} != {cols}", row.len())));
            }
            for (c, v) in row.iter().enumerate() {
                field.check(v)?;
                if !v.is_zero() {
                    m.data[r].insert(c, v.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Result<Matrix, LinError> {
        Ok(Matrix::from_rows(field, rows, cols)?.transpose())
    }

    /// Convenience for tests and fixtures: integer entries, row-major.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_rows(field, cols, &rows).expect("ragged rows")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, &cur + v);
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[r]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vector, LinError> {
        if x.len() != self.cols {
            return Err(LinError::Shape(format!("vector of length {} against {} columns", x.len(), self.cols)));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, v) in row {
                    if !x[*c].is_zero() {
                        acc = &acc + &(v * &x[*c]);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(LinError::FieldMismatch);
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let e = acc.entry(*c).or_insert_with(|| self.field.zero());
                    *e = &*e + &(a * b);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row.values_mut() {
                *v = &*v * c;
            }
            row.retain(|_, v| !v.is_zero());
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinError::Shape("matrix sum shape mismatch".into()));
        }
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_at(r, c, v);
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.rows != other.rows {
            return Err(LinError::Shape("hstack row mismatch".into()));
        }
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for (r, c, v) in self.entries() {
            out.data[r].insert(c, v.clone());
        }
        for (r, c, v) in other.entries() {
            out.data[r].insert(self.cols + c, v.clone());
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.cols != other.cols {
            return Err(LinError::Shape("vstack column mismatch".into()));
        }
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend(other.data.iter().cloned());
        Ok(out)
    }

    /// Reduced row echelon form. Pivots are chosen by lowest column, then lowest row.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = self.data.clone();
        let mut pivots = Vec::new();
        let mut done = 0usize;
        let mut col_candidates: BTreeMap<usize, ()> = BTreeMap::new();
        for row in &rows {
            for c in row.keys() {
                col_candidates.insert(*c, ());
            }
        }
        for &c in col_candidates.keys() {
            if done == rows.len() {
                break;
            }
            let Some(p) = (done..rows.len()).find(|&r| rows[r].contains_key(&c)) else {
                continue;
            };
            rows.swap(done, p);
            let inv = rows[done][&c].inv().expect("pivot is nonzero");
            for v in rows[done].values_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = rows[done].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == done {
                    continue;
                }
                if let Some(f) = row.get(&c).cloned() {
                    eliminate(row, &pivot_row, &f);
                }
            }
            pivots.push(c);
            done += 1;
        }
        rows.truncate(done);
        Rref { rows, pivots }
    }

    /// Rank over the matrix field. Over Q this runs fraction-free (Bareiss) elimination
    /// on integerized rows.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_rank(self),
            Field::Prime(_) => self.rref().pivots.len(),
        }
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the kernel, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vector> {
        let rref = self.rref();
        let pivot_set: BTreeMap<usize, usize> = rref.pivots.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains_key(c))
            .map(|free| {
                let mut v = zero_vector(self.field, self.cols);
                v[free] = self.field.one();
                for (i, &pc) in rref.pivots.iter().enumerate() {
                    if let Some(x) = rref.rows[i].get(&free) {
                        v[pc] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`. Free variables are set to zero, so the solution is supported on
    /// pivot columns only; `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>, LinError> {
        if b.len() != self.rows {
            return Err(LinError::Shape(format!("rhs of length {} for {} rows", b.len(), self.rows)));
        }
        for v in b {
            self.field.check(v)?;
        }
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()])?;
        let aug = self.hstack(&rhs)?;
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(self.field, self.cols);
        for (i, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.rows[i].get(&self.cols).cloned().unwrap_or_else(|| self.field.zero());
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_many(&self, b: &Matrix) -> Result<Option<Matrix>, LinError> {
        let mut cols = Vec::with_capacity(b.cols);
        for c in 0..b.cols {
            match self.solve(&b.column(c))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.field, self.cols, &cols)?))
    }
}

fn eliminate(row: &mut BTreeMap<usize, Scalar>, pivot_row: &BTreeMap<usize, Scalar>, f: &Scalar) {
    for (c, v) in pivot_row {
        let e = row.entry(*c).or_insert_with(|| v.field().zero());
        *e = &*e - &(f * v);
        if e.is_zero() {
            row.remove(c);
        }
    }
}

fn bareiss_rank(m: &Matrix) -> usize {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = m
        .data
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let rat: Vec<_> = r.iter().map(|(c, v)| (*c, v.as_rational().unwrap().clone())).collect();
            integerize(&rat).into_iter().collect()
        })
        .collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut c = 0;
    while rank < rows.len() && c < m.cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].contains_key(&c)) else {
            c += 1;
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let pv = pivot_row[&c].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let a = row.get(&c).cloned().unwrap_or_default();
            // row <- (pv * row - a * pivot_row) / prev, exact by Sylvester's identity
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, v) in row.iter() {
                next.insert(*k, &pv * v);
            }
            if !a.is_zero() {
                for (k, v) in &pivot_row {
                    let e = next.entry(*k).or_default();
                    *e -= &a * v;
                }
            }
            next.retain(|_, v| !v.is_zero());
            for v in next.values_mut() {
                *v = &*v / &prev;
            }
            *row = next;
        }
        prev = pv;
        rank += 1;
        c += 1;
    }
    rank
}

/// Integer matrix used by the lattice computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::from(1);
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut prev = BigInt::from(1);
        let mut sign = 1i32;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::from(1);
        }
        prev * BigInt::from(sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zero(q(), 3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
        let f = Field::Prime(101);
        assert_eq!(Matrix::from_i64(f, &[&[1, 2], &[2, 4]]).rank(), 1);
        // singular only mod 3
        let m = Matrix::from_i64(Field::Prime(3), &[&[1, 1], &[1, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::from_i64(q(), &[&[1, 1], &[1, 4]]).rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(q(), 3);
        let b: Vector = [4, -1, 7].iter().map(|&v| q().from_i64(v)).collect();
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let z = Matrix::zero(q(), 2, 2);
        assert_eq!(z.solve(&[q().one(), q().zero()]).unwrap(), None);

        let a = Matrix::from_i64(q(), &[&[1, 1], &[0, 1]]);
        let x = a.solve(&[q().from_i64(3), q().from_i64(1)]).unwrap().unwrap();
        assert_eq!(x, vec![q().from_i64(2), q().from_i64(1)]);
    }

    #[test]
    fn solve_shape_error() {
        let a = Matrix::identity(q(), 2);
        assert!(matches!(a.solve(&[q().one()]), Err(LinError::Shape(_))));
    }

    #[test]
    fn from_triplets_rejects_foreign_scalars() {
        let r = Matrix::from_triplets(q(), 1, 1, [(0, 0, Field::Prime(5).one())]);
        assert!(matches!(r, Err(LinError::FieldMismatch)));
        let r = Matrix::from_triplets(q(), 1, 1, [(1, 0, q().one())]);
        assert!(matches!(r, Err(LinError::Shape(_))));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = Matrix::from_i64(q(), &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vector(&m.mul_vec(&ns[0]).unwrap()));
    }

    #[test]
    fn int_det() {
        assert_eq!(IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).det(), BigInt::from(1));
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).det(), BigInt::from(-3));
    }
}
