use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * m * V = D` with unimodular `U`, `V` and a divisibility chain on the
/// diagonal of `D`. Diagonal entries are nonnegative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal matrix of the same shape as the input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zero(self.u.rows, self.v.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.entries[i][i] = x.clone();
        }
        d
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        // pivot: smallest nonzero |a_ij| in the trailing block, lowest column then row on ties
        loop {
            let mut best: Option<(usize, usize)> = None;
            for j in t..cols {
                for i in t..rows {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v, rows, cols);
            };
            swap_rows(&mut a, &mut u, t, pi);
            swap_cols(&mut a, &mut v, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                add_row(&mut a, &mut u, i, t, &(-&q));
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                add_col(&mut a, &mut v, j, t, &(-&q));
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold any entry not divisible by the pivot into row t
            let mut fixed = false;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        add_row(&mut a, &mut u, t, i, &BigInt::one());
                        fixed = true;
                        break 'outer;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -&a[t][j];
            }
            for j in 0..rows {
                u.entries[t][j] = -&u.entries[t][j];
            }
        }
    }
    finish(a, u, v, rows, cols)
}

fn finish(a: Vec<Vec<BigInt>>, u: IntMatrix, v: IntMatrix, rows: usize, cols: usize) -> SmithForm {
    let n = rows.min(cols);
    let mut diagonal: Vec<BigInt> = (0..n).map(|i| a[i][i].clone()).collect();
    let mut u = u;
    for (i, d) in diagonal.iter_mut().enumerate() {
        if d.is_negative() {
            *d = -&*d;
            for j in 0..rows {
                u.entries[i][j] = -&u.entries[i][j];
            }
        }
    }
    SmithForm { diagonal, u, v }
}

fn swap_rows(a: &mut [Vec<BigInt>], u: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        u.entries.swap(i, j);
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], v: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.entries.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row_dst += c * row_src, mirrored on the left transform.
fn add_row(a: &mut [Vec<BigInt>], u: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    let s = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(&s) {
        *x += c * y;
    }
    let s = u.entries[src].clone();
    for (x, y) in u.entries[dst].iter_mut().zip(&s) {
        *x += c * y;
    }
}

/// col_dst += c * col_src, mirrored on the right transform.
fn add_col(a: &mut [Vec<BigInt>], v: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    for row in a.iter_mut() {
        let y = row[src].clone();
        row[dst] += c * y;
    }
    for row in v.entries.iter_mut() {
        let y = row[src].clone();
        row[dst] += c * y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.diagonal_matrix());
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        s
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).diagonal, big(&[1, 6]));
        assert_eq!(check(&IntMatrix::identity(3)).diagonal, big(&[1, 1, 1]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[2, 4], &[4, 8]])).diagonal, big(&[2, 0]));
    }

    #[test]
    fn rectangular_and_empty() {
        let s = check(&IntMatrix::from_i64(&[&[1, -2, 2], &[4, 0, 6]]));
        assert_eq!(s.diagonal, big(&[1, 2]));
        let s = check(&IntMatrix::zero(0, 3));
        assert!(s.diagonal.is_empty());
        let s = check(&IntMatrix::from_i64(&[&[0, 0], &[0, 0], &[0, 5]]));
        assert_eq!(s.diagonal, big(&[5, 0]));
    }
}
