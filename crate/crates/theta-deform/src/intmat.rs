//! Exact integer matrix arithmetic.
//!
//! Small dense matrices over `i64` with exact determinants, inverses of
//! unimodular matrices, and Smith normal form with transform tracking.
//! Everything here is exact: intermediate products are widened to `i128`
//! and overflow is a panic, never silent wraparound.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMat{:?}", self.to_rows())
    }
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
                context: "IntMat::new data length",
            });
        }
        Ok(IntMat { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows in matrix literal"));
        }
        Ok(IntMat {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
                context: "matrix product inner dimension",
            });
        }
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += i128::from(self[(i, k)]) * i128::from(other[(k, j)]);
                }
                out[(i, j)] = narrow(acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
                context: "matrix-vector product",
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                narrow(
                    (0..self.cols)
                        .map(|k| i128::from(self[(i, k)]) * i128::from(v[k]))
                        .sum(),
                )
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<IntMat> {
        if !self.is_square() {
            return Err(Error::invalid("pow of non-square matrix"));
        }
        let mut out = IntMat::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMat) -> Result<IntMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
                context: "matrix sum shape",
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).expect("integer overflow in matrix sum"))
            .collect();
        Ok(IntMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &IntMat) -> Result<IntMat> {
        self.add(&other.neg())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMat::identity(self.rows)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && self.transpose() == self.neg()
    }

    /// Exact determinant by cofactor expansion; intended for small matrices.
    pub fn det(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::invalid("determinant of non-square matrix"));
        }
        Ok(narrow(det_cofactor(
            &self.data.iter().map(|&x| i128::from(x)).collect::<Vec<_>>(),
            self.rows,
        )))
    }

    /// Exact inverse; defined only when `det = ±1` so the inverse is integral.
    pub fn inverse(&self) -> Result<IntMat> {
        let d = self.det()?;
        if d != 1 && d != -1 {
            return Err(Error::Singular(format!(
                "determinant {d} is not a unit; no integer inverse"
            )));
        }
        let n = self.rows;
        let wide: Vec<i128> = self.data.iter().map(|&x| i128::from(x)).collect();
        let mut out = IntMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                // adjugate entry (j, i) = cofactor of (i, j)
                let minor = minor_of(&wide, n, i, j);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                out[(j, i)] = narrow(sign * det_cofactor(&minor, n - 1) * i128::from(d));
            }
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow narrowing matrix entry")
}

fn det_cofactor(data: &[i128], n: usize) -> i128 {
    match n {
        0 => 1,
        1 => data[0],
        2 => data[0] * data[3] - data[1] * data[2],
        _ => {
            let mut acc: i128 = 0;
            for j in 0..n {
                if data[j] == 0 {
                    continue;
                }
                let minor = minor_of(data, n, 0, j);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * data[j] * det_cofactor(&minor, n - 1);
            }
            acc
        }
    }
}

fn minor_of(data: &[i128], n: usize, skip_i: usize, skip_j: usize) -> Vec<i128> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        if i == skip_i {
            continue;
        }
        for j in 0..n {
            if j == skip_j {
                continue;
            }
            out.push(data[i * n + j]);
        }
    }
    out
}

/// Smith normal form `u * m * v = s` with unimodular `u`, `v` and diagonal
/// `s` whose diagonal entries are nonnegative and satisfy `s[i] | s[i+1]`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)])
            .collect()
    }
}

/// Smith normal form with transform tracking, for small matrices.
pub fn smith_with_transforms(m: &IntMat) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pivot_min_abs(&s, t) else {
            break;
        };
        swap_rows(&mut s, &mut u, t, pi);
        swap_cols(&mut s, &mut v, t, pj);

        // Euclidean sweeps until row t and column t are clear below/right of t.
        loop {
            let mut dirty = false;
            for i in (t + 1)..rows {
                if s[(i, t)] != 0 {
                    let q = s[(i, t)].div_euclid(s[(t, t)]);
                    row_op(&mut s, &mut u, i, t, q);
                    if s[(i, t)] != 0 {
                        // remainder became the smaller pivot candidate
                        swap_rows(&mut s, &mut u, t, i);
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..cols {
                if s[(t, j)] != 0 {
                    let q = s[(t, j)].div_euclid(s[(t, t)]);
                    col_op(&mut s, &mut v, j, t, q);
                    if s[(t, j)] != 0 {
                        swap_cols(&mut s, &mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // Divisibility fix-up: the pivot must divide every remaining entry.
        let mut fixed = true;
        'scan: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if s[(i, j)] % s[(t, t)] != 0 {
                    add_row(&mut s, &mut u, t, i);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            if s[(t, t)] < 0 {
                negate_row(&mut s, &mut u, t);
            }
            t += 1;
        }
    }
    SmithDecomposition { s, u, v }
}

fn pivot_min_abs(s: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s[(i, j)] != 0 && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_rows(s: &mut IntMat, u: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..s.cols() {
        let (x, y) = (s[(a, j)], s[(b, j)]);
        s[(a, j)] = y;
        s[(b, j)] = x;
    }
    for j in 0..u.cols() {
        let (x, y) = (u[(a, j)], u[(b, j)]);
        u[(a, j)] = y;
        u[(b, j)] = x;
    }
}

fn swap_cols(s: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..s.rows() {
        let (x, y) = (s[(i, a)], s[(i, b)]);
        s[(i, a)] = y;
        s[(i, b)] = x;
    }
    for i in 0..v.rows() {
        let (x, y) = (v[(i, a)], v[(i, b)]);
        v[(i, a)] = y;
        v[(i, b)] = x;
    }
}

/// row[i] -= q * row[t], both in `s` and in the `u` transform.
fn row_op(s: &mut IntMat, u: &mut IntMat, i: usize, t: usize, q: i64) {
    for j in 0..s.cols() {
        s[(i, j)] = narrow(i128::from(s[(i, j)]) - i128::from(q) * i128::from(s[(t, j)]));
    }
    for j in 0..u.cols() {
        u[(i, j)] = narrow(i128::from(u[(i, j)]) - i128::from(q) * i128::from(u[(t, j)]));
    }
}

fn col_op(s: &mut IntMat, v: &mut IntMat, j: usize, t: usize, q: i64) {
    for i in 0..s.rows() {
        s[(i, j)] = narrow(i128::from(s[(i, j)]) - i128::from(q) * i128::from(s[(i, t)]));
    }
    for i in 0..v.rows() {
        v[(i, j)] = narrow(i128::from(v[(i, j)]) - i128::from(q) * i128::from(v[(i, t)]));
    }
}

fn add_row(s: &mut IntMat, u: &mut IntMat, t: usize, i: usize) {
    for j in 0..s.cols() {
        s[(t, j)] = narrow(i128::from(s[(t, j)]) + i128::from(s[(i, j)]));
    }
    for j in 0..u.cols() {
        u[(t, j)] = narrow(i128::from(u[(t, j)]) + i128::from(u[(i, j)]));
    }
}

fn negate_row(s: &mut IntMat, u: &mut IntMat, t: usize) {
    for j in 0..s.cols() {
        s[(t, j)] = -s[(t, j)];
    }
    for j in 0..u.cols() {
        u[(t, j)] = -u[(t, j)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows).unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(a.det().unwrap(), 1);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());

        let b = m(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(b.det().unwrap(), 1);
        assert!(b.mul(&b.inverse().unwrap()).unwrap().is_identity());

        let c = m(&[vec![2, 0], vec![0, 2]]);
        assert!(c.inverse().is_err());
    }

    #[test]
    fn det_3x3() {
        let a = m(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(a.det().unwrap(), -3);
    }

    #[test]
    fn smith_small() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let d = smith_with_transforms(&a);
        assert_eq!(d.diagonal(), vec![2, 4]);
        // u * a * v = s
        let lhs = d.u.mul(&a).unwrap().mul(&d.v).unwrap();
        assert_eq!(lhs, d.s);
        assert_eq!(d.u.det().unwrap().abs(), 1);
        assert_eq!(d.v.det().unwrap().abs(), 1);
    }

    #[test]
    fn smith_divisibility_chain() {
        let a = m(&[vec![6, 10], vec![15, 4]]);
        let d = smith_with_transforms(&a);
        let diag = d.diagonal();
        assert_eq!(diag.len(), 2);
        assert!(diag[0] > 0 && diag[1] % diag[0] == 0);
        assert_eq!(diag[0] * diag[1], (6 * 4 - 10 * 15i64).abs());
        let lhs = d.u.mul(&a).unwrap().mul(&d.v).unwrap();
        assert_eq!(lhs, d.s);
    }

    #[test]
    fn smith_rectangular_and_zero() {
        let a = m(&[vec![0, 0, 0], vec![0, 3, 0]]);
        let d = smith_with_transforms(&a);
        assert_eq!(d.diagonal(), vec![3, 0]);
        let z = IntMat::zero(2, 2);
        assert_eq!(smith_with_transforms(&z).diagonal(), vec![0, 0]);
    }
}
