//! Simplicial homology ranks (Betti numbers) over the rationals.
//!
//! Two interchangeable rank backends, used to cross-check each other:
//!
//! * `Exact` — dense Smith normal form over arbitrary-precision
//!   integers. No overflow, no false answers, slower on big complexes.
//! * `Modular` — sparse column reduction over the prime field
//!   `GF(2^31 - 1)`. The rank mod p can only *drop* below the rational
//!   rank (when p divides an invariant factor), never exceed it, and
//!   boundary matrices of the complexes handled here have tiny invariant
//!   factors, so agreement with the exact backend on sampled complexes
//!   justifies the fast path.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::error::{Error, Result};

use super::complex::SimplicialComplex;

/// Prime modulus of the fast rank backend (`2^31 - 1`).
pub const MODULAR_PRIME: u64 = 2_147_483_647;

/// Which rank backend to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    Exact,
    Modular,
}

/// Sparse integer matrix stored by columns; entries are `(row, value)`
/// with rows strictly increasing within a column.
#[derive(Clone, Debug)]
pub struct SparseBoundary {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

/// The boundary operator from `d`-chains to `(d-1)`-chains: column `j`
/// holds the faces of simplex `j` with alternating signs.  For `d = 0`
/// this is the zero map to the zero module.
pub fn boundary_matrix(complex: &SimplicialComplex, d: usize) -> SparseBoundary {
    let cols = complex.simplices(d).len();
    if d == 0 {
        return SparseBoundary {
            rows: 0,
            cols,
            columns: vec![Vec::new(); cols],
        };
    }
    let rows = complex.simplices(d - 1).len();
    let mut columns = Vec::with_capacity(cols);
    for s in complex.simplices(d) {
        let mut col = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let r = complex
                .index_of(&face)
                .expect("complex is closed under faces");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            col.push((r, sign));
        }
        col.sort_unstable_by_key(|&(r, _)| r);
        columns.push(col);
    }
    SparseBoundary {
        rows,
        cols,
        columns,
    }
}

/// Rank of a sparse integer matrix by the chosen backend.
pub fn matrix_rank(m: &SparseBoundary, method: RankMethod) -> usize {
    match method {
        RankMethod::Exact => smith_rank(m),
        RankMethod::Modular => modular_rank(m),
    }
}

/// Rank via dense Smith normal form over `BigInt`.
fn smith_rank(m: &SparseBoundary) -> usize {
    smith_invariant_factors(m).len()
}

/// The nonzero diagonal of the Smith normal form, each entry dividing
/// the next.  The length is the rank over the rationals.
pub fn smith_invariant_factors(m: &SparseBoundary) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m.cols]; m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            a[i][j] = BigInt::from(v);
        }
    }
    let mut factors = Vec::new();
    let mut top = 0usize;
    while top < m.rows && top < m.cols {
        // find a pivot of smallest absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..m.rows {
            for j in top..m.cols {
                if !a[i][j].is_zero() {
                    match pivot {
                        Some((pi, pj)) if a[pi][pj].abs() <= a[i][j].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }
        // clear the pivot row and column by Euclidean steps; swapping in
        // smaller remainders terminates because |pivot| strictly drops
        loop {
            let mut clean = true;
            for i in top + 1..m.rows {
                if a[i][top].is_zero() {
                    continue;
                }
                let q = &a[i][top] / &a[top][top];
                if !q.is_zero() {
                    // indexed: rows `i` and `top` of `a` alias
                    #[allow(clippy::needless_range_loop)]
                    for j in top..m.cols {
                        let t = &a[top][j] * &q;
                        a[i][j] -= t;
                    }
                }
                if !a[i][top].is_zero() {
                    a.swap(top, i);
                    clean = false;
                }
            }
            for j in top + 1..m.cols {
                if a[top][j].is_zero() {
                    continue;
                }
                let q = &a[top][j] / &a[top][top];
                if !q.is_zero() {
                    for row in a.iter_mut().skip(top) {
                        let t = &row[top] * &q;
                        row[j] -= t;
                    }
                }
                if !a[top][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(top, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        factors.push(a[top][top].abs());
        top += 1;
    }
    // divisibility fixup: d_i | d_{i+1}
    let mut i = 0;
    while i + 1 < factors.len() {
        if (&factors[i + 1] % &factors[i]).is_zero() {
            i += 1;
            continue;
        }
        let g = gcd(&factors[i], &factors[i + 1]);
        let l = (&factors[i] * &factors[i + 1]) / &g;
        factors[i] = g;
        factors[i + 1] = l;
        i = i.saturating_sub(1);
    }
    factors.sort();
    factors
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Rank over `GF(2^31 - 1)` via left-to-right column reduction with a
/// pivot table keyed by lowest row, the standard persistence-style
/// reduction.  Deterministic: columns are processed in index order.
fn modular_rank(m: &SparseBoundary) -> usize {
    let p = MODULAR_PRIME;
    let to_field = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    // column as sorted (row, nonzero value) pairs
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
    let mut stored: Vec<Vec<(usize, u64)>> = Vec::with_capacity(m.cols);
    let mut rank = 0usize;
    for col in &m.columns {
        let mut current: Vec<(usize, u64)> = col
            .iter()
            .map(|&(r, v)| (r, to_field(v)))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(low, val)) = current.last() {
            match pivot_of_row[low] {
                None => {
                    pivot_of_row[low] = Some(stored.len());
                    rank += 1;
                    break;
                }
                Some(idx) => {
                    let other = &stored[idx];
                    let other_val = other.last().expect("pivot column is nonzero").1;
                    // current -= (val / other_val) * other
                    let factor = mul_mod(val, inv_mod(other_val, p), p);
                    current = sub_scaled(&current, other, factor, p);
                }
            }
        }
        stored.push(current);
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by Fermat's little theorem (p prime).
fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `a - factor * b` over the field, both sparse ascending-row lists.
fn sub_scaled(a: &[(usize, u64)], b: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map(|&(r, _)| r);
        let rb = b.get(j).map(|&(r, _)| r);
        match (ra, rb) {
            (Some(x), Some(y)) if x == y => {
                let v = (a[i].1 + p - mul_mod(factor, b[j].1, p)) % p;
                if v != 0 {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a[i].1));
                i += 1;
            }
            (Some(_), Some(y)) => {
                let v = (p - mul_mod(factor, b[j].1, p)) % p;
                if v != 0 {
                    out.push((y, v));
                }
                j += 1;
            }
            (Some(x), None) => {
                out.push((x, a[i].1));
                i += 1;
            }
            (None, Some(y)) => {
                let v = (p - mul_mod(factor, b[j].1, p)) % p;
                if v != 0 {
                    out.push((y, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Betti numbers `b_0, ..., b_top` of a complex.
pub type BettiVector = Vec<usize>;

/// Betti numbers by the chosen rank backend, with structural
/// consistency checks (`d^2 = 0` rank compatibility via nonnegativity,
/// and the Euler characteristic identity).
pub fn betti_numbers(complex: &SimplicialComplex, method: RankMethod) -> Result<BettiVector> {
    let top = match complex.dim() {
        Some(d) => d,
        None => return Ok(Vec::new()),
    };
    let mut ranks = Vec::with_capacity(top + 2);
    for d in 0..=top {
        ranks.push(matrix_rank(&boundary_matrix(complex, d), method));
    }
    ranks.push(0); // rank of the zero map from (top+1)-chains
    let f = complex.f_vector();
    let mut betti = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let b = f[d] as i64 - ranks[d] as i64 - ranks[d + 1] as i64;
        if b < 0 {
            return Err(Error::Integrity(format!(
                "negative Betti number b_{d} = {b}"
            )));
        }
        betti.push(b as usize);
    }
    let chi: i64 = betti
        .iter()
        .enumerate()
        .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    if chi != complex.euler_characteristic() {
        return Err(Error::Integrity(format!(
            "Euler characteristic mismatch: Betti sum {chi}, f-vector sum {}",
            complex.euler_characteristic()
        )));
    }
    Ok(betti)
}

/// Betti numbers computed by *both* backends; errors unless they agree.
pub fn betti_numbers_checked(complex: &SimplicialComplex) -> Result<BettiVector> {
    let exact = betti_numbers(complex, RankMethod::Exact)?;
    let modular = betti_numbers(complex, RankMethod::Modular)?;
    if exact != modular {
        return Err(Error::Integrity(format!(
            "rank backends disagree: exact {exact:?}, modular {modular:?}"
        )));
    }
    Ok(exact)
}

/// Sum of even-index and odd-index Betti numbers: the ranks of the even
/// and odd K-groups of the function algebra of the space.
pub fn k_ranks(betti: &[usize]) -> (usize, usize) {
    let even = betti.iter().step_by(2).sum();
    let odd = betti.iter().skip(1).step_by(2).sum();
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::super::complex::SimplicialComplex;
    use super::*;

    fn triangle_filled() -> SimplicialComplex {
        SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        let mut faces = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    faces.push(vec![a, 2 + b, 4 + c]);
                }
            }
        }
        SimplicialComplex::from_maximal(6, &faces).unwrap()
    }

    #[test]
    fn boundary_of_a_triangle() {
        let k = triangle_filled();
        let d2 = boundary_matrix(&k, 2);
        assert_eq!((d2.rows, d2.cols), (3, 1));
        // edges sorted: [0,1], [0,2], [1,2]; faces of [0,1,2] are
        // [1,2], -[0,2], [0,1]
        assert_eq!(d2.columns[0], vec![(0, 1), (1, -1), (2, 1)]);
    }

    #[test]
    fn boundary_squared_is_zero() {
        let k = octahedron();
        let d1 = boundary_matrix(&k, 1);
        let d2 = boundary_matrix(&k, 2);
        // compose sparsely: for each 2-simplex column, push faces' faces
        for col in &d2.columns {
            let mut acc = vec![0i64; d1.rows];
            for &(edge, s) in col {
                for &(v, t) in &d1.columns[edge] {
                    acc[v] += s * t;
                }
            }
            assert!(acc.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn smith_form_of_small_matrix() {
        let m = SparseBoundary {
            rows: 2,
            cols: 2,
            columns: vec![vec![(0, 2), (1, 6)], vec![(0, 4), (1, 8)]],
        };
        let factors = smith_invariant_factors(&m);
        assert_eq!(factors, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(matrix_rank(&m, RankMethod::Exact), 2);
        assert_eq!(matrix_rank(&m, RankMethod::Modular), 2);
    }

    #[test]
    fn singular_matrix_rank() {
        let m = SparseBoundary {
            rows: 2,
            cols: 2,
            columns: vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)]],
        };
        assert_eq!(matrix_rank(&m, RankMethod::Exact), 1);
        assert_eq!(matrix_rank(&m, RankMethod::Modular), 1);
    }

    #[test]
    fn betti_of_standard_spaces() {
        // four isolated points
        let pts =
            SimplicialComplex::from_maximal(4, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(betti_numbers_checked(&pts).unwrap(), vec![4]);

        // filled triangle: contractible
        assert_eq!(
            betti_numbers_checked(&triangle_filled()).unwrap(),
            vec![1, 0, 0]
        );

        // circle
        let circle =
            SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(betti_numbers_checked(&circle).unwrap(), vec![1, 1]);

        // 2-sphere
        assert_eq!(betti_numbers_checked(&octahedron()).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn betti_is_subdivision_invariant_on_the_sphere() {
        let k = octahedron();
        let (sd, _) = k.barycentric_subdivide();
        assert_eq!(betti_numbers_checked(&sd).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn k_rank_splitting() {
        assert_eq!(k_ranks(&[1, 2, 1]), (2, 2));
        assert_eq!(k_ranks(&[1, 0, 0, 0, 1]), (2, 0));
        assert_eq!(k_ranks(&[4]), (4, 0));
        assert_eq!(k_ranks(&[]), (0, 0));
    }
}
