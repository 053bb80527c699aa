//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] / [`BigRational`], so no result can
//! overflow. Matrices are dense and row-major; the sizes that show up for
//! polytope skeleta are small enough that nothing smarter is needed.

use std::fmt;
use std::ops::Mul;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row slices.
    ///
    /// Panics if the rows have different lengths. `cols` is taken from the
    /// first row, so an empty slice gives a 0x0 matrix.
    pub fn from_rows<T, R>(rows: &[R]) -> Self
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "all rows must have the same length");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors, with an explicit
    /// row count so that zero columns still have a shape.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length must equal the row count");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Matrix-vector product against a rational vector.
    pub fn apply_rational(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, b)| {
                        acc + BigRational::from_integer(a.clone()) * b
                    })
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(bareiss_determinant(self.clone()))
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Result<Self> {
        let det = self.determinant()?;
        if det.abs() != BigInt::one() {
            return Err(Error::NonIntegral(format!(
                "matrix with determinant {det} has no integral inverse"
            )));
        }
        let inv = solve_exact(self, &Self::identity(self.rows))?;
        inv.to_integral()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_column_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = x;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on incompatible shapes; use [`IntMatrix::checked_mul`] otherwise.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("incompatible matrix shapes")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[{}]", self.row(i).iter().join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i).iter().join(" "))?;
        }
        Ok(())
    }
}

/// Dense matrix of exact fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(BigRational::is_integer)
    }

    pub fn to_integral(&self) -> Result<IntMatrix> {
        if let Some(x) = self.entries.iter().find(|x| !x.is_integer()) {
            return Err(Error::NonIntegral(format!("entry {x}")));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.to_integer()).collect(),
        })
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            entries: m
                .entries
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        }
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `s`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots on the entry of least absolute value and reduces with the
/// nearest-integer quotient, which keeps the transforms small on the vertex
/// matrices seen in practice.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, t, |_, _| true) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_columns(t, pj);
        v.swap_columns(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&s[(i, t)], &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&s[(t, j)], &s[(t, t)]);
                s.add_column_multiple(j, t, &q);
                v.add_column_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; promote it
                let (pi, pj) = min_abs_entry(&s, t, |i, j| i == t || j == t)
                    .expect("pivot row or column is nonzero");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_columns(t, pj);
                v.swap_columns(t, pj);
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..m.min(n))
        .map(|i| s[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithDecomposition {
        u,
        s,
        v,
        invariant_factors,
    }
}

fn min_abs_entry(
    s: &IntMatrix,
    t: usize,
    keep: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let x = &s[(i, j)];
            if x.is_zero() || !keep(i, j) {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Integer nearest to a / b (b nonzero).
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    // floor division leaves r with the sign of b, so a - (q+1)b = r - b is
    // the other candidate remainder in both cases
    let (q, r) = a.div_mod_floor(b);
    if (BigInt::from(2) * r.abs()) > b.abs() {
        q + 1
    } else {
        q
    }
}

fn bareiss_determinant(mut m: IntMatrix) -> BigInt {
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = x;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank_q(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(p) = (rank..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        for i in rank + 1..m.rows {
            for j in col + 1..m.cols {
                let x = (&m[(i, j)] * &m[(rank, col)] - &m[(i, col)] * &m[(rank, j)]) / &prev;
                m[(i, j)] = x;
            }
            m[(i, col)] = BigInt::zero();
        }
        prev = m[(rank, col)].clone();
        rank += 1;
    }
    rank
}

/// Unique rational solution `x` of `a * x = b`.
///
/// Fails with [`Error::Inconsistent`] when no solution exists and with
/// [`Error::RankDeficient`] when `a` lacks full column rank.
pub fn solve_exact(a: &IntMatrix, b: &IntMatrix) -> Result<RatMatrix> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "system has {} equations but right-hand side has {} rows",
            a.rows, b.rows
        )));
    }
    let (m, n, k) = (a.rows, a.cols, b.cols);
    let width = n + k;
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            a.row(i)
                .iter()
                .chain(b.row(i))
                .cloned()
                .map(BigRational::from_integer)
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][col].recip();
        for x in &mut aug[r][col..width] {
            *x *= &inv;
        }
        for i in 0..m {
            if i == r || aug[i][col].is_zero() {
                continue;
            }
            let f = aug[i][col].clone();
            let pivot_row = aug[r][col..width].to_vec();
            for (x, y) in aug[i][col..width].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if aug[r..]
        .iter()
        .any(|row| row[n..].iter().any(|x| !x.is_zero()))
    {
        return Err(Error::Inconsistent);
    }
    if r < n {
        return Err(Error::RankDeficient { rank: r, cols: n });
    }
    let mut x = RatMatrix::zeros(n, k);
    for (row, &col) in pivots.iter().enumerate() {
        for j in 0..k {
            x.entries[col * k + j] = aug[row][n + j].clone();
        }
    }
    Ok(x)
}

/// A ℤ-basis (as columns) of the integer kernel `{x : a x = 0}`.
///
/// The basis is saturated: the last `cols - rank` columns of a unimodular
/// `v` with `u a v` diagonal.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let cols: Vec<usize> = (snf.rank()..a.cols).collect();
    snf.v.select_columns(&cols)
}

/// Binomial coefficient as `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `r`-element subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(r).collect()
}

/// Position of a sorted subset of `0..n` within [`subsets`]`(n, subset.len())`.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let r = subset.len();
    let mut rank = 0;
    let mut start = 0;
    for (pos, &x) in subset.iter().enumerate() {
        for skipped in start..x {
            rank += binomial(n - skipped - 1, r - pos - 1);
        }
        start = x + 1;
    }
    rank
}

/// Matrix of the induced map on the `r`-th exterior power.
///
/// Rows and columns are indexed by `r`-subsets in lexicographic order, and
/// entry `(I, J)` is the minor of `t` on rows `I` and columns `J`.
pub fn wedge_matrix(t: &IntMatrix, r: usize) -> Result<IntMatrix> {
    if r > t.rows.min(t.cols) {
        return Err(Error::WedgeDegree {
            degree: r,
            rows: t.rows,
            cols: t.cols,
        });
    }
    let row_sets = subsets(t.rows, r);
    let col_sets = subsets(t.cols, r);
    let mut out = IntMatrix::zeros(row_sets.len(), col_sets.len());
    for (a, rs) in row_sets.iter().enumerate() {
        let block = t.select_rows(rs);
        for (b, cs) in col_sets.iter().enumerate() {
            out[(a, b)] = bareiss_determinant(block.select_columns(cs));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check_contract(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(&(&d.u * a) * &d.v, d.s);
        assert_eq!(d.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(d.v.determinant().unwrap().abs(), BigInt::one());
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        for w in d.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        d
    }

    #[test]
    fn snf_terminates_with_negative_pivot() {
        // rounding toward the wrong neighbour here used to grow the remainder
        let d = check_contract(&m(&[&[-3, 4]]));
        assert_eq!(d.invariant_factors, vec![BigInt::one()]);
        let d = check_contract(&m(&[&[-3, 4], &[5, -7]]));
        assert_eq!(d.invariant_factors, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn snf_row_vector() {
        let d = check_contract(&m(&[&[-1, -1]]));
        assert_eq!(d.s, m(&[&[1, 0]]));
        assert_eq!(d.invariant_factors, vec![BigInt::from(1)]);
    }

    #[test]
    fn snf_identity_is_fixed() {
        let d = check_contract(&IntMatrix::identity(3));
        assert_eq!(d.s, IntMatrix::identity(3));
        assert_eq!(d.u, IntMatrix::identity(3));
        assert_eq!(d.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_diagonal_not_in_normal_form() {
        let d = check_contract(&m(&[&[4, 0], &[0, 6]]));
        assert_eq!(d.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn snf_empty_and_zero() {
        let d = check_contract(&IntMatrix::zeros(0, 3));
        assert!(d.invariant_factors.is_empty());
        assert_eq!(d.v, IntMatrix::identity(3));
        let d = check_contract(&IntMatrix::zeros(2, 2));
        assert!(d.invariant_factors.is_empty());
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel(&m(&[&[-1, -1]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert!(
            col == [BigInt::from(1), BigInt::from(-1)]
                || col == [BigInt::from(-1), BigInt::from(1)]
        );

        assert_eq!(integer_kernel(&IntMatrix::identity(2)).cols(), 0);

        let k = integer_kernel(&m(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0)[2].abs(), BigInt::one());
        assert!(k.column(0)[..2].iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of (2, 4) is spanned by (2, -1), not (4, -2)
        let a = m(&[&[2, 4]]);
        let k = integer_kernel(&a);
        assert!((&a * &k).is_zero());
        assert!(smith_normal_form(&k)
            .invariant_factors
            .iter()
            .all(One::is_one));
    }

    #[test]
    fn wedge_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(wedge_matrix(&id, 2).unwrap(), id);
        let t = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(wedge_matrix(&t, 1).unwrap(), t);
        assert_eq!(wedge_matrix(&t, 0).unwrap(), m(&[&[1]]));
        let t = m(&[&[3, 7], &[2, 5]]);
        assert_eq!(wedge_matrix(&t, 2).unwrap(), m(&[&[1]]));
        assert!(matches!(
            wedge_matrix(&t, 3),
            Err(Error::WedgeDegree { .. })
        ));
        // an empty 1x0 matrix still has a degree-0 power
        assert_eq!(
            wedge_matrix(&IntMatrix::zeros(1, 0), 0).unwrap(),
            m(&[&[1]])
        );
    }

    #[test]
    fn triangle_incidence_matrix_has_rank_two() {
        let a = m(&[
            &[-1, -1, -1, -1, -1, -1, 0, 0, 0],
            &[1, 1, 1, 0, 0, 0, -1, -1, -1],
            &[0, 0, 0, 1, 1, 1, 1, 1, 1],
        ]);
        assert_eq!(rank_q(&a), 2);
        assert_eq!(rank_q(&IntMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn solve_cases() {
        let b = m(&[&[3, 1], &[-2, 5]]);
        let x = solve_exact(&IntMatrix::identity(2), &b).unwrap();
        assert_eq!(x.to_integral().unwrap(), b);

        let x = solve_exact(&m(&[&[2, 0], &[0, 3]]), &m(&[&[1], &[1]])).unwrap();
        assert_eq!(*x.get(0, 0), BigRational::new(1.into(), 2.into()));
        assert!(!x.is_integral());

        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_exact(&a, &m(&[&[1], &[2]])), Err(Error::Inconsistent));
        assert_eq!(
            solve_exact(&a, &m(&[&[1], &[1]])),
            Err(Error::RankDeficient { rank: 1, cols: 2 })
        );
    }

    #[test]
    fn subset_ranks_match_enumeration() {
        for n in 0..7 {
            for r in 0..=n {
                for (i, s) in subsets(n, r).iter().enumerate() {
                    assert_eq!(subset_rank(n, s), i);
                }
            }
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
        assert_eq!(a.determinant().unwrap(), BigInt::from(-1));
        let inv = a.unimodular_inverse().unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(3));
        assert!(m(&[&[2, 0], &[0, 1]]).unimodular_inverse().is_err());
    }
}
