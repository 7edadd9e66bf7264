//! Exact integer matrix algebra.
//!
//! Everything here works over `BigInt`. The Smith normal form uses
//! smallest-magnitude pivoting and tracks both transformation matrices
//! (and their inverses, which the group code needs to move between
//! presentations).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend(row.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn diagonal<I: IntoIterator<Item = BigInt>>(rows: usize, cols: usize, diag: I) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.into_iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (ni, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ni, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}: {})", self.rows, self.cols, self)
    }
}

/// Renders in the `a b; c d` text grammar used by the `snf` command.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[]");
        }
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// Parses the matrix text grammar: rows separated by `;`, entries by
/// whitespace. Every row must have the same length. Trailing `;` is
/// tolerated; an empty string (or `[]`) is the 0x0 matrix.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "[]" {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut offset = 0usize;
    let pieces: Vec<&str> = text.split(';').collect();
    let last = pieces.len() - 1;
    for (ri, piece) in pieces.iter().enumerate() {
        let start = offset;
        offset += piece.len() + 1;
        if piece.trim().is_empty() && ri == last && ri > 0 {
            break;
        }
        let mut row = Vec::new();
        let mut col_off = 0usize;
        for tok in piece.split_whitespace() {
            let pos = start + piece[col_off..].find(tok).map_or(col_off, |p| p + col_off);
            col_off = pos - start + tok.len();
            let v: BigInt = tok.parse().map_err(|_| Error::Parse {
                offset: pos,
                message: format!("invalid integer `{tok}` in row {}", ri + 1),
            })?;
            row.push(v);
        }
        if row.is_empty() {
            return Err(Error::Parse {
                offset: start,
                message: format!("row {} is empty", ri + 1),
            });
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    offset: start,
                    message: format!(
                        "row {} has {} entries, expected {}",
                        ri + 1,
                        row.len(),
                        first.len()
                    ),
                });
            }
        }
        rows.push(row);
    }
    let r = rows.len();
    let c = rows[0].len();
    IntMatrix::from_vec(r, c, rows.into_iter().flatten().collect())
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The diagonal entries `d_1 | d_2 | ...` (including trailing zeros).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// SNF together with the inverse of the row transformation.
pub(crate) struct SnfFull {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SnfFull {
    pub fn diag(&self, i: usize) -> &BigInt {
        self.d.get(i, i)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let full = snf_full(m);
    SnfResult {
        u: full.u,
        d: full.d,
        v: full.v,
    }
}

pub(crate) fn snf_full(m: &IntMatrix) -> SnfFull {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // Row operation E on D: D <- E D, U <- E U, U^-1 <- U^-1 E^-1.
    // Column operation E on D: D <- D E, V <- V E.
    macro_rules! swap_r {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! swap_c {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
        }};
    }
    macro_rules! add_r {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &BigInt = $q;
            d.add_row($dst, $src, q);
            u.add_row($dst, $src, q);
            u_inv.add_col($src, $dst, &-q);
        }};
    }
    macro_rules! add_c {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &BigInt = $q;
            d.add_col($dst, $src, q);
            v.add_col($dst, $src, q);
        }};
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let e = d.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_r!(t, pi);
        swap_c!(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                add_r!(i, t, &-q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                add_c!(j, t, &-q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let e = d.get(i, t);
                    if !e.is_zero() && e.abs() < d.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let e = d.get(t, j);
                    if !e.is_zero() && e.abs() < d.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    swap_r!(t, best.0);
                } else if best.1 != t {
                    swap_c!(t, best.1);
                }
                continue;
            }
            // row and column are clear; enforce divisibility of the block
            let pivot = d.get(t, t).clone();
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => add_r!(t, i, &BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    SnfFull {
        u,
        u_inv,
        d,
        v,
        rank: t,
    }
}

/// `Z^rows / colspan(M)` in canonical form.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let snf = snf_full(m);
    let free = m.rows() - snf.rank;
    let mut torsion = Vec::new();
    for i in 0..snf.rank {
        let di = snf.diag(i);
        if !di.is_one() {
            torsion.push(to_order(di));
        }
    }
    FgAbGroup::from_chain(free, torsion)
}

/// Kernel of `Z^cols -> Z^rows` as a free group with a `cols x k` basis matrix.
pub fn kernel(m: &IntMatrix) -> (FgAbGroup, IntMatrix) {
    let snf = snf_full(m);
    let k = m.cols() - snf.rank;
    let basis_cols: Vec<Vec<BigInt>> = (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect();
    (
        FgAbGroup::free(k),
        IntMatrix::from_columns(m.cols(), &basis_cols),
    )
}

pub fn image_rank(m: &IntMatrix) -> usize {
    snf_full(m).rank
}

pub(crate) fn to_order(d: &BigInt) -> u64 {
    d.to_u64()
        .unwrap_or_else(|| panic!("invariant factor {d} does not fit in u64"))
}

/// A basis (full column rank, column echelon form) of the lattice spanned
/// by the columns of `gens`.
pub(crate) fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    // row echelon on the transpose; surviving rows are basis vectors
    let mut t = gens.transpose();
    let (rows, cols) = (t.rows(), t.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero in column c among rows >= r
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !t.get(i, c).is_zero()
                    && best.is_none_or(|b| t.get(i, c).abs() < t.get(b, c).abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            t.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if t.get(i, c).is_zero() {
                    continue;
                }
                let q = t.get(i, c).div_floor(t.get(r, c));
                t.add_row(i, r, &-q);
                if !t.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    t.select_rows(&(0..r).collect::<Vec<_>>()).transpose()
}

/// Solves `basis * c = v` for integer `c`, where `basis` is in the column
/// echelon form produced by [`lattice_basis`]. Returns `None` when `v` is
/// not in the lattice.
pub(crate) fn solve_in_basis(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = basis.cols();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(k);
    let mut residual: Vec<BigInt> = v.to_vec();
    let mut row = 0;
    for j in 0..k {
        while row < basis.rows() && basis.get(row, j).is_zero() {
            if !residual[row].is_zero() {
                return None;
            }
            row += 1;
        }
        let pivot = basis.get(row, j);
        let (q, rem) = residual[row].div_rem(pivot);
        if !rem.is_zero() {
            return None;
        }
        for (i, res) in residual.iter_mut().enumerate() {
            let b = basis.get(i, j);
            if !b.is_zero() {
                *res -= &q * b;
            }
        }
        coeffs.push(q);
        row += 1;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check(m: &IntMatrix) -> SnfResult {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&big(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, big(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.d.rows(), 0);
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn inverses_are_tracked() {
        let m = big(&[&[3, 5, 7], &[2, -4, 6], &[0, 9, -12]]);
        let f = snf_full(&m);
        assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(3));
        assert_eq!(f.v.determinant().magnitude(), &1u32.into());
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&big(&[&[2, 0], &[0, 3]])), FgAbGroup::cyclic(6));
        assert_eq!(cokernel(&IntMatrix::identity(4)), FgAbGroup::trivial());
        assert_eq!(cokernel(&IntMatrix::zeros(1, 0)), FgAbGroup::free(1));
    }

    #[test]
    fn kernel_examples() {
        let (g, basis) = kernel(&big(&[&[1, 1]]));
        assert_eq!(g, FgAbGroup::free(1));
        assert_eq!(big(&[&[1, 1]]).mul(&basis), IntMatrix::zeros(1, 1));
        assert!(!basis.is_zero());
        assert_eq!(kernel(&IntMatrix::identity(3)).0, FgAbGroup::trivial());
        assert_eq!(kernel(&IntMatrix::zeros(1, 2)).0, FgAbGroup::free(2));
    }

    #[test]
    fn image_rank_examples() {
        assert_eq!(image_rank(&IntMatrix::identity(3)), 3);
        assert_eq!(image_rank(&big(&[&[2, 4], &[6, 8]])), 2);
        assert_eq!(image_rank(&IntMatrix::zeros(3, 2)), 0);
    }

    #[test]
    fn determinant_oracle() {
        assert_eq!(big(&[&[2, 4], &[6, 8]]).determinant(), BigInt::from(-8));
        assert_eq!(big(&[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(parse_matrix("1 0; 0 1").unwrap(), IntMatrix::identity(2));
        assert_eq!(parse_matrix("0").unwrap(), big(&[&[0]]));
        assert_eq!(
            parse_matrix(" 2 4 ;6 8;").unwrap(),
            big(&[&[2, 4], &[6, 8]])
        );
        match parse_matrix("1 2; 3") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_matrix("1 x") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lattice_basis_and_solve() {
        let g = big(&[&[2, 4, 6], &[0, 2, 2]]);
        let b = lattice_basis(&g);
        assert_eq!(b.cols(), 2);
        for j in 0..3 {
            assert!(solve_in_basis(&b, &g.column(j)).is_some());
        }
        let v = vec![BigInt::from(1), BigInt::from(0)];
        assert!(solve_in_basis(&b, &v).is_none());
    }

    #[test]
    fn entry_growth_stays_exact() {
        let m = big(&[
            &[i64::MAX, 3, 1],
            &[5, i64::MAX - 1, 7],
            &[11, 13, i64::MAX - 2],
        ]);
        let s = check(&m);
        let prod: BigInt = s.diagonal().iter().product();
        assert_eq!(prod.abs(), m.determinant().abs());
    }
}
