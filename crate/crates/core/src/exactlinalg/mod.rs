//! Exact integer and rational linear algebra: Smith and Hermite normal forms,
//! lattice saturation with unimodular completion, kernels, determinants, and
//! feasibility of linear inequality systems (see [`lp`]).
//!
//! All arithmetic is arbitrary precision; none of the decisions made here
//! (emptiness, ranks, divisibility chains) tolerate rounding.

mod lp;

pub use lp::{feasible_point, feasible_point_eq};

use crate::numeric::{dot, Int, Rat};
use num::{One, Signed, Zero};
use std::fmt;

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(&self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| v.iter().zip(0..self.rows).map(|(x, i)| x * &self[(i, j)]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let tmp = self[(a, j)].clone();
            self[(a, j)] = self[(b, j)].clone();
            self[(b, j)] = tmp;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let tmp = self[(i, a)].clone();
            self[(i, a)] = self[(i, b)].clone();
            self[(i, b)] = tmp;
        }
    }

    /// row_a += c * row_b
    fn add_row_mul(&mut self, a: usize, b: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = c * &self[(b, j)];
            self[(a, j)] += delta;
        }
    }

    /// col_a += c * col_b
    fn add_col_mul(&mut self, a: usize, b: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = c * &self[(i, b)];
            self[(i, a)] += delta;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self[(a, j)] = -self[(a, j)].clone();
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            self[(i, a)] = -self[(i, a)].clone();
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match pivot {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &num / &prev;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| Rat::from_integer(self[(i, j)].clone())).collect())
            .collect();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            if let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) {
                m.swap(rank, p);
                let inv = m[rank][col].clone().recip();
                for j in col..self.cols {
                    let scaled = &m[rank][j] * &inv;
                    m[rank][j] = scaled;
                }
                for i in 0..self.rows {
                    if i != rank && !m[i][col].is_zero() {
                        let f = m[i][col].clone();
                        for j in col..self.cols {
                            let delta = &f * &m[rank][j];
                            m[i][j] = &m[i][j] - &delta;
                        }
                    }
                }
                rank += 1;
            }
            col += 1;
        }
        rank
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Exact inverse of a unimodular integer matrix.
    pub fn inverse_unimodular(&self) -> IntMatrix {
        assert!(self.rows == self.cols);
        let n = self.rows;
        // adjugate / det with det = +-1; do rational elimination for simplicity
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rat::from_integer(self[(i, j)].clone()))
                    .chain((0..n).map(|j| {
                        if i == j {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    }))
                    .collect()
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("singular matrix");
            a.swap(k, p);
            let inv = a[k][k].clone().recip();
            for j in 0..2 * n {
                let scaled = &a[k][j] * &inv;
                a[k][j] = scaled;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    for j in 0..2 * n {
                        let delta = &f * &a[k][j];
                        a[i][j] = &a[i][j] - &delta;
                    }
                }
            }
        }
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                assert!(v.is_integer(), "inverse not integral; matrix not unimodular");
                out[(i, j)] = v.to_integer();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                (0..self.cols).map(|j| self[(i, j)].to_string()).collect::<Vec<_>>()
            )?;
        }
        write!(f, "]")
    }
}

/// Basis of a sublattice of Z^n, stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub ambient_dim: usize,
    pub basis_vectors: Vec<Vec<Int>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis_vectors.len()
    }
}

/// Smith normal form: returns `(S, U, V)` with `U * M * V = S`, `U`, `V`
/// unimodular and `S` diagonal with a divisibility chain `s_1 | s_2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        // find a pivot in the submatrix starting at (t, t)
        let mut pivot = None;
        'outer: for i in t..s.rows {
            for j in t..s.cols {
                if !s[(i, j)].is_zero() {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // clear column t below the pivot
            let mut dirty = false;
            for i in t + 1..s.rows {
                while !s[(i, t)].is_zero() {
                    let quot = floor_div(&s[(i, t)], &s[(t, t)]);
                    s.add_row_mul(i, t, &-quot.clone());
                    u.add_row_mul(i, t, &-quot);
                    if !s[(i, t)].is_zero() {
                        s.swap_rows(i, t);
                        u.swap_rows(i, t);
                        dirty = true;
                    }
                }
            }
            // clear row t to the right of the pivot
            for j in t + 1..s.cols {
                while !s[(t, j)].is_zero() {
                    let quot = floor_div(&s[(t, j)], &s[(t, t)]);
                    s.add_col_mul(j, t, &-quot.clone());
                    v.add_col_mul(j, t, &-quot);
                    if !s[(t, j)].is_zero() {
                        s.swap_cols(j, t);
                        v.swap_cols(j, t);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
    }

    // positive diagonal
    for t in 0..n {
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    // enforce the divisibility chain
    loop {
        let mut fixed = true;
        for t in 0..n.saturating_sub(1) {
            let (a, b) = (s[(t, t)].clone(), s[(t + 1, t + 1)].clone());
            if b.is_zero() || (!a.is_zero() && (&b % &a).is_zero()) {
                continue;
            }
            fixed = false;
            // standard 2x2 repair: add column t+1 to column t, then re-eliminate
            s.add_col_mul(t, t + 1, &Int::one());
            v.add_col_mul(t, t + 1, &Int::one());
            loop {
                let mut dirty = false;
                for i in t + 1..s.rows {
                    while !s[(i, t)].is_zero() {
                        let quot = floor_div(&s[(i, t)], &s[(t, t)]);
                        s.add_row_mul(i, t, &-quot.clone());
                        u.add_row_mul(i, t, &-quot);
                        if !s[(i, t)].is_zero() {
                            s.swap_rows(i, t);
                            u.swap_rows(i, t);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..s.cols {
                    while !s[(t, j)].is_zero() {
                        let quot = floor_div(&s[(t, j)], &s[(t, t)]);
                        s.add_col_mul(j, t, &-quot.clone());
                        v.add_col_mul(j, t, &-quot);
                        if !s[(t, j)].is_zero() {
                            s.swap_cols(j, t);
                            v.swap_cols(j, t);
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            if s[(t, t)].is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
            if s[(t + 1, t + 1)].is_negative() {
                s.negate_row(t + 1);
                u.negate_row(t + 1);
            }
        }
        if fixed {
            break;
        }
    }
    (s, u, v)
}

fn floor_div(a: &Int, b: &Int) -> Int {
    num::Integer::div_floor(a, b)
}

/// Hermite normal form by row operations: returns `(H, U)` with `U * M = H`
/// unimodular `U`. For a full-row-rank `M`, `H` is lower triangular with
/// positive diagonal and each subdiagonal entry reduced modulo the diagonal
/// entry of its column, the canonical basis of the row lattice. Rank-deficient
/// inputs yield the echelon analogue with zero rows at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    // Work on reversed columns so the usual left-to-right echelon sweep
    // produces a lower-triangular result in the original column order.
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let cols: Vec<usize> = (0..m.cols).rev().collect();

    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for &j in &cols {
        if pivot_row == m.rows {
            break;
        }
        // make all entries below pivot_row in column j zero via gcd steps
        loop {
            let nonzero: Vec<usize> =
                (pivot_row + 1..m.rows).filter(|&i| !h[(i, j)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            // choose row with smallest nonzero |entry| among pivot_row..rows
            let mut best = pivot_row;
            let mut best_abs: Option<Int> = if h[(pivot_row, j)].is_zero() {
                None
            } else {
                Some(h[(pivot_row, j)].abs())
            };
            for &i in &nonzero {
                let a = h[(i, j)].abs();
                if best_abs.as_ref().map_or(true, |b| &a < b) {
                    best = i;
                    best_abs = Some(a);
                }
            }
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            for i in pivot_row + 1..m.rows {
                if !h[(i, j)].is_zero() {
                    let q = floor_div(&h[(i, j)], &h[(pivot_row, j)]);
                    h.add_row_mul(i, pivot_row, &-q.clone());
                    u.add_row_mul(i, pivot_row, &-q);
                }
            }
        }
        if h[(pivot_row, j)].is_zero() {
            continue;
        }
        if h[(pivot_row, j)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        pivots.push((pivot_row, j));
        pivot_row += 1;
    }
    // reduce entries above each pivot (earlier rows) modulo the pivot,
    // largest pivot column first so later reductions are not disturbed
    for &(pi, pj) in &pivots {
        for i in 0..pi {
            if !h[(i, pj)].is_zero() {
                let q = floor_div(&h[(i, pj)], &h[(pi, pj)]);
                h.add_row_mul(i, pi, &-q.clone());
                u.add_row_mul(i, pi, &-q);
            }
        }
    }
    // the sweep filled pivot rows for columns right-to-left; reverse the pivot
    // rows so pivot columns increase downwards (lower-triangular shape), with
    // zero rows kept at the bottom
    let r = pivots.len();
    for i in 0..r / 2 {
        h.swap_rows(i, r - 1 - i);
        u.swap_rows(i, r - 1 - i);
    }
    (h, u)
}

/// Saturation of the Q-span of the given vectors inside Z^n, together with a
/// unimodular `A` whose defining property is `b * A = e_i` for the i-th
/// saturation basis vector `b`: right-multiplication by `A` moves the
/// saturated lattice onto the first `d` coordinates.
pub fn saturate_and_complete(vectors: &[Vec<Int>], ambient_dim: usize) -> (LatticeBasis, IntMatrix) {
    for v in vectors {
        assert_eq!(v.len(), ambient_dim);
    }
    if vectors.is_empty() || ambient_dim == 0 {
        return (
            LatticeBasis {
                ambient_dim,
                basis_vectors: vec![],
            },
            IntMatrix::identity(ambient_dim),
        );
    }
    let m = IntMatrix::from_rows(vectors);
    let (s, _u, v) = smith_normal_form(&m);
    let rank = (0..m.rows.min(m.cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
    let vinv = v.inverse_unimodular();
    let basis_vectors: Vec<Vec<Int>> = (0..rank).map(|i| vinv.row(i)).collect();
    (
        LatticeBasis {
            ambient_dim,
            basis_vectors,
        },
        v,
    )
}

/// Saturated basis of the integer kernel `{x : M x = 0}` (column vectors
/// returned as plain vectors).
pub fn kernel_lattice(m: &IntMatrix) -> Vec<Vec<Int>> {
    if m.cols == 0 {
        return vec![];
    }
    if m.rows == 0 {
        return (0..m.cols)
            .map(|j| {
                let mut e = vec![Int::zero(); m.cols];
                e[j] = Int::one();
                e
            })
            .collect();
    }
    let (s, _u, v) = smith_normal_form(m);
    let rank = (0..m.rows.min(m.cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
    (rank..m.cols).map(|j| v.col(j)).collect()
}

/// Solve `M x = b` over the rationals; `None` when inconsistent. When the
/// solution space is positive-dimensional an arbitrary solution is returned.
pub fn solve_rational(m: &IntMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows);
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| Rat::from_integer(m[(i, j)].clone()))
                .chain(std::iter::once(b[i].clone()))
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        if let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) {
            a.swap(r, p);
            let inv = a[r][c].clone().recip();
            for j in c..=cols {
                let scaled = &a[r][j] * &inv;
                a[r][j] = scaled;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=cols {
                        let delta = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &delta;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
    }
    for i in r..rows {
        if !a[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[row][cols].clone();
    }
    Some(x)
}
