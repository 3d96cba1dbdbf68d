use super::field::{FieldElement, NumberField};
use super::fraction::{dot, Fraction};
use num_bigint::BigInt;
use num_traits::Zero;

/// Dense matrix with entries in a fixed [`NumberField`].
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    field: NumberField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn new(field: NumberField, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        ExactMatrix { field, rows, cols, data }
    }

    pub fn from_rows(field: NumberField, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        ExactMatrix { field, rows: r, cols: c, data }
    }

    pub fn from_fractions(rows: &[Vec<Fraction>]) -> Self {
        let field = NumberField::rationals();
        let converted = rows
            .iter()
            .map(|row| row.iter().map(|q| field.from_fraction(q.clone())).collect())
            .collect();
        Self::from_rows(field, converted)
    }

    pub fn identity(field: NumberField, n: usize) -> Self {
        let mut m = Self::new(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    /// Rank over the field, by Gaussian elimination with first-nonzero
    /// pivoting.  Pivot magnitude is irrelevant in exact arithmetic.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_echelon().len()
    }

    /// Reduce in place to row echelon form; returns the pivot columns.
    fn row_echelon(&mut self) -> Vec<usize> {
        let k = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot_row = (row..self.rows).find(|&r| !self.at(r, col).is_zero());
            let Some(p) = pivot_row else { continue };
            self.swap_rows(row, p);
            let inv = k.inv(self.at(row, col)).expect("nonzero pivot");
            for c in col..self.cols {
                let v = k.mul(self.at(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = k.sub(self.at(r, c), &k.mul(&factor, self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let k = self.field.clone();
        let mut work = self.clone();
        let pivots = work.row_echelon();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![k.zero(); self.cols];
            v[free] = k.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(work.at(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Full solution set of `self * x = b` over a rational matrix.
    pub fn solve_affine(&self, b: &[Fraction]) -> Option<AffineSubspace> {
        assert!(self.field.is_rational(), "solve_affine works over the rationals");
        assert_eq!(b.len(), self.rows);
        let rows: Vec<Vec<Fraction>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.field.to_fraction(self.at(r, c))).collect())
            .collect();
        solve_affine(&rows, b)
    }
}

/// An affine subspace of rational affine space: a base point plus the span
/// of finitely many independent directions.
///
/// Produced by [`solve_affine`], the representation is in reduced form: the
/// base point vanishes on the non-pivot coordinates and `directions[i]` is
/// the kernel vector of the `i`-th non-pivot coordinate (equal to 1 there
/// and to 0 on the other non-pivot coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub ambient: usize,
    pub base: Vec<Fraction>,
    pub directions: Vec<Vec<Fraction>>,
    /// Pivot coordinates of the reduced system.
    pub pivots: Vec<usize>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn is_point(&self) -> bool {
        self.directions.is_empty()
    }

    /// Membership test: the free coordinates of `p` pin the parameters, so
    /// the point lies on the subspace iff the parametrized point matches.
    pub fn contains(&self, p: &[Fraction]) -> bool {
        assert_eq!(p.len(), self.ambient);
        let free = self.free_coordinates();
        let mut expect = self.base.clone();
        for (d, &fc) in self.directions.iter().zip(&free) {
            let lambda = &p[fc] - &self.base[fc];
            if !lambda.is_zero() {
                for (e, di) in expect.iter_mut().zip(d) {
                    *e += &(&lambda * di);
                }
            }
        }
        expect == p
    }
}

/// Full solution set of `A x = b` over the rationals, or `None` when the
/// system is inconsistent.
pub fn solve_affine(a: &[Vec<Fraction>], b: &[Fraction]) -> Option<AffineSubspace> {
    assert_eq!(a.len(), b.len(), "matrix and right-hand side disagree");
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    // Augmented elimination over Q.
    let mut m: Vec<Vec<Fraction>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), cols, "ragged rows");
            let mut v = row.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..=cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let t = &f * &m[row][c];
                    m[r][c] -= &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // Inconsistency: a zero row with nonzero right-hand side.
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut base = vec![Fraction::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        base[pc] = m[r][cols].clone();
    }
    let mut directions = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Fraction::zero(); cols];
        v[free] = Fraction::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[r][free];
        }
        directions.push(v);
    }
    Some(AffineSubspace { ambient: cols, base, directions, pivots })
}

impl AffineSubspace {
    /// The non-pivot coordinates, in order; `directions[i]` belongs to
    /// `free_coordinates()[i]`.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ambient).filter(|c| !pivot_set.contains(c)).collect()
    }
}

/// Rank of an integer matrix by fraction-free Bareiss elimination in i128,
/// falling back to exact rational elimination on overflow.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    match int_rank_i128(rows) {
        Some(r) => r,
        None => {
            let frac: Vec<Vec<Fraction>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| Fraction::from_int(v)).collect())
                .collect();
            ExactMatrix::from_fractions(&frac).rank()
        }
    }
}

fn int_rank_i128(rows: &[Vec<i64>]) -> Option<usize> {
    let r = rows.len();
    let c = rows.first().map(|x| x.len()).unwrap_or(0);
    let mut m: Vec<Vec<i128>> =
        rows.iter().map(|row| row.iter().map(|&v| v as i128).collect()).collect();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..c {
        if rank == r {
            break;
        }
        let Some(p) = (rank..r).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, p);
        for i in rank + 1..r {
            for j in col + 1..c {
                let a = m[rank][col].checked_mul(m[i][j])?;
                let b = m[i][col].checked_mul(m[rank][j])?;
                m[i][j] = a.checked_sub(b)?.checked_div(prev)?;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    Some(rank)
}

/// Determinants of the leading principal minors of a square integer matrix.
pub fn leading_principal_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    (1..=n).map(|k| int_det_big(m, k)).collect()
}

fn int_det_big(m: &[Vec<i64>], k: usize) -> BigInt {
    // Fraction-free Bareiss over BigInt on the leading k x k block.
    let mut a: Vec<Vec<BigInt>> =
        (0..k).map(|i| (0..k).map(|j| BigInt::from(m[i][j])).collect()).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for col in 0..k {
        let Some(p) = (col..k).find(|&i| !a[i][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(col, p);
            sign = -sign;
        }
        for i in col + 1..k {
            for j in col + 1..k {
                let v = (&a[col][col] * &a[i][j] - &a[i][col] * &a[col][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    let det = a[k - 1][k - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Evaluate an affine functional `n . x - rhs` on a point.
pub fn affine_eval(normal: &[Fraction], rhs: &Fraction, x: &[Fraction]) -> Fraction {
    &dot(normal, x) - rhs
}
