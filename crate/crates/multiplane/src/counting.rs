//! Characters of the covering group, their images in the exponent
//! hypercube, lattice counts on faces and cells, composition counters and
//! quasi-polynomial fitting.

use crate::error::{Error, Result};
use crate::exact::Fraction;
use crate::walls::{Cell, Face, JumpingWall};
use std::collections::BTreeMap;

/// The character lattice of the covering group together with the exponent
/// matrix: row `j` holds the exponents of the `j`-th generator over the
/// curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterGrid {
    pub orders: Vec<u64>,
    pub matrix: Vec<Vec<u64>>,
}

impl CharacterGrid {
    pub fn new(orders: Vec<u64>, matrix: Vec<Vec<u64>>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::input("group orders must be positive"));
        }
        if matrix.len() != orders.len() {
            return Err(Error::input("matrix must have one row per group generator"));
        }
        let t = matrix.first().map(|r| r.len()).unwrap_or(0);
        if t == 0 || matrix.iter().any(|r| r.len() != t) {
            return Err(Error::input("matrix rows must be nonempty and equal length"));
        }
        Ok(CharacterGrid { orders, matrix })
    }

    pub fn generators(&self) -> usize {
        self.orders.len()
    }

    pub fn curves(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn character_count(&self) -> u128 {
        self.orders.iter().map(|&n| n as u128).product()
    }

    pub fn lcm_order(&self) -> u64 {
        self.orders.iter().copied().fold(1, num_integer::lcm)
    }

    /// The image of a character in `[0,1)^t`: coordinatewise fractional
    /// parts of `sum_j matrix[j][i] a_j / n_j`.
    pub fn phi(&self, a: &[u64]) -> Vec<Fraction> {
        assert_eq!(a.len(), self.generators());
        (0..self.curves())
            .map(|i| {
                let mut acc = Fraction::zero();
                for (j, &aj) in a.iter().enumerate() {
                    if self.matrix[j][i] != 0 && aj != 0 {
                        acc += &Fraction::new(
                            (self.matrix[j][i] as i64) * (aj as i64),
                            self.orders[j] as i64,
                        );
                    }
                }
                acc.fract()
            })
            .collect()
    }

    /// Integer form of the image: `phi(a) * N` for `N` the least common
    /// multiple of the orders, reduced modulo `N`.
    pub fn phi_scaled(&self, a: &[u64], big_n: u64) -> Vec<i64> {
        let weights: Vec<u64> = self.orders.iter().map(|&n| big_n / n).collect();
        (0..self.curves())
            .map(|i| {
                let mut acc: u128 = 0;
                for (j, &aj) in a.iter().enumerate() {
                    acc += (self.matrix[j][i] as u128) * (aj as u128) * (weights[j] as u128);
                }
                (acc % big_n as u128) as i64
            })
            .collect()
    }

    /// Character with the given linear index, last generator fastest.
    pub fn character_at(&self, mut idx: u128) -> Vec<u64> {
        let mut a = vec![0u64; self.generators()];
        for j in (0..self.generators()).rev() {
            let n = self.orders[j] as u128;
            a[j] = (idx % n) as u64;
            idx /= n;
        }
        a
    }

    /// The unique character mapping to the grid point `c / N`, when the
    /// matrix contains an identity submatrix (a pivot curve per generator):
    /// returns `None` when the point is not in the image.
    pub fn preimage(&self, c: &[i64], big_n: u64, pivots: &[usize]) -> Option<Vec<u64>> {
        let mut a = vec![0u64; self.generators()];
        for (j, &i) in pivots.iter().enumerate() {
            // x_i = a_j / n_j, so a_j = c_i * n_j / N.
            let num = (c[i] as u128) * (self.orders[j] as u128);
            if !num.is_multiple_of(big_n as u128) {
                return None;
            }
            a[j] = (num / big_n as u128) as u64;
        }
        (self.phi_scaled(&a, big_n) == c).then_some(a)
    }

    /// Curve indices forming an identity submatrix: pivot `i(j)` has
    /// exponent 1 for generator `j` and 0 for the others.
    pub fn identity_pivots(&self) -> Option<Vec<usize>> {
        let s = self.generators();
        let t = self.curves();
        let mut pivots = Vec::with_capacity(s);
        for j in 0..s {
            let found = (0..t).find(|&i| {
                (0..s).all(|j2| self.matrix[j2][i] == if j2 == j { 1 } else { 0 })
            })?;
            pivots.push(found);
        }
        Some(pivots)
    }
}

/// Number of `k`-tuples of integers in `{0, ..., n-1}` summing to `m`,
/// computed by convolution.
pub fn sigma(k: usize, m: i64, n: u64) -> u64 {
    if m < 0 || k == 0 {
        return if m == 0 && k == 0 { 1 } else { 0 };
    }
    let m = m as usize;
    let mut dp = vec![0u64; m + 1];
    dp[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u64; m + 1];
        for (v, &ways) in dp.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for add in 0..(n as usize).min(m - v + 1) {
                next[v + add] += ways;
            }
        }
        dp = next;
    }
    dp[m]
}

/// A function that is polynomial on each residue class modulo a period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// Coefficient vectors, lowest degree first, indexed by `n % period`.
    pub constituents: Vec<Vec<Fraction>>,
}

impl QuasiPolynomial {
    pub fn eval(&self, n: u64) -> Fraction {
        let poly = &self.constituents[(n % self.period) as usize];
        let x = Fraction::from_int(n as i64);
        let mut acc = Fraction::zero();
        for c in poly.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.constituents
            .iter()
            .map(|p| p.iter().rposition(|c| !c.is_zero()).map_or(0, |d| d))
            .max()
            .unwrap_or(0)
    }
}

/// Exact quasi-polynomial interpolation: fits one polynomial of degree at
/// most `degree` per residue class and verifies every supplied point,
/// including the ones not used for interpolation.
pub fn ehrhart_fit(
    counts: &BTreeMap<u64, u64>,
    period: u64,
    degree: usize,
) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::input("period must be positive"));
    }
    let mut constituents = Vec::new();
    for r in 0..period {
        let pts: Vec<(u64, u64)> =
            counts.iter().filter(|(n, _)| *n % period == r).map(|(&n, &c)| (n, c)).collect();
        if pts.len() < degree + 1 {
            return Err(Error::input(format!(
                "need at least {} samples in residue class {r} (have {})",
                degree + 1,
                pts.len()
            )));
        }
        let nodes = &pts[..degree + 1];
        let poly = lagrange(nodes);
        // Exact fit required on every sample, held-out ones included.
        for &(n, c) in &pts {
            let val = eval_poly(&poly, n);
            if val != Fraction::from_int(c as i64) {
                return Err(Error::input(format!(
                    "no exact quasi-polynomial of period {period} and degree {degree}: \
                     residue {r} misfits at n = {n}"
                )));
            }
        }
        constituents.push(poly);
    }
    Ok(QuasiPolynomial { period, constituents })
}

fn eval_poly(poly: &[Fraction], n: u64) -> Fraction {
    let x = Fraction::from_int(n as i64);
    let mut acc = Fraction::zero();
    for c in poly.iter().rev() {
        acc = &(&acc * &x) + c;
    }
    acc
}

/// Lagrange interpolation through the given nodes, coefficients lowest
/// degree first.
fn lagrange(nodes: &[(u64, u64)]) -> Vec<Fraction> {
    let k = nodes.len();
    let mut acc = vec![Fraction::zero(); k];
    for (i, &(xi, yi)) in nodes.iter().enumerate() {
        // Basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j).
        let mut basis = vec![Fraction::zero(); k];
        basis[0] = Fraction::one();
        let mut deg = 0;
        let mut denom = Fraction::one();
        for (j, &(xj, _)) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            // Multiply by (x - x_j).
            for d in (0..=deg).rev() {
                let carry = basis[d].clone();
                basis[d + 1] += &carry;
                basis[d] = &carry * &Fraction::from_int(-(xj as i64));
            }
            deg += 1;
            denom *= &Fraction::from_int(xi as i64 - xj as i64);
        }
        let scale = &Fraction::from_int(yi as i64) / &denom;
        for d in 0..k {
            acc[d] += &(&basis[d] * &scale);
        }
    }
    acc
}

/// Budget for enumerating the grid points of one face.
pub const FACE_GRID_BUDGET: u128 = 10_000_000;

/// Counting strategy actually used by [`count_cell`] or [`count_face`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountStrategy {
    /// Full enumeration of the character group.
    Enumerate,
    /// Enumeration of the grid points on the face with preimage lookup.
    FaceParametrized,
}

/// Number of characters whose image lies on the face (anywhere on it,
/// sub-faces included).
pub fn count_face(
    face: &Face,
    grid: &CharacterGrid,
    threshold: u128,
) -> Result<(u64, CountStrategy)> {
    count_with(face, None, &[], grid, threshold)
}

/// Number of characters whose image lies in the given cell of the face.
pub fn count_cell(
    face: &Face,
    cell: &Cell,
    walls: &[JumpingWall],
    grid: &CharacterGrid,
    threshold: u128,
) -> Result<(u64, CountStrategy)> {
    count_with(face, Some(cell), walls, grid, threshold)
}

fn count_with(
    face: &Face,
    cell: Option<&Cell>,
    walls: &[JumpingWall],
    grid: &CharacterGrid,
    threshold: u128,
) -> Result<(u64, CountStrategy)> {
    let t = grid.curves();
    if face.subspace.ambient != t {
        return Err(Error::input("face and grid have different curve counts"));
    }
    let matches = |x: &[Fraction]| -> bool {
        if !face.subspace.contains(x) {
            return false;
        }
        match cell {
            None => true,
            Some(c) => sign_vector(face, walls, t, x) == c.signs,
        }
    };
    if grid.character_count() <= threshold {
        let mut count = 0u64;
        let total = grid.character_count();
        let mut idx = 0u128;
        while idx < total {
            let a = grid.character_at(idx);
            if matches(&grid.phi(&a)) {
                count += 1;
            }
            idx += 1;
        }
        return Ok((count, CountStrategy::Enumerate));
    }
    // Face-parametrized enumeration over the grid points of the face.
    let pivots = grid
        .identity_pivots()
        .ok_or_else(|| Error::budget(
            "character group too large for enumeration and the exponent matrix \
             has no identity submatrix for face-parametrized counting",
        ))?;
    let big_n = grid.lcm_order();
    // The strategy switch threshold does not bound the face grid: the
    // face-parametrized route has its own budget.
    let points = face_grid_points(face, t, big_n, FACE_GRID_BUDGET)?;
    let mut count = 0u64;
    for x in points {
        let c: Vec<i64> = x
            .iter()
            .map(|v| (v * &Fraction::from_int(big_n as i64)).floor_i64())
            .collect();
        if grid.preimage(&c, big_n, &pivots).is_some() && matches(&x) {
            count += 1;
        }
    }
    Ok((count, CountStrategy::FaceParametrized))
}

/// Sign vector of a point with respect to the hyperplanes not containing
/// the face.
pub fn sign_vector(face: &Face, walls: &[JumpingWall], t: usize, x: &[Fraction]) -> Vec<i8> {
    (0..walls.len() + t)
        .filter(|&g| face.mask & (1u128 << g) == 0)
        .map(|g| {
            let v = if g < walls.len() {
                &crate::exact::dot_int(x, &walls[g].normal) - &Fraction::from_int(walls[g].rhs)
            } else {
                x[g - walls.len()].clone()
            };
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// All `1/N`-grid points on a face inside `[0,1)^t`, by enumeration of the
/// free coordinates of its reduced equation system: the free coordinates
/// range over the grid and the pivot coordinates follow.
pub fn face_grid_points(
    face: &Face,
    t: usize,
    big_n: u64,
    budget: u128,
) -> Result<Vec<Vec<Fraction>>> {
    assert_eq!(face.subspace.ambient, t);
    let space = &face.subspace;
    let dim = space.dim();
    let combos = (big_n as u128)
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::budget("face dimension too large for grid enumeration"))?;
    if combos > budget {
        return Err(Error::budget(format!(
            "face grid enumeration needs {combos} candidates, budget is {budget}"
        )));
    }
    let nq = Fraction::from_int(big_n as i64);
    let mut out = Vec::new();
    let mut assignment = vec![0u64; dim];
    loop {
        // The free coordinates equal the assigned grid values exactly; the
        // pivot coordinates come along linearly.
        let mut x = space.base.clone();
        for (a, d) in assignment.iter().zip(&space.directions) {
            let lambda = Fraction::new(*a as i64, big_n as i64);
            if !lambda.is_zero() {
                for (xi, di) in x.iter_mut().zip(d) {
                    *xi += &(&lambda * di);
                }
            }
        }
        let in_box = x.iter().all(|v| !v.is_negative() && *v < Fraction::one());
        if in_box && x.iter().all(|v| (v * &nq).is_integer()) {
            out.push(x);
        }
        // Odometer over the assignments.
        let mut j = dim;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            assignment[j] += 1;
            if assignment[j] < big_n {
                break;
            }
            assignment[j] = 0;
            if j == 0 {
                return Ok(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_zero_and_identity() {
        let grid = CharacterGrid::new(vec![5, 5], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(grid.phi(&[0, 0]), vec![Fraction::zero(), Fraction::zero()]);
        assert_eq!(
            grid.phi(&[2, 4]),
            vec![Fraction::new(2, 5), Fraction::new(4, 5)]
        );
    }

    #[test]
    fn phi_with_exponent_matrix() {
        // Exponent rows (0,3,1,0,0,1), (2,2,0,1,0,0), (1,0,3,0,1,0) over
        // six curves and the group (Z/5)^3.
        let grid = CharacterGrid::new(
            vec![5, 5, 5],
            vec![
                vec![0, 3, 1, 0, 0, 1],
                vec![2, 2, 0, 1, 0, 0],
                vec![1, 0, 3, 0, 1, 0],
            ],
        )
        .unwrap();
        let x = grid.phi(&[2, 4, 4]);
        assert_eq!(x[0], Fraction::new(2, 5)); // frac((0*2 + 2*4 + 1*4)/5)
        assert_eq!(x[1], Fraction::new(4, 5)); // frac((3*2 + 2*4)/5)
        assert_eq!(x[2], Fraction::new(4, 5)); // frac((2 + 3*4)/5)
        assert_eq!(x[3], Fraction::new(4, 5));
        assert_eq!(x[4], Fraction::new(4, 5));
        assert_eq!(x[5], Fraction::new(2, 5));
    }

    #[test]
    fn phi_scaled_matches_phi() {
        let grid = CharacterGrid::new(
            vec![4, 6],
            vec![vec![1, 2, 0], vec![3, 0, 1]],
        )
        .unwrap();
        let n = grid.lcm_order();
        for idx in 0..grid.character_count() {
            let a = grid.character_at(idx);
            let x = grid.phi(&a);
            let c = grid.phi_scaled(&a, n);
            for (xi, &ci) in x.iter().zip(&c) {
                assert_eq!(xi, &Fraction::new(ci, n as i64));
            }
        }
    }

    #[test]
    fn sigma_small_cases() {
        assert_eq!(sigma(1, 0, 4), 1);
        assert_eq!(sigma(1, 3, 4), 1);
        assert_eq!(sigma(1, 4, 4), 0);
        assert_eq!(sigma(3, 6, 3), 1); // (2,2,2)
        assert_eq!(sigma(4, 8, 4), 31);
    }

    #[test]
    fn sigma_symmetry() {
        for n in 2..=9u64 {
            for k in 1..=4usize {
                for m in 0..=(k as i64 * (n as i64 - 1)) {
                    assert_eq!(sigma(k, m, n), sigma(k, k as i64 * (n as i64 - 1) - m, n));
                }
            }
        }
    }

    #[test]
    fn quasi_polynomial_fit_constant() {
        let counts: BTreeMap<u64, u64> = (1..=8).map(|n| (n, 7)).collect();
        let qp = ehrhart_fit(&counts, 1, 0).unwrap();
        assert_eq!(qp.eval(100), Fraction::from_int(7));
    }

    #[test]
    fn quasi_polynomial_fit_period_two() {
        // f(n) = n/2 for even, (n-1)/2 for odd.
        let counts: BTreeMap<u64, u64> = (1..=12).map(|n| (n, n / 2)).collect();
        let qp = ehrhart_fit(&counts, 2, 1).unwrap();
        assert_eq!(qp.eval(100), Fraction::from_int(50));
        assert_eq!(qp.eval(101), Fraction::from_int(50));
    }

    #[test]
    fn quasi_polynomial_misfit_detected() {
        let mut counts: BTreeMap<u64, u64> = (1..=9).map(|n| (n, n * n)).collect();
        counts.insert(10, 17);
        assert!(ehrhart_fit(&counts, 1, 2).is_err());
    }
}
