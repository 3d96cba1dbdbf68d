//! Proximity clusters of infinitely near points: the combinatorial model of
//! the log resolution of one singular point of a plane-curve configuration.
//!
//! A cluster records, for each infinitely near point, its parent in the
//! blowup chain, an optional second proximity (satellite points lie on two
//! exceptional curves) and, per curve of the configuration, the multiplicity
//! of the strict transform there.  Everything else — valuation vectors,
//! canonical divisor coefficients, the intersection matrix of the
//! exceptional curves and its inverse branch basis — is derived.

use crate::error::{Error, Result};
use crate::exact::{dot_int, leading_principal_minors, Fraction, FieldElement, NumberField};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::HashSet;

/// Direction of an infinitely near point on its parent's exceptional curve,
/// expressed in the standard blowup chart of the parent: `Finite(t)` is the
/// point of slope `t`, `Infinity` the vertical direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    Finite(FieldElement),
    Infinity,
}

/// One infinitely near point.
#[derive(Clone, Debug)]
pub struct Position {
    /// Index of the point this one is infinitely near to; `None` for the
    /// planar point itself (exactly one per cluster, at index 0).
    pub parent: Option<usize>,
    /// Second proximity of a satellite point: the earlier position whose
    /// exceptional curve also passes through this point.
    pub extra: Option<usize>,
    /// Chart direction on the parent's exceptional curve.  Satellites are
    /// forced to corner directions; free points need a direction only when
    /// the cluster is realized as a planar subscheme.
    pub direction: Option<Direction>,
}

/// The proximity cluster of one singular point.
#[derive(Clone, Debug)]
pub struct ResolutionCluster {
    pub positions: Vec<Position>,
    /// `mult[i][alpha]`: multiplicity of the strict transform of curve `i`
    /// at position `alpha`.  Curves missing the point have zero rows.
    pub mult: Vec<Vec<i64>>,
    /// Per curve, the positions where its branches attach: one entry per
    /// branch, the deepest cluster point the branch passes through.
    pub attachments: Vec<Vec<usize>>,
}

/// Data derived from a cluster by the proximity recursions and by
/// simulating the blowup sequence.
#[derive(Clone, Debug)]
pub struct ClusterData {
    /// `valuation[i][alpha]`: coefficient of the exceptional curve `alpha`
    /// in the pullback of curve `i`.
    pub valuation: Vec<Vec<i64>>,
    /// Coefficients of the relative canonical divisor.
    pub canonical: Vec<i64>,
    /// Intersection matrix of the strict transforms of the exceptional
    /// curves on the resolved surface.
    pub intersection: Vec<Vec<i64>>,
    /// Columns of the inverse of the negated intersection matrix; column
    /// `alpha` is the divisor dual to `-E_alpha`, entrywise non-negative.
    pub branch_basis: Vec<Vec<Fraction>>,
    /// Exceptional curves meeting `E_alpha` after the last blowup.
    pub neighbors: Vec<Vec<usize>>,
    /// Relevant positions, in increasing order.
    pub relevant: Vec<usize>,
}

/// Vanishing orders along the exceptional curves: the ideal of plane germs
/// whose pullback has order at least `coeffs[alpha]` along `E_alpha`.
/// Positions with zero coefficient impose nothing; the canonical textual
/// form omits them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClusterIdeal {
    pub coeffs: Vec<i64>,
}

impl ClusterIdeal {
    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Support of the ideal: positions with a positive coefficient.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c > 0)
    }
}

impl std::fmt::Display for ClusterIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "(1)");
        }
        let mut first = true;
        for (p, c) in self.support() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "v{}>={}", p + 1, c)?;
            first = false;
        }
        Ok(())
    }
}

impl ResolutionCluster {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn curves(&self) -> usize {
        self.mult.len()
    }

    /// Proximities of `alpha`: the positions whose exceptional curves pass
    /// through the point `alpha`.
    pub fn proximities(&self, alpha: usize) -> impl Iterator<Item = usize> + '_ {
        self.positions[alpha]
            .parent
            .into_iter()
            .chain(self.positions[alpha].extra)
    }

    /// Derive valuation vectors, canonical coefficients, the intersection
    /// matrix by blowup simulation, and the branch basis.
    pub fn derive(&self) -> Result<ClusterData> {
        self.validate_shape()?;
        let n = self.len();

        // Proximity recursions.
        let mut valuation = vec![vec![0i64; n]; self.curves()];
        for (i, row) in self.mult.iter().enumerate() {
            for alpha in 0..n {
                let mut v = row[alpha];
                for beta in self.proximities(alpha) {
                    v += valuation[i][beta];
                }
                if v < 0 {
                    return Err(Error::input(format!(
                        "negative valuation for curve {i} at position {alpha}"
                    )));
                }
                valuation[i][alpha] = v;
            }
        }
        let mut canonical = vec![0i64; n];
        for alpha in 0..n {
            let mut k = 1;
            for beta in self.proximities(alpha) {
                k += canonical[beta];
            }
            canonical[alpha] = k;
        }

        // Blowup simulation: track which exceptional curves meet, and how
        // many later centres lie on each curve.
        let mut adjacency: HashSet<(usize, usize)> = HashSet::new();
        let pair = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let mut on_curve = vec![0i64; n];
        for alpha in 0..n {
            if let Some(p) = self.positions[alpha].parent {
                on_curve[p] += 1;
                if let Some(q) = self.positions[alpha].extra {
                    on_curve[q] += 1;
                    if !adjacency.remove(&pair(p, q)) {
                        return Err(Error::input(format!(
                            "position {alpha}: exceptional curves {p} and {q} \
                             do not meet when the satellite point is created"
                        )));
                    }
                    adjacency.insert(pair(alpha, q));
                }
                adjacency.insert(pair(alpha, p));
            }
        }
        let mut intersection = vec![vec![0i64; n]; n];
        for alpha in 0..n {
            intersection[alpha][alpha] = -1 - on_curve[alpha];
        }
        for &(a, b) in &adjacency {
            intersection[a][b] = 1;
            intersection[b][a] = 1;
        }

        // Negative definiteness: leading principal minors alternate in sign.
        let minors = leading_principal_minors(&intersection);
        for (k, det) in minors.iter().enumerate() {
            let expect_positive = (k + 1) % 2 == 0;
            if det.is_positive() != expect_positive || det.is_zero() {
                return Err(Error::input(
                    "intersection matrix is not negative definite (malformed proximity data)",
                ));
            }
        }

        // Branch basis: inverse of the negated intersection matrix.
        let branch_basis = invert_negated(&intersection)?;

        let mut neighbors = vec![Vec::new(); n];
        let mut sorted: Vec<(usize, usize)> = adjacency.into_iter().collect();
        sorted.sort();
        for (a, b) in sorted {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for nb in &mut neighbors {
            nb.sort();
        }

        let relevant = self.relevant_positions(&neighbors);

        Ok(ClusterData {
            valuation,
            canonical,
            intersection,
            branch_basis,
            neighbors,
            relevant,
        })
    }

    fn validate_shape(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::input("cluster has no positions"));
        }
        let mut roots = 0;
        for (alpha, pos) in self.positions.iter().enumerate() {
            match pos.parent {
                None => {
                    roots += 1;
                    if pos.extra.is_some() {
                        return Err(Error::input("the planar point cannot be a satellite"));
                    }
                    if alpha != 0 {
                        return Err(Error::input("the planar point must come first"));
                    }
                }
                Some(p) => {
                    if p >= alpha {
                        return Err(Error::input(format!(
                            "position {alpha} has parent {p} not earlier in the blowup order"
                        )));
                    }
                    if let Some(q) = pos.extra {
                        if q >= alpha || q == p {
                            return Err(Error::input(format!(
                                "position {alpha} has an invalid extra proximity {q}"
                            )));
                        }
                    }
                }
            }
        }
        if roots != 1 {
            return Err(Error::input("a cluster has exactly one planar point"));
        }
        for row in &self.mult {
            if row.len() != self.len() {
                return Err(Error::input("multiplicity row length mismatch"));
            }
            if row.iter().any(|&m| m < 0) {
                return Err(Error::input("negative multiplicity"));
            }
        }
        if self.attachments.len() != self.curves() {
            return Err(Error::input("attachment table does not match the curve count"));
        }
        for (i, branches) in self.attachments.iter().enumerate() {
            for &a in branches {
                if a >= self.len() {
                    return Err(Error::input(format!(
                        "curve {i} attaches at unknown position {a}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A position is relevant when its exceptional curve meets at least
    /// three other components of the reduced total transform, or when some
    /// branch of the configuration attaches there.
    fn relevant_positions(&self, neighbors: &[Vec<usize>]) -> Vec<usize> {
        let mut attached = vec![0usize; self.len()];
        for branches in &self.attachments {
            for &a in branches {
                attached[a] += 1;
            }
        }
        (0..self.len())
            .filter(|&rho| attached[rho] > 0 || neighbors[rho].len() + attached[rho] >= 3)
            .collect()
    }
}

fn invert_negated(intersection: &[Vec<i64>]) -> Result<Vec<Vec<Fraction>>> {
    let n = intersection.len();
    // Augmented Gaussian elimination of -I | Id over the rationals.
    let mut m: Vec<Vec<Fraction>> = (0..n)
        .map(|r| {
            (0..2 * n)
                .map(|c| {
                    if c < n {
                        Fraction::from_int(-intersection[r][c])
                    } else if c - n == r {
                        Fraction::one()
                    } else {
                        Fraction::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::input("singular intersection matrix"))?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for c in 0..2 * n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &m[col][c];
                    m[r][c] -= &t;
                }
            }
        }
    }
    let cols: Vec<Vec<Fraction>> = (0..n)
        .map(|alpha| (0..n).map(|r| m[r][n + alpha].clone()).collect())
        .collect();
    for col in &cols {
        if col.iter().any(Fraction::is_negative) {
            return Err(Error::input("branch basis has a negative entry"));
        }
    }
    Ok(cols)
}

impl ClusterData {
    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Valuation vector of the full configuration at this point: the sum of
    /// the per-curve valuation vectors.
    pub fn total_valuation(&self) -> Vec<i64> {
        let n = self.len();
        let mut total = vec![0i64; n];
        for row in &self.valuation {
            for (t, v) in total.iter_mut().zip(row) {
                *t += v;
            }
        }
        total
    }

    /// The linear form `x -> sum_i x^i e_i^alpha` of a position.
    pub fn position_form(&self, alpha: usize) -> Vec<i64> {
        self.valuation.iter().map(|row| row[alpha]).collect()
    }

    /// Mixed multiplier ideal supported on the relevant positions only:
    /// coefficient `max(0, floor(sum_i x^i e_i^rho) - k^rho)` there, zero
    /// elsewhere.
    pub fn mixed_mi(&self, x: &[Fraction]) -> ClusterIdeal {
        self.mixed_mi_nudged(x, None, 0, Some(&self.relevant))
    }

    /// Brute-force form of the mixed multiplier ideal with floors taken at
    /// every position.  Defines the same ideal as [`ClusterData::mixed_mi`];
    /// keeping both turns that statement into a permanent test.
    pub fn mixed_mi_full(&self, x: &[Fraction]) -> ClusterIdeal {
        self.mixed_mi_nudged(x, None, 0, None)
    }

    /// Integer fast path of the mixed multiplier ideal at the grid point
    /// `c / big_n` with `c` componentwise non-negative.
    pub fn mixed_mi_scaled(
        &self,
        c: &[i64],
        big_n: i64,
        positions: Option<&[usize]>,
    ) -> ClusterIdeal {
        let n = self.len();
        let mut coeffs = vec![0i64; n];
        let all: Vec<usize>;
        let sel = match positions {
            Some(s) => s,
            None => {
                all = (0..n).collect();
                &all
            }
        };
        for &alpha in sel {
            let mut dot: i64 = 0;
            for (row, &ci) in self.valuation.iter().zip(c) {
                dot += row[alpha] * ci;
            }
            debug_assert!(dot >= 0);
            let coeff = dot / big_n - self.canonical[alpha];
            if coeff > 0 {
                coeffs[alpha] = coeff;
            }
        }
        ClusterIdeal { coeffs }
    }

    /// One-sided variant: floors of `l(x) + sign * eps * l(dir)` for an
    /// infinitesimal `eps > 0`, at the selected positions.
    pub fn mixed_mi_nudged(
        &self,
        x: &[Fraction],
        dir: Option<&[Fraction]>,
        sign: i32,
        positions: Option<&[usize]>,
    ) -> ClusterIdeal {
        let n = self.len();
        let mut coeffs = vec![0i64; n];
        let all: Vec<usize>;
        let sel = match positions {
            Some(s) => s,
            None => {
                all = (0..n).collect();
                &all
            }
        };
        for &alpha in sel {
            let form = self.position_form(alpha);
            let value = dot_int(x, &form);
            let nudge = match dir {
                Some(d) if sign != 0 => {
                    let slope = dot_int(d, &form);
                    if slope.is_positive() {
                        sign
                    } else if slope.is_negative() {
                        -sign
                    } else {
                        0
                    }
                }
                _ => 0,
            };
            let floor = value.floor_nudged(nudge);
            let c = floor - BigInt::from(self.canonical[alpha]);
            if c.is_positive() {
                coeffs[alpha] = i64::try_from(&c).expect("coefficient out of range");
            }
        }
        ClusterIdeal { coeffs }
    }
}

/// Fill in missing directions with generic values so the cluster can be
/// realized as a planar subscheme.  Satellite directions are forced to the
/// corners of the exceptional configuration; free points receive distinct
/// nonzero finite slopes.
pub fn with_generic_directions(
    cluster: &ResolutionCluster,
    field: &NumberField,
) -> Result<ResolutionCluster> {
    let mut out = cluster.clone();
    let n = cluster.len();
    // Chart bookkeeping: which earlier exceptional curves pass through each
    // position, as the loci {x = 0} and {y = 0} of its centered chart.
    let mut exc_x: Vec<Option<usize>> = vec![None; n];
    let mut exc_y: Vec<Option<usize>> = vec![None; n];
    let mut used: Vec<Vec<Direction>> = vec![Vec::new(); n];
    let mut counter: i64 = 0;
    for alpha in 0..n {
        let Some(p) = cluster.positions[alpha].parent else { continue };
        let dir = match (&cluster.positions[alpha].extra, &cluster.positions[alpha].direction) {
            (Some(q), given) => {
                let corner = if exc_x[p] == Some(*q) {
                    Direction::Infinity
                } else if exc_y[p] == Some(*q) {
                    Direction::Finite(field.zero())
                } else {
                    return Err(Error::input(format!(
                        "position {alpha}: extra proximity {q} is not a corner of the chart"
                    )));
                };
                if let Some(d) = given {
                    if *d != corner {
                        return Err(Error::input(format!(
                            "position {alpha}: satellite direction must be the corner"
                        )));
                    }
                }
                corner
            }
            (None, Some(d)) => {
                match d {
                    Direction::Finite(t) => {
                        if t.is_zero() && exc_y[p].is_some() {
                            return Err(Error::input(format!(
                                "position {alpha}: free point sits on an exceptional corner"
                            )));
                        }
                    }
                    Direction::Infinity => {
                        if exc_x[p].is_some() {
                            return Err(Error::input(format!(
                                "position {alpha}: free point sits on an exceptional corner"
                            )));
                        }
                    }
                }
                d.clone()
            }
            (None, None) => loop {
                counter += 1;
                let cand = Direction::Finite(field.from_int(counter));
                if !used[p].contains(&cand) {
                    break cand;
                }
            },
        };
        if used[p].contains(&dir) {
            return Err(Error::input(format!(
                "position {alpha}: duplicate direction on the exceptional curve of {p}"
            )));
        }
        used[p].push(dir.clone());
        match &dir {
            Direction::Finite(t) => {
                exc_x[alpha] = Some(p);
                exc_y[alpha] = if t.is_zero() { exc_y[p] } else { None };
            }
            Direction::Infinity => {
                exc_y[alpha] = Some(p);
                exc_x[alpha] = exc_x[p];
            }
        }
        out.positions[alpha].direction = Some(dir);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cluster of the pair of germ ideals `(u^3, v^2)` and `(u^6, v^2)`:
    /// chain point, free point, a satellite and one more free point.
    pub fn two_germ_cluster() -> ResolutionCluster {
        ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position { parent: Some(0), extra: None, direction: None },
                Position { parent: Some(1), extra: Some(0), direction: None },
                Position { parent: Some(1), extra: None, direction: None },
            ],
            mult: vec![vec![2, 1, 1, 0], vec![2, 2, 0, 2]],
            attachments: vec![vec![2], vec![3]],
        }
    }

    #[test]
    fn two_germ_valuations() {
        let c = two_germ_cluster();
        let d = c.derive().unwrap();
        assert_eq!(d.valuation[0], vec![2, 3, 6, 3]);
        assert_eq!(d.valuation[1], vec![2, 4, 6, 6]);
        assert_eq!(d.total_valuation(), vec![4, 7, 12, 9]);
        assert_eq!(d.relevant, vec![2, 3]);
    }

    #[test]
    fn single_blowup() {
        let c = ResolutionCluster {
            positions: vec![Position { parent: None, extra: None, direction: None }],
            mult: vec![vec![1], vec![1], vec![1]],
            attachments: vec![vec![0], vec![0], vec![0]],
        };
        let d = c.derive().unwrap();
        assert_eq!(d.canonical, vec![1]);
        assert_eq!(d.intersection, vec![vec![-1]]);
        assert_eq!(d.branch_basis, vec![vec![Fraction::one()]]);
        assert_eq!(d.relevant, vec![0]);
    }

    #[test]
    fn cusp_canonical_coefficients() {
        // Ordinary cusp: free point then the satellite; k3 = 1 + k1 + k2.
        let c = ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position { parent: Some(0), extra: None, direction: None },
                Position { parent: Some(1), extra: Some(0), direction: None },
            ],
            mult: vec![vec![2, 1, 1]],
            attachments: vec![vec![2]],
        };
        let d = c.derive().unwrap();
        assert_eq!(d.valuation[0], vec![2, 3, 6]);
        assert_eq!(d.canonical, vec![1, 2, 4]);
    }

    #[test]
    fn branch_basis_duality() {
        let c = two_germ_cluster();
        let d = c.derive().unwrap();
        let n = d.len();
        // (-I) * B = identity, entrywise exact.
        for a in 0..n {
            for b in 0..n {
                let mut sum = Fraction::zero();
                for j in 0..n {
                    sum += &(&Fraction::from_int(-d.intersection[a][j]) * &d.branch_basis[b][j]);
                }
                let expect = if a == b { Fraction::one() } else { Fraction::zero() };
                assert_eq!(sum, expect, "duality fails at ({a},{b})");
            }
        }
    }

    #[test]
    fn mixed_mi_trivial_at_zero() {
        let c = two_germ_cluster();
        let d = c.derive().unwrap();
        let x = vec![Fraction::zero(), Fraction::zero()];
        assert!(d.mixed_mi(&x).is_trivial());
        assert!(d.mixed_mi_full(&x).is_trivial());
    }

    #[test]
    fn triple_point_two_thirds() {
        // Three lines through a point, all exponents 2/3: the maximal ideal.
        let c = ResolutionCluster {
            positions: vec![Position { parent: None, extra: None, direction: None }],
            mult: vec![vec![1], vec![1], vec![1]],
            attachments: vec![vec![0], vec![0], vec![0]],
        };
        let d = c.derive().unwrap();
        let x = vec![Fraction::new(2, 3); 3];
        let ideal = d.mixed_mi(&x);
        assert_eq!(ideal.coeffs, vec![1]);
        assert_eq!(d.mixed_mi_full(&x), ideal);
    }

    #[test]
    fn tacnode_full_floors() {
        // Tacnode-with-line cluster: valuations (2,4) and (1,1), canonical
        // coefficients (1,2).  At x = (3/4, 0) the full floors give (0, 1).
        let c = ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position { parent: Some(0), extra: None, direction: None },
            ],
            mult: vec![vec![2, 2], vec![1, 0]],
            attachments: vec![vec![1, 1], vec![0]],
        };
        let d = c.derive().unwrap();
        assert_eq!(d.valuation[0], vec![2, 4]);
        assert_eq!(d.valuation[1], vec![1, 1]);
        assert_eq!(d.canonical, vec![1, 2]);
        let x = vec![Fraction::new(3, 4), Fraction::zero()];
        let full = d.mixed_mi_full(&x);
        assert_eq!(full.coeffs, vec![0, 1]);
    }

    #[test]
    fn satellite_requires_meeting_curves() {
        // The corner of E_0 and E_1 is blown up by position 2, so a second
        // satellite proximate to the same pair is malformed.
        let c = ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position { parent: Some(0), extra: None, direction: None },
                Position { parent: Some(1), extra: Some(0), direction: None },
                Position { parent: Some(1), extra: Some(0), direction: None },
            ],
            mult: vec![vec![2, 1, 1, 1]],
            attachments: vec![vec![3]],
        };
        assert!(c.derive().is_err());
    }

    #[test]
    fn monotone_in_exponents() {
        let c = two_germ_cluster();
        let d = c.derive().unwrap();
        let lo = vec![Fraction::new(1, 3), Fraction::new(1, 2)];
        let hi = vec![Fraction::new(2, 3), Fraction::new(3, 4)];
        let a = d.mixed_mi(&lo);
        let b = d.mixed_mi(&hi);
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            assert!(x <= y);
        }
    }

    #[test]
    fn generic_directions_satellites_forced() {
        let c = two_germ_cluster();
        let q = NumberField::rationals();
        let g = with_generic_directions(&c, &q).unwrap();
        // Position 2 is the corner of E_0 and E_1: the infinite direction.
        assert_eq!(g.positions[2].direction, Some(Direction::Infinity));
        assert!(g.positions[1].direction.is_some());
        assert!(g.positions[3].direction.is_some());
    }
}
