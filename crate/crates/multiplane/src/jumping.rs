//! Jumping numbers of ideals at one singular point, and the relevant values
//! that generate jumping walls.
//!
//! Jumps are detected at the level of ideals, not coefficient vectors: the
//! vanishing orders can change across a candidate while the ideal stays the
//! same (for the cusp valuation with orders (2,3,6) the vector jumps at 1
//! but the ideal does not).  Two ideals on the same cluster with comparable
//! coefficients are equal iff their colengths agree, so a colength
//! comparison is exact.

use crate::cohomology::{local_colength, PlanarCluster};
use crate::error::{Error, Result};
use crate::exact::{Fraction, NumberField};
use crate::singularity::{ClusterData, ClusterIdeal, ResolutionCluster};
use num_bigint::BigInt;
use std::collections::HashMap;

/// A cluster with enough data for ideal comparisons: realized at a planar
/// point with generic directions, plus a colength memo.
pub struct ClusterContext {
    pub planar: PlanarCluster,
    pub field: NumberField,
    colengths: HashMap<Vec<i64>, usize>,
}

impl ClusterContext {
    pub fn new(cluster: &ResolutionCluster) -> Result<Self> {
        let field = NumberField::rationals();
        let coords = [field.from_int(0), field.from_int(0), field.from_int(1)];
        let planar = PlanarCluster::new(&field, coords, cluster.clone())?;
        Ok(ClusterContext { planar, field, colengths: HashMap::new() })
    }

    pub fn data(&self) -> &ClusterData {
        &self.planar.data
    }

    pub fn colength(&mut self, ideal: &ClusterIdeal) -> usize {
        if let Some(&c) = self.colengths.get(&ideal.coeffs) {
            return c;
        }
        let c = local_colength(&self.field, &self.planar, ideal);
        self.colengths.insert(ideal.coeffs.clone(), c);
        c
    }

    /// The ideal of one exponent on one vanishing-order vector, floors
    /// taken on the left limit when `left` is set.
    fn power_ideal(&self, orders: &[i64], xi: &Fraction, left: bool) -> ClusterIdeal {
        let data = self.data();
        let mut coeffs = vec![0i64; data.len()];
        for alpha in 0..data.len() {
            if orders[alpha] <= 0 {
                continue;
            }
            let value = xi * &Fraction::from_int(orders[alpha]);
            let floor = if left { value.left_floor() } else { value.floor() };
            let c = floor - BigInt::from(data.canonical[alpha]);
            if c > BigInt::from(0) {
                coeffs[alpha] = i64::try_from(&c).expect("coefficient out of range");
            }
        }
        ClusterIdeal { coeffs }
    }
}

/// All jumping numbers in `(0, bound]` of the ideal with the given
/// vanishing-order vector on the cluster.
///
/// Candidates are the rationals `r / orders[alpha]`; each is confirmed by
/// comparing the ideal against its left limit through exact colengths.
pub fn jumping_scan(
    ctx: &mut ClusterContext,
    orders: &[i64],
    bound: &Fraction,
) -> Result<Vec<Fraction>> {
    if orders.len() != ctx.data().len() {
        return Err(Error::input("order vector does not match the cluster"));
    }
    if !bound.is_positive() {
        return Err(Error::input("scan bound must be positive"));
    }
    let mut candidates: Vec<Fraction> = Vec::new();
    for &e in orders {
        if e <= 0 {
            continue;
        }
        let top = (bound * &Fraction::from_int(e)).floor_i64();
        for r in 1..=top {
            candidates.push(Fraction::new(r, e));
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut jumps = Vec::new();
    for xi in candidates {
        let at = ctx.power_ideal(orders, &xi, false);
        let before = ctx.power_ideal(orders, &xi, true);
        if at == before {
            continue;
        }
        if ctx.colength(&at) != ctx.colength(&before) {
            jumps.push(xi);
        }
    }
    Ok(jumps)
}

/// Confirmed relevant values of a relevant position: positive integers `r`
/// such that the mixed multiplier ideal genuinely changes across the wall
/// `sum_i x^i e_i^rho = r` at a generic point of the wall.
///
/// Candidates run over `1 <= r < bound * sum_i e_i^rho` (the walls that
/// meet the scaled hypercube) and are drawn from the jumping numbers of the
/// relevant ideal of the position, keeping those whose jump changes the
/// coefficient at the position itself; each survivor is then confirmed by
/// an exact two-sided comparison of the full mixed multiplier ideal.
pub fn relevant_values(
    ctx: &mut ClusterContext,
    rho: usize,
    bound: &Fraction,
) -> Result<Vec<i64>> {
    let data = ctx.data();
    if !data.relevant.contains(&rho) {
        return Err(Error::input(format!("position {rho} is not relevant")));
    }
    let n = data.len();
    // Vanishing orders of the relevant ideal: the branch-basis column,
    // which has integer entries.
    let branch: Vec<i64> = (0..n)
        .map(|a| {
            let q = &data.branch_basis[rho][a];
            assert!(q.is_integer(), "branch basis of a cluster is integral");
            i64::try_from(&q.floor()).expect("branch entry out of range")
        })
        .collect();
    let diag = branch[rho];
    let wall_normal: Vec<i64> = data.position_form(rho);
    let total: i64 = wall_normal.iter().sum();
    let top_big = (bound * &Fraction::from_int(total)).left_floor();
    let top = i64::try_from(&top_big).expect("bound out of range");
    if top < 1 {
        return Ok(Vec::new());
    }

    // Jumping numbers of the relevant ideal contributed at the position:
    // the coefficient there changes only at multiples of 1/diag.
    let scan_bound = Fraction::new(top, diag);
    let jumps = jumping_scan(ctx, &branch, &scan_bound)?;
    let mut values = Vec::new();
    for xi in jumps {
        let scaled = &xi * &Fraction::from_int(diag);
        if !scaled.is_integer() {
            continue;
        }
        let r = scaled.floor_i64();
        if r > top {
            continue;
        }
        // Contribution at the position: the coefficient there must change.
        let at = ctx.power_ideal(&branch, &xi, false);
        let before = ctx.power_ideal(&branch, &xi, true);
        if at.coeffs[rho] == before.coeffs[rho] {
            continue;
        }
        if confirm_wall(ctx, &wall_normal, r)? {
            values.push(r);
        }
    }
    Ok(values)
}

/// Exact crossing test for a candidate wall: the wall, inside the open
/// orthant, is cut by the other jump hyperplanes of the cluster into
/// finitely many open cells; the value is relevant iff the full mixed
/// multiplier ideal changes across the wall somewhere, i.e. on at least one
/// cell.
///
/// Cells are enumerated through the floor vector of the non-proportional
/// position forms; an exact margin program decides whether a floor vector
/// is realized by an open cell.
pub fn confirm_wall(ctx: &mut ClusterContext, wall_normal: &[i64], r: i64) -> Result<bool> {
    let n = ctx.data().len();
    let forms: Vec<Vec<i64>> = (0..n).map(|a| ctx.data().position_form(a)).collect();
    let canonical = ctx.data().canonical.clone();
    let support: Vec<usize> =
        (0..wall_normal.len()).filter(|&i| wall_normal[i] > 0).collect();
    if support.is_empty() {
        return Err(Error::input("wall normal must be nonzero"));
    }
    // Positions proportional to the wall have a constant value along it;
    // the rest take every floor in a bounded range.
    let mut prop: Vec<(usize, Fraction)> = Vec::new();
    let mut nonprop: Vec<usize> = Vec::new();
    for alpha in 0..n {
        if same_ray(&forms[alpha], wall_normal) {
            let i = support[0];
            let value = Fraction::new(r * forms[alpha][i], wall_normal[i]);
            prop.push((alpha, value));
        } else {
            nonprop.push(alpha);
        }
    }
    let mut ranges: Vec<i64> = Vec::new();
    for &alpha in &nonprop {
        let hi = support
            .iter()
            .map(|&i| Fraction::new(r * forms[alpha][i], wall_normal[i]))
            .max()
            .unwrap();
        ranges.push(hi.floor_i64());
    }
    let mut floors = vec![0i64; nonprop.len()];
    loop {
        if open_cell_exists(wall_normal, r, &support, &forms, &nonprop, &floors) {
            let ideal_side = |above: bool| -> ClusterIdeal {
                let mut coeffs = vec![0i64; n];
                for (&alpha, &m) in nonprop.iter().zip(&floors) {
                    coeffs[alpha] = (m - canonical[alpha]).max(0);
                }
                for (alpha, value) in &prop {
                    let fl = if value.is_integer() && !above {
                        value.left_floor()
                    } else {
                        value.floor()
                    };
                    let c = fl - num_bigint::BigInt::from(canonical[*alpha]);
                    coeffs[*alpha] =
                        i64::try_from(&c).expect("coefficient out of range").max(0);
                }
                ClusterIdeal { coeffs }
            };
            let below = ideal_side(false);
            let above = ideal_side(true);
            if below != above && ctx.colength(&below) != ctx.colength(&above) {
                return Ok(true);
            }
        }
        // Odometer over the floor vectors.
        let mut j = nonprop.len();
        loop {
            if j == 0 {
                return Ok(false);
            }
            j -= 1;
            floors[j] += 1;
            if floors[j] <= ranges[j] {
                break;
            }
            floors[j] = 0;
            if j == 0 {
                return Ok(false);
            }
        }
    }
}

/// Does the wall carry an open cell, inside the open unit hypercube,
/// realizing the given floors of the non-proportional forms?  Decided by
/// maximizing the margin `s` in `l_rho(y) = r`,
/// `m_a + s <= l_a(y) <= m_a + 1 - s`, `s <= y_i <= 1 - s` over the support
/// coordinates rescaled to the unit box.
///
/// Restricting to the hypercube keeps the wall system aligned with the
/// region where characters live: a crossing that only changes the ideal at
/// exponents beyond 1 never influences any face or count.
fn open_cell_exists(
    wall_normal: &[i64],
    r: i64,
    support: &[usize],
    forms: &[Vec<i64>],
    nonprop: &[usize],
    floors: &[i64],
) -> bool {
    use crate::exact::{BoxProgram, Rel};
    let k = support.len();
    // Variables: z_0..z_{k-1} (y_i = r z_i) and the margin s.
    let mut lp = BoxProgram::new(k + 1);
    let mut wall_row = vec![Fraction::zero(); k + 1];
    for (col, &i) in support.iter().enumerate() {
        wall_row[col] = Fraction::from_int(wall_normal[i]);
    }
    lp.add(wall_row, Rel::Eq, Fraction::one());
    for (&alpha, &m) in nonprop.iter().zip(floors) {
        let mut lo = vec![Fraction::zero(); k + 1];
        let mut hi = vec![Fraction::zero(); k + 1];
        for (col, &i) in support.iter().enumerate() {
            lo[col] = Fraction::from_int(r * forms[alpha][i]);
            hi[col] = Fraction::from_int(r * forms[alpha][i]);
        }
        lo[k] = -Fraction::one();
        hi[k] = Fraction::one();
        lp.add(lo, Rel::Ge, Fraction::from_int(m));
        lp.add(hi, Rel::Le, Fraction::from_int(m + 1));
    }
    for col in 0..k {
        // s <= y_col and y_col <= 1 - s with y_col = r z_col.
        let mut low = vec![Fraction::zero(); k + 1];
        low[col] = Fraction::from_int(r);
        low[k] = -Fraction::one();
        lp.add(low, Rel::Ge, Fraction::zero());
        let mut high = vec![Fraction::zero(); k + 1];
        high[col] = Fraction::from_int(r);
        high[k] = Fraction::one();
        lp.add(high, Rel::Le, Fraction::one());
    }
    let mut cost = vec![Fraction::zero(); k + 1];
    cost[k] = -Fraction::one();
    match lp.minimize(&cost) {
        Some(min) => min.is_negative(),
        None => false,
    }
}

/// Proportionality of nonnegative integer normals: all 2x2 minors vanish.
fn same_ray(a: &[i64], b: &[i64]) -> bool {
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if a[i] * b[j] != a[j] * b[i] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::fixtures;
    use crate::singularity::{Position, ResolutionCluster};

    fn m_fold_cluster(m: usize) -> ResolutionCluster {
        ResolutionCluster {
            positions: vec![Position { parent: None, extra: None, direction: None }],
            mult: vec![vec![1]; m],
            attachments: vec![vec![0]; m],
        }
    }

    #[test]
    fn cusp_jumping_numbers() {
        // Orders (2,3,6): the jumps are (2a+3b)/6 with a, b >= 1.
        let cluster = fixtures::cusp_cluster();
        let mut ctx = ClusterContext::new(&cluster).unwrap();
        let jumps = jumping_scan(&mut ctx, &[2, 3, 6], &Fraction::from_int(2)).unwrap();
        let mut expected = Vec::new();
        for a in 1..=6i64 {
            for b in 1..=4i64 {
                let v = Fraction::new(2 * a + 3 * b, 6);
                if v <= Fraction::from_int(2) {
                    expected.push(v);
                }
            }
        }
        expected.sort();
        expected.dedup();
        assert_eq!(jumps, expected);
        // In particular 1 is not a jumping number of this ideal.
        assert!(!jumps.contains(&Fraction::one()));
    }

    #[test]
    fn ordinary_point_jumping_numbers() {
        for m in 3..=4i64 {
            let cluster = m_fold_cluster(m as usize);
            let mut ctx = ClusterContext::new(&cluster).unwrap();
            let jumps = jumping_scan(&mut ctx, &[m], &Fraction::from_int(1)).unwrap();
            let expected: Vec<Fraction> = (2..=m).map(|k| Fraction::new(k, m)).collect();
            assert_eq!(jumps, expected);
        }
    }

    #[test]
    fn ordinary_point_relevant_values() {
        // An ordinary m-fold point has relevant values 2..m-1 in the box.
        let cluster = m_fold_cluster(4);
        let mut ctx = ClusterContext::new(&cluster).unwrap();
        let values = relevant_values(&mut ctx, 0, &Fraction::one()).unwrap();
        assert_eq!(values, vec![2, 3]);
    }

    #[test]
    fn node_has_no_relevant_values_in_box() {
        let cluster = m_fold_cluster(2);
        let mut ctx = ClusterContext::new(&cluster).unwrap();
        let values = relevant_values(&mut ctx, 0, &Fraction::one()).unwrap();
        assert!(values.is_empty());
    }

    #[test]
    fn two_germ_first_relevant_values() {
        let cluster = fixtures::two_germ_cluster();
        let mut ctx = ClusterContext::new(&cluster).unwrap();
        // Position 2 (valuations (6,6)): first values 5 and 7.
        let v2 = relevant_values(&mut ctx, 2, &Fraction::one()).unwrap();
        assert_eq!(&v2[..2], &[5, 7]);
        // Position 3 (valuations (3,6)): first values 4 and 5.
        let v3 = relevant_values(&mut ctx, 3, &Fraction::one()).unwrap();
        assert_eq!(&v3[..2], &[4, 5]);
    }

    #[test]
    fn tacnode_with_line_jumps() {
        // Valuation orders (3, 5): jumping numbers below 1 are 3/5, 4/5.
        let cluster = fixtures::tacnode_with_line_cluster();
        let mut ctx = ClusterContext::new(&cluster).unwrap();
        let jumps = jumping_scan(&mut ctx, &[3, 5], &Fraction::new(99, 100)).unwrap();
        assert_eq!(jumps, vec![Fraction::new(3, 5), Fraction::new(4, 5)]);
    }

    #[test]
    fn scan_complete_on_finer_candidate_grid() {
        // Enlarging the candidate set to every r/lcm(orders) finds no
        // further jumps: the scan is complete.
        let cluster = fixtures::two_germ_cluster();
        let mut ctx = ClusterContext::new(&cluster).unwrap();
        let orders = [4i64, 7, 12, 9];
        let bound = Fraction::one();
        let scan = jumping_scan(&mut ctx, &orders, &bound).unwrap();
        let lcm = orders.iter().copied().fold(1i64, num_integer::lcm);
        let mut fine = Vec::new();
        for r in 1..=lcm {
            let xi = Fraction::new(r, lcm);
            let at = ctx.power_ideal(&orders, &xi, false);
            let before = ctx.power_ideal(&orders, &xi, true);
            if at != before && ctx.colength(&at) != ctx.colength(&before) {
                fine.push(xi);
            }
        }
        assert_eq!(scan, fine);
    }

    #[test]
    fn seven_position_product_jumps() {
        // The two-branch example with valuation totals
        // (6,10,18,19,38,11,22): the first three jumping numbers of the
        // product ideal are 5/18, 7/18 and 8/18.
        let cluster = fixtures::seven_position_cluster();
        let data = cluster.derive().unwrap();
        assert_eq!(data.total_valuation(), vec![6, 10, 18, 19, 38, 11, 22]);
        assert_eq!(data.relevant, vec![2, 4, 6]);
        let mut ctx = ClusterContext::new(&cluster).unwrap();
        let jumps =
            jumping_scan(&mut ctx, &[6, 10, 18, 19, 38, 11, 22], &Fraction::new(1, 2)).unwrap();
        assert_eq!(
            &jumps[..3],
            &[Fraction::new(5, 18), Fraction::new(7, 18), Fraction::new(8, 18)]
        );
    }
}
