//! Exact cohomology of twisted ideal sheaves of zero-dimensional cluster
//! schemes in the projective plane: conditions matrices, colength, `h^0`
//! and `h^1`.
//!
//! A cluster scheme is realized by symbolic blowup substitution.  The
//! generic form of degree `d` is carried through the blowup charts as a
//! bivariate polynomial whose coefficients are linear forms in the unknown
//! coefficients of the form; each infinitely near point contributes the
//! vanishing of the Taylor coefficients below its required order.

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldElement, Fraction, NumberField};
use crate::singularity::{ClusterData, ClusterIdeal, Direction, ResolutionCluster};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A cluster realized at a planar point, ready for cohomology.
#[derive(Clone, Debug)]
pub struct PlanarCluster {
    pub coords: [FieldElement; 3],
    pub cluster: ResolutionCluster,
    pub data: ClusterData,
}

impl PlanarCluster {
    pub fn new(
        field: &NumberField,
        coords: [FieldElement; 3],
        cluster: ResolutionCluster,
    ) -> Result<Self> {
        let cluster = crate::singularity::with_generic_directions(&cluster, field)?;
        let data = cluster.derive()?;
        Ok(PlanarCluster { coords, cluster, data })
    }
}

/// A zero-dimensional subscheme of the plane: planar points, each carrying
/// vanishing orders along the exceptional curves of its cluster.
#[derive(Clone, Debug)]
pub struct PointScheme {
    pub field: NumberField,
    pub points: Vec<(Arc<PlanarCluster>, ClusterIdeal)>,
}

impl PointScheme {
    pub fn empty(field: NumberField) -> Self {
        PointScheme { field, points: Vec::new() }
    }

    /// Drop points whose ideal is trivial.
    pub fn pruned(mut self) -> Self {
        self.points.retain(|(_, ideal)| !ideal.is_trivial());
        self
    }

    /// Degree of the subscheme: sum of the local colengths.
    pub fn colength(&self) -> usize {
        self.points
            .iter()
            .map(|(pc, ideal)| local_colength(&self.field, pc, ideal))
            .sum()
    }

    /// Matrix of the linear conditions imposed on degree-`d` forms, in the
    /// basis of the monomials of degree `d`.
    pub fn conditions_matrix(&self, d: usize) -> Result<ExactMatrix> {
        let n = monomial_count(d);
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for (pc, ideal) in &self.points {
            let sparse = point_condition_rows(&self.field, pc, ideal, d)?;
            for row in sparse {
                let mut dense = vec![self.field.zero(); n];
                for (col, v) in row {
                    dense[col as usize] = v;
                }
                rows.push(dense);
            }
        }
        if rows.is_empty() {
            return Ok(ExactMatrix::new(self.field.clone(), 0, n));
        }
        Ok(ExactMatrix::from_rows(self.field.clone(), rows))
    }

    /// Dimension of the space of degree-`d` forms through the scheme.
    pub fn h0(&self, d: i64) -> Result<usize> {
        if d < 0 {
            return Ok(0);
        }
        let d = d as usize;
        let rank = self.conditions_matrix(d)?.rank();
        Ok(monomial_count(d) - rank)
    }

    /// `h^1` of the twisted ideal sheaf, from `h^0`, the Euler
    /// characteristic and `h^2` of the twist.
    pub fn h1(&self, d: i64) -> Result<usize> {
        if d < -3 {
            return Err(Error::input("twist below -3 is never needed"));
        }
        let h0 = self.h0(d)? as i64;
        let chi = (d + 1) * (d + 2) / 2 - self.colength() as i64;
        let h2 = if d <= -3 { (d + 1) * (d + 2) / 2 } else { 0 };
        let h1 = h0 - chi + h2;
        assert!(h1 >= 0, "negative h1: broken conditions matrix");
        Ok(h1 as usize)
    }
}

/// Number of monomials of degree `d` in three variables.
pub fn monomial_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Monomial exponents of degree `d`, in a fixed deterministic order.
pub fn monomials(d: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for a in (0..=d).rev() {
        for b in (0..=(d - a)).rev() {
            out.push((a, b, d - a - b));
        }
    }
    out
}

/// Colength of the local ideal at one planar point: rank of its conditions
/// at the safe degree `3 + sum of coefficients`.  The conditions only
/// involve monomials of degree below the largest coefficient, so the rank
/// has stabilized there.
pub fn local_colength(field: &NumberField, pc: &PlanarCluster, ideal: &ClusterIdeal) -> usize {
    if ideal.is_trivial() {
        return 0;
    }
    let total: i64 = ideal.coeffs.iter().sum();
    let d = 3 + total as usize;
    let rows = local_condition_rows(field, pc, ideal, d).expect("realizable cluster");
    sparse_rank(field, rows)
}

/// Condition rows of one point in the global monomial basis of degree `d`.
pub fn point_condition_rows(
    field: &NumberField,
    pc: &PlanarCluster,
    ideal: &ClusterIdeal,
    d: usize,
) -> Result<Vec<Row>> {
    let plan = ConditionPlan::new(&pc.cluster, ideal)?;
    if plan.is_empty() {
        return Ok(Vec::new());
    }
    let root = root_poly_at_point(field, &pc.coords, d, plan.prec[0])?;
    plan.collect(field, &pc.cluster, root)
}

#[cfg(test)]
fn local_condition_rows_direct(
    field: &NumberField,
    pc: &PlanarCluster,
    ideal: &ClusterIdeal,
    d: usize,
) -> Result<Vec<Row>> {
    let plan = ConditionPlan::with_mode(&pc.cluster, ideal, false)?;
    if plan.is_empty() {
        return Ok(Vec::new());
    }
    let root = root_poly_local(field, d, plan.prec[0]);
    plan.collect(field, &pc.cluster, root)
}

/// Condition rows in the local affine basis (monomials in the two chart
/// coordinates), used for colength computations.
fn local_condition_rows(
    field: &NumberField,
    pc: &PlanarCluster,
    ideal: &ClusterIdeal,
    d: usize,
) -> Result<Vec<Row>> {
    let plan = ConditionPlan::new(&pc.cluster, ideal)?;
    if plan.is_empty() {
        return Ok(Vec::new());
    }
    let root = root_poly_local(field, d, plan.prec[0]);
    plan.collect(field, &pc.cluster, root)
}

/// Sparse linear form in the unknown coefficients: sorted (column, value).
pub type Row = Vec<(u32, FieldElement)>;

fn row_axpy(field: &NumberField, dst: &mut Row, scalar: &FieldElement, src: &Row) {
    if scalar.is_zero() || src.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let mut i = 0;
    let mut j = 0;
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            let v = field.mul(scalar, &src[j].1);
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&dst[i].1, &field.mul(scalar, &src[j].1));
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *dst = out;
}

/// Rank of sparse rows after compacting the occupied columns.
fn sparse_rank(field: &NumberField, rows: Vec<Row>) -> usize {
    let mut cols: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.is_empty() {
        return 0;
    }
    let index: std::collections::HashMap<u32, usize> =
        cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let dense: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![field.zero(); cols.len()];
            for (c, val) in r {
                v[index[c]] = val.clone();
            }
            v
        })
        .collect();
    ExactMatrix::from_rows(field.clone(), dense).rank()
}

/// The per-position requirements and precisions of a conditions run.
struct ConditionPlan {
    /// Vanishing order required at each position (virtual multiplicities in
    /// transform mode, raw valuation coefficients in direct mode).
    req: Vec<i64>,
    /// Working precision (exclusive total-degree bound) per position.
    prec: Vec<usize>,
    /// Children of each position.
    children: Vec<Vec<usize>>,
    /// Transform mode: divide out the exceptional factor virtually at each
    /// step.  Valid when the inverse proximity recursion yields multiplicities
    /// satisfying all proximity inequalities; otherwise conditions are imposed
    /// directly on the undivided pullbacks.
    transform_mode: bool,
}

impl ConditionPlan {
    fn new(cluster: &ResolutionCluster, ideal: &ClusterIdeal) -> Result<ConditionPlan> {
        Self::with_mode(cluster, ideal, true)
    }

    fn with_mode(
        cluster: &ResolutionCluster,
        ideal: &ClusterIdeal,
        allow_transform: bool,
    ) -> Result<ConditionPlan> {
        let n = cluster.len();
        assert_eq!(ideal.coeffs.len(), n, "ideal does not match the cluster");
        if ideal.coeffs.iter().any(|&c| c < 0) {
            return Err(Error::input("negative ideal coefficient"));
        }
        let mut children = vec![Vec::new(); n];
        for alpha in 0..n {
            if let Some(p) = cluster.positions[alpha].parent {
                children[p].push(alpha);
            }
        }
        // Inverse proximity recursion.
        let mut virt = vec![0i64; n];
        for alpha in 0..n {
            let mut m = ideal.coeffs[alpha];
            for beta in cluster.proximities(alpha) {
                m -= ideal.coeffs[beta];
            }
            virt[alpha] = m;
        }
        // Proximity inequalities for the virtual multiplicities.
        let mut prox_sum = vec![0i64; n];
        for alpha in 0..n {
            for beta in cluster.proximities(alpha) {
                prox_sum[beta] += virt[alpha];
            }
        }
        let transform_mode = allow_transform
            && (0..n).all(|a| virt[a] >= 0)
            && (0..n).all(|a| virt[a] >= prox_sum[a]);
        let req = if transform_mode { virt } else { ideal.coeffs.clone() };
        // Precision: in transform mode degrees drop by the divided
        // multiplicity at each step; in direct mode they never drop.
        let mut prec = vec![0usize; n];
        for alpha in (0..n).rev() {
            let deepest = children[alpha].iter().map(|&c| prec[c]).max().unwrap_or(0);
            prec[alpha] = if transform_mode {
                req[alpha].max(0) as usize + deepest
            } else {
                (req[alpha].max(0) as usize).max(deepest)
            };
        }
        Ok(ConditionPlan { req, prec, children, transform_mode })
    }

    fn is_empty(&self) -> bool {
        self.req.iter().all(|&r| r <= 0)
    }

    /// Walk the cluster tree from the realized root polynomial, emitting
    /// condition rows.
    fn collect(
        &self,
        field: &NumberField,
        cluster: &ResolutionCluster,
        root: GenPoly,
    ) -> Result<Vec<Row>> {
        let mut rows = Vec::new();
        let mut stack = vec![(0usize, root)];
        while let Some((alpha, mut poly)) = stack.pop() {
            if self.req[alpha] > 0 {
                rows.extend(poly.rows_below(self.req[alpha] as usize));
            }
            if self.children[alpha].is_empty() {
                continue;
            }
            let divide = if self.transform_mode {
                let m = self.req[alpha].max(0) as usize;
                poly.drop_below(m);
                m
            } else {
                0
            };
            for &child in &self.children[alpha] {
                let dir = cluster.positions[child].direction.as_ref().ok_or_else(|| {
                    Error::input(format!("position {child} has no direction data"))
                })?;
                let sub = match dir {
                    Direction::Finite(t) => {
                        poly.subst_finite(field, t, divide, self.prec[child])
                    }
                    Direction::Infinity => poly.subst_infinity(field, divide, self.prec[child]),
                };
                stack.push((child, sub));
            }
        }
        Ok(rows)
    }
}

/// Bivariate polynomial in local chart coordinates whose coefficients are
/// sparse linear forms in the unknown coefficients of the generic form.
struct GenPoly {
    terms: BTreeMap<(usize, usize), Row>,
}

impl GenPoly {
    fn rows_below(&self, order: usize) -> Vec<Row> {
        self.terms
            .iter()
            .filter(|((i, j), row)| i + j < order && !row.is_empty())
            .map(|(_, row)| row.clone())
            .collect()
    }

    fn drop_below(&mut self, order: usize) {
        self.terms.retain(|(i, j), _| i + j >= order);
    }

    /// Blow up at the origin, centre the chart at the point of slope `t` on
    /// the new exceptional curve, and divide the exceptional coordinate out
    /// `divide` times: `u = x`, `v = x (y + t)`, then divide by `x^divide`.
    fn subst_finite(
        &self,
        field: &NumberField,
        t: &FieldElement,
        divide: usize,
        prec: usize,
    ) -> GenPoly {
        let mut out: BTreeMap<(usize, usize), Row> = BTreeMap::new();
        for (&(i, j), row) in &self.terms {
            debug_assert!(i + j >= divide, "virtual division must be exact");
            let x = i + j - divide;
            if x >= prec {
                continue;
            }
            // (y + t)^j expanded binomially.
            let mut tpow = field.one();
            // l runs downward so t-powers build up from t^0.
            for l in (0..=j).rev() {
                if x + l < prec {
                    let c = field.scale(&tpow, &Fraction::from(binomial(j, l)));
                    if !c.is_zero() {
                        let entry = out.entry((x, l)).or_default();
                        row_axpy(field, entry, &c, row);
                    }
                }
                if l > 0 {
                    tpow = field.mul(&tpow, t);
                }
            }
        }
        out.retain(|_, r| !r.is_empty());
        GenPoly { terms: out }
    }

    /// The chart at the vertical direction: `u = x y`, `v = y`, dividing the
    /// exceptional coordinate `y` out `divide` times.
    fn subst_infinity(&self, field: &NumberField, divide: usize, prec: usize) -> GenPoly {
        let one = field.one();
        let mut out: BTreeMap<(usize, usize), Row> = BTreeMap::new();
        for (&(i, j), row) in &self.terms {
            debug_assert!(i + j >= divide, "virtual division must be exact");
            let y = i + j - divide;
            if i + y >= prec {
                continue;
            }
            let entry = out.entry((i, y)).or_default();
            row_axpy(field, entry, &one, row);
        }
        out.retain(|_, r| !r.is_empty());
        GenPoly { terms: out }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    let k = k.min(n - k);
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    i64::try_from(num / den).expect("binomial out of range")
}

/// Root polynomial of the generic degree-`d` form expanded in the affine
/// chart at a planar point, with columns the global monomials.
fn root_poly_at_point(
    field: &NumberField,
    coords: &[FieldElement; 3],
    d: usize,
    prec: usize,
) -> Result<GenPoly> {
    let (p, _j, i1, i2) = normalize_chart(field, coords)?;
    let mut terms: BTreeMap<(usize, usize), Row> = BTreeMap::new();
    for (col, (e0, e1, e2)) in monomials(d).into_iter().enumerate() {
        let exps = [e0, e1, e2];
        let eu = exps[i1];
        let ev = exps[i2];
        // (p1 + u)^eu (p2 + v)^ev, the chart coordinate contributing 1.
        let mut pu = vec![field.one(); eu + 1];
        for a in 0..eu {
            pu[a + 1] = field.mul(&pu[a], &p[i1]);
        }
        let mut pv = vec![field.one(); ev + 1];
        for b in 0..ev {
            pv[b + 1] = field.mul(&pv[b], &p[i2]);
        }
        for a in 0..=eu {
            for b in 0..=ev {
                if a + b >= prec {
                    continue;
                }
                let c = Fraction::from_int(binomial(eu, a) * binomial(ev, b));
                let coeff = field.scale(&field.mul(&pu[eu - a], &pv[ev - b]), &c);
                if coeff.is_zero() {
                    continue;
                }
                // Columns arrive in increasing order: plain push keeps the
                // row sorted.
                terms.entry((a, b)).or_default().push((col as u32, coeff));
            }
        }
    }
    terms.retain(|_, r| !r.is_empty());
    Ok(GenPoly { terms })
}

/// Root polynomial in a local basis: one unknown per affine monomial
/// `u^a v^b`, `a + b <= d`.  Used for colength, where only the local ideal
/// matters.
fn root_poly_local(field: &NumberField, d: usize, prec: usize) -> GenPoly {
    let mut terms: BTreeMap<(usize, usize), Row> = BTreeMap::new();
    let mut col: u32 = 0;
    for a in 0..=d {
        for b in 0..=(d - a) {
            if a + b < prec {
                terms.insert((a, b), vec![(col, field.one())]);
            }
            col += 1;
        }
    }
    GenPoly { terms }
}

/// Normalize projective coordinates (last nonzero coordinate scaled to 1)
/// and pick the affine chart: returns the normalized coordinates, the chart
/// index and the two frame indices in increasing order.
pub fn normalize_chart(
    field: &NumberField,
    coords: &[FieldElement; 3],
) -> Result<([FieldElement; 3], usize, usize, usize)> {
    let j = (0..3)
        .rev()
        .find(|&i| !coords[i].is_zero())
        .ok_or_else(|| Error::input("zero projective point"))?;
    let inv = field.inv(&coords[j])?;
    let p = [
        field.mul(&coords[0], &inv),
        field.mul(&coords[1], &inv),
        field.mul(&coords[2], &inv),
    ];
    let mut frame = (0..3).filter(|&i| i != j);
    let i1 = frame.next().unwrap();
    let i2 = frame.next().unwrap();
    Ok((p, j, i1, i2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singularity::Position;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn reduced_point(field: &NumberField, x: i64, y: i64, z: i64) -> (Arc<PlanarCluster>, ClusterIdeal) {
        let cluster = ResolutionCluster {
            positions: vec![Position { parent: None, extra: None, direction: None }],
            mult: vec![vec![1]],
            attachments: vec![vec![0]],
        };
        let pc = PlanarCluster::new(
            field,
            [field.from_int(x), field.from_int(y), field.from_int(z)],
            cluster,
        )
        .unwrap();
        (Arc::new(pc), ClusterIdeal { coeffs: vec![1] })
    }

    fn fat_point(field: &NumberField, c: i64) -> (Arc<PlanarCluster>, ClusterIdeal) {
        let cluster = ResolutionCluster {
            positions: vec![Position { parent: None, extra: None, direction: None }],
            mult: vec![vec![1]],
            attachments: vec![vec![0]],
        };
        let pc = PlanarCluster::new(
            field,
            [field.from_int(0), field.from_int(0), field.from_int(1)],
            cluster,
        )
        .unwrap();
        (Arc::new(pc), ClusterIdeal { coeffs: vec![c] })
    }

    #[test]
    fn single_point_linear_conditions() {
        let field = q();
        let scheme =
            PointScheme { field: field.clone(), points: vec![reduced_point(&field, 1, 2, 1)] };
        let m = scheme.conditions_matrix(1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 3));
        assert_eq!(m.rank(), 1);
        assert_eq!(scheme.h0(1).unwrap(), 2);
    }

    #[test]
    fn double_point_kills_lines() {
        let field = q();
        let scheme = PointScheme { field: field.clone(), points: vec![fat_point(&field, 2)] };
        // Three conditions on the three coefficients of a line.
        let m = scheme.conditions_matrix(1).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(scheme.h0(1).unwrap(), 0);
    }

    #[test]
    fn fat_point_colength() {
        let field = q();
        for c in 1..=5 {
            let scheme = PointScheme { field: field.clone(), points: vec![fat_point(&field, c)] };
            assert_eq!(scheme.colength(), (c * (c + 1) / 2) as usize);
        }
    }

    #[test]
    fn distinct_points_colength() {
        let field = q();
        let pts = vec![
            reduced_point(&field, 0, 0, 1),
            reduced_point(&field, 1, 0, 1),
            reduced_point(&field, 0, 1, 1),
            reduced_point(&field, 1, 1, 1),
        ];
        let scheme = PointScheme { field: field.clone(), points: pts };
        assert_eq!(scheme.colength(), 4);
    }

    #[test]
    fn point_at_minus_one_twist() {
        let field = q();
        let scheme =
            PointScheme { field: field.clone(), points: vec![reduced_point(&field, 1, 2, 1)] };
        assert_eq!(scheme.h1(-1).unwrap(), 1);
        assert_eq!(scheme.h1(0).unwrap(), 0);
    }

    #[test]
    fn empty_scheme_canonical_twist() {
        let field = q();
        let scheme = PointScheme::empty(field);
        assert_eq!(scheme.h1(-3).unwrap(), 0);
    }

    #[test]
    fn tangent_direction_conditions() {
        // A point plus an infinitely near point in the direction of slope 0
        // at (0:0:1): lines through it must be the horizontal tangent.
        let field = q();
        let cluster = ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position {
                    parent: Some(0),
                    extra: None,
                    direction: Some(Direction::Finite(field.zero())),
                },
            ],
            mult: vec![vec![1, 1]],
            attachments: vec![vec![1]],
        };
        let pc = PlanarCluster::new(
            &field,
            [field.from_int(0), field.from_int(0), field.from_int(1)],
            cluster,
        )
        .unwrap();
        let ideal = ClusterIdeal { coeffs: vec![1, 2] };
        let scheme =
            PointScheme { field: field.clone(), points: vec![(Arc::new(pc), ideal.clone())] };
        // v2 >= 2 is a colength-2 condition: pass through the point with
        // prescribed tangent.
        assert_eq!(scheme.colength(), 2);
        // Lines: a*x + b*y + c*z with c = 0 (through the point) and the
        // tangent condition kills a; h0 = 1 (the line y = 0).
        assert_eq!(scheme.h0(1).unwrap(), 1);
    }

    #[test]
    fn transform_and_direct_modes_agree() {
        // On ideals satisfying the proximity inequalities the virtual
        // transform route and the direct order-of-vanishing route span the
        // same conditions.
        let field = q();
        let cluster = crate::catalog::fixtures::two_germ_cluster();
        let pc = PlanarCluster::new(
            &field,
            [field.from_int(0), field.from_int(0), field.from_int(1)],
            cluster,
        )
        .unwrap();
        // Coefficient vectors from multiplicities satisfying the proximity
        // inequalities: c(a) = m(a) + sum over proximities.
        for m in [[1i64, 0, 0, 0], [2, 1, 1, 0], [2, 2, 0, 2], [3, 2, 1, 1]] {
            let mut coeffs = vec![0i64; 4];
            for alpha in 0..4 {
                let mut c = m[alpha];
                for beta in pc.cluster.proximities(alpha) {
                    c += coeffs[beta];
                }
                coeffs[alpha] = c;
            }
            let ideal = ClusterIdeal { coeffs };
            let total: i64 = ideal.coeffs.iter().sum();
            let d = (3 + total) as usize;
            let via_transform = local_condition_rows(&field, &pc, &ideal, d).unwrap();
            let via_direct = local_condition_rows_direct(&field, &pc, &ideal, d).unwrap();
            let rank_t = sparse_rank(&field, via_transform);
            let rank_d = sparse_rank(&field, via_direct);
            assert_eq!(rank_t, rank_d, "m = {m:?}");
            // Proximity-consistent clusters impose independent conditions.
            let expect: i64 = m.iter().map(|&mi| mi * (mi + 1) / 2).sum();
            assert_eq!(rank_t as i64, expect, "m = {m:?}");
        }
    }

    #[test]
    fn inconsistent_coefficients_direct_mode() {
        // {v2 >= 1} with nothing at the root is the reduced point.
        let field = q();
        let cluster = ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position {
                    parent: Some(0),
                    extra: None,
                    direction: Some(Direction::Finite(field.zero())),
                },
            ],
            mult: vec![vec![1, 1]],
            attachments: vec![vec![1]],
        };
        let pc = PlanarCluster::new(
            &field,
            [field.from_int(0), field.from_int(0), field.from_int(1)],
            cluster,
        )
        .unwrap();
        let ideal = ClusterIdeal { coeffs: vec![0, 1] };
        let scheme = PointScheme { field: field.clone(), points: vec![(Arc::new(pc), ideal)] };
        assert_eq!(scheme.colength(), 1);
        assert_eq!(scheme.h0(1).unwrap(), 2);
    }
}
