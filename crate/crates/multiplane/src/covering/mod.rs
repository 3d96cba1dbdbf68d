//! Abelian coverings of the projective plane and their irregularity,
//! computed by three mutually checking methods: a direct character sum, the
//! distinguished-face formula, and its specialization to line arrangements
//! with only triple points.

pub mod building;
mod sweep;

use crate::cohomology::{PlanarCluster, PointScheme};
use crate::counting::CharacterGrid;
use crate::error::{Error, Result};
use crate::exact::{Fraction, NumberField};
use crate::jumping::ClusterContext;
use crate::singularity::{ClusterIdeal, ResolutionCluster};
use crate::walls::{all_walls, JumpingWall};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// A curve of the branch configuration.
#[derive(Clone, Debug)]
pub struct Curve {
    pub name: String,
    pub degree: i64,
}

/// Position of the line at infinity relative to the branch curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinityMode {
    /// A generic line transverse to the branch curve.
    Transverse,
    /// The line at infinity is the listed curve with this index (a line
    /// through at least one singular point, possibly itself branched).
    Component(usize),
}

/// One singular point of the configuration with its resolution cluster;
/// the cluster's multiplicity rows are indexed by the global curve list.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub id: String,
    pub coords: [crate::exact::FieldElement; 3],
    pub cluster: ResolutionCluster,
}

/// The data of a standard abelian covering of the plane.
#[derive(Clone, Debug)]
pub struct CoveringSpec {
    pub field: NumberField,
    pub curves: Vec<Curve>,
    pub points: Vec<SingularPoint>,
    pub orders: Vec<u64>,
    /// Exponent matrix, one row per group generator over the curves.
    pub matrix: Vec<Vec<u64>>,
    pub infinity: InfinityMode,
}

/// Computation options shared by the irregularity methods.
#[derive(Clone, Debug)]
pub struct ComputeOptions {
    /// Largest character group swept exhaustively by the face method.
    pub sweep_threshold: u128,
    /// Strategy switch for per-cell counting.
    pub enumerate_threshold: u128,
    /// Face-closure budget.
    pub face_budget: usize,
    /// Cap on worker threads (None: library default).
    pub threads: Option<usize>,
    /// Emit a per-character trace for the direct method up to this size.
    pub trace_limit: u128,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            sweep_threshold: 100_000_000,
            enumerate_threshold: 10_000_000,
            face_budget: 200_000,
            threads: None,
            trace_limit: 5_000,
        }
    }
}

/// A covering normalized for computation: the exponent matrix with the
/// infinity correction absorbed, realized clusters, and the wall system.
pub struct EffectiveCovering {
    pub field: NumberField,
    pub curves: Vec<Curve>,
    pub grid: CharacterGrid,
    pub degrees: Vec<i64>,
    /// Characters with non-integral height are skipped (transverse mode);
    /// in component mode every character has integral height.
    pub transverse: bool,
    pub planar: Vec<Arc<PlanarCluster>>,
    pub point_ids: Vec<String>,
    pub walls: Vec<JumpingWall>,
    pub warnings: Vec<String>,
}

impl CoveringSpec {
    pub fn effective(&self) -> Result<EffectiveCovering> {
        let t = self.curves.len();
        let s = self.orders.len();
        if t == 0 {
            return Err(Error::input("no curves"));
        }
        if self.curves.iter().any(|c| c.degree <= 0) {
            return Err(Error::input("curve degrees must be positive"));
        }
        if self.matrix.len() != s || self.matrix.iter().any(|r| r.len() != t) {
            return Err(Error::input("exponent matrix shape mismatch"));
        }
        for p in &self.points {
            if p.cluster.curves() != t {
                return Err(Error::input(format!(
                    "point {}: cluster covers {} curves, configuration has {t}",
                    p.id,
                    p.cluster.curves()
                )));
            }
            if p.cluster.mult.iter().all(|row| row[0] == 0) {
                return Err(Error::input(format!(
                    "point {} lies on no listed curve",
                    p.id
                )));
            }
        }
        // Planar points must be honest distinct projective points.
        let mut normalized = Vec::new();
        for p in &self.points {
            let (coords, _, _, _) = crate::cohomology::normalize_chart(&self.field, &p.coords)
                .map_err(|_| Error::input(format!("point {}: zero coordinates", p.id)))?;
            if normalized.contains(&coords) {
                return Err(Error::input(format!(
                    "point {} coincides with an earlier singular point",
                    p.id
                )));
            }
            normalized.push(coords);
        }
        let degrees: Vec<i64> = self.curves.iter().map(|c| c.degree).collect();
        // Degree defect of each generator relative to its order.
        let defects: Vec<u64> = (0..s)
            .map(|j| {
                let sum: i64 =
                    (0..t).map(|i| self.matrix[j][i] as i64 * degrees[i]).sum();
                let n = self.orders[j] as i64;
                (((sum + n - 1) / n) * n - sum) as u64
            })
            .collect();
        let mut matrix = self.matrix.clone();
        let mut transverse = true;
        match self.infinity {
            InfinityMode::Transverse => {}
            InfinityMode::Component(h) => {
                transverse = false;
                if h >= t {
                    return Err(Error::input("infinity curve index out of range"));
                }
                if self.curves[h].degree != 1 {
                    return Err(Error::input("the line at infinity must have degree 1"));
                }
                if !self.points.iter().any(|p| p.cluster.mult[h][0] > 0) {
                    return Err(Error::input(
                        "the line at infinity passes through no singular point; \
                         use the transverse mode",
                    ));
                }
                for j in 0..s {
                    matrix[j][h] += defects[j];
                }
                let branched =
                    (0..s).any(|j| !matrix[j][h].is_multiple_of(self.orders[j]));
                if !branched {
                    return Err(Error::unsupported(
                        "non-transverse covering unbranched along the line at \
                         infinity; rerun with a transverse line at infinity",
                    ));
                }
                // With the correction absorbed every character has integral
                // height.
                for j in 0..s {
                    let sum: i64 = (0..t).map(|i| matrix[j][i] as i64 * degrees[i]).sum();
                    assert_eq!(
                        sum % self.orders[j] as i64,
                        0,
                        "infinity correction must close the degree relation"
                    );
                }
            }
        }
        let grid = CharacterGrid::new(self.orders.clone(), matrix)?;
        let mut warnings = Vec::new();
        let mut shared = self.orders.iter().copied().fold(0, num_integer::gcd);
        for row in &grid.matrix {
            for &v in row {
                if v != 0 {
                    shared = num_integer::gcd(shared, v);
                }
            }
        }
        if shared > 1 {
            warnings.push(format!(
                "all exponents and orders share the factor {shared}: the covering \
                 may be disconnected and the result applies to each component"
            ));
        }
        let mut planar = Vec::new();
        let mut point_ids = Vec::new();
        for p in &self.points {
            planar.push(Arc::new(PlanarCluster::new(
                &self.field,
                p.coords.clone(),
                p.cluster.clone(),
            )?));
            point_ids.push(p.id.clone());
        }
        let mut contexts: Vec<ClusterContext> = self
            .points
            .iter()
            .map(|p| ClusterContext::new(&p.cluster))
            .collect::<Result<_>>()?;
        let walls = all_walls(&mut contexts, t)?;
        Ok(EffectiveCovering {
            field: self.field.clone(),
            curves: self.curves.clone(),
            grid,
            degrees,
            transverse,
            planar,
            point_ids,
            walls,
            warnings,
        })
    }
}

/// Memoized cohomology of the twisted multiplier-ideal schemes.
pub struct CohomologyCache {
    field: NumberField,
    planar: Vec<Arc<PlanarCluster>>,
    h1: HashMap<(i64, Vec<(usize, Vec<i64>)>), u64>,
}

impl CohomologyCache {
    pub fn new(eff: &EffectiveCovering) -> Self {
        CohomologyCache { field: eff.field.clone(), planar: eff.planar.clone(), h1: HashMap::new() }
    }

    /// Signature of the multiplier-ideal scheme at a grid point given by
    /// the scaled exponents `c / big_n`.
    pub fn scheme_signature(&self, c: &[i64], big_n: i64) -> Vec<(usize, Vec<i64>)> {
        let mut sig = Vec::new();
        for (idx, pc) in self.planar.iter().enumerate() {
            let ideal = pc.data.mixed_mi_scaled(c, big_n, Some(&pc.data.relevant));
            if !ideal.is_trivial() {
                sig.push((idx, ideal.coeffs));
            }
        }
        sig
    }

    pub fn h1(&mut self, twist: i64, sig: Vec<(usize, Vec<i64>)>) -> Result<u64> {
        if let Some(&v) = self.h1.get(&(twist, sig.clone())) {
            return Ok(v);
        }
        let scheme = PointScheme {
            field: self.field.clone(),
            points: sig
                .iter()
                .map(|(idx, coeffs)| {
                    (self.planar[*idx].clone(), ClusterIdeal { coeffs: coeffs.clone() })
                })
                .collect(),
        };
        let v = scheme.h1(twist)? as u64;
        self.h1.insert((twist, sig), v);
        Ok(v)
    }
}

/// Irregularity computation method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Faces,
    Triple,
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Faces => "faces",
            Method::Triple => "triple",
            Method::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub count: u64,
    pub h1: u64,
    pub representative: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    pub height: i64,
    /// Walls containing the face, as `(normal, rhs)` display strings.
    pub walls: Vec<String>,
    pub zero_coordinates: Vec<String>,
    pub cells: Vec<CellReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharTrace {
    pub character: Vec<u64>,
    pub height: String,
    pub h1: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrregularityReport {
    pub q: u64,
    pub method: String,
    pub characters: String,
    pub elapsed_ms: u128,
    pub faces: Vec<FaceReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<CharTrace>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// The direct method: the irregularity as a sum of superabundances over
/// every character of the covering group, following the eigensheaf
/// decomposition term by term.  No wall or face theory enters.
pub fn irregularity_direct(
    eff: &EffectiveCovering,
    opts: &ComputeOptions,
) -> Result<IrregularityReport> {
    let total = eff.grid.character_count();
    let big_n = eff.grid.lcm_order() as i64;
    let t = eff.grid.curves();
    let s = eff.grid.generators();
    let mut cache = CohomologyCache::new(eff);
    let mut q: u64 = 0;
    let mut trace = Vec::new();
    let keep_trace = total <= opts.trace_limit;

    // Incremental odometer over the characters with the scaled image
    // maintained exactly: bumping generator j adds its weight column.
    let weights: Vec<Vec<i64>> = (0..s)
        .map(|j| {
            (0..t)
                .map(|i| {
                    ((eff.grid.matrix[j][i] as u128 * (big_n as u64 / eff.grid.orders[j]) as u128)
                        % big_n as u128) as i64
                })
                .collect()
        })
        .collect();
    let mut a = vec![0u64; s];
    let mut c = vec![0i64; t];
    let mut processed: u128 = 0;
    loop {
        let h_num: i64 = (0..t).map(|i| eff.degrees[i] * c[i]).sum();
        if !(eff.transverse && h_num % big_n != 0) {
            let h = h_num / big_n;
            let sig = cache.scheme_signature(&c, big_n);
            let h1 = cache.h1(-3 + h, sig)?;
            q += h1;
            if keep_trace && h1 > 0 {
                trace.push(CharTrace {
                    character: a.clone(),
                    height: h.to_string(),
                    h1,
                });
            }
        }
        processed += 1;
        if processed == total {
            break;
        }
        let mut j = s;
        loop {
            debug_assert!(j > 0);
            j -= 1;
            for i in 0..t {
                c[i] += weights[j][i];
                if c[i] >= big_n {
                    c[i] -= big_n;
                }
            }
            a[j] += 1;
            if a[j] < eff.grid.orders[j] {
                break;
            }
            a[j] = 0;
        }
    }
    Ok(IrregularityReport {
        q,
        method: "direct".into(),
        characters: total.to_string(),
        elapsed_ms: 0,
        faces: Vec::new(),
        trace,
        warnings: eff.warnings.clone(),
    })
}

/// The face method: the irregularity as a sum over distinguished faces and
/// their cells of the character count times the superabundance of the
/// twisted multiplier-ideal scheme.
pub fn irregularity_faces(
    eff: &EffectiveCovering,
    opts: &ComputeOptions,
) -> Result<IrregularityReport> {
    if eff.grid.character_count() <= opts.sweep_threshold {
        sweep::sweep_faces(eff, opts, sweep::SweepMode::Faces)
    } else {
        closure_faces(eff, opts)
    }
}

/// The specialization to line arrangements with only triple points: every
/// scheme is a reduced set of triple points and the height of a
/// contributing face is two thirds of the degree of its subarrangement.
pub fn irregularity_triple(
    eff: &EffectiveCovering,
    opts: &ComputeOptions,
) -> Result<IrregularityReport> {
    if eff.curves.iter().any(|c| c.degree != 1) {
        return Err(Error::unsupported(
            "the triple-point method needs a line arrangement; use the face method",
        ));
    }
    for (planar, id) in eff.planar.iter().zip(&eff.point_ids) {
        let mult: i64 = planar.cluster.mult.iter().map(|row| row[0]).sum();
        if mult >= 4 {
            return Err(Error::unsupported(format!(
                "point {id} has multiplicity {mult}; use the face method"
            )));
        }
    }
    if eff.grid.orders.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::unsupported(
            "the triple-point method needs a group with equal cyclic orders",
        ));
    }
    if eff.grid.character_count() > opts.sweep_threshold {
        return Err(Error::budget("character group too large for the triple-point method"));
    }
    sweep::sweep_faces(eff, opts, sweep::SweepMode::Triple)
}

/// Closure-based face method for character groups too large to sweep:
/// enumerate the face lattice, keep distinguished faces of integral
/// height, and count each cell through the face grid.
fn closure_faces(eff: &EffectiveCovering, opts: &ComputeOptions) -> Result<IrregularityReport> {
    let t = eff.grid.curves();
    let faces = crate::walls::faces(&eff.walls, &eff.degrees, t, opts.face_budget)?;
    let pivots = eff.grid.identity_pivots().ok_or_else(|| {
        Error::budget(
            "character group too large for enumeration and the exponent matrix has \
             no identity submatrix for face-parametrized counting",
        )
    })?;
    let big_n = eff.grid.lcm_order();
    let mut cache = CohomologyCache::new(eff);
    let mut q = 0u64;
    let mut reports = Vec::new();
    for face in &faces {
        if !face.distinguished || face.walls.is_empty() {
            continue;
        }
        let Some(height) = face.integer_height() else { continue };
        let points = crate::counting::face_grid_points(face, t, big_n, opts.enumerate_threshold)?;
        // Keep the points whose carrier is exactly this face (no zero signs)
        // and that are images of characters.
        let mut cells: HashMap<Vec<i8>, (u64, Vec<Fraction>)> = HashMap::new();
        for x in points {
            let c: Vec<i64> = x
                .iter()
                .map(|v| (v * &Fraction::from_int(big_n as i64)).floor_i64())
                .collect();
            if eff.grid.preimage(&c, big_n, &pivots).is_none() {
                continue;
            }
            let signs = crate::counting::sign_vector(face, &eff.walls, t, &x);
            if signs.contains(&0) {
                continue;
            }
            cells
                .entry(signs)
                .and_modify(|(count, rep)| {
                    *count += 1;
                    if x < *rep {
                        *rep = x.clone();
                    }
                })
                .or_insert((1, x));
        }
        if cells.is_empty() {
            continue;
        }
        let mut cell_reports = Vec::new();
        let mut sorted: Vec<_> = cells.into_values().collect();
        sorted.sort_by(|a, b| a.1.cmp(&b.1));
        for (count, rep) in sorted {
            let c: Vec<i64> = rep
                .iter()
                .map(|v| (v * &Fraction::from_int(big_n as i64)).floor_i64())
                .collect();
            let sig = cache.scheme_signature(&c, big_n as i64);
            let h1 = cache.h1(-3 + height, sig)?;
            q += count * h1;
            cell_reports.push(CellReport {
                count,
                h1,
                representative: rep.iter().map(|f| f.to_string()).collect(),
            });
        }
        reports.push(FaceReport {
            height,
            walls: face
                .walls
                .iter()
                .map(|&w| describe_wall(&eff.walls[w], &eff.curves))
                .collect(),
            zero_coordinates: face.zeros.iter().map(|&i| eff.curves[i].name.clone()).collect(),
            cells: cell_reports,
        });
    }
    reports.sort_by_key(|a| (a.height, a.walls.clone()));
    Ok(IrregularityReport {
        q,
        method: "faces".into(),
        characters: eff.grid.character_count().to_string(),
        elapsed_ms: 0,
        faces: reports,
        trace: Vec::new(),
        warnings: eff.warnings.clone(),
    })
}

pub fn describe_wall(wall: &JumpingWall, curves: &[Curve]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in wall.normal.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(format!("x[{}]", curves[i].name));
        } else {
            parts.push(format!("{e} x[{}]", curves[i].name));
        }
    }
    format!("{} = {}", parts.join(" + "), wall.rhs)
}

/// Run the requested method, or every applicable one, comparing results
/// exactly and failing loudly on disagreement.
pub fn irregularity(
    eff: &EffectiveCovering,
    method: Method,
    opts: &ComputeOptions,
) -> Result<IrregularityReport> {
    let start = std::time::Instant::now();
    let mut report = irregularity_inner(eff, method, opts)?;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn irregularity_inner(
    eff: &EffectiveCovering,
    method: Method,
    opts: &ComputeOptions,
) -> Result<IrregularityReport> {
    match method {
        Method::Direct => irregularity_direct(eff, opts),
        Method::Faces => irregularity_faces(eff, opts),
        Method::Triple => irregularity_triple(eff, opts),
        Method::All => {
            let faces = irregularity_faces(eff, opts)?;
            let mut results: Vec<(String, u64)> = vec![("faces".into(), faces.q)];
            if eff.grid.character_count() <= opts.enumerate_threshold {
                let direct = irregularity_direct(eff, opts)?;
                results.push(("direct".into(), direct.q));
            }
            match irregularity_triple(eff, opts) {
                Ok(triple) => results.push(("triple".into(), triple.q)),
                Err(Error::Unsupported(_)) => {}
                Err(e) => return Err(e),
            }
            let q0 = results[0].1;
            if results.iter().any(|(_, q)| *q != q0) {
                let detail: Vec<String> =
                    results.iter().map(|(m, q)| format!("{m}: {q}")).collect();
                return Err(Error::unsupported(format!(
                    "irregularity methods disagree ({}); this is a bug",
                    detail.join(", ")
                )));
            }
            let mut merged = faces;
            merged.method = format!(
                "all ({})",
                results.iter().map(|(m, _)| m.clone()).collect::<Vec<_>>().join(", ")
            );
            Ok(merged)
        }
    }
}

/// Cross-check for transverse cyclic coverings: the irregularity as a sum
/// over the jumping numbers of the branch curve in `(0,1)` whose height is
/// integral and whose denominator divides the group order.
pub fn cyclic_transverse_q_via_jumps(eff: &EffectiveCovering) -> Result<u64> {
    if !eff.transverse || eff.grid.generators() != 1 || eff.grid.curves() != 1 {
        return Err(Error::input("the jumping-number form needs a transverse cyclic covering"));
    }
    let n = eff.grid.orders[0] as i64;
    let d = eff.degrees[0];
    let mut cache = CohomologyCache::new(eff);
    // Jumping numbers of the branch curve: scan each singular point.
    let mut jumps: Vec<Fraction> = Vec::new();
    for planar in &eff.planar {
        let mut ctx = ClusterContext::new(&planar.cluster)?;
        let orders = ctx.data().total_valuation();
        let found = crate::jumping::jumping_scan(
            &mut ctx,
            &orders,
            &Fraction::new(99, 100),
        )?;
        jumps.extend(found);
    }
    jumps.sort();
    jumps.dedup();
    let mut q = 0u64;
    let big_n = num_integer::lcm(n, d);
    for xi in jumps {
        let nd = (&xi * &Fraction::from_int(n)).is_integer()
            && (&xi * &Fraction::from_int(d)).is_integer();
        if !nd {
            continue;
        }
        let height = (&xi * &Fraction::from_int(d)).floor_i64();
        let c: Vec<i64> = vec![(&xi * &Fraction::from_int(big_n)).floor_i64()];
        let sig = cache.scheme_signature(&c, big_n);
        q += cache.h1(-3 + height, sig)?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn duplicate_points_rejected() {
        let mut spec = catalog::two_tangent_conics_cyclic(5);
        spec.points[1].coords = spec.points[0].coords.clone();
        assert!(matches!(spec.effective(), Err(Error::Input(_))));
    }

    #[test]
    fn zero_point_rejected() {
        let mut spec = catalog::two_tangent_conics_cyclic(5);
        let zero = spec.field.zero();
        spec.points[0].coords = [zero.clone(), zero.clone(), zero];
        assert!(matches!(spec.effective(), Err(Error::Input(_))));
    }

    #[test]
    fn matrix_shape_validated() {
        let mut spec = catalog::two_tangent_conics_cyclic(5);
        spec.matrix = vec![vec![1]];
        assert!(spec.effective().is_err());
    }
}
