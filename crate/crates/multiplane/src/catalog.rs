//! Built-in configurations with exact coordinates and resolution data, and
//! generic line-arrangement ingestion from line coordinates.

use crate::covering::{CoveringSpec, Curve, InfinityMode, SingularPoint};
use crate::error::{Error, Result};
use crate::exact::{FieldElement, NumberField};
use crate::singularity::{Direction, Position, ResolutionCluster};

/// A line arrangement given by coefficient triples over a number field.
#[derive(Clone, Debug)]
pub struct ArrangementInput {
    pub field: NumberField,
    pub lines: Vec<(String, [FieldElement; 3])>,
}

/// Geometry of a line arrangement: all pairwise intersection points grouped
/// into singular points, each carrying a one-blowup cluster.  Points of
/// multiplicity two (nodes) are kept for completeness; they never produce
/// walls.
pub fn arrangement_geometry(input: &ArrangementInput) -> Result<Vec<SingularPoint>> {
    let k = &input.field;
    let m = input.lines.len();
    if m < 2 {
        return Err(Error::input("an arrangement needs at least two lines"));
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let c = cross(k, &input.lines[i].1, &input.lines[j].1);
            if c.iter().all(FieldElement::is_zero) {
                return Err(Error::input(format!(
                    "lines {} and {} coincide",
                    input.lines[i].0, input.lines[j].0
                )));
            }
        }
    }
    // Collect intersection points, normalized with the first nonzero
    // coordinate scaled to one.
    let mut points: Vec<([FieldElement; 3], Vec<usize>)> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let p = normalize_first(k, cross(k, &input.lines[i].1, &input.lines[j].1))?;
            if !points.iter().any(|(q, _)| *q == p) {
                let incident: Vec<usize> = (0..m)
                    .filter(|&l| eval_line(k, &input.lines[l].1, &p).is_zero())
                    .collect();
                points.push((p, incident));
            }
        }
    }
    points.sort_by_key(|a| key_of(&a.0));
    let mut out = Vec::new();
    for (idx, (coords, incident)) in points.into_iter().enumerate() {
        let mult: Vec<Vec<i64>> = (0..m)
            .map(|l| vec![if incident.contains(&l) { 1 } else { 0 }])
            .collect();
        let attachments: Vec<Vec<usize>> = (0..m)
            .map(|l| if incident.contains(&l) { vec![0] } else { vec![] })
            .collect();
        let cluster = ResolutionCluster {
            positions: vec![Position { parent: None, extra: None, direction: None }],
            mult,
            attachments,
        };
        out.push(SingularPoint { id: format!("P{}", idx + 1), coords, cluster });
    }
    Ok(out)
}

fn cross(k: &NumberField, a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        k.sub(&k.mul(&a[1], &b[2]), &k.mul(&a[2], &b[1])),
        k.sub(&k.mul(&a[2], &b[0]), &k.mul(&a[0], &b[2])),
        k.sub(&k.mul(&a[0], &b[1]), &k.mul(&a[1], &b[0])),
    ]
}

fn eval_line(k: &NumberField, line: &[FieldElement; 3], p: &[FieldElement; 3]) -> FieldElement {
    let mut acc = k.zero();
    for i in 0..3 {
        acc = k.add(&acc, &k.mul(&line[i], &p[i]));
    }
    acc
}

fn normalize_first(k: &NumberField, p: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    let lead = (0..3)
        .find(|&i| !p[i].is_zero())
        .ok_or_else(|| Error::input("degenerate intersection"))?;
    let inv = k.inv(&p[lead])?;
    Ok([k.mul(&p[0], &inv), k.mul(&p[1], &inv), k.mul(&p[2], &inv)])
}

fn key_of(p: &[FieldElement; 3]) -> String {
    format!("{}|{}|{}", p[0], p[1], p[2])
}

/// Names of the built-in configurations.
pub const BUILTINS: &[&str] = &[
    "ceva6",
    "hesse-dual",
    "hesse-pencil",
    "two-tangent-conics",
    "two-tangent-conics-pair",
    "ishida",
];

/// A built-in covering with its default group.  `n` is the cyclic order of
/// each factor of the covering group.
pub fn builtin(name: &str, n: u64) -> Result<CoveringSpec> {
    match name {
        "ceva6" => Ok(line_arrangement_covering(ceva6_input(), n)?),
        "hesse-dual" => Ok(line_arrangement_covering(hesse_dual_input(), n)?),
        "hesse-pencil" => Ok(line_arrangement_covering(hesse_pencil_input(), n)?),
        "two-tangent-conics" => Ok(two_tangent_conics_cyclic(n)),
        "two-tangent-conics-pair" => Ok(two_tangent_conics_pair(n)),
        "ishida" => ishida(),
        _ => Err(Error::input(format!(
            "unknown configuration {name}; available: {}",
            BUILTINS.join(", ")
        ))),
    }
}

/// The six lines of the complete quadrilateral on the four points
/// (1:0:0), (0:1:0), (0:0:1) and (1:1:1); opposite lines meet in the three
/// nodes and the numbering pairs them as i + j = 7.
pub fn ceva6_input() -> ArrangementInput {
    let k = NumberField::rationals();
    let f = |a: i64, b: i64, c: i64| [k.from_int(a), k.from_int(b), k.from_int(c)];
    ArrangementInput {
        field: k.clone(),
        lines: vec![
            ("C1".into(), f(1, 0, 0)),
            ("C2".into(), f(0, 1, 0)),
            ("C3".into(), f(0, 0, 1)),
            ("C4".into(), f(1, -1, 0)),
            ("C5".into(), f(1, 0, -1)),
            ("C6".into(), f(0, 1, -1)),
        ],
    }
}

/// The nine lines x = w^a y, y = w^b z, z = w^c x over the field of a cube
/// root of unity: twelve triple points, four on each line.
pub fn hesse_dual_input() -> ArrangementInput {
    let k = NumberField::omega_field();
    let w = k.generator();
    let w2 = k.mul(&w, &w);
    let pow = |a: usize| match a {
        0 => k.one(),
        1 => w.clone(),
        _ => w2.clone(),
    };
    let mut lines = Vec::new();
    for a in 0..3 {
        lines.push((format!("C{}", a + 1), [k.one(), k.neg(&pow(a)), k.zero()]));
    }
    for b in 0..3 {
        lines.push((format!("C{}", b + 4), [k.zero(), k.one(), k.neg(&pow(b))]));
    }
    for c in 0..3 {
        lines.push((format!("C{}", c + 7), [k.neg(&pow(c)), k.zero(), k.one()]));
    }
    ArrangementInput { field: k, lines }
}

/// The twelve lines of the four singular members of the pencil spanned by
/// a smooth cubic and its Hessian: nine quadruple points and twelve nodes.
pub fn hesse_pencil_input() -> ArrangementInput {
    let k = NumberField::omega_field();
    let w = k.generator();
    let w2 = k.mul(&w, &w);
    let pow = |a: usize| match a % 3 {
        0 => k.one(),
        1 => w.clone(),
        _ => w2.clone(),
    };
    let mut lines = Vec::new();
    lines.push(("C1".into(), [k.one(), k.zero(), k.zero()]));
    lines.push(("C2".into(), [k.zero(), k.one(), k.zero()]));
    lines.push(("C3".into(), [k.zero(), k.zero(), k.one()]));
    // Triangles x^3 + y^3 + z^3 - 3 lambda x y z for lambda = w^l:
    // lines x + w^b y + w^(l-b) z.
    let mut idx = 4;
    for lam in 0..3 {
        for b in 0..3 {
            let c = (3 + lam - b) % 3;
            lines.push((format!("C{idx}"), [k.one(), pow(b), pow(c)]));
            idx += 1;
        }
    }
    ArrangementInput { field: k, lines }
}

fn line_arrangement_covering(input: ArrangementInput, n: u64) -> Result<CoveringSpec> {
    if n == 0 {
        return Err(Error::input("the group order must be positive"));
    }
    let points = arrangement_geometry(&input)?;
    let m = input.lines.len();
    // The last line is the line at infinity; generators pair with the
    // remaining lines.
    let s = m - 1;
    let matrix: Vec<Vec<u64>> = (0..s)
        .map(|j| (0..m).map(|i| u64::from(i == j)).collect())
        .collect();
    let curves: Vec<Curve> =
        input.lines.iter().map(|(name, _)| Curve { name: name.clone(), degree: 1 }).collect();
    Ok(CoveringSpec {
        field: input.field,
        curves,
        points,
        orders: vec![n; s],
        matrix,
        infinity: InfinityMode::Component(m - 1),
    })
}

/// Two conics with common tangents at two points, plus the line through the
/// tangency points, as a cyclic covering branched along the conics (and the
/// line, when the degree defect is nonzero).
///
/// The conics are x^2 - yz and x^2 - 2yz, tangent at (0:0:1) and (0:1:0)
/// with the common tangents y = 0 and z = 0; the line through the tangency
/// points is x = 0.
pub fn two_tangent_conics_cyclic(n: u64) -> CoveringSpec {
    let k = NumberField::rationals();
    let curves = vec![
        Curve { name: "C".into(), degree: 4 },
        Curve { name: "H".into(), degree: 1 },
    ];
    let points = tacnode_points(&k, true);
    CoveringSpec {
        field: k,
        curves,
        points,
        orders: vec![n],
        matrix: vec![vec![1, 0]],
        infinity: InfinityMode::Component(1),
    }
}

/// The same conics with a transverse line at infinity: the covering is
/// branched along the conics only.
pub fn two_tangent_conics_transverse(n: u64) -> CoveringSpec {
    let k = NumberField::rationals();
    let curves = vec![Curve { name: "C".into(), degree: 4 }];
    let points = tacnode_points(&k, false);
    CoveringSpec {
        field: k,
        curves,
        points,
        orders: vec![n],
        matrix: vec![vec![1]],
        infinity: InfinityMode::Transverse,
    }
}

/// The two conics as separate branch curves with the group (Z/n)^2.
pub fn two_tangent_conics_pair(n: u64) -> CoveringSpec {
    let k = NumberField::rationals();
    let curves = vec![
        Curve { name: "G1".into(), degree: 2 },
        Curve { name: "G2".into(), degree: 2 },
        Curve { name: "H".into(), degree: 1 },
    ];
    let mut points = Vec::new();
    for (id, coords) in tacnode_coords(&k) {
        let cluster = ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position {
                    parent: Some(0),
                    extra: None,
                    direction: Some(Direction::Finite(k.zero())),
                },
            ],
            mult: vec![vec![1, 1], vec![1, 1], vec![1, 0]],
            attachments: vec![vec![1], vec![1], vec![0]],
        };
        points.push(SingularPoint { id, coords, cluster });
    }
    CoveringSpec {
        field: k,
        curves,
        points,
        orders: vec![n, n],
        matrix: vec![vec![1, 0, 0], vec![0, 1, 0]],
        infinity: InfinityMode::Component(2),
    }
}

fn tacnode_coords(k: &NumberField) -> Vec<(String, [FieldElement; 3])> {
    vec![
        ("P".into(), [k.from_int(0), k.from_int(0), k.from_int(1)]),
        ("Q".into(), [k.from_int(0), k.from_int(1), k.from_int(0)]),
    ]
}

fn tacnode_points(k: &NumberField, with_line: bool) -> Vec<SingularPoint> {
    tacnode_coords(k)
        .into_iter()
        .map(|(id, coords)| {
            // In both affine charts the common tangent of the conics is the
            // direction of slope zero.
            let positions = vec![
                Position { parent: None, extra: None, direction: None },
                Position {
                    parent: Some(0),
                    extra: None,
                    direction: Some(Direction::Finite(k.zero())),
                },
            ];
            let (mult, attachments) = if with_line {
                (vec![vec![2, 2], vec![1, 0]], vec![vec![1, 1], vec![0]])
            } else {
                (vec![vec![2, 2]], vec![vec![1, 1]])
            };
            let cluster = ResolutionCluster { positions, mult, attachments };
            SingularPoint { id, coords, cluster }
        })
        .collect()
}

/// The Ceva lines with the exponent matrix of the (Z/5)^3 covering whose
/// normalization has irregularity 10.
pub fn ishida() -> Result<CoveringSpec> {
    let input = ceva6_input();
    let points = arrangement_geometry(&input)?;
    let curves: Vec<Curve> =
        input.lines.iter().map(|(name, _)| Curve { name: name.clone(), degree: 1 }).collect();
    Ok(CoveringSpec {
        field: input.field,
        curves,
        points,
        orders: vec![5, 5, 5],
        matrix: vec![
            vec![0, 3, 1, 0, 0, 1],
            vec![2, 2, 0, 1, 0, 0],
            vec![1, 0, 3, 0, 1, 0],
        ],
        infinity: InfinityMode::Component(5),
    })
}

/// Cluster fixtures used across the crate's tests and the guide.
pub mod fixtures {
    use super::*;

    /// Ordinary point of multiplicity `m`: one blowup, one branch per line.
    pub fn ordinary_point_cluster(m: usize) -> ResolutionCluster {
        ResolutionCluster {
            positions: vec![Position { parent: None, extra: None, direction: None }],
            mult: vec![vec![1]; m],
            attachments: vec![vec![0]; m],
        }
    }

    /// The cusp: a free point and a satellite, orders (2,3,6).
    pub fn cusp_cluster() -> ResolutionCluster {
        ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position { parent: Some(0), extra: None, direction: None },
                Position { parent: Some(1), extra: Some(0), direction: None },
            ],
            mult: vec![vec![2, 1, 1]],
            attachments: vec![vec![2]],
        }
    }

    /// The cluster of the germ ideals (u^3, v^2) and (u^6, v^2): valuation
    /// vectors (2,3,6,3) and (2,4,6,6).
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

    /// Tacnode of two smooth tangent branches plus a transverse line:
    /// valuations (2,4) and (1,1), canonical coefficients (1,2).
    pub fn tacnode_with_line_cluster() -> ResolutionCluster {
        ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position { parent: Some(0), extra: None, direction: None },
            ],
            mult: vec![vec![2, 2], vec![1, 0]],
            attachments: vec![vec![1, 1], vec![0]],
        }
    }

    /// Two unibranch germs with valuation totals (6,10,18,19,38,11,22):
    /// the three relevant positions are the satellites.
    pub fn seven_position_cluster() -> ResolutionCluster {
        ResolutionCluster {
            positions: vec![
                Position { parent: None, extra: None, direction: None },
                Position { parent: Some(0), extra: None, direction: None },
                Position { parent: Some(1), extra: Some(0), direction: None },
                Position { parent: Some(2), extra: None, direction: None },
                Position { parent: Some(3), extra: Some(2), direction: None },
                Position { parent: Some(1), extra: None, direction: None },
                Position { parent: Some(5), extra: Some(1), direction: None },
            ],
            mult: vec![
                vec![4, 2, 2, 1, 1, 0, 0],
                vec![2, 2, 0, 0, 0, 1, 1],
            ],
            attachments: vec![vec![4], vec![6]],
        }
    }
}
