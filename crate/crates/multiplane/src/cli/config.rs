//! The JSON configuration format: parsing into a covering and echoing a
//! covering back out, so that reported configurations round-trip.

use crate::covering::{CoveringSpec, Curve, InfinityMode, SingularPoint};
use crate::error::{Error, Result};
use crate::exact::{FieldElement, Fraction, NumberField};
use crate::singularity::{Direction, Position, ResolutionCluster};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::str::FromStr;

pub fn parse_config(text: &str) -> Result<CoveringSpec> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::input(format!("config JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| Error::input("config must be an object"))?;

    let field = match obj.get("field") {
        None | Some(Value::Null) => NumberField::rationals(),
        Some(f) => {
            let poly = f
                .get("minimal_polynomial")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::input("field.minimal_polynomial must be an array"))?;
            let coeffs: Result<Vec<i64>> = poly
                .iter()
                .map(|v| v.as_i64().ok_or_else(|| Error::input("polynomial coefficients must be integers")))
                .collect();
            NumberField::new(coeffs?)?
        }
    };

    // Curves, then lines, in listed order.
    let mut curves: Vec<Curve> = Vec::new();
    if let Some(list) = obj.get("curves").and_then(Value::as_array) {
        for c in list {
            let name = req_str(c, "name")?;
            let degree = c
                .get("degree")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::input(format!("curve {name}: missing degree")))?;
            curves.push(Curve { name, degree });
        }
    }
    let mut line_data: Vec<(String, [FieldElement; 3])> = Vec::new();
    if let Some(list) = obj.get("lines").and_then(Value::as_array) {
        for l in list {
            let name = req_str(l, "name")?;
            let coeffs = l
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::input(format!("line {name}: missing coeffs")))?;
            if coeffs.len() != 3 {
                return Err(Error::input(format!("line {name}: need three coefficients")));
            }
            let e = [
                parse_element(&field, &coeffs[0])?,
                parse_element(&field, &coeffs[1])?,
                parse_element(&field, &coeffs[2])?,
            ];
            curves.push(Curve { name: name.clone(), degree: 1 });
            line_data.push((name, e));
        }
    }
    if curves.is_empty() {
        return Err(Error::input("no curves or lines"));
    }
    let curve_index = |name: &str| -> Result<usize> {
        curves
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::input(format!("unknown curve {name}")))
    };

    // Explicit singular points.
    let mut points: Vec<SingularPoint> = Vec::new();
    if let Some(list) = obj.get("singular_points").and_then(Value::as_array) {
        for p in list {
            let id = req_str(p, "id")?;
            let coords_v = p
                .get("coords")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::input(format!("point {id}: missing coords")))?;
            if coords_v.len() != 3 {
                return Err(Error::input(format!("point {id}: need three coordinates")));
            }
            let coords = [
                parse_element(&field, &coords_v[0])?,
                parse_element(&field, &coords_v[1])?,
                parse_element(&field, &coords_v[2])?,
            ];
            let cluster_v = p
                .get("cluster")
                .ok_or_else(|| Error::input(format!("point {id}: missing cluster")))?;
            let cluster = parse_cluster(&field, cluster_v, &curves, &curve_index, &id)?;
            points.push(SingularPoint { id, coords, cluster });
        }
    }

    // Line-generated geometry for the configured lines, widened to the full
    // curve list.
    if line_data.len() >= 2 {
        let input = crate::catalog::ArrangementInput { field: field.clone(), lines: line_data };
        let auto = crate::catalog::arrangement_geometry(&input)?;
        let offset = curves.len() - input.lines.len();
        for ap in auto {
            if points.iter().any(|p| p.coords == ap.coords) {
                return Err(Error::input(format!(
                    "auto-generated line intersection {} coincides with an explicit \
                     singular point; fold the lines into that point's cluster instead",
                    ap.id
                )));
            }
            let mut mult = vec![vec![0i64; ap.cluster.len()]; curves.len()];
            let mut attachments = vec![Vec::new(); curves.len()];
            for (l, row) in ap.cluster.mult.iter().enumerate() {
                mult[offset + l] = row.clone();
                attachments[offset + l] = ap.cluster.attachments[l].clone();
            }
            points.push(SingularPoint {
                id: ap.id,
                coords: ap.coords,
                cluster: ResolutionCluster { positions: ap.cluster.positions, mult, attachments },
            });
        }
    }

    let covering = obj
        .get("covering")
        .ok_or_else(|| Error::input("missing covering section"))?;
    let orders: Vec<u64> = covering
        .get("orders")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("covering.orders must be an array"))?
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| Error::input("orders must be positive integers")))
        .collect::<Result<_>>()?;
    let matrix: Vec<Vec<u64>> = covering
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("covering.matrix must be an array of rows"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::input("matrix rows must be arrays"))?
                .iter()
                .map(|v| v.as_u64().ok_or_else(|| Error::input("matrix entries must be non-negative integers")))
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<_>>()?;
    let infinity = match covering.get("infinity") {
        None | Some(Value::Null) => InfinityMode::Transverse,
        Some(v) => match v.get("mode").and_then(Value::as_str) {
            Some("transverse") => InfinityMode::Transverse,
            Some("component") => {
                let name = v
                    .get("curve")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::input("infinity.component needs a curve name"))?;
                InfinityMode::Component(curve_index(name)?)
            }
            _ => return Err(Error::input("infinity.mode must be transverse or component")),
        },
    };

    Ok(CoveringSpec { field, curves, points, orders, matrix, infinity })
}

fn req_str(v: &Value, key: &str) -> Result<String> {
    v.get(key)
        .and_then(Value::as_str)
        .map(str::to_owned)
        .ok_or_else(|| Error::input(format!("missing string field {key}")))
}

fn parse_cluster(
    field: &NumberField,
    v: &Value,
    curves: &[Curve],
    curve_index: &dyn Fn(&str) -> Result<usize>,
    point_id: &str,
) -> Result<ResolutionCluster> {
    let list = v
        .get("positions")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input(format!("point {point_id}: cluster.positions missing")))?;
    // Positions are referenced by their listed ids.
    let ids: Vec<i64> = list
        .iter()
        .map(|p| {
            p.get("id")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::input(format!("point {point_id}: position without id")))
        })
        .collect::<Result<_>>()?;
    let pos_index = |id: i64| -> Result<usize> {
        ids.iter()
            .position(|&x| x == id)
            .ok_or_else(|| Error::input(format!("point {point_id}: unknown position id {id}")))
    };
    let mut positions = Vec::new();
    let mut mult = vec![vec![0i64; list.len()]; curves.len()];
    for (alpha, p) in list.iter().enumerate() {
        let parent = match p.get("parent") {
            None | Some(Value::Null) => None,
            Some(v) => Some(pos_index(
                v.as_i64().ok_or_else(|| Error::input("parent must be a position id"))?,
            )?),
        };
        let extra = match p.get("extra_proximity") {
            None | Some(Value::Null) => None,
            Some(v) => Some(pos_index(
                v.as_i64().ok_or_else(|| Error::input("extra_proximity must be a position id"))?,
            )?),
        };
        let direction = match p.get("direction") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) if s == "infinity" => Some(Direction::Infinity),
            Some(v) => Some(Direction::Finite(parse_element(field, v)?)),
        };
        positions.push(Position { parent, extra, direction });
        if let Some(m) = p.get("multiplicities").and_then(Value::as_object) {
            for (name, val) in m {
                let i = curve_index(name)?;
                mult[i][alpha] = val
                    .as_i64()
                    .ok_or_else(|| Error::input("multiplicities must be integers"))?;
            }
        }
    }
    let cluster = ResolutionCluster { positions, mult, attachments: vec![Vec::new(); curves.len()] };
    derive_attachments(cluster, point_id)
}

/// For a complete log resolution of a reduced configuration, the number of
/// branches of a curve attaching at a position is the proximity slack
/// `m(alpha) - sum of m over positions proximate to alpha`.
pub fn derive_attachments(
    mut cluster: ResolutionCluster,
    point_id: &str,
) -> Result<ResolutionCluster> {
    let n = cluster.len();
    let mut attachments = Vec::new();
    for row in &cluster.mult {
        let mut branch_points = Vec::new();
        for alpha in 0..n {
            let mut slack = row[alpha];
            for beta in 0..n {
                if cluster.proximities(beta).any(|p| p == alpha) {
                    slack -= row[beta];
                }
            }
            if slack < 0 {
                return Err(Error::input(format!(
                    "point {point_id}: multiplicities violate proximity at position {alpha}; \
                     the cluster is not a full log resolution"
                )));
            }
            for _ in 0..slack {
                branch_points.push(alpha);
            }
        }
        attachments.push(branch_points);
    }
    cluster.attachments = attachments;
    Ok(cluster)
}

fn parse_element(field: &NumberField, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(_) | Value::String(_) => {
            Ok(field.from_fraction(parse_fraction(v)?))
        }
        Value::Array(items) => {
            if items.len() != field.degree() {
                return Err(Error::input(format!(
                    "field element needs {} coefficients",
                    field.degree()
                )));
            }
            let coeffs: Result<Vec<Fraction>> = items.iter().map(parse_fraction).collect();
            field.element(coeffs?)
        }
        _ => Err(Error::input("field elements are numbers, fraction strings or arrays")),
    }
}

fn parse_fraction(v: &Value) -> Result<Fraction> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Fraction::from_int)
            .ok_or_else(|| Error::input("numeric values must be integers; use \"a/b\" strings")),
        Value::String(s) => {
            let s = s.trim();
            if let Some((a, b)) = s.split_once('/') {
                let num = BigInt::from_str(a.trim())
                    .map_err(|_| Error::input(format!("bad fraction {s}")))?;
                let den = BigInt::from_str(b.trim())
                    .map_err(|_| Error::input(format!("bad fraction {s}")))?;
                Ok(Fraction::from_big(num, den))
            } else {
                let num =
                    BigInt::from_str(s).map_err(|_| Error::input(format!("bad integer {s}")))?;
                Ok(Fraction::from(num))
            }
        }
        _ => Err(Error::input("expected a number or fraction string")),
    }
}

/// Serialize a covering back into the configuration schema.
pub fn config_to_json(spec: &CoveringSpec) -> Value {
    let mut obj = Map::new();
    if !spec.field.is_rational() {
        let poly: Vec<Value> =
            spec.field.min_poly().iter().map(|c| json!(c.to_string().parse::<i64>().unwrap())).collect();
        obj.insert("field".into(), json!({ "minimal_polynomial": poly }));
    }
    let curves: Vec<Value> = spec
        .curves
        .iter()
        .map(|c| json!({ "name": c.name, "degree": c.degree }))
        .collect();
    obj.insert("curves".into(), Value::Array(curves));
    let points: Vec<Value> = spec
        .points
        .iter()
        .map(|p| {
            let positions: Vec<Value> = (0..p.cluster.len())
                .map(|alpha| {
                    let mut m = Map::new();
                    for (i, row) in p.cluster.mult.iter().enumerate() {
                        if row[alpha] != 0 {
                            m.insert(spec.curves[i].name.clone(), json!(row[alpha]));
                        }
                    }
                    json!({
                        "id": alpha as i64 + 1,
                        "parent": p.cluster.positions[alpha].parent.map(|q| q as i64 + 1),
                        "extra_proximity": p.cluster.positions[alpha].extra.map(|q| q as i64 + 1),
                        "direction": p.cluster.positions[alpha].direction.as_ref().map(element_to_json),
                        "multiplicities": Value::Object(m),
                    })
                })
                .collect();
            json!({
                "id": p.id,
                "coords": p.coords.iter().map(field_element_json).collect::<Vec<_>>(),
                "cluster": { "positions": positions },
            })
        })
        .collect();
    obj.insert("singular_points".into(), Value::Array(points));
    let infinity = match spec.infinity {
        InfinityMode::Transverse => json!({ "mode": "transverse" }),
        InfinityMode::Component(h) => {
            json!({ "mode": "component", "curve": spec.curves[h].name })
        }
    };
    obj.insert(
        "covering".into(),
        json!({
            "orders": spec.orders,
            "matrix": spec.matrix,
            "infinity": infinity,
        }),
    );
    Value::Object(obj)
}

fn element_to_json(d: &Direction) -> Value {
    match d {
        Direction::Infinity => json!("infinity"),
        Direction::Finite(t) => field_element_json(t),
    }
}

fn field_element_json(e: &FieldElement) -> Value {
    Value::Array(e.coeffs().iter().map(|c| json!(c.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_cyclic_config() {
        let text = r#"{
            "curves": [{"name": "C", "degree": 4}, {"name": "H", "degree": 1}],
            "singular_points": [
                {"id": "P", "coords": [0, 0, 1], "cluster": {"positions": [
                    {"id": 1, "parent": null, "multiplicities": {"C": 2, "H": 1}},
                    {"id": 2, "parent": 1, "direction": 0, "multiplicities": {"C": 2}}
                ]}},
                {"id": "Q", "coords": [0, 1, 0], "cluster": {"positions": [
                    {"id": 1, "parent": null, "multiplicities": {"C": 2, "H": 1}},
                    {"id": 2, "parent": 1, "direction": 0, "multiplicities": {"C": 2}}
                ]}}
            ],
            "covering": {"orders": [3], "matrix": [[1, 0]],
                         "infinity": {"mode": "component", "curve": "H"}}
        }"#;
        let spec = parse_config(text).unwrap();
        assert_eq!(spec.curves.len(), 2);
        // Attachments derived from the proximity slack: both conic branches
        // attach at the second position, the line at the first.
        assert_eq!(spec.points[0].cluster.attachments[0], vec![1, 1]);
        assert_eq!(spec.points[0].cluster.attachments[1], vec![0]);
        let eff = spec.effective().unwrap();
        let report = crate::covering::irregularity(
            &eff,
            crate::covering::Method::All,
            &crate::covering::ComputeOptions::default(),
        )
        .unwrap();
        assert_eq!(report.q, 1);
    }

    #[test]
    fn round_trip_through_json() {
        let spec = crate::catalog::two_tangent_conics_cyclic(5);
        let text = serde_json::to_string(&config_to_json(&spec)).unwrap();
        let back = parse_config(&text).unwrap();
        let q1 = crate::covering::irregularity(
            &spec.effective().unwrap(),
            crate::covering::Method::Faces,
            &Default::default(),
        )
        .unwrap();
        let q2 = crate::covering::irregularity(
            &back.effective().unwrap(),
            crate::covering::Method::Faces,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(q1.q, q2.q);
        assert_eq!(q1.faces.len(), q2.faces.len());
    }

    #[test]
    fn lines_generate_geometry() {
        let text = r#"{
            "lines": [
                {"name": "L1", "coeffs": [1, 0, 0]},
                {"name": "L2", "coeffs": [0, 1, 0]},
                {"name": "L3", "coeffs": [0, 0, 1]},
                {"name": "L4", "coeffs": [1, -1, 0]}
            ],
            "covering": {"orders": [2, 2, 2], "matrix":
                [[1,0,0,0],[0,1,0,0],[0,0,1,0]],
                "infinity": {"mode": "component", "curve": "L4"}}
        }"#;
        let spec = parse_config(text).unwrap();
        // One triple point (L1, L2, L4 through (0:0:1)) and three nodes.
        assert_eq!(spec.points.len(), 4);
        assert!(spec.effective().is_ok());
    }
}
