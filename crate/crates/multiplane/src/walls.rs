//! Jumping walls of a full configuration, their intersection faces, and
//! the cells cut out on a face by the remaining hyperplanes.

use crate::error::{Error, Result};
use crate::exact::{
    dot, dot_int, meets_half_open_unit_box, solve_affine, AffineSubspace, Fraction,
};
use crate::jumping::{relevant_values, ClusterContext};
use std::collections::{HashMap, HashSet, VecDeque};

/// A geometric jumping wall of the configuration: a hyperplane
/// `normal . x = rhs` in the exponent space, carrying every
/// (point, position, value) triple that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpingWall {
    /// Primitive integer normal over the global curve indices.
    pub normal: Vec<i64>,
    pub rhs: i64,
    /// The singular points contributing the wall: (point, position, value)
    /// in the un-normalized per-point data.
    pub carriers: Vec<(usize, usize, i64)>,
}

/// All jumping walls of a configuration meeting the hypercube `[0,1)^t`:
/// for each singular point, each relevant position and each confirmed
/// relevant value, one wall; coinciding hyperplanes are merged.
pub fn all_walls(contexts: &mut [ClusterContext], t: usize) -> Result<Vec<JumpingWall>> {
    let mut merged: HashMap<(Vec<i64>, i64), Vec<(usize, usize, i64)>> = HashMap::new();
    for (pt, ctx) in contexts.iter_mut().enumerate() {
        let relevant = ctx.data().relevant.clone();
        for rho in relevant {
            let normal_raw = ctx.data().position_form(rho);
            if normal_raw.len() != t {
                return Err(Error::input("cluster curve count does not match the configuration"));
            }
            let values = relevant_values(ctx, rho, &Fraction::one())?;
            for r in values {
                let mut g = r;
                for &e in &normal_raw {
                    g = num_integer::gcd(g, e);
                }
                let normal: Vec<i64> = normal_raw.iter().map(|&e| e / g).collect();
                merged.entry((normal, r / g)).or_default().push((pt, rho, r));
            }
        }
    }
    let mut walls: Vec<JumpingWall> = merged
        .into_iter()
        .map(|((normal, rhs), carriers)| JumpingWall { normal, rhs, carriers })
        .collect();
    walls.sort_by(|a, b| (a.rhs, &a.normal).cmp(&(b.rhs, &b.normal)));
    for w in &mut walls {
        w.carriers.sort();
    }
    Ok(walls)
}

/// A face: a finite intersection of jumping walls and coordinate
/// hyperplanes meeting the hypercube.
#[derive(Clone, Debug)]
pub struct Face {
    pub subspace: AffineSubspace,
    /// Indices into the wall list of every wall containing the face.
    pub walls: Vec<usize>,
    /// Coordinates vanishing identically on the face.
    pub zeros: Vec<usize>,
    pub distinguished: bool,
    /// Value of the height function when it is constant on the face.
    pub height: Option<Fraction>,
    /// Saturated generator mask (walls then coordinate hyperplanes).
    pub mask: u128,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Integer height of a distinguished face, when integral.
    pub fn integer_height(&self) -> Option<i64> {
        self.height.as_ref().and_then(|h| h.is_integer().then(|| h.floor_i64()))
    }
}

/// Breadth-first closure of the walls and coordinate hyperplanes under
/// intersection, keeping the faces that meet `[0,1)^t`, deduplicated by
/// their saturated generator set.
pub fn faces(
    walls: &[JumpingWall],
    degrees: &[i64],
    t: usize,
    budget: usize,
) -> Result<Vec<Face>> {
    let gens = walls.len() + t;
    if gens > 128 {
        return Err(Error::budget("too many hyperplanes for the face closure"));
    }
    let gen_eq = |g: usize| -> (Vec<Fraction>, Fraction) {
        if g < walls.len() {
            (
                walls[g].normal.iter().map(|&e| Fraction::from_int(e)).collect(),
                Fraction::from_int(walls[g].rhs),
            )
        } else {
            let mut n = vec![Fraction::zero(); t];
            n[g - walls.len()] = Fraction::one();
            (n, Fraction::zero())
        }
    };
    let contains = |space: &AffineSubspace, g: usize| -> bool {
        let (n, r) = gen_eq(g);
        if dot(&n, &space.base) != r {
            return false;
        }
        space.directions.iter().all(|d| dot(&n, d).is_zero())
    };

    let mut visited: HashSet<u128> = HashSet::new();
    let mut out: Vec<Face> = Vec::new();
    let mut queue: VecDeque<(u128, Vec<usize>)> = VecDeque::new();

    let try_insert = |gen_set: &[usize],
                          visited: &mut HashSet<u128>,
                          out: &mut Vec<Face>,
                          queue: &mut VecDeque<(u128, Vec<usize>)>|
     -> Result<()> {
        let eqs: Vec<(Vec<Fraction>, Fraction)> = gen_set.iter().map(|&g| gen_eq(g)).collect();
        let rows: Vec<Vec<Fraction>> = eqs.iter().map(|(n, _)| n.clone()).collect();
        let rhs: Vec<Fraction> = eqs.iter().map(|(_, r)| r.clone()).collect();
        let Some(space) = solve_affine(&rows, &rhs) else {
            return Ok(());
        };
        // Saturate: every generator containing the subspace.
        let sat: Vec<usize> = (0..gens).filter(|&g| contains(&space, g)).collect();
        let mut mask: u128 = 0;
        for &g in &sat {
            mask |= 1u128 << g;
        }
        if !visited.insert(mask) {
            return Ok(());
        }
        if !meets_half_open_unit_box(&eqs, t) {
            return Ok(());
        }
        if out.len() >= budget {
            return Err(Error::budget(format!(
                "face closure exceeded the budget of {budget} faces"
            )));
        }
        let dvec: Vec<Fraction> = degrees.iter().map(|&d| Fraction::from_int(d)).collect();
        let distinguished = space.directions.iter().all(|v| dot(&dvec, v).is_zero());
        let height = distinguished.then(|| dot(&dvec, &space.base));
        out.push(Face {
            walls: sat.iter().copied().filter(|&g| g < walls.len()).collect(),
            zeros: sat.iter().copied().filter(|&g| g >= walls.len()).map(|g| g - walls.len()).collect(),
            subspace: space,
            distinguished,
            height,
            mask,
        });
        queue.push_back((mask, sat));
        Ok(())
    };

    for g in 0..gens {
        try_insert(&[g], &mut visited, &mut out, &mut queue)?;
    }
    while let Some((mask, gen_set)) = queue.pop_front() {
        for g in 0..gens {
            if mask & (1u128 << g) != 0 {
                continue;
            }
            let mut next = gen_set.clone();
            next.push(g);
            try_insert(&next, &mut visited, &mut out, &mut queue)?;
        }
    }
    // Deterministic order: distinguished first by height, then by
    // dimension and generator mask.
    out.sort_by(|a, b| {
        let ka = (!a.distinguished, a.height.clone(), a.subspace.dim(), a.mask);
        let kb = (!b.distinguished, b.height.clone(), b.subspace.dim(), b.mask);
        ka.cmp(&kb)
    });
    Ok(out)
}

/// One cell of a face: the points sharing a sign vector with respect to
/// every wall and coordinate hyperplane not containing the face.
#[derive(Clone, Debug)]
pub struct Cell {
    pub signs: Vec<i8>,
    pub count: usize,
    pub representative: Vec<Fraction>,
}

/// Partition grid points lying on the face by their sign vectors.
pub fn cells(
    face: &Face,
    walls: &[JumpingWall],
    t: usize,
    points: &[Vec<Fraction>],
) -> Result<Vec<Cell>> {
    let outside: Vec<usize> = (0..walls.len() + t)
        .filter(|&g| face.mask & (1u128 << g) == 0)
        .collect();
    let mut groups: HashMap<Vec<i8>, Cell> = HashMap::new();
    for p in points {
        if !face.subspace.contains(p) {
            return Err(Error::input("grid point does not lie on the face"));
        }
        if p.iter().any(|c| c.is_negative() || *c >= Fraction::one()) {
            return Err(Error::input("grid point outside the hypercube"));
        }
        let signs: Vec<i8> = outside
            .iter()
            .map(|&g| {
                let v = if g < walls.len() {
                    &dot_int(p, &walls[g].normal) - &Fraction::from_int(walls[g].rhs)
                } else {
                    p[g - walls.len()].clone()
                };
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .collect();
        groups
            .entry(signs.clone())
            .and_modify(|c| {
                c.count += 1;
                if *p < c.representative {
                    c.representative = p.clone();
                }
            })
            .or_insert_with(|| Cell { signs, count: 1, representative: p.clone() });
    }
    let mut cells: Vec<Cell> = groups.into_values().collect();
    cells.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(cells)
}
