//! Exhaustive character sweep for the face method: every character lands in
//! the cell of its carrier face (the intersection of all walls and
//! coordinate hyperplanes through its image), cells are accumulated by
//! carrier and sign vector, and each cell contributes its count times the
//! superabundance at one representative.
//!
//! The sweep works in integers: with `N` the least common multiple of the
//! group orders, images are `c / N` with `c` updated incrementally along an
//! odometer over the characters.

use super::{
    describe_wall, CellReport, CohomologyCache, ComputeOptions, EffectiveCovering, FaceReport,
    IrregularityReport,
};
use crate::error::{Error, Result};
use crate::exact::int_rank;
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Faces,
    /// Line arrangements with only triple points: additionally check that
    /// contributing faces sit at two thirds of their subarrangement degree.
    Triple,
}

const COORD_SHIFT: u32 = 48;

struct ChunkOut {
    groups: HashMap<(u64, u64), Group>,
}

#[derive(Clone)]
struct Group {
    count: u64,
    rep: Vec<i64>,
    height: i64,
}

pub fn sweep_faces(
    eff: &EffectiveCovering,
    opts: &ComputeOptions,
    mode: SweepMode,
) -> Result<IrregularityReport> {
    let t = eff.grid.curves();
    let s = eff.grid.generators();
    let walls = &eff.walls;
    if walls.len() > COORD_SHIFT as usize || t > 16 {
        return Err(Error::budget("configuration too large for the character sweep"));
    }
    let total = eff.grid.character_count();
    if total > opts.sweep_threshold {
        return Err(Error::budget("character group larger than the sweep threshold"));
    }
    let big_n = eff.grid.lcm_order() as i64;
    let weights: Vec<Vec<i64>> = (0..s)
        .map(|j| {
            (0..t)
                .map(|i| {
                    ((eff.grid.matrix[j][i] as u128
                        * (big_n as u64 / eff.grid.orders[j]) as u128)
                        % big_n as u128) as i64
                })
                .collect()
        })
        .collect();
    let supports: Vec<Vec<(usize, i64)>> = walls
        .iter()
        .map(|w| {
            w.normal
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| (i, e))
                .collect()
        })
        .collect();
    let rhs_scaled: Vec<i64> = walls.iter().map(|w| w.rhs * big_n).collect();

    let chunk: u128 = 1 << 16;
    let nchunks = total.div_ceil(chunk) as usize;
    let run = || -> Vec<ChunkOut> {
        (0..nchunks)
            .into_par_iter()
            .map(|k| {
                let start = k as u128 * chunk;
                let end = (start + chunk).min(total);
                sweep_chunk(eff, &weights, &supports, &rhs_scaled, big_n, start, end)
            })
            .collect()
    };
    let outs: Vec<ChunkOut> = match opts.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::input(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut groups: HashMap<(u64, u64), Group> = HashMap::new();
    for out in outs {
        for (key, g) in out.groups {
            groups
                .entry(key)
                .and_modify(|acc| {
                    acc.count += g.count;
                    debug_assert_eq!(acc.height, g.height);
                    if g.rep < acc.rep {
                        acc.rep = g.rep.clone();
                    }
                })
                .or_insert(g);
        }
    }

    // Evaluate the cells, grouped into faces by carrier mask.
    let mut by_mask: HashMap<u64, Vec<((u64, u64), Group)>> = HashMap::new();
    for (key, g) in groups {
        by_mask.entry(key.0).or_default().push((key, g));
    }
    let mut masks: Vec<u64> = by_mask.keys().copied().collect();
    masks.sort();
    let mut cache = CohomologyCache::new(eff);
    let mut q: u64 = 0;
    let mut reports = Vec::new();
    for mask in masks {
        let mut cells = by_mask.remove(&mask).unwrap();
        cells.sort_by(|a, b| a.1.rep.cmp(&b.1.rep));
        let wall_ids: Vec<usize> =
            (0..walls.len()).filter(|&w| mask & (1 << w) != 0).collect();
        let zero_ids: Vec<usize> =
            (0..t).filter(|&i| mask & (1 << (COORD_SHIFT + i as u32)) != 0).collect();
        let height = cells[0].1.height;
        if mode == SweepMode::Triple {
            // The contributing subarrangement: lines through the carrier
            // points, i.e. the union of the wall supports.
            let mut in_sub = vec![false; t];
            for &w in &wall_ids {
                for &(i, _) in &supports[w] {
                    in_sub[i] = true;
                }
            }
            let deg: i64 = (0..t).filter(|&i| in_sub[i]).map(|i| eff.degrees[i]).sum();
            if 3 * height != 2 * deg {
                return Err(Error::unsupported(format!(
                    "triple-point height check failed: height {height}, \
                     subarrangement degree {deg}"
                )));
            }
        }
        let mut cell_reports = Vec::new();
        for (_, g) in &cells {
            debug_assert_eq!(g.height, height);
            let sig = cache.scheme_signature(&g.rep, big_n);
            let h1 = cache.h1(-3 + height, sig)?;
            q += g.count * h1;
            cell_reports.push(CellReport {
                count: g.count,
                h1,
                representative: g
                    .rep
                    .iter()
                    .map(|&ci| crate::exact::Fraction::new(ci, big_n).to_string())
                    .collect(),
            });
        }
        reports.push(FaceReport {
            height,
            walls: wall_ids.iter().map(|&w| describe_wall(&walls[w], &eff.curves)).collect(),
            zero_coordinates: zero_ids.iter().map(|&i| eff.curves[i].name.clone()).collect(),
            cells: cell_reports,
        });
    }
    reports.sort_by(|a, b| {
        (a.height, a.walls.clone(), a.zero_coordinates.clone()).cmp(&(
            b.height,
            b.walls.clone(),
            b.zero_coordinates.clone(),
        ))
    });
    Ok(IrregularityReport {
        q,
        method: match mode {
            SweepMode::Faces => "faces".into(),
            SweepMode::Triple => "triple".into(),
        },
        characters: total.to_string(),
        elapsed_ms: 0,
        faces: reports,
        trace: Vec::new(),
        warnings: eff.warnings.clone(),
    })
}

fn sweep_chunk(
    eff: &EffectiveCovering,
    weights: &[Vec<i64>],
    supports: &[Vec<(usize, i64)>],
    rhs_scaled: &[i64],
    big_n: i64,
    start: u128,
    end: u128,
) -> ChunkOut {
    let t = eff.grid.curves();
    let s = eff.grid.generators();
    let mut a = eff.grid.character_at(start);
    let mut c = eff.grid.phi_scaled(&a, big_n as u64);
    let mut groups: HashMap<(u64, u64), Group> = HashMap::new();
    // Carrier verdicts: whether the flat of a zero mask is distinguished.
    let mut verdicts: HashMap<u64, bool> = HashMap::new();
    let mut idx = start;
    loop {
        // Height numerator.
        let mut h_num: i64 = 0;
        for i in 0..t {
            h_num += eff.degrees[i] * c[i];
        }
        if !(eff.transverse && h_num % big_n != 0) {
            let mut wall_mask: u64 = 0;
            let mut signs: u64 = 0;
            for (w, support) in supports.iter().enumerate() {
                let mut dot: i64 = 0;
                for &(i, e) in support {
                    dot += e * c[i];
                }
                if dot == rhs_scaled[w] {
                    wall_mask |= 1 << w;
                } else if dot > rhs_scaled[w] {
                    signs |= 1 << w;
                }
            }
            if wall_mask != 0 {
                let mut mask = wall_mask;
                for (i, &ci) in c.iter().enumerate() {
                    if ci == 0 {
                        mask |= 1 << (COORD_SHIFT + i as u32);
                    }
                }
                let distinguished = *verdicts
                    .entry(mask)
                    .or_insert_with(|| carrier_is_distinguished(eff, mask));
                if distinguished {
                    debug_assert_eq!(h_num % big_n, 0);
                    let height = h_num / big_n;
                    groups
                        .entry((mask, signs))
                        .and_modify(|g| {
                            g.count += 1;
                            debug_assert_eq!(g.height, height);
                            if c < g.rep {
                                g.rep = c.clone();
                            }
                        })
                        .or_insert_with(|| Group { count: 1, rep: c.clone(), height });
                }
            }
        }
        idx += 1;
        if idx == end {
            break;
        }
        // Odometer step with incremental image update: bumping generator j
        // adds its weight column (orders divide the scaled lattice, so the
        // wraparound needs no correction).
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
    ChunkOut { groups }
}

/// Is the carrier flat distinguished: does the degree vector lie in the row
/// span of the wall normals and the vanished coordinate directions?
fn carrier_is_distinguished(eff: &EffectiveCovering, mask: u64) -> bool {
    let t = eff.grid.curves();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (w, wall) in eff.walls.iter().enumerate() {
        if mask & (1 << w) != 0 {
            rows.push(wall.normal.clone());
        }
    }
    for i in 0..t {
        if mask & (1 << (COORD_SHIFT + i as u32)) != 0 {
            let mut unit = vec![0i64; t];
            unit[i] = 1;
            rows.push(unit);
        }
    }
    let base = int_rank(&rows);
    rows.push(eff.degrees.clone());
    int_rank(&rows) == base
}
