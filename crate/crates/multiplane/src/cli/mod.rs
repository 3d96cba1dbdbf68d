//! Command-line front end: configuration ingestion, command dispatch, and
//! human- or machine-readable reporting.

pub mod config;

use crate::catalog;
use crate::counting::{count_face, ehrhart_fit, CharacterGrid};
use crate::covering::{describe_wall, irregularity, ComputeOptions, CoveringSpec, Method};
use crate::error::{Error, Result};
use crate::exact::Fraction;
use crate::jumping::{jumping_scan, ClusterContext};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::collections::BTreeMap;

#[derive(Parser)]
#[command(
    name = "multiplane",
    about = "Mixed multiplier ideals, jumping walls, and the irregularity of \
             abelian coverings of the projective plane, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Built-in configuration name (see `catalog`).
    #[arg(long)]
    arrangement: Option<String>,
    /// JSON configuration file.
    #[arg(long)]
    config: Option<String>,
    /// Cyclic order of each group factor for built-in configurations.
    #[arg(long, default_value_t = 3)]
    n: u64,
    /// Override the group orders, comma separated.
    #[arg(long)]
    orders: Option<String>,
    /// Override the exponent matrix: rows separated by ';', entries by ','.
    #[arg(long)]
    matrix: Option<String>,
    /// Line at infinity: "transverse" or the name of a listed curve.
    #[arg(long)]
    infinity: Option<String>,
}

#[derive(Args)]
struct Common {
    /// Emit machine-readable JSON.
    #[arg(long)]
    json: bool,
    /// Cap on worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in configurations.
    Catalog,
    /// The jumping walls of a configuration.
    Walls {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// The distinguished faces of the wall system.
    Faces {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Also list faces on which the height function is not constant.
        #[arg(long)]
        all: bool,
    },
    /// Character counts of the faces for the configured group.
    Count {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Cohomology of the multiplier-ideal scheme at an exponent vector.
    H1 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Exponents, comma separated, e.g. "3/5,3/5".
        #[arg(long, short = 'x')]
        x: String,
        /// Twist degree; defaults to -3 + ceil(height).
        #[arg(long)]
        twist: Option<i64>,
    },
    /// Jumping numbers of the configuration's ideal at each singular point.
    Jumping {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Scan bound.
        #[arg(long, default_value = "2")]
        max: String,
    },
    /// The irregularity of the covering.
    Irregularity {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// direct, faces, triple, or all (with exact cross-checking).
        #[arg(long, default_value = "faces")]
        method: String,
    },
    /// Quasi-polynomial interpolation of the irregularity in the order.
    Ehrhart {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        period: u64,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "faces")]
        method: String,
    },
}

/// Run the command line; returns the process exit code.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> Result<i32> {
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        // clap help/version are not errors.
        if e.use_stderr() {
            Error::input(e.to_string())
        } else {
            print!("{e}");
            Error::Input(String::new())
        }
    });
    let cli = match cli {
        Ok(c) => c,
        Err(Error::Input(msg)) if msg.is_empty() => return Ok(0),
        Err(e) => return Err(e),
    };
    dispatch(cli.command)?;
    Ok(0)
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Catalog => {
            println!("built-in configurations:");
            for name in catalog::BUILTINS {
                println!("  {name}");
            }
            Ok(())
        }
        Command::Walls { source, common } => {
            let spec = load(&source)?;
            let eff = spec.effective()?;
            if common.json {
                let walls: Vec<_> = eff
                    .walls
                    .iter()
                    .map(|w| {
                        json!({
                            "normal": w.normal,
                            "rhs": w.rhs,
                            "carriers": w.carriers.iter().map(|(p, pos, r)| json!({
                                "point": eff.point_ids[*p],
                                "position": pos + 1,
                                "value": r,
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit(&json!({ "walls": walls, "config": config::config_to_json(&spec) }));
            } else {
                println!("{} wall(s):", eff.walls.len());
                for w in &eff.walls {
                    let carriers: Vec<String> = w
                        .carriers
                        .iter()
                        .map(|(p, pos, r)| {
                            format!("{}#{} (value {})", eff.point_ids[*p], pos + 1, r)
                        })
                        .collect();
                    println!("  {}   from {}", describe_wall(w, &eff.curves), carriers.join(", "));
                }
            }
            Ok(())
        }
        Command::Faces { source, common, all } => {
            let spec = load(&source)?;
            let eff = spec.effective()?;
            let opts = options(&common);
            let t = eff.grid.curves();
            let faces = crate::walls::faces(&eff.walls, &eff.degrees, t, opts.face_budget)?;
            let shown: Vec<&crate::walls::Face> = faces
                .iter()
                .filter(|f| !f.walls.is_empty() && (all || f.distinguished))
                .collect();
            if common.json {
                let list: Vec<_> = shown
                    .iter()
                    .map(|f| {
                        json!({
                            "walls": f.walls.iter().map(|&w| describe_wall(&eff.walls[w], &eff.curves)).collect::<Vec<_>>(),
                            "zero_coordinates": f.zeros.iter().map(|&i| eff.curves[i].name.clone()).collect::<Vec<_>>(),
                            "dim": f.dim(),
                            "distinguished": f.distinguished,
                            "height": f.height.as_ref().map(|h| h.to_string()),
                        })
                    })
                    .collect();
                emit(&json!({ "faces": list, "config": config::config_to_json(&spec) }));
            } else {
                println!("{} face(s){}:", shown.len(), if all { "" } else { " (distinguished)" });
                for f in shown {
                    let walls: Vec<String> = f
                        .walls
                        .iter()
                        .map(|&w| describe_wall(&eff.walls[w], &eff.curves))
                        .collect();
                    let zeros: Vec<String> =
                        f.zeros.iter().map(|&i| format!("x[{}] = 0", eff.curves[i].name)).collect();
                    let mut desc = walls;
                    desc.extend(zeros);
                    let height = f
                        .height
                        .as_ref()
                        .map(|h| format!("height {h}"))
                        .unwrap_or_else(|| "height varies".into());
                    println!(
                        "  dim {}  {}  [{}]{}",
                        f.dim(),
                        height,
                        desc.join(";  "),
                        if f.distinguished { "" } else { "  (not distinguished)" }
                    );
                }
            }
            Ok(())
        }
        Command::Count { source, common } => {
            let spec = load(&source)?;
            let eff = spec.effective()?;
            let opts = options(&common);
            let t = eff.grid.curves();
            let faces = crate::walls::faces(&eff.walls, &eff.degrees, t, opts.face_budget)?;
            let grid = CharacterGrid::new(eff.grid.orders.clone(), eff.grid.matrix.clone())?;
            let mut rows = Vec::new();
            for f in faces.iter().filter(|f| f.distinguished && !f.walls.is_empty()) {
                let (count, strategy) = count_face(f, &grid, opts.enumerate_threshold)?;
                rows.push((f, count, strategy));
            }
            if common.json {
                let list: Vec<_> = rows
                    .iter()
                    .map(|(f, count, strategy)| {
                        json!({
                            "walls": f.walls.iter().map(|&w| describe_wall(&eff.walls[w], &eff.curves)).collect::<Vec<_>>(),
                            "zero_coordinates": f.zeros.iter().map(|&i| eff.curves[i].name.clone()).collect::<Vec<_>>(),
                            "count": count,
                            "strategy": format!("{strategy:?}"),
                        })
                    })
                    .collect();
                emit(&json!({ "counts": list, "config": config::config_to_json(&spec) }));
            } else {
                for (f, count, strategy) in rows {
                    let mut desc: Vec<String> = f
                        .walls
                        .iter()
                        .map(|&w| describe_wall(&eff.walls[w], &eff.curves))
                        .collect();
                    desc.extend(f.zeros.iter().map(|&i| format!("x[{}] = 0", eff.curves[i].name)));
                    println!(
                        "  |W| = {count}   [{}]   ({:?})",
                        desc.join(";  "),
                        strategy
                    );
                }
            }
            Ok(())
        }
        Command::H1 { source, common, x, twist } => {
            let spec = load(&source)?;
            let eff = spec.effective()?;
            let exps: Result<Vec<Fraction>> = x.split(',').map(parse_fraction_arg).collect();
            let exps = exps?;
            if exps.len() != eff.grid.curves() {
                return Err(Error::input(format!(
                    "need {} exponents, got {}",
                    eff.grid.curves(),
                    exps.len()
                )));
            }
            let height: Fraction = exps
                .iter()
                .zip(&eff.degrees)
                .map(|(xi, &d)| xi * &Fraction::from_int(d))
                .sum();
            let twist = twist.unwrap_or_else(|| {
                i64::try_from(&height.ceil()).expect("height out of range") - 3
            });
            let mut scheme = crate::cohomology::PointScheme {
                field: eff.field.clone(),
                points: Vec::new(),
            };
            for pc in &eff.planar {
                let ideal = pc.data.mixed_mi(&exps);
                if !ideal.is_trivial() {
                    scheme.points.push((pc.clone(), ideal));
                }
            }
            let colength = scheme.colength();
            let h0 = scheme.h0(twist)?;
            let h1 = scheme.h1(twist)?;
            if common.json {
                emit(&json!({
                    "x": exps.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "height": height.to_string(),
                    "twist": twist,
                    "colength": colength,
                    "h0": h0,
                    "h1": h1,
                    "config": config::config_to_json(&spec),
                }));
            } else {
                println!("height = {height}, twist = {twist}");
                println!("colength = {colength}, h0 = {h0}, h1 = {h1}");
            }
            Ok(())
        }
        Command::Jumping { source, common, max } => {
            let spec = load(&source)?;
            let bound = parse_fraction_arg(&max)?;
            let mut out = Vec::new();
            for p in &spec.points {
                let mut ctx = ClusterContext::new(&p.cluster)?;
                let orders = ctx.data().total_valuation();
                let jumps = jumping_scan(&mut ctx, &orders, &bound)?;
                out.push((p.id.clone(), jumps));
            }
            if common.json {
                let list: Vec<_> = out
                    .iter()
                    .map(|(id, jumps)| {
                        json!({
                            "point": id,
                            "jumping_numbers": jumps.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit(&json!({ "points": list, "config": config::config_to_json(&spec) }));
            } else {
                for (id, jumps) in out {
                    let s: Vec<String> = jumps.iter().map(|f| f.to_string()).collect();
                    println!("{id}: {}", s.join(", "));
                }
            }
            Ok(())
        }
        Command::Irregularity { source, common, method } => {
            let spec = load(&source)?;
            let eff = spec.effective()?;
            let opts = options(&common);
            let report = irregularity(&eff, parse_method(&method)?, &opts)?;
            if common.json {
                let mut v = serde_json::to_value(&report)
                    .map_err(|e| Error::input(format!("serialize: {e}")))?;
                v.as_object_mut()
                    .unwrap()
                    .insert("config".into(), config::config_to_json(&spec));
                emit(&v);
            } else {
                print_report(&report);
            }
            Ok(())
        }
        Command::Ehrhart { source, common, n_min, n_max, period, degree, method } => {
            if source.config.is_some() {
                return Err(Error::input(
                    "ehrhart varies the group order and works with --arrangement",
                ));
            }
            let name = source.arrangement.clone().unwrap_or_default();
            let opts = options(&common);
            let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
            for n in n_min..=n_max {
                let src = Source {
                    arrangement: Some(name.clone()),
                    config: None,
                    n,
                    orders: source.orders.clone(),
                    matrix: source.matrix.clone(),
                    infinity: source.infinity.clone(),
                };
                let spec = load(&src)?;
                let eff = spec.effective()?;
                let report = irregularity(&eff, parse_method(&method)?, &opts)?;
                counts.insert(n, report.q);
            }
            let qp = ehrhart_fit(&counts, period, degree)?;
            if common.json {
                emit(&json!({
                    "counts": counts,
                    "period": qp.period,
                    "constituents": qp.constituents.iter().map(|p| {
                        p.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                }));
            } else {
                println!("q values: {counts:?}");
                println!("quasi-polynomial of period {period}:");
                for (r, poly) in qp.constituents.iter().enumerate() {
                    let terms: Vec<String> = poly
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(d, c)| match d {
                            0 => format!("{c}"),
                            1 => format!("{c} n"),
                            _ => format!("{c} n^{d}"),
                        })
                        .collect();
                    let body = if terms.is_empty() { "0".into() } else { terms.join(" + ") };
                    println!("  n = {r} mod {period}: {body}");
                }
            }
            Ok(())
        }
    }
}

fn print_report(report: &crate::covering::IrregularityReport) {
    println!("q = {}   (method: {}, {} characters)", report.q, report.method, report.characters);
    for w in &report.warnings {
        println!("warning: {w}");
    }
    for face in &report.faces {
        let mut desc = face.walls.clone();
        desc.extend(face.zero_coordinates.iter().map(|c| format!("x[{c}] = 0")));
        println!("  face height {}  [{}]", face.height, desc.join(";  "));
        for cell in &face.cells {
            println!(
                "    cell: {} character(s), h1 = {}, at ({})",
                cell.count,
                cell.h1,
                cell.representative.join(", ")
            );
        }
    }
    if !report.trace.is_empty() {
        println!("  contributing characters:");
        for t in &report.trace {
            println!("    a = {:?}, height {}, h1 = {}", t.character, t.height, t.h1);
        }
    }
}

fn emit(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON serialization"));
}

fn options(common: &Common) -> ComputeOptions {
    ComputeOptions { threads: common.threads, ..Default::default() }
}

fn parse_method(name: &str) -> Result<Method> {
    match name {
        "direct" => Ok(Method::Direct),
        "faces" => Ok(Method::Faces),
        "triple" => Ok(Method::Triple),
        "all" => Ok(Method::All),
        _ => Err(Error::input(format!("unknown method {name}; use direct, faces, triple or all"))),
    }
}

fn parse_fraction_arg(s: &str) -> Result<Fraction> {
    let s = s.trim();
    let parse_int = |x: &str| -> Result<i64> {
        x.trim().parse::<i64>().map_err(|_| Error::input(format!("bad number {x}")))
    };
    if let Some((a, b)) = s.split_once('/') {
        Ok(Fraction::new(parse_int(a)?, parse_int(b)?))
    } else {
        Ok(Fraction::from_int(parse_int(s)?))
    }
}

fn load(source: &Source) -> Result<CoveringSpec> {
    let mut spec = match (&source.arrangement, &source.config) {
        (Some(name), None) => catalog::builtin(name, source.n)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("{path}: {e}")))?;
            config::parse_config(&text)?
        }
        _ => {
            return Err(Error::input(
                "exactly one of --arrangement and --config must be given",
            ))
        }
    };
    if let Some(orders) = &source.orders {
        let parsed: Result<Vec<u64>> = orders
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| Error::input("bad order list")))
            .collect();
        spec.orders = parsed?;
    }
    if let Some(matrix) = &source.matrix {
        // Inline rows "a,b;c,d", or a file containing either the inline
        // form or a JSON array of rows.
        let text = if std::path::Path::new(matrix).is_file() {
            std::fs::read_to_string(matrix)
                .map_err(|e| Error::input(format!("{matrix}: {e}")))?
        } else {
            matrix.clone()
        };
        let text = text.trim();
        spec.matrix = if text.starts_with('[') {
            serde_json::from_str::<Vec<Vec<u64>>>(text)
                .map_err(|e| Error::input(format!("matrix JSON: {e}")))?
        } else {
            let rows: Result<Vec<Vec<u64>>> = text
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|x| {
                            x.trim()
                                .parse::<u64>()
                                .map_err(|_| Error::input("bad matrix entry"))
                        })
                        .collect()
                })
                .collect();
            rows?
        };
    }
    if let Some(inf) = &source.infinity {
        spec.infinity = if inf == "transverse" {
            crate::covering::InfinityMode::Transverse
        } else {
            let idx = spec
                .curves
                .iter()
                .position(|c| &c.name == inf)
                .ok_or_else(|| Error::input(format!("unknown curve {inf}")))?;
            crate::covering::InfinityMode::Component(idx)
        };
    }
    Ok(spec)
}
