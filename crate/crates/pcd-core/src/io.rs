//! Plain-text interchange formats. Lines starting with `#` are comments and
//! blank lines are ignored everywhere.
//!
//! * PCD: `d K alpha` then one space-separated sequence per line. A JSON
//!   object `{"d": .., "K": .., "alpha": .., "sequences": [[..]]}` is also
//!   accepted (detected by a leading `{`).
//! * Covering design (La-Jolla-compatible): `v k 2 d` then one block per
//!   line. Blocks smaller than `k` mark the design as padded.
//! * Hypergraph: `K n` then one edge per line as `part vertex` pairs.
//! * Box instance: `d U N` then `N` lines of `2d` integers (lo hi per axis).
//! * Point instance: `dim count threshold kind` with kind `unit`
//!   (perimeter) or the integer base `mu` (volume exponents); then one point
//!   per line.

use crate::covering::CoveringDesign;
use crate::design::PrefixCoveringDesign;
use crate::error::{Error, Result};
use crate::reduce::{AxisBox, BoxInstance, Hypergraph3, PointInstance, PointKind, Provenance};
use crate::sat::CnfInstance;
use serde::Deserialize;
use std::fmt::Write as _;

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("expected integer, got `{t}`")))
        })
        .collect()
}

#[derive(Deserialize)]
struct PcdJson {
    d: usize,
    #[serde(rename = "K")]
    universe: u64,
    alpha: u64,
    sequences: Vec<Vec<u64>>,
}

/// Parses a PCD from the text format or its JSON equivalent.
pub fn parse_pcd(text: &str) -> Result<PrefixCoveringDesign> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let json: PcdJson =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("json: {e}")))?;
        if json.sequences.len() != json.d {
            return Err(Error::Parse(format!(
                "d = {} but {} sequences given",
                json.d,
                json.sequences.len()
            )));
        }
        return PrefixCoveringDesign::new(json.universe, json.alpha, json.sequences);
    }
    let mut lines = data_lines(text);
    let header = numbers(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?,
    )?;
    let [d, universe, alpha] = header[..] else {
        return Err(Error::Parse("header must be `d K alpha`".into()));
    };
    let sequences: Vec<Vec<u64>> = lines.map(numbers).collect::<Result<_>>()?;
    if sequences.len() != d as usize {
        return Err(Error::Parse(format!(
            "header says d = {d} but {} sequences given",
            sequences.len()
        )));
    }
    PrefixCoveringDesign::new(universe, alpha, sequences)
}

pub fn render_pcd(pcd: &PrefixCoveringDesign) -> String {
    let mut out = format!("{} {} {}\n", pcd.d(), pcd.universe(), pcd.alpha());
    for seq in pcd.sequences() {
        let line: Vec<String> = seq.iter().map(u64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_pcd_json(pcd: &PrefixCoveringDesign) -> String {
    serde_json::json!({
        "d": pcd.d(),
        "K": pcd.universe(),
        "alpha": pcd.alpha(),
        "sequences": pcd.sequences(),
    })
    .to_string()
}

/// Parses a covering design; `v k 2 d` header. Blocks smaller than `k` are
/// accepted and mark the design as padded (the writer emits such designs
/// only with a marker comment).
pub fn parse_cd(text: &str) -> Result<CoveringDesign> {
    let mut lines = data_lines(text);
    let header = numbers(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?,
    )?;
    let [v, k, t, d] = header[..] else {
        return Err(Error::Parse("header must be `v k 2 d`".into()));
    };
    if t != 2 {
        return Err(Error::Parse(format!(
            "only t = 2 designs are supported, got t = {t}"
        )));
    }
    let blocks: Vec<Vec<u64>> = lines.map(numbers).collect::<Result<_>>()?;
    if blocks.len() != d as usize {
        return Err(Error::Parse(format!(
            "header says d = {d} but {} blocks given",
            blocks.len()
        )));
    }
    if blocks.iter().all(|b| b.len() as u64 == k) {
        CoveringDesign::new(v, k, blocks)
    } else {
        let mut blocks = blocks;
        for (i, b) in blocks.iter_mut().enumerate() {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse(format!("block {} repeats an element", i + 1)));
            }
            if b.len() as u64 > k {
                return Err(Error::Parse(format!("block {} larger than k = {k}", i + 1)));
            }
            if let Some(&e) = b.iter().find(|&&e| e == 0 || e > v) {
                return Err(Error::Parse(format!(
                    "block {} element {e} outside 1..={v}",
                    i + 1
                )));
            }
        }
        Ok(CoveringDesign::padded_unchecked(v, k, blocks))
    }
}

pub fn render_cd(cd: &CoveringDesign) -> String {
    let mut out = String::new();
    if cd.is_padded() {
        out.push_str("# padded (non-strict) covering design; block sets may be below k\n");
    }
    let _ = writeln!(out, "{} {} 2 {}", cd.universe(), cd.block_size(), cd.d());
    for block in cd.blocks() {
        let line: Vec<String> = block.iter().map(u64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a hypergraph: `K n` header, one edge per line as
/// `part vertex part vertex part vertex`.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph3> {
    let mut lines = data_lines(text);
    let header = numbers(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?,
    )?;
    let [k, n] = header[..] else {
        return Err(Error::Parse("header must be `K n`".into()));
    };
    let mut edges = Vec::new();
    for line in lines {
        let nums = numbers(line)?;
        let [a, va, b, vb, c, vc] = nums[..] else {
            return Err(Error::Parse(format!(
                "edge line needs 6 integers: `{line}`"
            )));
        };
        edges.push([(a, va), (b, vb), (c, vc)]);
    }
    Hypergraph3::new(k, n, edges)
}

pub fn render_hypergraph(graph: &Hypergraph3) -> String {
    let mut out = format!("{} {}\n", graph.parts(), graph.vertices_per_part());
    for edge in graph.edges() {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            edge[0].0, edge[0].1, edge[1].0, edge[1].1, edge[2].0, edge[2].1
        );
    }
    out
}

/// Parses a box instance: `d U N` header, then `N` rows of `2d` integers.
/// Provenance tags are not part of the format.
pub fn parse_box_instance(text: &str) -> Result<BoxInstance> {
    let mut lines = data_lines(text);
    let header = numbers(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?,
    )?;
    let [d, bound, count] = header[..] else {
        return Err(Error::Parse("header must be `d U N`".into()));
    };
    let d = d as usize;
    let mut boxes = Vec::with_capacity(count as usize);
    for line in lines {
        let nums = numbers(line)?;
        if nums.len() != 2 * d {
            return Err(Error::Parse(format!(
                "box line needs {} integers: `{line}`",
                2 * d
            )));
        }
        let b: AxisBox = nums.chunks(2).map(|c| (c[0], c[1])).collect();
        boxes.push(b);
    }
    if boxes.len() as u64 != count {
        return Err(Error::Parse(format!(
            "header says N = {count} but {} boxes given",
            boxes.len()
        )));
    }
    let tags = vec![Provenance::Unknown; boxes.len()];
    BoxInstance::new(d, bound, boxes, tags)
}

pub fn render_box_instance(instance: &BoxInstance) -> String {
    let mut out = format!(
        "{} {} {}\n",
        instance.dim,
        instance.bound,
        instance.boxes.len()
    );
    for b in &instance.boxes {
        let line: Vec<String> = b
            .iter()
            .flat_map(|&(lo, hi)| [lo.to_string(), hi.to_string()])
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a point instance: `dim count threshold kind` header with kind
/// `unit` or the integer `mu`; the axis extent is recovered as the maximum
/// coordinate (exact for generated instances, whose scaffolds reach U).
pub fn parse_point_instance(text: &str) -> Result<PointInstance> {
    let mut lines = data_lines(text);
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let tokens: Vec<&str> = header_line.split_whitespace().collect();
    let [dim, count, threshold, kind] = tokens[..] else {
        return Err(Error::Parse(
            "header must be `dim count threshold kind`".into(),
        ));
    };
    let dim: usize = dim
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension `{dim}`")))?;
    let count: usize = count
        .parse()
        .map_err(|_| Error::Parse(format!("bad count `{count}`")))?;
    let threshold: u64 = threshold
        .parse()
        .map_err(|_| Error::Parse(format!("bad threshold `{threshold}`")))?;
    let kind = if kind == "unit" {
        PointKind::Perimeter
    } else {
        let mu: u64 = kind.parse().map_err(|_| {
            Error::Parse(format!(
                "kind must be `unit` or an integer mu, got `{kind}`"
            ))
        })?;
        PointKind::VolumeExponent { mu }
    };
    let points: Vec<Vec<u64>> = lines.map(numbers).collect::<Result<_>>()?;
    if points.len() != count {
        return Err(Error::Parse(format!(
            "header says count = {count} but {} points given",
            points.len()
        )));
    }
    let extent = points
        .iter()
        .flat_map(|p| p.iter().copied())
        .max()
        .unwrap_or(0);
    let tags = vec![Provenance::Unknown; points.len()];
    PointInstance::new(dim, extent, points, threshold, kind, tags)
}

pub fn render_point_instance(instance: &PointInstance) -> String {
    let kind = match instance.kind {
        PointKind::Perimeter => "unit".to_string(),
        PointKind::VolumeExponent { mu } => mu.to_string(),
    };
    let mut out = format!(
        "{} {} {} {}\n",
        instance.dim,
        instance.points.len(),
        instance.threshold,
        kind
    );
    for p in &instance.points {
        let line: Vec<String> = p.iter().map(u64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Standard DIMACS CNF: `p cnf vars clauses` then zero-terminated clauses.
pub fn render_dimacs(instance: &CnfInstance) -> String {
    let mut out = format!("p cnf {} {}\n", instance.num_vars, instance.clauses.len());
    for clause in &instance.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Sidecar variable map: `var,i,level,element` rows for the slot variables.
pub fn render_var_map(instance: &CnfInstance) -> String {
    let mut out = String::from("var,i,level,element\n");
    for (var, sequence, level, element) in instance.slot_vars() {
        let _ = writeln!(out, "{var},{sequence},{level},{element}");
    }
    out
}

/// Parsed output of an external SAT solver in the competition format:
/// an `s SATISFIABLE` / `s UNSATISFIABLE` status line plus `v`-prefixed
/// literal lines terminated by `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverOutput {
    Unsat,
    /// Truth value per variable id (index 0 = variable 1); variables the
    /// solver did not mention are false.
    Sat(Vec<bool>),
}

pub fn parse_solver_output(text: &str, num_vars: usize) -> Result<SolverOutput> {
    let mut status: Option<bool> = None;
    let mut model = vec![false; num_vars];
    let mut terminated = false;
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = match rest.trim() {
                "SATISFIABLE" => Some(true),
                "UNSATISFIABLE" => Some(false),
                other => return Err(Error::Solver(format!("unknown status `{other}`"))),
            };
        } else if let Some(rest) = line.strip_prefix('v') {
            for token in rest.split_whitespace() {
                let lit: i64 = token
                    .parse()
                    .map_err(|_| Error::Solver(format!("bad literal `{token}`")))?;
                if lit == 0 {
                    terminated = true;
                    continue;
                }
                let var = lit.unsigned_abs() as usize;
                if var > num_vars {
                    return Err(Error::ModelInconsistent(format!(
                        "literal {lit} beyond the {num_vars} instance variables"
                    )));
                }
                model[var - 1] = lit > 0;
            }
        }
    }
    match status {
        Some(false) => Ok(SolverOutput::Unsat),
        Some(true) if terminated => Ok(SolverOutput::Sat(model)),
        Some(true) => Err(Error::ModelInconsistent(
            "model lines missing the terminating 0 (truncated output?)".into(),
        )),
        None => Err(Error::Solver("no `s` status line in solver output".into())),
    }
}
