//! Propositional encoding of fixed-shape PCD existence.
//!
//! The shape fixes the primary layout `s_i[j] = (i-1)g + j` for the first
//! `g` levels (so `K = g d` and every element's primary position is known);
//! the free slots `g+1..=L` hold copies. The CNF is satisfiable iff a
//! `(d, gd, alpha)` design with that layout and length at most `L` exists.
//!
//! No solver is embedded: instances are written as DIMACS CNF for an
//! external executable whose output (`s SATISFIABLE` / `v` lines) is parsed
//! back, and decoded models are re-verified unconditionally.

use crate::design::PrefixCoveringDesign;
use crate::error::{Error, Result};
use crate::io::{parse_solver_output, render_dimacs, SolverOutput};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Default clause budget for [`encode`].
pub const DEFAULT_CLAUSE_BUDGET: usize = 2_000_000;

/// Search shape: `d` sequences, primary block height `g` (universe
/// `K = g d`), target budget `alpha`, and maximum sequence length `max_len`
/// (capped at `alpha`, since elements above level `alpha` are useless).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchShape {
    pub d: usize,
    pub g: usize,
    pub alpha: u64,
    pub max_len: usize,
}

impl SearchShape {
    pub fn new(d: usize, g: usize, alpha: u64) -> Result<Self> {
        let shape = Self {
            d,
            g,
            alpha,
            max_len: alpha as usize,
        };
        shape.validate()?;
        Ok(shape)
    }

    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = max_len.min(self.alpha as usize);
        self
    }

    fn validate(&self) -> Result<()> {
        // alpha below 3 is always unsatisfiable but still encodable, so the
        // solver can report it rather than the shape constructor.
        if self.d < 3 || self.g < 1 || self.alpha < 1 {
            return Err(Error::InvalidInput(
                "shape needs d >= 3, g >= 1, alpha >= 1".into(),
            ));
        }
        if self.max_len < self.g {
            return Err(Error::InvalidInput(
                "max length below the primary block".into(),
            ));
        }
        Ok(())
    }

    pub fn universe(&self) -> u64 {
        (self.g * self.d) as u64
    }

    /// Fixed element at primary position `(sequence, level)`, `level <= g`.
    pub fn fixed_element(&self, sequence: usize, level: usize) -> u64 {
        ((sequence - 1) * self.g + level) as u64
    }

    /// Primary position of element `e` in the fixed layout.
    pub fn primary(&self, e: u64) -> (usize, usize) {
        let idx = (e - 1) as usize;
        (idx / self.g + 1, idx % self.g + 1)
    }

    fn free_levels(&self) -> std::ops::RangeInclusive<usize> {
        self.g + 1..=self.max_len
    }

    /// Copy of `e` allowed at free slot `(sequence, level)`: not in its own
    /// primary sequence, and within the singleton bound
    /// `level + l_min(e) <= alpha + 1`.
    fn slot_allowed(&self, sequence: usize, level: usize, e: u64) -> bool {
        let (pi, pl) = self.primary(e);
        sequence != pi && (level + pl) as u64 <= self.alpha + 1
    }
}

/// Semantic class of an emitted clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseClass {
    /// At most one element per free slot.
    AtMostOne { sequence: usize, level: usize },
    /// No element twice in one sequence (includes the primary block).
    NoRepeat { sequence: usize, element: u64 },
    /// A copy above the singleton bound is forbidden.
    Singleton {
        sequence: usize,
        level: usize,
        element: u64,
    },
    /// Pattern definition clause for one triple.
    TripletPattern { triple: [u64; 3] },
    /// The cover disjunction of one triple.
    Triplet { triple: [u64; 3] },
}

impl std::fmt::Display for ClauseClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClauseClass::AtMostOne { sequence, level } => {
                write!(f, "at-most-one at ({sequence}, {level})")
            }
            ClauseClass::NoRepeat { sequence, element } => {
                write!(f, "no-repeat of element {element} in sequence {sequence}")
            }
            ClauseClass::Singleton {
                sequence,
                level,
                element,
            } => {
                write!(
                    f,
                    "singleton bound for element {element} at ({sequence}, {level})"
                )
            }
            ClauseClass::TripletPattern { triple } => {
                write!(
                    f,
                    "cover pattern for {{{}, {}, {}}}",
                    triple[0], triple[1], triple[2]
                )
            }
            ClauseClass::Triplet { triple } => {
                write!(f, "triplet {{{}, {}, {}}}", triple[0], triple[1], triple[2])
            }
        }
    }
}

/// One reified cover pattern: the auxiliary variable and, per element that
/// needs a copy, the slot variables any of which realizes the containment.
#[derive(Debug, Clone)]
struct PatternDef {
    var: i64,
    conditions: Vec<Vec<i64>>,
}

/// An encoded instance: clauses with their classes, the slot-variable
/// layout, and the pattern definitions needed to evaluate assignments.
#[derive(Debug, Clone)]
pub struct CnfInstance {
    pub shape: SearchShape,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub classes: Vec<ClauseClass>,
    patterns: Vec<PatternDef>,
}

impl CnfInstance {
    /// Variable for "free slot `(sequence, level)` holds element `e`".
    pub fn slot_var(&self, sequence: usize, level: usize, e: u64) -> i64 {
        let shape = &self.shape;
        let span = shape.max_len - shape.g;
        let k = shape.universe() as usize;
        let idx = ((sequence - 1) * span + (level - shape.g - 1)) * k + (e as usize - 1);
        (idx + 1) as i64
    }

    /// `(var, sequence, level, element)` for every slot variable, for the
    /// sidecar map.
    pub fn slot_vars(&self) -> impl Iterator<Item = (i64, usize, usize, u64)> + '_ {
        let shape = self.shape;
        (1..=shape.d).flat_map(move |i| {
            shape.free_levels().flat_map(move |l| {
                (1..=shape.universe()).map(move |e| (self.slot_var(i, l, e), i, l, e))
            })
        })
    }

    /// The truth assignment a layout-matching design induces on all
    /// variables: slot variables from the design's entries, each pattern
    /// variable from its conditions.
    pub fn assignment_for(&self, design: &PrefixCoveringDesign) -> Result<Vec<bool>> {
        let shape = &self.shape;
        if design.d() != shape.d || design.universe() != shape.universe() {
            return Err(Error::LayoutMismatch(format!(
                "need d = {}, K = {}, got d = {}, K = {}",
                shape.d,
                shape.universe(),
                design.d(),
                design.universe()
            )));
        }
        let mut model = vec![false; self.num_vars];
        for (idx, seq) in design.sequences().iter().enumerate() {
            let i = idx + 1;
            if seq.len() > shape.max_len {
                return Err(Error::LayoutMismatch(format!(
                    "sequence {i} longer than L = {}",
                    shape.max_len
                )));
            }
            for (pos, &e) in seq.iter().enumerate() {
                let level = pos + 1;
                if level <= shape.g {
                    if e != shape.fixed_element(i, level) {
                        return Err(Error::LayoutMismatch(format!(
                            "primary block differs at ({i}, {level}): expected {}, got {e}",
                            shape.fixed_element(i, level)
                        )));
                    }
                } else {
                    model[self.slot_var(i, level, e) as usize - 1] = true;
                }
            }
        }
        self.derive_patterns(&mut model);
        Ok(model)
    }

    pub fn to_dimacs(&self) -> String {
        render_dimacs(self)
    }

    /// Number of slot variables (ids 1..=slot_count precede the pattern vars).
    pub fn slot_count(&self) -> usize {
        self.shape.d * (self.shape.max_len - self.shape.g) * self.shape.universe() as usize
    }

    /// Sets every pattern variable to its derived value: true iff each of
    /// its conditions has a true slot variable. This is the unique maximal
    /// pattern assignment compatible with the definitions.
    pub fn derive_patterns(&self, model: &mut [bool]) {
        for pattern in &self.patterns {
            let holds = pattern
                .conditions
                .iter()
                .all(|cond| cond.iter().any(|&v| model[v as usize - 1]));
            model[pattern.var as usize - 1] = holds;
        }
    }
}

/// Exact satisfiability decision for tiny instances: enumerate every slot
/// assignment, derive the pattern variables, and test all clauses. Used by
/// the encoder self-tests; no external solver involved.
pub fn decide_by_slot_enumeration(instance: &CnfInstance) -> bool {
    let slots = instance.slot_count();
    assert!(slots <= 22, "slot enumeration is for tiny instances only");
    'outer: for bits in 0u64..(1u64 << slots) {
        let mut model = vec![false; instance.num_vars];
        for (v, slot) in model.iter_mut().enumerate().take(slots) {
            *slot = bits & (1 << v) != 0;
        }
        instance.derive_patterns(&mut model);
        for clause in &instance.clauses {
            let ok = clause
                .iter()
                .any(|&lit| (lit > 0) == model[lit.unsigned_abs() as usize - 1]);
            if !ok {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// Builds the CNF for a shape. Satisfiable iff a `(d, gd, alpha)` PCD with
/// the fixed primary layout and length at most `max_len` exists.
pub fn encode(shape: SearchShape, clause_budget: usize) -> Result<CnfInstance> {
    shape.validate()?;
    let k = shape.universe();
    let span = shape.max_len - shape.g;
    let mut inst = CnfInstance {
        shape,
        num_vars: shape.d * span * k as usize,
        clauses: Vec::new(),
        classes: Vec::new(),
        patterns: Vec::new(),
    };

    // unit forbids: own-sequence repeats and singleton-bound violations
    for i in 1..=shape.d {
        for l in shape.free_levels() {
            for e in 1..=k {
                let (pi, pl) = shape.primary(e);
                let var = inst.slot_var(i, l, e);
                if i == pi {
                    push(
                        &mut inst,
                        vec![-var],
                        ClauseClass::NoRepeat {
                            sequence: i,
                            element: e,
                        },
                        clause_budget,
                    )?;
                } else if (l + pl) as u64 > shape.alpha + 1 {
                    push(
                        &mut inst,
                        vec![-var],
                        ClauseClass::Singleton {
                            sequence: i,
                            level: l,
                            element: e,
                        },
                        clause_budget,
                    )?;
                }
            }
        }
    }

    // at most one element per slot (among slot-allowed elements)
    for i in 1..=shape.d {
        for l in shape.free_levels() {
            let allowed: Vec<u64> = (1..=k).filter(|&e| shape.slot_allowed(i, l, e)).collect();
            for (ai, &e1) in allowed.iter().enumerate() {
                for &e2 in &allowed[ai + 1..] {
                    let clause = vec![-inst.slot_var(i, l, e1), -inst.slot_var(i, l, e2)];
                    push(
                        &mut inst,
                        clause,
                        ClauseClass::AtMostOne {
                            sequence: i,
                            level: l,
                        },
                        clause_budget,
                    )?;
                }
            }
        }
    }

    // no element twice in one sequence (free-slot pairs)
    for i in 1..=shape.d {
        for e in 1..=k {
            let levels: Vec<usize> = shape
                .free_levels()
                .filter(|&l| shape.slot_allowed(i, l, e))
                .collect();
            for (ai, &l1) in levels.iter().enumerate() {
                for &l2 in &levels[ai + 1..] {
                    let clause = vec![-inst.slot_var(i, l1, e), -inst.slot_var(i, l2, e)];
                    push(
                        &mut inst,
                        clause,
                        ClauseClass::NoRepeat {
                            sequence: i,
                            element: e,
                        },
                        clause_budget,
                    )?;
                }
            }
        }
    }

    // triplet conditions
    for a in 1..=k {
        for b in a + 1..=k {
            for c in b + 1..=k {
                emit_triple(&mut inst, [a, b, c], clause_budget)?;
            }
        }
    }
    Ok(inst)
}

fn push(inst: &mut CnfInstance, clause: Vec<i64>, class: ClauseClass, budget: usize) -> Result<()> {
    if inst.clauses.len() >= budget {
        return Err(Error::ShapeTooLarge {
            emitted: inst.clauses.len() + 1,
            budget,
        });
    }
    inst.clauses.push(clause);
    inst.classes.push(class);
    Ok(())
}

/// The five set partitions of a triple, as member index groups.
const PARTITIONS: [&[&[usize]]; 5] = [
    &[&[0, 1, 2]],
    &[&[0, 1], &[2]],
    &[&[0, 2], &[1]],
    &[&[1, 2], &[0]],
    &[&[0], &[1], &[2]],
];

fn emit_triple(inst: &mut CnfInstance, triple: [u64; 3], budget: usize) -> Result<()> {
    let shape = inst.shape;
    if primary_cover_cost(&shape, triple) <= shape.alpha {
        return Ok(());
    }
    // Collect cover patterns: per partition and injective group-to-sequence
    // assignment, the Pareto-maximal prefix-length splits within budget.
    // A pattern's condition per element is the disjunction of the slot
    // variables realizing its containment (primaries contribute none).
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    for groups in PARTITIONS {
        let mut seqs = vec![0usize; groups.len()];
        assign_sequences(inst, triple, groups, 0, &mut seqs, &mut seen);
    }
    if seen.is_empty() {
        // uncoverable within the budget: the shape is unsatisfiable
        return push(inst, Vec::new(), ClauseClass::Triplet { triple }, budget);
    }
    let mut cover = Vec::with_capacity(seen.len());
    for conditions in seen {
        inst.num_vars += 1;
        let var = inst.num_vars as i64;
        for cond in &conditions {
            let mut clause = Vec::with_capacity(cond.len() + 1);
            clause.push(-var);
            clause.extend_from_slice(cond);
            push(inst, clause, ClauseClass::TripletPattern { triple }, budget)?;
        }
        inst.patterns.push(PatternDef { var, conditions });
        cover.push(var);
    }
    push(inst, cover, ClauseClass::Triplet { triple }, budget)
}

/// Minimum cover cost using only the fixed primary positions.
fn primary_cover_cost(shape: &SearchShape, triple: [u64; 3]) -> u64 {
    let mut best = u64::MAX;
    for groups in PARTITIONS {
        let mut cost_sum = 0u64;
        let mut used = Vec::new();
        let mut feasible = true;
        for &group in groups.iter() {
            let (si, _) = shape.primary(triple[group[0]]);
            if group.iter().any(|&m| shape.primary(triple[m]).0 != si) || used.contains(&si) {
                feasible = false;
                break;
            }
            let cost = group
                .iter()
                .map(|&m| shape.primary(triple[m]).1)
                .max()
                .unwrap();
            used.push(si);
            cost_sum += cost as u64;
        }
        if feasible {
            best = best.min(cost_sum);
        }
    }
    best
}

/// Recursively assigns groups to pairwise-distinct sequences, then
/// enumerates the admissible prefix-length splits.
fn assign_sequences(
    inst: &CnfInstance,
    triple: [u64; 3],
    groups: &[&[usize]],
    g: usize,
    seqs: &mut Vec<usize>,
    seen: &mut BTreeSet<Vec<Vec<i64>>>,
) {
    let shape = inst.shape;
    if g == groups.len() {
        enumerate_splits(inst, triple, groups, seqs, seen);
        return;
    }
    for s in 1..=shape.d {
        if seqs[..g].contains(&s) {
            continue;
        }
        seqs[g] = s;
        assign_sequences(inst, triple, groups, g + 1, seqs, seen);
    }
}

/// Levels at which element `e` can occur in sequence `s`: its fixed primary
/// level, or any admissible free slot.
fn possible_levels(shape: &SearchShape, e: u64, s: usize) -> Vec<usize> {
    let (pi, pl) = shape.primary(e);
    if s == pi {
        vec![pl]
    } else {
        shape
            .free_levels()
            .filter(|&l| shape.slot_allowed(s, l, e))
            .collect()
    }
}

fn enumerate_splits(
    inst: &CnfInstance,
    triple: [u64; 3],
    groups: &[&[usize]],
    seqs: &[usize],
    seen: &mut BTreeSet<Vec<Vec<i64>>>,
) {
    let shape = inst.shape;
    // candidate prefix lengths per group: union of member levels, at or
    // above the group's minimum feasible length
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(groups.len());
    for (gi, group) in groups.iter().enumerate() {
        let s = seqs[gi];
        let mut min_feasible = 0usize;
        let mut union = BTreeSet::new();
        for &m in *group {
            let levels = possible_levels(&shape, triple[m], s);
            let Some(&lo) = levels.first() else { return };
            min_feasible = min_feasible.max(lo);
            union.extend(levels);
        }
        let cands: Vec<usize> = union.into_iter().filter(|&l| l >= min_feasible).collect();
        if cands.is_empty() {
            return;
        }
        candidates.push(cands);
    }
    // all splits with total <= alpha
    let mut splits: Vec<Vec<usize>> = Vec::new();
    let min_tail: Vec<u64> = {
        let mut acc = vec![0u64; groups.len() + 1];
        for gi in (0..groups.len()).rev() {
            acc[gi] = acc[gi + 1] + candidates[gi][0] as u64;
        }
        acc
    };
    let mut current = Vec::with_capacity(groups.len());
    collect_splits(
        &candidates,
        &min_tail,
        shape.alpha,
        0,
        0,
        &mut current,
        &mut splits,
    );
    // keep the Pareto-maximal splits: anything dominated is implied
    let maximal: Vec<&Vec<usize>> = splits
        .iter()
        .filter(|s| {
            !splits.iter().any(|t| {
                t.as_slice() != s.as_slice() && t.iter().zip(s.iter()).all(|(a, b)| a >= b)
            })
        })
        .collect();
    for split in maximal {
        let mut conditions: Vec<Vec<i64>> = Vec::new();
        for (gi, group) in groups.iter().enumerate() {
            let s = seqs[gi];
            let limit = split[gi];
            for &m in *group {
                let e = triple[m];
                let (pi, pl) = shape.primary(e);
                if s == pi && pl <= limit {
                    continue; // contained via the fixed layout
                }
                let mut lits: Vec<i64> = possible_levels(&shape, e, s)
                    .into_iter()
                    .filter(|&l| l <= limit)
                    .map(|l| inst.slot_var(s, l, e))
                    .collect();
                lits.sort_unstable();
                conditions.push(lits);
            }
        }
        conditions.sort();
        conditions.dedup();
        if conditions.is_empty() {
            // coverable by primaries alone; handled by the skip above
            continue;
        }
        seen.insert(conditions);
    }
}

fn collect_splits(
    candidates: &[Vec<usize>],
    min_tail: &[u64],
    alpha: u64,
    gi: usize,
    used: u64,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if gi == candidates.len() {
        out.push(current.clone());
        return;
    }
    for &cand in &candidates[gi] {
        let cost = used + cand as u64;
        if cost + min_tail[gi + 1] > alpha {
            break; // candidates ascend; nothing further fits
        }
        current.push(cand);
        collect_splits(candidates, min_tail, alpha, gi + 1, cost, current, out);
        current.pop();
    }
}

/// Outcome of evaluating a design against an instance's clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Satisfied,
    Violated { class: ClauseClass },
}

impl CheckOutcome {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, CheckOutcome::Satisfied)
    }
}

/// Evaluates every emitted clause under the assignment a layout-matching
/// design induces; reports the first violated clause's class.
pub fn check_assignment(
    instance: &CnfInstance,
    design: &PrefixCoveringDesign,
) -> Result<CheckOutcome> {
    let model = instance.assignment_for(design)?;
    for (clause, class) in instance.clauses.iter().zip(&instance.classes) {
        let satisfied = clause.iter().any(|&lit| {
            let value = model[lit.unsigned_abs() as usize - 1];
            (lit > 0) == value
        });
        if !satisfied {
            return Ok(CheckOutcome::Violated {
                class: class.clone(),
            });
        }
    }
    Ok(CheckOutcome::Satisfied)
}

/// Reads the design off a model's slot variables. The result must pass
/// verification at the shape's alpha; a failure there is an encoder bug and
/// is reported as such, never returned as a design.
pub fn decode(instance: &CnfInstance, model: &[bool]) -> Result<PrefixCoveringDesign> {
    if model.len() < instance.num_vars {
        return Err(Error::ModelInconsistent(format!(
            "model assigns {} of {} variables",
            model.len(),
            instance.num_vars
        )));
    }
    let shape = instance.shape;
    let mut sequences = Vec::with_capacity(shape.d);
    for i in 1..=shape.d {
        let mut seq: Vec<u64> = (1..=shape.g).map(|l| shape.fixed_element(i, l)).collect();
        for l in shape.free_levels() {
            let mut here: Vec<u64> = (1..=shape.universe())
                .filter(|&e| model[instance.slot_var(i, l, e) as usize - 1])
                .collect();
            if here.len() > 1 {
                return Err(Error::ModelInconsistent(format!(
                    "slot ({i}, {l}) holds {} elements",
                    here.len()
                )));
            }
            if let Some(e) = here.pop() {
                seq.push(e); // empty slots compact away
            }
        }
        sequences.push(seq);
    }
    let design = PrefixCoveringDesign::new(shape.universe(), shape.alpha, sequences)?;
    let report = design.verify();
    if !report.is_valid() {
        return Err(Error::EncoderUnsound(report.violations[0].to_string()));
    }
    Ok(design)
}

/// Enumerates every gapless, repeat-free suffix filling of the shape and
/// calls `body` on each; the ground truth for small-scale completeness
/// checks, independent of the CNF path.
pub fn for_each_filling(shape: SearchShape, mut body: impl FnMut(&PrefixCoveringDesign)) {
    fn fill_sequence(
        shape: &SearchShape,
        i: usize,
        sequences: &mut Vec<Vec<u64>>,
        body: &mut impl FnMut(&PrefixCoveringDesign),
    ) {
        if i > shape.d {
            let design =
                PrefixCoveringDesign::new(shape.universe(), shape.alpha, sequences.clone())
                    .expect("enumerated fillings are well-formed");
            body(&design);
            return;
        }
        fn extend(
            shape: &SearchShape,
            i: usize,
            sequences: &mut Vec<Vec<u64>>,
            body: &mut impl FnMut(&PrefixCoveringDesign),
        ) {
            fill_sequence(shape, i + 1, sequences, body);
            if sequences[i - 1].len() >= shape.max_len {
                return;
            }
            for e in 1..=shape.universe() {
                if sequences[i - 1].contains(&e) {
                    continue;
                }
                sequences[i - 1].push(e);
                extend(shape, i, sequences, body);
                sequences[i - 1].pop();
            }
        }
        extend(shape, i, sequences, body);
    }
    let mut sequences: Vec<Vec<u64>> = (1..=shape.d)
        .map(|i| (1..=shape.g).map(|l| shape.fixed_element(i, l)).collect())
        .collect();
    fill_sequence(&shape, 1, &mut sequences, &mut body);
}

/// Exhaustive satisfiability decision for tiny shapes: the first filling
/// that verifies at the shape's alpha, if any.
pub fn solve_by_enumeration(shape: SearchShape) -> Option<PrefixCoveringDesign> {
    let mut found = None;
    for_each_filling(shape, |design| {
        if found.is_none() && design.verify().is_valid() {
            found = Some(design.clone());
        }
    });
    found
}

/// Runs an external solver on a DIMACS file. The command template is split
/// on whitespace; every `{cnf}` token is replaced by the file path (appended
/// when absent). Stdout must use the competition format.
pub fn run_solver(
    template: &str,
    cnf_path: &std::path::Path,
    num_vars: usize,
    timeout: Duration,
) -> Result<SolverOutput> {
    let mut parts = template.split_whitespace();
    let program = parts
        .next()
        .ok_or_else(|| Error::Solver("empty solver command".into()))?;
    let mut args: Vec<String> = parts.map(str::to_owned).collect();
    let path_str = cnf_path.to_string_lossy().into_owned();
    let mut replaced = false;
    for arg in &mut args {
        if arg == "{cnf}" {
            *arg = path_str.clone();
            replaced = true;
        }
    }
    if !replaced {
        args.push(path_str);
    }
    let mut child = std::process::Command::new(program)
        .args(&args)
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .map_err(|e| Error::Solver(format!("cannot launch `{program}`: {e}")))?;
    let deadline = Instant::now() + timeout;
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) if Instant::now() >= deadline => {
                let _ = child.kill();
                let _ = child.wait();
                return Err(Error::Solver(format!(
                    "solver exceeded the {}s timeout",
                    timeout.as_secs()
                )));
            }
            Ok(None) => std::thread::sleep(Duration::from_millis(20)),
            Err(e) => return Err(Error::Solver(format!("wait failed: {e}"))),
        }
    }
    let output = child
        .wait_with_output()
        .map_err(|e| Error::Solver(format!("cannot read solver output: {e}")))?;
    parse_solver_output(&String::from_utf8_lossy(&output.stdout), num_vars)
}

/// Encode, solve externally, decode: `Ok(Some(design))` on SAT (verified),
/// `Ok(None)` on UNSAT.
pub fn solve_shape(
    shape: SearchShape,
    template: &str,
    work_dir: &std::path::Path,
    timeout: Duration,
) -> Result<Option<PrefixCoveringDesign>> {
    let instance = encode(shape, DEFAULT_CLAUSE_BUDGET)?;
    let path = work_dir.join(format!(
        "shape_d{}_g{}_a{}_{}.cnf",
        shape.d,
        shape.g,
        shape.alpha,
        std::process::id()
    ));
    std::fs::write(&path, instance.to_dimacs())?;
    match run_solver(template, &path, instance.num_vars, timeout)? {
        SolverOutput::Unsat => Ok(None),
        SolverOutput::Sat(model) => decode(&instance, &model).map(Some),
    }
}
