//! Hyperclique reductions: given a prefix covering design and a K-partite
//! 3-uniform hypergraph, build coverage/depth box instances and
//! max-perimeter / largest-volume empty anchored box point instances whose
//! answers encode hyperclique existence.

use crate::design::PrefixCoveringDesign;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Default cap on the number of functions enumerated per checking family.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A K-partite 3-uniform hypergraph with `n` vertices per part. Parts are
/// numbered `1..=K`, vertices `0..n-1` within each part. Every edge spans
/// three distinct parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    parts: u64,
    n: u64,
    edges: BTreeSet<[(u64, u64); 3]>,
}

impl Hypergraph3 {
    pub fn new(
        parts: u64,
        n: u64,
        edges: impl IntoIterator<Item = [(u64, u64); 3]>,
    ) -> Result<Self> {
        if parts < 4 {
            return Err(Error::InvalidInput(format!(
                "hypergraph needs at least 4 parts, got {parts}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidInput(
                "each part needs at least one vertex".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for edge in edges {
            set.insert(Self::canonical(parts, n, edge)?);
        }
        Ok(Self {
            parts,
            n,
            edges: set,
        })
    }

    fn canonical(parts: u64, n: u64, mut edge: [(u64, u64); 3]) -> Result<[(u64, u64); 3]> {
        edge.sort_unstable();
        if edge[0].0 == edge[1].0 || edge[1].0 == edge[2].0 {
            return Err(Error::InvalidInput(format!("edge {edge:?} repeats a part")));
        }
        for &(p, v) in &edge {
            if p == 0 || p > parts {
                return Err(Error::InvalidInput(format!("part {p} outside 1..={parts}")));
            }
            if v >= n {
                return Err(Error::InvalidInput(format!("vertex {v} outside 0..{n}")));
            }
        }
        Ok(edge)
    }

    pub fn parts(&self) -> u64 {
        self.parts
    }

    pub fn vertices_per_part(&self) -> u64 {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = &[(u64, u64); 3]> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: (u64, u64), b: (u64, u64), c: (u64, u64)) -> bool {
        let mut edge = [a, b, c];
        edge.sort_unstable();
        self.edges.contains(&edge)
    }

    /// The complete cross-triple edge set on the same parts.
    pub fn complete(parts: u64, n: u64) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 1..=parts {
            for b in a + 1..=parts {
                for c in b + 1..=parts {
                    for va in 0..n {
                        for vb in 0..n {
                            for vc in 0..n {
                                edges.push([(a, va), (b, vb), (c, vc)]);
                            }
                        }
                    }
                }
            }
        }
        Self::new(parts, n, edges)
    }
}

/// Provenance of a generated box or point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Scaffold point `p(x; i)` of subspace `i`.
    Scaffold { subspace: usize, x: u64 },
    /// Edge-checking object for triple `{a,b,c}` under assignment `f`
    /// (values of `f` listed over the sorted element set `X`).
    EdgeCheck { triple: [u64; 3], f: Vec<u64> },
    /// Consistency-checking object for element `x`, copy position
    /// `(sequence, level)`, side `<` (false) or `>` (true).
    Consistency {
        element: u64,
        sequence: usize,
        level: usize,
        upper: bool,
        f: Vec<u64>,
    },
    /// Complement slab of a source box in a depth instance.
    Slab {
        source: usize,
        axis: usize,
        upper: bool,
    },
    /// Read back from a file; files do not carry provenance.
    Unknown,
}

/// An axis-parallel box: half-open integer intervals `[lo, hi)` per axis.
pub type AxisBox = Vec<(u64, u64)>;

/// A set of boxes inside the bounding box `[0, bound)^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxInstance {
    pub dim: usize,
    pub bound: u64,
    pub boxes: Vec<AxisBox>,
    pub tags: Vec<Provenance>,
}

impl BoxInstance {
    pub fn new(dim: usize, bound: u64, boxes: Vec<AxisBox>, tags: Vec<Provenance>) -> Result<Self> {
        if dim == 0 || bound == 0 {
            return Err(Error::InvalidInput(
                "box instance needs dim >= 1 and bound >= 1".into(),
            ));
        }
        if tags.len() != boxes.len() {
            return Err(Error::InvalidInput("one tag per box required".into()));
        }
        for b in &boxes {
            if b.len() != dim {
                return Err(Error::InvalidInput("box dimension mismatch".into()));
            }
            for &(lo, hi) in b {
                if lo > hi || hi > bound {
                    return Err(Error::InvalidInput(format!(
                        "interval [{lo}, {hi}) outside the bounding box [0, {bound})"
                    )));
                }
            }
        }
        Ok(Self {
            dim,
            bound,
            boxes,
            tags,
        })
    }

    fn sort_by_tag(&mut self) {
        let mut paired: Vec<(Provenance, AxisBox)> =
            self.tags.drain(..).zip(self.boxes.drain(..)).collect();
        paired.sort();
        for (tag, b) in paired {
            self.tags.push(tag);
            self.boxes.push(b);
        }
    }
}

/// Objective flavour of a point instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// Coordinates are literal; objective is the coordinate sum.
    Perimeter,
    /// Coordinates are exponents of `mu`; objective is the exponent sum.
    VolumeExponent { mu: u64 },
}

/// Points in `2d` dimensions (d paired subspaces) with a decision threshold.
/// For generated instances the axis maximum is `extent = U` on every axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointInstance {
    pub dim: usize,
    pub extent: u64,
    pub points: Vec<Vec<u64>>,
    pub threshold: u64,
    pub kind: PointKind,
    pub tags: Vec<Provenance>,
}

impl PointInstance {
    pub fn new(
        dim: usize,
        extent: u64,
        points: Vec<Vec<u64>>,
        threshold: u64,
        kind: PointKind,
        tags: Vec<Provenance>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("point instance needs dim >= 1".into()));
        }
        if tags.len() != points.len() {
            return Err(Error::InvalidInput("one tag per point required".into()));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidInput("point dimension mismatch".into()));
        }
        Ok(Self {
            dim,
            extent,
            points,
            threshold,
            kind,
            tags,
        })
    }

    fn sort_by_tag(&mut self) {
        let mut paired: Vec<(Provenance, Vec<u64>)> =
            self.tags.drain(..).zip(self.points.drain(..)).collect();
        paired.sort();
        for (tag, p) in paired {
            self.tags.push(tag);
            self.points.push(p);
        }
    }
}

/// Positional value of a most-significant-first base-`n` digit tuple, padded
/// with trailing zeros to `length` digits: `digits[0] n^{length-1} + ...`.
/// The final digit may equal `n` (interval upper endpoints use it).
pub fn ind(digits: &[u64], n: u64, length: usize) -> Result<u64> {
    if digits.len() > length {
        return Err(Error::InvalidInput(format!(
            "{} digits exceed the length {length}",
            digits.len()
        )));
    }
    let mut value: u64 = 0;
    for (pos, &digit) in digits.iter().enumerate() {
        let limit = if pos + 1 == digits.len() { n } else { n - 1 };
        if digit > limit {
            return Err(Error::DigitOutOfRange { digit, base: n });
        }
        let weight = n
            .checked_pow((length - 1 - pos) as u32)
            .ok_or(Error::Overflow("n^(L-pos)"))?;
        value = digit
            .checked_mul(weight)
            .and_then(|t| value.checked_add(t))
            .ok_or(Error::Overflow("ind accumulation"))?;
    }
    Ok(value)
}

/// Which interval a digit prefix selects for its last digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    At,
    Below,
    Above,
}

/// Interval of values whose digit expansion starts with `digits` (side At),
/// or agrees on all but the last digit which is smaller/greater (Below/
/// Above). Returns `None` when empty.
fn interval(digits: &[u64], side: Side, n: u64, length: usize) -> Result<Option<(u64, u64)>> {
    debug_assert!(!digits.is_empty() || side == Side::At);
    let (lo, hi) = match side {
        Side::At => {
            if digits.is_empty() {
                let all = n.checked_pow(length as u32).ok_or(Error::Overflow("n^L"))?;
                return Ok(Some((0, all)));
            }
            let lo = ind(digits, n, length)?;
            let mut upper = digits.to_vec();
            *upper.last_mut().unwrap() += 1;
            (lo, ind(&upper, n, length)?)
        }
        Side::Below => {
            let mut zero = digits.to_vec();
            *zero.last_mut().unwrap() = 0;
            (ind(&zero, n, length)?, ind(digits, n, length)?)
        }
        Side::Above => {
            let mut next = digits.to_vec();
            *next.last_mut().unwrap() += 1;
            let mut full = digits.to_vec();
            *full.last_mut().unwrap() = n;
            (ind(&next, n, length)?, ind(&full, n, length)?)
        }
    };
    Ok((lo < hi).then_some((lo, hi)))
}

/// A generated checking constraint: intervals on a subset of sequences.
struct Check {
    constraints: Vec<(usize, (u64, u64))>,
    tag: Provenance,
}

/// Enumerates every checking family of the reduction. Shared by the box and
/// point builders; `length` is the digit count `L`, `bound = n^L`.
struct Generator<'a> {
    pcd: &'a PrefixCoveringDesign,
    graph: &'a Hypergraph3,
    length: usize,
    budget: u128,
}

impl Generator<'_> {
    fn run(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        self.edge_checks(&mut out)?;
        self.consistency_checks(&mut out)?;
        Ok(out)
    }

    /// All `f: X -> {0..n-1}` in lexicographic order over the sorted element
    /// list `x_sorted`.
    fn for_each_assignment(
        &self,
        x_sorted: &[u64],
        mut body: impl FnMut(&[u64]) -> Result<()>,
    ) -> Result<()> {
        let n = self.graph.vertices_per_part();
        let estimate =
            (n as u128)
                .checked_pow(x_sorted.len() as u32)
                .ok_or(Error::AlphaOverflow {
                    estimate: u128::MAX,
                    budget: self.budget,
                })?;
        if estimate > self.budget {
            return Err(Error::AlphaOverflow {
                estimate,
                budget: self.budget,
            });
        }
        let mut values = vec![0u64; x_sorted.len()];
        loop {
            body(&values)?;
            let mut pos = x_sorted.len();
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                values[pos] += 1;
                if values[pos] < n {
                    break;
                }
                values[pos] = 0;
                if pos == 0 {
                    return Ok(());
                }
            }
        }
    }

    /// Elements inside the prefix `s_i[..len]`.
    fn prefix_elements(&self, sequence: usize, len: usize) -> impl Iterator<Item = u64> + '_ {
        self.pcd.sequences()[sequence - 1][..len].iter().copied()
    }

    fn edge_checks(&self, out: &mut Vec<Check>) -> Result<()> {
        let k = self.pcd.universe();
        let n = self.graph.vertices_per_part();
        for a in 1..=k {
            for b in a + 1..=k {
                for c in b + 1..=k {
                    let cover = self.pcd.min_triplet_cover(a, b, c)?;
                    let mut x: Vec<u64> = cover
                        .prefixes
                        .iter()
                        .flat_map(|&(i, len)| self.prefix_elements(i, len))
                        .collect();
                    x.sort_unstable();
                    x.dedup();
                    let value_of =
                        |values: &[u64], e: u64| values[x.binary_search(&e).expect("element in X")];
                    self.for_each_assignment(&x, |values| {
                        let f = |e| value_of(values, e);
                        if self.graph.has_edge((a, f(a)), (b, f(b)), (c, f(c))) {
                            return Ok(());
                        }
                        let mut constraints = Vec::with_capacity(cover.prefixes.len());
                        for &(i, len) in &cover.prefixes {
                            let digits: Vec<u64> = self.prefix_elements(i, len).map(f).collect();
                            let iv = interval(&digits, Side::At, n, self.length)?
                                .expect("plain intervals are never empty");
                            constraints.push((i, iv));
                        }
                        out.push(Check {
                            constraints,
                            tag: Provenance::EdgeCheck {
                                triple: [a, b, c],
                                f: values.to_vec(),
                            },
                        });
                        Ok(())
                    })?;
                }
            }
        }
        Ok(())
    }

    fn consistency_checks(&self, out: &mut Vec<Check>) -> Result<()> {
        let n = self.graph.vertices_per_part();
        for x in 1..=self.pcd.universe() {
            let occurrences = element_occurrences(self.pcd, x);
            if occurrences.len() < 2 {
                continue;
            }
            let primary = self.pcd.primary_position(x)?;
            let (pi, pl) = (primary.sequence, primary.level);
            for &(ci, cl) in &occurrences {
                if (ci, cl) == (pi, pl) {
                    continue;
                }
                let mut xs: Vec<u64> = self
                    .prefix_elements(pi, pl)
                    .chain(self.prefix_elements(ci, cl))
                    .collect();
                xs.sort_unstable();
                xs.dedup();
                let value_of =
                    |values: &[u64], e: u64| values[xs.binary_search(&e).expect("element in X")];
                self.for_each_assignment(&xs, |values| {
                    let f = |e| value_of(values, e);
                    let primary_digits: Vec<u64> = self.prefix_elements(pi, pl).map(f).collect();
                    let primary_iv = interval(&primary_digits, Side::At, n, self.length)?
                        .expect("plain intervals are never empty");
                    let copy_digits: Vec<u64> = self.prefix_elements(ci, cl).map(f).collect();
                    for (side, upper) in [(Side::Below, false), (Side::Above, true)] {
                        if let Some(copy_iv) = interval(&copy_digits, side, n, self.length)? {
                            out.push(Check {
                                constraints: vec![(pi, primary_iv), (ci, copy_iv)],
                                tag: Provenance::Consistency {
                                    element: x,
                                    sequence: ci,
                                    level: cl,
                                    upper,
                                    f: values.to_vec(),
                                },
                            });
                        }
                    }
                    Ok(())
                })?;
            }
        }
        Ok(())
    }
}

/// All positions `(sequence, level)` of element `x`, in sequence order.
fn element_occurrences(pcd: &PrefixCoveringDesign, x: u64) -> Vec<(usize, usize)> {
    pcd.sequences()
        .iter()
        .enumerate()
        .flat_map(|(i, seq)| {
            seq.iter()
                .enumerate()
                .filter(move |&(_, &e)| e == x)
                .map(move |(l, _)| (i + 1, l + 1))
        })
        .collect()
}

fn validate_inputs(pcd: &PrefixCoveringDesign, graph: &Hypergraph3) -> Result<()> {
    if pcd.universe() != graph.parts() {
        return Err(Error::KMismatch {
            design_k: pcd.universe(),
            graph_k: graph.parts(),
        });
    }
    let report = pcd.verify();
    if !report.is_valid() {
        return Err(Error::InvalidInput(format!(
            "reduction requires a valid design: {}",
            report.violations[0]
        )));
    }
    Ok(())
}

fn power_bound(n: u64, length: usize) -> Result<u64> {
    // keep U = n^L within u64 comfortably
    if length as f64 * (n as f64).log2() > 62.0 {
        return Err(Error::Overflow("n^L exceeds 62 bits"));
    }
    n.checked_pow(length as u32).ok_or(Error::Overflow("n^L"))
}

/// The coverage instance: the bounding box `[0, U)^d` with `U = n^L`
/// (`L` = longest sequence) and the edge- and consistency-checking boxes;
/// an elementary cell stays uncovered iff its digit tuples are a consistent
/// encoding of a hyperclique.
pub fn build_coverage_instance(
    pcd: &PrefixCoveringDesign,
    graph: &Hypergraph3,
    budget: u128,
) -> Result<BoxInstance> {
    validate_inputs(pcd, graph)?;
    let length = pcd.max_len();
    let n = graph.vertices_per_part();
    let bound = power_bound(n, length)?;
    let checks = Generator {
        pcd,
        graph,
        length,
        budget,
    }
    .run()?;
    let d = pcd.d();
    let mut boxes = Vec::with_capacity(checks.len());
    let mut tags = Vec::with_capacity(checks.len());
    for check in checks {
        let mut b: AxisBox = vec![(0, bound); d];
        for (seq, iv) in check.constraints {
            b[seq - 1] = iv;
        }
        boxes.push(b);
        tags.push(check.tag);
    }
    let mut instance = BoxInstance::new(d, bound, boxes, tags)?;
    instance.sort_by_tag();
    Ok(instance)
}

/// Replaces every box by the disjoint nested-slab decomposition of its
/// complement (at most `2 dim` slabs: on axis `j`, points inside the box on
/// all axes below `j` and outside on `j`). Outside an original box exactly
/// one of its slabs applies, so the maximum depth reaches the returned
/// threshold `N` (the original box count) iff some point escapes all boxes.
pub fn coverage_to_depth(instance: &BoxInstance) -> Result<(BoxInstance, u64)> {
    let mut boxes = Vec::new();
    let mut tags = Vec::new();
    for (idx, source) in instance.boxes.iter().enumerate() {
        for axis in 0..instance.dim {
            for (upper, range) in [
                (false, (0, source[axis].0)),
                (true, (source[axis].1, instance.bound)),
            ] {
                if range.0 >= range.1 {
                    continue;
                }
                let mut slab: AxisBox = (0..instance.dim)
                    .map(|j| {
                        if j < axis {
                            source[j]
                        } else {
                            (0, instance.bound)
                        }
                    })
                    .collect();
                slab[axis] = range;
                boxes.push(slab);
                tags.push(Provenance::Slab {
                    source: idx,
                    axis,
                    upper,
                });
            }
        }
    }
    let threshold = instance.boxes.len() as u64;
    let mut out = BoxInstance::new(instance.dim, instance.bound, boxes, tags)?;
    out.sort_by_tag();
    Ok((out, threshold))
}

fn build_point_instance(
    pcd: &PrefixCoveringDesign,
    graph: &Hypergraph3,
    kind: PointKind,
    budget: u128,
) -> Result<PointInstance> {
    validate_inputs(pcd, graph)?;
    // Equal sequence lengths are a notational convenience only; any common
    // digit count L >= every sequence length gives the same semantics, and
    // the smallest choice keeps U = n^L within the oracle guards.
    let length = pcd.max_len();
    let n = graph.vertices_per_part();
    let bound = power_bound(n, length)?;
    let d = pcd.d();
    let dim = 2 * d;
    let mut points = Vec::new();
    let mut tags = Vec::new();
    // scaffold: p(x; i) has (x, U - x) in subspace i, (0, 0) elsewhere
    for i in 1..=d {
        for x in 0..=bound {
            let mut p = vec![0u64; dim];
            p[2 * (i - 1)] = x;
            p[2 * (i - 1) + 1] = bound - x;
            points.push(p);
            tags.push(Provenance::Scaffold { subspace: i, x });
        }
    }
    // checking points: q(I; i) = (min I, U - max I - 1) per constrained
    // subspace; with half-open [lo, hi) that is (lo, U - hi).
    let checks = Generator {
        pcd,
        graph,
        length,
        budget,
    }
    .run()?;
    for check in checks {
        let mut p = vec![0u64; dim];
        for (seq, (lo, hi)) in check.constraints {
            p[2 * (seq - 1)] = lo;
            p[2 * (seq - 1) + 1] = bound - hi;
        }
        points.push(p);
        tags.push(check.tag);
    }
    let threshold = (d as u64)
        .checked_mul(bound + 1)
        .ok_or(Error::Overflow("d * (U + 1)"))?;
    let mut instance = PointInstance::new(dim, bound, points, threshold, kind, tags)?;
    instance.sort_by_tag();
    Ok(instance)
}

/// Max-perimeter instance in dimension `2d`: scaffolds plus checking points,
/// threshold `d (U + 1)` on the corner coordinate sum, with `U = n^L` for
/// `L` the longest sequence (valid designs never exceed length `alpha`).
pub fn build_perimeter_instance(
    pcd: &PrefixCoveringDesign,
    graph: &Hypergraph3,
    budget: u128,
) -> Result<PointInstance> {
    build_point_instance(pcd, graph, PointKind::Perimeter, budget)
}

/// Largest-volume instance: identical geometry with coordinates read as
/// exponents of `mu`, threshold `d (U + 1)` on the exponent sum (volume
/// `(C mu)^d` with `C = mu^U`). No big powers are ever materialized.
pub fn build_volume_instance(
    pcd: &PrefixCoveringDesign,
    graph: &Hypergraph3,
    mu: u64,
    budget: u128,
) -> Result<PointInstance> {
    if mu < 2 {
        return Err(Error::InvalidInput(
            "volume base mu must be at least 2".into(),
        ));
    }
    build_point_instance(pcd, graph, PointKind::VolumeExponent { mu }, budget)
}

/// Closed-form census of checking objects, computed independently of the
/// generator: per triple `n^{|X|-3} * (n^3 - edges(a,b,c))` edge checks,
/// per copy position `2 n^{|X|} - 2 n^{|X|-1}` nonempty consistency checks.
pub fn expected_check_count(pcd: &PrefixCoveringDesign, graph: &Hypergraph3) -> Result<u128> {
    validate_inputs(pcd, graph)?;
    let n = graph.vertices_per_part();
    let k = pcd.universe();
    let mut total: u128 = 0;
    for a in 1..=k {
        for b in a + 1..=k {
            for c in b + 1..=k {
                let cover = pcd.min_triplet_cover(a, b, c)?;
                let mut x: Vec<u64> = cover
                    .prefixes
                    .iter()
                    .flat_map(|&(i, len)| pcd.sequences()[i - 1][..len].iter().copied())
                    .collect();
                x.sort_unstable();
                x.dedup();
                let free = (x.len() - 3) as u32;
                let mut edges: u128 = 0;
                for va in 0..n {
                    for vb in 0..n {
                        for vc in 0..n {
                            if graph.has_edge((a, va), (b, vb), (c, vc)) {
                                edges += 1;
                            }
                        }
                    }
                }
                total += (n as u128).pow(free) * ((n as u128).pow(3) - edges);
            }
        }
    }
    for x in 1..=k {
        let occurrences = element_occurrences(pcd, x);
        if occurrences.len() < 2 {
            continue;
        }
        let primary = pcd.primary_position(x)?;
        for &(ci, cl) in &occurrences {
            if (ci, cl) == (primary.sequence, primary.level) {
                continue;
            }
            let mut xs: Vec<u64> = pcd.sequences()[primary.sequence - 1][..primary.level]
                .iter()
                .chain(pcd.sequences()[ci - 1][..cl].iter())
                .copied()
                .collect();
            xs.sort_unstable();
            xs.dedup();
            let e = xs.len() as u32;
            total += 2 * (n as u128).pow(e) - 2 * (n as u128).pow(e - 1);
        }
    }
    Ok(total)
}

/// Decodes an uncovered cell (given by the coordinates of any point inside
/// it) into the vertex assignment it encodes: part `x` takes the digit at
/// any occurrence of `x`. Errors if the encoding is inconsistent.
pub fn decode_cell(
    pcd: &PrefixCoveringDesign,
    graph: &Hypergraph3,
    cell: &[u64],
) -> Result<Vec<u64>> {
    validate_inputs(pcd, graph)?;
    let n = graph.vertices_per_part();
    let length = pcd.max_len();
    let mut assignment = vec![None; pcd.universe() as usize];
    for (i, seq) in pcd.sequences().iter().enumerate() {
        let mut value = cell[i];
        let mut digits = vec![0u64; length];
        for pos in (0..length).rev() {
            digits[pos] = value % n;
            value /= n;
        }
        for (l, &e) in seq.iter().enumerate() {
            let digit = digits[l];
            match assignment[e as usize - 1] {
                None => assignment[e as usize - 1] = Some(digit),
                Some(prev) if prev == digit => {}
                Some(prev) => {
                    return Err(Error::InvalidInput(format!(
                        "inconsistent encoding: element {e} gets digits {prev} and {digit}"
                    )))
                }
            }
        }
    }
    assignment
        .into_iter()
        .enumerate()
        .map(|(idx, v)| {
            v.ok_or_else(|| Error::InvalidInput(format!("element {} unassigned", idx + 1)))
        })
        .collect()
}

#[cfg(test)]
pub(crate) fn random_graph(rng: &mut impl rand::Rng, parts: u64, n: u64, p: f64) -> Hypergraph3 {
    let mut edges = Vec::new();
    for a in 1..=parts {
        for b in a + 1..=parts {
            for c in b + 1..=parts {
                for va in 0..n {
                    for vb in 0..n {
                        for vc in 0..n {
                            if rng.gen_bool(p) {
                                edges.push([(a, va), (b, vb), (c, vc)]);
                            }
                        }
                    }
                }
            }
        }
    }
    Hypergraph3::new(parts, n, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::classic_star;

    #[test]
    fn ind_examples() {
        assert_eq!(ind(&[2, 1], 3, 2).unwrap(), 7);
        assert_eq!(ind(&[1], 2, 3).unwrap(), 4);
        assert_eq!(ind(&[], 5, 4).unwrap(), 0);
        assert_eq!(ind(&[1, 2], 2, 2).unwrap(), 4); // final digit may be n
        assert!(matches!(
            ind(&[2, 0], 2, 2),
            Err(Error::DigitOutOfRange { digit: 2, base: 2 })
        ));
    }

    #[test]
    fn intervals() {
        // n = 3, L = 2: I((2,1)) = [7, 8), I_<((2,1)) = [6, 7), I_>((2,1)) = [8, 9)
        assert_eq!(interval(&[2, 1], Side::At, 3, 2).unwrap(), Some((7, 8)));
        assert_eq!(interval(&[2, 1], Side::Below, 3, 2).unwrap(), Some((6, 7)));
        assert_eq!(interval(&[2, 1], Side::Above, 3, 2).unwrap(), Some((8, 9)));
        // empty cases
        assert_eq!(interval(&[2, 0], Side::Below, 3, 2).unwrap(), None);
        assert_eq!(interval(&[2, 2], Side::Above, 3, 2).unwrap(), None);
        // empty prefix spans everything
        assert_eq!(interval(&[], Side::At, 3, 2).unwrap(), Some((0, 9)));
    }

    #[test]
    fn complete_graph_yields_only_consistency_boxes() {
        let pcd = classic_star(3);
        let graph = Hypergraph3::complete(4, 2).unwrap();
        assert_eq!(graph.edge_count(), 32);
        let instance = build_coverage_instance(&pcd, &graph, DEFAULT_BUDGET).unwrap();
        assert!(!instance.boxes.is_empty());
        assert!(instance
            .tags
            .iter()
            .all(|t| matches!(t, Provenance::Consistency { element: 4, .. })));
        assert_eq!(instance.bound, 4); // U = n^L = 2^2
    }

    #[test]
    fn empty_graph_yields_edge_boxes_for_every_triple() {
        let pcd = classic_star(3);
        let graph = Hypergraph3::new(4, 2, []).unwrap();
        let instance = build_coverage_instance(&pcd, &graph, DEFAULT_BUDGET).unwrap();
        let mut triples: Vec<[u64; 3]> = instance
            .tags
            .iter()
            .filter_map(|t| match t {
                Provenance::EdgeCheck { triple, .. } => Some(*triple),
                _ => None,
            })
            .collect();
        triples.sort_unstable();
        triples.dedup();
        assert_eq!(triples, vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
    }

    #[test]
    fn box_count_matches_census_and_elementary_bound() {
        use rand::prelude::*;
        let pcd = classic_star(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let graph = random_graph(&mut rng, 4, 2, 0.5);
            let instance = build_coverage_instance(&pcd, &graph, DEFAULT_BUDGET).unwrap();
            let census = expected_check_count(&pcd, &graph).unwrap();
            assert_eq!(instance.boxes.len() as u128, census);
            // elementary O(n^alpha) accounting from the proof
            assert!(census <= 4 * 8 + 3 * 2 * 8);
        }
    }

    #[test]
    fn depth_decomposition_examples() {
        // single box equal to the bounding box: complement empty
        let full = BoxInstance::new(1, 2, vec![vec![(0, 2)]], vec![Provenance::Unknown]).unwrap();
        let (depth, n) = coverage_to_depth(&full).unwrap();
        assert_eq!(depth.boxes.len(), 0);
        assert_eq!(n, 1);

        // left half of [0,2) in 1D: one slab [1,2)
        let half = BoxInstance::new(1, 2, vec![vec![(0, 1)]], vec![Provenance::Unknown]).unwrap();
        let (depth, n) = coverage_to_depth(&half).unwrap();
        assert_eq!(depth.boxes, vec![vec![(1, 2)]]);
        assert_eq!(n, 1);
    }

    #[test]
    fn slabs_of_one_box_are_disjoint_and_tile_the_complement() {
        let source = BoxInstance::new(
            3,
            4,
            vec![vec![(1, 3), (0, 2), (2, 4)]],
            vec![Provenance::Unknown],
        )
        .unwrap();
        let (depth, _) = coverage_to_depth(&source).unwrap();
        // every grid point: inside the source box XOR inside exactly one slab
        for x in 0..4u64 {
            for y in 0..4u64 {
                for z in 0..4u64 {
                    let p = [x, y, z];
                    let inside = |b: &AxisBox| {
                        b.iter()
                            .zip(p.iter())
                            .all(|(&(lo, hi), &c)| lo <= c && c < hi)
                    };
                    let in_source = inside(&source.boxes[0]);
                    let slab_hits = depth.boxes.iter().filter(|b| inside(b)).count();
                    assert_eq!(slab_hits, usize::from(!in_source), "point {p:?}");
                }
            }
        }
    }

    #[test]
    fn scaffold_and_checking_point_coordinates() {
        let pcd = classic_star(3);
        let graph = Hypergraph3::new(4, 2, []).unwrap();
        let instance = build_perimeter_instance(&pcd, &graph, DEFAULT_BUDGET).unwrap();
        assert_eq!(instance.dim, 6);
        assert_eq!(instance.extent, 4); // U = n^L = 2^2
        assert_eq!(instance.threshold, 3 * 5);
        // q(I; i) with I = the full range has subspace coordinates (0, 0):
        // realized by the interval [0, U) itself.
        let full = interval(&[], Side::At, 2, 2).unwrap().unwrap();
        assert_eq!((full.0, instance.extent - full.1), (0, 0));
        // scaffold points cover x = 0..=U in each subspace
        for i in 1..=3usize {
            for x in 0..=4u64 {
                assert!(instance
                    .tags
                    .contains(&Provenance::Scaffold { subspace: i, x }));
            }
        }
    }

    #[test]
    fn volume_instance_shares_geometry_with_perimeter() {
        let pcd = classic_star(3);
        let graph = Hypergraph3::new(4, 2, [[(1, 0), (2, 0), (3, 0)]]).unwrap();
        let per = build_perimeter_instance(&pcd, &graph, DEFAULT_BUDGET).unwrap();
        let vol = build_volume_instance(&pcd, &graph, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(per.points, vol.points);
        assert_eq!(per.threshold, vol.threshold);
        assert_eq!(vol.kind, PointKind::VolumeExponent { mu: 2 });
        // corner exponent sum at per-subspace (x_i + 1, U - x_i) telescopes
        // to d (U + 1) for every x choice
        let u = vol.extent;
        for x in [0u64, 1, 3] {
            assert_eq!(3 * ((x + 1) + (u - x)), vol.threshold);
        }
    }

    #[test]
    fn missing_edge_blocks_exactly_its_checking_point() {
        // complete graph minus one edge: the maximal corner encoding that
        // vertex choice is dominated by precisely the missing edge's
        // checking point
        let pcd = classic_star(3);
        let missing = [(1u64, 0u64), (2, 0), (3, 0)];
        let complete = Hypergraph3::complete(4, 2).unwrap();
        let edges: Vec<[(u64, u64); 3]> = complete
            .edges()
            .filter(|e| **e != missing)
            .copied()
            .collect();
        let graph = Hypergraph3::new(4, 2, edges).unwrap();
        let vol = build_volume_instance(&pcd, &graph, 2, DEFAULT_BUDGET).unwrap();
        let u = vol.extent;
        // all-zero vertex choice: x_i = 0 in every sequence, corner (1, U)
        // per subspace
        let corner: Vec<u64> = (0..3).flat_map(|_| [1, u]).collect();
        let blockers: Vec<&Provenance> = vol
            .points
            .iter()
            .zip(&vol.tags)
            .filter(|(p, _)| p.iter().zip(&corner).all(|(&pc, &bc)| pc < bc))
            .map(|(_, tag)| tag)
            .collect();
        assert_eq!(blockers.len(), 1);
        assert!(
            matches!(blockers[0], Provenance::EdgeCheck { triple: [1, 2, 3], f } if f.iter().all(|&v| v == 0))
        );
    }

    #[test]
    fn k_mismatch_is_rejected() {
        let pcd = classic_star(4); // K = 5
        let graph = Hypergraph3::new(4, 2, []).unwrap();
        assert!(matches!(
            build_coverage_instance(&pcd, &graph, DEFAULT_BUDGET),
            Err(Error::KMismatch {
                design_k: 5,
                graph_k: 4
            })
        ));
    }

    #[test]
    fn budget_guard_fires() {
        let pcd = classic_star(3);
        let graph = Hypergraph3::new(4, 3, []).unwrap();
        assert!(matches!(
            build_coverage_instance(&pcd, &graph, 10),
            Err(Error::AlphaOverflow { .. })
        ));
    }
}
