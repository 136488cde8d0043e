//! Covering designs with t = 2: pair-coverage verification, scaling,
//! projective-plane generation, multi-matchings via max flow, and the
//! padding fallback that guarantees a multi-matching.

use crate::error::{Error, Result};

/// `d` blocks of nominal size `k` over the universe `1..=v` such that every
/// pair of elements lies in at least one block.
///
/// Padded designs (from [`pad_multimatch`](CoveringDesign::pad_multimatch))
/// carry the multiset accounting size in `block_size` and may hold smaller
/// block sets; they are rejected by strict verification and exist only to be
/// consumed by the covering-design-to-PCD transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringDesign {
    universe: u64,
    block_size: u64,
    blocks: Vec<Vec<u64>>,
    padded: bool,
}

/// A choice of `v/d` elements per block partitioning the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMatching {
    classes: Vec<Vec<u64>>,
}

impl MultiMatching {
    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    /// Checks that this is a multi-matching of `cd`: one class per block,
    /// each of size `v/d`, contained in its block, jointly partitioning
    /// `1..=v`.
    pub fn validate_for(&self, cd: &CoveringDesign) -> Result<()> {
        let d = cd.d() as u64;
        if !cd.universe.is_multiple_of(d) {
            return Err(Error::IndivisibleUniverse { v: cd.universe, d });
        }
        let per = cd.universe / d;
        if self.classes.len() != cd.d() {
            return Err(Error::InvalidInput("one class per block required".into()));
        }
        let mut seen = vec![false; cd.universe as usize];
        for (i, class) in self.classes.iter().enumerate() {
            if class.len() as u64 != per {
                return Err(Error::InvalidInput(format!(
                    "class {} has size {}, expected {per}",
                    i + 1,
                    class.len()
                )));
            }
            for &e in class {
                if !cd.blocks[i].contains(&e) {
                    return Err(Error::InvalidInput(format!(
                        "class {} element {e} not in its block",
                        i + 1
                    )));
                }
                let slot = &mut seen[e as usize - 1];
                if *slot {
                    return Err(Error::InvalidInput(format!("element {e} in two classes")));
                }
                *slot = true;
            }
        }
        // seen is all-true now: d * per elements marked without repeats.
        Ok(())
    }
}

/// Outcome of the multi-matching search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Matching(MultiMatching),
    Infeasible { max_flow: u64 },
}

impl MatchOutcome {
    pub fn matching(self) -> Option<MultiMatching> {
        match self {
            MatchOutcome::Matching(m) => Some(m),
            MatchOutcome::Infeasible { .. } => None,
        }
    }
}

/// Outcome of strict covering-design verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CdOutcome {
    Valid,
    /// Padded designs are not strict covering designs.
    Padded,
    /// Witness pair not contained in any block.
    Uncovered {
        a: u64,
        b: u64,
    },
}

impl CdOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, CdOutcome::Valid)
    }
}

impl CoveringDesign {
    pub fn new(universe: u64, block_size: u64, blocks: Vec<Vec<u64>>) -> Result<Self> {
        if universe < 2 {
            return Err(Error::InvalidInput(
                "universe must have at least 2 elements".into(),
            ));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidInput("at least one block required".into()));
        }
        let mut blocks = blocks;
        for (i, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            if block.len() as u64 != block_size {
                return Err(Error::InvalidInput(format!(
                    "block {} has {} elements, expected k={block_size}",
                    i + 1,
                    block.len()
                )));
            }
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!(
                    "block {} repeats an element",
                    i + 1
                )));
            }
            if let Some(&e) = block.iter().find(|&&e| e == 0 || e > universe) {
                return Err(Error::InvalidInput(format!(
                    "block {} element {e} outside 1..={universe}",
                    i + 1
                )));
            }
        }
        Ok(Self {
            universe,
            block_size,
            blocks,
            padded: false,
        })
    }

    pub fn d(&self) -> usize {
        self.blocks.len()
    }

    /// Universe size `v`.
    pub fn universe(&self) -> u64 {
        self.universe
    }

    /// Nominal block size `k`. Every block set has exactly this size unless
    /// the design is padded.
    pub fn block_size(&self) -> u64 {
        self.block_size
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn is_padded(&self) -> bool {
        self.padded
    }

    /// Internal constructor for padded designs; callers guarantee the blocks
    /// are sorted, distinct and in range.
    pub(crate) fn padded_unchecked(universe: u64, block_size: u64, blocks: Vec<Vec<u64>>) -> Self {
        Self {
            universe,
            block_size,
            blocks,
            padded: true,
        }
    }

    /// Checks every pair of `1..=v` for coverage (t = 2). Padded designs are
    /// rejected outright. On success the `k >= 2v/d` lemma is asserted; a
    /// failure there would disprove the verifier itself.
    pub fn verify_cd(&self) -> CdOutcome {
        if self.padded {
            return CdOutcome::Padded;
        }
        let v = self.universe as usize;
        let mut covered = vec![false; v * v];
        for block in &self.blocks {
            for (ai, &a) in block.iter().enumerate() {
                for &b in &block[ai + 1..] {
                    covered[(a as usize - 1) * v + (b as usize - 1)] = true;
                }
            }
        }
        for a in 0..v {
            for b in a + 1..v {
                if !covered[a * v + b] {
                    return CdOutcome::Uncovered {
                        a: a as u64 + 1,
                        b: b as u64 + 1,
                    };
                }
            }
        }
        if self.d() >= 2 {
            assert!(
                self.block_size * self.d() as u64 >= 2 * self.universe,
                "k >= 2v/d must hold for every verified covering design"
            );
        }
        CdOutcome::Valid
    }

    /// Counts in how many blocks each pair occurs; used to check the
    /// exact-once property of projective planes.
    pub fn pair_multiplicities(&self) -> Vec<u32> {
        let v = self.universe as usize;
        let mut count = vec![0u32; v * v];
        for block in &self.blocks {
            for (ai, &a) in block.iter().enumerate() {
                for &b in &block[ai + 1..] {
                    count[(a as usize - 1) * v + (b as usize - 1)] += 1;
                }
            }
        }
        (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .map(|(a, b)| count[a * v + b])
            .collect()
    }

    /// Replaces element `e` by the `factor` fresh elements
    /// `(e-1)*factor+1 ..= e*factor` in every block, giving a
    /// `(v*factor, k*factor, 2)` design with the same block count.
    pub fn scale_cd(&self, factor: u64) -> Result<CoveringDesign> {
        if factor == 0 {
            return Err(Error::InvalidInput("scale factor must be positive".into()));
        }
        if !self.verify_cd().is_valid() {
            return Err(Error::InvalidInput(
                "scale_cd requires a valid covering design".into(),
            ));
        }
        let universe = self
            .universe
            .checked_mul(factor)
            .ok_or(Error::Overflow("v * factor"))?;
        let block_size = self
            .block_size
            .checked_mul(factor)
            .ok_or(Error::Overflow("k * factor"))?;
        let blocks = self
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .flat_map(|&e| (e - 1) * factor + 1..=e * factor)
                    .collect()
            })
            .collect();
        CoveringDesign::new(universe, block_size, blocks)
    }

    /// Decides multi-matching feasibility exactly via max flow
    /// (source -> block with capacity v/d, block -> member, member -> sink)
    /// and extracts the matching when the flow saturates the universe.
    pub fn find_multimatching(&self) -> Result<MatchOutcome> {
        let d = self.d() as u64;
        let v = self.universe;
        if !v.is_multiple_of(d) {
            return Err(Error::IndivisibleUniverse { v, d });
        }
        let per = v / d;
        let nodes = 2 + self.d() + v as usize;
        let source = 0;
        let sink = nodes - 1;
        let block_node = |i: usize| 1 + i;
        let elem_node = |e: u64| 1 + self.d() + (e as usize - 1);
        let mut net = Dinic::new(nodes);
        let mut block_edges = Vec::with_capacity(self.d());
        for (i, block) in self.blocks.iter().enumerate() {
            net.add_edge(source, block_node(i), per);
            let mut edges = Vec::with_capacity(block.len());
            for &e in block {
                edges.push((e, net.add_edge(block_node(i), elem_node(e), 1)));
            }
            block_edges.push(edges);
        }
        for e in 1..=v {
            net.add_edge(elem_node(e), sink, 1);
        }
        let flow = net.max_flow(source, sink);
        if flow < v {
            return Ok(MatchOutcome::Infeasible { max_flow: flow });
        }
        let classes = block_edges
            .iter()
            .map(|edges| {
                let mut class: Vec<u64> = edges
                    .iter()
                    .filter(|&&(_, id)| net.edge_flow(id) > 0)
                    .map(|&(e, _)| e)
                    .collect();
                class.sort_unstable();
                class
            })
            .collect();
        let matching = MultiMatching { classes };
        matching.validate_for(self)?;
        Ok(MatchOutcome::Matching(matching))
    }

    /// Padding fallback: block `i` absorbs the elements of the `i`-th chunk
    /// `{(i-1)v/d + 1, ..., i*v/d}` of the universe, so the chunks form a
    /// multi-matching by construction. The returned design keeps the
    /// multiset accounting size `k + v/d` as its nominal block size and is
    /// tagged padded; only the transformation consumes it.
    pub fn pad_multimatch(&self) -> Result<(CoveringDesign, MultiMatching)> {
        if self.padded {
            return Err(Error::InvalidInput("design is already padded".into()));
        }
        if !self.verify_cd().is_valid() {
            return Err(Error::InvalidInput(
                "pad requires a valid covering design".into(),
            ));
        }
        let d = self.d() as u64;
        if !self.universe.is_multiple_of(d) {
            return Err(Error::IndivisibleUniverse {
                v: self.universe,
                d,
            });
        }
        let per = self.universe / d;
        let mut blocks = Vec::with_capacity(self.d());
        let mut classes = Vec::with_capacity(self.d());
        for (i, block) in self.blocks.iter().enumerate() {
            let chunk: Vec<u64> = (i as u64 * per + 1..=(i as u64 + 1) * per).collect();
            let mut merged: Vec<u64> = block.iter().copied().chain(chunk.iter().copied()).collect();
            merged.sort_unstable();
            merged.dedup();
            blocks.push(merged);
            classes.push(chunk);
        }
        let padded = CoveringDesign::padded_unchecked(self.universe, self.block_size + per, blocks);
        let matching = MultiMatching { classes };
        matching.validate_for(&padded)?;
        Ok((padded, matching))
    }
}

/// The `(q^2+q+1, q+1, 2)` covering design of the projective plane of prime
/// order `q`: points are the nonzero vectors over the integers mod `q`
/// normalized to leading coordinate 1, a point lies on a line iff their dot
/// product vanishes mod `q`.
pub fn projective_plane(q: u64) -> Result<CoveringDesign> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let vectors = normalized_vectors(q);
    let v = vectors.len() as u64;
    debug_assert_eq!(v, q * q + q + 1);
    let blocks = vectors
        .iter()
        .map(|line| {
            let block: Vec<u64> = vectors
                .iter()
                .enumerate()
                .filter(|(_, p)| (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0)
                .map(|(idx, _)| idx as u64 + 1)
                .collect();
            debug_assert_eq!(block.len() as u64, q + 1);
            block
        })
        .collect();
    CoveringDesign::new(v, q + 1, blocks)
}

fn normalized_vectors(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            out.push([1, a, b]);
        }
    }
    for b in 0..q {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Plain Dinic max flow; node and edge counts here are tiny.
struct Dinic {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    initial: Vec<u64>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            initial: Vec::new(),
        }
    }

    /// Returns the forward edge id for later flow extraction.
    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.adj[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.initial.push(cap);
        self.adj[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        self.initial.push(0);
        id
    }

    fn edge_flow(&self, id: usize) -> u64 {
        self.initial[id] - self.cap[id]
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut flow = 0;
        loop {
            let level = self.bfs(source, sink);
            if level[sink].is_none() {
                return flow;
            }
            let mut iter = vec![0usize; self.adj.len()];
            loop {
                let pushed = self.dfs(source, sink, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    fn bfs(&self, source: usize, sink: usize) -> Vec<Option<u32>> {
        let mut level = vec![None; self.adj.len()];
        level[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &id in &self.adj[u] {
                let w = self.to[id];
                if self.cap[id] > 0 && level[w].is_none() {
                    level[w] = Some(level[u].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        level
    }

    fn dfs(
        &mut self,
        u: usize,
        sink: usize,
        limit: u64,
        level: &[Option<u32>],
        iter: &mut [usize],
    ) -> u64 {
        if u == sink {
            return limit;
        }
        while iter[u] < self.adj[u].len() {
            let id = self.adj[u][iter[u]];
            let w = self.to[id];
            if self.cap[id] > 0 && level[w] == level[u].map(|l| l + 1) {
                let pushed = self.dfs(w, sink, limit.min(self.cap[id]), level, iter);
                if pushed > 0 {
                    self.cap[id] -= pushed;
                    self.cap[id ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    #[test]
    fn fano_is_valid() {
        assert_eq!(golden::fano().verify_cd(), CdOutcome::Valid);
    }

    #[test]
    fn fano_without_a_block_has_a_witness() {
        let mut blocks = golden::fano().blocks().to_vec();
        blocks.retain(|b| b != &vec![3, 5, 6]);
        let cd = CoveringDesign::new(7, 3, blocks).unwrap();
        let outcome = cd.verify_cd();
        assert!(matches!(
            outcome,
            CdOutcome::Uncovered { a: 3, b: 5 }
                | CdOutcome::Uncovered { a: 3, b: 6 }
                | CdOutcome::Uncovered { a: 5, b: 6 }
        ));
    }

    #[test]
    fn trivial_3_2_design_is_valid() {
        assert_eq!(golden::cd_3_2().verify_cd(), CdOutcome::Valid);
    }

    #[test]
    fn scaling_examples() {
        let scaled = golden::fano().scale_cd(7).unwrap();
        assert_eq!(
            (scaled.universe(), scaled.block_size(), scaled.d()),
            (49, 21, 7)
        );
        assert_eq!(scaled.verify_cd(), CdOutcome::Valid);

        assert_eq!(golden::fano().scale_cd(1).unwrap(), golden::fano());

        let scaled = golden::cd_3_2().scale_cd(3).unwrap();
        assert_eq!(
            (scaled.universe(), scaled.block_size(), scaled.d()),
            (9, 6, 3)
        );
        assert_eq!(scaled.verify_cd(), CdOutcome::Valid);
    }

    #[test]
    fn fano_has_a_system_of_distinct_representatives() {
        let cd = golden::fano();
        let matching = cd.find_multimatching().unwrap().matching().unwrap();
        matching.validate_for(&cd).unwrap();
        assert!(matching.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn trivial_design_matching() {
        let cd = golden::cd_3_2();
        let matching = cd.find_multimatching().unwrap().matching().unwrap();
        matching.validate_for(&cd).unwrap();
    }

    #[test]
    fn infeasible_when_elements_unreachable() {
        // Elements 5 and 6 appear in no block; max flow stalls at 4.
        let cd = CoveringDesign::new(6, 2, vec![vec![1, 2], vec![1, 3], vec![3, 4]]).unwrap();
        assert_eq!(
            cd.find_multimatching().unwrap(),
            MatchOutcome::Infeasible { max_flow: 4 }
        );
    }

    #[test]
    fn indivisible_universe_is_an_error() {
        let cd = CoveringDesign::new(
            5,
            3,
            vec![vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 5], vec![3, 4, 5]],
        )
        .unwrap();
        assert!(matches!(
            cd.find_multimatching(),
            Err(Error::IndivisibleUniverse { v: 5, d: 4 })
        ));
    }

    #[test]
    fn projective_planes() {
        let p2 = projective_plane(2).unwrap();
        assert_eq!((p2.universe(), p2.block_size(), p2.d()), (7, 3, 7));
        assert_eq!(p2.verify_cd(), CdOutcome::Valid);

        let p3 = projective_plane(3).unwrap();
        assert_eq!((p3.universe(), p3.block_size(), p3.d()), (13, 4, 13));
        assert_eq!(p3.verify_cd(), CdOutcome::Valid);

        let p5 = projective_plane(5).unwrap();
        assert_eq!((p5.universe(), p5.block_size(), p5.d()), (31, 6, 31));
        assert_eq!(p5.verify_cd(), CdOutcome::Valid);
        assert!(p5.pair_multiplicities().iter().all(|&m| m == 1));
        // every element on exactly q+1 lines
        for e in 1..=31 {
            let occur = p5.blocks().iter().filter(|b| b.contains(&e)).count();
            assert_eq!(occur, 6);
        }
    }

    #[test]
    fn composite_orders_are_rejected() {
        assert!(matches!(projective_plane(4), Err(Error::NotPrime(4))));
        assert!(matches!(projective_plane(6), Err(Error::NotPrime(6))));
        assert!(matches!(projective_plane(1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn padding_fano() {
        let (padded, matching) = golden::fano().pad_multimatch().unwrap();
        assert!(padded.is_padded());
        assert_eq!(padded.block_size(), 4);
        assert_eq!(padded.verify_cd(), CdOutcome::Padded);
        // The attached matching is the chunk partition.
        assert_eq!(
            matching.classes(),
            (1..=7u64).map(|i| vec![i]).collect::<Vec<_>>()
        );
        // The flow solver also succeeds on the padded design.
        assert!(matches!(
            padded.find_multimatching().unwrap(),
            MatchOutcome::Matching(_)
        ));
    }

    /// Backtracking reference: can the universe be partitioned into
    /// per-block classes of size v/d?
    pub fn exhaustive_multimatching(cd: &CoveringDesign) -> bool {
        let d = cd.d();
        let per = (cd.universe() / d as u64) as usize;
        let mut load = vec![0usize; d];
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); cd.universe() as usize];
        for (i, block) in cd.blocks().iter().enumerate() {
            for &e in block {
                holders[e as usize - 1].push(i);
            }
        }
        fn go(e: usize, holders: &[Vec<usize>], load: &mut [usize], per: usize) -> bool {
            if e == holders.len() {
                return true;
            }
            for &i in &holders[e] {
                if load[i] < per {
                    load[i] += 1;
                    if go(e + 1, holders, load, per) {
                        return true;
                    }
                    load[i] -= 1;
                }
            }
            false
        }
        go(0, &holders, &mut load, per)
    }

    #[test]
    fn flow_matches_exhaustive_search() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..120 {
            let d = rng.gen_range(2..=4usize);
            let per = rng.gen_range(1..=4usize);
            let v = (d * per) as u64;
            let k = rng.gen_range(1..=v);
            let blocks: Vec<Vec<u64>> = (0..d)
                .map(|_| {
                    let mut all: Vec<u64> = (1..=v).collect();
                    all.shuffle(&mut rng);
                    let mut b: Vec<u64> = all.into_iter().take(k as usize).collect();
                    b.sort_unstable();
                    b
                })
                .collect();
            let cd = CoveringDesign::new(v, k, blocks).unwrap();
            let flow_feasible =
                matches!(cd.find_multimatching().unwrap(), MatchOutcome::Matching(_));
            assert_eq!(flow_feasible, exhaustive_multimatching(&cd), "{cd:?}");
        }
    }
}
