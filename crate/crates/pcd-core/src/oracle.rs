//! Brute-force reference solvers: hyperclique search, coverage / measure /
//! depth over a compressed grid, and empty anchored boxes. They certify
//! correctness at desk scale; performance is a non-goal.

use crate::error::{Error, Result};
use crate::reduce::{BoxInstance, Hypergraph3, PointInstance};

/// Hard cap on enumeration sizes; exceeding it is an error, never a
/// silent truncation.
pub const GUARD: u128 = 10_000_000;

/// Coordinate-compressed view of a box instance: per-axis sorted endpoint
/// lists (including the bounding-box ends) whose consecutive pairs are the
/// elementary cells.
pub struct CompressedGrid {
    pub axes: Vec<Vec<u64>>,
    pub cells_per_axis: Vec<usize>,
}

impl CompressedGrid {
    pub fn build(instance: &BoxInstance) -> Result<Self> {
        let mut axes = Vec::with_capacity(instance.dim);
        for axis in 0..instance.dim {
            let mut coords = vec![0, instance.bound];
            for b in &instance.boxes {
                coords.push(b[axis].0);
                coords.push(b[axis].1);
            }
            coords.sort_unstable();
            coords.dedup();
            axes.push(coords);
        }
        let cells_per_axis: Vec<usize> = axes.iter().map(|a| a.len() - 1).collect();
        let total = cells_per_axis.iter().try_fold(1u128, |acc, &c| {
            acc.checked_mul(c as u128).filter(|&t| t <= GUARD)
        });
        if total.is_none() {
            return Err(Error::TooLarge(format!(
                "more than {GUARD} elementary cells after compression"
            )));
        }
        Ok(Self {
            axes,
            cells_per_axis,
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cells_per_axis.iter().product()
    }

    /// Index range of cells a half-open interval spans on one axis.
    fn span(&self, axis: usize, lo: u64, hi: u64) -> (usize, usize) {
        let coords = &self.axes[axis];
        let a = coords
            .binary_search(&lo)
            .expect("endpoint is a grid coordinate");
        let b = coords
            .binary_search(&hi)
            .expect("endpoint is a grid coordinate");
        (a, b)
    }

    /// Lower corner of a cell in original coordinates.
    fn cell_corner(&self, cell: &[usize]) -> Vec<u64> {
        cell.iter()
            .enumerate()
            .map(|(axis, &i)| self.axes[axis][i])
            .collect()
    }

    /// Exact volume of a cell.
    fn cell_volume(&self, cell: &[usize]) -> Result<u128> {
        cell.iter().enumerate().try_fold(1u128, |acc, (axis, &i)| {
            let extent = (self.axes[axis][i + 1] - self.axes[axis][i]) as u128;
            acc.checked_mul(extent)
                .ok_or(Error::Overflow("cell volume"))
        })
    }

    fn for_each_cell(&self, mut body: impl FnMut(&[usize], usize)) {
        let dims = self.cells_per_axis.len();
        if self.cell_count() == 0 {
            return;
        }
        let mut cell = vec![0usize; dims];
        let mut flat = 0usize;
        loop {
            body(&cell, flat);
            flat += 1;
            let mut axis = dims;
            loop {
                if axis == 0 {
                    return;
                }
                axis -= 1;
                cell[axis] += 1;
                if cell[axis] < self.cells_per_axis[axis] {
                    break;
                }
                cell[axis] = 0;
                if axis == 0 {
                    return;
                }
            }
        }
    }

    /// Per-cell count of containing boxes.
    fn depth_map(&self, instance: &BoxInstance) -> Vec<u32> {
        let mut counts = vec![0u32; self.cell_count()];
        let strides = self.strides();
        for b in &instance.boxes {
            let spans: Vec<(usize, usize)> = (0..instance.dim)
                .map(|axis| self.span(axis, b[axis].0, b[axis].1))
                .collect();
            if spans.iter().any(|&(a, z)| a == z) {
                continue; // empty box
            }
            let mut cell: Vec<usize> = spans.iter().map(|&(a, _)| a).collect();
            loop {
                let flat: usize = cell.iter().zip(&strides).map(|(&c, &s)| c * s).sum();
                counts[flat] += 1;
                let mut axis = instance.dim;
                let mut done = true;
                while axis > 0 {
                    axis -= 1;
                    cell[axis] += 1;
                    if cell[axis] < spans[axis].1 {
                        done = false;
                        break;
                    }
                    cell[axis] = spans[axis].0;
                }
                if done {
                    break;
                }
            }
        }
        counts
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.cells_per_axis.len()];
        for axis in (0..self.cells_per_axis.len().saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * self.cells_per_axis[axis + 1];
        }
        strides
    }
}

/// Exhaustive search over the `n^K` vertex tuples; returns the
/// lexicographically first clique (one vertex per part) or `None`.
pub fn solve_hyperclique(graph: &Hypergraph3) -> Result<Option<Vec<u64>>> {
    let k = graph.parts();
    let n = graph.vertices_per_part();
    let total = (n as u128).checked_pow(k as u32).filter(|&t| t <= GUARD);
    if total.is_none() {
        return Err(Error::TooLarge(format!("n^K exceeds {GUARD}")));
    }
    let mut tuple = vec![0u64; k as usize];
    loop {
        let is_clique = (1..=k).all(|a| {
            (a + 1..=k).all(|b| {
                (b + 1..=k).all(|c| {
                    graph.has_edge(
                        (a, tuple[a as usize - 1]),
                        (b, tuple[b as usize - 1]),
                        (c, tuple[c as usize - 1]),
                    )
                })
            })
        });
        if is_clique {
            return Ok(Some(tuple));
        }
        let mut pos = tuple.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
            if pos == 0 {
                return Ok(None);
            }
        }
    }
}

/// Result of the coverage oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coverage {
    FullyCovered,
    /// Lower corner of an uncovered elementary cell, in original coordinates.
    Witness(Vec<u64>),
}

impl Coverage {
    pub fn is_covered(&self) -> bool {
        matches!(self, Coverage::FullyCovered)
    }
}

/// Marks every elementary cell covered by at least one box; returns the
/// first uncovered cell in lexicographic cell order, if any.
pub fn solve_coverage(instance: &BoxInstance) -> Result<Coverage> {
    let grid = CompressedGrid::build(instance)?;
    let counts = grid.depth_map(instance);
    let mut witness = None;
    grid.for_each_cell(|cell, flat| {
        if counts[flat] == 0 && witness.is_none() {
            witness = Some(grid.cell_corner(cell));
        }
    });
    Ok(witness.map_or(Coverage::FullyCovered, Coverage::Witness))
}

/// Exact covered volume (sum of covered cell extents) and the uncovered
/// remainder; the two always add up to `bound^dim`.
pub fn solve_measure(instance: &BoxInstance) -> Result<(u128, u128)> {
    let grid = CompressedGrid::build(instance)?;
    let counts = grid.depth_map(instance);
    let mut covered = 0u128;
    let mut uncovered = 0u128;
    let mut overflow = false;
    grid.for_each_cell(|cell, flat| match grid.cell_volume(cell) {
        Ok(v) => {
            if counts[flat] > 0 {
                covered += v;
            } else {
                uncovered += v;
            }
        }
        Err(_) => overflow = true,
    });
    if overflow {
        return Err(Error::Overflow("cell volume"));
    }
    Ok((covered, uncovered))
}

/// Maximum number of boxes containing a common point, with the lower corner
/// of the first cell attaining it. An instance without boxes has depth 0.
pub fn solve_depth(instance: &BoxInstance) -> Result<(u64, Vec<u64>)> {
    let grid = CompressedGrid::build(instance)?;
    let counts = grid.depth_map(instance);
    let mut best: u32 = 0;
    let mut witness = vec![0u64; instance.dim];
    let mut found = false;
    grid.for_each_cell(|cell, flat| {
        if !found || counts[flat] > best {
            best = counts[flat];
            witness = grid.cell_corner(cell);
            found = true;
        }
    });
    Ok((best as u64, witness))
}

/// Exhaustive empty-anchored-box search. A corner `b` (all coordinates
/// positive) is feasible iff no input point is strictly dominated by it,
/// `p_c < b_c` on every axis; the objective is the coordinate sum (for
/// volume instances coordinates are exponents, so this is the exponent
/// sum). Candidate corner coordinates per axis are the positive point
/// coordinates plus the axis maximum, which loses no optima: lowering a
/// coordinate to the next candidate below never unblocks a point.
pub fn solve_empty_anchored(instance: &PointInstance) -> Result<(u64, Vec<u64>)> {
    let candidates: Vec<Vec<u64>> = (0..instance.dim)
        .map(|axis| {
            let mut c: Vec<u64> = instance
                .points
                .iter()
                .map(|p| p[axis])
                .filter(|&x| x > 0)
                .collect();
            c.push(instance.extent.max(1));
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let total = candidates.iter().try_fold(1u128, |acc, c| {
        acc.checked_mul(c.len() as u128).filter(|&t| t <= GUARD)
    });
    if total.is_none() {
        return Err(Error::TooLarge(format!("corner candidates exceed {GUARD}")));
    }
    // maximum achievable objective from each axis onward, for pruning
    let mut suffix_max = vec![0u64; instance.dim + 1];
    for axis in (0..instance.dim).rev() {
        suffix_max[axis] = suffix_max[axis + 1] + candidates[axis].last().unwrap();
    }
    let mut state = Search {
        instance,
        candidates: &candidates,
        suffix_max: &suffix_max,
        corner: vec![0; instance.dim],
        best_value: 0,
        best_corner: None,
    };
    let alive: Vec<usize> = (0..instance.points.len()).collect();
    state.run(0, 0, &alive);
    // A point with all coordinates zero blocks every positive corner; only
    // the degenerate empty box remains then.
    let (value, corner) = match state.best_corner {
        Some(corner) => (state.best_value, corner),
        None => (0, vec![0; instance.dim]),
    };
    Ok((value, corner))
}

struct Search<'a> {
    instance: &'a PointInstance,
    candidates: &'a [Vec<u64>],
    suffix_max: &'a [u64],
    corner: Vec<u64>,
    best_value: u64,
    best_corner: Option<Vec<u64>>,
}

impl Search<'_> {
    /// Depth-first corner enumeration. `alive` holds the points dominated on
    /// every axis below `axis`; a leaf is blocked iff some point stays alive
    /// through all axes. Candidates are tried largest-first so the objective
    /// prune bites early.
    fn run(&mut self, axis: usize, value: u64, alive: &[usize]) {
        if axis == self.instance.dim {
            if alive.is_empty() && (self.best_corner.is_none() || value > self.best_value) {
                self.best_value = value;
                self.best_corner = Some(self.corner.clone());
            }
            return;
        }
        if self.best_corner.is_some() && value + self.suffix_max[axis] <= self.best_value {
            return;
        }
        for idx in (0..self.candidates[axis].len()).rev() {
            let b = self.candidates[axis][idx];
            self.corner[axis] = b;
            let next: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&p| self.instance.points[p][axis] < b)
                .collect();
            self.run(axis + 1, value + b, &next);
        }
    }
}

/// Reference version of the empty-anchored search over the full integer grid
/// `[1, extent]^dim`; only viable for tiny extents, used to validate the
/// candidate restriction.
pub fn empty_anchored_grid_search(instance: &PointInstance) -> Result<(u64, Vec<u64>)> {
    let extent = instance.extent.max(1);
    let total = (extent as u128)
        .checked_pow(instance.dim as u32)
        .filter(|&t| t <= GUARD);
    if total.is_none() {
        return Err(Error::TooLarge(format!(
            "grid search over extent^dim exceeds {GUARD}"
        )));
    }
    let mut corner = vec![1u64; instance.dim];
    let mut best_value = 0u64;
    let mut best_corner = None;
    loop {
        let blocked = instance
            .points
            .iter()
            .any(|p| p.iter().zip(&corner).all(|(&pc, &bc)| pc < bc));
        let value: u64 = corner.iter().sum();
        if !blocked && (best_corner.is_none() || value > best_value) {
            best_value = value;
            best_corner = Some(corner.clone());
        }
        let mut axis = instance.dim;
        loop {
            if axis == 0 {
                return Ok(finish_grid(best_value, best_corner, instance.dim));
            }
            axis -= 1;
            corner[axis] += 1;
            if corner[axis] <= extent {
                break;
            }
            corner[axis] = 1;
            if axis == 0 {
                return Ok(finish_grid(best_value, best_corner, instance.dim));
            }
        }
    }
}

fn finish_grid(best_value: u64, best_corner: Option<Vec<u64>>, dim: usize) -> (u64, Vec<u64>) {
    match best_corner {
        Some(corner) => (best_value, corner),
        None => (0, vec![0; dim]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{AxisBox, PointKind, Provenance};

    fn boxes(dim: usize, bound: u64, list: Vec<AxisBox>) -> BoxInstance {
        let tags = vec![Provenance::Unknown; list.len()];
        BoxInstance::new(dim, bound, list, tags).unwrap()
    }

    fn points(dim: usize, extent: u64, pts: Vec<Vec<u64>>) -> PointInstance {
        let tags = vec![Provenance::Unknown; pts.len()];
        PointInstance::new(dim, extent, pts, 0, PointKind::Perimeter, tags).unwrap()
    }

    #[test]
    fn hyperclique_trivial_cases() {
        let complete = Hypergraph3::complete(4, 2).unwrap();
        assert_eq!(
            solve_hyperclique(&complete).unwrap(),
            Some(vec![0, 0, 0, 0])
        );

        let empty = Hypergraph3::new(4, 2, []).unwrap();
        assert_eq!(solve_hyperclique(&empty).unwrap(), None);
    }

    #[test]
    fn hyperclique_avoids_excluded_vertex() {
        // all triples except those containing (part 1, vertex 0)
        let complete = Hypergraph3::complete(4, 2).unwrap();
        let edges: Vec<[(u64, u64); 3]> = complete
            .edges()
            .filter(|e| !e.contains(&(1, 0)))
            .copied()
            .collect();
        let graph = Hypergraph3::new(4, 2, edges).unwrap();
        assert_eq!(solve_hyperclique(&graph).unwrap(), Some(vec![1, 0, 0, 0]));
    }

    #[test]
    fn coverage_trivial_cases() {
        let full = boxes(2, 3, vec![vec![(0, 3), (0, 3)]]);
        assert_eq!(solve_coverage(&full).unwrap(), Coverage::FullyCovered);

        let tiled = boxes(1, 2, vec![vec![(0, 1)], vec![(1, 2)]]);
        assert_eq!(solve_coverage(&tiled).unwrap(), Coverage::FullyCovered);

        let gap = boxes(1, 3, vec![vec![(0, 1)], vec![(2, 3)]]);
        assert_eq!(solve_coverage(&gap).unwrap(), Coverage::Witness(vec![1]));
    }

    #[test]
    fn measure_examples() {
        let unit = boxes(2, 1, vec![vec![(0, 1), (0, 1)]]);
        assert_eq!(solve_measure(&unit).unwrap(), (1, 0));

        let disjoint = boxes(1, 4, vec![vec![(0, 1)], vec![(2, 3)]]);
        assert_eq!(solve_measure(&disjoint).unwrap(), (2, 2));

        let duplicated = boxes(2, 4, vec![vec![(1, 3), (1, 3)], vec![(1, 3), (1, 3)]]);
        assert_eq!(solve_measure(&duplicated).unwrap().0, 4);
    }

    #[test]
    fn depth_examples() {
        let overlapping = boxes(1, 4, vec![vec![(0, 2)], vec![(1, 3)]]);
        let (depth, witness) = solve_depth(&overlapping).unwrap();
        assert_eq!(depth, 2);
        assert_eq!(witness, vec![1]);

        let disjoint = boxes(1, 4, vec![vec![(0, 1)], vec![(2, 3)]]);
        assert_eq!(solve_depth(&disjoint).unwrap().0, 1);

        let none = boxes(2, 4, vec![]);
        assert_eq!(solve_depth(&none).unwrap().0, 0);
    }

    #[test]
    fn empty_anchored_no_points() {
        let inst = points(2, 1, vec![]);
        assert_eq!(solve_empty_anchored(&inst).unwrap(), (2, vec![1, 1]));
    }

    #[test]
    fn empty_anchored_center_point() {
        // one point in the middle: the best box gives up one axis's upper half
        let inst = points(2, 2, vec![vec![1, 1]]);
        let (value, corner) = solve_empty_anchored(&inst).unwrap();
        assert_eq!(value, 3);
        assert!(corner == vec![1, 2] || corner == vec![2, 1]);
    }

    #[test]
    fn zero_coordinate_points_still_block() {
        // the checking-point gadget relies on this
        let inst = points(2, 3, vec![vec![0, 1]]);
        let (value, _) = solve_empty_anchored(&inst).unwrap();
        // corner (3,3) is blocked by (0,1); (3,1) is the best at 4
        assert_eq!(value, 4);
    }

    #[test]
    fn candidate_restriction_matches_grid_search() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for round in 0..50 {
            let dim = rng.gen_range(2..=4usize);
            let extent = rng.gen_range(2..=6u64);
            let count = rng.gen_range(0..=8usize);
            let pts: Vec<Vec<u64>> = (0..count)
                .map(|_| (0..dim).map(|_| rng.gen_range(0..=extent)).collect())
                .collect();
            let inst = points(dim, extent, pts);
            let fast = solve_empty_anchored(&inst).unwrap();
            let slow = empty_anchored_grid_search(&inst).unwrap();
            assert_eq!(fast.0, slow.0, "round {round}: {inst:?}");
        }
    }

    #[test]
    fn measure_plus_uncovered_is_bounding_volume() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let dim = rng.gen_range(1..=3usize);
            let bound = rng.gen_range(1..=9u64);
            let count = rng.gen_range(0..=6usize);
            let list: Vec<AxisBox> = (0..count)
                .map(|_| {
                    (0..dim)
                        .map(|_| {
                            let a = rng.gen_range(0..=bound);
                            let b = rng.gen_range(0..=bound);
                            (a.min(b), a.max(b))
                        })
                        .collect()
                })
                .collect();
            let inst = boxes(dim, bound, list);
            let (covered, uncovered) = solve_measure(&inst).unwrap();
            assert_eq!(covered + uncovered, (bound as u128).pow(dim as u32));
        }
    }

    #[test]
    fn guards_reject_oversized_instances() {
        let graph = Hypergraph3::new(12, 6, []).unwrap();
        assert!(matches!(solve_hyperclique(&graph), Err(Error::TooLarge(_))));
    }
}
