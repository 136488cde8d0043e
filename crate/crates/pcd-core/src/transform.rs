//! Covering-design-to-PCD transformations, the general-dimension
//! construction, the classic generators, and closed-form bound calculators.

use crate::covering::{projective_plane, CoveringDesign, MatchOutcome, MultiMatching};
use crate::design::PrefixCoveringDesign;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Inputs of the n-replicated transformation.
///
/// With `v' = v/d` and nominal block size `k`, each PCD sequence holds
/// `m = nk - (n-1)v'` fresh prefix elements, and the claimed budget is
/// `T = 3nk - (2n-3)v'`.
#[derive(Debug, Clone)]
pub struct TransformParams {
    replication: u64,
    source: CoveringDesign,
    matching: MultiMatching,
}

impl TransformParams {
    pub fn new(replication: u64, source: CoveringDesign, matching: MultiMatching) -> Result<Self> {
        if replication == 0 {
            return Err(Error::InvalidInput(
                "replication count must be at least 1".into(),
            ));
        }
        matching.validate_for(&source)?;
        Ok(Self {
            replication,
            source,
            matching,
        })
    }

    pub fn replication(&self) -> u64 {
        self.replication
    }

    pub fn source(&self) -> &CoveringDesign {
        &self.source
    }

    fn per_class(&self) -> u64 {
        self.source.universe() / self.source.d() as u64
    }

    /// Fresh prefix elements per sequence, `m = nk - (n-1)v'`.
    pub fn fresh_per_sequence(&self) -> u64 {
        let n = self.replication;
        n * self.source.block_size() - (n - 1) * self.per_class()
    }

    /// Universe of the produced design, `K = (nk + v')d`.
    pub fn produced_universe(&self) -> Result<u64> {
        let n = self.replication as u128;
        let k = self.source.block_size() as u128;
        let vp = self.per_class() as u128;
        let d = self.source.d() as u128;
        u64::try_from((n * k + vp) * d).map_err(|_| Error::Overflow("(nk + v')d"))
    }

    /// Claimed budget of the produced design, `T = 3nk - (2n-3)v'`.
    pub fn produced_alpha(&self) -> Result<u64> {
        let n = self.replication as i128;
        let k = self.source.block_size() as i128;
        let vp = self.per_class() as i128;
        u64::try_from(3 * n * k - (2 * n - 3) * vp).map_err(|_| Error::Overflow("3nk - (2n-3)v'"))
    }
}

/// The covering-design-to-PCD transformation. Sequence `i` is laid out as
/// `(A_i, U_i^1, ..., U_i^n, R_i^n, ..., R_i^1)`: `m` fresh elements, then
/// the matching class of block `i` in each of the `n` replicated copies
/// (copy `j` renames element `x` to `(j-1)v + x`), then the remaining block
/// elements in reverse copy order. Fresh elements for sequence `i` are
/// `nv + (i-1)m + 1 ..= nv + im`.
pub fn cd_to_pcd(params: &TransformParams) -> Result<PrefixCoveringDesign> {
    let cd = &params.source;
    let n = params.replication;
    let v = cd.universe();
    let m = params.fresh_per_sequence();
    let universe = params.produced_universe()?;
    let alpha = params.produced_alpha()?;
    let sequences = cd
        .blocks()
        .iter()
        .zip(params.matching.classes())
        .enumerate()
        .map(|(i, (block, class))| {
            let rest: Vec<u64> = block
                .iter()
                .copied()
                .filter(|e| !class.contains(e))
                .collect();
            let fresh_base = n * v + i as u64 * m;
            let mut seq: Vec<u64> = (fresh_base + 1..=fresh_base + m).collect();
            for j in 0..n {
                seq.extend(class.iter().map(|&x| j * v + x));
            }
            for j in (0..n).rev() {
                seq.extend(rest.iter().map(|&x| j * v + x));
            }
            seq
        })
        .collect();
    PrefixCoveringDesign::new(universe, alpha, sequences)
}

/// The `(3, 3g, 2g+1)` cyclic design: with `a_i = i`, `b_i = g+i`,
/// `c_i = 2g+i`, the sequences are `(a_1..a_g, b_g..b_1)`,
/// `(b_1..b_g, c_g..c_1)` and `(c_1..c_g, a_g..a_1)`.
pub fn classic_cyclic(g: u64) -> PrefixCoveringDesign {
    assert!(g >= 1, "cyclic construction needs g >= 1");
    let band = |offset: u64| offset * g + 1..=offset * g + g;
    let seq = |head: u64, tail: u64| -> Vec<u64> { band(head).chain(band(tail).rev()).collect() };
    PrefixCoveringDesign::new(3 * g, 2 * g + 1, vec![seq(0, 1), seq(1, 2), seq(2, 0)])
        .expect("cyclic construction is well-formed")
}

/// The `(d, d+1, 3)` design with `s_i = (i, d+1)`.
pub fn classic_star(d: u64) -> PrefixCoveringDesign {
    assert!(d >= 3, "star construction needs d >= 3");
    let sequences = (1..=d).map(|i| vec![i, d + 1]).collect();
    PrefixCoveringDesign::new(d + 1, 3, sequences).expect("star construction is well-formed")
}

/// General-dimension construction: the n-replicated projective-plane design
/// on the largest prime plane fitting under `d_target`, extended by fresh
/// sequences of length `nk - (2n-1)` (one per missing dimension) so that the
/// budget `3nk - 2n + 3` is preserved.
///
/// Below the smallest plane (`d_target < 7`) this falls back to the classic
/// generators: `classic_cyclic(n)` for d = 3, `classic_star(d_target)` for
/// d in 4..=6.
pub fn general_pcd(d_target: u64, replication: u64) -> Result<PrefixCoveringDesign> {
    if d_target < 3 {
        return Err(Error::UnsupportedDimension(d_target));
    }
    if replication == 0 {
        return Err(Error::InvalidInput(
            "replication count must be at least 1".into(),
        ));
    }
    if d_target < 7 {
        return Ok(if d_target == 3 {
            classic_cyclic(replication)
        } else {
            classic_star(d_target)
        });
    }
    let p = largest_plane_prime(d_target);
    let plane = projective_plane(p)?;
    let matching = match plane.find_multimatching()? {
        MatchOutcome::Matching(m) => m,
        MatchOutcome::Infeasible { .. } => {
            unreachable!("projective planes admit matchings by Hall's theorem")
        }
    };
    let d = plane.d() as u64;
    let params = TransformParams::new(replication, plane, matching)?;
    let base = cd_to_pcd(&params)?;
    let n = replication;
    let k = p + 1;
    let extra_len = n * k - (2 * n - 1);
    let mut universe = base.universe();
    let mut sequences = base.sequences().to_vec();
    for _ in d..d_target {
        sequences.push((universe + 1..=universe + extra_len).collect());
        universe += extra_len;
    }
    PrefixCoveringDesign::new(universe, base.alpha(), sequences)
}

fn largest_plane_prime(d_target: u64) -> u64 {
    let mut best = 2;
    let mut p = 2;
    while p * p + p < d_target {
        if (2..p).all(|f| p % f != 0) && p * p + p < d_target {
            best = p;
        }
        p += 1;
    }
    best
}

/// The square-root upper bound `d / (3(1 - sqrt(2/d)))`: exact when `2d` is
/// a perfect square, floating otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UpperBound {
    Exact(Rat),
    Approx(f64),
}

impl UpperBound {
    pub fn to_f64(self) -> f64 {
        match self {
            UpperBound::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            UpperBound::Approx(x) => x,
        }
    }
}

/// `gamma_d <= d / (3(1 - sqrt(2/d)))`. With `t = sqrt(2d)` integral this is
/// the exact rational `d^2 / (3(d - t))`.
pub fn sqrt_upper_bound(d: u64) -> Result<UpperBound> {
    if d < 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    let t = (2 * d as u128).isqrt() as u64;
    if t * t == 2 * d {
        Ok(UpperBound::Exact(Rat::new(d * d, 3 * (d - t))))
    } else {
        let d = d as f64;
        Ok(UpperBound::Approx(d / (3.0 * (1.0 - (2.0 / d).sqrt()))))
    }
}

/// Closed-form covering-design lower bound `d / (3 - 2v/(kd))` as an exact
/// rational, `= k d^2 / (3kd - 2v)`.
pub fn covering_lower_bound(d: u64, v: u64, k: u64) -> Rat {
    Rat::new(k * d * d, 3 * k * d - 2 * v)
}

/// Bound summary for one dimension, from either kind of design.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub d: u64,
    /// `K` and `alpha` when the source is a PCD.
    pub universe: Option<u64>,
    pub alpha: Option<u64>,
    /// `K / alpha` for PCDs.
    pub quality: Option<Rat>,
    /// `d / (3 - 2v/(kd))` for covering designs.
    pub covering_lower: Option<Rat>,
    /// True when the matching only exists after padding; the bound then uses
    /// the padded accounting `d / (3 - 2v/(kd + v))`.
    pub padded: bool,
    pub upper: UpperBound,
    /// The `n^{d/2}` algorithmic upper bound, `d/2`.
    pub half_d: Rat,
}

impl BoundReport {
    /// The strongest lower bound this report carries.
    pub fn lower(&self) -> Option<Rat> {
        match (self.quality, self.covering_lower) {
            (Some(q), Some(c)) => Some(q.max(c)),
            (q, c) => q.or(c),
        }
    }
}

/// Bound report for a verified PCD: quality is `K / compute_alpha`.
pub fn bound_from_pcd(pcd: &PrefixCoveringDesign) -> Result<BoundReport> {
    let report = pcd.verify();
    if !report.is_valid() {
        return Err(Error::InvalidInput(format!(
            "bound report requires a valid design: {}",
            report.violations[0]
        )));
    }
    let alpha = pcd.compute_alpha()?;
    let d = pcd.d() as u64;
    Ok(BoundReport {
        d,
        universe: Some(pcd.universe()),
        alpha: Some(alpha),
        quality: Some(Rat::new(pcd.universe(), alpha)),
        covering_lower: None,
        padded: false,
        upper: sqrt_upper_bound(d)?,
        half_d: Rat::new(d, 2),
    })
}

/// Bound report for a covering design. The design is verified, scaled by `d`
/// when `v` is not divisible by `d`, and checked for a multi-matching; if
/// none exists the padding fallback applies and the bound weakens to
/// `d / (3 - 2v/(kd + v))`.
pub fn bound_from_covering(cd: &CoveringDesign) -> Result<BoundReport> {
    if !cd.verify_cd().is_valid() {
        return Err(Error::InvalidInput(
            "bound report requires a valid covering design".into(),
        ));
    }
    let d = cd.d() as u64;
    let (v, k) = (cd.universe(), cd.block_size());
    let aligned = if v % d == 0 {
        cd.clone()
    } else {
        cd.scale_cd(d)?
    };
    let (lower, padded) = match aligned.find_multimatching()? {
        MatchOutcome::Matching(_) => (covering_lower_bound(d, v, k), false),
        MatchOutcome::Infeasible { .. } => {
            let (padded_cd, matching) = aligned.pad_multimatch()?;
            matching.validate_for(&padded_cd)?;
            // nominal size of the padded design relative to the original
            // parameters: d / (3 - 2v/(kd + v)).
            (Rat::new(k * d * d + v * d, 3 * (k * d + v) - 2 * v), true)
        }
    };
    Ok(BoundReport {
        d,
        universe: None,
        alpha: None,
        quality: None,
        covering_lower: Some(lower),
        padded,
        upper: sqrt_upper_bound(d)?,
        half_d: Rat::new(d, 2),
    })
}
