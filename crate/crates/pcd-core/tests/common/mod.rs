//! Shared generators for the integration suites. Everything is seeded, so
//! failures reproduce exactly.

use pcd_core::covering::{CoveringDesign, MultiMatching};
use pcd_core::design::PrefixCoveringDesign;
use pcd_core::reduce::Hypergraph3;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid covering design with a multi-matching by construction:
/// start from a random partition of the universe into d classes of size
/// v/d (the future matching), grow blocks until every pair is covered, then
/// equalize block sizes.
pub fn random_covering_design(
    rng: &mut ChaCha8Rng,
    d: usize,
    per_class: u64,
) -> (CoveringDesign, MultiMatching) {
    let v = d as u64 * per_class;
    let mut elements: Vec<u64> = (1..=v).collect();
    elements.shuffle(rng);
    let classes: Vec<Vec<u64>> = elements
        .chunks(per_class as usize)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    let mut blocks: Vec<Vec<u64>> = classes.clone();
    // cover every pair
    for a in 1..=v {
        for b in a + 1..=v {
            if blocks
                .iter()
                .any(|blk| blk.contains(&a) && blk.contains(&b))
            {
                continue;
            }
            let candidates: Vec<usize> = (0..d)
                .filter(|&i| blocks[i].contains(&a) || blocks[i].contains(&b))
                .collect();
            let i = *candidates.choose(rng).unwrap_or(&rng.gen_range(0..d));
            for e in [a, b] {
                if !blocks[i].contains(&e) {
                    blocks[i].push(e);
                }
            }
        }
    }
    // equalize sizes
    let k = blocks.iter().map(Vec::len).max().unwrap();
    for block in &mut blocks {
        let mut absent: Vec<u64> = (1..=v).filter(|e| !block.contains(e)).collect();
        absent.shuffle(rng);
        while block.len() < k {
            block.push(absent.pop().expect("k <= v leaves spare elements"));
        }
        block.sort_unstable();
    }
    let cd = CoveringDesign::new(v, k as u64, blocks).expect("generator output is well-formed");
    assert!(
        cd.verify_cd().is_valid(),
        "generator must produce valid designs"
    );
    let matching = cd
        .find_multimatching()
        .expect("v divisible by d")
        .matching()
        .expect("the initial partition is a multi-matching");
    (cd, matching)
}

/// Random valid PCD: deal a shuffled universe (one element to every
/// sequence first, so none is empty), sprinkle a few copies, and set alpha
/// to the computed minimum. Needs `k >= d`.
pub fn random_valid_pcd(
    rng: &mut ChaCha8Rng,
    d: usize,
    k: u64,
    max_len: usize,
) -> PrefixCoveringDesign {
    assert!(k >= d as u64, "every sequence needs an element");
    loop {
        let mut sequences = vec![Vec::new(); d];
        let mut elements: Vec<u64> = (1..=k).collect();
        elements.shuffle(rng);
        for (idx, e) in elements.into_iter().enumerate() {
            let target = if idx < d { idx } else { rng.gen_range(0..d) };
            sequences[target].push(e);
        }
        for _ in 0..rng.gen_range(0..=d) {
            let e = rng.gen_range(1..=k);
            let i = rng.gen_range(0..d);
            if !sequences[i].contains(&e) {
                let pos = rng.gen_range(0..=sequences[i].len());
                sequences[i].insert(pos, e);
            }
        }
        if sequences.iter().any(|s| s.len() > max_len) {
            continue;
        }
        let draft = PrefixCoveringDesign::new(k, 1, sequences).unwrap();
        if !draft.structural_violations().is_empty() {
            continue;
        }
        let alpha = draft.compute_alpha().expect("structurally valid");
        let pcd = draft.with_alpha(alpha).unwrap();
        debug_assert!(pcd.verify().is_valid());
        return pcd;
    }
}

/// Random K-partite 3-uniform hypergraph where each cross-part triple is an
/// edge with probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, parts: u64, n: u64, p: f64) -> Hypergraph3 {
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
    Hypergraph3::new(parts, n, edges).expect("generator output is well-formed")
}

/// External solver command template for the SAT tests: the PCD_SAT_SOLVER
/// environment variable if set, otherwise the bundled python DPLL fixture
/// when python3 is runnable, otherwise none.
#[allow(dead_code)] // not every test target uses the solver
pub fn solver_template() -> Option<String> {
    if let Ok(t) = std::env::var("PCD_SAT_SOLVER") {
        return Some(t);
    }
    let runnable = std::process::Command::new("python3")
        .arg("--version")
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()
        .map(|s| s.success())
        .unwrap_or(false);
    runnable.then(|| {
        format!(
            "python3 {}/tests/fixtures/mini_solver.py {{cnf}}",
            env!("CARGO_MANIFEST_DIR")
        )
    })
}
