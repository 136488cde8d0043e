//! Embedded known-good designs and reference table data, so the self-test
//! needs no network or external files.

use crate::covering::CoveringDesign;
use crate::design::PrefixCoveringDesign;

/// The (4, 40, 21) prefix covering design found by SAT search.
pub fn sat_design_d4() -> PrefixCoveringDesign {
    PrefixCoveringDesign::new(
        40,
        21,
        vec![
            vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 40, 19, 28, 37, 26],
            vec![11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 30, 9, 38, 27, 36],
            vec![21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 20, 39, 8, 7, 37],
            vec![31, 32, 33, 34, 35, 36, 37, 38, 39, 40, 10, 29, 18, 17, 27],
        ],
    )
    .expect("embedded design is well-formed")
}

/// The (5, 40, 18) prefix covering design found by SAT search.
pub fn sat_design_d5() -> PrefixCoveringDesign {
    PrefixCoveringDesign::new(
        40,
        18,
        vec![
            vec![1, 2, 3, 4, 5, 6, 7, 8, 24, 31, 38, 30, 14],
            vec![9, 10, 11, 12, 13, 14, 15, 16, 32, 40, 6, 31, 22],
            vec![17, 18, 19, 20, 21, 22, 23, 24, 8, 7, 39, 15, 30],
            vec![25, 26, 27, 28, 29, 30, 31, 32, 40, 16, 23, 39, 6],
            vec![33, 34, 35, 36, 37, 38, 39, 40, 16, 32, 15, 23],
        ],
    )
    .expect("embedded design is well-formed")
}

/// The Fano plane as a (7, 3, 2) covering design with 7 blocks.
pub fn fano() -> CoveringDesign {
    CoveringDesign::new(
        7,
        3,
        vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ],
    )
    .expect("embedded design is well-formed")
}

/// The trivial (3, 2, 2) covering design with 3 blocks.
pub fn cd_3_2() -> CoveringDesign {
    CoveringDesign::new(3, 2, vec![vec![1, 2], vec![1, 3], vec![2, 3]])
        .expect("embedded design is well-formed")
}

/// A (5, 3, 2) covering design with 4 blocks; scaling it by 4 yields the
/// (20, 12, 2) design with 4 blocks behind the d = 4 table row.
pub fn cd_5_3() -> CoveringDesign {
    CoveringDesign::new(
        5,
        3,
        vec![vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 5], vec![3, 4, 5]],
    )
    .expect("embedded design is well-formed")
}

/// The (20, 12, 2) covering design with 4 blocks used for the d = 4 row.
pub fn cd_20_12() -> CoveringDesign {
    cd_5_3()
        .scale_cd(4)
        .expect("scaling a valid design succeeds")
}

/// One row of the covering-design bound table: dimension, the (v, k)
/// parameters of the design behind it, and the bound d/(3 - 2v/(kd))
/// truncated to four decimals.
pub struct TableRow {
    pub d: u64,
    pub v: u64,
    pub k: u64,
    pub bound_4dp: &'static str,
}

/// Covering-design lower-bound table rows for d <= 13.
pub const BOUND_TABLE: &[TableRow] = &[
    TableRow {
        d: 3,
        v: 3,
        k: 2,
        bound_4dp: "1.5000",
    },
    TableRow {
        d: 4,
        v: 20,
        k: 12,
        bound_4dp: "1.8461",
    },
    TableRow {
        d: 5,
        v: 45,
        k: 25,
        bound_4dp: "2.1929",
    },
    TableRow {
        d: 6,
        v: 6,
        k: 3,
        bound_4dp: "2.5714",
    },
    TableRow {
        d: 7,
        v: 7,
        k: 3,
        bound_4dp: "3.0000",
    },
    TableRow {
        d: 8,
        v: 24,
        k: 10,
        bound_4dp: "3.3333",
    },
    TableRow {
        d: 9,
        v: 90,
        k: 36,
        bound_4dp: "3.6818",
    },
    TableRow {
        d: 10,
        v: 80,
        k: 30,
        bound_4dp: "4.0540",
    },
    TableRow {
        d: 11,
        v: 308,
        k: 110,
        bound_4dp: "4.4160",
    },
    TableRow {
        d: 12,
        v: 36,
        k: 12,
        bound_4dp: "4.8000",
    },
    TableRow {
        d: 13,
        v: 13,
        k: 4,
        bound_4dp: "5.2000",
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_designs_have_expected_parameters() {
        let d4 = sat_design_d4();
        assert_eq!((d4.d(), d4.universe(), d4.alpha()), (4, 40, 21));
        let d5 = sat_design_d5();
        assert_eq!((d5.d(), d5.universe(), d5.alpha()), (5, 40, 18));
        assert_eq!(fano().d(), 7);
        assert_eq!(cd_20_12().universe(), 20);
        assert_eq!(cd_20_12().block_size(), 12);
    }
}
