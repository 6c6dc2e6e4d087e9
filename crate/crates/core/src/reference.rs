//! Printed reference values, transcribed literally (including misprints) so
//! that the verification suites compare against exactly what was published.

use num_rational::BigRational;

use crate::arith::rational;
use crate::cyclotomic::CycNumber;
use crate::modular::Cusp;

/// Leading terms of a printed q-expansion as (exponent, coefficient) pairs.
pub struct PrintedExpansion {
    pub label: &'static str,
    pub terms: &'static [(u64, i64)],
}

const E4_2: &[(u64, i64)] = &[(1, 1), (3, 4), (5, 6), (7, 8), (9, 13), (11, 12)];
const E8_3: &[(u64, i64)] = &[(2, 1), (6, 4), (10, 6), (14, 8), (18, 13), (22, 12)];
const E16_2: &[(u64, i64)] = &[(1, 1), (5, 6), (9, 13), (13, 14), (17, 18), (21, 32)];
const E16_3: &[(u64, i64)] = &[(3, 1), (7, 2), (11, 3), (15, 6), (19, 5), (23, 6)];
const E16_5: &[(u64, i64)] = &[(4, 1), (12, 4), (20, 6), (28, 8)];
const E64_2: &[(u64, i64)] = &[(1, 1), (9, 13), (17, 18), (25, 31)];
const E64_3: &[(u64, i64)] = &[(3, 1), (11, 3), (19, 5), (27, 10)];
const E64_4: &[(u64, i64)] = &[(5, 3), (13, 7), (21, 16), (29, 15), (37, 19)];
const E64_5: &[(u64, i64)] = &[(7, 1), (15, 3), (23, 3), (31, 4)];
const E64_9: &[(u64, i64)] = &[(12, 1), (28, 2), (44, 3), (60, 6), (76, 5)];
const E64_10: &[(u64, i64)] = &[(8, 1), (24, 4), (40, 6), (56, 8)];
const E64_11: &[(u64, i64)] = &[(16, 1), (48, 4), (80, 6)];

/// Printed expansions of the labelled bases of level `2^k`, `k <= 7`.
pub const POWER_OF_TWO_EXPANSIONS: &[PrintedExpansion] = &[
    PrintedExpansion { label: "E2,1", terms: &[(0, 1), (1, 24), (2, 24), (3, 96), (4, 24), (5, 144)] },
    PrintedExpansion { label: "E4,1", terms: &[(0, 1), (2, 24), (4, 24), (6, 96), (8, 24), (10, 144)] },
    PrintedExpansion { label: "E4,2", terms: E4_2 },
    PrintedExpansion { label: "E8,1", terms: &[(0, 1), (4, 24), (8, 24), (12, 96), (16, 24), (20, 144)] },
    PrintedExpansion { label: "E8,2", terms: E4_2 },
    PrintedExpansion { label: "E8,3", terms: E8_3 },
    PrintedExpansion { label: "E16,1", terms: &[(0, 1), (8, 24), (16, 24), (24, 96), (32, 24)] },
    PrintedExpansion { label: "E16,2", terms: E16_2 },
    PrintedExpansion { label: "E16,3", terms: E16_3 },
    PrintedExpansion { label: "E16,4", terms: E8_3 },
    PrintedExpansion { label: "E16,5", terms: E16_5 },
    PrintedExpansion { label: "E32,1", terms: &[(0, 1), (16, 24), (32, 24), (48, 96)] },
    PrintedExpansion { label: "E32,2", terms: E16_2 },
    PrintedExpansion { label: "E32,3", terms: E16_3 },
    PrintedExpansion { label: "E32,4", terms: &[(2, 1), (10, 6), (18, 13), (26, 14), (34, 18), (42, 32)] },
    PrintedExpansion { label: "E32,5", terms: &[(6, 1), (14, 2), (22, 3), (30, 6), (38, 5), (46, 6)] },
    PrintedExpansion { label: "E32,6", terms: E16_5 },
    PrintedExpansion { label: "E32,7", terms: E64_10 },
    PrintedExpansion { label: "E64,1", terms: &[(0, 1), (32, 24), (64, 24), (96, 96)] },
    PrintedExpansion { label: "E64,2", terms: E64_2 },
    PrintedExpansion { label: "E64,3", terms: E64_3 },
    PrintedExpansion { label: "E64,4", terms: E64_4 },
    PrintedExpansion { label: "E64,5", terms: E64_5 },
    PrintedExpansion { label: "E64,6", terms: &[(2, 1), (10, 6), (18, 13), (26, 14)] },
    PrintedExpansion { label: "E64,7", terms: &[(6, 1), (14, 2), (22, 3), (30, 6)] },
    PrintedExpansion { label: "E64,8", terms: &[(4, 1), (20, 6), (26, 13), (52, 14)] },
    PrintedExpansion { label: "E64,9", terms: E64_9 },
    PrintedExpansion { label: "E64,10", terms: E64_10 },
    PrintedExpansion { label: "E64,11", terms: E64_11 },
    PrintedExpansion { label: "E128,1", terms: &[(0, 1), (6, 24), (128, 24), (192, 96)] },
    PrintedExpansion { label: "E128,2", terms: E64_2 },
    PrintedExpansion { label: "E128,3", terms: E64_3 },
    PrintedExpansion { label: "E128,4", terms: E64_4 },
    PrintedExpansion { label: "E128,5", terms: E64_5 },
    PrintedExpansion { label: "E128,6", terms: &[(2, 1), (18, 13), (34, 18), (50, 31)] },
    PrintedExpansion { label: "E128,7", terms: &[(6, 1), (22, 3), (38, 5), (54, 10)] },
    PrintedExpansion { label: "E128,8", terms: &[(10, 3), (26, 7), (42, 16), (58, 15), (74, 19)] },
    PrintedExpansion { label: "E128,9", terms: &[(14, 1), (30, 3), (46, 3), (62, 4)] },
    PrintedExpansion { label: "E128,10", terms: &[(4, 1), (20, 6), (36, 13), (52, 14)] },
    PrintedExpansion { label: "E128,11", terms: E64_9 },
    PrintedExpansion { label: "E128,12", terms: &[(8, 1), (40, 6), (72, 13), (104, 14)] },
    PrintedExpansion { label: "E128,13", terms: &[(24, 1), (56, 2), (88, 3), (128, 6), (152, 5)] },
    PrintedExpansion { label: "E128,14", terms: E64_11 },
    PrintedExpansion { label: "E128,15", terms: &[(32, 1), (96, 4), (160, 6)] },
];

/// Printed expansions of the congruent theta series and of the cusp part
/// of the residue-1-mod-3 series.
pub const THETA_EXPANSIONS: &[(&str, &[(u64, i64)])] = &[
    ("theta(1,3)", &[(4, 1), (7, 4), (10, 6), (13, 4), (16, 1), (19, 4), (22, 12), (25, 12)]),
    ("theta(1,2)", &[(4, 16), (12, 64), (20, 96), (28, 128)]),
    ("theta(1,4)", &[(4, 1), (12, 4), (20, 6), (28, 8), (36, 13)]),
    ("theta(1,6)", &[(4, 1), (28, 4), (52, 10)]),
];

/// The printed cusp part of the residue-1-mod-3 theta series, times -3.
pub const CUSP_PART_TIMES_MINUS_THREE: &[(u64, i64)] =
    &[(1, 1), (7, -4), (13, 2), (19, 8), (25, -5), (31, -4), (37, -10), (43, 8), (49, 9)];

fn cusps(list: &[(i64, i64)]) -> Vec<Cusp> {
    list.iter().map(|&(h, k)| Cusp::new(h, k).expect("valid cusp")).collect()
}

fn rat(num: i64, den: i64) -> CycNumber {
    CycNumber::from_rational(rational(num, den))
}

fn i_over(num: i64, den: i64) -> CycNumber {
    CycNumber::i().scale(&rational(num, den))
}

/// `(a + b i sqrt 3) / den`.
fn with_w(a: i64, b: i64, den: i64) -> CycNumber {
    &rat(a, den) + &CycNumber::sqrt_minus_three().scale(&rational(b, den))
}

/// Column order of the printed level-16 table.
pub fn level16_cusps() -> Vec<Cusp> {
    cusps(&[(1, 8), (1, 4), (3, 4), (1, 2), (0, 1), (1, 0)])
}

/// The printed level-16 cusp-value table, rows `E16,1` to `E16,5`.
pub fn level16_table() -> Vec<(&'static str, Vec<CycNumber>)> {
    vec![
        ("E16,1", vec![rat(53, 48), rat(53, 192), rat(53, 192), rat(53, 768), rat(53, 3072), rat(1, 1)]),
        ("E16,2", vec![rat(-1, 2), i_over(-1, 8), i_over(-1, 8), rat(1, 32), rat(-1, 128), rat(0, 1)]),
        ("E16,3", vec![rat(-1, 8), i_over(1, 32), i_over(1, 32), rat(1, 128), rat(-1, 512), rat(0, 1)]),
        ("E16,4", vec![rat(-1, 4), rat(1, 16), rat(1, 16), rat(-1, 64), rat(-1, 256), rat(0, 1)]),
        ("E16,5", vec![rat(1, 16), rat(-1, 64), rat(-1, 64), rat(-1, 256), rat(-1, 1024), rat(0, 1)]),
    ]
}

/// Printed cusp values of the residue-1-mod-2 theta series, in
/// [`level16_cusps`] order.
pub fn theta12_cusp_values() -> Vec<CycNumber> {
    vec![rat(1, 1), rat(-1, 4), rat(-1, 4), rat(-1, 16), rat(-1, 64), rat(0, 1)]
}

/// Column order of the printed level-36 table.
pub fn level36_cusps() -> Vec<Cusp> {
    cusps(&[(0, 1), (1, 18), (1, 12), (1, 9), (1, 6), (1, 4), (1, 3), (5, 12), (1, 2), (2, 3), (5, 6), (1, 0)])
}

/// The printed level-36 cusp-value table, rows `B1` to `B11`.
pub fn level36_table() -> Vec<(&'static str, Vec<CycNumber>)> {
    let z = || rat(0, 1);
    // Rows B4..B6; B7..B9 are the same with i sqrt 3 negated.
    let b4 = |s: i64| {
        vec![
            rat(-1, 81),
            z(),
            with_w(1, -s, 18),
            z(),
            with_w(1, s, 18),
            rat(-1, 81),
            with_w(1, -s, 18),
            with_w(1, s, 18),
            rat(-1, 81),
            with_w(1, s, 18),
            with_w(1, -s, 18),
            z(),
        ]
    };
    let b5 = |s: i64| {
        vec![
            rat(-1, 324),
            z(),
            with_w(1, s, 18),
            z(),
            with_w(1, -s, 18),
            rat(-1, 81),
            with_w(1, s, 72),
            with_w(1, -s, 18),
            rat(-1, 81),
            with_w(1, -s, 72),
            with_w(1, s, 18),
            z(),
        ]
    };
    let b6 = |s: i64| {
        vec![
            rat(-1, 1296),
            z(),
            with_w(1, -s, 18),
            z(),
            with_w(1, s, 72),
            rat(-1, 81),
            with_w(1, -s, 288),
            with_w(1, s, 18),
            rat(-1, 324),
            with_w(1, s, 288),
            with_w(1, -s, 72),
            z(),
        ]
    };
    let b2 = |s: i64| {
        vec![
            rat(-1, 216),
            z(),
            z(),
            z(),
            with_w(-1, -s, 12),
            z(),
            with_w(1, -s, 48),
            z(),
            rat(1, 54),
            with_w(1, s, 48),
            with_w(-1, s, 12),
            z(),
        ]
    };
    vec![
        (
            "B1",
            vec![
                rat(101, 15552),
                rat(101, 48),
                rat(49, 216),
                rat(101, 192),
                rat(101, 432),
                rat(49, 1944),
                rat(101, 3888),
                rat(49, 216),
                rat(101, 3888),
                rat(101, 1728),
                rat(101, 432),
                rat(1, 1),
            ],
        ),
        ("B2", b2(1)),
        ("B3", b2(-1)),
        ("B4", b4(1)),
        ("B5", b5(1)),
        ("B6", b6(1)),
        ("B7", b4(-1)),
        ("B8", b5(-1)),
        ("B9", b6(-1)),
        (
            "B10",
            vec![
                rat(-1, 64),
                rat(1, 16),
                z(),
                rat(-1, 64),
                rat(1, 16),
                z(),
                rat(-1, 64),
                z(),
                rat(1, 16),
                rat(-1, 64),
                rat(1, 16),
                z(),
            ],
        ),
        (
            "B11",
            vec![
                rat(-1, 576),
                rat(1, 16),
                z(),
                rat(-1, 64),
                rat(1, 16),
                z(),
                rat(-1, 64),
                z(),
                rat(1, 144),
                rat(-1, 64),
                rat(1, 16),
                z(),
            ],
        ),
    ]
}

/// The printed coefficients of the residue-1-mod-3 theta series on `B2`,
/// `B6` and `B8` (all others zero), and on the cusp form.
pub fn theta13_printed_coefficients() -> (Vec<(usize, BigRational)>, BigRational) {
    (vec![(2, rational(1, 3)), (6, rational(-2, 1)), (8, rational(1, 1))], rational(-1, 3))
}
