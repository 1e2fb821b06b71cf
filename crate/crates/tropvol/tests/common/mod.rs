//! Shared fixtures for the integration suites: the worked examples with
//! their published exact volumes.

#![allow(dead_code)]

use tropvol::{rat, Polytrope, Rat, TropicalMatrix};

pub fn polytrope(rows: &[&[i64]]) -> Polytrope {
    Polytrope::from_star(TropicalMatrix::from_ints(rows)).expect("fixture is a valid star")
}

/// The 2d worked example with volume 3.
pub fn golden_2d() -> Polytrope {
    polytrope(&[&[0, 1, 2], &[1, 0, 2], &[0, 0, 0]])
}

/// The 3d worked example with volume 352/3.
pub fn golden_3d() -> Polytrope {
    polytrope(&[&[0, 2, 4, 8], &[2, 0, 4, 7], &[2, 3, 0, 8], &[0, 0, 0, 0]])
}

/// The 4d example with volume 2586879.
pub fn golden_4d() -> Polytrope {
    polytrope(&[
        &[0, 23, 24, 25, 48],
        &[31, 0, 32, 35, 57],
        &[38, 22, 0, 25, 46],
        &[28, 29, 32, 0, 55],
        &[0, 0, 0, 0, 0],
    ])
}

/// All published examples paired with their exact volumes: the 2d and 3d
/// worked examples, one 3d polytrope per combinatorial type, and the 4d
/// example.
pub fn golden_suite() -> Vec<(Polytrope, Rat)> {
    vec![
        (golden_2d(), rat(3)),
        (golden_3d(), rat(352) / rat(3)),
        (
            polytrope(&[&[0, 2, 4, 8], &[4, 0, 6, 8], &[2, 1, 0, 8], &[0, 0, 0, 0]]),
            rat(152),
        ),
        (
            polytrope(&[
                &[0, 9, 7, 24],
                &[15, 0, 7, 22],
                &[15, 11, 0, 24],
                &[0, 0, 0, 0],
            ]),
            rat(5066),
        ),
        (
            polytrope(&[&[0, 2, 4, 8], &[7, 0, 9, 12], &[8, 5, 0, 12], &[0, 0, 0, 0]]),
            rat(1191) / rat(2),
        ),
        (
            polytrope(&[
                &[0, 6, 5, 10],
                &[6, 0, 1, 11],
                &[12, 11, 0, 19],
                &[0, 0, 0, 0],
            ]),
            rat(970),
        ),
        (golden_4d(), rat(2586879)),
    ]
}
