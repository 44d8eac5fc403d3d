#![allow(dead_code)]

pub mod oracle;

use pteg_core::analysis::{build_combined, CombinedModel};
use pteg_core::model::{extract_matrices, normalize, parse_model, validate, PtegModel};
use pteg_core::tropical::{Matrix, Semiring};

pub const E: f64 = f64::NEG_INFINITY;
pub const T: f64 = f64::INFINITY;

pub fn model_text(name: &str) -> String {
    let path = format!("{}/../../models/{name}.pteg", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn load(name: &str) -> (PtegModel, CombinedModel) {
    let m = parse_model(&model_text(name)).unwrap();
    assert!(validate(&m).is_empty(), "{name} should validate");
    let bundle = extract_matrices(&normalize(&m)).unwrap();
    (m, build_combined(bundle).unwrap())
}

pub fn max(rows: &[[f64; 4]]) -> Matrix {
    Matrix::from_rows(
        Semiring::MaxPlus,
        &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    )
}

pub fn min(rows: &[[f64; 4]]) -> Matrix {
    Matrix::from_rows(
        Semiring::MinPlus,
        &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    )
}

pub fn running_a() -> Matrix {
    max(&[[E, E, E, E], [0.0, E, E, E], [E, 0.0, E, E], [E, E, E, E]])
}

pub fn running_b() -> Matrix {
    max(&[
        [E, E, 0.0, -2.0],
        [E, E, E, 0.0],
        [0.0, E, E, -2.0],
        [1.0, 0.0, 0.0, E],
    ])
}

pub fn running_c() -> Matrix {
    min(&[[T, T, T, T], [1.0, T, T, T], [T, 1.0, T, T], [T, T, T, T]])
}

pub fn running_cal_a() -> Matrix {
    max(&[
        [1.0, 0.0, 1.0, 0.0],
        [2.0, 1.0, 2.0, 1.0],
        [1.0, 0.0, 1.0, 0.0],
        [2.0, 1.0, 2.0, 1.0],
    ])
}

pub fn running_cal_b() -> Matrix {
    min(&[
        [0.0, -1.0, 0.0, -1.0],
        [1.0, 0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0, -1.0],
        [1.0, 0.0, 1.0, 0.0],
    ])
}

pub const ELECTRO_CAL_A: [[f64; 9]; 9] = [
    [549.0, 509.0, 112.0, 54.0, 224.0, 166.0, 354.0, 296.0, 582.0],
    [589.0, 549.0, 152.0, 94.0, 264.0, 206.0, 394.0, 336.0, 622.0],
    [
        986.0, 946.0, 549.0, 491.0, 661.0, 603.0, 791.0, 733.0, 1022.0,
    ],
    [
        1044.0, 1004.0, 607.0, 549.0, 719.0, 661.0, 849.0, 791.0, 1080.0,
    ],
    [
        773.0, 773.0, 336.0, 278.0, 528.0, 470.0, 658.0, 600.0, 910.0,
    ],
    [
        831.0, 791.0, 394.0, 336.0, 586.0, 528.0, 716.0, 658.0, 968.0,
    ],
    [
        643.0, 603.0, 206.0, 148.0, 398.0, 340.0, 528.0, 470.0, 676.0,
    ],
    [
        701.0, 661.0, 264.0, 206.0, 456.0, 398.0, 586.0, 528.0, 734.0,
    ],
    [495.0, 455.0, 58.0, 0.0, 170.0, 112.0, 300.0, 242.0, E],
];

pub const ELECTRO_CAL_B: [[f64; 9]; 9] = [
    [
        642.0, 602.0, 202.0, 144.0, 314.0, 256.0, 548.0, 490.0, 698.0,
    ],
    [
        682.0, 642.0, 242.0, 184.0, 354.0, 296.0, 588.0, 530.0, 738.0,
    ],
    [
        1082.0, 1042.0, 642.0, 584.0, 754.0, 696.0, 988.0, 930.0, 1138.0,
    ],
    [
        1140.0, 1100.0, 700.0, 642.0, 812.0, 754.0, 1046.0, 988.0, 1196.0,
    ],
    [
        970.0, 930.0, 530.0, 472.0, 642.0, 584.0, 876.0, 818.0, 922.0,
    ],
    [
        1028.0, 988.0, 588.0, 530.0, 700.0, 642.0, 934.0, 876.0, 980.0,
    ],
    [
        736.0, 696.0, 296.0, 238.0, 408.0, 350.0, 642.0, 584.0, 792.0,
    ],
    [
        794.0, 754.0, 354.0, 296.0, 466.0, 408.0, 700.0, 642.0, 850.0,
    ],
    [498.0, 458.0, 58.0, 0.0, 274.0, 216.0, 404.0, 346.0, T],
];

pub const X_CAL_A: [f64; 9] = [0.0, 40.0, 437.0, 495.0, 307.0, 365.0, 156.0, 214.0, -54.0];
pub const X_CAL_B: [f64; 9] = [0.0, 40.0, 440.0, 498.0, 264.0, 322.0, 94.0, 152.0, -80.0];

pub fn printed(rows: &[[f64; 9]; 9], s: Semiring) -> Matrix {
    Matrix::from_rows(s, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// Entries where `m` differs from the printed matrix, as 1-based indices.
pub fn mismatches(m: &Matrix, rows: &[[f64; 9]; 9]) -> Vec<(usize, usize, f64, f64)> {
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &want) in row.iter().enumerate() {
            let got = m.get(i, j).to_f64();
            if got != want {
                out.push((i + 1, j + 1, got, want));
            }
        }
    }
    out
}

/// Up to an additive constant.
pub fn same_up_to_shift(u: &[f64], v: &[f64]) -> bool {
    u.len() == v.len() && u.iter().zip(v).all(|(a, b)| a - u[0] == b - v[0])
}
