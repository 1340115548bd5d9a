//! Symmetric quadrature rules on triangles.
//!
//! Points are barycentric; weights are normalized to sum to one, so an
//! integral over element `K` is `|K| * sum(w_q f(x_q))`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePoint {
    pub bary: [f64; 3],
    pub weight: f64,
}

const fn qp(bary: [f64; 3], weight: f64) -> QuadraturePoint {
    QuadraturePoint { bary, weight }
}

const THIRD: f64 = 1.0 / 3.0;
const SIXTH: f64 = 1.0 / 6.0;
const TWO_THIRDS: f64 = 2.0 / 3.0;

const CENTROID: [QuadraturePoint; 1] = [qp([THIRD, THIRD, THIRD], 1.0)];

const STRANG_FIX_3: [QuadraturePoint; 3] = [
    qp([TWO_THIRDS, SIXTH, SIXTH], THIRD),
    qp([SIXTH, TWO_THIRDS, SIXTH], THIRD),
    qp([SIXTH, SIXTH, TWO_THIRDS], THIRD),
];

// Dunavant degree-4 rule, all weights positive.
const A1: f64 = 0.445_948_490_915_964_886;
const B1: f64 = 0.108_103_018_168_070_228;
const W1: f64 = 0.223_381_589_678_011_466;
const A2: f64 = 0.091_576_213_509_770_743;
const B2: f64 = 0.816_847_572_980_458_514;
const W2: f64 = 0.109_951_743_655_321_868;

const DUNAVANT_6: [QuadraturePoint; 6] = [
    qp([B1, A1, A1], W1),
    qp([A1, B1, A1], W1),
    qp([A1, A1, B1], W1),
    qp([B2, A2, A2], W2),
    qp([A2, B2, A2], W2),
    qp([A2, A2, B2], W2),
];

/// Rule exact for polynomials of total degree `order` (1, 2 or 4).
pub fn quadrature_rule(order: usize) -> Result<&'static [QuadraturePoint]> {
    match order {
        1 => Ok(&CENTROID),
        2 => Ok(&STRANG_FIX_3),
        4 => Ok(&DUNAVANT_6),
        other => Err(Error::config("quadrature order", format!("unsupported order {other}; use 1, 2 or 4"))),
    }
}

/// Degree-2 rule used for all bilinear P1/P0 products.
pub fn bilinear_rule() -> &'static [QuadraturePoint] {
    &STRANG_FIX_3
}

/// Degree-4 rule used for the potential terms.
pub fn potential_rule() -> &'static [QuadraturePoint] {
    &DUNAVANT_6
}
