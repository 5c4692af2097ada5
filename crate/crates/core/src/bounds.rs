//! Lower and upper bounds on the second ortholength, and the volume bounds
//! built from one or two embedded muffins plus a boundary collar.

use std::f64::consts::PI;

use serde::Serialize;

use crate::hyptrig::arccosh;
use crate::muffin::{altitude, cosh_r, cosh_s, rect_constants, vm, RectConstants};
use crate::{Error, Result};

/// Catalan's constant.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Volume of the regular ideal hyperbolic octahedron, `4 G`.
pub const V_OCT: f64 = 4.0 * CATALAN;

/// Named numeric constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// `4 G = 3.66386...`
    pub v_oct: f64,
    /// Universal lower bound `(3 + sqrt 3)/4` for `cosh l1` in genus two.
    pub km_min: f64,
    /// `cos(2 pi/9) / (2 cos(2 pi/9) - 1) = 1.43969...`, where `M = l1`.
    pub trimonic_threshold: f64,
    /// `cosh R'' = 1 / (2 sin(pi/9)) = 1.4619...`
    pub cosh_rpp: f64,
}

impl Constants {
    pub fn get() -> Self {
        let c = (2.0 * PI / 9.0).cos();
        Constants {
            v_oct: V_OCT,
            km_min: km_min(),
            trimonic_threshold: c / (2.0 * c - 1.0),
            cosh_rpp: 1.0 / (2.0 * (PI / 9.0).sin()),
        }
    }
}

pub fn km_min() -> f64 {
    (3.0 + 3f64.sqrt()) / 4.0
}

/// Lower bound `cosh E(x)` on `cosh l2` from the disk packing of the boundary.
///
/// Defined for `x >= (3 + sqrt 3)/4`, where the complementary radius `R'`
/// with `cosh R' = 3 - cosh R` exists and the denominator is positive.
pub fn cosh_e(x: f64) -> Result<f64> {
    if !(x >= km_min()) {
        return Err(Error::domain("cosh_e", x, "x >= (3 + sqrt 3)/4"));
    }
    let cr = cosh_r(x)?;
    let cr_comp = 3.0 - cr;
    if cr_comp < 1.0 {
        return Err(Error::domain("cosh_e", x, "cosh R <= 2"));
    }
    let r_sum = cr.acosh() + cr_comp.acosh();
    let tanh2 = (x * x - 1.0) / (x * x);
    let ch = r_sum.cosh();
    let den = ch * ch * tanh2 - 1.0;
    if !(den > 0.0) {
        return Err(Error::domain("cosh_e", x, "cosh^2(R + R') tanh^2 l1 > 1"));
    }
    Ok(1.0 + 2.0 / den)
}

/// Lower bound `cosh M(x)` on `cosh l2`, increasing in `x`.
pub fn cosh_m(x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::domain("cosh_m", x, "x >= 1"));
    }
    let crpp = Constants::get().cosh_rpp;
    let cosh_2rpp = 2.0 * crpp * crpp - 1.0;
    Ok((1.0 + (x + 1.0) / (cosh_2rpp - 1.0)).sqrt())
}

/// Which term of `max{l1, E, M}` is largest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Diagonal,
    E,
    M,
}

/// `cosh max{l1, E, M}` as a function of `x`, with the dominating branch.
///
/// `E` is skipped where it is undefined; the result is never below `x`.
pub fn envelope_with_branch(x: f64) -> (f64, Branch) {
    let mut best = (x, Branch::Diagonal);
    if let Ok(e) = cosh_e(x) {
        if e > best.0 {
            best = (e, Branch::E);
        }
    }
    if let Ok(m) = cosh_m(x) {
        if m > best.0 {
            best = (m, Branch::M);
        }
    }
    best
}

pub fn l2_lower_envelope(x: f64) -> f64 {
    envelope_with_branch(x).0
}

/// Maximal intervals `[left, right)` on which `Y` is constant, with its value.
pub const Y_PIECES: [(f64, f64, f64); 7] = [
    (1.24, 1.25, 1.986),
    (1.25, 1.27, 1.9),
    (1.27, 1.3, 1.8),
    (1.3, 1.35, 1.68),
    (1.35, 1.4, 1.59),
    (1.4, 1.45, 1.55),
    (1.45, 1.5, 1.52),
];

/// Piecewise-constant upper threshold `Y(x)` on `[1.24, 1.5)`: above it the
/// single-muffin bound already exceeds 7.4.
pub fn y_piece(x: f64) -> Result<f64> {
    Y_PIECES
        .iter()
        .find(|&&(l, r, _)| x >= l && x < r)
        .map(|&(_, _, v)| v)
        .ok_or_else(|| Error::domain("y_piece", x, "1.24 <= x < 1.5"))
}

/// Upper bound `Y0(x) = (2 + 2 sqrt 3) x^2 - (3 + 2 sqrt 3)` on `cosh l2`
/// when there is no (1,1,1)-hexagon.
pub fn y0(x: f64) -> f64 {
    let s3 = 3f64.sqrt();
    (2.0 + 2.0 * s3) * x * x - (3.0 + 2.0 * s3)
}

/// Single-muffin bound `V(x, H) = VM(x) + pi (2 - cosh R(x)) (2H + sinh 2H)`.
pub fn v_single(x: f64, h: f64) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(Error::domain("v_single", h, "H >= 0"));
    }
    Ok(vm(x)? + PI * (2.0 - cosh_r(x)?) * collar_profile(h))
}

/// `V(x, H)` with `H = min{A(x), l2/2}`.
pub fn v_single_for_l2(x: f64, y: f64) -> Result<f64> {
    if !(y >= 1.0) {
        return Err(Error::domain("v_single_for_l2", y, "y >= 1"));
    }
    v_single(x, altitude(x)?.min(arccosh(y) / 2.0))
}

/// `V(x, l1/2)`, valid because `l2 >= l1` and `l1/2 < A`.
pub fn v_single_diagonal(x: f64) -> Result<f64> {
    v_single(x, arccosh(x) / 2.0)
}

/// Collar volume per unit of `pi * area factor`: `2H + sinh 2H`.
#[inline]
pub fn collar_profile(h: f64) -> f64 {
    2.0 * h + (2.0 * h).sinh()
}

/// The two double-muffin bounds over one rectangle and the larger of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoubleMuffinBound {
    /// `VM(b) + VM_2^0`.
    pub muffin_sum: f64,
    /// `muffin_sum` plus the collar outside all four caps.
    pub with_collar: f64,
    pub best: f64,
    /// Collar height actually used, `>= 0`.
    pub collar_height: f64,
    pub constants: RectConstants,
}

/// `H = min{A(a), arccosh(c)/2, H0}`, or zero when `H0 <= 0` leaves no
/// room for a collar.
pub fn collar_height(altitude_a: f64, c: f64, h0: f64) -> f64 {
    altitude_a.min(arccosh(c) / 2.0).min(h0).max(0.0)
}

pub fn v_double(a: f64, b: f64, c: f64, d: f64) -> Result<DoubleMuffinBound> {
    let rc = rect_constants(a, b, c, d)?;
    let muffin_sum = vm(b)? + rc.vm20;
    let collar_height = collar_height(altitude(a)?, c, rc.h0);
    let area_factor = 3.0 - cosh_r(a)? - cosh_s(b, c)?;
    let with_collar = muffin_sum + PI * area_factor * collar_profile(collar_height);
    Ok(DoubleMuffinBound {
        muffin_sum,
        with_collar,
        best: muffin_sum.max(with_collar),
        collar_height,
        constants: rc,
    })
}
