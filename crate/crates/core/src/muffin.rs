//! Muffins, packing radii and the per-rectangle embedding constants.
//!
//! Throughout, `x = cosh l1` and `y = cosh l2`. `R(x)` is the radius of the
//! disks packed around the feet of the shortest return path and `S(x, y)` the
//! radius around the feet of the second shortest one.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::hyptrig::{arccosh, arctanh, quad_rule, HCosh};
use crate::{Error, Result};

fn require_gt_one(function: &'static str, v: f64) -> Result<()> {
    if v > 1.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(function, v, "argument > 1"))
    }
}

/// `cosh R = sqrt((2x - 1)/(2x - 2))`, half the shortest (1,1,1) external edge.
pub fn cosh_r(x: f64) -> Result<f64> {
    require_gt_one("cosh_r", x)?;
    Ok((1.0 + 1.0 / (2.0 * x - 2.0)).sqrt())
}

/// Derivative of [`cosh_r`] in `x`.
pub fn d_cosh_r(x: f64) -> Result<f64> {
    let c = cosh_r(x)?;
    let t = 2.0 * x - 2.0;
    Ok(-1.0 / (c * t * t))
}

/// `sinh S(x, y)` where `S = X_12^1 - R`.
///
/// Evaluated in rationalized form: the common factor `x - 1` is cancelled
/// between numerator and denominator, so the expression stays accurate as
/// `x -> 1` where both `X_12^1` and `R` blow up.
pub fn sinh_s(x: f64, y: f64) -> Result<f64> {
    require_gt_one("sinh_s", x)?;
    require_gt_one("sinh_s", y)?;
    let num = 4.0 * x * x - (y - 1.0) * (x - 1.0);
    let root = ((2.0 * x * x + y - 1.0) * (2.0 * x - 1.0)).sqrt() + x * (y + 1.0).sqrt();
    let den = root * (2.0 * (x + 1.0) * (y - 1.0)).sqrt();
    Ok(num / den)
}

/// The cap radius `S(x, y)` of the second muffin.
pub fn s_of(x: f64, y: f64) -> Result<f64> {
    Ok(sinh_s(x, y)?.asinh())
}

pub fn cosh_s(x: f64, y: f64) -> Result<f64> {
    let s = sinh_s(x, y)?;
    Ok((1.0 + s * s).sqrt())
}

pub fn tanh_s(x: f64, y: f64) -> Result<f64> {
    let s = sinh_s(x, y)?;
    Ok(s / (1.0 + s * s).sqrt())
}

/// Side altitude `A(x)` of `Muf_l1`, `cosh 2A = (4x + 1)/3`.
pub fn altitude(x: f64) -> Result<f64> {
    require_gt_one("altitude", x)?;
    Ok(arccosh((4.0 * x + 1.0) / 3.0) / 2.0)
}

/// Waist radius `W(x)` of `Muf_l1`, `tanh W = sqrt((x + 1)/(4x - 2))`.
pub fn waist_l1(x: f64) -> Result<f64> {
    require_gt_one("waist_l1", x)?;
    arctanh("W_R", ((x + 1.0) / (4.0 * x - 2.0)).sqrt())
}

/// Volume of `Muf_l1 = M(l1, R(x))` as a function of `x`.
pub fn vm(x: f64) -> Result<f64> {
    let a = altitude(x)?;
    let cr = cosh_r(x)?;
    Ok(PI * (2.0 * a * cr - arccosh(x)))
}

/// `VM'(x) = 2 pi A(x) d/dx cosh R(x)`.
pub fn vm_prime(x: f64) -> Result<f64> {
    Ok(2.0 * PI * altitude(x)? * d_cosh_r(x)?)
}

/// Volume of the muffin `M(l, R)`: `2 pi (A cosh R - l/2)`.
pub fn muffin_volume(cosh_len: HCosh, cap_radius: f64) -> Result<f64> {
    Ok(MuffinGeometry::new(cosh_len, cap_radius)?.volume)
}

/// Derived quantities of a muffin `M(l, R)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuffinGeometry {
    pub cosh_height: HCosh,
    pub cap_radius: f64,
    pub waist: f64,
    pub altitude: f64,
    pub volume: f64,
}

impl MuffinGeometry {
    pub fn new(cosh_height: HCosh, cap_radius: f64) -> Result<Self> {
        if !(cap_radius >= 0.0) {
            return Err(Error::domain("MuffinGeometry::new", cap_radius, "R >= 0"));
        }
        let cosh_cap = HCosh::from_length(cap_radius)?;
        let sides = quad_rule(cosh_height, cosh_cap)?;
        let volume = 2.0 * PI * (sides.altitude * cosh_cap.value() - cosh_height.length() / 2.0);
        Ok(MuffinGeometry {
            cosh_height,
            cap_radius,
            waist: sides.waist,
            altitude: sides.altitude,
            volume: volume.max(0.0),
        })
    }

    /// `Muf_l1`, the muffin over the shortest return path.
    pub fn muf_l1(x: f64) -> Result<Self> {
        MuffinGeometry::new(HCosh::new(x)?, arccosh(cosh_r(x)?))
    }
}

/// Lower bounds for the distance between opposite edges of a truncated
/// tetrahedron whose edges are return paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransversalBounds {
    /// `cosh D = 2x/(x - 1)`, two lifts of the shortest return path.
    pub cosh_d: f64,
    /// `tanh(D/2) = sqrt((x + 1)/(3x - 1))`.
    pub tanh_half_d: f64,
    /// `T_12 = arccosh(2x / sqrt((x - 1)(y - 1)))`.
    pub t12: f64,
    /// `T_22 = arccosh(2x / (y - 1))`.
    pub t22: f64,
}

pub fn transversal_bounds(x: f64, y: f64) -> Result<TransversalBounds> {
    require_gt_one("transversal_bounds", x)?;
    require_gt_one("transversal_bounds", y)?;
    let t22_arg = 2.0 * x / (y - 1.0);
    if t22_arg < 1.0 {
        return Err(Error::domain("T_22", t22_arg, "2x/(y - 1) >= 1"));
    }
    Ok(TransversalBounds {
        cosh_d: 2.0 * x / (x - 1.0),
        tanh_half_d: ((x + 1.0) / (3.0 * x - 1.0)).sqrt(),
        t12: arccosh(2.0 * x / ((x - 1.0) * (y - 1.0)).sqrt()),
        t22: t22_arg.acosh(),
    })
}

/// Constants bounding the muffin and collar geometry uniformly over a
/// rectangle `[a, b] x [c, d]` of `(x, y)` values.
///
/// Each one is a corner evaluation chosen by the monotonicity of its
/// defining function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectConstants {
    /// Upper bound for the waist of `Muf_l1`: `W(a)`.
    pub w_r0: f64,
    /// Upper bound for the waist of `M(l2, S)`.
    pub w_s0: f64,
    /// Lower bound for `U_2`.
    pub u20: f64,
    /// `T_12(b, d)`.
    pub t120: f64,
    /// `T_22(a, d)`.
    pub t220: f64,
    /// Collar height `U_2^0 - W_S^0` compatible with `M(l2, S)`; may be `<= 0`.
    pub h0: f64,
    /// Lower bound for the volume of `M(l2, S)`.
    pub vm20: f64,
}

impl RectConstants {
    /// Whether [`h0`](Self::h0) permits a collar at all.
    pub fn has_collar(&self) -> bool {
        self.h0 > 0.0
    }
}

pub(crate) fn check_hypothesis_rect(a: f64, b: f64, c: f64, d: f64) -> Result<()> {
    let bad = |reason| Err(Error::InvalidRect { a, b, c, d, reason });
    if !(a > 1.0 && a <= b && b <= 2.0) {
        return bad("need 1 < a <= b <= 2");
    }
    if !(c > 1.0 && c <= d && d <= 3.0) {
        return bad("need 1 < c <= d <= 3");
    }
    Ok(())
}

pub fn rect_constants(a: f64, b: f64, c: f64, d: f64) -> Result<RectConstants> {
    check_hypothesis_rect(a, b, c, d)?;
    let w_r0 = arctanh("W_R^0", ((a + 1.0) / (4.0 * a - 2.0)).sqrt())?;
    let w_s0 = arctanh("W_S^0", ((d + 1.0) / 2.0).sqrt() * tanh_s(b, c)?)?;
    let u20 = (a * SQRT_2 / (d - 1.0).sqrt()).asinh();
    let t120 = arccosh(2.0 * b / ((b - 1.0) * (d - 1.0)).sqrt());
    let t22_arg = 2.0 * a / (d - 1.0);
    if t22_arg < 1.0 {
        return Err(Error::domain("T_22^0", t22_arg, "2a/(d - 1) >= 1"));
    }
    let t220 = t22_arg.acosh();

    let cosh_s_ad = cosh_s(a, d)?;
    let a0 = arctanh("A^0", cosh_s_ad * ((c - 1.0) / (c + 1.0)).sqrt())?;
    let vm20 = 2.0 * PI * (a0 * cosh_s_ad - arccosh(d) / 2.0);

    Ok(RectConstants {
        w_r0,
        w_s0,
        u20,
        t120,
        t220,
        h0: u20 - w_s0,
        vm20,
    })
}

/// Outcome of the three muffin embedding criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Embedding {
    /// `W_S^0 <= U_2^0`: the second muffin lies in the universal cover.
    pub c1: bool,
    /// `W_R^0 + W_S^0 <= T_12^0`: it misses every translate of `Muf_l1`.
    pub c2: bool,
    /// `2 W_S^0 <= T_22^0`: it misses its own translates.
    pub c3: bool,
}

impl Embedding {
    pub fn all(&self) -> bool {
        self.c1 && self.c2 && self.c3
    }

    pub fn flags(&self) -> [bool; 3] {
        [self.c1, self.c2, self.c3]
    }
}

pub fn embedding_ok(rc: &RectConstants) -> Embedding {
    Embedding {
        c1: rc.w_s0 <= rc.u20,
        c2: rc.w_r0 + rc.w_s0 <= rc.t120,
        c3: 2.0 * rc.w_s0 <= rc.t220,
    }
}
