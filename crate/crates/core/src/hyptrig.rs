//! Scalar hyperbolic trigonometry in cosh-space.
//!
//! Ortholengths enter every formula through their hyperbolic cosines, so the
//! kernel works with [`HCosh`] values and only takes `arccosh` when a length is
//! actually needed.

use serde::Serialize;

use crate::{Error, Result};

/// `arccosh` with the argument clamped to `[1, inf)`.
///
/// Values a few ulps below one arise from rounding in cosh-space formulas and
/// denote a zero length.
#[inline]
pub fn arccosh(v: f64) -> f64 {
    v.max(1.0).acosh()
}

/// `arctanh` that refuses arguments outside `(-1, 1)`.
#[inline]
pub fn arctanh(quantity: &'static str, v: f64) -> Result<f64> {
    if v.abs() < 1.0 {
        Ok(v.atanh())
    } else {
        Err(Error::ArctanhDomain {
            quantity,
            argument: v,
        })
    }
}

/// Hyperbolic sine of a nonnegative length given its hyperbolic cosine.
#[inline]
pub fn sinh_from(cosh: f64) -> f64 {
    (cosh * cosh - 1.0).max(0.0).sqrt()
}

/// Hyperbolic cosine of a nonnegative length.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct HCosh(f64);

impl HCosh {
    pub fn new(value: f64) -> Result<Self> {
        if value >= 1.0 && value.is_finite() {
            Ok(HCosh(value))
        } else {
            Err(Error::domain("HCosh::new", value, "value >= 1"))
        }
    }

    pub fn from_length(len: f64) -> Result<Self> {
        if len >= 0.0 {
            HCosh::new(len.cosh())
        } else {
            Err(Error::domain("HCosh::from_length", len, "length >= 0"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn sinh(self) -> f64 {
        sinh_from(self.0)
    }

    #[inline]
    pub fn length(self) -> f64 {
        arccosh(self.0)
    }

    /// `cosh(l/2)` by the half-angle identity.
    #[inline]
    pub fn cosh_half(self) -> f64 {
        ((self.0 + 1.0) / 2.0).sqrt()
    }

    /// `sinh(l/2)` by the half-angle identity.
    #[inline]
    pub fn sinh_half(self) -> f64 {
        ((self.0 - 1.0) / 2.0).sqrt()
    }

    /// `tanh(l/2) = sqrt((c - 1)/(c + 1))`.
    #[inline]
    pub fn tanh_half(self) -> f64 {
        ((self.0 - 1.0) / (self.0 + 1.0)).sqrt()
    }
}

/// A point `(x, y) = (cosh l1, cosh l2)` of the orthospectrum plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumPoint {
    pub x: f64,
    pub y: f64,
}

impl SpectrumPoint {
    /// Requires `1 < x <= y`; the second ortholength is never shorter than the first.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x > 1.0) {
            return Err(Error::domain("SpectrumPoint::new", x, "x > 1"));
        }
        if !(y >= x) || !y.is_finite() {
            return Err(Error::domain("SpectrumPoint::new", y, "y >= x"));
        }
        Ok(SpectrumPoint { x, y })
    }
}

/// Hyperbolic cosine of the external edge of an `(i, j, k)` right-angled
/// hexagon opposite the internal edge of length `l_k`:
///
/// `cosh X = (cosh l_i cosh l_j + cosh l_k) / (sinh l_i sinh l_j)`.
pub fn cosh_x(ci: HCosh, cj: HCosh, ck: HCosh) -> Result<HCosh> {
    if !(ci.0 > 1.0) {
        return Err(Error::domain("cosh_x", ci.0, "cosh l_i > 1"));
    }
    if !(cj.0 > 1.0) {
        return Err(Error::domain("cosh_x", cj.0, "cosh l_j > 1"));
    }
    // Product of the factors in a fixed order keeps the result exactly symmetric.
    let (p, q) = if ci.0 <= cj.0 { (ci, cj) } else { (cj, ci) };
    let v = (p.0 * q.0 + ck.0) / (p.sinh() * q.sinh());
    HCosh::new(v.max(1.0))
}

/// Closed forms of the hexagon edges involving the two shortest ortholengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialArcs {
    /// `cosh X_11^1 = 1 + 1/(x - 1)`.
    pub cosh_x111: f64,
    /// `cosh X_11^2 = 1 + (1 + y)/(x^2 - 1)`.
    pub cosh_x112: f64,
    /// `cosh X_12^1 = coth(l1) sqrt(1 + 2/(y - 1))`.
    pub cosh_x121: f64,
    /// `sinh(X_22^1 / 2) = sqrt(x + 1) / (sqrt 2 sinh l2)`.
    pub sinh_half_x221: f64,
}

pub fn cosh_x111(x: f64) -> f64 {
    1.0 + 1.0 / (x - 1.0)
}

pub fn cosh_x112(x: f64, y: f64) -> f64 {
    1.0 + (1.0 + y) / (x * x - 1.0)
}

pub fn cosh_x121(x: f64, y: f64) -> f64 {
    x / sinh_from(x) * (1.0 + 2.0 / (y - 1.0)).sqrt()
}

pub fn sinh_half_x221(x: f64, y: f64) -> f64 {
    (x + 1.0).sqrt() / (std::f64::consts::SQRT_2 * sinh_from(y))
}

pub fn special_arcs(p: SpectrumPoint) -> SpecialArcs {
    SpecialArcs {
        cosh_x111: cosh_x111(p.x),
        cosh_x112: cosh_x112(p.x, p.y),
        cosh_x121: cosh_x121(p.x, p.y),
        sinh_half_x221: sinh_half_x221(p.x, p.y),
    }
}

/// The two free sides of the Lambert quadrilateral with right-angled sides
/// `l/2` and `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadSides {
    /// Side altitude `A`, with `tanh A = cosh R tanh(l/2)`.
    pub altitude: f64,
    /// Waist `W`, with `tanh W = cosh(l/2) tanh R`.
    pub waist: f64,
}

pub fn quad_rule(cosh_len: HCosh, cosh_cap: HCosh) -> Result<QuadSides> {
    if !(cosh_len.0 > 1.0) {
        return Err(Error::domain("quad_rule", cosh_len.0, "cosh l > 1"));
    }
    let alt_arg = cosh_cap.0 * cosh_len.tanh_half();
    let waist_arg = cosh_len.cosh_half() * (cosh_cap.sinh() / cosh_cap.0);
    for arg in [alt_arg, waist_arg] {
        if !(arg < 1.0) {
            return Err(Error::DegenerateQuadrilateral(arg));
        }
    }
    Ok(QuadSides {
        altitude: alt_arg.atanh(),
        waist: waist_arg.atanh(),
    })
}

/// `sinh U_k = cosh l1 / sinh(l_k / 2)`: lower bound on the distance from a
/// lift of the k-th return path to any boundary plane not containing its feet.
pub fn sinh_u(k_cosh: HCosh, x: f64) -> Result<f64> {
    if !(k_cosh.0 > 1.0) {
        return Err(Error::domain("sinh_u", k_cosh.0, "cosh l_k > 1"));
    }
    if !(x >= 1.0) {
        return Err(Error::domain("sinh_u", x, "x >= 1"));
    }
    Ok(x / k_cosh.sinh_half())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hc(v: f64) -> HCosh {
        HCosh::new(v).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn hcosh_rejects_below_one() {
        assert!(HCosh::new(0.999).is_err());
        assert!(HCosh::new(f64::NAN).is_err());
        assert_eq!(hc(1.0).sinh(), 0.0);
        assert!((hc(2.0).sinh() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn arccosh_clamps_rounding_below_one() {
        assert_eq!(arccosh(1.0 - f64::EPSILON), 0.0);
        assert!((arccosh(1.5) - 1.5f64.acosh()).abs() < 1e-16);
    }

    #[test]
    fn spectrum_point_ordering() {
        assert!(SpectrumPoint::new(1.3, 1.2).is_err());
        assert!(SpectrumPoint::new(1.0, 1.2).is_err());
        assert!(SpectrumPoint::new(1.3, 1.3).is_ok());
    }

    #[test]
    fn cosh_x_examples() {
        assert!(rel(cosh_x(hc(2.0), hc(2.0), hc(2.0)).unwrap().value(), 2.0) < 1e-15);
        let km = (3.0 + 3f64.sqrt()) / 4.0;
        let v = cosh_x(hc(km), hc(km), hc(km)).unwrap().value();
        assert!(rel(v, 6.464101615137754587) < 1e-13);
        // 50-digit oracle
        let v = cosh_x(hc(1.3), hc(1.5), hc(1.2)).unwrap().value();
        assert!(rel(v, 3.391805982966442690) < 1e-14);
    }

    #[test]
    fn cosh_x_domain() {
        assert!(matches!(
            cosh_x(hc(1.0), hc(2.0), hc(2.0)),
            Err(Error::Domain { .. })
        ));
        assert!(cosh_x(hc(2.0), hc(1.0), hc(2.0)).is_err());
    }

    #[test]
    fn special_arcs_examples() {
        let p = SpectrumPoint::new(2.0, 2.0).unwrap();
        assert_eq!(special_arcs(p).cosh_x111, 2.0);
        let p = SpectrumPoint::new(1.5, 2.0).unwrap();
        assert!((special_arcs(p).cosh_x112 - 3.4).abs() < 1e-15);
        let p = SpectrumPoint::new(1.3, 1.7).unwrap();
        assert!(rel(special_arcs(p).cosh_x121, 3.073630584332492514) < 1e-14);
    }

    #[test]
    fn special_arcs_match_general_formula() {
        for &(x, y) in &[(1.1, 1.2), (1.3, 1.7), (1.9, 2.9), (1.05, 1.05)] {
            let s = special_arcs(SpectrumPoint::new(x, y).unwrap());
            let (cx, cy) = (hc(x), hc(y));
            assert!(rel(s.cosh_x111, cosh_x(cx, cx, cx).unwrap().value()) < 1e-12);
            assert!(rel(s.cosh_x112, cosh_x(cx, cx, cy).unwrap().value()) < 1e-12);
            assert!(rel(s.cosh_x121, cosh_x(cx, cy, cx).unwrap().value()) < 1e-12);
            let x221 = cosh_x(cy, cy, cx).unwrap();
            let sinh_half = ((x221.value() - 1.0) / 2.0).sqrt();
            assert!(rel(s.sinh_half_x221, sinh_half) < 1e-12);
        }
    }

    #[test]
    fn quad_rule_zero_cap() {
        let len = hc(1.7);
        let q = quad_rule(len, hc(1.0)).unwrap();
        assert!((q.altitude - len.length() / 2.0).abs() < 1e-14);
        assert_eq!(q.waist, 0.0);
    }

    #[test]
    fn quad_rule_muf_l1_altitude() {
        // cosh(2A) = (4x + 1)/3 for the muffin with cap radius R(x)
        for &(x, expect) in &[(1.24f64, 1.986_666_666_666_666_7), (1.5, 7.0 / 3.0)] {
            let cosh_r = ((2.0 * x - 1.0) / (2.0 * x - 2.0)).sqrt();
            let q = quad_rule(hc(x), hc(cosh_r)).unwrap();
            assert!(
                (((2.0 * q.altitude).cosh()) - expect).abs() < 1e-12,
                "x = {x}"
            );
        }
    }

    #[test]
    fn quad_rule_degenerate() {
        assert!(matches!(
            quad_rule(hc(3.0), hc(2.0)),
            Err(Error::DegenerateQuadrilateral(_))
        ));
    }

    #[test]
    fn sinh_u_examples() {
        assert!((sinh_u(hc(3.0), 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(rel(sinh_u(hc(1.8), 1.25).unwrap(), 1.976423537605237082) < 1e-14);
        assert!(sinh_u(hc(1.0), 1.2).is_err());
    }

    #[test]
    fn u1_is_altitude_plus_waist() {
        let x: f64 = 1.3;
        let cosh_r = ((2.0 * x - 1.0) / (2.0 * x - 2.0)).sqrt();
        let q = quad_rule(hc(x), hc(cosh_r)).unwrap();
        let u1 = sinh_u(hc(x), x).unwrap().asinh();
        assert!((u1 - (q.altitude + q.waist)).abs() < 1e-12);
    }
}
