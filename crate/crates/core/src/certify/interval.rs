//! Outward-rounded interval arithmetic on `f64`.
//!
//! Arithmetic and `sqrt` are correctly rounded in IEEE 754, so widening each
//! result by one ulp in each direction gives a true enclosure. The
//! transcendental functions come from the platform libm, which is not
//! correctly rounded; their results are widened by [`LIBM_ULPS`] ulps on the
//! assumption that libm errors stay below half of that.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Widening applied to libm results.
pub const LIBM_ULPS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(v: f64, ulps: u32) -> f64 {
    (0..ulps).fold(v, |v, _| v.next_down())
}

fn up(v: f64, ulps: u32) -> f64 {
    (0..ulps).fold(v, |v, _| v.next_up())
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    /// An enclosure of pi.
    pub fn pi() -> Self {
        // PI rounds to nearest and lies below the true value.
        Interval::new(PI, PI.next_up())
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn contains(self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    fn widened(lo: f64, hi: f64, ulps: u32) -> Self {
        Interval::new(down(lo, ulps), up(hi, ulps))
    }

    /// Image under a nondecreasing function evaluated with libm.
    fn increasing(self, f: impl Fn(f64) -> f64) -> Self {
        Interval::widened(f(self.lo), f(self.hi), LIBM_ULPS)
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of {self:?}");
        Interval::widened(self.lo.sqrt(), self.hi.sqrt(), 1).clamp_below(0.0)
    }

    pub fn square(self) -> Self {
        if self.lo >= 0.0 {
            Interval::widened(self.lo * self.lo, self.hi * self.hi, 1)
        } else if self.hi <= 0.0 {
            Interval::widened(self.hi * self.hi, self.lo * self.lo, 1)
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Interval::new(0.0, up(m * m, 1))
        }
    }

    /// `arccosh`, with the argument clamped to `[1, inf)` as in point mode.
    pub fn acosh(self) -> Self {
        Interval::new(self.lo.max(1.0), self.hi.max(1.0))
            .increasing(f64::acosh)
            .clamp_below(0.0)
    }

    pub fn asinh(self) -> Self {
        self.increasing(f64::asinh)
    }

    /// `arctanh`; `None` unless the interval lies inside `(-1, 1)`.
    pub fn atanh(self) -> Option<Self> {
        (self.lo > -1.0 && self.hi < 1.0).then(|| self.increasing(f64::atanh))
    }

    pub fn tanh(self) -> Self {
        let r = self.increasing(f64::tanh);
        Interval::new(r.lo.max(-1.0), r.hi.min(1.0))
    }

    pub fn sinh(self) -> Self {
        self.increasing(f64::sinh)
    }

    /// `cosh` on a nonnegative interval.
    pub fn cosh(self) -> Self {
        assert!(
            self.lo >= 0.0,
            "cosh needs a nonnegative interval: {self:?}"
        );
        self.increasing(f64::cosh).clamp_below(1.0)
    }

    pub fn sin(self) -> Self {
        // Used only on subintervals of (0, pi/2) where sin increases.
        assert!(self.lo > 0.0 && self.hi < 1.5, "sin outside monotone range");
        self.increasing(f64::sin)
    }

    pub fn min(self, other: Self) -> Self {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn max(self, other: Self) -> Self {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    fn clamp_below(self, floor: f64) -> Self {
        Interval::new(self.lo.max(floor), self.hi.max(floor))
    }

    /// True when every element of `self` is `<=` every element of `other`.
    pub fn certainly_le(self, other: Self) -> bool {
        self.hi <= other.lo
    }
}

impl From<f64> for Interval {
    fn from(v: f64) -> Self {
        Interval::point(v)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo + rhs.lo, self.hi + rhs.hi, 1)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo - rhs.hi, self.hi - rhs.lo, 1)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widened(lo, hi, 1)
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        assert!(
            rhs.lo > 0.0 || rhs.hi < 0.0,
            "division by interval containing zero: {rhs:?}"
        );
        let inv = Interval::widened(1.0 / rhs.hi, 1.0 / rhs.lo, 1);
        self * inv
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $m(self, rhs: f64) -> Interval { self.$m(Interval::point(rhs)) }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { Interval::point(self).$m(rhs) }
        }
    )*};
}
scalar_ops!(Add add, Sub sub, Mul mul, Div div);
