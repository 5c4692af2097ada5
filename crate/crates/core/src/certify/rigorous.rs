//! Interval re-evaluation of the feasibility test and the cell bound.
//!
//! Mirrors the point formulas in `bounds` and `muffin` term by term. Bounds
//! are read off as the lower endpoint, embedding criteria must hold for every
//! element of the enclosures, and a cell is discarded only when it is
//! certainly outside the possible subregion.

use super::interval::Interval;
use super::Regime;
use crate::muffin::Embedding;

type I = Interval;

fn cosh_r(x: I) -> I {
    (1.0 + 1.0 / (2.0 * x - 2.0)).sqrt()
}

fn sinh_s(x: I, y: I) -> I {
    let num = 4.0 * x.square() - (y - 1.0) * (x - 1.0);
    let root = ((2.0 * x.square() + y - 1.0) * (2.0 * x - 1.0)).sqrt() + x * (y + 1.0).sqrt();
    num / (root * (2.0 * (x + 1.0) * (y - 1.0)).sqrt())
}

fn cosh_s(x: I, y: I) -> I {
    (1.0 + sinh_s(x, y).square()).sqrt()
}

fn altitude(x: I) -> I {
    ((4.0 * x + 1.0) / 3.0).acosh() / 2.0
}

fn vm(x: I) -> I {
    I::pi() * (2.0 * altitude(x) * cosh_r(x) - x.acosh())
}

/// `None` where `E` is undefined, mirroring the point version.
pub(super) fn cosh_e(x: I) -> Option<I> {
    let cr = cosh_r(x);
    let comp = 3.0 - cr;
    if comp.lo() < 1.0 {
        return None;
    }
    let ch = (cr.acosh() + comp.acosh()).cosh();
    let tanh2 = (x.square() - 1.0) / x.square();
    let den = ch.square() * tanh2 - 1.0;
    (den.lo() > 0.0).then(|| 1.0 + 2.0 / den)
}

pub(super) fn cosh_m(x: I) -> I {
    let crpp = 1.0 / (2.0 * (I::pi() / 9.0).sin());
    let cosh_2rpp = 2.0 * crpp.square() - 1.0;
    (1.0 + (x + 1.0) / (cosh_2rpp - 1.0)).sqrt()
}

pub(super) fn y0(x: I) -> I {
    let s3 = I::point(3.0).sqrt();
    (2.0 + 2.0 * s3) * x.square() - (3.0 + 2.0 * s3)
}

/// False only when the cell certainly misses the possible subregion.
pub(super) fn feasible(a: f64, b: f64, c: f64, d: f64, regime: Regime) -> bool {
    let (a, b) = (I::point(a), I::point(b));
    let below_e = || cosh_e(b).is_some_and(|e| d < e.lo());
    let below_m = || d < cosh_m(a).lo();
    let below_diag = || d < a.lo();
    let excluded = match regime {
        Regime::EBounded => below_e(),
        Regime::MBounded => below_m(),
        Regime::Diagonal => below_diag(),
        Regime::EWithUpper => below_e() || c > y0(b).hi(),
        Regime::Envelope => below_e() || below_m() || below_diag(),
    };
    !excluded
}

pub(super) struct RigorousCell {
    pub muffin_sum: f64,
    pub with_collar: f64,
    pub best: f64,
    pub embedding: Embedding,
}

/// `None` when an arctanh argument cannot be shown to lie below one.
pub(super) fn cell(a: f64, b: f64, c: f64, d: f64) -> Option<RigorousCell> {
    let (ai, bi, ci, di) = (I::point(a), I::point(b), I::point(c), I::point(d));

    let w_r0 = ((ai + 1.0) / (4.0 * ai - 2.0)).sqrt().atanh()?;
    let sh = sinh_s(bi, ci);
    let tanh_s_bc = sh / (1.0 + sh.square()).sqrt();
    let w_s0 = (((di + 1.0) / 2.0).sqrt() * tanh_s_bc).atanh()?;
    let u20 = (ai * I::point(2.0).sqrt() / (di - 1.0).sqrt()).asinh();
    let t120 = (2.0 * bi / ((bi - 1.0) * (di - 1.0)).sqrt()).acosh();
    let t220 = (2.0 * ai / (di - 1.0)).acosh();
    let h0 = u20 - w_s0;

    let cosh_s_ad = cosh_s(ai, di);
    let a0 = (cosh_s_ad * ((ci - 1.0) / (ci + 1.0)).sqrt()).atanh()?;
    let vm20 = 2.0 * I::pi() * (a0 * cosh_s_ad - di.acosh() / 2.0);

    let embedding = Embedding {
        c1: w_s0.certainly_le(u20),
        c2: (w_r0 + w_s0).certainly_le(t120),
        c3: (2.0 * w_s0).certainly_le(t220),
    };

    let muffin_sum = vm(bi) + vm20;
    // Any height not exceeding the true minimum gives an embedded collar.
    let height = altitude(ai)
        .lo()
        .min(ci.acosh().lo() / 2.0)
        .min(h0.lo())
        .max(0.0);
    let h = I::point(height);
    let area = 3.0 - cosh_r(ai) - cosh_s(bi, ci);
    let with_collar = muffin_sum + I::pi() * area * (2.0 * h + (2.0 * h).sinh());

    Some(RigorousCell {
        muffin_sum: muffin_sum.lo(),
        with_collar: with_collar.lo(),
        best: muffin_sum.lo().max(with_collar.lo()),
        embedding,
    })
}
