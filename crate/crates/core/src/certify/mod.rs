//! Grid certification of double-muffin volume bounds.
//!
//! A campaign rectangle of `(cosh l1, cosh l2)` values is tiled by cells. Each
//! cell is first tested against the lower envelope for `l2` (and, with no
//! (1,1,1)-hexagon, the upper bound `Y0`); surviving cells must pass the
//! muffin embedding criteria and receive the larger of the two double-muffin
//! bounds. The campaign's certified volume bound is the minimum over the
//! surviving cells.
//!
//! Cells are evaluated in parallel. The reduction keys each bound by its
//! row-major cell index, so the reported minimum and argmin do not depend
//! on scheduling or thread count.

pub mod interval;
mod rigorous;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{cosh_e, cosh_m, envelope_with_branch, v_double, y0, Branch, Y_PIECES};
use crate::muffin::{check_hypothesis_rect, embedding_ok, Embedding};
use crate::{Error, Result};

use interval::Interval;

/// Spacing of the samples used to locate the minimum of the `l2` envelope.
pub const ENVELOPE_SAMPLE_STEP: f64 = 1e-5;

/// `floor(v * 1000) / 1000`.
pub fn truncate3(v: f64) -> f64 {
    truncate_to(v, 3)
}

/// Truncation after `decimals` decimal places.
pub fn truncate_to(v: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (v * scale).floor() / scale
}

/// `ceil(v * 1000) / 1000`.
pub fn round_up3(v: f64) -> f64 {
    (v * 1000.0).ceil() / 1000.0
}

/// Axis-aligned rectangle `[a, b] x [c, d]` in the `(x, y)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Rect {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let r = Rect { a, b, c, d };
        if !(a > 1.0 && a < b && b.is_finite()) {
            return Err(r.invalid("need 1 < a < b"));
        }
        if !(c > 1.0 && c < d && d.is_finite()) {
            return Err(r.invalid("need 1 < c < d"));
        }
        Ok(r)
    }

    /// Checks the hypothesis range of the double-muffin bound, `b <= 2` and `d <= 3`.
    pub fn check_double_muffin(&self) -> Result<()> {
        check_hypothesis_rect(self.a, self.b, self.c, self.d)
    }

    pub fn corners(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn area(&self) -> f64 {
        (self.b - self.a) * (self.d - self.c)
    }

    fn invalid(&self, reason: &'static str) -> Error {
        Error::InvalidRect {
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
            reason,
        }
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// Cell size of a subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub dx: f64,
    pub dy: f64,
}

/// Relative slack allowed when checking that a side is a whole number of steps.
const GRID_TOLERANCE: f64 = 1e-9;

fn step_count(lo: f64, hi: f64, step: f64) -> Result<usize> {
    let n = (hi - lo) / step;
    let k = n.round();
    if k < 1.0 || (n - k).abs() > GRID_TOLERANCE {
        return Err(Error::InvalidGrid(format!(
            "side [{lo}, {hi}] is not a whole number of steps of {step}"
        )));
    }
    Ok(k as usize)
}

/// Edge `i` of `n`: `lo + i * step` rounded to 12 decimals, with the last
/// edge snapped to `hi`.
#[inline]
fn edge(lo: f64, hi: f64, step: f64, i: usize, n: usize) -> f64 {
    if i == n {
        hi
    } else {
        ((lo + i as f64 * step) * 1e12).round() / 1e12
    }
}

impl GridSpec {
    pub fn new(dx: f64, dy: f64) -> Result<Self> {
        if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "cell sizes must be positive, got {dx} x {dy}"
            )));
        }
        Ok(GridSpec { dx, dy })
    }

    /// Number of columns and rows tiling `rect`.
    pub fn shape(&self, rect: &Rect) -> Result<(usize, usize)> {
        Ok((
            step_count(rect.a, rect.b, self.dx)?,
            step_count(rect.c, rect.d, self.dy)?,
        ))
    }

    /// Cell `(i, j)` of an `nx` by `ny` tiling of `rect`.
    pub fn cell(&self, rect: &Rect, (nx, ny): (usize, usize), i: usize, j: usize) -> Rect {
        Rect {
            a: edge(rect.a, rect.b, self.dx, i, nx),
            b: edge(rect.a, rect.b, self.dx, i + 1, nx),
            c: edge(rect.c, rect.d, self.dy, j, ny),
            d: edge(rect.c, rect.d, self.dy, j + 1, ny),
        }
    }

    /// All cells in row-major order (x-major, then y).
    pub fn cells(&self, rect: &Rect) -> Result<Vec<Rect>> {
        let shape = self.shape(rect)?;
        Ok((0..shape.0)
            .flat_map(|i| (0..shape.1).map(move |j| (i, j)))
            .map(|(i, j)| self.cell(rect, shape, i, j))
            .collect())
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.dx, self.dy)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `DXxDY`, e.g. `0.001x0.001`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGrid(format!("expected DXxDY, got {s:?}"));
        let (dx, dy) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let dx = dx.trim().parse().map_err(|_| bad())?;
        let dy = dy.trim().parse().map_err(|_| bad())?;
        GridSpec::new(dx, dy)
    }
}

/// Which lower (and upper) bounds on `cosh l2` decide whether a cell can
/// contain a manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `d >= cosh E(b)`; `E` decreases.
    EBounded,
    /// `d >= cosh M(a)`; `M` increases.
    MBounded,
    /// `d >= a`, i.e. `l2 >= l1`.
    Diagonal,
    /// `d >= cosh E(b)` and `c <= Y0(b)`; used without a (1,1,1)-hexagon.
    EWithUpper,
    /// All three lower bounds at once.
    Envelope,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::EBounded,
        Regime::MBounded,
        Regime::Diagonal,
        Regime::EWithUpper,
        Regime::Envelope,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::EBounded => "e-bounded",
            Regime::MBounded => "m-bounded",
            Regime::Diagonal => "diagonal",
            Regime::EWithUpper => "e-with-upper",
            Regime::Envelope => "envelope",
        }
    }

    fn from_branch(b: Branch) -> Self {
        match b {
            Branch::Diagonal => Regime::Diagonal,
            Branch::E => Regime::EBounded,
            Branch::M => Regime::MBounded,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown regime {s:?}"))
    }
}

/// Arithmetic used for cell evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    /// Plain round-to-nearest binary64.
    #[default]
    Binary64,
    /// Outward-rounded binary64 intervals; bounds are lower endpoints.
    Binary64Interval,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Binary64 => "binary64",
            Precision::Binary64Interval => "binary64-interval",
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether `cell` can meet the possible subregion under `regime`.
///
/// Each bound is evaluated at the corner where it is smallest over the cell,
/// so `false` means no point of the cell is possible.
pub fn feasibility(cell: &Rect, regime: Regime) -> bool {
    let Rect { a, b, c, d } = *cell;
    let above_e = || cosh_e(b).map_or(true, |e| d >= e);
    let above_m = || cosh_m(a).map_or(true, |m| d >= m);
    let above_diag = || d >= a;
    match regime {
        Regime::EBounded => above_e(),
        Regime::MBounded => above_m(),
        Regime::Diagonal => above_diag(),
        Regime::EWithUpper => above_e() && c <= y0(b),
        Regime::Envelope => above_e() && above_m() && above_diag(),
    }
}

/// One feasible cell with its bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellRecord {
    pub cell: Rect,
    pub muffin_sum: f64,
    pub with_collar: f64,
    /// Certified lower bound over the cell.
    pub best: f64,
    pub embedding: Embedding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CellVerdict {
    Infeasible,
    Feasible(CellRecord),
}

impl CellVerdict {
    pub fn bound(&self) -> Option<f64> {
        match self {
            CellVerdict::Infeasible => None,
            CellVerdict::Feasible(r) => Some(r.best),
        }
    }
}

/// Feasibility, embedding flags and volume bound of a single cell.
///
/// Embedding failures are reported in the verdict; an arctanh argument
/// reaching one is reported as a campaign failure since the muffin waist
/// cannot be bounded.
pub fn evaluate_cell(cell: &Rect, regime: Regime, precision: Precision) -> Result<CellVerdict> {
    let Rect { a, b, c, d } = *cell;
    let arctanh_failure = || Error::CampaignFailure {
        cell: cell.corners(),
        flags: [false; 3],
    };
    match precision {
        Precision::Binary64 => {
            if !feasibility(cell, regime) {
                return Ok(CellVerdict::Infeasible);
            }
            let v = v_double(a, b, c, d).map_err(|e| match e {
                Error::ArctanhDomain { .. } => arctanh_failure(),
                other => other,
            })?;
            Ok(CellVerdict::Feasible(CellRecord {
                cell: *cell,
                muffin_sum: v.muffin_sum,
                with_collar: v.with_collar,
                best: v.best,
                embedding: embedding_ok(&v.constants),
            }))
        }
        Precision::Binary64Interval => {
            check_hypothesis_rect(a, b, c, d)?;
            if !rigorous::feasible(a, b, c, d, regime) {
                return Ok(CellVerdict::Infeasible);
            }
            let r = rigorous::cell(a, b, c, d).ok_or_else(arctanh_failure)?;
            Ok(CellVerdict::Feasible(CellRecord {
                cell: *cell,
                muffin_sum: r.muffin_sum,
                with_collar: r.with_collar,
                best: r.best,
                embedding: r.embedding,
            }))
        }
    }
}

/// Result of certifying one rectangle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub rect: Rect,
    pub grid: GridSpec,
    pub regime: Regime,
    pub precision: Precision,
    /// Minimum bound over feasible cells; `None` when no cell is feasible.
    pub min_bound: Option<f64>,
    pub min_bound_truncated: Option<f64>,
    /// First cell in row-major order attaining `min_bound`.
    pub argmin: Option<Rect>,
    pub cells_total: usize,
    pub cells_feasible: usize,
    /// Feasible cells in row-major order, when requested.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellRecord>,
}

/// Partial reduction over a set of cell indices.
#[derive(Debug, Clone, Default)]
struct Tally {
    feasible: usize,
    best: Option<(f64, usize, Rect)>,
    error: Option<(usize, Error)>,
}

impl Tally {
    fn push(mut self, idx: usize, verdict: Result<CellVerdict>) -> Self {
        match verdict {
            Err(e) => self.note_error(idx, e),
            Ok(CellVerdict::Infeasible) => {}
            Ok(CellVerdict::Feasible(rec)) => {
                self.feasible += 1;
                if !rec.embedding.all() {
                    self.note_error(
                        idx,
                        Error::CampaignFailure {
                            cell: rec.cell.corners(),
                            flags: rec.embedding.flags(),
                        },
                    );
                }
                self.note_bound(rec.best, idx, rec.cell);
            }
        }
        self
    }

    fn note_error(&mut self, idx: usize, e: Error) {
        if self.error.as_ref().is_none_or(|&(i, _)| idx < i) {
            self.error = Some((idx, e));
        }
    }

    fn note_bound(&mut self, v: f64, idx: usize, cell: Rect) {
        let better = match self.best {
            None => true,
            Some((bv, bi, _)) => v.total_cmp(&bv).then(idx.cmp(&bi)).is_lt(),
        };
        if better {
            self.best = Some((v, idx, cell));
        }
    }

    /// Commutative and associative, so any reduction tree gives the same result.
    fn merge(mut self, other: Tally) -> Tally {
        self.feasible += other.feasible;
        if let Some((i, e)) = other.error {
            self.note_error(i, e);
        }
        if let Some((v, i, c)) = other.best {
            self.note_bound(v, i, c);
        }
        self
    }
}

/// Configured certification engine.
#[derive(Debug, Clone, Default)]
pub struct Certifier {
    precision: Precision,
    threads: Option<usize>,
    keep_cells: bool,
}

impl Certifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    /// Worker threads; `None` uses the global rayon pool.
    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    /// Keep every feasible cell in the report.
    pub fn keep_cells(mut self, keep: bool) -> Self {
        self.keep_cells = keep;
        self
    }

    pub fn certify(&self, rect: &Rect, grid: &GridSpec, regime: Regime) -> Result<CertReport> {
        rect.check_double_muffin()?;
        let shape = grid.shape(rect)?;
        let total = shape.0 * shape.1;
        let precision = self.precision;
        let eval = |idx: usize| {
            let cell = grid.cell(rect, shape, idx / shape.1, idx % shape.1);
            evaluate_cell(&cell, regime, precision)
        };

        let run = || -> (Tally, Vec<CellRecord>) {
            if self.keep_cells {
                let verdicts: Vec<_> = (0..total).into_par_iter().map(eval).collect();
                let cells = verdicts
                    .iter()
                    .filter_map(|v| match v {
                        Ok(CellVerdict::Feasible(r)) => Some(*r),
                        _ => None,
                    })
                    .collect();
                let tally = verdicts
                    .into_iter()
                    .enumerate()
                    .fold(Tally::default(), |t, (i, v)| t.push(i, v));
                (tally, cells)
            } else {
                let tally = (0..total)
                    .into_par_iter()
                    .fold(Tally::default, |t, i| t.push(i, eval(i)))
                    .reduce(Tally::default, Tally::merge);
                (tally, Vec::new())
            }
        };

        let (tally, cells) = match self.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidGrid(format!("thread pool: {e}")))?
                .install(run),
            None => run(),
        };

        if let Some((_, e)) = tally.error {
            return Err(e);
        }
        let min_bound = tally.best.map(|(v, _, _)| v);
        Ok(CertReport {
            rect: *rect,
            grid: *grid,
            regime,
            precision,
            min_bound,
            min_bound_truncated: min_bound.map(truncate3),
            argmin: tally.best.map(|(_, _, c)| c),
            cells_total: total,
            cells_feasible: tally.feasible,
            cells,
        })
    }

    /// The seven rectangles below `Y` on `[1.24, 1.5)`.
    pub fn campaign_1235(&self, grid: &GridSpec) -> Result<Vec<CertReport>> {
        pieces_1235(self.precision)
            .iter()
            .map(|p| self.certify(&p.rect, grid, p.regime))
            .collect()
    }

    /// The rectangle `[1.23, 1.24] x [1.74, 1.938]` without a (1,1,1)-hexagon.
    pub fn campaign_123(&self, grid: &GridSpec) -> Result<CertReport> {
        let p = piece_123(self.precision);
        self.certify(&p.rect, grid, p.regime)
    }
}

pub fn certify_rect(rect: &Rect, grid: &GridSpec, regime: Regime) -> Result<CertReport> {
    Certifier::new().certify(rect, grid, regime)
}

/// Default cell size of the `cosh l1 >= 1.24` campaign.
pub fn grid_1235() -> GridSpec {
    GridSpec {
        dx: 0.001,
        dy: 0.001,
    }
}

/// Default cell size of the no-(1,1,1)-hexagon campaign, halved in `x`.
pub fn grid_123() -> GridSpec {
    GridSpec {
        dx: 0.0005,
        dy: 0.001,
    }
}

pub fn campaign_1235() -> Result<Vec<CertReport>> {
    Certifier::new().campaign_1235(&grid_1235())
}

pub fn campaign_123() -> Result<CertReport> {
    Certifier::new().campaign_123(&grid_123())
}

/// A campaign rectangle together with the regime used to filter its cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CampaignPiece {
    pub rect: Rect,
    pub regime: Regime,
}

fn sample_points(a0: f64, b0: f64) -> impl Iterator<Item = (f64, f64)> {
    let n = ((b0 - a0) / ENVELOPE_SAMPLE_STEP).round() as usize;
    (0..n).map(move |i| {
        (
            edge(a0, b0, ENVELOPE_SAMPLE_STEP, i, n),
            edge(a0, b0, ENVELOPE_SAMPLE_STEP, i + 1, n),
        )
    })
}

/// `c0`: the minimum of `cosh max{l1, E, M}` over `[a0, b0]`, truncated
/// after three decimals.
///
/// In binary64 mode the envelope is sampled at spacing
/// [`ENVELOPE_SAMPLE_STEP`] including both endpoints. In interval mode each
/// sample gap contributes a certified lower bound instead, using the
/// monotonicity of each branch.
pub fn envelope_floor(a0: f64, b0: f64, precision: Precision) -> f64 {
    let min = match precision {
        Precision::Binary64 => sample_points(a0, b0)
            .map(|(x, _)| envelope_with_branch(x).0)
            .chain(std::iter::once(envelope_with_branch(b0).0))
            .fold(f64::INFINITY, f64::min),
        Precision::Binary64Interval => sample_points(a0, b0)
            .map(|(lo, hi)| {
                let e = rigorous::cosh_e(Interval::point(hi)).map_or(lo, |e| e.lo());
                let m = rigorous::cosh_m(Interval::point(lo)).lo();
                lo.max(e).max(m)
            })
            .fold(f64::INFINITY, f64::min),
    };
    truncate3(min)
}

/// Picks the single-branch regime when one branch of the envelope dominates
/// at both ends of `[a0, b0]`, and [`Regime::Envelope`] otherwise.
pub fn select_regime(a0: f64, b0: f64) -> Regime {
    let left = envelope_with_branch(a0).1;
    let right = envelope_with_branch(b0).1;
    if left == right {
        Regime::from_branch(left)
    } else {
        Regime::Envelope
    }
}

/// Campaign rectangles `[a0, b0] x [c0, d0]` with `d0 = Y` on each piece.
pub fn pieces_1235(precision: Precision) -> Vec<CampaignPiece> {
    Y_PIECES
        .iter()
        .map(|&(a0, b0, y)| CampaignPiece {
            rect: Rect {
                a: a0,
                b: b0,
                c: envelope_floor(a0, b0, precision),
                d: y,
            },
            regime: select_regime(a0, b0),
        })
        .collect()
}

/// `[1.23, 1.24] x [c0, d0]` with `c0` the truncated minimum of `cosh E`
/// and `d0` the maximum of `Y0` rounded up, both at `x = 1.24`.
pub fn piece_123(precision: Precision) -> CampaignPiece {
    let (a0, b0) = (1.23, 1.24);
    let (e_min, y0_max) = match precision {
        Precision::Binary64 => {
            let e_min = sample_points(a0, b0)
                .map(|(x, _)| x)
                .chain(std::iter::once(b0))
                .filter_map(|x| cosh_e(x).ok())
                .fold(f64::INFINITY, f64::min);
            (e_min, y0(b0))
        }
        Precision::Binary64Interval => {
            // E decreases on this interval, Y0 increases.
            let b = Interval::point(b0);
            let e = rigorous::cosh_e(b).map_or(1.0, |e| e.lo());
            (e, rigorous::y0(b).hi())
        }
    };
    CampaignPiece {
        rect: Rect {
            a: a0,
            b: b0,
            c: truncate3(e_min),
            d: round_up3(y0_max),
        },
        regime: Regime::EWithUpper,
    }
}
