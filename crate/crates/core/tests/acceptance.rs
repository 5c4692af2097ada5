//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypvol::bounds::{
    cosh_e, cosh_m, envelope_with_branch, km_min, l2_lower_envelope, v_double, v_single, y0,
    Branch, Constants, Y_PIECES,
};
use hypvol::certify::{
    grid_123, grid_1235, truncate3, truncate_to, CertReport, Certifier, GridSpec, Precision,
};
use hypvol::hyptrig::{
    cosh_x, cosh_x111, cosh_x112, cosh_x121, sinh_u, special_arcs, HCosh, SpectrumPoint,
};
use hypvol::muffin::{altitude, cosh_r, s_of, sinh_s, vm, vm_prime, waist_l1};

/// Points per property suite.
const SUITE_POINTS: usize = 2500;
/// Relative tolerance for the analytic derivative of `VM`.
const VM_PRIME_RTOL: f64 = 1e-5;
/// Absolute tolerance of the identity `U1 = A + W`.
const UAW_TOL: f64 = 1e-12;
/// Slack below `sqrt 2 / 4` allowed for `sinh S`.
const SINH_S_SLACK: f64 = 1e-9;
/// Relative tolerance for `special_arcs` against `cosh_X`.
const ARCS_RTOL: f64 = 1e-12;
/// Absolute tolerance of the two forms of `Y0`.
const Y0_TOL: f64 = 1e-12;
const SOUNDNESS_CELLS: usize = 100;
const SOUNDNESS_POINTS: usize = 10;

const TABLE: [(f64, f64, f64); 7] = [
    (1.24, 1.986, 7.406),
    (1.25, 1.9, 7.406),
    (1.27, 1.8, 7.438),
    (1.3, 1.68, 7.407),
    (1.35, 1.59, 7.407),
    (1.4, 1.55, 7.433),
    (1.45, 1.52, 7.431),
];

/// Printed minima with their printed number of decimals.
const PIECE_MINIMA: [(f64, i32); 7] = [
    (7.466, 3),
    (7.524, 3),
    (7.62, 2),
    (7.73, 2),
    (7.86, 2),
    (7.99, 2),
    (8.12, 2),
];

const PIECE_ARGMIN: [(f64, f64); 7] = [
    (1.24, 1.742),
    (1.25, 1.686),
    (1.27, 1.604),
    (1.3, 1.524),
    (1.35, 1.446),
    (1.4, 1.433),
    (1.45, 1.45),
];

type Outcome = Result<String, String>;
type Suite = fn(&mut ChaCha8Rng) -> Result<usize, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hc(v: f64) -> HCosh {
    HCosh::new(v).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn single_muffin_table() -> Outcome {
    for (x, y, printed) in TABLE {
        let v = v_single(x, y.acosh() / 2.0).map_err(|e| e.to_string())?;
        ensure(truncate3(v) == printed, || {
            format!(
                "x = {x}: V = {v} truncates to {}, want {printed}",
                truncate3(v)
            )
        })?;
    }
    Ok("seven rows match".into())
}

fn campaign_1235_minima() -> Outcome {
    let t = Instant::now();
    let reports = Certifier::new()
        .campaign_1235(&grid_1235())
        .map_err(|e| e.to_string())?;
    let dy = grid_1235().dy;
    let mut got = Vec::new();
    for ((rep, (want, dec)), (ax, ay)) in reports.iter().zip(PIECE_MINIMA).zip(PIECE_ARGMIN) {
        let min = rep.min_bound.ok_or("piece without feasible cells")?;
        ensure(truncate_to(min, dec) == want, || {
            format!("{}: min {min} does not truncate to {want}", rep.rect)
        })?;
        let cell = rep.argmin.unwrap();
        ensure(
            (cell.a - ax).abs() < 1e-9 && (cell.c - ay).abs() <= dy + 1e-9,
            || format!("{}: argmin {cell}, want corner ({ax}, {ay})", rep.rect),
        )?;
        got.push(format!("{min:.4}"));
    }
    Ok(format!(
        "minima {} in {:.2} s",
        got.join(", "),
        t.elapsed().as_secs_f64()
    ))
}

fn no_hexagon() -> Outcome {
    let c = Certifier::new();
    let fine = c.campaign_123(&grid_123()).map_err(|e| e.to_string())?;
    let min = fine.min_bound.ok_or("no feasible cells")?;
    ensure(truncate3(min) == 7.409, || format!("fine min {min}"))?;
    let cell = fine.argmin.unwrap();
    let want = [1.2305, 1.231, 1.808, 1.809];
    ensure(
        cell.corners()
            .iter()
            .zip(want)
            .all(|(g, w)| (g - w).abs() < 1e-12),
        || format!("fine argmin {cell}"),
    )?;
    let coarse = c
        .campaign_123(&GridSpec::new(0.001, 0.001).unwrap())
        .map_err(|e| e.to_string())?;
    let cmin = coarse.min_bound.ok_or("no feasible coarse cells")?;
    ensure(truncate3(cmin) == 7.399, || format!("coarse min {cmin}"))?;
    Ok(format!("fine {min:.5} at {cell}, coarse {cmin:.5}"))
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let flo = f(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn scalar_values() -> Outcome {
    let e_km = cosh_e(km_min()).map_err(|e| e.to_string())?;
    ensure((e_km - 2.893).abs() <= 1e-3, || {
        format!("cosh E(km) = {e_km}")
    })?;
    let le = cosh_e(1.23).map_err(|e| e.to_string())?.acosh();
    ensure(truncate3(le) == 1.2, || format!("E(1.23) = {le}"))?;
    let ly = y0(1.23).acosh();
    ensure(truncate3(ly) == 1.194, || {
        format!("arccosh Y0(1.23) = {ly}")
    })?;
    let cross = bisect(1.2300, 1.2310, |x| cosh_e(x).unwrap() - y0(x));
    ensure((1.2300..=1.2310).contains(&cross), || {
        format!("crossing {cross}")
    })?;
    let k = Constants::get();
    let m = cosh_m(k.trimonic_threshold).unwrap();
    ensure((m - 1.43969).abs() <= 1e-4, || {
        format!("cosh M(threshold) = {m}")
    })?;
    let v15 = v_single(1.5, 1.5f64.acosh() / 2.0).unwrap();
    ensure(truncate3(v15) == 7.429, || format!("V(1.5) = {v15}"))?;
    let a = (2.0 * altitude(1.24).unwrap()).cosh();
    ensure((a - 1.98666).abs() <= 1e-5, || {
        format!("cosh 2A(1.24) = {a}")
    })?;
    ensure((k.v_oct - 3.66386).abs() <= 1e-5, || {
        format!("v_oct = {}", k.v_oct)
    })?;
    Ok(format!("E = Y0 at x = {cross:.7}"))
}

/// Points of a `side x side` grid over `[lo, hi]^2`, both ends included.
fn grid2(lo: (f64, f64), hi: (f64, f64), side: usize) -> impl Iterator<Item = (f64, f64)> {
    let step = move |l: f64, h: f64, i: usize| l + (h - l) * i as f64 / (side - 1) as f64;
    (0..side).flat_map(move |i| (0..side).map(move |j| (step(lo.0, hi.0, i), step(lo.1, hi.1, j))))
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn suite_arcs() -> Result<usize, String> {
    let mut n = 0;
    for (u, v) in grid2((1.01, 1.01), (3.0, 3.0), 100) {
        let (x, y) = (u.min(v), u.max(v));
        let p = SpectrumPoint::new(x, y).unwrap();
        let s = special_arcs(p);
        let x221 = cosh_x(hc(y), hc(y), hc(x)).unwrap().value();
        ensure(
            s.cosh_x111 >= s.cosh_x121 * (1.0 - 1e-14) && s.cosh_x121 >= x221 * (1.0 - 1e-14),
            || format!("ordering at ({x}, {y})"),
        )?;
        ensure(
            cosh_x(hc(u), hc(v), hc(x)).unwrap() == cosh_x(hc(v), hc(u), hc(x)).unwrap(),
            || format!("symmetry at ({u}, {v})"),
        )?;
        let x111 = cosh_x(hc(x), hc(x), hc(x)).unwrap().value();
        let x121 = cosh_x(hc(x), hc(y), hc(x)).unwrap().value();
        let x112 = cosh_x(hc(x), hc(x), hc(y)).unwrap().value();
        ensure(
            rel(s.cosh_x111, x111) < ARCS_RTOL
                && rel(s.cosh_x121, x121) < ARCS_RTOL
                && rel(s.cosh_x112, x112) < ARCS_RTOL,
            || format!("special arcs at ({x}, {y})"),
        )?;
        let h = 1e-4;
        ensure(cosh_x111(u + h) < cosh_x111(u), || format!("X111 at {u}"))?;
        ensure(
            cosh_x112(u + h, v) <= cosh_x112(u, v) && cosh_x112(u, v + h) >= cosh_x112(u, v),
            || format!("X112 at ({u}, {v})"),
        )?;
        ensure(
            cosh_x121(u + h, v) <= cosh_x121(u, v) && cosh_x121(u, v + h) <= cosh_x121(u, v),
            || format!("X121 at ({u}, {v})"),
        )?;
        n += 1;
    }
    Ok(n)
}

fn suite_uaw() -> Result<usize, String> {
    let mut n = 0;
    for x in linspace(1.18, 2.0, SUITE_POINTS + 1).skip(1) {
        let u1 = sinh_u(hc(x), x).unwrap().asinh();
        let aw = altitude(x).unwrap() + waist_l1(x).unwrap();
        ensure((u1 - aw).abs() <= UAW_TOL, || {
            format!("U1 - A - W = {} at {x}", u1 - aw)
        })?;
        n += 1;
    }
    Ok(n)
}

fn suite_s() -> Result<usize, String> {
    let floor = SQRT_2 / 4.0 - SINH_S_SLACK;
    let mut n = 0;
    // Log-spaced towards x = 1 and y = 1 where the naive form cancels.
    let near_one = |t: f64, span: f64| 1.0 + span * 10f64.powf(-12.0 * (1.0 - t));
    for (s, t) in grid2((0.0, 0.0), (1.0, 1.0), 60) {
        let (x, y) = (near_one(s, 1.0), near_one(t, 2.0));
        let sh = sinh_s(x, y).unwrap();
        ensure(sh >= floor && sh.is_finite(), || {
            format!("sinh S({x}, {y}) = {sh}")
        })?;
        n += 1;
    }
    for (x, y) in grid2((1.001, 1.001), (2.0, 3.0), 60) {
        let s = s_of(x, y).unwrap();
        ensure(s > 0.0 && sinh_s(x, y).unwrap() >= floor, || {
            format!("S({x}, {y})")
        })?;
        let h = 1e-5;
        ensure(s_of(x + h, y).unwrap() > s, || {
            format!("S not increasing in x at ({x}, {y})")
        })?;
        ensure(s_of(x, y + h).unwrap() < s, || {
            format!("S not decreasing in y at ({x}, {y})")
        })?;
        n += 1;
    }
    Ok(n)
}

fn suite_vm() -> Result<usize, String> {
    let mut n = 0;
    let mut prev = f64::INFINITY;
    for x in linspace(1.01, 2.0, SUITE_POINTS) {
        let v = vm(x).unwrap();
        ensure(v < prev, || format!("VM not decreasing at {x}"))?;
        prev = v;
        let h = 1e-6;
        let fd = (vm(x + h).unwrap() - vm(x - h).unwrap()) / (2.0 * h);
        let d = vm_prime(x).unwrap();
        ensure(rel(d, fd) < VM_PRIME_RTOL, || {
            format!("VM' at {x}: {d} vs {fd}")
        })?;
        ensure(cosh_r(x + h).unwrap() < cosh_r(x).unwrap(), || {
            format!("cosh R at {x}")
        })?;
        n += 1;
    }
    Ok(n)
}

fn suite_envelope() -> Result<usize, String> {
    let mut n = 0;
    let mut prev_e = f64::INFINITY;
    let mut prev_m = 0.0;
    for x in linspace(km_min(), 1.4, SUITE_POINTS) {
        let e = cosh_e(x).unwrap();
        let m = cosh_m(x).unwrap();
        ensure(e < prev_e, || format!("cosh E not decreasing at {x}"))?;
        ensure(m > prev_m, || format!("cosh M not increasing at {x}"))?;
        prev_e = e;
        prev_m = m;
        let (v, branch) = envelope_with_branch(x);
        let max = x.max(e).max(m);
        let picked = match branch {
            Branch::Diagonal => x,
            Branch::E => e,
            Branch::M => m,
        };
        ensure(v == max && picked == v && l2_lower_envelope(x) == v, || {
            format!("envelope at {x}: {v} vs max {max}")
        })?;
        n += 1;
    }
    for x in linspace(1.4, 2.0, 500) {
        ensure(l2_lower_envelope(x) >= x, || {
            format!("envelope below diagonal at {x}")
        })?;
    }
    Ok(n)
}

fn suite_single_and_double(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut n = 0;
    for _ in 0..SUITE_POINTS {
        let x = rng.gen_range(1.01..2.0);
        let h1 = rng.gen_range(0.0..1.5);
        let h2 = h1 + rng.gen_range(1e-6..1.0);
        if cosh_r(x).unwrap() < 2.0 {
            ensure(v_single(x, h2).unwrap() > v_single(x, h1).unwrap(), || {
                format!("V({x}, H) not increasing")
            })?;
        }
        let a = rng.gen_range(1.01..1.99);
        let b = rng.gen_range(a..2.0);
        let c = rng.gen_range(1.01..2.99);
        let d = rng.gen_range(c..3.0);
        if let Ok(v) = v_double(a, b, c, d) {
            ensure(v.best >= v.muffin_sum && v.best >= v.with_collar, || {
                format!("best below a component at ({a}, {b}, {c}, {d})")
            })?;
        }
        let y = rng.gen_range(0.0..3.0);
        let s3 = 3f64.sqrt();
        let alt = (2.0 + 2.0 * s3) * (y * y - 1.0) - 1.0;
        ensure((y0(y) - alt).abs() <= Y0_TOL, || format!("Y0 forms at {y}"))?;
        n += 1;
    }
    // V(x, arccosh(Y)/2) is smallest at the left end of each piece of Y.
    for (l, r, y) in Y_PIECES {
        let h = y.acosh() / 2.0;
        let left = v_single(l, h).unwrap();
        for x in linspace(l, r, 400).take(399) {
            ensure(v_single(x, h).unwrap() >= left, || {
                format!("piece [{l}, {r}) at {x}")
            })?;
        }
    }
    Ok(n)
}

fn reports_equal(a: &CertReport, b: &CertReport) -> bool {
    a == b && a.min_bound.map(f64::to_bits) == b.min_bound.map(f64::to_bits)
}

fn suite_determinism() -> Result<usize, String> {
    let pieces = hypvol::certify::pieces_1235(Precision::Binary64);
    let mut n = 0;
    for p in &pieces[..3] {
        let run = |t| {
            Certifier::new()
                .threads(Some(t))
                .keep_cells(true)
                .certify(&p.rect, &grid_1235(), p.regime)
                .unwrap()
        };
        let one = run(1);
        let all = std::thread::available_parallelism().map_or(8, |n| n.get());
        for t in [4, all] {
            ensure(reports_equal(&one, &run(t)), || {
                format!("{} differs with {t} threads", p.rect)
            })?;
        }
        n += one.cells_total;
    }
    Ok(n)
}

fn suite_soundness(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut cells = Vec::new();
    for rep in Certifier::new()
        .keep_cells(true)
        .campaign_1235(&grid_1235())
        .map_err(|e| e.to_string())?
    {
        cells.extend(rep.cells);
    }
    let mut n = 0;
    for _ in 0..SOUNDNESS_CELLS {
        let rec = cells[rng.gen_range(0..cells.len())];
        let r = rec.cell;
        for _ in 0..SOUNDNESS_POINTS {
            let x = rng.gen_range(r.a..r.b);
            let y = rng.gen_range(r.c..r.d);
            let v = v_double(x, x, y, y).unwrap().best;
            ensure(rec.best <= v, || {
                format!("cell {r} bound {} exceeds {v} at ({x}, {y})", rec.best)
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let suites: [(&str, Suite); 8] = [
        ("arcs", |_| suite_arcs()),
        ("u1=a+w", |_| suite_uaw()),
        ("s", |_| suite_s()),
        ("vm", |_| suite_vm()),
        ("envelope", |_| suite_envelope()),
        ("volume", suite_single_and_double),
        ("determinism", |_| suite_determinism()),
        ("soundness", suite_soundness),
    ];
    let mut summary = Vec::new();
    for (name, suite) in suites {
        let count = suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        let need = if name == "soundness" {
            SOUNDNESS_CELLS * SOUNDNESS_POINTS
        } else {
            SUITE_POINTS
        };
        ensure(count >= need, || format!("{name}: only {count} points"))?;
        summary.push(format!("{name} {count}"));
    }
    Ok(summary.join(", "))
}

fn embedding() -> Outcome {
    let mut parts = Vec::new();
    for precision in [Precision::Binary64, Precision::Binary64Interval] {
        let c = Certifier::new().precision(precision).keep_cells(true);
        let mut reports = c.campaign_1235(&grid_1235()).map_err(|e| e.to_string())?;
        reports.push(c.campaign_123(&grid_123()).map_err(|e| e.to_string())?);
        let checked: usize = reports.iter().map(|r| r.cells.len()).sum();
        let failed = reports
            .iter()
            .flat_map(|r| &r.cells)
            .filter(|c| !c.embedding.all())
            .count();
        ensure(failed == 0, || format!("{precision}: {failed} cells fail"))?;
        parts.push(format!("{precision} {checked} cells"));
    }
    Ok(format!("no failures ({})", parts.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("table of single-muffin bounds", single_muffin_table),
        ("campaign 1235 minima and argmins", campaign_1235_minima),
        ("campaign 123 without (1,1,1)-hexagon", no_hexagon),
        ("scalar golden values", scalar_values),
        ("property suites", properties),
        ("embedding criteria", embedding),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
