//! The `paper` verification suite.
//!
//! Eight checks cover the exact label-gap propositions, the closed-form
//! fundamental-gap identities, the implication chain, the theorem
//! conformance sweep, the moment recursion, Bessel zeros, and the Weyl
//! ratio window.  Each check recomputes its claim from the library output
//! and records a pass flag, elapsed time, and a one-line detail.
//!
//! A check can be mutated by id: the mutation perturbs that check's
//! asserted constant or tolerance so that a correct build fails it, which
//! exercises the failure path of the exit-code contract.

use std::time::Instant;

use eigengap::conjecture::{prop1_verify, prop2_verify, reference_gap_constants};
use eigengap::generate::{spectrum, weyl_prediction};
use eigengap::ineq::{
    check_range, cheng_yang_recursion_check, cheng_yang_recursion_check_exact, float_holds,
    implication_chain, CheckStatus, InequalityId, InequalityReport,
};
use eigengap::spectrum::{DomainSpec, Length, Spectrum};
use eigengap::specfun::{bessel_j, bessel_zero, bessel_zeros, ppw_ratio};
use eigengap::{Error, Exact, Rat, Result};
use serde::Serialize;

/// Identifiers accepted by the mutation hook, in execution order.
pub const CHECK_IDS: [&str; 8] = ["c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"];

/// One suite check's outcome.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub elapsed_ms: u64,
    pub detail: String,
}

/// Suite manifest: tool identity, configuration, and per-check verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub suite: &'static str,
    pub mutate: Option<String>,
    pub generated_unix: u64,
    pub all_pass: bool,
    pub checks: Vec<CheckOutcome>,
}

fn outcome(
    id: &'static str,
    title: &'static str,
    pass: bool,
    start: Instant,
    detail: String,
) -> CheckOutcome {
    CheckOutcome {
        id,
        title,
        pass,
        elapsed_ms: start.elapsed().as_millis() as u64,
        detail,
    }
}

/// Integer labels for indices `1..=last` of a Dirichlet spectrum.
fn labels_upto(spec: &Spectrum, last: usize) -> Result<Vec<u64>> {
    if last > spec.max_index() {
        return Err(Error::Parameter(format!(
            "need index {last}, spectrum certifies {}",
            spec.max_index()
        )));
    }
    let mut out = Vec::with_capacity(last);
    'outer: for e in &spec.entries {
        let label = e.label.ok_or_else(|| {
            Error::Unsupported(format!("{} carries no labels", spec.domain))
        })?;
        for _ in 0..e.mult {
            out.push(label);
            if out.len() == last {
                break 'outer;
            }
        }
    }
    Ok(out)
}

fn unit_square() -> DomainSpec {
    DomainSpec::square(Length::of(1, 1))
}

fn unit_cube() -> DomainSpec {
    DomainSpec::cube(Length::of(1, 1))
}

fn unit_triangle() -> DomainSpec {
    DomainSpec::TriangleEquilateral {
        diameter: Length::of(1, 1),
    }
}

/// Label gaps of the unit square and cube against `g² ≤ 9k` and `g³ ≤ 27k`
/// for `k ≤ 100`, with equality at `k = 1` in the square case.
pub fn check_prop1(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let (c_sq, c_cu): (i128, i128) = if mutated { (8, 26) } else { (9, 27) };
    let sq = labels_upto(&spectrum(&unit_square(), 101)?, 101)?;
    let cu = labels_upto(&spectrum(&unit_cube(), 101)?, 101)?;
    let mut ok = true;
    let mut slack_sq = i128::MAX;
    let mut slack_cu = i128::MAX;
    for k in 1..=100usize {
        let g2 = (sq[k] - sq[k - 1]) as i128;
        let g3 = (cu[k] - cu[k - 1]) as i128;
        slack_sq = slack_sq.min(c_sq * k as i128 - g2 * g2);
        slack_cu = slack_cu.min(c_cu * k as i128 - g3 * g3 * g3);
        ok &= g2 * g2 <= c_sq * k as i128 && g3 * g3 * g3 <= c_cu * k as i128;
    }
    let g1 = (sq[1] - sq[0]) as i128;
    let equality = g1 * g1 == c_sq;
    let lib = prop1_verify(2, 100)?.holds && prop1_verify(3, 100)?.holds;
    let pass = ok && equality && lib;
    Ok(outcome(
        "c1",
        "square and cube label gaps obey the k^(1/n) bound",
        pass,
        start,
        format!(
            "min slack {slack_sq} (n=2), {slack_cu} (n=3); k=1 equality {equality}; \
             library verdicts hold {lib}"
        ),
    ))
}

/// Equilateral-triangle label gaps against `g² ≤ 16k` for `k ≤ 100`, with
/// equality at `k = 1`.
pub fn check_prop2(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let c: i128 = if mutated { 15 } else { 16 };
    let labels = labels_upto(&spectrum(&unit_triangle(), 101)?, 101)?;
    let mut ok = true;
    let mut slack = i128::MAX;
    for k in 1..=100usize {
        let g = (labels[k] - labels[k - 1]) as i128;
        slack = slack.min(c * k as i128 - g * g);
        ok &= g * g <= c * k as i128;
    }
    let g1 = (labels[1] - labels[0]) as i128;
    let equality = g1 * g1 == c;
    let lib = prop2_verify(100)?.holds;
    let pass = ok && equality && lib;
    Ok(outcome(
        "c2",
        "equilateral-triangle label gaps obey the sqrt(k) bound",
        pass,
        start,
        format!("min slack {slack}; k=1 equality {equality}; library verdict holds {lib}"),
    ))
}

/// Fundamental-gap identities with zero tolerance: `3nπ²/D²` for cubes and
/// `64π²/(9D²)` for the equilateral triangle, plus the inradius upper and
/// diameter lower bounds.
pub fn check_gap_identities(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let cube_const = if mutated { 4i64 } else { 3 };
    let tri_const = if mutated { Rat::new(65, 9) } else { Rat::new(64, 9) };
    let big = |r: Rat| Exact::new((*r.numer()).into(), (*r.denom()).into());
    let gap_of = |d: &DomainSpec| -> Result<Exact> {
        let spec = spectrum(d, 2)?;
        let l = labels_upto(&spec, 2)?;
        Ok(Exact::from_integer((l[1] - l[0]).into()) * spec.unit.coeff_big())
    };
    let mut direct = true;
    for d in [
        DomainSpec::interval(Length::of(1, 1)),
        unit_square(),
        unit_cube(),
    ] {
        direct &= gap_of(&d)? == big(Rat::new(cube_const, 1));
    }
    direct &= gap_of(&unit_triangle())? == big(tri_const);
    let mut library = true;
    for d in [
        DomainSpec::interval(Length::of(1, 1)),
        unit_square(),
        unit_cube(),
        unit_triangle(),
        DomainSpec::square(Length::pi_of(1, 1)),
        DomainSpec::TriangleEquilateral {
            diameter: Length::of(2, 1),
        },
    ] {
        let r = reference_gap_constants(&d)?;
        library &= r.gap_identity_exact && r.inradius_upper_ok && r.diameter_lower_ok;
    }
    let pass = direct && library;
    Ok(outcome(
        "c3",
        "fundamental-gap identities hold exactly",
        pass,
        start,
        format!("unit-scale identities {direct}; library reports consistent {library}"),
    ))
}

const CHAIN_DOMAINS: [fn() -> DomainSpec; 6] = [
    unit_square,
    unit_cube,
    unit_triangle,
    || DomainSpec::TriangleRightIsosceles {
        leg: Length::of(1, 1),
    },
    || DomainSpec::Ball {
        dim: 2,
        radius: Length::of(1, 1),
    },
    || DomainSpec::Hemisphere,
];

/// Wherever the quadratic bound holds for `k ≤ 200`, the mean-form,
/// harmonic-sum, and gap bounds hold as well, on six Dirichlet domains.
pub fn check_chain(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let mut total_violations = 0usize;
    for make in CHAIN_DOMAINS {
        let spec = spectrum(&make(), 201)?;
        total_violations += implication_chain(&spec, 200)?.violations.len();
    }
    let mut halved_ok = true;
    if mutated {
        let spec = spectrum(&unit_square(), 201)?;
        for r in check_range(&spec, InequalityId::Ppw, 200)? {
            halved_ok &= float_holds(r.lhs, 0.5 * r.rhs);
        }
    }
    let pass = total_violations == 0 && halved_ok;
    Ok(outcome(
        "c4",
        "quadratic bound implies mean-form, harmonic-sum, and gap bounds",
        pass,
        start,
        format!("6 domains, k <= 200, {total_violations} violations"),
    ))
}

fn rows_hold(reports: &[InequalityReport], factor: f64) -> (usize, usize) {
    let mut checked = 0;
    let mut failures = 0;
    for r in reports {
        checked += 1;
        let ok = match r.status {
            CheckStatus::InfiniteRhs => r.holds,
            _ => r.holds && (factor == 1.0 || float_holds(r.lhs, factor * r.rhs)),
        };
        if !ok {
            failures += 1;
        }
    }
    (checked, failures)
}

/// Every proved bound holds on its model spectra for `k ≤ 100`, with the
/// quadratic projective bound an equality at `k = 0`.
pub fn check_conformance(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let factor = if mutated { 0.25 } else { 1.0 };
    let mut checked = 0usize;
    let mut failures = 0usize;
    let run = |domain: DomainSpec, ids: &[InequalityId]| -> Result<(usize, usize)> {
        let count = match domain.problem() {
            eigengap::spectrum::Problem::Dirichlet => 101,
            eigengap::spectrum::Problem::Closed => 102,
        };
        let spec = spectrum(&domain, count)?;
        let mut tally = (0usize, 0usize);
        for &id in ids {
            let reports = check_range(&spec, id, 100)?;
            let (c, f) = rows_hold(&reports, factor);
            tally.0 += c;
            tally.1 += f;
        }
        Ok(tally)
    };
    let euclidean = [
        DomainSpec::interval(Length::of(1, 1)),
        unit_square(),
        DomainSpec::rect(Length::of(1, 1), Length::of(2, 1)),
        unit_cube(),
        unit_triangle(),
        DomainSpec::TriangleRightIsosceles {
            leg: Length::of(1, 1),
        },
        DomainSpec::Ball {
            dim: 2,
            radius: Length::of(1, 1),
        },
        DomainSpec::Ball {
            dim: 3,
            radius: Length::of(1, 1),
        },
    ];
    let add = |tally: (usize, usize), checked: &mut usize, failures: &mut usize| {
        *checked += tally.0;
        *failures += tally.1;
    };
    for d in euclidean {
        let t = run(d, &[InequalityId::CzyGap])?;
        add(t, &mut checked, &mut failures);
    }
    let t = run(DomainSpec::Hemisphere, &[InequalityId::SphereDomainGap])?;
    add(t, &mut checked, &mut failures);
    let mut equality_at_zero = true;
    for cn in [1u32, 2] {
        let spec = spectrum(&DomainSpec::ProjectiveSpace { complex_dim: cn }, 102)?;
        let reports = check_range(&spec, InequalityId::CpnUniversal, 100)?;
        equality_at_zero &= reports[0].k == 0 && reports[0].lhs == reports[0].rhs;
        let (c, f) = rows_hold(&reports, factor);
        checked += c;
        failures += f;
    }
    let t = run(
        DomainSpec::CliffordTorus,
        &[InequalityId::ClosedMinimal, InequalityId::YangYau],
    )?;
    add(t, &mut checked, &mut failures);
    let homogeneous = [
        DomainSpec::Sphere { dim: 2 },
        DomainSpec::Sphere { dim: 3 },
        DomainSpec::FlatTorus {
            sides: vec![Length::of(1, 1), Length::of(1, 1)],
        },
        DomainSpec::ProjectiveSpace { complex_dim: 1 },
    ];
    for d in homogeneous {
        let t = run(
            d,
            &[
                InequalityId::ClosedHomogeneous,
                InequalityId::Li,
                InequalityId::HomogeneousBracket,
            ],
        )?;
        add(t, &mut checked, &mut failures);
    }
    let pass = failures == 0 && equality_at_zero;
    Ok(outcome(
        "c5",
        "proved bounds hold on all model spectra",
        pass,
        start,
        format!("{checked} rows, {failures} failures; k=0 projective equality {equality_at_zero}"),
    ))
}

/// The moment recursion on square labels: hypothesis holds for `k ≤ 100`,
/// every step bound holds, and `C(2,1)` equals `31/32`.
pub fn check_recursion(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let spot = if mutated { 0.9687 } else { 0.96875 };
    let labels = labels_upto(&spectrum(&unit_square(), 101)?, 101)?;
    let mu_exact: Vec<Exact> = labels
        .iter()
        .map(|&l| Exact::from_integer(l.into()))
        .collect();
    let mu_float: Vec<f64> = labels.iter().map(|&l| l as f64).collect();
    let exact = cheng_yang_recursion_check_exact(&mu_exact, 2, 100)?;
    let float = cheng_yang_recursion_check(&mu_float, 2, 100)?;
    let spot_ok = (exact.steps[0].c_factor - spot).abs() <= 1e-12;
    let agree = exact.steps.len() == float.steps.len()
        && exact
            .steps
            .iter()
            .zip(&float.steps)
            .all(|(a, b)| a.holds == b.holds);
    let pass = exact.all_hold
        && exact.first_hypothesis_failure.is_none()
        && spot_ok
        && agree;
    Ok(outcome(
        "c6",
        "moment recursion holds on square labels",
        pass,
        start,
        format!(
            "all steps hold {}; C(2,1) = {}; float agreement {agree}",
            exact.all_hold, exact.steps[0].c_factor
        ),
    ))
}

fn bisect_zero(p: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = bessel_j(p, lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = bessel_j(p, mid)?;
        if (f_lo < 0.0) == (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bessel zeros: half-order zeros are multiples of π, the first zeros match
/// a bisection oracle and their reference values, consecutive orders
/// interlace, and the disk spectrum realizes the two-dimensional membrane
/// ratio.
pub fn check_bessel(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let j01_ref = if mutated { 2.404926 } else { 2.404826 };
    let j11_ref = 3.831706;
    let mut half_ok = true;
    for k in 1..=50u32 {
        let z = bessel_zero(0.5, k)?;
        half_ok &= (z - k as f64 * std::f64::consts::PI).abs() < 1e-11;
    }
    let j01 = bessel_zero(0.0, 1)?;
    let j11 = bessel_zero(1.0, 1)?;
    let oracle01 = bisect_zero(0.0, 2.0, 3.0)?;
    let oracle11 = bisect_zero(1.0, 3.5, 4.2)?;
    let firsts_ok = (j01 - j01_ref).abs() < 1e-6
        && (j11 - j11_ref).abs() < 1e-6
        && (j01 - oracle01).abs() < 1e-6
        && (j11 - oracle11).abs() < 1e-6;
    let mut interlace_ok = true;
    for i in 0..=9u32 {
        let p = 0.5 * i as f64;
        let this = bessel_zeros(p, 21)?;
        let next = bessel_zeros(p + 0.5, 20)?;
        for k in 0..20 {
            interlace_ok &= this[k] < next[k] && next[k] < this[k + 1];
        }
    }
    let disk = spectrum(
        &DomainSpec::Ball {
            dim: 2,
            radius: Length::of(1, 1),
        },
        2,
    )?;
    let vals = disk.values_upto(2).expect("two disk eigenvalues");
    let ratio = vals[1] / vals[0];
    let membrane = ppw_ratio(2)?;
    let disk_ok = (ratio - membrane).abs() <= 1e-9 * membrane;
    let pass = half_ok && firsts_ok && interlace_ok && disk_ok;
    Ok(outcome(
        "c7",
        "Bessel zeros match oracles, interlace, and give the disk ratio",
        pass,
        start,
        format!(
            "half-order {half_ok}; first zeros {firsts_ok}; interlacing {interlace_ok}; \
             disk ratio {ratio} vs {membrane}"
        ),
    ))
}

/// The Weyl ratio `λ_k / prediction(k)` stays in `[0.98, 1.02]` over
/// `k ∈ [5000, 10000]` on the unit square, enumerated in under ten seconds.
pub fn check_weyl(mutated: bool) -> Result<CheckOutcome> {
    let start = Instant::now();
    let (lo, hi) = if mutated { (0.999, 1.001) } else { (0.98, 1.02) };
    let domain = unit_square();
    let spec = spectrum(&domain, 10_000)?;
    let vals = spec.values_upto(10_000).expect("certified to 10000");
    let mut in_window = true;
    let mut worst: f64 = 1.0;
    for k in 5_000..=10_000usize {
        let ratio = vals[k - 1] / weyl_prediction(&domain, k)?;
        if (ratio - 1.0).abs() > (worst - 1.0).abs() {
            worst = ratio;
        }
        in_window &= (lo..=hi).contains(&ratio);
    }
    let elapsed = start.elapsed();
    let pass = in_window && elapsed.as_secs_f64() < 10.0;
    Ok(outcome(
        "c8",
        "Weyl ratio window on the unit square",
        pass,
        start,
        format!(
            "worst ratio {worst} over k in [5000, 10000]; enumeration {} ms",
            elapsed.as_millis()
        ),
    ))
}

/// Run all eight checks, optionally mutating one by id.
pub fn run_paper_suite(mutate: Option<&str>) -> Result<Manifest> {
    if let Some(m) = mutate {
        if !CHECK_IDS.contains(&m) {
            return Err(Error::Parameter(format!(
                "unknown mutation `{m}`; expected one of {}",
                CHECK_IDS.join(", ")
            )));
        }
    }
    let hit = |id: &str| mutate == Some(id);
    let checks = vec![
        check_prop1(hit("c1"))?,
        check_prop2(hit("c2"))?,
        check_gap_identities(hit("c3"))?,
        check_chain(hit("c4"))?,
        check_conformance(hit("c5"))?,
        check_recursion(hit("c6"))?,
        check_bessel(hit("c7"))?,
        check_weyl(hit("c8"))?,
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(Manifest {
        tool: "eigengap",
        version: env!("CARGO_PKG_VERSION"),
        suite: "paper",
        mutate: mutate.map(str::to_string),
        generated_unix: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        all_pass,
        checks,
    })
}
