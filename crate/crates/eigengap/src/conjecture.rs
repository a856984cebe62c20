//! Shape coefficients, gap conjectures, and counterexample scans.
//!
//! The gap conjectures bound `λ_{k+1} − λ_k` by a shape coefficient times
//! `(λ₂ − λ₁) k^{1/n}`.  Every check here runs in exact integer arithmetic
//! whenever the spectrum carries labels and the coefficient is rational: the
//! comparison `g ≤ s·l·k^{1/n}` is decided by comparing `n`-th powers, so no
//! root is ever extracted.  Float fallbacks use a relative tolerance of
//! `1e-12`; the quantities involved are single products and `powf` calls,
//! each correctly rounded to well under that tolerance.
//!
//! Scans over domain families evaluate members independently (possibly in
//! parallel) and assemble results by grid index, so output is deterministic
//! for a fixed grid regardless of evaluation order or thread count.  Scans
//! record margins and violations; they never assert a conjecture's global
//! truth.

use crate::error::Error;
use crate::generate::spectrum;
use crate::scalar::{ArithMode, Scalar};
use crate::spectrum::{DomainSpec, Length, Problem, Spectrum};
use crate::{Exact, Rat, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const CONJ_RTOL: f64 = 1e-12;

fn rat_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// How a shape coefficient was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffMethod {
    ClosedForm,
    Unsupported,
}

/// The two shape coefficients of a domain: `s1` compares the largest
/// inscribed and smallest circumscribed axis-aligned cubes (squared side
/// ratio), `s2` the analogous inscribed/enclosing ball diameters.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeCoefficients {
    pub s1: f64,
    pub s2: f64,
    #[serde(skip)]
    pub s1_exact: Option<Rat>,
    #[serde(skip)]
    pub s2_exact: Option<Rat>,
    pub method: CoeffMethod,
}

impl ShapeCoefficients {
    fn unsupported() -> Self {
        ShapeCoefficients {
            s1: f64::NAN,
            s2: f64::NAN,
            s1_exact: None,
            s2_exact: None,
            method: CoeffMethod::Unsupported,
        }
    }

    fn exact(s1: Rat, s2: Rat) -> Self {
        ShapeCoefficients {
            s1: rat_f64(s1),
            s2: rat_f64(s2),
            s1_exact: Some(s1),
            s2_exact: Some(s2),
            method: CoeffMethod::ClosedForm,
        }
    }
}

/// Closed-form shape coefficients, axis-aligned convention for boxes.
///
/// Boxes: `s1 = (min side / max side)²`, `s2 = min² / Σ aᵢ²`.  Balls:
/// the inscribed cube of a ball of radius `R` has side `2R/√n` and the
/// circumscribed cube side `2R`, so `s1 = 1/n`; `s2 = 1`.  The equilateral
/// triangle has `s2 = (r/R)² = 1/4` from inradius `D/(2√3)` and circumradius
/// `D/√3`; its `s1 = (2√3−3)²` is closed-form but irrational, so only the
/// float value is provided.  Every other kind reports `Unsupported`.
pub fn shape_coefficients(domain: &DomainSpec) -> ShapeCoefficients {
    match domain {
        DomainSpec::Interval { .. } => ShapeCoefficients::exact(Rat::new(1, 1), Rat::new(1, 1)),
        DomainSpec::Box { sides } => {
            let min = sides.iter().map(|s| s.coeff).min().expect("validated");
            let max = sides.iter().map(|s| s.coeff).max().expect("validated");
            let sum_sq = sides
                .iter()
                .map(|s| s.coeff * s.coeff)
                .fold(Rat::new(0, 1), |a, b| a + b);
            ShapeCoefficients::exact((min / max) * (min / max), min * min / sum_sq)
        }
        DomainSpec::Ball { dim, .. } => {
            ShapeCoefficients::exact(Rat::new(1, *dim as i64), Rat::new(1, 1))
        }
        DomainSpec::TriangleEquilateral { .. } => {
            let root3 = 3f64.sqrt();
            ShapeCoefficients {
                s1: (2.0 * root3 - 3.0) * (2.0 * root3 - 3.0),
                s2: 0.25,
                s1_exact: None,
                s2_exact: Some(Rat::new(1, 4)),
                method: CoeffMethod::ClosedForm,
            }
        }
        _ => ShapeCoefficients::unsupported(),
    }
}

/// Which gap conjecture or proposition a verdict refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjectureId {
    #[serde(rename = "ConZ1_S1")]
    ConZ1S1,
    #[serde(rename = "ConZ1prime_S2")]
    ConZ1PrimeS2,
    #[serde(rename = "ConZ1_cuboid")]
    ConZ1Cuboid,
    #[serde(rename = "ConZ5_triangle")]
    ConZ5Triangle,
    Prop1,
    Prop2,
    PpwGapForm,
}

/// Which shape coefficient a conjecture check multiplies by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffMode {
    S1,
    S2,
}

/// Aggregate outcome of a conjecture sweep over `k`.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureVerdict {
    pub conjecture_id: ConjectureId,
    pub k_range: [usize; 2],
    pub holds: bool,
    pub worst_k: usize,
    pub worst_margin: f64,
    pub arithmetic: ArithMode,
}

#[derive(Clone, Copy, Debug)]
struct KEval {
    k: usize,
    gap: f64,
    bound: f64,
    holds: bool,
}

/// Evaluate `gap_k ≤ s·(λ₂−λ₁)·k^{1/root}` for `k = 1..=kmax`.
///
/// With labels and rational `s`, each verdict is the exact comparison of
/// `root`-th powers, `g^root ≤ (s·l)^root · k`, over big rationals;
/// otherwise floats with `1e-12` relative tolerance.  The reported `gap`
/// and `bound` diagnostics are in absolute eigenvalue units in both modes.
fn power_gap_eval(
    spec: &Spectrum,
    kmax: usize,
    s_exact: Option<Rat>,
    s_float: f64,
    root: u32,
) -> Result<(Vec<KEval>, ArithMode)> {
    if spec.problem != Problem::Dirichlet {
        return Err(Error::Unsupported(
            "gap conjectures are stated for Dirichlet spectra".into(),
        ));
    }
    if kmax < 1 {
        return Err(Error::Parameter("conjecture sweep needs kmax ≥ 1".into()));
    }
    if kmax + 1 > spec.max_index() {
        return Err(Error::Parameter(format!(
            "sweep to k = {kmax} needs index {} certified, spectrum reaches {}",
            kmax + 1,
            spec.max_index()
        )));
    }
    if let (Some(s), Some(ex)) = (s_exact, spec.exact_upto(kmax + 1)) {
        let s_big = Exact::new((*s.numer()).into(), (*s.denom()).into());
        let l = ex[1].clone() - ex[0].clone();
        let sl = s_big * l.clone();
        let rhs_base = num_traits::pow(sl, root as usize);
        let pi_f = std::f64::consts::PI.powi(spec.unit.pi_exp);
        let l_f = l.to_f64() * pi_f;
        let evals = (1..=kmax)
            .map(|k| {
                let g = ex[k].clone() - ex[k - 1].clone();
                let rhs = rhs_base.clone() * Exact::from_integer((k as u64).into());
                let holds = num_traits::pow(g.clone(), root as usize) <= rhs;
                KEval {
                    k,
                    gap: g.to_f64() * pi_f,
                    bound: s_float * l_f * (k as f64).powf(1.0 / root as f64),
                    holds,
                }
            })
            .collect();
        return Ok((evals, ArithMode::Exact));
    }
    let v = spec.values_upto(kmax + 1).expect("range checked above");
    let l = v[1] - v[0];
    let evals = (1..=kmax)
        .map(|k| {
            let gap = v[k] - v[k - 1];
            let bound = s_float * l * (k as f64).powf(1.0 / root as f64);
            KEval {
                k,
                gap,
                bound,
                holds: gap <= bound + CONJ_RTOL * bound.abs().max(1.0),
            }
        })
        .collect();
    Ok((evals, ArithMode::Float))
}

fn verdict_from(
    id: ConjectureId,
    kmax: usize,
    evals: &[KEval],
    arithmetic: ArithMode,
) -> ConjectureVerdict {
    let mut worst_k = evals[0].k;
    let mut worst_margin = f64::INFINITY;
    for e in evals {
        let margin = e.bound - e.gap;
        if margin < worst_margin {
            worst_margin = margin;
            worst_k = e.k;
        }
    }
    ConjectureVerdict {
        conjecture_id: id,
        k_range: [evals[0].k, kmax],
        holds: evals.iter().all(|e| e.holds),
        worst_k,
        worst_margin,
        arithmetic,
    }
}

/// Check `gap ≤ 𝔖·(λ₂−λ₁)·k^{1/n}` for the chosen shape coefficient.
pub fn gap_conjecture_check(
    spec: &Spectrum,
    kmax: usize,
    mode: CoeffMode,
) -> Result<ConjectureVerdict> {
    let coeffs = shape_coefficients(&spec.domain);
    if coeffs.method == CoeffMethod::Unsupported {
        return Err(Error::Unsupported(format!(
            "no closed-form shape coefficients for {}",
            spec.domain
        )));
    }
    let (s_float, s_exact, id) = match mode {
        CoeffMode::S1 => (coeffs.s1, coeffs.s1_exact, ConjectureId::ConZ1S1),
        CoeffMode::S2 => (coeffs.s2, coeffs.s2_exact, ConjectureId::ConZ1PrimeS2),
    };
    let root = spec.domain.dimension();
    let (evals, arith) = power_gap_eval(spec, kmax, s_exact, s_float, root)?;
    Ok(verdict_from(id, kmax, &evals, arith))
}

/// Check `gap ≤ (λ₂(Σ₀)−λ₁(Σ₀))·k^{1/n}` where `Σ₀` is the maximal inscribed
/// cuboid.  Only boxes (whose maximal inscribed cuboid is the box itself)
/// are supported.
pub fn cuboid_conjecture_check(spec: &Spectrum, kmax: usize) -> Result<ConjectureVerdict> {
    if !matches!(
        spec.domain,
        DomainSpec::Box { .. } | DomainSpec::Interval { .. }
    ) {
        return Err(Error::Unsupported(
            "the maximal inscribed cuboid is only computable when the domain is itself a box"
                .into(),
        ));
    }
    let root = spec.domain.dimension();
    let (evals, arith) = power_gap_eval(spec, kmax, Some(Rat::new(1, 1)), 1.0, root)?;
    Ok(verdict_from(ConjectureId::ConZ1Cuboid, kmax, &evals, arith))
}

/// Check `gap ≤ (λ₂(Π₀)−λ₁(Π₀))·√k` where `Π₀` is the maximal inscribed
/// equilateral triangle; only an equilateral domain (where `Π₀` is the
/// domain itself) is supported.
pub fn triangle_conjecture_check(spec: &Spectrum, kmax: usize) -> Result<ConjectureVerdict> {
    if !matches!(spec.domain, DomainSpec::TriangleEquilateral { .. }) {
        return Err(Error::Unsupported(
            "the maximal inscribed equilateral triangle is only computable for equilateral domains"
                .into(),
        ));
    }
    let (evals, arith) = power_gap_eval(spec, kmax, Some(Rat::new(1, 1)), 1.0, 2)?;
    Ok(verdict_from(
        ConjectureId::ConZ5Triangle,
        kmax,
        &evals,
        arith,
    ))
}

/// Exact square/cube gap check: label gaps satisfy `g_k^n ≤ 3^n·k`,
/// i.e. the gap is at most `(3π²/d²)·k^{1/n}` for a cube of side `d`.
pub fn prop1_verify(n: u32, kmax: usize) -> Result<ConjectureVerdict> {
    let domain = match n {
        2 => DomainSpec::square(Length::of(1, 1)),
        3 => DomainSpec::cube(Length::of(1, 1)),
        _ => {
            return Err(Error::Parameter(format!(
                "the cube gap check is stated for n ∈ {{2, 3}}, got {n}"
            )))
        }
    };
    let spec = spectrum(&domain, kmax + 1)?;
    let (evals, arith) = power_gap_eval(&spec, kmax, Some(Rat::new(1, 1)), 1.0, n)?;
    debug_assert_eq!(arith, ArithMode::Exact);
    Ok(verdict_from(ConjectureId::Prop1, kmax, &evals, arith))
}

/// Exact equilateral-triangle gap check: label gaps satisfy `g_k² ≤ 16·k`,
/// i.e. the gap is at most `(64π²/(9D²))·√k`.
pub fn prop2_verify(kmax: usize) -> Result<ConjectureVerdict> {
    let domain = DomainSpec::TriangleEquilateral {
        diameter: Length::of(1, 1),
    };
    let spec = spectrum(&domain, kmax + 1)?;
    let (evals, arith) = power_gap_eval(&spec, kmax, Some(Rat::new(1, 1)), 1.0, 2)?;
    debug_assert_eq!(arith, ArithMode::Exact);
    Ok(verdict_from(ConjectureId::Prop2, kmax, &evals, arith))
}

/// Bessel-quotient form of the gap bound:
/// `gap ≤ λ₁·(j_{n/2,1}²/j_{n/2−1,1}² − 1)·k^{1/n}`.
/// Float-mode only; the verdict is reported, not asserted.
pub fn ppw_gap_form_check(spec: &Spectrum, kmax: usize) -> Result<ConjectureVerdict> {
    if !spec.domain.is_euclidean() {
        return Err(Error::Unsupported(format!(
            "the Bessel-quotient gap form is stated for Euclidean domains, not {}",
            spec.domain
        )));
    }
    if kmax < 1 {
        return Err(Error::Parameter("conjecture sweep needs kmax ≥ 1".into()));
    }
    if kmax + 1 > spec.max_index() {
        return Err(Error::Parameter(format!(
            "sweep to k = {kmax} needs index {} certified, spectrum reaches {}",
            kmax + 1,
            spec.max_index()
        )));
    }
    let n = spec.domain.dimension();
    let ratio = crate::specfun::ppw_ratio(n)?;
    let v = spec.values_upto(kmax + 1).expect("range checked above");
    let evals: Vec<KEval> = (1..=kmax)
        .map(|k| {
            let gap = v[k] - v[k - 1];
            let bound = v[0] * (ratio - 1.0) * (k as f64).powf(1.0 / n as f64);
            KEval {
                k,
                gap,
                bound,
                holds: gap <= bound + CONJ_RTOL * bound.abs().max(1.0),
            }
        })
        .collect();
    Ok(verdict_from(
        ConjectureId::PpwGapForm,
        kmax,
        &evals,
        ArithMode::Float,
    ))
}

/// Reference constants for the fundamental gap of a domain, with the
/// computed spectrum checked against them symbolically.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceGapReport {
    pub domain: String,
    pub constants: BTreeMap<String, f64>,
    /// The computed `λ₂ − λ₁` equals its closed form (`3nπ²/D²` for cubes,
    /// `64π²/(9D²)` for the equilateral triangle) as exact rationals.
    pub gap_identity_exact: bool,
    /// `λ₂ − λ₁ ≤ nπ²/R₀²` (inradius form), checked exactly.
    pub inradius_upper_ok: bool,
    /// `λ₂ − λ₁ ≥ 3π²/D²` (diameter form), checked exactly.
    pub diameter_lower_ok: bool,
}

/// Compute the fundamental gap of a cube or equilateral triangle and verify
/// the closed-form identities and bounds with zero tolerance.
///
/// For a cube of side `d` (diameter `D = d√n`, inradius `R₀ = d/2`):
/// gap `= 3π²/d² = 3nπ²/D²`.  For the equilateral triangle of diameter `D`
/// (inradius `R₀ = D/(2√3)`): gap `= 64π²/(9D²)`, the extremal case of the
/// triangle lower bound.  All comparisons cancel the common power of π and
/// reduce to rational equalities on `unit · (l₂ − l₁)`.
pub fn reference_gap_constants(domain: &DomainSpec) -> Result<ReferenceGapReport> {
    enum Kind {
        Cube(Length, u32),
        Triangle(Length),
    }
    let kind = match domain {
        DomainSpec::Interval { length } => Kind::Cube(*length, 1),
        DomainSpec::Box { sides } => {
            if sides.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::Unsupported(
                    "the closed-form fundamental gap requires a cube (all sides equal)".into(),
                ));
            }
            Kind::Cube(sides[0], sides.len() as u32)
        }
        DomainSpec::TriangleEquilateral { diameter } => Kind::Triangle(*diameter),
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed-form fundamental gap implemented for {domain}"
            )))
        }
    };
    let spec = spectrum(domain, 2)?;
    let ex = spec.exact_upto(2).expect("cube and triangle spectra carry labels");
    let gap = ex[1].clone() - ex[0].clone();
    let big = |r: Rat| Exact::new((*r.numer()).into(), (*r.denom()).into());
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let mut constants = BTreeMap::new();
    let report = match kind {
        Kind::Cube(side, n) => {
            let c2 = side.coeff * side.coeff;
            let identity = big(Rat::new(3, 1) / c2);
            let inradius_upper = big(Rat::new(4 * n as i64, 1) / c2);
            let diameter_lower = big(Rat::new(3, n as i64) / c2);
            let side_f = side.value();
            constants.insert("computed_gap".into(), spec.gap(1).unwrap());
            constants.insert("gap_identity".into(), 3.0 * pi2 / (side_f * side_f));
            constants.insert(
                "inradius_upper".into(),
                n as f64 * pi2 / ((side_f / 2.0) * (side_f / 2.0)),
            );
            constants.insert(
                "diameter_lower".into(),
                3.0 * pi2 / (n as f64 * side_f * side_f),
            );
            ReferenceGapReport {
                domain: domain.to_string(),
                constants,
                gap_identity_exact: gap == identity,
                inradius_upper_ok: gap <= inradius_upper,
                diameter_lower_ok: diameter_lower <= gap,
            }
        }
        Kind::Triangle(diameter) => {
            let d2 = diameter.coeff * diameter.coeff;
            let identity = big(Rat::new(64, 9) / d2);
            let inradius_upper = big(Rat::new(24, 1) / d2);
            let diameter_lower = big(Rat::new(3, 1) / d2);
            let d_f = diameter.value();
            constants.insert("computed_gap".into(), spec.gap(1).unwrap());
            constants.insert("gap_identity".into(), 64.0 * pi2 / (9.0 * d_f * d_f));
            constants.insert("inradius_upper".into(), 24.0 * pi2 / (d_f * d_f));
            constants.insert("diameter_lower".into(), 3.0 * pi2 / (d_f * d_f));
            ReferenceGapReport {
                domain: domain.to_string(),
                constants,
                gap_identity_exact: gap == identity,
                inradius_upper_ok: gap <= inradius_upper,
                diameter_lower_ok: diameter_lower <= gap,
            }
        }
    };
    Ok(report)
}

/// Exact arithmetic grid `start, start+step, …` capped at `end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridRange {
    pub start: Rat,
    pub end: Rat,
    pub step: Rat,
}

fn parse_rat(tok: &str) -> Result<Rat> {
    let bad = |t: &str| Error::Parameter(format!("cannot parse `{t}` as a number"));
    if let Some((p, q)) = tok.split_once('/') {
        let num: i64 = p.trim().parse().map_err(|_| bad(tok))?;
        let den: i64 = q.trim().parse().map_err(|_| bad(tok))?;
        if den <= 0 {
            return Err(Error::Parameter(format!(
                "denominator must be positive in `{tok}`"
            )));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int, frac)) = tok.split_once('.') {
        let int = if int.is_empty() { "0" } else { int };
        let whole: i64 = int.trim().parse().map_err(|_| bad(tok))?;
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(tok));
        }
        let num: i64 = frac.parse().map_err(|_| bad(tok))?;
        let den = 10i64.pow(frac.len() as u32);
        let sign = if tok.trim_start().starts_with('-') { -1 } else { 1 };
        return Ok(Rat::new(whole, 1) + Rat::new(sign * num, den));
    }
    let whole: i64 = tok.trim().parse().map_err(|_| bad(tok))?;
    Ok(Rat::new(whole, 1))
}

impl GridRange {
    /// Parse `start:end:step` with integer, decimal, or `p/q` components.
    pub fn parse(s: &str) -> Result<GridRange> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parameter(format!(
                "range must be `start:end:step`, got `{s}`"
            )));
        }
        let range = GridRange {
            start: parse_rat(parts[0])?,
            end: parse_rat(parts[1])?,
            step: parse_rat(parts[2])?,
        };
        range.validate()?;
        Ok(range)
    }

    pub fn validate(&self) -> Result<()> {
        if self.step <= Rat::new(0, 1) {
            return Err(Error::Parameter("grid step must be positive".into()));
        }
        if self.end < self.start {
            return Err(Error::Parameter(
                "grid end must not precede its start".into(),
            ));
        }
        Ok(())
    }

    /// All grid points, exactly.
    pub fn points(&self) -> Result<Vec<Rat>> {
        self.validate()?;
        let mut pts = Vec::new();
        let mut a = self.start;
        while a <= self.end {
            pts.push(a);
            if pts.len() > 10_000 {
                return Err(Error::Parameter(
                    "grid exceeds 10000 points; widen the step".into(),
                ));
            }
            a += self.step;
        }
        Ok(pts)
    }
}

/// A family of domains to sweep for conjecture violations.
#[derive(Clone, Debug)]
pub enum ScanFamily {
    /// Rectangles `(1, a)` with aspect `a` on the grid.
    Rectangles(GridRange),
    /// Boxes `(1, 1, a)` with aspect `a` on the grid.
    Boxes(GridRange),
    /// The right isosceles triangle against the equilateral one under the
    /// scale-free inradius normalization `(λ₂−λ₁)·R₀²`.
    TrianglePair,
}

impl ScanFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ScanFamily::Rectangles(_) => "rectangles",
            ScanFamily::Boxes(_) => "boxes",
            ScanFamily::TrianglePair => "triangle-pair",
        }
    }
}

/// One family member's aggregate verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanMemberResult {
    pub param: f64,
    pub holds: bool,
    pub min_margin: f64,
    pub worst_k: usize,
}

/// One recorded violation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanViolation {
    pub param: f64,
    pub k: usize,
    pub gap: f64,
    pub bound: f64,
}

/// Deterministic scan output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanResult {
    pub family: String,
    pub grid: Vec<f64>,
    pub results: Vec<ScanMemberResult>,
    pub violations: Vec<ScanViolation>,
}

fn member_eval(domain: &DomainSpec, id: ConjectureId, kmax: usize) -> Result<Vec<KEval>> {
    let spec = spectrum(domain, kmax + 1)?;
    let (evals, _) = match id {
        ConjectureId::ConZ1S1 => {
            let c = shape_coefficients(domain);
            power_gap_eval(&spec, kmax, c.s1_exact, c.s1, spec.domain.dimension())?
        }
        ConjectureId::ConZ1PrimeS2 => {
            let c = shape_coefficients(domain);
            power_gap_eval(&spec, kmax, c.s2_exact, c.s2, spec.domain.dimension())?
        }
        ConjectureId::ConZ1Cuboid => power_gap_eval(
            &spec,
            kmax,
            Some(Rat::new(1, 1)),
            1.0,
            spec.domain.dimension(),
        )?,
        _ => {
            return Err(Error::Unsupported(format!(
                "box-family scans support the shape-coefficient and cuboid conjectures, not {id:?}"
            )))
        }
    };
    Ok(evals)
}

fn box_family_scan(
    name: &str,
    points: &[Rat],
    make_domain: impl Fn(Rat) -> DomainSpec + Sync,
    id: ConjectureId,
    kmax: usize,
) -> Result<ScanResult> {
    use rayon::prelude::*;
    let evals: Vec<Vec<KEval>> = points
        .par_iter()
        .map(|a| member_eval(&make_domain(*a), id, kmax))
        .collect::<Result<_>>()?;
    let mut results = Vec::with_capacity(points.len());
    let mut violations = Vec::new();
    for (a, member) in points.iter().zip(&evals) {
        let param = rat_f64(*a);
        let mut worst_k = member[0].k;
        let mut min_margin = f64::INFINITY;
        for e in member {
            let margin = e.bound - e.gap;
            if margin < min_margin {
                min_margin = margin;
                worst_k = e.k;
            }
            if !e.holds {
                violations.push(ScanViolation {
                    param,
                    k: e.k,
                    gap: e.gap,
                    bound: e.bound,
                });
            }
        }
        results.push(ScanMemberResult {
            param,
            holds: member.iter().all(|e| e.holds),
            min_margin,
            worst_k,
        });
    }
    Ok(ScanResult {
        family: name.into(),
        grid: points.iter().map(|a| rat_f64(*a)).collect(),
        results,
        violations,
    })
}

fn triangle_pair_scan() -> Result<ScanResult> {
    let ri = spectrum(
        &DomainSpec::TriangleRightIsosceles {
            leg: Length::of(1, 1),
        },
        2,
    )?;
    let eq = spectrum(
        &DomainSpec::TriangleEquilateral {
            diameter: Length::of(1, 1),
        },
        2,
    )?;
    let sqrt2 = std::f64::consts::SQRT_2;
    let r0_sq_ri = (2.0 - sqrt2) * (2.0 - sqrt2) / 4.0;
    let r0_sq_eq = 1.0 / 12.0;
    let ri_norm = ri.gap(1).unwrap() * r0_sq_ri;
    let eq_norm = eq.gap(1).unwrap() * r0_sq_eq;
    let holds = ri_norm <= eq_norm + CONJ_RTOL * eq_norm.abs().max(1.0);
    let violation = if holds {
        Vec::new()
    } else {
        vec![ScanViolation {
            param: 1.0,
            k: 1,
            gap: ri_norm,
            bound: eq_norm,
        }]
    };
    Ok(ScanResult {
        family: "triangle-pair".into(),
        grid: vec![1.0],
        results: vec![ScanMemberResult {
            param: 1.0,
            holds,
            min_margin: eq_norm - ri_norm,
            worst_k: 1,
        }],
        violations: violation,
    })
}

/// Sweep a family of domains, recording margins and any violations of the
/// chosen conjecture.  The scan never asserts the conjecture's global truth;
/// it emits a deterministic report keyed by grid index.
pub fn counterexample_scan(
    family: &ScanFamily,
    id: ConjectureId,
    kmax: usize,
) -> Result<ScanResult> {
    match family {
        ScanFamily::Rectangles(range) => {
            if range.start < Rat::new(1, 1) {
                return Err(Error::Parameter(
                    "rectangle aspect grid must start at 1 or above".into(),
                ));
            }
            let points = range.points()?;
            box_family_scan(
                "rectangles",
                &points,
                |a| DomainSpec::Box {
                    sides: vec![Length::of(1, 1), Length { coeff: a, pi_exp: 0 }],
                },
                id,
                kmax,
            )
        }
        ScanFamily::Boxes(range) => {
            if range.start < Rat::new(1, 1) {
                return Err(Error::Parameter(
                    "box aspect grid must start at 1 or above".into(),
                ));
            }
            let points = range.points()?;
            box_family_scan(
                "boxes",
                &points,
                |a| DomainSpec::Box {
                    sides: vec![
                        Length::of(1, 1),
                        Length::of(1, 1),
                        Length { coeff: a, pi_exp: 0 },
                    ],
                },
                id,
                kmax,
            )
        }
        ScanFamily::TrianglePair => triangle_pair_scan(),
    }
}
