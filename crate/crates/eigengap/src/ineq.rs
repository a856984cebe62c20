//! Universal eigenvalue inequalities and consecutive-gap bounds.
//!
//! Every check is written once, generic over [`Scalar`], and instantiated
//! with exact rationals when the spectrum carries integer labels (and the
//! bound is either homogeneous in the eigenvalues, so a common power of π
//! cancels, or the spectrum's unit is π-free), falling back to floats with a
//! relative tolerance of `1e-9` otherwise.  Square and `k`-th roots are
//! decided in exact mode by clearing radicals, never by rounding.
//!
//! Reported `lhs`/`rhs` values are expressed in the same units the decision
//! used: for exact labeled spectra that is the label scale (units of
//! `π^pi_exp` times the rational unit coefficient), so a unit square reports
//! eigenvalues `2, 5, 5, 8, …` rather than multiples of `π²`; float-mode
//! checks report absolute values.  Verdicts are unit-independent.
//!
//! Dirichlet checks index eigenvalues from 1, closed checks from 0 with
//! `λ̄₀ = 0`.  A right-hand side that diverges (the harmonic-sum bound when
//! `λ_{k+1}` equals some `λ_i`) is reported as `infinite_rhs` and holds; a
//! bracket bound whose radicand is negative is reported `inapplicable` at
//! that `k`, never as a violation.

use crate::error::Error;
use crate::scalar::{ArithMode, Scalar, FLOAT_RTOL};
use crate::spectrum::{DomainSpec, Problem, Spectrum};
use crate::{Exact, Rat, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Identifier of one implemented inequality or gap bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityId {
    /// Gap bound by the mean of the lower eigenvalues: `λ_{k+1} − λ_k ≤ (4/(nk)) Σ λ_i`.
    Ppw,
    /// Harmonic-sum bound `Σ λ_i/(λ_{k+1} − λ_i) ≥ nk/4`.
    Hp,
    /// Quadratic universal bound `Σ(λ_{k+1}−λ_i)² ≤ (4/n) Σ(λ_{k+1}−λ_i)λ_i`.
    Yang1,
    /// Mean-form consequence `λ_{k+1} ≤ (1+4/n)(1/k) Σ λ_i`.
    Yang2,
    /// `λ_{k+1} ≤ (1+4/n) k^{2/n} λ₁`.
    ChengYangUpper,
    /// `λ_{k+1} − λ_k ≤ 4λ₁ √((1+4/n)/n) · k^{1/n}`.
    CzyGap,
    /// Bracket gap bound for Dirichlet domains in the unit sphere.
    SphereDomainGap,
    /// Bracket gap bound for Dirichlet domains in complex projective space.
    CpnDomainGap,
    /// Closed-spectrum variant of the projective-space bracket bound.
    CpnDomainGapClosed,
    /// Quadratic universal bound on closed complex-projective spectra.
    CpnUniversal,
    /// `λ̄_{k+1} − λ̄_k ≤ n + (4/(n(k+1))) Σ λ̄_i` for closed minimal
    /// submanifolds of a unit sphere.
    ClosedMinimal,
    /// `λ̄_{k+1} − λ̄_k ≤ (4/(k+1)) Σ λ̄_i + λ̄₁` for closed homogeneous spaces.
    ClosedHomogeneous,
    /// Square-root refinement of the closed minimal-submanifold bound.
    YangYau,
    /// Square-root refinement of the closed homogeneous bound.
    Li,
    /// Variance-corrected bracket for closed homogeneous spaces.
    HomogeneousBracket,
    /// Extrinsic quadratic bound with mean-curvature shift `λ_i + n²‖H‖²/4`.
    Extrinsic,
    /// Extrinsic upper bound `λ_{k+1} + n²‖H‖²/4 ≤ (1+4/n)k^{2/n}(λ₁ + n²‖H‖²/4)`.
    ExtrinsicUpper,
    /// `λ̄_{k+1} + 2n(n+1) ≤ (1+2/n)(λ̄₁ + 2n(n+1))(k+1)^{1/n}` on closed
    /// complex-projective spectra (n = complex dimension).
    CpnUpper,
}

impl InequalityId {
    pub const ALL: [InequalityId; 18] = [
        InequalityId::Ppw,
        InequalityId::Hp,
        InequalityId::Yang1,
        InequalityId::Yang2,
        InequalityId::ChengYangUpper,
        InequalityId::CzyGap,
        InequalityId::SphereDomainGap,
        InequalityId::CpnDomainGap,
        InequalityId::CpnDomainGapClosed,
        InequalityId::CpnUniversal,
        InequalityId::ClosedMinimal,
        InequalityId::ClosedHomogeneous,
        InequalityId::YangYau,
        InequalityId::Li,
        InequalityId::HomogeneousBracket,
        InequalityId::Extrinsic,
        InequalityId::ExtrinsicUpper,
        InequalityId::CpnUpper,
    ];

    /// Stable CLI/JSON token.
    pub fn token(&self) -> &'static str {
        match self {
            InequalityId::Ppw => "ppw",
            InequalityId::Hp => "hp",
            InequalityId::Yang1 => "yang1",
            InequalityId::Yang2 => "yang2",
            InequalityId::ChengYangUpper => "cheng-yang-upper",
            InequalityId::CzyGap => "czy-gap",
            InequalityId::SphereDomainGap => "sphere-domain-gap",
            InequalityId::CpnDomainGap => "cpn-domain-gap",
            InequalityId::CpnDomainGapClosed => "cpn-domain-gap-closed",
            InequalityId::CpnUniversal => "cpn-universal",
            InequalityId::ClosedMinimal => "closed-minimal",
            InequalityId::ClosedHomogeneous => "closed-homogeneous",
            InequalityId::YangYau => "yang-yau",
            InequalityId::Li => "li",
            InequalityId::HomogeneousBracket => "homogeneous-bracket",
            InequalityId::Extrinsic => "extrinsic",
            InequalityId::ExtrinsicUpper => "extrinsic-upper",
            InequalityId::CpnUpper => "cpn-upper",
        }
    }

    /// Identifiers whose right-hand side bounds the consecutive gap directly.
    pub fn is_gap_bound(&self) -> bool {
        matches!(
            self,
            InequalityId::Ppw
                | InequalityId::CzyGap
                | InequalityId::SphereDomainGap
                | InequalityId::CpnDomainGap
                | InequalityId::CpnDomainGapClosed
                | InequalityId::ClosedMinimal
                | InequalityId::ClosedHomogeneous
                | InequalityId::YangYau
                | InequalityId::Li
                | InequalityId::HomogeneousBracket
        )
    }
}

impl std::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl std::str::FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.token() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown inequality id `{s}`")))
    }
}

/// Per-`k` evaluation status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Ok,
    Inapplicable,
    InfiniteRhs,
}

/// Result of evaluating one inequality at one index.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalityReport {
    pub inequality: InequalityId,
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub status: CheckStatus,
}

/// Whether `id`'s hypotheses are satisfied by spectra of `domain`.
pub fn applies_to(id: InequalityId, domain: &DomainSpec) -> bool {
    match id {
        InequalityId::Ppw
        | InequalityId::Hp
        | InequalityId::Yang1
        | InequalityId::Yang2
        | InequalityId::ChengYangUpper
        | InequalityId::CzyGap => domain.is_euclidean(),
        InequalityId::Extrinsic | InequalityId::ExtrinsicUpper => {
            domain.mean_curvature_sq().is_some()
        }
        InequalityId::SphereDomainGap => matches!(domain, DomainSpec::Hemisphere),
        InequalityId::CpnDomainGap => false,
        InequalityId::CpnDomainGapClosed
        | InequalityId::CpnUniversal
        | InequalityId::CpnUpper => matches!(domain, DomainSpec::ProjectiveSpace { .. }),
        InequalityId::ClosedMinimal | InequalityId::YangYau => matches!(
            domain,
            DomainSpec::CliffordTorus | DomainSpec::Sphere { .. }
        ),
        InequalityId::ClosedHomogeneous
        | InequalityId::Li
        | InequalityId::HomogeneousBracket => matches!(
            domain,
            DomainSpec::Sphere { .. }
                | DomainSpec::FlatTorus { .. }
                | DomainSpec::CliffordTorus
                | DomainSpec::ProjectiveSpace { .. }
        ),
    }
}

/// Gap bounds applicable to spectra of `domain`, in token order.
pub fn gap_bound_ids(domain: &DomainSpec) -> Vec<InequalityId> {
    let mut ids: Vec<InequalityId> = InequalityId::ALL
        .into_iter()
        .filter(|id| id.is_gap_bound() && applies_to(*id, domain))
        .collect();
    ids.sort_by_key(|id| id.token());
    ids
}

struct Verdict {
    holds: bool,
    lhs: f64,
    rhs: f64,
    status: CheckStatus,
}

impl Verdict {
    fn simple<S: Scalar>(holds: bool, lhs: &S, rhs: &S) -> Verdict {
        Verdict {
            holds,
            lhs: lhs.to_f64(),
            rhs: rhs.to_f64(),
            status: CheckStatus::Ok,
        }
    }

    fn inapplicable(lhs: f64) -> Verdict {
        Verdict {
            holds: true,
            lhs,
            rhs: f64::NAN,
            status: CheckStatus::Inapplicable,
        }
    }
}

fn sum<S: Scalar>(xs: &[S]) -> S {
    xs.iter().fold(S::zero(), |acc, x| acc + x.clone())
}

fn spow<S: Scalar>(x: &S, e: u32) -> S {
    let mut acc = S::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// `lam[i] = λ_{i+1}` (Dirichlet, 1-based); requires `lam.len() ≥ k+1`.
fn ppw_run<S: Scalar>(lam: &[S], n: u32, k: usize) -> Verdict {
    let lhs = lam[k].clone() - lam[k - 1].clone();
    let rhs = S::ratio(4, n as i64 * k as i64) * sum(&lam[..k]);
    Verdict::simple(S::leq(&lhs, &rhs), &lhs, &rhs)
}

fn hp_run<S: Scalar>(lam: &[S], n: u32, k: usize) -> Verdict {
    let lhs = S::ratio(n as i64 * k as i64, 4);
    if lam[..k].iter().any(|l| *l == lam[k]) {
        return Verdict {
            holds: true,
            lhs: lhs.to_f64(),
            rhs: f64::INFINITY,
            status: CheckStatus::InfiniteRhs,
        };
    }
    let rhs = lam[..k].iter().fold(S::zero(), |acc, l| {
        acc + l.clone() / (lam[k].clone() - l.clone())
    });
    Verdict::simple(S::leq(&lhs, &rhs), &lhs, &rhs)
}

fn yang1_run<S: Scalar>(lam: &[S], n: u32, k: usize) -> Verdict {
    extrinsic_run(lam, n, k, Rat::new(0, 1))
}

fn yang2_run<S: Scalar>(lam: &[S], n: u32, k: usize) -> Verdict {
    let lhs = lam[k].clone();
    let rhs = S::ratio((n + 4) as i64, n as i64) * S::ratio(1, k as i64) * sum(&lam[..k]);
    Verdict::simple(S::leq(&lhs, &rhs), &lhs, &rhs)
}

fn cheng_yang_upper_run<S: Scalar>(lam: &[S], n: u32, k: usize) -> Verdict {
    extrinsic_upper_run(lam, n, k, Rat::new(0, 1))
}

fn czy_run<S: Scalar>(lam: &[S], n: u32, k: usize) -> Verdict {
    let lhs = lam[k].clone() - lam[k - 1].clone();
    let coef = S::ratio(4, n as i64) * lam[0].clone();
    let inner = S::ratio((n + 4) as i64, 1);
    let holds = S::leq_sqrt_scaled_pow(&lhs, &coef, &inner, k as u64, 1, n);
    let rhs = coef.to_f64() * ((n + 4) as f64).sqrt() * (k as f64).powf(1.0 / n as f64);
    Verdict {
        holds,
        lhs: lhs.to_f64(),
        rhs,
        status: CheckStatus::Ok,
    }
}

/// Shared shape of the two Dirichlet bracket bounds:
/// `gap ≤ 2√((a·mean + shift)² − factor·variance)`.
fn dirichlet_bracket_run<S: Scalar>(
    lam: &[S],
    k: usize,
    mean_coef: S,
    shift: S,
    var_factor: S,
) -> Verdict {
    let inv_k = S::ratio(1, k as i64);
    let mean = inv_k.clone() * sum(&lam[..k]);
    let var = inv_k
        * lam[..k].iter().fold(S::zero(), |acc, l| {
            let d = l.clone() - mean.clone();
            acc + d.clone() * d
        });
    let a = mean_coef * mean + shift;
    let x = a.clone() * a - var_factor * var;
    let lhs = lam[k].clone() - lam[k - 1].clone();
    if !x.is_nonneg() {
        return Verdict::inapplicable(lhs.to_f64());
    }
    let two = S::ratio(2, 1);
    let holds = S::leq_plus_sqrt(&lam[k], &lam[k - 1], &two, &x);
    Verdict {
        holds,
        lhs: lhs.to_f64(),
        rhs: 2.0 * x.to_f64().max(0.0).sqrt(),
        status: CheckStatus::Ok,
    }
}

fn sphere_domain_run<S: Scalar>(lam: &[S], n: u32, k: usize) -> Verdict {
    dirichlet_bracket_run(
        lam,
        k,
        S::ratio(2, n as i64),
        S::ratio(n as i64, 2),
        S::ratio((n + 4) as i64, n as i64),
    )
}

fn cpn_domain_run<S: Scalar>(lam: &[S], cn: u32, k: usize) -> Verdict {
    dirichlet_bracket_run(
        lam,
        k,
        S::ratio(1, cn as i64),
        S::ratio(2 * (cn as i64 + 1), 1),
        S::ratio((cn + 2) as i64, cn as i64),
    )
}

/// `lam0[i] = λ̄_i` (closed, 0-based); requires `lam0.len() ≥ k+2`.
fn cpn_closed_gap_run<S: Scalar>(lam0: &[S], cn: u32, k: usize) -> Verdict {
    let inv = S::ratio(1, (k + 1) as i64);
    let mean = inv.clone() * sum(&lam0[1..=k]);
    let var = inv
        * lam0[1..=k].iter().fold(S::zero(), |acc, l| {
            let d = l.clone() - mean.clone();
            acc + d.clone() * d
        });
    let a = S::ratio(1, cn as i64) * mean + S::ratio(2 * (cn as i64 + 1), 1);
    let x = a.clone() * a - S::ratio((cn + 2) as i64, cn as i64) * var;
    let lhs = lam0[k + 1].clone() - lam0[k].clone();
    if !x.is_nonneg() {
        return Verdict::inapplicable(lhs.to_f64());
    }
    let two = S::ratio(2, 1);
    let holds = S::leq_plus_sqrt(&lam0[k + 1], &lam0[k], &two, &x);
    Verdict {
        holds,
        lhs: lhs.to_f64(),
        rhs: 2.0 * x.to_f64().max(0.0).sqrt(),
        status: CheckStatus::Ok,
    }
}

fn cpn_universal_run<S: Scalar>(lam0: &[S], cn: u32, k: usize) -> Verdict {
    let shift = S::ratio(2 * cn as i64 * (cn as i64 + 1), 1);
    let mut lhs = S::zero();
    let mut inner = S::zero();
    for l in &lam0[..=k] {
        let d = lam0[k + 1].clone() - l.clone();
        lhs = lhs + d.clone() * d.clone();
        inner = inner + d * (l.clone() + shift.clone());
    }
    let rhs = S::ratio(2, cn as i64) * inner;
    Verdict::simple(S::leq(&lhs, &rhs), &lhs, &rhs)
}

fn closed_minimal_run<S: Scalar>(lam0: &[S], n: u32, k: usize) -> Verdict {
    let lhs = lam0[k + 1].clone() - lam0[k].clone();
    let rhs = S::ratio(n as i64, 1)
        + S::ratio(4, n as i64 * (k + 1) as i64) * sum(&lam0[1..=k]);
    Verdict::simple(S::leq(&lhs, &rhs), &lhs, &rhs)
}

fn closed_homogeneous_run<S: Scalar>(lam0: &[S], k: usize) -> Verdict {
    let lhs = lam0[k + 1].clone() - lam0[k].clone();
    let rhs = S::ratio(4, (k + 1) as i64) * sum(&lam0[1..=k]) + lam0[1].clone();
    Verdict::simple(S::leq(&lhs, &rhs), &lhs, &rhs)
}

fn yang_yau_run<S: Scalar>(lam0: &[S], n: u32, k: usize) -> Verdict {
    let s = sum(&lam0[1..=k]);
    let coef = S::ratio(2, n as i64 * (k + 1) as i64);
    let base = S::ratio(n as i64, 1) + coef.clone() * s.clone();
    let x = s.clone() * s.clone()
        + S::ratio((n as i64 * n as i64) * (k + 1) as i64, 1) * s * lam0[1].clone();
    let shifted_base = lam0[k].clone() + base.clone();
    let holds = S::leq_plus_sqrt(&lam0[k + 1], &shifted_base, &coef, &x);
    Verdict {
        holds,
        lhs: (lam0[k + 1].clone() - lam0[k].clone()).to_f64(),
        rhs: base.to_f64() + coef.to_f64() * x.to_f64().max(0.0).sqrt(),
        status: CheckStatus::Ok,
    }
}

fn li_run<S: Scalar>(lam0: &[S], k: usize) -> Verdict {
    let s = sum(&lam0[1..=k]);
    let coef = S::ratio(2, (k + 1) as i64);
    let base = coef.clone() * s.clone() + lam0[1].clone();
    let x = s.clone() * s.clone() + S::ratio((k + 1) as i64, 1) * s * lam0[1].clone();
    let shifted_base = lam0[k].clone() + base.clone();
    let holds = S::leq_plus_sqrt(&lam0[k + 1], &shifted_base, &coef, &x);
    Verdict {
        holds,
        lhs: (lam0[k + 1].clone() - lam0[k].clone()).to_f64(),
        rhs: base.to_f64() + coef.to_f64() * x.to_f64().max(0.0).sqrt(),
        status: CheckStatus::Ok,
    }
}

fn homogeneous_bracket_run<S: Scalar>(lam0: &[S], k: usize) -> Verdict {
    let s = sum(&lam0[1..=k]);
    let b = S::ratio(4, (k + 1) as i64) * s.clone() + lam0[1].clone();
    let mean = S::ratio(1, k as i64) * s;
    let w = lam0[1..=k].iter().fold(S::zero(), |acc, l| {
        let d = l.clone() - mean.clone();
        acc + d.clone() * d
    });
    let x = b.clone() * b - S::ratio(20, (k + 1) as i64) * w;
    let lhs = lam0[k + 1].clone() - lam0[k].clone();
    if !x.is_nonneg() {
        return Verdict::inapplicable(lhs.to_f64());
    }
    let holds = S::leq_plus_sqrt(&lam0[k + 1], &lam0[k], &S::one(), &x);
    Verdict {
        holds,
        lhs: lhs.to_f64(),
        rhs: x.to_f64().max(0.0).sqrt(),
        status: CheckStatus::Ok,
    }
}

fn curvature_shift<S: Scalar>(n: u32, h2: Rat) -> S {
    S::ratio(n as i64 * n as i64 * *h2.numer(), 4 * *h2.denom())
}

fn extrinsic_run<S: Scalar>(lam: &[S], n: u32, k: usize, h2: Rat) -> Verdict {
    let shift: S = curvature_shift(n, h2);
    let mut lhs = S::zero();
    let mut inner = S::zero();
    for l in &lam[..k] {
        let d = lam[k].clone() - l.clone();
        lhs = lhs + d.clone() * d.clone();
        inner = inner + d * (l.clone() + shift.clone());
    }
    let rhs = S::ratio(4, n as i64) * inner;
    Verdict::simple(S::leq(&lhs, &rhs), &lhs, &rhs)
}

fn extrinsic_upper_run<S: Scalar>(lam: &[S], n: u32, k: usize, h2: Rat) -> Verdict {
    let shift: S = curvature_shift(n, h2);
    let lhs = lam[k].clone() + shift.clone();
    let coef = S::ratio((n + 4) as i64, n as i64) * (lam[0].clone() + shift);
    let holds = S::leq_scaled_pow(&lhs, &coef, k as u64, 2, n);
    Verdict {
        holds,
        lhs: lhs.to_f64(),
        rhs: coef.to_f64() * (k as f64).powf(2.0 / n as f64),
        status: CheckStatus::Ok,
    }
}

fn cpn_upper_run<S: Scalar>(lam0: &[S], cn: u32, k: usize) -> Verdict {
    let shift = S::ratio(2 * cn as i64 * (cn as i64 + 1), 1);
    let lhs = lam0[k + 1].clone() + shift.clone();
    let coef = S::ratio((cn + 2) as i64, cn as i64) * (lam0[1].clone() + shift);
    let holds = S::leq_scaled_pow(&lhs, &coef, (k + 1) as u64, 1, cn);
    Verdict {
        holds,
        lhs: lhs.to_f64(),
        rhs: coef.to_f64() * ((k + 1) as f64).powf(1.0 / cn as f64),
        status: CheckStatus::Ok,
    }
}

struct Ctx {
    n: u32,
    cn: u32,
    h2: Rat,
}

fn dispatch_run<S: Scalar>(id: InequalityId, vals: &[S], ctx: &Ctx, k: usize) -> Verdict {
    match id {
        InequalityId::Ppw => ppw_run(vals, ctx.n, k),
        InequalityId::Hp => hp_run(vals, ctx.n, k),
        InequalityId::Yang1 => yang1_run(vals, ctx.n, k),
        InequalityId::Yang2 => yang2_run(vals, ctx.n, k),
        InequalityId::ChengYangUpper => cheng_yang_upper_run(vals, ctx.n, k),
        InequalityId::CzyGap => czy_run(vals, ctx.n, k),
        InequalityId::SphereDomainGap => sphere_domain_run(vals, ctx.n, k),
        InequalityId::CpnDomainGap => cpn_domain_run(vals, ctx.cn, k),
        InequalityId::CpnDomainGapClosed => cpn_closed_gap_run(vals, ctx.cn, k),
        InequalityId::CpnUniversal => cpn_universal_run(vals, ctx.cn, k),
        InequalityId::ClosedMinimal => closed_minimal_run(vals, ctx.n, k),
        InequalityId::ClosedHomogeneous => closed_homogeneous_run(vals, k),
        InequalityId::YangYau => yang_yau_run(vals, ctx.n, k),
        InequalityId::Li => li_run(vals, k),
        InequalityId::HomogeneousBracket => homogeneous_bracket_run(vals, k),
        InequalityId::Extrinsic => extrinsic_run(vals, ctx.n, k, ctx.h2),
        InequalityId::ExtrinsicUpper => extrinsic_upper_run(vals, ctx.n, k, ctx.h2),
        InequalityId::CpnUpper => cpn_upper_run(vals, ctx.cn, k),
    }
}

/// Whether both sides of `id` scale identically under `λ_i → tλ_i`, so a
/// common power of π can be cancelled before exact evaluation.
fn is_homogeneous(id: InequalityId, domain: &DomainSpec) -> bool {
    match id {
        InequalityId::Ppw
        | InequalityId::Hp
        | InequalityId::Yang1
        | InequalityId::Yang2
        | InequalityId::ChengYangUpper
        | InequalityId::CzyGap
        | InequalityId::ClosedHomogeneous
        | InequalityId::Li
        | InequalityId::HomogeneousBracket => true,
        InequalityId::Extrinsic | InequalityId::ExtrinsicUpper => domain
            .mean_curvature_sq()
            .is_some_and(|h2| *h2.numer() == 0),
        _ => false,
    }
}

enum Seq {
    Exact(Vec<Exact>),
    Float(Vec<f64>),
}

fn decision_seq(spec: &Spectrum, last: usize, homogeneous: bool) -> Seq {
    if homogeneous || spec.unit.pi_exp == 0 {
        if let Some(exact) = spec.exact_upto(last) {
            return Seq::Exact(exact);
        }
    }
    Seq::Float(
        spec.values_upto(last)
            .expect("index range checked by caller"),
    )
}

/// Arithmetic that [`check`] will use for this spectrum/inequality pair.
pub fn decision_mode(spec: &Spectrum, id: InequalityId) -> ArithMode {
    match decision_seq(spec, spec.max_index().min(1), is_homogeneous(id, &spec.domain)) {
        Seq::Exact(_) => ArithMode::Exact,
        Seq::Float(_) => ArithMode::Float,
    }
}

/// Evaluate inequality `id` on `spec` at index `k`.
///
/// Dirichlet bounds compare `λ_{k+1}` against `λ_1..λ_k` (so `k ≥ 1`);
/// closed bounds use 0-based indices, and the quadratic projective bound
/// additionally admits `k = 0`.  The spectrum must certify index `k+1`.
pub fn check(spec: &Spectrum, id: InequalityId, k: usize) -> Result<InequalityReport> {
    if !applies_to(id, &spec.domain) {
        return Err(Error::Unsupported(format!(
            "inequality `{id}` does not apply to {}",
            spec.domain
        )));
    }
    let min_k = if id == InequalityId::CpnUniversal { 0 } else { 1 };
    if k < min_k {
        return Err(Error::Parameter(format!(
            "inequality `{id}` needs k ≥ {min_k}, got {k}"
        )));
    }
    if k + 1 > spec.max_index() {
        return Err(Error::Parameter(format!(
            "index {} exceeds the certified range {} of {}",
            k + 1,
            spec.max_index(),
            spec.domain
        )));
    }
    let ctx = Ctx {
        n: spec.domain.dimension(),
        cn: match spec.domain {
            DomainSpec::ProjectiveSpace { complex_dim } => complex_dim,
            _ => spec.domain.dimension(),
        },
        h2: spec.domain.mean_curvature_sq().unwrap_or(Rat::new(0, 1)),
    };
    let verdict = match decision_seq(spec, k + 1, is_homogeneous(id, &spec.domain)) {
        Seq::Exact(vals) => dispatch_run(id, &vals, &ctx, k),
        Seq::Float(vals) => dispatch_run(id, &vals, &ctx, k),
    };
    Ok(InequalityReport {
        inequality: id,
        k,
        lhs: verdict.lhs,
        rhs: verdict.rhs,
        margin: verdict.rhs - verdict.lhs,
        holds: verdict.holds,
        status: verdict.status,
    })
}

/// Evaluate `id` for every `k` in `min_k..=kmax`.
pub fn check_range(spec: &Spectrum, id: InequalityId, kmax: usize) -> Result<Vec<InequalityReport>> {
    let min_k = if id == InequalityId::CpnUniversal { 0 } else { 1 };
    (min_k..=kmax).map(|k| check(spec, id, k)).collect()
}

/// One conditional-implication failure: the quadratic bound held at `k` but
/// an implied bound did not.
#[derive(Clone, Debug, Serialize)]
pub struct ChainViolation {
    pub k: usize,
    pub implied: InequalityId,
}

/// Outcome of the implication sweep `yang1 ⇒ yang2 ⇒ hp ⇒ ppw`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub kmax: usize,
    pub checked: usize,
    pub violations: Vec<ChainViolation>,
}

/// For every `k ≤ kmax` where the quadratic bound holds, verify that the
/// mean-form, harmonic-sum, and gap bounds hold as well.  The implication is
/// pure algebra, so it is checked on any Dirichlet spectrum regardless of
/// whether the quadratic bound's own hypotheses apply.
pub fn implication_chain(spec: &Spectrum, kmax: usize) -> Result<ChainReport> {
    if spec.problem != Problem::Dirichlet {
        return Err(Error::Unsupported(
            "the implication chain is stated for Dirichlet spectra".into(),
        ));
    }
    if kmax + 1 > spec.max_index() {
        return Err(Error::Parameter(format!(
            "chain to k = {kmax} needs index {} certified, spectrum reaches {}",
            kmax + 1,
            spec.max_index()
        )));
    }
    let n = spec.domain.dimension();
    let ctx = Ctx {
        n,
        cn: n,
        h2: Rat::new(0, 1),
    };
    let mut violations = Vec::new();
    let seq = decision_seq(spec, kmax + 1, true);
    for k in 1..=kmax {
        let implied = [
            InequalityId::Yang2,
            InequalityId::Hp,
            InequalityId::Ppw,
        ];
        match &seq {
            Seq::Exact(vals) => {
                if yang1_run(vals, n, k).holds {
                    for id in implied {
                        if !dispatch_run(id, vals, &ctx, k).holds {
                            violations.push(ChainViolation { k, implied: id });
                        }
                    }
                }
            }
            Seq::Float(vals) => {
                if yang1_run(vals, n, k).holds {
                    for id in implied {
                        if !dispatch_run(id, vals, &ctx, k).holds {
                            violations.push(ChainViolation { k, implied: id });
                        }
                    }
                }
            }
        }
    }
    Ok(ChainReport {
        kmax,
        checked: kmax,
        violations,
    })
}

/// One step of the moment recursion.
#[derive(Clone, Debug, Serialize)]
pub struct RecursionStep {
    pub k: usize,
    pub c_factor: f64,
    pub h_current: f64,
    pub h_next: f64,
    pub bound: f64,
    pub hypothesis_ok: bool,
    pub holds: bool,
}

/// Outcome of the moment-recursion sweep.
#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub n: u32,
    pub kmax: usize,
    pub arithmetic: ArithMode,
    pub steps: Vec<RecursionStep>,
    pub all_hold: bool,
    pub first_hypothesis_failure: Option<usize>,
}

/// With `Γ_k` and `E_k` the first and second moments of `μ_1..μ_k` and
/// `H_k = (1+2/n)Γ_k² − E_k`, the recursion asserts
/// `H_{k+1} ≤ C(n,k)((k+1)/k)^{4/n} H_k` where
/// `C(n,k) = 1 − (1/(3n))(k/(k+1))^{4/n}(1+2/n)(1+4/n)/(k+1)³`,
/// provided the quadratic hypothesis holds at each step.
fn recursion_core<S: Scalar>(
    mu: &[S],
    n: u32,
    kmax: usize,
    pow4n: impl Fn(&S) -> S,
) -> RecursionReport {
    let mut steps: Vec<RecursionStep> = Vec::with_capacity(kmax);
    let mut first_failure = None;
    let h_of = |k: usize| -> S {
        let inv = S::ratio(1, k as i64);
        let gamma = inv.clone() * sum(&mu[..k]);
        let e = inv
            * mu[..k]
                .iter()
                .fold(S::zero(), |acc, m| acc + m.clone() * m.clone());
        S::ratio((n + 2) as i64, n as i64) * gamma.clone() * gamma - e
    };
    for k in 1..=kmax {
        let hyp = yang1_run(mu, n, k).holds;
        let h_k = h_of(k);
        let h_next = h_of(k + 1);
        let frac = S::ratio(k as i64, (k + 1) as i64);
        let kp1_cubed = ((k + 1) as i64).pow(3);
        let c = S::one()
            - S::ratio(1, 3 * n as i64)
                * pow4n(&frac)
                * S::ratio(((n + 2) * (n + 4)) as i64, (n * n) as i64)
                * S::ratio(1, kp1_cubed);
        let bound = c.clone() * pow4n(&S::ratio((k + 1) as i64, k as i64)) * h_k.clone();
        let holds = hyp && S::leq(&h_next, &bound);
        steps.push(RecursionStep {
            k,
            c_factor: c.to_f64(),
            h_current: h_k.to_f64(),
            h_next: h_next.to_f64(),
            bound: bound.to_f64(),
            hypothesis_ok: hyp,
            holds,
        });
        if !hyp {
            first_failure = Some(k);
            break;
        }
    }
    let all_hold = first_failure.is_none() && steps.iter().all(|s| s.holds);
    RecursionReport {
        n,
        kmax,
        arithmetic: S::MODE,
        steps,
        all_hold,
        first_hypothesis_failure: first_failure,
    }
}

fn validate_mu_len(len: usize, kmax: usize) -> Result<()> {
    if kmax == 0 {
        return Err(Error::Parameter("recursion needs kmax ≥ 1".into()));
    }
    if len < kmax + 1 {
        return Err(Error::Parameter(format!(
            "recursion to k = {kmax} needs {} values, got {len}",
            kmax + 1
        )));
    }
    Ok(())
}

/// Float-mode recursion sweep over positive nondecreasing `mu`.
pub fn cheng_yang_recursion_check(mu: &[f64], n: u32, kmax: usize) -> Result<RecursionReport> {
    validate_mu_len(mu.len(), kmax)?;
    if n == 0 {
        return Err(Error::Parameter("dimension must be positive".into()));
    }
    for (i, m) in mu.iter().enumerate() {
        if !m.is_finite() || *m <= 0.0 {
            return Err(Error::Parameter(format!(
                "mu must be positive and finite (violated at position {i})"
            )));
        }
    }
    for (i, w) in mu.windows(2).enumerate() {
        if w[1] < w[0] {
            return Err(Error::Parameter(format!(
                "mu must be nondecreasing (violated at position {i})"
            )));
        }
    }
    let e = 4.0 / n as f64;
    Ok(recursion_core(mu, n, kmax, |x: &f64| x.powf(e)))
}

/// Exact recursion sweep; the exponent `4/n` must be integral (n ∈ {1,2,4}).
pub fn cheng_yang_recursion_check_exact(
    mu: &[Exact],
    n: u32,
    kmax: usize,
) -> Result<RecursionReport> {
    validate_mu_len(mu.len(), kmax)?;
    if !matches!(n, 1 | 2 | 4) {
        return Err(Error::Unsupported(
            "exact recursion requires 4/n integral (n ∈ {1, 2, 4})".into(),
        ));
    }
    let zero = Exact::ratio(0, 1);
    for (i, w) in mu.windows(2).enumerate() {
        if w[0] <= zero || w[1] < w[0] {
            return Err(Error::Parameter(format!(
                "mu must be positive and nondecreasing (violated at position {i})"
            )));
        }
    }
    let e = 4 / n;
    Ok(recursion_core(mu, n, kmax, move |x: &Exact| spow(x, e)))
}

/// Actual gap and every applicable gap bound at one index.
#[derive(Clone, Debug, Serialize)]
pub struct GapBoundReport {
    pub k: usize,
    pub actual_gap: f64,
    pub bounds: BTreeMap<String, f64>,
    pub tightness: BTreeMap<String, f64>,
}

/// Per-`k` table of the actual consecutive gap and all applicable bounds,
/// with tightness ratios `bound / gap` (infinite at multiplicity ties).
/// Bounds whose radicand is negative at some `k` are omitted from that row.
pub fn gap_bound_table(spec: &Spectrum, kmax: usize) -> Result<Vec<GapBoundReport>> {
    let ids = gap_bound_ids(&spec.domain);
    let mut rows = Vec::new();
    for k in 1..=kmax {
        if k + 1 > spec.max_index() {
            return Err(Error::Parameter(format!(
                "table to k = {kmax} needs index {} certified, spectrum reaches {}",
                kmax + 1,
                spec.max_index()
            )));
        }
        let mut bounds = BTreeMap::new();
        let mut tightness = BTreeMap::new();
        let mut actual_gap = None;
        for &id in &ids {
            let report = check(spec, id, k)?;
            if report.status != CheckStatus::Ok {
                continue;
            }
            actual_gap.get_or_insert(report.lhs);
            bounds.insert(id.token().to_string(), report.rhs);
            let ratio = if report.lhs == 0.0 {
                f64::INFINITY
            } else {
                report.rhs / report.lhs
            };
            tightness.insert(id.token().to_string(), ratio);
        }
        let actual_gap = actual_gap.unwrap_or_else(|| {
            spec.gap(k).unwrap_or(f64::NAN)
        });
        rows.push(GapBoundReport {
            k,
            actual_gap,
            bounds,
            tightness,
        });
    }
    Ok(rows)
}

/// Float-mode comparison with the reporting tolerance, for callers checking
/// reported values rather than re-deriving them.
pub fn float_holds(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + FLOAT_RTOL * rhs.abs().max(1.0)
}
