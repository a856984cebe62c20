//! Scalar abstraction over the two evaluation modes.
//!
//! Every inequality and conjecture evaluator is written once, generic over
//! [`Scalar`], and instantiated at two types:
//!
//! * [`f64`]: float mode; a comparison `lhs ≤ rhs` passes with a relative
//!   tolerance of `1e-9` in `rhs`;
//! * [`crate::Exact`] (arbitrary-precision rationals): exact mode; bounds
//!   involving square roots or `k`-th roots are decided without rounding by
//!   clearing radicals: `a ≤ b + c√X` by sign analysis and squaring, and
//!   `a ≤ c·k^{p/q}` by comparing `a^q ≤ c^q k^p`.
//!
//! The decision procedures assume the nonnegativity preconditions documented
//! on each method; callers establish them (they hold structurally for every
//! bound in this crate, and radicands are sign-checked before use).

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Relative tolerance for float-mode comparisons.
pub const FLOAT_RTOL: f64 = 1e-9;

/// Which arithmetic decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithMode {
    Exact,
    Float,
}

impl std::fmt::Display for ArithMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArithMode::Exact => write!(f, "exact"),
            ArithMode::Float => write!(f, "float"),
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: ArithMode;

    fn from_u64(v: u64) -> Self;

    /// Small exact rational constant; `den` must be positive.
    fn ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn is_nonneg(&self) -> bool;

    /// `lhs ≤ rhs`, with the mode's tolerance.
    fn leq(lhs: &Self, rhs: &Self) -> bool;

    /// `lhs ≤ base + coef·√radicand`; requires `coef ≥ 0`, `radicand ≥ 0`.
    fn leq_plus_sqrt(lhs: &Self, base: &Self, coef: &Self, radicand: &Self) -> bool {
        let t = lhs.clone() - base.clone();
        if !t.is_nonneg() {
            return true;
        }
        Self::leq_sq(&t, &(coef.clone() * coef.clone() * radicand.clone()))
    }

    /// `lhs ≤ coef · k^{p/q}`; requires `coef ≥ 0`, `k ≥ 1`, `q ≥ 1`.
    fn leq_scaled_pow(lhs: &Self, coef: &Self, k: u64, p: u32, q: u32) -> bool;

    /// `lhs ≤ coef · √inner · k^{p/q}`; requires `coef, inner ≥ 0`.
    fn leq_sqrt_scaled_pow(lhs: &Self, coef: &Self, inner: &Self, k: u64, p: u32, q: u32) -> bool;

    /// `lhs ≤ rhs` where both sides are squares of nonnegative quantities
    /// (no tolerance relaxation beyond the mode's own).
    fn leq_sq(lhs_sqrt: &Self, rhs_sq: &Self) -> bool {
        Self::leq(&(lhs_sqrt.clone() * lhs_sqrt.clone()), rhs_sq)
    }
}

impl Scalar for f64 {
    const MODE: ArithMode = ArithMode::Float;

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        debug_assert!(den > 0);
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_nonneg(&self) -> bool {
        *self >= 0.0
    }

    fn leq(lhs: &Self, rhs: &Self) -> bool {
        *lhs <= *rhs + FLOAT_RTOL * rhs.abs().max(1.0)
    }

    fn leq_plus_sqrt(lhs: &Self, base: &Self, coef: &Self, radicand: &Self) -> bool {
        Self::leq(lhs, &(base + coef * radicand.max(0.0).sqrt()))
    }

    fn leq_scaled_pow(lhs: &Self, coef: &Self, k: u64, p: u32, q: u32) -> bool {
        Self::leq(lhs, &(coef * (k as f64).powf(p as f64 / q as f64)))
    }

    fn leq_sqrt_scaled_pow(lhs: &Self, coef: &Self, inner: &Self, k: u64, p: u32, q: u32) -> bool {
        let rhs = coef * inner.max(0.0).sqrt() * (k as f64).powf(p as f64 / q as f64);
        Self::leq(lhs, &rhs)
    }
}

fn big_pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

impl Scalar for BigRational {
    const MODE: ArithMode = ArithMode::Exact;

    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(v.into())
    }

    fn ratio(num: i64, den: i64) -> Self {
        debug_assert!(den > 0);
        BigRational::new(num.into(), den.into())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }

    fn leq(lhs: &Self, rhs: &Self) -> bool {
        lhs <= rhs
    }

    fn leq_scaled_pow(lhs: &Self, coef: &Self, k: u64, p: u32, q: u32) -> bool {
        debug_assert!(coef.is_nonneg() && k >= 1 && q >= 1);
        if !lhs.is_nonneg() {
            return true;
        }
        let k_pow = BigRational::from_integer(num_traits::pow(
            num_bigint::BigInt::from(k),
            p as usize,
        ));
        big_pow(lhs, q) <= big_pow(coef, q) * k_pow
    }

    fn leq_sqrt_scaled_pow(lhs: &Self, coef: &Self, inner: &Self, k: u64, p: u32, q: u32) -> bool {
        debug_assert!(coef.is_nonneg() && inner.is_nonneg() && k >= 1 && q >= 1);
        if !lhs.is_nonneg() {
            return true;
        }
        let k_pow = BigRational::from_integer(num_traits::pow(
            num_bigint::BigInt::from(k),
            2 * p as usize,
        ));
        big_pow(lhs, 2 * q) <= big_pow(coef, 2 * q) * big_pow(inner, q) * k_pow
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;

    fn ex(num: i64, den: i64) -> Exact {
        Exact::ratio(num, den)
    }

    #[test]
    fn exact_sqrt_bound_is_decided_by_squaring() {
        // 3 ≤ 1 + 1·√4 holds with equality; 3 ≤ 1 + 1·√3.99 fails.
        assert!(Exact::leq_plus_sqrt(&ex(3, 1), &ex(1, 1), &ex(1, 1), &ex(4, 1)));
        assert!(!Exact::leq_plus_sqrt(
            &ex(3, 1),
            &ex(1, 1),
            &ex(1, 1),
            &ex(399, 100)
        ));
        // A nonpositive gap is below any admissible right-hand side.
        assert!(Exact::leq_plus_sqrt(&ex(-1, 2), &ex(0, 1), &ex(0, 1), &ex(0, 1)));
    }

    #[test]
    fn exact_root_bound_matches_float_far_from_ties() {
        // 5 ≤ 2·k^{1/2} first holds at k = 7 (2√7 ≈ 5.29).
        for k in 1..=10u64 {
            let exact = Exact::leq_scaled_pow(&ex(5, 1), &ex(2, 1), k, 1, 2);
            let float = f64::leq_scaled_pow(&5.0, &2.0, k, 1, 2);
            assert_eq!(exact, k >= 7);
            assert_eq!(exact, float, "k={k}");
        }
    }

    #[test]
    fn exact_equality_cases_hold_without_tolerance() {
        // 4 ≤ 1·√16 · 1 and 9 ≤ 9·k^{0/1}.
        assert!(Exact::leq_sqrt_scaled_pow(&ex(4, 1), &ex(1, 1), &ex(16, 1), 1, 1, 2));
        assert!(!Exact::leq_sqrt_scaled_pow(
            &ex(4, 1),
            &ex(1, 1),
            &ex(1599, 100),
            1,
            1,
            2
        ));
        assert!(Exact::leq(&ex(9, 1), &ex(9, 1)));
        assert!(!Exact::leq(&ex(9_000_000_000_001, 1_000_000_000_000), &ex(9, 1)));
    }

    #[test]
    fn float_mode_tolerates_representation_noise() {
        let lhs = 0.1 + 0.2;
        assert!(f64::leq(&lhs, &0.3));
    }

    #[test]
    fn mixed_root_bound_scales_with_k() {
        // gap ≤ c√d·k^{1/3} with c=2, d=3: rhs ≈ 3.464·k^{1/3}.
        for k in 1..=30u64 {
            let exact = Exact::leq_sqrt_scaled_pow(&ex(7, 1), &ex(2, 1), &ex(3, 1), k, 1, 3);
            let float = f64::leq_sqrt_scaled_pow(&7.0, &2.0, &3.0, k, 1, 3);
            assert_eq!(exact, float, "k={k}");
        }
    }
}
