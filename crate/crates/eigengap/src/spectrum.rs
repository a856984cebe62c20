//! Spectrum and domain types, with exact units and pinned serialization.
//!
//! A spectrum stores merged eigenvalue entries `(value, label, mult)` in
//! ascending order together with a scale `unit = (num/den)·π^e`.  Whenever a
//! model spectrum is explicit, `value = unit × label` holds exactly with an
//! integer label, so downstream checks can run in rational arithmetic on
//! labels alone; Bessel-based spectra carry `label = None` and are evaluated
//! in floats.
//!
//! Domain lengths are exact scalars `(p/q)·π^e` with `e ∈ {0, 1}`: rational
//! lengths give spectra in units of `π²`, while π-scaled lengths (a torus
//! with sides `2π`, a box with side `π`) give pure rational spectra.
//!
//! Indexing follows the usual conventions: Dirichlet eigenvalues are 1-based
//! (`λ_1` is the ground state), closed eigenvalues are 0-based with
//! `λ̄_0 = 0` of multiplicity one.

use crate::error::Error;
use crate::{Exact, Rat, Result};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// Eigenvalue problem solved on the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Dirichlet,
    Closed,
}

/// Exact length `(num/den)·π^pi_exp` with `pi_exp ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Length {
    pub coeff: Rat,
    pub pi_exp: u8,
}

impl Length {
    /// Rational length `num/den`.
    pub fn of(num: i64, den: i64) -> Self {
        Length {
            coeff: Rat::new(num, den),
            pi_exp: 0,
        }
    }

    /// π-scaled length `(num/den)·π`.
    pub fn pi_of(num: i64, den: i64) -> Self {
        Length {
            coeff: Rat::new(num, den),
            pi_exp: 1,
        }
    }

    pub fn rational(r: Rat) -> Self {
        Length { coeff: r, pi_exp: 0 }
    }

    pub fn value(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_exp as i32)
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let suffix = if self.pi_exp == 1 { "pi" } else { "" };
        if *self.coeff.denom() == 1 {
            if self.pi_exp == 1 && *self.coeff.numer() == 1 {
                return write!(f, "pi");
            }
            write!(f, "{}{}", self.coeff.numer(), suffix)
        } else {
            write!(f, "{}/{}{}", self.coeff.numer(), self.coeff.denom(), suffix)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    num: i64,
    den: i64,
    pi_exp: i32,
}

impl Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TripleRepr {
            num: *self.coeff.numer(),
            den: *self.coeff.denom(),
            pi_exp: self.pi_exp as i32,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TripleRepr::deserialize(d)?;
        if repr.den == 0 {
            return Err(serde::de::Error::custom("length with zero denominator"));
        }
        if !matches!(repr.pi_exp, 0 | 1) {
            return Err(serde::de::Error::custom("length pi_exp must be 0 or 1"));
        }
        Ok(Length {
            coeff: Rat::new(repr.num, repr.den),
            pi_exp: repr.pi_exp as u8,
        })
    }
}

/// Exact scalar `(num/den)·π^pi_exp` relating integer labels to eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleUnit {
    pub coeff: Rat,
    pub pi_exp: i32,
}

impl ScaleUnit {
    pub fn one() -> Self {
        ScaleUnit {
            coeff: Rat::new(1, 1),
            pi_exp: 0,
        }
    }

    pub fn new(coeff: Rat, pi_exp: i32) -> Self {
        ScaleUnit { coeff, pi_exp }
    }

    /// Numerical value of the unit.
    pub fn value(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_exp)
    }

    /// The rational coefficient as an arbitrary-precision rational.
    pub fn coeff_big(&self) -> Exact {
        Exact::new((*self.coeff.numer()).into(), (*self.coeff.denom()).into())
    }
}

impl Serialize for ScaleUnit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TripleRepr {
            num: *self.coeff.numer(),
            den: *self.coeff.denom(),
            pi_exp: self.pi_exp,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScaleUnit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TripleRepr::deserialize(d)?;
        if repr.den == 0 {
            return Err(serde::de::Error::custom("unit with zero denominator"));
        }
        Ok(ScaleUnit {
            coeff: Rat::new(repr.num, repr.den),
            pi_exp: repr.pi_exp,
        })
    }
}

/// Model domain or manifold whose Laplace spectrum is explicit.
///
/// The problem type is determined by the kind: bounded Euclidean domains and
/// the hemisphere carry Dirichlet conditions, closed manifolds have no
/// boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    Interval { length: Length },
    Box { sides: Vec<Length> },
    /// Equilateral triangle, parameterized by its diameter (= side length).
    TriangleEquilateral { diameter: Length },
    /// Right isosceles triangle with two legs of the given length.
    TriangleRightIsosceles { leg: Length },
    Ball { dim: u32, radius: Length },
    /// Open hemisphere of the unit round two-sphere (Dirichlet on the equator).
    Hemisphere,
    /// Unit round sphere `S^dim(1)`.
    Sphere { dim: u32 },
    /// Flat torus `ℝ^n / (L_1ℤ × … × L_nℤ)`.
    FlatTorus { sides: Vec<Length> },
    /// Minimal Clifford torus `S¹(1/√2) × S¹(1/√2) ⊂ S³(1)`.
    CliffordTorus,
    /// Complex projective space with the Fubini–Study metric normalized so
    /// the holomorphic sectional curvature is 4.
    ProjectiveSpace { complex_dim: u32 },
}

impl DomainSpec {
    pub fn interval(length: Length) -> Self {
        DomainSpec::Interval { length }
    }

    pub fn rect(a: Length, b: Length) -> Self {
        DomainSpec::Box { sides: vec![a, b] }
    }

    pub fn square(side: Length) -> Self {
        DomainSpec::rect(side, side)
    }

    pub fn cube(side: Length) -> Self {
        DomainSpec::Box {
            sides: vec![side, side, side],
        }
    }

    /// Eigenvalue problem this domain carries.
    pub fn problem(&self) -> Problem {
        match self {
            DomainSpec::Sphere { .. }
            | DomainSpec::FlatTorus { .. }
            | DomainSpec::CliffordTorus
            | DomainSpec::ProjectiveSpace { .. } => Problem::Closed,
            _ => Problem::Dirichlet,
        }
    }

    /// Real dimension of the domain or manifold.
    pub fn dimension(&self) -> u32 {
        match self {
            DomainSpec::Interval { .. } => 1,
            DomainSpec::Box { sides } => sides.len() as u32,
            DomainSpec::TriangleEquilateral { .. }
            | DomainSpec::TriangleRightIsosceles { .. }
            | DomainSpec::Hemisphere
            | DomainSpec::CliffordTorus => 2,
            DomainSpec::Ball { dim, .. } => *dim,
            DomainSpec::Sphere { dim } => *dim,
            DomainSpec::FlatTorus { sides } => sides.len() as u32,
            DomainSpec::ProjectiveSpace { complex_dim } => 2 * complex_dim,
        }
    }

    /// Whether this is a bounded Euclidean domain (the setting of the
    /// Payne–Pólya–Weinberger, Hile–Protter, and Yang inequalities).
    pub fn is_euclidean(&self) -> bool {
        matches!(
            self,
            DomainSpec::Interval { .. }
                | DomainSpec::Box { .. }
                | DomainSpec::TriangleEquilateral { .. }
                | DomainSpec::TriangleRightIsosceles { .. }
                | DomainSpec::Ball { .. }
        )
    }

    /// Squared mean-curvature norm of the ambient isometric immersion used by
    /// the extrinsic Dirichlet bound: `0` for Euclidean domains, `1` for the
    /// hemisphere viewed inside `S² ⊂ ℝ³`.
    pub fn mean_curvature_sq(&self) -> Option<Rat> {
        match self {
            d if d.is_euclidean() => Some(Rat::new(0, 1)),
            DomainSpec::Hemisphere => Some(Rat::new(1, 1)),
            _ => None,
        }
    }

    /// Volume (length/area as appropriate) of Dirichlet domains, for the
    /// Weyl-law predictor.
    pub fn volume(&self) -> Option<f64> {
        match self {
            DomainSpec::Interval { length } => Some(length.value()),
            DomainSpec::Box { sides } => Some(sides.iter().map(|s| s.value()).product()),
            DomainSpec::TriangleEquilateral { diameter } => {
                let d = diameter.value();
                Some(3f64.sqrt() / 4.0 * d * d)
            }
            DomainSpec::TriangleRightIsosceles { leg } => {
                let d = leg.value();
                Some(0.5 * d * d)
            }
            DomainSpec::Ball { dim, radius } => {
                let r = radius.value();
                let omega = match dim {
                    2 => std::f64::consts::PI,
                    3 => 4.0 / 3.0 * std::f64::consts::PI,
                    _ => return None,
                };
                Some(omega * r.powi(*dim as i32))
            }
            DomainSpec::Hemisphere => Some(2.0 * std::f64::consts::PI),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |l: &Length, what: &str| -> Result<()> {
            if l.coeff.is_positive() && l.pi_exp <= 1 {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{what} must be positive, got {l}")))
            }
        };
        let uniform = |sides: &[Length]| -> Result<()> {
            if sides.is_empty() || sides.len() > 8 {
                return Err(Error::Parameter(format!(
                    "between 1 and 8 side lengths required, got {}",
                    sides.len()
                )));
            }
            for s in sides {
                positive(s, "side length")?;
            }
            if sides.iter().any(|s| s.pi_exp != sides[0].pi_exp) {
                return Err(Error::Parameter(
                    "sides must be uniformly rational or uniformly π-scaled".into(),
                ));
            }
            Ok(())
        };
        match self {
            DomainSpec::Interval { length } => positive(length, "interval length"),
            DomainSpec::Box { sides } | DomainSpec::FlatTorus { sides } => uniform(sides),
            DomainSpec::TriangleEquilateral { diameter } => positive(diameter, "diameter"),
            DomainSpec::TriangleRightIsosceles { leg } => positive(leg, "leg length"),
            DomainSpec::Ball { dim, radius } => {
                if !matches!(dim, 2 | 3) {
                    return Err(Error::Parameter(format!(
                        "ball spectra are implemented for dimensions 2 and 3, got {dim}"
                    )));
                }
                positive(radius, "radius")
            }
            DomainSpec::Hemisphere | DomainSpec::CliffordTorus => Ok(()),
            DomainSpec::Sphere { dim } => {
                if *dim == 0 || *dim > 16 {
                    return Err(Error::Parameter(format!(
                        "sphere dimension must be in 1..=16, got {dim}"
                    )));
                }
                Ok(())
            }
            DomainSpec::ProjectiveSpace { complex_dim } => {
                if *complex_dim == 0 || *complex_dim > 8 {
                    return Err(Error::Parameter(format!(
                        "complex dimension must be in 1..=8, got {complex_dim}"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl std::fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomainSpec::Interval { length } => write!(f, "interval({length})"),
            DomainSpec::Box { sides } => {
                let parts: Vec<String> = sides.iter().map(|s| s.to_string()).collect();
                write!(f, "box({})", parts.join(","))
            }
            DomainSpec::TriangleEquilateral { diameter } => write!(f, "tri-eq(D={diameter})"),
            DomainSpec::TriangleRightIsosceles { leg } => write!(f, "tri-ri(d={leg})"),
            DomainSpec::Ball { dim, radius } => write!(f, "ball(n={dim},R={radius})"),
            DomainSpec::Hemisphere => write!(f, "hemisphere"),
            DomainSpec::Sphere { dim } => write!(f, "sphere(n={dim})"),
            DomainSpec::FlatTorus { sides } => {
                let parts: Vec<String> = sides.iter().map(|s| s.to_string()).collect();
                write!(f, "torus({})", parts.join(","))
            }
            DomainSpec::CliffordTorus => write!(f, "clifford"),
            DomainSpec::ProjectiveSpace { complex_dim } => write!(f, "cpn(n={complex_dim})"),
        }
    }
}

/// One merged spectrum entry: an eigenvalue with its multiplicity and, when
/// the spectrum is explicit, its integer label (`value = unit × label`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub label: Option<u64>,
    pub mult: u32,
}

/// A certified initial segment of a Laplace spectrum.
///
/// `guaranteed_count` is the number of eigenvalues, counted with
/// multiplicity, that the generator proved complete: every eigenvalue of the
/// model up to the last stored value appears, with its full multiplicity.
/// For Dirichlet problems the certified indices are `1..=guaranteed_count`;
/// for closed problems they are `0..guaranteed_count` (including `λ̄_0 = 0`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub domain: DomainSpec,
    pub problem: Problem,
    pub unit: ScaleUnit,
    pub entries: Vec<SpectrumEntry>,
    pub guaranteed_count: usize,
}

impl Spectrum {
    /// Total stored eigenvalue count (with multiplicity).
    pub fn total_mult(&self) -> usize {
        self.entries.iter().map(|e| e.mult as usize).sum()
    }

    /// Highest certified eigenvalue index in this problem's convention.
    pub fn max_index(&self) -> usize {
        match self.problem {
            Problem::Dirichlet => self.guaranteed_count,
            Problem::Closed => self.guaranteed_count.saturating_sub(1),
        }
    }

    fn offset(&self, index: usize) -> Option<usize> {
        match self.problem {
            Problem::Dirichlet => index.checked_sub(1),
            Problem::Closed => Some(index),
        }
    }

    /// Eigenvalue `λ_index` (Dirichlet, 1-based) or `λ̄_index` (closed,
    /// 0-based), if certified.
    pub fn value_at(&self, index: usize) -> Option<f64> {
        if index > self.max_index() {
            return None;
        }
        let mut rem = self.offset(index)?;
        for e in &self.entries {
            if rem < e.mult as usize {
                return Some(e.value);
            }
            rem -= e.mult as usize;
        }
        None
    }

    /// Eigenvalues up to index `last` inclusive, expanded with multiplicity.
    /// Dirichlet: `[λ_1, …, λ_last]`; closed: `[λ̄_0, …, λ̄_last]`.
    pub fn values_upto(&self, last: usize) -> Option<Vec<f64>> {
        if last > self.max_index() {
            return None;
        }
        let need = self.offset(last)? + 1;
        let mut out = Vec::with_capacity(need);
        'outer: for e in &self.entries {
            for _ in 0..e.mult {
                out.push(e.value);
                if out.len() == need {
                    break 'outer;
                }
            }
        }
        (out.len() == need).then_some(out)
    }

    /// Exact eigenvalues `label · coeff` up to index `last` inclusive, in
    /// units of `π^pi_exp`; `None` when any required label is missing.
    pub fn exact_upto(&self, last: usize) -> Option<Vec<Exact>> {
        if last > self.max_index() {
            return None;
        }
        let need = self.offset(last)? + 1;
        let coeff = self.unit.coeff_big();
        let mut out = Vec::with_capacity(need);
        'outer: for e in &self.entries {
            let label = e.label?;
            let exact = Exact::from_integer(label.into()) * coeff.clone();
            for _ in 0..e.mult {
                out.push(exact.clone());
                if out.len() == need {
                    break 'outer;
                }
            }
        }
        (out.len() == need).then_some(out)
    }

    /// Consecutive gap `λ_{k+1} - λ_k` in the problem's indexing.
    pub fn gap(&self, k: usize) -> Option<f64> {
        Some(self.value_at(k + 1)? - self.value_at(k)?)
    }

    /// Serialize to the pinned JSON schema.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Parse from JSON and check structural invariants.
    pub fn from_json(text: &str) -> Result<Spectrum> {
        let spec: Spectrum = serde_json::from_str(text)?;
        spec.check_invariants()?;
        Ok(spec)
    }

    /// CSV export: `index,value,label,mult`, one row per merged entry, where
    /// `index` is the entry's first eigenvalue index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value,label,mult\n");
        let mut index = match self.problem {
            Problem::Dirichlet => 1usize,
            Problem::Closed => 0usize,
        };
        for e in &self.entries {
            let label = e.label.map(|l| l.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", index, e.value, label, e.mult));
            index += e.mult as usize;
        }
        out
    }

    /// Structural invariants: ascending positive values (a closed spectrum
    /// starts at exactly zero with multiplicity one), positive
    /// multiplicities, label/unit consistency, and a guarantee covered by
    /// the stored entries.
    pub fn check_invariants(&self) -> Result<()> {
        self.domain.validate()?;
        if self.domain.problem() != self.problem {
            return Err(Error::Parameter(format!(
                "domain {} carries a {:?} problem, spectrum claims {:?}",
                self.domain,
                self.domain.problem(),
                self.problem
            )));
        }
        if self.entries.is_empty() {
            return Err(Error::Parameter("spectrum has no entries".into()));
        }
        if self.guaranteed_count == 0 || self.guaranteed_count > self.total_mult() {
            return Err(Error::Parameter(format!(
                "guaranteed_count {} not covered by stored multiplicities {}",
                self.guaranteed_count,
                self.total_mult()
            )));
        }
        let unit_value = self.unit.value();
        for (i, e) in self.entries.iter().enumerate() {
            if e.mult == 0 {
                return Err(Error::Parameter(format!("entry {i} has multiplicity 0")));
            }
            let first_closed = i == 0 && self.problem == Problem::Closed;
            if first_closed {
                if e.value != 0.0 || e.mult != 1 {
                    return Err(Error::Parameter(
                        "closed spectrum must start with eigenvalue 0 of multiplicity 1".into(),
                    ));
                }
            } else if e.value <= 0.0 {
                return Err(Error::Parameter(format!(
                    "eigenvalue at entry {i} is not positive: {}",
                    e.value
                )));
            }
            if i > 0 && e.value <= self.entries[i - 1].value {
                return Err(Error::Parameter(format!(
                    "entries not strictly ascending at {i}"
                )));
            }
            if let Some(label) = e.label {
                let expect = label as f64 * unit_value;
                let scale = e.value.abs().max(unit_value.abs());
                if (e.value - expect).abs() > 1e-12 * scale.max(1e-300) {
                    return Err(Error::Parameter(format!(
                        "label {label} × unit does not reproduce value {} at entry {i}",
                        e.value
                    )));
                }
            }
        }
        Ok(())
    }
}
