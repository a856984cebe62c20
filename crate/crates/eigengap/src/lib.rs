//! Explicit Laplace spectra and universal eigenvalue-gap bounds.
//!
//! This crate generates Dirichlet and closed Laplace spectra for model domains
//! (intervals, boxes, two special triangles, balls) and model manifolds
//! (spheres, hemispheres, flat tori, the Clifford torus, complex projective
//! space), then evaluates the classical universal inequalities that constrain
//! consecutive eigenvalues: Payne–Pólya–Weinberger, Hile–Protter, the two Yang
//! inequalities, and the gap bounds of Cheng–Yang type for Euclidean domains,
//! sphere domains, minimal submanifolds of spheres, homogeneous spaces, and
//! complex projective space.
//!
//! # Exact arithmetic
//!
//! Wherever a model spectrum is explicit, eigenvalues have the form
//! `unit · label` with an integer `label` and a common scalar
//! `unit = (p/q) · π^e`.  Every evaluator in [`ineq`] and [`conjecture`] is
//! generic over the scalar type through the [`scalar::Scalar`] trait, so one
//! implementation serves two modes:
//!
//! * **exact**: labels promoted to [`BigRational`]; verdicts are decided by
//!   integer arithmetic (radicals and k-th roots are compared by squaring or
//!   raising to the q-th power), so they are reproducible bit for bit;
//! * **float**: `f64` evaluation with a relative tolerance of `1e-9`, used
//!   for Bessel-based spectra (balls) and forced-float runs.
//!
//! Homogeneous bounds are decided on labels directly (the `π^e` factor cancels).
//! Inhomogeneous bounds, which mix eigenvalues with dimensional constants, are
//! decided exactly only when `e = 0`, which holds for every curved model
//! manifold here; otherwise they fall back to floats.
//!
//! # Modules
//!
//! * [`spectrum`]: spectrum and domain types, JSON/CSV serialization;
//! * [`generate`]: certified spectrum generators and the Weyl-law predictor;
//! * [`specfun`]: Bessel functions `J_p`, their zeros, and the
//!   first-eigenvalue ratio of the unit ball;
//! * [`ineq`]: universal inequalities, the implication chain, per-gap bound
//!   tables, and the eigenvalue recursion bound;
//! * [`conjecture`]: shape coefficients, gap-growth conjecture checks,
//!   square/cube gap propositions, reference gap constants, and parameter
//!   scans searching for counterexamples.

pub mod conjecture;
pub mod error;
pub mod generate;
pub mod ineq;
pub mod scalar;
pub mod specfun;
pub mod spectrum;

pub use error::Error;

/// Exact scalar used by the rational evaluation mode.
pub type Exact = num_rational::BigRational;

/// Small exact rational for domain parameters and spectrum units.
pub type Rat = num_rational::Ratio<i64>;

/// Result alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;
