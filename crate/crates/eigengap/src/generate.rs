//! Certified generators for explicit model spectra.
//!
//! Each generator produces an initial segment of the Laplace spectrum that is
//! provably complete: nothing below the last returned eigenvalue is missing,
//! and every stored multiplicity is full.  Lattice-type spectra (boxes,
//! tori, the two integrable triangles, the Clifford torus) are enumerated
//! exhaustively below a cutoff `Λ`, chosen as a Weyl-law prediction times a
//! safety factor and doubled until the segment covers the requested index
//! range.  Level-type spectra (spheres, hemisphere, complex projective
//! spaces) are walked level by level with closed-form multiplicities, and
//! ball spectra enumerate Bessel zeros `j_{p,m} ≤ R√Λ` order by order, which
//! is exhaustive because the first zero `j_{p,1}` increases with the order.
//!
//! Lattice labels are canonicalized: for a box with sides `s_j = (p_j/q_j)
//! π^e`, the eigenvalues are `π^{2-2e} (g/M)² Σ (c_j k_j)²` with
//! `M = lcm(p_j)`, `c_j = q_j M / (p_j g)`, and `g` the common divisor making
//! the `c_j` coprime, so rescaling all sides by a rational factor leaves the
//! integer labels unchanged and only moves the unit.

use crate::error::Error;
use crate::specfun;
use crate::spectrum::{DomainSpec, Length, Problem, ScaleUnit, Spectrum, SpectrumEntry};
use crate::{Rat, Result};
use num_integer::Integer;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Resource limits for certified enumeration.
#[derive(Clone, Debug)]
pub struct EnumerationBudget {
    /// Multiplier applied to the Weyl-law cutoff prediction before the first
    /// enumeration pass.
    pub safety_factor: f64,
    /// Maximum number of times the cutoff may be doubled.
    pub max_refinements: u32,
    /// Maximum lattice points visited in a single enumeration pass.
    pub max_candidates: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            safety_factor: 2.0,
            max_refinements: 40,
            max_candidates: 50_000_000,
        }
    }
}

/// Generate the spectrum of `domain` certified through eigenvalue index
/// `count` (1-based for Dirichlet problems, 0-based for closed ones, so a
/// closed spectrum contains `count + 1` eigenvalues including `λ̄_0 = 0`).
pub fn spectrum(domain: &DomainSpec, count: usize) -> Result<Spectrum> {
    spectrum_with_budget(domain, count, &EnumerationBudget::default())
}

/// [`spectrum`] with explicit resource limits.
pub fn spectrum_with_budget(
    domain: &DomainSpec,
    count: usize,
    budget: &EnumerationBudget,
) -> Result<Spectrum> {
    domain.validate()?;
    if count == 0 {
        return Err(Error::Parameter(
            "at least one eigenvalue index is required".into(),
        ));
    }
    match domain {
        DomainSpec::Interval { length } => interval_spectrum(domain, *length, count, budget),
        DomainSpec::Box { sides } => lattice_spectrum(domain, sides, count, budget, false),
        DomainSpec::FlatTorus { sides } => lattice_spectrum(domain, sides, count, budget, true),
        DomainSpec::TriangleEquilateral { diameter } => {
            triangle_spectrum(domain, *diameter, count, budget, true)
        }
        DomainSpec::TriangleRightIsosceles { leg } => {
            triangle_spectrum(domain, *leg, count, budget, false)
        }
        DomainSpec::Ball { dim, radius } => ball_spectrum(domain, *dim, *radius, count, budget),
        DomainSpec::Hemisphere => hemisphere_spectrum(domain, count),
        DomainSpec::Sphere { dim } => sphere_spectrum(domain, *dim, count),
        DomainSpec::CliffordTorus => clifford_spectrum(domain, count, budget),
        DomainSpec::ProjectiveSpace { complex_dim } => cpn_spectrum(domain, *complex_dim, count),
    }
}

/// Weyl-law prediction `λ_k ≈ 4π² (k / (ω_n V))^{2/n}` for Dirichlet
/// domains, where `ω_n` is the unit-ball volume and `V` the domain volume.
pub fn weyl_prediction(domain: &DomainSpec, k: usize) -> Result<f64> {
    domain.validate()?;
    if k == 0 {
        return Err(Error::Parameter("Weyl prediction needs k ≥ 1".into()));
    }
    if domain.problem() != Problem::Dirichlet {
        return Err(Error::Unsupported(
            "the Weyl-law predictor covers Dirichlet domains".into(),
        ));
    }
    let volume = domain
        .volume()
        .ok_or_else(|| Error::Unsupported("domain volume is not implemented".into()))?;
    let value = weyl_like(domain.dimension(), volume, k);
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Numeric("Weyl prediction is not finite".into()))
    }
}

fn weyl_like(n: u32, volume: f64, k: usize) -> f64 {
    let omega = PI.powf(n as f64 / 2.0)
        / specfun::gamma(n as f64 / 2.0 + 1.0).unwrap_or(f64::INFINITY);
    4.0 * PI * PI * (k as f64 / (omega * volume)).powf(2.0 / n as f64)
}

struct Counter {
    left: u64,
}

impl Counter {
    fn new(max: u64) -> Self {
        Counter { left: max }
    }

    fn spend(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::Budget(
                "enumeration exceeded the candidate budget".into(),
            ));
        }
        self.left -= 1;
        Ok(())
    }
}

fn label_overflow() -> Error {
    Error::Numeric("eigenvalue label exceeds the integer range".into())
}

/// Walk `map` (label → multiplicity) in ascending order, keeping entries
/// until at least `need` eigenvalues are covered.
fn assemble_labeled(
    domain: &DomainSpec,
    unit: ScaleUnit,
    map: &BTreeMap<u64, u64>,
    need: usize,
) -> Result<Spectrum> {
    let unit_value = unit.value();
    let mut entries = Vec::new();
    let mut cum = 0usize;
    for (&label, &mult) in map {
        if cum >= need {
            break;
        }
        let mult = u32::try_from(mult)
            .map_err(|_| Error::Numeric("eigenvalue multiplicity exceeds u32 range".into()))?;
        entries.push(SpectrumEntry {
            value: label as f64 * unit_value,
            label: Some(label),
            mult,
        });
        cum += mult as usize;
    }
    let spectrum = Spectrum {
        domain: domain.clone(),
        problem: domain.problem(),
        unit,
        entries,
        guaranteed_count: cum,
    };
    spectrum.check_invariants()?;
    Ok(spectrum)
}

/// Certification loop for lattice-type spectra: enumerate all labels up to
/// `⌊Λ / unit⌋`, doubling `Λ` until `need` eigenvalues are covered.
fn certify_labeled<F>(
    domain: &DomainSpec,
    unit: ScaleUnit,
    need: usize,
    initial_lambda: f64,
    budget: &EnumerationBudget,
    mut enumerate: F,
) -> Result<Spectrum>
where
    F: FnMut(u64, &mut Counter) -> Result<BTreeMap<u64, u64>>,
{
    let unit_value = unit.value();
    if !(unit_value > 0.0 && unit_value.is_finite()) {
        return Err(Error::Numeric("scale unit must be positive".into()));
    }
    let mut lambda = if initial_lambda.is_finite() && initial_lambda > 0.0 {
        initial_lambda.max(unit_value)
    } else {
        unit_value
    };
    for _ in 0..=budget.max_refinements {
        let bound = (lambda / unit_value).floor();
        if !bound.is_finite() || bound >= 9.2e18 {
            return Err(Error::Budget(
                "eigenvalue cutoff exceeds the label range".into(),
            ));
        }
        let bound = bound as u64;
        if bound >= 1 {
            let mut counter = Counter::new(budget.max_candidates);
            let map = enumerate(bound, &mut counter)?;
            let total: u64 = map.values().sum();
            if total >= need as u64 {
                return assemble_labeled(domain, unit, &map, need);
            }
        }
        lambda *= 2.0;
    }
    Err(Error::Budget(format!(
        "could not certify {need} eigenvalues within {} cutoff refinements",
        budget.max_refinements
    )))
}

/// Level-walk assembly for spectra with closed-form level multiplicities.
/// `level(i)` returns the i-th `(label, multiplicity)` pair in strictly
/// ascending label order.
fn assemble_levels<F>(domain: &DomainSpec, unit: ScaleUnit, need: usize, mut level: F) -> Result<Spectrum>
where
    F: FnMut(u64) -> Result<(u64, u64)>,
{
    let mut map = BTreeMap::new();
    let mut cum = 0u64;
    let mut index = 0u64;
    while cum < need as u64 {
        if index > 1_000_000 {
            return Err(Error::Budget(
                "level walk exceeded one million levels".into(),
            ));
        }
        let (label, mult) = level(index)?;
        map.insert(label, mult);
        cum += mult;
        index += 1;
    }
    assemble_labeled(domain, unit, &map, need)
}

/// Common unit and canonical coefficients for box and torus lattices.
fn lattice_unit(sides: &[Length], closed: bool) -> Result<(ScaleUnit, Vec<u64>)> {
    let pi_side = sides[0].pi_exp;
    let mut m: i128 = 1;
    for s in sides {
        m = m.lcm(&(*s.coeff.numer() as i128));
        if m > 1_000_000 {
            return Err(Error::Parameter(
                "side numerators need a common multiple larger than 10^6".into(),
            ));
        }
    }
    let mut coeffs: Vec<i128> = Vec::with_capacity(sides.len());
    for s in sides {
        let c = (*s.coeff.denom() as i128) * (m / (*s.coeff.numer() as i128));
        if c > 1_000_000_000 {
            return Err(Error::Parameter(
                "side ratios are too intricate for exact labels".into(),
            ));
        }
        coeffs.push(c);
    }
    let g = coeffs.iter().fold(0i128, |acc, &c| acc.gcd(&c));
    for c in &mut coeffs {
        *c /= g;
    }
    let scale: i128 = if closed { 4 } else { 1 };
    let unit = ScaleUnit::new(
        Rat::new((scale * g * g) as i64, (m * m) as i64),
        2 - 2 * pi_side as i32,
    );
    Ok((unit, coeffs.into_iter().map(|c| c as u64).collect()))
}

/// Depth-first enumeration of `Σ (c_j k_j)² ≤ bound`.  Dirichlet lattices
/// use `k_j ≥ 1` with weight one; closed lattices use `k_j ≥ 0`, doubling
/// the weight for every nonzero coordinate to account for `±k_j`.
struct LatticeWalk<'a> {
    coeffs: &'a [u64],
    bound: u64,
    from_zero: bool,
}

impl LatticeWalk<'_> {
    fn walk(
        &self,
        idx: usize,
        partial: u64,
        weight: u64,
        map: &mut BTreeMap<u64, u64>,
        counter: &mut Counter,
    ) -> Result<()> {
        let c = self.coeffs[idx];
        let mut k: u64 = if self.from_zero { 0 } else { 1 };
        loop {
            counter.spend()?;
            let t = c.checked_mul(k).ok_or_else(label_overflow)?;
            let next = partial as u128 + (t as u128) * (t as u128);
            if next > self.bound as u128 {
                return Ok(());
            }
            let next = next as u64;
            let w = if self.from_zero && k > 0 {
                weight * 2
            } else {
                weight
            };
            if idx + 1 == self.coeffs.len() {
                *map.entry(next).or_insert(0) += w;
            } else {
                self.walk(idx + 1, next, w, map, counter)?;
            }
            k += 1;
        }
    }
}

fn interval_spectrum(
    domain: &DomainSpec,
    length: Length,
    count: usize,
    budget: &EnumerationBudget,
) -> Result<Spectrum> {
    if count as u64 > budget.max_candidates {
        return Err(Error::Budget(
            "requested index range exceeds the candidate budget".into(),
        ));
    }
    let p = *length.coeff.numer();
    let q = *length.coeff.denom();
    let num = q.checked_mul(q).ok_or_else(label_overflow)?;
    let den = p.checked_mul(p).ok_or_else(label_overflow)?;
    let unit = ScaleUnit::new(Rat::new(num, den), 2 - 2 * length.pi_exp as i32);
    let mut map = BTreeMap::new();
    for k in 1..=count as u64 {
        let label = k.checked_mul(k).ok_or_else(label_overflow)?;
        map.insert(label, 1);
    }
    assemble_labeled(domain, unit, &map, count)
}

fn lattice_spectrum(
    domain: &DomainSpec,
    sides: &[Length],
    count: usize,
    budget: &EnumerationBudget,
    closed: bool,
) -> Result<Spectrum> {
    let (unit, coeffs) = lattice_unit(sides, closed)?;
    let need = if closed { count + 1 } else { count };
    let volume: f64 = sides.iter().map(|s| s.value()).product();
    let initial = budget.safety_factor * weyl_like(sides.len() as u32, volume, need);
    certify_labeled(domain, unit, need, initial, budget, |bound, counter| {
        let mut map = BTreeMap::new();
        let walk = LatticeWalk {
            coeffs: &coeffs,
            bound,
            from_zero: closed,
        };
        walk.walk(0, 0, 1, &mut map, counter)?;
        Ok(map)
    })
}

/// Equilateral-triangle labels `m² + mn + n²` or right-isosceles labels
/// `m² + n²` with `m > n`, both over positive integers.
fn triangle_spectrum(
    domain: &DomainSpec,
    size: Length,
    count: usize,
    budget: &EnumerationBudget,
    equilateral: bool,
) -> Result<Spectrum> {
    let p = *size.coeff.numer();
    let q = *size.coeff.denom();
    let num_base = q.checked_mul(q).ok_or_else(label_overflow)?;
    let den_base = p.checked_mul(p).ok_or_else(label_overflow)?;
    let unit = if equilateral {
        let num = num_base.checked_mul(16).ok_or_else(label_overflow)?;
        let den = den_base.checked_mul(9).ok_or_else(label_overflow)?;
        ScaleUnit::new(Rat::new(num, den), 2 - 2 * size.pi_exp as i32)
    } else {
        ScaleUnit::new(Rat::new(num_base, den_base), 2 - 2 * size.pi_exp as i32)
    };
    let volume = domain.volume().unwrap_or(1.0);
    let initial = budget.safety_factor * weyl_like(2, volume, count);
    certify_labeled(domain, unit, count, initial, budget, |bound, counter| {
        let mut map = BTreeMap::new();
        let bound = bound as u128;
        if equilateral {
            for m in 1u128.. {
                if m * m + m + 1 > bound {
                    break;
                }
                for n in 1u128.. {
                    counter.spend()?;
                    let label = m * m + m * n + n * n;
                    if label > bound {
                        break;
                    }
                    *map.entry(label as u64).or_insert(0) += 1;
                }
            }
        } else {
            for n in 1u128.. {
                if (n + 1) * (n + 1) + n * n > bound {
                    break;
                }
                for m in (n + 1).. {
                    counter.spend()?;
                    let label = m * m + n * n;
                    if label > bound {
                        break;
                    }
                    *map.entry(label as u64).or_insert(0) += 1;
                }
            }
        }
        Ok(map)
    })
}

fn ball_spectrum(
    domain: &DomainSpec,
    dim: u32,
    radius: Length,
    count: usize,
    budget: &EnumerationBudget,
) -> Result<Spectrum> {
    let r = radius.value();
    let initial = budget.safety_factor * weyl_like(dim, domain.volume().unwrap_or(1.0), count);
    let mut lambda = if initial.is_finite() && initial > 0.0 {
        initial
    } else {
        1.0 / (r * r)
    };
    for _ in 0..=budget.max_refinements {
        let x_max = r * lambda.sqrt();
        let mut modes: Vec<(f64, u32)> = Vec::new();
        let mut total = 0usize;
        let mut truncated_by_order = false;
        for l in 0u32.. {
            let order = l as f64 + dim as f64 / 2.0 - 1.0;
            if order > 50.0 {
                truncated_by_order = true;
                break;
            }
            let zeros = specfun::bessel_zeros_upto(order, x_max)?;
            if zeros.is_empty() {
                break;
            }
            let mult = match dim {
                2 => {
                    if l == 0 {
                        1
                    } else {
                        2
                    }
                }
                _ => 2 * l + 1,
            };
            for z in zeros {
                let scaled = z / r;
                modes.push((scaled * scaled, mult));
                total += mult as usize;
            }
        }
        if total >= count {
            modes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let mut entries: Vec<SpectrumEntry> = Vec::new();
            for (value, mult) in modes {
                match entries.last_mut() {
                    Some(last) if value - last.value <= 1e-9 * last.value.max(1.0) => {
                        last.mult += mult;
                    }
                    _ => entries.push(SpectrumEntry {
                        value,
                        label: None,
                        mult,
                    }),
                }
            }
            let mut kept = Vec::new();
            let mut cum = 0usize;
            for e in entries {
                if cum >= count {
                    break;
                }
                cum += e.mult as usize;
                kept.push(e);
            }
            let spectrum = Spectrum {
                domain: domain.clone(),
                problem: Problem::Dirichlet,
                unit: ScaleUnit::one(),
                entries: kept,
                guaranteed_count: cum,
            };
            spectrum.check_invariants()?;
            return Ok(spectrum);
        }
        if truncated_by_order {
            return Err(Error::Unsupported(
                "requested index range needs Bessel orders beyond the implemented cap".into(),
            ));
        }
        lambda *= 2.0;
    }
    Err(Error::Budget(format!(
        "could not certify {count} ball eigenvalues within {} cutoff refinements",
        budget.max_refinements
    )))
}

fn hemisphere_spectrum(domain: &DomainSpec, count: usize) -> Result<Spectrum> {
    assemble_levels(domain, ScaleUnit::one(), count, |i| {
        let l = i + 1;
        let label = l.checked_mul(l + 1).ok_or_else(label_overflow)?;
        Ok((label, l))
    })
}

/// Multiplicity of the sphere eigenvalue `λ̄ = ℓ(ℓ+n-1)` on `S^n`:
/// `C(n+ℓ, ℓ) - C(n+ℓ-2, ℓ-2)`.
pub(crate) fn sphere_level_mult(n: u32, l: u64) -> Result<u64> {
    if l == 0 {
        return Ok(1);
    }
    let with = binom(n as u64 + l, l)?;
    let without = if l >= 2 {
        binom(n as u64 + l - 2, l - 2)?
    } else {
        0
    };
    u64::try_from(with - without)
        .map_err(|_| Error::Numeric("sphere multiplicity exceeds u64 range".into()))
}

fn sphere_spectrum(domain: &DomainSpec, dim: u32, count: usize) -> Result<Spectrum> {
    assemble_levels(domain, ScaleUnit::one(), count + 1, |l| {
        let label = l
            .checked_mul(l + dim as u64 - 1)
            .ok_or_else(label_overflow)?;
        Ok((label, sphere_level_mult(dim, l)?))
    })
}

fn clifford_spectrum(
    domain: &DomainSpec,
    count: usize,
    budget: &EnumerationBudget,
) -> Result<Spectrum> {
    let unit = ScaleUnit::new(Rat::new(2, 1), 0);
    let need = count + 1;
    let initial = budget.safety_factor * weyl_like(2, 2.0 * PI * PI, need);
    let coeffs = [1u64, 1u64];
    certify_labeled(domain, unit, need, initial, budget, |bound, counter| {
        let mut map = BTreeMap::new();
        let walk = LatticeWalk {
            coeffs: &coeffs,
            bound,
            from_zero: true,
        };
        walk.walk(0, 0, 1, &mut map, counter)?;
        Ok(map)
    })
}

/// Multiplicity of the k-th eigenvalue level `4k(k+n)` of `ℂP^n`:
/// `(n+2k) C(n+k-1, k)² / n`.
pub(crate) fn cpn_level_mult(n: u32, k: u64) -> Result<u64> {
    if k == 0 {
        return Ok(1);
    }
    let n = n as u64;
    let c = binom(n + k - 1, k)?;
    let prod = c
        .checked_mul(c)
        .and_then(|sq| sq.checked_mul((n + 2 * k) as u128))
        .ok_or_else(|| Error::Numeric("projective-space multiplicity overflow".into()))?;
    if prod % n as u128 != 0 {
        return Err(Error::Numeric(
            "projective-space multiplicity is not integral".into(),
        ));
    }
    u64::try_from(prod / n as u128)
        .map_err(|_| Error::Numeric("projective-space multiplicity exceeds u64 range".into()))
}

fn cpn_spectrum(domain: &DomainSpec, complex_dim: u32, count: usize) -> Result<Spectrum> {
    let unit = ScaleUnit::new(Rat::new(4, 1), 0);
    assemble_levels(domain, unit, count + 1, |k| {
        let label = k
            .checked_mul(k + complex_dim as u64)
            .ok_or_else(label_overflow)?;
        Ok((label, cpn_level_mult(complex_dim, k)?))
    })
}

fn binom(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - k + 1 + i) as u128)
            .ok_or_else(|| Error::Numeric("binomial coefficient overflow".into()))?;
        acc /= (i + 1) as u128;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn len(n: i64, d: i64) -> Length {
        Length::of(n, d)
    }

    fn labels_with_mult(s: &Spectrum) -> Vec<(u64, u32)> {
        s.entries.iter().map(|e| (e.label.unwrap(), e.mult)).collect()
    }

    fn flattened_labels(s: &Spectrum, upto: usize) -> Vec<u64> {
        let mut out = Vec::new();
        'outer: for e in &s.entries {
            for _ in 0..e.mult {
                out.push(e.label.unwrap());
                if out.len() == upto {
                    break 'outer;
                }
            }
        }
        out
    }

    /// Independent brute-force Dirichlet box spectrum in plain floats.
    fn brute_box(sides: &[f64], kmax: usize) -> Vec<f64> {
        let mut values = Vec::new();
        fn rec(sides: &[f64], depth: usize, partial: f64, cap: f64, out: &mut Vec<f64>) {
            for k in 1.. {
                let term = (k as f64 * PI / sides[depth]).powi(2);
                if partial + term > cap {
                    break;
                }
                if depth + 1 == sides.len() {
                    out.push(partial + term);
                } else {
                    rec(sides, depth + 1, partial + term, cap, out);
                }
            }
        }
        let cap = 16.0 * PI * PI * (kmax as f64 + 4.0);
        rec(sides, 0, 0.0, cap, &mut values);
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.truncate(kmax);
        values
    }

    #[test]
    fn interval_with_pi_length_has_integer_spectrum() {
        let s = spectrum(&DomainSpec::interval(Length::pi_of(1, 1)), 3).unwrap();
        assert_eq!(s.unit, ScaleUnit::new(Rat::new(1, 1), 0));
        assert_eq!(s.values_upto(3).unwrap(), vec![1.0, 4.0, 9.0]);
    }

    #[test]
    fn unit_interval_scales_by_pi_squared() {
        let s = spectrum(&DomainSpec::interval(len(1, 1)), 2).unwrap();
        assert_eq!(s.unit, ScaleUnit::new(Rat::new(1, 1), 2));
        assert!((s.value_at(1).unwrap() - PI * PI).abs() < 1e-12);
        assert!((s.value_at(2).unwrap() - 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn unit_square_first_labels() {
        let s = spectrum(&DomainSpec::square(len(1, 1)), 5).unwrap();
        assert_eq!(flattened_labels(&s, 5), vec![2, 5, 5, 8, 10]);
        assert!(s.guaranteed_count >= 5);
        let brute = brute_box(&[1.0, 1.0], 5);
        let ours = s.values_upto(5).unwrap();
        for (a, b) in ours.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-9 * b, "{a} vs {b}");
        }
    }

    #[test]
    fn unit_cube_first_labels() {
        let s = spectrum(&DomainSpec::cube(len(1, 1)), 4).unwrap();
        assert_eq!(flattened_labels(&s, 4), vec![3, 6, 6, 6]);
    }

    #[test]
    fn box_labels_are_invariant_under_rational_scaling() {
        let a = spectrum(&DomainSpec::square(len(1, 1)), 12).unwrap();
        let b = spectrum(&DomainSpec::square(len(3, 2)), 12).unwrap();
        let c = spectrum(&DomainSpec::square(Length::pi_of(1, 1)), 12).unwrap();
        assert_eq!(labels_with_mult(&a), labels_with_mult(&b));
        assert_eq!(labels_with_mult(&a), labels_with_mult(&c));
        assert_eq!(b.unit, ScaleUnit::new(Rat::new(4, 9), 2));
        assert_eq!(c.unit, ScaleUnit::new(Rat::new(1, 1), 0));
    }

    #[test]
    fn anisotropic_box_matches_direct_evaluation() {
        let s = spectrum(&DomainSpec::rect(len(1, 1), len(3, 2)), 10).unwrap();
        let brute = brute_box(&[1.0, 1.5], 10);
        let ours = s.values_upto(10).unwrap();
        for (a, b) in ours.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-9 * b, "{a} vs {b}");
        }
        assert_eq!(s.entries[0].label, Some(13));
        assert_eq!(s.unit, ScaleUnit::new(Rat::new(1, 9), 2));
    }

    #[test]
    fn equilateral_triangle_first_labels() {
        let s = spectrum(
            &DomainSpec::TriangleEquilateral { diameter: len(1, 1) },
            6,
        )
        .unwrap();
        assert_eq!(flattened_labels(&s, 6), vec![3, 7, 7, 12, 13, 13]);
        assert!((s.value_at(1).unwrap() - 16.0 * PI * PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn equilateral_labels_match_brute_force() {
        let s = spectrum(
            &DomainSpec::TriangleEquilateral { diameter: len(1, 1) },
            40,
        )
        .unwrap();
        let mut brute = Vec::new();
        for m in 1u64..200 {
            for n in 1u64..200 {
                brute.push(m * m + m * n + n * n);
            }
        }
        brute.sort_unstable();
        brute.truncate(40);
        assert_eq!(flattened_labels(&s, 40), brute);
    }

    #[test]
    fn right_isosceles_first_labels() {
        let s = spectrum(&DomainSpec::TriangleRightIsosceles { leg: len(1, 1) }, 4).unwrap();
        assert_eq!(flattened_labels(&s, 4), vec![5, 10, 13, 17]);
        assert_eq!(s.unit, ScaleUnit::new(Rat::new(1, 1), 2));
    }

    #[test]
    fn right_isosceles_labels_match_brute_force() {
        let s = spectrum(&DomainSpec::TriangleRightIsosceles { leg: len(1, 1) }, 30).unwrap();
        let mut brute = Vec::new();
        for n in 1u64..100 {
            for m in (n + 1)..100 {
                brute.push(m * m + n * n);
            }
        }
        brute.sort_unstable();
        brute.truncate(30);
        assert_eq!(flattened_labels(&s, 30), brute);
    }

    #[test]
    fn disk_spectrum_uses_bessel_zeros() {
        let s = spectrum(
            &DomainSpec::Ball {
                dim: 2,
                radius: len(1, 1),
            },
            3,
        )
        .unwrap();
        let j01 = 2.404825557695773f64;
        let j11 = 3.831705970207512f64;
        assert_eq!(s.entries[0].mult, 1);
        assert!((s.value_at(1).unwrap() - j01 * j01).abs() < 1e-9);
        assert_eq!(s.entries[1].mult, 2);
        assert!((s.value_at(2).unwrap() - j11 * j11).abs() < 1e-9);
        assert_eq!(s.value_at(2), s.value_at(3));
    }

    #[test]
    fn unit_ball_ground_state_is_pi_squared() {
        let s = spectrum(
            &DomainSpec::Ball {
                dim: 3,
                radius: len(1, 1),
            },
            4,
        )
        .unwrap();
        assert!((s.value_at(1).unwrap() - PI * PI).abs() < 1e-9);
        assert_eq!(s.entries[1].mult, 3);
        let j32 = 4.493409457909064f64;
        assert!((s.value_at(2).unwrap() - j32 * j32).abs() < 1e-8);
    }

    #[test]
    fn ball_certification_extends_to_larger_counts() {
        let s = spectrum(
            &DomainSpec::Ball {
                dim: 2,
                radius: len(1, 1),
            },
            25,
        )
        .unwrap();
        assert!(s.max_index() >= 25);
    }

    #[test]
    fn hemisphere_levels_and_multiplicities() {
        let s = spectrum(&DomainSpec::Hemisphere, 6).unwrap();
        assert_eq!(labels_with_mult(&s), vec![(2, 1), (6, 2), (12, 3)]);
        assert_eq!(s.values_upto(6).unwrap(), vec![2.0, 6.0, 6.0, 12.0, 12.0, 12.0]);
    }

    #[test]
    fn hemisphere_multiplicity_matches_parity_count() {
        for l in 1u64..=30 {
            let parity_count = (-(l as i64)..=l as i64)
                .filter(|m| (l as i64 + m) % 2 == 1)
                .count() as u64;
            assert_eq!(parity_count, l);
        }
    }

    #[test]
    fn two_sphere_first_entries() {
        let s = spectrum(&DomainSpec::Sphere { dim: 2 }, 4).unwrap();
        assert_eq!(labels_with_mult(&s), vec![(0, 1), (2, 3), (6, 5)]);
        assert_eq!(s.values_upto(4).unwrap(), vec![0.0, 2.0, 2.0, 2.0, 6.0]);
    }

    #[test]
    fn circle_spectrum_is_squares_with_pairs() {
        let s = spectrum(&DomainSpec::Sphere { dim: 1 }, 2).unwrap();
        assert_eq!(labels_with_mult(&s), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn three_sphere_first_eigenvalue() {
        let s = spectrum(&DomainSpec::Sphere { dim: 3 }, 4).unwrap();
        assert_eq!(s.value_at(1).unwrap(), 3.0);
        assert_eq!(s.entries[1].mult, 4);
    }

    #[test]
    fn sphere_multiplicities_match_closed_forms() {
        for l in 0u64..=15 {
            assert_eq!(
                sphere_level_mult(2, l).unwrap(),
                if l == 0 { 1 } else { 2 * l + 1 }
            );
            assert_eq!(sphere_level_mult(3, l).unwrap(), (l + 1) * (l + 1));
        }
    }

    #[test]
    fn square_torus_first_eigenvalues() {
        let s = spectrum(
            &DomainSpec::FlatTorus {
                sides: vec![len(1, 1), len(1, 1)],
            },
            4,
        )
        .unwrap();
        assert_eq!(labels_with_mult(&s), vec![(0, 1), (1, 4)]);
        assert!((s.value_at(1).unwrap() - 4.0 * PI * PI).abs() < 1e-9);
        assert_eq!(s.value_at(4), s.value_at(1));
    }

    #[test]
    fn rectangular_torus_ground_gap() {
        let s = spectrum(
            &DomainSpec::FlatTorus {
                sides: vec![len(1, 1), len(2, 1)],
            },
            1,
        )
        .unwrap();
        assert!((s.value_at(1).unwrap() - PI * PI).abs() < 1e-9);
    }

    #[test]
    fn two_pi_torus_has_integer_spectrum() {
        let s = spectrum(
            &DomainSpec::FlatTorus {
                sides: vec![Length::pi_of(2, 1), Length::pi_of(2, 1)],
            },
            1,
        )
        .unwrap();
        assert_eq!(s.unit, ScaleUnit::new(Rat::new(1, 1), 0));
        assert_eq!(s.values_upto(1).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn torus_values_match_direct_evaluation() {
        let s = spectrum(
            &DomainSpec::FlatTorus {
                sides: vec![len(1, 1), len(3, 2)],
            },
            12,
        )
        .unwrap();
        let mut brute = Vec::new();
        for p in -20i64..=20 {
            for q in -20i64..=20 {
                brute.push(4.0 * PI * PI * ((p * p) as f64 / 1.0 + (q * q) as f64 / 2.25));
            }
        }
        brute.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let ours = s.values_upto(12).unwrap();
        for (a, b) in ours.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-9 * b.max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn clifford_torus_first_levels() {
        let s = spectrum(&DomainSpec::CliffordTorus, 8).unwrap();
        assert_eq!(labels_with_mult(&s), vec![(0, 1), (1, 4), (2, 4)]);
        assert_eq!(s.value_at(1).unwrap(), 2.0);
        assert_eq!(s.value_at(4).unwrap(), 2.0);
        assert_eq!(s.value_at(5).unwrap(), 4.0);
        assert_eq!(s.value_at(8).unwrap(), 4.0);
    }

    #[test]
    fn projective_line_matches_two_sphere_scaled() {
        let s = spectrum(&DomainSpec::ProjectiveSpace { complex_dim: 1 }, 3).unwrap();
        assert_eq!(s.values_upto(3).unwrap(), vec![0.0, 8.0, 8.0, 8.0]);
        let more = spectrum(&DomainSpec::ProjectiveSpace { complex_dim: 1 }, 8).unwrap();
        assert_eq!(more.value_at(4).unwrap(), 24.0);
        assert_eq!(more.entries[2].mult, 5);
    }

    #[test]
    fn projective_plane_first_eigenvalue() {
        let s = spectrum(&DomainSpec::ProjectiveSpace { complex_dim: 2 }, 1).unwrap();
        assert_eq!(s.value_at(1).unwrap(), 12.0);
        assert_eq!(s.entries[1].mult, 8);
    }

    #[test]
    fn cpn_multiplicities_match_closed_forms() {
        for k in 0u64..=12 {
            assert_eq!(
                cpn_level_mult(1, k).unwrap(),
                if k == 0 { 1 } else { 2 * k + 1 }
            );
            assert_eq!(cpn_level_mult(2, k).unwrap(), (k + 1) * (k + 1) * (k + 1));
        }
    }

    #[test]
    fn weyl_prediction_on_pi_square() {
        let expected = 40.0 / PI;
        let got = weyl_prediction(&DomainSpec::square(Length::pi_of(1, 1)), 10).unwrap();
        assert!((got - expected).abs() < 1e-12 * expected, "{got}");
    }

    #[test]
    fn weyl_prediction_on_interval_is_exact_form() {
        let got = weyl_prediction(&DomainSpec::interval(len(1, 1)), 7).unwrap();
        assert!((got - 49.0 * PI * PI).abs() < 1e-9, "{got}");
    }

    #[test]
    fn weyl_prediction_rejects_closed_manifolds() {
        assert!(weyl_prediction(&DomainSpec::Sphere { dim: 2 }, 3).is_err());
    }

    #[test]
    fn candidate_budget_is_enforced() {
        let budget = EnumerationBudget {
            max_candidates: 3,
            ..Default::default()
        };
        let err = spectrum_with_budget(&DomainSpec::square(len(1, 1)), 50, &budget);
        assert!(matches!(err, Err(Error::Budget(_))));
    }

    #[test]
    fn guarantee_always_covers_the_request() {
        for count in [1usize, 2, 3, 7, 20, 100] {
            let s = spectrum(&DomainSpec::square(len(1, 1)), count).unwrap();
            assert!(s.max_index() >= count);
            assert_eq!(s.guaranteed_count, s.total_mult());
        }
        for count in [1usize, 5, 40] {
            let s = spectrum(&DomainSpec::Sphere { dim: 2 }, count).unwrap();
            assert!(s.max_index() >= count);
        }
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binom(10, 3).unwrap(), 120);
        assert_eq!(binom(5, 0).unwrap(), 1);
        assert_eq!(binom(3, 5).unwrap(), 0);
        assert_eq!(binom(52, 5).unwrap(), 2_598_960);
    }
}
