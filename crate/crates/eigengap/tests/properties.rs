//! Structural properties that must hold for every generated spectrum:
//! ordering and positivity, exact covariance under length scaling,
//! stability of the certified prefix under larger enumeration budgets,
//! the implication chain among the quadratic-mean bounds, tie handling,
//! scale invariance of conjecture verdicts, and serialization round-trips.

use num_bigint::BigInt;
use proptest::prelude::*;

use eigengap::conjecture::{gap_conjecture_check, CoeffMode};
use eigengap::generate::spectrum;
use eigengap::ineq::{check, implication_chain, CheckStatus, InequalityId};
use eigengap::spectrum::{DomainSpec, Length, Problem, Spectrum};
use eigengap::{Exact, Rat};

fn rat(num: std::ops::RangeInclusive<i64>, den: std::ops::RangeInclusive<i64>) -> BoxedStrategy<Rat> {
    (num, den).prop_map(|(n, d)| Rat::new(n, d)).boxed()
}

fn labeled_dirichlet() -> BoxedStrategy<DomainSpec> {
    prop_oneof![
        rat(1..=6, 1..=4).prop_map(|r| DomainSpec::interval(Length::rational(r))),
        proptest::collection::vec(rat(1..=4, 1..=3), 1..=3).prop_map(|sides| DomainSpec::Box {
            sides: sides.into_iter().map(Length::rational).collect(),
        }),
        rat(1..=5, 1..=3).prop_map(|r| DomainSpec::TriangleEquilateral {
            diameter: Length::rational(r),
        }),
        rat(1..=5, 1..=3).prop_map(|r| DomainSpec::TriangleRightIsosceles {
            leg: Length::rational(r),
        }),
    ]
    .boxed()
}

fn labeled_closed() -> BoxedStrategy<DomainSpec> {
    prop_oneof![
        (1u32..=4).prop_map(|dim| DomainSpec::Sphere { dim }),
        proptest::collection::vec(rat(1..=3, 1..=2), 1..=2).prop_map(|sides| {
            DomainSpec::FlatTorus {
                sides: sides.into_iter().map(Length::rational).collect(),
            }
        }),
        Just(DomainSpec::CliffordTorus),
        (1u32..=2).prop_map(|complex_dim| DomainSpec::ProjectiveSpace { complex_dim }),
    ]
    .boxed()
}

fn any_domain() -> BoxedStrategy<DomainSpec> {
    prop_oneof![
        labeled_dirichlet(),
        labeled_closed(),
        Just(DomainSpec::Hemisphere),
        (2u32..=3, rat(1..=3, 1..=2)).prop_map(|(dim, r)| DomainSpec::Ball {
            dim,
            radius: Length::rational(r),
        }),
    ]
    .boxed()
}

fn rescale(domain: &DomainSpec, t: Rat) -> DomainSpec {
    let sc = |l: &Length| Length {
        coeff: l.coeff * t,
        pi_exp: l.pi_exp,
    };
    match domain {
        DomainSpec::Interval { length } => DomainSpec::Interval { length: sc(length) },
        DomainSpec::Box { sides } => DomainSpec::Box {
            sides: sides.iter().map(sc).collect(),
        },
        DomainSpec::TriangleEquilateral { diameter } => DomainSpec::TriangleEquilateral {
            diameter: sc(diameter),
        },
        DomainSpec::TriangleRightIsosceles { leg } => {
            DomainSpec::TriangleRightIsosceles { leg: sc(leg) }
        }
        DomainSpec::Ball { dim, radius } => DomainSpec::Ball {
            dim: *dim,
            radius: sc(radius),
        },
        DomainSpec::FlatTorus { sides } => DomainSpec::FlatTorus {
            sides: sides.iter().map(sc).collect(),
        },
        other => other.clone(),
    }
}

fn exact_square(t: Rat) -> Exact {
    Exact::new(
        BigInt::from(*t.numer() * *t.numer()),
        BigInt::from(*t.denom() * *t.denom()),
    )
}

fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_spectra_are_sorted_positive_and_certified(
        domain in any_domain(),
        count in 3usize..=30,
    ) {
        let spec = spectrum(&domain, count).unwrap();
        spec.check_invariants().unwrap();
        prop_assert!(spec.total_mult() >= spec.guaranteed_count);
        prop_assert!(spec.guaranteed_count >= count);
        for pair in spec.entries.windows(2) {
            prop_assert!(pair[0].value < pair[1].value);
        }
        for e in &spec.entries {
            prop_assert!(e.mult >= 1);
        }
        match spec.problem {
            Problem::Dirichlet => prop_assert!(spec.entries[0].value > 0.0),
            Problem::Closed => {
                prop_assert_eq!(spec.entries[0].value, 0.0);
                prop_assert_eq!(spec.entries[0].mult, 1);
            }
        }
    }

    #[test]
    fn spectrum_json_round_trips(domain in any_domain(), count in 3usize..=20) {
        let spec = spectrum(&domain, count).unwrap();
        let text = spec.to_json().unwrap();
        let back = Spectrum::from_json(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn csv_emits_one_row_per_merged_entry(domain in any_domain(), count in 3usize..=20) {
        let spec = spectrum(&domain, count).unwrap();
        let csv = spec.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        prop_assert_eq!(lines[0], "index,value,label,mult");
        prop_assert_eq!(lines.len(), spec.entries.len() + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scaling_labeled_domains_divides_exact_values_by_t_squared(
        domain in prop_oneof![labeled_dirichlet(), labeled_closed()],
        t in rat(1..=5, 1..=5),
    ) {
        prop_assume!(matches!(
            domain,
            DomainSpec::Interval { .. }
                | DomainSpec::Box { .. }
                | DomainSpec::TriangleEquilateral { .. }
                | DomainSpec::TriangleRightIsosceles { .. }
                | DomainSpec::FlatTorus { .. }
        ));
        let base = spectrum(&domain, 20).unwrap();
        let scaled = spectrum(&rescale(&domain, t), 20).unwrap();
        prop_assert_eq!(scaled.guaranteed_count, base.guaranteed_count);
        prop_assert_eq!(scaled.entries.len(), base.entries.len());
        for (s, b) in scaled.entries.iter().zip(&base.entries) {
            prop_assert_eq!(s.mult, b.mult);
        }
        prop_assert_eq!(scaled.unit.pi_exp, base.unit.pi_exp);
        let last = base.max_index();
        let base_exact = base.exact_upto(last).unwrap();
        let scaled_exact = scaled.exact_upto(last).unwrap();
        let t2 = exact_square(t);
        for (s, b) in scaled_exact.iter().zip(&base_exact) {
            prop_assert_eq!(&(s * &t2), b);
        }
    }

    #[test]
    fn scaling_the_ball_divides_values_by_t_squared_in_float(
        dim in 2u32..=3,
        r in rat(1..=3, 1..=2),
        t in rat(1..=4, 1..=4),
    ) {
        let domain = DomainSpec::Ball { dim, radius: Length::rational(r) };
        let base = spectrum(&domain, 8).unwrap();
        let scaled = spectrum(&rescale(&domain, t), 8).unwrap();
        let last = base.max_index().min(scaled.max_index());
        let base_vals = base.values_upto(last).unwrap();
        let scaled_vals = scaled.values_upto(last).unwrap();
        let t2 = (*t.numer() as f64 / *t.denom() as f64).powi(2);
        for (s, b) in scaled_vals.iter().zip(&base_vals) {
            prop_assert!(rel_close(s * t2, *b, 1e-12));
        }
    }

    #[test]
    fn doubling_the_request_preserves_the_certified_prefix(
        domain in prop_oneof![labeled_dirichlet(), labeled_closed()],
        count in 5usize..=60,
    ) {
        let small = spectrum(&domain, count).unwrap();
        let large = spectrum(&domain, 2 * count).unwrap();
        let last = small.max_index();
        prop_assert_eq!(
            small.exact_upto(last).unwrap(),
            large.exact_upto(last).unwrap()
        );
    }

    #[test]
    fn hp_rhs_is_infinite_exactly_at_multiplicity_ties(
        domain in labeled_dirichlet(),
    ) {
        let spec = spectrum(&domain, 25).unwrap();
        for k in 1..spec.max_index() {
            let report = check(&spec, InequalityId::Hp, k).unwrap();
            let exact = spec.exact_upto(k + 1).unwrap();
            let tie = exact[k] == exact[k - 1];
            prop_assert_eq!(report.status == CheckStatus::InfiniteRhs, tie);
            prop_assert_eq!(report.rhs.is_infinite(), tie);
            if tie {
                prop_assert!(report.holds);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn yang1_implies_the_weaker_bounds_on_random_boxes(
        sides in proptest::collection::vec(rat(1..=4, 1..=3), 1..=3),
    ) {
        let domain = DomainSpec::Box {
            sides: sides.into_iter().map(Length::rational).collect(),
        };
        let spec = spectrum(&domain, 41).unwrap();
        let chain = implication_chain(&spec, 40).unwrap();
        prop_assert!(chain.violations.is_empty(), "violations: {:?}", chain.violations);
        prop_assert!(chain.checked > 0);
    }

    #[test]
    fn conjecture_verdicts_are_scale_invariant(
        sides in proptest::collection::vec(rat(1..=4, 1..=3), 1..=3),
        t in rat(1..=5, 1..=5),
    ) {
        let base_domain = DomainSpec::Box {
            sides: sides.into_iter().map(Length::rational).collect(),
        };
        let base = gap_conjecture_check(&spectrum(&base_domain, 41).unwrap(), 40, CoeffMode::S1).unwrap();
        let scaled = gap_conjecture_check(
            &spectrum(&rescale(&base_domain, t), 41).unwrap(),
            40,
            CoeffMode::S1,
        ).unwrap();
        prop_assert_eq!(scaled.holds, base.holds);
        prop_assert_eq!(scaled.worst_k, base.worst_k);
        let t2 = (*t.numer() as f64 / *t.denom() as f64).powi(2);
        prop_assert!(rel_close(scaled.worst_margin * t2, base.worst_margin, 1e-9));
    }

    #[test]
    fn a_larger_budget_never_flips_an_earlier_verdict(
        sides in proptest::collection::vec(rat(1..=4, 1..=3), 1..=2),
        k_lo in 5usize..=25,
        extra in 1usize..=25,
    ) {
        let domain = DomainSpec::Box {
            sides: sides.into_iter().map(Length::rational).collect(),
        };
        let k_hi = k_lo + extra;
        let spec = spectrum(&domain, k_hi + 1).unwrap();
        let narrow = gap_conjecture_check(&spec, k_lo, CoeffMode::S1).unwrap();
        let wide = gap_conjecture_check(&spec, k_hi, CoeffMode::S1).unwrap();
        if wide.holds {
            prop_assert!(narrow.holds);
        }
        if !narrow.holds {
            prop_assert!(!wide.holds);
            prop_assert!(wide.worst_margin <= narrow.worst_margin);
        }
    }

    #[test]
    fn inequality_margins_scale_with_the_right_power(
        sides in proptest::collection::vec(rat(1..=4, 1..=3), 1..=3),
        t in rat(1..=4, 1..=4),
    ) {
        let base_domain = DomainSpec::Box {
            sides: sides.into_iter().map(Length::rational).collect(),
        };
        let base = spectrum(&base_domain, 12).unwrap();
        let scaled = spectrum(&rescale(&base_domain, t), 12).unwrap();
        let t2 = (*t.numer() as f64 / *t.denom() as f64).powi(2);
        for k in 1..=10 {
            for (id, power) in [(InequalityId::Ppw, t2), (InequalityId::Yang1, t2 * t2)] {
                let b = check(&base, id, k).unwrap();
                let s = check(&scaled, id, k).unwrap();
                prop_assert_eq!(s.holds, b.holds);
                prop_assert_eq!(s.status, b.status);
                prop_assert!(rel_close(s.margin * power, b.margin, 1e-9));
            }
        }
    }

    #[test]
    fn bracket_matches_the_homogeneous_bound_at_zero_variance(
        dim in 1u32..=4,
    ) {
        let spec = spectrum(&DomainSpec::Sphere { dim }, 2 * dim as usize + 6).unwrap();
        for k in 1..=(dim as usize + 1) {
            let plain = check(&spec, InequalityId::ClosedHomogeneous, k).unwrap();
            let bracket = check(&spec, InequalityId::HomogeneousBracket, k).unwrap();
            prop_assert_eq!(plain.status, CheckStatus::Ok);
            prop_assert_eq!(bracket.status, CheckStatus::Ok);
            prop_assert!(rel_close(plain.rhs, bracket.rhs, 1e-12));
        }
    }
}

#[test]
fn thousand_eigenvalue_prefixes_survive_a_doubled_request() {
    for domain in [
        DomainSpec::square(Length::of(1, 1)),
        DomainSpec::FlatTorus {
            sides: vec![Length::of(1, 1), Length::of(1, 1)],
        },
    ] {
        let small = spectrum(&domain, 1000).unwrap();
        let large = spectrum(&domain, 2000).unwrap();
        let last = small.max_index();
        assert_eq!(
            small.values_upto(last).unwrap(),
            large.values_upto(last).unwrap(),
            "prefix changed for {domain}"
        );
    }
}
