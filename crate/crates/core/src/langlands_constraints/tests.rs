use super::*;
use crate::config::Limits;
use proptest::prelude::*;

fn q(a: i64, b: u64) -> CyclicRational {
    CyclicRational::from_parts(a, b)
}

fn fin(p: u64, index: usize) -> Place {
    Place::Finite { p, index }
}

fn rationals() -> AbelianField {
    AbelianField::rationals()
}

fn gaussian() -> AbelianField {
    AbelianField::cyclotomic(4).unwrap()
}

fn hamilton_scenario() -> ConstraintScenario {
    ConstraintScenario::new(2, 3, rationals(), DualityType::Symplectic)
}

#[test]
fn away_and_arch_values() {
    let sc = hamilton_scenario();
    assert_eq!(constraint_away(&sc, &fin(5, 0)).unwrap(), CyclicRational::zero());
    assert!(constraint_away(&sc, &fin(3, 0)).is_err());
    assert!(constraint_away(&sc, &Place::Real(0)).is_err());
    assert_eq!(constraint_arch(&sc, &Place::Real(0)).unwrap(), q(1, 2));
    let nsd = ConstraintScenario::new(2, 5, gaussian(), DualityType::NotSelfDual);
    assert_eq!(constraint_arch(&nsd, &Place::Complex(0)).unwrap(), CyclicRational::zero());
    let orth = ConstraintScenario::new(2, 5, gaussian(), DualityType::Orthogonal);
    assert!(matches!(constraint_arch(&orth, &Place::Complex(0)), Err(ConstraintError::Scenario(_))));
}

#[test]
fn extra_support_pairs() {
    let sc = hamilton_scenario().with_extra_support(&["7"]).with_torsion_cap(6);
    let good = InvariantPair::new(
        [(fin(3, 0), q(1, 2)), (Place::Real(0), q(1, 2)), (fin(7, 0), q(1, 3)), (fin(5, 0), q(0, 1))],
        [(fin(7, 0), q(2, 3)), (fin(3, 0), q(0, 1))],
    );
    let r = check_pair(&sc, &good).unwrap();
    assert!(r.result(Constraint::Away).unwrap().passed);
    let bad = InvariantPair::new([(fin(7, 0), q(1, 3))], [(fin(7, 0), q(1, 3))]);
    assert!(!check_pair(&sc, &bad).unwrap().result(Constraint::Away).unwrap().passed);
}

#[test]
fn p_sum_values() {
    let field3 = AbelianField::new(7, &[-1]).unwrap();
    assert_eq!(constraint_p_sum(&hamilton_scenario()), q(1, 2));
    assert_eq!(constraint_p_sum(&ConstraintScenario::new(2, 5, gaussian(), DualityType::NotSelfDual)), q(0, 1));
    assert_eq!(field3.degree(), 3);
    assert_eq!(constraint_p_sum(&ConstraintScenario::new(2, 3, field3, DualityType::Symplectic)), q(1, 2));
}

#[test]
fn benard_schacher_examples() {
    // ℚ(√5) is totally real: entries over p in ½ℤ/ℤ and all equal
    let real = AbelianField::quadratic(5).unwrap();
    let sc = ConstraintScenario::new(2, 11, real.clone(), DualityType::Orthogonal);
    assert_eq!(real.places_over(11).unwrap().len(), 2);
    let v = |a: CyclicRational, b: CyclicRational| BTreeMap::from([(fin(11, 0), a), (fin(11, 1), b)]);
    assert!(benard_schacher_filter(&sc, &v(q(1, 2), q(1, 2))).unwrap());
    assert!(!benard_schacher_filter(&sc, &v(q(1, 2), q(0, 1))).unwrap());
    assert!(!benard_schacher_filter(&sc, &v(q(1, 5), q(1, 5))).unwrap());

    let qsc = hamilton_scenario();
    assert!(benard_schacher_filter(&qsc, &BTreeMap::from([(fin(3, 0), q(1, 2))])).unwrap());
    assert!(!benard_schacher_filter(&qsc, &BTreeMap::from([(fin(3, 0), q(1, 4))])).unwrap());

    // ℚ(i) over 5: (1/4, 3/4) is twisted correctly by σ_3
    let gsc = ConstraintScenario::new(4, 5, gaussian(), DualityType::NotSelfDual);
    let k = gaussian();
    let dec = k.decompose_prime(5).unwrap();
    assert_eq!((dec.e, dec.f, dec.g), (1, 1, 2));
    let sigma = k.galois_element(3).unwrap();
    assert_eq!(k.cyclotomic_character(&sigma, 4), Some(3));
    assert_eq!(k.galois_orbit_action(&sigma, &fin(5, 0)).unwrap(), fin(5, 1));
    let twisted = BTreeMap::from([(fin(5, 0), q(1, 4)), (fin(5, 1), q(3, 4))]);
    assert!(benard_schacher_filter(&gsc, &twisted).unwrap());
    let untwisted = BTreeMap::from([(fin(5, 0), q(1, 4)), (fin(5, 1), q(1, 4))]);
    assert!(!benard_schacher_filter(&gsc, &untwisted).unwrap());
}

#[test]
fn torsion_examples() {
    let v = |x: CyclicRational, p: u64| BTreeMap::from([(fin(p, 0), x)]);
    let s23 = ConstraintScenario::new(2, 3, rationals(), DualityType::Symplectic);
    assert!(torsion_filter(&s23, &v(q(1, 2), 3)));
    assert!(!torsion_filter(&s23, &v(q(1, 3), 3)));
    let s32 = ConstraintScenario::new(3, 2, rationals(), DualityType::NotSelfDual);
    assert!(torsion_filter(&s32, &v(q(0, 1), 2)));
    assert!(!torsion_filter(&s32, &v(q(1, 2), 2)));
    let s45 = ConstraintScenario::new(4, 5, rationals(), DualityType::NotSelfDual);
    assert!(torsion_filter(&s45, &v(q(1, 4), 5)));
}

#[test]
fn conjecture_examples() {
    let orth = hamilton_scenario();
    let orth = ConstraintScenario { duality_type: DualityType::Orthogonal, ..orth }.with_conjecture(true);
    let differ = InvariantPair::new([(fin(3, 0), q(1, 2))], []);
    assert!(!conjecture_filter(&orth, &differ).unwrap());

    let symp = hamilton_scenario().with_conjecture(true);
    let odd = InvariantPair::new([], [(fin(3, 0), q(1, 2))]);
    assert!(conjecture_filter(&symp, &odd).unwrap());
    assert!(matches!(conjecture_filter(&hamilton_scenario(), &odd), Err(ConstraintError::ConjectureOff)));

    let real = AbelianField::quadratic(5).unwrap();
    let even = ConstraintScenario::new(2, 11, real, DualityType::Symplectic).with_conjecture(true);
    let differ = InvariantPair::new([(fin(11, 0), q(1, 2))], [(fin(11, 1), q(1, 2))]);
    assert!(!conjecture_filter(&even, &differ).unwrap());
}

#[test]
fn forced_half_over_rationals() {
    let set = enumerate(&hamilton_scenario()).unwrap();
    assert!(set.is_consistent());
    assert_eq!(set.forced["p-sum"], q(1, 2));
    let at3: Vec<(CyclicRational, CyclicRational)> =
        set.solutions.iter().map(|s| (s.jl_at(&fin(3, 0)), s.lp_at(&fin(3, 0)))).collect();
    assert_eq!(at3, vec![(q(0, 1), q(1, 2)), (q(1, 2), q(0, 1))]);
    let json = set.to_json();
    assert!(json.contains("\"status\": \"consistent\""));
    assert!(json.contains("\"p-sum\": \"1/2\""));
}

#[test]
fn gaussian_field_over_five() {
    let sc = ConstraintScenario::new(2, 5, gaussian(), DualityType::NotSelfDual);
    let set = enumerate(&sc).unwrap();
    assert_eq!(set.forced["p-sum"], CyclicRational::zero());
    assert_eq!(set.forced["inf:complex:0"], CyclicRational::zero());
    assert!(set.is_consistent());
    for s in &set.solutions {
        assert!(check_pair(&sc, s).unwrap().passed);
    }
}

#[test]
fn one_dimensional() {
    for p in [2, 3, 7] {
        let set = enumerate(&ConstraintScenario::new(1, p, rationals(), DualityType::Orthogonal)).unwrap();
        assert_eq!(set.solutions, vec![InvariantPair::trivial()]);
        let naive = enumerate_naive(&ConstraintScenario::new(1, p, rationals(), DualityType::Orthogonal), &Limits::default())
            .unwrap();
        assert_eq!(naive.solutions, set.solutions);
    }
}

#[test]
fn check_pair_examples() {
    let sc = hamilton_scenario();
    let bad_lp = InvariantPair::new([(fin(3, 0), q(1, 2)), (Place::Real(0), q(1, 2))], [(fin(3, 0), q(1, 2))]);
    let r = check_pair(&sc, &bad_lp).unwrap();
    assert!(!r.passed);
    assert!(!r.result(Constraint::Reciprocity).unwrap().passed);

    let good = InvariantPair::new([(fin(3, 0), q(1, 2)), (Place::Real(0), q(1, 2))], [(fin(3, 0), q(0, 1))]);
    let r = check_pair(&sc, &good).unwrap();
    assert!(r.passed, "{r:?}");

    let k = gaussian();
    let orth = ConstraintScenario::new(2, 5, k, DualityType::Orthogonal);
    let r = check_pair(&orth, &InvariantPair::trivial()).unwrap();
    assert_eq!(r.first_failure(), Some(Constraint::Scenario));
    let set = enumerate(&orth).unwrap();
    assert_eq!(set.violated(), Some(Constraint::Scenario));
}

#[test]
fn inconsistency_names_first_constraint() {
    // gcd(2, 1) = 1 forces zero at 2, which cannot meet the p-sum ½
    let sc = ConstraintScenario::new(2, 2, rationals(), DualityType::Symplectic);
    let set = enumerate(&sc).unwrap();
    assert_eq!(set.violated(), Some(Constraint::PSum));
    // orthogonal + conjecture over ℚ at p = 3 needs 2·inv = ½
    let orth = ConstraintScenario::new(2, 3, rationals(), DualityType::Orthogonal).with_conjecture(true);
    assert_eq!(enumerate(&orth).unwrap().violated(), Some(Constraint::Conjecture));
}

#[test]
fn pair_json_roundtrip() {
    let set = enumerate(&hamilton_scenario()).unwrap();
    for s in &set.solutions {
        let json = serde_json::to_string(s).unwrap();
        assert_eq!(&InvariantPair::from_json(&rationals(), &json).unwrap(), s);
    }
    let p = InvariantPair::from_json(&rationals(), r#"{"jl": {"3": "1/2", "inf": "1/2"}, "lp": {"3": "0"}}"#).unwrap();
    assert!(check_pair(&hamilton_scenario(), &p).unwrap().passed);
    let sc_json = r#"{"n": 2, "p": 3, "field": {"conductor": 1, "generators": []}, "duality_type": "symplectic"}"#;
    assert_eq!(ConstraintScenario::from_json(sc_json).unwrap(), hamilton_scenario());
}

#[test]
fn search_cap_is_enforced() {
    let sc = ConstraintScenario::new(12, 13, rationals(), DualityType::NotSelfDual).with_extra_support(&["5", "7"]);
    let limits = Limits { max_candidates: 1000, ..Limits::default() };
    assert!(matches!(enumerate_with_limits(&sc, &limits), Err(ConstraintError::SearchTooLarge { .. })));
}

#[test]
fn bad_scenarios() {
    assert!(matches!(
        enumerate(&ConstraintScenario::new(0, 3, rationals(), DualityType::Symplectic)),
        Err(ConstraintError::ZeroDimension)
    ));
    assert!(matches!(
        enumerate(&ConstraintScenario::new(2, 4, rationals(), DualityType::Symplectic)),
        Err(ConstraintError::NotPrime(4))
    ));
    assert!(matches!(
        enumerate(&hamilton_scenario().with_extra_support(&["3"])),
        Err(ConstraintError::BadExtraSupport(_))
    ));
    assert!(enumerate(&hamilton_scenario().with_extra_support(&["5:1"])).is_err());
}

fn small_fields() -> Vec<AbelianField> {
    vec![
        rationals(),
        gaussian(),
        AbelianField::quadratic(5).unwrap(),
        AbelianField::quadratic(-3).unwrap(),
        AbelianField::new(7, &[-1]).unwrap(),
        AbelianField::cyclotomic(5).unwrap(),
        AbelianField::quadratic(2).unwrap(),
    ]
}

fn arb_scenario() -> impl Strategy<Value = ConstraintScenario> {
    let fields = small_fields();
    (0..fields.len(), 1u64..7, prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), 0..3usize, any::<bool>()).prop_map(
        move |(fi, n, p, dt, conj)| {
            let field = fields[fi].clone();
            let dual = [DualityType::NotSelfDual, DualityType::Orthogonal, DualityType::Symplectic][dt];
            ConstraintScenario::new(n, p, field, dual).with_conjecture(conj)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumerate_matches_naive_and_roundtrips(sc in arb_scenario()) {
        let limits = Limits { max_candidates: 20_000, ..Limits::default() };
        let fast = enumerate_with_limits(&sc, &limits);
        let slow = enumerate_naive(&sc, &limits);
        if let (Ok(fast), Ok(slow)) = (fast, slow) {
            prop_assert_eq!(&fast.solutions, &slow.solutions);
            prop_assert_eq!(&fast.status, &slow.status);
            for s in &fast.solutions {
                prop_assert!(check_pair(&sc, s).unwrap().passed);
                let (jl, lp) = s.to_classes(&sc.field).unwrap();
                prop_assert!(jl.invariants().values().chain(lp.invariants().values()).all(|x| !x.is_zero()));
            }
        }
    }

    #[test]
    fn conjecture_only_removes_solutions(sc in arb_scenario()) {
        let off = enumerate(&sc.clone().with_conjecture(false));
        let on = enumerate(&sc.with_conjecture(true));
        if let (Ok(off), Ok(on)) = (off, on) {
            for s in &on.solutions {
                prop_assert!(off.solutions.contains(s));
            }
        }
    }

    #[test]
    fn self_dual_solutions_are_half_integral_and_uniform(sc in arb_scenario()) {
        prop_assume!(sc.duality_type.is_self_dual() && sc.n > 1);
        let Ok(set) = enumerate(&sc) else { return Ok(()) };
        let over_p = sc.field.places_over(sc.p).unwrap();
        let deg = sc.field.degree();
        for s in &set.solutions {
            for x in s.jl.values().chain(s.lp.values()) {
                prop_assert!(x.is_killed_by(2));
            }
            prop_assert!(over_p.iter().all(|v| s.jl_at(v) == s.jl_at(&over_p[0])));
            prop_assert!(over_p.iter().all(|v| s.lp_at(v) == s.lp_at(&over_p[0])));
            if over_p.len() % 2 == 1 {
                for v in &over_p {
                    prop_assert_eq!(&s.jl_at(v) + &s.lp_at(v), CyclicRational::from_parts(deg as i64, 2));
                }
            }
            if over_p.len() == 1 {
                prop_assert_eq!(&s.jl_at(&over_p[0]) + &s.lp_at(&over_p[0]), constraint_p_sum(&sc));
            }
        }
    }
}
