//! Structural invariants checked on random small diagrams.

use bratteli::classify::{back_and_forth, homeomorphic, is_good, HomeoStatus, MeasureObject};
use bratteli::construct::{add_infinite_components, odometer_from_grouplike, vershik_successor, OdometerOrder};
use bratteli::diagram::{
    class_decomposition, cylinders_at_level, path_counts, ClopenSet, Cylinder, Diagram, StationaryDiagram,
};
use bratteli::exact::{FieldElement, NumberField, Rational, Tri, DEFAULT_CLOSURE_BOUND};
use bratteli::measure::{
    clopen_measure, cylinder_measure, ergodic_measures, ErgodicMeasure, LevelMeasure, MassClass, Value,
};
use bratteli::oracle::{subset_search, verify_invariance, EnumerationBudget};
use bratteli::svalues::{clopen_values, rec_member, ClopenValuesSet};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

const CAP: u64 = 200_000;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Square matrices with a positive diagonal, so every class is aperiodic.
fn diagram() -> impl Strategy<Value = StationaryDiagram> {
    (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0u64..=2, n), n).prop_flat_map(move |off| {
            proptest::collection::vec(1u64..=4, n).prop_map(move |diag| {
                let mut f = off.clone();
                for (i, row) in f.iter_mut().enumerate() {
                    row[i] = diag[i];
                }
                StationaryDiagram::new(f).expect("positive diagonal")
            })
        })
    })
}

fn measures(d: &StationaryDiagram) -> Vec<ErgodicMeasure> {
    ergodic_measures(d).unwrap_or_default()
}

fn example1(n: u64) -> StationaryDiagram {
    StationaryDiagram::new(vec![vec![n + 3, 0, 0, 0], vec![1, 2, 0, 0], vec![0, 1, n, 1], vec![0, 1, 1, n]]).unwrap()
}

fn additive_to<M: LevelMeasure>(m: &M, depth: usize) {
    let d = m.diagram();
    for level in 0..depth {
        for c in cylinders_at_level(d, level, CAP).unwrap() {
            let whole = cylinder_measure(m, &c);
            if !whole.is_finite() {
                continue;
            }
            let parts = c.children(d).iter().fold(Value::Finite(FieldElement::zero(m.field())), |acc, k| {
                acc.add(&cylinder_measure(m, k))
            });
            assert_eq!(whole, parts, "cylinder {}", c.label());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn path_counts_follow_the_recurrence(d in diagram()) {
        for level in 0..=4 {
            let h = path_counts(&d, level);
            let mut seen = vec![BigUint::from(0u32); h.len()];
            for c in cylinders_at_level(&d, level, CAP).unwrap() {
                seen[c.terminal()] += 1u32;
            }
            prop_assert_eq!(&seen, &h);
            let next: Vec<BigUint> = d.incidence(level + 1)
                .iter()
                .map(|row| row.iter().zip(&h).map(|(&e, x)| x * e).sum())
                .collect();
            prop_assert_eq!(next, path_counts(&d, level + 1));
        }
    }

    #[test]
    fn telescoping_keeps_classes(d in diagram(), k in 2usize..=3) {
        let c = class_decomposition(&d);
        let t = class_decomposition(&d.telescope(k).unwrap());
        prop_assert_eq!(&c.classes, &t.classes);
        prop_assert_eq!(&c.nontrivial, &t.nontrivial);
        prop_assert_eq!(&c.reaches, &t.reaches);
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_measure(d in diagram(), mask in proptest::collection::vec(0u8..3, 64)) {
        let mut cyls: Vec<Cylinder> = Vec::new();
        for (c, m) in cylinders_at_level(&d, 2, CAP).unwrap().into_iter().zip(mask.iter().cycle()) {
            match m {
                0 => {}
                1 => cyls.push(c),
                _ => cyls.extend(c.children(&d)),
            }
        }
        let n = ClopenSet::normalize(&d, &cyls);
        let again = ClopenSet::normalize(&d, &n.cylinders().cloned().collect::<Vec<_>>());
        prop_assert_eq!(&n, &again);
        for m in measures(&d) {
            let direct = cyls.iter().fold(Value::Finite(FieldElement::zero(m.field())), |acc, c| {
                acc.add(&cylinder_measure(&m, c))
            });
            prop_assert_eq!(clopen_measure(&m, &n), direct);
        }
    }

    #[test]
    fn measures_are_additive_and_eigen_consistent(d in diagram()) {
        for m in measures(&d) {
            prop_assert!(m.eigen_consistent());
            additive_to(&m, 3);
        }
    }

    #[test]
    fn lone_infinite_measure_has_null_defect(d in diagram()) {
        for m in measures(&d).into_iter().filter(|m| !m.is_finite()) {
            if let Ok(p) = m.defective_profile() {
                prop_assert_eq!(p.mass_class, MassClass::Zero);
            }
        }
    }

    #[test]
    fn homeomorphic_is_reflexive_and_symmetric(a in diagram(), b in diagram()) {
        let ms: Vec<MeasureObject> = measures(&a).into_iter().chain(measures(&b)).map(MeasureObject::Ergodic).collect();
        for x in &ms {
            prop_assert_eq!(homeomorphic(x, x, DEFAULT_CLOSURE_BOUND).unwrap().verdict, HomeoStatus::Homeomorphic);
            for y in &ms {
                let xy = homeomorphic(x, y, DEFAULT_CLOSURE_BOUND).map(|v| v.verdict).ok();
                let yx = homeomorphic(y, x, DEFAULT_CLOSURE_BOUND).map(|v| v.verdict).ok();
                prop_assert_eq!(xy, yx);
            }
        }
    }

    #[test]
    fn goodness_ignores_rescaling(d in diagram(), num in 1i64..=9, den in 1i64..=9) {
        for m in measures(&d) {
            let c = FieldElement::from_rational(m.field(), rat(num, den));
            prop_assert_eq!(
                is_good(&m, DEFAULT_CLOSURE_BOUND).verdict,
                is_good(&m.rescaled(&c), DEFAULT_CLOSURE_BOUND).verdict
            );
        }
    }

    #[test]
    fn extra_infinite_components_keep_invariants(d in diagram(), i in 1usize..=2) {
        let classes = class_decomposition(&d);
        for m in measures(&d) {
            let d2 = add_infinite_components(&d, m.alpha(), i).unwrap();
            let c2 = class_decomposition(&d2);
            let n = d.vertex_count();
            let fresh: Vec<usize> = (n..n + i).map(|v| c2.class_of[v]).collect();
            prop_assert!(fresh.iter().all(|c| c2.minimal_classes().contains(c)));
            // The new classes precede α, so α stops being minimal if it was.
            // An infinite μ already has a nontrivial class before α.
            let was_minimal = classes.minimal_classes().contains(&m.alpha());
            prop_assert!(!(was_minimal && !m.is_finite()));
            prop_assert_eq!(c2.minimal_classes().len(), classes.minimal_classes().len() + i - was_minimal as usize);
            let alpha2 = c2.class_of[m.alpha_vertices()[0]];
            let m2 = measures(&d2).into_iter().find(|x| x.alpha() == alpha2).expect("class keeps its measure");
            prop_assert!(!m2.is_finite());
            let (s, s2) = (clopen_values(&m).unbounded(), clopen_values(&m2).unbounded());
            prop_assert_ne!(s.equals(&s2, DEFAULT_CLOSURE_BOUND).unwrap(), Tri::No);
            prop_assert_eq!(is_good(&m, DEFAULT_CLOSURE_BOUND).verdict, is_good(&m2, DEFAULT_CLOSURE_BOUND).verdict);
        }
    }
}

#[test]
fn additivity_is_exhaustive_on_example1() {
    for n in [3, 4] {
        for m in measures(&example1(n)) {
            additive_to(&m, 5);
        }
    }
}

#[test]
fn path_counts_match_enumeration_to_level_six() {
    let d = example1(3);
    for level in 0..=6 {
        let total: BigUint = path_counts(&d, level).iter().sum();
        assert_eq!(total, BigUint::from(cylinders_at_level(&d, level, 1_000_000).unwrap().len()));
    }
}

fn odometer(gens: &[Rational], lambda: i64) -> bratteli::construct::OdometerMeasure {
    odometer_from_grouplike(&ClopenValuesSet::rational(gens, Some(lambda)).unwrap()).unwrap()
}

#[test]
fn reciprocal_probes() {
    let sixth = ClopenValuesSet::rational(&[rat(1, 1)], Some(6)).unwrap();
    let fifth = ClopenValuesSet::rational(&[rat(1, 25)], Some(2)).unwrap();
    for n in 1..=200u64 {
        let smooth = {
            let mut k = n;
            for p in [2, 3] {
                while k % p == 0 {
                    k /= p;
                }
            }
            k == 1
        };
        assert_eq!(rec_member(&sixth, n).unwrap(), smooth, "1/{n} in Z[1/6]");
        let two_adic = n >> n.trailing_zeros();
        assert_eq!(rec_member(&fifth, n).unwrap(), matches!(two_adic, 1 | 5 | 25), "1/{n} in Z[1/2]/25");
    }
}

#[test]
fn vershik_map_preserves_odometer_measures() {
    for (gens, lambda, depth) in [(vec![rat(1, 1), rat(1, 6)], 6, 6), (vec![rat(1, 25)], 2, 6), (vec![rat(1, 1)], 10, 4)] {
        let odo = odometer(&gens, lambda);
        let fr = odo.finite_rank();
        let ok = verify_invariance(
            fr,
            |c| vershik_successor(fr, c, OdometerOrder::Lexicographic),
            |c| cylinder_measure(&odo, c),
            depth,
            2_000_000,
        )
        .unwrap();
        assert!(ok, "generators {gens:?}, λ = {lambda}");
    }
}

#[test]
fn certified_cells_certify_their_union() {
    let d = example1(3);
    let m = measures(&d).into_iter().find(|m| m.alpha_vertices() == [2, 3]).unwrap();
    let budget = EnumerationBudget { max_cells: 500_000, ..EnumerationBudget::with_level(6) };
    let q = NumberField::rationals();
    let cells: Vec<ClopenSet> = cylinders_at_level(&d, 2, CAP)
        .unwrap()
        .into_iter()
        .filter(|c| cylinder_measure(&m, c).is_finite())
        .take(3)
        .map(|c| ClopenSet::normalize(&d, &[c]))
        .collect();
    let union = ClopenSet::normalize(&d, &cells.iter().flat_map(|c| c.cylinders().cloned()).collect::<Vec<_>>());
    let targets: Vec<FieldElement> = clopen_values(&m)
        .rational_elements(3, &rat(1, 1))
        .unwrap()
        .into_iter()
        .map(|x| FieldElement::from_rational(&q, x))
        .collect();
    let certified = |v: &ClopenSet| {
        let total = clopen_measure(&m, v).finite().unwrap().clone();
        targets.iter().filter(|w| **w <= total).all(|w| subset_search(&m, v, w, &budget).unwrap().is_found())
    };
    assert!(cells.iter().all(certified));
    assert!(certified(&union));
}

#[test]
fn certificates_never_contradict_verdicts() {
    let q_odo = |lambda| MeasureObject::Odometer(odometer(&[rat(1, 1)], lambda));
    let st = |f: Vec<Vec<u64>>| {
        MeasureObject::Ergodic(measures(&StationaryDiagram::new(f).unwrap()).into_iter().next().unwrap())
    };
    let objects = [q_odo(2), q_odo(6), st(vec![vec![2]]), st(vec![vec![4]]), st(vec![vec![6, 6], vec![0, 7]])];
    let budget = EnumerationBudget { max_level: 10, max_cells: 200_000, ..EnumerationBudget::default() };
    let mut certified = 0;
    for a in &objects {
        for b in &objects {
            if back_and_forth(a, b, 1, &budget, DEFAULT_CLOSURE_BOUND).is_ok() {
                certified += 1;
                let v = homeomorphic(a, b, DEFAULT_CLOSURE_BOUND).unwrap();
                assert_ne!(v.verdict, HomeoStatus::NotHomeomorphic);
            }
        }
    }
    assert!(certified >= objects.len());
}
