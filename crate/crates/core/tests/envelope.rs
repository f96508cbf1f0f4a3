use proptest::prelude::*;
use risopt_core::angle::{normalize, PI, TWO_PI};
use risopt_core::interval::{
    active_intersections, active_intervals, common_range, crc_case, curve_value, ActiveInterval,
    AngularInterval, CrcCase,
};
use risopt_core::sample::{uniform_phase, RealizationStream};
use risopt_core::{ConfigurationSet, CouplingParams, ReflectionChoice};

fn arc(l: f64, r: f64) -> AngularInterval {
    AngularInterval::new(l, r).unwrap()
}

fn ends(x: Option<AngularInterval>) -> Option<(f64, f64)> {
    x.map(|a| (a.left(), a.right()))
}

type Arc = (f64, f64);

/// One representative pair per row, with the row's own output formula.
#[test]
fn common_range_table_rows() {
    let rows: [(CrcCase, Arc, Arc, Option<Arc>); 9] = [
        (CrcCase::I, (1.0, 3.0), (2.0, 4.0), Some((2.0, 3.0))),
        (CrcCase::II, (1.0, 2.0), (3.0, 4.0), None),
        (CrcCase::III, (5.0, 1.0), (4.0, 2.0), Some((5.0, 1.0))),
        (CrcCase::IV, (5.0, 1.0), (2.0, 3.0), None),
        (CrcCase::V, (5.0, 1.0), (4.0, 5.5), Some((5.0, 5.5))),
        (CrcCase::VI, (5.0, 1.0), (0.5, 3.0), Some((0.5, 1.0))),
        (CrcCase::VII, (2.0, 3.0), (5.0, 1.0), None),
        (CrcCase::VIII, (0.5, 3.0), (5.0, 1.0), Some((0.5, 1.0))),
        (CrcCase::IX, (4.0, 5.5), (5.0, 1.0), Some((5.0, 5.5))),
    ];
    for (case, (l1, r1), (l2, r2), want) in rows {
        let (a, b) = (arc(l1, r1), arc(l2, r2));
        assert_eq!(crc_case(&a, &b), case, "{case:?}");
        assert_eq!(ends(common_range(&a, &b)), want, "{case:?}");
        assert_eq!(ends(common_range(&b, &a)), want, "{case:?} swapped");
    }
}

/// Randomized matrix: every row is hit many times and each output matches
/// the table's formula for that row.
#[test]
fn common_range_table_formulas() {
    let mut rng = RealizationStream::new(9).rng(0);
    let mut phase = || uniform_phase(&mut rng);
    let mut seen = std::collections::HashMap::new();
    for _ in 0..50_000 {
        let (a, b) = loop {
            let a = AngularInterval::new(phase(), phase());
            let b = AngularInterval::new(phase(), phase());
            if let (Some(a), Some(b)) = (a, b) {
                break (a, b);
            }
        };
        let (l1, r1, l2, r2) = (a.left(), a.right(), b.left(), b.right());
        let case = crc_case(&a, &b);
        *seen.entry(case).or_insert(0usize) += 1;
        let want = match case {
            CrcCase::I | CrcCase::III => Some((l1.max(l2), r1.min(r2))),
            CrcCase::V | CrcCase::IX => Some((l1.max(l2), r1.max(r2))),
            CrcCase::VI | CrcCase::VIII => Some((l1.min(l2), r1.min(r2))),
            _ => None,
        };
        assert_eq!(ends(common_range(&a, &b)), want);
    }
    use CrcCase::*;
    for case in [I, II, III, IV, V, VI, VII, VIII, IX] {
        assert!(
            seen.get(&case).copied().unwrap_or(0) > 100,
            "{case:?} rarely hit"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn common_range_is_symmetric(a in (0.0f64..TWO_PI, 0.0f64..TWO_PI), b in (0.0f64..TWO_PI, 0.0f64..TWO_PI)) {
        let (Some(a), Some(b)) = (AngularInterval::new(a.0, a.1), AngularInterval::new(b.0, b.1)) else {
            return Ok(());
        };
        prop_assert_eq!(common_range(&a, &b), common_range(&b, &a));
    }

    /// Membership oracle: away from endpoints, x is in the common range iff
    /// it is in both arcs (a double overlap keeps only one of its pieces).
    #[test]
    fn common_range_matches_membership(
        a in (0.0f64..TWO_PI, 0.0f64..TWO_PI),
        b in (0.0f64..TWO_PI, 0.0f64..TWO_PI),
        x in 0.0f64..TWO_PI,
    ) {
        let (Some(a), Some(b)) = (AngularInterval::new(a.0, a.1), AngularInterval::new(b.0, b.1)) else {
            return Ok(());
        };
        if a.length() + b.length() >= TWO_PI {
            return Ok(());
        }
        let near = |y: f64| {
            let d = normalize(x - y);
            d.min(TWO_PI - d) < 1e-9
        };
        prop_assume!(![a.left(), a.right(), b.left(), b.right()].into_iter().any(near));
        let both = a.contains(x) && b.contains(x);
        let cr = common_range(&a, &b).is_some_and(|c| c.contains(x));
        prop_assert_eq!(both, cr);
    }
}

fn random_set() -> impl Strategy<Value = ConfigurationSet> {
    prop_oneof![
        proptest::collection::vec(0.0f64..TWO_PI, 2..=8).prop_map(|ph| {
            ConfigurationSet::from_phases(&ph, &CouplingParams::practical()).unwrap()
        }),
        proptest::collection::vec((0.0f64..TWO_PI, 0.05f64..=1.0), 2..=8).prop_map(|cs| {
            ConfigurationSet::from_choices(cs.into_iter().map(|(a, b)| ReflectionChoice::raw(a, b)))
                .unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Each curve owns at most one arc, the arcs tile the circle, and a
    /// dense grid argmax agrees with the arc owner away from boundaries.
    #[test]
    fn active_intervals_partition_circle(set in random_set(), v_phase in 0.0f64..TWO_PI) {
        let arcs = active_intervals(&set, v_phase);
        let mut owners: Vec<usize> = arcs.iter().map(|(i, _)| *i).collect();
        owners.dedup();
        prop_assert_eq!(owners.len(), arcs.len());
        let total: f64 = arcs
            .iter()
            .map(|(_, a)| match a {
                ActiveInterval::FullCircle => TWO_PI,
                ActiveInterval::Arc(a) => a.length(),
            })
            .sum();
        prop_assert!((total - TWO_PI).abs() < 1e-9, "total {}", total);

        let list = active_intersections(&set, v_phase);
        let bounds: Vec<f64> = list.boundaries().collect();
        let steps = (TWO_PI / 1e-3) as usize;
        for s in 0..steps {
            let x = s as f64 * 1e-3;
            if bounds.iter().any(|&b| {
                let d = normalize(x - b);
                d.min(TWO_PI - d) < 1e-6
            }) {
                continue;
            }
            let vals: Vec<f64> = set.iter().map(|c| curve_value(x, c, v_phase)).collect();
            let top = vals.iter().cloned().fold(f64::MIN, f64::max);
            let owner = list.choice_at(x);
            prop_assert!(vals[owner] >= top - 1e-12, "x={} owner={}", x, owner);
        }
    }
}

#[test]
fn antipodal_equal_pair_splits_in_half() {
    let set = ConfigurationSet::from_choices([
        ReflectionChoice::raw(0.0, 1.0),
        ReflectionChoice::raw(PI, 1.0),
    ])
    .unwrap();
    let arcs = active_intervals(&set, 0.0);
    assert_eq!(arcs.len(), 2);
    for (_, a) in arcs {
        let ActiveInterval::Arc(a) = a else {
            panic!("expected an arc")
        };
        assert!((a.length() - PI).abs() < 1e-12);
    }
}
