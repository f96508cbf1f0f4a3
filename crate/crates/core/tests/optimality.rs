use proptest::prelude::*;
use risopt_core::angle::{normalize, TWO_PI};
use risopt_core::interval::active_intersections;
use risopt_core::optimize::{
    all_element_intersections, best_choice_for_phase, element_intersections, DEFAULT_EXHAUSTIVE_CAP,
};
use risopt_core::select::evenly_spaced_set;
use risopt_core::{
    cpp_optimize, exhaustive_optimize, improved_cpp_optimize, optimize, overall_channel,
    ChannelRealization, ConfigurationSet, CouplingParams, LinkParams, ReflectionChoice,
};

/// Plain brute force with std floats: every pick vector, |h|² by hand.
fn brute_force_norm(r: &ChannelRealization, set: &ConfigurationSet) -> f64 {
    let n = r.num_elements();
    let k = set.len();
    let mut best = 0.0f64;
    for code in 0..k.pow(n as u32) {
        let (mut re, mut im) = (r.h0().re, r.h0().im);
        let mut c = code;
        for e in 0..n {
            let ch = set[c % k];
            c /= k;
            let (vm, vp) = (r.v()[e].norm(), r.v_phases()[e]);
            re += vm * ch.beta() * (vp + ch.alpha()).cos();
            im += vm * ch.beta() * (vp + ch.alpha()).sin();
        }
        best = best.max(re * re + im * im);
    }
    best
}

fn instance() -> impl Strategy<Value = (ChannelRealization, ConfigurationSet)> {
    let set = prop_oneof![
        proptest::collection::vec(0.0f64..TWO_PI, 1..=4).prop_map(|ph| {
            ConfigurationSet::from_phases(&ph, &CouplingParams::practical()).unwrap()
        }),
        proptest::collection::vec((0.0f64..TWO_PI, 0.0f64..=1.0), 1..=4).prop_map(|cs| {
            ConfigurationSet::from_choices(cs.into_iter().map(|(a, b)| ReflectionChoice::raw(a, b)))
                .unwrap()
        }),
    ];
    let channel = (
        0.0f64..2.0,
        0.0f64..TWO_PI,
        proptest::collection::vec((0.1f64..1.0, 0.0f64..TWO_PI), 1..=7),
    )
        .prop_map(|(hm, hp, v)| ChannelRealization::from_polar((hm, hp), &v).unwrap());
    (channel, set)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sweep_matches_exhaustive((r, set) in instance()) {
        let link = LinkParams::default();
        let fast = optimize(&r, &set, &link);
        let slow = exhaustive_optimize(&r, &set, &link, DEFAULT_EXHAUSTIVE_CAP).unwrap();
        prop_assert!(rel(fast.magnitude(), slow.magnitude()) < 1e-9);
        prop_assert!(rel(fast.h_opt.norm_sqr(), brute_force_norm(&r, &set)) < 1e-9);
        prop_assert!(fast.regions_examined <= r.num_elements() * set.len() + 1);
        let h = overall_channel(&r, &set, &fast.picks).unwrap();
        prop_assert!((h - fast.h_opt).norm() < 1e-12);
    }

    #[test]
    fn no_single_flip_improves((r, set) in instance()) {
        let res = optimize(&r, &set, &LinkParams::default());
        let base = res.h_opt.norm_sqr();
        for n in 0..r.num_elements() {
            for alt in 0..set.len() {
                let mut picks = res.picks.clone();
                picks[n] = alt;
                let h = overall_channel(&r, &set, &picks).unwrap();
                prop_assert!(h.norm_sqr() <= base * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn rotation_invariance((r, set) in instance(), delta in 0.0f64..TWO_PI) {
        let link = LinkParams::default();
        let polar = |z: risopt_core::Complex64, p: f64| (z.norm(), p + delta);
        let v: Vec<(f64, f64)> = r.v().iter().zip(r.v_phases()).map(|(z, &p)| polar(*z, p)).collect();
        let h0 = polar(r.h0(), r.h0().arg());
        let rotated = ChannelRealization::from_polar(h0, &v).unwrap();
        let a = optimize(&r, &set, &link);
        let b = optimize(&rotated, &set, &link);
        prop_assert!(rel(a.magnitude(), b.magnitude()) < 1e-9);
        prop_assert!(rel(a.capacity_bits_per_s, b.capacity_bits_per_s) < 1e-9);
        if a.h_opt.norm() > 1e-9 {
            let shift = normalize(b.h_opt.arg() - a.h_opt.arg());
            let d = normalize(shift - delta);
            prop_assert!(d.min(TWO_PI - d) < 1e-6);
        }
    }

    #[test]
    fn sweep_beats_projection_baselines((r, set) in instance()) {
        prop_assume!(r.h0().norm() > 0.0);
        let link = LinkParams::default();
        let best = optimize(&r, &set, &link).capacity_bits_per_s;
        let imp = improved_cpp_optimize(&r, &set, &link).unwrap().capacity_bits_per_s;
        let cpp = cpp_optimize(&r, &set, &link).unwrap().capacity_bits_per_s;
        prop_assert!(best >= imp * (1.0 - 1e-12));
        prop_assert!(best >= cpp * (1.0 - 1e-12));
        prop_assert!(imp >= 0.0);
    }

    #[test]
    fn best_choice_is_inner_product_argmax(
        (r, set) in instance(),
        h_phase in 0.0f64..TWO_PI,
    ) {
        // ⟨h*, g⟩ = Re(h*·conj(g)) with a unit-magnitude h*
        let vp = r.v_phases()[0];
        let vm = r.v()[0].norm();
        let ip = |c: &ReflectionChoice| {
            let g_phase = vp + c.alpha();
            let (gr, gi) = (vm * c.beta() * g_phase.cos(), vm * c.beta() * g_phase.sin());
            h_phase.cos() * gr + h_phase.sin() * gi
        };
        let pick = best_choice_for_phase(h_phase, vp, &set);
        let best = set.iter().map(ip).fold(f64::MIN, f64::max);
        prop_assert!(ip(&set[pick]) >= best - 1e-12 * vm.max(1.0));
    }

    #[test]
    fn shifted_breakpoints_match_direct((r, set) in instance()) {
        let shifted = element_intersections(&r, &set);
        for (n, list) in shifted.iter().enumerate() {
            let direct = active_intersections(&set, r.v_phases()[n]);
            let a: Vec<f64> = list.boundaries().collect();
            let b: Vec<f64> = direct.boundaries().collect();
            prop_assert_eq!(a.len(), b.len());
            let mut b_sorted = b.clone();
            b_sorted.sort_by(f64::total_cmp);
            for (x, y) in a.iter().zip(&b_sorted) {
                let d = normalize(x - y);
                prop_assert!(d.min(TWO_PI - d) < 1e-9);
            }
        }
        let merged = all_element_intersections(&r, &set);
        prop_assert!(merged.len() <= r.num_elements() * set.len());
        prop_assert!(merged.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn k2_even_cpp_variants_agree() {
    let set = evenly_spaced_set(2, &CouplingParams::practical()).unwrap();
    let link = LinkParams::default();
    let stream = risopt_core::sample::RealizationStream::new(11);
    let spec = risopt_core::sample::ChannelSpec {
        elements: 32,
        v_magnitude: 1e-7,
        h0_magnitude: 1e-7,
        h0_phase: 0.0,
    };
    for rep in 0..200 {
        let r = stream.realization(rep, &spec).unwrap();
        let a = cpp_optimize(&r, &set, &link).unwrap();
        let b = improved_cpp_optimize(&r, &set, &link).unwrap();
        assert_eq!(a.picks, b.picks);
    }
}

#[test]
fn improved_cpp_is_best_choice_at_direct_phase() {
    let set = evenly_spaced_set(4, &CouplingParams::practical()).unwrap();
    let r =
        ChannelRealization::from_polar((0.3, 1.1), &[(1.0, 0.2), (0.5, 2.9), (0.8, 5.0)]).unwrap();
    let res = improved_cpp_optimize(&r, &set, &LinkParams::default()).unwrap();
    for (n, &p) in res.picks.iter().enumerate() {
        assert_eq!(p, best_choice_for_phase(1.1, r.v_phases()[n], &set));
    }
}

#[test]
fn strong_direct_path_makes_improved_cpp_optimal() {
    // ∠h* stays within asin(Σ|v_n| / |h₀|) of ∠h₀; elements with no breakpoint
    // inside that arc must pick the same choice either way
    let set = evenly_spaced_set(4, &CouplingParams::practical()).unwrap();
    let link = LinkParams::default();
    let stream = risopt_core::sample::RealizationStream::new(5);
    let n = 16;
    let h0_phase = 0.7;
    let spec = risopt_core::sample::ChannelSpec {
        elements: n,
        v_magnitude: 1e-7,
        h0_magnitude: 100.0 * n as f64 * 1e-7,
        h0_phase,
    };
    let arc = (1.0f64 / 100.0).asin();
    let mut identical = 0;
    for rep in 0..200 {
        let r = stream.realization(rep, &spec).unwrap();
        let a = optimize(&r, &set, &link);
        let b = improved_cpp_optimize(&r, &set, &link).unwrap();
        let lists = element_intersections(&r, &set);
        for (e, list) in lists.iter().enumerate() {
            let near = list.boundaries().any(|x| {
                let d = normalize(x - h0_phase);
                d.min(TWO_PI - d) <= arc
            });
            if !near {
                assert_eq!(a.picks[e], b.picks[e], "replicate {rep} element {e}");
            }
        }
        assert!(rel(a.capacity_bits_per_s, b.capacity_bits_per_s) < 1e-3);
        identical += usize::from(a.picks == b.picks);
    }
    assert!(identical > 100, "only {identical} of 200 identical");
}

#[test]
fn k1_single_region() {
    let set = evenly_spaced_set(1, &CouplingParams::practical()).unwrap();
    let r = ChannelRealization::from_polar((0.0, 0.0), &[(1.0, 0.5), (1.0, 1.5)]).unwrap();
    let res = optimize(&r, &set, &LinkParams::default());
    assert_eq!(res.picks, vec![0, 0]);
    assert_eq!(res.regions_examined, 1);
    let beta = set[0].beta();
    assert!((res.magnitude() - 2.0 * beta * 0.5f64.cos()).abs() < 1e-12);
}
