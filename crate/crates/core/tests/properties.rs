//! Property tests over the public API: schedule shape, box arithmetic,
//! update-rule structure, and whole-run invariants on randomized inputs.

use iwso_core::iwso::{
    elimination_factor, expected_match, matchmaker_factor, optimize, update_candidate, IwsoParams,
};
use iwso_core::{DrawSource, RandomSource, SearchSpace, StopReason, WeightedObjective};
use proptest::prelude::*;

fn params_with_schedules() -> impl Strategy<Value = IwsoParams> {
    (0.01f64..3.0, 0.01f64..3.0, 0.01f64..3.0, 0.01f64..3.0, 1usize..400).prop_map(
        |(a, b, c, d, t_max)| IwsoParams {
            m_max: a.max(b),
            m_min: a.min(b),
            alpha_min: c.min(d),
            alpha_max: c.max(d),
            t_max,
            ..IwsoParams::default()
        },
    )
}

proptest! {
    #[test]
    fn matchmaker_matches_closed_form_and_decreases(params in params_with_schedules()) {
        let t_max = params.t_max;
        let mut previous = f64::INFINITY;
        for t in 0..=t_max {
            let m = matchmaker_factor(t, &params).unwrap();
            let expected = params.m_max
                - (t as f64 / t_max as f64) * (params.m_max - params.m_min);
            prop_assert!((m - expected).abs() <= 1e-12);
            prop_assert!(m <= previous + 1e-12);
            previous = m;
        }
        prop_assert_eq!(matchmaker_factor(0, &params).unwrap(), params.m_max);
        prop_assert!((matchmaker_factor(t_max, &params).unwrap() - params.m_min).abs() <= 1e-12);
        prop_assert!(matchmaker_factor(t_max + 1, &params).is_err());
    }

    #[test]
    fn elimination_matches_closed_form_and_increases(params in params_with_schedules()) {
        let t_max = params.t_max;
        let mut previous = f64::NEG_INFINITY;
        for t in 0..=t_max {
            let a = elimination_factor(t, &params).unwrap();
            let expected = params.alpha_min
                + (t as f64 / t_max as f64) * (params.alpha_max - params.alpha_min);
            prop_assert!((a - expected).abs() <= 1e-12);
            prop_assert!(a >= previous - 1e-12);
            previous = a;
        }
        prop_assert_eq!(elimination_factor(0, &params).unwrap(), params.alpha_min);
        prop_assert!(
            (elimination_factor(t_max, &params).unwrap() - params.alpha_max).abs() <= 1e-12
        );
        prop_assert!(elimination_factor(t_max + 1, &params).is_err());
    }

    #[test]
    fn schedules_are_linear_in_t(
        params in params_with_schedules(),
        raw_t1 in 0usize..400,
        raw_t2 in 0usize..400,
    ) {
        // Linearity: the value at the midpoint of two iterations is the mean
        // of the values at those iterations.
        let t1 = raw_t1 % (params.t_max + 1);
        let mut t2 = raw_t2 % (params.t_max + 1);
        if (t1 + t2) % 2 != 0 {
            t2 = if t2 > 0 { t2 - 1 } else { t2 + 1 };
        }
        let mid = (t1 + t2) / 2;
        let m1 = matchmaker_factor(t1, &params).unwrap();
        let m2 = matchmaker_factor(t2, &params).unwrap();
        let m_mid = matchmaker_factor(mid, &params).unwrap();
        prop_assert!((m1 + m2 - 2.0 * m_mid).abs() <= 1e-12);
        let a1 = elimination_factor(t1, &params).unwrap();
        let a2 = elimination_factor(t2, &params).unwrap();
        let a_mid = elimination_factor(mid, &params).unwrap();
        prop_assert!((a1 + a2 - 2.0 * a_mid).abs() <= 1e-12);
    }

    #[test]
    fn clamp_is_idempotent_and_lands_inside(
        bounds in prop::collection::vec((-100.0f64..100.0, 0.5f64..50.0), 1..10),
        scale in 1.0f64..10.0,
    ) {
        let lower: Vec<f64> = bounds.iter().map(|(lo, _)| *lo).collect();
        let upper: Vec<f64> = bounds.iter().map(|(lo, w)| lo + w).collect();
        let space = SearchSpace::new(lower.clone(), upper.clone()).unwrap();
        // Points far outside the box in both directions.
        let point: Vec<f64> = bounds
            .iter()
            .enumerate()
            .map(|(i, (lo, w))| if i % 2 == 0 { lo - scale * w } else { lo + (1.0 + scale) * w })
            .collect();
        let once = space.clamp(&point).unwrap();
        let twice = space.clamp(&once).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(space.contains(&once));
    }

    #[test]
    fn uniform_samples_are_feasible(
        seed in any::<u64>(),
        dim in 1usize..16,
        lo in -50.0f64..50.0,
        width in 0.1f64..100.0,
    ) {
        let space = SearchSpace::uniform(dim, lo, lo + width).unwrap();
        let mut rng = RandomSource::new(seed);
        for _ in 0..20 {
            prop_assert!(space.contains(&space.sample_uniform(&mut rng)));
        }
    }

    #[test]
    fn update_is_translation_equivariant(
        seed in any::<u64>(),
        coords in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0, -50.0f64..50.0), 1..8),
        m in 0.0f64..2.0,
        r1 in 0.0f64..1.0,
    ) {
        // A box wide enough that neither the original nor the shifted update
        // can touch a bound, which would break the symmetry.
        let dim = coords.len();
        let space = SearchSpace::uniform(dim, -1e6, 1e6).unwrap();
        let position: Vec<f64> = coords.iter().map(|(x, _, _)| *x).collect();
        let best: Vec<f64> = coords.iter().map(|(_, b, _)| *b).collect();
        let shift: Vec<f64> = coords.iter().map(|(_, _, s)| *s).collect();
        let shifted_position: Vec<f64> =
            position.iter().zip(&shift).map(|(x, s)| x + s).collect();
        let shifted_best: Vec<f64> = best.iter().zip(&shift).map(|(b, s)| b + s).collect();

        let mut rng_a = RandomSource::new(seed);
        let mut rng_b = RandomSource::new(seed);
        let moved =
            update_candidate(&position, &best, m, Some(r1), &mut rng_a, &space).unwrap();
        let moved_shifted =
            update_candidate(&shifted_position, &shifted_best, m, Some(r1), &mut rng_b, &space)
                .unwrap();
        for k in 0..dim {
            prop_assert!((moved_shifted[k] - (moved[k] + shift[k])).abs() <= 1e-9);
        }
    }

    #[test]
    fn expected_match_of_positive_fitnesses_is_a_share(
        fitnesses in prop::collection::vec(1e-3f64..1e6, 1..12),
    ) {
        let best = fitnesses.iter().copied().fold(f64::INFINITY, f64::min);
        let sum: f64 = fitnesses.iter().sum();
        let e = expected_match(&fitnesses, best);
        prop_assert!((e - best / sum).abs() <= 1e-12 * (1.0 + e.abs()));
        prop_assert!(e > 0.0 && e <= 1.0);
    }

    #[test]
    fn normalized_weights_are_accepted_and_perturbed_ones_rejected(
        raw in prop::collection::vec(1e-3f64..10.0, 1..6),
    ) {
        let sum: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / sum).collect();
        let make_components = || {
            weights
                .iter()
                .map(|_| {
                    Box::new(|x: &[f64]| x.iter().sum::<f64>()) as Box<dyn FnMut(&[f64]) -> f64 + Send>
                })
                .collect::<Vec<_>>()
        };
        prop_assert!(WeightedObjective::new(make_components(), weights.clone()).is_ok());

        let mut off = weights.clone();
        off[0] += 1e-3;
        prop_assert!(WeightedObjective::new(make_components(), off).is_err());
    }

    #[test]
    fn whole_runs_keep_their_invariants(
        seed in any::<u64>(),
        dim in 1usize..5,
        pop_size in 2usize..10,
        t_max in 1usize..25,
    ) {
        let space = SearchSpace::uniform(dim, -4.0, 6.0).unwrap();
        let mut objective =
            WeightedObjective::single(|x: &[f64]| x.iter().map(|v| v * v).sum());
        let params = IwsoParams { pop_size, t_max, ..IwsoParams::default() };
        let result = optimize(&mut objective, &space, &params, seed).unwrap();

        prop_assert_eq!(result.stop_reason, StopReason::Budget);
        prop_assert_eq!(result.trace.len(), t_max + 1);
        prop_assert_eq!(result.evaluations, (pop_size * (t_max + 1)) as u64);
        prop_assert!(space.contains(&result.best_point));
        prop_assert!(result.best_series_is_monotone());
        prop_assert_eq!(result.trace.last().unwrap().best_fitness, result.best_fitness);
        for (t, record) in result.trace.iter().enumerate() {
            prop_assert_eq!(record.iteration, t);
            prop_assert!(record.mean_fitness >= record.best_fitness - 1e-12);
            let m = matchmaker_factor(t, &params).unwrap();
            let alpha = elimination_factor(t, &params).unwrap();
            prop_assert!((record.matchmaker_m - m).abs() <= 1e-12);
            prop_assert!((record.alpha - alpha).abs() <= 1e-12);
        }
    }
}

#[test]
fn update_draw_order_is_stable_between_fixed_and_drawn_r1() {
    // With fixed_r1 the stream position after an update must equal the
    // drawn-r1 stream position minus exactly one leading draw.
    let space = SearchSpace::uniform(3, -10.0, 10.0).unwrap();
    let position = [1.0, 2.0, 3.0];
    let best = [0.0, 0.5, -1.0];

    let mut drawn_rng = RandomSource::new(99);
    let r1 = drawn_rng.uniform01();
    let mut fixed_rng = RandomSource::new(77);
    let from_fixed =
        update_candidate(&position, &best, 0.7, Some(r1), &mut fixed_rng, &space).unwrap();

    let mut replay = RandomSource::new(77);
    let eps: Vec<f64> = (0..3).map(|_| replay.uniform_sym()).collect();
    for k in 0..3 {
        let expected = position[k] + r1 * (best[k] - position[k]) + 0.7 * eps[k];
        assert!((from_fixed[k] - expected).abs() <= 1e-15);
    }
}
