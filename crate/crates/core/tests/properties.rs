mod common;

use braidgate::braid::{braid_relation_residuals, represent_word, ybe_residual, BraidWord, Letter};
use braidgate::entangler::{
    apply, multi_qubit_r, phase_gate_tau, r_from_m, swap_p, two_qubit_r, unitarity_residual, Mode,
};
use braidgate::matrix::DenseMatrix;
use braidgate::oracle::{peel_qubit, purity_concurrence_2q, try_factor};
use braidgate::random;
use braidgate::segre::{
    concurrence_2q, flattening, is_fully_separable, is_j_separable, max_abs_minor, measure_mq,
    minors_2x2, segre_generators, DEFAULT_TOL,
};
use braidgate::{State, C64};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn eq9<R: Rng>(rng: &mut R) -> braidgate::RMatrix {
    let p: [C64; 4] = std::array::from_fn(|_| random::unit_phase(rng));
    two_qubit_r(p[0], p[1], p[2], p[3], Mode::Gate).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn two_qubit_r_solves_ybe(seed in any::<u64>()) {
        let r = eq9(&mut rng(seed));
        prop_assert!(ybe_residual(&r).unwrap() < 1e-12);
        prop_assert!(unitarity_residual(r.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn r_from_unit_modulus_m_is_unitary_solution(seed in any::<u64>(), n in 2usize..=3) {
        let m = random::unit_modulus_matrix::<f64, _>(&mut rng(seed), n);
        let r = r_from_m(&m, Mode::Gate).unwrap();
        prop_assert!(unitarity_residual(r.matrix()).unwrap() < 1e-12);
        prop_assert!(ybe_residual(&r).unwrap() < 1e-12);
    }

    #[test]
    fn ybe_solution_satisfies_braid_relations_up_to_five_strands(seed in any::<u64>(), strands in 3usize..=5) {
        let r = eq9(&mut rng(seed));
        prop_assert!(ybe_residual(&r).unwrap() < 1e-12);
        let res = braid_relation_residuals(&r, strands).unwrap();
        prop_assert!(res.braid < 1e-11);
        prop_assert!(res.far_commutation < 1e-11);
    }

    #[test]
    fn unit_scaling_keeps_ybe(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = eq9(&mut g);
        let s = r.scale(random::unit_phase(&mut g));
        prop_assert!((ybe_residual(&r).unwrap() - ybe_residual(&s).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn words_of_unitary_r_are_unitary(seed in any::<u64>(), strands in 2usize..=4, len in 0usize..=20) {
        let mut g = rng(seed);
        let r = eq9(&mut g);
        let letters = (0..len)
            .map(|_| {
                let i = g.gen_range(1..strands);
                if g.gen_bool(0.5) { Letter::pos(i) } else { Letter::neg(i) }
            })
            .collect();
        let w = represent_word(&BraidWord::new(strands, letters).unwrap(), &r).unwrap();
        prop_assert!(unitarity_residual(&w).unwrap() < 1e-10);
    }

    #[test]
    fn uniform_input_yields_the_phases(seed in any::<u64>(), m in 2usize..=10) {
        let ph = random::phase_vector::<f64, _>(&mut rng(seed), m).unwrap();
        let out = apply(&multi_qubit_r(&ph, Mode::Gate).unwrap(), &State::uniform(m).unwrap()).unwrap();
        prop_assert_eq!(out.amplitudes(), ph.phases());
    }

    #[test]
    fn entangler_is_tau_times_swap(seed in any::<u64>(), m in 2usize..=6) {
        let ph = random::phase_vector::<f64, _>(&mut rng(seed), m).unwrap();
        let r = multi_qubit_r(&ph, Mode::Gate).unwrap();
        let tau = phase_gate_tau(&r).unwrap();
        prop_assert!(tau.is_diagonal());
        let rebuilt = &tau.to_dense().unwrap() * &swap_p(m).unwrap().to_dense().unwrap();
        prop_assert_eq!(rebuilt, r.to_dense().unwrap());
        prop_assert!(r.unitarity_residual() < 1e-12);
    }

    #[test]
    fn sparse_apply_agrees_with_dense(seed in any::<u64>(), m in 2usize..=6) {
        let mut g = rng(seed);
        let r = multi_qubit_r(&random::phase_vector(&mut g, m).unwrap(), Mode::Gate).unwrap();
        let s = random::state::<f64, _>(&mut g, m).unwrap();
        let sparse = apply(&r, &s).unwrap();
        let dense = r.to_dense().unwrap().mat_vec(s.amplitudes()).unwrap();
        for (a, b) in sparse.amplitudes().iter().zip(&dense) {
            prop_assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn rank_law_matches_peeling(seed in any::<u64>(), m in 2usize..=6) {
        let inst = common::partial_product(&mut rng(seed), m);
        for j in 1..=m {
            let minors = is_j_separable(&inst.state, j, DEFAULT_TOL).unwrap();
            let peel = peel_qubit(&inst.state, j, DEFAULT_TOL).unwrap().success;
            prop_assert_eq!(minors, peel);
            prop_assert_eq!(minors, inst.separable[j - 1]);
        }
    }

    #[test]
    fn two_qubit_concurrence_decides_factorization(seed in any::<u64>(), product in any::<bool>()) {
        let mut g = rng(seed);
        let s = if product {
            braidgate::qstate::product_state(&[random::qubit(&mut g), random::qubit(&mut g)]).unwrap()
        } else {
            random::state(&mut g, 2).unwrap()
        };
        let entangled = concurrence_2q(&s).unwrap() > 1e-10 * s.norm_squared();
        prop_assert_eq!(entangled, !try_factor(&s, 1e-8).unwrap().success);
        prop_assert_eq!(entangled, !product);
    }

    #[test]
    fn entangler_output_with_nonvanishing_minors_is_entangled(seed in any::<u64>(), m in 2usize..=5) {
        let ph = random::phase_vector::<f64, _>(&mut rng(seed), m).unwrap();
        let out = apply(&multi_qubit_r(&ph, Mode::Gate).unwrap(), &State::uniform(m).unwrap()).unwrap();
        let bound = DEFAULT_TOL * out.norm_squared();
        let all_nonvanishing = (1..=m).all(|j| {
            minors_2x2(&flattening(&out, j).unwrap()).iter().all(|v| v.norm() > bound)
        });
        if all_nonvanishing {
            prop_assert!(!is_fully_separable(&out, DEFAULT_TOL).unwrap());
            for j in 1..=m {
                prop_assert!(!peel_qubit(&out, j, DEFAULT_TOL).unwrap().success);
            }
        }
    }

    #[test]
    fn minors_scale_quadratically(seed in any::<u64>(), m in 2usize..=5) {
        let mut g = rng(seed);
        let k = g.gen_range(0..5);
        let inst = common::mixed_instance(&mut g, k, m);
        let s = &inst.state.normalized().unwrap();
        let lambda = C64::from_polar(g.gen_range(0.01..100.0), g.gen_range(0.0..6.0));
        let t = s.scale(lambda);
        for j in 1..=s.qubit_count() {
            let (a, b) = (minors_2x2(&flattening(s, j).unwrap()), minors_2x2(&flattening(&t, j).unwrap()));
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x * lambda * lambda - y).norm() <= 1e-12 * lambda.norm_sqr());
            }
            prop_assert_eq!(
                is_j_separable(s, j, DEFAULT_TOL).unwrap(),
                is_j_separable(&t, j, DEFAULT_TOL).unwrap()
            );
        }
        let (ms, mt) = (measure_mq(s).unwrap(), measure_mq(&t).unwrap());
        prop_assert!((ms * lambda.norm_sqr() - mt).abs() <= 1e-12 * lambda.norm_sqr());
    }

    #[test]
    fn qubit_permutation_permutes_flattenings(seed in any::<u64>(), m in 2usize..=5) {
        let mut g = rng(seed);
        let s = random::state::<f64, _>(&mut g, m).unwrap();
        let mut order: Vec<usize> = (1..=m).collect();
        order.shuffle(&mut g);
        let p = s.permute_qubits(&order).unwrap();
        prop_assert!((measure_mq(&s).unwrap() - measure_mq(&p).unwrap()).abs() < 1e-12);
        for (k, &q) in order.iter().enumerate() {
            let a = max_abs_minor(&p, k + 1).unwrap();
            let b = max_abs_minor(&s, q).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_concurrence_is_local_unitary_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = random::state::<f64, _>(&mut g, 2).unwrap().normalized().unwrap();
        let t = common::random_local_unitaries(&mut g, &s);
        prop_assert!((t.norm_squared() - 1.0).abs() < 1e-12);
        prop_assert!((concurrence_2q(&s).unwrap() - concurrence_2q(&t).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn purity_route_matches_determinant(seed in any::<u64>()) {
        let s = random::state::<f64, _>(&mut rng(seed), 2).unwrap();
        let direct = concurrence_2q(&s).unwrap() / s.norm_squared();
        prop_assert!((purity_concurrence_2q(&s).unwrap() - direct).abs() < 1e-10);
    }

    #[test]
    fn factor_verdict_is_scale_invariant(seed in any::<u64>(), exp in -3.0f64..=3.0) {
        let mut g = rng(seed);
        let k = g.gen_range(0..5);
        let inst = common::mixed_instance(&mut g, k, 6);
        let base = try_factor(&inst.state, DEFAULT_TOL).unwrap().success;
        let scaled = inst.state.scale(C64::from_polar(10f64.powf(exp), 1.1));
        prop_assert_eq!(base, try_factor(&scaled, DEFAULT_TOL).unwrap().success);
    }
}

#[test]
fn try_factor_matches_full_separability_seed_11() {
    let mut g = rng(11);
    for k in 0..500 {
        let inst = common::mixed_instance(&mut g, k, 6);
        let minors = is_fully_separable(&inst.state, DEFAULT_TOL).unwrap();
        let oracle = try_factor(&inst.state, DEFAULT_TOL).unwrap();
        assert_eq!(minors, oracle.success, "instance {k} ({})", inst.kind);
        assert_eq!(
            minors,
            inst.fully_separable(),
            "instance {k} ({})",
            inst.kind
        );
        if oracle.success {
            assert!(oracle.residual <= DEFAULT_TOL);
        }
    }
}

#[test]
fn purity_concurrence_agrees_seed_12() {
    let mut g = rng(12);
    for _ in 0..500 {
        let s = random::state::<f64, _>(&mut g, 2).unwrap();
        let direct = concurrence_2q(&s).unwrap() / s.norm_squared();
        assert!((purity_concurrence_2q(&s).unwrap() - direct).abs() < 1e-10);
    }
}

#[test]
fn generator_multiplicities_bounded_seed_13() {
    let mut g = rng(13);
    for m in 2..=5 {
        let s = random::state::<f64, _>(&mut g, m).unwrap();
        let report = segre_generators(&s).unwrap();
        let cols = 1usize << (m - 1);
        for per in &report.per_flattening {
            assert_eq!(per.len(), cols * (cols - 1) / 2);
        }
        let total: usize = report.distinct.iter().map(|d| d.multiplicity).sum();
        assert_eq!(total, report.raw_count());
        assert!(report
            .distinct
            .iter()
            .all(|d| (1..=m).contains(&d.multiplicity)));
    }
}

#[test]
fn f32_pipeline_runs() {
    let mut g = rng(14);
    let ph = random::phase_vector::<f32, _>(&mut g, 3).unwrap();
    let r = multi_qubit_r(&ph, Mode::Gate).unwrap();
    let out = apply(&r, &braidgate::State32::uniform(3).unwrap()).unwrap();
    assert_eq!(out.amplitudes(), ph.phases());
    let m = DenseMatrix::<f32>::from_fn(2, 2, |_, _| random::unit_phase(&mut g));
    assert!(ybe_residual(&r_from_m(&m, Mode::Gate).unwrap()).unwrap() < 1e-5);
}
