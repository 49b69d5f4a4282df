use disent_core::channels::{
    AffineBlochMap, BellMixture, EquatorialMachineParams, Party, PauliDiagonalMap,
};
use disent_core::disentangle::{optimize_equatorial, run_scenario, OptimizerConfig, Scenario};
use disent_core::qstate::{BlochVector, ComplexMatrix, DensityMatrix};
use disent_core::rng::SeededRng;
use disent_core::teleport::{
    bell_protocol_output, run_classical_protocol, teleport_party_of_bipartite,
};
use proptest::prelude::*;

fn bloch_strategy() -> impl Strategy<Value = BlochVector> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y, z)| {
        let n = (x * x + y * y + z * z).sqrt().max(1.0);
        BlochVector::new(x / n, y / n, z / n).unwrap()
    })
}

fn assert_state_invariants(rho: &DensityMatrix) {
    let m = rho.matrix();
    assert!(m.hermitian_deviation() <= 1e-12);
    assert!((m.trace().re - 1.0).abs() <= 1e-12 && m.trace().im.abs() <= 1e-12);
    assert!(rho.eigenvalues()[0] >= -1e-9);
}

proptest! {
    #[test]
    fn bloch_round_trip(r in bloch_strategy()) {
        let back = DensityMatrix::from_bloch(r).bloch().unwrap();
        prop_assert!(back.distance(&r) <= 1e-12);
    }

    #[test]
    fn trace_out_second_factor(a in bloch_strategy(), b in bloch_strategy()) {
        let (ra, rb) = (DensityMatrix::from_bloch(a), DensityMatrix::from_bloch(b));
        let ab = ra.tensor(&rb).unwrap();
        assert_state_invariants(&ab);
        prop_assert!(ab.partial_trace(&[0]).unwrap().matrix().max_abs_diff(ra.matrix()) <= 1e-12);
    }

    #[test]
    fn equatorial_isotropy(
        lambda in -0.999..0.999f64,
        theta in 0.0..6.3f64,
        phi in 0.0..6.3f64,
        angle in 0.0..6.3f64,
        radius in 0.0..1.0f64,
    ) {
        let map = EquatorialMachineParams::from_angles(lambda, theta, phi).unwrap().to_map();
        let (r1, r3) = (radius * angle.cos(), radius * angle.sin());
        prop_assert_eq!(map.apply_bloch([r1, 0.0, r3]), [lambda * r1, 0.0, lambda * r3]);
    }
}

#[test]
fn double_partial_transpose_is_identity() {
    let mut rng = SeededRng::new(42);
    for _ in 0..50 {
        let rho = rng.mixed_state(2);
        for party in [0, 1] {
            let once = rho.partial_transpose(party).unwrap();
            assert!(once.hermitian_deviation() <= 1e-15);
            assert!((once.trace().re - 1.0).abs() <= 1e-12);
            let twice = once.partial_transpose(party).unwrap();
            assert_eq!(&twice, rho.matrix());
        }
    }
}

#[test]
fn product_states_are_separable() {
    let mut rng = SeededRng::new(42);
    for _ in 0..200 {
        let s = rng.product_state().separability().unwrap();
        assert!(s.separable, "{s:?}");
    }
}

#[test]
fn entangled_pure_states_are_detected() {
    let mut rng = SeededRng::new(42);
    for _ in 0..200 {
        let s = rng.entangled_pure_state().separability().unwrap();
        assert!(!s.separable, "{s:?}");
    }
}

#[test]
fn measurement_probabilities_sum_to_one() {
    let mut rng = SeededRng::new(42);
    for _ in 0..100 {
        let u = rng.unitary_2x2();
        // projectors onto the columns of a random unitary
        let projectors: Vec<ComplexMatrix> = (0..2)
            .map(|k| ComplexMatrix::projector(&[u[(0, k)], u[(1, k)]]).unwrap())
            .collect();
        let rho = rng.mixed_state(3);
        let target = (rng.uniform() * 3.0) as usize;
        let branches = rho.measure(&projectors, &[target]).unwrap();
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        assert!((total - 1.0).abs() <= 1e-12);
        for b in &branches {
            assert_state_invariants(b.state.as_ref().unwrap());
        }
    }
}

#[test]
fn weights_round_trip_through_lambdas() {
    let mut rng = SeededRng::new(42);
    for _ in 0..1000 {
        let ch = rng.bell_mixture();
        let back = ch.to_map().to_channel().unwrap();
        for (a, b) in ch.weights().iter().zip(back.weights()) {
            assert!((a - b).abs() <= 1e-13);
        }
    }
}

#[test]
fn choi_spectrum_is_the_weight_vector() {
    let mut rng = SeededRng::new(42);
    for _ in 0..300 {
        let map = rng.cp_pauli_map();
        let mut w = map.to_channel().unwrap().weights();
        w.sort_by(f64::total_cmp);
        for (x, y) in map.to_affine().choi_eigenvalues().iter().zip(w) {
            assert!((x - y).abs() <= 1e-10);
        }
    }
}

#[test]
fn physical_pauli_maps_have_channels() {
    // sample the whole cube, keep only what the Choi test accepts
    let mut rng = SeededRng::new(42);
    let mut accepted = 0;
    for _ in 0..2000 {
        let map = PauliDiagonalMap::from_array(rng.lambda_triple(-1.0, 1.0)).unwrap();
        match (map.is_physical(), map.to_channel()) {
            (true, Ok(ch)) => {
                accepted += 1;
                let w = ch.weights();
                assert!(w.iter().all(|x| (0.0..=1.0).contains(x)));
                assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            }
            (false, Err(_)) => {}
            (physical, channel) => panic!("{map:?}: physical={physical}, channel={channel:?}"),
        }
    }
    assert!(accepted > 100);
}

#[test]
fn one_sided_map_leaves_other_marginal() {
    let mut rng = SeededRng::new(42);
    for _ in 0..100 {
        let rho = rng.mixed_state(2);
        let map = rng.cp_pauli_map().to_affine();
        for side in [Party::First, Party::Second] {
            let out = map
                .apply_one_side(&rho, side)
                .unwrap()
                .into_density()
                .unwrap();
            let keep = side.other().qubit();
            let before = rho.partial_trace(&[keep]).unwrap();
            let after = out.partial_trace(&[keep]).unwrap();
            assert!(before.matrix().max_abs_diff(after.matrix()) <= 1e-12);
        }
    }
}

#[test]
fn protocol_matches_pauli_map() {
    let mut rng = SeededRng::new(7);
    for _ in 0..30 {
        let input = DensityMatrix::from_bloch(rng.bloch_in_ball());
        let channel = rng.bell_mixture();
        let run = bell_protocol_output(&input, &channel).unwrap();
        assert_state_invariants(&run.output);
        let expected = channel
            .to_map()
            .to_affine()
            .apply_bloch(input.bloch().unwrap().components());
        let got = run.output.bloch().unwrap().components();
        for (a, b) in got.iter().zip(expected) {
            assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn separable_channels_disentangle_everything() {
    let mut rng = SeededRng::new(42);
    let mut tested = 0;
    while tested < 40 {
        let channel = rng.bell_mixture();
        if !channel.is_separable() {
            continue;
        }
        tested += 1;
        let rho = rng.entangled_pure_state();
        let out = teleport_party_of_bipartite(&rho, Party::Second, &channel)
            .unwrap()
            .output;
        assert!(out.separability().unwrap().separable);
    }
}

#[test]
fn classical_protocol_is_exact() {
    let mut rng = SeededRng::new(42);
    for k in 0..50 {
        let party = if k % 2 == 0 {
            Party::Second
        } else {
            Party::First
        };
        let rho = rng.diagonal_marginal_state(party.qubit());
        let run = run_classical_protocol(&rho, party).unwrap();
        for t in &run.traces {
            assert!((t.probability - 0.5).abs() <= 1e-12);
        }
        for q in [0, 1] {
            let d = rho
                .partial_trace(&[q])
                .unwrap()
                .trace_distance(&run.output.partial_trace(&[q]).unwrap());
            assert!(d <= 1e-12);
        }
        assert!(run.output.separability().unwrap().separable);
    }
}

#[test]
fn commuting_scenario_preserves_marginals() {
    let mut rng = SeededRng::new(42);
    for _ in 0..100 {
        let rho = rng.diagonal_marginal_state(1);
        let r = run_scenario(Scenario::Commuting, &rho).unwrap();
        assert!(r.marginal_fidelity1 >= 1.0 - 1e-12);
        assert!(r.marginal_fidelity2 >= 1.0 - 1e-12);
        assert!(r.separable && r.min_pt_eigenvalue >= -1e-9);
    }
}

#[test]
fn every_scenario_certifies_by_partial_transpose() {
    let mut rng = SeededRng::new(42);
    for _ in 0..20 {
        let rho = rng.diagonal_marginal_state(1);
        for scenario in [
            Scenario::Universal,
            Scenario::Equatorial,
            Scenario::Commuting,
        ] {
            let r = run_scenario(scenario, &rho).unwrap();
            let check = r.output_state.separability().unwrap();
            assert_eq!(r.separable, check.separable);
            assert_eq!(r.min_pt_eigenvalue, check.min_pt_eigenvalue);
            assert!(r.separable);
        }
    }
}

#[test]
fn dropping_a_constraint_never_lowers_the_optimum() {
    for (step, tol) in [(0.1, 1e-3), (0.05, 1e-4)] {
        let both = OptimizerConfig {
            grid_step: step,
            refine_tol: tol,
            include_disentangling: true,
        };
        let only = OptimizerConfig {
            include_disentangling: false,
            ..both
        };
        let a = optimize_equatorial(&both).unwrap().lambda_max;
        let b = optimize_equatorial(&only).unwrap().lambda_max;
        assert!(b >= a);
    }
}

#[test]
fn identity_map_is_the_pure_channel() {
    let id = BellMixture::pure(disent_core::qstate::pauli::BellState::PsiPlus).to_map();
    assert_eq!(id.to_affine(), AffineBlochMap::identity());
}
