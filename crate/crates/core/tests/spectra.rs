use spinlab::dynamics::rho_f;
use spinlab::oracle::{classes::representative, ClassId};
use spinlab::spectra::{compare, predict_spectrum, spectrum_from_terms, PhaseClass};
use spinlab::{fiducial_state, BooleanFunction, CouplingTopology, EvolutionConfig, SpinSystem64};

fn classes_by_spin(expr: &str, system: &SpinSystem64, topology: &CouplingTopology) -> Vec<Vec<PhaseClass>> {
    let f = BooleanFunction::parse(&format!("anf:{expr}"), 3).unwrap();
    let rho = rho_f(&f, system, topology, EvolutionConfig::ideal()).unwrap();
    let fid = predict_spectrum(&fiducial_state(system), system, 0.01).unwrap();
    let spec = predict_spectrum(&rho, system, 0.01).unwrap();
    let cmp = compare(&spec, &fid, 1e-3).unwrap();
    (0..3)
        .map(|j| cmp.lines.iter().filter(|l| l.spin == j).map(|l| l.class).collect())
        .collect()
}

#[test]
fn f4_inverts_the_whole_spin0_multiplet() {
    let s = SpinSystem64::alanine();
    let by_spin = classes_by_spin("x2*x1 ^ x0", &s, &CouplingTopology::full(&s));
    assert_eq!(by_spin[0], vec![PhaseClass::Pi; 4]);
    for j in [1, 2] {
        let pis = by_spin[j].iter().filter(|c| **c == PhaseClass::Pi).count();
        assert_eq!((by_spin[j].len(), pis), (4, 2), "spin {j} is antiphase");
    }
}

#[test]
fn f2_inverts_spins_2_and_1() {
    let s = SpinSystem64::alanine();
    let by_spin = classes_by_spin("x2 ^ x1", &s, &CouplingTopology::full(&s));
    assert_eq!(by_spin[2], vec![PhaseClass::Pi; 4]);
    assert_eq!(by_spin[1], vec![PhaseClass::Pi; 4]);
    assert_eq!(by_spin[0], vec![PhaseClass::Zero; 4]);
}

#[test]
fn f7_has_a_pi_line_on_an_outer_spin() {
    let s = SpinSystem64::alanine();
    let by_spin = classes_by_spin("x2*x1 ^ x1*x0 ^ x2 ^ x1", &s, &CouplingTopology::full(&s));
    assert!(by_spin[2].contains(&PhaseClass::Pi) || by_spin[0].contains(&PhaseClass::Pi));
}

#[test]
fn phases_are_quantized_for_every_function() {
    let s = SpinSystem64::alanine();
    let fid = predict_spectrum(&fiducial_state(&s), &s, 0.01).unwrap();
    for t in [CouplingTopology::full(&s), CouplingTopology::linear(&s)] {
        for f in BooleanFunction::admissible(3).unwrap() {
            let rho = rho_f(&f, &s, &t, EvolutionConfig::ideal()).unwrap();
            let cmp = compare(&predict_spectrum(&rho, &s, 0.01).unwrap(), &fid, 1e-3).unwrap();
            assert!(cmp.extra.is_empty() && cmp.disappeared.is_empty());
            for l in &cmp.lines {
                let off = l.phase_diff_rad.abs().min(std::f64::consts::PI - l.phase_diff_rad.abs());
                assert!(off < 1e-6, "{} spin {}: {}", f.mask_spec(), l.spin, l.phase_diff_rad);
            }
        }
    }
}

#[test]
fn multiplet_rules_agree_with_coherences() {
    for s in [
        SpinSystem64::alanine(),
        SpinSystem64::alanine().with_coupling(2, 0, 0.0).unwrap(),
    ] {
        let t = CouplingTopology::full(&s);
        for k in 0..=10u8 {
            let id = if k == 0 { ClassId::Constant } else { ClassId::Balanced(k) };
            let rho = rho_f(&representative(id), &s, &t, EvolutionConfig::ideal()).unwrap();
            let direct = predict_spectrum(&rho, &s, 0.01).unwrap();
            let rules = spectrum_from_terms(&rho.expand(), &s, 0.01).unwrap();
            assert_eq!(direct.line_count(), rules.line_count(), "{id}");
            for (a, b) in direct.lines().zip(rules.lines()) {
                assert_eq!(a.spin, b.spin);
                assert!((a.frequency_hz - b.frequency_hz).abs() < 1e-9);
                assert!((a.amplitude - b.amplitude).norm() < 1e-9, "{id}");
            }
        }
    }
}

#[test]
fn line_positions_follow_couplings() {
    let s = SpinSystem64::alanine();
    let spec = predict_spectrum(&fiducial_state(&s), &s, 0.01).unwrap();
    let freqs: Vec<f64> = spec.multiplet(1).iter().map(|l| l.frequency_hz).collect();
    // spin 1 sits at 0 Hz, split by 56 Hz and 36 Hz
    assert_eq!(freqs, vec![-46.0, -10.0, 10.0, 46.0]);
}

#[test]
fn uncoupled_spin_blanks_its_antiphase_multiplet() {
    let s = SpinSystem64::alanine().with_coupling(2, 0, 0.0).unwrap();
    let t = CouplingTopology::full(&s);
    let f = representative(ClassId::Balanced(9));
    let rho = rho_f(&f, &s, &t, EvolutionConfig::ideal()).unwrap();
    let spec = predict_spectrum(&rho, &s, 0.01).unwrap();
    assert!(spec.multiplet(2).is_empty());
    assert!(spec.multiplet(0).is_empty());
    assert_eq!(spec.multiplet(1).len(), 4);
}
