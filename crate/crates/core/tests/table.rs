mod common;

use spinlab::dynamics::{rho_f, rho_f_reference};
use spinlab::oracle::{classes::representative, ClassId};
use spinlab::{BooleanFunction, CouplingTopology, EvolutionConfig, SpinSystem, SpinSystem64};

fn check_all(topology: &CouplingTopology, system: &SpinSystem) {
    for f in BooleanFunction::admissible(3).unwrap() {
        let got = rho_f(&f, system, topology, EvolutionConfig::ideal()).unwrap().expand();
        let want = common::expected_terms(&f);
        let err = common::expansion_error(&got, &want);
        assert!(
            err.is_some_and(|e| e < 1e-9),
            "{}: got {:?}",
            f.mask_spec(),
            got.iter().map(|t| t.to_string()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn representatives_full_topology() {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::full(&s);
    for k in 0..=10u8 {
        let id = if k == 0 { ClassId::Constant } else { ClassId::Balanced(k) };
        let f = representative(id);
        let got = rho_f(&f, &s, &t, EvolutionConfig::ideal()).unwrap().expand();
        let err = common::expansion_error(&got, &common::expected_terms(&f));
        assert!(err.is_some_and(|e| e < 1e-9), "{id}: {:?}", got.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    }
}

#[test]
fn every_function_full_topology() {
    let s = SpinSystem64::alanine();
    check_all(&CouplingTopology::full(&s), &s);
}

#[test]
fn every_function_linear_topology() {
    let s = SpinSystem64::alanine();
    check_all(&CouplingTopology::linear(&s), &s);
}

#[test]
fn pulse_level_matches_gate_level() {
    let s = SpinSystem64::alanine();
    for t in [CouplingTopology::full(&s), CouplingTopology::linear(&s)] {
        for f in BooleanFunction::admissible(3).unwrap() {
            let pulses = rho_f(&f, &s, &t, EvolutionConfig::ideal()).unwrap();
            let gates = rho_f_reference(&f, &s);
            let d = pulses.as_operator().max_abs_diff(gates.as_operator());
            assert!(d < 1e-9, "{}: {d:e}", f.mask_spec());
        }
    }
}
