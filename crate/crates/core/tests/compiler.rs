use spinlab::compiler::{
    compile_circuit, compile_cnot, compile_gate, compile_quadratic_indirect, Gate, PulseElement, PulseProgram,
};
use spinlab::dynamics::compile_function;
use spinlab::{BooleanFunction, CouplingTopology, Error, SpinSystem64};

#[test]
fn indirect_gate_duration_from_parts() {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::linear(&s);
    let seq = compile_quadratic_indirect(2, 0, 1, &s, &t).unwrap();
    let want = 4.0 / 72.0 + 1.0 / 112.0 + 10.0 * 0.7e-3;
    assert!((seq.total_duration_s() - want).abs() < 1e-12);
    assert_eq!((seq.count_pulses(), seq.count_delays()), (10, 5));
}

#[test]
fn routing_picks_the_indirect_pattern() {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::linear(&s);
    let routed = compile_gate(&Gate::Quadratic(0, 2), &s, &t).unwrap();
    assert!(routed.respects(&t));
    // spin 1 swaps with spin 2 here, so the long waits use J21
    let want = 4.0 / 112.0 + 1.0 / 72.0 + 6.0 * 0.7e-3 + 4.0 * 0.5e-3;
    assert!((routed.total_duration_s() - want).abs() < 1e-12);
    let forward = compile_gate(&Gate::Quadratic(2, 0), &s, &t).unwrap();
    assert!((forward.total_duration_s() - (4.0 / 72.0 + 1.0 / 112.0 + 7e-3)).abs() < 1e-12);
    let full = CouplingTopology::full(&s);
    let direct = compile_gate(&Gate::Quadratic(2, 0), &s, &full).unwrap();
    assert_eq!(direct.count_delays(), 1);
    assert!((direct.total_duration_s() - 1.0 / 2.6).abs() < 1e-12);
}

#[test]
fn majority_on_linear_topology() {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::linear(&s);
    let f9 = BooleanFunction::new(3, 0xe8).unwrap();
    let seq = compile_function(&f9, &s, &t).unwrap();
    assert!((seq.total_duration_s() - 0.0943).abs() < 5e-4, "{}", seq.total_duration_s());
    assert!(seq.respects(&t));
}

#[test]
fn linear_gates_cost_nothing() {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::linear(&s);
    let f3 = BooleanFunction::parse("anf:x2 ^ x1 ^ x0", 3).unwrap();
    let seq = compile_function(&f3, &s, &t).unwrap();
    assert!(seq.is_empty());
    assert_eq!(seq.trailing_phase_shifts_deg(), &[180.0, 180.0, 180.0]);
}

#[test]
fn coalesced_programs_have_no_frame_changes() {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::linear(&s);
    for f in BooleanFunction::admissible(3).unwrap() {
        let seq = compile_function(&f, &s, &t).unwrap();
        assert!(seq.elements().iter().all(|e| !matches!(e, PulseElement::VirtualZ { .. })));
    }
}

#[test]
fn negative_coupling_compiles_exactly() {
    let s = SpinSystem64::alanine().with_coupling(2, 1, -56.0).unwrap();
    let t = CouplingTopology::linear(&s);
    for g in [Gate::Quadratic(2, 1), Gate::Quadratic(2, 0), Gate::Cnot { control: 1, target: 2 }] {
        let u = compile_gate(&g, &s, &t).unwrap().unitary(&s).unwrap();
        assert!(u.fidelity(&g.reference_unitary(3).unwrap()) > 1.0 - 1e-12, "{g}");
    }
}

#[test]
fn missing_links_are_reported() {
    let s = SpinSystem64::alanine();
    let only21 = CouplingTopology::from_edges(&s, [(2, 1)]).unwrap();
    assert!(matches!(compile_cnot(1, 0, &s, &only21), Err(Error::RouteRequired { .. })));
    assert!(matches!(
        compile_circuit(&[Gate::Quadratic(1, 0)], &s, &only21),
        Err(Error::DisconnectedTopology(_))
    ));
    let cut = s.with_coupling(1, 0, 0.0).unwrap().with_coupling(2, 0, 0.0).unwrap();
    let t = CouplingTopology::full(&cut);
    assert!(!t.is_connected());
}

#[test]
fn program_json_round_trips() {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::linear(&s);
    let f = BooleanFunction::parse("anf:x2*x1 ^ x1*x0 ^ x2*x0 ^ x1 ^ x0", 3).unwrap();
    let program = compile_function(&f, &s, &t).unwrap().to_program();
    let text = serde_json::to_string(&program).unwrap();
    assert!(text.contains("\"type\":\"pulse\""));
    assert!(text.contains("\"type\":\"delay\""));
    let back: PulseProgram = serde_json::from_str(&text).unwrap();
    assert_eq!(back, program);
    assert_eq!(program.element_count, program.elements.len());
}
