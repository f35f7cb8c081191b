mod common;

use spinlab::compiler::{circuit_unitary, compile_circuit, compile_gate, Gate};
use spinlab::dynamics::{compile_function, rho_f};
use spinlab::oracle::{build_uf_gates, classes::representative, classify, uf_unitary, ClassId};
use spinlab::spectra::{compare, dj_verdict, predict_spectrum, PhaseClass};
use spinlab::{
    fiducial_state, run_protocol, Admissibility, BooleanFunction, CouplingTopology, Error, EvolutionConfig,
    ProtocolOptions, Relaxation, SpinSystem64, TopologyKind, Verdict,
};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn table_reproduction() -> Check {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::full(&s);
    let mut worst = 0.0f64;
    for k in 0..=10u8 {
        let id = if k == 0 { ClassId::Constant } else { ClassId::Balanced(k) };
        let f = representative(id);
        let got = rho_f(&f, &s, &t, EvolutionConfig::ideal()).map_err(|e| e.to_string())?.expand();
        match common::expansion_error(&got, &common::table_row_terms(id)) {
            Some(e) if e < 1e-9 => worst = worst.max(e),
            _ => {
                let text: Vec<_> = got.iter().map(|t| t.to_string()).collect();
                return Err(format!("{id}: got {}", text.join(" + ")));
            }
        }
    }
    Ok(format!("11 rows, max coefficient error {worst:.1e}"))
}

fn exhaustive_verdicts() -> Check {
    let s = SpinSystem64::alanine();
    let mut summary = Vec::new();
    for kind in [TopologyKind::Full, TopologyKind::Linear] {
        let opts = ProtocolOptions::default().with_topology(kind);
        let mut correct = 0;
        for f in BooleanFunction::admissible(3).unwrap() {
            let out = run_protocol(&f, &s, &opts).map_err(|e| format!("{kind} {}: {e}", f.mask_spec()))?;
            let ok = match f.admissibility() {
                Admissibility::Constant => {
                    out.verdict.verdict == Verdict::Constant
                        && out.comparison.lines.len() == 12
                        && out.comparison.lines.iter().all(|l| l.class == PhaseClass::Zero)
                }
                _ => out.verdict.verdict == Verdict::Balanced && !out.verdict.witnesses.is_empty(),
            };
            if !ok {
                return Err(format!("{kind} {}: {:?}", f.mask_spec(), out.verdict));
            }
            correct += 1;
        }
        summary.push(format!("{kind} {correct}/72"));
    }
    Ok(summary.join(", "))
}

fn taxonomy() -> Check {
    let classes = classify(3).map_err(|e| e.to_string())?;
    let balanced: Vec<_> = classes.iter().filter(|c| c.id != ClassId::Constant).collect();
    if balanced.len() != 10 {
        return Err(format!("{} balanced classes", balanced.len()));
    }
    for (k, c) in balanced.iter().enumerate() {
        let expected = format!("f{}", k + 1);
        let listed = common::table_function(ClassId::Balanced(k as u8 + 1));
        let hits = balanced.iter().filter(|d| d.members.contains(&listed)).count();
        if c.id.to_string() != expected || !c.members.contains(&listed) || hits != 1 {
            return Err(format!("class {} does not hold {expected} alone", c.id));
        }
    }
    let total: usize = balanced.iter().map(|c| c.size()).sum();
    if total != 70 {
        return Err(format!("balanced sizes sum to {total}"));
    }
    let sizes: Vec<_> = balanced.iter().map(|c| c.size().to_string()).collect();
    Ok(format!("sizes {} (sum 70)", sizes.join(",")))
}

fn compiler_fidelity() -> Check {
    let s = SpinSystem64::alanine();
    let mut worst = 1.0f64;
    let mut count = 0;
    for t in [CouplingTopology::full(&s), CouplingTopology::linear(&s)] {
        let mut gates = Vec::new();
        for i in 0..3 {
            gates.push(Gate::Linear(i));
            gates.push(Gate::SingleRotation { spin: i, axis: [0.0, 1.0, 0.0], angle_deg: 90.0 });
            gates.push(Gate::SingleRotation { spin: i, axis: [0.6, 0.0, 0.8], angle_deg: 37.0 });
            for j in 0..3 {
                if i != j {
                    gates.push(Gate::Quadratic(i, j));
                    gates.push(Gate::Cnot { control: i, target: j });
                    gates.push(Gate::Swap(i, j));
                }
            }
        }
        for g in &gates {
            let u = compile_gate(g, &s, &t).and_then(|seq| seq.unitary(&s)).map_err(|e| format!("{g}: {e}"))?;
            let fid = u.fidelity(&g.reference_unitary(3).unwrap());
            worst = worst.min(fid);
            count += 1;
        }
        for f in BooleanFunction::admissible(3).unwrap() {
            let u = compile_function(&f, &s, &t).and_then(|seq| seq.unitary(&s)).map_err(|e| e.to_string())?;
            worst = worst.min(u.fidelity(&uf_unitary(&f)));
            count += 1;
        }
    }
    let routed = [Gate::Swap(0, 1), Gate::Cnot { control: 2, target: 1 }, Gate::Swap(0, 1)];
    let cn20 = Gate::<f64>::Cnot { control: 2, target: 0 }.reference_unitary(3).unwrap();
    let ideal = circuit_unitary(&routed, 3).unwrap().fidelity(&cn20);
    let linear = CouplingTopology::linear(&s);
    let pulsed = compile_circuit(&routed, &s, &linear)
        .and_then(|seq| seq.unitary(&s))
        .map_err(|e| e.to_string())?
        .fidelity(&cn20);
    worst = worst.min(ideal).min(pulsed);
    if worst < 1.0 - 1e-9 {
        return Err(format!("minimum fidelity {worst:.12}"));
    }
    Ok(format!("{count} programs plus routed CNOT(2,0), min fidelity 1 - {:.1e}", 1.0 - worst))
}

fn indirect_duration() -> Check {
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::linear(&s);
    let seq = compile_gate(&Gate::Quadratic(2, 0), &s, &t).map_err(|e| e.to_string())?;
    let d = seq.total_duration_s();
    if (d - 0.071).abs() > 0.001 {
        return Err(format!("duration {d:.6} s"));
    }
    Ok(format!("U^20 lasts {d:.6} s"))
}

fn anf_degree() -> Check {
    for f in BooleanFunction::admissible(3).unwrap() {
        if f.anf().monomial(0b111) {
            return Err(format!("{} has a cubic term", f.mask_spec()));
        }
    }
    let cubic: Vec<_> = BooleanFunction::all(3)
        .unwrap()
        .filter(|f| f.anf().monomial(0b111))
        .collect();
    if cubic.is_empty() || cubic.iter().any(|f| f.is_admissible()) {
        return Err("cubic functions should exist and all be inadmissible".into());
    }
    let s = SpinSystem64::alanine();
    let t = CouplingTopology::full(&s);
    for f in &cubic {
        if !matches!(rho_f(f, &s, &t, EvolutionConfig::ideal()), Err(Error::NotAdmissible { .. })) {
            return Err(format!("{} was not rejected", f.mask_spec()));
        }
        if !matches!(build_uf_gates::<f64>(&f.anf()), Err(Error::HigherDegreeTerm { degree: 3 })) {
            return Err(format!("{} decomposed into gates", f.mask_spec()));
        }
    }
    Ok(format!("72 admissible without cubic term, {} cubic functions rejected", cubic.len()))
}

fn degenerate_coupling() -> Check {
    let s = SpinSystem64::alanine().with_coupling(2, 0, 0.0).map_err(|e| e.to_string())?;
    let t = CouplingTopology::full(&s);
    let fid = predict_spectrum(&fiducial_state(&s), &s, 0.01).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for k in [9u8, 10] {
        let f = representative(ClassId::Balanced(k));
        let rho = rho_f(&f, &s, &t, EvolutionConfig::ideal()).map_err(|e| e.to_string())?;
        let spec = predict_spectrum(&rho, &s, 0.01).map_err(|e| e.to_string())?;
        if !spec.multiplet(2).is_empty() || !spec.multiplet(0).is_empty() {
            return Err(format!("f{k}: spin 2 or spin 0 multiplet survived"));
        }
        let cmp = compare(&spec, &fid, 1e-3).map_err(|e| e.to_string())?;
        let v = dj_verdict(&cmp).map_err(|e| e.to_string())?;
        if v.verdict != Verdict::Balanced || v.witnesses.is_empty() || v.witnesses.iter().any(|w| w.spin != 1) {
            return Err(format!("f{k}: {v:?}"));
        }
        notes.push(format!("f{k} {} spin-1 witnesses", v.witnesses.len()));
    }
    Ok(notes.join(", "))
}

fn t2_robustness() -> Check {
    let s = SpinSystem64::alanine();
    let mut flips = Vec::new();
    for kind in [TopologyKind::Full, TopologyKind::Linear] {
        let ideal = ProtocolOptions::default().with_topology(kind);
        let damped = ideal.with_relaxation(Relaxation::T2Only);
        for f in BooleanFunction::admissible(3).unwrap() {
            let a = run_protocol(&f, &s, &ideal).map(|o| o.verdict.verdict);
            let b = run_protocol(&f, &s, &damped).map(|o| o.verdict.verdict);
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => flips.push(format!("{kind} {}: {a:?} -> {b:?}", f.mask_spec())),
            }
        }
    }
    if flips.is_empty() {
        Ok("144 runs, no verdict changed".into())
    } else {
        Err(flips.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("reference density-operator table", table_reproduction),
        ("exhaustive verdict correctness", exhaustive_verdicts),
        ("taxonomy", taxonomy),
        ("compiler fidelity", compiler_fidelity),
        ("indirect-gate duration", indirect_duration),
        ("ANF degree property", anf_degree),
        ("degenerate-coupling behavior", degenerate_coupling),
        ("T2 robustness", t2_robustness),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", k + 1),
            Err(detail) => {
                println!("FAIL criterion {}: {name}: {detail}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
