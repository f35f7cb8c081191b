//! `spinlab`: run the three-qubit Deutsch-Jozsa protocol on a simulated NMR molecule.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spinlab::oracle::{build_uf_gates, classify};
use spinlab::protocol::sweep;
use spinlab::report::sig9;
use spinlab::spectra::DEFAULT_PHASE_TOL_RAD;
use spinlab::spin::DEFAULT_COUPLING_THRESHOLD_HZ;
use spinlab::{
    run_protocol, BooleanFunction, Error, ProtocolOptions, Relaxation, SpinSystem64, TopologyKind, Verdict,
};

const MOLECULE_DIR_VAR: &str = "SPINLAB_MOLECULE_DIR";

#[derive(Parser, Debug)]
#[command(name = "spinlab", version, about = "NMR Deutsch-Jozsa simulator and pulse compiler")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the protocol for one function. Exit code 0 = constant, 1 = balanced, 2 = error.
    Run {
        #[arg(long)]
        function: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the equivalence classes of admissible three-bit functions.
    Classes {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run all 72 admissible functions and check every verdict.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compile a function's oracle into a pulse program.
    Compile {
        #[arg(long)]
        function: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Molecule JSON file, or a name looked up in $SPINLAB_MOLECULE_DIR. Defaults to alanine.
    #[arg(long)]
    molecule: Option<String>,
    #[arg(long, value_enum, default_value_t = TopologyArg::Full)]
    topology: TopologyArg,
    #[arg(long, value_enum, default_value_t = RelaxationArg::Off)]
    relaxation: RelaxationArg,
    /// Write JSON here; `-` writes it to standard output instead of the table.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = spinlab::spectra::DEFAULT_BIN_TOL_HZ)]
    bin_tol_hz: f64,
    #[arg(long, default_value_t = DEFAULT_PHASE_TOL_RAD)]
    phase_tol_rad: f64,
    /// Edge threshold for `--topology auto`.
    #[arg(long, default_value_t = DEFAULT_COUPLING_THRESHOLD_HZ)]
    coupling_threshold_hz: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TopologyArg {
    Full,
    Linear,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RelaxationArg {
    Off,
    #[value(alias = "t2_only", alias = "t2")]
    T2Only,
}

impl CommonArgs {
    fn options(&self) -> Result<ProtocolOptions, Error> {
        for (name, v) in [
            ("bin-tol-hz", self.bin_tol_hz),
            ("phase-tol-rad", self.phase_tol_rad),
            ("coupling-threshold-hz", self.coupling_threshold_hz),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Parse(format!("--{name} must be a finite non-negative number")));
            }
        }
        Ok(ProtocolOptions {
            topology: match self.topology {
                TopologyArg::Full => TopologyKind::Full,
                TopologyArg::Linear => TopologyKind::Linear,
                TopologyArg::Auto => TopologyKind::Auto,
            },
            relaxation: match self.relaxation {
                RelaxationArg::Off => Relaxation::Off,
                RelaxationArg::T2Only => Relaxation::T2Only,
            },
            bin_tol_hz: self.bin_tol_hz,
            phase_tol_rad: self.phase_tol_rad,
            coupling_threshold_hz: self.coupling_threshold_hz,
        })
    }

    fn system(&self) -> Result<SpinSystem64, Error> {
        resolve_molecule(self.molecule.as_deref(), std::env::var_os(MOLECULE_DIR_VAR).map(PathBuf::from))
    }
}

/// Path first, then the molecule directory, then the bundled alanine.
fn resolve_molecule(name: Option<&str>, dir: Option<PathBuf>) -> Result<SpinSystem64, Error> {
    let Some(name) = name else {
        return Ok(SpinSystem64::alanine());
    };
    let direct = Path::new(name);
    if direct.is_file() {
        return SpinSystem64::load(direct);
    }
    if let Some(dir) = dir {
        for candidate in [dir.join(name), dir.join(format!("{name}.json"))] {
            if candidate.is_file() {
                return SpinSystem64::load(candidate);
            }
        }
    }
    if name == "alanine" {
        return Ok(SpinSystem64::alanine());
    }
    Err(Error::Io(std::io::Error::new(
        std::io::ErrorKind::NotFound,
        format!("molecule `{name}` not found"),
    )))
}

fn emit(out: Option<&Path>, json: &str, table: &str) -> Result<(), Error> {
    match out {
        Some(p) if p == Path::new("-") => println!("{json}"),
        Some(p) => {
            std::fs::write(p, format!("{json}\n"))?;
            print!("{table}");
        }
        None => print!("{table}"),
    }
    Ok(())
}

fn cmd_run(function: &str, common: &CommonArgs) -> Result<Verdict, Error> {
    let system = common.system()?;
    let options = common.options()?;
    let f = BooleanFunction::parse(function, system.n_spins())?;
    let outcome = run_protocol(&f, &system, &options)?;
    let report = outcome.report(&options);
    let mut table = String::new();
    table += &format!("function   {} ({})\n", report.function, report.anf);
    table += &format!("class      {}\n", report.class);
    table += &format!("gates      {}\n", report.gates.join(" "));
    table += &format!(
        "program    {} elements, {} s\n",
        report.program.element_count, report.program.total_duration_s
    );
    for m in &report.spectrum.spins {
        let phases: Vec<String> = m
            .lines
            .iter()
            .map(|l| match l.phase_vs_fiducial {
                Some(p) if p.abs() < options.phase_tol_rad => "0".to_string(),
                Some(p) if std::f64::consts::PI - p.abs() < options.phase_tol_rad => "pi".to_string(),
                Some(p) => format!("{p}"),
                None => "new".to_string(),
            })
            .collect();
        table += &format!("spin {}     [{}]\n", m.spin, phases.join(" "));
    }
    table += &format!(
        "verdict    {} ({} witnesses, {} disappeared)\n",
        report.verdict.verdict,
        report.verdict.witnesses.len(),
        report.verdict.disappeared.len()
    );
    emit(common.out.as_deref(), &report.to_json(), &table)?;
    Ok(report.verdict.verdict)
}

fn cmd_classes(out: Option<&Path>) -> Result<(), Error> {
    let classes = classify(3)?;
    let mut table = format!("{:<8} {:<6} {:<36} gates\n", "class", "size", "representative");
    let mut rows = Vec::new();
    for c in &classes {
        let anf = c.representative.anf();
        let gates: Vec<String> = build_uf_gates::<f64>(&anf)?.iter().map(|g| g.to_string()).collect();
        table += &format!("{:<8} {:<6} {:<36} {}\n", c.id.to_string(), c.size(), anf.to_string(), gates.join(" "));
        rows.push(json!({
            "class": c.id.to_string(),
            "size": c.size(),
            "representative": anf.to_string(),
            "gates": gates,
            "members": c.members.iter().map(|m| m.mask_spec()).collect::<Vec<_>>(),
        }));
    }
    let total: usize = classes.iter().map(|c| c.size()).sum();
    table += &format!("{} classes, {total} functions\n", classes.len());
    let doc = json!({ "class_count": classes.len(), "function_count": total, "classes": rows });
    emit(out, &serde_json::to_string_pretty(&doc)?, &table)
}

fn cmd_sweep(common: &CommonArgs) -> Result<bool, Error> {
    let system = common.system()?;
    let options = common.options()?;
    let entries = sweep(&system, &options)?;
    let correct = entries.iter().filter(|e| e.correct()).count();
    let mut table = String::new();
    for e in &entries {
        let got = match (&e.verdict, &e.error) {
            (Some(v), _) => v.to_string(),
            (None, msg) => format!("error: {}", msg.as_deref().unwrap_or("unknown")),
        };
        table += &format!(
            "{} {:<10} {:<7} expected {:<8} got {:<8} witnesses {:<2} {} s\n",
            if e.correct() { "ok  " } else { "FAIL" },
            e.function,
            e.class,
            e.expected.to_string(),
            got,
            e.witnesses,
            e.total_duration_s
        );
    }
    table += &format!("{correct}/{} correct ({} topology)\n", entries.len(), options.topology);
    let doc = json!({
        "topology": options.topology,
        "relaxation": options.relaxation,
        "correct": correct,
        "total": entries.len(),
        "entries": entries,
    });
    emit(common.out.as_deref(), &serde_json::to_string_pretty(&doc)?, &table)?;
    Ok(correct == entries.len())
}

fn cmd_compile(function: &str, common: &CommonArgs) -> Result<(), Error> {
    let system = common.system()?;
    let options = common.options()?;
    let f = BooleanFunction::parse(function, system.n_spins())?;
    let topology = options.resolve_topology(&system);
    let seq = spinlab::dynamics::compile_function(&f, &system, &topology)?;
    let program = seq.to_program();
    let mut table = String::new();
    for e in seq.elements() {
        table += &format!("{e}\n");
    }
    table += &format!(
        "{} elements, {} s, trailing phases {:?} deg\n",
        program.element_count,
        sig9(program.total_duration_s),
        program.trailing_phase_shifts_deg
    );
    emit(common.out.as_deref(), &serde_json::to_string_pretty(&program)?, &table)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { function, common } => cmd_run(function, common).map(|v| match v {
            Verdict::Constant => 0,
            Verdict::Balanced => 1,
        }),
        Command::Classes { out } => cmd_classes(out.as_deref()).map(|_| 0),
        Command::Sweep { common } => cmd_sweep(common).map(|ok| if ok { 0 } else { 1 }),
        Command::Compile { function, common } => cmd_compile(function, common).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
