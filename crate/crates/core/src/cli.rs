//! The `grover` command line.
//!
//! Dispatch is a pure function from arguments to [`Outcome`] so commands can
//! be tested without spawning a process. Exit codes: 0 success, 1 usage or
//! domain error, 2 verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::circuit::{gate_census, parse_circuit, serialize_circuit, Gate};
use crate::compile::{assemble_grover_circuit, lower_toffoli, predicted_gate_count, Lowering, LoweringLevel};
use crate::grover::{optimal_iterations, run_search, sweep_with_level, GroverConfig, SearchReport, SweepRow};
use crate::verify::verify_search_with;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

pub const SWEEP_HEADER: &str = "n,theta_rad,k0,p_analytic,p_engine";

#[derive(Debug, Parser)]
#[command(name = "grover", version, about = "Simulate and compile Grover search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one search and print the report.
    Run(RunArgs),
    /// Tabulate the success probability against n as CSV.
    Sweep(SweepArgs),
    /// Emit the search circuit in text form.
    Compile(CompileArgs),
    /// Check the compiled circuits against dense reference matrices.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: u64,
    #[arg(long, default_value = "analytic")]
    pub engine: String,
    #[arg(long, default_value = "universal")]
    pub level: String,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long, default_value_t = 1024)]
    pub shots: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value = "analytic")]
    pub engine: String,
    #[arg(long, default_value = "universal")]
    pub level: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: u64,
    #[arg(long)]
    pub level: String,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: u64,
    /// Swap one T for T† in the Toffoli template (negative control).
    #[arg(long, hide = true)]
    pub corrupt_toffoli: bool,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {message}\n"), code: EXIT_USAGE }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE },
            }
        }
    }
}

pub fn dispatch(command: Command) -> Outcome {
    let result = match command {
        Command::Run(a) => cmd_run(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Compile(a) => cmd_compile(&a),
        Command::Verify(a) => return cmd_verify(&a),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn write_or_return(out: &Option<PathBuf>, text: String) -> Result<Outcome, Error> {
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

/// Formats with 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.16}");
    }
    let decimals = (16 - x.abs().log10().floor() as i64).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn render_report(r: &SearchReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "target: {}", r.i0);
    let _ = writeln!(s, "engine: {}", r.engine);
    let _ = writeln!(s, "theta: {} rad ({:.1} deg)", sig17(r.theta), r.theta.to_degrees());
    let _ = writeln!(s, "k0: {}", r.k0);
    let _ = writeln!(s, "iterations: {}", r.iterations);
    let _ = writeln!(s, "p_analytic: {}", sig17(r.p_analytic));
    let _ = writeln!(s, "p_engine: {}", sig17(r.p_engine));
    match r.measured_mode {
        Some(m) => {
            let _ = writeln!(s, "measured_mode: {m}");
        }
        None => {
            let _ = writeln!(s, "measured_mode: none");
        }
    }
    let shots: usize = r.samples.values().sum();
    let _ = writeln!(s, "histogram ({shots} shots):");
    for (i, c) in &r.samples {
        let _ = writeln!(s, "  {i} {c}");
    }
    s
}

pub fn cmd_run(a: &RunArgs) -> Result<Outcome, Error> {
    let mut config = GroverConfig::new(a.n, a.target)
        .engine(a.engine.parse()?)
        .level(a.level.parse()?)
        .shots(a.shots)
        .seed(a.seed);
    config.iterations_override = a.iterations;
    let report = run_search(&config)?;
    let text = if a.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        render_report(&report)
    };
    Ok(Outcome::ok(text))
}

/// CSV with header [`SWEEP_HEADER`]. Floats use the shortest text that
/// parses back to the same value.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let p_engine = r.p_engine.map(|p| format!("{p:?}")).unwrap_or_default();
        let _ = writeln!(s, "{},{:?},{},{:?},{}", r.n, r.theta, r.k0, r.p_analytic, p_engine);
    }
    s
}

/// Parses [`sweep_csv`] output.
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>, Error> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == SWEEP_HEADER => {}
        _ => return Err(Error::Parse { line: 1, message: "missing sweep header".into() }),
    }
    lines
        .map(|(i, line)| {
            let bad = |what: &str| Error::Parse { line: i + 1, message: format!("bad {what}") };
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(bad("field count"));
            }
            Ok(SweepRow {
                n: f[0].parse().map_err(|_| bad("n"))?,
                theta: f[1].parse().map_err(|_| bad("theta_rad"))?,
                k0: f[2].parse().map_err(|_| bad("k0"))?,
                p_analytic: f[3].parse().map_err(|_| bad("p_analytic"))?,
                p_engine: if f[4].is_empty() { None } else { Some(f[4].parse().map_err(|_| bad("p_engine"))?) },
            })
        })
        .collect()
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<Outcome, Error> {
    let rows = sweep_with_level(a.n_min, a.n_max, a.engine.parse()?, a.level.parse()?)?;
    write_or_return(&a.out, sweep_csv(&rows))
}

pub fn cmd_compile(a: &CompileArgs) -> Result<Outcome, Error> {
    let level: LoweringLevel = a.level.parse()?;
    crate::compile::check_target(a.n, a.target)?;
    let k = a.iterations.unwrap_or_else(|| optimal_iterations(a.n));
    let width = crate::grover::compiled_width(a.n, level);
    // Text output does not need dense matrices, but keep emitted circuits
    // within what the other tools here can execute.
    if width > 32 {
        return Err(Error::InvalidConfig(format!("circuit needs {width} qubits, limit is 32")));
    }
    let circuit = assemble_grover_circuit(a.n, a.target, k, level)?;
    let census = gate_census(&circuit);
    let mut text = serialize_circuit(&circuit);
    let _ = writeln!(text, "# input: register |0>, target |1>, work |0>");
    let _ = writeln!(text, "# gates: {census}");
    if a.n >= 2 {
        let _ = writeln!(text, "# predicted: {:.2}", predicted_gate_count(a.n));
    } else {
        let _ = writeln!(text, "# predicted: n/a");
    }
    write_or_return(&a.out, text)
}

/// The Toffoli template with its first `t 0` replaced by `tdg 0`.
pub fn corrupted_toffoli() -> crate::circuit::Circuit {
    let mut c = parse_circuit("qubits 3\n").expect("header");
    for g in lower_toffoli().ops() {
        let g = if *g == Gate::T(0) { Gate::Tdg(0) } else { g.clone() };
        c.push(g).expect("same width");
    }
    c
}

pub fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let lowering = if a.corrupt_toffoli {
        Lowering::with_toffoli(corrupted_toffoli()).expect("3-qubit template")
    } else {
        Lowering::default()
    };
    match verify_search_with(&lowering, a.n, a.target) {
        Ok(report) => {
            let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Outcome { stdout: format!("{report}\n"), stderr: String::new(), code }
        }
        Err(e) => Outcome::usage(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::Engine;

    fn run(args: &str) -> Outcome {
        run_cli(std::iter::once("grover").chain(args.split_whitespace()))
    }

    #[test]
    fn sig17_digits() {
        assert_eq!(sig17(0.75f64.acos()), "0.72273424781341566");
        assert_eq!(sig17(std::f64::consts::PI / 3.0), "1.0471975511965976");
    }

    #[test]
    fn run_statevector_report() {
        let o = run("run --n 3 --target 5 --engine statevector --shots 10000 --seed 7");
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("k0: 2\n"));
        assert!(o.stdout.contains("p_engine: 0.945312"));
        assert!(o.stdout.contains("(41.4 deg)"));
        assert!(o.stdout.contains("measured_mode: 5\n"));
    }

    #[test]
    fn run_n2_analytic() {
        let o = run("run --n 2 --target 0 --engine analytic");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("k0: 1\n"));
        assert!(o.stdout.contains("p_analytic: 1.0000000000000000"));
        assert!(o.stdout.contains("  0 1024\n"));
    }

    #[test]
    fn run_target_out_of_range() {
        let o = run("run --n 3 --target 9");
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("target out of range"), "{}", o.stderr);
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(run("run --n 3").code, 1);
        assert_eq!(run("bogus").code, 1);
        assert_eq!(run("run --n 3 --target 1 --engine quantum").code, 1);
        assert_eq!(run("sweep --n-min 5 --n-max 2").code, 1);
        assert_eq!(run("compile --n 3 --target 5 --level gates").code, 1);
        assert_eq!(run("--help").code, 0);
    }

    #[test]
    fn json_report() {
        let o = run("run --n 3 --target 5 --engine statevector --shots 10 --json");
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["k0"], 2);
        assert_eq!(v["engine"], "statevector");
    }

    #[test]
    fn sweep_rows() {
        let o = run("sweep --n-min 2 --n-max 30 --engine analytic");
        assert_eq!(o.code, 0);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines.len(), 30);
        assert_eq!(lines[0], SWEEP_HEADER);
        assert!(lines[1].starts_with("2,1.047197551196597"), "{}", lines[1]);
        assert!(lines[1].contains(",1,1.0,"), "{}", lines[1]);
        assert!(lines[9].starts_with("10,") && lines[9].split(',').nth(2) == Some("25"));
    }

    #[test]
    fn sweep_csv_round_trip() {
        let rows = sweep_with_level(2, 14, Engine::StateVector, LoweringLevel::Universal).unwrap();
        assert_eq!(parse_sweep_csv(&sweep_csv(&rows)).unwrap(), rows);
        let rows = sweep_with_level(2, 9, Engine::Compiled, LoweringLevel::Universal).unwrap();
        let csv = sweep_csv(&rows);
        assert!(csv.lines().last().unwrap().ends_with(','));
        assert_eq!(parse_sweep_csv(&csv).unwrap(), rows);
    }

    #[test]
    fn compile_levels() {
        let o = run("compile --n 3 --target 5 --level universal");
        assert_eq!(o.code, 0);
        let c = parse_circuit(&o.stdout).unwrap();
        let census = gate_census(&c);
        assert!(census.counts.keys().all(|k| ["x", "h", "s", "t", "tdg", "cx", "gphase"].contains(k)));
        assert!(o.stdout.contains("# predicted: 324.89\n"));

        let o = run("compile --n 3 --target 5 --level toffoli");
        let census = gate_census(&parse_circuit(&o.stdout).unwrap());
        assert!(census.count("ccx") > 0 && census.count("ncx") == 0);

        let o = run("compile --n 3 --target 7 --level operator");
        let c = parse_circuit(&o.stdout).unwrap();
        // Oracle block follows the four preparation Hadamards directly.
        assert_eq!(c.ops()[4], Gate::ncx(vec![0, 1, 2], 3));
    }

    #[test]
    fn verify_exit_codes() {
        let ok = run("verify --n 3 --target 5");
        assert_eq!(ok.code, 0, "{}", ok.stdout);
        let bad = run("verify --n 3 --target 5 --corrupt-toffoli");
        assert_eq!(bad.code, 2);
        assert!(bad.stdout.contains("FAIL toffoli-decomposition"));
        let big = run("verify --n 6 --target 0");
        assert_eq!(big.code, 1);
        assert!(big.stderr.contains("matrix verification limited to n ≤ 5"));
    }

    #[test]
    fn output_is_deterministic() {
        for args in [
            "run --n 5 --target 17 --engine statevector --shots 300 --seed 11",
            "run --n 4 --target 3 --engine compiled --level universal --shots 50 --seed 2",
            "compile --n 4 --target 6 --level universal",
        ] {
            assert_eq!(run(args), run(args));
        }
    }
}
