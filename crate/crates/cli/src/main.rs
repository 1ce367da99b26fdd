use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braidgate::braid::{braid_relation_residuals, ybe_residual, TwoStrandOperator};
use braidgate::entangler::{apply, multi_qubit_r, unitarity_residual, Mode};
use braidgate::io::{self, OperatorFile, ReportFile};
use braidgate::oracle::{peel_qubit, try_factor};
use braidgate::segre::{
    concurrence_2q, is_fully_separable, is_j_separable, max_abs_minor, measure_3q, measure_mq,
    segre_generators, three_qubit_generators, DEFAULT_TOL, THREE_QUBIT_GENERATORS,
};
use braidgate::{Phases, State, C64};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Pass/fail threshold for every residual check.
const CHECK_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "braidgate",
    version,
    about = "Braid-group entanglers and Segre-minor separability"
)]
struct Cli {
    /// Emit a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the entangler for a phase file and export it.
    Build {
        #[arg(long)]
        phases: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Sparse)]
        format: Format,
    },
    /// Apply the entangler to a state (default: all-ones product state).
    Apply {
        #[arg(long)]
        phases: PathBuf,
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report concurrence, generator values and flattening minors.
    Measure {
        #[arg(long)]
        state: PathBuf,
        /// Also write the full generator report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decide separability from the flattening minors.
    Separability {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Only test qubit `j` (1-based).
        #[arg(long)]
        partition: Option<usize>,
        /// Cross-check against explicit factorization.
        #[arg(long)]
        verify: bool,
    },
    /// Check Yang-Baxter, braid or unitarity residuals.
    Check {
        #[arg(
            long,
            required_unless_present = "operator",
            conflicts_with = "operator"
        )]
        phases: Option<PathBuf>,
        /// Operator export (sparse or dense) instead of a phase file.
        #[arg(long)]
        operator: Option<PathBuf>,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, default_value_t = 4)]
        strands: usize,
    },
    /// Write a named example state.
    Demo {
        #[arg(long, value_enum)]
        state: DemoState,
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Sparse,
    Dense,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Ybe,
    Braid,
    Unitarity,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoState {
    Ghz,
    W,
    Product,
}

/// Anything that maps to exit code 2.
struct BadInput(String);

impl From<braidgate::Error> for BadInput {
    fn from(e: braidgate::Error) -> Self {
        Self(e.to_string())
    }
}

struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self {
            passed: true,
            text,
            json,
        }
    }
}

type CmdResult = Result<Outcome, BadInput>;

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn with_context<T>(r: braidgate::Result<T>, path: &Path) -> Result<T, BadInput> {
    r.map_err(|e| BadInput(format!("{}: {e}", path.display())))
}

fn read_state(path: &Path) -> Result<State, BadInput> {
    with_context(io::read_state(path), path)
}

fn read_phases(path: &Path) -> Result<Phases, BadInput> {
    with_context(io::read_phases(path), path)
}

fn build(phases: &Path, out: &Path, format: Format) -> CmdResult {
    let p = read_phases(phases)?.into_unitary()?;
    let r = multi_qubit_r(&p, Mode::Gate)?;
    let file = match format {
        Format::Sparse => OperatorFile::sparse(&r),
        Format::Dense => OperatorFile::dense(&r)?,
    };
    io::write_json(out, &file)?;
    let residual = r.unitarity_residual();
    Ok(Outcome::ok(
        format!(
            "wrote {}x{} operator to {}\nunitarity residual {}\n",
            r.dim(),
            r.dim(),
            out.display(),
            sci(residual)
        ),
        json!({ "qubits": r.qubit_count(), "out": out, "unitarity_residual": residual }),
    ))
}

fn apply_cmd(phases: &Path, state: Option<&Path>, out: &Path) -> CmdResult {
    let p = read_phases(phases)?;
    let r = multi_qubit_r(&p, Mode::Analysis)?;
    let input = match state {
        Some(path) => read_state(path)?,
        None => State::uniform(p.qubit_count())?,
    };
    let result = apply(&r, &input)?;
    io::write_state(out, &result)?;
    Ok(Outcome::ok(
        format!(
            "wrote {}-qubit state to {}\n",
            result.qubit_count(),
            out.display()
        ),
        json!({ "qubits": result.qubit_count(), "out": out }),
    ))
}

fn measure(state: &Path, report: Option<&Path>) -> CmdResult {
    let s = read_state(state)?;
    let m = s.qubit_count();
    if m < 2 {
        return Err(BadInput(format!(
            "measure needs at least 2 qubits, found {m}"
        )));
    }
    let mut text = String::new();
    let mut doc = serde_json::Map::new();
    doc.insert("qubits".into(), json!(m));
    if m == 2 {
        let c = concurrence_2q(&s)?;
        writeln!(text, "concurrence {c:.10}").unwrap();
        doc.insert("concurrence".into(), json!(c));
    }
    if m == 3 {
        let t = three_qubit_generators(&s)?;
        writeln!(text, "generators").unwrap();
        let mut rows = Vec::new();
        for (k, (((p, q), (r, u)), v)) in THREE_QUBIT_GENERATORS.iter().zip(t).enumerate() {
            writeln!(
                text,
                "  T{:<2} a{p}a{q} - a{r}a{u} = {:+.10} {:+.10}i  |T| {}",
                k + 1,
                v.re,
                v.im,
                sci(v.norm())
            )
            .unwrap();
            rows.push(json!({ "plus": [p, q], "minus": [r, u], "value": pair(v) }));
        }
        let m3 = measure_3q(&s)?;
        writeln!(text, "measure_3q {m3:.10}").unwrap();
        doc.insert("generators".into(), Value::Array(rows));
        doc.insert("measure_3q".into(), json!(m3));
    }
    let mq = measure_mq(&s)?;
    let per: Vec<f64> = (1..=m)
        .map(|j| max_abs_minor(&s, j))
        .collect::<braidgate::Result<_>>()?;
    writeln!(text, "measure {mq:.10}").unwrap();
    for (j, v) in per.iter().enumerate() {
        writeln!(text, "  max |minor| X^{} {}", j + 1, sci(*v)).unwrap();
    }
    doc.insert("measure".into(), json!(mq));
    doc.insert("max_abs_minor".into(), json!(per));
    if let Some(path) = report {
        let g = segre_generators(&s)?;
        io::write_json(path, &ReportFile::new(&g, mq))?;
        writeln!(text, "wrote report to {}", path.display()).unwrap();
        doc.insert("report".into(), json!(path));
    }
    Ok(Outcome::ok(text, Value::Object(doc)))
}

fn separability(state: &Path, tol: f64, partition: Option<usize>, verify: bool) -> CmdResult {
    let s = read_state(state)?;
    let m = s.qubit_count();
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(BadInput(format!(
            "tolerance must be finite and non-negative, got {tol}"
        )));
    }
    if s.is_zero() {
        return Err(braidgate::Error::ZeroState.into());
    }
    let qubits: Vec<usize> = match partition {
        Some(j) if j == 0 || j > m => {
            return Err(BadInput(format!("partition {j} outside 1..={m}")));
        }
        Some(j) => vec![j],
        None => (1..=m).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut agree = true;
    for &j in &qubits {
        let sep = is_j_separable(&s, j, tol)?;
        let word = if sep { "separable" } else { "not separable" };
        let mut row = json!({ "qubit": j, "separable": sep });
        if verify {
            let peel = peel_qubit(&s, j, tol)?;
            agree &= peel.success == sep;
            write!(
                text,
                "qubit {j}: {word} (peel residual {})",
                sci(peel.residual)
            )
            .unwrap();
            row["peel_residual"] = json!(peel.residual);
            row["agrees"] = json!(peel.success == sep);
        } else {
            write!(text, "qubit {j}: {word}").unwrap();
        }
        text.push('\n');
        rows.push(row);
    }
    let mut doc = json!({ "qubits": m, "tol": tol, "partitions": rows });
    if partition.is_none() {
        let full = is_fully_separable(&s, tol)?;
        writeln!(text, "fully separable: {}", if full { "yes" } else { "no" }).unwrap();
        doc["fully_separable"] = json!(full);
        if verify {
            let f = try_factor(&s, tol)?;
            agree &= f.success == full;
            writeln!(text, "factorization residual {}", sci(f.residual)).unwrap();
            doc["factor_residual"] = json!(f.residual);
        }
    }
    if verify {
        writeln!(
            text,
            "verification: {}",
            if agree { "agree" } else { "DISAGREE" }
        )
        .unwrap();
        doc["agree"] = json!(agree);
    }
    Ok(Outcome {
        passed: agree,
        text,
        json: doc,
    })
}

fn check(phases: Option<&Path>, operator: Option<&Path>, what: What, strands: usize) -> CmdResult {
    let (label, matrix) = match (phases, operator) {
        (Some(path), _) => {
            let p = read_phases(path)?;
            let r = multi_qubit_r(&p, Mode::Analysis)?;
            if what != What::Unitarity && p.qubit_count() != 2 {
                return Err(BadInput(format!(
                    "{} check needs a 2-qubit phase file or --operator, found {} qubits",
                    if what == What::Ybe { "ybe" } else { "braid" },
                    p.qubit_count()
                )));
            }
            (
                format!("{}-qubit entangler", p.qubit_count()),
                r.to_dense()?,
            )
        }
        (None, Some(path)) => {
            let file: OperatorFile = with_context(io::read_json(path), path)?;
            let m = with_context(file.into_matrix(), path)?;
            (format!("{}x{} operator", m.rows(), m.cols()), m)
        }
        (None, None) => return Err(BadInput("one of --phases or --operator is required".into())),
    };
    let residuals: Vec<(&str, f64)> = match what {
        What::Unitarity => vec![("unitarity", unitarity_residual(&matrix)?)],
        What::Ybe => vec![("ybe", ybe_residual(&TwoStrandOperator::new(matrix)?)?)],
        What::Braid => {
            let b = braid_relation_residuals(&TwoStrandOperator::new(matrix)?, strands)?;
            vec![("far_commutation", b.far_commutation), ("braid", b.braid)]
        }
    };
    let passed = residuals.iter().all(|(_, r)| *r < CHECK_TOL);
    let mut text = format!("{label}\n");
    let mut doc = json!({ "passed": passed, "threshold": CHECK_TOL });
    if what == What::Braid {
        writeln!(text, "strands {strands}").unwrap();
        doc["strands"] = json!(strands);
    }
    for (name, r) in &residuals {
        writeln!(text, "{name} residual {}", sci(*r)).unwrap();
        doc[*name] = json!(r);
    }
    writeln!(text, "{}", if passed { "PASS" } else { "FAIL" }).unwrap();
    Ok(Outcome {
        passed,
        text,
        json: doc,
    })
}

fn demo(kind: DemoState, qubits: usize, out: &Path) -> CmdResult {
    if qubits < 2 {
        return Err(BadInput(format!(
            "demo states need at least 2 qubits, got {qubits}"
        )));
    }
    let (name, s) = match kind {
        DemoState::Ghz => ("ghz", State::ghz(qubits)?),
        DemoState::W => ("w", State::w(qubits)?),
        DemoState::Product => ("product", State::uniform(qubits)?),
    };
    io::write_state(out, &s)?;
    Ok(Outcome::ok(
        format!(
            "wrote {name} state on {qubits} qubits to {}\n",
            out.display()
        ),
        json!({ "state": name, "qubits": qubits, "out": out }),
    ))
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Build {
            phases,
            out,
            format,
        } => build(&phases, &out, format),
        Command::Apply { phases, state, out } => apply_cmd(&phases, state.as_deref(), &out),
        Command::Measure { state, report } => measure(&state, report.as_deref()),
        Command::Separability {
            state,
            tol,
            partition,
            verify,
        } => separability(&state, tol, partition, verify),
        Command::Check {
            phases,
            operator,
            what,
            strands,
        } => check(phases.as_deref(), operator.as_deref(), what, strands),
        Command::Demo { state, qubits, out } => demo(state, qubits, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let json_mode = std::env::args().any(|a| a == "--json");
            if json_mode && e.use_stderr() {
                println!("{}", json!({ "error": e.kind().to_string() }));
            }
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.json);
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(BadInput(msg)) => {
            eprintln!("error: {msg}");
            if cli.json {
                println!("{}", json!({ "error": msg }));
            }
            ExitCode::from(2)
        }
    }
}
