use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use irmult::fitter::DEFAULT_N_MAX;
use irmult::fuzz::{minimal_failure, run_campaign, FuzzConfig};
use irmult::report::{digest, table_rows, ReportDocument};
use irmult::theorem::{
    multiplicity_report_with_window, reproduce_example_direct_sum, reproduce_example_staircase, ulrich_check,
    ExampleReport,
};
use irmult::{parse_instance, AlgebraError, InstanceDocument};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "irmult", version, about = "Hilbert and irreducible multiplicities of monomial modules")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, H(n), IR(n) and the first difference of H.
    Table {
        file: PathBuf,
        #[arg(long, env = "IRMULT_N_MAX")]
        n_max: Option<u32>,
    },
    /// Fitted multiplicities and the inequality verdict.
    Multiplicities {
        file: PathBuf,
        #[arg(long, env = "IRMULT_N_MAX")]
        n_max: Option<u32>,
    },
    /// Exit 0 iff the inequality (and equality under the colon criterion) holds.
    Verify {
        file: PathBuf,
        #[arg(long, env = "IRMULT_N_MAX")]
        n_max: Option<u32>,
    },
    /// Ulrich check against the parameter ideal `Q` of the file.
    Ulrich {
        file: PathBuf,
        #[arg(long, env = "IRMULT_N_MAX")]
        n_max: Option<u32>,
    },
    /// Least Artin-Rees exponent for the ideal `J` of the file.
    ArtinRees {
        file: PathBuf,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long, env = "IRMULT_N_MAX")]
        n_max: Option<u32>,
    },
    /// Reproduce one of the built-in worked examples.
    Examples {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Seeded property campaign.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 2)]
        components: usize,
        #[arg(long, default_value_t = 4)]
        exp: u32,
        #[arg(long, env = "IRMULT_N_MAX")]
        n_max: Option<u32>,
        #[arg(long, default_value_t = 12)]
        k_max: u32,
        /// Use the maximal ideal as I.
        #[arg(long)]
        madic: bool,
        /// Where the shrunk failing instance goes.
        #[arg(long, default_value = "fuzz-failure.irm")]
        failure_out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Staircase,
    DirectSum,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let code = if e.is_budget() {
            EXIT_BUDGET
        } else if matches!(e, AlgebraError::DegreeExceeded(_) | AlgebraError::Overflow(_)) {
            EXIT_VIOLATION
        } else {
            EXIT_INPUT
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn load(path: &Path) -> Result<(InstanceDocument, String), Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let doc = parse_instance(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let hash = digest(&doc.to_canonical_string());
    Ok((doc, hash))
}

fn emit<T: Serialize>(json: bool, command: &str, hash: Option<String>, result: &T, text: impl FnOnce() -> String) {
    let out = if json { ReportDocument::new(command, hash, result).to_json() + "\n" } else { text() };
    // A closed pipe (`| head`) is not an error worth a panic.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Table { file, n_max } => {
            let (doc, hash) = load(&file)?;
            let n_max = n_max.or(doc.options.n_max).unwrap_or(DEFAULT_N_MAX);
            let samples = doc.module().growth_samples(&doc.ideal_i, n_max)?;
            let rows = table_rows(&samples.hilbert, &samples.irreducibility);
            emit(json, "table", Some(hash), &rows, || {
                let mut out = format!("{:>4} {:>12} {:>12} {:>12}\n", "n", "H", "IR", "dH");
                for r in &rows {
                    let dh = r.hilbert_jump.map_or("-".to_string(), |d| d.to_string());
                    out.push_str(&format!("{:>4} {:>12} {:>12} {:>12}\n", r.n, r.hilbert, r.irreducibility, dh));
                }
                out
            });
            Ok(0)
        }
        Command::Multiplicities { file, n_max } => {
            let (doc, hash) = load(&file)?;
            let report = multiplicities(&doc, n_max)?;
            emit(json, "multiplicities", Some(hash), &report, || {
                format!(
                    "t = {}\ne0 = {}\nf0 = {}\nsocle(M) = {}\nbound = {}\ninequality: {}\n\
                     colon criterion from n = {}\nequality: {}\nH coefficients: {:?} (n0 = {})\n\
                     IR coefficients: {:?} (n0 = {})\n",
                    report.t,
                    report.e0,
                    report.f0,
                    report.socle0,
                    report.bound,
                    verdict(report.inequality_holds),
                    report.equality_criterion_n.map_or("-".to_string(), |n| n.to_string()),
                    verdict(report.equality_holds),
                    report.hilbert_coefficients,
                    report.n0_hilbert,
                    report.irreducibility_coefficients,
                    report.n0_irred,
                )
            });
            Ok(0)
        }
        Command::Verify { file, n_max } => {
            let (doc, hash) = load(&file)?;
            let report = multiplicities(&doc, n_max)?;
            let ok = report.theorem_holds();
            emit(json, "verify", Some(hash), &report, || {
                if ok {
                    format!("ok: f0 = {} <= {}\n", report.f0, report.bound)
                } else if !report.inequality_holds {
                    format!("violation: f0 = {} exceeds the bound {}\n", report.f0, report.bound)
                } else {
                    format!(
                        "violation: colon criterion holds from n = {:?} but f0 = {} != {}\n",
                        report.equality_criterion_n, report.f0, report.bound
                    )
                }
            });
            Ok(if ok { 0 } else { EXIT_VIOLATION })
        }
        Command::Ulrich { file, n_max } => {
            let (doc, hash) = load(&file)?;
            let q = doc.ideal_q.as_ref().ok_or_else(|| input_error("the ulrich command needs a `Q = (...)` block"))?;
            let n_max = n_max.or(doc.options.n_max).unwrap_or(DEFAULT_N_MAX);
            let report = ulrich_check(&doc.module(), q, n_max)?;
            emit(json, "ulrich", Some(hash), &report, || {
                format!(
                    "t = {}\nQ = {}\nfQ0 = {}\nl(M/QM) = {}\neQ0 = {}\nCohen-Macaulay: {}\nmu(M) = {}\nstatus: {:?}\n",
                    report.t,
                    report.q,
                    report.f_q0,
                    report.colength,
                    report.e_q0,
                    report.cohen_macaulay,
                    report.minimal_generators,
                    report.status
                )
            });
            Ok(0)
        }
        Command::ArtinRees { file, k_max, n_max } => {
            let (doc, hash) = load(&file)?;
            let j =
                doc.ideal_j.as_ref().ok_or_else(|| input_error("the artin-rees command needs a `J = (...)` block"))?;
            let n_max = n_max.or(doc.options.n_max).unwrap_or(15);
            let k_max = k_max.or(doc.options.k_max).unwrap_or(12);
            let k = doc.module().find_artin_rees_k(&doc.ideal_i, j, n_max, k_max)?;
            #[derive(Serialize)]
            struct Found {
                k: u32,
                n_max: u32,
                k_max: u32,
            }
            emit(json, "artin-rees", Some(hash), &Found { k, n_max, k_max }, || format!("k = {k}\n"));
            Ok(0)
        }
        Command::Examples { which, d, l, n_max } => {
            let report = match which {
                Which::Staircase => reproduce_example_staircase(d, l, n_max)?,
                Which::DirectSum => reproduce_example_direct_sum(n_max)?,
            };
            emit(json, "examples", None, &report, || example_text(&report));
            Ok(if report.all_passed() { 0 } else { EXIT_VIOLATION })
        }
        Command::Fuzz { seed, count, vars, components, exp, n_max, k_max, madic, failure_out } => {
            if vars == 0 || components == 0 || exp == 0 {
                return Err(input_error("--vars, --components and --exp must be positive"));
            }
            let cfg = FuzzConfig {
                seed,
                count,
                s_max: vars,
                comp_max: components,
                exp_max: exp,
                n_max: n_max.unwrap_or(DEFAULT_N_MAX),
                k_max,
                madic,
                ..FuzzConfig::default()
            };
            let report = run_campaign(&cfg);
            emit(json, "fuzz", None, &report, || report.to_text());
            if report.all_passed() {
                return Ok(0);
            }
            if let Some(doc) = minimal_failure(&cfg, &report) {
                fs::write(&failure_out, doc.to_canonical_string())
                    .map_err(|e| input_error(format!("{}: {e}", failure_out.display())))?;
                eprintln!("minimal failing instance written to {}", failure_out.display());
            }
            Ok(EXIT_VIOLATION)
        }
    }
}

fn multiplicities(doc: &InstanceDocument, n_max: Option<u32>) -> Result<irmult::MultiplicityReport, Failure> {
    let n_max = n_max.or(doc.options.n_max).unwrap_or(DEFAULT_N_MAX);
    let window = doc.options.window.unwrap_or(irmult::fitter::DEFAULT_WINDOW);
    Ok(multiplicity_report_with_window(&doc.module(), &doc.ideal_i, n_max, window)?)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

fn example_text(report: &ExampleReport) -> String {
    let mut out = format!("{}\n", report.example);
    for c in &report.checks {
        out.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
