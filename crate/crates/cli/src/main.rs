//! `levelmod`: composition factors of level-2 and level-p congruence
//! subgroup homology, from the command line.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use levelmod::meataxe::Certificate;
use levelmod::pipelines::{self, Family, FactorReport, Params, Verification, MAX_N, MAX_P};
use levelmod::sato::{dump_lines, verify_sato_basis, QuadraticForm, MAX_GENUS};
use levelmod::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ENGINE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "levelmod", version, about = "Composition factors of congruence subgroup homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chop one family member and print its composition factors.
    Factors(FactorsArgs),
    /// Run every check and exit 0 iff all verified reports match.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Inspect the Z/8 function algebra.
    Sato {
        #[command(subcommand)]
        action: SatoAction,
    },
    /// Rebuild a report from a stored chop certificate.
    Certify(CertifyArgs),
}

#[derive(Args, Debug)]
struct Member {
    /// mod-level2, torelli, sp-level2, punctured, closed or aut-congruence.
    family: String,
    /// Genus, for the surface families.
    #[arg(long)]
    genus: Option<usize>,
    /// Rank, for aut-congruence.
    #[arg(long)]
    n: Option<usize>,
    /// Characteristic, for aut-congruence.
    #[arg(long)]
    p: Option<u8>,
    /// Seed for chop and identification, decimal or 0x-prefixed hex.
    #[arg(long, value_parser = parse_seed, default_value = "0x5A70")]
    seed: u64,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FactorsArgs {
    #[command(flatten)]
    member: Member,
    /// Write the chop certificates as JSON.
    #[arg(long)]
    cert_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    member: Member,
    /// Certificate file written by `factors --cert-out`.
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Every table, periodicity and structure check within the bounds.
    All {
        #[arg(long, default_value_t = 5)]
        max_genus: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_parser = parse_seed, default_value = "0x5A70")]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SatoAction {
    /// Print the value tables of the monomial basis.
    Dump {
        #[arg(long)]
        genus: usize,
        /// Basis values of the quadratic form as a bit mask.
        #[arg(long, default_value_t = 0)]
        form: u32,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

enum Failure {
    Usage(String),
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Engine(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn resolve(m: &Member) -> Result<(Family, Params), Failure> {
    let family: Family = m.family.parse()?;
    let params = if family.is_linear() {
        match (m.n, m.p, m.genus) {
            (Some(n), Some(p), None) => {
                if n > MAX_N || p > MAX_P {
                    return Err(Failure::Usage(format!("bounds are n <= {MAX_N}, p <= {MAX_P}")));
                }
                Params::linear(n, p)
            }
            _ => return Err(Failure::Usage(format!("{family} takes --n and --p"))),
        }
    } else {
        match (m.genus, m.n, m.p) {
            (Some(g), None, None) => {
                if g > MAX_GENUS {
                    return Err(Failure::Usage(format!("bound is g <= {MAX_GENUS}")));
                }
                Params::genus(g)
            }
            _ => return Err(Failure::Usage(format!("{family} takes --genus"))),
        }
    };
    Ok((family, params))
}

fn render_table(r: &FactorReport) -> String {
    let mut s = format!("{} {} over {}: source dimension {}, seed {:#x}\n", r.family, r.params, r.params.field, r.source_dimension, r.seed);
    s.push_str(&format!("{:<18} {:>5} {:>5}  {}\n", "factor", "dim", "mult", "weight"));
    for f in &r.factors {
        s.push_str(&format!("{:<18} {:>5} {:>5}  {}\n", f.label, f.dimension, f.multiplicity, f.weight));
    }
    s.push_str(&format!("verified: {}\n", verification_name(r.verified)));
    s
}

fn verification_name(v: Verification) -> &'static str {
    match v {
        Verification::Match => "match",
        Verification::Mismatch => "mismatch",
        Verification::NoExpectation => "no-expectation",
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn report_output(r: &FactorReport, m: &Member) -> Result<u8, Failure> {
    let text = if m.json {
        let mut s = serde_json::to_string_pretty(r).map_err(|e| Failure::Engine(e.to_string()))?;
        s.push('\n');
        s
    } else {
        render_table(r)
    };
    emit(&text, m.out.as_ref())?;
    Ok(if r.verified == Verification::Mismatch { EXIT_MISMATCH } else { 0 })
}

fn factors(a: &FactorsArgs) -> Result<u8, Failure> {
    let (family, params) = resolve(&a.member)?;
    let run = pipelines::run(family, &params, a.member.seed)?;
    if let Some(path) = &a.cert_out {
        let s = serde_json::to_string(&run.certificates()).map_err(|e| Failure::Engine(e.to_string()))?;
        fs::write(path, s)?;
    }
    report_output(&run.report, &a.member)
}

fn certify(a: &CertifyArgs) -> Result<u8, Failure> {
    let (family, params) = resolve(&a.member)?;
    let text = fs::read_to_string(&a.cert)?;
    let certs: Vec<Certificate> = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", a.cert.display())))?;
    let report = pipelines::certify(family, &params, &certs, a.member.seed)?;
    report_output(&report, &a.member)
}

fn sato_dump(genus: usize, form: u32) -> Result<u8, Failure> {
    let q = QuadraticForm::new(genus, form)?;
    let mut s = dump_lines(genus, &q)?.join("\n");
    s.push('\n');
    emit(&s, None)?;
    Ok(0)
}

/// Runs `jobs` on a pool of `threads` workers, keeping input order.
fn pooled<T: Sync, R: Send>(jobs: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = f(&jobs[i]);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every job ran")).collect()
}

fn compact(r: &FactorReport) -> String {
    let parts: Vec<String> = r.factors.iter().map(|f| format!("{}x{}", f.weight, f.multiplicity)).collect();
    parts.join(", ")
}

fn verify_all(max_genus: usize, max_n: usize, threads: Option<usize>, seed: u64) -> Result<u8, Failure> {
    if max_genus > MAX_GENUS || max_n > MAX_N || max_genus < 2 || max_n < 3 {
        return Err(Failure::Usage(format!("bounds are 2 <= max-genus <= {MAX_GENUS}, 3 <= max-n <= {MAX_N}")));
    }
    let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let mut failed = false;
    let mut out = String::new();

    for g in 2..=max_genus.min(4) {
        let r = verify_sato_basis(g, &QuadraticForm::zero(g)?)?;
        let expect = (2 * g, g * (2 * g - 1), 2 * g * (2 * g - 1) * (2 * g - 2) / 6);
        let ok = r.holds && r.exponents == expect;
        failed |= !ok;
        out.push_str(&format!("{} sato-basis g={g} exponents {:?}\n", if ok { "PASS" } else { "FAIL" }, r.exponents));
    }

    let plan = pipelines::verification_plan(max_genus, max_n);
    let results = pooled(&plan, threads, |(f, p)| pipelines::run(*f, p, seed).map(|r| r.report));
    let mut reports = Vec::new();
    for ((family, params), r) in plan.iter().zip(results) {
        let r = r.map_err(|e| Failure::Engine(format!("{family} {params}: {e}")))?;
        let tag = match r.verified {
            Verification::Match => "PASS",
            Verification::Mismatch => {
                failed = true;
                "FAIL"
            }
            Verification::NoExpectation => "INFO",
        };
        out.push_str(&format!("{tag} {family} {params}: {}\n", compact(&r)));
        reports.push(r);
    }

    let mut classes: BTreeMap<(Family, u8, usize), Vec<&FactorReport>> = BTreeMap::new();
    for r in &reports {
        let key = match (r.params.g, r.params.n) {
            (Some(g), _) if g >= 3 => (r.family, 2, g % 2),
            (_, Some(n)) => (r.family, r.params.p, n % r.params.p as usize),
            _ => continue,
        };
        classes.entry(key).or_default().push(r);
    }
    for ((family, p, class), members) in classes.into_iter().filter(|(_, v)| v.len() > 1) {
        let ok = members.windows(2).all(|w| w[0].label_multiplicities() == w[1].label_multiplicities());
        failed |= !ok;
        let names: Vec<String> = members.iter().map(|r| r.params.to_string()).collect();
        let class = if family.is_linear() { format!("n = {class} mod {p}") } else if class == 0 { "even g".into() } else { "odd g".into() };
        out.push_str(&format!("{} periodicity {family} {class}: {}\n", if ok { "PASS" } else { "FAIL" }, names.join(", ")));
    }

    emit(&out, None)?;
    Ok(if failed { EXIT_MISMATCH } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Factors(a) => factors(a),
        Command::Certify(a) => certify(a),
        Command::Verify { target: VerifyTarget::All { max_genus, max_n, threads, seed } } => verify_all(*max_genus, *max_n, *threads, *seed),
        Command::Sato { action: SatoAction::Dump { genus, form } } => sato_dump(*genus, *form),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Engine(m)) => {
            eprintln!("engine error: {m}");
            ExitCode::from(EXIT_ENGINE)
        }
    }
}
