//! `foxtwist`: build Fox pairings, compute generalized Dehn twists and run verification suites.
//!
//! Exit codes: 0 success, 1 verification or mathematical failure, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use foxtwist::automorphism::{twist, Automorphism};
use foxtwist::json::{
    from_json, pairing_from_doc, pairing_to_doc, series_from_doc, series_to_doc, to_pretty_json, twist_to_doc,
    PairingDoc, SeriesDoc,
};
use foxtwist::linalg::RationalMatrix;
use foxtwist::pairing::{FoxPairing, NablaElement, TruncatedPairing};
use foxtwist::report::Report;
use foxtwist::scalar::{format_rational, parse_rational};
use foxtwist::surfaces::SurfaceSpec;
use foxtwist::verify::{run_suite, Suite};
use foxtwist::{Alphabet, Error, GroupWord, Series};

#[derive(Parser, Debug)]
#[command(name = "foxtwist", version, about = "Exact Fox pairings and generalized Dehn twists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a pairing from a surface preset or a nabla series and print its homological form.
    Pairing(PairingArgs),
    /// Compute a generalized Dehn twist, optionally applying it to a word.
    Twist(TwistArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Source {
    /// Surface preset `genus:g` (one boundary component).
    #[arg(long)]
    surface: Option<String>,
    /// Pairing JSON file.
    #[arg(long, conflicts_with = "surface")]
    pairing: Option<PathBuf>,
    /// Series JSON file for nabla.
    #[arg(long, conflicts_with_all = ["surface", "pairing"])]
    nabla: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Output {
    /// Degree cap M: results are exact modulo degree M.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(2..=8))]
    degree: u8,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON artifact to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct PairingArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TwistArgs {
    #[command(flatten)]
    source: Source,
    /// Curve word, e.g. "a b^-1" or "x1 x2".
    #[arg(long)]
    curve: String,
    /// Twist parameter as an exact fraction.
    #[arg(long, allow_hyphen_values = true)]
    k: String,
    /// Word whose image is printed instead of the twist.
    #[arg(long)]
    apply: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug)]
enum Failure {
    /// Exit code 1.
    Verification(String),
    /// Exit code 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotNondegenerate(_)
            | Error::Isotropy(_)
            | Error::NilpotencyCapExceeded(_)
            | Error::NotInvertible(_)
            | Error::Solver(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// A resolved pairing together with the names used to parse and print words.
struct Context {
    rho: TruncatedPairing,
    alphabet: Alphabet,
    surface: Option<SurfaceSpec>,
}

impl Context {
    fn parse_word(&self, text: &str) -> CliResult<GroupWord> {
        Ok(match &self.surface {
            Some(s) => s.parse_word(text)?,
            None => self.alphabet.parse_word(text)?,
        })
    }

    fn format_series(&self, s: &Series) -> String {
        s.format_with(&|l| format!("X_{}", self.alphabet.name(l as usize)))
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_surface(text: &str, degree: usize) -> CliResult<SurfaceSpec> {
    let genus = text
        .strip_prefix("genus:")
        .and_then(|g| g.parse::<usize>().ok())
        .ok_or_else(|| Failure::Input(format!("surface must be `genus:g`, got `{text}`")))?;
    Ok(SurfaceSpec::new(genus, degree)?)
}

fn resolve(source: &Source, degree: usize) -> CliResult<Context> {
    if let Some(text) = &source.surface {
        let surface = parse_surface(text, degree)?;
        return Ok(Context { rho: surface.pairing(), alphabet: surface.alphabet(), surface: Some(surface) });
    }
    let rho = if let Some(path) = &source.pairing {
        let doc: PairingDoc = from_json(&read(path)?)?;
        match pairing_from_doc(&doc)? {
            FoxPairing::Exact(e) => e.completion(degree),
            FoxPairing::Truncated(t) => t.truncate(t.cap().min(degree)),
        }
    } else if let Some(path) = &source.nabla {
        let doc: SeriesDoc = from_json(&read(path)?)?;
        let series = series_from_doc(&doc, None)?;
        if series.cap() < 4 {
            return Err(Failure::Input(format!("nabla needs degree cap at least 4, got {}", series.cap())));
        }
        NablaElement::new(series.truncate(series.cap().min(degree + 2)))?.pairing()?
    } else {
        return Err(Failure::Input("one of --surface, --pairing or --nabla is required".into()));
    };
    let alphabet = Alphabet::standard(rho.rank());
    Ok(Context { rho, alphabet, surface: None })
}

fn format_matrix(m: &RationalMatrix) -> String {
    m.iter()
        .map(|row| format!("[{}]", row.iter().map(format_rational).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Writes the artifact to `--out` and returns what goes to stdout.
fn emit(output: &Output, artifact: &str, text: impl FnOnce() -> String) -> CliResult<String> {
    if let Some(path) = &output.out {
        fs::write(path, artifact).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(match output.format {
        Format::Json => artifact.to_string(),
        Format::Text => {
            let mut t = text();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
    })
}

fn cmd_pairing(args: &PairingArgs) -> CliResult<String> {
    let context = resolve(&args.source, args.output.degree as usize)?;
    let artifact = to_pretty_json(&pairing_to_doc(&FoxPairing::Truncated(context.rho.clone())));
    emit(&args.output, &artifact, || format_matrix(&context.rho.homological_form()))
}

fn cmd_twist(args: &TwistArgs) -> CliResult<String> {
    let degree = args.output.degree as usize;
    let context = resolve(&args.source, degree)?;
    let curve = context.parse_word(&args.curve)?;
    let k = parse_rational(&args.k)?;
    let t: Automorphism = twist(&context.rho, &k, &curve)?;
    if let Some(text) = &args.apply {
        let w = context.parse_word(text)?;
        let image = t.apply(&Series::embed_word(&w, t.cap()))?;
        let artifact = to_pretty_json(&series_to_doc(&image));
        return emit(&args.output, &artifact, || context.format_series(&image));
    }
    let artifact = to_pretty_json(&twist_to_doc(&t));
    emit(&args.output, &artifact, || {
        t.images()
            .iter()
            .enumerate()
            .map(|(i, image)| format!("{} -> {}", context.alphabet.name(i + 1), context.format_series(image)))
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn format_report(report: &Report) -> String {
    let mut lines: Vec<String> = report
        .checks
        .iter()
        .map(|c| {
            let status = if c.pass { "PASS" } else { "FAIL" };
            match &c.witness {
                Some(w) => format!("{status} {} ({w})", c.name),
                None => format!("{status} {}", c.name),
            }
        })
        .collect();
    let passed = report.checks.iter().filter(|c| c.pass).count();
    lines.push(format!("{}: {passed} of {} checks passed", report.suite, report.checks.len()));
    lines.join("\n")
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<(String, bool)> {
    let suite: Suite = args.suite.parse()?;
    let report = run_suite(suite, args.output.degree as usize)?;
    let artifact = to_pretty_json(&report);
    let stdout = emit(&args.output, &artifact, || format_report(&report))?;
    Ok((stdout, report.passed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Pairing(args) => cmd_pairing(args).map(|s| (s, true)),
        Command::Twist(args) => cmd_twist(args).map(|s| (s, true)),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok((stdout, passed)) => {
            print!("{stdout}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Verification(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
