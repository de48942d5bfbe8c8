//! `stralg`: batch analysis of string algebras given in the quiver DSL.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stralg::cma::build_cma;
use stralg::export::{presentation_json, to_dot};
use stralg::gentle::{derived_class, forbidden_structures, homological_dimensions, DerivedClass};
use stralg::gproj::perfect_paths;
use stralg::oracle::verify_cma_with_bound;
use stralg::quiver::{classify, parse, to_dsl, MonomialAlgebra};
use stralg::strings::{all_strings, enumerate_strings, representation_type, summarize};
use stralg::{Error, Presentation};

#[derive(Debug, Parser)]
#[command(
    name = "stralg",
    version,
    about = "Gorenstein-projectives and CM-Auslander algebras of string algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dsl,
    Dot,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Input file in the quiver DSL.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse the input and report its size.
    Validate(Common),
    /// Check the monomial, string and gentle axioms.
    Classify(Common),
    /// List strings up to equivalence.
    Strings {
        #[command(flatten)]
        common: Common,
        /// Longest string to list; defaults to all strings for finite type
        /// and to 6 otherwise.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Decide representation-finiteness.
    Reptype(Common),
    /// Perfect paths and Gorenstein-projective modules.
    Gproj(Common),
    /// The CM-Auslander algebra as a bound quiver.
    Cma(Common),
    /// Global and injective dimension of a gentle algebra.
    Dims(Common),
    /// Derived representation type of a gentle algebra.
    Derived(Common),
    /// Cross-check the CM-Auslander algebra against Hom dimensions.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest truncation degree for the quotient dimension.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Re-emit the input presentation.
    Export(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Classify(c)
            | Command::Reptype(c)
            | Command::Gproj(c)
            | Command::Cma(c)
            | Command::Dims(c)
            | Command::Derived(c)
            | Command::Export(c) => c,
            Command::Strings { common, .. } | Command::Verify { common, .. } => common,
        }
    }
}

/// A failure with its exit status: 1 for analysis errors, 2 for usage and
/// parse errors.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. } | Error::Duplicate { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A rendered report and the exit status it carries.
struct Report {
    text: String,
    code: u8,
}

impl From<String> for Report {
    fn from(text: String) -> Self {
        Report { text, code: 0 }
    }
}

fn run(command: &Command) -> Result<Report, Failure> {
    let common = command.common();
    let text = fs::read_to_string(&common.input)
        .map_err(|e| usage(format!("cannot read {}: {e}", common.input.display())))?;
    let pres = parse(&text)?;
    let format = common.format;
    let allowed: &[Format] = match command {
        Command::Validate(_) | Command::Cma(_) | Command::Export(_) => {
            &[Format::Text, Format::Json, Format::Dsl, Format::Dot]
        }
        _ => &[Format::Text, Format::Json],
    };
    if !allowed.contains(&format) {
        return Err(usage(
            format!("format {format:?} is not available for this command").to_lowercase(),
        ));
    }
    let name = common
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "quiver".into());

    let text: Result<String, Failure> = match command {
        Command::Validate(_) | Command::Export(_) => Ok(render_presentation(&pres, format, &name)),
        Command::Classify(_) => {
            let r = classify(&pres);
            Ok(match format {
                Format::Json => json_text(&json!(r)),
                _ => {
                    let mut out = format!(
                        "monomial: {}\nstring: {}\ngentle: {}\n",
                        yes_no(r.is_monomial),
                        yes_no(r.is_string),
                        yes_no(r.is_gentle)
                    );
                    for v in &r.violations {
                        out.push_str(&format!("violation: {v}\n"));
                    }
                    out
                }
            })
        }
        Command::Strings { max_len, .. } => {
            let words = match max_len {
                Some(n) => enumerate_strings(&pres, *n),
                None => all_strings(&pres).unwrap_or_else(|| enumerate_strings(&pres, 6)),
            };
            let summaries: Vec<_> = words.iter().map(|w| summarize(&pres, w)).collect();
            Ok(match format {
                Format::Json => {
                    json_text(&json!({ "count": summaries.len(), "strings": summaries }))
                }
                _ => {
                    let mut out = format!("{} strings\n", summaries.len());
                    for s in &summaries {
                        out.push_str(&format!("{}  {:?}\n", s.word, s.dimension_vector));
                    }
                    out
                }
            })
        }
        Command::Reptype(_) => {
            let r = representation_type(&pres);
            let q = &pres.quiver;
            let witness = r.witness.as_ref().map(|w| w.display(q));
            Ok(match format {
                Format::Json => json_text(&json!({
                    "finite": r.finite,
                    "witness": witness,
                    "witness_is_band": r.witness_is_band,
                })),
                _ => match witness {
                    None => "representation-finite\n".into(),
                    Some(w) => format!(
                        "representation-infinite ({} {w})\n",
                        if r.witness_is_band {
                            "band"
                        } else {
                            "cyclic walk"
                        }
                    ),
                },
            })
        }
        Command::Gproj(_) => {
            let alg = MonomialAlgebra::new(&pres)?;
            let summary = perfect_paths(&alg)?.summary(&pres.quiver);
            Ok(match format {
                Format::Json => json_text(&json!(summary)),
                _ => {
                    let mut out = format!("perfect paths: {}\n", summary.perfect_paths.join(", "));
                    for s in &summary.perfect_path_sequences {
                        out.push_str(&format!("sequence: ({})\n", s.join(", ")));
                    }
                    for g in &summary.gprojectives {
                        out.push_str(&format!(
                            "{}  {}  {:?}\n",
                            g.label, g.string, g.dimension_vector
                        ));
                    }
                    out.push_str(&format!(
                        "CM-free: {}\nCM-finite: {}\n",
                        yes_no(summary.cm_free),
                        yes_no(summary.cm_finite)
                    ));
                    out
                }
            })
        }
        Command::Cma(_) => {
            let cma = build_cma(&pres)?;
            let out = &cma.presentation;
            Ok(match format {
                Format::Json => json_text(&cma.to_json(&pres.quiver)),
                Format::Dsl => to_dsl(out),
                Format::Dot => to_dot(out, &format!("{name}-cma")),
                Format::Text => format!(
                    "{} vertices, {} arrows, {} relations\n{}",
                    out.quiver.vertex_count(),
                    out.quiver.arrow_count(),
                    out.relations.len(),
                    to_dsl(out)
                ),
            })
        }
        Command::Dims(_) => {
            let d = homological_dimensions(&pres)?;
            let f = forbidden_structures(&pres)?;
            let threads: Vec<String> = f.threads.iter().map(|t| t.display(&pres)).collect();
            let gldim = d.gldim.map_or("infinity".to_string(), |g| g.to_string());
            Ok(match format {
                Format::Json => json_text(&json!({
                    "gldim": d.gldim.map_or(json!("infinity"), |g| json!(g)),
                    "injdim": d.injdim,
                    "threads": threads,
                    "off_cycle_sup": d.off_cycle_sup,
                    "on_cycle_arrows": d.on_cycle_arrows,
                })),
                _ => format!(
                    "gl.dim = {gldim}, inj.dim = {}\nthreads: {}\n",
                    d.injdim,
                    threads.join(", ")
                ),
            })
        }
        Command::Derived(_) => {
            let r = derived_class(&pres)?;
            let witness = r.witness.as_ref().map(|w| w.display(&pres.quiver));
            Ok(match format {
                Format::Json => json_text(&json!({ "class": r.class, "witness": witness })),
                _ => match (r.class, witness) {
                    (DerivedClass::Discrete, _) => "derived discrete\n".into(),
                    (DerivedClass::StronglyUnbounded, w) => {
                        format!(
                            "strongly derived unbounded (homotopy band {})\n",
                            w.unwrap_or_default()
                        )
                    }
                },
            })
        }
        Command::Verify { degree_bound, .. } => {
            let r = verify_cma_with_bound(&pres, *degree_bound)?;
            let body = match format {
                Format::Json => json_text(&json!(r)),
                _ => {
                    let mut out = format!(
                        "{}: D1 = {}, D2 = {} (truncation degree {})\n",
                        if r.pass { "pass" } else { "FAIL" },
                        r.d1,
                        r.d2,
                        r.degree
                    );
                    for f in &r.failures {
                        out.push_str(&format!("failure: {f}\n"));
                    }
                    out
                }
            };
            return Ok(Report {
                text: body,
                code: if r.pass { 0 } else { 1 },
            });
        }
    };
    Ok(text?.into())
}

fn render_presentation(pres: &Presentation, format: Format, name: &str) -> String {
    match format {
        Format::Json => json_text(&presentation_json(pres)),
        Format::Dsl => to_dsl(pres),
        Format::Dot => to_dot(pres, name),
        Format::Text => format!(
            "{} vertices, {} arrows, {} relations\n",
            pres.quiver.vertex_count(),
            pres.quiver.arrow_count(),
            pres.relations.len()
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => match &cli.command.common().output {
            Some(path) => match fs::write(path, &report.text) {
                Ok(()) => ExitCode::from(report.code),
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(1)
                }
            },
            None => {
                print!("{}", report.text);
                ExitCode::from(report.code)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message.trim_end());
            ExitCode::from(f.code)
        }
    }
}
