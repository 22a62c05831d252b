//! Command-line front end. JSON goes to standard output, diagnostics to the
//! error stream.
//!
//! Exit codes: 0 ok or isomorphic, 1 not isomorphic, 2 input error,
//! 3 unsupported (non-chordal input or truncated search).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::angle::{bad_separators, candidate_bad_edges, gross_separators, has_shared_head_vertex, star_decomposition};
use crate::canon::canonical_labeling;
use crate::chordal::chordality;
use crate::diagram::PDiagram;
use crate::error::Error;
use crate::expansion::{blow_up, expand};
use crate::format::{export, json_value, parse_auto, Format};
use crate::georep::verify_blowup;
use crate::iso::{decide_isomorphic, DecideOptions, VerdictKind};
use crate::spherical::bases;
use crate::twist::{enumerate_twist_moves, twist_orbit, MoveRecord, OrbitOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ISOMORPHIC: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coxtwist", version, about = "Diagram twisting and isomorphism testing for chordal Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chordality, bases, bad 5-edges and their star decompositions.
    Check { file: PathBuf },
    /// Canonical form and canonical generator ordering.
    Canon { file: PathBuf },
    /// All elementary twist moves.
    Twists { file: PathBuf },
    /// Apply one move given as JSON.
    Apply {
        file: PathBuf,
        #[arg(long = "move")]
        mv: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Cross-eyed twist along a bad 5-edge.
    CrossEye {
        file: PathBuf,
        /// The edge as `s,t`.
        #[arg(long)]
        edge: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Blow up until no base is eligible.
    Expand { file: PathBuf },
    /// Canonical forms reachable by twist moves.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        no_cross_eyed: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max: usize,
    },
    /// Decide whether two diagrams define isomorphic groups.
    Decide {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Re-check every blow-up numerically and replay the certificate.
        #[arg(long)]
        verify: bool,
    },
    /// Convert to another format.
    Export {
        file: PathBuf,
        #[arg(long)]
        format: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotChordal | Error::OrbitTruncated { .. } => EXIT_UNSUPPORTED,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn load(path: &Path) -> Result<PDiagram, Failure> {
    let bytes = std::fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    parse_auto(&bytes).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn output_diagram(d: &PDiagram, format: &str) -> Result<String, Failure> {
    let f: Format = format.parse()?;
    Ok(match f {
        Format::Json => pretty(&json_value(d)),
        other => export(d, other),
    })
}

fn check(d: &PDiagram) -> Value {
    let witness = chordality(d);
    let edges = candidate_bad_edges(d);
    let mut analyses = Vec::new();
    if witness.chordal {
        for (x, y) in &edges {
            let analysis = (|| -> crate::error::Result<Value> {
                Ok(json!({
                    "edge": [x, y],
                    "bad_separators": bad_separators(d, x, y)?,
                    "gross_separators": gross_separators(d, x, y)?,
                    "star_decomposition": star_decomposition(d, x, y)?,
                }))
            })();
            analyses.push(analysis.unwrap_or_else(|e| json!({ "edge": [x, y], "error": e.to_string() })));
        }
    }
    json!({
        "generators": d.names(),
        "chordality": witness,
        "bases": bases(d),
        "candidate_bad_edges": edges.iter().map(|(x, y)| [x, y]).collect::<Vec<_>>(),
        "bad_edges": analyses,
    })
}

fn run_command(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let mut emit = |s: String| out.write_all(s.as_bytes()).map_err(|e| Failure { code: EXIT_INPUT, message: e.to_string() });
    match cmd {
        Command::Check { file } => {
            let d = load(&file)?;
            let report = check(&d);
            emit(pretty(&report))?;
            if report["chordality"]["chordal"] == false {
                let _ = writeln!(err, "diagram is not chordal; bad-edge analysis skipped");
            }
            Ok(EXIT_OK)
        }
        Command::Canon { file } => {
            let d = load(&file)?;
            let (form, order) = canonical_labeling(&d);
            let names: Vec<&str> = order.iter().map(|&i| d.name(i)).collect();
            emit(pretty(&json!({ "canonical_form": form.to_hex(), "ordering": names })))?;
            Ok(EXIT_OK)
        }
        Command::Twists { file } => {
            let d = load(&file)?;
            let moves: Vec<Value> = enumerate_twist_moves(&d)
                .iter()
                .map(|mv| {
                    let mut v = serde_json::to_value(mv.record(&d)).expect("move serializes");
                    v["pi"] = json!(mv.pi_pairs(&d));
                    v
                })
                .collect();
            emit(pretty(&json!({ "count": moves.len(), "moves": moves })))?;
            Ok(EXIT_OK)
        }
        Command::Apply { file, mv, format } => {
            let d = load(&file)?;
            let record: MoveRecord = serde_json::from_str(&mv).map_err(|e| input_error(format!("--move: {e}")))?;
            emit(output_diagram(&record.apply(&d)?, &format)?)?;
            Ok(EXIT_OK)
        }
        Command::CrossEye { file, edge, format } => {
            let d = load(&file)?;
            let Some((x, y)) = edge.split_once(',') else {
                return Err(input_error("--edge expects `s,t`"));
            };
            let twisted = crate::angle::cross_eyed_twist(&d, x.trim(), y.trim())?;
            emit(output_diagram(&twisted, &format)?)?;
            Ok(EXIT_OK)
        }
        Command::Expand { file } => {
            let d = load(&file)?;
            let (e, log) = expand(&d);
            emit(pretty(&json!({ "diagram": json_value(&e), "log": log })))?;
            Ok(EXIT_OK)
        }
        Command::Orbit { file, no_cross_eyed, max } => {
            let d = load(&file)?;
            let orbit = twist_orbit(&d, OrbitOptions { use_cross_eyed: !no_cross_eyed, max_size: max })?;
            let forms: Vec<Value> = orbit
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "canonical_form": e.form.to_hex(),
                        "path": e.path,
                        "diagram": json_value(&e.diagram),
                        "shared_head": has_shared_head_vertex(&e.diagram),
                    })
                })
                .collect();
            let review = forms.iter().any(|f| f["shared_head"] == true);
            emit(pretty(&json!({ "count": forms.len(), "complete": !orbit.truncated, "review": review, "forms": forms })))?;
            if orbit.truncated {
                let _ = writeln!(err, "orbit truncated at {max} canonical forms");
                return Ok(EXIT_UNSUPPORTED);
            }
            Ok(EXIT_OK)
        }
        Command::Decide { file1, file2, certificate, verify } => {
            let d1 = load(&file1)?;
            let d2 = load(&file2)?;
            let verdict = decide_isomorphic(&d1, &d2, DecideOptions::default());
            let mut report = serde_json::to_value(&verdict).expect("verdict serializes");
            let mut code = match verdict.result {
                VerdictKind::Isomorphic => EXIT_OK,
                VerdictKind::NotIsomorphic => EXIT_NOT_ISOMORPHIC,
                VerdictKind::Unsupported => EXIT_UNSUPPORTED,
            };
            if verify {
                let (checks, ok) = verification(&d1, &d2, &verdict);
                report["verification"] = checks;
                if !ok {
                    let _ = writeln!(err, "verification failed");
                    code = EXIT_UNSUPPORTED;
                }
            }
            let text = pretty(&report);
            if let Some(path) = certificate {
                std::fs::write(&path, &text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            }
            emit(text)?;
            Ok(code)
        }
        Command::Export { file, format } => {
            let d = load(&file)?;
            emit(output_diagram(&d, &format)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Numeric checks of every blow-up in both expansion logs, plus a replay of
/// the certificate when there is one.
fn verification(d1: &PDiagram, d2: &PDiagram, verdict: &crate::iso::Verdict) -> (Value, bool) {
    let mut ok = true;
    let mut blowups = Vec::new();
    for d in [d1, d2] {
        let (_, log) = expand(d);
        let mut cur = d.clone();
        for plan in log {
            let reports = verify_blowup(&cur, &plan);
            let pass = matches!(&reports, Ok(r) if r.iter().all(|x| x.pass));
            ok &= pass;
            blowups.push(json!({
                "plan": plan,
                "pass": pass,
                "reports": reports.map_err(|e| e.to_string()).map(|r| json!(r)).unwrap_or_else(|e| json!(e)),
            }));
            cur = blow_up(&cur, &plan).expect("logged plans apply");
        }
    }
    let replayed = verdict.certificate.as_ref().map(|c| c.replay(d1, d2).is_ok());
    ok &= replayed != Some(false);
    (json!({ "blowups": blowups, "certificate_replayed": replayed }), ok)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
        }
    };
    match run_command(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
