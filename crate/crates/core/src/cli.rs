//! The `gpnerve` command line.
//!
//! Exit codes: 0 when everything checked holds, 1 for a mathematical failure
//! (a violated identity, an unfillable horn), 2 for unusable input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dgcat::{DgCategory, Violation};
use crate::fixtures::{fixture, FIXTURE_NAMES};
use crate::horn::{check_gp, extract_horn, fill, horn_violations, lift_filler, HornData, HornError, Sampler};
use crate::json::{
    category_from_json, category_to_json, filler_from_json, filler_to_json, horn_from_json, horn_to_json,
    parse_text, simplex_from_json, simplex_to_json, to_text, JsonError,
};
use crate::laws::{run_laws, LawOptions};
use crate::nerve::{format_seq, validate_simplex, validate_star, SimplexViolation};
use crate::sample::rng_from_seed;

#[derive(Debug, Parser)]
#[command(name = "gpnerve", version, about = "Coherent nerves of dg-categories: validation, horn filling and lifting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Category document for simplex and horn inputs (overrides an embedded one).
    #[arg(long)]
    category: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct Source {
    /// Category document.
    path: Option<PathBuf>,
    /// Built-in fixture instead of a document.
    #[arg(long, conflicts_with = "path")]
    fixture: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Checks a category, simplex or horn document.
    Check {
        input: PathBuf,
        /// Also require every edge of a simplex to be an equivalence.
        #[arg(long)]
        star: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Fills a horn document.
    Fill {
        horn: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Fill the horn modulo the ideal of its ring, for use with `lift`.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Lifts a filler of the reduced horn to the ring of the horn's category.
    Lift {
        horn: PathBuf,
        filler: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the identity battery on random cochains, horns and fillers.
    Laws {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, hide = true)]
        mutate_sign: bool,
    },
    /// Fills random horns, validates them and lifts them along a square-zero extension.
    Gp {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prints a built-in fixture category.
    Fixture {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a random simplex, or a horn of it with `--k`, of a category.
    Sample {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only require a simplex of NC, not NC*.
        #[arg(long)]
        plain: bool,
        /// Refer to the category by this path instead of embedding it.
        #[arg(long)]
        category_ref: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit code and captured output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

enum Failure {
    Input(String),
    Math(Report),
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// A report in both renderings.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Text => self.text.clone().into_bytes(),
            Format::Json => to_text(&self.json).into_bytes(),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string().into_bytes();
            let (stdout, stderr) = if code == 0 { (text, Vec::new()) } else { (Vec::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let format = match &cli.command {
        Command::Check { common, .. } | Command::Fill { common, .. } | Command::Lift { common, .. } => common.format,
        Command::Laws { format, .. } | Command::Gp { format, .. } => *format,
        Command::Fixture { .. } | Command::Sample { .. } => Format::Json,
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: Vec::new(),
        },
        Err(Failure::Math(r)) => Outcome {
            code: 1,
            stdout: r.render(format),
            stderr: Vec::new(),
        },
        Err(Failure::Input(msg)) => Outcome {
            code: 2,
            stdout: Vec::new(),
            stderr: format!("error: {msg}\n").into_bytes(),
        },
    }
}

fn execute(cmd: Command) -> Result<Vec<u8>, Failure> {
    match cmd {
        Command::Check { input, star, common } => finish(cmd_check(&input, star, &common)?, common.format),
        Command::Fill {
            horn,
            n,
            k,
            reduce,
            out,
            common,
        } => cmd_fill(&horn, n, k, reduce, out.as_deref(), &common),
        Command::Lift {
            horn,
            filler,
            out,
            common,
        } => cmd_lift(&horn, &filler, out.as_deref(), &common),
        Command::Laws {
            source,
            seed,
            trials,
            max_n,
            format,
            mutate_sign,
        } => {
            let c = load_source(&source)?;
            let r = run_laws(
                &c,
                &LawOptions {
                    seed,
                    trials,
                    max_n,
                    mutate_sign,
                },
            );
            let json = serde_json::to_value(&r).expect("serializable");
            finish(
                Report {
                    ok: r.ok(),
                    text: r.to_string(),
                    json,
                },
                format,
            )
        }
        Command::Gp {
            source,
            n,
            k,
            seed,
            trials,
            format,
        } => {
            let c = load_source(&source)?;
            let r = check_gp(&c, n, k, trials, seed).map_err(|e| Failure::Input(e.to_string()))?;
            let json = serde_json::to_value(&r).expect("serializable");
            finish(
                Report {
                    ok: r.ok(),
                    text: r.to_string(),
                    json,
                },
                format,
            )
        }
        Command::Fixture { name, out } => {
            let c = named_fixture(&name)?;
            emit(&category_to_json(&c), out.as_deref(), format!("wrote fixture {name}\n"))
        }
        Command::Sample {
            source,
            n,
            k,
            seed,
            plain,
            category_ref,
            out,
        } => {
            let c = load_source(&source)?;
            if c.num_objects() == 0 {
                return Err(Failure::Input("the category has no objects".into()));
            }
            let embedded = match category_ref {
                Some(p) => json!(p),
                None => category_to_json(&c),
            };
            let mut rng = rng_from_seed(seed);
            let sigma = Sampler::new(&c, !plain).simplex(&mut rng, n);
            let doc = match k {
                None => simplex_to_json(&c, &sigma, Some(embedded)),
                Some(k) => {
                    let h = extract_horn(&sigma, k).map_err(|e| Failure::Input(e.to_string()))?;
                    horn_to_json(&c, &h, Some(embedded))
                }
            };
            emit(&doc, out.as_deref(), "wrote sample\n".into())
        }
    }
}

fn finish(r: Report, format: Format) -> Result<Vec<u8>, Failure> {
    if r.ok {
        Ok(r.render(format))
    } else {
        Err(Failure::Math(r))
    }
}

/// Writes `doc` to `out` (returning `note`) or returns it as the output.
fn emit(doc: &Value, out: Option<&Path>, note: String) -> Result<Vec<u8>, Failure> {
    let text = to_text(doc);
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Ok(note.into_bytes())
        }
        None => Ok(text.into_bytes()),
    }
}

fn named_fixture(name: &str) -> Result<DgCategory, Failure> {
    fixture(name).ok_or_else(|| Failure::Input(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", "))))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_text(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_category(path: &Path) -> Result<DgCategory, Failure> {
    category_from_json(&read_json(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_source(s: &Source) -> Result<DgCategory, Failure> {
    match (&s.path, &s.fixture) {
        (Some(p), _) => load_category(p),
        (None, Some(name)) => named_fixture(name),
        (None, None) => Err(Failure::Input("give a category document or --fixture".into())),
    }
}

/// The category of a simplex or horn document.
fn category_for(doc: &Value, doc_path: &Path, common: &Common) -> Result<DgCategory, Failure> {
    if let Some(p) = &common.category {
        return load_category(p);
    }
    match doc.get("category") {
        Some(Value::String(rel)) => {
            let base = doc_path.parent().unwrap_or(Path::new("."));
            load_category(&base.join(rel))
        }
        Some(v @ Value::Object(_)) => {
            category_from_json(v).map_err(|e| Failure::Input(format!("{}: category: {e}", doc_path.display())))
        }
        _ => Err(Failure::Input(format!(
            "{}: no category; embed one or pass --category",
            doc_path.display()
        ))),
    }
}

fn violations_report(kind: &str, items: Vec<String>, json_key: &str) -> Report {
    let mut text = String::new();
    if items.is_empty() {
        let _ = writeln!(text, "{kind}: ok");
    } else {
        let _ = writeln!(text, "{kind}: {} violation(s)", items.len());
        for i in &items {
            let _ = writeln!(text, "  {i}");
        }
    }
    Report {
        ok: items.is_empty(),
        text,
        json: json!({"kind": kind, "ok": items.is_empty(), json_key: items}),
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn cmd_check(input: &Path, star: bool, common: &Common) -> Result<Report, Failure> {
    let doc = read_json(input)?;
    if doc.get("ring").is_some() {
        let c = category_from_json(&doc).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
        let v: Vec<Violation> = c.check_axioms();
        return Ok(violations_report("category", strings(&v), "violations"));
    }
    let c = category_for(&doc, input, common)?;
    if doc.get("k").is_some() {
        let h = horn_from_json(&doc, &c).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
        return Ok(violations_report("horn", strings(&horn_violations(&c, &h)), "violations"));
    }
    let sigma = simplex_from_json(&doc, &c).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
    let mut v: Vec<SimplexViolation> = validate_simplex(&c, &sigma);
    if star && v.is_empty() {
        v = validate_star(&c, &sigma);
    }
    Ok(violations_report(if star { "simplex*" } else { "simplex" }, strings(&v), "violations"))
}

fn load_horn(path: &Path, common: &Common) -> Result<(DgCategory, HornData), Failure> {
    let doc = read_json(path)?;
    let c = category_for(&doc, path, common)?;
    let h = horn_from_json(&doc, &c).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((c, h))
}

fn horn_failure(e: HornError) -> Failure {
    match e {
        HornError::Domain(m) => Failure::Input(m),
        other => {
            let msg = other.to_string();
            Failure::Math(Report {
                ok: false,
                text: format!("{msg}\n"),
                json: json!({"ok": false, "error": msg}),
            })
        }
    }
}

fn cmd_fill(
    path: &Path,
    n: Option<usize>,
    k: Option<usize>,
    reduce: bool,
    out: Option<&Path>,
    common: &Common,
) -> Result<Vec<u8>, Failure> {
    let (c, h) = load_horn(path, common)?;
    let (c, h) = if reduce { (c.reduce(), h.reduce()) } else { (c, h) };
    if n.is_some_and(|n| n != h.n()) || k.is_some_and(|k| k != h.k) {
        return Err(Failure::Input(format!("the document holds a Λ^{}_{} horn", h.k, h.n())));
    }
    let f = fill(&c, &h).map_err(horn_failure)?;
    let problems = validate_simplex(&c, &f.complete(&h));
    if !problems.is_empty() {
        return Err(Failure::Math(violations_report("filler", strings(&problems), "violations")));
    }
    let doc = filler_to_json(&f);
    match (out, common.format) {
        (None, Format::Json) => Ok(to_text(&doc).into_bytes()),
        (out, format) => {
            if let Some(p) = out {
                emit(&doc, Some(p), String::new())?;
            }
            let mut text = format!("filled Λ^{}_{}; the completed simplex validates\n", h.k, h.n());
            for (s, m) in &f.cells {
                let coords: Vec<String> = m.coords.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "  ({}) = [{}]", format_seq(*s), coords.join(", "));
            }
            let report = Report {
                ok: true,
                text,
                json: json!({"ok": true, "filler": doc}),
            };
            Ok(report.render(format))
        }
    }
}

fn cmd_lift(horn: &Path, filler: &Path, out: Option<&Path>, common: &Common) -> Result<Vec<u8>, Failure> {
    let (c, h) = load_horn(horn, common)?;
    let reduced_c = c.reduce();
    let reduced_h = h.reduce();
    let f = filler_from_json(&read_json(filler)?, &reduced_c, &reduced_h)
        .map_err(|e| Failure::Input(format!("{}: {e}", filler.display())))?;
    let lift = lift_filler(&c, &h, &f).map_err(horn_failure)?;
    if !lift.correction.verify(&c, &h) || !validate_simplex(&c, &lift.filler.complete(&h)).is_empty() {
        return Err(Failure::Math(Report {
            ok: false,
            text: "the corrected filler does not validate\n".into(),
            json: json!({"ok": false, "error": "the corrected filler does not validate"}),
        }));
    }
    let doc = filler_to_json(&lift.filler);
    match (out, common.format) {
        (None, Format::Json) => Ok(to_text(&doc).into_bytes()),
        (out, format) => {
            if let Some(p) = out {
                emit(&doc, Some(p), String::new())?;
            }
            let text = format!(
                "lifted Λ^{}_{} over {}; φ, ψ lie in the ideal and the lift validates\n",
                h.k,
                h.n(),
                c.ring()
            );
            Ok(Report {
                ok: true,
                text,
                json: json!({"ok": true, "filler": doc}),
            }
            .render(format))
        }
    }
}
