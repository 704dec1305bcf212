//! Command dispatch. Every command yields a JSON report on stdout, a one-line
//! summary on stderr and an exit status.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use dblcat::copower::{check_extensive, ExtensivityMode};
use dblcat::double::{check_coherence, PseudoDouble};
use dblcat::matrix::{compose_matrices, Matrices};
use dblcat::monad::{decode, encode, morphism_correspondence, transport_monad, Along, DoubleMonad, Host};
use dblcat::span::{compose_spans, Spans};
use dblcat::transport::{en_object, int_object, roundtrip_check, Horizontal};
use dblcat::{validate_instance, BaseCategory, FinPointedSet, FinSet, DEFAULT_ENUMERATION_CAP};
use serde_json::{json, Value};

use crate::doc::{parse_instance, BaseName, Based, DocBase, Document, ParseError};

#[derive(Debug, Parser)]
#[command(name = "dblcat", version, about = "Check spans, matrices and their monads over finite bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Finset,
    Pointed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Pointwise,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Span,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MonadAction {
    Encode,
    Decode,
    Transport,
    Laws,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a document and check it: category axioms for base instances,
    /// monad laws for monads.
    Validate { file: PathBuf },
    /// Bounded extensivity check of a base category.
    CheckExtensive {
        #[arg(long, value_enum)]
        base: BaseArg,
        #[arg(long)]
        index_bound: usize,
        #[arg(long)]
        size_bound: usize,
        #[arg(long, value_enum, default_value = "pointwise")]
        mode: ModeArg,
    },
    /// Horizontal composite of two spans or two matrices.
    Compose {
        #[arg(long, value_enum)]
        kind: KindArg,
        lhs: PathBuf,
        rhs: PathBuf,
    },
    /// The span of a matrix.
    Int { file: PathBuf },
    /// The matrix of a span.
    En { file: PathBuf },
    /// Compares a span or matrix with its image under `Int∘En` or `En∘Int`.
    Roundtrip { file: PathBuf },
    /// Pentagon and triangle on seeded random composable tuples.
    Coherence {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest apex or entry drawn.
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, value_enum, default_value = "finset")]
        base: BaseArg,
    },
    /// Encode a finite category as a monad, decode a monad, transport it to
    /// the other host, or check its laws.
    Monad {
        #[arg(value_enum)]
        action: MonadAction,
        file: PathBuf,
        /// Host for `encode`.
        #[arg(long, value_enum, default_value = "matrix")]
        host: KindArg,
    },
    /// Functors between two finite categories against vertical morphisms of
    /// their monads.
    EquivMonads {
        cat_a: PathBuf,
        cat_b: PathBuf,
        #[arg(long, value_enum)]
        host: KindArg,
    },
}

/// Exit status, report and summary of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub report: Value,
    pub summary: String,
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERDICT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] dblcat::Error),
}

type Ran = Result<Outcome, Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|source| Failure::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn report(verdict: &str, bounds: Value, holds: bool, summary: String) -> Outcome {
    Outcome {
        code: if holds { EXIT_PASS } else { EXIT_VERDICT },
        report: json!({ "verdict": verdict, "bounds": bounds }),
        summary,
    }
}

impl Outcome {
    fn with(mut self, key: &str, value: Value) -> Self {
        self.report
            .as_object_mut()
            .expect("reports are objects")
            .insert(key.into(), value);
        self
    }
}

fn produced(verdict: &str, doc: Document, summary: String) -> Outcome {
    report(verdict, json!({}), true, summary).with("result", doc.to_value())
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: EXIT_USAGE,
            report: json!({ "verdict": "error", "bounds": {}, "error": e.to_string() }),
            summary: brief(&format!("error: {e}")),
        },
    }
}

/// Longest stderr summary, in characters; reports carry the full text.
const SUMMARY_LIMIT: usize = 240;

fn brief(s: &str) -> String {
    match s.char_indices().nth(SUMMARY_LIMIT) {
        Some((k, _)) => format!("{}…", &s[..k]),
        None => s.to_string(),
    }
}

fn dispatch(command: &Command) -> Ran {
    match command {
        Command::Validate { file } => validate(load(file)?),
        Command::CheckExtensive {
            base,
            index_bound,
            size_bound,
            mode,
        } => {
            let mode = match mode {
                ModeArg::Pointwise => ExtensivityMode::PointwiseTerminal,
                ModeArg::General => ExtensivityMode::GeneralFamily,
            };
            match base {
                BaseArg::Finset => extensive(&FinSet, *index_bound, *size_bound, mode),
                BaseArg::Pointed => extensive(&FinPointedSet, *index_bound, *size_bound, mode),
            }
        }
        Command::Compose { kind, lhs, rhs } => compose(*kind, load(lhs)?, load(rhs)?),
        Command::Int { file } => match load(file)? {
            Document::Matrix(Based::FinSet(m)) => {
                let s = int_object(&FinSet, &m)?;
                Ok(produced("transported", Document::Span(Based::FinSet(s)), "Int of a matrix".into()))
            }
            Document::Matrix(Based::Pointed(m)) => {
                let s = int_object(&FinPointedSet, &m)?;
                Ok(produced("transported", Document::Span(Based::Pointed(s)), "Int of a matrix".into()))
            }
            other => Err(wrong_kind("matrix", &other)),
        },
        Command::En { file } => match load(file)? {
            Document::Span(Based::FinSet(s)) => {
                let m = en_object(&FinSet, &s)?;
                Ok(produced("transported", Document::Matrix(Based::FinSet(m)), "En of a span".into()))
            }
            Document::Span(Based::Pointed(s)) => {
                let m = en_object(&FinPointedSet, &s)?;
                Ok(produced("transported", Document::Matrix(Based::Pointed(m)), "En of a span".into()))
            }
            other => Err(wrong_kind("span", &other)),
        },
        Command::Roundtrip { file } => match load(file)? {
            Document::Matrix(Based::FinSet(m)) => roundtrip(&FinSet, Horizontal::Matrix(m)),
            Document::Matrix(Based::Pointed(m)) => roundtrip(&FinPointedSet, Horizontal::Matrix(m)),
            Document::Span(Based::FinSet(s)) => roundtrip(&FinSet, Horizontal::Span(s)),
            Document::Span(Based::Pointed(s)) => roundtrip(&FinPointedSet, Horizontal::Span(s)),
            other => Err(wrong_kind("matrix or span", &other)),
        },
        Command::Coherence {
            kind,
            trials,
            seed,
            bound,
            base,
        } => match (base, kind) {
            (BaseArg::Finset, KindArg::Span) => coherence::<FinSet, Spans>(&FinSet, *trials, *seed, *bound),
            (BaseArg::Finset, KindArg::Matrix) => coherence::<FinSet, Matrices>(&FinSet, *trials, *seed, *bound),
            (BaseArg::Pointed, KindArg::Span) => coherence::<FinPointedSet, Spans>(&FinPointedSet, *trials, *seed, *bound),
            (BaseArg::Pointed, KindArg::Matrix) => {
                coherence::<FinPointedSet, Matrices>(&FinPointedSet, *trials, *seed, *bound)
            }
        },
        Command::Monad { action, file, host } => monad(*action, load(file)?, *host),
        Command::EquivMonads { cat_a, cat_b, host } => {
            let (Document::FiniteCategory(c), Document::FiniteCategory(d)) = (load(cat_a)?, load(cat_b)?) else {
                return Err(Failure::Usage("equiv-monads expects two finite-category documents".into()));
            };
            let r = morphism_correspondence(&c, &d, host_of(*host), DEFAULT_ENUMERATION_CAP)?;
            let holds = r.bijective && r.respects_composition;
            let out = report(
                if holds { "bijection" } else { "no-bijection" },
                json!({}),
                holds,
                format!(
                    "{} functors, {} vertical monad morphisms, composition {}",
                    r.functors,
                    r.morphisms,
                    if r.respects_composition { "respected" } else { "not respected" }
                ),
            )
            .with("host", json!(r.host))
            .with("functors", json!(r.functors))
            .with("morphisms", json!(r.morphisms))
            .with("respects_composition", json!(r.respects_composition));
            Ok(match r.verdict.first() {
                Some(w) => out.with("witness", json!(w)),
                None => out,
            })
        }
    }
}

fn host_of(k: KindArg) -> Host {
    match k {
        KindArg::Span => Host::Span,
        KindArg::Matrix => Host::Matrix,
    }
}

fn wrong_kind(expected: &str, got: &Document) -> Failure {
    Failure::Usage(format!("expected a {expected} document, got {}", got.kind()))
}

fn validate(doc: Document) -> Ran {
    let kind = doc.kind();
    match doc {
        Document::Category { base, bound } => {
            let r = match base {
                BaseName::FinSet => validate_instance(&FinSet, bound, DEFAULT_ENUMERATION_CAP)?,
                BaseName::Pointed => validate_instance(&FinPointedSet, bound, DEFAULT_ENUMERATION_CAP)?,
            };
            let holds = r.passed();
            let out = report(
                if holds { "valid" } else { "invalid" },
                json!({ "bound": bound }),
                holds,
                format!("{} checks over {} objects of {}", r.checks.len(), r.objects, r.instance),
            )
            .with("checks", json!(r.checks.iter().map(|c| json!({ "name": c.name, "cases": c.cases })).collect::<Vec<_>>()));
            let witness = r.failures().next().map(|c| json!(c));
            Ok(match witness {
                Some(w) => out.with("witness", w),
                None => out,
            })
        }
        Document::Monad(Based::FinSet(m)) => laws(&FinSet, &m),
        Document::Monad(Based::Pointed(m)) => laws(&FinPointedSet, &m),
        _ => Ok(report("valid", json!({}), true, format!("well-formed {kind} document")).with("kind", json!(kind))),
    }
}

fn extensive<V: BaseCategory>(v: &V, index_bound: usize, size_bound: usize, mode: ExtensivityMode) -> Ran {
    let r = check_extensive(v, index_bound, size_bound, mode, DEFAULT_ENUMERATION_CAP)?;
    let out = report(
        &r.label,
        json!({ "index_bound": index_bound, "size_bound": size_bound }),
        r.extensive(),
        format!("{}: {} after {} cases", r.instance, r.label, r.verdict.cases),
    )
    .with("instance", json!(r.instance))
    .with("mode", json!(r.mode))
    .with("cases", json!(r.verdict.cases));
    Ok(match r.verdict.first() {
        Some(w) => out.with("witness", json!(w)),
        None => out,
    })
}

fn compose(kind: KindArg, lhs: Document, rhs: Document) -> Ran {
    let doc = match (kind, lhs, rhs) {
        (KindArg::Matrix, Document::Matrix(Based::FinSet(a)), Document::Matrix(Based::FinSet(b))) => {
            Document::Matrix(Based::FinSet(compose_matrices(&FinSet, &a, &b)?))
        }
        (KindArg::Matrix, Document::Matrix(Based::Pointed(a)), Document::Matrix(Based::Pointed(b))) => {
            Document::Matrix(Based::Pointed(compose_matrices(&FinPointedSet, &a, &b)?))
        }
        (KindArg::Span, Document::Span(Based::FinSet(a)), Document::Span(Based::FinSet(b))) => {
            Document::Span(Based::FinSet(compose_spans(&FinSet, &a, &b)?.0))
        }
        (KindArg::Span, Document::Span(Based::Pointed(a)), Document::Span(Based::Pointed(b))) => {
            Document::Span(Based::Pointed(compose_spans(&FinPointedSet, &a, &b)?.0))
        }
        (kind, a, b) => {
            let kind = match kind {
                KindArg::Span => "span",
                KindArg::Matrix => "matrix",
            };
            return Err(Failure::Usage(format!(
                "compose --kind {kind} needs two {kind} documents over one base, got {} and {}",
                a.kind(),
                b.kind()
            )));
        }
    };
    let summary = format!("composite {}", doc.kind());
    Ok(produced("composed", doc, summary))
}

fn roundtrip<V: BaseCategory>(v: &V, x: Horizontal<V>) -> Ran {
    let r = roundtrip_check(v, &x)?;
    Ok(report(
        if r.holds { "iso" } else { "not-iso" },
        json!({}),
        r.holds,
        format!("{} round trip {}", r.kind, if r.holds { "is invertible" } else { "is not invertible" }),
    )
    .with("witness", r.witness))
}

fn coherence<V: BaseCategory, D: PseudoDouble<V>>(v: &V, trials: usize, seed: u64, bound: usize) -> Ran {
    let verdict = check_coherence::<V, D>(v, trials, seed, bound, DEFAULT_ENUMERATION_CAP)?;
    let out = report(
        if verdict.holds { "coherent" } else { "incoherent" },
        json!({ "trials": trials, "seed": seed, "bound": bound }),
        verdict.holds,
        format!("{} over {}: {} cases", D::KIND, v.name(), verdict.cases),
    )
    .with("cases", json!(verdict.cases));
    Ok(match verdict.first() {
        Some(w) => out.with("witness", json!(w)),
        None => out,
    })
}

fn laws<V: DocBase>(v: &V, m: &DoubleMonad<V>) -> Ran {
    let verdict = m.check_laws(v)?;
    let out = report(
        if verdict.holds { "lawful" } else { "unlawful" },
        json!({}),
        verdict.holds,
        format!("{}-host monad on {} objects", m.host(), m.index().len()),
    );
    Ok(match verdict.first() {
        Some(w) => out.with("witness", json!(w)),
        None => out,
    })
}

fn transport<V: DocBase>(v: &V, m: &DoubleMonad<V>) -> Result<DoubleMonad<V>, Failure> {
    let along = match m.host() {
        Host::Matrix => Along::Int,
        Host::Span => Along::En,
    };
    Ok(transport_monad(v, m, along)?)
}

fn monad(action: MonadAction, doc: Document, host: KindArg) -> Ran {
    match (action, doc) {
        (MonadAction::Encode, Document::FiniteCategory(c)) => {
            let m = encode(&c, host_of(host))?;
            let summary = format!("{}-host monad on {} objects", m.host(), m.index().len());
            Ok(produced("encoded", Document::Monad(Based::FinSet(m)), summary))
        }
        (MonadAction::Decode, Document::Monad(Based::FinSet(m))) => {
            let c = decode(&m)?;
            let summary = format!("{} objects, {} arrows", c.objects().len(), c.arrow_count());
            Ok(produced("decoded", Document::FiniteCategory(c), summary))
        }
        (MonadAction::Decode, Document::Monad(Based::Pointed(_))) => Err(dblcat::Error::Unsupported(
            "decoding needs monads over finite sets".into(),
        )
        .into()),
        (MonadAction::Transport, Document::Monad(Based::FinSet(m))) => {
            let t = transport(&FinSet, &m)?;
            let summary = format!("{}-host monad to {}-host monad", m.host(), t.host());
            Ok(produced("transported", Document::Monad(Based::FinSet(t)), summary))
        }
        (MonadAction::Transport, Document::Monad(Based::Pointed(m))) => {
            let t = transport(&FinPointedSet, &m)?;
            let summary = format!("{}-host monad to {}-host monad", m.host(), t.host());
            Ok(produced("transported", Document::Monad(Based::Pointed(t)), summary))
        }
        (MonadAction::Laws, Document::Monad(Based::FinSet(m))) => laws(&FinSet, &m),
        (MonadAction::Laws, Document::Monad(Based::Pointed(m))) => laws(&FinPointedSet, &m),
        (MonadAction::Encode, other) => Err(wrong_kind("finite-category", &other)),
        (_, other) => Err(wrong_kind("monad", &other)),
    }
}
