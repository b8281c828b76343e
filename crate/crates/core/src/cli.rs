//! The `sigsyntax` command line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::arity_core::{merge_signatures, Signature, SignatureError, SignatureInclusion};
use crate::examples::{eval_named, NamedEvalError};
use crate::initiality::{translate, Bounds, EvalError, EvalReport};
use crate::law_suite::run_all;
use crate::term_engine::{
    check_term, enumerate_terms, parse_term, random_term, Term, TermError, TermParseError, DEFAULT_CAP,
};

pub const DEFAULT_DEPTH_CAP: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "sigsyntax", version, about = "Syntax with binding generated from a signature of arities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every law check on a signature and print one summary line per law.
    Check {
        signature: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(short = 'n', default_value_t = 3)]
        ctx: usize,
        #[arg(short = 'd', default_value_t = 5)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
    /// List every term in context `n` up to depth `d`.
    Enum {
        signature: PathBuf,
        #[arg(short = 'n', default_value_t = 0)]
        ctx: usize,
        #[arg(short = 'd', default_value_t = 3)]
        depth: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Print random terms in context `n` up to depth `d`.
    Gen {
        signature: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(short = 'n', default_value_t = 0)]
        ctx: usize,
        #[arg(short = 'd', default_value_t = 5)]
        depth: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Evaluate a term into a built-in representation.
    Eval {
        signature: PathBuf,
        /// File holding one term; `-` reads standard input.
        term: PathBuf,
        #[arg(long, default_value = "self")]
        rep: String,
        /// Context size; inferred from the term when absent.
        #[arg(short = 'n')]
        ctx: Option<usize>,
    },
    /// Rename a term along the by-name inclusion of one signature into another.
    Translate {
        source: PathBuf,
        target: PathBuf,
        term: PathBuf,
        #[arg(short = 'n')]
        ctx: Option<usize>,
    },
    /// Amalgamate two signatures over a shared one and print the result.
    Merge { shared: PathBuf, left: PathBuf, right: PathBuf },
}

#[derive(Debug, Args)]
pub struct Sampling {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Caps {
    /// Largest number of enumerated terms.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Largest accepted depth bound.
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    pub depth_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Sexpr,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Signature {
        path: String,
        #[source]
        source: SignatureError,
    },
    #[error("{path}: {source}")]
    Term {
        path: String,
        #[source]
        source: TermParseError,
    },
    #[error("{0}")]
    IllFormed(TermError),
    #[error("{0}")]
    Eval(EvalError),
    #[error("{0}")]
    Cap(TermError),
    #[error("depth {depth} exceeds the depth cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("{0}")]
    UnknownRep(String),
    #[error("{failed} of {total} laws failed")]
    LawFailure { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::LawFailure { .. } => 1,
            CliError::Cap(_) | CliError::DepthCap { .. } => 3,
            CliError::UnknownRep(_) => 4,
            _ => 2,
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

pub fn load_signature(path: &Path) -> Result<Signature, CliError> {
    let text = read_text(path)?;
    Signature::parse(&text)
        .and_then(Signature::checked)
        .map_err(|source| CliError::Signature { path: path.display().to_string(), source })
}

fn load_term(path: &Path) -> Result<Term, CliError> {
    let text = read_text(path)?;
    parse_term(text.trim()).map_err(|source| CliError::Term { path: path.display().to_string(), source })
}

fn context_of(t: &Term, ctx: Option<usize>) -> usize {
    ctx.unwrap_or_else(|| t.max_free().map_or(0, |i| i + 1))
}

fn check_depth(depth: usize, caps: &Caps) -> Result<(), CliError> {
    if depth > caps.depth_cap {
        return Err(CliError::DepthCap { depth, cap: caps.depth_cap });
    }
    Ok(())
}

fn enum_error(e: TermError) -> CliError {
    match e {
        TermError::CapExceeded { .. } => CliError::Cap(e),
        other => CliError::IllFormed(other),
    }
}

fn print_report(out: &mut dyn Write, r: &EvalReport, format: Format) -> io::Result<()> {
    match format {
        Format::Pretty => writeln!(out, "{}", r.summary()),
        Format::Sexpr => {
            write!(out, "(law {} (samples {}) (failures {})", r.law, r.samples, r.failures.len())?;
            if let Some(c) = r.first_failure() {
                write!(out, " (first (term {}) (lhs {:?}) (rhs {:?})", c.term, c.lhs, c.rhs)?;
                if let Some(s) = &c.substitution {
                    write!(out, " (subst {s:?})")?;
                }
                if let Some(seed) = c.replay_seed {
                    write!(out, " (seed {seed})")?;
                }
                write!(out, ")")?;
            }
            writeln!(out, ")")
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    match cli.command {
        Command::Check { signature, sampling, ctx, depth, format, caps } => {
            check_depth(depth, &caps)?;
            let sig = load_signature(&signature)?;
            let bounds = Bounds { samples: sampling.samples, max_ctx: ctx, max_depth: depth };
            let reports = run_all(&sig, &bounds, sampling.seed);
            for r in &reports {
                print_report(out, r, format).map_err(io)?;
                if format == Format::Pretty {
                    if let Some(c) = r.first_failure() {
                        writeln!(err, "{}: {c}", r.law).map_err(io)?;
                    }
                }
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(CliError::LawFailure { failed, total: reports.len() });
            }
        }
        Command::Enum { signature, ctx, depth, caps } => {
            check_depth(depth, &caps)?;
            let sig = load_signature(&signature)?;
            let terms = enumerate_terms(&sig, ctx, depth, caps.cap).map_err(enum_error)?;
            for t in &terms {
                writeln!(out, "{t}").map_err(io)?;
            }
            writeln!(out, "count: {}", terms.len()).map_err(io)?;
        }
        Command::Gen { signature, sampling, ctx, depth, caps } => {
            check_depth(depth, &caps)?;
            let sig = load_signature(&signature)?;
            for i in 0..sampling.samples {
                let seed = crate::initiality::sample_seed(sampling.seed, i);
                let t = random_term(&sig, ctx, depth, seed).map_err(CliError::IllFormed)?;
                writeln!(out, "{t}").map_err(io)?;
            }
        }
        Command::Eval { signature, term, rep, ctx } => {
            let sig = load_signature(&signature)?;
            let t = load_term(&term)?;
            let n = context_of(&t, ctx);
            check_term(&t, &sig, n).map_err(CliError::IllFormed)?;
            let shown = eval_named(&rep, &t, &sig, n).map_err(|e| match e {
                NamedEvalError::UnknownRep(_) => CliError::UnknownRep(e.to_string()),
                NamedEvalError::Eval(e) => CliError::Eval(e),
            })?;
            writeln!(out, "{shown}").map_err(io)?;
        }
        Command::Translate { source, target, term, ctx } => {
            let src = load_signature(&source)?;
            let tgt = load_signature(&target)?;
            let inc = SignatureInclusion::by_name(&src, &tgt)
                .map_err(|e| CliError::Signature { path: target.display().to_string(), source: e })?;
            let t = load_term(&term)?;
            check_term(&t, &src, context_of(&t, ctx)).map_err(CliError::IllFormed)?;
            let u = translate(&t, &inc).map_err(CliError::Eval)?;
            writeln!(out, "{u}").map_err(io)?;
        }
        Command::Merge { shared, left, right } => {
            let s0 = load_signature(&shared)?;
            let s1 = load_signature(&left)?;
            let s2 = load_signature(&right)?;
            let sig_err = |path: &Path| {
                let path = path.display().to_string();
                move |source| CliError::Signature { path, source }
            };
            let i1 = SignatureInclusion::by_name(&s0, &s1).map_err(sig_err(&left))?;
            let i2 = SignatureInclusion::by_name(&s0, &s2).map_err(sig_err(&right))?;
            let merged = merge_signatures(&s1, &s2, &i1, &i2).map_err(sig_err(&right))?;
            write!(out, "{}", merged.signature.to_file_string()).map_err(io)?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
