//! The `jumpseries` command line. [`run`] takes the argument list and
//! returns the exit code with the text for stdout and stderr, so the binary
//! is a thin wrapper and the whole surface is testable in-process.
//!
//! Exit codes: 0 on success, 2 when a verification suite fails, 1 on usage,
//! parse and precondition errors.
//!
//! Setting `JUMPSERIES_CACHE_DIR` memoizes `jumps` tables as JSON files in
//! that directory. Nothing is cached when it is unset.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::filtration::{h_polynomial, h_polynomial_left, jumping_numbers, multiplicity, poincare_closed_form, Filtration};
use crate::monomial::MonomialIdeal;
use crate::multiplier::{lct, multiplier_ideal, MultiplierFiltration};
use crate::output::{HpolyDoc, IdealDoc, JumpsDoc, LctDoc, PoincareDoc, TorDoc, VerifyDoc};
use crate::parse::parse_ideals;
use crate::rational::{parse_rational, Rational};
use crate::test_ideal::{test_ideal, CharP, TestFiltration};
use crate::tor::tor_lengths;
use crate::verify::{run_suite, Suite, SuiteParams};
use crate::{Error, Result};

pub const CACHE_ENV: &str = "JUMPSERIES_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "jumpseries", version, about = "Jumping numbers and Poincaré series of monomial ideals")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
struct IdealArg {
    /// Monomial ideal, e.g. "x^2, y^3".
    #[arg(short = 'a', long = "ideal")]
    ideal: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Log canonical threshold.
    Lct {
        #[command(flatten)]
        a: IdealArg,
    },
    /// Jumping numbers in (0, max] with multiplicities.
    Jumps {
        #[command(flatten)]
        a: IdealArg,
        #[arg(long, value_parser = rational_arg)]
        max: Rational,
        /// Prime characteristic for test ideals; 0 or absent for multiplier ideals.
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
    /// Multiplier ideal at c.
    Mult {
        #[command(flatten)]
        a: IdealArg,
        #[arg(short = 'c', value_parser = rational_arg)]
        c: Rational,
    },
    /// Test ideal at c in characteristic p.
    Test {
        #[command(flatten)]
        a: IdealArg,
        #[arg(short = 'c', value_parser = rational_arg)]
        c: Rational,
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Closed-form Poincaré series.
    Poincare {
        #[command(flatten)]
        a: IdealArg,
        #[arg(long = "char")]
        characteristic: Option<u64>,
        /// Also expand up to this order.
        #[arg(long, value_parser = rational_arg)]
        expand: Option<Rational>,
    },
    /// h-polynomials at c and c-ε.
    Hpoly {
        #[command(flatten)]
        a: IdealArg,
        #[arg(short = 'c', value_parser = rational_arg)]
        c: Rational,
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
    /// Lengths of Tor_i(A/a^j, A/J).
    Tor {
        #[command(flatten)]
        a: IdealArg,
        #[arg(short = 'j')]
        j: u64,
        #[arg(short = 'J')]
        argument: String,
        /// Highest homological degree, default the dimension.
        #[arg(long)]
        imax: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        /// One of skoda, rationality, tor-symmetry, excess, test-vs-mult,
        /// lemma41, lemma42, cmform, newton-hull.
        suite: String,
        #[command(flatten)]
        a: IdealArg,
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[arg(long, value_parser = rational_arg)]
        order: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        max: Option<Rational>,
        #[arg(short = 'j')]
        j: Option<u64>,
        #[arg(short = 'J')]
        argument: Option<String>,
        #[arg(short = 'K')]
        larger: Option<String>,
        /// Parameter reduction of the ideal.
        #[arg(short = 'Q')]
        reduction: Option<String>,
    },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok((passed, stdout)) => Outcome { code: exit_code(passed), stdout, stderr: String::new() },
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn exit_code(passed: bool) -> i32 {
    if passed {
        0
    } else {
        2
    }
}

fn emit<D: Serialize + std::fmt::Display>(json: bool, doc: &D) -> Result<String> {
    if json {
        serde_json::to_string_pretty(doc).map(|s| s + "\n").map_err(|e| Error::Resource(e.to_string()))
    } else {
        Ok(format!("{doc}\n"))
    }
}

fn filtration(a: &MonomialIdeal, characteristic: Option<u64>) -> Result<(Box<dyn Filtration>, u64)> {
    Ok(match characteristic {
        None | Some(0) => (Box::new(MultiplierFiltration::new(a)?), 0),
        Some(p) => (Box::new(TestFiltration::new(a, CharP::new(p)?)?), p),
    })
}

fn one(s: &str) -> Result<MonomialIdeal> {
    Ok(parse_ideals(&[s])?.remove(0))
}

fn dispatch(cli: &Cli) -> Result<(bool, String)> {
    let json = cli.json;
    match &cli.command {
        Command::Lct { a } => {
            let a = one(&a.ideal)?;
            Ok((true, emit(json, &LctDoc::new(&a, &lct(&a)?))?))
        }
        Command::Jumps { a, max, characteristic } => {
            let a = one(&a.ideal)?;
            let doc = cached_jumps(&a, characteristic.unwrap_or(0), max)?;
            Ok((true, emit(json, &doc)?))
        }
        Command::Mult { a, c } => {
            let a = one(&a.ideal)?;
            let r = multiplier_ideal(&a, c)?;
            Ok((true, emit(json, &IdealDoc::new("mult", &a, 0, c, &r, r.colength()?))?))
        }
        Command::Test { a, c, characteristic } => {
            let a = one(&a.ideal)?;
            let r = test_ideal(&a, c, CharP::new(*characteristic)?)?;
            Ok((true, emit(json, &IdealDoc::new("test", &a, *characteristic, c, &r, r.colength()?))?))
        }
        Command::Poincare { a, characteristic, expand } => {
            let a = one(&a.ideal)?;
            let (f, p) = filtration(&a, *characteristic)?;
            let form = poincare_closed_form(f.as_ref())?;
            let expansion = match expand {
                Some(n) if n < &Rational::from_integer(0.into()) => {
                    return Err(Error::Precondition("expansion order must be nonnegative".into()))
                }
                Some(n) => Some(form.expand(n)),
                None => None,
            };
            Ok((true, emit(json, &PoincareDoc::new(&a, p, &form, expansion.as_ref()))?))
        }
        Command::Hpoly { a, c, characteristic } => {
            let a = one(&a.ideal)?;
            let (f, p) = filtration(&a, *characteristic)?;
            let h = h_polynomial(f.as_ref(), c)?;
            let hl = h_polynomial_left(f.as_ref(), c)?;
            let m = multiplicity(f.as_ref(), c)?;
            Ok((true, emit(json, &HpolyDoc::new(&a, p, c, &h, &hl, m))?))
        }
        Command::Tor { a, j, argument, imax } => {
            let v = parse_ideals(&[&a.ideal, argument])?;
            let row = tor_lengths(&v[0], *j, &v[1], imax.unwrap_or(v[0].dim()))?;
            Ok((true, emit(json, &TorDoc::new(&v[0], &v[1], &row))?))
        }
        Command::Verify { suite, a, characteristic, order, max, j, argument, larger, reduction } => {
            let suite: Suite = suite.parse()?;
            let mut texts = vec![a.ideal.as_str()];
            texts.extend([argument, larger, reduction].into_iter().flatten().map(String::as_str));
            let ideals = parse_ideals(&texts)?;
            let mut rest = ideals[1..].iter().cloned();
            let mut params = SuiteParams::new(ideals[0].clone());
            params.characteristic = *characteristic;
            params.order = order.clone();
            params.max = max.clone();
            params.j = *j;
            params.argument = argument.as_ref().and_then(|_| rest.next());
            params.larger = larger.as_ref().and_then(|_| rest.next());
            params.reduction = reduction.as_ref().and_then(|_| rest.next());
            let report = run_suite(suite, &params)?;
            Ok((report.passed(), emit(json, &VerifyDoc::new(&params.ideal, &report))?))
        }
    }
}

fn cache_path(a: &MonomialIdeal, characteristic: u64, max: &Rational) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let key = format!("{a}|{characteristic}|{}", crate::rational::format_rational(max));
    let hex: String = key.bytes().map(|b| format!("{b:02x}")).collect();
    Some(PathBuf::from(dir).join(format!("jumps-{hex}.json")))
}

fn cached_jumps(a: &MonomialIdeal, characteristic: u64, max: &Rational) -> Result<JumpsDoc> {
    let path = cache_path(a, characteristic, max);
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(doc) = serde_json::from_str::<JumpsDoc>(&text) {
                return Ok(doc);
            }
        }
    }
    let (f, p) = filtration(a, Some(characteristic))?;
    let doc = JumpsDoc::new(a, p, &jumping_numbers(f.as_ref(), max)?);
    if let Some(p) = &path {
        let _ = std::fs::create_dir_all(p.parent().unwrap());
        let _ = std::fs::write(p, serde_json::to_string(&doc).unwrap_or_default());
    }
    Ok(doc)
}
