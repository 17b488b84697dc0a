//! Command-line front end: system files, run configuration and rendering.
//!
//! A system file declares the variables on its first line and then holds
//! one polynomial per line:
//!
//! ```text
//! # the example from the documentation
//! vars x1 x2;
//! x2^10
//! x1*x2^3 + x2^5
//! x1^11
//! ```
//!
//! Blank lines are skipped and `#` starts a comment. Variable names are
//! separated by spaces or commas and the trailing `;` is optional.
//! Polynomials use integer literals, `+ - * / ^` and parentheses, with
//! `^` binding tightest, then unary minus, then `*`, `/` and juxtaposition
//! (`2x`, `x y`), then binary `+ -`. Divisors must be non-zero constants
//! and exponents non-negative integer literals.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::BigRational;
use crate::error::{Error, Result};
use crate::ideals::RationalIdeal;
use crate::modular::{mod_decompose_with_progress, ModularConfig, ProgressEvent, ProgressSink};
use crate::poly::{RationalPoly, RationalRing, Rationals, Ring};
use crate::triang::{triang_m, triang_m_disjoint};
use crate::unisolve::{solve_system, test_zero, RationalDecomposition, DEFAULT_RESIDUAL_TOL, DEFAULT_TOL};

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u32 = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_ZERO_DIMENSIONAL: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<BigInt>().expect("digits");
            out.push(Token { tok: Tok::Num(n), column });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(parse_error(line, column, format!("unexpected character '{c}'"))),
        };
        out.push(Token { tok, column });
        i += 1;
    }
    Ok(out)
}

struct PolyParser<'a> {
    ring: &'a Arc<RationalRing>,
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_error(self.line, self.column(), message)
    }

    fn expr(&mut self) -> Result<RationalPoly> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            match op {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let column = self.column();
                    let d = self.unary()?;
                    let c = match d.terms() {
                        [(m, c)] if m.is_one() => c.clone(),
                        [] => return Err(parse_error(self.line, column, "division by zero")),
                        _ => return Err(parse_error(self.line, column, "divisor must be a constant")),
                    };
                    acc = acc.scale(&(BigRational::from_integer(1.into()) / c));
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| parse_error(self.line, column, format!("exponent {n} is too large")))?;
                Ok(base.pow(e))
            }
            _ => Err(parse_error(self.line, column, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RationalPoly> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RationalPoly::constant(self.ring, BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.vars().iter().position(|v| *v == name) {
                    Some(i) => Ok(RationalPoly::var(self.ring, i)),
                    None => Err(parse_error(self.line, column, format!("undeclared variable '{name}'"))),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(parse_error(self.line, column, format!("unexpected token {t:?}"))),
            None => Err(self.error("unexpected end of line")),
        }
    }
}

fn parse_line(ring: &Arc<RationalRing>, text: &str, line: usize) -> Result<RationalPoly> {
    let tokens = tokenize(text, line)?;
    let end_column = text.chars().count() + 1;
    let mut p = PolyParser {
        ring,
        tokens,
        pos: 0,
        line,
        end_column,
    };
    let f = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses one polynomial over `ring`; the inverse of its `Display`.
pub fn parse_polynomial(ring: &Arc<RationalRing>, text: &str) -> Result<RationalPoly> {
    parse_line(ring, text, 1)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses a system file into its ring and ideal.
pub fn parse_system(text: &str) -> Result<(Arc<RationalRing>, RationalIdeal)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((decl_line, decl)) = lines.next() else {
        return Err(parse_error(1, 1, "empty system: expected 'vars ...'"));
    };
    let body = decl.trim_start();
    let indent = decl.len() - body.len();
    let Some(names) = body.strip_prefix("vars").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)) else {
        return Err(parse_error(decl_line, indent + 1, "expected a 'vars' declaration"));
    };
    let names = names.trim_end();
    let names = names.strip_suffix(';').unwrap_or(names);
    let vars: Vec<&str> = names
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect();
    for v in &vars {
        let ok = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            let column = decl.find(v).map_or(1, |i| i + 1);
            return Err(parse_error(decl_line, column, format!("invalid variable name '{v}'")));
        }
    }
    let ring = Ring::new(&vars, Rationals).map_err(|e| parse_error(decl_line, indent + 1, e.to_string()))?;

    let mut gens = Vec::new();
    let mut first_line = None;
    for (line, text) in lines {
        first_line.get_or_insert(line);
        gens.push(parse_line(&ring, text, line)?);
    }
    let Some(first_line) = first_line else {
        return Err(parse_error(decl_line + 1, 1, "empty system: no polynomials"));
    };
    if gens.iter().all(|g| g.is_zero()) {
        return Err(parse_error(first_line, 1, "every polynomial is zero"));
    }
    let ideal = RationalIdeal::new(gens).map_err(|e| parse_error(first_line, 1, e.to_string()))?;
    Ok((ring, ideal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Modular decomposition with lifting and a probabilistic check.
    Modular,
    /// Decomposition over the rationals.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Everything that controls a run apart from the input.
#[derive(Debug, Clone, PartialEq, clap::Args)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value = "modular")]
    pub mode: Mode,
    /// Primes per round of the modular method.
    #[arg(long = "primes", default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub primes_per_round: u64,
    /// Worker threads for the modular decompositions.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Root clustering tolerance (relative).
    #[arg(long, default_value_t = DEFAULT_TOL, value_parser = positive_float)]
    pub tol: f64,
    /// Largest residual accepted by the verification.
    #[arg(long = "residual-tol", default_value_t = DEFAULT_RESIDUAL_TOL, value_parser = positive_float)]
    pub residual_tol: f64,
    /// Seed of the prime stream; drawn from the OS when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Stop after the decomposition.
    #[arg(long = "decomposition-only")]
    pub decomposition_only: bool,
    /// Use the disjoint variant (multiplicities are not preserved).
    #[arg(long)]
    pub disjoint: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Print progress of the modular method on standard error.
    #[arg(long)]
    pub verbose: bool,
}

fn positive_float(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Modular,
            primes_per_round: 10,
            jobs: 1,
            tol: DEFAULT_TOL,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            seed: None,
            decomposition_only: false,
            disjoint: false,
            format: Format::Json,
            verbose: false,
        }
    }
}

/// Solve a zero-dimensional polynomial system over the rationals.
#[derive(Debug, Parser)]
#[command(name = "triangsolve", version)]
pub struct Cli {
    /// System file; `-` reads standard input.
    pub input: PathBuf,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub set: usize,
    /// `[re, im]` per variable.
    pub coords: Vec<[f64; 2]>,
    pub multiplicity: usize,
    pub residual: f64,
    pub location: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub rounds: usize,
    pub primes_used: usize,
    pub wall_seconds: f64,
}

/// The rendered result of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub variables: Vec<String>,
    pub mode: Mode,
    pub seed: u64,
    /// `dim_Q Q[X]/I`.
    pub dimension: usize,
    pub triangular_sets: Vec<Vec<String>>,
    pub solutions: Vec<SolutionReport>,
    pub distinct_points: usize,
    pub total_multiplicity: usize,
    pub verified: bool,
    /// Failed verification checks.
    pub failures: Vec<String>,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "variables: {}", self.variables.join(" "));
        let _ = writeln!(s, "dimension: {}", self.dimension);
        let _ = writeln!(s, "triangular sets: {}", self.triangular_sets.len());
        for (i, set) in self.triangular_sets.iter().enumerate() {
            let _ = writeln!(s, "  F{} = {{{}}}", i + 1, set.join(", "));
        }
        if !self.solutions.is_empty() {
            let _ = writeln!(
                s,
                "solutions: {} points, {} distinct, total multiplicity {}",
                self.solutions.len(),
                self.distinct_points,
                self.total_multiplicity
            );
            for p in &self.solutions {
                let coords: Vec<String> = self
                    .variables
                    .iter()
                    .zip(&p.coords)
                    .map(|(v, [re, im])| format!("{v} = {}", format_complex(*re, *im)))
                    .collect();
                let _ = writeln!(
                    s,
                    "  F{}: {}  (multiplicity {}, residual {:.1e})",
                    p.set + 1,
                    coords.join(", "),
                    p.multiplicity,
                    p.residual
                );
            }
        }
        let _ = writeln!(s, "verified: {}", if self.verified { "yes" } else { "no" });
        for f in &self.failures {
            let _ = writeln!(s, "  {f}");
        }
        let _ = writeln!(
            s,
            "rounds: {}, primes: {}, seed: {}, time: {:.3} s",
            self.timing.rounds, self.timing.primes_used, self.seed, self.timing.wall_seconds
        );
        s
    }
}

fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format_real(re)
    } else if im < 0.0 {
        format!("{} - {}i", format_real(re), format_real(-im))
    } else {
        format!("{} + {}i", format_real(re), format_real(im))
    }
}

/// Shortest round-trip form, switching to scientific notation for very
/// small or large magnitudes.
fn format_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Result of [`run`]: what to print and how to exit.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    /// Rendered report, empty on early failure.
    pub stdout: String,
    /// Diagnostics.
    pub stderr: String,
    pub report: Option<Report>,
}

impl RunOutcome {
    fn failure(exit_code: i32, message: String) -> Self {
        RunOutcome {
            exit_code,
            stdout: String::new(),
            stderr: message,
            report: None,
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotZeroDimensional => EXIT_NOT_ZERO_DIMENSIONAL,
        Error::RoundsExceeded { .. } | Error::DegenerateChain { .. } => EXIT_VERIFICATION,
        _ => EXIT_INPUT,
    }
}

/// Parses `system` and runs the configured pipeline.
pub fn run(config: &RunConfig, system: &str) -> RunOutcome {
    match parse_system(system) {
        Ok((_, ideal)) => run_ideal(config, &ideal),
        Err(e) => RunOutcome::failure(EXIT_INPUT, e.to_string()),
    }
}

fn decompose(config: &RunConfig, ideal: &RationalIdeal, seed: u64) -> Result<(RationalDecomposition, usize, usize)> {
    match config.mode {
        Mode::Direct => {
            let d = if config.disjoint { triang_m_disjoint(ideal)? } else { triang_m(ideal)? };
            Ok((d, 0, 0))
        }
        Mode::Modular => {
            let cfg = ModularConfig {
                primes_per_round: config.primes_per_round as usize,
                jobs: config.jobs as usize,
                seed,
                disjoint: config.disjoint,
                ..ModularConfig::default()
            };
            let sink: Option<ProgressSink> = config.verbose.then(|| {
                Arc::new(|e: &ProgressEvent| {
                    let _ = writeln!(std::io::stderr(), "{e}");
                }) as ProgressSink
            });
            let out = mod_decompose_with_progress(ideal, &cfg, sink)?;
            Ok((out.decomposition, out.rounds, out.primes_used))
        }
    }
}

/// Runs the pipeline on a parsed ideal.
pub fn run_ideal(config: &RunConfig, ideal: &RationalIdeal) -> RunOutcome {
    let start = Instant::now();
    let seed = config.seed.unwrap_or_else(rand::random);
    let (d, rounds, primes_used) = match decompose(config, ideal, seed) {
        Ok(v) => v,
        Err(e) => return RunOutcome::failure(exit_code_for(&e), e.to_string()),
    };
    let mut report = Report {
        variables: ideal.ring().vars().to_vec(),
        mode: config.mode,
        seed,
        dimension: d.total_vdim(),
        triangular_sets: d.texts(),
        solutions: Vec::new(),
        distinct_points: 0,
        total_multiplicity: 0,
        verified: false,
        failures: Vec::new(),
        timing: Timing {
            rounds,
            primes_used,
            wall_seconds: 0.0,
        },
    };
    let mut exit_code = EXIT_OK;
    if !config.decomposition_only {
        let solved = solve_system(ideal, &d, config.tol)
            .and_then(|s| test_zero(ideal, &d, &s, config.residual_tol).map(|r| (s, r)));
        let (solutions, check) = match solved {
            Ok(v) => v,
            Err(e) => return RunOutcome::failure(exit_code_for(&e), e.to_string()),
        };
        report.dimension = check.vdim;
        report.solutions = solutions
            .points
            .iter()
            .map(|p| SolutionReport {
                set: p.set,
                coords: p.coords.iter().map(|z| [z.re, z.im]).collect(),
                multiplicity: p.multiplicity,
                residual: p.residual,
                location: p.location,
            })
            .collect();
        report.distinct_points = solutions.distinct_points();
        report.total_multiplicity = solutions.total_multiplicity;
        report.verified = if config.disjoint {
            check.passed_ignoring_multiplicity()
        } else {
            check.passed()
        };
        report.failures = check
            .failures()
            .into_iter()
            .filter(|f| !(config.disjoint && f.starts_with("total multiplicity")))
            .collect();
        if !report.verified {
            exit_code = EXIT_VERIFICATION;
        }
    }
    report.timing.wall_seconds = start.elapsed().as_secs_f64();
    let stdout = match config.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let stderr = if exit_code == EXIT_VERIFICATION {
        format!("verification failed: {}", report.failures.join("; "))
    } else {
        String::new()
    };
    RunOutcome {
        exit_code,
        stdout,
        stderr,
        report: Some(report),
    }
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", cli.input.display());
            return EXIT_INPUT;
        }
    };
    let outcome = run(&cli.config, &text);
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr);
    }
    outcome.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(text: &str) -> Vec<String> {
        parse_system(text)
            .unwrap()
            .1
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn example_system() {
        assert_eq!(
            gens("vars x1 x2;\nx2^10\nx1*x2^3+x2^5\nx1^11"),
            ["x2^10", "x1*x2^3+x2^5", "x1^11"]
        );
    }

    #[test]
    fn precedence_and_expansion() {
        assert_eq!(gens("vars x y;\n(x+y)^2 - 1"), ["x^2+2*x*y+y^2-1"]);
        assert_eq!(gens("vars x;\n-x^2"), ["-x^2"]);
        assert_eq!(gens("vars x y\n2x y - x/2 + 3/4"), ["2*x*y-1/2*x+3/4"]);
        assert_eq!(gens("vars x, y;  # comment\n\n  x - - y # trailing\n"), ["x+y"]);
        assert_eq!(gens("vars x;\n2^3 x^0"), ["8"]);
    }

    #[test]
    fn errors_carry_positions() {
        let err = |t: &str| match parse_system(t) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("{other:?}"),
        };
        assert_eq!(err("vars x;\n0"), (2, 1));
        assert_eq!(err("vars x;\nx + y"), (2, 5));
        assert_eq!(err("vars x;\nx $ 1"), (2, 3));
        assert_eq!(err("vars x;\nx^-1"), (2, 3));
        assert_eq!(err("vars x;\n(x + 1"), (2, 7));
        assert_eq!(err("vars x;\nx / x"), (2, 5));
        assert_eq!(err("vars x;\nx / 0"), (2, 5));
        assert_eq!(err("x + 1"), (1, 1));
        assert_eq!(err("vars x x;\nx"), (1, 1));
        assert_eq!(err("vars x;\n"), (2, 1));
        assert_eq!(err(""), (1, 1));
        assert_eq!(err("vars 1x;\nx"), (1, 6));
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        let (ring, ideal) = parse_system("vars a b c;\n(3a - b/7)^3 - 22/5 c + a b c").unwrap();
        for g in ideal.generators() {
            assert_eq!(&parse_polynomial(&ring, &g.to_string()).unwrap(), g);
        }
    }

    #[test]
    fn runs_end_to_end() {
        let cfg = RunConfig {
            seed: Some(3),
            ..RunConfig::default()
        };
        let out = run(&cfg, "vars x1 x2;\nx2^10\nx1*x2^3+x2^5\nx1^11");
        assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
        let report: Report = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(report.dimension, 40);
        assert_eq!(report.triangular_sets.len(), 2);
        assert_eq!(report.distinct_points, 1);
        assert_eq!(report.total_multiplicity, 40);
        assert!(report.verified);

        let out = run(&cfg, "vars x1 x2;\nx1\nx2");
        assert_eq!(out.exit_code, EXIT_OK);
        let report = out.report.unwrap();
        assert_eq!(report.solutions.len(), 1);
        assert_eq!(report.solutions[0].coords, [[0.0, 0.0], [0.0, 0.0]]);

        let out = run(&cfg, "vars x1 x2;\nx1");
        assert_eq!(out.exit_code, EXIT_NOT_ZERO_DIMENSIONAL);
        assert!(out.stderr.contains("not zero-dimensional"));
        let direct = RunConfig {
            mode: Mode::Direct,
            ..cfg.clone()
        };
        assert_eq!(run(&direct, "vars x1 x2;\nx1").exit_code, EXIT_NOT_ZERO_DIMENSIONAL);
        assert_eq!(run(&cfg, "vars x;\nx +").exit_code, EXIT_INPUT);
    }

    #[test]
    fn clap_flags() {
        let cli = Cli::try_parse_from([
            "triangsolve",
            "sys.txt",
            "--mode",
            "direct",
            "--primes",
            "3",
            "--jobs",
            "2",
            "--tol",
            "1e-9",
            "--residual-tol",
            "1e-5",
            "--seed",
            "7",
            "--decomposition-only",
            "--disjoint",
            "--format",
            "text",
            "--verbose",
        ])
        .unwrap();
        assert_eq!(cli.config.mode, Mode::Direct);
        assert_eq!((cli.config.primes_per_round, cli.config.jobs), (3, 2));
        assert_eq!(cli.config.seed, Some(7));
        assert!(cli.config.decomposition_only && cli.config.disjoint && cli.config.verbose);
        assert!(Cli::try_parse_from(["triangsolve", "s", "--jobs", "0"]).is_err());
        assert!(Cli::try_parse_from(["triangsolve", "s", "--tol", "-1"]).is_err());
        let defaults = Cli::try_parse_from(["triangsolve", "s"]).unwrap().config;
        assert_eq!(defaults, RunConfig::default());
    }
}
