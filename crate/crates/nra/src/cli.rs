//! Command-line driver: script execution, interpolation, cell queries,
//! generalization, model checking, and the batch harness.

use crate::error::{Error, Result};
use crate::frontend::{self, Command, Script};
use crate::itp::{self, InterpolationStatus};
use crate::mc::{self, Engine, MCResult};
use crate::mcsat::{CheckResult, Solver, SolverStats};
use crate::model::{Assignment, Ctx, TermId, Value};
use crate::poly::{Polynomial, Rat, Sort, Var};
use crate::realalg::AlgebraicNumber;
use crate::{cad, gen};
use clap::{Parser, Subcommand};
use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "nra", about = "Nonlinear real arithmetic solver with model interpolation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a problem script (.nlsmt)
    Solve {
        input: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Run the interpolation command of a script with assert-A/assert-B
    Interpolate {
        input: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Print the CAD cell of a polynomial set around a sample point
    Cell {
        #[arg(long)]
        polys: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        basic: bool,
    },
    /// Generalize a model of a formula onto the kept variables
    Generalize {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
    },
    /// Model-check a transition system (.nlts)
    Mc {
        input: PathBuf,
        #[arg(long, default_value = "itp")]
        engine: String,
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        #[arg(long)]
        stats: bool,
    },
    /// Run every .nlts file in a directory and emit a CSV report
    Bench {
        dir: PathBuf,
        #[arg(long, default_value = "itp")]
        engine: String,
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        /// Per-file timeout in seconds (default from NRA_TIMEOUT_SECS, else 60)
        #[arg(long)]
        timeout_secs: Option<u64>,
    },
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Solve { input, stats } => {
            let text = std::fs::read_to_string(&input)?;
            let (out, code) = run_script_text(&text, stats)?;
            print!("{out}");
            Ok(code)
        }
        Cmd::Interpolate { input, stats } => {
            let text = std::fs::read_to_string(&input)?;
            let (out, code) = run_interpolate_text(&text, stats)?;
            print!("{out}");
            Ok(code)
        }
        Cmd::Cell { polys, point, basic } => {
            let text = std::fs::read_to_string(&polys)?;
            let out = run_cell_text(&text, &point, basic)?;
            print!("{out}");
            Ok(0)
        }
        Cmd::Generalize { formula, model, keep } => {
            let text = std::fs::read_to_string(&formula)?;
            let out = run_generalize_text(&text, &model, &keep)?;
            print!("{out}");
            Ok(0)
        }
        Cmd::Mc { input, engine, max_k, stats } => {
            let text = std::fs::read_to_string(&input)?;
            let engine: Engine = engine.parse()?;
            let (out, code) = run_mc_text(&text, engine, max_k, stats)?;
            print!("{out}");
            Ok(code)
        }
        Cmd::Bench { dir, engine, max_k, timeout_secs } => {
            let timeout = timeout_secs
                .or_else(|| {
                    std::env::var("NRA_TIMEOUT_SECS")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(60);
            run_bench(&dir, &engine, max_k, timeout)
        }
    }
}

fn parse_point(ctx: &Ctx, spec: &str) -> Result<Assignment> {
    let mut m = Assignment::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((name, value)) = part.split_once('=') else {
            return Err(Error::Precondition(format!(
                "point entries are name=value, got `{part}`"
            )));
        };
        let name = name.trim();
        let v = ctx
            .lookup_var(name)
            .ok_or_else(|| Error::Precondition(format!("undeclared symbol `{name}`")))?;
        let q = parse_rat(value.trim())?;
        m.insert(v, Value::rat(q));
    }
    Ok(m)
}

fn parse_rat(s: &str) -> Result<Rat> {
    if let Some((n, d)) = s.split_once('/') {
        let n: crate::poly::Int = n
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad rational `{s}`")))?;
        let d: crate::poly::Int = d
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad rational `{s}`")))?;
        Ok(Rat::new(n, d))
    } else if let Some(dot) = s.find('.') {
        let scale = crate::poly::Int::from(10).pow((s.len() - dot - 1) as u32);
        let joined: String = s.chars().filter(|c| *c != '.').collect();
        let n: crate::poly::Int = joined
            .parse()
            .map_err(|_| Error::Precondition(format!("bad decimal `{s}`")))?;
        Ok(Rat::new(n, scale))
    } else {
        let n: crate::poly::Int = s
            .parse()
            .map_err(|_| Error::Precondition(format!("bad integer `{s}`")))?;
        Ok(Rat::from(n))
    }
}

fn append_stats(out: &mut String, stats: &SolverStats, wall: f64, extra: Option<(usize, u64)>) {
    let _ = writeln!(out, "; stats");
    let _ = writeln!(out, ";   conflicts    {}", stats.conflicts);
    let _ = writeln!(out, ";   decisions    {}", stats.decisions);
    let _ = writeln!(out, ";   propagations {}", stats.propagations);
    if let Some((clauses, iters)) = extra {
        let _ = writeln!(out, ";   interpolant-clauses {clauses}");
        let _ = writeln!(out, ";   refutation-rounds   {iters}");
    }
    let _ = writeln!(out, ";   wall-time-s  {wall:.3}");
}

/// Executes a problem script; returns the textual output and the exit code.
pub fn run_script_text(text: &str, stats: bool) -> Result<(String, i32)> {
    let script = frontend::parse_script(text)?;
    let start = Instant::now();
    let mut out = String::new();
    let ctx = script.ctx.clone();
    let mut plain: Vec<TermId> = vec![];
    let mut side_a: Vec<TermId> = vec![];
    let mut side_b: Vec<TermId> = vec![];
    let mut last_model: Option<Assignment> = None;
    let mut last_stats = SolverStats::default();
    for cmd in &script.commands {
        match cmd {
            Command::Assert(t) => plain.push(*t),
            Command::AssertA(t) => side_a.push(*t),
            Command::AssertB(t) => side_b.push(*t),
            Command::CheckSat | Command::CheckSatAssumingModel(_) => {
                let mut solver = Solver::new(ctx.clone());
                for t in plain.iter().chain(&side_a).chain(&side_b) {
                    solver.assert_formula(*t);
                }
                let m0 = match cmd {
                    Command::CheckSatAssumingModel(entries) => {
                        let mut m = Assignment::new();
                        for (v, q) in entries {
                            m.insert(*v, Value::rat(q.clone()));
                        }
                        m
                    }
                    _ => Assignment::new(),
                };
                match solver.check_modulo(&m0)? {
                    CheckResult::Sat(m) => {
                        let _ = writeln!(out, "sat");
                        last_model = Some(m);
                    }
                    CheckResult::Unsat(i) => {
                        let _ = writeln!(out, "unsat");
                        let basic = if m0.is_empty() {
                            i
                        } else {
                            itp::eliminate_extended(&ctx, &i, &m0)?
                        };
                        let _ = writeln!(out, "{}", frontend::print_clause(&ctx, &basic));
                        last_model = None;
                    }
                }
                last_stats = solver.stats();
            }
            Command::ComputeInterpolant => {
                let a = ctx.mk_and(plain.iter().chain(&side_a).copied().collect());
                let b = ctx.mk_and(side_b.clone());
                let r = itp::interpolate(&ctx, a, b)?;
                match &r.status {
                    InterpolationStatus::Unsat(clauses) => {
                        let _ = writeln!(out, "unsat");
                        let ts: Vec<TermId> =
                            clauses.iter().map(|c| ctx.clause_term(c)).collect();
                        let term = ctx.mk_and(ts);
                        let _ = writeln!(out, "{}", frontend::print_term(&ctx, term));
                        if stats {
                            append_stats(
                                &mut out,
                                &r.stats_a,
                                start.elapsed().as_secs_f64(),
                                Some((clauses.len(), r.log.iterations)),
                            );
                        }
                    }
                    InterpolationStatus::Sat(m) => {
                        let _ = writeln!(out, "sat");
                        let _ = writeln!(out, "{}", frontend::print_model(&ctx, m));
                    }
                }
            }
            Command::GetModel => match &last_model {
                Some(m) => {
                    let _ = writeln!(out, "{}", frontend::print_model(&ctx, m));
                }
                None => {
                    let _ = writeln!(out, "(error \"no model available\")");
                }
            },
        }
    }
    if stats {
        append_stats(&mut out, &last_stats, start.elapsed().as_secs_f64(), None);
    }
    Ok((out, 0))
}

/// Runs the compute-interpolant command of a script (implied if missing).
pub fn run_interpolate_text(text: &str, stats: bool) -> Result<(String, i32)> {
    let mut script = frontend::parse_script(text)?;
    let has = script
        .commands
        .iter()
        .any(|c| matches!(c, Command::ComputeInterpolant));
    if !has {
        script.commands.push(Command::ComputeInterpolant);
    }
    run_commands_interpolate(&script, stats)
}

fn run_commands_interpolate(script: &Script, stats: bool) -> Result<(String, i32)> {
    let ctx = script.ctx.clone();
    let start = Instant::now();
    let mut side_a: Vec<TermId> = vec![];
    let mut side_b: Vec<TermId> = vec![];
    for cmd in &script.commands {
        match cmd {
            Command::Assert(t) | Command::AssertA(t) => side_a.push(*t),
            Command::AssertB(t) => side_b.push(*t),
            _ => {}
        }
    }
    let a = ctx.mk_and(side_a);
    let b = ctx.mk_and(side_b);
    let r = itp::interpolate(&ctx, a, b)?;
    let mut out = String::new();
    match &r.status {
        InterpolationStatus::Unsat(clauses) => {
            let _ = writeln!(out, "unsat");
            let ts: Vec<TermId> = clauses.iter().map(|c| ctx.clause_term(c)).collect();
            let term = ctx.mk_and(ts);
            let _ = writeln!(out, "{}", frontend::print_term(&ctx, term));
            if stats {
                append_stats(
                    &mut out,
                    &r.stats_a,
                    start.elapsed().as_secs_f64(),
                    Some((clauses.len(), r.log.iterations)),
                );
            }
        }
        InterpolationStatus::Sat(m) => {
            let _ = writeln!(out, "sat");
            let _ = writeln!(out, "{}", frontend::print_model(&ctx, m));
        }
    }
    Ok((out, 0))
}

/// Parses a polynomial file: declarations followed by `(poly <term>)` forms.
fn parse_polys(text: &str) -> Result<(Ctx, Vec<Polynomial>)> {
    let ctx = Ctx::new();
    let mut polys = Vec::new();
    for e in frontend::sexpr::parse_all(text)? {
        let items = e.as_list()?;
        if items.is_empty() {
            return Err(e.pos().err("empty form"));
        }
        match items[0].as_atom()? {
            "declare-const" => {
                let name = items[1].as_atom()?;
                match items[2].as_atom()? {
                    "Real" => {
                        ctx.declare_var(name, Sort::Real)?;
                    }
                    other => {
                        return Err(items[2].pos().err(format!(
                            "cell polynomials use Real variables, not {other}"
                        )))
                    }
                }
            }
            "poly" => {
                if items.len() != 2 {
                    return Err(e.pos().err("poly takes one term"));
                }
                let atom = frontend::parse_term(
                    &ctx,
                    &frontend::sexpr::SExpr::List(
                        vec![
                            frontend::sexpr::SExpr::Atom("=".into(), e.pos()),
                            items[1].clone(),
                            frontend::sexpr::SExpr::Atom("0".into(), e.pos()),
                        ],
                        e.pos(),
                    ),
                )?;
                match ctx.term(atom) {
                    crate::model::TermKind::PolyAtom { poly, .. } => polys.push(poly),
                    _ => return Err(e.pos().err("polynomial is constant")),
                }
            }
            other => return Err(e.pos().err(format!("unknown form `{other}`"))),
        }
    }
    if polys.is_empty() {
        return Err(Error::Precondition("no polynomials given".into()));
    }
    Ok((ctx, polys))
}

pub fn run_cell_text(polys_text: &str, point: &str, basic: bool) -> Result<String> {
    let (ctx, polys) = parse_polys(polys_text)?;
    let m = parse_point(&ctx, point)?;
    let cell = if basic {
        cad::cell_basic(&ctx, &polys, &m)?
    } else {
        cad::cell_extended(&ctx, &polys, &m)?
    };
    let mut out = String::from("(cell");
    for level in &cell.levels {
        let term = ctx.mk_and(level.atoms.clone());
        let _ = write!(
            out,
            "\n  ({} {})",
            ctx.var_name(level.var),
            frontend::print_term(&ctx, term)
        );
    }
    out.push_str("\n)\n");
    Ok(out)
}

pub fn run_generalize_text(formula_text: &str, model: &str, keep: &[String]) -> Result<String> {
    let script = frontend::parse_script(formula_text)?;
    let ctx = script.ctx.clone();
    let asserts: Vec<TermId> = script
        .commands
        .iter()
        .filter_map(|c| match c {
            Command::Assert(t) => Some(*t),
            _ => None,
        })
        .collect();
    if asserts.is_empty() {
        return Err(Error::Precondition("formula file has no assert".into()));
    }
    let f = ctx.mk_and(asserts);
    let m = parse_point(&ctx, model)?;
    let mut keep_vars: HashSet<Var> = HashSet::new();
    for name in keep {
        let v = ctx
            .lookup_var(name)
            .ok_or_else(|| Error::Precondition(format!("undeclared symbol `{name}`")))?;
        keep_vars.insert(v);
    }
    let g = gen::generalize(&ctx, f, &m, &keep_vars)?;
    Ok(format!("{}\n", frontend::print_term(&ctx, g)))
}

fn print_trace(sys: &frontend::TransitionSystem, tr: &mc::Trace) -> String {
    let mut out = String::new();
    for (j, st) in tr.states.iter().enumerate() {
        let _ = write!(out, "(step {j}");
        for (v, val) in st.iter() {
            let _ = write!(
                out,
                " ({} {})",
                sys.ctx.var_name(*v),
                frontend::print_value(&sys.ctx.var_name(*v), val)
            );
        }
        let _ = writeln!(out, ")");
    }
    out
}

pub fn run_mc_text(
    text: &str,
    engine: Engine,
    max_k: usize,
    stats: bool,
) -> Result<(String, i32)> {
    let sys = frontend::parse_system(text)?;
    let start = Instant::now();
    let result = mc::check(&sys, engine, max_k)?;
    let mut out = String::new();
    let code = match &result {
        MCResult::Valid(inv) => {
            let _ = writeln!(out, "valid");
            if let Some(inv) = inv {
                let _ = writeln!(out, "; invariant {}", frontend::print_term(&sys.ctx, *inv));
            }
            0
        }
        MCResult::Invalid(tr) => {
            let _ = writeln!(out, "invalid");
            out.push_str(&print_trace(&sys, tr));
            1
        }
        MCResult::Unknown => {
            let _ = writeln!(out, "unknown");
            0
        }
    };
    if stats {
        let _ = writeln!(out, "; wall-time-s {:.3}", start.elapsed().as_secs_f64());
    }
    Ok((out, code))
}

fn run_bench(dir: &Path, engine: &str, max_k: usize, timeout_secs: u64) -> Result<i32> {
    let exe = std::env::current_exe()?;
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "nlts").unwrap_or(false))
        .collect();
    files.sort();
    println!("file,verdict,time_s,exit");
    for f in files {
        let start = Instant::now();
        let mut child = std::process::Command::new(&exe)
            .arg("mc")
            .arg(&f)
            .arg("--engine")
            .arg(engine)
            .arg("--max-k")
            .arg(max_k.to_string())
            .stdout(std::process::Stdio::piped())
            .stderr(std::process::Stdio::null())
            .spawn()?;
        let deadline = std::time::Duration::from_secs(timeout_secs);
        let verdict;
        let code;
        loop {
            match child.try_wait()? {
                Some(status) => {
                    let mut s = String::new();
                    use std::io::Read;
                    if let Some(mut stdout) = child.stdout.take() {
                        let _ = stdout.read_to_string(&mut s);
                    }
                    verdict = s.lines().next().unwrap_or("error").to_string();
                    code = status.code().unwrap_or(-1);
                    break;
                }
                None => {
                    if start.elapsed() > deadline {
                        let _ = child.kill();
                        let _ = child.wait();
                        verdict = "timeout".to_string();
                        code = -1;
                        break;
                    }
                    std::thread::sleep(std::time::Duration::from_millis(20));
                }
            }
        }
        println!(
            "{},{},{:.3},{}",
            f.file_name().unwrap().to_string_lossy(),
            verdict,
            start.elapsed().as_secs_f64(),
            code
        );
    }
    Ok(0)
}

/// Convenience used by the Python bindings: isolate the real roots of a
/// univariate polynomial given as an SMT-LIB term over one symbol.
pub fn isolate_roots_text(poly_text: &str) -> Result<Vec<(String, usize, f64)>> {
    let ctx = Ctx::new();
    let exprs = frontend::sexpr::parse_all(poly_text)?;
    let [expr] = exprs.as_slice() else {
        return Err(Error::Precondition("expected one polynomial term".into()));
    };
    declare_symbols(&ctx, expr)?;
    let atom = frontend::parse_term(
        &ctx,
        &frontend::sexpr::SExpr::List(
            vec![
                frontend::sexpr::SExpr::Atom("=".into(), expr.pos()),
                expr.clone(),
                frontend::sexpr::SExpr::Atom("0".into(), expr.pos()),
            ],
            expr.pos(),
        ),
    )?;
    let poly = match ctx.term(atom) {
        crate::model::TermKind::PolyAtom { poly, .. } => poly,
        _ => return Err(Error::Precondition("polynomial is constant".into())),
    };
    let roots = crate::realalg::isolate_real_roots(&ctx.order(), &poly)?;
    Ok(roots
        .iter()
        .map(|r| {
            let name = match &poly.vars()[..] {
                [v] => ctx.var_name(*v),
                _ => "x".to_string(),
            };
            let printed = frontend::print_value(&name, &Value::Real(r.clone()));
            let idx = match r {
                AlgebraicNumber::Root { .. } => crate::realalg::root_index(r).unwrap_or(0),
                AlgebraicNumber::Rational(_) => 0,
            };
            (printed, idx, r.approx_f64())
        })
        .collect())
}

fn declare_symbols(ctx: &Ctx, e: &frontend::sexpr::SExpr) -> Result<()> {
    match e {
        frontend::sexpr::SExpr::Atom(s, _) => {
            let numeric = {
                let t = s.strip_prefix('-').unwrap_or(s);
                !t.is_empty() && t.chars().next().unwrap().is_ascii_digit()
            };
            let keyword = matches!(
                s.as_str(),
                "and" | "or" | "not" | "+" | "-" | "*" | "/" | "<" | "<=" | "=" | ">=" | ">"
                    | "true"
                    | "false"
            );
            if !numeric && !keyword && ctx.lookup_var(s).is_none() {
                ctx.declare_var(s, Sort::Real)?;
            }
            Ok(())
        }
        frontend::sexpr::SExpr::List(items, _) => {
            for item in items.iter() {
                declare_symbols(ctx, item)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_assuming_model_prints_basic_interpolant() {
        let text = "(declare-const b Bool)(declare-const x Real)(declare-const y Real)\
                    (assert b)(assert (or (not b) (< (+ (* x x) (* y y)) 2)))\
                    (check-sat-assuming-model (x 2))";
        let (out, code) = run_script_text(text, false).unwrap();
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("unsat"));
        assert_eq!(
            lines.next(),
            Some("(or (not (> (* x x) 2)) (not (> x 0)))")
        );
    }

    #[test]
    fn cell_subcommand_output() {
        let polys = "(declare-const x Real)(declare-const y Real)\
                     (poly (+ (* x x) (* y y) -2))";
        let out = run_cell_text(polys, "x=1,y=2", true).unwrap();
        assert!(out.contains("(x (and (< (* x x) 2) (> x 0)))"), "{out}");
        assert!(
            out.contains("(y (and (> (+ (* x x) (* y y)) 2) (> y 0)))"),
            "{out}"
        );
    }

    #[test]
    fn generalize_subcommand_output() {
        let formula = "(declare-const x Real)(declare-const y Real)\
                       (assert (> (+ (* x x) (* y y)) 2))";
        let out = run_generalize_text(formula, "x=1,y=2", &["x".to_string()]).unwrap();
        assert_eq!(out.trim(), "(and (< (* x x) 2) (> x 0))");
    }

    #[test]
    fn roots_text() {
        let roots = isolate_roots_text("(- (* x x) 2)").unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].2 + std::f64::consts::SQRT_2).abs() < 1e-3);
        assert!((roots[1].2 - std::f64::consts::SQRT_2).abs() < 1e-3);
    }
}
