//! Model checking over transition systems: bounded model checking,
//! k-induction, and interpolation-based invariant inference.
//!
//! The interpolation engine keeps a reachability over-approximation that
//! starts at the initial states and is widened with interpolants computed at
//! a one-transition frontier; counterexample candidates are confirmed by
//! replayable BMC traces before an invalid verdict is ever reported.

use crate::error::{Error, Result};
use crate::frontend::TransitionSystem;
use crate::gen;
use crate::itp::{self, InterpolationStatus};
use crate::mcsat::{CheckResult, Solver};
use crate::model::{self, Assignment, Ctx, TermId, TruthValue, Value};
use crate::poly::Var;
use std::collections::{HashMap, HashSet};

/// A counterexample: state assignments per step, with the inputs consumed
/// at each transition kept for replay.
#[derive(Debug, Clone)]
pub struct Trace {
    pub states: Vec<Assignment>,
    pub inputs: Vec<Assignment>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

#[derive(Debug, Clone)]
pub enum MCResult {
    /// Property holds; the inductive strengthening is reported when the
    /// engine produces one (k-induction at k >= 2 does not).
    Valid(Option<TermId>),
    Invalid(Trace),
    Unknown,
}

impl MCResult {
    pub fn verdict(&self) -> &'static str {
        match self {
            MCResult::Valid(_) => "valid",
            MCResult::Invalid(_) => "invalid",
            MCResult::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Bmc,
    KInduction,
    Interpolation,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Engine> {
        match s {
            "bmc" => Ok(Engine::Bmc),
            "kind" => Ok(Engine::KInduction),
            "itp" => Ok(Engine::Interpolation),
            other => Err(Error::Precondition(format!("unknown engine `{other}`"))),
        }
    }
}

/// Step-indexed variable copies in a fresh query context.
struct Unroller<'a> {
    sys: &'a TransitionSystem,
    qctx: Ctx,
    state_copies: Vec<HashMap<Var, Var>>,
    input_copies: Vec<HashMap<Var, Var>>,
}

impl<'a> Unroller<'a> {
    fn new(sys: &'a TransitionSystem) -> Self {
        Unroller {
            sys,
            qctx: Ctx::new(),
            state_copies: vec![],
            input_copies: vec![],
        }
    }

    fn ensure_steps(&mut self, n: usize) {
        while self.state_copies.len() <= n {
            let j = self.state_copies.len();
            let mut sm = HashMap::new();
            for &v in &self.sys.state_vars {
                let name = format!("{}@{}", self.sys.ctx.var_name(v), j);
                let nv = self
                    .qctx
                    .declare_var(&name, crate::poly::Sort::Real)
                    .expect("fresh copy");
                sm.insert(v, nv);
            }
            let mut im = HashMap::new();
            for &v in &self.sys.inputs {
                let name = format!("{}@{}", self.sys.ctx.var_name(v), j);
                let nv = self
                    .qctx
                    .declare_var(&name, crate::poly::Sort::Real)
                    .expect("fresh copy");
                im.insert(v, nv);
            }
            self.state_copies.push(sm);
            self.input_copies.push(im);
        }
    }

    fn init_at(&mut self, j: usize) -> Result<TermId> {
        self.ensure_steps(j);
        model::map_term(&self.sys.ctx, &self.qctx, self.sys.init, &self.state_copies[j])
    }

    fn prop_at(&mut self, j: usize) -> Result<TermId> {
        self.ensure_steps(j);
        model::map_term(&self.sys.ctx, &self.qctx, self.sys.prop, &self.state_copies[j])
    }

    fn term_at(&mut self, t: TermId, j: usize) -> Result<TermId> {
        self.ensure_steps(j);
        model::map_term(&self.sys.ctx, &self.qctx, t, &self.state_copies[j])
    }

    /// Transition from step `j` to `j+1`.
    fn trans_at(&mut self, j: usize) -> Result<TermId> {
        self.ensure_steps(j + 1);
        let mut map = self.state_copies[j].clone();
        for (&s, &p) in &self.sys.primed {
            map.insert(p, self.state_copies[j + 1][&s]);
        }
        for (&u, &cu) in &self.input_copies[j] {
            map.insert(u, cu);
        }
        model::map_term(&self.sys.ctx, &self.qctx, self.sys.trans, &map)
    }

    fn extract_trace(&self, m: &Assignment, steps: usize) -> Trace {
        let mut states = Vec::new();
        let mut inputs = Vec::new();
        for j in 0..=steps {
            let mut st = Assignment::new();
            for &v in &self.sys.state_vars {
                if let Some(val) = m.get(self.state_copies[j][&v]) {
                    st.insert(v, val.clone());
                }
            }
            states.push(st);
            if j < steps {
                let mut iu = Assignment::new();
                for &v in &self.sys.inputs {
                    if let Some(val) = m.get(self.input_copies[j][&v]) {
                        iu.insert(v, val.clone());
                    }
                }
                inputs.push(iu);
            }
        }
        Trace { states, inputs }
    }
}

/// Replays a trace by pure evaluation: init at step 0, the transition at
/// every adjacent pair, and the property violated at the final step.
pub fn replay(sys: &TransitionSystem, prop: TermId, trace: &Trace) -> bool {
    if trace.states.is_empty() {
        return false;
    }
    if model::evaluate(&sys.ctx, sys.init, &trace.states[0]) != TruthValue::True {
        return false;
    }
    for j in 0..trace.states.len() - 1 {
        let mut step = trace.states[j].clone();
        for (&s, &p) in &sys.primed {
            if let Some(v) = trace.states[j + 1].get(s) {
                step.insert(p, v.clone());
            }
        }
        if let Some(iu) = trace.inputs.get(j) {
            for (v, val) in iu.iter() {
                step.insert(*v, val.clone());
            }
        }
        if model::evaluate(&sys.ctx, sys.trans, &step) != TruthValue::True {
            return false;
        }
    }
    let last = trace.states.last().unwrap();
    model::evaluate(&sys.ctx, prop, last) == TruthValue::False
}

fn bmc_with(sys: &TransitionSystem, prop: TermId, k: usize) -> Result<Option<Trace>> {
    for j in 0..=k {
        let mut u = Unroller::new(sys);
        let mut s = Solver::new(u.qctx.clone());
        s.assert_formula(u.init_at(0)?);
        for i in 0..j {
            s.assert_formula(u.trans_at(i)?);
        }
        let pj = u.term_at(prop, j)?;
        s.assert_formula(u.qctx.mk_not(pj));
        if let CheckResult::Sat(m) = s.check()? {
            let trace = u.extract_trace(&m, j);
            assert!(replay(sys, prop, &trace), "trace does not replay");
            return Ok(Some(trace));
        }
    }
    Ok(None)
}

/// Shortest counterexample of length at most `k` transitions, if any.
pub fn bmc(sys: &TransitionSystem, k: usize) -> Result<Option<Trace>> {
    bmc_with(sys, sys.prop, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindOutcome {
    Valid,
    Unknown,
}

/// Base case (no counterexample up to `k`) plus the `k`-step induction:
/// `P` along `k` steps and the transitions imply `P` at step `k+1`.
pub fn kinduction(sys: &TransitionSystem, prop: TermId, k: usize) -> Result<KindOutcome> {
    assert!(k >= 1, "k-induction needs k >= 1");
    if bmc_with(sys, prop, k)?.is_some() {
        return Ok(KindOutcome::Unknown);
    }
    if kinduction_step(sys, prop, k)? {
        Ok(KindOutcome::Valid)
    } else {
        Ok(KindOutcome::Unknown)
    }
}

fn kinduction_step(sys: &TransitionSystem, prop: TermId, k: usize) -> Result<bool> {
    let mut u = Unroller::new(sys);
    let mut s = Solver::new(u.qctx.clone());
    for i in 0..k {
        s.assert_formula(u.term_at(prop, i)?);
        s.assert_formula(u.trans_at(i)?);
    }
    let pk = u.term_at(prop, k)?;
    s.assert_formula(u.qctx.mk_not(pk));
    Ok(!s.check()?.is_sat())
}

fn entails(ctx: &Ctx, a: TermId, b: TermId) -> Result<bool> {
    let mut s = Solver::new(ctx.clone());
    s.assert_formula(a);
    s.assert_formula(ctx.mk_not(b));
    Ok(!s.check()?.is_sat())
}

/// Checks the three certificate conditions of a claimed invariant:
/// initiation, consecution, and implication of the property.
pub fn verify_invariant(sys: &TransitionSystem, prop: TermId, inv: TermId) -> Result<bool> {
    if !entails(&sys.ctx, sys.init, inv)? {
        return Ok(false);
    }
    if !entails(&sys.ctx, inv, prop)? {
        return Ok(false);
    }
    // inv(x0) /\ T(x0, x1) => inv(x1)
    let mut u = Unroller::new(sys);
    let mut s = Solver::new(u.qctx.clone());
    s.assert_formula(u.term_at(inv, 0)?);
    s.assert_formula(u.trans_at(0)?);
    let inv1 = u.term_at(inv, 1)?;
    s.assert_formula(u.qctx.mk_not(inv1));
    Ok(!s.check()?.is_sat())
}

const ITP_INNER_LIMIT: u64 = 10_000;

/// Interpolation-based reachability: widen a reachability over-approximation
/// with frontier interpolants until it stabilizes (valid), a counterexample
/// is confirmed from the initial states by BMC (invalid), or the unroll
/// bound is exhausted.
pub fn itp_reach(sys: &TransitionSystem, prop: TermId, maxk: usize) -> Result<MCResult> {
    if maxk == 0 {
        return Ok(MCResult::Unknown);
    }
    if let Some(tr) = bmc_with(sys, prop, 0)? {
        return Ok(MCResult::Invalid(tr));
    }
    for k in 1..=maxk {
        let mut reach = sys.init;
        let mut widened = false;
        let mut inner: u64 = 0;
        loop {
            inner += 1;
            if inner > ITP_INNER_LIMIT {
                return Err(Error::IterationLimit("interpolation widening loop".into()));
            }
            let mut u = Unroller::new(sys);
            u.ensure_steps(k);
            let a = {
                let r0 = u.term_at(reach, 0)?;
                let t0 = u.trans_at(0)?;
                u.qctx.mk_and(vec![r0, t0])
            };
            // B: some suffix from the frontier reaches the negated property.
            let mut disjuncts = Vec::new();
            for i in 1..=k {
                let mut conj = Vec::new();
                for j in 1..i {
                    conj.push(u.trans_at(j)?);
                }
                let pi = u.term_at(prop, i)?;
                conj.push(u.qctx.mk_not(pi));
                disjuncts.push(u.qctx.mk_and(conj));
            }
            let b = u.qctx.mk_or(disjuncts);
            let frontier_map: HashMap<Var, Var> = u.state_copies[1]
                .iter()
                .map(|(orig, copy)| (*copy, *orig))
                .collect();
            match itp::interpolate(&u.qctx, a, b)?.status {
                InterpolationStatus::Sat(m) => {
                    if !widened {
                        // The over-approximation is exact: a confirmed
                        // counterexample within k transitions exists.
                        let tr = bmc_with(sys, prop, k)?
                            .expect("exact reach implies a BMC counterexample");
                        return Ok(MCResult::Invalid(tr));
                    }
                    // Spurious under the widened set. Generalize the bad
                    // frontier state; if the generalization intersects the
                    // initial states the counterexample is genuine.
                    let keep: HashSet<Var> = u.state_copies[1].values().copied().collect();
                    let g = gen::generalize(&u.qctx, b, &m, &keep)?;
                    let g_sys = model::map_term(&u.qctx, &sys.ctx, g, &frontier_map)?;
                    let mut s = Solver::new(sys.ctx.clone());
                    s.assert_formula(sys.init);
                    s.assert_formula(g_sys);
                    if s.check()?.is_sat() {
                        let tr = bmc_with(sys, prop, k)?
                            .expect("initial bad region implies a BMC counterexample");
                        return Ok(MCResult::Invalid(tr));
                    }
                    break; // deepen the unrolling
                }
                InterpolationStatus::Unsat(clauses) => {
                    let ts: Vec<TermId> = clauses
                        .iter()
                        .map(|c| u.qctx.clause_term(c))
                        .collect();
                    let i_frontier = u.qctx.mk_and(ts);
                    let i_sys = model::map_term(&u.qctx, &sys.ctx, i_frontier, &frontier_map)?;
                    if entails(&sys.ctx, i_sys, reach)? {
                        assert!(
                            verify_invariant(sys, prop, reach)?,
                            "stabilized reachability set failed the certificate checks"
                        );
                        return Ok(MCResult::Valid(Some(reach)));
                    }
                    reach = sys.ctx.mk_or(vec![reach, i_sys]);
                    widened = true;
                }
            }
        }
    }
    Ok(MCResult::Unknown)
}

/// Engine dispatcher. Invalid traces are replay-verified before returning.
pub fn check(sys: &TransitionSystem, engine: Engine, max_k: usize) -> Result<MCResult> {
    match engine {
        Engine::Bmc => Ok(match bmc(sys, max_k)? {
            Some(tr) => MCResult::Invalid(tr),
            None => MCResult::Unknown,
        }),
        Engine::KInduction => {
            if let Some(tr) = bmc(sys, max_k)? {
                return Ok(MCResult::Invalid(tr));
            }
            for k in 1..=max_k.max(1) {
                if kinduction_step(sys, sys.prop, k)? {
                    let cert = if k == 1 { Some(sys.prop) } else { None };
                    if let Some(c) = cert {
                        assert!(verify_invariant(sys, sys.prop, c)?);
                    }
                    return Ok(MCResult::Valid(cert));
                }
            }
            Ok(MCResult::Unknown)
        }
        Engine::Interpolation => itp_reach(sys, sys.prop, max_k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_system;

    fn counter() -> TransitionSystem {
        parse_system(
            "(define-system :state ((x Real)) :init (= x 0) \
             :trans (= x' (+ x 1)) :prop (< (* x x) 4))",
        )
        .unwrap()
    }

    #[test]
    fn bmc_counter_example() {
        let sys = counter();
        let tr = bmc(&sys, 3).unwrap().expect("counterexample at depth 2");
        assert_eq!(tr.states.len(), 3);
        let last = tr.states.last().unwrap();
        let v = last.get(sys.state_vars[0]).unwrap();
        assert!(v.semantically_eq(&Value::Real(crate::realalg::AlgebraicNumber::from_int(2))));
    }

    #[test]
    fn bmc_trivial_cases() {
        // property true: no trace at any depth
        let sys = parse_system(
            "(define-system :state ((x Real)) :init (= x 0) \
             :trans (= x' (+ x 1)) :prop true)",
        )
        .unwrap();
        assert!(bmc(&sys, 4).unwrap().is_none());
        // init violates the property: length-0 trace
        let sys = parse_system(
            "(define-system :state ((x Real)) :init (= x 5) \
             :trans (= x' x) :prop (< x 3))",
        )
        .unwrap();
        let tr = bmc(&sys, 2).unwrap().expect("immediate violation");
        assert_eq!(tr.states.len(), 1);
    }

    #[test]
    fn kinduction_simple() {
        // x >= 0 is 1-inductive for the counter
        let sys = parse_system(
            "(define-system :state ((x Real)) :init (= x 0) \
             :trans (= x' (+ x 1)) :prop (>= x 0))",
        )
        .unwrap();
        assert_eq!(
            kinduction(&sys, sys.prop, 1).unwrap(),
            KindOutcome::Valid
        );
        // x^2 < 4 is not inductive (and in fact fails)
        let sys = counter();
        assert_eq!(
            kinduction(&sys, sys.prop, 1).unwrap(),
            KindOutcome::Unknown
        );
        // property true is valid at k = 1
        let sys = parse_system(
            "(define-system :state ((x Real)) :init (= x 0) :trans (= x' x) :prop true)",
        )
        .unwrap();
        assert_eq!(
            kinduction(&sys, sys.prop, 1).unwrap(),
            KindOutcome::Valid
        );
    }

    #[test]
    fn itp_counter_invalid() {
        let sys = counter();
        match itp_reach(&sys, sys.prop, 5).unwrap() {
            MCResult::Invalid(tr) => {
                assert!(replay(&sys, sys.prop, &tr));
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn itp_frame_identity_valid() {
        // identity transition preserves the initial region
        let sys = parse_system(
            "(define-system :state ((x Real)) :init (and (>= x 0) (<= x 1)) \
             :trans (= x' x) :prop (>= x 0))",
        )
        .unwrap();
        match itp_reach(&sys, sys.prop, 4).unwrap() {
            MCResult::Valid(Some(inv)) => {
                assert!(verify_invariant(&sys, sys.prop, inv).unwrap());
            }
            other => panic!("expected valid, got {other:?}"),
        }
    }

    #[test]
    fn check_dispatch() {
        let sys = counter();
        assert_eq!(check(&sys, Engine::Bmc, 4).unwrap().verdict(), "invalid");
        assert_eq!(
            check(&sys, Engine::Interpolation, 0).unwrap().verdict(),
            "unknown"
        );
    }
}
