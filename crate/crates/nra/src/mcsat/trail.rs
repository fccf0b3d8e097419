//! The solver trail: a chronological record of term and variable
//! assignments with their reasons.

use crate::model::{self, Assignment, Clause, Ctx, Lit, TermId, TermKind, TruthValue, Value};
use crate::poly::Var;
use std::collections::HashMap;

/// Why an element is on the trail. Propagation reasons are clauses in which
/// every other literal evaluates to false at insertion time.
#[derive(Debug, Clone)]
pub enum TrailKind {
    Decision,
    Propagation(Clause),
    ModelDecision,
}

#[derive(Debug, Clone)]
pub enum TrailItem {
    /// Boolean assignment of an atomic term (atoms and named compounds).
    Term { term: TermId, value: bool },
    /// First-order variable assignment.
    Var { var: Var, value: Value },
}

#[derive(Debug, Clone)]
pub struct TrailElement {
    pub item: TrailItem,
    pub kind: TrailKind,
}

/// Chronological assignment record shared by the core solver and the
/// reasoning plugins.
pub struct Trail {
    ctx: Ctx,
    elements: Vec<TrailElement>,
    term_value: HashMap<TermId, (bool, usize)>,
    var_pos: HashMap<Var, usize>,
    asg: Assignment,
}

impl Trail {
    pub fn new(ctx: Ctx) -> Self {
        Trail {
            ctx,
            elements: vec![],
            term_value: HashMap::new(),
            var_pos: HashMap::new(),
            asg: Assignment::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &TrailElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[TrailElement] {
        &self.elements
    }

    pub fn clear(&mut self) {
        self.elements.clear();
        self.term_value.clear();
        self.var_pos.clear();
        self.asg = Assignment::new();
    }

    pub fn term_value(&self, t: TermId) -> Option<bool> {
        self.term_value.get(&t).map(|(b, _)| *b)
    }

    pub fn term_value_pos(&self, t: TermId) -> Option<(bool, usize)> {
        self.term_value.get(&t).copied()
    }

    pub fn var_pos(&self, v: Var) -> Option<usize> {
        self.var_pos.get(&v).copied()
    }

    pub fn var_value(&self, v: Var) -> Option<&Value> {
        self.asg.get(v)
    }

    pub fn is_var_assigned(&self, v: Var) -> bool {
        self.var_pos.contains_key(&v)
    }

    /// The partial first-order assignment recorded on the trail. Boolean
    /// variable terms contribute their variable's value.
    pub fn assignment(&self) -> &Assignment {
        &self.asg
    }

    pub fn push_term(&mut self, term: TermId, value: bool, kind: TrailKind) {
        debug_assert!(self.term_value(term).is_none(), "term assigned twice");
        let pos = self.elements.len();
        self.term_value.insert(term, (value, pos));
        if let TermKind::BoolVar(v) = self.ctx.term(term) {
            self.var_pos.insert(v, pos);
            self.asg.insert(v, Value::Bool(value));
        }
        self.elements.push(TrailElement {
            item: TrailItem::Term { term, value },
            kind,
        });
    }

    pub fn push_var(&mut self, var: Var, value: Value, kind: TrailKind) {
        debug_assert!(!self.is_var_assigned(var), "variable assigned twice");
        let pos = self.elements.len();
        self.var_pos.insert(var, pos);
        self.asg.insert(var, value.clone());
        self.elements.push(TrailElement {
            item: TrailItem::Var { var, value },
            kind,
        });
    }

    /// Pops every element at positions `>= n`.
    pub fn truncate(&mut self, n: usize) {
        while self.elements.len() > n {
            let e = self.elements.pop().unwrap();
            match e.item {
                TrailItem::Term { term, .. } => {
                    self.term_value.remove(&term);
                    if let TermKind::BoolVar(v) = self.ctx.term(term) {
                        self.var_pos.remove(&v);
                        self.asg.remove(v);
                    }
                }
                TrailItem::Var { var, .. } => {
                    self.var_pos.remove(&var);
                    self.asg.remove(var);
                }
            }
        }
    }

    /// Value of a literal by the assignment route only.
    pub fn lit_assigned_value(&self, l: Lit) -> Option<bool> {
        self.term_value(l.atom).map(|b| b == l.pos)
    }

    /// Value a term computes from its closest relevant sub-terms: theory
    /// evaluation for arithmetic atoms, Boolean combination of the
    /// children's trail values for named compounds.
    pub fn computed_value(&self, t: TermId) -> Option<bool> {
        match self.ctx.term(t) {
            TermKind::PolyAtom { .. } | TermKind::ExtendedAtom { .. } => {
                model::evaluate(&self.ctx, t, &self.asg).as_bool()
            }
            TermKind::And(ts) => {
                let mut all_true = true;
                for s in ts {
                    let l = self.ctx.lit_of(s);
                    match self.lit_assigned_value(l) {
                        Some(false) => return Some(false),
                        Some(true) => {}
                        None => all_true = false,
                    }
                }
                if all_true {
                    Some(true)
                } else {
                    None
                }
            }
            TermKind::Or(ts) => {
                let mut all_false = true;
                for s in ts {
                    let l = self.ctx.lit_of(s);
                    match self.lit_assigned_value(l) {
                        Some(true) => return Some(true),
                        Some(false) => {}
                        None => all_false = false,
                    }
                }
                if all_false {
                    Some(false)
                } else {
                    None
                }
            }
            TermKind::True => Some(true),
            TermKind::False => Some(false),
            // A Boolean variable has no sub-terms; only the assignment
            // route applies.
            TermKind::BoolVar(_) => None,
            TermKind::Not(_) => None,
        }
    }

    /// The evaluation predicate: `t` (as a literal) can evaluate to `v` if
    /// it is assigned `v`, or its closest relevant sub-terms compute `v`.
    /// Both routes are checked, enabling two-way evaluation conflicts.
    pub fn can_evaluate(&self, l: Lit, v: bool) -> bool {
        let want_atom = if l.pos { v } else { !v };
        if let Some(b) = self.term_value(l.atom) {
            if b == want_atom {
                return true;
            }
        }
        self.computed_value(l.atom) == Some(want_atom)
    }

    /// Theory evaluation of a literal under the trail's variable
    /// assignment.
    pub fn evaluate_lit(&self, l: Lit) -> TruthValue {
        model::evaluate_lit(&self.ctx, l, &self.asg)
    }
}
