//! The rules of the calculus as validating functions.
//!
//! [`apply_rule`] takes a conclusion sequent, a rule and a [`Selection`] and
//! either returns the premisses (left to right as the rule is drawn) or a
//! [`Diagnostic`] explaining why the application is illegal. Products of a
//! rule replace the principal formula at its index; a formula that moves to
//! the other side is placed next to `==>` (end of the antecedent, front of
//! the succedent), mirroring how the rules are written.

mod diagnostic;
mod rule;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

pub use diagnostic::{classify, DetailCode, Diagnostic, MistakeCategory, Payload};
pub use rule::{FormulaRef, RuleId, Selection, SelectionJson};

use crate::formula::{
    fresh_constant_avoiding, is_ground_over, print_formula, print_term, replace_at, substitute, Formula, NodeRef,
    Signature, Term,
};
use crate::sequent::{Side, Sequent};

/// Engine switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EngineOptions {
    /// When set, `SubstL`/`SubstR` consume the equality they use. By default
    /// it stays in the premiss so it can be used again.
    #[serde(default)]
    pub strict_substitution: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomKind {
    Id,
    Refl,
}

/// Candidate names for generated Skolem constants, tried in order.
const SKOLEM_HINTS: [&str; 5] = ["a", "b", "c", "d", "e"];

/// [`apply_rule_with`] under default options.
pub fn apply_rule(s: &Sequent, rule: RuleId, sel: &Selection) -> Result<Vec<Sequent>, Diagnostic> {
    apply_rule_with(s, rule, sel, EngineOptions::default())
}

pub fn apply_rule_with(
    s: &Sequent,
    rule: RuleId,
    sel: &Selection,
    opts: EngineOptions,
) -> Result<Vec<Sequent>, Diagnostic> {
    Application { s, rule, sel, opts }.run()
}

struct Application<'a> {
    s: &'a Sequent,
    rule: RuleId,
    sel: &'a Selection,
    opts: EngineOptions,
}

type Outcome = Result<Vec<Sequent>, Diagnostic>;

#[derive(Clone, Copy)]
enum Field {
    Forbidden,
    Optional,
    Required,
}

impl Application<'_> {
    fn fail<T>(&self, code: DetailCode, payload: Payload) -> Result<T, Diagnostic> {
        Err(Diagnostic::new(self.rule, self.sel.clone(), code, payload))
    }

    fn run(&self) -> Outcome {
        self.check_fields()?;
        if self.rule == RuleId::EqIntro {
            return self.eq_intro();
        }
        let principal = self.principal()?;
        if let Some(expected) = self.rule.side() {
            if self.sel.side != expected {
                return self.fail(DetailCode::WrongSide, Payload::symbol(self.sel.side.to_string()));
            }
        }
        if !self.sel.path.is_empty() {
            return self.not_top_level(principal);
        }
        use RuleId::*;
        match self.rule {
            AndL | AndR | OrL | OrR | NotL | NotR | ImpL | ImpR => self.propositional(principal),
            ContrL | ContrR => Ok(vec![self.replaced(vec![principal.clone(), principal.clone()])]),
            AxiomId => self.axiom_id(principal).map(|_| Vec::new()),
            AxiomRefl => self.axiom_refl(principal).map(|_| Vec::new()),
            ExL | AllR => self.skolem(principal),
            AllL | ExR => self.instantiate(principal),
            SubstL | SubstR => self.substitution(principal),
            EqIntro => unreachable!("handled above"),
        }
    }

    fn check_fields(&self) -> Result<(), Diagnostic> {
        use Field::*;
        use RuleId::*;
        let (path, term, subst, partner) = match self.rule {
            AxiomId => (Optional, Forbidden, Forbidden, Required),
            ExL | AllR => (Optional, Optional, Forbidden, Forbidden),
            AllL | ExR => (Optional, Required, Forbidden, Forbidden),
            EqIntro => (Forbidden, Required, Forbidden, Forbidden),
            SubstL | SubstR => (Forbidden, Forbidden, Required, Forbidden),
            _ => (Optional, Forbidden, Forbidden, Forbidden),
        };
        let sel = self.sel;
        let checks = [
            ("path", path, !sel.path.is_empty()),
            ("term", term, sel.term.is_some()),
            ("eq", subst, sel.eq.is_some()),
            ("occPath", subst, sel.occ_path.is_some()),
            ("partner", partner, sel.partner.is_some()),
        ];
        for (name, rule, present) in checks {
            match (rule, present) {
                (Required, false) => return self.fail(DetailCode::MissingField, Payload::symbol(name)),
                (Forbidden, true) => return self.fail(DetailCode::UnexpectedField, Payload::symbol(name)),
                _ => {}
            }
        }
        Ok(())
    }

    fn principal(&self) -> Result<&Formula, Diagnostic> {
        let Some(f) = self.s.get(self.sel.side, self.sel.index) else {
            return self.fail(DetailCode::IndexOutOfRange, Payload::symbol(format!("{}/{}", self.sel.side, self.sel.index)));
        };
        if f.node_at(&self.sel.path).is_none() {
            return self.fail(DetailCode::InvalidPath, Payload::symbol(format!("{:?}", self.sel.path)));
        }
        Ok(f)
    }

    fn not_top_level(&self, principal: &Formula) -> Outcome {
        let (_, spans) = print_formula(principal);
        let clicked = match principal.node_at(&self.sel.path) {
            Some(NodeRef::Formula(g)) => g.operator().to_string(),
            Some(NodeRef::Term(t)) => print_term(t),
            None => String::new(),
        };
        self.fail(
            DetailCode::NotTopLevel,
            Payload::symbol(principal.operator()).with_term(clicked).with_span(spans.get(&self.sel.path).copied()),
        )
    }

    fn wrong_connective<T>(&self, principal: &Formula) -> Result<T, Diagnostic> {
        self.fail(DetailCode::WrongConnective, Payload::symbol(principal.operator()))
    }

    /// The conclusion with the principal formula replaced by `with`.
    fn replaced(&self, with: Vec<Formula>) -> Sequent {
        let mut out = self.s.clone();
        let i = self.sel.index;
        out.side_mut(self.sel.side).splice(i..=i, with);
        out
    }

    fn propositional(&self, principal: &Formula) -> Outcome {
        use RuleId::*;
        let premisses = match (self.rule, principal) {
            (AndL, Formula::And(l, r)) => vec![self.replaced(vec![(**l).clone(), (**r).clone()])],
            (AndR, Formula::And(l, r)) => vec![self.replaced(vec![(**l).clone()]), self.replaced(vec![(**r).clone()])],
            (OrL, Formula::Or(l, r)) => vec![self.replaced(vec![(**l).clone()]), self.replaced(vec![(**r).clone()])],
            (OrR, Formula::Or(l, r)) => vec![self.replaced(vec![(**l).clone(), (**r).clone()])],
            (NotL, Formula::Not(g)) => {
                let mut p = self.replaced(vec![]);
                p.succedent.insert(0, (**g).clone());
                vec![p]
            }
            (NotR, Formula::Not(g)) => {
                let mut p = self.replaced(vec![]);
                p.antecedent.push((**g).clone());
                vec![p]
            }
            (ImpL, Formula::Imp(l, r)) => {
                let first = self.replaced(vec![(**r).clone()]);
                let mut second = self.replaced(vec![]);
                second.succedent.insert(0, (**l).clone());
                vec![first, second]
            }
            (ImpR, Formula::Imp(l, r)) => {
                let mut p = self.replaced(vec![(**r).clone()]);
                p.antecedent.push((**l).clone());
                vec![p]
            }
            _ => return self.wrong_connective(principal),
        };
        Ok(premisses)
    }

    fn axiom_id(&self, principal: &Formula) -> Result<AxiomKind, Diagnostic> {
        let partner_index = self.sel.partner.expect("checked by check_fields");
        let other = self.sel.side.other();
        let Some(partner) = self.s.get(other, partner_index) else {
            return self.fail(DetailCode::IndexOutOfRange, Payload::symbol(format!("{other}/{partner_index}")));
        };
        if partner == principal {
            Ok(AxiomKind::Id)
        } else {
            self.fail(
                DetailCode::NoMatchingPartner,
                Payload::symbol(principal.to_string()).with_term(partner.to_string()),
            )
        }
    }

    fn axiom_refl(&self, principal: &Formula) -> Result<AxiomKind, Diagnostic> {
        match principal {
            Formula::Eq(l, r) if l == r => Ok(AxiomKind::Refl),
            _ => self.fail(DetailCode::NotReflexive, Payload::symbol(principal.to_string())),
        }
    }

    fn signature(&self) -> Signature {
        // Formulas from the parser have consistent arities; a conflicting
        // hand-built sequent simply contributes its first arity.
        let mut sig = Signature::new();
        for f in self.s.formulas() {
            let _ = sig.add_formula(f);
        }
        sig
    }

    fn quantifier<'f>(&self, principal: &'f Formula) -> Result<(&'f str, &'f Formula), Diagnostic> {
        use RuleId::*;
        match (self.rule, principal) {
            (ExL | ExR, Formula::Exists(v, body)) | (AllL | AllR, Formula::Forall(v, body)) => Ok((v, body)),
            _ => self.wrong_connective(principal),
        }
    }

    fn instance(&self, var: &str, body: &Formula, t: &Term) -> Result<Formula, Diagnostic> {
        let new = substitute(body, var, t)
            .or_else(|_| self.fail(DetailCode::TermNotGround, Payload::default().with_term(print_term(t))))?;
        if let Some(name) = new.captured_constant() {
            return self.fail(DetailCode::NameCapture, Payload::symbol(name).with_term(print_term(t)));
        }
        Ok(new)
    }

    /// `ExL` / `AllR`: instantiate with a constant that does not occur in the
    /// conclusion.
    fn skolem(&self, principal: &Formula) -> Outcome {
        let (var, body) = self.quantifier(principal)?;
        let sig = self.signature();
        let constant = match &self.sel.term {
            Some(t) => {
                let Some(name) = t.as_constant() else {
                    return self.fail(DetailCode::SkolemNotConstant, Payload::default().with_term(print_term(t)));
                };
                if sig.mentions(name) {
                    return self.fail(DetailCode::SkolemNotFresh, Payload::symbol(name));
                }
                t.clone()
            }
            None => Term::constant(generate_skolem(self.s, &sig)),
        };
        Ok(vec![self.replaced(vec![self.instance(var, body, &constant)?])])
    }

    fn check_ground(&self, t: &Term, sig: &Signature) -> Result<(), Diagnostic> {
        if !t.is_ground() {
            return self.fail(DetailCode::TermNotGround, Payload::default().with_term(print_term(t)));
        }
        if is_ground_over(t, sig) {
            return Ok(());
        }
        let offending = first_foreign_symbol(t, sig).unwrap_or_default();
        // A name that is no symbol of the conclusion but a bound variable
        // means the student instantiated with the variable itself.
        let code = if t.as_constant().is_some() && self.s.bound_names().contains(offending.as_str()) {
            DetailCode::TermNotGround
        } else {
            DetailCode::SymbolOutsideSignature
        };
        self.fail(code, Payload::symbol(offending).with_term(print_term(t)))
    }

    /// `AllL` / `ExR`: instantiate with a ground term over the conclusion's symbols.
    fn instantiate(&self, principal: &Formula) -> Outcome {
        let (var, body) = self.quantifier(principal)?;
        let t = self.sel.term.as_ref().expect("checked by check_fields");
        self.check_ground(t, &self.signature())?;
        Ok(vec![self.replaced(vec![self.instance(var, body, t)?])])
    }

    fn eq_intro(&self) -> Outcome {
        if self.sel.side != Side::L {
            return self.fail(DetailCode::WrongSide, Payload::symbol(self.sel.side.to_string()));
        }
        if self.sel.index > self.s.antecedent.len() {
            return self.fail(DetailCode::IndexOutOfRange, Payload::symbol(format!("L/{}", self.sel.index)));
        }
        let t = self.sel.term.as_ref().expect("checked by check_fields");
        self.check_ground(t, &self.signature())?;
        let mut p = self.s.clone();
        p.antecedent.insert(self.sel.index, Formula::Eq(t.clone(), t.clone()));
        Ok(vec![p])
    }

    fn substitution(&self, principal: &Formula) -> Outcome {
        let eq_ref = self.sel.eq.expect("checked by check_fields");
        let occ = self.sel.occ_path.as_ref().expect("checked by check_fields");
        if eq_ref.side != Side::L {
            return self.fail(DetailCode::WrongSide, Payload::symbol("eq"));
        }
        let Some(equality) = self.s.antecedent.get(eq_ref.index) else {
            return self.fail(DetailCode::IndexOutOfRange, Payload::symbol(format!("L/{}", eq_ref.index)));
        };
        if self.sel.side == Side::L && eq_ref.index == self.sel.index {
            return self.fail(DetailCode::SameFormula, Payload::symbol(equality.to_string()));
        }
        let Formula::Eq(lhs, rhs) = equality else {
            return self.fail(DetailCode::NotAnEquality, Payload::symbol(equality.to_string()));
        };
        let (_, spans) = print_formula(principal);
        let clicked = match principal.node_at(occ) {
            Some(NodeRef::Term(t)) => t,
            _ => return self.fail(DetailCode::InvalidPath, Payload::symbol(format!("{occ:?}"))),
        };
        if clicked != lhs {
            return self.fail(
                DetailCode::WrongOccurrence,
                Payload::symbol(print_term(lhs)).with_term(print_term(clicked)).with_span(spans.get(occ).copied()),
            );
        }
        let rewritten = replace_at(principal, occ, rhs).expect("path addresses a term");
        if let Some(name) = rewritten.captured_constant() {
            return self.fail(DetailCode::NameCapture, Payload::symbol(name).with_term(print_term(rhs)));
        }
        let mut p = self.replaced(vec![rewritten]);
        if self.opts.strict_substitution {
            p.antecedent.remove(eq_ref.index);
        }
        Ok(vec![p])
    }
}

fn first_foreign_symbol(t: &Term, sig: &Signature) -> Option<String> {
    match t {
        Term::Var(v) => Some(v.clone()),
        Term::Func(name, args) => {
            if sig.funcs.get(name) != Some(&args.len()) {
                Some(name.clone())
            } else {
                args.iter().find_map(|a| first_foreign_symbol(a, sig))
            }
        }
    }
}

/// Picks the Skolem constant the engine uses when none is proposed: the
/// first of `a`..`e` that is fresh, else a suffixed name. Bound variable
/// names of the sequent are avoided too so the result can always be printed.
pub fn generate_skolem(s: &Sequent, sig: &Signature) -> String {
    let reserved = s.bound_names();
    SKOLEM_HINTS
        .iter()
        .find(|h| !sig.mentions(h) && !reserved.contains(*h))
        .map(|h| h.to_string())
        .unwrap_or_else(|| fresh_constant_avoiding(sig, "c", &reserved))
}

/// Decides whether the selection closes the sequent by an axiom: the
/// identity axiom when a `partner` is given, reflexivity otherwise.
pub fn detect_axiom(s: &Sequent, sel: &Selection) -> Result<AxiomKind, Diagnostic> {
    let rule = if sel.partner.is_some() { RuleId::AxiomId } else { RuleId::AxiomRefl };
    apply_rule(s, rule, sel)?;
    Ok(if rule == RuleId::AxiomId { AxiomKind::Id } else { AxiomKind::Refl })
}

/// Rules that can be applied with the given formula as principal formula
/// under some selection. `EqIntro` has no principal formula and is reported
/// by [`sequent_rules`] instead.
pub fn applicable_rules(s: &Sequent, side: Side, index: usize) -> BTreeSet<RuleId> {
    let mut out = BTreeSet::new();
    let Some(f) = s.get(side, index) else {
        return out;
    };
    let base = Selection::at(side, index);
    let ok = |rule: RuleId, sel: &Selection| apply_rule(s, rule, sel).is_ok();
    let sig = Signature::of_formulas(s.formulas()).unwrap_or_default();
    for rule in RuleId::ALL {
        if rule.side().is_some_and(|r| r != side) || rule == RuleId::EqIntro {
            continue;
        }
        let applicable = match rule {
            RuleId::AxiomId => (0..s.side(side.other()).len()).any(|j| ok(rule, &base.clone().with_partner(j))),
            RuleId::AllL | RuleId::ExR => sig.constants().any(|c| ok(rule, &base.clone().with_term(Term::constant(c)))),
            RuleId::SubstL | RuleId::SubstR => {
                let mut occurrences = Vec::new();
                f.walk(|path, n| {
                    if let NodeRef::Term(t) = n {
                        occurrences.push((path.to_vec(), t.clone()));
                    }
                });
                let lhs_terms: HashSet<(usize, &Term)> = s
                    .antecedent
                    .iter()
                    .enumerate()
                    .filter_map(|(j, g)| match g {
                        Formula::Eq(l, _) => Some((j, l)),
                        _ => None,
                    })
                    .collect();
                lhs_terms.iter().any(|(j, l)| {
                    occurrences
                        .iter()
                        .filter(|(_, t)| t == *l)
                        .any(|(p, _)| ok(rule, &base.clone().with_equality(*j, p.clone())))
                })
            }
            _ => ok(rule, &base),
        };
        if applicable {
            out.insert(rule);
        }
    }
    out
}

/// Rules applicable to the sequent as a whole (currently `EqIntro`, which
/// needs some ground term to exist).
pub fn sequent_rules(s: &Sequent) -> BTreeSet<RuleId> {
    let sig = Signature::of_formulas(s.formulas()).unwrap_or_default();
    let mut out = BTreeSet::new();
    if sig.has_ground_terms() {
        out.insert(RuleId::EqIntro);
    }
    out
}
