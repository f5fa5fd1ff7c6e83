//! Helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;
use sequent_trainer::engine::{apply_rule, DetailCode, FormulaRef, RuleId, Selection};
use sequent_trainer::formula::{parse_term, Formula, Term};
use sequent_trainer::proof::{verify, NodeDoc, NodeStatus, ProofFile};
use sequent_trainer::sequent::{parse_sequent, Sequent, Side};

// ---------------------------------------------------------------------------
// Rule cases

pub enum Expect {
    Premisses(&'static [&'static str]),
    Reject(DetailCode),
}

pub struct RuleCase {
    pub rule: RuleId,
    pub sequent: &'static str,
    pub selection: Selection,
    /// Premisses written into a proof file instead of derived; the case is
    /// then checked by replaying the file.
    pub recorded: Option<&'static [&'static str]>,
    pub expect: Expect,
}

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn ok(rule: RuleId, sequent: &'static str, selection: Selection, premisses: &'static [&'static str]) -> RuleCase {
    RuleCase { rule, sequent, selection, recorded: None, expect: Expect::Premisses(premisses) }
}

fn bad(rule: RuleId, sequent: &'static str, selection: Selection, code: DetailCode) -> RuleCase {
    RuleCase { rule, sequent, selection, recorded: None, expect: Expect::Reject(code) }
}

/// One positive and at least two negative cases per rule. Together the
/// negatives produce every detail code.
pub fn rule_cases() -> Vec<RuleCase> {
    use DetailCode::*;
    use RuleId::*;
    let l = Selection::left;
    let r = Selection::right;
    vec![
        ok(AndL, "P & Q ==> P", l(0), &["P, Q ==> P"]),
        bad(AndL, "P | Q ==> P", l(0), WrongConnective),
        bad(AndL, "P & Q ==> P & Q", r(0), WrongSide),
        bad(AndL, "P & Q ==> P", l(3), IndexOutOfRange),
        ok(AndR, "==> P & Q", r(0), &["==> P", "==> Q"]),
        bad(AndR, "==> P | Q", r(0), WrongConnective),
        bad(AndR, "==> ~(P & Q)", r(0).with_path(vec![0]), NotTopLevel),
        bad(AndR, "==> P & Q", r(0).with_path(vec![5]), InvalidPath),
        RuleCase {
            rule: AndR,
            sequent: "==> P & Q",
            selection: r(0),
            recorded: Some(&["==> P", "==> R"]),
            expect: Expect::Reject(PremissMismatch),
        },
        ok(OrL, "P | Q ==> R", l(0), &["P ==> R", "Q ==> R"]),
        bad(OrL, "P & Q ==> R", l(0), WrongConnective),
        bad(OrL, "P | Q ==> R", l(0).with_term(t("a")), UnexpectedField),
        ok(OrR, "==> P | Q", r(0), &["==> P, Q"]),
        bad(OrR, "P | Q ==>", l(0), WrongSide),
        bad(OrR, "==> P -> Q", r(0), WrongConnective),
        ok(NotL, "~P ==> Q", l(0), &["==> P, Q"]),
        bad(NotL, "P ==> Q", l(0), WrongConnective),
        bad(NotL, "~P ==> Q", l(0).with_partner(0), UnexpectedField),
        ok(NotR, "P ==> ~Q", r(0), &["P, Q ==>"]),
        bad(NotR, "P ==> Q", r(0), WrongConnective),
        bad(NotR, "~P ==> Q", l(0), WrongSide),
        ok(ImpL, "P -> Q ==> R", l(0), &["Q ==> R", "==> P, R"]),
        bad(ImpL, "==> P -> Q", r(0), WrongSide),
        bad(ImpL, "P & Q ==> R", l(0), WrongConnective),
        ok(ImpR, "P ==> Q -> R", r(0), &["P, Q ==> R"]),
        bad(ImpR, "P ==> Q & R", r(0), WrongConnective),
        bad(ImpR, "P ==> Q -> R", r(1), IndexOutOfRange),
        ok(ContrL, "P ==> Q", l(0), &["P, P ==> Q"]),
        bad(ContrL, "P ==> Q", r(0), WrongSide),
        bad(ContrL, "P ==> Q", l(1), IndexOutOfRange),
        ok(ContrR, "==> P", r(0), &["==> P, P"]),
        bad(ContrR, "P ==>", l(0), WrongSide),
        bad(ContrR, "==> ~P", r(0).with_path(vec![0]), NotTopLevel),
        ok(AxiomId, "P, Q ==> R, Q", l(1).with_partner(1), &[]),
        bad(AxiomId, "P, Q ==> R, Q", l(1).with_partner(0), NoMatchingPartner),
        bad(AxiomId, "P ==> P", l(0), MissingField),
        bad(AxiomId, "P ==> P", l(0).with_partner(5), IndexOutOfRange),
        ok(AxiomRefl, "P ==> a = a", r(0), &[]),
        bad(AxiomRefl, "==> a = b", r(0), NotReflexive),
        bad(AxiomRefl, "a = a ==>", l(0), WrongSide),
        ok(ExL, "exists x. P(x) ==> Q", l(0), &["P(a) ==> Q"]),
        bad(ExL, "exists x. P(x) ==> P(a)", l(0).with_term(t("a")), SkolemNotFresh),
        bad(ExL, "exists x. P(x) ==> Q", l(0).with_term(t("f(b)")), SkolemNotConstant),
        bad(ExL, "exists x exists y. R(x,y) ==>", l(0).with_term(t("y")), NameCapture),
        ok(ExR, "P(a) ==> exists x. P(x)", r(0).with_term(t("a")), &["P(a) ==> P(a)"]),
        bad(ExR, "P(a) ==> exists x. P(x)", r(0), MissingField),
        bad(ExR, "P(a) ==> exists x. P(x)", r(0).with_term(t("b")), SymbolOutsideSignature),
        bad(ExR, "P(a) ==> exists x. P(x)", r(0).with_term(Term::var("x")), TermNotGround),
        ok(AllL, "forall x. P(x) ==> P(a)", l(0).with_term(t("a")), &["P(a) ==> P(a)"]),
        bad(AllL, "forall x exists y. R(x,y) ==> Q(y)", l(0).with_term(t("y")), NameCapture),
        bad(AllL, "exists x. P(x) ==> P(a)", l(0).with_term(t("a")), WrongConnective),
        ok(AllR, "==> forall x. P(x)", r(0), &["==> P(a)"]),
        bad(AllR, "P(a) ==> forall x. P(x)", r(0).with_term(t("a")), SkolemNotFresh),
        bad(AllR, "forall x. P(x) ==>", l(0), WrongSide),
        ok(EqIntro, "P(a) ==> Q", l(0).with_term(t("a")), &["a = a, P(a) ==> Q"]),
        bad(EqIntro, "P(a) ==> Q", r(0).with_term(t("a")), WrongSide),
        bad(EqIntro, "P(a) ==> Q", l(0), MissingField),
        bad(EqIntro, "P(a) ==> Q", l(5).with_term(t("a")), IndexOutOfRange),
        ok(SubstL, "a = b, P(a) ==> Q", l(1).with_equality(0, vec![0]), &["a = b, P(b) ==> Q"]),
        bad(SubstL, "a = b, P(a) ==> Q", l(0).with_equality(0, vec![0]), SameFormula),
        bad(SubstL, "P(c), P(a) ==> Q", l(1).with_equality(0, vec![0]), NotAnEquality),
        bad(SubstL, "a = b, P(a) ==> Q", l(1).with_equality(0, vec![5]), InvalidPath),
        ok(SubstR, "a = b ==> P(a)", r(0).with_equality(0, vec![0]), &["a = b ==> P(b)"]),
        bad(SubstR, "a = b ==> P(c)", r(0).with_equality(0, vec![0]), WrongOccurrence),
        bad(SubstR, "a = b ==> P(a)", r(0), MissingField),
        bad(
            SubstR,
            "a = b ==> P(a), a = b",
            Selection { eq: Some(FormulaRef { side: Side::R, index: 1 }), ..r(0).with_equality(0, vec![0]) },
            WrongSide,
        ),
    ]
}

/// Runs a case; `Err` describes how it deviated.
pub fn run_case(c: &RuleCase) -> Result<(), String> {
    let s = parse_sequent(c.sequent).map_err(|e| format!("{}: {e}", c.sequent))?;
    let outcome = match c.recorded {
        None => apply_rule(&s, c.rule, &c.selection).map_err(|d| d.detail),
        Some(recorded) => {
            let file = ProofFile {
                version: 1,
                strict: false,
                root: NodeDoc {
                    sequent: s,
                    rule: Some(c.rule),
                    selection: Some(c.selection.clone()),
                    premisses: recorded
                        .iter()
                        .map(|p| NodeDoc { sequent: parse_sequent(p).unwrap(), rule: None, selection: None, premisses: vec![] })
                        .collect(),
                },
            };
            let report = verify(&file.into_tree());
            match report.nodes[0].status.clone() {
                NodeStatus::Failed { diagnostic } => Err(diagnostic.detail),
                _ => Ok(recorded.iter().map(|p| parse_sequent(p).unwrap()).collect()),
            }
        }
    };
    match (&c.expect, outcome) {
        (Expect::Premisses(want), Ok(got)) => {
            let want: Vec<Sequent> = want.iter().map(|p| parse_sequent(p).unwrap()).collect();
            if want == got {
                Ok(())
            } else {
                Err(format!("{} on `{}`: premisses {got:?}, expected {want:?}", c.rule, c.sequent))
            }
        }
        (Expect::Reject(code), Err(got)) if *code == got => Ok(()),
        (Expect::Reject(code), Err(got)) => Err(format!("{} on `{}`: {got}, expected {code}", c.rule, c.sequent)),
        (Expect::Reject(code), Ok(_)) => Err(format!("{} on `{}`: accepted, expected {code}", c.rule, c.sequent)),
        (Expect::Premisses(_), Err(got)) => Err(format!("{} on `{}`: rejected with {got}", c.rule, c.sequent)),
    }
}

// ---------------------------------------------------------------------------
// Generators

const VARS: [&str; 3] = ["x", "y", "z"];

fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(VARS.to_vec()).prop_map(Term::var),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::func("f", vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| Term::func("g", vec![s, t])),
        ]
    })
}

fn open_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::atom("P")),
        term_strategy().prop_map(|t| Formula::pred("Q", vec![t])),
        (term_strategy(), term_strategy()).prop_map(|(s, t)| Formula::pred("R", vec![s, t])),
        (term_strategy(), term_strategy()).prop_map(|(s, t)| Formula::eq(s, t)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (prop::sample::select(VARS.to_vec()), inner.clone()).prop_map(|(v, b)| Formula::forall(v, b)),
            (prop::sample::select(VARS.to_vec()), inner).prop_map(|(v, b)| Formula::exists(v, b)),
        ]
    })
}

/// Closed first-order formulas over `P/0, Q/1, R/2, f/1, g/2, a, b, c`.
pub fn closed_formula() -> impl Strategy<Value = Formula> {
    (open_formula(), any::<bool>()).prop_map(|(f, universal)| {
        let free: Vec<String> = f.free_vars().into_iter().map(String::from).collect();
        free.into_iter().rev().fold(f, |acc, v| if universal { Formula::forall(v, acc) } else { Formula::exists(v, acc) })
    })
}

pub fn closed_sequent() -> impl Strategy<Value = Sequent> {
    (prop::collection::vec(closed_formula(), 0..3), prop::collection::vec(closed_formula(), 0..3))
        .prop_map(|(a, s)| Sequent::new(a, s))
}

const ATOMS: [&str; 3] = ["P", "Q", "R"];

pub fn random_prop_formula(rng: &mut StdRng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::atom(ATOMS[rng.gen_range(0..ATOMS.len())]);
    }
    let a = random_prop_formula(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::not(a),
        1 => Formula::and(a, random_prop_formula(rng, depth - 1)),
        2 => Formula::or(a, random_prop_formula(rng, depth - 1)),
        _ => Formula::imp(a, random_prop_formula(rng, depth - 1)),
    }
}

/// At most three atoms and four formulas per side.
pub fn random_prop_sequent(rng: &mut StdRng) -> Sequent {
    let side = |rng: &mut StdRng| {
        let n = rng.gen_range(0..=4);
        (0..n).map(|_| random_prop_formula(rng, 2)).collect::<Vec<_>>()
    };
    let a = side(rng);
    let s = side(rng);
    Sequent::new(a, s)
}

// ---------------------------------------------------------------------------
// Bounded proof search

const SEARCH_RULES: [RuleId; 8] =
    [RuleId::AndL, RuleId::AndR, RuleId::OrL, RuleId::OrR, RuleId::NotL, RuleId::NotR, RuleId::ImpL, RuleId::ImpR];

/// Exhaustive search through the engine over the propositional rules and
/// the identity axiom, up to `depth` rule applications on any branch.
/// Contraction is left out: it never helps propositionally and would make
/// the space infinite.
pub struct Search {
    memo: HashMap<(Sequent, u32), bool>,
    pub applications: u64,
}

impl Default for Search {
    fn default() -> Self {
        Self::new()
    }
}

impl Search {
    pub fn new() -> Self {
        Search { memo: HashMap::new(), applications: 0 }
    }

    pub fn provable(&mut self, s: &Sequent, depth: u32) -> bool {
        if let Some(&b) = self.memo.get(&(s.clone(), depth)) {
            return b;
        }
        let found = self.search(s, depth);
        self.memo.insert((s.clone(), depth), found);
        found
    }

    fn search(&mut self, s: &Sequent, depth: u32) -> bool {
        for i in 0..s.antecedent.len() {
            for j in 0..s.succedent.len() {
                self.applications += 1;
                if apply_rule(s, RuleId::AxiomId, &Selection::left(i).with_partner(j)).is_ok() {
                    return true;
                }
            }
        }
        if depth == 0 {
            return false;
        }
        for side in [Side::L, Side::R] {
            for i in 0..s.side(side).len() {
                for rule in SEARCH_RULES {
                    self.applications += 1;
                    let Ok(premisses) = apply_rule(s, rule, &Selection::at(side, i)) else { continue };
                    if premisses.iter().all(|p| self.provable(p, depth - 1)) {
                        return true;
                    }
                }
            }
        }
        false
    }
}
