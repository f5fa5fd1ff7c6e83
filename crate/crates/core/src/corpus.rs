//! Worked examples: complete proofs of the three exam sequents and a set of
//! proof files containing typical student mistakes.
//!
//! Everything here is built by calling the engine, so the shipped files under
//! `corpus/` can always be regenerated with [`corpus_files`].

use crate::engine::{DetailCode, MistakeCategory, RuleId, Selection};
use crate::formula::{parse_term, Term};
use crate::proof::{NodeDoc, NodeId, ProofFile, ProofTree};
use crate::sequent::{parse_sequent, Sequent};

pub const GROUP1: &str = "forall x exists y. x = v(y) & forall x. F(v(x)) ==> forall x. F(x)";
pub const GROUP2: &str = "forall x forall y. E(x,y) -> x = f(y) ==> forall x forall y forall z. E(x,z) & E(y,z) -> x = y";
pub const GROUP3: &str =
    "forall x forall z. P(x,c) & Q(z,g(x,z)) ==> exists y forall x. P(x,y) & forall z exists u. Q(z,u)";

/// The group 2 sequent after the quantifiers and connectives on the right
/// have been decomposed.
pub const S1: &str = "forall x forall y. E(x,y) -> x = f(y), E(a,c), E(b,c) ==> a = b";
/// S1 after contracting the premiss and instantiating both copies.
pub const DOUBLED: &str = "E(a,c) -> a = f(c), E(b,c) -> b = f(c), E(a,c), E(b,c) ==> a = b";

fn seq(text: &str) -> Sequent {
    parse_sequent(text).expect("corpus sequents parse")
}

fn term(text: &str) -> Term {
    parse_term(text).expect("corpus terms parse")
}

struct Build(ProofTree);

impl Build {
    fn new(text: &str) -> Self {
        Build(ProofTree::new(seq(text)))
    }

    fn step(&mut self, id: NodeId, rule: RuleId, sel: Selection) -> Vec<NodeId> {
        self.0.apply_in_place(id, rule, sel).unwrap_or_else(|e| panic!("corpus step {rule} at node {id}: {e}"))
    }

    fn one(&mut self, id: NodeId, rule: RuleId, sel: Selection) -> NodeId {
        self.step(id, rule, sel)[0]
    }

    fn two(&mut self, id: NodeId, rule: RuleId, sel: Selection) -> (NodeId, NodeId) {
        let v = self.step(id, rule, sel);
        (v[0], v[1])
    }

    fn close(&mut self, id: NodeId, sel: Selection) {
        self.step(id, RuleId::AxiomId, sel);
    }
}

fn group1_steps(b: &mut Build) -> NodeId {
    let n = b.one(0, RuleId::AllR, Selection::right(0).with_term(term("a")));
    let n = b.one(n, RuleId::AllL, Selection::left(0).with_term(term("a")));
    let n = b.one(n, RuleId::ExL, Selection::left(0).with_term(term("b")));
    b.one(n, RuleId::AndL, Selection::left(0))
}

pub fn group1_proof() -> ProofTree {
    let mut b = Build::new(GROUP1);
    let n = group1_steps(&mut b);
    // a = v(b), F(v(b)) ==> F(a)
    let n = b.one(n, RuleId::AllL, Selection::left(1).with_term(term("b")));
    let n = b.one(n, RuleId::SubstR, Selection::right(0).with_equality(0, vec![0]));
    b.close(n, Selection::left(1).with_partner(0));
    b.0
}

/// Steps up to S1; returns its node.
fn group2_to_s1(b: &mut Build) -> NodeId {
    let mut n = 0;
    for c in ["a", "b", "c"] {
        n = b.one(n, RuleId::AllR, Selection::right(0).with_term(term(c)));
    }
    let n = b.one(n, RuleId::ImpR, Selection::right(0));
    b.one(n, RuleId::AndL, Selection::left(1))
}

/// Steps from S1 to the doubled-premiss sequent; returns its node.
fn group2_to_doubled(b: &mut Build, s1: NodeId) -> NodeId {
    let n = b.one(s1, RuleId::ContrL, Selection::left(0));
    let n = b.one(n, RuleId::AllL, Selection::left(0).with_term(term("a")));
    let n = b.one(n, RuleId::AllL, Selection::left(0).with_term(term("c")));
    let n = b.one(n, RuleId::AllL, Selection::left(1).with_term(term("b")));
    b.one(n, RuleId::AllL, Selection::left(1).with_term(term("c")))
}

pub fn group2_proof() -> ProofTree {
    let mut b = Build::new(GROUP2);
    let s1 = group2_to_s1(&mut b);
    let n = group2_to_doubled(&mut b, s1);
    let (n, side) = b.two(n, RuleId::ImpL, Selection::left(0));
    // E(b,c) -> b = f(c), E(a,c), E(b,c) ==> E(a,c), a = b
    b.close(side, Selection::left(1).with_partner(0));
    let (n, side) = b.two(n, RuleId::ImpL, Selection::left(1));
    // a = f(c), E(a,c), E(b,c) ==> E(b,c), a = b
    b.close(side, Selection::left(2).with_partner(0));
    // a = f(c), b = f(c), E(a,c), E(b,c) ==> a = b
    let n = b.one(n, RuleId::SubstR, Selection::right(0).with_equality(0, vec![0]));
    let n = b.one(n, RuleId::SubstR, Selection::right(0).with_equality(1, vec![1]));
    b.step(n, RuleId::AxiomRefl, Selection::right(0));
    b.0
}

pub fn group3_proof() -> ProofTree {
    let mut b = Build::new(GROUP3);
    let n = b.one(0, RuleId::ExR, Selection::right(0).with_term(term("c")));
    let n = b.one(n, RuleId::AllR, Selection::right(0).with_term(term("a")));
    let (left, right) = b.two(n, RuleId::AndR, Selection::right(0));

    // ... ==> P(a,c)
    let n = b.one(left, RuleId::AllL, Selection::left(0).with_term(term("a")));
    let n = b.one(n, RuleId::AllL, Selection::left(0).with_term(term("a")));
    let n = b.one(n, RuleId::AndL, Selection::left(0));
    b.close(n, Selection::left(0).with_partner(0));

    // ... ==> forall z exists u. Q(z,u)
    let n = b.one(right, RuleId::AllR, Selection::right(0).with_term(term("b")));
    let n = b.one(n, RuleId::ExR, Selection::right(0).with_term(term("g(c,b)")));
    let n = b.one(n, RuleId::AllL, Selection::left(0).with_term(term("c")));
    let n = b.one(n, RuleId::AllL, Selection::left(0).with_term(term("b")));
    let n = b.one(n, RuleId::AndL, Selection::left(0));
    b.close(n, Selection::left(1).with_partner(0));
    b.0
}

/// A proof file in which one step breaks the rules.
#[derive(Clone, Debug)]
pub struct MistakeCase {
    pub name: &'static str,
    pub description: &'static str,
    pub category: MistakeCategory,
    pub detail: DetailCode,
    pub file: ProofFile,
}

/// Records an arbitrary step at the first open goal of `t`, as a student
/// might write it on paper.
fn with_step(t: &ProofTree, rule: RuleId, sel: Selection, premisses: &[&str]) -> ProofFile {
    fn first_open(n: &mut NodeDoc) -> Option<&mut NodeDoc> {
        if n.rule.is_none() {
            return Some(n);
        }
        n.premisses.iter_mut().find_map(first_open)
    }
    let mut file = ProofFile::from_tree(t);
    let goal = first_open(&mut file.root).expect("tree has an open goal");
    goal.rule = Some(rule);
    goal.selection = Some(sel);
    goal.premisses = premisses
        .iter()
        .map(|p| NodeDoc { sequent: seq(p), rule: None, selection: None, premisses: Vec::new() })
        .collect();
    file
}

fn mistake(
    name: &'static str,
    description: &'static str,
    category: MistakeCategory,
    detail: DetailCode,
    file: ProofFile,
) -> MistakeCase {
    MistakeCase { name, description, category, detail, file }
}

pub fn mistakes() -> Vec<MistakeCase> {
    use DetailCode::*;
    use MistakeCategory::*;

    let g1 = ProofTree::new(seq(GROUP1));
    let mut b = Build::new(GROUP1);
    let n = b.one(0, RuleId::AllR, Selection::right(0).with_term(term("a")));
    b.one(n, RuleId::AllL, Selection::left(0).with_term(term("a")));
    let g1_before_ex_l = b.0;

    let mut b = Build::new(GROUP2);
    let n = b.one(0, RuleId::AllR, Selection::right(0).with_term(term("a")));
    let g2_one_all_r = b.0.clone();
    let n = b.one(n, RuleId::AllR, Selection::right(0).with_term(term("b")));
    let n = b.one(n, RuleId::AllR, Selection::right(0).with_term(term("c")));
    let g2_all_r = b.0.clone();
    let n = b.one(n, RuleId::ImpR, Selection::right(0));
    let g2_imp_r = b.0.clone();
    let s1 = b.one(n, RuleId::AndL, Selection::left(1));
    let g2_s1 = b.0.clone();
    let n = group2_to_doubled(&mut b, s1);
    let (n, side) = b.two(n, RuleId::ImpL, Selection::left(0));
    b.close(side, Selection::left(1).with_partner(0));
    let (_, side) = b.two(n, RuleId::ImpL, Selection::left(1));
    b.close(side, Selection::left(2).with_partner(0));
    let g2_before_subst = b.0;

    let g3 = ProofTree::new(seq(GROUP3));

    vec![
        mistake(
            "group1_misplaced_subformula",
            "AndL applied to the conjunction inside the quantifiers of the premiss",
            Misplaced,
            NotTopLevel,
            with_step(
                &g1,
                RuleId::AndL,
                Selection::left(0).with_path(vec![0, 0]),
                &["forall x exists y. x = v(y), forall x. F(v(x)) ==> forall x. F(x)"],
            ),
        ),
        mistake(
            "group1_non_ground_instantiation",
            "AllL instantiated with the bound variable x",
            WrongFOInstantiation,
            TermNotGround,
            with_step(
                &g1,
                RuleId::AllL,
                Selection::left(0).with_term(term("x")),
                &["exists y. x = v(y) & forall x. F(v(x)) ==> forall x. F(x)"],
            ),
        ),
        mistake(
            "group1_non_fresh_skolem",
            "ExL introduces the constant a, which already occurs in the conclusion",
            WrongFOInstantiation,
            SkolemNotFresh,
            with_step(
                &g1_before_ex_l,
                RuleId::ExL,
                Selection::left(0).with_term(term("a")),
                &["a = v(a) & forall x. F(v(x)) ==> F(a)"],
            ),
        ),
        mistake(
            "group2_repeated_skolem",
            "AllR reuses the constant a for the second variable",
            WrongFOInstantiation,
            SkolemNotFresh,
            with_step(
                &g2_one_all_r,
                RuleId::AllR,
                Selection::right(0).with_term(term("a")),
                &["forall x forall y. E(x,y) -> x = f(y) ==> forall z. E(a,z) & E(a,z) -> a = a"],
            ),
        ),
        mistake(
            "group2_wrong_side",
            "ImpL used on the implication in the succedent",
            Misplaced,
            WrongSide,
            with_step(
                &g2_all_r,
                RuleId::ImpL,
                Selection::right(0),
                &[
                    "forall x forall y. E(x,y) -> x = f(y) ==> a = b",
                    "forall x forall y. E(x,y) -> x = f(y) ==> E(a,c) & E(b,c)",
                ],
            ),
        ),
        mistake(
            "group2_gamma_delta",
            "The premiss written with the schema symbols Gamma and Delta copied into it",
            WrongRuleInstantiation,
            PremissMismatch,
            with_step(
                &g2_all_r,
                RuleId::ImpR,
                Selection::right(0),
                &["forall x forall y. E(x,y) -> x = f(y), Gamma, E(a,c) & E(b,c) ==> a = b, Delta"],
            ),
        ),
        mistake(
            "group2_and_or_confusion",
            "OrL applied to the conjunction E(a,c) & E(b,c)",
            Confused,
            WrongConnective,
            with_step(
                &g2_imp_r,
                RuleId::OrL,
                Selection::left(1),
                &[
                    "forall x forall y. E(x,y) -> x = f(y), E(a,c) ==> a = b",
                    "forall x forall y. E(x,y) -> x = f(y), E(b,c) ==> a = b",
                ],
            ),
        ),
        mistake(
            "group2_missing_instantiation",
            "AllL recorded without the instantiation term",
            WrongRuleInstantiation,
            MissingField,
            with_step(
                &g2_s1,
                RuleId::AllL,
                Selection::left(0),
                &["forall y. E(a,y) -> a = f(y), E(a,c), E(b,c) ==> a = b"],
            ),
        ),
        mistake(
            "group2_not_an_axiom",
            "AxiomId on S1, pairing E(a,c) with a = b",
            NotApplicable,
            NoMatchingPartner,
            with_step(&g2_s1, RuleId::AxiomId, Selection::left(1).with_partner(0), &[]),
        ),
        mistake(
            "group2_wrong_occurrence",
            "SubstR with a = f(c) clicked on b instead of a",
            WrongRuleInstantiation,
            WrongOccurrence,
            with_step(
                &g2_before_subst,
                RuleId::SubstR,
                Selection::right(0).with_equality(0, vec![1]),
                &["a = f(c), b = f(c), E(a,c), E(b,c) ==> a = f(c)"],
            ),
        ),
        mistake(
            "group3_precedence",
            "AndR applied to the conjunction as if it were the main operator of the succedent",
            Misplaced,
            NotTopLevel,
            with_step(
                &g3,
                RuleId::AndR,
                Selection::right(0).with_path(vec![0, 0]),
                &[
                    "forall x forall z. P(x,c) & Q(z,g(x,z)) ==> exists y forall x. P(x,y)",
                    "forall x forall z. P(x,c) & Q(z,g(x,z)) ==> forall z exists u. Q(z,u)",
                ],
            ),
        ),
        mistake(
            "group3_symbol_outside_signature",
            "ExR instantiated with a constant d that does not occur in the conclusion",
            WrongFOInstantiation,
            SymbolOutsideSignature,
            with_step(
                &g3,
                RuleId::ExR,
                Selection::right(0).with_term(term("d")),
                &["forall x forall z. P(x,c) & Q(z,g(x,z)) ==> forall x. P(x,d) & forall z exists u. Q(z,u)"],
            ),
        ),
    ]
}

/// Every shipped corpus file, as (relative path, contents).
pub fn corpus_files() -> Vec<(String, Vec<u8>)> {
    let mut files = vec![
        ("group1.proof.json".to_string(), ProofFile::from_tree(&group1_proof()).to_bytes()),
        ("group2.proof.json".to_string(), ProofFile::from_tree(&group2_proof()).to_bytes()),
        ("group3.proof.json".to_string(), ProofFile::from_tree(&group3_proof()).to_bytes()),
    ];
    for m in mistakes() {
        files.push((format!("mistakes/{}.json", m.name), m.file.to_bytes()));
    }
    files.push(("sequents.txt".to_string(), format!("{GROUP1}\n{GROUP2}\n{GROUP3}\n{S1}\n{DOUBLED}\n").into_bytes()));
    files
}

/// Writes [`corpus_files`] below `dir`.
pub fn write_corpus(dir: &std::path::Path) -> std::io::Result<()> {
    for (name, bytes) in corpus_files() {
        let path = dir.join(name);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, bytes)?;
    }
    Ok(())
}
