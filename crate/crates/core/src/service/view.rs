//! JSON shapes served to the trainer front end.

use serde::Serialize;

use super::store::Session;
use super::{localized_failures, LocalizedFailure};
use crate::engine::{applicable_rules, sequent_rules, RuleId, Selection};
use crate::feedback::{rule_schema, Catalogs};
use crate::formula::{print_formula, Formula, NodePath};
use crate::proof::{NodeCheck, NodeId, ProofNode, ProofTree, VerificationReport};
use crate::sequent::Side;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanView {
    pub path: NodePath,
    pub start: usize,
    pub end: usize,
}

/// A formula as printed, with the scope of every node (character offsets
/// into `text`) and the rules it can be the principal formula of.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaView {
    pub text: String,
    pub spans: Vec<SpanView>,
    pub applicable_rules: Vec<RuleId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum NodeState {
    /// No rule applied yet.
    Open,
    /// Closed by an axiom.
    Closed,
    /// A rule with premisses was applied.
    Expanded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeView {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub sequent: String,
    pub state: NodeState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selection: Option<Selection>,
    pub children: Vec<NodeId>,
    pub antecedent: Vec<FormulaView>,
    pub succedent: Vec<FormulaView>,
    /// Rules without a principal formula (`EqIntro`).
    pub sequent_rules: Vec<RuleId>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionState {
    pub session_id: String,
    pub revision: u64,
    pub locale: String,
    pub strict: bool,
    pub created_at: u64,
    pub modified_at: u64,
    pub root_id: NodeId,
    pub complete: bool,
    pub open_goals: Vec<NodeId>,
    /// Preorder.
    pub nodes: Vec<NodeView>,
}

fn formula_views(n: &ProofNode, side: Side, fs: &[Formula]) -> Vec<FormulaView> {
    fs.iter()
        .enumerate()
        .map(|(i, f)| {
            let (text, spans) = print_formula(f);
            FormulaView {
                text,
                spans: spans.into_iter().map(|(path, s)| SpanView { path, start: s.start, end: s.end }).collect(),
                applicable_rules: applicable_rules(&n.sequent, side, i).into_iter().collect(),
            }
        })
        .collect()
}

pub fn node_view(n: &ProofNode) -> NodeView {
    let state = match (n.rule, n.children.is_empty()) {
        (None, _) => NodeState::Open,
        (Some(_), true) => NodeState::Closed,
        (Some(_), false) => NodeState::Expanded,
    };
    NodeView {
        id: n.id,
        parent: n.parent,
        sequent: n.sequent.to_string(),
        state,
        rule: n.rule,
        selection: n.selection.clone(),
        children: n.children.clone(),
        antecedent: formula_views(n, Side::L, &n.sequent.antecedent),
        succedent: formula_views(n, Side::R, &n.sequent.succedent),
        sequent_rules: sequent_rules(&n.sequent).into_iter().collect(),
    }
}

pub fn tree_nodes(t: &ProofTree) -> Vec<NodeView> {
    t.preorder().into_iter().map(node_view).collect()
}

pub fn session_state(s: &Session) -> SessionState {
    SessionState {
        session_id: s.id.clone(),
        revision: s.revision,
        locale: s.locale.clone(),
        strict: s.tree.options().strict_substitution,
        created_at: s.created_ms,
        modified_at: s.modified_ms,
        root_id: s.tree.root_id(),
        complete: s.tree.is_complete(),
        open_goals: s.tree.open_goals(),
        nodes: tree_nodes(&s.tree),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportView {
    pub ok: bool,
    pub complete: bool,
    pub open_goals: Vec<NodeId>,
    pub nodes: Vec<NodeCheck>,
    pub failures: Vec<LocalizedFailure>,
}

pub fn report_view(r: VerificationReport, catalogs: &Catalogs, locale: &str) -> ReportView {
    let failures = localized_failures(&r, catalogs, locale);
    ReportView { ok: r.ok, complete: r.complete, open_goals: r.open_goals, nodes: r.nodes, failures }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleView {
    pub id: RuleId,
    pub side: Option<Side>,
    pub axiom: bool,
    pub premisses: Vec<String>,
    pub conclusion: String,
    pub explanation: String,
}

pub fn rule_view(r: RuleId, catalogs: &Catalogs, locale: &str) -> RuleView {
    let (premisses, conclusion) = rule_schema(r);
    let mut explanation = catalogs.template(&format!("rule.{r}"), locale).to_string();
    if let Some(key) = match r {
        RuleId::AxiomId => Some("axiom.Id"),
        RuleId::AxiomRefl => Some("axiom.Refl"),
        _ => None,
    } {
        explanation.push(' ');
        explanation.push_str(catalogs.template(key, locale));
    }
    RuleView {
        id: r,
        side: r.side(),
        axiom: r.is_axiom(),
        premisses: premisses.iter().map(|p| p.to_string()).collect(),
        conclusion: conclusion.to_string(),
        explanation,
    }
}
