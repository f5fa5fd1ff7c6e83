use serde::{Deserialize, Serialize};

use super::{NodeId, ProofTree};
use crate::engine::{apply_rule_with, DetailCode, Diagnostic, Payload, RuleId, Selection};
use crate::sequent::Sequent;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum NodeStatus {
    Ok,
    Open,
    Failed { diagnostic: Diagnostic },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeCheck {
    pub node_id: NodeId,
    /// Location in file terms, e.g. `root.premisses[0]`.
    pub location: String,
    pub sequent: String,
    #[serde(flatten)]
    pub status: NodeStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub complete: bool,
    pub open_goals: Vec<NodeId>,
    pub nodes: Vec<NodeCheck>,
    /// Complete and every step accepted.
    pub ok: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = (&NodeCheck, &Diagnostic)> {
        self.nodes.iter().filter_map(|c| match &c.status {
            NodeStatus::Failed { diagnostic } => Some((c, diagnostic)),
            _ => None,
        })
    }
}

fn mismatch(rule: RuleId, sel: &Selection, expected: String) -> Diagnostic {
    Diagnostic::new(rule, sel.clone(), DetailCode::PremissMismatch, Payload::default().with_term(expected))
}

/// Replays every rule record through the engine and compares the derived
/// premisses with the stored ones, up to reordering within each side.
///
/// A disagreement is reported at the parent and at each premiss that does
/// not match, so an edited sequent is flagged wherever it sits.
pub fn verify(t: &ProofTree) -> VerificationReport {
    let order = t.preorder();
    let mut failed: std::collections::BTreeMap<NodeId, Diagnostic> = Default::default();
    for n in &order {
        let (Some(rule), Some(sel)) = (n.rule, n.selection.as_ref()) else { continue };
        let derived = match apply_rule_with(&n.sequent, rule, sel, t.options()) {
            Ok(ps) => ps,
            Err(d) => {
                failed.entry(n.id).or_insert(d);
                continue;
            }
        };
        let stored: Vec<&Sequent> = n.children.iter().map(|c| &t.node(*c).expect("child exists").sequent).collect();
        if derived.len() != stored.len() {
            let text = derived.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; ");
            failed.entry(n.id).or_insert_with(|| mismatch(rule, sel, text));
            continue;
        }
        for ((d, s), &c) in derived.iter().zip(&stored).zip(&n.children) {
            if !d.same_multisets(s) {
                failed.entry(n.id).or_insert_with(|| mismatch(rule, sel, d.to_string()));
                failed.entry(c).or_insert_with(|| mismatch(rule, sel, d.to_string()));
            }
        }
    }

    let mut locations = std::collections::BTreeMap::new();
    locations.insert(t.root_id(), "root".to_string());
    for n in &order {
        let here = locations[&n.id].clone();
        for (i, c) in n.children.iter().enumerate() {
            locations.insert(*c, format!("{here}.premisses[{i}]"));
        }
    }

    let nodes: Vec<NodeCheck> = order
        .iter()
        .map(|n| NodeCheck {
            node_id: n.id,
            location: locations[&n.id].clone(),
            sequent: n.sequent.to_string(),
            status: match failed.remove(&n.id) {
                Some(diagnostic) => NodeStatus::Failed { diagnostic },
                None if n.is_open() => NodeStatus::Open,
                None => NodeStatus::Ok,
            },
        })
        .collect();
    let open_goals = t.open_goals();
    let complete = open_goals.is_empty();
    let ok = complete && nodes.iter().all(|c| c.status == NodeStatus::Ok);
    VerificationReport { complete, open_goals, nodes, ok }
}
