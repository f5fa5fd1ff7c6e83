//! Proof trees: construction with undo-by-reapply, replay verification,
//! the JSON proof file format, and text/SVG export.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::{apply_rule_with, Diagnostic, EngineOptions, RuleId, Selection};
use crate::sequent::Sequent;

mod export;
mod file;
mod verify;

pub use export::{export_svg, export_text, svg_layout, NodeBox};
pub use file::{load, save, LoadError, NodeDoc, ProofFile};
pub use verify::{verify, NodeCheck, NodeStatus, VerificationReport};

pub type NodeId = u64;

#[derive(Clone, Debug)]
pub struct ProofNode {
    pub id: NodeId,
    pub sequent: Sequent,
    pub rule: Option<RuleId>,
    pub selection: Option<Selection>,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
}

impl ProofNode {
    pub fn is_open(&self) -> bool {
        self.rule.is_none()
    }

    pub fn is_closed_leaf(&self) -> bool {
        self.rule.is_some_and(RuleId::is_axiom)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ProofError {
    #[error("no node with id {0}")]
    UnknownNode(NodeId),
    #[error("{0}")]
    Rejected(Box<Diagnostic>),
}

/// An arena of nodes. Ids are handed out monotonically and never reused, so
/// ids held by a client stay valid while other branches are rewritten.
///
/// Equality is structural: two trees are equal when their sequents, rule
/// records and shapes agree, whatever ids they carry.
#[derive(Clone, Debug)]
pub struct ProofTree {
    nodes: BTreeMap<NodeId, ProofNode>,
    root: NodeId,
    next_id: NodeId,
    options: EngineOptions,
}

pub fn new_proof(s: Sequent) -> ProofTree {
    ProofTree::new(s)
}

impl ProofTree {
    pub fn new(s: Sequent) -> Self {
        Self::with_options(s, EngineOptions::default())
    }

    pub fn with_options(s: Sequent, options: EngineOptions) -> Self {
        let root = ProofNode { id: 0, sequent: s, rule: None, selection: None, children: Vec::new(), parent: None };
        ProofTree { nodes: BTreeMap::from([(0, root)]), root: 0, next_id: 1, options }
    }

    pub fn options(&self) -> EngineOptions {
        self.options
    }

    pub fn root_id(&self) -> NodeId {
        self.root
    }

    pub fn root(&self) -> &ProofNode {
        &self.nodes[&self.root]
    }

    pub fn node(&self, id: NodeId) -> Option<&ProofNode> {
        self.nodes.get(&id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn children(&self, id: NodeId) -> impl Iterator<Item = &ProofNode> {
        self.nodes.get(&id).into_iter().flat_map(|n| n.children.iter().map(|c| &self.nodes[c]))
    }

    /// Nodes in preorder, root first, premisses left to right.
    pub fn preorder(&self) -> Vec<&ProofNode> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            let n = &self.nodes[&id];
            out.push(n);
            stack.extend(n.children.iter().rev());
        }
        out
    }

    pub fn subtree_size(&self, id: NodeId) -> usize {
        match self.nodes.get(&id) {
            Some(n) => 1 + n.children.iter().map(|&c| self.subtree_size(c)).sum::<usize>(),
            None => 0,
        }
    }

    /// Leaves without a rule, in preorder.
    pub fn open_goals(&self) -> Vec<NodeId> {
        self.preorder().into_iter().filter(|n| n.is_open()).map(|n| n.id).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.open_goals().is_empty()
    }

    /// Applies `rule` at node `id`, discarding any subtree the node already
    /// had. On error the tree is left unchanged.
    pub fn apply_at(&self, id: NodeId, rule: RuleId, sel: Selection) -> Result<ProofTree, ProofError> {
        let mut t = self.clone();
        t.apply_in_place(id, rule, sel)?;
        Ok(t)
    }

    pub fn apply_in_place(&mut self, id: NodeId, rule: RuleId, sel: Selection) -> Result<Vec<NodeId>, ProofError> {
        let node = self.nodes.get(&id).ok_or(ProofError::UnknownNode(id))?;
        let premisses = apply_rule_with(&node.sequent, rule, &sel, self.options)
            .map_err(|d| ProofError::Rejected(Box::new(d)))?;
        self.prune(id);
        let ids = premisses.into_iter().map(|s| self.push(id, s)).collect::<Vec<_>>();
        let node = self.nodes.get_mut(&id).expect("checked above");
        node.rule = Some(rule);
        node.selection = Some(sel);
        node.children = ids.clone();
        Ok(ids)
    }

    /// Turns node `id` back into an open goal.
    pub fn reset_node(&self, id: NodeId) -> Result<ProofTree, ProofError> {
        let mut t = self.clone();
        t.reset_in_place(id)?;
        Ok(t)
    }

    pub fn reset_in_place(&mut self, id: NodeId) -> Result<(), ProofError> {
        if !self.nodes.contains_key(&id) {
            return Err(ProofError::UnknownNode(id));
        }
        self.prune(id);
        let node = self.nodes.get_mut(&id).expect("checked above");
        node.rule = None;
        node.selection = None;
        Ok(())
    }

    fn prune(&mut self, id: NodeId) {
        let children = std::mem::take(&mut self.nodes.get_mut(&id).expect("node exists").children);
        let mut stack = children;
        while let Some(c) = stack.pop() {
            if let Some(n) = self.nodes.remove(&c) {
                stack.extend(n.children);
            }
        }
    }

    fn push(&mut self, parent: NodeId, sequent: Sequent) -> NodeId {
        let id = self.next_id;
        self.next_id += 1;
        self.nodes.insert(
            id,
            ProofNode { id, sequent, rule: None, selection: None, children: Vec::new(), parent: Some(parent) },
        );
        id
    }

    /// Builds a tree without checking that the premisses follow from the
    /// rule records. Used when loading files, which are checked by
    /// [`verify`] instead.
    pub(crate) fn from_unchecked(doc: &NodeDoc, options: EngineOptions) -> ProofTree {
        fn attach(t: &mut ProofTree, id: NodeId, d: &NodeDoc) {
            let n = t.nodes.get_mut(&id).expect("just inserted");
            n.rule = d.rule;
            n.selection = d.selection.clone();
            for p in &d.premisses {
                let c = t.push(id, p.sequent.clone());
                t.nodes.get_mut(&id).expect("parent exists").children.push(c);
                attach(t, c, p);
            }
        }
        let mut t = ProofTree::with_options(doc.sequent.clone(), options);
        let root = t.root;
        attach(&mut t, root, doc);
        t
    }
}

impl PartialEq for ProofTree {
    fn eq(&self, other: &Self) -> bool {
        fn same(a: &ProofTree, x: NodeId, b: &ProofTree, y: NodeId) -> bool {
            let (n, m) = (&a.nodes[&x], &b.nodes[&y]);
            n.sequent == m.sequent
                && n.rule == m.rule
                && n.selection == m.selection
                && n.children.len() == m.children.len()
                && n.children.iter().zip(&m.children).all(|(&c, &d)| same(a, c, b, d))
        }
        self.options == other.options && same(self, self.root, other, other.root)
    }
}

impl Eq for ProofTree {}
