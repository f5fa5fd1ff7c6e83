//! The proof file format.
//!
//! ```json
//! { "version": 1,
//!   "root": { "sequent": "==> P & Q", "rule": "AndR",
//!             "selection": {"side": "R", "index": 0, "path": []},
//!             "premisses": [ ... ] } }
//! ```
//!
//! An optional top-level `"strict": true` makes substitution consume the
//! equality it uses.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{NodeId, ProofTree};
use crate::engine::{EngineOptions, RuleId, Selection};
use crate::sequent::{parse_sequent, Sequent};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub strict: bool,
    pub root: NodeDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    #[serde(serialize_with = "sequent_out", deserialize_with = "sequent_in")]
    pub sequent: Sequent,
    #[serde(default)]
    pub rule: Option<RuleId>,
    #[serde(default)]
    pub selection: Option<Selection>,
    #[serde(default)]
    pub premisses: Vec<NodeDoc>,
}

fn sequent_out<S: Serializer>(s: &Sequent, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(s)
}

fn sequent_in<'de, D: Deserializer<'de>>(de: D) -> Result<Sequent, D::Error> {
    let text = String::deserialize(de)?;
    parse_sequent(&text).map_err(serde::de::Error::custom)
}

/// A file that does not follow the schema. `path` locates the offending
/// field, e.g. `root.premisses[1].selection.index`.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("{path}: {message}")]
pub struct LoadError {
    pub path: String,
    pub message: String,
}

impl ProofFile {
    pub fn from_tree(t: &ProofTree) -> ProofFile {
        fn node(t: &ProofTree, id: NodeId) -> NodeDoc {
            let n = t.node(id).expect("ids in the tree resolve");
            NodeDoc {
                sequent: n.sequent.clone(),
                rule: n.rule,
                selection: n.selection.clone(),
                premisses: n.children.iter().map(|&c| node(t, c)).collect(),
            }
        }
        ProofFile { version: FORMAT_VERSION, strict: t.options().strict_substitution, root: node(t, t.root_id()) }
    }

    pub fn into_tree(&self) -> ProofTree {
        ProofTree::from_unchecked(&self.root, EngineOptions { strict_substitution: self.strict })
    }

    /// Parses and checks the schema. Rule applications are not checked here.
    pub fn parse(bytes: &[u8]) -> Result<ProofFile, LoadError> {
        let de = &mut serde_json::Deserializer::from_slice(bytes);
        let file: ProofFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." { "$".to_string() } else { path };
            LoadError { path, message: e.into_inner().to_string() }
        })?;
        if file.version != FORMAT_VERSION {
            return Err(LoadError {
                path: "version".into(),
                message: format!("unsupported version {}, expected {FORMAT_VERSION}", file.version),
            });
        }
        check_node(&file.root, "root")?;
        Ok(file)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("proof files serialize");
        out.push(b'\n');
        out
    }
}

fn check_node(n: &NodeDoc, path: &str) -> Result<(), LoadError> {
    let err = |field: &str, message: &str| Err(LoadError { path: format!("{path}.{field}"), message: message.into() });
    match (n.rule, &n.selection) {
        (None, Some(_)) => return err("selection", "must be null when rule is null"),
        (None, None) if !n.premisses.is_empty() => return err("premisses", "must be empty when rule is null"),
        (Some(_), None) => return err("selection", "required when rule is set"),
        _ => {}
    }
    for (i, p) in n.premisses.iter().enumerate() {
        check_node(p, &format!("{path}.premisses[{i}]"))?;
    }
    Ok(())
}

pub fn save(t: &ProofTree) -> Vec<u8> {
    ProofFile::from_tree(t).to_bytes()
}

pub fn load(bytes: &[u8]) -> Result<ProofTree, LoadError> {
    Ok(ProofFile::parse(bytes)?.into_tree())
}
