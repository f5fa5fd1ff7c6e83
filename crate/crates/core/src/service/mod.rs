//! Front ends over the library: batch commands ([`cli`]), the session store
//! ([`store`]) and the JSON API ([`http`]).

pub mod cli;
pub mod http;
pub mod store;
pub mod view;

use serde::Serialize;

use crate::feedback::Catalogs;
use crate::proof::{NodeId, VerificationReport};

/// A failed node of a verification report with its message rendered.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalizedFailure {
    pub node_id: NodeId,
    pub location: String,
    pub category: String,
    pub detail: String,
    pub message: String,
}

pub fn localized_failures(r: &VerificationReport, catalogs: &Catalogs, locale: &str) -> Vec<LocalizedFailure> {
    r.failures()
        .map(|(c, d)| LocalizedFailure {
            node_id: c.node_id,
            location: c.location.clone(),
            category: d.category.to_string(),
            detail: d.detail.to_string(),
            message: catalogs.message_for(d, locale),
        })
        .collect()
}
