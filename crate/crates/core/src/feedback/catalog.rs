use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use thiserror::Error;

use crate::engine::{DetailCode, MistakeCategory, RuleId};

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("{locale}: catalog is empty")]
    Empty { locale: String },
    #[error("{locale}:{line}: expected `key = template`")]
    Malformed { locale: String, line: usize },
    #[error("{locale}:{line}: duplicate key `{key}`")]
    Duplicate { locale: String, line: usize, key: String },
    #[error("{locale}: missing key `{key}`")]
    MissingKey { locale: String, key: String },
    #[error("{locale}: key `{key}` is not in the reference catalog")]
    ExtraKey { locale: String, key: String },
    #[error("{locale}: placeholders of `{key}` differ from the reference ({found:?} vs {expected:?})")]
    PlaceholderMismatch { locale: String, key: String, found: BTreeSet<String>, expected: BTreeSet<String> },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// A locale's `key = template` table.
#[derive(Clone, Debug, PartialEq)]
pub struct MessageCatalog {
    pub locale: String,
    pub entries: BTreeMap<String, String>,
}

/// Keys every catalog must define.
pub fn required_keys() -> Vec<String> {
    let mut keys: Vec<String> = MistakeCategory::ALL.iter().map(|c| format!("category.{c}")).collect();
    keys.extend(DetailCode::ALL.iter().map(|d| format!("detail.{d}")));
    keys.extend(RuleId::ALL.iter().map(|r| format!("rule.{r}")));
    keys.extend(["axiom.Id", "axiom.Refl"].map(String::from));
    keys
}

/// Names between braces, e.g. `{rule}`.
pub fn placeholders(template: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        let after = &rest[open + 1..];
        match after.find('}') {
            Some(close) if after[..close].chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => {
                out.insert(after[..close].to_string());
                rest = &after[close + 1..];
            }
            _ => rest = after,
        }
    }
    out
}

impl MessageCatalog {
    /// Parses catalog text. Blank lines and lines starting with `#` are
    /// ignored.
    pub fn parse(locale: &str, text: &str) -> Result<MessageCatalog, CatalogError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || CatalogError::Malformed { locale: locale.into(), line: i + 1 };
            let (key, template) = line.split_once('=').ok_or_else(malformed)?;
            let (key, template) = (key.trim(), template.trim());
            if key.is_empty() || template.is_empty() || key.contains(char::is_whitespace) {
                return Err(malformed());
            }
            if entries.insert(key.to_string(), template.to_string()).is_some() {
                return Err(CatalogError::Duplicate { locale: locale.into(), line: i + 1, key: key.into() });
            }
        }
        if entries.is_empty() {
            return Err(CatalogError::Empty { locale: locale.into() });
        }
        Ok(MessageCatalog { locale: locale.into(), entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Checks a reference catalog for the built-in key set.
    pub fn validate_reference(&self) -> Result<(), CatalogError> {
        for key in required_keys() {
            if !self.entries.contains_key(&key) {
                return Err(CatalogError::MissingKey { locale: self.locale.clone(), key });
            }
        }
        Ok(())
    }

    /// Checks that this catalog has exactly the reference's keys, each with
    /// the same placeholders.
    pub fn validate_against(&self, reference: &MessageCatalog) -> Result<(), CatalogError> {
        for (key, template) in &reference.entries {
            let Some(ours) = self.entries.get(key) else {
                return Err(CatalogError::MissingKey { locale: self.locale.clone(), key: key.clone() });
            };
            let (found, expected) = (placeholders(ours), placeholders(template));
            if found != expected {
                return Err(CatalogError::PlaceholderMismatch {
                    locale: self.locale.clone(),
                    key: key.clone(),
                    found,
                    expected,
                });
            }
        }
        if let Some(key) = self.entries.keys().find(|k| !reference.entries.contains_key(*k)) {
            return Err(CatalogError::ExtraKey { locale: self.locale.clone(), key: key.clone() });
        }
        Ok(())
    }
}

/// Reads `<dir>/<locale>.txt`-style files; the locale is the file stem.
pub fn load_catalog(path: &Path) -> Result<MessageCatalog, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatalogError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let locale = path.file_stem().and_then(|s| s.to_str()).unwrap_or("unknown");
    MessageCatalog::parse(locale, &text)
}
