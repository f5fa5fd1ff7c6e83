use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::formula::{parse_term, print_term, NodePath, Term};
use crate::sequent::Side;

/// The nineteen rules of the calculus. The names are a stable vocabulary:
/// proof files and the HTTP API use them verbatim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    AndL,
    AndR,
    OrL,
    OrR,
    NotL,
    NotR,
    ImpL,
    ImpR,
    ContrL,
    ContrR,
    AxiomId,
    AxiomRefl,
    ExL,
    ExR,
    AllL,
    AllR,
    EqIntro,
    SubstL,
    SubstR,
}

impl RuleId {
    pub const ALL: [RuleId; 19] = [
        RuleId::AndL,
        RuleId::AndR,
        RuleId::OrL,
        RuleId::OrR,
        RuleId::NotL,
        RuleId::NotR,
        RuleId::ImpL,
        RuleId::ImpR,
        RuleId::ContrL,
        RuleId::ContrR,
        RuleId::AxiomId,
        RuleId::AxiomRefl,
        RuleId::ExL,
        RuleId::ExR,
        RuleId::AllL,
        RuleId::AllR,
        RuleId::EqIntro,
        RuleId::SubstL,
        RuleId::SubstR,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::AndL => "AndL",
            RuleId::AndR => "AndR",
            RuleId::OrL => "OrL",
            RuleId::OrR => "OrR",
            RuleId::NotL => "NotL",
            RuleId::NotR => "NotR",
            RuleId::ImpL => "ImpL",
            RuleId::ImpR => "ImpR",
            RuleId::ContrL => "ContrL",
            RuleId::ContrR => "ContrR",
            RuleId::AxiomId => "AxiomId",
            RuleId::AxiomRefl => "AxiomRefl",
            RuleId::ExL => "ExL",
            RuleId::ExR => "ExR",
            RuleId::AllL => "AllL",
            RuleId::AllR => "AllR",
            RuleId::EqIntro => "EqIntro",
            RuleId::SubstL => "SubstL",
            RuleId::SubstR => "SubstR",
        }
    }

    /// The side of the principal formula, `None` for the identity axiom
    /// which may be selected from either side.
    pub fn side(self) -> Option<Side> {
        use RuleId::*;
        match self {
            AndL | OrL | NotL | ImpL | ContrL | ExL | AllL | EqIntro | SubstL => Some(Side::L),
            AndR | OrR | NotR | ImpR | ContrR | ExR | AllR | AxiomRefl | SubstR => Some(Side::R),
            AxiomId => None,
        }
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, RuleId::AxiomId | RuleId::AxiomRefl)
    }

    pub fn is_propositional(self) -> bool {
        use RuleId::*;
        matches!(self, AndL | AndR | OrL | OrR | NotL | NotR | ImpL | ImpR | ContrL | ContrR | AxiomId)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// A formula position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormulaRef {
    pub side: Side,
    pub index: usize,
}

/// Where and how a rule is applied.
///
/// `side`/`index` name the principal formula (for `EqIntro`, the antecedent
/// position at which `s = s` is inserted). `path` is the clicked operator
/// inside that formula; only the empty path (the formula's main operator)
/// is a legal target. The remaining fields are rule specific:
/// `term` for `AllL`, `ExR`, `EqIntro` (and an optional proposed Skolem
/// constant for `ExL`, `AllR`), `eq` + `occ_path` for `SubstL`/`SubstR`,
/// and `partner` for `AxiomId`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SelectionJson", into = "SelectionJson")]
pub struct Selection {
    pub side: Side,
    pub index: usize,
    pub path: NodePath,
    pub term: Option<Term>,
    pub eq: Option<FormulaRef>,
    pub occ_path: Option<NodePath>,
    pub partner: Option<usize>,
}

impl Selection {
    pub fn at(side: Side, index: usize) -> Self {
        Selection { side, index, path: Vec::new(), term: None, eq: None, occ_path: None, partner: None }
    }

    pub fn left(index: usize) -> Self {
        Self::at(Side::L, index)
    }

    pub fn right(index: usize) -> Self {
        Self::at(Side::R, index)
    }

    pub fn with_path(mut self, path: NodePath) -> Self {
        self.path = path;
        self
    }

    pub fn with_term(mut self, term: Term) -> Self {
        self.term = Some(term);
        self
    }

    pub fn with_partner(mut self, partner: usize) -> Self {
        self.partner = Some(partner);
        self
    }

    /// Selects the equality at `eq_index` of the antecedent and the term
    /// occurrence at `occ_path` of the principal formula.
    pub fn with_equality(mut self, eq_index: usize, occ_path: NodePath) -> Self {
        self.eq = Some(FormulaRef { side: Side::L, index: eq_index });
        self.occ_path = Some(occ_path);
        self
    }
}

/// Wire form of [`Selection`]: terms as text, camelCase keys.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionJson {
    pub side: Side,
    pub index: usize,
    #[serde(default)]
    pub path: NodePath,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq: Option<FormulaRef>,
    #[serde(default, rename = "occPath", skip_serializing_if = "Option::is_none")]
    pub occ_path: Option<NodePath>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<usize>,
}

impl TryFrom<SelectionJson> for Selection {
    type Error = String;

    fn try_from(j: SelectionJson) -> Result<Self, Self::Error> {
        let term = j
            .term
            .map(|t| parse_term(&t).map_err(|e| format!("term `{t}`: {e}")))
            .transpose()?;
        Ok(Selection {
            side: j.side,
            index: j.index,
            path: j.path,
            term,
            eq: j.eq,
            occ_path: j.occ_path,
            partner: j.partner,
        })
    }
}

impl From<Selection> for SelectionJson {
    fn from(s: Selection) -> Self {
        SelectionJson {
            side: s.side,
            index: s.index,
            path: s.path,
            term: s.term.as_ref().map(print_term),
            eq: s.eq,
            occ_path: s.occ_path,
            partner: s.partner,
        }
    }
}
