use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{RuleId, Selection};
use crate::formula::Span;

/// The four kinds of mistakes students make when applying rules, plus
/// `NotApplicable` for axiom attempts on sequents that are not axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MistakeCategory {
    /// A rule for one connective used on another.
    Confused,
    /// A rule used on a subformula, or on the wrong side of the sequent.
    Misplaced,
    /// Freshness or groundness of a quantifier instantiation violated.
    WrongFOInstantiation,
    /// The rule's schema was instantiated incorrectly.
    WrongRuleInstantiation,
    NotApplicable,
}

impl MistakeCategory {
    pub const ALL: [MistakeCategory; 5] = [
        MistakeCategory::Confused,
        MistakeCategory::Misplaced,
        MistakeCategory::WrongFOInstantiation,
        MistakeCategory::WrongRuleInstantiation,
        MistakeCategory::NotApplicable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MistakeCategory::Confused => "Confused",
            MistakeCategory::Misplaced => "Misplaced",
            MistakeCategory::WrongFOInstantiation => "WrongFOInstantiation",
            MistakeCategory::WrongRuleInstantiation => "WrongRuleInstantiation",
            MistakeCategory::NotApplicable => "NotApplicable",
        }
    }
}

impl fmt::Display for MistakeCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! detail_codes {
    ($($variant:ident => $name:literal, $cat:ident;)*) => {
        /// Machine-readable reason for rejecting a rule application.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum DetailCode {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl DetailCode {
            pub const ALL: &'static [DetailCode] = &[$(DetailCode::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self { $(DetailCode::$variant => $name,)* }
            }

            pub fn category(self) -> MistakeCategory {
                match self { $(DetailCode::$variant => MistakeCategory::$cat,)* }
            }
        }

        impl FromStr for DetailCode {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(DetailCode::$variant),)*
                    other => Err(format!("unknown detail code `{other}`")),
                }
            }
        }
    };
}

detail_codes! {
    WrongConnective => "WRONG_CONNECTIVE", Confused;
    NotTopLevel => "NOT_TOP_LEVEL", Misplaced;
    WrongSide => "WRONG_SIDE", Misplaced;
    SkolemNotFresh => "SKOLEM_NOT_FRESH", WrongFOInstantiation;
    SkolemNotConstant => "SKOLEM_NOT_CONSTANT", WrongFOInstantiation;
    TermNotGround => "TERM_NOT_GROUND", WrongFOInstantiation;
    SymbolOutsideSignature => "SYMBOL_OUTSIDE_SIGNATURE", WrongFOInstantiation;
    NameCapture => "NAME_CAPTURE", WrongFOInstantiation;
    MissingField => "MISSING_FIELD", WrongRuleInstantiation;
    UnexpectedField => "UNEXPECTED_FIELD", WrongRuleInstantiation;
    IndexOutOfRange => "INDEX_OUT_OF_RANGE", WrongRuleInstantiation;
    InvalidPath => "INVALID_PATH", WrongRuleInstantiation;
    NotAnEquality => "NOT_AN_EQUALITY", WrongRuleInstantiation;
    WrongOccurrence => "WRONG_OCCURRENCE", WrongRuleInstantiation;
    SameFormula => "SAME_FORMULA", WrongRuleInstantiation;
    PremissMismatch => "PREMISS_MISMATCH", WrongRuleInstantiation;
    NoMatchingPartner => "NO_MATCHING_PARTNER", NotApplicable;
    NotReflexive => "NOT_REFLEXIVE", NotApplicable;
}

impl fmt::Display for DetailCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What the diagnostic points at. `span` is a character range in the printed
/// principal formula.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbol: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub span: Option<Span>,
}

impl Payload {
    pub fn symbol(s: impl Into<String>) -> Self {
        Payload { symbol: Some(s.into()), ..Default::default() }
    }

    pub fn with_term(mut self, t: impl Into<String>) -> Self {
        self.term = Some(t.into());
        self
    }

    pub fn with_span(mut self, span: Option<Span>) -> Self {
        self.span = span;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub category: MistakeCategory,
    pub rule: RuleId,
    pub selection: Selection,
    pub detail: DetailCode,
    pub payload: Payload,
}

impl Diagnostic {
    pub fn new(rule: RuleId, selection: Selection, detail: DetailCode, payload: Payload) -> Self {
        Diagnostic { category: detail.category(), rule, selection, detail, payload }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] applying {}", self.category, self.detail, self.rule)?;
        if let Some(s) = &self.payload.symbol {
            write!(f, " ({s})")?;
        }
        if let Some(t) = &self.payload.term {
            write!(f, " term `{t}`")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

/// The mistake category of a diagnostic; a function of its detail code.
pub fn classify(d: &Diagnostic) -> MistakeCategory {
    d.detail.category()
}
