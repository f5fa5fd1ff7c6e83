//! Localized messages for diagnostics, rules and service errors.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use crate::engine::{Diagnostic, RuleId};

mod catalog;

pub use catalog::{load_catalog, placeholders, required_keys, CatalogError, MessageCatalog};

pub const REFERENCE_LOCALE: &str = "en";

const SHIPPED: [(&str, &str); 2] =
    [("en", include_str!("../../catalogs/en.txt")), ("de", include_str!("../../catalogs/de.txt"))];

/// The reference catalog plus any number of validated translations.
#[derive(Clone, Debug)]
pub struct Catalogs {
    reference: MessageCatalog,
    others: BTreeMap<String, MessageCatalog>,
}

impl Catalogs {
    pub fn new(reference: MessageCatalog) -> Result<Self, CatalogError> {
        reference.validate_reference()?;
        Ok(Catalogs { reference, others: BTreeMap::new() })
    }

    pub fn add(&mut self, c: MessageCatalog) -> Result<(), CatalogError> {
        c.validate_against(&self.reference)?;
        self.others.insert(c.locale.clone(), c);
        Ok(())
    }

    /// The catalogs compiled into the library.
    pub fn shipped() -> &'static Catalogs {
        static CELL: OnceLock<Catalogs> = OnceLock::new();
        CELL.get_or_init(|| {
            let parse = |(l, t): (&str, &str)| MessageCatalog::parse(l, t).expect("shipped catalog parses");
            let mut cs = Catalogs::new(parse(SHIPPED[0])).expect("shipped reference is complete");
            for entry in &SHIPPED[1..] {
                cs.add(parse(*entry)).expect("shipped catalog matches the reference");
            }
            cs
        })
    }

    /// Loads every `*.txt` in `dir`; `en.txt` is the reference.
    pub fn from_dir(dir: &Path) -> Result<Self, CatalogError> {
        let io = |e: std::io::Error| CatalogError::Io { path: dir.display().to_string(), message: e.to_string() };
        let mut cs = Catalogs::new(load_catalog(&dir.join(format!("{REFERENCE_LOCALE}.txt")))?)?;
        let mut paths: Vec<_> = std::fs::read_dir(dir).map_err(io)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.sort();
        for p in paths {
            if p.extension().is_some_and(|e| e == "txt") && p.file_stem().is_some_and(|s| s != REFERENCE_LOCALE) {
                cs.add(load_catalog(&p)?)?;
            }
        }
        Ok(cs)
    }

    pub fn locales(&self) -> Vec<&str> {
        let mut v = vec![self.reference.locale.as_str()];
        v.extend(self.others.keys().map(String::as_str));
        v
    }

    pub fn has_locale(&self, locale: &str) -> bool {
        locale == self.reference.locale || self.others.contains_key(locale)
    }

    /// The template for `key`, falling back to the reference locale with a
    /// warning when the locale or key is unknown.
    pub fn template(&self, key: &str, locale: &str) -> &str {
        if locale != self.reference.locale {
            match self.others.get(locale) {
                Some(c) => match c.get(key) {
                    Some(t) => return t,
                    None => log::warn!("catalog `{locale}` has no key `{key}`, using {REFERENCE_LOCALE}"),
                },
                None => log::warn!("no catalog for locale `{locale}`, using {REFERENCE_LOCALE}"),
            }
        }
        match self.reference.get(key) {
            Some(t) => t,
            None => {
                log::warn!("unknown message key `{key}`");
                "?"
            }
        }
    }

    /// Fills `{name}` placeholders from `args`; unknown ones become `?`.
    pub fn render(&self, key: &str, locale: &str, args: &[(&str, &str)]) -> String {
        let template = self.template(key, locale);
        let mut out = String::with_capacity(template.len());
        let mut rest = template;
        while let Some(open) = rest.find('{') {
            out.push_str(&rest[..open]);
            let after = &rest[open + 1..];
            match after.find('}') {
                Some(close) if placeholders(&rest[open..open + close + 2]).len() == 1 => {
                    let name = &after[..close];
                    out.push_str(args.iter().find(|(k, _)| *k == name).map_or("?", |(_, v)| v));
                    rest = &after[close + 1..];
                }
                _ => {
                    out.push('{');
                    rest = after;
                }
            }
        }
        out.push_str(rest);
        out
    }

    pub fn message_for(&self, d: &Diagnostic, locale: &str) -> String {
        let category = self.template(&format!("category.{}", d.category), locale);
        let span = d.payload.span.map(|s| format!("{}..{}", s.start, s.end));
        let rule = d.rule.to_string();
        let mut args = vec![("rule", rule.as_str()), ("category", category)];
        if let Some(s) = &d.payload.symbol {
            args.push(("symbol", s));
        }
        if let Some(t) = &d.payload.term {
            args.push(("term", t));
        }
        if let Some(s) = &span {
            args.push(("span", s));
        }
        let detail = self.render(&format!("detail.{}", d.detail), locale, &args);
        format!("{category}: {detail}")
    }

    pub fn rule_info(&self, r: RuleId, locale: &str) -> String {
        let mut out = rule_schema_text(r);
        out.push('\n');
        out.push_str(self.template(&format!("rule.{r}"), locale));
        match r {
            RuleId::AxiomId => {
                out.push(' ');
                out.push_str(self.template("axiom.Id", locale));
            }
            RuleId::AxiomRefl => {
                out.push(' ');
                out.push_str(self.template("axiom.Refl", locale));
            }
            _ => {}
        }
        out
    }
}

/// Premisses and conclusion of a rule in the concrete syntax, with Γ, Δ for
/// the side formulas.
pub fn rule_schema(r: RuleId) -> (&'static [&'static str], &'static str) {
    use RuleId::*;
    match r {
        AndL => (&["Γ, φ, ψ ==> Δ"], "Γ, φ & ψ ==> Δ"),
        AndR => (&["Γ ==> φ, Δ", "Γ ==> ψ, Δ"], "Γ ==> φ & ψ, Δ"),
        OrL => (&["Γ, φ ==> Δ", "Γ, ψ ==> Δ"], "Γ, φ | ψ ==> Δ"),
        OrR => (&["Γ ==> φ, ψ, Δ"], "Γ ==> φ | ψ, Δ"),
        NotL => (&["Γ ==> φ, Δ"], "Γ, ~φ ==> Δ"),
        NotR => (&["Γ, φ ==> Δ"], "Γ ==> ~φ, Δ"),
        ImpL => (&["Γ, ψ ==> Δ", "Γ ==> φ, Δ"], "Γ, φ -> ψ ==> Δ"),
        ImpR => (&["Γ, φ ==> ψ, Δ"], "Γ ==> φ -> ψ, Δ"),
        ContrL => (&["Γ, φ, φ ==> Δ"], "Γ, φ ==> Δ"),
        ContrR => (&["Γ ==> φ, φ, Δ"], "Γ ==> φ, Δ"),
        AxiomId => (&[], "Γ, φ ==> φ, Δ"),
        AxiomRefl => (&[], "Γ ==> s = s, Δ"),
        ExL => (&["Γ, φ[c/x] ==> Δ"], "Γ, exists x. φ ==> Δ"),
        ExR => (&["Γ ==> φ[t/x], Δ"], "Γ ==> exists x. φ, Δ"),
        AllL => (&["Γ, φ[t/x] ==> Δ"], "Γ, forall x. φ ==> Δ"),
        AllR => (&["Γ ==> φ[c/x], Δ"], "Γ ==> forall x. φ, Δ"),
        EqIntro => (&["Γ, s = s ==> Δ"], "Γ ==> Δ"),
        SubstL => (&["Γ, s = s', φ[s'/x] ==> Δ"], "Γ, s = s', φ[s/x] ==> Δ"),
        SubstR => (&["Γ, s = s' ==> φ[s'/x], Δ"], "Γ, s = s' ==> φ[s/x], Δ"),
    }
}

/// The schema drawn as premisses over a line over the conclusion.
pub fn rule_schema_text(r: RuleId) -> String {
    let (premisses, conclusion) = rule_schema(r);
    let top = premisses.join("   ");
    let width = top.chars().count().max(conclusion.chars().count());
    let centre = |s: &str| format!("{}{s}", " ".repeat((width - s.chars().count()) / 2));
    let mut out = String::new();
    if !top.is_empty() {
        out.push_str(&centre(&top));
        out.push('\n');
    }
    out.push_str(&format!("{} {r}\n", "-".repeat(width)));
    out.push_str(&centre(conclusion));
    out.push('\n');
    out
}

pub fn message_for(d: &Diagnostic, locale: &str) -> String {
    Catalogs::shipped().message_for(d, locale)
}

pub fn rule_info(r: RuleId, locale: &str) -> String {
    Catalogs::shipped().rule_info(r, locale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{apply_rule, DetailCode, Payload, Selection};
    use crate::formula::Term;
    use crate::sequent::parse_sequent;

    fn diagnostic(s: &str, rule: RuleId, sel: Selection) -> Diagnostic {
        apply_rule(&parse_sequent(s).unwrap(), rule, &sel).unwrap_err()
    }

    fn misplaced() -> Diagnostic {
        diagnostic(
            "==> exists y forall x. P(x,y) & forall z exists u. Q(z,u)",
            RuleId::AndR,
            Selection::right(0).with_path(vec![0, 0]),
        )
    }

    #[test]
    fn not_top_level_message() {
        let en = message_for(&misplaced(), "en");
        assert!(en.contains("not a top-level formula"), "{en}");
        assert!(en.starts_with("Misplaced rule: "));
        assert!(en.contains("`&`") && en.contains("`exists`"));
        let de = message_for(&misplaced(), "de");
        assert!(de.contains("keine Formel der obersten Ebene"), "{de}");
        assert!(de.starts_with("Regel an falscher Stelle: "));
        assert_eq!(message_for(&misplaced(), "tlh"), en);
    }

    #[test]
    fn every_code_renders_fully() {
        for &code in DetailCode::ALL {
            let payload = Payload::symbol("k").with_term("f(k)").with_span(Some(crate::formula::Span { start: 0, end: 4 }));
            let d = Diagnostic::new(RuleId::AllL, Selection::left(0), code, payload);
            for locale in ["en", "de"] {
                let m = message_for(&d, locale);
                assert!(!m.contains("detail.") && !m.contains('{') && !m.contains('?'), "{locale} {code}: {m}");
                assert!(m.contains("k"), "{m}");
            }
        }
    }

    #[test]
    fn messages_name_the_offending_item() {
        let d = diagnostic("exists x. P(x) ==> P(c)", RuleId::ExL, Selection::left(0).with_term(Term::constant("c")));
        assert!(message_for(&d, "en").contains("`c`"));
        assert!(message_for(&d, "en").starts_with("Wrong first-order instantiation"));
        let d = diagnostic("P | Q ==>", RuleId::AndL, Selection::left(0));
        assert!(message_for(&d, "en").contains("`|`"));
    }

    #[test]
    fn rule_info_has_schema_and_text() {
        let and_l = rule_info(RuleId::AndL, "en");
        assert!(and_l.starts_with("Γ, φ, ψ ==> Δ\n-------------- AndL\nΓ, φ & ψ ==> Δ\n"), "{and_l}");
        assert!(rule_info(RuleId::ExL, "en").contains("fresh"));
        assert!(rule_info(RuleId::AllR, "de").contains("Skolemkonstante"));
        let refl = rule_info(RuleId::AxiomRefl, "en");
        assert!(refl.contains("Γ ==> s = s, Δ") && refl.contains("axiom"));
        for r in RuleId::ALL {
            assert!(rule_info(r, "de").contains(rule_schema(r).1));
        }
    }

    #[test]
    fn render_fills_and_marks_missing() {
        let cs = Catalogs::shipped();
        assert_eq!(cs.render("error.session_not_found", "en", &[("id", "42")]), "No session with id 42.");
        assert_eq!(cs.render("error.session_not_found", "en", &[]), "No session with id ?.");
        assert_eq!(cs.template("no.such.key", "de"), "?");
        assert_eq!(cs.locales(), ["en", "de"]);
    }

    #[test]
    fn loads_a_directory() {
        let dir = tempfile::tempdir().unwrap();
        for (l, t) in SHIPPED {
            std::fs::write(dir.path().join(format!("{l}.txt")), t).unwrap();
        }
        let cs = Catalogs::from_dir(dir.path()).unwrap();
        assert!(cs.has_locale("de"));
        std::fs::write(dir.path().join("xx.txt"), "category.Confused = x\n").unwrap();
        assert!(matches!(Catalogs::from_dir(dir.path()), Err(CatalogError::MissingKey { .. })));
    }
}
