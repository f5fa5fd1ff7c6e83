use sequent_trainer::engine::{DetailCode, Diagnostic, Payload, RuleId, Selection};
use sequent_trainer::feedback::{Catalogs, MessageCatalog};
use sequent_trainer::formula::Span;

#[test]
fn every_message_is_rendered() {
    let cs = Catalogs::shipped();
    let payload = Payload::symbol("&").with_term("f(a)").with_span(Some(Span { start: 3, end: 8 }));
    for locale in cs.locales() {
        for code in DetailCode::ALL {
            for rule in RuleId::ALL {
                let d = Diagnostic::new(rule, Selection::left(0), *code, payload.clone());
                let m = cs.message_for(&d, locale);
                assert!(!m.trim().is_empty());
                assert!(!m.contains("detail.") && !m.contains('{') && !m.contains('?'), "{locale} {code}: {m}");
            }
        }
        for rule in RuleId::ALL {
            let info = cs.rule_info(rule, locale);
            assert!(info.contains(rule.as_str()) && !info.contains("rule."), "{info}");
        }
    }
}

#[test]
fn unknown_locale_falls_back_to_english() {
    let cs = Catalogs::shipped();
    let d = Diagnostic::new(RuleId::AndR, Selection::right(0), DetailCode::WrongConnective, Payload::symbol("|"));
    assert_eq!(cs.message_for(&d, "fr"), cs.message_for(&d, "en"));
}

#[test]
fn extra_locales_load_from_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("en.txt"), include_str!("../catalogs/en.txt")).unwrap();
    let fr = include_str!("../catalogs/en.txt").replace("Confused rule", "Règle confondue");
    std::fs::write(dir.path().join("fr.txt"), fr).unwrap();
    let cs = Catalogs::from_dir(dir.path()).unwrap();
    assert_eq!(cs.locales(), vec!["en", "fr"]);
    let d = Diagnostic::new(RuleId::OrL, Selection::left(0), DetailCode::WrongConnective, Payload::symbol("&"));
    assert!(cs.message_for(&d, "fr").starts_with("Règle confondue"));

    std::fs::write(dir.path().join("xx.txt"), "category.Confused = only one key\n").unwrap();
    assert!(Catalogs::from_dir(dir.path()).is_err());
    assert!(MessageCatalog::parse("xx", "a = b").unwrap().validate_reference().is_err());
}
