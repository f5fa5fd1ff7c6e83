use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Formula, NodeRef, Term};

/// Predicate and function symbols with their arities. Equality is a logical
/// symbol and never appears here.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub preds: BTreeMap<String, usize>,
    pub funcs: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("symbol `{symbol}` used with arities {first} and {second}")]
pub struct SignatureError {
    pub symbol: String,
    pub first: usize,
    pub second: usize,
}

fn note(table: &mut BTreeMap<String, usize>, name: &str, arity: usize) -> Result<(), SignatureError> {
    match table.get(name) {
        Some(&first) if first != arity => Err(SignatureError { symbol: name.to_string(), first, second: arity }),
        Some(_) => Ok(()),
        None => {
            table.insert(name.to_string(), arity);
            Ok(())
        }
    }
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_formula(&mut self, f: &Formula) -> Result<(), SignatureError> {
        let mut result = Ok(());
        f.walk(|_, node| {
            if result.is_err() {
                return;
            }
            result = match node {
                NodeRef::Formula(Formula::Pred(name, args)) => note(&mut self.preds, name, args.len()),
                NodeRef::Term(Term::Func(name, args)) => note(&mut self.funcs, name, args.len()),
                _ => Ok(()),
            };
        });
        result
    }

    pub fn add_term(&mut self, t: &Term) -> Result<(), SignatureError> {
        if let Term::Func(name, args) = t {
            note(&mut self.funcs, name, args.len())?;
            for a in args {
                self.add_term(a)?;
            }
        }
        Ok(())
    }

    pub fn of_formulas<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Result<Self, SignatureError> {
        let mut sig = Signature::new();
        for f in fs {
            sig.add_formula(f)?;
        }
        Ok(sig)
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty() && self.funcs.is_empty()
    }

    /// Does any symbol (predicate or function) carry this name?
    pub fn mentions(&self, name: &str) -> bool {
        self.preds.contains_key(name) || self.funcs.contains_key(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.funcs.iter().filter(|(_, &a)| a == 0).map(|(n, _)| n.as_str())
    }

    /// Is there at least one ground term over this signature?
    pub fn has_ground_terms(&self) -> bool {
        self.constants().next().is_some()
    }
}

/// True iff `t` has no variables and every function symbol of `t` occurs in
/// `sig` with the same arity.
pub fn is_ground_over(t: &Term, sig: &Signature) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Func(name, args) => {
            sig.funcs.get(name) == Some(&args.len()) && args.iter().all(|a| is_ground_over(a, sig))
        }
    }
}

/// `hint` if no symbol of `sig` is named so, otherwise `hint` with the
/// smallest numeric suffix that is.
pub fn fresh_constant(sig: &Signature, hint: &str) -> String {
    fresh_constant_avoiding(sig, hint, &BTreeSet::new())
}

/// Like [`fresh_constant`], additionally avoiding the names in `reserved`
/// (typically the bound variable names of a sequent).
pub fn fresh_constant_avoiding(sig: &Signature, hint: &str, reserved: &BTreeSet<&str>) -> String {
    let taken = |n: &str| sig.mentions(n) || reserved.contains(n);
    if !taken(hint) {
        return hint.to_string();
    }
    (1..)
        .map(|i| format!("{hint}{i}"))
        .find(|n| !taken(n))
        .expect("unbounded suffix search")
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;
    use super::*;

    #[test]
    fn signature_skips_equality_and_variables() {
        let sig = Signature::of_formulas([&parse_formula("f(c) = c").unwrap()]).unwrap();
        assert!(sig.preds.is_empty());
        assert_eq!(sig.funcs, BTreeMap::from([("c".into(), 0), ("f".into(), 1)]));

        let sig = Signature::of_formulas([&parse_formula("forall x. P(x, g(x))").unwrap()]).unwrap();
        assert_eq!(sig.preds, BTreeMap::from([("P".into(), 2)]));
        assert_eq!(sig.funcs, BTreeMap::from([("g".into(), 1)]));
    }

    #[test]
    fn arity_conflict_across_formulas() {
        let a = parse_formula("P(a)").unwrap();
        let b = parse_formula("P(a,b)").unwrap();
        let err = Signature::of_formulas([&a, &b]).unwrap_err();
        assert_eq!(err.symbol, "P");
    }

    #[test]
    fn groundness() {
        let sig = Signature::of_formulas([&parse_formula("P(f(c))").unwrap()]).unwrap();
        assert!(is_ground_over(&Term::func("f", vec![Term::constant("c")]), &sig));
        assert!(!is_ground_over(&Term::var("x"), &sig));
        assert!(!is_ground_over(&Term::func("g", vec![Term::constant("c")]), &sig));
        // right name, wrong arity
        assert!(!is_ground_over(&Term::constant("f"), &sig));
    }

    #[test]
    fn fresh_names() {
        let empty = Signature::new();
        assert_eq!(fresh_constant(&empty, "c"), "c");
        let sig = Signature::of_formulas([&parse_formula("P(a, a1, b)").unwrap()]).unwrap();
        assert_eq!(fresh_constant(&sig, "a"), "a2");
        assert_eq!(fresh_constant(&sig, "P"), "P1");
        assert_eq!(fresh_constant_avoiding(&empty, "x", &BTreeSet::from(["x"])), "x1");
    }
}
