//! Semantic oracles: truth tables for propositional sequents and exhaustive
//! small-model search for first-order ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Signature, SignatureError, Term};
use crate::sequent::Sequent;

/// Interpretations enumerated by [`falsify_small`] before giving up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("not propositional: `{0}`")]
    NotPropositional(String),
    #[error("sequent has free variables")]
    NotClosed,
    #[error(transparent)]
    Signature(#[from] SignatureError),
    /// Searching domains of size `at_size` would exceed the budget. All
    /// sizes up to `explored_up_to` were searched without a countermodel.
    #[error("bound exceeded at domain size {at_size} ({interpretations} interpretations); searched sizes up to {explored_up_to}")]
    BoundExceeded { at_size: usize, explored_up_to: usize, interpretations: u128 },
}

fn atoms<'a>(f: &'a Formula, out: &mut BTreeSet<&'a str>) -> Result<(), OracleError> {
    match f {
        Formula::Pred(p, args) if args.is_empty() => {
            out.insert(p);
            Ok(())
        }
        Formula::Not(g) => atoms(g, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            atoms(a, out)?;
            atoms(b, out)
        }
        _ => Err(OracleError::NotPropositional(f.to_string())),
    }
}

fn eval_prop(f: &Formula, v: &BTreeMap<&str, bool>) -> bool {
    match f {
        Formula::Pred(p, _) => v[p.as_str()],
        Formula::Not(g) => !eval_prop(g, v),
        Formula::And(a, b) => eval_prop(a, v) && eval_prop(b, v),
        Formula::Or(a, b) => eval_prop(a, v) || eval_prop(b, v),
        Formula::Imp(a, b) => !eval_prop(a, v) || eval_prop(b, v),
        _ => unreachable!("checked by atoms"),
    }
}

/// Whether every assignment making all of Γ true makes some member of Δ true.
pub fn prop_valid(s: &Sequent) -> Result<bool, OracleError> {
    let mut names = BTreeSet::new();
    for f in s.formulas() {
        atoms(f, &mut names)?;
    }
    let names: Vec<&str> = names.into_iter().collect();
    for bits in 0u64..1 << names.len() {
        let v: BTreeMap<&str, bool> = names.iter().enumerate().map(|(i, &n)| (n, bits >> i & 1 == 1)).collect();
        if s.antecedent.iter().all(|f| eval_prop(f, &v)) && !s.succedent.iter().any(|f| eval_prop(f, &v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite structure over the domain `0..size`. Tables are indexed by the
/// arguments read as a base-`size` number, first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub size: usize,
    pub funcs: BTreeMap<String, Vec<usize>>,
    pub preds: BTreeMap<String, Vec<bool>>,
}

fn index(size: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

impl Model {
    pub fn term(&self, t: &Term, env: &BTreeMap<&str, usize>) -> usize {
        match t {
            Term::Var(x) => env[x.as_str()],
            Term::Func(g, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, env)).collect();
                self.funcs[g][index(self.size, &vals)]
            }
        }
    }

    pub fn holds<'a>(&self, f: &'a Formula, env: &mut BTreeMap<&'a str, usize>) -> bool {
        match f {
            Formula::Pred(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, env)).collect();
                self.preds[p][index(self.size, &vals)]
            }
            Formula::Eq(l, r) => self.term(l, env) == self.term(r, env),
            Formula::Not(g) => !self.holds(g, env),
            Formula::And(a, b) => self.holds(a, env) && self.holds(b, env),
            Formula::Or(a, b) => self.holds(a, env) || self.holds(b, env),
            Formula::Imp(a, b) => !self.holds(a, env) || self.holds(b, env),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let saved = env.get(x.as_str()).copied();
                let want = matches!(f, Formula::Forall(..));
                let mut result = want;
                for d in 0..self.size {
                    env.insert(x, d);
                    if self.holds(body, env) != want {
                        result = !want;
                        break;
                    }
                }
                match saved {
                    Some(v) => env.insert(x, v),
                    None => env.remove(x.as_str()),
                };
                result
            }
        }
    }

    /// All of Γ true and all of Δ false.
    pub fn falsifies(&self, s: &Sequent) -> bool {
        let mut env = BTreeMap::new();
        s.antecedent.iter().all(|f| self.holds(f, &mut env)) && !s.succedent.iter().any(|f| self.holds(f, &mut env))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "domain {{0..{}}}", self.size - 1)?;
        for (g, t) in &self.funcs {
            write!(f, "; {g} = {t:?}")?;
        }
        for (p, t) in &self.preds {
            let t: Vec<u8> = t.iter().map(|&b| b as u8).collect();
            write!(f, "; {p} = {t:?}")?;
        }
        Ok(())
    }
}

// Formulas compiled against symbol and variable slots so the inner loop
// avoids string lookups.
enum CTerm {
    Var(usize),
    Func(usize, Vec<CTerm>),
}

enum CForm {
    Pred(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    Not(Box<CForm>),
    And(Box<CForm>, Box<CForm>),
    Or(Box<CForm>, Box<CForm>),
    Imp(Box<CForm>, Box<CForm>),
    Quant(bool, usize, Box<CForm>),
}

struct Compiler<'a> {
    funcs: &'a BTreeMap<&'a str, usize>,
    preds: &'a BTreeMap<&'a str, usize>,
    scope: Vec<&'a str>,
}

impl<'a> Compiler<'a> {
    fn term(&self, t: &'a Term) -> Result<CTerm, OracleError> {
        Ok(match t {
            Term::Var(x) => CTerm::Var(self.scope.iter().rposition(|v| v == x).ok_or(OracleError::NotClosed)?),
            Term::Func(g, args) => {
                CTerm::Func(self.funcs[g.as_str()], args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?)
            }
        })
    }

    fn formula(&mut self, f: &'a Formula) -> Result<CForm, OracleError> {
        let b = |c: CForm| Box::new(c);
        Ok(match f {
            Formula::Pred(p, args) => {
                CForm::Pred(self.preds[p.as_str()], args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?)
            }
            Formula::Eq(l, r) => CForm::Eq(self.term(l)?, self.term(r)?),
            Formula::Not(g) => CForm::Not(b(self.formula(g)?)),
            Formula::And(x, y) => CForm::And(b(self.formula(x)?), b(self.formula(y)?)),
            Formula::Or(x, y) => CForm::Or(b(self.formula(x)?), b(self.formula(y)?)),
            Formula::Imp(x, y) => CForm::Imp(b(self.formula(x)?), b(self.formula(y)?)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                self.scope.push(x);
                let slot = self.scope.len() - 1;
                let inner = self.formula(body);
                self.scope.pop();
                CForm::Quant(matches!(f, Formula::Forall(..)), slot, b(inner?))
            }
        })
    }
}

struct Interp<'a> {
    size: usize,
    /// Per symbol: offset of its table in `digits`.
    funcs: &'a [usize],
    preds: &'a [usize],
    digits: &'a [usize],
}

impl Interp<'_> {
    fn table(&self, offset: usize, args: impl Iterator<Item = usize>) -> usize {
        self.digits[offset + args.fold(0, |acc, a| acc * self.size + a)]
    }

    fn term(&self, t: &CTerm, env: &[usize]) -> usize {
        match t {
            CTerm::Var(i) => env[*i],
            CTerm::Func(g, args) => self.table(self.funcs[*g], args.iter().map(|a| self.term(a, env))),
        }
    }

    fn holds(&self, f: &CForm, env: &mut Vec<usize>) -> bool {
        match f {
            CForm::Pred(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, env)).collect();
                self.table(self.preds[*p], vals.into_iter()) == 1
            }
            CForm::Eq(l, r) => self.term(l, env) == self.term(r, env),
            CForm::Not(g) => !self.holds(g, env),
            CForm::And(a, b) => self.holds(a, env) && self.holds(b, env),
            CForm::Or(a, b) => self.holds(a, env) || self.holds(b, env),
            CForm::Imp(a, b) => !self.holds(a, env) || self.holds(b, env),
            CForm::Quant(all, slot, body) => {
                env.truncate(*slot);
                env.push(0);
                let mut result = *all;
                for d in 0..self.size {
                    env[*slot] = d;
                    if self.holds(body, env) != *all {
                        result = !*all;
                        break;
                    }
                }
                env.truncate(*slot);
                result
            }
        }
    }
}

/// Number of interpretations of `sig` over a domain of `size` elements.
pub fn interpretation_count(sig: &Signature, size: usize) -> u128 {
    let k = size as u128;
    let mut total: u128 = 1;
    for &a in sig.funcs.values() {
        let cells = k.checked_pow(a as u32).unwrap_or(u128::MAX);
        total = total.saturating_mul(k.checked_pow(cells.min(u32::MAX as u128) as u32).unwrap_or(u128::MAX));
    }
    for &a in sig.preds.values() {
        let cells = k.checked_pow(a as u32).unwrap_or(u128::MAX);
        total = total.saturating_mul(2u128.checked_pow(cells.min(u32::MAX as u128) as u32).unwrap_or(u128::MAX));
    }
    total
}

/// [`falsify_small_with_budget`] with [`DEFAULT_BUDGET`].
pub fn falsify_small(s: &Sequent, max_domain: usize) -> Result<Option<Model>, OracleError> {
    falsify_small_with_budget(s, max_domain, DEFAULT_BUDGET)
}

/// Searches every structure with 1 to `max_domain` elements for one that
/// makes Γ true and Δ false. Fails with `BoundExceeded` rather than
/// skipping a domain size it cannot afford.
pub fn falsify_small_with_budget(s: &Sequent, max_domain: usize, budget: u64) -> Result<Option<Model>, OracleError> {
    if !s.is_closed() {
        return Err(OracleError::NotClosed);
    }
    let sig = s.signature()?;
    let fnames: BTreeMap<&str, usize> = sig.funcs.keys().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let pnames: BTreeMap<&str, usize> = sig.preds.keys().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut c = Compiler { funcs: &fnames, preds: &pnames, scope: Vec::new() };
    let gamma = s.antecedent.iter().map(|f| c.formula(f)).collect::<Result<Vec<_>, _>>()?;
    let delta = s.succedent.iter().map(|f| c.formula(f)).collect::<Result<Vec<_>, _>>()?;

    let mut spent: u128 = 0;
    for size in 1..=max_domain {
        let count = interpretation_count(&sig, size);
        if spent.saturating_add(count) > budget as u128 {
            return Err(OracleError::BoundExceeded { at_size: size, explored_up_to: size - 1, interpretations: count });
        }
        spent += count;

        let mut radix = Vec::new();
        let mut layout = |arities: &BTreeMap<String, usize>, base: usize| -> Vec<(usize, usize)> {
            arities
                .values()
                .map(|&a| {
                    let offset = radix.len();
                    radix.extend(std::iter::repeat_n(base, size.pow(a as u32)));
                    (a, offset)
                })
                .collect()
        };
        let funcs = layout(&sig.funcs, size);
        let preds = layout(&sig.preds, 2);
        let mut digits = vec![0usize; radix.len()];
        let mut env = Vec::new();
        loop {
            let fo: Vec<usize> = funcs.iter().map(|&(_, o)| o).collect();
            let po: Vec<usize> = preds.iter().map(|&(_, o)| o).collect();
            let it = Interp { size, funcs: &fo, preds: &po, digits: &digits };
            if gamma.iter().all(|f| it.holds(f, &mut env)) && !delta.iter().any(|f| it.holds(f, &mut env)) {
                return Ok(Some(to_model(&sig, size, &funcs, &preds, &digits)));
            }
            // odometer step
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < radix[i] {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    Ok(None)
}

fn to_model(sig: &Signature, size: usize, funcs: &[(usize, usize)], preds: &[(usize, usize)], d: &[usize]) -> Model {
    let cells = |a: usize| size.pow(a as u32);
    Model {
        size,
        funcs: sig.funcs.keys().zip(funcs).map(|(n, &(a, o))| (n.clone(), d[o..o + cells(a)].to_vec())).collect(),
        preds: sig
            .preds
            .keys()
            .zip(preds)
            .map(|(n, &(a, o))| (n.clone(), d[o..o + cells(a)].iter().map(|&x| x == 1).collect()))
            .collect(),
    }
}
