use super::{Formula, NodePath, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("substituted term `{0}` is not ground")]
    NotGround(Term),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("path {path:?} does not address a term")]
pub struct PathError {
    pub path: NodePath,
}

fn subst_term(t: &Term, var: &str, by: &Term) -> Term {
    match t {
        Term::Var(v) if v == var => by.clone(),
        Term::Var(_) => t.clone(),
        Term::Func(name, args) => Term::Func(name.clone(), args.iter().map(|a| subst_term(a, var, by)).collect()),
    }
}

fn subst_formula(f: &Formula, var: &str, by: &Term) -> Formula {
    let sub = |g: &Formula| Box::new(subst_formula(g, var, by));
    match f {
        Formula::Pred(name, args) => Formula::Pred(name.clone(), args.iter().map(|a| subst_term(a, var, by)).collect()),
        Formula::Eq(l, r) => Formula::Eq(subst_term(l, var, by), subst_term(r, var, by)),
        Formula::Not(g) => Formula::Not(sub(g)),
        Formula::And(l, r) => Formula::And(sub(l), sub(r)),
        Formula::Or(l, r) => Formula::Or(sub(l), sub(r)),
        Formula::Imp(l, r) => Formula::Imp(sub(l), sub(r)),
        // a rebinding quantifier shadows `var`
        Formula::Forall(v, _) | Formula::Exists(v, _) if v == var => f.clone(),
        Formula::Forall(v, g) => Formula::Forall(v.clone(), sub(g)),
        Formula::Exists(v, g) => Formula::Exists(v.clone(), sub(g)),
    }
}

/// Replaces every free occurrence of `var` in `f` by the ground term `t`.
/// Since `t` has no variables nothing can be captured.
pub fn substitute(f: &Formula, var: &str, t: &Term) -> Result<Formula, SubstError> {
    if !t.is_ground() {
        return Err(SubstError::NotGround(t.clone()));
    }
    Ok(subst_formula(f, var, t))
}

fn replace_in_term(t: &Term, path: &[usize], by: &Term) -> Option<Term> {
    match path.split_first() {
        None => Some(by.clone()),
        Some((&i, rest)) => match t {
            Term::Var(_) => None,
            Term::Func(name, args) => {
                let new = replace_in_term(args.get(i)?, rest, by)?;
                let mut args = args.clone();
                args[i] = new;
                Some(Term::Func(name.clone(), args))
            }
        },
    }
}

fn replace_in_formula(f: &Formula, path: &[usize], by: &Term) -> Option<Formula> {
    let (&i, rest) = path.split_first()?;
    Some(match f {
        Formula::Pred(name, args) => {
            let new = replace_in_term(args.get(i)?, rest, by)?;
            let mut args = args.clone();
            args[i] = new;
            Formula::Pred(name.clone(), args)
        }
        Formula::Eq(l, r) => match i {
            0 => Formula::Eq(replace_in_term(l, rest, by)?, r.clone()),
            1 => Formula::Eq(l.clone(), replace_in_term(r, rest, by)?),
            _ => return None,
        },
        Formula::Not(g) if i == 0 => Formula::not(replace_in_formula(g, rest, by)?),
        Formula::Forall(v, g) if i == 0 => Formula::forall(v.clone(), replace_in_formula(g, rest, by)?),
        Formula::Exists(v, g) if i == 0 => Formula::exists(v.clone(), replace_in_formula(g, rest, by)?),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            let (l, r) = match i {
                0 => (replace_in_formula(l, rest, by)?, (**r).clone()),
                1 => ((**l).clone(), replace_in_formula(r, rest, by)?),
                _ => return None,
            };
            match f {
                Formula::And(..) => Formula::and(l, r),
                Formula::Or(..) => Formula::or(l, r),
                _ => Formula::imp(l, r),
            }
        }
        _ => return None,
    })
}

/// Replaces the single term occurrence addressed by `path`.
pub fn replace_at(f: &Formula, path: &[usize], t: &Term) -> Result<Formula, PathError> {
    replace_in_formula(f, path, t).ok_or_else(|| PathError { path: path.to_vec() })
}
