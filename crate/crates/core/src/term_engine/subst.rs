//! Simultaneous substitution and its relatives.
//!
//! `Free` indices are never shifted: entering a scope only raises the number
//! of `Bound` levels that pass through untouched. A substituted term is
//! well-formed at scope depth 0, so it can be dropped under any number of
//! binders as is. The outer layer of a composite is never touched by a
//! substitution of the ambient context; only its nested payloads are.

use std::sync::Arc;

use super::error::TermError;
use super::term::{ArgValue, Payload, Term};
use super::wf::check_term;
use crate::arity_core::Signature;

/// Assigns a term in context `dst` to each free index below `src`, and has
/// been pushed under `scopes` binders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    dst: usize,
    scopes: usize,
    terms: Arc<[Term]>,
}

impl Substitution {
    pub fn new(dst: usize, terms: Vec<Term>) -> Substitution {
        Substitution { dst, scopes: 0, terms: terms.into() }
    }

    /// Like [`Substitution::new`], checking every image is well-formed at `dst`.
    pub fn checked(sig: &Signature, dst: usize, terms: Vec<Term>) -> Result<Substitution, TermError> {
        for t in &terms {
            check_term(t, sig, dst)?;
        }
        Ok(Substitution::new(dst, terms))
    }

    pub fn identity(n: usize) -> Substitution {
        Substitution::new(n, (0..n).map(Term::free).collect())
    }

    pub fn renaming(map: &[usize], dst: usize) -> Substitution {
        Substitution::new(dst, map.iter().map(|&j| Term::free(j)).collect())
    }

    pub fn src(&self) -> usize {
        self.terms.len()
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn scopes(&self) -> usize {
        self.scopes
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn get(&self, i: usize) -> Option<&Term> {
        self.terms.get(i)
    }

    /// Pushes the substitution under one more binder: the new bound variable
    /// maps to itself and every assignment is reused unchanged.
    pub fn lift(&self) -> Substitution {
        self.lift_n(1)
    }

    pub fn lift_n(&self, k: usize) -> Substitution {
        Substitution { dst: self.dst, scopes: self.scopes + k, terms: self.terms.clone() }
    }

    /// Image of one variable payload.
    pub fn apply(&self, p: &Payload) -> Result<Term, TermError> {
        match p {
            Payload::Free(i) => {
                self.terms.get(*i).cloned().ok_or(TermError::FreeOutOfRange { index: *i, size: self.src() })
            }
            Payload::Bound(k) if *k < self.scopes => Ok(Term::bound(*k)),
            Payload::Bound(k) => Err(TermError::BoundOutOfRange { level: *k, depth: self.scopes }),
            Payload::Nested(_) => Err(TermError::StrayNested),
        }
    }

    /// Kleisli composite `i ↦ bind(self(i), g)`.
    pub fn then(&self, g: &Substitution) -> Result<Substitution, TermError> {
        if self.dst != g.src() {
            return Err(TermError::ContextMismatch { expected: g.src(), found: self.dst });
        }
        let terms = self.terms.iter().map(|t| bind(t, g)).collect::<Result<Vec<_>, _>>()?;
        Ok(Substitution::new(g.dst, terms))
    }
}

pub fn bind(t: &Term, s: &Substitution) -> Result<Term, TermError> {
    match t {
        Term::Var(p) => s.apply(p),
        Term::Op(name, args) => Ok(Term::Op(name.clone(), Box::new(bind_arg(args, s)?))),
    }
}

/// Substitution at an argument shape, one rule per arity constructor.
pub fn bind_arg(v: &ArgValue, s: &Substitution) -> Result<ArgValue, TermError> {
    Ok(match v {
        ArgValue::Term(t) => ArgValue::Term(bind(t, s)?),
        ArgValue::Unit => ArgValue::Unit,
        ArgValue::Tuple(items) => ArgValue::Tuple(items.iter().map(|x| bind_arg(x, s)).collect::<Result<_, _>>()?),
        ArgValue::Scope(body) => ArgValue::scope(bind_arg(body, &s.lift())?),
        ArgValue::Outer(w) => ArgValue::outer(map_nested(w, &mut |x| bind_arg(x, s))?),
        ArgValue::Variant(tag, x) => ArgValue::variant(tag.clone(), bind_arg(x, s)?),
    })
}

/// Renames free variables through `map` into a context of size `dst`.
/// Bound levels are left alone, also under scopes.
pub fn rename(t: &Term, map: &[usize], dst: usize) -> Result<Term, TermError> {
    match t {
        Term::Var(Payload::Free(i)) => {
            let to = *map.get(*i).ok_or(TermError::FreeOutOfRange { index: *i, size: map.len() })?;
            if to >= dst {
                return Err(TermError::RenameOutOfRange { from: *i, to, size: dst });
            }
            Ok(Term::free(to))
        }
        Term::Var(Payload::Bound(k)) => Ok(Term::bound(*k)),
        Term::Var(Payload::Nested(_)) => Err(TermError::StrayNested),
        Term::Op(name, args) => Ok(Term::Op(name.clone(), Box::new(rename_arg(args, map, dst)?))),
    }
}

pub fn rename_arg(v: &ArgValue, map: &[usize], dst: usize) -> Result<ArgValue, TermError> {
    Ok(match v {
        ArgValue::Term(t) => ArgValue::Term(rename(t, map, dst)?),
        ArgValue::Unit => ArgValue::Unit,
        ArgValue::Tuple(items) => {
            ArgValue::Tuple(items.iter().map(|x| rename_arg(x, map, dst)).collect::<Result<_, _>>()?)
        }
        ArgValue::Scope(body) => ArgValue::scope(rename_arg(body, map, dst)?),
        ArgValue::Outer(w) => ArgValue::outer(map_nested(w, &mut |x| rename_arg(x, map, dst))?),
        ArgValue::Variant(tag, x) => ArgValue::variant(tag.clone(), rename_arg(x, map, dst)?),
    })
}

/// Callback for [`map_vars`]: a payload of the traversed frame together with
/// the number of scopes opened since the frame began.
pub type VarFn<'f> = dyn FnMut(&Payload, usize) -> Result<Term, TermError> + 'f;

/// Rebuilds `t`, replacing each variable of its frame by `on_var`.
///
/// Variables of outer layers met along the way belong to other frames and
/// are kept, but the nested payloads inside those layers are read in the
/// current frame and traversed too.
pub fn map_vars(t: &Term, depth: usize, on_var: &mut VarFn<'_>) -> Result<Term, TermError> {
    match t {
        Term::Var(p) => on_var(p, depth),
        Term::Op(name, args) => Ok(Term::Op(name.clone(), Box::new(map_vars_arg(args, depth, on_var)?))),
    }
}

pub fn map_vars_arg(v: &ArgValue, depth: usize, on_var: &mut VarFn<'_>) -> Result<ArgValue, TermError> {
    Ok(match v {
        ArgValue::Term(t) => ArgValue::Term(map_vars(t, depth, on_var)?),
        ArgValue::Unit => ArgValue::Unit,
        ArgValue::Tuple(items) => {
            ArgValue::Tuple(items.iter().map(|x| map_vars_arg(x, depth, on_var)).collect::<Result<_, _>>()?)
        }
        ArgValue::Scope(body) => ArgValue::scope(map_vars_arg(body, depth + 1, on_var)?),
        ArgValue::Outer(w) => ArgValue::outer(map_nested(w, &mut |x| map_vars_arg(x, depth, &mut *on_var))?),
        ArgValue::Variant(tag, x) => ArgValue::variant(tag.clone(), map_vars_arg(x, depth, on_var)?),
    })
}

/// Applies `g` to every nested payload of an outer layer, leaving the layer's
/// own structure and binders untouched.
pub fn map_nested(
    outer: &ArgValue,
    g: &mut dyn FnMut(&ArgValue) -> Result<ArgValue, TermError>,
) -> Result<ArgValue, TermError> {
    map_vars_arg(outer, 0, &mut |p, d| match p {
        Payload::Nested(x) => Ok(Term::nested(g(x)?)),
        Payload::Bound(k) if *k < d => Ok(Term::bound(*k)),
        Payload::Bound(k) => Err(TermError::BoundOutOfRange { level: *k, depth: d }),
        Payload::Free(i) => Err(TermError::FreeInOuter(*i)),
    })
}

/// True when no `Bound` level escapes the scopes opened inside `t`.
pub fn bound_closed(t: &Term) -> bool {
    map_vars(t, 0, &mut |p, d| match p {
        Payload::Bound(k) if *k >= d => Err(TermError::BoundOutOfRange { level: *k, depth: d }),
        _ => Ok(Term::bound(0)),
    })
    .is_ok()
}

/// Monad multiplication: `t` is the outer term of a `T . T` value and every
/// nested payload is a term; each payload is spliced in place.
pub fn flatten(t: &Term) -> Result<Term, TermError> {
    map_vars(t, 0, &mut |p, d| match p {
        Payload::Nested(x) => match x.as_ref() {
            ArgValue::Term(u) if bound_closed(u) => Ok(u.clone()),
            ArgValue::Term(u) => Err(TermError::BoundOutOfRange { level: u.depth(), depth: 0 }),
            _ => Err(TermError::PayloadNotTerm),
        },
        Payload::Bound(k) if *k < d => Ok(Term::bound(*k)),
        Payload::Bound(k) => Err(TermError::BoundOutOfRange { level: *k, depth: d }),
        Payload::Free(i) => Err(TermError::FreeInOuter(*i)),
    })
}

/// [`flatten`] on a `T . T` argument value.
pub fn flatten_arg(v: &ArgValue) -> Result<Term, TermError> {
    match v {
        ArgValue::Outer(w) => match w.as_ref() {
            ArgValue::Term(t) => flatten(t),
            _ => Err(TermError::PayloadNotTerm),
        },
        _ => Err(TermError::PayloadNotTerm),
    }
}

/// `t ↦ Var(Nested t)`: the unit placed as the new outer layer.
pub fn eta_outer(t: &Term) -> ArgValue {
    ArgValue::outer(ArgValue::Term(Term::nested(ArgValue::Term(t.clone()))))
}

/// The unit placed inside: every free variable of `t` becomes a nested
/// variable term, and `t` itself is the outer layer.
pub fn eta_inner(t: &Term) -> Result<ArgValue, TermError> {
    let outer = map_vars(t, 0, &mut |p, d| match p {
        Payload::Free(i) => Ok(Term::nested(ArgValue::Term(Term::free(*i)))),
        Payload::Bound(k) if *k < d => Ok(Term::bound(*k)),
        Payload::Bound(k) => Err(TermError::BoundOutOfRange { level: *k, depth: d }),
        Payload::Nested(_) => Err(TermError::StrayNested),
    })?;
    Ok(ArgValue::outer(ArgValue::Term(outer)))
}

/// Turns the content of a scope into a value in a context one larger: the
/// scope's variable becomes `Free(fresh)`.
pub fn open_arg(body: &ArgValue, fresh: usize) -> Result<ArgValue, TermError> {
    map_vars_arg(body, 0, &mut |p, d| match p {
        Payload::Bound(k) if *k < d => Ok(Term::bound(*k)),
        Payload::Bound(k) if *k == d => Ok(Term::free(fresh)),
        Payload::Bound(k) => Ok(Term::bound(k - 1)),
        Payload::Free(i) => Ok(Term::free(*i)),
        Payload::Nested(_) => Err(TermError::StrayNested),
    })
}

/// Inverse of [`open_arg`]: `Free(index)` becomes the variable of a new
/// enclosing scope.
pub fn close_arg(v: &ArgValue, index: usize) -> Result<ArgValue, TermError> {
    map_vars_arg(v, 0, &mut |p, d| match p {
        Payload::Free(i) if *i == index => Ok(Term::bound(d)),
        Payload::Free(i) => Ok(Term::free(*i)),
        Payload::Bound(k) if *k < d => Ok(Term::bound(*k)),
        Payload::Bound(k) => Ok(Term::bound(k + 1)),
        Payload::Nested(_) => Err(TermError::StrayNested),
    })
}

/// Replaces the nested payloads of an outer layer, left to right and depth
/// first, by `Free(0)`, `Free(1)`, ...; returns the resulting base-frame value
/// together with the payloads in that order.
pub fn extract_nested(outer: &ArgValue) -> Result<(ArgValue, Vec<ArgValue>), TermError> {
    let mut payloads = Vec::new();
    let base = map_vars_arg(outer, 0, &mut |p, d| match p {
        Payload::Nested(x) => {
            payloads.push(x.as_ref().clone());
            Ok(Term::free(payloads.len() - 1))
        }
        Payload::Bound(k) if *k < d => Ok(Term::bound(*k)),
        Payload::Bound(k) => Err(TermError::BoundOutOfRange { level: *k, depth: d }),
        Payload::Free(i) => Err(TermError::FreeInOuter(*i)),
    })?;
    Ok((base, payloads))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs(body: Term) -> Term {
        Term::op("abs", ArgValue::scope(ArgValue::Term(body)))
    }

    fn app(f: Term, a: Term) -> Term {
        Term::op("app", ArgValue::tuple_of_terms([f, a]))
    }

    fn join(outer: Term) -> Term {
        Term::op("join", ArgValue::outer(ArgValue::Term(outer)))
    }

    fn nest(t: Term) -> Term {
        Term::nested(ArgValue::Term(t))
    }

    #[test]
    fn unit_laws_on_examples() {
        let u = app(Term::free(1), abs(Term::bound(0)));
        let s = Substitution::new(2, vec![u.clone()]);
        assert_eq!(bind(&Term::free(0), &s).unwrap(), u);
        let t = abs(app(Term::bound(0), Term::free(1)));
        assert_eq!(bind(&t, &Substitution::identity(2)).unwrap(), t);
    }

    #[test]
    fn substitution_under_binders_does_not_capture() {
        // (\x. x y)[y := x0]  with the outer x0 free
        let t = abs(app(Term::bound(0), Term::free(0)));
        let s = Substitution::new(1, vec![Term::free(0)]);
        assert_eq!(bind(&t, &s).unwrap(), t);
        let s = Substitution::new(1, vec![abs(Term::bound(0))]);
        assert_eq!(bind(&t, &s).unwrap(), abs(app(Term::bound(0), abs(Term::bound(0)))));
    }

    #[test]
    fn lift_examples() {
        let id = Substitution::identity(3);
        assert_eq!(id.lift(), Substitution::identity(3).lift_n(1));
        assert_eq!(id.lift().apply(&Payload::Bound(0)).unwrap(), Term::bound(0));
        let s = Substitution::new(1, vec![abs(Term::bound(0)), Term::free(0)]);
        assert_eq!(s.lift().lift(), s.lift_n(2));
        assert_eq!(s.lift().apply(&Payload::Free(0)).unwrap(), abs(Term::bound(0)));
        assert!(s.apply(&Payload::Bound(0)).is_err());
    }

    #[test]
    fn bind_enters_only_nested_payloads() {
        let u = app(Term::free(0), Term::free(0));
        let t = join(nest(Term::free(0)));
        let s = Substitution::new(1, vec![u.clone()]);
        assert_eq!(bind(&t, &s).unwrap(), join(nest(u)));
        // outer binders are untouched
        let t = join(abs(app(Term::bound(0), nest(Term::free(0)))));
        let out = bind(&t, &Substitution::new(1, vec![abs(Term::bound(0))])).unwrap();
        assert_eq!(out, join(abs(app(Term::bound(0), nest(abs(Term::bound(0)))))));
    }

    #[test]
    fn rename_examples() {
        assert_eq!(rename(&Term::free(0), &[1, 0], 2).unwrap(), Term::free(1));
        let t = abs(Term::bound(0));
        assert_eq!(rename(&t, &[], 0).unwrap(), t);
        let t = join(nest(Term::free(0)));
        assert_eq!(rename(&t, &[1], 2).unwrap(), join(nest(Term::free(1))));
        assert!(matches!(rename(&Term::free(0), &[3], 2), Err(TermError::RenameOutOfRange { .. })));
        assert!(rename(&Term::free(2), &[0], 1).is_err());
    }

    #[test]
    fn flatten_examples() {
        let u = abs(Term::bound(0));
        let v = Term::free(1);
        assert_eq!(flatten(&nest(u.clone())).unwrap(), u);
        assert_eq!(flatten(&app(nest(u.clone()), nest(v.clone()))).unwrap(), app(u.clone(), v.clone()));
        let t = abs(app(Term::bound(0), nest(Term::free(0))));
        assert_eq!(flatten(&t).unwrap(), abs(app(Term::bound(0), Term::free(0))));
        assert_eq!(flatten(&nest(Term::bound(0))), Err(TermError::BoundOutOfRange { level: 0, depth: 0 }));
        assert_eq!(flatten(&Term::nested(ArgValue::Unit)), Err(TermError::PayloadNotTerm));
        assert_eq!(flatten(&Term::free(0)), Err(TermError::FreeInOuter(0)));
    }

    #[test]
    fn eta_wrappers_are_sections_of_flatten() {
        let t = abs(app(Term::bound(0), Term::free(1)));
        assert_eq!(flatten_arg(&eta_outer(&t)).unwrap(), t);
        assert_eq!(flatten_arg(&eta_inner(&t).unwrap()).unwrap(), t);
        assert_eq!(
            eta_inner(&t).unwrap(),
            ArgValue::outer(ArgValue::Term(abs(app(Term::bound(0), nest(Term::free(1))))))
        );
    }

    #[test]
    fn open_and_close() {
        let body = ArgValue::Term(app(Term::bound(0), abs(app(Term::bound(0), Term::bound(1)))));
        let opened = open_arg(&body, 2).unwrap();
        assert_eq!(opened, ArgValue::Term(app(Term::free(2), abs(app(Term::bound(0), Term::free(2))))));
        assert_eq!(close_arg(&opened, 2).unwrap(), body);
    }

    #[test]
    fn extraction_order() {
        let outer = ArgValue::Term(app(nest(Term::free(3)), abs(app(Term::bound(0), nest(Term::free(1))))));
        let (base, payloads) = extract_nested(&outer).unwrap();
        assert_eq!(base, ArgValue::Term(app(Term::free(0), abs(app(Term::bound(0), Term::free(1))))));
        assert_eq!(payloads, vec![ArgValue::Term(Term::free(3)), ArgValue::Term(Term::free(1))]);
    }

    #[test]
    fn composite_substitution() {
        let f = Substitution::new(2, vec![app(Term::free(0), Term::free(1))]);
        let g = Substitution::new(0, vec![abs(Term::bound(0)), abs(abs(Term::bound(1)))]);
        let fg = f.then(&g).unwrap();
        assert_eq!(fg.src(), 1);
        assert_eq!(fg.get(0).unwrap(), &app(abs(Term::bound(0)), abs(abs(Term::bound(1)))));
        assert!(g.then(&f).is_err());
    }
}
