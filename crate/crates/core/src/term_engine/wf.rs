use super::error::TermError;
use super::term::{ArgValue, Payload, Term};
use crate::arity_core::{print_arity, Arity, Signature};

/// Variable discipline at one point of a term.
///
/// The base frame has `Free` context indices. The outer layer of a composite
/// opens a fresh frame whose variables are `Nested` inner values, themselves
/// read in the parent frame. Both kinds track how many scopes were opened
/// since the frame began.
#[derive(Clone, Copy)]
pub(crate) struct Frame<'a> {
    pub(crate) kind: FrameKind<'a>,
    pub(crate) depth: usize,
}

#[derive(Clone, Copy)]
pub(crate) enum FrameKind<'a> {
    Base { free: usize },
    Outer { inner: &'a Arity, parent: &'a Frame<'a> },
}

impl<'a> Frame<'a> {
    pub(crate) fn base(free: usize) -> Frame<'static> {
        Frame { kind: FrameKind::Base { free }, depth: 0 }
    }

    pub(crate) fn deeper(self) -> Frame<'a> {
        Frame { kind: self.kind, depth: self.depth + 1 }
    }

    pub(crate) fn outer<'b>(&'b self, inner: &'b Arity) -> Frame<'b> {
        Frame { kind: FrameKind::Outer { inner, parent: self }, depth: 0 }
    }
}

fn mismatch(expected: &Arity, found: &ArgValue) -> TermError {
    let found = match found {
        ArgValue::Term(_) => "a term",
        ArgValue::Unit => "unit",
        ArgValue::Tuple(_) => "a tuple",
        ArgValue::Scope(_) => "a scope",
        ArgValue::Outer(_) => "an outer layer",
        ArgValue::Variant(..) => "a variant",
    };
    TermError::ShapeMismatch { expected: print_arity(expected), found: found.to_string() }
}

pub(crate) fn check_term_in(sig: &Signature, t: &Term, f: &Frame<'_>) -> Result<(), TermError> {
    match t {
        Term::Var(Payload::Free(i)) => match f.kind {
            FrameKind::Base { free } if *i < free => Ok(()),
            FrameKind::Base { free } => Err(TermError::FreeOutOfRange { index: *i, size: free }),
            FrameKind::Outer { .. } => Err(TermError::FreeInOuter(*i)),
        },
        Term::Var(Payload::Bound(k)) if *k < f.depth => Ok(()),
        Term::Var(Payload::Bound(k)) => Err(TermError::BoundOutOfRange { level: *k, depth: f.depth }),
        Term::Var(Payload::Nested(v)) => match f.kind {
            FrameKind::Outer { inner, parent } => check_arg_in(sig, v, inner, parent),
            FrameKind::Base { .. } => Err(TermError::StrayNested),
        },
        Term::Op(name, args) => {
            let arity = sig.arity(name).ok_or_else(|| TermError::UnknownOp(name.clone()))?;
            check_arg_in(sig, args, arity, f)
        }
    }
}

pub(crate) fn check_arg_in(sig: &Signature, v: &ArgValue, shape: &Arity, f: &Frame<'_>) -> Result<(), TermError> {
    match (shape, v) {
        (Arity::Theta, ArgValue::Term(t)) => check_term_in(sig, t, f),
        (Arity::Terminal, ArgValue::Unit) => Ok(()),
        (Arity::Prod(factors), ArgValue::Tuple(items)) if factors.len() == items.len() => {
            factors.iter().zip(items).try_for_each(|(a, x)| check_arg_in(sig, x, a, f))
        }
        (Arity::Deriv(a), ArgValue::Scope(body)) => check_arg_in(sig, body, a, &f.deeper()),
        (Arity::Comp(a, b), ArgValue::Outer(w)) => check_arg_in(sig, w, a, &f.outer(b)),
        (Arity::Sum(_), ArgValue::Variant(tag, x)) => {
            let a = shape.variant(tag).ok_or_else(|| mismatch(shape, v))?;
            check_arg_in(sig, x, a, f)
        }
        _ => Err(mismatch(shape, v)),
    }
}

/// Checks that `t` is a well-scoped, shape-correct term over `sig` in a
/// context of `n` free variables.
pub fn check_term(t: &Term, sig: &Signature, n: usize) -> Result<(), TermError> {
    check_term_in(sig, t, &Frame::base(n))
}

pub fn check_arg(v: &ArgValue, shape: &Arity, sig: &Signature, n: usize) -> Result<(), TermError> {
    check_arg_in(sig, v, shape, &Frame::base(n))
}

pub fn well_formed(t: &Term, sig: &Signature, n: usize) -> bool {
    check_term(t, sig, n).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arity_core::{algebraic, derive_n};

    fn lam_join() -> Signature {
        Signature::new(
            "lj",
            vec![
                ("app", algebraic(&[0, 0])),
                ("abs", derive_n(Arity::Theta, 1)),
                ("join", Arity::comp(Arity::Theta, Arity::Theta)),
            ],
        )
    }

    fn abs(body: Term) -> Term {
        Term::op("abs", ArgValue::scope(ArgValue::Term(body)))
    }

    fn join(outer: Term) -> Term {
        Term::op("join", ArgValue::outer(ArgValue::Term(outer)))
    }

    #[test]
    fn variables() {
        let sig = lam_join();
        assert!(well_formed(&Term::free(0), &sig, 1));
        assert!(!well_formed(&Term::free(1), &sig, 1));
        assert!(!well_formed(&Term::bound(0), &sig, 3));
        assert!(well_formed(&abs(Term::bound(0)), &sig, 0));
        assert!(!well_formed(&abs(Term::bound(1)), &sig, 0));
    }

    #[test]
    fn shapes() {
        let sig = lam_join();
        let bad = Term::op("app", ArgValue::Term(Term::free(0)));
        assert!(matches!(check_term(&bad, &sig, 1), Err(TermError::ShapeMismatch { .. })));
        let short = Term::op("app", ArgValue::tuple_of_terms([Term::free(0)]));
        assert!(check_term(&short, &sig, 1).is_err());
        let unknown = Term::op("zap", ArgValue::Unit);
        assert_eq!(check_term(&unknown, &sig, 0), Err(TermError::UnknownOp("zap".into())));
    }

    #[test]
    fn composite_frames() {
        let sig = lam_join();
        let ok = join(Term::nested(ArgValue::Term(Term::free(0))));
        assert!(well_formed(&ok, &sig, 1));
        assert!(!well_formed(&ok, &sig, 0));
        // outer layers only see nested payloads and their own binders
        assert_eq!(check_term(&join(Term::free(0)), &sig, 1), Err(TermError::FreeInOuter(0)));
        assert!(well_formed(&join(abs(Term::bound(0))), &sig, 0));
        // a nested payload reads the ambient scopes, not the outer layer's
        let under = abs(join(Term::nested(ArgValue::Term(Term::bound(0)))));
        assert!(well_formed(&under, &sig, 0));
        let wrong = join(abs(Term::nested(ArgValue::Term(Term::bound(0)))));
        assert!(!well_formed(&wrong, &sig, 0));
        assert_eq!(check_term(&Term::nested(ArgValue::Term(Term::free(0))), &sig, 1), Err(TermError::StrayNested));
    }

    #[test]
    fn sums() {
        let sig = Signature::new(
            "opt",
            vec![("m", Arity::Sum(vec![("none".into(), Arity::Terminal), ("some".into(), Arity::Theta)]))],
        );
        let t = Term::op("m", ArgValue::variant("some", ArgValue::Term(Term::free(0))));
        assert!(well_formed(&t, &sig, 1));
        let t = Term::op("m", ArgValue::variant("other", ArgValue::Unit));
        assert!(!well_formed(&t, &sig, 1));
    }
}
