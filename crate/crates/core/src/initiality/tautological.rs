use super::eval::{eval, EvalError, Representation, TArg, TargetMonad};
use crate::arity_core::{Signature, SignatureInclusion};
use crate::term_engine::{bind, close_arg, map_vars_arg, ArgValue, Payload, Substitution, Term, TermError};

/// The syntax as a representation of its own signature: every operation is
/// interpreted by the node that builds it.
#[derive(Clone, Copy, Debug, Default)]
pub struct SelfRep;

impl TargetMonad for SelfRep {
    type Value = Term;

    fn unit(&self, _n: usize, i: usize) -> Term {
        Term::free(i)
    }

    fn tbind(&self, v: &Term, m: usize, s: &[Term]) -> Result<Term, EvalError> {
        Ok(bind(v, &Substitution::new(m, s.to_vec()))?)
    }
}

impl Representation for SelfRep {
    fn interp(&self, op: &str, args: TArg<Term>, n: usize) -> Result<Term, EvalError> {
        Ok(Term::op(op, rebuild(args, n)?))
    }
}

/// Turns evaluated arguments in context `n` back into an argument value.
pub fn rebuild(a: TArg<Term>, n: usize) -> Result<ArgValue, TermError> {
    Ok(match a {
        TArg::Val(t) => ArgValue::Term(t),
        TArg::Unit => ArgValue::Unit,
        TArg::Tuple(items) => ArgValue::Tuple(items.into_iter().map(|x| rebuild(x, n)).collect::<Result<_, _>>()?),
        TArg::Scope(body) => ArgValue::scope(close_arg(&rebuild(*body, n + 1)?, n)?),
        TArg::Outer { width, outer, payloads } => {
            let outer = rebuild(*outer, width)?;
            let payloads = payloads.into_iter().map(|p| rebuild(p, n)).collect::<Result<Vec<_>, _>>()?;
            let plugged = map_vars_arg(&outer, 0, &mut |p, d| match p {
                Payload::Free(j) => payloads
                    .get(*j)
                    .map(|x| Term::nested(x.clone()))
                    .ok_or(TermError::FreeOutOfRange { index: *j, size: width }),
                Payload::Bound(k) if *k < d => Ok(Term::bound(*k)),
                Payload::Bound(k) => Err(TermError::BoundOutOfRange { level: *k, depth: d }),
                Payload::Nested(_) => Err(TermError::StrayNested),
            })?;
            ArgValue::outer(plugged)
        }
        TArg::Variant(tag, x) => ArgValue::variant(tag, rebuild(*x, n)?),
    })
}

/// The representation `rep` of the target signature, seen as a
/// representation of the source signature of `inc`.
pub struct Pullback<'a, R: ?Sized> {
    pub rep: &'a R,
    pub inc: &'a SignatureInclusion,
}

impl<'a, R: ?Sized> Pullback<'a, R> {
    pub fn new(rep: &'a R, inc: &'a SignatureInclusion) -> Self {
        Pullback { rep, inc }
    }
}

impl<R: Representation + ?Sized> TargetMonad for Pullback<'_, R> {
    type Value = R::Value;

    fn unit(&self, n: usize, i: usize) -> R::Value {
        self.rep.unit(n, i)
    }

    fn tbind(&self, v: &R::Value, m: usize, s: &[R::Value]) -> Result<R::Value, EvalError> {
        self.rep.tbind(v, m, s)
    }
}

impl<R: Representation + ?Sized> Representation for Pullback<'_, R> {
    fn interp(&self, op: &str, args: TArg<R::Value>, n: usize) -> Result<R::Value, EvalError> {
        let image = self.inc.map(op).ok_or_else(|| EvalError::MissingInterp(op.to_string()))?;
        self.rep.interp(image, args, n)
    }
}

/// Renames every operation of `t` along `inc`.
pub fn translate(t: &Term, inc: &SignatureInclusion) -> Result<Term, EvalError> {
    match t {
        Term::Var(Payload::Nested(v)) => Ok(Term::nested(translate_arg(v, inc)?)),
        Term::Var(p) => Ok(Term::Var(p.clone())),
        Term::Op(op, v) => {
            let image = inc.map(op).ok_or_else(|| EvalError::MissingInterp(op.clone()))?;
            Ok(Term::op(image, translate_arg(v, inc)?))
        }
    }
}

fn translate_arg(v: &ArgValue, inc: &SignatureInclusion) -> Result<ArgValue, EvalError> {
    Ok(match v {
        ArgValue::Term(t) => ArgValue::Term(translate(t, inc)?),
        ArgValue::Unit => ArgValue::Unit,
        ArgValue::Tuple(items) => {
            ArgValue::Tuple(items.iter().map(|x| translate_arg(x, inc)).collect::<Result<_, _>>()?)
        }
        ArgValue::Scope(b) => ArgValue::scope(translate_arg(b, inc)?),
        ArgValue::Outer(w) => ArgValue::outer(translate_arg(w, inc)?),
        ArgValue::Variant(tag, x) => ArgValue::variant(tag.clone(), translate_arg(x, inc)?),
    })
}

/// [`translate`] computed as the evaluation of `t` into the target syntax
/// through the pulled-back tautological representation.
pub fn translate_via_eval(t: &Term, inc: &SignatureInclusion, n: usize) -> Result<Term, EvalError> {
    eval(t, &inc.source, &Pullback::new(&SelfRep, inc), n)
}

/// Shorthand for [`eval`] into the syntax itself.
pub fn eval_self(t: &Term, sig: &Signature, n: usize) -> Result<Term, EvalError> {
    eval(t, sig, &SelfRep, n)
}
