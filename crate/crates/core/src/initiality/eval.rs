use std::fmt;

use thiserror::Error;

use crate::arity_core::Signature;
use crate::term_engine::{check_term, extract_nested, open_arg, ArgValue, Payload, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("no interpretation for operation `{0}`")]
    MissingInterp(String),
    #[error("operation `{op}` received arguments of an unexpected shape")]
    BadArgs { op: String },
    #[error("target error: {0}")]
    Target(String),
}

/// A monad on finite contexts: values are indexed by a context size `n`.
pub trait TargetMonad {
    type Value: Clone + PartialEq + fmt::Display;

    /// The variable `i` of context `n`.
    fn unit(&self, n: usize, i: usize) -> Self::Value;

    /// Substitutes `s[i]` (values in context `m`) for each variable `i` of `v`.
    fn tbind(&self, v: &Self::Value, m: usize, s: &[Self::Value]) -> Result<Self::Value, EvalError>;
}

/// A target monad with one interpretation per operation.
pub trait Representation: TargetMonad {
    /// Interprets `op` applied to already evaluated arguments in context `n`.
    fn interp(&self, op: &str, args: TArg<Self::Value>, n: usize) -> Result<Self::Value, EvalError>;
}

/// An argument value whose terms have been replaced by target values.
#[derive(Clone, Debug, PartialEq)]
pub enum TArg<V> {
    Val(V),
    Unit,
    Tuple(Vec<TArg<V>>),
    /// Lives in context `n + 1`; the bound variable is index `n`.
    Scope(Box<TArg<V>>),
    /// `outer` lives in context `width`, and its variable `j` stands for
    /// `payloads[j]`, which lives in the ambient context.
    Outer {
        width: usize,
        outer: Box<TArg<V>>,
        payloads: Vec<TArg<V>>,
    },
    Variant(String, Box<TArg<V>>),
}

impl<V> TArg<V> {
    pub fn into_val(self) -> Option<V> {
        match self {
            TArg::Val(v) => Some(v),
            _ => None,
        }
    }
}

fn eval_in<R: Representation + ?Sized>(rep: &R, t: &Term, ctx: usize) -> Result<R::Value, EvalError> {
    match t {
        Term::Var(Payload::Free(i)) => Ok(rep.unit(ctx, *i)),
        Term::Var(Payload::Bound(k)) => match ctx.checked_sub(k + 1) {
            Some(i) => Ok(rep.unit(ctx, i)),
            None => Err(TermError::BoundOutOfRange { level: *k, depth: ctx }.into()),
        },
        Term::Var(Payload::Nested(_)) => Err(TermError::StrayNested.into()),
        Term::Op(op, v) => rep.interp(op, eval_arg_in(rep, v, ctx)?, ctx),
    }
}

fn eval_arg_in<R: Representation + ?Sized>(rep: &R, v: &ArgValue, ctx: usize) -> Result<TArg<R::Value>, EvalError> {
    Ok(match v {
        ArgValue::Term(t) => TArg::Val(eval_in(rep, t, ctx)?),
        ArgValue::Unit => TArg::Unit,
        ArgValue::Tuple(items) => {
            TArg::Tuple(items.iter().map(|x| eval_arg_in(rep, x, ctx)).collect::<Result<_, _>>()?)
        }
        ArgValue::Scope(body) => TArg::Scope(Box::new(eval_arg_in(rep, body, ctx + 1)?)),
        ArgValue::Outer(w) => {
            let (base, payloads) = extract_nested(w)?;
            let width = payloads.len();
            TArg::Outer {
                width,
                outer: Box::new(eval_arg_in(rep, &base, width)?),
                payloads: payloads.iter().map(|p| eval_arg_in(rep, p, ctx)).collect::<Result<_, _>>()?,
            }
        }
        ArgValue::Variant(tag, x) => TArg::Variant(tag.clone(), Box::new(eval_arg_in(rep, x, ctx)?)),
    })
}

/// The unique representation morphism out of the syntax, applied to `t` in
/// context `n`.
///
/// Entering a scope extends the context by one, and bound level `k` under
/// `d` open scopes denotes index `n + d - 1 - k`.
pub fn eval<R: Representation + ?Sized>(t: &Term, sig: &Signature, rep: &R, n: usize) -> Result<R::Value, EvalError> {
    check_term(t, sig, n)?;
    eval_in(rep, t, n)
}

/// Evaluates an argument value of an operation in context `n`.
pub fn eval_arg<R: Representation + ?Sized>(rep: &R, v: &ArgValue, n: usize) -> Result<TArg<R::Value>, EvalError> {
    eval_arg_in(rep, v, n)
}

/// A second evaluator: each scope is first opened syntactically, turning its
/// bound variable into a fresh free one, and only then are the arguments
/// evaluated and interpreted.
pub fn eval_args_first<R: Representation + ?Sized>(
    t: &Term,
    sig: &Signature,
    rep: &R,
    n: usize,
) -> Result<R::Value, EvalError> {
    check_term(t, sig, n)?;
    opened(rep, t, n)
}

fn opened<R: Representation + ?Sized>(rep: &R, t: &Term, n: usize) -> Result<R::Value, EvalError> {
    match t {
        Term::Var(Payload::Free(i)) => Ok(rep.unit(n, *i)),
        Term::Var(Payload::Bound(k)) => Err(TermError::BoundOutOfRange { level: *k, depth: 0 }.into()),
        Term::Var(Payload::Nested(_)) => Err(TermError::StrayNested.into()),
        Term::Op(op, v) => {
            let args = opened_arg(rep, v, n)?;
            rep.interp(op, args, n)
        }
    }
}

fn opened_arg<R: Representation + ?Sized>(rep: &R, v: &ArgValue, n: usize) -> Result<TArg<R::Value>, EvalError> {
    Ok(match v {
        ArgValue::Term(t) => TArg::Val(opened(rep, t, n)?),
        ArgValue::Unit => TArg::Unit,
        ArgValue::Tuple(items) => TArg::Tuple(items.iter().map(|x| opened_arg(rep, x, n)).collect::<Result<_, _>>()?),
        ArgValue::Scope(body) => TArg::Scope(Box::new(opened_arg(rep, &open_arg(body, n)?, n + 1)?)),
        ArgValue::Outer(w) => {
            let (base, payloads) = extract_nested(w)?;
            let mut evaluated = Vec::with_capacity(payloads.len());
            for p in &payloads {
                evaluated.push(opened_arg(rep, p, n)?);
            }
            TArg::Outer {
                width: payloads.len(),
                outer: Box::new(opened_arg(rep, &base, payloads.len())?),
                payloads: evaluated,
            }
        }
        ArgValue::Variant(tag, x) => TArg::Variant(tag.clone(), Box::new(opened_arg(rep, x, n)?)),
    })
}
