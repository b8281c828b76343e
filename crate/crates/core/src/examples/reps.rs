use thiserror::Error;

use super::reference_lambda::LTerm;
use super::signatures::sigma_index;
use crate::arity_core::Signature;
use crate::initiality::{eval, EvalError, Representation, SelfRep, TArg, TargetMonad};
use crate::term_engine::Term;

/// The reference λ-calculus as a representation: `app` and `abs` build
/// nodes, `join` substitutes the payloads into the outer term, and
/// `sigma<k>` substitutes its arguments for the `k` most recently bound
/// variables of its body.
#[derive(Clone, Copy, Debug)]
pub struct LambdaRep {
    with_join: bool,
}

/// Representation of the λ and explicit-substitution signatures.
pub fn reference_lambda_rep() -> LambdaRep {
    LambdaRep { with_join: false }
}

/// [`reference_lambda_rep`] with `join` interpreted as flattening.
pub fn reference_lambda_join_rep() -> LambdaRep {
    LambdaRep { with_join: true }
}

fn bad(op: &str) -> EvalError {
    EvalError::BadArgs { op: op.to_string() }
}

fn val(a: TArg<LTerm>, op: &str) -> Result<LTerm, EvalError> {
    a.into_val().ok_or_else(|| bad(op))
}

fn subst_or_err(t: &LTerm, s: &[LTerm], m: usize) -> Result<LTerm, EvalError> {
    t.subst(s, m).ok_or_else(|| EvalError::Target(format!("{t} has a variable outside context {}", s.len())))
}

impl TargetMonad for LambdaRep {
    type Value = LTerm;

    fn unit(&self, _n: usize, i: usize) -> LTerm {
        LTerm::Var(i)
    }

    fn tbind(&self, v: &LTerm, m: usize, s: &[LTerm]) -> Result<LTerm, EvalError> {
        subst_or_err(v, s, m)
    }
}

impl Representation for LambdaRep {
    fn interp(&self, op: &str, args: TArg<LTerm>, n: usize) -> Result<LTerm, EvalError> {
        match (op, args) {
            ("app", TArg::Tuple(items)) if items.len() == 2 => {
                let mut it = items.into_iter();
                let f = val(it.next().unwrap(), op)?;
                let a = val(it.next().unwrap(), op)?;
                Ok(LTerm::app(f, a))
            }
            ("abs", TArg::Scope(body)) => Ok(LTerm::lam(val(*body, op)?)),
            ("join", TArg::Outer { width, outer, payloads }) if self.with_join => {
                let outer = val(*outer, op)?;
                let payloads = payloads.into_iter().map(|p| val(p, op)).collect::<Result<Vec<_>, _>>()?;
                if payloads.len() != width {
                    return Err(bad(op));
                }
                subst_or_err(&outer, &payloads, n)
            }
            (_, TArg::Tuple(items)) if sigma_index(op).is_some_and(|k| items.len() == k + 1) => {
                let k = items.len() - 1;
                let mut it = items.into_iter();
                let mut body = it.next().unwrap();
                for _ in 0..k {
                    body = match body {
                        TArg::Scope(inner) => *inner,
                        _ => return Err(bad(op)),
                    };
                }
                let body = val(body, op)?;
                let mut s: Vec<LTerm> = (0..n).map(LTerm::Var).collect();
                for a in it {
                    s.push(val(a, op)?);
                }
                subst_or_err(&body, &s, n)
            }
            ("app" | "abs", _) => Err(bad(op)),
            _ => Err(EvalError::MissingInterp(op.to_string())),
        }
    }
}

/// Names of the built-in representations.
pub const REPRESENTATIONS: [&str; 3] = ["lambda-ref", "lambda-join-ref", "self"];

#[derive(Debug, Error)]
pub enum NamedEvalError {
    #[error("unknown representation `{0}` (known: lambda-ref, lambda-join-ref, self)")]
    UnknownRep(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Evaluates `t` under the built-in representation called `name` and
/// prints the result.
pub fn eval_named(name: &str, t: &Term, sig: &Signature, n: usize) -> Result<String, NamedEvalError> {
    match name {
        "lambda-ref" => Ok(eval(t, sig, &reference_lambda_rep(), n)?.to_string()),
        "lambda-join-ref" => Ok(eval(t, sig, &reference_lambda_join_rep(), n)?.to_string()),
        "self" => Ok(eval(t, sig, &SelfRep, n)?.to_string()),
        other => Err(NamedEvalError::UnknownRep(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::reference_lambda::enumerate_lambda;
    use crate::examples::signatures::{explicit_subst_signature, join_signature, lambda_signature};
    use crate::initiality::{eval_args_first, eval_self, translate, translate_via_eval};
    use crate::term_engine::{enumerate_terms, flatten_arg, parse_term, DEFAULT_CAP};
    use std::collections::BTreeSet;

    #[test]
    fn identity_function() {
        let sig = lambda_signature();
        let id = parse_term("(op abs (scope (bnd 0)))").unwrap();
        assert_eq!(eval(&id, &sig, &reference_lambda_rep(), 0).unwrap(), LTerm::lam(LTerm::Var(0)));
        let k = parse_term("(op abs (scope (op abs (scope (bnd 1)))))").unwrap();
        assert_eq!(eval(&k, &sig, &reference_lambda_rep(), 2).unwrap(), LTerm::lam(LTerm::lam(LTerm::Var(2))));
    }

    #[test]
    fn injective_on_closed_slices() {
        let sig = lambda_signature();
        for d in 0..=3 {
            let images: BTreeSet<LTerm> = enumerate_terms(&sig, 0, d, DEFAULT_CAP)
                .unwrap()
                .iter()
                .map(|t| eval(t, &sig, &reference_lambda_rep(), 0).unwrap())
                .collect();
            let reference: BTreeSet<LTerm> = enumerate_lambda(0, d).into_iter().collect();
            assert_eq!(images, reference);
        }
    }

    #[test]
    fn join_flattens() {
        let sig = join_signature();
        let rep = reference_lambda_join_rep();
        let t = parse_term("(op join (outer (op app (tuple (nested (var 1)) (op abs (scope (nested (var 0))))))))")
            .unwrap();
        let v = eval(&t, &sig, &rep, 2).unwrap();
        assert_eq!(v, LTerm::app(LTerm::Var(1), LTerm::lam(LTerm::Var(0))));
        let Term::Op(_, args) = &t else { unreachable!() };
        let flat = flatten_arg(args).unwrap();
        assert_eq!(eval(&flat, &sig, &rep, 2).unwrap(), v);
        assert!(matches!(
            eval(&t, &sig, &reference_lambda_rep(), 2),
            Err(EvalError::MissingInterp(op)) if op == "join"
        ));
    }

    #[test]
    fn join_commutes_with_flatten_on_a_slice() {
        let sig = join_signature();
        let rep = reference_lambda_join_rep();
        for n in 0..=1 {
            for t in enumerate_terms(&sig, n, 4, DEFAULT_CAP).unwrap() {
                if let Term::Op(op, args) = &t {
                    if op == "join" {
                        let flat = flatten_arg(args).unwrap();
                        assert_eq!(eval(&t, &sig, &rep, n).unwrap(), eval(&flat, &sig, &rep, n).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_substitutes_latest_slots() {
        let sig = explicit_subst_signature(3);
        let rep = reference_lambda_rep();
        // sigma2 (\\ app(bnd 1, bnd 0)) a b  ~>  app(a, b): slot 0 is the outer binder
        let t = parse_term(
            "(op sigma2 (tuple (scope (scope (op app (tuple (bnd 1) (bnd 0))))) (var 0) (op abs (scope (bnd 0)))))",
        )
        .unwrap();
        let v = eval(&t, &sig, &rep, 1).unwrap();
        assert_eq!(v, LTerm::app(LTerm::Var(0), LTerm::lam(LTerm::Var(1))));
        let t0 = parse_term("(op sigma0 (tuple (var 0)))").unwrap();
        assert_eq!(eval(&t0, &sig, &rep, 1).unwrap(), LTerm::Var(0));
    }

    #[test]
    fn self_rep_is_tautological() {
        let sig = explicit_subst_signature(2);
        let js = join_signature();
        for n in 0..=2 {
            for t in enumerate_terms(&sig, n, 4, DEFAULT_CAP).unwrap() {
                assert_eq!(eval_self(&t, &sig, n).unwrap(), t);
                assert_eq!(eval_args_first(&t, &sig, &SelfRep, n).unwrap(), t);
            }
            for t in enumerate_terms(&js, n, 4, DEFAULT_CAP).unwrap() {
                assert_eq!(eval_self(&t, &js, n).unwrap(), t);
                assert_eq!(eval_args_first(&t, &js, &SelfRep, n).unwrap(), t);
            }
        }
    }

    #[test]
    fn translation_agrees_with_evaluation() {
        let lam = lambda_signature();
        let js = join_signature();
        let inc = crate::arity_core::SignatureInclusion::by_name(&lam, &js).unwrap();
        for t in enumerate_terms(&lam, 1, 4, DEFAULT_CAP).unwrap() {
            assert_eq!(translate(&t, &inc).unwrap(), t);
            assert_eq!(translate_via_eval(&t, &inc, 1).unwrap(), t);
        }
    }

    #[test]
    fn named_registry() {
        let sig = lambda_signature();
        let t = parse_term("(op app (tuple (var 0) (var 0)))").unwrap();
        assert_eq!(eval_named("lambda-ref", &t, &sig, 1).unwrap(), "(x0 x0)");
        assert_eq!(eval_named("self", &t, &sig, 1).unwrap(), t.to_string());
        assert!(matches!(eval_named("church", &t, &sig, 1), Err(NamedEvalError::UnknownRep(_))));
    }
}
