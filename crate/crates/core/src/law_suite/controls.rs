use crate::examples::{reference_lambda_join_rep, LTerm, LambdaRep};
use crate::initiality::{EvalError, Representation, TArg, TargetMonad};

pub use super::binder::ForgetfulLift;

/// Negative control: the reference λ-calculus, except that `app` drops its
/// argument whenever that argument is a variable. Not a module morphism.
#[derive(Clone, Copy, Debug)]
pub struct BrokenAppRep {
    inner: LambdaRep,
}

impl Default for BrokenAppRep {
    fn default() -> Self {
        BrokenAppRep { inner: reference_lambda_join_rep() }
    }
}

impl TargetMonad for BrokenAppRep {
    type Value = LTerm;

    fn unit(&self, n: usize, i: usize) -> LTerm {
        self.inner.unit(n, i)
    }

    fn tbind(&self, v: &LTerm, m: usize, s: &[LTerm]) -> Result<LTerm, EvalError> {
        self.inner.tbind(v, m, s)
    }
}

impl Representation for BrokenAppRep {
    fn interp(&self, op: &str, args: TArg<LTerm>, n: usize) -> Result<LTerm, EvalError> {
        match self.inner.interp(op, args, n)? {
            LTerm::App(f, a) if op == "app" && a.is_var() => Ok(*f),
            v => Ok(v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::lambda_signature;
    use crate::initiality::eval;
    use crate::term_engine::parse_term;

    #[test]
    fn drops_variable_arguments() {
        let sig = lambda_signature();
        let t = parse_term("(op app (tuple (var 0) (var 1)))").unwrap();
        assert_eq!(eval(&t, &sig, &BrokenAppRep::default(), 2).unwrap(), LTerm::Var(0));
        let u = parse_term("(op app (tuple (var 0) (op abs (scope (bnd 0)))))").unwrap();
        assert_eq!(
            eval(&u, &sig, &BrokenAppRep::default(), 1).unwrap(),
            LTerm::app(LTerm::Var(0), LTerm::lam(LTerm::Var(1)))
        );
    }
}
