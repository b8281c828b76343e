use crate::term_engine::{bind_arg, map_nested, ArgValue, Payload, Substitution, Term, TermError};

/// A substitution procedure under test.
pub trait Binder {
    fn bind_arg(&self, v: &ArgValue, s: &Substitution) -> Result<ArgValue, TermError>;

    fn bind(&self, t: &Term, s: &Substitution) -> Result<Term, TermError> {
        match self.bind_arg(&ArgValue::Term(t.clone()), s)? {
            ArgValue::Term(u) => Ok(u),
            _ => Err(TermError::PayloadNotTerm),
        }
    }

    /// `i ↦ bind(f(i), g)`.
    fn compose(&self, f: &Substitution, g: &Substitution) -> Result<Substitution, TermError> {
        if f.dst() != g.src() {
            return Err(TermError::ContextMismatch { expected: g.src(), found: f.dst() });
        }
        let terms = f.terms().iter().map(|u| self.bind(u, g)).collect::<Result<Vec<_>, _>>()?;
        Ok(Substitution::new(g.dst(), terms))
    }
}

/// The engine's substitution.
#[derive(Clone, Copy, Debug, Default)]
pub struct Engine;

impl Binder for Engine {
    fn bind_arg(&self, v: &ArgValue, s: &Substitution) -> Result<ArgValue, TermError> {
        bind_arg(v, s)
    }
}

/// Negative control: does not lift the substitution when entering a scope,
/// so a bound variable is mistaken for the free variable with the same
/// number and replaced.
#[derive(Clone, Copy, Debug, Default)]
pub struct ForgetfulLift;

impl ForgetfulLift {
    fn term(&self, t: &Term, s: &Substitution) -> Result<Term, TermError> {
        match t {
            Term::Var(Payload::Free(i)) => s.apply(&Payload::Free(*i)),
            Term::Var(Payload::Bound(k)) if *k < s.scopes() => Ok(Term::bound(*k)),
            Term::Var(Payload::Bound(k)) => Ok(s.get(k - s.scopes()).cloned().unwrap_or(Term::bound(*k))),
            Term::Var(Payload::Nested(_)) => Err(TermError::StrayNested),
            Term::Op(op, v) => Ok(Term::op(op.clone(), self.arg(v, s)?)),
        }
    }

    fn arg(&self, v: &ArgValue, s: &Substitution) -> Result<ArgValue, TermError> {
        Ok(match v {
            ArgValue::Term(t) => ArgValue::Term(self.term(t, s)?),
            ArgValue::Unit => ArgValue::Unit,
            ArgValue::Tuple(items) => ArgValue::Tuple(items.iter().map(|x| self.arg(x, s)).collect::<Result<_, _>>()?),
            ArgValue::Scope(body) => ArgValue::scope(self.arg(body, s)?),
            ArgValue::Outer(w) => ArgValue::outer(map_nested(w, &mut |x| self.arg(x, s))?),
            ArgValue::Variant(tag, x) => ArgValue::variant(tag.clone(), self.arg(x, s)?),
        })
    }
}

impl Binder for ForgetfulLift {
    fn bind_arg(&self, v: &ArgValue, s: &Substitution) -> Result<ArgValue, TermError> {
        self.arg(v, s)
    }
}
