use std::fmt;

/// What a variable position holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    /// Index into the ambient context.
    Free(usize),
    /// Level of an enclosing scope, 0 = innermost.
    Bound(usize),
    /// An inner value sitting at a variable position of a composite's outer layer.
    Nested(Box<ArgValue>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Payload),
    Op(String, Box<ArgValue>),
}

/// An argument bundle shaped like an arity, constructor for constructor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArgValue {
    Term(Term),
    Unit,
    Tuple(Vec<ArgValue>),
    /// Opens one bound level.
    Scope(Box<ArgValue>),
    /// Outer layer of a composite; its variables are `Nested` inner values.
    Outer(Box<ArgValue>),
    Variant(String, Box<ArgValue>),
}

impl Term {
    pub fn free(i: usize) -> Term {
        Term::Var(Payload::Free(i))
    }

    pub fn bound(k: usize) -> Term {
        Term::Var(Payload::Bound(k))
    }

    pub fn nested(v: ArgValue) -> Term {
        Term::Var(Payload::Nested(Box::new(v)))
    }

    pub fn op(name: impl Into<String>, args: ArgValue) -> Term {
        Term::Op(name.into(), Box::new(args))
    }

    /// Nesting depth: an operation node and every argument constructor other
    /// than the `Term` injection count one level; variables count zero, except
    /// that a nested payload counts as deep as its contents.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(Payload::Nested(v)) => v.depth(),
            Term::Var(_) => 0,
            Term::Op(_, args) => 1 + args.depth(),
        }
    }

    /// Number of constructors, variables included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(Payload::Nested(v)) => 1 + v.size(),
            Term::Var(_) => 1,
            Term::Op(_, args) => 1 + args.size(),
        }
    }

    pub fn max_free(&self) -> Option<usize> {
        match self {
            Term::Var(Payload::Free(i)) => Some(*i),
            Term::Var(Payload::Bound(_)) => None,
            Term::Var(Payload::Nested(v)) => v.max_free(),
            Term::Op(_, args) => args.max_free(),
        }
    }
}

impl ArgValue {
    pub fn scope(body: ArgValue) -> ArgValue {
        ArgValue::Scope(Box::new(body))
    }

    pub fn outer(v: ArgValue) -> ArgValue {
        ArgValue::Outer(Box::new(v))
    }

    pub fn variant(tag: impl Into<String>, v: ArgValue) -> ArgValue {
        ArgValue::Variant(tag.into(), Box::new(v))
    }

    pub fn tuple_of_terms(terms: impl IntoIterator<Item = Term>) -> ArgValue {
        ArgValue::Tuple(terms.into_iter().map(ArgValue::Term).collect())
    }

    pub fn depth(&self) -> usize {
        match self {
            ArgValue::Term(t) => t.depth(),
            ArgValue::Unit => 0,
            ArgValue::Tuple(items) => 1 + items.iter().map(ArgValue::depth).max().unwrap_or(0),
            ArgValue::Scope(v) | ArgValue::Outer(v) | ArgValue::Variant(_, v) => 1 + v.depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ArgValue::Term(t) => t.size(),
            ArgValue::Unit => 1,
            ArgValue::Tuple(items) => 1 + items.iter().map(ArgValue::size).sum::<usize>(),
            ArgValue::Scope(v) | ArgValue::Outer(v) | ArgValue::Variant(_, v) => 1 + v.size(),
        }
    }

    /// Largest `Free` index reachable in the ambient frame.
    pub fn max_free(&self) -> Option<usize> {
        match self {
            ArgValue::Term(t) => t.max_free(),
            ArgValue::Unit => None,
            ArgValue::Tuple(items) => items.iter().filter_map(ArgValue::max_free).max(),
            ArgValue::Scope(v) | ArgValue::Outer(v) | ArgValue::Variant(_, v) => v.max_free(),
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            ArgValue::Term(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::sexpr::print_term(self))
    }
}

impl fmt::Display for ArgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::sexpr::print_arg(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_metric() {
        assert_eq!(Term::free(0).depth(), 0);
        let id = Term::op("abs", ArgValue::scope(ArgValue::Term(Term::bound(0))));
        assert_eq!(id.depth(), 2);
        let app = Term::op("app", ArgValue::tuple_of_terms([Term::free(0), id.clone()]));
        assert_eq!(app.depth(), 4);
        let join = Term::op("join", ArgValue::outer(ArgValue::Term(Term::nested(ArgValue::Term(id)))));
        assert_eq!(join.depth(), 4);
        assert_eq!(Term::op("c", ArgValue::Unit).depth(), 1);
    }
}
