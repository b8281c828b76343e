//! Exhaustive enumeration of well-formed terms up to a depth bound.
//!
//! Cost model: the number of terms grows doubly exponentially in the depth
//! (for two binary-ish operations, roughly squaring every two levels), so
//! every intermediate list is checked against an explicit cap.
//!
//! Order: variables first (free indices, then bound levels, then nested
//! values), then operations in signature order, each with its arguments in
//! lexicographic order of the factor lists.

use super::error::TermError;
use super::term::{ArgValue, Term};
use super::wf::{Frame, FrameKind};
use crate::arity_core::{Arity, Signature};

pub const DEFAULT_CAP: usize = 100_000;

struct Enumerator<'s> {
    sig: &'s Signature,
    cap: usize,
}

impl Enumerator<'_> {
    fn guard(&self, len: usize) -> Result<(), TermError> {
        if len > self.cap {
            Err(TermError::CapExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn terms(&self, f: &Frame<'_>, budget: usize) -> Result<Vec<Term>, TermError> {
        let mut out = Vec::new();
        if let FrameKind::Base { free } = f.kind {
            out.extend((0..free).map(Term::free));
        }
        out.extend((0..f.depth).map(Term::bound));
        if let FrameKind::Outer { inner, parent } = f.kind {
            for v in self.args(inner, parent, budget)? {
                out.push(Term::nested(v));
            }
        }
        self.guard(out.len())?;
        if budget == 0 {
            return Ok(out);
        }
        for decl in &self.sig.ops {
            for v in self.args(&decl.arity, f, budget - 1)? {
                out.push(Term::op(decl.name.clone(), v));
            }
            self.guard(out.len())?;
        }
        Ok(out)
    }

    fn args(&self, shape: &Arity, f: &Frame<'_>, budget: usize) -> Result<Vec<ArgValue>, TermError> {
        if let Arity::Theta = shape {
            return Ok(self.terms(f, budget)?.into_iter().map(ArgValue::Term).collect());
        }
        if let Arity::Terminal = shape {
            return Ok(vec![ArgValue::Unit]);
        }
        let Some(next) = budget.checked_sub(1) else {
            return Ok(Vec::new());
        };
        let out = match shape {
            Arity::Prod(factors) => {
                let lists = factors.iter().map(|a| self.args(a, f, next)).collect::<Result<Vec<_>, _>>()?;
                let total = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()));
                self.guard(total.unwrap_or(usize::MAX))?;
                cartesian(&lists).into_iter().map(ArgValue::Tuple).collect()
            }
            Arity::Deriv(a) => self.args(a, &f.deeper(), next)?.into_iter().map(ArgValue::scope).collect(),
            Arity::Comp(a, b) => self.args(a, &f.outer(b), next)?.into_iter().map(ArgValue::outer).collect(),
            Arity::Sum(variants) => {
                let mut out = Vec::new();
                for (tag, a) in variants {
                    for v in self.args(a, f, next)? {
                        out.push(ArgValue::variant(tag.clone(), v));
                    }
                    self.guard(out.len())?;
                }
                out
            }
            Arity::Theta | Arity::Terminal => unreachable!(),
        };
        Ok(out)
    }
}

fn cartesian(lists: &[Vec<ArgValue>]) -> Vec<Vec<ArgValue>> {
    let mut acc: Vec<Vec<ArgValue>> = vec![Vec::new()];
    for list in lists {
        acc = acc
            .iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut row = prefix.clone();
                    row.push(x.clone());
                    row
                })
            })
            .collect();
    }
    acc
}

/// All well-formed terms over `sig` in context `n` with depth at most `depth`.
pub fn enumerate_terms(sig: &Signature, n: usize, depth: usize, cap: usize) -> Result<Vec<Term>, TermError> {
    Enumerator { sig, cap }.terms(&Frame::base(n), depth)
}

/// All argument values of the given shape in context `n` with depth at most
/// `depth`.
pub fn enumerate_args(
    sig: &Signature,
    shape: &Arity,
    n: usize,
    depth: usize,
    cap: usize,
) -> Result<Vec<ArgValue>, TermError> {
    Enumerator { sig, cap }.args(shape, &Frame::base(n), depth)
}
