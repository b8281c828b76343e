//! Seeded random generation of well-formed terms.
//!
//! At every node the generator picks uniformly among the choices that can
//! still be completed within the remaining depth budget, so every term of
//! depth at most the bound has nonzero probability.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::error::TermError;
use super::subst::Substitution;
use super::term::{ArgValue, Term};
use crate::arity_core::{Arity, Signature};

/// Smallest budget at which a frame offers a variable; `None` when it offers
/// none within the budgets still reachable.
type VarMin = Option<usize>;

#[derive(Clone, Copy)]
struct GenFrame<'a> {
    kind: GenKind<'a>,
    depth: usize,
    var_min: VarMin,
}

#[derive(Clone, Copy)]
enum GenKind<'a> {
    Base { free: usize },
    Outer { inner: &'a Arity, parent: &'a GenFrame<'a> },
}

/// Generator state: the signature plus memoized inhabitation facts.
pub struct TermSampler<'s> {
    sig: &'s Signature,
    terms: HashMap<(VarMin, usize), bool>,
    args: HashMap<(*const Arity, VarMin, usize), bool>,
}

impl<'s> TermSampler<'s> {
    pub fn new(sig: &'s Signature) -> TermSampler<'s> {
        TermSampler { sig, terms: HashMap::new(), args: HashMap::new() }
    }

    fn term_inhabited(&mut self, vm: VarMin, r: usize) -> bool {
        if vm.is_some_and(|m| m <= r) {
            return true;
        }
        if r == 0 {
            return false;
        }
        if let Some(&b) = self.terms.get(&(vm, r)) {
            return b;
        }
        let sig = self.sig;
        let b = sig.ops.iter().any(|d| self.inhabited(&d.arity, vm, r - 1));
        self.terms.insert((vm, r), b);
        b
    }

    fn inhabited(&mut self, shape: &Arity, vm: VarMin, r: usize) -> bool {
        match shape {
            Arity::Theta => return self.term_inhabited(vm, r),
            Arity::Terminal => return true,
            _ if r == 0 => return false,
            _ => {}
        }
        let key = (shape as *const Arity, vm, r);
        if let Some(&b) = self.args.get(&key) {
            return b;
        }
        let b = match shape {
            Arity::Prod(factors) => factors.iter().all(|a| self.inhabited(a, vm, r - 1)),
            Arity::Deriv(a) => self.inhabited(a, Some(0), r - 1),
            Arity::Comp(a, b) => {
                let inner_vm = self.outer_var_min(b, vm, r - 1);
                self.inhabited(a, inner_vm, r - 1)
            }
            Arity::Sum(variants) => variants.iter().any(|(_, a)| self.inhabited(a, vm, r - 1)),
            Arity::Theta | Arity::Terminal => unreachable!(),
        };
        self.args.insert(key, b);
        b
    }

    // the variables of a fresh outer frame are the nested inner values
    fn outer_var_min(&mut self, inner: &Arity, parent_vm: VarMin, limit: usize) -> VarMin {
        (0..=limit).find(|&r| self.inhabited(inner, parent_vm, r))
    }

    fn gen_term<R: Rng>(&mut self, f: &GenFrame<'_>, r: usize, rng: &mut R) -> Term {
        let var_ok = f.var_min.is_some_and(|m| m <= r);
        let sig = self.sig;
        let ops: Vec<usize> = if r == 0 {
            Vec::new()
        } else {
            (0..sig.ops.len()).filter(|&i| self.inhabited(&sig.ops[i].arity, f.var_min, r - 1)).collect()
        };
        let pick = rng.gen_range(0..ops.len() + usize::from(var_ok));
        if pick < ops.len() {
            let decl = &sig.ops[ops[pick]];
            let v = self.gen_arg(&decl.arity, f, r - 1, rng);
            return Term::op(decl.name.clone(), v);
        }
        match f.kind {
            GenKind::Base { free } => {
                let k = rng.gen_range(0..free + f.depth);
                if k < free {
                    Term::free(k)
                } else {
                    Term::bound(k - free)
                }
            }
            GenKind::Outer { inner, parent } => {
                let nested_ok = self.inhabited(inner, parent.var_min, r);
                let k = rng.gen_range(0..f.depth + usize::from(nested_ok));
                if k < f.depth {
                    Term::bound(k)
                } else {
                    Term::nested(self.gen_arg(inner, parent, r, rng))
                }
            }
        }
    }

    fn gen_arg<R: Rng>(&mut self, shape: &Arity, f: &GenFrame<'_>, r: usize, rng: &mut R) -> ArgValue {
        match shape {
            Arity::Theta => ArgValue::Term(self.gen_term(f, r, rng)),
            Arity::Terminal => ArgValue::Unit,
            Arity::Prod(factors) => ArgValue::Tuple(factors.iter().map(|a| self.gen_arg(a, f, r - 1, rng)).collect()),
            Arity::Deriv(a) => {
                let g = GenFrame { kind: f.kind, depth: f.depth + 1, var_min: Some(0) };
                ArgValue::scope(self.gen_arg(a, &g, r - 1, rng))
            }
            Arity::Comp(a, b) => {
                let var_min = self.outer_var_min(b, f.var_min, r - 1);
                let g = GenFrame { kind: GenKind::Outer { inner: b, parent: f }, depth: 0, var_min };
                ArgValue::outer(self.gen_arg(a, &g, r - 1, rng))
            }
            Arity::Sum(variants) => {
                let ok: Vec<&(String, Arity)> =
                    variants.iter().filter(|(_, a)| self.inhabited(a, f.var_min, r - 1)).collect();
                let (tag, a) = ok[rng.gen_range(0..ok.len())];
                ArgValue::variant(tag.clone(), self.gen_arg(a, f, r - 1, rng))
            }
        }
    }

    fn base(n: usize) -> GenFrame<'static> {
        GenFrame { kind: GenKind::Base { free: n }, depth: 0, var_min: (n > 0).then_some(0) }
    }

    /// A random well-formed term in context `n` of depth at most `depth`.
    pub fn term<R: Rng>(&mut self, n: usize, depth: usize, rng: &mut R) -> Result<Term, TermError> {
        self.args.clear();
        if !self.term_inhabited((n > 0).then_some(0), depth) {
            return Err(TermError::Ungenerable { context: n, depth });
        }
        Ok(self.gen_term(&Self::base(n), depth, rng))
    }

    /// A random argument value of the given shape.
    pub fn arg<R: Rng>(&mut self, shape: &Arity, n: usize, depth: usize, rng: &mut R) -> Result<ArgValue, TermError> {
        self.args.clear();
        if !self.inhabited(shape, (n > 0).then_some(0), depth) {
            return Err(TermError::Ungenerable { context: n, depth });
        }
        Ok(self.gen_arg(shape, &Self::base(n), depth, rng))
    }

    /// A substitution from context `src` to `dst` with random images.
    pub fn substitution<R: Rng>(
        &mut self,
        src: usize,
        dst: usize,
        depth: usize,
        rng: &mut R,
    ) -> Result<Substitution, TermError> {
        let terms = (0..src).map(|_| self.term(dst, depth, rng)).collect::<Result<Vec<_>, _>>()?;
        Ok(Substitution::new(dst, terms))
    }
}

/// Deterministic in `(sig, n, depth, seed)`.
pub fn random_term(sig: &Signature, n: usize, depth: usize, seed: u64) -> Result<Term, TermError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TermSampler::new(sig).term(n, depth, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arity_core::{algebraic, derive_n};
    use crate::term_engine::enumerate::{enumerate_terms, DEFAULT_CAP};
    use crate::term_engine::wf::{check_arg, well_formed};
    use std::collections::BTreeSet;

    fn lambda_join() -> Signature {
        Signature::new(
            "lj",
            vec![
                ("app", algebraic(&[0, 0])),
                ("abs", derive_n(Arity::Theta, 1)),
                ("join", Arity::comp(Arity::Theta, Arity::Theta)),
            ],
        )
    }

    #[test]
    fn deterministic_per_seed() {
        let sig = lambda_join();
        for seed in 0..20 {
            assert_eq!(random_term(&sig, 2, 6, seed), random_term(&sig, 2, 6, seed));
        }
    }

    #[test]
    fn always_well_formed_and_bounded() {
        let sig = lambda_join();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut s = TermSampler::new(&sig);
        for n in 0..3 {
            for d in 2..7 {
                for _ in 0..50 {
                    let t = s.term(n, d, &mut rng).unwrap();
                    assert!(well_formed(&t, &sig, n), "{t}");
                    assert!(t.depth() <= d);
                }
            }
        }
    }

    #[test]
    fn ungenerable_closed_terms() {
        let sig = lambda_join();
        assert_eq!(random_term(&sig, 0, 1, 0), Err(TermError::Ungenerable { context: 0, depth: 1 }));
        assert_eq!(random_term(&Signature::empty("e"), 0, 5, 0), Err(TermError::Ungenerable { context: 0, depth: 5 }));
        assert_eq!(random_term(&sig, 0, 2, 0).unwrap().to_string(), "(op abs (scope (bnd 0)))");
    }

    #[test]
    fn covers_a_small_slice() {
        let sig = lambda_join();
        let all: BTreeSet<Term> = enumerate_terms(&sig, 1, 3, DEFAULT_CAP).unwrap().into_iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut s = TermSampler::new(&sig);
        let seen: BTreeSet<Term> = (0..4000).map(|_| s.term(1, 3, &mut rng).unwrap()).collect();
        assert_eq!(seen, all);
    }

    #[test]
    fn arguments_of_composite_shape() {
        let sig = lambda_join();
        let shape = Arity::comp(Arity::Theta, Arity::Theta);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut s = TermSampler::new(&sig);
        for _ in 0..200 {
            let v = s.arg(&shape, 0, 5, &mut rng).unwrap();
            check_arg(&v, &shape, &sig, 0).unwrap();
        }
    }
}
