//! A hand-written untyped λ-calculus with de Bruijn levels, kept apart from
//! the generic engine so it can serve as an oracle for it.

use std::fmt;

/// A λ-term in a context of `n` variables: `Var(i)` needs `i < n`, and the
/// body of `Lam` lives in context `n + 1` where the new variable is `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LTerm {
    Var(usize),
    App(Box<LTerm>, Box<LTerm>),
    Lam(Box<LTerm>),
}

impl LTerm {
    pub fn app(f: LTerm, a: LTerm) -> LTerm {
        LTerm::App(Box::new(f), Box::new(a))
    }

    pub fn lam(body: LTerm) -> LTerm {
        LTerm::Lam(Box::new(body))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, LTerm::Var(_))
    }

    pub fn scoped(&self, n: usize) -> bool {
        match self {
            LTerm::Var(i) => *i < n,
            LTerm::App(f, a) => f.scoped(n) && a.scoped(n),
            LTerm::Lam(b) => b.scoped(n + 1),
        }
    }

    /// Inserts a fresh variable at level `at`: every level from `at` on moves
    /// up by one.
    pub fn weaken_at(&self, at: usize) -> LTerm {
        match self {
            LTerm::Var(i) if *i >= at => LTerm::Var(i + 1),
            LTerm::Var(i) => LTerm::Var(*i),
            LTerm::App(f, a) => LTerm::app(f.weaken_at(at), a.weaken_at(at)),
            LTerm::Lam(b) => LTerm::lam(b.weaken_at(at)),
        }
    }

    /// Simultaneous substitution of `s[i]` (terms in context `m`) for each
    /// variable `i`. `None` if some variable has no image.
    ///
    /// Under a binder the new variable gets level `m`, so the images are
    /// weakened at `m` to make room for it.
    pub fn subst(&self, s: &[LTerm], m: usize) -> Option<LTerm> {
        match self {
            LTerm::Var(i) => s.get(*i).cloned(),
            LTerm::App(f, a) => Some(LTerm::app(f.subst(s, m)?, a.subst(s, m)?)),
            LTerm::Lam(b) => {
                let mut under: Vec<LTerm> = s.iter().map(|u| u.weaken_at(m)).collect();
                under.push(LTerm::Var(m));
                Some(LTerm::lam(b.subst(&under, m + 1)?))
            }
        }
    }

    /// Number of constructor levels with the cost model of the generic
    /// engine: an application or an abstraction costs two.
    pub fn depth(&self) -> usize {
        match self {
            LTerm::Var(_) => 0,
            LTerm::App(f, a) => 2 + f.depth().max(a.depth()),
            LTerm::Lam(b) => 2 + b.depth(),
        }
    }
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LTerm::Var(i) => write!(f, "x{i}"),
            LTerm::App(g, a) => write!(f, "({g} {a})"),
            LTerm::Lam(b) => write!(f, "(\\ {b})"),
        }
    }
}

/// Every λ-term in context `n` with [`LTerm::depth`] at most `depth`.
pub fn enumerate_lambda(n: usize, depth: usize) -> Vec<LTerm> {
    let mut out: Vec<LTerm> = (0..n).map(LTerm::Var).collect();
    if depth >= 2 {
        let smaller = enumerate_lambda(n, depth - 2);
        for f in &smaller {
            for a in &smaller {
                out.push(LTerm::app(f.clone(), a.clone()));
            }
        }
        out.extend(enumerate_lambda(n + 1, depth - 2).into_iter().map(LTerm::lam));
    }
    out
}

/// Outcome of checking the reference calculus against its own monad laws.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaLawReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Checks unit and associativity laws of [`LTerm::subst`] on every term with
/// `n ≤ max_ctx`, depth `≤ max_depth`. Substitutions draw their images from
/// the depth-2 slices, rotated per term.
pub fn check_reference_laws(max_ctx: usize, max_depth: usize) -> LambdaLawReport {
    let mut report = LambdaLawReport::default();
    let pools: Vec<Vec<LTerm>> = (0..=max_ctx).map(|m| enumerate_lambda(m, 2)).collect();
    let pick = |m: usize, k: usize| -> LTerm {
        let pool = &pools[m];
        if pool.is_empty() {
            LTerm::lam(LTerm::Var(0))
        } else {
            pool[k % pool.len()].clone()
        }
    };
    for n in 0..=max_ctx {
        let ident: Vec<LTerm> = (0..n).map(LTerm::Var).collect();
        for (k, t) in enumerate_lambda(n, max_depth).iter().enumerate() {
            report.checked += 1;
            if t.subst(&ident, n).as_ref() != Some(t) {
                report.failures.push(format!("right unit: {t}"));
            }
            for m in 0..=max_ctx {
                let f: Vec<LTerm> = (0..n).map(|i| pick(m, k + 3 * i)).collect();
                if let LTerm::Var(i) = t {
                    if t.subst(&f, m).as_ref() != Some(&f[*i]) {
                        report.failures.push(format!("left unit: {t}"));
                    }
                }
                let p = (m + 1) % (max_ctx + 1);
                let g: Vec<LTerm> = (0..m).map(|i| pick(p, k + 5 * i + 1)).collect();
                let lhs = t.subst(&f, m).and_then(|u| u.subst(&g, p));
                let fg: Option<Vec<LTerm>> = f.iter().map(|u| u.subst(&g, p)).collect();
                let rhs = fg.and_then(|fg| t.subst(&fg, p));
                if lhs.is_none() || lhs != rhs {
                    report.failures.push(format!("assoc: {t}"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_examples() {
        // (\y. x0 y)[x0 := \z. z] in context 0
        let t = LTerm::lam(LTerm::app(LTerm::Var(0), LTerm::Var(1)));
        let id = LTerm::lam(LTerm::Var(0));
        let out = t.subst(&[id], 0).unwrap();
        assert_eq!(out, LTerm::lam(LTerm::app(LTerm::lam(LTerm::Var(1)), LTerm::Var(0))));
        assert!(out.scoped(0));
        assert_eq!(LTerm::Var(2).subst(&[LTerm::Var(0)], 1), None);
        assert_eq!(LTerm::lam(LTerm::Var(1)).weaken_at(1), LTerm::lam(LTerm::Var(2)));
        assert_eq!(LTerm::lam(LTerm::Var(0)).weaken_at(1), LTerm::lam(LTerm::Var(0)));
    }

    #[test]
    fn slice_sizes() {
        assert_eq!(enumerate_lambda(0, 2), vec![LTerm::lam(LTerm::Var(0))]);
        assert_eq!(enumerate_lambda(2, 0).len(), 2);
        // 1 + 1 + 2 = 4 terms in context 1 up to depth 2
        assert_eq!(enumerate_lambda(1, 2).len(), 4);
        for n in 0..3 {
            for d in 0..5 {
                assert!(enumerate_lambda(n, d).iter().all(|t| t.scoped(n) && t.depth() <= d));
            }
        }
    }

    #[test]
    fn own_monad_laws_hold() {
        let r = check_reference_laws(2, 3);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert!(r.checked > 0);
    }

    #[test]
    fn display() {
        let t = LTerm::lam(LTerm::app(LTerm::Var(0), LTerm::Var(1)));
        assert_eq!(t.to_string(), "(\\ (x0 x1))");
    }
}
