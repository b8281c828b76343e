use rand::Rng;

use super::strength::sample_arg;
use crate::arity_core::{derive_n, print_arity, Arity, Signature};
use crate::examples::{reference_lambda_join_rep, sigma_arity, sigma_name};
use crate::initiality::{compare, eval, run_sampled, sample_seed, Bounds, EvalReport, Representation, Trial};
use crate::term_engine::{map_vars_arg, ArgValue, Payload, Term, TermError, TermSampler};

pub const NATURALITY: &str = "sigma.naturality";

/// Largest `k` such that `sigma0 ..= sigma<k>` are all declared with their
/// expected arities.
pub fn sigma_family_bound(sig: &Signature) -> Option<usize> {
    let present = |k: usize| sig.arity(&sigma_name(k)) == Some(&sigma_arity(k));
    if !present(0) {
        return None;
    }
    let mut k = 0;
    while present(k + 1) {
        k += 1;
    }
    Some(k)
}

/// Every function `{0..m} -> {0..n}`, as image lists in lexicographic order.
pub fn functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |j| {
                    let mut f = prefix.clone();
                    f.push(j);
                    f
                })
            })
            .collect();
    }
    out
}

/// Moves the body of `m` binders under `n` binders, sending the variable of
/// slot `j` to slot `u[j]`. Slot 0 is the outermost binder.
pub fn reindex_slots(v: &ArgValue, m: usize, u: &[usize], n: usize) -> Result<ArgValue, TermError> {
    let mut body = v;
    for _ in 0..m {
        body = match body {
            ArgValue::Scope(b) => b,
            _ => {
                return Err(TermError::ShapeMismatch {
                    expected: print_arity(&derive_n(Arity::Theta, m)),
                    found: body.to_string(),
                })
            }
        };
    }
    let moved = map_vars_arg(body, 0, &mut |p, e| match p {
        Payload::Bound(k) if *k < e => Ok(Term::bound(*k)),
        Payload::Bound(k) if k - e < m => {
            let slot = m - 1 - (k - e);
            Ok(Term::bound(n - 1 - u[slot] + e))
        }
        Payload::Bound(k) => Err(TermError::BoundOutOfRange { level: *k, depth: e + m }),
        Payload::Free(i) => Ok(Term::free(*i)),
        Payload::Nested(_) => Err(TermError::StrayNested),
    })?;
    Ok((0..n).fold(moved, |acc, _| ArgValue::scope(acc)))
}

fn sigma_term(k: usize, body: ArgValue, args: impl IntoIterator<Item = Term>) -> Term {
    let mut items = vec![body];
    items.extend(args.into_iter().map(ArgValue::Term));
    Term::op(sigma_name(k), ArgValue::Tuple(items))
}

fn sample_args<R: Rng>(
    s: &mut TermSampler<'_>,
    c: usize,
    count: usize,
    bounds: &Bounds,
    rng: &mut R,
) -> Option<Vec<Term>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let t = (0..64).find_map(|_| {
            let d = rng.gen_range(0..=bounds.max_depth);
            s.term(c, d, rng).ok()
        })?;
        out.push(t);
    }
    Some(out)
}

/// For every reindexing `u: m -> n` with `m, n ≤ max_n`, checks in `rep`
/// that `sigma<n>(reindex_u(t), a)` and `sigma<m>(t, a ∘ u)` agree on random
/// bodies `t` and arguments `a`; `bounds.samples` instances per `u`.
pub fn check_subst_family_in<R: Representation + ?Sized>(
    sig: &Signature,
    max_n: usize,
    rep: &R,
    bounds: &Bounds,
    seed: u64,
) -> Result<EvalReport, TermError> {
    if let Some(k) = (0..=max_n).find(|&k| sig.arity(&sigma_name(k)) != Some(&sigma_arity(k))) {
        return Err(TermError::UnknownOp(sigma_name(k)));
    }
    let mut report = EvalReport::new(NATURALITY);
    let mut sampler = TermSampler::new(sig);
    let mut square = 0;
    for m in 0..=max_n {
        let body_shape = derive_n(Arity::Theta, m);
        for n in 0..=max_n {
            for u in functions(m, n) {
                report.absorb(run_sampled(NATURALITY, bounds.samples, sample_seed(seed, square), |rng| {
                    let Some((c, body)) = sample_arg(&mut sampler, &body_shape, bounds, rng) else {
                        return Trial::Skip;
                    };
                    let Some(args) = sample_args(&mut sampler, c, n, bounds, rng) else {
                        return Trial::Skip;
                    };
                    let lhs = reindex_slots(&body, m, &u, n).map(|b| sigma_term(n, b, args.iter().cloned()));
                    let rhs = sigma_term(m, body.clone(), u.iter().map(|&j| args[j].clone()));
                    let shown = Some(format!("u = {u:?} : {m} -> {n}"));
                    match lhs {
                        Ok(lhs) => compare(&rhs, shown, eval(&lhs, sig, rep, c), eval(&rhs, sig, rep, c)),
                        Err(e) => compare(&rhs, shown, Err(e.into()), eval(&rhs, sig, rep, c)),
                    }
                }));
                square += 1;
            }
        }
    }
    Ok(report)
}

/// [`check_subst_family_in`] in the reference λ-calculus.
pub fn check_subst_family(sig: &Signature, max_n: usize, bounds: &Bounds, seed: u64) -> Result<EvalReport, TermError> {
    check_subst_family_in(sig, max_n, &reference_lambda_join_rep(), bounds, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{explicit_subst_signature, lambda_signature, reference_lambda_rep, LTerm};
    use crate::term_engine::parse_arg;

    #[test]
    fn function_counts() {
        let total: usize = (0..=3).flat_map(|m| (0..=3).map(move |n| functions(m, n).len())).sum();
        assert_eq!(total, 60);
        assert_eq!(functions(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(functions(0, 0), vec![Vec::<usize>::new()]);
        assert!(functions(1, 0).is_empty());
    }

    #[test]
    fn reindexing_moves_slots() {
        // body refers to slot 0 (outer) then slot 1 (inner)
        let v = parse_arg("(scope (scope (op app (tuple (bnd 1) (bnd 0)))))").unwrap();
        let swapped = reindex_slots(&v, 2, &[1, 0], 2).unwrap();
        assert_eq!(swapped.to_string(), "(scope (scope (op app (tuple (bnd 0) (bnd 1)))))");
        let diag = reindex_slots(&v, 2, &[0, 0], 1).unwrap();
        assert_eq!(diag.to_string(), "(scope (op app (tuple (bnd 0) (bnd 0))))");
        let under = parse_arg("(scope (op abs (scope (op app (tuple (bnd 1) (bnd 0))))))").unwrap();
        let moved = reindex_slots(&under, 1, &[1], 2).unwrap();
        assert_eq!(moved.to_string(), "(scope (scope (op abs (scope (op app (tuple (bnd 1) (bnd 0)))))))");
        let moved = reindex_slots(&under, 1, &[0], 2).unwrap();
        assert_eq!(moved.to_string(), "(scope (scope (op abs (scope (op app (tuple (bnd 2) (bnd 0)))))))");
    }

    #[test]
    fn injection_drops_the_unused_argument() {
        let sig = explicit_subst_signature(3);
        let rep = reference_lambda_rep();
        let body = parse_arg("(scope (op app (tuple (bnd 0) (var 0))))").unwrap();
        let a = vec![Term::free(0), parse_arg("(op abs (scope (bnd 0)))").unwrap().as_term().unwrap().clone()];
        // u: 1 -> 2, 0 |-> 1
        let lhs = sigma_term(2, reindex_slots(&body, 1, &[1], 2).unwrap(), a.clone());
        let rhs = sigma_term(1, body, [a[1].clone()]);
        let expected = LTerm::app(LTerm::lam(LTerm::Var(1)), LTerm::Var(0));
        assert_eq!(eval(&lhs, &sig, &rep, 1).unwrap(), expected);
        assert_eq!(eval(&rhs, &sig, &rep, 1).unwrap(), expected);
    }

    #[test]
    fn family_bound() {
        assert_eq!(sigma_family_bound(&explicit_subst_signature(3)), Some(3));
        assert_eq!(sigma_family_bound(&lambda_signature()), None);
        assert!(check_subst_family(&lambda_signature(), 1, &Bounds::default(), 0).is_err());
    }
}
