use rand::Rng;

use super::binder::{Binder, Engine};
use crate::arity_core::{print_arity, Arity, Signature};
use crate::initiality::{
    compare, run_enumerated, run_sampled, sample_rng, sample_seed, sample_substitution, show_substitution, Bounds,
    EvalReport, Trial,
};
use crate::term_engine::{enumerate_args, ArgValue, Substitution, TermError, TermSampler};

pub const UNIT: &str = "strength.unit";
pub const COMP: &str = "strength.comp";

/// Every distinct arity occurring inside an operation's arity, plus `T`, in
/// order of first appearance.
pub fn shapes(sig: &Signature) -> Vec<Arity> {
    let mut out = vec![Arity::Theta];
    for decl in &sig.ops {
        decl.arity.visit(&mut |a| {
            if !out.contains(a) {
                out.push(a.clone());
            }
        });
    }
    out
}

/// Draws a context size and an argument value of `shape` in it.
pub(crate) fn sample_arg<R: Rng>(
    s: &mut TermSampler<'_>,
    shape: &Arity,
    bounds: &Bounds,
    rng: &mut R,
) -> Option<(usize, ArgValue)> {
    for _ in 0..64 {
        let n = rng.gen_range(0..=bounds.max_ctx);
        let d = rng.gen_range(0..=bounds.max_depth);
        if let Ok(v) = s.arg(shape, n, d, rng) {
            return Some((n, v));
        }
    }
    None
}

fn unit(b: &dyn Binder, v: &ArgValue, n: usize) -> Trial {
    let id = Substitution::identity(n);
    match compare(v, None, b.bind_arg(v, &id), Ok::<_, TermError>(v.clone())) {
        // the identity pushed under one more binder is still the identity
        Trial::Pass => compare(v, None, b.bind_arg(v, &id.lift()), Ok(v.clone())),
        other => other,
    }
}

fn comp(b: &dyn Binder, v: &ArgValue, f: &Substitution, g: &Substitution) -> Trial {
    let lhs = b.bind_arg(v, f).and_then(|w| b.bind_arg(&w, g));
    let rhs = b.compose(f, g).and_then(|fg| b.bind_arg(v, &fg));
    compare(v, Some(format!("{} ; {}", show_substitution(f), show_substitution(g))), lhs, rhs)
}

fn label(law: &str, shape: &Arity) -> String {
    format!("{law}[{}]", print_arity(shape))
}

/// Identity substitution, also lifted under a binder, leaves random argument
/// values of `shape` unchanged.
pub fn check_strength_unit_shape(
    sig: &Signature,
    shape: &Arity,
    bounds: &Bounds,
    seed: u64,
    binder: &dyn Binder,
) -> EvalReport {
    let mut sampler = TermSampler::new(sig);
    run_sampled(&label(UNIT, shape), bounds.samples, seed, |rng| match sample_arg(&mut sampler, shape, bounds, rng) {
        Some((n, v)) => unit(binder, &v, n),
        None => Trial::Skip,
    })
}

/// Substituting twice at `shape` equals substituting the composite.
pub fn check_strength_comp_shape(
    sig: &Signature,
    shape: &Arity,
    bounds: &Bounds,
    seed: u64,
    binder: &dyn Binder,
) -> EvalReport {
    let mut sampler = TermSampler::new(sig);
    run_sampled(&label(COMP, shape), bounds.samples, seed, |rng| {
        let Some((n, v)) = sample_arg(&mut sampler, shape, bounds, rng) else {
            return Trial::Skip;
        };
        let Ok(f) = sample_substitution(&mut sampler, n, bounds, rng) else {
            return Trial::Skip;
        };
        let Ok(g) = sample_substitution(&mut sampler, f.dst(), bounds, rng) else {
            return Trial::Skip;
        };
        comp(binder, &v, &f, &g)
    })
}

fn over_shapes(
    law: &str,
    sig: &Signature,
    bounds: &Bounds,
    seed: u64,
    one: impl Fn(&Signature, &Arity, &Bounds, u64, &dyn Binder) -> EvalReport,
) -> EvalReport {
    let mut report = EvalReport::new(law);
    for (k, shape) in shapes(sig).iter().enumerate() {
        report.absorb(one(sig, shape, bounds, sample_seed(seed, k), &Engine));
    }
    report
}

/// [`check_strength_unit_shape`] for every shape of `sig`.
pub fn check_strength_unit(sig: &Signature, bounds: &Bounds, seed: u64) -> EvalReport {
    over_shapes(UNIT, sig, bounds, seed, check_strength_unit_shape)
}

/// [`check_strength_comp_shape`] for every shape of `sig`.
pub fn check_strength_composition(sig: &Signature, bounds: &Bounds, seed: u64) -> EvalReport {
    over_shapes(COMP, sig, bounds, seed, check_strength_comp_shape)
}

/// Both strength laws on every argument value of `shape` with `n ≤ max_ctx`
/// and depth `≤ max_depth`; composition uses seeded random substitutions.
pub fn check_strength_exhaustive(
    sig: &Signature,
    shape: &Arity,
    max_ctx: usize,
    max_depth: usize,
    cap: usize,
    seed: u64,
) -> Result<[EvalReport; 2], TermError> {
    let mut reports = [EvalReport::new(label(UNIT, shape)), EvalReport::new(label(COMP, shape))];
    let bounds = Bounds { samples: 1, max_ctx, max_depth };
    let mut sampler = TermSampler::new(sig);
    for n in 0..=max_ctx {
        let values = enumerate_args(sig, shape, n, max_depth, cap)?;
        reports[0].absorb(run_enumerated(UNIT, &values, |v| unit(&Engine, v, n)));
        let indexed: Vec<(usize, &ArgValue)> = values.iter().enumerate().collect();
        reports[1].absorb(run_enumerated(COMP, &indexed, |&(k, v)| {
            let mut rng = sample_rng(sample_seed(seed, k));
            let Ok(f) = sample_substitution(&mut sampler, n, &bounds, &mut rng) else {
                return Trial::Skip;
            };
            let Ok(g) = sample_substitution(&mut sampler, f.dst(), &bounds, &mut rng) else {
                return Trial::Skip;
            };
            comp(&Engine, v, &f, &g)
        }));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{explicit_subst_signature, join_signature};

    #[test]
    fn shapes_of_the_join_signature() {
        let found: Vec<String> = shapes(&join_signature()).iter().map(print_arity).collect();
        assert_eq!(found, vec!["T", "T * T", "T'", "T . T"]);
        let sigma = shapes(&explicit_subst_signature(2));
        assert!(sigma.contains(&Arity::deriv(Arity::deriv(Arity::Theta))));
    }
}
