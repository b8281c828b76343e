use rand::Rng;

use super::binder::Binder;
use crate::arity_core::Signature;
use crate::initiality::{
    compare, run_enumerated, run_sampled, sample_rng, sample_seed, sample_substitution, sample_term, show_substitution,
    Bounds, Counterexample, EvalReport, Trial,
};
use crate::term_engine::{enumerate_terms, Substitution, Term, TermError, TermSampler};

pub const LEFT_UNIT: &str = "monad.left-unit";
pub const RIGHT_UNIT: &str = "monad.right-unit";
pub const ASSOC: &str = "monad.assoc";

fn left_unit_trial<R: Rng>(b: &dyn Binder, s: &mut TermSampler<'_>, bounds: &Bounds, rng: &mut R) -> Trial {
    if bounds.max_ctx == 0 {
        return Trial::Skip;
    }
    let n = rng.gen_range(1..=bounds.max_ctx);
    let Ok(f) = sample_substitution(s, n, bounds, rng) else {
        return Trial::Skip;
    };
    let i = rng.gen_range(0..n);
    let t = Term::free(i);
    compare(&t, Some(show_substitution(&f)), b.bind(&t, &f), Ok(f.terms()[i].clone()))
}

fn right_unit(b: &dyn Binder, t: &Term, n: usize) -> Trial {
    compare(t, None, b.bind(t, &Substitution::identity(n)), Ok::<_, TermError>(t.clone()))
}

fn assoc(b: &dyn Binder, t: &Term, f: &Substitution, g: &Substitution) -> Trial {
    let lhs = b.bind(t, f).and_then(|u| b.bind(&u, g));
    let rhs = b.compose(f, g).and_then(|fg| b.bind(t, &fg));
    compare(t, Some(format!("{} ; {}", show_substitution(f), show_substitution(g))), lhs, rhs)
}

fn right_unit_trial<R: Rng>(b: &dyn Binder, s: &mut TermSampler<'_>, bounds: &Bounds, rng: &mut R) -> Trial {
    match sample_term(s, bounds, rng) {
        Ok((n, t)) => right_unit(b, &t, n),
        Err(_) => Trial::Skip,
    }
}

fn assoc_trial<R: Rng>(b: &dyn Binder, s: &mut TermSampler<'_>, bounds: &Bounds, rng: &mut R) -> Trial {
    let Ok((n, t)) = sample_term(s, bounds, rng) else {
        return Trial::Skip;
    };
    let Ok(f) = sample_substitution(s, n, bounds, rng) else {
        return Trial::Skip;
    };
    let Ok(g) = sample_substitution(s, f.dst(), bounds, rng) else {
        return Trial::Skip;
    };
    assoc(b, &t, &f, &g)
}

type TrialFn<R> = fn(&dyn Binder, &mut TermSampler<'_>, &Bounds, &mut R) -> Trial;

fn trial_for<R: Rng>(law: &str) -> Option<TrialFn<R>> {
    match law {
        LEFT_UNIT => Some(left_unit_trial::<R>),
        RIGHT_UNIT => Some(right_unit_trial::<R>),
        ASSOC => Some(assoc_trial::<R>),
        _ => None,
    }
}

/// Left unit, right unit and associativity of `binder` on random terms and
/// substitutions, in that order.
pub fn check_monad_laws_with(sig: &Signature, bounds: &Bounds, seed: u64, binder: &dyn Binder) -> [EvalReport; 3] {
    [LEFT_UNIT, RIGHT_UNIT, ASSOC].map(|law| {
        let trial = trial_for(law).expect("known law");
        let mut sampler = TermSampler::new(sig);
        run_sampled(law, bounds.samples, seed, |rng| trial(binder, &mut sampler, bounds, rng))
    })
}

/// [`check_monad_laws_with`] for the engine's substitution.
pub fn check_monad_laws(sig: &Signature, bounds: &Bounds, seed: u64) -> [EvalReport; 3] {
    check_monad_laws_with(sig, bounds, seed, &super::binder::Engine)
}

/// Re-runs the sample of a monad law that produced `replay_seed`.
pub fn replay_monad_law(
    law: &str,
    sig: &Signature,
    bounds: &Bounds,
    replay_seed: u64,
    binder: &dyn Binder,
) -> Option<Counterexample> {
    let trial = trial_for(law)?;
    let mut sampler = TermSampler::new(sig);
    match trial(binder, &mut sampler, bounds, &mut sample_rng(replay_seed)) {
        Trial::Fail(m) => Some(Counterexample {
            term: m.term,
            substitution: m.substitution,
            lhs: m.lhs,
            rhs: m.rhs,
            replay_seed: Some(replay_seed),
        }),
        _ => None,
    }
}

/// The monad laws on every term with `n ≤ max_ctx` and depth `≤ max_depth`.
/// Left unit ranges over every variable against the substitution whose images
/// are the slice itself; associativity pairs each term with seeded random
/// substitutions.
pub fn check_monad_laws_exhaustive(
    sig: &Signature,
    max_ctx: usize,
    max_depth: usize,
    cap: usize,
    seed: u64,
    binder: &dyn Binder,
) -> Result<[EvalReport; 3], TermError> {
    let mut reports = [EvalReport::new(LEFT_UNIT), EvalReport::new(RIGHT_UNIT), EvalReport::new(ASSOC)];
    let bounds = Bounds { samples: 1, max_ctx, max_depth };
    let mut sampler = TermSampler::new(sig);
    for n in 0..=max_ctx {
        let terms = enumerate_terms(sig, n, max_depth, cap)?;
        for m in 0..=max_ctx {
            let images = enumerate_terms(sig, m, max_depth, cap)?;
            if images.is_empty() {
                continue;
            }
            let vars: Vec<usize> = (0..n).collect();
            let f = Substitution::new(m, (0..n).map(|i| images[(i * 7 + m) % images.len()].clone()).collect());
            reports[0].absorb(run_enumerated(LEFT_UNIT, &vars, |&i| {
                compare(
                    &Term::free(i),
                    Some(show_substitution(&f)),
                    binder.bind(&Term::free(i), &f),
                    Ok(f.terms()[i].clone()),
                )
            }));
        }
        reports[1].absorb(run_enumerated(RIGHT_UNIT, &terms, |t| right_unit(binder, t, n)));
        let indexed: Vec<(usize, &Term)> = terms.iter().enumerate().collect();
        reports[2].absorb(run_enumerated(ASSOC, &indexed, |&(k, t)| {
            let mut rng = sample_rng(sample_seed(seed, k));
            let Ok(f) = sample_substitution(&mut sampler, n, &bounds, &mut rng) else {
                return Trial::Skip;
            };
            let Ok(g) = sample_substitution(&mut sampler, f.dst(), &bounds, &mut rng) else {
                return Trial::Skip;
            };
            assoc(binder, t, &f, &g)
        }));
    }
    Ok(reports)
}
