use super::eval::{eval, eval_args_first, EvalError, Representation};
use super::report::{
    compare, run_enumerated, run_sampled, sample_rng, sample_substitution, sample_term, show_substitution, Bounds,
    Counterexample, EvalReport, Trial,
};
use super::tautological::{translate, Pullback};
use crate::arity_core::{merge_signatures, Merged, Signature, SignatureError, SignatureInclusion};
use crate::term_engine::{bind, enumerate_terms, Term, TermError, TermSampler};

fn morphism_trial<R: Representation + ?Sized, G: rand::Rng>(
    sig: &Signature,
    rep: &R,
    sampler: &mut TermSampler<'_>,
    bounds: &Bounds,
    rng: &mut G,
) -> Trial {
    let Ok((n, t)) = sample_term(sampler, bounds, rng) else {
        return Trial::Skip;
    };
    let Ok(s) = sample_substitution(sampler, n, bounds, rng) else {
        return Trial::Skip;
    };
    let m = s.dst();
    let lhs = bind(&t, &s).map_err(EvalError::from).and_then(|u| eval(&u, sig, rep, m));
    let rhs = (|| {
        let v = eval(&t, sig, rep, n)?;
        let images = s.terms().iter().map(|u| eval(u, sig, rep, m)).collect::<Result<Vec<_>, _>>()?;
        rep.tbind(&v, m, &images)
    })();
    match compare(&t, Some(show_substitution(&s)), lhs, rhs) {
        Trial::Pass => compare(&t, None, eval(&t, sig, rep, n), eval_args_first(&t, sig, rep, n)),
        other => other,
    }
}

/// Samples `(t, s)` pairs and checks that evaluation turns substitution into
/// the target's bind, and that the arguments-first evaluator agrees with
/// [`eval`].
pub fn check_monad_morphism<R: Representation + ?Sized>(
    sig: &Signature,
    rep: &R,
    bounds: &Bounds,
    seed: u64,
) -> EvalReport {
    let mut sampler = TermSampler::new(sig);
    run_sampled("eval.morphism", bounds.samples, seed, |rng| morphism_trial(sig, rep, &mut sampler, bounds, rng))
}

/// Regenerates the [`check_monad_morphism`] sample with `replay_seed`,
/// returning its counterexample if it fails.
pub fn replay_monad_morphism<R: Representation + ?Sized>(
    sig: &Signature,
    rep: &R,
    bounds: &Bounds,
    replay_seed: u64,
) -> Option<Counterexample> {
    let mut sampler = TermSampler::new(sig);
    match morphism_trial(sig, rep, &mut sampler, bounds, &mut sample_rng(replay_seed)) {
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

/// Checks that the two evaluators agree on every term of the enumeration
/// slice `n ≤ max_ctx`, depth `≤ max_depth`.
pub fn check_eval_agreement<R: Representation + ?Sized>(
    sig: &Signature,
    rep: &R,
    max_ctx: usize,
    max_depth: usize,
    cap: usize,
) -> Result<EvalReport, TermError> {
    let mut report = EvalReport::new("eval.uniqueness");
    for n in 0..=max_ctx {
        let terms = enumerate_terms(sig, n, max_depth, cap)?;
        report.absorb(run_enumerated("eval.uniqueness", &terms, |t| {
            compare(t, None, eval(t, sig, rep, n), eval_args_first(t, sig, rep, n))
        }));
    }
    Ok(report)
}

/// The amalgamation square: `shared` includes into `left` and `right`, and
/// both include into the merged signature.
#[derive(Clone, Debug)]
pub struct Amalgamation {
    pub shared: Signature,
    pub left: Signature,
    pub right: Signature,
    pub shared_left: SignatureInclusion,
    pub shared_right: SignatureInclusion,
    pub merged: Merged,
}

impl Amalgamation {
    pub fn new(
        shared_left: SignatureInclusion,
        shared_right: SignatureInclusion,
    ) -> Result<Amalgamation, SignatureError> {
        let merged = merge_signatures(&shared_left.target, &shared_right.target, &shared_left, &shared_right)?;
        Ok(Amalgamation {
            shared: shared_left.source.clone(),
            left: shared_left.target.clone(),
            right: shared_right.target.clone(),
            shared_left,
            shared_right,
            merged,
        })
    }

    /// Amalgamation of two extensions of `shared` that include it by name.
    pub fn by_name(shared: &Signature, left: &Signature, right: &Signature) -> Result<Amalgamation, SignatureError> {
        Amalgamation::new(SignatureInclusion::by_name(shared, left)?, SignatureInclusion::by_name(shared, right)?)
    }

    pub fn signature(&self) -> &Signature {
        &self.merged.signature
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Shared,
}

fn pushout_trial<R: Representation + ?Sized>(am: &Amalgamation, rep: &R, side: Side, t: &Term, n: usize) -> Trial {
    let sig = am.signature();
    let (inc, source) = match side {
        Side::Left => (&am.merged.from_left, &am.left),
        Side::Right => (&am.merged.from_right, &am.right),
        Side::Shared => {
            let via_left = am.shared_left.then(&am.merged.from_left);
            let via_right = am.shared_right.then(&am.merged.from_right);
            let (Ok(l), Ok(r)) = (via_left, via_right) else {
                return Trial::Fail(super::report::Mismatch {
                    term: t.to_string(),
                    substitution: None,
                    lhs: "square does not compose".into(),
                    rhs: String::new(),
                });
            };
            let lt = translate(t, &l);
            let rt = translate(t, &r);
            return match compare(t, None, lt.clone(), rt) {
                Trial::Pass => compare(
                    t,
                    None,
                    eval(t, &am.shared, &Pullback::new(rep, &l), n),
                    eval(t, &am.shared, &Pullback::new(rep, &r), n),
                ),
                other => other,
            };
        }
    };
    let lhs = translate(t, inc).and_then(|u| eval(&u, sig, rep, n));
    let rhs = eval(t, source, &Pullback::new(rep, inc), n);
    compare(t, None, lhs, rhs)
}

/// Samples terms over each corner of the square and checks that evaluating
/// the translated term in the merged representation equals evaluating the
/// original under the restricted representation, and that the two ways
/// around the square agree on shared terms.
pub fn check_pushout<R: Representation + ?Sized>(am: &Amalgamation, rep: &R, bounds: &Bounds, seed: u64) -> EvalReport {
    let mut samplers = [
        (Side::Left, TermSampler::new(&am.left)),
        (Side::Right, TermSampler::new(&am.right)),
        (Side::Shared, TermSampler::new(&am.shared)),
    ];
    let mut i = 0usize;
    run_sampled("modularity.pushout", bounds.samples, seed, |rng| {
        let (side, sampler) = &mut samplers[i % 3];
        i += 1;
        match sample_term(sampler, bounds, rng) {
            Ok((n, t)) => pushout_trial(am, rep, *side, &t, n),
            Err(_) => Trial::Skip,
        }
    })
}

/// [`check_pushout`] on every term of each corner with `n ≤ max_ctx` and
/// depth `≤ max_depth`.
pub fn check_pushout_exhaustive<R: Representation + ?Sized>(
    am: &Amalgamation,
    rep: &R,
    max_ctx: usize,
    max_depth: usize,
    cap: usize,
) -> Result<EvalReport, TermError> {
    let mut report = EvalReport::new("modularity.pushout");
    for (side, sig) in [(Side::Left, &am.left), (Side::Right, &am.right), (Side::Shared, &am.shared)] {
        for n in 0..=max_ctx {
            let terms = enumerate_terms(sig, n, max_depth, cap)?;
            report.absorb(run_enumerated("modularity.pushout", &terms, |t| pushout_trial(am, rep, side, t, n)));
        }
    }
    Ok(report)
}
