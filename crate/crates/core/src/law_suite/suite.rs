use super::linear::{check_linearity, LinearMorphism};
use super::monad::check_monad_laws;
use super::sigma::{check_subst_family, sigma_family_bound, NATURALITY};
use super::strength::{check_strength_composition, check_strength_unit};
use crate::arity_core::Signature;
use crate::examples::{join_signature, sigma_index};
use crate::initiality::{sample_seed, Bounds, EvalReport};

/// Every law identifier, in report order.
pub const LAW_IDS: [&str; 9] = [
    "monad.left-unit",
    "monad.right-unit",
    "monad.assoc",
    "strength.unit",
    "strength.comp",
    "linear.mu",
    "linear.eta-inner",
    "linear.eta-outer",
    "sigma.naturality",
];

/// Largest family index exercised by the full suite.
pub const SIGMA_SUITE_BOUND: usize = 3;

/// The family bound to check when `sig` is a λ-calculus with explicit
/// substitutions that the reference representation interprets, else `None`.
pub fn sigma_applicable(sig: &Signature) -> Option<usize> {
    let max = sigma_family_bound(sig)?;
    let base = join_signature();
    let known = sig.ops.iter().all(|d| match sigma_index(&d.name) {
        Some(k) => k <= max,
        None => base.arity(&d.name) == Some(&d.arity),
    });
    (known && sig.contains("app") && sig.contains("abs")).then_some(max.min(SIGMA_SUITE_BOUND))
}

/// Runs every law in [`LAW_IDS`] order. Each law draws from its own seed
/// derived from `seed`. When the σ-family check does not apply, its report
/// has zero samples.
pub fn run_all(sig: &Signature, bounds: &Bounds, seed: u64) -> Vec<EvalReport> {
    let law_seed = |k| sample_seed(seed, k);
    let mut out: Vec<EvalReport> = check_monad_laws(sig, bounds, law_seed(0)).into();
    out.push(check_strength_unit(sig, bounds, law_seed(3)));
    out.push(check_strength_composition(sig, bounds, law_seed(4)));
    for (k, m) in LinearMorphism::ALL.into_iter().enumerate() {
        out.push(check_linearity(sig, m, bounds, law_seed(5 + k)));
    }
    let sigma = sigma_applicable(sig)
        .and_then(|max| check_subst_family(sig, max, bounds, law_seed(8)).ok())
        .unwrap_or_else(|| EvalReport::new(NATURALITY));
    out.push(sigma);
    out
}
