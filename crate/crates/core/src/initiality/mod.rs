//! Evaluation of terms into representations, translation along signature
//! inclusions, and the checks that witness initiality and modularity.

mod checks;
mod eval;
mod report;
mod tautological;

pub use checks::{
    check_eval_agreement, check_monad_morphism, check_pushout, check_pushout_exhaustive, replay_monad_morphism,
    Amalgamation,
};
pub use eval::{eval, eval_arg, eval_args_first, EvalError, Representation, TArg, TargetMonad};
pub use report::{
    compare, run_enumerated, run_sampled, sample_rng, sample_seed, sample_substitution, sample_term, show_substitution,
    Bounds, Counterexample, EvalReport, Mismatch, Trial,
};
pub use tautological::{eval_self, rebuild, translate, translate_via_eval, Pullback, SelfRep};
