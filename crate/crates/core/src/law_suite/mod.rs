//! Sampled and exhaustive checks of the algebraic laws of generated syntax:
//! the monad laws of substitution, the strength laws per argument shape,
//! linearity of the structural maps between `T` and `T . T`, and naturality
//! of the explicit substitution family.
//!
//! Every check is deterministic in its seed. A failing sample records the
//! seed that regenerates it.
//!
//! The unit `η_R` of a representation, seen as a map from the variables into
//! `R`, is not a linear map of modules over `R`: the variables carry no
//! substitution action, so there is no square to test and none is provided.

mod binder;
pub mod controls;
mod linear;
mod monad;
mod sigma;
mod strength;
mod suite;

pub use binder::{Binder, Engine};
pub use linear::{check_linearity, LinearMorphism};
pub use monad::{
    check_monad_laws, check_monad_laws_exhaustive, check_monad_laws_with, replay_monad_law, ASSOC, LEFT_UNIT,
    RIGHT_UNIT,
};
pub use sigma::{check_subst_family, check_subst_family_in, functions, reindex_slots, sigma_family_bound, NATURALITY};
pub use strength::{
    check_strength_comp_shape, check_strength_composition, check_strength_exhaustive, check_strength_unit,
    check_strength_unit_shape, shapes, COMP, UNIT,
};
pub use suite::{run_all, sigma_applicable, LAW_IDS, SIGMA_SUITE_BOUND};
