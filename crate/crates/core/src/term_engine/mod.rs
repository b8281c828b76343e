//! Well-scoped terms over a signature, with substitution, enumeration and
//! random generation.

mod enumerate;
mod error;
mod random;
mod sexpr;
mod subst;
mod term;
pub(crate) mod wf;

pub use enumerate::{enumerate_args, enumerate_terms, DEFAULT_CAP};
pub use error::TermError;
pub use random::{random_term, TermSampler};
pub use sexpr::{parse_arg, parse_term, print_arg, print_term, TermParseError};
pub use subst::{
    bind, bind_arg, bound_closed, close_arg, eta_inner, eta_outer, extract_nested, flatten, flatten_arg, map_nested,
    map_vars, map_vars_arg, open_arg, rename, rename_arg, Substitution, VarFn,
};
pub use term::{ArgValue, Payload, Term};
pub use wf::{check_arg, check_term, well_formed};
