//! Arities, signatures and their amalgamation.

mod arity;
mod signature;

pub use arity::{algebraic, derive_n, is_algebraic, parse_arity, print_arity, Arity, ArityParseError};
pub use signature::{
    is_valid_op_name, merge_signatures, Merged, OpDecl, Signature, SignatureError, SignatureInclusion, ValidationIssue,
};
