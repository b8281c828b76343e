//! The λ-calculus, its extension by an explicit flattening operation, and
//! its extension by explicit substitutions, together with an independently
//! written λ-calculus that serves as their reference model.

mod reference_lambda;
mod reps;
mod signatures;

pub use reference_lambda::{check_reference_laws, enumerate_lambda, LTerm, LambdaLawReport};
pub use reps::{
    eval_named, reference_lambda_join_rep, reference_lambda_rep, LambdaRep, NamedEvalError, REPRESENTATIONS,
};
pub use signatures::{
    explicit_subst_signature, join_signature, lambda_signature, sigma_arity, sigma_index, sigma_name,
};

/// Contents of the shipped signature files, by file name.
pub const SHIPPED_SIGNATURES: [(&str, &str); 4] = [
    ("lambda.sig", include_str!("../../signatures/lambda.sig")),
    ("lambda-join.sig", include_str!("../../signatures/lambda-join.sig")),
    ("lambda-xsubst-3.sig", include_str!("../../signatures/lambda-xsubst-3.sig")),
    ("empty.sig", include_str!("../../signatures/empty.sig")),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arity_core::Signature;

    #[test]
    fn shipped_files_match_builders() {
        let parsed: Vec<Signature> =
            SHIPPED_SIGNATURES.iter().map(|(_, text)| Signature::parse(text).unwrap()).collect();
        assert_eq!(parsed[0], lambda_signature());
        assert_eq!(parsed[1], join_signature());
        assert_eq!(parsed[2], explicit_subst_signature(3));
        assert!(parsed[3].is_empty());
        assert_eq!(parsed[2].name, "lambda-xsubst-3");
        assert!(parsed.iter().all(|s| s.validate().is_empty()));
    }
}
