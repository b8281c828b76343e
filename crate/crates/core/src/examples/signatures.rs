use crate::arity_core::{algebraic, derive_n, Arity, Signature};

/// `{app: T * T, abs: T'}`.
pub fn lambda_signature() -> Signature {
    Signature::new("lambda", vec![("app", algebraic(&[0, 0])), ("abs", derive_n(Arity::Theta, 1))])
}

/// The λ signature with an explicit flattening operation `join: T . T`.
pub fn join_signature() -> Signature {
    let mut sig = lambda_signature();
    sig.name = "lambda-join".into();
    sig.ops.push(crate::arity_core::OpDecl { name: "join".into(), arity: Arity::comp(Arity::Theta, Arity::Theta) });
    sig
}

/// Name of the `k`-th explicit substitution operation.
pub fn sigma_name(k: usize) -> String {
    format!("sigma{k}")
}

/// Arity of `sigma<k>`: a body under `k` binders followed by `k` arguments.
pub fn sigma_arity(k: usize) -> Arity {
    let mut factors = vec![derive_n(Arity::Theta, k)];
    factors.extend(std::iter::repeat_n(Arity::Theta, k));
    Arity::prod(factors)
}

/// The λ signature extended with `sigma0 ..= sigma<max>`.
pub fn explicit_subst_signature(max: usize) -> Signature {
    let mut sig = lambda_signature();
    sig.name = format!("lambda-xsubst-{max}");
    for k in 0..=max {
        sig.ops.push(crate::arity_core::OpDecl { name: sigma_name(k), arity: sigma_arity(k) });
    }
    sig
}

/// Parses `sigma<k>` back to `k`.
pub fn sigma_index(op: &str) -> Option<usize> {
    let digits = op.strip_prefix("sigma")?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    digits.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arity_core::is_algebraic;

    #[test]
    fn lambda_arities() {
        let sig = lambda_signature();
        assert_eq!(sig.arity("app"), Some(&Arity::Prod(vec![Arity::Theta, Arity::Theta])));
        assert_eq!(sig.arity("abs"), Some(&Arity::deriv(Arity::Theta)));
        assert!(sig.ops.iter().all(|d| is_algebraic(&d.arity)));
        assert!(sig.validate().is_empty());
    }

    #[test]
    fn join_is_not_algebraic() {
        let sig = join_signature();
        assert!(!is_algebraic(sig.arity("join").unwrap()));
        assert_eq!(sig.len(), 3);
    }

    #[test]
    fn sigma_arities() {
        assert_eq!(sigma_arity(0), Arity::Prod(vec![Arity::Theta]));
        assert_eq!(sigma_arity(1), Arity::Prod(vec![Arity::deriv(Arity::Theta), Arity::Theta]));
        assert_eq!(
            sigma_arity(2),
            Arity::Prod(vec![Arity::deriv(Arity::deriv(Arity::Theta)), Arity::Theta, Arity::Theta])
        );
        let sig = explicit_subst_signature(3);
        assert_eq!(sig.len(), 6);
        assert!(sig.validate().is_empty());
        assert_eq!(sigma_index("sigma3"), Some(3));
        assert_eq!(sigma_index("sigma"), None);
        assert_eq!(sigma_index("sigma03"), None);
    }
}
