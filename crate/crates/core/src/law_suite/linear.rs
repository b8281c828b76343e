use std::fmt;
use std::str::FromStr;

use super::strength::sample_arg;
use crate::arity_core::{Arity, Signature};
use crate::initiality::{
    compare, run_sampled, sample_substitution, sample_term, show_substitution, Bounds, EvalReport, Trial,
};
use crate::term_engine::{bind, bind_arg, eta_inner, eta_outer, flatten_arg, ArgValue, TermSampler};

/// The three structural maps between `T` and `T . T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearMorphism {
    /// `T . T -> T`, splicing every payload into place.
    Mu,
    /// `T -> T . T`, wrapping each variable as a nested variable term.
    EtaInner,
    /// `T -> T . T`, wrapping the whole term as one nested payload.
    EtaOuter,
}

impl LinearMorphism {
    pub const ALL: [LinearMorphism; 3] = [LinearMorphism::Mu, LinearMorphism::EtaInner, LinearMorphism::EtaOuter];

    pub fn law_id(self) -> &'static str {
        match self {
            LinearMorphism::Mu => "linear.mu",
            LinearMorphism::EtaInner => "linear.eta-inner",
            LinearMorphism::EtaOuter => "linear.eta-outer",
        }
    }
}

impl fmt::Display for LinearMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinearMorphism::Mu => "mu",
            LinearMorphism::EtaInner => "eta_inner",
            LinearMorphism::EtaOuter => "eta_outer",
        })
    }
}

impl FromStr for LinearMorphism {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mu" => Ok(LinearMorphism::Mu),
            "eta_inner" => Ok(LinearMorphism::EtaInner),
            "eta_outer" => Ok(LinearMorphism::EtaOuter),
            other => Err(format!("unknown morphism `{other}`")),
        }
    }
}

/// Checks that the morphism commutes with substitution, where substitution
/// on `T . T` acts on the nested payloads only.
pub fn check_linearity(sig: &Signature, morphism: LinearMorphism, bounds: &Bounds, seed: u64) -> EvalReport {
    let mut sampler = TermSampler::new(sig);
    let two_layers = Arity::comp(Arity::Theta, Arity::Theta);
    run_sampled(morphism.law_id(), bounds.samples, seed, |rng| {
        let drawn = match morphism {
            LinearMorphism::Mu => sample_arg(&mut sampler, &two_layers, bounds, rng),
            _ => sample_term(&mut sampler, bounds, rng).ok().map(|(n, t)| (n, ArgValue::Term(t))),
        };
        let Some((n, v)) = drawn else {
            return Trial::Skip;
        };
        let Ok(s) = sample_substitution(&mut sampler, n, bounds, rng) else {
            return Trial::Skip;
        };
        let shown = Some(show_substitution(&s));
        match (morphism, &v) {
            (LinearMorphism::Mu, _) => {
                let lhs = bind_arg(&v, &s).and_then(|w| flatten_arg(&w));
                let rhs = flatten_arg(&v).and_then(|t| bind(&t, &s));
                compare(&v, shown, lhs, rhs)
            }
            (LinearMorphism::EtaInner, ArgValue::Term(t)) => {
                let lhs = bind(t, &s).and_then(|u| eta_inner(&u));
                let rhs = eta_inner(t).and_then(|w| bind_arg(&w, &s));
                compare(t, shown, lhs, rhs)
            }
            (LinearMorphism::EtaOuter, ArgValue::Term(t)) => {
                let lhs = bind(t, &s).map(|u| eta_outer(&u));
                let rhs = bind_arg(&eta_outer(t), &s);
                compare(t, shown, lhs, rhs)
            }
            _ => Trial::Skip,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term_engine::{parse_term, Substitution};

    #[test]
    fn eta_inner_fails_on_a_non_renaming() {
        let t = parse_term("(var 0)").unwrap();
        let s = Substitution::new(1, vec![parse_term("(op app (tuple (var 0) (var 0)))").unwrap()]);
        let lhs = eta_inner(&bind(&t, &s).unwrap()).unwrap();
        let rhs = bind_arg(&eta_inner(&t).unwrap(), &s).unwrap();
        assert_eq!(lhs.to_string(), "(outer (op app (tuple (nested (var 0)) (nested (var 0)))))");
        assert_eq!(rhs.to_string(), "(outer (nested (op app (tuple (var 0) (var 0)))))");
    }

    #[test]
    fn names_round_trip() {
        for m in LinearMorphism::ALL {
            assert_eq!(m.to_string().parse::<LinearMorphism>().unwrap(), m);
        }
    }
}
