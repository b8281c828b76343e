use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term_engine::{Substitution, Term, TermError, TermSampler};

/// One failing instance of a law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub term: String,
    pub substitution: Option<String>,
    pub lhs: String,
    pub rhs: String,
    /// Seed that regenerates this sample; `None` for enumerated instances.
    pub replay_seed: Option<u64>,
}

/// Outcome of checking one law on a batch of instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub law: String,
    pub samples: usize,
    pub failures: Vec<Counterexample>,
}

impl EvalReport {
    pub fn new(law: impl Into<String>) -> EvalReport {
        EvalReport { law: law.into(), samples: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Counterexample> {
        self.failures.first()
    }

    /// Appends the samples and failures of `other`.
    pub fn absorb(&mut self, other: EvalReport) {
        self.samples += other.samples;
        self.failures.extend(other.failures);
    }

    /// The `<law> <samples> <failures>` summary line.
    pub fn summary(&self) -> String {
        format!("{} {} {}", self.law, self.samples, self.failures.len())
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "term {}", self.term)?;
        if let Some(s) = &self.substitution {
            write!(f, " subst {s}")?;
        }
        write!(f, " lhs {} rhs {}", self.lhs, self.rhs)?;
        if let Some(seed) = self.replay_seed {
            write!(f, " seed {seed}")?;
        }
        Ok(())
    }
}

/// Generator limits for sampled checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub samples: usize,
    pub max_ctx: usize,
    pub max_depth: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { samples: 1000, max_ctx: 3, max_depth: 5 }
    }
}

/// Seed of the `index`-th sample of a run started with `seed`.
pub fn sample_seed(seed: u64, index: usize) -> u64 {
    // splitmix64 step
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn sample_rng(replay_seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(replay_seed)
}

const ATTEMPTS: usize = 64;

/// Draws a context size and a term in it. Context sizes and depths are
/// redrawn when the signature has no term of the drawn size.
pub fn sample_term<R: Rng>(s: &mut TermSampler<'_>, b: &Bounds, rng: &mut R) -> Result<(usize, Term), TermError> {
    let mut last = TermError::Ungenerable { context: 0, depth: 0 };
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(0..=b.max_ctx);
        let d = rng.gen_range(0..=b.max_depth);
        match s.term(n, d, rng) {
            Ok(t) => return Ok((n, t)),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Draws a target context size and a substitution from `src` into it.
pub fn sample_substitution<R: Rng>(
    s: &mut TermSampler<'_>,
    src: usize,
    b: &Bounds,
    rng: &mut R,
) -> Result<Substitution, TermError> {
    let mut last = TermError::Ungenerable { context: 0, depth: 0 };
    for _ in 0..ATTEMPTS {
        let m = rng.gen_range(0..=b.max_ctx);
        let d = rng.gen_range(0..=b.max_depth);
        match s.substitution(src, m, d, rng) {
            Ok(sub) => return Ok(sub),
            Err(e) => last = e,
        }
    }
    Err(last)
}

pub fn show_substitution(s: &Substitution) -> String {
    let items: Vec<String> = s.terms().iter().enumerate().map(|(i, t)| format!("{i}:{t}")).collect();
    format!("[{}] -> {}", items.join(" "), s.dst())
}

/// Result of checking a single instance.
pub enum Trial {
    Pass,
    /// The instance could not be generated; it is not counted.
    Skip,
    Fail(Mismatch),
}

pub struct Mismatch {
    pub term: String,
    pub substitution: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

fn shown<V: fmt::Display, E: fmt::Display>(r: &Result<V, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Passes when both sides evaluate without error to equal values.
pub fn compare<V, E>(
    term: &dyn fmt::Display,
    substitution: Option<String>,
    lhs: Result<V, E>,
    rhs: Result<V, E>,
) -> Trial
where
    V: PartialEq + fmt::Display,
    E: fmt::Display,
{
    match (&lhs, &rhs) {
        (Ok(a), Ok(b)) if a == b => Trial::Pass,
        _ => Trial::Fail(Mismatch { term: term.to_string(), substitution, lhs: shown(&lhs), rhs: shown(&rhs) }),
    }
}

/// Runs `samples` instances, the `i`-th drawn from its own seeded generator.
pub fn run_sampled(
    law: &str,
    samples: usize,
    seed: u64,
    mut instance: impl FnMut(&mut ChaCha8Rng) -> Trial,
) -> EvalReport {
    let mut report = EvalReport::new(law);
    for i in 0..samples {
        let replay = sample_seed(seed, i);
        match instance(&mut sample_rng(replay)) {
            Trial::Pass => report.samples += 1,
            Trial::Skip => {}
            Trial::Fail(m) => {
                report.samples += 1;
                report.failures.push(Counterexample {
                    term: m.term,
                    substitution: m.substitution,
                    lhs: m.lhs,
                    rhs: m.rhs,
                    replay_seed: Some(replay),
                });
            }
        }
    }
    report
}

/// Runs one instance per item.
pub fn run_enumerated<T>(law: &str, items: &[T], mut instance: impl FnMut(&T) -> Trial) -> EvalReport {
    let mut report = EvalReport::new(law);
    for item in items {
        match instance(item) {
            Trial::Pass => report.samples += 1,
            Trial::Skip => {}
            Trial::Fail(m) => {
                report.samples += 1;
                report.failures.push(Counterexample {
                    term: m.term,
                    substitution: m.substitution,
                    lhs: m.lhs,
                    rhs: m.rhs,
                    replay_seed: None,
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_per_index() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|i| sample_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(sample_seed(7, 3), sample_seed(7, 3));
        assert_ne!(sample_seed(7, 3), sample_seed(8, 3));
    }

    #[test]
    fn summary_line() {
        let mut r = EvalReport::new("monad.assoc");
        r.samples = 12;
        assert_eq!(r.to_string(), "monad.assoc 12 0");
        assert!(r.passed());
    }
}
