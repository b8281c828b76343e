use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::arity::{parse_arity, print_arity, Arity, ArityParseError};

#[derive(Clone, Debug)]
pub struct OpDecl {
    pub name: String,
    pub arity: Arity,
}

/// A named family of operations. Equality ignores the name and the
/// declaration order.
#[derive(Clone, Debug)]
pub struct Signature {
    pub name: String,
    pub ops: Vec<OpDecl>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.op_set() == other.op_set()
    }
}

impl Eq for Signature {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    DuplicateOp(String),
    InvalidOpName(String),
    NonCanonicalArity { op: String },
    DuplicateSumTag { op: String, tag: String },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::DuplicateOp(op) => write!(f, "duplicate operation `{op}`"),
            ValidationIssue::InvalidOpName(op) => write!(f, "invalid operation name `{op}`"),
            ValidationIssue::NonCanonicalArity { op } => {
                write!(f, "arity of `{op}` contains an empty product")
            }
            ValidationIssue::DuplicateSumTag { op, tag } => {
                write!(f, "arity of `{op}` repeats sum tag `{tag}`")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum SignatureError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Arity {
        line: usize,
        #[source]
        source: ArityParseError,
    },
    #[error("invalid signature: {}", join_issues(.0))]
    Invalid(Vec<ValidationIssue>),
    #[error("inclusion {0}")]
    Inclusion(String),
    #[error("arity mismatch on shared operation `{op}`: `{left}` vs `{right}`")]
    ArityMismatch { op: String, left: Arity, right: Arity },
    #[error("shared inclusions have different source signatures")]
    SourceMismatch,
    #[error("qualified name `{0}` still collides")]
    NameCollision(String),
}

fn join_issues(issues: &[ValidationIssue]) -> String {
    issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Operation names are runs of `[A-Za-z0-9_.-]`, so qualified names such
/// as `s2.f` are names too.
pub fn is_valid_op_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

impl Signature {
    pub fn new(name: impl Into<String>, ops: Vec<(&str, Arity)>) -> Signature {
        Signature {
            name: name.into(),
            ops: ops.into_iter().map(|(n, arity)| OpDecl { name: n.to_string(), arity }).collect(),
        }
    }

    pub fn empty(name: impl Into<String>) -> Signature {
        Signature { name: name.into(), ops: Vec::new() }
    }

    pub fn arity(&self, op: &str) -> Option<&Arity> {
        self.ops.iter().find(|d| d.name == op).map(|d| &d.arity)
    }

    pub fn contains(&self, op: &str) -> bool {
        self.arity(op).is_some()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn op_names(&self) -> impl Iterator<Item = &str> {
        self.ops.iter().map(|d| d.name.as_str())
    }

    fn op_set(&self) -> BTreeSet<(&str, &Arity)> {
        self.ops.iter().map(|d| (d.name.as_str(), &d.arity)).collect()
    }

    /// Empty report means valid.
    pub fn validate(&self) -> Vec<ValidationIssue> {
        let mut issues = Vec::new();
        let mut seen = BTreeSet::new();
        for decl in &self.ops {
            if !seen.insert(decl.name.as_str()) {
                issues.push(ValidationIssue::DuplicateOp(decl.name.clone()));
            }
            if !is_valid_op_name(&decl.name) {
                issues.push(ValidationIssue::InvalidOpName(decl.name.clone()));
            }
            if !decl.arity.is_canonical() {
                issues.push(ValidationIssue::NonCanonicalArity { op: decl.name.clone() });
            }
            if let Some(tag) = decl.arity.duplicate_tag() {
                issues.push(ValidationIssue::DuplicateSumTag { op: decl.name.clone(), tag });
            }
        }
        issues
    }

    pub fn checked(self) -> Result<Signature, SignatureError> {
        let issues = self.validate();
        if issues.is_empty() {
            Ok(self)
        } else {
            Err(SignatureError::Invalid(issues))
        }
    }

    /// Parses the line-oriented signature file format. The result is not
    /// validated: duplicate names survive so that [`Signature::validate`]
    /// can report them.
    pub fn parse(text: &str) -> Result<Signature, SignatureError> {
        let mut name = None;
        let mut ops = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if name.is_none() {
                let rest = line.strip_prefix("signature").filter(|r| r.starts_with(char::is_whitespace));
                let Some(rest) = rest else {
                    return Err(SignatureError::Syntax {
                        line: line_no,
                        msg: "expected `signature <name>` header".into(),
                    });
                };
                let n = rest.trim();
                if n.is_empty() || n.contains(char::is_whitespace) {
                    return Err(SignatureError::Syntax { line: line_no, msg: "bad signature name".into() });
                }
                name = Some(n.to_string());
                continue;
            }
            let Some((op, arity_text)) = line.split_once(':') else {
                return Err(SignatureError::Syntax { line: line_no, msg: "expected `opname : arity`".into() });
            };
            let op = op.trim();
            if !is_valid_op_name(op) {
                return Err(SignatureError::Syntax { line: line_no, msg: format!("invalid operation name `{op}`") });
            }
            let arity = parse_arity(arity_text).map_err(|source| SignatureError::Arity { line: line_no, source })?;
            ops.push(OpDecl { name: op.to_string(), arity });
        }
        let Some(name) = name else {
            return Err(SignatureError::Syntax { line: 1, msg: "missing `signature <name>` header".into() });
        };
        Ok(Signature { name, ops })
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("signature {}\n", self.name);
        for d in &self.ops {
            out.push_str(&format!("{} : {}\n", d.name, print_arity(&d.arity)));
        }
        out
    }
}

/// An injective, arity-preserving renaming of operations from `source` into
/// `target`.
#[derive(Clone, Debug)]
pub struct SignatureInclusion {
    pub source: Signature,
    pub target: Signature,
    pub mapping: BTreeMap<String, String>,
}

impl SignatureInclusion {
    pub fn new(
        source: Signature,
        target: Signature,
        mapping: BTreeMap<String, String>,
    ) -> Result<SignatureInclusion, SignatureError> {
        let inc = SignatureInclusion { source, target, mapping };
        inc.check()?;
        Ok(inc)
    }

    /// The inclusion sending every op to the op of the same name.
    pub fn by_name(source: &Signature, target: &Signature) -> Result<SignatureInclusion, SignatureError> {
        let mapping = source.op_names().map(|n| (n.to_string(), n.to_string())).collect();
        SignatureInclusion::new(source.clone(), target.clone(), mapping)
    }

    pub fn identity(sig: &Signature) -> SignatureInclusion {
        SignatureInclusion {
            source: sig.clone(),
            target: sig.clone(),
            mapping: sig.op_names().map(|n| (n.to_string(), n.to_string())).collect(),
        }
    }

    pub fn map(&self, op: &str) -> Option<&str> {
        self.mapping.get(op).map(String::as_str)
    }

    pub fn check(&self) -> Result<(), SignatureError> {
        let mut images = BTreeSet::new();
        for decl in &self.source.ops {
            let Some(image) = self.mapping.get(&decl.name) else {
                return Err(SignatureError::Inclusion(format!("is undefined on `{}`", decl.name)));
            };
            let Some(target_arity) = self.target.arity(image) else {
                return Err(SignatureError::Inclusion(format!("maps `{}` to unknown `{image}`", decl.name)));
            };
            if *target_arity != decl.arity {
                return Err(SignatureError::ArityMismatch {
                    op: decl.name.clone(),
                    left: decl.arity.clone(),
                    right: target_arity.clone(),
                });
            }
            if !images.insert(image.as_str()) {
                return Err(SignatureError::Inclusion(format!("is not injective at `{image}`")));
            }
        }
        if self.mapping.len() != self.source.len() {
            return Err(SignatureError::Inclusion("maps operations outside its source".into()));
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SignatureInclusion) -> Result<SignatureInclusion, SignatureError> {
        let mut mapping = BTreeMap::new();
        for (from, mid) in &self.mapping {
            let to = other
                .map(mid)
                .ok_or_else(|| SignatureError::Inclusion(format!("composite is undefined on `{from}`")))?;
            mapping.insert(from.clone(), to.to_string());
        }
        SignatureInclusion::new(self.source.clone(), other.target.clone(), mapping)
    }
}

/// Result of amalgamating two signatures over a shared part.
#[derive(Clone, Debug)]
pub struct Merged {
    pub signature: Signature,
    pub from_left: SignatureInclusion,
    pub from_right: SignatureInclusion,
}

/// Amalgamated union of `s1` and `s2` identifying exactly the images of the
/// common source of `shared1` (into `s1`) and `shared2` (into `s2`).
///
/// Operations of `s1` keep their names. An `s2`-only operation whose name is
/// taken is renamed `<s2.name>.<op>`.
pub fn merge_signatures(
    s1: &Signature,
    s2: &Signature,
    shared1: &SignatureInclusion,
    shared2: &SignatureInclusion,
) -> Result<Merged, SignatureError> {
    for sig in [s1, s2] {
        sig.clone().checked()?;
    }
    if shared1.source != shared2.source {
        return Err(SignatureError::SourceMismatch);
    }
    if shared1.target != *s1 || shared2.target != *s2 {
        return Err(SignatureError::Inclusion("does not land in the merged signatures".into()));
    }
    shared1.check()?;
    shared2.check()?;

    // s2 op name -> s1 op name, for the shared part
    let mut glued: BTreeMap<&str, &str> = BTreeMap::new();
    for decl in &shared1.source.ops {
        let left = shared1.map(&decl.name).expect("checked inclusion");
        let right = shared2.map(&decl.name).expect("checked inclusion");
        let la = s1.arity(left).expect("checked inclusion");
        let ra = s2.arity(right).expect("checked inclusion");
        if la != ra {
            return Err(SignatureError::ArityMismatch { op: decl.name.clone(), left: la.clone(), right: ra.clone() });
        }
        glued.insert(right, left);
    }

    let name = if s1.name == s2.name { s1.name.clone() } else { format!("{}+{}", s1.name, s2.name) };
    let mut merged = Signature { name, ops: s1.ops.clone() };
    let mut right_map = BTreeMap::new();
    for decl in &s2.ops {
        if let Some(left) = glued.get(decl.name.as_str()) {
            right_map.insert(decl.name.clone(), left.to_string());
            continue;
        }
        let mut new_name = decl.name.clone();
        if merged.contains(&new_name) {
            new_name = format!("{}.{}", s2.name, decl.name);
            if merged.contains(&new_name) {
                return Err(SignatureError::NameCollision(new_name));
            }
        }
        right_map.insert(decl.name.clone(), new_name.clone());
        merged.ops.push(OpDecl { name: new_name, arity: decl.arity.clone() });
    }

    let left_map = s1.op_names().map(|n| (n.to_string(), n.to_string())).collect();
    let from_left = SignatureInclusion::new(s1.clone(), merged.clone(), left_map)?;
    let from_right = SignatureInclusion::new(s2.clone(), merged.clone(), right_map)?;
    Ok(Merged { signature: merged, from_left, from_right })
}
