use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("argument does not match arity `{expected}`: found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("free variable {index} outside context of size {size}")]
    FreeOutOfRange { index: usize, size: usize },
    #[error("bound level {level} outside {depth} enclosing scopes")]
    BoundOutOfRange { level: usize, depth: usize },
    #[error("free variable {0} in the outer layer of a composite")]
    FreeInOuter(usize),
    #[error("nested payload outside the outer layer of a composite")]
    StrayNested,
    #[error("nested payload is not a term")]
    PayloadNotTerm,
    #[error("substitution expects context {expected}, term lives in {found}")]
    ContextMismatch { expected: usize, found: usize },
    #[error("renaming sends {from} to {to}, outside target context {size}")]
    RenameOutOfRange { from: usize, to: usize, size: usize },
    #[error("enumeration exceeds cap of {cap} terms")]
    CapExceeded { cap: usize },
    #[error("no term of depth at most {depth} exists in context {context}")]
    Ungenerable { context: usize, depth: usize },
}
