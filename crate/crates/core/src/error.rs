use alloc::string::String;

/// Errors raised by the algebraic and combinatorial operations of this crate.
///
/// Partial operations (groupoid composition, gluing) report "undefined" as
/// `None`; this type is reserved for violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element {0} does not belong to the groupoid")]
    InvalidElement(String),
    #[error("empty window")]
    EmptyWindow,
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("series is not unital: {0}")]
    NotUnital(String),
    #[error("series has a nonzero neutral component")]
    NonzeroNeutral,
    #[error("singular matrix")]
    Singular,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("group mismatch")]
    GroupMismatch,
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("cell {0} is only partially contained in the domain boundary")]
    NonAdapted(String),
    #[error("complex is not regular: {0}")]
    NotRegular(String),
    #[error("complex is not saturated: {0}")]
    NotSaturated(String),
    #[error("subcomplex does not split the complex: {0}")]
    NoSplit(String),
    #[error("missing value: {0}")]
    MissingValue(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("value is not central: {0}")]
    NotCentral(String),
    #[error("function depends on cells outside its region: {0}")]
    OutOfRegion(String),
    #[error("pasting condition (A) violated: {0}")]
    PasteInterface(String),
    #[error("pasting condition (B) violated: {0}")]
    PasteValues(String),
    #[error("domain ordering assumption violated: {0}")]
    DomainOrder(String),
    #[error("function is not a class function")]
    NotClassFunction,
    #[error("malformed box: {0}")]
    MalformedBox(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
