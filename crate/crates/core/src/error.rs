use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Each variant carries a stable code (see [`Error::code`]) that the command
/// line front end reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for a set of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("pair ({0}, {1}) is not in the relation")]
    OutsideRelation(usize, usize),
    #[error("{what} has size {size}, above the supported bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("element {0} is not a unit")]
    NotUnit(String),
    #[error("operands live over different preorders or rings")]
    Mismatch,
    #[error("class of element {0} is not a singleton")]
    NotSingletonClass(usize),
    #[error("function has support on the class-diagonal pair ({0}, {1})")]
    NotInM(usize, usize),
    #[error("diagonal block of class {class} is not a unit")]
    NotInvertible { class: usize },
    #[error("cocycle law fails on the triangle ({0}, {1}, {2})")]
    CocycleViolation(usize, usize, usize),
    #[error("value on ({0}, {1}) is not a central unit")]
    NotCentralUnit(usize, usize),
    #[error("value on ({0}, {1}) is not central")]
    NotCentral(usize, usize),
    #[error("no value supplied for edge ({0}, {1})")]
    MissingEdge(usize, usize),
    #[error("({0}, {1}) is not an admissible edge for this assignment")]
    UnexpectedEdge(usize, usize),
    #[error("consecutive vertices {0} and {1} are not joined by an edge")]
    NotASemipath(usize, usize),
    #[error("the quotient poset is not connected")]
    Disconnected,
    #[error("permutation is not an automorphism of the poset")]
    NotAutomorphism,
    #[error("table shape does not match the basis: {0}")]
    ShapeMismatch(String),
    #[error("image of the idempotent of class {0} does not reduce to a standard idempotent")]
    NotClassPreserving(usize),
    #[error("diagonalized map is not a Hadamard scaling on basis element {0}")]
    NotMultiplicativeResidue(String),
    #[error("the coefficient ring has no field as its center")]
    CenterNotField,
    #[error("the operation needs a commutative coefficient ring")]
    NotCommutative,
    #[error("the coefficient ring is not a field")]
    NotAField,
    #[error("the preorder is not a partial order")]
    NotAPoset,
    #[error("the table is not a derivation: gamma is nonzero on {0}")]
    GammaNonzero(String),
    #[error("interval [{0}, {1}] exceeds the isomorphism search bound")]
    IntervalTooLarge(usize, usize),
    #[error("interval labelling is not a partition: {0}")]
    NotAPartition(String),
    #[error("incidence coefficient for type {0} differs between representatives")]
    RepresentativeDisagreement(usize),
    #[error("function is not constant on type {ty}: intervals {first:?} and {second:?} differ")]
    NotConstantOnTypes {
        ty: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("ring specifications disagree or are unsupported: {0}")]
    RingSpec(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::OutsideRelation(..) => "OutsideRelation",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotUnit(_) => "NotUnit",
            Error::Mismatch => "Mismatch",
            Error::NotSingletonClass(_) => "NotSingletonClass",
            Error::NotInM(..) => "NotInM",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::CocycleViolation(..) => "CocycleViolation",
            Error::NotCentralUnit(..) => "NotCentralUnit",
            Error::NotCentral(..) => "NotCentral",
            Error::MissingEdge(..) => "MissingEdge",
            Error::UnexpectedEdge(..) => "UnexpectedEdge",
            Error::NotASemipath(..) => "NotASemipath",
            Error::Disconnected => "Disconnected",
            Error::NotAutomorphism => "NotAutomorphism",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotClassPreserving(_) => "NotClassPreserving",
            Error::NotMultiplicativeResidue(_) => "NotMultiplicativeResidue",
            Error::CenterNotField => "CenterNotField",
            Error::NotCommutative => "NotCommutative",
            Error::NotAField => "NotAField",
            Error::NotAPoset => "NotAPoset",
            Error::GammaNonzero(_) => "GammaNonzero",
            Error::IntervalTooLarge(..) => "IntervalTooLarge",
            Error::NotAPartition(_) => "NotAPartition",
            Error::RepresentativeDisagreement(_) => "RepresentativeDisagreement",
            Error::NotConstantOnTypes { .. } => "NotConstantOnTypes",
            Error::RingSpec(_) => "RingSpec",
            Error::Parse(_) => "Parse",
        }
    }

    /// Whether the error stems from unreadable input rather than a
    /// mathematical obstruction.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::RingSpec(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
