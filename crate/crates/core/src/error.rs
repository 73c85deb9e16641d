use thiserror::Error;

/// The group axiom a multiplication table failed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    Shape,
    Latin { row: Option<usize>, column: Option<usize> },
    Identity,
    Inverse { element: usize },
    Associativity { a: usize, b: usize, c: usize },
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axiom::Shape => write!(f, "table is not a non-empty square of valid indices"),
            Axiom::Latin { row: Some(r), .. } => write!(f, "row {r} is not a permutation (Latin square)"),
            Axiom::Latin { column: Some(c), .. } => write!(f, "column {c} is not a permutation (Latin square)"),
            Axiom::Latin { .. } => write!(f, "not a Latin square"),
            Axiom::Identity => write!(f, "no two-sided identity"),
            Axiom::Inverse { element } => write!(f, "element {element} has no two-sided inverse"),
            Axiom::Associativity { a, b, c } => write!(f, "associativity fails at ({a}, {b}, {c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("homomorphism is not well defined: {0}")]
    IllDefined(String),
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("chain has {groups} groups but {maps} maps")]
    LengthMismatch { groups: usize, maps: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a group: {0}")]
    NotAGroup(Axiom),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("not a group homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("action matrix for element {element} is not a well-defined endomorphism")]
    ModuleIllDefined { element: usize },
    #[error("not a group action: {0}")]
    NotAction(String),
    #[error("action of element {element} is not an automorphism")]
    NotAutomorphism { element: usize },
    #[error("pair is not compatible: {0}")]
    IncompatiblePair(String),

    #[error("operator index {index} out of range 1..={degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain is not symmetric")]
    NotSymmetric,
    #[error("cocycle is not normalized (sigma(g,1) = sigma(1,g) = 0 fails); normalize_cocycle produces a cohomologous normalized one")]
    NotNormalized,
    #[error("not a section: {0}")]
    NotASection(String),
    #[error("not an extension: {0}")]
    NotAnExtension(String),
    #[error("extensions have different bases")]
    BaseMismatch,

    #[error("module section is not symmetric: {0}")]
    SectionNotSymmetric(String),
    #[error("module section is not compatible with the action: {0}")]
    SectionNotCompatible(String),
    #[error("not a short exact sequence of modules: {0}")]
    NotExact(String),

    #[error("bonding map {level} is not surjective")]
    NotSurjective { level: usize },
    #[error("bonding data at level {level} is not a compatible pair: {reason}")]
    NotCompatible { level: usize, reason: String },

    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that signal a refused hypothesis rather than malformed input.
    pub fn is_refused_hypothesis(&self) -> bool {
        matches!(self, Error::SectionNotSymmetric(_) | Error::SectionNotCompatible(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
