use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),

    #[error("unsupported rank {rank} for type {family}")]
    UnsupportedRank { family: String, rank: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("automorphism does not permute the roots compatibly with the coroots")]
    NotAnAutomorphism,

    #[error("group enumeration exceeded bound {bound}")]
    EnumerationOverflow { bound: usize },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("action does not stabilize the base")]
    BaseNotStabilized,

    #[error("action is not attached to a base")]
    NotBased,

    #[error("invalid base: {0}")]
    InvalidBase(String),

    #[error("malformed action: {0}")]
    MalformedAction(String),

    #[error("actions do not commute")]
    CommutationViolated,

    #[error("not a positive system: {0}")]
    NotPositiveSystem(String),

    #[error("positive system is not invariant under the group")]
    NotInvariant,

    #[error("datum is not semisimple")]
    UnsupportedDatum,

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("root datum axiom violated: {0}")]
    Axiom(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
