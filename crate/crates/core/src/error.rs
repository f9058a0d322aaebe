use thiserror::Error;

use crate::graph::{Edge, Graph, NodeId, Symbol};
use crate::pushout::StrongLabelDiagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    // graph construction
    #[error("node {node}: symbol {symbol} has arity {expected} but {found} successors were given")]
    ArityMismatch {
        node: NodeId,
        symbol: Symbol,
        expected: usize,
        found: usize,
    },
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("duplicate node {0}")]
    DuplicateNode(NodeId),
    #[error("symbol {symbol} used with arity {first} and {second}")]
    InconsistentArity {
        symbol: Symbol,
        first: usize,
        second: usize,
    },
    #[error("no edge {0}")]
    NoSuchEdge(Edge),
    #[error("no node {0}")]
    NoSuchNode(NodeId),

    // homomorphisms
    #[error("label of {0} is not preserved")]
    LabelNotPreserved(NodeId),
    #[error("successor {index} of {node} is not preserved")]
    SuccessorNotPreserved { node: NodeId, index: usize },
    #[error("labeled node {0} is mapped to an unlabeled node")]
    UnlabeledImageOfLabeled(NodeId),
    #[error("node map is not total: {0} has no image")]
    NotTotal(NodeId),
    #[error("codomain of the first homomorphism is not the domain of the second")]
    DomainMismatch,
    #[error("invalid homomorphism: {0}")]
    InvalidHom(Box<Error>),

    // disconnection
    #[error("fresh node {0} already exists in the graph")]
    FreshIdCollision(NodeId),

    // pushouts
    #[error("square legs do not type-check: {0}")]
    InvalidSquare(String),
    #[error("span is not strongly labeled: {0}")]
    NotStronglyLabeled(Box<StrongLabelDiagnostic>),

    // rules and steps
    #[error("rho is not a homomorphism D(L,E) -> R: {0}")]
    RhoNotHom(Box<Error>),
    #[error("rho maps unlabeled node {node} to labeled node {image}")]
    UnlabeledMappedToLabeled { node: NodeId, image: NodeId },
    #[error("rho merges unlabeled nodes {first} and {second}")]
    UnlabeledMergedByRho { first: NodeId, second: NodeId },
    #[error("redirect names {0}, which is not a node of the right-hand side")]
    BadRedirectTarget(NodeId),
    #[error("invalid match: {0}")]
    MatchInvalid(String),
    #[error("duplicate rule {0}")]
    DuplicateRule(String),
    #[error("rule {rule} has no match {index}")]
    NoMatch { rule: String, index: usize },
    #[error("no rule named {0}")]
    NoSuchRule(String),
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: usize, last: Box<Graph> },

    // text formats
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: {source}")]
    Positioned {
        line: usize,
        col: usize,
        source: Box<Error>,
    },
    #[error("in rule {rule}: {source}")]
    InRule { rule: String, source: Box<Error> },
}

impl Error {
    /// Machine-readable variant name; positional and rule wrappers report the
    /// name of the underlying error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::UnknownNode(_) => "UnknownNode",
            Error::DuplicateNode(_) => "DuplicateNode",
            Error::InconsistentArity { .. } => "InconsistentArity",
            Error::NoSuchEdge(_) => "NoSuchEdge",
            Error::NoSuchNode(_) => "NoSuchNode",
            Error::LabelNotPreserved(_) => "LabelNotPreserved",
            Error::SuccessorNotPreserved { .. } => "SuccessorNotPreserved",
            Error::UnlabeledImageOfLabeled(_) => "UnlabeledImageOfLabeled",
            Error::NotTotal(_) => "NotTotal",
            Error::DomainMismatch => "DomainMismatch",
            Error::InvalidHom(_) => "InvalidHom",
            Error::FreshIdCollision(_) => "FreshIdCollision",
            Error::InvalidSquare(_) => "InvalidSquare",
            Error::NotStronglyLabeled(_) => "NotStronglyLabeled",
            Error::RhoNotHom(_) => "RhoNotHom",
            Error::UnlabeledMappedToLabeled { .. } => "UnlabeledMappedToLabeled",
            Error::UnlabeledMergedByRho { .. } => "UnlabeledMergedByRho",
            Error::BadRedirectTarget(_) => "BadRedirectTarget",
            Error::MatchInvalid(_) => "MatchInvalid",
            Error::DuplicateRule(_) => "DuplicateRule",
            Error::NoMatch { .. } => "NoMatch",
            Error::NoSuchRule(_) => "NoSuchRule",
            Error::FuelExhausted { .. } => "FuelExhausted",
            Error::Syntax { .. } => "SyntaxError",
            Error::Positioned { source, .. } | Error::InRule { source, .. } => source.name(),
        }
    }

    /// Strips positional and rule-context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Positioned { source, .. } | Error::InRule { source, .. } => source.root(),
            other => other,
        }
    }

    /// Whether this is a text-format problem rather than a domain error.
    pub fn is_syntax(&self) -> bool {
        matches!(self.root(), Error::Syntax { .. })
    }
}
