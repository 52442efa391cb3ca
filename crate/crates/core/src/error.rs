use thiserror::Error;

use crate::homology::HomologyProfile;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("subgroup of order {order} is not a {p}-group")]
    NotAPGroup { p: u64, order: usize },

    #[error("group is not solvable")]
    NotSolvable,

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("identified subgroup is not central: {0}")]
    NotCentral(String),

    #[error("pairing does not define an isomorphism: {0}")]
    PairingNotIsomorphism(String),

    #[error("action does not define a homomorphism into Aut(N): {0}")]
    ActionNotHomomorphism(String),

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("node is not in the poset")]
    NodeNotInPoset,

    #[error("simplex {0:?} is not in the complex")]
    SimplexNotInComplex(Vec<u32>),

    #[error("bad wedge attachment: {0}")]
    BadAttachment(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("decomposition not found: {0}")]
    DecompositionNotFound(String),

    #[error("no applicable prediction: {reason}")]
    NoApplicablePrediction {
        reason: String,
        computed: Box<HomologyProfile>,
    },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
