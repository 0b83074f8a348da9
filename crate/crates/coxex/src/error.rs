use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ordered multiset has repeated elements")]
    RepeatedElements,
    #[error("element {0} does not occur")]
    NotPresent(u32),
    #[error("element {0} occurs more than once")]
    Ambiguous(u32),
    #[error("ground set size {n} outside 1..={max}")]
    BadGround { n: u32, max: u32 },
    #[error("element {element} is not in [{n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("universe of {0} subsets is too large to enumerate (max 25)")]
    UniverseTooLarge(usize),
    #[error("rank k={k} invalid for n={n}")]
    BadRank { n: u32, k: u32 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("pairing of {v:?} with root {alpha:?} is not an integer")]
    NonIntegralPairing { v: Vec<i64>, alpha: Vec<i64> },
    #[error("operation not supported for polytope {0}")]
    UnsupportedPolytope(String),
    #[error("member of size {found} in a rank-{expected} system")]
    RankMismatch { expected: u32, found: u32 },
    #[error("set system is empty")]
    EmptySystem,
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("symmetric difference too small: |I Δ J| = {0}")]
    TooSmall(u32),
    #[error("set is not in the face Q(N, L)")]
    NotInFace,
    #[error("|M| = {0} is not admissible for this frame")]
    NotAdmissible(u32),
    #[error("sets are not pairwise disjoint")]
    NotDisjoint,
    #[error("sets have different parity")]
    BadParity,
    #[error("|S| = {0} but at least 3 is required")]
    SNotLargeEnough(u32),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("variable {0} is not a subset variable")]
    NotSubsetVariable(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
