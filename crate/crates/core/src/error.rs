use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count {0} is outside the supported range 2..=4")]
    VarCount(usize),
    #[error("invalid variable name: {0}")]
    InvalidVariable(String),
    #[error("invalid world `{0}`")]
    InvalidWorld(String),
    #[error("universe mismatch: {left} worlds vs {right} worlds")]
    UniverseMismatch { left: usize, right: usize },
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("level sets do not partition the universe: {0}")]
    NotPartition(String),
    #[error("empty belief set where a consistent one is required")]
    EmptySet,
    #[error("restriction needs 2 or 3 distinct worlds, got {0}")]
    RestrictArity(usize),
    #[error("invalid preorder literal: {0}")]
    PreorderSyntax(String),
    #[error("preorder is not linear: {0}")]
    NotLinear(String),
    #[error("enumeration bound exceeded: {0} worlds")]
    EnumerationBound(usize),

    #[error("society must be nonempty")]
    EmptySociety,
    #[error("agent ids must be positive integers, got {0}")]
    InvalidAgent(String),
    #[error("duplicate agent {0}")]
    DuplicateAgent(u32),
    #[error("societies overlap on agent {0}")]
    OverlappingSocieties(u32),
    #[error("{0} is not a subset of the profile's society")]
    NotSubset(String),
    #[error("the empty coalition cannot be decisive: its premises hold vacuously, so taking E' = E would make every result inconsistent with E, which ESF1 rules out")]
    EmptyCoalition,
    #[error("two-block partitions need at least two agents")]
    SingletonSociety,
    #[error("profile file line {line}: {msg}")]
    ProfileFormat { line: usize, msg: String },

    #[error("unknown operator `{0}` (expected sum, max, proj, linproj, qlinproj or sigmapproj)")]
    UnknownOperator(String),
    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),
    #[error("invalid scope: {0}")]
    InvalidScope(String),
    #[error("refused: {what} needs an estimated {estimate:.3e} elementary steps, above the ceiling of {ceiling:.3e}")]
    CostCeiling { what: String, estimate: f64, ceiling: f64 },

    #[error("recovered relation is not total: neither {0} nor {1} is selected")]
    NotTotal(String, String),
    #[error("recovered relation is not transitive on {0}, {1}, {2}")]
    NotTransitive(String, String, String),
    #[error("recovered preorder disagrees with the black box on constraint {0}")]
    RecoveryMismatch(String),

    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
