use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is not planar: V - E + F = {0}")]
    NotPlanar(i64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("cycles cross")]
    CyclesCross,
    #[error("no outer face designated")]
    NoOuterFace,
    #[error("no interior enclosing cycle")]
    NoInteriorEnclosingCycle,
    #[error("cover undefined: region has no holes")]
    CoverUndefined,
    #[error("walk leaves the region")]
    WalkLeavesRegion,
    #[error("infeasible window [{lo}, {hi}]")]
    InfeasibleWindow { lo: u64, hi: u64 },
    #[error("instance too large for enumeration ({0})")]
    TooLarge(String),
    #[error("search budget exhausted after {0} expansions")]
    SearchBudget(usize),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("no lambda produced a feasible solution: {0}")]
    NoFeasibleLambda(String),
}
