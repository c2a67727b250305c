//! Scaling, spanner contraction, thinning, tree decomposition, the
//! weight-indexed dynamic program, lifting and the end-to-end solver.

mod decompose;
mod dp;
mod scale;
mod solution;
mod solve;
mod thin;

pub use decompose::TreeDecomposition;
pub use dp::{dp_bipartition, DpResult, DEFAULT_MAX_STATES};
pub use scale::{scale_weights, ScaledInstance};
pub use solution::BipartitionSolution;
pub use solve::{
    contract_to_spanner, lambda_grid, solve, solve_report, LambdaRun, RunOutcome, SolveConfig, SolveReport, Stage,
};
pub use thin::{thin, Thinning};
