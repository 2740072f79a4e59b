//! One-scale analysis: traveling reduction, the one-scale substitution,
//! solving for the width, and exponent balance under power-law ansätze.

mod analysis;
mod ansatz;
mod balance;
mod compare;
mod diffusion;
mod reduce;
mod relparse;
mod scale;
mod solve;

pub use analysis::{analyze, Analysis, RelationAnalysis};
pub(crate) use ansatz::parse_linear;
pub use ansatz::{apply_ansatz, Ansatz};
pub use balance::{exponent_balance, ExponentConstraint, LinearForm, Objective};
pub use compare::{compare, engine_variants, equivalent, Comparison, MatchFlag};
pub use diffusion::{
    compatible_diffusion, reduced_residual, Diffusion, PowerLaw, Series, SeriesTerm,
};
pub use reduce::{scale_substitute, traveling_reduce};
pub use relparse::{parse_relation, PaperRelation, RelParseError};
pub use scale::{render_sum, Mode, Part, ScaleEnv, ScaleRelation, ScaleTerm, SignChoice};
pub use solve::{solve_for_l, BranchForm, BranchKind, BranchSolution, WidthSolution};

use thiserror::Error;

use crate::exprcore::ExprError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OsaError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("degenerate relation: {0}")]
    DegenerateRelation(String),
    #[error("envelope substitution needs numeric derivative powers")]
    SymbolicEnvelopePower,
    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(String),
    #[error("relation is not power-law structured: {0}")]
    NotPowerLawStructured(String),
    #[error("unsupported right-hand side: {0}")]
    UnsupportedRhs(String),
}
