//! Explicit bounds: Matveev lower-bound constants, the certified chain that
//! turns them into caps on x, and the reduction engine.

mod chain;
mod matveev;
mod reduction;

pub use chain::{
    bound_chain, lambda1_normalized, lambda2_normalized, m_range, solve_two_a_log_a, t_range,
    BoundChainReport, ChainLink, CoefficientCheck,
};
pub use matveev::{matveev_constant, MatveevParams};
pub use reduction::{
    attempt_at, baker_davenport_reduce, balancing_instance, BDInstance, ReductionOutcome,
    ValueBuilder,
};
