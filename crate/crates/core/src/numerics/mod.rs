//! Error-tracked arbitrary-precision real arithmetic: the [`HPReal`] ball
//! type, the proof's named constants, and the precision-escalation protocol
//! for certified strict inequalities.

mod constants;
pub(crate) mod fixed;
mod hpreal;
mod policy;

pub use constants::{constant, Constant};
pub use hpreal::{arith, compare, rational, ArithOp, HPReal, Ordering3};
pub use policy::{certify_le, certify_less, decide_with_escalation, PrecisionPolicy, Rel};
