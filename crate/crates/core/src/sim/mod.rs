//! Circuit construction and simulation: a dense statevector backend and
//! closed-form GHZ marginals for registers beyond dense reach.

mod circuit;
mod gate;
pub(crate) mod kernels;
mod marginal;
mod state;

pub use circuit::{build_calibration, build_ghz, build_min3_prep, Circuit, PrepAngles};
pub use gate::Gate;
pub use marginal::{ghz_marginals, MarginalSet, Mat4, PairMarginal};
pub use state::{simulate, PureState, Simulator, DEFAULT_DENSE_LIMIT};
