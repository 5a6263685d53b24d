//! Lower bounds on (incomplete) quadratic assignment problems.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * sparse models for LAP, incomplete LAP (ILAP) and incomplete QAP (IQAP),
//! * an exact sparse LAP solver producing optimal duals,
//! * a linear-time shift of an optimal LAP dual into the relative interior of
//!   the dual optimal face,
//! * the ILAP to LAP reduction with primal and dual back-mappings,
//! * the block steps (MPLP++ over edges, coordinate / exact updates of label
//!   duals) and the driver computing a dual lower bound for IQAP,
//! * brute-force reference routines used to cross-check all of the above.
#![no_std]

extern crate alloc;

pub mod beta;
pub mod bound;
pub mod error;
pub mod instance;
pub mod lap;
pub mod oracle;
pub mod reduction;
pub mod relative_interior;
pub mod wcsp;

pub use bound::{dual_bound, run, run_with_clock, BoundReport, Method, NoClock, SolverConfig, Stopwatch};
pub use error::{Error, Violation};
pub use instance::{
    Assignment, IlapDual, IlapInstance, IqapInstance, LapDual, LapInstance, PairwiseBlock,
    PrimalVector, Tolerance, DUMMY,
};
pub use lap::{equality_subgraph, solve_lap, EqualitySubgraph, LapSolution};
pub use reduction::{solve_ilap, IlapMode, IlapSolution, ReducedLap};
pub use relative_interior::{
    build_exchange_digraph, perfectly_matchable_edges, shift_to_relative_interior, ExchangeDigraph,
};
pub use wcsp::IqapDualState;
