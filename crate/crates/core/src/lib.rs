//! Exact construction and verification of parametric solutions to
//!
//! ```text
//! m * (x_1^k + ... + x_t1^k) = n * (y_1^k + ... + y_t2^k),   k = 1 and k = 3
//! ```
//!
//! Two trivial solutions per side are combined along a line whose parameter
//! is fixed by the cubic equation. Everything is computed over the integers
//! with arbitrary precision; nothing is approximated.

pub mod construction;
pub mod explore;
pub mod poly;
pub mod verify;

pub use construction::{
    assemble, compute_ab, derive, make_templates, specialize, Coefficient, ConstructionError, ProblemSpec, Side, Sign,
    SignedEntry, Specialization, SymbolicEqualSums, SymbolicSolution, TrivialPair,
};
pub use explore::{
    canonical_key, grid_search, instantiate, normalize, oracle_enumerate, rearrange_equal_sums, EqualSums,
    ExploreError, NumericSolution, OracleConfig, SearchConfig, SearchOutcome, Witness,
};
pub use poly::{Assignment, Monomial, PolyError, Polynomial, VarId, VarKind};
pub use verify::{
    check_nontriviality, tangent_diagnostics, verify_numeric, verify_solution, verify_symbolic, Nontriviality,
    NumericTuple, Power, VerificationReport,
};
