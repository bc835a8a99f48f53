//! Generalized persistence diagrams of bifiltrations.
//!
//! The diagram is the Möbius inversion of the birth-death function over the
//! interval poset of a grid. [`sweep`](sweep::sweep) computes it by moving a
//! monotone path across the grid one square at a time while a vineyard keeps
//! an `R = DV` decomposition up to date; [`oracle`] evaluates the definition
//! directly and serves as ground truth.

pub mod complex;
pub mod diagram;
pub mod field;
pub mod generate;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod poset;
pub mod staircase;
pub mod sweep;
pub mod vineyard;

pub use complex::{
    is_nondegenerate, is_staircase_normal, refine_to_nondegenerate, restrict_to_path,
    validate, AppearanceCurve, Bifiltration, OneFiltration, Simplex, SimplicialComplex,
    Violation,
};
pub use diagram::SignedDiagram;
pub use field::Field;
pub use poset::{
    mobius_1d, mobius_2d, mobius_invert, path_galois, pushforward, refinement_galois,
    zeta_integrate, CeilingMap, Grade, Grid, Interval, IntervalFunction, Path, Step,
};
pub use sweep::{compute, sweep, SweepOptions, SweepStats};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime characteristic")]
    Field(u32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid bifiltration: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("bifiltration is degenerate; refine it first")]
    Degenerate,
    #[error("grid extends past the last corner")]
    LooseGrid,
    #[error("grid side {side} exceeds the oracle cap of {cap}")]
    CapExceeded { side: u32, cap: u32 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
