//! Exact sparse linear algebra over a [`Scalar`](crate::scalar::Scalar) field.

mod echelon;
mod homology;
mod map;
mod preimage;
mod vector;

pub use echelon::{Inserted, RowReducer};
pub use homology::{homology_of_slice, ComplexSlice, GradedHomology, HomologyReport};
pub use map::{solve_linear_system, solve_rows, supertrace, LinearMap, LinearSolution};
pub use preimage::PreimageSolver;
pub use vector::Vector;
