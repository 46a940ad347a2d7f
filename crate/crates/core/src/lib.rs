//! Exact constant-term formulas for fully packed loops in a triangle.
//!
//! The crate computes, in exact arithmetic:
//!
//! * the bracket `⟨F⟩_α`, the tensor `A_{σ,α,τ}` and the vector `Ψ_α`;
//! * the Temperley–Lieb(1) ground state `ψ′`;
//! * brute-force counts of fully packed loop configurations on the square and on the triangle;
//! * the change-of-basis and multiplication operators relating all of the above;
//!
//! and checks the identities that tie them together (see [`harness`]).

pub mod bracket;
pub mod combinat;
pub mod fpl;
pub mod harness;
pub mod linalg;
pub mod opalgebra;
pub mod polyring;
pub mod symfun;
pub mod tlmodel;

pub use combinat::{Basis, Diagram, GeneralSequence, LinkPattern};
pub use linalg::{ExactMatrix, Matrix};
pub use polyring::{Coeff, MultiPoly, TPoly};
