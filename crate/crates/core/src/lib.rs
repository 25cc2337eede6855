//! Exact-integer classification engine for Fano threefolds of Picard rank 2
//! and primitive Fano threefolds of Picard rank 3.
//!
//! Each pair of extremal ray types yields a finite system of Diophantine
//! constraints on the intersection form of the Picard lattice. The case
//! solvers enumerate every integer solution over a bounded domain, and the
//! results are labelled and diffed against the embedded classification tables.

pub mod chern_calculus;
pub mod cli;
pub mod enumerator;
pub mod error;
pub mod picard_lattice;
pub mod ray_constraints;
pub mod table_oracle;

pub use enumerator::{enumerate_all, enumerate_all_with, SolutionRecord, Strategy};
pub use error::{Error, Result};
pub use picard_lattice::{DivisorClass, TrilinearForm};
pub use ray_constraints::{RaySpec, RayType};
pub use table_oracle::{diff, emit, ground_truth, DiffReport, Format, TableRow};
