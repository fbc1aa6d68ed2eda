//! Exact computations with graded braided Hopf algebras in the category of
//! Yetter-Drinfeld modules over a finite group algebra.

pub mod algebra;
pub mod axioms;
pub mod canonical;
pub mod cli;
pub mod coideal;
pub mod decomp;
pub mod dsl;
pub mod error;
pub mod field;
pub mod group;
pub mod hom;
pub mod hopf_module;
pub mod linalg;
pub mod report;
pub mod tensor;
pub mod word;
pub mod yd;

pub use error::{Error, Pos, Result};
