//! The `.bha` document language: declarations of a permutation group, a
//! Yetter-Drinfeld module, a graded quotient algebra, coideal subalgebras
//! and tasks.
//!
//! ```text
//! group S3 permutation degree 3 generators (1 2), (1 2 3);
//! module V {
//!   basis v12 deg (1 2);
//!   ...
//!   action (1 2): v12 -> -v12, v13 -> v23, v23 -> v13;
//! }
//! algebra FK3 = T(V) / relations { v12*v12; ... } truncate 6;
//! coideal K12 = subalgebra { v12 };
//! task decompose K12;
//! ```

mod ast;
mod elaborate;
mod fk;
mod lexer;
mod parser;
mod printer;

pub use ast::*;
pub use elaborate::{elaborate, Session};
pub use fk::{fk, fk_default_truncation};
pub use parser::parse;
pub use printer::print;
