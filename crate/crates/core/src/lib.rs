//! Exact real arithmetic over rational-approximation name triples.
//!
//! Real functions are given by operators on `ℕ → ℕ` function space, either
//! uniformly or conditionally (through a searched parameter), and the
//! composition, localization and gluing constructions are executable
//! transformations on those operators.

pub mod computable;
pub mod elementary;
pub mod error;
pub mod gadgets;
pub mod metric;
pub mod naming;
pub mod sexpr;
pub mod suites;
pub mod terms;

pub use error::{Error, Result};
pub use naming::{
    approx, precision_index, rational_name, validate_name, NameTriple, Nat, NatFun, Rational,
    ValidationReport, ValidationRow,
};
pub use terms::{BaseFunction, Node, Operator, OperatorTerm, SupportTrace};
