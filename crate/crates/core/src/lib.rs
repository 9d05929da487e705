//! Hazard-free decision trees over Kleene's three-valued logic.

pub mod constructions;
pub mod error;
pub mod functions;
pub mod implicants;
pub mod kernel;
pub mod measures;
pub mod optimal;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use functions::{
    hazard_free_extension, lazy_extension, make_family, BooleanFunction, Family, FamilySpec,
    FunctionLiteral, TernaryFunction,
};
pub use kernel::{Ternary, TernaryWord};
pub use trees::{Arity, DecisionTree, Mode, Node};
