//! geodeduce: a symbolic plane-geometry problem solver.

pub mod algebra;
pub mod formal_lang;
pub mod harness;
pub mod hypergraph;
pub mod solver;
pub mod text_parser;
pub mod theorems;
pub mod validation;
