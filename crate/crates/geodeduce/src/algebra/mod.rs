//! Symbolic expression kernel and the atomic algebraic-reasoning operations.

mod equation;
mod expr;
mod linear;
mod ops;
mod parse;
mod symbols;

pub use equation::{arg_to_expr, equation_from_literal, expr_to_arg, is_quantity_literal,
                   literal_to_expr, BridgeError, Equation};
pub use expr::{as_value, expr_cmp, normal_key, normalize, print_approx, print_expr, print_rat,
               rat, rat_i, Expr, Func, Value};
pub use linear::{clear_denominators, expand_poly, next_combination, provably_positive, Column};
pub use ops::{binding_of, evaluate_constants, numeric_check, numeric_check_rng, propagate_domains, univariate_degree,
              solve_linear_system, solve_univariate, substitute, substitute_vars, AlgebraError,
              Binding, BindingClass, FindingKind, LinearFinding};
pub use parse::{numeral_rat, parse_expr, ExprParseError};
pub use symbols::{figure_display, Domain, SymbolTable, VarId, VarInfo, VarKind};
