//! Equations: a presentation pair (lhs, rhs) plus a canonical residual.

use num_traits::Signed;

use super::expr::{self, as_value, normalize, print_expr, Expr, Func, Value};
use super::parse::{parse_expr, ExprParseError};
use super::symbols::{SymbolTable, VarId, VarKind};
use crate::formal_lang::{Arg, Literal};

#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    pub fn new(lhs: Expr, rhs: Expr) -> Equation {
        Equation { lhs, rhs }
    }

    /// Fully folded `lhs - rhs`, sign-normalized so that an equation and its
    /// flip share one residual.
    pub fn residual(&self) -> Expr {
        let r = normalize(&Expr::sub(self.lhs.clone(), self.rhs.clone()));
        if leading_negative(&r) {
            normalize(&Expr::mul2(Expr::int(-1), r))
        } else {
            r
        }
    }

    /// Identity key of the folded residual. Two equations with equal
    /// residuals carry the same mathematical content.
    pub fn residual_key(&self) -> String {
        expr::normal_key(&self.residual())
    }

    pub fn free_vars(&self) -> Vec<VarId> {
        let mut vs = self.lhs.free_vars();
        for v in self.rhs.free_vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    /// True when the folded residual is identically zero.
    pub fn is_trivial(&self) -> bool {
        self.residual().is_zero()
    }

    /// `Some(false)` when both sides are constant and differ beyond the
    /// engine tolerance; `Some(true)` when they agree; `None` otherwise.
    pub fn constant_truth(&self) -> Option<bool> {
        let (a, b) = (as_value(&self.lhs)?, as_value(&self.rhs)?);
        Some(a.approx_eq(&b))
    }

    pub fn print(&self, st: &SymbolTable) -> String {
        format!("{} = {}", print_expr(&self.lhs, st), print_expr(&self.rhs, st))
    }

    pub fn to_literal(&self, st: &SymbolTable) -> Literal {
        Literal::new(
            "Equals",
            vec![expr_to_arg(&self.lhs, st), expr_to_arg(&self.rhs, st)],
        )
    }

    /// One side a bare variable and the numeral value on the other.
    pub fn as_numeral_binding(&self) -> Option<(VarId, Value)> {
        let pick = |var: &Expr, val: &Expr| -> Option<(VarId, Value)> {
            if let (Expr::Var(v), true) = (var, val.is_numeral()) {
                return as_value(val).map(|x| (*v, x));
            }
            None
        };
        pick(&self.lhs, &self.rhs).or_else(|| pick(&self.rhs, &self.lhs))
    }
}

fn leading_negative(e: &Expr) -> bool {
    match e {
        Expr::Rat(r) => r.is_negative(),
        Expr::Approx(x) => *x < 0.0,
        Expr::Add(xs) => xs.first().map(leading_negative).unwrap_or(false),
        Expr::Mul(xs) => xs.first().map(leading_negative).unwrap_or(false),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Literal <-> expression bridge
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum BridgeError {
    Expr(ExprParseError),
    /// A literal that has no numeric interpretation sat in value position.
    NotAQuantity(String),
}

impl std::fmt::Display for BridgeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BridgeError::Expr(e) => write!(f, "{}", e),
            BridgeError::NotAQuantity(s) => write!(f, "`{}` is not a numeric quantity", s),
        }
    }
}

impl std::error::Error for BridgeError {}

impl From<ExprParseError> for BridgeError {
    fn from(e: ExprParseError) -> Self {
        BridgeError::Expr(e)
    }
}

/// Quantity-bearing predicates: the literal names a number.
pub fn is_quantity_literal(lit: &Literal) -> bool {
    matches!(
        lit.pred.as_str(),
        "LengthOf"
            | "MeasureOf"
            | "AreaOf"
            | "PerimeterOf"
            | "RadiusOf"
            | "DiameterOf"
            | "CircumferenceOf"
            | "SimRatio"
    )
}

/// Interpret an argument in value position as an expression.
pub fn arg_to_expr(arg: &Arg, st: &SymbolTable) -> Result<Expr, BridgeError> {
    match arg {
        Arg::Expr(text) => Ok(parse_expr(text, st)?),
        // An uppercase identifier in value position is a named variable.
        Arg::Id(name) => Ok(Expr::Var(st.user(name))),
        Arg::Lit(lit) => literal_to_expr(lit, st),
    }
}

/// Interpret a literal in value position as an expression.
pub fn literal_to_expr(lit: &Literal, st: &SymbolTable) -> Result<Expr, BridgeError> {
    let args = &lit.args;
    let one = |st: &SymbolTable| arg_to_expr(&args[0], st);
    match lit.pred.as_str() {
        "LengthOf" | "MeasureOf" | "AreaOf" | "PerimeterOf" | "RadiusOf" | "DiameterOf"
        | "CircumferenceOf" => Ok(Expr::Var(st.quantity(lit))),
        "SimRatio" => Ok(Expr::Var(st.sim_ratio(lit))),
        "Add" => Ok(Expr::Add(
            args.iter().map(|a| arg_to_expr(a, st)).collect::<Result<_, _>>()?,
        )),
        "Mul" => Ok(Expr::Mul(
            args.iter().map(|a| arg_to_expr(a, st)).collect::<Result<_, _>>()?,
        )),
        "Sub" => Ok(Expr::sub(arg_to_expr(&args[0], st)?, arg_to_expr(&args[1], st)?)),
        "Div" | "RatioOf" => Ok(Expr::div(arg_to_expr(&args[0], st)?, arg_to_expr(&args[1], st)?)),
        "Pow" => Ok(Expr::pow(arg_to_expr(&args[0], st)?, arg_to_expr(&args[1], st)?)),
        "HalfOf" => Ok(Expr::mul2(Expr::frac(1, 2), one(st)?)),
        "SqrtOf" => Ok(Expr::sqrt(one(st)?)),
        "SinOf" => Ok(Expr::Func(Func::Sin, Box::new(one(st)?))),
        "CosOf" => Ok(Expr::Func(Func::Cos, Box::new(one(st)?))),
        "TanOf" => Ok(Expr::Func(Func::Tan, Box::new(one(st)?))),
        "CotOf" => Ok(Expr::Func(Func::Cot, Box::new(one(st)?))),
        // A bare figure in value position reads as its natural measure.
        "Angle" | "Arc" => Ok(Expr::Var(st.quantity(&Literal::new("MeasureOf", vec![Arg::lit(lit.clone())])))),
        "Line" => Ok(Expr::Var(st.quantity(&Literal::new("LengthOf", vec![Arg::lit(lit.clone())])))),
        other => Err(BridgeError::NotAQuantity(other.to_string())),
    }
}

/// Convert an `Equals(..)` literal into an equation.
pub fn equation_from_literal(lit: &Literal, st: &SymbolTable) -> Result<Equation, BridgeError> {
    debug_assert!(lit.is("Equals") && lit.args.len() == 2);
    Ok(Equation::new(arg_to_expr(&lit.args[0], st)?, arg_to_expr(&lit.args[1], st)?))
}

/// Render an expression back into a literal argument.
pub fn expr_to_arg(e: &Expr, st: &SymbolTable) -> Arg {
    match e {
        Expr::Rat(r) => Arg::Expr(expr::print_rat(r)),
        Expr::Approx(x) => Arg::Expr(expr::print_approx(*x)),
        Expr::Pi => Arg::Expr("pi".to_string()),
        Expr::Var(v) => {
            let info = st.info(*v);
            match (info.kind, info.origin) {
                (VarKind::Quantity, Some(origin)) | (VarKind::Fresh, Some(origin)) => {
                    Arg::lit(origin)
                }
                _ => Arg::Expr(info.display),
            }
        }
        Expr::Add(xs) => nary("Add", xs, st),
        Expr::Mul(xs) => nary("Mul", xs, st),
        Expr::Sub(a, b) => Arg::lit(Literal::new("Sub", vec![expr_to_arg(a, st), expr_to_arg(b, st)])),
        Expr::Div(a, b) => Arg::lit(Literal::new("Div", vec![expr_to_arg(a, st), expr_to_arg(b, st)])),
        Expr::Neg(a) => Arg::lit(Literal::new("Sub", vec![Arg::Expr("0".into()), expr_to_arg(a, st)])),
        Expr::Pow(a, b) => Arg::lit(Literal::new("Pow", vec![expr_to_arg(a, st), expr_to_arg(b, st)])),
        Expr::Func(f, a) => {
            let pred = match f {
                Func::Sin => "SinOf",
                Func::Cos => "CosOf",
                Func::Tan => "TanOf",
                Func::Cot => "CotOf",
                Func::Sqrt => "SqrtOf",
            };
            Arg::lit(Literal::new(pred, vec![expr_to_arg(a, st)]))
        }
    }
}

fn nary(pred: &str, xs: &[Expr], st: &SymbolTable) -> Arg {
    match xs.len() {
        0 => Arg::Expr(if pred == "Add" { "0" } else { "1" }.to_string()),
        1 => expr_to_arg(&xs[0], st),
        _ => Arg::lit(Literal::new(pred, xs.iter().map(|x| expr_to_arg(x, st)).collect())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::expr::rat;
    use crate::formal_lang::{parse_literal, print_literal};

    #[test]
    fn equals_literal_round_trip() {
        let st = SymbolTable::new();
        let lit = parse_literal("Equals(LengthOf(Line(M,O)),Add(LengthOf(Line(M,N)),LengthOf(Line(N,O))))").unwrap();
        let eq = equation_from_literal(&lit, &st).unwrap();
        assert_eq!(eq.print(&st), "MO = MN + NO");
        let back = eq.to_literal(&st);
        assert_eq!(
            print_literal(&back),
            "Equals(LengthOf(Line(M,O)),Add(LengthOf(Line(M,N)),LengthOf(Line(N,O))))"
        );
    }

    #[test]
    fn residual_identity_under_flip() {
        let st = SymbolTable::new();
        let a = equation_from_literal(&parse_literal("Equals(x,Add(y,1))").unwrap(), &st).unwrap();
        let b = equation_from_literal(&parse_literal("Equals(Add(1,y),x)").unwrap(), &st).unwrap();
        assert_eq!(a.residual_key(), b.residual_key());
    }

    #[test]
    fn mixed_number_fact_keeps_presentation() {
        let st = SymbolTable::new();
        let lit = parse_literal("Equals(LengthOf(Line(N,O)),3\\frac{3}{5})").unwrap();
        let eq = equation_from_literal(&lit, &st).unwrap();
        assert_eq!(eq.print(&st), "NO = 3 + 3/5");
        assert!(eq.as_numeral_binding().is_none());
        let folded = Equation::new(eq.lhs.clone(), Expr::Rat(rat(18, 5)));
        assert!(folded.as_numeral_binding().is_some());
        assert_eq!(eq.residual_key(), folded.residual_key());
    }

    #[test]
    fn constant_truth() {
        let st = SymbolTable::new();
        let bad = equation_from_literal(&parse_literal("Equals(Add(Pow(19,2),Pow(27,2)),Pow(41,2))").unwrap(), &st).unwrap();
        assert_eq!(bad.constant_truth(), Some(false));
        let good = equation_from_literal(&parse_literal("Equals(Add(1,2),3)").unwrap(), &st).unwrap();
        assert_eq!(good.constant_truth(), Some(true));
    }
}
