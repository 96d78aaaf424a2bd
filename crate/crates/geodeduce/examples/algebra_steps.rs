//! The four atomic algebraic operations, walked through by hand.

use geodeduce::algebra::{
    evaluate_constants, numeric_check, solve_linear_system, solve_univariate, substitute,
    Equation, Expr, SymbolTable,
};
use geodeduce::formal_lang::parse_literal;

fn eq(st: &SymbolTable, s: &str) -> Equation {
    geodeduce::algebra::equation_from_literal(&parse_literal(s).unwrap(), st).unwrap()
}

fn main() {
    let st = SymbolTable::new();

    // Equivalent substitution: plug a binding into a target equation.
    let target = eq(&st, "Equals(LengthOf(Line(M,P)),Add(LengthOf(Line(M,Q)),LengthOf(Line(P,Q))))");
    let source = eq(&st, "Equals(x,LengthOf(Line(P,Q)))");
    let plugged = substitute(&target, &source, &st).unwrap();
    println!("substitute:        {}", plugged.print(&st));

    // Constant evaluation: fold exactly over rationals.
    let folded = evaluate_constants(&eq(&st, "Equals(Add(6,Add(3,Div(3,5))),LengthOf(Line(M,O)))")).unwrap();
    println!("evaluate:          {}", folded.print(&st));

    // Univariate solving with domain filtering: lengths are nonnegative.
    let len = st.quantity(&parse_literal("LengthOf(Line(B,C))").unwrap());
    let sq = Equation::new(Expr::pow(Expr::var(len), Expr::int(2)), Expr::int(100));
    for root in solve_univariate(&sq, len, &st).unwrap() {
        println!("solve univariate:  {}", root.print(&st));
    }

    // Linear system solving with a minimal sufficient premise set.
    let x = st.user("x");
    let y = st.user("y");
    let sys = [
        Equation::new(Expr::add2(Expr::var(x), Expr::var(y)), Expr::int(2)),
        Equation::new(Expr::sub(Expr::var(x), Expr::var(y)), Expr::int(0)),
        Equation::new(Expr::var(x), Expr::int(1)),
    ];
    for f in solve_linear_system(&sys, &st).unwrap() {
        println!(
            "solve linear:      {}   (premises {:?}, minimal: {})",
            f.equation.print(&st),
            f.premises,
            f.minimal_proven
        );
    }

    // The randomized numeric oracle.
    let identity = Equation::new(
        Expr::mul2(Expr::int(2), Expr::var(x)),
        Expr::add2(Expr::var(x), Expr::var(x)),
    );
    println!("numeric_check 2x = x+x: {}", numeric_check(&identity, 100, &st));
}
