//! Validate a formalization: show completions, contradictions and the
//! feedback text an external formalizer would receive.

use geodeduce::formal_lang::parse_problem;
use geodeduce::validation::{build_sketch, format_feedback};

fn main() {
    let good = "\
Perpendicular(Line(P,H),Line(A,B))
PointLiesOnLine(H,Line(A,B))
Find(x)
";
    let bad = "\
PointLiesOnLine(B,Line(A,C))
Triangle(A,B,C)
Find(MeasureOf(Angle(A,B,C)))
";
    for (name, text) in [("perpendicular foot", good), ("collinear triangle", bad)] {
        let problem = parse_problem(text).expect("parseable");
        let (sketch, report) = build_sketch(&problem);
        println!("--- {} ---", name);
        println!("points: {:?}", sketch.points);
        println!("chains: {:?}", sketch.chains);
        print!("{}", format_feedback(&report));
        println!();
    }
}
