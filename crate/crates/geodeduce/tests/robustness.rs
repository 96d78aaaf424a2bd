//! Pipeline robustness: the solver must return a variant — never panic —
//! on arbitrary well-formed formalizations, including junk ones.

use geodeduce::formal_lang::{parse_problem, print_literal, Literal};
use geodeduce::solver::{solve, SolveOutcome, SolverConfig};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn pt(rng: &mut StdRng) -> String {
    let letters = ["A", "B", "C", "D", "E", "F", "O", "P", "Q"];
    letters[rng.gen_range(0..letters.len())].to_string()
}

fn distinct(rng: &mut StdRng, n: usize) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut guard = 0;
    while out.len() < n {
        guard += 1;
        if guard > 100 {
            return out;
        }
        let p = pt(rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn random_fact(rng: &mut StdRng) -> Option<Literal> {
    let lit = |s: String| geodeduce::formal_lang::parse_literal(&s).ok();
    let choice = rng.gen_range(0..12);
    Some(match choice {
        0 => {
            let v = distinct(rng, 3);
            lit(format!("Triangle({},{},{})", v[0], v[1], v[2]))?
        }
        1 => {
            let v = distinct(rng, 4);
            lit(format!("Parallelogram({},{},{})", v[0], v[1], v[2]))
                .or_else(|| lit(format!("Parallelogram({},{},{},{})", v[0], v[1], v[2], v[3])))?
        }
        2 => {
            let v = distinct(rng, 3);
            lit(format!("PointLiesOnLine({},Line({},{}))", v[0], v[1], v[2]))?
        }
        3 => {
            let v = distinct(rng, 4);
            lit(format!("Parallel(Line({},{}),Line({},{}))", v[0], v[1], v[2], v[3]))?
        }
        4 => {
            let v = distinct(rng, 4);
            lit(format!("Perpendicular(Line({},{}),Line({},{}))", v[0], v[1], v[2], v[3]))?
        }
        5 => {
            let v = distinct(rng, 2);
            lit(format!(
                "Equals(LengthOf(Line({},{})),{})",
                v[0],
                v[1],
                rng.gen_range(1..30)
            ))?
        }
        6 => {
            let v = distinct(rng, 3);
            lit(format!(
                "Equals(MeasureOf(Angle({},{},{})),{})",
                v[0],
                v[1],
                v[2],
                rng.gen_range(10..170)
            ))?
        }
        7 => {
            let v = distinct(rng, 2);
            lit(format!("PointLiesOnCircle({},Circle({},r))", v[0], v[1]))?
        }
        8 => {
            let v = distinct(rng, 2);
            lit(format!("Equals(LengthOf(Line({},{})),x)", v[0], v[1]))?
        }
        9 => {
            let v = distinct(rng, 3);
            lit(format!("IsMidpointOf({},Line({},{}))", v[0], v[1], v[2]))?
        }
        10 => {
            let v = distinct(rng, 4);
            lit(format!("Similar(Triangle({},{},{}),Triangle({},{},{}))",
                v[0], v[1], v[2], v[1], v[2], v[3]))?
        }
        _ => {
            let v = distinct(rng, 2);
            lit(format!("Tangent(Line({},{}),Circle({},r))", v[0], v[1], pt(rng)))?
        }
    })
}

#[test]
fn solver_never_panics_on_random_well_formed_input() {
    let mut rng = StdRng::seed_from_u64(0xbeef);
    let mut outcomes = [0usize; 3];
    for _case in 0..200 {
        let n = rng.gen_range(1..6);
        let mut lines = Vec::new();
        for _ in 0..n {
            if let Some(f) = random_fact(&mut rng) {
                lines.push(print_literal(&f));
            }
        }
        let goal = match rng.gen_range(0..3) {
            0 => {
                let v = distinct(&mut rng, 2);
                format!("Find(LengthOf(Line({},{})))", v[0], v[1])
            }
            1 => {
                let v = distinct(&mut rng, 3);
                format!("Find(MeasureOf(Angle({},{},{})))", v[0], v[1], v[2])
            }
            _ => "Find(x)".to_string(),
        };
        lines.push(goal);
        let text = lines.join("\n");
        let Ok(f) = parse_problem(&text) else { continue };
        let cfg = SolverConfig {
            max_iterations: 6,
            timeout_secs: 5.0,
            ..SolverConfig::default()
        };
        match solve(&f, &cfg) {
            SolveOutcome::Solved(sol) => {
                geodeduce::solver::validate_syllogistic(&sol)
                    .unwrap_or_else(|e| panic!("{}\n{}", e, text));
                outcomes[0] += 1;
            }
            SolveOutcome::Unsolvable(_) => outcomes[1] += 1,
            SolveOutcome::Inconsistent(_) => outcomes[2] += 1,
        }
    }
    // The generator produces a healthy mix of all three outcomes.
    assert!(outcomes[1] > 0, "some random problems must saturate");
    println!(
        "solved {}, unsolvable {}, inconsistent {}",
        outcomes[0], outcomes[1], outcomes[2]
    );
}

#[test]
fn goal_variants_are_handled() {
    // A compound goal defines a fresh target quantity.
    let f = parse_problem(
        "Equals(AreaOf(Triangle(A,B,C)),20)\nEquals(AreaOf(Triangle(D,E,F)),8)\n\
         Find(Sub(AreaOf(Triangle(A,B,C)),AreaOf(Triangle(D,E,F))))\n",
    )
    .unwrap();
    match solve(&f, &SolverConfig::default()) {
        SolveOutcome::Solved(sol) => {
            assert!((sol.answer_value.to_f64() - 12.0).abs() < 1e-9);
        }
        other => panic!("compound goal failed: {:?}", matches!(other, SolveOutcome::Solved(_))),
    }
    // A bare-variable goal.
    let f = parse_problem("Equals(Add(x,3),10)\nLine(A,B)\nFind(x)\n").unwrap();
    let SolveOutcome::Solved(sol) = solve(&f, &SolverConfig::default()) else {
        panic!("bare variable goal failed");
    };
    assert!((sol.answer_value.to_f64() - 7.0).abs() < 1e-9);
}

#[test]
fn shaded_region_style_goal_with_values() {
    // Area difference where the parts come from formulas.
    let f = parse_problem(
        "Circle(O,r)\nEquals(RadiusOf(Circle(O)),5)\nTriangle(A,B,C)\n\
         Perpendicular(Line(A,B),Line(A,C))\nEquals(LengthOf(Line(A,B)),6)\n\
         Equals(LengthOf(Line(A,C)),4)\n\
         Find(Sub(AreaOf(Circle(O)),AreaOf(Triangle(A,B,C))))\n",
    )
    .unwrap();
    let SolveOutcome::Solved(sol) = solve(&f, &SolverConfig::default()) else {
        panic!("shaded-region goal failed");
    };
    let expected = std::f64::consts::PI * 25.0 - 12.0;
    assert!((sol.answer_value.to_f64() - expected).abs() < 1e-6);
}

#[test]
fn two_in_domain_roots_branch_instead_of_clashing() {
    // sin of an angle is 0.5 at both 30 and 150 degrees; both are valid,
    // the first is reported and the sibling is counted as an alternative.
    let f = parse_problem(
        "Equals(SinOf(MeasureOf(Angle(A,B,C))),0.5)\nAngle(A,B,C)\n\
         Find(MeasureOf(Angle(A,B,C)))\n",
    )
    .unwrap();
    match solve(&f, &SolverConfig::default()) {
        SolveOutcome::Solved(sol) => {
            let v = sol.answer_value.to_f64();
            assert!((v - 30.0).abs() < 1e-6 || (v - 150.0).abs() < 1e-6, "got {}", v);
            assert_eq!(sol.stats.alternative_answers, 1);
        }
        other => panic!(
            "expected a branched solution, got solved={}",
            matches!(other, SolveOutcome::Solved(_))
        ),
    }
}

#[test]
fn tangency_roots_are_found_not_fatal() {
    // sin reaches 1 exactly once on (0, 180); tangency must not abort.
    let f = parse_problem(
        "Equals(SinOf(MeasureOf(Angle(A,B,C))),1)\nAngle(A,B,C)\n\
         Find(MeasureOf(Angle(A,B,C)))\n",
    )
    .unwrap();
    match solve(&f, &SolverConfig::default()) {
        SolveOutcome::Solved(sol) => {
            assert!((sol.answer_value.to_f64() - 90.0).abs() < 1e-6);
        }
        SolveOutcome::Unsolvable(r) => {
            panic!("tangency case must not be fatal: {}", r);
        }
        _ => panic!("unexpected"),
    }
}
