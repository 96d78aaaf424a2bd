//! Randomized end-to-end soundness: generate solvable problems from known
//! configurations, compute the expected answer independently, and require
//! the solver to reproduce it.

use geodeduce::formal_lang::parse_problem;
use geodeduce::solver::{solve, SolveOutcome, SolverConfig, UnsolvableReason};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn answer_of(problem: &str) -> Result<f64, String> {
    let f = parse_problem(problem).map_err(|e| e.to_string())?;
    match solve(&f, &SolverConfig::default()) {
        SolveOutcome::Solved(sol) => Ok(sol.answer_value.to_f64()),
        SolveOutcome::Unsolvable(r) => Err(format!("unsolvable: {}", r)),
        SolveOutcome::Inconsistent(rep) => {
            Err(format!("inconsistent: {:?}", rep.contradictions))
        }
    }
}

fn check(problem: String, expected: f64) {
    match answer_of(&problem) {
        Ok(got) => assert!(
            (got - expected).abs() <= 1e-6 * expected.abs().max(1.0),
            "expected {}, got {} for\n{}",
            expected,
            got,
            problem
        ),
        Err(e) => panic!("{} for\n{}", e, problem),
    }
}

#[test]
fn right_triangles_random_legs() {
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..15 {
        let a = rng.gen_range(2..25i64);
        let b = rng.gen_range(2..25i64);
        check(
            format!(
                "Triangle(A,B,C)\nPerpendicular(Line(A,B),Line(A,C))\n\
                 Equals(LengthOf(Line(A,B)),{})\nEquals(LengthOf(Line(A,C)),{})\n\
                 Find(LengthOf(Line(B,C)))\n",
                a, b
            ),
            ((a * a + b * b) as f64).sqrt(),
        );
    }
}

#[test]
fn segment_splits_random_parts() {
    let mut rng = StdRng::seed_from_u64(102);
    for _ in 0..15 {
        let left = rng.gen_range(1..40i64);
        let right = rng.gen_range(1..40i64);
        check(
            format!(
                "PointLiesOnLine(X,Line(A,B))\nEquals(LengthOf(Line(A,X)),{})\n\
                 Equals(LengthOf(Line(X,B)),{})\nFind(LengthOf(Line(A,B)))\n",
                left, right
            ),
            (left + right) as f64,
        );
        // and the inverse direction: whole and one part given
        let whole = left + right;
        check(
            format!(
                "PointLiesOnLine(X,Line(A,B))\nEquals(LengthOf(Line(A,B)),{})\n\
                 Equals(LengthOf(Line(A,X)),{})\nFind(LengthOf(Line(X,B)))\n",
                whole, left
            ),
            right as f64,
        );
    }
}

#[test]
fn parallel_cut_triangles_random_values() {
    // The bundled similar-triangles configuration at random scales:
    // N on MO, Q on MP, NQ parallel to OP gives PQ = MQ * NO / MN.
    let mut rng = StdRng::seed_from_u64(103);
    for _ in 0..10 {
        let mn = rng.gen_range(2..12i64);
        let no = rng.gen_range(1..10i64);
        let mq = rng.gen_range(2..12i64);
        let expected = mq as f64 * no as f64 / mn as f64;
        check(
            format!(
                "Parallel(Line(N,Q),Line(O,P))\nPointLiesOnLine(Q,Line(M,P))\n\
                 PointLiesOnLine(N,Line(M,O))\nEquals(LengthOf(Line(P,Q)),x)\n\
                 Equals(LengthOf(Line(M,N)),{})\nEquals(LengthOf(Line(N,O)),{})\n\
                 Equals(LengthOf(Line(M,Q)),{})\nAngle(O,M,P)\n\
                 Find(LengthOf(Line(Q,P)))\n",
                mn, no, mq
            ),
            expected,
        );
    }
}

#[test]
fn isosceles_apex_gives_base_angles() {
    let mut rng = StdRng::seed_from_u64(104);
    for _ in 0..10 {
        let apex = rng.gen_range(20..140i64);
        check(
            format!(
                "Triangle(A,B,C)\nEquals(LengthOf(Line(A,B)),LengthOf(Line(A,C)))\n\
                 Equals(MeasureOf(Angle(B,A,C)),{})\nFind(MeasureOf(Angle(A,B,C)))\n",
                apex
            ),
            (180 - apex) as f64 / 2.0,
        );
    }
}

#[test]
fn circles_random_radii() {
    let mut rng = StdRng::seed_from_u64(105);
    for _ in 0..10 {
        let r = rng.gen_range(1..20i64);
        check(
            format!(
                "Circle(O,r)\nEquals(RadiusOf(Circle(O)),{})\n\
                 Find(CircumferenceOf(Circle(O)))\n",
                r
            ),
            2.0 * std::f64::consts::PI * r as f64,
        );
        check(
            format!(
                "Circle(O,r)\nEquals(RadiusOf(Circle(O)),{})\nFind(AreaOf(Circle(O)))\n",
                r
            ),
            std::f64::consts::PI * (r * r) as f64,
        );
    }
}

#[test]
fn rectangles_random_sides() {
    let mut rng = StdRng::seed_from_u64(106);
    for _ in 0..10 {
        let w = rng.gen_range(2..20i64);
        let h = rng.gen_range(2..20i64);
        check(
            format!(
                "Rectangle(A,B,C,D)\nEquals(LengthOf(Line(A,B)),{})\n\
                 Equals(LengthOf(Line(B,C)),{})\nFind(AreaOf(Rectangle(A,B,C,D)))\n",
                w, h
            ),
            (w * h) as f64,
        );
        check(
            format!(
                "Rectangle(A,B,C,D)\nEquals(LengthOf(Line(A,B)),{})\n\
                 Equals(LengthOf(Line(B,C)),{})\nFind(PerimeterOf(Rectangle(A,B,C,D)))\n",
                w, h
            ),
            2.0 * (w + h) as f64,
        );
    }
}

#[test]
fn inconsistent_pythagorean_triples_always_abort() {
    let mut rng = StdRng::seed_from_u64(107);
    for _ in 0..10 {
        let a = rng.gen_range(3..20i64);
        let b = rng.gen_range(3..20i64);
        let true_h = ((a * a + b * b) as f64).sqrt();
        // claim a hypotenuse that is off by at least one unit
        let wrong = true_h.ceil() as i64 + rng.gen_range(1..5);
        let problem = format!(
            "Triangle(A,B,C)\nPerpendicular(Line(A,B),Line(A,C))\n\
             Equals(LengthOf(Line(A,B)),{})\nEquals(LengthOf(Line(A,C)),{})\n\
             Equals(LengthOf(Line(B,C)),{})\nFind(AreaOf(Triangle(A,B,C)))\n",
            a, b, wrong
        );
        let f = parse_problem(&problem).unwrap();
        match solve(&f, &SolverConfig::default()) {
            SolveOutcome::Unsolvable(UnsolvableReason::NumericContradiction { .. }) => {}
            other => panic!(
                "expected contradiction (legs {}, {}, claimed {}), got solved={}",
                a,
                b,
                wrong,
                matches!(other, SolveOutcome::Solved(_))
            ),
        }
    }
}
