//! Cross-module invariants: ordering independence, completion soundness on
//! hand-built embeddings, and budget respect.

use std::collections::BTreeSet;

use geodeduce::algebra::{equation_from_literal, SymbolTable};
use geodeduce::formal_lang::{node_key, parse_problem, print_literal, Literal};
use geodeduce::hypergraph::{Conclusion, ProofHypergraph};
use geodeduce::solver::{solve, SolveOutcome, SolverConfig, UnsolvableReason};
use geodeduce::text_parser::{load_rules, parse_text_with, DEFAULT_RULES};
use geodeduce::theorems::{deductive_pass, registry};
use geodeduce::validation::build_sketch;

// -------------------------------------------------------------------------
// Text parser: rule order must not matter for non-overlapping matches
// -------------------------------------------------------------------------

#[test]
fn text_rules_are_order_independent_for_disjoint_matches() {
    let forward = load_rules(DEFAULT_RULES).unwrap();
    let mut reversed = forward.clone();
    reversed.reverse();
    reversed.sort_by(|a, b| {
        b.priority.cmp(&a.priority).then(b.pattern.len().cmp(&a.pattern.len()))
    });
    let samples = [
        "N Q ∥ O P. Find length of Q P.",
        "AB ⊥ CD. m∠ABC = 40. Find x.",
        "E is the midpoint of AB. AB = 12. Find the length of AE.",
        "Circle O has radius 5. Find the circumference of circle O.",
        "x1 = x2 = x3. Find the value of x1.",
    ];
    for text in samples {
        let a: Vec<String> =
            parse_text_with(text, &forward).literals.iter().map(print_literal).collect();
        let b: Vec<String> =
            parse_text_with(text, &reversed).literals.iter().map(print_literal).collect();
        assert_eq!(a, b, "{}", text);
    }
}

// -------------------------------------------------------------------------
// Theorems: saturation is permutation-independent
// -------------------------------------------------------------------------

fn saturate(problem: &str, reverse_rules: bool) -> BTreeSet<String> {
    let f = parse_problem(problem).unwrap();
    let (sketch, report) = build_sketch(&f);
    assert!(report.is_consistent());
    let st = SymbolTable::new();
    let mut known: Vec<Conclusion> = Vec::new();
    let mut all: Vec<Literal> = f.facts.clone();
    all.extend(report.completions.iter().map(|c| c.literal.clone()));
    for lit in &all {
        if lit.is("Equals") {
            match equation_from_literal(lit, &st) {
                Ok(eq) => known.push(Conclusion::equation(lit.clone(), eq)),
                Err(_) => known.push(Conclusion::literal(lit.clone())),
            }
        } else {
            known.push(Conclusion::literal(lit.clone()));
        }
    }
    let mut g = ProofHypergraph::init(known).unwrap();
    let mut rules = registry();
    if reverse_rules {
        rules.reverse();
    }
    deductive_pass(&mut g, &sketch, &st, &rules);
    g.node_ids().map(|n| node_key(&g.node(n).literal)).collect()
}

#[test]
fn deductive_pass_edge_cases() {
    let f = parse_problem(
        "Triangle(A,B,C)\nPerpendicular(Line(A,B),Line(A,C))\nFind(x)\n",
    )
    .unwrap();
    let (sketch, report) = build_sketch(&f);
    let st = SymbolTable::new();
    let known: Vec<Conclusion> = f
        .facts
        .iter()
        .chain(report.completions.iter().map(|c| &c.literal))
        .cloned()
        .map(Conclusion::literal)
        .collect();
    let mut g = ProofHypergraph::init(known).unwrap();
    // an empty registry adds nothing
    assert_eq!(deductive_pass(&mut g, &sketch, &st, &[]), 0);
    // a saturating pass followed by another adds nothing the second time
    let first = deductive_pass(&mut g, &sketch, &st, &registry());
    assert!(first > 0);
    assert_eq!(deductive_pass(&mut g, &sketch, &st, &registry()), 0);
    // the algebraic pass over a graph with no equations adds nothing
    let (added, contradiction) = geodeduce::solver::algebraic_pass(&mut g, &st);
    assert!(contradiction.is_none());
    assert_eq!(added, 0);
}

#[test]
fn deductive_saturation_is_rule_order_independent() {
    for problem in [
        "Triangle(A,B,C)\nPerpendicular(Line(A,B),Line(A,C))\nEquals(LengthOf(Line(A,B)),6)\nFind(LengthOf(Line(B,C)))\n",
        "Parallelogram(J,K,L,M)\nEquals(LengthOf(Line(J,K)),5)\nFind(PerimeterOf(Parallelogram(J,K,L,M)))\n",
        "PointLiesOnLine(X,Line(A,B))\nPointLiesOnLine(X,Line(C,D))\nFind(MeasureOf(Angle(B,X,D)))\n",
    ] {
        let fwd = saturate(problem, false);
        let rev = saturate(problem, true);
        assert_eq!(fwd, rev);
    }
}

// -------------------------------------------------------------------------
// Validation: completions hold on a hand-built embedding of the facts
// -------------------------------------------------------------------------

#[test]
fn completions_are_numerically_sound_on_hand_embeddings() {
    // P above the segment A----H----B, PH vertical, AB horizontal.
    let coords = |p: &str| -> (f64, f64) {
        match p {
            "A" => (0.0, 0.0),
            "H" => (3.0, 0.0),
            "B" => (7.0, 0.0),
            "P" => (3.0, 4.0),
            _ => panic!("unknown point {}", p),
        }
    };
    let f = parse_problem(
        "Perpendicular(Line(P,H),Line(A,B))\nPointLiesOnLine(H,Line(A,B))\nFind(x)\n",
    )
    .unwrap();
    let (_s, report) = build_sketch(&f);
    for c in &report.completions {
        let lit = &c.literal;
        match lit.pred.as_str() {
            "Perpendicular" => {
                let l1 = lit.args[0].as_lit().unwrap();
                let l2 = lit.args[1].as_lit().unwrap();
                let (a, b) = (coords(l1.point(0)), coords(l1.point(1)));
                let (c1, d) = (coords(l2.point(0)), coords(l2.point(1)));
                let u = (b.0 - a.0, b.1 - a.1);
                let w = (d.0 - c1.0, d.1 - c1.1);
                assert!((u.0 * w.0 + u.1 * w.1).abs() < 1e-9, "{}", print_literal(lit));
            }
            other => panic!("unexpected completion kind {}", other),
        }
    }

    // Circle completions: radius equalities must hold at the real radius.
    let f = parse_problem(
        "PointLiesOnCircle(A,Circle(O,r))\nPointLiesOnCircle(B,Circle(O,r))\n\
         IsDiameterOf(Line(A,B),Circle(O,r))\nFind(DiameterOf(Circle(O)))\n",
    )
    .unwrap();
    let circle = |p: &str| -> (f64, f64) {
        match p {
            "O" => (1.0, 1.0),
            "A" => (4.0, 1.0),
            "B" => (-2.0, 1.0),
            _ => panic!("unknown point {}", p),
        }
    };
    let radius = 3.0f64;
    let dist = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
    let (_s, report) = build_sketch(&f);
    assert!(report.is_consistent());
    let mut saw_radius_eq = 0;
    let mut saw_diameter = 0;
    for c in &report.completions {
        let lit = &c.literal;
        match (lit.pred.as_str(), c.rule) {
            ("Equals", "radius definition") => {
                // LengthOf(Line(O,X)) = RadiusOf(Circle(O))
                let seg = lit.args[0].as_lit().unwrap().args[0].as_lit().unwrap();
                let d = dist(circle(seg.point(0)), circle(seg.point(1)));
                assert!((d - radius).abs() < 1e-9, "{}", print_literal(lit));
                saw_radius_eq += 1;
            }
            ("Equals", "diameter definition") => {
                saw_diameter += 1;
            }
            ("PointLiesOnLine", _) => {
                let x = circle(lit.args[0].as_id().unwrap());
                let l = lit.args[1].as_lit().unwrap();
                let (u, v) = (circle(l.point(0)), circle(l.point(1)));
                assert!((dist(u, x) + dist(x, v) - dist(u, v)).abs() < 1e-9);
            }
            ("PointLiesOnCircle", _) => {
                let p = circle(lit.args[0].as_id().unwrap());
                let o = circle("O");
                assert!((dist(o, p) - radius).abs() < 1e-9);
            }
            _ => {}
        }
    }
    assert!(saw_radius_eq >= 2);
    assert!(saw_diameter >= 1);
}

// -------------------------------------------------------------------------
// Budgets
// -------------------------------------------------------------------------

#[test]
fn zero_timeout_reports_timeout() {
    let text = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../corpus/similar_triangles/problem.txt"),
    )
    .unwrap();
    let f = parse_problem(&text).unwrap();
    let cfg = SolverConfig { timeout_secs: 0.0, ..SolverConfig::default() };
    match solve(&f, &cfg) {
        SolveOutcome::Unsolvable(UnsolvableReason::Timeout) => {}
        other => panic!("expected timeout, got {:?}", matches!(other, SolveOutcome::Solved(_))),
    }
}
