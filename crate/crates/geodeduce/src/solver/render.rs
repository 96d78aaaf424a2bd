//! Human-readable rendering of solutions, node display forms, the result
//! JSON, and the syllogistic-closure validator.

use serde::Serialize;

use super::{SolveOutcome, Solution, Step};
use crate::algebra::{as_value, print_expr, SymbolTable};
use crate::formal_lang::{print_literal, Literal};
use crate::hypergraph::{NodeId, ProofHypergraph, KNOWN_FACTS};
use crate::validation::format_feedback;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Unicode,
    Ascii,
}

/// Display form of a node: mathematical notation for equations, compact
/// symbols for figures and relations.
pub fn display_node(
    graph: &ProofHypergraph,
    st: &SymbolTable,
    node: NodeId,
    style: RenderStyle,
) -> String {
    let data = graph.node(node);
    let text = if node == graph.start() {
        "start".to_string()
    } else if let Some(eq) = &data.equation {
        // Bindings read value-first: `9.6 = MO`.
        let (lhs, rhs) = if as_value(&eq.rhs).is_some() && as_value(&eq.lhs).is_none() {
            (&eq.rhs, &eq.lhs)
        } else {
            (&eq.lhs, &eq.rhs)
        };
        format!("{} = {}", print_expr(lhs, st), print_expr(rhs, st))
    } else {
        display_literal(&data.literal)
    };
    match style {
        RenderStyle::Unicode => text,
        RenderStyle::Ascii => asciify(&text),
    }
}

fn points_of(lit: &Literal) -> String {
    lit.args.iter().filter_map(|a| a.as_id()).collect::<Vec<_>>().join("")
}

fn seg(lit: Option<&Literal>) -> String {
    lit.map(points_of).unwrap_or_default()
}

/// Compact reading of a non-equation literal.
pub fn display_literal(lit: &Literal) -> String {
    let arg_lit = |i: usize| lit.args.get(i).and_then(|a| a.as_lit());
    match lit.pred.as_str() {
        "Line" => points_of(lit),
        "Angle" => format!("∠{}", points_of(lit)),
        "Triangle" => format!("△{}", points_of(lit)),
        "Circle" => format!("⊙{}", lit.point(0)),
        "Arc" => format!("arc {}", points_of(lit)),
        "Sector" => format!("sector {}", points_of(lit)),
        "PointLiesOnLine" => {
            format!("{} on {}", lit.point(0), seg(arg_lit(1)))
        }
        "PointLiesOnCircle" => {
            format!("{} on ⊙{}", lit.point(0), arg_lit(1).map(|c| c.point(0)).unwrap_or(""))
        }
        "Parallel" => format!("{} ∥ {}", seg(arg_lit(0)), seg(arg_lit(1))),
        "Perpendicular" => format!("{} ⊥ {}", seg(arg_lit(0)), seg(arg_lit(1))),
        "Similar" => format!(
            "{} ∼ {}",
            arg_lit(0).map(display_literal).unwrap_or_default(),
            arg_lit(1).map(display_literal).unwrap_or_default()
        ),
        "Congruent" => format!(
            "{} ≅ {}",
            arg_lit(0).map(display_literal).unwrap_or_default(),
            arg_lit(1).map(display_literal).unwrap_or_default()
        ),
        "Tangent" => format!(
            "{} tangent to ⊙{}",
            seg(arg_lit(0)),
            arg_lit(1).map(|c| c.point(0)).unwrap_or("")
        ),
        "IsMidpointOf" => format!("{} midpoint of {}", lit.point(0), seg(arg_lit(1))),
        "IsDiameterOf" => format!(
            "{} diameter of ⊙{}",
            seg(arg_lit(0)),
            arg_lit(1).map(|c| c.point(0)).unwrap_or("")
        ),
        "IsMedianOf" => format!(
            "{} median of {}",
            seg(arg_lit(0)),
            arg_lit(1).map(display_literal).unwrap_or_default()
        ),
        "IsMidsegmentOf" => format!(
            "{} midsegment of {}",
            seg(arg_lit(0)),
            arg_lit(1).map(display_literal).unwrap_or_default()
        ),
        "BisectsAngle" => format!(
            "{} bisects {}",
            seg(arg_lit(0)),
            arg_lit(1).map(display_literal).unwrap_or_default()
        ),
        "Equilateral" => format!(
            "equilateral {}",
            arg_lit(0).map(display_literal).unwrap_or_default()
        ),
        "Regular" => format!(
            "regular {}",
            arg_lit(0).map(display_literal).unwrap_or_default()
        ),
        "Quadrilateral" | "Parallelogram" | "Square" | "Rectangle" | "Rhombus" | "Trapezoid"
        | "Kite" | "Polygon" | "Pentagon" | "Hexagon" | "Heptagon" | "Octagon" => {
            format!("{} {}", lit.pred.to_lowercase(), points_of(lit))
        }
        _ => print_literal(lit),
    }
}

pub fn asciify(text: &str) -> String {
    text.chars()
        .flat_map(|c| {
            match c {
                '∠' => "angle ".chars().collect::<Vec<_>>(),
                '△' => "triangle ".chars().collect(),
                '⊙' => "circle ".chars().collect(),
                '∥' => "||".chars().collect(),
                '⊥' => "_|_".chars().collect(),
                '∼' => "~".chars().collect(),
                '≅' => "=~".chars().collect(),
                '⟹' => "==>".chars().collect(),
                'π' => "pi".chars().collect(),
                '√' => "sqrt ".chars().collect(),
                '·' => "*".chars().collect(),
                '≠' => "!=".chars().collect(),
                other => vec![other],
            }
        })
        .collect()
}

/// Numbered syllogistic steps plus a final answer line. Deterministic.
pub fn render_solution(sol: &Solution, style: RenderStyle) -> String {
    let mut out = String::new();
    for (i, step) in sol.steps.iter().enumerate() {
        let line = format!(
            "Step {}: {}: {} ⟹ {}\n",
            i + 1,
            step.theorem,
            step.premises.join(", "),
            step.conclusions.join(", "),
        );
        out.push_str(&line);
    }
    out.push_str(&format!("Answer: {}\n", display_answer(&sol.answer)));
    match style {
        RenderStyle::Unicode => out,
        RenderStyle::Ascii => asciify(&out),
    }
}

fn display_answer(answer: &Literal) -> String {
    let term = answer.args[0]
        .as_lit()
        .map(display_literal)
        .unwrap_or_else(|| print_literal_arg(answer, 0));
    let value = print_literal_arg(answer, 1);
    format!("{} = {}", value, term_reading(answer, term))
}

fn term_reading(answer: &Literal, term: String) -> String {
    // Quantity literals read as their measure.
    match answer.args[0].as_lit().map(|l| l.pred.as_str()) {
        Some("LengthOf") | Some("MeasureOf") | Some("AreaOf") | Some("PerimeterOf")
        | Some("RadiusOf") | Some("DiameterOf") | Some("CircumferenceOf") => {
            let inner = answer.args[0].as_lit().and_then(|l| l.args[0].as_lit());
            match answer.args[0].as_lit().map(|l| l.pred.as_str()).unwrap_or("") {
                "LengthOf" => inner.map(points_of).unwrap_or(term),
                "MeasureOf" => inner.map(display_literal).unwrap_or(term),
                "AreaOf" => format!("area({})", inner.map(display_literal).unwrap_or_default()),
                "PerimeterOf" => {
                    format!("perimeter({})", inner.map(display_literal).unwrap_or_default())
                }
                "RadiusOf" => format!("radius of {}", inner.map(display_literal).unwrap_or_default()),
                "DiameterOf" => {
                    format!("diameter of {}", inner.map(display_literal).unwrap_or_default())
                }
                "CircumferenceOf" => {
                    format!("circumference of {}", inner.map(display_literal).unwrap_or_default())
                }
                _ => term,
            }
        }
        _ => term,
    }
}

fn print_literal_arg(lit: &Literal, idx: usize) -> String {
    match &lit.args[idx] {
        crate::formal_lang::Arg::Id(s) => s.clone(),
        crate::formal_lang::Arg::Expr(e) => e.clone(),
        crate::formal_lang::Arg::Lit(l) => print_literal(l),
    }
}

/// Machine check of logical coherence: every step's premises
/// must already be established by Known Facts or an earlier conclusion.
pub fn validate_syllogistic(sol: &Solution) -> Result<(), String> {
    let mut established: std::collections::BTreeSet<&str> = std::collections::BTreeSet::new();
    established.insert("start");
    for (i, step) in sol.steps.iter().enumerate() {
        if i == 0 && step.theorem != KNOWN_FACTS {
            return Err(format!("step 1 is `{}`, expected Known Facts", step.theorem));
        }
        for p in &step.premises {
            if !established.contains(p.as_str()) {
                return Err(format!(
                    "step {} premise `{}` was never established",
                    i + 1,
                    p
                ));
            }
        }
        for c in &step.conclusions {
            established.insert(c);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Result JSON
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct StepDto<'a> {
    theorem: &'a str,
    premises: &'a [String],
    conclusions: &'a [String],
}

#[derive(Serialize)]
struct StatsDto {
    iterations: usize,
    nodes: usize,
    edges: usize,
    edges_in_minimal: usize,
    wall_ms: u64,
    beam_bound: bool,
    alternative_answers: usize,
}

#[derive(Serialize)]
struct ResultDto<'a> {
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    answer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    answer_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    feedback: Option<String>,
    steps: Vec<StepDto<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<StatsDto>,
}

/// Stable-schema JSON for the outcome of a solve.
pub fn outcome_json(outcome: &SolveOutcome) -> String {
    let dto = match outcome {
        SolveOutcome::Solved(sol) => ResultDto {
            status: "solved",
            answer: Some(print_literal(&sol.answer)),
            answer_value: Some(sol.answer_value.to_f64()),
            reason: None,
            feedback: None,
            steps: sol
                .steps
                .iter()
                .map(|s: &Step| StepDto {
                    theorem: &s.theorem,
                    premises: &s.premises,
                    conclusions: &s.conclusions,
                })
                .collect(),
            stats: Some(StatsDto {
                iterations: sol.stats.iterations,
                nodes: sol.stats.nodes,
                edges: sol.stats.edges,
                edges_in_minimal: sol.stats.edges_in_minimal,
                wall_ms: sol.stats.wall_ms as u64,
                beam_bound: sol.stats.beam_bound,
                alternative_answers: sol.stats.alternative_answers,
            }),
        },
        SolveOutcome::Unsolvable(reason) => ResultDto {
            status: "unsolvable",
            answer: None,
            answer_value: None,
            reason: Some(reason.to_string()),
            feedback: None,
            steps: Vec::new(),
            stats: None,
        },
        SolveOutcome::Inconsistent(report) => ResultDto {
            status: "inconsistent",
            answer: None,
            answer_value: None,
            reason: None,
            feedback: Some(format_feedback(report)),
            steps: Vec::new(),
            stats: None,
        },
    };
    serde_json::to_string_pretty(&dto).expect("result serializes")
}
