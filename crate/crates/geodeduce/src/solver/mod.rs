//! The end-to-end solving loop: validate, build the proof hypergraph,
//! alternate deductive and algebraic reasoning to saturation or goal,
//! extract the minimal sub-hypergraph and render the stepwise solution.

mod render;

pub use render::{outcome_json, render_solution, validate_syllogistic, RenderStyle};

use std::time::Instant;

use crate::algebra::{
    self, as_value, binding_of, equation_from_literal, propagate_domains, AlgebraError, Binding, Equation, Expr, SymbolTable, Value, VarId,
};
use crate::formal_lang::{Arg, Formalization, Literal};
use crate::hypergraph::{
    find_minimal_subgraph, topological_order, Conclusion, NodeId, ProofHypergraph,
};
use crate::theorems::{deductive_pass, registry};
use crate::validation::{build_sketch, ValidationReport};

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub timeout_secs: f64,
    pub max_refinements: usize,
    pub beam_cap: usize,
    pub deductive_enabled: bool,
    pub algebraic_enabled: bool,
    pub style: RenderStyle,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iterations: 100,
            timeout_secs: 1800.0,
            max_refinements: 5,
            beam_cap: 8,
            deductive_enabled: true,
            algebraic_enabled: true,
            style: RenderStyle::Unicode,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum UnsolvableReason {
    /// Both passes reached a fixpoint without producing the goal.
    Saturated,
    MaxIterations,
    Timeout,
    /// The facts force an impossible numeric binding; detail names the
    /// violated relation.
    NumericContradiction { detail: String },
}

impl std::fmt::Display for UnsolvableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnsolvableReason::Saturated => write!(f, "saturated without reaching the goal"),
            UnsolvableReason::MaxIterations => write!(f, "iteration budget exhausted"),
            UnsolvableReason::Timeout => write!(f, "timeout"),
            UnsolvableReason::NumericContradiction { detail } => {
                write!(f, "numeric contradiction: {}", detail)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Step {
    pub theorem: String,
    pub premises: Vec<String>,
    pub conclusions: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub iterations: usize,
    pub nodes: usize,
    pub edges: usize,
    pub edges_in_minimal: usize,
    pub wall_ms: u128,
    pub beam_bound: bool,
    pub alternative_answers: usize,
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// `Equals(goal term, value)`.
    pub answer: Literal,
    pub answer_value: Value,
    pub steps: Vec<Step>,
    pub stats: SolveStats,
}

#[derive(Debug)]
pub enum SolveOutcome {
    Solved(Solution),
    Unsolvable(UnsolvableReason),
    Inconsistent(ValidationReport),
}

/// The goal quantity: a variable to watch for a numeric binding.
struct Goal {
    var: VarId,
    term: Arg,
}

/// A finished run: the outcome plus the full expansion graph when one was
/// built (absent for inconsistent inputs).
pub struct SolveRun {
    pub outcome: SolveOutcome,
    pub graph: Option<ProofHypergraph>,
}

/// Solve a parsed problem under the given budgets.
pub fn solve(f: &Formalization, cfg: &SolverConfig) -> SolveOutcome {
    solve_detailed(f, cfg).outcome
}

/// Solve and keep the expansion graph for dumping or inspection.
pub fn solve_detailed(f: &Formalization, cfg: &SolverConfig) -> SolveRun {
    let started = Instant::now();
    let (sketch, report) = build_sketch(f);
    if !report.is_consistent() {
        return SolveRun { outcome: SolveOutcome::Inconsistent(report), graph: None };
    }

    let st = SymbolTable::new();
    for (center, info) in &sketch.circles {
        if let Some(name) = &info.radius_name {
            let radius = Literal::new(
                "RadiusOf",
                vec![Arg::lit(Literal::points("Circle", &[center]))],
            );
            st.alias(name, &radius);
        }
    }

    // Known facts: formalization facts plus sketch completions.
    let mut known: Vec<Conclusion> = Vec::new();
    let mut fact_literals: Vec<Literal> = f.facts.clone();
    fact_literals.extend(report.completions.iter().map(|c| c.literal.clone()));
    for lit in &fact_literals {
        if lit.is("Equals") {
            match equation_from_literal(lit, &st) {
                Ok(eq) => known.push(Conclusion::equation(lit.clone(), eq)),
                Err(_) => known.push(Conclusion::literal(lit.clone())),
            }
        } else {
            known.push(Conclusion::literal(lit.clone()));
        }
    }

    // Goal: a quantity variable, or a fresh target defined by an equation.
    let goal = match goal_of(f, &st) {
        Ok((goal, extra)) => {
            known.extend(extra);
            goal
        }
        Err(msg) => {
            return SolveRun {
                outcome: SolveOutcome::Unsolvable(UnsolvableReason::NumericContradiction {
                    detail: format!("goal term is not a quantity: {}", msg),
                }),
                graph: None,
            }
        }
    };

    let mut graph = match ProofHypergraph::init(known) {
        Ok(g) => g,
        Err(_) => {
            return SolveRun {
                outcome: SolveOutcome::Unsolvable(UnsolvableReason::Saturated),
                graph: None,
            }
        }
    };
    refresh_domains(&graph, &st);

    let rules = registry();
    let mut iterations = 0usize;
    let mut answer: Option<(NodeId, Value)> = None;
    let mut alternatives = 0usize;
    let mut reason: Option<UnsolvableReason> = None;

    // Known facts alone may already answer the goal.
    if let Some((n, v, alt)) = match_goal(&graph, &st, goal.var) {
        answer = Some((n, v));
        alternatives = alt;
    }

    while answer.is_none() && iterations < cfg.max_iterations {
        if started.elapsed().as_secs_f64() > cfg.timeout_secs {
            reason = Some(UnsolvableReason::Timeout);
            break;
        }
        iterations += 1;
        let dr_added = if cfg.deductive_enabled {
            deductive_pass(&mut graph, &sketch, &st, &rules)
        } else {
            0
        };
        let (ar_added, contradiction) = if cfg.algebraic_enabled {
            algebraic_pass_inner(&mut graph, &st, cfg, started)
        } else {
            (0, None)
        };
        if let Some(detail) = contradiction {
            reason = Some(UnsolvableReason::NumericContradiction { detail });
            break;
        }
        refresh_domains(&graph, &st);
        if let Some((n, v, alt)) = match_goal(&graph, &st, goal.var) {
            answer = Some((n, v));
            alternatives = alt;
            break;
        }
        if dr_added == 0 && ar_added == 0 {
            reason = Some(UnsolvableReason::Saturated);
            break;
        }
    }

    let Some((goal_node, value)) = answer else {
        let reason = reason.unwrap_or(UnsolvableReason::MaxIterations);
        return SolveRun {
            outcome: SolveOutcome::Unsolvable(reason),
            graph: Some(graph),
        };
    };

    let sub = match find_minimal_subgraph(&graph, goal_node, cfg.beam_cap) {
        Ok(s) => s,
        Err(_) => {
            return SolveRun {
                outcome: SolveOutcome::Unsolvable(UnsolvableReason::Saturated),
                graph: Some(graph),
            }
        }
    };
    let order = topological_order(&graph, &sub);

    let steps: Vec<Step> = order
        .iter()
        .map(|&e| {
            let edge = graph.edge(e);
            let premises: Vec<String> = edge
                .premises
                .iter()
                .map(|&p| render::display_node(&graph, &st, p, cfg.style))
                .collect();
            let rendered = sub.rendered_conclusions.get(&e).cloned().unwrap_or_default();
            let conclusions: Vec<String> = rendered
                .iter()
                .map(|&c| render::display_node(&graph, &st, c, cfg.style))
                .collect();
            Step { theorem: edge.theorem.clone(), premises, conclusions }
        })
        .collect();

    let answer_lit = Literal::new(
        "Equals",
        vec![goal.term.clone(), algebra::expr_to_arg(&value.to_expr(), &st)],
    );
    let solution = Solution {
        answer: answer_lit,
        answer_value: value,
        steps,
        stats: SolveStats {
            iterations,
            nodes: graph.node_count(),
            edges: graph.edge_count(),
            edges_in_minimal: sub.edges.len(),
            wall_ms: started.elapsed().as_millis(),
            beam_bound: sub.beam_bound,
            alternative_answers: alternatives,
        },
    };
    debug_assert!(validate_syllogistic(&solution).is_ok());
    SolveRun { outcome: SolveOutcome::Solved(solution), graph: Some(graph) }
}

/// Resolve the Find target into a watched variable, possibly defining a
/// fresh target variable by an extra known-fact equation.
fn goal_of(f: &Formalization, st: &SymbolTable) -> Result<(Goal, Vec<Conclusion>), String> {
    let arg = f.goal_arg();
    let expr = algebra::arg_to_expr(arg, st).map_err(|e| e.to_string())?;
    if let Expr::Var(v) = expr {
        return Ok((Goal { var: v, term: arg.clone() }, Vec::new()));
    }
    // Compound goal: define target = expr as a known fact.
    let term_lit = match arg {
        Arg::Lit(l) => (**l).clone(),
        _ => Literal::new("Find", vec![arg.clone()]),
    };
    let var = st.target(&term_lit);
    let eq = Equation::new(Expr::Var(var), expr);
    let lit = eq.to_literal(st);
    Ok((Goal { var, term: arg.clone() }, vec![Conclusion::equation(lit, eq)]))
}

/// First numeral binding of the goal variable, with alternative count.
fn match_goal(
    graph: &ProofHypergraph,
    _st: &SymbolTable,
    goal: VarId,
) -> Option<(NodeId, Value, usize)> {
    let mut hits: Vec<(NodeId, Value)> = Vec::new();
    for n in graph.node_ids() {
        if let Some(eq) = &graph.node(n).equation {
            if let Some((v, value)) = eq.as_numeral_binding() {
                if v == goal {
                    hits.push((n, value));
                }
            }
        }
    }
    let alternatives = hits.len().saturating_sub(1);
    hits.into_iter().next().map(|(n, v)| (n, v, alternatives))
}

fn refresh_domains(graph: &ProofHypergraph, st: &SymbolTable) {
    let eqs: Vec<Equation> = graph
        .node_ids()
        .filter_map(|n| graph.node(n).equation.clone())
        .collect();
    propagate_domains(&eqs, st);
}

/// One algebraic-reasoning pass over all equation nodes: substitution,
/// transitivity, then univariate and linear solving, iterated to fixpoint.
/// Returns edges added, plus a contradiction detail if one was found.
pub fn algebraic_pass(graph: &mut ProofHypergraph, st: &SymbolTable) -> (usize, Option<String>) {
    let cfg = SolverConfig::default();
    algebraic_pass_inner(graph, st, &cfg, Instant::now())
}

fn algebraic_pass_inner(
    graph: &mut ProofHypergraph,
    st: &SymbolTable,
    cfg: &SolverConfig,
    started: Instant,
) -> (usize, Option<String>) {
    let mut added = 0usize;
    for _round in 0..64 {
        if started.elapsed().as_secs_f64() > cfg.timeout_secs {
            break;
        }
        let mut round_added = 0usize;

        round_added += substitution_stage(graph, st);
        let (trans_added, contra) = transitivity_stage(graph, st);
        round_added += trans_added;
        if let Some(c) = contra {
            return (added + round_added, Some(c));
        }
        let (solve_added, contra) = solving_stage(graph, st);
        round_added += solve_added;
        if let Some(c) = contra {
            return (added + round_added, Some(c));
        }

        added += round_added;
        if round_added == 0 {
            break;
        }
    }
    (added, None)
}

fn equation_nodes(graph: &ProofHypergraph) -> Vec<(NodeId, Equation)> {
    graph
        .node_ids()
        .filter_map(|n| graph.node(n).equation.clone().map(|e| (n, e)))
        .collect()
}

/// Preferred binding per variable: numerals first, then constant
/// expressions, then problem-text variables, then general expressions;
/// among equals, the replacement with the fewest geometric quantities wins,
/// steering substitution toward problem-text variables and numbers.
fn binding_table(
    eqs: &[(NodeId, Equation)],
    st: &SymbolTable,
) -> std::collections::BTreeMap<VarId, (NodeId, Binding)> {
    let weight = |b: &Binding, n: NodeId| {
        let quantities = b
            .replacement
            .free_vars()
            .iter()
            .filter(|&&v| st.kind(v) != crate::algebra::VarKind::User)
            .count();
        (b.class, quantities, n)
    };
    let mut best: std::collections::BTreeMap<VarId, (NodeId, Binding)> =
        std::collections::BTreeMap::new();
    for (n, eq) in eqs {
        let Some(b) = binding_of(eq, st) else { continue };
        match best.get(&b.var) {
            Some((prev_n, prev)) if weight(prev, *prev_n) <= weight(&b, *n) => {}
            _ => {
                best.insert(b.var, (*n, b));
            }
        }
    }
    best
}

fn substitution_stage(graph: &mut ProofHypergraph, st: &SymbolTable) -> usize {
    let eqs = equation_nodes(graph);
    let bindings = binding_table(&eqs, st);
    let numeral_bound: std::collections::BTreeSet<VarId> = eqs
        .iter()
        .filter_map(|(_, e)| e.as_numeral_binding().map(|(v, _)| v))
        .collect();

    let mut added = 0usize;
    for (node, eq) in &eqs {
        if eq.as_numeral_binding().is_some() {
            continue;
        }
        let subject = binding_of(eq, st).map(|b| b.var);
        if let Some(s) = subject {
            if numeral_bound.contains(&s) {
                continue; // its value is already pinned elsewhere
            }
        }
        let mut used: Vec<(NodeId, Binding)> = Vec::new();
        for v in eq.free_vars() {
            if Some(v) == subject {
                continue;
            }
            if let Some((src, b)) = bindings.get(&v) {
                if src != node {
                    used.push((*src, b.clone()));
                }
            }
        }
        if used.is_empty() {
            continue;
        }
        let new_eq = algebra::substitute_vars(eq, &mut |v| {
            used.iter().find(|(_, b)| b.var == v).map(|(_, b)| b.replacement.clone())
        });
        if new_eq.is_trivial() || new_eq == *eq {
            continue;
        }
        let mut premises: Vec<NodeId> = vec![*node];
        premises.extend(used.iter().map(|(n, _)| *n));
        let lit = new_eq.to_literal(st);
        if graph
            .add_step(&premises, "Substitution", vec![Conclusion::equation(lit, new_eq)])
            .is_ok()
        {
            added += 1;
        }
    }
    added
}

/// Read `v = a` off an equation for transitivity chaining.
fn bare_side(eq: &Equation) -> Vec<(VarId, Expr)> {
    let mut out = Vec::new();
    if let Expr::Var(v) = &eq.lhs {
        out.push((*v, eq.rhs.clone()));
    }
    if let Expr::Var(v) = &eq.rhs {
        out.push((*v, eq.lhs.clone()));
    }
    out
}

fn transitivity_stage(
    graph: &mut ProofHypergraph,
    st: &SymbolTable,
) -> (usize, Option<String>) {
    let eqs = equation_nodes(graph);
    // Alternative roots of one univariate equation are branches, not a
    // conflict; their nodes are exempt from the clash check below.
    let branch_node = |n: crate::hypergraph::NodeId, g: &ProofHypergraph| {
        g.producers(n)
            .iter()
            .any(|&e| g.edge(e).theorem == "Solve Univariate Equation")
    };
    let mut added = 0usize;
    for i in 0..eqs.len() {
        for j in i + 1..eqs.len() {
            let (n1, e1) = &eqs[i];
            let (n2, e2) = &eqs[j];
            for (v1, a) in bare_side(e1) {
                for (v2, b) in bare_side(e2) {
                    if v1 != v2 {
                        continue;
                    }
                    if a == Expr::Var(v1) || b == Expr::Var(v1) {
                        continue;
                    }
                    let (av, bv) = (as_value(&a), as_value(&b));
                    if let (Some(x), Some(y)) = (&av, &bv) {
                        if !x.approx_eq(y) {
                            if branch_node(*n1, graph) || branch_node(*n2, graph) {
                                continue;
                            }
                            return (
                                added,
                                Some(format!(
                                    "{} and {} bind {} to different values ({} vs {})",
                                    e1.print(st),
                                    e2.print(st),
                                    st.display(v1),
                                    algebra::print_expr(&x.to_expr(), st),
                                    algebra::print_expr(&y.to_expr(), st),
                                )),
                            );
                        }
                        continue; // same value restated; nothing new
                    }
                    // Constant side goes left; otherwise order by print.
                    let (lhs, rhs) = if av.is_some() {
                        (a.clone(), b.clone())
                    } else if bv.is_some() {
                        (b.clone(), a.clone())
                    } else {
                        let (pa, pb) =
                            (algebra::print_expr(&a, st), algebra::print_expr(&b, st));
                        if pa <= pb {
                            (a.clone(), b.clone())
                        } else {
                            (b.clone(), a.clone())
                        }
                    };
                    let eq = Equation::new(lhs, rhs);
                    if eq.is_trivial() {
                        continue;
                    }
                    let lit = eq.to_literal(st);
                    if graph
                        .add_step(
                            &[*n1, *n2],
                            "Transitivity of Equivalence",
                            vec![Conclusion::equation(lit, eq)],
                        )
                        .is_ok()
                    {
                        added += 1;
                    }
                }
            }
        }
    }
    (added, None)
}

fn solving_stage(graph: &mut ProofHypergraph, st: &SymbolTable) -> (usize, Option<String>) {
    let eqs = equation_nodes(graph);
    let mut added = 0usize;

    // Fully constant equations must hold.
    for (_, eq) in &eqs {
        if eq.constant_truth() == Some(false) {
            let (l, r) = (as_value(&eq.lhs), as_value(&eq.rhs));
            let detail = format!(
                "equation {} is violated ({} ≠ {})",
                eq.print(st),
                l.map(|v| algebra::print_expr(&v.to_expr(), st)).unwrap_or_default(),
                r.map(|v| algebra::print_expr(&v.to_expr(), st)).unwrap_or_default(),
            );
            return (added, Some(detail));
        }
    }

    // Univariate nonlinear equations.
    for (node, eq) in &eqs {
        if eq.as_numeral_binding().is_some() {
            continue;
        }
        let vars = eq.free_vars();
        if vars.len() != 1 {
            continue;
        }
        let v = vars[0];
        if algebra::univariate_degree(eq, v, st).map(|d| d <= 1).unwrap_or(false) {
            continue; // the linear stage owns this one
        }
        match algebra::solve_univariate(eq, v, st) {
            Ok(roots) => {
                for root in roots {
                    let lit = root.to_literal(st);
                    if graph
                        .add_step(
                            &[*node],
                            "Solve Univariate Equation",
                            vec![Conclusion::equation(lit, root)],
                        )
                        .is_ok()
                    {
                        added += 1;
                    }
                }
            }
            // Insolubility is only proof of a contradiction when the
            // closed form establishes it; grid bracketing can miss
            // tangency roots, so its empty result is just inconclusive.
            Err(AlgebraError::DomainEmpty)
                if algebra::univariate_degree(eq, v, st).map(|d| d <= 2).unwrap_or(false) =>
            {
                return (
                    added,
                    Some(format!(
                        "every root of {} violates the domain of {}",
                        eq.print(st),
                        st.display(v)
                    )),
                );
            }
            Err(AlgebraError::NoRealSolution)
                if algebra::univariate_degree(eq, v, st).map(|d| d <= 2).unwrap_or(false) =>
            {
                return (added, Some(format!("{} has no real solution", eq.print(st))));
            }
            Err(_) => {}
        }
    }

    // Linear system over everything, with minimal sufficient premise sets.
    // Alternative univariate roots branch the value of their variable; only
    // the first root per variable joins the system, so siblings are not
    // misread as an inconsistency.
    let mut seen_branch_vars: std::collections::BTreeSet<VarId> = Default::default();
    let mut kept: Vec<(NodeId, Equation)> = Vec::new();
    for (n, eq) in &eqs {
        let from_branch = graph
            .producers(*n)
            .iter()
            .any(|&e| graph.edge(e).theorem == "Solve Univariate Equation");
        if from_branch {
            if let Some((v, _)) = eq.as_numeral_binding() {
                if !seen_branch_vars.insert(v) {
                    continue;
                }
            }
        }
        kept.push((*n, eq.clone()));
    }
    let flat: Vec<Equation> = kept.iter().map(|(_, e)| e.clone()).collect();
    match algebra::solve_linear_system(&flat, st) {
        Ok(findings) => {
            for f in findings {
                let premises: Vec<NodeId> = f.premises.iter().map(|&i| kept[i].0).collect();
                let lit = f.equation.to_literal(st);
                if graph
                    .add_step(
                        &premises,
                        "Solve Linear Equation System",
                        vec![Conclusion::equation(lit, f.equation.clone())],
                    )
                    .is_ok()
                {
                    added += 1;
                }
            }
        }
        Err(AlgebraError::Inconsistent { premises }) => {
            let names: Vec<String> =
                premises.iter().map(|&i| kept[i].1.print(st)).collect();
            return (
                added,
                Some(format!("inconsistent equation set: {}", names.join(" ; "))),
            );
        }
        Err(_) => {}
    }

    (added, None)
}
