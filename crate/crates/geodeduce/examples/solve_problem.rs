//! Solve a formalization file and print the stepwise solution.

use geodeduce::formal_lang::parse_problem;
use geodeduce::solver::{render_solution, solve, RenderStyle, SolveOutcome, SolverConfig};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "corpus/similar_triangles/problem.txt".to_string());
    let text = std::fs::read_to_string(&path).expect("readable problem file");
    let problem = parse_problem(&text).expect("well-formed formalization");
    match solve(&problem, &SolverConfig::default()) {
        SolveOutcome::Solved(sol) => {
            print!("{}", render_solution(&sol, RenderStyle::Unicode));
            eprintln!(
                "[{} steps, {} nodes, {} edges total, {} in minimal subgraph, {} ms]",
                sol.steps.len(),
                sol.stats.nodes,
                sol.stats.edges,
                sol.stats.edges_in_minimal,
                sol.stats.wall_ms
            );
        }
        SolveOutcome::Unsolvable(r) => eprintln!("unsolvable: {}", r),
        SolveOutcome::Inconsistent(rep) => {
            eprint!("{}", geodeduce::validation::format_feedback(&rep));
        }
    }
}
