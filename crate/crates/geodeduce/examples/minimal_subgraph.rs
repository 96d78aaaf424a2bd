//! Build a proof hypergraph by hand and extract the minimal sub-proof.

use geodeduce::formal_lang::{parse_literal, print_literal};
use geodeduce::hypergraph::{
    dump_json, find_minimal_subgraph, topological_order, Conclusion, ProofHypergraph,
};

fn lit(s: &str) -> Conclusion {
    Conclusion::literal(parse_literal(s).unwrap())
}

fn main() {
    let mut g = ProofHypergraph::init(vec![lit("Line(A,B)"), lit("Line(C,D)")]).unwrap();
    let a = g.lookup(&parse_literal("Line(A,B)").unwrap()).unwrap();

    // A long route and a short route to the same node.
    g.add_step(&[a], "Detour 1", vec![lit("Line(E,F)")]).unwrap();
    let e = g.lookup(&parse_literal("Line(E,F)").unwrap()).unwrap();
    g.add_step(&[e], "Detour 2", vec![lit("Line(G,H)")]).unwrap();
    g.add_step(&[a], "Direct", vec![lit("Line(G,H)")]).unwrap();

    let goal = g.lookup(&parse_literal("Line(G,H)").unwrap()).unwrap();
    let sub = find_minimal_subgraph(&g, goal, 8).unwrap();
    println!(
        "full graph: {} edges; minimal proof: {} edges",
        g.edge_count(),
        sub.edges.len()
    );
    for eid in topological_order(&g, &sub) {
        let edge = g.edge(eid);
        let concl: Vec<String> =
            edge.conclusions.iter().map(|&n| print_literal(&g.node(n).literal)).collect();
        println!("  {} => {}", edge.theorem, concl.join(", "));
    }
    println!("\ngraph dump:\n{}", dump_json(&g));
}
