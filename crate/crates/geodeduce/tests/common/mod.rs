//! Shared test helpers: random DAG hypergraphs and the exhaustive
//! minimal-support oracle.

use geodeduce::formal_lang::Literal;
use geodeduce::hypergraph::{Conclusion, NodeId, ProofHypergraph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn fresh_lit(i: usize) -> Literal {
    Literal::points("Line", &[&format!("P{}", i), &format!("Q{}", i)])
}

/// A random acyclic hypergraph with at most `max_edges` edges (including the
/// Known Facts edge) and a goal chosen among the latest conclusions.
pub fn random_hypergraph(seed: u64, max_edges: usize) -> (ProofHypergraph, NodeId) {
    let mut rng = StdRng::seed_from_u64(seed);
    let base = rng.gen_range(2..=4usize);
    let mut counter = 0usize;
    let known: Vec<Conclusion> = (0..base)
        .map(|_| {
            counter += 1;
            Conclusion::literal(fresh_lit(counter))
        })
        .collect();
    let mut g = ProofHypergraph::init(known).unwrap();

    let extra = rng.gen_range(3..max_edges.max(4)).min(max_edges - 1);
    let mut last_new: Option<NodeId> = None;
    for t in 0..extra {
        let nodes: Vec<NodeId> = g.node_ids().filter(|&n| n != g.start()).collect();
        let np = rng.gen_range(1..=2.min(nodes.len()));
        let mut premises = Vec::new();
        while premises.len() < np {
            let pick = nodes[rng.gen_range(0..nodes.len())];
            if !premises.contains(&pick) {
                premises.push(pick);
            }
        }
        let mut conclusions = Vec::new();
        let nc = rng.gen_range(1..=2usize);
        for _ in 0..nc {
            if rng.gen_bool(0.25) && !nodes.is_empty() {
                // occasional re-derivation of an existing node
                let pick = nodes[rng.gen_range(0..nodes.len())];
                conclusions.push(Conclusion::literal(g.node(pick).literal.clone()));
            } else {
                counter += 1;
                conclusions.push(Conclusion::literal(fresh_lit(counter)));
            }
        }
        if let Ok(_e) = g.add_step(&premises, &format!("R{}", t), conclusions) {
            let nodes_now: Vec<NodeId> = g.node_ids().collect();
            last_new = Some(*nodes_now.last().unwrap());
        }
    }
    let goal = last_new
        .unwrap_or_else(|| g.node_ids().filter(|&n| n != g.start()).last().unwrap());
    (g, goal)
}

/// Does this edge subset derive the goal by forward closure from start?
fn derives(g: &ProofHypergraph, subset: u64, goal: NodeId) -> bool {
    let mut known = vec![false; g.node_count()];
    known[g.start().0 as usize] = true;
    loop {
        let mut grew = false;
        for e in g.edge_ids() {
            if subset & (1u64 << e.0) == 0 {
                continue;
            }
            let edge = g.edge(e);
            if edge.premises.iter().all(|p| known[p.0 as usize]) {
                for c in &edge.conclusions {
                    if !known[c.0 as usize] {
                        known[c.0 as usize] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    known[goal.0 as usize]
}

/// Exhaustive minimum edge count over all 2^|E| supports of the goal.
pub fn brute_force_minimum(g: &ProofHypergraph, goal: NodeId) -> Option<usize> {
    let m = g.edge_count();
    assert!(m <= 20, "oracle is exponential");
    let mut best: Option<usize> = None;
    for subset in 0..(1u64 << m) {
        let size = subset.count_ones() as usize;
        if best.map(|b| size >= b).unwrap_or(false) {
            continue;
        }
        if derives(g, subset, goal) {
            best = Some(size);
        }
    }
    best
}
