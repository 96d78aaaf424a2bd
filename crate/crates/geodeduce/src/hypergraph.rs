//! The directed acyclic proof hypergraph.
//!
//! Nodes are canonical literals; hyperedges are syllogistic steps
//! `premises --theorem--> conclusions`. The distinguished `start` node is
//! connected to every initially known literal by the single "Known Facts"
//! edge. Predecessor closures are maintained incrementally so that a step
//! concluding an ancestor of its own premises is rejected, keeping the
//! graph acyclic by construction.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::algebra::Equation;
use crate::formal_lang::{node_key, print_literal, Literal};

pub const KNOWN_FACTS: &str = "Known Facts";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

#[derive(Debug, Clone)]
pub struct NodeData {
    pub key: String,
    pub literal: Literal,
    /// Algebraic reading, for equation nodes.
    pub equation: Option<Equation>,
}

#[derive(Debug, Clone)]
pub struct Hyperedge {
    pub theorem: String,
    pub premises: BTreeSet<NodeId>,
    pub conclusions: BTreeSet<NodeId>,
}

/// A literal to be concluded by a step, with its optional equation reading.
#[derive(Debug, Clone)]
pub struct Conclusion {
    pub literal: Literal,
    pub equation: Option<Equation>,
}

impl Conclusion {
    pub fn literal(lit: Literal) -> Conclusion {
        Conclusion { literal: lit, equation: None }
    }

    pub fn equation(lit: Literal, eq: Equation) -> Conclusion {
        Conclusion { literal: lit, equation: Some(eq) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejected {
    /// Some conclusion is an ancestor of a premise; wiring it would cycle.
    Cycle,
    /// The identical step (premises, theorem, conclusions) is already there.
    Redundant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    EmptyFacts,
    Unreachable,
}

impl std::fmt::Display for GraphError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphError::EmptyFacts => write!(f, "cannot build a graph from no known facts"),
            GraphError::Unreachable => write!(f, "goal node is not reachable from start"),
        }
    }
}

impl std::error::Error for GraphError {}

#[derive(Debug)]
pub struct ProofHypergraph {
    nodes: Vec<NodeData>,
    by_key: HashMap<String, NodeId>,
    edges: Vec<Hyperedge>,
    edge_sigs: HashSet<String>,
    /// Ancestor closure per node (excluding the node itself).
    preds: Vec<BTreeSet<NodeId>>,
    start: NodeId,
}

impl ProofHypergraph {
    /// Build the initial graph: `start`, one node per canonical literal, and
    /// the single Known Facts edge.
    pub fn init(known: Vec<Conclusion>) -> Result<ProofHypergraph, GraphError> {
        if known.is_empty() {
            return Err(GraphError::EmptyFacts);
        }
        let start_lit = Literal::new("Start", vec![]);
        let mut g = ProofHypergraph {
            nodes: vec![NodeData { key: "start".to_string(), literal: start_lit, equation: None }],
            by_key: HashMap::new(),
            edges: Vec::new(),
            edge_sigs: HashSet::new(),
            preds: vec![BTreeSet::new()],
            start: NodeId(0),
        };
        g.by_key.insert("start".to_string(), NodeId(0));
        let mut conclusions = BTreeSet::new();
        for c in known {
            let id = g.intern(c);
            if id != g.start {
                conclusions.insert(id);
            }
        }
        if conclusions.is_empty() {
            return Err(GraphError::EmptyFacts);
        }
        let mut premises = BTreeSet::new();
        premises.insert(g.start);
        for &n in &conclusions {
            g.preds[n.0 as usize].insert(g.start);
        }
        g.edges.push(Hyperedge {
            theorem: KNOWN_FACTS.to_string(),
            premises,
            conclusions,
        });
        Ok(g)
    }

    fn intern(&mut self, c: Conclusion) -> NodeId {
        let key = node_key(&c.literal);
        if let Some(&id) = self.by_key.get(&key) {
            return id;
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(NodeData {
            key: key.clone(),
            literal: crate::formal_lang::canonicalize(&c.literal),
            equation: c.equation,
        });
        self.preds.push(BTreeSet::new());
        self.by_key.insert(key, id);
        id
    }

    pub fn start(&self) -> NodeId {
        self.start
    }

    pub fn node(&self, id: NodeId) -> &NodeData {
        &self.nodes[id.0 as usize]
    }

    pub fn edge(&self, id: EdgeId) -> &Hyperedge {
        &self.edges[id.0 as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(|i| NodeId(i as u32))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(|i| EdgeId(i as u32))
    }

    pub fn lookup(&self, lit: &Literal) -> Option<NodeId> {
        self.by_key.get(&node_key(lit)).copied()
    }

    pub fn lookup_key(&self, key: &str) -> Option<NodeId> {
        self.by_key.get(key).copied()
    }

    pub fn ancestors(&self, id: NodeId) -> &BTreeSet<NodeId> {
        &self.preds[id.0 as usize]
    }

    /// Insert a syllogistic step. Conclusions already identical to a premise
    /// are dropped; conclusions that are ancestors of any premise are not
    /// wired (they would create a cycle). The edge is inserted only when at
    /// least one conclusion remains.
    pub fn add_step(
        &mut self,
        premises: &[NodeId],
        theorem: &str,
        conclusions: Vec<Conclusion>,
    ) -> Result<EdgeId, Rejected> {
        assert!(!premises.is_empty(), "a step needs at least one premise");
        for p in premises {
            assert!((p.0 as usize) < self.nodes.len(), "premise node must exist");
        }
        let premise_set: BTreeSet<NodeId> = premises.iter().copied().collect();

        // Union of premise ancestries, plus the premises themselves.
        let mut ancestry: BTreeSet<NodeId> = premise_set.clone();
        for p in &premise_set {
            ancestry.extend(self.preds[p.0 as usize].iter().copied());
        }

        let mut wired: BTreeSet<NodeId> = BTreeSet::new();
        let mut saw_ancestral = false;
        let mut fresh: Vec<Conclusion> = Vec::new();
        for c in conclusions {
            let key = node_key(&c.literal);
            match self.by_key.get(&key) {
                Some(&existing) => {
                    if premise_set.contains(&existing) {
                        continue;
                    }
                    if ancestry.contains(&existing) {
                        saw_ancestral = true;
                        continue;
                    }
                    wired.insert(existing);
                }
                None => fresh.push(c),
            }
        }
        if wired.is_empty() && fresh.is_empty() {
            return Err(if saw_ancestral { Rejected::Cycle } else { Rejected::Redundant });
        }
        for c in fresh {
            let id = self.intern(c);
            wired.insert(id);
        }

        let sig = format!(
            "{}|{:?}|{:?}",
            theorem,
            premise_set.iter().map(|p| p.0).collect::<Vec<_>>(),
            wired.iter().map(|c| c.0).collect::<Vec<_>>()
        );
        if !self.edge_sigs.insert(sig) {
            return Err(Rejected::Redundant);
        }

        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Hyperedge {
            theorem: theorem.to_string(),
            premises: premise_set,
            conclusions: wired.clone(),
        });

        // Update ancestor closures of the conclusions and everything below.
        let mut dirty: Vec<NodeId> = wired.into_iter().collect();
        while let Some(n) = dirty.pop() {
            let mut grew = false;
            for e in &self.edges {
                if e.conclusions.contains(&n) {
                    for p in &e.premises {
                        if self.preds[n.0 as usize].insert(*p) {
                            grew = true;
                        }
                        let pp: Vec<NodeId> = self.preds[p.0 as usize].iter().copied().collect();
                        for a in pp {
                            if self.preds[n.0 as usize].insert(a) {
                                grew = true;
                            }
                        }
                    }
                }
            }
            if grew {
                for e in &self.edges {
                    if e.premises.contains(&n) {
                        dirty.extend(e.conclusions.iter().copied());
                    }
                }
            }
        }

        debug_assert!(self
            .node_ids()
            .all(|n| !self.preds[n.0 as usize].contains(&n)));
        Ok(id)
    }

    /// Edges concluding a given node.
    pub fn producers(&self, node: NodeId) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.edges[e.0 as usize].conclusions.contains(&node)).collect()
    }
}

// ---------------------------------------------------------------------------
// Minimal sub-hypergraph extraction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MinimalSubgraph {
    /// Kept edges, minimal in cardinality among all supports of the goal.
    pub edges: Vec<EdgeId>,
    pub goal: NodeId,
    /// Per kept edge: conclusions that feed later kept edges or the goal.
    /// The remaining conclusions stay in edge metadata but are pruned from
    /// rendering, which enforces the single-sink shape.
    pub rendered_conclusions: BTreeMap<EdgeId, Vec<NodeId>>,
    /// True when the per-node candidate beam overflowed (result may then be
    /// a non-certified minimum).
    pub beam_bound: bool,
}

/// Support-set DP: for each node keep up to `beam` minimal candidate edge
/// sets (union semantics, so shared sub-derivations are not double counted),
/// iterated to fixpoint. Exact at desk scale; the beam guards blowup.
pub fn find_minimal_subgraph(
    g: &ProofHypergraph,
    goal: NodeId,
    beam: usize,
) -> Result<MinimalSubgraph, GraphError> {
    let n = g.node_count();
    let mut supports: Vec<Vec<BTreeSet<EdgeId>>> = vec![Vec::new(); n];
    supports[g.start().0 as usize].push(BTreeSet::new());
    let mut beam_bound = false;

    let better = |a: &BTreeSet<EdgeId>, b: &BTreeSet<EdgeId>| {
        a.len().cmp(&b.len()).then_with(|| a.cmp(b))
    };

    loop {
        let mut changed = false;
        for eid in g.edge_ids() {
            let e = g.edge(eid);
            // Candidate supports for the premises, combined by union.
            let mut combos: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new()];
            let mut feasible = true;
            for p in &e.premises {
                let opts = &supports[p.0 as usize];
                if opts.is_empty() {
                    feasible = false;
                    break;
                }
                let mut next: Vec<BTreeSet<EdgeId>> = Vec::new();
                for c in &combos {
                    for o in opts {
                        let mut u = c.clone();
                        u.extend(o.iter().copied());
                        if !next.contains(&u) {
                            next.push(u);
                        }
                    }
                }
                next.sort_by(|a, b| better(a, b));
                if next.len() > beam * 4 {
                    next.truncate(beam * 4);
                }
                combos = next;
            }
            if !feasible {
                continue;
            }
            for c in &mut combos {
                c.insert(eid);
            }
            for node in &e.conclusions {
                let slot = &mut supports[node.0 as usize];
                let before = slot.clone();
                for c in &combos {
                    if slot.iter().any(|s| s.is_subset(c)) {
                        continue; // dominated by (or equal to) an existing one
                    }
                    slot.retain(|s| !(c.is_subset(s) && c.len() < s.len()));
                    slot.push(c.clone());
                }
                slot.sort_by(|a, b| better(a, b));
                slot.dedup();
                if slot.len() > beam {
                    slot.truncate(beam);
                    beam_bound = true;
                }
                if *slot != before {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let best = supports[goal.0 as usize].first().cloned().ok_or(GraphError::Unreachable)?;
    let edges: Vec<EdgeId> = best.into_iter().collect();

    // Used-downstream pruning for the rendered view.
    let kept: BTreeSet<EdgeId> = edges.iter().copied().collect();
    let mut used: BTreeSet<NodeId> = BTreeSet::new();
    used.insert(goal);
    for &e in &kept {
        used.extend(g.edge(e).premises.iter().copied());
    }
    let mut rendered = BTreeMap::new();
    for &e in &kept {
        let list: Vec<NodeId> =
            g.edge(e).conclusions.iter().copied().filter(|c| used.contains(c)).collect();
        rendered.insert(e, list);
    }

    Ok(MinimalSubgraph { edges, goal, rendered_conclusions: rendered, beam_bound })
}

/// Order the kept edges so every edge follows all edges concluding any of its
/// premises; ties broken by (theorem, canonical premise strings).
pub fn topological_order(g: &ProofHypergraph, sub: &MinimalSubgraph) -> Vec<EdgeId> {
    let mut remaining: Vec<EdgeId> = sub.edges.clone();
    let mut established: BTreeSet<NodeId> = BTreeSet::new();
    established.insert(g.start());
    let mut out = Vec::new();

    let tie_key = |e: EdgeId| {
        let edge = g.edge(e);
        let prem: Vec<String> =
            edge.premises.iter().map(|p| print_literal(&g.node(*p).literal)).collect();
        (edge.theorem.clone(), prem.join(";"))
    };

    while !remaining.is_empty() {
        let mut ready: Vec<EdgeId> = remaining
            .iter()
            .copied()
            .filter(|&e| g.edge(e).premises.iter().all(|p| established.contains(p)))
            .collect();
        assert!(!ready.is_empty(), "kept subgraph must be well supported");
        ready.sort_by_key(|&e| tie_key(e));
        let chosen = ready[0];
        remaining.retain(|&e| e != chosen);
        established.extend(g.edge(chosen).conclusions.iter().copied());
        out.push(chosen);
    }
    out
}

// ---------------------------------------------------------------------------
// JSON dump (for rendering hypergraph figures)
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct DumpNode {
    id: u32,
    literal: String,
}

#[derive(Serialize)]
struct DumpEdge {
    theorem: String,
    premises: Vec<u32>,
    conclusions: Vec<u32>,
}

#[derive(Serialize)]
struct Dump {
    nodes: Vec<DumpNode>,
    edges: Vec<DumpEdge>,
}

/// Deterministic JSON rendering of the whole graph.
pub fn dump_json(g: &ProofHypergraph) -> String {
    let dump = Dump {
        nodes: g
            .node_ids()
            .map(|n| DumpNode { id: n.0, literal: print_literal(&g.node(n).literal) })
            .collect(),
        edges: g
            .edge_ids()
            .map(|e| {
                let edge = g.edge(e);
                DumpEdge {
                    theorem: edge.theorem.clone(),
                    premises: edge.premises.iter().map(|p| p.0).collect(),
                    conclusions: edge.conclusions.iter().map(|c| c.0).collect(),
                }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dump).expect("graph dump serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_lang::parse_literal;

    fn lit(s: &str) -> Conclusion {
        Conclusion::literal(parse_literal(s).unwrap())
    }

    fn known(names: &[&str]) -> ProofHypergraph {
        ProofHypergraph::init(names.iter().map(|s| lit(s)).collect()).unwrap()
    }

    #[test]
    fn init_counts() {
        let g = known(&["Line(A,B)"]);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        // duplicates collapse
        let g = known(&["Line(A,B)", "Line(B,A)", "Triangle(A,B,C)"]);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn init_empty_rejected() {
        assert!(matches!(ProofHypergraph::init(vec![]), Err(GraphError::EmptyFacts)));
    }

    #[test]
    fn add_step_and_redundancy() {
        let mut g = known(&["Triangle(A,B,C)", "Perpendicular(Line(A,B),Line(A,C))"]);
        let t = g.lookup(&parse_literal("Triangle(A,B,C)").unwrap()).unwrap();
        let p = g.lookup(&parse_literal("Perpendicular(Line(A,B),Line(A,C))").unwrap()).unwrap();
        let concl = lit("Equals(Add(Pow(LengthOf(Line(A,B)),2),Pow(LengthOf(Line(A,C)),2)),Pow(LengthOf(Line(B,C)),2))");
        let e = g.add_step(&[t, p], "Pythagorean Theorem", vec![concl.clone()]);
        assert!(e.is_ok());
        let again = g.add_step(&[t, p], "Pythagorean Theorem", vec![concl]);
        assert_eq!(again, Err(Rejected::Redundant));
    }

    #[test]
    fn cycle_rejected() {
        let mut g = known(&["Line(A,B)"]);
        let a = g.lookup(&parse_literal("Line(A,B)").unwrap()).unwrap();
        let e1 = g
            .add_step(&[a], "T1", vec![lit("Line(C,D)")])
            .unwrap();
        let cd = g.lookup(&parse_literal("Line(C,D)").unwrap()).unwrap();
        // Concluding an ancestor of the premise is a cycle.
        let r = g.add_step(&[cd], "T2", vec![lit("Line(A,B)")]);
        assert_eq!(r, Err(Rejected::Cycle));
        let _ = e1;
    }

    #[test]
    fn minimal_subgraph_zero_inference() {
        let g = known(&["Line(A,B)", "Line(C,D)"]);
        let goal = g.lookup(&parse_literal("Line(A,B)").unwrap()).unwrap();
        let sub = find_minimal_subgraph(&g, goal, 8).unwrap();
        assert_eq!(sub.edges.len(), 1);
        assert_eq!(g.edge(sub.edges[0]).theorem, KNOWN_FACTS);
    }

    #[test]
    fn minimal_subgraph_prefers_short_route() {
        let mut g = known(&["Line(A,B)"]);
        let a = g.lookup(&parse_literal("Line(A,B)").unwrap()).unwrap();
        // Long route: A -> X -> G ; short route: A -> G
        g.add_step(&[a], "Long1", vec![lit("Line(C,D)")]).unwrap();
        let x = g.lookup(&parse_literal("Line(C,D)").unwrap()).unwrap();
        g.add_step(&[x], "Long2", vec![lit("Line(E,F)")]).unwrap();
        g.add_step(&[a], "Short", vec![lit("Line(E,F)")]).unwrap();
        let goal = g.lookup(&parse_literal("Line(E,F)").unwrap()).unwrap();
        let sub = find_minimal_subgraph(&g, goal, 8).unwrap();
        assert_eq!(sub.edges.len(), 2);
        let labels: Vec<&str> =
            sub.edges.iter().map(|&e| g.edge(e).theorem.as_str()).collect();
        assert!(labels.contains(&"Short"));
    }

    #[test]
    fn shared_premise_counted_once() {
        // Two needs met by one shared edge: union cost 3, not 4.
        let mut g = known(&["Line(A,B)"]);
        let a = g.lookup(&parse_literal("Line(A,B)").unwrap()).unwrap();
        g.add_step(&[a], "Shared", vec![lit("Line(S,T)")]).unwrap();
        let s = g.lookup(&parse_literal("Line(S,T)").unwrap()).unwrap();
        g.add_step(&[s], "MakeU", vec![lit("Line(U,V)")]).unwrap();
        g.add_step(&[s], "MakeW", vec![lit("Line(W,X)")]).unwrap();
        let u = g.lookup(&parse_literal("Line(U,V)").unwrap()).unwrap();
        let w = g.lookup(&parse_literal("Line(W,X)").unwrap()).unwrap();
        g.add_step(&[u, w], "Join", vec![lit("Line(Y,Z)")]).unwrap();
        let goal = g.lookup(&parse_literal("Line(Y,Z)").unwrap()).unwrap();
        let sub = find_minimal_subgraph(&g, goal, 8).unwrap();
        assert_eq!(sub.edges.len(), 5); // KF + Shared + MakeU + MakeW + Join
    }

    #[test]
    fn topological_order_respects_dependencies() {
        let mut g = known(&["Line(A,B)"]);
        let a = g.lookup(&parse_literal("Line(A,B)").unwrap()).unwrap();
        g.add_step(&[a], "T1", vec![lit("Line(C,D)")]).unwrap();
        let c = g.lookup(&parse_literal("Line(C,D)").unwrap()).unwrap();
        g.add_step(&[c], "T2", vec![lit("Line(E,F)")]).unwrap();
        let goal = g.lookup(&parse_literal("Line(E,F)").unwrap()).unwrap();
        let sub = find_minimal_subgraph(&g, goal, 8).unwrap();
        let order = topological_order(&g, &sub);
        let names: Vec<&str> = order.iter().map(|&e| g.edge(e).theorem.as_str()).collect();
        assert_eq!(names, vec![KNOWN_FACTS, "T1", "T2"]);
    }

    #[test]
    fn dump_is_deterministic() {
        let g = known(&["Line(A,B)", "Triangle(A,B,C)"]);
        assert_eq!(dump_json(&g), dump_json(&g));
        assert!(dump_json(&g).contains("Known Facts"));
    }
}
