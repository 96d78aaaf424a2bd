//! The theorem set: declarative pattern rules matched against the node set,
//! and the deductive-reasoning pass that turns matches into hyperedges.

mod rules_circles;
mod rules_lines;
mod rules_polygons;
mod rules_similar;
mod rules_triangles;

use std::collections::BTreeMap;

use crate::algebra::{Equation, Expr, SymbolTable};
use crate::formal_lang::{canonical_string, canonicalize, Arg, Literal};
use crate::hypergraph::{Conclusion, NodeId, ProofHypergraph, Rejected};
use crate::validation::GeometrySketch;

/// One way a rule fires: premise nodes and the conclusions they yield.
#[derive(Debug, Clone)]
pub struct RuleMatch {
    pub premises: Vec<NodeId>,
    pub conclusions: Vec<Conclusion>,
}

type Matcher = fn(&MatchCtx) -> Vec<RuleMatch>;

/// A theorem: a named, documented pattern over known literals.
pub struct TheoremRule {
    pub name: &'static str,
    /// Textbook statement, printed by `list-theorems`.
    pub statement: &'static str,
    matcher: Matcher,
}

impl TheoremRule {
    /// All guard-satisfying instantiations against the current node set.
    pub fn match_rule(&self, ctx: &MatchCtx) -> Vec<RuleMatch> {
        let mut ms = (self.matcher)(ctx);
        for m in &mut ms {
            m.premises.sort();
            m.premises.dedup();
        }
        ms
    }
}

/// Read-only view the matchers work against.
pub struct MatchCtx<'a> {
    pub graph: &'a ProofHypergraph,
    pub sketch: &'a GeometrySketch,
    pub symbols: &'a SymbolTable,
    by_pred: BTreeMap<&'a str, Vec<NodeId>>,
    /// var = var equalities between two angle measures, for similarity.
    angle_equalities: Vec<(NodeId, [String; 3], [String; 3])>,
    equations: Vec<(NodeId, Equation)>,
}

impl<'a> MatchCtx<'a> {
    pub fn new(
        graph: &'a ProofHypergraph,
        sketch: &'a GeometrySketch,
        symbols: &'a SymbolTable,
    ) -> MatchCtx<'a> {
        let mut by_pred: BTreeMap<&str, Vec<NodeId>> = BTreeMap::new();
        let mut angle_equalities = Vec::new();
        let mut equations = Vec::new();
        for n in graph.node_ids() {
            let data = graph.node(n);
            by_pred.entry(data.literal.pred.as_str()).or_default().push(n);
            if let Some(eq) = &data.equation {
                equations.push((n, eq.clone()));
                if let Some(pair) = angle_pair(eq, symbols) {
                    angle_equalities.push((n, pair.0, pair.1));
                }
            }
        }
        MatchCtx { graph, sketch, symbols, by_pred, angle_equalities, equations }
    }

    pub fn nodes(&self, pred: &str) -> &[NodeId] {
        self.by_pred.get(pred).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn literal(&self, n: NodeId) -> &Literal {
        &self.graph.node(n).literal
    }

    pub fn equations(&self) -> &[(NodeId, Equation)] {
        &self.equations
    }

    pub fn angle_equalities(&self) -> &[(NodeId, [String; 3], [String; 3])] {
        &self.angle_equalities
    }

    /// Node asserting the same mathematical content (by folded residual).
    pub fn find_equation(&self, target: &Equation) -> Option<NodeId> {
        let key = target.residual_key();
        self.equations.iter().find(|(_, e)| e.residual_key() == key).map(|(n, _)| *n)
    }

    /// Is this quantity mentioned anywhere in the problem (facts or goal)?
    pub fn referenced(&self, quantity: &Literal) -> bool {
        let norm = crate::validation::normalize_circle_args(&canonicalize(quantity));
        self.sketch.quantity_refs.contains(&canonical_string(&norm))
    }

    /// Some fact node mentioning the circle centered at `center`.
    pub fn circle_anchor(&self, center: &str) -> Option<NodeId> {
        self.graph
            .node_ids()
            .find(|&n| literal_mentions_circle(&self.graph.node(n).literal, center))
    }

    // Quantity-variable helpers.

    pub fn len_var(&self, a: &str, b: &str) -> Expr {
        let lit = Literal::new(
            "LengthOf",
            vec![Arg::lit(Literal::points("Line", &[a, b]))],
        );
        Expr::Var(self.symbols.quantity(&lit))
    }

    pub fn angle_var(&self, a: &str, v: &str, b: &str) -> Expr {
        let lit = Literal::new(
            "MeasureOf",
            vec![Arg::lit(Literal::points("Angle", &[a, v, b]))],
        );
        Expr::Var(self.symbols.quantity(&lit))
    }

    pub fn arc_var(&self, a: &str, b: &str) -> Expr {
        let lit =
            Literal::new("MeasureOf", vec![Arg::lit(Literal::points("Arc", &[a, b]))]);
        Expr::Var(self.symbols.quantity(&lit))
    }

    pub fn quantity_var(&self, pred: &str, of: Literal) -> Expr {
        Expr::Var(self.symbols.quantity(&Literal::new(pred, vec![Arg::lit(of)])))
    }

    pub fn radius_var(&self, center: &str) -> Expr {
        self.quantity_var("RadiusOf", Literal::points("Circle", &[center]))
    }

    /// Equation conclusion with its literal form.
    pub fn eq_concl(&self, lhs: Expr, rhs: Expr) -> Conclusion {
        let eq = Equation::new(lhs, rhs);
        let lit = eq.to_literal(self.symbols);
        Conclusion::equation(lit, eq)
    }

    /// var = var equality, operands ordered by display for determinism.
    pub fn var_eq_concl(&self, a: Expr, b: Expr) -> Conclusion {
        let (a, b) = match (&a, &b) {
            (Expr::Var(x), Expr::Var(y)) => {
                if self.symbols.display(*x) <= self.symbols.display(*y) {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            }
            _ => (a.clone(), b.clone()),
        };
        self.eq_concl(a, b)
    }
}

fn literal_mentions_circle(lit: &Literal, center: &str) -> bool {
    if lit.pred == "Circle" && lit.point(0) == center {
        return true;
    }
    lit.args.iter().any(|a| match a {
        Arg::Lit(inner) => literal_mentions_circle(inner, center),
        _ => false,
    })
}

/// Read an equation as `m∠X = m∠Y`, returning the two angle point triples.
fn angle_pair(
    eq: &Equation,
    symbols: &SymbolTable,
) -> Option<([String; 3], [String; 3])> {
    let angle_of = |e: &Expr| -> Option<[String; 3]> {
        let Expr::Var(v) = e else { return None };
        let info = symbols.info(*v);
        let origin = info.origin?;
        if origin.pred != "MeasureOf" {
            return None;
        }
        let angle = origin.args[0].as_lit()?;
        if angle.pred != "Angle" || angle.args.len() != 3 {
            return None;
        }
        Some([
            angle.point(0).to_string(),
            angle.point(1).to_string(),
            angle.point(2).to_string(),
        ])
    };
    Some((angle_of(&eq.lhs)?, angle_of(&eq.rhs)?))
}

/// The compiled-in theorem registry. Names are unique.
pub fn registry() -> Vec<TheoremRule> {
    let mut rules = Vec::new();
    rules_lines::register(&mut rules);
    rules_triangles::register(&mut rules);
    rules_similar::register(&mut rules);
    rules_polygons::register(&mut rules);
    rules_circles::register(&mut rules);
    debug_assert!({
        let mut names: Vec<&str> = rules.iter().map(|r| r.name).collect();
        let before = names.len();
        names.sort();
        names.dedup();
        names.len() == before
    });
    rules
}

pub(crate) fn rule(name: &'static str, statement: &'static str, matcher: Matcher) -> TheoremRule {
    TheoremRule { name, statement, matcher }
}

/// One deductive-reasoning pass: match every rule against the node set and
/// insert the resulting hyperedges, sweeping until nothing new appears.
/// Returns the number of edges added.
pub fn deductive_pass(
    graph: &mut ProofHypergraph,
    sketch: &GeometrySketch,
    symbols: &SymbolTable,
    rules: &[TheoremRule],
) -> usize {
    let mut added = 0usize;
    loop {
        let mut this_sweep = 0usize;
        let matches: Vec<(usize, RuleMatch)> = {
            let ctx = MatchCtx::new(graph, sketch, symbols);
            let mut out = Vec::new();
            for (i, r) in rules.iter().enumerate() {
                for m in r.match_rule(&ctx) {
                    out.push((i, m));
                }
            }
            out
        };
        for (i, m) in matches {
            match graph.add_step(&m.premises, rules[i].name, m.conclusions) {
                Ok(_) => {
                    added += 1;
                    this_sweep += 1;
                }
                Err(Rejected::Cycle) | Err(Rejected::Redundant) => {}
            }
        }
        if this_sweep == 0 {
            break;
        }
    }
    added
}
