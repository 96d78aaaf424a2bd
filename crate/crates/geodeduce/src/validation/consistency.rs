//! Structural consistency checks over the sketch.

use std::collections::BTreeSet;

use super::sketch::GeometrySketch;
use crate::formal_lang::{print_literal, Literal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contradiction {
    pub literals: Vec<Literal>,
    pub message: String,
}

fn conflict(a: &Literal, b: &Literal) -> Contradiction {
    Contradiction {
        literals: vec![a.clone(), b.clone()],
        message: format!("{} conflicts with {}", print_literal(a), print_literal(b)),
    }
}

fn degenerate(a: &Literal, why: &str) -> Contradiction {
    Contradiction {
        literals: vec![a.clone()],
        message: format!("{} is degenerate: {}", print_literal(a), why),
    }
}

/// All structural violations found in the sketch.
pub fn check_consistency(sketch: &GeometrySketch) -> Vec<Contradiction> {
    let mut out: Vec<Contradiction> = Vec::new();

    // Chains whose betweenness facts admit no linear order.
    for witnesses in &sketch.order_conflicts {
        if let Some(first) = witnesses.first() {
            let mut c = Contradiction {
                literals: witnesses.clone(),
                message: format!(
                    "betweenness facts starting at {} admit no consistent order",
                    print_literal(first)
                ),
            };
            if witnesses.len() == 2 {
                c.message = format!(
                    "{} conflicts with {}",
                    print_literal(&witnesses[0]),
                    print_literal(&witnesses[1])
                );
            }
            out.push(c);
        }
    }

    // Degenerate figure declarations.
    for pg in &sketch.polygons {
        let distinct: BTreeSet<&String> = pg.vertices.iter().collect();
        if distinct.len() != pg.vertices.len() {
            out.push(degenerate(&pg.literal, "repeated vertex"));
        }
    }
    for rel in &sketch.relations {
        match rel.pred.as_str() {
            "PointLiesOnLine" => {
                if let (Some(x), Some(l)) = (rel.args[0].as_id(), rel.args[1].as_lit()) {
                    if x == l.point(0) || x == l.point(1) {
                        out.push(degenerate(rel, "the point is an endpoint of the segment"));
                    }
                }
            }
            "IsMidpointOf" => {
                if let (Some(m), Some(l)) = (rel.args[0].as_id(), rel.args[1].as_lit()) {
                    if m == l.point(0) || m == l.point(1) {
                        out.push(degenerate(rel, "a midpoint cannot be an endpoint"));
                    }
                }
            }
            "PointLiesOnCircle" => {
                if let (Some(p), Some(c)) = (rel.args[0].as_id(), rel.args[1].as_lit()) {
                    if p == c.point(0) {
                        out.push(degenerate(rel, "the center cannot lie on its own circle"));
                    }
                }
            }
            _ => {}
        }
    }

    // Polygon vertices forced collinear by asserted facts.
    for pg in &sketch.polygons {
        let vs = &pg.vertices;
        let n = vs.len();
        if n < 3 {
            continue;
        }
        let triples: Vec<[&String; 3]> = if n == 3 {
            vec![[&vs[0], &vs[1], &vs[2]]]
        } else {
            (0..n).map(|i| [&vs[i], &vs[(i + 1) % n], &vs[(i + 2) % n]]).collect()
        };
        for t in triples {
            if sketch.collinear(t[0], t[1], t[2]) {
                if let Some(w) = collinearity_witness(sketch, t[0], t[1], t[2]) {
                    out.push(conflict(&pg.literal, &w));
                } else {
                    out.push(degenerate(&pg.literal, "vertices are collinear"));
                }
                break;
            }
        }
    }

    // Parallel lines sharing a point must coincide, but their chains differ.
    for rel in &sketch.relations {
        if rel.pred != "Parallel" {
            continue;
        }
        let (Some(l1), Some(l2)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else { continue };
        let pts1: BTreeSet<&str> = chain_points(sketch, l1);
        let pts2: BTreeSet<&str> = chain_points(sketch, l2);
        if pts1.intersection(&pts2).next().is_some() {
            out.push(degenerate(rel, "the two lines share a point"));
        }
    }

    // Perpendicular needs two genuinely distinct lines.
    for rel in &sketch.relations {
        if rel.pred != "Perpendicular" {
            continue;
        }
        let (Some(l1), Some(l2)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else { continue };
        let all4 = [l1.point(0), l1.point(1), l2.point(0), l2.point(1)];
        let merged = sketch
            .chains
            .iter()
            .any(|c| all4.iter().all(|p| c.contains(&p.to_string())));
        if merged {
            if let Some(w) = collinearity_witness(sketch, all4[0], all4[1], all4[2]) {
                out.push(conflict(rel, &w));
            } else {
                out.push(degenerate(rel, "both segments lie on one line"));
            }
        }
    }

    out.sort_by(|a, b| a.message.cmp(&b.message));
    out.dedup_by(|a, b| a.message == b.message);
    out
}

fn chain_points<'a>(sketch: &'a GeometrySketch, line: &Literal) -> BTreeSet<&'a str> {
    match sketch.chain_through(line.point(0), line.point(1)) {
        Some(chain) => chain.iter().map(String::as_str).collect(),
        None => BTreeSet::new(),
    }
}

/// A betweenness witness literal whose points all belong to the given triple.
fn collinearity_witness(
    sketch: &GeometrySketch,
    a: &str,
    b: &str,
    c: &str,
) -> Option<Literal> {
    let set: BTreeSet<&str> = [a, b, c].into_iter().collect();
    for bw in &sketch.betweenness {
        let pts: BTreeSet<&str> =
            [bw.ends.0.as_str(), bw.ends.1.as_str(), bw.mid.as_str()].into_iter().collect();
        if pts.is_subset(&set) {
            return Some(bw.witness.clone());
        }
    }
    for rel in &sketch.relations {
        if rel.pred == "Collinear" {
            let pts: BTreeSet<&str> =
                rel.args.iter().filter_map(|x| x.as_id()).collect();
            if pts.is_subset(&set) && pts.len() >= 3 {
                return Some(rel.clone());
            }
        }
    }
    None
}
