//! Similarity and congruence: recognition rules and their definitional
//! consequences (corresponding parts, similarity ratios).

use std::collections::BTreeMap;

use super::{rule, MatchCtx, RuleMatch, TheoremRule};
use crate::algebra::{Equation, Expr};
use crate::formal_lang::{Arg, Literal};
use crate::hypergraph::{Conclusion, NodeId};

pub fn register(rules: &mut Vec<TheoremRule>) {
    rules.push(rule(
        "Angle-Angle Similarity Theorem",
        "Triangles with three pairwise equal corresponding angles are similar.",
        aa_similarity,
    ));
    rules.push(rule(
        "Side-Angle-Side Similarity",
        "Triangles with one equal angle between proportional sides are similar.",
        sas_similarity,
    ));
    rules.push(rule(
        "Side-Side-Side Similarity",
        "Triangles with all three side pairs proportional are similar.",
        sss_similarity,
    ));
    rules.push(rule(
        "Similar Definition",
        "Similar figures have equal corresponding angles and one common \
         side ratio.",
        similar_definition,
    ));
    rules.push(rule(
        "Congruent Definition",
        "Congruent figures have equal corresponding sides and angles.",
        congruent_definition,
    ));
    rules.push(rule(
        "Side-Angle-Side Congruence",
        "Triangles with two equal sides and an equal included angle are congruent.",
        sas_congruence,
    ));
    rules.push(rule(
        "Angle-Side-Angle Congruence",
        "Triangles with two equal angles and the equal included side are congruent.",
        asa_congruence,
    ));
    rules.push(rule(
        "Side-Side-Side Congruence",
        "Triangles with three equal side pairs are congruent.",
        sss_congruence,
    ));
}

/// Correspondence candidate assembled from angle-equality nodes.
struct AngleLink {
    node: NodeId,
    v1: String,
    arms1: [String; 2],
    v2: String,
    arms2: [String; 2],
}

/// Interpret each `m∠X = m∠Y` node as linking a vertex of triangle set `t1`
/// to a vertex of `t2`.
fn links_for_pair(
    ctx: &MatchCtx,
    t1: &[String; 3],
    t2: &[String; 3],
) -> Vec<AngleLink> {
    let mut out = Vec::new();
    for (node, x, y) in ctx.angle_equalities() {
        let tri_of = |a: &[String; 3]| {
            let mut s = a.to_vec();
            s.sort();
            s
        };
        let (sx, sy) = (tri_of(x), tri_of(y));
        let (s1, s2) = (t1.to_vec(), t2.to_vec());
        if sx == s1 && sy == s2 {
            out.push(AngleLink {
                node: *node,
                v1: x[1].clone(),
                arms1: [x[0].clone(), x[2].clone()],
                v2: y[1].clone(),
                arms2: [y[0].clone(), y[2].clone()],
            });
        } else if sx == s2 && sy == s1 {
            out.push(AngleLink {
                node: *node,
                v1: y[1].clone(),
                arms1: [y[0].clone(), y[2].clone()],
                v2: x[1].clone(),
                arms2: [x[0].clone(), x[2].clone()],
            });
        }
    }
    out
}

/// All sorted triangle-vertex triples that appear in angle equalities.
fn candidate_pairs(ctx: &MatchCtx) -> Vec<([String; 3], [String; 3])> {
    let mut pairs: Vec<([String; 3], [String; 3])> = Vec::new();
    for (_, x, y) in ctx.angle_equalities() {
        let mut a = x.clone();
        a.sort();
        let mut b = y.clone();
        b.sort();
        if a == b {
            continue;
        }
        if a.iter().collect::<std::collections::BTreeSet<_>>().len() != 3
            || b.iter().collect::<std::collections::BTreeSet<_>>().len() != 3
        {
            continue;
        }
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if !pairs.contains(&(a.clone(), b.clone())) {
            pairs.push((a, b));
        }
    }
    pairs.sort();
    pairs
}

fn similar_literal(t1: &[String; 3], map: &BTreeMap<String, String>) -> Literal {
    let tri = |pts: [&str; 3]| Literal::points("Triangle", &pts);
    Literal::new(
        "Similar",
        vec![
            Arg::lit(tri([&t1[0], &t1[1], &t1[2]])),
            Arg::lit(tri([&map[&t1[0]], &map[&t1[1]], &map[&t1[2]]])),
        ],
    )
}

/// Full angle-angle-angle matching: all three corresponding vertex pairs must
/// be witnessed by angle-equality nodes with consistent arm mappings.
fn aa_similarity(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (t1, t2) in candidate_pairs(ctx) {
        if !ctx.sketch.has_triangle(&t1[0], &t1[1], &t1[2])
            || !ctx.sketch.has_triangle(&t2[0], &t2[1], &t2[2])
        {
            continue;
        }
        let links = links_for_pair(ctx, &t1, &t2);
        // Build vertex map from links covering all three vertices.
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        let mut premises: Vec<NodeId> = Vec::new();
        let mut ok = true;
        for v in &t1 {
            let Some(link) = links.iter().find(|l| &l.v1 == v) else {
                ok = false;
                break;
            };
            map.insert(link.v1.clone(), link.v2.clone());
            premises.push(link.node);
        }
        if !ok || map.values().collect::<std::collections::BTreeSet<_>>().len() != 3 {
            continue;
        }
        // Arms must map consistently under the assembled correspondence.
        let consistent = links.iter().filter(|l| map.get(&l.v1) == Some(&l.v2)).all(|l| {
            let mapped: Vec<&String> = l.arms1.iter().filter_map(|a| map.get(a)).collect();
            mapped.len() == 2
                && mapped.contains(&&l.arms2[0])
                && mapped.contains(&&l.arms2[1])
        });
        if !consistent {
            continue;
        }
        out.push(RuleMatch {
            premises,
            conclusions: vec![Conclusion::literal(similar_literal(&t1, &map))],
        });
    }
    out
}

/// Sides of a triangle under a vertex order.
fn sides(t: &[String]) -> Vec<(String, String)> {
    (0..t.len()).map(|i| (t[i].clone(), t[(i + 1) % t.len()].clone())).collect()
}

/// Find a node asserting `len(a1,b1) * len(a2,b2) = len(c1,d1) * len(c2,d2)`
/// or the equivalent ratio form.
fn cross_ratio_node(
    ctx: &MatchCtx,
    s1: (&str, &str),
    s2: (&str, &str),
    r1: (&str, &str),
    r2: (&str, &str),
) -> Option<NodeId> {
    let lhs = Expr::mul2(ctx.len_var(s1.0, s1.1), ctx.len_var(r2.0, r2.1));
    let rhs = Expr::mul2(ctx.len_var(r1.0, r1.1), ctx.len_var(s2.0, s2.1));
    ctx.find_equation(&Equation::new(lhs, rhs)).or_else(|| {
        let lhs = Expr::div(ctx.len_var(s1.0, s1.1), ctx.len_var(r1.0, r1.1));
        let rhs = Expr::div(ctx.len_var(s2.0, s2.1), ctx.len_var(r2.0, r2.1));
        ctx.find_equation(&Equation::new(lhs, rhs))
    })
}

/// Declared triangle literal nodes, as vertex lists.
fn declared_triangles(ctx: &MatchCtx) -> Vec<(NodeId, Vec<String>)> {
    ctx.nodes("Triangle")
        .iter()
        .map(|&n| (n, ctx.literal(n).point_ids()))
        .filter(|(_, v)| v.len() == 3)
        .collect()
}

fn correspondences(t: &[String]) -> Vec<Vec<String>> {
    let idx: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    idx.iter().map(|p| p.iter().map(|&i| t[i].clone()).collect()).collect()
}

fn sas_similarity(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    let tris = declared_triangles(ctx);
    for (i, (n1, t1)) in tris.iter().enumerate() {
        for (n2, t2base) in tris.iter().skip(i + 1) {
            for t2 in correspondences(t2base) {
                // angle at vertex 0 equal, sides 0-1 and 0-2 proportional
                let angle1 = ctx.angle_var(&t1[1], &t1[0], &t1[2]);
                let angle2 = ctx.angle_var(&t2[1], &t2[0], &t2[2]);
                let Some(an) = ctx.find_equation(&Equation::new(angle1, angle2)) else {
                    continue;
                };
                let Some(rn) = cross_ratio_node(
                    ctx,
                    (&t1[0], &t1[1]),
                    (&t2[0], &t2[1]),
                    (&t1[0], &t1[2]),
                    (&t2[0], &t2[2]),
                ) else {
                    continue;
                };
                let map: BTreeMap<String, String> =
                    t1.iter().cloned().zip(t2.iter().cloned()).collect();
                let t1a: [String; 3] = [t1[0].clone(), t1[1].clone(), t1[2].clone()];
                out.push(RuleMatch {
                    premises: vec![*n1, *n2, an, rn],
                    conclusions: vec![Conclusion::literal(similar_literal(&t1a, &map))],
                });
            }
        }
    }
    out
}

fn sss_similarity(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    let tris = declared_triangles(ctx);
    for (i, (n1, t1)) in tris.iter().enumerate() {
        for (n2, t2base) in tris.iter().skip(i + 1) {
            for t2 in correspondences(t2base) {
                let r1 = cross_ratio_node(
                    ctx,
                    (&t1[0], &t1[1]),
                    (&t2[0], &t2[1]),
                    (&t1[1], &t1[2]),
                    (&t2[1], &t2[2]),
                );
                let r2 = cross_ratio_node(
                    ctx,
                    (&t1[1], &t1[2]),
                    (&t2[1], &t2[2]),
                    (&t1[2], &t1[0]),
                    (&t2[2], &t2[0]),
                );
                let (Some(r1), Some(r2)) = (r1, r2) else { continue };
                let map: BTreeMap<String, String> =
                    t1.iter().cloned().zip(t2.iter().cloned()).collect();
                let t1a: [String; 3] = [t1[0].clone(), t1[1].clone(), t1[2].clone()];
                out.push(RuleMatch {
                    premises: vec![*n1, *n2, r1, r2],
                    conclusions: vec![Conclusion::literal(similar_literal(&t1a, &map))],
                });
            }
        }
    }
    out
}

/// Paired figures of a Similar/Congruent literal, with correspondence.
fn figure_pair(lit: &Literal) -> Option<(Vec<String>, Vec<String>)> {
    let (a, b) = (lit.args[0].as_lit()?, lit.args[1].as_lit()?);
    let (va, vb) = (a.point_ids(), b.point_ids());
    (va.len() == vb.len() && va.len() >= 3).then_some((va, vb))
}

fn similar_definition(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("Similar") {
        let lit = ctx.literal(n);
        let Some((t1, t2)) = figure_pair(lit) else { continue };
        let mut ratio_pair = lit.clone();
        ratio_pair.pred = "SimRatio".to_string();
        let ratio = Expr::Var(ctx.symbols.sim_ratio(&ratio_pair));
        let k = t1.len();
        let mut conclusions = Vec::new();
        // Corresponding angles are equal.
        for i in 0..k {
            let a1 = ctx.angle_var(&t1[(i + k - 1) % k], &t1[i], &t1[(i + 1) % k]);
            let a2 = ctx.angle_var(&t2[(i + k - 1) % k], &t2[i], &t2[(i + 1) % k]);
            conclusions.push(ctx.var_eq_concl(a1, a2));
        }
        // One shared ratio across corresponding sides.
        for (s1, s2) in sides(&t1).into_iter().zip(sides(&t2)) {
            conclusions.push(ctx.eq_concl(
                ratio.clone(),
                Expr::div(ctx.len_var(&s1.0, &s1.1), ctx.len_var(&s2.0, &s2.1)),
            ));
        }
        out.push(RuleMatch { premises: vec![n], conclusions });
    }
    out
}

fn congruent_definition(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("Congruent") {
        let lit = ctx.literal(n);
        let Some((t1, t2)) = figure_pair(lit) else { continue };
        let k = t1.len();
        let mut conclusions = Vec::new();
        for i in 0..k {
            let a1 = ctx.angle_var(&t1[(i + k - 1) % k], &t1[i], &t1[(i + 1) % k]);
            let a2 = ctx.angle_var(&t2[(i + k - 1) % k], &t2[i], &t2[(i + 1) % k]);
            conclusions.push(ctx.var_eq_concl(a1, a2));
        }
        for (s1, s2) in sides(&t1).into_iter().zip(sides(&t2)) {
            conclusions.push(ctx.var_eq_concl(
                ctx.len_var(&s1.0, &s1.1),
                ctx.len_var(&s2.0, &s2.1),
            ));
        }
        out.push(RuleMatch { premises: vec![n], conclusions });
    }
    out
}

fn congruent_literal(t1: &[String], t2: &[String]) -> Literal {
    Literal::new(
        "Congruent",
        vec![
            Arg::lit(Literal::points("Triangle", &[&t1[0], &t1[1], &t1[2]])),
            Arg::lit(Literal::points("Triangle", &[&t2[0], &t2[1], &t2[2]])),
        ],
    )
}

fn side_eq_node(ctx: &MatchCtx, s1: (&str, &str), s2: (&str, &str)) -> Option<NodeId> {
    ctx.find_equation(&Equation::new(
        ctx.len_var(s1.0, s1.1),
        ctx.len_var(s2.0, s2.1),
    ))
}

fn angle_eq_node(
    ctx: &MatchCtx,
    a1: (&str, &str, &str),
    a2: (&str, &str, &str),
) -> Option<NodeId> {
    ctx.find_equation(&Equation::new(
        ctx.angle_var(a1.0, a1.1, a1.2),
        ctx.angle_var(a2.0, a2.1, a2.2),
    ))
}

fn congruence_by(
    ctx: &MatchCtx,
    need: impl Fn(&MatchCtx, &[String], &[String]) -> Option<Vec<NodeId>>,
) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    let tris = declared_triangles(ctx);
    for (i, (n1, t1)) in tris.iter().enumerate() {
        for (n2, t2base) in tris.iter().skip(i + 1) {
            for t2 in correspondences(t2base) {
                if let Some(mut premises) = need(ctx, t1, &t2) {
                    premises.push(*n1);
                    premises.push(*n2);
                    out.push(RuleMatch {
                        premises,
                        conclusions: vec![Conclusion::literal(congruent_literal(t1, &t2))],
                    });
                    break;
                }
            }
        }
    }
    out
}

fn sas_congruence(ctx: &MatchCtx) -> Vec<RuleMatch> {
    congruence_by(ctx, |ctx, t1, t2| {
        let s1 = side_eq_node(ctx, (&t1[0], &t1[1]), (&t2[0], &t2[1]))?;
        let s2 = side_eq_node(ctx, (&t1[0], &t1[2]), (&t2[0], &t2[2]))?;
        let a = angle_eq_node(ctx, (&t1[1], &t1[0], &t1[2]), (&t2[1], &t2[0], &t2[2]))?;
        Some(vec![s1, s2, a])
    })
}

fn asa_congruence(ctx: &MatchCtx) -> Vec<RuleMatch> {
    congruence_by(ctx, |ctx, t1, t2| {
        let a1 = angle_eq_node(ctx, (&t1[1], &t1[0], &t1[2]), (&t2[1], &t2[0], &t2[2]))?;
        let a2 = angle_eq_node(ctx, (&t1[0], &t1[1], &t1[2]), (&t2[0], &t2[1], &t2[2]))?;
        let s = side_eq_node(ctx, (&t1[0], &t1[1]), (&t2[0], &t2[1]))?;
        Some(vec![a1, a2, s])
    })
}

fn sss_congruence(ctx: &MatchCtx) -> Vec<RuleMatch> {
    congruence_by(ctx, |ctx, t1, t2| {
        let s1 = side_eq_node(ctx, (&t1[0], &t1[1]), (&t2[0], &t2[1]))?;
        let s2 = side_eq_node(ctx, (&t1[1], &t1[2]), (&t2[1], &t2[2]))?;
        let s3 = side_eq_node(ctx, (&t1[2], &t1[0]), (&t2[2], &t2[0]))?;
        Some(vec![s1, s2, s3])
    })
}
