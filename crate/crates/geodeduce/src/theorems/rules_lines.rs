//! Rules about lines, rays and the angle families at intersections.

use super::{rule, MatchCtx, RuleMatch, TheoremRule};
use crate::algebra::Expr;
use crate::formal_lang::Literal;
use crate::hypergraph::Conclusion;

pub fn register(rules: &mut Vec<TheoremRule>) {
    rules.push(rule(
        "Line Segment Split",
        "A point on a segment splits it: if X lies on UV then UV = UX + XV.",
        segment_split,
    ));
    rules.push(rule(
        "Same Angle",
        "Renaming an arm point along its ray keeps the angle: with Z on ray VA, \
         the angle AVB equals the angle ZVB.",
        same_angle,
    ));
    rules.push(rule(
        "Vertical Angles",
        "When two lines cross, opposite angles at the intersection are equal.",
        vertical_angles,
    ));
    rules.push(rule(
        "Linear Pair",
        "Adjacent angles on a straight line are supplementary.",
        linear_pair,
    ));
    rules.push(rule(
        "Corresponding Angle Theorem",
        "A transversal cuts parallel lines in equal corresponding angles.",
        corresponding_angles,
    ));
    rules.push(rule(
        "Alternate Interior Angles",
        "A transversal cuts parallel lines in equal alternate interior angles.",
        alternate_interior,
    ));
    rules.push(rule(
        "Co-interior Angles",
        "Interior angles on the same side of a transversal of parallels sum to 180.",
        co_interior,
    ));
    rules.push(rule(
        "Midpoint Definition",
        "A midpoint cuts a segment into two equal halves.",
        midpoint_definition,
    ));
    rules.push(rule(
        "Angle Bisector Definition",
        "A bisector splits an angle into two equal angles that sum to the whole.",
        angle_bisector,
    ));
    rules.push(rule(
        "Perpendicular Bisector",
        "The perpendicular bisector of a segment is perpendicular to it and \
         bisects it at the crossing point.",
        perpendicular_bisector,
    ));
}

fn on_line(lit: &Literal) -> Option<(&str, &str, &str)> {
    if lit.pred != "PointLiesOnLine" {
        return None;
    }
    let x = lit.args[0].as_id()?;
    let l = lit.args[1].as_lit()?;
    Some((x, l.point(0), l.point(1)))
}

fn segment_split(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("PointLiesOnLine") {
        let Some((x, u, v)) = on_line(ctx.literal(n)) else { continue };
        if x == u || x == v {
            continue;
        }
        let whole = ctx.len_var(u, v);
        let sum = Expr::add2(ctx.len_var(u, x), ctx.len_var(x, v));
        out.push(RuleMatch { premises: vec![n], conclusions: vec![ctx.eq_concl(whole, sum)] });
    }
    out
}

fn same_angle(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &an in ctx.nodes("Angle") {
        let angle = ctx.literal(an);
        if angle.args.len() != 3 {
            continue;
        }
        let (a, v, b) = (angle.point(0), angle.point(1), angle.point(2));
        for &ln in ctx.nodes("PointLiesOnLine") {
            let Some((z, p, q)) = on_line(ctx.literal(ln)) else { continue };
            for (arm, other) in [(a, b), (b, a)] {
                let matches_ray = (p == v && q == arm) || (p == arm && q == v);
                if !matches_ray || z == other || z == v || z == arm {
                    continue;
                }
                if ctx.sketch.collinear(z, v, other) {
                    continue;
                }
                let renamed = ctx.angle_var(z, v, other);
                let original = ctx.angle_var(a, v, b);
                out.push(RuleMatch {
                    premises: vec![an, ln],
                    conclusions: vec![ctx.var_eq_concl(renamed, original)],
                });
            }
        }
    }
    out
}

/// Chains crossing strictly inside both produce two vertical-angle pairs.
fn vertical_angles(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    let chains = &ctx.sketch.chains;
    for (i, c1) in chains.iter().enumerate() {
        for c2 in chains.iter().skip(i + 1) {
            let shared: Vec<&String> = c1.iter().filter(|p| c2.contains(p)).collect();
            if shared.len() != 1 {
                continue;
            }
            let x = shared[0];
            let (p1, p2) = (c1.iter().position(|p| p == x), c2.iter().position(|p| p == x));
            let (Some(p1), Some(p2)) = (p1, p2) else { continue };
            if p1 == 0 || p1 == c1.len() - 1 || p2 == 0 || p2 == c2.len() - 1 {
                continue;
            }
            let (a, b) = (c1.first().unwrap(), c1.last().unwrap());
            let (c, d) = (c2.first().unwrap(), c2.last().unwrap());
            let Some(w1) = witness_between(ctx, a, x, b) else { continue };
            let Some(w2) = witness_between(ctx, c, x, d) else { continue };
            out.push(RuleMatch {
                premises: vec![w1, w2],
                conclusions: vec![
                    ctx.var_eq_concl(ctx.angle_var(a, x, c), ctx.angle_var(b, x, d)),
                    ctx.var_eq_concl(ctx.angle_var(a, x, d), ctx.angle_var(b, x, c)),
                ],
            });
        }
    }
    out
}

/// The node asserting `x` strictly between `u` and `v`, if one exists.
fn witness_between(ctx: &MatchCtx, u: &str, x: &str, v: &str) -> Option<crate::hypergraph::NodeId> {
    for bw in &ctx.sketch.betweenness {
        if bw.mid == x
            && ((bw.ends.0 == u && bw.ends.1 == v) || (bw.ends.0 == v && bw.ends.1 == u))
        {
            if let Some(n) = ctx.graph.lookup(&bw.witness) {
                return Some(n);
            }
        }
    }
    // Fall back to any witness putting x inside the chain through u and v.
    for bw in &ctx.sketch.betweenness {
        if bw.mid == x && ctx.sketch.collinear(u, &bw.ends.0, v) && ctx.sketch.collinear(u, &bw.ends.1, v)
        {
            if let Some(n) = ctx.graph.lookup(&bw.witness) {
                return Some(n);
            }
        }
    }
    None
}

/// An angle leaning on a straight line pairs with its supplement.
fn linear_pair(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &an in ctx.nodes("Angle") {
        let angle = ctx.literal(an);
        if angle.args.len() != 3 {
            continue;
        }
        let (a, v, z) = (angle.point(0), angle.point(1), angle.point(2));
        // a-v extended through v to some w: angle avz + angle zvw = 180.
        for (armleft, ray) in [(a, z), (z, a)] {
            let Some(chain) = ctx.sketch.chain_through(armleft, v) else { continue };
            for w in chain {
                if w == armleft || w == v || w == ray {
                    continue;
                }
                if !ctx.sketch.between(armleft, v, w) {
                    continue;
                }
                let Some(witness) = witness_between(ctx, armleft, v, w) else { continue };
                if ctx.sketch.collinear(ray, v, w) {
                    continue;
                }
                let left = ctx.angle_var(armleft, v, ray);
                let right = ctx.angle_var(ray, v, w);
                out.push(RuleMatch {
                    premises: vec![an, witness],
                    conclusions: vec![ctx.eq_concl(
                        Expr::add2(left, right),
                        Expr::int(180),
                    )],
                });
            }
        }
    }
    out
}

/// Transversal data: chain point positions for a parallel pair.
struct Transversal<'a> {
    far: &'a str,
    p1: &'a str,
    arm1: &'a str,
    p2: &'a str,
    arm2: &'a str,
    chain: &'a [String],
}

fn transversals<'a>(
    ctx: &'a MatchCtx,
    l1: &'a Literal,
    l2: &'a Literal,
) -> Vec<Transversal<'a>> {
    let mut out = Vec::new();
    let (a1, b1) = (l1.point(0), l1.point(1));
    let (a2, b2) = (l2.point(0), l2.point(1));
    let (Some(c1), Some(c2)) = (ctx.sketch.chain_through(a1, b1), ctx.sketch.chain_through(a2, b2))
    else {
        return out;
    };
    if c1.iter().any(|p| c2.contains(p)) {
        return out;
    }
    for t in &ctx.sketch.chains {
        let hits1: Vec<&String> = t.iter().filter(|p| c1.contains(p)).collect();
        let hits2: Vec<&String> = t.iter().filter(|p| c2.contains(p)).collect();
        if hits1.len() != 1 || hits2.len() != 1 {
            continue;
        }
        let (p1, p2) = (hits1[0].as_str(), hits2[0].as_str());
        // Arm pairing follows the naming of the parallel literal: the named
        // endpoints of each segment sit on the same side of the transversal.
        let arm1 = if p1 == a1 { b1 } else if p1 == b1 { a1 } else { continue };
        let arm2 = if p2 == a2 { b2 } else if p2 == b2 { a2 } else { continue };
        // far endpoint E with order E .. p1 .. p2 along the transversal
        let (i1, i2) = (
            t.iter().position(|p| p == p1).unwrap(),
            t.iter().position(|p| p == p2).unwrap(),
        );
        let far = if i1 < i2 { t.first().unwrap() } else { t.last().unwrap() };
        if far == p1 {
            continue;
        }
        out.push(Transversal { far, p1, arm1, p2, arm2, chain: t });
    }
    out
}

fn corresponding_angles(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &pn in ctx.nodes("Parallel") {
        let lit = ctx.literal(pn);
        if ctx.sketch.is_completion(lit) {
            continue; // synthetic naming carries no side information
        }
        let (Some(l1), Some(l2)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else { continue };
        let mut conclusions = Vec::new();
        for t in transversals(ctx, l1, l2) {
            conclusions.push(ctx.var_eq_concl(
                ctx.angle_var(t.far, t.p1, t.arm1),
                ctx.angle_var(t.far, t.p2, t.arm2),
            ));
        }
        if !conclusions.is_empty() {
            out.push(RuleMatch { premises: vec![pn], conclusions });
        }
    }
    out
}

fn alternate_interior(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &pn in ctx.nodes("Parallel") {
        let lit = ctx.literal(pn);
        if ctx.sketch.is_completion(lit) {
            continue; // synthetic naming carries no side information
        }
        let (Some(l1), Some(l2)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else { continue };
        let mut conclusions = Vec::new();
        for t in transversals(ctx, l1, l2) {
            // arm2 sits on the same side as arm1; the alternate partner is a
            // point of the second line on the other side of p2.
            let Some(c2) = ctx.sketch.chain_through(t.p2, t.arm2) else { continue };
            let Some(opp) = c2.iter().find(|q| {
                q.as_str() != t.p2 && ctx.sketch.between(t.arm2, t.p2, q)
            }) else {
                continue;
            };
            conclusions.push(ctx.var_eq_concl(
                ctx.angle_var(t.p2, t.p1, t.arm1),
                ctx.angle_var(t.p1, t.p2, opp),
            ));
            let _ = &t.chain;
        }
        if !conclusions.is_empty() {
            out.push(RuleMatch { premises: vec![pn], conclusions });
        }
    }
    out
}

fn co_interior(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &pn in ctx.nodes("Parallel") {
        let lit = ctx.literal(pn);
        if ctx.sketch.is_completion(lit) {
            continue; // synthetic naming carries no side information
        }
        let (Some(l1), Some(l2)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else { continue };
        let mut conclusions = Vec::new();
        for t in transversals(ctx, l1, l2) {
            conclusions.push(ctx.eq_concl(
                Expr::add2(
                    ctx.angle_var(t.p2, t.p1, t.arm1),
                    ctx.angle_var(t.p1, t.p2, t.arm2),
                ),
                Expr::int(180),
            ));
        }
        if !conclusions.is_empty() {
            out.push(RuleMatch { premises: vec![pn], conclusions });
        }
    }
    out
}

fn midpoint_definition(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("IsMidpointOf") {
        let lit = ctx.literal(n);
        let (Some(m), Some(l)) = (lit.args[0].as_id(), lit.args[1].as_lit()) else { continue };
        let (a, b) = (l.point(0), l.point(1));
        if m == a || m == b {
            continue;
        }
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![ctx.var_eq_concl(ctx.len_var(a, m), ctx.len_var(m, b))],
        });
    }
    out
}

fn angle_bisector(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("BisectsAngle") {
        let lit = ctx.literal(n);
        let (Some(l), Some(angle)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        if angle.args.len() != 3 {
            continue;
        }
        let (a, v, b) = (angle.point(0), angle.point(1), angle.point(2));
        let z = if l.point(0) == v {
            l.point(1)
        } else if l.point(1) == v {
            l.point(0)
        } else {
            continue;
        };
        if z == a || z == b {
            continue;
        }
        let half1 = ctx.angle_var(a, v, z);
        let half2 = ctx.angle_var(z, v, b);
        let whole = ctx.angle_var(a, v, b);
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![
                ctx.var_eq_concl(half1.clone(), half2.clone()),
                ctx.eq_concl(Expr::add2(half1, half2), whole),
            ],
        });
    }
    out
}

fn perpendicular_bisector(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("IsPerpendicularBisectorOf") {
        let lit = ctx.literal(n);
        let (Some(bisector), Some(seg)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        let mut conclusions = vec![Conclusion::literal(Literal::new(
            "Perpendicular",
            vec![lit.args[0].clone(), lit.args[1].clone()],
        ))];
        let (a, b) = (seg.point(0), seg.point(1));
        if let (Some(cb), Some(cs)) = (
            ctx.sketch.chain_through(bisector.point(0), bisector.point(1)),
            ctx.sketch.chain_through(a, b),
        ) {
            if let Some(x) = cb.iter().find(|p| cs.contains(p)) {
                if x != a && x != b {
                    conclusions
                        .push(ctx.var_eq_concl(ctx.len_var(a, x), ctx.len_var(x, b)));
                }
            }
        }
        out.push(RuleMatch { premises: vec![n], conclusions });
    }
    out
}
