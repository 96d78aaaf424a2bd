//! Triangle rules: angle sum, isosceles/equilateral, the Pythagorean pair,
//! altitude-based area, midsegments and medians.

use super::{rule, MatchCtx, RuleMatch, TheoremRule};
use crate::algebra::{Equation, Expr};
use crate::formal_lang::{Arg, Literal};
use crate::hypergraph::{Conclusion, NodeId};

pub fn register(rules: &mut Vec<TheoremRule>) {
    rules.push(rule(
        "Triangle Angle Sum",
        "The interior angles of a triangle sum to 180.",
        angle_sum,
    ));
    rules.push(rule(
        "Isosceles Triangle Theorem",
        "Equal sides of a triangle face equal base angles.",
        isosceles_sides_to_angles,
    ));
    rules.push(rule(
        "Isosceles Triangle Converse",
        "Equal base angles of a triangle face equal sides.",
        isosceles_angles_to_sides,
    ));
    rules.push(rule(
        "Equilateral Triangle Properties",
        "An equilateral triangle has three equal sides and three 60-degree angles.",
        equilateral,
    ));
    rules.push(rule(
        "Pythagorean Theorem",
        "In a right triangle the legs' squares sum to the hypotenuse's square.",
        pythagorean,
    ));
    rules.push(rule(
        "Pythagorean Converse",
        "A triangle whose side squares satisfy a^2 + b^2 = c^2 is right-angled.",
        pythagorean_converse,
    ));
    rules.push(rule(
        "Triangle Area Formula",
        "The area of a triangle is half of base times height.",
        triangle_area,
    ));
    rules.push(rule(
        "Midsegment Theorem",
        "A midsegment of a triangle parallels the third side at half its length.",
        midsegment,
    ));
    rules.push(rule(
        "Triangle Median Definition",
        "A median joins a vertex to the midpoint of the opposite side.",
        triangle_median,
    ));
}

fn triangles(ctx: &MatchCtx) -> Vec<(NodeId, Vec<String>)> {
    ctx.nodes("Triangle")
        .iter()
        .map(|&n| (n, ctx.literal(n).point_ids()))
        .filter(|(_, v)| v.len() == 3)
        .collect()
}

fn angle_sum(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, t) in triangles(ctx) {
        let sum = Expr::Add(vec![
            ctx.angle_var(&t[1], &t[0], &t[2]),
            ctx.angle_var(&t[0], &t[1], &t[2]),
            ctx.angle_var(&t[0], &t[2], &t[1]),
        ]);
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![ctx.eq_concl(sum, Expr::int(180))],
        });
    }
    out
}

fn isosceles_sides_to_angles(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, t) in triangles(ctx) {
        for apex in 0..3 {
            let (a, b, c) = (&t[apex], &t[(apex + 1) % 3], &t[(apex + 2) % 3]);
            let eq = Equation::new(ctx.len_var(a, b), ctx.len_var(a, c));
            let Some(side_eq) = ctx.find_equation(&eq) else { continue };
            out.push(RuleMatch {
                premises: vec![n, side_eq],
                conclusions: vec![ctx.var_eq_concl(
                    ctx.angle_var(a, b, c),
                    ctx.angle_var(a, c, b),
                )],
            });
        }
    }
    out
}

fn isosceles_angles_to_sides(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, t) in triangles(ctx) {
        for apex in 0..3 {
            let (a, b, c) = (&t[apex], &t[(apex + 1) % 3], &t[(apex + 2) % 3]);
            let eq = Equation::new(ctx.angle_var(a, b, c), ctx.angle_var(a, c, b));
            let Some(angle_eq) = ctx.find_equation(&eq) else { continue };
            out.push(RuleMatch {
                premises: vec![n, angle_eq],
                conclusions: vec![ctx.var_eq_concl(ctx.len_var(a, b), ctx.len_var(a, c))],
            });
        }
    }
    out
}

fn equilateral(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("Equilateral") {
        let Some(fig) = ctx.literal(n).args[0].as_lit() else { continue };
        let vs = fig.point_ids();
        let k = vs.len();
        if k < 3 {
            continue;
        }
        let mut conclusions = Vec::new();
        for i in 0..k - 1 {
            conclusions.push(ctx.var_eq_concl(
                ctx.len_var(&vs[i], &vs[(i + 1) % k]),
                ctx.len_var(&vs[(i + 1) % k], &vs[(i + 2) % k]),
            ));
        }
        if k == 3 && fig.pred == "Triangle" {
            for i in 0..3 {
                conclusions.push(ctx.eq_concl(
                    ctx.angle_var(&vs[(i + 2) % 3], &vs[i], &vs[(i + 1) % 3]),
                    Expr::int(60),
                ));
            }
        }
        out.push(RuleMatch { premises: vec![n], conclusions });
    }
    out
}

/// A `Perpendicular` whose two segments meet at a shared triangle vertex and
/// run along two sides marks the right angle.
fn right_angle_at<'c>(
    ctx: &MatchCtx<'c>,
    t: &[String],
) -> Option<(NodeId, usize)> {
    for &pn in ctx.nodes("Perpendicular") {
        let lit = ctx.literal(pn);
        let (Some(l1), Some(l2)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        let e1 = [l1.point(0), l1.point(1)];
        let e2 = [l2.point(0), l2.point(1)];
        for v_idx in 0..3 {
            let v = t[v_idx].as_str();
            let p = t[(v_idx + 1) % 3].as_str();
            let q = t[(v_idx + 2) % 3].as_str();
            let along = |e: &[&str; 2], a: &str, b: &str| {
                (e.contains(&a) && e.contains(&b))
                    || (e.contains(&a)
                        && e.iter().all(|x| ctx.sketch.chain_through(a, b).map(|c| c.contains(&x.to_string())).unwrap_or(false)))
            };
            let fits = (along(&e1, v, p) && along(&e2, v, q))
                || (along(&e1, v, q) && along(&e2, v, p));
            if fits && e1.contains(&v) && e2.contains(&v) {
                return Some((pn, v_idx));
            }
        }
    }
    None
}

fn pythagorean(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, t) in triangles(ctx) {
        let Some((perp, v_idx)) = right_angle_at(ctx, &t) else { continue };
        let v = &t[v_idx];
        let p = &t[(v_idx + 1) % 3];
        let q = &t[(v_idx + 2) % 3];
        let lhs = Expr::add2(
            Expr::pow(ctx.len_var(v, p), Expr::int(2)),
            Expr::pow(ctx.len_var(v, q), Expr::int(2)),
        );
        let rhs = Expr::pow(ctx.len_var(p, q), Expr::int(2));
        out.push(RuleMatch {
            premises: vec![n, perp],
            conclusions: vec![ctx.eq_concl(lhs, rhs)],
        });
    }
    out
}

fn pythagorean_converse(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, t) in triangles(ctx) {
        for v_idx in 0..3 {
            let v = &t[v_idx];
            let p = &t[(v_idx + 1) % 3];
            let q = &t[(v_idx + 2) % 3];
            let lhs = Expr::add2(
                Expr::pow(ctx.len_var(v, p), Expr::int(2)),
                Expr::pow(ctx.len_var(v, q), Expr::int(2)),
            );
            let rhs = Expr::pow(ctx.len_var(p, q), Expr::int(2));
            let Some(eq) = ctx.find_equation(&Equation::new(lhs, rhs)) else { continue };
            out.push(RuleMatch {
                premises: vec![n, eq],
                conclusions: vec![Conclusion::literal(Literal::new(
                    "Perpendicular",
                    vec![
                        Arg::lit(Literal::points("Line", &[v, p])),
                        Arg::lit(Literal::points("Line", &[v, q])),
                    ],
                ))],
            });
        }
    }
    out
}

fn triangle_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, t) in triangles(ctx) {
        let tri_lit = ctx.literal(n).clone();
        let area_lit = Literal::new("AreaOf", vec![Arg::lit(tri_lit.clone())]);
        if !ctx.referenced(&area_lit) {
            continue;
        }
        let area = ctx.quantity_var("AreaOf", tri_lit.clone());
        // Right angle at a vertex: legs are base and height.
        if let Some((perp, v_idx)) = right_angle_at(ctx, &t) {
            let v = &t[v_idx];
            let p = &t[(v_idx + 1) % 3];
            let q = &t[(v_idx + 2) % 3];
            let half = Expr::Mul(vec![
                Expr::frac(1, 2),
                ctx.len_var(v, p),
                ctx.len_var(v, q),
            ]);
            out.push(RuleMatch {
                premises: vec![n, perp],
                conclusions: vec![ctx.eq_concl(area.clone(), half)],
            });
        }
        // Altitude from a vertex onto the opposite side's chain.
        for &pn in ctx.nodes("Perpendicular") {
            let lit = ctx.literal(pn);
            let (Some(l1), Some(l2)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
                continue;
            };
            for (alt, base) in [(l1, l2), (l2, l1)] {
                for v_idx in 0..3 {
                    let apex = t[v_idx].as_str();
                    let b1 = t[(v_idx + 1) % 3].as_str();
                    let b2 = t[(v_idx + 2) % 3].as_str();
                    let (h, top) = (alt.point(0), alt.point(1));
                    let (h, top) = if top == apex { (h, top) } else { (top, h) };
                    if top != apex || h == apex {
                        continue;
                    }
                    let Some(chain) = ctx.sketch.chain_through(b1, b2) else { continue };
                    if !chain.contains(&h.to_string())
                        || !chain.contains(&base.point(0).to_string())
                        || !chain.contains(&base.point(1).to_string())
                    {
                        continue;
                    }
                    let half = Expr::Mul(vec![
                        Expr::frac(1, 2),
                        ctx.len_var(b1, b2),
                        ctx.len_var(apex, h),
                    ]);
                    out.push(RuleMatch {
                        premises: vec![n, pn],
                        conclusions: vec![ctx.eq_concl(area.clone(), half)],
                    });
                }
            }
        }
    }
    out
}

fn midsegment(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("IsMidsegmentOf") {
        let lit = ctx.literal(n);
        let (Some(seg), Some(tri)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        if tri.pred != "Triangle" {
            continue;
        }
        let t = tri.point_ids();
        let (x, y) = (seg.point(0), seg.point(1));
        // Attribute x and y to the two sides they sit on; the apex is shared.
        let mut found = None;
        for apex in 0..3 {
            let a = t[apex].as_str();
            let b = t[(apex + 1) % 3].as_str();
            let c = t[(apex + 2) % 3].as_str();
            let on = |p: &str, u: &str, v: &str| ctx.sketch.between(u, p, v);
            if (on(x, a, b) && on(y, a, c)) || (on(y, a, b) && on(x, a, c)) {
                found = Some((b, c));
                break;
            }
        }
        let Some((b, c)) = found else { continue };
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![
                Conclusion::literal(Literal::new(
                    "Parallel",
                    vec![
                        Arg::lit(Literal::points("Line", &[x, y])),
                        Arg::lit(Literal::points("Line", &[b, c])),
                    ],
                )),
                ctx.eq_concl(
                    ctx.len_var(x, y),
                    Expr::mul2(Expr::frac(1, 2), ctx.len_var(b, c)),
                ),
            ],
        });
    }
    out
}

fn triangle_median(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("IsMedianOf") {
        let lit = ctx.literal(n);
        let (Some(seg), Some(tri)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        if tri.pred != "Triangle" {
            continue;
        }
        let t = tri.point_ids();
        let (p, q) = (seg.point(0), seg.point(1));
        let (vertex, m) = if t.contains(&p.to_string()) && !t.contains(&q.to_string()) {
            (p, q)
        } else if t.contains(&q.to_string()) && !t.contains(&p.to_string()) {
            (q, p)
        } else {
            continue;
        };
        let others: Vec<&String> = t.iter().filter(|v| v.as_str() != vertex).collect();
        let (b, c) = (others[0].as_str(), others[1].as_str());
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![
                Conclusion::literal(Literal::new(
                    "PointLiesOnLine",
                    vec![
                        Arg::Id(m.to_string()),
                        Arg::lit(Literal::points("Line", &[b, c])),
                    ],
                )),
                ctx.var_eq_concl(ctx.len_var(b, m), ctx.len_var(m, c)),
            ],
        });
    }
    out
}
