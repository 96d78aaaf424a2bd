//! Circle rules: circumference/area formulas, central and inscribed angles,
//! tangents, chords and sectors.

use super::{rule, MatchCtx, RuleMatch, TheoremRule};
use crate::algebra::Expr;
use crate::formal_lang::{Arg, Literal};
use crate::hypergraph::{Conclusion, NodeId};

pub fn register(rules: &mut Vec<TheoremRule>) {
    rules.push(rule(
        "Circumference Formula",
        "The circumference of a circle is 2*pi*r.",
        circumference,
    ));
    rules.push(rule(
        "Circle Area Formula",
        "The area of a circle is pi*r^2.",
        circle_area,
    ));
    rules.push(rule(
        "Central Angle Theorem",
        "A central angle has the measure of its subtended arc.",
        central_angle,
    ));
    rules.push(rule(
        "Inscribed Angle Theorem",
        "An inscribed angle is half of its subtended arc.",
        inscribed_angle,
    ));
    rules.push(rule(
        "Tangent Perpendicular To Radius",
        "A tangent line is perpendicular to the radius at the point of tangency.",
        tangent_perpendicular,
    ));
    rules.push(rule(
        "Tangent Segments Equal",
        "Tangent segments from a common external point are equal.",
        tangent_segments,
    ));
    rules.push(rule(
        "Intersecting Chords",
        "Two chords crossing inside a circle cut each other into segments \
         with equal products.",
        intersecting_chords,
    ));
    rules.push(rule(
        "Sector Area Formula",
        "The area of a sector is its central angle over 360 times pi*r^2.",
        sector_area,
    ));
}

fn circle_lit(center: &str) -> Literal {
    Literal::points("Circle", &[center])
}

fn membership_node(ctx: &MatchCtx, center: &str, p: &str) -> Option<NodeId> {
    ctx.nodes("PointLiesOnCircle").iter().copied().find(|&n| {
        let lit = ctx.literal(n);
        lit.args[0].as_id() == Some(p)
            && lit.args[1].as_lit().map(|c| c.point(0) == center).unwrap_or(false)
    })
}

fn circumference(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for center in ctx.sketch.circles.keys() {
        let Some(anchor) = ctx.circle_anchor(center) else { continue };
        let two_pi_r =
            Expr::Mul(vec![Expr::int(2), Expr::Pi, ctx.radius_var(center)]);
        let circ = Literal::new("CircumferenceOf", vec![Arg::lit(circle_lit(center))]);
        if ctx.referenced(&circ) {
            out.push(RuleMatch {
                premises: vec![anchor],
                conclusions: vec![ctx.eq_concl(
                    ctx.quantity_var("CircumferenceOf", circle_lit(center)),
                    two_pi_r.clone(),
                )],
            });
        }
        let peri = Literal::new("PerimeterOf", vec![Arg::lit(circle_lit(center))]);
        if ctx.referenced(&peri) {
            out.push(RuleMatch {
                premises: vec![anchor],
                conclusions: vec![ctx.eq_concl(
                    ctx.quantity_var("PerimeterOf", circle_lit(center)),
                    two_pi_r,
                )],
            });
        }
    }
    out
}

fn circle_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for center in ctx.sketch.circles.keys() {
        let area = Literal::new("AreaOf", vec![Arg::lit(circle_lit(center))]);
        if !ctx.referenced(&area) {
            continue;
        }
        let Some(anchor) = ctx.circle_anchor(center) else { continue };
        out.push(RuleMatch {
            premises: vec![anchor],
            conclusions: vec![ctx.eq_concl(
                ctx.quantity_var("AreaOf", circle_lit(center)),
                Expr::mul2(Expr::Pi, Expr::pow(ctx.radius_var(center), Expr::int(2))),
            )],
        });
    }
    out
}

/// Arc quantities the problem talks about, per circle.
fn interesting_arcs<'c>(ctx: &MatchCtx<'c>, center: &str) -> Vec<(String, String)> {
    let info = &ctx.sketch.circles[center];
    let mut out = Vec::new();
    let pts: Vec<&String> = info.on_points.iter().collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let arc = Literal::new(
                "MeasureOf",
                vec![Arg::lit(Literal::points("Arc", &[pts[i], pts[j]]))],
            );
            if ctx.referenced(&arc) {
                out.push((pts[i].clone(), pts[j].clone()));
            }
        }
    }
    out
}

fn central_angle(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for center in ctx.sketch.circles.keys() {
        for (a, b) in interesting_arcs(ctx, center) {
            let (Some(ma), Some(mb)) =
                (membership_node(ctx, center, &a), membership_node(ctx, center, &b))
            else {
                continue;
            };
            if !ctx.sketch.has_segment(center, &a) || !ctx.sketch.has_segment(center, &b) {
                continue;
            }
            out.push(RuleMatch {
                premises: vec![ma, mb],
                conclusions: vec![ctx.eq_concl(
                    ctx.arc_var(&a, &b),
                    ctx.angle_var(&a, center, &b),
                )],
            });
        }
    }
    out
}

fn inscribed_angle(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (center, info) in &ctx.sketch.circles {
        let pts: Vec<&String> = info.on_points.iter().collect();
        for v in &pts {
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let (a, b) = (pts[i], pts[j]);
                    if a == *v || b == *v {
                        continue;
                    }
                    if !ctx.sketch.has_segment(v, a) || !ctx.sketch.has_segment(v, b) {
                        continue;
                    }
                    // Only fire for angles the problem names somewhere.
                    let angle = Literal::new(
                        "MeasureOf",
                        vec![Arg::lit(Literal::points("Angle", &[a, v, b]))],
                    );
                    let named = ctx.referenced(&angle)
                        || ctx.sketch.angles.iter().any(|(x, vv, y)| {
                            vv == *v
                                && ((x == a && y == b) || (x == b && y == a))
                        });
                    if !named {
                        continue;
                    }
                    let (Some(mv), Some(ma), Some(mb)) = (
                        membership_node(ctx, center, v),
                        membership_node(ctx, center, a),
                        membership_node(ctx, center, b),
                    ) else {
                        continue;
                    };
                    out.push(RuleMatch {
                        premises: vec![mv, ma, mb],
                        conclusions: vec![ctx.eq_concl(
                            ctx.angle_var(a, v, b),
                            Expr::mul2(Expr::frac(1, 2), ctx.arc_var(a, b)),
                        )],
                    });
                }
            }
        }
    }
    out
}

fn tangent_perpendicular(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &tn in ctx.nodes("Tangent") {
        let lit = ctx.literal(tn);
        let (Some(line), Some(circle)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        let center = circle.point(0);
        let Some(info) = ctx.sketch.circles.get(center) else { continue };
        for t in [line.point(0), line.point(1)] {
            if !info.on_points.contains(t) {
                continue;
            }
            let Some(mn) = membership_node(ctx, center, t) else { continue };
            out.push(RuleMatch {
                premises: vec![tn, mn],
                conclusions: vec![Conclusion::literal(Literal::new(
                    "Perpendicular",
                    vec![
                        Arg::lit(Literal::points("Line", &[center, t])),
                        Arg::lit(line.clone()),
                    ],
                ))],
            });
        }
    }
    out
}

fn tangent_segments(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    let tangents: Vec<NodeId> = ctx.nodes("Tangent").to_vec();
    for (i, &t1) in tangents.iter().enumerate() {
        for &t2 in tangents.iter().skip(i + 1) {
            let (l1, c1) = {
                let lit = ctx.literal(t1);
                (lit.args[0].as_lit().cloned(), lit.args[1].as_lit().cloned())
            };
            let (l2, c2) = {
                let lit = ctx.literal(t2);
                (lit.args[0].as_lit().cloned(), lit.args[1].as_lit().cloned())
            };
            let (Some(l1), Some(c1), Some(l2), Some(c2)) = (l1, c1, l2, c2) else { continue };
            if c1.point(0) != c2.point(0) {
                continue;
            }
            let center = c1.point(0);
            let Some(info) = ctx.sketch.circles.get(center) else { continue };
            let ends1 = [l1.point(0), l1.point(1)];
            let ends2 = [l2.point(0), l2.point(1)];
            let Some(&x) = ends1.iter().find(|p| ends2.contains(p)) else { continue };
            let p1 = ends1.iter().find(|&&p| p != x && info.on_points.contains(p));
            let p2 = ends2.iter().find(|&&p| p != x && info.on_points.contains(p));
            let (Some(&p1), Some(&p2)) = (p1, p2) else { continue };
            let (Some(m1), Some(m2)) =
                (membership_node(ctx, center, p1), membership_node(ctx, center, p2))
            else {
                continue;
            };
            out.push(RuleMatch {
                premises: vec![t1, t2, m1, m2],
                conclusions: vec![
                    ctx.var_eq_concl(ctx.len_var(x, p1), ctx.len_var(x, p2)),
                ],
            });
        }
    }
    out
}

fn intersecting_chords(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (center, info) in &ctx.sketch.circles {
        let pts: Vec<&String> = info.on_points.iter().collect();
        if pts.len() < 4 {
            continue;
        }
        for bw1 in &ctx.sketch.betweenness {
            for bw2 in &ctx.sketch.betweenness {
                if bw1.mid != bw2.mid {
                    continue;
                }
                let x = bw1.mid.as_str();
                let (a, b) = (bw1.ends.0.as_str(), bw1.ends.1.as_str());
                let (c, d) = (bw2.ends.0.as_str(), bw2.ends.1.as_str());
                if [a, b] == [c, d] || [a, b] == [d, c] {
                    continue;
                }
                let on = |p: &str| info.on_points.contains(p);
                if !(on(a) && on(b) && on(c) && on(d)) {
                    continue;
                }
                let (Some(w1), Some(w2)) =
                    (ctx.graph.lookup(&bw1.witness), ctx.graph.lookup(&bw2.witness))
                else {
                    continue;
                };
                let mems: Option<Vec<NodeId>> = [a, b, c, d]
                    .iter()
                    .map(|p| membership_node(ctx, center, p))
                    .collect();
                let Some(mems) = mems else { continue };
                let mut premises = vec![w1, w2];
                premises.extend(mems);
                out.push(RuleMatch {
                    premises,
                    conclusions: vec![ctx.eq_concl(
                        Expr::mul2(ctx.len_var(a, x), ctx.len_var(x, b)),
                        Expr::mul2(ctx.len_var(c, x), ctx.len_var(x, d)),
                    )],
                });
            }
        }
    }
    out
}

fn sector_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    // Sector literals appear inside quantity references, not as fact nodes.
    for q in &ctx.sketch.quantity_refs {
        let Ok(lit) = crate::formal_lang::parse_literal(q) else { continue };
        if lit.pred != "AreaOf" {
            continue;
        }
        let Some(sector) = lit.args[0].as_lit() else { continue };
        if sector.pred != "Sector" {
            continue;
        }
        let (o, a, b) = (sector.point(0), sector.point(1), sector.point(2));
        let (Some(ma), Some(mb)) =
            (membership_node(ctx, o, a), membership_node(ctx, o, b))
        else {
            continue;
        };
        let area = ctx.quantity_var("AreaOf", sector.clone());
        let formula = Expr::Mul(vec![
            Expr::div(ctx.angle_var(a, o, b), Expr::int(360)),
            Expr::Pi,
            Expr::pow(ctx.radius_var(o), Expr::int(2)),
        ]);
        out.push(RuleMatch {
            premises: vec![ma, mb],
            conclusions: vec![ctx.eq_concl(area, formula)],
        });
    }
    out
}
