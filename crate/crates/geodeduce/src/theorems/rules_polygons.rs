//! Quadrilateral-family properties, regular polygons, perimeters and areas.

use super::{rule, MatchCtx, RuleMatch, TheoremRule};
use crate::algebra::{rat_i, Expr};
use crate::formal_lang::{Arg, Literal};
use crate::hypergraph::{Conclusion, NodeId};
use num_rational::BigRational;

pub fn register(rules: &mut Vec<TheoremRule>) {
    rules.push(rule(
        "Parallelogram Opposite Sides",
        "Opposite sides of a parallelogram are parallel and equal.",
        parallelogram_sides,
    ));
    rules.push(rule(
        "Parallelogram Opposite Angles",
        "Opposite angles of a parallelogram are equal.",
        parallelogram_angles,
    ));
    rules.push(rule(
        "Parallelogram Consecutive Angles",
        "Consecutive angles of a parallelogram are supplementary.",
        parallelogram_consecutive,
    ));
    rules.push(rule(
        "Parallelogram Diagonals Bisect",
        "The diagonals of a parallelogram bisect each other.",
        parallelogram_diagonals,
    ));
    rules.push(rule(
        "Rectangle Properties",
        "A rectangle is a parallelogram with four right angles.",
        rectangle_properties,
    ));
    rules.push(rule(
        "Rectangle Diagonals",
        "The diagonals of a rectangle are equal.",
        rectangle_diagonals,
    ));
    rules.push(rule(
        "Rhombus Properties",
        "A rhombus is a parallelogram with four equal sides.",
        rhombus_properties,
    ));
    rules.push(rule(
        "Square Properties",
        "A square is both a rectangle and a rhombus.",
        square_properties,
    ));
    rules.push(rule(
        "Kite Sides",
        "A kite has two pairs of equal adjacent sides.",
        kite_sides,
    ));
    rules.push(rule(
        "Trapezoid Median",
        "The median of a trapezoid is the average of the two bases.",
        trapezoid_median,
    ));
    rules.push(rule(
        "Regular Polygon Properties",
        "A regular n-gon has equal sides and interior angles of (n-2)*180/n.",
        regular_polygon,
    ));
    rules.push(rule(
        "Polygon Angle Sum",
        "The interior angles of an n-gon sum to (n-2)*180.",
        polygon_angle_sum,
    ));
    rules.push(rule(
        "Polygon Perimeter",
        "The perimeter of a polygon is the sum of its side lengths.",
        polygon_perimeter,
    ));
    rules.push(rule(
        "Rectangle Area Formula",
        "The area of a rectangle is the product of two adjacent sides.",
        rectangle_area,
    ));
    rules.push(rule(
        "Square Area Formula",
        "The area of a square is its side squared.",
        square_area,
    ));
    rules.push(rule(
        "Parallelogram Area Formula",
        "The area of a parallelogram is base times height.",
        parallelogram_area,
    ));
    rules.push(rule(
        "Trapezoid Area Formula",
        "The area of a trapezoid is half the sum of the bases times the height.",
        trapezoid_area,
    ));
    rules.push(rule(
        "Rhombus Area Formula",
        "The area of a rhombus is half the product of its diagonals.",
        rhombus_area,
    ));
    rules.push(rule(
        "Regular Polygon Area Formula",
        "The area of a regular n-gon with side s is n*s^2/(4*tan(180/n)).",
        regular_polygon_area,
    ));
}

fn quads(ctx: &MatchCtx, pred: &str) -> Vec<(NodeId, Vec<String>)> {
    ctx.nodes(pred)
        .iter()
        .map(|&n| (n, ctx.literal(n).point_ids()))
        .filter(|(_, v)| v.len() == 4)
        .collect()
}

fn parallelogram_like(ctx: &MatchCtx) -> Vec<(NodeId, Vec<String>)> {
    let mut out = Vec::new();
    for pred in ["Parallelogram", "Rectangle", "Rhombus", "Square"] {
        out.extend(quads(ctx, pred));
    }
    out
}

fn parallelogram_sides(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in parallelogram_like(ctx) {
        let line = |a: &str, b: &str| Arg::lit(Literal::points("Line", &[a, b]));
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![
                ctx.var_eq_concl(ctx.len_var(&v[0], &v[1]), ctx.len_var(&v[2], &v[3])),
                ctx.var_eq_concl(ctx.len_var(&v[1], &v[2]), ctx.len_var(&v[3], &v[0])),
                Conclusion::literal(Literal::new(
                    "Parallel",
                    vec![line(&v[0], &v[1]), line(&v[2], &v[3])],
                )),
                Conclusion::literal(Literal::new(
                    "Parallel",
                    vec![line(&v[1], &v[2]), line(&v[3], &v[0])],
                )),
            ],
        });
    }
    out
}

fn vertex_angle(ctx: &MatchCtx, v: &[String], i: usize) -> Expr {
    let k = v.len();
    ctx.angle_var(&v[(i + k - 1) % k], &v[i], &v[(i + 1) % k])
}

fn parallelogram_angles(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in parallelogram_like(ctx) {
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![
                ctx.var_eq_concl(vertex_angle(ctx, &v, 0), vertex_angle(ctx, &v, 2)),
                ctx.var_eq_concl(vertex_angle(ctx, &v, 1), vertex_angle(ctx, &v, 3)),
            ],
        });
    }
    out
}

fn parallelogram_consecutive(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in parallelogram_like(ctx) {
        let mut conclusions = Vec::new();
        for i in 0..4 {
            conclusions.push(ctx.eq_concl(
                Expr::add2(vertex_angle(ctx, &v, i), vertex_angle(ctx, &v, (i + 1) % 4)),
                Expr::int(180),
            ));
        }
        out.push(RuleMatch { premises: vec![n], conclusions });
    }
    out
}

fn parallelogram_diagonals(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in parallelogram_like(ctx) {
        // A crossing point on both diagonals must be asserted.
        let mut cross: Option<(&str, NodeId, NodeId)> = None;
        for bw1 in &ctx.sketch.betweenness {
            if !(ends_match(bw1, &v[0], &v[2])) {
                continue;
            }
            for bw2 in &ctx.sketch.betweenness {
                if bw2.mid == bw1.mid && ends_match(bw2, &v[1], &v[3]) {
                    if let (Some(n1), Some(n2)) =
                        (ctx.graph.lookup(&bw1.witness), ctx.graph.lookup(&bw2.witness))
                    {
                        cross = Some((bw1.mid.as_str(), n1, n2));
                    }
                }
            }
        }
        let Some((x, w1, w2)) = cross else { continue };
        out.push(RuleMatch {
            premises: vec![n, w1, w2],
            conclusions: vec![
                ctx.var_eq_concl(ctx.len_var(&v[0], x), ctx.len_var(x, &v[2])),
                ctx.var_eq_concl(ctx.len_var(&v[1], x), ctx.len_var(x, &v[3])),
            ],
        });
    }
    out
}

fn ends_match(bw: &crate::validation::Betweenness, a: &str, b: &str) -> bool {
    (bw.ends.0 == a && bw.ends.1 == b) || (bw.ends.0 == b && bw.ends.1 == a)
}

fn restated(pred: &str, v: &[String]) -> Conclusion {
    Conclusion::literal(Literal::points(
        pred,
        &[&v[0], &v[1], &v[2], &v[3]],
    ))
}

fn rectangle_properties(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for pred in ["Rectangle", "Square"] {
        for (n, v) in quads(ctx, pred) {
            let mut conclusions = vec![restated("Parallelogram", &v)];
            for i in 0..4 {
                conclusions.push(ctx.eq_concl(vertex_angle(ctx, &v, i), Expr::int(90)));
            }
            out.push(RuleMatch { premises: vec![n], conclusions });
        }
    }
    out
}

fn rectangle_diagonals(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for pred in ["Rectangle", "Square"] {
        for (n, v) in quads(ctx, pred) {
            out.push(RuleMatch {
                premises: vec![n],
                conclusions: vec![ctx.var_eq_concl(
                    ctx.len_var(&v[0], &v[2]),
                    ctx.len_var(&v[1], &v[3]),
                )],
            });
        }
    }
    out
}

fn rhombus_properties(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for pred in ["Rhombus", "Square"] {
        for (n, v) in quads(ctx, pred) {
            let mut conclusions = vec![restated("Parallelogram", &v)];
            for i in 0..3 {
                conclusions.push(ctx.var_eq_concl(
                    ctx.len_var(&v[i], &v[i + 1]),
                    ctx.len_var(&v[(i + 1) % 4], &v[(i + 2) % 4]),
                ));
            }
            out.push(RuleMatch { premises: vec![n], conclusions });
        }
    }
    out
}

fn square_properties(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in quads(ctx, "Square") {
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![restated("Rectangle", &v), restated("Rhombus", &v)],
        });
    }
    out
}

fn kite_sides(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in quads(ctx, "Kite") {
        // Axis through the first and third vertices.
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![
                ctx.var_eq_concl(ctx.len_var(&v[0], &v[1]), ctx.len_var(&v[0], &v[3])),
                ctx.var_eq_concl(ctx.len_var(&v[2], &v[1]), ctx.len_var(&v[2], &v[3])),
            ],
        });
    }
    out
}

fn trapezoid_median(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("IsMedianOf") {
        let lit = ctx.literal(n);
        let (Some(seg), Some(trap)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        if trap.pred != "Trapezoid" {
            continue;
        }
        let v = trap.point_ids();
        // Bases are the declared parallel sides, defaulting to v0v1 and v2v3.
        let declared_parallel = ctx.nodes("Parallel").iter().any(|&p| {
            let plit = ctx.literal(p);
            let (Some(l1), Some(l2)) = (plit.args[0].as_lit(), plit.args[1].as_lit()) else {
                return false;
            };
            let hits = |l: &Literal, a: &str, b: &str| {
                let pts = [l.point(0), l.point(1)];
                pts.contains(&a) && pts.contains(&b)
            };
            hits(l1, &v[1], &v[2]) && hits(l2, &v[3], &v[0])
                || hits(l2, &v[1], &v[2]) && hits(l1, &v[3], &v[0])
        });
        let (b1, b2): ((&str, &str), (&str, &str)) = if declared_parallel {
            ((&v[1], &v[2]), (&v[3], &v[0]))
        } else {
            ((&v[0], &v[1]), (&v[2], &v[3]))
        };
        let median = ctx.len_var(seg.point(0), seg.point(1));
        let avg = Expr::div(
            Expr::add2(ctx.len_var(b1.0, b1.1), ctx.len_var(b2.0, b2.1)),
            Expr::int(2),
        );
        out.push(RuleMatch { premises: vec![n], conclusions: vec![ctx.eq_concl(median, avg)] });
    }
    out
}

fn regular_polygon(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("Regular") {
        let Some(fig) = ctx.literal(n).args[0].as_lit() else { continue };
        let vs = fig.point_ids();
        let k = vs.len();
        if k < 3 {
            continue;
        }
        let interior = BigRational::new(rat_i((k as i64 - 2) * 180).numer().clone(), rat_i(k as i64).numer().clone());
        let mut conclusions = Vec::new();
        for i in 0..k {
            conclusions.push(ctx.eq_concl(
                ctx.angle_var(&vs[(i + k - 1) % k], &vs[i], &vs[(i + 1) % k]),
                Expr::Rat(interior.clone()),
            ));
        }
        for i in 0..k - 1 {
            conclusions.push(ctx.var_eq_concl(
                ctx.len_var(&vs[i], &vs[(i + 1) % k]),
                ctx.len_var(&vs[(i + 1) % k], &vs[(i + 2) % k]),
            ));
        }
        out.push(RuleMatch { premises: vec![n], conclusions });
    }
    out
}

fn polygon_angle_sum(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for pred in [
        "Quadrilateral",
        "Parallelogram",
        "Rectangle",
        "Rhombus",
        "Square",
        "Trapezoid",
        "Kite",
        "Polygon",
        "Pentagon",
        "Hexagon",
        "Heptagon",
        "Octagon",
    ] {
        for &n in ctx.nodes(pred) {
            let v = ctx.literal(n).point_ids();
            let k = v.len();
            if k < 4 {
                continue;
            }
            let sum = Expr::Add((0..k).map(|i| vertex_angle(ctx, &v, i)).collect());
            out.push(RuleMatch {
                premises: vec![n],
                conclusions: vec![ctx.eq_concl(sum, Expr::int(180 * (k as i64 - 2)))],
            });
        }
    }
    out
}

fn polygon_perimeter(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for pred in [
        "Triangle",
        "Quadrilateral",
        "Parallelogram",
        "Rectangle",
        "Rhombus",
        "Square",
        "Trapezoid",
        "Kite",
        "Polygon",
        "Pentagon",
        "Hexagon",
        "Heptagon",
        "Octagon",
    ] {
        for &n in ctx.nodes(pred) {
            let lit = ctx.literal(n).clone();
            let peri_lit = Literal::new("PerimeterOf", vec![Arg::lit(lit.clone())]);
            if !ctx.referenced(&peri_lit) {
                continue;
            }
            let v = lit.point_ids();
            let k = v.len();
            let sum = Expr::Add((0..k).map(|i| ctx.len_var(&v[i], &v[(i + 1) % k])).collect());
            out.push(RuleMatch {
                premises: vec![n],
                conclusions: vec![ctx.eq_concl(ctx.quantity_var("PerimeterOf", lit), sum)],
            });
        }
    }
    out
}

fn area_if_referenced(ctx: &MatchCtx, n: NodeId) -> Option<(Literal, Expr)> {
    let lit = ctx.literal(n).clone();
    let area_lit = Literal::new("AreaOf", vec![Arg::lit(lit.clone())]);
    ctx.referenced(&area_lit).then(|| {
        let v = ctx.quantity_var("AreaOf", lit.clone());
        (lit, v)
    })
}

fn rectangle_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in quads(ctx, "Rectangle") {
        let Some((_lit, area)) = area_if_referenced(ctx, n) else { continue };
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![ctx.eq_concl(
                area,
                Expr::mul2(ctx.len_var(&v[0], &v[1]), ctx.len_var(&v[1], &v[2])),
            )],
        });
    }
    out
}

fn square_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in quads(ctx, "Square") {
        let Some((_lit, area)) = area_if_referenced(ctx, n) else { continue };
        out.push(RuleMatch {
            premises: vec![n],
            conclusions: vec![ctx.eq_concl(
                area,
                Expr::pow(ctx.len_var(&v[0], &v[1]), Expr::int(2)),
            )],
        });
    }
    out
}

/// Height data: a perpendicular segment from a vertex of the top side onto
/// the chain of the base side.
fn altitude_onto<'c>(
    ctx: &MatchCtx<'c>,
    base: (&str, &str),
    tops: &[&str],
) -> Option<(NodeId, Expr)> {
    for &pn in ctx.nodes("Perpendicular") {
        let lit = ctx.literal(pn);
        let (Some(l1), Some(l2)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) else {
            continue;
        };
        for (alt, along) in [(l1, l2), (l2, l1)] {
            let (p, q) = (alt.point(0), alt.point(1));
            let Some(chain) = ctx.sketch.chain_through(base.0, base.1) else { continue };
            if !chain.contains(&along.point(0).to_string())
                || !chain.contains(&along.point(1).to_string())
            {
                continue;
            }
            for (top, foot) in [(p, q), (q, p)] {
                if tops.contains(&top) && chain.contains(&foot.to_string()) {
                    return Some((pn, ctx.len_var(top, foot)));
                }
            }
        }
    }
    None
}

fn parallelogram_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in quads(ctx, "Parallelogram") {
        let Some((_lit, area)) = area_if_referenced(ctx, n) else { continue };
        for i in 0..4 {
            let base = (v[i].as_str(), v[(i + 1) % 4].as_str());
            let tops = [v[(i + 2) % 4].as_str(), v[(i + 3) % 4].as_str()];
            if let Some((pn, height)) = altitude_onto(ctx, base, &tops) {
                out.push(RuleMatch {
                    premises: vec![n, pn],
                    conclusions: vec![ctx.eq_concl(
                        area.clone(),
                        Expr::mul2(ctx.len_var(base.0, base.1), height),
                    )],
                });
            }
        }
    }
    out
}

fn trapezoid_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for (n, v) in quads(ctx, "Trapezoid") {
        let Some((_lit, area)) = area_if_referenced(ctx, n) else { continue };
        for (b1, b2) in [((0usize, 1usize), (2usize, 3usize)), ((1, 2), (3, 0))] {
            let base = (v[b1.0].as_str(), v[b1.1].as_str());
            let other = (v[b2.0].as_str(), v[b2.1].as_str());
            let tops = [other.0, other.1];
            if let Some((pn, height)) = altitude_onto(ctx, base, &tops) {
                let bases = Expr::add2(
                    ctx.len_var(base.0, base.1),
                    ctx.len_var(other.0, other.1),
                );
                out.push(RuleMatch {
                    premises: vec![n, pn],
                    conclusions: vec![ctx.eq_concl(
                        area.clone(),
                        Expr::Mul(vec![Expr::frac(1, 2), bases, height]),
                    )],
                });
            }
        }
    }
    out
}

fn rhombus_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for pred in ["Rhombus", "Kite"] {
        for (n, v) in quads(ctx, pred) {
            let Some((_lit, area)) = area_if_referenced(ctx, n) else { continue };
            if !ctx.sketch.has_segment(&v[0], &v[2]) || !ctx.sketch.has_segment(&v[1], &v[3]) {
                continue;
            }
            out.push(RuleMatch {
                premises: vec![n],
                conclusions: vec![ctx.eq_concl(
                    area,
                    Expr::Mul(vec![
                        Expr::frac(1, 2),
                        ctx.len_var(&v[0], &v[2]),
                        ctx.len_var(&v[1], &v[3]),
                    ]),
                )],
            });
        }
    }
    out
}

fn regular_polygon_area(ctx: &MatchCtx) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for &n in ctx.nodes("Regular") {
        let Some(fig) = ctx.literal(n).args[0].as_lit() else { continue };
        let area_lit = Literal::new("AreaOf", vec![Arg::lit(fig.clone())]);
        if !ctx.referenced(&area_lit) {
            continue;
        }
        let vs = fig.point_ids();
        let k = vs.len() as i64;
        if k < 3 {
            continue;
        }
        let side = ctx.len_var(&vs[0], &vs[1]);
        let tan = Expr::Func(
            crate::algebra::Func::Tan,
            Box::new(Expr::div(Expr::int(180), Expr::int(k))),
        );
        let area = ctx.quantity_var("AreaOf", fig.clone());
        let formula = Expr::div(
            Expr::mul2(Expr::int(k), Expr::pow(side, Expr::int(2))),
            Expr::mul2(Expr::int(4), tan),
        );
        out.push(RuleMatch { premises: vec![n], conclusions: vec![ctx.eq_concl(area, formula)] });
    }
    out
}
