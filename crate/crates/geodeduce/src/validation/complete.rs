//! Completion rules: supplement relations that are implicit in the sketch.

use super::sketch::GeometrySketch;
use crate::formal_lang::{canonicalize, Arg, Literal};

#[derive(Debug, Clone)]
pub struct Completion {
    pub literal: Literal,
    pub rule: &'static str,
}

/// One fixpoint round of the completion rule set relative to what the sketch
/// already knows. Running it again on a sketch that absorbed the output
/// yields nothing.
pub fn complete_relations(sketch: &GeometrySketch) -> Vec<Completion> {
    let mut out: Vec<Completion> = Vec::new();
    let mut work = sketch.clone();
    loop {
        let mut round: Vec<Completion> = Vec::new();
        perpendicular_extension(&work, &mut round);
        parallel_extension(&work, &mut round);
        angle_renaming(&work, &mut round);
        circle_memberships(&work, &mut round);
        radius_equalities(&work, &mut round);
        diameter_definition(&work, &mut round);
        midpoint_on_line(&work, &mut round);
        polygon_elements(&work, &mut round);
        let mut grew = false;
        for c in round {
            let canon = canonicalize(&c.literal);
            if !work.contains(&canon) {
                work.absorb(canon.clone(), Some(c.rule));
                out.push(Completion { literal: canon, rule: c.rule });
                grew = true;
            }
        }
        if !grew {
            break;
        }
        work.rebuild_chains();
    }
    out
}

fn line(a: &str, b: &str) -> Literal {
    Literal::points("Line", &[a, b])
}

fn push(out: &mut Vec<Completion>, sketch: &GeometrySketch, lit: Literal, rule: &'static str) {
    let canon = canonicalize(&lit);
    if !sketch.contains(&canon) {
        out.push(Completion { literal: canon, rule });
    }
}

/// `PH ⊥ AB` with the foot `H` on `AB` extends to the subsegments at `H`.
fn perpendicular_extension(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    for rel in &sketch.relations {
        if rel.pred != "Perpendicular" {
            continue;
        }
        let (Some(l1), Some(l2)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else { continue };
        let (a1, b1) = (l1.point(0), l1.point(1));
        let (a2, b2) = (l2.point(0), l2.point(1));
        let (Some(c1), Some(c2)) = (sketch.chain_through(a1, b1), sketch.chain_through(a2, b2))
        else {
            continue;
        };
        let shared: Vec<&String> = c1.iter().filter(|p| c2.contains(p)).collect();
        if shared.len() != 1 {
            continue;
        }
        let h = shared[0];
        for x in c1.iter().filter(|x| *x != h) {
            for y in c2.iter().filter(|y| *y != h) {
                push(
                    out,
                    sketch,
                    Literal::new(
                        "Perpendicular",
                        vec![Arg::lit(line(x, h)), Arg::lit(line(y, h))],
                    ),
                    "perpendicular extension",
                );
            }
        }
    }
}

/// Parallelism propagates to every subsegment pair of the two chains.
fn parallel_extension(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    for rel in &sketch.relations {
        if rel.pred != "Parallel" {
            continue;
        }
        let (Some(l1), Some(l2)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else { continue };
        let (Some(c1), Some(c2)) = (
            sketch.chain_through(l1.point(0), l1.point(1)),
            sketch.chain_through(l2.point(0), l2.point(1)),
        ) else {
            continue;
        };
        if c1 == c2 || c1.iter().any(|p| c2.contains(p)) {
            continue; // degenerate; consistency checking reports it
        }
        for i in 0..c1.len() {
            for j in i + 1..c1.len() {
                for k in 0..c2.len() {
                    for l in k + 1..c2.len() {
                        push(
                            out,
                            sketch,
                            Literal::new(
                                "Parallel",
                                vec![
                                    Arg::lit(line(&c1[i], &c1[j])),
                                    Arg::lit(line(&c2[k], &c2[l])),
                                ],
                            ),
                            "parallel extension",
                        );
                    }
                }
            }
        }
    }
}

/// An angle keeps its identity when an arm point is renamed along its ray:
/// with N on ray MO, the angle OMP is also the angle NMP.
fn angle_renaming(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    for (a, v, b) in &sketch.angles {
        for (arm, other) in [(a, b), (b, a)] {
            let Some(chain) = sketch.chain_through(v, arm) else { continue };
            let (Some(pv), Some(pa)) = (
                chain.iter().position(|p| p == v),
                chain.iter().position(|p| p == arm),
            ) else {
                continue;
            };
            for (px, x) in chain.iter().enumerate() {
                if x == v || x == arm || x == other {
                    continue;
                }
                let same_side = (px > pv) == (pa > pv);
                if !same_side {
                    continue;
                }
                push(
                    out,
                    sketch,
                    Literal::points("Angle", &[x, v, other]),
                    "same angle naming",
                );
            }
        }
    }
}

/// Structural circle facts implied by chord/diameter/radius/inscribed forms.
fn circle_memberships(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    let on_circle = |center: &str, p: &str| {
        Literal::new(
            "PointLiesOnCircle",
            vec![Arg::Id(p.to_string()), Arg::lit(Literal::points("Circle", &[center]))],
        )
    };
    for rel in &sketch.relations {
        match rel.pred.as_str() {
            "IsDiameterOf" | "IsChordOf" => {
                let (Some(l), Some(c)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else {
                    continue;
                };
                let center = c.point(0);
                for p in [l.point(0), l.point(1)] {
                    push(out, sketch, on_circle(center, p), "circle membership");
                }
                if rel.pred == "IsDiameterOf" {
                    push(
                        out,
                        sketch,
                        Literal::new(
                            "PointLiesOnLine",
                            vec![Arg::Id(center.to_string()), Arg::lit(l.clone())],
                        ),
                        "diameter through center",
                    );
                }
            }
            "IsRadiusOf" => {
                let (Some(l), Some(c)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else {
                    continue;
                };
                let center = c.point(0);
                let other = if l.point(0) == center { l.point(1) } else { l.point(0) };
                push(out, sketch, on_circle(center, other), "circle membership");
            }
            "InscribedIn" => {
                let (Some(fig), Some(c)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else {
                    continue;
                };
                if c.pred != "Circle" {
                    continue;
                }
                let center = c.point(0);
                for v in fig.point_ids() {
                    push(out, sketch, on_circle(center, &v), "inscribed vertices");
                }
            }
            "CircumscribedTo" => {
                let (Some(fig), Some(c)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else {
                    continue;
                };
                if c.pred != "Circle" {
                    continue;
                }
                let vs = fig.point_ids();
                let n = vs.len();
                for i in 0..n {
                    push(
                        out,
                        sketch,
                        Literal::new(
                            "Tangent",
                            vec![
                                Arg::lit(line(&vs[i], &vs[(i + 1) % n])),
                                Arg::lit(c.clone()),
                            ],
                        ),
                        "circumscribed tangency",
                    );
                }
            }
            _ => {}
        }
    }
}

/// Every point on a circle sits at radius distance from the center.
fn radius_equalities(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    for (center, info) in &sketch.circles {
        for p in &info.on_points {
            let radius = Literal::new(
                "RadiusOf",
                vec![Arg::lit(Literal::points("Circle", &[center]))],
            );
            push(
                out,
                sketch,
                Literal::new(
                    "Equals",
                    vec![
                        Arg::lit(Literal::new("LengthOf", vec![Arg::lit(line(center, p))])),
                        Arg::lit(radius),
                    ],
                ),
                "radius definition",
            );
        }
    }
}

/// Link the diameter quantity to the radius when the problem mentions it.
fn diameter_definition(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    for center in sketch.circles.keys() {
        let dia = Literal::new(
            "DiameterOf",
            vec![Arg::lit(Literal::points("Circle", &[center]))],
        );
        if sketch.quantity_refs.contains(&crate::formal_lang::canonical_string(&dia)) {
            push(
                out,
                sketch,
                Literal::new(
                    "Equals",
                    vec![
                        Arg::lit(dia.clone()),
                        Arg::lit(Literal::new(
                            "Mul",
                            vec![
                                Arg::Expr("2".to_string()),
                                Arg::lit(Literal::new(
                                    "RadiusOf",
                                    vec![Arg::lit(Literal::points("Circle", &[center]))],
                                )),
                            ],
                        )),
                    ],
                ),
                "diameter definition",
            );
        }
    }
    for rel in &sketch.relations {
        if rel.pred == "IsDiameterOf" {
            let (Some(l), Some(c)) = (rel.args[0].as_lit(), rel.args[1].as_lit()) else {
                continue;
            };
            let center = c.point(0);
            push(
                out,
                sketch,
                Literal::new(
                    "Equals",
                    vec![
                        Arg::lit(Literal::new("LengthOf", vec![Arg::lit(l.clone())])),
                        Arg::lit(Literal::new(
                            "Mul",
                            vec![
                                Arg::Expr("2".to_string()),
                                Arg::lit(Literal::new(
                                    "RadiusOf",
                                    vec![Arg::lit(Literal::points("Circle", &[center]))],
                                )),
                            ],
                        )),
                    ],
                ),
                "diameter definition",
            );
        }
    }
}

fn midpoint_on_line(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    for rel in &sketch.relations {
        if rel.pred == "IsMidpointOf" {
            let (Some(m), Some(l)) = (rel.args[0].as_id(), rel.args[1].as_lit()) else { continue };
            push(
                out,
                sketch,
                Literal::new(
                    "PointLiesOnLine",
                    vec![Arg::Id(m.to_string()), Arg::lit(l.clone())],
                ),
                "midpoint on segment",
            );
        }
    }
}

/// Declared polygons surface their sides and vertex angles as literals.
fn polygon_elements(sketch: &GeometrySketch, out: &mut Vec<Completion>) {
    for pg in &sketch.polygons {
        let n = pg.vertices.len();
        if n < 3 || pg.vertices.iter().collect::<std::collections::BTreeSet<_>>().len() != n {
            continue;
        }
        for i in 0..n {
            push(
                out,
                sketch,
                line(&pg.vertices[i], &pg.vertices[(i + 1) % n]),
                "polygon side",
            );
            push(
                out,
                sketch,
                Literal::points(
                    "Angle",
                    &[
                        &pg.vertices[(i + n - 1) % n],
                        &pg.vertices[i],
                        &pg.vertices[(i + 1) % n],
                    ],
                ),
                "polygon angle",
            );
        }
    }
}
