//! The consolidated symbolic representation of a problem: points, collinear
//! chains with betweenness order, circles, polygons and named relations.

use std::collections::{BTreeMap, BTreeSet};

use crate::formal_lang::{canonical_string, canonicalize, node_key, Arg, Literal};

#[derive(Debug, Clone, Default)]
pub struct CircleInfo {
    /// Expression-level radius name from `Circle(O, r)`, when declared.
    pub radius_name: Option<String>,
    pub on_points: BTreeSet<String>,
}

#[derive(Debug, Clone)]
pub struct PolygonInfo {
    pub kind: String,
    pub vertices: Vec<String>,
    pub literal: Literal,
}

/// One `x strictly between u and v` fact, with the literal asserting it.
#[derive(Debug, Clone)]
pub struct Betweenness {
    pub ends: (String, String),
    pub mid: String,
    pub witness: Literal,
}

#[derive(Debug, Clone, Default)]
pub struct GeometrySketch {
    pub points: BTreeSet<String>,
    /// Maximal collinear chains with a consistent betweenness order.
    /// Plain two-point segments appear as two-element chains.
    pub chains: Vec<Vec<String>>,
    pub segments: BTreeSet<(String, String)>,
    pub circles: BTreeMap<String, CircleInfo>,
    pub polygons: Vec<PolygonInfo>,
    /// All canonical relation literals (facts plus completions).
    pub relations: BTreeSet<Literal>,
    /// Declared and derived Angle(a,v,b) triples, canonicalized.
    pub angles: BTreeSet<(String, String, String)>,
    /// Completions added so far: (literal, generating rule).
    pub derived: Vec<(Literal, &'static str)>,
    /// Canonical node keys of everything the sketch has absorbed.
    pub known: BTreeSet<String>,
    pub betweenness: Vec<Betweenness>,
    /// Chains whose betweenness constraints admit no linear order.
    pub order_conflicts: Vec<Vec<Literal>>,
    /// Canonical quantity literals referenced anywhere (facts or goal),
    /// with circle arguments normalized to their center.
    pub quantity_refs: BTreeSet<String>,
}

impl GeometrySketch {
    pub fn build(facts: &[Literal], goal: Option<&Literal>) -> GeometrySketch {
        let mut sk = GeometrySketch::default();
        for f in facts {
            sk.absorb(f.clone(), None);
        }
        if let Some(g) = goal {
            sk.scan_literal(g);
        }
        sk.rebuild_chains();
        sk
    }

    /// Whether a canonical literal is already part of the sketch.
    pub fn contains(&self, lit: &Literal) -> bool {
        self.known.contains(&node_key(lit))
    }

    /// Whether a literal was added by completion rather than asserted by the
    /// problem. Completion-derived relations carry synthetic endpoint
    /// naming, which some matchers must not read anything into.
    pub fn is_completion(&self, lit: &Literal) -> bool {
        let key = node_key(lit);
        self.derived.iter().any(|(d, _)| node_key(d) == key)
    }

    /// Absorb a literal (fact or completion). Chains must be rebuilt after a
    /// batch of absorptions.
    pub fn absorb(&mut self, lit: Literal, rule: Option<&'static str>) {
        let canon = canonicalize(&lit);
        if !self.known.insert(node_key(&canon)) {
            return;
        }
        if let Some(rule) = rule {
            self.derived.push((canon.clone(), rule));
        }
        self.scan_literal(&canon);
        self.index_literal(&canon);
    }

    /// Register every point, segment, circle and polygon mentioned anywhere.
    fn scan_literal(&mut self, lit: &Literal) {
        if matches!(
            lit.pred.as_str(),
            "LengthOf" | "MeasureOf" | "AreaOf" | "PerimeterOf" | "RadiusOf" | "DiameterOf"
                | "CircumferenceOf"
        ) {
            self.quantity_refs.insert(canonical_string(&normalize_circle_args(lit)));
        }
        match lit.pred.as_str() {
            "Line" if lit.args.len() == 2 => {
                let (a, b) = (lit.point(0).to_string(), lit.point(1).to_string());
                if !a.is_empty() && !b.is_empty() && a != b {
                    self.points.insert(a.clone());
                    self.points.insert(b.clone());
                    self.segments.insert(ordered(a, b));
                }
            }
            "Angle" if lit.args.len() == 3 => {
                let (a, v, b) =
                    (lit.point(0).to_string(), lit.point(1).to_string(), lit.point(2).to_string());
                for p in [&a, &v, &b] {
                    self.points.insert(p.clone());
                }
                if a != v && b != v && a != b {
                    self.segments.insert(ordered(a.clone(), v.clone()));
                    self.segments.insert(ordered(b.clone(), v.clone()));
                    self.angles.insert((a, v, b));
                }
            }
            "Circle" => {
                let center = lit.point(0).to_string();
                if !center.is_empty() {
                    self.points.insert(center.clone());
                    let info = self.circles.entry(center).or_default();
                    if info.radius_name.is_none() {
                        if let Some(arg) = lit.args.get(1) {
                            info.radius_name = Some(match arg {
                                Arg::Id(s) => s.clone(),
                                Arg::Expr(e) => e.clone(),
                                Arg::Lit(l) => canonical_string(l),
                            });
                        }
                    }
                }
            }
            p if crate::formal_lang::catalog::is_polygon_pred(p) => {
                let vertices: Vec<String> =
                    lit.args.iter().filter_map(|a| a.as_id().map(str::to_string)).collect();
                for v in &vertices {
                    self.points.insert(v.clone());
                }
                let n = vertices.len();
                for i in 0..n {
                    let (a, b) = (vertices[i].clone(), vertices[(i + 1) % n].clone());
                    if a != b {
                        self.segments.insert(ordered(a, b));
                    }
                }
                if !self.polygons.iter().any(|pg| pg.literal == *lit) {
                    self.polygons.push(PolygonInfo {
                        kind: p.to_string(),
                        vertices,
                        literal: lit.clone(),
                    });
                }
            }
            _ => {}
        }
        for arg in &lit.args {
            match arg {
                Arg::Lit(inner) => self.scan_literal(inner),
                Arg::Id(s) if lit_arg_is_point(lit, arg) => {
                    self.points.insert(s.clone());
                }
                _ => {}
            }
        }
    }

    /// Relation-level indexing: betweenness, memberships, relation set.
    fn index_literal(&mut self, lit: &Literal) {
        match lit.pred.as_str() {
            "PointLiesOnLine" => {
                if let (Some(x), Some(line)) = (lit.args[0].as_id(), lit.args[1].as_lit()) {
                    let (u, v) = (line.point(0).to_string(), line.point(1).to_string());
                    if x != u && x != v {
                        self.betweenness.push(Betweenness {
                            ends: (u, v),
                            mid: x.to_string(),
                            witness: lit.clone(),
                        });
                    }
                }
            }
            "IsMidpointOf" => {
                if let (Some(m), Some(line)) = (lit.args[0].as_id(), lit.args[1].as_lit()) {
                    let (u, v) = (line.point(0).to_string(), line.point(1).to_string());
                    if m != u && m != v {
                        self.betweenness.push(Betweenness {
                            ends: (u, v),
                            mid: m.to_string(),
                            witness: lit.clone(),
                        });
                    }
                }
            }
            "IsDiameterOf" => {
                if let (Some(line), Some(circle)) = (lit.args[0].as_lit(), lit.args[1].as_lit()) {
                    let (a, b) = (line.point(0).to_string(), line.point(1).to_string());
                    let o = circle.point(0).to_string();
                    if o != a && o != b {
                        self.betweenness.push(Betweenness {
                            ends: (a, b),
                            mid: o,
                            witness: lit.clone(),
                        });
                    }
                }
            }
            "Collinear" => {}
            "PointLiesOnCircle" => {
                if let (Some(p), Some(circle)) = (lit.args[0].as_id(), lit.args[1].as_lit()) {
                    let center = circle.point(0).to_string();
                    self.circles.entry(center).or_default().on_points.insert(p.to_string());
                }
            }
            _ => {}
        }
        if matches!(
            lit.pred.as_str(),
            "Parallel"
                | "Perpendicular"
                | "Tangent"
                | "Secant"
                | "BisectsAngle"
                | "Similar"
                | "Congruent"
                | "IsMidpointOf"
                | "IsDiameterOf"
                | "IsRadiusOf"
                | "IsChordOf"
                | "IsMidsegmentOf"
                | "IsMedianOf"
                | "IsPerpendicularBisectorOf"
                | "InscribedIn"
                | "CircumscribedTo"
                | "PointLiesOnLine"
                | "PointLiesOnCircle"
                | "Equilateral"
                | "Regular"
                | "Collinear"
        ) {
            self.relations.insert(lit.clone());
        }
    }

    /// Recompute maximal collinear chains from segments and betweenness.
    pub fn rebuild_chains(&mut self) {
        self.order_conflicts.clear();
        // Groups start as betweenness triples and Collinear sets; merge any
        // two sharing at least two points (two shared points pin the line).
        let mut groups: Vec<(BTreeSet<String>, Vec<usize>)> = Vec::new();
        for (i, b) in self.betweenness.iter().enumerate() {
            let mut set = BTreeSet::new();
            set.insert(b.ends.0.clone());
            set.insert(b.ends.1.clone());
            set.insert(b.mid.clone());
            groups.push((set, vec![i]));
        }
        for rel in &self.relations {
            if rel.pred == "Collinear" {
                let set: BTreeSet<String> =
                    rel.args.iter().filter_map(|a| a.as_id().map(str::to_string)).collect();
                if set.len() >= 2 {
                    groups.push((set, Vec::new()));
                }
            }
        }
        loop {
            let mut merged = false;
            'outer: for i in 0..groups.len() {
                for j in i + 1..groups.len() {
                    if groups[i].0.intersection(&groups[j].0).count() >= 2 {
                        let (sj, wj) = groups.remove(j);
                        groups[i].0.extend(sj);
                        groups[i].1.extend(wj);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }

        let mut chains: Vec<Vec<String>> = Vec::new();
        for (set, witness_idx) in &groups {
            let members: Vec<String> = set.iter().cloned().collect();
            let constraints: Vec<&Betweenness> =
                witness_idx.iter().map(|&i| &self.betweenness[i]).collect();
            match order_chain(&members, &constraints) {
                Some(order) => chains.push(order),
                None => {
                    self.order_conflicts
                        .push(constraints.iter().map(|b| b.witness.clone()).collect());
                    chains.push(members);
                }
            }
        }
        // Plain segments not swallowed by a collinear group stay as 2-chains.
        for (a, b) in &self.segments {
            if !chains.iter().any(|c| c.contains(a) && c.contains(b)) {
                chains.push(vec![a.clone(), b.clone()]);
            }
        }
        chains.sort();
        self.chains = chains;
    }

    pub fn chain_through(&self, a: &str, b: &str) -> Option<&Vec<String>> {
        self.chains
            .iter()
            .find(|c| c.contains(&a.to_string()) && c.contains(&b.to_string()))
    }

    pub fn collinear(&self, a: &str, b: &str, c: &str) -> bool {
        self.chains.iter().any(|ch| {
            ch.contains(&a.to_string()) && ch.contains(&b.to_string()) && ch.contains(&c.to_string())
        })
    }

    /// `x` strictly between `u` and `v` on some ordered chain.
    pub fn between(&self, u: &str, x: &str, v: &str) -> bool {
        for ch in &self.chains {
            let (pu, px, pv) = (pos(ch, u), pos(ch, x), pos(ch, v));
            if let (Some(pu), Some(px), Some(pv)) = (pu, px, pv) {
                if (pu < px && px < pv) || (pv < px && px < pu) {
                    return true;
                }
            }
        }
        false
    }

    /// A segment between two points exists: named directly or spanned by a
    /// common collinear chain.
    pub fn has_segment(&self, a: &str, b: &str) -> bool {
        if a == b {
            return false;
        }
        self.segments.contains(&ordered(a.to_string(), b.to_string()))
            || self.chain_through(a, b).is_some()
    }

    /// Three pairwise-connected, non-collinear points form a triangle.
    pub fn has_triangle(&self, a: &str, b: &str, c: &str) -> bool {
        a != b
            && b != c
            && a != c
            && self.has_segment(a, b)
            && self.has_segment(b, c)
            && self.has_segment(a, c)
            && !self.collinear(a, b, c)
    }

    /// Declared radius variable name of a circle, if any.
    pub fn radius_name(&self, center: &str) -> Option<&str> {
        self.circles.get(center).and_then(|c| c.radius_name.as_deref())
    }
}

/// Rewrite `Circle(O, r)` to `Circle(O)` inside a quantity literal so that
/// references key on the center alone.
pub fn normalize_circle_args(lit: &Literal) -> Literal {
    let args = lit
        .args
        .iter()
        .map(|a| match a {
            Arg::Lit(inner) if inner.pred == "Circle" && inner.args.len() == 2 => {
                Arg::lit(Literal::new("Circle", vec![inner.args[0].clone()]))
            }
            Arg::Lit(inner) => Arg::lit(normalize_circle_args(inner)),
            other => other.clone(),
        })
        .collect();
    Literal { pred: lit.pred.clone(), args }
}

fn pos(chain: &[String], p: &str) -> Option<usize> {
    chain.iter().position(|x| x == p)
}

pub fn ordered(a: String, b: String) -> (String, String) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn lit_arg_is_point(lit: &Literal, arg: &Arg) -> bool {
    use crate::formal_lang::catalog::{self, Role};
    let Some(info) = catalog::lookup(&lit.pred) else { return true };
    lit.args
        .iter()
        .position(|a| std::ptr::eq(a, arg))
        .map(|i| catalog::role_at(info, i) == Role::Point)
        .unwrap_or(false)
}

/// Lexicographically-least ordering of the members consistent with all
/// betweenness constraints; `None` when the constraints are unsatisfiable.
fn order_chain(members: &[String], constraints: &[&Betweenness]) -> Option<Vec<String>> {
    let n = members.len();
    if n <= 2 {
        return Some(members.to_vec());
    }
    if n > 8 {
        // Past desk scale the factorial search is off the table; keep the
        // set ordering and let betweenness queries fall back to triples.
        return Some(members.to_vec());
    }
    let mut best: Option<Vec<String>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let order: Vec<String> = p.iter().map(|&i| members[i].clone()).collect();
        // Canonical orientation: first endpoint no greater than the last.
        if order.first() > order.last() {
            return;
        }
        let ok = constraints.iter().all(|b| {
            let (pu, px, pv) = (
                pos(&order, &b.ends.0),
                pos(&order, &b.mid),
                pos(&order, &b.ends.1),
            );
            match (pu, px, pv) {
                (Some(u), Some(x), Some(v)) => (u < x && x < v) || (v < x && x < u),
                _ => true,
            }
        });
        if ok && best.as_ref().map(|b| order < *b).unwrap_or(true) {
            best = Some(order);
        }
    });
    best
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}
