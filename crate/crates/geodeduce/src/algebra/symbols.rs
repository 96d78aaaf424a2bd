//! Quantity variables and the per-problem symbol table.

use crate::formal_lang::{canonical_string, Literal};
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

/// Value domain of a quantity, used to filter roots and to sample
/// assignments for numeric checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    NonnegLength,
    AngleDeg,
    ArcDeg,
    AreaNonneg,
    Free,
}

impl Domain {
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Domain::NonnegLength => (0.0, 1.0e6),
            Domain::AngleDeg => (0.0, 180.0),
            Domain::ArcDeg => (0.0, 360.0),
            Domain::AreaNonneg => (0.0, 1.0e12),
            Domain::Free => (-1.0e6, 1.0e6),
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        let (lo, hi) = self.bounds();
        v >= lo - 1e-9 && v <= hi + 1e-9
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// Named geometric quantity (length, measure, area, ...).
    Quantity,
    /// A variable written in the problem text (`x`).
    User,
    /// Engine-introduced variable (similarity ratio, `$` placeholder).
    Fresh,
}

#[derive(Debug, Clone)]
pub struct VarInfo {
    pub key: String,
    pub display: String,
    pub domain: Domain,
    pub kind: VarKind,
    /// Originating quantity literal, when there is one.
    pub origin: Option<Literal>,
}

#[derive(Default)]
struct Tab {
    vars: Vec<VarInfo>,
    by_key: HashMap<String, u32>,
    /// Expression-level names that resolve to an existing quantity key,
    /// e.g. the `r` of `Circle(O,r)` resolving to the radius of O.
    aliases: HashMap<String, String>,
    placeholders: u32,
    sim_ratios: u32,
}

/// Append-only registry mapping canonical quantity literals and user names to
/// variables. Interior mutability so concurrent matchers can register vars.
#[derive(Default)]
pub struct SymbolTable {
    inner: Mutex<Tab>,
}

impl SymbolTable {
    pub fn new() -> SymbolTable {
        SymbolTable::default()
    }

    fn intern(&self, key: String, mk: impl FnOnce() -> VarInfo) -> VarId {
        let mut t = self.inner.lock().unwrap();
        if let Some(&id) = t.by_key.get(&key) {
            return VarId(id);
        }
        let id = t.vars.len() as u32;
        t.vars.push(mk());
        t.by_key.insert(key, id);
        VarId(id)
    }

    /// Variable for a quantity literal such as `LengthOf(Line(A,B))`.
    pub fn quantity(&self, lit: &Literal) -> VarId {
        let canon = crate::formal_lang::canonicalize(lit);
        let key = quantity_key(&canon);
        let display = quantity_display(&canon);
        let domain = quantity_domain(&canon);
        self.intern(key.clone(), || VarInfo {
            key,
            display,
            domain,
            kind: VarKind::Quantity,
            origin: Some(canon.clone()),
        })
    }

    /// Variable for a name appearing in expression text.
    pub fn user(&self, name: &str) -> VarId {
        let resolved = {
            let t = self.inner.lock().unwrap();
            t.aliases.get(name).cloned()
        };
        if let Some(key) = resolved {
            let t = self.inner.lock().unwrap();
            if let Some(&id) = t.by_key.get(&key) {
                return VarId(id);
            }
        }
        let key = format!("user:{}", name);
        let name = name.to_string();
        self.intern(key.clone(), || VarInfo {
            key,
            display: name,
            domain: Domain::Free,
            kind: VarKind::User,
            origin: None,
        })
    }

    /// Declare that expression-level `name` denotes the same quantity as
    /// `lit` (used for `Circle(O,r)` radius names).
    pub fn alias(&self, name: &str, lit: &Literal) {
        let id = self.quantity(lit);
        let key = self.info(id).key;
        let mut t = self.inner.lock().unwrap();
        t.aliases.insert(name.to_string(), key);
    }

    /// Variable standing for a compound goal term (e.g. a difference of
    /// areas), keyed by the term's canonical literal.
    pub fn target(&self, term: &Literal) -> VarId {
        let canon = crate::formal_lang::canonicalize(term);
        let key = format!("target:{}", canonical_string(&canon));
        self.intern(key.clone(), || VarInfo {
            key,
            display: "target".to_string(),
            domain: Domain::Free,
            kind: VarKind::Fresh,
            origin: Some(canon.clone()),
        })
    }

    /// Fresh placeholder variable for a `$` token.
    pub fn placeholder(&self) -> VarId {
        let n = {
            let mut t = self.inner.lock().unwrap();
            t.placeholders += 1;
            t.placeholders
        };
        let key = format!("placeholder:{}", n);
        self.intern(key.clone(), || VarInfo {
            key,
            display: format!("${}", n),
            domain: Domain::Free,
            kind: VarKind::Fresh,
            origin: None,
        })
    }

    /// Similarity-ratio variable for a figure pair; named deterministically
    /// in registration order (`sim_ratio`, `sim_ratio_2`, ...).
    pub fn sim_ratio(&self, pair: &Literal) -> VarId {
        let key = canonical_string(pair);
        {
            let t = self.inner.lock().unwrap();
            if let Some(&id) = t.by_key.get(&key) {
                return VarId(id);
            }
        }
        let n = {
            let mut t = self.inner.lock().unwrap();
            t.sim_ratios += 1;
            t.sim_ratios
        };
        let display = if n == 1 { "sim_ratio".to_string() } else { format!("sim_ratio_{}", n) };
        let origin = pair.clone();
        self.intern(key.clone(), || VarInfo {
            key,
            display,
            domain: Domain::NonnegLength,
            kind: VarKind::Fresh,
            origin: Some(origin),
        })
    }

    pub fn info(&self, id: VarId) -> VarInfo {
        self.inner.lock().unwrap().vars[id.0 as usize].clone()
    }

    pub fn display(&self, id: VarId) -> String {
        self.inner.lock().unwrap().vars[id.0 as usize].display.clone()
    }

    pub fn domain(&self, id: VarId) -> Domain {
        self.inner.lock().unwrap().vars[id.0 as usize].domain
    }

    pub fn kind(&self, id: VarId) -> VarKind {
        self.inner.lock().unwrap().vars[id.0 as usize].kind
    }

    /// Narrow a free variable's domain once its geometric meaning is known
    /// (e.g. `x = PQ` makes `x` a nonnegative length). Explicit domains are
    /// never overridden.
    pub fn refine_domain(&self, id: VarId, domain: Domain) {
        let mut t = self.inner.lock().unwrap();
        let info = &mut t.vars[id.0 as usize];
        if info.domain == Domain::Free && domain != Domain::Free {
            info.domain = domain;
        }
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Existing variable for a quantity literal, if registered.
    pub fn lookup_quantity(&self, lit: &Literal) -> Option<VarId> {
        let canon = crate::formal_lang::canonicalize(lit);
        let key = quantity_key(&canon);
        self.inner.lock().unwrap().by_key.get(&key).map(|&id| VarId(id))
    }
}

fn quantity_key(canon: &Literal) -> String {
    // Circle radius/diameter/circumference are keyed by center so that
    // `Circle(O)` and `Circle(O,r)` refer to the same quantities.
    match canon.pred.as_str() {
        "RadiusOf" | "DiameterOf" | "CircumferenceOf" => {
            if let Some(circle) = canon.args[0].as_lit() {
                return format!("{}(Circle({}))", canon.pred, circle.point(0));
            }
            canonical_string(canon)
        }
        _ => canonical_string(canon),
    }
}

fn quantity_display(canon: &Literal) -> String {
    match canon.pred.as_str() {
        "LengthOf" => canon.args[0]
            .as_lit()
            .map(|l| format!("{}{}", l.point(0), l.point(1)))
            .unwrap_or_else(|| canonical_string(canon)),
        "MeasureOf" => match canon.args[0].as_lit() {
            Some(l) if l.pred == "Angle" => {
                let pts: Vec<&str> = l.args.iter().filter_map(|a| a.as_id()).collect();
                format!("∠{}", pts.join(""))
            }
            Some(l) if l.pred == "Arc" => {
                let pts: Vec<&str> = l.args.iter().filter_map(|a| a.as_id()).collect();
                format!("arc {}", pts.join(""))
            }
            _ => canonical_string(canon),
        },
        "AreaOf" => format!("area({})", figure_display(canon.args[0].as_lit())),
        "PerimeterOf" => format!("perimeter({})", figure_display(canon.args[0].as_lit())),
        "RadiusOf" => format!("radius_{}", circle_center(canon)),
        "DiameterOf" => format!("diameter_{}", circle_center(canon)),
        "CircumferenceOf" => format!("circumference_{}", circle_center(canon)),
        _ => canonical_string(canon),
    }
}

fn circle_center(canon: &Literal) -> String {
    canon.args[0].as_lit().map(|c| c.point(0).to_string()).unwrap_or_default()
}

pub fn figure_display(lit: Option<&Literal>) -> String {
    let Some(lit) = lit else { return "?".to_string() };
    let pts: Vec<&str> = lit.args.iter().filter_map(|a| a.as_id()).collect();
    match lit.pred.as_str() {
        "Triangle" => format!("△{}", pts.join("")),
        "Circle" => format!("⊙{}", lit.point(0)),
        "Angle" => format!("∠{}", pts.join("")),
        "Line" => pts.join(""),
        "Arc" => format!("arc {}", pts.join("")),
        "Sector" => format!("sector {}", pts.join("")),
        "Shape" => format!("shape({})", pts.join("")),
        _ => format!("{} {}", lit.pred.to_lowercase(), pts.join("")),
    }
}

fn quantity_domain(canon: &Literal) -> Domain {
    match canon.pred.as_str() {
        "LengthOf" | "PerimeterOf" | "RadiusOf" | "DiameterOf" | "CircumferenceOf" => {
            Domain::NonnegLength
        }
        "AreaOf" => Domain::AreaNonneg,
        "MeasureOf" => match canon.args[0].as_lit().map(|l| l.pred.as_str()) {
            Some("Arc") => Domain::ArcDeg,
            _ => Domain::AngleDeg,
        },
        _ => Domain::Free,
    }
}
