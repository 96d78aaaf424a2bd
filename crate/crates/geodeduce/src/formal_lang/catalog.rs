//! Predicate catalog: names, arities and argument roles.

/// Role a predicate expects at a given argument position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// A point identifier.
    Point,
    /// A `Line(..)` literal.
    Line,
    /// A `Circle(..)` literal.
    Circle,
    /// An `Angle(..)` literal.
    Angle,
    /// Any figure literal (polygon, circle, arc, sector, shape, line).
    Figure,
    /// A value: expression, identifier or quantity literal.
    Value,
}

pub struct PredInfo {
    pub name: &'static str,
    pub min_args: usize,
    pub max_args: usize,
    /// Roles by position; the last role repeats for variadic predicates.
    pub roles: &'static [Role],
    /// Accepted in user-facing problem text (engine-internal predicates are not).
    pub public: bool,
}

use Role::*;

pub const CATALOG: &[PredInfo] = &[
    PredInfo { name: "Line", min_args: 2, max_args: 2, roles: &[Point, Point], public: true },
    PredInfo { name: "Angle", min_args: 1, max_args: 3, roles: &[Point, Point, Point], public: true },
    PredInfo { name: "Triangle", min_args: 3, max_args: 3, roles: &[Point], public: true },
    PredInfo { name: "Quadrilateral", min_args: 4, max_args: 4, roles: &[Point], public: true },
    PredInfo { name: "Parallelogram", min_args: 4, max_args: 4, roles: &[Point], public: true },
    PredInfo { name: "Square", min_args: 4, max_args: 4, roles: &[Point], public: true },
    PredInfo { name: "Rectangle", min_args: 4, max_args: 4, roles: &[Point], public: true },
    PredInfo { name: "Rhombus", min_args: 4, max_args: 4, roles: &[Point], public: true },
    PredInfo { name: "Trapezoid", min_args: 4, max_args: 4, roles: &[Point], public: true },
    PredInfo { name: "Kite", min_args: 4, max_args: 4, roles: &[Point], public: true },
    PredInfo { name: "Polygon", min_args: 3, max_args: 12, roles: &[Point], public: true },
    PredInfo { name: "Pentagon", min_args: 5, max_args: 5, roles: &[Point], public: true },
    PredInfo { name: "Hexagon", min_args: 6, max_args: 6, roles: &[Point], public: true },
    PredInfo { name: "Heptagon", min_args: 7, max_args: 7, roles: &[Point], public: true },
    PredInfo { name: "Octagon", min_args: 8, max_args: 8, roles: &[Point], public: true },
    PredInfo { name: "Circle", min_args: 1, max_args: 2, roles: &[Point, Value], public: true },
    PredInfo { name: "Arc", min_args: 2, max_args: 3, roles: &[Point], public: true },
    PredInfo { name: "Sector", min_args: 3, max_args: 3, roles: &[Point], public: true },
    PredInfo { name: "Shape", min_args: 1, max_args: 12, roles: &[Value], public: true },
    PredInfo { name: "Equilateral", min_args: 1, max_args: 1, roles: &[Figure], public: true },
    PredInfo { name: "Regular", min_args: 1, max_args: 1, roles: &[Figure], public: true },
    PredInfo { name: "AreaOf", min_args: 1, max_args: 1, roles: &[Figure], public: true },
    PredInfo { name: "PerimeterOf", min_args: 1, max_args: 1, roles: &[Figure], public: true },
    PredInfo { name: "RadiusOf", min_args: 1, max_args: 1, roles: &[Circle], public: true },
    PredInfo { name: "DiameterOf", min_args: 1, max_args: 1, roles: &[Circle], public: true },
    PredInfo { name: "CircumferenceOf", min_args: 1, max_args: 1, roles: &[Circle], public: true },
    PredInfo { name: "MeasureOf", min_args: 1, max_args: 1, roles: &[Figure], public: true },
    PredInfo { name: "LengthOf", min_args: 1, max_args: 1, roles: &[Line], public: true },
    PredInfo { name: "PointLiesOnLine", min_args: 2, max_args: 2, roles: &[Point, Line], public: true },
    PredInfo { name: "PointLiesOnCircle", min_args: 2, max_args: 2, roles: &[Point, Circle], public: true },
    PredInfo { name: "Parallel", min_args: 2, max_args: 2, roles: &[Line, Line], public: true },
    PredInfo { name: "Perpendicular", min_args: 2, max_args: 2, roles: &[Line, Line], public: true },
    PredInfo { name: "BisectsAngle", min_args: 2, max_args: 2, roles: &[Line, Angle], public: true },
    PredInfo { name: "Congruent", min_args: 2, max_args: 2, roles: &[Figure, Figure], public: true },
    PredInfo { name: "Similar", min_args: 2, max_args: 2, roles: &[Figure, Figure], public: true },
    PredInfo { name: "Tangent", min_args: 2, max_args: 2, roles: &[Line, Circle], public: true },
    PredInfo { name: "Secant", min_args: 2, max_args: 2, roles: &[Line, Circle], public: true },
    PredInfo { name: "CircumscribedTo", min_args: 2, max_args: 2, roles: &[Figure, Figure], public: true },
    PredInfo { name: "InscribedIn", min_args: 2, max_args: 2, roles: &[Figure, Figure], public: true },
    PredInfo { name: "IsMidpointOf", min_args: 2, max_args: 2, roles: &[Point, Line], public: true },
    PredInfo { name: "IsCentroidOf", min_args: 2, max_args: 2, roles: &[Point, Figure], public: true },
    PredInfo { name: "IsIncenterOf", min_args: 2, max_args: 2, roles: &[Point, Figure], public: true },
    PredInfo { name: "IsRadiusOf", min_args: 2, max_args: 2, roles: &[Line, Circle], public: true },
    PredInfo { name: "IsDiameterOf", min_args: 2, max_args: 2, roles: &[Line, Circle], public: true },
    PredInfo { name: "IsMidsegmentOf", min_args: 2, max_args: 2, roles: &[Line, Figure], public: true },
    PredInfo { name: "IsChordOf", min_args: 2, max_args: 2, roles: &[Line, Circle], public: true },
    PredInfo { name: "IsPerpendicularBisectorOf", min_args: 2, max_args: 2, roles: &[Line, Line], public: true },
    PredInfo { name: "IsMedianOf", min_args: 2, max_args: 2, roles: &[Line, Figure], public: true },
    PredInfo { name: "SinOf", min_args: 1, max_args: 1, roles: &[Value], public: true },
    PredInfo { name: "CosOf", min_args: 1, max_args: 1, roles: &[Value], public: true },
    PredInfo { name: "TanOf", min_args: 1, max_args: 1, roles: &[Value], public: true },
    PredInfo { name: "CotOf", min_args: 1, max_args: 1, roles: &[Value], public: true },
    PredInfo { name: "HalfOf", min_args: 1, max_args: 1, roles: &[Value], public: true },
    PredInfo { name: "SqrtOf", min_args: 1, max_args: 1, roles: &[Value], public: true },
    PredInfo { name: "RatioOf", min_args: 2, max_args: 2, roles: &[Value], public: true },
    PredInfo { name: "Add", min_args: 2, max_args: 12, roles: &[Value], public: true },
    PredInfo { name: "Mul", min_args: 2, max_args: 12, roles: &[Value], public: true },
    PredInfo { name: "Sub", min_args: 2, max_args: 2, roles: &[Value], public: true },
    PredInfo { name: "Div", min_args: 2, max_args: 2, roles: &[Value], public: true },
    PredInfo { name: "Pow", min_args: 2, max_args: 2, roles: &[Value], public: true },
    PredInfo { name: "Equals", min_args: 2, max_args: 2, roles: &[Value], public: true },
    PredInfo { name: "Find", min_args: 1, max_args: 1, roles: &[Value], public: true },
    // Engine-internal predicates; never accepted from user input.
    PredInfo { name: "Collinear", min_args: 3, max_args: 12, roles: &[Point], public: false },
    PredInfo { name: "SimRatio", min_args: 2, max_args: 2, roles: &[Figure], public: false },
];

pub fn lookup(name: &str) -> Option<&'static PredInfo> {
    CATALOG.iter().find(|p| p.name == name)
}

pub fn role_at(info: &PredInfo, idx: usize) -> Role {
    *info.roles.get(idx).unwrap_or_else(|| info.roles.last().unwrap())
}

/// Predicates whose literal denotes a polygon, keyed with vertex count bounds.
pub fn polygon_sides(pred: &str) -> Option<usize> {
    match pred {
        "Triangle" => Some(3),
        "Quadrilateral" | "Parallelogram" | "Square" | "Rectangle" | "Rhombus" | "Trapezoid"
        | "Kite" => Some(4),
        "Pentagon" => Some(5),
        "Hexagon" => Some(6),
        "Heptagon" => Some(7),
        "Octagon" => Some(8),
        _ => None,
    }
}

/// True for `Polygon(..)` or any named polygon predicate.
pub fn is_polygon_pred(pred: &str) -> bool {
    pred == "Polygon" || polygon_sides(pred).is_some()
}
