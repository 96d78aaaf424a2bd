//! The geometry formal language: parsing, canonicalization and printing.
//!
//! A problem is a set of literals, one per line, such as
//! `Equals(LengthOf(Line(A,B)),10)` plus exactly one `Find(..)` goal.
//! Literals are canonicalized so that symmetric spellings (`Line(B,A)`,
//! `Angle(C,B,A)`, rotated polygon cycles) collapse to a single form, which
//! is what the proof hypergraph uses for node identity.

pub mod catalog;
mod parser;

pub use parser::{parse_literal, parse_logic_form, LogicForm, ParseOptions};

use std::fmt;

/// One argument of a literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arg {
    /// Uppercase-initial identifier: a point or label.
    Id(String),
    /// A nested logic form.
    Lit(Box<Literal>),
    /// A raw expression token, handed to the algebra module verbatim.
    Expr(String),
}

impl Arg {
    pub fn lit(l: Literal) -> Arg {
        Arg::Lit(Box::new(l))
    }

    pub fn as_id(&self) -> Option<&str> {
        match self {
            Arg::Id(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_lit(&self) -> Option<&Literal> {
        match self {
            Arg::Lit(l) => Some(l),
            _ => None,
        }
    }
}

/// A formal-language statement: predicate applied to arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub pred: String,
    pub args: Vec<Arg>,
}

impl Literal {
    pub fn new(pred: &str, args: Vec<Arg>) -> Literal {
        Literal { pred: pred.to_string(), args }
    }

    /// Convenience constructor for point-argument literals.
    pub fn points(pred: &str, pts: &[&str]) -> Literal {
        Literal::new(pred, pts.iter().map(|p| Arg::Id(p.to_string())).collect())
    }

    pub fn point(&self, idx: usize) -> &str {
        self.args[idx].as_id().unwrap_or("")
    }

    /// All point identifiers mentioned anywhere in this literal.
    pub fn point_ids(&self) -> Vec<String> {
        let mut out = Vec::new();
        collect_points(self, &mut out);
        out
    }

    pub fn is(&self, pred: &str) -> bool {
        self.pred == pred
    }
}

fn collect_points(lit: &Literal, out: &mut Vec<String>) {
    let info = catalog::lookup(&lit.pred);
    for (i, arg) in lit.args.iter().enumerate() {
        match arg {
            Arg::Id(s) => {
                let is_point = info
                    .map(|inf| catalog::role_at(inf, i) == catalog::Role::Point)
                    .unwrap_or(true);
                if is_point && !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Arg::Lit(inner) => collect_points(inner, out),
            Arg::Expr(_) => {}
        }
    }
}

/// Canonicalize a literal: recursively canonicalize arguments, then apply the
/// predicate's symmetry normalization. Idempotent.
pub fn canonicalize(lit: &Literal) -> Literal {
    // Correspondence predicates pair vertices positionally, so their figure
    // arguments must not be cycle-normalized independently.
    if matches!(lit.pred.as_str(), "Similar" | "Congruent" | "SimRatio") {
        if let Some(pair) = canonical_correspondence(&lit.args) {
            return Literal { pred: lit.pred.clone(), args: pair };
        }
    }
    let args: Vec<Arg> = lit
        .args
        .iter()
        .map(|a| match a {
            Arg::Lit(inner) => Arg::lit(canonicalize(inner)),
            other => other.clone(),
        })
        .collect();
    let mut out = Literal { pred: lit.pred.clone(), args };

    match out.pred.as_str() {
        // Unordered endpoints.
        "Line" => sort_args(&mut out.args),
        // Minor arc and sector are unordered in their endpoint pair;
        // Arc(A,B,C) is direction-disambiguated and left alone.
        "Arc" if out.args.len() == 2 => sort_args(&mut out.args),
        "Sector" => {
            let tail = &mut out.args[1..];
            tail.sort();
        }
        // Angle(A,B,C) keeps its vertex fixed; reverse iff it lowers the form.
        "Angle" if out.args.len() == 3 => {
            if out.args[2] < out.args[0] {
                out.args.swap(0, 2);
            }
        }
        // Polygons: lexicographically minimal cycle over rotations/reflections.
        p if catalog::is_polygon_pred(p) || p == "Collinear" => {
            out.args = min_cycle(&out.args);
        }
        // Symmetric binary relations.
        "Parallel" | "Perpendicular" => sort_args(&mut out.args),
        _ => {}
    }
    out
}

fn sort_args(args: &mut [Arg]) {
    args.sort_by_key(print_arg);
}

/// All rotations and reflections of a vertex cycle; returns the minimal one.
fn min_cycle(args: &[Arg]) -> Vec<Arg> {
    let n = args.len();
    let mut best: Option<Vec<Arg>> = None;
    for rev in [false, true] {
        let base: Vec<Arg> = if rev {
            args.iter().rev().cloned().collect()
        } else {
            args.to_vec()
        };
        for start in 0..n {
            let cand: Vec<Arg> = (0..n).map(|i| base[(start + i) % n].clone()).collect();
            if best.as_ref().map(|b| cand < *b).unwrap_or(true) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_else(|| args.to_vec())
}

/// Joint canonicalization for `Similar`/`Congruent`: the same rotation or
/// reflection is applied to both figures, and the pair may be swapped.
fn canonical_correspondence(args: &[Arg]) -> Option<Vec<Arg>> {
    if args.len() != 2 {
        return None;
    }
    let (a, b) = (args[0].as_lit()?, args[1].as_lit()?);
    if a.args.len() != b.args.len() || a.args.is_empty() {
        return None;
    }
    let n = a.args.len();
    let mut best: Option<(String, Vec<Arg>)> = None;
    for (x, y) in [(a, b), (b, a)] {
        for rev in [false, true] {
            for start in 0..n {
                let transform = |lit: &Literal| -> Literal {
                    let src: Vec<Arg> = if rev {
                        lit.args.iter().rev().cloned().collect()
                    } else {
                        lit.args.clone()
                    };
                    let cycled: Vec<Arg> =
                        (0..n).map(|i| src[(start + i) % n].clone()).collect();
                    Literal { pred: lit.pred.clone(), args: cycled }
                };
                let (tx, ty) = (transform(x), transform(y));
                let cand = vec![Arg::lit(tx), Arg::lit(ty)];
                let key = format!("{},{}", print_arg(&cand[0]), print_arg(&cand[1]));
                if best.as_ref().map(|(k, _)| key < *k).unwrap_or(true) {
                    best = Some((key, cand));
                }
            }
        }
    }
    best.map(|(_, v)| v)
}

/// Print a literal in the interchange syntax. The output re-parses to a
/// literal with the same canonical form.
pub fn print_literal(lit: &Literal) -> String {
    let mut s = String::new();
    write_literal(lit, &mut s);
    s
}

fn write_literal(lit: &Literal, out: &mut String) {
    out.push_str(&lit.pred);
    out.push('(');
    for (i, arg) in lit.args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        match arg {
            Arg::Id(s) => out.push_str(s),
            Arg::Expr(e) => out.push_str(e),
            Arg::Lit(inner) => write_literal(inner, out),
        }
    }
    out.push(')');
}

fn print_arg(arg: &Arg) -> String {
    match arg {
        Arg::Id(s) => s.clone(),
        Arg::Expr(e) => e.clone(),
        Arg::Lit(l) => print_literal(l),
    }
}

/// Canonical interchange string: `print_literal` of the canonical form.
pub fn canonical_string(lit: &Literal) -> String {
    print_literal(&canonicalize(lit))
}

/// Node-identity key. Equals literals are keyed orientation-free so that a
/// flipped equation maps to the same hypergraph node.
pub fn node_key(lit: &Literal) -> String {
    let c = canonicalize(lit);
    if c.pred == "Equals" && c.args.len() == 2 {
        let a = print_arg(&c.args[0]);
        let b = print_arg(&c.args[1]);
        if b < a {
            return format!("Equals({},{})", b, a);
        }
        return format!("Equals({},{})", a, b);
    }
    print_literal(&c)
}

/// Errors from the formal-language front end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LangError {
    Syntax { pos: usize, expected: String },
    UnknownPredicate { name: String, pos: usize },
    ArityMismatch { pred: String, got: usize, expected: String },
    InvalidArgument { pred: String, index: usize, expected: String },
    MissingGoal,
    MultipleGoals,
    /// A parse error tagged with its 1-based source line.
    AtLine { line: usize, inner: Box<LangError> },
    /// Bare identifiers and top-level expressions parse but are not facts.
    NotAFact { line: usize, text: String },
}

impl fmt::Display for LangError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LangError::Syntax { pos, expected } => {
                write!(f, "syntax error at position {}: expected {}", pos, expected)
            }
            LangError::UnknownPredicate { name, pos } => {
                write!(f, "unknown predicate `{}` at position {}", name, pos)
            }
            LangError::ArityMismatch { pred, got, expected } => {
                write!(f, "predicate `{}` takes {} arguments, got {}", pred, expected, got)
            }
            LangError::InvalidArgument { pred, index, expected } => {
                write!(f, "argument {} of `{}` must be {}", index + 1, pred, expected)
            }
            LangError::MissingGoal => write!(f, "no Find(..) goal in problem"),
            LangError::MultipleGoals => write!(f, "more than one Find(..) goal in problem"),
            LangError::AtLine { line, inner } => write!(f, "line {}: {}", line, inner),
            LangError::NotAFact { line, text } => {
                write!(f, "line {}: `{}` is not a valid problem fact", line, text)
            }
        }
    }
}

impl std::error::Error for LangError {}

/// A parsed problem: deduplicated canonical facts plus the goal term.
#[derive(Debug, Clone)]
pub struct Formalization {
    /// Canonical facts, in first-seen order.
    pub facts: Vec<Literal>,
    /// The target term inside the single `Find(..)`.
    pub goal: Literal,
}

impl Formalization {
    pub fn goal_arg(&self) -> &Arg {
        &self.goal.args[0]
    }
}

/// Parse a whole problem: one literal per line, `#` comments and blank lines
/// skipped, exactly one `Find(..)`.
pub fn parse_problem(text: &str) -> Result<Formalization, LangError> {
    let mut facts: Vec<Literal> = Vec::new();
    let mut seen: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut goal: Option<Literal> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let form = parse_logic_form(line, &ParseOptions::default())
            .map_err(|e| LangError::AtLine { line: idx + 1, inner: Box::new(e) })?;
        let lit = match form {
            LogicForm::Literal(l) => l,
            LogicForm::Bare(_) | LogicForm::Expr(_) => {
                return Err(LangError::NotAFact { line: idx + 1, text: line.to_string() })
            }
        };
        if lit.pred == "Find" {
            if goal.is_some() {
                return Err(LangError::MultipleGoals);
            }
            goal = Some(canonicalize(&lit));
            continue;
        }
        let canon = canonicalize(&lit);
        let key = print_literal(&canon);
        if seen.insert(key) {
            facts.push(canon);
        }
    }

    match goal {
        Some(goal) => Ok(Formalization { facts, goal }),
        None => Err(LangError::MissingGoal),
    }
}
