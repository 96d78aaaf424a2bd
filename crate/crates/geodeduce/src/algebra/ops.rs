//! The four atomic algebraic-reasoning operations, plus the randomized
//! numeric oracle used to sanity-check derived equations.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::equation::Equation;
use super::expr::{as_value, normalize, Expr, Value};
use super::linear::{
    clear_denominators, eliminate, linearize, minimal_infeasible, minimal_premises, Column,
    LinRow,
};
use super::symbols::{SymbolTable, VarId, VarKind};

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraError {
    /// The operation has nothing to do on this input.
    NotApplicable,
    NoRealSolution,
    /// Real roots exist but all violate the variable's domain; the caller
    /// treats this as a geometric contradiction.
    DomainEmpty,
    /// The system admits no solution; indices name a minimal infeasible set.
    Inconsistent { premises: Vec<usize> },
}

impl std::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraError::NotApplicable => write!(f, "not applicable"),
            AlgebraError::NoRealSolution => write!(f, "no real solution"),
            AlgebraError::DomainEmpty => write!(f, "all roots violate the variable domain"),
            AlgebraError::Inconsistent { premises } => {
                write!(f, "inconsistent system (minimal infeasible set {:?})", premises)
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

// ---------------------------------------------------------------------------
// Bindings and substitution
// ---------------------------------------------------------------------------

/// How usable a substitution source is; better classes are preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BindingClass {
    /// `v = 9.6` — a single numeral.
    Numeral,
    /// `v = 3 + 3/5` — constant but structured.
    ConstExpr,
    /// `PQ = x` — a quantity named by a problem-text variable.
    UserVar,
    /// `MP = 5 + x` — general expression not containing `v`.
    General,
}

#[derive(Debug, Clone)]
pub struct Binding {
    pub var: VarId,
    pub replacement: Expr,
    pub class: BindingClass,
}

/// Extract the substitution reading of an equation, if it has one.
pub fn binding_of(eq: &Equation, st: &SymbolTable) -> Option<Binding> {
    let sides = [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)];
    // Both sides bare variables: replace the geometric quantity by the
    // problem-text variable; same-kind pairs are transitivity's business.
    if let (Expr::Var(a), Expr::Var(b)) = (&eq.lhs, &eq.rhs) {
        if a == b {
            return None;
        }
        let (ka, kb) = (st.kind(*a), st.kind(*b));
        let user_like = |k: VarKind| matches!(k, VarKind::User);
        return match (user_like(ka), user_like(kb)) {
            (true, false) => Some(Binding { var: *b, replacement: Expr::Var(*a), class: BindingClass::UserVar }),
            (false, true) => Some(Binding { var: *a, replacement: Expr::Var(*b), class: BindingClass::UserVar }),
            _ => None,
        };
    }
    for (bare, other) in sides {
        if let Expr::Var(v) = bare {
            if other.contains_var(*v) {
                continue;
            }
            let class = if other.is_numeral() {
                BindingClass::Numeral
            } else if as_value(other).is_some() {
                BindingClass::ConstExpr
            } else {
                BindingClass::General
            };
            return Some(Binding { var: *v, replacement: other.clone(), class });
        }
    }
    None
}

/// Equivalent substitution: rewrite `target` using `source` read as `v = e`.
/// The result keeps its plugged-in presentation; nothing is folded.
pub fn substitute(target: &Equation, source: &Equation, st: &SymbolTable) -> Result<Equation, AlgebraError> {
    let b = binding_of(source, st).ok_or(AlgebraError::NotApplicable)?;
    let mut hit = false;
    let out = substitute_vars(target, &mut |v| {
        if v == b.var {
            hit = true;
            Some(b.replacement.clone())
        } else {
            None
        }
    });
    if !hit {
        return Err(AlgebraError::NotApplicable);
    }
    Ok(out)
}

/// Simultaneous substitution of several bindings into a target.
pub fn substitute_vars(target: &Equation, map: &mut dyn FnMut(VarId) -> Option<Expr>) -> Equation {
    Equation::new(
        target.lhs.substitute(&mut |v| map(v)),
        target.rhs.substitute(&mut |v| map(v)),
    )
}

/// Constant evaluation: fold every fully constant composite subterm.
/// Exact over rationals; π, surds and off-table trig go approximate.
pub fn evaluate_constants(eq: &Equation) -> Result<Equation, AlgebraError> {
    let mut changed = false;
    let lhs = fold_subterms(&eq.lhs, &mut changed);
    let rhs = fold_subterms(&eq.rhs, &mut changed);
    if !changed {
        return Err(AlgebraError::NotApplicable);
    }
    Ok(Equation::new(lhs, rhs))
}

fn fold_subterms(e: &Expr, changed: &mut bool) -> Expr {
    if !e.is_numeral() && matches!(e, Expr::Rat(_) | Expr::Approx(_) | Expr::Pi) {
        // π alone stays symbolic at this level; only composites fold.
    }
    let is_composite = !matches!(e, Expr::Rat(_) | Expr::Approx(_) | Expr::Var(_));
    if is_composite {
        if let Some(v) = as_value(e) {
            *changed = true;
            return v.to_expr();
        }
    }
    match e {
        Expr::Add(xs) => Expr::Add(xs.iter().map(|x| fold_subterms(x, changed)).collect()),
        Expr::Mul(xs) => Expr::Mul(xs.iter().map(|x| fold_subterms(x, changed)).collect()),
        Expr::Sub(a, b) => Expr::sub(fold_subterms(a, changed), fold_subterms(b, changed)),
        Expr::Div(a, b) => Expr::div(fold_subterms(a, changed), fold_subterms(b, changed)),
        Expr::Neg(a) => Expr::Neg(Box::new(fold_subterms(a, changed))),
        Expr::Pow(a, b) => Expr::pow(fold_subterms(a, changed), fold_subterms(b, changed)),
        Expr::Func(f, a) => Expr::Func(*f, Box::new(fold_subterms(a, changed))),
        _ => e.clone(),
    }
}

// ---------------------------------------------------------------------------
// Univariate solving
// ---------------------------------------------------------------------------

/// All in-domain real roots of an equation in exactly one unknown, each as
/// `value = v`. Degree ≤ 2 is closed-form; otherwise sign-change bracketing
/// on a 1024-cell domain grid refined by bisection.
pub fn solve_univariate(
    eq: &Equation,
    v: VarId,
    st: &SymbolTable,
) -> Result<Vec<Equation>, AlgebraError> {
    if eq.free_vars() != vec![v] {
        return Err(AlgebraError::NotApplicable);
    }
    let residual = eq.residual();
    let domain = st.domain(v);

    let mut roots: Vec<Value> = Vec::new();

    if let Some(coeffs) = poly_coeffs(&residual, v, st) {
        match coeffs.len() {
            0 | 1 => return Err(AlgebraError::NotApplicable),
            2 => {
                // b + a v = 0
                let r = coeffs[0].neg().div(&coeffs[1]).ok_or(AlgebraError::NoRealSolution)?;
                roots.push(r);
            }
            3 => {
                let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
                let disc = b.mul(b).add(&Value::Rat(super::expr::rat_i(-4)).mul(&a.mul(c)));
                if disc.to_f64() < -1e-12 {
                    return Err(AlgebraError::NoRealSolution);
                }
                let sq = value_sqrt(&disc);
                let two_a = Value::Rat(super::expr::rat_i(2)).mul(a);
                for sign in [1.0f64, -1.0] {
                    let signed = if sign > 0.0 { sq.clone() } else { sq.neg() };
                    if let Some(r) = b.neg().add(&signed).div(&two_a) {
                        if !roots.iter().any(|x| x.approx_eq(&r)) {
                            roots.push(r);
                        }
                    }
                }
            }
            _ => bracket_roots(&residual, v, domain.bounds(), &mut roots),
        }
    } else {
        bracket_roots(&residual, v, domain.bounds(), &mut roots);
    }
    let any_real = !roots.is_empty();

    let in_domain: Vec<Value> =
        roots.into_iter().filter(|r| domain.contains(r.to_f64())).collect();
    if in_domain.is_empty() {
        return if any_real {
            Err(AlgebraError::DomainEmpty)
        } else {
            Err(AlgebraError::NoRealSolution)
        };
    }
    Ok(in_domain
        .into_iter()
        .map(|r| Equation::new(r.to_expr(), Expr::Var(v)))
        .collect())
}

fn value_sqrt(v: &Value) -> Value {
    if let Value::Rat(r) = v {
        let half = super::expr::rat(1, 2);
        if let Expr::Rat(exact) = normalize(&Expr::pow(Expr::Rat(r.clone()), Expr::Rat(half))) {
            return Value::Rat(exact);
        }
    }
    Value::Approx(v.to_f64().max(0.0).sqrt())
}

/// Polynomial degree of an equation in `v` after clearing denominators,
/// `None` when it is not polynomial (e.g. trigonometric).
pub fn univariate_degree(eq: &Equation, v: VarId, st: &SymbolTable) -> Option<usize> {
    poly_coeffs(&eq.residual(), v, st).map(|c| c.len().saturating_sub(1))
}

/// Dense coefficient vector (index = degree) if the residual is a polynomial
/// in `v` after clearing denominators.
fn poly_coeffs(residual: &Expr, v: VarId, st: &SymbolTable) -> Option<Vec<Value>> {
    let terms = clear_denominators(residual, st)?;
    let mut coeffs: Vec<Value> = Vec::new();
    for (c, m) in terms {
        let deg = match m.len() {
            0 => 0usize,
            1 => {
                let (_, atom, e) = &m[0];
                if *atom != Expr::Var(v) || *e < 0 {
                    return None;
                }
                *e as usize
            }
            _ => return None,
        };
        if deg > 8 {
            return None;
        }
        while coeffs.len() <= deg {
            coeffs.push(Value::zero());
        }
        coeffs[deg] = coeffs[deg].add(&c);
    }
    while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    Some(coeffs)
}

fn bracket_roots(residual: &Expr, v: VarId, bounds: (f64, f64), out: &mut Vec<Value>) {
    let (lo, hi) = bounds;
    let cells = 1024usize;
    let step = (hi - lo) / cells as f64;
    let f = |x: f64| residual.eval(&|u| (u == v).then_some(x));
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=cells {
        let x = lo + step * i as f64;
        let Some(y) = f(x) else {
            prev = None;
            continue;
        };
        if y.abs() < 1e-12 {
            push_root(out, x);
            prev = Some((x, y));
            continue;
        }
        if let Some((px, py)) = prev {
            if py.signum() != y.signum() {
                if let Some(r) = bisect(&f, px, x) {
                    push_root(out, r);
                }
            }
        }
        prev = Some((x, y));
    }
}

fn bisect(f: &dyn Fn(f64) -> Option<f64>, mut a: f64, mut b: f64) -> Option<f64> {
    let mut fa = f(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm.abs() < 1e-15 || (b - a).abs() < 1e-12 {
            return Some(m);
        }
        if fa.signum() != fm.signum() {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Some(0.5 * (a + b))
}

fn push_root(out: &mut Vec<Value>, x: f64) {
    let snapped = snap(x);
    if !out.iter().any(|r| (r.to_f64() - snapped.to_f64()).abs() < 1e-7) {
        out.push(snapped);
    }
}

/// Snap a float to a nearby small rational when it is within bisection noise.
fn snap(x: f64) -> Value {
    for den in [1i64, 2, 3, 4, 5, 6, 8, 10, 100, 1000] {
        let scaled = x * den as f64;
        if (scaled - scaled.round()).abs() < 1e-9 && scaled.abs() < 1e15 {
            return Value::Rat(super::expr::rat(scaled.round() as i64, den));
        }
    }
    Value::Approx(x)
}

// ---------------------------------------------------------------------------
// Linear system solving
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum FindingKind {
    /// A true variable got a numeric value.
    VarValue(VarId),
    /// An opaque nonlinear atom got a value; univariate solving follows up.
    AtomValue(Expr),
}

#[derive(Debug, Clone)]
pub struct LinearFinding {
    pub kind: FindingKind,
    pub value: Value,
    /// `value = unknown`, presentation-ordered.
    pub equation: Equation,
    /// Indices into the input equation slice: a minimal sufficient set.
    pub premises: Vec<usize>,
    /// False when the search budget forced a greedy (unproven) premise set.
    pub minimal_proven: bool,
}

/// Solve the linear system formed by the equations (nonlinear monomials are
/// opaque atoms). Each newly determined binding comes with a minimal
/// sufficient premise set, found by exact search over subset cardinalities.
pub fn solve_linear_system(
    eqs: &[Equation],
    st: &SymbolTable,
) -> Result<Vec<LinearFinding>, AlgebraError> {
    let mut rows: Vec<LinRow> = Vec::new();
    for (i, eq) in eqs.iter().enumerate() {
        if let Some(row) = linearize(i, &eq.residual(), st) {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(AlgebraError::NotApplicable);
    }

    let elim = eliminate(&rows);
    if let Some(sources) = elim.contradiction {
        let mut budget = 200_000usize;
        let minimal = minimal_infeasible(&rows, &sources, &mut budget);
        return Err(AlgebraError::Inconsistent { premises: minimal });
    }

    // A variable presented as `v = numeral` by some input is already known.
    let mut already: Vec<VarId> = Vec::new();
    for eq in eqs {
        if let Some((v, _)) = eq.as_numeral_binding() {
            already.push(v);
        }
    }

    let mut findings = Vec::new();
    let mut budget = 200_000usize;
    for (col, value) in &elim.solved {
        let (kind, unknown_expr) = match col {
            Column::Var(v) => {
                if already.contains(v) {
                    continue;
                }
                (FindingKind::VarValue(*v), Expr::Var(*v))
            }
            Column::Atom(key) => {
                let Some(expr) = rows.iter().find_map(|r| r.atoms.get(key)) else {
                    continue;
                };
                if expr.free_vars().is_empty() {
                    continue;
                }
                (FindingKind::AtomValue(expr.clone()), expr.clone())
            }
        };
        // Restrict the premise search to rows connected to the target column.
        let relevant = connected_rows(&rows, col);
        let (premises_rows, proven) = minimal_premises(&rows, &relevant, col, value, &mut budget);
        let mut premises: Vec<usize> = premises_rows.iter().map(|&r| rows[r].source).collect();
        premises.sort_unstable();
        findings.push(LinearFinding {
            kind,
            value: value.clone(),
            equation: Equation::new(value.to_expr(), unknown_expr),
            premises,
            minimal_proven: proven,
        });
    }
    if findings.is_empty() {
        return Err(AlgebraError::NotApplicable);
    }
    Ok(findings)
}

/// Rows transitively connected to `col` through shared columns.
fn connected_rows(rows: &[LinRow], col: &Column) -> Vec<usize> {
    let mut cols: Vec<Column> = vec![col.clone()];
    let mut picked: Vec<usize> = Vec::new();
    loop {
        let mut grew = false;
        for (i, r) in rows.iter().enumerate() {
            if picked.contains(&i) {
                continue;
            }
            if r.coeffs.keys().any(|c| cols.contains(c)) {
                picked.push(i);
                for c in r.coeffs.keys() {
                    if !cols.contains(c) {
                        cols.push(c.clone());
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    picked.sort_unstable();
    picked
}

/// Propagate domains across bare-variable equalities to fixpoint, so a
/// problem-text variable equated to a length is solved as a length.
pub fn propagate_domains(eqs: &[Equation], st: &SymbolTable) {
    loop {
        let mut changed = false;
        for eq in eqs {
            if let (Expr::Var(a), Expr::Var(b)) = (&eq.lhs, &eq.rhs) {
                let (da, db) = (st.domain(*a), st.domain(*b));
                if da == super::symbols::Domain::Free && db != super::symbols::Domain::Free {
                    st.refine_domain(*a, db);
                    changed = true;
                } else if db == super::symbols::Domain::Free
                    && da != super::symbols::Domain::Free
                {
                    st.refine_domain(*b, da);
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Numeric oracle
// ---------------------------------------------------------------------------

/// True iff |lhs − rhs| < 1e-9 at `trials` random in-domain assignments of
/// all free symbols. Non-finite evaluations are resampled.
pub fn numeric_check(eq: &Equation, trials: usize, st: &SymbolTable) -> bool {
    let mut rng = StdRng::seed_from_u64(0x67656f64);
    numeric_check_rng(eq, trials, st, &mut rng)
}

pub fn numeric_check_rng(eq: &Equation, trials: usize, st: &SymbolTable, rng: &mut StdRng) -> bool {
    let vars = eq.free_vars();
    for _ in 0..trials {
        let mut ok = false;
        for _attempt in 0..32 {
            let env: std::collections::HashMap<VarId, f64> = vars
                .iter()
                .map(|&v| {
                    let (lo, hi) = st.domain(v).bounds();
                    let hi = hi.min(lo + 1000.0);
                    (v, rng.gen_range(lo..hi))
                })
                .collect();
            let l = eq.lhs.eval(&|v| env.get(&v).copied());
            let r = eq.rhs.eval(&|v| env.get(&v).copied());
            match (l, r) {
                (Some(l), Some(r)) => {
                    if (l - r).abs() >= 1e-9 {
                        return false;
                    }
                    ok = true;
                    break;
                }
                _ => continue,
            }
        }
        if !ok {
            return false;
        }
    }
    true
}
