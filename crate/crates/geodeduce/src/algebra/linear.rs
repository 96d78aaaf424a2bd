//! Polynomial expansion, exact Gaussian elimination, and minimal sufficient
//! premise sets for linear-system findings.

use std::collections::BTreeMap;

use super::expr::{as_value, normalize, Expr, Value};
use super::symbols::{Domain, SymbolTable, VarId};

/// A monomial: sorted (atom key, atom, exponent) factors. Empty = constant.
pub type Monomial = Vec<(String, Expr, i64)>;

const EXPAND_CAP: usize = 512;

/// Expand a normalized expression into Σ coeff·monomial. Constant factors
/// (rationals, π, surds, tabled trig) fold into the coefficient.
pub fn expand_poly(e: &Expr) -> Option<Vec<(Value, Monomial)>> {
    let n = normalize(e);
    let terms = expand_terms(&n)?;
    // Combine like monomials.
    let mut map: BTreeMap<String, (Value, Monomial)> = BTreeMap::new();
    for (c, m) in terms {
        let key = mono_key(&m);
        match map.get_mut(&key) {
            Some(slot) => slot.0 = slot.0.add(&c),
            None => {
                map.insert(key, (c, m));
            }
        }
    }
    Some(map.into_values().filter(|(c, _)| !c.is_zero()).collect())
}

fn mono_key(m: &Monomial) -> String {
    m.iter()
        .map(|(k, _, e)| format!("{}^{}", k, e))
        .collect::<Vec<_>>()
        .join("*")
}

fn expand_terms(e: &Expr) -> Option<Vec<(Value, Monomial)>> {
    match e {
        Expr::Add(xs) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(expand_terms(x)?);
                if out.len() > EXPAND_CAP {
                    return None;
                }
            }
            Some(out)
        }
        Expr::Mul(xs) => {
            let mut acc: Vec<(Value, Monomial)> = vec![(Value::one(), Vec::new())];
            for x in xs {
                let rhs = expand_terms(x)?;
                let mut next = Vec::new();
                for (ca, ma) in &acc {
                    for (cb, mb) in &rhs {
                        next.push((ca.mul(cb), mono_mul(ma, mb)));
                        if next.len() > EXPAND_CAP {
                            return None;
                        }
                    }
                }
                acc = next;
            }
            Some(acc)
        }
        Expr::Pow(base, exp) => {
            if let Expr::Rat(r) = &**exp {
                if r.is_integer() {
                    if let Some(k) = num_traits::ToPrimitive::to_i64(r) {
                        if k > 0 && k <= 8 {
                            let inner = expand_terms(base)?;
                            let mut acc: Vec<(Value, Monomial)> =
                                vec![(Value::one(), Vec::new())];
                            for _ in 0..k {
                                let mut next = Vec::new();
                                for (ca, ma) in &acc {
                                    for (cb, mb) in &inner {
                                        next.push((ca.mul(cb), mono_mul(ma, mb)));
                                        if next.len() > EXPAND_CAP {
                                            return None;
                                        }
                                    }
                                }
                                acc = next;
                            }
                            return Some(acc);
                        }
                        if k < 0 {
                            return Some(vec![(
                                Value::one(),
                                vec![(atom_key(base), base.as_ref().clone(), k)],
                            )]);
                        }
                    }
                }
            }
            Some(vec![(Value::one(), atom_mono(e))])
        }
        _ => match as_value(e) {
            Some(v) => Some(vec![(v, Vec::new())]),
            None => Some(vec![(Value::one(), atom_mono(e))]),
        },
    }
}

fn atom_mono(e: &Expr) -> Monomial {
    vec![(atom_key(e), e.clone(), 1)]
}

fn atom_key(e: &Expr) -> String {
    super::expr::normal_key(e)
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = a.clone();
    for (k, atom, e) in b {
        match out.iter_mut().find(|(ok, _, _)| ok == k) {
            Some(slot) => slot.2 += e,
            None => out.push((k.clone(), atom.clone(), *e)),
        }
    }
    out.retain(|(_, _, e)| *e != 0);
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Conservatively decide that an expression is strictly positive for every
/// admissible assignment. Nonneg-length and area quantities are treated as
/// positive: named segments of a sound diagram are non-degenerate.
pub fn provably_positive(e: &Expr, st: &SymbolTable) -> bool {
    match e {
        Expr::Rat(r) => num_traits::Signed::is_positive(r),
        Expr::Approx(x) => *x > 0.0,
        Expr::Pi => true,
        Expr::Var(v) => matches!(st.domain(*v), Domain::NonnegLength | Domain::AreaNonneg),
        Expr::Add(xs) => !xs.is_empty() && xs.iter().all(|x| provably_positive(x, st)),
        Expr::Mul(xs) => !xs.is_empty() && xs.iter().all(|x| provably_positive(x, st)),
        Expr::Pow(b, _) => provably_positive(b, st),
        Expr::Func(super::expr::Func::Sqrt, a) => provably_positive(a, st),
        _ => false,
    }
}

/// Multiply away negative-exponent factors whose bases are provably nonzero.
/// Returns the cleared polynomial terms, or `None` when a denominator cannot
/// be discharged.
pub fn clear_denominators(
    residual: &Expr,
    st: &SymbolTable,
) -> Option<Vec<(Value, Monomial)>> {
    let terms = expand_poly(residual)?;
    let mut denoms: Vec<(String, Expr, i64)> = Vec::new();
    for (_, m) in &terms {
        for (k, atom, e) in m {
            if *e < 0 {
                if !atom.free_vars().is_empty() && !provably_positive(atom, st) {
                    return None;
                }
                match denoms.iter_mut().find(|(dk, _, _)| dk == k) {
                    Some(slot) => slot.2 = slot.2.max(-e),
                    None => denoms.push((k.clone(), atom.clone(), -e)),
                }
            }
        }
    }
    if denoms.is_empty() {
        return Some(terms);
    }
    // Multiply every term by each denominator at the monomial level so that
    // S^-1 · S cancels exactly, then re-expand surviving sum powers.
    let mut pieces: Vec<Expr> = Vec::new();
    for (c, m) in &terms {
        let mut mono = m.clone();
        for (dk, datom, dneed) in &denoms {
            match mono.iter_mut().find(|(k, _, _)| k == dk) {
                Some(slot) => slot.2 += dneed,
                None => mono.push((dk.clone(), datom.clone(), *dneed)),
            }
        }
        mono.retain(|(_, _, e)| *e != 0);
        let mut factors = vec![c.to_expr()];
        for (_, atom, e) in &mono {
            factors.push(if *e == 1 {
                atom.clone()
            } else {
                Expr::pow(atom.clone(), Expr::int(*e))
            });
        }
        pieces.push(Expr::Mul(factors));
    }
    let out = expand_poly(&Expr::Add(pieces))?;
    if out.iter().any(|(_, m)| m.iter().any(|(_, _, e)| *e < 0)) {
        return None;
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Linear rows and elimination
// ---------------------------------------------------------------------------

/// Column of a linear system: a true variable or an opaque nonlinear atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Column {
    Var(VarId),
    Atom(String),
}

#[derive(Debug, Clone)]
pub struct LinRow {
    /// Source equation index.
    pub source: usize,
    pub coeffs: BTreeMap<Column, Value>,
    pub constant: Value,
    /// Expression form of each atom column (for reporting).
    pub atoms: BTreeMap<String, Expr>,
}

/// Linearize one residual: degree-1 single-variable monomials become var
/// columns, anything else an opaque atom column.
pub fn linearize(
    source: usize,
    residual: &Expr,
    st: &SymbolTable,
) -> Option<LinRow> {
    let terms = clear_denominators(residual, st)?;
    let mut row = LinRow {
        source,
        coeffs: BTreeMap::new(),
        constant: Value::zero(),
        atoms: BTreeMap::new(),
    };
    for (c, m) in terms {
        if m.is_empty() {
            row.constant = row.constant.add(&c);
            continue;
        }
        let col = if m.len() == 1 && m[0].2 == 1 {
            if let Expr::Var(v) = &m[0].1 {
                Column::Var(*v)
            } else {
                row.atoms.insert(m[0].0.clone(), m[0].1.clone());
                Column::Atom(m[0].0.clone())
            }
        } else {
            let expr = mono_expr(&m);
            let key = mono_key(&m);
            row.atoms.insert(key.clone(), expr);
            Column::Atom(key)
        };
        let slot = row.coeffs.entry(col).or_insert_with(Value::zero);
        *slot = slot.add(&c);
    }
    row.coeffs.retain(|_, v| !v.is_zero());
    Some(row)
}

fn mono_expr(m: &Monomial) -> Expr {
    let factors: Vec<Expr> = m
        .iter()
        .map(|(_, atom, e)| {
            if *e == 1 {
                atom.clone()
            } else {
                Expr::pow(atom.clone(), Expr::int(*e))
            }
        })
        .collect();
    normalize(&Expr::Mul(factors))
}

/// Result of eliminating a set of rows.
#[derive(Debug, Clone)]
pub struct Elimination {
    /// Columns determined to a unique value.
    pub solved: Vec<(Column, Value)>,
    /// Subset of row sources participating in a `0 = c` contradiction.
    pub contradiction: Option<Vec<usize>>,
}

/// Exact Gauss-Jordan over `Value` scalars. Deterministic column order.
pub fn eliminate(rows: &[LinRow]) -> Elimination {
    let mut columns: Vec<Column> = Vec::new();
    for r in rows {
        for c in r.coeffs.keys() {
            if !columns.contains(c) {
                columns.push(c.clone());
            }
        }
    }
    columns.sort();

    // Dense matrix: coefficients then the constant; track source sets per row.
    let n = rows.len();
    let m = columns.len();
    let mut a: Vec<Vec<Value>> = Vec::with_capacity(n);
    let mut src: Vec<Vec<usize>> = Vec::with_capacity(n);
    for r in rows {
        let mut row: Vec<Value> = columns
            .iter()
            .map(|c| r.coeffs.get(c).cloned().unwrap_or_else(Value::zero))
            .collect();
        row.push(r.constant.clone());
        a.push(row);
        src.push(vec![r.source]);
    }

    let tol = 1e-10;
    let nonzero = |v: &Value| match v {
        Value::Rat(r) => !num_traits::Zero::is_zero(r),
        Value::Approx(x) => x.abs() > tol,
    };

    let mut pivot_row = 0usize;
    for col in 0..m {
        let Some(pr) = (pivot_row..n).find(|&r| nonzero(&a[r][col])) else {
            continue;
        };
        a.swap(pivot_row, pr);
        src.swap(pivot_row, pr);
        let p = a[pivot_row][col].clone();
        for v in a[pivot_row].iter_mut() {
            *v = v.div(&p).unwrap_or(Value::Approx(f64::NAN));
        }
        for r in 0..n {
            if r != pivot_row && nonzero(&a[r][col]) {
                let f = a[r][col].clone();
                let pivot = a[pivot_row].clone();
                for (slot, p) in a[r].iter_mut().zip(pivot.iter()) {
                    let delta = p.mul(&f);
                    *slot = slot.add(&delta.neg());
                }
                let merged: Vec<usize> = {
                    let mut s = src[r].clone();
                    for &x in &src[pivot_row] {
                        if !s.contains(&x) {
                            s.push(x);
                        }
                    }
                    s
                };
                src[r] = merged;
            }
        }
        pivot_row += 1;
        if pivot_row == n {
            break;
        }
    }

    let mut solved = Vec::new();
    let mut contradiction = None;
    for r in 0..n {
        let nz: Vec<usize> = (0..m).filter(|&c| nonzero(&a[r][c])).collect();
        if nz.is_empty() {
            if nonzero(&a[r][m]) && contradiction.is_none() {
                let mut s = src[r].clone();
                s.sort_unstable();
                contradiction = Some(s);
            }
            continue;
        }
        if nz.len() == 1 {
            let c = nz[0];
            // a[r][c] is 1 after Jordan steps; value = -constant.
            solved.push((columns[c].clone(), a[r][m].neg()));
        }
    }
    solved.sort_by(|x, y| x.0.cmp(&y.0));
    Elimination { solved, contradiction }
}

/// Does the subset of rows determine `col = value` on its own?
pub fn subset_determines(rows: &[LinRow], subset: &[usize], col: &Column, value: &Value) -> bool {
    let picked: Vec<LinRow> = subset.iter().map(|&i| rows[i].clone()).collect();
    let elim = eliminate(&picked);
    elim.solved
        .iter()
        .any(|(c, v)| c == col && v.approx_eq(value))
}

/// Advance `combo` to the next k-combination of `0..n` in lexicographic
/// order; false when exhausted.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] != i + n - k {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest-cardinality subset of `candidates` (indices into `rows`) that
/// still determines `col = value`. Exact search by ascending size; falls back
/// to a greedy shrink when the search budget runs out.
pub fn minimal_premises(
    rows: &[LinRow],
    candidates: &[usize],
    col: &Column,
    value: &Value,
    budget: &mut usize,
) -> (Vec<usize>, bool) {
    let n = candidates.len();
    for k in 1..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if *budget == 0 {
                return (greedy_shrink(rows, candidates, col, value), false);
            }
            *budget -= 1;
            let subset: Vec<usize> = combo.iter().map(|&i| candidates[i]).collect();
            if subset_determines(rows, &subset, col, value) {
                return (subset, true);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    (greedy_shrink(rows, candidates, col, value), false)
}

fn greedy_shrink(rows: &[LinRow], candidates: &[usize], col: &Column, value: &Value) -> Vec<usize> {
    let mut keep: Vec<usize> = candidates.to_vec();
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if subset_determines(rows, &trial, col, value) {
            keep = trial;
        } else {
            i += 1;
        }
    }
    keep
}

/// Smallest subset of rows that is inconsistent on its own.
pub fn minimal_infeasible(rows: &[LinRow], sources: &[usize], budget: &mut usize) -> Vec<usize> {
    let idx: Vec<usize> =
        (0..rows.len()).filter(|&i| sources.contains(&rows[i].source)).collect();
    for k in 1..=idx.len() {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if *budget == 0 {
                return sources.to_vec();
            }
            *budget -= 1;
            let picked: Vec<LinRow> = combo.iter().map(|&i| rows[idx[i]].clone()).collect();
            if eliminate(&picked).contradiction.is_some() {
                return combo.iter().map(|&i| rows[idx[i]].source).collect();
            }
            if !next_combination(&mut combo, idx.len()) {
                break;
            }
        }
    }
    sources.to_vec()
}
