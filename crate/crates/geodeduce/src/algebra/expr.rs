//! Symbolic expressions over exact rationals, π, quantity variables and
//! degree-valued trigonometric functions.
//!
//! Two layers coexist:
//!
//! * the *presentation* tree, kept exactly as derived (`6 + (3 + 3/5)` stays
//!   unfolded) so rendered steps show the arithmetic the way it was built;
//! * the *normal form* (`normalize`), which flattens sums/products, sorts
//!   operands, collects like terms and folds rational constants exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt::Write as _;

use super::symbols::{SymbolTable, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Cot,
    Sqrt,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn apply_deg(&self, x: f64) -> f64 {
        let r = x.to_radians();
        match self {
            Func::Sin => r.sin(),
            Func::Cos => r.cos(),
            Func::Tan => r.tan(),
            Func::Cot => r.cos() / r.sin(),
            Func::Sqrt => x.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rat(BigRational),
    Approx(f64),
    Pi,
    Var(VarId),
    Add(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Func(Func, Box<Expr>),
}

pub fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[allow(clippy::should_implement_trait)] // constructors, not arithmetic on self
impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Rat(rat_i(n))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::Rat(rat(n, d))
    }

    pub fn var(v: VarId) -> Expr {
        Expr::Var(v)
    }

    pub fn add2(a: Expr, b: Expr) -> Expr {
        Expr::Add(vec![a, b])
    }

    pub fn mul2(a: Expr, b: Expr) -> Expr {
        Expr::Mul(vec![a, b])
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn sqrt(a: Expr) -> Expr {
        Expr::Func(Func::Sqrt, Box::new(a))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Rat(r) if r.is_one())
    }

    /// A single numeral (exact rational or tagged float), possibly negated.
    pub fn is_numeral(&self) -> bool {
        match self {
            Expr::Rat(_) | Expr::Approx(_) => true,
            Expr::Neg(x) => x.is_numeral(),
            _ => false,
        }
    }

    pub fn free_vars(&self) -> Vec<VarId> {
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if !out.contains(&v) {
                out.push(v);
            }
        });
        out.sort();
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(VarId)) {
        match self {
            Expr::Var(v) => f(*v),
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.visit_vars(f)),
            Expr::Sub(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            Expr::Neg(a) | Expr::Func(_, a) => a.visit_vars(f),
            Expr::Rat(_) | Expr::Approx(_) | Expr::Pi => {}
        }
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        let mut found = false;
        self.visit_vars(&mut |x| found |= x == v);
        found
    }

    /// Replace variables by expressions, keeping presentation structure.
    pub fn substitute(&self, map: &mut dyn FnMut(VarId) -> Option<Expr>) -> Expr {
        match self {
            Expr::Var(v) => map(*v).unwrap_or_else(|| self.clone()),
            Expr::Add(xs) => Expr::Add(xs.iter().map(|x| x.substitute(map)).collect()),
            Expr::Mul(xs) => Expr::Mul(xs.iter().map(|x| x.substitute(map)).collect()),
            Expr::Sub(a, b) => Expr::sub(a.substitute(map), b.substitute(map)),
            Expr::Div(a, b) => Expr::div(a.substitute(map), b.substitute(map)),
            Expr::Pow(a, b) => Expr::pow(a.substitute(map), b.substitute(map)),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(map))),
            Expr::Func(f, a) => Expr::Func(*f, Box::new(a.substitute(map))),
            _ => self.clone(),
        }
    }

    /// Evaluate at a full assignment. `None` on unbound vars or non-finite
    /// intermediate values.
    pub fn eval(&self, env: &dyn Fn(VarId) -> Option<f64>) -> Option<f64> {
        let v = match self {
            Expr::Rat(r) => r.to_f64()?,
            Expr::Approx(x) => *x,
            Expr::Pi => std::f64::consts::PI,
            Expr::Var(v) => env(*v)?,
            Expr::Add(xs) => {
                let mut s = 0.0;
                for x in xs {
                    s += x.eval(env)?;
                }
                s
            }
            Expr::Mul(xs) => {
                let mut p = 1.0;
                for x in xs {
                    p *= x.eval(env)?;
                }
                p
            }
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Div(a, b) => a.eval(env)? / b.eval(env)?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Pow(a, b) => a.eval(env)?.powf(b.eval(env)?),
            Expr::Func(f, a) => f.apply_deg(a.eval(env)?),
        };
        v.is_finite().then_some(v)
    }
}

// ---------------------------------------------------------------------------
// Exact/approximate scalar values
// ---------------------------------------------------------------------------

/// A fully evaluated constant: exact rational or tagged approximate float.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Rat(BigRational),
    Approx(f64),
}

#[allow(clippy::should_implement_trait)] // value arithmetic, deliberately method-call style
impl Value {
    pub fn zero() -> Value {
        Value::Rat(BigRational::zero())
    }

    pub fn one() -> Value {
        Value::Rat(BigRational::one())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rat(r) => r.is_zero(),
            Value::Approx(x) => x.abs() < 1e-12,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Rat(_))
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Rat(r) => Value::Rat(-r.clone()),
            Value::Approx(x) => Value::Approx(-x),
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            _ => Value::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            _ => Value::Approx(self.to_f64() * other.to_f64()),
        }
    }

    pub fn div(&self, other: &Value) -> Option<Value> {
        if other.is_zero() {
            return None;
        }
        Some(match (self, other) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a / b),
            _ => Value::Approx(self.to_f64() / other.to_f64()),
        })
    }

    pub fn to_expr(&self) -> Expr {
        match self {
            Value::Rat(r) => Expr::Rat(r.clone()),
            Value::Approx(x) => Expr::Approx(*x),
        }
    }

    /// Equality at the engine tolerance: 1e-6 relative, 1e-9 absolute.
    pub fn approx_eq(&self, other: &Value) -> bool {
        if let (Value::Rat(a), Value::Rat(b)) = (self, other) {
            return a == b;
        }
        let (a, b) = (self.to_f64(), other.to_f64());
        let diff = (a - b).abs();
        diff <= 1e-9 || diff <= 1e-6 * a.abs().max(b.abs())
    }
}

// ---------------------------------------------------------------------------
// Normal form
// ---------------------------------------------------------------------------

/// Structural ordering used to sort operands deterministically.
pub fn expr_cmp(a: &Expr, b: &Expr) -> Ordering {
    fn rank(e: &Expr) -> u8 {
        match e {
            Expr::Rat(_) => 0,
            Expr::Approx(_) => 1,
            Expr::Pi => 2,
            Expr::Var(_) => 3,
            Expr::Func(..) => 4,
            Expr::Pow(..) => 5,
            Expr::Mul(_) => 6,
            Expr::Add(_) => 7,
            Expr::Neg(_) => 8,
            Expr::Sub(..) => 9,
            Expr::Div(..) => 10,
        }
    }
    match (a, b) {
        (Expr::Rat(x), Expr::Rat(y)) => x.cmp(y),
        (Expr::Approx(x), Expr::Approx(y)) => x.total_cmp(y),
        (Expr::Var(x), Expr::Var(y)) => x.cmp(y),
        (Expr::Func(f, x), Expr::Func(g, y)) => f.cmp(g).then_with(|| expr_cmp(x, y)),
        (Expr::Pow(x1, e1), Expr::Pow(x2, e2)) => {
            expr_cmp(x1, x2).then_with(|| expr_cmp(e1, e2))
        }
        (Expr::Add(xs), Expr::Add(ys)) | (Expr::Mul(xs), Expr::Mul(ys)) => {
            for (x, y) in xs.iter().zip(ys.iter()) {
                let c = expr_cmp(x, y);
                if c != Ordering::Equal {
                    return c;
                }
            }
            xs.len().cmp(&ys.len())
        }
        (Expr::Sub(a1, b1), Expr::Sub(a2, b2)) | (Expr::Div(a1, b1), Expr::Div(a2, b2)) => {
            expr_cmp(a1, a2).then_with(|| expr_cmp(b1, b2))
        }
        (Expr::Neg(x), Expr::Neg(y)) => expr_cmp(x, y),
        _ => rank(a).cmp(&rank(b)),
    }
}

/// Full normal form: Sub/Div/Neg eliminated, sums and products flattened and
/// sorted, rational constants folded exactly, like terms collected.
pub fn normalize(e: &Expr) -> Expr {
    match e {
        Expr::Rat(_) | Expr::Approx(_) | Expr::Pi | Expr::Var(_) => e.clone(),
        Expr::Neg(a) => normalize(&Expr::mul2(Expr::int(-1), (**a).clone())),
        Expr::Sub(a, b) => normalize(&Expr::add2(
            (**a).clone(),
            Expr::mul2(Expr::int(-1), (**b).clone()),
        )),
        Expr::Div(a, b) => normalize(&Expr::mul2(
            (**a).clone(),
            Expr::pow((**b).clone(), Expr::int(-1)),
        )),
        Expr::Add(xs) => normalize_add(xs),
        Expr::Mul(xs) => normalize_mul(xs),
        Expr::Pow(a, b) => normalize_pow(&normalize(a), &normalize(b)),
        Expr::Func(f, a) => normalize_func(*f, &normalize(a)),
    }
}

fn normalize_add(xs: &[Expr]) -> Expr {
    // term monomial -> coefficient
    let mut constant = BigRational::zero();
    let mut approx = 0.0f64;
    let mut has_approx = false;
    let mut terms: Vec<(String, BigRational, Expr)> = Vec::new();

    let push_term = |coeff: BigRational, mono: Expr, terms: &mut Vec<(String, BigRational, Expr)>| {
        let key = raw_key(&mono);
        if let Some(t) = terms.iter_mut().find(|t| t.0 == key) {
            t.1 += coeff;
        } else {
            terms.push((key, coeff, mono));
        }
    };

    let mut stack: Vec<Expr> = xs.iter().rev().map(normalize).collect();
    while let Some(x) = stack.pop() {
        match x {
            Expr::Add(inner) => stack.extend(inner.into_iter().rev()),
            Expr::Rat(r) => constant += r,
            Expr::Approx(v) => {
                approx += v;
                has_approx = true;
            }
            other => {
                let (coeff, mono) = split_coeff(other);
                push_term(coeff, mono, &mut terms);
            }
        }
    }

    let mut out: Vec<Expr> = Vec::new();
    if has_approx {
        out.push(Expr::Approx(approx + constant.to_f64().unwrap_or(0.0)));
    } else if !constant.is_zero() {
        out.push(Expr::Rat(constant));
    }
    terms.retain(|t| !t.1.is_zero());
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, coeff, mono) in terms {
        if coeff.is_one() {
            out.push(mono);
        } else {
            out.push(attach_coeff(coeff, mono));
        }
    }
    match out.len() {
        0 => Expr::int(0),
        1 => out.pop().unwrap(),
        _ => Expr::Add(out),
    }
}

/// Split a normalized non-sum term into (rational coefficient, monomial).
fn split_coeff(e: Expr) -> (BigRational, Expr) {
    match e {
        Expr::Mul(xs) => {
            let mut coeff = BigRational::one();
            let mut rest: Vec<Expr> = Vec::new();
            for x in xs {
                match x {
                    Expr::Rat(r) => coeff *= r,
                    other => rest.push(other),
                }
            }
            let mono = match rest.len() {
                0 => Expr::int(1),
                1 => rest.pop().unwrap(),
                _ => Expr::Mul(rest),
            };
            (coeff, mono)
        }
        Expr::Rat(r) => (r, Expr::int(1)),
        other => (BigRational::one(), other),
    }
}

fn attach_coeff(coeff: BigRational, mono: Expr) -> Expr {
    if mono.is_one() {
        return Expr::Rat(coeff);
    }
    match mono {
        Expr::Mul(mut xs) => {
            let mut v = vec![Expr::Rat(coeff)];
            v.append(&mut xs);
            Expr::Mul(v)
        }
        other => Expr::Mul(vec![Expr::Rat(coeff), other]),
    }
}

fn normalize_mul(xs: &[Expr]) -> Expr {
    let mut coeff = BigRational::one();
    let mut approx = 1.0f64;
    let mut has_approx = false;
    // base key -> (base, exponent sum) for rational exponents; sums included
    // so that S · S^-1 cancels.
    let mut powers: Vec<(String, Expr, BigRational)> = Vec::new();
    let mut opaque: Vec<Expr> = Vec::new();

    let mut stack: Vec<Expr> = xs.iter().rev().map(normalize).collect();
    while let Some(x) = stack.pop() {
        match x {
            Expr::Mul(inner) => stack.extend(inner.into_iter().rev()),
            Expr::Rat(r) => {
                if r.is_zero() {
                    return Expr::int(0);
                }
                coeff *= r;
            }
            Expr::Approx(v) => {
                approx *= v;
                has_approx = true;
            }
            Expr::Pow(b, e) => {
                if let Expr::Rat(er) = &*e {
                    merge_power(&mut powers, (*b).clone(), er.clone());
                } else {
                    opaque.push(Expr::Pow(b, e));
                }
            }
            other => merge_power(&mut powers, other, BigRational::one()),
        }
    }

    let mut factors: Vec<Expr> = Vec::new();
    for (_, base, exp) in powers {
        if exp.is_zero() {
            continue;
        }
        let f = normalize_pow(&base, &Expr::Rat(exp));
        match f {
            Expr::Rat(r) => coeff *= r,
            Expr::Approx(v) => {
                approx *= v;
                has_approx = true;
            }
            other => factors.push(other),
        }
    }
    factors.extend(opaque);
    factors.sort_by_key(raw_key);

    // Distribute a scalar over a lone sum so that -(a+b) and 2(a+b) flatten.
    if factors.len() == 1 {
        if let Expr::Add(terms) = &factors[0] {
            let scalar: Expr = if has_approx {
                Expr::Approx(approx * coeff.to_f64().unwrap_or(1.0))
            } else {
                Expr::Rat(coeff.clone())
            };
            if !scalar.is_one() {
                let spread: Vec<Expr> =
                    terms.iter().map(|t| Expr::mul2(scalar.clone(), t.clone())).collect();
                return normalize_add(&spread);
            }
        }
    }

    let mut out: Vec<Expr> = Vec::new();
    if has_approx {
        out.push(Expr::Approx(approx * coeff.to_f64().unwrap_or(1.0)));
    } else if !coeff.is_one() {
        out.push(Expr::Rat(coeff));
    }
    out.extend(factors);
    match out.len() {
        0 => Expr::int(1),
        1 => out.pop().unwrap(),
        _ => Expr::Mul(out),
    }
}

fn merge_power(powers: &mut Vec<(String, Expr, BigRational)>, base: Expr, exp: BigRational) {
    let key = raw_key(&base);
    if let Some(p) = powers.iter_mut().find(|p| p.0 == key) {
        p.2 += exp;
    } else {
        powers.push((key, base, exp));
    }
}

fn normalize_pow(base: &Expr, exp: &Expr) -> Expr {
    if exp.is_zero() {
        return Expr::int(1);
    }
    if exp.is_one() {
        return base.clone();
    }
    if let (Expr::Rat(b), Expr::Rat(e)) = (base, exp) {
        if e.is_integer() {
            if let Some(k) = e.to_i64() {
                if k.unsigned_abs() <= 64 {
                    let p = pow_rat(b, k.unsigned_abs() as u32);
                    if k >= 0 {
                        return Expr::Rat(p);
                    } else if !p.is_zero() {
                        return Expr::Rat(p.recip());
                    }
                }
            }
        }
        // Rational square roots of perfect squares fold exactly.
        if *e == rat(1, 2) && !b.is_negative() {
            if let (Some(n), Some(d)) = (sqrt_exact(b.numer()), sqrt_exact(b.denom())) {
                return Expr::Rat(BigRational::new(n, d));
            }
        }
    }
    if let Expr::Pow(b2, e2) = base {
        if let (Expr::Rat(x), Expr::Rat(y)) = (&**e2, exp) {
            return normalize_pow(b2, &Expr::Rat(x * y));
        }
    }
    // Integer powers of products distribute for like-term collection.
    if let (Expr::Mul(fs), Expr::Rat(e)) = (base, exp) {
        if e.is_integer() {
            let parts: Vec<Expr> =
                fs.iter().map(|f| Expr::pow(f.clone(), Expr::Rat(e.clone()))).collect();
            return normalize(&Expr::Mul(parts));
        }
    }
    if let (Expr::Approx(x), Expr::Rat(e)) = (base, exp) {
        return Expr::Approx(x.powf(e.to_f64().unwrap_or(f64::NAN)));
    }
    Expr::Pow(Box::new(base.clone()), Box::new(exp.clone()))
}

fn pow_rat(b: &BigRational, k: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= b;
    }
    out
}

fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn normalize_func(f: Func, arg: &Expr) -> Expr {
    if f == Func::Sqrt {
        return normalize_pow(arg, &Expr::Rat(rat(1, 2)));
    }
    if let Expr::Rat(deg) = arg {
        if let Some(exact) = exact_trig(f, deg) {
            return exact;
        }
    }
    if let Expr::Approx(x) = arg {
        return Expr::Approx(f.apply_deg(*x));
    }
    Expr::Func(f, Box::new(arg.clone()))
}

/// Exact values of the trig functions at the standard degree arguments.
fn exact_trig(f: Func, deg: &BigRational) -> Option<Expr> {
    let d = deg.to_i64()?;
    if !deg.is_integer() || !(0..=360).contains(&d) {
        return None;
    }
    let sqrt_of = |n: i64| normalize_pow(&Expr::int(n), &Expr::Rat(rat(1, 2)));
    let half_sqrt = |n: i64| normalize(&Expr::mul2(Expr::frac(1, 2), sqrt_of(n)));
    let sin = |d: i64| -> Option<Expr> {
        match d {
            0 | 180 | 360 => Some(Expr::int(0)),
            30 | 150 => Some(Expr::frac(1, 2)),
            45 | 135 => Some(half_sqrt(2)),
            60 | 120 => Some(half_sqrt(3)),
            90 => Some(Expr::int(1)),
            210 | 330 => Some(Expr::frac(-1, 2)),
            270 => Some(Expr::int(-1)),
            _ => None,
        }
    };
    match f {
        Func::Sin => sin(d),
        Func::Cos => sin((d + 90) % 360),
        Func::Tan => match d {
            0 | 180 | 360 => Some(Expr::int(0)),
            45 | 225 => Some(Expr::int(1)),
            135 | 315 => Some(Expr::int(-1)),
            30 | 210 => Some(normalize(&Expr::mul2(Expr::frac(1, 3), sqrt_of(3)))),
            60 | 240 => Some(sqrt_of(3)),
            _ => None,
        },
        Func::Cot => match d {
            45 | 225 => Some(Expr::int(1)),
            135 | 315 => Some(Expr::int(-1)),
            60 | 240 => Some(normalize(&Expr::mul2(Expr::frac(1, 3), sqrt_of(3)))),
            30 | 210 => Some(sqrt_of(3)),
            90 | 270 => Some(Expr::int(0)),
            _ => None,
        },
        Func::Sqrt => None,
    }
}

/// Key for sorting/merging inside the normal form.
fn raw_key(e: &Expr) -> String {
    let mut s = String::new();
    raw_key_into(e, &mut s);
    s
}

fn raw_key_into(e: &Expr, out: &mut String) {
    match e {
        Expr::Rat(r) => {
            let _ = write!(out, "#{}", r);
        }
        Expr::Approx(x) => {
            let _ = write!(out, "~{}", x);
        }
        Expr::Pi => out.push('π'),
        Expr::Var(v) => {
            let _ = write!(out, "v{}", v.0);
        }
        Expr::Add(xs) => {
            out.push_str("(+");
            for x in xs {
                out.push(' ');
                raw_key_into(x, out);
            }
            out.push(')');
        }
        Expr::Mul(xs) => {
            out.push_str("(*");
            for x in xs {
                out.push(' ');
                raw_key_into(x, out);
            }
            out.push(')');
        }
        Expr::Sub(a, b) => {
            out.push_str("(-");
            raw_key_into(a, out);
            out.push(' ');
            raw_key_into(b, out);
            out.push(')');
        }
        Expr::Div(a, b) => {
            out.push_str("(/");
            raw_key_into(a, out);
            out.push(' ');
            raw_key_into(b, out);
            out.push(')');
        }
        Expr::Neg(a) => {
            out.push_str("(neg");
            raw_key_into(a, out);
            out.push(')');
        }
        Expr::Pow(a, b) => {
            out.push_str("(^");
            raw_key_into(a, out);
            out.push(' ');
            raw_key_into(b, out);
            out.push(')');
        }
        Expr::Func(f, a) => {
            out.push('(');
            out.push_str(f.name());
            raw_key_into(a, out);
            out.push(')');
        }
    }
}

/// Canonical string of the normal form (used for equation identity).
pub fn normal_key(e: &Expr) -> String {
    raw_key(&normalize(e))
}

/// Fold a whole expression to a constant, if it has no variables.
/// Exact rationals stay exact; π, surds and non-tabled trig go approximate.
pub fn as_value(e: &Expr) -> Option<Value> {
    if !e.free_vars().is_empty() {
        return None;
    }
    let n = normalize(e);
    match &n {
        Expr::Rat(r) => Some(Value::Rat(r.clone())),
        Expr::Approx(x) => Some(Value::Approx(*x)),
        other => other.eval(&|_| None).map(Value::Approx),
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

/// Render a rational: integers plainly, terminating decimals as decimals,
/// everything else as `num/den`.
pub fn print_rat(r: &BigRational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    if let Some(dec) = rat_decimal(r) {
        return dec;
    }
    format!("{}/{}", r.numer(), r.denom())
}

fn rat_decimal(r: &BigRational) -> Option<String> {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() || twos.max(fives) > 12 {
        return None;
    }
    let shift = twos.max(fives);
    let mut scaled = r.numer() * BigInt::from(10).pow(shift) / r.denom();
    let neg = scaled.is_negative();
    if neg {
        scaled = -scaled;
    }
    let digits = scaled.to_string();
    let s = if digits.len() <= shift as usize {
        format!("0.{}{}", "0".repeat(shift as usize - digits.len()), digits)
    } else {
        let (int, frac) = digits.split_at(digits.len() - shift as usize);
        format!("{}.{}", int, frac)
    };
    Some(if neg { format!("-{}", s) } else { s })
}

pub fn print_approx(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 && x.abs() < 1e15 {
        return format!("{}", x.round() as i64);
    }
    let s = format!("{:.6}", x);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Pretty-print an expression with variable displays from the symbol table.
pub fn print_expr(e: &Expr, st: &SymbolTable) -> String {
    print_prec(e, st, 0)
}

// precedence levels: 0 add, 1 mul, 2 unary/pow operand, 3 atom
fn print_prec(e: &Expr, st: &SymbolTable, min: u8) -> String {
    let (s, prec) = match e {
        Expr::Rat(r) => (print_rat(r), if r.is_negative() { 2 } else { 3 }),
        Expr::Approx(x) => (print_approx(*x), if *x < 0.0 { 2 } else { 3 }),
        Expr::Pi => ("π".to_string(), 3),
        Expr::Var(v) => (st.display(*v), 3),
        Expr::Add(xs) => {
            let parts: Vec<String> = xs
                .iter()
                .map(|x| print_prec(x, st, if matches!(x, Expr::Add(_)) { 1 } else { 0 }))
                .collect();
            (parts.join(" + "), 0)
        }
        Expr::Sub(a, b) => (
            format!("{} - {}", print_prec(a, st, 0), print_prec(b, st, 1)),
            0,
        ),
        Expr::Mul(xs) => {
            let parts: Vec<String> = xs.iter().map(|x| print_prec(x, st, 1)).collect();
            (parts.join("·"), 1)
        }
        Expr::Div(a, b) => (
            format!("{}/{}", print_prec(a, st, 2), print_prec(b, st, 2)),
            1,
        ),
        Expr::Neg(a) => (format!("-{}", print_prec(a, st, 2)), 2),
        Expr::Pow(a, b) => {
            if matches!(&**b, Expr::Rat(r) if *r == rat(1,2)) {
                (format!("√{}", print_prec(a, st, 3)), 2)
            } else if matches!(&**b, Expr::Rat(r) if *r == rat(-1,1)) {
                (format!("1/{}", print_prec(a, st, 2)), 1)
            } else {
                (
                    format!("{}^{}", print_prec(a, st, 3), print_prec(b, st, 3)),
                    2,
                )
            }
        }
        Expr::Func(Func::Sqrt, a) => (format!("√{}", print_prec(a, st, 3)), 2),
        Expr::Func(f, a) => (format!("{}({})", f.name(), print_prec(a, st, 0)), 3),
    };
    if prec < min {
        format!("({})", s)
    } else {
        s
    }
}
