//! Rule-based translation of natural-language problem text into pseudo
//! formal literals. `$` marks a referent the text does not determine; a
//! downstream formalizer resolves it during alignment.
//!
//! The rule table is data (`data/text_rules.tsv`): tab-separated rows of
//! priority, tokenized pattern and emission templates, so extending the
//! phrasing coverage needs no code change.

use crate::formal_lang::{parse_logic_form, Literal, LogicForm, ParseOptions};

pub const DEFAULT_RULES: &str = include_str!("../data/text_rules.tsv");

#[derive(Debug, Clone)]
pub struct ParseRule {
    pub priority: i32,
    pub pattern: Vec<PatToken>,
    pub emission: Vec<String>,
    pub source_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatToken {
    /// Case-insensitive word or symbol.
    Word(String),
    /// One point label (uppercase-initial short token). Captures 1.
    Point,
    /// A run of exactly k uppercase letters in one token. Captures k.
    PointRun(usize),
    /// A number. Captures 1.
    Number,
    /// Number, variable or √-expression. Captures 1.
    ExprTok,
    /// Lowercase identifier. Captures 1.
    Var,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTableError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for RuleTableError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "rule table line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for RuleTableError {}

/// Parse the tab-separated rule table.
pub fn load_rules(table: &str) -> Result<Vec<ParseRule>, RuleTableError> {
    let mut rules = Vec::new();
    for (idx, raw) in table.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = raw.splitn(3, '\t');
        let (Some(prio), Some(pattern), Some(emission)) =
            (parts.next(), parts.next(), parts.next())
        else {
            return Err(RuleTableError {
                line: idx + 1,
                message: "expected 3 tab-separated fields".into(),
            });
        };
        let priority: i32 = prio.trim().parse().map_err(|_| RuleTableError {
            line: idx + 1,
            message: format!("bad priority `{}`", prio),
        })?;
        let pattern: Vec<PatToken> = pattern
            .split_whitespace()
            .map(|tok| match tok {
                "<p>" => PatToken::Point,
                "<pp>" => PatToken::PointRun(2),
                "<ppp>" => PatToken::PointRun(3),
                "<pppp>" => PatToken::PointRun(4),
                "<n>" => PatToken::Number,
                "<e>" => PatToken::ExprTok,
                "<v>" => PatToken::Var,
                w => PatToken::Word(w.to_lowercase()),
            })
            .collect();
        let emission: Vec<String> =
            emission.split(" ; ").map(|e| e.trim().to_string()).collect();
        // Every slot referenced in the emission must be bound by the pattern.
        let captures: usize = pattern.iter().map(capture_count).sum();
        for e in &emission {
            for k in 1..=9 {
                if e.contains(&format!("${}", k)) && k > captures {
                    return Err(RuleTableError {
                        line: idx + 1,
                        message: format!("emission references unbound slot ${}", k),
                    });
                }
            }
        }
        rules.push(ParseRule { priority, pattern, emission, source_line: idx + 1 });
    }
    rules.sort_by(|a, b| {
        b.priority.cmp(&a.priority).then(b.pattern.len().cmp(&a.pattern.len()))
    });
    Ok(rules)
}

fn capture_count(t: &PatToken) -> usize {
    match t {
        PatToken::Word(_) => 0,
        PatToken::PointRun(k) => *k,
        _ => 1,
    }
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Number(String),
    Symbol(char),
}

fn tokenize(text: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || matches!(c, '.' | ',' | '?' | '!' | ';' | ':') {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/')
            {
                i += 1;
            }
            let mut tok: String = chars[start..i].iter().collect();
            tok = tok.trim_end_matches('.').to_string();
            out.push(Tok::Number(tok));
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Word(chars[start..i].iter().collect()));
            continue;
        }
        out.push(Tok::Symbol(c));
        i += 1;
    }
    out
}

fn is_point_tok(t: &Tok) -> Option<String> {
    match t {
        Tok::Word(w)
            if w.len() <= 2
                && w.chars().next().map(|c| c.is_ascii_uppercase()).unwrap_or(false)
                && w.chars().skip(1).all(|c| c.is_ascii_digit()) =>
        {
            Some(w.clone())
        }
        _ => None,
    }
}

fn is_point_run(t: &Tok, k: usize) -> Option<Vec<String>> {
    match t {
        Tok::Word(w) if w.len() == k && w.chars().all(|c| c.is_ascii_uppercase()) => {
            Some(w.chars().map(|c| c.to_string()).collect())
        }
        _ => None,
    }
}

const UNIT_WORDS: &[&str] = &[
    "cm", "mm", "m", "km", "in", "ft", "yd", "units", "unit", "inches", "feet", "meters",
    "centimeters", "degrees", "degree",
];

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TextParse {
    pub literals: Vec<Literal>,
    /// Token spans no rule could account for (non-fatal diagnostics).
    pub unmatched: Vec<String>,
}

/// Translate problem text into pseudo formal literals with the given rules.
pub fn parse_text_with(text: &str, rules: &[ParseRule]) -> TextParse {
    let toks = tokenize(text);
    let mut literals: Vec<Literal> = Vec::new();
    let mut unmatched: Vec<String> = Vec::new();
    let mut i = 0usize;
    while i < toks.len() {
        // Chains of equalities are structural, handled before the table.
        if let Some((consumed, emitted)) = match_equality_chain(&toks[i..]) {
            for lit in emitted {
                push_lit(&mut literals, lit);
            }
            i += consumed;
            continue;
        }
        let mut advanced = false;
        for rule in rules {
            if let Some((consumed, captures)) = match_pattern(&toks[i..], &rule.pattern) {
                let mut ok = true;
                for template in &rule.emission {
                    let text = instantiate(template, &captures);
                    match parse_logic_form(&text, &ParseOptions::default()) {
                        Ok(LogicForm::Literal(l)) => push_lit(&mut literals, l),
                        Ok(_) | Err(_) => {
                            // a malformed instantiation disqualifies the match
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    i += consumed;
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            unmatched.push(tok_text(&toks[i]));
            i += 1;
        }
    }
    TextParse { literals, unmatched }
}

/// Translate with the built-in rule table.
pub fn parse_text(text: &str) -> TextParse {
    let rules = load_rules(DEFAULT_RULES).expect("built-in rule table is well-formed");
    parse_text_with(text, &rules)
}

fn push_lit(list: &mut Vec<Literal>, lit: Literal) {
    if !list.contains(&lit) {
        list.push(lit);
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Word(w) => w.clone(),
        Tok::Number(n) => n.clone(),
        Tok::Symbol(c) => c.to_string(),
    }
}

/// `x1 = x2 = ... = xn` emits n-1 Equals literals pairwise.
fn match_equality_chain(toks: &[Tok]) -> Option<(usize, Vec<Literal>)> {
    let (first, mut used) = expr_capture(toks)?;
    let mut parts = vec![first];
    let mut i = used;
    loop {
        if i >= toks.len() || toks[i] != Tok::Symbol('=') {
            break;
        }
        let Some((next, n)) = expr_capture(&toks[i + 1..]) else { break };
        parts.push(next);
        i += 1 + n;
        used = i;
    }
    if parts.len() < 3 {
        return None;
    }
    let mut out = Vec::new();
    for w in parts.windows(2) {
        let text = format!("Equals({},{})", w[0], w[1]);
        if let Ok(LogicForm::Literal(l)) =
            parse_logic_form(&text, &ParseOptions::default())
        {
            out.push(l);
        }
    }
    Some((used, out))
}

/// Capture a number, variable, √-expression or segment name as an
/// expression string, with unit words skipped.
fn expr_capture(toks: &[Tok]) -> Option<(String, usize)> {
    let mut consumed;
    let text = match toks.first()? {
        Tok::Number(n) => {
            consumed = 1;
            n.clone()
        }
        Tok::Symbol('√') => {
            let inner = match toks.get(1)? {
                Tok::Number(n) => n.clone(),
                Tok::Word(w) if w.chars().all(|c| c.is_ascii_lowercase()) => w.clone(),
                _ => return None,
            };
            consumed = 2;
            format!("SqrtOf({})", inner)
        }
        Tok::Word(w)
            if w.chars().next().map(|c| c.is_ascii_lowercase()).unwrap_or(false)
                && w.chars().all(|c| c.is_alphanumeric() || c == '_') =>
        {
            consumed = 1;
            w.clone()
        }
        Tok::Word(w) if w.len() == 2 && w.chars().all(|c| c.is_ascii_uppercase()) => {
            let pts: Vec<String> = w.chars().map(|c| c.to_string()).collect();
            consumed = 1;
            format!("LengthOf(Line({},{}))", pts[0], pts[1])
        }
        _ => return None,
    };
    // swallow the degree sign and unit words
    while let Some(t) = toks.get(consumed) {
        match t {
            Tok::Symbol('°') => consumed += 1,
            Tok::Word(w) if UNIT_WORDS.contains(&w.to_lowercase().as_str()) => consumed += 1,
            _ => break,
        }
    }
    Some((text, consumed))
}

fn match_pattern(toks: &[Tok], pattern: &[PatToken]) -> Option<(usize, Vec<String>)> {
    let mut captures = Vec::new();
    let mut i = 0usize;
    for p in pattern {
        let t = toks.get(i)?;
        match p {
            PatToken::Word(w) => {
                let matches = match t {
                    Tok::Word(tw) => tw.to_lowercase() == *w,
                    Tok::Symbol(c) => c.to_string() == *w,
                    Tok::Number(_) => false,
                };
                if !matches {
                    return None;
                }
                i += 1;
            }
            PatToken::Point => {
                captures.push(is_point_tok(t)?);
                i += 1;
            }
            PatToken::PointRun(k) => {
                captures.extend(is_point_run(t, *k)?);
                i += 1;
            }
            PatToken::Number => {
                let Tok::Number(n) = t else { return None };
                captures.push(n.clone());
                i += 1;
                while let Some(t2) = toks.get(i) {
                    match t2 {
                        Tok::Symbol('°') => i += 1,
                        Tok::Word(w) if UNIT_WORDS.contains(&w.to_lowercase().as_str()) => i += 1,
                        _ => break,
                    }
                }
            }
            PatToken::ExprTok => {
                let (text, consumed) = expr_capture(&toks[i..])?;
                captures.push(text);
                i += consumed;
            }
            PatToken::Var => {
                let Tok::Word(w) = t else { return None };
                if !w.chars().next().map(|c| c.is_ascii_lowercase()).unwrap_or(false) {
                    return None;
                }
                captures.push(w.clone());
                i += 1;
            }
        }
    }
    Some((i, captures))
}

fn instantiate(template: &str, captures: &[String]) -> String {
    let mut out = template.to_string();
    for (k, c) in captures.iter().enumerate().rev() {
        out = out.replace(&format!("${}", k + 1), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_lang::print_literal;

    fn lits(text: &str) -> Vec<String> {
        parse_text(text).literals.iter().map(print_literal).collect()
    }

    #[test]
    fn parallel_and_goal() {
        let out = lits("N Q ∥ O P. Find length of Q P.");
        assert_eq!(
            out,
            vec![
                "Parallel(Line(N,Q),Line(O,P))".to_string(),
                "Find(LengthOf(Line(P,Q)))".to_string(),
            ]
        );
    }

    #[test]
    fn equality_chain_emits_pairwise() {
        let out = parse_text("x1 = x2 = x3");
        assert_eq!(out.literals.len(), 2);
        let strs: Vec<String> = out.literals.iter().map(print_literal).collect();
        assert_eq!(strs, vec!["Equals(x1,x2)", "Equals(x2,x3)"]);
        // n equalities -> n-1 literals
        let out = parse_text("a = b = c = d = e");
        assert_eq!(out.literals.len(), 4);
    }

    #[test]
    fn shaded_region_placeholder() {
        let out = lits("Find the area of the shaded region");
        assert_eq!(out, vec!["Find(AreaOf(Shape($)))".to_string()]);
    }

    #[test]
    fn angle_measure_with_degrees() {
        let out = lits("m∠ABC = 40°");
        assert_eq!(out, vec!["Equals(MeasureOf(Angle(A,B,C)),40)".to_string()]);
    }

    #[test]
    fn segment_length_with_units() {
        let out = lits("AB = 10 cm");
        assert_eq!(out, vec!["Equals(LengthOf(Line(A,B)),10)".to_string()]);
    }

    #[test]
    fn sqrt_number() {
        let out = lits("AB = √3");
        assert_eq!(out, vec!["Equals(LengthOf(Line(A,B)),SqrtOf(3))".to_string()]);
    }

    #[test]
    fn unmatched_is_nonfatal() {
        let out = parse_text("the wombat ambles. Find x.");
        assert!(!out.unmatched.is_empty());
        assert_eq!(out.literals.len(), 1);
    }

    #[test]
    fn emitted_literals_reparse() {
        let out = parse_text(
            "AB ⊥ CD. E is the midpoint of AB. Circle O has radius 5. \
             m∠ABC = 30. Find the area of the shaded region.",
        );
        for lit in &out.literals {
            let printed = print_literal(lit);
            let reparsed = parse_logic_form(&printed, &ParseOptions::default());
            assert!(reparsed.is_ok(), "{} should reparse", printed);
        }
    }
}
