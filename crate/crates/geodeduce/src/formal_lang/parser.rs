//! Recursive-descent parser for the formal language.
//!
//! Grammar (logic forms):
//!
//! ```text
//! logic_form -> id ( args ) | id | expr
//! args       -> arg ( , arg )*
//! arg        -> logic_form | id | expr
//! id         -> UPPER_LETTER (ALPHA_NUM | _)*
//! expr       -> [-] ANUB (ALPHA_NUM | SPECIAL_CHAR)*
//! ```
//!
//! Expression tokens are scanned permissively (LaTeX-ish fragments such as
//! `3\frac{3}{5}` or `\sqrt{2}` stay intact) and handed to the algebra module
//! for interpretation. A `$` token is the pseudo-literal placeholder.

use super::catalog::{self, Role};
use super::{canonicalize, Arg, LangError, Literal};

#[derive(Debug, Clone)]
#[derive(Default)]
pub struct ParseOptions {
    /// Accept engine-internal predicates (`Collinear`, `SimRatio`).
    pub allow_internal: bool,
}


/// A top-level logic form, which the grammar also allows to be a bare
/// identifier or a standalone expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogicForm {
    Literal(Literal),
    Bare(String),
    Expr(String),
}

/// Parse a single literal (predicate application) and canonicalize it.
pub fn parse_literal(text: &str) -> Result<Literal, LangError> {
    match parse_logic_form(text, &ParseOptions::default())? {
        LogicForm::Literal(l) => Ok(l),
        LogicForm::Bare(_) | LogicForm::Expr(_) => Err(LangError::Syntax {
            pos: 0,
            expected: "predicate application".to_string(),
        }),
    }
}

/// Parse any logic form permitted by the grammar.
pub fn parse_logic_form(text: &str, opts: &ParseOptions) -> Result<LogicForm, LangError> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0, opts };
    cur.skip_ws();
    if cur.eof() {
        return Err(LangError::Syntax { pos: cur.pos, expected: "logic form".to_string() });
    }
    let form = if cur.peek().is_ascii_uppercase() {
        let start = cur.pos;
        let id = cur.scan_id();
        if !cur.eof() && cur.peek() == b'(' {
            let lit = cur.finish_application(id, start)?;
            LogicForm::Literal(canonicalize(&lit))
        } else {
            cur.skip_ws();
            if cur.eof() {
                LogicForm::Bare(id)
            } else {
                // Uppercase-initial expression such as `R+2`.
                cur.pos = start;
                LogicForm::Expr(cur.scan_expr(true)?)
            }
        }
    } else {
        LogicForm::Expr(cur.scan_expr(true)?)
    };
    cur.skip_ws();
    if !cur.eof() {
        return Err(LangError::Syntax { pos: cur.pos, expected: "end of input".to_string() });
    }
    Ok(form)
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    opts: &'a ParseOptions,
}

const EXPR_SPECIALS: &[u8] = b"_\\+-*/.{}^$' ";

fn is_id_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

fn is_expr_start(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\\' || c == b'-' || c == b'$'
}

fn is_expr_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || EXPR_SPECIALS.contains(&c)
}

impl<'a> Cursor<'a> {
    fn eof(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> u8 {
        self.s[self.pos]
    }

    fn skip_ws(&mut self) {
        while !self.eof() && (self.peek() == b' ' || self.peek() == b'\t') {
            self.pos += 1;
        }
    }

    fn scan_id(&mut self) -> String {
        let start = self.pos;
        self.pos += 1;
        while !self.eof() && is_id_char(self.peek()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    /// Scan an expression token. Balanced parentheses are swallowed; the scan
    /// stops at a top-level `,` or `)`.
    fn scan_expr(&mut self, _top: bool) -> Result<String, LangError> {
        let start = self.pos;
        if self.eof() || !(is_expr_start(self.peek())) {
            return Err(LangError::Syntax { pos: self.pos, expected: "expression".to_string() });
        }
        let mut depth = 0usize;
        while !self.eof() {
            let c = self.peek();
            if c == b'(' {
                depth += 1;
                self.pos += 1;
            } else if c == b')' {
                if depth == 0 {
                    break;
                }
                depth -= 1;
                self.pos += 1;
            } else if c == b',' {
                if depth == 0 {
                    break;
                }
                return Err(LangError::Syntax {
                    pos: self.pos,
                    expected: "`)` before `,` in expression".to_string(),
                });
            } else if is_expr_char(c) {
                self.pos += 1;
            } else {
                return Err(LangError::Syntax {
                    pos: self.pos,
                    expected: "expression character".to_string(),
                });
            }
        }
        if depth > 0 {
            return Err(LangError::Syntax { pos: self.pos, expected: "`)`".to_string() });
        }
        let text = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
        Ok(text.trim_end().to_string())
    }

    /// Parse `( args )` after a predicate name has been read.
    fn finish_application(&mut self, pred: String, pred_pos: usize) -> Result<Literal, LangError> {
        let info = catalog::lookup(&pred).ok_or(LangError::UnknownPredicate {
            name: pred.clone(),
            pos: pred_pos,
        })?;
        if !info.public && !self.opts.allow_internal {
            return Err(LangError::UnknownPredicate { name: pred.clone(), pos: pred_pos });
        }
        debug_assert_eq!(self.peek(), b'(');
        self.pos += 1;
        let mut args = Vec::new();
        loop {
            self.skip_ws();
            if self.eof() {
                return Err(LangError::Syntax { pos: self.pos, expected: "argument".to_string() });
            }
            args.push(self.parse_arg()?);
            self.skip_ws();
            if self.eof() {
                return Err(LangError::Syntax { pos: self.pos, expected: "`,` or `)`".to_string() });
            }
            match self.peek() {
                b',' => {
                    self.pos += 1;
                }
                b')' => {
                    self.pos += 1;
                    break;
                }
                _ => {
                    return Err(LangError::Syntax {
                        pos: self.pos,
                        expected: "`,` or `)`".to_string(),
                    })
                }
            }
        }
        if args.len() < info.min_args || args.len() > info.max_args {
            let expected = if info.min_args == info.max_args {
                format!("{}", info.min_args)
            } else {
                format!("{}..{}", info.min_args, info.max_args)
            };
            return Err(LangError::ArityMismatch { pred, got: args.len(), expected });
        }
        check_roles(info, &args)?;
        Ok(Literal { pred, args })
    }

    fn parse_arg(&mut self) -> Result<Arg, LangError> {
        let c = self.peek();
        if c.is_ascii_uppercase() {
            let start = self.pos;
            let id = self.scan_id();
            if !self.eof() && self.peek() == b'(' {
                let lit = self.finish_application(id, start)?;
                return Ok(Arg::Lit(Box::new(lit)));
            }
            // Plain identifier unless expression characters follow.
            self.skip_ws();
            if self.eof() || self.peek() == b',' || self.peek() == b')' {
                return Ok(Arg::Id(id));
            }
            self.pos = start;
            return Ok(Arg::Expr(self.scan_expr(false)?));
        }
        Ok(Arg::Expr(self.scan_expr(false)?))
    }
}

fn check_roles(info: &catalog::PredInfo, args: &[Arg]) -> Result<(), LangError> {
    for (i, arg) in args.iter().enumerate() {
        let role = catalog::role_at(info, i);
        let ok = match role {
            Role::Point => matches!(arg, Arg::Id(_)),
            Role::Line => lit_pred(arg) == Some("Line"),
            Role::Circle => lit_pred(arg) == Some("Circle"),
            Role::Angle => lit_pred(arg) == Some("Angle"),
            Role::Figure => {
                if info.name == "MeasureOf" {
                    matches!(lit_pred(arg), Some("Angle") | Some("Arc"))
                } else {
                    matches!(arg, Arg::Lit(_))
                }
            }
            Role::Value => true,
        };
        if !ok {
            let expected = match role {
                Role::Point => "a point identifier",
                Role::Line => "a Line(..) literal",
                Role::Circle => "a Circle(..) literal",
                Role::Angle => "an Angle(..) literal",
                Role::Figure if info.name == "MeasureOf" => "an Angle(..) or Arc(..) literal",
                Role::Figure => "a figure literal",
                Role::Value => unreachable!(),
            };
            return Err(LangError::InvalidArgument {
                pred: info.name.to_string(),
                index: i,
                expected: expected.to_string(),
            });
        }
    }
    Ok(())
}

fn lit_pred(arg: &Arg) -> Option<&str> {
    arg.as_lit().map(|l| l.pred.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_lang::print_literal;

    #[test]
    fn basic_literals() {
        let l = parse_literal("Line(A,B)").unwrap();
        assert_eq!(print_literal(&l), "Line(A,B)");
        let l = parse_literal("Equals(LengthOf(Line(A, B)), 10)").unwrap();
        assert_eq!(print_literal(&l), "Equals(LengthOf(Line(A,B)),10)");
    }

    #[test]
    fn empty_input_is_syntax_error_at_zero() {
        match parse_literal("") {
            Err(LangError::Syntax { pos: 0, .. }) => {}
            other => panic!("expected syntax error at 0, got {:?}", other),
        }
    }

    #[test]
    fn unknown_predicate() {
        assert!(matches!(
            parse_literal("Banana(A,B)"),
            Err(LangError::UnknownPredicate { .. })
        ));
        // Internal predicates are not user-facing.
        assert!(matches!(
            parse_literal("Collinear(A,B,C)"),
            Err(LangError::UnknownPredicate { .. })
        ));
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            parse_literal("Line(A,B,C)"),
            Err(LangError::ArityMismatch { .. })
        ));
        assert!(matches!(parse_literal("Find()"), Err(LangError::Syntax { .. })));
    }

    #[test]
    fn role_validation() {
        assert!(matches!(
            parse_literal("PointLiesOnLine(Line(A,B),C)"),
            Err(LangError::InvalidArgument { .. })
        ));
        assert!(matches!(
            parse_literal("MeasureOf(Line(A,B))"),
            Err(LangError::InvalidArgument { .. })
        ));
    }

    #[test]
    fn latex_fraction_expression() {
        let l = parse_literal("Equals(LengthOf(Line(N,O)),3\\frac{3}{5})").unwrap();
        assert_eq!(print_literal(&l), "Equals(LengthOf(Line(N,O)),3\\frac{3}{5})");
    }

    #[test]
    fn expr_with_balanced_parens_and_spaces() {
        let l = parse_literal("Equals(x, 2*(y+1))").unwrap();
        assert_eq!(print_literal(&l), "Equals(x,2*(y+1))");
    }

    #[test]
    fn placeholder_dollar() {
        let l = parse_literal("Find(AreaOf(Shape($)))").unwrap();
        assert_eq!(print_literal(&l), "Find(AreaOf(Shape($)))");
    }

    #[test]
    fn bare_id_and_expr_forms() {
        let opts = ParseOptions::default();
        assert_eq!(parse_logic_form("A", &opts).unwrap(), LogicForm::Bare("A".to_string()));
        assert_eq!(
            parse_logic_form("x+2", &opts).unwrap(),
            LogicForm::Expr("x+2".to_string())
        );
    }

    #[test]
    fn uppercase_variable_argument() {
        // `Circle(O, R)` keeps the radius as an identifier argument.
        let l = parse_literal("Circle(O, R)").unwrap();
        assert_eq!(print_literal(&l), "Circle(O,R)");
    }
}
