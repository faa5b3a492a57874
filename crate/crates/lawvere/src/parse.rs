//! Concrete syntax for theory files and terms.
//!
//! The format is line-oriented and small enough to read in one sitting:
//!
//! ```text
//! # comments run to the end of the line
//! theory ski
//!
//! op S : 0
//! op app : 2
//!
//! eq  head : R((x y)) = (R(x) y)      # oriented left-to-right
//! rule κ  : ((K x) y) => x
//! ```
//!
//! * `theory NAME` must appear exactly once and names the presentation.
//! * `op NAME : ARITY` declares an operation; declarations may appear
//!   anywhere in the file (operations are collected before any term is
//!   parsed).
//! * `eq NAME : TERM = TERM` and `rule NAME : TERM => TERM` declare an
//!   oriented structural equation and a rewrite rule.
//!
//! Terms are `IDENT`, `IDENT(TERM, …)`, or the juxtaposition sugar
//! `(TERM TERM)`, which stands for `app(TERM, TERM)` and is accepted only
//! when the theory declares a binary operation named `app`. An argument
//! list binds only when the `(` is adjacent to the identifier: `R(x)` is a
//! call, while in `(I (I K))` the spaced `(` begins a juxtaposed term.
//! Identifiers may use any alphanumeric characters (so `σ`, `κ_r`, `x'`
//! are all fine).
//!
//! An identifier that is not a declared operation is a *variable*; within
//! one `eq`/`rule` item (or one standalone term) variables are numbered in
//! order of first occurrence, left-hand side first. The textual names are
//! only a convenience — `x`, `y` and `foo`, `bar` parse to the same rule.
//!
//! Syntax errors carry a line and column; a file that parses but violates
//! the static disciplines (arity mismatches, duplicate names, a variable as
//! a left-hand side, …) is rejected with the full list of
//! [`Diagnostic`]s from [`TheoryPresentation::validate`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::term::Term;
use crate::theory::{Diagnostic, Operation, RewriteRule, StructuralEquation, TheoryPresentation};

/// Parse failure: either a positioned syntax error or a structurally invalid
/// presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// The text could not be read as the grammar; `line` and `col` are
    /// 1-based.
    Syntax {
        /// Line the error was detected on.
        line: usize,
        /// Column of the offending token.
        col: usize,
        /// What went wrong.
        message: String,
    },
    /// The file parsed, but the presentation fails validation.
    Invalid {
        /// Everything [`TheoryPresentation::validate`] found.
        diagnostics: Vec<Diagnostic>,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, col, message } => {
                write!(f, "line {line}, column {col}: {message}")
            }
            ParseError::Invalid { diagnostics } => {
                write!(f, "invalid theory:")?;
                for d in diagnostics {
                    write!(f, "\n  {d}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(usize),
    LParen,
    RParen,
    Comma,
    Colon,
    /// `=`
    Equals,
    /// `=>`
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s}"),
            Tok::Number(n) => write!(f, "number {n}"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Colon => write!(f, "':'"),
            Tok::Equals => write!(f, "'='"),
            Tok::Arrow => write!(f, "'=>'"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    (c.is_alphanumeric() && !c.is_ascii_digit()) || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, col, message: message.into() }
}

/// Tokenizes one line (comment already stripped), reporting 1-based columns.
fn lex_line(line_no: usize, line: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            toks.push((Tok::LParen, col));
            i += 1;
        } else if c == ')' {
            toks.push((Tok::RParen, col));
            i += 1;
        } else if c == ',' {
            toks.push((Tok::Comma, col));
            i += 1;
        } else if c == ':' {
            toks.push((Tok::Colon, col));
            i += 1;
        } else if c == '=' {
            if chars.get(i + 1) == Some(&'>') {
                toks.push((Tok::Arrow, col));
                i += 2;
            } else {
                toks.push((Tok::Equals, col));
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse::<usize>()
                .map_err(|_| syntax(line_no, col, format!("number {text} is out of range")))?;
            toks.push((Tok::Number(n), col));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(syntax(line_no, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(toks)
}

/// Cursor over one line's tokens.
struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    at: usize,
    line: usize,
    /// Column just past the final token, for "expected X, found end of line".
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.at).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t);
        self.at += 1;
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        let col = self.col();
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(syntax(self.line, col, format!("expected {want}, found {t}"))),
            None => Err(syntax(self.line, col, format!("expected {want}, found end of line"))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        let col = self.col();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s.clone()),
            Some(t) => Err(syntax(self.line, col, format!("expected {what}, found {t}"))),
            None => Err(syntax(self.line, col, format!("expected {what}, found end of line"))),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(syntax(self.line, self.col(), format!("unexpected {t} after item"))),
        }
    }
}

/// Shared state for resolving variable names to indices within one item.
struct VarScope<'a> {
    names: BTreeMap<String, usize>,
    order: Vec<String>,
    theory_ops: &'a [Operation],
}

impl<'a> VarScope<'a> {
    fn new(ops: &'a [Operation]) -> Self {
        VarScope { names: BTreeMap::new(), order: Vec::new(), theory_ops: ops }
    }

    fn op(&self, name: &str) -> Option<&Operation> {
        self.theory_ops.iter().find(|o| o.name == name)
    }

    fn variable(&mut self, name: &str) -> usize {
        if let Some(&i) = self.names.get(name) {
            return i;
        }
        let i = self.order.len();
        self.names.insert(name.to_string(), i);
        self.order.push(name.to_string());
        i
    }
}

fn parse_term_inner(cur: &mut Cursor<'_>, scope: &mut VarScope<'_>) -> Result<Term, ParseError> {
    let col = cur.col();
    match cur.next() {
        Some(Tok::Ident(name)) => {
            let name = name.clone();
            // An argument list must open *directly* after the identifier:
            // `R(x)` is a call, but in `(I (I K))` the space makes the
            // second `(` start a new juxtaposed term instead.
            let call_col = col + name.chars().count();
            if cur.peek() == Some(&Tok::LParen) && cur.col() == call_col {
                cur.next();
                let mut args = Vec::new();
                if cur.peek() == Some(&Tok::RParen) {
                    cur.next();
                } else {
                    loop {
                        args.push(parse_term_inner(cur, scope)?);
                        match cur.peek() {
                            Some(Tok::Comma) => {
                                cur.next();
                            }
                            Some(Tok::RParen) => {
                                cur.next();
                                break;
                            }
                            _ => {
                                return Err(syntax(
                                    cur.line,
                                    cur.col(),
                                    "expected ',' or ')' in argument list",
                                ))
                            }
                        }
                    }
                }
                let op = scope.op(&name).ok_or_else(|| {
                    syntax(cur.line, col, format!("unknown operation {name}"))
                })?;
                if op.arity != args.len() {
                    return Err(syntax(
                        cur.line,
                        col,
                        format!(
                            "operation {name} has arity {}, but {} argument(s) were given",
                            op.arity,
                            args.len()
                        ),
                    ));
                }
                Ok(Term::node(name, args))
            } else {
                match scope.op(&name) {
                    Some(op) if op.arity == 0 => Ok(Term::constant(name)),
                    Some(op) => Err(syntax(
                        cur.line,
                        col,
                        format!(
                            "operation {name} has arity {} and needs an argument list",
                            op.arity
                        ),
                    )),
                    None => Ok(Term::var(scope.variable(&name))),
                }
            }
        }
        Some(Tok::LParen) => {
            let left = parse_term_inner(cur, scope)?;
            let right = parse_term_inner(cur, scope)?;
            cur.expect(&Tok::RParen)?;
            match scope.op("app") {
                Some(op) if op.arity == 2 => Ok(Term::node("app", [left, right])),
                _ => Err(syntax(
                    cur.line,
                    col,
                    "juxtaposition (t u) requires a binary operation named app",
                )),
            }
        }
        Some(t) => Err(syntax(cur.line, col, format!("expected a term, found {t}"))),
        None => Err(syntax(cur.line, col, "expected a term, found end of line")),
    }
}

/// Strips a `#` comment; `#` has no other meaning anywhere in the grammar.
fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a complete theory file.
///
/// The returned presentation has already passed
/// [`TheoryPresentation::validate`]; a presentation with violations is
/// reported as [`ParseError::Invalid`] rather than returned.
///
/// # Examples
///
/// ```
/// use lawvere::parse::parse_theory;
///
/// let th = parse_theory(
///     "theory arrows\n\
///      op id : 0\n\
///      op comp : 2\n\
///      rule unit : comp(id, x) => x\n",
/// )
/// .unwrap();
/// assert_eq!(th.name, "arrows");
/// assert_eq!(th.operations.len(), 2);
/// assert_eq!(th.rules.len(), 1);
/// ```
pub fn parse_theory(source: &str) -> Result<TheoryPresentation, ParseError> {
    // First pass: find the header and collect operation declarations, so
    // that equations and rules may reference operations declared below them.
    // A lexed line: its 1-based number, its tokens with columns, and the
    // column just past its last token (for end-of-line error positions).
    type LexedLine = (usize, Vec<(Tok, usize)>, usize);
    let mut name: Option<String> = None;
    let mut operations: Vec<Operation> = Vec::new();
    let mut lexed: Vec<LexedLine> = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let stripped = strip_comment(raw);
        let toks = lex_line(line_no, stripped)?;
        let end_col = stripped.chars().count() + 1;
        if toks.is_empty() {
            continue;
        }
        lexed.push((line_no, toks, end_col));
    }

    for (line_no, toks, end_col) in &lexed {
        let mut cur = Cursor { toks, at: 0, line: *line_no, end_col: *end_col };
        match cur.peek() {
            Some(Tok::Ident(kw)) if kw == "theory" => {
                cur.next();
                let th_name = cur.expect_ident("theory name")?;
                cur.expect_end()?;
                if name.replace(th_name).is_some() {
                    return Err(syntax(*line_no, 1, "duplicate theory header"));
                }
            }
            Some(Tok::Ident(kw)) if kw == "op" => {
                cur.next();
                let op_name = cur.expect_ident("operation name")?;
                cur.expect(&Tok::Colon)?;
                let col = cur.col();
                let arity = match cur.next() {
                    Some(Tok::Number(n)) => *n,
                    Some(t) => {
                        return Err(syntax(*line_no, col, format!("expected arity, found {t}")))
                    }
                    None => {
                        return Err(syntax(*line_no, col, "expected arity, found end of line"))
                    }
                };
                cur.expect_end()?;
                operations.push(Operation { name: op_name, arity });
            }
            _ => {}
        }
    }

    let name = name.ok_or_else(|| syntax(1, 1, "missing 'theory NAME' header"))?;

    // Second pass: equations and rules, in file order.
    let mut equations = Vec::new();
    let mut rules = Vec::new();
    for (line_no, toks, end_col) in &lexed {
        let mut cur = Cursor { toks, at: 0, line: *line_no, end_col: *end_col };
        let kw = match cur.peek() {
            Some(Tok::Ident(kw)) => kw.clone(),
            Some(t) => {
                return Err(syntax(*line_no, cur.col(), format!("expected a declaration, found {t}")))
            }
            None => unreachable!("blank lines were dropped"),
        };
        match kw.as_str() {
            "theory" | "op" => {} // handled in the first pass
            "eq" => {
                cur.next();
                let eq_name = cur.expect_ident("equation name")?;
                cur.expect(&Tok::Colon)?;
                let mut scope = VarScope::new(&operations);
                let lhs = parse_term_inner(&mut cur, &mut scope)?;
                cur.expect(&Tok::Equals)?;
                let rhs = parse_term_inner(&mut cur, &mut scope)?;
                cur.expect_end()?;
                equations.push(StructuralEquation { name: eq_name, lhs, rhs });
            }
            "rule" => {
                cur.next();
                let rule_name = cur.expect_ident("rule name")?;
                cur.expect(&Tok::Colon)?;
                let mut scope = VarScope::new(&operations);
                let lhs = parse_term_inner(&mut cur, &mut scope)?;
                cur.expect(&Tok::Arrow)?;
                let rhs = parse_term_inner(&mut cur, &mut scope)?;
                cur.expect_end()?;
                rules.push(RewriteRule { name: rule_name, lhs, rhs });
            }
            other => {
                return Err(syntax(
                    *line_no,
                    cur.col(),
                    format!("expected theory/op/eq/rule, found {other}"),
                ))
            }
        }
    }

    let th = TheoryPresentation { name, operations, equations, rules };
    let diagnostics = th.validate();
    if diagnostics.is_empty() {
        Ok(th)
    } else {
        Err(ParseError::Invalid { diagnostics })
    }
}

/// Parses a single term against a theory's signature.
///
/// Identifiers that are not declared operations become variables, numbered
/// in first-occurrence order; the juxtaposition sugar `(t u)` is available
/// exactly when the theory declares a binary `app`.
///
/// # Examples
///
/// ```
/// use lawvere::calculi::th_ski;
/// use lawvere::parse::parse_term;
///
/// let th = th_ski();
/// let t = parse_term(&th, "(((S K) (I K)) S)").unwrap();
/// assert_eq!(t.to_string(), "(((S K) (I K)) S)");
/// ```
pub fn parse_term(theory: &TheoryPresentation, source: &str) -> Result<Term, ParseError> {
    let stripped = strip_comment(source);
    let toks = lex_line(1, stripped)?;
    let end_col = stripped.chars().count() + 1;
    let mut cur = Cursor { toks: &toks, at: 0, line: 1, end_col };
    let mut scope = VarScope::new(&theory.operations);
    let term = parse_term_inner(&mut cur, &mut scope)?;
    cur.expect_end()?;
    Ok(term)
}
