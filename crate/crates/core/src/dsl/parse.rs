//! Lexer and recursive-descent parser.
//!
//! ```text
//! identity := expr "==" expr
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := "-"? atom ("^" atom)?
//! atom     := INT | IDENT | "C" "(" expr "," expr ")" | "(" expr ")" | sum
//! sum      := "sum" "(" binder ")" term
//! binder   := IDENT "=" expr ".." expr | IDENT "+" IDENT "=" expr
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use super::ast::{Expr, Identity};
use super::DslError;
use crate::arith::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(Integer),
    Ident(String),
    Sum,
    Binom,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Assign,
    EqEq,
    DotDot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Sum => "'sum'".into(),
            Tok::Binom => "'C'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Assign => "'='".into(),
            Tok::EqEq => "'=='".into(),
            Tok::DotDot => "'..'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> DslError {
    DslError::Syntax { line: pos.line, col: pos.col, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "sum" => Tok::Sum,
                "C" => Tok::Binom,
                _ => Tok::Ident(word),
            }
        } else {
            let next = chars.get(i + 1).copied();
            let (tok, width) = match (c, next) {
                ('=', Some('=')) => (Tok::EqEq, 2),
                ('.', Some('.')) => (Tok::DotDot, 2),
                ('=', _) => (Tok::Assign, 1),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) => (Tok::Star, 1),
                ('^', _) => (Tok::Caret, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                (',', _) => (Tok::Comma, 1),
                _ => return Err(syntax(pos, format!("unexpected character '{c}'"))),
            };
            i += width;
            tok
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    binders: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn expect(&mut self, want: Tok) -> Result<(), DslError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {} but found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), DslError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) => Ok((name, pos)),
            other => Err(syntax(pos, format!("expected identifier but found {}", other.describe()))),
        }
    }

    fn identity(&mut self) -> Result<Identity, DslError> {
        let lhs = self.expr()?;
        match self.peek() {
            Tok::EqEq => {
                self.bump();
            }
            Tok::Eof => return Err(syntax(self.pos(), "missing '==' between the two sides")),
            other => {
                return Err(syntax(self.pos(), format!("unexpected {}", other.describe())));
            }
        }
        let rhs = self.expr()?;
        if *self.peek() != Tok::Eof {
            return Err(syntax(self.pos(), format!("unexpected {}", self.peek().describe())));
        }
        Ok(Identity { lhs, rhs })
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            base = Expr::Pow(Box::new(base), Box::new(self.atom()?));
        }
        Ok(if negate { Expr::Neg(Box::new(base)) } else { base })
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::Ident(name) => Ok(Expr::Var(name)),
            Tok::Binom => {
                self.expect(Tok::LParen)?;
                let upper = self.expr()?;
                self.expect(Tok::Comma)?;
                let lower = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Binom(Box::new(upper), Box::new(lower)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Sum => self.sum(),
            other => Err(syntax(pos, format!("expected an operand but found {}", other.describe()))),
        }
    }

    fn bind(&mut self, name: &str, pos: Pos) -> Result<(), DslError> {
        if self.binders.iter().any(|b| b == name) {
            return Err(DslError::DuplicateBinder { name: name.to_string(), line: pos.line, col: pos.col });
        }
        self.binders.push(name.to_string());
        Ok(())
    }

    fn sum(&mut self) -> Result<Expr, DslError> {
        self.expect(Tok::LParen)?;
        let (first, first_pos) = self.ident()?;
        match self.peek() {
            Tok::Assign => {
                self.bump();
                let lo = self.expr()?;
                self.expect(Tok::DotDot)?;
                let hi = self.expr()?;
                self.expect(Tok::RParen)?;
                self.bind(&first, first_pos)?;
                let body = self.term()?;
                self.binders.pop();
                Ok(Expr::SumRange { var: first, lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) })
            }
            Tok::Plus => {
                self.bump();
                let (second, second_pos) = self.ident()?;
                self.expect(Tok::Assign)?;
                let total = self.expr()?;
                self.expect(Tok::RParen)?;
                self.bind(&first, first_pos)?;
                self.bind(&second, second_pos)?;
                let body = self.term()?;
                self.binders.truncate(self.binders.len() - 2);
                Ok(Expr::SumPair { first, second, total: Box::new(total), body: Box::new(body) })
            }
            other => Err(syntax(
                self.pos(),
                format!("expected '=' or '+' in summation binder but found {}", other.describe()),
            )),
        }
    }
}

/// Parses a single identity `lhs == rhs`.
pub fn parse_identity(text: &str) -> Result<Identity, DslError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0, binders: Vec::new() };
    parser.identity()
}

/// Parses a standalone expression.
pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0, binders: Vec::new() };
    let e = parser.expr()?;
    if *parser.peek() != Tok::Eof {
        return Err(syntax(parser.pos(), format!("unexpected {}", parser.peek().describe())));
    }
    Ok(e)
}

/// One identity per non-blank line; `#` comments are ignored. Each entry carries
/// its 1-based line number and the source text of the line (comment stripped).
pub fn parse_identity_file(text: &str) -> Result<Vec<(usize, String, Identity)>, DslError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let source = raw.split('#').next().unwrap_or("").trim();
        if source.is_empty() {
            continue;
        }
        let identity = parse_identity(raw).map_err(|e| e.at_line(line_no))?;
        out.push((line_no, source.to_string(), identity));
    }
    Ok(out)
}
