use std::collections::BTreeSet;
use std::fmt;

use crate::arith::Integer;

/// Expression tree for binomial-sum identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(Integer),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Binom(Box<Expr>, Box<Expr>),
    /// `sum(var = lo..hi) body`, inclusive on both ends.
    SumRange { var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
    /// `sum(first + second = total) body`, `first = 0..=total`, `second = total - first`.
    SumPair { first: String, second: String, total: Box<Expr>, body: Box<Expr> },
}

/// `lhs == rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Expr {
    /// Variables not bound by an enclosing `sum`.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(name) => {
                if !bound.contains(&name.as_str()) {
                    out.insert(name.clone());
                }
            }
            Expr::Neg(e) => e.collect_free(bound, out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Pow(a, b) | Expr::Binom(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Expr::SumRange { var, lo, hi, body } => {
                lo.collect_free(bound, out);
                hi.collect_free(bound, out);
                bound.push(var);
                body.collect_free(bound, out);
                bound.pop();
            }
            Expr::SumPair { first, second, total, body } => {
                total.collect_free(bound, out);
                bound.push(first);
                bound.push(second);
                body.collect_free(bound, out);
                bound.truncate(bound.len() - 2);
            }
        }
    }

    /// True when `symbol` occurs free in this expression.
    pub fn mentions(&self, symbol: &str) -> bool {
        self.free_vars().contains(symbol)
    }
}

impl Identity {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut vars = self.lhs.free_vars();
        vars.extend(self.rhs.free_vars());
        vars
    }
}

// Canonical printer. Output always reparses to the same tree: operands are
// parenthesized whenever the grammar would otherwise regroup them, and a sum
// (whose body extends over a whole product) is left bare only where nothing
// can follow it inside the same term.

fn expr(e: &Expr) -> String {
    match e {
        Expr::Add(a, b) => format!("{} + {}", additive_left(a), additive_right(b)),
        Expr::Sub(a, b) => format!("{} - {}", additive_left(a), additive_right(b)),
        Expr::SumRange { .. } | Expr::SumPair { .. } => sum(e),
        _ => term(e),
    }
}

fn additive_left(e: &Expr) -> String {
    match e {
        Expr::Add(..) | Expr::Sub(..) => expr(e),
        Expr::SumRange { .. } | Expr::SumPair { .. } => sum(e),
        _ => term(e),
    }
}

fn additive_right(e: &Expr) -> String {
    match e {
        Expr::SumRange { .. } | Expr::SumPair { .. } => sum(e),
        _ => term(e),
    }
}

fn term(e: &Expr) -> String {
    match e {
        Expr::Mul(a, b) => {
            let left = match **a {
                Expr::Mul(..) => term(a),
                _ => factor(a),
            };
            format!("{left}*{}", factor(b))
        }
        _ => factor(e),
    }
}

fn factor(e: &Expr) -> String {
    match e {
        Expr::Neg(inner) => match &**inner {
            Expr::Pow(b, x) => format!("-{}^{}", atom(b), atom(x)),
            other => format!("-{}", atom(other)),
        },
        Expr::Pow(b, x) => format!("{}^{}", atom(b), atom(x)),
        _ => atom(e),
    }
}

fn atom(e: &Expr) -> String {
    match e {
        Expr::Int(v) => v.to_string(),
        Expr::Var(name) => name.clone(),
        Expr::Binom(u, k) => format!("C({}, {})", expr(u), expr(k)),
        _ => format!("({})", expr(e)),
    }
}

fn sum(e: &Expr) -> String {
    match e {
        Expr::SumRange { var, lo, hi, body } => {
            format!("sum({var}={}..{}) {}", expr(lo), expr(hi), term(body))
        }
        Expr::SumPair { first, second, total, body } => {
            format!("sum({first}+{second}={}) {}", expr(total), term(body))
        }
        _ => unreachable!("not a sum"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr(self))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}
