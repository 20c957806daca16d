//! Exact evaluation, degree analysis and symbolic expansion of expressions.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use super::ast::Expr;
use super::DslError;
use crate::arith::{as_integer, binom_rational, render, Rational};
use crate::polynomial::Polynomial;

/// Parameter assignments, keyed by variable name.
pub type Env = BTreeMap<String, Rational>;

/// Lexical scope: parameters plus the summation indices currently in play.
struct Scope<'a> {
    params: &'a Env,
    bound: Vec<(String, Rational)>,
}

impl<'a> Scope<'a> {
    fn new(params: &'a Env) -> Self {
        Self { params, bound: Vec::new() }
    }

    fn lookup(&self, name: &str) -> Result<&Rational, DslError> {
        self.bound
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .or_else(|| self.params.get(name))
            .ok_or_else(|| DslError::Unbound(name.to_string()))
    }

    fn is_bound(&self, name: &str) -> bool {
        self.bound.iter().any(|(n, _)| n == name)
    }

    fn integer(&mut self, e: &Expr, what: &str) -> Result<i64, DslError> {
        let v = eval_in(e, self)?;
        as_integer(&v)
            .and_then(|i| i.to_i64())
            .ok_or_else(|| DslError::NotInteger { what: what.to_string(), value: render(&v) })
    }

    /// Concrete index assignments of a summation binder, in iteration order.
    fn instances(&mut self, e: &Expr) -> Result<Vec<Vec<(String, Rational)>>, DslError> {
        match e {
            Expr::SumRange { var, lo, hi, .. } => {
                let lo = self.integer(lo, "summation lower bound")?;
                let hi = self.integer(hi, "summation upper bound")?;
                Ok((lo..=hi).map(|i| vec![(var.clone(), Rational::from_integer(i.into()))]).collect())
            }
            Expr::SumPair { first, second, total, .. } => {
                let t = self.integer(total, "pair-sum total")?;
                if t < 0 {
                    return Err(DslError::NotInteger {
                        what: "nonnegative pair-sum total".into(),
                        value: t.to_string(),
                    });
                }
                Ok((0..=t)
                    .map(|i| {
                        vec![
                            (first.clone(), Rational::from_integer(i.into())),
                            (second.clone(), Rational::from_integer((t - i).into())),
                        ]
                    })
                    .collect())
            }
            _ => unreachable!("not a binder"),
        }
    }

    fn with<T>(
        &mut self,
        vars: Vec<(String, Rational)>,
        f: impl FnOnce(&mut Self) -> Result<T, DslError>,
    ) -> Result<T, DslError> {
        let depth = self.bound.len();
        self.bound.extend(vars);
        let out = f(self);
        self.bound.truncate(depth);
        out
    }
}

fn pow(base: &Rational, exp: i64) -> Rational {
    (0..exp).fold(Rational::one(), |acc, _| acc * base)
}

fn eval_in(e: &Expr, scope: &mut Scope) -> Result<Rational, DslError> {
    Ok(match e {
        Expr::Int(v) => Rational::from_integer(v.clone()),
        Expr::Var(name) => scope.lookup(name)?.clone(),
        Expr::Neg(a) => -eval_in(a, scope)?,
        Expr::Add(a, b) => eval_in(a, scope)? + eval_in(b, scope)?,
        Expr::Sub(a, b) => eval_in(a, scope)? - eval_in(b, scope)?,
        Expr::Mul(a, b) => eval_in(a, scope)? * eval_in(b, scope)?,
        Expr::Pow(a, b) => {
            let exp = scope.integer(b, "power exponent")?;
            if exp < 0 {
                return Err(DslError::NotInteger {
                    what: "nonnegative power exponent".into(),
                    value: exp.to_string(),
                });
            }
            pow(&eval_in(a, scope)?, exp)
        }
        Expr::Binom(u, k) => {
            let k = scope.integer(k, "binomial lower argument")?;
            if k < 0 {
                Rational::zero()
            } else {
                binom_rational(&eval_in(u, scope)?, k)
            }
        }
        Expr::SumRange { body, .. } | Expr::SumPair { body, .. } => {
            let mut acc = Rational::zero();
            for vars in scope.instances(e)? {
                acc += scope.with(vars, |s| eval_in(body, s))?;
            }
            acc
        }
    })
}

/// Evaluates `e` exactly under `env`.
pub fn eval_expr(e: &Expr, env: &Env) -> Result<Rational, DslError> {
    eval_in(e, &mut Scope::new(env))
}

/// Whether `e` depends on the free (unshadowed) `symbol` in the current scope.
fn depends(e: &Expr, symbol: &str, scope: &Scope) -> bool {
    !scope.is_bound(symbol) && e.mentions(symbol)
}

fn degree_in(e: &Expr, symbol: &str, scope: &mut Scope) -> Result<u64, DslError> {
    let independent = |e: &Expr, scope: &Scope, what: &str| -> Result<(), DslError> {
        if depends(e, symbol, scope) {
            Err(DslError::DependsOnSymbol { what: what.to_string(), symbol: symbol.to_string() })
        } else {
            Ok(())
        }
    };
    Ok(match e {
        Expr::Int(_) => 0,
        Expr::Var(name) => {
            if name == symbol && !scope.is_bound(name) {
                1
            } else {
                scope.lookup(name)?;
                0
            }
        }
        Expr::Neg(a) => degree_in(a, symbol, scope)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => degree_in(a, symbol, scope)?.max(degree_in(b, symbol, scope)?),
        Expr::Mul(a, b) => degree_in(a, symbol, scope)? + degree_in(b, symbol, scope)?,
        Expr::Pow(a, b) => {
            independent(b, scope, "power exponent")?;
            let exp = scope.integer(b, "power exponent")?;
            if exp < 0 {
                return Err(DslError::NotInteger {
                    what: "nonnegative power exponent".into(),
                    value: exp.to_string(),
                });
            }
            exp as u64 * degree_in(a, symbol, scope)?
        }
        Expr::Binom(u, k) => {
            independent(k, scope, "binomial lower argument")?;
            let k = scope.integer(k, "binomial lower argument")?;
            if k < 0 {
                0
            } else {
                k as u64 * degree_in(u, symbol, scope)?
            }
        }
        Expr::SumRange { lo, hi, body, .. } => {
            independent(lo, scope, "summation bound")?;
            independent(hi, scope, "summation bound")?;
            max_over_instances(e, body, symbol, scope)?
        }
        Expr::SumPair { total, body, .. } => {
            independent(total, scope, "summation bound")?;
            max_over_instances(e, body, symbol, scope)?
        }
    })
}

fn max_over_instances(binder: &Expr, body: &Expr, symbol: &str, scope: &mut Scope) -> Result<u64, DslError> {
    let mut best = 0;
    for vars in scope.instances(binder)? {
        best = best.max(scope.with(vars, |s| degree_in(body, symbol, s))?);
    }
    Ok(best)
}

/// Upper bound on the degree of `e` as a polynomial in `symbol`, with every
/// other variable taken from `env` and every binder unrolled.
pub fn degree_bound(e: &Expr, symbol: &str, env: &Env) -> Result<u64, DslError> {
    if env.contains_key(symbol) {
        return Err(DslError::SymbolAssigned(symbol.to_string()));
    }
    degree_in(e, symbol, &mut Scope::new(env))
}

fn expand_in(e: &Expr, symbol: &str, scope: &mut Scope) -> Result<Polynomial, DslError> {
    let constant = |scope: &mut Scope, e: &Expr| eval_in(e, scope).map(Polynomial::constant);
    if !depends(e, symbol, scope) {
        return constant(scope, e);
    }
    Ok(match e {
        Expr::Int(_) => unreachable!("literals never depend on the symbol"),
        Expr::Var(_) => Polynomial::x(),
        Expr::Neg(a) => -expand_in(a, symbol, scope)?,
        Expr::Add(a, b) => expand_in(a, symbol, scope)? + expand_in(b, symbol, scope)?,
        Expr::Sub(a, b) => expand_in(a, symbol, scope)? - expand_in(b, symbol, scope)?,
        Expr::Mul(a, b) => expand_in(a, symbol, scope)? * expand_in(b, symbol, scope)?,
        Expr::Pow(a, b) => {
            if depends(b, symbol, scope) {
                return Err(DslError::DependsOnSymbol { what: "power exponent".into(), symbol: symbol.into() });
            }
            let exp = scope.integer(b, "power exponent")?;
            if exp < 0 {
                return Err(DslError::NotInteger {
                    what: "nonnegative power exponent".into(),
                    value: exp.to_string(),
                });
            }
            let base = expand_in(a, symbol, scope)?;
            (0..exp).fold(Polynomial::one(), |acc, _| &acc * &base)
        }
        Expr::Binom(u, k) => {
            if depends(k, symbol, scope) {
                return Err(DslError::DependsOnSymbol {
                    what: "binomial lower argument".into(),
                    symbol: symbol.into(),
                });
            }
            let k = scope.integer(k, "binomial lower argument")?;
            Polynomial::binom(&expand_in(u, symbol, scope)?, k)
        }
        Expr::SumRange { lo, hi, body, .. } => {
            if depends(lo, symbol, scope) || depends(hi, symbol, scope) {
                return Err(DslError::DependsOnSymbol { what: "summation bound".into(), symbol: symbol.into() });
            }
            expand_sum(e, body, symbol, scope)?
        }
        Expr::SumPair { total, body, .. } => {
            if depends(total, symbol, scope) {
                return Err(DslError::DependsOnSymbol { what: "summation bound".into(), symbol: symbol.into() });
            }
            expand_sum(e, body, symbol, scope)?
        }
    })
}

fn expand_sum(binder: &Expr, body: &Expr, symbol: &str, scope: &mut Scope) -> Result<Polynomial, DslError> {
    let mut acc = Polynomial::zero();
    for vars in scope.instances(binder)? {
        acc = &acc + &scope.with(vars, |s| expand_in(body, symbol, s))?;
    }
    Ok(acc)
}

/// Expands `e` into an explicit polynomial in `symbol`.
pub fn expand_poly(e: &Expr, symbol: &str, env: &Env) -> Result<Polynomial, DslError> {
    if env.contains_key(symbol) {
        return Err(DslError::SymbolAssigned(symbol.to_string()));
    }
    expand_in(e, symbol, &mut Scope::new(env))
}

/// Integer assignment helper for tests and sweeps.
pub fn env_of<'a>(pairs: impl IntoIterator<Item = (&'a str, Rational)>) -> Env {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
