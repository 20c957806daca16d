use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::ast::Identity;
use super::eval::{degree_bound, eval_expr, Env};
use super::DslError;
use crate::arith::{rat, render, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Numeric,
    Poly,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Numeric => "numeric",
            Mode::Poly => "poly",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Failed,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Value of the free symbol (poly mode only).
    pub point: Option<Rational>,
    pub assignment: Env,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of one verification run.
///
/// In numeric mode `lhs_values` and `rhs_values` hold a single entry; in poly
/// mode they hold one entry per evaluation point, in point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: String,
    pub mode: Mode,
    pub assignments: Env,
    pub free_symbol: Option<String>,
    pub degree_bound: Option<u64>,
    pub points: Option<Vec<Rational>>,
    pub lhs_values: Vec<Rational>,
    pub rhs_values: Vec<Rational>,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub message: Option<String>,
}

impl VerificationReport {
    fn new(identity: &Identity, mode: Mode, env: &Env, free: Option<&str>) -> Self {
        Self {
            identity: identity.to_string(),
            mode,
            assignments: env.clone(),
            free_symbol: free.map(str::to_string),
            degree_bound: None,
            points: None,
            lhs_values: Vec::new(),
            rhs_values: Vec::new(),
            status: Status::Error,
            counterexample: None,
            message: None,
        }
    }

    fn errored(mut self, err: DslError) -> Self {
        self.status = Status::Error;
        self.message = Some(err.to_string());
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn to_json(&self) -> Value {
        let strings = |v: &[Rational]| Value::from(v.iter().map(render).collect::<Vec<_>>());
        let assignments = |env: &Env| {
            Value::Object(env.iter().map(|(k, v)| (k.clone(), Value::from(render(v)))).collect::<Map<_, _>>())
        };
        let (lhs, rhs) = match self.mode {
            Mode::Numeric => (
                self.lhs_values.first().map(|v| Value::from(render(v))).unwrap_or(Value::Null),
                self.rhs_values.first().map(|v| Value::from(render(v))).unwrap_or(Value::Null),
            ),
            Mode::Poly => (strings(&self.lhs_values), strings(&self.rhs_values)),
        };
        json!({
            "identity": self.identity,
            "mode": self.mode.as_str(),
            "assignments": assignments(&self.assignments),
            "free_symbol": self.free_symbol,
            "degree_bound": self.degree_bound,
            "points": self.points.as_deref().map(strings),
            "lhs_value": lhs,
            "rhs_value": rhs,
            "status": self.status.as_str(),
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "point": c.point.as_ref().map(render),
                "assignment": assignments(&c.assignment),
                "lhs": render(&c.lhs),
                "rhs": render(&c.rhs),
            })),
            "message": self.message,
        })
    }

    /// Human-readable block, one field per line.
    pub fn to_text(&self) -> String {
        let join = |v: &[Rational]| v.iter().map(render).collect::<Vec<_>>().join(", ");
        let assign = |env: &Env| {
            if env.is_empty() {
                "(none)".to_string()
            } else {
                env.iter().map(|(k, v)| format!("{k}={}", render(v))).collect::<Vec<_>>().join(" ")
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "identity: {}", self.identity);
        let _ = writeln!(out, "mode: {}", self.mode.as_str());
        let _ = writeln!(out, "assignments: {}", assign(&self.assignments));
        if let Some(free) = &self.free_symbol {
            let _ = writeln!(out, "free symbol: {free}");
        }
        if let Some(d) = self.degree_bound {
            let _ = writeln!(out, "degree bound: {d}");
        }
        if let Some(points) = &self.points {
            let _ = writeln!(out, "points: {}", join(points));
        }
        if !self.lhs_values.is_empty() {
            let _ = writeln!(out, "lhs: {}", join(&self.lhs_values));
            let _ = writeln!(out, "rhs: {}", join(&self.rhs_values));
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        if let Some(c) = &self.counterexample {
            let at = match (&c.point, &self.free_symbol) {
                (Some(p), Some(s)) => format!("{s}={}", render(p)),
                _ => assign(&c.assignment),
            };
            let _ = writeln!(out, "counterexample: {at} lhs={} rhs={}", render(&c.lhs), render(&c.rhs));
        }
        if let Some(msg) = &self.message {
            let _ = writeln!(out, "message: {msg}");
        }
        out
    }
}

fn check_assigned(identity: &Identity, env: &Env, free: Option<&str>) -> Result<(), DslError> {
    match identity.free_vars().into_iter().find(|v| Some(v.as_str()) != free && !env.contains_key(v)) {
        Some(missing) => Err(DslError::Unassigned(missing)),
        None => Ok(()),
    }
}

/// Evaluates both sides under `env` and compares them exactly.
pub fn verify_numeric(identity: &Identity, env: &Env) -> VerificationReport {
    let mut report = VerificationReport::new(identity, Mode::Numeric, env, None);
    let sides = check_assigned(identity, env, None)
        .and_then(|_| Ok((eval_expr(&identity.lhs, env)?, eval_expr(&identity.rhs, env)?)));
    let (lhs, rhs) = match sides {
        Ok(v) => v,
        Err(e) => return report.errored(e),
    };
    if lhs == rhs {
        report.status = Status::Verified;
    } else {
        report.status = Status::Failed;
        report.counterexample =
            Some(Counterexample { point: None, assignment: env.clone(), lhs: lhs.clone(), rhs: rhs.clone() });
    }
    report.lhs_values = vec![lhs];
    report.rhs_values = vec![rhs];
    report
}

/// Proves `identity` for every value of `free_symbol` by comparing both sides
/// at `0, 1, .., d`, where `d` bounds the degree of either side in the symbol.
pub fn verify_poly(identity: &Identity, free_symbol: &str, env: &Env) -> VerificationReport {
    let mut report = VerificationReport::new(identity, Mode::Poly, env, Some(free_symbol));
    let bound = check_assigned(identity, env, Some(free_symbol)).and_then(|_| {
        let l = degree_bound(&identity.lhs, free_symbol, env)?;
        let r = degree_bound(&identity.rhs, free_symbol, env)?;
        Ok(l.max(r))
    });
    let d = match bound {
        Ok(d) => d,
        Err(e) => return report.errored(e),
    };
    report.degree_bound = Some(d);
    let points: Vec<Rational> = (0..=d as i64).map(rat).collect();
    report.points = Some(points.clone());

    let mut point_env = env.clone();
    for point in &points {
        point_env.insert(free_symbol.to_string(), point.clone());
        let sides = eval_expr(&identity.lhs, &point_env)
            .and_then(|l| Ok((l, eval_expr(&identity.rhs, &point_env)?)));
        let (lhs, rhs) = match sides {
            Ok(v) => v,
            Err(e) => return report.errored(e),
        };
        if lhs != rhs && report.counterexample.is_none() {
            report.counterexample = Some(Counterexample {
                point: Some(point.clone()),
                assignment: env.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            });
        }
        report.lhs_values.push(lhs);
        report.rhs_values.push(rhs);
    }
    report.status = if report.counterexample.is_some() { Status::Failed } else { Status::Verified };
    report
}
