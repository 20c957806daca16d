//! The convolution identities, their auxiliary lemma, and each rewrite used in
//! the derivation, checkable at rational points and as polynomials in `l`.
//!
//! Throughout, `n` is the convolution total, `l` the free parameter, and sums
//! over `i + j = n` run `i = 0..=n` with `j = n - i`.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::arith::{binom_integer, binom_rational, int, pow4, rat, sign, Integer, Rational};
use crate::error::{precondition, Error, Result};
use crate::polynomial::Polynomial;

/// Largest number of subsets the enumeration oracle will visit by default.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

fn require_nonneg(name: &str, v: i64) -> Result<()> {
    if v < 0 {
        return Err(precondition(format!("{name} must be >= 0, got {v}")));
    }
    Ok(())
}

/// `sum_{i+j=n} C(2i, i) C(2j, j)`.
pub fn central_convolution(n: i64) -> Result<Integer> {
    require_nonneg("n", n)?;
    Ok((0..=n)
        .map(|i| binom_integer(&int(2 * i), i) * binom_integer(&int(2 * (n - i)), n - i))
        .sum())
}

/// `sum_{i+j=n} C(2i - l, i) C(2j + l, j)` at a rational `l`.
pub fn generalized_convolution_at(n: i64, ell: &Rational) -> Result<Rational> {
    require_nonneg("n", n)?;
    Ok((0..=n)
        .map(|i| {
            let j = n - i;
            binom_rational(&(rat(2 * i) - ell), i) * binom_rational(&(rat(2 * j) + ell), j)
        })
        .fold(Rational::zero(), |acc, t| acc + t))
}

/// The same sum built symbolically as a polynomial in `l`.
pub fn generalized_convolution_poly(n: i64) -> Result<Polynomial> {
    require_nonneg("n", n)?;
    let mut acc = Polynomial::zero();
    for i in 0..=n {
        let j = n - i;
        let left = Polynomial::binom_affine(&rat(-1), &rat(2 * i), i)?;
        let right = Polynomial::binom_affine(&rat(1), &rat(2 * j), j)?;
        acc = &acc + &(&left * &right);
    }
    Ok(acc)
}

/// `sum_{i=0}^p (-1)^i C(l - i, p) C(p, i)` at a rational `l`.
pub fn aux_sum_at(p: i64, ell: &Rational) -> Result<Rational> {
    require_nonneg("p", p)?;
    Ok((0..=p)
        .map(|i| {
            sign(i)
                * binom_rational(&(ell - rat(i)), p)
                * Rational::from_integer(binom_integer(&int(p), i))
        })
        .fold(Rational::zero(), |acc, t| acc + t))
}

/// The auxiliary sum as a polynomial in `l`.
pub fn aux_sum_poly(p: i64) -> Result<Polynomial> {
    require_nonneg("p", p)?;
    let mut acc = Polynomial::zero();
    for i in 0..=p {
        let coeff = sign(i) * Rational::from_integer(binom_integer(&int(p), i));
        let term = Polynomial::binom_affine(&rat(1), &rat(-i), p)?.scale(&coeff);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The family of `(l - p)`-subsets of `{1, .., l}`, with `A_j` the members
/// containing `j` for `j = 1..=p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IexInstance {
    ell: u64,
    p: u64,
}

impl IexInstance {
    pub fn new(ell: i64, p: i64) -> Result<Self> {
        if ell < 1 {
            return Err(precondition(format!("ground set size must be >= 1, got {ell}")));
        }
        if p < 0 || p > ell {
            return Err(precondition(format!("p must lie in 0..={ell}, got {p}")));
        }
        Ok(Self { ell: ell as u64, p: p as u64 })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of sets in the family, `C(l, l - p)`.
    pub fn family_size(&self) -> Integer {
        binom_integer(&int(self.ell as i64), (self.ell - self.p) as i64)
    }
}

/// `|A_1 u ... u A_p|` by walking every `(l - p)`-subset of `{1, .., l}`.
pub fn iex_union_count_enum(inst: &IexInstance) -> Result<Integer> {
    iex_union_count_enum_capped(inst, DEFAULT_ENUM_CAP)
}

pub fn iex_union_count_enum_capped(inst: &IexInstance, cap: u64) -> Result<Integer> {
    let size = inst.family_size();
    if size > Integer::from(cap) {
        return Err(Error::EnumerationCap { size: size.to_string(), cap });
    }
    let p = inst.p;
    let hits = (1..=inst.ell)
        .combinations((inst.ell - p) as usize)
        .filter(|subset| subset.iter().any(|&e| e <= p))
        .count();
    Ok(Integer::from(hits))
}

/// `sum_{i=1}^p (-1)^{i+1} C(p, i) C(l - i, p)`: each i-fold intersection of
/// the `A_j` has `C(l - i, p)` members.
pub fn iex_union_count_formula(inst: &IexInstance) -> Integer {
    let (ell, p) = (inst.ell as i64, inst.p as i64);
    (1..=p)
        .map(|i| {
            let term = binom_integer(&int(p), i) * binom_integer(&int(ell - i), p);
            if i % 2 == 1 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `C(2k - l, k) = (-1)^k C(l - 1 - k, k)` as polynomials in `l`.
pub fn upper_negation_check(k: i64) -> Result<bool> {
    require_nonneg("k", k)?;
    let b = rat(2 * k);
    let lhs = Polynomial::binom_affine(&rat(-1), &b, k)?;
    let rhs = Polynomial::binom_affine(&rat(1), &(rat(k) - &b - rat(1)), k)?.scale(&sign(k));
    Ok(lhs == rhs)
}

/// `C(x + y, r) = sum_{k=0}^r C(x, k) C(y, r - k)` at the given point.
pub fn vandermonde_check(r: i64, x: &Rational, y: &Rational) -> Result<bool> {
    require_nonneg("r", r)?;
    let lhs = binom_rational(&(x + y), r);
    let rhs = (0..=r)
        .map(|k| binom_rational(x, k) * binom_rational(y, r - k))
        .fold(Rational::zero(), |acc, t| acc + t);
    Ok(lhs == rhs)
}

/// `C(l-1-i, i) C(l-1-2i, p-i) = C(l-1-i, p) C(p, i)` as polynomials in `l`.
pub fn trinomial_revision_check(i: i64, p: i64) -> Result<bool> {
    require_nonneg("i", i)?;
    if i > p {
        return Err(precondition(format!("need i <= p, got i = {i}, p = {p}")));
    }
    let one = rat(1);
    let lhs = Polynomial::binom_affine(&one, &rat(-1 - i), i)?
        * Polynomial::binom_affine(&one, &rat(-1 - 2 * i), p - i)?;
    let rhs = Polynomial::binom_affine(&one, &rat(-1 - i), p)?
        * Polynomial::constant(Rational::from_integer(binom_integer(&int(p), i)));
    Ok(lhs == rhs)
}

/// `sum_{k=0}^n C(2n + 1, k)`.
pub fn half_sum(n: i64) -> Result<Integer> {
    require_nonneg("n", n)?;
    Ok((0..=n).map(|k| binom_integer(&int(2 * n + 1), k)).sum())
}

/// How the derivation's fourth line treats the inner auxiliary sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TraceMode {
    /// Recompute every inner sum literally and require it to equal 1.
    #[default]
    Strict,
    /// Substitute the proven value 1 for every inner sum.
    Substituted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLine {
    pub label: &'static str,
    pub value: Rational,
}

/// The six displayed values of the derivation at one `(n, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    pub n: i64,
    pub ell: Rational,
    pub mode: TraceMode,
    pub lines: Vec<TraceLine>,
    /// Literal inner sums for `k = 0..=n` (strict mode only).
    pub inner_sums: Option<Vec<Rational>>,
    pub valid: bool,
}

pub const TRACE_LABELS: [&str; 6] = [
    "definition",
    "upper negation",
    "vandermonde",
    "inner sums equal 1",
    "half of the full row",
    "power of four",
];

/// Evaluates each line of the derivation exactly, in strict mode.
pub fn proof_chain_trace(n: i64, ell: &Rational) -> Result<ProofTrace> {
    proof_chain_trace_with(n, ell, TraceMode::Strict)
}

pub fn proof_chain_trace_with(n: i64, ell: &Rational, mode: TraceMode) -> Result<ProofTrace> {
    require_nonneg("n", n)?;
    let sum = |it: &mut dyn Iterator<Item = Rational>| it.fold(Rational::zero(), |a, t| a + t);
    let c = |top: i64, k: i64| Rational::from_integer(binom_integer(&int(top), k));
    let lm1 = ell - rat(1);

    let line1 = generalized_convolution_at(n, ell)?;

    let line2 = sum(&mut (0..=n).map(|i| {
        let j = n - i;
        sign(i)
            * binom_rational(&(&lm1 - rat(i)), i)
            * binom_rational(&(rat(2 * n - 2 * i) + ell), j)
    }));

    let line3 = sum(&mut (0..=n).map(|i| {
        let j = n - i;
        let inner = sum(&mut (0..=j).map(|k| {
            c(2 * n + 1, k) * binom_rational(&(&lm1 - rat(2 * i)), j - k)
        }));
        sign(i) * binom_rational(&(&lm1 - rat(i)), i) * inner
    }));

    let (line4, inner_sums, inner_ok) = match mode {
        TraceMode::Strict => {
            let inner: Vec<Rational> = (0..=n)
                .map(|k| {
                    let p = n - k;
                    sum(&mut (0..=p).map(|i| {
                        sign(i)
                            * binom_rational(&(&lm1 - rat(i)), i)
                            * binom_rational(&(&lm1 - rat(2 * i)), p - i)
                    }))
                })
                .collect();
            let ok = inner.iter().all(One::is_one);
            let line = sum(&mut inner.iter().enumerate().map(|(k, s)| c(2 * n + 1, k as i64) * s));
            (line, Some(inner), ok)
        }
        TraceMode::Substituted => (sum(&mut (0..=n).map(|k| c(2 * n + 1, k))), None, true),
    };

    let line5 = sum(&mut (0..=2 * n + 1).map(|k| c(2 * n + 1, k))) / rat(2);
    let line6 = Rational::from_integer(pow4(n)?);

    let values = [line1, line2, line3, line4, line5, line6];
    let valid = inner_ok && values.iter().all(|v| *v == values[5]);
    let lines = TRACE_LABELS
        .iter()
        .zip(values)
        .map(|(&label, value)| TraceLine { label, value })
        .collect();
    Ok(ProofTrace { n, ell: ell.clone(), mode, lines, inner_sums, valid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    fn grid() -> Vec<Rational> {
        vec![rat(-6), frac(-5, 2), rat(-1), rat(0), frac(1, 3), rat(1), rat(2), frac(7, 2), rat(10)]
    }

    #[test]
    fn central_convolution_examples() {
        assert_eq!(central_convolution(0).unwrap(), int(1));
        assert_eq!(central_convolution(1).unwrap(), int(4));
        assert_eq!(central_convolution(2).unwrap(), int(16));
        assert!(central_convolution(-1).is_err());
    }

    #[test]
    fn generalized_convolution_examples() {
        assert_eq!(generalized_convolution_at(0, &frac(17, 5)).unwrap(), rat(1));
        assert_eq!(generalized_convolution_at(1, &rat(3)).unwrap(), rat(4));
        assert_eq!(generalized_convolution_at(1, &frac(1, 2)).unwrap(), rat(4));
        assert!(generalized_convolution_at(-1, &rat(0)).is_err());
    }

    #[test]
    fn generalized_convolution_poly_examples() {
        assert_eq!(generalized_convolution_poly(0).unwrap(), Polynomial::constant(rat(1)));
        assert_eq!(generalized_convolution_poly(1).unwrap(), Polynomial::constant(rat(4)));
        let p2 = generalized_convolution_poly(2).unwrap();
        assert_eq!(p2, Polynomial::constant(rat(16)));
        assert_eq!(p2.eval(&rat(0)), Rational::from_integer(central_convolution(2).unwrap()));
    }

    #[test]
    fn aux_examples() {
        assert_eq!(aux_sum_at(0, &frac(-9, 4)).unwrap(), rat(1));
        assert_eq!(aux_sum_at(1, &frac(1, 2)).unwrap(), rat(1));
        assert_eq!(aux_sum_at(2, &rat(7)).unwrap(), rat(1));
        for p in [0, 1, 4] {
            assert_eq!(aux_sum_poly(p).unwrap(), Polynomial::one());
        }
        assert_eq!(aux_sum_poly(4).unwrap().eval(&rat(9)), aux_sum_at(4, &rat(9)).unwrap());
    }

    #[test]
    fn iex_examples() {
        for (ell, p, want) in [(5, 2, 9), (4, 0, 0), (6, 3, 19)] {
            let inst = IexInstance::new(ell, p).unwrap();
            assert_eq!(iex_union_count_enum(&inst).unwrap(), int(want));
            assert_eq!(iex_union_count_formula(&inst), int(want));
        }
    }

    #[test]
    fn iex_rejects_bad_instances() {
        assert!(IexInstance::new(0, 0).is_err());
        assert!(IexInstance::new(3, 4).is_err());
        assert!(IexInstance::new(3, -1).is_err());
        let inst = IexInstance::new(30, 15).unwrap();
        assert!(matches!(iex_union_count_enum(&inst), Err(Error::EnumerationCap { .. })));
        let small = IexInstance::new(6, 3).unwrap();
        assert!(matches!(
            iex_union_count_enum_capped(&small, 19),
            Err(Error::EnumerationCap { cap: 19, .. })
        ));
        assert_eq!(iex_union_count_enum_capped(&small, 20).unwrap(), int(19));
    }

    #[test]
    fn iex_three_way_agreement() {
        for ell in 1..=12 {
            for p in 0..=ell {
                let inst = IexInstance::new(ell, p).unwrap();
                let expected = binom_integer(&int(ell), p) - 1;
                assert_eq!(iex_union_count_enum(&inst).unwrap(), expected);
                assert_eq!(iex_union_count_formula(&inst), expected);
            }
        }
    }

    #[test]
    fn lemma_examples() {
        for k in [0, 1, 3] {
            assert!(upper_negation_check(k).unwrap());
        }
        assert!(vandermonde_check(2, &rat(2), &rat(3)).unwrap());
        assert!(vandermonde_check(0, &frac(-7, 3), &rat(11)).unwrap());
        assert!(vandermonde_check(3, &frac(5, 2), &frac(-1, 3)).unwrap());
        assert!(trinomial_revision_check(0, 0).unwrap());
        assert!(trinomial_revision_check(1, 2).unwrap());
        assert!(trinomial_revision_check(2, 5).unwrap());
        assert!(trinomial_revision_check(3, 2).is_err());
    }

    #[test]
    fn trinomial_instance_at_six() {
        // C(4,1) C(3,1) = 12 = C(4,2) C(2,1)
        assert_eq!(binom_integer(&int(4), 1) * binom_integer(&int(3), 1), int(12));
        assert_eq!(binom_integer(&int(4), 2) * binom_integer(&int(2), 1), int(12));
    }

    #[test]
    fn half_sum_examples() {
        assert_eq!(half_sum(0).unwrap(), int(1));
        assert_eq!(half_sum(1).unwrap(), int(4));
        assert_eq!(half_sum(2).unwrap(), int(16));
    }

    #[test]
    fn trace_examples() {
        for (n, ell, want) in [(0, frac(13, 7), 1), (1, rat(3), 4), (3, frac(-5, 2), 64)] {
            let t = proof_chain_trace(n, &ell).unwrap();
            assert!(t.valid, "{n} {ell}");
            assert_eq!(t.lines.len(), 6);
            assert!(t.lines.iter().all(|l| l.value == rat(want)));
            assert!(t.inner_sums.unwrap().iter().all(One::is_one));
        }
        let t = proof_chain_trace_with(4, &rat(-2), TraceMode::Substituted).unwrap();
        assert!(t.valid && t.inner_sums.is_none());
        assert_eq!(t.lines[3].value, rat(256));
    }

    #[test]
    fn trace_line_two_at_three() {
        // C(2,0) C(5,1) - C(1,1) C(3,0) = 4
        let t = proof_chain_trace(1, &rat(3)).unwrap();
        assert_eq!(t.lines[1].value, rat(4));
    }

    #[test]
    fn specialization_to_zero() {
        for n in 0..=12 {
            assert_eq!(
                generalized_convolution_at(n, &rat(0)).unwrap(),
                Rational::from_integer(central_convolution(n).unwrap())
            );
        }
    }

    #[test]
    fn grid_sweeps() {
        for ell in grid() {
            for p in 0..=10 {
                assert_eq!(aux_sum_at(p, &ell).unwrap(), rat(1));
            }
            for n in 0..=6 {
                assert!(proof_chain_trace(n, &ell).unwrap().valid);
            }
        }
    }
}
