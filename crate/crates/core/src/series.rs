//! Truncated formal power series with exact coefficients.
//!
//! A [`Series`] of order `N` holds `c_0..c_{N-1}`. Products are Cauchy
//! products truncated at the common order; operands of different orders are
//! rejected rather than silently truncated.

use num_traits::{One, Zero};

use crate::arith::{binom_integer, binom_rational, int, Rational};
use crate::error::{precondition, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Wraps `coeffs` as a series of order `coeffs.len()`; the order must be positive.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(precondition("series order must be >= 1"));
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: i64) -> Result<&Rational> {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.coeffs.get(i))
            .ok_or(Error::IndexOutOfRange { index: n, order: self.order() })
    }

    /// Cauchy product, `c_n = sum_{i+j=n} s_i t_j`.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        let n = self.order();
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &other.coeffs[k - i])
            })
            .collect();
        Ok(Series { coeffs })
    }

    pub fn square(&self) -> Series {
        self.mul(self).expect("equal orders")
    }
}

/// First `order` coefficients of `(1 + a x)^alpha`, i.e. `c_n = C(alpha, n) a^n`.
pub fn newton_binomial(alpha: &Rational, a: &Rational, order: usize) -> Result<Series> {
    if order < 1 {
        return Err(precondition("series order must be >= 1"));
    }
    let mut power = Rational::one();
    let mut coeffs = Vec::with_capacity(order);
    for n in 0..order {
        coeffs.push(binom_rational(alpha, n as i64) * &power);
        power *= a;
    }
    Series::new(coeffs)
}

/// `sum_n C(2n, n) x^n`, truncated at `order`.
pub fn central_binomial(order: usize) -> Result<Series> {
    if order < 1 {
        return Err(precondition("series order must be >= 1"));
    }
    let coeffs = (0..order as i64)
        .map(|n| Rational::from_integer(binom_integer(&int(2 * n), n)))
        .collect();
    Series::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, pow4, rat};
    use proptest::prelude::*;

    fn ints(cs: &[i64]) -> Series {
        Series::new(cs.iter().copied().map(rat).collect()).unwrap()
    }

    /// Independent double-loop product over all index pairs.
    fn naive_product(s: &[Rational], t: &[Rational]) -> Vec<Rational> {
        let n = s.len();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in s.iter().enumerate() {
            for (j, b) in t.iter().enumerate() {
                if i + j < n {
                    out[i + j] += a * b;
                }
            }
        }
        out
    }

    #[test]
    fn newton_examples() {
        assert_eq!(newton_binomial(&rat(1), &rat(1), 3).unwrap(), ints(&[1, 1, 0]));
        assert_eq!(newton_binomial(&frac(-1, 2), &rat(-4), 5).unwrap(), ints(&[1, 2, 6, 20, 70]));
        assert_eq!(newton_binomial(&rat(-1), &rat(-4), 4).unwrap(), ints(&[1, 4, 16, 64]));
        assert!(newton_binomial(&rat(1), &rat(1), 0).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ints(&[1, 0, 0]).mul(&ints(&[1, 2, 6])).unwrap(), ints(&[1, 2, 6]));
        assert_eq!(ints(&[1, 2, 6, 20]).square(), ints(&[1, 4, 16, 64]));
        assert_eq!(ints(&[0, 1, 0]).mul(&ints(&[0, 1, 0])).unwrap(), ints(&[0, 0, 1]));
        assert_eq!(
            ints(&[1, 2]).mul(&ints(&[1, 2, 3])),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn central_examples() {
        assert_eq!(central_binomial(1).unwrap(), ints(&[1]));
        assert_eq!(central_binomial(4).unwrap(), ints(&[1, 2, 6, 20]));
        assert_eq!(central_binomial(6).unwrap(), ints(&[1, 2, 6, 20, 70, 252]));
        assert!(central_binomial(0).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let s = ints(&[1, 2, 6]);
        assert_eq!(*s.coefficient(0).unwrap(), rat(1));
        assert_eq!(*s.coefficient(2).unwrap(), rat(6));
        assert_eq!(*central_binomial(5).unwrap().coefficient(4).unwrap(), rat(70));
        assert_eq!(s.coefficient(3), Err(Error::IndexOutOfRange { index: 3, order: 3 }));
        assert!(s.coefficient(-1).is_err());
    }

    #[test]
    fn generating_function_and_square() {
        for order in 1..=16 {
            let newton = newton_binomial(&frac(-1, 2), &rat(-4), order).unwrap();
            let central = central_binomial(order).unwrap();
            assert_eq!(newton, central);
            let sq = central.square();
            for n in 0..order {
                assert_eq!(sq.coeffs()[n], Rational::from_integer(pow4(n as i64).unwrap()));
            }
        }
    }

    fn series(order: usize) -> impl Strategy<Value = Series> {
        prop::collection::vec((-20i64..20, 1i64..5), order)
            .prop_map(|v| Series::new(v.into_iter().map(|(n, d)| frac(n, d)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn cauchy_product_matches_naive((a, b) in (1usize..=12).prop_flat_map(|n| (series(n), series(n)))) {
            let product = a.mul(&b).unwrap();
            prop_assert_eq!(product.coeffs().to_vec(), naive_product(a.coeffs(), b.coeffs()));
        }

        #[test]
        fn product_commutes_and_associates(
            (a, b, c) in (1usize..=8).prop_flat_map(|n| (series(n), series(n), series(n)))
        ) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }
    }
}
