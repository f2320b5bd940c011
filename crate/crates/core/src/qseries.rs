//! Truncated q-series with rational exponents and complex coefficients.

use crate::error::{Error, Result};
use crate::rational::{q, q_to_f64, Q};
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::BTreeMap;

/// `q^{base} Σ c_e q^e`, with every term of exponent `e > cutoff` dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries {
    pub terms: BTreeMap<Q, Complex64>,
    pub cutoff: Q,
    /// Overall power of `q` factored out of `terms`.
    pub base_exponent: Q,
}

impl QSeries {
    pub fn zero(cutoff: Q) -> Self {
        QSeries {
            terms: BTreeMap::new(),
            cutoff,
            base_exponent: q(0),
        }
    }

    pub fn one(cutoff: Q) -> Self {
        Self::monomial(q(0), Complex64::new(1.0, 0.0), cutoff)
    }

    pub fn monomial(e: Q, c: Complex64, cutoff: Q) -> Self {
        let mut s = Self::zero(cutoff);
        s.add_term(e, c);
        s
    }

    pub fn add_term(&mut self, e: Q, c: Complex64) {
        if e > self.cutoff {
            return;
        }
        let slot = self.terms.entry(e).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: Q) -> Complex64 {
        self.terms.get(&e).copied().unwrap_or_default()
    }

    /// Coefficients of `q^0, q^1, …, q^{⌊cutoff⌋}`.
    pub fn integer_coefficients(&self) -> Vec<Complex64> {
        let top = self.cutoff.floor().to_integer().max(-1);
        (0..=top).map(|n| self.coeff(q(n))).collect()
    }

    pub fn leading(&self) -> Option<(Q, Complex64)> {
        self.terms.iter().next().map(|(e, c)| (*e, *c))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.cutoff);
        out.base_exponent = self.base_exponent;
        for (e, x) in &self.terms {
            out.add_term(*e, *x * c);
        }
        out
    }

    /// Sum; both operands must share `base_exponent`.
    pub fn add(&self, other: &QSeries) -> Result<Self> {
        if self.base_exponent != other.base_exponent {
            return Err(Error::Domain("series with different base exponents".into()));
        }
        let mut out = Self::zero(self.cutoff.min(other.cutoff));
        out.base_exponent = self.base_exponent;
        for (e, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(*e, *c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &QSeries) -> Self {
        let mut out = Self::zero(self.cutoff.min(other.cutoff));
        out.base_exponent = self.base_exponent + other.base_exponent;
        for (e1, c1) in &self.terms {
            if *e1 > out.cutoff {
                break;
            }
            for (e2, c2) in &other.terms {
                let e = *e1 + *e2;
                if e > out.cutoff {
                    break;
                }
                out.add_term(e, *c1 * *c2);
            }
        }
        out
    }

    /// Long division; the divisor's lowest term must be nonzero.
    pub fn div(&self, den: &QSeries) -> Result<Self> {
        let (e0, c0) = den
            .leading()
            .ok_or_else(|| Error::Numeric("division by the zero series".into()))?;
        let cutoff = self.cutoff.min(den.cutoff) - e0;
        let mut out = Self::zero(cutoff);
        out.base_exponent = self.base_exponent - den.base_exponent;
        let mut rem = self.terms.clone();
        while let Some((&e, &c)) = rem.iter().next() {
            rem.remove(&e);
            let shift = e - e0;
            if shift > cutoff {
                break;
            }
            let coef = c / c0;
            out.add_term(shift, coef);
            for (e2, c2) in den.terms.iter().skip(1) {
                let f = shift + *e2;
                if f - e0 > cutoff {
                    break;
                }
                let slot = rem.entry(f).or_insert(Complex64::new(0.0, 0.0));
                *slot -= coef * *c2;
            }
        }
        Ok(out)
    }

    /// Largest coefficient difference over the common window.
    pub fn max_difference(&self, other: &QSeries) -> f64 {
        let cutoff = self.cutoff.min(other.cutoff);
        self.terms
            .keys()
            .chain(other.terms.keys())
            .filter(|e| **e <= cutoff)
            .map(|e| (self.coeff(*e) - other.coeff(*e)).norm())
            .fold(0.0, f64::max)
    }

    /// `[num, den, re, im]` rows in increasing exponent order.
    pub fn rows(&self) -> Vec<(i64, i64, f64, f64)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e.numer(), *e.denom(), c.re, c.im))
            .collect()
    }

    pub fn base_exponent_f64(&self) -> f64 {
        q_to_f64(&self.base_exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qfrac;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn geometric_inverse() {
        let n = q(6);
        let mut one_minus_q = QSeries::one(n);
        one_minus_q.add_term(q(1), c(-1.0));
        let inv = QSeries::one(n).div(&one_minus_q).unwrap();
        assert_eq!(inv.integer_coefficients(), vec![c(1.0); 7]);
        let back = inv.mul(&one_minus_q);
        assert_eq!(back.terms.len(), 1);
    }

    #[test]
    fn cutoff_is_respected() {
        let mut a = QSeries::one(qfrac(5, 2));
        a.add_term(qfrac(3, 2), c(2.0));
        a.add_term(q(3), c(7.0));
        assert_eq!(a.terms.len(), 2);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(qfrac(3, 2)), c(4.0));
        assert_eq!(sq.coeff(q(3)), c(0.0));
        let b = QSeries::one(q(1));
        assert_eq!(a.mul(&b).cutoff, q(1));
    }
}
