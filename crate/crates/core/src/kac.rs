//! Kac numerator, Kac denominator and the normalized character of a
//! level-k positive-energy representation, as truncated q-series in the
//! energy variable, evaluated at a torus element.
//!
//! Exponents use `‖μ‖² = ⟨μ, μ⟩ / k∨` in the basic form, so the numerator
//! term of `μ` sits at `⟨μ, μ⟩ / (2k∨)`. Numerators and characters are
//! re-based so their lowest exponent is 0; the raw offset
//! `⟨λ+ρ, λ+ρ⟩ / (2k∨)` is kept in `base_exponent`.

use crate::affine::{check_alcove, reduce_to_alcove};
use crate::cartan::{RootDatum, Weight, WeylElement};
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rational::{q, q_to_f64, Q, QVec};
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// `g = exp(2πi x)` in the maximal torus, stored as `ω_i(x)` mod 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusElement {
    pub angles: QVec,
}

impl TorusElement {
    pub fn identity(rank: usize) -> Self {
        TorusElement {
            angles: vec![q(0); rank],
        }
    }

    pub fn new(angles: QVec) -> Self {
        TorusElement {
            angles: angles.iter().map(|a| *a - a.floor()).collect(),
        }
    }

    /// `ν(x)` mod 1 for a weight in fundamental-weight coordinates.
    pub fn pair(&self, nu: &[Q]) -> Q {
        let s = nu.iter().zip(&self.angles).fold(q(0), |acc, (a, b)| acc + *a * *b);
        s - s.floor()
    }

    /// `e^{2πi ν(x)}`.
    pub fn phase(&self, nu: &[Q]) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * q_to_f64(&self.pair(nu)))
    }

    /// The element `w g w⁻¹`: `ν(w x) = (w⁻¹ ν)(x)`.
    pub fn weyl_image(&self, datum: &RootDatum, w: &WeylElement) -> Self {
        let angles = (0..datum.rank())
            .map(|i| {
                let mut v: QVec = (0..datum.rank()).map(|j| q(i64::from(i == j))).collect();
                for &s in &w.word {
                    v = datum.reflect(s, &v);
                }
                self.pair(&v)
            })
            .collect();
        TorusElement { angles }
    }
}

fn check_torus(datum: &RootDatum, g: &TorusElement) -> Result<()> {
    if g.angles.len() != datum.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank(),
            got: g.angles.len(),
        });
    }
    Ok(())
}

/// `∏_{n=1}^{N} det(1 − qⁿ ad(g))` truncated at `q^N`.
pub fn kac_denominator(datum: &RootDatum, g: &TorusElement, n_cut: i64) -> Result<QSeries> {
    check_torus(datum, g)?;
    let cutoff = q(n_cut.max(0));
    let mut eigen = vec![Complex64::new(1.0, 0.0); datum.rank()];
    for root in datum.positive_roots_q() {
        let z = g.phase(&root);
        eigen.push(z);
        eigen.push(z.conj());
    }
    let mut acc = QSeries::one(cutoff);
    for n in 1..=n_cut {
        for z in &eigen {
            let mut factor = QSeries::one(cutoff);
            factor.add_term(q(n), -*z);
            acc = acc.mul(&factor);
        }
    }
    Ok(acc)
}

/// `Tr(g | V_{ρ−μ}) = Σ_ν mult(ν) e^{−2πi ν(x)}` over the weights of `V(μ−ρ)`.
fn lowest_weight_trace(datum: &RootDatum, highest: &Weight, g: &TorusElement) -> Result<Complex64> {
    let mut t = Complex64::zero();
    for (nu, m) in datum.weight_multiplicities(highest)? {
        t += g.phase(&nu.to_q()).conj() * m as f64;
    }
    Ok(t)
}

/// Kac numerator attached to the regular integral weight `shifted` at
/// shifted level `k∨`: the sum over the dominant regular points `μ` of its
/// `W_aff`-orbit of `ε(μ) q^{⟨μ,μ⟩/(2k∨)} Tr(g|V_{ρ−μ})`, with `ε` taken
/// relative to `shifted`. Singular inputs give the zero series.
pub fn kac_numerator_shifted(
    datum: &RootDatum,
    k_dual: i64,
    shifted: &[Q],
    g: &TorusElement,
    n_cut: i64,
) -> Result<QSeries> {
    check_torus(datum, g)?;
    let red = reduce_to_alcove(datum, k_dual, shifted)?;
    let cutoff = q(n_cut.max(0));
    let kd = q(k_dual);
    let base = datum.norm2(&red.weight)? / (kd * 2);
    let mut out = QSeries::zero(cutoff);
    out.base_exponent = base;
    if red.sign == 0 {
        return Ok(out);
    }
    let rep = red.weight.clone();
    // Dominant μ with ⟨μ,μ⟩ ≤ R²; G_ij ≥ 0 bounds each coordinate by R/√G_ii.
    let r2 = datum.norm2(&rep)? + kd * 2 * cutoff;
    let bounds: Vec<i64> = (0..datum.rank())
        .map(|i| (q_to_f64(&r2) / q_to_f64(&datum.gram[i][i])).sqrt().floor() as i64 + 1)
        .collect();
    let mut mu = vec![1i64; datum.rank()];
    'outer: loop {
        let mq: QVec = mu.iter().map(|&x| q(x)).collect();
        let n2 = datum.norm2(&mq)?;
        if n2 <= r2 {
            let r = reduce_to_alcove(datum, k_dual, &mq)?;
            if r.sign != 0 && r.weight == rep {
                let eps = f64::from(r.sign * red.sign);
                let highest = Weight(mu.clone()).sub(&datum.rho);
                let tr = lowest_weight_trace(datum, &highest, g)?;
                out.add_term(n2 / (kd * 2) - base, tr * eps);
            }
        }
        for i in 0..mu.len() {
            if mu[i] < bounds[i] {
                mu[i] += 1;
                continue 'outer;
            }
            mu[i] = 1;
        }
        break;
    }
    Ok(out)
}

/// Kac numerator of the level-`k` representation with lowest weight `λ`.
pub fn kac_numerator(datum: &RootDatum, k: i64, lambda: &Weight, g: &TorusElement, n_cut: i64) -> Result<QSeries> {
    check_alcove(datum, k, lambda)?;
    kac_numerator_shifted(datum, k + datum.h_dual, &lambda.add(&datum.rho).to_q(), g, n_cut)
}

/// `Tr(q g | H_λ)`: numerator divided by denominator, re-based at 0.
pub fn character(datum: &RootDatum, k: i64, lambda: &Weight, g: &TorusElement, n_cut: i64) -> Result<QSeries> {
    let num = kac_numerator(datum, k, lambda, g, n_cut)?;
    let den = kac_denominator(datum, g, n_cut)?;
    num.div(&den)
}

/// Rounds the `g = 1` coefficients to integers; `None` if any is not a
/// nonnegative integer within `tol`.
pub fn graded_dimensions(series: &QSeries, tol: f64) -> Option<Vec<u64>> {
    if series.terms.keys().any(|e| !e.is_integer()) {
        return None;
    }
    series
        .integer_coefficients()
        .iter()
        .map(|c| {
            let r = c.re.round();
            (r >= 0.0 && (c - Complex64::new(r, 0.0)).norm() < tol).then_some(r as u64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_root_datum;
    use crate::rational::qfrac;

    fn datum(s: &str) -> RootDatum {
        build_root_datum(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn denominator_examples() {
        let a1 = datum("A1");
        let d = kac_denominator(&a1, &TorusElement::identity(1), 4).unwrap();
        assert!((d.coeff(q(1)) - Complex64::new(-3.0, 0.0)).norm() < 1e-12);
        assert_eq!(kac_denominator(&a1, &TorusElement::identity(1), 0).unwrap(), QSeries::one(q(0)));
        // α = 2ω, so α(g) = 1/2 at angle 1/4.
        let g = TorusElement::new(vec![qfrac(1, 4)]);
        let d = kac_denominator(&a1, &g, 3).unwrap();
        assert!((d.coeff(q(1)) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn numerator_a1_level1() {
        let a1 = datum("A1");
        let g = TorusElement::identity(1);
        let n = kac_numerator(&a1, 1, &Weight(vec![0]), &g, 4).unwrap();
        // μ ∈ {1, 5, 7}: exponents μ²/12 − 1/12 = 0, 2, 4.
        assert_eq!(n.base_exponent, qfrac(1, 12));
        let rows: Vec<_> = n.rows().iter().map(|r| (r.0, r.2.round() as i64)).collect();
        assert_eq!(rows, vec![(0, 1), (2, -5), (4, 7)]);
        // μ ∈ {2, 4, 8, 10}: exponents 0, 1, 5, 8.
        let n = kac_numerator(&a1, 1, &Weight(vec![1]), &g, 8).unwrap();
        let signs: Vec<_> = n.terms.values().map(|c| c.re.signum() as i64).collect();
        assert_eq!(signs, vec![1, -1, 1, -1]);
    }

    #[test]
    fn character_examples() {
        let a1 = datum("A1");
        let g = TorusElement::identity(1);
        let ch = character(&a1, 1, &Weight(vec![0]), &g, 6).unwrap();
        assert_eq!(graded_dimensions(&ch, 1e-9).unwrap(), vec![1, 3, 4, 7, 13, 19, 29]);
        let a2 = datum("A2");
        let triv = character(&a2, 0, &Weight(vec![0, 0]), &TorusElement::identity(2), 5).unwrap();
        assert_eq!(graded_dimensions(&triv, 1e-9).unwrap(), vec![1, 0, 0, 0, 0, 0]);
        let ch = character(&a2, 1, &Weight(vec![1, 0]), &TorusElement::identity(2), 2).unwrap();
        assert_eq!(graded_dimensions(&ch, 1e-9).unwrap()[0], 3);
    }
}
