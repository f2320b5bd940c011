//! Level-k fusion: Brauer–Klimyk tensor products, Kac–Walton reduction,
//! the modular S-matrix and the Verlinde formula.

use crate::affine::{alcove_points, check_alcove, reduce_to_alcove};
use crate::cartan::{AlgebraSpec, RootDatum, Weight};
use crate::error::{Error, Result};
use crate::rational::{q_to_f64, QVec};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Largest allowed Verlinde rounding residual.
pub const VERLINDE_ROUNDING_TOL: f64 = 1e-6;

/// Tensor product multiplicities `V_λ ⊗ V_μ = ⊕ N_ν V_ν`.
pub fn tensor_decompose(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    datum.check_dominant(lambda)?;
    datum.check_dominant(mu)?;
    // Iterate over the weights of the smaller factor.
    let (small, big) = if datum.irrep_dimension(lambda)? <= datum.irrep_dimension(mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let shifted = big.add(&datum.rho);
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (nu, m) in datum.weight_multiplicities(small)? {
        let (dom, sign) = datum.dominant_conjugate(&nu.add(&shifted).to_q());
        if sign == 0 {
            continue;
        }
        let w = Weight::from_q(&dom).expect("integral").sub(&datum.rho);
        *acc.entry(w).or_insert(0) += sign as i64 * m as i64;
    }
    let mut out = BTreeMap::new();
    for (w, n) in acc {
        if n < 0 {
            return Err(Error::Numeric(format!("negative tensor multiplicity at {w}")));
        }
        if n > 0 {
            out.insert(w, n as u64);
        }
    }
    Ok(out)
}

/// Kac–Walton fusion product of two level-`k` alcove weights.
pub fn fuse(datum: &RootDatum, k: i64, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    check_alcove(datum, k, lambda)?;
    check_alcove(datum, k, mu)?;
    let k_dual = k + datum.h_dual;
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (nu, m) in tensor_decompose(datum, lambda, mu)? {
        let red = reduce_to_alcove(datum, k_dual, &nu.add(&datum.rho).to_q())?;
        if red.sign == 0 {
            continue;
        }
        let w = red.integral_weight().expect("integral").sub(&datum.rho);
        *acc.entry(w).or_insert(0) += red.sign as i64 * m as i64;
    }
    let mut out = BTreeMap::new();
    for (w, n) in acc {
        if n < 0 {
            return Err(Error::Numeric(format!("negative fusion coefficient at {w}")));
        }
        if n > 0 {
            out.insert(w, n as u64);
        }
    }
    Ok(out)
}

/// Structure constants of the level-`k` fusion ring on the alcove basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTable {
    pub algebra: AlgebraSpec,
    pub level: i64,
    pub basis: Vec<Weight>,
    /// `(i, j, m) ↦ N_{ij}^m`, zero entries omitted.
    pub n: BTreeMap<(usize, usize, usize), u64>,
}

impl FusionTable {
    pub fn get(&self, i: usize, j: usize, m: usize) -> u64 {
        self.n.get(&(i, j, m)).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.basis.iter().position(|b| b == w)
    }

    /// Violations of commutativity, unit and associativity.
    pub fn ring_axiom_violations(&self) -> usize {
        let n = self.rank();
        let mut bad = 0;
        let zero = self.index_of(&Weight::zero(self.algebra.rank)).unwrap_or(0);
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    if self.get(i, j, m) != self.get(j, i, m) {
                        bad += 1;
                    }
                    if j == 0 && self.get(zero, i, m) != u64::from(i == m) {
                        bad += 1;
                    }
                    for p in 0..n {
                        let lhs: u64 = (0..n).map(|x| self.get(i, j, x) * self.get(x, m, p)).sum();
                        let rhs: u64 = (0..n).map(|x| self.get(j, m, x) * self.get(i, x, p)).sum();
                        if lhs != rhs {
                            bad += 1;
                        }
                    }
                }
            }
        }
        bad
    }
}

pub fn fusion_table(datum: &RootDatum, k: i64) -> Result<FusionTable> {
    let basis = alcove_points(datum, k);
    let index: HashMap<Weight, usize> = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i..basis.len()).map(move |j| (i, j)))
        .collect();
    type Entry = ((usize, usize, usize), u64);
    let rows: Vec<Vec<Entry>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Vec<_>> {
            let prod = fuse(datum, k, &basis[i], &basis[j])?;
            let mut out = Vec::new();
            for (w, n) in prod {
                let m = *index
                    .get(&w)
                    .ok_or_else(|| Error::Numeric(format!("fusion left the alcove at {w}")))?;
                out.push(((i, j, m), n));
                if i != j {
                    out.push(((j, i, m), n));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(FusionTable {
        algebra: datum.spec,
        level: k,
        basis,
        n: rows.into_iter().flatten().collect(),
    })
}

/// Unitary, symmetric modular S-matrix on the alcove basis.
#[derive(Debug, Clone)]
pub struct SMatrixData {
    pub basis: Vec<Weight>,
    pub k_dual: i64,
    pub entries: DMatrix<Complex64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SMatrixReport {
    pub unitarity: f64,
    pub symmetry: f64,
    pub min_first_row: f64,
}

impl SMatrixData {
    pub fn report(&self) -> SMatrixReport {
        let n = self.entries.nrows();
        let u = &self.entries * self.entries.adjoint() - DMatrix::<Complex64>::identity(n, n);
        let s = &self.entries - self.entries.transpose();
        let min_first_row = (0..n)
            .map(|j| {
                let z = self.entries[(0, j)];
                if z.im.abs() < 1e-9 {
                    z.re
                } else {
                    f64::NEG_INFINITY
                }
            })
            .fold(f64::INFINITY, f64::min);
        SMatrixReport {
            unitarity: u.iter().map(|z| z.norm()).fold(0.0, f64::max),
            symmetry: s.iter().map(|z| z.norm()).fold(0.0, f64::max),
            min_first_row,
        }
    }
}

/// `S_λμ ∝ Σ_w det(w) exp(−2πi ⟨w(λ+ρ), μ+ρ⟩ / k∨)`, scaled to be unitary
/// and rotated so that `S_00 > 0`.
pub fn s_matrix(datum: &RootDatum, k: i64) -> Result<SMatrixData> {
    if k < 0 {
        return Err(Error::Domain(format!("level must be nonnegative, got {k}")));
    }
    let basis = alcove_points(datum, k);
    let k_dual = k + datum.h_dual;
    let n = basis.len();
    let shifted: Vec<QVec> = basis.iter().map(|w| w.add(&datum.rho).to_q()).collect();
    let tau = std::f64::consts::TAU;
    let mut raw = DMatrix::<Complex64>::zeros(n, n);
    for (i, a) in shifted.iter().enumerate() {
        for w in datum.weyl_elements() {
            let wa = w.apply(a);
            for (j, b) in shifted.iter().enumerate() {
                let x = q_to_f64(&datum.ip(&wa, b)?) / k_dual as f64;
                raw[(i, j)] += Complex64::from_polar(w.sign() as f64, -tau * x);
            }
        }
    }
    let norm = raw.norm();
    let phase = raw[(0, 0)].conj() / raw[(0, 0)].norm();
    let entries = raw * (phase * (n as f64).sqrt() / norm);
    Ok(SMatrixData {
        basis,
        k_dual,
        entries,
    })
}

/// A disagreement between Kac–Walton and Verlinde coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct FusionMismatch {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub kac_walton: u64,
    pub verlinde: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionReport {
    pub rank: usize,
    pub mismatches: Vec<FusionMismatch>,
    pub max_rounding_residual: f64,
}

/// `N_{λμ}^ν = Σ_σ S_λσ S_μσ conj(S_νσ) / S_0σ`, rounded, with the residual.
pub fn verlinde_coefficients(s: &SMatrixData) -> (Vec<Vec<Vec<i64>>>, f64) {
    let n = s.entries.nrows();
    let mut res: f64 = 0.0;
    let mut out = vec![vec![vec![0i64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut z = Complex64::new(0.0, 0.0);
                for sg in 0..n {
                    z += s.entries[(i, sg)] * s.entries[(j, sg)] * s.entries[(m, sg)].conj() / s.entries[(0, sg)];
                }
                let r = z.re.round();
                res = res.max((z - Complex64::new(r, 0.0)).norm());
                out[i][j][m] = r as i64;
            }
        }
    }
    (out, res)
}

pub fn verify_fusion(datum: &RootDatum, k: i64) -> Result<FusionReport> {
    let table = fusion_table(datum, k)?;
    let s = s_matrix(datum, k)?;
    let (v, res) = verlinde_coefficients(&s);
    let n = table.rank();
    let mut mismatches = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let kw = table.get(i, j, m);
                if kw as i64 != v[i][j][m] {
                    mismatches.push(FusionMismatch {
                        i,
                        j,
                        m,
                        kac_walton: kw,
                        verlinde: v[i][j][m],
                    });
                }
            }
        }
    }
    if res >= VERLINDE_ROUNDING_TOL {
        return Err(Error::Numeric(format!("Verlinde rounding residual {res:e} too large")));
    }
    Ok(FusionReport {
        rank: n,
        mismatches,
        max_rounding_residual: res,
    })
}

/// Signed Weyl images `(det w, w(λ+ρ))`.
#[derive(Debug, Clone, Serialize)]
pub struct SignedTorusImage {
    pub terms: Vec<(i8, QVec)>,
}

pub fn restrict_to_torus(datum: &RootDatum, k: i64, lambda: &Weight) -> Result<SignedTorusImage> {
    check_alcove(datum, k, lambda)?;
    let lr = lambda.add(&datum.rho).to_q();
    Ok(SignedTorusImage {
        terms: datum
            .weyl_elements()
            .iter()
            .map(|w| (w.sign() as i8, w.apply(&lr)))
            .collect(),
    })
}

/// Conjugation `λ ↦ −w₀(λ)` on the alcove basis, checked against `S²`
/// and against `N_{λμ}^0 = δ_{μ,λ*}`.
#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub permutation: Vec<usize>,
    pub is_involution: bool,
    pub matches_s_squared: bool,
    pub matches_unit_coefficients: bool,
    pub is_ring_automorphism: bool,
}

pub fn duality_pairing(datum: &RootDatum, k: i64) -> Result<DualityReport> {
    let table = fusion_table(datum, k)?;
    let w0 = datum.longest_element();
    let n = table.rank();
    let permutation: Vec<usize> = table
        .basis
        .iter()
        .map(|w| {
            let c = Weight(w0.apply_int(&w.neg().0));
            table.index_of(&c).ok_or_else(|| Error::Numeric(format!("conjugate of {w} left the alcove")))
        })
        .collect::<Result<_>>()?;
    let is_involution = (0..n).all(|i| permutation[permutation[i]] == i);
    let s = s_matrix(datum, k)?;
    let s2 = &s.entries * &s.entries;
    let matches_s_squared = (0..n).all(|i| {
        (0..n).all(|j| {
            let target = if permutation[i] == j { 1.0 } else { 0.0 };
            (s2[(i, j)] - Complex64::new(target, 0.0)).norm() < 1e-9
        })
    });
    let zero = table.index_of(&Weight::zero(datum.rank())).unwrap_or(0);
    let matches_unit_coefficients =
        (0..n).all(|i| (0..n).all(|j| table.get(i, j, zero) == u64::from(permutation[i] == j)));
    let is_ring_automorphism = (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|m| table.get(i, j, m) == table.get(permutation[i], permutation[j], permutation[m]))
        })
    });
    Ok(DualityReport {
        permutation,
        is_involution,
        matches_s_squared,
        matches_unit_coefficients,
        is_ring_automorphism,
    })
}
