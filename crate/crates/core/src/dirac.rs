//! The cubic Dirac operator on `V ⊗ S`, its family `D_μ = D + iψ(μ)`, and
//! the mode-truncated loop version built on spinors alone.

use crate::cartan::Weight;
use crate::clifford::{build_spinors, SpinorModule, TruncatedLoopClifford};
use crate::error::{Error, Result};
use crate::frame::{anticommutator, commutator, max_abs, CMat, OrthonormalFrame};
use crate::irrep::{build_irrep, IrrepMatrices};
use crate::rational::{q_to_f64, QVec};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Relative singular-value threshold for kernel detection.
pub const KERNEL_REL_TOL: f64 = 1e-6;

/// Cubic Dirac operator `D = Σ R_a ⊗ ψ^a + ⅓ Σ 1 ⊗ σ_a ψ^a` on `V ⊗ S`.
#[derive(Debug, Clone)]
pub struct DiracBundle {
    pub frame: OrthonormalFrame,
    pub irrep: IrrepMatrices,
    pub spinors: SpinorModule,
    pub d: CMat,
    /// `T_a = R_a ⊗ 1 + 1 ⊗ σ_a`.
    pub t: Vec<CMat>,
    /// `1 ⊗ ψ^a`.
    pub psi: Vec<CMat>,
    /// Grading `1 ⊗ Γ` (diagonal).
    pub grading: Vec<f64>,
    /// `λ + ρ` in fundamental-weight coordinates.
    pub lambda_rho: QVec,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiracReport {
    pub d_psi_minus_2t: f64,
    pub d_t: f64,
    pub d_squared: f64,
    pub skew: f64,
    pub odd: f64,
    pub t_bracket: f64,
    pub expected_d_squared: f64,
}

impl DiracReport {
    pub fn max_residual(&self) -> f64 {
        [self.d_psi_minus_2t, self.d_t, self.d_squared, self.skew, self.odd, self.t_bracket]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn cubic_dirac(frame: &OrthonormalFrame, irrep: IrrepMatrices, spinors: SpinorModule) -> DiracBundle {
    let dv = irrep.dim;
    let ds = spinors.dim;
    let id_v = CMat::identity(dv, dv);
    let id_s = CMat::identity(ds, ds);
    let d = frame.dim();
    let mut dm = CMat::zeros(dv * ds, dv * ds);
    let mut cubic = CMat::zeros(ds, ds);
    let mut t = Vec::with_capacity(d);
    let mut psi = Vec::with_capacity(d);
    for a in 0..d {
        dm += kron(&irrep.r[a], &spinors.psi[a]);
        cubic += &spinors.sigma[a] * &spinors.psi[a];
        t.push(kron(&irrep.r[a], &id_s) + kron(&id_v, &spinors.sigma[a]));
        psi.push(kron(&id_v, &spinors.psi[a]));
    }
    dm += kron(&id_v, &cubic) / c(3.0);
    let grading = (0..dv).flat_map(|_| spinors.grading.iter().copied()).collect();
    let lambda_rho = irrep.lambda.add(&frame.datum.rho).to_q();
    DiracBundle {
        frame: frame.clone(),
        irrep,
        spinors,
        d: dm,
        t,
        psi,
        grading,
        lambda_rho,
    }
}

/// Bundle on `V_λ* ⊗ S`, whose family has kernel on the orbit of `λ + ρ`.
pub fn dirac_bundle(frame: &OrthonormalFrame, lambda: &Weight) -> Result<DiracBundle> {
    let irrep = build_irrep(frame, lambda)?.dual();
    let spinors = build_spinors(frame)?;
    let size = irrep.dim * spinors.dim;
    if size > DENSE_CAP {
        return Err(Error::CapExceeded {
            what: "V ⊗ S".into(),
            size,
            cap: DENSE_CAP,
        });
    }
    Ok(cubic_dirac(frame, irrep, spinors))
}

/// Largest dense operator dimension handled by the Dirac routines.
pub const DENSE_CAP: usize = 1024;

/// Kernel dimension and smallest singular value on the positive-chirality block.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySample {
    pub mu: Vec<f64>,
    pub min_singular: f64,
    pub kernel_dim: usize,
}

impl DiracBundle {
    pub fn dim(&self) -> usize {
        self.d.nrows()
    }

    pub fn lambda_rho_norm2(&self) -> f64 {
        q_to_f64(&self.frame.datum.norm2(&self.lambda_rho).unwrap())
    }

    /// `ψ(μ) = Σ μ_a ψ^a` for `μ` given by its frame components.
    pub fn psi_of(&self, mu: &[f64]) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for (a, &x) in mu.iter().enumerate() {
            if x != 0.0 {
                m += &self.psi[a] * c(x);
            }
        }
        m
    }

    pub fn t_of(&self, mu: &[f64]) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for (a, &x) in mu.iter().enumerate() {
            if x != 0.0 {
                m += &self.t[a] * c(x);
            }
        }
        m
    }

    /// Frame components of a weight (zero on root directions).
    pub fn weight_to_frame(&self, mu: &[crate::rational::Q]) -> Vec<f64> {
        let mut v = self.frame.weight_components(mu);
        v.resize(self.frame.dim(), 0.0);
        v
    }

    pub fn report(&self) -> DiracReport {
        let n = self.dim();
        let d = self.frame.dim();
        let mut dpsi: f64 = 0.0;
        let mut dt: f64 = 0.0;
        let mut tb: f64 = 0.0;
        for b in 0..d {
            let r = anticommutator(&self.d, &self.psi[b]) - &self.t[b] * c(2.0);
            dpsi = dpsi.max(max_abs(&r));
            dt = dt.max(max_abs(&commutator(&self.d, &self.t[b])));
            for a in 0..b {
                let mut lhs = commutator(&self.t[a], &self.t[b]);
                for cc in 0..d {
                    let f = self.frame.f(a, b, cc);
                    if f != 0.0 {
                        lhs -= &self.t[cc] * c(f);
                    }
                }
                tb = tb.max(max_abs(&lhs));
            }
        }
        let expected = -self.lambda_rho_norm2();
        let mut sq = &self.d * &self.d;
        for i in 0..n {
            sq[(i, i)] -= c(expected);
        }
        let skew = max_abs(&(&self.d + self.d.adjoint()));
        let g = CMat::from_diagonal(&DVector::from_iterator(n, self.grading.iter().map(|&x| c(x))));
        let odd = max_abs(&anticommutator(&self.d, &g));
        DiracReport {
            d_psi_minus_2t: dpsi,
            d_t: dt,
            d_squared: max_abs(&sq),
            skew,
            odd,
            t_bracket: tb,
            expected_d_squared: expected,
        }
    }

    /// `D_μ = D + iψ(μ)`.
    pub fn family_matrix(&self, mu: &[f64]) -> CMat {
        &self.d + self.psi_of(mu) * I
    }

    /// Residual of `D_μ² + |λ+ρ−μ|² − 2i T(μ) + 2⟨λ+ρ, μ⟩ = 0`.
    pub fn family_square_residual(&self, mu: &[f64]) -> f64 {
        let n = self.dim();
        let dm = self.family_matrix(mu);
        let lr = self.weight_to_frame(&self.lambda_rho);
        let diff2: f64 = lr.iter().zip(mu).map(|(a, b)| (a - b) * (a - b)).sum();
        let dot: f64 = lr.iter().zip(mu).map(|(a, b)| a * b).sum();
        let mut r = &dm * &dm - self.t_of(mu) * (I * 2.0);
        for i in 0..n {
            r[(i, i)] += c(diff2 + 2.0 * dot);
        }
        max_abs(&r)
    }

    fn positive_columns(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grading[i] > 0.0).collect()
    }

    /// Kernel dimension and smallest singular value of `D_μ` on
    /// `V ⊗ S⁺` (equivalently of `ϖD_μ` on `S⁺` when `dim 𝔤` is odd).
    pub fn family_at(&self, mu: &[f64]) -> FamilySample {
        let dm = self.family_matrix(mu);
        let cols = self.positive_columns();
        let block = dm.select_columns(cols.iter());
        let sv = block.singular_values();
        let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        let kernel_dim = sv.iter().filter(|&&s| s < KERNEL_REL_TOL * top).count();
        FamilySample {
            mu: mu.to_vec(),
            min_singular: min,
            kernel_dim,
        }
    }

    /// Orthonormal basis of the full kernel of `D_μ` on `V ⊗ S`.
    pub fn kernel_basis(&self, mu: &[f64]) -> CMat {
        let dm = self.family_matrix(mu);
        let h = dm.adjoint() * &dm;
        let eig = h.symmetric_eigen();
        let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1.0);
        let idx: Vec<usize> = (0..eig.eigenvalues.len())
            .filter(|&i| eig.eigenvalues[i].abs().sqrt() < KERNEL_REL_TOL * top.sqrt())
            .collect();
        eig.eigenvectors.select_columns(idx.iter())
    }

    /// Dominant `𝔱*` representative of the coadjoint orbit through `μ`, in
    /// fundamental-weight coordinates: `⟨ω_i, t⟩` is the top eigenvalue of
    /// `−i R(μ)` on the fundamental module `V(ω_i)`.
    pub fn orbit_representative(&self, fundamentals: &[IrrepMatrices], mu: &[f64]) -> Vec<f64> {
        let datum = &self.frame.datum;
        let l = datum.rank();
        let m: Vec<f64> = fundamentals
            .iter()
            .map(|v| {
                let n = v.dim;
                let mut x = CMat::zeros(n, n);
                for (a, &coef) in mu.iter().enumerate() {
                    x += &v.r[a] * c(coef);
                }
                let h = x * (-I);
                h.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let g = DMatrix::from_fn(l, l, |i, j| q_to_f64(&datum.gram[i][j]));
        let ginv = g.try_inverse().expect("Gram matrix is invertible");
        (0..l).map(|i| (0..l).map(|j| ginv[(i, j)] * m[j]).sum()).collect()
    }

    /// Distance from `μ` to the coadjoint orbit of `λ + ρ`.
    pub fn orbit_distance(&self, fundamentals: &[IrrepMatrices], mu: &[f64]) -> f64 {
        let datum = &self.frame.datum;
        let t = self.orbit_representative(fundamentals, mu);
        let l = datum.rank();
        let diff: Vec<f64> = (0..l).map(|i| t[i] - q_to_f64(&self.lambda_rho[i])).collect();
        let mut n2 = 0.0;
        for i in 0..l {
            for j in 0..l {
                n2 += diff[i] * q_to_f64(&datum.gram[i][j]) * diff[j];
            }
        }
        n2.max(0.0).sqrt()
    }

    /// Fundamental modules used by [`Self::orbit_distance`].
    pub fn fundamental_modules(&self) -> Result<Vec<IrrepMatrices>> {
        let l = self.frame.rank();
        (0..l).map(|i| build_irrep(&self.frame, &Weight::unit(l, i))).collect()
    }

    /// `exp(ad X)` acting on frame components, for `X` given by components.
    pub fn adjoint_action(&self, x: &[f64]) -> DMatrix<f64> {
        let d = self.frame.dim();
        let mut m = DMatrix::zeros(d, d);
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0.0 {
                continue;
            }
            for b in 0..d {
                for cc in 0..d {
                    m[(cc, b)] += xa * self.frame.f(a, b, cc);
                }
            }
        }
        m.exp()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanPoint {
    pub mu: Vec<f64>,
    pub min_singular: f64,
    pub kernel_dim: usize,
    pub orbit_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyScanResult {
    pub samples: Vec<ScanPoint>,
    pub orbit_radius: f64,
}

impl FamilyScanResult {
    /// Samples where kernel detection and orbit membership disagree.
    pub fn mismatches(&self, tol: f64) -> Vec<usize> {
        self.samples
            .iter()
            .enumerate()
            .filter(|(_, s)| (s.kernel_dim > 0) != (s.orbit_distance < tol))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Evaluate the family over a grid of `𝔤*` points (frame components).
pub fn orbit_scan(bundle: &DiracBundle, grid: &[Vec<f64>]) -> Result<FamilyScanResult> {
    let fundamentals = bundle.fundamental_modules()?;
    let samples: Vec<ScanPoint> = grid
        .par_iter()
        .map(|mu| {
            let s = bundle.family_at(mu);
            ScanPoint {
                orbit_distance: bundle.orbit_distance(&fundamentals, mu),
                mu: s.mu,
                min_singular: s.min_singular,
                kernel_dim: s.kernel_dim,
            }
        })
        .collect();
    Ok(FamilyScanResult {
        samples,
        orbit_radius: bundle.lambda_rho_norm2().sqrt(),
    })
}

/// Deterministic scan grid: conjugates `Ad(g)(s·(λ+ρ))` of scaled copies
/// of `λ + ρ` (about a third of them with `s = 1`, i.e. on the orbit),
/// Weyl images of `λ + ρ`, and uniformly random points in a ball.
pub fn scan_grid(bundle: &DiracBundle, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let d = bundle.frame.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lr = bundle.weight_to_frame(&bundle.lambda_rho);
    let radius = bundle.lambda_rho_norm2().sqrt();
    let mut grid = Vec::with_capacity(count);
    for w in bundle.frame.datum.weyl_elements() {
        if grid.len() >= count / 6 {
            break;
        }
        grid.push(bundle.weight_to_frame(&w.apply(&bundle.lambda_rho)));
    }
    let scales = [1.0, 1.0, 0.5, 1.5, 0.999, 1.001, 0.0, 2.0];
    let mut k = 0;
    while grid.len() < (2 * count) / 3 {
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.5..1.5)).collect();
        let g = bundle.adjoint_action(&x);
        let s = scales[k % scales.len()];
        k += 1;
        let v = DVector::from_iterator(d, lr.iter().map(|x| x * s));
        grid.push((g * v).iter().copied().collect());
    }
    while grid.len() < count {
        let v: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..2.0) * radius).collect();
        grid.push(v);
    }
    grid
}

#[derive(Debug, Clone, Serialize)]
pub struct ThomReport {
    pub epsilons: Vec<f64>,
    pub min_singular: Vec<f64>,
    pub invertible: bool,
}

/// Minimum singular value of `ε D + iψ(μ)` along `ε ∈ [0, 1]`.
pub fn thom_deformation(bundle: &DiracBundle, mu: &[f64], steps: usize) -> ThomReport {
    let steps = steps.max(2);
    let epsilons: Vec<f64> = (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect();
    let ipsi = bundle.psi_of(mu) * I;
    let min_singular: Vec<f64> = epsilons
        .par_iter()
        .map(|&e| {
            let m = &bundle.d * c(e) + &ipsi;
            m.singular_values().iter().cloned().fold(f64::INFINITY, f64::min)
        })
        .collect();
    let scale = bundle.d.norm().max(1.0);
    let invertible = min_singular.iter().all(|&s| s > KERNEL_REL_TOL * scale);
    ThomReport {
        epsilons,
        min_singular,
        invertible,
    }
}

/// On `ker D_μ`, compare `D_{μ+ν}` with `iψ(ν)` and check that the
/// kernel is stable under `ψ(ν)` for `ν ∈ 𝔱*` normal to the orbit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormalActionReport {
    pub kernel_dim: usize,
    pub action_residual: f64,
    pub kernel_leak: f64,
}

pub fn normal_action(bundle: &DiracBundle, mu: &[f64], nu: &[f64]) -> NormalActionReport {
    let k = bundle.kernel_basis(mu);
    let shifted: Vec<f64> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
    let lhs = bundle.family_matrix(&shifted) * &k;
    let rhs = bundle.psi_of(nu) * I * &k;
    let action = max_abs(&(&lhs - &rhs));
    let proj = &k * k.adjoint();
    let leak = max_abs(&(&rhs - &proj * &rhs));
    NormalActionReport {
        kernel_dim: k.ncols(),
        action_residual: action,
        kernel_leak: leak,
    }
}

/// Residuals of the truncated loop relations with trivial coefficients
/// (`λ = 0`, shifted level `h∨`).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LoopReport {
    pub current_algebra: f64,
    pub dirac_psi: f64,
    pub dirac_sigma: f64,
    pub dirac_square: f64,
    pub states_checked: usize,
}

impl LoopReport {
    pub fn max_residual(&self) -> f64 {
        [self.current_algebra, self.dirac_psi, self.dirac_sigma, self.dirac_square]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Check, on states whose intermediate energies stay within the window:
/// `[σ_a(m), σ_b(n)] = f_abc σ_c(m+n) + h∨ m δ_ab δ_{m+n,0}`,
/// `[D, ψ^b(n)]₊ = 2σ_b(n)`, `[D, σ_b(n)] = −n h∨ ψ^b(n)` and
/// `D² = −2h∨ E − ⟨ρ, ρ⟩`.
pub fn verify_loop_relations(frame: &OrthonormalFrame, lc: &TruncatedLoopClifford) -> LoopReport {
    let n = lc.mode_cutoff as i64;
    let d = frame.dim();
    let h = frame.datum.h_dual as f64;
    let rho2 = q_to_f64(&frame.datum.norm2(&frame.datum.rho).unwrap());
    let sel = |cap: i64| {
        let states = lc.states_up_to(cap);
        (lc.selector(&states), states.len())
    };
    let mut current: f64 = 0.0;
    let mut checked = 0;
    let pairs: Vec<(i64, i64)> = (-n..=n)
        .flat_map(|m| (-n..=n).map(move |k| (m, k)))
        .filter(|(m, k)| (m + k).abs() <= n)
        .collect();
    let results: Vec<(f64, usize)> = pairs
        .par_iter()
        .map(|&(m, k)| {
            let (p, cnt) = sel(n - m.max(k).max(0));
            let mut worst: f64 = 0.0;
            if cnt == 0 {
                return (0.0, 0);
            }
            for a in 0..d {
                let sa_p = lc.sigma(a, m) * &p;
                for b in 0..d {
                    let sb_p = lc.sigma(b, k) * &p;
                    let mut r = lc.sigma(a, m) * &sb_p - lc.sigma(b, k) * &sa_p;
                    for cc in 0..d {
                        let f = frame.f(a, b, cc);
                        if f != 0.0 {
                            r -= lc.sigma(cc, m + k) * &p * c(f);
                        }
                    }
                    if a == b && m + k == 0 {
                        r -= &p * c(h * m as f64);
                    }
                    worst = worst.max(max_abs(&r));
                }
            }
            (worst, cnt)
        })
        .collect();
    for (w, cnt) in results {
        current = current.max(w);
        checked = checked.max(cnt);
    }
    let dm = lc.dirac();
    let mut dpsi: f64 = 0.0;
    let mut dsig: f64 = 0.0;
    for k in -n..=n {
        let (p, cnt) = sel(n - k.max(0));
        if cnt == 0 {
            continue;
        }
        let dp = &dm * &p;
        for b in 0..d {
            let psi = lc.psi(b, k);
            let r = &dm * (&psi * &p) + &psi * &dp - lc.sigma(b, k) * &p * c(2.0);
            dpsi = dpsi.max(max_abs(&r));
            let s = lc.sigma(b, k);
            let r = &dm * (s * &p) - s * &dp + &psi * &p * c(k as f64 * h);
            dsig = dsig.max(max_abs(&r));
        }
    }
    let (p, _) = sel(n);
    let states = lc.states_up_to(n);
    let mut sq = &dm * (&dm * &p);
    for (col, &s) in states.iter().enumerate() {
        sq[(s, col)] += c(2.0 * h * lc.energy[s] as f64 + rho2);
    }
    LoopReport {
        current_algebra: current,
        dirac_psi: dpsi,
        dirac_sigma: dsig,
        dirac_square: max_abs(&sq),
        states_checked: checked,
    }
}
