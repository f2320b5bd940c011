//! Spinor modules for `Cliff(𝔤*)` and mode-truncated loop Clifford algebras.
//!
//! Operators are first assembled as monomials (each basis vector goes to a
//! multiple of one basis vector), which covers Jordan–Wigner strings
//! exactly, and only then densified.

use crate::error::{Error, Result};
use crate::frame::{anticommutator, commutator, max_abs, CMat, OrthonormalFrame};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
    /// `|1⟩⟨0|`
    Raise,
    /// `|0⟩⟨1|`
    Lower,
}

/// Operator sending basis vector `j` to `coeff[j] · e_{target[j]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub target: Vec<u32>,
    pub coeff: Vec<Complex64>,
}

impl Monomial {
    pub fn identity(dim: usize) -> Self {
        Monomial {
            target: (0..dim as u32).collect(),
            coeff: vec![ONE; dim],
        }
    }

    /// Pauli string on `nq` qubits; qubit 0 is the most significant bit.
    pub fn pauli(nq: usize, ops: &[(usize, Pauli)]) -> Self {
        let dim = 1usize << nq;
        let mut target = Vec::with_capacity(dim);
        let mut coeff = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut t = j;
            let mut c = ONE;
            for &(qb, p) in ops {
                let shift = nq - 1 - qb;
                let bit = (t >> shift) & 1;
                match p {
                    Pauli::X => t ^= 1 << shift,
                    Pauli::Y => {
                        t ^= 1 << shift;
                        c *= if bit == 0 { I } else { -I };
                    }
                    Pauli::Z => {
                        if bit == 1 {
                            c = -c;
                        }
                    }
                    Pauli::Raise => {
                        if bit == 0 {
                            t |= 1 << shift;
                        } else {
                            c = ZERO;
                        }
                    }
                    Pauli::Lower => {
                        if bit == 1 {
                            t &= !(1 << shift);
                        } else {
                            c = ZERO;
                        }
                    }
                }
            }
            target.push(t as u32);
            coeff.push(c);
        }
        Monomial { target, coeff }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let mut target = Vec::with_capacity(self.dim());
        let mut coeff = Vec::with_capacity(self.dim());
        for j in 0..other.dim() {
            let mid = other.target[j] as usize;
            target.push(self.target[mid]);
            coeff.push(self.coeff[mid] * other.coeff[j]);
        }
        Monomial { target, coeff }
    }

    pub fn scaled(&self, c: Complex64) -> Monomial {
        Monomial {
            target: self.target.clone(),
            coeff: self.coeff.iter().map(|x| x * c).collect(),
        }
    }

    /// `dense += c · self`.
    pub fn accumulate(&self, dense: &mut CMat, c: Complex64) {
        for (j, (&t, &x)) in self.target.iter().zip(&self.coeff).enumerate() {
            if x != ZERO {
                dense[(t as usize, j)] += c * x;
            }
        }
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim(), self.dim());
        self.accumulate(&mut m, ONE);
        m
    }
}

/// Self-adjoint Majorana generators `γ_0 … γ_{count−1}` on
/// `⌈count/2⌉` qubits starting at `first`, with `γ_a² = 1`.
fn majoranas(nq: usize, first: usize, count: usize) -> Vec<Monomial> {
    (0..count)
        .map(|a| {
            let q = first + a / 2;
            let mut ops: Vec<(usize, Pauli)> = (first..q).map(|k| (k, Pauli::Z)).collect();
            ops.push((q, if a % 2 == 0 { Pauli::X } else { Pauli::Y }));
            Monomial::pauli(nq, &ops)
        })
        .collect()
}

fn z_string(nq: usize, qubits: std::ops::Range<usize>) -> Monomial {
    let ops: Vec<(usize, Pauli)> = qubits.map(|k| (k, Pauli::Z)).collect();
    Monomial::pauli(nq, &ops)
}

/// Graded irreducible `Cliff(𝔤*)`-module in the factorized model
/// `S = S(𝔱*) ⊗ Λ𝔫̄*`.
///
/// The first `⌈ℓ/2⌉` qubits carry `S(𝔱*)`, then one qubit per positive
/// root. With `ε_α` the wedge by the root covector (Jordan–Wigner signed,
/// times the grading of `S(𝔱*)`) and `ι_α = ε_α†`, the generators are
/// `ψ^{ξ_t} = γ_t`, `ψ^{X_α} = −(ε_α + ι_α)`, `ψ^{Y_α} = −i(ε_α − ι_α)`, so
/// that `ψ(e_α) = −2ε_α` and `ψ(f_α) = 2ι_α`.
#[derive(Debug, Clone)]
pub struct SpinorModule {
    pub dim: usize,
    pub torus_qubits: usize,
    pub psi: Vec<CMat>,
    /// Diagonal of the grading operator.
    pub grading: Vec<f64>,
    pub sigma: Vec<CMat>,
    pub epsilon: Vec<CMat>,
    pub iota: Vec<CMat>,
    /// Self-adjoint volume element, present when `dim 𝔤` is odd.
    pub volume: Option<CMat>,
}

#[derive(Debug, Clone, Copy)]
pub struct SpinorReport {
    pub clifford: f64,
    pub odd: f64,
    pub sigma_bracket: f64,
    pub sigma_psi: f64,
}

pub fn build_spinors(frame: &OrthonormalFrame) -> Result<SpinorModule> {
    let l = frame.rank();
    let np = frame.num_positive_roots();
    let d = frame.dim();
    let tq = l.div_ceil(2);
    let nq = tq + np;
    if nq > 12 {
        return Err(Error::CapExceeded {
            what: "spinor module".into(),
            size: 1 << nq,
            cap: 1 << 12,
        });
    }
    let dim = 1usize << nq;
    let gamma_t = z_string(nq, 0..tq);
    let mut psi: Vec<CMat> = majoranas(nq, 0, l).iter().map(|m| m.to_dense()).collect();
    let mut epsilon = Vec::with_capacity(np);
    let mut iota = Vec::with_capacity(np);
    for a in 0..np {
        let qb = tq + a;
        let mut ops: Vec<(usize, Pauli)> = (tq..qb).map(|k| (k, Pauli::Z)).collect();
        ops.push((qb, Pauli::Raise));
        let eps = gamma_t.compose(&Monomial::pauli(nq, &ops)).to_dense();
        let io = eps.adjoint();
        psi.push(-(&eps + &io));
        psi.push((&eps - &io) * (-I));
        epsilon.push(eps);
        iota.push(io);
    }
    let grading: Vec<f64> = (0..dim).map(|j| if j.count_ones() % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let sigma = sigma_from_psi(frame, &psi);
    let volume = if d % 2 == 1 {
        let mut p = CMat::identity(dim, dim);
        for m in &psi {
            p = &p * m;
        }
        let k = (d * (d - 1) / 2) % 4;
        Some(p * I.powu(k as u32))
    } else {
        None
    };
    Ok(SpinorModule {
        dim,
        torus_qubits: tq,
        psi,
        grading,
        sigma,
        epsilon,
        iota,
        volume,
    })
}

/// `σ_a = −¼ Σ f_bca ψ^b ψ^c`.
fn sigma_from_psi(frame: &OrthonormalFrame, psi: &[CMat]) -> Vec<CMat> {
    let d = frame.dim();
    let n = psi[0].nrows();
    (0..d)
        .map(|a| {
            let mut s = CMat::zeros(n, n);
            for b in 0..d {
                for c in 0..d {
                    let f = frame.f(b, c, a);
                    if f != 0.0 {
                        s += (&psi[b] * &psi[c]) * Complex64::new(-0.25 * f, 0.0);
                    }
                }
            }
            s
        })
        .collect()
}

impl SpinorModule {
    pub fn grading_matrix(&self) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dim,
            self.grading.iter().map(|&g| Complex64::new(g, 0.0)),
        ))
    }

    /// Set of occupied positive roots of a basis state.
    pub fn occupied_roots(&self, state: usize) -> Vec<usize> {
        let np = self.epsilon.len();
        let nq = self.torus_qubits + np;
        (0..np)
            .filter(|&a| (state >> (nq - 1 - (self.torus_qubits + a))) & 1 == 1)
            .collect()
    }

    pub fn report(&self, frame: &OrthonormalFrame) -> SpinorReport {
        let d = self.psi.len();
        let g = self.grading_matrix();
        let mut cl: f64 = 0.0;
        let mut odd: f64 = 0.0;
        for a in 0..d {
            for b in a..d {
                let mut ac = anticommutator(&self.psi[a], &self.psi[b]);
                if a == b {
                    for i in 0..self.dim {
                        ac[(i, i)] -= Complex64::new(2.0, 0.0);
                    }
                }
                cl = cl.max(max_abs(&ac));
            }
            odd = odd.max(max_abs(&anticommutator(&self.psi[a], &g)));
        }
        let mut sb: f64 = 0.0;
        let mut sp: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                let mut lhs = commutator(&self.sigma[a], &self.sigma[b]);
                let mut lhs2 = commutator(&self.sigma[a], &self.psi[b]);
                for c in 0..d {
                    let f = frame.f(a, b, c);
                    if f != 0.0 {
                        lhs -= &self.sigma[c] * Complex64::new(f, 0.0);
                    }
                    let f2 = frame.f(c, a, b);
                    if f2 != 0.0 {
                        lhs2 -= &self.psi[c] * Complex64::new(f2, 0.0);
                    }
                }
                sb = sb.max(max_abs(&lhs));
                sp = sp.max(max_abs(&lhs2));
            }
        }
        SpinorReport {
            clifford: cl,
            odd,
            sigma_bracket: sb,
            sigma_psi: sp,
        }
    }
}

/// Mode-truncated loop Clifford algebra with `ψ^a(m)` for `|m| ≤ N`.
///
/// Positive modes raise energy: `ψ^a(m) = √2 c†_{a,m}` and
/// `ψ^a(−m) = √2 c_{a,m}` for `m > 0`, while the zero modes form a copy of
/// `S(𝔤*)`. The first `⌈d/2⌉` qubits carry the zero modes, followed by one
/// qubit per `(m, a)` with `m = 1..N`.
///
/// The truncated `σ_a(m)` equals the compression of the untruncated one to
/// states without modes above `N`, so bracket identities are exact on
/// states whose intermediate energies stay at or below `N`.
#[derive(Debug, Clone)]
pub struct TruncatedLoopClifford {
    pub mode_cutoff: usize,
    pub frame_dim: usize,
    pub dim: usize,
    psi: Vec<Monomial>,
    /// `σ_a(m)` for `|m| ≤ N`, stored at `(m + N)·d + a`.
    sigma: Vec<CMat>,
    pub energy: Vec<usize>,
}

/// Largest state-space dimension of a truncated loop Clifford module.
pub const LOOP_DIM_CAP: usize = 1 << 15;

pub fn build_loop_spinors(frame: &OrthonormalFrame, n_modes: usize) -> Result<TruncatedLoopClifford> {
    let d = frame.dim();
    let zq = d.div_ceil(2);
    let nq = zq + d * n_modes;
    if d * (2 * n_modes + 1) > 30 || nq > 15 {
        return Err(Error::CapExceeded {
            what: "truncated loop Clifford module".into(),
            size: 1usize << nq.min(40),
            cap: LOOP_DIM_CAP,
        });
    }
    let dim = 1usize << nq;
    let n = n_modes as i64;
    let zero = majoranas(nq, 0, d);
    let z_all_zero = z_string(nq, 0..zq);
    let sqrt2 = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    let mode_qubit = |m: usize, a: usize| zq + (m - 1) * d + a;
    let mut psi: Vec<Monomial> = Vec::with_capacity(d * (2 * n_modes + 1));
    for m in -n..=n {
        for a in 0..d {
            let op = if m == 0 {
                zero[a].clone()
            } else {
                let qb = mode_qubit(m.unsigned_abs() as usize, a);
                let mut ops: Vec<(usize, Pauli)> = (zq..qb).map(|k| (k, Pauli::Z)).collect();
                ops.push((qb, if m > 0 { Pauli::Raise } else { Pauli::Lower }));
                z_all_zero.compose(&Monomial::pauli(nq, &ops)).scaled(sqrt2)
            };
            psi.push(op);
        }
    }
    let energy: Vec<usize> = (0..dim)
        .map(|j| {
            (1..=n_modes)
                .map(|m| (0..d).filter(|&a| (j >> (nq - 1 - mode_qubit(m, a))) & 1 == 1).count() * m)
                .sum()
        })
        .collect();
    let mut out = TruncatedLoopClifford {
        mode_cutoff: n_modes,
        frame_dim: d,
        dim,
        psi,
        sigma: Vec::new(),
        energy,
    };
    let mut sigma = Vec::with_capacity(d * (2 * n_modes + 1));
    for m in -n..=n {
        for a in 0..d {
            let mut s = CMat::zeros(dim, dim);
            for p in -n..=n {
                let qm = m - p;
                if qm.abs() > n {
                    continue;
                }
                for b in 0..d {
                    for c in 0..d {
                        let f = frame.f(b, c, a);
                        if f == 0.0 {
                            continue;
                        }
                        let prod = out.psi_monomial(b, p).compose(out.psi_monomial(c, qm));
                        prod.accumulate(&mut s, Complex64::new(-0.25 * f, 0.0));
                    }
                }
            }
            sigma.push(s);
        }
    }
    out.sigma = sigma;
    Ok(out)
}

impl TruncatedLoopClifford {
    fn slot(&self, m: i64) -> usize {
        let n = self.mode_cutoff as i64;
        assert!(m.abs() <= n, "mode {m} outside the window");
        (m + n) as usize
    }

    pub fn psi_monomial(&self, a: usize, m: i64) -> &Monomial {
        &self.psi[self.slot(m) * self.frame_dim + a]
    }

    pub fn psi(&self, a: usize, m: i64) -> CMat {
        self.psi_monomial(a, m).to_dense()
    }

    pub fn sigma(&self, a: usize, m: i64) -> &CMat {
        &self.sigma[self.slot(m) * self.frame_dim + a]
    }

    /// Index of the vacuum line (all modes empty, first zero-mode state).
    pub fn vacuum(&self) -> usize {
        0
    }

    /// Basis states of energy at most `e`.
    pub fn states_up_to(&self, e: i64) -> Vec<usize> {
        (0..self.dim).filter(|&j| (self.energy[j] as i64) <= e).collect()
    }

    /// Columns of the identity at the given states.
    pub fn selector(&self, states: &[usize]) -> CMat {
        let mut p = CMat::zeros(self.dim, states.len());
        for (k, &s) in states.iter().enumerate() {
            p[(s, k)] = ONE;
        }
        p
    }

    /// Cubic loop Dirac operator `⅓ Σ σ_a(m) ψ^a(−m)` (trivial coefficient module).
    pub fn dirac(&self) -> CMat {
        let n = self.mode_cutoff as i64;
        let mut dm = CMat::zeros(self.dim, self.dim);
        for m in -n..=n {
            for a in 0..self.frame_dim {
                let psi = self.psi(a, -m);
                dm += self.sigma(a, m) * psi;
            }
        }
        dm / Complex64::new(3.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_root_datum;

    fn frame(name: &str) -> OrthonormalFrame {
        OrthonormalFrame::new(&build_root_datum(name.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn spinor_relations() {
        for (name, dim) in [("A1", 4), ("A2", 16), ("B2", 32)] {
            let fr = frame(name);
            let s = build_spinors(&fr).unwrap();
            assert_eq!(s.dim, dim);
            let r = s.report(&fr);
            assert!(r.clifford < 1e-12, "{name} {r:?}");
            assert!(r.odd < 1e-12, "{name} {r:?}");
            assert!(r.sigma_bracket < 1e-9, "{name} {r:?}");
            assert!(r.sigma_psi < 1e-9, "{name} {r:?}");
            assert_eq!(s.grading.iter().sum::<f64>(), 0.0);
        }
    }

    #[test]
    fn volume_element_is_a_central_involution() {
        let fr = frame("A1");
        let s = build_spinors(&fr).unwrap();
        let w = s.volume.as_ref().unwrap();
        assert!(max_abs(&(w * w - CMat::identity(4, 4))) < 1e-12);
        assert!(max_abs(&(w - w.adjoint())) < 1e-12);
        for p in &s.psi {
            assert!(max_abs(&commutator(w, p)) < 1e-12);
        }
    }

    #[test]
    fn loop_generators_anticommute() {
        let fr = frame("A1");
        let lc = build_loop_spinors(&fr, 1).unwrap();
        assert_eq!(lc.dim, 32);
        for m in -1i64..=1 {
            for n in -1i64..=1 {
                for a in 0..3 {
                    for b in 0..3 {
                        let mut ac = anticommutator(&lc.psi(a, m), &lc.psi(b, n));
                        if a == b && m == -n {
                            for i in 0..lc.dim {
                                ac[(i, i)] -= Complex64::new(2.0, 0.0);
                            }
                        }
                        assert!(max_abs(&ac) < 1e-12);
                    }
                }
            }
        }
        // Negative modes annihilate the vacuum.
        let v = lc.selector(&[lc.vacuum()]);
        for a in 0..3 {
            assert!(max_abs(&(lc.psi(a, -1) * &v)) < 1e-14);
        }
    }
}
