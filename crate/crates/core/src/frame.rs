//! Real orthonormal frame of the compact form and its structure constants.
//!
//! Basis order: `ℓ` Cartan directions `ξ_t`, then for each positive root
//! `α` (in datum order) the pair `X_α = (e_α − f_α)/2`,
//! `Y_α = i(e_α + f_α)/2`, where `f_α = e_α†` and `⟨e_α, f_α⟩ = −2`.
//! Root vectors are nested commutators `e_α = s_α [e_{i_k}, [⋯, e_{i_1}]]`
//! along the word produced by [`OrthonormalFrame::root_words`]; the sign of
//! each `e_α` is whatever that word gives, which fixes the Chevalley signs.
//! The basic form is `⟨X, Y⟩ = −Tr_ad(XY)/(2h∨)`.

use crate::cartan::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::module::{ExactModule, UnitaryModule};
use crate::rational::{q_to_f64, Q};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn to_complex(m: &DMatrix<f64>) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

#[derive(Debug, Clone)]
pub struct OrthonormalFrame {
    pub datum: RootDatum,
    pub labels: Vec<String>,
    /// `ξ_t = Σ_j C_tj · i h_j`.
    pub cartan_coeffs: DMatrix<f64>,
    pub root_words: Vec<Vec<usize>>,
    /// Scale turning the nested commutator into `e_α`, per module basis.
    root_scales: Vec<f64>,
    /// `f_abc` stored at `a·d² + b·d + c`.
    f: Vec<f64>,
}

/// Residuals of the frame invariants.
#[derive(Debug, Clone, Copy)]
pub struct FrameReport {
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub casimir: f64,
}

impl OrthonormalFrame {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        let l = datum.rank();
        let np = datum.positive_roots.len();
        let d = l + 2 * np;
        // Coroot Gram K = L Lᵀ, C = L⁻¹.
        let k = DMatrix::from_fn(l, l, |i, j| {
            q_to_f64(&datum.ip(&datum.simple_coroots[i], &datum.simple_coroots[j]).unwrap())
        });
        let chol = k
            .cholesky()
            .ok_or_else(|| Error::Numeric("coroot Gram matrix not positive".into()))?;
        let cartan_coeffs = chol
            .l()
            .try_inverse()
            .ok_or_else(|| Error::Numeric("singular Cholesky factor".into()))?;
        let root_words = root_words(datum);
        let mut labels: Vec<String> = (0..l).map(|t| format!("h{}", t + 1)).collect();
        for r in &datum.positive_roots_simple {
            let name: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            labels.push(format!("X[{}]", name.join(",")));
            labels.push(format!("Y[{}]", name.join(",")));
        }
        let mut frame = OrthonormalFrame {
            datum: datum.clone(),
            labels,
            cartan_coeffs,
            root_words,
            root_scales: vec![1.0; np],
            f: vec![0.0; d * d * d],
        };
        let adjoint = ExactModule::build(datum, &datum.theta)?.unitarize()?;
        let h = datum.h_dual as f64;
        frame.root_scales = (0..np)
            .map(|a| 2.0 * h.sqrt() / frame.nested(&adjoint, a).norm())
            .collect();
        let ad = frame.represent(&adjoint);
        let mut f = vec![0.0; d * d * d];
        for a in 0..d {
            for b in 0..d {
                let br = commutator(&ad[a], &ad[b]);
                for c in 0..d {
                    let tr = (&br * &ad[c]).trace();
                    f[a * d * d + b * d + c] = -tr.re / (2.0 * h);
                }
            }
        }
        frame.f = f;
        Ok(frame)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.datum.positive_roots.len()
    }

    pub fn x_index(&self, root: usize) -> usize {
        self.rank() + 2 * root
    }

    pub fn y_index(&self, root: usize) -> usize {
        self.rank() + 2 * root + 1
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> f64 {
        let d = self.dim();
        self.f[a * d * d + b * d + c]
    }

    /// Nested commutator of raising operators along the root word, unscaled.
    fn nested(&self, m: &UnitaryModule, root: usize) -> DMatrix<f64> {
        let word = &self.root_words[root];
        let mut acc = m.e[word[0]].clone();
        for &i in &word[1..] {
            acc = &m.e[i] * &acc - &acc * &m.e[i];
        }
        acc
    }

    /// Matrix of `e_α` on a unitary module.
    pub fn root_vector(&self, m: &UnitaryModule, root: usize) -> DMatrix<f64> {
        self.nested(m, root) * self.root_scales[root]
    }

    /// Anti-Hermitian matrices `R_a` of the frame on a unitary module.
    pub fn represent(&self, m: &UnitaryModule) -> Vec<CMat> {
        let l = self.rank();
        let n = m.dim();
        let mut out = Vec::with_capacity(self.dim());
        for t in 0..l {
            out.push(CMat::from_fn(n, n, |r, c| {
                if r == c {
                    let v: f64 = (0..l).map(|j| self.cartan_coeffs[(t, j)] * m.weights[r].0[j] as f64).sum();
                    I * v
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }));
        }
        for a in 0..self.num_positive_roots() {
            let e = to_complex(&self.root_vector(m, a));
            let ed = e.adjoint();
            out.push((&e - &ed) * Complex64::new(0.5, 0.0));
            out.push((&e + &ed) * Complex64::new(0.0, 0.5));
        }
        out
    }

    /// Real components `μ(ξ_t)/i` of a weight on the Cartan directions.
    pub fn weight_components(&self, mu: &[Q]) -> Vec<f64> {
        let l = self.rank();
        (0..l)
            .map(|t| (0..l).map(|j| self.cartan_coeffs[(t, j)] * q_to_f64(&mu[j])).sum())
            .collect()
    }

    /// Same for an integral weight.
    pub fn weight_components_int(&self, mu: &Weight) -> Vec<f64> {
        self.weight_components(&mu.to_q())
    }

    /// Frame coordinates of `e_α` and `f_α` (complex).
    pub fn root_coords(&self, root: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        let d = self.dim();
        let mut e = vec![Complex64::new(0.0, 0.0); d];
        let mut f = e.clone();
        e[self.x_index(root)] = Complex64::new(1.0, 0.0);
        e[self.y_index(root)] = -I;
        f[self.x_index(root)] = Complex64::new(-1.0, 0.0);
        f[self.y_index(root)] = -I;
        (e, f)
    }

    /// Bracket of two complex frame vectors.
    pub fn bracket(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for a in 0..d {
            if x[a].norm() == 0.0 {
                continue;
            }
            for b in 0..d {
                if y[b].norm() == 0.0 {
                    continue;
                }
                let xy = x[a] * y[b];
                for (c, o) in out.iter_mut().enumerate() {
                    let fabc = self.f(a, b, c);
                    if fabc != 0.0 {
                        *o += xy * fabc;
                    }
                }
            }
        }
        out
    }

    /// Adjoint matrices `(ad ξ_a)_{cb} = f_abc` in the frame basis.
    pub fn adjoint_matrices(&self) -> Vec<CMat> {
        let d = self.dim();
        (0..d)
            .map(|a| CMat::from_fn(d, d, |c, b| Complex64::new(self.f(a, b, c), 0.0)))
            .collect()
    }

    /// Residuals of antisymmetry, Jacobi and `f_bca f_dca = 2h∨ δ_bd`.
    pub fn report(&self) -> FrameReport {
        let d = self.dim();
        let mut anti: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let v = self.f(a, b, c);
                    anti = anti
                        .max((v + self.f(b, a, c)).abs())
                        .max((v + self.f(a, c, b)).abs())
                        .max((v - self.f(b, c, a)).abs());
                }
            }
        }
        let mut jac: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let mut s = 0.0;
                        for m in 0..d {
                            s += self.f(a, b, m) * self.f(m, c, e)
                                + self.f(b, c, m) * self.f(m, a, e)
                                + self.f(c, a, m) * self.f(m, b, e);
                        }
                        jac = jac.max(s.abs());
                    }
                }
            }
        }
        let two_h = 2.0 * self.datum.h_dual as f64;
        let mut cas: f64 = 0.0;
        for b in 0..d {
            for e in 0..d {
                let mut s = 0.0;
                for c in 0..d {
                    for a in 0..d {
                        s += self.f(b, c, a) * self.f(e, c, a);
                    }
                }
                let target = if b == e { two_h } else { 0.0 };
                cas = cas.max((s - target).abs());
            }
        }
        FrameReport {
            antisymmetry: anti,
            jacobi: jac,
            casimir: cas,
        }
    }
}

/// For each positive root a word `i_1 ⋯ i_k` with every prefix sum a root;
/// at each step the smallest admissible simple root is peeled off the top.
pub fn root_words(datum: &RootDatum) -> Vec<Vec<usize>> {
    let roots = &datum.positive_roots_simple;
    let mut words: Vec<Vec<usize>> = Vec::with_capacity(roots.len());
    for r in roots {
        let height: i64 = r.iter().sum();
        if height == 1 {
            words.push(vec![r.iter().position(|&x| x == 1).unwrap()]);
            continue;
        }
        let (i, prev) = (0..r.len())
            .find_map(|i| {
                let mut p = r.clone();
                p[i] -= 1;
                datum.root_index(&p).map(|idx| (i, idx))
            })
            .expect("every non-simple positive root has a predecessor");
        let mut w = words[prev].clone();
        w.push(i);
        words.push(w);
    }
    words
}
