//! Lie algebra cohomology of `𝔫̄` with coefficients in `V_λ*`, computed
//! through harmonic representatives, and the splitting of the cubic Dirac
//! operator into the Chevalley–Eilenberg differential, its adjoint and a
//! `𝔱`-Dirac operator.

use crate::cartan::Weight;
use crate::dirac::DiracBundle;
use crate::error::Result;
use crate::frame::{anticommutator, max_abs, CMat, OrthonormalFrame};
use crate::irrep::{build_irrep, IrrepMatrices};
use crate::clifford::{Monomial, Pauli};
use crate::rational::{q, QVec};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `N_{αβ}^γ` with `[f_α, f_β] = Σ_γ N_{αβ}^γ f_γ`, stored `[α][β][γ]`.
pub fn lowering_structure_constants(frame: &OrthonormalFrame) -> Vec<Vec<Vec<Complex64>>> {
    let np = frame.num_positive_roots();
    let fs: Vec<Vec<Complex64>> = (0..np).map(|a| frame.root_coords(a).1).collect();
    let norms: Vec<f64> = fs.iter().map(|v| v.iter().map(|z| z.norm_sqr()).sum()).collect();
    (0..np)
        .map(|a| {
            (0..np)
                .map(|b| {
                    let br = frame.bracket(&fs[a], &fs[b]);
                    (0..np)
                        .map(|g| {
                            let ip: Complex64 = fs[g].iter().zip(&br).map(|(u, v)| u.conj() * v).sum();
                            ip / norms[g]
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `∂̄ = Σ_α R(f_α) ⊗ ε_α + ½ Σ_α ε_α · ad∨(f_α)` on `V ⊗ W`, where `W`
/// carries exterior operators `ε_α`, `ι_α` for the positive roots.
pub fn chevalley_eilenberg(
    frame: &OrthonormalFrame,
    irrep: &IrrepMatrices,
    eps: &[CMat],
    iota: &[CMat],
) -> CMat {
    let np = frame.num_positive_roots();
    let dw = eps[0].nrows();
    let id_v = CMat::identity(irrep.dim, irrep.dim);
    let nc = lowering_structure_constants(frame);
    let i = Complex64::new(0.0, 1.0);
    let mut d = CMat::zeros(irrep.dim * dw, irrep.dim * dw);
    let mut inner = CMat::zeros(dw, dw);
    for a in 0..np {
        let rf = -(&irrep.r[frame.x_index(a)] + &irrep.r[frame.y_index(a)] * i);
        d += rf.kronecker(&eps[a]);
        let mut coad = CMat::zeros(dw, dw);
        for b in 0..np {
            for g in 0..np {
                let n = nc[a][b][g];
                if n.norm() > 1e-13 {
                    coad -= (&eps[b] * &iota[g]) * n;
                }
            }
        }
        inner += &eps[a] * coad * c(0.5);
    }
    d += id_v.kronecker(&inner);
    d
}

/// Exterior algebra `Λ𝔫̄*`: one qubit per positive root, `ε_α` with
/// Jordan–Wigner signs.
pub fn exterior_operators(np: usize) -> (Vec<CMat>, Vec<CMat>) {
    let eps: Vec<CMat> = (0..np)
        .map(|a| {
            let mut ops: Vec<(usize, Pauli)> = (0..a).map(|k| (k, Pauli::Z)).collect();
            ops.push((a, Pauli::Raise));
            Monomial::pauli(np, &ops).to_dense()
        })
        .collect();
    let iota = eps.iter().map(|e| e.adjoint()).collect();
    (eps, iota)
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub lambda: Weight,
    pub degree_dims: Vec<usize>,
    /// `(degree, weight)` of each harmonic representative.
    pub harmonic_weights: Vec<(usize, QVec)>,
    /// `(ℓ(w), w(−λ−ρ)+ρ)` over the Weyl group.
    pub expected_weights: Vec<(usize, QVec)>,
    pub d_squared: f64,
    /// Largest deviation of a harmonic vector's measured `𝔱`-weight from its label.
    pub weight_residual: f64,
}

impl CohomologyReport {
    pub fn matches_expectation(&self) -> bool {
        let mut a = self.harmonic_weights.clone();
        let mut b = self.expected_weights.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// `H^•(𝔫̄; V_λ*)` from the kernel of the Laplacian `∂̄∂̄† + ∂̄†∂̄`,
/// computed block by block on `(weight, degree)`.
pub fn kostant_cohomology(frame: &OrthonormalFrame, lambda: &Weight) -> Result<CohomologyReport> {
    let datum = &frame.datum;
    let irrep = build_irrep(frame, lambda)?.dual();
    let np = frame.num_positive_roots();
    let (eps, iota) = exterior_operators(np);
    let dbar = chevalley_eilenberg(frame, &irrep, &eps, &iota);
    let d_squared = max_abs(&(&dbar * &dbar));
    let lap = &dbar * dbar.adjoint() + dbar.adjoint() * &dbar;
    let dw = 1usize << np;
    let roots = datum.positive_roots_q();
    // Label each basis vector of V ⊗ Λ by (degree, weight).
    let mut blocks: BTreeMap<(usize, QVec), Vec<usize>> = BTreeMap::new();
    for v in 0..irrep.dim {
        for s in 0..dw {
            let occ: Vec<usize> = (0..np).filter(|&a| (s >> (np - 1 - a)) & 1 == 1).collect();
            let mut w = irrep.weights[v].clone();
            for &a in &occ {
                for (x, y) in w.iter_mut().zip(&roots[a]) {
                    *x += *y;
                }
            }
            blocks.entry((occ.len(), w)).or_default().push(v * dw + s);
        }
    }
    let scale = max_abs(&lap).max(1.0);
    let mut degree_dims = vec![0usize; np + 1];
    let mut harmonic_weights = Vec::new();
    let mut weight_residual: f64 = 0.0;
    let cartan_action = cartan_operators(frame, &irrep, np);
    for ((deg, w), idx) in &blocks {
        let block = lap.select_rows(idx.iter()).select_columns(idx.iter());
        let eig = block.symmetric_eigen();
        for (k, &ev) in eig.eigenvalues.iter().enumerate() {
            if ev.abs() < 1e-9 * scale {
                degree_dims[*deg] += 1;
                harmonic_weights.push((*deg, w.clone()));
                let mut vec = nalgebra::DVector::<Complex64>::zeros(irrep.dim * dw);
                for (j, &row) in idx.iter().enumerate() {
                    vec[row] = eig.eigenvectors[(j, k)];
                }
                let expected = frame.weight_components(w);
                for (t, h) in cartan_action.iter().enumerate() {
                    let val = (vec.adjoint() * h * &vec)[(0, 0)];
                    weight_residual = weight_residual.max((val - Complex64::new(0.0, expected[t])).norm());
                }
            }
        }
    }
    let neg_lr: QVec = lambda.add(&datum.rho).to_q().iter().map(|x| -*x).collect();
    let expected_weights = datum
        .weyl_elements()
        .iter()
        .map(|w| {
            let v: QVec = w.apply(&neg_lr).iter().zip(datum.rho.to_q()).map(|(a, b)| *a + b).collect();
            (w.length(), v)
        })
        .collect();
    Ok(CohomologyReport {
        lambda: lambda.clone(),
        degree_dims,
        harmonic_weights,
        expected_weights,
        d_squared,
        weight_residual,
    })
}

/// `𝔱`-action on `V ⊗ Λ𝔫̄*` (coadjoint on the exterior factor).
fn cartan_operators(frame: &OrthonormalFrame, irrep: &IrrepMatrices, np: usize) -> Vec<CMat> {
    let dw = 1usize << np;
    let roots = frame.datum.positive_roots_q();
    let id_w = CMat::identity(dw, dw);
    let id_v = CMat::identity(irrep.dim, irrep.dim);
    (0..frame.rank())
        .map(|t| {
            let diag = CMat::from_fn(dw, dw, |r, col| {
                if r != col {
                    return Complex64::new(0.0, 0.0);
                }
                let mut w = vec![q(0); frame.rank()];
                for a in 0..np {
                    if (r >> (np - 1 - a)) & 1 == 1 {
                        for (x, y) in w.iter_mut().zip(&roots[a]) {
                            *x += *y;
                        }
                    }
                }
                Complex64::new(0.0, frame.weight_components(&w)[t])
            });
            irrep.r[t].kronecker(&id_w) + id_v.kronecker(&diag)
        })
        .collect()
}

/// Pieces of `D = ∂̄ − ∂̄† + D^𝔱_{−ρ}` on `V ⊗ S(𝔱*) ⊗ Λ𝔫̄*`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Alt1Report {
    /// `‖D − (∂̄ − ∂̄† + D^𝔱_{−ρ})‖_max`.
    pub residual: f64,
    /// `‖[D^𝔱_{−ρ}, ∂̄ − ∂̄†]₊‖_max`.
    pub cross_term: f64,
    pub d_squared: f64,
}

/// In the factorized spinor model the isomorphism `S ≅ S(𝔱*) ⊗ Λ𝔫̄*` is
/// the identity. `∂̄` is skew-adjointed (`∂̄* = −∂̄†`) to match the
/// skew-adjoint `D`, and `D^𝔱_{−ρ} = Σ_t T_t ψ^t` where `T_t` acts on the
/// exterior factor by its weight shifted by `−ρ`.
pub fn verify_alt1(bundle: &DiracBundle) -> Alt1Report {
    let frame = &bundle.frame;
    let dbar = chevalley_eilenberg(frame, &bundle.irrep, &bundle.spinors.epsilon, &bundle.spinors.iota);
    let n = bundle.dim();
    let mut dt = CMat::zeros(n, n);
    for t in 0..frame.rank() {
        dt += &bundle.t[t] * &bundle.psi[t];
    }
    let odd = &dbar - dbar.adjoint();
    let rebuilt = &odd + &dt;
    Alt1Report {
        residual: max_abs(&(&bundle.d - rebuilt)),
        cross_term: max_abs(&anticommutator(&dt, &odd)),
        d_squared: max_abs(&(&dbar * &dbar)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_root_datum;
    use crate::dirac::dirac_bundle;

    fn frame(name: &str) -> OrthonormalFrame {
        OrthonormalFrame::new(&build_root_datum(name.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn a1_trivial_coefficients() {
        let fr = frame("A1");
        let r = kostant_cohomology(&fr, &Weight(vec![0])).unwrap();
        assert_eq!(r.degree_dims, vec![1, 1]);
        assert!(r.matches_expectation(), "{r:?}");
        assert!(r.d_squared < 1e-10);
    }

    #[test]
    fn a2_degrees() {
        let fr = frame("A2");
        for lam in [vec![0, 0], vec![1, 0], vec![0, 1]] {
            let r = kostant_cohomology(&fr, &Weight(lam)).unwrap();
            assert_eq!(r.degree_dims, vec![1, 2, 2, 1]);
            assert!(r.matches_expectation(), "{r:?}");
            assert!(r.d_squared < 1e-10);
            assert!(r.weight_residual < 1e-8);
        }
    }

    #[test]
    fn alt1_decomposition() {
        for (name, lam) in [("A1", vec![0]), ("A1", vec![1]), ("A2", vec![0, 0]), ("A2", vec![1, 0])] {
            let fr = frame(name);
            let b = dirac_bundle(&fr, &Weight(lam)).unwrap();
            let r = verify_alt1(&b);
            assert!(r.residual < 1e-10 && r.d_squared < 1e-10, "{name}: {r:?}");
            assert!(r.cross_term < 1e-10, "{name}: {r:?}");
        }
    }
}
