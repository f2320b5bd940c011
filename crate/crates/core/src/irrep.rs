//! Unitary matrices of irreducible representations in the orthonormal frame.

use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::frame::{commutator, max_abs, CMat, OrthonormalFrame};
use crate::module::ExactModule;
use crate::rational::{q_to_f64, QVec};
use num_complex::Complex64;

/// Largest irrep dimension built as dense matrices.
pub const IRREP_DIM_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct IrrepMatrices {
    /// Highest weight of the module before any dualization.
    pub lambda: Weight,
    pub dim: usize,
    /// `R_a`, anti-Hermitian, one per frame direction.
    pub r: Vec<CMat>,
    /// Weight of each basis vector.
    pub weights: Vec<QVec>,
    /// True for the contragredient module `V_λ*` (lowest weight `−λ`).
    pub dual: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct IrrepReport {
    pub bracket: f64,
    pub anti_hermitian: f64,
    pub casimir: f64,
}

/// Irreducible module with highest weight `λ`.
pub fn build_irrep(frame: &OrthonormalFrame, lambda: &Weight) -> Result<IrrepMatrices> {
    let datum = &frame.datum;
    datum.check_dominant(lambda)?;
    let dim = datum.irrep_dimension(lambda)? as usize;
    if dim > IRREP_DIM_CAP {
        return Err(Error::CapExceeded {
            what: format!("irrep {lambda}"),
            size: dim,
            cap: IRREP_DIM_CAP,
        });
    }
    let module = ExactModule::build(datum, lambda)?;
    if module.dim() != dim {
        return Err(Error::Numeric(format!(
            "module for {lambda} has dimension {} but the Weyl formula gives {dim}",
            module.dim()
        )));
    }
    let unitary = module.unitarize()?;
    let r = frame.represent(&unitary);
    Ok(IrrepMatrices {
        lambda: lambda.clone(),
        dim,
        r,
        weights: unitary.weights.iter().map(|w| w.to_q()).collect(),
        dual: false,
    })
}

impl IrrepMatrices {
    /// The contragredient module: `R_a ↦ conj(R_a)`, weights negated.
    pub fn dual(&self) -> IrrepMatrices {
        IrrepMatrices {
            lambda: self.lambda.clone(),
            dim: self.dim,
            r: self.r.iter().map(|m| m.map(|z| z.conj())).collect(),
            weights: self.weights.iter().map(|w| w.iter().map(|x| -*x).collect()).collect(),
            dual: !self.dual,
        }
    }

    pub fn frame_dim(&self) -> usize {
        self.r.len()
    }

    /// Residuals of the bracket relations, anti-Hermiticity and the Casimir.
    pub fn report(&self, frame: &OrthonormalFrame) -> IrrepReport {
        let d = frame.dim();
        let mut bracket: f64 = 0.0;
        for a in 0..d {
            for b in a + 1..d {
                let mut lhs = commutator(&self.r[a], &self.r[b]);
                for c in 0..d {
                    let f = frame.f(a, b, c);
                    if f != 0.0 {
                        lhs -= &self.r[c] * Complex64::new(f, 0.0);
                    }
                }
                bracket = bracket.max(max_abs(&lhs));
            }
        }
        let anti = self
            .r
            .iter()
            .map(|m| max_abs(&(m + m.adjoint())))
            .fold(0.0, f64::max);
        let datum = &frame.datum;
        let lam = self.lambda.to_q();
        let two_rho: QVec = datum.rho.to_q().iter().map(|x| *x * 2).collect();
        let expected = -(q_to_f64(&datum.norm2(&lam).unwrap()) + q_to_f64(&datum.ip(&lam, &two_rho).unwrap()));
        let mut cas = CMat::zeros(self.dim, self.dim);
        for m in &self.r {
            cas += m * m;
        }
        for i in 0..self.dim {
            cas[(i, i)] -= Complex64::new(expected, 0.0);
        }
        IrrepReport {
            bracket,
            anti_hermitian: anti,
            casimir: max_abs(&cas),
        }
    }
}
