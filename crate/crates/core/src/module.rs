//! Irreducible highest-weight modules built exactly from the Cartan matrix.
//!
//! Weight spaces are filled depth by depth: every vector of `V_μ` is a
//! combination of `f_i v` with `v` in a shallower space, and a candidate
//! is identified by its images under all raising operators (a nonzero
//! vector of an irreducible module with `μ ≠ λ` is never killed by every
//! `e_j`). The contravariant form `⟨f_i v, w⟩ = ⟨v, e_i w⟩` is then used
//! to pass to an orthonormal basis where `e_i` and `f_i` are transposes.

use crate::cartan::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::rational::independent_rows;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeSet, HashMap};

type Bq = BigRational;
type BMat = Vec<Vec<Bq>>; // rows = target basis, cols = source basis

fn bq(n: i64) -> Bq {
    Bq::from_integer(BigInt::from(n))
}

/// Exact module data indexed by weight space.
#[derive(Debug, Clone)]
pub struct ExactModule {
    pub lambda: Weight,
    pub spaces: Vec<Weight>,
    pub dims: Vec<usize>,
    alpha_rows: Vec<Vec<i64>>,
    index: HashMap<Weight, usize>,
    /// `(i, space)` ↦ matrix of `f_i : V_space → V_{space−α_i}`.
    lower: HashMap<(usize, usize), BMat>,
    /// `(i, space)` ↦ matrix of `e_i : V_space → V_{space+α_i}`.
    raise: HashMap<(usize, usize), BMat>,
    /// Contravariant form on each weight space.
    form: Vec<BMat>,
}

impl ExactModule {
    pub fn build(datum: &RootDatum, lambda: &Weight) -> Result<Self> {
        datum.check_dominant(lambda)?;
        let n = datum.rank();
        let alpha: Vec<Weight> = datum.cartan_matrix.iter().map(|r| Weight(r.clone())).collect();
        let mut m = ExactModule {
            lambda: lambda.clone(),
            spaces: vec![lambda.clone()],
            dims: vec![1],
            alpha_rows: datum.cartan_matrix.clone(),
            index: HashMap::from([(lambda.clone(), 0)]),
            lower: HashMap::new(),
            raise: HashMap::new(),
            form: vec![vec![vec![bq(1)]]],
        };
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let candidates: BTreeSet<Weight> = layer
                .iter()
                .flat_map(|&s| alpha.iter().map(move |a| (s, a)))
                .map(|(s, a)| m.spaces[s].sub(a))
                .filter(|mu| !m.index.contains_key(mu))
                .collect();
            let mut next = Vec::new();
            for mu in candidates {
                if let Some(idx) = m.add_space(&alpha, n, &mu) {
                    next.push(idx);
                }
            }
            layer = next;
        }
        Ok(m)
    }

    fn add_space(&mut self, alpha: &[Weight], n: usize, mu: &Weight) -> Option<usize> {
        // Raising targets μ+α_j that exist.
        let targets: Vec<(usize, usize)> = (0..n)
            .filter_map(|j| self.index.get(&mu.add(&alpha[j])).map(|&t| (j, t)))
            .collect();
        let mut offsets = Vec::with_capacity(targets.len());
        let mut width = 0;
        for &(_, t) in &targets {
            offsets.push(width);
            width += self.dims[t];
        }
        // Candidates f_i b for b a basis vector of V_{μ+α_i}.
        let mut cands: Vec<(usize, usize, usize)> = Vec::new();
        for i in 0..n {
            if let Some(&src) = self.index.get(&mu.add(&alpha[i])) {
                for b in 0..self.dims[src] {
                    cands.push((i, src, b));
                }
            }
        }
        let mut rows: Vec<Vec<Bq>> = Vec::with_capacity(cands.len());
        for &(i, src, b) in &cands {
            let nu = &self.spaces[src];
            let mut row = vec![Bq::zero(); width];
            for (slot, &(j, t)) in targets.iter().enumerate() {
                // e_j f_i b = f_i e_j b + δ_ij ν_i b
                let nu_up = nu.add(&alpha[j]);
                if let Some(&up) = self.index.get(&nu_up) {
                    if let Some(fi) = self.lower.get(&(i, up)) {
                        let ej = &self.raise[&(j, src)];
                        for r in 0..self.dims[t] {
                            let mut acc = Bq::zero();
                            for k in 0..self.dims[up] {
                                if !ej[k][b].is_zero() && !fi[r][k].is_zero() {
                                    acc += &fi[r][k] * &ej[k][b];
                                }
                            }
                            row[offsets[slot] + r] += acc;
                        }
                    }
                }
                if i == j {
                    row[offsets[slot] + b] += bq(nu.0[i]);
                }
            }
            rows.push(row);
        }
        let (selected, coords) = independent_rows(&rows);
        if selected.is_empty() {
            return None;
        }
        let dim = selected.len();
        let idx = self.spaces.len();
        self.spaces.push(mu.clone());
        self.dims.push(dim);
        self.index.insert(mu.clone(), idx);
        // f_i matrices into the new space.
        for i in 0..n {
            if let Some(&src) = self.index.get(&mu.add(&alpha[i])) {
                let mut mat = vec![vec![Bq::zero(); self.dims[src]]; dim];
                for (c, &(ci, csrc, b)) in cands.iter().enumerate() {
                    if ci == i && csrc == src {
                        for s in 0..dim {
                            mat[s][b] = coords[c][s].clone();
                        }
                    }
                }
                self.lower.insert((i, src), mat);
            }
        }
        // e_j matrices out of the new space.
        for (slot, &(j, t)) in targets.iter().enumerate() {
            let mut mat = vec![vec![Bq::zero(); dim]; self.dims[t]];
            for (s, &c) in selected.iter().enumerate() {
                for r in 0..self.dims[t] {
                    mat[r][s] = rows[c][offsets[slot] + r].clone();
                }
            }
            self.raise.insert((j, idx), mat);
        }
        // Contravariant form: ⟨f_i b, u⟩ = ⟨b, e_i u⟩.
        let mut g = vec![vec![Bq::zero(); dim]; dim];
        for (s, &c) in selected.iter().enumerate() {
            let (i, src, b) = cands[c];
            let ei = &self.raise[&(i, idx)];
            let gs = &self.form[src];
            for u in 0..dim {
                let mut acc = Bq::zero();
                for k in 0..self.dims[src] {
                    if !gs[b][k].is_zero() && !ei[k][u].is_zero() {
                        acc += &gs[b][k] * &ei[k][u];
                    }
                }
                g[s][u] = acc;
            }
        }
        self.form.push(g);
        Some(idx)
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Pass to an orthonormal basis for the contravariant form.
    pub fn unitarize(&self) -> Result<UnitaryModule> {
        let n = self.lambda.rank();
        let total = self.dim();
        let mut offset = Vec::with_capacity(self.spaces.len());
        let mut acc = 0;
        for &d in &self.dims {
            offset.push(acc);
            acc += d;
        }
        // G = L Lᵀ; orthonormal coordinates y = Lᵀ x.
        let mut lt = Vec::with_capacity(self.spaces.len());
        let mut lt_inv = Vec::with_capacity(self.spaces.len());
        for (s, g) in self.form.iter().enumerate() {
            let d = self.dims[s];
            let gm = DMatrix::from_fn(d, d, |r, c| g[r][c].to_f64().unwrap_or(f64::NAN));
            let chol = gm.cholesky().ok_or_else(|| {
                Error::Numeric(format!("contravariant form not positive on {}", self.spaces[s]))
            })?;
            let l = chol.l();
            let ltm = l.transpose();
            let inv = ltm
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Numeric("singular Cholesky factor".into()))?;
            lt.push(ltm);
            lt_inv.push(inv);
        }
        let convert = |maps: &HashMap<(usize, usize), BMat>, i: usize, sign: i64| -> DMatrix<f64> {
            let mut out = DMatrix::zeros(total, total);
            for (&(j, src), mat) in maps {
                if j != i {
                    continue;
                }
                let tw = if sign > 0 {
                    self.spaces[src].add(&Weight(self.cartan_row(i)))
                } else {
                    self.spaces[src].sub(&Weight(self.cartan_row(i)))
                };
                let t = self.index[&tw];
                let raw = DMatrix::from_fn(self.dims[t], self.dims[src], |r, c| {
                    mat[r][c].to_f64().unwrap_or(f64::NAN)
                });
                let block = &lt[t] * raw * &lt_inv[src];
                out.view_mut((offset[t], offset[src]), (self.dims[t], self.dims[src]))
                    .copy_from(&block);
            }
            out
        };
        let e: Vec<DMatrix<f64>> = (0..n).map(|i| convert(&self.raise, i, 1)).collect();
        let f: Vec<DMatrix<f64>> = (0..n).map(|i| convert(&self.lower, i, -1)).collect();
        let mut weights = Vec::with_capacity(total);
        for (s, w) in self.spaces.iter().enumerate() {
            for _ in 0..self.dims[s] {
                weights.push(w.clone());
            }
        }
        Ok(UnitaryModule {
            lambda: self.lambda.clone(),
            weights,
            e,
            f,
        })
    }

    fn cartan_row(&self, i: usize) -> Vec<i64> {
        self.alpha_rows[i].clone()
    }
}

/// Module in an orthonormal basis: `f_i = e_iᵀ`, `h_i` diagonal.
#[derive(Debug, Clone)]
pub struct UnitaryModule {
    pub lambda: Weight,
    /// Weight of each basis vector.
    pub weights: Vec<Weight>,
    pub e: Vec<DMatrix<f64>>,
    pub f: Vec<DMatrix<f64>>,
}

impl UnitaryModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Diagonal of `h_i`.
    pub fn h(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            if r == c {
                self.weights[r].0[i] as f64
            } else {
                0.0
            }
        })
    }
}
