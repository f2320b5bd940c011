//! Level-k alcoves and the affine Weyl group acting at shifted level `k∨`.
//!
//! The affine reflection in the wall `⟨μ, θ⟩ = k∨` is
//! `μ ↦ μ − (⟨μ,θ⟩ − k∨) θ`; together with the finite Weyl group it
//! generates `W ⋉ k∨ Q∨`, with `Q∨` identified inside `𝔱*` by the basic form.
//! All wall tests are exact.

use crate::cartan::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::rational::{q, Q, QVec};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Weight of the affine algebra: level, finite part and energy (multiple of `δ`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub level: i64,
    pub finite: Weight,
    pub energy: Q,
}

impl AffineWeight {
    pub fn new(level: i64, finite: Weight) -> Self {
        AffineWeight {
            level,
            finite,
            energy: q(0),
        }
    }

    /// Shift by `(h∨, ρ, 0)`.
    pub fn rho_shifted(&self, datum: &RootDatum) -> AffineWeight {
        AffineWeight {
            level: self.level + datum.h_dual,
            finite: self.finite.add(&datum.rho),
            energy: self.energy,
        }
    }
}

/// Outcome of reducing a `ρ`-shifted weight into the `k∨`-scaled alcove.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlcoveReduction {
    /// Dominant representative with `⟨weight, θ⟩ ≤ k∨`.
    pub weight: QVec,
    /// `det w` of the element used, or 0 when the input is wall-fixed.
    pub sign: i8,
    /// Parity of the number of reflections applied.
    pub length_parity: u8,
}

impl AlcoveReduction {
    pub fn integral_weight(&self) -> Option<Weight> {
        Weight::from_q(&self.weight)
    }
}

/// Dominant `λ` with `⟨λ, θ⟩ ≤ k`, in lexicographic order.
pub fn alcove_points(datum: &RootDatum, k: i64) -> Vec<Weight> {
    if k < 0 {
        return Vec::new();
    }
    // ⟨ω_i, θ⟩ are the positive integers a_i∨ (comarks).
    let marks: Vec<i64> = (0..datum.rank())
        .map(|i| datum.ip(&Weight::unit(datum.rank(), i), &datum.theta).unwrap().to_integer())
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; datum.rank()];
    fn rec(i: usize, budget: i64, marks: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == marks.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        for m in 0..=budget / marks[i] {
            cur[i] = m;
            rec(i + 1, budget - m * marks[i], marks, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, k, &marks, &mut cur, &mut out);
    out.sort();
    out
}

/// Reduce `μ` into the closed alcove `{dominant, ⟨·, θ⟩ ≤ k∨}`.
pub fn reduce_to_alcove(datum: &RootDatum, k_dual: i64, mu: &[Q]) -> Result<AlcoveReduction> {
    if k_dual < 1 {
        return Err(Error::Domain(format!("shifted level must be positive, got {k_dual}")));
    }
    if mu.len() != datum.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank(),
            got: mu.len(),
        });
    }
    let theta = datum.theta.to_q();
    let k = q(k_dual);
    let mut v = mu.to_vec();
    let mut count = 0usize;
    loop {
        while let Some(i) = v.iter().position(|x| x.is_negative()) {
            v = datum.reflect(i, &v);
            count += 1;
        }
        let p = datum.ip(&v, &theta)?;
        if p > k {
            let shift = p - k;
            v = v.iter().zip(&theta).map(|(a, t)| *a - shift * *t).collect();
            count += 1;
            continue;
        }
        let on_wall = v.iter().any(|x| x.is_zero()) || p == k;
        let parity = (count % 2) as u8;
        let sign = if on_wall {
            0
        } else if parity == 0 {
            1
        } else {
            -1
        };
        return Ok(AlcoveReduction {
            weight: v,
            sign,
            length_parity: parity,
        });
    }
}

/// Number of regular `W_aff`-orbits of integral weights at shifted level
/// `k∨`, counted as distinct regular representatives of the box
/// `[−k∨, k∨]^ℓ`, which contains every interior alcove point.
pub fn count_regular_orbits(datum: &RootDatum, k_dual: i64) -> Result<usize> {
    if k_dual < 1 {
        return Err(Error::Domain(format!("shifted level must be positive, got {k_dual}")));
    }
    let l = datum.rank();
    let mut reps: BTreeSet<Vec<Q>> = BTreeSet::new();
    let mut cur = vec![-k_dual; l];
    loop {
        let mu: QVec = cur.iter().map(|&x| q(x)).collect();
        let red = reduce_to_alcove(datum, k_dual, &mu)?;
        if red.sign != 0 {
            reps.insert(red.weight);
        }
        let mut i = 0;
        loop {
            if i == l {
                return Ok(reps.len());
            }
            cur[i] += 1;
            if cur[i] > k_dual {
                cur[i] = -k_dual;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Check that `λ` is a level-`k` alcove point.
pub fn check_alcove(datum: &RootDatum, k: i64, lambda: &Weight) -> Result<()> {
    datum.check_dominant(lambda)?;
    if k < 0 {
        return Err(Error::Domain(format!("level must be nonnegative, got {k}")));
    }
    if datum.ip(lambda, &datum.theta)? > q(k) {
        return Err(Error::Domain(format!("weight {lambda} is outside the level-{k} alcove")));
    }
    Ok(())
}
