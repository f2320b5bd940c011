//! Data of the twisted affine algebra attached to a diagram automorphism `ε`
//! of a simply laced `𝔤`: the invariant subalgebra `𝔤̲ = 𝔤^ε`, the highest
//! weight `θ̲` of `𝔤/𝔤̲`, the label `a₀`, and the twisted alcove.
//!
//! Everything lives in `𝔱*` of `𝔤` (fundamental-weight coordinates), where
//! `𝔱̲*` is the `ε`-invariant subspace and all pairings use the basic form
//! of `𝔤`.

use crate::cartan::{build_root_datum, AlgebraSpec, RootDatum, Series, Weight};
use crate::error::{Error, Result};
use crate::frame::root_words;
use crate::module::ExactModule;
use crate::rational::{inverse, q, Q, QVec};
use nalgebra::DMatrix;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct TwistedAffineDatum {
    pub base: RootDatum,
    pub r: usize,
    /// `ε` on simple-root indices.
    pub perm: Vec<usize>,
    /// Type of `𝔤̲`.
    pub invariant: AlgebraSpec,
    pub simple_roots: Vec<QVec>,
    pub positive_roots: Vec<QVec>,
    pub fundamental_weights: Vec<QVec>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub theta_under: QVec,
    pub rho_under: QVec,
    pub a0: i64,
}

/// A twisted alcove point: coordinates on the fundamental weights of `𝔤̲`
/// and whether it lies in the root lattice of `𝔤̲`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedWeight {
    pub coords: Weight,
    pub in_root_lattice: bool,
}

fn diagram_automorphism(spec: AlgebraSpec, r: usize) -> Result<Vec<usize>> {
    let n = spec.rank;
    let bad = || {
        Err(Error::Config(format!(
            "no diagram automorphism of order {r} on {spec}"
        )))
    };
    match (spec.series, r) {
        (Series::A, 2) if n >= 2 => Ok((0..n).map(|i| n - 1 - i).collect()),
        (Series::D, 2) => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Ok(p)
        }
        (Series::D, 3) if n == 4 => Ok(vec![2, 1, 3, 0]),
        _ => bad(),
    }
}

fn permute(perm: &[usize], v: &[Q]) -> QVec {
    let mut out = vec![q(0); v.len()];
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = *x;
    }
    out
}

fn permute_int(perm: &[usize], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = *x;
    }
    out
}

fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

fn scale(a: &[Q], c: Q) -> QVec {
    a.iter().map(|x| *x * c).collect()
}

impl TwistedAffineDatum {
    /// Average over the cyclic group generated by `ε`.
    pub fn project(&self, v: &[Q]) -> QVec {
        project(&self.perm, self.r, v)
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// `⟨ρ̲, θ̲⟩ + ⟨θ̲, θ̲⟩/2`, which equals `h∨/r`.
    pub fn shift_identity_lhs(&self) -> Q {
        let b = &self.base;
        b.ip(&self.rho_under, &self.theta_under).unwrap() + b.norm2(&self.theta_under).unwrap() / q(2)
    }

    /// The vector `Σ m_j ω̲_j`.
    pub fn weight_vector(&self, coords: &[i64]) -> QVec {
        let mut v = vec![q(0); self.base.rank()];
        for (j, &m) in coords.iter().enumerate() {
            v = add(&v, &scale(&self.fundamental_weights[j], q(m)));
        }
        v
    }

    pub fn in_root_lattice(&self, coords: &[i64]) -> bool {
        let a: Vec<Vec<Q>> = self
            .cartan_matrix
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        let inv = inverse(&a).expect("Cartan matrix of the invariant algebra is invertible");
        let n = coords.len();
        (0..n).all(|j| {
            (0..n)
                .fold(q(0), |acc, i| acc + q(coords[i]) * inv[i][j])
                .is_integer()
        })
    }

    /// Whether the level–lattice parity rule of `𝔰𝔲(2ℓ+1)` applies.
    pub fn has_parity_rule(&self) -> bool {
        self.a0 == 2
    }
}

fn project(perm: &[usize], r: usize, v: &[Q]) -> QVec {
    let mut acc = v.to_vec();
    let mut cur = v.to_vec();
    for _ in 1..r {
        cur = permute(perm, &cur);
        acc = add(&acc, &cur);
    }
    scale(&acc, Q::new(1, r as i64))
}

/// Sign by which `ε` acts on the root space of each `ε`-fixed positive root,
/// read off from nested commutators in the adjoint module.
fn fixed_root_signs(base: &RootDatum, perm: &[usize]) -> Result<Vec<Option<i64>>> {
    let adj = ExactModule::build(base, &base.theta)?.unitarize()?;
    let words = root_words(base);
    let nested = |w: &[usize]| -> DMatrix<f64> {
        let mut acc = adj.e[w[0]].clone();
        for &i in &w[1..] {
            acc = &adj.e[i] * &acc - &acc * &adj.e[i];
        }
        acc
    };
    Ok(base
        .positive_roots_simple
        .iter()
        .zip(&words)
        .map(|(root, w)| {
            if permute_int(perm, root) != *root {
                return None;
            }
            let a = nested(w);
            let ew: Vec<usize> = w.iter().map(|&i| perm[i]).collect();
            let b = nested(&ew);
            let dot = a.dot(&b);
            Some(if dot > 0.0 { 1 } else { -1 })
        })
        .collect())
}

fn classify(cartan: &[Vec<i64>], n_pos: usize, lengths: &[Q]) -> Result<AlgebraSpec> {
    let l = cartan.len();
    let max_len = lengths.iter().cloned().fold(q(0), |a, b| if b > a { b } else { a });
    let n_long = lengths.iter().filter(|x| **x == max_len).count();
    let series = if n_pos == l * (l + 1) / 2 && n_long == l {
        Series::A
    } else if l == 2 && n_pos == 6 {
        Series::G
    } else if n_pos == l * l && (l == 2 || n_long == l - 1) {
        Series::B
    } else if n_pos == l * l {
        Series::C
    } else if n_pos == l * (l - 1) {
        Series::D
    } else {
        return Err(Error::Numeric("unrecognized invariant subalgebra".into()));
    };
    AlgebraSpec::new(series, l)
}

/// Build the twisted data for `(𝔤, r)`.
pub fn build_twisted_datum(base: AlgebraSpec, r: usize) -> Result<TwistedAffineDatum> {
    if !base.is_simply_laced() {
        return Err(Error::Config(format!("{base} is not simply laced")));
    }
    let perm = diagram_automorphism(base, r)?;
    let b = build_root_datum(base)?;
    let signs = fixed_root_signs(&b, &perm)?;
    let roots = b.positive_roots_q();
    // Roots of 𝔤̲: projections of positive roots, dropping fixed roots on
    // which ε acts by −1.
    let mut pos: BTreeSet<QVec> = BTreeSet::new();
    let mut complement: BTreeSet<QVec> = BTreeSet::new();
    for (i, alpha) in roots.iter().enumerate() {
        let p = project(&perm, r, alpha);
        match signs[i] {
            Some(-1) => {
                complement.insert(p);
            }
            Some(_) => {
                pos.insert(p);
            }
            None => {
                pos.insert(p.clone());
                complement.insert(p);
            }
        }
    }
    let pos: Vec<QVec> = pos.into_iter().collect();
    let is_sum = |v: &QVec| {
        pos.iter()
            .any(|a| pos.iter().any(|c| add(a, c) == *v))
    };
    let mut simple: Vec<QVec> = pos.iter().filter(|v| !is_sum(v)).cloned().collect();
    // Order simple roots along the node order of their ε-orbits.
    let first_node = |v: &QVec| b.to_simple_coords(v).iter().position(|x| !x.is_zero()).unwrap();
    simple.sort_by_key(first_node);
    let l = simple.len();
    let cartan: Vec<Vec<i64>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    (q(2) * b.ip(&simple[i], &simple[j]).unwrap() / b.norm2(&simple[j]).unwrap()).to_integer()
                })
                .collect()
        })
        .collect();
    let lengths: Vec<Q> = simple.iter().map(|s| b.norm2(s).unwrap()).collect();
    let invariant = classify(&cartan, pos.len(), &lengths)?;
    // Invariant subspace basis: orbit sums of fundamental weights.
    let mut orbit_reps: Vec<usize> = Vec::new();
    let mut seen = vec![false; b.rank()];
    for i in 0..b.rank() {
        if !seen[i] {
            orbit_reps.push(i);
            let mut j = i;
            loop {
                seen[j] = true;
                j = perm[j];
                if j == i {
                    break;
                }
            }
        }
    }
    let basis: Vec<QVec> = orbit_reps
        .iter()
        .map(|&i| project(&perm, r, &Weight::unit(b.rank(), i).to_q()))
        .collect();
    if basis.len() != l {
        return Err(Error::Numeric("invariant rank mismatch".into()));
    }
    // ω̲_j = Σ_O x_{jO} u_O with ⟨ω̲_j, β_i∨⟩ = δ_ij.
    let m: Vec<Vec<Q>> = (0..l)
        .map(|o| {
            (0..l)
                .map(|i| q(2) * b.ip(&basis[o], &simple[i]).unwrap() / lengths[i])
                .collect()
        })
        .collect();
    let minv = inverse(&m).ok_or_else(|| Error::Numeric("singular pairing matrix".into()))?;
    let fundamental_weights: Vec<QVec> = (0..l)
        .map(|j| {
            let mut v = vec![q(0); b.rank()];
            for o in 0..l {
                v = add(&v, &scale(&basis[o], minv[o][j]));
            }
            v
        })
        .collect();
    let mut rho_under = vec![q(0); b.rank()];
    for p in &pos {
        rho_under = add(&rho_under, &scale(p, Q::new(1, 2)));
    }
    let theta_under = complement
        .iter()
        .max_by_key(|v| b.ip(*v, &rho_under).unwrap())
        .cloned()
        .ok_or_else(|| Error::Numeric("empty complement".into()))?;
    let half = scale(&theta_under, Q::new(1, 2));
    let a0 = if pos.contains(&half) { 2 } else { 1 };
    let tw = TwistedAffineDatum {
        base: b,
        r,
        perm,
        invariant,
        simple_roots: simple,
        positive_roots: pos,
        fundamental_weights,
        cartan_matrix: cartan,
        theta_under,
        rho_under,
        a0,
    };
    tw.check_invariants()?;
    Ok(tw)
}

impl TwistedAffineDatum {
    pub fn check_invariants(&self) -> Result<()> {
        let b = &self.base;
        let short = scale(&self.theta_under, Q::new(1, self.a0));
        let min_len = self
            .positive_roots
            .iter()
            .map(|p| b.norm2(p).unwrap())
            .min()
            .unwrap();
        if !self.positive_roots.contains(&short) || b.norm2(&short)? != min_len {
            return Err(Error::Numeric("θ̲/a₀ is not a short root".into()));
        }
        for s in &self.simple_roots {
            if b.ip(&short, s)?.is_negative() {
                return Err(Error::Numeric("θ̲ is not dominant".into()));
            }
        }
        if b.norm2(&self.theta_under)? != Q::new(2 * self.a0, self.r as i64) {
            return Err(Error::Numeric("⟨θ̲,θ̲⟩ ≠ 2a₀/r".into()));
        }
        if self.shift_identity_lhs() != Q::new(b.h_dual, self.r as i64) {
            return Err(Error::Numeric("shift identity fails".into()));
        }
        Ok(())
    }
}

/// Dominant `𝔤̲`-weights `λ` with `⟨λ, θ̲⟩ ≤ k/r`; for `𝔰𝔲(2ℓ+1)` only
/// those with `λ` in the root lattice exactly when `k` is even.
pub fn twisted_alcove_points(tw: &TwistedAffineDatum, k: i64) -> Vec<TwistedWeight> {
    if k < 0 {
        return Vec::new();
    }
    let b = &tw.base;
    let bound = Q::new(k, tw.r as i64);
    let marks: Vec<Q> = tw
        .fundamental_weights
        .iter()
        .map(|w| b.ip(w, &tw.theta_under).unwrap())
        .collect();
    let l = tw.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; l];
    fn rec(i: usize, budget: Q, marks: &[Q], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == marks.len() {
            out.push(cur.clone());
            return;
        }
        let mut m = 0;
        while q(m) * marks[i] <= budget {
            cur[i] = m;
            rec(i + 1, budget - q(m) * marks[i], marks, cur, out);
            m += 1;
        }
        cur[i] = 0;
    }
    let mut raw = Vec::new();
    rec(0, bound, &marks, &mut cur, &mut raw);
    raw.sort();
    for c in raw {
        let in_q = tw.in_root_lattice(&c);
        if tw.has_parity_rule() && in_q != (k % 2 == 0) {
            continue;
        }
        out.push(TwistedWeight {
            coords: Weight(c),
            in_root_lattice: in_q,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(s: &str, r: usize) -> TwistedAffineDatum {
        build_twisted_datum(s.parse().unwrap(), r).unwrap()
    }

    #[test]
    fn invariant_algebras() {
        for (s, r, inv, a0) in [
            ("A2", 2, "A1", 2),
            ("A3", 2, "B2", 1),
            ("A4", 2, "B2", 2),
            ("D4", 2, "B3", 1),
            ("D4", 3, "G2", 1),
        ] {
            let t = tw(s, r);
            assert_eq!(t.invariant.to_string(), inv, "{s} r={r}");
            assert_eq!(t.a0, a0, "{s} r={r}");
            assert_eq!(t.shift_identity_lhs(), Q::new(t.base.h_dual, r as i64));
        }
    }

    #[test]
    fn a3_theta_under_is_sum_of_simple_roots() {
        let t = tw("A3", 2);
        assert_eq!(t.theta_under, add(&t.simple_roots[0], &t.simple_roots[1]));
    }

    #[test]
    fn twisted_alcove_counts() {
        let a2 = tw("A2", 2);
        let pts = twisted_alcove_points(&a2, 2);
        assert_eq!(
            pts.iter().map(|p| p.coords.clone()).collect::<Vec<_>>(),
            vec![Weight(vec![0]), Weight(vec![2])]
        );
        // Level counts of the twisted algebra of type A2: 1, 2, 2, 3.
        for (k, n) in [(1, 1), (2, 2), (3, 2), (4, 3)] {
            assert_eq!(twisted_alcove_points(&a2, k).len(), n, "k={k}");
        }
        assert_eq!(twisted_alcove_points(&a2, 0).len(), 1);
        let a3 = tw("A3", 2);
        assert_eq!(
            twisted_alcove_points(&a3, 1).iter().map(|p| p.coords.clone()).collect::<Vec<_>>(),
            vec![Weight(vec![0, 0]), Weight(vec![1, 0])]
        );
        assert_eq!(twisted_alcove_points(&tw("D4", 3), 0).len(), 1);
    }

    #[test]
    fn inadmissible_pairs_are_rejected() {
        assert!(build_twisted_datum("B2".parse().unwrap(), 2).is_err());
        assert!(build_twisted_datum("A2".parse().unwrap(), 3).is_err());
        assert!(build_twisted_datum("D3".parse().unwrap(), 3).is_err());
        assert!(build_twisted_datum("A1".parse().unwrap(), 2).is_err());
    }
}
