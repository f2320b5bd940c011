//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use verlinde_kit::rational::{q, q_to_f64};
use verlinde_kit::{RootDatum, Weight, Q, QVec};

pub fn datum(s: &str) -> RootDatum {
    verlinde_kit::build_root_datum(s.parse().unwrap()).unwrap()
}

fn ip(d: &RootDatum, a: &[Q], b: &[Q]) -> Q {
    d.ip(&a.to_vec(), &b.to_vec()).unwrap()
}

/// Generators of `W_aff` at shifted level `k∨`: simple reflections and the
/// reflection in `⟨·,θ⟩ = k∨`.
pub fn affine_generators(d: &RootDatum, k_dual: i64, v: &[Q]) -> Vec<QVec> {
    let mut out: Vec<QVec> = (0..d.rank()).map(|i| d.reflect(i, v)).collect();
    let theta = d.theta.to_q();
    let c = ip(d, v, &theta) - q(k_dual);
    out.push(v.iter().zip(&theta).map(|(a, t)| *a - c * *t).collect());
    out
}

/// `μ` lies on an affine wall: `⟨μ, α⟩ ∈ k∨ℤ` for some positive root.
pub fn on_affine_wall(d: &RootDatum, k_dual: i64, v: &[Q]) -> bool {
    d.positive_roots_q()
        .iter()
        .any(|a| (ip(d, v, a) / q(k_dual)).is_integer())
}

/// Breadth-first orbit with parities, to the given word length.
pub fn bfs_orbit(d: &RootDatum, k_dual: i64, start: &[Q], depth: usize) -> HashMap<QVec, u8> {
    let mut seen: HashMap<QVec, u8> = HashMap::from([(start.to_vec(), 0)]);
    let mut queue = VecDeque::from([(start.to_vec(), 0u8, 0usize)]);
    while let Some((v, p, l)) = queue.pop_front() {
        if l == depth {
            continue;
        }
        for w in affine_generators(d, k_dual, &v) {
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), 1 - p);
                queue.push_back((w, 1 - p, l + 1));
            }
        }
    }
    seen
}

/// Regular orbits meeting the box `[−k∨, k∨]^ℓ`, found by BFS and merged
/// with a union-find over box points.
pub fn brute_force_regular_orbits(d: &RootDatum, k_dual: i64, depth: usize) -> usize {
    let l = d.rank();
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..l {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-k_dual..=k_dual).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let regular: Vec<QVec> = pts
        .iter()
        .map(|p| p.iter().map(|&x| q(x)).collect::<QVec>())
        .filter(|v| !on_affine_wall(d, k_dual, v))
        .collect();
    let index: HashMap<QVec, usize> = regular.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..regular.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, v) in regular.iter().enumerate() {
        for w in bfs_orbit(d, k_dual, v, depth).keys() {
            if let Some(&j) = index.get(w) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots: HashSet<usize> = (0..regular.len()).map(|i| find(&mut parent, i)).collect();
    roots.len()
}

/// Graded dimensions `dim H_λ(n)`, `n = 0..=N`, of the level-`k`
/// integrable module by the affine Freudenthal recursion
/// `(|Λ+ρ̂|² − |μ+ρ̂|²) m(μ) = 2 Σ_{β>0} mult(β) Σ_{j≥1} (μ+jβ, β) m(μ+jβ)`.
pub fn affine_graded_dims(d: &RootDatum, k: i64, lambda: &Weight, n_cut: i64) -> Vec<u64> {
    let l = d.rank();
    let kd = k + d.h_dual;
    let lam = lambda.to_q();
    let rho = d.rho.to_q();
    let shift = |v: &[Q]| -> QVec { v.iter().zip(&rho).map(|(a, b)| *a + *b).collect() };
    let top = ip(d, &shift(&lam), &shift(&lam));
    let r2 = q_to_f64(&(top + q(2 * kd * n_cut)));
    let g = DMatrix::from_fn(l, l, |i, j| q_to_f64(&d.gram[i][j]));
    let lmin = g.symmetric_eigenvalues().min();
    let bound = (r2 / lmin).sqrt().ceil() as i64 + 1;
    // all integral ν with ν − λ in the root lattice, inside the ball
    let mut box_pts: Vec<Vec<i64>> = vec![vec![]];
    for i in 0..l {
        let rho_i = d.rho.0[i];
        box_pts = box_pts
            .into_iter()
            .flat_map(|p| {
                (-bound - rho_i..=bound - rho_i).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let in_class = |v: &[i64]| -> bool {
        let diff: QVec = v.iter().zip(&lam).map(|(a, b)| q(*a) - *b).collect();
        d.in_root_lattice(&diff)
    };
    let height = |v: &[i64]| -> Q {
        let diff: QVec = lam.iter().zip(v).map(|(a, b)| *a - q(*b)).collect();
        d.to_simple_coords(&diff).iter().fold(q(0), |s, x| s + *x)
    };
    let roots: Vec<QVec> = d
        .positive_roots_q()
        .into_iter()
        .flat_map(|a| {
            let neg: QVec = a.iter().map(|x| -*x).collect();
            [a, neg]
        })
        .collect();
    let mut mult: HashMap<(Vec<i64>, i64), Q> = HashMap::new();
    let mut dims = Vec::new();
    for n in 0..=n_cut {
        let mut cands: Vec<(Q, Vec<i64>, Q)> = box_pts
            .iter()
            .filter(|v| in_class(v))
            .filter_map(|v| {
                let vq: QVec = v.iter().map(|&x| q(x)).collect();
                let lhs = top - ip(d, &shift(&vq), &shift(&vq)) + q(2 * kd * n);
                (lhs.is_positive() || (n == 0 && vq == lam)).then(|| (height(v), v.clone(), lhs))
            })
            .collect();
        cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut total = q(0);
        for (_, v, lhs) in cands {
            let m = if lhs.is_zero() {
                q(1)
            } else {
                let mut rhs = q(0);
                // real roots α + sδ
                for a in &roots {
                    let positive = d.in_positive_root_cone(a);
                    let a_int: Vec<i64> = a.iter().map(|x| x.to_integer()).collect();
                    for s in 0..=n {
                        if s == 0 && !positive {
                            continue;
                        }
                        for j in 1.. {
                            if n - j * s < 0 {
                                break;
                            }
                            let w: Vec<i64> = v.iter().zip(&a_int).map(|(x, y)| x + j * y).collect();
                            if w.iter().zip(&d.rho.0).any(|(x, r)| (x + r).abs() > bound) {
                                break;
                            }
                            if let Some(mw) = mult.get(&(w.clone(), n - j * s)) {
                                let wq: QVec = w.iter().map(|&x| q(x)).collect();
                                rhs += (ip(d, &wq, a) + q(k * s)) * *mw;
                            }
                        }
                    }
                }
                // imaginary roots sδ, multiplicity ℓ
                for s in 1..=n {
                    for j in 1..=n / s {
                        if let Some(mw) = mult.get(&(v.clone(), n - j * s)) {
                            rhs += q(l as i64 * k * s) * *mw;
                        }
                    }
                }
                rhs * q(2) / lhs
            };
            assert!(m.is_integer() && !m.is_negative(), "non-integral multiplicity {m} at {v:?}, grade {n}");
            if !m.is_zero() {
                mult.insert((v, n), m);
                total += m;
            }
        }
        dims.push(total.to_integer() as u64);
    }
    dims
}

pub fn ratio(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}
