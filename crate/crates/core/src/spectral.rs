//! Abelian spectral-flow model: `d/dθ + iξ` on the circle and the
//! twisted torus family `D + iψ(κ(ξ))`, mode-truncated.
//!
//! Operators here are skew-adjoint and diagonal in the Fourier basis; we
//! track the real spectra of `−i D_ξ`. Sign convention: the unit loop
//! `ξ: 0 → 1` on the circle has flow `+1`.

use crate::error::{Error, Result};
use crate::rational::{q, Q, QVec};
use crate::snf::{smith_normal_form, SmithForm};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Default mode window.
pub const DEFAULT_MODES: i64 = 8;

#[derive(Debug, Clone, Serialize)]
pub struct FlowRecord {
    pub path: Vec<f64>,
    /// `tracks[s][t]`: value of track `t` at sample `s`.
    pub tracks: Vec<Vec<f64>>,
    pub net_flow: i64,
    /// Path parameter of every counted crossing, with its direction.
    pub crossings: Vec<(f64, i8)>,
}

impl FlowRecord {
    /// `sample_index,track_index,value` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample_index,track_index,value\n");
        for (s, row) in self.tracks.iter().enumerate() {
            for (t, v) in row.iter().enumerate() {
                let _ = writeln!(out, "{s},{t},{v:.12e}");
            }
        }
        out
    }
}

/// Tracks spectra by nearest match between consecutive samples and counts
/// zero crossings, ignoring tracks that start within 1 of the window edge.
pub fn flow_from_spectra(path: Vec<f64>, spectra: Vec<Vec<f64>>) -> Result<FlowRecord> {
    if path.len() != spectra.len() || path.is_empty() {
        return Err(Error::Config("path and spectra must be nonempty and aligned".into()));
    }
    let mut tracks: Vec<Vec<f64>> = Vec::with_capacity(spectra.len());
    let mut first = spectra[0].clone();
    first.sort_by(f64::total_cmp);
    let (lo, hi) = (first[0], first[first.len() - 1]);
    tracks.push(first);
    for spec in &spectra[1..] {
        let prev = tracks.last().unwrap();
        if spec.len() != prev.len() {
            return Err(Error::DimensionMismatch {
                expected: prev.len(),
                got: spec.len(),
            });
        }
        let mut used = vec![false; spec.len()];
        let mut row = Vec::with_capacity(spec.len());
        for &p in prev {
            let (j, _) = spec
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .min_by(|a, b| (a.1 - p).abs().total_cmp(&(b.1 - p).abs()))
                .expect("same length");
            used[j] = true;
            row.push(spec[j]);
        }
        tracks.push(row);
    }
    let mut crossings = Vec::new();
    for t in 0..tracks[0].len() {
        let start = tracks[0][t];
        if start < lo + 1.0 || start > hi - 1.0 {
            continue;
        }
        for s in 1..tracks.len() {
            let (a, b) = (tracks[s - 1][t], tracks[s][t]);
            let dir = if a < 0.0 && b >= 0.0 {
                1
            } else if a >= 0.0 && b < 0.0 {
                -1
            } else {
                continue;
            };
            let frac = if b == a { 1.0 } else { -a / (b - a) };
            crossings.push((path[s - 1] + frac * (path[s] - path[s - 1]), dir));
        }
    }
    crossings.sort_by(|x, y| x.0.total_cmp(&y.0));
    let net_flow = crossings.iter().map(|c| c.1 as i64).sum();
    Ok(FlowRecord {
        path,
        tracks,
        net_flow,
        crossings,
    })
}

fn linear_path(start: f64, end: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::Config("a path needs at least two samples".into()));
    }
    Ok((0..samples)
        .map(|s| start + (end - start) * s as f64 / (samples - 1) as f64)
        .collect())
}

fn check_step(path: &[f64], slope: f64, gap: f64) -> Result<()> {
    let step = path.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max) * slope;
    if step >= gap / 4.0 {
        return Err(Error::Domain(format!(
            "eigenvalue step {step} exceeds a quarter of the spectral gap {gap}; use more samples"
        )));
    }
    Ok(())
}

/// Spectrum `n + ξ`, `|n| ≤ N`, along the straight path `start → end`.
pub fn circle_flow(start: f64, end: f64, samples: usize, modes: i64) -> Result<FlowRecord> {
    if modes < 1 {
        return Err(Error::Config("mode window must be at least 1".into()));
    }
    let path = linear_path(start, end, samples)?;
    check_step(&path, 1.0, 1.0)?;
    let spectra = path
        .iter()
        .map(|xi| (-modes..=modes).map(|n| n as f64 + xi).collect())
        .collect();
    flow_from_spectra(path, spectra)
}

/// `κ: Π → Π*` for a torus with `Π = ℤ^ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusTwisting {
    pub rank: usize,
    pub kappa: Vec<Vec<i64>>,
    #[serde(skip)]
    smith: SmithForm,
}

impl TorusTwisting {
    /// Rejects non-square and singular `κ`.
    pub fn new(kappa: Vec<Vec<i64>>) -> Result<Self> {
        let rank = kappa.len();
        if rank == 0 {
            return Err(Error::Config("kappa must be nonempty".into()));
        }
        let smith = smith_normal_form(&kappa)?;
        if smith.diagonal.contains(&0) {
            return Err(Error::Domain("kappa is singular, so the twisting is not regular".into()));
        }
        Ok(TorusTwisting { rank, kappa, smith })
    }

    pub fn elementary_divisors(&self) -> &[i64] {
        &self.smith.diagonal
    }

    /// Invariant of `p + κ(Π)` in `⊕ ℤ/d_i`.
    pub fn class_of(&self, p: &[i64]) -> Vec<i64> {
        self.smith
            .u
            .iter()
            .zip(&self.smith.diagonal)
            .map(|(row, d)| row.iter().zip(p).map(|(a, b)| a * b).sum::<i64>().rem_euclid(*d))
            .collect()
    }

    fn apply(&self, xi: &[Q]) -> QVec {
        self.kappa
            .iter()
            .map(|row| row.iter().zip(xi).fold(q(0), |acc, (a, b)| acc + *b * *a))
            .collect()
    }
}

/// `|Π*/κ(Π)|`.
pub fn torus_class_census(tw: &TorusTwisting) -> u64 {
    tw.elementary_divisors().iter().map(|d| d.unsigned_abs()).product()
}

/// Rank-1 class-restricted flow: spectrum `p + κξ` for `p ∈ λ + κℤ`,
/// `|p| ≤ N`, along `ξ: start → end`.
pub fn torus_flow(tw: &TorusTwisting, lambda: i64, start: f64, end: f64, samples: usize, modes: i64) -> Result<FlowRecord> {
    if tw.rank != 1 {
        return Err(Error::Domain(
            "path spectral flow is defined for rank 1; use torus_kernel_points in higher rank".into(),
        ));
    }
    let k = tw.kappa[0][0];
    let path = linear_path(start, end, samples)?;
    check_step(&path, k.abs() as f64, k.abs() as f64)?;
    let modes: Vec<i64> = (-modes..=modes).filter(|p| (p - lambda).rem_euclid(k.abs()) == 0).collect();
    if modes.len() < 3 {
        return Err(Error::Config("mode window too small for this kappa".into()));
    }
    let spectra = path
        .iter()
        .map(|xi| modes.iter().map(|&p| p as f64 + k as f64 * xi).collect())
        .collect();
    flow_from_spectra(path, spectra)
}

/// Points of `[0,1)^ℓ` at which the mode-truncated family has kernel, with
/// the class of the weight responsible. Kernel occurs at `ξ` iff
/// `p = −κ(ξ)` is an integral weight of the window `|p_i| ≤ N`.
#[derive(Debug, Clone, Serialize)]
pub struct KernelCensus {
    pub points: Vec<QVec>,
    pub classes: usize,
}

pub fn torus_kernel_points(tw: &TorusTwisting, modes: i64) -> KernelCensus {
    let det = torus_class_census(tw) as i64;
    // κ⁻¹ has denominators dividing det, so the grid (1/det)ℤ^ℓ suffices.
    let mut idx = vec![0i64; tw.rank];
    let mut points = Vec::new();
    let mut classes = BTreeSet::new();
    'outer: loop {
        let xi: QVec = idx.iter().map(|&i| Q::new(i, det)).collect();
        let p = tw.apply(&xi);
        if p.iter().all(|x| x.is_integer() && x.to_integer().abs() <= modes) {
            let p: Vec<i64> = p.iter().map(|x| -x.to_integer()).collect();
            classes.insert(tw.class_of(&p));
            points.push(xi);
        }
        for i in idx.iter_mut() {
            if *i + 1 < det {
                *i += 1;
                continue 'outer;
            }
            *i = 0;
        }
        break;
    }
    KernelCensus {
        points,
        classes: classes.len(),
    }
}
