//! Root data, the basic inner product, the finite Weyl group and
//! weight multiplicities.
//!
//! Weights and roots are stored in fundamental-weight coordinates: the
//! vector `μ` stands for `Σ μ_i ω_i`. The basic form is carried by the
//! Gram matrix `⟨ω_i, ω_j⟩`, normalized so long roots have square length 2.

use crate::error::{Error, Result};
use crate::rational::{determinant, inverse, is_nonnegative, q, qfrac, row_times, Q, QVec};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

/// Largest supported rank.
pub const MAX_RANK: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::G => 'G',
        }
    }
}

/// A simple Lie algebra named by Cartan type, e.g. `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => (1..=MAX_RANK).contains(&rank),
            Series::B | Series::C => (2..=MAX_RANK).contains(&rank),
            Series::D => (3..=MAX_RANK).contains(&rank),
            Series::G => rank == 2,
        };
        if ok {
            Ok(AlgebraSpec { series, rank })
        } else {
            Err(Error::Config(format!(
                "{}{rank} is not a supported simple algebra (rank cap {MAX_RANK})",
                series.letter()
            )))
        }
    }

    /// Dimension of the Lie algebra.
    pub fn dim(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 2),
            Series::B | Series::C => n * (2 * n + 1),
            Series::D => n * (2 * n - 1),
            Series::G => 14,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Config("empty algebra name".into()))?;
        let series = match letter.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'G' => Series::G,
            other => return Err(Error::Config(format!("unknown series '{other}'"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Config(format!("bad rank in algebra name '{s}'")))?;
        AlgebraSpec::new(series, rank)
    }
}

/// Integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_q(&self) -> QVec {
        self.0.iter().map(|&x| q(x)).collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// Integral weight from a rational vector, if every entry is integral.
    pub fn from_q(v: &[Q]) -> Option<Weight> {
        crate::rational::integral(v).map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Anything with rational fundamental-weight coordinates.
pub trait Coords {
    fn qcoords(&self) -> QVec;
}

impl Coords for Weight {
    fn qcoords(&self) -> QVec {
        self.to_q()
    }
}

impl Coords for [Q] {
    fn qcoords(&self) -> QVec {
        self.to_vec()
    }
}

impl Coords for Vec<Q> {
    fn qcoords(&self) -> QVec {
        self.clone()
    }
}

impl Coords for [i64] {
    fn qcoords(&self) -> QVec {
        self.iter().map(|&x| q(x)).collect()
    }
}

impl Coords for Vec<i64> {
    fn qcoords(&self) -> QVec {
        self.as_slice().qcoords()
    }
}

/// Element of the finite Weyl group acting on fundamental-weight
/// coordinates by `μ ↦ M μ`. It is orthogonal for the basic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    /// Reduced word; the element is `s_{w[0]} s_{w[1]} ⋯`.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `det w = (−1)^{ℓ(w)}`.
    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, mu: &[Q]) -> QVec {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(mu).fold(q(0), |acc, (&a, b)| acc + *b * a))
            .collect()
    }

    pub fn apply_int(&self, mu: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(mu).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn compose(&self, other: &WeylElement) -> Vec<Vec<i64>> {
        let n = self.matrix.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect()
    }
}

/// Root datum of a simple Lie algebra with its basic form.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub spec: AlgebraSpec,
    /// `a_ij = ⟨α_i, α_j^∨⟩`; row `i` is `α_i` in fundamental-weight coordinates.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// `⟨α_i, α_j⟩`.
    pub root_gram: Vec<Vec<Q>>,
    /// `⟨ω_i, ω_j⟩`.
    pub gram: Vec<Vec<Q>>,
    pub simple_roots: Vec<QVec>,
    pub simple_coroots: Vec<QVec>,
    pub fundamental_weights: Vec<QVec>,
    /// Positive roots in fundamental-weight coordinates, ordered by height.
    pub positive_roots: Vec<Weight>,
    /// The same roots in simple-root coordinates.
    pub positive_roots_simple: Vec<Vec<i64>>,
    pub rho: Weight,
    pub theta: Weight,
    pub h_dual: i64,
    cartan_inverse: Vec<Vec<Q>>,
    weyl: Vec<WeylElement>,
}

fn symmetric_matrix(spec: AlgebraSpec) -> Vec<Vec<Q>> {
    let n = spec.rank;
    let mut b = vec![vec![q(0); n]; n];
    match spec.series {
        Series::A => {
            for i in 0..n {
                b[i][i] = q(2);
                if i + 1 < n {
                    b[i][i + 1] = q(-1);
                    b[i + 1][i] = q(-1);
                }
            }
        }
        Series::B => {
            for i in 0..n {
                b[i][i] = q(2);
                if i + 1 < n {
                    b[i][i + 1] = q(-1);
                    b[i + 1][i] = q(-1);
                }
            }
            b[n - 1][n - 1] = q(1);
        }
        Series::C => {
            for i in 0..n {
                b[i][i] = q(1);
                if i + 2 < n {
                    b[i][i + 1] = qfrac(-1, 2);
                    b[i + 1][i] = qfrac(-1, 2);
                }
            }
            b[n - 1][n - 1] = q(2);
            b[n - 2][n - 1] = q(-1);
            b[n - 1][n - 2] = q(-1);
        }
        Series::D => {
            for i in 0..n {
                b[i][i] = q(2);
            }
            for i in 0..n - 2 {
                b[i][i + 1] = q(-1);
                b[i + 1][i] = q(-1);
            }
            // α_n = e_{n−1} + e_n hangs off α_{n−2}.
            b[n - 3][n - 1] = q(-1);
            b[n - 1][n - 3] = q(-1);
        }
        Series::G => {
            b[0][0] = qfrac(2, 3);
            b[1][1] = q(2);
            b[0][1] = q(-1);
            b[1][0] = q(-1);
        }
    }
    b
}

/// Positive roots in simple-root coordinates, by height then lexicographic.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let to_omega = |c: &[i64]| -> Vec<i64> {
        (0..n).map(|j| (0..n).map(|k| c[k] * cartan[k][j]).sum()).collect()
    };
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut ordered: Vec<Vec<i64>> = Vec::new();
    let mut layer: BTreeSet<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while !layer.is_empty() {
        for r in &layer {
            all.insert(r.clone());
            ordered.push(r.clone());
        }
        let mut next = BTreeSet::new();
        for beta in &layer {
            let omega = to_omega(beta);
            for i in 0..n {
                // α_i-string through β: p steps down, q = p − ⟨β, α_i^∨⟩ steps up.
                let mut p = 0i64;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - omega[i] > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next;
    }
    ordered
}

fn enumerate_weyl(cartan: &[Vec<i64>]) -> Vec<WeylElement> {
    let n = cartan.len();
    let identity: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    // (s_i)_{jk} = δ_jk − δ_ik a_ij
    let reflections: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| i64::from(j == k) - if k == i { cartan[i][j] } else { 0 })
                        .collect()
                })
                .collect()
        })
        .collect();
    let rho = vec![1i64; n];
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out = vec![WeylElement {
        matrix: identity,
        word: vec![],
    }];
    seen.insert(rho, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for (i, s) in reflections.iter().enumerate() {
            let w = &out[idx];
            let matrix: Vec<Vec<i64>> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| (0..n).map(|k| s[r][k] * w.matrix[k][c]).sum())
                        .collect()
                })
                .collect();
            let image: Vec<i64> = matrix.iter().map(|row| row.iter().sum()).collect();
            if seen.contains_key(&image) {
                continue;
            }
            let mut word = vec![i];
            word.extend_from_slice(&w.word);
            seen.insert(image, out.len());
            out.push(WeylElement { matrix, word });
            queue.push_back(out.len() - 1);
        }
    }
    out
}

/// Build the root datum of an admissible algebra.
pub fn build_root_datum(spec: AlgebraSpec) -> Result<RootDatum> {
    let spec = AlgebraSpec::new(spec.series, spec.rank)?;
    let n = spec.rank;
    let b = symmetric_matrix(spec);
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (q(2) * b[i][j] / b[j][j]).to_integer())
                .collect()
        })
        .collect();
    let cartan_q: Vec<Vec<Q>> = cartan
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let cartan_inverse = inverse(&cartan_q).expect("Cartan matrix is invertible");
    let gram: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| cartan_inverse[j][i] * b[i][i] / q(2)).collect())
        .collect();
    let simple_roots = cartan_q.clone();
    let simple_coroots: Vec<QVec> = (0..n)
        .map(|i| cartan_q[i].iter().map(|x| *x * q(2) / b[i][i]).collect())
        .collect();
    let fundamental_weights: Vec<QVec> = (0..n)
        .map(|i| (0..n).map(|j| q(i64::from(i == j))).collect())
        .collect();
    let positive_roots_simple = enumerate_positive_roots(&cartan);
    let positive_roots: Vec<Weight> = positive_roots_simple
        .iter()
        .map(|c| Weight((0..n).map(|j| (0..n).map(|k| c[k] * cartan[k][j]).sum()).collect()))
        .collect();
    let theta = positive_roots.last().cloned().expect("nonempty root system");
    let rho = Weight(vec![1; n]);
    let weyl = enumerate_weyl(&cartan);
    let mut datum = RootDatum {
        spec,
        cartan_matrix: cartan,
        root_gram: b,
        gram,
        simple_roots,
        simple_coroots,
        fundamental_weights,
        positive_roots,
        positive_roots_simple,
        rho,
        theta,
        h_dual: 0,
        cartan_inverse,
        weyl,
    };
    let h = datum.ip(&datum.rho, &datum.theta)? + q(1);
    datum.h_dual = h.to_integer();
    datum.check_invariants()?;
    Ok(datum)
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Basic inner product of two vectors in fundamental-weight coordinates.
    pub fn ip<A: Coords + ?Sized, B: Coords + ?Sized>(&self, a: &A, b: &B) -> Result<Q> {
        let a = a.qcoords();
        let b = b.qcoords();
        let n = self.rank();
        for len in [a.len(), b.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, got: len });
            }
        }
        let mut acc = q(0);
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += a[i] * self.gram[i][j] * b[j];
            }
        }
        Ok(acc)
    }

    /// `⟨μ, μ⟩`.
    pub fn norm2<A: Coords + ?Sized>(&self, a: &A) -> Result<Q> {
        self.ip(a, a)
    }

    /// Square length of the simple root `α_i`.
    pub fn simple_root_norm2(&self, i: usize) -> Q {
        self.root_gram[i][i]
    }

    /// Coordinates of `μ` in the basis of simple roots.
    pub fn to_simple_coords(&self, mu: &[Q]) -> QVec {
        row_times(mu, &self.cartan_inverse)
    }

    /// `μ` in fundamental-weight coordinates from simple-root coordinates.
    pub fn from_simple_coords(&self, c: &[Q]) -> QVec {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).fold(q(0), |acc, k| acc + c[k] * self.cartan_matrix[k][j]))
            .collect()
    }

    /// Whether `μ` lies in the nonnegative span `Q⁺` of the simple roots.
    pub fn in_positive_root_cone(&self, mu: &[Q]) -> bool {
        let c = self.to_simple_coords(mu);
        c.iter().all(|x| x.is_integer() && !x.is_negative())
    }

    /// Whether `μ` lies in the root lattice.
    pub fn in_root_lattice(&self, mu: &[Q]) -> bool {
        self.to_simple_coords(mu).iter().all(|x| x.is_integer())
    }

    /// `s_i(μ) = μ − ⟨μ, α_i^∨⟩ α_i`.
    pub fn reflect(&self, i: usize, mu: &[Q]) -> QVec {
        let c = mu[i];
        mu.iter()
            .enumerate()
            .map(|(j, x)| *x - c * self.cartan_matrix[i][j])
            .collect()
    }

    /// Positive roots as rational vectors.
    pub fn positive_roots_q(&self) -> Vec<QVec> {
        self.positive_roots.iter().map(|r| r.to_q()).collect()
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_index(&self, simple: &[i64]) -> Option<usize> {
        self.positive_roots_simple.iter().position(|r| r == simple)
    }

    pub fn is_long_root(&self, idx: usize) -> bool {
        self.norm2(&self.positive_roots[idx]).map(|x| x == q(2)).unwrap_or(false)
    }

    pub fn weyl_elements(&self) -> &[WeylElement] {
        &self.weyl
    }

    /// Longest element `w₀`.
    pub fn longest_element(&self) -> &WeylElement {
        self.weyl
            .iter()
            .max_by_key(|w| w.length())
            .expect("Weyl group is nonempty")
    }

    /// Dominant `W`-conjugate of `μ` and the determinant of the element
    /// used, or sign 0 when `μ` is fixed by some reflection.
    pub fn dominant_conjugate(&self, mu: &[Q]) -> (QVec, i8) {
        let mut v = mu.to_vec();
        let mut sign = 1i8;
        while let Some(i) = v.iter().position(|x| x.is_negative()) {
            v = self.reflect(i, &v);
            sign = -sign;
        }
        if v.iter().any(|x| x.is_zero()) {
            sign = 0;
        }
        (v, sign)
    }

    /// Weyl dimension formula.
    pub fn irrep_dimension(&self, lambda: &Weight) -> Result<u64> {
        self.check_dominant(lambda)?;
        let lr = lambda.add(&self.rho);
        let mut num = q(1);
        for alpha in &self.positive_roots {
            num *= self.ip(&lr, alpha)? / self.ip(&self.rho, alpha)?;
        }
        debug_assert!(num.is_integer());
        Ok(num.to_integer() as u64)
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: w.rank(),
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::Domain(format!("weight {w} is not dominant")));
        }
        Ok(())
    }

    /// Weight multiplicities of the irreducible module of highest weight
    /// `λ`, by Freudenthal's recursion.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_dominant(lambda)?;
        let lr = lambda.add(&self.rho);
        let top = self.norm2(&lr)?;
        let roots: Vec<(Weight, Q)> = self
            .positive_roots
            .iter()
            .map(|a| (a.clone(), self.norm2(a).unwrap()))
            .collect();
        let simple: Vec<Weight> = self.cartan_matrix.iter().map(|r| Weight(r.clone())).collect();
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        mult.insert(lambda.clone(), 1);
        let mut layer = vec![lambda.clone()];
        while !layer.is_empty() {
            let mut candidates: BTreeSet<Weight> = BTreeSet::new();
            for mu in &layer {
                for a in &simple {
                    let nu = mu.sub(a);
                    if mult.contains_key(&nu) {
                        continue;
                    }
                    let (dom, _) = self.dominant_conjugate(&nu.to_q());
                    let diff: QVec = lambda.to_q().iter().zip(&dom).map(|(a, b)| *a - *b).collect();
                    if self.in_positive_root_cone(&diff) {
                        candidates.insert(nu);
                    }
                }
            }
            let mut next = Vec::new();
            for mu in candidates {
                let mut acc = q(0);
                for (alpha, _) in &roots {
                    let mut j = 1;
                    loop {
                        let shifted = mu.add(&alpha.scale(j));
                        match mult.get(&shifted) {
                            Some(&m) if m > 0 => {
                                acc += q(m as i64) * self.ip(&shifted, alpha)?;
                                j += 1;
                            }
                            _ => break,
                        }
                    }
                }
                let denom = top - self.norm2(&mu.add(&self.rho))?;
                let m = q(2) * acc / denom;
                if !m.is_integer() || m.is_negative() {
                    return Err(Error::Numeric(format!(
                        "Freudenthal produced non-integral multiplicity {m} at {mu}"
                    )));
                }
                let m = m.to_integer() as u64;
                if m > 0 {
                    mult.insert(mu.clone(), m);
                    next.push(mu);
                }
            }
            layer = next;
        }
        Ok(mult.into_iter().collect())
    }

    /// Check the structural invariants of the datum.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Numeric(m));
        if self.norm2(&self.theta)? != q(2) {
            return fail(format!("⟨θ,θ⟩ ≠ 2 for {}", self.spec));
        }
        if q(self.h_dual) != self.ip(&self.rho, &self.theta)? + q(1) {
            return fail("h∨ ≠ ⟨ρ,θ⟩ + 1".into());
        }
        for k in 1..=self.rank() {
            let minor: Vec<Vec<Q>> = self.gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !determinant(&minor).is_positive() {
                return fail("Gram matrix is not positive definite".into());
            }
        }
        if 2 * self.positive_roots.len() + self.rank() != self.spec.dim() {
            return fail("positive root count disagrees with dim 𝔤".into());
        }
        for alpha in &self.positive_roots {
            let h = self.ip(alpha, &self.theta)?;
            if !is_nonnegative(&self.to_simple_coords(&self.theta.sub(alpha).to_q())) || h.is_negative() {
                return fail("θ is not the highest root".into());
            }
        }
        Ok(())
    }
}
