//! Exact linear algebra over rational fields.
//!
//! Everything here is generic over the scalar so the same elimination code
//! serves both the small `Ratio<i64>` root-system computations and the
//! big-rational module construction.

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rational scalar used for root data, weights and exponents.
pub type Q = Ratio<i64>;

/// Rational vector in the fundamental-weight coordinates of a root datum.
pub type QVec = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn to_qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| q(x)).collect()
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Field operations needed by the elimination routines.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<T: Field>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = a[col][j].clone() * factor.clone();
                    a[r][j] = a[r][j].clone() - t;
                    let t = inv[col][j].clone() * factor.clone();
                    inv[r][j] = inv[r][j].clone() - t;
                }
            }
        }
    }
    Some(inv)
}

pub fn determinant<T: Field>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return T::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let factor = a[r][col].clone() / p.clone();
                for j in col..n {
                    let t = a[col][j].clone() * factor.clone();
                    a[r][j] = a[r][j].clone() - t;
                }
            }
        }
    }
    det
}

/// Greedy row selection: returns the indices of a maximal linearly
/// independent subset of `rows`, scanning in order, together with the
/// coordinates of every row in terms of the selected ones.
pub fn independent_rows<T: Field>(rows: &[Vec<T>]) -> (Vec<usize>, Vec<Vec<T>>) {
    // Echelon rows kept with their expression in terms of selected rows.
    let width = rows.first().map_or(0, |r| r.len());
    let mut echelon: Vec<(usize, Vec<T>, Vec<T>)> = Vec::new(); // (pivot col, row, combo over selected)
    let mut selected: Vec<usize> = Vec::new();
    let mut coords: Vec<Vec<T>> = Vec::with_capacity(rows.len());
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        // combo expresses (row - r) in terms of selected rows, length grows
        let mut combo: Vec<T> = vec![T::zero(); selected.len()];
        for (pc, erow, ecombo) in &echelon {
            if !r[*pc].is_zero() {
                let factor = r[*pc].clone() / erow[*pc].clone();
                for j in 0..width {
                    if !erow[j].is_zero() {
                        let t = erow[j].clone() * factor.clone();
                        r[j] = r[j].clone() - t;
                    }
                }
                for (k, c) in ecombo.iter().enumerate() {
                    if !c.is_zero() {
                        combo[k] = combo[k].clone() + c.clone() * factor.clone();
                    }
                }
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => coords.push(combo),
            Some(pc) => {
                // r = row - Σ combo_k sel_k; becomes a new selected row
                let k_new = selected.len();
                selected.push(idx);
                for (_, _, ec) in echelon.iter_mut() {
                    ec.push(T::zero());
                }
                let mut ecombo: Vec<T> = combo.iter().map(|c| -c.clone()).collect();
                ecombo.push(T::one());
                echelon.push((pc, r, ecombo));
                let mut own = vec![T::zero(); k_new + 1];
                own[k_new] = T::one();
                coords.push(own);
            }
        }
    }
    let n_sel = selected.len();
    for c in coords.iter_mut() {
        c.resize(n_sel, T::zero());
    }
    (selected, coords)
}

/// Integer vector if every entry is integral.
pub fn integral(v: &[Q]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
        .collect()
}

pub fn is_nonnegative(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// `v · M` for a row vector and a square matrix.
pub fn row_times<T: Field>(v: &[T], m: &[Vec<T>]) -> Vec<T> {
    let n = m.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| {
            v.iter()
                .zip(m)
                .fold(T::zero(), |acc, (a, row)| acc + a.clone() * row[j].clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_cartan_a2() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![qfrac(2, 3), qfrac(1, 3)], vec![qfrac(1, 3), qfrac(2, 3)]]);
        assert_eq!(determinant(&m), q(3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&m).is_none());
        assert_eq!(determinant(&m), q(0));
    }

    #[test]
    fn independent_rows_expresses_dependents() {
        let rows = vec![
            vec![q(1), q(0), q(1)],
            vec![q(2), q(0), q(2)],
            vec![q(0), q(1), q(0)],
            vec![q(1), q(1), q(1)],
        ];
        let (sel, coords) = independent_rows(&rows);
        assert_eq!(sel, vec![0, 2]);
        assert_eq!(coords[1], vec![q(2), q(0)]);
        assert_eq!(coords[3], vec![q(1), q(1)]);
        for (row, c) in rows.iter().zip(&coords) {
            let rebuilt: Vec<Q> = (0..3)
                .map(|j| c.iter().zip(&sel).fold(q(0), |acc, (x, &s)| acc + *x * rows[s][j]))
                .collect();
            assert_eq!(&rebuilt, row);
        }
    }
}
