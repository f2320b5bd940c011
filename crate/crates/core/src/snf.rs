//! Smith normal form over the integers.

use crate::error::{Error, Result};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | …`, all `d_i ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<i64>>,
    pub diagonal: Vec<i64>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn checked(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Numeric("integer overflow in Smith normal form".into()))
}

// a[r] -= c * a[s] on rows of `m`.
fn row_op(m: &mut [Vec<i64>], r: usize, s: usize, c: i64) -> Result<()> {
    for j in 0..m[r].len() {
        m[r][j] = checked(m[r][j] as i128 - c as i128 * m[s][j] as i128)?;
    }
    Ok(())
}

fn col_op(m: &mut [Vec<i64>], r: usize, s: usize, c: i64) -> Result<()> {
    for row in m.iter_mut() {
        row[r] = checked(row[r] as i128 - c as i128 * row[s] as i128)?;
    }
    Ok(())
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<SmithForm> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Config("Smith normal form expects a square matrix".into()));
    }
    let mut d = a.to_vec();
    let mut u = identity(n);
    let mut v = identity(n);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| d[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                break;
            };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pj);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let c = d[i][t].div_euclid(p);
                row_op(&mut d, i, t, c)?;
                row_op(&mut u, i, t, c)?;
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let c = d[t][j].div_euclid(p);
                col_op(&mut d, j, t, c)?;
                col_op(&mut v, j, t, c)?;
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility by folding an offending row into row t
            if let Some(i) = (t + 1..n).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0)) {
                row_op(&mut d, t, i, -1)?;
                row_op(&mut u, t, i, -1)?;
                continue;
            }
            break;
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -*x;
            }
        }
    }
    let diagonal = (0..n).map(|i| d[i][i]).collect();
    Ok(SmithForm { u, diagonal, v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn known_forms() {
        let cases: Vec<(Vec<Vec<i64>>, Vec<i64>)> = vec![
            (vec![vec![2, 0], vec![0, 3]], vec![1, 6]),
            (vec![vec![2, 4], vec![6, 8]], vec![2, 4]),
            (vec![vec![3]], vec![3]),
            (vec![vec![1, 2], vec![2, 4]], vec![1, 0]),
            (vec![vec![0, -5], vec![7, 0]], vec![1, 35]),
        ];
        for (a, diag) in cases {
            let s = smith_normal_form(&a).unwrap();
            assert_eq!(s.diagonal, diag, "{a:?}");
            let dmat = mul(&mul(&s.u, &a), &s.v);
            for i in 0..a.len() {
                for j in 0..a.len() {
                    assert_eq!(dmat[i][j], if i == j { diag[i] } else { 0 });
                }
            }
        }
    }
}
