//! Exact rank of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rank over `Q` of an integer matrix.
///
/// Runs fraction-free elimination on `i128` rows, dividing each updated row
/// by the gcd of its entries and pivoting on the smallest nonzero magnitude in
/// the column. If any intermediate value would overflow, the whole
/// computation is repeated with [`bareiss_rank`].
pub fn exact_rank(a: &[Vec<i64>]) -> usize {
    match gcd_reduced_rank(a) {
        Some(r) => r,
        None => bareiss_rank(a),
    }
}

fn gcd_reduced_rank(a: &[Vec<i64>]) -> Option<usize> {
    let mut rows: Vec<Vec<i128>> = a
        .iter()
        .filter(|r| r.iter().any(|x| *x != 0))
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len())
            .filter(|&i| rows[i][col] != 0)
            .min_by_key(|&i| (rows[i][col].unsigned_abs(), i))
        else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = prow[col];
        for row in tail.iter_mut() {
            let c = row[col];
            if c == 0 {
                continue;
            }
            let g = p.gcd(&c);
            let (pm, cm) = (p / g, c / g);
            let mut content = 0i128;
            for j in col..ncols {
                let v = row[j]
                    .checked_mul(pm)?
                    .checked_sub(prow[j].checked_mul(cm)?)?;
                row[j] = v;
                content = content.gcd(&v);
            }
            if content > 1 {
                for v in &mut row[col..] {
                    *v /= content;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}

/// Rank by Bareiss fraction-free elimination over `BigInt`.
pub fn bareiss_rank(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows)
            .filter(|&i| !m[i][col].is_zero())
            .min_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()).then(i.cmp(&j)))
        else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
