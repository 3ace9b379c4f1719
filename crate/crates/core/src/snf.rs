//! Smith normal form over the integers.

use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::matrix::Matrix;

/// Invariant factors `d_1 | d_2 | ... | d_r`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult<T> {
    pub diagonal: Vec<T>,
}

impl<T> SnfResult<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Computes the invariant factors of `a`.
///
/// Pivoting is deterministic: at every step the entry of smallest nonzero
/// absolute value in the active block is chosen, ties broken by lowest row and
/// then lowest column.
pub fn smith_normal_form<T>(a: &Matrix<T>) -> SnfResult<T>
where
    T: Integer + Signed + Clone,
{
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&m, t..rows, t..cols) else {
            break;
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let q = m[(i, t)].div_floor(&m[(t, t)]);
                row_axpy(&mut m, i, t, &q, t);
                clean &= m[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let q = m[(t, j)].div_floor(&m[(t, t)]);
                col_axpy(&mut m, j, t, &q, t);
                clean &= m[(t, j)].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived; move the
                // smallest entry of the pivot row/column into place.
                let best = (t..rows)
                    .map(|i| (i, t))
                    .chain((t + 1..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| !m[(i, j)].is_zero())
                    .min_by(|&a, &b| m[a].abs().cmp(&m[b].abs()).then(a.cmp(&b)))
                    .expect("pivot row/column cannot vanish");
                m.swap_rows(t, best.0);
                m.swap_cols(t, best.1);
                continue;
            }
            // Row and column cleared; enforce divisibility of the remainder.
            let pivot = m[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !m[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = T::one();
                    // row_t += row_i; the column loop then produces a smaller pivot.
                    row_axpy(&mut m, t, i, &-one, t);
                }
                None => break,
            }
        }
        diagonal.push(m[(t, t)].abs());
    }
    SnfResult { diagonal }
}

fn min_abs_entry<T: Integer + Signed + Clone>(
    m: &Matrix<T>,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &m[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(ij, _)| ij)
}

/// row[target] -= q * row[source], touching columns `from..`.
fn row_axpy<T: Integer + Signed + Clone>(
    m: &mut Matrix<T>,
    target: usize,
    source: usize,
    q: &T,
    from: usize,
) {
    for j in from..m.cols() {
        if m[(source, j)].is_zero() {
            continue;
        }
        let v = m[(target, j)].clone() - q.clone() * m[(source, j)].clone();
        m[(target, j)] = v;
    }
}

/// col[target] -= q * col[source], touching rows `from..`.
fn col_axpy<T: Integer + Signed + Clone>(
    m: &mut Matrix<T>,
    target: usize,
    source: usize,
    q: &T,
    from: usize,
) {
    for i in from..m.rows() {
        if m[(i, source)].is_zero() {
            continue;
        }
        let v = m[(i, target)].clone() - q.clone() * m[(i, source)].clone();
        m[(i, target)] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn snf(rows: Vec<Vec<i64>>) -> Vec<i64> {
        smith_normal_form(&Matrix::from_rows(rows)).diagonal
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(snf(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(snf(vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_normal_form(&Matrix::<i64>::zeros(0, 3)).rank(), 0);
    }

    #[test]
    fn two_by_two() {
        // gcd of entries is 2 and |det| = 8.
        assert_eq!(snf(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is diagonal but not in Smith form.
        assert_eq!(snf(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]), vec![2, 2, 60]);
    }

    #[test]
    fn bigint_agrees_with_i64() {
        let rows = vec![vec![3, -7, 2, 0], vec![1, 4, -5, 6], vec![0, 2, 2, 8]];
        let small = snf(rows.clone());
        let big = smith_normal_form(&Matrix::from_rows(rows).map(|&v| BigInt::from(v)));
        assert_eq!(big.diagonal, small.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
