//! Brute-force reference computations shared by the property tests and the
//! acceptance suite. Nothing here calls into the library's linear algebra.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use toric_core::SimplicialComplex;

/// All faces (the empty face included) grouped by cardinality, found by
/// testing every vertex subset against the maximal faces.
pub fn faces_by_size(k: &SimplicialComplex) -> Vec<Vec<u64>> {
    let m = k.vertex_count();
    let maximal = k.maximal_faces();
    let mut out: Vec<Vec<u64>> = vec![Vec::new(); m + 1];
    for mask in 0u64..(1u64 << m) {
        if mask == 0 || maximal.iter().any(|&f| f & mask == mask) {
            out[mask.count_ones() as usize].push(mask);
        }
    }
    while out.len() > 1 && out.last().is_some_and(Vec::is_empty) {
        out.pop();
    }
    out
}

pub fn f_vector(k: &SimplicialComplex) -> Vec<u64> {
    faces_by_size(k).iter().map(|g| g.len() as u64).collect()
}

/// `Σ_i h_i t^{n-i} = Σ_i f_{i-1} (t-1)^{n-i}`, expanded directly.
pub fn h_vector(f: &[u64], n: usize) -> Vec<i64> {
    let mut h = vec![0i64; n + 1];
    for (i, &fi) in f.iter().enumerate().take(n + 1) {
        // (t-1)^{n-i} = Σ_j C(n-i, j) t^j (-1)^{n-i-j}
        let e = n - i;
        let mut c = 1i64;
        for j in 0..=e {
            let sign = if (e - j) % 2 == 0 { 1 } else { -1 };
            // coefficient of t^j contributes to h_{n-j}
            h[n - j] += sign * c * fi as i64;
            c = c * (e - j) as i64 / (j + 1) as i64;
        }
    }
    h
}

/// Boundary matrix from faces of one size to the next smaller size.
pub fn boundary(lower: &[u64], upper: &[u64]) -> Vec<Vec<i64>> {
    let mut d = vec![vec![0i64; upper.len()]; lower.len()];
    for (c, &sigma) in upper.iter().enumerate() {
        let mut pos = 0;
        for v in 0..64 {
            if sigma >> v & 1 == 0 {
                continue;
            }
            let tau = sigma & !(1 << v);
            let r = lower.iter().position(|&x| x == tau).expect("boundary face present");
            d[r][c] = if pos % 2 == 0 { 1 } else { -1 };
            pos += 1;
        }
    }
    d
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
pub fn rank_q(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Rank over `F_p` by plain row reduction on residues.
pub fn rank_fp(a: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for j in 0..cols {
            m[r][j] = m[r][j] * s % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Reduced Betti numbers over `Q` (`p = 0`) or `F_p`.
pub fn reduced_betti(k: &SimplicialComplex, p: i64) -> BTreeMap<i64, usize> {
    let faces = faces_by_size(k);
    let rank = |a: &[Vec<i64>]| if p == 0 { rank_q(a) } else { rank_fp(a, p) };
    // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces.
    let mut ranks = vec![0usize; faces.len() + 1];
    for s in 1..faces.len() {
        ranks[s] = rank(&boundary(&faces[s - 1], &faces[s]));
    }
    let mut out = BTreeMap::new();
    for (s, g) in faces.iter().enumerate() {
        let betti = g.len() - ranks[s] - ranks.get(s + 1).copied().unwrap_or(0);
        if betti > 0 {
            out.insert(s as i64 - 1, betti);
        }
    }
    out
}

/// `C(r, j) mod 2` from Pascal's triangle.
pub fn pascal_parity(max: usize) -> Vec<Vec<bool>> {
    let mut rows: Vec<Vec<bool>> = vec![vec![true]];
    for r in 1..=max {
        let prev = &rows[r - 1];
        let row = (0..=r)
            .map(|j| {
                let a = if j > 0 { prev[j - 1] } else { false };
                let b = if j < r { prev[j] } else { false };
                a ^ b
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Brute-force hit search on Pascal parity: smallest `j` with `1 <= j <= s - j`
/// and `C(s - j, j)` odd.
pub fn hit_search(s: usize, pascal: &[Vec<bool>]) -> Option<(usize, usize)> {
    (1..=s).filter(|&j| j <= s - j).map(|j| (s - j, j)).find(|&(r, j)| pascal[r][j])
}

/// Invariant factors via gcds of `k × k` minors, for small matrices.
pub fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<BigInt> {
    use num_integer::Integer;
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Laplace expansion.
pub fn det(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if a[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
        let term = BigInt::from(a[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
