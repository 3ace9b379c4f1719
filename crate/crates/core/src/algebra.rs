//! Graded quotients of polynomial rings, computed degree by degree.
//!
//! Every variable has degree one (cohomological degree two). In each degree the
//! algebra is the span of the admissible monomials modulo the part of the ideal
//! generated by the relations. Standard monomials are the lexicographically
//! smallest ones that survive elimination: columns are reduced from the largest
//! monomial downwards, so pivots land on large monomials.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::complex::{Face, SimplicialComplex};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Exponent vector; compared lexicographically.
pub type Monomial = Vec<u8>;

/// A homogeneous polynomial as a list of terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F> {
    pub terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(terms: Vec<(Monomial, F)>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { terms }
    }

    /// `Σ c_j v_j`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let mut mono = vec![0u8; n];
                    mono[j] = 1;
                    (mono, c.clone())
                })
                .collect(),
        )
    }

    pub fn monomial(exponents: Monomial) -> Self {
        Self::new(vec![(exponents, F::one())])
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(m, _)| m.iter().map(|&e| e as usize).sum())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mono: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let e = acc.entry(mono).or_insert_with(F::zero);
                *e = e.clone() + ca.clone() * cb.clone();
            }
        }
        let mut terms: Vec<_> = acc.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Self::new(terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let n = self.terms.first().map_or(0, |t| t.0.len());
        (0..e).fold(Self::monomial(vec![0; n]), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in self.terms.iter().chain(&other.terms) {
            let e = acc.entry(m.clone()).or_insert_with(F::zero);
            *e = e.clone() + c.clone();
        }
        let mut terms: Vec<_> = acc.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Self::new(terms)
    }
}

/// Which monomials exist before the relations are imposed.
#[derive(Clone, Debug)]
pub enum Support {
    /// The full polynomial ring.
    All,
    /// Face ring: a monomial is zero unless its support is a face of `K`.
    Faces(SimplicialComplex),
}

impl Support {
    fn admits(&self, mask: Face) -> bool {
        match self {
            Support::All => true,
            Support::Faces(k) => k.is_face(mask),
        }
    }
}

fn support_mask(mono: &[u8]) -> Face {
    mono.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

/// One homogeneous component.
#[derive(Clone, Debug)]
pub struct DegreePiece<F> {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Reduced echelon rows of the ideal, keyed by pivot monomial index.
    reducers: Vec<(usize, Vec<F>)>,
    /// Monomial indices of the standard monomials, increasing.
    basis: Vec<usize>,
}

impl<F: Field> DegreePiece<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|&i| &self.monomials[i])
    }

    /// Coordinates in the standard basis of a vector given over all monomials.
    fn normal_form(&self, mut v: Vec<F>) -> Vec<F> {
        for (pivot, row) in &self.reducers {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        self.basis.iter().map(|&i| v[i].clone()).collect()
    }
}

/// A graded algebra `k[v_1..v_n] / I`, possibly over a face ring, truncated at
/// `top_degree`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F> {
    num_vars: usize,
    support: Support,
    pieces: Vec<DegreePiece<F>>,
}

impl<F: Field> GradedAlgebra<F> {
    /// Builds the quotient by the ideal generated by homogeneous `relations`,
    /// in degrees `0..=top_degree`.
    pub fn quotient(num_vars: usize, support: Support, relations: &[Polynomial<F>], top_degree: usize) -> Self {
        let mut monomials_by_degree: Vec<Vec<Monomial>> = Vec::with_capacity(top_degree + 1);
        for d in 0..=top_degree {
            monomials_by_degree.push(enumerate_monomials(num_vars, d, &support));
        }
        let pieces = (0..=top_degree)
            .map(|d| build_piece(d, &monomials_by_degree, &support, relations))
            .collect();
        GradedAlgebra { num_vars, support, pieces }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, degree: usize) -> &DegreePiece<F> {
        &self.pieces[degree]
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.pieces.get(degree).map_or(0, DegreePiece::dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(DegreePiece::dim).collect()
    }

    /// Coordinates of a monomial in the standard basis of its degree.
    pub fn monomial_class(&self, mono: &[u8]) -> Vec<F> {
        let d: usize = mono.iter().map(|&e| e as usize).sum();
        let piece = &self.pieces[d];
        let mut v = vec![F::zero(); piece.monomials.len()];
        if self.support.admits(support_mask(mono)) {
            let i = piece.index[mono];
            v[i] = F::one();
        }
        piece.normal_form(v)
    }

    /// Coordinates of a polynomial in the standard basis of its degree.
    pub fn class_of(&self, p: &Polynomial<F>, degree: usize) -> Vec<F> {
        let piece = &self.pieces[degree];
        let mut v = vec![F::zero(); piece.monomials.len()];
        for (mono, c) in &p.terms {
            if let Some(&i) = piece.index.get(mono) {
                v[i] = v[i].clone() + c.clone();
            }
        }
        piece.normal_form(v)
    }

    /// Product of two classes given in standard coordinates. Degrees above the
    /// truncation yield `None`.
    pub fn multiply(&self, da: usize, a: &[F], db: usize, b: &[F]) -> Option<Vec<F>> {
        let target = self.pieces.get(da + db)?;
        let (pa, pb) = (&self.pieces[da], &self.pieces[db]);
        let mut v = vec![F::zero(); target.monomials.len()];
        for (ia, ca) in pa.basis.iter().zip(a) {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in pb.basis.iter().zip(b) {
                if cb.is_zero() {
                    continue;
                }
                let mono: Monomial = pa.monomials[*ia]
                    .iter()
                    .zip(&pb.monomials[*ib])
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(&i) = target.index.get(&mono) {
                    v[i] = v[i].clone() + ca.clone() * cb.clone();
                }
            }
        }
        Some(target.normal_form(v))
    }

    /// Standard basis vector `e_i` of a degree.
    pub fn basis_vector(&self, degree: usize, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim(degree)];
        v[i] = F::one();
        v
    }

    /// Matrix of multiplication by the `g`-th degree-one basis element, from
    /// degree `d` to degree `d + 1`.
    pub fn generator_action(&self, g: usize, d: usize) -> Option<Matrix<F>> {
        let gen = self.basis_vector(1, g);
        let cols: Vec<Vec<F>> = (0..self.dim(d))
            .map(|i| self.multiply(1, &gen, d, &self.basis_vector(d, i)))
            .collect::<Option<_>>()?;
        let mut m = Matrix::zeros(self.dim(d + 1), cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Some(m)
    }

    /// Matrix whose `j`-th column is the square of the `j`-th degree-one basis
    /// element. Over `F_2` squaring is additive, so this is the squaring map.
    pub fn squares_matrix(&self) -> Option<Matrix<F>> {
        if self.top_degree() < 2 {
            return None;
        }
        let n1 = self.dim(1);
        let mut m = Matrix::zeros(self.dim(2), n1);
        for j in 0..n1 {
            let e = self.basis_vector(1, j);
            let sq = self.multiply(1, &e, 1, &e)?;
            for (i, x) in sq.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Some(m)
    }

    /// Dimension of the span of all products `g · b` with `g` in degree one and
    /// `b` in degree `d - 1`. Equals `dim(d)` for every `d >= 1` exactly when the
    /// algebra is generated in degree one.
    pub fn decomposable_rank(&self, d: usize) -> usize {
        assert!(d >= 1);
        let mut rows = Vec::new();
        for g in 0..self.dim(1) {
            if let Some(m) = self.generator_action(g, d - 1) {
                rows.extend(m.transpose().to_rows());
            }
        }
        if rows.is_empty() {
            return 0;
        }
        Matrix::from_rows(rows).rank()
    }

    /// Renders a class as a sum of standard monomials using `names`.
    pub fn format_class(&self, degree: usize, v: &[F], names: &[String]) -> String
    where
        F: std::fmt::Display,
    {
        let piece = &self.pieces[degree];
        let terms: Vec<String> = piece
            .basis_monomials()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, c)| {
                let m = format_monomial(mono, names);
                if c.is_one() {
                    m
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

pub fn format_monomial(mono: &[u8], names: &[String]) -> String {
    let mut s = String::new();
    for (i, &e) in mono.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&names[i]);
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

/// Admissible monomials of degree `d`, sorted lexicographically.
fn enumerate_monomials(n: usize, d: usize, support: &Support) -> Vec<Monomial> {
    fn rec(i: usize, left: usize, mask: Face, cur: &mut Monomial, support: &Support, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            let mask = if left > 0 { mask | (1 << i) } else { mask };
            if support.admits(mask) {
                cur[i] = left as u8;
                out.push(cur.clone());
                cur[i] = 0;
            }
            return;
        }
        for e in 0..=left {
            let next = if e > 0 { mask | (1 << i) } else { mask };
            if e > 0 && !support.admits(next) {
                break;
            }
            cur[i] = e as u8;
            rec(i + 1, left - e, next, cur, support, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, 0, &mut vec![0; n], support, &mut out);
    out.sort();
    out
}

fn build_piece<F: Field>(
    d: usize,
    monomials_by_degree: &[Vec<Monomial>],
    support: &Support,
    relations: &[Polynomial<F>],
) -> DegreePiece<F> {
    let monomials = monomials_by_degree[d].clone();
    let index: HashMap<Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let n = monomials.len();

    // Ideal generators μ·r, as rows over columns in descending monomial order.
    let mut rows: Vec<Vec<F>> = Vec::new();
    for r in relations {
        let Some(rd) = r.degree() else { continue };
        if rd > d {
            continue;
        }
        for mu in &monomials_by_degree[d - rd] {
            let mut row = vec![F::zero(); n];
            let mut nonzero = false;
            for (mono, c) in &r.terms {
                let prod: Monomial = mono.iter().zip(mu).map(|(a, b)| a + b).collect();
                if !support.admits(support_mask(&prod)) {
                    continue;
                }
                let col = n - 1 - index[&prod];
                row[col] = row[col].clone() + c.clone();
                nonzero = true;
            }
            if nonzero {
                rows.push(row);
            }
        }
    }

    let mut reducers = Vec::new();
    let mut is_pivot = vec![false; n];
    if !rows.is_empty() {
        let mut m = Matrix::from_rows(rows);
        let pivots = m.rref();
        for (r, &pc) in pivots.iter().enumerate() {
            let mono_idx = n - 1 - pc;
            is_pivot[mono_idx] = true;
            // Back to ascending monomial order.
            let row: Vec<F> = (0..n).map(|i| m[(r, n - 1 - i)].clone()).collect();
            reducers.push((mono_idx, row));
        }
    }
    let basis = (0..n).filter(|&i| !is_pivot[i]).collect();
    DegreePiece { monomials, index, reducers, basis }
}
