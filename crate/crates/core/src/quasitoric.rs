//! Quasitoric manifolds as pairs `(K(P), Λ)`.
//!
//! `Λ` is an `n × m` integer matrix whose column `j` is attached to vertex `j`
//! of `K(P)` (facet `j` of `P`). It defines a quasitoric manifold exactly when
//! the `n × n` minor on every maximal face of `K(P)` is `±1`.
//!
//! The cohomology ring over a field `k` is
//! `k[v_1..v_m] / (I_SR + (θ_1, ..., θ_n))` with `θ_i = Σ_j λ_ij v_j`,
//! computed degree by degree on the face ring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, Polynomial, Support};
use crate::complex::{mask_to_vertices, PolytopeDual, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Coefficients, Field};
use crate::{with_field, F2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CharacteristicMatrix {
    rows: Vec<Vec<i64>>,
}

impl CharacteristicMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(
                "characteristic matrix must be a nonempty rectangular array".into(),
            ));
        }
        Ok(CharacteristicMatrix { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn to_integer_matrix(&self) -> Matrix<BigInt> {
        Matrix::from_rows(self.rows.clone()).map(|&v| BigInt::from(v))
    }

    /// Exact minor on the given 0-based columns.
    pub fn minor(&self, cols: &[usize]) -> BigInt {
        self.to_integer_matrix().select_columns(cols).determinant()
    }
}

impl TryFrom<Vec<Vec<i64>>> for CharacteristicMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<CharacteristicMatrix> for Vec<Vec<i64>> {
    fn from(c: CharacteristicMatrix) -> Self {
        c.rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceMinor {
    pub face: Vec<usize>,
    pub minor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub faces_checked: usize,
    /// First maximal face (in the complex's order) with minor not `±1`.
    pub first_failure: Option<FaceMinor>,
    pub failures: Vec<FaceMinor>,
}

/// Checks every maximal-face minor of `Λ` with exact integer determinants.
pub fn validate_characteristic(p: &PolytopeDual, lambda: &CharacteristicMatrix) -> Result<ValidityReport> {
    if lambda.n() != p.dim() || lambda.m() != p.facet_count() {
        return Err(Error::DimensionMismatch(format!(
            "characteristic matrix is {}x{}, polytope needs {}x{}",
            lambda.n(),
            lambda.m(),
            p.dim(),
            p.facet_count()
        )));
    }
    let full = lambda.to_integer_matrix();
    let mut failures = Vec::new();
    for &face in p.complex().maximal_faces() {
        let cols: Vec<usize> = mask_to_vertices(face).iter().map(|v| v - 1).collect();
        let det = full.select_columns(&cols).determinant();
        if !det.abs().is_one() {
            failures.push(FaceMinor { face: mask_to_vertices(face), minor: det.to_string() });
        }
    }
    Ok(ValidityReport {
        valid: failures.is_empty(),
        faces_checked: p.complex().maximal_faces().len(),
        first_failure: failures.first().cloned(),
        failures,
    })
}

/// A validated characteristic pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quasitoric {
    pub polytope: PolytopeDual,
    pub lambda: CharacteristicMatrix,
}

impl Quasitoric {
    pub fn new(polytope: PolytopeDual, lambda: CharacteristicMatrix) -> Result<Self> {
        let report = validate_characteristic(&polytope, &lambda)?;
        if let Some(f) = report.first_failure {
            return Err(Error::InvalidCharacteristic { face: f.face, det: f.minor });
        }
        Ok(Quasitoric { polytope, lambda })
    }

    pub fn n(&self) -> usize {
        self.polytope.dim()
    }

    pub fn m(&self) -> usize {
        self.polytope.facet_count()
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.polytope.complex()
    }
}

#[derive(Deserialize)]
struct RawQuasitoric {
    polytope: PolytopeDual,
    lambda: CharacteristicMatrix,
}

impl<'de> Deserialize<'de> for Quasitoric {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawQuasitoric::deserialize(d)?;
        Quasitoric::new(raw.polytope, raw.lambda).map_err(serde::de::Error::custom)
    }
}

/// `H^*(M; F)` with degree `k` standing for `H^{2k}`.
#[derive(Clone, Debug)]
pub struct CohomologyRing<F> {
    pub n: usize,
    pub algebra: GradedAlgebra<F>,
    pub names: Vec<String>,
}

impl<F: Field> CohomologyRing<F> {
    /// `dim H^{2k}` for `k = 0..=n`.
    pub fn dims(&self) -> Vec<usize> {
        self.algebra.dims()[..=self.n].to_vec()
    }

    /// Standard monomials of `H^2`, as exponent vectors in `v_1..v_m`.
    pub fn degree_two_basis(&self) -> Vec<Vec<u8>> {
        self.algebra.piece(1).basis_monomials().cloned().collect()
    }

    /// Degree-two generation: products of `H^2` span `H^{2k}` for `1 <= k <= n`.
    pub fn generated_in_degree_two(&self) -> bool {
        (2..=self.n).all(|k| self.algebra.decomposable_rank(k) == self.algebra.dim(k))
    }
}

/// Computes `H^*(M; F)` and checks `dim H^{2k} = h_k(P)`.
pub fn cohomology_ring<F: Field>(q: &Quasitoric) -> Result<CohomologyRing<F>> {
    let n = q.n();
    let m = q.m();
    let relations: Vec<Polynomial<F>> = q
        .lambda
        .rows()
        .iter()
        .map(|row| Polynomial::linear(&row.iter().map(|&x| F::from_i64(x)).collect::<Vec<_>>()))
        .collect();
    let algebra = GradedAlgebra::quotient(m, Support::Faces(q.complex().clone()), &relations, n + 1);
    let h = q.polytope.h_vector();
    let dims = algebra.dims();
    let expected: Vec<usize> = h.entries.iter().map(|&x| x as usize).chain([0]).collect();
    if dims != expected {
        return Err(Error::InternalConsistency(format!(
            "cohomology dimensions {dims:?} over {} differ from h-vector {:?}",
            F::coefficients(),
            h.entries
        )));
    }
    Ok(CohomologyRing {
        n,
        algebra,
        names: (1..=m).map(|j| format!("v{j}")).collect(),
    })
}

/// Serializable summary of a cohomology ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyPresentation {
    pub coefficients: Coefficients,
    pub n: usize,
    /// `dim H^{2k}`, `k = 0..=n`.
    pub dims: Vec<usize>,
    /// Standard monomial basis of each `H^{2k}`.
    pub basis: Vec<Vec<String>>,
    /// `generator_action[k][g]`: multiplication by the `g`-th basis element of
    /// `H^2`, as a `dim H^{2k+2} × dim H^{2k}` matrix, for `k = 0..n`.
    pub generator_action: Vec<Vec<Vec<Vec<String>>>>,
    pub generated_in_degree_two: bool,
    /// Over `F_2`: the squaring map `H^2 -> H^4` (columns are squares of the
    /// basis of `H^2`).
    pub squaring_map: Option<Vec<Vec<String>>>,
}

impl<F: Field + fmt::Display> CohomologyRing<F> {
    pub fn presentation(&self) -> CohomologyPresentation {
        let alg = &self.algebra;
        let fmt_matrix = |m: &Matrix<F>| -> Vec<Vec<String>> {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                .collect()
        };
        let basis = (0..=self.n)
            .map(|k| {
                alg.piece(k)
                    .basis_monomials()
                    .map(|mono| crate::algebra::format_monomial(mono, &self.names))
                    .collect()
            })
            .collect();
        let generator_action = (0..self.n)
            .map(|k| {
                (0..alg.dim(1))
                    .map(|g| fmt_matrix(&alg.generator_action(g, k).expect("within truncation")))
                    .collect()
            })
            .collect();
        let squaring_map = (F::CHARACTERISTIC == 2)
            .then(|| alg.squares_matrix().map(|m| fmt_matrix(&m)))
            .flatten();
        CohomologyPresentation {
            coefficients: F::coefficients(),
            n: self.n,
            dims: self.dims(),
            basis,
            generator_action,
            generated_in_degree_two: self.generated_in_degree_two(),
            squaring_map,
        }
    }
}

/// Runtime-dispatched [`cohomology_ring`] followed by [`CohomologyRing::presentation`].
pub fn cohomology_presentation(q: &Quasitoric, coefficients: Coefficients) -> Result<CohomologyPresentation> {
    with_field!(coefficients, F => cohomology_ring::<F>(q).map(|r| r.presentation()),
        integers => Err(Error::UnsupportedCoefficients(
            "the cohomology ring is computed over fields only".into())))
}

/// The power map `ū` acts on `H^{2k}` by the scalar `u^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerMap {
    pub u: i64,
    /// `u^k` for `k = 0..=n`.
    pub scalars: Vec<BigInt>,
}

impl PowerMap {
    pub fn new(n: usize, u: i64) -> Self {
        let u_big = BigInt::from(u);
        let mut scalars = Vec::with_capacity(n + 1);
        let mut acc = BigInt::one();
        for _ in 0..=n {
            scalars.push(acc.clone());
            acc *= &u_big;
        }
        PowerMap { u, scalars }
    }

    pub fn compose(&self, other: &PowerMap) -> Vec<BigInt> {
        self.scalars.iter().zip(&other.scalars).map(|(a, b)| a * b).collect()
    }

    /// Applies the power map to a class of degree `k` given in any basis.
    pub fn apply<F: Field>(&self, k: usize, v: &[F]) -> Vec<F> {
        let s: F = crate::homology::reduce_integer(&self.scalars[k]);
        v.iter().map(|x| x.clone() * s.clone()).collect()
    }
}

pub fn power_map_matrix<F>(ring: &CohomologyRing<F>, u: i64) -> PowerMap {
    PowerMap::new(ring.n, u)
}

/// `CP^n`: `K = ∂Δ^n`, `Λ = [I_n | -1]`.
pub fn projective_space(n: usize) -> Quasitoric {
    generalized_bott(&[n], &[vec![]]).expect("projective space")
}

/// A quasitoric manifold over a `k`-gon. The columns start from the square
/// `(1,0), (0,1), (-1,0), (0,-1)` and insert `v_last + v_first` for each extra
/// edge; a triangle gives `CP^2`.
pub fn polygon_manifold(k: usize) -> Result<Quasitoric> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("a polygon needs at least 3 edges, got {k}")));
    }
    let mut cols: Vec<(i64, i64)> = if k == 3 {
        vec![(1, 0), (0, 1), (-1, -1)]
    } else {
        vec![(1, 0), (0, 1), (-1, 0), (0, -1)]
    };
    while cols.len() < k {
        let (a, b) = (cols[cols.len() - 1], cols[0]);
        cols.push((a.0 + b.0, a.1 + b.1));
    }
    let rows = vec![cols.iter().map(|c| c.0).collect(), cols.iter().map(|c| c.1).collect()];
    Quasitoric::new(PolytopeDual::polygon(k), CharacteristicMatrix::new(rows)?)
}

/// Generalized Bott manifold over `Δ^{n_1} × ... × Δ^{n_l}`.
///
/// Vertices of stage `s` are `n_s` "coordinate" vertices followed by one extra
/// vertex. Rows are grouped by stage in the same way. Column blocks are
/// `[I_{n_s} | w_s]` where `w_s` has `-1` in the rows of stage `s` and, in the
/// rows of each later stage `t`, the vector `params[t][s]` of length `n_t`.
/// So `params[t]` lists one vector per earlier stage; `params[0]` is empty.
/// The matrix is block lower triangular with unimodular diagonal blocks, hence
/// valid for every choice of integers.
pub fn generalized_bott(dims: &[usize], params: &[Vec<Vec<i64>>]) -> Result<Quasitoric> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidParameters("stage dimensions must be positive".into()));
    }
    if params.len() != dims.len() {
        return Err(Error::InvalidParameters(format!(
            "expected parameters for {} stages, got {}",
            dims.len(),
            params.len()
        )));
    }
    for (t, stage) in params.iter().enumerate() {
        if stage.len() != t {
            return Err(Error::InvalidParameters(format!(
                "stage {} needs {} parameter vectors (one per earlier stage), got {}",
                t + 1,
                t,
                stage.len()
            )));
        }
        if let Some(v) = stage.iter().find(|v| v.len() != dims[t]) {
            return Err(Error::InvalidParameters(format!(
                "stage {} parameter vectors must have length {}, got {}",
                t + 1,
                dims[t],
                v.len()
            )));
        }
    }
    let n: usize = dims.iter().sum();
    let m = n + dims.len();
    let row_start: Vec<usize> = dims.iter().scan(0, |acc, &d| {
        let s = *acc;
        *acc += d;
        Some(s)
    }).collect();
    let mut rows = vec![vec![0i64; m]; n];
    let mut col = 0;
    for (s, &ds) in dims.iter().enumerate() {
        for i in 0..ds {
            rows[row_start[s] + i][col + i] = 1;
        }
        let w = col + ds;
        for i in 0..ds {
            rows[row_start[s] + i][w] = -1;
        }
        for t in s + 1..dims.len() {
            for i in 0..dims[t] {
                rows[row_start[t] + i][w] = params[t][s][i];
            }
        }
        col += ds + 1;
    }
    Quasitoric::new(PolytopeDual::simplex_product(dims)?, CharacteristicMatrix::new(rows)?)
}

/// Parameters `(a, b, c, d, e, f)` of the mod-2 presentation
/// `F2[x,y,z] / (x² + x(ay + bz), y² + y(cx + dz), z² + z(ex + fy))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeParams {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
    pub f: bool,
}

impl CubeParams {
    pub fn from_bits(bits: u8) -> Self {
        let bit = |i: u8| bits >> (5 - i) & 1 == 1;
        CubeParams { a: bit(0), b: bit(1), c: bit(2), d: bit(3), e: bit(4), f: bit(5) }
    }

    pub fn as_tuple(&self) -> [u8; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f].map(u8::from)
    }

    /// Determinant of `[[1, c, e], [a, 1, f], [b, d, 1]]` over `F_2`.
    pub fn determinant(&self) -> bool {
        let m = [
            [true, self.c, self.e],
            [self.a, true, self.f],
            [self.b, self.d, true],
        ];
        let t1 = m[0][0] & (m[1][1] & m[2][2] ^ m[1][2] & m[2][1]);
        let t2 = m[0][1] & (m[1][0] & m[2][2] ^ m[1][2] & m[2][0]);
        let t3 = m[0][2] & (m[1][0] & m[2][1] ^ m[1][1] & m[2][0]);
        t1 ^ t2 ^ t3
    }
}

/// A symbolic mod-2 quadratic presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum QuadraticPresentationF2 {
    /// `F2[x,y] / (x^{k'-l+1} (x+y)^l, y^{n-k'+1})`, over `Δ^k × Δ^{n-k}`.
    TwoSimplices { n: usize, k_prime: usize, l: usize },
    /// The 3-cube family.
    ///
    /// `ac = df = 0` and `det = 1` are the usual stated conditions. A tuple
    /// coming from some `Λ` also has `be = 0`: the parameters are the
    /// off-diagonal entries of `A = Λ_E^{-1} Λ_W` mod 2, and the `{1,3}`
    /// principal minor `1 - be` of `A` must be odd, just like `1 - ac` and
    /// `1 - df`. `valid` requires all four.
    Cube {
        params: CubeParams,
        ac_zero: bool,
        df_zero: bool,
        be_zero: bool,
        determinant_one: bool,
        stated_conditions: bool,
        valid: bool,
    },
}

pub fn cube_presentation(params: CubeParams) -> QuadraticPresentationF2 {
    let ac_zero = !(params.a && params.c);
    let df_zero = !(params.d && params.f);
    let be_zero = !(params.b && params.e);
    let determinant_one = params.determinant();
    let stated_conditions = ac_zero && df_zero && determinant_one;
    QuadraticPresentationF2::Cube {
        params,
        ac_zero,
        df_zero,
        be_zero,
        determinant_one,
        stated_conditions,
        valid: stated_conditions && be_zero,
    }
}

impl QuadraticPresentationF2 {
    pub fn two_simplices(n: usize, k_prime: usize, l: usize) -> Result<Self> {
        if k_prime > n || l > k_prime {
            return Err(Error::OutOfRange(format!(
                "need 0 <= l <= k' <= n, got n={n}, k'={k_prime}, l={l}"
            )));
        }
        Ok(QuadraticPresentationF2::TwoSimplices { n, k_prime, l })
    }

    pub fn variable_names(&self) -> Vec<String> {
        match self {
            QuadraticPresentationF2::TwoSimplices { .. } => vec!["x".into(), "y".into()],
            QuadraticPresentationF2::Cube { .. } => vec!["x".into(), "y".into(), "z".into()],
        }
    }

    pub fn relations(&self) -> Vec<Polynomial<F2>> {
        let one = F2::one();
        let var = |n: usize, i: usize| {
            let mut mono = vec![0u8; n];
            mono[i] = 1;
            Polynomial::<F2>::monomial(mono)
        };
        match *self {
            QuadraticPresentationF2::TwoSimplices { n, k_prime, l } => {
                let (x, y) = (var(2, 0), var(2, 1));
                let first = x.pow((k_prime - l + 1) as u32).mul(&x.add(&y).pow(l as u32));
                let second = y.pow((n - k_prime + 1) as u32);
                vec![first, second]
            }
            QuadraticPresentationF2::Cube { params: p, .. } => {
                let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
                let lin = |c1: bool, v1: &Polynomial<F2>, c2: bool, v2: &Polynomial<F2>| {
                    let s = |c: bool| if c { one } else { F2::zero() };
                    Polynomial::new(
                        v1.terms
                            .iter()
                            .map(|(m, _)| (m.clone(), s(c1)))
                            .chain(v2.terms.iter().map(|(m, _)| (m.clone(), s(c2))))
                            .collect(),
                    )
                };
                vec![
                    x.pow(2).add(&x.mul(&lin(p.a, &y, p.b, &z))),
                    y.pow(2).add(&y.mul(&lin(p.c, &x, p.d, &z))),
                    z.pow(2).add(&z.mul(&lin(p.e, &x, p.f, &y))),
                ]
            }
        }
    }

    /// Top nonzero degree of the ring (half the manifold dimension).
    pub fn top_degree(&self) -> usize {
        match *self {
            QuadraticPresentationF2::TwoSimplices { n, .. } => n,
            QuadraticPresentationF2::Cube { .. } => 3,
        }
    }

    pub fn algebra(&self) -> GradedAlgebra<F2> {
        let rel = self.relations();
        GradedAlgebra::quotient(self.variable_names().len(), Support::All, &rel, self.top_degree() + 1)
    }
}

/// Reduces a quasitoric manifold over the 3-cube to its cube parameters.
///
/// `K` must be the octahedron boundary (three pairs of non-adjacent vertices).
/// One vertex of each pair is taken as a coordinate vertex, `A = Λ_E^{-1} Λ_W`
/// is formed exactly, and the off-diagonal entries of `A` mod 2 give the
/// parameters: `x, y, z` are the classes of the remaining vertices.
pub fn reduce_to_cube(q: &Quasitoric) -> Result<CubeParams> {
    let k = q.complex();
    if q.n() != 3 || q.m() != 6 {
        return Err(Error::InvalidParameters("not a manifold over the 3-cube".into()));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if !k.is_face((1 << a) | (1 << b)) {
                pairs.push((a, b));
            }
        }
    }
    if pairs.len() != 3 {
        return Err(Error::InvalidParameters("complex is not the octahedron boundary".into()));
    }
    let e_cols: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let w_cols: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let full = q.lambda.to_integer_matrix();
    let le = full.select_columns(&e_cols);
    let lw = full.select_columns(&w_cols);
    let det = le.determinant();
    if !det.abs().is_one() {
        return Err(Error::InvalidCharacteristic {
            face: e_cols.iter().map(|c| c + 1).collect(),
            det: det.to_string(),
        });
    }
    // Λ_E^{-1} = adj(Λ_E) / det with det = ±1.
    let adj = adjugate3(&le);
    let a = adj.mul(&lw).map(|v| v * &det);
    let odd = |v: &BigInt| v.is_odd();
    if !(0..3).all(|i| odd(&a[(i, i)])) {
        return Err(Error::InternalConsistency("diagonal of the reduced matrix is even".into()));
    }
    Ok(CubeParams {
        a: odd(&a[(0, 1)]),
        b: odd(&a[(0, 2)]),
        c: odd(&a[(1, 0)]),
        d: odd(&a[(1, 2)]),
        e: odd(&a[(2, 0)]),
        f: odd(&a[(2, 1)]),
    })
}

fn adjugate3(m: &Matrix<BigInt>) -> Matrix<BigInt> {
    let mut adj = Matrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = &m[(rows[0], cols[0])] * &m[(rows[1], cols[1])]
                - &m[(rows[0], cols[1])] * &m[(rows[1], cols[0])];
            adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}
