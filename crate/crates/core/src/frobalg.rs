//! Commutative unital algebras with a counit-induced form `(a, b) = λ(a·b)`,
//! their Jacobson radical and minimal ideal, and the de Rham grading checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactla::{
    axpy, dot, format_scalar, is_zero_vector, q, unit_vector, zero_vector, LinAlgError, Literal,
    Matrix, Scalar, Subspace, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobError {
    #[error("multiplication table malformed: {0}")]
    BadTable(String),
    #[error("product is not commutative on basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("product is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector does not act as the identity")]
    BadUnit,
    #[error("form λ(a·b) is degenerate")]
    DegenerateForm,
    #[error("algebra is not local")]
    NotLocal,
    #[error("Ann(J) and J^⊥ differ")]
    MinimalIdealMismatch { annihilator: Subspace, orthogonal: Subspace },
    #[error("minimal ideal has dimension {0}, expected 1")]
    MinimalIdealNotLine(usize),
    #[error("grading operator is not a derivation (basis pair ({0}, {1}))")]
    NotDerivation(usize, usize),
    #[error("grading has the non-integer eigenvalue {0}")]
    NonIntegerEigenvalue(String),
    #[error("grading is not diagonalizable over Q with integer spectrum")]
    NotDiagonalizable,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Commutative associative unital algebra with counit `λ`.
#[derive(Clone, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    dim: usize,
    mult: Vec<Vector>,
    unit: Vector,
    counit: Vector,
}

impl std::fmt::Debug for FrobeniusAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FrobeniusAlgebra(dim {})", self.dim)
    }
}

impl FrobeniusAlgebra {
    /// Checks shape, commutativity, associativity and the unit law. The form
    /// may still be degenerate; see [`verify_frobenius`].
    pub fn new(dim: usize, mult: Vec<Vector>, unit: Vector, counit: Vector) -> Result<Self, FrobError> {
        let a = Self::from_parts_unchecked(dim, mult, unit, counit)?;
        a.check_laws()?;
        Ok(a)
    }

    pub fn from_parts_unchecked(
        dim: usize,
        mult: Vec<Vector>,
        unit: Vector,
        counit: Vector,
    ) -> Result<Self, FrobError> {
        if mult.len() != dim * dim || mult.iter().any(|v| v.len() != dim) {
            return Err(FrobError::BadTable(format!("expected {dim}x{dim} products of length {dim}")));
        }
        if unit.len() != dim || counit.len() != dim {
            return Err(FrobError::BadTable("unit/counit length".into()));
        }
        Ok(FrobeniusAlgebra { dim, mult, unit, counit })
    }

    /// Builds from sparse nonzero products `e_i·e_j` (symmetrized automatically).
    pub fn from_products(
        dim: usize,
        products: &[(usize, usize, Vector)],
        unit: Vector,
        counit: Vector,
    ) -> Result<Self, FrobError> {
        let mut mult = vec![zero_vector(dim); dim * dim];
        for (i, j, v) in products {
            if *i >= dim || *j >= dim {
                return Err(FrobError::BadTable(format!("index ({i}, {j}) out of range")));
            }
            mult[i * dim + j] = v.clone();
            mult[j * dim + i] = v.clone();
        }
        Self::new(dim, mult, unit, counit)
    }

    /// `Q[x]/(x^(k+1))` on the basis `1, x, ..., x^k` with `λ(x^k) = 1`.
    pub fn truncated_polynomial(k: usize) -> Self {
        let n = k + 1;
        let mut mult = vec![zero_vector(n); n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mult[i * n + j] = unit_vector(n, i + j);
                }
            }
        }
        Self::new(n, mult, unit_vector(n, 0), unit_vector(n, k)).expect("polynomial quotient")
    }

    /// `Q[x]/(f)` for monic `f = x^n + c_{n−1} x^{n−1} + ... + c_0` given as
    /// `[c_0, ..., c_{n−1}]`, on the basis `1, x, ..., x^{n−1}` with `λ(x^{n−1}) = 1`.
    pub fn polynomial_quotient(lower: &[Scalar]) -> Self {
        let n = lower.len();
        assert!(n > 0, "degree must be positive");
        // powers[k] = x^k reduced, k < 2n − 1
        let mut powers: Vec<Vector> = (0..n).map(|k| unit_vector(n, k)).collect();
        for k in n..2 * n - 1 {
            let prev = &powers[k - 1];
            let mut next = zero_vector(n);
            for i in 1..n {
                next[i] = prev[i - 1].clone();
            }
            let top = prev[n - 1].clone();
            for i in 0..n {
                next[i] -= &top * &lower[i];
            }
            powers.push(next);
        }
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(powers[i + j].clone());
            }
        }
        Self::new(n, mult, unit_vector(n, 0), unit_vector(n, n - 1)).expect("polynomial quotient")
    }

    /// Direct product; basis of `self` first.
    pub fn direct_product(&self, other: &FrobeniusAlgebra) -> FrobeniusAlgebra {
        let (n, m) = (self.dim, other.dim);
        let dim = n + m;
        let mut mult = vec![zero_vector(dim); dim * dim];
        for i in 0..n {
            for j in 0..n {
                mult[i * dim + j][..n].clone_from_slice(self.product_basis(i, j));
            }
        }
        for i in 0..m {
            for j in 0..m {
                mult[(n + i) * dim + n + j][n..].clone_from_slice(other.product_basis(i, j));
            }
        }
        let cat = |a: &Vector, b: &Vector| a.iter().chain(b).cloned().collect::<Vector>();
        FrobeniusAlgebra {
            dim,
            mult,
            unit: cat(&self.unit, &other.unit),
            counit: cat(&self.counit, &other.counit),
        }
    }

    /// Tensor product; basis `e_i ⊗ f_j` at index `i * other.dim + j`.
    pub fn tensor(&self, other: &FrobeniusAlgebra) -> FrobeniusAlgebra {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut mult = vec![zero_vector(dim); dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let (i1, j1) = (a / m, a % m);
                let (i2, j2) = (b / m, b % m);
                let p1 = self.product_basis(i1, i2);
                let p2 = other.product_basis(j1, j2);
                let mut v = zero_vector(dim);
                for (k, x) in p1.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (l, y) in p2.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        v[k * m + l] += x * y;
                    }
                }
                mult[a * dim + b] = v;
            }
        }
        let kron = |u: &Vector, w: &Vector| -> Vector {
            u.iter().flat_map(|x| w.iter().map(move |y| x * y)).collect()
        };
        FrobeniusAlgebra {
            dim,
            mult,
            unit: kron(&self.unit, &other.unit),
            counit: kron(&self.counit, &other.counit),
        }
    }

    /// Same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<FrobeniusAlgebra, FrobError> {
        let inv = p.inverse()?;
        let cols: Vec<Vector> = (0..self.dim).map(|c| p.column(c)).collect();
        let mut mult = Vec::with_capacity(self.dim * self.dim);
        for a in &cols {
            for b in &cols {
                mult.push(inv.mul_vec(&self.mul(a, b))?);
            }
        }
        let unit = inv.mul_vec(&self.unit)?;
        let counit = cols.iter().map(|c| dot(&self.counit, c)).collect();
        Ok(FrobeniusAlgebra { dim: self.dim, mult, unit, counit })
    }

    pub fn with_counit(&self, counit: Vector) -> Result<FrobeniusAlgebra, FrobError> {
        if counit.len() != self.dim {
            return Err(FrobError::BadTable("counit length".into()));
        }
        Ok(FrobeniusAlgebra { counit, ..self.clone() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i * self.dim + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                axpy(&mut out, &(x * y), self.product_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `x -> a·x`.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &unit_vector(self.dim, j))).collect();
        Matrix::from_columns(&cols, self.dim).expect("square")
    }

    /// `(a, b) = λ(a·b)`.
    pub fn form(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        dot(&self.counit, &self.mul(a, b))
    }

    pub fn gram(&self) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |i, j| dot(&self.counit, self.product_basis(i, j)))
    }

    pub fn power(&self, a: &[Scalar], k: usize) -> Vector {
        let mut r = self.unit.clone();
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn check_laws(&self) -> Result<(), FrobError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..i {
                if self.product_basis(i, j) != self.product_basis(j, i) {
                    return Err(FrobError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_basis(i, j);
                for k in 0..n {
                    let lhs = self.mul(ij, &unit_vector(n, k));
                    let rhs = self.mul(&unit_vector(n, i), self.product_basis(j, k));
                    if lhs != rhs {
                        return Err(FrobError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            if self.mul(&self.unit, &unit_vector(n, i)) != unit_vector(n, i) {
                return Err(FrobError::BadUnit);
            }
        }
        Ok(())
    }

    /// Invariance `λ((a·b)·c) = λ(b·(a·c))` on basis triples.
    pub fn form_is_invariant(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let ea = unit_vector(n, a);
                    let ec = unit_vector(n, c);
                    let lhs = self.form(self.product_basis(a, b), &ec);
                    let rhs = self.form(&unit_vector(n, b), &self.mul(&ea, &ec));
                    lhs == rhs
                })
            })
        })
    }
}

/// Commutativity, associativity, unit law and nondegeneracy of `λ(a·b)`.
pub fn verify_frobenius(a: &FrobeniusAlgebra) -> bool {
    a.check_laws().is_ok() && !a.gram().determinant().map(|d| d.is_zero()).unwrap_or(true)
}

/// Kernel of the trace form `(x, y) -> tr(L_{x·y})`.
pub fn jacobson_radical(a: &FrobeniusAlgebra) -> Subspace {
    let n = a.dim();
    let mats: Vec<Matrix> = (0..n).map(|i| a.mult_matrix(&unit_vector(n, i))).collect();
    let tf = Matrix::from_fn(n, n, |i, j| mats[i].mul(&mats[j]).expect("square").trace());
    tf.kernel()
}

/// Local in the geometric sense: the semisimple quotient `A/J` is one-dimensional,
/// so `A ⊗ C` has no idempotents besides 0 and 1.
pub fn is_local(a: &FrobeniusAlgebra) -> bool {
    a.dim() > 0 && jacobson_radical(a).codim() == 1
}

/// `Ann(J)`, checked against `J^⊥` and required to be a line.
pub fn minimal_ideal(a: &FrobeniusAlgebra) -> Result<Subspace, FrobError> {
    if !verify_frobenius(a) {
        return Err(FrobError::DegenerateForm);
    }
    if !is_local(a) {
        return Err(FrobError::NotLocal);
    }
    let n = a.dim();
    let j = jacobson_radical(a);
    let ann = if j.is_zero() {
        Subspace::full(n)
    } else {
        let rows: Vec<Vector> =
            j.basis_vectors().iter().flat_map(|x| a.mult_matrix(x).row_vectors()).collect();
        Matrix::from_rows(rows, n)?.kernel()
    };
    let perp = j.orthogonal_complement(&a.gram())?;
    if ann != perp {
        return Err(FrobError::MinimalIdealMismatch { annihilator: ann, orthogonal: perp });
    }
    if ann.dim() != 1 {
        return Err(FrobError::MinimalIdealNotLine(ann.dim()));
    }
    Ok(ann)
}

/// A linear operator on the algebra intended to be a diagonalizable derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradingOperator {
    pub matrix: Matrix,
}

impl GradingOperator {
    pub fn new(matrix: Matrix) -> Self {
        GradingOperator { matrix }
    }

    /// Diagonal operator with the given integer degrees.
    pub fn diagonal(degrees: &[i64]) -> Self {
        let n = degrees.len();
        GradingOperator {
            matrix: Matrix::from_fn(n, n, |r, c| if r == c { q(degrees[r]) } else { Scalar::zero() }),
        }
    }

    /// First basis pair where `d(xy) ≠ d(x)y + x d(y)`.
    pub fn derivation_violation(&self, a: &FrobeniusAlgebra) -> Option<(usize, usize)> {
        let n = a.dim();
        for i in 0..n {
            for j in 0..=i {
                let lhs = self.matrix.mul_vec(a.product_basis(i, j)).ok()?;
                let di = self.matrix.column(i);
                let dj = self.matrix.column(j);
                let mut rhs = a.mul(&di, &unit_vector(n, j));
                axpy(&mut rhs, &Scalar::one(), &a.mul(&unit_vector(n, i), &dj));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Integer eigenvalues with eigenspaces, ascending.
    pub fn integer_spectrum(&self) -> Result<Vec<(i64, Subspace)>, FrobError> {
        let m = &self.matrix;
        if !m.is_square() {
            return Err(LinAlgError::NotSquare { rows: m.rows(), cols: m.cols() }.into());
        }
        let n = m.rows();
        let bound = row_sum_bound(m);
        let mut spaces = Vec::new();
        let mut total = 0;
        for lambda in -bound..=bound {
            let k = shifted(m, &q(lambda)).kernel();
            if !k.is_zero() {
                total += k.dim();
                spaces.push((lambda, k));
            }
        }
        if total == n {
            return Ok(spaces);
        }
        // look for rational non-integer eigenvalues k/D, D the common denominator
        let den = m_denominator(m);
        let big = bound * den.to_i64().unwrap_or(i64::MAX / 4);
        let den_i = den.to_i64().unwrap_or(1);
        for k in -big..=big {
            if k.rem_euclid(den_i) == 0 {
                continue;
            }
            let lam = Scalar::new(BigInt::from(k), den.clone());
            if !shifted(m, &lam).kernel().is_zero() {
                return Err(FrobError::NonIntegerEigenvalue(format_scalar(&lam)));
            }
        }
        Err(FrobError::NotDiagonalizable)
    }
}

fn shifted(m: &Matrix, lambda: &Scalar) -> Matrix {
    Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        if r == c {
            m.get(r, c) - lambda
        } else {
            m.get(r, c).clone()
        }
    })
}

/// Integer ceiling of the max absolute row sum, which bounds the spectral radius.
fn row_sum_bound(m: &Matrix) -> i64 {
    let mut best = Scalar::zero();
    for r in 0..m.rows() {
        let s = m.row(r).iter().fold(Scalar::zero(), |acc, x| acc + x.abs());
        if s > best {
            best = s;
        }
    }
    best.ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4)
}

fn m_denominator(m: &Matrix) -> BigInt {
    let mut d = BigInt::one();
    for r in 0..m.rows() {
        for x in m.row(r) {
            d = d.lcm(x.denom());
        }
    }
    d
}

/// Verdicts of the de Rham structure checks, one flag per clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeRhamReport {
    /// `(eigenvalue, multiplicity)`, ascending.
    pub eigenvalues: Vec<(i64, usize)>,
    pub nu: i64,
    pub top_space: Subspace,
    /// (i) every eigenvalue is a nonnegative integer.
    pub nonnegative_integers: bool,
    /// (ii) the 0-eigenspace is spanned by the unit.
    pub degree_zero_is_unit: bool,
    /// (iii) the top eigenspace is the minimal ideal and is a line.
    pub top_is_minimal_ideal: bool,
    /// (iv) `A^λ·A^μ ⊆ A^(λ+μ)`.
    pub multiplicative: bool,
    /// (v) `(A^λ, A^μ) = 0` unless `λ + μ = ν`.
    pub orthogonality_ok: bool,
    /// (vi) per eigenvalue λ, the pairing `A^λ × A^(ν-λ)` is perfect.
    pub pairing_ok_per_level: Vec<bool>,
    pub perfect_pairing: bool,
}

impl DeRhamReport {
    pub fn all_pass(&self) -> bool {
        self.nonnegative_integers
            && self.degree_zero_is_unit
            && self.top_is_minimal_ideal
            && self.multiplicative
            && self.orthogonality_ok
            && self.perfect_pairing
    }

    /// `dim A^λ` for `λ = 0..=ν` (zero where absent).
    pub fn poincare_coefficients(&self) -> Vec<usize> {
        if self.nu < 0 {
            return Vec::new();
        }
        (0..=self.nu)
            .map(|l| self.eigenvalues.iter().find(|(e, _)| *e == l).map_or(0, |(_, m)| *m))
            .collect()
    }
}

pub fn de_rham_check(a: &FrobeniusAlgebra, d: &GradingOperator) -> Result<DeRhamReport, FrobError> {
    if !verify_frobenius(a) {
        return Err(FrobError::DegenerateForm);
    }
    if !is_local(a) {
        return Err(FrobError::NotLocal);
    }
    if d.matrix.rows() != a.dim() || !d.matrix.is_square() {
        return Err(LinAlgError::DimensionMismatch { expected: a.dim(), found: d.matrix.rows() }.into());
    }
    if let Some((i, j)) = d.derivation_violation(a) {
        return Err(FrobError::NotDerivation(i, j));
    }
    let spectrum = d.integer_spectrum()?;
    let n = a.dim();
    let gram = a.gram();
    let nu = spectrum.last().map(|(l, _)| *l).expect("nonempty algebra");
    let space_of = |l: i64| spectrum.iter().find(|(e, _)| *e == l).map(|(_, s)| s);

    let nonnegative_integers = spectrum.iter().all(|(l, _)| *l >= 0);
    let unit_line = Subspace::span(n, &[a.unit().clone()])?;
    let degree_zero_is_unit = space_of(0) == Some(&unit_line);
    let top_space = spectrum.last().expect("nonempty").1.clone();
    let top_is_minimal_ideal =
        top_space.dim() == 1 && minimal_ideal(a).map(|t| t == top_space).unwrap_or(false);

    let mut multiplicative = true;
    let mut orthogonality_ok = true;
    for (l1, s1) in &spectrum {
        for (l2, s2) in &spectrum {
            for x in s1.basis_vectors() {
                for y in s2.basis_vectors() {
                    let prod = a.mul(&x, &y);
                    let in_target = match space_of(l1 + l2) {
                        Some(t) => t.contains(&prod)?,
                        None => is_zero_vector(&prod),
                    };
                    multiplicative &= in_target;
                    if l1 + l2 != nu && !gram.bilinear(&x, &y)?.is_zero() {
                        orthogonality_ok = false;
                    }
                }
            }
        }
    }

    let mut pairing_ok_per_level = Vec::with_capacity(spectrum.len());
    for (l, s) in &spectrum {
        let ok = match space_of(nu - l) {
            Some(partner) if partner.dim() == s.dim() => {
                let xs = s.basis_vectors();
                let ys = partner.basis_vectors();
                let block = Matrix::from_fn(xs.len(), ys.len(), |r, c| {
                    gram.bilinear(&xs[r], &ys[c]).expect("dims")
                });
                !block.determinant()?.is_zero()
            }
            _ => false,
        };
        pairing_ok_per_level.push(ok);
    }
    let perfect_pairing = pairing_ok_per_level.iter().all(|&b| b);

    Ok(DeRhamReport {
        eigenvalues: spectrum.iter().map(|(l, s)| (*l, s.dim())).collect(),
        nu,
        top_space,
        nonnegative_integers,
        degree_zero_is_unit,
        top_is_minimal_ideal,
        multiplicative,
        orthogonality_ok,
        pairing_ok_per_level,
        perfect_pairing,
    })
}

#[derive(Serialize)]
struct FrobJsonOut {
    dim: usize,
    unit: Vec<String>,
    counit: Vec<String>,
    mult: Vec<(usize, usize, Vec<String>)>,
}

#[derive(Deserialize)]
struct FrobJsonIn {
    dim: usize,
    unit: Vec<Literal>,
    counit: Vec<Literal>,
    #[serde(default)]
    mult: Vec<(usize, usize, Vec<Literal>)>,
}

impl Serialize for FrobeniusAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs = |v: &Vector| v.iter().map(format_scalar).collect::<Vec<_>>();
        let mut mult = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.product_basis(i, j);
                if !is_zero_vector(v) {
                    mult.push((i, j, strs(v)));
                }
            }
        }
        FrobJsonOut { dim: self.dim, unit: strs(&self.unit), counit: strs(&self.counit), mult }
            .serialize(s)
    }
}

/// Parses the JSON form, checking shape but not the algebra laws.
pub fn parse_table(json: &str) -> Result<FrobeniusAlgebra, FrobError> {
    let raw: FrobJsonIn = serde_json::from_str(json).map_err(|e| FrobError::BadTable(e.to_string()))?;
    raw_to_table(raw)
}

fn raw_to_table(raw: FrobJsonIn) -> Result<FrobeniusAlgebra, FrobError> {
    let conv = |v: &[Literal]| -> Result<Vector, FrobError> {
        Ok(v.iter().map(Literal::to_scalar).collect::<Result<_, _>>()?)
    };
    let mut mult = vec![zero_vector(raw.dim); raw.dim * raw.dim];
    for (i, j, v) in &raw.mult {
        if *i >= raw.dim || *j >= raw.dim {
            return Err(FrobError::BadTable(format!("index ({i}, {j}) out of range")));
        }
        let v = conv(v)?;
        if v.len() != raw.dim {
            return Err(FrobError::BadTable(format!("product ({i}, {j}) has wrong length")));
        }
        mult[i * raw.dim + j] = v;
    }
    FrobeniusAlgebra::from_parts_unchecked(raw.dim, mult, conv(&raw.unit)?, conv(&raw.counit)?)
}

impl<'de> Deserialize<'de> for FrobeniusAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FrobJsonIn::deserialize(d)?;
        let a = raw_to_table(raw).map_err(D::Error::custom)?;
        a.check_laws().map_err(D::Error::custom)?;
        Ok(a)
    }
}
