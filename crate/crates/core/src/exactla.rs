//! Exact rational linear algebra: scalars, dense matrices and subspaces.
//!
//! A [`Subspace`] always stores its basis in reduced row-echelon form with
//! no zero rows, so two subspaces of the same ambient space are equal
//! exactly when their stored bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational scalar. Always kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the larger subspace")]
    NotContained,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("ragged matrix rows")]
    Ragged,
    #[error("invalid rational literal {0:?}")]
    BadLiteral(String),
}

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p", "p/q" or "-p/q". Decimal points and exponents are rejected.
pub fn parse_scalar(s: &str) -> Result<Scalar, LinAlgError> {
    let t = s.trim();
    let bad = || LinAlgError::BadLiteral(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |x: &str| {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `a + c * b`, in place.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

/// Serde adapter for a single scalar as a "p/q" string (integers also accepted).
pub mod scalar_serde {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let lit = Literal::deserialize(d)?;
        lit.to_scalar().map_err(D::Error::custom)
    }
}

/// Serde adapter for a vector of scalars.
pub mod vector_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_scalar).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vector, D::Error> {
        let lits = Vec::<Literal>::deserialize(d)?;
        lits.iter()
            .map(|l| l.to_scalar().map_err(D::Error::custom))
            .collect()
    }
}

/// A rational literal as it may appear in input files: an integer or a string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Str(String),
}

impl Literal {
    pub fn to_scalar(&self) -> Result<Scalar, LinAlgError> {
        match self {
            Literal::Int(n) => Ok(q(*n)),
            Literal::Str(s) => parse_scalar(s),
        }
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed to describe the 0-row case.
    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Result<Self, LinAlgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::Ragged);
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self, LinAlgError> {
        for c in columns {
            if c.len() != rows {
                return Err(LinAlgError::DimensionMismatch { expected: rows, found: c.len() });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Bilinear form `x^T M y`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar, LinAlgError> {
        let my = self.mul_vec(y)?;
        if x.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: x.len() });
        }
        Ok(dot(x, &my))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).recip();
            for k in c..m.cols {
                let idx = lead * m.cols + k;
                m.data[idx] = &m.data[idx] * &inv;
            }
            let pivot_row: Vector = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let f = m.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    if !pivot_row[k].is_zero() {
                        let idx = r * m.cols + k;
                        m.data[idx] -= &f * &pivot_row[k];
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    /// Null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let n = self.cols;
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = zero_vector(n);
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        Subspace::span(n, &basis).expect("kernel vectors have ambient length")
    }

    pub fn determinant(&self) -> Result<Scalar, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for r in c + 1..n {
                let f = m.get(r, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m.get(c, k) * &f;
                    let idx = r * n + k;
                    m.data[idx] -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinAlgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |r, c| red.get(r, c + n).clone()))
    }

    /// Solves `M x = b`. Free variables are set to zero, which makes the
    /// returned particular solution canonical for the echelon form of `[M | b]`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Restriction of a square matrix to rows/columns in `idx`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(format_scalar).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Literal>>::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(Literal::to_scalar).collect::<Result<Vector, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Matrix::from_rows(parsed, cols).map_err(D::Error::custom)
    }
}

/// Free-standing reduced row-echelon form.
pub fn rref(m: &Matrix) -> Matrix {
    m.rref()
}

pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

/// A linear subspace of `Q^n` with canonical echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}, {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subspace", 3)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::zeros(0, n), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::identity(n), pivots: (0..n).collect() }
    }

    pub fn span(n: usize, vectors: &[Vector]) -> Result<Self, LinAlgError> {
        let m = Matrix::from_rows(vectors.to_vec(), n)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let k = pivots.len();
        let basis = Matrix::from_fn(k, m.cols(), |i, j| r.get(i, j).clone());
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, n: usize) -> Result<(), LinAlgError> {
        if self.ambient_dim != n {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient_dim, found: n });
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>, LinAlgError> {
        self.check_ambient(v.len())?;
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rem = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            axpy(&mut rem, &-c.clone(), self.basis.row(i));
        }
        Ok(if is_zero_vector(&rem) { Some(coords) } else { None })
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinAlgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        other.check_ambient(self.ambient_dim)?;
        for i in 0..self.dim() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other.ambient_dim)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Vectors orthogonal to every basis vector under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient_dim);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other.ambient_dim)?;
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Basis vectors of `big` completing a basis of `small`, i.e. a canonical
    /// basis of a complement of `small` inside `big`.
    pub fn quotient_basis(big: &Subspace, small: &Subspace) -> Result<Vec<Vector>, LinAlgError> {
        big.check_ambient(small.ambient_dim)?;
        if !small.is_subspace_of(big)? {
            return Err(LinAlgError::NotContained);
        }
        let mut current = small.clone();
        let mut out = Vec::new();
        for v in big.basis_vectors() {
            if !current.contains(&v)? {
                current = current.sum(&Subspace::span(big.ambient_dim, &[v.clone()])?)?;
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Canonical complement in the whole ambient space: standard unit vectors
    /// at the non-pivot columns.
    pub fn standard_complement(&self) -> Vec<Vector> {
        (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| unit_vector(self.ambient_dim, c))
            .collect()
    }

    /// `{v : form(v, s) = 0 for every s in self}`.
    pub fn orthogonal_complement(&self, form: &Matrix) -> Result<Subspace, LinAlgError> {
        if !form.is_square() {
            return Err(LinAlgError::NotSquare { rows: form.rows(), cols: form.cols() });
        }
        self.check_ambient(form.rows())?;
        if self.is_zero() {
            return Ok(Subspace::full(self.ambient_dim));
        }
        // rows: (form * s)^T, so that row . v = v^T form s
        let rows: Vec<Vector> =
            self.basis_vectors().iter().map(|s| form.mul_vec(s)).collect::<Result<_, _>>()?;
        Ok(Matrix::from_rows(rows, self.ambient_dim)?.kernel())
    }

    /// Image of the subspace under `x -> M x`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace, LinAlgError> {
        let imgs: Vec<Vector> =
            self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect::<Result<_, _>>()?;
        Subspace::span(m.rows(), &imgs)
    }

    /// `{x : M x in target}`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Result<Subspace, LinAlgError> {
        target.check_ambient(m.rows())?;
        let ann = target.annihilator();
        if ann.is_zero() {
            return Ok(Subspace::full(m.cols()));
        }
        ann.basis().mul(m).map(|c| c.kernel())
    }
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::row_space(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&Matrix::identity(3)), Matrix::identity(3));
        assert_eq!(rref(&Matrix::zeros(2, 2)), Matrix::zeros(2, 2));
        assert_eq!(rref(&m(&[vec![2, 4], vec![1, 2]])), m(&[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(3)).is_zero());
        assert!(kernel(&Matrix::zeros(4, 4)).is_full());
        let k = kernel(&m(&[vec![1, 1]]));
        assert_eq!(k, Subspace::span(2, &[vec![q(1), q(-1)]]).unwrap());
    }

    #[test]
    fn subspace_examples() {
        let e1 = Subspace::span(2, &[unit_vector(2, 0)]).unwrap();
        let e2 = Subspace::span(2, &[unit_vector(2, 1)]).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.orthogonal_complement(&Matrix::identity(2)).unwrap(), e2);
        assert!(e1.sum(&e2).unwrap().is_full());
    }

    #[test]
    fn quotient_basis_requires_containment() {
        let e1 = Subspace::span(2, &[unit_vector(2, 0)]).unwrap();
        let e2 = Subspace::span(2, &[unit_vector(2, 1)]).unwrap();
        assert_eq!(Subspace::quotient_basis(&e1, &e2), Err(LinAlgError::NotContained));
        let qb = Subspace::quotient_basis(&Subspace::full(2), &e1).unwrap();
        assert_eq!(qb, vec![unit_vector(2, 1)]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(LinAlgError::DimensionMismatch { .. })));
        assert!(matches!(a.contains(&[q(1)]), Err(LinAlgError::DimensionMismatch { .. })));
    }

    #[test]
    fn scalar_literals() {
        assert_eq!(parse_scalar("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(parse_scalar("7").unwrap(), q(7));
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1e3").is_err());
        assert_eq!(format_scalar(&qf(4, -6)), "-2/3");
        let mat = m(&[vec![1, 2], vec![3, 4]]).scaled(&qf(1, 2));
        let json = serde_json::to_string(&mat).unwrap();
        assert_eq!(json, r#"[["1/2","1"],["3/2","2"]]"#);
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, mat);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(a.determinant().unwrap(), q(1));
        assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), Matrix::identity(2));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).inverse(), Err(LinAlgError::Singular));
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
            Matrix::from_fn(rows, cols, |r, c| q(v[r * cols + c]))
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(a in small_matrix(4, 5)) {
            let r = a.rref();
            prop_assert_eq!(r.rref(), r);
        }

        #[test]
        fn rank_nullity(a in small_matrix(3, 5)) {
            prop_assert_eq!(a.rank() + a.kernel().dim(), 5);
            for v in a.kernel().basis_vectors() {
                prop_assert!(is_zero_vector(&a.mul_vec(&v).unwrap()));
            }
        }

        #[test]
        fn dimension_law(a in small_matrix(3, 5), b in small_matrix(2, 5)) {
            let sa = Subspace::row_space(&a);
            let sb = Subspace::row_space(&b);
            let sum = sa.sum(&sb).unwrap();
            let cap = sa.intersect(&sb).unwrap();
            // independent rank route: dim(a+b) from the stacked matrix
            let stacked = Matrix::from_rows(
                a.row_vectors().into_iter().chain(b.row_vectors()).collect(), 5).unwrap();
            prop_assert_eq!(sum.dim(), stacked.rank());
            prop_assert_eq!(sa.dim() + sb.dim(), sum.dim() + cap.dim());
            prop_assert!(cap.is_subspace_of(&sa).unwrap() && cap.is_subspace_of(&sb).unwrap());
        }

        #[test]
        fn equality_is_canonical(a in small_matrix(3, 4), mix in small_matrix(3, 3)) {
            // row operations by an invertible mixer leave the subspace unchanged
            let mixer = mix.add(&Matrix::identity(3).scaled(&q(10))).unwrap();
            let b = mixer.mul(&a).unwrap();
            let sa = Subspace::row_space(&a);
            let sb = Subspace::row_space(&b);
            prop_assert_eq!(sa.is_subspace_of(&sb).unwrap() && sb.is_subspace_of(&sa).unwrap(), sa == sb);
            prop_assert_eq!(sa, sb);
        }

        #[test]
        fn double_complement(a in small_matrix(2, 4), g in small_matrix(4, 4)) {
            let form = g.add(&g.transpose()).unwrap().add(&Matrix::identity(4).scaled(&q(30))).unwrap();
            prop_assume!(!form.determinant().unwrap().is_zero());
            let s = Subspace::row_space(&a);
            let back = s.orthogonal_complement(&form).unwrap().orthogonal_complement(&form).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn solve_returns_solution(a in small_matrix(3, 4), x in proptest::collection::vec(-3i64..=3, 4)) {
            let x: Vector = x.into_iter().map(q).collect();
            let b = a.mul_vec(&x).unwrap();
            let sol = a.solve(&b).unwrap().expect("consistent system");
            prop_assert_eq!(a.mul_vec(&sol).unwrap(), b);
        }
    }
}
