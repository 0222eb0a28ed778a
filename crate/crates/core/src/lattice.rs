//! Even positive-definite lattices, shift vectors, the set
//! `A = {α : (α, α) = (2h, α)}` and the weight-zero algebra of a shifted
//! lattice theory.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{format_scalar, q, Literal, LinAlgError, Matrix, Scalar, Vector};
use crate::frobalg::{FrobError, FrobeniusAlgebra, GradingOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is not square/symmetric")]
    NotSymmetric,
    #[error("diagonal entry {0} of the Gram matrix is odd")]
    OddDiagonal(usize),
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("shift vector has length {found}, lattice rank is {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("shift vector is not in the dual lattice")]
    NotInDual,
    #[error("twice the shift vector is not in the lattice")]
    TwiceNotInLattice,
    #[error("shift is not admissible: a shorter vector exists in L - h")]
    NotAdmissible,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Frob(#[from] FrobError),
}

/// Lattice `Z^d` with an even, symmetric, positive-definite integer Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenLattice {
    gram: Vec<Vec<i64>>,
    #[serde(skip)]
    gram_q: Matrix,
}

impl EvenLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let d = gram.len();
        if gram.iter().any(|r| r.len() != d) {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..d {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
            if gram[i][i] % 2 != 0 {
                return Err(LatticeError::OddDiagonal(i));
            }
        }
        let gram_q = Matrix::from_i64(&gram);
        for k in 1..=d {
            let idx: Vec<usize> = (0..k).collect();
            if !gram_q.submatrix(&idx, &idx).determinant()?.is_positive() {
                return Err(LatticeError::NotPositiveDefinite);
            }
        }
        Ok(EvenLattice { gram, gram_q })
    }

    /// Root lattice `A1`, Gram `[[2]]`.
    pub fn a1() -> Self {
        Self::rank_one(1)
    }

    /// Rank-one lattice `<2k>` with Gram `[[2k]]`.
    pub fn rank_one(k: i64) -> Self {
        Self::new(vec![vec![2 * k]]).expect("positive even")
    }

    pub fn orthogonal_sum(&self, other: &EvenLattice) -> EvenLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            g[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            g[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        EvenLattice::new(g).expect("sum of even lattices")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram_q
    }

    pub fn gram_entries(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn inner(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        self.gram_q.bilinear(a, b).expect("rank")
    }

    pub fn inner_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                s += x * self.gram[i][j] * y;
            }
        }
        s
    }

    /// `(γ, β)` for rational `γ` and integer `β`.
    pub fn inner_mixed(&self, gamma: &[Scalar], beta: &[i64]) -> Scalar {
        self.inner(gamma, &to_rational(beta))
    }
}

impl<'de> Deserialize<'de> for EvenLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            gram: Vec<Vec<i64>>,
        }
        let raw = Raw::deserialize(d)?;
        EvenLattice::new(raw.gram).map_err(serde::de::Error::custom)
    }
}

pub fn to_rational(v: &[i64]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

/// Shift vector `h` in rational lattice coordinates with `h ∈ L°` and `2h ∈ L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftDatum {
    lattice: EvenLattice,
    h: Vector,
}

impl ShiftDatum {
    pub fn new(lattice: EvenLattice, h: Vector) -> Result<Self, LatticeError> {
        if h.len() != lattice.rank() {
            return Err(LatticeError::RankMismatch { expected: lattice.rank(), found: h.len() });
        }
        if h.iter().any(|x| !(x * q(2)).is_integer()) {
            return Err(LatticeError::TwiceNotInLattice);
        }
        if lattice.gram().mul_vec(&h)?.iter().any(|x| !x.is_integer()) {
            return Err(LatticeError::NotInDual);
        }
        Ok(ShiftDatum { lattice, h })
    }

    pub fn unshifted(lattice: EvenLattice) -> Self {
        let h = vec![Scalar::zero(); lattice.rank()];
        ShiftDatum { lattice, h }
    }

    /// `h = β/2` on `<2k>`; `k = 1` gives `A1` with `h = α/2`.
    pub fn half_root(k: i64) -> Self {
        Self::new(EvenLattice::rank_one(k), vec![Scalar::new(BigInt::one(), BigInt::from(2))])
            .expect("half of the generator")
    }

    /// `A1 ⊕ A1` with `h = (α1 + α2)/2`.
    pub fn a1_squared_half() -> Self {
        let half = Scalar::new(BigInt::one(), BigInt::from(2));
        Self::new(EvenLattice::a1().orthogonal_sum(&EvenLattice::a1()), vec![half.clone(), half])
            .expect("half of the sum")
    }

    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn h(&self) -> &Vector {
        &self.h
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// `(h, h)`.
    pub fn h_norm(&self) -> Scalar {
        self.lattice.inner(&self.h, &self.h)
    }

    /// `2h` as an integer vector.
    pub fn twice_h(&self) -> Vec<i64> {
        self.h.iter().map(|x| (x * q(2)).to_integer().to_i64().expect("small")).collect()
    }

    /// `(h, β)`, an integer since `h ∈ L°`.
    pub fn charge(&self, beta: &[i64]) -> i64 {
        self.lattice.inner_mixed(&self.h, beta).to_integer().to_i64().expect("small")
    }

    /// Shifted weight of `e^β`: `½(β, β) − (h, β)`.
    pub fn point_weight(&self, beta: &[i64]) -> i64 {
        self.lattice.inner_int(beta, beta) / 2 - self.charge(beta)
    }

    pub fn is_unshifted(&self) -> bool {
        self.h.iter().all(|x| x.is_zero())
    }
}

/// Lattice input as written in TOML or JSON files: integer Gram entries and
/// rational shift coordinates (`"p/q"` strings or integers).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShiftInput {
    pub gram: Vec<Vec<i64>>,
    #[serde(default)]
    pub h: Option<Vec<Literal>>,
}

impl ShiftInput {
    pub fn into_datum(self) -> Result<ShiftDatum, LatticeError> {
        let lattice = EvenLattice::new(self.gram)?;
        match self.h {
            None => Ok(ShiftDatum::unshifted(lattice)),
            Some(h) => {
                let h = h.iter().map(Literal::to_scalar).collect::<Result<Vector, _>>()?;
                ShiftDatum::new(lattice, h)
            }
        }
    }
}

impl From<&ShiftDatum> for ShiftInput {
    fn from(s: &ShiftDatum) -> Self {
        ShiftInput {
            gram: s.lattice.gram.clone(),
            h: Some(s.h.iter().map(|x| Literal::Str(format_scalar(x))).collect()),
        }
    }
}

/// `G = L D Lᵀ` with `L` unit lower triangular; returns `(L, D)`.
fn ldl(g: &Matrix) -> (Matrix, Vector) {
    let n = g.rows();
    let mut l = Matrix::identity(n);
    let mut d = vec![Scalar::zero(); n];
    for i in 0..n {
        let mut di = g.get(i, i).clone();
        for k in 0..i {
            di -= l.get(i, k) * l.get(i, k) * &d[k];
        }
        d[i] = di;
        for j in i + 1..n {
            let mut v = g.get(j, i).clone();
            for k in 0..i {
                v -= l.get(j, k) * l.get(i, k) * &d[k];
            }
            l.set(j, i, v / &d[i]);
        }
    }
    (l, d)
}

/// Integer `r` with `r ≥ sqrt(x)` for `x ≥ 0`.
fn sqrt_upper(x: &Scalar) -> BigInt {
    let c = x.ceil().to_integer();
    if c.is_negative() {
        return BigInt::zero();
    }
    c.sqrt() + 1
}

/// All `α ∈ Z^d` with `(α − c, α − c) ≤ r²`, lexicographically sorted.
pub fn short_vectors(l: &EvenLattice, center: &[Scalar], radius_sq: &Scalar) -> Vec<Vec<i64>> {
    let d = l.rank();
    let mut out = Vec::new();
    if radius_sq.is_negative() {
        return out;
    }
    if d == 0 {
        out.push(Vec::new());
        return out;
    }
    let (lo, diag) = ldl(l.gram());
    let mut x = vec![0i64; d];
    enumerate_level(d - 1, &lo, &diag, center, radius_sq, &mut x, &mut out);
    out.sort();
    out
}

/// `Q(y) = Σ_i D_i (y_i + Σ_{j>i} L_ji y_j)²` with `y = x − c`; fixes
/// coordinates from the last one down.
fn enumerate_level(
    i: usize,
    lo: &Matrix,
    diag: &[Scalar],
    center: &[Scalar],
    remaining: &Scalar,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let d = x.len();
    let mut s = center[i].clone();
    for j in i + 1..d {
        s -= lo.get(j, i) * (q(x[j]) - &center[j]);
    }
    let rr = remaining / &diag[i];
    let r = sqrt_upper(&rr);
    let from = (s.floor().to_integer() - &r).to_i64().expect("small");
    let to = (s.ceil().to_integer() + &r).to_i64().expect("small");
    for xi in from..=to {
        let t = q(xi) - &s;
        let used = &diag[i] * &t * &t;
        if &used > remaining {
            continue;
        }
        x[i] = xi;
        if i == 0 {
            out.push(x.clone());
        } else {
            enumerate_level(i - 1, lo, diag, center, &(remaining - used), x, out);
        }
    }
    x[i] = 0;
}

/// No `β ∈ L − h` is shorter than `−h`.
pub fn shift_admissible(s: &ShiftDatum) -> bool {
    let hh = s.h_norm();
    short_vectors(s.lattice(), s.h(), &hh).iter().all(|a| {
        let diff: Vector = a.iter().zip(s.h()).map(|(x, y)| q(*x) - y).collect();
        s.lattice().inner(&diff, &diff) >= hh
    })
}

/// Lattice vectors on the sphere `(α − h, α − h) = (h, h)`.
pub fn enumerate_a(s: &ShiftDatum) -> Vec<Vec<i64>> {
    let hh = s.h_norm();
    short_vectors(s.lattice(), s.h(), &hh)
        .into_iter()
        .filter(|a| {
            let diff: Vector = a.iter().zip(s.h()).map(|(x, y)| q(*x) - y).collect();
            s.lattice().inner(&diff, &diff) == hh
        })
        .collect()
}

/// Bilinear sign cocycle `ε(e_i, e_j) = (−1)^{(e_i, e_j)}` for `i > j`, 1 otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    gram: Vec<Vec<i64>>,
}

impl Cocycle {
    pub fn sign(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0i64;
        for i in 0..a.len() {
            for j in 0..i {
                e += a[i] * b[j] * self.gram[i][j];
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Signs on basis pairs.
    pub fn table(&self) -> Vec<Vec<i64>> {
        let d = self.gram.len();
        let e = |i: usize| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        };
        (0..d).map(|i| (0..d).map(|j| self.sign(&e(i), &e(j))).collect()).collect()
    }
}

pub fn build_cocycle(l: &EvenLattice) -> Cocycle {
    Cocycle { gram: l.gram.clone() }
}

/// The weight-zero algebra on `{e^α : α ∈ A}`.
#[derive(Debug, Clone)]
pub struct LatticeV0 {
    /// The set `A`, lexicographically sorted; basis index = position.
    pub points: Vec<Vec<i64>>,
    pub algebra: FrobeniusAlgebra,
    pub grading: GradingOperator,
}

impl LatticeV0 {
    pub fn index_of(&self, alpha: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(alpha)).ok()
    }

    pub fn unit_index(&self) -> usize {
        self.index_of(&vec![0; self.points[0].len()]).expect("0 in A")
    }
}

/// `e^α · e^β = ε(α, β) e^{α+β}` when `α + β ∈ A`, else 0; unit `e^0`,
/// counit dual to `e^{2h}`, grading `e^α ↦ (h, α) e^α`.
pub fn build_v0(s: &ShiftDatum, eps: &Cocycle) -> Result<LatticeV0, LatticeError> {
    if !shift_admissible(s) {
        return Err(LatticeError::NotAdmissible);
    }
    let points = enumerate_a(s);
    let n = points.len();
    let find = |a: &[i64]| points.binary_search_by(|p| p.as_slice().cmp(a)).ok();
    let mut mult = vec![vec![Scalar::zero(); n]; n * n];
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(k) = find(&sum) {
                mult[i * n + j][k] = q(eps.sign(a, b));
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    unit[find(&vec![0; s.rank()]).expect("0 in A")] = Scalar::one();
    let mut counit = vec![Scalar::zero(); n];
    counit[find(&s.twice_h()).expect("2h in A")] = Scalar::one();
    let algebra = FrobeniusAlgebra::new(n, mult, unit, counit)?;
    let degrees: Vec<i64> = points.iter().map(|a| s.charge(a)).collect();
    Ok(LatticeV0 { points, algebra, grading: GradingOperator::diagonal(&degrees) })
}

/// `(α, β)` for all pairs in `A`; used to check `(α, β) ≥ 0` and
/// `(α, β) = 0 ⇔ α + β ∈ A`.
pub fn a_pairing_consistent(s: &ShiftDatum, points: &[Vec<i64>]) -> bool {
    points.iter().all(|a| {
        points.iter().all(|b| {
            let ip = s.lattice().inner_int(a, b);
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            ip >= 0 && ((ip == 0) == points.contains(&sum))
        })
    })
}
