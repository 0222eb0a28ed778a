//! Finite-dimensional left Leibniz algebras given by structure constants.
//!
//! The bracket satisfies `[a[bc]] = [[ab]c] + [b[ac]]`, i.e. every left
//! multiplication is a derivation. Lie algebras are the antisymmetric case.
//! Radicals of the Lie quotient are computed with trace forms, which is valid
//! because everything here lives in characteristic zero.

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactla::{
    axpy, format_scalar, is_zero_vector, unit_vector, zero_vector, LinAlgError, Literal, Matrix,
    Scalar, Subspace, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeibnizError {
    #[error("left Leibniz identity fails on basis triple {0:?}")]
    NotLeibniz([usize; 3]),
    #[error("bracket table malformed: {0}")]
    BadTable(String),
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("Levi lifting system inconsistent at stage {0}")]
    LeviLiftInconsistent(usize),
    #[error("solvable radical is not solvable (derived series stalls)")]
    RadicalNotSolvable,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Bracket table `[e_i, e_j] = sum_k c_ij^k e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    dim: usize,
    table: Vec<Vector>,
}

impl std::fmt::Debug for LeibnizAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LeibnizAlgebra(dim {})", self.dim)
    }
}

impl LeibnizAlgebra {
    /// Builds an algebra, rejecting tables that violate the left Leibniz identity.
    pub fn new(dim: usize, table: Vec<Vector>) -> Result<Self, LeibnizError> {
        let alg = Self::from_table_unchecked(dim, table)?;
        match alg.leibniz_violation() {
            Some(t) => Err(LeibnizError::NotLeibniz(t)),
            None => Ok(alg),
        }
    }

    /// Shape-checks the table but not the Leibniz identity.
    pub fn from_table_unchecked(dim: usize, table: Vec<Vector>) -> Result<Self, LeibnizError> {
        if table.len() != dim * dim {
            return Err(LeibnizError::BadTable(format!(
                "expected {} entries, found {}",
                dim * dim,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|v| v.len() != dim) {
            return Err(LeibnizError::BadTable(format!(
                "bracket vector of length {} in dimension {dim}",
                bad.len()
            )));
        }
        Ok(LeibnizAlgebra { dim, table })
    }

    /// Builds from a sparse list of nonzero brackets.
    pub fn from_brackets(
        dim: usize,
        brackets: &[(usize, usize, Vector)],
    ) -> Result<Self, LeibnizError> {
        let mut table = vec![zero_vector(dim); dim * dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim {
                return Err(LeibnizError::BadTable(format!("index ({i}, {j}) out of range")));
            }
            table[i * dim + j] = v.clone();
        }
        Self::new(dim, table)
    }

    pub fn abelian(dim: usize) -> Self {
        LeibnizAlgebra { dim, table: vec![zero_vector(dim); dim * dim] }
    }

    /// Chevalley basis `(e, f, h)`.
    pub fn sl2() -> Self {
        let v = |a: i64, b: i64, c: i64| vec![crate::exactla::q(a), crate::exactla::q(b), crate::exactla::q(c)];
        Self::from_brackets(
            3,
            &[
                (0, 1, v(0, 0, 1)),
                (1, 0, v(0, 0, -1)),
                (2, 0, v(2, 0, 0)),
                (0, 2, v(-2, 0, 0)),
                (2, 1, v(0, -2, 0)),
                (1, 2, v(0, 2, 0)),
            ],
        )
        .expect("sl2 table is Lie")
    }

    /// 2x2 matrices with basis `E11, E12, E21, E22`.
    pub fn gl2() -> Self {
        let idx = |r: usize, c: usize| 2 * r + c;
        let mut table = vec![zero_vector(4); 16];
        for (a, b) in (0..2).flat_map(|a| (0..2).map(move |b| (a, b))) {
            for (c, d) in (0..2).flat_map(|c| (0..2).map(move |d| (c, d))) {
                let mut v = zero_vector(4);
                if b == c {
                    v[idx(a, d)] += Scalar::one();
                }
                if d == a {
                    v[idx(c, b)] -= Scalar::one();
                }
                table[idx(a, b) * 4 + idx(c, d)] = v;
            }
        }
        Self::new(4, table).expect("gl2 table is Lie")
    }

    /// Block direct sum: basis of `self` first, then `other`.
    pub fn direct_sum(&self, other: &LeibnizAlgebra) -> LeibnizAlgebra {
        let n = self.dim + other.dim;
        let mut table = vec![zero_vector(n); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut v = zero_vector(n);
                v[..self.dim].clone_from_slice(self.bracket_basis(i, j));
                table[i * n + j] = v;
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                let mut v = zero_vector(n);
                v[self.dim..].clone_from_slice(other.bracket_basis(i, j));
                table[(i + self.dim) * n + (j + self.dim)] = v;
            }
        }
        LeibnizAlgebra { dim: n, table }
    }

    /// `self ⋉ V` for a Lie algebra `self` acting on the abelian ideal `V`
    /// through the matrices `rep[i] = ρ(e_i)`; basis of `self` first.
    pub fn semidirect(&self, rep: &[Matrix]) -> Result<LeibnizAlgebra, LeibnizError> {
        let s = self.dim;
        if rep.len() != s {
            return Err(LeibnizError::BadTable("one matrix per basis vector expected".into()));
        }
        let v = rep.first().map_or(0, Matrix::rows);
        let n = s + v;
        let mut table = vec![zero_vector(n); n * n];
        for i in 0..s {
            for j in 0..s {
                table[i * n + j][..s].clone_from_slice(self.bracket_basis(i, j));
            }
            for j in 0..v {
                let col = rep[i].column(j);
                for (k, c) in col.iter().enumerate() {
                    table[i * n + s + j][s + k] = c.clone();
                    table[(s + j) * n + i][s + k] = -c.clone();
                }
            }
        }
        LeibnizAlgebra::new(n, table)
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LeibnizAlgebra, LeibnizError> {
        let inv = p.inverse()?;
        let cols: Vec<Vector> = (0..self.dim).map(|c| p.column(c)).collect();
        let mut table = Vec::with_capacity(self.dim * self.dim);
        for a in &cols {
            for b in &cols {
                table.push(inv.mul_vec(&self.bracket(a, b))?);
            }
        }
        Ok(LeibnizAlgebra { dim: self.dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `y -> [x, y]`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> =
            (0..self.dim).map(|j| self.bracket(x, &unit_vector(self.dim, j))).collect();
        Matrix::from_columns(&cols, self.dim).expect("square")
    }

    /// Matrix of `y -> [y, x]`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> =
            (0..self.dim).map(|j| self.bracket(&unit_vector(self.dim, j), x)).collect();
        Matrix::from_columns(&cols, self.dim).expect("square")
    }

    /// First basis triple violating the left Leibniz identity, if any.
    pub fn leibniz_violation(&self) -> Option<[usize; 3]> {
        let n = self.dim;
        for a in 0..n {
            let ea = unit_vector(n, a);
            for b in 0..n {
                let eb = unit_vector(n, b);
                let ab = self.bracket_basis(a, b);
                for c in 0..n {
                    let ec = unit_vector(n, c);
                    let lhs = self.bracket(&ea, self.bracket_basis(b, c));
                    let mut rhs = self.bracket(ab, &ec);
                    let bac = self.bracket(&eb, self.bracket_basis(a, c));
                    axpy(&mut rhs, &Scalar::one(), &bac);
                    if lhs != rhs {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn verify_leibniz(&self) -> bool {
        self.leibniz_violation().is_none()
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let mut s = self.bracket_basis(i, j).clone();
                axpy(&mut s, &Scalar::one(), self.bracket_basis(j, i));
                is_zero_vector(&s)
            })
        })
    }

    /// Jacobi identity `[a[bc]] + [b[ca]] + [c[ab]] = 0` on basis triples.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut s = self.bracket(&unit_vector(n, a), self.bracket_basis(b, c));
                    axpy(&mut s, &Scalar::one(), &self.bracket(&unit_vector(n, b), self.bracket_basis(c, a)));
                    axpy(&mut s, &Scalar::one(), &self.bracket(&unit_vector(n, c), self.bracket_basis(a, b)));
                    if !is_zero_vector(&s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_lie(&self) -> bool {
        self.is_antisymmetric() && self.satisfies_jacobi()
    }

    /// Span of all `[a, b]` with `a` in `x`, `b` in `y`.
    pub fn bracket_span(&self, x: &Subspace, y: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in x.basis_vectors() {
            for b in y.basis_vectors() {
                let v = self.bracket(&a, &b);
                if !is_zero_vector(&v) {
                    vs.push(v);
                }
            }
        }
        Subspace::span(self.dim, &vs).expect("ambient dimension")
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.bracket_span(s, s).is_subspace_of(s).unwrap_or(false)
    }

    pub fn is_two_sided_ideal(&self, s: &Subspace) -> bool {
        let full = Subspace::full(self.dim);
        self.bracket_span(&full, s).is_subspace_of(s).unwrap_or(false)
            && self.bracket_span(s, &full).is_subspace_of(s).unwrap_or(false)
    }

    /// Structure constants of a subalgebra in its echelon basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LeibnizAlgebra, LeibnizError> {
        let basis = s.basis_vectors();
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                let c = s.coordinates(&self.bracket(a, b))?.ok_or(LeibnizError::NotClosed)?;
                table.push(c);
            }
        }
        Ok(LeibnizAlgebra { dim: basis.len(), table })
    }

    /// Quotient by a two-sided ideal, together with the projection data.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LeibnizAlgebra, QuotientMap), LeibnizError> {
        if !self.is_two_sided_ideal(ideal) {
            return Err(LeibnizError::NotAnIdeal);
        }
        let qm = QuotientMap::new(ideal.clone());
        let reps: Vec<Vector> = qm.representatives();
        let mut table = Vec::with_capacity(reps.len() * reps.len());
        for a in &reps {
            for b in &reps {
                table.push(qm.project(&self.bracket(a, b)));
            }
        }
        Ok((LeibnizAlgebra { dim: reps.len(), table }, qm))
    }

    /// Killing form `tr(L_x L_y)` using left multiplications.
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.left_mult(&unit_vector(self.dim, i))).collect();
        Matrix::from_fn(self.dim, self.dim, |i, j| ads[i].mul(&ads[j]).expect("square").trace())
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        self.derived_series_of(&Subspace::full(self.dim))
    }

    /// `D0 = s`, `D(k+1) = [Dk, Dk]`, until stabilization.
    pub fn derived_series_of(&self, s: &Subspace) -> Vec<Subspace> {
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_span(last, last);
            if &next == last {
                return series;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    /// `C0 = L`, `C(k+1) = [L, Ck] + [Ck, L]`, until stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self
                .bracket_span(&full, last)
                .sum(&self.bracket_span(last, &full))
                .expect("ambient dimension");
            if &next == last {
                return series;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable_subspace(&self, s: &Subspace) -> bool {
        self.derived_series_of(s).last().is_some_and(Subspace::is_zero)
    }

    /// Semisimple Lie test: antisymmetric bracket with nondegenerate Killing form.
    pub fn is_semisimple_lie(&self) -> bool {
        self.is_antisymmetric() && !self.killing_form().determinant().map(|d| d.is_zero()).unwrap_or(true)
    }
}

/// Projection onto a quotient `L / I`, with the quotient basis given by the
/// unit vectors at the non-pivot columns of `I`'s echelon basis.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    ideal: Subspace,
    free_cols: Vec<usize>,
}

impl QuotientMap {
    pub fn new(ideal: Subspace) -> Self {
        let free_cols =
            (0..ideal.ambient_dim()).filter(|c| !ideal.pivots().contains(c)).collect();
        QuotientMap { ideal, free_cols }
    }

    pub fn quotient_dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn representatives(&self) -> Vec<Vector> {
        let n = self.ideal.ambient_dim();
        self.free_cols.iter().map(|&c| unit_vector(n, c)).collect()
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        let basis = self.ideal.basis();
        for (i, &p) in self.ideal.pivots().iter().enumerate() {
            let c = r[p].clone();
            if !c.is_zero() {
                axpy(&mut r, &-c, basis.row(i));
            }
        }
        self.free_cols.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        let mut v = zero_vector(self.ideal.ambient_dim());
        for (c, x) in self.free_cols.iter().zip(coords) {
            v[*c] = x.clone();
        }
        v
    }

    /// Full preimage of a subspace of the quotient.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let lifted: Vec<Vector> = s.basis_vectors().iter().map(|b| self.lift(b)).collect();
        Subspace::span(self.ideal.ambient_dim(), &lifted)
            .expect("ambient dimension")
            .sum(&self.ideal)
            .expect("ambient dimension")
    }
}

/// The radical tower `N ⊆ N1 ⊆ N0 ⊆ B` together with the annihilator `F` of `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalTower {
    pub kernel_n: Subspace,
    pub annihilator_f: Subspace,
    pub solvable_b: Subspace,
    pub nilpotent_n1: Subspace,
    pub nil_n0: Subspace,
}

/// `span{[a,b] + [b,a]}`, the smallest two-sided ideal with Lie quotient.
pub fn leibniz_kernel(l: &LeibnizAlgebra) -> Subspace {
    let n = l.dim();
    let mut vs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut s = l.bracket_basis(i, j).clone();
            axpy(&mut s, &Scalar::one(), l.bracket_basis(j, i));
            if !is_zero_vector(&s) {
                vs.push(s);
            }
        }
    }
    Subspace::span(n, &vs).expect("ambient dimension")
}

/// `{a : [a, n] = 0 for all n in the Leibniz kernel}`.
pub fn annihilator_of_kernel(l: &LeibnizAlgebra) -> Subspace {
    annihilator_of(l, &leibniz_kernel(l))
}

/// Left annihilator `{a : [a, s] = 0 for all s in sub}`.
pub fn annihilator_of(l: &LeibnizAlgebra, sub: &Subspace) -> Subspace {
    let n = l.dim();
    let mut rows = Vec::new();
    for s in sub.basis_vectors() {
        rows.extend(l.right_mult(&s).row_vectors());
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Matrix::from_rows(rows, n).expect("square blocks").kernel()
}

pub fn lie_quotient(l: &LeibnizAlgebra) -> LeibnizAlgebra {
    lie_quotient_with_map(l).0
}

pub fn lie_quotient_with_map(l: &LeibnizAlgebra) -> (LeibnizAlgebra, QuotientMap) {
    l.quotient(&leibniz_kernel(l)).expect("Leibniz kernel is a two-sided ideal")
}

/// Radical of a Lie algebra: the Killing-orthogonal of the derived algebra.
fn lie_radical(g: &LeibnizAlgebra) -> Subspace {
    let full = Subspace::full(g.dim());
    let derived = g.bracket_span(&full, &full);
    derived.orthogonal_complement(&g.killing_form()).expect("square form")
}

/// Preimage in `L` of the solvable radical of `L / N`.
pub fn solvable_radical(l: &LeibnizAlgebra) -> Subspace {
    let (g, qm) = lie_quotient_with_map(l);
    qm.preimage(&lie_radical(&g))
}

/// Preimage of `[g, g] ∩ rad g` for `g = L / N`.
pub fn nilpotent_radical(l: &LeibnizAlgebra) -> Subspace {
    let (g, qm) = lie_quotient_with_map(l);
    let full = Subspace::full(g.dim());
    let derived = g.bracket_span(&full, &full);
    let nilp = derived.intersect(&lie_radical(&g)).expect("ambient dimension");
    qm.preimage(&nilp)
}

/// Preimage of the largest nilpotent ideal of `g = L / N`.
///
/// An element `x` of `r = rad g` lies in the nilradical iff `ad x` is
/// nilpotent. The associative algebra generated by `ad r` is triangularizable,
/// so its nilpotent elements are exactly its trace-form radical.
pub fn nil_radical(l: &LeibnizAlgebra) -> Subspace {
    let (g, qm) = lie_quotient_with_map(l);
    let r = lie_radical(&g);
    let ads: Vec<Matrix> = r.basis_vectors().iter().map(|x| g.left_mult(x)).collect();
    let assoc = associative_closure(&ads, g.dim());
    if assoc.is_empty() {
        return qm.preimage(&r);
    }
    // coefficients c on r's basis with tr(ad(sum c_i r_i) * b) = 0 for all b
    let rows: Vec<Vector> = assoc
        .iter()
        .map(|b| ads.iter().map(|a| a.mul(b).expect("square").trace()).collect())
        .collect();
    let coeff_space = Matrix::from_rows(rows, ads.len()).expect("rows").kernel();
    let rb = r.basis_vectors();
    let elems: Vec<Vector> = coeff_space
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut v = zero_vector(g.dim());
            for (ci, ri) in c.iter().zip(&rb) {
                axpy(&mut v, ci, ri);
            }
            v
        })
        .collect();
    qm.preimage(&Subspace::span(g.dim(), &elems).expect("ambient dimension"))
}

/// Basis of the (non-unital) associative algebra generated by `gens`.
fn associative_closure(gens: &[Matrix], n: usize) -> Vec<Matrix> {
    let flat = |m: &Matrix| -> Vector { (0..n * n).map(|k| m.get(k / n, k % n).clone()).collect() };
    let mut basis: Vec<Matrix> = Vec::new();
    let mut span = Subspace::zero(n * n);
    let mut frontier: Vec<Matrix> = Vec::new();
    for g in gens {
        let v = flat(g);
        if !span.contains(&v).expect("dims") {
            span = span.sum(&Subspace::span(n * n, &[v]).expect("dims")).expect("dims");
            basis.push(g.clone());
            frontier.push(g.clone());
        }
    }
    while let Some(a) = frontier.pop() {
        for g in gens {
            for p in [a.mul(g).expect("square"), g.mul(&a).expect("square")] {
                let v = flat(&p);
                if !span.contains(&v).expect("dims") {
                    span = span.sum(&Subspace::span(n * n, &[v]).expect("dims")).expect("dims");
                    basis.push(p.clone());
                    frontier.push(p);
                }
            }
        }
    }
    basis
}

pub fn radical_tower(l: &LeibnizAlgebra) -> RadicalTower {
    RadicalTower {
        kernel_n: leibniz_kernel(l),
        annihilator_f: annihilator_of_kernel(l),
        solvable_b: solvable_radical(l),
        nilpotent_n1: nilpotent_radical(l),
        nil_n0: nil_radical(l),
    }
}

/// Coordinates of `v` in the (independent) family `basis`.
fn express(basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    let m = Matrix::from_columns(basis, v.len()).ok()?;
    m.solve(v).ok().flatten()
}

/// A Levi subalgebra `S` with `L = S ⊕ B` (B the solvable radical).
///
/// Starts from the canonical complement of `B` and corrects it down the
/// derived series `B = B0 ⊃ B1 ⊃ ... ⊃ 0`. At stage `k` the complement `S`
/// satisfies `[S, S] ⊆ S + Bk`, and the corrections `s_i -> s_i + φ_i` with
/// `φ_i ∈ Bk` solve the linear system obtained modulo `B(k+1)`.
pub fn levi_subalgebra(l: &LeibnizAlgebra) -> Result<Subspace, LeibnizError> {
    let n = l.dim();
    let b = solvable_radical(l);
    if b.is_full() {
        return Ok(Subspace::zero(n));
    }
    let series = l.derived_series_of(&b);
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(LeibnizError::RadicalNotSolvable);
    }
    let mut s = b.standard_complement();
    let k = s.len();
    for stage in 0..series.len() - 1 {
        let bk = &series[stage];
        let bnext = &series[stage + 1];
        let q = Subspace::quotient_basis(bk, bnext)?;
        let qn = q.len();
        let bnext_basis = bnext.basis_vectors();
        // coordinates of w ∈ Bk on q modulo B(k+1)
        let mod_basis: Vec<Vector> = q.iter().chain(bnext_basis.iter()).cloned().collect();
        let project = |w: &[Scalar]| -> Result<Vector, LeibnizError> {
            let c = express(&mod_basis, w).ok_or(LeibnizError::LeviLiftInconsistent(stage))?;
            Ok(c[..qn].to_vec())
        };
        let sb: Vec<Vector> = s.iter().chain(bk.basis_vectors().iter()).cloned().collect();
        // [s_i, s_j] = sum_l c_ij^l s_l + b_ij
        let mut c = vec![vec![zero_vector(k); k]; k];
        let mut bij = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let br = l.bracket(&s[i], &s[j]);
                let coords = express(&sb, &br).ok_or(LeibnizError::LeviLiftInconsistent(stage))?;
                c[i][j] = coords[..k].to_vec();
                let mut rem = br.clone();
                for (l_idx, cl) in c[i][j].iter().enumerate() {
                    axpy(&mut rem, &-cl.clone(), &s[l_idx]);
                }
                bij[i][j] = project(&rem)?;
            }
        }
        // precompute projections of [s_i, q_r] and [q_r, s_j]
        let mut left = vec![vec![Vec::new(); qn]; k];
        let mut right = vec![vec![Vec::new(); qn]; k];
        for i in 0..k {
            for r in 0..qn {
                left[i][r] = project(&l.bracket(&s[i], &q[r]))?;
                right[i][r] = project(&l.bracket(&q[r], &s[i]))?;
            }
        }
        // unknown x[i][r] at index i*qn + r; equation (i, j, component t)
        let unknowns = k * qn;
        let mut rows = Vec::with_capacity(k * k * qn);
        let mut rhs = Vec::with_capacity(k * k * qn);
        for i in 0..k {
            for j in 0..k {
                for t in 0..qn {
                    let mut row = zero_vector(unknowns);
                    for r in 0..qn {
                        row[j * qn + r] += &left[i][r][t];
                        row[i * qn + r] += &right[j][r][t];
                    }
                    for (l_idx, cl) in c[i][j].iter().enumerate() {
                        if !cl.is_zero() {
                            row[l_idx * qn + t] -= cl;
                        }
                    }
                    rows.push(row);
                    rhs.push(-bij[i][j][t].clone());
                }
            }
        }
        if unknowns == 0 {
            continue;
        }
        let system = Matrix::from_rows(rows, unknowns)?;
        let x = system.solve(&rhs)?.ok_or(LeibnizError::LeviLiftInconsistent(stage))?;
        for (i, si) in s.iter_mut().enumerate() {
            for r in 0..qn {
                axpy(si, &x[i * qn + r], &q[r]);
            }
        }
    }
    let levi = Subspace::span(n, &s)?;
    if !l.is_subalgebra(&levi) {
        return Err(LeibnizError::NotClosed);
    }
    Ok(levi)
}

/// Kernel of a Gram matrix: `{u : form(u, v) = 0 for all v}`.
pub fn invariant_form_radical(l: &LeibnizAlgebra, form: &Matrix) -> Result<Subspace, LeibnizError> {
    if !form.is_square() || form.rows() != l.dim() {
        return Err(LinAlgError::DimensionMismatch { expected: l.dim(), found: form.rows() }.into());
    }
    Ok(form.transpose().kernel())
}

#[derive(Serialize, Deserialize)]
struct LeibnizJson {
    dim: usize,
    bracket: Vec<(usize, usize, Vec<String>)>,
}

#[derive(Deserialize)]
struct LeibnizJsonIn {
    dim: usize,
    #[serde(default)]
    bracket: Vec<(usize, usize, Vec<Literal>)>,
}

impl Serialize for LeibnizAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut bracket = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.bracket_basis(i, j);
                if !is_zero_vector(v) {
                    bracket.push((i, j, v.iter().map(format_scalar).collect()));
                }
            }
        }
        LeibnizJson { dim: self.dim, bracket }.serialize(s)
    }
}

/// Parses the JSON form without checking the Leibniz identity.
pub fn parse_table(json: &str) -> Result<LeibnizAlgebra, LeibnizError> {
    let raw: LeibnizJsonIn =
        serde_json::from_str(json).map_err(|e| LeibnizError::BadTable(e.to_string()))?;
    raw_to_table(raw)
}

fn raw_to_table(raw: LeibnizJsonIn) -> Result<LeibnizAlgebra, LeibnizError> {
    let mut table = vec![zero_vector(raw.dim); raw.dim * raw.dim];
    for (i, j, lits) in raw.bracket {
        if i >= raw.dim || j >= raw.dim {
            return Err(LeibnizError::BadTable(format!("index ({i}, {j}) out of range")));
        }
        let v: Vector = lits.iter().map(Literal::to_scalar).collect::<Result<_, _>>()?;
        if v.len() != raw.dim {
            return Err(LeibnizError::BadTable(format!("bracket ({i}, {j}) has wrong length")));
        }
        table[i * raw.dim + j] = v;
    }
    LeibnizAlgebra::from_table_unchecked(raw.dim, table)
}

impl<'de> Deserialize<'de> for LeibnizAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LeibnizJsonIn::deserialize(d)?;
        let alg = raw_to_table(raw).map_err(D::Error::custom)?;
        match alg.leibniz_violation() {
            Some(t) => Err(D::Error::custom(LeibnizError::NotLeibniz(t))),
            None => Ok(alg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;

    fn ee_f() -> LeibnizAlgebra {
        // [e, e] = f
        LeibnizAlgebra::from_brackets(2, &[(0, 0, vec![q(0), q(1)])]).unwrap()
    }

    fn xy() -> LeibnizAlgebra {
        // [x, y] = y
        LeibnizAlgebra::from_brackets(2, &[(0, 1, vec![q(0), q(1)]), (1, 0, vec![q(0), q(-1)])]).unwrap()
    }

    fn span(n: usize, vs: &[Vec<i64>]) -> Subspace {
        let vs: Vec<Vector> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        Subspace::span(n, &vs).unwrap()
    }

    #[test]
    fn verify_examples() {
        assert!(LeibnizAlgebra::abelian(3).verify_leibniz());
        assert!(LeibnizAlgebra::sl2().verify_leibniz());
        assert!(ee_f().verify_leibniz());
        // [e,e]=f, [f,e]=e fails: [e,[e,e]] = 0 but [[e,e],e] + [e,[e,e]] = e
        let bad = LeibnizAlgebra::from_table_unchecked(
            2,
            vec![vec![q(0), q(1)], vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(0)]],
        )
        .unwrap();
        assert!(!bad.verify_leibniz());
        assert!(matches!(
            LeibnizAlgebra::new(2, vec![vec![q(0), q(1)], vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(0)]]),
            Err(LeibnizError::NotLeibniz(_))
        ));
    }

    #[test]
    fn kernel_and_annihilator() {
        assert!(leibniz_kernel(&LeibnizAlgebra::sl2()).is_zero());
        assert!(leibniz_kernel(&LeibnizAlgebra::abelian(4)).is_zero());
        assert_eq!(leibniz_kernel(&ee_f()), span(2, &[vec![0, 1]]));
        assert!(annihilator_of_kernel(&LeibnizAlgebra::sl2()).is_full());
        assert!(annihilator_of_kernel(&ee_f()).is_full());
        let sum = ee_f().direct_sum(&LeibnizAlgebra::sl2());
        assert!(annihilator_of_kernel(&sum).is_full());
        assert!(sum.is_two_sided_ideal(&leibniz_kernel(&sum)));
    }

    #[test]
    fn lie_quotients() {
        let g = lie_quotient(&LeibnizAlgebra::sl2());
        assert_eq!(g, LeibnizAlgebra::sl2());
        let a = lie_quotient(&ee_f());
        assert_eq!(a, LeibnizAlgebra::abelian(1));
        assert_eq!(lie_quotient(&LeibnizAlgebra::abelian(3)), LeibnizAlgebra::abelian(3));
        assert!(lie_quotient(&ee_f().direct_sum(&LeibnizAlgebra::sl2())).is_lie());
    }

    #[test]
    fn radicals() {
        assert!(solvable_radical(&LeibnizAlgebra::sl2()).is_zero());
        assert!(solvable_radical(&xy()).is_full());
        // gl2: identity matrix E11 + E22
        assert_eq!(solvable_radical(&LeibnizAlgebra::gl2()), span(4, &[vec![1, 0, 0, 1]]));
        assert!(nilpotent_radical(&LeibnizAlgebra::sl2()).is_zero());
        assert_eq!(nilpotent_radical(&xy()), span(2, &[vec![0, 1]]));
        assert!(nilpotent_radical(&LeibnizAlgebra::gl2()).is_zero());
        assert_eq!(nil_radical(&xy()), span(2, &[vec![0, 1]]));
        assert_eq!(nil_radical(&LeibnizAlgebra::gl2()), span(4, &[vec![1, 0, 0, 1]]));
        assert!(nil_radical(&LeibnizAlgebra::abelian(2)).is_full());
    }

    #[test]
    fn tower_is_nested() {
        let l = ee_f().direct_sum(&xy()).direct_sum(&LeibnizAlgebra::sl2());
        let t = radical_tower(&l);
        assert!(t.kernel_n.is_subspace_of(&t.nilpotent_n1).unwrap());
        assert!(t.nilpotent_n1.is_subspace_of(&t.nil_n0).unwrap());
        assert!(t.nil_n0.is_subspace_of(&t.solvable_b).unwrap());
        for s in [&t.kernel_n, &t.annihilator_f, &t.solvable_b, &t.nilpotent_n1, &t.nil_n0] {
            assert!(l.is_two_sided_ideal(s));
        }
        assert_eq!(t.solvable_b.dim(), 4);
    }

    #[test]
    fn series() {
        let ab = LeibnizAlgebra::abelian(2);
        assert!(ab.is_solvable() && ab.is_nilpotent());
        let sl2 = LeibnizAlgebra::sl2();
        assert!(!sl2.is_solvable() && !sl2.is_nilpotent());
        assert!(xy().is_solvable() && !xy().is_nilpotent());
        assert_eq!(xy().derived_series().len(), 3);
    }

    #[test]
    fn levi_examples() {
        let sl2 = LeibnizAlgebra::sl2();
        assert!(levi_subalgebra(&sl2).unwrap().is_full());
        assert!(levi_subalgebra(&xy()).unwrap().is_zero());
        // sl2 ⋉ standard module, basis e, f, h, v1, v2
        let mut br: Vec<(usize, usize, Vector)> = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let v = sl2.bracket_basis(i, j);
                if !is_zero_vector(v) {
                    let mut w = zero_vector(5);
                    w[..3].clone_from_slice(v);
                    br.push((i, j, w));
                }
            }
        }
        // e v2 = v1, f v1 = v2, h v1 = v1, h v2 = -v2
        let act = [(0, 4, 3, 1), (1, 3, 4, 1), (2, 3, 3, 1), (2, 4, 4, -1)];
        for (x, v, out, c) in act {
            let mut w = zero_vector(5);
            w[out] = q(c);
            br.push((x, v, w.clone()));
            br.push((v, x, w.iter().map(|z| -z).collect()));
        }
        let l = LeibnizAlgebra::from_brackets(5, &br).unwrap();
        // twist the basis so that the obvious complement is not a subalgebra
        let p = Matrix::from_i64(&[
            vec![1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![1, 2, 1, 1, 0],
            vec![3, 1, 2, 0, 1],
        ]);
        let twisted = l.change_basis(&p).unwrap();
        let s = levi_subalgebra(&twisted).unwrap();
        let b = solvable_radical(&twisted);
        assert_eq!(s.dim(), 3);
        assert!(twisted.is_subalgebra(&s));
        assert!(s.intersect(&b).unwrap().is_zero());
        assert!(s.sum(&b).unwrap().is_full());
        assert!(twisted.subalgebra(&s).unwrap().is_semisimple_lie());
    }

    #[test]
    fn form_radical() {
        let l = LeibnizAlgebra::abelian(2);
        assert!(invariant_form_radical(&l, &Matrix::identity(2)).unwrap().is_zero());
        assert!(invariant_form_radical(&l, &Matrix::zeros(2, 2)).unwrap().is_full());
        let r = invariant_form_radical(&l, &Matrix::from_i64(&[vec![1, 1], vec![1, 1]])).unwrap();
        assert_eq!(r, span(2, &[vec![1, -1]]));
        assert!(invariant_form_radical(&l, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = ee_f().direct_sum(&LeibnizAlgebra::sl2());
        let s = serde_json::to_string(&l).unwrap();
        let back: LeibnizAlgebra = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        let bad = r#"{"dim": 2, "bracket": [[0, 0, ["0", "1"]], [1, 0, [1, 0]]]}"#;
        assert!(serde_json::from_str::<LeibnizAlgebra>(bad).is_err());
        assert_eq!(parse_table(bad).unwrap().leibniz_violation(), Some([0, 0, 0]));
    }
}
