//! Analysis of a weight-(0, 1) package: the commutative algebra `V0`, the
//! Leibniz algebra `V1`, and the products connecting them. Computes the form
//! `<u, v> = (u(1)v, t)`, its radical, the ideals `M` and `P`, the annihilator
//! of `t(−1)`, and classifies which of the three containment patterns holds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{
    axpy, format_scalar, is_zero_vector, scale, unit_vector, vector_serde, zero_vector, LinAlgError, Matrix,
    Scalar, Subspace, Vector,
};
use crate::frobalg::{jacobson_radical, minimal_ideal, FrobeniusAlgebra};
use crate::leibniz::{levi_subalgebra, nilpotent_radical, LeibnizAlgebra, LeibnizError};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OneTruncError {
    #[error("datum has inconsistent shapes: {0}")]
    Shape(String),
    #[error("the two characterizations of P disagree on {witness:?}")]
    PDisagreement { witness: Vec<String> },
    #[error("M has codimension {0}, expected 1")]
    MNotCodimOne(usize),
    #[error("Ann(t(-1)), rad and P all coincide")]
    AllEqual,
    #[error("no containment pattern matches (ann {ann}, rad {rad}, P {p})")]
    NoCase { ann: usize, rad: usize, p: usize },
    #[error("dim V0 = 1: the containment classification does not apply")]
    Classical,
    #[error("translation image is not a two-sided ideal of V1")]
    TranslationsNotIdeal,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Leibniz(#[from] LeibnizError),
}

/// `(V0, V1)` with `u(0)a`, `u(1)v`, `L(−1)a`, `t(−1)u` and, when available,
/// `u(−1)t` and `t(−2)a`. Maps are matrices whose columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedConformalDatum {
    pub v0: FrobeniusAlgebra,
    #[serde(with = "vector_serde")]
    pub t: Vector,
    pub v1: LeibnizAlgebra,
    /// `act0[i]` is `u_i(0)` on `V0`.
    pub act0: Vec<Matrix>,
    /// `pair1[i]` is `v ↦ u_i(1) v`, `V1 → V0`.
    pub pair1: Vec<Matrix>,
    /// `L(−1)`: `V0 → V1`.
    pub lminus1: Matrix,
    /// `t(−1)`: `V1 → V1`.
    pub tminus1: Matrix,
    /// Column `i` is `u_i(−1) t`.
    #[serde(default)]
    pub uminus1_t: Option<Matrix>,
    /// `t(−2)`: `V0 → V1`.
    #[serde(default)]
    pub tminus2: Option<Matrix>,
}

impl TruncatedConformalDatum {
    pub fn check_shapes(&self) -> Result<(), OneTruncError> {
        let n0 = self.v0.dim();
        let n1 = self.v1.dim();
        let shape = |m: &Matrix, r: usize, c: usize, what: &str| {
            if m.rows() == r && m.cols() == c {
                Ok(())
            } else {
                Err(OneTruncError::Shape(format!("{what} is {}x{}, expected {r}x{c}", m.rows(), m.cols())))
            }
        };
        if self.t.len() != n0 {
            return Err(OneTruncError::Shape("t has wrong length".into()));
        }
        if self.act0.len() != n1 || self.pair1.len() != n1 {
            return Err(OneTruncError::Shape("one action matrix per V1 basis vector expected".into()));
        }
        for m in &self.act0 {
            shape(m, n0, n0, "act0")?;
        }
        for m in &self.pair1 {
            shape(m, n0, n1, "pair1")?;
        }
        shape(&self.lminus1, n1, n0, "lminus1")?;
        shape(&self.tminus1, n1, n1, "tminus1")?;
        if let Some(m) = &self.uminus1_t {
            shape(m, n1, n1, "uminus1_t")?;
        }
        if let Some(m) = &self.tminus2 {
            shape(m, n1, n0, "tminus2")?;
        }
        Ok(())
    }

    pub fn dim0(&self) -> usize {
        self.v0.dim()
    }

    pub fn dim1(&self) -> usize {
        self.v1.dim()
    }

    /// `u(0) a`.
    pub fn act0(&self, u: &[Scalar], a: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim0());
        for (i, c) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            axpy(&mut out, c, &self.act0[i].mul_vec(a).expect("shape"));
        }
        out
    }

    /// `u(1) v`.
    pub fn pair1(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim0());
        for (i, c) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            axpy(&mut out, c, &self.pair1[i].mul_vec(v).expect("shape"));
        }
        out
    }

    pub fn lminus1(&self, a: &[Scalar]) -> Vector {
        self.lminus1.mul_vec(a).expect("shape")
    }

    pub fn tminus1(&self, u: &[Scalar]) -> Vector {
        self.tminus1.mul_vec(u).expect("shape")
    }

    /// Matrix of `u ↦ u(0) t`, `V1 → V0`.
    fn act_on_t(&self) -> Matrix {
        let cols: Vec<Vector> =
            (0..self.dim1()).map(|i| self.act0[i].mul_vec(&self.t).expect("shape")).collect();
        Matrix::from_columns(&cols, self.dim0()).expect("shape")
    }
}

/// Gram matrix of `<u, v> = λ(u(1)v · t)`.
pub fn form(d: &TruncatedConformalDatum) -> Matrix {
    let n1 = d.dim1();
    Matrix::from_fn(n1, n1, |i, j| {
        let p = d.pair1[i].column(j);
        d.v0.form(&p, &d.t)
    })
}

pub fn radical(d: &TruncatedConformalDatum) -> Subspace {
    form(d).kernel()
}

/// `{u : t(−1) u = 0}`.
pub fn ann_t(d: &TruncatedConformalDatum) -> Subspace {
    d.tminus1.kernel()
}

/// `{u : u(0) t = 0}`.
pub fn ideal_m(d: &TruncatedConformalDatum) -> Subspace {
    d.act_on_t().kernel()
}

/// `P`, computed as `{u : <u, M> = 0}` and as `{u : t(−1)u ∈ span L(−1)t}`;
/// the two must agree.
pub fn ideal_p(d: &TruncatedConformalDatum) -> Result<Subspace, OneTruncError> {
    let (by_form, by_t) = p_both_ways(d)?;
    if by_form != by_t {
        let witness = by_form
            .basis_vectors()
            .into_iter()
            .find(|v| !by_t.contains(v).unwrap_or(false))
            .or_else(|| by_t.basis_vectors().into_iter().find(|v| !by_form.contains(v).unwrap_or(false)))
            .expect("distinct subspaces");
        return Err(OneTruncError::PDisagreement { witness: witness.iter().map(format_scalar).collect() });
    }
    Ok(by_form)
}

fn p_both_ways(d: &TruncatedConformalDatum) -> Result<(Subspace, Subspace), OneTruncError> {
    let by_form = ideal_m(d).orthogonal_complement(&form(d))?;
    let lt = Subspace::span(d.dim1(), &[d.lminus1(&d.t)])?;
    let by_t = Subspace::preimage(&d.tminus1, &lt)?;
    Ok((by_form, by_t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrichotomyCase {
    /// `Ann(t(−1)) = rad ⊂ P`.
    #[serde(rename = "i")]
    I,
    /// `Ann(t(−1)) ⊂ rad = P`.
    #[serde(rename = "ii")]
    II,
    /// `rad ⊂ Ann(t(−1)) = P`.
    #[serde(rename = "iii")]
    III,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrichotomyReport {
    pub rad: Subspace,
    pub ann_t: Subspace,
    pub p: Subspace,
    pub m: Subspace,
    pub case: TrichotomyCase,
}

/// `small ⊂ big` with codimension exactly 1.
fn covered_by(small: &Subspace, big: &Subspace) -> bool {
    small.is_subspace_of(big).unwrap_or(false) && big.dim() == small.dim() + 1
}

pub fn classify_trichotomy(d: &TruncatedConformalDatum) -> Result<TrichotomyReport, OneTruncError> {
    d.check_shapes()?;
    if d.dim0() < 2 {
        return Err(OneTruncError::Classical);
    }
    let rad = radical(d);
    let ann = ann_t(d);
    let m = ideal_m(d);
    if m.codim() != 1 {
        return Err(OneTruncError::MNotCodimOne(m.codim()));
    }
    let p = ideal_p(d)?;
    if ann == rad && rad == p {
        return Err(OneTruncError::AllEqual);
    }
    let case = if ann == rad && covered_by(&rad, &p) {
        TrichotomyCase::I
    } else if rad == p && covered_by(&ann, &rad) {
        TrichotomyCase::II
    } else if ann == p && covered_by(&rad, &ann) {
        TrichotomyCase::III
    } else {
        return Err(OneTruncError::NoCase { ann: ann.dim(), rad: rad.dim(), p: p.dim() });
    };
    Ok(TrichotomyReport { rad, ann_t: ann, p, m, case })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One named identity check with a counterexample on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomCheck {
    fn new(name: &str, failure: Option<String>) -> Self {
        AxiomCheck {
            name: name.into(),
            status: if failure.is_some() { CheckStatus::Fail } else { CheckStatus::Pass },
            witness: failure,
        }
    }

    fn skipped(name: &str) -> Self {
        AxiomCheck { name: name.into(), status: CheckStatus::Skipped, witness: None }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(format_scalar).collect::<Vec<_>>().join(", "))
}

fn first_failure<I: IntoIterator<Item = Option<String>>>(it: I) -> Option<String> {
    it.into_iter().flatten().next()
}

/// Every identity of the weight-(0, 1) theory that the datum can be tested against.
pub fn verify_axioms(d: &TruncatedConformalDatum) -> Vec<AxiomCheck> {
    if let Err(e) = d.check_shapes() {
        return vec![AxiomCheck::new("shapes", Some(e.to_string()))];
    }
    let n0 = d.dim0();
    let n1 = d.dim1();
    let e0 = |i| unit_vector(n0, i);
    let e1 = |i| unit_vector(n1, i);
    let gram = form(d);
    let rad = radical(d);
    let mut out = Vec::new();

    out.push(AxiomCheck::new(
        "derivation_action",
        first_failure((0..n1).flat_map(|u| {
            (0..n0).flat_map(move |a| {
                (0..n0).map(move |b| {
                    let lhs = d.act0(&e1(u), d.v0.product_basis(a, b));
                    let mut rhs = d.v0.mul(&d.act0(&e1(u), &e0(a)), &e0(b));
                    axpy(&mut rhs, &Scalar::one(), &d.v0.mul(&e0(a), &d.act0(&e1(u), &e0(b))));
                    (lhs != rhs).then(|| format!("u{u}(0)(e{a} e{b})"))
                })
            })
        })),
    ));

    out.push(AxiomCheck::new(
        "pair_symmetric",
        first_failure((0..n1).flat_map(|i| {
            (0..i).map(move |j| (d.pair1(&e1(i), &e1(j)) != d.pair1(&e1(j), &e1(i))).then(|| format!("(u{i}, u{j})")))
        })),
    ));

    out.push(AxiomCheck::new(
        "skew_symmetry",
        first_failure((0..n1).flat_map(|i| {
            (0..n1).map(move |j| {
                let mut s = d.v1.bracket_basis(i, j).clone();
                axpy(&mut s, &Scalar::one(), d.v1.bracket_basis(j, i));
                (s != d.lminus1(&d.pair1(&e1(i), &e1(j)))).then(|| format!("(u{i}, u{j})"))
            })
        })),
    ));

    let unit_line = Subspace::span(n0, &[d.v0.unit().clone()]).expect("shape");
    let lker = d.lminus1.kernel();
    out.push(AxiomCheck::new(
        "translation_kernel_is_vacuum",
        (lker != unit_line).then(|| format!("ker L(-1) has dimension {}", lker.dim())),
    ));

    out.push(AxiomCheck::new(
        "translation_zero_mode_vanishes",
        first_failure((0..n0).map(|a| {
            let u = d.lminus1(&e0(a));
            let on_v0 = (0..n0).any(|b| !is_zero_vector(&d.act0(&u, &e0(b))));
            let on_v1 = (0..n1).any(|v| !is_zero_vector(&d.v1.bracket(&u, &e1(v))));
            (on_v0 || on_v1).then(|| format!("(L(-1) e{a})(0)"))
        })),
    ));

    let tline = Subspace::span(n0, &[d.t.clone()]).expect("shape");
    out.push(AxiomCheck::new(
        "t_spans_minimal_ideal",
        match minimal_ideal(&d.v0) {
            Ok(mi) if mi == tline && !d.v0.form(d.v0.unit(), &d.t).is_zero() => None,
            Ok(_) => Some(format!("t = {}", fmt_vec(&d.t))),
            Err(e) => Some(e.to_string()),
        },
    ));

    out.push(AxiomCheck::new(
        "translations_in_radical",
        first_failure((0..n0).map(|a| {
            let u = d.lminus1(&e0(a));
            (!rad.contains(&u).unwrap_or(false)).then(|| fmt_vec(&u))
        })),
    ));

    out.push(AxiomCheck::new("form_symmetric", (!gram.is_symmetric()).then(|| "gram".into())));

    let ip = |x: &[Scalar], y: &[Scalar]| gram.bilinear(x, y).expect("shape");
    out.push(AxiomCheck::new(
        "form_invariant",
        first_failure((0..n1).flat_map(|u| {
            (0..n1).flat_map(move |v| {
                (0..n1).map(move |w| {
                    let lhs = ip(d.v1.bracket_basis(v, u), &e1(w));
                    let rhs = ip(&e1(v), d.v1.bracket_basis(u, w));
                    (lhs != rhs).then(|| format!("<u{v}(0)u{u}, u{w}>"))
                })
            })
        })),
    ));

    out.push(AxiomCheck::new(
        "form_skew_invariant",
        first_failure((0..n1).flat_map(|u| {
            (0..n1).flat_map(move |v| {
                (0..n1).map(move |w| {
                    let lhs = ip(d.v1.bracket_basis(u, v), &e1(w));
                    let rhs = ip(&e1(v), d.v1.bracket_basis(u, w));
                    (lhs != -rhs).then(|| format!("<u{u}(0)u{v}, u{w}>"))
                })
            })
        })),
    ));

    let m = ideal_m(d);
    if n0 >= 2 {
        out.push(AxiomCheck::new(
            "m_codimension_one",
            (m.codim() != 1).then(|| format!("codimension {}", m.codim())),
        ));
    } else {
        out.push(AxiomCheck::skipped("m_codimension_one"));
    }
    out.push(AxiomCheck::new(
        "m_two_sided_ideal",
        (!d.v1.is_two_sided_ideal(&m)).then(|| "M".to_string()),
    ));

    match p_both_ways(d) {
        Ok((a, b)) => out.push(AxiomCheck::new(
            "p_characterizations_agree",
            (a != b).then(|| format!("dims {} vs {}", a.dim(), b.dim())),
        )),
        Err(e) => out.push(AxiomCheck::new("p_characterizations_agree", Some(e.to_string()))),
    }

    let ann = ann_t(d);
    let lhs = m.intersect(&ann).expect("shape");
    let rhs = m.intersect(&rad).expect("shape");
    out.push(AxiomCheck::new(
        "m_ann_equals_m_rad",
        (lhs != rhs).then(|| format!("dims {} vs {}", lhs.dim(), rhs.dim())),
    ));

    match &d.tminus2 {
        Some(t2) => {
            let j = jacobson_radical(&d.v0);
            out.push(AxiomCheck::new(
                "t_minus_two_kills_radical",
                first_failure(j.basis_vectors().iter().map(|a| {
                    let r = t2.mul_vec(a).expect("shape");
                    (!is_zero_vector(&r)).then(|| fmt_vec(a))
                })),
            ));
        }
        None => out.push(AxiomCheck::skipped("t_minus_two_kills_radical")),
    }

    match &d.uminus1_t {
        Some(ut) => {
            let kernel = ut.kernel();
            out.push(AxiomCheck::new(
                "radical_is_kernel_of_u_minus_one_t",
                (kernel != rad).then(|| format!("dims {} vs {}", kernel.dim(), rad.dim())),
            ));
            out.push(AxiomCheck::new(
                "u_minus_one_t_relation",
                first_failure((0..n1).map(|u| {
                    let mut rhs = d.tminus1(&e1(u));
                    axpy(&mut rhs, &Scalar::one(), &d.lminus1(&d.act0(&e1(u), &d.t)));
                    (ut.column(u) != rhs).then(|| format!("u{u}"))
                })),
            ));
        }
        None => {
            out.push(AxiomCheck::skipped("radical_is_kernel_of_u_minus_one_t"));
            out.push(AxiomCheck::skipped("u_minus_one_t_relation"));
        }
    }
    out
}

/// Preimage of the nilpotent radical of the Lie algebra `V1 / L(−1)V0`.
pub fn translation_nilpotent_radical(d: &TruncatedConformalDatum) -> Result<Subspace, OneTruncError> {
    let n = crate::exactla::image(&d.lminus1);
    if !d.v1.is_two_sided_ideal(&n) {
        return Err(OneTruncError::TranslationsNotIdeal);
    }
    let (quot, map) = d.v1.quotient(&n)?;
    Ok(map.preimage(&nilpotent_radical(&quot)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedStructureReport {
    /// `⊕_{m≥2} W_{m, m−1}`.
    pub upper: Subspace,
    pub upper_in_ann: bool,
    pub ann_equals_rad: bool,
    /// `N1` with `N1 / N` the nilpotent radical of `V1 / N`, `N = L(−1)V0`.
    pub n1: Subspace,
    /// Preimage of the nilpotent radical of the Lie quotient by the Leibniz kernel.
    pub leibniz_nilpotent_radical: Subspace,
    /// Checked only when the unshifted weight-one Lie algebra is reductive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1_equals_upper: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_equals_ann: Option<bool>,
    pub rad_equals_leibniz_nilpotent_radical: bool,
    pub passed: bool,
}

/// Bigrading labels are `(L′(0), h(0))` per basis vector of `V1`.
pub fn shifted_structure_check(
    d: &TruncatedConformalDatum,
    labels: &[(i64, i64)],
    reductive: bool,
) -> Result<ShiftedStructureReport, OneTruncError> {
    d.check_shapes()?;
    let n1 = d.dim1();
    if labels.len() != n1 {
        return Err(OneTruncError::Shape("one bigrading label per V1 basis vector expected".into()));
    }
    let upper_vecs: Vec<Vector> = labels
        .iter()
        .enumerate()
        .filter(|(_, (m, c))| *m >= 2 && *c == m - 1)
        .map(|(i, _)| unit_vector(n1, i))
        .collect();
    let upper = Subspace::span(n1, &upper_vecs)?;
    let ann = ann_t(d);
    let rad = radical(d);
    let upper_in_ann = upper.is_subspace_of(&ann)?;
    let ann_equals_rad = ann == rad;
    let n1s = translation_nilpotent_radical(d)?;
    let leib = nilpotent_radical(&d.v1);
    let (n1_equals_upper, upper_equals_ann) =
        if reductive { (Some(n1s == upper), Some(upper == ann)) } else { (None, None) };
    let passed = upper_in_ann
        && ann_equals_rad
        && n1_equals_upper.unwrap_or(true)
        && upper_equals_ann.unwrap_or(true);
    Ok(ShiftedStructureReport {
        rad_equals_leibniz_nilpotent_radical: rad == leib,
        upper,
        upper_in_ann,
        ann_equals_rad,
        n1: n1s,
        leibniz_nilpotent_radical: leib,
        n1_equals_upper,
        upper_equals_ann,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviFormReport {
    pub levi: Subspace,
    /// Gram rank of `<,>` restricted to the Levi subalgebra.
    pub restricted_rank: usize,
    pub nondegenerate: bool,
}

/// Restriction of `<,>` to a Levi subalgebra of `V1`.
pub fn levi_form_check(d: &TruncatedConformalDatum) -> Result<LeviFormReport, OneTruncError> {
    let levi = levi_subalgebra(&d.v1)?;
    let gram = form(d);
    let b = levi.basis_vectors();
    let restricted = Matrix::from_fn(b.len(), b.len(), |i, j| gram.bilinear(&b[i], &b[j]).expect("shape"));
    let rank = restricted.rank();
    Ok(LeviFormReport { nondegenerate: rank == b.len(), restricted_rank: rank, levi })
}

/// Scales `t` so that `(1, t) = λ(t) = 1`.
pub fn normalize_t(d: &mut TruncatedConformalDatum) -> bool {
    let c = d.v0.form(d.v0.unit(), &d.t);
    if c.is_zero() {
        return false;
    }
    d.t = scale(&d.t, &(Scalar::one() / c));
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;

    /// Hand-built shifted A1 package: `V0 = {1, e}`, `V1 = {x, y}` with
    /// `[x, y] = 2y`, `x(1)x = 2`, `x(1)y = 2e`, `t = e`, `t(−1)x = −y`, `L(−1)e = y`.
    fn a1_by_hand() -> TruncatedConformalDatum {
        let v0 = FrobeniusAlgebra::truncated_polynomial(1);
        let v1 = LeibnizAlgebra::from_brackets(2, &[(0, 1, vec![q(0), q(2)])]).unwrap();
        TruncatedConformalDatum {
            v0,
            t: vec![q(0), q(1)],
            v1,
            act0: vec![Matrix::from_i64(&[vec![0, 0], vec![0, 2]]), Matrix::zeros(2, 2)],
            pair1: vec![Matrix::from_i64(&[vec![2, 0], vec![0, 2]]), Matrix::from_i64(&[vec![0, 0], vec![2, 0]])],
            lminus1: Matrix::from_i64(&[vec![0, 0], vec![0, 1]]),
            tminus1: Matrix::from_i64(&[vec![0, 0], vec![-1, 0]]),
            uminus1_t: Some(Matrix::from_i64(&[vec![0, 0], vec![1, 0]])),
            tminus2: Some(Matrix::zeros(2, 2)),
        }
    }

    fn span(n: usize, vs: &[Vec<i64>]) -> Subspace {
        let vs: Vec<Vector> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        Subspace::span(n, &vs).unwrap()
    }

    #[test]
    fn a1_package() {
        let d = a1_by_hand();
        assert_eq!(form(&d), Matrix::from_i64(&[vec![2, 0], vec![0, 0]]));
        assert_eq!(radical(&d), span(2, &[vec![0, 1]]));
        assert_eq!(ann_t(&d), span(2, &[vec![0, 1]]));
        assert_eq!(ideal_m(&d), span(2, &[vec![0, 1]]));
        assert!(ideal_p(&d).unwrap().is_full());
        let r = classify_trichotomy(&d).unwrap();
        assert_eq!(r.case, TrichotomyCase::I);
        for c in verify_axioms(&d) {
            assert_eq!(c.status, CheckStatus::Pass, "{}", c.name);
        }
        let s = shifted_structure_check(&d, &[(1, 0), (2, 1)], true).unwrap();
        assert!(s.passed);
        assert_eq!(s.n1, span(2, &[vec![0, 1]]));
        assert!(levi_form_check(&d).unwrap().levi.is_zero());
    }

    #[test]
    fn classical_package() {
        let sl2 = LeibnizAlgebra::sl2();
        let k = sl2.killing_form();
        let d = TruncatedConformalDatum {
            v0: FrobeniusAlgebra::truncated_polynomial(0),
            t: vec![q(1)],
            act0: vec![Matrix::zeros(1, 1); 3],
            pair1: (0..3).map(|i| Matrix::from_fn(1, 3, |_, j| k.get(i, j).clone())).collect(),
            lminus1: Matrix::zeros(3, 1),
            tminus1: Matrix::identity(3),
            v1: sl2,
            uminus1_t: None,
            tminus2: None,
        };
        assert_eq!(form(&d), k);
        assert_eq!(classify_trichotomy(&d), Err(OneTruncError::Classical));
        let checks = verify_axioms(&d);
        assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
        assert!(checks.iter().any(|c| c.name == "form_invariant" && c.status == CheckStatus::Pass));
        let lf = levi_form_check(&d).unwrap();
        assert!(lf.levi.is_full() && lf.nondegenerate);
    }

    #[test]
    fn inconsistent_data_are_rejected() {
        // zero form and t(-1) = 0 make Ann, rad and P all equal to V1
        let mut d = a1_by_hand();
        d.pair1 = vec![Matrix::zeros(2, 2), Matrix::zeros(2, 2)];
        d.tminus1 = Matrix::zeros(2, 2);
        assert_eq!(classify_trichotomy(&d), Err(OneTruncError::AllEqual));
        // t(-1)u lands outside span L(-1)t while the zero form puts u in P
        d.tminus1 = Matrix::from_i64(&[vec![0, 0], vec![0, 1]]);
        d.lminus1 = Matrix::from_i64(&[vec![0, 1], vec![0, 0]]);
        assert!(matches!(ideal_p(&d), Err(OneTruncError::PDisagreement { .. })));
        assert!(verify_axioms(&d).iter().any(|c| c.name == "p_characterizations_agree" && c.failed()));
    }

    #[test]
    fn json_roundtrip() {
        let d = a1_by_hand();
        let s = serde_json::to_string(&d).unwrap();
        let back: TruncatedConformalDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let r = serde_json::to_value(classify_trichotomy(&d).unwrap()).unwrap();
        assert_eq!(r["case"], "i");
    }
}
