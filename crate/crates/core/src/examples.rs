//! Worked families: the shifted affine sl2 model at level `k`, and the
//! shifted lattice pipeline (lattice → Fock modes → `(V0, V1)` → analysis).

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{format_scalar, q, unit_vector, LinAlgError, Matrix, Scalar, Subspace, Vector};
use crate::fock::{weight_space, Conformal, FockState, FockVector, GradedState, ModeEngine, VirasoroDatum};
use crate::frobalg::{de_rham_check, DeRhamReport, FrobError, FrobeniusAlgebra, GradingOperator};
use crate::lattice::{build_cocycle, build_v0, shift_admissible, LatticeError, LatticeV0, ShiftDatum};
use crate::leibniz::{leibniz_kernel, radical_tower, LeibnizAlgebra, LeibnizError, RadicalTower};
use crate::onetrunc::{
    classify_trichotomy, form, levi_form_check, shifted_structure_check, verify_axioms, AxiomCheck, LeviFormReport,
    OneTruncError, ShiftedStructureReport, TrichotomyReport, TruncatedConformalDatum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("level must be positive, got {0}")]
    BadLevel(i64),
    #[error("shift is not admissible")]
    NotAdmissible,
    #[error("cross-check failed: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Frob(#[from] FrobError),
    #[error(transparent)]
    Leibniz(#[from] LeibnizError),
    #[error(transparent)]
    OneTrunc(#[from] OneTruncError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// PBW label `e(−l1)···f(−m1)···h(−n1)··· 1` of the affine sl2 vacuum module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Monomial {
    pub e: Vec<u32>,
    pub f: Vec<u32>,
    pub h: Vec<u32>,
}

impl Sl2Monomial {
    /// `L(0)` eigenvalue: the sum of all mode numbers.
    pub fn conformal_weight(&self) -> i64 {
        self.e.iter().chain(&self.f).chain(&self.h).map(|&n| n as i64).sum()
    }

    /// `H(0)` eigenvalue with `H = h/2`: number of `e` factors minus number of `f` factors.
    pub fn charge(&self) -> i64 {
        self.e.len() as i64 - self.f.len() as i64
    }

    /// `L_H(0) = L(0) − H(0)`: `Σ(l_i − 1) + Σ(m_j + 1) + Σ n_k`.
    pub fn shifted_weight(&self) -> i64 {
        self.e.iter().map(|&l| l as i64 - 1).sum::<i64>()
            + self.f.iter().map(|&m| m as i64 + 1).sum::<i64>()
            + self.h.iter().map(|&n| n as i64).sum::<i64>()
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (name, modes) in [("e", &self.e), ("f", &self.f), ("h", &self.h)] {
            for n in modes.iter() {
                parts.push(format!("{name}(-{n})"));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ") + " 1"
        }
    }
}

/// Finite model of the weight-0 and weight-1 spaces of the shifted affine sl2
/// theory at level `k`. The weight-one labels are formal: their linear
/// independence is assumed, not derived.
#[derive(Debug, Clone, Serialize)]
pub struct Sl2ShiftModel {
    pub level: usize,
    /// `Q[x]/(x^{k+1})` with `x = e(−1)1` and `λ(x^k) = 1`.
    pub v0: FrobeniusAlgebra,
    /// `e(−1)^p 1`, `p = 0..=k`.
    pub v0_labels: Vec<Sl2Monomial>,
    /// `h(−1)e(−1)^i 1` for `i < k`, then `e(−2)e(−1)^i 1` for `i < k`.
    pub v1_labels: Vec<Sl2Monomial>,
    /// `L_H(1)`: `V1 → V0`, columns indexed like `v1_labels`.
    pub lh1: Matrix,
}

pub fn build_sl2(k: i64) -> Result<Sl2ShiftModel, BuildError> {
    if k <= 0 {
        return Err(BuildError::BadLevel(k));
    }
    let n = k as usize;
    let v0 = FrobeniusAlgebra::truncated_polynomial(n);
    let v0_labels = (0..=n).map(|p| Sl2Monomial { e: vec![1; p], f: vec![], h: vec![] }).collect();
    let mut v1_labels = Vec::with_capacity(2 * n);
    for i in 0..n {
        v1_labels.push(Sl2Monomial { e: vec![1; i], f: vec![], h: vec![1] });
    }
    for i in 0..n {
        let mut e = vec![2];
        e.extend(vec![1; i]);
        v1_labels.push(Sl2Monomial { e, f: vec![], h: vec![] });
    }
    // L_H(1) h(−1)e(−1)^i 1 = 2(i − k) x^i and L_H(1) e(−2)e(−1)^i 1 = 0
    let lh1 = Matrix::from_fn(n + 1, 2 * n, |r, c| if c < n && r == c { q(2 * (c as i64 - k)) } else { Scalar::zero() });
    Ok(Sl2ShiftModel { level: n, v0, v0_labels, v1_labels, lh1 })
}

impl Sl2ShiftModel {
    /// Grading of `V0` by the charge of its labels.
    pub fn grading(&self) -> GradingOperator {
        GradingOperator::diagonal(&self.v0_labels.iter().map(Sl2Monomial::charge).collect::<Vec<_>>())
    }

    pub fn labels_consistent(&self) -> bool {
        self.v0_labels.iter().all(|m| m.shifted_weight() == 0 && m.conformal_weight() == m.charge())
            && self.v1_labels.iter().all(|m| m.shifted_weight() == 1 && m.conformal_weight() - m.charge() == 1)
    }
}

/// `image(L_H(1)) = span{1, x, ..., x^{k−1}}`.
pub fn check_sl2_selfdual(m: &Sl2ShiftModel) -> bool {
    let n = m.v0.dim();
    let want: Vec<Vector> = (0..n - 1).map(|p| unit_vector(n, p)).collect();
    crate::exactla::image(&m.lh1) == Subspace::span(n, &want).expect("shape")
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2Report {
    pub level: usize,
    pub dim_v0: usize,
    pub dim_v1_labels: usize,
    pub v1_labels: Vec<String>,
    pub de_rham: DeRhamReport,
    pub pairing_antidiagonal: bool,
    pub image_codimension: usize,
    pub self_dual: bool,
    pub labels_consistent: bool,
    pub passed: bool,
}

pub fn sl2_report(m: &Sl2ShiftModel) -> Result<Sl2Report, BuildError> {
    let de_rham = de_rham_check(&m.v0, &m.grading())?;
    let k = m.level;
    let g = m.v0.gram();
    let pairing_antidiagonal = (0..=k).all(|p| {
        (0..=k).all(|r| *g.get(p, r) == if p + r == k { Scalar::one() } else { Scalar::zero() })
    });
    let image_codimension = m.v0.dim() - m.lh1.rank();
    let self_dual = check_sl2_selfdual(m);
    let labels_consistent = m.labels_consistent();
    let passed = de_rham.all_pass()
        && de_rham.nu == k as i64
        && pairing_antidiagonal
        && image_codimension == 1
        && self_dual
        && labels_consistent;
    Ok(Sl2Report {
        level: k,
        dim_v0: m.v0.dim(),
        dim_v1_labels: m.v1_labels.len(),
        v1_labels: m.v1_labels.iter().map(Sl2Monomial::describe).collect(),
        de_rham,
        pairing_antidiagonal,
        image_codimension,
        self_dual,
        labels_consistent,
        passed,
    })
}

/// A shifted lattice theory with its weight-0 and weight-1 data computed by
/// the Fock engine.
#[derive(Debug, Clone)]
pub struct LatticeShiftBundle {
    pub shift: ShiftDatum,
    pub v0: LatticeV0,
    pub v1_states: Vec<GradedState>,
    /// `(L′(0), h(0))` for each `V1` basis state.
    pub labels: Vec<(i64, i64)>,
    pub datum: TruncatedConformalDatum,
    pub central_charge: Scalar,
    pub shifted_central_charge: Scalar,
}

fn coords_in(v: &FockVector, basis: &[FockState], what: &str) -> Result<Vector, BuildError> {
    v.coordinates(basis).ok_or_else(|| BuildError::Mismatch(format!("{what} leaves the expected weight space")))
}

fn columns(cols: Vec<Vector>, rows: usize) -> Matrix {
    Matrix::from_columns(&cols, rows).expect("shape")
}

pub fn build_lattice_shift(s: &ShiftDatum) -> Result<LatticeShiftBundle, BuildError> {
    if !shift_admissible(s) {
        return Err(BuildError::NotAdmissible);
    }
    let v0 = build_v0(s, &build_cocycle(s.lattice()))?;
    let b0: Vec<FockState> = weight_space(s, 0).into_iter().map(|g| g.state).collect();
    let expected: Vec<FockState> = v0.points.iter().map(|p| FockState::exponential(p.clone())).collect();
    if b0 != expected {
        return Err(BuildError::Mismatch("weight-zero states differ from the exponentials of A".into()));
    }
    let mut engine = ModeEngine::new(s.lattice().clone());
    let vd = VirasoroDatum::new(s)?;
    let n0 = b0.len();

    for (i, a) in v0.points.iter().enumerate() {
        for j in 0..n0 {
            let prod = engine.exp_mode(a, -1, &FockVector::basis(b0[j].clone()));
            let got = coords_in(&prod, &b0, "e^a(-1)e^b")?;
            if &got != v0.algebra.product_basis(i, j) {
                return Err(BuildError::Mismatch(format!("V0 product of e^{a:?} and e^{:?}", v0.points[j])));
            }
        }
    }

    let v1_states = weight_space(s, 1);
    let b1: Vec<FockState> = v1_states.iter().map(|g| g.state.clone()).collect();
    let n1 = b1.len();
    let basis0: Vec<FockVector> = b0.iter().cloned().map(FockVector::basis).collect();
    let basis1: Vec<FockVector> = b1.iter().cloned().map(FockVector::basis).collect();

    let mut table = Vec::with_capacity(n1 * n1);
    let mut act0 = Vec::with_capacity(n1);
    let mut pair1 = Vec::with_capacity(n1);
    for u in &basis1 {
        for v in &basis1 {
            table.push(coords_in(&engine.iterate_mode(u, 0, v), &b1, "u(0)v")?);
        }
        let mut a_cols = Vec::with_capacity(n0);
        for a in &basis0 {
            a_cols.push(coords_in(&engine.iterate_mode(u, 0, a), &b0, "u(0)a")?);
        }
        act0.push(columns(a_cols, n0));
        let mut p_cols = Vec::with_capacity(n1);
        for v in &basis1 {
            p_cols.push(coords_in(&engine.iterate_mode(u, 1, v), &b0, "u(1)v")?);
        }
        pair1.push(columns(p_cols, n0));
    }
    let v1 = LeibnizAlgebra::new(n1, table)?;

    let mut l_cols = Vec::with_capacity(n0);
    for a in &basis0 {
        let via_formula = engine.virasoro_mode(&vd, -1, a, Conformal::Shifted);
        let direct = engine.shifted_virasoro_direct(&vd, -1, a);
        if via_formula != direct {
            return Err(BuildError::Mismatch("L(-1) from the two conformal vectors".into()));
        }
        l_cols.push(coords_in(&via_formula, &b1, "L(-1)a")?);
    }
    let lminus1 = columns(l_cols, n1);

    let two_h = s.twice_h();
    let t_index = v0.index_of(&two_h).expect("2h in A");
    let t = unit_vector(n0, t_index);
    let t_state = FockVector::basis(b0[t_index].clone());
    let mut tm1 = Vec::with_capacity(n1);
    let mut ut = Vec::with_capacity(n1);
    for u in &basis1 {
        tm1.push(coords_in(&engine.exp_mode(&two_h, -1, u), &b1, "t(-1)u")?);
        ut.push(coords_in(&engine.iterate_mode(u, -1, &t_state), &b1, "u(-1)t")?);
    }
    let mut tm2 = Vec::with_capacity(n0);
    for a in &basis0 {
        tm2.push(coords_in(&engine.exp_mode(&two_h, -2, a), &b1, "t(-2)a")?);
    }
    let datum = TruncatedConformalDatum {
        v0: v0.algebra.clone(),
        t,
        v1,
        act0,
        pair1,
        lminus1,
        tminus1: columns(tm1, n1),
        uminus1_t: Some(columns(ut, n1)),
        tminus2: Some(columns(tm2, n1)),
    };
    datum.check_shapes()?;
    let central_charge = engine.central_charge(&vd.omega_prime);
    let shifted_central_charge = engine.central_charge(&vd.omega_h);
    Ok(LatticeShiftBundle {
        labels: v1_states.iter().map(|g| (g.conformal_weight, g.charge)).collect(),
        shift: s.clone(),
        v0,
        v1_states,
        datum,
        central_charge,
        shifted_central_charge,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LeibnizSummary {
    pub dim: usize,
    pub is_lie: bool,
    pub leibniz_kernel_dim: usize,
    pub tower: RadicalTower,
}

/// Analysis of a datum independent of how it was produced.
#[derive(Debug, Clone, Serialize)]
pub struct DatumReport {
    pub dim_v0: usize,
    pub dim_v1: usize,
    pub form: Matrix,
    pub axioms: Vec<AxiomCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trichotomy: Option<TrichotomyReport>,
    /// Set when the classification does not apply or fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trichotomy_note: Option<String>,
    /// For `dim V0 = 1`: `u(1)v = <u, v> 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_pairing: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levi_form: Option<LeviFormReport>,
    pub leibniz: LeibnizSummary,
    pub passed: bool,
}

pub fn analyze_datum(d: &TruncatedConformalDatum) -> Result<DatumReport, BuildError> {
    d.check_shapes()?;
    let axioms = verify_axioms(d);
    let (trichotomy, trichotomy_note) = match classify_trichotomy(d) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let gram = form(d);
    let classical_pairing = (d.dim0() == 1).then(|| {
        let unit = d.v0.unit();
        (0..d.dim1()).all(|i| {
            (0..d.dim1()).all(|j| {
                let p = d.pair1[i].column(j);
                p.iter().zip(unit).all(|(x, u)| *x == gram.get(i, j) * u / d.v0.form(unit, &d.t))
            })
        })
    });
    let levi_form = levi_form_check(d).ok();
    let classification_ok = d.dim0() == 1 || trichotomy.is_some();
    let passed = axioms.iter().all(|c| !c.failed())
        && classification_ok
        && classical_pairing.unwrap_or(true)
        && levi_form.as_ref().map_or(false, |l| l.nondegenerate || l.levi.is_zero());
    Ok(DatumReport {
        dim_v0: d.dim0(),
        dim_v1: d.dim1(),
        form: gram,
        axioms,
        trichotomy,
        trichotomy_note,
        classical_pairing,
        levi_form,
        leibniz: LeibnizSummary {
            dim: d.dim1(),
            is_lie: d.v1.is_lie(),
            leibniz_kernel_dim: leibniz_kernel(&d.v1).dim(),
            tower: radical_tower(&d.v1),
        },
        passed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub gram: Vec<Vec<i64>>,
    pub h: Vec<String>,
    pub set_a: Vec<Vec<i64>>,
    pub v0: FrobeniusAlgebra,
    pub de_rham: DeRhamReport,
    pub nu: i64,
    /// `ν = 2(h, h)`.
    pub nu_matches_shift: bool,
    /// The top eigenspace is spanned by `e^{2h}`.
    pub top_is_twice_h: bool,
    pub v1_states: Vec<GradedState>,
    pub central_charge: String,
    pub shifted_central_charge: String,
    pub datum: DatumReport,
    pub shifted_structure: ShiftedStructureReport,
    pub passed: bool,
}

pub fn lattice_report(b: &LatticeShiftBundle) -> Result<LatticeReport, BuildError> {
    let de_rham = de_rham_check(&b.v0.algebra, &b.v0.grading)?;
    let nu_matches_shift = q(de_rham.nu) == q(2) * b.shift.h_norm();
    let t_index = b.v0.index_of(&b.shift.twice_h()).expect("2h in A");
    let top_is_twice_h = de_rham.top_space == Subspace::span(b.v0.points.len(), &[unit_vector(b.v0.points.len(), t_index)])?;
    let datum = analyze_datum(&b.datum)?;
    // the weight-one space of a lattice theory is reductive
    let shifted_structure = shifted_structure_check(&b.datum, &b.labels, true)?;
    let passed = de_rham.all_pass() && nu_matches_shift && top_is_twice_h && datum.passed && shifted_structure.passed;
    Ok(LatticeReport {
        gram: b.shift.lattice().gram_entries().to_vec(),
        h: b.shift.h().iter().map(format_scalar).collect(),
        set_a: b.v0.points.clone(),
        v0: b.v0.algebra.clone(),
        nu: de_rham.nu,
        de_rham,
        nu_matches_shift,
        top_is_twice_h,
        v1_states: b.v1_states.clone(),
        central_charge: format_scalar(&b.central_charge),
        shifted_central_charge: format_scalar(&b.shifted_central_charge),
        datum,
        shifted_structure,
        passed,
    })
}

/// The default shifted lattices: `A1` with `h = α/2`, `A1 ⊕ A1` with
/// `h = (α1 + α2)/2`, and `<2k>` with `h = β/2` for `k = 2, 3`.
pub fn default_shifts() -> Vec<(String, ShiftDatum)> {
    vec![
        ("A1, h = a/2".into(), ShiftDatum::half_root(1)),
        ("A1+A1, h = (a1+a2)/2".into(), ShiftDatum::a1_squared_half()),
        ("<4>, h = b/2".into(), ShiftDatum::half_root(2)),
        ("<6>, h = b/2".into(), ShiftDatum::half_root(3)),
    ]
}
