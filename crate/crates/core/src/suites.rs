//! Property suites over the Fock engine and the algebraic analyzers. Each
//! suite counts its cases and keeps the first few counterexamples.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactla::{format_scalar, q, Scalar, Subspace};
use crate::fock::{
    binomial, graded_dimension_series, weight_space, Conformal, FockState, FockVector, ModeEngine, VirasoroDatum,
};
use crate::frobalg::jacobson_radical;
use crate::lattice::{EvenLattice, ShiftDatum};
use crate::leibniz::{levi_subalgebra, solvable_radical};
use crate::oracles::{random_commutative, random_lie, random_semidirect};

const MAX_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

struct Tally {
    name: String,
    cases: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.into(), cases: 0, failed: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(witness());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name, cases: self.cases, passed: self.failed == 0 && self.cases > 0, failures: self.failures }
    }
}

fn describe(s: &FockState) -> String {
    let heis: Vec<String> = s.heis.iter().map(|(n, d)| format!("a{d}(-{n})")).collect();
    format!("{}e^{:?}", heis.join(""), s.point)
}

/// Basis states of `L′`-weight at most `cap` of an unshifted lattice theory.
pub fn states_up_to(lattice: &EvenLattice, cap: i64) -> Vec<FockState> {
    let s = ShiftDatum::unshifted(lattice.clone());
    (0..=cap).flat_map(|n| weight_space(&s, n).into_iter().map(|g| g.state)).collect()
}

/// `[u(m), v(n)] w = Σ_i C(m, i) (u(i)v)(m+n−i) w` for all pairs of states of
/// weight at most 2 over `A1`, `|m|, |n| ≤ 2`, and test states up to `weight_cap`.
pub fn borcherds_commutator(weight_cap: i64) -> SuiteResult {
    let lat = EvenLattice::a1();
    let mut eng = ModeEngine::new(lat.clone());
    let states = states_up_to(&lat, 2);
    let tests: Vec<FockVector> = states_up_to(&lat, weight_cap).into_iter().map(FockVector::basis).collect();
    let mut t = Tally::new("borcherds_commutator");
    for su in &states {
        for sv in &states {
            let u = FockVector::basis(su.clone());
            let v = FockVector::basis(sv.clone());
            let top = eng.space().weight(su) + eng.space().weight(sv);
            let products: Vec<FockVector> = (0..=top).map(|i| eng.iterate_mode(&u, i, &v)).collect();
            for m in -2..=2i64 {
                for n in -2..=2i64 {
                    for w in &tests {
                        let vw = eng.iterate_mode(&v, n, w);
                        let uw = eng.iterate_mode(&u, m, w);
                        let lhs = eng.iterate_mode(&u, m, &vw).minus(&eng.iterate_mode(&v, n, &uw));
                        let mut rhs = FockVector::zero();
                        for (i, p) in products.iter().enumerate() {
                            if !p.is_zero() {
                                let term = eng.iterate_mode(p, m + n - i as i64, w);
                                rhs.add_scaled(&binomial(m, i as u32), &term);
                            }
                        }
                        t.check(lhs == rhs, || format!("u={} v={} m={m} n={n}", describe(su), describe(sv)));
                    }
                }
            }
        }
    }
    t.finish()
}

/// `u(0)v + v(0)u = L′(−1)(u(1)v)` for weight-one pairs of `A1` and `A1 ⊕ A1`.
pub fn skew_symmetry() -> SuiteResult {
    let mut t = Tally::new("skew_symmetry");
    for lat in [EvenLattice::a1(), EvenLattice::a1().orthogonal_sum(&EvenLattice::a1())] {
        let s = ShiftDatum::unshifted(lat.clone());
        let vd = VirasoroDatum::new(&s).expect("nondegenerate");
        let mut eng = ModeEngine::new(lat);
        let basis: Vec<FockState> = weight_space(&s, 1).into_iter().map(|g| g.state).collect();
        for su in &basis {
            for sv in &basis {
                let u = FockVector::basis(su.clone());
                let v = FockVector::basis(sv.clone());
                let lhs = eng.iterate_mode(&u, 0, &v).plus(&eng.iterate_mode(&v, 0, &u));
                let u1v = eng.iterate_mode(&u, 1, &v);
                let rhs = eng.virasoro_mode(&vd, -1, &u1v, Conformal::Standard);
                t.check(lhs == rhs, || format!("u={} v={}", describe(su), describe(sv)));
            }
        }
    }
    t.finish()
}

/// `(L′(−1)a)(n) = −n a(n−1)` on `A1` states of weight at most 2.
pub fn translation_covariance(weight_cap: i64) -> SuiteResult {
    let lat = EvenLattice::a1();
    let s = ShiftDatum::unshifted(lat.clone());
    let vd = VirasoroDatum::new(&s).expect("nondegenerate");
    let mut eng = ModeEngine::new(lat.clone());
    let tests: Vec<FockVector> = states_up_to(&lat, weight_cap).into_iter().map(FockVector::basis).collect();
    let mut t = Tally::new("translation_covariance");
    for sa in states_up_to(&lat, 2) {
        let a = FockVector::basis(sa.clone());
        let da = eng.virasoro_mode(&vd, -1, &a, Conformal::Standard);
        for n in -2..=2i64 {
            for w in &tests {
                let lhs = eng.iterate_mode(&da, n, w);
                let rhs = eng.iterate_mode(&a, n - 1, w).scaled(&q(-n));
                t.check(lhs == rhs, || format!("a={} n={n}", describe(&sa)));
            }
        }
    }
    t.finish()
}

/// Central charges reported by the Virasoro suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VirasoroSuite {
    pub result: SuiteResult,
    #[serde(with = "crate::exactla::scalar_serde")]
    pub standard_central_charge: Scalar,
    #[serde(with = "crate::exactla::scalar_serde")]
    pub shifted_central_charge: Scalar,
}

/// `[L(m), L(n)] = (m−n) L(m+n) + (m³−m)/12 c δ_{m+n,0}` for `ω′` and `ω_h`
/// on the `A1` shift `h = α/2`, with `c` computed from `ω(3)ω`. Also checks
/// `L_h(n) = L′(n) − (n+1) h(n)` against the modes of `ω_h` itself.
pub fn virasoro_relations(weight_cap: i64) -> VirasoroSuite {
    let s = ShiftDatum::half_root(1);
    let vd = VirasoroDatum::new(&s).expect("nondegenerate");
    let mut eng = ModeEngine::new(s.lattice().clone());
    let c_std = eng.central_charge(&vd.omega_prime);
    let c_sh = eng.central_charge(&vd.omega_h);
    let tests: Vec<FockVector> =
        (0..=weight_cap).flat_map(|n| weight_space(&s, n)).map(|g| FockVector::basis(g.state)).collect();
    let mut t = Tally::new("virasoro_relations");
    for (which, c) in [(Conformal::Standard, &c_std), (Conformal::Shifted, &c_sh)] {
        for m in -2..=2i64 {
            for n in -2..=2i64 {
                for w in &tests {
                    let lnw = eng.virasoro_mode(&vd, n, w, which);
                    let lmw = eng.virasoro_mode(&vd, m, w, which);
                    let lhs = eng
                        .virasoro_mode(&vd, m, &lnw, which)
                        .minus(&eng.virasoro_mode(&vd, n, &lmw, which));
                    let mut rhs = eng.virasoro_mode(&vd, m + n, w, which).scaled(&q(m - n));
                    if m + n == 0 {
                        let anomaly = q(m * m * m - m) * c / q(12);
                        rhs.add_scaled(&anomaly, w);
                    }
                    t.check(lhs == rhs, || format!("{which:?} m={m} n={n}"));
                }
            }
        }
    }
    for n in -2..=2i64 {
        for w in &tests {
            let a = eng.virasoro_mode(&vd, n, w, Conformal::Shifted);
            let b = eng.shifted_virasoro_direct(&vd, n, w);
            t.check(a == b, || format!("shifted mode {n} disagrees with the modes of omega_h"));
        }
    }
    VirasoroSuite { result: t.finish(), standard_central_charge: c_std, shifted_central_charge: c_sh }
}

/// `L_h(0)` acts on `α(−n1)···e^β` by `n + ½(β,β) − (h,β)` with `n = Σ n_i`;
/// checked on the first `count` states of the default shifts in weight order.
pub fn shifted_weight_formula(shifts: &[ShiftDatum], count: usize) -> SuiteResult {
    let mut t = Tally::new("shifted_weight_formula");
    'outer: for s in shifts {
        let vd = VirasoroDatum::new(s).expect("nondegenerate");
        let mut eng = ModeEngine::new(s.lattice().clone());
        for wt in 0..=8i64 {
            for g in weight_space(s, wt) {
                if t.cases as usize >= count {
                    break 'outer;
                }
                let st = &g.state;
                let formula = q(st.degree() as i64) + q(s.lattice().inner_int(&st.point, &st.point)) / q(2) - q(s.charge(&st.point));
                let v = FockVector::basis(st.clone());
                let image = eng.virasoro_mode(&vd, 0, &v, Conformal::Shifted);
                let ok = image == v.scaled(&formula) && formula == q(wt);
                t.check(ok, || format!("{} expected {}", describe(st), format_scalar(&formula)));
            }
        }
    }
    t.finish()
}

/// On unshifted `V_{A1}`, weight-one states close into the affine algebra:
/// `[u(m), v(n)] = (u(0)v)(m+n) + m (u,v) δ_{m+n,0}` with `u(1)v = (u,v) 1`.
pub fn affine_closure(weight_cap: i64) -> SuiteResult {
    let lat = EvenLattice::a1();
    let s = ShiftDatum::unshifted(lat.clone());
    let mut eng = ModeEngine::new(lat.clone());
    let triple: Vec<FockState> = weight_space(&s, 1).into_iter().map(|g| g.state).collect();
    let vacuum = FockState::vacuum(1);
    let tests: Vec<FockVector> = states_up_to(&lat, weight_cap).into_iter().map(FockVector::basis).collect();
    let mut t = Tally::new("affine_closure");
    t.check(triple.len() == 3, || format!("weight-one space has dimension {}", triple.len()));
    for su in &triple {
        for sv in &triple {
            let u = FockVector::basis(su.clone());
            let v = FockVector::basis(sv.clone());
            let bracket = eng.iterate_mode(&u, 0, &v);
            let pairing_vec = eng.iterate_mode(&u, 1, &v);
            let pairing = pairing_vec.coefficient(&vacuum);
            t.check(pairing_vec == FockVector::term(vacuum.clone(), pairing.clone()), || {
                format!("u(1)v is not a multiple of the vacuum for u={} v={}", describe(su), describe(sv))
            });
            t.check(bracket.states().all(|st| eng.space().weight(st) == 1), || {
                format!("u(0)v leaves weight one for u={} v={}", describe(su), describe(sv))
            });
            for m in -2..=2i64 {
                for n in -2..=2i64 {
                    for w in &tests {
                        let vw = eng.iterate_mode(&v, n, w);
                        let uw = eng.iterate_mode(&u, m, w);
                        let lhs = eng.iterate_mode(&u, m, &vw).minus(&eng.iterate_mode(&v, n, &uw));
                        let mut rhs = eng.iterate_mode(&bracket, m + n, w);
                        if m + n == 0 {
                            rhs.add_scaled(&(q(m) * &pairing), w);
                        }
                        t.check(lhs == rhs, || format!("u={} v={} m={m} n={n}", describe(su), describe(sv)));
                    }
                }
            }
        }
    }
    t.finish()
}

/// Jacobson radical against planted nilradicals, plus nilpotency of every
/// radical basis element and the ideal property.
pub fn jacobson_oracle(seed: u64, trials: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("jacobson_radical_oracle");
    for trial in 0..trials {
        let p = random_commutative(&mut rng, 6);
        let a = &p.algebra;
        let j = jacobson_radical(a);
        let n = a.dim();
        let nilpotent = j.basis_vectors().iter().all(|x| a.power(x, n).iter().all(Zero::is_zero));
        let ideal = j
            .basis_vectors()
            .iter()
            .all(|x| (0..n).all(|i| j.contains(&a.mul(x, &crate::exactla::unit_vector(n, i))).unwrap_or(false)));
        t.check(j == p.radical && nilpotent && ideal, || {
            format!("trial {trial} ({}): dim J = {}, planted {}", p.description, j.dim(), p.radical.dim())
        });
    }
    t.finish()
}

/// Solvable radical against planted radicals; the computed radical must be a
/// solvable ideal.
pub fn solvable_oracle(seed: u64, trials: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("solvable_radical_oracle");
    for trial in 0..trials {
        let p = random_lie(&mut rng, 5);
        let b = solvable_radical(&p.algebra);
        let solvable = p.algebra.derived_series_of(&b).last().is_some_and(Subspace::is_zero);
        let ideal = p.algebra.is_two_sided_ideal(&b);
        t.check(b == p.radical && solvable && ideal, || {
            format!("trial {trial} ({}): dim B = {}, planted {}", p.description, b.dim(), p.radical.dim())
        });
    }
    t.finish()
}

/// Levi subalgebra post-conditions on semidirect products `sl2 ⋉ V`.
pub fn levi_oracle(seed: u64, trials: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("levi_subalgebra_oracle");
    for trial in 0..trials {
        let p = random_semidirect(&mut rng, 4);
        let l = &p.algebra;
        let b = solvable_radical(l);
        let outcome = levi_subalgebra(l).map(|s| {
            let sub = l.is_subalgebra(&s);
            let killing_ok = l
                .subalgebra(&s)
                .ok()
                .and_then(|alg| alg.killing_form().determinant().ok())
                .is_some_and(|d| !d.is_zero());
            let complement = s.intersect(&b).is_ok_and(|i| i.is_zero()) && s.dim() + b.dim() == l.dim() && s.dim() == p.levi_dim;
            (sub, killing_ok, complement)
        });
        let ok = matches!(outcome, Ok((true, true, true)));
        t.check(ok, || format!("trial {trial} ({}): {outcome:?}", p.description));
    }
    t.finish()
}

/// `graded_dimension_series` against direct enumeration for `n ≤ 4`, and
/// `dim V1 = 3` for unshifted `A1`.
pub fn character_check(shifts: &[ShiftDatum]) -> SuiteResult {
    let mut t = Tally::new("character_check");
    let mut all: Vec<ShiftDatum> = shifts.to_vec();
    all.push(ShiftDatum::unshifted(EvenLattice::a1()));
    for s in &all {
        let series = graded_dimension_series(s, 4);
        for (n, d) in series.iter().enumerate() {
            let count = weight_space(s, n as i64).len() as u64;
            t.check(*d == count, || format!("h={:?} n={n}: series {d}, enumeration {count}", s.h()));
        }
    }
    let unshifted = graded_dimension_series(&ShiftDatum::unshifted(EvenLattice::a1()), 1);
    t.check(unshifted[1] == 3, || format!("dim V1 of unshifted A1 is {}", unshifted[1]));
    t.finish()
}

/// All property suites with the given seed and Fock depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub weight_cap: i64,
    pub suites: Vec<SuiteResult>,
    #[serde(with = "crate::exactla::scalar_serde")]
    pub standard_central_charge: Scalar,
    #[serde(with = "crate::exactla::scalar_serde")]
    pub shifted_central_charge: Scalar,
    pub passed: bool,
}

pub fn run_all(seed: u64, weight_cap: i64, shifts: &[ShiftDatum]) -> SuiteReport {
    let vir = virasoro_relations(weight_cap);
    let suites = vec![
        borcherds_commutator(weight_cap),
        skew_symmetry(),
        translation_covariance(weight_cap),
        vir.result,
        shifted_weight_formula(shifts, 50),
        affine_closure(weight_cap),
        jacobson_oracle(seed, 100),
        solvable_oracle(seed.wrapping_add(1), 100),
        levi_oracle(seed.wrapping_add(2), 20),
        character_check(shifts),
    ];
    let passed = suites.iter().all(|s| s.passed);
    SuiteReport {
        seed,
        weight_cap,
        suites,
        standard_central_charge: vir.standard_central_charge,
        shifted_central_charge: vir.shifted_central_charge,
        passed,
    }
}
