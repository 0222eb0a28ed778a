//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use voa_forge::examples::{build_lattice_shift, build_sl2, check_sl2_selfdual, default_shifts, lattice_report};
use voa_forge::exactla::{q, unit_vector, Scalar, Subspace};
use voa_forge::fock::{FockSpace, FockState, FockVector};
use voa_forge::frobalg::{de_rham_check, is_local, minimal_ideal, verify_frobenius};
use voa_forge::lattice::{enumerate_a, EvenLattice, ShiftDatum};
use voa_forge::onetrunc::{ann_t, classify_trichotomy, radical, verify_axioms, CheckStatus, TrichotomyCase};
use voa_forge::suites::{
    affine_closure, borcherds_commutator, character_check, jacobson_oracle, levi_oracle, shifted_weight_formula,
    skew_symmetry, solvable_oracle, translation_covariance, virasoro_relations, SuiteResult,
};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(r: SuiteResult) -> Outcome {
    ensure(r.passed, || format!("{}: {:?}", r.name, r.failures))
}

fn shifts() -> Vec<(String, ShiftDatum)> {
    default_shifts()
}

fn sl2_shift() -> Outcome {
    for k in 1..=5i64 {
        let m = build_sl2(k).map_err(|e| e.to_string())?;
        let n = k as usize + 1;
        let a = &m.v0;
        ensure(a.dim() == n, || format!("k={k}: dim V0 = {}", a.dim()))?;
        ensure(verify_frobenius(a) && is_local(a), || format!("k={k}: not a local Frobenius algebra"))?;
        // basis e_p = x^p with x = e_1, and x^{k+1} = 0
        let x = unit_vector(n, 1.min(n - 1));
        let mut power = unit_vector(n, 0);
        for p in 0..=n {
            let want = if p < n { unit_vector(n, p) } else { vec![q(0); n] };
            ensure(power == want, || format!("k={k}: x^{p} is not the {p}-th basis vector"))?;
            power = a.mul(&power, &x);
        }
        for p in 0..n {
            for r in 0..n {
                let want = if p + r == k as usize { q(1) } else { q(0) };
                ensure(a.form(&unit_vector(n, p), &unit_vector(n, r)) == want, || {
                    format!("k={k}: pairing (x^{p}, x^{r})")
                })?;
            }
        }
        let dr = de_rham_check(a, &m.grading()).map_err(|e| e.to_string())?;
        ensure(dr.all_pass() && dr.nu == k, || format!("k={k}: de Rham {dr:?}"))?;
        ensure(check_sl2_selfdual(&m), || format!("k={k}: self-duality"))?;
        let image = voa_forge::exactla::image(&m.lh1);
        ensure(image.codim() == 1 && !image.contains(&unit_vector(n, n - 1)).unwrap_or(true), || {
            format!("k={k}: image of L_H(1)")
        })?;
        let mut tampered = m.clone();
        for r in 0..n {
            tampered.lh1.set(r, 0, if r == n - 1 { q(1) } else { q(0) });
        }
        ensure(!check_sl2_selfdual(&tampered), || format!("k={k}: tampered model accepted"))?;
    }
    Ok(())
}

fn cocycle_sign(g: &EvenLattice, a: &[i64], b: &[i64]) -> i64 {
    let mut e = 0;
    for i in 0..a.len() {
        for j in 0..i {
            e += a[i] * b[j] * g.gram_entries()[i][j];
        }
    }
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn box_scan_a(s: &ShiftDatum) -> Vec<Vec<i64>> {
    let d = s.rank();
    let mut out = Vec::new();
    let total = 7usize.pow(d as u32);
    for code in 0..total {
        let beta: Vec<i64> = (0..d).map(|i| (code / 7usize.pow(i as u32) % 7) as i64 - 3).collect();
        let norm = q(s.lattice().inner_int(&beta, &beta));
        let twice_h: Vec<Scalar> = s.h().iter().map(|x| x * q(2)).collect();
        let beta_q: Vec<Scalar> = beta.iter().map(|&x| q(x)).collect();
        if norm == s.lattice().inner(&twice_h, &beta_q) {
            out.push(beta);
        }
    }
    out.sort();
    out
}

fn lattice_shifts() -> Outcome {
    for (name, s) in shifts() {
        let start = Instant::now();
        let a = enumerate_a(&s);
        let expected_len = if s.rank() == 1 { 2 } else { 4 };
        ensure(a.len() == expected_len && a == box_scan_a(&s), || format!("{name}: A = {a:?}"))?;
        ensure(a.contains(&vec![0; s.rank()]) && a.contains(&s.twice_h()), || format!("{name}: 0 or 2h missing"))?;
        let b = build_lattice_shift(&s).map_err(|e| format!("{name}: {e}"))?;
        let pts = &b.v0.points;
        let n = pts.len();
        let fock = FockSpace::new(s.lattice().clone());
        for (i, x) in pts.iter().enumerate() {
            for (j, y) in pts.iter().enumerate() {
                let prod = b.v0.algebra.mul(&unit_vector(n, i), &unit_vector(n, j));
                let sum: Vec<i64> = x.iter().zip(y).map(|(u, v)| u + v).collect();
                let mut symbolic = vec![q(0); n];
                if let Some(k) = pts.iter().position(|p| *p == sum) {
                    symbolic[k] = q(cocycle_sign(s.lattice(), x, y));
                }
                let via_modes = fock.exp_mode(x, -1, &FockVector::basis(FockState::exponential(y.clone())));
                let mut modes = vec![q(0); n];
                for (st, c) in via_modes.iter() {
                    match pts.iter().position(|p| *p == st.point) {
                        Some(k) if st.heis.is_empty() => modes[k] = c.clone(),
                        _ => return Err(format!("{name}: e^{x:?}(-1)e^{y:?} leaves V0")),
                    }
                }
                ensure(prod == symbolic && prod == modes, || format!("{name}: product e^{x:?} e^{y:?}"))?;
            }
        }
        let t = pts.iter().position(|p| *p == s.twice_h()).expect("2h in A");
        let ideal = minimal_ideal(&b.v0.algebra).map_err(|e| e.to_string())?;
        ensure(ideal == Subspace::span(n, &[unit_vector(n, t)]).unwrap(), || format!("{name}: minimal ideal"))?;
        let dr = de_rham_check(&b.v0.algebra, &b.v0.grading).map_err(|e| e.to_string())?;
        ensure(dr.all_pass() && q(dr.nu) == q(2) * s.h_norm(), || format!("{name}: de Rham {dr:?}"))?;
        ensure(start.elapsed() < Duration::from_secs(5), || format!("{name}: took {:?}", start.elapsed()))?;
    }
    Ok(())
}

fn shifted_equalities() -> Outcome {
    for (name, s) in shifts() {
        let b = build_lattice_shift(&s).map_err(|e| e.to_string())?;
        let r = lattice_report(&b).map_err(|e| e.to_string())?;
        let st = &r.shifted_structure;
        let rad = radical(&b.datum);
        let ann = ann_t(&b.datum);
        ensure(st.n1 == st.upper && st.upper == ann && ann == rad, || {
            format!("{name}: N1 {}, upper {}, ann {}, rad {}", st.n1.dim(), st.upper.dim(), ann.dim(), rad.dim())
        })?;
        let case = classify_trichotomy(&b.datum).map_err(|e| e.to_string())?.case;
        ensure(case == TrichotomyCase::I, || format!("{name}: case {case:?}"))?;
    }
    Ok(())
}

fn lemma_suite() -> Outcome {
    const REQUIRED: [&str; 7] = [
        "translations_in_radical",
        "form_symmetric",
        "form_invariant",
        "p_characterizations_agree",
        "m_ann_equals_m_rad",
        "m_codimension_one",
        "t_minus_two_kills_radical",
    ];
    for (name, s) in shifts() {
        let b = build_lattice_shift(&s).map_err(|e| e.to_string())?;
        let checks = verify_axioms(&b.datum);
        for req in REQUIRED {
            let c = checks.iter().find(|c| c.name == req).ok_or_else(|| format!("{name}: {req} missing"))?;
            ensure(c.status == CheckStatus::Pass, || format!("{name}: {req} {:?} {:?}", c.status, c.witness))?;
        }
        ensure(checks.iter().all(|c| c.status != CheckStatus::Fail), || format!("{name}: some axiom fails"))?;
    }
    Ok(())
}

fn fock_suite() -> Outcome {
    suite(borcherds_commutator(2))?;
    suite(skew_symmetry())?;
    suite(translation_covariance(2))?;
    let vir = virasoro_relations(2);
    ensure(vir.standard_central_charge == q(1), || format!("c' = {}", vir.standard_central_charge))?;
    suite(vir.result)?;
    let s: Vec<ShiftDatum> = shifts().into_iter().map(|(_, s)| s).collect();
    let w = shifted_weight_formula(&s, 50);
    ensure(w.cases == 50, || format!("only {} states", w.cases))?;
    suite(w)
}

fn affine() -> Outcome {
    suite(affine_closure(2))
}

fn oracles() -> Outcome {
    suite(jacobson_oracle(2024, 100))?;
    suite(solvable_oracle(2025, 100))?;
    suite(levi_oracle(2026, 20))
}

fn characters() -> Outcome {
    let s: Vec<ShiftDatum> = shifts().into_iter().map(|(_, s)| s).collect();
    suite(character_check(&s))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_voa-forge"))
            .args(["report", "--output", "json", "--seed", "17"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.code() == Some(0), || format!("exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr)))?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "outputs differ".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("sl2 shift models, levels 1..5", sl2_shift, 1),
        ("lattice shifts: set A, V0 product, minimal ideal, de Rham", lattice_shifts, 20),
        ("shifted equalities N1 = upper = Ann(t(-1)) = rad, case (i)", shifted_equalities, 60),
        ("lemma suite on Fock-built data", lemma_suite, 60),
        ("Fock engine property suite", fock_suite, 30),
        ("affine closure on unshifted A1", affine, 60),
        ("algebraic oracles", oracles, 60),
        ("character cross-check", characters, 60),
        ("determinism of the CLI report", determinism, 120),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(*limit) {
            outcome = Err(format!("exceeded {limit}s"));
        }
        match outcome {
            Ok(()) => println!("criterion {} PASS  {name} ({:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({:.2}s): {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
