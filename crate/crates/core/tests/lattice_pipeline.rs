use voa_forge::examples::{build_lattice_shift, default_shifts, lattice_report};
use voa_forge::exactla::{q, unit_vector, Subspace};
use voa_forge::fock::{graded_dimension_series, weight_space};
use voa_forge::frobalg::minimal_ideal;
use voa_forge::lattice::{enumerate_a, EvenLattice, ShiftDatum};
use voa_forge::onetrunc::{ann_t, radical, CheckStatus, TrichotomyCase};

#[test]
fn every_default_shift_passes_the_full_report() {
    for (name, s) in default_shifts() {
        let b = build_lattice_shift(&s).unwrap();
        let r = lattice_report(&b).unwrap();
        assert!(r.passed, "{name}: {}", serde_json::to_string_pretty(&r).unwrap());
        assert_eq!(r.datum.trichotomy.as_ref().unwrap().case, TrichotomyCase::I, "{name}");
        assert_eq!(q(r.nu), q(2) * s.h_norm(), "{name}");
        for c in &r.datum.axioms {
            assert_eq!(c.status, CheckStatus::Pass, "{name}: {}", c.name);
        }
    }
}

#[test]
fn set_a_and_minimal_ideal() {
    for (name, s) in default_shifts() {
        let a = enumerate_a(&s);
        let expected = if s.rank() == 1 { 2 } else { 4 };
        assert_eq!(a.len(), expected, "{name}");
        let b = build_lattice_shift(&s).unwrap();
        let t = b.v0.index_of(&s.twice_h()).unwrap();
        let n = a.len();
        assert_eq!(minimal_ideal(&b.v0.algebra).unwrap(), Subspace::span(n, &[unit_vector(n, t)]).unwrap());
    }
}

#[test]
fn shifted_equalities_hold() {
    for (name, s) in default_shifts() {
        let b = build_lattice_shift(&s).unwrap();
        let r = lattice_report(&b).unwrap();
        let st = &r.shifted_structure;
        assert_eq!(st.n1, st.upper, "{name}");
        assert_eq!(st.upper, ann_t(&b.datum), "{name}");
        assert_eq!(ann_t(&b.datum), radical(&b.datum), "{name}");
    }
}

#[test]
fn dimensions_of_small_bundles() {
    let b = build_lattice_shift(&ShiftDatum::a1_squared_half()).unwrap();
    assert_eq!(b.datum.dim0(), 4);
    assert_eq!(b.datum.dim1(), 8);
    let b = build_lattice_shift(&ShiftDatum::half_root(3)).unwrap();
    assert_eq!(b.datum.dim1(), 2);
    let b = build_lattice_shift(&ShiftDatum::unshifted(EvenLattice::a1())).unwrap();
    assert_eq!((b.datum.dim0(), b.datum.dim1()), (1, 3));
}

#[test]
fn characters_match_enumeration() {
    let mut shifts: Vec<ShiftDatum> = default_shifts().into_iter().map(|(_, s)| s).collect();
    shifts.push(ShiftDatum::unshifted(EvenLattice::a1()));
    shifts.push(ShiftDatum::unshifted(EvenLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()));
    for s in shifts {
        let series = graded_dimension_series(&s, 4);
        for (n, d) in series.iter().enumerate() {
            assert_eq!(*d as usize, weight_space(&s, n as i64).len());
        }
    }
    assert_eq!(graded_dimension_series(&ShiftDatum::unshifted(EvenLattice::a1()), 1)[1], 3);
}

#[test]
fn central_charges_follow_the_shift_norm() {
    for (name, s) in default_shifts() {
        let b = build_lattice_shift(&s).unwrap();
        let rank = q(s.rank() as i64);
        assert_eq!(b.central_charge, rank, "{name}");
        assert_eq!(b.shifted_central_charge, rank - q(12) * s.h_norm(), "{name}");
    }
}
