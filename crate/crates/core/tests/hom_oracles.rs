use quiverconf::hom::{h_table, omega, verify_sign_pattern, HomData, ZCover};
use quiverconf::oracle::rectangle_h;
use quiverconf::verify::{classical_quotients, omega_equivariance_violations, omega_label_violations, oracle_violations, quotient_sum_violations};
use quiverconf::{build_dynkin, DynkinKind};

#[test]
fn rectangle_rule_for_type_a_up_to_n8() {
    for n in 1..=8 {
        let d = build_dynkin(DynkinKind::A, n + 1).unwrap();
        assert_eq!(oracle_violations(&d).unwrap(), 0, "A{}", n + 1);
    }
}

#[test]
fn rectangle_values_are_zero_or_one() {
    let d = build_dynkin(DynkinKind::A, 6).unwrap();
    let cover = ZCover::new(&d);
    let t = h_table(&cover, (0, 2)).unwrap();
    assert!(t.totals.iter().all(|(_, k)| k == 1));
    assert_eq!(rectangle_h(&d, t.omega, (0, 2)).unwrap(), 1);
}

#[test]
fn regions_for_types_b_c_d_up_to_n6() {
    for n in 1..=6 {
        assert_eq!(oracle_violations(&build_dynkin(DynkinKind::B, n + 1).unwrap()).unwrap(), 0, "B{}", n + 1);
    }
    for n in 2..=6 {
        assert_eq!(oracle_violations(&build_dynkin(DynkinKind::C, n + 1).unwrap()).unwrap(), 0, "C{}", n + 1);
        assert_eq!(oracle_violations(&build_dynkin(DynkinKind::D, n + 2).unwrap()).unwrap(), 0, "D{}", n + 2);
    }
}

#[test]
fn omega_label_identities() {
    for (kind, offset) in [(DynkinKind::A, 1), (DynkinKind::B, 1), (DynkinKind::C, 1), (DynkinKind::D, 2)] {
        for n in 2..=6 {
            let d = build_dynkin(kind, n + offset).unwrap();
            assert!(omega_label_violations(&d).unwrap().is_empty(), "{}", d.name());
        }
    }
}

#[test]
fn omega_is_the_unit_vertex_of_h() {
    for kind in DynkinKind::ALL {
        let d = build_dynkin(kind, kind.fixed_rank().unwrap_or(5)).unwrap();
        let cover = ZCover::new(&d);
        for v in 0..d.rank {
            let (w, m) = omega(&cover, (0, v)).unwrap();
            let t = h_table(&cover, (0, v)).unwrap();
            assert_eq!(t.h(w), 1);
            assert!(t.h((0, v)) >= 1);
            assert_eq!(t.m, m);
            assert!(verify_sign_pattern(&cover, (0, v)).unwrap());
        }
    }
}

#[test]
fn quotient_sums_on_classical_quotients() {
    for q in classical_quotients().unwrap() {
        let hom = HomData::compute(&q).unwrap();
        assert!(quotient_sum_violations(&q, &hom).unwrap().is_empty(), "{}", q.name());
        assert!(omega_equivariance_violations(&q, &hom).unwrap().is_empty(), "{}", q.name());
    }
}

#[test]
fn quotient_sums_on_exceptional_quotients() {
    for kind in quiverconf::exceptional::EXCEPTIONAL_KINDS {
        let q = quiverconf::exceptional::job(kind).unwrap().quiver().unwrap();
        let hom = HomData::compute(&q).unwrap();
        assert!(quotient_sum_violations(&q, &hom).unwrap().is_empty(), "{}", q.name());
        assert!(omega_equivariance_violations(&q, &hom).unwrap().is_empty(), "{}", q.name());
        for x in 0..q.len() {
            let w = q.project(omega(&ZCover::new(q.diagram()), q.position(x).unwrap()).unwrap().0).unwrap();
            assert_eq!(hom.omega[x], w);
        }
    }
}

#[test]
fn corrupted_valuation_breaks_the_sign_pattern_somewhere() {
    let q = quiverconf::bijection::classical_quotient(DynkinKind::D, 3).unwrap();
    let bad = q.with_altered_valuation(0, 3);
    let broken = (0..bad.len()).any(|x| !matches!(verify_sign_pattern(&bad, x), Ok(true)));
    assert!(broken);
}
