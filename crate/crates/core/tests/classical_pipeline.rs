use std::collections::BTreeSet;

use quiverconf::bijection::{
    classical_quotient, classify_d, phi, phi1, phi2, psi, psi1, psi2, star, verify_bijection, DClass,
};
use quiverconf::brauer::{enumerate, m_cross, m_sym, motzkin, Family};
use quiverconf::config::{
    attach_configuration, brute_force_configurations, count_mod_tau, descend_configuration,
    enumerate_configurations, is_configuration, lift_configuration, Configuration, SearchOptions,
};
use quiverconf::hom::HomData;
use quiverconf::{build_dynkin, build_z_window, DynkinKind};

fn configs(kind: DynkinKind, n: usize) -> (quiverconf::TranslationQuiver, HomData, Vec<Configuration>) {
    let q = classical_quotient(kind, n).unwrap();
    let hom = HomData::compute(&q).unwrap();
    let c = enumerate_configurations(&q, &hom, SearchOptions::default()).unwrap();
    (q, hom, c)
}

#[test]
fn type_a_counts_and_brute_force() {
    for n in 1..=6 {
        let (q, hom, c) = configs(DynkinKind::A, n);
        assert_eq!(num_traits::cast::ToPrimitive::to_usize(&motzkin(n)).unwrap(), c.len(), "n={n}");
        if n <= 4 {
            assert!(q.len() <= 20);
            assert_eq!(brute_force_configurations(&q, &hom).unwrap(), c);
        }
        for x in &c {
            assert_eq!(psi(&q, &phi(&q, x).unwrap()).unwrap(), *x);
        }
    }
}

#[test]
fn type_bc_counts() {
    for kind in [DynkinKind::B, DynkinKind::C] {
        for n in 2..=4 {
            let (q, _, c) = configs(kind, n);
            assert_eq!(BTreeSet::from_iter(c.iter().cloned()).len(), c.len());
            assert_eq!(m_sym(n), c.len().into(), "{} n={n}", q.name());
            let images: BTreeSet<_> = c.iter().map(|x| phi(&q, x).unwrap()).collect();
            let relations: BTreeSet<_> = enumerate(Family::Symmetric, n).into_iter().collect();
            assert_eq!(images, relations);
        }
    }
}

#[test]
fn type_d_splits_into_two_classes() {
    for n in 2..=4 {
        let (q, _, c) = configs(DynkinKind::D, n);
        let (first, second): (Vec<_>, Vec<_>) =
            c.iter().partition(|x| classify_d(&q, x).unwrap() == DClass::First);
        assert_eq!(m_sym(n), first.len().into());
        assert_eq!(m_cross(n) * 2u32, second.len().into());
        for x in &first {
            assert_eq!(psi1(&q, &phi1(&q, x).unwrap()).unwrap(), **x);
        }
        for x in &second {
            let s = star(&q, x).unwrap();
            assert_ne!(s, **x, "star has a fixed point");
            assert!(c.contains(&s));
            assert_eq!(phi2(&q, x).unwrap(), phi2(&q, &s).unwrap());
            let (a, b) = psi2(&q, &phi2(&q, x).unwrap()).unwrap();
            assert!(a == **x || b == **x);
        }
    }
}

#[test]
fn d4_listing_has_seven_members() {
    let (q, _, c) = configs(DynkinKind::D, 2);
    assert_eq!(c.len(), 7);
    assert_eq!(count_mod_tau(&q, &c).unwrap(), 5);
    let crossing = enumerate(Family::Crossing, 2);
    let (a, b) = psi2(&q, &crossing[0]).unwrap();
    assert_eq!(star(&q, &a).unwrap(), b);
}

#[test]
fn bijection_reports_are_clean() {
    for (kind, range) in [(DynkinKind::A, 1..=6), (DynkinKind::B, 2..=4), (DynkinKind::C, 2..=4), (DynkinKind::D, 2..=4)] {
        for n in range {
            let r = verify_bijection(kind, n, SearchOptions::default()).unwrap();
            assert!(r.ok(), "{kind} {n}: {:?}", r.failures);
        }
    }
}

#[test]
fn every_listed_set_revalidates_and_attaches() {
    for (kind, n) in [(DynkinKind::A, 4), (DynkinKind::B, 3), (DynkinKind::D, 3)] {
        let (q, hom, c) = configs(kind, n);
        for x in &c {
            assert!(is_configuration(&q, &hom, &x.members).unwrap().verdict);
            let qc = attach_configuration(&q, x).unwrap();
            assert_eq!(qc.len(), q.len() + x.len());
            assert!(qc.translation_identity_violations().is_empty());
        }
    }
}

#[test]
fn lift_and_descend_round_trip() {
    let (q, _, c) = configs(DynkinKind::A, 3);
    let d = build_dynkin(DynkinKind::A, 4).unwrap();
    let window = build_z_window(&d, 0, 9).unwrap();
    for x in &c {
        let lifted = lift_configuration(&window, &q, x).unwrap();
        assert_eq!(descend_configuration(&window, &q, &lifted).unwrap(), *x);
    }
}
