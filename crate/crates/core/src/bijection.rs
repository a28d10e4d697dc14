//! Configurations of the classical quotients and 2-Brauer relations.
//!
//! A configuration is read through its labels: each `[j i]` in `C` pairs
//! `i` with `j`. Conversely a relation `σ` gives the labels `[i σ(i)]` that
//! name vertices; in type D a diameter `i ~ i+n` carries signs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::brauer::{enumerate, BrauerRelation, Family};
use crate::config::{enumerate_configurations, Configuration, SearchOptions};
use crate::dynkin::{build_dynkin, DynkinKind};
use crate::error::{Error, Result};
use crate::hom::HomData;
use crate::labels::{LabelScheme, Sign, VertexLabel};
use crate::quiver::{build_quotient, GroupSpec, TranslationQuiver};

/// `ZA_{n+1}/<τ^n>` or `ZX/<τ^{2n}>` for `X = B_{n+1}, C_{n+1}, D_{n+2}`.
pub fn classical_quotient(kind: DynkinKind, n: usize) -> Result<TranslationQuiver> {
    let (rank, shift) = match kind {
        DynkinKind::A => (n + 1, n),
        DynkinKind::B | DynkinKind::C => (n + 1, 2 * n),
        DynkinKind::D => (n + 2, 2 * n),
        other => return Err(Error::NotClassicalType(other)),
    };
    build_quotient(&build_dynkin(kind, rank)?, GroupSpec::tau(shift as u32)?)
}

fn scheme(q: &TranslationQuiver) -> Result<LabelScheme> {
    LabelScheme::new(q.diagram())
}

/// The involution generated by `i ~ j` for `[j i] ∈ C`.
fn generated_sigma(points: usize, labels: &BTreeSet<VertexLabel>) -> Result<Vec<usize>> {
    let mut sigma: Vec<usize> = (0..points).collect();
    for l in labels {
        let (a, b) = (l.i as usize - 1, l.j as usize - 1);
        if a == b {
            continue;
        }
        for (x, y) in [(a, b), (b, a)] {
            if sigma[x] != x && sigma[x] != y {
                return Err(Error::InvalidConfiguration(format!("point {} is paired twice", x + 1)));
            }
            sigma[x] = y;
        }
    }
    Ok(sigma)
}

/// `Φ` for types A, B, C: the relation generated by the member labels.
pub fn phi(q: &TranslationQuiver, c: &Configuration) -> Result<BrauerRelation> {
    let s = scheme(q)?;
    let family = match q.diagram().kind {
        DynkinKind::A => Family::Plain,
        DynkinKind::B | DynkinKind::C => Family::Symmetric,
        DynkinKind::D => return phi_d(q, c),
        other => return Err(Error::NotClassicalType(other)),
    };
    BrauerRelation::new(generated_sigma(s.modulus() as usize, &c.labels(q)?)?, family)
}

/// `Ψ` for types A, B, C: the vertices labelled `[i σ(i)]`.
pub fn psi(q: &TranslationQuiver, b: &BrauerRelation) -> Result<Configuration> {
    let s = scheme(q)?;
    let family = match q.diagram().kind {
        DynkinKind::A => Family::Plain,
        DynkinKind::B | DynkinKind::C => Family::Symmetric,
        DynkinKind::D => return psi1(q, b),
        other => return Err(Error::NotClassicalType(other)),
    };
    if b.family() != family || b.num_points() as i64 != s.modulus() {
        return Err(Error::WrongFamily { expected: family.name() });
    }
    let labels: Vec<VertexLabel> = (1..=b.num_points())
        .map(|i| VertexLabel::new(i as u32, b.apply(i) as u32))
        .filter(|l| s.is_valid(l))
        .collect();
    Configuration::from_labels(q, &labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DClass {
    First,
    Second,
}

/// Signed members `(i, sign)` with `[i i+n]_sign ∈ C`.
fn signed_members(q: &TranslationQuiver, c: &Configuration) -> Result<Vec<(u32, Sign)>> {
    let s = scheme(q)?;
    Ok(c.labels(q)?
        .into_iter()
        .filter_map(|l| l.sign.map(|sg| (l.i, sg)))
        .filter(|&(i, _)| i64::from(i) <= s.n())
        .collect())
}

/// `C¹` holds the configurations without signed members or with all four
/// signed labels on one diameter; `C²` the rest.
pub fn classify_d(q: &TranslationQuiver, c: &Configuration) -> Result<DClass> {
    if q.diagram().kind != DynkinKind::D {
        return Err(Error::WrongClass(format!("{} is not of type D", q.diagram().name())));
    }
    let signed = signed_members(q, c)?;
    let diameters: BTreeSet<u32> = signed.iter().map(|&(i, _)| i).collect();
    Ok(if diameters.len() <= 1 { DClass::First } else { DClass::Second })
}

fn phi_d(q: &TranslationQuiver, c: &Configuration) -> Result<BrauerRelation> {
    let s = scheme(q)?;
    let family = match classify_d(q, c)? {
        DClass::First => Family::Symmetric,
        DClass::Second => Family::Crossing,
    };
    let unsigned: BTreeSet<VertexLabel> = c.labels(q)?.into_iter().map(|l| VertexLabel { sign: None, ..l }).collect();
    BrauerRelation::new(generated_sigma(s.modulus() as usize, &unsigned)?, family)
}

pub fn phi1(q: &TranslationQuiver, c: &Configuration) -> Result<BrauerRelation> {
    if classify_d(q, c)? != DClass::First {
        return Err(Error::WrongClass("configuration is in the second class".into()));
    }
    phi_d(q, c)
}

pub fn phi2(q: &TranslationQuiver, c: &Configuration) -> Result<BrauerRelation> {
    if classify_d(q, c)? != DClass::Second {
        return Err(Error::WrongClass("configuration is in the first class".into()));
    }
    phi_d(q, c)
}

fn d_labels(s: &LabelScheme, b: &BrauerRelation, sign_of: impl Fn(u32) -> Vec<Sign>) -> Vec<VertexLabel> {
    let mut out = Vec::new();
    for i in 1..=b.num_points() {
        let j = b.apply(i);
        let l = VertexLabel::new(i as u32, j as u32);
        if s.width(&l) == s.n() {
            let root = if (i as i64) <= s.n() { i as u32 } else { j as u32 };
            out.extend(sign_of(root).into_iter().map(|sg| VertexLabel { sign: Some(sg), ..l }));
        } else if s.is_valid(&l) {
            out.push(l);
        }
    }
    out
}

pub fn psi1(q: &TranslationQuiver, b: &BrauerRelation) -> Result<Configuration> {
    let s = scheme(q)?;
    if q.diagram().kind != DynkinKind::D || b.family() != Family::Symmetric || b.num_points() as i64 != s.modulus() {
        return Err(Error::WrongFamily { expected: "symmetric" });
    }
    Configuration::from_labels(q, &d_labels(&s, b, |_| vec![Sign::Plus, Sign::Minus]))
}

/// The pair `{C_B, C_B*}`: the lower diameter carries `+` in the first.
pub fn psi2(q: &TranslationQuiver, b: &BrauerRelation) -> Result<(Configuration, Configuration)> {
    let s = scheme(q)?;
    if q.diagram().kind != DynkinKind::D || b.family() != Family::Crossing || b.num_points() as i64 != s.modulus() {
        return Err(Error::WrongFamily { expected: "crossing" });
    }
    let low = (1..=b.num_points()).find(|&i| b.apply(i) as i64 == i as i64 + s.n()).expect("crossing has diameters") as u32;
    let first = Configuration::from_labels(q, &d_labels(&s, b, |r| vec![if r == low { Sign::Plus } else { Sign::Minus }]))?;
    let second = Configuration::from_labels(q, &d_labels(&s, b, |r| vec![if r == low { Sign::Minus } else { Sign::Plus }]))?;
    Ok((first, second))
}

/// `C*`: every signed member switches sign.
pub fn star(q: &TranslationQuiver, c: &Configuration) -> Result<Configuration> {
    if classify_d(q, c)? != DClass::Second {
        return Err(Error::WrongClass("the involution acts on the second class only".into()));
    }
    let labels: Vec<VertexLabel> = c
        .labels(q)?
        .into_iter()
        .map(|l| VertexLabel { sign: l.sign.map(Sign::flip), ..l })
        .collect();
    Configuration::from_labels(q, &labels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub kind: DynkinKind,
    pub n: usize,
    pub configurations: usize,
    /// Type D: sizes of the two classes.
    pub first_class: usize,
    pub second_class: usize,
    pub relations: usize,
    pub crossing_relations: usize,
    /// Configurations whose image does not map back.
    pub failures: Vec<String>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Enumerates the classical quotient and checks both round trips.
pub fn verify_bijection(kind: DynkinKind, n: usize, opts: SearchOptions) -> Result<BijectionReport> {
    let q = classical_quotient(kind, n)?;
    let hom = HomData::compute(&q)?;
    let configs = enumerate_configurations(&q, &hom, opts)?;
    let mut failures = Vec::new();
    let (family, rel_n) = match kind {
        DynkinKind::A => (Family::Plain, n),
        _ => (Family::Symmetric, n),
    };
    let relations = enumerate(family, rel_n);
    let crossing = if kind == DynkinKind::D { enumerate(Family::Crossing, n) } else { Vec::new() };
    let mut first = 0;
    let mut second = 0;
    let config_set: BTreeSet<&Configuration> = configs.iter().collect();
    for c in &configs {
        let class = if kind == DynkinKind::D { classify_d(&q, c)? } else { DClass::First };
        match class {
            DClass::First => {
                first += 1;
                match phi(&q, c).and_then(|b| psi(&q, &b)) {
                    Ok(back) if back == *c => {}
                    Ok(_) => failures.push(format!("{:?}: psi(phi(C)) differs", c.members)),
                    Err(e) => failures.push(format!("{:?}: {e}", c.members)),
                }
            }
            DClass::Second => {
                second += 1;
                let check = (|| -> Result<bool> {
                    let cs = star(&q, c)?;
                    let b = phi2(&q, c)?;
                    let (x, y) = psi2(&q, &b)?;
                    Ok(cs != *c
                        && star(&q, &cs)? == *c
                        && config_set.contains(&cs)
                        && phi2(&q, &cs)? == b
                        && (x == *c || y == *c))
                })();
                match check {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("{:?}: second-class round trip fails", c.members)),
                    Err(e) => failures.push(format!("{:?}: {e}", c.members)),
                }
            }
        }
    }
    for b in relations.iter().chain(&crossing) {
        let back = if b.family() == Family::Crossing {
            psi2(&q, b).and_then(|(x, _)| phi(&q, &x))
        } else {
            psi(&q, b).and_then(|c| phi(&q, &c))
        };
        match back {
            Ok(r) if r == *b => {}
            Ok(r) => failures.push(format!("relation {b}: phi(psi(B)) = {r}")),
            Err(e) => failures.push(format!("relation {b}: {e}")),
        }
    }
    Ok(BijectionReport {
        kind,
        n,
        configurations: configs.len(),
        first_class: first,
        second_class: second,
        relations: relations.len(),
        crossing_relations: crossing.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(q: &TranslationQuiver, s: &[&str]) -> Configuration {
        let ls: Vec<VertexLabel> = s.iter().map(|l| l.parse().unwrap()).collect();
        Configuration::from_labels(q, &ls).unwrap()
    }

    #[test]
    fn type_a_examples() {
        let q = classical_quotient(DynkinKind::A, 4).unwrap();
        let b6 = BrauerRelation::from_one_based(&[3, 2, 1, 4], Family::Plain).unwrap();
        assert_eq!(psi(&q, &b6).unwrap(), labels(&q, &["13", "31", "22", "44"]));
        let id = BrauerRelation::identity(4, Family::Plain).unwrap();
        assert_eq!(psi(&q, &id).unwrap(), labels(&q, &["11", "22", "33", "44"]));
        assert_eq!(phi(&q, &labels(&q, &["13", "31", "22", "44"])).unwrap(), b6);
    }

    #[test]
    fn type_b_examples() {
        let q = classical_quotient(DynkinKind::B, 2).unwrap();
        let id = BrauerRelation::identity(4, Family::Symmetric).unwrap();
        assert_eq!(psi(&q, &id).unwrap(), labels(&q, &["11", "22", "33", "44"]));
        let b2 = BrauerRelation::from_one_based(&[3, 2, 1, 4], Family::Symmetric).unwrap();
        let c = psi(&q, &b2).unwrap();
        assert_eq!(c, labels(&q, &["13", "31", "22", "44"]));
        assert_eq!(phi(&q, &c).unwrap(), b2);
        let d = BrauerRelation::from_one_based(&[3, 2, 1, 4], Family::Plain).unwrap();
        assert!(psi(&q, &d).is_err());
    }

    #[test]
    fn round_trips() {
        for (kind, n) in [(DynkinKind::A, 4), (DynkinKind::B, 2), (DynkinKind::C, 3), (DynkinKind::D, 2), (DynkinKind::D, 3)] {
            let r = verify_bijection(kind, n, SearchOptions::default()).unwrap();
            assert!(r.ok(), "{kind} {n}: {:?}", r.failures);
        }
    }

    #[test]
    fn d4_classes() {
        let r = verify_bijection(DynkinKind::D, 2, SearchOptions::default()).unwrap();
        assert_eq!((r.first_class, r.second_class), (5, 2));
        assert_eq!(r.crossing_relations, 1);
    }

    #[test]
    fn star_needs_second_class() {
        let q = classical_quotient(DynkinKind::D, 2).unwrap();
        let c = labels(&q, &["11", "22", "33", "44"]);
        assert!(matches!(star(&q, &c), Err(Error::WrongClass(_))));
        assert!(matches!(phi2(&q, &c), Err(Error::WrongClass(_))));
    }
}
