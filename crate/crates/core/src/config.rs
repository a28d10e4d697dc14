//! Configurations of finite stable translation quivers.
//!
//! A configuration `C` is `ω`-stable, satisfies the pairwise table
//! `h(d, c) = 2` iff `d = c = ω(c)`, `1` iff `d = c ≠ ω(c)` or `d = ω(c) ≠ c`,
//! `0` otherwise (C2), and the sets `H(c)`, `c ∈ C`, cover every vertex (C1).
//!
//! The enumerator searches over `ω`-orbits ("atoms") that are valid on their
//! own. Two atoms are compatible when `h` vanishes across them in both
//! directions, which also makes the covered regions miss the other atom's
//! members; so once every vertex is covered no further atom fits.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::hom::{h_table, HomData, ZCover};
use crate::labels::{quiver_labels, vertices_with_labels, VertexLabel};
use crate::quiver::{attach_vertices, TranslationQuiver};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    pub members: Vec<usize>,
}

impl Configuration {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Configuration { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// `τ(C)`; every member must have a translate.
    pub fn translate(&self, q: &TranslationQuiver) -> Result<Configuration> {
        let members = self
            .members
            .iter()
            .map(|&v| q.tau(v).ok_or(Error::MissingTranslate(v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration::new(members))
    }

    /// Labels of the members, for classical types.
    pub fn labels(&self, q: &TranslationQuiver) -> Result<BTreeSet<VertexLabel>> {
        let all = quiver_labels(q)?;
        Ok(self.members.iter().filter_map(|&v| all.get(v).copied().flatten()).collect())
    }

    /// All vertices of `q` carrying one of `labels`.
    pub fn from_labels(q: &TranslationQuiver, labels: &[VertexLabel]) -> Result<Configuration> {
        Ok(Configuration::new(vertices_with_labels(q, labels)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    OmegaClosure,
    C1,
    C2,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::OmegaClosure => "omega-closure",
            Condition::C1 => "C1",
            Condition::C2 => "C2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub witnesses: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationReport {
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

/// The value of `h(d, c)` required by (C2) for `c, d ∈ C`.
pub fn required_h(d: usize, c: usize, omega_c: usize) -> u32 {
    match (d == c, d == omega_c) {
        (true, true) => 2,
        (true, false) | (false, true) => 1,
        (false, false) => 0,
    }
}

/// Checks ω-closure, (C2) and (C1); reports the first failure of each in
/// canonical order.
pub fn is_configuration(q: &TranslationQuiver, hom: &HomData, members: &[usize]) -> Result<ConfigurationReport> {
    let n = q.len();
    if let Some(&v) = members.iter().find(|&&v| v >= n) {
        return Err(Error::UnknownVertex(v));
    }
    let c = Configuration::new(members.to_vec());
    let mut violations = Vec::new();
    if let Some(&x) = c.members.iter().find(|&&x| !c.contains(hom.omega[x])) {
        violations.push(Violation {
            condition: Condition::OmegaClosure,
            witnesses: vec![x, hom.omega[x]],
            detail: format!("omega({x}) = {} is not a member", hom.omega[x]),
        });
    }
    'pairs: for &x in &c.members {
        for &y in &c.members {
            let want = required_h(y, x, hom.omega[x]);
            let got = hom.h(y, x);
            if want != got {
                violations.push(Violation {
                    condition: Condition::C2,
                    witnesses: vec![y, x],
                    detail: format!("h({y}, {x}) = {got}, required {want}"),
                });
                break 'pairs;
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| c.members.iter().all(|&x| hom.h(v, x) == 0)) {
        violations.push(Violation {
            condition: Condition::C1,
            witnesses: vec![v],
            detail: format!("vertex {v} lies in no H(c)"),
        });
    }
    Ok(ConfigurationReport { verdict: violations.is_empty(), violations })
}

/// `ω`-orbits, in order of their least vertex.
pub fn omega_orbits(hom: &HomData) -> Vec<Vec<usize>> {
    let n = hom.num_vertices;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = v;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = hom.omega[x];
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

struct Atoms {
    orbits: Vec<Vec<usize>>,
    cover: Vec<Bitset>,
    compat: Vec<Bitset>,
    by_vertex: Vec<Bitset>,
}

impl Atoms {
    fn new(hom: &HomData) -> Self {
        let n = hom.num_vertices;
        let orbits: Vec<Vec<usize>> = omega_orbits(hom)
            .into_iter()
            .filter(|o| o.iter().all(|&x| o.iter().all(|&y| hom.h(y, x) == required_h(y, x, hom.omega[x]))))
            .collect();
        let k = orbits.len();
        let cover: Vec<Bitset> = orbits
            .iter()
            .map(|o| Bitset::with_items(n, (0..n).filter(|&v| o.iter().any(|&c| hom.h(v, c) > 0))))
            .collect();
        let compat: Vec<Bitset> = (0..k)
            .map(|a| {
                Bitset::with_items(
                    k,
                    (0..k).filter(|&b| {
                        a != b
                            && orbits[a]
                                .iter()
                                .all(|&x| orbits[b].iter().all(|&y| hom.h(x, y) == 0 && hom.h(y, x) == 0))
                    }),
                )
            })
            .collect();
        let by_vertex = (0..n).map(|v| Bitset::with_items(k, (0..k).filter(|&a| cover[a].contains(v)))).collect();
        Atoms { orbits, cover, compat, by_vertex }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    pub time_budget: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub atoms: usize,
}

struct Search<'a> {
    atoms: &'a Atoms,
    num_vertices: usize,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    stopped: AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed);
        if k.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.stopped.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.stopped.load(Ordering::Relaxed)
    }

    /// Uncovered vertex with the fewest live candidate atoms, and those atoms.
    fn branch_point(&self, covered: &Bitset, live: &Bitset) -> Option<Vec<usize>> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.num_vertices {
            if covered.contains(v) {
                continue;
            }
            let k = self.atoms.by_vertex[v].intersection_count(live);
            if best.is_none_or(|(_, b)| k < b) {
                best = Some((v, k));
                if k == 0 {
                    break;
                }
            }
        }
        let (v, _) = best?;
        let mut cands = self.atoms.by_vertex[v].clone();
        cands.intersect_with(live);
        Some(cands.iter().collect())
    }

    fn emit(&self, chosen: &[usize]) -> Vec<usize> {
        let mut m: Vec<usize> = chosen.iter().flat_map(|&a| self.atoms.orbits[a].iter().copied()).collect();
        m.sort_unstable();
        m
    }

    fn run(&self, chosen: &mut Vec<usize>, covered: &Bitset, live: &Bitset, out: &mut Vec<Vec<usize>>) {
        if !self.tick() {
            return;
        }
        if covered.count() == self.num_vertices {
            out.push(self.emit(chosen));
            return;
        }
        let Some(cands) = self.branch_point(covered, live) else { return };
        let mut live = live.clone();
        for a in cands {
            let mut cov = covered.clone();
            cov.union_with(&self.atoms.cover[a]);
            let mut next = live.clone();
            next.intersect_with(&self.atoms.compat[a]);
            chosen.push(a);
            self.run(chosen, &cov, &next, out);
            chosen.pop();
            live.remove(a);
        }
    }
}

/// Every configuration of `q`, sorted by member lists.
pub fn enumerate_configurations(q: &TranslationQuiver, hom: &HomData, opts: SearchOptions) -> Result<Vec<Configuration>> {
    enumerate_with_stats(q, hom, opts).map(|(c, _)| c)
}

pub fn enumerate_with_stats(
    q: &TranslationQuiver,
    hom: &HomData,
    opts: SearchOptions,
) -> Result<(Vec<Configuration>, SearchStats)> {
    if !q.is_stable() || hom.num_vertices != q.len() {
        return Err(Error::InvalidConfiguration("enumeration needs a stable quiver and its hom data".into()));
    }
    let atoms = Atoms::new(hom);
    let k = atoms.orbits.len();
    let n = q.len();
    let search = Search {
        atoms: &atoms,
        num_vertices: n,
        deadline: opts.time_budget.map(|d| Instant::now() + d),
        nodes: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
    };
    let covered = Bitset::new(n);
    let live = Bitset::full(k);
    let mut found: Vec<Vec<usize>> = Vec::new();
    if n == 0 {
        found.push(Vec::new());
    } else if let Some(cands) = search.branch_point(&covered, &live) {
        // Split the first level across workers; branch i forbids earlier candidates.
        let branches: Vec<(usize, Bitset)> = cands
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut l = live.clone();
                for &b in &cands[..i] {
                    l.remove(b);
                }
                l.intersect_with(&atoms.compat[a]);
                (a, l)
            })
            .collect();
        search.tick();
        found = branches
            .into_par_iter()
            .flat_map_iter(|(a, l)| {
                let mut out = Vec::new();
                search.run(&mut vec![a], &atoms.cover[a], &l, &mut out);
                out
            })
            .collect();
    }
    let nodes = search.nodes.load(Ordering::Relaxed);
    if search.stopped.load(Ordering::Relaxed) {
        return Err(Error::TimeBudgetExceeded { nodes, found: found.len() });
    }
    found.sort_unstable();
    Ok((found.into_iter().map(|members| Configuration { members }).collect(), SearchStats { nodes, atoms: k }))
}

/// Filters every union of `ω`-orbits through [`is_configuration`].
pub fn brute_force_configurations(q: &TranslationQuiver, hom: &HomData) -> Result<Vec<Configuration>> {
    let orbits = omega_orbits(hom);
    if orbits.len() > 24 {
        return Err(Error::InvalidConfiguration(format!("{} orbits is too many for the subset filter", orbits.len())));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << orbits.len()) {
        let members: Vec<usize> = (0..orbits.len())
            .filter(|&i| mask >> i & 1 == 1)
            .flat_map(|i| orbits[i].iter().copied())
            .collect();
        if is_configuration(q, hom, &members)?.verdict {
            out.push(Configuration::new(members));
        }
    }
    out.sort();
    Ok(out)
}

/// Least configuration in the `τ`-orbit of `c`.
pub fn tau_canonical(q: &TranslationQuiver, c: &Configuration) -> Result<Configuration> {
    let mut best = c.clone();
    let mut cur = c.translate(q)?;
    while cur != *c {
        if cur < best {
            best = cur.clone();
        }
        cur = cur.translate(q)?;
    }
    Ok(best)
}

/// Number of `τ`-orbits in a complete list of configurations.
pub fn count_mod_tau(q: &TranslationQuiver, configs: &[Configuration]) -> Result<usize> {
    let reps: HashSet<Configuration> = configs.iter().map(|c| tau_canonical(q, c)).collect::<Result<_>>()?;
    Ok(reps.len())
}

/// Whether `τ` maps the list into itself.
pub fn is_tau_closed(q: &TranslationQuiver, configs: &[Configuration]) -> Result<bool> {
    let set: HashSet<&Configuration> = configs.iter().collect();
    for c in configs {
        if !set.contains(&c.translate(q)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `π⁻¹(C)` inside a window of the cover.
pub fn lift_configuration(window: &TranslationQuiver, quotient: &TranslationQuiver, c: &Configuration) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for w in 0..window.len() {
        let x = window.position(w).ok_or(Error::UnknownVertex(w))?;
        let v = quotient.project(x).ok_or(Error::UnknownVertex(w))?;
        if c.contains(v) {
            out.push(w);
        }
    }
    Ok(out)
}

/// `π(S)` for a set of window vertices that is stable under the group inside the window.
pub fn descend_configuration(window: &TranslationQuiver, quotient: &TranslationQuiver, members: &[usize]) -> Result<Configuration> {
    let set: HashSet<usize> = members.iter().copied().collect();
    let mut image = Vec::new();
    for &w in members {
        let x = window.position(w).ok_or(Error::UnknownVertex(w))?;
        image.push(quotient.project(x).ok_or(Error::UnknownVertex(w))?);
    }
    let c = Configuration::new(image);
    for w in 0..window.len() {
        let x = window.position(w).ok_or(Error::UnknownVertex(w))?;
        let v = quotient.project(x).ok_or(Error::UnknownVertex(w))?;
        if c.contains(v) && !set.contains(&w) {
            return Err(Error::NotGStable(w));
        }
    }
    Ok(c)
}

/// `Q_C` after checking that `C` is a configuration.
///
/// On a stable quiver the full definition is checked. On a window only the
/// pairwise (C2) table is checked, with `h` taken on the cover.
pub fn attach_configuration(q: &TranslationQuiver, c: &Configuration) -> Result<TranslationQuiver> {
    if q.is_stable() {
        let hom = HomData::compute(q)?;
        let report = is_configuration(q, &hom, &c.members)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidConfiguration(format!("{}: {}", v.condition, v.detail)));
        }
    } else {
        let cover = ZCover::new(q.diagram());
        for &x in &c.members {
            let px = q.position(x).ok_or(Error::UnknownVertex(x))?;
            let t = h_table(&cover, px)?;
            for &y in &c.members {
                let py = q.position(y).ok_or(Error::UnknownVertex(y))?;
                let want = match (py == px, py == t.omega) {
                    (true, true) => 2,
                    (true, false) | (false, true) => 1,
                    (false, false) => 0,
                };
                if t.h(py) != want {
                    return Err(Error::InvalidConfiguration(format!("C2: h({y}, {x}) = {}, required {want}", t.h(py))));
                }
            }
        }
    }
    attach_vertices(q, &c.members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{build_dynkin, DynkinKind};
    use crate::labels::VertexLabel;
    use crate::quiver::{build_quotient, build_z_window, GroupSpec};

    fn quotient(kind: DynkinKind, rank: usize, shift: u32) -> (TranslationQuiver, HomData) {
        let q = build_quotient(&build_dynkin(kind, rank).unwrap(), GroupSpec::tau(shift).unwrap()).unwrap();
        let h = HomData::compute(&q).unwrap();
        (q, h)
    }

    fn labels(s: &[&str]) -> Vec<VertexLabel> {
        s.iter().map(|l| l.parse().unwrap()).collect()
    }

    #[test]
    fn a5_diagonal_labels_form_a_configuration() {
        let (q, h) = quotient(DynkinKind::A, 5, 4);
        let c = Configuration::from_labels(&q, &labels(&["11", "22", "33", "44"])).unwrap();
        assert_eq!(c.len(), 8);
        assert!(is_configuration(&q, &h, &c.members).unwrap().verdict);
    }

    #[test]
    fn a5_single_label_fails_coverage() {
        let (q, h) = quotient(DynkinKind::A, 5, 4);
        let c = Configuration::from_labels(&q, &labels(&["11"])).unwrap();
        let r = is_configuration(&q, &h, &c.members).unwrap();
        assert!(!r.verdict);
        assert!(r.violations.iter().any(|v| v.condition == Condition::C1));
    }

    #[test]
    fn a5_overlapping_rectangles_fail_c2() {
        let (q, h) = quotient(DynkinKind::A, 5, 4);
        let c = Configuration::from_labels(&q, &labels(&["11", "22", "13", "31", "44"])).unwrap();
        let r = is_configuration(&q, &h, &c.members).unwrap();
        assert!(r.violations.iter().any(|v| v.condition == Condition::C2));
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let (q, h) = quotient(DynkinKind::A, 3, 2);
        assert!(matches!(is_configuration(&q, &h, &[99]), Err(Error::UnknownVertex(99))));
    }

    #[test]
    fn small_counts_and_oracle() {
        for (kind, rank, shift, expected) in [
            (DynkinKind::A, 5, 4, 9),
            (DynkinKind::G2, 2, 2, 4),
            (DynkinKind::D, 4, 4, 7),
            (DynkinKind::A, 3, 2, 2),
        ] {
            let (q, h) = quotient(kind, rank, shift);
            let fast = enumerate_configurations(&q, &h, SearchOptions::default()).unwrap();
            assert_eq!(fast.len(), expected, "{kind}{rank}");
            assert_eq!(fast, brute_force_configurations(&q, &h).unwrap());
        }
    }

    #[test]
    fn g2_mod_tau() {
        let (q, h) = quotient(DynkinKind::G2, 2, 2);
        let cs = enumerate_configurations(&q, &h, SearchOptions::default()).unwrap();
        assert_eq!(count_mod_tau(&q, &cs).unwrap(), 2);
        assert!(is_tau_closed(&q, &cs).unwrap());
    }

    #[test]
    fn zero_budget_reports_progress() {
        let (q, h) = quotient(DynkinKind::D, 5, 6);
        let r = enumerate_configurations(&q, &h, SearchOptions { time_budget: Some(Duration::ZERO) });
        assert!(matches!(r, Err(Error::TimeBudgetExceeded { .. })));
    }

    #[test]
    fn lift_and_descend_round_trip() {
        let d = build_dynkin(DynkinKind::A, 5).unwrap();
        let (q, h) = quotient(DynkinKind::A, 5, 4);
        let w = build_z_window(&d, -8, 16).unwrap();
        for c in enumerate_configurations(&q, &h, SearchOptions::default()).unwrap() {
            let up = lift_configuration(&w, &q, &c).unwrap();
            assert_eq!(descend_configuration(&w, &q, &up).unwrap(), c);
        }
        let bad = vec![w.find(0, 0).unwrap()];
        assert!(matches!(descend_configuration(&w, &q, &bad), Err(Error::NotGStable(_))));
    }

    #[test]
    fn attach_checks_the_set() {
        let (q, _) = quotient(DynkinKind::A, 2, 2);
        let hom = HomData::compute(&q).unwrap();
        let cs = enumerate_configurations(&q, &hom, SearchOptions::default()).unwrap();
        let qc = attach_configuration(&q, &cs[0]).unwrap();
        assert_eq!(qc.len(), q.len() + cs[0].len());
        assert!(matches!(
            attach_configuration(&q, &Configuration::new(vec![])),
            Err(Error::InvalidConfiguration(_))
        ));
    }
}
