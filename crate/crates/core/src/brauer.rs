//! 2-Brauer relations on points `1..=N` of a disk, numbered clockwise.
//!
//! A relation is stored as an involution `sigma` on `0..N` (printed 1-based);
//! fixed points are singleton classes and two-cycles are chords.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Plain,
    Symmetric,
    Crossing,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Plain => "plain",
            Family::Symmetric => "symmetric",
            Family::Crossing => "crossing",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Family::Plain),
            "sym" | "symmetric" => Ok(Family::Symmetric),
            "cross" | "crossing" => Ok(Family::Crossing),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerRelation {
    num_points: usize,
    sigma: Vec<usize>,
    family: Family,
}

/// Chords `(i, j)` with `i < j`, 0-based.
pub fn chords(sigma: &[usize]) -> Vec<(usize, usize)> {
    sigma.iter().enumerate().filter(|&(i, &j)| i < j).map(|(i, &j)| (i, j)).collect()
}

fn interleave((i, j): (usize, usize), (r, s): (usize, usize)) -> bool {
    (i < r && r < j && j < s) || (r < i && i < s && s < j)
}

fn is_involution(sigma: &[usize]) -> bool {
    sigma.iter().enumerate().all(|(i, &j)| j < sigma.len() && sigma[j] == i)
}

/// Pairs of chords whose endpoints interleave.
pub fn crossing_pairs(sigma: &[usize]) -> Vec<((usize, usize), (usize, usize))> {
    let cs = chords(sigma);
    let mut out = Vec::new();
    for (a, &c) in cs.iter().enumerate() {
        for &d in &cs[a + 1..] {
            if interleave(c, d) {
                out.push((c, d));
            }
        }
    }
    out
}

pub fn is_noncrossing(sigma: &[usize]) -> bool {
    crossing_pairs(sigma).is_empty()
}

fn rotation_invariant(sigma: &[usize]) -> bool {
    let n2 = sigma.len();
    if n2 % 2 == 1 {
        return false;
    }
    let n = n2 / 2;
    (0..n2).all(|i| sigma[(i + n) % n2] == (sigma[i] + n) % n2)
}

fn family_holds(sigma: &[usize], family: Family) -> bool {
    match family {
        Family::Plain => is_noncrossing(sigma),
        Family::Symmetric => rotation_invariant(sigma) && is_noncrossing(sigma),
        Family::Crossing => {
            let n = sigma.len() / 2;
            let pairs = crossing_pairs(sigma);
            rotation_invariant(sigma)
                && pairs.len() == 1
                && [pairs[0].0, pairs[0].1].iter().all(|&(i, j)| j == i + n)
        }
    }
}

impl BrauerRelation {
    /// Validates that `sigma` (0-based) is an involution in `family`.
    pub fn new(sigma: Vec<usize>, family: Family) -> Result<Self> {
        if !is_involution(&sigma) {
            return Err(Error::Parse("sigma is not an involution".into()));
        }
        if !family_holds(&sigma, family) {
            return Err(Error::WrongFamily { expected: family.name() });
        }
        Ok(BrauerRelation { num_points: sigma.len(), sigma, family })
    }

    /// From the 1-based images `sigma(1), ..., sigma(N)`.
    pub fn from_one_based(images: &[usize], family: Family) -> Result<Self> {
        if images.iter().any(|&j| j == 0 || j > images.len()) {
            return Err(Error::Parse("sigma image out of range".into()));
        }
        Self::new(images.iter().map(|j| j - 1).collect(), family)
    }

    pub fn identity(num_points: usize, family: Family) -> Result<Self> {
        Self::new((0..num_points).collect(), family)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// 0-based involution.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// `σ(i)` for a 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.sigma[i - 1] + 1
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.sigma.iter().map(|j| j + 1).collect()
    }

    /// Chords as 1-based pairs `(i, j)`, `i < j`.
    pub fn classes(&self) -> Vec<(usize, usize)> {
        chords(&self.sigma).into_iter().map(|(i, j)| (i + 1, j + 1)).collect()
    }

    /// Arc diagram: one line of points, then one line per chord.
    pub fn ascii(&self) -> String {
        let width = self.num_points.to_string().len() + 1;
        let col = |i: usize| i * (width + 1) + width - 1;
        let mut lines = vec![(1..=self.num_points).map(|i| format!("{i:>width$} ")).collect::<String>()];
        let len = col(self.num_points.saturating_sub(1)) + 1;
        let mut fixed = vec![b' '; len];
        for i in (0..self.num_points).filter(|&i| self.sigma[i] == i) {
            fixed[col(i)] = b'*';
        }
        lines.push(String::from_utf8(fixed).expect("ascii"));
        for (i, j) in chords(&self.sigma) {
            let mut row = vec![b' '; len];
            row[col(i)..=col(j)].fill(b'-');
            row[col(i)] = b'+';
            row[col(j)] = b'+';
            lines.push(String::from_utf8(row).expect("ascii"));
        }
        lines.iter().map(|l| l.trim_end()).collect::<Vec<_>>().join("\n")
    }
}

impl fmt::Display for BrauerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.num_points)
            .filter(|&i| self.sigma[i] >= i)
            .map(|i| {
                if self.sigma[i] == i {
                    format!("{{{}}}", i + 1)
                } else {
                    format!("{{{},{}}}", i + 1, self.sigma[i] + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Noncrossing partial matchings read left to right as Motzkin paths: each
/// point is fixed, opens a chord, or closes the most recently opened one.
fn motzkin_paths(i: usize, sigma: &mut Vec<usize>, open: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let n = sigma.len();
    if i == n {
        if open.is_empty() {
            out.push(sigma.clone());
        }
        return;
    }
    if open.len() > n - i {
        return;
    }
    sigma[i] = i;
    motzkin_paths(i + 1, sigma, open, out);
    open.push(i);
    motzkin_paths(i + 1, sigma, open, out);
    open.pop();
    if let Some(j) = open.pop() {
        sigma[i] = j;
        sigma[j] = i;
        motzkin_paths(i + 1, sigma, open, out);
        sigma[j] = j;
        open.push(j);
    }
}

pub fn enumerate_plain(n: usize) -> Vec<BrauerRelation> {
    let mut out = Vec::new();
    motzkin_paths(0, &mut vec![0; n], &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter()
        .map(|sigma| BrauerRelation { num_points: n, sigma, family: Family::Plain })
        .collect()
}

/// Rotation-invariant involutions on `2n` points with at most `max_cross`
/// crossing chord pairs.
fn rotation_invariant_search(n: usize, max_cross: usize, exact_cross: usize) -> Vec<Vec<usize>> {
    const FREE: usize = usize::MAX;
    let n2 = 2 * n;
    let mut sigma = vec![FREE; n2];
    let mut out = Vec::new();

    fn new_crossings(sigma: &[usize], added: &[(usize, usize)]) -> usize {
        let existing = chords_partial(sigma);
        let mut count = 0;
        for (a, &c) in added.iter().enumerate() {
            count += existing.iter().filter(|&&d| !added.contains(&d) && interleave(c, d)).count();
            count += added[a + 1..].iter().filter(|&&d| interleave(c, d)).count();
        }
        count
    }

    fn chords_partial(sigma: &[usize]) -> Vec<(usize, usize)> {
        sigma.iter().enumerate().filter(|&(i, &j)| j != usize::MAX && i < j).map(|(i, &j)| (i, j)).collect()
    }

    fn go(i: usize, n: usize, crosses: usize, max_cross: usize, exact: usize, sigma: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n2 = 2 * n;
        if i == n2 {
            if crosses == exact {
                out.push(sigma.clone());
            }
            return;
        }
        if sigma[i] != FREE {
            go(i + 1, n, crosses, max_cross, exact, sigma, out);
            return;
        }
        let ri = (i + n) % n2;
        // i and its rotation both fixed.
        sigma[i] = i;
        sigma[ri] = ri;
        go(i + 1, n, crosses, max_cross, exact, sigma, out);
        sigma[i] = FREE;
        sigma[ri] = FREE;
        for j in i + 1..n2 {
            if sigma[j] != FREE {
                continue;
            }
            let rj = (j + n) % n2;
            let mut added = vec![(i, j)];
            if j == ri {
                sigma[i] = j;
                sigma[j] = i;
            } else {
                if sigma[rj] != FREE || rj == i {
                    continue;
                }
                sigma[i] = j;
                sigma[j] = i;
                sigma[ri] = rj;
                sigma[rj] = ri;
                added.push((ri.min(rj), ri.max(rj)));
            }
            let c = crosses + new_crossings(sigma, &added);
            if c <= max_cross {
                go(i + 1, n, c, max_cross, exact, sigma, out);
            }
            sigma[i] = FREE;
            sigma[j] = FREE;
            if j != ri {
                sigma[ri] = FREE;
                sigma[rj] = FREE;
            }
        }
    }

    go(0, n, 0, max_cross, exact_cross, &mut sigma, &mut out);
    out.sort();
    out
}

/// Symmetric relations on `2n` points.
pub fn enumerate_symmetric(n: usize) -> Vec<BrauerRelation> {
    rotation_invariant_search(n, 0, 0)
        .into_iter()
        .map(|sigma| BrauerRelation { num_points: 2 * n, sigma, family: Family::Symmetric })
        .collect()
}

/// Crossing relations on `2n` points; empty for `n < 2`.
pub fn enumerate_crossing(n: usize) -> Vec<BrauerRelation> {
    rotation_invariant_search(n, 1, 1)
        .into_iter()
        .filter(|s| family_holds(s, Family::Crossing))
        .map(|sigma| BrauerRelation { num_points: 2 * n, sigma, family: Family::Crossing })
        .collect()
}

pub fn enumerate(family: Family, n: usize) -> Vec<BrauerRelation> {
    match family {
        Family::Plain => enumerate_plain(n),
        Family::Symmetric => enumerate_symmetric(n),
        Family::Crossing => enumerate_crossing(n),
    }
}

fn factorials(n: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::one()];
    for k in 1..=n {
        let next = &f[k - 1] * BigUint::from(k);
        f.push(next);
    }
    f
}

fn motzkin_table(n: usize) -> Vec<BigUint> {
    let mut m: Vec<BigUint> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut v = if k == 0 { BigUint::one() } else { m[k - 1].clone() };
        for i in 0..k.saturating_sub(1) {
            v += &m[i] * &m[k - 2 - i];
        }
        m.push(v);
    }
    m
}

/// `M(n)` by `M(n) = M(n-1) + Σ_{i=0}^{n-2} M(i) M(n-2-i)`.
pub fn motzkin(n: usize) -> BigUint {
    motzkin_table(n).pop().expect("nonempty")
}

/// `M(n) = Σ_k n! / ((n-2k)! (k+1)! k!)`.
pub fn motzkin_closed(n: usize) -> BigUint {
    let f = factorials(n + 2);
    (0..=n / 2).fold(BigUint::zero(), |acc, k| acc + &f[n] / (&f[n - 2 * k] * &f[k + 1] * &f[k]))
}

/// `M^s(n) = M^s(n-1) + M(n-1) + 2 Σ_{i=0}^{n-2} M(i) M^s(n-2-i)`.
pub fn m_sym(n: usize) -> BigUint {
    let m = motzkin_table(n);
    let mut s: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=n {
        let mut v = &s[k - 1] + &m[k - 1];
        for i in 0..k.saturating_sub(1) {
            v += BigUint::from(2u32) * &m[i] * &s[k - 2 - i];
        }
        s.push(v);
    }
    s.swap_remove(n)
}

/// `M^s(n) = Σ_k n! (n+1-k)! / (k! (n-k)! k! (n+1-2k)!)`.
pub fn m_sym_closed(n: usize) -> BigUint {
    let f = factorials(n + 2);
    (0..=n.div_ceil(2))
        .filter(|&k| k <= n)
        .fold(BigUint::zero(), |acc, k| {
            acc + &f[n] * &f[n + 1 - k] / (&f[k] * &f[n - k] * &f[k] * &f[n + 1 - 2 * k])
        })
}

/// `M^c(n) = Σ_{i=1}^{n-1} Σ_{j=i+1}^{n} M(j-i-1) M(n+i-j-1)` for `n >= 2`,
/// with the seeds `M^c(0) = M^c(1) = 1`.
pub fn m_cross(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::one();
    }
    let m = motzkin_table(n);
    let mut v = BigUint::zero();
    for i in 1..n {
        for j in i + 1..=n {
            v += &m[j - i - 1] * &m[n + i - j - 1];
        }
    }
    v
}

/// `M^c(n) = Σ_k n! / (k! (k+2)! (n-2-2k)!)` for `n >= 2`; the seeds below.
pub fn m_cross_closed(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::one();
    }
    let f = factorials(n + 2);
    (0..=(n - 2) / 2).fold(BigUint::zero(), |acc, k| acc + &f[n] / (&f[k] * &f[k + 2] * &f[n - 2 - 2 * k]))
}

/// Recursive count for a family.
pub fn count(family: Family, n: usize) -> BigUint {
    match family {
        Family::Plain => motzkin(n),
        Family::Symmetric => m_sym(n),
        Family::Crossing => m_cross(n),
    }
}

pub fn count_closed(family: Family, n: usize) -> BigUint {
    match family {
        Family::Plain => motzkin_closed(n),
        Family::Symmetric => m_sym_closed(n),
        Family::Crossing => m_cross_closed(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn counting_tables() {
        let m: Vec<_> = (0..=10).map(motzkin).collect();
        assert_eq!(m, u(&[1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]));
        let s: Vec<_> = (0..=10).map(m_sym).collect();
        assert_eq!(s, u(&[1, 2, 5, 13, 35, 96, 267, 750, 2123, 6046, 17303]));
        let c: Vec<_> = (0..=10).map(m_cross).collect();
        assert_eq!(c, u(&[1, 1, 1, 3, 10, 30, 90, 266, 784, 2304, 6765]));
        for n in 0..=40 {
            for f in [Family::Plain, Family::Symmetric, Family::Crossing] {
                assert_eq!(count(f, n), count_closed(f, n), "{f} {n}");
            }
        }
    }

    #[test]
    fn rank_four_listings() {
        assert_eq!(enumerate_plain(4).len(), 9);
        assert_eq!(enumerate_plain(0).len(), 1);
        assert_eq!(enumerate_plain(1).len(), 1);
        assert_eq!(enumerate_symmetric(2).len(), 5);
        let c = enumerate_crossing(2);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].apply(1), 3);
        assert_eq!(c[0].apply(2), 4);
        assert!(enumerate_crossing(1).is_empty());
        assert!(enumerate_crossing(0).is_empty());
    }

    #[test]
    fn enumeration_matches_counts() {
        for n in 0..=10 {
            assert_eq!(BigUint::from(enumerate_plain(n).len()), motzkin(n));
        }
        for n in 2..=7 {
            assert_eq!(BigUint::from(enumerate_symmetric(n).len()), m_sym(n));
            assert_eq!(BigUint::from(enumerate_crossing(n).len()), m_cross(n));
        }
    }

    #[test]
    fn crossing_predicates() {
        let id = [0, 1, 2, 3];
        assert!(is_noncrossing(&id));
        assert!(crossing_pairs(&id).is_empty());
        assert_eq!(crossing_pairs(&[2, 3, 0, 1]).len(), 1);
        assert!(is_noncrossing(&[1, 0, 3, 2]));
    }

    #[test]
    fn constructor_checks_family() {
        assert!(BrauerRelation::from_one_based(&[3, 4, 1, 2], Family::Crossing).is_ok());
        assert!(matches!(
            BrauerRelation::from_one_based(&[3, 4, 1, 2], Family::Plain),
            Err(Error::WrongFamily { expected: "plain" })
        ));
        assert!(BrauerRelation::from_one_based(&[2, 2], Family::Plain).is_err());
        let b6 = BrauerRelation::from_one_based(&[3, 2, 1, 4], Family::Plain).unwrap();
        assert_eq!(b6.to_string(), "{1,3}{2}{4}");
        assert_eq!(b6.classes(), vec![(1, 3)]);
    }

    #[test]
    fn ascii_arc_diagram() {
        let b = BrauerRelation::from_one_based(&[3, 2, 1, 4], Family::Plain).unwrap();
        assert_eq!(b.ascii(), " 1  2  3  4\n    *     *\n +-----+");
    }

    #[test]
    fn family_parsing() {
        assert_eq!("sym".parse::<Family>().unwrap(), Family::Symmetric);
        assert_eq!("cross".parse::<Family>().unwrap(), Family::Crossing);
        assert!("x".parse::<Family>().is_err());
    }
}
