//! Closed-form descriptions of `h` and its support `H(x)` on `ZΔ` for the
//! classical types, in cover coordinates.
//!
//! A cover vertex `(p, v)` in row `k` carries the integer label
//! `[p, p + k - 1]`; the formulas below are stated on these unreduced labels.

use std::collections::BTreeSet;

use crate::dynkin::{DynkinDiagram, DynkinKind};
use crate::error::{Error, Result};
use crate::labels::LabelScheme;
use crate::quiver::CoverVertex;

fn label_ends(rows: &[u32], (p, v): CoverVertex) -> (i64, i64) {
    (p, p + i64::from(rows[v]) - 1)
}

/// `ZA_{n+1}`: `h(y, [a b]) = 1` iff `y = [s t]` lies in the rectangle with
/// corners `[a b]`, `[a a]`, `[b-n b]` and `[b-n a]`.
pub fn rectangle_h(diagram: &DynkinDiagram, y: CoverVertex, x: CoverVertex) -> Result<u64> {
    if diagram.kind != DynkinKind::A {
        return Err(Error::WrongClass(format!("{} is not of type A", diagram.name())));
    }
    let rows = diagram.rows();
    let n = diagram.rank as i64 - 1;
    let (a, b) = label_ends(&rows, x);
    let (s, t) = label_ends(&rows, y);
    Ok(u64::from((b - n..=a).contains(&s) && (a..=b).contains(&t)))
}

/// Cover vertices whose column lies within `n + 1` of `x`'s column on either side.
fn neighbourhood(diagram: &DynkinDiagram, x: CoverVertex, n: i64) -> impl Iterator<Item = CoverVertex> {
    let rank = diagram.rank;
    (x.0 - 2 * n - 2..=x.0 + 2 * n + 2).flat_map(move |p| (0..rank).map(move |v| (p, v)))
}

/// `ZB_{n+1}` and `ZC_{n+1}`: the support of `h(-, [J I])` is
/// `{[s t] : J-n <= s <= I-n, I-n <= t <= I} ∪ {[s t] : I-n < s <= J, J <= t <= I}`.
pub fn region_bc(diagram: &DynkinDiagram, x: CoverVertex) -> Result<BTreeSet<CoverVertex>> {
    if !matches!(diagram.kind, DynkinKind::B | DynkinKind::C) {
        return Err(Error::WrongClass(format!("{} is not of type B or C", diagram.name())));
    }
    let rows = diagram.rows();
    let n = diagram.rank as i64 - 1;
    let (j, i) = label_ends(&rows, x);
    Ok(neighbourhood(diagram, x, n)
        .filter(|&y| {
            let (s, t) = label_ends(&rows, y);
            let first = (j - n..=i - n).contains(&s) && (i - n..=i).contains(&t);
            let second = (i - n + 1..=j).contains(&s) && (j..=i).contains(&t);
            first || second
        })
        .collect())
}

/// `ZD_{n+2}`. For `x = [J I]` off the tips the support is both tips over
/// `J-n..=I-n`, the labels `[s t]` with `s` in that range and
/// `I-n <= t < I`, and `[s t]` with `I-n < s <= J`, `J <= t <= I`.
/// For a tip `x = [i i+n]_ε` it is the tips `[i-k i+n-k]_ε` for `0 <= k <= n`
/// together with `[i-n+s i+t]` for `1 <= s <= n` and `0 <= t < n`.
pub fn region_d(diagram: &DynkinDiagram, x: CoverVertex) -> Result<BTreeSet<CoverVertex>> {
    if diagram.kind != DynkinKind::D {
        return Err(Error::WrongClass(format!("{} is not of type D", diagram.name())));
    }
    let rows = diagram.rows();
    let n = diagram.rank as i64 - 2;
    let scheme = LabelScheme::new(diagram)?;
    let is_tip = |v: usize| v + 2 >= diagram.rank;
    let (j, i) = label_ends(&rows, x);
    Ok(neighbourhood(diagram, x, n)
        .filter(|&y| {
            let (s, t) = label_ends(&rows, y);
            if is_tip(x.1) {
                if is_tip(y.1) {
                    (j - n..=j).contains(&s) && scheme.label_of(y).sign == scheme.label_of(x).sign
                } else {
                    (j - n + 1..=j).contains(&s) && (j..j + n).contains(&t)
                }
            } else if is_tip(y.1) {
                (j - n..=i - n).contains(&s)
            } else {
                let first = (j - n..=i - n).contains(&s) && (i - n..i).contains(&t);
                let second = (i - n + 1..=j).contains(&s) && (j..=i).contains(&t);
                first || second
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::build_dynkin;
    use crate::hom::{h_table, ZCover};

    #[test]
    fn rectangle_matches_theta_on_a4() {
        let d = build_dynkin(DynkinKind::A, 4).unwrap();
        let cover = ZCover::new(&d);
        for v in 0..4 {
            let x = (0, v);
            let t = h_table(&cover, x).unwrap();
            for y in neighbourhood(&d, x, 3) {
                assert_eq!(t.h(y), rectangle_h(&d, y, x).unwrap(), "y={y:?} x={x:?}");
            }
        }
    }

    #[test]
    fn regions_match_theta_on_small_ranks() {
        for (kind, rank) in [(DynkinKind::B, 3), (DynkinKind::C, 4), (DynkinKind::D, 4), (DynkinKind::D, 5)] {
            let d = build_dynkin(kind, rank).unwrap();
            let cover = ZCover::new(&d);
            for v in 0..rank {
                for p in 0..2 {
                    let x = (p, v);
                    let support: BTreeSet<_> = h_table(&cover, x).unwrap().support().into_iter().collect();
                    let region = if kind == DynkinKind::D { region_d(&d, x) } else { region_bc(&d, x) }.unwrap();
                    assert_eq!(support, region, "{kind}{rank} x={x:?}");
                }
            }
        }
    }
}
