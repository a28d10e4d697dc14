//! Valued Dynkin diagrams.
//!
//! Vertices are numbered from 0 along the spine:
//!
//! * `A_n`: `0 - 1 - ... - n-1`.
//! * `B_n`, `C_n`: as `A_n`, the valued edge joins vertices 0 and 1
//!   (`(1,2)` for `B`, `(2,1)` for `C`).
//! * `D_n`: spine `0 - ... - n-3`, the two branch tips `n-2` and `n-1`
//!   both hang off vertex `n-3`.
//! * `E_n`: spine `0 - ... - n-2`, vertex `n-1` hangs off spine vertex 2.
//! * `F_4`: spine `0 - 1 - 2 - 3` with the `(1,2)` edge between 1 and 2.
//! * `G_2`: `0 - 1` valued `(1,3)`.
//!
//! An edge `(i, j, d_ij, d_ji)` stands for the valued arrow `i -> j` labelled
//! `(d_ij, d_ji)`; reversing it gives `j -> i` labelled `(d_ji, d_ij)`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinKind {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl DynkinKind {
    pub const ALL: [DynkinKind; 9] = [
        DynkinKind::A,
        DynkinKind::B,
        DynkinKind::C,
        DynkinKind::D,
        DynkinKind::E6,
        DynkinKind::E7,
        DynkinKind::E8,
        DynkinKind::F4,
        DynkinKind::G2,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, DynkinKind::A | DynkinKind::B | DynkinKind::C | DynkinKind::D)
    }

    /// Rank forced by the kind, for the exceptional types.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            DynkinKind::E6 => Some(6),
            DynkinKind::E7 => Some(7),
            DynkinKind::E8 => Some(8),
            DynkinKind::F4 => Some(4),
            DynkinKind::G2 => Some(2),
            _ => None,
        }
    }

    pub fn legal_rank(self, rank: usize) -> bool {
        match self {
            DynkinKind::A => rank >= 1,
            DynkinKind::B | DynkinKind::C => rank >= 2,
            DynkinKind::D => rank >= 4,
            other => other.fixed_rank() == Some(rank),
        }
    }
}

impl fmt::Display for DynkinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DynkinKind::A => "A",
            DynkinKind::B => "B",
            DynkinKind::C => "C",
            DynkinKind::D => "D",
            DynkinKind::E6 => "E6",
            DynkinKind::E7 => "E7",
            DynkinKind::E8 => "E8",
            DynkinKind::F4 => "F4",
            DynkinKind::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for DynkinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(DynkinKind::A),
            "B" => Ok(DynkinKind::B),
            "C" => Ok(DynkinKind::C),
            "D" => Ok(DynkinKind::D),
            "E6" => Ok(DynkinKind::E6),
            "E7" => Ok(DynkinKind::E7),
            "E8" => Ok(DynkinKind::E8),
            "F4" => Ok(DynkinKind::F4),
            "G2" => Ok(DynkinKind::G2),
            other => Err(Error::Parse(format!("unknown Dynkin type {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub d_ij: u32,
    pub d_ji: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub kind: DynkinKind,
    pub rank: usize,
    pub edges: Vec<Edge>,
}

fn plain(i: usize, j: usize) -> Edge {
    Edge { i, j, d_ij: 1, d_ji: 1 }
}

fn spine(len: usize) -> Vec<Edge> {
    (1..len).map(|j| plain(j - 1, j)).collect()
}

pub fn build_dynkin(kind: DynkinKind, rank: usize) -> Result<DynkinDiagram> {
    if !kind.legal_rank(rank) {
        return Err(Error::IllegalRank { kind, rank });
    }
    let mut edges = match kind {
        DynkinKind::A | DynkinKind::B | DynkinKind::C | DynkinKind::F4 | DynkinKind::G2 => {
            spine(rank)
        }
        DynkinKind::D => {
            let mut e = spine(rank - 2);
            e.push(plain(rank - 3, rank - 2));
            e.push(plain(rank - 3, rank - 1));
            e
        }
        DynkinKind::E6 | DynkinKind::E7 | DynkinKind::E8 => {
            let mut e = spine(rank - 1);
            e.push(plain(2, rank - 1));
            e
        }
    };
    match kind {
        DynkinKind::B => (edges[0].d_ij, edges[0].d_ji) = (1, 2),
        DynkinKind::C => (edges[0].d_ij, edges[0].d_ji) = (2, 1),
        DynkinKind::F4 => (edges[1].d_ij, edges[1].d_ji) = (1, 2),
        DynkinKind::G2 => (edges[0].d_ij, edges[0].d_ji) = (1, 3),
        _ => {}
    }
    Ok(DynkinDiagram { kind, rank, edges })
}

impl DynkinDiagram {
    pub fn name(&self) -> String {
        match self.kind.fixed_rank() {
            Some(_) => self.kind.to_string(),
            None => format!("{}{}", self.kind, self.rank),
        }
    }

    /// `(d_ij, d_ji)` when `i` and `j` are joined by an edge.
    pub fn valuation(&self, i: usize, j: usize) -> Option<(u32, u32)> {
        self.edges.iter().find_map(|e| {
            if e.i == i && e.j == j {
                Some((e.d_ij, e.d_ji))
            } else if e.i == j && e.j == i {
                Some((e.d_ji, e.d_ij))
            } else {
                None
            }
        })
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.i == i {
                    Some(e.j)
                } else if e.j == i {
                    Some(e.i)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.rank {
            return false;
        }
        let mut seen = vec![false; self.rank];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Vertex from which rows are counted when drawing `ZΔ`.
    fn root(&self) -> usize {
        match self.kind {
            DynkinKind::B | DynkinKind::C => self.rank - 1,
            _ => 0,
        }
    }

    /// Row of each diagram vertex (1 = bottom) in the diagonal layout of `ZΔ`.
    ///
    /// Arrows of `ZΔ` inside one column go from row `r` to row `r + 1`; the
    /// returning arrows go from row `r + 1` to row `r` of the next column.
    pub fn rows(&self) -> Vec<u32> {
        let mut rows = vec![0u32; self.rank];
        let root = self.root();
        rows[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if rows[w] == 0 {
                    rows[w] = rows[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        rows
    }

    /// The diagram involution used for twisted groups `<τ^k ρ>`.
    ///
    /// Only `A_n` (reversal), `D_n` (swap of the branch tips) and `E6` (the
    /// flip of the two long arms) carry one.
    pub fn twist(&self) -> Option<Vec<usize>> {
        let n = self.rank;
        match self.kind {
            DynkinKind::A if n >= 2 => Some((0..n).rev().collect()),
            DynkinKind::D => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Some(p)
            }
            DynkinKind::E6 => Some(vec![4, 3, 2, 1, 0, 5]),
            _ => None,
        }
    }

    /// Positive integers `a_i` with `a_i d_ij = d_ji a_j` on every edge.
    pub fn symmetrizer(&self) -> Vec<u32> {
        // Rationals num/den along a BFS tree, then cleared of denominators.
        let mut num = vec![0u64; self.rank];
        let mut den = vec![0u64; self.rank];
        num[0] = 1;
        den[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if den[w] == 0 {
                    let (d_vw, d_wv) = self.valuation(v, w).expect("neighbor has an edge");
                    num[w] = num[v] * u64::from(d_vw);
                    den[w] = den[v] * u64::from(d_wv);
                    queue.push_back(w);
                }
            }
        }
        let lcm = den.iter().fold(1u64, |acc, &d| acc / gcd(acc, d) * d);
        let mut a: Vec<u64> = num.iter().zip(&den).map(|(n, d)| n * (lcm / d)).collect();
        let g = a.iter().fold(0u64, |acc, &x| gcd(acc, x));
        a.iter_mut().for_each(|x| *x /= g);
        a.into_iter().map(|x| x as u32).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_has_one_triple_edge() {
        let g = build_dynkin(DynkinKind::G2, 2).unwrap();
        assert_eq!(g.edges, vec![Edge { i: 0, j: 1, d_ij: 1, d_ji: 3 }]);
    }

    #[test]
    fn a1_is_a_point() {
        let a = build_dynkin(DynkinKind::A, 1).unwrap();
        assert_eq!(a.rank, 1);
        assert!(a.edges.is_empty());
    }

    #[test]
    fn b3_spine_valuations() {
        let b = build_dynkin(DynkinKind::B, 3).unwrap();
        let vals: Vec<(u32, u32)> = b.edges.iter().map(|e| (e.d_ij, e.d_ji)).collect();
        assert_eq!(vals, vec![(1, 2), (1, 1)]);
    }

    #[test]
    fn illegal_ranks_rejected() {
        for (kind, rank) in [
            (DynkinKind::A, 0),
            (DynkinKind::B, 1),
            (DynkinKind::C, 1),
            (DynkinKind::D, 3),
            (DynkinKind::E6, 7),
            (DynkinKind::F4, 5),
            (DynkinKind::G2, 3),
        ] {
            assert_eq!(build_dynkin(kind, rank), Err(Error::IllegalRank { kind, rank }));
        }
    }

    #[test]
    fn all_diagrams_are_trees_with_expected_valuations() {
        for kind in DynkinKind::ALL {
            let ranks: Vec<usize> = match kind.fixed_rank() {
                Some(r) => vec![r],
                None => (1..10).filter(|&r| kind.legal_rank(r)).collect(),
            };
            for rank in ranks {
                let d = build_dynkin(kind, rank).unwrap();
                assert!(d.is_tree(), "{}", d.name());
                let mut non_simple: Vec<(u32, u32)> = d
                    .edges
                    .iter()
                    .filter(|e| (e.d_ij, e.d_ji) != (1, 1))
                    .map(|e| (e.d_ij, e.d_ji))
                    .collect();
                non_simple.sort();
                let expected = match kind {
                    DynkinKind::B | DynkinKind::F4 => vec![(1, 2)],
                    DynkinKind::C => vec![(2, 1)],
                    DynkinKind::G2 => vec![(1, 3)],
                    _ => vec![],
                };
                assert_eq!(non_simple, expected, "{}", d.name());
                let a = d.symmetrizer();
                for e in &d.edges {
                    assert_eq!(a[e.i] * e.d_ij, e.d_ji * a[e.j]);
                }
            }
        }
    }

    #[test]
    fn twist_is_an_involution_preserving_edges() {
        for (kind, rank) in [(DynkinKind::A, 5), (DynkinKind::A, 4), (DynkinKind::D, 4), (DynkinKind::D, 6), (DynkinKind::E6, 6)] {
            let d = build_dynkin(kind, rank).unwrap();
            let t = d.twist().unwrap();
            for i in 0..rank {
                assert_eq!(t[t[i]], i);
            }
            for e in &d.edges {
                assert_eq!(d.valuation(t[e.i], t[e.j]), Some((e.d_ij, e.d_ji)));
            }
        }
        assert!(build_dynkin(DynkinKind::B, 3).unwrap().twist().is_none());
    }

    #[test]
    fn parse_round_trip() {
        for kind in DynkinKind::ALL {
            assert_eq!(kind.to_string().parse::<DynkinKind>().unwrap(), kind);
        }
        assert!("H3".parse::<DynkinKind>().is_err());
    }
}
