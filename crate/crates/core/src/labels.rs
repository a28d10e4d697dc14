//! Pair labels `[i j]` of the vertices of `ZA_{n+1}`, `ZB_{n+1}`, `ZC_{n+1}`
//! and `ZD_{n+2}`.
//!
//! The vertex in column `p` and row `k` (1 = bottom) carries `[p, p + k - 1]`,
//! read modulo `n` for type A and `2n` otherwise, with values printed in
//! `1..=modulus`. In type D the two branch tips share row `n + 1` and carry
//! `[p, p + n]` with a sign: the tip `n` (vertex `rank - 2`) is `+` in odd
//! columns, the other tip in even columns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinDiagram, DynkinKind};
use crate::error::{Error, Result};
use crate::quiver::{CoverVertex, TranslationQuiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexLabel {
    pub i: u32,
    pub j: u32,
    pub sign: Option<Sign>,
}

impl VertexLabel {
    pub fn new(i: u32, j: u32) -> Self {
        VertexLabel { i, j, sign: None }
    }

    pub fn signed(i: u32, j: u32, sign: Sign) -> Self {
        VertexLabel { i, j, sign: Some(sign) }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}]", self.i, self.j)?;
        match self.sign {
            Some(Sign::Plus) => f.write_str("+"),
            Some(Sign::Minus) => f.write_str("-"),
            None => Ok(()),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    /// Accepts `[1 3]`, `1 3`, `13`, `[2 4]+`, `24_-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad label {s:?}"));
        let mut t = s.trim();
        let sign = if let Some(r) = t.strip_suffix('+') {
            t = r;
            Some(Sign::Plus)
        } else if let Some(r) = t.strip_suffix('-') {
            t = r;
            Some(Sign::Minus)
        } else {
            None
        };
        let t = t.trim_end_matches('_').trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = t.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
        let (i, j) = match parts.as_slice() {
            [a, b] => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
            [ab] if ab.len() == 2 && ab.chars().all(|c| c.is_ascii_digit()) => {
                let d: Vec<u32> = ab.chars().map(|c| c.to_digit(10).unwrap()).collect();
                (d[0], d[1])
            }
            _ => return Err(bad()),
        };
        Ok(VertexLabel { i, j, sign })
    }
}

/// The label map of one classical diagram.
#[derive(Debug, Clone)]
pub struct LabelScheme {
    kind: DynkinKind,
    rank: usize,
    n: i64,
    modulus: i64,
    rows: Vec<u32>,
}

impl LabelScheme {
    pub fn new(diagram: &DynkinDiagram) -> Result<Self> {
        let (n, modulus) = match diagram.kind {
            DynkinKind::A => {
                let n = diagram.rank as i64 - 1;
                (n, n)
            }
            DynkinKind::B | DynkinKind::C => {
                let n = diagram.rank as i64 - 1;
                (n, 2 * n)
            }
            DynkinKind::D => {
                let n = diagram.rank as i64 - 2;
                (n, 2 * n)
            }
            other => return Err(Error::NotClassicalType(other)),
        };
        if n < 1 {
            return Err(Error::IllegalRank { kind: diagram.kind, rank: diagram.rank });
        }
        Ok(LabelScheme { kind: diagram.kind, rank: diagram.rank, n, modulus, rows: diagram.rows() })
    }

    /// The parameter `n` of `A_{n+1}`, `B_{n+1}`, `C_{n+1}`, `D_{n+2}`.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    fn value(&self, x: i64) -> u32 {
        ((x - 1).rem_euclid(self.modulus) + 1) as u32
    }

    /// Label value `x` reduced into `1..=modulus`.
    pub fn reduce(&self, x: i64) -> u32 {
        self.value(x)
    }

    /// `(j - i) mod modulus`.
    pub fn width(&self, label: &VertexLabel) -> i64 {
        (i64::from(label.j) - i64::from(label.i)).rem_euclid(self.modulus)
    }

    pub fn is_valid(&self, label: &VertexLabel) -> bool {
        let in_range = |x: u32| x >= 1 && i64::from(x) <= self.modulus;
        if !in_range(label.i) || !in_range(label.j) {
            return false;
        }
        let w = self.width(label);
        match self.kind {
            DynkinKind::A => label.sign.is_none(),
            DynkinKind::B | DynkinKind::C => w <= self.n && label.sign.is_none(),
            _ => w <= self.n && label.sign.is_some() == (w == self.n),
        }
    }

    pub fn label_of(&self, (p, v): CoverVertex) -> VertexLabel {
        let k = i64::from(self.rows[v]);
        let tip = self.kind == DynkinKind::D && v + 2 >= self.rank;
        if tip {
            let first_tip = v + 2 == self.rank;
            let plus = (p.rem_euclid(2) == 1) == first_tip;
            let sign = if plus { Sign::Plus } else { Sign::Minus };
            return VertexLabel::signed(self.value(p), self.value(p + self.n), sign);
        }
        VertexLabel::new(self.value(p), self.value(p + k - 1))
    }

    /// Every cover vertex with column in `[first, first + modulus)` carrying `label`.
    pub fn vertices_with_label(&self, label: &VertexLabel, first: i64) -> Vec<CoverVertex> {
        (first..first + self.modulus)
            .flat_map(|p| (0..self.rank).map(move |v| (p, v)))
            .filter(|&x| self.label_of(x) == *label)
            .collect()
    }

    /// The vertex carrying `label` in the lowest row, with the least column `>= column_hint`.
    pub fn vertex_of(&self, label: &VertexLabel, column_hint: i64) -> Result<CoverVertex> {
        if !self.is_valid(label) {
            return Err(Error::UnknownLabel(label.i, label.j));
        }
        let p = column_hint + (i64::from(label.i) - column_hint).rem_euclid(self.modulus);
        let w = self.width(label);
        if self.kind == DynkinKind::D && w == self.n {
            let plus = label.sign == Some(Sign::Plus);
            let first_tip = (p.rem_euclid(2) == 1) == plus;
            let v = if first_tip { self.rank - 2 } else { self.rank - 1 };
            return Ok((p, v));
        }
        let row = (w + 1) as u32;
        let v = self.rows.iter().position(|&r| r == row).expect("row exists");
        Ok((p, v))
    }

    /// `τ` on labels: both entries drop by one and a sign flips.
    pub fn tau(&self, label: &VertexLabel) -> VertexLabel {
        VertexLabel {
            i: self.value(i64::from(label.i) - 1),
            j: self.value(i64::from(label.j) - 1),
            sign: label.sign.map(Sign::flip),
        }
    }

    /// `[i j]` built from raw integers, reduced.
    pub fn make(&self, i: i64, j: i64, sign: Option<Sign>) -> VertexLabel {
        VertexLabel { i: self.value(i), j: self.value(j), sign }
    }
}

/// Labels of the mesh vertices of a window or quotient of a classical `ZΔ`.
pub fn quiver_labels(quiver: &TranslationQuiver) -> Result<Vec<Option<VertexLabel>>> {
    let scheme = LabelScheme::new(quiver.diagram())?;
    Ok((0..quiver.len()).map(|v| quiver.position(v).map(|x| scheme.label_of(x))).collect())
}

/// Vertex ids of `quiver` carrying one of `labels`, sorted.
pub fn vertices_with_labels(quiver: &TranslationQuiver, labels: &[VertexLabel]) -> Result<Vec<usize>> {
    let scheme = LabelScheme::new(quiver.diagram())?;
    for l in labels {
        if !scheme.is_valid(l) {
            return Err(Error::UnknownLabel(l.i, l.j));
        }
    }
    Ok(quiver_labels(quiver)?
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_some_and(|l| labels.contains(&l)))
        .map(|(v, _)| v)
        .collect())
}
