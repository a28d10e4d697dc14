//! The `θ` recursion and the hom-length function `h`.
//!
//! For a base vertex `x`: `θ_0(x) = x`, `θ_1(x) = θ(x)` and
//! `θ_n(x) = (θ(θ_{n-1}(x)) - τ θ_{n-2}(x))_+`, where
//! `θ(v) = Σ_{y -> v} d_{yv} y`. Then `h(y, x) = Σ_n θ_n(x)[y]`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combo::VertexCombination;
use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};
use crate::quiver::{cover_predecessors, CoverVertex, TranslationQuiver};

/// What the `θ` recursion needs from a stable translation quiver.
pub trait MeshQuiver: Sync {
    type V: Copy + Ord + Hash + Send + Sync + Debug;

    /// `(y, d_{yv})` for every arrow `y -> v`.
    fn arrows_into(&self, v: Self::V) -> Vec<(Self::V, u32)>;

    fn translate(&self, v: Self::V) -> Option<Self::V>;

    /// Bound on the number of `θ` steps before giving up.
    fn step_cap(&self) -> usize;
}

impl MeshQuiver for TranslationQuiver {
    type V = usize;

    fn arrows_into(&self, v: usize) -> Vec<(usize, u32)> {
        self.predecessors(v).to_vec()
    }

    fn translate(&self, v: usize) -> Option<usize> {
        self.tau(v)
    }

    fn step_cap(&self) -> usize {
        4 * self.len().max(1)
    }
}

/// The infinite quiver `ZΔ`, addressed by `(column, diagram vertex)`.
///
/// Computing on it directly is the same as computing on a window that is
/// wide enough never to clip the support of `θ`.
#[derive(Debug, Clone)]
pub struct ZCover {
    diagram: DynkinDiagram,
    rows: Vec<u32>,
}

impl ZCover {
    pub fn new(diagram: &DynkinDiagram) -> Self {
        ZCover { diagram: diagram.clone(), rows: diagram.rows() }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }
}

impl MeshQuiver for ZCover {
    type V = CoverVertex;

    fn arrows_into(&self, v: CoverVertex) -> Vec<(CoverVertex, u32)> {
        cover_predecessors(&self.diagram, &self.rows, v)
            .into_iter()
            .map(|(y, d, _)| (y, d))
            .collect()
    }

    fn translate(&self, (p, i): CoverVertex) -> Option<CoverVertex> {
        Some((p - 1, i))
    }

    fn step_cap(&self) -> usize {
        // Four times the number of vertices in a Coxeter-number strip.
        4 * self.diagram.rank * (2 * self.diagram.rank + 2)
    }
}

pub fn theta<Q: MeshQuiver>(q: &Q, combo: &VertexCombination<Q::V>) -> Result<VertexCombination<Q::V>> {
    let mut out = VertexCombination::zero();
    for (v, k) in combo.iter() {
        for (y, d) in q.arrows_into(v) {
            out.add(y, k.checked_mul(u64::from(d)).ok_or(Error::Overflow)?)?;
        }
    }
    Ok(out)
}

fn translate_combo<Q: MeshQuiver>(q: &Q, combo: &VertexCombination<Q::V>) -> Result<VertexCombination<Q::V>> {
    let mut out = VertexCombination::zero();
    for (v, k) in combo.iter() {
        out.add(q.translate(v).ok_or(Error::WindowClipped)?, k)?;
    }
    Ok(out)
}

/// `θ(θ_{n-1}) - τ θ_{n-2}` before clamping.
fn unclamped_step<Q: MeshQuiver>(
    q: &Q,
    prev: &VertexCombination<Q::V>,
    prev2: &VertexCombination<Q::V>,
) -> Result<BTreeMap<Q::V, i64>> {
    theta(q, prev)?.signed_sub(&translate_combo(q, prev2)?)
}

fn clamp<V: Ord + Copy>(signed: &BTreeMap<V, i64>) -> VertexCombination<V> {
    VertexCombination::from_pairs(signed.iter().filter(|(_, &k)| k > 0).map(|(&v, &k)| (v, k as u64)))
        .expect("positive parts of a valid combination")
}

pub fn theta_n<Q: MeshQuiver>(q: &Q, x: Q::V, n: usize) -> Result<VertexCombination<Q::V>> {
    let table = h_table(q, x)?;
    Ok(table.rows.get(n).cloned().unwrap_or_default())
}

/// All nonzero rows `θ_0(x), ..., θ_{m-1}(x)` with their column sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTable<V: Ord> {
    pub base: V,
    pub rows: Vec<VertexCombination<V>>,
    pub totals: VertexCombination<V>,
    /// First `n` with `θ_n(x) = 0`.
    pub m: usize,
    /// The vertex with `θ_{m-1}(x) = 1·ω(x)`.
    pub omega: V,
}

impl<V: Ord + Copy> HomTable<V> {
    pub fn h(&self, y: V) -> u64 {
        self.totals.get(y)
    }

    /// `H(x)`, the support of `h(-, x)`.
    pub fn support(&self) -> Vec<V> {
        self.totals.support().collect()
    }
}

pub fn h_table<Q: MeshQuiver>(q: &Q, x: Q::V) -> Result<HomTable<Q::V>> {
    let cap = q.step_cap();
    let mut rows = vec![VertexCombination::unit(x)];
    let first = theta(q, &rows[0])?;
    if !first.is_zero() {
        rows.push(first);
        loop {
            if rows.len() > cap {
                return Err(Error::NonTerminating { cap });
            }
            let n = rows.len();
            let next = clamp(&unclamped_step(q, &rows[n - 1], &rows[n - 2])?);
            if next.is_zero() {
                break;
            }
            rows.push(next);
        }
    }
    let m = rows.len();
    let omega = rows[m - 1].as_unit().ok_or(Error::DegenerateFinalRow(m - 1))?;
    let mut totals = VertexCombination::zero();
    for r in &rows {
        totals.add_combination(r)?;
    }
    Ok(HomTable { base: x, rows, totals, m, omega })
}

pub fn h<Q: MeshQuiver>(q: &Q, y: Q::V, x: Q::V) -> Result<u64> {
    Ok(h_table(q, x)?.h(y))
}

/// `(ω(x), m)`.
pub fn omega<Q: MeshQuiver>(q: &Q, x: Q::V) -> Result<(Q::V, usize)> {
    let t = h_table(q, x)?;
    Ok((t.omega, t.m))
}

/// Whether the unclamped `h'_n` is non-negative for `n < m` and non-positive
/// for `m <= n <= m + 1`, so that clamping only acts after the last row.
pub fn verify_sign_pattern<Q: MeshQuiver>(q: &Q, x: Q::V) -> Result<bool> {
    let cap = q.step_cap();
    let mut rows = vec![VertexCombination::unit(x), theta(q, &VertexCombination::unit(x))?];
    let mut zero_steps = usize::from(rows[1].is_zero());
    while zero_steps < 2 {
        if rows.len() > cap {
            return Err(Error::NonTerminating { cap });
        }
        let n = rows.len();
        let signed = unclamped_step(q, &rows[n - 1], &rows[n - 2])?;
        let clamped = clamp(&signed);
        let negative = signed.values().any(|&k| k < 0);
        let positive = !clamped.is_zero();
        if zero_steps == 0 && positive && negative {
            return Ok(false);
        }
        if zero_steps == 0 && !positive {
            zero_steps = 1;
        } else if zero_steps == 1 {
            if positive {
                return Ok(false);
            }
            zero_steps = 2;
        }
        rows.push(clamped);
    }
    Ok(true)
}

/// `h`, `ω` and `m` for every vertex of a finite stable quiver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomData {
    pub num_vertices: usize,
    /// `h[y * n + x] = h(y, x)`.
    h: Vec<u32>,
    pub omega: Vec<usize>,
    pub m: Vec<usize>,
}

impl HomData {
    pub fn compute(q: &TranslationQuiver) -> Result<Self> {
        if !q.is_stable() {
            return Err(Error::WindowClipped);
        }
        let n = q.len();
        let tables: Vec<HomTable<usize>> = (0..n).into_par_iter().map(|x| h_table(q, x)).collect::<Result<_>>()?;
        let mut h = vec![0u32; n * n];
        for t in &tables {
            for (y, k) in t.totals.iter() {
                h[y * n + t.base] = u32::try_from(k).map_err(|_| Error::Overflow)?;
            }
        }
        Ok(HomData {
            num_vertices: n,
            h,
            omega: tables.iter().map(|t| t.omega).collect(),
            m: tables.iter().map(|t| t.m).collect(),
        })
    }

    pub fn h(&self, y: usize, x: usize) -> u32 {
        self.h[y * self.num_vertices + x]
    }

    /// `H(x)`, sorted.
    pub fn support(&self, x: usize) -> Vec<usize> {
        (0..self.num_vertices).filter(|&y| self.h(y, x) > 0).collect()
    }
}

type TableSlot<V> = std::result::Result<HomTable<V>, Error>;

/// Per-vertex tables computed on first use and then shared.
pub struct HomCache<'a, Q: MeshQuiver> {
    quiver: &'a Q,
    tables: BTreeMap<Q::V, OnceLock<TableSlot<Q::V>>>,
}

impl<'a, Q: MeshQuiver> HomCache<'a, Q> {
    /// A cache that will answer queries for the given base vertices.
    pub fn new(quiver: &'a Q, bases: impl IntoIterator<Item = Q::V>) -> Self {
        HomCache { quiver, tables: bases.into_iter().map(|v| (v, OnceLock::new())).collect() }
    }

    pub fn table(&self, x: Q::V) -> Result<&HomTable<Q::V>> {
        let cell = self.tables.get(&x).ok_or_else(|| Error::Parse(format!("{x:?} is not a cached base")))?;
        cell.get_or_init(|| h_table(self.quiver, x)).as_ref().map_err(Clone::clone)
    }
}
