//! Finite non-negative integer combinations of vertices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `N_0 Q_0`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCombination<V: Ord> {
    coefficients: BTreeMap<V, u64>,
}

impl<V: Ord> Default for VertexCombination<V> {
    fn default() -> Self {
        VertexCombination { coefficients: BTreeMap::new() }
    }
}

impl<V: Ord + Copy> VertexCombination<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(v: V) -> Self {
        let mut c = Self::zero();
        c.coefficients.insert(v, 1);
        c
    }

    pub fn from_pairs<I: IntoIterator<Item = (V, u64)>>(pairs: I) -> Result<Self> {
        let mut c = Self::zero();
        for (v, k) in pairs {
            c.add(v, k)?;
        }
        Ok(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn get(&self, v: V) -> u64 {
        self.coefficients.get(&v).copied().unwrap_or(0)
    }

    /// Number of vertices with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = V> + '_ {
        self.coefficients.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (V, u64)> + '_ {
        self.coefficients.iter().map(|(&v, &k)| (v, k))
    }

    pub fn total(&self) -> u64 {
        self.coefficients.values().sum()
    }

    pub fn add(&mut self, v: V, k: u64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let e = self.coefficients.entry(v).or_insert(0);
        *e = e.checked_add(k).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn add_combination(&mut self, other: &Self) -> Result<()> {
        for (v, k) in other.iter() {
            self.add(v, k)?;
        }
        Ok(())
    }

    /// `(self - other)_+`: coefficientwise difference with negatives set to zero.
    pub fn clamped_sub(&self, other: &Self) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .filter_map(|(&v, &k)| {
                let d = k.saturating_sub(other.get(v));
                (d > 0).then_some((v, d))
            })
            .collect();
        VertexCombination { coefficients }
    }

    /// The unclamped difference as signed coefficients, zeros dropped.
    pub fn signed_sub(&self, other: &Self) -> Result<BTreeMap<V, i64>> {
        let mut out: BTreeMap<V, i64> = BTreeMap::new();
        for (v, k) in self.iter() {
            out.insert(v, i64::try_from(k).map_err(|_| Error::Overflow)?);
        }
        for (v, k) in other.iter() {
            let k = i64::try_from(k).map_err(|_| Error::Overflow)?;
            let e = out.entry(v).or_insert(0);
            *e = e.checked_sub(k).ok_or(Error::Overflow)?;
        }
        out.retain(|_, k| *k != 0);
        Ok(out)
    }

    /// The single vertex of a combination equal to `1·v`.
    pub fn as_unit(&self) -> Option<V> {
        match self.coefficients.iter().next() {
            Some((&v, &1)) if self.coefficients.len() == 1 => Some(v),
            _ => None,
        }
    }

    pub fn map<W: Ord + Copy>(&self, f: impl Fn(V) -> W) -> Result<VertexCombination<W>> {
        VertexCombination::from_pairs(self.iter().map(|(v, k)| (f(v), k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamped_subtraction_never_goes_negative() {
        let p = VertexCombination::from_pairs([(1, 3), (2, 1)]).unwrap();
        let q = VertexCombination::from_pairs([(1, 1), (2, 4), (5, 2)]).unwrap();
        let d = p.clamped_sub(&q);
        assert_eq!(d.get(1), 2);
        assert_eq!(d.get(2), 0);
        assert_eq!(d.get(5), 0);
        assert_eq!(d.len(), 1);
        let s = p.signed_sub(&q).unwrap();
        assert_eq!(s[&2], -3);
        assert_eq!(s[&5], -2);
    }

    #[test]
    fn zeros_are_not_stored() {
        let p = VertexCombination::from_pairs([(1, 0), (2, 1)]).unwrap();
        assert_eq!(p.support().collect::<Vec<_>>(), vec![2]);
        assert_eq!(p.as_unit(), Some(2));
        assert!(VertexCombination::<u8>::zero().is_zero());
    }

    #[test]
    fn overflow_is_an_error() {
        let mut p = VertexCombination::unit(0);
        assert_eq!(p.add(0, u64::MAX), Err(Error::Overflow));
    }
}
