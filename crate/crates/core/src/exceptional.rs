//! Configuration counts for the exceptional quotients `ZE6/<τ^5 ρ>`,
//! `ZE7/<τ^8>`, `ZE8/<τ^14>`, `ZF4/<τ^5>` and `ZG2/<τ^2>`.

use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{count_mod_tau, enumerate_with_stats, is_configuration, Configuration, SearchOptions};
use crate::dynkin::{build_dynkin, DynkinKind};
use crate::error::{Error, Result};
use crate::hom::HomData;
use crate::quiver::{build_quotient, GroupSpec, TranslationQuiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalJob {
    pub kind: DynkinKind,
    pub group: GroupSpec,
    pub expected_total: u64,
    pub expected_mod_tau: u64,
}

pub const EXCEPTIONAL_KINDS: [DynkinKind; 5] =
    [DynkinKind::E6, DynkinKind::E7, DynkinKind::E8, DynkinKind::F4, DynkinKind::G2];

pub fn job(kind: DynkinKind) -> Result<ExceptionalJob> {
    let (shift, twist, total, mod_tau) = match kind {
        DynkinKind::E6 => (5, true, 77, 11),
        DynkinKind::E7 => (8, false, 346, 44),
        DynkinKind::E8 => (14, false, 1892, 138),
        DynkinKind::F4 => (5, false, 25, 5),
        DynkinKind::G2 => (2, false, 4, 2),
        other => return Err(Error::Parse(format!("{other} is not an exceptional type"))),
    };
    Ok(ExceptionalJob { kind, group: GroupSpec { shift, twist }, expected_total: total, expected_mod_tau: mod_tau })
}

impl ExceptionalJob {
    pub fn quiver(&self) -> Result<TranslationQuiver> {
        let rank = self.kind.fixed_rank().expect("exceptional kinds have a fixed rank");
        build_quotient(&build_dynkin(self.kind, rank)?, self.group)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalResult {
    pub kind: DynkinKind,
    pub group: GroupSpec,
    pub num_vertices: usize,
    pub total: u64,
    pub mod_tau: u64,
    pub expected_total: u64,
    pub expected_mod_tau: u64,
    /// Configurations that fail re-validation; zero for a sound run.
    pub invalid: usize,
    /// For `E6`, whether the induced twist maps the list to itself.
    pub twist_stable: Option<bool>,
    pub search_nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub configurations: Vec<Configuration>,
}

impl ExceptionalResult {
    pub fn matches(&self) -> bool {
        self.total == self.expected_total && self.mod_tau == self.expected_mod_tau && self.invalid == 0
    }

    pub fn verify(&self) -> Result<()> {
        if self.total != self.expected_total {
            return Err(Error::CountMismatch { kind: self.kind, expected: self.expected_total, found: self.total });
        }
        if self.mod_tau != self.expected_mod_tau {
            return Err(Error::CountMismatch { kind: self.kind, expected: self.expected_mod_tau, found: self.mod_tau });
        }
        if self.invalid > 0 {
            return Err(Error::InvalidConfiguration(format!("{} listed sets fail the definition", self.invalid)));
        }
        Ok(())
    }
}

/// Image of a configuration under the diagram twist, on a twisted quotient.
pub fn twist_configuration(q: &TranslationQuiver, c: &Configuration) -> Result<Configuration> {
    let action = q.action().ok_or_else(|| Error::IllegalGroup("not a quotient".into()))?;
    let members = c
        .members
        .iter()
        .map(|&v| {
            let x = q.position(v).ok_or(Error::UnknownVertex(v))?;
            let y = action.rho(x).ok_or_else(|| Error::IllegalGroup("group has no twist".into()))?;
            q.project(y).ok_or(Error::UnknownVertex(v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Configuration::new(members))
}

pub fn run_exceptional(kind: DynkinKind, opts: SearchOptions) -> Result<ExceptionalResult> {
    let start = Instant::now();
    let job = job(kind)?;
    let q = job.quiver()?;
    let hom = HomData::compute(&q)?;
    let (configs, stats) = enumerate_with_stats(&q, &hom, opts)?;
    let invalid = configs
        .par_iter()
        .map(|c| is_configuration(&q, &hom, &c.members).map(|r| usize::from(!r.verdict)))
        .sum::<Result<usize>>()?;
    let mod_tau = count_mod_tau(&q, &configs)? as u64;
    let twist_stable = if job.group.twist {
        let set: HashSet<&Configuration> = configs.iter().collect();
        let mut ok = true;
        for c in &configs {
            ok &= set.contains(&twist_configuration(&q, c)?);
        }
        Some(ok)
    } else {
        None
    };
    Ok(ExceptionalResult {
        kind,
        group: job.group,
        num_vertices: q.len(),
        total: configs.len() as u64,
        mod_tau,
        expected_total: job.expected_total,
        expected_mod_tau: job.expected_mod_tau,
        invalid,
        twist_stable,
        search_nodes: stats.nodes,
        elapsed: start.elapsed(),
        configurations: configs,
    })
}

/// Quiver sizes only.
pub fn dry_run(kinds: &[DynkinKind]) -> Result<Vec<(DynkinKind, usize)>> {
    kinds.iter().map(|&k| Ok((k, job(k)?.quiver()?.len()))).collect()
}

/// Runs several jobs in parallel, keeping the requested order.
pub fn run_all(kinds: &[DynkinKind], opts: SearchOptions) -> Vec<Result<ExceptionalResult>> {
    kinds.par_iter().map(|&k| run_exceptional(k, opts)).collect()
}

/// A named integer sequence with its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub name: String,
    pub values: Vec<String>,
    pub provenance: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub columns: Vec<String>,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn render(&self) -> String {
        let mut cells: Vec<Vec<String>> = vec![std::iter::once(String::new()).chain(self.columns.iter().cloned()).collect()];
        for r in &self.rows {
            cells.push(std::iter::once(r.name.clone()).chain(r.values.iter().cloned()).collect());
        }
        let ncol = cells.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..ncol)
            .map(|c| cells.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
            .collect();
        cells
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The two-row exceptional table from finished runs.
pub fn exceptional_table(results: &[ExceptionalResult]) -> CountTable {
    CountTable {
        columns: results.iter().map(|r| r.kind.to_string()).collect(),
        rows: vec![
            CountRow {
                name: "configurations".into(),
                values: results.iter().map(|r| r.total.to_string()).collect(),
                provenance: "enumerated".into(),
            },
            CountRow {
                name: "modulo tau".into(),
                values: results.iter().map(|r| r.mod_tau.to_string()).collect(),
                provenance: "tau-orbits of the enumerated list".into(),
            },
        ],
    }
}

#[derive(Serialize)]
struct ConfigFile<'a> {
    quiver: String,
    kind: DynkinKind,
    group: GroupSpec,
    count: usize,
    configurations: Vec<&'a [usize]>,
}

#[derive(Serialize)]
struct SummaryEntry<'a> {
    #[serde(flatten)]
    result: &'a ExceptionalResult,
    elapsed_ms: u128,
    status: &'static str,
}

/// Writes `<kind>.configs.json` per result and `summary.json`.
pub fn write_outputs(dir: &Path, results: &[ExceptionalResult]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for r in results {
        let q = job(r.kind).and_then(|j| j.quiver()).map_err(std::io::Error::other)?;
        let file = ConfigFile {
            quiver: q.name(),
            kind: r.kind,
            group: r.group,
            count: r.configurations.len(),
            configurations: r.configurations.iter().map(|c| c.members.as_slice()).collect(),
        };
        let text = serde_json::to_string_pretty(&file).map_err(std::io::Error::other)?;
        fs::write(dir.join(format!("{}.configs.json", r.kind)), text + "\n")?;
    }
    let summary: Vec<SummaryEntry> = results
        .iter()
        .map(|r| SummaryEntry {
            result: r,
            elapsed_ms: r.elapsed.as_millis(),
            status: if r.matches() { "PASS" } else { "FAIL" },
        })
        .collect();
    let text = serde_json::to_string_pretty(&summary).map_err(std::io::Error::other)?;
    fs::write(dir.join("summary.json"), text + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dry_run_sizes() {
        let sizes: Vec<usize> = dry_run(&EXCEPTIONAL_KINDS).unwrap().into_iter().map(|(_, n)| n).collect();
        assert_eq!(sizes, [30, 56, 112, 20, 4]);
    }

    #[test]
    fn small_jobs_match() {
        for kind in [DynkinKind::G2, DynkinKind::F4] {
            let r = run_exceptional(kind, SearchOptions::default()).unwrap();
            assert!(r.matches(), "{r:?}");
            r.verify().unwrap();
        }
    }

    #[test]
    fn classical_kinds_have_no_job() {
        assert!(job(DynkinKind::A).is_err());
    }

    #[test]
    fn table_rendering() {
        let t = CountTable {
            columns: vec!["E6".into(), "G2".into()],
            rows: vec![CountRow { name: "total".into(), values: vec!["77".into(), "4".into()], provenance: String::new() }],
        };
        assert_eq!(t.render(), "       E6  G2\ntotal  77   4");
    }
}
