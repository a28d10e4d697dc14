//! JSON, DOT and ASCII renderings of quivers and configurations.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::dynkin::{build_dynkin, DynkinKind};
use crate::error::{Error, Result};
use crate::labels::{quiver_labels, Sign, VertexLabel};
use crate::quiver::{attach_vertices, build_quotient, build_z_window, Arrow, GroupSpec, Shape, TranslationQuiver, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub first_column: i64,
    pub num_columns: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram_vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    /// For an attached projective-injective vertex, the member it hangs off.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<usize>,
}

/// The on-disk quiver format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub kind: DynkinKind,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attached: Option<Vec<usize>>,
    pub vertices: Vec<VertexEntry>,
    pub arrows: Vec<Arrow>,
    pub tau: Vec<[usize; 2]>,
}

fn labels_or_none(q: &TranslationQuiver) -> Vec<Option<VertexLabel>> {
    quiver_labels(q).unwrap_or_else(|_| vec![None; q.len()])
}

fn sign_text(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

pub fn quiver_file(q: &TranslationQuiver) -> QuiverFile {
    let labels = labels_or_none(q);
    let (base, attached) = match q.shape() {
        Shape::Augmented { base, members } => ((**base).clone(), Some(members.clone())),
        other => (other.clone(), None),
    };
    let (group, window) = match base {
        Shape::Quotient { group } => (Some(group), None),
        Shape::Window { first_column, num_columns } => (None, Some(WindowSpec { first_column, num_columns })),
        Shape::Augmented { .. } => (None, None),
    };
    let vertices = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(id, k)| {
            let label = labels[id];
            let (column, diagram_vertex, member) = match *k {
                VertexKind::Mesh { column, vertex } => (Some(column), Some(vertex), None),
                VertexKind::Projective { member } => (None, None, Some(member)),
            };
            VertexEntry {
                id,
                column,
                diagram_vertex,
                label: label.map(|l| VertexLabel { sign: None, ..l }.to_string()),
                sign: label.and_then(|l| l.sign).map(|s| sign_text(s).to_string()),
                member,
            }
        })
        .collect();
    QuiverFile {
        kind: q.diagram().kind,
        rank: q.diagram().rank,
        group,
        window,
        attached,
        vertices,
        arrows: q.arrows().to_vec(),
        tau: (0..q.len()).filter_map(|v| q.tau(v).map(|t| [v, t])).collect(),
    }
}

pub fn quiver_to_json(q: &TranslationQuiver) -> String {
    serde_json::to_string_pretty(&quiver_file(q)).expect("quiver files serialize")
}

/// Rebuilds the quiver a file describes and checks that the file matches it.
pub fn quiver_from_file(file: &QuiverFile) -> Result<TranslationQuiver> {
    let diagram = build_dynkin(file.kind, file.rank)?;
    let base = match (file.group, file.window) {
        (Some(g), None) => build_quotient(&diagram, g)?,
        (None, Some(w)) => build_z_window(&diagram, w.first_column, w.num_columns)?,
        _ => return Err(Error::Parse("a quiver file needs exactly one of group and window".into())),
    };
    let q = match &file.attached {
        Some(members) => attach_vertices(&base, members)?,
        None => base,
    };
    if quiver_file(&q) != *file {
        return Err(Error::Parse(format!("file contents differ from the quiver {}", q.name())));
    }
    Ok(q)
}

pub fn quiver_from_json(text: &str) -> Result<TranslationQuiver> {
    let file: QuiverFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    quiver_from_file(&file)
}

/// A member given by vertex id or by label text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MemberRef {
    Id(usize),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub quiver: String,
    pub members: Vec<MemberRef>,
}

impl ConfigurationFile {
    pub fn new(q: &TranslationQuiver, c: &Configuration, by_label: bool) -> Self {
        let labels = labels_or_none(q);
        let members = if by_label && labels.iter().all(Option::is_some) {
            let mut seen: Vec<String> = c.members.iter().map(|&v| labels[v].expect("labelled").to_string()).collect();
            seen.dedup();
            seen.into_iter().map(MemberRef::Label).collect()
        } else {
            c.members.iter().map(|&v| MemberRef::Id(v)).collect()
        };
        ConfigurationFile { quiver: q.name(), members }
    }

    /// The set on `q`; a label names every vertex carrying it.
    pub fn resolve(&self, q: &TranslationQuiver) -> Result<Configuration> {
        if self.quiver != q.name() {
            return Err(Error::Parse(format!("set is for {}, not {}", self.quiver, q.name())));
        }
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        for m in &self.members {
            match m {
                MemberRef::Id(v) if *v < q.len() => ids.push(*v),
                MemberRef::Id(v) => return Err(Error::UnknownVertex(*v)),
                MemberRef::Label(s) => labels.push(s.parse::<VertexLabel>()?),
            }
        }
        if !labels.is_empty() {
            ids.extend(Configuration::from_labels(q, &labels)?.members);
        }
        Ok(Configuration::new(ids))
    }
}

pub fn configuration_to_json(q: &TranslationQuiver, c: &Configuration, by_label: bool) -> String {
    serde_json::to_string_pretty(&ConfigurationFile::new(q, c, by_label)).expect("sets serialize")
}

pub fn configuration_from_json(q: &TranslationQuiver, text: &str) -> Result<Configuration> {
    let file: ConfigurationFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.resolve(q)
}

/// Short text naming a vertex: its label for classical types, else `column,vertex`.
pub fn vertex_text(q: &TranslationQuiver) -> Vec<String> {
    let labels = labels_or_none(q);
    (0..q.len())
        .map(|v| match (labels[v], q.vertices()[v]) {
            (Some(l), _) => {
                let sign = l.sign.map_or("", sign_text);
                format!("{} {}{sign}", l.i, l.j)
            }
            (None, VertexKind::Mesh { column, vertex }) => format!("{column},{vertex}"),
            (None, VertexKind::Projective { member }) => format!("p{member}"),
        })
        .collect()
}

/// Graphviz source; arrow labels `(d,d')` are left out for `(1,1)`, `τ` is dashed.
pub fn quiver_to_dot(q: &TranslationQuiver, members: &[usize]) -> String {
    let text = vertex_text(q);
    let rows = q.diagram().rows();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", q.name());
    let _ = writeln!(out, "  node [shape=plaintext];");
    for (v, name) in text.iter().enumerate() {
        let mut attrs = vec![format!("label=\"{name}\"")];
        if let (Some(x), VertexKind::Mesh { vertex, .. }) = (q.x_position(v), q.vertices()[v]) {
            attrs.push(format!("pos=\"{},{}!\"", x, rows[vertex]));
        }
        if members.contains(&v) {
            attrs.push("shape=circle".into());
        }
        let _ = writeln!(out, "  v{v} [{}];", attrs.join(", "));
    }
    for a in q.arrows() {
        if (a.d, a.dp) == (1, 1) {
            let _ = writeln!(out, "  v{} -> v{};", a.src, a.dst);
        } else {
            let _ = writeln!(out, "  v{} -> v{} [label=\"({},{})\"];", a.src, a.dst, a.d, a.dp);
        }
    }
    for v in 0..q.len() {
        if let Some(t) = q.tau(v) {
            let _ = writeln!(out, "  v{v} -> v{t} [style=dashed, constraint=false, arrowhead=none];");
        }
    }
    out.push_str("}\n");
    out
}

/// Grid lines keyed by (descending row, diagram vertex), holding (x position, vertex id).
type GridLines = BTreeMap<(Reverse<u32>, usize), Vec<(i64, usize)>>;

/// The diagonal drawing: one line per diagram vertex, highest row on top,
/// each vertex at horizontal position `2 * column + row`. Cells for which
/// `marked` holds are bracketed.
pub fn ascii_grid(q: &TranslationQuiver, cell: &dyn Fn(usize) -> String, marked: &dyn Fn(usize) -> bool) -> String {
    let rows = q.diagram().rows();
    let mut lines: GridLines = BTreeMap::new();
    for v in 0..q.len() {
        if let (VertexKind::Mesh { vertex, .. }, Some(x)) = (q.vertices()[v], q.x_position(v)) {
            lines.entry((Reverse(rows[vertex]), vertex)).or_default().push((x, v));
        }
    }
    let Some(min_x) = lines.values().flatten().map(|&(x, _)| x).min() else {
        return String::new();
    };
    let texts: Vec<String> = (0..q.len()).map(cell).collect();
    let width = texts.iter().map(|t| t.chars().count()).max().unwrap_or(1) + 2;
    let unit = width.div_ceil(2);
    let mut out = Vec::new();
    for cells in lines.values() {
        let mut line = String::new();
        let mut sorted = cells.clone();
        sorted.sort_unstable();
        for (x, v) in sorted {
            let start = (x - min_x) as usize * unit;
            let body = if marked(v) { format!("[{}]", texts[v]) } else { format!(" {} ", texts[v]) };
            let pad = start.saturating_sub(line.chars().count());
            line.push_str(&" ".repeat(pad));
            line.push_str(&format!("{body:^width$}"));
        }
        out.push(line.trim_end().to_string());
    }
    out.join("\n") + "\n"
}

/// The quiver with labels, members of `members` bracketed.
pub fn quiver_to_ascii(q: &TranslationQuiver, members: &[usize]) -> String {
    let text = vertex_text(q);
    ascii_grid(q, &|v| text[v].clone(), &|v| members.contains(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::classical_quotient;

    #[test]
    fn quiver_json_round_trips() {
        for q in [
            classical_quotient(DynkinKind::D, 2).unwrap(),
            build_quotient(&build_dynkin(DynkinKind::E6, 6).unwrap(), "tau5rho".parse().unwrap()).unwrap(),
            build_z_window(&build_dynkin(DynkinKind::G2, 2).unwrap(), -1, 3).unwrap(),
        ] {
            let text = quiver_to_json(&q);
            let back = quiver_from_json(&text).unwrap();
            assert_eq!(quiver_to_json(&back), text);
        }
    }

    #[test]
    fn tampered_files_are_rejected() {
        let q = classical_quotient(DynkinKind::A, 3).unwrap();
        let mut file = quiver_file(&q);
        file.arrows[0].d = 2;
        assert!(matches!(quiver_from_file(&file), Err(Error::Parse(_))));
    }

    #[test]
    fn configuration_files_accept_labels_and_ids() {
        let q = classical_quotient(DynkinKind::A, 4).unwrap();
        let c = Configuration::from_labels(&q, &["13".parse().unwrap(), "31".parse().unwrap()]).unwrap();
        for by_label in [true, false] {
            let text = configuration_to_json(&q, &c, by_label);
            assert_eq!(configuration_from_json(&q, &text).unwrap(), c);
        }
        let other = classical_quotient(DynkinKind::A, 3).unwrap();
        assert!(configuration_from_json(&other, &configuration_to_json(&q, &c, false)).is_err());
    }

    #[test]
    fn dot_omits_unit_valuations() {
        let q = classical_quotient(DynkinKind::B, 2).unwrap();
        let dot = quiver_to_dot(&q, &[]);
        assert!(dot.contains("[label=\"(1,2)\"]") || dot.contains("[label=\"(2,1)\"]"));
        assert!(!dot.contains("(1,1)"));
        let a = quiver_to_dot(&classical_quotient(DynkinKind::A, 2).unwrap(), &[]);
        assert!(!a.contains("(1,"));
    }

    #[test]
    fn ascii_layout_is_diagonal() {
        let q = build_z_window(&build_dynkin(DynkinKind::A, 3).unwrap(), 0, 2).unwrap();
        let members: Vec<usize> = q.find(0, 0).into_iter().collect();
        let grid = quiver_to_ascii(&q, &members);
        assert_eq!(grid, "       2 2   1 1\n    2 1   1 2\n[2 2]  1 1\n");
    }
}
