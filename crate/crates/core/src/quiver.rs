//! Finite valued translation quivers: windows of `ZΔ`, quotients `ZΔ/G` and
//! the augmented quivers `Q_C`.
//!
//! A vertex of `ZΔ` is a pair `(column, diagram vertex)`. Inside a column the
//! arrows climb from row `r` to row `r + 1` (see [`DynkinDiagram::rows`]) and
//! the arrows back down land in the next column, so `τ(p, i) = (p - 1, i)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};

/// A vertex `(column, diagram vertex)` of the infinite quiver `ZΔ`.
pub type CoverVertex = (i64, usize);

/// Generator `τ^shift` or `τ^shift ∘ ρ` of a cyclic automorphism group of `ZΔ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub shift: u32,
    pub twist: bool,
}

impl GroupSpec {
    pub fn new(shift: u32, twist: bool) -> Result<Self> {
        if shift == 0 {
            return Err(Error::IllegalGroup("shift must be at least 1".into()));
        }
        Ok(GroupSpec { shift, twist })
    }

    pub fn tau(shift: u32) -> Result<Self> {
        Self::new(shift, false)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau{}", self.shift)?;
        if self.twist {
            f.write_str("rho")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `tau4`, `tau^4`, `tau5rho`, `tau^5rho`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let rest = lower
            .strip_prefix("tau")
            .ok_or_else(|| Error::Parse(format!("group {s:?} must start with 'tau'")))?;
        let rest = rest.strip_prefix('^').unwrap_or(rest);
        let (digits, twist) = match rest.strip_suffix("rho") {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let shift: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad shift in group {s:?}")))?;
        GroupSpec::new(shift, twist)
    }
}

/// Concrete action of a [`GroupSpec`] on the vertices of `ZΔ`.
#[derive(Debug, Clone)]
pub struct GroupAction {
    shift: i64,
    twist: Option<Vec<usize>>,
    /// Column offset applied by the twist to each diagram vertex.
    offsets: Vec<i64>,
    /// `g^2` (or `g` when untwisted) is the translation by `period` columns.
    period: i64,
}

impl GroupAction {
    pub fn new(diagram: &DynkinDiagram, spec: GroupSpec) -> Result<Self> {
        if spec.shift == 0 {
            return Err(Error::IllegalGroup("shift must be at least 1".into()));
        }
        let shift = i64::from(spec.shift);
        if !spec.twist {
            return Ok(GroupAction {
                shift,
                twist: None,
                offsets: vec![0; diagram.rank],
                period: shift,
            });
        }
        let twist = diagram.twist().ok_or_else(|| {
            Error::IllegalGroup(format!("{} has no diagram involution", diagram.name()))
        })?;
        // ρ(p, i) = (p + s_i, ρ i) keeps the horizontal position 2p + row
        // up to a constant c in {0, 1}.
        let rows = diagram.rows();
        let diffs: Vec<i64> = (0..diagram.rank)
            .map(|i| i64::from(rows[i]) - i64::from(rows[twist[i]]))
            .collect();
        let c = diffs[0].rem_euclid(2);
        if diffs.iter().any(|d| d.rem_euclid(2) != c) {
            return Err(Error::IllegalGroup("twist does not respect the row parity".into()));
        }
        let offsets = diffs.iter().map(|d| (d + c) / 2).collect();
        Ok(GroupAction {
            shift,
            twist: Some(twist),
            offsets,
            period: 2 * shift - c,
        })
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    /// The diagram involution on its own, as an automorphism of `ZΔ`.
    pub fn rho(&self, (p, i): CoverVertex) -> Option<CoverVertex> {
        self.twist.as_ref().map(|t| (p + self.offsets[i], t[i]))
    }

    pub fn apply(&self, (p, i): CoverVertex) -> CoverVertex {
        match &self.twist {
            None => (p - self.shift, i),
            Some(t) => (p - self.shift + self.offsets[i], t[i]),
        }
    }

    pub fn apply_inverse(&self, (p, i): CoverVertex) -> CoverVertex {
        match &self.twist {
            None => (p + self.shift, i),
            Some(t) => {
                let j = t[i];
                (p + self.shift - self.offsets[j], j)
            }
        }
    }

    pub fn power(&self, m: i64, mut x: CoverVertex) -> CoverVertex {
        for _ in 0..m.unsigned_abs() {
            x = if m > 0 { self.apply(x) } else { self.apply_inverse(x) };
        }
        x
    }

    /// Orbit representative: the least `(column, vertex)` with column in `[0, period)`.
    pub fn canonical(&self, (p, i): CoverVertex) -> CoverVertex {
        let first = (p.rem_euclid(self.period), i);
        if self.twist.is_none() {
            return first;
        }
        let (q, j) = self.apply(first);
        first.min((q.rem_euclid(self.period), j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub d: u32,
    pub dp: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    /// A vertex of `ZΔ` or of one of its quotients.
    Mesh { column: i64, vertex: usize },
    /// The projective-injective vertex `p_c` added for a configuration member.
    Projective { member: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Window { first_column: i64, num_columns: usize },
    Quotient { group: GroupSpec },
    Augmented { base: Box<Shape>, members: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct TranslationQuiver {
    pub(crate) diagram: DynkinDiagram,
    pub(crate) shape: Shape,
    pub(crate) action: Option<GroupAction>,
    pub(crate) vertices: Vec<VertexKind>,
    pub(crate) arrows: Vec<Arrow>,
    pub(crate) preds: Vec<Vec<(usize, u32)>>,
    pub(crate) succs: Vec<Vec<usize>>,
    pub(crate) tau: Vec<Option<usize>>,
    pub(crate) tau_inv: Vec<Option<usize>>,
    pub(crate) projective: Vec<usize>,
    pub(crate) injective: Vec<usize>,
    pub(crate) index: HashMap<CoverVertex, usize>,
}

/// Valued arrows into `(p, v)` of `ZΔ`: `(source, d, d')`.
pub(crate) fn cover_predecessors(
    diagram: &DynkinDiagram,
    rows: &[u32],
    (p, v): CoverVertex,
) -> Vec<(CoverVertex, u32, u32)> {
    diagram
        .neighbors(v)
        .into_iter()
        .map(|u| {
            let (d_uv, d_vu) = diagram.valuation(u, v).expect("neighbor");
            let col = if rows[u] < rows[v] { p } else { p - 1 };
            ((col, u), d_uv, d_vu)
        })
        .collect()
}

/// Direct successors of `(p, v)` in `ZΔ`.
pub(crate) fn cover_successors(
    diagram: &DynkinDiagram,
    rows: &[u32],
    (p, v): CoverVertex,
) -> Vec<CoverVertex> {
    diagram
        .neighbors(v)
        .into_iter()
        .map(|u| if rows[u] > rows[v] { (p, u) } else { (p + 1, u) })
        .collect()
}

impl TranslationQuiver {
    fn assemble(
        diagram: DynkinDiagram,
        shape: Shape,
        action: Option<GroupAction>,
        vertices: Vec<VertexKind>,
        arrow_map: BTreeMap<(usize, usize), (u32, u32)>,
        tau: Vec<Option<usize>>,
    ) -> Self {
        let n = vertices.len();
        let arrows: Vec<Arrow> = arrow_map
            .into_iter()
            .map(|((src, dst), (d, dp))| Arrow { src, dst, d, dp })
            .collect();
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        for a in &arrows {
            preds[a.dst].push((a.src, a.d));
            succs[a.src].push(a.dst);
        }
        let mut tau_inv = vec![None; n];
        for (v, t) in tau.iter().enumerate() {
            if let Some(t) = *t {
                tau_inv[t] = Some(v);
            }
        }
        let projective = (0..n).filter(|&v| tau[v].is_none()).collect();
        let injective = (0..n).filter(|&v| tau_inv[v].is_none()).collect();
        let index = vertices
            .iter()
            .enumerate()
            .filter_map(|(id, k)| match *k {
                VertexKind::Mesh { column, vertex } => Some(((column, vertex), id)),
                VertexKind::Projective { .. } => None,
            })
            .collect();
        TranslationQuiver {
            diagram,
            shape,
            action,
            vertices,
            arrows,
            preds,
            succs,
            tau,
            tau_inv,
            projective,
            injective,
            index,
        }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn group(&self) -> Option<GroupSpec> {
        match &self.shape {
            Shape::Quotient { group } => Some(*group),
            _ => None,
        }
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }

    pub fn name(&self) -> String {
        match &self.shape {
            Shape::Window { first_column, num_columns } => format!(
                "Z{}[{}..{})",
                self.diagram.name(),
                first_column,
                first_column + *num_columns as i64
            ),
            Shape::Quotient { group } => format!("Z{}/<{}>", self.diagram.name(), group),
            Shape::Augmented { members, .. } => format!("{}_C(|C|={})", self.base_name(), members.len()),
        }
    }

    fn base_name(&self) -> String {
        match &self.shape {
            Shape::Augmented { base, .. } => {
                let mut q = self.clone();
                q.shape = (**base).clone();
                q.name()
            }
            _ => self.name(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexKind] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Result<VertexKind> {
        self.vertices.get(v).copied().ok_or(Error::UnknownVertex(v))
    }

    /// `(column, diagram vertex)` of a mesh vertex.
    pub fn position(&self, v: usize) -> Option<CoverVertex> {
        match self.vertices.get(v)? {
            VertexKind::Mesh { column, vertex } => Some((*column, *vertex)),
            VertexKind::Projective { .. } => None,
        }
    }

    pub fn find(&self, column: i64, vertex: usize) -> Option<usize> {
        self.index.get(&(column, vertex)).copied()
    }

    /// Image of a vertex of `ZΔ` in this quiver: the orbit for a quotient,
    /// the vertex itself (if present) for a window.
    pub fn project(&self, x: CoverVertex) -> Option<usize> {
        match &self.action {
            Some(a) => self.find(a.canonical(x).0, a.canonical(x).1),
            None => self.find(x.0, x.1),
        }
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn predecessors(&self, v: usize) -> &[(usize, u32)] {
        &self.preds[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succs[v]
    }

    pub fn tau(&self, v: usize) -> Option<usize> {
        self.tau[v]
    }

    pub fn tau_inv(&self, v: usize) -> Option<usize> {
        self.tau_inv[v]
    }

    pub fn projective_vertices(&self) -> &[usize] {
        &self.projective
    }

    pub fn injective_vertices(&self) -> &[usize] {
        &self.injective
    }

    pub fn is_stable(&self) -> bool {
        self.projective.is_empty() && self.injective.is_empty()
    }

    pub fn valuation(&self, src: usize, dst: usize) -> (u32, u32) {
        self.arrows
            .iter()
            .find(|a| a.src == src && a.dst == dst)
            .map(|a| (a.d, a.dp))
            .unwrap_or((0, 0))
    }

    /// The map `a` with `a_x d_xy = d'_xy a_y`, derived from the diagram.
    pub fn symmetrizer(&self) -> Vec<u32> {
        let a = self.diagram.symmetrizer();
        self.vertices
            .iter()
            .map(|k| match *k {
                VertexKind::Mesh { vertex, .. } => a[vertex],
                VertexKind::Projective { member } => match self.vertices[member] {
                    VertexKind::Mesh { vertex, .. } => a[vertex],
                    VertexKind::Projective { .. } => 1,
                },
            })
            .collect()
    }

    /// Pairs `(z, y)` breaking `d'_{(τz) y} = d_{y z}`; empty for a valid quiver.
    pub fn translation_identity_violations(&self) -> Vec<(usize, usize)> {
        let vals: HashMap<(usize, usize), (u32, u32)> =
            self.arrows.iter().map(|a| ((a.src, a.dst), (a.d, a.dp))).collect();
        let mut bad = Vec::new();
        for z in 0..self.len() {
            let Some(tz) = self.tau[z] else { continue };
            let mut ys: Vec<usize> = self.preds[z].iter().map(|&(y, _)| y).collect();
            ys.extend(self.succs[tz].iter().copied());
            ys.sort_unstable();
            ys.dedup();
            for y in ys {
                let d_yz = vals.get(&(y, z)).map_or(0, |v| v.0);
                let dp_tzy = vals.get(&(tz, y)).map_or(0, |v| v.1);
                if d_yz != dp_tzy {
                    bad.push((z, y));
                }
            }
        }
        bad
    }

    /// Arrows breaking `a_x d_xy = d'_xy a_y`.
    pub fn symmetrizer_violations(&self) -> Vec<Arrow> {
        let a = self.symmetrizer();
        self.arrows
            .iter()
            .filter(|e| a[e.src] * e.d != e.dp * a[e.dst])
            .copied()
            .collect()
    }

    /// Copy with the `d` value of one arrow replaced; used as a negative control.
    pub fn with_altered_valuation(&self, arrow: usize, d: u32) -> Self {
        let mut q = self.clone();
        q.arrows[arrow].d = d;
        let a = q.arrows[arrow];
        for p in q.preds[a.dst].iter_mut() {
            if p.0 == a.src {
                p.1 = d;
            }
        }
        q
    }

    /// Horizontal position `2 * column + row` in the diagonal drawing.
    pub fn x_position(&self, v: usize) -> Option<i64> {
        let rows = self.diagram.rows();
        match self.vertices[v] {
            VertexKind::Mesh { column, vertex } => Some(2 * column + i64::from(rows[vertex])),
            VertexKind::Projective { member } => self.x_position(member).map(|x| x + 1),
        }
    }
}

pub fn build_z_window(diagram: &DynkinDiagram, first_column: i64, num_columns: usize) -> Result<TranslationQuiver> {
    if num_columns == 0 {
        return Err(Error::Parse("a window needs at least one column".into()));
    }
    let rows = diagram.rows();
    let last = first_column + num_columns as i64;
    let vertices: Vec<VertexKind> = (first_column..last)
        .flat_map(|column| (0..diagram.rank).map(move |vertex| VertexKind::Mesh { column, vertex }))
        .collect();
    let id = |(p, i): CoverVertex| -> Option<usize> {
        (first_column..last)
            .contains(&p)
            .then(|| (p - first_column) as usize * diagram.rank + i)
    };
    let mut arrow_map = BTreeMap::new();
    let mut tau = vec![None; vertices.len()];
    for (v, kind) in vertices.iter().enumerate() {
        let VertexKind::Mesh { column, vertex } = *kind else { unreachable!() };
        for (src, d, dp) in cover_predecessors(diagram, &rows, (column, vertex)) {
            if let Some(s) = id(src) {
                arrow_map.insert((s, v), (d, dp));
            }
        }
        tau[v] = id((column - 1, vertex));
    }
    Ok(TranslationQuiver::assemble(
        diagram.clone(),
        Shape::Window { first_column, num_columns },
        None,
        vertices,
        arrow_map,
        tau,
    ))
}

/// Successor-disjointness check for `G = <g>` on `ZΔ`; returns the first
/// failing `(power, vertex)` if any.
pub fn check_weakly_admissible(diagram: &DynkinDiagram, group: GroupSpec) -> Result<Option<(i64, CoverVertex)>> {
    let action = GroupAction::new(diagram, group)?;
    let rows = diagram.rows();
    // Powers beyond this bound move every vertex by more than one column.
    let max_offset = action.offsets.iter().map(|o| o.abs()).max().unwrap_or(0);
    let bound = 2 * (max_offset + 2) / action.shift.max(1) + 4;
    for p in 0..action.period {
        for i in 0..diagram.rank {
            let x = (p, i);
            let xs: HashSet<CoverVertex> = cover_successors(diagram, &rows, x).into_iter().collect();
            for m in (-bound..=bound).filter(|&m| m != 0) {
                let y = action.power(m, x);
                if y == x || cover_successors(diagram, &rows, y).iter().any(|s| xs.contains(s)) {
                    return Ok(Some((m, x)));
                }
            }
        }
    }
    Ok(None)
}

pub fn build_quotient(diagram: &DynkinDiagram, group: GroupSpec) -> Result<TranslationQuiver> {
    if let Some((power, (column, vertex))) = check_weakly_admissible(diagram, group)? {
        return Err(Error::NotWeaklyAdmissible { power, column, vertex });
    }
    let action = GroupAction::new(diagram, group)?;
    let rows = diagram.rows();
    let mut reps: Vec<CoverVertex> = (0..action.period)
        .flat_map(|p| (0..diagram.rank).map(move |i| (p, i)))
        .filter(|&x| action.canonical(x) == x)
        .collect();
    reps.sort_unstable();
    let index: HashMap<CoverVertex, usize> = reps.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let proj = |x: CoverVertex| index[&action.canonical(x)];
    let mut arrow_map: BTreeMap<(usize, usize), (u32, u32)> = BTreeMap::new();
    let mut tau = vec![None; reps.len()];
    for (v, &(p, i)) in reps.iter().enumerate() {
        for (src, d, dp) in cover_predecessors(diagram, &rows, (p, i)) {
            let e = arrow_map.entry((proj(src), v)).or_insert((0, 0));
            e.0 += d;
            e.1 += dp;
        }
        tau[v] = Some(proj((p - 1, i)));
    }
    let vertices = reps
        .into_iter()
        .map(|(column, vertex)| VertexKind::Mesh { column, vertex })
        .collect();
    Ok(TranslationQuiver::assemble(
        diagram.clone(),
        Shape::Quotient { group },
        Some(action),
        vertices,
        arrow_map,
        tau,
    ))
}

/// `Q_C`: one new vertex `p_c` with arrows `c -> p_c -> τ⁻¹(c)` per member.
///
/// The set is not validated here; see [`crate::config::attach_configuration`].
pub fn attach_vertices(quiver: &TranslationQuiver, members: &[usize]) -> Result<TranslationQuiver> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut vertices = quiver.vertices.clone();
    let mut arrow_map: BTreeMap<(usize, usize), (u32, u32)> =
        quiver.arrows.iter().map(|a| ((a.src, a.dst), (a.d, a.dp))).collect();
    let mut tau = quiver.tau.clone();
    for &c in &members {
        if c >= quiver.len() {
            return Err(Error::UnknownVertex(c));
        }
        let next = quiver.tau_inv[c].ok_or(Error::MissingTranslate(c))?;
        let p = vertices.len();
        vertices.push(VertexKind::Projective { member: c });
        tau.push(None);
        arrow_map.insert((c, p), (1, 1));
        arrow_map.insert((p, next), (1, 1));
    }
    let mut q = TranslationQuiver::assemble(
        quiver.diagram.clone(),
        Shape::Augmented { base: Box::new(quiver.shape.clone()), members: members.clone() },
        quiver.action.clone(),
        vertices,
        arrow_map,
        tau,
    );
    // τ⁻¹ must stay undefined on the new vertices and defined elsewhere as before.
    q.injective = (quiver.len()..q.len()).chain(quiver.injective.iter().copied()).collect();
    q.injective.sort_unstable();
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{build_dynkin, DynkinKind};

    fn dyn_(kind: DynkinKind, rank: usize) -> DynkinDiagram {
        build_dynkin(kind, rank).unwrap()
    }

    #[test]
    fn a5_window_has_fifteen_vertices() {
        let q = build_z_window(&dyn_(DynkinKind::A, 5), 0, 3).unwrap();
        assert_eq!(q.len(), 15);
        // 4 arrows up per column, 4 back down between consecutive columns.
        assert_eq!(q.arrows().len(), 3 * 4 + 2 * 4);
        assert!(q.translation_identity_violations().is_empty());
    }

    #[test]
    fn single_column_window_has_no_translation() {
        let q = build_z_window(&dyn_(DynkinKind::E7, 7), 0, 1).unwrap();
        assert!(q.tau.iter().all(Option::is_none));
        assert_eq!(q.arrows().len(), 6);
        assert!(q.arrows().iter().all(|a| q.position(a.src).unwrap().0 == q.position(a.dst).unwrap().0));
    }

    #[test]
    fn b3_valued_arrow_reverses_between_columns() {
        let q = build_z_window(&dyn_(DynkinKind::B, 3), 0, 2).unwrap();
        assert_eq!(q.len(), 6);
        let v = |p, i| q.find(p, i).unwrap();
        // Rows run from vertex 2 (bottom) to vertex 0 (top).
        assert_eq!(q.valuation(v(0, 1), v(0, 0)), (2, 1));
        assert_eq!(q.valuation(v(0, 0), v(1, 1)), (1, 2));
        assert_eq!(q.valuation(v(0, 2), v(0, 1)), (1, 1));
        assert!(q.translation_identity_violations().is_empty());
        assert!(q.symmetrizer_violations().is_empty());
    }

    #[test]
    fn quotient_sizes() {
        let e8 = build_quotient(&dyn_(DynkinKind::E8, 8), GroupSpec::tau(14).unwrap()).unwrap();
        assert_eq!(e8.len(), 112);
        let e6 = build_quotient(&dyn_(DynkinKind::E6, 6), GroupSpec::new(5, true).unwrap()).unwrap();
        assert_eq!(e6.len(), 30);
        let a5 = build_quotient(&dyn_(DynkinKind::A, 5), GroupSpec::tau(4).unwrap()).unwrap();
        assert_eq!(a5.len(), 20);
        for q in [&e8, &e6, &a5] {
            assert!(q.is_stable());
            assert!(q.translation_identity_violations().is_empty());
            assert!(q.symmetrizer_violations().is_empty());
        }
    }

    #[test]
    fn zero_shift_is_illegal() {
        assert!(matches!(GroupSpec::tau(0), Err(Error::IllegalGroup(_))));
        assert!(matches!("tau0".parse::<GroupSpec>(), Err(Error::IllegalGroup(_))));
    }

    #[test]
    fn group_parsing() {
        assert_eq!("tau5rho".parse::<GroupSpec>().unwrap(), GroupSpec { shift: 5, twist: true });
        assert_eq!("tau^14".parse::<GroupSpec>().unwrap(), GroupSpec { shift: 14, twist: false });
        assert!("sigma3".parse::<GroupSpec>().is_err());
        assert_eq!(GroupSpec { shift: 5, twist: true }.to_string(), "tau5rho");
    }

    #[test]
    fn twist_needs_a_diagram_involution() {
        let err = build_quotient(&dyn_(DynkinKind::B, 3), GroupSpec::new(2, true).unwrap());
        assert!(matches!(err, Err(Error::IllegalGroup(_))));
    }

    #[test]
    fn weakly_admissible_examples() {
        assert_eq!(check_weakly_admissible(&dyn_(DynkinKind::A, 2), GroupSpec::tau(1).unwrap()).unwrap(), None);
        assert_eq!(
            check_weakly_admissible(&dyn_(DynkinKind::E6, 6), GroupSpec::new(5, true).unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn group_action_inverse_and_canonical() {
        for (kind, rank, spec) in [
            (DynkinKind::A, 4, GroupSpec::new(3, true).unwrap()),
            (DynkinKind::A, 5, GroupSpec::new(2, true).unwrap()),
            (DynkinKind::D, 5, GroupSpec::new(3, true).unwrap()),
            (DynkinKind::E6, 6, GroupSpec::new(5, true).unwrap()),
            (DynkinKind::F4, 4, GroupSpec::tau(5).unwrap()),
        ] {
            let d = dyn_(kind, rank);
            let g = GroupAction::new(&d, spec).unwrap();
            for p in -7..7 {
                for i in 0..rank {
                    let x = (p, i);
                    assert_eq!(g.apply_inverse(g.apply(x)), x);
                    assert_eq!(g.canonical(g.apply(x)), g.canonical(x));
                    let order = if spec.twist { 2 } else { 1 };
                    assert_eq!(g.power(order, x), (p - g.period(), i));
                }
            }
        }
    }

    #[test]
    fn group_generator_is_a_quiver_automorphism() {
        for (kind, rank, spec) in [
            (DynkinKind::A, 4, GroupSpec::new(3, true).unwrap()),
            (DynkinKind::A, 5, GroupSpec::new(2, true).unwrap()),
            (DynkinKind::D, 4, GroupSpec::new(2, true).unwrap()),
            (DynkinKind::E6, 6, GroupSpec::new(5, true).unwrap()),
        ] {
            let d = dyn_(kind, rank);
            let g = GroupAction::new(&d, spec).unwrap();
            let w = build_z_window(&d, -12, 24).unwrap();
            for a in w.arrows() {
                let (s, t) = (g.apply(w.position(a.src).unwrap()), g.apply(w.position(a.dst).unwrap()));
                if let (Some(s), Some(t)) = (w.find(s.0, s.1), w.find(t.0, t.1)) {
                    assert_eq!(w.valuation(s, t), (a.d, a.dp));
                }
            }
        }
    }

    #[test]
    fn quotient_valuation_is_orbit_sum() {
        // A2 / <τ>: both arrows of each column fold onto the same pair of orbits.
        let d = dyn_(DynkinKind::A, 2);
        let q = build_quotient(&d, GroupSpec::tau(1).unwrap()).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.valuation(0, 1), (1, 1));
        assert_eq!(q.valuation(1, 0), (1, 1));
        // Explicit sums on a window for a larger case.
        let d = dyn_(DynkinKind::D, 5);
        let group = GroupSpec::new(3, true).unwrap();
        let q = build_quotient(&d, group).unwrap();
        let w = build_z_window(&d, -10, 20).unwrap();
        for v in 0..q.len() {
            let (p, i) = q.position(v).unwrap();
            let target = w.find(p, i).unwrap();
            let mut sums: HashMap<usize, (u32, u32)> = HashMap::new();
            for &(src, _) in w.predecessors(target) {
                let (d, dp) = w.valuation(src, target);
                let e = sums.entry(q.project(w.position(src).unwrap()).unwrap()).or_default();
                e.0 += d;
                e.1 += dp;
            }
            for (src, val) in sums {
                assert_eq!(q.valuation(src, v), val);
            }
        }
    }

    #[test]
    fn attaching_the_empty_set_changes_nothing() {
        let q = build_quotient(&dyn_(DynkinKind::A, 3), GroupSpec::tau(2).unwrap()).unwrap();
        let qc = attach_vertices(&q, &[]).unwrap();
        assert_eq!(qc.len(), q.len());
        assert_eq!(qc.arrows(), q.arrows());
        assert!(qc.is_stable());
    }

    #[test]
    fn attaching_adds_projective_injective_vertices() {
        let q = build_quotient(&dyn_(DynkinKind::A, 3), GroupSpec::tau(2).unwrap()).unwrap();
        let qc = attach_vertices(&q, &[0, 3]).unwrap();
        assert_eq!(qc.len(), q.len() + 2);
        assert_eq!(qc.projective_vertices(), &[6, 7]);
        assert_eq!(qc.injective_vertices(), &[6, 7]);
        assert_eq!(qc.valuation(0, 6), (1, 1));
        assert_eq!(qc.valuation(6, q.tau_inv(0).unwrap()), (1, 1));
        assert!(qc.translation_identity_violations().is_empty());
        assert!(matches!(attach_vertices(&q, &[99]), Err(Error::UnknownVertex(99))));
    }
}
