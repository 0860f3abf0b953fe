//! Disc and spherical diagrams over a cubical presentation.
//!
//! A diagram is stored as a rotation system: each vertex carries the cyclic
//! order of the half-edges (darts) leaving it. Faces are the orbits of
//! `φ(d) = σ(twin(d))`, where `σ` is the rotation successor; each face is
//! either a square, a cone-cell, or (for discs) the outer face.

mod curves;
mod features;
pub mod fixtures;
mod pathology;
mod reduce;
mod surgery;

pub use curves::{dual_curves, DualCurve};
pub use features::{boundary_features, check_dichotomy, puncture, BoundaryFeature, DichotomyVerdict, FeatureKind};
pub use pathology::{detect_pathologies, is_reduced, Pathology, ReducedVerdict};
pub use reduce::{reduce, Move, MoveKind, ReduceOutcome};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::raw::{oriented, split_oriented};
use crate::complex::{CubeComplex, OrientedEdge, UnionFind};
use crate::error::{Error, Result};
use crate::presentation::CubicalPresentation;

/// A half-edge of a diagram: diagram edge plus direction.
pub type Dart = OrientedEdge;

fn dart_id(d: Dart) -> usize {
    2 * d.edge + usize::from(!d.forward)
}

fn dart_of(id: usize) -> Dart {
    OrientedEdge::new(id / 2, id % 2 == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    Disc,
    Sphere,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagramEdge {
    pub id: String,
    pub ends: [String; 2],
    /// Oriented edge of the base complex, e.g. `"a+"`.
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagramSquare {
    pub id: String,
    pub boundary: Vec<String>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawConeCell {
    pub id: String,
    pub boundary: Vec<String>,
    pub relator: usize,
    /// Vertex of the relator complex under the tail of the first dart.
    pub basepoint: String,
}

/// Diagram file. Darts are written `edge+` (leaving the tail) and `edge-`
/// (leaving the head). `rotations` and `outer` are optional when they can
/// be recovered from the cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub kind: DiagramKind,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<RawDiagramEdge>,
    #[serde(default)]
    pub squares: Vec<RawDiagramSquare>,
    #[serde(default)]
    pub cone_cells: Vec<RawConeCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotations: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CellKind {
    Square { label: usize },
    Cone { relator: usize, basepoint: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub kind: CellKind,
    pub boundary: Vec<Dart>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramEdge {
    pub name: String,
    pub ends: [usize; 2],
    pub label: OrientedEdge,
}

/// Ordered pair (cone-cells, squares), compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Complexity {
    pub cone_cells: usize,
    pub squares: usize,
}

#[derive(Debug, Clone)]
pub struct Diagram {
    kind: DiagramKind,
    vertices: Vec<String>,
    edges: Vec<DiagramEdge>,
    cells: Vec<Cell>,
    /// Outer face of a disc; empty for spheres and single-vertex discs.
    outer: Vec<Dart>,
    /// Rotation at each vertex: darts leaving it in cyclic order.
    rotation: Vec<Vec<Dart>>,
    /// Base-complex vertex under each diagram vertex.
    vertex_labels: Vec<usize>,
    /// For every dart: the face containing it (`None` = outer) and position.
    face_of: Vec<(Option<usize>, usize)>,
    /// Relator vertex under each boundary position of each cone-cell.
    lifts: Vec<Vec<usize>>,
}

pub(crate) struct Parts {
    pub kind: DiagramKind,
    pub vertices: Vec<String>,
    pub edges: Vec<DiagramEdge>,
    pub cells: Vec<Cell>,
    pub outer: Option<Vec<Dart>>,
    pub rotation: Option<Vec<Vec<Dart>>>,
    pub vertex_labels: Option<Vec<usize>>,
}

fn parse_dart(edges: &HashMap<String, usize>, s: &str, cell: &str) -> Result<Dart> {
    let (stem, fwd) = split_oriented(s);
    let e = edges.get(stem).ok_or_else(|| Error::DanglingReference {
        cell: cell.to_string(),
        reference: s.to_string(),
    })?;
    Ok(OrientedEdge::new(*e, fwd))
}

/// Parse and validate a diagram file against a presentation.
pub fn validate_diagram(raw: &RawDiagram, p: &CubicalPresentation) -> Result<Diagram> {
    let x = p.base();
    let mut vindex = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if vindex.insert(v.clone(), i).is_some() {
            return Err(Error::DuplicateId(v.clone()));
        }
    }
    let mut eindex = HashMap::new();
    let mut edges = Vec::new();
    for (i, e) in raw.edges.iter().enumerate() {
        if eindex.insert(e.id.clone(), i).is_some() || vindex.contains_key(&e.id) {
            return Err(Error::DuplicateId(e.id.clone()));
        }
        let end = |n: &String| {
            vindex.get(n).copied().ok_or_else(|| Error::DanglingReference {
                cell: e.id.clone(),
                reference: n.clone(),
            })
        };
        let (stem, fwd) = split_oriented(&e.label);
        let label = x.find(1, stem).ok_or_else(|| Error::DanglingReference {
            cell: e.id.clone(),
            reference: e.label.clone(),
        })?;
        edges.push(DiagramEdge {
            name: e.id.clone(),
            ends: [end(&e.ends[0])?, end(&e.ends[1])?],
            label: OrientedEdge::new(label, fwd),
        });
    }
    let mut names = std::collections::HashSet::new();
    let mut cells = Vec::new();
    for s in &raw.squares {
        if !names.insert(s.id.clone()) {
            return Err(Error::DuplicateId(s.id.clone()));
        }
        let label = x.find(2, &s.label).ok_or_else(|| Error::DanglingReference {
            cell: s.id.clone(),
            reference: s.label.clone(),
        })?;
        let boundary = s
            .boundary
            .iter()
            .map(|d| parse_dart(&eindex, d, &s.id))
            .collect::<Result<Vec<_>>>()?;
        cells.push(Cell {
            name: s.id.clone(),
            kind: CellKind::Square { label },
            boundary,
        });
    }
    for c in &raw.cone_cells {
        if !names.insert(c.id.clone()) {
            return Err(Error::DuplicateId(c.id.clone()));
        }
        let r = p.relators().get(c.relator).ok_or_else(|| Error::DanglingReference {
            cell: c.id.clone(),
            reference: format!("relator {}", c.relator),
        })?;
        let basepoint = r.domain().find(0, &c.basepoint).ok_or_else(|| Error::DanglingReference {
            cell: c.id.clone(),
            reference: c.basepoint.clone(),
        })?;
        let boundary = c
            .boundary
            .iter()
            .map(|d| parse_dart(&eindex, d, &c.id))
            .collect::<Result<Vec<_>>>()?;
        cells.push(Cell {
            name: c.id.clone(),
            kind: CellKind::Cone {
                relator: c.relator,
                basepoint,
            },
            boundary,
        });
    }
    let outer = match &raw.outer {
        Some(o) => Some(
            o.iter()
                .map(|d| parse_dart(&eindex, d, "outer"))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let rotation = match &raw.rotations {
        Some(rot) => {
            let mut out = vec![Vec::new(); raw.vertices.len()];
            for (v, darts) in rot {
                let vi = *vindex.get(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
                out[vi] = darts
                    .iter()
                    .map(|d| parse_dart(&eindex, d, v))
                    .collect::<Result<Vec<_>>>()?;
            }
            Some(out)
        }
        None => None,
    };
    Diagram::assemble(
        Parts {
            kind: raw.kind,
            vertices: raw.vertices.clone(),
            edges,
            cells,
            outer,
            rotation,
            vertex_labels: None,
        },
        p,
    )
}

impl Diagram {
    pub(crate) fn assemble(parts: Parts, p: &CubicalPresentation) -> Result<Diagram> {
        let Parts {
            kind,
            vertices,
            edges,
            cells,
            outer,
            rotation,
            vertex_labels,
        } = parts;
        let x = p.base();
        let nv = vertices.len();
        let nd = 2 * edges.len();
        let tail = |d: Dart| edges[d.edge].ends[if d.forward { 0 } else { 1 }];
        let head = |d: Dart| edges[d.edge].ends[if d.forward { 1 } else { 0 }];
        for c in &cells {
            if c.boundary.is_empty() {
                return Err(Error::NonPlanar(format!("cell `{}` has an empty boundary", c.name)));
            }
            if matches!(c.kind, CellKind::Square { .. }) && c.boundary.len() != 4 {
                return Err(Error::NonPlanar(format!("square `{}` does not have 4 sides", c.name)));
            }
            for (i, &d) in c.boundary.iter().enumerate() {
                let next = c.boundary[(i + 1) % c.boundary.len()];
                if head(d) != tail(next) {
                    return Err(Error::NonPlanar(format!("boundary of `{}` is not a closed path", c.name)));
                }
            }
        }
        if kind == DiagramKind::Sphere && outer.as_ref().is_some_and(|o| !o.is_empty()) {
            return Err(Error::NonPlanar("a sphere has no outer face".into()));
        }
        // face successor on darts assigned so far
        let mut succ: Vec<Option<usize>> = vec![None; nd];
        let mut face_of: Vec<Option<(Option<usize>, usize)>> = vec![None; nd];
        let mut place = |d: Dart, face: Option<usize>, pos: usize, next: Dart| -> Result<()> {
            let id = dart_id(d);
            if face_of[id].is_some() {
                return Err(Error::NonPlanar(format!("dart `{}` lies on two faces", oriented(&edges[d.edge].name, d.forward))));
            }
            face_of[id] = Some((face, pos));
            succ[id] = Some(dart_id(next));
            Ok(())
        };
        for (f, c) in cells.iter().enumerate() {
            for (i, &d) in c.boundary.iter().enumerate() {
                place(d, Some(f), i, c.boundary[(i + 1) % c.boundary.len()])?;
            }
        }
        let mut outer = outer;
        if let Some(o) = &outer {
            for (i, &d) in o.iter().enumerate() {
                let next = o[(i + 1) % o.len()];
                if head(d) != tail(next) {
                    return Err(Error::NonPlanar("outer boundary is not a closed path".into()));
                }
                place(d, None, i, next)?;
            }
        }
        // rotation successor, either given or read off the faces
        let mut sigma: Vec<Option<usize>> = vec![None; nd];
        if let Some(rot) = &rotation {
            for (v, ds) in rot.iter().enumerate() {
                for (i, &d) in ds.iter().enumerate() {
                    if d.edge >= edges.len() || tail(d) != v {
                        return Err(Error::NonPlanar(format!("rotation at `{}` lists a dart not leaving it", vertices[v])));
                    }
                    if sigma[dart_id(d)].is_some() {
                        return Err(Error::NonPlanar("dart repeated in rotations".into()));
                    }
                    sigma[dart_id(d)] = Some(dart_id(ds[(i + 1) % ds.len()]));
                }
            }
            if sigma.iter().any(|s| s.is_none()) {
                return Err(Error::NonPlanar("rotation system misses a dart".into()));
            }
            for id in 0..nd {
                if let Some(n) = succ[id] {
                    if sigma[id ^ 1] != Some(n) {
                        return Err(Error::NonPlanar("faces disagree with the rotation system".into()));
                    }
                }
            }
        } else {
            for id in 0..nd {
                if let Some(n) = succ[id] {
                    sigma[id ^ 1] = Some(n);
                }
            }
            if outer.is_none() && kind == DiagramKind::Disc {
                // each vertex may have one gap; close it
                let mut has_pred = vec![false; nd];
                for s in sigma.iter().flatten() {
                    has_pred[*s] = true;
                }
                let mut starts_at = vec![0usize; nv];
                for id in 0..nd {
                    if sigma[id].is_none() {
                        starts_at[tail(dart_of(id))] += 1;
                    }
                }
                if starts_at.iter().any(|&c| c > 1) {
                    return Err(Error::NonPlanar("outer face is ambiguous; give `outer` or `rotations`".into()));
                }
                for id in 0..nd {
                    if sigma[id].is_none() {
                        // walk back to the start of this chain
                        let v = tail(dart_of(id));
                        let first = (0..nd)
                            .find(|&j| tail(dart_of(j)) == v && !has_pred[j])
                            .expect("an open chain has a first dart");
                        sigma[id] = Some(first);
                    }
                }
            }
            if sigma.iter().any(|s| s.is_none()) {
                return Err(Error::NonPlanar("some dart lies on no face".into()));
            }
        }
        // outer face from the darts left over
        if outer.is_none() {
            let rest: Vec<usize> = (0..nd).filter(|&id| face_of[id].is_none()).collect();
            if kind == DiagramKind::Sphere && !rest.is_empty() {
                return Err(Error::NonPlanar("sphere has darts on no cell".into()));
            }
            let mut o = Vec::new();
            if let Some(&start) = rest.first() {
                let mut id = start;
                loop {
                    o.push(dart_of(id));
                    id = sigma[id ^ 1].expect("complete rotation");
                    if id == start {
                        break;
                    }
                }
                if o.len() != rest.len() {
                    return Err(Error::NonPlanar("more than one face is left for the outside".into()));
                }
            }
            for (i, &d) in o.iter().enumerate() {
                let id = dart_id(d);
                if face_of[id].is_some() {
                    return Err(Error::NonPlanar("outer walk runs into a cell".into()));
                }
                face_of[id] = Some((None, i));
            }
            outer = Some(o);
        }
        let outer = outer.unwrap_or_default();
        if face_of.iter().any(|f| f.is_none()) {
            return Err(Error::NonPlanar("some dart lies on no face".into()));
        }
        // rotation cycles: exactly one per vertex with edges
        let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); nv];
        let mut seen = vec![false; nd];
        for id in 0..nd {
            if seen[id] {
                continue;
            }
            let v = tail(dart_of(id));
            if !rot[v].is_empty() {
                return Err(Error::NonPlanar(format!("link of `{}` is not a single cycle", vertices[v])));
            }
            let mut j = id;
            loop {
                seen[j] = true;
                rot[v].push(dart_of(j));
                j = sigma[j].expect("complete rotation");
                if j == id {
                    break;
                }
            }
        }
        // connected
        let mut dsu = UnionFind::new(nv);
        for e in &edges {
            dsu.union(e.ends[0], e.ends[1]);
        }
        if nv == 0 || (0..nv).any(|v| dsu.find(v) != dsu.find(0)) {
            return Err(Error::NonPlanar("diagram is not connected".into()));
        }
        // a sphere reduced to a point keeps one face around it
        let faces = cells.len() + usize::from(kind == DiagramKind::Disc || edges.is_empty() && cells.is_empty());
        let chi = nv as i64 - edges.len() as i64 + faces as i64;
        if chi != 2 {
            let (expected, actual) = match kind {
                DiagramKind::Disc => (1, chi - 1),
                DiagramKind::Sphere => (2, chi),
            };
            return Err(Error::EulerMismatch { expected, actual });
        }
        // labels
        let mut vertex_labels: Vec<Option<usize>> = match vertex_labels {
            Some(v) => v.into_iter().map(Some).collect(),
            None => vec![None; nv],
        };
        for e in &edges {
            for (end, xv) in [(e.ends[0], x.tail(e.label)), (e.ends[1], x.head(e.label))] {
                match vertex_labels[end] {
                    Some(l) if l != xv => {
                        return Err(Error::LabelMismatch(format!("edges at `{}` disagree on its image", vertices[end])))
                    }
                    _ => vertex_labels[end] = Some(xv),
                }
            }
        }
        let vertex_labels: Vec<usize> = vertex_labels.into_iter().map(|l| l.unwrap_or(0)).collect();
        let label = |d: Dart| {
            let l = edges[d.edge].label;
            if d.forward {
                l
            } else {
                l.reversed()
            }
        };
        let mut lifts = vec![Vec::new(); cells.len()];
        for (f, c) in cells.iter().enumerate() {
            match c.kind {
                CellKind::Square { label: s } => {
                    let image: Vec<OrientedEdge> = c.boundary.iter().map(|&d| label(d)).collect();
                    if !square_matches(x, s, &image) {
                        return Err(Error::LabelMismatch(format!(
                            "boundary of `{}` is not the boundary of `{}`",
                            c.name,
                            x.squares()[s].name
                        )));
                    }
                }
                CellKind::Cone { relator, basepoint } => {
                    let r = &p.relators()[relator];
                    let y = r.domain();
                    if r.vertex(basepoint) != vertex_labels[tail(c.boundary[0])] {
                        return Err(Error::LabelMismatch(format!("basepoint of `{}` lies over another vertex", c.name)));
                    }
                    let mut at = basepoint;
                    let mut lift = Vec::new();
                    for &d in &c.boundary {
                        lift.push(at);
                        let step = lift_step(r, y, at, label(d))
                            .ok_or_else(|| Error::ConeBoundaryNotClosed(c.name.clone()))?;
                        at = y.head(step);
                    }
                    if at != basepoint {
                        return Err(Error::ConeBoundaryNotClosed(c.name.clone()));
                    }
                    lifts[f] = lift;
                }
            }
        }
        Ok(Diagram {
            kind,
            vertices,
            edges,
            cells,
            outer,
            rotation: rot,
            vertex_labels,
            face_of: face_of.into_iter().map(|f| f.unwrap()).collect(),
            lifts,
        })
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn outer(&self) -> &[Dart] {
        &self.outer
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn vertex_label(&self, v: usize) -> usize {
        self.vertex_labels[v]
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.edges[d.edge].ends[if d.forward { 0 } else { 1 }]
    }

    pub fn head(&self, d: Dart) -> usize {
        self.edges[d.edge].ends[if d.forward { 1 } else { 0 }]
    }

    /// Base-complex oriented edge under a dart.
    pub fn label(&self, d: Dart) -> OrientedEdge {
        let l = self.edges[d.edge].label;
        if d.forward {
            l
        } else {
            l.reversed()
        }
    }

    /// Face containing a dart (`None` = outer) and its position there.
    pub fn face_of(&self, d: Dart) -> (Option<usize>, usize) {
        self.face_of[dart_id(d)]
    }

    pub fn dart_name(&self, d: Dart) -> String {
        oriented(&self.edges[d.edge].name, d.forward)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Relator vertex under position `k` of cone-cell `f`.
    pub fn lift(&self, f: usize, k: usize) -> usize {
        self.lifts[f][k % self.lifts[f].len()]
    }

    pub fn is_cone(&self, f: usize) -> bool {
        matches!(self.cells[f].kind, CellKind::Cone { .. })
    }

    pub fn find_cell(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    pub fn complexity(&self) -> Complexity {
        let cones = self.cells.iter().filter(|c| matches!(c.kind, CellKind::Cone { .. })).count();
        Complexity {
            cone_cells: cones,
            squares: self.cells.len() - cones,
        }
    }

    /// Labels read along the outer boundary.
    pub fn boundary_labels(&self) -> Vec<OrientedEdge> {
        self.outer.iter().map(|&d| self.label(d)).collect()
    }

    /// A cone-cell with no edge on the outer boundary.
    pub fn is_internal(&self, f: usize) -> bool {
        self.cells[f]
            .boundary
            .iter()
            .all(|&d| self.face_of(d.reversed()).0.is_some())
    }

    pub fn to_raw(&self, p: &CubicalPresentation) -> RawDiagram {
        let x = p.base();
        let names = |ds: &[Dart]| ds.iter().map(|&d| self.dart_name(d)).collect::<Vec<_>>();
        let mut squares = Vec::new();
        let mut cone_cells = Vec::new();
        for c in &self.cells {
            match c.kind {
                CellKind::Square { label } => squares.push(RawDiagramSquare {
                    id: c.name.clone(),
                    boundary: names(&c.boundary),
                    label: x.squares()[label].name.clone(),
                }),
                CellKind::Cone { relator, basepoint } => cone_cells.push(RawConeCell {
                    id: c.name.clone(),
                    boundary: names(&c.boundary),
                    relator,
                    basepoint: p.relators()[relator].domain().vertex_names()[basepoint].clone(),
                }),
            }
        }
        RawDiagram {
            kind: self.kind,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawDiagramEdge {
                    id: e.name.clone(),
                    ends: [self.vertices[e.ends[0]].clone(), self.vertices[e.ends[1]].clone()],
                    label: x.oriented_name(e.label),
                })
                .collect(),
            squares,
            cone_cells,
            rotations: Some(
                self.rotation
                    .iter()
                    .enumerate()
                    .map(|(v, ds)| (self.vertices[v].clone(), names(ds)))
                    .collect(),
            ),
            outer: match self.kind {
                DiagramKind::Disc => Some(names(&self.outer)),
                DiagramKind::Sphere => None,
            },
        }
    }

    pub(crate) fn parts(&self) -> Parts {
        Parts {
            kind: self.kind,
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            cells: self.cells.clone(),
            outer: Some(self.outer.clone()),
            rotation: Some(self.rotation.clone()),
            vertex_labels: Some(self.vertex_labels.clone()),
        }
    }
}

/// The unique relator dart leaving `at` over the base edge `image`.
pub(crate) fn lift_step(
    r: &crate::maps::CombinatorialMap,
    y: &CubeComplex,
    at: usize,
    image: OrientedEdge,
) -> Option<OrientedEdge> {
    y.edges().iter().enumerate().find_map(|(e, edge)| {
        [true, false].into_iter().find_map(|fwd| {
            let d = OrientedEdge::new(e, fwd);
            let tail = edge.ends[if fwd { 0 } else { 1 }];
            (tail == at && r.oriented(d) == image).then_some(d)
        })
    })
}

/// Whether the cyclic sequence `image` reads the boundary of square `s`
/// under one of its eight symmetries.
pub(crate) fn square_matches(x: &CubeComplex, s: usize, image: &[OrientedEdge]) -> bool {
    let t = x.squares()[s].boundary;
    image.len() == 4
        && (0..8).any(|c| {
            let (r, refl) = (c % 4, c >= 4);
            (0..4).all(|k| {
                let want = if refl { t[(r + 4 - k) % 4].reversed() } else { t[(k + r) % 4] };
                image[k] == want
            })
        })
}

#[cfg(test)]
mod tests;
