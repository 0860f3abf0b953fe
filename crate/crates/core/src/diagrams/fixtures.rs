//! Constructions of small diagrams: grids, single cone-cells, and growth by
//! attaching cells or spurs along the outer boundary.

use std::collections::BTreeMap;

use super::{
    validate_diagram, CellKind, Dart, Diagram, DiagramEdge, DiagramKind, Parts, RawConeCell, RawDiagram,
    RawDiagramEdge, RawDiagramSquare,
};
use crate::complex::{CubeComplex, OrientedEdge};
use crate::error::{Error, Result};
use crate::presentation::CubicalPresentation;

/// `w × h` grid of squares over the torus (`a` horizontal, `b` vertical, square `t`).
pub fn grid(w: usize, h: usize) -> RawDiagram {
    let v = |i: usize, j: usize| format!("p{}_{}", i, j);
    let mut raw = RawDiagram {
        kind: DiagramKind::Disc,
        vertices: Vec::new(),
        edges: Vec::new(),
        squares: Vec::new(),
        cone_cells: Vec::new(),
        rotations: None,
        outer: None,
    };
    for j in 0..=h {
        for i in 0..=w {
            raw.vertices.push(v(i, j));
        }
    }
    for j in 0..=h {
        for i in 0..w {
            raw.edges.push(RawDiagramEdge {
                id: format!("h{}_{}", i, j),
                ends: [v(i, j), v(i + 1, j)],
                label: "a+".into(),
            });
        }
    }
    for j in 0..h {
        for i in 0..=w {
            raw.edges.push(RawDiagramEdge {
                id: format!("v{}_{}", i, j),
                ends: [v(i, j), v(i, j + 1)],
                label: "b+".into(),
            });
        }
    }
    for j in 0..h {
        for i in 0..w {
            raw.squares.push(RawDiagramSquare {
                id: format!("q{}_{}", i, j),
                boundary: vec![
                    format!("h{}_{}+", i, j),
                    format!("v{}_{}+", i + 1, j),
                    format!("h{}_{}-", i, j + 1),
                    format!("v{}_{}-", i, j),
                ],
                label: "t".into(),
            });
        }
    }
    raw
}

fn cycle(word: &str, relator: usize, reversed: bool) -> (Vec<RawDiagramEdge>, Vec<String>, RawConeCell) {
    let n = word.len();
    let vname = |i: usize| format!("x{}", i % n);
    let mut edges = Vec::new();
    let mut darts = Vec::new();
    for (i, c) in word.chars().enumerate() {
        let sign = if c.is_ascii_lowercase() { '+' } else { '-' };
        edges.push(RawDiagramEdge {
            id: format!("e{}", i),
            ends: [vname(i), vname(i + 1)],
            label: format!("{}{}", c.to_ascii_lowercase(), sign),
        });
        darts.push(format!("e{}+", i));
    }
    if reversed {
        darts = darts.iter().rev().map(|d| d.replace('+', "-")).collect();
    }
    let cone = RawConeCell {
        id: if reversed { "c1".into() } else { "c0".into() },
        boundary: darts.clone(),
        relator,
        basepoint: "y0".into(),
    };
    (edges, (0..n).map(vname).collect(), cone)
}

/// Disc made of one cone-cell reading `word` on the relator cycle of `word`.
pub fn cone_disc(word: &str, relator: usize) -> RawDiagram {
    let (edges, vertices, cone) = cycle(word, relator, false);
    RawDiagram {
        kind: DiagramKind::Disc,
        vertices,
        edges,
        squares: Vec::new(),
        cone_cells: vec![cone],
        rotations: None,
        outer: None,
    }
}

/// Sphere made of two cone-cells glued along their whole boundary.
pub fn cone_sphere(word: &str, relator: usize) -> RawDiagram {
    let (edges, vertices, c0) = cycle(word, relator, false);
    let (_, _, c1) = cycle(word, relator, true);
    RawDiagram {
        kind: DiagramKind::Sphere,
        vertices,
        edges,
        squares: Vec::new(),
        cone_cells: vec![c0, c1],
        rotations: None,
        outer: None,
    }
}

/// A cell to be attached outside a diagram.
#[derive(Debug, Clone)]
pub struct NewCell {
    pub name: String,
    pub kind: CellKind,
    /// Labels of the new edges, read from the end of the run back to its start.
    pub labels: Vec<OrientedEdge>,
}

fn fresh(d: &Diagram, stem: &str) -> impl FnMut() -> String {
    let taken: std::collections::HashSet<String> = d
        .vertices()
        .iter()
        .cloned()
        .chain(d.edges().iter().map(|e| e.name.clone()))
        .collect();
    let stem = stem.to_string();
    let mut k = 0usize;
    move || loop {
        let name = format!("{}{}", stem, k);
        k += 1;
        if !taken.contains(&name) {
            return name;
        }
    }
}

/// Attach a new cell along the `run` consecutive outer darts starting at
/// position `at`. Its boundary is the run followed by new edges returning
/// to the start of the run.
pub fn attach(d: &Diagram, p: &CubicalPresentation, at: usize, run: usize, cell: NewCell) -> Result<Diagram> {
    let o = d.outer().to_vec();
    let n = o.len();
    if d.kind() != DiagramKind::Disc || n == 0 || run == 0 || run >= n || cell.labels.is_empty() {
        return Err(Error::Unsupported("cannot attach here".into()));
    }
    let path: Vec<Dart> = (0..run).map(|k| o[(at + k) % n]).collect();
    let before = o[(at + n - 1) % n];
    let last = *path.last().unwrap();
    let (u, w) = (d.tail(path[0]), d.head(last));
    if u == w {
        return Err(Error::Unsupported("run is closed".into()));
    }
    let mut parts = d.parts();
    let mut vname = fresh(d, &format!("{}_v", cell.name));
    let mut ename = fresh(d, &format!("{}_e", cell.name));
    let m = cell.labels.len();
    let mut nodes = vec![w];
    for _ in 1..m {
        nodes.push(parts.vertices.len());
        parts.vertices.push(vname());
    }
    nodes.push(u);
    let mut rotation = parts.rotation.take().expect("rotation");
    rotation.resize(parts.vertices.len(), Vec::new());
    let mut boundary = path.clone();
    let first_new = parts.edges.len();
    for (k, &label) in cell.labels.iter().enumerate() {
        parts.edges.push(DiagramEdge {
            name: ename(),
            ends: [nodes[k], nodes[k + 1]],
            label,
        });
        boundary.push(Dart::new(first_new + k, true));
    }
    let q = |k: usize| Dart::new(first_new + k, true);
    let insert_after = |rot: &mut Vec<Dart>, after: Dart, x: Dart| {
        let i = rot.iter().position(|&y| y == after).expect("dart in rotation");
        rot.insert(i + 1, x);
    };
    insert_after(&mut rotation[w], last.reversed(), q(0));
    insert_after(&mut rotation[u], before.reversed(), q(m - 1).reversed());
    for k in 1..m {
        rotation[nodes[k]] = vec![q(k - 1).reversed(), q(k)];
    }
    parts.rotation = Some(rotation);
    parts.outer = None;
    parts.vertex_labels = None;
    parts.cells.push(super::Cell {
        name: cell.name,
        kind: cell.kind,
        boundary,
    });
    Diagram::assemble(parts, p)
}

/// Hang a new edge labelled `label` at the tail of outer dart `at`.
pub fn add_spur(d: &Diagram, p: &CubicalPresentation, at: usize, label: OrientedEdge) -> Result<Diagram> {
    let o = d.outer().to_vec();
    let mut parts = d.parts();
    let v = if o.is_empty() { 0 } else { d.tail(o[at % o.len()]) };
    let tip = parts.vertices.len();
    parts.vertices.push(fresh(d, "s_v")());
    let e = parts.edges.len();
    parts.edges.push(DiagramEdge {
        name: fresh(d, "s_e")(),
        ends: [v, tip],
        label,
    });
    let mut rotation = parts.rotation.take().expect("rotation");
    let x = Dart::new(e, true);
    if o.is_empty() {
        rotation[v].push(x);
    } else {
        let before = o[(at + o.len() - 1) % o.len()].reversed();
        let i = rotation[v].iter().position(|&y| y == before).expect("dart in rotation");
        rotation[v].insert(i + 1, x);
    }
    rotation.push(vec![x.reversed()]);
    parts.rotation = Some(rotation);
    parts.outer = None;
    parts.vertex_labels = None;
    Diagram::assemble(parts, p)
}

/// Remaining boundary labels of square `s` after reading `prefix`, over
/// every symmetry that starts with `prefix`.
pub fn complete_square(x: &CubeComplex, s: usize, prefix: &[OrientedEdge]) -> Vec<Vec<OrientedEdge>> {
    let t = x.squares()[s].boundary;
    let mut out = Vec::new();
    for c in 0..8 {
        let (r, refl) = (c % 4, c >= 4);
        let reading: Vec<OrientedEdge> = (0..4)
            .map(|k| if refl { t[(r + 4 - k) % 4].reversed() } else { t[(k + r) % 4] })
            .collect();
        if reading.starts_with(prefix) && !out.contains(&reading[prefix.len()..].to_vec()) {
            out.push(reading[prefix.len()..].to_vec());
        }
    }
    out
}

/// Closings of a path with labels `prefix` in a relator whose domain is a
/// cycle: for each start vertex where the prefix lifts, continue without
/// backtracking until the start is reached again. Yields (basepoint, labels).
pub fn complete_cycle(p: &CubicalPresentation, relator: usize, prefix: &[OrientedEdge]) -> Vec<(usize, Vec<OrientedEdge>)> {
    let y = p.relators()[relator].domain();
    (0..y.count(0))
        .filter_map(|start| close_from(p, relator, start, prefix).map(|rest| (start, rest)))
        .collect()
}

/// Like [`complete_cycle`] from a fixed basepoint.
pub fn close_from(p: &CubicalPresentation, relator: usize, start: usize, prefix: &[OrientedEdge]) -> Option<Vec<OrientedEdge>> {
    let r = &p.relators()[relator];
    let y = r.domain();
    let mut at = start;
    let mut last: Option<OrientedEdge> = None;
    for &l in prefix {
        let step = super::lift_step(r, y, at, l)?;
        if last == Some(step.reversed()) {
            return None;
        }
        last = Some(step);
        at = y.head(step);
    }
    let mut rest = Vec::new();
    while at != start || rest.is_empty() && prefix.is_empty() {
        let next = (0..y.count(1))
            .flat_map(|e| [OrientedEdge::new(e, true), OrientedEdge::new(e, false)])
            .find(|&dd| y.tail(dd) == at && Some(dd.reversed()) != last)?;
        rest.push(r.oriented(next));
        last = Some(next);
        at = y.head(next);
        if rest.len() > y.count(1) {
            return None;
        }
    }
    (!rest.is_empty()).then_some(rest)
}

/// Validate a raw diagram, panicking with the error; for fixtures.
pub fn build(raw: &RawDiagram, p: &CubicalPresentation) -> Diagram {
    validate_diagram(raw, p).unwrap_or_else(|e| panic!("fixture diagram is invalid: {}", e))
}

/// Rotation map of a diagram keyed by vertex name, for inspection.
pub fn rotations(d: &Diagram) -> BTreeMap<String, Vec<String>> {
    (0..d.vertices().len())
        .map(|v| (d.vertices()[v].clone(), d.rotation(v).iter().map(|&x| d.dart_name(x)).collect()))
        .collect()
}

/// Re-cap a punctured sphere: turn the outer face into a cone-cell.
pub fn cap(d: &Diagram, p: &CubicalPresentation, name: &str, relator: usize, basepoint: usize) -> Result<Diagram> {
    let mut parts: Parts = d.parts();
    let boundary = d.outer().to_vec();
    parts.kind = DiagramKind::Sphere;
    parts.outer = Some(Vec::new());
    parts.cells.push(super::Cell {
        name: name.to_string(),
        kind: CellKind::Cone { relator, basepoint },
        boundary,
    });
    Diagram::assemble(parts, p)
}
