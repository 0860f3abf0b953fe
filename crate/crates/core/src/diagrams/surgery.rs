//! Local surgery on the rotation system of a diagram.

use super::{lift_step, CellKind, Dart, Diagram, DiagramEdge, DiagramKind, Parts};
use crate::error::{Error, Result};
use crate::presentation::CubicalPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Cell(CellKind),
    /// A region being zipped shut.
    Hole,
}

#[derive(Debug, Clone)]
struct Slot {
    name: String,
    role: Role,
    handle: Dart,
}

pub(crate) struct Planar<'a> {
    p: &'a CubicalPresentation,
    kind: DiagramKind,
    vnames: Vec<String>,
    valive: Vec<bool>,
    vlabels: Vec<usize>,
    edges: Vec<Option<DiagramEdge>>,
    rot: Vec<Vec<Dart>>,
    cells: Vec<Option<Slot>>,
    outer: Option<Dart>,
}

fn fail(msg: &str) -> Error {
    Error::Unsupported(msg.to_string())
}

impl<'a> Planar<'a> {
    pub fn new(d: &Diagram, p: &'a CubicalPresentation) -> Self {
        Planar {
            p,
            kind: d.kind,
            vnames: d.vertices.clone(),
            valive: vec![true; d.vertices.len()],
            vlabels: d.vertex_labels.clone(),
            edges: d.edges.iter().cloned().map(Some).collect(),
            rot: d.rotation.clone(),
            cells: d
                .cells
                .iter()
                .map(|c| {
                    Some(Slot {
                        name: c.name.clone(),
                        role: Role::Cell(c.kind),
                        handle: c.boundary[0],
                    })
                })
                .collect(),
            outer: d.outer.first().copied(),
        }
    }

    fn tail(&self, d: Dart) -> usize {
        self.edges[d.edge].as_ref().expect("live edge").ends[if d.forward { 0 } else { 1 }]
    }

    fn head(&self, d: Dart) -> usize {
        self.tail(d.reversed())
    }

    fn label(&self, d: Dart) -> crate::complex::OrientedEdge {
        let l = self.edges[d.edge].as_ref().expect("live edge").label;
        if d.forward {
            l
        } else {
            l.reversed()
        }
    }

    fn sigma(&self, d: Dart) -> Dart {
        let r = &self.rot[self.tail(d)];
        let i = r.iter().position(|&x| x == d).expect("dart in rotation");
        r[(i + 1) % r.len()]
    }

    fn phi(&self, d: Dart) -> Dart {
        self.sigma(d.reversed())
    }

    pub fn orbit(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.phi(start);
        while d != start {
            out.push(d);
            d = self.phi(d);
        }
        out
    }

    /// Move the handle of every face off the darts in `gone`, stepping
    /// along the face and carrying cone basepoints with it. Faces left
    /// with nothing are dropped.
    fn evacuate(&mut self, gone: &[Dart]) {
        for i in 0..self.cells.len() {
            let Some(slot) = self.cells[i].clone() else { continue };
            if !gone.contains(&slot.handle) {
                continue;
            }
            let mut h = slot.handle;
            let mut role = slot.role;
            let start = h;
            let mut ok = false;
            loop {
                if let Role::Cell(CellKind::Cone { relator, basepoint }) = role {
                    let r = &self.p.relators()[relator];
                    let step = lift_step(r, r.domain(), basepoint, self.label(h));
                    let Some(step) = step else { break };
                    role = Role::Cell(CellKind::Cone {
                        relator,
                        basepoint: r.domain().head(step),
                    });
                }
                h = self.phi(h);
                if h == start {
                    break;
                }
                if !gone.contains(&h) {
                    ok = true;
                    break;
                }
            }
            self.cells[i] = ok.then(|| Slot {
                handle: h,
                role,
                name: slot.name,
            });
        }
        if let Some(o) = self.outer {
            if gone.contains(&o) {
                self.outer = self.orbit(o).into_iter().find(|d| !gone.contains(d));
            }
        }
    }

    fn unhook(&mut self, d: Dart) {
        let v = self.tail(d);
        self.rot[v].retain(|&x| x != d);
    }

    /// Delete an edge separating two distinct faces; `drop` is forgotten
    /// and the merged face keeps the identity of the other side.
    pub fn delete_edge(&mut self, e: usize, drop: usize) -> Result<()> {
        let a = Dart::new(e, true);
        let fa = self.orbit(a);
        if fa.contains(&a.reversed()) {
            return Err(fail("edge has one face on both sides"));
        }
        self.cells[drop] = None;
        self.evacuate(&[a, a.reversed()]);
        self.unhook(a);
        self.unhook(a.reversed());
        self.edges[e] = None;
        self.prune_vertices();
        Ok(())
    }

    fn prune_vertices(&mut self) {
        let mut live = self.valive.iter().filter(|&&a| a).count();
        for v in 0..self.vnames.len() {
            if self.valive[v] && self.rot[v].is_empty() && live > 1 {
                self.valive[v] = false;
                live -= 1;
            }
        }
    }

    pub fn make_hole(&mut self, cell: usize) {
        if let Some(s) = self.cells[cell].as_mut() {
            s.role = Role::Hole;
        }
    }

    pub fn handle(&self, cell: usize) -> Option<Dart> {
        self.cells[cell].as_ref().map(|s| s.handle)
    }

    /// Remove a dangling edge whose tip has valence one.
    fn remove_spike(&mut self, into_tip: Dart) {
        let tip = self.head(into_tip);
        self.evacuate(&[into_tip, into_tip.reversed()]);
        self.unhook(into_tip);
        self.unhook(into_tip.reversed());
        self.edges[into_tip.edge] = None;
        self.rot[tip].clear();
        self.prune_vertices();
    }

    /// Identify darts `x` and `y = σ(x)` leaving the same vertex.
    fn fold(&mut self, x: Dart, y: Dart) -> Result<()> {
        if x.edge == y.edge || self.label(x) != self.label(y) {
            return Err(fail("darts cannot be folded"));
        }
        let v = self.tail(x);
        let (wx, wy) = (self.head(x), self.head(y));
        if wx == v || wy == v {
            return Err(fail("folding a loop"));
        }
        let corner = self.orbit(y);
        if wx == wy && corner.len() != 2 {
            return Err(fail("fold would pinch off a sphere"));
        }
        // the corner face loses twin(x) and y; the face through twin(y) takes twin(x)
        self.evacuate(&[y, x.reversed()]);
        for s in self.cells.iter_mut().flatten() {
            if s.handle == y.reversed() {
                s.handle = x.reversed();
            }
        }
        if self.outer == Some(y.reversed()) {
            self.outer = Some(x.reversed());
        }
        if wx == wy {
            self.unhook(y);
            self.unhook(y.reversed());
        } else {
            let rx = self.rot[wx].clone();
            let ry = self.rot[wy].clone();
            let ix = rx.iter().position(|&d| d == x.reversed()).expect("rotation");
            let iy = ry.iter().position(|&d| d == y.reversed()).expect("rotation");
            let mut merged = Vec::with_capacity(rx.len() + ry.len() - 1);
            for k in 0..rx.len() {
                merged.push(rx[(ix + k) % rx.len()]);
            }
            for k in 1..ry.len() {
                merged.push(ry[(iy + k) % ry.len()]);
            }
            self.rot[wx] = merged;
            self.rot[wy].clear();
            self.valive[wy] = false;
            for e in self.edges.iter_mut().flatten() {
                for end in e.ends.iter_mut() {
                    if *end == wy {
                        *end = wx;
                    }
                }
            }
            self.unhook(y);
        }
        self.edges[y.edge] = None;
        Ok(())
    }

    /// Remove spikes hanging into the face of `cell`.
    pub fn trim(&mut self, cell: usize) {
        while let Some(h) = self.handle(cell) {
            let f = self.orbit(h);
            match (0..f.len()).find(|&i| f[(i + 1) % f.len()] == f[i].reversed()) {
                Some(i) if f.len() > 2 || matches!(self.cells[cell].as_ref().unwrap().role, Role::Hole) => {
                    self.remove_spike(f[i])
                }
                _ => break,
            }
        }
    }

    /// Fold matching corners of a hole until it closes up.
    pub fn zip(&mut self, cell: usize) -> Result<()> {
        while let Some(h) = self.handle(cell) {
            let f = self.orbit(h);
            let n = f.len();
            if let Some(i) = (0..n).find(|&i| f[(i + 1) % n] == f[i].reversed()) {
                self.remove_spike(f[i]);
                continue;
            }
            let corner = (0..n).find(|&i| {
                let (x, y) = (f[i].reversed(), f[(i + 1) % n]);
                x.edge != y.edge
                    && self.label(x) == self.label(y)
                    && self.head(x) != self.tail(x)
                    && self.head(y) != self.tail(y)
                    && (self.head(x) != self.head(y) || n == 2)
            });
            match corner {
                Some(i) => self.fold(f[i].reversed(), f[(i + 1) % n])?,
                None => return Err(fail("hole cannot be zipped")),
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Diagram> {
        let mut vmap = vec![usize::MAX; self.vnames.len()];
        let mut vertices = Vec::new();
        let mut vertex_labels = Vec::new();
        for v in 0..self.vnames.len() {
            if self.valive[v] {
                vmap[v] = vertices.len();
                vertices.push(self.vnames[v].clone());
                vertex_labels.push(self.vlabels[v]);
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                emap[i] = edges.len();
                edges.push(DiagramEdge {
                    name: e.name.clone(),
                    ends: [vmap[e.ends[0]], vmap[e.ends[1]]],
                    label: e.label,
                });
            }
        }
        let remap = |d: Dart| Dart::new(emap[d.edge], d.forward);
        let mut cells = Vec::new();
        for s in self.cells.iter().flatten() {
            match s.role {
                Role::Hole => return Err(fail("a hole is left open")),
                Role::Cell(kind) => cells.push(super::Cell {
                    name: s.name.clone(),
                    kind,
                    boundary: self.orbit(s.handle).into_iter().map(remap).collect(),
                }),
            }
        }
        let outer = match self.kind {
            DiagramKind::Sphere => Some(Vec::new()),
            DiagramKind::Disc => match self.outer {
                Some(o) => Some(self.orbit(o).into_iter().map(remap).collect()),
                None if edges.is_empty() => Some(Vec::new()),
                None => None,
            },
        };
        let rotation = (0..self.vnames.len())
            .filter(|&v| self.valive[v])
            .map(|v| self.rot[v].iter().map(|&d| remap(d)).collect())
            .collect();
        Diagram::assemble(
            Parts {
                kind: self.kind,
                vertices,
                edges,
                cells,
                outer,
                rotation: Some(rotation),
                vertex_labels: Some(vertex_labels),
            },
            self.p,
        )
    }
}
