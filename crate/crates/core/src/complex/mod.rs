//! Finite combinatorial cube complexes of dimension at most three.
//!
//! Cells are stored per dimension and addressed by [`CellRef`]. Every cell
//! also carries a [`LocalCell`]: the combinatorics of its characteristic map
//! (local vertices, local edges, local squares) together with how each of
//! its codimension-one faces sits inside it. Links, hyperplane carriers and
//! convexity all work off this local data, so identifications along the
//! boundary (loops, the one-square torus) are handled uniformly.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

mod collapse;
mod convex;
mod hyperplane;
mod link;
mod npc;
pub mod raw;

pub use collapse::{
    collapse_to_point, free_faces, replay_certificate, CollapseCertificate, CollapseOutcome,
    CollapseStep, ReplayError,
};
pub use convex::{convex_hull, is_convex, ConvexityWitness, HullResult};
pub use hyperplane::{carrier, hyperplanes, separation, Carrier, Hyperplane};
pub use link::{link, Arc, VertexLink};
pub use npc::{check_npc, NpcVerdict, NpcWitness};
pub use raw::RawComplex;

/// Address of a cell: its dimension and index within that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

impl CellRef {
    pub fn new(dim: usize, index: usize) -> Self {
        CellRef { dim, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl OrientedEdge {
    pub fn new(edge: usize, forward: bool) -> Self {
        OrientedEdge { edge, forward }
    }

    pub fn reversed(self) -> Self {
        OrientedEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub ends: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub name: String,
    pub boundary: [OrientedEdge; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    pub name: String,
    pub faces: [usize; 6],
    pub face_signs: [bool; 6],
    pub pairings: Vec<[[usize; 2]; 2]>,
}

/// Edge of a cell's characteristic map; `ends` are local vertex indices
/// listed in the orientation of the global edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalEdge {
    pub ends: [usize; 2],
    pub edge: usize,
}

/// Square of a cell's characteristic map. Slot `k` is a local edge traversed
/// forward or backward, in the global square's boundary order; `verts[k]` is
/// the local vertex at the start of slot `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSquare {
    pub slots: [(usize, bool); 4],
    pub verts: [usize; 4],
    pub square: usize,
}

/// A codimension-one face of a cell, with the maps from the face's own
/// local indices into the containing cell's local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub cell: CellRef,
    pub verts: Vec<usize>,
    pub edges: Vec<usize>,
    pub squares: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalCell {
    pub verts: Vec<usize>,
    pub edges: Vec<LocalEdge>,
    pub squares: Vec<LocalSquare>,
    pub facets: Vec<Facet>,
}

impl LocalCell {
    /// Local edges incident to local vertex `v`, as (local edge, end index).
    pub fn corner(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, le) in self.edges.iter().enumerate() {
            for end in 0..2 {
                if le.ends[end] == v {
                    out.push((i, end));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct CubeComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    cubes: Vec<Cube>,
    local: [Vec<LocalCell>; 4],
    cofacets: [Vec<Vec<CellRef>>; 4],
    names: [HashMap<String, usize>; 4],
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.squares == other.squares
            && self.cubes == other.cubes
    }
}

impl Eq for CubeComplex {}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn index_names<'a>(names: impl Iterator<Item = &'a String>) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, n) in names.enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateId(n.clone()));
        }
    }
    Ok(map)
}

impl RawComplex {
    /// Validate into a [`CubeComplex`], reporting the first violated invariant.
    pub fn validate(&self) -> Result<CubeComplex> {
        if self.dim > 3 {
            return Err(Error::DimensionTooLarge(self.dim));
        }
        let actual = if !self.cubes.is_empty() {
            3
        } else if !self.squares.is_empty() {
            2
        } else if !self.edges.is_empty() {
            1
        } else {
            0
        };
        if actual > self.dim {
            return Err(Error::DimensionMismatch {
                declared: self.dim,
                actual,
            });
        }
        let vnames = index_names(self.vertices.iter())?;
        let enames = index_names(self.edges.iter().map(|e| &e.id))?;
        let snames = index_names(self.squares.iter().map(|s| &s.id))?;
        let cnames = index_names(self.cubes.iter().map(|c| &c.id))?;

        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if e.ends.len() != 2 {
                return Err(Error::Parse(format!("edge `{}` must have exactly 2 ends", e.id)));
            }
            let mut ends = [0; 2];
            for (k, v) in e.ends.iter().enumerate() {
                ends[k] = *vnames.get(v).ok_or_else(|| Error::DanglingReference {
                    cell: e.id.clone(),
                    reference: v.clone(),
                })?;
            }
            edges.push(Edge {
                name: e.id.clone(),
                ends,
            });
        }

        let tail = |oe: OrientedEdge| edges[oe.edge].ends[if oe.forward { 0 } else { 1 }];
        let head = |oe: OrientedEdge| edges[oe.edge].ends[if oe.forward { 1 } else { 0 }];

        let mut squares = Vec::with_capacity(self.squares.len());
        for s in &self.squares {
            if s.boundary.len() != 4 {
                return Err(Error::NonClosingSquareBoundary(s.id.clone()));
            }
            let mut boundary = [OrientedEdge::new(0, true); 4];
            for (k, r) in s.boundary.iter().enumerate() {
                let (stem, fwd) = raw::split_oriented(r);
                let e = *enames.get(stem).ok_or_else(|| Error::DanglingReference {
                    cell: s.id.clone(),
                    reference: r.clone(),
                })?;
                boundary[k] = OrientedEdge::new(e, fwd);
            }
            for k in 0..4 {
                if head(boundary[k]) != tail(boundary[(k + 1) % 4]) {
                    return Err(Error::NonClosingSquareBoundary(s.id.clone()));
                }
            }
            squares.push(Square {
                name: s.id.clone(),
                boundary,
            });
        }

        let mut local: [Vec<LocalCell>; 4] = Default::default();
        for v in 0..self.vertices.len() {
            local[0].push(LocalCell {
                verts: vec![v],
                ..Default::default()
            });
        }
        for (i, e) in edges.iter().enumerate() {
            local[1].push(LocalCell {
                verts: e.ends.to_vec(),
                edges: vec![LocalEdge { ends: [0, 1], edge: i }],
                squares: vec![],
                facets: (0..2)
                    .map(|k| Facet {
                        cell: CellRef::new(0, e.ends[k]),
                        verts: vec![k],
                        edges: vec![],
                        squares: vec![],
                    })
                    .collect(),
            });
        }
        for (i, s) in squares.iter().enumerate() {
            let verts: Vec<usize> = s.boundary.iter().map(|&oe| tail(oe)).collect();
            let mut ledges = Vec::new();
            let mut facets = Vec::new();
            for (k, oe) in s.boundary.iter().enumerate() {
                let ends = if oe.forward {
                    [k, (k + 1) % 4]
                } else {
                    [(k + 1) % 4, k]
                };
                ledges.push(LocalEdge { ends, edge: oe.edge });
                facets.push(Facet {
                    cell: CellRef::new(1, oe.edge),
                    verts: ends.to_vec(),
                    edges: vec![k],
                    squares: vec![],
                });
            }
            let slots = [
                (0, s.boundary[0].forward),
                (1, s.boundary[1].forward),
                (2, s.boundary[2].forward),
                (3, s.boundary[3].forward),
            ];
            local[2].push(LocalCell {
                verts,
                edges: ledges,
                squares: vec![LocalSquare {
                    slots,
                    verts: [0, 1, 2, 3],
                    square: i,
                }],
                facets,
            });
        }

        let mut cubes = Vec::with_capacity(self.cubes.len());
        for c in &self.cubes {
            let (cube, lc) = glue_cube(c, &snames, &squares, &edges, &local[2])?;
            cubes.push(cube);
            local[3].push(lc);
        }

        let mut cofacets: [Vec<Vec<CellRef>>; 4] = [
            vec![vec![]; self.vertices.len()],
            vec![vec![]; edges.len()],
            vec![vec![]; squares.len()],
            vec![vec![]; cubes.len()],
        ];
        for dim in 1..4 {
            for (i, lc) in local[dim].iter().enumerate() {
                for f in &lc.facets {
                    cofacets[f.cell.dim][f.cell.index].push(CellRef::new(dim, i));
                }
            }
        }

        Ok(CubeComplex {
            vertices: self.vertices.clone(),
            edges,
            squares,
            cubes,
            local,
            cofacets,
            names: [vnames, enames, snames, cnames],
        })
    }
}

fn glue_cube(
    c: &raw::RawCube,
    snames: &HashMap<String, usize>,
    squares: &[Square],
    edges: &[Edge],
    square_locals: &[LocalCell],
) -> Result<(Cube, LocalCell)> {
    let bad = |reason: &str| Error::Inconsistent3CubePairing {
        cube: c.id.clone(),
        reason: reason.to_string(),
    };
    if c.faces.len() != 6 {
        return Err(bad("a 3-cube needs exactly 6 faces"));
    }
    let mut faces = [0; 6];
    let mut signs = [true; 6];
    for (j, r) in c.faces.iter().enumerate() {
        let (stem, fwd) = raw::split_oriented(r);
        faces[j] = *snames.get(stem).ok_or_else(|| Error::DanglingReference {
            cell: c.id.clone(),
            reference: r.clone(),
        })?;
        signs[j] = fwd;
    }
    if c.pairings.len() != 12 {
        return Err(bad("a 3-cube needs exactly 12 slot pairings"));
    }
    let mut used = [[false; 4]; 6];
    // node (j, lv) -> 4 * j + lv
    let mut dsu = UnionFind::new(24);
    let mut local_edges = Vec::new();
    let mut slot_edge = [[usize::MAX; 4]; 6];
    for p in &c.pairings {
        for &[j, k] in p {
            if j >= 6 || k >= 4 {
                return Err(bad("slot index out of range"));
            }
            if used[j][k] {
                return Err(bad("slot matched more than once"));
            }
            used[j][k] = true;
        }
        let [[j1, k1], [j2, k2]] = *p;
        if j1 == j2 {
            return Err(bad("slot paired within a single face"));
        }
        let oe1 = squares[faces[j1]].boundary[k1];
        let oe2 = squares[faces[j2]].boundary[k2];
        if oe1.edge != oe2.edge {
            return Err(bad("paired slots carry different edges"));
        }
        let ends_of = |j: usize, k: usize, fwd: bool| {
            if fwd {
                [4 * j + k, 4 * j + (k + 1) % 4]
            } else {
                [4 * j + (k + 1) % 4, 4 * j + k]
            }
        };
        let a = ends_of(j1, k1, oe1.forward);
        let b = ends_of(j2, k2, oe2.forward);
        dsu.union(a[0], b[0]);
        dsu.union(a[1], b[1]);
        slot_edge[j1][k1] = local_edges.len();
        slot_edge[j2][k2] = local_edges.len();
        local_edges.push((a, oe1.edge));
    }
    let mut class_index = HashMap::new();
    let mut verts = Vec::new();
    let mut vclass = [0usize; 24];
    for node in 0..24 {
        let r = dsu.find(node);
        let idx = *class_index.entry(r).or_insert_with(|| {
            let j = node / 4;
            verts.push(square_locals[faces[j]].verts[node % 4]);
            verts.len() - 1
        });
        vclass[node] = idx;
    }
    if verts.len() != 8 {
        return Err(bad("glued faces do not have 8 corners"));
    }
    let ledges: Vec<LocalEdge> = local_edges
        .iter()
        .map(|(a, e)| LocalEdge {
            ends: [vclass[a[0]], vclass[a[1]]],
            edge: *e,
        })
        .collect();
    let mut degree = [0usize; 8];
    let mut pairs = BTreeSet::new();
    for le in &ledges {
        if le.ends[0] == le.ends[1] {
            return Err(bad("glued edge is a loop"));
        }
        degree[le.ends[0]] += 1;
        degree[le.ends[1]] += 1;
        let p = (le.ends[0].min(le.ends[1]), le.ends[0].max(le.ends[1]));
        if !pairs.insert(p) {
            return Err(bad("two glued edges join the same corners"));
        }
    }
    if degree.iter().any(|&d| d != 3) {
        return Err(bad("corner is not trivalent"));
    }
    let _ = edges;
    let mut lsquares = Vec::new();
    let mut facets = Vec::new();
    for j in 0..6 {
        let sq = &squares[faces[j]];
        let fverts = [
            vclass[4 * j],
            vclass[4 * j + 1],
            vclass[4 * j + 2],
            vclass[4 * j + 3],
        ];
        let distinct: BTreeSet<_> = fverts.iter().collect();
        if distinct.len() != 4 {
            return Err(bad("face corners are not distinct after gluing"));
        }
        let slots = [
            (slot_edge[j][0], sq.boundary[0].forward),
            (slot_edge[j][1], sq.boundary[1].forward),
            (slot_edge[j][2], sq.boundary[2].forward),
            (slot_edge[j][3], sq.boundary[3].forward),
        ];
        lsquares.push(LocalSquare {
            slots,
            verts: fverts,
            square: faces[j],
        });
        facets.push(Facet {
            cell: CellRef::new(2, faces[j]),
            verts: fverts.to_vec(),
            edges: slots.iter().map(|s| s.0).collect(),
            squares: vec![j],
        });
    }
    Ok((
        Cube {
            name: c.id.clone(),
            faces,
            face_signs: signs,
            pairings: c.pairings.clone(),
        },
        LocalCell {
            verts,
            edges: ledges,
            squares: lsquares,
            facets,
        },
    ))
}

impl CubeComplex {
    /// Highest dimension of a cell present.
    pub fn dimension(&self) -> usize {
        if !self.cubes.is_empty() {
            3
        } else if !self.squares.is_empty() {
            2
        } else if !self.edges.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn count(&self, dim: usize) -> usize {
        match dim {
            0 => self.vertices.len(),
            1 => self.edges.len(),
            2 => self.squares.len(),
            3 => self.cubes.len(),
            _ => 0,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = CellRef> + '_ {
        (0..4).flat_map(move |d| (0..self.count(d)).map(move |i| CellRef::new(d, i)))
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn name(&self, c: CellRef) -> &str {
        match c.dim {
            0 => &self.vertices[c.index],
            1 => &self.edges[c.index].name,
            2 => &self.squares[c.index].name,
            _ => &self.cubes[c.index].name,
        }
    }

    pub fn find(&self, dim: usize, name: &str) -> Option<usize> {
        self.names.get(dim)?.get(name).copied()
    }

    pub fn local(&self, c: CellRef) -> &LocalCell {
        &self.local[c.dim][c.index]
    }

    /// Cells having `c` as a codimension-one face, listed with multiplicity.
    pub fn cofacets(&self, c: CellRef) -> &[CellRef] {
        &self.cofacets[c.dim][c.index]
    }

    pub fn tail(&self, oe: OrientedEdge) -> usize {
        self.edges[oe.edge].ends[if oe.forward { 0 } else { 1 }]
    }

    pub fn head(&self, oe: OrientedEdge) -> usize {
        self.edges[oe.edge].ends[if oe.forward { 1 } else { 0 }]
    }

    pub fn oriented_name(&self, oe: OrientedEdge) -> String {
        raw::oriented(&self.edges[oe.edge].name, oe.forward)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.squares.len() as i64
            - self.cubes.len() as i64
    }

    /// Faces of `c` of every dimension, including `c` itself.
    pub fn closure_of(&self, c: CellRef) -> BTreeSet<CellRef> {
        let mut out = BTreeSet::new();
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(self.local(x).facets.iter().map(|f| f.cell));
            }
        }
        out
    }

    pub fn closure(&self, cells: &BTreeSet<CellRef>) -> BTreeSet<CellRef> {
        let mut out = BTreeSet::new();
        for &c in cells {
            if !out.contains(&c) {
                out.extend(self.closure_of(c));
            }
        }
        out
    }

    pub fn all_cells(&self) -> BTreeSet<CellRef> {
        self.cells().collect()
    }

    /// Connected components of the face-closed cell set `cells`, each
    /// returned face-closed and sorted by smallest cell.
    pub fn components_of(&self, cells: &BTreeSet<CellRef>) -> Vec<BTreeSet<CellRef>> {
        let verts: Vec<usize> = cells.iter().filter(|c| c.dim == 0).map(|c| c.index).collect();
        let mut pos = HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            pos.insert(v, i);
        }
        let mut dsu = UnionFind::new(verts.len());
        for c in cells.iter().filter(|c| c.dim == 1) {
            let [a, b] = self.edges[c.index].ends;
            if let (Some(&pa), Some(&pb)) = (pos.get(&a), pos.get(&b)) {
                dsu.union(pa, pb);
            }
        }
        let mut groups: Vec<BTreeSet<CellRef>> = Vec::new();
        let mut group_of = HashMap::new();
        for (i, _) in verts.iter().enumerate() {
            let r = dsu.find(i);
            let n = groups.len();
            let g = *group_of.entry(r).or_insert(n);
            if g == groups.len() {
                groups.push(BTreeSet::new());
            }
        }
        for &c in cells {
            let v = self.local(c).verts[0];
            if let Some(&p) = pos.get(&v) {
                let g = group_of[&dsu.find(p)];
                groups[g].insert(c);
            }
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.count(0) > 0 && self.components_of(&self.all_cells()).len() == 1
    }

    pub fn to_raw(&self) -> RawComplex {
        let mut raw = RawComplex::new(self.dimension());
        raw.vertices = self.vertices.clone();
        raw.edges = self
            .edges
            .iter()
            .map(|e| raw::RawEdge {
                id: e.name.clone(),
                ends: vec![self.vertices[e.ends[0]].clone(), self.vertices[e.ends[1]].clone()],
            })
            .collect();
        raw.squares = self
            .squares
            .iter()
            .map(|s| raw::RawSquare {
                id: s.name.clone(),
                boundary: s.boundary.iter().map(|&oe| self.oriented_name(oe)).collect(),
            })
            .collect();
        raw.cubes = self
            .cubes
            .iter()
            .map(|c| raw::RawCube {
                id: c.name.clone(),
                faces: (0..6)
                    .map(|j| raw::oriented(&self.squares[c.faces[j]].name, c.face_signs[j]))
                    .collect(),
                pairings: c.pairings.clone(),
            })
            .collect();
        raw
    }

    /// The subcomplex spanned by the face-closed set `cells`, keeping names.
    /// Also returns, per dimension, the parent index of each new cell.
    pub fn restrict(&self, cells: &BTreeSet<CellRef>) -> (CubeComplex, [Vec<usize>; 4]) {
        let mut keep: [Vec<usize>; 4] = Default::default();
        for c in cells {
            keep[c.dim].push(c.index);
        }
        let full = self.to_raw();
        let mut raw = RawComplex::new(self.dimension());
        raw.vertices = keep[0].iter().map(|&i| full.vertices[i].clone()).collect();
        raw.edges = keep[1].iter().map(|&i| full.edges[i].clone()).collect();
        raw.squares = keep[2].iter().map(|&i| full.squares[i].clone()).collect();
        raw.cubes = keep[3].iter().map(|&i| full.cubes[i].clone()).collect();
        let sub = raw
            .validate()
            .expect("face-closed subset of a valid complex is valid");
        (sub, keep)
    }
}
