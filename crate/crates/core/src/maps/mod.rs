//! Dimension-preserving combinatorial maps between cube complexes.

mod fiber;
mod graph;
mod symmetric;

pub use fiber::{fiber_product, FiberComponent, FiberProduct, Index};
pub use graph::{core_cells, finite_index};
pub use symmetric::{check_minimal, check_symmetric, MinimalVerdict, SymmetricVerdict};

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::raw::split_oriented;
use crate::complex::{link, CellRef, CubeComplex, OrientedEdge};
use crate::error::{Error, Result};

/// How a domain square lands on its image square. With `reflected` false,
/// domain boundary slot `k` goes to image slot `k + rotation`; otherwise the
/// domain boundary reads the image boundary backwards starting at slot
/// `rotation`, reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareImage {
    pub square: usize,
    pub rotation: u8,
    pub reflected: bool,
}

impl SquareImage {
    /// Image of domain slot `k` as (image slot, orientation flipped).
    pub fn slot(&self, k: usize) -> (usize, bool) {
        let r = self.rotation as usize;
        if self.reflected {
            ((r + 4 - k) % 4, true)
        } else {
            ((k + r) % 4, false)
        }
    }

    /// Image of the square's local vertex `k` (tail of slot `k`).
    pub fn corner(&self, k: usize) -> usize {
        let (j, flipped) = self.slot(k);
        if flipped {
            (j + 1) % 4
        } else {
            j
        }
    }
}

/// Square entry in a map file: a bare target name, or the full datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawSquareImage {
    Name(String),
    Full {
        square: String,
        rotation: u8,
        #[serde(default)]
        reflected: bool,
    },
}

/// Serialized map: cell names to cell names. Edge targets carry a `+`/`-`
/// orientation suffix.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMap {
    #[serde(default)]
    pub vertex_map: BTreeMap<String, String>,
    #[serde(default)]
    pub edge_map: BTreeMap<String, String>,
    #[serde(default)]
    pub square_map: BTreeMap<String, RawSquareImage>,
    #[serde(default)]
    pub cube_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
pub struct CombinatorialMap {
    domain: Arc<CubeComplex>,
    codomain: Arc<CubeComplex>,
    vertex_map: Vec<usize>,
    edge_map: Vec<OrientedEdge>,
    square_map: Vec<SquareImage>,
    cube_map: Vec<usize>,
}

fn lookup(x: &CubeComplex, dim: usize, name: &str, cell: &str) -> Result<usize> {
    x.find(dim, name).ok_or_else(|| {
        if (0..4).any(|d| x.find(d, name).is_some()) {
            Error::BoundaryMismatch(format!("{} is sent to a cell of another dimension", cell))
        } else {
            Error::DanglingReference {
                cell: cell.to_string(),
                reference: name.to_string(),
            }
        }
    })
}

pub fn validate_map(
    raw: &RawMap,
    domain: Arc<CubeComplex>,
    codomain: Arc<CubeComplex>,
) -> Result<CombinatorialMap> {
    let mut vertex_map = Vec::new();
    for v in domain.vertex_names() {
        let t = raw
            .vertex_map
            .get(v)
            .ok_or_else(|| Error::MissingAssignment(v.clone()))?;
        vertex_map.push(lookup(&codomain, 0, t, v)?);
    }
    let mut edge_map = Vec::new();
    for e in domain.edges() {
        let t = raw
            .edge_map
            .get(&e.name)
            .ok_or_else(|| Error::MissingAssignment(e.name.clone()))?;
        let (stem, fwd) = split_oriented(t);
        edge_map.push(OrientedEdge::new(lookup(&codomain, 1, stem, &e.name)?, fwd));
    }
    let mut data = Vec::new();
    for s in domain.squares() {
        let t = raw
            .square_map
            .get(&s.name)
            .ok_or_else(|| Error::MissingAssignment(s.name.clone()))?;
        data.push(match t {
            RawSquareImage::Name(n) => (lookup(&codomain, 2, n, &s.name)?, None),
            RawSquareImage::Full {
                square,
                rotation,
                reflected,
            } => (
                lookup(&codomain, 2, square, &s.name)?,
                Some((*rotation % 4, *reflected)),
            ),
        });
    }
    let mut cubes = Vec::new();
    for c in domain.cubes() {
        let t = raw
            .cube_map
            .get(&c.name)
            .ok_or_else(|| Error::MissingAssignment(c.name.clone()))?;
        cubes.push(lookup(&codomain, 3, t, &c.name)?);
    }
    CombinatorialMap::build(domain, codomain, vertex_map, edge_map, data, cubes)
}

impl CombinatorialMap {
    /// Map from explicit images; square data are found by matching boundaries.
    pub fn from_images(
        domain: Arc<CubeComplex>,
        codomain: Arc<CubeComplex>,
        vertex_map: Vec<usize>,
        edge_map: Vec<OrientedEdge>,
        square_map: Vec<usize>,
        cube_map: Vec<usize>,
    ) -> Result<Self> {
        let data = square_map.into_iter().map(|s| (s, None)).collect();
        Self::build(domain, codomain, vertex_map, edge_map, data, cube_map)
    }

    pub fn identity(x: Arc<CubeComplex>) -> Self {
        let vm = (0..x.count(0)).collect();
        let em = (0..x.count(1)).map(|e| OrientedEdge::new(e, true)).collect();
        let sm = (0..x.count(2))
            .map(|s| SquareImage {
                square: s,
                rotation: 0,
                reflected: false,
            })
            .collect();
        let cm = (0..x.count(3)).collect();
        CombinatorialMap {
            domain: x.clone(),
            codomain: x,
            vertex_map: vm,
            edge_map: em,
            square_map: sm,
            cube_map: cm,
        }
    }

    /// Orientation-preserving cell map given per dimension, as produced by
    /// `restrict` and carrier construction.
    pub fn from_cell_images(
        domain: Arc<CubeComplex>,
        codomain: Arc<CubeComplex>,
        images: &[Vec<usize>; 4],
    ) -> Result<Self> {
        let em = images[1].iter().map(|&e| OrientedEdge::new(e, true)).collect();
        Self::from_images(
            domain,
            codomain,
            images[0].clone(),
            em,
            images[2].clone(),
            images[3].clone(),
        )
    }

    fn build(
        domain: Arc<CubeComplex>,
        codomain: Arc<CubeComplex>,
        vertex_map: Vec<usize>,
        edge_map: Vec<OrientedEdge>,
        squares: Vec<(usize, Option<(u8, bool)>)>,
        cube_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.count(0) {
            return Err(Error::MissingAssignment("vertex".into()));
        }
        if edge_map.len() != domain.count(1) {
            return Err(Error::MissingAssignment("edge".into()));
        }
        if squares.len() != domain.count(2) {
            return Err(Error::MissingAssignment("square".into()));
        }
        if cube_map.len() != domain.count(3) {
            return Err(Error::MissingAssignment("cube".into()));
        }
        for (i, e) in domain.edges().iter().enumerate() {
            let im = edge_map[i];
            if vertex_map[e.ends[0]] != codomain.tail(im) || vertex_map[e.ends[1]] != codomain.head(im) {
                return Err(Error::BoundaryMismatch(e.name.clone()));
            }
        }
        let mut square_map = Vec::new();
        for (i, s) in domain.squares().iter().enumerate() {
            let (t, datum) = squares[i];
            let image: Vec<OrientedEdge> = s
                .boundary
                .iter()
                .map(|oe| {
                    let im = edge_map[oe.edge];
                    if oe.forward {
                        im
                    } else {
                        im.reversed()
                    }
                })
                .collect();
            let target = codomain.squares()[t].boundary;
            let fits = |si: &SquareImage| {
                (0..4).all(|k| {
                    let (j, flip) = si.slot(k);
                    let want = if flip { target[j].reversed() } else { target[j] };
                    image[k] == want
                })
            };
            let candidates: Vec<(u8, bool)> = match datum {
                Some(d) => vec![d],
                None => (0..8).map(|c| ((c % 4) as u8, c >= 4)).collect(),
            };
            let found = candidates
                .into_iter()
                .map(|(rotation, reflected)| SquareImage {
                    square: t,
                    rotation,
                    reflected,
                })
                .find(|si| fits(si))
                .ok_or_else(|| Error::BoundaryMismatch(s.name.clone()))?;
            square_map.push(found);
        }
        for (i, c) in domain.cubes().iter().enumerate() {
            let mut want: Vec<usize> = c.faces.iter().map(|&f| square_map[f].square).collect();
            let mut got = codomain.cubes()[cube_map[i]].faces.to_vec();
            want.sort_unstable();
            got.sort_unstable();
            if want != got {
                return Err(Error::BoundaryMismatch(c.name.clone()));
            }
        }
        Ok(CombinatorialMap {
            domain,
            codomain,
            vertex_map,
            edge_map,
            square_map,
            cube_map,
        })
    }

    pub fn domain(&self) -> &Arc<CubeComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<CubeComplex> {
        &self.codomain
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn edge(&self, e: usize) -> OrientedEdge {
        self.edge_map[e]
    }

    pub fn oriented(&self, oe: OrientedEdge) -> OrientedEdge {
        let im = self.edge_map[oe.edge];
        if oe.forward {
            im
        } else {
            im.reversed()
        }
    }

    pub fn square(&self, s: usize) -> SquareImage {
        self.square_map[s]
    }

    pub fn cube(&self, c: usize) -> usize {
        self.cube_map[c]
    }

    pub fn image(&self, c: CellRef) -> CellRef {
        let index = match c.dim {
            0 => self.vertex_map[c.index],
            1 => self.edge_map[c.index].edge,
            2 => self.square_map[c.index].square,
            _ => self.cube_map[c.index],
        };
        CellRef::new(c.dim, index)
    }

    /// Serialized form using cell names.
    pub fn to_raw(&self) -> RawMap {
        let (d, c) = (&self.domain, &self.codomain);
        RawMap {
            vertex_map: (0..d.count(0))
                .map(|v| (d.vertex_names()[v].clone(), c.vertex_names()[self.vertex_map[v]].clone()))
                .collect(),
            edge_map: (0..d.count(1))
                .map(|e| (d.edges()[e].name.clone(), c.oriented_name(self.edge_map[e])))
                .collect(),
            square_map: (0..d.count(2))
                .map(|s| {
                    let si = self.square_map[s];
                    (
                        d.squares()[s].name.clone(),
                        RawSquareImage::Full {
                            square: c.squares()[si.square].name.clone(),
                            rotation: si.rotation,
                            reflected: si.reflected,
                        },
                    )
                })
                .collect(),
            cube_map: (0..d.count(3))
                .map(|q| (d.cubes()[q].name.clone(), c.cubes()[self.cube_map[q]].name.clone()))
                .collect(),
        }
    }

    /// Image of the domain link node `(edge, end)` in the codomain.
    fn node_image(&self, node: (usize, usize)) -> (usize, usize) {
        let im = self.edge_map[node.0];
        (im.edge, if im.forward { node.1 } else { 1 - node.1 })
    }

    pub fn check_local_isometry(&self) -> LocalIsometryVerdict {
        let (dom, cod) = (&self.domain, &self.codomain);
        for v in 0..dom.count(0) {
            let ld = link(dom, v).expect("vertex in range");
            let lc = link(cod, self.vertex_map[v]).expect("image vertex in range");
            let fail = |reason, detail: Vec<String>| {
                LocalIsometryVerdict::Fails(LocalIsometryWitness {
                    vertex: dom.vertex_names()[v].clone(),
                    reason,
                    detail,
                })
            };
            let node_name = |n: (usize, usize)| format!("{}:{}", cod.edges()[n.0].name, n.1);
            let images: Vec<(usize, usize)> = ld.nodes.iter().map(|&n| self.node_image(n)).collect();
            let mut seen = HashSet::new();
            for &im in &images {
                if !seen.insert(im) {
                    return fail(FailureReason::NodesIdentified, vec![node_name(im)]);
                }
            }
            let mut arc_images = HashSet::new();
            for a in &ld.arcs {
                let si = self.square_map[a.square];
                if !arc_images.insert((si.square, si.corner(a.corner))) {
                    return fail(
                        FailureReason::ArcsIdentified,
                        vec![cod.squares()[si.square].name.clone()],
                    );
                }
            }
            let image_nodes: BTreeSet<usize> = images
                .iter()
                .map(|&n| lc.node_index(n).expect("image node lies in codomain link"))
                .collect();
            for a in &lc.arcs {
                if image_nodes.contains(&a.nodes.0)
                    && image_nodes.contains(&a.nodes.1)
                    && !arc_images.contains(&(a.square, a.corner))
                {
                    return fail(
                        FailureReason::NotFull,
                        vec![node_name(lc.nodes[a.nodes.0]), node_name(lc.nodes[a.nodes.1])],
                    );
                }
            }
            let dom_tris: HashSet<[usize; 3]> = ld
                .triangles
                .iter()
                .map(|(t, _)| {
                    let mut m = t.map(|n| lc.node_index(images[n]).expect("image node"));
                    m.sort_unstable();
                    m
                })
                .collect();
            for (t, _) in &lc.triangles {
                if t.iter().all(|n| image_nodes.contains(n)) && !dom_tris.contains(t) {
                    return fail(
                        FailureReason::NotFull,
                        t.iter().map(|&n| node_name(lc.nodes[n])).collect(),
                    );
                }
            }
        }
        LocalIsometryVerdict::LocalIsometry
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    NodesIdentified,
    ArcsIdentified,
    NotFull,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalIsometryWitness {
    pub vertex: String,
    pub reason: FailureReason,
    pub detail: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum LocalIsometryVerdict {
    LocalIsometry,
    Fails(LocalIsometryWitness),
}

impl LocalIsometryVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LocalIsometryVerdict::LocalIsometry)
    }
}

pub fn check_local_isometry(f: &CombinatorialMap) -> LocalIsometryVerdict {
    f.check_local_isometry()
}

#[cfg(test)]
mod tests;
