use crate::error::{Error, Result};

use super::{CellRef, CubeComplex};

/// A square corner at the vertex, seen as an arc between two link nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub nodes: (usize, usize),
    pub square: usize,
    /// Local vertex of the square at which the corner sits.
    pub corner: usize,
}

/// Link of a vertex. Nodes are incident edge-ends `(edge, end)` ordered by
/// edge index then end index; a loop contributes both of its ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLink {
    pub vertex: usize,
    pub nodes: Vec<(usize, usize)>,
    pub arcs: Vec<Arc>,
    /// 3-cube corners as sorted node triples, with the cube index.
    pub triangles: Vec<([usize; 3], usize)>,
}

impl VertexLink {
    pub fn node_index(&self, node: (usize, usize)) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    /// Number of arcs at each node.
    pub fn arc_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for a in &self.arcs {
            deg[a.nodes.0] += 1;
            deg[a.nodes.1] += 1;
        }
        deg
    }
}

pub fn link(x: &CubeComplex, v: usize) -> Result<VertexLink> {
    if v >= x.count(0) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    Ok(link_unchecked(x, v))
}

pub(crate) fn link_unchecked(x: &CubeComplex, v: usize) -> VertexLink {
    let mut nodes = Vec::new();
    for (i, e) in x.edges().iter().enumerate() {
        for end in 0..2 {
            if e.ends[end] == v {
                nodes.push((i, end));
            }
        }
    }
    let idx = |n: (usize, usize)| nodes.binary_search(&n).expect("corner edge-end is incident");
    let mut arcs = Vec::new();
    for s in 0..x.count(2) {
        let lc = x.local(CellRef::new(2, s));
        for lv in 0..4 {
            if lc.verts[lv] != v {
                continue;
            }
            let c = lc.corner(lv);
            let a = idx((lc.edges[c[0].0].edge, c[0].1));
            let b = idx((lc.edges[c[1].0].edge, c[1].1));
            arcs.push(Arc {
                nodes: (a.min(b), a.max(b)),
                square: s,
                corner: lv,
            });
        }
    }
    let mut triangles = Vec::new();
    for q in 0..x.count(3) {
        let lc = x.local(CellRef::new(3, q));
        for lv in 0..8 {
            if lc.verts[lv] != v {
                continue;
            }
            let c = lc.corner(lv);
            let mut t = [0; 3];
            for k in 0..3 {
                t[k] = idx((lc.edges[c[k].0].edge, c[k].1));
            }
            t.sort_unstable();
            triangles.push((t, q));
        }
    }
    VertexLink {
        vertex: v,
        nodes,
        arcs,
        triangles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders as fixtures;

    #[test]
    fn square_vertex_has_two_nodes_one_arc() {
        let x = fixtures::square();
        let l = link(&x, 0).unwrap();
        assert_eq!(l.nodes.len(), 2);
        assert_eq!(l.arcs.len(), 1);
    }

    #[test]
    fn torus_link_is_a_four_cycle() {
        let x = fixtures::torus();
        let l = link(&x, 0).unwrap();
        assert_eq!(l.nodes.len(), 4);
        assert_eq!(l.arcs.len(), 4);
        assert!(l.arc_degrees().iter().all(|&d| d == 2));
        // arcs only join an a-end to a b-end
        for a in &l.arcs {
            assert_ne!(l.nodes[a.nodes.0].0, l.nodes[a.nodes.1].0);
        }
    }

    #[test]
    fn cube_corner_link_is_a_filled_triangle() {
        let x = fixtures::cube3();
        let l = link(&x, 0).unwrap();
        assert_eq!(l.nodes.len(), 3);
        assert_eq!(l.arcs.len(), 3);
        assert_eq!(l.triangles.len(), 1);
    }

    #[test]
    fn unknown_vertex() {
        let x = fixtures::square();
        assert!(matches!(link(&x, 9), Err(Error::UnknownVertex(_))));
    }
}
