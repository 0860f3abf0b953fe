use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::link::link_unchecked;
use super::raw::{oriented, RawComplex, RawCube, RawEdge, RawSquare};
use super::{CellRef, CubeComplex, UnionFind};

/// Equivalence class of edges under "opposite sides of a square".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub id: usize,
    /// Dual edges, ascending.
    pub edges: Vec<usize>,
    /// Cells of dimension >= 1 that contain a dual edge (the closed carrier's
    /// top cells together with their crossing faces).
    pub carrier_cells: Vec<CellRef>,
    pub self_crossing: bool,
    pub self_osculating: bool,
}

impl Hyperplane {
    pub fn is_dual(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    pub fn crosses(&self, c: CellRef) -> bool {
        self.carrier_cells.binary_search(&c).is_ok()
    }
}

/// Hyperplanes ordered by their smallest dual edge.
pub fn hyperplanes(x: &CubeComplex) -> Vec<Hyperplane> {
    let ne = x.count(1);
    let mut dsu = UnionFind::new(ne);
    for s in x.squares() {
        dsu.union(s.boundary[0].edge, s.boundary[2].edge);
        dsu.union(s.boundary[1].edge, s.boundary[3].edge);
    }
    let mut class_of = vec![0; ne];
    let mut roots: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (e, slot) in class_of.iter_mut().enumerate() {
        let r = dsu.find(e);
        let n = classes.len();
        let id = *roots.entry(r).or_insert(n);
        if id == classes.len() {
            classes.push(Vec::new());
        }
        classes[id].push(e);
        *slot = id;
    }
    let mut crossing: Vec<BTreeSet<CellRef>> = vec![BTreeSet::new(); classes.len()];
    for d in 1..4 {
        for i in 0..x.count(d) {
            let c = CellRef::new(d, i);
            for le in &x.local(c).edges {
                crossing[class_of[le.edge]].insert(c);
            }
        }
    }
    let mut self_crossing = vec![false; classes.len()];
    for s in x.squares() {
        if class_of[s.boundary[0].edge] == class_of[s.boundary[1].edge] {
            self_crossing[class_of[s.boundary[0].edge]] = true;
        }
    }
    let mut osculating = vec![false; classes.len()];
    for v in 0..x.count(0) {
        let l = link_unchecked(x, v);
        let arcs: BTreeSet<(usize, usize)> = l.arcs.iter().map(|a| a.nodes).collect();
        for i in 0..l.nodes.len() {
            for j in i + 1..l.nodes.len() {
                let (ci, cj) = (class_of[l.nodes[i].0], class_of[l.nodes[j].0]);
                if ci == cj && !arcs.contains(&(i, j)) {
                    osculating[ci] = true;
                }
            }
        }
    }
    classes
        .into_iter()
        .enumerate()
        .map(|(id, edges)| Hyperplane {
            id,
            edges,
            carrier_cells: crossing[id].iter().copied().collect(),
            self_crossing: self_crossing[id],
            self_osculating: osculating[id],
        })
        .collect()
}

/// Abstract carrier N(H): one copy of each crossing cell, glued exactly
/// along crossing faces. Returns the complex and, per dimension, the cell of
/// `x` each new cell maps to.
pub(crate) fn carrier_complex(x: &CubeComplex, h: &Hyperplane) -> (CubeComplex, [Vec<usize>; 4]) {
    let copies: Vec<CellRef> = h.carrier_cells.clone();
    let copy_of: HashMap<CellRef, usize> = copies.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // node numbering: for each copy, its local verts, edges, squares, then the cube itself
    let mut offsets = Vec::new();
    let mut total = 0;
    for &c in &copies {
        let lc = x.local(c);
        let sizes = [
            lc.verts.len(),
            lc.edges.len(),
            lc.squares.len(),
            usize::from(c.dim == 3),
        ];
        let mut off = [0; 4];
        for d in 0..4 {
            off[d] = total;
            total += sizes[d];
        }
        offsets.push(off);
    }
    let mut dsu = UnionFind::new(total);
    for (cp, &c) in copies.iter().enumerate() {
        for f in &x.local(c).facets {
            let Some(&fp) = copy_of.get(&f.cell) else {
                continue;
            };
            for (i, &t) in f.verts.iter().enumerate() {
                dsu.union(offsets[fp][0] + i, offsets[cp][0] + t);
            }
            for (i, &t) in f.edges.iter().enumerate() {
                dsu.union(offsets[fp][1] + i, offsets[cp][1] + t);
            }
            for (i, &t) in f.squares.iter().enumerate() {
                dsu.union(offsets[fp][2] + i, offsets[cp][2] + t);
            }
        }
    }
    // class -> (dim, new index); representatives in (copy, local) order
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut reps: [Vec<(usize, usize)>; 4] = Default::default();
    for (cp, &c) in copies.iter().enumerate() {
        let lc = x.local(c);
        let sizes = [
            lc.verts.len(),
            lc.edges.len(),
            lc.squares.len(),
            usize::from(c.dim == 3),
        ];
        for d in 0..4 {
            for i in 0..sizes[d] {
                let r = dsu.find(offsets[cp][d] + i);
                if let std::collections::hash_map::Entry::Vacant(slot) = class_index.entry(r) {
                    slot.insert(reps[d].len());
                    reps[d].push((cp, i));
                }
            }
        }
    }
    let cls = |dsu: &mut UnionFind, cp: usize, d: usize, i: usize| class_index[&dsu.find(offsets[cp][d] + i)];
    let mut images: [Vec<usize>; 4] = Default::default();
    let mut raw = RawComplex::new(x.dimension());
    let vname = |i: usize| format!("n{}", i);
    let ename = |i: usize| format!("m{}", i);
    let sname = |i: usize| format!("r{}", i);
    for (i, &(cp, lv)) in reps[0].iter().enumerate() {
        raw.vertices.push(vname(i));
        images[0].push(x.local(copies[cp]).verts[lv]);
    }
    for (i, &(cp, le)) in reps[1].iter().enumerate() {
        let edge = &x.local(copies[cp]).edges[le];
        let a = cls(&mut dsu, cp, 0, edge.ends[0]);
        let b = cls(&mut dsu, cp, 0, edge.ends[1]);
        raw.edges.push(RawEdge {
            id: ename(i),
            ends: vec![vname(a), vname(b)],
        });
        images[1].push(edge.edge);
    }
    for (i, &(cp, ls)) in reps[2].iter().enumerate() {
        let sq = x.local(copies[cp]).squares[ls].clone();
        let boundary = sq
            .slots
            .iter()
            .map(|&(le, fwd)| oriented(&ename(cls(&mut dsu, cp, 1, le)), fwd))
            .collect();
        raw.squares.push(RawSquare {
            id: sname(i),
            boundary,
        });
        images[2].push(sq.square);
    }
    for (i, &(cp, _)) in reps[3].iter().enumerate() {
        let c = copies[cp];
        let lc = x.local(c).clone();
        let faces = (0..6).map(|j| oriented(&sname(cls(&mut dsu, cp, 2, j)), true)).collect();
        let mut pairings = Vec::new();
        for le in 0..lc.edges.len() {
            let mut slots = Vec::new();
            for (j, ls) in lc.squares.iter().enumerate() {
                for (k, s) in ls.slots.iter().enumerate() {
                    if s.0 == le {
                        slots.push([j, k]);
                    }
                }
            }
            pairings.push([slots[0], slots[1]]);
        }
        raw.cubes.push(RawCube {
            id: format!("k{}", i),
            faces,
            pairings,
        });
        images[3].push(c.index);
    }
    let n = raw.validate().expect("carrier assembles into a valid complex");
    (n, images)
}

/// Complement of the open carrier of `h`, split into connected components.
pub fn separation(x: &CubeComplex, h: &Hyperplane) -> Vec<BTreeSet<CellRef>> {
    let rest: BTreeSet<CellRef> = x.cells().filter(|c| !h.crosses(*c)).collect();
    x.components_of(&rest)
}

/// Carrier of a hyperplane as a complex plus its tautological cell map.
#[derive(Debug, Clone)]
pub struct Carrier {
    pub complex: CubeComplex,
    pub images: [Vec<usize>; 4],
    pub degenerate: bool,
}

pub fn carrier(x: &CubeComplex, h: &Hyperplane) -> Carrier {
    let (complex, images) = carrier_complex(x, h);
    Carrier {
        complex,
        images,
        degenerate: h.self_crossing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn square_has_two_hyperplanes() {
        let hs = hyperplanes(&builders::square());
        assert_eq!(hs.len(), 2);
        assert!(hs.iter().all(|h| h.edges.len() == 2));
    }

    #[test]
    fn torus_hyperplanes() {
        let x = builders::torus();
        let hs = hyperplanes(&x);
        assert_eq!(hs.len(), 2);
        assert_eq!(hs[0].edges, vec![0]);
        assert_eq!(hs[1].edges, vec![1]);
        assert!(hs[0].self_osculating);
        assert!(!hs[0].self_crossing);
    }

    #[test]
    fn grid_two_by_one_has_three() {
        assert_eq!(hyperplanes(&builders::grid(2, 1)).len(), 3);
    }

    #[test]
    fn n_cube_has_n_hyperplanes() {
        assert_eq!(hyperplanes(&builders::path(1)).len(), 1);
        assert_eq!(hyperplanes(&builders::square()).len(), 2);
        assert_eq!(hyperplanes(&builders::cube3()).len(), 3);
    }

    #[test]
    fn square_carrier_is_the_square() {
        let x = builders::square();
        for h in hyperplanes(&x) {
            let c = carrier(&x, &h);
            assert_eq!(c.complex.count(0), 4);
            assert_eq!(c.complex.count(1), 4);
            assert_eq!(c.complex.count(2), 1);
        }
    }

    #[test]
    fn torus_carrier_is_an_annulus() {
        let x = builders::torus();
        let h = &hyperplanes(&x)[0];
        let c = carrier(&x, h);
        assert_eq!(c.complex.count(0), 2);
        assert_eq!(c.complex.count(1), 3);
        assert_eq!(c.complex.count(2), 1);
        assert_eq!(c.complex.euler_characteristic(), 0);
    }

    #[test]
    fn grid_middle_carrier_is_a_strip() {
        let x = builders::grid(2, 2);
        let hs = hyperplanes(&x);
        // vertical hyperplane through the middle column of x-edges
        let mid = hs
            .iter()
            .find(|h| h.edges.iter().any(|&e| x.edges()[e].name == "e1_0y"))
            .unwrap();
        let c = carrier(&x, mid);
        assert_eq!(c.complex.count(2), 2);
        assert_eq!(c.complex.count(0), 6);
        assert_eq!(c.complex.count(1), 7);
    }

    #[test]
    fn separation_counts() {
        let x = builders::square();
        for h in hyperplanes(&x) {
            assert_eq!(separation(&x, &h).len(), 2);
        }
        let t = builders::torus();
        assert_eq!(separation(&t, &hyperplanes(&t)[0]).len(), 1);
        let strip = builders::grid(3, 1);
        let hs = hyperplanes(&strip);
        let mid = hs
            .iter()
            .find(|h| h.edges.iter().any(|&e| strip.edges()[e].name == "e1_0x"))
            .unwrap();
        assert_eq!(separation(&strip, mid).len(), 2);
    }

    #[test]
    fn cube_carrier_is_the_cube() {
        let x = builders::cube3();
        for h in hyperplanes(&x) {
            let c = carrier(&x, &h);
            assert_eq!(c.complex.count(3), 1);
            assert_eq!(c.complex.count(0), 8);
        }
    }
}
