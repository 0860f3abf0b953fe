use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{CellRef, CubeComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityWitness {
    /// Square or 3-cube whose corner lies in the subcomplex.
    pub cell: String,
    pub corner_vertex: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullResult {
    pub cells: BTreeSet<CellRef>,
    /// Cells added to connect a disconnected input before closure.
    pub connecting_path: Vec<CellRef>,
}

/// First cube of dimension >= 2 (in cell order) with a corner inside `cells`
/// but not itself inside.
fn violation(x: &CubeComplex, cells: &BTreeSet<CellRef>) -> Option<(CellRef, usize)> {
    for d in 2..4 {
        for i in 0..x.count(d) {
            let c = CellRef::new(d, i);
            if cells.contains(&c) {
                continue;
            }
            let lc = x.local(c);
            for lv in 0..lc.verts.len() {
                let corner = lc.corner(lv);
                if corner
                    .iter()
                    .all(|&(le, _)| cells.contains(&CellRef::new(1, lc.edges[le].edge)))
                {
                    return Some((c, lv));
                }
            }
        }
    }
    None
}

/// Convexity test; `Ok(None)` means convex.
pub fn is_convex(x: &CubeComplex, cells: &BTreeSet<CellRef>) -> Result<Option<ConvexityWitness>> {
    if x.components_of(&x.closure(cells)).len() > 1 {
        return Err(Error::NotConnected);
    }
    Ok(violation(x, cells).map(|(c, lv)| ConvexityWitness {
        cell: x.name(c).to_string(),
        corner_vertex: x.vertex_names()[x.local(c).verts[lv]].clone(),
    }))
}

fn vertices_of(cells: &BTreeSet<CellRef>) -> BTreeSet<usize> {
    cells.iter().filter(|c| c.dim == 0).map(|c| c.index).collect()
}

/// Shortest edge path (as edge indices) from `from` to any vertex of `to`.
fn shortest_path(x: &CubeComplex, from: &BTreeSet<usize>, to: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let n = x.count(0);
    let mut adj = vec![Vec::new(); n];
    for (i, e) in x.edges().iter().enumerate() {
        adj[e.ends[0]].push((e.ends[1], i));
        adj[e.ends[1]].push((e.ends[0], i));
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &v in from {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        if to.contains(&u) {
            let mut path = Vec::new();
            let mut cur = u;
            while let Some((p, e)) = prev[cur] {
                path.push(e);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for &(w, e) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    None
}

/// Least convex subcomplex containing `cells`.
pub fn convex_hull(x: &CubeComplex, cells: &BTreeSet<CellRef>) -> HullResult {
    let mut current = x.closure(cells);
    let mut connecting_path = Vec::new();
    loop {
        let comps = x.components_of(&current);
        if comps.len() <= 1 {
            break;
        }
        let from = vertices_of(&comps[0]);
        let rest: BTreeSet<usize> = comps[1..].iter().flat_map(vertices_of).collect();
        match shortest_path(x, &from, &rest) {
            Some(path) => {
                for e in path {
                    let c = CellRef::new(1, e);
                    if !current.contains(&c) {
                        connecting_path.push(c);
                        current.extend(x.closure_of(c));
                    }
                }
            }
            None => break,
        }
    }
    while let Some((c, _)) = violation(x, &current) {
        current.extend(x.closure_of(c));
    }
    HullResult {
        cells: current,
        connecting_path,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    fn named(x: &CubeComplex, names: &[&str]) -> BTreeSet<CellRef> {
        let mut s = BTreeSet::new();
        for n in names {
            let c = (0..4)
                .find_map(|d| x.find(d, n).map(|i| CellRef::new(d, i)))
                .unwrap();
            s.insert(c);
        }
        x.closure(&s)
    }

    #[test]
    fn single_edge_of_square_is_convex() {
        let x = builders::square();
        assert_eq!(is_convex(&x, &named(&x, &["e0_0x"])).unwrap(), None);
    }

    #[test]
    fn two_consecutive_edges_are_not_convex() {
        let x = builders::square();
        let w = is_convex(&x, &named(&x, &["e0_0x", "e1_0y"])).unwrap().unwrap();
        assert_eq!(w.cell, "s0_0xy");
        assert_eq!(w.corner_vertex, "v1_0");
    }

    #[test]
    fn square_in_grid_is_convex() {
        let x = builders::grid(2, 2);
        assert_eq!(is_convex(&x, &named(&x, &["s0_0xy"])).unwrap(), None);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let x = builders::grid(2, 2);
        assert_eq!(is_convex(&x, &named(&x, &["v0_0", "v2_2"])), Err(Error::NotConnected));
    }

    #[test]
    fn hull_of_opposite_corners_is_the_square() {
        let x = builders::square();
        let hull = convex_hull(&x, &named(&x, &["e0_0x", "e1_0y"]));
        assert_eq!(hull.cells, x.all_cells());
        // disconnected input: opposite corners only
        let hull = convex_hull(&x, &named(&x, &["v0_0", "v1_1"]));
        assert_eq!(hull.cells, x.all_cells());
        assert_eq!(hull.connecting_path.len(), 2);
    }

    #[test]
    fn hull_of_vertex_and_bottom_row() {
        let x = builders::grid(3, 3);
        let v = named(&x, &["v1_1"]);
        assert_eq!(convex_hull(&x, &v).cells, v);
        let row = named(&x, &["s0_0xy", "s1_0xy", "s2_0xy"]);
        assert_eq!(convex_hull(&x, &row).cells, row);
    }
}
