use std::collections::{BTreeSet, HashSet};

use super::{CombinatorialMap, Index};
use crate::complex::CubeComplex;
use crate::error::{Error, Result};

/// Vertices and edges of the core of a graph: valence-one vertices are
/// stripped until none remain. A tree leaves a single vertex behind.
pub fn core_cells(x: &CubeComplex) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut verts: BTreeSet<usize> = (0..x.count(0)).collect();
    let mut edges: BTreeSet<usize> = (0..x.count(1)).collect();
    let mut valence = vec![0usize; x.count(0)];
    for e in x.edges() {
        valence[e.ends[0]] += 1;
        valence[e.ends[1]] += 1;
    }
    let mut stack: Vec<usize> = (0..x.count(0)).filter(|&v| valence[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if valence[v] != 1 || !verts.contains(&v) {
            continue;
        }
        let e = *edges
            .iter()
            .find(|&&e| x.edges()[e].ends.contains(&v))
            .expect("valence-one vertex has an edge");
        edges.remove(&e);
        verts.remove(&v);
        valence[v] = 0;
        let [a, b] = x.edges()[e].ends;
        let w = if a == v { b } else { a };
        valence[w] -= 1;
        if valence[w] == 1 {
            stack.push(w);
        }
    }
    if edges.is_empty() && !verts.is_empty() {
        let keep = *verts.iter().next().unwrap();
        verts = BTreeSet::from([keep]);
    }
    (verts, edges)
}

/// Index of the image of `π₁K` in `π₁Y` for an immersion of graphs `K → Y`,
/// up to conjugacy. `K` is assumed connected.
pub fn finite_index(f: &CombinatorialMap) -> Result<Index> {
    let (k, y) = (f.domain(), f.codomain());
    if k.dimension() > 1 || y.dimension() > 1 {
        return Err(Error::NotAGraph);
    }
    for v in 0..k.count(0) {
        let mut seen = HashSet::new();
        for (e, edge) in k.edges().iter().enumerate() {
            for end in 0..2 {
                if edge.ends[end] == v {
                    let im = f.edge(e);
                    let node = (im.edge, if im.forward { end } else { 1 - end });
                    if !seen.insert(node) {
                        return Err(Error::NotImmersed(k.vertex_names()[v].clone()));
                    }
                }
            }
        }
    }
    let (yv, ye) = core_cells(y);
    if ye.is_empty() {
        return Ok(Index::Finite(1));
    }
    let (kv, ke) = core_cells(k);
    if ke.is_empty() {
        return Ok(Index::Infinite);
    }
    // covering test on cores: every core vertex sees every core edge-end of its image
    let ends_at = |x: &CubeComplex, edges: &BTreeSet<usize>, v: usize| {
        edges
            .iter()
            .map(|&e| x.edges()[e].ends.iter().filter(|&&w| w == v).count())
            .sum::<usize>()
    };
    for &v in &kv {
        let w = f.vertex(v);
        if !yv.contains(&w) || ends_at(k, &ke, v) != ends_at(y, &ye, w) {
            return Ok(Index::Infinite);
        }
    }
    let mut fibres = vec![0usize; y.count(0)];
    for &v in &kv {
        fibres[f.vertex(v)] += 1;
    }
    let degree = fibres[*yv.iter().next().unwrap()];
    if yv.iter().any(|&w| fibres[w] != degree) {
        return Ok(Index::Infinite);
    }
    Ok(Index::Finite(degree))
}
