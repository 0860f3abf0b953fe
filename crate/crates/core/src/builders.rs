//! Constructors for the standard complexes used throughout the test corpus:
//! cubical subsets of the integer lattice, trees, products of trees, roses
//! and cycles.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::raw::{oriented, RawComplex, RawCube, RawEdge, RawSquare};
use std::sync::Arc;

use crate::complex::{CubeComplex, OrientedEdge};
use crate::maps::CombinatorialMap;

/// A lattice cell: base corner plus the set of spanned axes (bitmask over 3 axes).
pub type LatticeCell = ([i32; 3], u8);

fn coord_name(p: [i32; 3], dims: usize) -> String {
    p[..dims]
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("_")
}

fn axis_char(i: usize) -> char {
    ['x', 'y', 'z'][i]
}

fn shift(p: [i32; 3], axis: usize) -> [i32; 3] {
    let mut q = p;
    q[axis] += 1;
    q
}

fn vname(p: [i32; 3], dims: usize) -> String {
    format!("v{}", coord_name(p, dims))
}

fn ename(p: [i32; 3], axis: usize, dims: usize) -> String {
    format!("e{}{}", coord_name(p, dims), axis_char(axis))
}

fn sname(p: [i32; 3], a: usize, b: usize, dims: usize) -> String {
    format!("s{}{}{}", coord_name(p, dims), axis_char(a), axis_char(b))
}

/// The cubical subcomplex of the lattice generated by `cells` (face-closed
/// automatically). `dims` is the ambient dimension used for naming.
pub fn lattice_complex(cells: &[LatticeCell], dims: usize) -> CubeComplex {
    let mut all: BTreeSet<LatticeCell> = BTreeSet::new();
    let mut stack: Vec<LatticeCell> = cells.to_vec();
    while let Some((p, mask)) = stack.pop() {
        if !all.insert((p, mask)) {
            continue;
        }
        for axis in 0..3 {
            if mask & (1 << axis) != 0 {
                let m = mask & !(1 << axis);
                stack.push((p, m));
                stack.push((shift(p, axis), m));
            }
        }
    }
    let by_dim = |d: u32| all.iter().filter(move |(_, m)| m.count_ones() == d);
    let mut raw = RawComplex::new(all.iter().map(|(_, m)| m.count_ones() as usize).max().unwrap_or(0));
    for (p, _) in by_dim(0) {
        raw.vertices.push(vname(*p, dims));
    }
    for (p, m) in by_dim(1) {
        let axis = m.trailing_zeros() as usize;
        raw.edges.push(RawEdge {
            id: ename(*p, axis, dims),
            ends: vec![vname(*p, dims), vname(shift(*p, axis), dims)],
        });
    }
    for (p, m) in by_dim(2) {
        let axes: Vec<usize> = (0..3).filter(|a| m & (1 << a) != 0).collect();
        let (a, b) = (axes[0], axes[1]);
        raw.squares.push(RawSquare {
            id: sname(*p, a, b, dims),
            boundary: vec![
                oriented(&ename(*p, a, dims), true),
                oriented(&ename(shift(*p, a), b, dims), true),
                oriented(&ename(shift(*p, b), a, dims), false),
                oriented(&ename(*p, b, dims), false),
            ],
        });
    }
    let cube_cells: Vec<[i32; 3]> = by_dim(3).map(|(p, _)| *p).collect();
    for p in cube_cells {
        let faces = vec![
            sname(p, 1, 2, dims),
            sname(shift(p, 0), 1, 2, dims),
            sname(p, 0, 2, dims),
            sname(shift(p, 1), 0, 2, dims),
            sname(p, 0, 1, dims),
            sname(shift(p, 2), 0, 1, dims),
        ];
        let cube = auto_cube(&raw, format!("c{}", coord_name(p, dims)), faces);
        raw.cubes.push(cube);
    }
    raw.validate().expect("lattice complexes are valid")
}

/// Build a 3-cube record whose slot pairings are found by matching edge
/// names; requires the 12 edges of the cube to be distinct.
pub fn auto_cube(raw: &RawComplex, id: String, faces: Vec<String>) -> RawCube {
    let mut by_edge: BTreeMap<String, Vec<[usize; 2]>> = BTreeMap::new();
    for (j, f) in faces.iter().enumerate() {
        let sq = raw.squares.iter().find(|s| &s.id == f).expect("face exists");
        for (k, r) in sq.boundary.iter().enumerate() {
            let stem = r.trim_end_matches(['+', '-']).to_string();
            by_edge.entry(stem).or_default().push([j, k]);
        }
    }
    let pairings = by_edge
        .values()
        .filter(|v| v.len() == 2)
        .map(|v| [v[0], v[1]])
        .collect();
    RawCube {
        id,
        faces: faces.into_iter().map(|f| oriented(&f, true)).collect(),
        pairings,
    }
}

/// Single square with four distinct vertices.
pub fn square() -> CubeComplex {
    grid(1, 1)
}

/// `w` by `h` grid of squares.
pub fn grid(w: i32, h: i32) -> CubeComplex {
    let mut cells = Vec::new();
    for x in 0..w {
        for y in 0..h {
            cells.push(([x, y, 0], 0b011));
        }
    }
    lattice_complex(&cells, 2)
}

/// Standard 3-cube.
pub fn cube3() -> CubeComplex {
    lattice_complex(&[([0, 0, 0], 0b111)], 3)
}

/// Three squares meeting pairwise around a common vertex, without the 3-cube.
pub fn missing_corner() -> CubeComplex {
    lattice_complex(
        &[([0, 0, 0], 0b011), ([0, 0, 0], 0b101), ([0, 0, 0], 0b110)],
        3,
    )
}

/// Boundary of the 3-cube: six squares, no 3-cell.
pub fn cube_boundary() -> CubeComplex {
    lattice_complex(
        &[
            ([0, 0, 0], 0b110),
            ([1, 0, 0], 0b110),
            ([0, 0, 0], 0b101),
            ([0, 1, 0], 0b101),
            ([0, 0, 0], 0b011),
            ([0, 0, 1], 0b011),
        ],
        3,
    )
}

/// One-vertex torus: loops `a`, `b` and the square `a b a⁻ b⁻`.
pub fn torus() -> CubeComplex {
    let mut raw = RawComplex::new(2);
    raw.vertex("o").edge("a", "o", "o").edge("b", "o", "o");
    raw.square("t", ["a+", "b+", "a-", "b-"]);
    raw.validate().expect("torus is valid")
}

/// Bouquet of loops named by `labels` at a single vertex `o`.
pub fn rose(labels: &[&str]) -> CubeComplex {
    let mut raw = RawComplex::new(if labels.is_empty() { 0 } else { 1 });
    raw.vertex("o");
    for l in labels {
        raw.edge(*l, "o", "o");
    }
    raw.validate().expect("rose is valid")
}

/// Tree on `n + 1` vertices given by a parent array: vertex `i + 1` hangs off
/// `parents[i]`, which must be `<= i`.
pub fn tree(parents: &[usize]) -> CubeComplex {
    let mut raw = RawComplex::new(if parents.is_empty() { 0 } else { 1 });
    raw.vertex("t0");
    for (i, &p) in parents.iter().enumerate() {
        assert!(p <= i, "parent must precede child");
        raw.vertex(format!("t{}", i + 1));
        raw.edge(format!("f{}", i), format!("t{}", p), format!("t{}", i + 1));
    }
    raw.validate().expect("tree is valid")
}

/// Path with `n` edges.
pub fn path(n: usize) -> CubeComplex {
    tree(&(0..n).collect::<Vec<_>>())
}

/// Product of two trees (parent arrays), restricted to the vertices kept by
/// `keep`, taking the full subcomplex on those vertices.
pub fn tree_product(
    left: &[usize],
    right: &[usize],
    keep: impl Fn(usize, usize) -> bool,
) -> CubeComplex {
    let n1 = left.len() + 1;
    let n2 = right.len() + 1;
    let v = |i: usize, j: usize| format!("p{}_{}", i, j);
    let mut raw = RawComplex::new(2);
    for i in 0..n1 {
        for j in 0..n2 {
            if keep(i, j) {
                raw.vertex(v(i, j));
            }
        }
    }
    // horizontal edges: left-tree edge k (parent -> k+1) at right vertex j
    for (k, &p) in left.iter().enumerate() {
        for j in 0..n2 {
            if keep(p, j) && keep(k + 1, j) {
                raw.edge(format!("h{}_{}", k, j), v(p, j), v(k + 1, j));
            }
        }
    }
    for i in 0..n1 {
        for (k, &p) in right.iter().enumerate() {
            if keep(i, p) && keep(i, k + 1) {
                raw.edge(format!("w{}_{}", i, k), v(i, p), v(i, k + 1));
            }
        }
    }
    for (k, &p) in left.iter().enumerate() {
        for (l, &q) in right.iter().enumerate() {
            let corners = [(p, q), (k + 1, q), (k + 1, l + 1), (p, l + 1)];
            if corners.iter().all(|&(i, j)| keep(i, j)) {
                let b0 = oriented(&format!("h{}_{}", k, q), true);
                let b1 = oriented(&format!("w{}_{}", k + 1, l), true);
                let b2 = oriented(&format!("h{}_{}", k, l + 1), false);
                let b3 = oriented(&format!("w{}_{}", p, l), false);
                raw.squares.push(RawSquare {
                    id: format!("q{}_{}", k, l),
                    boundary: vec![b0, b1, b2, b3],
                });
            }
        }
    }
    if raw.squares.is_empty() {
        raw.dim = 1;
    }
    raw.validate().expect("tree product is valid")
}

/// Depths of every vertex of a tree given as a parent array.
pub fn tree_depths(parents: &[usize]) -> Vec<usize> {
    let mut d = vec![0; parents.len() + 1];
    for (i, &p) in parents.iter().enumerate() {
        d[i + 1] = d[p] + 1;
    }
    d
}

/// Distances from `root` in a tree given as a parent array.
pub fn tree_distances(parents: &[usize], root: usize) -> Vec<usize> {
    let n = parents.len() + 1;
    let mut adj = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        adj[p].push(i + 1);
        adj[i + 1].push(p);
    }
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Cycle graph read off a word over a rose: letters are loop names, an
/// uppercase letter meaning the inverse of the lowercase loop. Edge `r{i}`
/// is oriented so that it maps forward onto its loop.
pub fn word_cycle(word: &str) -> CubeComplex {
    let letters: Vec<char> = word.chars().collect();
    let n = letters.len();
    let mut raw = RawComplex::new(1);
    for i in 0..n {
        raw.vertex(format!("y{}", i));
    }
    for (i, &c) in letters.iter().enumerate() {
        let (a, b) = (format!("y{}", i), format!("y{}", (i + 1) % n));
        if c.is_lowercase() {
            raw.edge(format!("r{}", i), a, b);
        } else {
            raw.edge(format!("r{}", i), b, a);
        }
    }
    raw.validate().expect("cycle is valid")
}

/// The cycle of `word` together with its map onto `rose`.
pub fn word_map(word: &str, rose: Arc<CubeComplex>) -> CombinatorialMap {
    let cycle = Arc::new(word_cycle(word));
    let edges = word
        .chars()
        .map(|c| {
            let l = c.to_lowercase().to_string();
            OrientedEdge::new(rose.find(1, &l).expect("letter is a rose loop"), true)
        })
        .collect();
    let n = cycle.count(0);
    CombinatorialMap::from_images(cycle, rose, vec![0; n], edges, vec![], vec![])
        .expect("word cycle maps onto the rose")
}

/// Covering graph of `rose` given by one permutation of `0..n` per loop:
/// vertex `u{i}` and edge `{loop}{i}` from `u{i}` to `u{perm[i]}`.
pub fn permutation_cover(perms: &[Vec<usize>], rose: Arc<CubeComplex>) -> CombinatorialMap {
    let n = perms.first().map_or(1, |p| p.len());
    let mut raw = RawComplex::new(if perms.is_empty() { 0 } else { 1 });
    for i in 0..n {
        raw.vertex(format!("u{}", i));
    }
    let mut edges = Vec::new();
    for (l, perm) in perms.iter().enumerate() {
        let name = &rose.edges()[l].name;
        for (i, &j) in perm.iter().enumerate() {
            raw.edge(format!("{}{}", name, i), format!("u{}", i), format!("u{}", j));
            edges.push(OrientedEdge::new(l, true));
        }
    }
    let cover = Arc::new(raw.validate().expect("cover is valid"));
    CombinatorialMap::from_images(cover, rose, vec![0; n], edges, vec![], vec![])
        .expect("cover maps onto the rose")
}

/// `n`-fold cover of `torus` unwrapping the loop `a`: vertices `y{i}`,
/// edges `a{i}: y{i} → y{i+1}` and loops `b{i}`, squares `s{i}`.
pub fn torus_cover(n: usize, torus: Arc<CubeComplex>) -> CombinatorialMap {
    use crate::maps::{validate_map, RawMap, RawSquareImage};
    let mut raw = RawComplex::new(2);
    let mut map = RawMap::default();
    for i in 0..n {
        raw.vertex(format!("y{}", i));
        map.vertex_map.insert(format!("y{}", i), "o".into());
    }
    for i in 0..n {
        raw.edge(format!("a{}", i), format!("y{}", i), format!("y{}", (i + 1) % n));
        raw.edge(format!("b{}", i), format!("y{}", i), format!("y{}", i));
        map.edge_map.insert(format!("a{}", i), "a+".into());
        map.edge_map.insert(format!("b{}", i), "b+".into());
    }
    for i in 0..n {
        let (a, b, b2) = (format!("a{}+", i), format!("b{}+", (i + 1) % n), format!("a{}-", i));
        let b0 = format!("b{}-", i);
        raw.square(format!("s{}", i), [a.as_str(), b.as_str(), b2.as_str(), b0.as_str()]);
        map.square_map.insert(format!("s{}", i), RawSquareImage::Name("t".into()));
    }
    let cover = Arc::new(raw.validate().expect("torus cover is valid"));
    validate_map(&map, cover, torus).expect("cover maps onto the torus")
}
