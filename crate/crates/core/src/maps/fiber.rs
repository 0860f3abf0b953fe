use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{finite_index, CombinatorialMap};
use crate::complex::raw::{oriented, RawComplex, RawEdge, RawSquare};
use crate::complex::{CellRef, CubeComplex, OrientedEdge};
use crate::error::{Error, Result};

/// Subgroup index, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Index {
    Finite(usize),
    #[serde(serialize_with = "infinite")]
    Infinite,
}

fn infinite<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("infinite")
}

impl std::fmt::Display for Index {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{}", n),
            Index::Infinite => write!(f, "∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberComponent {
    /// Cells of the total complex.
    pub cells: BTreeSet<CellRef>,
    pub iso_left: bool,
    pub iso_right: bool,
    /// Index of the component's image subgroup in the left factor; only
    /// computed when both complexes are graphs.
    pub index_in_left: Option<Index>,
    /// Contains a vertex `(y, y)`; only meaningful for self-products.
    pub diagonal: bool,
}

#[derive(Debug, Clone)]
pub struct FiberProduct {
    pub total: Arc<CubeComplex>,
    pub proj_left: CombinatorialMap,
    pub proj_right: CombinatorialMap,
    pub components: Vec<FiberComponent>,
    /// Cell pairs of the total complex, per dimension.
    pub pairs: [Vec<(usize, usize)>; 3],
}

impl FiberProduct {
    /// A component as a standalone complex with its two projections.
    pub fn component(&self, i: usize) -> (Arc<CubeComplex>, CombinatorialMap, CombinatorialMap) {
        let (sub, keep) = self.total.restrict(&self.components[i].cells);
        let sub = Arc::new(sub);
        let project = |p: &CombinatorialMap| {
            let vm = keep[0].iter().map(|&v| p.vertex(v)).collect();
            let em = keep[1].iter().map(|&e| p.edge(e)).collect();
            let sm = keep[2].iter().map(|&s| p.square(s).square).collect();
            CombinatorialMap::from_images(sub.clone(), p.codomain().clone(), vm, em, sm, vec![])
                .expect("restriction of a projection is a map")
        };
        (sub.clone(), project(&self.proj_left), project(&self.proj_right))
    }

    /// Vertex names of a component as `(left, right)` name pairs.
    pub fn vertex_pairs(&self, i: usize) -> Vec<(String, String)> {
        let (left, right) = (self.proj_left.codomain(), self.proj_right.codomain());
        self.components[i]
            .cells
            .iter()
            .filter(|c| c.dim == 0)
            .map(|c| {
                let (a, b) = self.pairs[0][c.index];
                (left.vertex_names()[a].clone(), right.vertex_names()[b].clone())
            })
            .collect()
    }
}

/// Fiber product `Y ⊗_X Z` of `f: Y → X` and `g: Z → X` (cells of dimension
/// at most 2).
pub fn fiber_product(f: &CombinatorialMap, g: &CombinatorialMap) -> Result<FiberProduct> {
    let (y, z) = (f.domain().clone(), g.domain().clone());
    if !Arc::ptr_eq(f.codomain(), g.codomain()) && **f.codomain() != **g.codomain() {
        return Err(Error::Unsupported("maps have different codomains".into()));
    }
    if y.count(3) > 0 && z.count(3) > 0 {
        return Err(Error::Unsupported("fiber products of 3-cubes".into()));
    }
    let mut raw = RawComplex::new(0);
    let mut pairs: [Vec<(usize, usize)>; 3] = Default::default();
    let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
    for b in 0..z.count(0) {
        by_image.entry(g.vertex(b)).or_default().push(b);
    }
    let vname = |a: usize, b: usize| format!("{}|{}", y.vertex_names()[a], z.vertex_names()[b]);
    for a in 0..y.count(0) {
        for &b in by_image.get(&f.vertex(a)).into_iter().flatten() {
            pairs[0].push((a, b));
            raw.vertices.push(vname(a, b));
        }
    }
    // pair edge (e, e') is oriented along e
    let mut eindex = HashMap::new();
    let mut by_edge: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 0..z.count(1) {
        by_edge.entry(g.edge(e).edge).or_default().push(e);
    }
    let ename = |a: usize, b: usize| format!("{}|{}", y.edges()[a].name, z.edges()[b].name);
    let mut right_edges = Vec::new();
    for a in 0..y.count(1) {
        let ia = f.edge(a);
        for &b in by_edge.get(&ia.edge).into_iter().flatten() {
            let same = g.edge(b).forward == ia.forward;
            let [ya, yb] = y.edges()[a].ends;
            let [za, zb] = z.edges()[b].ends;
            let (z0, z1) = if same { (za, zb) } else { (zb, za) };
            eindex.insert((a, b), pairs[1].len());
            pairs[1].push((a, b));
            right_edges.push(OrientedEdge::new(b, same));
            raw.edges.push(RawEdge {
                id: ename(a, b),
                ends: vec![vname(ya, z0), vname(yb, z1)],
            });
        }
    }
    let mut by_square: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in 0..z.count(2) {
        by_square.entry(g.square(s).square).or_default().push(s);
    }
    for a in 0..y.count(2) {
        let fa = f.square(a);
        for &b in by_square.get(&fa.square).into_iter().flatten() {
            let gb = g.square(b);
            let mut boundary = Vec::new();
            for k in 0..4 {
                let (j, _) = fa.slot(k);
                let kk = (0..4).find(|&kk| gb.slot(kk).0 == j).expect("slot maps bijectively");
                let e = y.squares()[a].boundary[k];
                let e2 = z.squares()[b].boundary[kk];
                boundary.push(oriented(&raw.edges[eindex[&(e.edge, e2.edge)]].id, e.forward));
            }
            pairs[2].push((a, b));
            raw.squares.push(RawSquare {
                id: format!("{}|{}", y.squares()[a].name, z.squares()[b].name),
                boundary,
            });
        }
    }
    raw.dim = if !raw.squares.is_empty() {
        2
    } else if !raw.edges.is_empty() {
        1
    } else {
        0
    };
    let total = Arc::new(raw.validate()?);
    let proj_left = CombinatorialMap::from_images(
        total.clone(),
        y.clone(),
        pairs[0].iter().map(|p| p.0).collect(),
        pairs[1].iter().map(|p| OrientedEdge::new(p.0, true)).collect(),
        pairs[2].iter().map(|p| p.0).collect(),
        vec![],
    )?;
    let proj_right = CombinatorialMap::from_images(
        total.clone(),
        z.clone(),
        pairs[0].iter().map(|p| p.1).collect(),
        right_edges,
        pairs[2].iter().map(|p| p.1).collect(),
        vec![],
    )?;
    let graphs = y.dimension() <= 1 && z.dimension() <= 1;
    let mut product = FiberProduct {
        total: total.clone(),
        proj_left,
        proj_right,
        components: Vec::new(),
        pairs,
    };
    for cells in total.components_of(&total.all_cells()) {
        let bijective = |side: usize, target: &CubeComplex| {
            (0..3).all(|d| {
                let imgs: BTreeSet<usize> = cells
                    .iter()
                    .filter(|c| c.dim == d)
                    .map(|c| {
                        let p = product.pairs[d][c.index];
                        if side == 0 {
                            p.0
                        } else {
                            p.1
                        }
                    })
                    .collect();
                let n = cells.iter().filter(|c| c.dim == d).count();
                imgs.len() == n && n == target.count(d)
            })
        };
        let iso_left = bijective(0, &y);
        let iso_right = bijective(1, &z);
        let diagonal = cells.iter().any(|c| {
            c.dim == 0 && {
                let (a, b) = product.pairs[0][c.index];
                y.vertex_names()[a] == z.vertex_names()[b] && Arc::ptr_eq(&y, &z)
            }
        });
        product.components.push(FiberComponent {
            cells,
            iso_left,
            iso_right,
            index_in_left: None,
            diagonal,
        });
    }
    if graphs {
        for i in 0..product.components.len() {
            let (_, left, _) = product.component(i);
            product.components[i].index_in_left = Some(finite_index(&left)?);
        }
    }
    Ok(product)
}
