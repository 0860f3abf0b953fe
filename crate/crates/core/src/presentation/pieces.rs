use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::CubicalPresentation;
use crate::complex::{carrier, hyperplanes, CubeComplex, OrientedEdge};
use crate::error::{Error, Result};
use crate::maps::{fiber_product, CombinatorialMap, FiberProduct};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Cone,
    Wall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Partner {
    Relator(usize),
    Hyperplane(usize),
}

/// A fiber-product component acting as a piece of relator `relator`.
#[derive(Debug, Clone)]
pub struct AbstractPiece {
    pub kind: PieceKind,
    pub relator: usize,
    pub partner: Partner,
    pub source: Arc<CubeComplex>,
    /// Immersion of the source into the relator complex.
    pub immersion: CombinatorialMap,
    pub edge_count: usize,
    /// The source contains a cycle, so its image is essential.
    pub has_cycle: bool,
    /// Retained without a definite classification.
    pub uncertain: bool,
}

impl AbstractPiece {
    /// Vertex names of the source, for reporting.
    pub fn describe(&self) -> Vec<String> {
        self.source.vertex_names().to_vec()
    }
}

fn require_graphs(p: &CubicalPresentation) -> Result<()> {
    for (i, r) in p.relators().iter().enumerate() {
        if r.domain().dimension() > 1 {
            return Err(Error::RelatorNotGraph(i));
        }
    }
    Ok(())
}

fn piece(
    fp: &FiberProduct,
    k: usize,
    kind: PieceKind,
    relator: usize,
    partner: Partner,
    right: bool,
    uncertain: bool,
) -> Option<AbstractPiece> {
    let (source, left, right_map) = fp.component(k);
    if source.count(1) == 0 {
        return None;
    }
    let immersion = if right { right_map } else { left };
    let has_cycle = source.count(1) >= source.count(0);
    Some(AbstractPiece {
        kind,
        relator,
        partner,
        edge_count: source.count(1),
        has_cycle,
        source,
        immersion,
        uncertain,
    })
}

/// Components of every `Y_i ⊗_X Y_j`, dropping for `i = j` the diagonal and
/// every component projecting isomorphically to both factors. Edgeless
/// components are not reported.
pub fn cone_pieces(p: &CubicalPresentation) -> Result<Vec<AbstractPiece>> {
    require_graphs(p)?;
    let rs = p.relators();
    let mut out = Vec::new();
    for i in 0..rs.len() {
        for j in 0..rs.len() {
            let fp = fiber_product(&rs[i], &rs[j])?;
            for (k, c) in fp.components.iter().enumerate() {
                if i == j && (c.diagonal || (c.iso_left && c.iso_right)) {
                    continue;
                }
                out.extend(piece(&fp, k, PieceKind::Cone, i, Partner::Relator(j), false, false));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct WallPieces {
    pub pieces: Vec<AbstractPiece>,
    /// Hyperplanes whose carrier does not map by a local isometry.
    pub indeterminate: Vec<usize>,
}

/// Components of `N(H) ⊗_X Y_i` that contain no pair of an `H`-dual edge
/// with an edge of `Y_i`. Pieces from self-osculating hyperplanes are kept
/// but marked uncertain.
pub fn wall_pieces(p: &CubicalPresentation) -> Result<WallPieces> {
    require_graphs(p)?;
    let x = p.base();
    let mut pieces = Vec::new();
    let mut indeterminate = Vec::new();
    for h in hyperplanes(x) {
        let c = carrier(x, &h);
        let n = Arc::new(c.complex);
        let map = CombinatorialMap::from_cell_images(n.clone(), x.clone(), &c.images)?;
        if !map.check_local_isometry().holds() {
            indeterminate.push(h.id);
            continue;
        }
        for (i, r) in p.relators().iter().enumerate() {
            let fp = fiber_product(&map, r)?;
            for (k, comp) in fp.components.iter().enumerate() {
                let crossing = comp
                    .cells
                    .iter()
                    .filter(|c| c.dim == 1)
                    .any(|c| h.is_dual(map.edge(fp.pairs[1][c.index].0).edge));
                if crossing {
                    continue;
                }
                pieces.extend(piece(
                    &fp,
                    k,
                    PieceKind::Wall,
                    i,
                    Partner::Hyperplane(h.id),
                    true,
                    h.self_osculating,
                ));
            }
        }
    }
    Ok(WallPieces {
        pieces,
        indeterminate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Bound {
    Finite(usize),
    #[serde(serialize_with = "infinite")]
    Infinite,
}

fn infinite<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("infinite")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceBound {
    pub l: Bound,
    pub per_piece: Vec<usize>,
    /// Index of a piece whose source carries a cycle.
    pub unbounded_witness: Option<usize>,
}

pub fn piece_bound(pieces: &[AbstractPiece]) -> PieceBound {
    let per_piece: Vec<usize> = pieces.iter().map(|p| p.edge_count).collect();
    let witness = pieces.iter().position(|p| p.has_cycle);
    PieceBound {
        l: match witness {
            Some(_) => Bound::Infinite,
            None => Bound::Finite(per_piece.iter().copied().max().unwrap_or(0)),
        },
        per_piece,
        unbounded_witness: witness,
    }
}

/// Concrete piece paths of one relator: reduced paths in tree pieces, read
/// as dart sequences in `Y_i`. The flag records whether some certain piece
/// yields the path.
#[derive(Debug, Clone, Default)]
pub struct PiecePaths {
    pub paths: HashMap<Vec<OrientedEdge>, bool>,
    pub max_len: usize,
}

impl PiecePaths {
    pub fn contains(&self, path: &[OrientedEdge], certain_only: bool) -> bool {
        match self.paths.get(path) {
            Some(&certain) => certain || !certain_only,
            None => false,
        }
    }

    pub fn insert(&mut self, path: Vec<OrientedEdge>, certain: bool) {
        self.max_len = self.max_len.max(path.len());
        let slot = self.paths.entry(path).or_insert(certain);
        *slot |= certain;
    }
}

/// Piece paths per relator, from acyclic pieces.
pub fn piece_paths(p: &CubicalPresentation, pieces: &[AbstractPiece]) -> Vec<PiecePaths> {
    let mut out = vec![PiecePaths::default(); p.relators().len()];
    for pc in pieces.iter().filter(|pc| !pc.has_cycle) {
        let s = &pc.source;
        let mut adj = vec![Vec::new(); s.count(0)];
        for (e, edge) in s.edges().iter().enumerate() {
            adj[edge.ends[0]].push((edge.ends[1], OrientedEdge::new(e, true)));
            adj[edge.ends[1]].push((edge.ends[0], OrientedEdge::new(e, false)));
        }
        for u in 0..s.count(0) {
            // parent dart of every vertex in the BFS tree from u
            let mut back: Vec<Option<(usize, OrientedEdge)>> = vec![None; s.count(0)];
            let mut seen = vec![false; s.count(0)];
            seen[u] = true;
            let mut queue = VecDeque::from([u]);
            while let Some(a) = queue.pop_front() {
                for &(b, d) in &adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        back[b] = Some((a, d));
                        queue.push_back(b);
                    }
                }
            }
            for v in 0..s.count(0) {
                if v == u || !seen[v] {
                    continue;
                }
                let mut path = Vec::new();
                let mut w = v;
                while let Some((a, d)) = back[w] {
                    path.push(pc.immersion.oriented(d));
                    w = a;
                }
                path.reverse();
                out[pc.relator].insert(path, !pc.uncertain);
            }
        }
    }
    out
}
