use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::link::{link_unchecked, VertexLink};
use super::CubeComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    /// A square corner whose two edge-ends coincide.
    Loop,
    /// Two square corners spanning the same pair of edge-ends.
    MultiArc,
    /// Two 3-cube corners on the same triple of edge-ends.
    MultiTriangle,
    /// Three pairwise-joined edge-ends with no 3-cube corner.
    UnfilledClique,
    /// Four pairwise-joined edge-ends; would need a 4-cube.
    FourClique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NpcWitness {
    pub vertex: String,
    pub kind: ObstructionKind,
    /// Offending edge-ends, written `edge:end`.
    pub nodes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum NpcVerdict {
    #[serde(rename = "NPC")]
    Npc,
    #[serde(rename = "NotNPC")]
    NotNpc(NpcWitness),
}

impl NpcVerdict {
    pub fn is_npc(&self) -> bool {
        matches!(self, NpcVerdict::Npc)
    }
}

/// Flag test on every vertex link, in vertex order.
pub fn check_npc(x: &CubeComplex) -> NpcVerdict {
    for v in 0..x.count(0) {
        let l = link_unchecked(x, v);
        if let Some((kind, nodes)) = link_obstruction(&l) {
            return NpcVerdict::NotNpc(NpcWitness {
                vertex: x.vertex_names()[v].clone(),
                kind,
                nodes: nodes
                    .iter()
                    .map(|&n| {
                        let (e, end) = l.nodes[n];
                        format!("{}:{}", x.edges()[e].name, end)
                    })
                    .collect(),
            });
        }
    }
    NpcVerdict::Npc
}

pub(crate) fn link_obstruction(l: &VertexLink) -> Option<(ObstructionKind, Vec<usize>)> {
    let mut seen = HashSet::new();
    for a in &l.arcs {
        if a.nodes.0 == a.nodes.1 {
            return Some((ObstructionKind::Loop, vec![a.nodes.0]));
        }
        if !seen.insert(a.nodes) {
            return Some((ObstructionKind::MultiArc, vec![a.nodes.0, a.nodes.1]));
        }
    }
    let mut tris = HashSet::new();
    for (t, _) in &l.triangles {
        if !tris.insert(*t) {
            return Some((ObstructionKind::MultiTriangle, t.to_vec()));
        }
    }
    let n = l.nodes.len();
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in &seen {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    for a in 0..n {
        for &b in adj[a].range(a + 1..) {
            for &c in adj[b].range(b + 1..) {
                if !adj[a].contains(&c) {
                    continue;
                }
                if !tris.contains(&[a, b, c]) {
                    return Some((ObstructionKind::UnfilledClique, vec![a, b, c]));
                }
                for &d in adj[c].range(c + 1..) {
                    if adj[a].contains(&d) && adj[b].contains(&d) {
                        return Some((ObstructionKind::FourClique, vec![a, b, c, d]));
                    }
                }
            }
        }
    }
    None
}
