//! Elementary collapses and the hyperplane-guided collapse strategy.
//!
//! An elementary collapse removes a pair (free face, maximal face) where the
//! free face has codimension one in the maximal face and appears exactly
//! once in the boundary of exactly one live cell. When the largest free pair
//! involves a square or cube, the strategy follows the hyperplane dual to an
//! edge of the free face and collapses cells crossing that hyperplane first,
//! which mirrors collapsing the hyperplane itself and extending each step to
//! its carrier.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{check_npc, CellRef, CubeComplex, NpcVerdict, UnionFind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub free: String,
    pub maximal: String,
    /// Dimension of the free face.
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseCertificate {
    pub steps: Vec<CollapseStep>,
    pub terminal: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollapseOutcome {
    Certified(CollapseCertificate),
    /// No free face remains; `remaining` is the live subcomplex.
    Stuck {
        remaining: BTreeSet<CellRef>,
        steps: Vec<CollapseStep>,
    },
}

impl CollapseOutcome {
    pub fn certificate(&self) -> Option<&CollapseCertificate> {
        match self {
            CollapseOutcome::Certified(c) => Some(c),
            CollapseOutcome::Stuck { .. } => None,
        }
    }
}

struct State<'a> {
    x: &'a CubeComplex,
    alive: BTreeSet<CellRef>,
}

impl<'a> State<'a> {
    fn live_cofacets(&self, c: CellRef) -> impl Iterator<Item = CellRef> + '_ {
        self.x
            .cofacets(c)
            .iter()
            .copied()
            .filter(|p| self.alive.contains(p))
    }

    fn free_pair(&self, f: CellRef) -> Option<CellRef> {
        let mut it = self.live_cofacets(f);
        let c = it.next()?;
        if it.next().is_some() || self.live_cofacets(c).next().is_some() {
            return None;
        }
        Some(c)
    }

    /// Free pairs ordered by maximal-face dimension (highest first), then free face.
    fn free_pairs(&self, filter: impl Fn(CellRef) -> bool) -> Vec<(CellRef, CellRef)> {
        let mut out: Vec<(CellRef, CellRef)> = self
            .alive
            .iter()
            .filter(|f| filter(**f))
            .filter_map(|&f| self.free_pair(f).map(|c| (f, c)))
            .filter(|&(_, c)| filter(c))
            .collect();
        out.sort_by_key(|&(f, c)| (std::cmp::Reverse(c.dim), f));
        out
    }

    fn remove(&mut self, f: CellRef, c: CellRef, steps: &mut Vec<CollapseStep>) {
        self.alive.remove(&f);
        self.alive.remove(&c);
        steps.push(CollapseStep {
            free: self.x.name(f).to_string(),
            maximal: self.x.name(c).to_string(),
            dim: f.dim,
        });
    }

    /// Hyperplane classes of the live subcomplex, as a per-edge class id.
    fn edge_classes(&self) -> Vec<usize> {
        let mut dsu = UnionFind::new(self.x.count(1));
        for c in self.alive.iter().filter(|c| c.dim == 2) {
            let b = self.x.squares()[c.index].boundary;
            dsu.union(b[0].edge, b[2].edge);
            dsu.union(b[1].edge, b[3].edge);
        }
        (0..self.x.count(1)).map(|e| dsu.find(e)).collect()
    }
}

/// All free pairs of `x`, highest-dimensional maximal face first.
pub fn free_faces(x: &CubeComplex) -> Vec<(CellRef, CellRef)> {
    State {
        x,
        alive: x.all_cells(),
    }
    .free_pairs(|_| true)
}

/// Collapse `x` to a vertex, refusing complexes that are not NPC.
pub fn collapse_to_point(x: &CubeComplex) -> Result<CollapseOutcome> {
    if let NpcVerdict::NotNpc(w) = check_npc(x) {
        return Err(Error::NotNpc(w.vertex));
    }
    let mut state = State {
        x,
        alive: x.all_cells(),
    };
    let mut steps = Vec::new();
    loop {
        if state.alive.len() == 1 {
            let v = *state.alive.iter().next().unwrap();
            return Ok(CollapseOutcome::Certified(CollapseCertificate {
                steps,
                terminal: x.name(v).to_string(),
            }));
        }
        let pairs = state.free_pairs(|_| true);
        let Some(&(f, c)) = pairs.first() else {
            return Ok(CollapseOutcome::Stuck {
                remaining: state.alive,
                steps,
            });
        };
        state.remove(f, c, &mut steps);
        if c.dim < 2 {
            continue;
        }
        // follow the hyperplane dual to the first edge of the free face
        let classes = state.edge_classes();
        let class = classes[x.local(f).edges[0].edge];
        let crosses = |cell: CellRef| {
            x.local(cell)
                .edges
                .iter()
                .any(|le| classes[le.edge] == class)
        };
        loop {
            let inner = state.free_pairs(|cell| cell.dim >= 1 && crosses(cell));
            let Some(&(f2, c2)) = inner.first() else {
                break;
            };
            state.remove(f2, c2, &mut steps);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("complex has Euler characteristic {0}, expected 1")]
    Euler(i64),
    #[error("step {step}: unknown cell `{name}`")]
    UnknownCell { step: usize, name: String },
    #[error("step {step}: `{free}` is not a free face of `{maximal}`")]
    NotFree {
        step: usize,
        free: String,
        maximal: String,
    },
    #[error("replay leaves {0} cells instead of the terminal vertex")]
    Leftover(usize),
    #[error("terminal vertex `{0}` does not match the surviving vertex")]
    Terminal(String),
}

/// Replay a certificate from scratch, checking every step. Uses its own
/// incidence table built from cell boundaries.
pub fn replay_certificate(
    x: &CubeComplex,
    cert: &CollapseCertificate,
) -> std::result::Result<(), ReplayError> {
    let mut alive: BTreeSet<CellRef> = x.cells().collect();
    let mut boundary_count: HashMap<(CellRef, CellRef), usize> = HashMap::new();
    let mut parents: HashMap<CellRef, BTreeSet<CellRef>> = HashMap::new();
    for c in x.cells() {
        for f in &x.local(c).facets {
            *boundary_count.entry((f.cell, c)).or_default() += 1;
            parents.entry(f.cell).or_default().insert(c);
        }
    }
    let euler = |alive: &BTreeSet<CellRef>| -> i64 {
        alive
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    };
    if euler(&alive) != 1 {
        return Err(ReplayError::Euler(euler(&alive)));
    }
    for (t, step) in cert.steps.iter().enumerate() {
        let resolve = |dim: usize, name: &str| {
            x.find(dim, name)
                .map(|i| CellRef::new(dim, i))
                .ok_or_else(|| ReplayError::UnknownCell {
                    step: t,
                    name: name.to_string(),
                })
        };
        let f = resolve(step.dim, &step.free)?;
        let c = resolve(step.dim + 1, &step.maximal)?;
        let not_free = || ReplayError::NotFree {
            step: t,
            free: step.free.clone(),
            maximal: step.maximal.clone(),
        };
        if !alive.contains(&f) || !alive.contains(&c) {
            return Err(not_free());
        }
        let live_parents: Vec<CellRef> = parents
            .get(&f)
            .map(|p| p.iter().copied().filter(|p| alive.contains(p)).collect())
            .unwrap_or_default();
        let c_is_maximal = parents
            .get(&c)
            .map_or(true, |p| p.iter().all(|p| !alive.contains(p)));
        if live_parents != vec![c] || boundary_count.get(&(f, c)) != Some(&1) || !c_is_maximal {
            return Err(not_free());
        }
        alive.remove(&f);
        alive.remove(&c);
        if euler(&alive) != 1 {
            return Err(ReplayError::Euler(euler(&alive)));
        }
    }
    if alive.len() != 1 {
        return Err(ReplayError::Leftover(alive.len()));
    }
    let v = *alive.iter().next().unwrap();
    if v.dim != 0 || x.name(v) != cert.terminal {
        return Err(ReplayError::Terminal(cert.terminal.clone()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn square_collapses_in_four_steps() {
        let x = builders::square();
        let out = collapse_to_point(&x).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.steps.len(), 4);
        replay_certificate(&x, cert).unwrap();
    }

    #[test]
    fn torus_is_stuck_immediately() {
        let x = builders::torus();
        assert!(free_faces(&x).is_empty());
        match collapse_to_point(&x).unwrap() {
            CollapseOutcome::Stuck { remaining, steps } => {
                assert!(steps.is_empty());
                assert_eq!(remaining, x.all_cells());
            }
            o => panic!("unexpected {:?}", o),
        }
    }

    #[test]
    fn path_free_faces_are_leaves() {
        let x = builders::path(2);
        let ff = free_faces(&x);
        assert_eq!(ff.len(), 2);
        assert!(ff.iter().all(|(f, _)| f.dim == 0));
    }

    #[test]
    fn square_free_faces_are_edges() {
        let ff = free_faces(&builders::square());
        assert_eq!(ff.len(), 4);
        assert!(ff.iter().all(|(f, c)| f.dim == 1 && c.dim == 2));
    }

    #[test]
    fn cube_and_missing_corner() {
        let x = builders::cube3();
        let cert = collapse_to_point(&x).unwrap();
        replay_certificate(&x, cert.certificate().unwrap()).unwrap();
        assert_eq!(cert.certificate().unwrap().steps.len(), 13);
        assert!(matches!(
            collapse_to_point(&builders::missing_corner()),
            Err(Error::NotNpc(_))
        ));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let x = builders::square();
        let mut cert = collapse_to_point(&x).unwrap().certificate().unwrap().clone();
        cert.steps.swap(0, 3);
        assert!(replay_certificate(&x, &cert).is_err());
    }
}
