use serde::Serialize;

use super::pathology::{
    absorbable_squares, cancellable_pairs, combinable_cones, is_reduced, lift_reduces_to_nothing, ReducedVerdict,
};
use super::surgery::Planar;
use super::{CellKind, Complexity, Diagram};
use crate::error::{Error, Result};
use crate::presentation::CubicalPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    CombineCones,
    AbsorbSquare,
    FillInessentialCone,
    CancelPair,
}

#[derive(Debug, Clone, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    pub cells: Vec<String>,
    pub before: Complexity,
    pub after: Complexity,
}

#[derive(Debug, Clone)]
pub struct ReduceOutcome {
    pub diagram: Diagram,
    pub trace: Vec<Move>,
    /// Reducedness of the final diagram; pathologies that no move
    /// could discharge remain listed here.
    pub verdict: ReducedVerdict,
}

fn shared_edges(d: &Diagram, a: usize, b: usize) -> Vec<(usize, usize, usize)> {
    d.cells[a]
        .boundary
        .iter()
        .enumerate()
        .filter_map(|(ka, &da)| match d.face_of(da.reversed()) {
            (Some(f), kb) if f == b => Some((da.edge, ka, kb)),
            _ => None,
        })
        .collect()
}

fn try_combine(d: &Diagram, p: &CubicalPresentation, a: usize, b: usize) -> Option<Diagram> {
    let shared = shared_edges(d, a, b);
    let &(e, _, _) = shared.first()?;
    // every shared vertex must be related by one and the same symmetry
    let sym = p.symmetries(relator_of(d, a));
    let class = |x: usize, y: usize| sym.get(&(x, y)).copied();
    let (_, ka0, kb0) = shared[0];
    let Some(k) = class(d.lift(a, ka0), d.lift(b, kb0 + 1)) else { return None };
    let agree = shared.iter().all(|&(_, ka, kb)| {
        class(d.lift(a, ka), d.lift(b, kb + 1)) == Some(k) && class(d.lift(a, ka + 1), d.lift(b, kb)) == Some(k)
    });
    if !agree {
        return None;
    }
    let mut pl = Planar::new(d, p);
    pl.delete_edge(e, b).ok()?;
    pl.trim(a);
    pl.finish().ok()
}

fn try_absorb(d: &Diagram, p: &CubicalPresentation, s: usize, c: usize, e: usize) -> Option<Diagram> {
    let mut pl = Planar::new(d, p);
    pl.delete_edge(e, s).ok()?;
    pl.trim(c);
    pl.finish().ok()
}

fn try_cancel(d: &Diagram, p: &CubicalPresentation, a: usize, b: usize, e: usize) -> Option<Diagram> {
    let mut pl = Planar::new(d, p);
    pl.make_hole(a);
    pl.delete_edge(e, b).ok()?;
    pl.zip(a).ok()?;
    pl.finish().ok()
}

fn relator_of(d: &Diagram, f: usize) -> usize {
    match d.cells[f].kind {
        CellKind::Cone { relator, .. } => relator,
        CellKind::Square { .. } => unreachable!("not a cone-cell"),
    }
}

fn fill_cone(d: &Diagram, p: &CubicalPresentation, f: usize) -> Result<Diagram> {
    let mut pl = Planar::new(d, p);
    pl.make_hole(f);
    pl.zip(f)
        .and_then(|_| pl.finish())
        .map_err(|e| Error::FillingRequired(format!("{}: {}", d.cells[f].name, e)))
}

/// Apply complexity-decreasing moves until none applies: cone-cells are
/// combined first, then squares are absorbed and inessential internal
/// cone-cells filled by trees, then cancellable squares removed.
pub fn reduce(d: &Diagram, p: &CubicalPresentation) -> Result<ReduceOutcome> {
    let mut cur = d.clone();
    let mut trace = Vec::new();
    loop {
        let before = cur.complexity();
        let names = |cur: &Diagram, ids: &[usize]| ids.iter().map(|&i| cur.cells[i].name.clone()).collect::<Vec<_>>();
        let mut step: Option<(MoveKind, Vec<String>, Diagram)> = None;
        for (a, b, _) in combinable_cones(&cur, p) {
            if let Some(next) = try_combine(&cur, p, a, b) {
                step = Some((MoveKind::CombineCones, names(&cur, &[a, b]), next));
                break;
            }
        }
        if step.is_none() {
            for (s, c, e) in absorbable_squares(&cur, p) {
                if let Some(next) = try_absorb(&cur, p, s, c, e) {
                    step = Some((MoveKind::AbsorbSquare, names(&cur, &[s, c]), next));
                    break;
                }
            }
        }
        if step.is_none() {
            for f in 0..cur.cells.len() {
                if cur.is_cone(f) && cur.is_internal(f) && p.relators()[relator_of(&cur, f)].domain().dimension() <= 1 && lift_reduces_to_nothing(&cur, p, f) {
                    let next = fill_cone(&cur, p, f)?;
                    step = Some((MoveKind::FillInessentialCone, names(&cur, &[f]), next));
                    break;
                }
            }
        }
        if step.is_none() {
            for (a, b, e) in cancellable_pairs(&cur) {
                if let Some(next) = try_cancel(&cur, p, a, b, e) {
                    step = Some((MoveKind::CancelPair, names(&cur, &[a, b]), next));
                    break;
                }
            }
        }
        match step {
            Some((kind, cells, next)) => {
                let after = next.complexity();
                debug_assert!(after < before);
                if after >= before {
                    break;
                }
                trace.push(Move {
                    kind,
                    cells,
                    before,
                    after,
                });
                cur = next;
            }
            None => break,
        }
    }
    let verdict = is_reduced(&cur, p);
    Ok(ReduceOutcome {
        diagram: cur,
        trace,
        verdict,
    })
}
