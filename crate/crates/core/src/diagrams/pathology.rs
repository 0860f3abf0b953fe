use std::collections::BTreeMap;

use serde::Serialize;

use super::curves::{curve_of_midcube, dual_curves, DualCurve};
use super::{lift_step, square_matches, CellKind, Dart, Diagram};
use crate::complex::OrientedEdge;
use crate::presentation::CubicalPresentation;

/// A violation of one of the six reducedness conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Pathology {
    /// A vertex of valence one; reported but not a violation.
    Spur { vertex: String },
    Nonogon { curve: usize },
    Monogon { curve: usize, square: String },
    Bigon { curves: [usize; 2], squares: [String; 2] },
    CornsquareOnCone { square: String, cone: String },
    CancellablePair { squares: [String; 2], edge: String },
    AbsorbableSquare { square: String, cone: String, edge: String },
    InessentialCone { cone: String },
    CombinableCones { cones: [String; 2], vertex: String },
}

impl Pathology {
    /// Number of the reducedness condition violated; 0 for spurs.
    pub fn condition(&self) -> u8 {
        match self {
            Pathology::Spur { .. } => 0,
            Pathology::Nonogon { .. } | Pathology::Monogon { .. } | Pathology::Bigon { .. } => 1,
            Pathology::CornsquareOnCone { .. } => 2,
            Pathology::CancellablePair { .. } => 3,
            Pathology::AbsorbableSquare { .. } => 4,
            Pathology::InessentialCone { .. } => 5,
            Pathology::CombinableCones { .. } => 6,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReducedVerdict {
    pub reduced: bool,
    pub pathologies: Vec<Pathology>,
    /// Conditions that were not evaluated, with the reason.
    pub skipped: Vec<String>,
}

pub fn is_reduced(d: &Diagram, p: &CubicalPresentation) -> ReducedVerdict {
    let (mut pathologies, skipped) = detect(d, p);
    pathologies.retain(|x| x.condition() > 0);
    ReducedVerdict {
        reduced: pathologies.is_empty(),
        pathologies,
        skipped,
    }
}

pub fn detect_pathologies(d: &Diagram, p: &CubicalPresentation) -> Vec<Pathology> {
    detect(d, p).0
}

fn detect(d: &Diagram, p: &CubicalPresentation) -> (Vec<Pathology>, Vec<String>) {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for v in 0..d.vertices.len() {
        if d.degree(v) == 1 {
            out.push(Pathology::Spur {
                vertex: d.vertices[v].clone(),
            });
        }
    }
    let curves = dual_curves(d);
    curve_pathologies(d, &curves, &mut out);
    cornsquares_on_cones(d, &curves, &mut out);
    out.extend(cancellable_pairs(d).into_iter().map(|(a, b, e)| Pathology::CancellablePair {
        squares: [d.cells[a].name.clone(), d.cells[b].name.clone()],
        edge: d.edges[e].name.clone(),
    }));
    out.extend(absorbable_squares(d, p).into_iter().map(|(s, c, e)| Pathology::AbsorbableSquare {
        square: d.cells[s].name.clone(),
        cone: d.cells[c].name.clone(),
        edge: d.edges[e].name.clone(),
    }));
    for f in 0..d.cells.len() {
        if let CellKind::Cone { relator, .. } = d.cells[f].kind {
            if !d.is_internal(f) {
                continue;
            }
            if p.relators()[relator].domain().dimension() > 1 {
                skipped.push(format!(
                    "condition 5 for `{}`: relator has squares",
                    d.cells[f].name
                ));
                continue;
            }
            if lift_reduces_to_nothing(d, p, f) {
                out.push(Pathology::InessentialCone {
                    cone: d.cells[f].name.clone(),
                });
            }
        }
    }
    out.extend(combinable_cones(d, p).into_iter().map(|(a, b, v)| Pathology::CombinableCones {
        cones: [d.cells[a].name.clone(), d.cells[b].name.clone()],
        vertex: d.vertices[v].clone(),
    }));
    (out, skipped)
}

fn curve_pathologies(d: &Diagram, curves: &[DualCurve], out: &mut Vec<Pathology>) {
    let through = curve_of_midcube(d, curves);
    for (i, c) in curves.iter().enumerate() {
        if c.closed {
            out.push(Pathology::Nonogon { curve: i });
        }
    }
    let mut crossings: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, pair) in through.iter().enumerate() {
        if !matches!(d.cells[f].kind, CellKind::Square { .. }) {
            continue;
        }
        let [a, b] = *pair;
        if a == b {
            out.push(Pathology::Monogon {
                curve: a,
                square: d.cells[f].name.clone(),
            });
        } else {
            crossings.entry((a.min(b), a.max(b))).or_default().push(f);
        }
    }
    for ((a, b), squares) in crossings {
        if squares.len() >= 2 {
            out.push(Pathology::Bigon {
                curves: [a, b],
                squares: [d.cells[squares[0]].name.clone(), d.cells[squares[1]].name.clone()],
            });
        }
    }
}

/// Terminal edge of the half of `curve` leaving square `f` through edge `e`.
fn far_end(curve: &DualCurve, f: usize, e: usize) -> Option<usize> {
    if curve.closed {
        return None;
    }
    let k = curve.squares.iter().position(|&(g, _)| g == f)?;
    if curve.edges[k] == e {
        Some(curve.edges[0])
    } else {
        curve.edges.last().copied()
    }
}

/// Cornsquares whose two dual curves end on consecutive darts of one face.
/// Yields (square, face, position of the earlier dart) with `None` for the outer face.
pub(crate) fn cornsquares(d: &Diagram, curves: &[DualCurve]) -> Vec<(usize, Option<usize>, usize)> {
    let through = curve_of_midcube(d, curves);
    let end_side = |e: usize| -> Vec<(Option<usize>, usize)> {
        [true, false]
            .into_iter()
            .map(|fwd| d.face_of(Dart::new(e, fwd)))
            .filter(|&(f, _)| f.map_or(true, |f| d.is_cone(f)))
            .collect()
    };
    let mut out = Vec::new();
    for (f, cell) in d.cells.iter().enumerate() {
        if !matches!(cell.kind, CellKind::Square { .. }) {
            continue;
        }
        'corner: for i in 0..4 {
            let (ea, eb) = (cell.boundary[i].edge, cell.boundary[(i + 1) % 4].edge);
            let ca = &curves[through[f][i % 2]];
            let cb = &curves[through[f][(i + 1) % 2]];
            let (Some(ta), Some(tb)) = (far_end(ca, f, ea), far_end(cb, f, eb)) else {
                continue;
            };
            if ta == tb {
                continue;
            }
            for (g1, k1) in end_side(ta) {
                for (g2, k2) in end_side(tb) {
                    if g1 != g2 {
                        continue;
                    }
                    let n = match g1 {
                        Some(g) => d.cells[g].boundary.len(),
                        None => d.outer.len(),
                    };
                    if (k1 + 1) % n == k2 || (k2 + 1) % n == k1 {
                        let first = if (k1 + 1) % n == k2 { k1 } else { k2 };
                        out.push((f, g1, first));
                        break 'corner;
                    }
                }
            }
        }
    }
    out
}

fn cornsquares_on_cones(d: &Diagram, curves: &[DualCurve], out: &mut Vec<Pathology>) {
    for (s, g, _) in cornsquares(d, curves) {
        if let Some(c) = g {
            out.push(Pathology::CornsquareOnCone {
                square: d.cells[s].name.clone(),
                cone: d.cells[c].name.clone(),
            });
        }
    }
}

/// Squares `(a, b)` meeting along edge `e` whose boundaries read
/// `e α` and `e⁻¹ β` with `α = β⁻¹` in the base.
pub(crate) fn cancellable_pairs(d: &Diagram) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for e in 0..d.edges.len() {
        let a = Dart::new(e, true);
        let (Some(f1), k1) = d.face_of(a) else { continue };
        let (Some(f2), k2) = d.face_of(a.reversed()) else { continue };
        if f1 == f2 {
            continue;
        }
        let (CellKind::Square { label: l1 }, CellKind::Square { label: l2 }) = (d.cells[f1].kind, d.cells[f2].kind) else {
            continue;
        };
        if l1 != l2 {
            continue;
        }
        let r1 = &d.cells[f1].boundary;
        let r2 = &d.cells[f2].boundary;
        let alpha: Vec<OrientedEdge> = (1..4).map(|i| d.label(r1[(k1 + i) % 4])).collect();
        let beta_inv: Vec<OrientedEdge> = (1..4).rev().map(|i| d.label(r2[(k2 + i) % 4]).reversed()).collect();
        if alpha == beta_inv {
            out.push((f1, f2, e));
        }
    }
    out
}

/// Squares sharing an edge with a cone-cell whose boundary lifts to a
/// square of the relator through the lift of that edge.
pub(crate) fn absorbable_squares(d: &Diagram, p: &CubicalPresentation) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (c, cell) in d.cells.iter().enumerate() {
        let CellKind::Cone { relator, .. } = cell.kind else { continue };
        let r = &p.relators()[relator];
        let y = r.domain();
        if y.count(2) == 0 {
            continue;
        }
        for (k, &dc) in cell.boundary.iter().enumerate() {
            let (Some(s), j) = d.face_of(dc.reversed()) else { continue };
            if d.is_cone(s) || out.iter().any(|&(s2, c2, _)| s2 == s && c2 == c) {
                continue;
            }
            let mut at = d.lift(c, k + 1);
            let mut darts = Vec::new();
            for i in 0..4 {
                let ds = d.cells[s].boundary[(j + i) % 4];
                match lift_step(r, y, at, d.label(ds)) {
                    Some(step) => {
                        darts.push(step);
                        at = y.head(step);
                    }
                    None => break,
                }
            }
            if darts.len() == 4 && at == d.lift(c, k + 1) && (0..y.count(2)).any(|sq| square_matches(y, sq, &darts)) {
                out.push((s, c, dc.edge));
            }
        }
    }
    out
}

/// The lift of the cone boundary freely and cyclically reduces to nothing.
pub(crate) fn lift_reduces_to_nothing(d: &Diagram, p: &CubicalPresentation, f: usize) -> bool {
    let CellKind::Cone { relator, .. } = d.cells[f].kind else { return false };
    let r = &p.relators()[relator];
    let mut stack: Vec<OrientedEdge> = Vec::new();
    for (k, &dart) in d.cells[f].boundary.iter().enumerate() {
        let Some(step) = lift_step(r, r.domain(), d.lift(f, k), d.label(dart)) else {
            return false;
        };
        if stack.last() == Some(&step.reversed()) {
            stack.pop();
        } else {
            stack.push(step);
        }
    }
    let (mut i, mut j) = (0, stack.len());
    while j >= i + 2 && stack[i] == stack[j - 1].reversed() {
        i += 1;
        j -= 1;
    }
    i == j
}

/// Cone-cells of one relator meeting at a vertex whose lifts there agree,
/// up to a symmetry of the relator over the base.
pub(crate) fn combinable_cones(d: &Diagram, p: &CubicalPresentation) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let cones: Vec<usize> = (0..d.cells.len()).filter(|&f| d.is_cone(f)).collect();
    for (ia, &a) in cones.iter().enumerate() {
        for &b in &cones[ia + 1..] {
            let (CellKind::Cone { relator: ra, .. }, CellKind::Cone { relator: rb, .. }) = (d.cells[a].kind, d.cells[b].kind) else {
                continue;
            };
            if ra != rb {
                continue;
            }
            let sym = p.symmetries(ra);
            let hit = d.cells[a].boundary.iter().enumerate().find_map(|(ka, &da)| {
                let v = d.tail(da);
                d.cells[b]
                    .boundary
                    .iter()
                    .enumerate()
                    .any(|(kb, &db)| d.tail(db) == v && sym.contains_key(&(d.lift(a, ka), d.lift(b, kb))))
                    .then_some(v)
            });
            if let Some(v) = hit {
                out.push((a, b, v));
            }
        }
    }
    out
}
