use serde::Serialize;

use super::{CellKind, Diagram};

/// A dual curve: a chain of edges joined by square midcubes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualCurve {
    /// Diagram edges crossed, in order.
    pub edges: Vec<usize>,
    /// Squares crossed, with the midcube used (0 joins sides 0 and 2, 1 joins sides 1 and 3).
    pub squares: Vec<(usize, u8)>,
    pub closed: bool,
}

/// Dual curves of the square part of a diagram.
pub fn dual_curves(d: &Diagram) -> Vec<DualCurve> {
    let ne = d.edges().len();
    // links[e]: (square, midcube, other edge)
    let mut links: Vec<Vec<(usize, u8, usize)>> = vec![Vec::new(); ne];
    for (f, c) in d.cells().iter().enumerate() {
        if !matches!(c.kind, CellKind::Square { .. }) {
            continue;
        }
        for m in 0..2u8 {
            let a = c.boundary[m as usize].edge;
            let b = c.boundary[m as usize + 2].edge;
            links[a].push((f, m, b));
            if a != b {
                links[b].push((f, m, a));
            }
        }
    }
    let mut used = vec![false; ne];
    let mut used_mid = std::collections::HashSet::new();
    let mut out = Vec::new();
    let walk = |start: usize, used: &mut Vec<bool>, used_mid: &mut std::collections::HashSet<(usize, u8)>| {
        let mut curve = DualCurve {
            edges: vec![start],
            squares: Vec::new(),
            closed: false,
        };
        used[start] = true;
        let mut at = start;
        loop {
            let next = links[at].iter().find(|(f, m, _)| !used_mid.contains(&(*f, *m))).copied();
            let Some((f, m, b)) = next else { break };
            used_mid.insert((f, m));
            curve.squares.push((f, m));
            if used[b] {
                curve.closed = b == start;
                break;
            }
            used[b] = true;
            curve.edges.push(b);
            at = b;
        }
        curve
    };
    for e in 0..ne {
        if !used[e] && !links[e].is_empty() && links[e].len() == 1 {
            out.push(walk(e, &mut used, &mut used_mid));
        }
    }
    for e in 0..ne {
        if !used[e] && !links[e].is_empty() {
            out.push(walk(e, &mut used, &mut used_mid));
        }
    }
    out
}

/// Curve index through each (square, midcube).
pub(crate) fn curve_of_midcube(d: &Diagram, curves: &[DualCurve]) -> Vec<[usize; 2]> {
    let mut out = vec![[usize::MAX; 2]; d.cells().len()];
    for (i, c) in curves.iter().enumerate() {
        for &(f, m) in &c.squares {
            out[f][m as usize] = i;
        }
    }
    out
}
