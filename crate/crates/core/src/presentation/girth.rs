use std::collections::HashMap;

use serde::Serialize;

use super::pieces::{cone_pieces, piece_bound, piece_paths, wall_pieces, AbstractPiece, Bound, PieceBound, PiecePaths};
use super::CubicalPresentation;
use crate::complex::{CubeComplex, OrientedEdge, UnionFind};
use crate::error::{Error, Result};

/// Default cap on search steps before a girth search gives up.
pub const DEFAULT_STEP_LIMIT: usize = 20_000_000;

/// Pieces of a presentation and the derived path tables.
#[derive(Debug, Clone)]
pub struct PieceData {
    pub pieces: Vec<AbstractPiece>,
    /// Hyperplanes whose wall pieces could not be computed.
    pub wall_indeterminate: Vec<usize>,
    pub bound: PieceBound,
    pub paths: Vec<PiecePaths>,
}

impl PieceData {
    pub fn compute(p: &CubicalPresentation) -> Result<Self> {
        let mut pieces = cone_pieces(p)?;
        let walls = wall_pieces(p)?;
        pieces.extend(walls.pieces);
        let bound = piece_bound(&pieces);
        let paths = piece_paths(p, &pieces);
        Ok(PieceData {
            pieces,
            wall_indeterminate: walls.indeterminate,
            bound,
            paths,
        })
    }

    /// Add a path of relator `i` as a piece, with all its subpaths and reversals.
    pub fn add_path(&mut self, i: usize, path: &[OrientedEdge]) {
        for a in 0..path.len() {
            for b in a + 1..=path.len() {
                let sub = path[a..b].to_vec();
                let rev: Vec<OrientedEdge> = sub.iter().rev().map(|d| d.reversed()).collect();
                self.paths[i].insert(sub, true);
                self.paths[i].insert(rev, true);
            }
        }
        if let Bound::Finite(l) = self.bound.l {
            self.bound.l = Bound::Finite(l.max(path.len()));
        }
    }

    fn l(&self) -> Option<usize> {
        match self.bound.l {
            Bound::Finite(l) => Some(l),
            Bound::Infinite => None,
        }
    }
}

/// Fewest pieces concatenating to the closed path `cycle`, with the pieces.
/// A greedy longest-piece walk is optimal from a fixed breakpoint since
/// subpaths of pieces are pieces; every rotation is tried as breakpoint.
pub fn decompose(
    cycle: &[OrientedEdge],
    paths: &PiecePaths,
    certain_only: bool,
) -> Option<Vec<Vec<OrientedEdge>>> {
    let m = cycle.len();
    let at = |i: usize| cycle[i % m];
    let mut best: Option<Vec<Vec<OrientedEdge>>> = None;
    for s in 0..m {
        let mut pos = 0;
        let mut parts = Vec::new();
        while pos < m {
            let longest = (1..=paths.max_len.min(m - pos)).rev().find(|&l| {
                let seg: Vec<OrientedEdge> = (0..l).map(|t| at(s + pos + t)).collect();
                paths.contains(&seg, certain_only)
            });
            let Some(l) = longest else {
                break;
            };
            parts.push((0..l).map(|t| at(s + pos + t)).collect::<Vec<_>>());
            pos += l;
            if best.as_ref().is_some_and(|b| parts.len() >= b.len()) {
                break;
            }
        }
        if pos == m && best.as_ref().map_or(true, |b| parts.len() < b.len()) {
            best = Some(parts);
        }
    }
    best
}

struct Search {
    best: Option<(Vec<OrientedEdge>, Vec<Vec<OrientedEdge>>)>,
    steps: usize,
    complete: bool,
}

fn dart_index(d: OrientedEdge) -> usize {
    2 * d.edge + usize::from(!d.forward)
}

/// Exhaustive search over cyclically reduced closed paths of length at most
/// `budget` made of piece-covered darts.
fn search(
    y: &CubeComplex,
    paths: &PiecePaths,
    certain_only: bool,
    l: usize,
    budget: usize,
    step_limit: usize,
) -> Search {
    let mut out_darts: Vec<Vec<OrientedEdge>> = vec![Vec::new(); y.count(0)];
    for e in 0..y.count(1) {
        for fwd in [true, false] {
            let d = OrientedEdge::new(e, fwd);
            if paths.contains(&[d], certain_only) {
                out_darts[y.tail(d)].push(d);
            }
        }
    }
    let mut s = Search {
        best: None,
        steps: 0,
        complete: true,
    };
    let starts: Vec<OrientedEdge> = out_darts.iter().flatten().copied().collect();
    for d0 in starts {
        let mut path = vec![d0];
        // iterator positions per depth
        let mut stack: Vec<usize> = vec![0];
        let target = y.tail(d0);
        loop {
            let limit = match &s.best {
                Some((_, parts)) => budget.min((parts.len() - 1) * l),
                None => budget,
            };
            let last = *path.last().unwrap();
            if y.head(last) == target && last != d0.reversed() && *stack.last().unwrap() == 0 {
                if let Some(parts) = decompose(&path, paths, certain_only) {
                    if s.best.as_ref().map_or(true, |(_, b)| parts.len() < b.len()) {
                        s.best = Some((path.clone(), parts));
                    }
                }
            }
            let depth = path.len();
            let top = stack.last_mut().unwrap();
            let options = &out_darts[y.head(last)];
            let mut next = None;
            if depth < limit {
                while *top < options.len() {
                    let d = options[*top];
                    *top += 1;
                    if d != last.reversed() && dart_index(d) >= dart_index(d0) {
                        next = Some(d);
                        break;
                    }
                }
            }
            match next {
                Some(d) => {
                    s.steps += 1;
                    if s.steps > step_limit {
                        s.complete = false;
                        return s;
                    }
                    path.push(d);
                    stack.push(0);
                }
                None => {
                    path.pop();
                    stack.pop();
                    if path.is_empty() {
                        break;
                    }
                }
            }
        }
    }
    s
}

fn covered_has_cycle(y: &CubeComplex, paths: &PiecePaths, certain_only: bool) -> bool {
    let mut dsu = UnionFind::new(y.count(0));
    for (e, edge) in y.edges().iter().enumerate() {
        if !paths.contains(&[OrientedEdge::new(e, true)], certain_only) {
            continue;
        }
        let [a, b] = edge.ends;
        if dsu.find(a) == dsu.find(b) {
            return true;
        }
        dsu.union(a, b);
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Girth {
    Exact(usize),
    AtLeast(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub relator: usize,
    pub cycle: Vec<String>,
    pub decomposition: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum GirthOutcome {
    Determined {
        girth: Girth,
        witness: Option<CycleWitness>,
        budget: usize,
        steps: usize,
    },
    Indeterminate {
        reason: String,
        steps: usize,
    },
}

fn witness(y: &CubeComplex, i: usize, cycle: &[OrientedEdge], parts: &[Vec<OrientedEdge>]) -> CycleWitness {
    let names = |p: &[OrientedEdge]| p.iter().map(|&d| y.oriented_name(d)).collect::<Vec<_>>();
    CycleWitness {
        relator: i,
        cycle: names(cycle),
        decomposition: parts.iter().map(|p| names(p)).collect(),
    }
}

/// A cycle in the source of a piece, pushed into its relator.
fn piece_cycle(pc: &AbstractPiece) -> Vec<OrientedEdge> {
    let s = &pc.source;
    let mut dsu = UnionFind::new(s.count(0));
    let mut tree: Vec<Vec<(usize, OrientedEdge)>> = vec![Vec::new(); s.count(0)];
    for (e, edge) in s.edges().iter().enumerate() {
        let [a, b] = edge.ends;
        if dsu.find(a) == dsu.find(b) {
            // tree path b -> a, then the closing edge a -> b
            let mut prev: HashMap<usize, (usize, OrientedEdge)> = HashMap::new();
            let mut stack = vec![b];
            let mut seen = vec![false; s.count(0)];
            seen[b] = true;
            while let Some(u) = stack.pop() {
                for &(w, d) in &tree[u] {
                    if !seen[w] {
                        seen[w] = true;
                        prev.insert(w, (u, d));
                        stack.push(w);
                    }
                }
            }
            let mut walk = Vec::new();
            let mut u = a;
            while u != b {
                let (p, d) = prev[&u];
                walk.push(d);
                u = p;
            }
            walk.reverse();
            walk.push(OrientedEdge::new(e, true));
            return walk.into_iter().map(|d| pc.immersion.oriented(d)).collect();
        }
        dsu.union(a, b);
        tree[a].push((b, OrientedEdge::new(e, true)));
        tree[b].push((a, OrientedEdge::new(e, false)));
    }
    unreachable!("piece flagged as cyclic has a cycle")
}

/// Least number of pieces in an essential closed path of relator `i`.
/// Without a budget the search deepens until the answer is exact.
pub fn min_piece_girth(
    p: &CubicalPresentation,
    data: &PieceData,
    i: usize,
    budget: Option<usize>,
    step_limit: usize,
) -> Result<GirthOutcome> {
    let y = p.relators().get(i).ok_or_else(|| Error::InvalidPresentation(format!("no relator {}", i)))?.domain();
    if y.dimension() > 1 {
        return Err(Error::RelatorNotGraph(i));
    }
    let Some(l) = data.l() else {
        return Ok(GirthOutcome::Indeterminate {
            reason: "piece bound is infinite".into(),
            steps: 0,
        });
    };
    let paths = &data.paths[i];
    if l == 0 || !covered_has_cycle(y, paths, false) {
        return Ok(GirthOutcome::Determined {
            girth: Girth::Infinite,
            witness: None,
            budget: budget.unwrap_or(0),
            steps: 0,
        });
    }
    let mut b = budget.unwrap_or(l.max(1));
    let mut steps = 0;
    loop {
        let s = search(y, paths, false, l, b, step_limit.saturating_sub(steps));
        steps += s.steps;
        if !s.complete {
            return Ok(GirthOutcome::Indeterminate {
                reason: format!("step limit {} reached at length budget {}", step_limit, b),
                steps,
            });
        }
        let found = s.best.as_ref().map(|(_, parts)| parts.len());
        let exact = found.is_some_and(|c| (c - 1) * l <= b);
        if exact || budget.is_some() {
            let girth = match found {
                Some(c) if exact => Girth::Exact(c),
                Some(c) => Girth::AtLeast(c.min(b / l + 1)),
                None => Girth::AtLeast(b / l + 1),
            };
            return Ok(GirthOutcome::Determined {
                girth,
                witness: s.best.map(|(c, parts)| witness(y, i, &c, &parts)),
                budget: b,
                steps,
            });
        }
        b *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CnStatus {
    Certified,
    Refuted,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnVerdict {
    pub status: CnStatus,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CycleWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub budget_used: usize,
    pub steps: usize,
}

pub fn check_cn(p: &CubicalPresentation, n: usize) -> Result<CnVerdict> {
    let data = PieceData::compute(p)?;
    check_cn_with(p, &data, n, DEFAULT_STEP_LIMIT)
}

/// Decide C(n) from precomputed pieces. The length budget per relator is
/// `(n - 1)·L`.
pub fn check_cn_with(
    p: &CubicalPresentation,
    data: &PieceData,
    n: usize,
    step_limit: usize,
) -> Result<CnVerdict> {
    for (i, r) in p.relators().iter().enumerate() {
        if r.domain().dimension() > 1 {
            return Err(Error::RelatorNotGraph(i));
        }
    }
    let mut verdict = CnVerdict {
        status: CnStatus::Certified,
        n,
        witness: None,
        reason: None,
        budget_used: 0,
        steps: 0,
    };
    if n <= 1 {
        return Ok(verdict);
    }
    let Some(l) = data.l() else {
        let k = data.bound.unbounded_witness.expect("infinite bound has a witness");
        let pc = &data.pieces[k];
        let cycle = piece_cycle(pc);
        let y = p.relators()[pc.relator].domain();
        verdict.status = if pc.uncertain {
            CnStatus::Indeterminate
        } else {
            CnStatus::Refuted
        };
        verdict.reason = Some("a piece carries an essential cycle".into());
        verdict.witness = Some(witness(y, pc.relator, &cycle, &[cycle.clone()]));
        return Ok(verdict);
    };
    let budget = (n - 1) * l;
    verdict.budget_used = budget;
    let mut shaky = None;
    for (i, r) in p.relators().iter().enumerate() {
        let y = r.domain();
        let paths = &data.paths[i];
        for certain_only in [true, false] {
            if !covered_has_cycle(y, paths, certain_only) {
                continue;
            }
            let s = search(y, paths, certain_only, l, budget, step_limit.saturating_sub(verdict.steps));
            verdict.steps += s.steps;
            if let Some((cycle, parts)) = &s.best {
                if parts.len() < n {
                    let w = witness(y, i, cycle, parts);
                    if certain_only {
                        verdict.status = CnStatus::Refuted;
                        verdict.witness = Some(w);
                        return Ok(verdict);
                    }
                    shaky.get_or_insert(w);
                }
            }
            if !s.complete {
                verdict.status = CnStatus::Indeterminate;
                verdict.reason = Some(format!("step limit {} reached", step_limit));
                return Ok(verdict);
            }
        }
    }
    if let Some(w) = shaky {
        verdict.status = CnStatus::Indeterminate;
        verdict.reason = Some("refutation uses only unclassified wall pieces".into());
        verdict.witness = Some(w);
    } else if !data.wall_indeterminate.is_empty() {
        verdict.status = CnStatus::Indeterminate;
        verdict.reason = Some(format!(
            "carriers of hyperplanes {:?} are not local isometries",
            data.wall_indeterminate
        ));
    }
    Ok(verdict)
}
