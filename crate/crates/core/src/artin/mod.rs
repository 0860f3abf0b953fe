//! Cubical presentations of two-dimensional Artin groups over a rose, with
//! one relator per labelled edge: the Cayley graph of the dihedral Artin
//! group on its two generators.

mod ball;
mod garside;

pub use ball::{
    ball_girth, dihedral_ball, dihedral_ball_with, girth_dihedral, DihedralBall, DihedralGirth, DEFAULT_BALL_BUDGET,
};
pub use garside::{coxeter_image, inverse_word, parse_word, word_string, DihedralArtin, Factor, Letter, NormalForm};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::builders;
use crate::complex::CubeComplex;
use crate::error::{Error, Result};
use crate::presentation::{wall_pieces, CnStatus, CubicalPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawLabel {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLabeledEdge {
    pub u: String,
    pub v: String,
    pub m: RawLabel,
}

/// Labelled graph file: `{vertices, edges: [{u, v, m}]}` with `m` an
/// integer or `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLabeledGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<RawLabeledEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledEdge {
    pub u: usize,
    pub v: usize,
    pub m: Label,
}

/// Simplicial graph with edge labels in `{2, 3, …} ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    pub fn from_raw(raw: &RawLabeledGraph) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for e in &raw.edges {
            let end = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));
            let (u, v) = (end(&e.u)?, end(&e.v)?);
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at `{}`", e.u)));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("two edges join `{}` and `{}`", e.u, e.v)));
            }
            let m = match &e.m {
                RawLabel::Int(k) if *k >= 2 && *k <= u32::MAX as i64 => Label::Finite(*k as u32),
                RawLabel::Int(k) => return Err(Error::InvalidGraph(format!("label {} is below 2", k))),
                RawLabel::Text(t) if t == "inf" => Label::Infinite,
                RawLabel::Text(t) => return Err(Error::InvalidGraph(format!("label `{}` is not a number or \"inf\"", t))),
            };
            edges.push(LabeledEdge { u, v, m });
        }
        Ok(LabeledGraph {
            vertices: raw.vertices.clone(),
            edges,
        })
    }

    pub fn new(vertices: &[&str], edges: &[(&str, &str, Label)]) -> Result<Self> {
        Self::from_raw(&RawLabeledGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|&(u, v, m)| RawLabeledEdge {
                    u: u.into(),
                    v: v.into(),
                    m: match m {
                        Label::Finite(k) => RawLabel::Int(k as i64),
                        Label::Infinite => RawLabel::Text("inf".into()),
                    },
                })
                .collect(),
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    /// Edges with a finite label; each carries one relator.
    pub fn finite_edges(&self) -> impl Iterator<Item = (usize, &LabeledEdge, u32)> {
        self.edges.iter().enumerate().filter_map(|(i, e)| match e.m {
            Label::Finite(m) => Some((i, e, m)),
            Label::Infinite => None,
        })
    }

    pub fn min_finite_label(&self) -> Option<u32> {
        self.finite_edges().map(|(_, _, m)| m).min()
    }

    pub fn max_finite_label(&self) -> Option<u32> {
        self.finite_edges().map(|(_, _, m)| m).max()
    }

    fn ends(&self, e: &LabeledEdge) -> [&str; 2] {
        [&self.vertices[e.u], &self.vertices[e.v]]
    }
}

/// Bouquet with one loop per vertex of the graph.
pub fn build_rose(g: &LabeledGraph) -> CubeComplex {
    let names: Vec<&str> = g.vertices.iter().map(|s| s.as_str()).collect();
    builders::rose(&names)
}

/// Presentation over the rose whose relators are radius-`radius` balls of
/// the dihedral Artin groups on the finitely labelled edges.
pub fn artin_presentation(g: &LabeledGraph, radius: usize) -> Result<CubicalPresentation> {
    let rose = Arc::new(build_rose(g));
    let mut relators = Vec::new();
    for (_, e, m) in g.finite_edges() {
        relators.push(dihedral_ball(m, radius)?.to_map(rose.clone(), g.ends(e))?);
    }
    CubicalPresentation::new(rose, relators)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorSummary {
    pub edge: [String; 2],
    pub m: u32,
    pub vertices: usize,
    pub edges: usize,
}

/// Longest overlap found between elevations of two relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub relators: [usize; 2],
    pub letters: Vec<String>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceProfile {
    pub radius: usize,
    pub relators: Vec<RelatorSummary>,
    /// Overlaps between distinct relators, one per pair and letter set.
    pub overlaps: Vec<Overlap>,
    /// Overlaps of a relator with itself that are restrictions of a translation.
    pub translations: usize,
    /// Longest run of one letter along a relator cycle.
    pub cycle_run: usize,
    pub wall_pieces: usize,
    pub violations: Vec<String>,
    pub passed: bool,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Components of the fiber product of two balls over the rose, as lists of
/// matched edge pairs.
fn overlap_components(
    b1: &DihedralBall,
    l1: [usize; 2],
    b2: &DihedralBall,
    l2: [usize; 2],
) -> Vec<Vec<(usize, usize)>> {
    let n2 = b2.vertex_count();
    let mut uf = UnionFind((0..b1.vertex_count() * n2).collect());
    let mut by_letter: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, &(_, _, g)) in b2.edges().iter().enumerate() {
        by_letter.entry(l2[g as usize]).or_default().push(j);
    }
    let mut matched = Vec::new();
    for (i, &(t1, h1, g)) in b1.edges().iter().enumerate() {
        for &j in by_letter.get(&l1[g as usize]).into_iter().flatten() {
            let (t2, h2, _) = b2.edges()[j];
            uf.union(t1 * n2 + t2, h1 * n2 + h2);
            matched.push((i, j, t1 * n2 + t2));
        }
    }
    let mut comps: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, j, p) in matched {
        comps.entry(uf.find(p)).or_default().push((i, j));
    }
    comps.into_values().collect()
}

fn longest_run(word: &[Letter]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    if word.iter().all(|l| l.gen == word[0].gen) {
        return n;
    }
    let mut best = 0;
    for start in 0..n {
        let mut k = 1;
        while k < n && word[(start + k) % n].gen == word[start].gen {
            k += 1;
        }
        best = best.max(k);
    }
    best
}

/// Within balls of the given radius: overlaps between distinct relators
/// sharing a generator are single-letter paths, overlaps of a relator with
/// itself are translations, each relator cycle meets a one-letter path in at
/// most one edge, and the rose carries no wall-pieces.
pub fn artin_piece_profile(g: &LabeledGraph, radius: usize) -> Result<PieceProfile> {
    let mut balls = Vec::new();
    let mut letters = Vec::new();
    let mut relators = Vec::new();
    for (_, e, m) in g.finite_edges() {
        let b = dihedral_ball(m, radius)?;
        relators.push(RelatorSummary {
            edge: g.ends(e).map(String::from),
            m,
            vertices: b.vertex_count(),
            edges: b.edges().len(),
        });
        balls.push(b);
        letters.push([e.u, e.v]);
    }
    let mut violations = Vec::new();
    let mut overlaps: BTreeMap<([usize; 2], Vec<String>), usize> = BTreeMap::new();
    let mut translations = 0;
    let mut off_translation = vec![0usize; balls.len()];
    for i in 0..balls.len() {
        for j in i..balls.len() {
            if letters[i].iter().all(|l| !letters[j].contains(l)) {
                continue;
            }
            for comp in overlap_components(&balls[i], letters[i], &balls[j], letters[j]) {
                if i == j {
                    let b = &balls[i];
                    let shift = |(x, y): (usize, usize)| b.translation(b.edges()[x].0, b.edges()[y].0);
                    let first = shift(comp[0]);
                    if comp.iter().all(|&c| shift(c) == first) {
                        translations += 1;
                    } else {
                        off_translation[i] += 1;
                    }
                    continue;
                }
                let used: BTreeSet<String> = comp
                    .iter()
                    .map(|&(x, _)| g.vertices[letters[i][balls[i].edges()[x].2 as usize]].clone())
                    .collect();
                let used: Vec<String> = used.into_iter().collect();
                if used.len() > 1 {
                    violations.push(format!("relators {} and {} overlap along {:?}", i, j, used));
                }
                let len = overlaps.entry(([i, j], used)).or_default();
                *len = (*len).max(comp.len());
            }
        }
    }
    for (i, &k) in off_translation.iter().enumerate() {
        if k > 0 {
            violations.push(format!("relator {} overlaps itself off a translation {} times", i, k));
        }
    }
    let mut cycle_run = 0;
    for (k, b) in balls.iter().enumerate() {
        let run = longest_run(&DihedralArtin::new(b.m)?.relator());
        cycle_run = cycle_run.max(run);
        if run > 1 {
            violations.push(format!("relator {} cycle has a run of {} equal letters", k, run));
        }
    }
    // the rose has no squares, so walls are single edges
    let small = artin_presentation(g, 1)?;
    let walls = wall_pieces(&small)?.pieces.len();
    if walls > 0 {
        violations.push(format!("{} wall-pieces", walls));
    }
    Ok(PieceProfile {
        radius,
        relators,
        overlaps: overlaps
            .into_iter()
            .map(|((relators, letters), length)| Overlap { relators, letters, length })
            .collect(),
        translations,
        cycle_run,
        wall_pieces: walls,
        passed: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinWitness {
    pub edge: [String; 2],
    pub m: u32,
    pub cycle: Vec<String>,
    pub decomposition: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinVerdict {
    pub status: CnStatus,
    pub n: usize,
    /// `2·min m`; absent when every label is infinite.
    pub certified_max_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ArtinWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub note: &'static str,
    pub profile: PieceProfile,
}

const GIRTH_NOTE: &str = "essential cycles have length 2m; the bound 5 applies to the labels m, so C(9) needs m ≥ 5";

/// Certify C(n): every essential cycle of a relator has length at least
/// `2·min m` and meets each piece in at most one edge.
pub fn certify_artin_cn(g: &LabeledGraph, n: usize) -> Result<ArtinVerdict> {
    let radius = g.max_finite_label().unwrap_or(1) as usize;
    let profile = artin_piece_profile(g, radius)?;
    if !profile.passed {
        return Err(Error::ProfileNotVerified(profile.violations.join("; ")));
    }
    let Some(mmin) = g.min_finite_label() else {
        return Ok(ArtinVerdict {
            status: CnStatus::Certified,
            n,
            certified_max_n: None,
            witness: None,
            reason: Some("no finite labels, so no relators".into()),
            note: GIRTH_NOTE,
            profile,
        });
    };
    // girth is measured, not assumed
    let mut labels: Vec<u32> = g.finite_edges().map(|(_, _, m)| m).collect();
    labels.sort_unstable();
    labels.dedup();
    for &m in &labels {
        let girth = girth_dihedral(m, mmin as usize)?;
        let ok = match girth {
            DihedralGirth::Found(l) => l == 2 * mmin as usize,
            DihedralGirth::NotFoundWithin(_) => m > mmin,
        };
        if !ok {
            return Err(Error::ProfileNotVerified(format!("label {} has girth {:?}", m, girth)));
        }
    }
    let max_n = 2 * mmin as usize;
    let mut verdict = ArtinVerdict {
        status: CnStatus::Certified,
        n,
        certified_max_n: Some(max_n),
        witness: None,
        reason: None,
        note: GIRTH_NOTE,
        profile,
    };
    if n > max_n {
        let (_, e, m) = g.finite_edges().find(|&(_, _, m)| m == mmin).expect("minimum is attained");
        let ends = g.ends(e);
        let cycle: Vec<String> = DihedralArtin::new(m)?
            .relator()
            .iter()
            .map(|l| format!("{}{}", ends[l.gen as usize], if l.inverse { "-" } else { "+" }))
            .collect();
        verdict.status = CnStatus::Refuted;
        verdict.reason = Some(format!("relator cycle of length {} is a union of single-edge pieces", max_n));
        verdict.witness = Some(ArtinWitness {
            edge: ends.map(String::from),
            m,
            decomposition: cycle.iter().map(|c| vec![c.clone()]).collect(),
            cycle,
        });
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests;
