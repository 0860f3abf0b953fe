use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::garside::{inverse_word, DihedralArtin, Letter, NormalForm};
use crate::complex::{CubeComplex, OrientedEdge, RawComplex};
use crate::error::{Error, Result};
use crate::maps::CombinatorialMap;

/// Largest number of vertices a ball may have.
pub const DEFAULT_BALL_BUDGET: usize = 200_000;

/// Ball around the identity in the Cayley graph of `A(m)`.
#[derive(Debug, Clone)]
pub struct DihedralBall {
    pub m: u32,
    pub radius: usize,
    elements: Vec<NormalForm>,
    /// Geodesic word from the identity to each vertex.
    words: Vec<Vec<Letter>>,
    dist: Vec<usize>,
    /// `(tail, head, generator)`.
    edges: Vec<(usize, usize, u8)>,
}

impl DihedralBall {
    pub fn vertex_count(&self) -> usize {
        self.elements.len()
    }

    pub fn edges(&self) -> &[(usize, usize, u8)] {
        &self.edges
    }

    pub fn distance(&self, v: usize) -> usize {
        self.dist[v]
    }

    pub fn element(&self, v: usize) -> &NormalForm {
        &self.elements[v]
    }

    pub fn word(&self, v: usize) -> &[Letter] {
        &self.words[v]
    }

    pub fn frontier(&self) -> Vec<usize> {
        (0..self.dist.len()).filter(|&v| self.dist[v] == self.radius).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.elements.len()];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// `v·u⁻¹`, the left translation taking `u` to `v`.
    pub fn translation(&self, u: usize, v: usize) -> NormalForm {
        let g = DihedralArtin::new(self.m).expect("ball label is valid");
        let mut w = self.words[v].clone();
        w.extend(inverse_word(&self.words[u]));
        g.normal_form(&w)
    }

    /// The ball as a graph over a rose, sending `a` and `b` to the loops
    /// `letters[0]` and `letters[1]`.
    pub fn to_map(&self, rose: Arc<CubeComplex>, letters: [&str; 2]) -> Result<CombinatorialMap> {
        let loops = letters
            .map(|l| rose.find(1, l).ok_or_else(|| Error::UnknownVertex(l.to_string())));
        let loops = [loops[0].clone()?, loops[1].clone()?];
        let mut raw = RawComplex::new(if self.edges.is_empty() { 0 } else { 1 });
        for v in 0..self.vertex_count() {
            raw.vertex(format!("g{}", v));
        }
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            raw.edge(format!("e{}", i), format!("g{}", u), format!("g{}", v));
        }
        let y = Arc::new(raw.validate()?);
        let images = self
            .edges
            .iter()
            .map(|&(_, _, g)| OrientedEdge::new(loops[g as usize], true))
            .collect();
        CombinatorialMap::from_images(y, rose, vec![0; self.vertex_count()], images, vec![], vec![])
    }
}

pub fn dihedral_ball(m: u32, radius: usize) -> Result<DihedralBall> {
    dihedral_ball_with(m, radius, DEFAULT_BALL_BUDGET)
}

/// Breadth-first expansion; vertices are identified through normal forms.
pub fn dihedral_ball_with(m: u32, radius: usize, budget: usize) -> Result<DihedralBall> {
    let g = DihedralArtin::new(m)?;
    if radius == 0 {
        return Err(Error::InvalidDihedral("radius must be at least 1".into()));
    }
    let mut ball = DihedralBall {
        m,
        radius,
        elements: vec![g.identity()],
        words: vec![Vec::new()],
        dist: vec![0],
        edges: Vec::new(),
    };
    let mut index: HashMap<NormalForm, usize> = HashMap::from([(g.identity(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if ball.dist[v] == radius {
            continue;
        }
        for gen in 0..2u8 {
            for inverse in [false, true] {
                let l = Letter::new(gen, inverse);
                let mut nf = ball.elements[v].clone();
                g.mul(&mut nf, l);
                let w = match index.get(&nf) {
                    Some(&w) => w,
                    None => {
                        if ball.elements.len() == budget {
                            return Err(Error::RadiusTooLargeForBudget(radius));
                        }
                        let w = ball.elements.len();
                        let mut word = ball.words[v].clone();
                        word.push(l);
                        index.insert(nf.clone(), w);
                        ball.elements.push(nf);
                        ball.words.push(word);
                        ball.dist.push(ball.dist[v] + 1);
                        queue.push_back(w);
                        w
                    }
                };
                // each edge is recorded once, from its nearer end
                if ball.dist[w] > ball.dist[v] || ball.dist[w] == ball.dist[v] && w > v {
                    ball.edges.push(if inverse { (w, v, gen) } else { (v, w, gen) });
                }
            }
        }
    }
    Ok(ball)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DihedralGirth {
    Found(usize),
    NotFoundWithin(usize),
}

/// Length of the shortest cycle in the ball; by breadth-first search from
/// every vertex.
pub fn ball_girth(ball: &DihedralBall) -> Option<usize> {
    let n = ball.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v, _)) in ball.edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut via = vec![usize::MAX; n];
    for s in 0..n {
        let mut seen = vec![s];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[x] >= b) {
                break;
            }
            for &(y, e) in &adj[x] {
                if e == via[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    via[y] = e;
                    seen.push(y);
                    queue.push_back(y);
                } else {
                    let len = dist[x] + dist[y] + 1;
                    if best.map_or(true, |b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
        for v in seen {
            dist[v] = usize::MAX;
            via[v] = usize::MAX;
        }
    }
    best
}

/// Shortest cycle visible in the radius-`radius` ball of `A(m)`.
pub fn girth_dihedral(m: u32, radius: usize) -> Result<DihedralGirth> {
    let ball = dihedral_ball(m, radius)?;
    Ok(match ball_girth(&ball) {
        Some(g) => DihedralGirth::Found(g),
        None => DihedralGirth::NotFoundWithin(radius),
    })
}
