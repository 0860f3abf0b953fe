//! Serialized form of a cube complex, as read from and written to disk.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    pub dim: usize,
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<RawEdge>,
    #[serde(default)]
    pub squares: Vec<RawSquare>,
    #[serde(default)]
    pub cubes: Vec<RawCube>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub id: String,
    pub ends: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSquare {
    pub id: String,
    /// Oriented edge references such as `e3+` or `e3-`.
    pub boundary: Vec<String>,
}

/// A 3-cube given by six oriented face squares and the matching of their
/// 24 boundary slots into 12 edges. Each pairing is `[[face, slot], [face, slot]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCube {
    pub id: String,
    pub faces: Vec<String>,
    pub pairings: Vec<[[usize; 2]; 2]>,
}

/// Split `e3+` into (`e3`, true); a missing sign means `+`.
pub fn split_oriented(reference: &str) -> (&str, bool) {
    if let Some(stem) = reference.strip_suffix('+') {
        (stem, true)
    } else if let Some(stem) = reference.strip_suffix('-') {
        (stem, false)
    } else {
        (reference, true)
    }
}

pub fn oriented(name: &str, forward: bool) -> String {
    format!("{}{}", name, if forward { '+' } else { '-' })
}

impl RawComplex {
    pub fn new(dim: usize) -> Self {
        RawComplex {
            dim,
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.vertices.push(id.into());
        self
    }

    pub fn edge(&mut self, id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> &mut Self {
        self.edges.push(RawEdge {
            id: id.into(),
            ends: vec![a.into(), b.into()],
        });
        self
    }

    pub fn square(&mut self, id: impl Into<String>, boundary: [&str; 4]) -> &mut Self {
        self.squares.push(RawSquare {
            id: id.into(),
            boundary: boundary.iter().map(|s| s.to_string()).collect(),
        });
        self
    }
}
