//! Symmetric and minimal conditions for graph relators, read off the
//! components of each self fiber product `Y ⊗_X Y`.

use serde::Serialize;

use super::{fiber_product, Index};
use crate::error::{Error, Result};
use crate::presentation::CubicalPresentation;

const SUPERCONVEXITY_NOTE: &str = "superconvexity not checked";
const NORMALITY_NOTE: &str = "assumes π₁Y is normal in its stabiliser";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricVerdict {
    pub relator: usize,
    pub holds: bool,
    /// Always "PARTIAL": only the fiber-product clause is decided.
    pub scope: &'static str,
    pub note: &'static str,
    /// First component that is neither iso-iso nor of infinite index.
    pub offending_component: Option<Vec<(String, String)>>,
    pub offending_index: Option<Index>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalVerdict {
    pub relator: usize,
    pub minimal: bool,
    pub note: &'static str,
    /// Vertex pairs of a non-diagonal component mapping isomorphically to both factors.
    pub witness: Option<Vec<(String, String)>>,
}

fn require_graphs(p: &CubicalPresentation) -> Result<()> {
    for (i, r) in p.relators().iter().enumerate() {
        if r.domain().dimension() > 1 {
            return Err(Error::RelatorNotGraph(i));
        }
    }
    Ok(())
}

pub fn check_symmetric(p: &CubicalPresentation) -> Result<Vec<SymmetricVerdict>> {
    require_graphs(p)?;
    let mut out = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let fp = fiber_product(r, r)?;
        let bad = fp.components.iter().enumerate().find(|(_, c)| {
            !(c.iso_left && c.iso_right) && c.index_in_left != Some(Index::Infinite)
        });
        out.push(SymmetricVerdict {
            relator: i,
            holds: bad.is_none(),
            scope: "PARTIAL",
            note: SUPERCONVEXITY_NOTE,
            offending_component: bad.map(|(k, _)| fp.vertex_pairs(k)),
            offending_index: bad.and_then(|(_, c)| c.index_in_left),
        });
    }
    Ok(out)
}

pub fn check_minimal(p: &CubicalPresentation) -> Result<Vec<MinimalVerdict>> {
    require_graphs(p)?;
    let mut out = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let fp = fiber_product(r, r)?;
        let witness = fp
            .components
            .iter()
            .position(|c| !c.diagonal && c.iso_left && c.iso_right)
            .map(|k| fp.vertex_pairs(k));
        out.push(MinimalVerdict {
            relator: i,
            minimal: witness.is_none(),
            note: NORMALITY_NOTE,
            witness,
        });
    }
    Ok(out)
}
