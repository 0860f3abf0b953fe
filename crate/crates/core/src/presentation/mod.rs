//! Cubical presentations `⟨X | {Y_i}⟩`, their pieces and the C(n) condition.

mod girth;
mod pieces;

pub use girth::{
    check_cn, check_cn_with, decompose, min_piece_girth, CnStatus, CnVerdict, CycleWitness, Girth,
    GirthOutcome, PieceData, DEFAULT_STEP_LIMIT,
};
pub use pieces::{
    cone_pieces, piece_bound, piece_paths, wall_pieces, AbstractPiece, Bound, Partner, PieceBound,
    PieceKind, PiecePaths, WallPieces,
};

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::complex::{check_npc, CubeComplex, NpcVerdict};
use crate::error::{Error, Result};
use crate::maps::{fiber_product, CombinatorialMap, LocalIsometryVerdict};

/// Vertex pairs `(y, y')` of a relator related by a symmetry over the base,
/// keyed to the symmetry they belong to.
pub type Symmetries = BTreeMap<(usize, usize), usize>;

#[derive(Debug, Clone)]
pub struct CubicalPresentation {
    base: Arc<CubeComplex>,
    relators: Vec<CombinatorialMap>,
    symmetries: OnceLock<Vec<Symmetries>>,
}

impl CubicalPresentation {
    /// Checks that the base is connected and NPC and that every relator is a
    /// local isometry from a connected complex into the base.
    pub fn new(base: Arc<CubeComplex>, relators: Vec<CombinatorialMap>) -> Result<Self> {
        if !base.is_connected() {
            return Err(Error::InvalidPresentation("base is not connected".into()));
        }
        if let NpcVerdict::NotNpc(w) = check_npc(&base) {
            return Err(Error::NotNpc(w.vertex));
        }
        for (i, r) in relators.iter().enumerate() {
            if !Arc::ptr_eq(r.codomain(), &base) && **r.codomain() != *base {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} does not map to the base",
                    i
                )));
            }
            if !r.domain().is_connected() {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} is not connected",
                    i
                )));
            }
            if let LocalIsometryVerdict::Fails(w) = r.check_local_isometry() {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} is not a local isometry at `{}` ({:?})",
                    i, w.vertex, w.reason
                )));
            }
        }
        Ok(CubicalPresentation { base, relators, symmetries: OnceLock::new() })
    }

    pub fn base(&self) -> &Arc<CubeComplex> {
        &self.base
    }

    pub fn relators(&self) -> &[CombinatorialMap] {
        &self.relators
    }

    /// Components of `Y_i ⊗_X Y_i` mapping isomorphically to both factors.
    /// The diagonal is always among them; any other one is a deck symmetry
    /// of `Y_i` over `X`, and cone-cells differing by one are identified.
    pub fn symmetries(&self, i: usize) -> &Symmetries {
        &self.symmetries.get_or_init(|| {
            self.relators
                .iter()
                .map(|r| {
                    let mut out: Symmetries = (0..r.domain().vertex_names().len()).map(|y| ((y, y), 0)).collect();
                    if let Ok(fp) = fiber_product(r, r) {
                        for (k, c) in fp.components.iter().enumerate() {
                            if c.iso_left && c.iso_right && !c.diagonal {
                                for cell in c.cells.iter().filter(|c| c.dim == 0) {
                                    out.insert(fp.pairs[0][cell.index], k + 1);
                                }
                            }
                        }
                    }
                    out
                })
                .collect()
        })[i]
    }

    /// One-relator-per-word presentation over a rose on the letters used.
    pub fn over_rose(letters: &[&str], words: &[&str]) -> Result<Self> {
        let rose = Arc::new(crate::builders::rose(letters));
        let relators = words
            .iter()
            .map(|w| crate::builders::word_map(w, rose.clone()))
            .collect();
        Self::new(rose, relators)
    }
}

#[cfg(test)]
mod tests;
