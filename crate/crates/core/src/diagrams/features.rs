use serde::Serialize;

use super::curves::dual_curves;
use super::pathology::{cornsquares, is_reduced};
use super::{lift_step, CellKind, Diagram, DiagramKind};
use crate::complex::OrientedEdge;
use crate::error::{Error, Result};
use crate::presentation::{check_cn_with, CnStatus, CubicalPresentation, PieceData, DEFAULT_STEP_LIMIT};

/// Largest number of pieces in the innerpath of a shell.
pub const SHELL_PIECES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Spur,
    Corner,
    Cornsquare,
    Shell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryFeature {
    pub kind: FeatureKind,
    /// Square or cone-cell carrying the feature.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    /// Outerpath of a shell, as darts of the cone-cell.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outerpath: Vec<String>,
    /// Innerpath of a shell cut into pieces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub innerpath: Option<Vec<Vec<String>>>,
}

impl BoundaryFeature {
    fn at(kind: FeatureKind, cell: Option<String>, vertex: Option<String>) -> Self {
        BoundaryFeature {
            kind,
            cell,
            vertex,
            outerpath: Vec::new(),
            innerpath: None,
        }
    }

    /// Counted by the dichotomy.
    pub fn counts(&self) -> bool {
        self.kind != FeatureKind::Cornsquare
    }
}

/// Cut `path` into the fewest piece paths; cuts are returned as end positions.
fn cover(data: &PieceData, relator: usize, path: &[OrientedEdge]) -> Option<Vec<usize>> {
    let paths = &data.paths[relator];
    let mut i = 0;
    let mut cuts = Vec::new();
    while i < path.len() {
        let longest = (i + 1..=path.len().min(i + paths.max_len))
            .rev()
            .find(|&j| paths.contains(&path[i..j], false))?;
        i = longest;
        cuts.push(i);
    }
    Some(cuts)
}

fn shell(d: &Diagram, p: &CubicalPresentation, data: &PieceData, f: usize) -> Option<BoundaryFeature> {
    let CellKind::Cone { relator, .. } = d.cells[f].kind else { return None };
    let bd = &d.cells[f].boundary;
    let n = bd.len();
    let on_outer: Vec<bool> = bd.iter().map(|&x| d.face_of(x.reversed()).0.is_none()).collect();
    if !on_outer.iter().any(|&o| o) {
        return None;
    }
    let mut feature = BoundaryFeature::at(FeatureKind::Shell, Some(d.cells[f].name.clone()), None);
    if on_outer.iter().all(|&o| o) {
        feature.outerpath = bd.iter().map(|&x| d.dart_name(x)).collect();
        feature.innerpath = Some(Vec::new());
        return Some(feature);
    }
    // exactly one cyclic run of outer positions
    let starts: Vec<usize> = (0..n).filter(|&k| on_outer[k] && !on_outer[(k + n - 1) % n]).collect();
    if starts.len() != 1 {
        return None;
    }
    let mut k = starts[0];
    while on_outer[k % n] {
        feature.outerpath.push(d.dart_name(bd[k % n]));
        k += 1;
    }
    let r = &p.relators()[relator];
    let mut inner = Vec::new();
    let mut names = Vec::new();
    while !on_outer[k % n] {
        inner.push(lift_step(r, r.domain(), d.lift(f, k), d.label(bd[k % n]))?);
        names.push(d.dart_name(bd[k % n]));
        k += 1;
    }
    let cuts = cover(data, relator, &inner)?;
    if cuts.len() > SHELL_PIECES {
        return None;
    }
    let mut pieces = Vec::new();
    let mut from = 0;
    for c in cuts {
        pieces.push(names[from..c].to_vec());
        from = c;
    }
    feature.innerpath = Some(pieces);
    Some(feature)
}

/// Spurs, corners, cornsquares and shells along the boundary of a disc diagram.
pub fn boundary_features(d: &Diagram, p: &CubicalPresentation, data: &PieceData) -> Vec<BoundaryFeature> {
    let mut out = Vec::new();
    if d.kind != DiagramKind::Disc {
        return out;
    }
    for v in 0..d.vertices.len() {
        if d.degree(v) == 1 {
            out.push(BoundaryFeature::at(FeatureKind::Spur, None, Some(d.vertices[v].clone())));
        }
    }
    let o = &d.outer;
    for i in 0..o.len() {
        let (a, b) = (o[i], o[(i + 1) % o.len()]);
        let (Some(s), ka) = d.face_of(a.reversed()) else { continue };
        let (Some(s2), kb) = d.face_of(b.reversed()) else { continue };
        if s == s2 && !d.is_cone(s) && (kb + 1) % 4 == ka && a.edge != b.edge {
            out.push(BoundaryFeature::at(
                FeatureKind::Corner,
                Some(d.cells[s].name.clone()),
                Some(d.vertices[d.head(a)].clone()),
            ));
        }
    }
    let curves = dual_curves(d);
    for (s, g, k) in cornsquares(d, &curves) {
        if g.is_none() {
            out.push(BoundaryFeature::at(
                FeatureKind::Cornsquare,
                Some(d.cells[s].name.clone()),
                Some(d.vertices[d.head(o[k])].clone()),
            ));
        }
    }
    for f in 0..d.cells.len() {
        out.extend(shell(d, p, data, f));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DichotomyVerdict {
    pub holds: bool,
    pub reduced: bool,
    pub single_cell: bool,
    pub features: Vec<BoundaryFeature>,
}

fn single_cell(d: &Diagram) -> bool {
    match d.cells.len() {
        0 => d.edges.len() <= 1,
        1 => d.edges.len() == d.cells[0].boundary.len() && {
            let mut es: Vec<usize> = d.cells[0].boundary.iter().map(|x| x.edge).collect();
            es.sort_unstable();
            es.dedup();
            es.len() == d.edges.len()
        },
        _ => false,
    }
}

/// A reduced disc diagram over a C(9) presentation is a single cell or has
/// at least two spurs, corners or shells in total.
pub fn check_dichotomy(d: &Diagram, p: &CubicalPresentation) -> Result<DichotomyVerdict> {
    let data = PieceData::compute(p)?;
    let cn = check_cn_with(p, &data, 9, DEFAULT_STEP_LIMIT)?;
    if cn.status != CnStatus::Certified {
        return Err(Error::PreconditionNotCertified(9));
    }
    if d.kind != DiagramKind::Disc {
        return Err(Error::Unsupported("the dichotomy concerns disc diagrams".into()));
    }
    let features = boundary_features(d, p, &data);
    let single = single_cell(d);
    Ok(DichotomyVerdict {
        holds: single || features.iter().filter(|f| f.counts()).count() >= 2,
        reduced: is_reduced(d, p).reduced,
        single_cell: single,
        features,
    })
}

/// Remove a cone-cell from a spherical diagram, leaving a disc whose
/// boundary is the boundary of that cone-cell.
pub fn puncture(d: &Diagram, p: &CubicalPresentation, cone: &str) -> Result<Diagram> {
    let f = d
        .find_cell(cone)
        .filter(|&f| d.is_cone(f))
        .ok_or_else(|| Error::ConeCellNotFound(cone.to_string()))?;
    if d.kind != DiagramKind::Sphere {
        return Err(Error::Unsupported("only spherical diagrams are punctured".into()));
    }
    let mut parts = d.parts();
    let removed = parts.cells.remove(f);
    parts.kind = DiagramKind::Disc;
    parts.outer = Some(removed.boundary);
    Diagram::assemble(parts, p)
}
