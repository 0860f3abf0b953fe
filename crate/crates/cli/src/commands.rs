//! One function per command. Each loads its inputs, runs the check and
//! returns a JSON report with a `status` field plus an exit outcome.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use cubical_core::artin::{self, certify_artin_cn, dihedral_ball, LabeledGraph};
use cubical_core::complex::{
    self, check_npc, collapse_to_point, convex_hull, hyperplanes as all_hyperplanes, is_convex, replay_certificate,
    CellRef, CollapseOutcome, CubeComplex,
};
use cubical_core::diagrams::{boundary_features, check_dichotomy, reduce, validate_diagram, Diagram};
use cubical_core::io;
use cubical_core::maps::{fiber_product, check_minimal, check_symmetric};
use cubical_core::presentation::{
    check_cn_with, cone_pieces, wall_pieces, CnStatus, CubicalPresentation, Partner,
    PieceData, DEFAULT_STEP_LIMIT,
};
use cubical_core::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    Indeterminate,
    InputError,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Indeterminate => 2,
            Outcome::InputError => 3,
        }
    }

    fn of(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

pub struct Report {
    pub outcome: Outcome,
    pub body: Value,
}

fn report(outcome: Outcome, body: Value) -> Report {
    Report { outcome, body }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn input_error(e: Error) -> Report {
    report(Outcome::InputError, json!({"status": "error", "error": e.to_string()}))
}

/// Invalid input that the command itself judges: exit 1 rather than 3.
fn invalid(e: Error) -> Report {
    match e {
        Error::Parse(_) | Error::FileNotFound(_) => input_error(e),
        e => report(Outcome::Fails, json!({"status": "invalid", "error": e.to_string()})),
    }
}

macro_rules! load {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return input_error(e),
        }
    };
}

fn names(x: &CubeComplex, cells: impl IntoIterator<Item = CellRef>) -> Vec<String> {
    cells.into_iter().map(|c| x.name(c).to_string()).collect()
}

pub fn validate(path: &Path) -> Report {
    match io::load_complex(path) {
        Ok(x) => report(
            Outcome::Holds,
            json!({
                "status": "valid",
                "dim": x.dimension(),
                "counts": (0..4).map(|d| x.count(d)).collect::<Vec<_>>(),
                "euler_characteristic": x.euler_characteristic(),
                "connected": x.is_connected(),
            }),
        ),
        Err(e) => invalid(e),
    }
}

pub fn npc(path: &Path) -> Report {
    let x = load!(io::load_complex(path));
    let v = check_npc(&x);
    report(Outcome::of(v.is_npc()), to_value(&v))
}

fn hyperplane_json(x: &CubeComplex, h: &complex::Hyperplane) -> Value {
    json!({
        "id": h.id,
        "edges": h.edges.iter().map(|&e| x.edges()[e].name.clone()).collect::<Vec<_>>(),
        "carrier_cells": names(x, h.carrier_cells.iter().copied()),
        "self_crossing": h.self_crossing,
        "self_osculating": h.self_osculating,
    })
}

pub fn hyperplanes(path: &Path) -> Report {
    let x = load!(io::load_complex(path));
    let hs: Vec<Value> = all_hyperplanes(&x).iter().map(|h| hyperplane_json(&x, h)).collect();
    report(Outcome::Holds, json!({"status": "ok", "hyperplanes": hs}))
}

fn pick(x: &CubeComplex, id: usize) -> Result<complex::Hyperplane, Error> {
    all_hyperplanes(x)
        .into_iter()
        .nth(id)
        .ok_or_else(|| Error::Unsupported(format!("no hyperplane {}", id)))
}

pub fn carrier(path: &Path, id: usize) -> Report {
    let x = load!(io::load_complex(path));
    let h = load!(pick(&x, id));
    let c = complex::carrier(&x, &h);
    report(
        Outcome::Holds,
        json!({
            "status": "ok",
            "hyperplane": hyperplane_json(&x, &h),
            "degenerate": c.degenerate,
            "complex": to_value(&c.complex.to_raw()),
        }),
    )
}

fn find_cell(x: &CubeComplex, name: &str) -> Result<CellRef, Error> {
    (0..4)
        .find_map(|d| x.find(d, name).map(|i| CellRef::new(d, i)))
        .ok_or_else(|| Error::DanglingReference {
            cell: "hull input".into(),
            reference: name.to_string(),
        })
}

pub fn hull(path: &Path, cells: &[String]) -> Report {
    let x = load!(io::load_complex(path));
    let mut input = BTreeSet::new();
    for name in cells {
        input.insert(load!(find_cell(&x, name)));
    }
    let input = x.closure(&input);
    let h = convex_hull(&x, &input);
    let convex = load!(is_convex(&x, &h.cells)).is_none();
    report(
        Outcome::of(convex),
        json!({
            "status": if convex { "convex" } else { "not_convex" },
            "cells": names(&x, h.cells.iter().copied()),
            "connecting_path": names(&x, h.connecting_path.iter().copied()),
        }),
    )
}

pub fn collapse(path: &Path, verify: Option<&Path>) -> Report {
    let x = load!(io::load_complex(path));
    if let Some(cert) = verify {
        let cert = load!(io::load_certificate(cert));
        return match replay_certificate(&x, &cert) {
            Ok(()) => report(Outcome::Holds, json!({"status": "verified", "steps": cert.steps.len()})),
            Err(e) => report(Outcome::Fails, json!({"status": "rejected", "error": e.to_string()})),
        };
    }
    match collapse_to_point(&x) {
        Ok(CollapseOutcome::Certified(cert)) => {
            report(Outcome::Holds, json!({"status": "Certified", "certificate": to_value(&cert)}))
        }
        Ok(CollapseOutcome::Stuck { remaining, steps }) => report(
            Outcome::Fails,
            json!({
                "status": "Stuck",
                "free_faces": [],
                "remaining": names(&x, remaining),
                "steps": to_value(&steps),
            }),
        ),
        Err(e @ Error::NotNpc(_)) => report(Outcome::Fails, json!({"status": "NotNPC", "error": e.to_string()})),
        Err(e) => input_error(e),
    }
}

pub fn separate(path: &Path, only: Option<usize>, jobs: usize) -> Report {
    let x = load!(io::load_complex(path));
    let hs = all_hyperplanes(&x);
    if let Some(id) = only {
        if id >= hs.len() {
            return input_error(Error::Unsupported(format!("no hyperplane {}", id)));
        }
    }
    let chosen: Vec<&complex::Hyperplane> = hs.iter().filter(|h| only.map_or(true, |id| h.id == id)).collect();
    let chunk = chosen.len().div_ceil(jobs).max(1);
    let mut rows: Vec<(usize, Value)> = std::thread::scope(|s| {
        let handles: Vec<_> = chosen
            .chunks(chunk)
            .map(|part| {
                let x = &x;
                s.spawn(move || {
                    part.iter()
                        .map(|h| {
                            let comps = complex::separation(x, h);
                            let cells: Vec<Vec<String>> =
                                comps.iter().map(|c| names(x, c.iter().copied())).collect();
                            (h.id, json!({"hyperplane": h.id, "components": comps.len(), "cells": cells}))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker finished")).collect()
    });
    rows.sort_by_key(|r| r.0);
    let all_two = rows.iter().all(|(_, v)| v["components"] == 2);
    report(
        Outcome::Holds,
        json!({
            "status": "ok",
            "all_separate_in_two": all_two,
            "hyperplanes": rows.into_iter().map(|r| r.1).collect::<Vec<_>>(),
        }),
    )
}

pub fn map_check(path: &Path) -> Report {
    let f = match io::load_map(path) {
        Ok(f) => f,
        Err(e) => return invalid(e),
    };
    let v = f.check_local_isometry();
    report(Outcome::of(v.holds()), to_value(&v))
}

pub fn fiber(left: &Path, right: &Path) -> Report {
    let f = load!(io::load_map(left));
    let g = load!(io::load_map(right));
    let fp = load!(fiber_product(&f, &g));
    let comps: Vec<Value> = fp
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "cells": names(&fp.total, c.cells.iter().copied()),
                "vertex_pairs": fp.vertex_pairs(i),
                "iso_left": c.iso_left,
                "iso_right": c.iso_right,
                "index_in_left": c.index_in_left,
                "diagonal": c.diagonal,
            })
        })
        .collect();
    report(Outcome::Holds, json!({"status": "ok", "components": comps}))
}

pub fn symmetric(path: &Path) -> Report {
    let p = load!(io::load_presentation(path));
    let v = load!(check_symmetric(&p));
    let holds = v.iter().all(|r| r.holds);
    report(
        Outcome::of(holds),
        json!({"status": if holds { "symmetric" } else { "not_symmetric" }, "relators": to_value(&v)}),
    )
}

pub fn minimal(path: &Path) -> Report {
    let p = load!(io::load_presentation(path));
    let v = load!(check_minimal(&p));
    let holds = v.iter().all(|r| r.minimal);
    report(
        Outcome::of(holds),
        json!({"status": if holds { "minimal" } else { "not_minimal" }, "relators": to_value(&v)}),
    )
}

pub fn pieces(path: &Path) -> Report {
    let p = load!(io::load_presentation(path));
    let cones = load!(cone_pieces(&p));
    let walls = load!(wall_pieces(&p));
    let list: Vec<Value> = cones
        .iter()
        .chain(&walls.pieces)
        .map(|pc| {
            let mut v = json!({
                "kind": pc.kind,
                "edge_count": pc.edge_count,
                "has_cycle": pc.has_cycle,
                "uncertain": pc.uncertain,
                "component": pc.describe(),
            });
            match pc.partner {
                Partner::Relator(j) => v["relators"] = json!([pc.relator, j]),
                Partner::Hyperplane(h) => {
                    v["relator"] = json!(pc.relator);
                    v["hyperplane"] = json!(h);
                }
            }
            v
        })
        .collect();
    report(
        Outcome::Holds,
        json!({"status": "ok", "pieces": list, "indeterminate_hyperplanes": walls.indeterminate}),
    )
}

pub fn piece_bound(path: &Path) -> Report {
    let p = load!(io::load_presentation(path));
    let data = load!(PieceData::compute(&p));
    report(Outcome::Holds, json!({"status": "ok", "bound": to_value(&data.bound)}))
}

fn cn_outcome(s: CnStatus) -> Outcome {
    match s {
        CnStatus::Certified => Outcome::Holds,
        CnStatus::Refuted => Outcome::Fails,
        CnStatus::Indeterminate => Outcome::Indeterminate,
    }
}

pub fn check_cn(path: &Path, n: usize, budget: Option<usize>) -> Report {
    let p = load!(io::load_presentation(path));
    let data = load!(PieceData::compute(&p));
    let v = load!(check_cn_with(&p, &data, n, budget.unwrap_or(DEFAULT_STEP_LIMIT)));
    report(cn_outcome(v.status), to_value(&v))
}

fn load_diagram(pres: &Path, diagram: &Path) -> Result<(CubicalPresentation, Result<Diagram, Error>), Error> {
    let p = io::load_presentation(pres)?;
    let raw = io::load_diagram(diagram)?;
    let d = validate_diagram(&raw, &p);
    Ok((p, d))
}

macro_rules! diagram {
    ($pres:expr, $diagram:expr) => {{
        let (p, d) = load!(load_diagram($pres, $diagram));
        match d {
            Ok(d) => (p, d),
            Err(e) => return invalid(e),
        }
    }};
}

pub fn diagram_validate(pres: &Path, diagram: &Path) -> Report {
    let (p, d) = diagram!(pres, diagram);
    let _ = p;
    report(
        Outcome::Holds,
        json!({
            "status": "valid",
            "kind": d.kind(),
            "complexity": d.complexity(),
            "vertices": d.vertices().len(),
            "edges": d.edges().len(),
            "outer": d.outer().iter().map(|&x| d.dart_name(x)).collect::<Vec<_>>(),
        }),
    )
}

pub fn diagram_reduce(pres: &Path, diagram: &Path) -> Report {
    let (p, d) = diagram!(pres, diagram);
    match reduce(&d, &p) {
        Ok(out) => report(
            Outcome::of(out.verdict.reduced),
            json!({
                "status": if out.verdict.reduced { "reduced" } else { "not_reduced" },
                "before": d.complexity(),
                "after": out.diagram.complexity(),
                "trace": to_value(&out.trace),
                "verdict": to_value(&out.verdict),
                "diagram": to_value(&out.diagram.to_raw(&p)),
            }),
        ),
        Err(e @ Error::FillingRequired(_)) => report(
            Outcome::Indeterminate,
            json!({"status": "filling_required", "error": e.to_string()}),
        ),
        Err(e) => input_error(e),
    }
}

pub fn diagram_features(pres: &Path, diagram: &Path) -> Report {
    let (p, d) = diagram!(pres, diagram);
    let data = load!(PieceData::compute(&p));
    let f = boundary_features(&d, &p, &data);
    report(Outcome::Holds, json!({"status": "ok", "features": to_value(&f)}))
}

pub fn diagram_dichotomy(pres: &Path, diagram: &Path) -> Report {
    let (p, d) = diagram!(pres, diagram);
    match check_dichotomy(&d, &p) {
        Ok(v) => {
            let mut body = to_value(&v);
            body["status"] = json!(if v.holds { "holds" } else { "fails" });
            report(Outcome::of(v.holds), body)
        }
        Err(e @ Error::PreconditionNotCertified(_)) => report(
            Outcome::Indeterminate,
            json!({"status": "precondition_not_certified", "error": e.to_string()}),
        ),
        Err(e) => input_error(e),
    }
}

fn graph(path: &Path) -> Result<LabeledGraph, Error> {
    io::load_labeled_graph(path)
}

pub fn artin_build(path: &Path, radius: usize) -> Report {
    let g = match graph(path) {
        Ok(g) => g,
        Err(e) => return invalid(e),
    };
    let rose = artin::build_rose(&g);
    let mut relators = Vec::new();
    for (_, e, m) in g.finite_edges() {
        let b = load!(dihedral_ball(m, radius));
        relators.push(json!({
            "edge": [g.vertices()[e.u].clone(), g.vertices()[e.v].clone()],
            "m": m,
            "radius": radius,
            "vertices": b.vertex_count(),
            "edges": b.edges().len(),
            "frontier": b.frontier().len(),
        }));
    }
    report(
        Outcome::Holds,
        json!({"status": "ok", "rose": to_value(&rose.to_raw()), "relators": relators}),
    )
}

pub fn artin_profile(path: &Path, radius: Option<usize>) -> Report {
    let g = match graph(path) {
        Ok(g) => g,
        Err(e) => return invalid(e),
    };
    let radius = radius.unwrap_or_else(|| g.max_finite_label().unwrap_or(1) as usize);
    let p = load!(artin::artin_piece_profile(&g, radius));
    let mut body = to_value(&p);
    body["status"] = json!(if p.passed { "passed" } else { "failed" });
    report(Outcome::of(p.passed), body)
}

pub fn artin_certify(path: &Path, n: usize) -> Report {
    let g = match graph(path) {
        Ok(g) => g,
        Err(e) => return invalid(e),
    };
    match certify_artin_cn(&g, n) {
        Ok(v) => report(cn_outcome(v.status), to_value(&v)),
        Err(e @ Error::ProfileNotVerified(_)) => report(
            Outcome::Indeterminate,
            json!({"status": "Indeterminate", "n": n, "reason": e.to_string()}),
        ),
        Err(e) => input_error(e),
    }
}
