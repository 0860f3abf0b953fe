use std::sync::Arc;

use super::fixtures::{self, attach, build, NewCell};
use super::*;
use crate::builders;
use crate::complex::CubeComplex;

const C9_WORD: &str = "cbCAAcacbaccBABcabAc";

fn torus_free() -> CubicalPresentation {
    CubicalPresentation::new(Arc::new(builders::torus()), vec![]).unwrap()
}

fn torus_cover() -> CubicalPresentation {
    let t = Arc::new(builders::torus());
    let r = builders::torus_cover(2, t.clone());
    CubicalPresentation::new(t, vec![r]).unwrap()
}

fn commutator() -> CubicalPresentation {
    CubicalPresentation::over_rose(&["a", "b"], &["abAB"]).unwrap()
}

fn c9() -> CubicalPresentation {
    CubicalPresentation::over_rose(&["a", "b", "c"], &[C9_WORD]).unwrap()
}

/// Diagram copying every square of `x` with its own labels.
fn copy_of(x: &CubeComplex, kind: DiagramKind) -> RawDiagram {
    RawDiagram {
        kind,
        vertices: x.vertex_names().to_vec(),
        edges: x
            .edges()
            .iter()
            .map(|e| RawDiagramEdge {
                id: e.name.clone(),
                ends: [x.vertex_names()[e.ends[0]].clone(), x.vertex_names()[e.ends[1]].clone()],
                label: format!("{}+", e.name),
            })
            .collect(),
        squares: x
            .squares()
            .iter()
            .map(|s| RawDiagramSquare {
                id: s.name.clone(),
                boundary: s.boundary.iter().map(|&d| x.oriented_name(d)).collect(),
                label: s.name.clone(),
            })
            .collect(),
        cone_cells: vec![],
        rotations: None,
        outer: None,
    }
}

fn flip(dart: &str) -> String {
    let (name, sign) = dart.split_at(dart.len() - 1);
    format!("{}{}", name, if sign == "+" { "-" } else { "+" })
}

fn edge(id: &str, a: &str, b: &str, label: &str) -> RawDiagramEdge {
    RawDiagramEdge {
        id: id.into(),
        ends: [a.into(), b.into()],
        label: label.into(),
    }
}

fn cone(id: &str, boundary: &[&str], basepoint: &str) -> RawConeCell {
    RawConeCell {
        id: id.into(),
        boundary: boundary.iter().map(|s| s.to_string()).collect(),
        relator: 0,
        basepoint: basepoint.into(),
    }
}

fn raw(kind: DiagramKind, vertices: &[&str], edges: Vec<RawDiagramEdge>, cones: Vec<RawConeCell>) -> RawDiagram {
    RawDiagram {
        kind,
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        edges,
        squares: vec![],
        cone_cells: cones,
        rotations: None,
        outer: None,
    }
}

/// Relator vertices over which some corner of cone-cell `f` sits at `v`.
fn lifts_at(d: &Diagram, f: usize, v: usize) -> Vec<usize> {
    let c = &d.cells()[f];
    (0..c.boundary.len())
        .filter(|&k| d.tail(c.boundary[k]) == v)
        .map(|k| d.lift(f, k))
        .collect()
}

/// Position in the outer walk of the dart on `edge`.
fn outer_pos(d: &Diagram, edge: &str) -> usize {
    d.outer().iter().position(|x| d.edges()[x.edge].name == edge).unwrap()
}

/// Attach a copy of the cone-cell across the run, with the same lift.
fn mirror_cone(d: &Diagram, p: &CubicalPresentation, at: usize, run: usize, name: &str) -> Diagram {
    let o = d.outer();
    let labels: Vec<_> = (0..run).map(|k| d.label(o[(at + k) % o.len()])).collect();
    let (Some(f), _) = d.face_of(o[at].reversed()) else { panic!("no cell behind the run") };
    let bp = lifts_at(d, f, d.tail(o[at]))[0];
    let rest = fixtures::close_from(p, 0, bp, &labels).expect("mirror closes");
    attach(
        d,
        p,
        at,
        run,
        NewCell {
            name: name.into(),
            kind: CellKind::Cone { relator: 0, basepoint: bp },
            labels: rest,
        },
    )
    .unwrap()
}

fn square_on(d: &Diagram, p: &CubicalPresentation, at: usize, run: usize, name: &str) -> Diagram {
    let o = d.outer();
    let labels: Vec<_> = (0..run).map(|k| d.label(o[(at + k) % o.len()])).collect();
    let rest = fixtures::complete_square(p.base(), 0, &labels).remove(0);
    attach(
        d,
        p,
        at,
        run,
        NewCell {
            name: name.into(),
            kind: CellKind::Square { label: 0 },
            labels: rest,
        },
    )
    .unwrap()
}

#[test]
fn single_square_is_a_disc() {
    let x = Arc::new(builders::square());
    let p = CubicalPresentation::new(x.clone(), vec![]).unwrap();
    let d = validate_diagram(&copy_of(&x, DiagramKind::Disc), &p).unwrap();
    assert_eq!(d.complexity(), Complexity { cone_cells: 0, squares: 1 });
    assert_eq!(d.outer().len(), 4);
}

#[test]
fn two_cones_make_a_sphere() {
    let p = commutator();
    let d = validate_diagram(&fixtures::cone_sphere("abAB", 0), &p).unwrap();
    assert_eq!(d.kind(), DiagramKind::Sphere);
    assert_eq!(d.complexity(), Complexity { cone_cells: 2, squares: 0 });
}

#[test]
fn mirrored_sphere_shrinks_to_a_point() {
    let p = commutator();
    let d = build(&fixtures::cone_sphere("abAB", 0), &p);
    let out = reduce(&d, &p).unwrap();
    let kinds: Vec<_> = out.trace.iter().map(|m| m.kind).collect();
    assert_eq!(kinds, [MoveKind::CombineCones, MoveKind::FillInessentialCone]);
    assert_eq!(out.diagram.complexity(), Complexity { cone_cells: 0, squares: 0 });
    assert_eq!(out.diagram.vertices().len(), 1);
    assert!(out.verdict.reduced);
}

#[test]
fn open_cone_boundary_is_rejected() {
    let p = commutator();
    let r = raw(
        DiagramKind::Disc,
        &["p", "q"],
        vec![edge("e0", "p", "q", "a+"), edge("e1", "q", "p", "a+")],
        vec![cone("c", &["e0+", "e1+"], "y0")],
    );
    assert!(matches!(validate_diagram(&r, &p), Err(Error::ConeBoundaryNotClosed(_))));
}

#[test]
fn torus_shaped_sphere_fails_euler() {
    let p = torus_free();
    let r = RawDiagram {
        squares: vec![RawDiagramSquare {
            id: "s".into(),
            boundary: vec!["a+".into(), "b+".into(), "a-".into(), "b-".into()],
            label: "t".into(),
        }],
        ..raw(
            DiagramKind::Sphere,
            &["o"],
            vec![edge("a", "o", "o", "a+"), edge("b", "o", "o", "b+")],
            vec![],
        )
    };
    assert!(matches!(
        validate_diagram(&r, &p),
        Err(Error::EulerMismatch { expected: 2, actual: 0 })
    ));
}

#[test]
fn wrong_square_labels_are_rejected() {
    let p = torus_free();
    let mut r = fixtures::grid(1, 1);
    r.edges[0].label = "b+".into();
    assert!(matches!(validate_diagram(&r, &p), Err(Error::LabelMismatch(_))));
}

#[test]
fn annulus_is_not_planar_disc() {
    let p = torus_free();
    let mut r = fixtures::grid(3, 3);
    r.squares.retain(|s| s.id != "q1_1");
    assert!(matches!(validate_diagram(&r, &p), Err(Error::NonPlanar(_))));
}

#[test]
fn raw_round_trip() {
    let p = torus_free();
    let d = build(&fixtures::grid(2, 3), &p);
    let again = validate_diagram(&d.to_raw(&p), &p).unwrap();
    assert_eq!(again.to_raw(&p), d.to_raw(&p));
    assert_eq!(fixtures::rotations(&again), fixtures::rotations(&d));
}

#[test]
fn dual_curves_of_strips() {
    let p = torus_free();
    for n in 1..5 {
        let d = build(&fixtures::grid(n, 1), &p);
        let curves = dual_curves(&d);
        assert_eq!(curves.len(), n + 1);
        let long = curves.iter().filter(|c| c.squares.len() == n).count();
        assert_eq!(long, if n == 1 { 2 } else { 1 });
        for f in 0..d.cells().len() {
            let through = curves.iter().filter(|c| c.squares.iter().any(|&(g, _)| g == f)).count();
            assert_eq!(through, 2);
        }
    }
    let path = raw(DiagramKind::Disc, &["u", "v"], vec![edge("e", "u", "v", "a+")], vec![]);
    assert!(dual_curves(&build(&path, &p)).is_empty());
}

#[test]
fn grid_is_reduced_and_fixed() {
    let p = torus_free();
    let d = build(&fixtures::grid(3, 2), &p);
    assert!(is_reduced(&d, &p).reduced);
    let out = reduce(&d, &p).unwrap();
    assert!(out.trace.is_empty());
    assert_eq!(out.diagram.to_raw(&p), d.to_raw(&p));
}

#[test]
fn canonical_bigon() {
    let p = torus_free();
    let d = build(&fixtures::grid(1, 1), &p);
    let d = square_on(&d, &p, 0, 2, "r");
    let found = detect_pathologies(&d, &p);
    assert!(found.iter().any(|x| matches!(x, Pathology::Bigon { .. })));
    assert!(found.iter().any(|x| matches!(x, Pathology::CancellablePair { .. })));
    let v = is_reduced(&d, &p);
    assert!(!v.reduced);
    assert_eq!(v.pathologies[0].condition(), 1);
    let out = reduce(&d, &p).unwrap();
    assert_eq!(out.trace.len(), 1);
    assert_eq!(out.trace[0].before.squares - out.trace[0].after.squares, 2);
    assert_eq!(out.diagram.boundary_labels(), d.boundary_labels());
    assert!(out.verdict.reduced);
}

#[test]
fn planted_lobe_on_grid() {
    let p = torus_free();
    let mut d = build(&fixtures::grid(3, 2), &p);
    let at = outer_pos(&d, "h1_0");
    d = square_on(&d, &p, at, 1, "r1");
    // mirror r1 across its two new sides
    let at = outer_pos(&d, "r1_e1");
    d = square_on(&d, &p, at, 2, "r2");
    assert!(!is_reduced(&d, &p).reduced);
    let out = reduce(&d, &p).unwrap();
    assert_eq!(out.diagram.boundary_labels(), d.boundary_labels());
    assert_eq!(out.diagram.complexity().squares, 6);
    assert!(out.verdict.reduced, "{:?}", out.verdict);
    // the zipped lobe leaves a hair
    assert!(detect_pathologies(&out.diagram, &p).iter().any(|x| matches!(x, Pathology::Spur { .. })));
}

#[test]
fn spur_is_reported_but_reduced() {
    let p = torus_free();
    let d = build(&fixtures::grid(2, 2), &p);
    let d = fixtures::add_spur(&d, &p, 3, d.label(d.outer()[3])).unwrap();
    assert!(detect_pathologies(&d, &p).iter().any(|x| matches!(x, Pathology::Spur { .. })));
    assert!(is_reduced(&d, &p).reduced);
}

#[test]
fn combinable_cones_merge() {
    let p = commutator();
    let d = build(&fixtures::cone_disc("abAB", 0), &p);
    let d = mirror_cone(&d, &p, 1, 2, "m");
    let v = is_reduced(&d, &p);
    assert!(v.pathologies.iter().any(|x| x.condition() == 6), "{:?}", v);
    let out = reduce(&d, &p).unwrap();
    assert_eq!(out.trace[0].kind, MoveKind::CombineCones);
    assert_eq!(out.diagram.complexity().cone_cells, 1);
    assert_eq!(out.diagram.boundary_labels(), d.boundary_labels());
    assert!(out.verdict.reduced);
}

#[test]
fn touching_cones_with_equal_lifts_are_combinable() {
    let p = commutator();
    let d = validate_diagram(&fixtures::cone_sphere("abAB", 0), &p).unwrap();
    assert!(detect_pathologies(&d, &p)
        .iter()
        .any(|x| matches!(x, Pathology::CombinableCones { .. })));
}

/// Edges spelling `word` from `from` to `to` through fresh vertices.
fn chain(stem: &str, from: &str, to: &str, word: &str, vs: &mut Vec<String>, es: &mut Vec<RawDiagramEdge>) -> Vec<String> {
    let n = word.len();
    let node = |i: usize| match i {
        0 => from.to_string(),
        i if i == n => to.to_string(),
        i => format!("{}{}", stem, i),
    };
    vs.extend((1..n).map(node));
    let mut darts = Vec::new();
    for (i, c) in word.chars().enumerate() {
        let sign = if c.is_ascii_lowercase() { '+' } else { '-' };
        let id = format!("{}_e{}", stem, i);
        es.push(edge(&id, &node(i), &node(i + 1), &format!("{}{}", c.to_ascii_lowercase(), sign)));
        darts.push(format!("{}+", id));
    }
    darts
}

/// A backtracking cone-cell C squeezed between K1 and K2, whose lifts
/// differ from those of C everywhere.
fn inessential_cone() -> RawDiagram {
    let mut r = raw(
        DiagramKind::Disc,
        &["P", "Q", "R", "Q2"],
        vec![
            edge("x", "P", "Q", "a+"),
            edge("y", "Q", "R", "b+"),
            edge("x2", "P", "Q2", "a+"),
            edge("y2", "Q2", "R", "b+"),
        ],
        vec![],
    );
    let k1 = chain("m", "P", "R", "CBAEBAD", &mut r.vertices, &mut r.edges);
    let k2 = chain("n", "R", "P", "eabcabd", &mut r.vertices, &mut r.edges);
    let with = |head: &[&str], tail: Vec<String>| head.iter().map(|s| s.to_string()).chain(tail).collect::<Vec<_>>();
    r.cone_cells = vec![
        cone("C", &["x+", "y+", "y2-", "x2-"], "y0"),
        RawConeCell { boundary: with(&["y-", "x-"], k1), ..cone("K1", &[], "y5") },
        RawConeCell { boundary: with(&["x2+", "y2+"], k2), ..cone("K2", &[], "y6") },
    ];
    r
}

fn ab_presentation() -> CubicalPresentation {
    CubicalPresentation::over_rose(&["a", "b", "c", "d", "e"], &["abcabdabe"]).unwrap()
}

#[test]
fn inessential_internal_cone_is_filled() {
    let p = ab_presentation();
    let d = build(&inessential_cone(), &p);
    assert!(d.is_internal(d.find_cell("C").unwrap()));
    let found = detect_pathologies(&d, &p);
    assert!(found.iter().any(|x| matches!(x, Pathology::InessentialCone { .. })), "{:?}", found);
    let out = reduce(&d, &p).unwrap();
    assert_eq!(out.trace[0].kind, MoveKind::FillInessentialCone, "{:?}", out.trace);
    for m in &out.trace {
        assert!(m.after < m.before);
    }
    assert_eq!(out.diagram.boundary_labels(), d.boundary_labels());
    assert!(out.verdict.reduced, "{:?}", out.verdict);
}

fn aa_cone() -> RawDiagram {
    raw(
        DiagramKind::Disc,
        &["P", "Q"],
        vec![edge("e0", "P", "Q", "a+"), edge("e1", "Q", "P", "a+")],
        vec![cone("C", &["e0+", "e1+"], "y0")],
    )
}

#[test]
fn square_is_absorbed() {
    let p = torus_cover();
    let d = build(&aa_cone(), &p);
    let d = square_on(&d, &p, outer_pos(&d, "e0"), 1, "s");
    let found = detect_pathologies(&d, &p);
    assert!(found.iter().any(|x| matches!(x, Pathology::AbsorbableSquare { .. })));
    let out = reduce(&d, &p).unwrap();
    assert_eq!(out.trace[0].kind, MoveKind::AbsorbSquare);
    assert_eq!(out.diagram.complexity(), Complexity { cone_cells: 1, squares: 0 });
    assert_eq!(out.diagram.boundary_labels(), d.boundary_labels());
    assert!(out.verdict.reduced);
}

#[test]
fn cornsquare_on_cone_is_seen() {
    let p = torus_cover();
    let d = build(&fixtures::cone_disc("abAB", 0), &p);
    // a square across the corner between e1 and e0
    let at = outer_pos(&d, "e1");
    assert_eq!(outer_pos(&d, "e0"), (at + 1) % 4);
    let d = square_on(&d, &p, at, 2, "s");
    assert!(detect_pathologies(&d, &p)
        .iter()
        .any(|x| matches!(x, Pathology::CornsquareOnCone { square, .. } if square == "s")));
    let out = reduce(&d, &p).unwrap();
    assert!(out.trace.iter().all(|m| m.after < m.before));
    assert_eq!(out.diagram.boundary_labels(), d.boundary_labels());
}

#[test]
fn puncture_and_recap() {
    let p = commutator();
    let s = build(&fixtures::cone_sphere("abAB", 0), &p);
    let d = puncture(&s, &p, "c1").unwrap();
    assert_eq!(d.kind(), DiagramKind::Disc);
    assert_eq!(d.complexity(), Complexity { cone_cells: 1, squares: 0 });
    let names: Vec<String> = d.boundary_labels().iter().map(|&l| p.base().oriented_name(l)).collect();
    assert_eq!(names, ["b+", "a+", "b-", "a-"]);
    let again = fixtures::cap(&d, &p, "c1", 0, 0).unwrap();
    assert_eq!(again.complexity(), s.complexity());
    assert!(matches!(puncture(&s, &p, "zz"), Err(Error::ConeCellNotFound(_))));
}

#[test]
fn cube_sphere_has_no_cone_cell() {
    let x = Arc::new(builders::cube3());
    let p = CubicalPresentation::new(x.clone(), vec![]).unwrap();
    let base = copy_of(&x, DiagramKind::Sphere);
    let s = (0..1u32 << base.squares.len())
        .find_map(|mask| {
            let mut r = base.clone();
            for (i, sq) in r.squares.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    sq.boundary = sq.boundary.iter().rev().map(|d| flip(d)).collect();
                }
            }
            validate_diagram(&r, &p).ok()
        })
        .expect("some orientation is a sphere");
    assert_eq!(s.complexity().squares, 6);
    assert!(matches!(puncture(&s, &p, "anything"), Err(Error::ConeCellNotFound(_))));
}

#[test]
fn capped_square_punctures_to_the_cap() {
    let p = torus_cover();
    let mut r = fixtures::grid(1, 1);
    r.kind = DiagramKind::Sphere;
    r.cone_cells.push(RawConeCell {
        id: "C".into(),
        boundary: ["v0_0+", "h0_1+", "v1_0-", "h0_0-"].map(String::from).to_vec(),
        relator: 0,
        basepoint: "y0".into(),
    });
    let s = build(&r, &p);
    let d = puncture(&s, &p, "C").unwrap();
    assert_eq!(d.complexity(), Complexity { cone_cells: 0, squares: 1 });
}

#[test]
fn features_of_small_diagrams() {
    let p = torus_free();
    let data = crate::presentation::PieceData::compute(&p).unwrap();
    let d = build(&fixtures::grid(2, 2), &p);
    let f = boundary_features(&d, &p, &data);
    assert_eq!(f.iter().filter(|x| x.kind == FeatureKind::Corner).count(), 4);

    let p = c9();
    let data = crate::presentation::PieceData::compute(&p).unwrap();
    let d = build(&fixtures::cone_disc(C9_WORD, 0), &p);
    let f = boundary_features(&d, &p, &data);
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].kind, FeatureKind::Shell);
    assert_eq!(f[0].innerpath.as_ref().unwrap().len(), 0);
}

/// Two cone-cells of the C(9) word sharing one piece, with distinct lifts.
fn ladder(p: &CubicalPresentation) -> Diagram {
    let d = build(&fixtures::cone_disc(C9_WORD, 0), p);
    for at in 0..d.outer().len() {
        let o = d.outer();
        let labels = vec![d.label(o[at]), d.label(o[(at + 1) % o.len()])];
        for (bp, rest) in fixtures::complete_cycle(p, 0, &labels) {
            let cell = NewCell {
                name: "c1".into(),
                kind: CellKind::Cone { relator: 0, basepoint: bp },
                labels: rest,
            };
            if let Ok(l) = attach(&d, p, at, 2, cell) {
                if is_reduced(&l, p).reduced {
                    return l;
                }
            }
        }
    }
    panic!("no ladder found");
}

#[test]
fn dichotomy_examples() {
    let p = c9();
    let d = build(&fixtures::cone_disc(C9_WORD, 0), &p);
    let v = check_dichotomy(&d, &p).unwrap();
    assert!(v.holds && v.single_cell);

    let l = ladder(&p);
    let v = check_dichotomy(&l, &p).unwrap();
    assert!(v.holds);
    let shells: Vec<_> = v.features.iter().filter(|f| f.kind == FeatureKind::Shell).collect();
    assert_eq!(shells.len(), 2);
    assert!(shells.iter().all(|s| s.innerpath.as_ref().unwrap().len() == 1));

    let p = torus_free();
    let v = check_dichotomy(&build(&fixtures::grid(2, 2), &p), &p).unwrap();
    assert!(v.holds);

    let p = commutator();
    let d = build(&fixtures::cone_disc("abAB", 0), &p);
    assert!(matches!(check_dichotomy(&d, &p), Err(Error::PreconditionNotCertified(9))));
}
