use super::*;
use crate::maps::check_minimal;
use crate::presentation::check_cn;

fn edge(m: u32) -> LabeledGraph {
    LabeledGraph::new(&["a", "b"], &[("a", "b", Label::Finite(m))]).unwrap()
}

fn triangle(m: u32) -> LabeledGraph {
    let l = Label::Finite(m);
    LabeledGraph::new(&["a", "b", "c"], &[("a", "b", l), ("b", "c", l), ("a", "c", l)]).unwrap()
}

#[test]
fn graph_validation() {
    let bad = |edges: &[(&str, &str, Label)]| LabeledGraph::new(&["a", "b"], edges).unwrap_err();
    assert!(matches!(bad(&[("a", "a", Label::Finite(3))]), Error::InvalidGraph(_)));
    assert!(matches!(
        bad(&[("a", "b", Label::Finite(3)), ("b", "a", Label::Finite(4))]),
        Error::InvalidGraph(_)
    ));
    assert!(matches!(bad(&[("a", "z", Label::Finite(3))]), Error::UnknownVertex(_)));
    let raw: RawLabeledGraph =
        serde_json::from_str(r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","m":1}]}"#).unwrap();
    assert!(matches!(LabeledGraph::from_raw(&raw), Err(Error::InvalidGraph(_))));
    let raw: RawLabeledGraph =
        serde_json::from_str(r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","m":"inf"}]}"#).unwrap();
    assert_eq!(LabeledGraph::from_raw(&raw).unwrap().edges()[0].m, Label::Infinite);
}

#[test]
fn roses() {
    let empty = LabeledGraph::new(&[], &[]).unwrap();
    let r = build_rose(&empty);
    assert_eq!((r.count(0), r.count(1)), (1, 0));
    assert_eq!(build_rose(&edge(3)).count(1), 2);
    assert_eq!(build_rose(&triangle(5)).count(1), 3);
}

#[test]
fn small_balls() {
    for m in 2..6 {
        let b = dihedral_ball(m, 1).unwrap();
        assert_eq!(b.vertex_count(), 5);
        assert_eq!(b.edges().len(), 4);
        assert_eq!(ball_girth(&b), None);
    }
    assert_eq!(ball_girth(&dihedral_ball(2, 2).unwrap()), Some(4));
    assert_eq!(ball_girth(&dihedral_ball(3, 3).unwrap()), Some(6));
    assert!(matches!(dihedral_ball(1, 2), Err(Error::InvalidDihedral(_))));
    assert!(matches!(dihedral_ball_with(5, 8, 1000), Err(Error::RadiusTooLargeForBudget(8))));
}

#[test]
fn interior_vertices_have_degree_four() {
    for m in 2..6 {
        let b = dihedral_ball(m, 4).unwrap();
        let deg = b.degrees();
        for v in 0..b.vertex_count() {
            if b.distance(v) < b.radius {
                assert_eq!(deg[v], 4, "m={} vertex {}", m, v);
            }
        }
        // two incoming and two outgoing labels inside
        let inner = (0..b.vertex_count()).find(|&v| b.distance(v) == 1).unwrap();
        let out = b.edges().iter().filter(|e| e.0 == inner).count();
        assert_eq!(out, 2);
    }
}

#[test]
fn girth_examples() {
    assert_eq!(girth_dihedral(5, 6).unwrap(), DihedralGirth::Found(10));
    assert_eq!(girth_dihedral(2, 3).unwrap(), DihedralGirth::Found(4));
    assert_eq!(girth_dihedral(6, 4).unwrap(), DihedralGirth::NotFoundWithin(4));
    for m in 2..=6u32 {
        assert_eq!(girth_dihedral(m, m as usize + 1).unwrap(), DihedralGirth::Found(2 * m as usize));
    }
}

#[test]
fn girth_does_not_grow_with_radius() {
    let mut last = None;
    for r in 3..7 {
        if let DihedralGirth::Found(g) = girth_dihedral(3, r).unwrap() {
            assert!(last.map_or(true, |l| g <= l));
            last = Some(g);
        }
    }
    assert_eq!(last, Some(6));
}

#[test]
fn profile_of_one_edge() {
    let p = artin_piece_profile(&edge(5), 5).unwrap();
    assert!(p.passed, "{:?}", p.violations);
    assert!(p.overlaps.is_empty());
    assert!(p.translations > 0);
    assert_eq!(p.cycle_run, 1);
    assert_eq!(p.wall_pieces, 0);
}

#[test]
fn profile_of_disjoint_edges() {
    let g = LabeledGraph::new(
        &["a", "b", "c", "d"],
        &[("a", "b", Label::Finite(3)), ("c", "d", Label::Finite(3))],
    )
    .unwrap();
    let p = artin_piece_profile(&g, 3).unwrap();
    assert!(p.passed);
    assert!(p.overlaps.is_empty());
}

#[test]
fn profile_of_a_path() {
    let g = LabeledGraph::new(
        &["a", "b", "c"],
        &[("a", "b", Label::Finite(5)), ("b", "c", Label::Finite(5))],
    )
    .unwrap();
    let p = artin_piece_profile(&g, 5).unwrap();
    assert!(p.passed, "{:?}", p.violations);
    assert!(!p.overlaps.is_empty());
    assert!(p.overlaps.iter().all(|o| o.letters == ["b"]));
}

#[test]
fn certification_phase_boundary() {
    let v = certify_artin_cn(&edge(5), 9).unwrap();
    assert_eq!((v.status, v.certified_max_n), (CnStatus::Certified, Some(10)));
    assert_eq!(certify_artin_cn(&edge(5), 10).unwrap().status, CnStatus::Certified);
    assert_eq!(certify_artin_cn(&edge(5), 11).unwrap().status, CnStatus::Refuted);
    assert_eq!(certify_artin_cn(&edge(4), 8).unwrap().status, CnStatus::Certified);
    let v = certify_artin_cn(&edge(4), 9).unwrap();
    assert_eq!(v.status, CnStatus::Refuted);
    let w = v.witness.unwrap();
    assert_eq!(w.cycle.len(), 8);
    assert_eq!(w.decomposition.len(), 8);
    assert_eq!(certify_artin_cn(&triangle(5), 9).unwrap().status, CnStatus::Certified);
}

#[test]
fn infinite_labels_certify_everything() {
    let g = LabeledGraph::new(&["a", "b"], &[("a", "b", Label::Infinite)]).unwrap();
    for n in [2, 9, 100] {
        let v = certify_artin_cn(&g, n).unwrap();
        assert_eq!(v.status, CnStatus::Certified);
        assert_eq!(v.certified_max_n, None);
    }
}

#[test]
fn mixed_labels_use_the_smallest() {
    let g = LabeledGraph::new(
        &["a", "b", "c"],
        &[("a", "b", Label::Finite(5)), ("b", "c", Label::Finite(3)), ("a", "c", Label::Infinite)],
    )
    .unwrap();
    let v = certify_artin_cn(&g, 7).unwrap();
    assert_eq!((v.status, v.certified_max_n), (CnStatus::Refuted, Some(6)));
}

#[test]
fn agrees_with_the_cycle_presentation_at_m_two() {
    // the commutator cycle has only single-letter pieces
    let p = CubicalPresentation::over_rose(&["a", "b"], &["abAB"]).unwrap();
    for n in 3..7 {
        let engine = check_cn(&p, n).unwrap().status;
        let artin = certify_artin_cn(&edge(2), n).unwrap().status;
        assert_eq!(engine, artin, "n = {}", n);
    }
}

#[test]
fn balls_are_minimal() {
    let p = artin_presentation(&edge(3), 2).unwrap();
    assert!(check_minimal(&p).unwrap().iter().all(|v| v.minimal));
}
