use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::builders;
use crate::presentation::CubicalPresentation;

fn raw_map(v: &[(&str, &str)], e: &[(&str, &str)]) -> RawMap {
    RawMap {
        vertex_map: v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        edge_map: e.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        ..Default::default()
    }
}

fn c2() -> CombinatorialMap {
    builders::word_map("aa", Arc::new(builders::rose(&["a"])))
}

#[test]
fn identity_on_torus_is_valid() {
    let t = Arc::new(builders::torus());
    let raw = CombinatorialMap::identity(t.clone()).to_raw();
    let f = validate_map(&raw, t.clone(), t).unwrap();
    assert!(f.check_local_isometry().holds());
}

#[test]
fn double_cover_of_a_loop_validates() {
    let rose = Arc::new(builders::rose(&["a"]));
    let cyc = Arc::new(builders::word_cycle("aa"));
    let raw = raw_map(&[("y0", "o"), ("y1", "o")], &[("r0", "a+"), ("r1", "a")]);
    let f = validate_map(&raw, cyc, rose).unwrap();
    assert!(f.check_local_isometry().holds());
}

#[test]
fn edge_to_vertex_is_rejected() {
    let rose = Arc::new(builders::rose(&["a"]));
    let p = Arc::new(builders::path(1));
    let raw = raw_map(&[("t0", "o"), ("t1", "o")], &[("f0", "o")]);
    assert!(matches!(
        validate_map(&raw, p.clone(), rose.clone()),
        Err(Error::BoundaryMismatch(_))
    ));
    let partial = raw_map(&[("t0", "o")], &[("f0", "a+")]);
    assert_eq!(
        validate_map(&partial, p, rose).unwrap_err(),
        Error::MissingAssignment("t1".into())
    );
}

#[test]
fn boundary_mismatch_is_named() {
    let grid = Arc::new(builders::grid(2, 1));
    let p = Arc::new(builders::path(1));
    let raw = raw_map(&[("t0", "v0_0"), ("t1", "v1_0")], &[("f0", "e0_0y+")]);
    assert_eq!(
        validate_map(&raw, p, grid).unwrap_err(),
        Error::BoundaryMismatch("f0".into())
    );
}

#[test]
fn folding_figure_eight_is_not_injective() {
    let a = Arc::new(builders::rose(&["a"]));
    let ab = Arc::new(builders::rose(&["a", "b"]));
    let raw = raw_map(&[("o", "o")], &[("a", "a+"), ("b", "a+")]);
    let f = validate_map(&raw, ab, a).unwrap();
    match f.check_local_isometry() {
        LocalIsometryVerdict::Fails(w) => assert_eq!(w.reason, FailureReason::NodesIdentified),
        v => panic!("unexpected {:?}", v),
    }
}

#[test]
fn loop_into_torus_is_a_local_isometry() {
    let t = Arc::new(builders::torus());
    let a = Arc::new(builders::rose(&["a"]));
    let raw = raw_map(&[("o", "o")], &[("a", "a+")]);
    let f = validate_map(&raw, a, t).unwrap();
    assert!(f.check_local_isometry().holds());
}

#[test]
fn two_adjacent_edges_of_a_square_are_not_full() {
    let sq = Arc::new(builders::square());
    let p = Arc::new(builders::path(2));
    let raw = raw_map(
        &[("t0", "v1_0"), ("t1", "v0_0"), ("t2", "v0_1")],
        &[("f0", "e0_0x-"), ("f1", "e0_0y+")],
    );
    let f = validate_map(&raw, p, sq).unwrap();
    match f.check_local_isometry() {
        LocalIsometryVerdict::Fails(w) => {
            assert_eq!(w.reason, FailureReason::NotFull);
            assert_eq!(w.vertex, "t1");
        }
        v => panic!("unexpected {:?}", v),
    }
}

#[test]
fn square_datum_is_inferred_and_checked() {
    let sq = Arc::new(builders::square());
    let mut raw = CombinatorialMap::identity(sq.clone()).to_raw();
    validate_map(&raw, sq.clone(), sq.clone()).unwrap();
    raw.square_map.insert(
        "s0_0xy".into(),
        RawSquareImage::Full {
            square: "s0_0xy".into(),
            rotation: 1,
            reflected: false,
        },
    );
    assert_eq!(
        validate_map(&raw, sq.clone(), sq.clone()).unwrap_err(),
        Error::BoundaryMismatch("s0_0xy".into())
    );
    raw.square_map
        .insert("s0_0xy".into(), RawSquareImage::Name("s0_0xy".into()));
    validate_map(&raw, sq.clone(), sq).unwrap();
}

#[test]
fn reflection_of_a_square() {
    // swap x and y: a reflection across the diagonal
    let sq = Arc::new(builders::square());
    let raw = RawMap {
        vertex_map: [("v0_0", "v0_0"), ("v1_0", "v0_1"), ("v0_1", "v1_0"), ("v1_1", "v1_1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        edge_map: [("e0_0x", "e0_0y+"), ("e0_0y", "e0_0x+"), ("e1_0y", "e0_1x+"), ("e0_1x", "e1_0y+")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        square_map: [("s0_0xy".to_string(), RawSquareImage::Name("s0_0xy".into()))]
            .into_iter()
            .collect(),
        ..Default::default()
    };
    let f = validate_map(&raw, sq.clone(), sq).unwrap();
    assert!(f.square(0).reflected);
    assert!(f.check_local_isometry().holds());
}

#[test]
fn double_cover_self_product_splits_in_two() {
    let f = c2();
    let fp = fiber_product(&f, &f).unwrap();
    assert_eq!(fp.total.count(0), 4);
    assert_eq!(fp.total.count(1), 4);
    assert_eq!(fp.components.len(), 2);
    assert!(fp.components.iter().all(|c| c.iso_left && c.iso_right));
    assert_eq!(fp.components.iter().filter(|c| c.diagonal).count(), 1);
}

#[test]
fn identity_self_product_is_the_diagonal() {
    let t = Arc::new(builders::torus());
    let id = CombinatorialMap::identity(t.clone());
    let fp = fiber_product(&id, &id).unwrap();
    assert_eq!(fp.components.len(), 1);
    assert!(fp.components[0].diagonal && fp.components[0].iso_left && fp.components[0].iso_right);
    assert_eq!(fp.total.count(2), 1);
}

#[test]
fn disjoint_inclusions_have_empty_product() {
    let x = Arc::new(builders::path(3));
    let sub = |e: usize| {
        let cells = x.closure_of(crate::complex::CellRef::new(1, e));
        let (s, keep) = x.restrict(&cells);
        CombinatorialMap::from_cell_images(Arc::new(s), x.clone(), &keep).unwrap()
    };
    let fp = fiber_product(&sub(0), &sub(2)).unwrap();
    assert_eq!(fp.total.count(0), 0);
    assert!(fp.components.is_empty());
}

#[test]
fn finite_index_examples() {
    assert_eq!(finite_index(&c2()).unwrap(), Index::Finite(2));
    let rose = Arc::new(builders::rose(&["a"]));
    let p = Arc::new(builders::path(1));
    let raw = raw_map(&[("t0", "o"), ("t1", "o")], &[("f0", "a+")]);
    let f = validate_map(&raw, p, rose).unwrap();
    assert_eq!(finite_index(&f).unwrap(), Index::Infinite);
    let ab = Arc::new(builders::rose(&["a", "b"]));
    let cover = builders::permutation_cover(&[vec![1, 0], vec![0, 1]], ab);
    assert_eq!(finite_index(&cover).unwrap(), Index::Finite(2));
}

#[test]
fn finite_index_errors() {
    let t = Arc::new(builders::torus());
    assert_eq!(
        finite_index(&CombinatorialMap::identity(t)).unwrap_err(),
        Error::NotAGraph
    );
    let a = Arc::new(builders::rose(&["a"]));
    let ab = Arc::new(builders::rose(&["a", "b"]));
    let raw = raw_map(&[("o", "o")], &[("a", "a+"), ("b", "a+")]);
    let f = validate_map(&raw, ab, a).unwrap();
    assert_eq!(finite_index(&f).unwrap_err(), Error::NotImmersed("o".into()));
}

#[test]
fn a_word_that_is_not_cyclically_reduced_has_infinite_index() {
    // aab A: the core is the loop a, which does not cover rose(a, b)
    let ab = Arc::new(builders::rose(&["a", "b"]));
    let mut raw = crate::complex::RawComplex::new(1);
    raw.vertex("p").vertex("q").edge("x", "p", "p").edge("y", "p", "q");
    let k = Arc::new(raw.validate().unwrap());
    let f = validate_map(&raw_map(&[("p", "o"), ("q", "o")], &[("x", "a+"), ("y", "b+")]), k, ab).unwrap();
    assert_eq!(finite_index(&f).unwrap(), Index::Infinite);
    let (v, e) = core_cells(f.domain());
    assert_eq!((v.len(), e.len()), (1, 1));
}

#[test]
fn symmetric_and_minimal_examples() {
    let p = CubicalPresentation::over_rose(&["a"], &["aa"]).unwrap();
    assert!(check_symmetric(&p).unwrap()[0].holds);
    let m = &check_minimal(&p).unwrap()[0];
    assert!(!m.minimal);
    assert_eq!(m.witness.as_ref().unwrap().len(), 2);

    let q = CubicalPresentation::over_rose(&["a", "b"], &["abAB"]).unwrap();
    let s = &check_symmetric(&q).unwrap()[0];
    assert!(s.holds);
    assert_eq!(s.scope, "PARTIAL");
    assert!(check_minimal(&q).unwrap()[0].minimal);

    let free = CubicalPresentation::over_rose(&["a"], &[]).unwrap();
    assert!(check_symmetric(&free).unwrap().is_empty());
    assert!(check_minimal(&free).unwrap().is_empty());
}

#[test]
fn relators_with_squares_are_rejected() {
    let t = Arc::new(builders::torus());
    let p = CubicalPresentation::new(t.clone(), vec![CombinatorialMap::identity(t)]).unwrap();
    assert_eq!(check_symmetric(&p).unwrap_err(), Error::RelatorNotGraph(0));
    assert_eq!(check_minimal(&p).unwrap_err(), Error::RelatorNotGraph(0));
}

fn counting_identity(f: &CombinatorialMap, g: &CombinatorialMap, fp: &FiberProduct) {
    let x = f.codomain();
    for d in 0..3 {
        let expected: usize = (0..x.count(d))
            .map(|c| {
                let cell = crate::complex::CellRef::new(d, c);
                let pre = |m: &CombinatorialMap| {
                    (0..m.domain().count(d))
                        .filter(|&i| m.image(crate::complex::CellRef::new(d, i)) == cell)
                        .count()
                };
                pre(f) * pre(g)
            })
            .sum();
        assert_eq!(fp.total.count(d), expected, "dimension {}", d);
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn cover_strategy() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..6).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn covers_are_local_isometries((a, b) in cover_strategy(), (c, d) in cover_strategy()) {
        let rose = Arc::new(builders::rose(&["a", "b"]));
        let f = builders::permutation_cover(&[a, b], rose.clone());
        let g = builders::permutation_cover(&[c, d], rose);
        prop_assert!(f.check_local_isometry().holds());
        let fg = fiber_product(&f, &g).unwrap();
        counting_identity(&f, &g, &fg);
        let gf = fiber_product(&g, &f).unwrap();
        prop_assert_eq!(fg.components.len(), gf.components.len());
        let mut sizes_fg: Vec<usize> = fg.components.iter().map(|c| c.cells.len()).collect();
        let mut sizes_gf: Vec<usize> = gf.components.iter().map(|c| c.cells.len()).collect();
        sizes_fg.sort_unstable();
        sizes_gf.sort_unstable();
        prop_assert_eq!(sizes_fg, sizes_gf);
    }

    #[test]
    fn cyclic_covers_have_regular_self_products(d in 1usize..7) {
        let rose = Arc::new(builders::rose(&["a", "b"]));
        let shift: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
        let id: Vec<usize> = (0..d).collect();
        let f = builders::permutation_cover(&[shift, id], rose);
        let fp = fiber_product(&f, &f).unwrap();
        prop_assert_eq!(fp.total.count(0), d * d);
        prop_assert_eq!(fp.components.len(), d);
        prop_assert!(fp.components.iter().all(|c| c.iso_left && c.iso_right));
        prop_assert_eq!(finite_index(&f).unwrap(), Index::Finite(d));
    }
}
