use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::builders;
use crate::complex::{CellRef, OrientedEdge};
use crate::maps::{check_minimal, CombinatorialMap};

fn commutator() -> CubicalPresentation {
    CubicalPresentation::over_rose(&["a", "b"], &["abAB"]).unwrap()
}

fn square_root() -> CubicalPresentation {
    CubicalPresentation::over_rose(&["a"], &["aa"]).unwrap()
}

#[test]
fn double_cover_has_no_cone_pieces() {
    assert!(cone_pieces(&square_root()).unwrap().is_empty());
}

#[test]
fn square_root_has_the_swap_as_a_symmetry() {
    let p = square_root();
    let sym = p.symmetries(0);
    assert_eq!(sym.len(), 4);
    assert_ne!(sym[&(0, 1)], sym[&(0, 0)]);
    assert_eq!(sym[&(0, 1)], sym[&(1, 0)]);
    let q = commutator();
    assert!(q.symmetries(0).iter().all(|(&(x, y), &k)| x == y && k == 0));
}

#[test]
fn commutator_cone_pieces_are_single_edges() {
    let pieces = cone_pieces(&commutator()).unwrap();
    assert_eq!(pieces.len(), 4);
    assert!(pieces.iter().all(|p| p.edge_count == 1 && p.kind == PieceKind::Cone));
}

#[test]
fn relators_with_disjoint_images_share_no_pieces() {
    let p = CubicalPresentation::over_rose(&["a", "b"], &["a", "b"]).unwrap();
    assert!(cone_pieces(&p).unwrap().is_empty());
}

#[test]
fn rose_base_has_no_wall_pieces() {
    let w = wall_pieces(&commutator()).unwrap();
    assert!(w.pieces.is_empty());
    assert!(w.indeterminate.is_empty());
}

#[test]
fn boundary_edge_of_a_grid_has_one_wall_piece() {
    let x = Arc::new(builders::grid(2, 2));
    let e = x.find(1, "e0_0x").unwrap();
    let (sub, keep) = x.restrict(&x.closure_of(CellRef::new(1, e)));
    let r = CombinatorialMap::from_cell_images(Arc::new(sub), x.clone(), &keep).unwrap();
    let p = CubicalPresentation::new(x.clone(), vec![r]).unwrap();
    let w = wall_pieces(&p).unwrap();
    assert_eq!(w.pieces.len(), 1);
    let piece = &w.pieces[0];
    assert_eq!(piece.edge_count, 1);
    let Partner::Hyperplane(h) = piece.partner else {
        panic!("wall piece without a hyperplane");
    };
    let hs = crate::complex::hyperplanes(&x);
    assert!(hs[h].is_dual(x.find(1, "e0_0y").unwrap()));
}

#[test]
fn piece_bound_examples() {
    let b = piece_bound(&cone_pieces(&commutator()).unwrap());
    assert_eq!(b.l, Bound::Finite(1));
    assert_eq!(piece_bound(&cone_pieces(&square_root()).unwrap()).l, Bound::Finite(0));
}

fn loop_inside_rose() -> CubicalPresentation {
    let rose = Arc::new(builders::rose(&["a", "b"]));
    let a = builders::word_map("a", rose.clone());
    let id = CombinatorialMap::identity(rose.clone());
    CubicalPresentation::new(rose, vec![a, id]).unwrap()
}

#[test]
fn essential_overlap_makes_the_bound_infinite() {
    let p = loop_inside_rose();
    let b = piece_bound(&cone_pieces(&p).unwrap());
    assert_eq!(b.l, Bound::Infinite);
    assert!(b.unbounded_witness.is_some());
    let v = check_cn(&p, 2).unwrap();
    assert_eq!(v.status, CnStatus::Refuted);
    assert_eq!(v.witness.unwrap().decomposition.len(), 1);
    assert_eq!(check_cn(&p, 1).unwrap().status, CnStatus::Certified);
}

fn girth(p: &CubicalPresentation, i: usize) -> Girth {
    let data = PieceData::compute(p).unwrap();
    match min_piece_girth(p, &data, i, None, DEFAULT_STEP_LIMIT).unwrap() {
        GirthOutcome::Determined { girth, .. } => girth,
        o => panic!("unexpected {:?}", o),
    }
}

#[test]
fn girth_examples() {
    assert_eq!(girth(&commutator(), 0), Girth::Exact(4));
    assert_eq!(girth(&square_root(), 0), Girth::Infinite);
    let rose = Arc::new(builders::rose(&["a"]));
    let p = Arc::new(builders::path(1));
    let f = CombinatorialMap::from_images(p, rose.clone(), vec![0, 0], vec![OrientedEdge::new(0, true)], vec![], vec![])
        .unwrap();
    let tree = CubicalPresentation::new(rose, vec![f]).unwrap();
    assert_eq!(girth(&tree, 0), Girth::Infinite);
}

#[test]
fn girth_with_a_short_budget_is_a_lower_bound() {
    let p = commutator();
    let data = PieceData::compute(&p).unwrap();
    match min_piece_girth(&p, &data, 0, Some(3), DEFAULT_STEP_LIMIT).unwrap() {
        GirthOutcome::Determined { girth, witness, .. } => {
            assert_eq!(girth, Girth::AtLeast(4));
            assert!(witness.is_none());
        }
        o => panic!("unexpected {:?}", o),
    }
}

#[test]
fn step_limit_gives_indeterminate() {
    let p = commutator();
    let data = PieceData::compute(&p).unwrap();
    assert!(matches!(
        min_piece_girth(&p, &data, 0, None, 1).unwrap(),
        GirthOutcome::Indeterminate { .. }
    ));
    let v = check_cn_with(&p, &data, 5, 1).unwrap();
    assert_eq!(v.status, CnStatus::Indeterminate);
}

#[test]
fn commutator_is_c4_not_c5() {
    let p = commutator();
    assert_eq!(check_cn(&p, 4).unwrap().status, CnStatus::Certified);
    let v = check_cn(&p, 5).unwrap();
    assert_eq!(v.status, CnStatus::Refuted);
    let w = v.witness.unwrap();
    assert_eq!(w.cycle.len(), 4);
    assert_eq!(w.decomposition.len(), 4);
    assert_eq!(v.budget_used, 4);
}

#[test]
fn vacuous_certificates() {
    assert_eq!(check_cn(&square_root(), 9).unwrap().status, CnStatus::Certified);
    let free = CubicalPresentation::over_rose(&["a", "b"], &[]).unwrap();
    assert_eq!(check_cn(&free, 100).unwrap().status, CnStatus::Certified);
}

#[test]
fn minimal_presentations_use_every_non_diagonal_component() {
    for w in ["abAB", "aabbb", "abaB", "aa", "abab"] {
        let p = CubicalPresentation::over_rose(&["a", "b"], &[w]).unwrap();
        let r = &p.relators()[0];
        let fp = crate::maps::fiber_product(r, r).unwrap();
        let non_diagonal = fp
            .components
            .iter()
            .filter(|c| !c.diagonal && fp.total.count(1) > 0)
            .filter(|c| c.cells.iter().any(|x| x.dim == 1))
            .count();
        let pieces = cone_pieces(&p).unwrap().len();
        if check_minimal(&p).unwrap()[0].minimal {
            assert_eq!(pieces, non_diagonal, "{}", w);
        } else {
            assert!(pieces < non_diagonal, "{}", w);
        }
    }
}

#[test]
fn relators_with_squares_are_rejected() {
    let t = Arc::new(builders::torus());
    let p = CubicalPresentation::new(t.clone(), vec![CombinatorialMap::identity(t)]).unwrap();
    assert_eq!(cone_pieces(&p).unwrap_err(), crate::Error::RelatorNotGraph(0));
}

#[test]
fn invalid_presentations() {
    let rose = Arc::new(builders::rose(&["a", "b"]));
    // "aA" backtracks, so its cycle does not immerse
    let bad = builders::word_map("aA", rose.clone());
    assert!(matches!(
        CubicalPresentation::new(rose, vec![bad]),
        Err(crate::Error::InvalidPresentation(_))
    ));
    assert!(matches!(
        CubicalPresentation::new(Arc::new(builders::missing_corner()), vec![]),
        Err(crate::Error::NotNpc(_))
    ));
}

// Classical small cancellation oracle on the cyclic word: a placement is a
// start offset read forwards or backwards; pieces are common prefixes of
// two placements that do not agree forever.

fn inv(c: char) -> char {
    if c.is_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

fn reading(w: &[char], start: usize, forward: bool, len: usize) -> Vec<char> {
    let m = w.len();
    (0..len)
        .map(|t| {
            if forward {
                w[(start + t) % m]
            } else {
                inv(w[(start + 2 * m - 1 - t % m) % m])
            }
        })
        .collect()
}

/// Longest piece starting at forward placement `i`.
fn longest_piece(w: &[char], i: usize) -> usize {
    let m = w.len();
    let mine = reading(w, i, true, 2 * m);
    let mut best = 0;
    for j in 0..m {
        for fwd in [true, false] {
            if fwd && j == i {
                continue;
            }
            let other = reading(w, j, fwd, 2 * m);
            let common = mine.iter().zip(&other).take_while(|(a, b)| a == b).count();
            if common < 2 * m {
                best = best.max(common);
            }
        }
    }
    best
}

fn oracle(w: &str) -> (usize, Option<usize>) {
    let w: Vec<char> = w.chars().collect();
    let m = w.len();
    let longest: Vec<usize> = (0..m).map(|i| longest_piece(&w, i)).collect();
    let l = longest.iter().copied().max().unwrap_or(0);
    let mut girth = None;
    for s in 0..m {
        let (mut pos, mut count) = (0, 0);
        while pos < m {
            let step = longest[(s + pos) % m].min(m - pos);
            if step == 0 {
                break;
            }
            pos += step;
            count += 1;
        }
        if pos == m {
            girth = Some(girth.map_or(count, |g: usize| g.min(count)));
        }
    }
    (l, girth)
}

fn cyclically_reduced(w: &[char]) -> bool {
    let m = w.len();
    m > 0 && (0..m).all(|i| w[(i + 1) % m] != inv(w[i]))
}

fn word_strategy() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'A', 'B', 'C']), 1..=12)
        .prop_filter("cyclically reduced", |w| cyclically_reduced(w))
        .prop_map(|w| w.into_iter().collect())
}

fn engine(word: &str) -> (Bound, Girth) {
    let p = CubicalPresentation::over_rose(&["a", "b", "c"], &[word]).unwrap();
    let data = PieceData::compute(&p).unwrap();
    let g = match min_piece_girth(&p, &data, 0, None, DEFAULT_STEP_LIMIT).unwrap() {
        GirthOutcome::Determined { girth, .. } => girth,
        o => panic!("unexpected {:?}", o),
    };
    (data.bound.l, g)
}

#[test]
fn oracle_agrees_on_fixed_words() {
    for w in ["abAB", "aabbAB", "abcABC", "aaaa", "abababAB", "aabAAB", "abcabcab"] {
        let (l, g) = oracle(w);
        let (el, eg) = engine(w);
        assert_eq!(el, Bound::Finite(l), "{}", w);
        assert_eq!(eg, g.map_or(Girth::Infinite, Girth::Exact), "{}", w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pieces_match_string_oracle(w in word_strategy()) {
        let (l, g) = oracle(&w);
        let (el, eg) = engine(&w);
        prop_assert_eq!(el, Bound::Finite(l));
        prop_assert_eq!(eg, g.map_or(Girth::Infinite, Girth::Exact));
    }

    #[test]
    fn certification_is_monotone(w in word_strategy(), n in 2usize..8) {
        let p = CubicalPresentation::over_rose(&["a", "b", "c"], &[&w]).unwrap();
        let data = PieceData::compute(&p).unwrap();
        let v = check_cn_with(&p, &data, n, DEFAULT_STEP_LIMIT).unwrap();
        if v.status == CnStatus::Certified {
            for k in 1..n {
                prop_assert_eq!(check_cn_with(&p, &data, k, DEFAULT_STEP_LIMIT).unwrap().status, CnStatus::Certified);
            }
        }
    }

    #[test]
    fn extra_pieces_never_certify_a_refutation(
        w in word_strategy(),
        n in 2usize..8,
        start in 0usize..12,
        len in 1usize..5,
    ) {
        let p = CubicalPresentation::over_rose(&["a", "b", "c"], &[&w]).unwrap();
        let mut data = PieceData::compute(&p).unwrap();
        let before = check_cn_with(&p, &data, n, DEFAULT_STEP_LIMIT).unwrap().status;
        let y = p.relators()[0].domain().clone();
        let m = y.count(1);
        let extra: Vec<OrientedEdge> = (0..len.min(m - 1).max(1))
            .map(|t| OrientedEdge::new((start + t) % m, true))
            .collect();
        // only genuine paths of the cycle graph are added
        let fits = extra.windows(2).all(|d| y.head(d[0]) == y.tail(d[1]));
        prop_assume!(fits);
        data.add_path(0, &extra);
        let after = check_cn_with(&p, &data, n, DEFAULT_STEP_LIMIT).unwrap().status;
        if before == CnStatus::Refuted {
            prop_assert_ne!(after, CnStatus::Certified);
        }
    }
}
