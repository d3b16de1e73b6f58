//! Reduced-word recovery on the permutahedron: maximal chains are reduced
//! words, moves are commutations and braids, and the move graph is
//! connected.

use std::collections::HashSet;

use biplab_core::bcfw::bridge_sequence;
use biplab_core::moves::{move_graph, move_label, vertex_connectivity, MoveClass};
use biplab_core::skeleton::build_bip_poset;
use biplab_core::symgroup::{reduced_words, Permutation};

#[test]
fn s4_permutahedron_chains_are_reduced_words() {
    let w0 = Permutation::longest(4);
    let poset = build_bip_poset(&w0).unwrap();
    let graph = move_graph(&poset, poset.source(), poset.sink(), 1000).unwrap();
    assert_eq!(graph.len(), 16);

    // Each chain reads off a word in simple reflections; the word set must
    // be exactly the reduced words of the longest element.
    let mut words: HashSet<Vec<usize>> = HashSet::new();
    for chain in graph.chains() {
        let seq = bridge_sequence(&poset, chain).unwrap();
        let word: Vec<usize> = seq
            .bridges()
            .iter()
            .map(|t| {
                assert!(t.is_simple(), "weak-order cover must be a simple reflection");
                t.i
            })
            .collect();
        words.insert(word);
    }
    let expected: HashSet<Vec<usize>> = reduced_words(&w0).into_iter().collect();
    assert_eq!(words, expected);

    // Moves are commutations (squares) or braids (hexagons) only.
    assert!(graph
        .edges()
        .iter()
        .all(|&(_, _, size)| size == 4 || size == 6));
    assert!(graph.is_connected());
    let kappa = vertex_connectivity(&graph).unwrap();
    assert!(kappa >= 2, "kappa = {kappa}");
}

#[test]
fn move_labels_on_permutahedron() {
    let w0 = Permutation::longest(3);
    let poset = build_bip_poset(&w0).unwrap();
    let graph = move_graph(&poset, poset.source(), poset.sink(), 100).unwrap();
    assert_eq!(graph.len(), 2);
    let chain = &graph.chains()[0];
    let moves = biplab_core::moves::detect_moves(&poset, chain).unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(move_label(&moves[0]), MoveClass::Braid);
}

#[test]
fn q3412_two_faces_are_squares_and_hexagons() {
    // The skeleton is graded by Coxeter length, so every polygon is even;
    // the full interval's flips go across squares and hexagons.
    let poset = build_bip_poset(&"3412".parse::<Permutation>().unwrap()).unwrap();
    let graph = move_graph(&poset, poset.source(), poset.sink(), 1000).unwrap();
    assert!(graph.is_connected());
    let histogram = graph.polygon_histogram();
    assert_eq!(histogram, vec![(4, 8), (6, 2)]);
}

#[test]
fn pentagon_polytope_flip_labels_as_polygon_5() {
    use biplab_core::exactgeom::{rat, Rat, RationalPolytope};
    use biplab_core::moves::{classify_2face, detect_moves};
    use biplab_core::skeleton::build_generic_poset;

    let pentagon = RationalPolytope::new(vec![
        ("a".into(), vec![rat(0), rat(0)]),
        ("b".into(), vec![rat(2), rat(0)]),
        ("c".into(), vec![rat(3), rat(2)]),
        ("d".into(), vec![rat(1), rat(4)]),
        ("e".into(), vec![rat(-1), rat(2)]),
    ])
    .unwrap();
    let cost = vec![rat(1), Rat::new(1.into(), 3.into())];
    let poset = build_generic_poset(pentagon, cost).unwrap();
    let all: Vec<usize> = (0..poset.len()).collect();
    assert_eq!(classify_2face(&poset, &all).unwrap(), 5);
    // Two boundary chains of different lengths, one pentagonal flip.
    let graph = move_graph(&poset, poset.source(), poset.sink(), 100).unwrap();
    assert_eq!(graph.len(), 2);
    let lengths: Vec<usize> = graph.chains().iter().map(|c| c.len()).collect();
    assert_eq!(lengths, vec![4, 3]);
    let moves = detect_moves(&poset, &graph.chains()[0]).unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(move_label(&moves[0]), MoveClass::Polygon(5));
}
