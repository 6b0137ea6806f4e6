use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::corpus;

fn one_trivalent_h() -> Graph {
    // two vertices joined by an internal edge, four open half-edges
    Graph::build()
        .edge("i", "u", "v")
        .half_open_edge("a1", "u")
        .half_open_edge("a2", "u")
        .half_open_edge("b1", "v")
        .half_open_edge("b2", "v")
        .finish()
        .unwrap()
}

fn betti(g: &Graph) -> usize {
    g.edge_count() + g.components().len() - g.vertex_count()
}

#[test]
fn parse_theta() {
    let g = corpus::theta();
    assert_eq!(g.vertex_count(), 2);
    assert_eq!(g.edge_count(), 3);
    assert_eq!(g.loop_count(), 0);
    assert_eq!(g.name(), Some("theta"));
}

#[test]
fn parse_dumbbell_flags() {
    let g = corpus::dumbbell();
    assert_eq!(g.loop_count(), 2);
    assert_eq!(g.flag_count(), 4);
}

#[test]
fn flag_identity_on_corpus() {
    for g in corpus::all() {
        let (e, v, l, f) = (g.edge_count(), g.vertex_count(), g.loop_count(), g.flag_count());
        assert_eq!(2 * e, 3 * v, "{:?}", g.name());
        assert_eq!(2 * e - l, f, "{:?}", g.name());
        assert_eq!(3 * v - l, f, "{:?}", g.name());
    }
}

#[test]
fn parse_rejects_four_valent_closed() {
    let text = "edge e1 u v\nedge e2 u v\nedge e3 u v\nedge e4 u v\n";
    match parse_graph(text) {
        Err(TopologyError::NonTrivalent { valence: 4, .. }) => {}
        other => panic!("expected valence error, got {other:?}"),
    }
}

#[test]
fn parse_rejects_dangling_vertex() {
    let text = "vertex u\nvertex v\nedge e1 u w\nedge e2 u v\nedge e3 u v\n";
    match parse_graph(text) {
        Err(TopologyError::DanglingVertex { line: 3, vertex }) => {
            assert_eq!(vertex.as_str(), "w");
        }
        other => panic!("expected dangling vertex error, got {other:?}"),
    }
}

#[test]
fn parse_reports_line_and_column() {
    match parse_graph("vertex u\n  frob x\n") {
        Err(TopologyError::Parse { line: 2, column: 3, .. }) => {}
        other => panic!("expected syntax error at 2:3, got {other:?}"),
    }
}

#[test]
fn parse_serialize_round_trip() {
    for text in [corpus::THETA, corpus::DUMBBELL, corpus::K4, corpus::TWOLOOP] {
        let g = parse_graph(text).unwrap();
        let emitted = serialize_graph(&g);
        assert_eq!(parse_graph(&emitted).unwrap(), g);
        // canonical form is a fixed point
        assert_eq!(serialize_graph(&parse_graph(&emitted).unwrap()), emitted);
    }
    let tristar = corpus::tristar();
    assert_eq!(parse_graph(&serialize_graph(&tristar)).unwrap(), tristar);
}

#[test]
fn genus_of_corpus() {
    assert_eq!(corpus::theta().genus().unwrap(), 2);
    assert_eq!(corpus::dumbbell().genus().unwrap(), 2);
    assert_eq!(corpus::k4().genus().unwrap(), 3);
    assert_eq!(corpus::twoloop().genus().unwrap(), 3);
    for g in corpus::all() {
        let genus = g.genus().unwrap();
        assert_eq!(g.vertex_count(), 2 * genus - 2);
        assert_eq!(g.edge_count(), 3 * genus - 3);
    }
}

#[test]
fn genus_rejects_open_and_disconnected() {
    assert_eq!(corpus::tristar().genus(), Err(TopologyError::OpenEnds));

    let two = Graph::build()
        .edge("a1", "u", "v")
        .edge("a2", "u", "v")
        .edge("a3", "u", "v")
        .edge("b1", "x", "y")
        .edge("b2", "x", "y")
        .edge("b3", "x", "y")
        .finish()
        .unwrap();
    assert_eq!(two.genus(), Err(TopologyError::Disconnected));
    let (per, total) = two.component_genera().unwrap();
    assert_eq!(per, vec![2, 2]);
    assert_eq!(total, 4);
}

#[test]
fn orientation_valid_on_corpus() {
    for g in corpus::all() {
        let o = g.find_orientation().unwrap();
        assert!(o.is_valid_for(&g), "{:?}", g.name());
        for v in g.vertices() {
            assert!(o.vertex_has_in_and_out(&g, v));
        }
    }
}

#[test]
fn orientation_valid_on_surgery_output() {
    let theta = corpus::theta();
    let sum = connected_sum(&theta, &"e1".into(), &theta, &"e2".into()).unwrap();
    let o = sum.graph.find_orientation().unwrap();
    assert!(o.is_valid_for(&sum.graph));
}

#[test]
fn double_tristar_is_theta() {
    let doubled = double(&corpus::tristar()).unwrap();
    assert_eq!(doubled.genus().unwrap(), 2);
    assert!(doubled.is_isomorphic_to(&corpus::theta()));
}

#[test]
fn double_requires_open_ends() {
    assert_eq!(double(&corpus::theta()), Err(TopologyError::NoOpenEnds));
}

#[test]
fn double_rejects_vertexless_edge() {
    let bare = Graph::build().edge_ends("e", [End::Open, End::Open]).finish().unwrap();
    assert!(matches!(double(&bare), Err(TopologyError::InvalidSurgery(_))));
}

#[test]
fn double_one_trivalent_h() {
    let doubled = double(&one_trivalent_h()).unwrap();
    assert_eq!(doubled.vertex_count(), 4);
    assert_eq!(doubled.edge_count(), 6);
    assert_eq!(doubled.genus().unwrap(), 3);
}

#[test]
fn connected_sum_theta_theta() {
    let theta = corpus::theta();
    let sum = connected_sum(&theta, &"e1".into(), &theta, &"e1".into()).unwrap();
    assert_eq!(sum.graph.vertex_count(), 6);
    assert_eq!(sum.graph.edge_count(), 9);
    assert_eq!(sum.graph.genus().unwrap(), 4);
    assert!(sum.graph.contains_edge(&sum.bridge));
    for h in &sum.halves {
        assert!(sum.graph.contains_edge(h));
    }
}

#[test]
fn connected_sum_dumbbells_along_bridges() {
    let db = corpus::dumbbell();
    let sum = connected_sum(&db, &"bridge".into(), &db, &"bridge".into()).unwrap();
    assert_eq!(sum.graph.genus().unwrap(), 4);
}

#[test]
fn connected_sum_genus_additivity() {
    let pairs = [
        (corpus::theta(), EdgeId::from("e2"), corpus::k4(), EdgeId::from("bc")),
        (corpus::dumbbell(), EdgeId::from("loop1"), corpus::twoloop(), EdgeId::from("ld")),
        (corpus::k4(), EdgeId::from("ad"), corpus::k4(), EdgeId::from("cd")),
    ];
    for (g1, e1, g2, e2) in pairs {
        let expected = g1.genus().unwrap() + g2.genus().unwrap();
        let sum = connected_sum(&g1, &e1, &g2, &e2).unwrap();
        assert_eq!(sum.graph.genus().unwrap(), expected);
    }
}

#[test]
fn connected_sum_unknown_edge() {
    let theta = corpus::theta();
    assert!(matches!(
        connected_sum(&theta, &"nope".into(), &theta, &"e1".into()),
        Err(TopologyError::UnknownEdge(e)) if e.as_str() == "nope"
    ));
}

#[test]
fn excise_one_theta_vertex_leaves_tristar() {
    let parts = excise_vertices(&corpus::theta(), &BTreeSet::from(["v".into()]));
    assert_eq!(parts.len(), 1);
    assert!(parts[0].is_isomorphic_to(&corpus::tristar()));
}

#[test]
fn excise_nothing_is_identity() {
    let g = corpus::dumbbell();
    let parts = excise_vertices(&g, &BTreeSet::new());
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].edge_count(), g.edge_count());
    assert_eq!(parts[0].vertex_count(), g.vertex_count());
}

#[test]
fn excise_everything_is_empty() {
    let parts = excise_vertices(&corpus::dumbbell(), &BTreeSet::from(["u".into(), "v".into()]));
    assert!(parts.is_empty());
}

#[test]
fn spanning_tree_theta() {
    let m = corpus::theta().spanning_tree().unwrap();
    assert_eq!(m.tree().iter().collect::<Vec<_>>(), vec![&EdgeId::from("e1")]);
    assert_eq!(m.complement(), &[EdgeId::from("e2"), EdgeId::from("e3")]);
    m.validate(&corpus::theta()).unwrap();
}

#[test]
fn spanning_tree_dumbbell_excludes_loops() {
    let m = corpus::dumbbell().spanning_tree().unwrap();
    assert!(m.in_tree(&"bridge".into()));
    assert_eq!(m.complement(), &[EdgeId::from("loop1"), EdgeId::from("loop2")]);
}

#[test]
fn spanning_tree_genus_three() {
    for g in [corpus::k4(), corpus::twoloop()] {
        let m = g.spanning_tree().unwrap();
        assert_eq!(m.tree().len(), 3);
        assert_eq!(m.complement().len(), 3);
        m.validate(&g).unwrap();
    }
}

#[test]
fn reduce_four_valent_caterpillar() {
    // two vertices joined by four parallel edges (both 4-valent)
    let g = Graph::build()
        .edge("e1", "u", "v")
        .edge("e2", "u", "v")
        .edge("e3", "u", "v")
        .edge("e4", "u", "v")
        .finish()
        .unwrap();
    let red = reduce_multivalent(&g, &BTreeMap::new()).unwrap();
    assert!(red.graph.is_trivalent());
    assert_eq!(red.graph.vertex_count(), 4);
    assert_eq!(red.internal_edges.len(), 2);
    for edges in red.internal_edges.values() {
        assert_eq!(edges.len(), 1);
    }
    assert_eq!(betti(&g), betti(&red.graph));
}

#[test]
fn reduce_trivalent_is_identity() {
    let g = corpus::theta();
    let red = reduce_multivalent(&g, &BTreeMap::new()).unwrap();
    assert_eq!(red.graph, g);
    assert!(red.internal_edges.is_empty());
}

#[test]
fn reduce_five_valent() {
    let g = Graph::build()
        .edge("e1", "u", "v")
        .edge("e2", "u", "v")
        .edge("e3", "u", "v")
        .edge("e4", "u", "v")
        .edge("e5", "u", "v")
        .finish()
        .unwrap();
    let red = reduce_multivalent(&g, &BTreeMap::new()).unwrap();
    assert!(red.graph.is_trivalent());
    for edges in red.internal_edges.values() {
        assert_eq!(edges.len(), 2, "n - 3 internal edges for n = 5");
    }
    assert_eq!(betti(&g), betti(&red.graph));
}

#[test]
fn reduce_respects_explicit_shape() {
    let g = Graph::build()
        .edge("e1", "u", "v")
        .edge("e2", "u", "v")
        .edge("e3", "u", "v")
        .edge("e4", "u", "v")
        .finish()
        .unwrap();
    let balanced = TreeShape::node(
        TreeShape::node(TreeShape::Leaf, TreeShape::Leaf),
        TreeShape::node(TreeShape::Leaf, TreeShape::Leaf),
    );
    let choices = BTreeMap::from([("u".into(), balanced)]);
    let red = reduce_multivalent(&g, &choices).unwrap();
    assert!(red.graph.is_trivalent());
    assert_eq!(betti(&g), betti(&red.graph));
}

#[test]
fn reduce_rejects_leaf_mismatch() {
    let g = Graph::build()
        .edge("e1", "u", "v")
        .edge("e2", "u", "v")
        .edge("e3", "u", "v")
        .edge("e4", "u", "v")
        .finish()
        .unwrap();
    let choices = BTreeMap::from([("u".into(), TreeShape::caterpillar(3))]);
    assert!(matches!(
        reduce_multivalent(&g, &choices),
        Err(TopologyError::LeafCountMismatch { leaves: 3, expected: 4, .. })
    ));
}

#[test]
fn reduce_rejects_low_valence() {
    let g = Graph::build().edge("e1", "u", "v").edge("e2", "u", "v").finish().unwrap();
    assert!(matches!(reduce_multivalent(&g, &BTreeMap::new()), Err(TopologyError::LowValence { .. })));
}

#[test]
fn reduce_loops_at_multivalent_vertex() {
    // single vertex carrying two loops (valence 4)
    let g = Graph::build().edge("l1", "x", "x").edge("l2", "x", "x").finish().unwrap();
    let red = reduce_multivalent(&g, &BTreeMap::new()).unwrap();
    assert!(red.graph.is_trivalent());
    assert_eq!(red.graph.vertex_count(), 2);
    assert_eq!(red.graph.edge_count(), 3);
    assert_eq!(betti(&g), betti(&red.graph));
}

#[test]
fn isomorphism_distinguishes_and_matches() {
    assert!(!corpus::theta().is_isomorphic_to(&corpus::dumbbell()));
    assert!(!corpus::k4().is_isomorphic_to(&corpus::twoloop()));
    let relabeled = parse_graph("edge x1 p q\nedge x2 p q\nedge x3 q p\n").unwrap();
    assert!(corpus::theta().is_isomorphic_to(&relabeled));
}
