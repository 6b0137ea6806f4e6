//! Built-in reference graphs: theta and dumbbell (genus 2), K4 and the
//! two-loop chain (genus 3). See `corpus/README.md` at the repository root
//! for the catalogue; the text sources are compiled in so no files are
//! needed at run time.

use crate::topology::{parse_graph, Graph};

pub const THETA: &str = include_str!("../../../corpus/theta.graph");
pub const DUMBBELL: &str = include_str!("../../../corpus/dumbbell.graph");
pub const K4: &str = include_str!("../../../corpus/k4.graph");
pub const TWOLOOP: &str = include_str!("../../../corpus/twoloop.graph");

pub fn theta() -> Graph {
    parse_graph(THETA).expect("built-in graph parses")
}

pub fn dumbbell() -> Graph {
    parse_graph(DUMBBELL).expect("built-in graph parses")
}

pub fn k4() -> Graph {
    parse_graph(K4).expect("built-in graph parses")
}

pub fn twoloop() -> Graph {
    parse_graph(TWOLOOP).expect("built-in graph parses")
}

/// All corpus graphs with their names, genus-2 graphs first.
pub fn all() -> Vec<Graph> {
    vec![theta(), dumbbell(), k4(), twoloop()]
}

/// The tristar history: one vertex with three open half-edges. Its double is
/// the theta graph.
pub fn tristar() -> Graph {
    Graph::build()
        .name("tristar")
        .half_open_edge("e1", "u")
        .half_open_edge("e2", "u")
        .half_open_edge("e3", "u")
        .finish()
        .expect("built-in graph is valid")
}
