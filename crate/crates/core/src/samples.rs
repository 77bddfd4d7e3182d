//! Small hand-built instances used by tests, examples and the CLI bench suite.
//!
//! Vertex ids are dense; the `names` field carries the conventional labels
//! so witnesses print the way the instances are usually drawn.

use crate::graph::{Graph, VertexSet};
use crate::instance::Instance;

fn labelled(n: usize, directed: bool, arcs: &[(usize, usize)], first_label: usize) -> Instance {
    let arcs: Vec<(usize, usize)> = arcs
        .iter()
        .map(|&(u, v)| (u - first_label, v - first_label))
        .collect();
    let graph = Graph::new(n, directed, &arcs).expect("sample graph is valid");
    let names = (first_label..first_label + n).map(|v| v.to_string()).collect();
    Instance::unitary(graph, 0, 0, 0)
        .with_names(names)
        .expect("labels are unique")
}

fn ids(inst: &Instance, labels: &[usize]) -> VertexSet {
    let labels: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    inst.vertices_named(&labels).expect("sample labels exist")
}

/// Six-vertex directed game, unitary weights, one unit of each budget.
/// Under optimal play four vertices are saved.
pub fn sample_game() -> Instance {
    labelled(
        6,
        true,
        &[(1, 4), (2, 1), (2, 6), (3, 1), (3, 2), (3, 5), (4, 3), (5, 3)],
        1,
    )
    .with_budgets(1, 1, 1)
}

/// Polytree on labels 1..=12 with sources 10, 11, 12 (no budgets set).
pub fn polytree_sample() -> Instance {
    labelled(
        12,
        true,
        &[
            (12, 1),
            (10, 3),
            (1, 2),
            (3, 2),
            (2, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (6, 8),
            (8, 9),
            (11, 9),
        ],
        1,
    )
}

pub fn polytree_attack(inst: &Instance) -> VertexSet {
    ids(inst, &[10, 11, 12])
}

/// DAG on labels 0..=5 where the sink side is reachable along two routes.
pub fn dag_sample() -> Instance {
    labelled(6, true, &[(0, 1), (1, 2), (1, 4), (2, 3), (4, 3), (3, 5)], 0)
}

pub fn dag_attack(inst: &Instance) -> VertexSet {
    ids(inst, &[0])
}

/// Graph on labels 0..=9 whose part outside the attack {0, 9} is a forest
/// of arborescences.
pub fn arborescence_sample() -> Instance {
    labelled(
        10,
        true,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (2, 4),
            (4, 5),
            (9, 4),
            (1, 6),
            (1, 7),
            (7, 8),
        ],
        0,
    )
}

pub fn arborescence_attack(inst: &Instance) -> VertexSet {
    ids(inst, &[0, 9])
}

/// Split graph: clique {0,1,2,3}, independent {4,5,6} with vertex 5 isolated.
pub fn split_sample() -> (Vec<usize>, Vec<usize>, Vec<(usize, usize)>) {
    let clique = vec![0, 1, 2, 3];
    let independent = vec![4, 5, 6];
    let mut edges = Vec::new();
    for (k, &u) in clique.iter().enumerate() {
        for &v in &clique[k + 1..] {
            edges.push((u, v));
        }
    }
    edges.extend([(0, 4), (2, 4), (3, 6)]);
    (clique, independent, edges)
}
