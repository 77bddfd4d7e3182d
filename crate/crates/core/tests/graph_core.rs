mod common;

use common::ids;
use mcn::samples::{arborescence_sample, sample_game};
use mcn::{Graph, Instance, VertexSet};
use proptest::prelude::*;

fn named(inst: &Instance, labels: &[&str]) -> VertexSet {
    inst.vertices_named(labels).unwrap()
}

fn labels_of(inst: &Instance, set: impl IntoIterator<Item = usize>) -> Vec<String> {
    let mut out: Vec<String> = set.into_iter().map(|v| inst.label(v)).collect();
    out.sort();
    out
}

#[test]
fn sample_game_document() {
    let inst = Instance::from_json(&sample_game().to_json()).unwrap();
    assert_eq!(inst.n(), 6);
    assert_eq!(inst.graph().arc_count(), 8);
    assert!(inst.is_unitary());
    assert_eq!((inst.omega, inst.phi, inst.lambda), (1, 1, 1));
}

#[test]
fn empty_and_out_of_range_documents() {
    let empty = Instance::from_json(r#"{"directed":true,"n":0,"arcs":[],"omega":0,"phi":0,"lambda":0}"#).unwrap();
    assert_eq!(empty.n(), 0);
    let bad = Instance::from_json(r#"{"directed":true,"n":6,"arcs":[[0,7]],"omega":0,"phi":0,"lambda":0}"#);
    assert!(bad.is_err());
}

#[test]
fn vaccinating_three_leaves_three_arcs() {
    let inst = sample_game();
    let sub = inst.graph().induced_subgraph(&named(&inst, &["3"])).unwrap();
    assert_eq!(sub.graph.n(), 5);
    let mut arcs: Vec<(String, String)> = sub
        .graph
        .arcs()
        .map(|(u, v)| (inst.label(sub.new_to_old[u]), inst.label(sub.new_to_old[v])))
        .collect();
    arcs.sort();
    let want: Vec<(String, String)> = [("1", "4"), ("2", "1"), ("2", "6")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(arcs, want);
}

#[test]
fn induced_identity_and_everything_removed() {
    let g = sample_game().graph().clone();
    let same = g.induced_subgraph(&VertexSet::new()).unwrap();
    assert_eq!(same.graph, g);
    assert_eq!(same.new_to_old, (0..6).collect::<Vec<_>>());
    let none = g.induced_subgraph(&(0..6).collect()).unwrap();
    assert_eq!(none.graph.n(), 0);
}

#[test]
fn components_of_small_graphs() {
    let edgeless = Graph::empty(4, false);
    assert_eq!(edgeless.connected_components(), vec![vec![0], vec![1], vec![2], vec![3]]);
    let path = Graph::new(4, false, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(path.connected_components(), vec![vec![0, 1, 2], vec![3]]);
}

#[test]
fn sample_game_minus_three_and_one() {
    let inst = sample_game();
    let sub = inst.graph().induced_subgraph(&named(&inst, &["1", "3"])).unwrap();
    let mut comps: Vec<Vec<String>> = sub
        .graph
        .connected_components()
        .into_iter()
        .map(|c| labels_of(&inst, c.into_iter().map(|v| sub.new_to_old[v])))
        .collect();
    comps.sort();
    assert_eq!(comps, vec![vec!["2", "6"], vec!["4"], vec!["5"]]);

    let sources = sub.project(&named(&inst, &["2"]));
    let reach = sub.lift(&sub.graph.reachable_set(&sources).unwrap());
    assert_eq!(labels_of(&inst, reach), vec!["2", "6"]);
    assert!(sub.graph.reachable_set(&VertexSet::new()).unwrap().is_empty());
}

#[test]
fn arborescence_reach_from_nine() {
    let inst = arborescence_sample();
    let reach = inst.graph().reachable_set(&named(&inst, &["9"])).unwrap();
    assert_eq!(labels_of(&inst, reach), vec!["4", "5", "9"]);
}

proptest! {
    #[test]
    fn removing_nothing_twice_is_stable(g in common::arb_graph(9, false)) {
        let once = g.induced_subgraph(&VertexSet::new()).unwrap().graph;
        let twice = once.induced_subgraph(&VertexSet::new()).unwrap().graph;
        prop_assert_eq!(once.connected_components(), twice.connected_components());
        prop_assert_eq!(g.connected_components(), once.connected_components());
    }

    #[test]
    fn reach_is_monotone(g in common::arb_graph(9, true), a in 0u32..512, b in 0u32..512) {
        let n = g.n() as u32;
        let small = common::set(a & b & ((1 << n) - 1));
        let large = common::set(a & ((1 << n) - 1));
        let rs = g.reachable_set(&small).unwrap();
        let rl = g.reachable_set(&large).unwrap();
        prop_assert!(rs.is_subset(&rl));
    }

    #[test]
    fn undirected_reach_is_the_component(g in common::arb_graph(9, false), pick in 0usize..9) {
        let v = pick % g.n();
        let reach = g.reachable_set(&ids(&[v])).unwrap();
        let comp: VertexSet = g
            .connected_components()
            .into_iter()
            .find(|c| c.contains(&v))
            .unwrap()
            .into_iter()
            .collect();
        prop_assert_eq!(reach, comp);
    }
}
