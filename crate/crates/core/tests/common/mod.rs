//! Independent brute-force oracles shared by the integration tests.
//!
//! Sets are bitmasks over at most 20 vertices. Nothing here calls the
//! library's search or propagation code.

#![allow(dead_code)]

use mcn::{Instance, VertexSet};

pub fn mask(set: &VertexSet) -> u32 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn set(mask: u32) -> VertexSet {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}

pub fn ids(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

fn cost(costs: &[u64], m: u32) -> u64 {
    costs.iter().enumerate().filter(|(v, _)| m >> v & 1 == 1).map(|(_, c)| c).sum()
}

/// Infected mask: start from the attacked vertices that are not blocked and
/// relax arcs until nothing changes.
pub fn infected(inst: &Instance, blocked: u32, attacked: u32) -> u32 {
    let arcs: Vec<(usize, usize)> = inst.graph().arcs().collect();
    let mut inf = attacked & !blocked;
    loop {
        let mut next = inf;
        for &(u, v) in &arcs {
            if inf >> u & 1 == 1 && blocked >> v & 1 == 0 {
                next |= 1 << v;
            }
        }
        if next == inf {
            return inf;
        }
        inf = next;
    }
}

pub fn saved(inst: &Instance, d: u32, i: u32, p: u32) -> u64 {
    let inf = infected(inst, d | p, i);
    (0..inst.n()).filter(|v| inf >> v & 1 == 0).map(|v| inst.b()[v]).sum()
}

fn subsets(n: usize, forbidden: u32, costs: &[u64], budget: u64) -> impl Iterator<Item = u32> + '_ {
    (0u32..1 << n).filter(move |&m| m & forbidden == 0 && cost(costs, m) <= budget)
}

pub fn protect(inst: &Instance, d: u32, i: u32) -> u64 {
    subsets(inst.n(), d | i, inst.c_prot(), inst.lambda)
        .map(|p| saved(inst, d, i, p))
        .max()
        .unwrap()
}

pub fn attack(inst: &Instance, d: u32, with_protect: bool) -> u64 {
    subsets(inst.n(), d, inst.c_att(), inst.phi)
        .map(|i| if with_protect { protect(inst, d, i) } else { saved(inst, d, i, 0) })
        .min()
        .unwrap()
}

pub fn vaccinate(inst: &Instance, with_protect: bool) -> u64 {
    subsets(inst.n(), 0, inst.c_vacc(), inst.omega)
        .map(|d| attack(inst, d, with_protect))
        .max()
        .unwrap()
}

/// Sizes of the connected components of an undirected instance minus `removed`.
pub fn component_sizes(inst: &Instance, removed: u32) -> Vec<u64> {
    let n = inst.n();
    let mut seen = removed;
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        let comp = infected(inst, removed, 1 << s);
        seen |= comp;
        sizes.push(comp.count_ones() as u64);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

use mcn::Graph;
use proptest::prelude::*;

/// Random graph on `1..=max_n` vertices with arc probability about one third.
pub fn arb_graph(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(0.33), n * n).prop_map(move |bits| {
            let arcs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && (directed || u < v) && bits[u * n + v])
                .collect();
            Graph::new(n, directed, &arcs).unwrap()
        })
    })
}

/// Instance on a random graph with weights in `1..=max_w` and budgets up to
/// `max_budget`.
pub fn arb_instance(max_n: usize, directed: bool, max_w: u64, max_budget: u64) -> impl Strategy<Value = Instance> {
    arb_graph(max_n, directed).prop_flat_map(move |g| {
        let n = g.n();
        let w = || proptest::collection::vec(1..=max_w, n);
        (w(), w(), w(), w(), 0..=max_budget, 0..=max_budget, 0..=max_budget).prop_map(
            move |(b, cv, ca, cp, o, f, l)| Instance::new(g.clone(), b, cv, ca, cp, o, f, l).unwrap(),
        )
    })
}

/// Pairwise-disjoint (D, I, P) masks on `n` vertices, ignoring budgets.
pub fn arb_masks(n: usize) -> impl Strategy<Value = (u32, u32, u32)> {
    proptest::collection::vec(0u8..4, n).prop_map(|roles| {
        let mut m = (0, 0, 0);
        for (v, r) in roles.into_iter().enumerate() {
            match r {
                1 => m.0 |= 1 << v,
                2 => m.1 |= 1 << v,
                3 => m.2 |= 1 << v,
                _ => {}
            }
        }
        m
    })
}
