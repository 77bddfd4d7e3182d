//! Seeded random instances.
//!
//! The generator is SplitMix64; `below(n)` is `next_u64() % n`. Every draw
//! goes through [`SeededRng`] so documents are reproducible from
//! `(shape, n, seed)` alone.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;

pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        self.next_u64() % n
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    /// Draw in `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    /// Fisher-Yates.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for k in (1..items.len()).rev() {
            let j = self.index(k + 1);
            items.swap(k, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Tree,
    Arborescence,
    Split,
    Dag,
    Star,
    Random,
}

impl Shape {
    pub const ALL: [Shape; 6] = [
        Shape::Tree,
        Shape::Arborescence,
        Shape::Split,
        Shape::Dag,
        Shape::Star,
        Shape::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Tree => "tree",
            Shape::Arborescence => "arborescence",
            Shape::Split => "split",
            Shape::Dag => "dag",
            Shape::Star => "star",
            Shape::Random => "random",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Shape::ALL
            .into_iter()
            .find(|shape| shape.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unsupported shape `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    /// Benefits and all three costs drawn from `1..=max`.
    Random { max: u64 },
    /// Unit costs, benefits drawn from `1..=max`.
    Benefits { max: u64 },
}

/// Random graph of the given shape; no weights.
///
/// `tree` and `star` are undirected, `arborescence` is rooted at 0 with
/// arcs pointing away from it, `dag` only has arcs from lower to higher ids,
/// `split` puts the first `k` vertices in a clique and the rest in an
/// independent set, `random` is an undirected G(n, 1/3).
pub fn random_graph(shape: Shape, n: usize, rng: &mut SeededRng) -> Result<Graph> {
    let mut arcs = Vec::new();
    let directed = matches!(shape, Shape::Arborescence | Shape::Dag);
    match shape {
        Shape::Tree | Shape::Arborescence => {
            for v in 1..n {
                arcs.push((rng.index(v), v));
            }
        }
        Shape::Star => arcs.extend((1..n).map(|v| (0, v))),
        Shape::Dag => {
            for v in 1..n {
                for u in 0..v {
                    if rng.chance(1, 3) {
                        arcs.push((u, v));
                    }
                }
            }
        }
        Shape::Split => {
            let k = split_clique_size(n, rng);
            for u in 0..k {
                arcs.extend((u + 1..k).map(|v| (u, v)));
            }
            for v in k..n {
                for u in 0..k {
                    if rng.chance(1, 2) {
                        arcs.push((u, v));
                    }
                }
            }
        }
        Shape::Random => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.chance(1, 3) {
                        arcs.push((u, v));
                    }
                }
            }
        }
    }
    Graph::new(n, directed, &arcs)
}

fn split_clique_size(n: usize, rng: &mut SeededRng) -> usize {
    if n == 0 {
        0
    } else {
        1 + rng.index(n)
    }
}

/// Size of the clique side that [`random_graph`] draws for a split graph
/// with this seed. Vertices `0..k` form the clique.
pub fn split_partition(n: usize, seed: u64) -> usize {
    split_clique_size(n, &mut SeededRng::new(seed))
}

/// Deterministic instance for `(shape, n, seed)` with all three budgets set
/// to 1. Split instances label vertices `clique:v` / `independent:v`.
pub fn gen_random_instance(shape: Shape, n: usize, seed: u64, weights: WeightMode) -> Result<Instance> {
    let mut rng = SeededRng::new(seed);
    let graph = random_graph(shape, n, &mut rng)?;
    let mut draw = |max: u64| -> Vec<u64> { (0..n).map(|_| rng.range(1, max)).collect() };
    let inst = match weights {
        WeightMode::Unit => Instance::unitary(graph, 1, 1, 1),
        WeightMode::Benefits { max } => Instance::unitary(graph, 1, 1, 1).with_benefits(draw(max))?,
        WeightMode::Random { max } => {
            let b = draw(max);
            let c_vacc = draw(max);
            let c_att = draw(max);
            let c_prot = draw(max);
            Instance::new(graph, b, c_vacc, c_att, c_prot, 1, 1, 1)?
        }
    };
    if shape == Shape::Split {
        let k = split_partition(n, seed);
        let names = (0..n)
            .map(|v| if v < k { format!("clique:{v}") } else { format!("independent:{v}") })
            .collect();
        return inst.with_names(names);
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_is_modulo() {
        let mut a = SeededRng::new(42);
        let mut b = SplitMix64::seed_from_u64(42);
        for n in 1..50 {
            assert_eq!(a.below(n), b.next_u64() % n);
        }
    }

    #[test]
    fn shapes_hold() {
        for seed in 0..20 {
            for n in 0..12 {
                let tree = gen_random_instance(Shape::Tree, n, seed, WeightMode::Unit).unwrap();
                assert!(n == 0 || tree.graph().is_tree());
                let arb = gen_random_instance(Shape::Arborescence, n, seed, WeightMode::Unit).unwrap();
                assert!(arb.graph().is_arborescence_forest());
                assert!(n == 0 || arb.graph().connected_components().len() == 1);
                let dag = gen_random_instance(Shape::Dag, n, seed, WeightMode::Unit).unwrap();
                assert!(dag.graph().is_acyclic());
                let star = gen_random_instance(Shape::Star, n, seed, WeightMode::Unit).unwrap();
                assert!(n == 0 || star.graph().is_tree());
            }
        }
    }

    #[test]
    fn split_partition_is_valid() {
        for seed in 0..20 {
            let n = 7;
            let inst = gen_random_instance(Shape::Split, n, seed, WeightMode::Unit).unwrap();
            let k = split_partition(n, seed);
            let g = inst.graph();
            for u in 0..n {
                for v in u + 1..n {
                    if v < k {
                        assert!(g.has_arc(u, v));
                    }
                    if u >= k {
                        assert!(!g.has_arc(u, v));
                    }
                }
            }
            assert!(inst.label(0).starts_with("clique:"));
        }
    }

    #[test]
    fn deterministic() {
        let mode = WeightMode::Random { max: 5 };
        let a = gen_random_instance(Shape::Random, 9, 3, mode).unwrap();
        let b = gen_random_instance(Shape::Random, 9, 3, mode).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!("cycle".parse::<Shape>().is_err());
    }
}
