//! Source problems of the gadget compilers, their JSON documents and
//! exhaustive oracles.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::poly::pairwise_connectivity;
use crate::reductions::cnf::{self, CnfFormula};

/// Size limits for the brute-force oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    /// Boolean variables of a SAT or QBF source.
    pub booleans: usize,
    /// Items of a BIK or TIK source.
    pub items: usize,
    /// Vertices of a dominating-set or CNP source.
    pub vertices: usize,
    /// Items of a plain knapsack source.
    pub knapsack_items: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            booleans: 12,
            items: 6,
            vertices: 10,
            knapsack_items: 16,
        }
    }
}

fn cap(what: &str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        return Err(Error::CapExceeded(format!("{got} {what}, oracle cap is {limit}")));
    }
    Ok(())
}

fn positive(what: &str, values: impl IntoIterator<Item = u64>) -> Result<()> {
    if values.into_iter().any(|v| v == 0) {
        return Err(Error::Precondition(format!("{what} must be positive integers")));
    }
    Ok(())
}

/// Subsets of `0..n` as bit masks, in counter order.
fn members(mask: u64, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&k| mask >> k & 1 == 1)
}

fn mask_sum(values: &[u64], mask: u64) -> u64 {
    members(mask, values.len()).map(|k| values[k]).sum()
}

fn to_mask(items: &[usize]) -> u64 {
    items.iter().fold(0, |m, &k| m | 1 << k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnapsackItem {
    pub a: u64,
    pub p: u64,
}

/// Is there a subset of weight at most `B` and profit at least `K̄`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnapsackInstance {
    pub items: Vec<KnapsackItem>,
    #[serde(rename = "B")]
    pub capacity: u64,
    #[serde(rename = "Kbar")]
    pub goal: u64,
}

impl KnapsackInstance {
    pub fn validate(&self) -> Result<()> {
        positive("knapsack weights and profits", self.items.iter().flat_map(|it| [it.a, it.p]))
    }

    fn weights(&self) -> Vec<u64> {
        self.items.iter().map(|it| it.a).collect()
    }

    fn profits(&self) -> Vec<u64> {
        self.items.iter().map(|it| it.p).collect()
    }

    pub fn is_witness(&self, chosen: &[usize]) -> bool {
        let m = to_mask(chosen);
        mask_sum(&self.weights(), m) <= self.capacity && mask_sum(&self.profits(), m) >= self.goal
    }

    pub fn solve(&self, caps: &OracleCaps) -> Result<Option<Vec<usize>>> {
        self.validate()?;
        let n = self.items.len();
        cap("items", n, caps.knapsack_items)?;
        let (w, p) = (self.weights(), self.profits());
        Ok((0..1u64 << n)
            .find(|&m| mask_sum(&w, m) <= self.capacity && mask_sum(&p, m) >= self.goal)
            .map(|m| members(m, n).collect()))
    }
}

/// Leader interdicts items of weight at most `A`; the follower then packs
/// profit at most `B`. Yes when some interdiction keeps the follower below `K̄`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BikInstance {
    pub items: Vec<KnapsackItem>,
    #[serde(rename = "A")]
    pub leader_capacity: u64,
    #[serde(rename = "B")]
    pub max_profit: u64,
    #[serde(rename = "Kbar")]
    pub goal: u64,
}

impl BikInstance {
    pub fn validate(&self) -> Result<()> {
        positive("BIK weights and profits", self.items.iter().flat_map(|it| [it.a, it.p]))?;
        positive("B and K̄", [self.max_profit, self.goal])?;
        if self.goal > self.max_profit {
            return Err(Error::Precondition("K̄ must not exceed B".into()));
        }
        Ok(())
    }

    /// Restriction used by the star gadgets: `K̄` and `B` strictly below the
    /// total profit, otherwise the interdiction level is irrelevant.
    pub fn require_nontrivial(&self) -> Result<()> {
        self.validate()?;
        let total: u64 = self.items.iter().map(|it| it.p).sum();
        if self.goal >= total || self.max_profit >= total {
            return Err(Error::Precondition(format!(
                "K̄ and B must be strictly below the total profit {total} (otherwise the instance reduces to plain knapsack)"
            )));
        }
        Ok(())
    }

    fn weights(&self) -> Vec<u64> {
        self.items.iter().map(|it| it.a).collect()
    }

    fn profits(&self) -> Vec<u64> {
        self.items.iter().map(|it| it.p).collect()
    }

    /// Follower's best profit (capped by `B`) among items outside `blocked`.
    fn follower_best(&self, blocked: u64) -> u64 {
        let p = self.profits();
        let free = !blocked & ((1u64 << p.len()) - 1);
        let mut best = 0;
        let mut sub = free;
        loop {
            let profit = mask_sum(&p, sub);
            if profit <= self.max_profit {
                best = best.max(profit);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        best
    }

    pub fn is_witness(&self, leader: &[usize]) -> bool {
        let m = to_mask(leader);
        mask_sum(&self.weights(), m) <= self.leader_capacity && self.follower_best(m) < self.goal
    }

    pub fn solve(&self, caps: &OracleCaps) -> Result<Option<Vec<usize>>> {
        self.validate()?;
        let n = self.items.len();
        cap("items", n, caps.items)?;
        let w = self.weights();
        Ok((0..1u64 << n)
            .find(|&m| mask_sum(&w, m) <= self.leader_capacity && self.follower_best(m) < self.goal)
            .map(|m| members(m, n).collect()))
    }
}

/// Arbitrary-precision integers serialize as JSON numbers when they fit in
/// 64 bits and as decimal strings otherwise.
mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&v.to_str_radix(10)),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(u64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(BigUint::from(x)),
            Repr::Str(s) => BigUint::parse_bytes(s.as_bytes(), 10)
                .ok_or_else(|| serde::de::Error::custom(format!("`{s}` is not a decimal integer"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TikItem {
    /// First-level weight a′.
    #[serde(with = "big")]
    pub a2: BigUint,
    /// Second-level weight a.
    #[serde(with = "big")]
    pub a: BigUint,
    #[serde(with = "big")]
    pub p: BigUint,
}

/// ∃O₁ (a′ ≤ A′) ∀O₂ ⊆ O∖O₁ (a ≤ A) ∃O₃ ⊆ O∖O₂ with K̄ ≤ p(O₃) ≤ B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TikInstance {
    pub items: Vec<TikItem>,
    #[serde(rename = "A2", with = "big")]
    pub first_capacity: BigUint,
    #[serde(rename = "A", with = "big")]
    pub second_capacity: BigUint,
    #[serde(rename = "B", with = "big")]
    pub max_profit: BigUint,
    #[serde(rename = "Kbar", with = "big")]
    pub goal: BigUint,
}

struct TikSearch<'a> {
    tik: &'a TikInstance,
    n: usize,
}

impl TikSearch<'_> {
    fn sum(&self, mask: u64, f: impl Fn(&TikItem) -> &BigUint) -> BigUint {
        members(mask, self.n).map(|k| f(&self.tik.items[k])).sum()
    }

    /// All subsets of `pool` whose `f`-weight stays within `limit`, grown
    /// item by item so heavy branches are cut early.
    fn within(&self, pool: u64, limit: &BigUint, f: &dyn Fn(&TikItem) -> &BigUint) -> Vec<u64> {
        let mut out = vec![0u64];
        let mut weights = vec![BigUint::zero()];
        for k in members(pool, self.n) {
            let w = f(&self.tik.items[k]);
            for idx in 0..out.len() {
                let total = &weights[idx] + w;
                if &total <= limit {
                    out.push(out[idx] | 1 << k);
                    weights.push(total);
                }
            }
        }
        out
    }

    fn third_exists(&self, blocked: u64) -> bool {
        let free = !blocked & ((1u64 << self.n) - 1);
        self.within(free, &self.tik.max_profit, &|it| &it.p)
            .into_iter()
            .any(|m| self.sum(m, |it| &it.p) >= self.tik.goal)
    }

    fn first_wins(&self, first: u64) -> bool {
        let all = (1u64 << self.n) - 1;
        self.within(all & !first, &self.tik.second_capacity, &|it| &it.a)
            .into_iter()
            .all(|second| self.third_exists(second))
    }
}

impl TikInstance {
    pub fn validate(&self) -> Result<()> {
        let zero = |v: &BigUint| v.is_zero();
        if self.items.iter().any(|it| zero(&it.a2) || zero(&it.a) || zero(&it.p))
            || [&self.first_capacity, &self.second_capacity, &self.max_profit, &self.goal]
                .into_iter()
                .any(zero)
        {
            return Err(Error::Precondition("TIK numbers must be positive integers".into()));
        }
        if self.goal > self.max_profit {
            return Err(Error::Precondition("K̄ must not exceed B".into()));
        }
        Ok(())
    }

    pub fn is_witness(&self, first: &[usize]) -> bool {
        let s = TikSearch { tik: self, n: self.items.len() };
        let m = to_mask(first);
        s.sum(m, |it| &it.a2) <= self.first_capacity && s.first_wins(m)
    }

    pub fn solve(&self, max_items: usize) -> Result<Option<Vec<usize>>> {
        self.validate()?;
        let n = self.items.len();
        cap("items", n, max_items.min(63))?;
        let s = TikSearch { tik: self, n };
        let mut firsts = s.within((1u64 << n) - 1, &self.first_capacity, &|it| &it.a2);
        firsts.sort_unstable();
        Ok(firsts
            .into_iter()
            .find(|&m| s.first_wins(m))
            .map(|m| members(m, n).collect()))
    }
}

/// Is there a dominating set of at most `B` vertices?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominatingSetInstance {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(rename = "B")]
    pub budget: usize,
}

impl DominatingSetInstance {
    pub fn graph(&self) -> Result<Graph> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.n, false, &edges)
    }

    pub fn is_witness(&self, set: &[usize]) -> Result<bool> {
        let g = self.graph()?;
        let chosen: VertexSet = set.iter().copied().collect();
        if chosen.len() > self.budget || chosen.iter().any(|&v| v >= self.n) {
            return Ok(false);
        }
        Ok((0..self.n).all(|v| chosen.contains(&v) || g.neighbours(v).into_iter().any(|u| chosen.contains(&u))))
    }

    pub fn solve(&self, caps: &OracleCaps) -> Result<Option<Vec<usize>>> {
        cap("vertices", self.n, caps.vertices)?;
        let g = self.graph()?;
        let closed: Vec<u64> = (0..self.n)
            .map(|v| g.neighbours(v).into_iter().fold(1u64 << v, |m, u| m | 1 << u))
            .collect();
        let full = (1u64 << self.n) - 1;
        let mut masks: Vec<u64> = (0..1u64 << self.n)
            .filter(|m| m.count_ones() as usize <= self.budget)
            .collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        Ok(masks
            .into_iter()
            .find(|&m| members(m, self.n).fold(0, |acc, v| acc | closed[v]) == full)
            .map(|m| members(m, self.n).collect()))
    }
}

/// Critical node problem on a split graph: delete at most `B` vertices so
/// that the pairwise connectivity of what remains is at most `K̄`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitCnpInstance {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    #[serde(rename = "B")]
    pub budget: usize,
    #[serde(rename = "Kbar")]
    pub goal: u64,
}

impl SplitCnpInstance {
    pub fn n(&self) -> usize {
        self.clique.len() + self.independent.len()
    }

    /// Checks the partition and that the clique side is complete and the
    /// independent side has no internal edge.
    pub fn graph(&self) -> Result<Graph> {
        let n = self.n();
        let mut side = vec![None; n];
        for (&v, is_clique) in self
            .clique
            .iter()
            .map(|v| (v, true))
            .chain(self.independent.iter().map(|v| (v, false)))
        {
            if v >= n {
                return Err(Error::Precondition(format!(
                    "partition mentions vertex {v}, but the partition covers only {n} vertices"
                )));
            }
            if side[v].replace(is_clique).is_some() {
                return Err(Error::Precondition(format!("vertex {v} is listed twice in the partition")));
            }
        }
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::new(n, false, &edges)?;
        for (k, &u) in self.clique.iter().enumerate() {
            for &v in &self.clique[k + 1..] {
                if !g.has_arc(u, v) {
                    return Err(Error::Precondition(format!("clique vertices {u} and {v} are not adjacent")));
                }
            }
        }
        for &(u, v) in &edges {
            if side[u] == Some(false) && side[v] == Some(false) {
                return Err(Error::Precondition(format!("independent vertices {u} and {v} are adjacent")));
            }
        }
        Ok(g)
    }

    pub fn is_witness(&self, removed: &[usize]) -> Result<bool> {
        let g = self.graph()?;
        let removed: VertexSet = removed.iter().copied().collect();
        if removed.len() > self.budget || removed.iter().any(|&v| v >= self.n()) {
            return Ok(false);
        }
        Ok(pairwise_connectivity(&g, &removed)? <= self.goal)
    }

    pub fn solve(&self, caps: &OracleCaps) -> Result<Option<Vec<usize>>> {
        let n = self.n();
        cap("vertices", n, caps.vertices)?;
        let g = self.graph()?;
        let mut masks: Vec<u64> = (0..1u64 << n)
            .filter(|m| m.count_ones() as usize <= self.budget)
            .collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for m in masks {
            let removed: VertexSet = members(m, n).collect();
            if pairwise_connectivity(&g, &removed)? <= self.goal {
                return Ok(Some(removed.into_iter().collect()));
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceProblem {
    Sat3(CnfFormula),
    B2Cnf(CnfFormula),
    B3Cnf(CnfFormula),
    Knapsack(KnapsackInstance),
    Bik(BikInstance),
    Tik(TikInstance),
    DominatingSet(DominatingSetInstance),
    CnpSplit(SplitCnpInstance),
}

/// A certificate for a Yes answer, in source terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceWitness {
    /// Truth values indexed by `variable - 1`; only the outermost block is
    /// meaningful for quantified formulas.
    Assignment(Vec<bool>),
    Items(Vec<usize>),
    Vertices(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceAnswer {
    pub yes: bool,
    pub witness: Option<SourceWitness>,
}

impl SourceProblem {
    /// Document text: DIMACS for formulas, JSON otherwise.
    pub fn to_text(&self) -> String {
        match self {
            SourceProblem::Sat3(f) | SourceProblem::B2Cnf(f) | SourceProblem::B3Cnf(f) => f.to_dimacs(),
            SourceProblem::Knapsack(x) => serde_json::to_string(x).expect("serializes"),
            SourceProblem::Bik(x) => serde_json::to_string(x).expect("serializes"),
            SourceProblem::Tik(x) => serde_json::to_string(x).expect("serializes"),
            SourceProblem::DominatingSet(x) => serde_json::to_string(x).expect("serializes"),
            SourceProblem::CnpSplit(x) => serde_json::to_string(x).expect("serializes"),
        }
    }

    /// Checks a claimed Yes certificate by direct evaluation.
    pub fn check_witness(&self, witness: &SourceWitness) -> Result<bool> {
        use SourceWitness::*;
        let bad = || Error::Precondition("witness kind does not match the source problem".into());
        Ok(match (self, witness) {
            (SourceProblem::Sat3(f), Assignment(a)) => a.len() == f.num_vars() && f.eval(a),
            (SourceProblem::B2Cnf(f), Assignment(a)) => {
                let blocks = f.require_blocks(false)?;
                a.len() == f.num_vars() && cnf::forall_y_unsat(f, blocks, &mut a.clone())
            }
            (SourceProblem::B3Cnf(f), Assignment(a)) => {
                let blocks = f.require_blocks(true)?;
                a.len() == f.num_vars() && cnf::forall_y_exists_z(f, blocks, &mut a.clone())
            }
            (SourceProblem::Knapsack(k), Items(s)) => in_range(s, k.items.len()) && k.is_witness(s),
            (SourceProblem::Bik(b), Items(s)) => in_range(s, b.items.len()) && b.is_witness(s),
            (SourceProblem::Tik(t), Items(s)) => in_range(s, t.items.len()) && t.is_witness(s),
            (SourceProblem::DominatingSet(d), Vertices(s)) => d.is_witness(s)?,
            (SourceProblem::CnpSplit(c), Vertices(s)) => c.is_witness(s)?,
            _ => return Err(bad()),
        })
    }
}

fn in_range(items: &[usize], n: usize) -> bool {
    items.iter().all(|&k| k < n)
}

/// Exhaustive evaluation of the source problem's quantifier structure.
pub fn solve_source_bruteforce(src: &SourceProblem, caps: &OracleCaps) -> Result<SourceAnswer> {
    use SourceWitness::*;
    let witness = match src {
        SourceProblem::Sat3(f) => cnf::solve_sat(f, caps.booleans)?.map(Assignment),
        SourceProblem::B2Cnf(f) => cnf::solve_b2cnf(f, caps.booleans)?.map(Assignment),
        SourceProblem::B3Cnf(f) => cnf::solve_b3cnf(f, caps.booleans)?.map(Assignment),
        SourceProblem::Knapsack(k) => k.solve(caps)?.map(Items),
        SourceProblem::Bik(b) => b.solve(caps)?.map(Items),
        SourceProblem::Tik(t) => t.solve(caps.items)?.map(Items),
        SourceProblem::DominatingSet(d) => d.solve(caps)?.map(Vertices),
        SourceProblem::CnpSplit(c) => c.solve(caps)?.map(Vertices),
    };
    Ok(SourceAnswer {
        yes: witness.is_some(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn items(pairs: &[(u64, u64)]) -> Vec<KnapsackItem> {
        pairs.iter().map(|&(a, p)| KnapsackItem { a, p }).collect()
    }

    #[test]
    fn knapsack_oracle() {
        let kp = KnapsackInstance {
            items: items(&[(1, 6), (2, 10), (3, 12)]),
            capacity: 5,
            goal: 22,
        };
        assert_eq!(kp.solve(&OracleCaps::default()).unwrap(), Some(vec![1, 2]));
        let none = KnapsackInstance { goal: 29, ..kp };
        assert_eq!(none.solve(&OracleCaps::default()).unwrap(), None);
    }

    #[test]
    fn bik_without_leader_is_knapsack() {
        let bik = BikInstance {
            items: items(&[(2, 3), (1, 4)]),
            leader_capacity: 0,
            max_profit: 4,
            goal: 4,
        };
        // The follower packs item 1 alone and reaches 4.
        assert_eq!(bik.solve(&OracleCaps::default()).unwrap(), None);
        let with_leader = BikInstance { leader_capacity: 2, ..bik };
        assert_eq!(with_leader.solve(&OracleCaps::default()).unwrap(), Some(vec![1]));
        assert!(with_leader.is_witness(&[1]));
        assert!(!with_leader.is_witness(&[0]));
    }

    #[test]
    fn tik_json_and_oracle() {
        let text = r#"{"items":[{"a2":1,"a":1,"p":2},{"a2":1,"a":1,"p":3}],"A2":1,"A":1,"B":3,"Kbar":2}"#;
        let tik: TikInstance = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&tik).unwrap(), text);
        // Whatever single item is interdicted, the other reaches K̄ = 2.
        assert_eq!(tik.solve(6).unwrap(), Some(vec![]));
        let big: TikInstance = serde_json::from_str(
            r#"{"items":[{"a2":"123456789012345678901234567890","a":1,"p":1}],"A2":1,"A":1,"B":1,"Kbar":1}"#,
        )
        .unwrap();
        assert!(serde_json::to_string(&big).unwrap().contains("\"123456789012345678901234567890\""));
    }

    #[test]
    fn dominating_set_oracle() {
        let tri = DominatingSetInstance { n: 3, edges: vec![[0, 1], [1, 2], [0, 2]], budget: 1 };
        assert_eq!(tri.solve(&OracleCaps::default()).unwrap(), Some(vec![0]));
        let empty = DominatingSetInstance { n: 3, edges: vec![], budget: 1 };
        assert_eq!(empty.solve(&OracleCaps::default()).unwrap(), None);
    }

    #[test]
    fn split_validation() {
        let ok = SplitCnpInstance {
            clique: vec![0, 1],
            independent: vec![2],
            edges: vec![[0, 1], [1, 2]],
            budget: 1,
            goal: 0,
        };
        assert_eq!(ok.solve(&OracleCaps::default()).unwrap(), Some(vec![1]));
        let not_clique = SplitCnpInstance { edges: vec![[1, 2]], ..ok.clone() };
        assert!(not_clique.graph().is_err());
        let overlap = SplitCnpInstance { independent: vec![1], ..ok };
        assert!(overlap.graph().is_err());
    }
}
