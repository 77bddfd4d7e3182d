//! Candidate protections on directed graphs and the greedy protection rule
//! for graphs whose unattacked part is a forest of arborescences.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::Instance;

/// Vertices whose lone protection saves a maximal set, with the benefit
/// saved in total when each is the only protected vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet {
    pub members: Vec<usize>,
    pub values: Vec<u64>,
}

impl CandidateSet {
    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn value_of(&self, v: usize) -> Option<u64> {
        self.members.binary_search(&v).ok().map(|k| self.values[k])
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Infected set when `attacked` spreads with `blocked` removed.
fn spread(g: &Graph, attacked: &VertexSet, blocked: Option<usize>) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack: Vec<usize> = attacked.iter().copied().collect();
    for &s in attacked {
        seen[s] = true;
    }
    while let Some(u) = stack.pop() {
        for &w in g.successors(u) {
            if !seen[w] && Some(w) != blocked {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Candidates with unit benefits: values are saved-vertex counts.
pub fn compute_candidates(g: &Graph, attacked: &VertexSet) -> Result<CandidateSet> {
    compute_candidates_weighted(g, attacked, &vec![1; g.n()])
}

/// A reachable, unattacked `v` is a candidate when no other single protection
/// also saves `v`. Each reachable vertex is tried alone, so this costs one
/// traversal per reachable vertex.
pub fn compute_candidates_weighted(
    g: &Graph,
    attacked: &VertexSet,
    b: &[u64],
) -> Result<CandidateSet> {
    if let Some(&v) = attacked.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let base = spread(g, attacked, None);
    let reachable: Vec<usize> = (0..g.n())
        .filter(|&v| base[v] && !attacked.contains(&v))
        .collect();
    let mut dominated = vec![false; g.n()];
    let mut saved_value = vec![0u64; g.n()];
    for &u in &reachable {
        let infected = spread(g, attacked, Some(u));
        saved_value[u] = (0..g.n()).filter(|&w| !infected[w]).map(|w| b[w]).sum();
        for &w in &reachable {
            if w != u && !infected[w] {
                dominated[w] = true;
            }
        }
    }
    let members: Vec<usize> = reachable.into_iter().filter(|&v| !dominated[v]).collect();
    let values = members.iter().map(|&v| saved_value[v]).collect();
    Ok(CandidateSet { members, values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyProtection {
    pub protected: VertexSet,
    /// Total saved benefit, including vertices the attack never reaches.
    pub saved: u64,
}

/// Optimal protection when the graph minus `attacked` is a forest of
/// arborescences and protections cost one unit each.
///
/// Every reachable vertex is saved exactly by protecting its nearest
/// ancestor-or-self that has an attacked in-neighbour, so candidate gains add
/// up and the best `lambda` gains win (ties to the smaller id).
pub fn protect_arborescence_greedy(
    inst: &Instance,
    attacked: &VertexSet,
    lambda: u64,
) -> Result<GreedyProtection> {
    let g = inst.graph();
    if !g.is_directed() {
        return Err(Error::Precondition("greedy protection needs a directed graph".into()));
    }
    if let Some(&v) = attacked.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let rest = g.induced_subgraph(attacked)?;
    if !rest.graph.is_arborescence_forest() {
        return Err(Error::Precondition(
            "graph minus the attacked set is not a forest of arborescences".into(),
        ));
    }
    if let Some(v) = (0..g.n()).find(|v| !attacked.contains(v) && inst.c_prot()[*v] != 1) {
        return Err(Error::Precondition(format!(
            "greedy protection needs unit protection costs (vertex {v})"
        )));
    }
    let order = rest.graph.topological_order().expect("checked acyclic");
    // owner[w]: nearest ancestor-or-self (old id) hit directly by the attack.
    let mut owner: Vec<Option<usize>> = vec![None; rest.graph.n()];
    for &w in &order {
        let old = rest.new_to_old[w];
        let hit = g.predecessors(old).iter().any(|p| attacked.contains(p));
        owner[w] = if hit {
            Some(old)
        } else {
            rest.graph.predecessors(w).first().and_then(|&p| owner[p])
        };
    }
    let mut gain = vec![0u64; g.n()];
    let mut is_candidate = vec![false; g.n()];
    let mut infected_benefit: u64 = inst.benefit_of(attacked);
    for w in 0..rest.graph.n() {
        if let Some(c) = owner[w] {
            let old = rest.new_to_old[w];
            gain[c] += inst.b()[old];
            is_candidate[c] = true;
            infected_benefit += inst.b()[old];
        }
    }
    let mut candidates: Vec<usize> = (0..g.n()).filter(|&v| is_candidate[v]).collect();
    candidates.sort_by(|&a, &b| gain[b].cmp(&gain[a]).then(a.cmp(&b)));
    let take = lambda.min(candidates.len() as u64) as usize;
    let protected: VertexSet = candidates[..take].iter().copied().collect();
    let recovered: u64 = protected.iter().map(|&v| gain[v]).sum();
    Ok(GreedyProtection {
        saved: inst.total_benefit() - infected_benefit + recovered,
        protected,
    })
}
