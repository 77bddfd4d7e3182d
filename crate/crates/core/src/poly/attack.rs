//! Component-based attacks on undirected graphs, and pairwise connectivity.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::Instance;
use crate::poly::knapsack::knapsack_dp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackPlan {
    pub attacked: VertexSet,
    /// Total benefit of the vertices the attack infects.
    pub infected_benefit: u64,
}

/// One attacked vertex (the smallest id) in each of the `phi` largest
/// components. Returns the attack and the number of infected vertices.
pub fn largest_components_attack(g: &Graph, phi: u64) -> (VertexSet, u64) {
    let mut attacked = VertexSet::new();
    let mut infected = 0;
    for comp in g.connected_components().into_iter().take(phi.min(g.n() as u64) as usize) {
        attacked.insert(comp[0]);
        infected += comp.len() as u64;
    }
    (attacked, infected)
}

fn residual(inst: &Instance, d: &VertexSet) -> Result<crate::graph::InducedSubgraph> {
    if inst.graph().is_directed() {
        return Err(Error::Precondition(
            "component attacks need an undirected graph".into(),
        ));
    }
    inst.graph().induced_subgraph(d)
}

/// Optimal attack with budget `inst.phi` on the graph minus `d`, for unit
/// benefits and unit attack costs.
pub fn attack_components_unitary(inst: &Instance, d: &VertexSet) -> Result<AttackPlan> {
    let sub = residual(inst, d)?;
    if !inst.is_unitary() {
        return Err(Error::Precondition(
            "unitary component attack needs unit benefits and costs".into(),
        ));
    }
    let (attacked, infected) = largest_components_attack(&sub.graph, inst.phi);
    Ok(AttackPlan {
        attacked: sub.lift(&attacked),
        infected_benefit: infected,
    })
}

/// Optimal attack with budget `inst.phi` on the graph minus `d` for arbitrary
/// weights: each component is an item costing its cheapest vertex and worth
/// its total benefit.
pub fn attack_components_weighted(inst: &Instance, d: &VertexSet) -> Result<AttackPlan> {
    let sub = residual(inst, d)?;
    let comps = sub.graph.connected_components();
    let mut weights = Vec::with_capacity(comps.len());
    let mut profits = Vec::with_capacity(comps.len());
    let mut cheapest = Vec::with_capacity(comps.len());
    for comp in &comps {
        let old: Vec<usize> = comp.iter().map(|&v| sub.new_to_old[v]).collect();
        let pick = *old
            .iter()
            .min_by_key(|&&v| (inst.c_att()[v], v))
            .expect("components are non-empty");
        cheapest.push(pick);
        weights.push(inst.c_att()[pick]);
        profits.push(inst.benefit_of(&old));
    }
    let solution = knapsack_dp(&weights, &profits, inst.phi)?;
    Ok(AttackPlan {
        attacked: solution.selection.iter().map(|&k| cheapest[k]).collect(),
        infected_benefit: solution.profit,
    })
}

/// Number of connected vertex pairs after deleting `removed`.
pub fn pairwise_connectivity(g: &Graph, removed: &VertexSet) -> Result<u64> {
    let sub = g.induced_subgraph(removed)?;
    Ok(sub
        .graph
        .connected_components()
        .iter()
        .map(|c| {
            let k = c.len() as u64;
            k * k.saturating_sub(1) / 2
        })
        .sum())
}
