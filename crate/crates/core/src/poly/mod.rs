//! Polynomial and pseudo-polynomial algorithms for special cases.

pub mod attack;
pub mod candidates;
pub mod knapsack;
pub mod tree_dp;

pub use attack::{
    attack_components_unitary, attack_components_weighted, largest_components_attack,
    pairwise_connectivity, AttackPlan,
};
pub use candidates::{
    compute_candidates, compute_candidates_weighted, protect_arborescence_greedy, CandidateSet,
    GreedyProtection,
};
pub use knapsack::{knapsack_dp, knapsack_dp_bounded, KnapsackSolution};
pub use tree_dp::{protect_tree_dp, DpState, ProtectTreeDp, TreeDpSolution};
