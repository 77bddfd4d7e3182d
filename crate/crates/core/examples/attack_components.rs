//! Component-based attacks on an undirected graph, plus the knapsack they reduce to.

use mcn::gen::{gen_random_instance, Shape, WeightMode};
use mcn::poly::{attack_components_unitary, attack_components_weighted, knapsack_dp, pairwise_connectivity};
use mcn::VertexSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let none = VertexSet::new();
    let inst = gen_random_instance(Shape::Random, 12, 5, WeightMode::Unit)?.with_budgets(0, 2, 0);
    let unit = attack_components_unitary(&inst, &none)?;
    let heavy = gen_random_instance(Shape::Random, 12, 5, WeightMode::Random { max: 5 })?.with_budgets(0, 2, 0);
    let weighted = attack_components_weighted(&heavy, &none)?;
    println!("unitary attack {:?} infects {}", unit.attacked, unit.infected_benefit);
    println!("weighted attack {:?} infects {}", weighted.attacked, weighted.infected_benefit);
    println!("pairwise connectivity {}", pairwise_connectivity(inst.graph(), &none)?);

    let k = knapsack_dp(&[3, 4, 2], &[5, 6, 3], 5)?;
    println!("knapsack picks {:?} for profit {}", k.selection, k.profit);
    Ok(())
}
