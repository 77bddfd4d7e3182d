//! Protect a random tree with the dynamic program and compare against brute force.

use mcn::exact::best_protect;
use mcn::gen::{gen_random_instance, Shape, WeightMode};
use mcn::poly::protect_tree_dp;
use mcn::VertexSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = 3;
    let inst = gen_random_instance(Shape::Tree, 14, 11, WeightMode::Unit)?.with_budgets(0, 2, lambda);
    let attack: VertexSet = [0, 7].into();
    let dp = protect_tree_dp(&inst, &attack, lambda)?;
    let bf = best_protect(&inst, &VertexSet::new(), &attack)?;
    println!("dp protects {:?}, saves {}", dp.protected, dp.saved);
    println!("brute force saves {} ({} plays)", bf.value, bf.plays);
    Ok(())
}
