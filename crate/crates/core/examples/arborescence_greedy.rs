//! Greedy protection on the polytree sample, with its candidate values.

use mcn::poly::{compute_candidates, protect_arborescence_greedy};
use mcn::samples::{polytree_attack, polytree_sample};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = polytree_sample().with_budgets(0, 3, 2);
    let attack = polytree_attack(&inst);
    let c = compute_candidates(inst.graph(), &attack)?;
    for (&v, p) in c.members.iter().zip(&c.values) {
        println!("candidate {} saves {p}", inst.label(v));
    }
    // the greedy needs G - I to be a forest of arborescences; the polytree is not,
    // so run it on a plain out-tree instead
    let tree = mcn::gen::gen_random_instance(mcn::gen::Shape::Arborescence, 12, 3, mcn::gen::WeightMode::Unit)?
        .with_budgets(0, 1, 2);
    let g = protect_arborescence_greedy(&tree, &[0].into(), 2)?;
    println!("arborescence: protect {:?}, saved {}", g.protected, g.saved);
    Ok(())
}
