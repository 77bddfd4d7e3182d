//! Seeded instance generation for every graph shape.

use mcn::gen::{gen_random_instance, Shape, WeightMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for shape in Shape::ALL {
        let inst = gen_random_instance(shape, 8, 42, WeightMode::Benefits { max: 9 })?;
        println!("{:<12} n={} arcs={} total benefit {}", shape.name(), inst.n(), inst.graph().arc_count(), inst.total_benefit());
    }
    let one = gen_random_instance(Shape::Tree, 4, 0, WeightMode::Unit)?;
    println!("{}", one.to_json_pretty());
    Ok(())
}
