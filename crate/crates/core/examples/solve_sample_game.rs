//! Solve the three-level game on the built-in sample and replay the optimum.

use mcn::exact::solve_mcn;
use mcn::samples::sample_game;
use mcn::play;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = sample_game();
    let gv = solve_mcn(&inst)?;
    let out = play(&inst, &gv.witness)?;
    let names = |s: &mcn::VertexSet| s.iter().map(|&v| inst.label(v)).collect::<Vec<_>>();
    println!("value {} after {} plays", gv.value, gv.plays);
    println!("vaccinate {:?}", names(&gv.witness.d));
    println!("attack    {:?}", names(&gv.witness.i));
    println!("protect   {:?}", names(&gv.witness.p));
    println!("saved     {:?}", names(&out.saved));
    Ok(())
}
