//! Check every reduction gadget against brute force on small random sources.

use mcn::reductions::{verify_reduction, OracleCaps, Reduction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let caps = OracleCaps::default();
    for r in Reduction::ALL {
        let rep = verify_reduction(r, 20, 1, &caps)?;
        println!(
            "{:<14} yes {:>2}  answer mismatches {}  witness failures {}",
            r.name(),
            rep.yes_count(),
            rep.answer_mismatches(),
            rep.witness_failures()
        );
    }
    Ok(())
}
