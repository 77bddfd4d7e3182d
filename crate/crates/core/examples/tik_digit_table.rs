//! Print the digit table behind the trilevel interdiction knapsack gadget.

use mcn::reductions::{CnfFormula, DigitLayout};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = CnfFormula::from_dimacs(
        "p cnf 4 3\nc blocks X: 1 2 / Y: 3 / Z: 4\nc names a b c d\n1 2 -3 0\n-1 -2 4 0\n1 3 2 0\n",
    )?;
    print!("{}", DigitLayout::new(&f)?.table());
    Ok(())
}
