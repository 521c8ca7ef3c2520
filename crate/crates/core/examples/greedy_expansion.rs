//! Greedy expansion of 1 from a decimal beta, with interval arithmetic
//! flagging digits that the given precision cannot decide.

use betagap::beta::{greedy_expand_adaptive, DEFAULT_PRECISION};
use betagap::*;

fn main() -> Result<()> {
    for decimal in ["1.5", "1.80193773580", "1.61803398874989", "1.9"] {
        let g = greedy_expand(decimal, 16, DEFAULT_PRECISION)?;
        let marks: String = g
            .certain
            .iter()
            .map(|&c| if c { ' ' } else { '?' })
            .collect();
        println!(
            "{decimal:<18} {}",
            g.digits.iter().map(|d| d.to_string()).collect::<String>()
        );
        println!("{:<18} {marks}", "");
        match greedy_expand_adaptive(decimal, 16, DEFAULT_PRECISION, 512) {
            Ok(g) => println!("{:<18} resolved at {} bits", "", g.precision),
            Err(e) => println!("{:<18} {e}", ""),
        }
    }
    let b = beta_from_parry(&"1(1,0)*".parse()?, &betagap::beta::rat_from_f64(1e-15))?;
    println!("beta of 1(1,0)* in {b}");
    Ok(())
}
