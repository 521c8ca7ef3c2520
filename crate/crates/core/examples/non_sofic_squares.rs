//! The gap set of squares, known up to a horizon. Entropy is a bracket and
//! the periodic counts differ from the beta side by exactly one.

use betagap::*;

fn main() -> Result<()> {
    let horizon = 40;
    let squares = GapSet::truncated_from_fn(horizon, |m| (0..=m).any(|i| i * i == m))?;
    println!("S = {squares}  ({:?})", classify_gap(&squares));
    println!("star: {}", star_condition(&squares)?);

    let partner = ass_of_gap(&squares)?.parry;
    println!("partner: {partner}");
    println!("h(X(S))   in {}", entropy_gap(&squares, 1e-12)?);
    println!("h(X_beta) in {}", entropy_beta(&partner, 1e-12)?);

    for n in 1..=10 {
        let g = periodic_count(System::Gap(&squares), n)?;
        let b = periodic_count(System::Beta(&partner), n)?;
        println!("n = {n:>2}: p_n(S) = {g:>4}, p_n(beta) = {b:>4}");
    }
    Ok(())
}
