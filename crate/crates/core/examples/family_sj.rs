//! Infinitely many gap shifts finite-equivalent to one beta-shift.

use betagap::*;

fn main() -> Result<()> {
    let golden: ParrySeq = "1,1".parse()?;
    let s0 = ass_of_beta(&golden)?;
    for j in 0..5 {
        let sj = family_sj(&s0, j)?;
        let f = min_factor(&fischer_gap(&sj, None)?.graph);
        let level = equivalence_level(&golden, &sj)?.level;
        println!(
            "S_{j} = {sj:<24} D = {:?}  M_G = {:?}  {level:?}",
            d_word(&sj)?,
            f.quotient
        );
    }
    Ok(())
}
