//! The golden-mean beta-shift and its gap shift `X({0,1})`.

use betagap::*;

fn main() -> Result<()> {
    let beta: ParrySeq = "1,1".parse()?;
    let gap = ass_of_beta(&beta)?;
    println!("1_beta = {beta}  ->  S = {gap}");

    let eq = equivalence_level(&beta, &gap)?;
    println!("level: {:?}, vertex map {:?}", eq.level, eq.certificate);

    let z = zeta_beta(&beta)?;
    println!("zeta = {}", z.pretty());
    println!("p_n  = {:?}", series_pn(&z, 10)?.counts);

    let h = entropy_beta(&beta, 1e-12)?;
    println!("entropy in {h}");
    Ok(())
}
