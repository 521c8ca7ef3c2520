//! `1_beta = 1(10)^∞`: a strictly sofic beta-shift next to its gap shift.
//! Same cover graph, different zeta functions.

use betagap::*;

fn main() -> Result<()> {
    let beta: ParrySeq = "1(1,0)*".parse()?;
    let gap = ass_of_beta(&beta)?;
    println!(
        "{beta} ({:?})  ->  {gap} ({:?})",
        classify_beta(&beta),
        classify_gap(&gap)
    );

    let gb = fischer_beta(&beta, None)?;
    let gs = fischer_gap(&gap, None)?;
    println!("beta cover:\n{}", gb.to_dot());
    println!("gap cover:\n{}", gs.graph.to_dot());
    for w in &gs.warnings {
        println!("note: {w}");
    }
    println!(
        "graph isomorphism: {:?}",
        graph_iso(&gb.underlying(), &gs.graph.underlying())?
    );
    println!("level: {:?}", equivalence_level(&beta, &gap)?.level);

    let (zb, zg) = (zeta_beta(&beta)?, zeta_gap(&gap)?);
    println!("zeta_beta = {}", zb.pretty());
    println!("zeta_gap  = {}", zg.pretty());
    println!("p_n(beta) = {:?}", series_pn(&zb, 8)?.counts);
    println!("p_n(gap)  = {:?}", series_pn(&zg, 8)?.counts);
    Ok(())
}
