//! Zeta-function counts against brute-force enumeration of periodic words.

use betagap::analytics::numerator_free_zeta_beta;
use betagap::*;

fn main() -> Result<()> {
    let n = 10;
    for text in ["1,1,0,1", "1(1,0)*", "1,1(0,1,0)*"] {
        let beta: ParrySeq = text.parse()?;
        let series = series_pn(&zeta_beta(&beta)?, n)?.counts;
        let brute: Vec<u64> = (1..=n)
            .map(|k| periodic_count(System::Beta(&beta), k))
            .collect::<Result<_>>()?;
        println!("{text:<12} series {series:?}\n{:<12} brute  {brute:?}", "");
    }

    let beta: ParrySeq = "1(1,0)*".parse()?;
    let wrong = series_pn(&numerator_free_zeta_beta(&beta)?, 4)?.counts;
    println!("without the (1 - r^p) numerator: {wrong:?}");
    Ok(())
}
