//! The continued-fraction coordinate `x_S` and neighbours on both sides of
//! the star condition.

use betagap::*;

fn main() -> Result<()> {
    for text in ["{0,1}", "0;1,(2)*", "{0,1,3,5,7}"] {
        let s: GapSet = text.parse()?;
        let x = xs_value(&s, 8);
        println!(
            "{text}: quotients {:?}, x_S ~ {:.10}{}",
            x.quotients,
            x.value_f64(),
            if x.excluded { " (in {1/n})" } else { "" }
        );
        let w = cantor_witness(&s, 2)?;
        println!("  inside  {} ({})", w.inside, star_condition(&w.inside)?);
        println!("  outside {} ({})", w.outside, star_condition(&w.outside)?);
    }
    Ok(())
}
