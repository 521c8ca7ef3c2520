//! Minimal right-resolving factors over every finite gap set inside {0..6}:
//! the partition is discrete exactly when `D(S)` is primitive.

use betagap::seqcore::is_primitive;
use betagap::*;

fn main() -> Result<()> {
    let mut collapsed = 0;
    for mask in 0u32..1 << 7 {
        if mask & 1 == 0 || mask.count_ones() < 2 {
            continue;
        }
        let values: Vec<usize> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
        let s = GapSet::from_list(&values)?;
        let d = d_word(&s)?;
        let f = min_factor(&fischer_gap(&s, None)?.graph);
        if !f.partition.is_discrete() {
            collapsed += 1;
            println!(
                "{s:<16} D(S) = {d:?}  blocks {:?}  quotient {:?}",
                f.partition.blocks, f.quotient
            );
        }
        assert_eq!(is_primitive(&d), f.partition.is_discrete());
    }
    println!("{collapsed} sets with s_0 = 0 have a smaller factor");
    Ok(())
}
