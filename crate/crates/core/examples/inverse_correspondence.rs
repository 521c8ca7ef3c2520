//! From gap sets back to beta-shifts, including the cases with no partner.

use betagap::*;

fn main() {
    for text in [
        "{0,1}",
        "{0,1,3}",
        "{0,2,3}",
        "0;1,(2)*",
        "0;(2)*",
        "0;(2,1)*",
        "{2,3,4,5,6}",
    ] {
        let s: GapSet = text.parse().unwrap();
        let star = star_condition(&normalize(&s))
            .map(|v| v.to_string())
            .unwrap_or_else(|e| e.code().to_string());
        match ass_of_gap(&s) {
            Ok(r) => {
                print!("{text:<12} star {star:<12} -> {}", r.parry);
                if let Some(note) = r.note {
                    print!("  ({note})");
                }
                println!();
            }
            Err(e) => println!("{text:<12} star {star:<12} -> {e}"),
        }
    }
}
