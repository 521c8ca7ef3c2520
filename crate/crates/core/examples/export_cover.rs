//! Write a Fischer cover as Graphviz and JSON: `cargo run --example
//! export_cover -- 'gap:0;1,(2,3)*' out`.

use std::fs;

use betagap::cli::{parse_spec, ObjectSpec};
use betagap::*;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "gap:0;1,(2,3)*".into());
    let stem = args.next();
    let graph = match parse_spec(&spec)? {
        ObjectSpec::Beta(s) => fischer_beta(&s, None)?,
        ObjectSpec::Gap(s) => fischer_gap(&s, None)?.graph,
        ObjectSpec::BetaDecimal(_) => {
            return Err(Error::Invalid(
                "give the expansion of 1, not a decimal".into(),
            ))
        }
    };
    let json = serde_json::to_string_pretty(&graph.to_json()).expect("json");
    match stem {
        Some(stem) => {
            fs::write(format!("{stem}.dot"), graph.to_dot()).expect("write dot");
            fs::write(format!("{stem}.json"), json).expect("write json");
            println!("wrote {stem}.dot and {stem}.json");
        }
        None => println!("{}{json}", graph.to_dot()),
    }
    Ok(())
}
