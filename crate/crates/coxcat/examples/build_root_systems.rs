//! Build root systems from type strings and inspect their structure:
//! root counts, simple roots, the orthogonal bipartition of the simple
//! system, and parabolic restriction.
//!
//! Run with: cargo run --example build_root_systems

use coxcat::roots::{build_root_system, TypeSpec};

fn main() -> coxcat::CoxResult<()> {
    for name in ["A3", "B3", "H3", "I2(7)", "A2xB2"] {
        let spec = TypeSpec::parse(name)?;
        let rs = build_root_system(&spec)?;
        println!(
            "{name}: rank {}, {} positive roots, {} roots total",
            rs.rank(),
            rs.num_positive(),
            rs.num_roots()
        );
        let (plus, minus) = rs.bipartite_partition();
        println!("  simple system splits {} + {} (orthogonal classes)", plus.len(), minus.len());
        if let Some(coords) = rs.coords(rs.simple_roots()[0]) {
            let rendered: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            println!("  first simple root: [{}]", rendered.join(", "));
        } else {
            println!("  coordinate-free dihedral backend");
        }
    }

    // restricting H3 by its last simple root leaves the pentagon system H2
    let h3 = build_root_system(&TypeSpec::parse("H3")?)?;
    let restriction = h3.standard_parabolic(&[2])?;
    println!(
        "H3 minus its third simple root: {} with {} positive roots",
        restriction.subsystem.spec(),
        restriction.subsystem.num_positive()
    );
    Ok(())
}
