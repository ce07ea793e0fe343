//! The cluster complex of A3: the reflection-ordering vertex table, the
//! face census by (positive, negative-simple) counts, purity, the sphere
//! Euler characteristic, and the face-to-group-element map.
//!
//! Run with: cargo run --example cluster_complex

use coxcat::cluster::{enumerate_complex, rho_sequence};
use coxcat::roots::{build_root_system, TypeSpec};

fn main() -> coxcat::CoxResult<()> {
    let rs = build_root_system(&TypeSpec::parse("A3")?)?;
    let rho = rho_sequence(&rs)?;
    println!("vertex order (ascending rho-index):");
    for v in 0..rho.len() {
        let root = rho.root_of(v);
        let coords: Vec<String> = rs
            .coords(root)
            .expect("A3 is geometric")
            .iter()
            .map(|c| c.to_string())
            .collect();
        println!("  id {v} = rho_{}: [{}]", rho.rho_index(v), coords.join(", "));
    }

    let (lattice, cx) = enumerate_complex(&rs)?;
    println!("face counts by size: {:?}", cx.face_counts());
    println!("facets: {} (= lattice size {})", cx.facets().len(), lattice.len());
    println!("pure: {}", cx.is_pure());
    println!("euler characteristic: {} (2-sphere)", cx.euler_characteristic());
    println!("F-triangle: {}", cx.f_triangle());

    // every facet multiplies to the Coxeter element or another full-rank
    // lattice element
    let w = cx.face_element(&rs, &cx.facets()[0].vertices)?;
    println!(
        "first facet maps to a rank-{} lattice element",
        rs.reflection_length(&w)
    );
    Ok(())
}
