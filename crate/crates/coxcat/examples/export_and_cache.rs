//! Export lattices and complexes as JSON, reload them through the
//! validating loader, and demonstrate the content-addressed cache.
//!
//! Run with: cargo run --example export_and_cache

use coxcat::cache::{
    complex_from_json, complex_to_json, lattice_from_json, lattice_to_json, CacheDir,
};
use coxcat::cluster::enumerate_complex;
use coxcat::roots::{build_root_system, TypeSpec};

fn main() -> coxcat::CoxResult<()> {
    let rs = build_root_system(&TypeSpec::parse("B3")?)?;
    let (lattice, cx) = enumerate_complex(&rs)?;

    let lattice_json = lattice_to_json(&rs, &lattice);
    let complex_json = complex_to_json(&rs, &cx);
    println!(
        "B3 export: {} lattice elements, {} facets, {} vertices",
        lattice_json.elements.len(),
        complex_json.facets.len(),
        complex_json.vertices.len()
    );

    // the loader revalidates everything it reads
    let lattice2 = lattice_from_json(&rs, &lattice_json)?;
    let cx2 = complex_from_json(&rs, &lattice2, &complex_json)?;
    println!(
        "round trip: M-triangles equal = {}, face counts equal = {}",
        lattice2.m_triangle() == lattice.m_triangle(),
        cx2.face_counts() == cx.face_counts()
    );

    // cache entries are content-addressed by (type, kind, version)
    let dir = std::env::temp_dir().join("coxcat-example-cache");
    let cache = CacheDir::new(dir.clone());
    cache.store_lattice(&rs, &lattice)?;
    cache.store_complex(&rs, &cx)?;
    let hit = cache.load_lattice(&rs).is_some() && cache.load_complex(&rs, &lattice).is_some();
    println!("cache round trip at {}: hit = {hit}", dir.display());
    Ok(())
}
