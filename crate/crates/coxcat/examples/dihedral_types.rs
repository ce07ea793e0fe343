//! The dihedral family I2(m): for m outside {3,4,5,6} roots are abstract
//! labels and the group acts by index arithmetic, yet every invariant
//! matches the geometric backends where both exist.
//!
//! Run with: cargo run --example dihedral_types

use coxcat::cluster::enumerate_complex;
use coxcat::roots::{build_dihedral, build_root_system, TypeSpec};

fn main() -> coxcat::CoxResult<()> {
    for m in [5, 7, 12] {
        let rs = build_root_system(&TypeSpec::parse(&format!("I2({m})"))?)?;
        let (lattice, cx) = enumerate_complex(&rs)?;
        println!(
            "I2({m}): lattice has {} elements (m + 2), complex is the {}-gon boundary",
            lattice.len(),
            cx.face_counts()[1]
        );
    }

    // the coordinate-free model agrees with the geometric one for I2(5)
    let geometric = build_root_system(&TypeSpec::parse("I2(5)")?)?;
    let dihedral = build_dihedral(5)?;
    let (gl, gcx) = enumerate_complex(&geometric)?;
    let (dl, dcx) = enumerate_complex(&dihedral)?;
    println!(
        "I2(5) geometric vs dihedral: M-triangles equal = {}, F-triangles equal = {}",
        gl.m_triangle() == dl.m_triangle(),
        gcx.f_triangle() == dcx.f_triangle()
    );
    Ok(())
}
