//! The vertex rotation R (negation on the first orthogonal class and the
//! negated second class, γ⁻¹ elsewhere): it permutes the faces of the
//! complex and every positive root's orbit reaches a negated simple root.
//!
//! Run with: cargo run --example vertex_rotation

use coxcat::cluster::enumerate_complex;
use coxcat::roots::{build_root_system, TypeSpec};

fn main() -> coxcat::CoxResult<()> {
    let rs = build_root_system(&TypeSpec::parse("A3")?)?;
    let (lattice, cx) = enumerate_complex(&rs)?;
    let gamma = lattice.top();

    // orbit of the first simple root
    let mut v = cx.vertex_of_root(rs.simple_roots()[0]).unwrap() as usize;
    let mut orbit = vec![v];
    loop {
        v = cx.rotate_vertex(&rs, gamma, v)?;
        if v == orbit[0] {
            break;
        }
        orbit.push(v);
    }
    println!("orbit of the first simple root has {} vertices", orbit.len());

    let preserved = cx
        .faces()
        .all(|f| match cx.rotate_face(&rs, gamma, &f.vertices) {
            Ok(image) => cx.is_face(&image),
            Err(_) => false,
        });
    println!("R maps faces to faces: {preserved}");

    let reaches = (0..rs.num_positive()).all(|beta| {
        let mut v = cx.vertex_of_root(beta).unwrap() as usize;
        for _ in 0..4 * cx.num_vertices() {
            v = cx.rotate_vertex(&rs, gamma, v).unwrap();
            if !rs.is_positive(cx.vertex_root(v)) {
                return true;
            }
        }
        false
    });
    println!("every positive root's orbit reaches a negated simple: {reaches}");
    Ok(())
}
