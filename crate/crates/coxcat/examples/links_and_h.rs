//! Links and h-polynomials: h(Δ) equals the lattice rank profile (the
//! Narayana numbers), and more generally the h-polynomial of every face
//! link equals the rank profile of the interval below γ·w_σ⁻¹.
//!
//! Run with: cargo run --example links_and_h

use coxcat::cluster::{counts_of, enumerate_complex, h_polynomial};
use coxcat::roots::{build_root_system, TypeSpec};

fn main() -> coxcat::CoxResult<()> {
    let rs = build_root_system(&TypeSpec::parse("B3")?)?;
    let (lattice, cx) = enumerate_complex(&rs)?;
    let n = rs.rank();

    let h = h_polynomial(&cx.face_counts(), n);
    println!("h(complex of B3)  = {h}");
    println!("lattice profile   = {}", lattice.rank_generating_poly());

    let gamma = lattice.top().clone();
    let mut checked = 0;
    for face in cx.faces() {
        let link = cx.link(&face.vertices)?;
        let h_link = h_polynomial(&counts_of(&link), n - face.vertices.len());
        let widx = cx.face_element_index(&face.vertices).unwrap() as usize;
        let u = rs.multiply(&gamma, &rs.inverse(lattice.element(widx)))?;
        let uidx = lattice
            .index_of(u.perm())
            .expect("gamma * w^-1 stays below gamma");
        assert_eq!(h_link, lattice.down_set_rank_profile(uidx as usize));
        checked += 1;
    }
    println!("link h-polynomial matches the interval profile for all {checked} faces");
    Ok(())
}
