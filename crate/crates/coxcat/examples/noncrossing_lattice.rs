//! The noncrossing partition lattice of B3: ranks, Möbius vector,
//! M-triangle, characteristic polynomial, and the self-duality w ↦ w⁻¹γ.
//!
//! Run with: cargo run --example noncrossing_lattice

use coxcat::nclattice::noncrossing_lattice;
use coxcat::roots::{build_root_system, TypeSpec};
use coxcat::triangles::unipoly_display;

fn main() -> coxcat::CoxResult<()> {
    let rs = build_root_system(&TypeSpec::parse("B3")?)?;
    let lattice = noncrossing_lattice(&rs);

    println!("L(B3): {} elements, rank {}", lattice.len(), lattice.rank_top());
    println!("rank profile: {}", lattice.rank_generating_poly());
    println!("mobius of top: {}", lattice.mobius(lattice.len() - 1));
    println!("characteristic polynomial: {}", unipoly_display(&lattice.characteristic_poly(), "q"));
    println!("M-triangle: {}", lattice.m_triangle());

    let dual = lattice.duality_map()?;
    let reversed = (0..lattice.len())
        .all(|i| lattice.rank_of(dual[i] as usize) == lattice.rank_top() - lattice.rank_of(i));
    println!("w -> w^-1 gamma reverses every rank: {reversed}");
    Ok(())
}
