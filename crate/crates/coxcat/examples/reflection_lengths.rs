//! Reflection length and the absolute order: lengths of reflections and
//! Coxeter elements, the rank identity defining the order, and agreement of
//! the fixed-space codimension with the Cayley-graph distance over all
//! reflections.
//!
//! Run with: cargo run --example reflection_lengths

use coxcat::roots::{build_root_system, TypeSpec};

fn main() -> coxcat::CoxResult<()> {
    let rs = build_root_system(&TypeSpec::parse("A3")?)?;
    let gamma = rs.coxeter_element();
    println!("W(A3): {} reflections", rs.num_positive());
    println!("r(identity) = {}", rs.reflection_length(&rs.identity_element()));
    println!("r(t) = {} for any reflection t", rs.reflection_length(&rs.reflection(0)?));
    println!("r(gamma) = {} (full rank)", rs.reflection_length(&gamma));

    // every reflection sits below the Coxeter element
    let below = rs
        .all_reflections()
        .iter()
        .filter(|t| rs.absolute_leq(t, &gamma))
        .count();
    println!("reflections below gamma: {below} of {}", rs.num_positive());

    // the length formula agrees with the definitional Cayley distance
    let distances = rs.cayley_reflection_distances();
    let mut checked = 0;
    for (perm, d) in &distances {
        assert_eq!(rs.reflection_length(&rs.element_from_perm(perm)?), *d);
        checked += 1;
    }
    println!("codimension formula = Cayley distance for all {checked} elements of W(A3)");
    Ok(())
}
