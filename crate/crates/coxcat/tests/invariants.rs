//! Cross-module invariants: backend agreement for the dihedral family,
//! interval-order identities on whole groups, and the positive-face link
//! expansion that ties the two transformed sides together.

use num_bigint::BigInt;

use coxcat::cluster::{counts_of, enumerate_complex, h_polynomial};
use coxcat::identity::{lhs_transform, Pipeline};
use coxcat::nclattice::noncrossing_lattice;
use coxcat::roots::{build_dihedral, build_root_system, TypeSpec};
use coxcat::triangles::BiPoly;

fn spec(name: &str) -> TypeSpec {
    TypeSpec::parse(name).unwrap()
}

#[test]
fn dihedral_and_geometric_backends_agree() {
    // I2(3), I2(4), I2(5), I2(6) build geometrically by default; the
    // coordinate-free dihedral model must produce the same combinatorics.
    for m in 3..=6 {
        let geometric = build_root_system(&spec(&format!("I2({m})"))).unwrap();
        let dihedral = build_dihedral(m).unwrap();
        assert_eq!(geometric.num_positive(), dihedral.num_positive(), "m={m}");

        let (gl, gcx) = enumerate_complex(&geometric).unwrap();
        let (dl, dcx) = enumerate_complex(&dihedral).unwrap();
        assert_eq!(gl.len(), dl.len(), "m={m}: lattice size");
        assert_eq!(
            gl.rank_generating_poly(),
            dl.rank_generating_poly(),
            "m={m}: rank profile"
        );
        assert_eq!(gl.m_triangle(), dl.m_triangle(), "m={m}: M-triangle");
        assert_eq!(
            gl.characteristic_poly(),
            dl.characteristic_poly(),
            "m={m}: characteristic polynomial"
        );
        assert_eq!(gcx.f_kl(), dcx.f_kl(), "m={m}: face census");
        assert_eq!(gcx.f_triangle(), dcx.f_triangle(), "m={m}: F-triangle");
        assert_eq!(
            gcx.euler_characteristic(),
            dcx.euler_characteristic(),
            "m={m}: Euler"
        );
        assert_eq!(
            h_polynomial(&gcx.face_counts(), 2),
            h_polynomial(&dcx.face_counts(), 2),
            "m={m}: h-polynomial"
        );
    }
}

#[test]
fn dihedral_lattice_shape() {
    // 1, the m reflections, and the rotation γ: m + 2 elements
    for m in [3, 5, 7, 10, 12] {
        let rs = build_dihedral(m).unwrap();
        let l = noncrossing_lattice(&rs);
        assert_eq!(l.len(), m + 2, "m={m}");
        let atoms = (0..l.len()).filter(|&i| l.rank_of(i) == 1).count();
        assert_eq!(atoms, m, "m={m}");
    }
}

#[test]
fn length_constant_on_conjugacy_classes_sampled() {
    for name in ["H3", "A4"] {
        let rs = build_root_system(&spec(name)).unwrap();
        let group = rs.full_group();
        for u in group.iter().step_by(7) {
            let lu = rs.reflection_length(u);
            for w in group.iter().step_by(11) {
                let conj = rs
                    .multiply(&rs.multiply(w, u).unwrap(), &rs.inverse(w))
                    .unwrap();
                assert_eq!(rs.reflection_length(&conj), lu, "{name}");
            }
        }
    }
}

#[test]
fn shifted_interval_criterion_on_b3() {
    // a ⪯ aw ⪯ b iff a ⪯ bw⁻¹ ⪯ b, sampled across W(B3)
    let rs = build_root_system(&spec("B3")).unwrap();
    let group = rs.full_group();
    for a in group.iter().step_by(5) {
        for w in group.iter().step_by(7) {
            for b in group.iter().step_by(5) {
                let aw = rs.multiply(a, w).unwrap();
                let bw_inv = rs.multiply(b, &rs.inverse(w)).unwrap();
                let lhs = rs.absolute_leq(a, &aw) && rs.absolute_leq(&aw, b);
                let rhs = rs.absolute_leq(a, &bw_inv) && rs.absolute_leq(&bw_inv, b);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn positive_face_link_expansion_matches_lhs() {
    // the transformed F side also equals Σ over positive faces σ of
    // x^{|σ|} · h(link(σ), n − |σ|)
    for name in ["A2", "B2", "A3", "A1xA2"] {
        let p = Pipeline::build(&spec(name), 10_000_000).unwrap();
        let n = p.rs.rank();
        let mut expansion = BiPoly::zero();
        for face in p.complex.faces() {
            if face.l != 0 {
                continue;
            }
            let link = p.complex.link(&face.vertices).unwrap();
            let h = h_polynomial(&counts_of(&link), n - face.vertices.len());
            for (j, c) in h.coeffs().iter().enumerate() {
                expansion.add_term(face.vertices.len(), j, c.clone());
            }
        }
        let lhs = lhs_transform(&p.complex.f_triangle(), n).unwrap();
        assert_eq!(expansion, lhs, "{name}");
    }
}

#[test]
fn lattice_sizes_match_frozen_table() {
    for (name, size) in [
        ("A4", 42),
        ("A5", 132),
        ("B4", 70),
        ("B5", 252),
        ("D4", 50),
        ("D5", 182),
        ("F4", 105),
        ("H3", 32),
        ("E6", 833),
    ] {
        let rs = build_root_system(&spec(name)).unwrap();
        let l = noncrossing_lattice(&rs);
        assert_eq!(l.len(), size, "{name}");
    }
}

#[test]
fn mobius_alternates_in_sign_with_rank() {
    for name in ["A3", "B3", "H3", "D4"] {
        let rs = build_root_system(&spec(name)).unwrap();
        let l = noncrossing_lattice(&rs);
        for i in 0..l.len() {
            let m = BigInt::from(l.mobius(i));
            let sign_ok = if l.rank_of(i) % 2 == 0 {
                m > BigInt::from(0)
            } else {
                m < BigInt::from(0)
            };
            assert!(sign_ok, "{name}: μ({i}) = {m} at rank {}", l.rank_of(i));
        }
    }
}

#[test]
fn parabolic_restriction_composition_count() {
    // restricting by σ then τ equals restricting by σ ∪ τ on a bigger type
    let rs = build_root_system(&spec("D4")).unwrap();
    let via_steps = {
        let s1 = rs.standard_parabolic(&[1]).unwrap();
        let s2 = s1.subsystem.standard_parabolic(&[0]).unwrap();
        s2.subsystem
    };
    let direct = rs.standard_parabolic(&[0, 1]).unwrap().subsystem;
    assert_eq!(via_steps.rank(), direct.rank());
    assert_eq!(via_steps.num_positive(), direct.num_positive());
    let (la, lb) = (noncrossing_lattice(&via_steps), noncrossing_lattice(&direct));
    assert_eq!(la.rank_generating_poly(), lb.rank_generating_poly());
}
