//! The F-triangle/M-triangle identity and the full verification battery.
//!
//! The left side (1−y)^n F((x+y)/(1−y), y/(1−y)) is expanded term by term as
//! Σ f_{k,ℓ} (x+y)^k y^ℓ (1−y)^{n−k−ℓ}, so no rational functions ever
//! appear. The right side M(−x, −y/x) is computed twice — once as the pair
//! sum Σ μ(a,b) (−x)^{r(b)−r(a)} y^{r(a)} over the lattice order, once by
//! the monomial substitution (k,ℓ) ↦ (−1)^{k+ℓ} x^{k−ℓ} y^ℓ on the
//! M-triangle — and the two routes must agree bit for bit.

use std::time::Instant;

use num_bigint::BigInt;
use rand::SeedableRng;

use crate::cluster::{
    self, assemble_lattice, counts_of, h_polynomial, ClusterComplex, DEFAULT_FACE_BUDGET,
};
use crate::error::{CoxError, CoxResult};
use crate::nclattice::NCLattice;
use crate::roots::{build_root_system, Family, RootSystem, TypeSpec};
use crate::triangles::{binomial_expand, BiPoly, BinomialBase, UniPoly};
use crate::wgroup::{compose_perms, invert_perm};

/// Fixed default seed for sampled checks; reports always record the seed.
pub const DEFAULT_SEED: u64 = 1729;

/// (1−y)^n F((x+y)/(1−y), y/(1−y)), via the polynomial expansion
/// Σ f_{k,ℓ} (x+y)^k y^ℓ (1−y)^{n−k−ℓ}.
pub fn lhs_transform(f: &BiPoly, rank: usize) -> CoxResult<BiPoly> {
    let mut out = BiPoly::zero();
    for (k, l, c) in f.terms() {
        if k + l > rank {
            return Err(CoxError::Argument(format!(
                "F-triangle has a nonzero coefficient at ({k},{l}) beyond rank {rank}"
            )));
        }
        let mut term = binomial_expand(BinomialBase::XPlusY, k);
        term = &term * &binomial_expand(BinomialBase::Y, l);
        term = &term * &binomial_expand(BinomialBase::OneMinusY, rank - k - l);
        let mut scaled = BiPoly::zero();
        for (tk, tl, tc) in term.terms() {
            scaled.add_term(tk, tl, tc * c);
        }
        out = &out + &scaled;
    }
    Ok(out)
}

/// M(−x, −y/x) straight from the lattice: Σ over pairs a ⪯ b of
/// μ(a⁻¹b) (−x)^{r(b)−r(a)} y^{r(a)}.
pub fn rhs_transform_from_lattice(lattice: &NCLattice) -> BiPoly {
    let mut out = BiPoly::zero();
    for b in 0..lattice.len() {
        let bperm = lattice.element(b).perm();
        let rb = lattice.rank_of(b);
        for a in lattice.down_set(b) {
            let quotient = compose_perms(&invert_perm(lattice.element(a).perm()), bperm);
            let q = lattice
                .index_of(&quotient)
                .expect("quotient of an ordered pair stays in the interval")
                as usize;
            let ra = lattice.rank_of(a);
            let d = rb - ra;
            let mu = BigInt::from(lattice.mobius(q));
            out.add_term(d, ra, if d % 2 == 0 { mu } else { -mu });
        }
    }
    out
}

/// M(−x, −y/x) by the monomial map on the M-triangle:
/// c·x^k y^ℓ ↦ c·(−1)^{k+ℓ} x^{k−ℓ} y^ℓ.
pub fn rhs_transform_from_m(m: &BiPoly) -> CoxResult<BiPoly> {
    let mut out = BiPoly::zero();
    for (k, l, c) in m.terms() {
        if l > k {
            return Err(CoxError::Internal(format!(
                "M-triangle coefficient at ({k},{l}) has rank(a) > rank(b)"
            )));
        }
        let signed = if (k + l) % 2 == 0 { c.clone() } else { -c.clone() };
        out.add_term(k - l, l, signed);
    }
    Ok(out)
}

/// Everything the checks need about one type, built once.
pub struct Pipeline {
    pub rs: RootSystem,
    pub factors: Vec<NCLattice>,
    pub lattice: NCLattice,
    pub complex: ClusterComplex,
    pub lattice_ms: u128,
    pub complex_ms: u128,
}

impl Pipeline {
    pub fn build(spec: &TypeSpec, budget: usize) -> CoxResult<Pipeline> {
        let rs = build_root_system(spec)?;
        Self::from_root_system(rs, budget)
    }

    pub fn from_root_system(rs: RootSystem, budget: usize) -> CoxResult<Pipeline> {
        let t0 = Instant::now();
        let factors = cluster::lattice_factors(&rs);
        let lattice = assemble_lattice(&rs, &factors);
        let lattice_ms = t0.elapsed().as_millis();
        let t1 = Instant::now();
        let complex = ClusterComplex::build(&rs, &factors, &lattice, budget)?;
        let complex_ms = t1.elapsed().as_millis();
        Ok(Pipeline {
            rs,
            factors,
            lattice,
            complex,
            lattice_ms,
            complex_ms,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SubCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl SubCheck {
    fn pass(name: &str, detail: String) -> SubCheck {
        SubCheck {
            name: name.into(),
            status: CheckStatus::Pass,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> SubCheck {
        SubCheck {
            name: name.into(),
            status: CheckStatus::Fail,
            detail,
        }
    }

    fn of(name: &str, ok: bool, detail: String) -> SubCheck {
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

/// Outcome of one type's verification.
#[derive(Debug)]
pub struct VerificationReport {
    pub type_spec: String,
    pub rank: usize,
    pub lhs: BiPoly,
    pub rhs: BiPoly,
    pub equal: bool,
    pub residual: BiPoly,
    pub sub_checks: Vec<SubCheck>,
    pub seed: u64,
    pub skipped: bool,
    pub lattice_ms: u128,
    pub complex_ms: u128,
    pub checks_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.skipped
            && self.equal
            && self.sub_checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn render_text(&self, with_timings: bool) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "TYPE {} rank={}", self.type_spec, self.rank);
        if self.skipped {
            let _ = writeln!(
                out,
                "  {:<22} SKIP   {}",
                "fm-identity", self.sub_checks[0].detail
            );
            let _ = writeln!(out, "RESULT {} SKIPPED", self.type_spec);
            return out;
        }
        let fm_status = if self.equal { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "  {:<22} {}   residual={}",
            "fm-identity", fm_status, self.residual
        );
        if !self.equal {
            let _ = writeln!(out, "    lhs = {}", self.lhs);
            let _ = writeln!(out, "    rhs = {}", self.rhs);
        }
        for c in &self.sub_checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let _ = writeln!(out, "  {:<22} {}   {}", c.name, status, c.detail);
        }
        if with_timings {
            let _ = writeln!(
                out,
                "  timings: lattice {} ms, complex {} ms, checks {} ms",
                self.lattice_ms, self.complex_ms, self.checks_ms
            );
        }
        let _ = writeln!(
            out,
            "RESULT {} {}",
            self.type_spec,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }

    pub fn to_json(&self, with_timings: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "type": self.type_spec,
            "n": self.rank,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal,
            "residual": self.residual.to_json(),
            "sub_checks": self.sub_checks,
            "seed": self.seed,
            "skipped": self.skipped,
        });
        if with_timings {
            v["timings_ms"] = serde_json::json!({
                "lattice": self.lattice_ms,
                "complex": self.complex_ms,
                "checks": self.checks_ms,
            });
        }
        v
    }
}

/// Tuning knobs for [`verify_fm`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub budget: usize,
    pub seed: u64,
    /// Link checks are exhaustive up to this many faces, sampled beyond.
    pub link_sample_threshold: usize,
    pub sample_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_FACE_BUDGET,
            seed: DEFAULT_SEED,
            link_sample_threshold: 2000,
            sample_size: 500,
        }
    }
}

/// W-Catalan number of an irreducible family (the closed-form cross-check;
/// the enumeration itself is the oracle).
pub fn catalan_number(family: &Family) -> u64 {
    fn binom(n: u64, k: u64) -> u64 {
        let mut acc: u128 = 1;
        for i in 0..k.min(n - k) {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as u64
    }
    match family {
        Family::A(n) => {
            let n = *n as u64;
            binom(2 * n + 2, n + 1) / (n + 2)
        }
        Family::B(n) => binom(2 * *n as u64, *n as u64),
        Family::D(n) => {
            let n = *n as u64;
            binom(2 * n, n) - binom(2 * n - 2, n - 1)
        }
        Family::E(6) => 833,
        Family::E(7) => 4160,
        Family::E(8) => 25080,
        Family::E(_) => unreachable!(),
        Family::F4 => 105,
        Family::G2 => 8,
        Family::H(2) => 7,
        Family::H(3) => 32,
        Family::H(4) => 280,
        Family::H(_) => unreachable!(),
        Family::I2(m) => *m as u64 + 2,
    }
}

pub fn catalan_of_spec(spec: &TypeSpec) -> u64 {
    spec.components.iter().map(catalan_number).product()
}

/// Builds the pipeline for `spec` and runs the identity plus the whole
/// battery of supporting checks. A face-budget overrun yields a SKIPPED
/// report, never a silent pass.
pub fn verify_fm(spec: &TypeSpec, opts: &VerifyOptions) -> CoxResult<VerificationReport> {
    match Pipeline::build(spec, opts.budget) {
        Ok(p) => Ok(verify_pipeline(&p, opts)),
        Err(CoxError::BudgetExceeded(b)) => Ok(VerificationReport {
            type_spec: spec.name(),
            rank: spec.rank(),
            lhs: BiPoly::zero(),
            rhs: BiPoly::zero(),
            equal: false,
            residual: BiPoly::zero(),
            sub_checks: vec![SubCheck {
                name: "fm-identity".into(),
                status: CheckStatus::Skipped,
                detail: format!("face budget {b} exceeded"),
            }],
            seed: opts.seed,
            skipped: true,
            lattice_ms: 0,
            complex_ms: 0,
            checks_ms: 0,
        }),
        Err(e) => Err(e),
    }
}

/// Runs all checks on a prebuilt pipeline.
pub fn verify_pipeline(p: &Pipeline, opts: &VerifyOptions) -> VerificationReport {
    let t0 = Instant::now();
    let rs = &p.rs;
    let lattice = &p.lattice;
    let cx = &p.complex;
    let n = rs.rank();

    let f_triangle = cx.f_triangle();
    let m_triangle = lattice.m_triangle();
    let lhs = lhs_transform(&f_triangle, n).expect("face census respects the rank bound");
    let rhs_pairs = rhs_transform_from_lattice(lattice);
    let rhs_mono = rhs_transform_from_m(&m_triangle).expect("lattice ranks are monotone");
    let residual = &lhs - &rhs_pairs;
    let equal = residual.is_zero();

    let mut checks = vec![];

    checks.push(SubCheck::of(
        "m-transform-routes",
        rhs_pairs == rhs_mono,
        "pair sum vs monomial map".into(),
    ));

    // h(Δ) = rank generating polynomial of the lattice
    let h = h_polynomial(&cx.face_counts(), n);
    let rank_gen = lattice.rank_generating_poly();
    checks.push(SubCheck::of("narayana", h == rank_gen, format!("h={h}")));

    // enumeration vs the closed-form Catalan table, and facets = |L|
    let expected_catalan = catalan_of_spec(rs.spec());
    let facets = cx.facets().len();
    checks.push(SubCheck::of(
        "catalan",
        lattice.len() as u64 == expected_catalan && facets as u64 == expected_catalan,
        format!(
            "|L|={} facets={} closed-form={}",
            lattice.len(),
            facets,
            expected_catalan
        ),
    ));

    // (−1)^{r(w)} μ(w) = facet count of the positive subcomplex, per element
    let fiber_counts = cx.positive_subcomplex_facets(lattice);
    let mut mobius_ok = true;
    let mut mobius_detail = format!("all {} elements", lattice.len());
    for w in 0..lattice.len() {
        let signed = if lattice.rank_of(w) % 2 == 0 {
            lattice.mobius(w)
        } else {
            -lattice.mobius(w)
        };
        if signed < 0 || signed as u64 != fiber_counts[w] {
            mobius_ok = false;
            mobius_detail = format!(
                "element {w}: signed mobius {signed} vs positive facet fiber {}",
                fiber_counts[w]
            );
            break;
        }
    }
    checks.push(SubCheck::of("mobius-facets", mobius_ok, mobius_detail));

    // characteristic polynomial = signed positive face counts, and both
    // transformed sides restrict to the positive face polynomial at y = 0
    let chi = lattice.characteristic_poly();
    let positive_counts = cx.positive_face_counts();
    let mut chi_ok = true;
    for k in 0..=n {
        let expected = BigInt::from(positive_counts.get(k).copied().unwrap_or(0));
        let signed = if k % 2 == 0 { expected.clone() } else { -expected };
        if chi.get(k) != signed {
            chi_ok = false;
            break;
        }
    }
    let positive_poly = UniPoly::from_coeffs(
        (0..=n)
            .map(|k| BigInt::from(positive_counts.get(k).copied().unwrap_or(0)))
            .collect(),
    );
    let chi_slice_ok =
        lhs.slice_y0() == positive_poly && rhs_pairs.slice_y0() == positive_poly;
    checks.push(SubCheck::of(
        "char-poly-positive",
        chi_ok && chi_slice_ok,
        format!("chi={chi}"),
    ));

    // link h-polynomials vs sublattice rank profiles
    checks.push(link_h_check(p, opts));

    // vertex-removal restriction (parabolic subsystems)
    checks.push(parabolic_check(p, opts));

    // rotation: orbits reach −Π, and faces map to faces
    checks.push(rotation_orbit_check(p));
    checks.push(rotation_face_check(p));

    // structural checks
    checks.push(SubCheck::pass(
        "rho-displays",
        format!(
            "{} component(s), verified at build",
            rs.components().len().max(1)
        ),
    ));
    checks.push(SubCheck::of(
        "purity",
        cx.is_pure() && facets == lattice.len(),
        format!("dimension {}", n.max(1) - 1),
    ));
    let expected_chi = if n % 2 == 1 { 2 } else { 0 };
    checks.push(SubCheck::of(
        "euler",
        cx.euler_characteristic() == expected_chi,
        format!("chi={} expected={}", cx.euler_characteristic(), expected_chi),
    ));
    checks.push(graded_check(lattice));
    checks.push(self_dual_check(lattice));

    if rs.components().len() > 1 {
        checks.push(multiplicativity_check(p, opts));
    }

    let checks_ms = t0.elapsed().as_millis();
    VerificationReport {
        type_spec: rs.spec().name(),
        rank: n,
        lhs,
        rhs: rhs_pairs,
        equal,
        residual,
        sub_checks: checks,
        seed: opts.seed,
        skipped: false,
        lattice_ms: p.lattice_ms,
        complex_ms: p.complex_ms,
        checks_ms,
    }
}

/// Sampled or exhaustive face indices for a check, deterministic in the seed.
fn face_sample(num_faces: usize, opts: &VerifyOptions) -> (Vec<usize>, String) {
    if num_faces <= opts.link_sample_threshold {
        (
            (0..num_faces).collect(),
            format!("exhaustive over {num_faces} faces"),
        )
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
        let mut idx = rand::seq::index::sample(&mut rng, num_faces, opts.sample_size).into_vec();
        idx.sort_unstable();
        (
            idx,
            format!(
                "sampled {} of {num_faces} faces, seed={}",
                opts.sample_size, opts.seed
            ),
        )
    }
}

/// h(link(σ), n−|σ|) must equal the rank profile of [1, γ·w_σ⁻¹].
fn link_h_check(p: &Pipeline, opts: &VerifyOptions) -> SubCheck {
    let cx = &p.complex;
    let lattice = &p.lattice;
    let n = p.rs.rank();
    let all_faces: Vec<&cluster::Face> = cx.faces().collect();
    let (sample, mode) = face_sample(all_faces.len(), opts);
    let gamma_perm = lattice.top().perm().to_vec();
    for fi in sample {
        let face = all_faces[fi];
        let link = match cx.link(&face.vertices) {
            Ok(l) => l,
            Err(e) => return SubCheck::fail("link-h-profile", format!("link failed: {e}")),
        };
        let h = h_polynomial(&counts_of(&link), n - face.vertices.len());
        let widx = cx
            .face_element_index(&face.vertices)
            .expect("face has an element");
        let u = compose_perms(&gamma_perm, &invert_perm(lattice.element(widx as usize).perm()));
        let Some(uidx) = lattice.index_of(&u) else {
            return SubCheck::fail("link-h-profile", "γ·w_σ⁻¹ is not in the lattice".into());
        };
        let profile = lattice.down_set_rank_profile(uidx as usize);
        if h != profile {
            return SubCheck::fail(
                "link-h-profile",
                format!(
                    "face {:?}: h(link)={h} but interval profile={profile}",
                    face.vertices
                ),
            );
        }
    }
    SubCheck::pass("link-h-profile", mode)
}

/// Faces containing a negated simple root −α correspond exactly to faces of
/// the complex of the parabolic subsystem with α removed.
fn parabolic_check(p: &Pipeline, opts: &VerifyOptions) -> SubCheck {
    let rs = &p.rs;
    let cx = &p.complex;
    let name = "parabolic-vertex";
    for pos in 0..rs.rank() {
        let alpha = rs.simple_roots()[pos];
        let neg_vertex = match cx.vertex_of_root(rs.negate(alpha)) {
            Some(v) => v,
            None => return SubCheck::fail(name, format!("missing vertex for −α at {pos}")),
        };
        let restriction = match rs.standard_parabolic(&[pos]) {
            Ok(r) => r,
            Err(e) => return SubCheck::fail(name, format!("restriction failed: {e}")),
        };
        let sub_pipeline = match Pipeline::from_root_system(restriction.subsystem, opts.budget) {
            Ok(sp) => sp,
            Err(e) => return SubCheck::fail(name, format!("sub-pipeline failed: {e}")),
        };
        let sub_cx = &sub_pipeline.complex;
        // parent root -> sub root
        let mut to_sub = std::collections::HashMap::new();
        for (sub_root, &parent_root) in restriction.root_map.iter().enumerate() {
            to_sub.insert(parent_root, sub_root);
        }

        // forward: σ ∋ −α implies σ∖{−α} is a face of the subsystem
        for face in cx.faces() {
            if !face.vertices.contains(&neg_vertex) {
                continue;
            }
            let mut sub_face = vec![];
            let mut ok = true;
            for &v in &face.vertices {
                if v == neg_vertex {
                    continue;
                }
                let parent_root = cx.vertex_root(v as usize);
                match to_sub
                    .get(&parent_root)
                    .and_then(|&r| sub_cx.vertex_of_root(r))
                {
                    Some(sv) => sub_face.push(sv),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            sub_face.sort_unstable();
            if !ok || !sub_cx.is_face(&sub_face) {
                return SubCheck::fail(
                    name,
                    format!("face {:?} minus −α is not a subsystem face", face.vertices),
                );
            }
        }

        // converse: every subsystem face extends by −α to a parent face
        for sub_face in sub_cx.faces() {
            let mut parent = vec![neg_vertex];
            for &sv in &sub_face.vertices {
                let sub_root = sub_cx.vertex_root(sv as usize);
                let parent_root = restriction.root_map[sub_root];
                match cx.vertex_of_root(parent_root) {
                    Some(v) => parent.push(v),
                    None => {
                        return SubCheck::fail(name, "subsystem vertex missing upstairs".into())
                    }
                }
            }
            parent.sort_unstable();
            if !cx.is_face(&parent) {
                return SubCheck::fail(
                    name,
                    format!(
                        "subsystem face {:?} does not extend by −α",
                        sub_face.vertices
                    ),
                );
            }
        }
    }
    SubCheck::pass(
        name,
        format!("all {} simple roots, both directions", rs.rank()),
    )
}

/// Iterating the rotation from any positive root reaches a negated simple.
fn rotation_orbit_check(p: &Pipeline) -> SubCheck {
    let rs = &p.rs;
    let cx = &p.complex;
    let gamma = p.lattice.top();
    let limit = 4 * (cx.num_vertices() + 2);
    for beta in 0..rs.num_positive() {
        let Some(start) = cx.vertex_of_root(beta) else {
            return SubCheck::fail("rotation-orbits", format!("root {beta} has no vertex"));
        };
        let mut v = start as usize;
        let mut reached = false;
        for _ in 0..limit {
            v = match cx.rotate_vertex(rs, gamma, v) {
                Ok(next) => next,
                Err(e) => return SubCheck::fail("rotation-orbits", e.to_string()),
            };
            if !rs.is_positive(cx.vertex_root(v)) {
                reached = true;
                break;
            }
        }
        if !reached {
            return SubCheck::fail(
                "rotation-orbits",
                format!("orbit of root {beta} never reaches −Π"),
            );
        }
    }
    SubCheck::pass(
        "rotation-orbits",
        format!("all {} positive roots", rs.num_positive()),
    )
}

/// σ is a face iff R(σ) is (R is a bijection of the vertex set, so checking
/// the forward direction over all faces suffices).
fn rotation_face_check(p: &Pipeline) -> SubCheck {
    let cx = &p.complex;
    let gamma = p.lattice.top();
    for face in cx.faces() {
        match cx.rotate_face(&p.rs, gamma, &face.vertices) {
            Ok(image) => {
                if !cx.is_face(&image) {
                    return SubCheck::fail(
                        "rotation-faces",
                        format!("face {:?} rotates out of the complex", face.vertices),
                    );
                }
            }
            Err(e) => return SubCheck::fail("rotation-faces", e.to_string()),
        }
    }
    SubCheck::pass(
        "rotation-faces",
        format!("exhaustive over {} faces", cx.num_faces()),
    )
}

fn graded_check(lattice: &NCLattice) -> SubCheck {
    for &(lo, hi) in lattice.covers() {
        if lattice.rank_of(hi as usize) != lattice.rank_of(lo as usize) + 1 {
            return SubCheck::fail("graded", "cover step is not rank +1".into());
        }
    }
    let top = lattice.len() - 1;
    for i in 0..lattice.len() {
        if lattice.rank_of(i) < lattice.rank_top()
            && !lattice.covers().iter().any(|&(lo, _)| lo as usize == i)
        {
            return SubCheck::fail("graded", format!("element {i} has no upward cover"));
        }
    }
    SubCheck::of(
        "graded",
        lattice.rank_of(top) == lattice.rank_top() && lattice.rank_of(0) == 0,
        format!("rank {}", lattice.rank_top()),
    )
}

fn self_dual_check(lattice: &NCLattice) -> SubCheck {
    let dual = match lattice.duality_map() {
        Ok(d) => d,
        Err(e) => return SubCheck::fail("self-dual", e.to_string()),
    };
    let mut seen = vec![false; lattice.len()];
    for (i, &img) in dual.iter().enumerate() {
        if std::mem::replace(&mut seen[img as usize], true) {
            return SubCheck::fail("self-dual", "w ↦ w⁻¹γ is not injective".into());
        }
        if lattice.rank_of(img as usize) != lattice.rank_top() - lattice.rank_of(i) {
            return SubCheck::fail("self-dual", "duality does not reverse rank".into());
        }
    }
    for b in 0..lattice.len() {
        for a in lattice.down_set(b) {
            // a ⪯ b must flip to b* ⪯ a*
            if !lattice.leq(dual[b] as usize, dual[a] as usize) {
                return SubCheck::fail("self-dual", "duality does not reverse order".into());
            }
        }
    }
    SubCheck::pass("self-dual", "bijective, rank- and order-reversing".into())
}

/// For reducible types, F, M and the transformed sides must be the products
/// of the components' polynomials.
fn multiplicativity_check(p: &Pipeline, opts: &VerifyOptions) -> SubCheck {
    let name = "multiplicative";
    let mut f_prod = BiPoly::one();
    let mut m_prod = BiPoly::one();
    let mut lhs_prod = BiPoly::one();
    for family in &p.rs.spec().components {
        let comp_spec = TypeSpec {
            components: vec![family.clone()],
        };
        let comp = match Pipeline::build(&comp_spec, opts.budget) {
            Ok(c) => c,
            Err(e) => return SubCheck::fail(name, format!("component build failed: {e}")),
        };
        let f = comp.complex.f_triangle();
        let lhs = lhs_transform(&f, comp.rs.rank()).expect("component face census in range");
        f_prod = &f_prod * &f;
        m_prod = &m_prod * &comp.lattice.m_triangle();
        lhs_prod = &lhs_prod * &lhs;
    }
    let ok = f_prod == p.complex.f_triangle()
        && m_prod == p.lattice.m_triangle()
        && lhs_prod == lhs_transform(&p.complex.f_triangle(), p.rs.rank()).unwrap();
    SubCheck::of(name, ok, "F, M and transforms multiply over components".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str) -> TypeSpec {
        TypeSpec::parse(name).unwrap()
    }

    #[test]
    fn lhs_transform_trivial_cases() {
        assert_eq!(lhs_transform(&BiPoly::one(), 0).unwrap(), BiPoly::one());
        // F_{A1} = 1 + x + y maps to itself at n = 1
        let f = &(&BiPoly::one() + &BiPoly::monomial(1, 0, 1)) + &BiPoly::monomial(0, 1, 1);
        assert_eq!(lhs_transform(&f, 1).unwrap(), f);
    }

    #[test]
    fn lhs_transform_rejects_out_of_range() {
        let f = BiPoly::monomial(2, 1, 1);
        assert!(lhs_transform(&f, 2).is_err());
    }

    #[test]
    fn rhs_monomial_map_a1() {
        // M_{A1} = 1 − x + xy ↦ 1 + x + y
        let m = &(&BiPoly::one() - &BiPoly::monomial(1, 0, 1)) + &BiPoly::monomial(1, 1, 1);
        let rhs = rhs_transform_from_m(&m).unwrap();
        let expected =
            &(&BiPoly::one() + &BiPoly::monomial(1, 0, 1)) + &BiPoly::monomial(0, 1, 1);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn rhs_routes_agree_on_small_types() {
        for name in ["A1", "A2", "A3", "B2", "B3", "I2(5)", "A1xA2"] {
            let p = Pipeline::build(&spec(name), DEFAULT_FACE_BUDGET).unwrap();
            let from_pairs = rhs_transform_from_lattice(&p.lattice);
            let from_m = rhs_transform_from_m(&p.lattice.m_triangle()).unwrap();
            assert_eq!(from_pairs, from_m, "{name}");
        }
    }

    #[test]
    fn a1_identity_both_sides() {
        let p = Pipeline::build(&spec("A1"), DEFAULT_FACE_BUDGET).unwrap();
        let lhs = lhs_transform(&p.complex.f_triangle(), 1).unwrap();
        let rhs = rhs_transform_from_lattice(&p.lattice);
        let expected =
            &(&BiPoly::one() + &BiPoly::monomial(1, 0, 1)) + &BiPoly::monomial(0, 1, 1);
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn a2_identity() {
        let p = Pipeline::build(&spec("A2"), DEFAULT_FACE_BUDGET).unwrap();
        let lhs = lhs_transform(&p.complex.f_triangle(), 2).unwrap();
        let rhs = rhs_transform_from_lattice(&p.lattice);
        assert_eq!(lhs, rhs);
        // 1 + 3x + 3y + 2x² + 3xy + y²
        assert_eq!(lhs.get(0, 0), BigInt::from(1));
        assert_eq!(lhs.get(1, 0), BigInt::from(3));
        assert_eq!(lhs.get(0, 1), BigInt::from(3));
        assert_eq!(lhs.get(2, 0), BigInt::from(2));
        assert_eq!(lhs.get(1, 1), BigInt::from(3));
        assert_eq!(lhs.get(0, 2), BigInt::from(1));
    }

    #[test]
    fn constant_term_is_always_one() {
        for name in ["A1", "B2", "I2(7)", "A1xA1"] {
            let p = Pipeline::build(&spec(name), DEFAULT_FACE_BUDGET).unwrap();
            let lhs = lhs_transform(&p.complex.f_triangle(), p.rs.rank()).unwrap();
            assert_eq!(lhs.get(0, 0), BigInt::from(1), "{name}");
        }
    }

    #[test]
    fn verify_small_types_pass() {
        for name in ["A1", "A2", "B2", "A3", "I2(7)", "A1xA2"] {
            let report = verify_fm(&spec(name), &VerifyOptions::default()).unwrap();
            assert!(report.passed(), "{name}:\n{}", report.render_text(false));
        }
    }

    #[test]
    fn catalan_table() {
        assert_eq!(catalan_number(&Family::A(3)), 14);
        assert_eq!(catalan_number(&Family::B(4)), 70);
        assert_eq!(catalan_number(&Family::D(4)), 50);
        assert_eq!(catalan_number(&Family::H(3)), 32);
        assert_eq!(catalan_number(&Family::I2(9)), 11);
        assert_eq!(catalan_of_spec(&spec("A2xB2")), 30);
    }

    #[test]
    fn budget_overrun_reports_skipped() {
        let report = verify_fm(
            &spec("A3"),
            &VerifyOptions {
                budget: 3,
                ..VerifyOptions::default()
            },
        )
        .unwrap();
        assert!(report.skipped);
        assert!(!report.passed());
        assert!(report.render_text(false).contains("SKIP"));
    }

    #[test]
    fn multiplicativity_of_reducible_reports() {
        let report = verify_fm(&spec("A1xA2"), &VerifyOptions::default()).unwrap();
        assert!(report
            .sub_checks
            .iter()
            .any(|c| c.name == "multiplicative" && c.status == CheckStatus::Pass));
    }
}
