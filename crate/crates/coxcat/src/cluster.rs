//! The cluster complex in its reflection-ordering model: vertices are the
//! positive roots together with the negated simple roots, ordered by the
//! ρ-sequence of a bipartite Coxeter element, and a vertex set is a face
//! exactly when the product of its reflections in descending ρ-order lands
//! in the noncrossing partition lattice at rank equal to the set size.
//!
//! Reducible systems are simplicial joins of their components' complexes;
//! the face element is then the (commuting) product of the per-component
//! face elements.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{CoxError, CoxResult};
use crate::nclattice::{
    component_coxeter_element, enumerate_interval, product_lattice, NCLattice,
};
use crate::roots::RootSystem;
use crate::triangles::{BiPoly, UniPoly};
use crate::wgroup::{compose_perms, invert_perm, GroupElement};

/// Default cap on the number of faces materialized by one enumeration.
pub const DEFAULT_FACE_BUDGET: usize = 10_000_000;

/// The ρ-sequence of one irreducible component: the vertex table of its
/// cluster complex in ascending ρ-index order.
#[derive(Clone, Debug)]
pub struct RhoSequence {
    /// |Π₊| of the component.
    s: usize,
    /// Number of positive roots of the component.
    num_positive: usize,
    /// Rank of the component.
    rank: usize,
    /// Vertex id (0..N+n) -> global root index, ascending by ρ-index.
    vertex_roots: Vec<usize>,
}

impl RhoSequence {
    /// Builds and verifies the sequence for component `ci` of `rs`.
    ///
    /// ρ_i = t_{α₁}⋯t_{α_{i−1}}(α_i) with the class-ordered simple roots
    /// (Π₊ first, then Π₋) indexed cyclically; ρ_{−i} = ρ_{2N−i}. The three
    /// defining identities are checked and any failure aborts the build.
    pub fn build(rs: &RootSystem, ci: usize) -> CoxResult<RhoSequence> {
        let comp = &rs.components()[ci];
        let n = comp.rank;
        let s = comp.plus.len();
        let n_pos = comp.num_positive;

        // class-ordered simple roots as global root indices
        let simples: Vec<usize> = comp
            .plus
            .iter()
            .chain(comp.minus.iter())
            .map(|&sp| comp.pos_offset + comp.simple_local[sp])
            .collect();
        let t_perms: Vec<&[u16]> = simples
            .iter()
            .map(|&root| rs.reflection_perm(root))
            .collect();

        // rho[j] for j = 1..=2N, as global root indices
        let mut rho = vec![0usize; 2 * n_pos + 1];
        let mut prefix: Vec<u16> = (0..rs.num_roots() as u16).collect();
        for j in 1..=2 * n_pos {
            let alpha = simples[(j - 1) % n];
            rho[j] = prefix[alpha] as usize;
            prefix = compose_perms(&prefix, t_perms[(j - 1) % n]);
        }

        // {ρ₁..ρ_N} = Φ⁺ of the component
        let mut seen = vec![false; n_pos];
        for &r in &rho[1..=n_pos] {
            if !rs.is_positive(r) || r < comp.pos_offset || r >= comp.pos_offset + n_pos {
                return Err(CoxError::Internal(
                    "rho sequence escaped the component's positive roots".into(),
                ));
            }
            if std::mem::replace(&mut seen[r - comp.pos_offset], true) {
                return Err(CoxError::Internal(
                    "rho sequence repeats a positive root".into(),
                ));
            }
        }

        // {ρ_{N+i} : 1 ≤ i ≤ s} = {−ρ₁, …, −ρ_s} = −Π₊ (set equalities)
        {
            let mut mid: Vec<usize> = (1..=s).map(|i| rho[n_pos + i]).collect();
            let mut neg_heads: Vec<usize> = (1..=s).map(|i| rs.negate(rho[i])).collect();
            let mut neg_plus: Vec<usize> =
                simples[..s].iter().map(|&r| rs.negate(r)).collect();
            mid.sort_unstable();
            neg_heads.sort_unstable();
            neg_plus.sort_unstable();
            if mid != neg_heads || mid != neg_plus {
                return Err(CoxError::Internal(
                    "rho sequence block N+1..N+s is not the negated plus class".into(),
                ));
            }
        }

        // {ρ_{2N−i} : 0 ≤ i < n−s} = −Π₋
        let mut tail: Vec<usize> = (0..n - s).map(|i| rho[2 * n_pos - i]).collect();
        let mut expected: Vec<usize> = simples[s..].iter().map(|&r| rs.negate(r)).collect();
        tail.sort_unstable();
        expected.sort_unstable();
        if tail != expected {
            return Err(CoxError::Internal(
                "rho sequence tail is not the negated minus class".into(),
            ));
        }

        // vertex table: ρ_{−(n−s−1)}, …, ρ₀, ρ₁, …, ρ_{N+s}
        let mut vertex_roots = Vec::with_capacity(n_pos + n);
        for i in (0..n - s).rev() {
            vertex_roots.push(rho[2 * n_pos - i]);
        }
        vertex_roots.extend_from_slice(&rho[1..=n_pos + s]);
        debug_assert_eq!(vertex_roots.len(), n_pos + n);

        Ok(RhoSequence {
            s,
            num_positive: n_pos,
            rank: n,
            vertex_roots,
        })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn len(&self) -> usize {
        self.vertex_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_roots.is_empty()
    }

    /// Global root index of a local vertex id.
    pub fn root_of(&self, vertex: usize) -> usize {
        self.vertex_roots[vertex]
    }

    /// Signed ρ-index of a local vertex id (…, −1, 0, 1, …, N+s).
    pub fn rho_index(&self, vertex: usize) -> i64 {
        vertex as i64 - (self.rank as i64 - self.s as i64) + 1
    }

    /// Local vertex id carrying ρ-index j.
    pub fn vertex_at(&self, j: i64) -> usize {
        usize::try_from(j + self.rank as i64 - self.s as i64 - 1).expect("rho index in range")
    }
}

/// The ρ-sequence of an irreducible root system.
pub fn rho_sequence(rs: &RootSystem) -> CoxResult<RhoSequence> {
    if rs.components().len() != 1 {
        return Err(CoxError::Argument(
            "rho sequence is defined per irreducible component".into(),
        ));
    }
    RhoSequence::build(rs, 0)
}

/// A face: ascending vertex ids, with its counts of positive-root vertices
/// (k) and negative-simple vertices (ℓ).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<u16>,
    pub k: usize,
    pub l: usize,
}

/// Vertex classes of the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    PositiveRoot,
    NegativeSimple,
}

/// The cluster complex of a root system, together with the map from faces
/// to lattice elements and the bivariate face census.
pub struct ClusterComplex {
    rank: usize,
    /// Per-component ρ-sequences, component order.
    rho: Vec<RhoSequence>,
    /// Vertex id -> (component, global root index).
    vertices: Vec<(usize, usize)>,
    /// Global root index -> vertex id.
    root_to_vertex: HashMap<usize, u16>,
    /// Faces grouped by size (0..=n), each group sorted.
    faces_by_size: Vec<Vec<Face>>,
    /// Face vertex list -> index of w_σ in the lattice.
    face_w: HashMap<Vec<u16>, u32>,
    /// f_{k,ℓ} counts, (n+1)×(n+1).
    f_kl: Vec<Vec<u64>>,
}

/// Builds the lattice factor [1, γ_i] of every component.
pub fn lattice_factors(rs: &RootSystem) -> Vec<NCLattice> {
    (0..rs.components().len())
        .map(|ci| enumerate_interval(rs, &component_coxeter_element(rs, ci)))
        .collect()
}

/// Assembles the full lattice from its component factors.
pub fn assemble_lattice(rs: &RootSystem, factors: &[NCLattice]) -> NCLattice {
    if factors.len() == 1 {
        enumerate_interval(rs, factors[0].top())
    } else {
        product_lattice(rs, factors)
    }
}

/// Convenience entry point: lattice and complex with the default budget.
pub fn enumerate_complex(rs: &RootSystem) -> CoxResult<(NCLattice, ClusterComplex)> {
    let factors = lattice_factors(rs);
    let full = assemble_lattice(rs, &factors);
    let cx = ClusterComplex::build(rs, &factors, &full, DEFAULT_FACE_BUDGET)?;
    Ok((full, cx))
}

impl ClusterComplex {
    /// Enumerates all faces by depth-first extension in ascending vertex id,
    /// pruning on the face predicate (sound because faces are subset-closed).
    /// `factors` are the per-component intervals, `full` the assembled
    /// lattice the face elements index into.
    pub fn build(
        rs: &RootSystem,
        factors: &[NCLattice],
        full: &NCLattice,
        budget: usize,
    ) -> CoxResult<ClusterComplex> {
        let n = rs.rank();
        let n_comp = rs.components().len();
        let mut rho = Vec::with_capacity(n_comp);
        for ci in 0..n_comp {
            rho.push(RhoSequence::build(rs, ci)?);
        }

        let mut vertices = vec![];
        let mut root_to_vertex = HashMap::new();
        for (ci, r) in rho.iter().enumerate() {
            for v in 0..r.len() {
                let root = r.root_of(v);
                root_to_vertex.insert(root, vertices.len() as u16);
                vertices.push((ci, root));
            }
        }

        // per-component face lists: (local vertex ids, factor element index)
        let mut component_faces: Vec<Vec<(Vec<u16>, u32)>> = Vec::with_capacity(n_comp);
        for (ci, r) in rho.iter().enumerate() {
            let mut faces = vec![(vec![], 0u32)];
            let identity: Vec<u16> = (0..rs.num_roots() as u16).collect();
            dfs_extend(rs, r, &factors[ci], &mut vec![], &identity, 0, budget, &mut faces)?;
            faces.sort();
            component_faces.push(faces);
        }

        // join: cartesian product across components
        let vertex_offsets: Vec<u16> = {
            let mut offs = vec![0u16];
            for r in &rho {
                offs.push(offs.last().unwrap() + r.len() as u16);
            }
            offs
        };
        let mut joined: Vec<(Vec<u16>, Vec<u16>)> =
            vec![(vec![], (0..rs.num_roots() as u16).collect())];
        for (ci, faces) in component_faces.iter().enumerate() {
            let mut next = Vec::with_capacity(joined.len() * faces.len());
            for (base_verts, base_perm) in &joined {
                for (local_verts, fidx) in faces {
                    let mut verts = base_verts.clone();
                    verts.extend(local_verts.iter().map(|&v| v + vertex_offsets[ci]));
                    let perm =
                        compose_perms(base_perm, factors[ci].element(*fidx as usize).perm());
                    next.push((verts, perm));
                }
                if next.len() > budget {
                    return Err(CoxError::BudgetExceeded(budget));
                }
            }
            joined = next;
        }

        let mut faces_by_size: Vec<Vec<Face>> = vec![vec![]; n + 1];
        let mut face_w = HashMap::with_capacity(joined.len());
        let mut f_kl = vec![vec![0u64; n + 1]; n + 1];
        for (verts, perm) in joined {
            let idx = full.index_of(&perm).ok_or_else(|| {
                CoxError::Internal("face element missing from the lattice".into())
            })?;
            let k = verts
                .iter()
                .filter(|&&v| rs.is_positive(vertices[v as usize].1))
                .count();
            let l = verts.len() - k;
            f_kl[k][l] += 1;
            face_w.insert(verts.clone(), idx);
            faces_by_size[verts.len()].push(Face { vertices: verts, k, l });
        }
        for group in &mut faces_by_size {
            group.sort();
        }

        Ok(ClusterComplex {
            rank: n,
            rho,
            vertices,
            root_to_vertex,
            faces_by_size,
            face_w,
            f_kl,
        })
    }

    /// Ambient rank n; the complex is pure of dimension n−1.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn rho_sequences(&self) -> &[RhoSequence] {
        &self.rho
    }

    /// Global root index of a vertex id.
    pub fn vertex_root(&self, v: usize) -> usize {
        self.vertices[v].1
    }

    pub fn vertex_of_root(&self, root: usize) -> Option<u16> {
        self.root_to_vertex.get(&root).copied()
    }

    pub fn vertex_class(&self, rs: &RootSystem, v: usize) -> VertexClass {
        if rs.is_positive(self.vertices[v].1) {
            VertexClass::PositiveRoot
        } else {
            VertexClass::NegativeSimple
        }
    }

    pub fn faces_by_size(&self) -> &[Vec<Face>] {
        &self.faces_by_size
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces_by_size.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.faces_by_size.iter().map(Vec::len).sum()
    }

    /// Face counts by vertex count: entry i is the number of faces with i
    /// vertices (dimension i−1); entry 0 is 1 for the empty face.
    pub fn face_counts(&self) -> Vec<usize> {
        self.faces_by_size.iter().map(Vec::len).collect()
    }

    pub fn facets(&self) -> &[Face] {
        &self.faces_by_size[self.rank]
    }

    pub fn is_face(&self, vertices: &[u16]) -> bool {
        self.face_w.contains_key(vertices)
    }

    /// Lattice index of w_σ for a face.
    pub fn face_element_index(&self, vertices: &[u16]) -> Option<u32> {
        self.face_w.get(vertices).copied()
    }

    /// w_σ for an arbitrary vertex set (face or not): the product of the
    /// vertex reflections in descending ρ-index order within each component,
    /// component factors multiplied left to right.
    pub fn face_element(&self, rs: &RootSystem, vertices: &[u16]) -> CoxResult<GroupElement> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(CoxError::Argument("face has repeated vertices".into()));
        }
        Ok(GroupElement::from_perm(face_product(
            rs,
            &self.vertices,
            self.rho.len(),
            &sorted,
        )))
    }

    /// F(x, y) = Σ f_{k,ℓ} x^k y^ℓ.
    pub fn f_triangle(&self) -> BiPoly {
        let mut f = BiPoly::zero();
        for (k, row) in self.f_kl.iter().enumerate() {
            for (l, &c) in row.iter().enumerate() {
                if c != 0 {
                    f.add_term(k, l, BigInt::from(c));
                }
            }
        }
        f
    }

    pub fn f_kl(&self) -> &[Vec<u64>] {
        &self.f_kl
    }

    /// The link of a face: all τ∖σ over faces τ ⊇ σ, grouped by size.
    pub fn link(&self, sigma: &[u16]) -> CoxResult<Vec<Vec<Vec<u16>>>> {
        if !self.is_face(sigma) {
            return Err(CoxError::Argument("link of a non-face".into()));
        }
        let mut by_size: Vec<Vec<Vec<u16>>> = vec![vec![]; self.rank + 1 - sigma.len()];
        for tau in self.faces() {
            if sigma.iter().all(|v| tau.vertices.contains(v)) {
                let rest: Vec<u16> = tau
                    .vertices
                    .iter()
                    .copied()
                    .filter(|v| !sigma.contains(v))
                    .collect();
                by_size[rest.len()].push(rest);
            }
        }
        Ok(by_size)
    }

    /// The vertex rotation: negation on Π₊ ∪ (−Π₋), γ⁻¹ elsewhere, applied
    /// componentwise (the full γ agrees with each component's Coxeter factor
    /// on that component's roots).
    pub fn rotate_vertex(
        &self,
        rs: &RootSystem,
        gamma: &GroupElement,
        v: usize,
    ) -> CoxResult<usize> {
        let root = self.vertices[v].1;
        let (plus, minus) = rs.bipartite_partition();
        let in_plus = plus.contains(&root);
        let in_neg_minus = !rs.is_positive(root) && minus.contains(&rs.negate(root));
        let image_root = if in_plus || in_neg_minus {
            rs.negate(root)
        } else {
            invert_perm(gamma.perm())[root] as usize
        };
        self.root_to_vertex
            .get(&image_root)
            .map(|&v| v as usize)
            .ok_or_else(|| {
                CoxError::Internal("rotation left the vertex set of the complex".into())
            })
    }

    /// The rotation applied to a vertex set, re-sorted.
    pub fn rotate_face(
        &self,
        rs: &RootSystem,
        gamma: &GroupElement,
        sigma: &[u16],
    ) -> CoxResult<Vec<u16>> {
        let mut out = Vec::with_capacity(sigma.len());
        for &v in sigma {
            out.push(self.rotate_vertex(rs, gamma, v as usize)? as u16);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// For every lattice element w, the number of positive faces σ (ℓ = 0)
    /// with w_σ = w: the facet count of the positive subcomplex attached to
    /// w. Indexed by lattice element.
    pub fn positive_subcomplex_facets(&self, lattice: &NCLattice) -> Vec<u64> {
        let mut counts = vec![0u64; lattice.len()];
        for face in self.faces() {
            if face.l == 0 {
                counts[self.face_w[&face.vertices] as usize] += 1;
            }
        }
        counts
    }

    /// Counts of positive faces (ℓ = 0) by vertex count.
    pub fn positive_face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.rank + 1];
        for face in self.faces() {
            if face.l == 0 {
                counts[face.vertices.len()] += 1;
            }
        }
        counts
    }

    /// Every face extends to a facet (purity of dimension n−1).
    pub fn is_pure(&self) -> bool {
        let nv = self.num_vertices() as u16;
        for size in 0..self.rank {
            for face in &self.faces_by_size[size] {
                let extendable = (0..nv).any(|v| {
                    if face.vertices.contains(&v) {
                        return false;
                    }
                    let mut bigger = face.vertices.clone();
                    bigger.push(v);
                    bigger.sort_unstable();
                    self.is_face(&bigger)
                });
                if !extendable {
                    return false;
                }
            }
        }
        true
    }

    /// Unreduced Euler characteristic Σ (−1)^{i−1} f_{i−1} over nonempty
    /// faces; equals 1 + (−1)^{n−1} for an (n−1)-sphere.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (size, group) in self.faces_by_size.iter().enumerate().skip(1) {
            let term = group.len() as i64;
            if size % 2 == 1 {
                chi += term;
            } else {
                chi -= term;
            }
        }
        chi
    }
}

/// Product of the reflections of `verts` (ascending vertex ids) in the face
/// order: descending ρ-index within a component, components left to right.
fn face_product(
    rs: &RootSystem,
    vertices: &[(usize, usize)],
    n_comp: usize,
    sorted_verts: &[u16],
) -> Vec<u16> {
    let mut perm: Vec<u16> = (0..rs.num_roots() as u16).collect();
    for ci in 0..n_comp {
        // ascending vertex id within a component block = ascending ρ-index;
        // each new reflection multiplies on the left
        let mut comp_perm: Vec<u16> = (0..rs.num_roots() as u16).collect();
        for &v in sorted_verts {
            if vertices[v as usize].0 != ci {
                continue;
            }
            let root = vertices[v as usize].1;
            let positive = if rs.is_positive(root) {
                root
            } else {
                root - rs.num_positive()
            };
            comp_perm = compose_perms(rs.reflection_perm(positive), &comp_perm);
        }
        perm = compose_perms(&perm, &comp_perm);
    }
    perm
}

impl ClusterComplex {
    /// Reassembles a complex from its facet list: faces are the subset
    /// closure of the facets, the vertex table is rebuilt from the root
    /// system (deterministic), and every face element is recomputed and
    /// located in the lattice, so a corrupt payload cannot reconstruct.
    pub fn from_facets(
        rs: &RootSystem,
        lattice: &NCLattice,
        facets: &[Vec<u16>],
    ) -> CoxResult<ClusterComplex> {
        let n = rs.rank();
        let n_comp = rs.components().len();
        let mut rho = Vec::with_capacity(n_comp);
        for ci in 0..n_comp {
            rho.push(RhoSequence::build(rs, ci)?);
        }
        let mut vertices = vec![];
        let mut root_to_vertex = HashMap::new();
        for (ci, r) in rho.iter().enumerate() {
            for v in 0..r.len() {
                let root = r.root_of(v);
                root_to_vertex.insert(root, vertices.len() as u16);
                vertices.push((ci, root));
            }
        }

        let mut all_faces = std::collections::BTreeSet::new();
        for facet in facets {
            if facet.len() != n {
                return Err(CoxError::Internal("facet of wrong dimension".into()));
            }
            for mask in 0u32..(1 << facet.len()) {
                let sub: Vec<u16> = facet
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                all_faces.insert(sub);
            }
        }

        let mut faces_by_size: Vec<Vec<Face>> = vec![vec![]; n + 1];
        let mut face_w = HashMap::with_capacity(all_faces.len());
        let mut f_kl = vec![vec![0u64; n + 1]; n + 1];
        for verts in all_faces {
            let perm = face_product(rs, &vertices, n_comp, &verts);
            let idx = lattice.index_of(&perm).ok_or_else(|| {
                CoxError::Internal("stored face is not below the Coxeter element".into())
            })?;
            if lattice.rank_of(idx as usize) != verts.len() {
                return Err(CoxError::Internal("stored face has the wrong rank".into()));
            }
            let k = verts
                .iter()
                .filter(|&&v| rs.is_positive(vertices[v as usize].1))
                .count();
            let l = verts.len() - k;
            f_kl[k][l] += 1;
            face_w.insert(verts.clone(), idx);
            faces_by_size[verts.len()].push(Face { vertices: verts, k, l });
        }
        for group in &mut faces_by_size {
            group.sort();
        }
        Ok(ClusterComplex {
            rank: n,
            rho,
            vertices,
            root_to_vertex,
            faces_by_size,
            face_w,
            f_kl,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs_extend(
    rs: &RootSystem,
    rho: &RhoSequence,
    factor: &NCLattice,
    face: &mut Vec<u16>,
    wperm: &[u16],
    start: usize,
    budget: usize,
    out: &mut Vec<(Vec<u16>, u32)>,
) -> CoxResult<()> {
    for v in start..rho.len() {
        let root = rho.root_of(v);
        let positive = if rs.is_positive(root) {
            root
        } else {
            root - rs.num_positive()
        };
        // the new vertex carries the largest ρ-index, so its reflection
        // multiplies on the left
        let candidate = compose_perms(rs.reflection_perm(positive), wperm);
        let Some(idx) = factor.index_of(&candidate) else {
            continue;
        };
        if factor.rank_of(idx as usize) != face.len() + 1 {
            continue;
        }
        face.push(v as u16);
        if out.len() >= budget {
            return Err(CoxError::BudgetExceeded(budget));
        }
        out.push((face.clone(), idx));
        dfs_extend(rs, rho, factor, face, &candidate, v + 1, budget, out)?;
        face.pop();
    }
    Ok(())
}

/// h(Δ, y) = Σ_{i=0}^{n} f_i y^i (1−y)^{n−i}, where f_i is the number of
/// faces of dimension i−1 (`face_counts[i]`) and n the ambient rank.
pub fn h_polynomial(face_counts: &[usize], ambient: usize) -> UniPoly {
    let mut h = UniPoly::zero();
    for i in 0..=ambient {
        let f_i = face_counts.get(i).copied().unwrap_or(0);
        if f_i == 0 {
            continue;
        }
        let f_i = BigInt::from(f_i);
        // y^i (1−y)^{ambient−i}
        let mut binom = BigInt::one();
        for j in 0..=(ambient - i) {
            let c = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
            h.add_term(i + j, c * &f_i);
            if j < ambient - i {
                binom = &binom * BigInt::from(ambient - i - j) / BigInt::from(j + 1);
            }
        }
    }
    h
}

/// Face counts of a by-size face list (as produced by [`ClusterComplex::link`]).
pub fn counts_of(link: &[Vec<Vec<u16>>]) -> Vec<usize> {
    link.iter().map(Vec::len).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldScalar;
    use crate::roots::{build_root_system, TypeSpec};

    fn setup(name: &str) -> (RootSystem, NCLattice, ClusterComplex) {
        let rs = build_root_system(&TypeSpec::parse(name).unwrap()).unwrap();
        let (lattice, cx) = enumerate_complex(&rs).unwrap();
        (rs, lattice, cx)
    }

    fn root_with_coords(rs: &RootSystem, coords: &[i64]) -> usize {
        let want: Vec<FieldScalar> = coords.iter().map(|&c| FieldScalar::integer(c)).collect();
        (0..rs.num_roots())
            .find(|&r| rs.coords(r).unwrap() == want)
            .expect("root exists")
    }

    #[test]
    fn a1_rho_sequence() {
        let rs = build_root_system(&TypeSpec::parse("A1").unwrap()).unwrap();
        let rho = rho_sequence(&rs).unwrap();
        assert_eq!(rho.s(), 1);
        assert_eq!(rho.len(), 2);
        // ρ₁ = α₁, ρ₂ = −α₁
        assert_eq!(rho.root_of(0), 0);
        assert_eq!(rho.root_of(1), rs.negate(0));
        assert_eq!(rho.rho_index(0), 1);
    }

    #[test]
    fn a2_rho_sequence_matches_worked_example() {
        let rs = build_root_system(&TypeSpec::parse("A2").unwrap()).unwrap();
        let rho = rho_sequence(&rs).unwrap();
        assert_eq!(rho.s(), 1);
        assert_eq!(rho.len(), 5);
        // ids 0..4: ρ₀ = −α₂, ρ₁ = α₁, ρ₂ = α₁+α₂, ρ₃ = α₂, ρ₄ = −α₁
        assert_eq!(rho.root_of(0), root_with_coords(&rs, &[0, -1]));
        assert_eq!(rho.root_of(1), root_with_coords(&rs, &[1, 0]));
        assert_eq!(rho.root_of(2), root_with_coords(&rs, &[1, 1]));
        assert_eq!(rho.root_of(3), root_with_coords(&rs, &[0, 1]));
        assert_eq!(rho.root_of(4), root_with_coords(&rs, &[-1, 0]));
        assert_eq!(rho.rho_index(0), 0);
        assert_eq!(rho.rho_index(4), 4);
    }

    #[test]
    fn rho_positive_block_is_the_positive_system() {
        for name in ["A3", "B3", "H3", "F4", "I2(7)", "I2(8)"] {
            let rs = build_root_system(&TypeSpec::parse(name).unwrap()).unwrap();
            let rho = rho_sequence(&rs).unwrap();
            let mut block: Vec<usize> = (0..rs.num_positive())
                .map(|i| rho.root_of(rho.vertex_at(1 + i as i64)))
                .collect();
            block.sort_unstable();
            let expected: Vec<usize> = (0..rs.num_positive()).collect();
            assert_eq!(block, expected, "{name}");
        }
    }

    #[test]
    fn rho_sequence_rejects_reducible() {
        let rs = build_root_system(&TypeSpec::parse("A1xA1").unwrap()).unwrap();
        assert!(rho_sequence(&rs).is_err());
    }

    #[test]
    fn a1_complex_is_two_points() {
        let (_, _, cx) = setup("A1");
        assert_eq!(cx.face_counts(), vec![1, 2]);
        assert_eq!(cx.euler_characteristic(), 2); // S⁰
    }

    #[test]
    fn a2_complex_is_the_pentagon() {
        let (rs, lattice, cx) = setup("A2");
        assert_eq!(cx.face_counts(), vec![1, 5, 5]);
        assert!(cx.is_pure());
        assert_eq!(cx.euler_characteristic(), 0); // S¹
        assert_eq!(cx.facets().len(), lattice.len());

        // F = 1 + 3x + 2y + 2x² + 2xy + y²
        let f = cx.f_triangle();
        assert_eq!(f.get(0, 0), BigInt::from(1));
        assert_eq!(f.get(1, 0), BigInt::from(3));
        assert_eq!(f.get(0, 1), BigInt::from(2));
        assert_eq!(f.get(2, 0), BigInt::from(2));
        assert_eq!(f.get(1, 1), BigInt::from(2));
        assert_eq!(f.get(0, 2), BigInt::from(1));

        // the positive facet {α₁, α₁+α₂} maps to γ
        let v1 = cx.vertex_of_root(rs.simple_roots()[0]).unwrap();
        let v12 = cx.vertex_of_root(root_with_coords(&rs, &[1, 1])).unwrap();
        let mut face = vec![v1, v12];
        face.sort_unstable();
        assert!(cx.is_face(&face));
        let w = cx.face_element(&rs, &face).unwrap();
        assert_eq!(&w, lattice.top());
    }

    #[test]
    fn b2_complex_is_the_hexagon() {
        let (_, _, cx) = setup("B2");
        assert_eq!(cx.face_counts(), vec![1, 6, 6]);
    }

    #[test]
    fn empty_face_element_is_identity() {
        let (rs, lattice, cx) = setup("A3");
        let w = cx.face_element(&rs, &[]).unwrap();
        assert!(w.is_identity());
        assert_eq!(cx.face_element_index(&[]), Some(0));
        assert_eq!(lattice.rank_of(0), 0);
    }

    #[test]
    fn antipodal_pair_is_not_a_face() {
        // {ρ_i, ρ_j} with ρ_j = −ρ_i multiplies to the identity, rank 0 ≠ 2
        let (rs, _, cx) = setup("A2");
        let alpha1 = rs.simple_roots()[0];
        let v = cx.vertex_of_root(alpha1).unwrap();
        let vneg = cx.vertex_of_root(rs.negate(alpha1)).unwrap();
        let mut pair = vec![v, vneg];
        pair.sort_unstable();
        assert!(!cx.is_face(&pair));
        let w = cx.face_element(&rs, &pair).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn facet_counts_match_lattice_sizes() {
        for name in ["A1", "A2", "A3", "B2", "B3", "I2(5)", "I2(9)", "G2", "A1xA2"] {
            let (_, lattice, cx) = setup(name);
            assert_eq!(cx.facets().len(), lattice.len(), "{name}");
            assert!(cx.is_pure(), "{name}");
        }
    }

    #[test]
    fn dihedral_complex_is_a_polygon() {
        let (_, _, cx) = setup("I2(7)");
        assert_eq!(cx.face_counts(), vec![1, 9, 9]); // (m+2)-gon
    }

    #[test]
    fn join_complex_counts() {
        let (_, _, cx) = setup("A1xA2");
        // join of (1,2) and (1,5,5)
        assert_eq!(cx.face_counts(), vec![1, 7, 15, 10]);
        let (_, _, a1) = setup("A1");
        let (_, _, a2) = setup("A2");
        assert_eq!(cx.num_faces(), a1.num_faces() * a2.num_faces());
        assert_eq!(cx.f_triangle(), &a1.f_triangle() * &a2.f_triangle());
    }

    #[test]
    fn h_polynomial_examples() {
        assert_eq!(h_polynomial(&[1, 2], 1), UniPoly::from_i64(&[1, 1]));
        assert_eq!(h_polynomial(&[1, 5, 5], 2), UniPoly::from_i64(&[1, 3, 1]));
        assert_eq!(h_polynomial(&[1], 0), UniPoly::from_i64(&[1]));
    }

    #[test]
    fn h_polynomial_matches_lattice_rank_profile() {
        for name in ["A1", "A2", "A3", "B3", "H3", "I2(6)", "A1xA2"] {
            let (_, lattice, cx) = setup(name);
            assert_eq!(
                h_polynomial(&cx.face_counts(), cx.rank()),
                lattice.rank_generating_poly(),
                "{name}"
            );
        }
    }

    #[test]
    fn link_of_empty_face_is_whole_complex() {
        let (_, _, cx) = setup("A2");
        let link = cx.link(&[]).unwrap();
        assert_eq!(counts_of(&link), cx.face_counts());
    }

    #[test]
    fn link_in_pentagon() {
        let (rs, _, cx) = setup("A2");
        // the vertex α₁+α₂ has exactly the neighbors α₁ and α₂
        let v = cx.vertex_of_root(root_with_coords(&rs, &[1, 1])).unwrap();
        let link = cx.link(&[v]).unwrap();
        assert_eq!(counts_of(&link), vec![1, 2]);
        let neighbor_roots: Vec<usize> = link[1]
            .iter()
            .map(|f| cx.vertex_root(f[0] as usize))
            .collect();
        assert!(neighbor_roots.contains(&rs.simple_roots()[0]));
        assert!(neighbor_roots.contains(&rs.simple_roots()[1]));
    }

    #[test]
    fn link_of_facet_is_trivial() {
        let (_, _, cx) = setup("B2");
        let facet = cx.facets()[0].vertices.clone();
        let link = cx.link(&facet).unwrap();
        assert_eq!(counts_of(&link), vec![1]);
    }

    #[test]
    fn link_of_non_face_is_an_error() {
        let (rs, _, cx) = setup("A2");
        let alpha1 = rs.simple_roots()[0];
        let v = cx.vertex_of_root(alpha1).unwrap();
        let vneg = cx.vertex_of_root(rs.negate(alpha1)).unwrap();
        let mut pair = vec![v, vneg];
        pair.sort_unstable();
        assert!(cx.link(&pair).is_err());
    }

    #[test]
    fn rotation_on_a2() {
        let (rs, lattice, cx) = setup("A2");
        let gamma = lattice.top().clone();
        // R(α₁) = −α₁ (plus class), R(−α₂) = α₂ (negated minus class)
        let alpha1 = rs.simple_roots()[0];
        let alpha2 = rs.simple_roots()[1];
        let v_a1 = cx.vertex_of_root(alpha1).unwrap() as usize;
        let r1 = cx.rotate_vertex(&rs, &gamma, v_a1).unwrap();
        assert_eq!(cx.vertex_root(r1), rs.negate(alpha1));
        let v_na2 = cx.vertex_of_root(rs.negate(alpha2)).unwrap() as usize;
        let r2 = cx.rotate_vertex(&rs, &gamma, v_na2).unwrap();
        assert_eq!(cx.vertex_root(r2), alpha2);
        // R(α₂) = γ⁻¹(α₂) = α₁
        let v_a2 = cx.vertex_of_root(alpha2).unwrap() as usize;
        let r3 = cx.rotate_vertex(&rs, &gamma, v_a2).unwrap();
        assert_eq!(cx.vertex_root(r3), alpha1);
    }

    #[test]
    fn rotation_preserves_faces_small_types() {
        for name in ["A2", "A3", "B3", "I2(6)", "A1xA2"] {
            let (rs, lattice, cx) = setup(name);
            let gamma = lattice.top().clone();
            for face in cx.faces() {
                let image = cx.rotate_face(&rs, &gamma, &face.vertices).unwrap();
                assert!(cx.is_face(&image), "{name}: {:?}", face.vertices);
            }
        }
    }

    #[test]
    fn rotation_orbits_reach_negated_simples() {
        for name in ["A3", "B3", "H3", "I2(9)"] {
            let (rs, lattice, cx) = setup(name);
            let gamma = lattice.top().clone();
            let limit = 4 * (cx.num_vertices() + 2);
            for beta in 0..rs.num_positive() {
                let mut v = cx.vertex_of_root(beta).unwrap() as usize;
                let mut hit = false;
                for _ in 0..limit {
                    v = cx.rotate_vertex(&rs, &gamma, v).unwrap();
                    if !rs.is_positive(cx.vertex_root(v)) {
                        hit = true;
                        break;
                    }
                }
                assert!(hit, "{name}: orbit of {beta} never reached −Π");
            }
        }
    }

    #[test]
    fn positive_subcomplex_counts_on_a2() {
        let (_, lattice, cx) = setup("A2");
        let counts = cx.positive_subcomplex_facets(&lattice);
        // identity: only the empty face
        assert_eq!(counts[0], 1);
        // each reflection: its single positive vertex
        for i in 0..lattice.len() {
            if lattice.rank_of(i) == 1 {
                assert_eq!(counts[i], 1);
            }
        }
        // γ: the two positive facets of the pentagon
        assert_eq!(counts[lattice.len() - 1], 2);
        // fibers partition the positive faces
        let total: u64 = counts.iter().sum();
        assert_eq!(total as usize, cx.positive_face_counts().iter().sum::<usize>());
    }

    #[test]
    fn tiny_budget_is_reported() {
        let rs = build_root_system(&TypeSpec::parse("A3").unwrap()).unwrap();
        let factors = lattice_factors(&rs);
        let full = assemble_lattice(&rs, &factors);
        let err = ClusterComplex::build(&rs, &factors, &full, 5);
        assert!(matches!(err, Err(CoxError::BudgetExceeded(5))));
    }
}
