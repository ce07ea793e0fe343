//! Reflection-group elements, reflection length, the absolute order, and
//! bipartite Coxeter elements.
//!
//! The action of W on the root list is faithful, so an element is stored as
//! the permutation it induces on root indices; equality and hashing use the
//! permutation alone. Reflection length is the codimension of the fixed
//! space, computed as the exact rank of the matrix with rows w(α_i) − α_i
//! over the simple roots — no matrix per element is ever stored. Dihedral
//! components read the length off the normal form instead (identity 0,
//! reflection 1, rotation 2).

use std::sync::OnceLock;

use crate::error::{CoxError, CoxResult};
use crate::exactnum::{ExactMatrix, FieldScalar};
use crate::roots::{Backend, RootSystem};

/// An element of the reflection group, represented by its permutation of the
/// root list. The reflection length is cached on first computation.
#[derive(Debug, Clone)]
pub struct GroupElement {
    perm: Vec<u16>,
    length: OnceLock<usize>,
}

impl GroupElement {
    pub(crate) fn from_perm(perm: Vec<u16>) -> Self {
        GroupElement {
            perm,
            length: OnceLock::new(),
        }
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// Image of a root index under this element.
    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.perm.cmp(&other.perm)
    }
}

pub(crate) fn compose_perms(f: &[u16], g: &[u16]) -> Vec<u16> {
    // (f ∘ g)(x) = f(g(x)): apply g first.
    g.iter().map(|&x| f[x as usize]).collect()
}

pub(crate) fn invert_perm(f: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; f.len()];
    for (i, &fi) in f.iter().enumerate() {
        inv[fi as usize] = i as u16;
    }
    inv
}

impl RootSystem {
    pub fn identity_element(&self) -> GroupElement {
        GroupElement::from_perm((0..self.num_roots() as u16).collect())
    }

    /// Wraps a root permutation as a group element, validating that it is a
    /// permutation of the right length. The caller asserts it arises from an
    /// actual group element; anything else corrupts downstream lengths.
    pub fn element_from_perm(&self, perm: &[u16]) -> CoxResult<GroupElement> {
        if perm.len() != self.num_roots() {
            return Err(CoxError::Argument(
                "permutation length does not match the root list".into(),
            ));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p as usize >= perm.len() || std::mem::replace(&mut seen[p as usize], true) {
                return Err(CoxError::Argument("not a permutation".into()));
            }
        }
        Ok(GroupElement::from_perm(perm.to_vec()))
    }

    /// The reflection t_α for a root index α (positive or negative;
    /// t_α = t_{−α}).
    pub fn reflection(&self, root: usize) -> CoxResult<GroupElement> {
        if root >= self.num_roots() {
            return Err(CoxError::Argument(format!(
                "root index {root} out of range (have {})",
                self.num_roots()
            )));
        }
        let positive = if self.is_positive(root) {
            root
        } else {
            root - self.num_positive()
        };
        Ok(GroupElement::from_perm(
            self.reflection_perm(positive).to_vec(),
        ))
    }

    /// Group product u·v (apply v first, then u).
    pub fn multiply(&self, u: &GroupElement, v: &GroupElement) -> CoxResult<GroupElement> {
        if u.perm.len() != self.num_roots() || v.perm.len() != self.num_roots() {
            return Err(CoxError::Argument(
                "elements belong to a different root system".into(),
            ));
        }
        Ok(GroupElement::from_perm(compose_perms(&u.perm, &v.perm)))
    }

    pub fn inverse(&self, u: &GroupElement) -> GroupElement {
        GroupElement::from_perm(invert_perm(&u.perm))
    }

    /// Reflection length r_T(w): the smallest k such that w is a product of
    /// k reflections. Computed per component as the codimension of the fixed
    /// space and cached on the element.
    pub fn reflection_length(&self, w: &GroupElement) -> usize {
        *w.length.get_or_init(|| self.length_of_perm(&w.perm))
    }

    pub(crate) fn length_of_perm(&self, perm: &[u16]) -> usize {
        let mut total = 0;
        for (ci, comp) in self.components().iter().enumerate() {
            match &comp.backend {
                Backend::Geometric => {
                    // rank of the moved-space matrix with rows w(α_i) − α_i
                    let rows: Vec<Vec<FieldScalar>> = comp
                        .simple_local
                        .iter()
                        .map(|&s| {
                            let global = comp.pos_offset + s;
                            let image = perm[global] as usize;
                            let (ici, ilocal) = self.component_of_root(image);
                            debug_assert_eq!(ici, ci, "element mixes components");
                            let img = comp.root_coords(ilocal);
                            let src = comp.root_coords(s);
                            img.iter().zip(&src).map(|(a, b)| a - b).collect()
                        })
                        .collect();
                    total += ExactMatrix::from_rows(rows).rank();
                }
                Backend::Dihedral { m } => {
                    let m = *m;
                    let j0 = self.dihedral_global_index(ci, 0);
                    let j1 = self.dihedral_global_index(ci, 1);
                    let img0 = self.dihedral_local(perm[j0] as usize);
                    let img1 = self.dihedral_local(perm[j1] as usize);
                    // orientation-preserving maps shift angle indices,
                    // orientation-reversing maps flip them
                    let rotation = (img0 + 1) % (2 * m) == img1;
                    total += if rotation {
                        usize::from(img0 != 0) * 2
                    } else {
                        1
                    };
                }
            }
        }
        total
    }

    fn dihedral_global_index(&self, ci: usize, local: usize) -> usize {
        let comp = &self.components()[ci];
        let m = comp.num_positive;
        if local < m {
            comp.pos_offset + local
        } else {
            comp.pos_offset + (local - m) + self.num_positive()
        }
    }

    /// The absolute order: u ⪯ v iff r(u) + r(u⁻¹v) = r(v).
    pub fn absolute_leq(&self, u: &GroupElement, v: &GroupElement) -> bool {
        let quotient = compose_perms(&invert_perm(&u.perm), &v.perm);
        self.reflection_length(u) + self.length_of_perm(&quotient) == self.reflection_length(v)
    }

    /// The bipartite Coxeter element γ = γ₊γ₋, the product of the simple
    /// reflections over Π₊ then Π₋ in build order (per component; component
    /// factors commute).
    pub fn coxeter_element(&self) -> GroupElement {
        let (plus, minus) = self.bipartite_partition();
        let mut perm: Vec<u16> = (0..self.num_roots() as u16).collect();
        // left-to-right product: each new factor is applied first, so that
        // γ₋ acts before γ₊
        for &s in plus.iter().chain(minus.iter()) {
            perm = compose_perms(&perm, self.reflection_perm(s));
        }
        let g = GroupElement::from_perm(perm);
        debug_assert_eq!(self.length_of_perm(&g.perm), self.rank());
        g
    }

    /// All N reflections, indexed by positive root.
    pub fn all_reflections(&self) -> Vec<GroupElement> {
        (0..self.num_positive())
            .map(|i| GroupElement::from_perm(self.reflection_perm(i).to_vec()))
            .collect()
    }

    /// Enumerates the whole group by closing the identity under the simple
    /// reflections. Intended for the small oracle groups.
    pub fn full_group(&self) -> Vec<GroupElement> {
        let simples: Vec<&[u16]> = self
            .simple_roots()
            .iter()
            .map(|&s| self.reflection_perm(s))
            .collect();
        let identity: Vec<u16> = (0..self.num_roots() as u16).collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        let mut all = vec![];
        while let Some(p) = frontier.pop() {
            for s in &simples {
                let q = compose_perms(s, &p);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
            all.push(p);
        }
        all.sort();
        all.into_iter().map(GroupElement::from_perm).collect()
    }

    /// Distance from the identity in the Cayley graph generated by ALL
    /// reflections: the definitional reflection length, used as the oracle
    /// for the fixed-space-codimension computation.
    pub fn cayley_reflection_distances(&self) -> std::collections::HashMap<Vec<u16>, usize> {
        let reflections = self.all_reflections();
        let identity: Vec<u16> = (0..self.num_roots() as u16).collect();
        let mut dist = std::collections::HashMap::new();
        dist.insert(identity.clone(), 0usize);
        let mut frontier = vec![identity];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = vec![];
            for p in frontier {
                for t in &reflections {
                    let q = compose_perms(&t.perm, &p);
                    if !dist.contains_key(&q) {
                        dist.insert(q.clone(), d);
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}
