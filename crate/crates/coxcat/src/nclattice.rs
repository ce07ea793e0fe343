//! The noncrossing partition lattice: the interval [1, γ] of the absolute
//! order, enumerated rank by rank, with covers, order relation, Möbius
//! vector, rank generating polynomial, characteristic polynomial and
//! M-triangle.
//!
//! Enumeration walks up one rank at a time: from each element w of rank k,
//! the candidates w·t over all reflections t are kept when they land in the
//! interval at rank k+1. Correctness rests on the prefix-factorization
//! description of the order: every element of [1, γ] lies on a saturated
//! chain from the identity, and the accepted expansion edges are exactly the
//! cover relations.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{CoxError, CoxResult};
use crate::roots::RootSystem;
use crate::triangles::{BiPoly, UniPoly};
use crate::wgroup::{compose_perms, invert_perm, GroupElement};

/// Dense bit matrix; row b of the lattice order holds {a : a ⪯ b}.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    n_cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        let words_per_row = n_cols.div_ceil(64);
        BitMatrix {
            n_cols,
            words_per_row,
            data: vec![0; n_rows * words_per_row],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words_per_row + c / 64] |= 1 << (c % 64);
    }

    /// row[dst] |= row[src]
    pub fn or_row(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words_per_row, src * self.words_per_row);
        for w in 0..self.words_per_row {
            let v = self.data[s + w];
            self.data[d + w] |= v;
        }
    }

    /// Indices of set bits in a row, ascending.
    pub fn row_ones(&self, r: usize) -> Vec<usize> {
        let mut out = vec![];
        for w in 0..self.words_per_row {
            let mut bits = self.data[r * self.words_per_row + w];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                let c = w * 64 + b;
                if c < self.n_cols {
                    out.push(c);
                }
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn count_row(&self, r: usize) -> usize {
        (0..self.words_per_row)
            .map(|w| self.data[r * self.words_per_row + w].count_ones() as usize)
            .sum()
    }
}

/// The interval [1, top] in absolute order. Elements are stored rank-major
/// and lexicographically by permutation within a rank, so index 0 is the
/// identity and the last index is the top element.
#[derive(Debug)]
pub struct NCLattice {
    elements: Vec<GroupElement>,
    ranks: Vec<usize>,
    rank_top: usize,
    index: HashMap<Vec<u16>, u32>,
    /// Cover relations (lower, upper), sorted.
    covers: Vec<(u32, u32)>,
    leq_down: BitMatrix,
    mobius: Vec<i64>,
}

/// Enumerates the interval [1, top]. `top` is usually a Coxeter element but
/// any group element works and yields its own interval.
pub fn enumerate_interval(rs: &RootSystem, top: &GroupElement) -> NCLattice {
    let rank_top = rs.reflection_length(top);
    let top_perm = top.perm().to_vec();
    let reflections: Vec<Vec<u16>> = (0..rs.num_positive())
        .map(|i| rs.reflection_perm(i).to_vec())
        .collect();

    let mut elements: Vec<Vec<u16>> = vec![(0..rs.num_roots() as u16).collect()];
    let mut ranks: Vec<usize> = vec![0];
    let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut covers: Vec<(u32, u32)> = vec![];

    let mut level: Vec<u32> = vec![0];
    for k in 0..rank_top {
        let remaining = rank_top - k - 1;
        // candidate permutation -> parents that reach it
        let mut candidates: HashMap<Vec<u16>, Vec<u32>> = HashMap::new();
        for &widx in &level {
            let wperm = elements[widx as usize].clone();
            for t in &reflections {
                let u = compose_perms(&wperm, t);
                if index.contains_key(&u) {
                    continue; // already placed at a lower rank
                }
                candidates.entry(u).or_default().push(widx);
            }
        }
        // u = w·t is kept iff r(u⁻¹·top) = rank_top − k − 1, which forces
        // r(u) = k+1 and u ⪯ top at once.
        let mut accepted: Vec<(Vec<u16>, Vec<u32>)> = candidates
            .into_iter()
            .filter(|(u, _)| {
                let quotient = compose_perms(&invert_perm(u), &top_perm);
                rs.length_of_perm(&quotient) == remaining
            })
            .collect();
        accepted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut next_level = vec![];
        for (perm, parents) in accepted {
            let idx = elements.len() as u32;
            index.insert(perm.clone(), idx);
            elements.push(perm);
            ranks.push(k + 1);
            for p in parents {
                covers.push((p, idx));
            }
            next_level.push(idx);
        }
        level = next_level;
    }

    covers.sort_unstable();
    let n = elements.len();

    // leq is the reflexive-transitive closure of the covers; accumulating in
    // increasing upper-index order finalizes each row before it is used.
    let mut leq_down = BitMatrix::new(n, n);
    for i in 0..n {
        leq_down.set(i, i);
    }
    let mut by_upper = covers.clone();
    by_upper.sort_unstable_by_key(|&(lo, hi)| (hi, lo));
    for &(lo, hi) in &by_upper {
        leq_down.or_row(hi as usize, lo as usize);
    }

    let mobius = compute_mobius(n, &leq_down);

    NCLattice {
        elements: elements.into_iter().map(GroupElement::from_perm).collect(),
        ranks,
        rank_top,
        index,
        covers,
        leq_down,
        mobius,
    }
}

/// μ(w) := μ(1̂, w) by the standard recursion Σ_{a ⪯ w} μ(a) = 0.
fn compute_mobius(n: usize, leq_down: &BitMatrix) -> Vec<i64> {
    let mut mobius = vec![0i64; n];
    for w in 0..n {
        if w == 0 {
            mobius[0] = 1;
            continue;
        }
        let mut acc: i64 = 0;
        for a in leq_down.row_ones(w) {
            if a != w {
                acc += mobius[a];
            }
        }
        mobius[w] = -acc;
    }
    mobius
}

/// The noncrossing partition lattice of a root system: the interval under
/// the bipartite Coxeter element. Reducible systems are assembled as the
/// direct product of their components' intervals.
pub fn noncrossing_lattice(rs: &RootSystem) -> NCLattice {
    if rs.components().len() <= 1 {
        return enumerate_interval(rs, &rs.coxeter_element());
    }
    let factors: Vec<NCLattice> = (0..rs.components().len())
        .map(|ci| enumerate_interval(rs, &component_coxeter_element(rs, ci)))
        .collect();
    product_lattice(rs, &factors)
}

/// The Coxeter factor γ_i of one component, as a global group element fixing
/// every other component.
pub fn component_coxeter_element(rs: &RootSystem, ci: usize) -> GroupElement {
    let comp = &rs.components()[ci];
    let mut perm: Vec<u16> = (0..rs.num_roots() as u16).collect();
    for &s in comp.plus.iter().chain(comp.minus.iter()) {
        perm = compose_perms(&perm, rs.reflection_perm(comp.pos_offset + comp.simple_local[s]));
    }
    GroupElement::from_perm(perm)
}

/// Direct product of intervals living in the same ambient root system with
/// disjoint supports: elements are the products of the factors' elements,
/// ranks add, the order is componentwise and μ multiplies.
pub fn product_lattice(rs: &RootSystem, factors: &[NCLattice]) -> NCLattice {
    if factors.is_empty() {
        let id = rs.identity_element();
        let mut index = HashMap::new();
        index.insert(id.perm().to_vec(), 0);
        let mut leq_down = BitMatrix::new(1, 1);
        leq_down.set(0, 0);
        return NCLattice {
            elements: vec![id],
            ranks: vec![0],
            rank_top: 0,
            index,
            covers: vec![],
            leq_down,
            mobius: vec![1],
        };
    }

    // Cartesian product of factor indices, odometer-style.
    let sizes: Vec<usize> = factors.iter().map(NCLattice::len).collect();
    let total: usize = sizes.iter().product();
    let mut tuples: Vec<Vec<u32>> = Vec::with_capacity(total);
    let mut current = vec![0u32; factors.len()];
    loop {
        tuples.push(current.clone());
        let mut pos = factors.len();
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            current[pos] += 1;
            if (current[pos] as usize) < sizes[pos] {
                done = false;
                break;
            }
            current[pos] = 0;
        }
        if done {
            break;
        }
    }
    debug_assert_eq!(tuples.len(), total);

    // Materialize elements and sort canonically by (rank, perm).
    let mut keyed: Vec<(usize, Vec<u16>, Vec<u32>)> = tuples
        .into_iter()
        .map(|tuple| {
            let mut perm: Vec<u16> = (0..rs.num_roots() as u16).collect();
            let mut rank = 0;
            for (f, &i) in factors.iter().zip(&tuple) {
                perm = compose_perms(&perm, f.element(i as usize).perm());
                rank += f.rank_of(i as usize);
            }
            (rank, perm, tuple)
        })
        .collect();
    keyed.sort();

    let rank_top: usize = factors.iter().map(|f| f.rank_top).sum();
    let n = keyed.len();
    let mut elements = Vec::with_capacity(n);
    let mut ranks = Vec::with_capacity(n);
    let mut index = HashMap::new();
    let mut tuple_of: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (i, (rank, perm, tuple)) in keyed.into_iter().enumerate() {
        index.insert(perm.clone(), i as u32);
        elements.push(GroupElement::from_perm(perm));
        ranks.push(rank);
        tuple_of.push(tuple);
    }

    let mut leq_down = BitMatrix::new(n, n);
    let mut covers = vec![];
    let mut mobius = vec![0i64; n];
    for b in 0..n {
        for a in 0..n {
            let leq = tuple_of[a]
                .iter()
                .zip(&tuple_of[b])
                .enumerate()
                .all(|(ci, (&ai, &bi))| factors[ci].leq(ai as usize, bi as usize));
            if leq {
                leq_down.set(b, a);
                if ranks[b] == ranks[a] + 1 {
                    covers.push((a as u32, b as u32));
                }
            }
        }
        let mut m = 1i64;
        for (f, &i) in factors.iter().zip(&tuple_of[b]) {
            m *= f.mobius(i as usize);
        }
        mobius[b] = m;
    }
    covers.sort_unstable();

    NCLattice {
        elements,
        ranks,
        rank_top,
        index,
        covers,
        leq_down,
        mobius,
    }
}

impl NCLattice {
    /// Reassembles a lattice from serialized parts (canonical element order,
    /// cover list and Möbius vector). The order relation is rebuilt as the
    /// closure of the covers and the Möbius vector is recomputed and
    /// compared, so a corrupt payload cannot produce a silently wrong
    /// lattice.
    pub fn from_parts(
        elements: Vec<GroupElement>,
        ranks: Vec<usize>,
        covers: Vec<(u32, u32)>,
        mobius: Vec<i64>,
    ) -> CoxResult<NCLattice> {
        let n = elements.len();
        if n == 0 || ranks.len() != n || mobius.len() != n {
            return Err(CoxError::Internal("lattice parts have mismatched sizes".into()));
        }
        if !elements[0].is_identity() || ranks[0] != 0 {
            return Err(CoxError::Internal("lattice does not start at the identity".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.perm().to_vec(), i as u32).is_some() {
                return Err(CoxError::Internal("duplicate lattice element".into()));
            }
        }
        let rank_top = *ranks.last().unwrap();
        let mut leq_down = BitMatrix::new(n, n);
        for i in 0..n {
            leq_down.set(i, i);
        }
        let mut by_upper = covers.clone();
        by_upper.sort_unstable_by_key(|&(lo, hi)| (hi, lo));
        for &(lo, hi) in &by_upper {
            let (lo, hi) = (lo as usize, hi as usize);
            if lo >= hi || hi >= n || ranks[hi] != ranks[lo] + 1 {
                return Err(CoxError::Internal("invalid cover relation".into()));
            }
            leq_down.or_row(hi, lo);
        }
        if compute_mobius(n, &leq_down) != mobius {
            return Err(CoxError::Internal(
                "stored Möbius vector disagrees with the order relation".into(),
            ));
        }
        let mut sorted_covers = covers;
        sorted_covers.sort_unstable();
        Ok(NCLattice {
            elements,
            ranks,
            rank_top,
            index,
            covers: sorted_covers,
            leq_down,
            mobius,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Rank of the top element (n for a Coxeter element of a rank-n system).
    pub fn rank_top(&self) -> usize {
        self.rank_top
    }

    pub fn element(&self, idx: usize) -> &GroupElement {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn rank_of(&self, idx: usize) -> usize {
        self.ranks[idx]
    }

    pub fn mobius(&self, idx: usize) -> i64 {
        self.mobius[idx]
    }

    pub fn mobius_vector(&self) -> &[i64] {
        &self.mobius
    }

    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    pub fn index_of(&self, perm: &[u16]) -> Option<u32> {
        self.index.get(perm).copied()
    }

    pub fn top(&self) -> &GroupElement {
        self.elements.last().expect("lattice is never empty")
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq_down.get(b, a)
    }

    /// Elements of the down-set {a : a ⪯ b}, ascending.
    pub fn down_set(&self, b: usize) -> Vec<usize> {
        self.leq_down.row_ones(b)
    }

    /// Counts elements of the down-set of `b` by rank: the rank generating
    /// polynomial of the sub-interval [1, b].
    pub fn down_set_rank_profile(&self, b: usize) -> UniPoly {
        let mut counts = vec![BigInt::from(0); self.ranks[b] + 1];
        for a in self.leq_down.row_ones(b) {
            counts[self.ranks[a]] += 1;
        }
        UniPoly::from_coeffs(counts)
    }

    /// Per-rank element counts (the Narayana numbers for Coxeter intervals).
    pub fn rank_generating_poly(&self) -> UniPoly {
        let mut counts = vec![BigInt::from(0); self.rank_top + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        UniPoly::from_coeffs(counts)
    }

    /// χ(L, q) = Σ_w μ(w) q^{r(w)}, exactly in this grading.
    ///
    /// Note: many references define the characteristic polynomial with the
    /// complementary grading q^{n−r(w)}; this implementation keeps the
    /// direct one, whose y = 0 specialization matches the F/M identity.
    pub fn characteristic_poly(&self) -> UniPoly {
        let mut p = UniPoly::zero();
        for (i, &m) in self.mobius.iter().enumerate() {
            p.add_term(self.ranks[i], BigInt::from(m));
        }
        p
    }

    /// M(x, y) = Σ_{a ⪯ b} μ(a, b) x^{r(b)} y^{r(a)}, iterating pairs via
    /// the order relation and serving the two-argument Möbius function as
    /// μ(a⁻¹b).
    pub fn m_triangle(&self) -> BiPoly {
        let mut m = BiPoly::zero();
        for b in 0..self.len() {
            let bperm = self.elements[b].perm();
            for a in self.leq_down.row_ones(b) {
                let quotient = compose_perms(&invert_perm(self.elements[a].perm()), bperm);
                let q = self.index[&quotient] as usize;
                m.add_term(self.ranks[b], self.ranks[a], BigInt::from(self.mobius[q]));
            }
        }
        m
    }

    /// The self-duality map w ↦ w⁻¹γ as an index permutation.
    pub fn duality_map(&self) -> CoxResult<Vec<u32>> {
        let top = self.top().perm().to_vec();
        (0..self.len())
            .map(|i| {
                let image = compose_perms(&invert_perm(self.elements[i].perm()), &top);
                self.index.get(&image).copied().ok_or_else(|| {
                    CoxError::Internal("w⁻¹γ left the interval; lattice corrupt".into())
                })
            })
            .collect()
    }
}
