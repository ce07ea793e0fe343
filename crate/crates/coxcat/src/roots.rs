//! Root systems for all finite Coxeter types, including reducible products
//! and the dihedral family I₂(m).
//!
//! Geometric components represent every root by its exact coordinate vector
//! in the simple-root basis; the pairing is given by the Gram matrix of the
//! simple roots (Bourbaki-normalized lengths). Crystallographic types then
//! have integer coordinates throughout, and H₂/H₃/H₄/I₂(5) live in ℚ(√5).
//! I₂(m) for m ∉ {3,4,5,6} uses a coordinate-free dihedral backend: its m
//! positive roots are abstract labels and the group acts by index arithmetic.
//!
//! Global root indexing: positive roots first (component-major, sorted by
//! coordinate vector within a component), then all negatives in the same
//! order, so `-roots[i] == roots[i + N]` for `i < N`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{CoxError, CoxResult};
use crate::exactnum::FieldScalar;

/// One irreducible factor of a [`TypeSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H(usize),
    I2(usize),
}

impl Family {
    pub fn rank(&self) -> usize {
        match self {
            Family::A(n) | Family::B(n) | Family::D(n) | Family::E(n) | Family::H(n) => *n,
            Family::F4 => 4,
            Family::G2 | Family::I2(_) => 2,
        }
    }

    /// Number of positive roots of the irreducible type.
    pub fn num_positive(&self) -> usize {
        match self {
            Family::A(n) => n * (n + 1) / 2,
            Family::B(n) => n * n,
            Family::D(n) => n * (n - 1),
            Family::E(6) => 36,
            Family::E(7) => 63,
            Family::E(8) => 120,
            Family::E(_) => unreachable!(),
            Family::F4 => 24,
            Family::G2 => 6,
            Family::H(2) => 5,
            Family::H(3) => 15,
            Family::H(4) => 60,
            Family::H(_) => unreachable!(),
            Family::I2(m) => *m,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(n) => write!(f, "A{n}"),
            Family::B(n) => write!(f, "B{n}"),
            Family::D(n) => write!(f, "D{n}"),
            Family::E(n) => write!(f, "E{n}"),
            Family::F4 => write!(f, "F4"),
            Family::G2 => write!(f, "G2"),
            Family::H(n) => write!(f, "H{n}"),
            Family::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A product of irreducible finite types, e.g. `A3`, `B4`, `I2(7)`, `A2xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeSpec {
    pub components: Vec<Family>,
}

impl TypeSpec {
    pub fn parse(input: &str) -> CoxResult<TypeSpec> {
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Err(CoxError::Spec("empty type specification".into()));
        }
        let mut components = vec![];
        for part in trimmed.split(['x', 'X']) {
            components.push(parse_component(part.trim())?);
        }
        Ok(TypeSpec { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Family::rank).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// Canonical string, used for cache keys and report headers.
    pub fn name(&self) -> String {
        self.components
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn parse_component(part: &str) -> CoxResult<Family> {
    let bad = |msg: &str| CoxError::Spec(format!("{part:?}: {msg}"));
    let mut chars = part.chars();
    let letter = chars
        .next()
        .ok_or_else(|| bad("missing family letter"))?
        .to_ascii_uppercase();
    let rest: String = chars.collect();
    if letter == 'I' {
        // I2(m)
        let rest = rest
            .strip_prefix('2')
            .ok_or_else(|| bad("dihedral type must be written I2(m)"))?;
        let m: usize = rest
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("dihedral type must be written I2(m)"))?;
        if m < 3 {
            return Err(bad("I2(m) requires m >= 3"));
        }
        return Ok(Family::I2(m));
    }
    let n: usize = rest
        .parse()
        .map_err(|_| bad("rank must be a positive integer"))?;
    match (letter, n) {
        ('A', n) if n >= 1 => Ok(Family::A(n)),
        ('B', n) if n >= 2 => Ok(Family::B(n)),
        // W(C_n) = W(B_n); the paper's statements depend only on the group
        ('C', n) if n >= 2 => Ok(Family::B(n)),
        ('D', n) if n >= 4 => Ok(Family::D(n)),
        ('E', n) if (6..=8).contains(&n) => Ok(Family::E(n)),
        ('F', 4) => Ok(Family::F4),
        ('G', 2) => Ok(Family::G2),
        ('H', n) if (2..=4).contains(&n) => Ok(Family::H(n)),
        _ => Err(bad("not a finite type (valid: A>=1, B/C>=2, D>=4, E6-E8, F4, G2, H2-H4, I2(m))")),
    }
}

/// Gram matrix of the simple roots of an irreducible geometric type.
/// Bourbaki normalization: simply-laced roots have squared length 2; B_n has
/// the short simple root of length 1, F₄ two of each, G₂ lengths 2 and 6.
fn gram_matrix(family: &Family) -> Vec<Vec<FieldScalar>> {
    let n = family.rank();
    let mut g = vec![vec![FieldScalar::zero(); n]; n];
    let set = |g: &mut Vec<Vec<FieldScalar>>, i: usize, j: usize, v: FieldScalar| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    let chain = |g: &mut Vec<Vec<FieldScalar>>, v: FieldScalar| {
        for i in 0..n - 1 {
            set(g, i, i + 1, v.clone());
        }
    };
    for i in 0..n {
        g[i][i] = FieldScalar::integer(2);
    }
    match family {
        Family::A(_) => {
            if n > 1 {
                chain(&mut g, FieldScalar::integer(-1));
            }
        }
        Family::B(_) => {
            chain(&mut g, FieldScalar::integer(-1));
            g[n - 1][n - 1] = FieldScalar::integer(1);
        }
        Family::D(_) => {
            for i in 0..n - 2 {
                set(&mut g, i, i + 1, FieldScalar::integer(-1));
            }
            set(&mut g, n - 3, n - 1, FieldScalar::integer(-1));
        }
        Family::E(_) => {
            // Bourbaki numbering: chain 1-3-4-5-6(-7)(-8) with 2 attached to 4
            let edges: &[(usize, usize)] = match n {
                6 => &[(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
                7 => &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)],
                8 => &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)],
                _ => unreachable!(),
            };
            for &(i, j) in edges {
                set(&mut g, i, j, FieldScalar::integer(-1));
            }
        }
        Family::F4 => {
            g[2][2] = FieldScalar::integer(1);
            g[3][3] = FieldScalar::integer(1);
            set(&mut g, 0, 1, FieldScalar::integer(-1));
            set(&mut g, 1, 2, FieldScalar::integer(-1));
            set(&mut g, 2, 3, FieldScalar::ratio(-1, 2));
        }
        Family::G2 => {
            g[1][1] = FieldScalar::integer(6);
            set(&mut g, 0, 1, FieldScalar::integer(-3));
        }
        Family::H(_) => {
            // 2 cos(π/5) = φ on the first edge, simple chains elsewhere
            set(&mut g, 0, 1, &FieldScalar::zero() - &FieldScalar::phi());
            for i in 1..n - 1 {
                set(&mut g, i, i + 1, FieldScalar::integer(-1));
            }
        }
        Family::I2(m) => match m {
            3 => set(&mut g, 0, 1, FieldScalar::integer(-1)),
            4 => {
                g[1][1] = FieldScalar::integer(1);
                set(&mut g, 0, 1, FieldScalar::integer(-1));
            }
            5 => set(&mut g, 0, 1, &FieldScalar::zero() - &FieldScalar::phi()),
            6 => {
                g[1][1] = FieldScalar::integer(6);
                set(&mut g, 0, 1, FieldScalar::integer(-3));
            }
            _ => unreachable!("I2(m) with m >= 7 uses the dihedral backend"),
        },
    }
    g
}

/// Backend of one irreducible component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    Geometric,
    Dihedral { m: usize },
}

/// One irreducible component of a root system, with its local root data.
/// Local positive roots are indexed 0..N_c, negatives N_c..2N_c with
/// `neg(i) = i ± N_c`.
#[derive(Clone, Debug)]
pub struct Component {
    pub family: Family,
    pub backend: Backend,
    pub rank: usize,
    pub num_positive: usize,
    /// Offset of this component's positive block in the global positive list.
    pub pos_offset: usize,
    /// Gram matrix of the simple roots (empty for dihedral).
    pub gram: Vec<Vec<FieldScalar>>,
    /// Local positive-root coordinates in the simple basis (empty for dihedral).
    pub coords: Vec<Vec<FieldScalar>>,
    /// Local positive indices of the simple roots, in build order.
    pub simple_local: Vec<usize>,
    /// Bipartite classes as local simple positions (indices into 0..rank),
    /// each in build order; `plus` holds the class of the first simple root.
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl Component {
    fn coord_lookup(&self) -> HashMap<Vec<FieldScalar>, usize> {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect()
    }

    /// Inner product of two local positive/negative roots (geometric only).
    pub fn pairing(&self, x: &[FieldScalar], y: &[FieldScalar]) -> FieldScalar {
        let mut acc = FieldScalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc = &acc + &(&(xi * yj) * &self.gram[i][j]);
            }
        }
        acc
    }

    /// Coordinates of a local root index (positive or negative).
    pub fn root_coords(&self, local: usize) -> Vec<FieldScalar> {
        let n_pos = self.num_positive;
        if local < n_pos {
            self.coords[local].clone()
        } else {
            self.coords[local - n_pos]
                .iter()
                .map(|c| -c)
                .collect()
        }
    }
}

/// A finite root system: roots, positive/simple systems, bipartite partition
/// of the simple system, and cached reflection permutations.
#[derive(Debug)]
pub struct RootSystem {
    spec: TypeSpec,
    rank: usize,
    num_positive: usize,
    components: Vec<Component>,
    /// Global root index -> (component, local root index).
    root_component: Vec<(usize, usize)>,
    /// Global positive indices of the simple roots, component-major, build order.
    simple_global: Vec<usize>,
    /// Permutations of the full root list induced by each positive root's
    /// reflection, indexed by positive root.
    reflection_perms: Vec<Vec<u16>>,
}

/// A parabolic restriction: the root subsystem spanned by a subset of the
/// simple roots, plus the embedding of its roots into the parent.
pub struct ParabolicRestriction {
    pub subsystem: RootSystem,
    /// Global root index in the subsystem -> global root index in the parent.
    pub root_map: Vec<usize>,
}

/// Builds the root system of `spec` with simple roots in the standard order.
pub fn build_root_system(spec: &TypeSpec) -> CoxResult<RootSystem> {
    let orders: Vec<Vec<usize>> = spec
        .components
        .iter()
        .map(|f| (0..f.rank()).collect())
        .collect();
    build_root_system_with_order(spec, &orders)
}

/// Builds I₂(m) on the coordinate-free dihedral backend regardless of m.
/// m ∈ {3, 4, 5, 6} normally uses the geometric backend; this constructor
/// exists so the two can be compared on every shared invariant.
pub fn build_dihedral(m: usize) -> CoxResult<RootSystem> {
    if m < 3 {
        return Err(CoxError::Spec("I2(m) requires m >= 3".into()));
    }
    let spec = TypeSpec {
        components: vec![Family::I2(m)],
    };
    let mut comp = dihedral_component(m, 0);
    bipartition(&mut comp)?;
    let num_positive = m;
    let mut root_component = Vec::with_capacity(2 * m);
    for local in 0..2 * m {
        root_component.push((0, local));
    }
    let simple_global = comp.simple_local.clone();
    let mut rs = RootSystem {
        spec,
        rank: 2,
        num_positive,
        components: vec![comp],
        root_component,
        simple_global,
        reflection_perms: vec![],
    };
    rs.reflection_perms = (0..num_positive)
        .map(|i| rs.build_reflection_perm(i))
        .collect::<CoxResult<Vec<_>>>()?;
    rs.verify_build()?;
    Ok(rs)
}

/// Builds the root system with each component's simple roots re-ordered by
/// the given permutation of 0..rank. Exists so tests can confirm that the
/// enumerative invariants do not depend on the input ordering.
pub fn build_root_system_with_order(
    spec: &TypeSpec,
    orders: &[Vec<usize>],
) -> CoxResult<RootSystem> {
    if orders.len() != spec.components.len() {
        return Err(CoxError::Argument(
            "one simple-root order per component required".into(),
        ));
    }
    let mut components = vec![];
    let mut pos_offset = 0;
    for (family, order) in spec.components.iter().zip(orders) {
        let mut comp = build_component(family, order, pos_offset)?;
        bipartition(&mut comp)?;
        pos_offset += comp.num_positive;
        components.push(comp);
    }
    let num_positive = pos_offset;
    let rank = spec.rank();

    let mut root_component = Vec::with_capacity(2 * num_positive);
    for (ci, c) in components.iter().enumerate() {
        for local in 0..c.num_positive {
            root_component.push((ci, local));
        }
    }
    for (ci, c) in components.iter().enumerate() {
        for local in 0..c.num_positive {
            root_component.push((ci, local + c.num_positive));
        }
    }

    let mut simple_global = vec![];
    for c in &components {
        for &s in &c.simple_local {
            simple_global.push(c.pos_offset + s);
        }
    }

    let mut rs = RootSystem {
        spec: spec.clone(),
        rank,
        num_positive,
        components,
        root_component,
        simple_global,
        reflection_perms: vec![],
    };
    rs.reflection_perms = (0..num_positive)
        .map(|i| rs.build_reflection_perm(i))
        .collect::<CoxResult<Vec<_>>>()?;
    rs.verify_build()?;
    Ok(rs)
}

fn build_component(family: &Family, order: &[usize], pos_offset: usize) -> CoxResult<Component> {
    let rank = family.rank();
    {
        let mut seen = vec![false; rank];
        for &i in order {
            if i >= rank || seen[i] {
                return Err(CoxError::Argument(format!(
                    "invalid simple-root order for {family}"
                )));
            }
            seen[i] = true;
        }
        if order.len() != rank {
            return Err(CoxError::Argument(format!(
                "invalid simple-root order for {family}"
            )));
        }
    }

    if let Family::I2(m) = family {
        if *m >= 7 {
            return Ok(dihedral_component(*m, pos_offset));
        }
    }

    let base = gram_matrix(family);
    // Re-index the Gram matrix by the requested simple order.
    let gram: Vec<Vec<FieldScalar>> = (0..rank)
        .map(|i| (0..rank).map(|j| base[order[i]][order[j]].clone()).collect())
        .collect();

    // Close the simple roots under the simple reflections.
    let mut roots: Vec<Vec<FieldScalar>> = vec![];
    let mut index: HashMap<Vec<FieldScalar>, usize> = HashMap::new();
    for i in 0..rank {
        let mut v = vec![FieldScalar::zero(); rank];
        v[i] = FieldScalar::one();
        index.insert(v.clone(), roots.len());
        roots.push(v);
    }
    let mut frontier: Vec<usize> = (0..roots.len()).collect();
    while let Some(r) = frontier.pop() {
        for i in 0..rank {
            let image = apply_simple_reflection(&gram, i, &roots[r]);
            if !index.contains_key(&image) {
                index.insert(image.clone(), roots.len());
                frontier.push(roots.len());
                roots.push(image);
            }
        }
    }

    // Split into positives (all coordinates >= 0) and check ±-symmetry.
    let mut positives = vec![];
    for v in &roots {
        let signs: Vec<i32> = v.iter().map(FieldScalar::signum).collect();
        if signs.iter().all(|&s| s >= 0) {
            positives.push(v.clone());
        } else if !signs.iter().all(|&s| s <= 0) {
            return Err(CoxError::Internal(format!(
                "{family}: generated root with mixed-sign coordinates"
            )));
        }
    }
    if positives.len() * 2 != roots.len() {
        return Err(CoxError::Internal(format!(
            "{family}: root set is not symmetric under negation"
        )));
    }
    let expected = family.num_positive();
    if positives.len() != expected {
        return Err(CoxError::Internal(format!(
            "{family}: generated {} positive roots, expected {expected}",
            positives.len()
        )));
    }
    positives.sort();

    let mut simple_local = vec![0; rank];
    for (p, v) in positives.iter().enumerate() {
        if let Some(i) = unit_coordinate(v) {
            simple_local[i] = p;
        }
    }

    Ok(Component {
        family: family.clone(),
        backend: Backend::Geometric,
        rank,
        num_positive: positives.len(),
        pos_offset,
        gram,
        coords: positives,
        simple_local,
        plus: vec![],
        minus: vec![],
    })
}

fn dihedral_component(m: usize, pos_offset: usize) -> Component {
    // Positive roots are abstract labels 0..m; the simple roots are 0 and
    // m-1 (at index-angle distance m-1, i.e. interior angle π - π/m).
    Component {
        family: Family::I2(m),
        backend: Backend::Dihedral { m },
        rank: 2,
        num_positive: m,
        pos_offset,
        gram: vec![],
        coords: vec![],
        simple_local: vec![0, m - 1],
        plus: vec![],
        minus: vec![],
    }
}

fn apply_simple_reflection(
    gram: &[Vec<FieldScalar>],
    i: usize,
    v: &[FieldScalar],
) -> Vec<FieldScalar> {
    // s_i(v) = v - (2 (v, α_i) / (α_i, α_i)) α_i changes only coordinate i.
    let mut pairing = FieldScalar::zero();
    for (j, vj) in v.iter().enumerate() {
        if !vj.is_zero() {
            pairing = &pairing + &(vj * &gram[j][i]);
        }
    }
    let coeff = &(&FieldScalar::integer(2) * &pairing) / &gram[i][i];
    let mut out = v.to_vec();
    out[i] = &out[i] - &coeff;
    out
}

fn unit_coordinate(v: &[FieldScalar]) -> Option<usize> {
    let mut found = None;
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if found.is_some() || *c != FieldScalar::one() {
            return None;
        }
        found = Some(i);
    }
    found
}

/// 2-colors the Coxeter diagram of a component. The class containing the
/// first simple root (in build order) becomes `plus`; classes keep build
/// order internally.
fn bipartition(comp: &mut Component) -> CoxResult<()> {
    let n = comp.rank;
    let adjacent = |i: usize, j: usize| -> bool {
        match comp.backend {
            Backend::Dihedral { .. } => true, // two non-orthogonal simples
            Backend::Geometric => !comp.gram[i][j].is_zero(),
        }
    };
    let mut color: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(true);
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            let ci = color[i].unwrap();
            for j in 0..n {
                if j == i || !adjacent(i, j) {
                    continue;
                }
                match color[j] {
                    None => {
                        color[j] = Some(!ci);
                        queue.push(j);
                    }
                    Some(cj) if cj == ci => {
                        return Err(CoxError::Internal(format!(
                            "{}: Coxeter diagram is not 2-colorable",
                            comp.family
                        )));
                    }
                    _ => {}
                }
            }
        }
    }
    comp.plus = (0..n).filter(|&i| color[i] == Some(true)).collect();
    comp.minus = (0..n).filter(|&i| color[i] == Some(false)).collect();
    Ok(())
}

impl RootSystem {
    pub fn spec(&self) -> &TypeSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots N; the full root list has length 2N.
    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn num_roots(&self) -> usize {
        2 * self.num_positive
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of_root(&self, root: usize) -> (usize, usize) {
        self.root_component[root]
    }

    /// Global positive indices of the simple roots, component-major.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple_global
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.num_positive
    }

    pub fn negate(&self, root: usize) -> usize {
        (root + self.num_positive) % (2 * self.num_positive)
    }

    /// Global coordinates (length = total rank) of a root; dihedral
    /// components have no coordinates, so this is only valid for fully
    /// geometric systems.
    pub fn coords(&self, root: usize) -> Option<Vec<FieldScalar>> {
        let (ci, local) = self.root_component[root];
        let comp = &self.components[ci];
        if comp.backend != Backend::Geometric {
            return None;
        }
        let mut out = vec![FieldScalar::zero(); self.rank];
        let simple_offset: usize = self.components[..ci].iter().map(|c| c.rank).sum();
        for (j, c) in comp.root_coords(local).into_iter().enumerate() {
            out[simple_offset + j] = c;
        }
        Some(out)
    }

    /// Exact inner product of two roots; `None` when a dihedral component is
    /// involved (cross-component pairings are always zero and still returned).
    pub fn pairing(&self, x: usize, y: usize) -> Option<FieldScalar> {
        let (ci, li) = self.root_component[x];
        let (cj, lj) = self.root_component[y];
        if ci != cj {
            return Some(FieldScalar::zero());
        }
        let comp = &self.components[ci];
        if comp.backend != Backend::Geometric {
            return None;
        }
        Some(comp.pairing(&comp.root_coords(li), &comp.root_coords(lj)))
    }

    /// The bipartite partition (Π₊, Π₋) as global positive-root indices.
    pub fn bipartite_partition(&self) -> (Vec<usize>, Vec<usize>) {
        let mut plus = vec![];
        let mut minus = vec![];
        for c in &self.components {
            for &s in &c.plus {
                plus.push(c.pos_offset + c.simple_local[s]);
            }
            for &s in &c.minus {
                minus.push(c.pos_offset + c.simple_local[s]);
            }
        }
        (plus, minus)
    }

    /// Permutation of the root list induced by the reflection in `root`
    /// (positive index). `t_α = t_{-α}` by construction.
    pub fn reflection_perm(&self, positive_root: usize) -> &[u16] {
        &self.reflection_perms[positive_root]
    }

    fn build_reflection_perm(&self, positive_root: usize) -> CoxResult<Vec<u16>> {
        let n_all = 2 * self.num_positive;
        let mut perm: Vec<u16> = (0..n_all as u16).collect();
        let (ci, alpha_local) = self.root_component[positive_root];
        let comp = &self.components[ci];
        match &comp.backend {
            Backend::Geometric => {
                let lookup = comp.coord_lookup();
                let alpha = comp.root_coords(alpha_local);
                let alpha_norm = comp.pairing(&alpha, &alpha);
                for local in 0..comp.num_positive {
                    let x = comp.root_coords(local);
                    let pr = comp.pairing(&x, &alpha);
                    let coeff = &(&FieldScalar::integer(2) * &pr) / &alpha_norm;
                    let image: Vec<FieldScalar> =
                        x.iter().zip(&alpha).map(|(xi, ai)| xi - &(&coeff * ai)).collect();
                    let (img_local, negated) = match lookup.get(&image) {
                        Some(&i) => (i, false),
                        None => {
                            let neg: Vec<FieldScalar> = image.iter().map(|c| -c).collect();
                            match lookup.get(&neg) {
                                Some(&i) => (i, true),
                                None => {
                                    return Err(CoxError::Internal(format!(
                                        "{}: root set not closed under reflection",
                                        comp.family
                                    )))
                                }
                            }
                        }
                    };
                    // image of the positive root `local`
                    let src_pos = self.num_positive; // negative block offset
                    let global_img = if negated {
                        comp.pos_offset + img_local + src_pos
                    } else {
                        comp.pos_offset + img_local
                    };
                    perm[comp.pos_offset + local] = global_img as u16;
                    // the negation maps to the negated image
                    let global_img_neg = if negated {
                        comp.pos_offset + img_local
                    } else {
                        comp.pos_offset + img_local + src_pos
                    };
                    perm[comp.pos_offset + local + src_pos] = global_img_neg as u16;
                }
            }
            Backend::Dihedral { m } => {
                // Roots sit at index-angles jπ/m for j in 0..2m (j and j+m
                // are negatives); t_k sends j to 2k + m - j mod 2m.
                let m = *m;
                let k = alpha_local % m;
                for j in 0..2 * m {
                    let img = (2 * k + m + 2 * m - j) % (2 * m);
                    let (gj, gi) = (self.dihedral_global(ci, j), self.dihedral_global(ci, img));
                    perm[gj] = gi as u16;
                }
            }
        }
        Ok(perm)
    }

    /// Global root index of a dihedral component's angle-index j in 0..2m.
    fn dihedral_global(&self, ci: usize, j: usize) -> usize {
        let comp = &self.components[ci];
        let m = comp.num_positive;
        if j < m {
            comp.pos_offset + j
        } else {
            comp.pos_offset + (j - m) + self.num_positive
        }
    }

    /// Angle-index in 0..2m of a global root in a dihedral component.
    /// (Local indices already follow the angle layout: positives 0..m,
    /// negatives m..2m.)
    pub(crate) fn dihedral_local(&self, root: usize) -> usize {
        self.root_component[root].1
    }

    fn verify_build(&self) -> CoxResult<()> {
        // Every simple reflection must permute the root list; guaranteed by
        // construction, but the bipartite classes' orthogonality is a real
        // convention check.
        let (plus, minus) = self.bipartite_partition();
        for class in [&plus, &minus] {
            for (i, &a) in class.iter().enumerate() {
                for &b in class.iter().skip(i + 1) {
                    if let Some(p) = self.pairing(a, b) {
                        if !p.is_zero() {
                            return Err(CoxError::Internal(
                                "bipartite class is not orthogonal".into(),
                            ));
                        }
                    }
                }
            }
        }
        // Positive roots of crystallographic components decompose integrally.
        for c in &self.components {
            if c.backend != Backend::Geometric {
                continue;
            }
            let crystallographic = matches!(
                c.family,
                Family::A(_) | Family::B(_) | Family::D(_) | Family::E(_) | Family::F4 | Family::G2
            ) || matches!(c.family, Family::I2(m) if m == 3 || m == 4 || m == 6);
            if !crystallographic {
                continue;
            }
            for v in &c.coords {
                for coord in v {
                    let (a, b) = coord.parts();
                    if !b.is_zero() || !a.denom().is_one() {
                        return Err(CoxError::Internal(format!(
                            "{}: non-integral positive root coordinates",
                            c.family
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The standard parabolic subsystem obtained by REMOVING the simple
    /// roots `sigma` (given as positions 0..n in the component-major simple
    /// order) and intersecting with the span of the rest. The bipartite
    /// partition and class orderings are inherited, not recomputed.
    pub fn standard_parabolic(&self, sigma: &[usize]) -> CoxResult<ParabolicRestriction> {
        let n = self.rank;
        let mut removed = vec![false; n];
        for &s in sigma {
            if s >= n {
                return Err(CoxError::Argument(format!(
                    "simple-root position {s} out of range for rank {n}"
                )));
            }
            removed[s] = true;
        }

        let mut sub_components: Vec<Component> = vec![];
        let mut root_map: Vec<usize> = vec![];
        let mut simple_offset = 0;
        let mut pos_offset = 0;
        for comp in &self.components {
            let kept: Vec<usize> = (0..comp.rank)
                .filter(|&i| !removed[simple_offset + i])
                .collect();
            simple_offset += comp.rank;
            if kept.is_empty() {
                continue;
            }
            // Split the kept simples into connected sub-diagram components.
            for group in connected_groups(comp, &kept) {
                let sub = restrict_component(comp, &group, pos_offset, &mut root_map)?;
                pos_offset += sub.num_positive;
                sub_components.push(sub);
            }
        }

        let spec = TypeSpec {
            components: sub_components.iter().map(|c| c.family.clone()).collect(),
        };
        let rank: usize = sub_components.iter().map(|c| c.rank).sum();
        let num_positive = pos_offset;

        // The root_map built so far covers positives; negatives mirror it.
        let neg_map: Vec<usize> = root_map.iter().map(|&r| self.negate(r)).collect();
        root_map.extend(neg_map);

        let mut root_component = Vec::with_capacity(2 * num_positive);
        for (ci, c) in sub_components.iter().enumerate() {
            for local in 0..c.num_positive {
                root_component.push((ci, local));
            }
        }
        for (ci, c) in sub_components.iter().enumerate() {
            for local in 0..c.num_positive {
                root_component.push((ci, local + c.num_positive));
            }
        }
        let mut simple_global = vec![];
        for c in &sub_components {
            for &s in &c.simple_local {
                simple_global.push(c.pos_offset + s);
            }
        }

        let mut subsystem = RootSystem {
            spec,
            rank,
            num_positive,
            components: sub_components,
            root_component,
            simple_global,
            reflection_perms: vec![],
        };
        subsystem.reflection_perms = (0..num_positive)
            .map(|i| subsystem.build_reflection_perm(i))
            .collect::<CoxResult<Vec<_>>>()?;
        subsystem.verify_build()?;
        Ok(ParabolicRestriction {
            subsystem,
            root_map,
        })
    }
}

/// Connected components of the sub-diagram induced on `kept` (local simple
/// positions), each listed in build order.
fn connected_groups(comp: &Component, kept: &[usize]) -> Vec<Vec<usize>> {
    let adjacent = |i: usize, j: usize| -> bool {
        match comp.backend {
            Backend::Dihedral { .. } => true,
            Backend::Geometric => !comp.gram[i][j].is_zero(),
        }
    };
    let mut groups = vec![];
    let mut seen: Vec<usize> = vec![];
    for &start in kept {
        if seen.contains(&start) {
            continue;
        }
        let mut group = vec![start];
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for &j in kept {
                if !group.contains(&j) && adjacent(i, j) {
                    group.push(j);
                    frontier.push(j);
                }
            }
        }
        group.sort_unstable();
        seen.extend(&group);
        groups.push(group);
    }
    groups
}

/// Restricts one connected group of simples of a geometric or dihedral
/// component to a standalone component, appending its positive roots'
/// parent-global indices to `root_map`.
fn restrict_component(
    comp: &Component,
    group: &[usize],
    pos_offset: usize,
    root_map: &mut Vec<usize>,
) -> CoxResult<Component> {
    let sub_rank = group.len();
    match &comp.backend {
        Backend::Dihedral { .. } => {
            if sub_rank == 2 {
                // whole component survives
                let mut sub = comp.clone();
                sub.pos_offset = pos_offset;
                for local in 0..comp.num_positive {
                    root_map.push(comp.pos_offset + local);
                }
                return Ok(sub);
            }
            // single simple root: an A1 subsystem, kept abstract-free by
            // giving it honest geometric coordinates
            let local_simple = comp.simple_local[group[0]];
            root_map.push(comp.pos_offset + local_simple);
            let inherited_plus = comp.plus.contains(&group[0]);
            Ok(Component {
                family: Family::A(1),
                backend: Backend::Geometric,
                rank: 1,
                num_positive: 1,
                pos_offset,
                gram: vec![vec![FieldScalar::integer(2)]],
                coords: vec![vec![FieldScalar::one()]],
                simple_local: vec![0],
                plus: if inherited_plus { vec![0] } else { vec![] },
                minus: if inherited_plus { vec![] } else { vec![0] },
            })
        }
        Backend::Geometric => {
            // Positive roots of the subsystem = parent positives supported on
            // `group`; coordinates restrict to the kept positions.
            let mut sub_positives: Vec<(Vec<FieldScalar>, usize)> = vec![];
            for (local, v) in comp.coords.iter().enumerate() {
                let supported = v
                    .iter()
                    .enumerate()
                    .all(|(i, c)| group.contains(&i) || c.is_zero());
                if supported {
                    let restricted: Vec<FieldScalar> =
                        group.iter().map(|&i| v[i].clone()).collect();
                    sub_positives.push((restricted, local));
                }
            }
            sub_positives.sort();
            let gram: Vec<Vec<FieldScalar>> = group
                .iter()
                .map(|&i| group.iter().map(|&j| comp.gram[i][j].clone()).collect())
                .collect();
            let mut simple_local = vec![0; sub_rank];
            for (p, (v, _)) in sub_positives.iter().enumerate() {
                if let Some(i) = unit_coordinate(v) {
                    simple_local[i] = p;
                }
            }
            for (_, parent_local) in &sub_positives {
                root_map.push(comp.pos_offset + parent_local);
            }
            let plus: Vec<usize> = (0..sub_rank)
                .filter(|&i| comp.plus.contains(&group[i]))
                .collect();
            let minus: Vec<usize> = (0..sub_rank)
                .filter(|&i| comp.minus.contains(&group[i]))
                .collect();
            let family = identify_family(&gram, sub_positives.len(), sub_rank)?;
            Ok(Component {
                family,
                backend: Backend::Geometric,
                rank: sub_rank,
                num_positive: sub_positives.len(),
                pos_offset,
                gram,
                coords: sub_positives.into_iter().map(|(v, _)| v).collect(),
                simple_local,
                plus,
                minus,
            })
        }
    }
}

/// Family label for a restricted component; used only for display, every
/// computation reads the Gram matrix directly. Rank and positive-root count
/// identify the type except for B₆ vs E₆ (both 36), which the root lengths
/// settle.
fn identify_family(
    gram: &[Vec<FieldScalar>],
    num_positive: usize,
    rank: usize,
) -> CoxResult<Family> {
    let mut candidates: Vec<Family> = vec![];
    match rank {
        1 => candidates.push(Family::A(1)),
        2 => {
            candidates.extend([Family::A(2), Family::B(2), Family::G2, Family::H(2)]);
            if num_positive >= 3 {
                candidates.push(Family::I2(num_positive));
            }
        }
        n => {
            candidates.push(Family::A(n));
            candidates.push(Family::B(n));
            if n >= 4 {
                candidates.push(Family::D(n));
            }
            if (6..=8).contains(&n) {
                candidates.push(Family::E(n));
            }
            if n == 4 {
                candidates.push(Family::F4);
            }
            if n <= 4 {
                candidates.push(Family::H(n));
            }
        }
    }
    let equal_lengths = (0..rank).all(|i| gram[i][i] == gram[0][0]);
    for cand in candidates {
        if cand.rank() != rank || cand.num_positive() != num_positive {
            continue;
        }
        let cand_equal_lengths = !matches!(cand, Family::B(_) | Family::F4 | Family::G2);
        if cand_equal_lengths == equal_lengths {
            return Ok(cand);
        }
    }
    Err(CoxError::Internal(format!(
        "unrecognized restricted component: rank {rank}, {num_positive} positive roots"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        build_root_system(&TypeSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(TypeSpec::parse("A3").unwrap().name(), "A3");
        assert_eq!(TypeSpec::parse("b4").unwrap().name(), "B4");
        assert_eq!(TypeSpec::parse("C3").unwrap().name(), "B3");
        assert_eq!(TypeSpec::parse("I2(7)").unwrap().name(), "I2(7)");
        assert_eq!(TypeSpec::parse("a2xA1").unwrap().name(), "A2xA1");
        assert_eq!(TypeSpec::parse(" h3 ").unwrap().name(), "H3");
        for bad in ["", "A0", "B1", "D3", "E5", "F3", "G3", "H5", "I2(2)", "I3(5)", "Q2"] {
            assert!(TypeSpec::parse(bad).is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn a1_has_two_roots() {
        let rs = build("A1");
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.num_roots(), 2);
    }

    #[test]
    fn a2_closure() {
        let rs = build("A2");
        assert_eq!(rs.num_positive(), 3);
        // positive roots are exactly α₁, α₂, α₁+α₂
        let coords: Vec<Vec<FieldScalar>> =
            (0..3).map(|i| rs.coords(i).unwrap()).collect();
        let expect = |a: i64, b: i64| vec![FieldScalar::integer(a), FieldScalar::integer(b)];
        assert!(coords.contains(&expect(1, 0)));
        assert!(coords.contains(&expect(0, 1)));
        assert!(coords.contains(&expect(1, 1)));
    }

    #[test]
    fn counts_per_type() {
        for (name, n_pos) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("B4", 16),
            ("D4", 12),
            ("D5", 20),
            ("F4", 24),
            ("G2", 6),
            ("H2", 5),
            ("H3", 15),
            ("I2(5)", 5),
            ("I2(7)", 7),
            ("I2(10)", 10),
            ("A2xA1", 4),
        ] {
            let rs = build(name);
            assert_eq!(rs.num_positive(), n_pos, "{name}");
            assert_eq!(rs.num_roots(), 2 * n_pos, "{name}");
        }
    }

    #[test]
    #[ignore = "larger builds, covered again by the acceptance suite"]
    fn counts_large_types() {
        for (name, n_pos) in [("E6", 36), ("E7", 63), ("H4", 60), ("B5", 25), ("A6", 21)] {
            assert_eq!(build(name).num_positive(), n_pos, "{name}");
        }
    }

    #[test]
    fn h3_coordinates_live_in_qsqrt5() {
        let rs = build("H3");
        assert_eq!(rs.num_positive(), 15);
        let any_irrational = (0..15)
            .any(|i| rs.coords(i).unwrap().iter().any(|c| !c.is_rational()));
        assert!(any_irrational);
    }

    #[test]
    fn negation_layout() {
        let rs = build("B3");
        for i in 0..rs.num_positive() {
            let pos = rs.coords(i).unwrap();
            let neg = rs.coords(rs.negate(i)).unwrap();
            for (p, n) in pos.iter().zip(&neg) {
                assert_eq!(&-p, n);
            }
        }
    }

    #[test]
    fn bipartite_examples() {
        let (p, m) = build("A1").bipartite_partition();
        assert_eq!((p.len(), m.len()), (1, 0));

        let rs = build("A3");
        let (p, m) = rs.bipartite_partition();
        // path diagram α₁-α₂-α₃: classes {α₁, α₃} and {α₂}
        let simples = rs.simple_roots();
        assert_eq!(p, vec![simples[0], simples[2]]);
        assert_eq!(m, vec![simples[1]]);

        let (p, m) = build("A1xA1").bipartite_partition();
        assert_eq!((p.len(), m.len()), (2, 0));
    }

    #[test]
    fn bipartite_classes_are_orthogonal() {
        for name in ["A4", "B4", "D4", "F4", "H3"] {
            let rs = build(name);
            let (p, m) = rs.bipartite_partition();
            for class in [p, m] {
                for (i, &a) in class.iter().enumerate() {
                    for &b in class.iter().skip(i + 1) {
                        assert!(rs.pairing(a, b).unwrap().is_zero(), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_restriction_examples() {
        let a2 = build("A2");
        // removing α₁ leaves A1 on {±α₂}
        let res = a2.standard_parabolic(&[0]).unwrap();
        assert_eq!(res.subsystem.rank(), 1);
        assert_eq!(res.subsystem.num_positive(), 1);
        let parent_root = res.root_map[0];
        assert_eq!(
            a2.coords(parent_root).unwrap(),
            vec![FieldScalar::integer(0), FieldScalar::integer(1)]
        );

        // removing nothing keeps everything
        let res = a2.standard_parabolic(&[]).unwrap();
        assert_eq!(res.subsystem.num_positive(), 3);

        // removing all simples leaves the empty rank-0 system
        let res = a2.standard_parabolic(&[0, 1]).unwrap();
        assert_eq!(res.subsystem.rank(), 0);
        assert_eq!(res.subsystem.num_roots(), 0);

        assert!(a2.standard_parabolic(&[7]).is_err());
    }

    #[test]
    fn parabolic_composes() {
        let rs = build("A3");
        // removing σ then τ equals removing σ ∪ τ
        let step1 = rs.standard_parabolic(&[0]).unwrap();
        let step2 = step1.subsystem.standard_parabolic(&[0]).unwrap();
        let combined = rs.standard_parabolic(&[0, 1]).unwrap();
        assert_eq!(
            step2.subsystem.num_positive(),
            combined.subsystem.num_positive()
        );
        assert_eq!(step2.subsystem.rank(), combined.subsystem.rank());
    }

    #[test]
    fn parabolic_disconnects() {
        let rs = build("A3");
        // removing the middle of the path leaves two A1 components
        let res = rs.standard_parabolic(&[1]).unwrap();
        assert_eq!(res.subsystem.components().len(), 2);
        assert_eq!(res.subsystem.rank(), 2);
        assert_eq!(res.subsystem.num_positive(), 2);
    }

    #[test]
    fn parabolic_inherits_classes() {
        let rs = build("A3");
        // α₂ is in the minus class; after removing α₁ it must stay there.
        let res = rs.standard_parabolic(&[0]).unwrap();
        let sub = &res.subsystem;
        let (plus, minus) = sub.bipartite_partition();
        // the sub-simples of A3 \ {α₁} are α₂ (minus) and α₃ (plus)
        assert_eq!(plus.len(), 1);
        assert_eq!(minus.len(), 1);
        let alpha2_parent = rs.simple_roots()[1];
        let minus_parent = res.root_map[minus[0]];
        assert_eq!(minus_parent, alpha2_parent);
    }

    #[test]
    fn h3_parabolic_contains_h2() {
        let rs = build("H3");
        let res = rs.standard_parabolic(&[2]).unwrap();
        assert_eq!(res.subsystem.num_positive(), 5); // H2 = I2(5)
        assert_eq!(res.subsystem.rank(), 2);
    }

    #[test]
    fn dihedral_reflection_perms_are_involutions() {
        let rs = build("I2(7)");
        for t in 0..rs.num_positive() {
            let p = rs.reflection_perm(t);
            for j in 0..rs.num_roots() {
                assert_eq!(p[p[j] as usize] as usize, j);
            }
            // t_α(α) = -α
            assert_eq!(p[t] as usize, rs.negate(t));
        }
    }
}
