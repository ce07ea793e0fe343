//! Export schemas and the content-addressed cache for expensive
//! enumerations.
//!
//! Complex schema:
//! `{"type":"A2","n":2,"vertices":[{"id":0,"root":[...],"class":"pos|neg_simple"}...],
//!   "facets":[[ids]...],"f_kl":[[...]]}`
//! with roots rendered as exact scalar strings ("3/2", "1/2+1/2r5") in the
//! simple-root basis. Dihedral components have no coordinates; their roots
//! are rendered as one-element arrays with signed 1-based labels ("1", "-1").
//!
//! Lattice schema:
//! `{"type":"A2","n":2,"elements":[{"id":0,"rank":0,"perm":[...]}...],
//!   "covers":[[i,j]...],"mobius":[...]}`.
//!
//! A cache entry wraps a payload with its key (type, kind, format version)
//! and a SHA-256 checksum of the canonical payload serialization; the
//! checksum is verified on load and a version mismatch is a miss, never a
//! partial read.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cluster::ClusterComplex;
use crate::error::{CoxError, CoxResult};
use crate::nclattice::NCLattice;
use crate::roots::{Backend, RootSystem};
use crate::wgroup::GroupElement;

/// Bumped whenever the payload schemas change; a mismatch forces recompute.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: u32,
    pub root: Vec<String>,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(rename = "type")]
    pub type_spec: String,
    pub n: usize,
    pub vertices: Vec<VertexJson>,
    pub facets: Vec<Vec<u16>>,
    pub f_kl: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub id: u32,
    pub rank: usize,
    pub perm: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    #[serde(rename = "type")]
    pub type_spec: String,
    pub n: usize,
    pub elements: Vec<ElementJson>,
    pub covers: Vec<(u32, u32)>,
    pub mobius: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    #[serde(rename = "type")]
    pub type_spec: String,
    pub kind: String,
    pub version: u32,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry<T> {
    key: CacheKey,
    checksum: String,
    payload: T,
}

fn checksum_of<T: Serialize>(payload: &T) -> String {
    let canonical = serde_json::to_string(payload).expect("payload serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Exact string rendering of a root for the export schema.
pub fn render_root(rs: &RootSystem, root: usize) -> Vec<String> {
    match rs.coords(root) {
        Some(coords) => coords.iter().map(|c| c.to_string()).collect(),
        None => {
            // dihedral backend: signed 1-based positive-root label
            let label = if rs.is_positive(root) {
                format!("{}", root - positive_block_offset(rs, root) + 1)
            } else {
                let pos = rs.negate(root);
                format!("-{}", pos - positive_block_offset(rs, pos) + 1)
            };
            vec![label]
        }
    }
}

fn positive_block_offset(rs: &RootSystem, positive_root: usize) -> usize {
    let (ci, _) = rs.component_of_root(positive_root);
    rs.components()[ci].pos_offset
}

pub fn complex_to_json(rs: &RootSystem, cx: &ClusterComplex) -> ComplexJson {
    let vertices = (0..cx.num_vertices())
        .map(|v| {
            let root = cx.vertex_root(v);
            VertexJson {
                id: v as u32,
                root: render_root(rs, root),
                class: if rs.is_positive(root) {
                    "pos".into()
                } else {
                    "neg_simple".into()
                },
            }
        })
        .collect();
    ComplexJson {
        type_spec: rs.spec().name(),
        n: rs.rank(),
        vertices,
        facets: cx.facets().iter().map(|f| f.vertices.clone()).collect(),
        f_kl: cx.f_kl().to_vec(),
    }
}

pub fn lattice_to_json(rs: &RootSystem, lattice: &NCLattice) -> LatticeJson {
    LatticeJson {
        type_spec: rs.spec().name(),
        n: rs.rank(),
        elements: (0..lattice.len())
            .map(|i| ElementJson {
                id: i as u32,
                rank: lattice.rank_of(i),
                perm: lattice.element(i).perm().to_vec(),
            })
            .collect(),
        covers: lattice.covers().to_vec(),
        mobius: lattice.mobius_vector().to_vec(),
    }
}

/// Rebuilds the lattice from a payload, revalidating order and Möbius data.
pub fn lattice_from_json(rs: &RootSystem, j: &LatticeJson) -> CoxResult<NCLattice> {
    if j.type_spec != rs.spec().name() || j.n != rs.rank() {
        return Err(CoxError::Internal("lattice payload is for another type".into()));
    }
    let elements: Vec<GroupElement> = j
        .elements
        .iter()
        .map(|e| GroupElement::from_perm(e.perm.clone()))
        .collect();
    let ranks: Vec<usize> = j.elements.iter().map(|e| e.rank).collect();
    NCLattice::from_parts(elements, ranks, j.covers.clone(), j.mobius.clone())
}

/// Rebuilds the complex from a payload, revalidating the vertex table,
/// every face element, and the face census.
pub fn complex_from_json(
    rs: &RootSystem,
    lattice: &NCLattice,
    j: &ComplexJson,
) -> CoxResult<ClusterComplex> {
    if j.type_spec != rs.spec().name() || j.n != rs.rank() {
        return Err(CoxError::Internal("complex payload is for another type".into()));
    }
    let cx = ClusterComplex::from_facets(rs, lattice, &j.facets)?;
    let expected = complex_to_json(rs, &cx);
    if expected != *j {
        return Err(CoxError::Internal(
            "complex payload disagrees with its reconstruction".into(),
        ));
    }
    Ok(cx)
}

/// Writes a bare payload file (the export format).
pub fn write_export<T: Serialize>(path: &Path, payload: &T) -> CoxResult<()> {
    let text = serde_json::to_string_pretty(payload)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_complex_export(path: &Path) -> CoxResult<ComplexJson> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn read_lattice_export(path: &Path) -> CoxResult<LatticeJson> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// A directory of content-addressed cache entries.
#[derive(Clone, Debug)]
pub struct CacheDir {
    dir: PathBuf,
}

impl CacheDir {
    pub fn new(dir: PathBuf) -> CacheDir {
        CacheDir { dir }
    }

    /// Resolution order: explicit flag, then the COXCAT_CACHE environment
    /// variable, then ~/.cache/coxcat. `None` disables caching.
    pub fn resolve(flag: Option<PathBuf>) -> Option<CacheDir> {
        if let Some(dir) = flag {
            return Some(CacheDir::new(dir));
        }
        if let Ok(dir) = std::env::var("COXCAT_CACHE") {
            if !dir.is_empty() {
                return Some(CacheDir::new(PathBuf::from(dir)));
            }
        }
        std::env::home_dir().map(|h| CacheDir::new(h.join(".cache").join("coxcat")))
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    fn entry_path(&self, key: &CacheKey) -> PathBuf {
        let digest = Sha256::digest(serde_json::to_string(key).expect("key serializes"));
        let hex: String = digest.iter().take(16).map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{hex}.json"))
    }

    fn store<T: Serialize>(&self, key: CacheKey, payload: &T) -> CoxResult<PathBuf> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.entry_path(&key);
        let entry = CacheEntry {
            checksum: checksum_of(payload),
            key,
            payload,
        };
        std::fs::write(&path, serde_json::to_string(&entry)?)?;
        Ok(path)
    }

    fn load<T: for<'de> Deserialize<'de> + Serialize>(&self, key: &CacheKey) -> Option<T> {
        let path = self.entry_path(key);
        let text = std::fs::read_to_string(path).ok()?;
        let entry: CacheEntry<T> = serde_json::from_str(&text).ok()?;
        if entry.key != *key || checksum_of(&entry.payload) != entry.checksum {
            return None;
        }
        Some(entry.payload)
    }

    fn key(rs: &RootSystem, kind: &str) -> CacheKey {
        CacheKey {
            type_spec: rs.spec().name(),
            kind: kind.into(),
            version: FORMAT_VERSION,
        }
    }

    pub fn store_lattice(&self, rs: &RootSystem, lattice: &NCLattice) -> CoxResult<PathBuf> {
        self.store(Self::key(rs, "lattice"), &lattice_to_json(rs, lattice))
    }

    pub fn load_lattice(&self, rs: &RootSystem) -> Option<NCLattice> {
        let payload: LatticeJson = self.load(&Self::key(rs, "lattice"))?;
        lattice_from_json(rs, &payload).ok()
    }

    pub fn store_complex(&self, rs: &RootSystem, cx: &ClusterComplex) -> CoxResult<PathBuf> {
        self.store(Self::key(rs, "complex"), &complex_to_json(rs, cx))
    }

    pub fn load_complex(&self, rs: &RootSystem, lattice: &NCLattice) -> Option<ClusterComplex> {
        let payload: ComplexJson = self.load(&Self::key(rs, "complex"))?;
        complex_from_json(rs, lattice, &payload).ok()
    }
}

/// Tells whether a system contains a dihedral component (affects only how
/// roots are rendered in exports).
pub fn has_dihedral(rs: &RootSystem) -> bool {
    rs.components()
        .iter()
        .any(|c| matches!(c.backend, Backend::Dihedral { .. }))
}
