//! JSON file formats for categories, functors, natural transformations,
//! monoidal/SMCC structures, witnesses and IMLL environments, plus the
//! loaders the CLI uses. All formats reject unknown keys.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::category::FiniteCategory;
use crate::constructions::ProductWitness;
use crate::error::{CatError, Result};
use crate::functor_nat::{extend_components, FunctorMap, NatTransMap};
use crate::imll::Environment;
use crate::kernel::Carrier;
use crate::monoidal::{BraidingData, ClosedStructure, MonoidalStructure, SmccModel};
use crate::DEFAULT_MAX_SIZE;

/// The brute-force size guard: `CATKIT_MAX_SIZE` overrides the default.
pub fn effective_max_size() -> Result<usize> {
    match std::env::var("CATKIT_MAX_SIZE") {
        Ok(v) => v.trim().parse().map_err(|_| {
            CatError::Environment(format!("CATKIT_MAX_SIZE must be a number, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_MAX_SIZE),
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CatError::input(format!("{}: {e}", path.display())))
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

// --- categories -----------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub size: usize,
    pub existing: Vec<usize>,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub comp: Vec<Vec<usize>>,
}

impl CategoryFile {
    pub fn to_category(&self, max_size: usize) -> Result<FiniteCategory> {
        if self.size > max_size {
            return Err(CatError::Resource(format!(
                "carrier size {} exceeds the limit {max_size}",
                self.size
            )));
        }
        let carrier = Carrier::from_existing_indices(self.size, &self.existing)?;
        FiniteCategory::new(carrier, self.dom.clone(), self.cod.clone(), self.comp.clone())
    }

    pub fn from_category(cat: &FiniteCategory) -> CategoryFile {
        let n = cat.size();
        CategoryFile {
            size: n,
            existing: (0..n).filter(|&x| cat.ex(x)).collect(),
            dom: (0..n).map(|x| cat.dom(x)).collect(),
            cod: (0..n).map(|x| cat.cod(x)).collect(),
            comp: (0..n)
                .map(|x| (0..n).map(|y| cat.comp(x, y)).collect())
                .collect(),
        }
    }
}

pub fn load_category(path: &Path, max_size: usize) -> Result<FiniteCategory> {
    read_json::<CategoryFile>(path)?.to_category(max_size)
}

// --- functors and natural transformations ---------------------------------

/// `source`/`target` are paths to category files, resolved relative to the
/// functor file's own directory.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

fn sibling(of: &Path, rel: &str) -> std::path::PathBuf {
    let rel_path = Path::new(rel);
    if rel_path.is_absolute() {
        rel_path.to_path_buf()
    } else {
        of.parent().unwrap_or(Path::new(".")).join(rel_path)
    }
}

pub fn load_functor(path: &Path, max_size: usize) -> Result<FunctorMap> {
    let file: FunctorFile = read_json(path)?;
    let source = Arc::new(load_category(&sibling(path, &file.source), max_size)?);
    let target = Arc::new(load_category(&sibling(path, &file.target), max_size)?);
    FunctorMap::new(source, target, file.map)
}

/// Either a total `eta` table or a `components` table over identities
/// (extended per the naturality recipe) — exactly one of the two.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatTransFile {
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<BTreeMap<String, usize>>,
}

pub fn load_nattrans(path: &Path, max_size: usize) -> Result<NatTransMap> {
    let file: NatTransFile = read_json(path)?;
    let f = load_functor(&sibling(path, &file.f), max_size)?;
    let g = load_functor(&sibling(path, &file.g), max_size)?;
    match (&file.eta, &file.components) {
        (Some(eta), None) => NatTransMap::new(f, g, eta.clone()),
        (None, Some(components)) => {
            let mut table = BTreeMap::new();
            for (k, &v) in components {
                let id: usize = k.parse().map_err(|_| {
                    CatError::input(format!("component key {k:?} is not an identity index"))
                })?;
                table.insert(id, v);
            }
            extend_components(&table, &f, &g)
        }
        _ => Err(CatError::input(
            "natural transformation file needs exactly one of \"eta\" and \"components\"",
        )),
    }
}

// --- monoidal / SMCC ------------------------------------------------------

fn parse_key<const N: usize>(key: &str) -> Result<[usize; N]> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != N {
        return Err(CatError::input(format!(
            "key {key:?} must have {N} comma-separated indices"
        )));
    }
    let mut out = [0usize; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.trim().parse().map_err(|_| {
            CatError::input(format!("key {key:?} contains a non-numeric index"))
        })?;
    }
    Ok(out)
}

fn key3_map(m: &BTreeMap<String, usize>) -> Result<BTreeMap<(usize, usize, usize), usize>> {
    m.iter()
        .map(|(k, &v)| parse_key::<3>(k).map(|[a, b, c]| ((a, b, c), v)))
        .collect()
}

fn key2_map(m: &BTreeMap<String, usize>) -> Result<BTreeMap<(usize, usize), usize>> {
    m.iter()
        .map(|(k, &v)| parse_key::<2>(k).map(|[a, b]| ((a, b), v)))
        .collect()
}

fn key1_map(m: &BTreeMap<String, usize>) -> Result<BTreeMap<usize, usize>> {
    m.iter()
        .map(|(k, &v)| parse_key::<1>(k).map(|[a]| (a, v)))
        .collect()
}

fn key3_file(m: &BTreeMap<(usize, usize, usize), usize>) -> BTreeMap<String, usize> {
    m.iter()
        .map(|(&(a, b, c), &v)| (format!("{a},{b},{c}"), v))
        .collect()
}

fn key2_file(m: &BTreeMap<(usize, usize), usize>) -> BTreeMap<String, usize> {
    m.iter().map(|(&(a, b), &v)| (format!("{a},{b}"), v)).collect()
}

fn key1_file(m: &BTreeMap<usize, usize>) -> BTreeMap<String, usize> {
    m.iter().map(|(&a, &v)| (a.to_string(), v)).collect()
}

/// Monoidal structure over an inline category; the braided/closed tables are
/// optional so the same format serves `check monoidal` and `check smcc`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalFile {
    pub category: CategoryFile,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
    pub alpha: BTreeMap<String, usize>,
    pub alpha_inv: BTreeMap<String, usize>,
    pub lambda: BTreeMap<String, usize>,
    pub lambda_inv: BTreeMap<String, usize>,
    pub rho: BTreeMap<String, usize>,
    pub rho_inv: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_inv: Option<BTreeMap<String, usize>>,
    #[serde(rename = "impl", default, skip_serializing_if = "Option::is_none")]
    pub impl_table: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<BTreeMap<String, usize>>,
}

impl MonoidalFile {
    pub fn to_monoidal(&self, max_size: usize) -> Result<MonoidalStructure> {
        let base = Arc::new(self.category.to_category(max_size)?);
        let n = base.size();
        let mut tensor = Vec::with_capacity(n * n);
        if self.tensor.len() != n {
            return Err(CatError::input(format!(
                "tensor table must have {n} rows (got {})",
                self.tensor.len()
            )));
        }
        for (x, row) in self.tensor.iter().enumerate() {
            if row.len() != n {
                return Err(CatError::input(format!(
                    "tensor row {x} has length {} (expected {n})",
                    row.len()
                )));
            }
            tensor.extend_from_slice(row);
        }
        Ok(MonoidalStructure {
            base,
            tensor,
            unit: self.unit,
            alpha: key3_map(&self.alpha)?,
            alpha_inv: key3_map(&self.alpha_inv)?,
            lam: key1_map(&self.lambda)?,
            lam_inv: key1_map(&self.lambda_inv)?,
            rho: key1_map(&self.rho)?,
            rho_inv: key1_map(&self.rho_inv)?,
        })
    }

    pub fn to_smcc(&self, max_size: usize) -> Result<SmccModel> {
        let monoidal = self.to_monoidal(max_size)?;
        let need = |name: &str| CatError::input(format!("smcc file is missing {name:?}"));
        let braiding = BraidingData {
            gamma: key2_map(self.gamma.as_ref().ok_or_else(|| need("gamma"))?)?,
            gamma_inv: key2_map(self.gamma_inv.as_ref().ok_or_else(|| need("gamma_inv"))?)?,
        };
        let closed = ClosedStructure {
            impl_table: self.impl_table.clone().ok_or_else(|| need("impl"))?,
            phi: key3_map(self.phi.as_ref().ok_or_else(|| need("phi"))?)?,
            psi: key3_map(self.psi.as_ref().ok_or_else(|| need("psi"))?)?,
        };
        Ok(SmccModel {
            monoidal,
            braiding,
            closed,
        })
    }

    pub fn from_smcc(s: &SmccModel) -> MonoidalFile {
        let m = &s.monoidal;
        let n = m.base.size();
        MonoidalFile {
            category: CategoryFile::from_category(&m.base),
            tensor: m.tensor.chunks(n).map(|r| r.to_vec()).collect(),
            unit: m.unit,
            alpha: key3_file(&m.alpha),
            alpha_inv: key3_file(&m.alpha_inv),
            lambda: key1_file(&m.lam),
            lambda_inv: key1_file(&m.lam_inv),
            rho: key1_file(&m.rho),
            rho_inv: key1_file(&m.rho_inv),
            gamma: Some(key2_file(&s.braiding.gamma)),
            gamma_inv: Some(key2_file(&s.braiding.gamma_inv)),
            impl_table: Some(s.closed.impl_table.clone()),
            phi: Some(key3_file(&s.closed.phi)),
            psi: Some(key3_file(&s.closed.psi)),
        }
    }
}

pub fn load_monoidal(path: &Path, max_size: usize) -> Result<MonoidalStructure> {
    read_json::<MonoidalFile>(path)?.to_monoidal(max_size)
}

pub fn load_smcc(path: &Path, max_size: usize) -> Result<SmccModel> {
    read_json::<MonoidalFile>(path)?.to_smcc(max_size)
}

// --- witnesses and environments -------------------------------------------

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackWitness {
    pub p0: usize,
    pub p1: usize,
    pub f: usize,
    pub g: usize,
}

/// Witness container mirroring the report JSON: exactly one kind per file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback: Option<PullbackWitness>,
}

pub fn load_environment(path: &Path) -> Result<Environment> {
    read_json(path)
}
