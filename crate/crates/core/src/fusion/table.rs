use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::alcove::enumerate_p_c;
use crate::error::{Error, Result};
use crate::liealg::{tensor_decompose, RootDatum, Weight};

/// Version of the on-disk fusion cache layout.
pub const CACHE_SCHEMA_VERSION: u32 = 1;

/// Folds a weight into the level-`c` alcove by the shifted affine Weyl
/// action: `λ + ρ` is reflected in the finite walls and in the affine wall
/// `⟨μ, θ^∨⟩ = c + h^∨` until it lies in the open alcove.
///
/// Returns the sign `(−1)^length` and the folded weight, or `None` if
/// `λ + ρ` lies on a wall.
pub fn affine_fold(datum: &RootDatum, level: u32, w: &Weight) -> Option<(i64, Weight)> {
    let cartan = datum.cartan();
    let theta = datum.theta().coords();
    let bound = i64::from(level) + datum.dual_coxeter_number();
    let mut mu: Vec<i64> = w.coords().iter().map(|c| c + 1).collect();
    let mut sign = 1;
    loop {
        if let Some(i) = mu.iter().position(|&x| x < 0) {
            cartan.reflect(i, &mut mu);
            sign = -sign;
            continue;
        }
        if mu.contains(&0) {
            return None;
        }
        let t: i64 = mu.iter().zip(datum.comarks()).map(|(m, a)| m * a).sum();
        if t == bound {
            return None;
        }
        if t < bound {
            return Some((sign, Weight::new(mu.iter().map(|m| m - 1).collect())));
        }
        let excess = t - bound;
        for (m, th) in mu.iter_mut().zip(theta) {
            *m -= excess * th;
        }
        sign = -sign;
    }
}

type Product = Arc<Vec<(usize, u64)>>;

/// Level-`c` fusion coefficients over the basis `P_c`, filled on demand.
///
/// Concurrent queries are safe. Two threads may compute the same product;
/// both results are identical and the first stored wins.
#[derive(Debug)]
pub struct FusionTable {
    datum: RootDatum,
    level: u32,
    basis: Vec<Weight>,
    index: HashMap<Weight, usize>,
    duals: Vec<usize>,
    products: RwLock<HashMap<(usize, usize), Product>>,
}

impl FusionTable {
    pub fn new(datum: &RootDatum, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let basis = enumerate_p_c(datum, level);
        let index: HashMap<Weight, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let duals = basis
            .iter()
            .map(|w| index[&datum.dual_weight(w).expect("basis weights have full rank")])
            .collect();
        Ok(Self {
            datum: datum.clone(),
            level,
            basis,
            index,
            duals,
            products: RwLock::new(HashMap::new()),
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `P_c` in lexicographic order; index 0 is the trivial weight.
    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Result<usize> {
        self.datum.check_weight(w)?;
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::OutsideLevel {
                weight: w.clone(),
                level: self.level,
            })
    }

    /// Index of `λ^†` given the index of `λ`.
    pub fn dual_index(&self, i: usize) -> usize {
        self.duals[i]
    }

    /// Number of products currently stored.
    pub fn cached_products(&self) -> usize {
        self.products.read().expect("fusion table lock").len()
    }

    fn compute_product(&self, i: usize, j: usize) -> Result<Vec<(usize, u64)>> {
        let tensor = tensor_decompose(&self.datum, &self.basis[i], &self.basis[j])?;
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (nu, m) in tensor {
            if let Some((sign, folded)) = affine_fold(&self.datum, self.level, &nu) {
                *acc.entry(self.index[&folded]).or_insert(0) += sign * m as i64;
            }
        }
        acc.into_iter()
            .filter(|(_, n)| *n != 0)
            .map(|(k, n)| {
                u64::try_from(n).map(|n| (k, n)).map_err(|_| {
                    Error::OracleDisagreement(format!(
                        "negative fusion coefficient {n} in {} × {} at level {}",
                        self.basis[i], self.basis[j], self.level
                    ))
                })
            })
            .collect()
    }

    /// Fusion product of two basis elements by index, as `(index, N)` pairs
    /// sorted by index.
    pub fn product_by_index(&self, i: usize, j: usize) -> Result<Product> {
        if let Some(p) = self
            .products
            .read()
            .expect("fusion table lock")
            .get(&(i, j))
        {
            return Ok(Arc::clone(p));
        }
        let computed = Arc::new(self.compute_product(i, j)?);
        let mut guard = self.products.write().expect("fusion table lock");
        Ok(Arc::clone(guard.entry((i, j)).or_insert(computed)))
    }

    /// Fusion product `λ × μ` as `(ν, N_{λμ}^ν)` pairs.
    pub fn product(&self, lambda: &Weight, mu: &Weight) -> Result<Vec<(Weight, u64)>> {
        let p = self.product_by_index(self.index_of(lambda)?, self.index_of(mu)?)?;
        Ok(p.iter().map(|&(k, n)| (self.basis[k].clone(), n)).collect())
    }

    /// `N_{λμ}^ν`.
    pub fn fusion_coeff(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        let i = self.index_of(lambda)?;
        let j = self.index_of(mu)?;
        let k = self.index_of(nu)?;
        Ok(self
            .product_by_index(i, j)?
            .iter()
            .find(|(t, _)| *t == k)
            .map_or(0, |(_, n)| *n))
    }

    /// Multiplies a vector in the basis `P_c` by the basis element `j`.
    pub fn multiply(&self, v: &[u128], j: usize) -> Result<Vec<u128>> {
        let mut out = vec![0u128; self.len()];
        for (i, &coeff) in v.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            for &(k, n) in self.product_by_index(i, j)?.iter() {
                out[k] += coeff * u128::from(n);
            }
        }
        Ok(out)
    }

    /// Computes every product, spreading the work over `threads` workers.
    pub fn fill(&self, threads: usize) -> Result<()> {
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let threads = threads.max(1);
        let chunk = pairs.len().div_ceil(threads).max(1);
        std::thread::scope(|s| {
            let handles: Vec<_> = pairs
                .chunks(chunk)
                .map(|part| {
                    s.spawn(move || {
                        part.iter()
                            .try_for_each(|&(i, j)| self.product_by_index(i, j).map(|_| ()))
                    })
                })
                .collect();
            handles
                .into_iter()
                .try_for_each(|h| h.join().expect("fusion worker panicked"))
        })
    }

    fn cache_name(&self) -> String {
        format!(
            "fusion-{}{}-level{}.json",
            self.datum.letter(),
            self.datum.rank(),
            self.level
        )
    }

    pub fn cache_path(&self, dir: &Path) -> PathBuf {
        dir.join(self.cache_name())
    }

    fn to_cache(&self) -> CacheFile {
        let guard = self.products.read().expect("fusion table lock");
        let mut keys: Vec<_> = guard.keys().copied().collect();
        keys.sort_by(|a, b| {
            (&self.basis[a.0], &self.basis[a.1]).cmp(&(&self.basis[b.0], &self.basis[b.1]))
        });
        let products: Vec<CachedProduct> = keys
            .into_iter()
            .map(|(i, j)| CachedProduct {
                lambda: self.basis[i].clone(),
                mu: self.basis[j].clone(),
                terms: guard[&(i, j)]
                    .iter()
                    .map(|&(k, n)| CachedTerm {
                        nu: self.basis[k].clone(),
                        mult: n,
                    })
                    .collect(),
            })
            .collect();
        CacheFile {
            schema_version: CACHE_SCHEMA_VERSION,
            type_letter: self.datum.letter().to_string(),
            rank: self.datum.rank(),
            level: self.level,
            checksum: checksum(&products),
            products,
        }
    }

    /// Writes every stored product to `dir`, replacing any previous file.
    pub fn save(&self, dir: &Path) -> io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = self.cache_path(dir);
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        let body = serde_json::to_vec_pretty(&self.to_cache()).map_err(io::Error::other)?;
        fs::write(&tmp, body)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads products from a cache file in `dir`. Returns how many were
    /// loaded; a missing, stale or corrupt file loads nothing.
    pub fn load(&self, dir: &Path) -> usize {
        let Ok(bytes) = fs::read(self.cache_path(dir)) else {
            return 0;
        };
        let Ok(file) = serde_json::from_slice::<CacheFile>(&bytes) else {
            return 0;
        };
        if file.schema_version != CACHE_SCHEMA_VERSION
            || file.type_letter != self.datum.letter().to_string()
            || file.rank != self.datum.rank()
            || file.level != self.level
            || file.checksum != checksum(&file.products)
        {
            return 0;
        }
        let mut decoded = Vec::with_capacity(file.products.len());
        for p in &file.products {
            let (Some(&i), Some(&j)) = (self.index.get(&p.lambda), self.index.get(&p.mu)) else {
                return 0;
            };
            let mut terms = Vec::with_capacity(p.terms.len());
            for t in &p.terms {
                let Some(&k) = self.index.get(&t.nu) else {
                    return 0;
                };
                terms.push((k, t.mult));
            }
            terms.sort_unstable();
            decoded.push(((i, j), Arc::new(terms)));
        }
        let n = decoded.len();
        let mut guard = self.products.write().expect("fusion table lock");
        for (k, v) in decoded {
            guard.entry(k).or_insert(v);
        }
        n
    }

    /// Builds a table and preloads it from `dir` when given.
    pub fn open(datum: &RootDatum, level: u32, dir: Option<&Path>) -> Result<Self> {
        let table = Self::new(datum, level)?;
        if let Some(dir) = dir {
            table.load(dir);
        }
        Ok(table)
    }

    pub(crate) fn check_matches(&self, datum: &RootDatum, level: u32) -> Result<()> {
        if self.datum != *datum || self.level != level {
            return Err(Error::TableMismatch {
                table: format!("{} level {}", self.datum, self.level),
                requested: format!("{datum} level {level}"),
            });
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheFile {
    schema_version: u32,
    #[serde(rename = "type")]
    type_letter: String,
    rank: usize,
    level: u32,
    checksum: String,
    products: Vec<CachedProduct>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CachedProduct {
    lambda: Weight,
    mu: Weight,
    terms: Vec<CachedTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CachedTerm {
    nu: Weight,
    mult: u64,
}

fn checksum(products: &[CachedProduct]) -> String {
    let body = serde_json::to_vec(products).expect("cache products serialize");
    hex::encode(Sha256::digest(body))
}
