//! On-disk cache of Lagrangian tables, keyed by field, `m` and involution.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bundle::Bundle;
use crate::error::Result;
use crate::field::Fq;
use crate::ring::{InvolutiveRing, TruncatedPoly};
use crate::symplectic::{LagrangianTable, SelfDualModule, WVector};

/// Bumped whenever the file layout or the enumeration order changes.
pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    p: u32,
    e: usize,
    modulus: Vec<u32>,
    m: usize,
    involution: String,
    lagrangians: Vec<CachedLagrangian>,
}

#[derive(Serialize, Deserialize)]
struct CachedLagrangian {
    id: usize,
    /// Each generator as the coordinates of its two components.
    generators: Vec<[Vec<u32>; 2]>,
    elements: Vec<usize>,
}

pub fn cache_path(dir: &Path, ring: &TruncatedPoly) -> PathBuf {
    let f = ring.field();
    dir.join(format!("lagrangians_p{}_e{}_m{}_{}.json", f.p(), f.e(), ring.m(), ring.involution()))
}

fn to_file(ring: &TruncatedPoly, table: &LagrangianTable) -> CacheFile {
    let coords = |p: &crate::ring::Poly| ring.coords(p).iter().map(|c| c.0).collect::<Vec<u32>>();
    CacheFile {
        version: CACHE_VERSION,
        p: ring.field().p(),
        e: ring.field().e(),
        modulus: ring.field().modulus().to_vec(),
        m: ring.m(),
        involution: ring.involution().to_string(),
        lagrangians: table
            .iter()
            .map(|l| CachedLagrangian {
                id: l.id,
                generators: l.generators.iter().map(|g| [coords(&g.first), coords(&g.second)]).collect(),
                elements: l.elements.clone(),
            })
            .collect(),
    }
}

fn from_file(module: &SelfDualModule, file: CacheFile) -> Option<LagrangianTable> {
    let ring = module.ring();
    let f = ring.field();
    let matches = file.version == CACHE_VERSION
        && file.p == f.p()
        && file.e == f.e()
        && file.modulus == f.modulus()
        && file.m == ring.m()
        && file.involution == ring.involution().to_string();
    if !matches {
        return None;
    }
    let poly = |c: &[u32]| {
        (c.len() == ring.m() && c.iter().all(|&x| x < f.q()))
            .then(|| ring.from_coords(&c.iter().map(|&x| Fq(x)).collect::<Vec<_>>()))
    };
    let mut records = Vec::new();
    for l in file.lagrangians {
        let gens = l
            .generators
            .iter()
            .map(|[a, b]| Some(WVector::new(poly(a)?, poly(b)?)))
            .collect::<Option<Vec<_>>>()?;
        if l.elements.iter().any(|&v| v >= module.size_w()) {
            return None;
        }
        records.push((gens, l.elements));
    }
    LagrangianTable::from_records(module, records).ok()
}

/// Loads the table from `dir` when a valid cache file exists, otherwise
/// enumerates it and writes the cache. Stale or corrupt files are replaced.
pub fn load_or_build(dir: Option<&Path>, ring: TruncatedPoly) -> Result<Bundle> {
    let module = SelfDualModule::new(ring)?;
    let Some(dir) = dir else {
        let table = LagrangianTable::enumerate(&module);
        return Ok(Bundle::from_parts(module, table));
    };
    let path = cache_path(dir, module.ring());
    if let Ok(text) = fs::read_to_string(&path) {
        if let Some(table) = serde_json::from_str(&text).ok().and_then(|file| from_file(&module, file)) {
            return Ok(Bundle::from_parts(module, table));
        }
    }
    let table = LagrangianTable::enumerate(&module);
    fs::create_dir_all(dir)?;
    fs::write(&path, serde_json::to_string(&to_file(module.ring(), &table))?)?;
    Ok(Bundle::from_parts(module, table))
}
