//! On-disk cache of cyclotomic polynomials and sign profiles.
//!
//! Entries live in `<dir>/phi/` and `<dir>/profile/`, one JSON file per
//! entry, named by the sha256 of the entry's canonical key. Every entry
//! repeats its key and is validated on load, so a stale or corrupt file is
//! recomputed rather than trusted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{sign_profile, SignProfile};
use crate::cyclotomic::{memoized_polynomials, seed_polynomial};
use crate::hermitian::TriangleShape;

#[derive(Serialize, Deserialize)]
struct PhiEntry {
    key: String,
    n: u32,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ProfileEntry {
    key: String,
    level: u32,
    signs: String,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

fn digest(key: &str) -> String {
    Sha256::digest(key.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn phi_key(n: u32) -> String {
    format!("phi:{n}")
}

fn profile_key(shape: &TriangleShape) -> String {
    format!("profile:{}", shape.canonical_key())
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Writes via a temporary file and rename so concurrent readers never see a
/// partial entry.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(format!(
        "tmp.{}.{}",
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    fs::rename(&tmp, path)
}

impl Cache {
    /// Opens (creating if needed) the cache rooted at `dir`.
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(dir.join("phi"))?;
        fs::create_dir_all(dir.join("profile"))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn phi_path(&self, n: u32) -> PathBuf {
        self.dir.join("phi").join(format!("{}.json", digest(&phi_key(n))))
    }

    fn profile_path(&self, shape: &TriangleShape) -> PathBuf {
        self.dir.join("profile").join(format!("{}.json", digest(&profile_key(shape))))
    }

    /// Seeds the in-process Φ_N memo from disk. Returns the number of entries loaded.
    pub fn load_polynomials(&self) -> usize {
        let Ok(entries) = fs::read_dir(self.dir.join("phi")) else {
            return 0;
        };
        let mut loaded = 0;
        for entry in entries.flatten() {
            let path = entry.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let Some(e) = fs::read(&path).ok().and_then(|b| serde_json::from_slice::<PhiEntry>(&b).ok()) else {
                continue;
            };
            if e.key == phi_key(e.n) && path == self.phi_path(e.n) && seed_polynomial(e.n, e.coeffs) {
                loaded += 1;
            }
        }
        loaded
    }

    /// Persists every memoized Φ_N not yet on disk.
    pub fn store_polynomials(&self) -> std::io::Result<()> {
        for (n, coeffs) in memoized_polynomials() {
            let path = self.phi_path(n);
            if path.exists() {
                continue;
            }
            let entry = PhiEntry { key: phi_key(n), n, coeffs };
            write_atomic(&path, &serde_json::to_vec(&entry).expect("serializable"))?;
        }
        Ok(())
    }

    fn load_profile(&self, shape: &TriangleShape) -> Option<SignProfile> {
        let bytes = fs::read(self.profile_path(shape)).ok()?;
        let e: ProfileEntry = serde_json::from_slice(&bytes).ok()?;
        if e.key != profile_key(shape) || e.level != shape.level() {
            return None;
        }
        SignProfile::decode(e.level, &e.signs)
    }

    /// The sign profile of `shape`, read from disk or computed and stored.
    /// Write failures are ignored: the cache is an optimisation only.
    pub fn profile(&self, shape: &TriangleShape) -> SignProfile {
        if let Some(p) = self.load_profile(shape) {
            return p;
        }
        let p = sign_profile(shape);
        let entry = ProfileEntry {
            key: profile_key(shape),
            level: p.level(),
            signs: p.encode(),
        };
        let _ = write_atomic(&self.profile_path(shape), &serde_json::to_vec(&entry).expect("serializable"));
        p
    }
}

/// Profile source for the drivers: cached when a cache is configured.
pub fn profile_source(cache: Option<&Cache>, shape: &TriangleShape) -> SignProfile {
    match cache {
        Some(c) => c.profile(shape),
        None => sign_profile(shape),
    }
}
