//! Shared memo table for solid tableau counts, with optional on-disk persistence.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use num_bigint::BigUint;
use thiserror::Error;

use crate::shape::PlanePartition;

const MAGIC: &[u8; 8] = b"SSYTMEMO";

/// Bumped whenever the key encoding or record layout changes.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Compact byte encoding of a height matrix. Heights below 255 take one byte,
/// larger ones are escaped as `0xFF` plus four little-endian bytes; `0`
/// terminates each row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShapeKey(Box<[u8]>);

impl ShapeKey {
    pub fn encode(shape: &PlanePartition) -> Self {
        let mut out = Vec::with_capacity(shape.rows().iter().map(|r| r.len() + 1).sum());
        for row in shape.rows() {
            for &h in row {
                if h < 0xFF {
                    out.push(h as u8);
                } else {
                    out.push(0xFF);
                    out.extend_from_slice(&h.to_le_bytes());
                }
            }
            out.push(0);
        }
        ShapeKey(out.into_boxed_slice())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Debug, Error)]
pub enum CacheFileError {
    #[error("cache file I/O: {0}")]
    Io(#[from] io::Error),
    #[error("not a memo cache file")]
    BadMagic,
    #[error("cache file format version {found}, this build reads version {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("cache file was written with canonical keys = {found}, requested {expected}")]
    ModeMismatch { found: bool, expected: bool },
}

/// Map from (optionally canonicalized) shape to its number of solid tableaux.
///
/// Safe for concurrent use: lookups never block each other for long and an
/// insert never overwrites. Racing workers may both compute a value; they
/// always agree.
#[derive(Debug)]
pub struct MemoCache {
    map: DashMap<ShapeKey, BigUint>,
    canonical: bool,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for MemoCache {
    fn default() -> Self {
        MemoCache::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

impl MemoCache {
    /// A cache keyed on canonical orientation representatives.
    pub fn new() -> Self {
        MemoCache::with_canonical(true)
    }

    pub fn with_canonical(canonical: bool) -> Self {
        MemoCache {
            map: DashMap::new(),
            canonical,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn key(&self, shape: &PlanePartition) -> ShapeKey {
        if self.canonical {
            ShapeKey::encode(&shape.canonicalize())
        } else {
            ShapeKey::encode(shape)
        }
    }

    pub fn get(&self, key: &ShapeKey) -> Option<BigUint> {
        let found = self.map.get(key).map(|v| v.value().clone());
        if found.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        } else {
            self.misses.fetch_add(1, Ordering::Relaxed);
        }
        found
    }

    /// Inserts unless a value is already present; returns the stored value.
    pub fn insert(&self, key: ShapeKey, value: BigUint) -> BigUint {
        let entry = self.map.entry(key).or_insert(value);
        entry.value().clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.map.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// Writes every entry. Layout: magic, version (u32), canonical flag (u8),
    /// entry count (u64), then per entry key length (u32), key bytes, value
    /// length (u32), value bytes (little-endian magnitude). All integers LE.
    pub fn save(&self, path: &Path) -> Result<(), CacheFileError> {
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            w.write_all(MAGIC)?;
            w.write_all(&CACHE_FORMAT_VERSION.to_le_bytes())?;
            w.write_all(&[self.canonical as u8])?;
            w.write_all(&(self.map.len() as u64).to_le_bytes())?;
            for entry in self.map.iter() {
                let key = entry.key().as_bytes();
                let value = entry.value().to_bytes_le();
                w.write_all(&(key.len() as u32).to_le_bytes())?;
                w.write_all(key)?;
                w.write_all(&(value.len() as u32).to_le_bytes())?;
                w.write_all(&value)?;
            }
            w.flush()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path, canonical: bool) -> Result<Self, CacheFileError> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(CacheFileError::BadMagic);
        }
        let version = read_u32(&mut r)?;
        if version != CACHE_FORMAT_VERSION {
            return Err(CacheFileError::VersionMismatch {
                found: version,
                expected: CACHE_FORMAT_VERSION,
            });
        }
        let mut flag = [0u8; 1];
        r.read_exact(&mut flag)?;
        let found = flag[0] != 0;
        if found != canonical {
            return Err(CacheFileError::ModeMismatch {
                found,
                expected: canonical,
            });
        }
        let mut count = [0u8; 8];
        r.read_exact(&mut count)?;
        let count = u64::from_le_bytes(count);
        let cache = MemoCache::with_canonical(canonical);
        for _ in 0..count {
            let key = read_blob(&mut r)?;
            let value = read_blob(&mut r)?;
            cache.map.insert(
                ShapeKey(key.into_boxed_slice()),
                BigUint::from_bytes_le(&value),
            );
        }
        Ok(cache)
    }
}

fn read_u32(r: &mut impl Read) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_blob(r: &mut impl Read) -> io::Result<Vec<u8>> {
    let len = read_u32(r)? as usize;
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    Ok(buf)
}
