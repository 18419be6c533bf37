//! Content-addressed fingerprint cache: one JSON file per
//! (presentation, catalog) pair, written by temp-file-and-rename.

use std::io::Write;
use std::path::{Path, PathBuf};

use pillowcase::quot::{Catalog, QuotientFingerprint};
use serde_json::{json, Map, Value};

use crate::sha256_hex;

pub struct FingerprintCache {
    dir: PathBuf,
}

impl FingerprintCache {
    pub fn open(dir: &Path) -> anyhow::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(FingerprintCache { dir: dir.to_path_buf() })
    }

    /// File name stem for a presentation under a catalog.
    pub fn key(presentation: &str, catalog_text: &str) -> String {
        let mut bytes = Vec::with_capacity(presentation.len() + catalog_text.len() + 1);
        bytes.extend_from_slice(presentation.as_bytes());
        bytes.push(0);
        bytes.extend_from_slice(catalog_text.as_bytes());
        sha256_hex(&bytes)
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A cached fingerprint, if present, readable and complete for `catalog`.
    pub fn load(&self, key: &str, catalog: &Catalog) -> Option<QuotientFingerprint> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let value: Value = serde_json::from_str(&text).ok()?;
        let fp = fingerprint_from_json(&value, catalog)?;
        fp.is_complete().then_some(fp)
    }

    pub fn store(&self, key: &str, fp: &QuotientFingerprint) -> anyhow::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string_pretty(&fingerprint_json(fp))?.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key))?;
        Ok(())
    }
}

/// `{catalog_id, counts: {target: integer | "unknown"}}`.
pub fn fingerprint_json(fp: &QuotientFingerprint) -> Value {
    let counts: Map<String, Value> = fp
        .counts
        .iter()
        .map(|(name, c)| (name.clone(), c.map_or_else(|| json!("unknown"), |c| json!(c))))
        .collect();
    json!({ "catalog_id": fp.catalog_id, "counts": counts })
}

/// Inverse of [`fingerprint_json`], ordered like `catalog`.
pub fn fingerprint_from_json(v: &Value, catalog: &Catalog) -> Option<QuotientFingerprint> {
    if v.get("catalog_id")?.as_str()? != catalog.id {
        return None;
    }
    let counts = v.get("counts")?.as_object()?;
    if counts.len() != catalog.targets.len() {
        return None;
    }
    let counts = catalog
        .targets
        .iter()
        .map(|t| {
            let c = counts.get(&t.name)?;
            Some((t.name.clone(), if c.as_str() == Some("unknown") { None } else { Some(c.as_u64()?) }))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(QuotientFingerprint { catalog_id: catalog.id.clone(), counts })
}
