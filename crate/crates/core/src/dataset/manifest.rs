use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitRole {
    Train,
    Test,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub image_id: String,
    /// Relative to the manifest file.
    pub image: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

/// `manifest.json`: a list of images with optional masks, tags and split roles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub split: BTreeMap<String, SplitRole>,
    #[serde(skip)]
    base_dir: PathBuf,
}

impl Manifest {
    pub fn new(entries: Vec<ManifestEntry>, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let m = Self {
            entries,
            split: BTreeMap::new(),
            base_dir: base_dir.into(),
        };
        m.validate_ids()?;
        Ok(m)
    }

    /// Parses and validates: unique ids, existing files, split covering every entry if present.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut m: Manifest = serde_json::from_str(&text).map_err(|e| Error::json(path, e))?;
        m.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        m.validate_ids()?;
        for e in &m.entries {
            for p in std::iter::once(&e.image).chain(e.mask.as_ref()) {
                let full = m.base_dir.join(p);
                if !full.is_file() {
                    return Err(Error::Manifest(format!(
                        "{}: file {} not found",
                        e.image_id,
                        full.display()
                    )));
                }
            }
        }
        if !m.split.is_empty() {
            if let Some(e) = m.entries.iter().find(|e| !m.split.contains_key(&e.image_id)) {
                return Err(Error::Manifest(format!("{} has no split assignment", e.image_id)));
            }
            let ids: HashSet<&str> = m.entries.iter().map(|e| e.image_id.as_str()).collect();
            if let Some(id) = m.split.keys().find(|k| !ids.contains(k.as_str())) {
                return Err(Error::Manifest(format!("split names unknown image {id}")));
            }
        }
        Ok(m)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let json = serde_json::to_string_pretty(self).map_err(|e| Error::json(path, e))?;
        fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
    }

    fn validate_ids(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.entries {
            if e.image_id.is_empty() || e.image_id.contains(['/', '\\']) {
                return Err(Error::Manifest(format!("invalid image id `{}`", e.image_id)));
            }
            if !seen.insert(e.image_id.as_str()) {
                return Err(Error::Manifest(format!("duplicate image id `{}`", e.image_id)));
            }
        }
        Ok(())
    }

    pub fn base_dir(&self) -> &Path {
        &self.base_dir
    }

    /// Re-anchors relative paths, e.g. before saving next to a different file.
    pub fn set_base_dir(&mut self, dir: impl Into<PathBuf>) {
        self.base_dir = dir.into();
    }

    pub fn image_path(&self, entry: &ManifestEntry) -> PathBuf {
        self.base_dir.join(&entry.image)
    }

    pub fn mask_path(&self, entry: &ManifestEntry) -> Option<PathBuf> {
        entry.mask.as_ref().map(|m| self.base_dir.join(m))
    }

    pub fn role(&self, image_id: &str) -> Option<SplitRole> {
        self.split.get(image_id).copied()
    }

    /// Entries assigned to `role`; every entry when no split is recorded.
    pub fn entries_for(&self, role: SplitRole) -> Vec<&ManifestEntry> {
        if self.split.is_empty() {
            return self.entries.iter().collect();
        }
        self.entries
            .iter()
            .filter(|e| self.role(&e.image_id) == Some(role))
            .collect()
    }
}
