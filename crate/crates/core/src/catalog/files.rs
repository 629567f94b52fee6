//! Matroid JSON files and catalog directories.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{builtin_catalog, CatalogEntry, Tag};
use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;

const MANIFEST: &str = "manifest.json";

/// On-disk matroid: `{"name": ..., "type": ..., <variant fields>}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub spec: MatroidSpec,
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    entries: Vec<ManifestEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestEntry {
    name: String,
    file: String,
    tags: BTreeSet<Tag>,
}

fn parse_error(path: &Path, err: serde_json::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Reads one matroid file. The name defaults to the file stem.
pub fn load_matroid(path: impl AsRef<Path>) -> Result<CatalogEntry> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: MatroidFile = serde_json::from_str(&text).map_err(|e| parse_error(path, e))?;
    let name = file.name.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    CatalogEntry::new(name, file.spec).map_err(|e| Error::Validation {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

pub fn save_matroid(entry: &CatalogEntry, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = MatroidFile {
        name: Some(entry.name.clone()),
        spec: entry.spec.clone(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("matroid files serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes one file per entry plus a manifest of names and tags.
pub fn save_catalog(entries: &[CatalogEntry], dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut manifest = Manifest { entries: Vec::new() };
    for entry in entries {
        let file = format!("{}.json", entry.name);
        save_matroid(entry, dir.join(&file))?;
        manifest.entries.push(ManifestEntry {
            name: entry.name.clone(),
            file,
            tags: entry.tags.clone(),
        });
    }
    let path = dir.join(MANIFEST);
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

/// Loads `builtin`, a catalog directory, or a single matroid file.
///
/// A directory with a manifest loads the listed files in manifest order;
/// otherwise every `*.json` file is loaded in file-name order. Tags are
/// always recomputed from the matroid.
pub fn load_catalog(source: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let source = source.as_ref();
    if source == Path::new("builtin") {
        return Ok(builtin_catalog());
    }
    if source.is_file() {
        return Ok(vec![load_matroid(source)?]);
    }
    let manifest_path = source.join(MANIFEST);
    if manifest_path.is_file() {
        let text = fs::read_to_string(&manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
        let manifest: Manifest =
            serde_json::from_str(&text).map_err(|e| parse_error(&manifest_path, e))?;
        return manifest
            .entries
            .iter()
            .map(|m| {
                let mut entry = load_matroid(source.join(&m.file))?;
                entry.name = m.name.clone();
                Ok(entry)
            })
            .collect();
    }
    let listing = fs::read_dir(source).map_err(|e| Error::io(source, e))?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files.into_iter().map(load_matroid).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format_shape() {
        let file = MatroidFile {
            name: Some("U24".into()),
            spec: MatroidSpec::Uniform { r: 2, n: 4 },
        };
        assert_eq!(
            serde_json::to_string(&file).unwrap(),
            r#"{"name":"U24","type":"uniform","r":2,"n":4}"#
        );
        let g: MatroidFile =
            serde_json::from_str(r#"{"type":"graphic","vertices":3,"edges":[[0,1],[1,2]]}"#)
                .unwrap();
        assert_eq!(g.name, None);
        let l: MatroidFile =
            serde_json::from_str(r#"{"name":"x","type":"linear","p":2,"matrix":[[1,0],[0,1]]}"#)
                .unwrap();
        assert!(matches!(l.spec, MatroidSpec::Linear { p: 2, .. }));
        let b: MatroidFile =
            serde_json::from_str(r#"{"name":"b","type":"bases","n":2,"bases":[[0],[1]]}"#).unwrap();
        assert!(matches!(b.spec, MatroidSpec::ExplicitBases { n: 2, .. }));
    }
}
