//! Dataset manifests: one `image-path<TAB>mask-path` pair per line.
//!
//! Blank lines and lines starting with `#` are ignored. Relative paths are
//! resolved against the directory holding the manifest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    /// The image path as written in the manifest.
    pub id: String,
    pub image: PathBuf,
    pub mask: PathBuf,
}

pub fn parse_manifest(text: &str, manifest_path: &Path) -> Result<Vec<ManifestEntry>> {
    let base = manifest_path.parent().unwrap_or(Path::new(""));
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: &str| CliError::Manifest {
            path: manifest_path.to_owned(),
            line: idx + 1,
            message: message.to_owned(),
        };
        let mut fields = line.split('\t');
        let (Some(image), Some(mask), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad("expected exactly two tab-separated paths"));
        };
        if image.is_empty() || mask.is_empty() {
            return Err(bad("empty path"));
        }
        entries.push(ManifestEntry {
            id: image.to_owned(),
            image: base.join(image),
            mask: base.join(mask),
        });
    }
    if entries.is_empty() {
        return Err(CliError::Manifest {
            path: manifest_path.to_owned(),
            line: 0,
            message: "manifest lists no image/mask pairs".into(),
        });
    }
    Ok(entries)
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<ManifestEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_manifest(&text, path)
}

pub fn format_manifest<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> String {
    let mut out = String::from("# image\tmask\n");
    for (image, mask) in pairs {
        writeln!(out, "{image}\t{mask}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_resolves() {
        let text = "# comment\n\nimages/a.png\tmasks/a.png\r\n/abs/b.ppm\tm/b.png\n";
        let entries = parse_manifest(text, Path::new("data/set/manifest.tsv")).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].id, "images/a.png");
        assert_eq!(entries[0].image, Path::new("data/set/images/a.png"));
        assert_eq!(entries[0].mask, Path::new("data/set/masks/a.png"));
        assert_eq!(entries[1].image, Path::new("/abs/b.ppm"));
    }

    #[test]
    fn rejects_bad_lines() {
        let err = parse_manifest("a.png\n", Path::new("m.tsv")).unwrap_err();
        assert!(err.to_string().starts_with("m.tsv:1:"));
        assert!(parse_manifest("a\tb\tc\n", Path::new("m.tsv")).is_err());
        assert!(parse_manifest("# only comments\n", Path::new("m.tsv")).is_err());
    }

    #[test]
    fn format_then_parse() {
        let text = format_manifest([("i/0.png", "m/0.png"), ("i/1.png", "m/1.png")]);
        let entries = parse_manifest(&text, Path::new("manifest.tsv")).unwrap();
        assert_eq!(entries[1].id, "i/1.png");
        assert_eq!(entries[1].mask, Path::new("m/1.png"));
    }
}
