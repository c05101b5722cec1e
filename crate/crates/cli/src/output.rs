use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

/// Write `contents` to `path` through a temporary file in the same
/// directory, then rename it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Print to stdout, and also write to `path` when given.
pub fn emit(contents: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
