use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

/// Writes `contents` to `path` through a sibling temporary file, so the
/// destination either holds the full output or is left untouched. Without a
/// path the contents go to stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(contents.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::io("<stdout>", e));
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
