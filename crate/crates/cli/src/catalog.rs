//! Catalog files: one group spec per line.

use std::fs;
use std::path::Path;

use davenport_core::FiniteGroup;

use crate::error::CliError;
use crate::load::load_group;

/// Read a catalog. Blank lines and text after `#` are ignored; table paths
/// are relative to the catalog's directory.
pub fn read_catalog(path: &Path) -> Result<Vec<FiniteGroup>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let base = path.parent();
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|spec| load_group(spec, base))
        .collect()
}
