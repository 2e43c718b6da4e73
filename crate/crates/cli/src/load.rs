//! Group specs, including Cayley tables read from files.

use std::fs;
use std::path::Path;

use davenport_core::{FiniteGroup, GroupError, GroupSpec};

use crate::error::CliError;

/// Build the group for a spec string. `T:path` specs are resolved relative
/// to `base` when the path is relative.
pub fn load_group(spec: &str, base: Option<&Path>) -> Result<FiniteGroup, CliError> {
    let wrap = |source| CliError::Group { spec: spec.to_string(), source };
    let parsed: GroupSpec = spec.parse().map_err(wrap)?;
    match parsed.build() {
        Err(GroupError::NeedsLoader) => {
            let GroupSpec::Table(path) = &parsed else { unreachable!() };
            let full = match base {
                Some(b) if Path::new(path).is_relative() => b.join(path),
                _ => Path::new(path).to_path_buf(),
            };
            let text = fs::read_to_string(&full).map_err(|e| CliError::io(&full, e))?;
            FiniteGroup::from_table_text(&text, parsed.to_string()).map_err(wrap)
        }
        other => other.map_err(wrap),
    }
}
