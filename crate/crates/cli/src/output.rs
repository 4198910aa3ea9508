use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use revolve_core::Error;

#[derive(Debug)]
pub enum CliError {
    /// Rejected input, including unreadable files.
    Invalid(String),
    Numerical(String),
    /// A verification report was produced and some check exceeded its
    /// tolerance.
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Invalid(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Failed => write!(f, "verification failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

pub fn invalid(m: impl Into<String>) -> CliError {
    CliError::Invalid(m.into())
}

pub type CliResult<T> = Result<T, CliError>;

/// Files rendered in memory and committed together once everything has
/// been computed.
#[derive(Default)]
pub struct Artifacts {
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    pub fn add(&mut self, name: &str, bytes: impl Into<Vec<u8>>) {
        self.files.push((name.to_string(), bytes.into()));
    }

    /// Each file goes to a temporary sibling first and is renamed into
    /// place only after all of them were written.
    pub fn commit(self, dir: &Path) -> CliResult<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| invalid(format!("cannot create {}: {e}", dir.display())))?;
        let mut staged = Vec::with_capacity(self.files.len());
        for (name, bytes) in &self.files {
            let mut tmp = tempfile::Builder::new()
                .prefix(&format!(".{name}."))
                .tempfile_in(dir)
                .map_err(|e| invalid(format!("cannot stage {name}: {e}")))?;
            #[cfg(unix)]
            {
                use std::os::unix::fs::PermissionsExt;
                tmp.as_file()
                    .set_permissions(fs::Permissions::from_mode(0o644))
                    .map_err(|e| invalid(format!("cannot stage {name}: {e}")))?;
            }
            tmp.write_all(bytes).and_then(|_| tmp.as_file().sync_all()).map_err(|e| invalid(format!("cannot write {name}: {e}")))?;
            staged.push((tmp, dir.join(name)));
        }
        let mut out = Vec::with_capacity(staged.len());
        for (tmp, path) in staged {
            tmp.persist(&path).map_err(|e| invalid(format!("cannot write {}: {}", path.display(), e.error)))?;
            out.push(path);
        }
        Ok(out)
    }
}

pub fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}
