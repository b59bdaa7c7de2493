//! Fixture registry: logical fixture names mapped to JSON files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::pauli::{parse_hamiltonian, Hamiltonian, ParseError};

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("invalid registry {path}: {message}")]
    Registry { path: PathBuf, message: String },
    #[error("unknown fixture {0:?}")]
    Unknown(String),
}

/// Directory holding `registry.json` and the fixture files.
#[derive(Debug, Clone)]
pub struct Registry {
    dir: PathBuf,
    entries: BTreeMap<String, String>,
}

pub(crate) fn read(path: &Path) -> Result<String, RegistryError> {
    fs::read_to_string(path).map_err(|source| RegistryError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl Registry {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, RegistryError> {
        let dir = dir.as_ref().to_path_buf();
        let path = dir.join("registry.json");
        let entries: BTreeMap<String, String> =
            serde_json::from_str(&read(&path)?).map_err(|e| RegistryError::Registry {
                path: path.clone(),
                message: e.to_string(),
            })?;
        Ok(Self { dir, entries })
    }

    /// The `fixtures/` directory at the workspace root.
    pub fn workspace() -> Result<Self, RegistryError> {
        Self::open(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn path(&self, name: &str) -> Result<PathBuf, RegistryError> {
        self.entries
            .get(name)
            .map(|f| self.dir.join(f))
            .ok_or_else(|| RegistryError::Unknown(name.to_string()))
    }

    pub fn hamiltonian(&self, name: &str) -> Result<Hamiltonian, RegistryError> {
        load_hamiltonian(&self.path(name)?)
    }

    /// Names of Hamiltonian fixtures (pool files excluded).
    pub fn hamiltonian_names(&self) -> Vec<&str> {
        self.names().filter(|n| !n.ends_with("_pool")).collect()
    }
}

pub fn load_hamiltonian(path: &Path) -> Result<Hamiltonian, RegistryError> {
    parse_hamiltonian(&read(path)?).map_err(|source| RegistryError::Parse {
        path: path.to_path_buf(),
        source,
    })
}
