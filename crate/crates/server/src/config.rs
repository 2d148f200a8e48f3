use std::path::{Path, PathBuf};

use kgatlas_core::render::Renderer;
use kgatlas_core::{load_ontology, parse_rdf, Ontology, OntologyError, ParseError, RdfFormat};

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_SESSION_CAP: usize = 64;
pub const DEFAULT_HYPERLINK_BASE: &str = "#node=";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Syntax { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Ontology { path: PathBuf, source: OntologyError },
    #[error("{var} is not set")]
    Missing { var: &'static str },
    #[error("{var}={value:?} is not valid")]
    BadValue { var: &'static str, value: String },
}

impl ConfigError {
    /// Short machine-readable code, matching the API's error codes where
    /// one applies.
    pub fn code(&self) -> &'static str {
        match self {
            ConfigError::Io { .. } => "io_error",
            ConfigError::Syntax { .. } => "syntax_error",
            ConfigError::Ontology { .. } => "ontology_error",
            ConfigError::Missing { .. } | ConfigError::BadValue { .. } => "config_error",
        }
    }
}

/// Reads and loads an ontology file; `.nt` files are read as N-Triples,
/// everything else as Turtle.
pub fn load_ontology_file(path: &Path) -> Result<Ontology, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_owned(), source })?;
    let format = if path.extension().is_some_and(|e| e == "nt") { RdfFormat::NTriples } else { RdfFormat::Turtle };
    let graph = parse_rdf(&text, format).map_err(|source| ConfigError::Syntax { path: path.to_owned(), source })?;
    load_ontology(&graph).map_err(|source| ConfigError::Ontology { path: path.to_owned(), source })
}

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub ontology: Ontology,
    pub session_cap: usize,
    pub renderer: Renderer,
    /// Directory of static UI assets served for non-API paths.
    pub static_dir: Option<PathBuf>,
    /// Prefix of the `URL` attribute on emitted DOT nodes.
    pub hyperlink_base: Option<String>,
}

impl ServerConfig {
    pub fn new(ontology: Ontology) -> Self {
        ServerConfig {
            ontology,
            session_cap: DEFAULT_SESSION_CAP,
            renderer: Renderer::from_path(),
            static_dir: None,
            hyperlink_base: Some(DEFAULT_HYPERLINK_BASE.to_owned()),
        }
    }

    /// `KGATLAS_ONTOLOGY` (required) and `KGATLAS_RENDERER` (optional
    /// directory holding the layout programs; `PATH` otherwise).
    pub fn from_env() -> Result<Self, ConfigError> {
        let path = std::env::var_os("KGATLAS_ONTOLOGY").ok_or(ConfigError::Missing { var: "KGATLAS_ONTOLOGY" })?;
        let mut config = ServerConfig::new(load_ontology_file(Path::new(&path))?);
        if let Some(dir) = std::env::var_os("KGATLAS_RENDERER").filter(|d| !d.is_empty()) {
            config.renderer = Renderer::in_dir(dir);
        }
        Ok(config)
    }
}

/// `KGATLAS_PORT`, or the default port when unset.
pub fn port_from_env() -> Result<u16, ConfigError> {
    match std::env::var("KGATLAS_PORT") {
        Ok(value) => value.parse().map_err(|_| ConfigError::BadValue { var: "KGATLAS_PORT", value }),
        Err(_) => Ok(DEFAULT_PORT),
    }
}
