//! Hands DOT text to an external layout program.
//!
//! The contract is the usual one for DOT toolchains: run
//! `<engine> -T<format>`, write the DOT source to its standard input and read
//! the rendered bytes from standard output.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use crate::dot::DotDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Svg,
    Png,
    Pdf,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Svg => "svg",
            OutputFormat::Png => "png",
            OutputFormat::Pdf => "pdf",
        }
    }

    pub fn media_type(self) -> &'static str {
        match self {
            OutputFormat::Svg => "image/svg+xml",
            OutputFormat::Png => "image/png",
            OutputFormat::Pdf => "application/pdf",
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(OutputFormat::Svg),
            "png" => Ok(OutputFormat::Png),
            "pdf" => Ok(OutputFormat::Pdf),
            other => Err(format!("unknown output format {other:?}")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("renderer unavailable: {0}")]
    RendererUnavailable(String),
}

/// Locates layout programs, either in a fixed directory or on `PATH`.
#[derive(Debug, Clone, Default)]
pub struct Renderer {
    dir: Option<PathBuf>,
}

impl Renderer {
    /// Looks programs up on `PATH`.
    pub fn from_path() -> Self {
        Renderer { dir: None }
    }

    /// Looks programs up in `dir` only.
    pub fn in_dir(dir: impl Into<PathBuf>) -> Self {
        Renderer { dir: Some(dir.into()) }
    }

    fn program(&self, engine: &str) -> PathBuf {
        match &self.dir {
            Some(dir) => dir.join(engine),
            None => PathBuf::from(engine),
        }
    }

    pub fn render(&self, dot: &DotDocument, format: OutputFormat) -> Result<Vec<u8>, RenderError> {
        run(&self.program(dot.engine), format, dot.text.as_bytes())
    }
}

fn run(program: &Path, format: OutputFormat, input: &[u8]) -> Result<Vec<u8>, RenderError> {
    let unavailable = |what: String| RenderError::RendererUnavailable(format!("{}: {what}", program.display()));
    let mut child = Command::new(program)
        .arg(format!("-T{}", format.as_str()))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| unavailable(e.to_string()))?;
    let mut stdin = child.stdin.take().expect("stdin is piped");
    // Feed input from a thread so a renderer that writes before reading
    // everything cannot deadlock on a full pipe.
    let input = input.to_vec();
    let writer = std::thread::spawn(move || stdin.write_all(&input));
    let output = child.wait_with_output().map_err(|e| unavailable(e.to_string()))?;
    let _ = writer.join();
    if !output.status.success() {
        let stderr = String::from_utf8_lossy(&output.stderr);
        return Err(unavailable(format!("exited with {}: {}", output.status, stderr.trim())));
    }
    Ok(output.stdout)
}
