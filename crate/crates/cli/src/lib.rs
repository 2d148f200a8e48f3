//! `kgatlas` subcommands. Each returns a [`CliError`] on domain failures;
//! `main` prints it as `error: <code>: <message>` and exits 1. Usage errors
//! are clap's and exit 2.

use std::collections::BTreeMap;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use kgatlas_core::render::{OutputFormat, RenderError, Renderer};
use kgatlas_core::{
    emit_dot, extract_subgraph, list_concepts, list_individuals, load_provenance, parse_rdf_bytes, DocumentStore,
    DotOptions, FacetError, Layout, Ontology, ParsedDocument, ProvenanceError, RdfFormat, SelectionMode,
    SubgraphRequest,
};
use kgatlas_server::{load_ontology_file, AppState, ConfigError, ServerConfig};

#[derive(Debug, Parser)]
#[command(name = "kgatlas", version, about = "Explore RDF knowledge graphs through ontology facets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render the neighbourhood of some seeds as DOT or an image.
    Render(RenderArgs),
    /// Print concept and individual facets, one per line.
    Facets(FacetsArgs),
    /// Run the HTTP API (and optional static UI).
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// RDF data file.
    #[arg(long)]
    pub rdf: PathBuf,
    /// Ontology file (Turtle, or N-Triples with a .nt extension).
    #[arg(long, env = "KGATLAS_ONTOLOGY")]
    pub ontology: PathBuf,
    /// turtle or ntriples; inferred from the extension when omitted.
    #[arg(long)]
    pub rdf_format: Option<RdfFormat>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Source document for span annotations.
    #[arg(long = "doc", value_name = "ID=PATH", value_parser = parse_doc_arg)]
    pub docs: Vec<(String, PathBuf)>,
    /// concept or individual.
    #[arg(long, default_value = "individual")]
    pub mode: SelectionMode,
    /// Seed IRI, prefixed name from the data file, or _:label. Repeatable.
    #[arg(long = "seed", required = true)]
    pub seeds: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub depth: u32,
    #[arg(long, default_value = "en")]
    pub lang: String,
    /// hierarchical, radial or circular.
    #[arg(long, default_value = "hierarchical")]
    pub layout: Layout,
    /// dot, svg, png or pdf.
    #[arg(long, default_value = "dot")]
    pub format: RenderFormat,
    /// Output file; standard output when omitted.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Directory holding the layout programs; PATH when omitted.
    #[arg(long, env = "KGATLAS_RENDERER")]
    pub renderer: Option<PathBuf>,
    /// Directory of class icons.
    #[arg(long)]
    pub icon_dir: Option<PathBuf>,
    /// Prefix for node hyperlinks.
    #[arg(long)]
    pub link_base: Option<String>,
    #[arg(long)]
    pub no_tooltips: bool,
}

#[derive(Debug, Args)]
pub struct FacetsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "en")]
    pub lang: String,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "KGATLAS_ONTOLOGY")]
    pub ontology: PathBuf,
    #[arg(long, env = "KGATLAS_PORT", default_value_t = kgatlas_server::config::DEFAULT_PORT)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
    #[arg(long, env = "KGATLAS_RENDERER")]
    pub renderer: Option<PathBuf>,
    /// Directory of UI assets served for non-API paths.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
    #[arg(long, default_value_t = kgatlas_server::config::DEFAULT_SESSION_CAP)]
    pub session_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Image(OutputFormat),
}

impl FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("dot") {
            return Ok(RenderFormat::Dot);
        }
        s.parse().map(RenderFormat::Image).map_err(|_| format!("unknown format {s:?}; expected dot, svg, png or pdf"))
    }
}

fn parse_doc_arg(s: &str) -> Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((id, path)) if !id.is_empty() && !path.is_empty() => Ok((id.to_owned(), PathBuf::from(path))),
        _ => Err(format!("expected ID=PATH, got {s:?}")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::new("io_error", format!("{}: {err}", path.display()))
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error: {}: {}", self.code, self.message)
    }
}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        CliError::new(err.code(), err.to_string())
    }
}

impl From<FacetError> for CliError {
    fn from(err: FacetError) -> Self {
        let code = match err {
            FacetError::UnknownSeed { .. } => "unknown_seed",
            FacetError::NoSeeds => "bad_request",
        };
        CliError::new(code, err.to_string())
    }
}

impl From<ProvenanceError> for CliError {
    fn from(err: ProvenanceError) -> Self {
        CliError::new("provenance_error", err.to_string())
    }
}

impl From<RenderError> for CliError {
    fn from(err: RenderError) -> Self {
        CliError::new("renderer_unavailable", err.to_string())
    }
}

struct Loaded {
    document: ParsedDocument,
    ontology: Ontology,
}

fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    let ontology = load_ontology_file(&input.ontology)?;
    let bytes = std::fs::read(&input.rdf).map_err(|e| CliError::io(&input.rdf, e))?;
    let format = input.rdf_format.unwrap_or_else(|| {
        if input.rdf.extension().is_some_and(|e| e == "nt") {
            RdfFormat::NTriples
        } else {
            RdfFormat::Turtle
        }
    });
    let document = parse_rdf_bytes(&bytes, format, None)
        .map_err(|e| CliError::new("syntax_error", format!("{}: {e}", input.rdf.display())))?;
    Ok(Loaded { document, ontology })
}

/// Span annotations are only checked when documents are given.
fn load_documents(loaded: &Loaded, docs: &[(String, PathBuf)]) -> Result<DocumentStore, CliError> {
    if docs.is_empty() {
        return Ok(DocumentStore::default());
    }
    let mut texts = BTreeMap::new();
    for (id, path) in docs {
        texts.insert(id.clone(), std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?);
    }
    Ok(load_provenance(&loaded.document.graph, texts)?)
}

pub fn run_render(args: &RenderArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let loaded = load(&args.input)?;
    let store = load_documents(&loaded, &args.docs)?;
    let mut seeds = Vec::new();
    for text in &args.seeds {
        let node = loaded
            .document
            .resolve_node(text)
            .ok_or_else(|| CliError::new("unknown_seed", format!("cannot read seed {text:?}")))?;
        seeds.push(node);
    }
    let request = SubgraphRequest::new(args.mode, seeds).with_depth(args.depth).with_lang(&args.lang);
    let view = extract_subgraph(&loaded.document.graph, &loaded.ontology, &store, &request)?;
    let options = DotOptions {
        hyperlink_base: args.link_base.clone(),
        include_tooltips: !args.no_tooltips,
        icon_dir: args.icon_dir.clone(),
    };
    let dot = emit_dot(&view, args.layout, &options);
    let bytes = match args.format {
        RenderFormat::Dot => dot.text.into_bytes(),
        RenderFormat::Image(format) => {
            let renderer = args.renderer.as_ref().map_or_else(Renderer::from_path, Renderer::in_dir);
            renderer.render(&dot, format)?
        }
    };
    match &args.output {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => stdout.write_all(&bytes).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

/// Concepts as `label\tclass\tcount`, then individuals as `label\tid`.
pub fn run_facets(args: &FacetsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let loaded = load(&args.input)?;
    let graph = &loaded.document.graph;
    let mut out = String::new();
    for c in list_concepts(graph, &loaded.ontology, &args.lang) {
        out.push_str(&format!("{}\t{}\t{}\n", c.label, c.class_iri.as_str(), c.instance_count));
    }
    for i in list_individuals(graph, &loaded.ontology, &args.lang) {
        out.push_str(&format!("{}\t{}\n", i.label, i.id.key()));
    }
    stdout.write_all(out.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

/// Binds, reports the address on stderr, and serves until interrupted.
pub fn run_serve(args: &ServeArgs) -> Result<(), CliError> {
    let mut config = ServerConfig::new(load_ontology_file(&args.ontology)?);
    if let Some(dir) = &args.renderer {
        config.renderer = Renderer::in_dir(dir);
    }
    config.static_dir = args.static_dir.clone();
    config.session_cap = args.session_cap;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::new("io_error", e.to_string()))?;
    runtime.block_on(async {
        let addr = SocketAddr::new(args.host, args.port);
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| CliError::new("port_unavailable", format!("cannot listen on {addr}: {e}")))?;
        let local = listener.local_addr().map_err(|e| CliError::new("io_error", e.to_string()))?;
        eprintln!("listening on http://{local}");
        kgatlas_server::serve(listener, AppState::new(config))
            .await
            .map_err(|e| CliError::new("io_error", e.to_string()))
    })
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Render(args) => run_render(args, stdout),
        Command::Facets(args) => run_facets(args, stdout),
        Command::Serve(args) => run_serve(args),
    }
}
