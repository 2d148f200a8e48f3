//! Standalone server configured from the environment:
//! `KGATLAS_ONTOLOGY`, `KGATLAS_PORT`, `KGATLAS_RENDERER`.

use std::net::{Ipv4Addr, SocketAddr};
use std::process::ExitCode;

use kgatlas_server::{port_from_env, serve, AppState, ServerConfig};

#[tokio::main]
async fn main() -> ExitCode {
    let setup = ServerConfig::from_env().and_then(|config| Ok((config, port_from_env()?)));
    let (config, port) = match setup {
        Ok(v) => v,
        Err(err) => {
            eprintln!("error: {}: {err}", err.code());
            return ExitCode::from(1);
        }
    };
    let addr = SocketAddr::from((Ipv4Addr::LOCALHOST, port));
    let listener = match tokio::net::TcpListener::bind(addr).await {
        Ok(l) => l,
        Err(err) => {
            eprintln!("error: port_unavailable: cannot listen on {addr}: {err}");
            return ExitCode::from(1);
        }
    };
    eprintln!("listening on http://{addr}");
    match serve(listener, AppState::new(config)).await {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: io_error: {err}");
            ExitCode::from(1)
        }
    }
}
