//! HTTP/JSON front end: one-off queries and stateful games against the engine.

pub mod api;
pub mod error;
pub mod session;
pub mod store;

use std::future::Future;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use tokio::net::TcpListener;

pub use api::router;
pub use error::ServiceError;
pub use session::{engine_move, GameSession, Hint, Ply, Status};
pub use store::{SessionStore, Snapshot};

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub addr: SocketAddr,
    pub state_file: Option<PathBuf>,
}

/// Serves `store` on `listener` until `shutdown` resolves.
pub async fn serve_with<F>(
    listener: TcpListener,
    store: Arc<SessionStore>,
    shutdown: F,
) -> std::io::Result<()>
where
    F: Future<Output = ()> + Send + 'static,
{
    axum::serve(listener, router(store))
        .with_graceful_shutdown(shutdown)
        .await
}

/// Loads the snapshot if any, serves until Ctrl-C, then writes the snapshot back.
pub async fn run(config: ServeConfig) -> Result<(), ServiceError> {
    let store = Arc::new(match &config.state_file {
        Some(path) => SessionStore::load(path)?,
        None => SessionStore::new(),
    });
    let listener = TcpListener::bind(config.addr).await?;
    log::info!(
        "listening on {} with {} restored sessions",
        listener.local_addr()?,
        store.len()
    );
    serve_with(listener, store.clone(), async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await?;
    if let Some(path) = &config.state_file {
        store.save(path)?;
        log::info!("saved {} sessions to {}", store.len(), path.display());
    }
    Ok(())
}
