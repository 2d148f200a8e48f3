use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::SystemTime;

use kgatlas_core::{load_provenance, parse_rdf_bytes, DocumentStore, ParsedDocument, RdfFormat};
use parking_lot::RwLock;

use crate::error::ApiError;

/// One uploaded graph with its documents. Immutable once created.
#[derive(Debug)]
pub struct GraphSession {
    pub id: String,
    pub document: ParsedDocument,
    pub store: DocumentStore,
    pub created_at: SystemTime,
}

impl GraphSession {
    /// Parses `rdf` and checks its span annotations against `documents`.
    pub fn create(rdf: &[u8], format: RdfFormat, documents: BTreeMap<String, String>) -> Result<Self, ApiError> {
        let document = parse_rdf_bytes(rdf, format, None)?;
        let store = load_provenance(&document.graph, documents)?;
        Ok(GraphSession {
            id: uuid::Uuid::new_v4().simple().to_string(),
            document,
            store,
            created_at: SystemTime::now(),
        })
    }
}

struct Slot {
    session: Arc<GraphSession>,
    last_used: AtomicU64,
}

/// Bounded session map with least-recently-used eviction.
///
/// Lookups take the read lock and bump an atomic use stamp, so concurrent
/// readers never block each other; only inserts take the write lock.
pub struct SessionStore {
    slots: RwLock<HashMap<String, Slot>>,
    clock: AtomicU64,
    capacity: usize,
}

impl SessionStore {
    pub fn new(capacity: usize) -> Self {
        SessionStore { slots: RwLock::new(HashMap::new()), clock: AtomicU64::new(0), capacity: capacity.max(1) }
    }

    fn tick(&self) -> u64 {
        self.clock.fetch_add(1, Ordering::Relaxed)
    }

    pub fn get(&self, id: &str) -> Option<Arc<GraphSession>> {
        let slots = self.slots.read();
        let slot = slots.get(id)?;
        slot.last_used.fetch_max(self.tick(), Ordering::Relaxed);
        Some(slot.session.clone())
    }

    /// Stores `session`, evicting the least recently used entries when full.
    /// Returns the ids that were evicted.
    pub fn insert(&self, session: GraphSession) -> Vec<String> {
        let mut slots = self.slots.write();
        let mut evicted = Vec::new();
        while slots.len() >= self.capacity {
            let oldest = slots
                .iter()
                .min_by_key(|(_, s)| s.last_used.load(Ordering::Relaxed))
                .map(|(id, _)| id.clone())
                .expect("non-empty map");
            slots.remove(&oldest);
            evicted.push(oldest);
        }
        let slot = Slot { last_used: AtomicU64::new(self.tick()), session: Arc::new(session) };
        slots.insert(slot.session.id.clone(), slot);
        evicted
    }

    pub fn len(&self) -> usize {
        self.slots.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }
}
