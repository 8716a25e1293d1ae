//! In-memory sessions with an optional JSON snapshot on disk.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};

use nimcash_core::{Cash, Player, RuleSet};

use crate::error::ServiceError;
use crate::session::{GameSession, Hint};

type Slot = Arc<Mutex<GameSession>>;

#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Slot>>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Snapshot {
    pub sessions: Vec<GameSession>,
}

impl SessionStore {
    pub fn new() -> SessionStore {
        SessionStore::default()
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(
        &self,
        rules: RuleSet,
        n: u64,
        d: Cash,
        e: Cash,
        human: Player,
    ) -> Result<GameSession, ServiceError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = GameSession::create(id.clone(), rules, n, d, e, human)?;
        self.sessions
            .write()
            .expect("store lock")
            .insert(id, Arc::new(Mutex::new(session.clone())));
        Ok(session)
    }

    fn slot(&self, id: &str) -> Result<Slot, ServiceError> {
        let sessions = self.sessions.read().expect("store lock");
        sessions
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    pub fn get(&self, id: &str) -> Result<GameSession, ServiceError> {
        Ok(self.slot(id)?.lock().expect("session lock").clone())
    }

    /// Moves on one session are serialized by its own lock.
    pub fn play(&self, id: &str, a: u64) -> Result<GameSession, ServiceError> {
        let slot = self.slot(id)?;
        let mut session = slot.lock().expect("session lock");
        session.play_move(a)?;
        Ok(session.clone())
    }

    pub fn hint(&self, id: &str) -> Result<Hint, ServiceError> {
        self.get(id)?.hint()
    }

    /// All sessions, ordered by id.
    pub fn snapshot(&self) -> Snapshot {
        let slots: Vec<Slot> = self
            .sessions
            .read()
            .expect("store lock")
            .values()
            .cloned()
            .collect();
        let mut sessions: Vec<GameSession> = slots
            .iter()
            .map(|s| s.lock().expect("session lock").clone())
            .collect();
        sessions.sort_by(|a, b| a.id.cmp(&b.id));
        Snapshot { sessions }
    }

    pub fn from_snapshot(snapshot: Snapshot) -> Result<SessionStore, ServiceError> {
        let mut map = HashMap::new();
        for s in snapshot.sessions {
            if s.replay()? != s.state {
                return Err(ServiceError::Corrupt(format!(
                    "session {} does not replay",
                    s.id
                )));
            }
            map.insert(s.id.clone(), Arc::new(Mutex::new(s)));
        }
        Ok(SessionStore {
            sessions: RwLock::new(map),
        })
    }

    /// Reads a snapshot file; a missing file gives an empty store.
    pub fn load(path: &Path) -> Result<SessionStore, ServiceError> {
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(SessionStore::new()),
            Err(e) => return Err(e.into()),
        };
        let snapshot =
            serde_json::from_str(&text).map_err(|e| ServiceError::Corrupt(e.to_string()))?;
        SessionStore::from_snapshot(snapshot)
    }

    pub fn save(&self, path: &Path) -> Result<(), ServiceError> {
        let text = serde_json::to_string_pretty(&self.snapshot()).expect("sessions serialize");
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(c: u64) -> Cash {
        Cash::Finite(c)
    }

    #[test]
    fn create_play_and_lookup() {
        let store = SessionStore::new();
        let s = store
            .create("1,3,4".parse().unwrap(), 20, fin(12), fin(12), Player::P1)
            .unwrap();
        assert_eq!(s.id.len(), 32);
        let after = store.play(&s.id, 1).unwrap();
        assert_eq!(store.get(&s.id).unwrap(), after);
        assert!(matches!(store.get("nope"), Err(ServiceError::NotFound(_))));
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn snapshot_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        let store = SessionStore::new();
        for human in [Player::P1, Player::P2] {
            store
                .create("1,6".parse().unwrap(), 43, fin(27), Cash::Infinite, human)
                .unwrap();
        }
        store.save(&path).unwrap();
        let back = SessionStore::load(&path).unwrap();
        assert_eq!(back.snapshot().sessions, store.snapshot().sessions);
        assert!(SessionStore::load(&dir.path().join("missing.json"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tampered_snapshot_is_rejected() {
        let store = SessionStore::new();
        store
            .create("1,2".parse().unwrap(), 9, fin(9), fin(9), Player::P2)
            .unwrap();
        let mut snapshot = store.snapshot();
        snapshot.sessions[0].state.stones += 1;
        assert!(matches!(
            SessionStore::from_snapshot(snapshot),
            Err(ServiceError::Corrupt(_))
        ));
    }

    #[test]
    fn concurrent_moves_are_serialized() {
        let store = Arc::new(SessionStore::new());
        let s = store
            .create(
                "1,2".parse().unwrap(),
                200,
                Cash::Infinite,
                Cash::Infinite,
                Player::P1,
            )
            .unwrap();
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let store = store.clone();
                let id = s.id.clone();
                std::thread::spawn(move || {
                    for _ in 0..20 {
                        let _ = store.play(&id, 1);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        let end = store.get(&s.id).unwrap();
        assert_eq!(end.replay().unwrap(), end.state);
    }
}
