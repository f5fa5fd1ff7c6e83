use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::proof::{load, save, ProofTree};

pub fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

#[derive(Clone, Debug)]
pub struct Session {
    pub id: String,
    pub tree: ProofTree,
    pub locale: String,
    pub created_ms: u64,
    pub modified_ms: u64,
    /// Bumped on every mutation.
    pub revision: u64,
}

pub type SessionRef = Arc<Mutex<Session>>;

/// In-memory sessions, mirrored to `<data_dir>/<id>.proof.json` when a data
/// directory is configured.
pub struct SessionStore {
    sessions: Mutex<BTreeMap<String, SessionRef>>,
    data_dir: Option<PathBuf>,
}

const SUFFIX: &str = ".proof.json";

/// Writes to a sibling temporary file and renames it over `path`, so a
/// reader never sees a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        io::Write::write_all(&mut f, bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

impl SessionStore {
    /// Opens the store, restoring every readable proof file in `data_dir`.
    pub fn open(data_dir: Option<PathBuf>, default_locale: &str) -> io::Result<Self> {
        let mut sessions = BTreeMap::new();
        if let Some(dir) = &data_dir {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                let Some(id) = path.file_name().and_then(|n| n.to_str()).and_then(|n| n.strip_suffix(SUFFIX)) else {
                    continue;
                };
                match std::fs::read(&path).map_err(|e| e.to_string()).and_then(|b| load(&b).map_err(|e| e.to_string())) {
                    Ok(tree) => {
                        let t = now_ms();
                        let s = Session {
                            id: id.to_string(),
                            tree,
                            locale: default_locale.to_string(),
                            created_ms: t,
                            modified_ms: t,
                            revision: 0,
                        };
                        sessions.insert(id.to_string(), Arc::new(Mutex::new(s)));
                    }
                    Err(e) => log::warn!("skipping {}: {e}", path.display()),
                }
            }
            log::info!("restored {} session(s) from {}", sessions.len(), dir.display());
        }
        Ok(SessionStore { sessions: Mutex::new(sessions), data_dir })
    }

    pub fn path_of(&self, id: &str) -> Option<PathBuf> {
        self.data_dir.as_ref().map(|d| d.join(format!("{id}{SUFFIX}")))
    }

    pub fn persist(&self, id: &str, tree: &ProofTree) -> io::Result<()> {
        match self.path_of(id) {
            Some(p) => write_atomic(&p, &save(tree)),
            None => Ok(()),
        }
    }

    pub fn create(&self, tree: ProofTree, locale: &str) -> io::Result<SessionRef> {
        let id = uuid::Uuid::new_v4().to_string();
        self.persist(&id, &tree)?;
        let t = now_ms();
        let s = Session { id: id.clone(), tree, locale: locale.to_string(), created_ms: t, modified_ms: t, revision: 0 };
        let r = Arc::new(Mutex::new(s));
        self.sessions.lock().expect("store lock").insert(id, r.clone());
        Ok(r)
    }

    pub fn get(&self, id: &str) -> Option<SessionRef> {
        self.sessions.lock().expect("store lock").get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Replaces the session's tree after persisting it. The session is left
    /// untouched when writing fails.
    pub fn commit(&self, s: &mut Session, tree: ProofTree) -> io::Result<()> {
        self.persist(&s.id, &tree)?;
        s.tree = tree;
        s.revision += 1;
        s.modified_ms = now_ms().max(s.modified_ms);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{RuleId, Selection};
    use crate::sequent::parse_sequent;

    #[test]
    fn sessions_survive_a_restart() {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::open(Some(dir.path().into()), "en").unwrap();
        let s = store.create(ProofTree::new(parse_sequent("==> P & Q").unwrap()), "de").unwrap();
        let mut s = s.lock().unwrap();
        let t = s.tree.apply_at(0, RuleId::AndR, Selection::right(0)).unwrap();
        store.commit(&mut s, t.clone()).unwrap();
        assert_eq!(s.revision, 1);

        let on_disk = load(&std::fs::read(store.path_of(&s.id).unwrap()).unwrap()).unwrap();
        assert_eq!(on_disk, t);
        let again = SessionStore::open(Some(dir.path().into()), "en").unwrap();
        assert_eq!(again.get(&s.id).unwrap().lock().unwrap().tree, t);
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.unwrap().path().extension().map(|x| x.to_owned()))
            .filter(|x| x == "tmp")
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn unreadable_files_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("broken.proof.json"), "{").unwrap();
        std::fs::write(dir.path().join("notes.txt"), "hello").unwrap();
        let store = SessionStore::open(Some(dir.path().into()), "en").unwrap();
        assert!(store.is_empty());
    }

    #[test]
    fn memory_only_store() {
        let store = SessionStore::open(None, "en").unwrap();
        let s = store.create(ProofTree::new(parse_sequent("P ==> P").unwrap()), "en").unwrap();
        let id = s.lock().unwrap().id.clone();
        assert!(store.get(&id).is_some());
        assert!(store.path_of(&id).is_none());
    }
}
