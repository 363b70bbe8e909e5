//! On-disk memo of certificate searches, keyed by the SHA-256 of the search
//! kind and the arrangement dump. Hits are replayed before use.

use idealarr::freecert::CertificateDoc;
use idealarr::Arrangement;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::PathBuf;

pub const CACHE_ENV: &str = "IDEALARR_CACHE_DIR";

const NO_MARKER: &str = "{\"verdict\":\"no\"}\n";

pub enum Cached {
    Yes(CertificateDoc),
    No,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn from_env() -> Cache {
        Cache { dir: std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()).map(PathBuf::from) }
    }

    fn path(&self, kind: &str, arr: &Arrangement) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        h.update(kind.as_bytes());
        h.update(b"\n");
        h.update(arr.dump().as_bytes());
        let hex: String = h.finalize().iter().map(|b| format!("{:02x}", b)).collect();
        Some(dir.join(format!("{}.json", hex)))
    }

    pub fn get(&self, kind: &str, arr: &Arrangement) -> Option<Cached> {
        let text = fs::read_to_string(self.path(kind, arr)?).ok()?;
        if text == NO_MARKER {
            return Some(Cached::No);
        }
        let doc = CertificateDoc::from_json(&text).ok()?;
        // A stale or tampered entry is treated as a miss.
        (doc.arrangement == *arr && doc.verify().is_ok()).then_some(Cached::Yes(doc))
    }

    pub fn put(&self, kind: &str, arr: &Arrangement, entry: &Cached) {
        let Some(path) = self.path(kind, arr) else { return };
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        let text = match entry {
            Cached::Yes(doc) => doc.to_json(),
            Cached::No => NO_MARKER.to_string(),
        };
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}
