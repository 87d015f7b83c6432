//! Persistent JSON cache for oracle verdicts and certificates, keyed by a
//! digest of the full problem instance (gate set, object, size bound,
//! ancilla count, thresholds). Floats enter the key via their exact bit
//! patterns, so a key never aliases across numerically distinct instances.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gates::GateSet;
use crate::linalg::C64;
use crate::objects::{PartialTruthTable, PureState, TruthTable, UnitaryMatrix};

const SCHEMA_VERSION: u64 = 1;

/// On-disk map from instance keys to stored JSON results.
pub struct OracleCache {
    path: PathBuf,
    entries: BTreeMap<String, serde_json::Value>,
    dirty: bool,
}

impl OracleCache {
    /// Loads the cache at `path`; a missing file yields an empty cache, a
    /// malformed one is an error (never silently discarded).
    pub fn open(path: impl AsRef<Path>) -> Result<OracleCache> {
        let path = path.as_ref().to_path_buf();
        let entries = match std::fs::read_to_string(&path) {
            Ok(text) => {
                let doc: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
                let version = doc.get("schema_version").and_then(|v| v.as_u64());
                if version != Some(SCHEMA_VERSION) {
                    return Err(Error::Cache(format!(
                        "{}: unsupported schema_version {version:?}",
                        path.display()
                    )));
                }
                match doc.get("entries") {
                    Some(serde_json::Value::Object(map)) => map
                        .iter()
                        .map(|(k, v)| (k.clone(), v.clone()))
                        .collect(),
                    _ => {
                        return Err(Error::Cache(format!(
                            "{}: missing entries object",
                            path.display()
                        )))
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        Ok(OracleCache {
            path,
            entries,
            dirty: false,
        })
    }

    pub fn get(&self, key: &str) -> Option<&serde_json::Value> {
        self.entries.get(key)
    }

    pub fn put(&mut self, key: String, value: serde_json::Value) {
        self.entries.insert(key, value);
        self.dirty = true;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes the cache back if anything changed since open/save.
    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let doc = serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "entries": self.entries,
        });
        let text =
            serde_json::to_string_pretty(&doc).map_err(|e| Error::Cache(e.to_string()))?;
        if let Some(dir) = self.path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
            }
        }
        std::fs::write(&self.path, text)
            .map_err(|e| Error::Cache(format!("{}: {e}", self.path.display())))?;
        self.dirty = false;
        Ok(())
    }
}

fn hex_digest(hasher: Sha256) -> String {
    let bytes = hasher.finalize();
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn feed_f64(hasher: &mut Sha256, x: f64) {
    hasher.update(format!("{:016x};", x.to_bits()).as_bytes());
}

fn feed_c64(hasher: &mut Sha256, z: C64) {
    feed_f64(hasher, z.re);
    feed_f64(hasher, z.im);
}

/// Digest of a gate set's full contents: name, gate labels, arities, and
/// every matrix entry's bit pattern.
pub fn gate_set_digest(gs: &GateSet) -> String {
    let mut h = Sha256::new();
    h.update(gs.name.as_bytes());
    h.update(b"|");
    for g in gs.gates() {
        h.update(g.label.as_bytes());
        h.update(format!(":{};", g.arity).as_bytes());
        let dim = g.matrix.dim;
        for r in 0..dim {
            for c in 0..dim {
                feed_c64(&mut h, g.matrix.at(r, c));
            }
        }
    }
    hex_digest(h)
}

pub fn digest_function(f: &TruthTable) -> String {
    let mut h = Sha256::new();
    h.update(b"function;");
    h.update(f.to_string_repr().as_bytes());
    hex_digest(h)
}

pub fn digest_partial_function(f: &PartialTruthTable) -> String {
    let mut h = Sha256::new();
    h.update(b"partial;");
    h.update(f.to_string_repr().as_bytes());
    hex_digest(h)
}

pub fn digest_unitary(u: &UnitaryMatrix) -> String {
    let mut h = Sha256::new();
    h.update(format!("unitary;{};", u.n).as_bytes());
    let dim = u.mat.dim;
    for r in 0..dim {
        for c in 0..dim {
            feed_c64(&mut h, u.mat.at(r, c));
        }
    }
    hex_digest(h)
}

pub fn digest_state(psi: &PureState) -> String {
    let mut h = Sha256::new();
    h.update(format!("state;{};", psi.n).as_bytes());
    for &a in &psi.amps {
        feed_c64(&mut h, a);
    }
    hex_digest(h)
}

/// Instance key: problem tag, gate set digest, object digest, size bound,
/// ancilla count, and the exact bits of every threshold in play.
#[allow(clippy::too_many_arguments)]
pub fn cache_key(
    gs: &GateSet,
    problem: &str,
    object_digest: &str,
    s: usize,
    t: usize,
    alpha: Option<f64>,
    beta: Option<f64>,
    epsilon: Option<f64>,
) -> String {
    let mut h = Sha256::new();
    h.update(problem.as_bytes());
    h.update(b"|");
    h.update(gs.name.as_bytes());
    h.update(b"|");
    h.update(gate_set_digest(gs).as_bytes());
    h.update(b"|");
    h.update(object_digest.as_bytes());
    h.update(format!("|s={s}|t={t}|").as_bytes());
    for (tag, v) in [("a", alpha), ("b", beta), ("e", epsilon)] {
        match v {
            Some(x) => {
                h.update(tag.as_bytes());
                h.update(b"=");
                feed_f64(&mut h, x);
            }
            None => h.update(format!("{tag}=_;").as_bytes()),
        }
    }
    hex_digest(h)
}
