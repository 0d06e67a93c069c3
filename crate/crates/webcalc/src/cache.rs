//! On-disk memoization of projector operators.
//!
//! When `WEBCALC_CACHE_DIR` is set, evaluated projectors are stored there as
//! operator files (see [`crate::opfile`]). A file is addressed by the
//! SHA-256 of its key line `projector <key> N=<n> mode=<mode>`, rendered in
//! lowercase hex with the extension `.op`, so the name depends only on what
//! was computed. Unreadable or mismatching entries are recomputed and
//! overwritten; write failures are ignored.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use webcalc_core::eval::{Evaluator, SparseOperator};
use webcalc_core::projectors::{Projector, ProjectorKind};
use webcalc_core::Result;

use crate::opfile::{read_operator, write_operator};

pub const CACHE_ENV: &str = "WEBCALC_CACHE_DIR";

/// A directory of memoized operators.
#[derive(Clone, Debug)]
pub struct OperatorCache {
    dir: PathBuf,
}

impl OperatorCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        OperatorCache { dir: dir.into() }
    }

    /// The cache named by `WEBCALC_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(OperatorCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key_line(kind: &ProjectorKind, ev: &Evaluator) -> String {
        format!(
            "projector {} N={} mode={}",
            kind.key(),
            ev.n(),
            ev.mode().keyword()
        )
    }

    pub fn path_for(&self, key_line: &str) -> PathBuf {
        let digest = Sha256::digest(key_line.as_bytes());
        self.dir.join(format!("{digest:x}.op"))
    }

    fn load(&self, path: &Path, ev: &Evaluator) -> Option<SparseOperator> {
        let text = fs::read_to_string(path).ok()?;
        let (mode, op) = read_operator(&text).ok()?;
        (mode == ev.mode() && op.n() == ev.n()).then_some(op)
    }

    /// The projector's operator, from the cache when possible.
    pub fn projector(&self, kind: &ProjectorKind, ev: &Evaluator) -> Result<SparseOperator> {
        let path = self.path_for(&Self::key_line(kind, ev));
        if let Some(op) = self.load(&path, ev) {
            return Ok(op);
        }
        let op = Projector::new(ev.n(), kind.clone())?.operator(ev)?.clone();
        if fs::create_dir_all(&self.dir).is_ok() {
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            if fs::write(&tmp, write_operator(ev.mode(), &op)).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
        Ok(op)
    }
}

/// Evaluates a projector, through the cache if one is configured.
pub fn projector_operator(
    cache: Option<&OperatorCache>,
    kind: &ProjectorKind,
    ev: &Evaluator,
) -> Result<SparseOperator> {
    match cache {
        Some(c) => c.projector(kind, ev),
        None => Ok(Projector::new(ev.n(), kind.clone())?.operator(ev)?.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use webcalc_core::eval::EvalConfig;
    use webcalc_core::scalars::Mode;

    #[test]
    fn cache_hits_return_the_same_operator() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OperatorCache::new(dir.path());
        let ev = Evaluator::new(EvalConfig::new(3, Mode::Zeta));
        let kind = ProjectorKind::parse("T:2").unwrap();
        let first = cache.projector(&kind, &ev).unwrap();
        let path = cache.path_for(&OperatorCache::key_line(&kind, &ev));
        assert!(path.exists());
        let second = cache.projector(&kind, &ev).unwrap();
        assert_eq!(first, second);
        // A corrupted entry is recomputed.
        fs::write(&path, "garbage").unwrap();
        assert_eq!(cache.projector(&kind, &ev).unwrap(), first);
        assert!(fs::read_to_string(&path)
            .unwrap()
            .starts_with(crate::opfile::MAGIC));
    }

    #[test]
    fn names_are_content_addressed() {
        let cache = OperatorCache::new("/nonexistent");
        let a = cache.path_for("projector T:2 N=2 mode=zeta");
        let b = cache.path_for("projector T:2 N=3 mode=zeta");
        assert_ne!(a, b);
        assert_eq!(a.file_name().unwrap().len(), 64 + 3);
    }
}
