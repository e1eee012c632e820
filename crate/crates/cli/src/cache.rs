//! Newline-delimited JSON cache of result records.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::certfile::CertificateFile;
use crate::record::ResultRecord;

pub const CACHE_ENV: &str = "PARTICOVER_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    /// The cache named by `PARTICOVER_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()).map(Self::new)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn dir(&self) -> PathBuf {
        match self.path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        }
    }

    /// All well-formed records; malformed lines are skipped with a warning.
    pub fn records(&self) -> io::Result<Vec<ResultRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        Ok(text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .filter_map(|(i, l)| match ResultRecord::from_line(l) {
                Ok(r) => Some(r),
                Err(e) => {
                    log::warn!("{}:{}: skipping malformed record: {e}", self.path.display(), i + 1);
                    None
                }
            })
            .collect())
    }

    /// The most recent record for `(spec, version)`.
    pub fn lookup(&self, spec: &str, version: &str) -> io::Result<Option<ResultRecord>> {
        Ok(self.records()?.into_iter().rev().find(|r| r.spec == spec && r.version == version))
    }

    /// Appends one record. Writers are serialized by a lock file, and the
    /// new contents replace the cache by rename.
    pub fn append(&self, record: &ResultRecord) -> io::Result<()> {
        let lock_path = self.path.with_extension("lock");
        let lock = OpenOptions::new().create(true).truncate(false).write(true).open(&lock_path)?;
        lock.lock()?;
        let mut contents = match fs::read(&self.path) {
            Ok(c) => c,
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e),
        };
        if !contents.is_empty() && !contents.ends_with(b"\n") {
            contents.push(b'\n');
        }
        contents.extend_from_slice(record.to_line().as_bytes());
        contents.push(b'\n');
        let name = self.path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let tmp = self.dir().join(format!(".{name}.{}.tmp", std::process::id()));
        let mut f = File::create(&tmp)?;
        f.write_all(&contents)?;
        f.sync_all()?;
        fs::rename(&tmp, &self.path)?;
        lock.unlock()
    }

    pub fn certificate_path(&self, digest: &str) -> PathBuf {
        self.dir().join(format!("{digest}.cert"))
    }

    /// Writes the sidecar `<digest>.cert` next to the cache.
    pub fn write_certificate(&self, cert: &CertificateFile) -> io::Result<PathBuf> {
        let path = self.certificate_path(&cert.digest());
        let tmp = path.with_extension("cert.tmp");
        fs::write(&tmp, cert.to_text())?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{Quantity, VERSION};

    fn record(spec: &str, rho: u128) -> ResultRecord {
        ResultRecord {
            spec: spec.into(),
            order: 24,
            sigma: Quantity::Value(4),
            rho: Quantity::Value(rho),
            sigma_source: Some("formula".into()),
            rho_source: None,
            cert_digest: None,
            version: VERSION.into(),
            seconds: 1.0 / 3.0,
        }
    }

    #[test]
    fn round_trip_and_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("cache.jsonl"));
        assert_eq!(cache.lookup("S4", VERSION).unwrap(), None);
        cache.append(&record("S4", 11)).unwrap();
        cache.append(&record("S4", 10)).unwrap();
        assert_eq!(cache.lookup("S4", VERSION).unwrap(), Some(record("S4", 10)));
        assert_eq!(cache.lookup("S4", "0.0.0").unwrap(), None);
        assert_eq!(cache.records().unwrap().len(), 2);
    }

    #[test]
    fn malformed_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        fs::write(&path, format!("not json\n{}\n{{\"spec\": 3}}", record("A4", 5).to_line())).unwrap();
        let cache = Cache::new(&path);
        assert_eq!(cache.records().unwrap(), vec![record("A4", 5)]);
        cache.append(&record("S3", 4)).unwrap();
        assert_eq!(cache.records().unwrap().len(), 2);
    }

    #[test]
    fn sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c.jsonl"));
        let cert = CertificateFile::parse("0 1\n0 2\n0 3\n").unwrap();
        let path = cache.write_certificate(&cert).unwrap();
        assert_eq!(path.file_name().unwrap().to_string_lossy(), format!("{}.cert", cert.digest()));
        let back = CertificateFile::parse(&fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(back.digest(), cert.digest());
    }
}
