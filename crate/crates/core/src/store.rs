//! Plain-JSON certificate store: one human-readable file per witness coloring.
//!
//! Certificates are re-verified both when stored and when loaded, so a file
//! edited by hand into an invalid coloring is rejected.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{is_excellent_coloring, is_good_coloring, Coloring};
use crate::equation::{coeff_sum_s, validate_coeffs, Equation};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("certificate store I/O: {0}")]
    Io(#[from] io::Error),
    #[error("malformed certificate {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("certificate integrity check failed: {0}")]
    Integrity(String),
}

/// What a certificate's coloring claims to avoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Claim {
    /// No monochromatic solution to `E(shift)`.
    Good { shift: i64 },
    /// No monochromatic solution to `E(-j)` for every `j` in `j_min..=j_max`.
    Excellent { j_min: i64, j_max: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub coeffs: Vec<i64>,
    pub claim: Claim,
    pub num_colors: usize,
    pub length: usize,
    /// Space-separated colors, e.g. `"1 2 2 1"`.
    pub colors: String,
    /// The engine proved that no longer coloring with the same claim exists.
    pub maximal: bool,
    pub created_at: String,
    pub engine_version: String,
}

/// Lookup key for a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CertificateKey {
    pub coeffs: Vec<i64>,
    pub claim: Claim,
    pub num_colors: usize,
    pub length: usize,
}

impl Certificate {
    pub fn good(eq: &Equation, witness: &Coloring, maximal: bool) -> Self {
        Certificate::new(eq.coeffs(), Claim::Good { shift: eq.shift() }, witness, maximal)
    }

    pub fn excellent(coeffs: &[i64], witness: &Coloring, maximal: bool) -> Self {
        let claim = Claim::Excellent {
            j_min: 0,
            j_max: coeff_sum_s(coeffs),
        };
        Certificate::new(coeffs, claim, witness, maximal)
    }

    fn new(coeffs: &[i64], claim: Claim, witness: &Coloring, maximal: bool) -> Self {
        Certificate {
            coeffs: coeffs.to_vec(),
            claim,
            num_colors: witness.num_colors(),
            length: witness.len(),
            colors: witness.to_string(),
            maximal,
            created_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            engine_version: crate::ENGINE_VERSION.to_string(),
        }
    }

    pub fn key(&self) -> CertificateKey {
        CertificateKey {
            coeffs: self.coeffs.clone(),
            claim: self.claim.clone(),
            num_colors: self.num_colors,
            length: self.length,
        }
    }

    pub fn coloring(&self) -> Result<Coloring, StoreError> {
        Coloring::parse(&self.colors, Some(self.num_colors)).map_err(|e| StoreError::Integrity(e.to_string()))
    }

    /// Re-checks the coloring against its claim.
    pub fn verify(&self) -> Result<Coloring, StoreError> {
        validate_coeffs(&self.coeffs).map_err(|e| StoreError::Integrity(e.to_string()))?;
        let coloring = self.coloring()?;
        if coloring.len() != self.length {
            return Err(StoreError::Integrity(format!(
                "declared length {} but {} colors stored",
                self.length,
                coloring.len()
            )));
        }
        let ok = match self.claim {
            Claim::Good { shift } => {
                let eq = Equation::new(self.coeffs.clone(), shift).expect("coefficients validated");
                is_good_coloring(&eq, &coloring)
            }
            Claim::Excellent { j_min, j_max } => {
                if j_min != 0 || j_max != coeff_sum_s(&self.coeffs) {
                    return Err(StoreError::Integrity(format!(
                        "excellence range {j_min}..={j_max} does not match s"
                    )));
                }
                is_excellent_coloring(&self.coeffs, &coloring)
            }
        };
        if !ok {
            return Err(StoreError::Integrity(format!(
                "coloring does not satisfy {:?} for {:?}",
                self.claim, self.coeffs
            )));
        }
        Ok(coloring)
    }
}

impl CertificateKey {
    /// File stem, e.g. `good_c1-1_b-1_t3_n26` or `excellent_c1-1_t3_n13`.
    pub fn id(&self) -> String {
        format!("{}_n{}", self.family(), self.length)
    }

    /// Everything but the length.
    fn family(&self) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        let coeffs = coeffs.join("-");
        match self.claim {
            Claim::Good { shift } => format!("good_c{coeffs}_b{shift}_t{}", self.num_colors),
            Claim::Excellent { .. } => format!("excellent_c{coeffs}_t{}", self.num_colors),
        }
    }
}

/// A directory of certificates. Single writer, any number of readers: files
/// are written to a temporary name and renamed into place.
#[derive(Debug, Clone)]
pub struct CertificateStore {
    root: PathBuf,
}

impl CertificateStore {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(CertificateStore { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path_for(&self, id: &str) -> PathBuf {
        self.root.join(format!("{id}.json"))
    }

    pub fn store(&self, cert: &Certificate) -> Result<String, StoreError> {
        cert.verify()?;
        let id = cert.key().id();
        let path = self.path_for(&id);
        let tmp = self.root.join(format!(".{id}.json.tmp"));
        let body = serde_json::to_string_pretty(cert).expect("certificate serializes");
        fs::write(&tmp, body + "\n")?;
        fs::rename(&tmp, &path)?;
        Ok(id)
    }

    pub fn load(&self, key: &CertificateKey) -> Result<Option<Certificate>, StoreError> {
        self.load_path(&self.path_for(&key.id()), Some(key))
    }

    fn load_path(&self, path: &Path, expect: Option<&CertificateKey>) -> Result<Option<Certificate>, StoreError> {
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let cert: Certificate = serde_json::from_str(&text).map_err(|source| StoreError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        if let Some(key) = expect {
            if &cert.key() != key {
                return Err(StoreError::Integrity(format!(
                    "{} holds a certificate for a different key",
                    path.display()
                )));
            }
        }
        cert.verify()?;
        Ok(Some(cert))
    }

    /// The maximal (engine-proved longest) certificate for this equation
    /// family, if one was stored.
    pub fn find_maximal(
        &self,
        coeffs: &[i64],
        claim: &Claim,
        num_colors: usize,
    ) -> Result<Option<Certificate>, StoreError> {
        let probe = CertificateKey {
            coeffs: coeffs.to_vec(),
            claim: claim.clone(),
            num_colors,
            length: 0,
        };
        let prefix = format!("{}_n", probe.family());
        let mut entries: Vec<PathBuf> = fs::read_dir(&self.root)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with(&prefix) && n.ends_with(".json"))
            })
            .collect();
        entries.sort();
        for path in entries {
            if let Some(cert) = self.load_path(&path, None)? {
                let mut key = probe.clone();
                key.length = cert.length;
                if cert.key() != key {
                    return Err(StoreError::Integrity(format!(
                        "{} holds a certificate for a different key",
                        path.display()
                    )));
                }
                if cert.maximal {
                    return Ok(Some(cert));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schur3() -> (Equation, Coloring) {
        let eq = Equation::new(vec![1, 1], 0).unwrap();
        let col = Coloring::parse("1 2 2 1 3 3 3 3 3 1 2 2 1", Some(3)).unwrap();
        (eq, col)
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let store = CertificateStore::open(dir.path()).unwrap();
        let (eq, col) = schur3();
        let cert = Certificate::good(&eq, &col, true);
        let id = store.store(&cert).unwrap();
        assert_eq!(id, "good_c1-1_b0_t3_n13");
        let back = store.load(&cert.key()).unwrap().unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.coloring().unwrap(), col);
        let found = store
            .find_maximal(&[1, 1], &Claim::Good { shift: 0 }, 3)
            .unwrap()
            .unwrap();
        assert_eq!(found, cert);
    }

    #[test]
    fn missing_key_is_none() {
        let dir = tempfile::tempdir().unwrap();
        let store = CertificateStore::open(dir.path()).unwrap();
        let key = CertificateKey {
            coeffs: vec![1, 1],
            claim: Claim::Good { shift: 0 },
            num_colors: 2,
            length: 4,
        };
        assert!(store.load(&key).unwrap().is_none());
        assert!(store
            .find_maximal(&[1, 1], &Claim::Good { shift: 0 }, 2)
            .unwrap()
            .is_none());
    }

    #[test]
    fn refuses_to_store_bad_coloring() {
        let dir = tempfile::tempdir().unwrap();
        let store = CertificateStore::open(dir.path()).unwrap();
        let eq = Equation::new(vec![1, 1], 0).unwrap();
        let bad = Coloring::parse("1 1", Some(2)).unwrap();
        assert!(matches!(
            store.store(&Certificate::good(&eq, &bad, false)),
            Err(StoreError::Integrity(_))
        ));
    }

    #[test]
    fn rejects_corrupted_file() {
        let dir = tempfile::tempdir().unwrap();
        let store = CertificateStore::open(dir.path()).unwrap();
        let (eq, col) = schur3();
        let cert = Certificate::good(&eq, &col, true);
        let id = store.store(&cert).unwrap();
        let path = dir.path().join(format!("{id}.json"));
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("1 2 2 1 3 3", "1 2 2 1 1 3")).unwrap();
        assert!(matches!(store.load(&cert.key()), Err(StoreError::Integrity(_))));

        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(store.load(&cert.key()), Err(StoreError::Json { .. })));
    }

    #[test]
    fn excellence_certificates() {
        let dir = tempfile::tempdir().unwrap();
        let store = CertificateStore::open(dir.path()).unwrap();
        let col = Coloring::parse("1 1 2 2 2 2 2 2 1 1", Some(2)).unwrap();
        let cert = Certificate::excellent(&[1, 1, 1], &col, true);
        assert_eq!(cert.claim, Claim::Excellent { j_min: 0, j_max: 2 });
        assert_eq!(store.store(&cert).unwrap(), "excellent_c1-1-1_t2_n10");
        assert_eq!(store.load(&cert.key()).unwrap().unwrap(), cert);

        // good for x + y = z but not excellent
        let not_exc = Coloring::parse("1 2 1", Some(2)).unwrap();
        assert!(store.store(&Certificate::excellent(&[1, 1], &not_exc, false)).is_err());
    }
}
