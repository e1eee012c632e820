//! Certificate sidecar files and their digests.
//!
//! A sidecar holds up to two sections, `# sigma` (a cover) and `# rho`
//! (a partition), each listing one subgroup per line as sorted decimal
//! element ids. The digest is the SHA-256 of the canonical text.

use particover_core::formulas::SigmaRhoReport;
use particover_core::solver::{verify_cover_sets, verify_partition_sets};
use particover_core::{BitSet, Group};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("element id {id} is out of range for a group of order {order}")]
    OutOfRange { id: u32, order: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertificateFile {
    pub sigma: Option<Vec<Vec<u32>>>,
    pub rho: Option<Vec<Vec<u32>>>,
}

fn canonical(sets: &[BitSet]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = sets.iter().map(|s| s.iter().map(|x| x as u32).collect()).collect();
    normalize(&mut out);
    out
}

fn normalize(members: &mut [Vec<u32>]) {
    for m in members.iter_mut() {
        m.sort_unstable();
        m.dedup();
    }
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Outcome of checking a sidecar against a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub sigma: Option<(usize, bool)>,
    pub rho: Option<(usize, bool)>,
}

impl Verdict {
    pub fn all_ok(&self) -> bool {
        (self.sigma.is_some() || self.rho.is_some())
            && self.sigma.is_none_or(|s| s.1)
            && self.rho.is_none_or(|r| r.1)
    }
}

impl CertificateFile {
    pub fn from_report(rep: &SigmaRhoReport) -> Self {
        Self { sigma: rep.sigma_cert.as_deref().map(canonical), rho: rep.rho_cert.as_deref().map(canonical) }
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_none() && self.rho.is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, section) in [("sigma", &self.sigma), ("rho", &self.rho)] {
            if let Some(members) = section {
                out.push_str(&format!("# {name}\n"));
                for m in members {
                    let ids: Vec<String> = m.iter().map(u32::to_string).collect();
                    out.push_str(&ids.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    /// Parses a sidecar. Lines before any header belong to `rho`.
    pub fn parse(text: &str) -> Result<Self, CertFileError> {
        let mut file = CertificateFile::default();
        let mut current = &mut file.rho;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                current = match header.trim() {
                    "sigma" => &mut file.sigma,
                    "rho" => &mut file.rho,
                    other => return Err(CertFileError::Parse { line: i + 1, msg: format!("unknown section {other:?}") }),
                };
                current.get_or_insert_with(Vec::new);
                continue;
            }
            let ids = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<u32>, _>>()
                .map_err(|e| CertFileError::Parse { line: i + 1, msg: e.to_string() })?;
            current.get_or_insert_with(Vec::new).push(ids);
        }
        for members in [&mut file.sigma, &mut file.rho].into_iter().flatten() {
            normalize(members);
        }
        Ok(file)
    }

    fn sets(members: &[Vec<u32>], g: &Group) -> Result<Vec<BitSet>, CertFileError> {
        members
            .iter()
            .map(|m| {
                if let Some(&id) = m.iter().find(|&&id| id as usize >= g.order()) {
                    return Err(CertFileError::OutOfRange { id, order: g.order() });
                }
                Ok(BitSet::from_iter_with_len(g.order(), m.iter().map(|&x| x as usize)))
            })
            .collect()
    }

    pub fn verify(&self, g: &Group) -> Result<Verdict, CertFileError> {
        let sigma = match &self.sigma {
            Some(m) => Some((m.len(), verify_cover_sets(g, &Self::sets(m, g)?))),
            None => None,
        };
        let rho = match &self.rho {
            Some(m) => Some((m.len(), verify_partition_sets(g, &Self::sets(m, g)?))),
            None => None,
        };
        Ok(Verdict { sigma, rho })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use particover_core::constructors::elementary_abelian;

    #[test]
    fn text_and_digest_are_canonical() {
        let a = CertificateFile { sigma: None, rho: Some(vec![vec![3, 0], vec![0, 1], vec![2, 0]]) };
        let b = CertificateFile::parse("0 2\n0 3\n1 0\n").unwrap();
        assert_eq!(CertificateFile::parse(&a.to_text()).unwrap(), b);
        assert_eq!(b.to_text(), "# rho\n0 1\n0 2\n0 3\n");
        assert_eq!(CertificateFile::parse(&b.to_text()).unwrap().digest(), b.digest());
        assert_eq!(b.digest().len(), 64);
    }

    #[test]
    fn verify_klein() {
        let g = elementary_abelian(2, 2).unwrap();
        let good = CertificateFile::parse("# sigma\n0 1\n0 2\n0 3\n# rho\n0 1\n0 2\n0 3\n").unwrap();
        let v = good.verify(&g).unwrap();
        assert_eq!(v, Verdict { sigma: Some((3, true)), rho: Some((3, true)) });
        assert!(v.all_ok());
        let bad = CertificateFile::parse("0 1\n0 2\n").unwrap();
        assert!(!bad.verify(&g).unwrap().all_ok());
        assert_eq!(CertificateFile::parse("0 9\n").unwrap().verify(&g), Err(CertFileError::OutOfRange { id: 9, order: 4 }));
        assert!(matches!(CertificateFile::parse("# tau\n"), Err(CertFileError::Parse { line: 1, .. })));
        assert!(matches!(CertificateFile::parse("0 x\n"), Err(CertFileError::Parse { line: 1, .. })));
        assert!(!CertificateFile::default().verify(&g).unwrap().all_ok());
    }
}
