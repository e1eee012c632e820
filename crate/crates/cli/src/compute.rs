//! The `compute` pipeline: a report, its record, and its certificates.

use std::time::Instant;

use particover_core::formulas::{compute_report, ReportError, ReportOptions, SigmaRhoReport};
use particover_core::solver::SearchBudget;
use particover_core::GroupSpec;

use crate::certfile::CertificateFile;
use crate::record::ResultRecord;

#[derive(Debug, Clone, PartialEq)]
pub struct ComputeOptions {
    pub sigma: bool,
    pub rho: bool,
    pub budget_seconds: f64,
    pub threads: Option<usize>,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        Self { sigma: true, rho: true, budget_seconds: 60.0, threads: None }
    }
}

impl ComputeOptions {
    fn report_options(&self) -> ReportOptions {
        let mut budget = SearchBudget { max_seconds: self.budget_seconds, ..SearchBudget::default() };
        if let Some(t) = self.threads {
            budget = budget.with_threads(t);
        }
        ReportOptions { sigma: self.sigma, rho: self.rho, budget }
    }
}

#[derive(Debug, Clone)]
pub struct Computed {
    pub report: SigmaRhoReport,
    pub record: ResultRecord,
    pub cert: CertificateFile,
}

pub fn compute(spec: &GroupSpec, opts: &ComputeOptions) -> Result<Computed, ReportError> {
    let start = Instant::now();
    let report = compute_report(spec, &opts.report_options())?;
    let cert = CertificateFile::from_report(&report);
    let digest = (!cert.is_empty()).then(|| cert.digest());
    let record = ResultRecord::from_report(&report, digest, start.elapsed().as_secs_f64());
    Ok(Computed { report, record, cert })
}

/// Whether every requested value is determined exactly.
pub fn is_exact(c: &Computed, opts: &ComputeOptions) -> bool {
    (!opts.sigma || c.record.sigma.is_determined()) && (!opts.rho || c.record.rho.is_determined())
}

pub fn render(c: &Computed, opts: &ComputeOptions) -> String {
    let r = &c.record;
    let mut out = format!("{}  (order {})\n", r.spec, r.order);
    let src = |s: &Option<String>| s.clone().unwrap_or_else(|| "-".into());
    if opts.sigma {
        out += &format!("  sigma = {:<16} [{}]\n", r.sigma.to_string(), src(&r.sigma_source));
    }
    if opts.rho {
        out += &format!("  rho   = {:<16} [{}]\n", r.rho.to_string(), src(&r.rho_source));
    }
    for n in &c.report.notes {
        out += &format!("    {n}\n");
    }
    if let Some(d) = &r.cert_digest {
        out += &format!("  certificate {d}\n");
    }
    for m in &c.report.mismatches {
        out += &format!("FATAL consistency error: {m}\n");
    }
    out += &format!("  {:.3} s\n", r.seconds);
    out
}
