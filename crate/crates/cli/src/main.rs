use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use particover::cache::Cache;
use particover::certfile::CertificateFile;
use particover::compute::{compute, is_exact, render, ComputeOptions};
use particover::record::VERSION;
use particover::table::{self, PUBLISHED_ROWS};
use particover_core::formulas::ReportError;
use particover_core::{constructors, parse_spec, GroupSpec};

const OK: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "particover", version, about = "Minimal covers and partitions of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute σ and ρ for a group.
    Compute {
        spec: String,
        /// Only compute σ.
        #[arg(long)]
        sigma: bool,
        /// Only compute ρ.
        #[arg(long)]
        rho: bool,
        #[arg(long, default_value_t = 60.0)]
        budget_seconds: f64,
        #[arg(long)]
        threads: Option<usize>,
        /// Fail unless every requested value is exact.
        #[arg(long)]
        exact_only: bool,
        /// Print the cache record as JSON.
        #[arg(long)]
        json: bool,
        /// Ignore cached records.
        #[arg(long)]
        refresh: bool,
    },
    /// Recompute the published values.
    Table {
        #[arg(value_enum, default_value_t = Which::Paper)]
        which: Which,
        #[arg(long, default_value_t = 10.0)]
        budget_seconds: f64,
    },
    /// Check a certificate sidecar against a group.
    Verify { spec: String, certfile: PathBuf },
    /// Enumerate the subgroup lattice.
    Subgroups {
        spec: String,
        /// List every subgroup, not just counts by order.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Paper,
}

fn parse(text: &str) -> Result<GroupSpec, u8> {
    parse_spec(text).map_err(|e| {
        eprintln!("error: {e}");
        USAGE
    })
}

fn cmd_compute(
    spec: &str,
    opts: ComputeOptions,
    exact_only: bool,
    json: bool,
    refresh: bool,
) -> Result<u8, u8> {
    let spec = parse(spec)?;
    let full = opts.sigma && opts.rho;
    let cache = Cache::from_env();
    if let (Some(cache), true, false) = (&cache, full, refresh) {
        match cache.lookup(&spec.to_string(), VERSION) {
            Ok(Some(rec)) => {
                info!("cache hit in {}", cache.path().display());
                println!("{}", if json { rec.to_line() } else { format!("{}: sigma {} rho {} (cached)", rec.spec, rec.sigma, rec.rho) });
                let exact = !exact_only || (rec.sigma.is_determined() && rec.rho.is_determined());
                return Ok(if exact { OK } else { FAIL });
            }
            Ok(None) => info!("cache miss"),
            Err(e) => log::warn!("cache unreadable: {e}"),
        }
    }
    let computed = compute(&spec, &opts).map_err(|e| {
        eprintln!("error: {e}");
        if matches!(e, ReportError::Spec(_)) { USAGE } else { FAIL }
    })?;
    if json {
        println!("{}", computed.record.to_line());
    } else {
        print!("{}", render(&computed, &opts));
    }
    if let (Some(cache), true) = (&cache, full) {
        let stored = cache.append(&computed.record).and_then(|_| {
            if computed.cert.is_empty() { Ok(()) } else { cache.write_certificate(&computed.cert).map(|_| ()) }
        });
        if let Err(e) = stored {
            eprintln!("error: cannot write cache {}: {e}", cache.path().display());
            return Err(FAIL);
        }
    }
    if !computed.report.mismatches.is_empty() {
        return Ok(FAIL);
    }
    if exact_only && !is_exact(&computed, &opts) {
        eprintln!("error: not every requested value is exact within the budget");
        return Ok(FAIL);
    }
    Ok(OK)
}

fn cmd_table(budget_seconds: f64) -> u8 {
    let rows: Vec<_> = PUBLISHED_ROWS.iter().map(|r| table::evaluate(r, budget_seconds)).collect();
    print!("{}", table::render(&rows));
    if rows.iter().any(|r| r.failed()) {
        FAIL
    } else {
        OK
    }
}

fn cmd_verify(spec: &str, certfile: &PathBuf) -> Result<u8, u8> {
    let spec = parse(spec)?;
    let text = std::fs::read_to_string(certfile).map_err(|e| {
        eprintln!("error: {}: {e}", certfile.display());
        USAGE
    })?;
    let cert = CertificateFile::parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", certfile.display());
        USAGE
    })?;
    let g = constructors::build(&spec).map_err(|e| {
        eprintln!("error: {e}");
        FAIL
    })?;
    let verdict = cert.verify(&g).map_err(|e| {
        eprintln!("error: {e}");
        FAIL
    })?;
    let word = |ok: bool| if ok { "OK" } else { "INVALID" };
    if let Some((n, ok)) = verdict.sigma {
        println!("cover of {n} subgroups: {}", word(ok));
    }
    if let Some((n, ok)) = verdict.rho {
        println!("partition into {n} subgroups: {}", word(ok));
    }
    println!("digest {}", cert.digest());
    if let Some(stem) = certfile.file_stem().and_then(|s| s.to_str()).filter(|s| s.len() == 64) {
        if stem != cert.digest() {
            println!("digest does not match file name");
            return Ok(FAIL);
        }
    }
    Ok(if verdict.all_ok() { OK } else { FAIL })
}

fn cmd_subgroups(spec: &str, list: bool) -> Result<u8, u8> {
    let spec = parse(spec)?;
    let g = constructors::build(&spec).map_err(|e| {
        eprintln!("error: {e}");
        FAIL
    })?;
    let lat = g.lattice().map_err(|e| {
        eprintln!("error: {e}");
        FAIL
    })?;
    println!("{spec}: order {}, {} subgroups", g.order(), lat.len());
    let normal = g.normal_subgroups().map_err(|_| FAIL)?;
    let mut by_order = std::collections::BTreeMap::new();
    for (i, s) in lat.iter().enumerate() {
        let e = by_order.entry(s.order()).or_insert((0, 0));
        e.0 += 1;
        e.1 += usize::from(normal.contains(&i));
    }
    for (order, (count, normal)) in by_order {
        println!("  order {order:>5}: {count:>5} subgroups, {normal} normal");
    }
    if list {
        for (i, s) in lat.iter().enumerate() {
            let gens: Vec<String> = s.generators().iter().map(u32::to_string).collect();
            println!("{i}\t{}\t<{}>", s.order(), gens.join(","));
        }
    }
    Ok(OK)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Compute { spec, sigma, rho, budget_seconds, threads, exact_only, json, refresh } => {
            let both = !sigma && !rho;
            let opts = ComputeOptions { sigma: sigma || both, rho: rho || both, budget_seconds, threads };
            cmd_compute(&spec, opts, exact_only, json, refresh).unwrap_or_else(|c| c)
        }
        Command::Table { which: Which::Paper, budget_seconds } => cmd_table(budget_seconds),
        Command::Verify { spec, certfile } => cmd_verify(&spec, &certfile).unwrap_or_else(|c| c),
        Command::Subgroups { spec, list } => cmd_subgroups(&spec, list).unwrap_or_else(|c| c),
    };
    ExitCode::from(code)
}
