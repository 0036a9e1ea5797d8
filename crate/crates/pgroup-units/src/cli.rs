//! Command-line plumbing: build and verify catalogs, inspect a single
//! group, and run the theorem suite, with line-delimited machine reports or
//! human tables. Everything is deterministic for a fixed (config, seed).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::format::{
    catalog_file, entries_from_file, read_catalog, to_json, CatalogFormatError, Ranges,
};
use crate::catalog::{
    admissible_entries, build_entry, CatalogEntry, CatalogError, Params, TypeId,
};
use crate::fp::is_prime;
use crate::pcgroup::enumeration::Enumeration;
use crate::pcgroup::fingerprint::{fingerprint, Fingerprint};
use crate::pcgroup::symplectic::darboux_pairs;
use crate::rng;
use crate::theorems::{
    run_standard_checks, CheckMode, CheckResult, GroupDescriptor, TheoremContext, Verdict,
};

pub const DEFAULT_GROUP_BUDGET: u64 = 6561;
pub const DEFAULT_ALGEBRA_BUDGET: u64 = 729;
pub const DEFAULT_SAMPLES: u32 = 200;

#[derive(Debug, Parser)]
#[command(
    name = "pgu",
    version,
    about = "Catalogs of finite p-groups with derived subgroup of order p, and checks on the \
             normalized unit groups of their modular group algebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Odd prime p of the group class
    #[arg(long, env = "PGU_P", default_value_t = 3)]
    pub p: u64,
    /// Largest n in the parameter sweep
    #[arg(long, env = "PGU_N_MAX", default_value_t = 1)]
    pub n_max: u32,
    /// Largest m in the parameter sweep (m <= n is enforced per entry)
    #[arg(long, env = "PGU_M_MAX", default_value_t = 1)]
    pub m_max: u32,
    /// Largest k (half the rank of G over its center)
    #[arg(long, env = "PGU_K_MAX", default_value_t = 1)]
    pub k_max: u32,
    /// Largest center rank r
    #[arg(long, env = "PGU_R_MAX", default_value_t = 2)]
    pub r_max: u32,
    /// Comma-separated type filter, e.g. 1.1,1.5,1.19
    #[arg(long, env = "PGU_TYPES", value_delimiter = ',')]
    pub types: Option<Vec<String>>,
    /// Sample count for the sampled checks
    #[arg(long, env = "PGU_SAMPLES", default_value_t = DEFAULT_SAMPLES)]
    pub samples: u32,
    /// Master seed; per-entry streams are derived from it
    #[arg(long, env = "PGU_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest group order that will be enumerated
    #[arg(long, env = "PGU_BUDGET_GROUP", default_value_t = DEFAULT_GROUP_BUDGET)]
    pub budget_group: u64,
    /// Largest group order for which the group algebra is materialized
    #[arg(long, env = "PGU_BUDGET_ALGEBRA", default_value_t = DEFAULT_ALGEBRA_BUDGET)]
    pub budget_algebra: u64,
    /// Write the report or catalog here instead of standard output
    #[arg(long, env = "PGU_OUT")]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, env = "PGU_FORMAT", value_enum, default_value_t = ReportFormat::Human)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    /// Line-delimited machine-readable records
    Json,
    /// Summary table
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build all admissible catalog entries, verify them, and serialize the catalog
    Catalog,
    /// Inspect a single group: order, center tag, symplectic data, fingerprint
    Group {
        /// Catalog type, e.g. 1.5
        #[arg(long = "type")]
        type_id: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Run the theorem suite over the selected catalog
    Verify {
        /// Read entries from a catalog file instead of rebuilding them
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid value for {flag}: {message}")]
    Config { flag: String, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Format(#[from] CatalogFormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn config_err(flag: &str, message: impl Into<String>) -> CliError {
    CliError::Config { flag: flag.to_string(), message: message.into() }
}

/// Validated run configuration shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u64,
    pub n_max: u32,
    pub m_max: u32,
    pub k_max: u32,
    pub r_max: u32,
    pub types: Option<Vec<TypeId>>,
    pub samples: u32,
    pub seed: u64,
    pub budget_group: u64,
    pub budget_algebra: u64,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self, CliError> {
        if args.p == 2 {
            return Err(config_err(
                "--p",
                "p = 2 is out of scope: the group class assumes an odd prime",
            ));
        }
        if !is_prime(args.p) || args.p < 3 {
            return Err(config_err("--p", format!("{} is not an odd prime", args.p)));
        }
        if args.n_max < 1 {
            return Err(config_err("--n-max", "must be at least 1"));
        }
        if args.m_max < 1 {
            return Err(config_err("--m-max", "must be at least 1"));
        }
        if args.k_max < 1 {
            return Err(config_err("--k-max", "must be at least 1"));
        }
        if args.r_max < 2 {
            return Err(config_err("--r-max", "must be at least 2: the center has rank >= 2"));
        }
        if args.budget_group < 27 {
            return Err(config_err(
                "--budget-group",
                "must be at least 27, the smallest nonabelian case",
            ));
        }
        if args.budget_algebra < 27 {
            return Err(config_err(
                "--budget-algebra",
                "must be at least 27, the smallest nonabelian case",
            ));
        }
        let types = match &args.types {
            None => None,
            Some(list) => {
                let mut parsed = Vec::new();
                for item in list {
                    let t: TypeId = item
                        .parse()
                        .map_err(|e| config_err("--types", format!("{item:?}: {e}")))?;
                    parsed.push(t);
                }
                Some(parsed)
            }
        };
        Ok(RunConfig {
            p: args.p,
            n_max: args.n_max,
            m_max: args.m_max,
            k_max: args.k_max,
            r_max: args.r_max,
            types,
            samples: args.samples,
            seed: args.seed,
            budget_group: args.budget_group,
            budget_algebra: args.budget_algebra,
            out: args.out.clone(),
            format: args.format,
        })
    }

    fn entries(&self) -> Result<Vec<CatalogEntry>, CatalogError> {
        admissible_entries(
            self.p,
            self.n_max,
            self.m_max,
            self.k_max,
            self.r_max,
            self.types.as_deref(),
            self.budget_group,
        )
    }
}

/// Entry point used by the binary: parse, validate, dispatch, map to exit
/// codes (0 all pass, 1 any check failed, 2 configuration or parse errors).
pub fn run() -> i32 {
    let cli = Cli::parse();
    let config = match RunConfig::from_args(&cli.common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut stdout = std::io::stdout().lock();
    let outcome = match &cli.command {
        Command::Catalog => cmd_catalog(&config, &mut stdout),
        Command::Group { type_id, n, m, k, r } => {
            cmd_group(&config, type_id, Params { p: config.p, n: *n, m: *m, k: *k, r: *r }, &mut stdout)
        }
        Command::Verify { catalog } => cmd_verify(&config, catalog.as_deref(), &mut stdout),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn write_output(config: &RunConfig, content: &str, sink: &mut dyn Write) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            fs::write(path, content)?;
            Ok(())
        }
        None => {
            sink.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

/// Builds all admissible entries, verifies each against its expected
/// invariants, and serializes the catalog. Returns whether every
/// verification passed.
pub fn cmd_catalog(config: &RunConfig, sink: &mut dyn Write) -> Result<bool, CliError> {
    let entries = config.entries()?;
    let reports: Vec<_> =
        entries.iter().map(|e| crate::catalog::verify_entry(e, config.budget_group)).collect();
    let all_passed = reports.iter().all(|r| r.passed);
    let ranges = Ranges {
        n_max: config.n_max,
        m_max: config.m_max,
        k_max: config.k_max,
        r_max: config.r_max,
    };
    match config.format {
        ReportFormat::Json => {
            let file = catalog_file(config.p, ranges, &entries);
            write_output(config, &to_json(&file), sink)?;
        }
        ReportFormat::Human => {
            let mut table = String::new();
            table.push_str("type   p  n  m  k  r  order     tag  verified\n");
            for (e, rep) in entries.iter().zip(&reports) {
                let q = e.params;
                table.push_str(&format!(
                    "{:<6} {:<2} {:<2} {:<2} {:<2} {:<2} {:<8}  {:<4} {}\n",
                    e.type_id.to_string(),
                    q.p,
                    q.n,
                    q.m,
                    q.k,
                    q.r,
                    format!("{}^{}", q.p, e.expected.order_exp),
                    e.expected.center_tag.to_string(),
                    if rep.passed { "pass" } else { "FAIL" },
                ));
            }
            table.push_str(&format!(
                "{} entries, {} verified, {} failed\n",
                entries.len(),
                reports.iter().filter(|r| r.passed).count(),
                reports.iter().filter(|r| !r.passed).count(),
            ));
            for rep in reports.iter().filter(|r| !r.passed) {
                for c in rep.checks.iter().filter(|c| !c.passed) {
                    table.push_str(&format!(
                        "  {}@(n={},m={},k={},r={}) {}: {}\n",
                        rep.type_id, rep.params.n, rep.params.m, rep.params.k, rep.params.r,
                        c.name, c.details
                    ));
                }
            }
            write_output(config, &table, sink)?;
        }
    }
    Ok(all_passed)
}

#[derive(Debug, Serialize)]
pub struct GroupReport {
    pub type_id: String,
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub r: u32,
    pub order: u64,
    pub order_exp: u32,
    pub exponent: u64,
    pub center_order_exp: u32,
    pub center_tag: String,
    pub symplectic_rank: usize,
    pub darboux_pairs: Vec<(String, String)>,
    pub central_classes: u64,
    pub noncentral_classes: u64,
    pub fingerprint: Fingerprint,
    pub verified: bool,
}

/// Builds one group and reports its invariants: order, center tag,
/// symplectic rank with a Darboux basis, conjugacy class profile, and the
/// isomorphism fingerprint, together with the verification outcome.
pub fn cmd_group(
    config: &RunConfig,
    type_str: &str,
    params: Params,
    sink: &mut dyn Write,
) -> Result<bool, CliError> {
    let type_id: TypeId =
        type_str.parse().map_err(|e| config_err("--type", format!("{type_str:?}: {e}")))?;
    let entry = build_entry(type_id, params)?;
    let en = Enumeration::new(&entry.presentation, config.budget_group)
        .map_err(|e| config_err("--budget-group", e.to_string()))?;
    let report = crate::catalog::verify_entry(&entry, config.budget_group);
    let fp = fingerprint(&en);
    let pairs = darboux_pairs(&en)
        .map(|ps| {
            ps.iter()
                .map(|(x, y)| {
                    (entry.presentation.format_element(x), entry.presentation.format_element(y))
                })
                .collect::<Vec<_>>()
        })
        .unwrap_or_default();
    let central = en.center().len() as u64;
    let group_report = GroupReport {
        type_id: type_id.to_string(),
        p: params.p,
        n: params.n,
        m: params.m,
        k: params.k,
        r: params.r,
        order: en.order(),
        order_exp: entry.expected.order_exp,
        exponent: fp.exponent,
        center_order_exp: entry.expected.center_order_exp,
        center_tag: entry.expected.center_tag.to_string(),
        symplectic_rank: 2 * params.k as usize,
        darboux_pairs: pairs,
        central_classes: central,
        noncentral_classes: en.conjugacy_classes().len() as u64 - central,
        fingerprint: fp,
        verified: report.passed,
    };
    match config.format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(&group_report)
                .expect("group report serialization");
            text.push('\n');
            write_output(config, &text, sink)?;
        }
        ReportFormat::Human => {
            let mut text = String::new();
            text.push_str(&format!(
                "group {} at p={} n={} m={} k={} r={}\n",
                group_report.type_id, params.p, params.n, params.m, params.k, params.r
            ));
            text.push_str(&format!(
                "order: {}^{} = {}\n",
                params.p, group_report.order_exp, group_report.order
            ));
            text.push_str(&format!("exponent: {}\n", group_report.exponent));
            text.push_str(&format!(
                "center: order {}^{}, tag {}\n",
                params.p, group_report.center_order_exp, group_report.center_tag
            ));
            text.push_str(&format!("symplectic rank: {}\n", group_report.symplectic_rank));
            text.push_str("darboux pairs:\n");
            for (x, y) in &group_report.darboux_pairs {
                text.push_str(&format!("  ({x}, {y})\n"));
            }
            text.push_str(&format!(
                "conjugacy classes: {} central, {} noncentral of size {}\n",
                group_report.central_classes, group_report.noncentral_classes, params.p
            ));
            text.push_str(&format!(
                "order histogram: {}\n",
                group_report
                    .fingerprint
                    .order_histogram
                    .iter()
                    .map(|(o, c)| format!("{o}:{c}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            text.push_str(&format!(
                "verification: {}\n",
                if group_report.verified { "pass" } else { "FAIL" }
            ));
            write_output(config, &text, sink)?;
        }
    }
    Ok(group_report.verified)
}

fn entry_name(entry: &CatalogEntry) -> String {
    format!(
        "{}(p={},n={},m={},k={},r={})",
        entry.type_id,
        entry.params.p,
        entry.params.n,
        entry.params.m,
        entry.params.k,
        entry.params.r
    )
}

/// The fixed check names of the standard battery, used when a whole entry
/// must be marked skipped.
const STANDARD_CHECKS: [(&str, bool); 8] = [
    ("center_order", false),
    ("power_identity(l=2)", false),
    ("vp_c", false),
    ("g_cap_vp", true),
    ("omega(l=1)", false),
    ("omega(l=2)", false),
    ("center_omega(l=1)", false),
    ("center_omega(l=2)", false),
];

fn skipped_suite(entry: &CatalogEntry, reason: &str, samples: u32, seed: u64) -> Vec<CheckResult> {
    let order = entry.presentation.order().min(u64::MAX as u128) as u64;
    let group = GroupDescriptor {
        name: entry_name(entry),
        prime: entry.params.p,
        order,
    };
    STANDARD_CHECKS
        .iter()
        .map(|(name, exhaustive)| CheckResult {
            check: name.to_string(),
            group: group.clone(),
            mode: if *exhaustive {
                CheckMode::Exhaustive
            } else {
                CheckMode::Sampled { seed, samples }
            },
            verdict: Verdict::Skipped { reason: reason.to_string() },
            notes: vec![],
            elapsed_ms: None,
        })
        .collect()
}

fn entry_results(entry: &CatalogEntry, config: &RunConfig) -> Vec<CheckResult> {
    let seed = rng::sub_seed(config.seed, &entry_name(entry));
    match TheoremContext::for_entry(entry, config.budget_group, config.budget_algebra) {
        Ok(ctx) => run_standard_checks(&ctx, config.samples, seed),
        Err(e) => skipped_suite(entry, &e.to_string(), config.samples, seed),
    }
}

/// Runs the standard theorem battery over the selected entries, in
/// parallel, merging results in entry order. Returns whether no check
/// failed (skips do not fail the run).
pub fn cmd_verify(
    config: &RunConfig,
    catalog_path: Option<&std::path::Path>,
    sink: &mut dyn Write,
) -> Result<bool, CliError> {
    let entries = match catalog_path {
        Some(path) => entries_from_file(&read_catalog(path)?)?,
        None => config.entries()?,
    };
    let mut slots: Vec<Option<Vec<CheckResult>>> = (0..entries.len()).map(|_| None).collect();
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let workers = workers.min(entries.len().max(1));
    std::thread::scope(|scope| {
        let mut remaining: &mut [Option<Vec<CheckResult>>] = &mut slots;
        let mut handles = Vec::new();
        for tid in 0..workers {
            // Deal the slots round-robin so each worker owns disjoint slices.
            let mut own: Vec<(usize, &mut Option<Vec<CheckResult>>)> = Vec::new();
            let mut rest = remaining;
            let mut idx = tid;
            let mut cursor = 0;
            loop {
                let offset = idx - cursor;
                if offset >= rest.len() {
                    break;
                }
                let (_, tail) = rest.split_at_mut(offset);
                let (slot, tail) = tail.split_first_mut().unwrap();
                own.push((idx, slot));
                cursor = idx + 1;
                idx += workers;
                rest = tail;
            }
            remaining = rest;
            let entries = &entries;
            handles.push(scope.spawn(move || {
                for (i, slot) in own {
                    *slot = Some(entry_results(&entries[i], config));
                }
            }));
        }
        for h in handles {
            h.join().expect("verification worker");
        }
    });
    let results: Vec<CheckResult> =
        slots.into_iter().flat_map(|s| s.expect("all slots filled")).collect();
    let all_ok = results.iter().all(|r| !matches!(r.verdict, Verdict::Fail { .. }));
    match config.format {
        ReportFormat::Json => {
            let mut text = String::new();
            for r in &results {
                text.push_str(&serde_json::to_string(r).expect("check result serialization"));
                text.push('\n');
            }
            write_output(config, &text, sink)?;
        }
        ReportFormat::Human => {
            let mut text = String::new();
            text.push_str(&format!("{:<34} {:<22} verdict\n", "group", "check"));
            let mut pass = 0usize;
            let mut fail = 0usize;
            let mut skip = 0usize;
            for r in &results {
                let verdict = match &r.verdict {
                    Verdict::Pass => {
                        pass += 1;
                        "pass".to_string()
                    }
                    Verdict::Fail { witness } => {
                        fail += 1;
                        format!("FAIL: {witness}")
                    }
                    Verdict::Skipped { reason } => {
                        skip += 1;
                        format!("skipped: {reason}")
                    }
                };
                text.push_str(&format!("{:<34} {:<22} {}\n", r.group.name, r.check, verdict));
            }
            text.push_str(&format!(
                "{} checks: {pass} pass, {fail} fail, {skip} skipped\n",
                results.len()
            ));
            write_output(config, &text, sink)?;
        }
    }
    Ok(all_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).expect("argument parsing")
    }

    fn config(args: &[&str]) -> RunConfig {
        RunConfig::from_args(&parse(args).common).expect("validation")
    }

    #[test]
    fn command_line_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn defaults_are_the_documented_ones() {
        let c = config(&["pgu", "catalog"]);
        assert_eq!(c.p, 3);
        assert_eq!((c.n_max, c.m_max, c.k_max, c.r_max), (1, 1, 1, 2));
        assert_eq!(c.samples, DEFAULT_SAMPLES);
        assert_eq!(c.budget_group, DEFAULT_GROUP_BUDGET);
        assert_eq!(c.budget_algebra, DEFAULT_ALGEBRA_BUDGET);
        assert_eq!(c.format, ReportFormat::Human);
    }

    #[test]
    fn non_prime_and_even_primes_are_config_errors_naming_the_flag() {
        for (p, needle) in [("4", "not an odd prime"), ("2", "odd prime")] {
            let cli = parse(&["pgu", "--p", p, "catalog"]);
            let err = RunConfig::from_args(&cli.common).unwrap_err();
            let text = err.to_string();
            assert!(text.contains("--p"), "{text}");
            assert!(text.contains(needle), "{text}");
        }
    }

    #[test]
    fn small_budgets_and_bad_types_are_rejected() {
        let cli = parse(&["pgu", "--budget-group", "10", "catalog"]);
        let err = RunConfig::from_args(&cli.common).unwrap_err().to_string();
        assert!(err.contains("--budget-group"), "{err}");
        assert!(err.contains("27"), "{err}");

        let cli = parse(&["pgu", "--types", "1.5,bogus", "catalog"]);
        let err = RunConfig::from_args(&cli.common).unwrap_err().to_string();
        assert!(err.contains("--types"), "{err}");
        assert!(err.contains("bogus"), "{err}");
    }

    #[test]
    fn catalog_json_is_parseable_and_deterministic() {
        let c = config(&["pgu", "--types", "1.5,1.19", "--format", "json", "catalog"]);
        let mut a = Vec::new();
        let mut b = Vec::new();
        assert!(cmd_catalog(&c, &mut a).unwrap());
        assert!(cmd_catalog(&c, &mut b).unwrap());
        assert_eq!(a, b);
        let file =
            crate::catalog::format::parse_json(std::str::from_utf8(&a).unwrap()).unwrap();
        assert_eq!(file.entries.len(), 2);
    }

    #[test]
    fn group_report_shows_the_documented_invariants() {
        let c = config(&["pgu", "--format", "json", "catalog"]);
        let mut buf = Vec::new();
        let ok = cmd_group(
            &c,
            "1.5",
            Params { p: 3, n: 1, m: 1, k: 1, r: 2 },
            &mut buf,
        )
        .unwrap();
        assert!(ok);
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["order"], 81);
        assert_eq!(v["center_tag"], "A1");
        assert_eq!(v["symplectic_rank"], 2);
        let ok = cmd_group(
            &c,
            "1.19",
            Params { p: 3, n: 1, m: 1, k: 1, r: 2 },
            &mut buf,
        )
        .unwrap();
        assert!(ok);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"center_tag\": \"A4\""), "{text}");
    }

    #[test]
    fn invalid_group_parameters_name_the_constraint() {
        let c = config(&["pgu", "catalog"]);
        let mut buf = Vec::new();
        // Type 1.6 requires n > m.
        let err = cmd_group(&c, "1.6", Params { p: 3, n: 1, m: 1, k: 1, r: 2 }, &mut buf)
            .unwrap_err()
            .to_string();
        assert!(err.contains("n > m"), "{err}");
    }

    #[test]
    fn verify_passes_on_a_clean_selection_and_is_byte_deterministic() {
        let c = config(&[
            "pgu", "--types", "1.5", "--samples", "15", "--seed", "9", "--format", "json",
            "verify",
        ]);
        let mut a = Vec::new();
        let ok = cmd_verify(&c, None, &mut a).unwrap();
        assert!(ok, "{}", String::from_utf8_lossy(&a));
        let mut b = Vec::new();
        cmd_verify(&c, None, &mut b).unwrap();
        assert_eq!(a, b);
        // One line per check, 8 checks for the single entry.
        let text = String::from_utf8(a).unwrap();
        assert_eq!(text.lines().count(), 8);
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.get("elapsed_ms").is_none());
            assert_eq!(v["group"]["prime"], 3);
        }
    }

    #[test]
    fn verify_reports_the_refuted_strictness_entry_with_exit_failure() {
        let c = config(&[
            "pgu", "--types", "1.1", "--samples", "10", "--seed", "3", "--format", "json",
            "verify",
        ]);
        let mut buf = Vec::new();
        let ok = cmd_verify(&c, None, &mut buf).unwrap();
        assert!(!ok);
        let text = String::from_utf8(buf).unwrap();
        let failing: Vec<_> = text.lines().filter(|l| l.contains("\"fail\"")).collect();
        assert_eq!(failing.len(), 1, "{text}");
        assert!(failing[0].contains("omega(l=1)"), "{}", failing[0]);
        assert!(failing[0].contains("equality"), "{}", failing[0]);
    }

    #[test]
    fn verify_reads_catalog_files_and_rejects_corrupt_ones() {
        let dir = std::env::temp_dir().join("pgu-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("catalog.json");
        let c = config(&["pgu", "--types", "1.5", "--format", "json", "catalog"]);
        let mut file_bytes = Vec::new();
        cmd_catalog(&RunConfig { out: Some(path.clone()), ..c.clone() }, &mut file_bytes)
            .unwrap();
        let vc = config(&[
            "pgu", "--types", "1.5", "--samples", "10", "--format", "json", "verify",
        ]);
        let mut buf = Vec::new();
        let ok = cmd_verify(&vc, Some(&path), &mut buf).unwrap();
        assert!(ok);
        std::fs::write(&path, "{ not json").unwrap();
        let mut buf = Vec::new();
        let err = cmd_verify(&vc, Some(&path), &mut buf).unwrap_err();
        assert!(matches!(err, CliError::Format(_)), "{err}");
        assert!(buf.is_empty(), "no partial report on parse errors");
        std::fs::remove_file(&path).ok();
    }
}
