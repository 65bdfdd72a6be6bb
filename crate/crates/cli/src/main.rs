//! `zerosum`: exact zero-sum invariants of small finite Abelian groups,
//! bound reports, extremal constructions, and inductive extraction.

mod cache;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zerosum_core::bounds::{self, ConstantsRegistry};
use zerosum_core::group::{AbelianGroup, GroupSequence};
use zerosum_core::inductive::{self, EtaPolicy, SylowSplit};
use zerosum_core::solver::{self, Budget, SearchStatus};
use zerosum_core::{construct, witness, Error as CoreError};

use cache::ResultCache;

const EXIT_OK: u8 = 0;
const EXIT_PROPERTY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Zero-sum invariants of finite Abelian groups",
    after_help = "\
Group specs are comma-separated moduli with optional ^k repetition (6^2 = 6,6),\n\
canonicalized to the invariant-factor chain. Elements are tuples (a,b,...).\n\
\n\
Exit codes: 0 success, 1 property violation, 2 usage error, 3 budget exceeded.\n\
\n\
Sweep CSV columns:\n\
  r                     homocyclic rank\n\
  n                     exponent\n\
  p_n                   greatest prime power dividing n\n\
  lower_bound           r(n-1)+1\n\
  inductive_bound       r(n-1)+1 + (c_r - r)(n/P(n) - 1)\n\
  cr_provenance         exact | assumed\n\
  emde_boas_meshulam    floor(n(1 + (r-1) ln n))\n\
  gap                   inductive_bound - lower_bound\n\
  ratio                 inductive_bound / (r n)\n\
Dyadic-window maxima of gap/n follow the data as '# window' comment lines;\n\
JSON output mirrors rows and windows 1:1."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (sweep defaults to csv, everything else to text)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Result cache location (default: platform cache dir)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Worker threads for the exact searches
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Supply an assumed c_r as R=VALUE (repeatable); bounds computed from
    /// it are labeled conditional
    #[arg(long = "cr", global = true, value_name = "R=VALUE")]
    cr: Vec<String>,

    /// Derive missing c_r from (c r ln r)^r with this absolute constant;
    /// heavily flagged, off unless given
    #[arg(long, global = true, value_name = "C")]
    fallback_c: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstantArg {
    D,
    Eta,
}

impl ConstantArg {
    fn as_str(self) -> &'static str {
        match self {
            ConstantArg::D => "D",
            ConstantArg::Eta => "eta",
        }
    }
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Group-order cap (defaults: 64 for D, 32 for eta)
    #[arg(long)]
    cap: Option<u64>,

    /// Acknowledge caps beyond 256
    #[arg(long = "i-know")]
    i_know: bool,

    /// Wall-clock limit in seconds
    #[arg(long)]
    timeout: Option<f64>,

    /// Search-node limit
    #[arg(long)]
    node_limit: Option<u64>,
}

impl BudgetArgs {
    fn to_budget(&self, workers: usize) -> Budget {
        Budget {
            cap: self.cap,
            acknowledge_large: self.i_know,
            node_limit: self.node_limit,
            time_limit: self.timeout.map(Duration::from_secs_f64),
            workers,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable bound and known exact value for a group
    Bounds { groupspec: String },

    /// Compute D or eta exactly by search
    Exact {
        constant: ConstantArg,
        groupspec: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the extremal witness to this .seq file
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Skip the result cache entirely
        #[arg(long)]
        no_cache: bool,
    },

    /// Build one of the extremal sequences
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },

    /// Run the inductive extraction pipeline on a witness file
    Extract {
        groupspec: String,
        file: PathBuf,
        /// Write the full extraction trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
    },

    /// Check a witness file for zero-sum freeness
    Verify {
        kind: VerifyKind,
        groupspec: String,
        file: PathBuf,
        /// Length bound for short-zsf (default: the group exponent)
        #[arg(long)]
        maxlen: Option<u64>,
    },

    /// Print the embedded known-values table, recomputing what fits the caps
    Table {
        /// Load rows from a JSON file instead of the embedded table
        #[arg(long, hide = true)]
        table_json: Option<PathBuf>,
    },

    /// Emit bound rows for C_n^r over n = 2..=n_max
    Sweep { r: u32, n_max: u64 },

    /// Number-theoretic helpers
    Arith {
        #[command(subcommand)]
        op: ArithCmd,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// n_i - 1 copies of each basis element (zero-sum free)
    DExtremal {
        groupspec: String,
        /// Validate the construction even above order 64
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// n - 1 copies of each non-empty subset sum of the basis of C_n^r
    EtaExtremal {
        r: u32,
        n: u64,
        /// Validate the construction even above order 64
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    /// No non-empty zero-sum subsequence
    Zsf,
    /// No non-empty zero-sum subsequence of length <= maxlen
    ShortZsf,
}

#[derive(Subcommand)]
enum ArithCmd {
    /// Greatest prime power dividing n (P(1) = 1)
    Pn { n: u64 },
    /// Product of maximal prime powers not exceeding n (= lcm(1..n))
    An { n: u64 },
}

/// Error wrapper deciding the process exit code.
enum CliError {
    Usage(String),
    Property(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Property(_) => EXIT_PROPERTY,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Property(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match &e {
            CoreError::EtaBoundViolation { .. } | CoreError::InconsistentReport { .. } => {
                CliError::Property(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when the read end of a pipe closes (e.g. `zerosum sweep | head`)
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Arith { op } => cmd_arith(op),
        Command::Bounds { groupspec } => cmd_bounds(&cli, groupspec),
        Command::Exact {
            constant,
            groupspec,
            budget,
            witness,
            no_cache,
        } => cmd_exact(&cli, *constant, groupspec, budget, witness.as_deref(), *no_cache),
        Command::Construct { what } => cmd_construct(&cli, what),
        Command::Extract {
            groupspec,
            file,
            trace,
        } => cmd_extract(&cli, groupspec, file, trace.as_deref()),
        Command::Verify {
            kind,
            groupspec,
            file,
            maxlen,
        } => cmd_verify(&cli, *kind, groupspec, file, *maxlen),
        Command::Table { table_json } => cmd_table(&cli, table_json.as_deref()),
        Command::Sweep { r, n_max } => cmd_sweep(&cli, *r, *n_max),
    }
}

fn build_registry(cli: &Cli) -> Result<ConstantsRegistry, CliError> {
    let mut reg = ConstantsRegistry::default();
    for spec in &cli.cr {
        let (r, v) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--cr expects R=VALUE, got {spec:?}")))?;
        let r: u32 = r
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad rank in --cr {spec:?}")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad value in --cr {spec:?}")))?;
        reg.set_assumed(r, v, "command line")?;
    }
    Ok(reg)
}

/// Make sure c_r exists, deriving it from the fallback constant when allowed.
fn ensure_cr(reg: &mut ConstantsRegistry, r: u32, fallback_c: Option<f64>) -> Result<(), CliError> {
    if reg.get(r).is_some() {
        return Ok(());
    }
    match fallback_c {
        Some(c) => {
            reg.set_from_fallback(r, c)?;
            Ok(())
        }
        None => Err(CliError::Usage(CoreError::MissingConstant { r }.to_string())),
    }
}

fn open_cache(cli: &Cli) -> ResultCache {
    let path = cli.cache.clone().unwrap_or_else(cache::default_cache_path);
    ResultCache::open(path)
}

fn format_of(cli: &Cli, default: Format) -> Format {
    cli.format.unwrap_or(default)
}

fn seq_display(s: &GroupSequence) -> String {
    s.iter_elements()
        .map(|(e, m)| format!("{e}x{m}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_arith(op: &ArithCmd) -> Result<u8, CliError> {
    match op {
        ArithCmd::Pn { n } => println!("{}", zerosum_core::arith::greatest_prime_power(*n)?),
        ArithCmd::An { n } => println!("{}", zerosum_core::arith::a_sequence(*n)?),
    }
    Ok(EXIT_OK)
}

fn cmd_bounds(cli: &Cli, groupspec: &str) -> Result<u8, CliError> {
    let group = AbelianGroup::parse_spec(groupspec)?;
    let mut reg = build_registry(cli)?;
    if let Some(c) = cli.fallback_c {
        // make the conditional entries available for this shape
        if !group.is_trivial() {
            let fs = group.invariant_factors();
            let n = group.exponent();
            let r = fs.iter().rev().take_while(|&&f| f == n).count() as u32;
            let l_rank = (fs.len() - r as usize) as u32;
            let _ = ensure_cr(&mut reg, l_rank + r, Some(c));
        }
    }
    let mut report = bounds::full_report(&group, &reg)?;
    let cache = open_cache(cli);
    let spec = group.spec_string();
    for (kind, constant, have) in [
        ("D", bounds::ConstantKind::Davenport, ()),
        ("eta", bounds::ConstantKind::Eta, ()),
    ] {
        let _ = have;
        if let Some(e) = cache.get(&spec, kind) {
            let already = report
                .entries
                .iter()
                .any(|x| x.constant == constant && x.kind == bounds::EntryKind::Exact);
            if !already {
                report.insert_exact(constant, "solver exact (cached)", e.value, "exhaustive search")?;
            }
        }
    }
    match format_of(cli, Format::Text) {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap()),
        _ => {
            println!(
                "group {}  (order {}, rank {}, exponent {})",
                spec,
                group.order(),
                group.rank(),
                group.exponent()
            );
            println!(
                "{:<9} {:<38} {:<12} {:>8}  {}",
                "constant", "name", "kind", "value", "source"
            );
            for e in &report.entries {
                let constant = match e.constant {
                    bounds::ConstantKind::Davenport => "D",
                    bounds::ConstantKind::Eta => "eta",
                };
                let kind = match e.kind {
                    bounds::EntryKind::Lower => "lower",
                    bounds::EntryKind::Upper => "upper",
                    bounds::EntryKind::Exact => "exact",
                    bounds::EntryKind::Conditional => "conditional",
                };
                let mut source = e.citation.clone();
                if let Some(a) = &e.assumption {
                    source = format!("{source}; {a}");
                }
                println!(
                    "{:<9} {:<38} {:<12} {:>8}  {}",
                    constant, e.name, kind, e.value, source
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_exact(
    cli: &Cli,
    constant: ConstantArg,
    groupspec: &str,
    budget_args: &BudgetArgs,
    witness_path: Option<&std::path::Path>,
    no_cache: bool,
) -> Result<u8, CliError> {
    let group = AbelianGroup::parse_spec(groupspec)?;
    let spec = group.spec_string();
    let kind = constant.as_str();
    let mut cache = open_cache(cli);
    if !no_cache {
        if let Some(hit) = cache.get(&spec, kind) {
            match format_of(cli, Format::Text) {
                Format::Json => {
                    let payload = json!({
                        "group": spec,
                        "constant": kind,
                        "value": hit.value,
                        "status": hit.status,
                        "cached": true,
                        "witness_path": hit.witness_path,
                    });
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                }
                _ => println!("{kind}({spec}) = {} [exact, cached]", hit.value),
            }
            return Ok(EXIT_OK);
        }
    }
    let budget = budget_args.to_budget(cli.workers.max(1));
    let out = match constant {
        ConstantArg::D => solver::davenport_exact(&group, &budget)?,
        ConstantArg::Eta => solver::eta_exact(&group, &budget)?,
    };
    let mut stored_witness = None;
    if let Some(path) = witness_path {
        witness::write_witness_file(path, &out.witness)?;
        stored_witness = Some(path.display().to_string());
    }
    if out.status.is_exact() && !no_cache {
        cache.put(&spec, kind, out.value, out.status.as_str(), stored_witness.clone());
        if let Err(e) = cache.save() {
            eprintln!("warning: could not save cache: {e}");
        }
    }
    match format_of(cli, Format::Text) {
        Format::Json => {
            let payload = json!({
                "group": spec,
                "constant": kind,
                "value": out.value,
                "status": out.status.as_str(),
                "cached": false,
                "witness": out.witness.iter_elements()
                    .flat_map(|(e, m)| std::iter::repeat(e.to_string()).take(m as usize))
                    .collect::<Vec<_>>(),
                "witness_path": stored_witness,
                "nodes": out.stats.nodes,
                "elapsed_seconds": out.stats.elapsed.as_secs_f64(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        _ => {
            match out.status {
                SearchStatus::Exact => println!("{kind}({spec}) = {}", out.value),
                _ => println!(
                    "{kind}({spec}) >= {} [{}: search incomplete]",
                    out.value,
                    out.status.as_str()
                ),
            }
            println!(
                "witness (length {}): {}",
                out.witness.len(),
                seq_display(&out.witness)
            );
            println!(
                "nodes {}  elapsed {:.3}s",
                out.stats.nodes,
                out.stats.elapsed.as_secs_f64()
            );
        }
    }
    if out.status.is_exact() {
        Ok(EXIT_OK)
    } else {
        eprintln!("budget exceeded: the value is only a lower bound");
        Ok(EXIT_BUDGET)
    }
}

fn cmd_construct(cli: &Cli, what: &ConstructCmd) -> Result<u8, CliError> {
    let budget = Budget {
        workers: cli.workers.max(1),
        ..Default::default()
    };
    let (seq, verify_requested, out, short_check) = match what {
        ConstructCmd::DExtremal {
            groupspec,
            verify,
            out,
        } => {
            let group = AbelianGroup::parse_spec(groupspec)?;
            (construct::davenport_extremal(&group), *verify, out.clone(), false)
        }
        ConstructCmd::EtaExtremal { r, n, verify, out } => {
            (construct::eta_extremal(*r, *n)?, *verify, out.clone(), true)
        }
    };
    let group = seq.group().clone();
    // small constructions are always validated; larger ones only on request
    let validated = if group.order() <= 64 || verify_requested {
        let ok = if short_check {
            solver::verify_short_zero_sum_free(&seq, group.exponent(), &budget)?
        } else {
            solver::verify_zero_sum_free(&seq, &budget)?
        };
        if !ok {
            return Err(CliError::Property(format!(
                "construction over {} failed its check",
                group.spec_string()
            )));
        }
        true
    } else {
        false
    };
    match &out {
        Some(path) => {
            witness::write_witness_file(path, &seq)?;
            println!(
                "wrote {} elements over {} to {}{}",
                seq.len(),
                group.spec_string(),
                path.display(),
                if validated { " (validated)" } else { "" }
            );
        }
        None => print!("{}", witness::witness_to_string(&seq)),
    }
    Ok(EXIT_OK)
}

fn cmd_extract(
    cli: &Cli,
    groupspec: &str,
    file: &std::path::Path,
    trace_path: Option<&std::path::Path>,
) -> Result<u8, CliError> {
    let group = AbelianGroup::parse_spec(groupspec)?;
    let seq = witness::read_witness_file(file, Some(&group))?;
    let mut reg = build_registry(cli)?;
    if let Some(c) = cli.fallback_c {
        let p = zerosum_core::arith::greatest_prime_power(group.exponent())?;
        let q_rank = group.quotient_by_sylow(p)?.group().rank() as u32;
        if q_rank > 0 {
            let _ = ensure_cr(&mut reg, q_rank, Some(c));
        }
    }
    let budget = Budget {
        workers: cli.workers.max(1),
        ..Default::default()
    };
    let split = SylowSplit::new(&group, EtaPolicy::Tightest, Some(&reg), &budget)?;
    let trace = inductive::inductive_zero_sum(&seq, &split, &budget)?;
    // independent re-summation before reporting success
    let mut acc = group.identity();
    for (e, m) in trace.result.iter_elements() {
        for _ in 0..m {
            acc = acc.add(&e).map_err(CliError::from)?;
        }
    }
    if !acc.is_identity() || trace.result.is_empty() || !trace.result.is_sub_multiset_of(&seq) {
        return Err(CliError::Property(
            "internal invariant violation: extracted result failed re-verification".into(),
        ));
    }
    if let Some(path) = trace_path {
        std::fs::write(path, serde_json::to_string_pretty(&trace.to_json()).unwrap())?;
    }
    match format_of(cli, Format::Text) {
        Format::Json => println!("{}", serde_json::to_string_pretty(&trace.to_json()).unwrap()),
        _ => {
            println!(
                "split: P = {}, H = {} (D(H) = {}), Q = {} (exp {}), eta bound {} [{}]",
                trace.p_power,
                trace.torsion_spec,
                trace.d_h,
                trace.quotient_spec,
                trace.exp_q,
                trace.eta_bound,
                trace.eta_provenance
            );
            println!(
                "required length {}; extracted {} blocks; selected {:?}",
                trace.required_length,
                trace.blocks.len(),
                trace.selected
            );
            println!(
                "zero-sum result (length {}): {}",
                trace.result.len(),
                seq_display(&trace.result)
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    cli: &Cli,
    kind: VerifyKind,
    groupspec: &str,
    file: &std::path::Path,
    maxlen: Option<u64>,
) -> Result<u8, CliError> {
    let group = AbelianGroup::parse_spec(groupspec)?;
    let seq = witness::read_witness_file(file, Some(&group))?;
    let budget = Budget {
        workers: cli.workers.max(1),
        ..Default::default()
    };
    let violation = match kind {
        VerifyKind::Zsf => solver::find_zero_sum_subsequence(&seq, &budget)?,
        VerifyKind::ShortZsf => {
            let limit = maxlen.unwrap_or_else(|| group.exponent());
            solver::find_short_zero_sum(&seq, limit, &budget)?
        }
    };
    match violation {
        None => {
            println!(
                "OK: property holds for {} elements over {}",
                seq.len(),
                group.spec_string()
            );
            Ok(EXIT_OK)
        }
        Some(w) => {
            println!(
                "violation: zero-sum sub-multiset of length {}: {}",
                w.len(),
                seq_display(&w)
            );
            Ok(EXIT_PROPERTY)
        }
    }
}

fn cmd_table(cli: &Cli, table_json: Option<&std::path::Path>) -> Result<u8, CliError> {
    let rows = match table_json {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<Vec<table::TableRow>>(&text)
                .map_err(|e| CliError::Usage(format!("bad table fixture: {e}")))?
        }
        None => table::builtin_rows(),
    };
    let mut mismatches = 0u32;
    let mut out_rows = Vec::new();
    for row in &rows {
        let outcome = table::check_row(row, cli.workers.max(1))?;
        let (status, detail) = match &outcome {
            table::RowOutcome::Match { .. } => ("MATCH".to_string(), String::new()),
            table::RowOutcome::Mismatch { recomputed } => {
                mismatches += 1;
                ("MISMATCH".to_string(), format!(" recomputed {recomputed}"))
            }
            table::RowOutcome::Skipped { reason } => ("SKIPPED".to_string(), format!(" ({reason})")),
        };
        out_rows.push(json!({
            "constant": row.constant,
            "group": row.group,
            "value": row.value,
            "citation": row.citation,
            "status": status,
        }));
        if format_of(cli, Format::Text) != Format::Json {
            println!(
                "{:<4} {:<6} = {:>4}  {}{}  [{}]",
                row.constant, row.group, row.value, status, detail, row.citation
            );
        }
    }
    if format_of(cli, Format::Text) == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "rows": out_rows, "mismatches": mismatches }))
                .unwrap()
        );
    }
    if mismatches > 0 {
        eprintln!("{mismatches} mismatching table rows");
        Ok(EXIT_PROPERTY)
    } else {
        Ok(EXIT_OK)
    }
}

fn cmd_sweep(cli: &Cli, r: u32, n_max: u64) -> Result<u8, CliError> {
    if r == 0 || n_max < 2 {
        return Err(CliError::Usage("sweep needs r >= 1 and n_max >= 2".into()));
    }
    let mut reg = build_registry(cli)?;
    ensure_cr(&mut reg, r, cli.fallback_c)?;
    let entry = reg.get(r).expect("ensured above").clone();
    let provenance = match entry.provenance {
        bounds::CrProvenance::Exact => "exact",
        bounds::CrProvenance::Assumed { .. } => "assumed",
    };
    struct Row {
        n: u64,
        p_n: u64,
        lower: u64,
        inductive: u64,
        ebm: u64,
        gap: u64,
        ratio: f64,
    }
    let mut rows = Vec::with_capacity((n_max - 1) as usize);
    for n in 2..=n_max {
        let p_n = zerosum_core::arith::greatest_prime_power(n)?;
        let lower = r as u64 * (n - 1) + 1;
        let inductive = bounds::theorem_main_bound(r, n, &reg)?.value;
        let ebm = (n as f64 * (1.0 + (r as f64 - 1.0) * (n as f64).ln())).floor() as u64;
        rows.push(Row {
            n,
            p_n,
            lower,
            inductive,
            gap: inductive - lower,
            ebm,
            ratio: inductive as f64 / (r as u64 * n) as f64,
        });
    }
    struct Window {
        k: u32,
        lo: u64,
        hi: u64,
        max_gap_per_n: f64,
    }
    let mut windows: Vec<Window> = Vec::new();
    for row in &rows {
        let k = row.n.ilog2();
        let g = row.gap as f64 / row.n as f64;
        match windows.last_mut() {
            Some(w) if w.k == k => w.max_gap_per_n = w.max_gap_per_n.max(g),
            _ => windows.push(Window {
                k,
                lo: 1 << k,
                hi: (1u64 << (k + 1)).min(n_max + 1),
                max_gap_per_n: g,
            }),
        }
    }
    match format_of(cli, Format::Csv) {
        Format::Json => {
            let payload = json!({
                "r": r,
                "n_max": n_max,
                "c_r": { "value": entry.value, "provenance": provenance },
                "rows": rows.iter().map(|w| json!({
                    "r": r, "n": w.n, "p_n": w.p_n,
                    "lower_bound": w.lower,
                    "inductive_bound": w.inductive,
                    "cr_provenance": provenance,
                    "emde_boas_meshulam": w.ebm,
                    "gap": w.gap,
                    "ratio": w.ratio,
                })).collect::<Vec<_>>(),
                "windows": windows.iter().map(|w| json!({
                    "k": w.k, "lo": w.lo, "hi": w.hi,
                    "max_gap_per_n": w.max_gap_per_n,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        _ => {
            println!(
                "# zerosum sweep r={r} n_max={n_max} c_{r}={} ({provenance})",
                entry.value
            );
            println!("r,n,p_n,lower_bound,inductive_bound,cr_provenance,emde_boas_meshulam,gap,ratio");
            for w in &rows {
                println!(
                    "{r},{},{},{},{},{provenance},{},{},{:.6}",
                    w.n, w.p_n, w.lower, w.inductive, w.ebm, w.gap, w.ratio
                );
            }
            for w in &windows {
                println!(
                    "# window k={} n=[{},{}) max_gap_per_n={:.6}",
                    w.k, w.lo, w.hi, w.max_gap_per_n
                );
            }
        }
    }
    Ok(EXIT_OK)
}
