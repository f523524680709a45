//! Command line front end: group analysis, pair sets, rank, units, class
//! count oracle and the group catalog.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zgunits::config::Parallelism;
use zgunits::io::{parse_group_json, GroupSpec, PairsFile};
use zgunits::rank::{rank_oracle, rank_total};
use zgunits::report::{
    rank_text, rank_tsv, AnalysisReport, GroupSummary, Meta, OracleReport, PairReport, PairsReport, RankOutput,
    UnitReport, UnitsReport,
};
use zgunits::shoda::{complete_irredundant_set, PairSet};
use zgunits::units::{
    bass_sweep_central_units, log_rank_witness, z_unit_for_pair, ZAttempt, ZLimits,
};
use zgunits::{catalog, AnalysisConfig, Error, FiniteGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zgunits", version, about = "Central units of integral group rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pair set, rank and group summary.
    Analyze(Common),
    /// Complete and irredundant set of Shoda pairs.
    Pairs(Common),
    /// Rank of the central unit group from the pair set.
    Rank(Common),
    /// Central units from Bass units and the rank they witness.
    Units {
        #[command(flatten)]
        common: Common,
        /// Also run the z-construction on an ε-projected Bass unit per pair.
        #[arg(long)]
        z: bool,
        /// Skip the Bass unit sweep (useful for large groups together with `--z`).
        #[arg(long)]
        no_sweep: bool,
        /// Pairs whose z-construction multiplies more conjugate factors than
        /// this are skipped.
        #[arg(long, default_value_t = 5000)]
        z_factor_cap: u64,
        /// Pairs whose z input would need larger coefficients (in bits) are
        /// skipped.
        #[arg(long, default_value_t = 20000.0)]
        z_bits_cap: f64,
    },
    /// Real minus rational class count.
    Oracle(Common),
    /// List catalog groups, or export one as a Cayley table.
    Catalog {
        /// Catalog name to export.
        #[arg(long)]
        export: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// `catalog:NAME` or a path to a group JSON file.
    #[arg(long)]
    group: String,
    /// Candidate pairs (and optional chains) to classify instead of enumerating.
    #[arg(long)]
    pairs_file: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    subgroup_cap: Option<usize>,
    #[arg(long)]
    chain_depth_cap: Option<usize>,
    #[arg(long)]
    chain_visit_cap: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

impl Common {
    fn config(&self) -> anyhow::Result<AnalysisConfig> {
        let mut cfg = AnalysisConfig::default();
        if let Some(x) = self.subgroup_cap {
            cfg.subgroup_cap = x;
        }
        if let Some(x) = self.chain_depth_cap {
            cfg.chain_depth_cap = x;
        }
        if let Some(x) = self.chain_visit_cap {
            cfg.chain_visit_cap = x;
        }
        if let Some(x) = self.tolerance {
            cfg.rank_witness_tolerance = x;
        }
        if let Some(n) = self.threads {
            cfg.parallelism = Parallelism::Threads(n);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

struct Loaded {
    name: String,
    group: Arc<FiniteGroup>,
}

fn load_group(spec: &str) -> anyhow::Result<Loaded> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(Loaded {
            name: name.to_string(),
            group: Arc::new(catalog::build(name)?),
        });
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Loaded {
        name: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| spec.to_string()),
        group: Arc::new(parse_group_json(&text)?),
    })
}

fn pair_set(common: &Common, loaded: &Loaded, cfg: &AnalysisConfig) -> anyhow::Result<PairSet> {
    let candidates = match &common.pairs_file {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(PairsFile::parse(&text)?.candidates(&loaded.group)?)
        }
        None => None,
    };
    Ok(complete_irredundant_set(&loaded.group, candidates.as_deref(), cfg)?)
}

struct Output {
    body: String,
    code: i32,
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn enum_str<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn pairs_tsv(pairs: &[PairReport]) -> String {
    let mut s = String::from("H\tK\t|H|\t|K|\t[H:K]\tstatus\tchain_indices\tk\n");
    for p in pairs {
        let idx = p
            .chain
            .as_ref()
            .map(|c| c.centralizer_indices.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .unwrap_or_default();
        s += &format!(
            "<{}>\t<{}>\t{}\t{}\t{}\t{}\t{}\t{}\n",
            p.h_generators.join(","),
            p.k_generators.join(","),
            p.h_order,
            p.k_order,
            p.index,
            enum_str(&p.status),
            idx,
            p.k
        );
    }
    s
}

fn run_command(cmd: Command) -> anyhow::Result<(Output, Option<PathBuf>)> {
    match cmd {
        Command::Catalog { export, out } => {
            let body = match export {
                Some(name) => json(&GroupSpec::cayley_of(&catalog::build(&name)?))?,
                None => catalog::catalog()
                    .iter()
                    .map(|e| format!("{}\t{}\n", e.name, e.order))
                    .collect(),
            };
            Ok((Output { body, code: EXIT_OK }, out))
        }
        Command::Oracle(c) => {
            let cfg = c.config()?;
            let l = load_group(&c.group)?;
            let s = GroupSummary::new(&l.name, &l.group);
            let report = OracleReport {
                meta: Meta::new(&cfg),
                group: l.name.clone(),
                real_classes: s.real_classes,
                rational_classes: s.rational_classes,
                oracle: rank_oracle(&l.group),
            };
            let body = match c.format {
                Format::Json => json(&report)?,
                Format::Tsv => format!("group\treal\trational\toracle\n{}\t{}\t{}\t{}\n", l.name, s.real_classes, s.rational_classes, report.oracle),
                Format::Text => format!("{}\n", report.oracle),
            };
            Ok((Output { body, code: EXIT_OK }, c.out))
        }
        Command::Pairs(c) => {
            let cfg = c.config()?;
            let l = load_group(&c.group)?;
            let set = pair_set(&c, &l, &cfg)?;
            let report = PairsReport::new(&l.name, &set, &cfg);
            let body = match c.format {
                Format::Json => json(&report)?,
                Format::Tsv | Format::Text => pairs_tsv(&report.pairs),
            };
            let code = if set.complete { EXIT_OK } else { EXIT_INCOMPLETE };
            Ok((Output { body, code }, c.out))
        }
        Command::Rank(c) => {
            let cfg = c.config()?;
            let l = load_group(&c.group)?;
            let set = pair_set(&c, &l, &cfg)?;
            let report = rank_total(&set)?;
            let body = match c.format {
                Format::Json => json(&RankOutput {
                    meta: Meta::new(&cfg),
                    group: l.name.clone(),
                    report,
                })?,
                Format::Tsv => rank_tsv(&report),
                Format::Text => rank_text(&report),
            };
            Ok((Output { body, code: EXIT_OK }, c.out))
        }
        Command::Analyze(c) => {
            let cfg = c.config()?;
            let l = load_group(&c.group)?;
            let set = pair_set(&c, &l, &cfg)?;
            let rank = if set.complete { Some(rank_total(&set)?) } else { None };
            let report = AnalysisReport {
                meta: Meta::new(&cfg),
                group: GroupSummary::new(&l.name, &l.group),
                complete: set.complete,
                pairs: set.pairs.iter().map(|p| PairReport::new(&l.group, p)).collect(),
                rank,
                oracle: rank_oracle(&l.group),
            };
            let body = match c.format {
                Format::Json => json(&report)?,
                Format::Tsv => pairs_tsv(&report.pairs),
                Format::Text => {
                    let mut s = format!(
                        "group {} of order {}: {} pairs, complete = {}\n",
                        l.name,
                        l.group.order(),
                        report.pairs.len(),
                        report.complete
                    );
                    match &report.rank {
                        Some(r) => s += &rank_text(r),
                        None => s += &format!("rank not available (class count gives {})\n", report.oracle),
                    }
                    s
                }
            };
            let code = if set.complete { EXIT_OK } else { EXIT_INCOMPLETE };
            Ok((Output { body, code }, c.out))
        }
        Command::Units {
            common: c,
            z,
            no_sweep,
            z_factor_cap,
            z_bits_cap,
        } => {
            let cfg = c.config()?;
            let l = load_group(&c.group)?;
            let set = pair_set(&c, &l, &cfg)?;
            let mut units: Vec<(zgunits::units::CentralUnit, Option<u64>)> = if no_sweep {
                Vec::new()
            } else {
                bass_sweep_central_units(&l.group)?.into_iter().map(|u| (u, None)).collect()
            };
            let mut skipped = Vec::new();
            if z {
                let limits = ZLimits {
                    factor_cap: z_factor_cap,
                    input_bits_cap: z_bits_cap,
                };
                for (i, p) in set.pairs.iter().enumerate() {
                    match z_unit_for_pair(&l.group, p, limits) {
                        Ok(ZAttempt::Built(u, n)) => units.push((u, Some(n))),
                        Ok(ZAttempt::Skipped(why)) => skipped.push(format!("pair {i}: {why}")),
                        Err(e) => skipped.push(format!("pair {i}: {e}")),
                    }
                }
            }
            let plain: Vec<_> = units.iter().map(|(u, _)| u.clone()).collect();
            let witness_rank = match log_rank_witness(&plain, &set, cfg.rank_witness_tolerance) {
                Ok(r) => Some(r),
                Err(Error::IncompleteSet) => None,
                Err(e) => return Err(e.into()),
            };
            let report = UnitsReport {
                meta: Meta::new(&cfg),
                group: l.name.clone(),
                units: units.iter().map(|(u, n)| UnitReport::new(u, *n, &set)).collect(),
                skipped,
                witness_rank,
                oracle: rank_oracle(&l.group),
            };
            let body = match c.format {
                Format::Json => json(&report)?,
                Format::Tsv | Format::Text => {
                    let mut s = String::from("provenance\tinputs\tn_b\tsupport\tcentral_unit\n");
                    for u in &report.units {
                        s += &format!(
                            "{}\t{}\t{}\t{}\t{}\n",
                            enum_str(&u.provenance),
                            u.inputs.join("; "),
                            u.n_b.map(|n| n.to_string()).unwrap_or_default(),
                            u.support_size,
                            u.central_unit
                        );
                    }
                    for why in &report.skipped {
                        s += &format!("skipped\t{why}\n");
                    }
                    s += &format!(
                        "witness_rank\t{}\noracle\t{}\n",
                        report.witness_rank.map(|r| r.to_string()).unwrap_or_else(|| "n/a".into()),
                        report.oracle
                    );
                    s
                }
            };
            let code = if set.complete { EXIT_OK } else { EXIT_INCOMPLETE };
            Ok((Output { body, code }, c.out))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_ERROR,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match run_command(cli.command) {
        Ok((out, path)) => {
            let written = match path {
                Some(p) => std::fs::write(&p, &out.body).map_err(|e| anyhow!("writing {}: {e}", p.display())),
                None => stdout.write_all(out.body.as_bytes()).map_err(Into::into),
            };
            match written {
                Ok(()) => {
                    if out.code == EXIT_INCOMPLETE {
                        let _ = writeln!(stderr, "warning: pair set is not complete");
                    }
                    out.code
                }
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e:#}");
                    EXIT_ERROR
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::IncompleteSet) => EXIT_INCOMPLETE,
                _ => EXIT_ERROR,
            }
        }
    }
}
