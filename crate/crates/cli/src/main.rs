//! `pcat` — command-line front end for the partition-category toolkit.

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use config::{ConfigLayer, Format, RunConfig};
use pcat_core::category::{CategoryFile, Engine, TruncatedCategory};
use pcat_core::lattice::{classify_pool, slice_check, verify_cube, PoolEntry};
use pcat_core::linreal::{hom_family, uniformity_check};
use pcat_core::partition::{
    enumerate_partitions, ColorWord, ColoredPartition, PartitionFilter,
};

/// Multiplier applied to the configured budget for the Hom-space fixpoint,
/// whose unit of work (one sparse product) is much lighter than a closure
/// rule application.
const HOM_BUDGET_SCALE: u64 = 50;

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "pcat",
    version,
    about = "Diagram algebra and verification toolkit for categories of two-colored partitions"
)]
struct Cli {
    /// Degree bound (max total legs of members)
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Saturation bound (max total legs of explored diagrams)
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Ambient dimension N for linear checks
    #[arg(long, global = true)]
    ambient: Option<usize>,
    /// Work budget for saturation
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Output format: text or json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Directory for the on-disk closure cache
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Config file (key=value lines); defaults to ./pcat.conf when present
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate partitions of a word pair in canonical order
    Enumerate {
        /// Upper word over {w,b}
        #[arg(long, default_value = "")]
        up: String,
        /// Lower word over {w,b}
        #[arg(long, default_value = "")]
        down: String,
        /// Predicate filter (even, pairing, noncrossing, matching,
        /// nc-pairing, matching-nc-pairing, or a vertex name)
        #[arg(long)]
        filter: Option<String>,
    },
    /// Saturate the category generated by a generators file
    Closure {
        /// JSON file with {"generators": ["[w|w] {u1 d1}", ...]}
        #[arg(long)]
        gen: PathBuf,
        /// Output category file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the intersection/generation property of the vertex cube
    VerifyCube,
    /// Full slicing report for a category
    Slice {
        /// Category file to check
        #[arg(long)]
        category: Option<PathBuf>,
        /// Generators file (saturated first)
        #[arg(long)]
        gen: Option<PathBuf>,
    },
    /// Uniformity verdict at (ambient, degree)
    Uniformity {
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        gen: Option<PathBuf>,
    },
    /// Classify a pool of category files
    Classify {
        /// Directory of category .json files
        #[arg(long)]
        pool: PathBuf,
    },
    /// Hom-space dimensions of a category at the ambient dimension
    HomDim {
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        gen: Option<PathBuf>,
        /// Write the reduced rational bases to this file
        #[arg(long)]
        dump_bases: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("pcat: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run() -> Result<u8, CliError> {
    let cli = Cli::parse();
    let format = match &cli.format {
        Some(f) => Some(f.parse::<Format>().map_err(CliError::usage)?),
        None => None,
    };
    let cfg = RunConfig::resolve(
        ConfigLayer {
            degree: cli.degree,
            bound: cli.bound,
            ambient: cli.ambient,
            budget: cli.budget,
            format,
            cache_dir: cli.cache_dir.clone(),
        },
        cli.config.as_deref(),
    )?;
    let engine = Engine::new(cfg.budget).with_cache_dir(cfg.cache_dir.clone());
    match &cli.command {
        Command::Enumerate { up, down, filter } => cmd_enumerate(&cfg, up, down, filter.as_deref()),
        Command::Closure { gen, out } => cmd_closure(&cfg, &engine, gen, out.as_deref()),
        Command::VerifyCube => cmd_verify_cube(&cfg, &engine),
        Command::Slice { category, gen } => {
            cmd_slice(&cfg, &engine, category.as_deref(), gen.as_deref())
        }
        Command::Uniformity { category, gen } => {
            cmd_uniformity(&cfg, &engine, category.as_deref(), gen.as_deref())
        }
        Command::Classify { pool } => cmd_classify(&cfg, &engine, pool),
        Command::HomDim {
            category,
            gen,
            dump_bases,
        } => cmd_hom_dim(&cfg, &engine, category.as_deref(), gen.as_deref(), dump_bases.as_deref()),
    }
}

fn report_exit(fail: usize, inconclusive: usize) -> u8 {
    if fail > 0 {
        1
    } else if inconclusive > 0 {
        3
    } else {
        0
    }
}

fn cmd_enumerate(
    cfg: &RunConfig,
    up: &str,
    down: &str,
    filter: Option<&str>,
) -> Result<u8, CliError> {
    let up: ColorWord = up.parse()?;
    let down: ColorWord = down.parse()?;
    let filter = match filter {
        Some(f) => Some(f.parse::<PartitionFilter>()?),
        None => None,
    };
    let bound = pcat_core::DEFAULT_ENUM_BOUND.max(cfg.degree);
    let partitions = enumerate_partitions(&up, &down, filter, bound)?;
    match cfg.format {
        Format::Text => {
            for p in &partitions {
                println!("{p}  {}", p.flags().names().join(","));
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = partitions
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "text": p.to_string(),
                        "flags": p.flags().names(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "report": "enumeration",
                "engine_version": pcat_core::ENGINE_VERSION,
                "up": up.to_string(),
                "down": down.to_string(),
                "count": items.len(),
                "partitions": items,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(0)
}

#[derive(Deserialize)]
struct GeneratorsFile {
    generators: Vec<String>,
}

fn read_generators(path: &Path) -> Result<Vec<ColoredPartition>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path:?}: {e}")))?;
    let parsed: GeneratorsFile = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("bad generators file {path:?}: {e}")))?;
    let mut out = Vec::with_capacity(parsed.generators.len());
    for g in &parsed.generators {
        out.push(
            g.parse::<ColoredPartition>()
                .map_err(|e| CliError::usage(format!("bad generator {g:?}: {e}")))?,
        );
    }
    Ok(out)
}

fn file_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "category".to_string())
}

/// Loads a category from `--category` or saturates one from `--gen`; the
/// closure degree is raised to fit the generators and the requested degree.
fn load_category(
    cfg: &RunConfig,
    engine: &Engine,
    category: Option<&Path>,
    gen: Option<&Path>,
    min_degree: usize,
) -> Result<Arc<TruncatedCategory>, CliError> {
    match (category, gen) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {path:?}: {e}")))?;
            let cat = CategoryFile::from_json(&text)?.into_category()?;
            Ok(Arc::new(cat))
        }
        (None, Some(path)) => {
            let generators = read_generators(path)?;
            let gen_legs = generators.iter().map(|g| g.total_legs()).max().unwrap_or(0);
            let degree = min_degree.max(gen_legs);
            let bound = cfg.bound_for(degree);
            Ok(engine.generate(&file_label(path), &generators, degree, bound)?)
        }
        _ => Err(CliError::usage(
            "exactly one of --category or --gen is required",
        )),
    }
}

fn cmd_closure(
    cfg: &RunConfig,
    engine: &Engine,
    gen: &Path,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let generators = read_generators(gen)?;
    let bound = cfg.bound_for(cfg.degree);
    let cat = engine.generate(&file_label(gen), &generators, cfg.degree, bound)?;
    let file = CategoryFile::from_category(&cat);
    let json = file.to_json();
    match out {
        Some(path) => std::fs::write(path, &json)
            .map_err(|e| CliError::usage(format!("cannot write {path:?}: {e}")))?,
        None => println!("{json}"),
    }
    Ok(if cat.stable() { 0 } else { 3 })
}

fn cmd_verify_cube(cfg: &RunConfig, engine: &Engine) -> Result<u8, CliError> {
    let report = verify_cube(engine, cfg.degree, cfg.bound_for(cfg.degree))?;
    match cfg.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(report_exit(report.summary.fail, report.summary.inconclusive))
}

fn cmd_slice(
    cfg: &RunConfig,
    engine: &Engine,
    category: Option<&Path>,
    gen: Option<&Path>,
) -> Result<u8, CliError> {
    let cat = load_category(cfg, engine, category, gen, cfg.degree)?;
    let report = slice_check(engine, &cat, cfg.bound_for(cat.degree()), None)?;
    match cfg.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(report_exit(report.summary.fail, report.summary.inconclusive))
}

fn cmd_uniformity(
    cfg: &RunConfig,
    engine: &Engine,
    category: Option<&Path>,
    gen: Option<&Path>,
) -> Result<u8, CliError> {
    if cfg.ambient < 2 {
        return Err(CliError::usage("uniformity needs --ambient >= 2"));
    }
    let cat = load_category(cfg, engine, category, gen, cfg.degree)?;
    let degree = cfg.degree.min(cat.degree());
    let report = uniformity_check(
        &cat,
        cfg.ambient,
        degree,
        cfg.budget.saturating_mul(HOM_BUDGET_SCALE),
    );
    match cfg.format {
        Format::Text => {
            println!(
                "pcat {} report=uniformity subject={} degree={} bound={} budget={} ambient={}",
                pcat_core::ENGINE_VERSION,
                report.subject,
                degree,
                cfg.bound_for(cat.degree()),
                cfg.budget,
                cfg.ambient
            );
            match (report.uniform, &report.witness) {
                (Some(true), _) => println!("PASS uniform at ({}, {degree})", cfg.ambient),
                (Some(false), Some(w)) => println!(
                    "FAIL not uniform at ({}, {degree}) witness=({},{}) dims {} vs {}",
                    cfg.ambient, w.up, w.down, w.compressed_dim, w.expected_dim
                ),
                (Some(false), None) => {
                    println!("FAIL not uniform at ({}, {degree})", cfg.ambient)
                }
                (None, _) => println!("INCONCLUSIVE saturation budget exhausted"),
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "report": "uniformity",
                "engine_version": pcat_core::ENGINE_VERSION,
                "subject": report.subject,
                "parameters": {
                    "degree": degree,
                    "bound": cfg.bound_for(cat.degree()),
                    "budget": cfg.budget,
                    "ambient": cfg.ambient,
                },
                "uniform": report.uniform,
                "witness": report.witness,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(match report.uniform {
        Some(true) => 0,
        Some(false) => 1,
        None => 3,
    })
}

fn cmd_classify(cfg: &RunConfig, engine: &Engine, pool_dir: &Path) -> Result<u8, CliError> {
    if cfg.ambient < 2 {
        return Err(CliError::usage("classification needs --ambient >= 2"));
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(pool_dir)
        .map_err(|e| CliError::usage(format!("cannot read pool dir {pool_dir:?}: {e}")))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::usage(format!(
            "pool dir {pool_dir:?} has no .json category files"
        )));
    }
    let mut pool = Vec::with_capacity(paths.len());
    let mut degree = None;
    for path in &paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {path:?}: {e}")))?;
        let file = CategoryFile::from_json(&text)
            .map_err(|e| CliError::usage(format!("bad category file {path:?}: {e}")))?;
        let label = if file.label.is_empty() {
            file_label(path)
        } else {
            file.label.clone()
        };
        let cat = file.into_category()?;
        match degree {
            None => degree = Some(cat.degree()),
            Some(d) if d == cat.degree() => {}
            Some(d) => {
                return Err(CliError::usage(format!(
                    "pool degrees disagree: {d} vs {} in {path:?}",
                    cat.degree()
                )))
            }
        }
        pool.push(PoolEntry::new(label, Arc::new(cat)));
    }
    let d = degree.expect("nonempty pool");
    let report = classify_pool(
        engine,
        &pool,
        cfg.ambient,
        cfg.bound_for(d),
        4.min(d),
        cfg.budget.saturating_mul(HOM_BUDGET_SCALE),
    )?;
    match cfg.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    let rejected = report
        .candidates
        .iter()
        .filter(|c| c.verdict == pcat_core::lattice::Verdict::Rejected)
        .count();
    let inconclusive = report
        .candidates
        .iter()
        .filter(|c| c.verdict == pcat_core::lattice::Verdict::Inconclusive)
        .count();
    Ok(report_exit(rejected, inconclusive))
}

fn cmd_hom_dim(
    cfg: &RunConfig,
    engine: &Engine,
    category: Option<&Path>,
    gen: Option<&Path>,
    dump_bases: Option<&Path>,
) -> Result<u8, CliError> {
    let cat = load_category(cfg, engine, category, gen, cfg.degree)?;
    let degree = cfg.degree.min(cat.degree());
    let family = hom_family(&cat, cfg.ambient, degree);
    let mut keys: Vec<(ColorWord, ColorWord)> =
        family.spaces().map(|(k, _)| k.clone()).collect();
    keys.sort_by(pcat_core::linreal::word_pair_scan_order);
    match cfg.format {
        Format::Text => {
            println!(
                "pcat {} report=hom-dims subject={} degree={degree} ambient={}",
                pcat_core::ENGINE_VERSION,
                cat.label(),
                cfg.ambient
            );
            for (up, down) in &keys {
                println!("up={up} down={down} dim={}", family.dim_at(up, down));
            }
        }
        Format::Json => {
            let spaces: Vec<serde_json::Value> = keys
                .iter()
                .map(|(up, down)| {
                    serde_json::json!({
                        "up": up.to_string(),
                        "down": down.to_string(),
                        "dim": family.dim_at(up, down),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "report": "hom-dims",
                "engine_version": pcat_core::ENGINE_VERSION,
                "subject": cat.label(),
                "degree": degree,
                "ambient": cfg.ambient,
                "spaces": spaces,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    if let Some(path) = dump_bases {
        let spaces: Vec<serde_json::Value> = keys
            .iter()
            .map(|(up, down)| {
                let length = (cfg.ambient as u64).pow((up.len() + down.len()) as u32);
                let basis = family
                    .basis_at(up, down)
                    .map(|b| b.rational_rref(length))
                    .unwrap_or_default();
                let rows: Vec<Vec<String>> = basis
                    .iter()
                    .map(|row| row.iter().map(|q| q.to_string()).collect())
                    .collect();
                serde_json::json!({
                    "word_pair": [up.to_string(), down.to_string()],
                    "ambient": cfg.ambient,
                    "basis": rows,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "report": "hom-bases",
            "engine_version": pcat_core::ENGINE_VERSION,
            "subject": cat.label(),
            "degree": degree,
            "ambient": cfg.ambient,
            "spaces": spaces,
        });
        std::fs::write(path, serde_json::to_string_pretty(&doc).expect("json"))
            .map_err(|e| CliError::usage(format!("cannot write {path:?}: {e}")))?;
    }
    Ok(0)
}
