use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use sts_bench::plan::{BenchmarkPlan, DatasetSpec, LoadedPlan, MeasureSpec};
use sts_bench::{
    error_analysis_task, execute, resolve_threads, significance_task, throughput, with_pool, write_outputs, Report,
};
use sts_core::data::read_raw_scores;
use sts_core::preprocess::{config_grid, CharFilter, GridDimensions, NerMode, StopWords, TokenizerMode};
use sts_core::{MeasureId, PreprocessConfig};

#[derive(Parser)]
#[command(
    name = "stsbench",
    version,
    about = "Benchmark sentence similarity measures on STS datasets"
)]
struct Cli {
    /// More log output (repeat for debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score measures on datasets and write raw scores plus correlation reports
    Run(PlanArgs),
    /// Run every measure over a preprocessing grid and pick the best configuration
    Grid {
        #[command(flatten)]
        plan: PlanArgs,
        /// `full`, or `key=v1|v2;...` over ner, tokenizer, lowercase, char-filter, stopwords
        #[arg(long, default_value = "full")]
        grid: String,
    },
    /// Pairwise one-sided paired t-tests on per-split harmonic scores
    Significance {
        #[command(flatten)]
        plan: PlanArgs,
        /// Split a dataset into contiguous parts, e.g. `MedSTS:10`
        #[arg(long = "split", value_name = "NAME:K")]
        splits: Vec<String>,
    },
    /// Per-pair similarity errors, their density and the extreme pairs
    ErrorAnalysis {
        #[command(flatten)]
        plan: PlanArgs,
        /// Analyse an existing raw-score CSV instead of scoring
        #[arg(long)]
        raw: Option<PathBuf>,
    },
    /// Pairs per second, median over sequential repeats, preprocessing included
    Throughput {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
    /// Check a plan and load every resource it names without scoring
    Validate(PlanArgs),
}

#[derive(Args, Clone)]
struct PlanArgs {
    /// Plan file; ad-hoc dataset and measure flags are then not allowed
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Dataset TSV as `[NAME=]PATH`; NAME defaults to the file stem
    #[arg(long = "dataset", value_name = "[NAME=]PATH")]
    datasets: Vec<String>,
    /// Annotation sidecar as `[NAME=]PATH`; NAME may be omitted with a single dataset
    #[arg(long = "annotations", value_name = "[NAME=]PATH")]
    annotations: Vec<String>,
    /// Measure id: qgram, jaccard, block, liblock, levenshtein, overlap, wbsm-rada,
    /// wbsm-jc, ubsm-rada, ubsm-jc, com, swem:{mean,min,max,sum}
    #[arg(long = "measure", value_name = "ID")]
    measures: Vec<MeasureId>,
    /// Full configuration string; the single-stage flags below override its fields
    #[arg(long)]
    config: Option<PreprocessConfig>,
    #[arg(long)]
    ner: Option<NerMode>,
    #[arg(long)]
    tokenizer: Option<TokenizerMode>,
    /// yes or no
    #[arg(long, value_parser = parse_yes_no)]
    lowercase: Option<bool>,
    #[arg(long = "char-filter")]
    char_filter: Option<CharFilter>,
    #[arg(long)]
    stopwords: Option<StopWords>,
    /// Configuration of the word-level half of COM (default: same with ner=none)
    #[arg(long = "wbsm-config")]
    wbsm_config: Option<PreprocessConfig>,
    #[arg(long)]
    vectors: Option<PathBuf>,
    #[arg(long)]
    taxonomy: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Directory with charfilters/NAME.txt and stopwords/NAME.txt overrides
    #[arg(long)]
    resources: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_yes_no(s: &str) -> Result<bool, String> {
    match s.to_ascii_lowercase().as_str() {
        "yes" | "true" | "on" | "1" => Ok(true),
        "no" | "false" | "off" | "0" => Ok(false),
        _ => Err(format!("expected yes or no, found `{s}`")),
    }
}

fn split_named(arg: &str) -> (Option<String>, PathBuf) {
    match arg.split_once('=') {
        Some((n, p)) if !n.is_empty() && !n.contains(['/', '\\']) => (Some(n.to_string()), PathBuf::from(p)),
        _ => (None, PathBuf::from(arg)),
    }
}

impl PlanArgs {
    fn adhoc_given(&self) -> bool {
        !self.datasets.is_empty() || !self.measures.is_empty() || !self.annotations.is_empty()
    }

    fn single_config(&self) -> PreprocessConfig {
        let mut c = self.config.unwrap_or_default();
        if let Some(v) = self.ner {
            c.ner = v;
        }
        if let Some(v) = self.tokenizer {
            c.tokenizer = v;
        }
        if let Some(v) = self.lowercase {
            c.lowercase = v;
        }
        if let Some(v) = self.char_filter {
            c.char_filter = v;
        }
        if let Some(v) = self.stopwords {
            c.stopwords = v;
        }
        c
    }

    fn build(&self) -> Result<BenchmarkPlan> {
        let mut plan = match &self.plan {
            Some(p) => {
                if self.adhoc_given() {
                    bail!("--plan cannot be combined with --dataset, --annotations or --measure");
                }
                BenchmarkPlan::load(p).with_context(|| format!("reading plan {}", p.display()))?
            }
            None => self.adhoc_plan()?,
        };
        if let Some(o) = &self.out {
            plan.out = o.clone();
        }
        if self.threads.is_some() {
            plan.threads = self.threads;
        }
        for (slot, flag) in [
            (&mut plan.vectors, &self.vectors),
            (&mut plan.taxonomy, &self.taxonomy),
            (&mut plan.lexicon, &self.lexicon),
            (&mut plan.resources, &self.resources),
        ] {
            if flag.is_some() {
                *slot = flag.clone();
            }
        }
        Ok(plan)
    }

    fn adhoc_plan(&self) -> Result<BenchmarkPlan> {
        if self.datasets.is_empty() {
            bail!("give --plan or at least one --dataset");
        }
        if self.measures.is_empty() {
            bail!("give --plan or at least one --measure");
        }
        let mut datasets: Vec<DatasetSpec> = Vec::new();
        for d in &self.datasets {
            let (name, path) = split_named(d);
            let name = name.unwrap_or_else(|| {
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "dataset".into())
            });
            if datasets.iter().any(|x| x.name == name) {
                bail!("dataset `{name}` given twice");
            }
            datasets.push(DatasetSpec {
                name,
                path,
                annotations: None,
            });
        }
        for a in &self.annotations {
            let (name, path) = split_named(a);
            let target = match name {
                Some(n) => datasets.iter_mut().find(|d| d.name == n),
                None if datasets.len() == 1 => datasets.first_mut(),
                None => bail!("with several datasets, give --annotations as NAME=PATH"),
            };
            let Some(target) = target else {
                bail!("--annotations names an unknown dataset in `{a}`");
            };
            target.annotations = Some(path);
        }
        let cfg = self.single_config();
        let mut measures: Vec<MeasureSpec> = Vec::new();
        for id in &self.measures {
            if measures.iter().any(|m| m.id == *id) {
                bail!("measure `{id}` given twice");
            }
            let mut spec = MeasureSpec::new(*id, vec![cfg]);
            spec.wbsm_config = self.wbsm_config;
            measures.push(spec);
        }
        Ok(BenchmarkPlan {
            datasets,
            measures,
            out: PathBuf::from("results"),
            ..Default::default()
        })
    }
}

fn load(plan: &BenchmarkPlan) -> Result<LoadedPlan> {
    plan.validate().context("plan validation failed")
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_run(plan: BenchmarkPlan) -> Result<ExitCode> {
    let loaded = load(&plan)?;
    let threads = resolve_threads(plan.threads);
    log::info!("running on {threads} thread(s)");
    let records = with_pool(threads, || execute(&loaded))??;
    let report = Report::new(
        loaded.datasets.iter().map(|d| d.name.clone()).collect(),
        plan.measures.clone(),
        &records,
    );
    write_outputs(&plan.out, &report, &records)?;
    print!("{}", report.text_table());
    println!("outputs written to {}", plan.out.display());
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} run(s) failed; see failures.csv", report.failures.len());
        Ok(ExitCode::from(2))
    }
}

fn cmd_significance(plan: BenchmarkPlan, splits: &[String]) -> Result<ExitCode> {
    let mut parsed = BTreeMap::new();
    for s in splits {
        let (name, k) = s
            .rsplit_once(':')
            .with_context(|| format!("--split expects NAME:K, found `{s}`"))?;
        let k: usize = k.parse().with_context(|| format!("bad part count in `{s}`"))?;
        parsed.insert(name.to_string(), k);
    }
    let loaded = load(&plan)?;
    let outcome = with_pool(resolve_threads(plan.threads), || significance_task(&loaded, &parsed))??;
    write_file(&plan.out.join("split_scores.csv"), &outcome.scores_csv())?;
    write_file(&plan.out.join("significance.csv"), &outcome.matrix.to_csv())?;
    println!("one-sided p-values, row outperforms column (* = constant differences)");
    print!("{}", outcome.matrix.to_csv());
    Ok(ExitCode::SUCCESS)
}

fn cmd_error_analysis(plan: BenchmarkPlan, raw: Option<PathBuf>) -> Result<ExitCode> {
    let loaded = load(&plan)?;
    if loaded.datasets.len() != 1 {
        bail!("error-analysis takes exactly one dataset");
    }
    let d = &loaded.datasets[0];
    let run = match raw {
        Some(path) => read_raw_scores(&path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            if plan.measures.len() != 1 || plan.measures[0].configs.len() != 1 {
                bail!("error-analysis takes exactly one measure and configuration");
            }
            let records = with_pool(resolve_threads(plan.threads), || execute(&loaded))??;
            match records.into_iter().next().map(|r| r.outcome) {
                Some(Ok(ok)) => ok.run,
                Some(Err(f)) => bail!(
                    "scoring failed{}: {}",
                    f.pair_index.map(|i| format!(" at pair {i}")).unwrap_or_default(),
                    f.message
                ),
                None => bail!("nothing was scored"),
            }
        }
    };
    let rep = error_analysis_task(&run, d, &plan.out)?;
    print!("{}", fs::read_to_string(&rep.extremes)?);
    println!(
        "\nwrote {}, {}, {}",
        rep.errors_csv.display(),
        rep.kde_csv.display(),
        rep.extremes.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_throughput(plan: BenchmarkPlan, repeats: usize) -> Result<ExitCode> {
    let loaded = load(&plan)?;
    println!("{:<12} {:<16} {:>8} {:>14}", "measure", "dataset", "pairs", "pairs/sec");
    for d in &loaded.datasets {
        for spec in &plan.measures {
            let scorer = loaded.ctx.scorer(spec.id).map_err(anyhow::Error::msg)?;
            for cfg in &spec.configs {
                let t = throughput(&scorer, *cfg, spec.secondary_for(cfg), d, &loaded.ctx.lists, repeats)?;
                println!(
                    "{:<12} {:<16} {:>8} {:>14.1}",
                    spec.id.to_string(),
                    d.name,
                    d.len(),
                    t.pairs_per_sec
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(plan: BenchmarkPlan) -> Result<ExitCode> {
    let loaded = load(&plan)?;
    let runs: usize = plan.measures.iter().map(|m| m.configs.len()).sum::<usize>() * loaded.datasets.len();
    for d in &loaded.datasets {
        let norm = d
            .normalized_from
            .map(|(lo, hi)| format!(", scores normalized from [{lo}, {hi}]"))
            .unwrap_or_default();
        println!("dataset {}: {} pairs{norm}", d.name, d.len());
    }
    for m in &plan.measures {
        println!("measure {}: {} configuration(s)", m.id, m.configs.len());
    }
    println!("plan OK: {runs} run(s), output to {}", plan.out.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // default of warn, raised by -v and overridable through RUST_LOG
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match cli.command {
        Command::Run(args) => args.build().and_then(cmd_run),
        Command::Grid { plan, grid } => plan.build().and_then(|mut p| {
            let dims: GridDimensions = grid.parse().map_err(anyhow::Error::msg)?;
            let configs = config_grid(&dims)?;
            for m in &mut p.measures {
                m.configs = configs.clone();
            }
            cmd_run(p)
        }),
        Command::Significance { plan, splits } => plan.build().and_then(|p| cmd_significance(p, &splits)),
        Command::ErrorAnalysis { plan, raw } => plan.build().and_then(|p| cmd_error_analysis(p, raw)),
        Command::Throughput { plan, repeats } => plan.build().and_then(|p| cmd_throughput(p, repeats)),
        Command::Validate(args) => args.build().and_then(cmd_validate),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
