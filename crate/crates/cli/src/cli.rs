use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wil_core::aco::{AcoParams, CircleDecoder, MmasDeposit, RectDecoder, Variant};
use wil_core::oracle::{exhaustive_best_order_with, DEFAULT_LIMIT};

use crate::bench::{bench, format_table, write_json};
use crate::generate::{generate_instance, Range};
use crate::instance::{Instance, Items, Kind};
use crate::layout_file::LayoutFile;
use crate::run::{solve_instance, Rayon};
use crate::svg::render_svg;

#[derive(Debug, Parser)]
#[command(name = "wil", version, about = "Weighted circle and rectangle layout solver")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance file.
    Gen(GenArgs),
    /// Optimize the placement order with an ant colony.
    Solve(SolveArgs),
    /// Try every placement order (small instances only).
    Oracle(OracleArgs),
    /// Draw a layout file as SVG.
    Render(RenderArgs),
    /// Compare algorithms over a set of instances.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Circles,
    Rects,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgoArg {
    As,
    Mmas,
}

impl From<AlgoArg> for Variant {
    fn from(a: AlgoArg) -> Variant {
        match a {
            AlgoArg::As => Variant::As,
            AlgoArg::Mmas => Variant::Mmas,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DepositArg {
    GlobalBest,
    IterationBest,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    /// Radius (circles) or edge length (rects) range, `min,max`.
    #[arg(long, default_value = "1,10")]
    pub size: Range,
    /// Mass range, `min,max`.
    #[arg(long, default_value = "1,10")]
    pub mass: Range,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub name: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ColonyArgs {
    #[arg(long, default_value_t = 20)]
    pub ants: usize,
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Trail persistence per iteration.
    #[arg(long, default_value_t = 0.9)]
    pub rho: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    /// Which ant deposits in Max-Min runs.
    #[arg(long, value_enum, default_value = "global-best")]
    pub deposit: DepositArg,
}

impl ColonyArgs {
    pub fn params(&self, variant: Variant) -> AcoParams {
        AcoParams {
            variant,
            ants: self.ants,
            iterations: self.iters,
            alpha: self.alpha,
            beta: self.beta,
            rho: self.rho,
            seed: self.seed,
            mmas_deposit: match self.deposit {
                DepositArg::GlobalBest => MmasDeposit::GlobalBest,
                DepositArg::IterationBest => MmasDeposit::IterationBest,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "mmas")]
    pub algo: AlgoArg,
    #[command(flatten)]
    pub colony: ColonyArgs,
    /// Run report; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Best layout; defaults to `<out stem>.layout.json` next to the report.
    #[arg(long)]
    pub layout: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Largest item count accepted.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub limit: usize,
    /// Layout of the best order.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub layout: PathBuf,
    #[arg(long)]
    pub svg: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance files or directories of them; repeatable.
    #[arg(long)]
    pub instance: Vec<PathBuf>,
    /// Repeatable; default both.
    #[arg(long, value_enum)]
    pub algo: Vec<AlgoArg>,
    #[command(flatten)]
    pub colony: ColonyArgs,
    /// Reports as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().context("building thread pool")?;
    pool.install(|| match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Oracle(a) => oracle(a),
        Command::Render(a) => render(a),
        Command::Bench(a) => bench_cmd(a),
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn gen(a: GenArgs) -> Result<()> {
    let kind = match a.kind {
        KindArg::Circles => Kind::Circles,
        KindArg::Rects => Kind::Rects,
    };
    let mut inst = generate_instance(kind, a.n, a.size, a.mass, a.seed)?;
    if a.name.is_some() {
        inst.name = a.name;
    }
    match a.out {
        Some(p) => write(&p, &inst.to_string_pretty()),
        None => {
            print!("{}", inst.to_string_pretty());
            Ok(())
        }
    }
}

fn default_layout_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}.layout.json"))
}

fn solve(a: SolveArgs) -> Result<()> {
    let inst = Instance::load(&a.instance)?;
    let name = inst.display_name(&a.instance);
    let params = a.colony.params(a.algo.into());
    let outcome = solve_instance(&inst, &name, &params, a.colony.runs)?;
    let report = outcome.report.to_string_pretty();
    match &a.out {
        Some(p) => write(p, &report)?,
        None => print!("{report}"),
    }
    if let Some(p) = a.layout.clone().or_else(|| a.out.as_deref().map(default_layout_path)) {
        outcome.best_layout.write(&p)?;
    }
    if let Some(p) = &a.svg {
        write(p, &render_svg(&outcome.best_layout))?;
    }
    if a.out.is_some() {
        eprintln!(
            "{name}: {} x{} r_best {:.6} r_average {:.6} t_average {:.3}s",
            outcome.report.algorithm,
            outcome.report.runs,
            outcome.report.r_best,
            outcome.report.r_average,
            outcome.report.t_average
        );
    }
    Ok(())
}

fn oracle(a: OracleArgs) -> Result<()> {
    let inst = Instance::load(&a.instance)?;
    let name = Some(inst.display_name(&a.instance));
    let (envelope, order, evaluated, layout) = match &inst.items {
        Items::Circles(items) => {
            let r = exhaustive_best_order_with(&CircleDecoder(items), a.limit, false, &Rayon)?;
            let file = LayoutFile::from_circles(name, items, &r.best_layout);
            (r.best_envelope, r.best_order, r.orders_evaluated, file)
        }
        Items::Rects(items) => {
            let r = exhaustive_best_order_with(&RectDecoder(items), a.limit, false, &Rayon)?;
            let file = LayoutFile::from_rects(name, items, &r.best_layout);
            (r.best_envelope, r.best_order, r.orders_evaluated, file)
        }
    };
    let ids: Vec<String> = order.iter().map(|i| (i + 1).to_string()).collect();
    println!("best_envelope {envelope:.10}");
    println!("best_order {}", ids.join(" "));
    println!("orders_evaluated {evaluated}");
    if let Some(p) = &a.out {
        layout.write(p)?;
    }
    if let Some(p) = &a.svg {
        write(p, &render_svg(&layout))?;
    }
    Ok(())
}

fn render(a: RenderArgs) -> Result<()> {
    let layout = LayoutFile::load(&a.layout)?;
    layout.decode()?;
    write(&a.svg, &render_svg(&layout))
}

fn bench_cmd(a: BenchArgs) -> Result<()> {
    let algos: Vec<Variant> = if a.algo.is_empty() {
        vec![Variant::Mmas, Variant::As]
    } else {
        a.algo.iter().map(|&x| x.into()).collect()
    };
    let reports = bench(&a.instance, &algos, &a.colony.params(Variant::Mmas), a.colony.runs)?;
    print!("{}", format_table(&reports));
    if let Some(p) = &a.out {
        write_json(&reports, p)?;
    }
    Ok(())
}
