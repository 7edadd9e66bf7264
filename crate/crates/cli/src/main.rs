use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use emtower::intlin::{cokernel, parse_matrix, smith_normal_form};
use emtower::replication::{
    reference_kz3, reference_kz4, run_replication, FiberVariant, ReplicationCase,
};
use emtower::tower::{circle_cohomology, solve_tower, Status, TowerResult, TowerSolution};
use emtower::towerfile;
use emtower::uct::GradedGroups;

#[derive(Parser)]
#[command(
    name = "emtower",
    version,
    about = "Integral cohomology of K(Z, n) from the path-loop spectral sequence"
)]
struct Cli {
    /// Where computed towers are cached.
    #[arg(
        long,
        global = true,
        env = "EMTOWER_CACHE_DIR",
        default_value = "cache"
    )]
    cache_dir: PathBuf,
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct TowerArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    max_degree: usize,
    /// TowerFileV1 for K(Z, n-1); replaces the recursive computation.
    #[arg(long, conflicts_with = "fiber_variant")]
    fiber: Option<PathBuf>,
    /// Where the fiber table comes from.
    #[arg(long, value_enum, default_value_t = FiberSource::Engine)]
    fiber_variant: FiberSource,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H^*(K(Z, n); Z) through --max-degree.
    Compute {
        #[command(flatten)]
        tower: TowerArgs,
        /// Write the TowerFileV1 here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the r-th page of the spectral sequence for K(Z, n).
    Page {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long = "page")]
        r: usize,
    },
    /// Compare engine output against the reference K(Z,4) and K(Z,5) tables.
    Replicate {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Smith normal form of an integer matrix (`a b; c d`, inline or a file).
    Snf {
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FiberSource {
    /// Recursively computed lower towers.
    Engine,
    /// Built-in K(Z,3) table (n = 4 only).
    Reference,
    /// Built-in K(Z,4) table, corollary reading (n = 5 only).
    Corollary,
    /// Built-in K(Z,4) table, fiber-list reading (n = 5 only).
    FiberList,
}

impl FiberSource {
    fn name(self) -> &'static str {
        match self {
            FiberSource::Engine => "engine",
            FiberSource::Reference => "reference",
            FiberSource::Corollary => "corollary",
            FiberSource::FiberList => "fiber-list",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Kz4,
    Kz5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Ctx {
    cache_dir: PathBuf,
    quiet: bool,
}

impl Ctx {
    fn log(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let ctx = Ctx {
        cache_dir: cli.cache_dir,
        quiet: cli.quiet,
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<u8> {
    match command {
        Command::Compute { tower, out } => {
            let result = if tower.fiber.is_none() && tower.fiber_variant == FiberSource::Engine {
                cached_tower(ctx, tower.n, tower.max_degree)?
            } else {
                solve(ctx, &tower)?.result
            };
            if let Some(path) = out {
                write_atomic(&path, &towerfile::to_json(&result))?;
            }
            print!("{}", render_result(&result));
            Ok(exit_code(&result))
        }
        Command::Page { tower, r } => {
            let solution = solve(ctx, &tower)?;
            let Some(page) = solution.page(r) else {
                bail!(
                    "page {r} not available (pages 2..={} for max degree {})",
                    solution.pages.len() + 1,
                    tower.max_degree
                );
            };
            print!("{}", page.render());
            Ok(0)
        }
        Command::Replicate { case, format } => {
            let case = match case {
                CaseArg::Kz4 => ReplicationCase::Kz4,
                CaseArg::Kz5 => ReplicationCase::Kz5,
            };
            let report = run_replication(case);
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            Ok(0)
        }
        Command::Snf { matrix } => {
            let text = if Path::new(&matrix).is_file() {
                fs::read_to_string(&matrix).with_context(|| format!("reading {matrix}"))?
            } else {
                matrix
            };
            let m = parse_matrix(&text)?;
            let snf = smith_normal_form(&m);
            let mut out = std::io::stdout().lock();
            writeln!(out, "U = {}", snf.u)?;
            writeln!(out, "D = {}", snf.d)?;
            writeln!(out, "V = {}", snf.v)?;
            writeln!(out, "cokernel = {}", cokernel(&m))?;
            Ok(0)
        }
    }
}

/// Worst status wins: Inconsistent > Ambiguous/Underdetermined > Determined.
fn exit_code(result: &TowerResult) -> u8 {
    if result.any_inconsistent() {
        3
    } else if result.all_determined() {
        0
    } else {
        2
    }
}

fn render_result(result: &TowerResult) -> String {
    let mut s = format!(
        "H^*(K(Z,{}); Z) through degree {}\n",
        result.n, result.reliable_up_to
    );
    for r in &result.degrees {
        let group = match &r.status {
            Status::Determined(_) | Status::Ambiguous(_) => r.status.to_string(),
            _ => "?".into(),
        };
        s.push_str(&format!(
            "{:>4}  {:<16} {:<20} {}\n",
            r.degree,
            r.status.name(),
            group,
            r.trace
        ));
    }
    s
}

fn fiber_for(ctx: &Ctx, args: &TowerArgs) -> Result<GradedGroups> {
    if let Some(path) = &args.fiber {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = towerfile::from_json(&text).with_context(|| format!("in {}", path.display()))?;
        if file.n + 1 != args.n {
            bail!(
                "{} describes K(Z,{}), expected K(Z,{})",
                path.display(),
                file.n,
                args.n - 1
            );
        }
        return Ok(file.determined_prefix());
    }
    match (args.fiber_variant, args.n) {
        (FiberSource::Engine, _) => engine_fiber(ctx, args.n, args.max_degree),
        (FiberSource::Reference, 4) => Ok(reference_kz3()),
        (FiberSource::Corollary, 5) => Ok(reference_kz4(FiberVariant::Corollary)),
        (FiberSource::FiberList, 5) => Ok(reference_kz4(FiberVariant::FiberList)),
        (v, n) => bail!("fiber variant {} is not available for n = {n}", v.name()),
    }
}

fn solve(ctx: &Ctx, args: &TowerArgs) -> Result<TowerSolution> {
    if args.n == 0 {
        bail!("n must be at least 1");
    }
    let fiber = fiber_for(ctx, args)?;
    ctx.log(&format!(
        "computing K(Z,{}) through degree {} (fiber: {})",
        args.n,
        args.max_degree,
        if args.fiber.is_some() {
            "file"
        } else {
            args.fiber_variant.name()
        }
    ));
    Ok(solve_tower(args.n, args.max_degree, &fiber)?)
}

/// Fiber of K(Z, n): the circle for n = 1, 2; otherwise the determined prefix
/// of the cached or freshly computed K(Z, n-1).
fn engine_fiber(ctx: &Ctx, n: usize, max_degree: usize) -> Result<GradedGroups> {
    if n <= 2 {
        return Ok(circle_cohomology());
    }
    Ok(cached_tower(ctx, n - 1, max_degree)?.determined_prefix())
}

fn cached_tower(ctx: &Ctx, n: usize, max_degree: usize) -> Result<TowerResult> {
    if n == 0 {
        bail!("n must be at least 1");
    }
    let data = ctx.cache_dir.join(format!("k_z_{n}.json"));
    let meta = ctx.cache_dir.join(format!("k_z_{n}.meta.json"));
    let key = serde_json::json!({
        "n": n,
        "max_degree": max_degree,
        "fiber_variant": "engine",
        "format_version": towerfile::FORMAT_VERSION,
    });
    if let Some(hit) = read_cache(&data, &meta, &key) {
        ctx.log(&format!(
            "cache hit: K(Z,{n}) through degree {max_degree} from {}",
            data.display()
        ));
        return Ok(hit);
    }
    let fiber = engine_fiber(ctx, n, max_degree)?;
    ctx.log(&format!(
        "computing K(Z,{n}) through degree {max_degree} (fiber: engine)"
    ));
    let result = solve_tower(n, max_degree, &fiber)?.result;
    fs::create_dir_all(&ctx.cache_dir)
        .with_context(|| format!("creating cache directory {}", ctx.cache_dir.display()))?;
    write_atomic(&data, &towerfile::to_json(&result))?;
    let sidecar = serde_json::json!({
        "key": key,
        "generator": concat!("emtower ", env!("CARGO_PKG_VERSION")),
    });
    write_atomic(&meta, &format!("{:#}\n", sidecar))?;
    Ok(result)
}

fn read_cache(data: &Path, meta: &Path, key: &serde_json::Value) -> Option<TowerResult> {
    let sidecar: serde_json::Value = serde_json::from_str(&fs::read_to_string(meta).ok()?).ok()?;
    if sidecar.get("key") != Some(key) {
        return None;
    }
    towerfile::from_json(&fs::read_to_string(data).ok()?).ok()
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}
