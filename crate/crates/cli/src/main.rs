use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use integrals_core::enumerate::{self, enumerate_order, load_catalog, save_catalog};
use integrals_core::gauge::{self, IdentitySet};
use integrals_core::integral::{search_integral, IntegralReport, Verdict};
use integrals_core::iso::fingerprint;
use integrals_core::structure::{centre, derived_series, nilpotency_class};
use integrals_core::tower::{self, levelwise_integral_check, InverseSystem};
use integrals_core::{construct::construct, gates, set_gates, GroupDescriptor, PermGroup, Permutation};

/// Environment variable naming the catalog cache directory.
const CACHE_ENV: &str = "INTEGRALS_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "integrals", version, about = "Integrals of finite groups: H with H' isomorphic to G")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Catalog cache directory (overrides INTEGRALS_CACHE_DIR)
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: one per core)
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Largest group order whose elements may be listed
    #[arg(long, global = true)]
    enumeration_gate: Option<u64>,

    /// Largest group order for automorphism groups
    #[arg(long, global = true)]
    aut_gate: Option<u64>,

    /// Largest group order for subgroup lattices
    #[arg(long, global = true)]
    lattice_gate: Option<u64>,

    /// Largest ball size for identity checks
    #[arg(long, global = true)]
    ball_cap: Option<u64>,

    /// Largest order for which catalogs are built
    #[arg(long, global = true)]
    catalog_order: Option<u64>,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, centre, derived series, abelianization, class and fingerprint
    Analyze {
        /// Descriptor such as `sl23`, or a group file
        input: String,
    },
    /// Search the catalogs for integrals of a group
    Integrate {
        #[arg(long)]
        target: String,
        #[arg(long)]
        bound: u64,
        /// Only search p-groups
        #[arg(long = "p")]
        prime: Option<u64>,
    },
    /// Enumerate all groups of one order
    Enum {
        #[arg(long)]
        order: u64,
    },
    /// Identity checks on Cayley-graph balls
    Gauge(GaugeArgs),
    /// Inverse systems of finite groups
    Tower {
        #[command(subcommand)]
        command: TowerCommand,
    },
    /// Save, load and verify catalog files
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Args, Debug)]
struct GaugeArgs {
    /// abelian, A<m>, N<c>, exponent-2, metabelian or s3
    #[arg(long)]
    preset: String,
    /// Group to check on (ball mode)
    #[arg(long)]
    group: Option<String>,
    /// Generators in cycle notation separated by `;` (default: the group's own)
    #[arg(long)]
    gens: Option<String>,
    /// Ball radius (ball mode)
    #[arg(long, default_value_t = 1)]
    radius: usize,
    /// Wreath experiment radius (metabelian preset)
    #[arg(long)]
    n: Option<usize>,
    /// Size of the cyclic top group (default 8n+2)
    #[arg(long = "M")]
    m: Option<usize>,
    /// Shift N in c = b^(x^N) (default 4n+1)
    #[arg(long)]
    shift: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum TowerCommand {
    /// Check that every level of G is the derived subgroup of the level of K, compatibly
    Check { g: PathBuf, k: PathBuf },
    /// Write the tower G, G^2, ..., G^L
    Powers {
        #[arg(long)]
        group: String,
        #[arg(long)]
        levels: usize,
    },
    /// Search for an integral of (D_2n)^m
    Dihedral {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    Save {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        out: PathBuf,
    },
    Load { path: PathBuf },
    /// Load and check every entry, not only the sampled ones
    Verify { path: PathBuf },
}

/// Exit code for an inconclusive verdict.
const INCONCLUSIVE: i32 = 2;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            process::exit(1);
        }
    }
}

fn apply_config(c: &RunConfig) -> Result<()> {
    let mut g = gates();
    let set = |slot: &mut u64, v: Option<u64>, name: &str| -> Result<()> {
        if let Some(v) = v {
            if v == 0 {
                bail!("{} must be positive", name);
            }
            *slot = v;
        }
        Ok(())
    };
    set(&mut g.enumeration, c.enumeration_gate, "--enumeration-gate")?;
    set(&mut g.aut, c.aut_gate, "--aut-gate")?;
    set(&mut g.lattice, c.lattice_gate, "--lattice-gate")?;
    set(&mut g.ball, c.ball_cap, "--ball-cap")?;
    set(&mut g.catalog_order, c.catalog_order, "--catalog-order")?;
    set_gates(g);
    enumerate::set_cache_dir(c.cache_dir.clone());
    if let Some(w) = c.workers {
        if w == 0 {
            bail!("--workers must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(())
}

/// A group file when the path exists, a descriptor otherwise.
fn load_group(input: &str) -> Result<PermGroup> {
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", input))?;
        return PermGroup::from_text(&text).with_context(|| format!("parsing {}", input));
    }
    let d: GroupDescriptor = input.parse().with_context(|| format!("parsing descriptor `{}`", input))?;
    Ok(construct(&d)?)
}

fn run(cli: Cli) -> Result<i32> {
    apply_config(&cli.config)?;
    let format = cli.config.format;
    match cli.command {
        Command::Analyze { input } => analyze(&input, format),
        Command::Integrate { target, bound, prime } => {
            let g = load_group(&target)?;
            let report = search_integral(&g, bound, prime)?;
            print_report(&report, format);
            Ok(match report.verdict {
                Verdict::NoneWithinBound => INCONCLUSIVE,
                _ => 0,
            })
        }
        Command::Enum { order } => {
            let cat = enumerate_order(order)?;
            match format {
                Format::Machine => print!("{}", enumerate::serialize(&cat)),
                Format::Text => {
                    println!("order {}: {} groups", order, cat.len());
                    for (i, e) in cat.entries.iter().enumerate() {
                        println!("{:4}  {}", i, e.fingerprint);
                    }
                }
            }
            Ok(0)
        }
        Command::Gauge(args) => gauge_cmd(&args, format, cli.config.seed),
        Command::Tower { command } => tower_cmd(command, format),
        Command::Catalog { command } => catalog_cmd(command),
    }
}

fn analyze(input: &str, format: Format) -> Result<i32> {
    let g = load_group(input)?;
    let z = centre(&g)?;
    let series: Vec<String> = derived_series(&g).iter().map(|h| h.order().to_string()).collect();
    let fp = fingerprint(&g)?;
    let class = nilpotency_class(&g).map_or("none".to_string(), |c| c.to_string());
    match format {
        Format::Machine => {
            println!("analysis v1");
            println!("order={}", g.order());
            println!("centre={}", z.order());
            println!("derived-series={}", series.join(","));
            println!("abelianization={}", fp.abelianization);
            println!("class={}", class);
            println!("fingerprint={}", fp);
        }
        Format::Text => {
            println!("order:            {}", g.order());
            println!("centre order:     {}", z.order());
            println!("derived series:   {}", series.join(" > "));
            println!("abelianization:   {}", fp.abelianization);
            println!("nilpotency class: {}", class);
            println!("fingerprint:      {}", fp);
        }
    }
    Ok(0)
}

fn print_report(r: &IntegralReport, format: Format) {
    match format {
        Format::Machine => print!("{}", r.to_text()),
        Format::Text => print!("{}", r.summary()),
    }
}

fn cycles(xs: &[Permutation]) -> String {
    xs.iter().map(|x| x.to_cycle_string()).collect::<Vec<_>>().join(" ")
}

fn gauge_cmd(args: &GaugeArgs, format: Format, seed: u64) -> Result<i32> {
    if let Some(n) = args.n {
        if args.preset != "metabelian" {
            bail!("--n runs the wreath experiment, which needs --preset metabelian");
        }
        let m = args.m.unwrap_or(8 * n + 2);
        let r = gauge::metabelian_wreath_experiment(n, m, args.shift, seed)?;
        match format {
            Format::Machine => print!("{}", r.to_text()),
            Format::Text => {
                println!(
                    "A5 wr C{} with N={}: |B_{}| = {}",
                    r.m, r.shift, r.n, r.ball_size
                );
                match &r.violation {
                    None => println!("metabelian law holds on B_{}", r.n),
                    Some(v) => println!("metabelian law fails on B_{}: {}", r.n, v),
                }
                println!("group is not metabelian, witness: {}", cycles(&r.non_metabelian_witness));
                println!(
                    "claim B_t ∩ E ⊆ W_(t/2): {} elements checked, {} outside",
                    r.claim_checked, r.claim_failures
                );
            }
        }
        return Ok(0);
    }
    let desc = args
        .group
        .as_deref()
        .context("give --group for a ball check or --n for the wreath experiment")?;
    let g = load_group(desc)?;
    let ids = IdentitySet::preset(&args.preset)?;
    let gens = match &args.gens {
        None => g.reduced_generators(),
        Some(text) => {
            let mut v = Vec::new();
            for part in text.split(';') {
                let x = Permutation::parse_cycles(part.trim(), g.degree())
                    .with_context(|| format!("parsing generator `{}`", part.trim()))?;
                if !g.contains(&x)? {
                    bail!("generator {} is not in the group", x.to_cycle_string());
                }
                v.push(x);
            }
            if g.subgroup(v.clone())?.order() != g.order() {
                bail!("--gens do not generate the group");
            }
            v
        }
    };
    let s = gauge::symmetric_closure(&gens);
    let b = gauge::ball(&g, &s, args.radius)?;
    let v = gauge::find_violation(&ids, b.elements())?;
    match format {
        Format::Machine => {
            println!("gauge v1");
            println!("preset={}", ids.name);
            println!("radius={}", args.radius);
            println!("ball={}", b.len());
            println!("holds={}", v.is_none());
            if let Some(v) = &v {
                println!("witness={}", cycles(&v.assignment));
            }
        }
        Format::Text => {
            println!("|B_{}| = {} for S = {}", args.radius, b.len(), cycles(&s));
            match &v {
                None => println!("{} holds on the ball", ids.name),
                Some(v) => println!("{} fails: {}", ids.name, v),
            }
        }
    }
    Ok(0)
}

fn read_tower(path: &Path) -> Result<InverseSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InverseSystem::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn tower_cmd(cmd: TowerCommand, format: Format) -> Result<i32> {
    match cmd {
        TowerCommand::Check { g, k } => {
            let ok = levelwise_integral_check(&read_tower(&g)?, &read_tower(&k)?)?;
            match format {
                Format::Machine => println!("levelwise-integral={}", ok),
                Format::Text => println!(
                    "{}",
                    if ok {
                        "every level of G is the derived subgroup of K, compatibly with the maps"
                    } else {
                        "not a levelwise integral"
                    }
                ),
            }
            Ok(0)
        }
        TowerCommand::Powers { group, levels } => {
            let g = load_group(&group)?;
            print!("{}", InverseSystem::powers(&g, levels)?.to_text());
            Ok(0)
        }
        TowerCommand::Dihedral { n, m, bound } => {
            let r = tower::search_no_integral_of_dihedral_power(n, m, bound)?;
            print_report(&r, format);
            Ok(match r.verdict {
                Verdict::NoneWithinBound => INCONCLUSIVE,
                _ => 0,
            })
        }
    }
}

fn catalog_cmd(cmd: CatalogCommand) -> Result<i32> {
    match cmd {
        CatalogCommand::Save { order, out } => {
            let cat = enumerate_order(order)?;
            save_catalog(&cat, &out)?;
            println!("saved {} groups of order {} to {}", cat.len(), order, out.display());
        }
        CatalogCommand::Load { path } => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let (cat, warnings) = enumerate::parse_catalog(&text)?;
            for w in warnings {
                eprintln!("warning: {}", w);
            }
            println!("order {}: {} groups ({} {})", cat.order, cat.len(), cat.method, cat.version);
        }
        CatalogCommand::Verify { path } => {
            let cat = load_catalog(&path)?;
            for (i, e) in cat.entries.iter().enumerate() {
                if e.group.order_u64() != cat.order || !e.group.verify_chain() {
                    bail!("entry {} fails verification", i);
                }
                if fingerprint(&e.group)? != e.fingerprint {
                    bail!("entry {} has a stale fingerprint", i);
                }
            }
            println!("order {}: all {} entries verified", cat.order, cat.len());
        }
    }
    Ok(0)
}
