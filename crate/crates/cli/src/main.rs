use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mobisim::engine::{run_replications_with, RunOptions};
use mobisim::metrics::{aggregate, write_outputs, Group, Metric, OutputOptions};
use mobisim::scenario::{builtin_scenario, load_scenario, Point};
use mobisim::{ScenarioConfig, Scheme, UserType};

/// Agent-based simulator of end-user network switching and multihoming.
#[derive(Parser)]
#[command(name = "mobisim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run replications and write summary tables.
    Run(RunArgs),
    /// Print the link budget from one base station to a point.
    Linkbudget(LinkBudgetArgs),
    /// Print the fully resolved scenario document.
    Scenario(ScenarioArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Builtin layout 1-4 or a path to a scenario TOML file.
    #[arg(long, short, default_value = "1")]
    scenario: String,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<Scheme>,
    /// Total number of users.
    #[arg(long)]
    users: Option<usize>,
    /// User mix, e.g. `1C=0.5,3C-MH=0.5`; bare labels split evenly.
    #[arg(long)]
    types: Option<String>,
    /// Simulated seconds per replication.
    #[arg(long)]
    duration: Option<u64>,
    /// Use seeds 1..=k.
    #[arg(long)]
    seeds: Option<u64>,
    /// Seconds discarded before recording.
    #[arg(long)]
    warmup: Option<u64>,
    /// Restrict multihoming pairs to cells of different operators.
    #[arg(long)]
    distinct_operator_pairs: bool,
    /// Also write per-session records to sessions.csv.
    #[arg(long)]
    sessions: bool,
    /// Write user positions every N seconds to trace.csv.
    #[arg(long, value_name = "N")]
    trace_mobility: Option<u64>,
    #[arg(long, short, default_value = "results")]
    out: PathBuf,
}

#[derive(Args)]
struct LinkBudgetArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Base station index in the scenario's station list.
    #[arg(long, default_value_t = 0)]
    bs: usize,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: mobisim::Error| e.to_string())
}

fn parse_types(spec: &str) -> Result<BTreeMap<UserType, f64>> {
    let items: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        bail!("--types needs at least one user type");
    }
    let explicit = items.iter().filter(|s| s.contains('=')).count();
    if explicit != 0 && explicit != items.len() {
        bail!("--types: give a fraction for every type or for none");
    }
    let mut fractions = BTreeMap::new();
    for item in &items {
        let (label, fraction) = match item.split_once('=') {
            Some((l, f)) => (l.trim(), f.trim().parse::<f64>().with_context(|| format!("bad fraction in `{item}`"))?),
            None => (*item, 1.0 / items.len() as f64),
        };
        let t: UserType = label.parse()?;
        if fractions.insert(t, fraction).is_some() {
            bail!("--types lists {t} twice");
        }
    }
    Ok(fractions)
}

fn load(arg: &str) -> Result<ScenarioConfig> {
    if let Ok(id) = arg.parse::<u8>() {
        return Ok(builtin_scenario(id)?);
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    load_scenario(&text).with_context(|| format!("loading {arg}"))
}

fn run(args: RunArgs) -> Result<()> {
    let mut config = load(&args.scenario.scenario)?;
    if let Some(s) = args.scheme {
        config.scheme = s;
    }
    if let Some(n) = args.users {
        config.population.total_users = n;
    }
    if let Some(t) = &args.types {
        config.population.type_fractions = parse_types(t)?;
    }
    if let Some(d) = args.duration {
        config.duration = d;
    }
    if let Some(k) = args.seeds {
        config.seeds = (1..=k).collect();
    }
    if let Some(w) = args.warmup {
        config.warmup = w;
    }
    config.distinct_operator_pairs |= args.distinct_operator_pairs;
    config.validate()?;

    eprintln!(
        "scenario {} | {} | {} users | {} s | {} seed(s)",
        config.scenario,
        config.scheme.label(),
        config.population.total_users,
        config.duration,
        config.seeds.len()
    );
    let started = Instant::now();
    let options = RunOptions {
        trace_interval: args.trace_mobility,
    };
    let results = run_replications_with(&config, options, |r| {
        eprintln!("  seed {} done after {:.1} s", r.seed, started.elapsed().as_secs_f64());
    })?;
    let summary = aggregate(&results)?;
    write_outputs(
        &args.out,
        &summary,
        &results,
        OutputOptions {
            sessions: args.sessions,
            trace: args.trace_mobility.is_some(),
        },
    )?;

    println!("{:<10} {:>22} {:>22} {:>16}", "group", "throughput [Mbps]", "SINR [dB]", "MOS");
    let groups = std::iter::once(Group::All)
        .chain(UserType::ALL.into_iter().map(Group::Type))
        .filter(|g| summary.row(*g, Metric::Throughput).is_some());
    for g in groups {
        let cell = |m: Metric| match summary.interval(g, m) {
            Some(ci) => format!("{:.3} ± {:.3}", ci.mean, ci.half_width()),
            None => "-".into(),
        };
        println!(
            "{:<10} {:>22} {:>22} {:>16}",
            g.label(),
            cell(Metric::Throughput),
            cell(Metric::Sinr),
            cell(Metric::Mos)
        );
    }
    eprintln!("wrote {}", args.out.display());
    Ok(())
}

fn link_budget(args: LinkBudgetArgs) -> Result<()> {
    let config = load(&args.scenario.scenario)?;
    let b = config.radio.link_budget(
        Point::new(args.x, args.y),
        args.bs,
        &config.base_stations,
        &config.geometry,
    )?;
    let bs = &config.base_stations[args.bs];
    println!("station          {} (operator {}, {})", args.bs, bs.operator, bs.tier.label());
    println!("user             {} at {:.1} m", if b.user_indoor { "indoor" } else { "outdoor" }, b.distance_m);
    println!("model            {}", b.model.label());
    println!("penetration      {:.2} dB", b.penetration_db);
    println!("path loss        {:.2} dB", b.path_loss_db);
    println!("rx power         {:.2} dBm", b.rx_power_dbm);
    match b.interference_dbm {
        Some(i) => println!("interference     {:.2} dBm from {:?}", i, b.interferers),
        None => println!("interference     none"),
    }
    println!("noise            {:.2} dBm", b.noise_dbm);
    println!("SINR             {:.2} dB", b.sinr_db);
    println!("efficiency       {:.3} bps/Hz", b.spectral_efficiency);
    println!("full carrier     {:.2} Mbps", b.full_carrier_throughput_bps / 1e6);
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Linkbudget(args) => link_budget(args),
        Command::Scenario(args) => {
            print!("{}", load(&args.scenario)?.to_toml()?);
            Ok(())
        }
    }
}
