use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use landau_core::campaign::gauge_scan::default_gauges;
use landau_core::campaign::{
    dump_grid, run_basis_change, run_classical_sim, run_gauge_scan, run_heisenberg_demo, run_reproduce_tables,
    run_verify_algebra, CampaignConfig, ClassicalOptions, CsvTable,
};
use landau_core::classical::{Method, TrajectoryParams};
use landau_core::quadrature::Scheme;
use landau_core::report::VerificationReport;
use landau_core::waves::{psi_fock, psi_t1};
use landau_core::{GaugeChoice, PhysicalParams, Point, Poly2, Result};

#[derive(Parser, Debug)]
#[command(name = "landau", version, about = "Gauge-family cross-checks of the planar Landau problem")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    mass: f64,
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    charge: f64,
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    bfield: f64,
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    hbar: f64,
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Gauge polynomial in `u1 = x1 - x01`, `u2 = x2 - x02`.
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    phi: String,
    /// Gauge origin as `x01,x02`.
    #[arg(long, global = true, default_value = "0,0", value_parser = parse_point, allow_negative_numbers = true)]
    x0: Point,
    #[arg(long, global = true, default_value_t = 16)]
    nmax: usize,
    #[arg(long, global = true, default_value_t = 3)]
    margin: usize,
    /// Quadrature nodes per axis.
    #[arg(long, global = true, default_value_t = 80)]
    grid: usize,
    #[arg(long, global = true, default_value = "gh")]
    scheme: Scheme,
    /// Replaces every tolerance of the campaign.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[arg(long, global = true)]
    csv_out: Option<PathBuf>,
    /// Leaves the timestamp out of the JSON report.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Args, Debug)]
struct DumpArgs {
    /// Writes a sampled wave function as `x1,x2,re,im` rows.
    #[arg(long)]
    dump_grid: Option<PathBuf>,
    /// Helicity labels `n+,n-` of the dumped state.
    #[arg(long, default_value = "0,0", value_parser = parse_pair)]
    dump_state: (u32, u32),
    /// Samples per axis of the dump.
    #[arg(long, default_value_t = 64)]
    dump_points: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Commutator suite and charge relation on the truncated Fock space.
    VerifyAlgebra,
    /// Matrix elements by quadrature across a seeded list of gauges.
    GaugeScan {
        #[command(flatten)]
        dump: DumpArgs,
    },
    /// Closed-form matrix elements in the angular and `T1` bases.
    ReproduceTables,
    /// Integrates a cyclotron orbit and tracks the conserved charges.
    ClassicalSim {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        energy: f64,
        /// Orbit centre as `X1,X2`.
        #[arg(long, default_value = "0,0", value_parser = parse_point, allow_negative_numbers = true)]
        centre: Point,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value = "boris")]
        method: Method,
    },
    /// Overlaps between the `T1` and helicity bases.
    BasisChange {
        #[command(flatten)]
        dump: DumpArgs,
    },
    /// Matrix elements under a pure-gauge connection with rephased states.
    HeisenbergDemo,
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected `a,b`, got `{s}`"));
    }
    let a = parts[0].parse::<f64>().map_err(|e| e.to_string())?;
    let b = parts[1].parse::<f64>().map_err(|e| e.to_string())?;
    Ok([a, b])
}

fn parse_pair(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `n+,n-`, got `{s}`"))?;
    Ok((
        a.trim().parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
        b.trim().parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
    ))
}

fn config(g: &Global) -> Result<CampaignConfig> {
    let params = PhysicalParams::new(g.mass, g.charge, g.bfield, g.hbar)?;
    let gauge = GaugeChoice::new(g.alpha, g.x0, Poly2::parse(&g.phi)?)?;
    Ok(CampaignConfig {
        params,
        gauge,
        nmax: g.nmax,
        margin: g.margin,
        grid: g.grid,
        scheme: g.scheme,
        tol: g.tol,
        seed: g.seed,
    })
}

fn write_dump(cfg: &CampaignConfig, dump: &DumpArgs, t1_state: bool) -> Result<()> {
    let Some(path) = &dump.dump_grid else {
        return Ok(());
    };
    let (np, nm) = dump.dump_state;
    let p = &cfg.params;
    let g = &cfg.gauge;
    let half = 5.0 * p.magnetic_length();
    let table = if t1_state {
        dump_grid(g.x0(), half, dump.dump_points, |x| psi_t1(g, p, 0.0, nm, x))
    } else {
        dump_grid(g.x0(), half, dump.dump_points, |x| psi_fock(g, p, np, nm, x))
    };
    table.write(path)
}

fn run(cli: &Cli) -> Result<VerificationReport> {
    let cfg = config(&cli.global)?;
    let mut csv: Option<CsvTable> = None;
    let mut report = match &cli.command {
        Command::VerifyAlgebra => run_verify_algebra(&cfg),
        Command::GaugeScan { dump } => {
            let mut gauges = vec![cfg.gauge.clone()];
            gauges.extend(default_gauges(cfg.gauge.x0(), cfg.seed));
            write_dump(&cfg, dump, false)?;
            run_gauge_scan(&cfg, &gauges)?
        }
        Command::ReproduceTables => {
            let (r, t) = run_reproduce_tables(&cfg)?;
            csv = Some(t);
            r
        }
        Command::ClassicalSim {
            energy,
            centre,
            dt,
            steps,
            method,
        } => {
            let mut opts = ClassicalOptions::new(TrajectoryParams::new(*energy, *centre, 0.0)?);
            opts.dt = *dt;
            opts.steps = *steps;
            opts.method = *method;
            let (r, t) = run_classical_sim(&cfg, &opts)?;
            csv = Some(t);
            r
        }
        Command::BasisChange { dump } => {
            write_dump(&cfg, dump, true)?;
            run_basis_change(&cfg)?
        }
        Command::HeisenbergDemo => run_heisenberg_demo(&cfg)?,
    };
    if !cli.global.no_timestamp {
        report.stamp();
    }
    if let Some(path) = &cli.global.json_out {
        report.write_json(path)?;
    }
    if let (Some(path), Some(t)) = (&cli.global.csv_out, &csv) {
        t.write(path)?;
    }
    Ok(report)
}

fn summarise(r: &VerificationReport) {
    let failed: Vec<_> = r.failures().collect();
    println!(
        "{}: {} checks, {} failed, max deviation {:.3e}",
        r.campaign,
        r.checks.len(),
        failed.len(),
        r.max_deviation()
    );
    for c in failed {
        match &c.note {
            Some(n) => println!("  FAIL {} deviation {:.3e} > {:.1e} ({n})", c.id, c.deviation, c.tolerance),
            None => println!("  FAIL {} deviation {:.3e} > {:.1e}", c.id, c.deviation, c.tolerance),
        }
    }
    println!("{}", if r.pass { "PASS" } else { "FAIL" });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            summarise(&r);
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
