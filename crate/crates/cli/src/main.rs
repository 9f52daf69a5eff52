use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qdent::chaos::{classify, ct_region, ClassifyOptions, TraceRegion, DEFAULT_POLYLINE_SAMPLES};
use qdent::ensemble::{
    m_c3_quadrature, mc_chaotic_volume, mc_mean_fixed_pvm, mc_mean_hdyn_d2, mc_mean_maxent,
    t3_normalization, weyl_average_d2, weyl_mean_hdyn_d2, weyl_volume_d2, McOptions, PolarGrid,
};
use qdent::entropy::{dynamical_entropy, empirical_entropy_rate, entropy_rate};
use qdent::exec::Backend;
use qdent::gates::{agrees, classify_catalogue, gate_from_spec, Claim};
use qdent::io::{csv_number, matrix_value, parse_matrix, parse_povm, to_json};
use qdent::maxent::{hdyn_of_theta, pvm_dynamical_entropy, MaxEntOptions};
use qdent::measure::{pvm_from_unitary, sic_povm, RankOnePOVM};
use qdent::ComplexMatrix;

#[derive(Parser)]
#[command(name = "qdent", version, about = "Dynamical entropy and chaoticity of unitaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy rate, measurement and dynamical entropy of (U, Π)
    Entropy {
        #[command(flatten)]
        unitary: UnitaryArg,
        #[command(flatten)]
        povm: PovmArg,
    },
    /// PVM-dynamical entropy by multistart ascent
    Maxent {
        #[command(flatten)]
        unitary: UnitaryArg,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Chaoticity verdict
    Classify {
        #[command(flatten)]
        unitary: UnitaryArg,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Curve and region data as CSV
    Curve {
        #[arg(long)]
        fig: Figure,
        /// Grid intervals (fig 1) or boundary samples per polyline (regions)
        #[arg(long)]
        samples: Option<usize>,
        /// Dimension for `--fig region`
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimates over Haar-random unitaries
    Haar {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        stat: HaarStat,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        workers: usize,
        /// Optimizer starts per sample for `mean-maxent`
        #[arg(long, default_value_t = 32)]
        starts: usize,
    },
    /// Weyl-formula quadrature
    Weyl {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        stat: WeylStat,
        /// 1-D points (d = 2)
        #[arg(long, default_value_t = 2048)]
        points: usize,
        #[arg(long, default_value_t = 1024)]
        r_points: usize,
        #[arg(long, default_value_t = 2048)]
        theta_points: usize,
    },
    /// Classify the gate catalogue; exits 3 on disagreement with the claims
    Gates {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulate the measurement chain and compare with the exact rate
    Simulate {
        #[command(flatten)]
        unitary: UnitaryArg,
        #[command(flatten)]
        povm: PovmArg,
        #[arg(long, default_value_t = 1_000_000)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct UnitaryArg {
    /// Matrix JSON file
    #[arg(long)]
    unitary: Option<PathBuf>,
    /// Named gate, e.g. `H`, `FOURIER:3`, `DEUTSCH:0.5`
    #[arg(long)]
    gate: Option<String>,
}

#[derive(Args)]
#[group(multiple = false)]
struct PovmArg {
    /// POVM JSON file
    #[arg(long)]
    povm: Option<PathBuf>,
    /// Matrix JSON file whose columns form the measurement basis
    #[arg(long)]
    pvm: Option<PathBuf>,
    /// The built-in SIC-POVM (d = 2, 3)
    #[arg(long)]
    sic: bool,
}

#[derive(Args)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 32)]
    starts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
}

impl OptimizerArgs {
    fn options(&self) -> MaxEntOptions {
        MaxEntOptions {
            starts: self.starts,
            tol: self.tol,
            seed: self.seed,
            max_iters: self.max_iters,
            backend: Backend::default(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    #[value(name = "1")]
    Fig1,
    #[value(name = "3")]
    Fig3,
    #[value(name = "4")]
    Fig4,
    HdynTheta,
    Region,
}

#[derive(Clone, Copy, ValueEnum)]
enum HaarStat {
    Volume,
    MeanFixed,
    MeanMaxent,
    MeanHdyn2,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeylStat {
    Volume,
    MeanHdyn2,
    Normalization,
}

enum Failure {
    Input(String),
    Numerical(String),
    Disagreement(String),
}

impl From<qdent::Error> for Failure {
    fn from(e: qdent::Error) -> Self {
        match e {
            qdent::Error::Numerical { .. } => Failure::Numerical(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_unitary(arg: &UnitaryArg) -> Result<ComplexMatrix, Failure> {
    match (&arg.unitary, &arg.gate) {
        (Some(p), _) => Ok(parse_matrix(&read(p)?)?),
        (None, Some(g)) => Ok(gate_from_spec(g)?.matrix),
        (None, None) => Err(Failure::Input("one of --unitary or --gate is required".into())),
    }
}

fn load_povm(arg: &PovmArg, dim: usize) -> Result<RankOnePOVM, Failure> {
    if let Some(p) = &arg.povm {
        Ok(parse_povm(&read(p)?)?)
    } else if let Some(p) = &arg.pvm {
        Ok(pvm_from_unitary(&parse_matrix(&read(p)?)?)?)
    } else if arg.sic {
        Ok(sic_povm(dim)?)
    } else {
        Ok(RankOnePOVM::computational(dim))
    }
}

fn json<T: serde::Serialize>(v: &T) -> CmdResult {
    Ok(to_json(v)? + "\n")
}

fn cmd_entropy(unitary: &UnitaryArg, povm: &PovmArg) -> CmdResult {
    let u = load_unitary(unitary)?;
    let p = load_povm(povm, u.dim())?;
    json(&dynamical_entropy(&u, &p)?)
}

fn cmd_maxent(unitary: &UnitaryArg, opt: &OptimizerArgs) -> CmdResult {
    let u = load_unitary(unitary)?;
    let opts = opt.options();
    let r = pvm_dynamical_entropy(&u, &opts)?;
    json(&json!({
        "value": r.value,
        "basis": matrix_value(&r.basis),
        "certified_chaotic": r.certified_chaotic,
        "starts": opts.starts,
        "starts_used": r.starts_used,
        "converged_starts": r.converged_starts,
        "seed": opts.seed,
    }))
}

fn cmd_classify(unitary: &UnitaryArg, opt: &OptimizerArgs) -> CmdResult {
    let u = load_unitary(unitary)?;
    let opts = ClassifyOptions { maxent: opt.options(), ..Default::default() };
    json(&classify(&u, &opts)?)
}

fn region_rows(out: &mut String, index: usize, region: &TraceRegion) {
    for (t, z) in region.parameters().iter().zip(region.boundary()) {
        let _ = writeln!(out, "{index},{},{},{}", csv_number(*t), csv_number(z.re), csv_number(z.im));
    }
}

fn regions_csv(regions: &[TraceRegion]) -> String {
    let mut out = String::from("region_index,t,re,im\n");
    for (k, r) in regions.iter().enumerate() {
        region_rows(&mut out, k, r);
    }
    out
}

fn cmd_curve(fig: Figure, samples: Option<usize>, dim: usize) -> CmdResult {
    let polyline = samples.unwrap_or(DEFAULT_POLYLINE_SAMPLES);
    let with_lobes = |d: usize| -> Result<Vec<TraceRegion>, Failure> {
        let mut v = vec![TraceRegion::full(d, polyline)?];
        v.extend(ct_region(d, polyline)?);
        Ok(v)
    };
    match fig {
        Figure::Fig1 | Figure::HdynTheta => {
            let n = samples.unwrap_or(1000);
            if n == 0 {
                return Err(Failure::Input("need at least one grid interval".into()));
            }
            let mut out = String::from("theta,hdyn\n");
            for i in 0..=n {
                let theta = PI * i as f64 / n as f64;
                let _ = writeln!(out, "{},{}", csv_number(theta), csv_number(hdyn_of_theta(theta)));
            }
            Ok(out)
        }
        Figure::Fig3 => Ok(regions_csv(&with_lobes(3)?)),
        Figure::Fig4 => Ok(regions_csv(&with_lobes(5)?)),
        Figure::Region => Ok(regions_csv(&[TraceRegion::full(dim, polyline)?])),
    }
}

fn cmd_haar(dim: usize, stat: HaarStat, samples: usize, seed: u64, workers: usize, starts: usize) -> CmdResult {
    let opts = McOptions { samples, seed, workers, backend: Backend::default() };
    let est = match stat {
        HaarStat::Volume => mc_chaotic_volume(dim, &opts)?,
        HaarStat::MeanFixed => mc_mean_fixed_pvm(dim, &opts)?,
        HaarStat::MeanHdyn2 if dim == 2 => mc_mean_hdyn_d2(&opts)?,
        HaarStat::MeanHdyn2 => return Err(Failure::Input(format!("mean-hdyn2 needs --dim 2, got {dim}"))),
        HaarStat::MeanMaxent => {
            let m = MaxEntOptions { starts, seed, ..Default::default() };
            mc_mean_maxent(dim, &opts, &m)?
        }
    };
    json(&est)
}

fn cmd_weyl(dim: usize, stat: WeylStat, points: usize, grid: PolarGrid) -> CmdResult {
    if points == 0 {
        return Err(Failure::Input("--points must be positive".into()));
    }
    let backend = Backend::default();
    let (name, value) = match (dim, stat) {
        (2, WeylStat::Volume) => ("volume", weyl_volume_d2(points)),
        (2, WeylStat::MeanHdyn2) => ("mean-hdyn2", weyl_mean_hdyn_d2(points)),
        (2, WeylStat::Normalization) => ("normalization", weyl_average_d2(|_| 1.0, points)),
        (3, WeylStat::Volume) => ("volume", m_c3_quadrature(&grid, backend)?),
        (3, WeylStat::Normalization) => ("normalization", t3_normalization(&grid, backend)?),
        _ => return Err(Failure::Input(format!("unsupported dimension/statistic pair for weyl (dim {dim})"))),
    };
    json(&json!({ "dim": dim, "stat": name, "value": value }))
}

fn claim_name(c: Claim) -> &'static str {
    match c {
        Claim::Chaotic => "Chaotic",
        Claim::NotChaotic => "NotChaotic",
        Claim::None => "None",
    }
}

fn cmd_gates(seed: u64) -> Result<(String, Vec<String>), Failure> {
    let opts = ClassifyOptions { maxent: MaxEntOptions { seed, ..Default::default() }, ..Default::default() };
    let mut out = String::from("name,dim,claim,verdict,method,detail\n");
    let mut bad = Vec::new();
    for (g, v) in classify_catalogue(&opts)? {
        let _ = writeln!(
            out,
            "{},{},{},{:?},{:?},{}",
            g.name,
            g.dim,
            claim_name(g.claim),
            v.status,
            v.method,
            csv_number(v.detail)
        );
        if !agrees(g.claim, &v) {
            bad.push(format!("{} (d = {})", g.name, g.dim));
        }
    }
    Ok((out, bad))
}

fn cmd_simulate(unitary: &UnitaryArg, povm: &PovmArg, steps: usize, seed: u64) -> CmdResult {
    let u = load_unitary(unitary)?;
    let p = load_povm(povm, u.dim())?;
    let exact = entropy_rate(&u, &p)?;
    let empirical = empirical_entropy_rate(&u, &p, steps, seed)?;
    json(&json!({
        "empirical_rate": empirical,
        "exact_rate": exact,
        "abs_error": (empirical - exact).abs(),
        "steps": steps,
        "seed": seed,
    }))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(Failure::Input(format!("cannot write to stdout: {e}")))
            }
            _ => Ok(()),
        },
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Entropy { unitary, povm } => emit(&cmd_entropy(&unitary, &povm)?, None),
        Command::Maxent { unitary, opt } => emit(&cmd_maxent(&unitary, &opt)?, None),
        Command::Classify { unitary, opt } => emit(&cmd_classify(&unitary, &opt)?, None),
        Command::Curve { fig, samples, dim, out } => emit(&cmd_curve(fig, samples, dim)?, out.as_deref()),
        Command::Haar { dim, stat, samples, seed, workers, starts } => {
            emit(&cmd_haar(dim, stat, samples, seed, workers, starts)?, None)
        }
        Command::Weyl { dim, stat, points, r_points, theta_points } => {
            emit(&cmd_weyl(dim, stat, points, PolarGrid { r_points, theta_points })?, None)
        }
        Command::Gates { out, seed } => {
            let (csv, bad) = cmd_gates(seed)?;
            emit(&csv, out.as_deref())?;
            if bad.is_empty() {
                Ok(())
            } else {
                Err(Failure::Disagreement(format!("verdict disagrees with the published claim for {}", bad.join(", "))))
            }
        }
        Command::Simulate { unitary, povm, steps, seed } => emit(&cmd_simulate(&unitary, &povm, steps, seed)?, None),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}
