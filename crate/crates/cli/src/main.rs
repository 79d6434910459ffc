mod joint_file;
mod manifest;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use manifest::{load_config, write_manifest};
use pidnet_core::mc::DEFAULT_T_BINS;
use pidnet_core::*;
use pidnet_harness::ExperimentConfig;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pidnet", version, about = "Partial information decomposition for interaction networks")]
struct Cli {
    /// Unit for printed information values.
    #[arg(long, global = true, default_value = "nats")]
    units: Units,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a discrete joint distribution read from a file.
    Pid {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        kind: KindArg,
    },
    /// Closed-form decompositions of T = aX + bY with standard normal X, Y.
    AnalyticLinear {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        rho: f64,
    },
    /// Monte Carlo unique-information estimates for a noise-free kernel.
    Mc {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        kernel: Option<KernelArg>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Quantile bins of T for the I_min estimator.
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run network experiment 1, 2 or 3 and write CSV/JSON results.
    Experiment {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Samples per batch.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        batches: Option<usize>,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<f64>,
        /// Sigmoid threshold; a comma-separated grid for experiment 3.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
        /// Comma-separated grid of mixed-term coefficients (experiment 2).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Imin,
    Ipm,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KernelArg {
    Linear,
    Sigmoidal,
    Symmetric,
}

/// Monte Carlo run parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct McConfig {
    kernel: KernelArg,
    a: f64,
    b: f64,
    alpha: f64,
    rho: f64,
    samples: usize,
    seed: u64,
    bins: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            kernel: KernelArg::Sigmoidal,
            a: 1.0,
            b: 2.0,
            alpha: 0.0,
            rho: 0.0,
            samples: 1_000_000,
            seed: 1,
            bins: DEFAULT_T_BINS,
        }
    }
}

impl McConfig {
    fn spec(&self) -> KernelSpec {
        match self.kernel {
            KernelArg::Linear => KernelSpec::Linear { a: self.a, b: self.b },
            KernelArg::Sigmoidal => KernelSpec::Sigmoidal { alpha: self.alpha },
            KernelArg::Symmetric => KernelSpec::Symmetric,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let units = cli.units;
    match cli.command {
        Command::Pid { file, kind } => cmd_pid(&file, kind, units),
        Command::AnalyticLinear { a, b, rho } => cmd_analytic_linear(a, b, rho, units),
        Command::Mc {
            config,
            kernel,
            a,
            b,
            alpha,
            rho,
            samples,
            seed,
            bins,
            out,
        } => {
            let mut cfg: McConfig = match &config {
                Some(path) => load_config(path, "mc")?,
                None => McConfig::default(),
            };
            set(&mut cfg.kernel, kernel);
            set(&mut cfg.a, a);
            set(&mut cfg.b, b);
            set(&mut cfg.alpha, alpha);
            set(&mut cfg.rho, rho);
            set(&mut cfg.samples, samples);
            set(&mut cfg.seed, seed);
            set(&mut cfg.bins, bins);
            cmd_mc(&cfg, out.as_deref(), units)
        }
        Command::Experiment {
            id,
            config,
            seed,
            samples,
            batches,
            bins,
            rho,
            alpha,
            beta,
            out,
        } => {
            let command = format!("experiment {id}");
            let mut cfg: ExperimentConfig = match &config {
                Some(path) => load_config(path, &command)?,
                None => ExperimentConfig::default(),
            };
            set(&mut cfg.seed, seed);
            set(&mut cfg.samples_per_batch, samples);
            set(&mut cfg.batches, batches);
            set(&mut cfg.bins, bins);
            set(&mut cfg.rho, rho);
            set(&mut cfg.beta_grid, beta);
            if let Some(alpha) = alpha {
                if id == 3 {
                    cfg.alpha_grid = alpha;
                } else if let [single] = alpha[..] {
                    cfg.alpha = single;
                } else {
                    bail!("experiment {id} takes a single --alpha value");
                }
            }
            let out = out.unwrap_or_else(|| PathBuf::from(format!("out/exp{id}")));
            cmd_experiment(id, &cfg, &out, units)
        }
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn check_seed(seed: u64) -> Result<()> {
    // manifests are TOML, whose integers are signed 64-bit
    if seed > i64::MAX as u64 {
        bail!("seed must be at most {}", i64::MAX);
    }
    Ok(())
}

fn print_pid(d: &Pid, units: Units) {
    let d = d.in_units(units);
    println!("[{}] ({units})", d.kind);
    for (name, v) in [
        ("R", d.r),
        ("U_X", d.u_x),
        ("U_Y", d.u_y),
        ("S", d.s),
        ("I(T;X)", d.mi_x),
        ("I(T;Y)", d.mi_y),
        ("I(T;X,Y)", d.mi_xy),
    ] {
        println!("{name:<10} {v:.12}");
    }
    if let Some(l) = d.sublattices {
        let names = ["R+", "U_X+", "U_Y+", "S+", "R-", "U_X-", "U_Y-", "S-"];
        for (name, v) in names.iter().zip(l.components()) {
            println!("{name:<10} {v:.12}");
        }
    }
}

fn cmd_pid(file: &Path, kind: KindArg, units: Units) -> Result<()> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let joint = joint_file::parse_joint(&text).with_context(|| format!("in {}", file.display()))?;
    let kinds: &[PidKind] = match kind {
        KindArg::Imin => &[PidKind::Imin],
        KindArg::Ipm => &[PidKind::Ipm],
        KindArg::Both => &PidKind::ALL,
    };
    for (i, &k) in kinds.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print_pid(&pid(&joint, k), units);
    }
    Ok(())
}

fn cmd_analytic_linear(a: f64, b: f64, rho: f64, units: Units) -> Result<()> {
    let li = LinearInteraction::new(a, b, rho)?;
    let mi = linear_mi(&li);
    let k = units.factor::<f64>();
    println!("T = {a}·X + {b}·Y, rho = {rho}, sigma_T = {:.12}", li.sigma_t());
    println!("I(X;Y)     {:.12}", mi.ixy * k);
    println!();
    print_pid(&linear_imin_pid(&li), units);
    println!();
    print_pid(&linear_ipm_pid(&li), units);
    println!();
    let row = &linear_limits(b, rho, &[a])?[0];
    println!("ratios (limit as a -> 0)");
    let names = ["U_Y^min/I(T;Y)", "R^min/I(T;Y)", "U_X^pm/I(T;Y)", "R^pm/I(T;Y)", "U_X^pm/U_Y^min"];
    for ((name, v), lim) in names.iter().zip(row.ratios()).zip(LimitRow::<f64>::LIMITS) {
        println!("{name:<16} {v:>16.12}  ({lim})");
    }
    Ok(())
}

#[derive(Serialize)]
struct McReport {
    kernel: KernelSpec,
    rho: f64,
    u_x_min: McEstimate,
    u_y_min: McEstimate,
    u_x_pm: McEstimate,
    u_y_pm: McEstimate,
    u_x_pm_minus: McEstimate,
    u_y_pm_minus: McEstimate,
    i_txy: String,
    /// Closed forms for the linear kernel, `[U_X^min, U_Y^min, U_X^pm, U_Y^pm]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<[f64; 4]>,
}

fn cmd_mc(cfg: &McConfig, out: Option<&Path>, units: Units) -> Result<()> {
    check_seed(cfg.seed)?;
    let spec = cfg.spec();
    let kernel = spec.build();
    let k = kernel.as_ref();
    let (n, seed, rho) = (cfg.samples, cfg.seed, cfg.rho);
    let closed_form = match spec {
        KernelSpec::Linear { a, b } => {
            let li = LinearInteraction::new(a, b, rho)?;
            let (m, p) = (linear_imin_pid(&li), linear_ipm_pid(&li));
            Some([m.u_x, m.u_y, p.u_x, p.u_y].map(|e| e.to_float()))
        }
        _ => None,
    };
    let report = McReport {
        kernel: spec,
        rho,
        u_x_min: mc_umin_x(k, rho, n, cfg.bins, seed)?,
        u_y_min: mc_umin_y(k, rho, n, cfg.bins, seed)?,
        u_x_pm: mc_upm_x(k, rho, n, seed)?,
        u_y_pm: mc_upm_y(k, rho, n, seed)?,
        u_x_pm_minus: mc_upm_minus_x(k, rho, n, seed)?,
        u_y_pm_minus: mc_upm_minus_y(k, rho, n, seed)?,
        i_txy: infinite_mi_flag(k).to_string(),
        closed_form,
    };
    let f = units.factor::<f64>();
    println!("{} rho = {rho}, n = {n}, seed = {seed} ({units})", k.name());
    let rows = [
        ("U_X^min", &report.u_x_min),
        ("U_Y^min", &report.u_y_min),
        ("U_X^pm", &report.u_x_pm),
        ("U_Y^pm", &report.u_y_pm),
        ("U_X^pm-", &report.u_x_pm_minus),
        ("U_Y^pm-", &report.u_y_pm_minus),
    ];
    for (i, (name, e)) in rows.iter().enumerate() {
        let exact = report
            .closed_form
            .and_then(|c| c.get(i).copied())
            .map(|v| format!("  closed form {:.10}", v * f))
            .unwrap_or_default();
        println!(
            "{name:<8} {:>14.10} ± {:.10}  excluded {}{exact}",
            e.value * f,
            e.std_error * f,
            e.excluded
        );
        for w in &e.warnings {
            eprintln!("warning: {name}: {w}");
        }
    }
    println!("I(T;X,Y) {}", report.i_txy);
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("mc.json");
        pidnet_harness::output::write_json(&path, &report)?;
        write_manifest(dir, "mc", seed, "nats", cfg, &[path])?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}

fn cmd_experiment(id: u8, cfg: &ExperimentConfig, out: &Path, units: Units) -> Result<()> {
    check_seed(cfg.seed)?;
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let f = units.factor::<f64>();
    let files = match id {
        1 => {
            let e = pidnet_harness::run_experiment_1(cfg)?;
            for key in ["S_ipm", "S_imin", "MI"] {
                let s = &e.summary.ranked[key];
                println!(
                    "median ranked {key:<7} interactions {:.4}  others {:.4}",
                    s.interaction.map_or(f64::NAN, |q| q.median),
                    s.other.map_or(f64::NAN, |q| q.median)
                );
            }
            e.write(out)?
        }
        2 => {
            let e = pidnet_harness::run_experiment_2(cfg)?;
            for p in &e.points {
                let s = &p.summary;
                println!(
                    "beta {:<6} S^min true>false {:<5}  S^pm false>true {:<5}  MI false>true {}",
                    s.beta, s.s_min_separates, s.s_pm_false_overtakes, s.mi_false_overtakes
                );
            }
            e.write(out)?
        }
        _ => {
            let e = pidnet_harness::run_experiment_3(cfg)?;
            for p in &e.points {
                println!("alpha {:<5} mean I(T;X,Y) {:.6} ({units})", p.alpha, p.mean_mi * f);
            }
            let s = &e.summary;
            println!("corr(U_Y^min/MI, dy f/c) {:.4}", s.uy_min_taylor_correlation);
            println!("(R^min+S^min)/MI increasing {}", s.rs_min_increasing);
            println!("(R^pm+S^pm)/MI range {:.4}", s.rs_pm_range);
            e.write(out)?
        }
    };
    write_manifest(out, &format!("experiment {id}"), cfg.seed, "nats", cfg, &files)?;
    println!("wrote {} files to {}", files.len() + 1, out.display());
    Ok(())
}
