use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use superdescent_cli::{
    load_curve, read_json, render, run, verify_report, CliError, CliResult, Command, Format, Overrides, RunConfig,
};

/// Descent on ℓ-th power twists of superelliptic curves over F_q(t).
///
/// Exit codes: 0 success, 1 violations found, 2 usage or parameter error,
/// 3 search exhausted.
#[derive(Parser, Debug)]
#[command(name = "superdescent", version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Echoed in the report; results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Re-run a JSON report and compare it byte for byte.
    #[arg(long, value_name = "REPORT")]
    verify: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(clap::Args, Debug)]
struct CurveArgs {
    /// Curve file: {"q", "r", "ell", "f", "designated_root"}.
    #[arg(long)]
    curve: PathBuf,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    ell: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Reciprocity sweep over all coprime monic pairs.
    Reciprocity {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        maxdeg: usize,
    },
    /// Per-degree 𝒟_W tables for a constant irreducible f.
    Density {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        maxdeg: usize,
        /// JSON array of polynomials over k' (element encodings, low degree first).
        #[arg(long)]
        w: Option<PathBuf>,
    },
    /// Twists with equal norm kernels, optionally with a point search.
    FindTwists {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        maxdeg: usize,
        /// Height bound for the point search on each twist.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Selmer growth by successive twists.
    GrowSelmer {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        maxdeg: usize,
    },
    /// Admissible A ≤ AMAX for cubic twists.
    CubicAdmissible {
        #[arg(long)]
        amax: u64,
    },
    /// Check the Fermat curve model for ℓ and D.
    FermatCheck {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        d: i64,
    },
    /// 𝒟_W membership over Z or Z[ω] for primes q ≤ QMAX.
    DwNf {
        /// JSON array of integer coefficients of monic f, low degree first.
        #[arg(long)]
        f: PathBuf,
        /// JSON array of {"field_index", "element"} entries.
        #[arg(long)]
        w: Option<PathBuf>,
        #[arg(long)]
        qmax: u64,
        #[arg(long, default_value_t = 2)]
        ell: u64,
    },
}

fn config_from(cli: &Cli, sub: &Sub) -> CliResult<RunConfig> {
    let mut curve_path = None;
    let mut overrides = Overrides::default();
    let mut curve = |args: &CurveArgs| {
        curve_path = Some(args.curve.display().to_string());
        overrides = Overrides {
            q: args.q,
            r: args.r,
            ell: args.ell,
        };
        load_curve(&args.curve, &overrides)
    };
    let command = match sub {
        Sub::Reciprocity { q, r, n, maxdeg } => Command::Reciprocity {
            q: *q,
            r: *r,
            n: *n,
            maxdeg: *maxdeg,
        },
        Sub::Density { curve: c, maxdeg, w } => Command::Density {
            curve: curve(c)?,
            maxdeg: *maxdeg,
            w: w.as_deref().map(read_json).transpose()?.unwrap_or_default(),
        },
        Sub::FindTwists { curve: c, maxdeg, bound } => Command::FindTwists {
            curve: curve(c)?,
            maxdeg: *maxdeg,
            bound: *bound,
        },
        Sub::GrowSelmer { curve: c, steps, maxdeg } => Command::GrowSelmer {
            curve: curve(c)?,
            steps: *steps,
            maxdeg: *maxdeg,
        },
        Sub::CubicAdmissible { amax } => Command::CubicAdmissible { amax: *amax },
        Sub::FermatCheck { ell, d } => Command::FermatCheck { ell: *ell, d: *d },
        Sub::DwNf { f, w, qmax, ell } => Command::DwNf {
            f: read_json(f)?,
            w: w.as_deref().map(read_json).transpose()?.unwrap_or_default(),
            qmax: *qmax,
            ell: *ell,
        },
    };
    Ok(RunConfig {
        command,
        curve_path,
        overrides,
        seed: cli.seed,
        format: cli.format,
    })
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main_inner(cli: &Cli) -> CliResult<i32> {
    if let Some(path) = &cli.verify {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let v = verify_report(&text)?;
        emit(cli, &(serde_json::to_string_pretty(&v)? + "\n"))?;
        return Ok(if v.config_hash_ok && v.identical { 0 } else { 1 });
    }
    let sub = cli
        .command
        .as_ref()
        .ok_or_else(|| CliError::Usage("a subcommand or --verify is required".into()))?;
    let report = run(&config_from(cli, sub)?)?;
    emit(cli, &render(&report)?)?;
    for v in &report.status.violations {
        eprintln!("violation: {v}");
    }
    Ok(report.status.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
