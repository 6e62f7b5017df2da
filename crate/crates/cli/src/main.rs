//! `ruledsheaves`: compute, verify and export generating functions of sheaves on ruled
//! surfaces.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage, configuration or input error,
//! 3 computation error.

mod config;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use ruled_core::blowup::{blowup_ratio_lf, blowup_ratio_tf, blowup_theta};
use ruled_core::genfun::{betti_extract, pf_from_pfa, pfa_f, Flag, Normalization};
use ruled_core::hall::{try_basis_product, BundleClass};
use ruled_core::surface::{DivisorClass, Polarization, RuledSurface};
use ruled_core::verify::{run_suite, Suite};
use ruled_core::wallcross::{Direction, WallContext, WallCrossing, WallTable};
use ruled_core::{CurveData, Error, Scalar};

use config::ConfigFile;
use output::Format;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
    Verify,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Usage(_) => 2,
            Failure::Compute(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Parse { .. }
            | Error::InvalidCurve(_)
            | Error::Format(_)
            | Error::MissingSeries { .. }
            | Error::WallNotNegative(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(name = "ruledsheaves", version, about = "Motivic generating functions of sheaves on ruled surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-polarized series (or Betti table) for one rank and first Chern class.
    Ruled(RuledArgs),
    /// Run an invariant suite: hall, phi, quot, genfun, wallcross, blowup or all.
    Verify { suite: String },
    /// Hall algebra of P^1.
    Hall {
        #[command(subcommand)]
        op: HallOp,
    },
    /// Blow-up ratio or theta series.
    Blowup(BlowupArgs),
    /// Seed or transform pf tables across a wall.
    Wallcross {
        #[command(subcommand)]
        op: WallOp,
    },
}

#[derive(Subcommand, Debug)]
enum HallOp {
    /// Product of two basis elements, e.g. `hall mul "O(2)" "O(0)"`.
    Mul { left: String, right: String },
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// key = value file; explicit flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long)]
    e: Option<i64>,
    /// Weil polynomial coefficients a_0,...,a_2g (selects explicit curve mode).
    #[arg(long)]
    weil: Option<String>,
    #[arg(long)]
    rank: Option<i64>,
    /// First Chern class as a,b for a C0 + b f.
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    #[arg(long)]
    order: Option<i64>,
    /// Torsion free sheaves (default: locally free).
    #[arg(long, conflicts_with = "lf")]
    tf: bool,
    #[arg(long)]
    lf: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RuledArgs {
    #[command(flatten)]
    common: Common,
    /// Polarization ray m,n for H = m(C0 + e f) + n f; only the fiber ray 0,1 is direct.
    #[arg(long)]
    polarization: Option<String>,
    #[arg(long, value_enum)]
    normalization: Option<NormArg>,
    /// Emit the Betti table instead of the series.
    #[arg(long)]
    betti: bool,
    /// Multiply by q-1 before extracting Betti numbers (implies --betti).
    #[arg(long)]
    gerbe: bool,
}

#[derive(Args, Debug)]
struct BlowupArgs {
    #[command(flatten)]
    common: Common,
    /// c1 . C0 on the blow-up.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Emit only the theta series.
    #[arg(long)]
    theta: bool,
}

#[derive(Args, Debug)]
struct WallArgs {
    #[command(flatten)]
    common: Common,
    /// Wall H as m,n.
    #[arg(long)]
    h: Option<String>,
    /// Perturbation H' as m,n.
    #[arg(long)]
    h_prime: Option<String>,
}

#[derive(Subcommand, Debug)]
enum WallOp {
    /// f-side seed table for every class the crossing needs.
    Seed {
        #[command(flatten)]
        wall: WallArgs,
        /// Extra defect margin, needed by --self-check.
        #[arg(long, default_value_t = 0)]
        margin: i64,
    },
    /// pf_H from a table at H_+ or H_- (or the reverse with --inverse).
    Apply {
        #[command(flatten)]
        wall: WallArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Option<DirArg>,
        #[arg(long)]
        inverse: bool,
        /// Also confirm that enlarging the enumeration bound changes nothing.
        #[arg(long)]
        self_check: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormArg {
    Pf,
    Pfa,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirArg {
    Plus,
    Minus,
}

/// Resolved job parameters.
struct JobConfig {
    surface: RuledSurface,
    curve: CurveData,
    rank: i64,
    c1: DivisorClass,
    order: i64,
    flag: Flag,
    format: Format,
    output: Option<PathBuf>,
}

fn parse_pair(s: &str, what: &str) -> Outcome<(String, String)> {
    let mut it = s.split(',').map(str::trim);
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(Failure::Usage(format!("{what}: expected two comma-separated values, got {s:?}"))),
    }
}

fn parse_class(s: &str) -> Outcome<DivisorClass> {
    let (a, b) = parse_pair(s, "c1")?;
    let a = a.parse().map_err(|_| Failure::Usage(format!("c1: bad integer {a:?}")))?;
    let b = b.parse().map_err(|_| Failure::Usage(format!("c1: bad integer {b:?}")))?;
    Ok(DivisorClass::new(a, b))
}

fn parse_ray(s: &str, what: &str) -> Outcome<Polarization> {
    let (m, n) = parse_pair(s, what)?;
    let m: Rational64 = m.parse().map_err(|_| Failure::Usage(format!("{what}: bad rational {m:?}")))?;
    let n: Rational64 = n.parse().map_err(|_| Failure::Usage(format!("{what}: bad rational {n:?}")))?;
    Ok(Polarization::new(m, n)?)
}

impl Common {
    fn config(&self) -> Outcome<ConfigFile> {
        match &self.config {
            Some(p) => ConfigFile::load(p).map_err(Failure::Usage),
            None => Ok(ConfigFile::default()),
        }
    }

    fn resolve(&self, cfg: &ConfigFile) -> Outcome<JobConfig> {
        let genus = cfg.pick(self.genus, "genus")?.unwrap_or(0);
        let e = cfg.pick(self.e, "e")?.unwrap_or(0);
        let surface = RuledSurface::new(genus, e)?;
        let curve = match cfg.pick_str(self.weil.clone(), "weil") {
            Some(w) => {
                let coeffs = w
                    .split(',')
                    .map(|c| c.trim().parse::<Scalar>())
                    .collect::<Result<Vec<_>, _>>()?;
                CurveData::explicit(genus, coeffs)?
            }
            None => match cfg.get("curve") {
                None | Some("poincare") => CurveData::poincare(genus),
                Some(m) => return Err(Failure::Usage(format!("curve = {m}: explicit mode needs weil = a_0,...,a_2g"))),
            },
        };
        let rank = cfg.pick(self.rank, "rank")?.unwrap_or(1);
        if rank < 1 {
            return Err(Failure::Usage(format!("rank must be positive, got {rank}")));
        }
        let c1 = match cfg.pick_str(self.c1.clone(), "c1") {
            Some(s) => parse_class(&s)?,
            None => DivisorClass::ZERO,
        };
        let order = cfg.pick(self.order, "order")?.unwrap_or(4);
        if order < 0 {
            return Err(Failure::Usage(format!("order must be >= 0, got {order}")));
        }
        let flag = if self.tf {
            Flag::Tf
        } else if self.lf {
            Flag::Lf
        } else {
            match cfg.get("flag") {
                Some(f) => f.parse()?,
                None if cfg.flag_set("tf")? => Flag::Tf,
                None => Flag::Lf,
            }
        };
        let format = match self.format {
            Some(f) => f,
            None => match cfg.get("format") {
                Some(f) => Format::from_str(f, true).map_err(|e| Failure::Usage(format!("format: {e}")))?,
                None => Format::Text,
            },
        };
        let output = self.output.clone().or_else(|| cfg.get("output").map(PathBuf::from));
        Ok(JobConfig {
            surface,
            curve,
            rank,
            c1,
            order,
            flag,
            format,
            output,
        })
    }
}

fn emit(job: &JobConfig, text: &str) -> Outcome<()> {
    match &job.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_ruled(args: &RuledArgs) -> Outcome<()> {
    let cfg = args.common.config()?;
    let job = args.common.resolve(&cfg)?;
    if let Some(p) = cfg.pick_str(args.polarization.clone(), "polarization") {
        let h = parse_ray(&p, "polarization")?;
        if !h.same_ray(&Polarization::fiber()) {
            return Err(Failure::Usage(format!(
                "polarization {h}: only the fiber ray is computed directly; use wallcross for others"
            )));
        }
    }
    let normalization = match args.normalization {
        Some(NormArg::Pf) => Normalization::Pf,
        Some(NormArg::Pfa) => Normalization::Pfa,
        None => match cfg.get("normalization") {
            Some(n) => n.parse()?,
            None => Normalization::Pfa,
        },
    };
    let gerbe = args.gerbe || cfg.flag_set("gerbe")?;
    let betti = args.betti || gerbe || cfg.flag_set("betti")?;
    let mut g = pfa_f(&job.surface, &job.curve, job.rank, job.c1, job.flag, job.order)?;
    if normalization == Normalization::Pf {
        g = pf_from_pfa(&g)?;
    }
    let text = if betti {
        let table = betti_extract(&g, gerbe)?;
        output::betti(&g, &table, job.format)?
    } else {
        output::series(&g, job.format)?
    };
    emit(&job, &text)
}

fn cmd_verify(suite: &str) -> Outcome<()> {
    let suite: Suite = suite.parse()?;
    let mut failed = false;
    for o in run_suite(suite) {
        println!("{o}");
        failed |= !o.passed();
    }
    if failed {
        Err(Failure::Verify)
    } else {
        Ok(())
    }
}

fn cmd_hall(op: &HallOp) -> Outcome<()> {
    match op {
        HallOp::Mul { left, right } => {
            let a: BundleClass = left.parse()?;
            let b: BundleClass = right.parse()?;
            println!("{}", try_basis_product(&a, &b)?);
            Ok(())
        }
    }
}

fn cmd_blowup(args: &BlowupArgs) -> Outcome<()> {
    let cfg = args.common.config()?;
    let job = args.common.resolve(&cfg)?;
    let m = cfg.pick(args.m, "m")?.unwrap_or(0);
    let series = if args.theta || cfg.flag_set("theta")? {
        blowup_theta(job.rank, m, job.order)?
    } else {
        match job.flag {
            Flag::Tf => blowup_ratio_tf(job.rank, m, job.order)?,
            Flag::Lf => blowup_ratio_lf(job.rank, m, job.order)?,
        }
    };
    emit(&job, &output::plain_series(&series, job.format)?)
}

fn wall_job(args: &WallArgs, direction: Direction) -> Outcome<(JobConfig, WallCrossing)> {
    let cfg = args.common.config()?;
    let job = args.common.resolve(&cfg)?;
    let h = cfg
        .pick_str(args.h.clone(), "h")
        .ok_or_else(|| Failure::Usage("wallcross needs --h m,n".into()))?;
    let hp = cfg.pick_str(args.h_prime.clone(), "h-prime").unwrap_or_else(|| "0,1".into());
    let ctx = WallContext::new(job.surface, parse_ray(&h, "h")?, parse_ray(&hp, "h-prime")?, direction)?;
    let wc = WallCrossing::new(ctx, job.rank, job.c1, job.order)?;
    Ok((job, wc))
}

fn cmd_wallcross(op: &WallOp) -> Outcome<()> {
    match op {
        WallOp::Seed { wall, margin } => {
            let (job, wc) = wall_job(wall, Direction::Plus)?;
            let table = WallTable {
                surface: job.surface,
                curve: job.curve.clone(),
                flag: job.flag,
                polarization: wc.ctx.h,
                entries: wc.f_side_seeds(&job.curve, job.flag, *margin)?,
            };
            emit(&job, &(table.to_json()? + "\n"))
        }
        WallOp::Apply {
            wall,
            input,
            direction,
            inverse,
            self_check,
        } => {
            let dir = match direction {
                Some(DirArg::Minus) => Direction::Minus,
                _ => Direction::Plus,
            };
            let (job, wc) = wall_job(wall, dir)?;
            let text = fs::read_to_string(input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let table = WallTable::from_json(&text)?;
            if table.surface != job.surface {
                return Err(Failure::Usage(format!(
                    "input table is on {}, job is on {}",
                    table.surface, job.surface
                )));
            }
            if *self_check && !wc.self_check(&table.entries)? {
                return Err(Failure::Compute("enlarging the decomposition bound changed the result".into()));
            }
            let entries = if *inverse {
                wc.inverse(&table.entries)?
            } else {
                wc.forward(&table.entries)?
            };
            let out = WallTable {
                polarization: wc.ctx.h,
                entries,
                ..table
            };
            emit(&job, &(out.to_json()? + "\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ruled(a) => cmd_ruled(a),
        Command::Verify { suite } => cmd_verify(suite),
        Command::Hall { op } => cmd_hall(op),
        Command::Blowup(a) => cmd_blowup(a),
        Command::Wallcross { op } => cmd_wallcross(op),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Compute(m) => eprintln!("computation failed: {m}"),
                Failure::Verify => eprintln!("verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
