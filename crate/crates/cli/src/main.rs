//! `hwpkit` command-line front end.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hwpkit::dihedral::{wx_function, wz_function, Axis, DihedralRep};
use hwpkit::frames::{bargmann, build_frame, validate_fiducial, FrameKind};
use hwpkit::group::{self, DihedralElement, GroupClosure, GroupElement};
use hwpkit::io::{load_ket, load_operator, table_rows, MatrixFile};
use hwpkit::noise::{run_experiment, NoiseConfig, NoiseKind};
use hwpkit::operators::{self as ops, projector, Operator};
use hwpkit::verify::{self, Fault, Suite, VerifyOptions};
use hwpkit::wigner::unified_ww_named;
use hwpkit::{presets, Dim};

use render::{Format, Output};

#[derive(Parser, Debug)]
#[command(
    name = "hwpkit",
    version,
    about = "Heisenberg-Weyl-parity toolkit for odd-dimensional qudits"
)]
struct Cli {
    /// Odd dimension d ≥ 3.
    #[arg(long, global = true)]
    d: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Round console output to this many decimals. Files keep full precision.
    #[arg(long, global = true)]
    round: Option<u32>,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump an operator matrix.
    Ops(OpsArgs),
    /// Derived series, nilpotency and semidirect checks of a finite group.
    Group(GroupArgs),
    /// Dihedral representation matrices or the 𝔚_Z / 𝔚_X functions of an operator.
    Dihedral(DihedralArgs),
    /// Bargmann coefficients and Q-function of a state in a coherent frame.
    Frame(FrameArgs),
    /// Unified Wigner-Weyl table of an operator.
    Ww(WwArgs),
    /// Noisy reconstruction experiment, d² frame against 2d² frame.
    Noise(NoiseArgs),
    /// Run the named identity suites.
    Verify(VerifyArgs),
    /// The d = 3 reference table of coefficients, Q-function and unified function.
    Table1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpName {
    Fourier,
    Clock,
    Shift,
    Parity,
    Position,
    Momentum,
    Displacement,
    DisplacedParity,
    Dp,
    ParityEven,
    ParityOdd,
    Hamiltonian,
}

#[derive(Args, Debug)]
struct OpsArgs {
    #[arg(value_enum)]
    name: OpName,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    alpha: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    beta: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    gamma: i64,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    nu: u8,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupName {
    Hwp,
    Hw,
    Dihedral,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, value_enum, default_value_t = GroupName::Hwp)]
    group: GroupName,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AxisArg {
    Z,
    X,
}

#[derive(Args, Debug)]
struct DihedralArgs {
    #[arg(long, value_enum, default_value_t = AxisArg::Z)]
    axis: AxisArg,
    /// Tabulate 𝔚_Z or 𝔚_X of this operator instead of dumping a matrix.
    #[arg(long)]
    operator: Option<PathBuf>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    nu: u8,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Hw,
    Hwp,
}

#[derive(Args, Debug)]
struct FrameArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Hwp)]
    kind: KindArg,
    /// Fiducial ket file; defaults to the reference fiducial for d = 3 or 5.
    #[arg(long)]
    fiducial: Option<PathBuf>,
    /// State ket file; defaults to the reference state for d = 3 or 5.
    #[arg(long)]
    state: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WwArgs {
    /// Operator matrix file.
    #[arg(long)]
    operator: PathBuf,
}

#[derive(Args, Debug)]
struct NoiseArgs {
    /// Use the reference vectors for d = 3 or d = 5.
    #[arg(long, alias = "reference-vectors")]
    paper_vectors: bool,
    #[arg(long)]
    fiducial: Option<PathBuf>,
    #[arg(long)]
    state: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    amplitude: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Complex noise with independent uniform real and imaginary parts.
    #[arg(long)]
    complex: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Operators,
    Group,
    Frames,
    Ww,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    UnifiedFourierSign,
    CorruptMultiplication,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, hide = true, value_enum)]
    inject_fault: Option<FaultArg>,
}

fn dim(cli: &Cli) -> Result<Dim> {
    Ok(Dim::new(cli.d.unwrap_or(3))?)
}

fn op_matrix(d: Dim, a: &OpsArgs) -> Result<Operator> {
    let (al, be, ga) = (d.elem(a.alpha), d.elem(a.beta), d.elem(a.gamma));
    Ok(match a.name {
        OpName::Fourier => ops::fourier(d),
        OpName::Clock => ops::clock_z(if a.alpha == 0 { d.one() } else { al }),
        OpName::Shift => ops::shift_x(if a.beta == 0 { d.one() } else { be }),
        OpName::Parity => ops::parity(d),
        OpName::Position => ops::position_op(d),
        OpName::Momentum => ops::momentum_op(d),
        OpName::Displacement => ops::displacement(al, be, ga),
        OpName::DisplacedParity => ops::displaced_parity(al, be),
        OpName::Dp => ops::dp_operator(al, be, ga, a.nu),
        OpName::ParityEven => ops::parity_projectors(d).0,
        OpName::ParityOdd => ops::parity_projectors(d).1,
        OpName::Hamiltonian => ops::principal_log_hamiltonian(&ops::dp_operator(al, be, ga, a.nu))?,
    })
}

fn series_json<E: GroupElement>(name: &str, d: Dim, g: &GroupClosure<E>) -> Result<Value> {
    let derived = group::derived_series(g)?;
    let (lower, nilpotent) = group::lower_central_series(g)?;
    Ok(json!({
        "group": name,
        "d": d.get(),
        "order": g.len(),
        "derived_series_sizes": group::sizes(&derived),
        "lower_central_series_sizes": group::sizes(&lower),
        "nilpotent": nilpotent,
    }))
}

fn cmd_group(d: Dim, a: &GroupArgs) -> Result<Value> {
    let semi = group::semidirect_checks(d)?;
    let (mut v, passed) = match a.group {
        GroupName::Hwp => {
            let mut g = group::hwp_group(d)?;
            let closed = g.verify_closure();
            let mut v = series_json("HWP", d, &g)?;
            v["checks"] = json!({ "closure": closed, "semidirect": semi.hwp });
            (v, closed && semi.hwp.passed())
        }
        GroupName::Hw => {
            let g = group::hw_group(d)?;
            let mut v = series_json("HW", d, &g)?;
            v["checks"] = json!({ "normal_in_hwp": semi.hwp.normal });
            (v, semi.hwp.normal)
        }
        GroupName::Dihedral => {
            let g = group::dihedral_group(d)?;
            let mut v = series_json("dihedral", d, &g)?;
            v["checks"] = json!({ "semidirect": semi.dihedral });
            (v, semi.dihedral.passed())
        }
    };
    v["passed"] = json!(passed);
    Ok(v)
}

fn cmd_dihedral(d: Dim, a: &DihedralArgs) -> Result<Output> {
    let axis = match a.axis {
        AxisArg::Z => Axis::Z,
        AxisArg::X => Axis::X,
    };
    let Some(path) = &a.operator else {
        let m = DihedralRep::new(axis, d).rep(&DihedralElement::new(d.elem(a.a), a.nu));
        return Ok(Output::Matrix(MatrixFile::from_operator(&m)));
    };
    let theta = load_operator(path)?;
    let dt = Dim::new(theta.nrows() as u32)?;
    let mut rows = vec![];
    for nu in 0..2u8 {
        for x in dt.centered_residues() {
            let v = match axis {
                Axis::Z => wz_function(&theta, x, nu),
                Axis::X => wx_function(&theta, x, nu),
            };
            rows.push(json!({ "nu": nu, "a": x.centered(), "re": v.re, "im": v.im }));
        }
    }
    Ok(Output::Records(rows))
}

fn reference_vectors(d: Dim) -> Result<(hwpkit::Ket, hwpkit::Ket)> {
    presets::vectors_for(d.get())
        .with_context(|| format!("no reference vectors for d = {}; pass --state and --fiducial", d.get()))
}

fn chosen_vectors(d: Dim, state: &Option<PathBuf>, fiducial: &Option<PathBuf>) -> Result<(hwpkit::Ket, hwpkit::Ket)> {
    match (state, fiducial) {
        (Some(f), Some(s)) => Ok((load_ket(f)?, load_ket(s)?)),
        (None, None) => reference_vectors(d),
        _ => bail!("--state and --fiducial must be given together"),
    }
}

fn cmd_frame(d: Dim, a: &FrameArgs) -> Result<Output> {
    let (f, s) = chosen_vectors(d, &a.state, &a.fiducial)?;
    let kind = match a.kind {
        KindArg::Hw => FrameKind::Hw,
        KindArg::Hwp => FrameKind::Hwp,
    };
    let fid = validate_fiducial(&s)?;
    let frame = build_frame(kind, &fid);
    Ok(Output::Table(table_rows(Some(&bargmann(&frame, &f)), None)))
}

fn cmd_noise(d: Dim, seed: u64, a: &NoiseArgs) -> Result<Value> {
    let (f, s) = if a.paper_vectors {
        if a.state.is_some() || a.fiducial.is_some() {
            bail!("--paper-vectors conflicts with --state/--fiducial");
        }
        reference_vectors(d)?
    } else {
        chosen_vectors(d, &a.state, &a.fiducial)?
    };
    if !(a.amplitude >= 0.0 && a.amplitude.is_finite()) || a.trials == 0 {
        bail!("amplitude must be finite and non-negative, trials at least 1");
    }
    let kind = if a.complex {
        NoiseKind::ComplexUniform
    } else {
        NoiseKind::RealUniform
    };
    let cfg = NoiseConfig {
        amplitude: a.amplitude,
        trials: a.trials,
        seed,
        kind,
    };
    let r = run_experiment(&f, &s, &cfg)?;
    Ok(json!({
        "d": d.get(),
        "amplitude": cfg.amplitude,
        "trials": cfg.trials,
        "seed": seed,
        "noise": cfg.kind,
        "mean_e1": r.hw.mean,
        "std_e1": r.hw.std,
        "mean_e2": r.hwp.mean,
        "std_e2": r.hwp.std,
        "e2_lt_e1": r.e2_lt_e1(),
    }))
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Result<(Value, bool)> {
    let suite = match a.suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Operators => Suite::Operators,
        SuiteArg::Group => Suite::Group,
        SuiteArg::Frames => Suite::Frames,
        SuiteArg::Ww => Suite::Ww,
    };
    let mut opts = VerifyOptions {
        seed: cli.seed,
        ..Default::default()
    };
    if cli.d.is_some() {
        let d = dim(cli)?;
        opts.dims = vec![d];
        opts.group_dims = if d.get() <= group::MAX_EXHAUSTIVE_D {
            vec![d]
        } else {
            vec![]
        };
    }
    opts.fault = a.inject_fault.map(|f| match f {
        FaultArg::UnifiedFourierSign => Fault::UnifiedFourierSign,
        FaultArg::CorruptMultiplication => Fault::CorruptMultiplication,
    });
    let report = verify::run(suite, &opts)?;
    let passed = report.passed;
    Ok((serde_json::to_value(&report)?, passed))
}

fn cmd_table1() -> Result<Output> {
    let d = Dim::new(3)?;
    let (f, s) = reference_vectors(d)?;
    let frame = build_frame(FrameKind::Hwp, &validate_fiducial(&s)?);
    let ww = unified_ww_named(&projector(&f), "|f⟩⟨f|")?;
    Ok(Output::Table(table_rows(Some(&bargmann(&frame, &f)), Some(&ww))))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let mut code = ExitCode::SUCCESS;
    let output = match &cli.command {
        Command::Ops(a) => Output::Matrix(MatrixFile::from_operator(&op_matrix(dim(cli)?, a)?)),
        Command::Group(a) => {
            let v = cmd_group(dim(cli)?, a)?;
            if v["passed"] != Value::Bool(true) {
                code = ExitCode::from(1);
            }
            Output::Json(v)
        }
        Command::Dihedral(a) => cmd_dihedral(dim(cli)?, a)?,
        Command::Frame(a) => cmd_frame(dim(cli)?, a)?,
        Command::Ww(a) => {
            let theta = load_operator(&a.operator)?;
            Output::Table(table_rows(
                None,
                Some(&unified_ww_named(&theta, &a.operator.display().to_string())?),
            ))
        }
        Command::Noise(a) => Output::Json(cmd_noise(dim(cli)?, cli.seed, a)?),
        Command::Verify(a) => {
            let (v, passed) = cmd_verify(cli, a)?;
            if !passed {
                code = ExitCode::from(1);
            }
            Output::Json(v)
        }
        Command::Table1 => {
            if cli.d.is_some_and(|d| d != 3) {
                bail!("table1 is defined for d = 3 only");
            }
            cmd_table1()?
        }
    };
    output.emit(cli.format, cli.round, cli.out.as_deref())?;
    Ok(code)
}

fn init_threads() {
    if let Some(n) = std::env::var("HWPKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
