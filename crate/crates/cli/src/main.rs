use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gsl_core::config::{Caps, ReportFormat, RunConfig};
use gsl_core::format::{read_fz, read_gsr, write_fz, write_gamma, write_semiring, FormatError, Structure};
use gsl_core::fuzzy::{enumerate_crisp_ideals, enumerate_fuzzy_ideals};
use gsl_core::matrix::{build_matrix_gamma, MatrixValidation};
use gsl_core::structure::{
    boolean_semiring, from_semiring, gen_instance, validate_gamma_semiring, validate_semiring, zero_product,
    zn_semiring, InstanceKind,
};
use gsl_core::transfer::{lift_plusprime, lift_starprime, restrict_plus, restrict_star};
use gsl_core::verify::{run_suite, verify_theorem_3_17, ReportDocument, ReportHeader, Suite, SCALE_NOTE};
use gsl_core::{build_operator_semiring, FiniteStructure, GammaSemiring, GradeChain, IdealKind, Side};

#[derive(Parser)]
#[command(name = "gsl", version, about = "Γ-semirings, operator semirings and fuzzy ideal transfer")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Boolean,
    Zn,
    Zero,
    FromSemiring,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Plus,
    Plusprime,
    Star,
    Starprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance in .gsr format.
    Gen {
        kind: GenKind,
        /// Modulus for `zn`.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Semiring file for `from-semiring`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Emit the plain semiring (boolean or zn) instead of a Γ-semiring.
        #[arg(long)]
        semiring: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parse and check every axiom.
    Validate { file: PathBuf },
    /// Build the left or right operator semiring.
    Operators {
        file: PathBuf,
        #[arg(long, default_value = "left")]
        side: Side,
        /// Print the addition and multiplication tables.
        #[arg(long)]
        dump: bool,
    },
    /// List crisp or fuzzy ideals.
    Ideals {
        file: PathBuf,
        #[arg(long)]
        fuzzy: bool,
        #[arg(long, default_value = "0,1/2,1")]
        chain: GradeChain,
        #[arg(long, default_value = "two")]
        kind: IdealKind,
    },
    /// Apply a transfer map to a fuzzy subset.
    Transfer {
        file: PathBuf,
        #[arg(long)]
        subset: PathBuf,
        #[arg(long, value_enum)]
        map: MapKind,
    },
    /// Build the matrix Γₙ-semiring.
    Matrix {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value = "0,1/2,1")]
        chain: GradeChain,
        #[arg(long, default_value = "two")]
        kind: IdealKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
        /// Leave per-suite wall-clock times out of the output.
        #[arg(long)]
        no_timing: bool,
    },
}

fn load(path: &Path) -> Result<Structure> {
    read_gsr(path).map_err(|e| anyhow::Error::new(Tagged(e)))
}

fn load_gamma(path: &Path) -> Result<GammaSemiring> {
    match load(path)? {
        Structure::Gamma(g) => Ok(g),
        Structure::Semiring(_) => bail!("{} holds a semiring; this command needs a Γ-semiring", path.display()),
    }
}

/// Format errors rendered with their class code.
#[derive(Debug)]
struct Tagged(FormatError);

impl std::fmt::Display for Tagged {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {}", self.0.code(), self.0)
    }
}

impl std::error::Error for Tagged {}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(kind: GenKind, n: usize, input: Option<PathBuf>, semiring: bool, output: Option<PathBuf>) -> Result<u8> {
    let text = if semiring {
        match kind {
            GenKind::Boolean => write_semiring(&boolean_semiring()),
            GenKind::Zn => write_semiring(&zn_semiring(n)?),
            _ => bail!("--semiring is available for `boolean` and `zn` only"),
        }
    } else {
        let g = match kind {
            GenKind::Boolean => gen_instance(InstanceKind::Boolean)?,
            GenKind::Zn => gen_instance(InstanceKind::Zn(n))?,
            GenKind::Zero => zero_product(),
            GenKind::FromSemiring => {
                let path = input.context("`from-semiring` needs --input <semiring.gsr>")?;
                match load(&path)? {
                    Structure::Semiring(r) => from_semiring(&r)?,
                    Structure::Gamma(_) => bail!("{} is not a semiring file", path.display()),
                }
            }
        };
        write_gamma(&g)
    };
    emit(output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_validate(file: &Path) -> Result<u8> {
    match read_gsr(file) {
        Ok(Structure::Gamma(g)) => {
            debug_assert!(validate_gamma_semiring(&g).is_ok());
            println!("valid Γ-semiring {}: |S|={} |Γ|={}", g.name(), g.s_len(), g.g_len());
            Ok(0)
        }
        Ok(Structure::Semiring(r)) => {
            debug_assert!(validate_semiring(&r).is_ok());
            println!("valid semiring {}: |R|={}", r.name(), r.len());
            Ok(0)
        }
        Err(e @ FormatError::Axiom { .. }) => {
            println!("invalid: {e}");
            Ok(1)
        }
        Err(e) => Err(Tagged(e).into()),
    }
}

fn cmd_operators(file: &Path, side: Side, dump: bool, caps: &Caps) -> Result<u8> {
    let g = load_gamma(file)?;
    let op = build_operator_semiring(&g, side, caps)?;
    let label = if side == Side::Left { "L" } else { "R" };
    println!("|{label}| = {}", op.len());
    match op.find_unity() {
        Some(u) => println!("unity: {} = {}", op.ids()[u], op.provenance_string(u, g.g_ids())),
        None => println!("unity: none"),
    }
    for i in 0..op.len() {
        let values: Vec<&str> = op.element(i).values.iter().map(|&v| g.s_ids()[v as usize].as_str()).collect();
        println!("{} = {}  ({})", op.ids()[i], op.provenance_string(i, g.g_ids()), values.join(" "));
    }
    if dump {
        println!();
        print!("{}", write_semiring(op.semiring()));
    }
    Ok(0)
}

fn list_ideals<S: FiniteStructure + ?Sized>(s: &S, fuzzy: bool, chain: &GradeChain, kind: IdealKind, caps: &Caps) -> Result<()> {
    if fuzzy {
        let all = enumerate_fuzzy_ideals(s, chain, kind, caps.enumeration)?;
        println!("{} fuzzy {kind} ideals over chain {chain}", all.len());
        for mu in all {
            let cells: Vec<String> = s.ids().iter().zip(mu.labels()).map(|(id, g)| format!("{id}:{g}")).collect();
            println!("{}", cells.join(" "));
        }
    } else {
        let all = enumerate_crisp_ideals(s, kind, caps.enumeration)?;
        println!("{} {kind} ideals", all.len());
        for i in all {
            println!("{{{}}}", i.ids(s.ids()).join(","));
        }
    }
    Ok(())
}

fn cmd_transfer(file: &Path, subset: &Path, map: MapKind, caps: &Caps) -> Result<u8> {
    let g = load_gamma(file)?;
    let side = match map {
        MapKind::Plus | MapKind::Plusprime => Side::Left,
        MapKind::Star | MapKind::Starprime => Side::Right,
    };
    let op = build_operator_semiring(&g, side, caps)?;
    let (input_ids, output_ids) = match map {
        MapKind::Plus | MapKind::Star => (op.ids(), g.s_ids()),
        MapKind::Plusprime | MapKind::Starprime => (g.s_ids(), op.ids()),
    };
    let mu = read_fz(subset, input_ids).map_err(Tagged)?;
    let image = match map {
        MapKind::Plus => restrict_plus(&op, &mu)?,
        MapKind::Plusprime => lift_plusprime(&op, &mu)?,
        MapKind::Star => restrict_star(&op, &mu)?,
        MapKind::Starprime => lift_starprime(&op, &mu)?,
    };
    print!("{}", write_fz(&image, output_ids));
    Ok(0)
}

fn cmd_matrix(file: &Path, n: usize, out: Option<PathBuf>, caps: &Caps) -> Result<u8> {
    let g = load_gamma(file)?;
    let m = build_matrix_gamma(&g, n, caps)?;
    println!("{}: |S_n|={} |Γ_n|={}", m.gamma.name(), m.s_len(), m.g_len());
    match m.validation {
        MatrixValidation::Passed => println!("axioms: pass"),
        MatrixValidation::Skipped { work, cap } => println!("axioms: skipped ({work} evaluations above cap {cap})"),
    }
    if let Some(path) = out {
        emit(Some(&path), &write_gamma(&m.gamma))?;
    }
    Ok(0)
}

fn cmd_verify(file: &Path, suite: Suite, kind: IdealKind, cfg: &RunConfig, no_timing: bool) -> Result<u8> {
    let (instance, reports) = match load(file)? {
        Structure::Gamma(g) => (g.name().to_string(), run_suite(&g, suite, cfg, kind)),
        Structure::Semiring(r) => {
            if suite != Suite::Th317 {
                bail!("{} holds a semiring; only `--suite th3.17` applies to it", file.display());
            }
            (r.name().to_string(), vec![verify_theorem_3_17(&r, &cfg.chain, &cfg.caps)?])
        }
    };
    let header = ReportHeader { instance, chain: cfg.chain.clone(), n: cfg.n, caps: (&cfg.caps).into(), scale: SCALE_NOTE };
    let doc = ReportDocument::new(header, reports);
    match cfg.format {
        ReportFormat::Json => print!("{}", doc.to_json(!no_timing)),
        ReportFormat::Text => print!("{}", doc.to_text(!no_timing)),
    }
    Ok(if doc.any_failed() { 1 } else { 0 })
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("cannot configure the thread pool")?;
    }
    let caps = Caps::from_env();
    match cli.cmd {
        Cmd::Gen { kind, n, input, semiring, output } => cmd_gen(kind, n, input, semiring, output),
        Cmd::Validate { file } => cmd_validate(&file),
        Cmd::Operators { file, side, dump } => cmd_operators(&file, side, dump, &caps),
        Cmd::Ideals { file, fuzzy, chain, kind } => {
            match load(&file)? {
                Structure::Gamma(g) => list_ideals(&g, fuzzy, &chain, kind, &caps)?,
                Structure::Semiring(r) => list_ideals(&r, fuzzy, &chain, kind, &caps)?,
            }
            Ok(0)
        }
        Cmd::Transfer { file, subset, map } => cmd_transfer(&file, &subset, map, &caps),
        Cmd::Matrix { file, n, emit } => cmd_matrix(&file, n, emit, &caps),
        Cmd::Verify { file, suite, chain, kind, n, report, no_timing } => {
            let format = match report {
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
            };
            let cfg = RunConfig { chain, n, caps, format, parallelism: cli.threads };
            cmd_verify(&file, suite, kind, &cfg, no_timing)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
