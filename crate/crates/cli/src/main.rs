mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exactalg::Integer;

use crate::input::Input;
use crate::report::Outcome;

#[derive(Parser, Debug)]
#[command(name = "hexapod-cli", version, about = "Mobility analysis of hexapods with liaison platforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// JSON description of the hexapod.
    #[arg(long, global = true, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Bundled data set: example, generic or tuple-a.
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Denominator bound for rational reconstruction, e.g. 1e12.
    #[arg(long, global = true, default_value = "1e12")]
    pub den_bound: String,
    /// Euler parameter chart for sampling: e3, e2, e1 or auto.
    #[arg(long, global = true, default_value = "auto")]
    pub chart: String,
    /// Index pairs for the octics, e.g. 5-6,4-6,3-6.
    #[arg(long, global = true, default_value = "5-6,4-6,3-6")]
    pub pairs: String,
    /// Parameter slices for sampling the self-motion.
    #[arg(long, global = true, default_value_t = 200)]
    pub slices: usize,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Directory for the JSON report and CSV files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the photographic map and report the quadric pencil.
    Moebius,
    /// Check that the platform is the liaison partner of the base.
    Verify,
    /// Scaling factors for which every bond is tangent (Tang2).
    Gamma,
    /// Squared legs for which the tangency is of third order (Tang3).
    Legs,
    /// Movability certificate for the given legs.
    Certify,
    /// Quartics, common cubic, motion polynomial and sampled poses.
    Motion,
    /// Generate a member of one of the two movable families.
    Family {
        #[arg(value_enum)]
        kind: FamilyKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the liaison and Study checks on the instance.
        #[arg(long)]
        check: bool,
    },
    /// Full pipeline on a base and platform pair.
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FamilyKind {
    Lines,
    Order3,
}

impl Opts {
    pub fn den_bound(&self) -> Result<Integer, String> {
        let s = self.den_bound.trim();
        let v = match s.split_once(['e', 'E']) {
            Some((m, e)) => {
                let m: u64 = m.parse().map_err(|_| format!("bad --den-bound {s:?}"))?;
                let e: u32 = e.parse().map_err(|_| format!("bad --den-bound {s:?}"))?;
                Integer::from(m) * Integer::from(Integer::u_pow_u(10, e))
            }
            None => s.parse::<Integer>().map_err(|_| format!("bad --den-bound {s:?}"))?,
        };
        if v < 1 {
            return Err("--den-bound must be positive".into());
        }
        Ok(v)
    }

    pub fn pairs(&self) -> Result<Vec<(usize, usize)>, String> {
        self.pairs
            .split(',')
            .map(|p| {
                let (m, n) = p.trim().split_once('-').ok_or(format!("bad pair {p:?}"))?;
                let m: usize = m.parse().map_err(|_| format!("bad pair {p:?}"))?;
                let n: usize = n.parse().map_err(|_| format!("bad pair {p:?}"))?;
                Ok((m, n))
            })
            .collect()
    }

    fn load(&self) -> Result<Input, String> {
        match (&self.input, &self.fixture) {
            (Some(p), _) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                input::parse(&text)
            }
            (None, Some(f)) => input::bundled(f),
            (None, None) => Err("provide --input FILE or --fixture NAME".into()),
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, report::Failure> {
    let o = &cli.opts;
    if let Some(n) = o.workers {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(|e| report::Failure::input(e.to_string()))?;
    }
    if let Command::Family { kind, seed, check } = &cli.command {
        return report::family(*kind, *seed, *check, o);
    }
    let inp = o.load().map_err(report::Failure::input)?;
    match cli.command {
        Command::Moebius => report::moebius(&inp, o),
        Command::Verify => report::verify(&inp, o),
        Command::Gamma => report::gamma(&inp, o),
        Command::Legs => report::legs(&inp, o),
        Command::Certify => report::certify(&inp, o),
        Command::Motion => report::motion(&inp, o),
        Command::All => report::all(&inp, o),
        Command::Family { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = out.emit(cli.opts.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.pass { 0 } else { 2 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
