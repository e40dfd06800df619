//! The `eaqecc` command line.
//!
//! Exit status is 0 on success, 1 on a domain error (bad code file, failed
//! precondition, exhausted budget, failed certification) and 2 on a usage
//! error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::addcodes::{AdditiveCode, DualityForm, Strategy, DEFAULT_BUDGET};
use crate::eaqec::{self, CombinationParams, EAQECCParams, QECCParams, SearchOptions};
use crate::error::{Error, Result};
use crate::fidelity::{self, CodeShape, PairShape};
use crate::gf::FieldSpec;
use crate::pauli;
use crate::text;

#[derive(Parser, Debug)]
#[command(name = "eaqecc", version, about = "Entanglement-assisted quantum code toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Seed for randomized subroutines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of words any distance enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Worker threads for distance enumeration (0 = all cores). When unset
    /// the single-threaded odometer is used.
    #[arg(long, global = true, env = "EAQECC_THREADS")]
    threads: Option<usize>,
}

impl Global {
    fn search(&self) -> SearchOptions {
        let strategy = match self.threads {
            None | Some(1) => Strategy::Full,
            Some(t) => Strategy::Partitioned { threads: t },
        };
        SearchOptions { budget: self.budget, strategy }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Trace,
    Alternating,
}

impl From<FormArg> for DualityForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Trace => DualityForm::Trace,
            FormArg::Alternating => DualityForm::Alternating,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Full,
    Partitioned,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// EA parameters [[n,k,d;c]]_q of an additive code file.
    Analyze {
        code: PathBuf,
        /// Skip the distance enumeration.
        #[arg(long)]
        no_distance: bool,
    },
    /// Split a code into its radical and an ACD complement.
    Decompose {
        code: PathBuf,
        #[arg(long, value_enum, default_value = "alternating")]
        form: FormArg,
    },
    /// Minimum weight of a code, optionally over code \ excluded.
    Mindist {
        code: PathBuf,
        #[arg(long)]
        exclude: Option<PathBuf>,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
    },
    /// Block construction [[G, 0], [G2, E]] from three matrix files over GF(q^2).
    Combine {
        g: PathBuf,
        g2: PathBuf,
        e: PathBuf,
        /// Also write the constructed code to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a sender/receiver pair, from code files or from parameters.
    Match {
        alice: Option<PathBuf>,
        bob: Option<PathBuf>,
        /// Sender parameters `n,k,d,c`.
        #[arg(long, conflicts_with_all = ["alice", "bob"], requires = "bob_params")]
        alice_params: Option<String>,
        /// Receiver parameters `m,k,d`.
        #[arg(long, conflicts_with_all = ["alice", "bob"], requires = "alice_params")]
        bob_params: Option<String>,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Built-in combination parameter tables as CSV.
    Tables {
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Fidelity of a code C against a sender/receiver pair D over a p_a grid.
    Fidelity {
        /// C as `N,d`.
        #[arg(long = "c")]
        c: CodeShape,
        /// Sender code as `n,d`.
        #[arg(long)]
        ea: CodeShape,
        /// Receiver code as `m,d_b`.
        #[arg(long)]
        b: CodeShape,
        #[arg(long, default_value = "0.01")]
        lambda: String,
        /// `start:stop:count`, both ends included.
        #[arg(long, default_value = "0.001:0.1:100")]
        grid: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Print the crossover λ at this p_a instead of the curve.
        #[arg(long)]
        crossover: Option<String>,
    },
    /// Certify the Pauli commutation relation and codespace dimensions.
    VerifyPauli {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Describe a field and print its tables.
    PrintField { order: usize },
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_list(s: &str, len: usize, what: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Range(format!("bad {what} `{s}`")))?;
    if v.len() != len {
        return Err(Error::Range(format!("{what} needs {len} comma-separated values")));
    }
    Ok(v)
}

fn render_match(p: &CombinationParams) -> String {
    format!("{} + {}\nmatch={}\n", p.alice, p.bob, p.class)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { code, no_distance } => {
            let c = AdditiveCode::read(code)?;
            let search = (!no_distance).then(|| g.search());
            writeln!(out, "{}", eaqec::analyze(&c, search)?)?;
        }
        Command::Decompose { code, form } => {
            let c = AdditiveCode::read(code)?;
            let d = c.radical_decompose((*form).into());
            let half = d.c().map(|c| c.to_string()).unwrap_or_else(|| "undefined".into());
            writeln!(out, "l={} c={} m={}", d.l, half, c.exponent())?;
            writeln!(out, "# radical")?;
            write!(out, "{}", d.radical.to_text())?;
            writeln!(out, "# complement")?;
            write!(out, "{}", d.complement.to_text())?;
        }
        Command::Mindist { code, exclude, strategy } => {
            let c = AdditiveCode::read(code)?;
            let mut opts = g.search();
            match strategy {
                Some(StrategyArg::Full) => opts.strategy = Strategy::Full,
                Some(StrategyArg::Partitioned) => {
                    opts.strategy = Strategy::Partitioned { threads: g.threads.unwrap_or(0) }
                }
                None => {}
            }
            let w = match exclude {
                Some(path) => c.min_weight_excluding_with(&AdditiveCode::read(path)?, opts.strategy, opts.budget)?,
                None => c.min_weight_with(opts.strategy, opts.budget)?,
            };
            writeln!(out, "d={} enumerated={}", w, w.enumerated)?;
        }
        Command::Combine { g: gp, g2, e, out: dest } => {
            let gm = text::read_matrix(gp)?.matrix;
            let g2m = text::read_matrix(g2)?.matrix;
            let em = text::read_matrix(e)?.matrix;
            let (code, report) = eaqec::combine_construct(&gm, &g2m, &em, g.search())?;
            writeln!(out, "{report}")?;
            if let Some(dest) = dest {
                write_file(dest, &code.to_text())?;
            }
        }
        Command::Match { alice, bob, alice_params, bob_params, q } => {
            let p = match (alice, bob, alice_params, bob_params) {
                (Some(a), Some(b), None, None) => {
                    eaqec::combine_neb(&AdditiveCode::read(a)?, &AdditiveCode::read(b)?, Some(g.search()))?
                }
                (None, None, Some(a), Some(b)) => {
                    let a = parse_list(a, 4, "sender parameters")?;
                    let b = parse_list(b, 3, "receiver parameters")?;
                    let alice = EAQECCParams::new(*q, a[0], a[1], Some(a[2]), a[3])?;
                    let bob = QECCParams::new(*q, b[0], b[1], Some(b[2]))?;
                    CombinationParams::new(alice, bob)?
                }
                _ => {
                    return Err(Error::Range(
                        "give either two code files or both --alice-params and --bob-params".into(),
                    ))
                }
            };
            write!(out, "{}", render_match(&p))?;
        }
        Command::Tables { csv } => {
            let s = eaqec::tables_csv(&eaqec::combination_tables());
            match csv {
                Some(path) => write_file(path, &s)?,
                None => write!(out, "{s}")?,
            }
        }
        Command::Fidelity { c, ea, b, lambda, grid, csv, crossover } => {
            let pair = PairShape { ea: *ea, b: *b };
            if let Some(p) = crossover {
                let p = fidelity::parse_rational(p)?;
                match fidelity::crossover_lambda(c, &pair, &p)? {
                    Some(l) => writeln!(out, "lambda*={}", fidelity::render(&l, 15))?,
                    None => writeln!(out, "lambda*=none")?,
                }
                return Ok(());
            }
            let lambda = fidelity::parse_rational(lambda)?;
            let curve = fidelity::sweep(c, &pair, &lambda, &fidelity::parse_grid(grid)?)?;
            let s = curve.to_csv();
            match csv {
                Some(path) => write_file(path, &s)?,
                None => write!(out, "{s}")?,
            }
        }
        Command::VerifyPauli { p, n, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let certs = pauli::certify(*p, *n, *samples, pauli::DEFAULT_CAP, &mut rng)?;
            for c in &certs {
                writeln!(out, "{c}")?;
            }
            if let Some(bad) = certs.iter().find(|c| !c.ok()) {
                return Err(Error::PreconditionFailed(format!("certification failed: {}", bad.property)));
            }
        }
        Command::PrintField { order } => {
            write!(out, "{}", field_report(&FieldSpec::of_order(*order)?))?;
        }
    }
    Ok(())
}

fn table(f: &FieldSpec, op: impl Fn(u8, u8) -> u8) -> String {
    let mut s = String::new();
    for a in f.elements() {
        let row: Vec<String> = f.elements().map(|b| op(a, b).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn field_report(f: &FieldSpec) -> String {
    let mut s = format!("{}\n", f.describe());
    s.push_str("# add\n");
    s.push_str(&table(f, |a, b| f.add(a, b)));
    s.push_str("# mul\n");
    s.push_str(&table(f, |a, b| f.mul(a, b)));
    if f.is_quadratic_extension() {
        let conj: Vec<String> = f.elements().map(|x| f.conjugate(x).expect("quadratic").to_string()).collect();
        let tr: Vec<String> = f.elements().map(|x| f.rel_trace(x).expect("quadratic").to_string()).collect();
        s.push_str(&format!("# conjugate\n{}\n", conj.join(" ")));
        s.push_str(&format!("# trace\n{}\n", tr.join(" ")));
    }
    s
}

/// Run with explicit streams; returns the exit status.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run_main<S: AsRef<str>>(args: &[S]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
