use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pfss::analysis::{all_orbits, analyze, find_initial_condition, orbit_length, AnalysisOptions};
use pfss::floquet::{floquet, matrix_nth_root, FloquetData, RootOptions};
use pfss::fsr::{build_pfss, keystream};
use pfss::io::{
    codes, parse_input, parse_vector, render_analysis, render_matrix, render_root, render_vector, system_file,
    AnalysisJson, Input, OrbitJson, RootJson,
};
use pfss::lfss::CycleSet;
use pfss::roots::ExtensionOptions;
use pfss::{Error, Pfss, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Analyze periodic linear systems and feedback shift registers over finite fields.
#[derive(Parser, Debug)]
#[command(name = "pfss", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized subroutines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest state space enumerated exhaustively.
    #[arg(long, global = true, default_value_t = pfss::pfss::DEFAULT_STATE_CAP)]
    cap_states: u128,
    /// Extension degree cap, as a multiple of the current field degree.
    #[arg(long, global = true, default_value_t = 64)]
    cap_extension: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for a system or register spec.
    Analyze { file: PathBuf },
    /// Orbit length of one initial condition.
    Orbit {
        file: PathBuf,
        /// Comma-separated element encodings, e.g. 0,1,1.
        #[arg(long)]
        x0: String,
    },
    /// Period histogram and closed orbits.
    Orbits { file: PathBuf },
    /// An initial condition with a prescribed orbit length.
    FindInit {
        file: PathBuf,
        #[arg(long)]
        length: u128,
    },
    /// N-th root of a matrix, or of a system's monodromy.
    Root {
        file: PathBuf,
        /// Root index; defaults to the period for a system file.
        #[arg(long)]
        n: Option<u64>,
    },
    /// States x(0), ..., x(steps).
    Simulate {
        file: PathBuf,
        #[arg(long)]
        x0: String,
        /// Defaults to one temporal period.
        #[arg(long)]
        steps: Option<u128>,
    },
    /// Feedback shift register tools.
    Fsr {
        #[command(subcommand)]
        command: FsrCommand,
    },
}

#[derive(Subcommand, Debug)]
enum FsrCommand {
    /// Write the slave register's periodic system as an input file.
    EmitPfss { file: PathBuf },
    /// Tapped slave coordinate per step.
    Keystream {
        file: PathBuf,
        #[arg(long)]
        x0: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        tap: usize,
    },
}

fn read_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

fn read_system(path: &Path) -> Result<Pfss> {
    read_input(path)?.into_system()
}

fn root_options(cli: &Cli) -> RootOptions {
    RootOptions {
        extension: ExtensionOptions {
            seed: cli.seed,
            cap_factor: cli.cap_extension,
        },
        ..RootOptions::default()
    }
}

fn floquet_data(sys: &Pfss, cli: &Cli) -> Result<FloquetData> {
    let (rr, fd) = floquet(sys, &root_options(cli))?;
    fd.ok_or_else(|| Error::MissingFloquet(format!("monodromy root status is {}", rr.status())))
}

macro_rules! pretty {
    ($v:expr) => {
        serde_json::to_string_pretty(&$v).expect("serializable")
    };
}

fn run(cli: &Cli) -> Result<String> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Analyze { file } => {
            let sys = read_system(file)?;
            let opts = AnalysisOptions {
                root: root_options(cli),
                state_cap: cli.cap_states,
            };
            let a = analyze(&sys, &opts)?;
            Ok(if json {
                pretty!(AnalysisJson::of(&a))
            } else {
                render_analysis(&a)
            })
        }
        Command::Orbit { file, x0 } => {
            let sys = read_system(file)?;
            let x = parse_vector(sys.ctx(), x0)?;
            let fd = floquet_data(&sys, cli)?;
            let o = orbit_length(&sys, &x, &fd)?;
            Ok(if json {
                pretty!(OrbitJson::of(&x, &o))
            } else {
                format!(
                    "x0 = {}: period {} ({}; LFSS period {}, lcm(T, N) = {})\n",
                    render_vector(sys.ctx(), &x),
                    o.length,
                    o.classification.as_str(),
                    o.lfss_period,
                    o.bound
                )
            })
        }
        Command::Orbits { file } => {
            let sys = read_system(file)?;
            let fd = floquet(&sys, &root_options(cli))?.1;
            let o = all_orbits(&sys, fd.as_ref(), cli.cap_states)?;
            let per_ic = CycleSet::from_pairs(&o.histogram.iter().collect::<Vec<_>>());
            Ok(if json {
                pretty!(json!({
                    "period_histogram": o.histogram,
                    "closed_orbits": o.closed_orbits,
                    "formula": o.formula.as_ref().map(|f| json!({
                        "closed_orbits": f.closed_orbits,
                        "cross_check": f.cross_check,
                    })),
                }))
            } else {
                let mut s = format!(
                    "period histogram: {}\ninitial conditions per period: {{{}}}\nclosed orbits: {{{}}}\n",
                    o.histogram.render(),
                    per_ic.render(),
                    o.closed_orbits.render()
                );
                if let Some(f) = &o.formula {
                    s.push_str(&format!(
                        "closed orbits from the LFSS cycle set: {{{}}}\n",
                        f.closed_orbits.render()
                    ));
                }
                s
            })
        }
        Command::FindInit { file, length } => {
            let sys = read_system(file)?;
            let fd = floquet_data(&sys, cli)?;
            let x = find_initial_condition(&sys, &fd, *length, cli.cap_states)?;
            Ok(if json {
                pretty!(json!({"length": length, "x0": x.as_deref().map(codes)}))
            } else {
                match &x {
                    Some(x) => format!(
                        "x0 = {} has period {length}\n",
                        render_vector(&sys.ctx().join(&fd.ctx)?, x)
                    ),
                    None => format!("no initial condition has period {length}\n"),
                }
            })
        }
        Command::Root { file, n } => {
            let (m, default_n) = match read_input(file)? {
                Input::Matrix(m) => (m, None),
                other => {
                    let sys = other.into_system()?;
                    (sys.monodromy(), Some(sys.period() as u64))
                }
            };
            let n = n
                .or(default_n)
                .ok_or_else(|| Error::InvalidInput("--n is required for a matrix file".into()))?;
            let rr = matrix_nth_root(&m, n, &root_options(cli))?;
            Ok(if json {
                pretty!(RootJson::of(&rr))
            } else {
                render_root(&rr)
            })
        }
        Command::Simulate { file, x0, steps } => {
            let sys = read_system(file)?;
            let x = parse_vector(sys.ctx(), x0)?;
            let steps = match steps {
                Some(s) => *s,
                None => sys.orbit_period(&x, cli.cap_states)?,
            };
            let mut states = vec![x.clone()];
            let mut cur = x;
            for k in 0..steps {
                cur = sys.step(k, &cur);
                states.push(cur.clone());
            }
            Ok(if json {
                pretty!(json!({"states": states.iter().map(|s| codes(s)).collect::<Vec<_>>()}))
            } else {
                states
                    .iter()
                    .enumerate()
                    .map(|(k, s)| format!("{k}: {}\n", render_vector(sys.ctx(), s)))
                    .collect()
            })
        }
        Command::Fsr { command } => match command {
            FsrCommand::EmitPfss { file } => {
                let spec = match read_input(file)? {
                    Input::Pfsr(spec) => spec,
                    _ => return Err(Error::InvalidInput("expected a register spec".into())),
                };
                let sys = build_pfss(&spec)?;
                Ok(if json {
                    pretty!(system_file(&sys))
                } else {
                    let mut s = format!(
                        "{} register, master period {}, over {}\n",
                        spec.kind.as_str(),
                        sys.period(),
                        sys.ctx().describe()
                    );
                    for (k, m) in sys.matrices().iter().enumerate() {
                        s.push_str(&format!("A({k}):\n{}", render_matrix(sys.ctx(), m, "  ")));
                    }
                    s
                })
            }
            FsrCommand::Keystream { file, x0, steps, tap } => {
                let spec = match read_input(file)? {
                    Input::Pfsr(spec) => spec,
                    _ => return Err(Error::InvalidInput("expected a register spec".into())),
                };
                let x = parse_vector(spec.master.ctx(), x0)?;
                let ks = keystream(&spec, &x, *steps, *tap)?;
                Ok(if json {
                    format!("{}\n", serde_json::to_string(&codes(&ks)).expect("serializable"))
                } else {
                    ks.iter().map(|e| format!("{}\n", e.encoding())).collect()
                })
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let err = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}
