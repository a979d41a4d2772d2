use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use parahiggs::hitchin::Group;
use parahiggs_cli::config::{ConfigError, RawConfig};
use parahiggs_cli::report::dimension_json;
use parahiggs_cli::{emit_examples, load_raw, run_report, Task};

#[derive(Parser)]
#[command(
    name = "parahiggs",
    version,
    about = "Exact checks for parabolic Higgs bundles on the projective line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a config and print (or write) the JSON report.
    Check {
        config: PathBuf,
        /// Override the seed of the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Run only these tasks (repeatable).
        #[arg(long = "task")]
        tasks: Vec<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the bundled example configs into a directory.
    Corpus {
        dir: PathBuf,
        /// Override the seed of every example.
        #[arg(long)]
        seed: Option<u64>,
        /// Also run every example and write `<name>.report.json` here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moduli dimension for sp, so-odd (SO(2m+1)) or so-even (SO(2m)).
    Dim {
        group: String,
        m: usize,
        g: i64,
        r: i64,
    },
}

const INVALID: u8 = 1;
const INTERNAL: u8 = 2;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn config_code(e: &ConfigError) -> u8 {
    match e {
        ConfigError::Io { .. } => INTERNAL,
        _ => INVALID,
    }
}

fn check(raw: RawConfig, out: Option<PathBuf>) -> ExitCode {
    let job = match raw.validate() {
        Ok(job) => job,
        Err(e) => return fail(INVALID, e),
    };
    let report = run_report(&job);
    for t in report.tasks.iter().filter(|t| t.status != "ok") {
        eprintln!(
            "warning: task {} failed: {}",
            t.task,
            t.error.as_deref().unwrap_or("")
        );
    }
    let out = out.or_else(|| job.output.clone());
    match write_or_print(out.as_deref(), &report.to_json()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(INTERNAL, e),
    }
}

fn corpus(dir: &Path, seed: Option<u64>, out: Option<&Path>) -> ExitCode {
    let mut code = ExitCode::SUCCESS;
    for (path, res) in emit_examples(dir) {
        match res {
            Ok(()) => println!("wrote {}", path.display()),
            Err(e) => code = fail(INTERNAL, format!("{}: {e}", path.display())),
        }
    }
    let Some(out) = out else {
        return code;
    };
    if let Err(e) = std::fs::create_dir_all(out) {
        return fail(INTERNAL, format!("{}: {e}", out.display()));
    }
    for (name, mut raw) in parahiggs_cli::examples() {
        if let Some(s) = seed {
            raw.seed = s;
        }
        let job = match raw.validate() {
            Ok(job) => job,
            Err(e) => {
                code = fail(INVALID, format!("{name}: {e}"));
                continue;
            }
        };
        let path = out.join(name.replace(".json", ".report.json"));
        match std::fs::write(&path, run_report(&job).to_json()) {
            Ok(()) => println!("wrote {}", path.display()),
            Err(e) => code = fail(INTERNAL, format!("{}: {e}", path.display())),
        }
    }
    code
}

fn dim(group: &str, m: usize, g: i64, r: i64) -> ExitCode {
    let group = match group {
        "sp" => Group::Symplectic(m),
        "so-odd" => Group::OddOrthogonal(m),
        "so-even" => Group::EvenOrthogonal(m),
        other => {
            return fail(
                INVALID,
                format!("unknown group {other:?}; expected sp, so-odd or so-even"),
            )
        }
    };
    match dimension_json(group, g, r) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Err(e) => fail(INVALID, e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            config,
            seed,
            tasks,
            out,
        } => {
            let mut raw = match load_raw(&config) {
                Ok(raw) => raw,
                Err(e) => return fail(config_code(&e), e),
            };
            if let Some(s) = seed {
                raw.seed = s;
            }
            if !tasks.is_empty() {
                if let Some(bad) = tasks.iter().find(|t| Task::parse(t).is_none()) {
                    return fail(INVALID, format!("unknown task {bad:?}"));
                }
                raw.tasks = tasks;
            }
            check(raw, out)
        }
        Command::Corpus { dir, seed, out } => corpus(&dir, seed, out.as_deref()),
        Command::Dim { group, m, g, r } => dim(&group, m, g, r),
    }
}
