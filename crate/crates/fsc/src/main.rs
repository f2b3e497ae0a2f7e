use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fsc_core::apply::{self, transduce_stream_with, RenderMap, StreamMode};
use fsc_core::artifact::CompiledArtifact;
use fsc_core::network::to_dot;
use fsc_core::selftest::{self, Mutation, SelftestOptions};
use fsc_core::Error;

const EXIT_COMPILE: u8 = 1;
const EXIT_AMBIGUOUS: u8 = 2;
const EXIT_IO: u8 = 3;

/// Upper bound on outputs printed per line with `--all`.
const ALL_LIMIT: usize = 1000;

#[derive(Parser)]
#[command(name = "fsc", version, about = "Compile and apply directed replacement transducers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a rule file into an artifact.
    Compile {
        rules: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Transduce standard input line by line.
    Apply {
        artifact: PathBuf,
        /// Match input against the lower side.
        #[arg(long)]
        up: bool,
        /// Print every output, one per line, each prefixed by a tab.
        #[arg(long)]
        all: bool,
        /// Render a symbol as text, e.g. `END_OF_TOKEN=\n`.
        #[arg(long = "render", value_name = "SYM=TEXT", value_parser = parse_render)]
        render: Vec<String>,
    },
    /// Write the network as a Graphviz digraph.
    Dot {
        artifact: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the built-in acceptance checks.
    Selftest {
        /// Run only checks whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Run against a deliberately broken construction (`drop-longest`).
        #[arg(long, value_parser = parse_mutation)]
        mutate: Option<Mutation>,
    },
}

fn parse_render(entry: &str) -> Result<String, String> {
    match RenderMap::new().parse_entry(entry) {
        Some(()) => Ok(entry.to_string()),
        None => Err(format!("expected SYM=TEXT, got `{entry}`")),
    }
}

fn parse_mutation(name: &str) -> Result<Mutation, String> {
    Mutation::parse(name).ok_or_else(|| format!("unknown mutation `{name}`"))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_COMPILE) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Compile { rules, output } => compile(&rules, &output),
        Command::Apply { artifact, up, all, render } => apply(&artifact, up, all, render),
        Command::Dot { artifact, output } => dot(&artifact, &output),
        Command::Selftest { filter, mutate } => run_selftest(filter, mutate),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("fsc: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn compile(rules: &Path, output: &Path) -> Outcome {
    let src = std::fs::read_to_string(rules).map_err(|e| Failure::io(rules, e))?;
    let art = CompiledArtifact::compile(&src)
        .map_err(|e| Failure { code: EXIT_COMPILE, message: format!("{}: {e}", rules.display()) })?;
    art.save(output).map_err(|e| Failure::io(output, e))?;
    println!("{}: {} states, {} arcs", output.display(), art.network.num_states(), art.network.num_arcs());
    Ok(())
}

fn load(path: &Path) -> Result<CompiledArtifact, Failure> {
    CompiledArtifact::load(path).map_err(|e| Failure::io(path, e))
}

fn apply(path: &Path, up: bool, all: bool, render: Vec<String>) -> Outcome {
    let art = load(path)?;
    let mut map = RenderMap::new();
    for entry in &render {
        map.parse_entry(entry);
    }
    let stdin = io::stdin().lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let stdout_err = |e: io::Error| Failure { code: EXIT_IO, message: format!("stdout: {e}") };
    if all {
        let net = if up { art.network.inverse() } else { art.network.clone() };
        for line in stdin.lines() {
            let line = line.map_err(|e| Failure { code: EXIT_IO, message: format!("stdin: {e}") })?;
            let input = apply::tokenize_input(&net, &art.table, line.trim_end_matches('\r'));
            let applied = apply::apply_down(&net, &input, ALL_LIMIT);
            for o in &applied.outputs {
                writeln!(out, "\t{}", apply::render(o, &input, &art.table, &map)).map_err(stdout_err)?;
            }
            if applied.truncated {
                eprintln!("fsc: output list truncated for `{line}`");
            }
        }
        return out.flush().map_err(stdout_err);
    }
    let mode = if up { StreamMode::Up } else { StreamMode::Down };
    match transduce_stream_with(&art.network, &art.table, stdin, &mut out, &map, mode) {
        Ok(_) => Ok(()),
        Err(e @ (Error::AmbiguousOutput { .. } | Error::NoOutput { .. })) => {
            let _ = out.flush();
            Err(Failure { code: EXIT_AMBIGUOUS, message: format!("{e} (use --all to list outputs)") })
        }
        Err(e) => Err(Failure { code: EXIT_IO, message: e.to_string() }),
    }
}

fn dot(path: &Path, output: &Path) -> Outcome {
    let art = load(path)?;
    std::fs::write(output, to_dot(&art.network, &art.table)).map_err(|e| Failure::io(output, e))
}

fn run_selftest(filter: Option<String>, mutation: Option<Mutation>) -> Outcome {
    let results = selftest::run(&SelftestOptions { filter, mutation });
    print!("{}", selftest::render_table(&results));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} checks, {} failed", results.len(), failed);
    if results.is_empty() {
        return Err(Failure { code: EXIT_COMPILE, message: "no check matches the filter".into() });
    }
    if failed > 0 {
        return Err(Failure { code: EXIT_COMPILE, message: String::new() });
    }
    Ok(())
}
