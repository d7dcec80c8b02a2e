//! `adelog`: batch and interactive front end for the reasoner.
//!
//! Exit codes: 0 positive answer or success, 1 negative answer (not
//! subsumed, unsatisfiable, not entailed, no unique individual, invalid file
//! for `check`), 2 usage, parse or name errors, 3 resource limits.

mod render;
mod repl;
mod session;

use std::io::{self, IsTerminal, Write};
use std::process::ExitCode;

use adelog_core::reasoner::{EngineChoice, TableauConfig};
use adelog_core::semantics::ModelSearchConfig;
use adelog_core::syntax::parse_concept;
use adelog_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

use render::Format;
use session::{code, error_code, Command, Outcome, Session, Settings, Style};

#[derive(Parser)]
#[command(name = "adelog", version, about = "Description-logic reasoning over knowledge base files")]
struct Cli {
    /// Largest domain size tried by the oracle (1 to 5)
    #[arg(long, global = true, default_value_t = 3)]
    max_domain: usize,

    /// Tableau node budget
    #[arg(long, global = true, env = "ADELOG_BUDGET")]
    budget_nodes: Option<usize>,

    /// Tableau branch budget
    #[arg(long, global = true)]
    budget_branches: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Structural,
    Tableau,
    Auto,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a KB file
    Check { file: String },
    /// Print the concept hierarchy
    Classify { file: String },
    /// Decide whether C is subsumed by D
    Subsumes { file: String, c: String, d: String },
    /// Decide whether C can be non-empty
    Satisfiable { file: String, c: String },
    /// List individuals entailed to be instances of C
    Instances { file: String, c: String },
    /// Decide whether an individual is entailed to be in C
    Instance { file: String, individual: String, c: String },
    /// Search small interpretations for a counterexample to C ⊑ D
    Oracle { file: String, c: String, d: String },
    /// Print the unique individual in C
    Describe {
        file: String,
        c: String,
        #[arg(long)]
        world: Option<String>,
    },
    /// Print a view's extension
    Query {
        file: String,
        view: String,
        #[arg(long)]
        world: Option<String>,
    },
    /// Fire events in order and print their reports
    Fire {
        file: String,
        events: Vec<String>,
        /// Write the resulting state here
        #[arg(long)]
        snapshot: Option<String>,
    },
    /// List worlds; the current one is starred
    Worlds { file: String },
    /// Interactive session, optionally starting from a file
    Repl { file: Option<String> },
}

fn concept(text: &str, fmt: Format) -> Result<adelog_core::Concept, Outcome> {
    parse_concept(text).map_err(|e| Outcome { code: code::USAGE, text: render::error(&Error::Parse(e), Some(text), fmt) })
}

fn run(cli: Cli) -> Outcome {
    let mut tableau = TableauConfig::default();
    if let Some(n) = cli.budget_nodes {
        tableau.max_nodes = n;
    }
    if let Some(n) = cli.budget_branches {
        tableau.max_branches = n;
    }
    let settings = Settings {
        engine: match cli.engine {
            EngineArg::Structural => EngineChoice::Structural,
            EngineArg::Tableau => EngineChoice::Tableau,
            EngineArg::Auto => EngineChoice::Auto,
        },
        max_domain: cli.max_domain,
        tableau,
        format: cli.format,
        style: Style::Batch,
    };
    let fmt = settings.format;
    if let Err(e) = ModelSearchConfig::with_max_domain(cli.max_domain).validate() {
        return Outcome { code: error_code(&e), text: render::error(&e, None, fmt) };
    }
    let mut session = Session::new(settings);
    let file = match &cli.command {
        Cmd::Repl { file } => file.clone(),
        Cmd::Check { file }
        | Cmd::Classify { file }
        | Cmd::Subsumes { file, .. }
        | Cmd::Satisfiable { file, .. }
        | Cmd::Instances { file, .. }
        | Cmd::Instance { file, .. }
        | Cmd::Oracle { file, .. }
        | Cmd::Describe { file, .. }
        | Cmd::Query { file, .. }
        | Cmd::Fire { file, .. }
        | Cmd::Worlds { file } => Some(file.clone()),
    };
    if let Some(path) = &file {
        if let Err((e, src)) = session.load_file(path) {
            // `check` answers "no" for a readable but invalid file
            let invalid = matches!(cli.command, Cmd::Check { .. }) && src.is_some();
            let code = if invalid && error_code(&e) == code::USAGE { code::NEGATIVE } else { error_code(&e) };
            return Outcome { code, text: render::error(&e, src.as_deref(), fmt) };
        }
    }
    let cmd = match cli.command {
        Cmd::Check { .. } => return Outcome { code: code::OK, text: session.summary() },
        Cmd::Repl { .. } => {
            session.settings.style = Style::Repl;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            let mut stdout = io::stdout().lock();
            return match repl::run(&mut session, stdin.lock(), &mut stdout, prompt) {
                Ok(()) => Outcome { code: code::OK, text: String::new() },
                Err(e) => Outcome { code: code::USAGE, text: format!("error: {e}\n") },
            };
        }
        Cmd::Fire { events, snapshot, .. } => {
            let mut text = String::new();
            for e in events {
                let out = session.execute(&Command::Fire(e));
                text.push_str(&out.text);
                if out.code != code::OK {
                    return Outcome { code: out.code, text };
                }
            }
            if let Some(path) = snapshot {
                let out = session.execute(&Command::Snapshot(path));
                text.push_str(&out.text);
                return Outcome { code: out.code, text };
            }
            return Outcome { code: code::OK, text };
        }
        Cmd::Classify { .. } => Command::Classify,
        Cmd::Worlds { .. } => Command::Worlds,
        Cmd::Subsumes { c, d, .. } => match (concept(&c, fmt), concept(&d, fmt)) {
            (Ok(c), Ok(d)) => Command::Subsumes(c, d),
            (Err(o), _) | (_, Err(o)) => return o,
        },
        Cmd::Oracle { c, d, .. } => match (concept(&c, fmt), concept(&d, fmt)) {
            (Ok(c), Ok(d)) => Command::Oracle { c, d, max_domain: None },
            (Err(o), _) | (_, Err(o)) => return o,
        },
        Cmd::Satisfiable { c, .. } => match concept(&c, fmt) {
            Ok(c) => Command::Satisfiable(c),
            Err(o) => return o,
        },
        Cmd::Instances { c, .. } => match concept(&c, fmt) {
            Ok(c) => Command::Instances(c),
            Err(o) => return o,
        },
        Cmd::Instance { individual, c, .. } => match concept(&c, fmt) {
            Ok(c) => Command::Check(individual, c),
            Err(o) => return o,
        },
        Cmd::Describe { c, world, .. } => match concept(&c, fmt) {
            Ok(body) => Command::Describe { body, world },
            Err(o) => return o,
        },
        Cmd::Query { view, world, .. } => Command::QueryView { name: view, world },
    };
    session.execute(&cmd)
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.text.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(out.code)
}
