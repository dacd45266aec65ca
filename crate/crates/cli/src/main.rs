use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cct::dsl::{self, Script, SyntaxError, Trace};
use cct::enumerate::{EnumConfig, Mode};
use cct::laws::{self, Expect, Law};
use cct::{LawReport, Outcome};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

// Writes to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

const DEFAULT_SEED: u64 = 20_240_611;
const DEFAULT_SAMPLES: u64 = 1000;
const FORMAT_VERSION: &str = "1";

/// Relations, codomain-free functions and their laws, on finite carriers.
#[derive(Parser, Debug)]
#[command(name = "cct", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate scripts; `-` reads standard input.
    Run {
        #[arg(required = true)]
        paths: Vec<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check catalog laws (default: all).
    Check {
        ids: Vec<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// List the law catalog.
    Laws {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug)]
struct Opts {
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Largest carrier the law engine enumerates.
    #[arg(long, default_value_t = 2)]
    max_carrier: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Samples per law in sampled mode.
    #[arg(long)]
    samples: Option<u64>,
    /// Seed for sampled mode.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; never changes output.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl Opts {
    fn config(&self) -> Result<EnumConfig, String> {
        let mode = match self.mode {
            ModeArg::Exhaustive => {
                if self.samples.is_some() || self.seed.is_some() {
                    return Err("--samples and --seed need --mode sampled".into());
                }
                Mode::Exhaustive
            }
            ModeArg::Sampled => Mode::Sampled {
                count: self.samples.unwrap_or(DEFAULT_SAMPLES),
                seed: self.seed.unwrap_or(DEFAULT_SEED),
            },
        };
        let cfg = EnumConfig { max_carrier: self.max_carrier, mode, jobs: self.jobs, ..EnumConfig::default() };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn describe(cfg: &EnumConfig) -> String {
    match cfg.mode {
        Mode::Exhaustive => format!("mode exhaustive, max carrier {}", cfg.max_carrier),
        Mode::Sampled { count, seed } => {
            format!("mode sampled, {count} samples, seed {seed}, max carrier {}", cfg.max_carrier)
        }
    }
}

fn config_json(cfg: &EnumConfig) -> serde_json::Value {
    match cfg.mode {
        Mode::Exhaustive => json!({"mode": "exhaustive", "max_carrier": cfg.max_carrier, "cap": cfg.cap}),
        Mode::Sampled { count, seed } => json!({
            "mode": "sampled",
            "max_carrier": cfg.max_carrier,
            "samples": count,
            "seed": seed,
        }),
    }
}

fn emit(doc: &serde_json::Value) {
    let text = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    say!("{text}");
}

fn usage_error(json: bool, command: &str, message: &str) -> ExitCode {
    if json {
        emit(&json!({
            "format_version": FORMAT_VERSION,
            "command": command,
            "ok": false,
            "error": {"code": "UsageError", "message": message},
        }));
    }
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn read_source(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(PathBuf::from(path))
    }
}

fn syntax_json(path: &str, e: &SyntaxError) -> serde_json::Value {
    let pos = e.pos();
    json!({"path": path, "line": pos.line, "col": pos.col, "code": e.code(), "message": e.to_string()})
}

fn cmd_run(paths: &[String], opts: &Opts) -> ExitCode {
    let cfg = match opts.config() {
        Ok(c) => c,
        Err(m) => return usage_error(opts.json, "run", &m),
    };
    // Everything is read and parsed before anything runs.
    let mut scripts: Vec<(&str, Script)> = Vec::new();
    for path in paths {
        let src = match read_source(path) {
            Ok(s) => s,
            Err(e) => return usage_error(opts.json, "run", &format!("{path}: {e}")),
        };
        match dsl::parse(&src) {
            Ok(s) => scripts.push((path, s)),
            Err(e) => {
                if opts.json {
                    emit(&json!({
                        "format_version": FORMAT_VERSION,
                        "command": "run",
                        "ok": false,
                        "error": syntax_json(path, &e),
                    }));
                }
                eprintln!("{path}:{e}");
                return ExitCode::from(2);
            }
        }
    }
    let traces: Vec<(&str, Trace)> = scripts.iter().map(|(p, s)| (*p, dsl::evaluate(s, &cfg))).collect();
    let ok = traces.iter().all(|(_, t)| t.ok());
    if opts.json {
        let files: Vec<serde_json::Value> = traces
            .iter()
            .map(|(p, t)| {
                let mut v = serde_json::to_value(t).expect("traces serialize");
                v["path"] = json!(p);
                v
            })
            .collect();
        emit(&json!({
            "format_version": FORMAT_VERSION,
            "command": "run",
            "config": config_json(&cfg),
            "ok": ok,
            "files": files,
        }));
    } else {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        for (path, t) in &traces {
            if traces.len() > 1 {
                let _ = writeln!(out, "== {path}");
            }
            for ev in &t.events {
                let _ = writeln!(out, "{ev}");
            }
            if let Some(e) = &t.error {
                let _ = out.flush();
                eprintln!("{path}:{e}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verdict(law: &Law, report: &LawReport) -> &'static str {
    match (&report.outcome, law.expect) {
        (Outcome::Pass, Expect::Pass) => "PASS",
        (Outcome::Fail(_), Expect::Fail) => "FAIL (expected)",
        (Outcome::Pass, Expect::Fail) => "PASS (expected to fail)",
        (Outcome::Fail(_), Expect::Pass) => "FAIL",
        (Outcome::BudgetExceeded(_), _) => "BUDGET EXCEEDED",
    }
}

#[derive(Serialize)]
struct LawRecord<'a> {
    #[serde(flatten)]
    report: &'a LawReport,
    expected: &'static str,
    as_expected: bool,
}

fn cmd_check(ids: &[String], opts: &Opts) -> ExitCode {
    let cfg = match opts.config() {
        Ok(c) => c,
        Err(m) => return usage_error(opts.json, "check", &m),
    };
    let ids: Vec<&str> = if ids.is_empty() { vec!["all"] } else { ids.iter().map(String::as_str).collect() };
    let laws = match laws::resolve(&ids) {
        Ok(l) => l,
        Err(e) => return usage_error(opts.json, "check", &e.to_string()),
    };
    if !opts.json {
        say!("{}", describe(&cfg));
    }
    let mut results = Vec::with_capacity(laws.len());
    for law in laws {
        let report = match laws::run_law(law, &cfg) {
            Ok(r) => r,
            Err(e) => return usage_error(opts.json, "check", &e.to_string()),
        };
        if !opts.json {
            say!("{:<32} {:>9}  {}", law.id, report.instances, verdict(law, &report));
            match &report.outcome {
                Outcome::Fail(cx) => say!("    counterexample: {cx}"),
                Outcome::BudgetExceeded(n) => say!("    estimated instances: at least {n}"),
                Outcome::Pass => {}
            }
        }
        results.push((law, report));
    }
    let good = results.iter().filter(|(l, r)| l.as_expected(r)).count();
    let ok = good == results.len();
    if opts.json {
        let records: Vec<LawRecord> = results
            .iter()
            .map(|(l, r)| LawRecord { report: r, expected: l.expect.label(), as_expected: l.as_expected(r) })
            .collect();
        emit(&json!({
            "format_version": FORMAT_VERSION,
            "command": "check",
            "config": config_json(&cfg),
            "ok": ok,
            "laws": records,
        }));
    } else {
        say!("{good}/{} laws as expected", results.len());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Serialize)]
struct LawEntry {
    id: &'static str,
    anchor: &'static str,
    expected: &'static str,
}

fn cmd_laws(json: bool) -> ExitCode {
    let catalog = laws::catalog();
    if json {
        let entries: Vec<LawEntry> = catalog
            .iter()
            .map(|l| LawEntry { id: l.id, anchor: l.anchor, expected: l.expect.label() })
            .collect();
        emit(&json!({"format_version": FORMAT_VERSION, "command": "laws", "laws": entries}));
    } else {
        for l in catalog {
            let tag = if l.expect == Expect::Fail { " [expected to fail]" } else { "" };
            say!("{}  ({}){tag}", l.id, l.anchor);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Run { paths, opts } => cmd_run(paths, opts),
        Command::Check { ids, opts } => cmd_check(ids, opts),
        Command::Laws { json } => cmd_laws(*json),
    }
}
