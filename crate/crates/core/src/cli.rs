//! Command-line front end. [`run`] parses arguments and returns the exit code
//! and output instead of touching the process, so it can be tested in-process;
//! `src/bin/mesa.rs` is a thin wrapper.
//!
//! Exit codes: `0` success, `1` invalid input or usage, `2` engines disagree.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dyck::{
    delta, delta_inverse, inversions, is_rational_dyck, LatticePath, RationalDyckPath,
};
use crate::enumeration::{
    enumerate_ams, enumerate_maximal, full_report, maximal_catalan, table, BruteForceOptions,
    CountReport, Engine, EngineSet, ReportOptions,
};
use crate::mesa::{canonical_witness, is_admissible, truncate, MesaSet};
use crate::render::{render_dyck, render_permutation, Styling, DEFAULT_CELL};
use crate::stirling::{parse_letters, validate_stirling, ResourceGuard, DEFAULT_CEILING};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

/// Environment variable holding the default brute-force ceiling.
pub const CEILING_ENV: &str = "MESA_BRUTE_CEILING";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "mesa", version, about = "Mesa sets of Stirling permutations")]
pub struct CliConfig {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Largest order enumerated exhaustively without --override-ceiling.
    #[arg(long, env = CEILING_ENV, default_value_t = DEFAULT_CEILING, global = true)]
    pub ceiling: usize,

    /// Allow exhaustive enumeration above the ceiling.
    #[arg(long, global = true)]
    pub override_ceiling: bool,

    /// Worker threads for exhaustive enumeration.
    #[arg(long, default_value_t = 1, global = true)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide admissibility of a set such as 3,4,5 and optionally build its
    /// canonical witness.
    Check {
        set: String,
        /// Order of the witness; must be at least the largest element.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Validate a word and report its mesas and local minima.
    Mesa { word: String },
    /// Count admissible mesa sets of order n with several engines.
    Count {
        n: u32,
        /// Comma-separated: brute, subset, recurrence, closed (or all).
        #[arg(long, default_value = "all")]
        engines: String,
        #[arg(long, hide = true)]
        corrupt_engine: Option<String>,
    },
    /// List every admissible mesa set of order n.
    List { n: u32 },
    /// List the maximal mesa sets of order 3k - 1 with their Dyck paths.
    Maximal { k: u32 },
    /// Inspect an N/E path: validity, area, and the mesa set it encodes.
    Dyck { path: String },
    /// Counts for every order up to n_max.
    Table {
        n_max: u32,
        #[arg(long, default_value = "subset,recurrence,closed")]
        engines: String,
        #[arg(long, hide = true)]
        corrupt_engine: Option<String>,
    },
    /// Write an SVG figure.
    Render {
        #[command(subcommand)]
        figure: RenderCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum RenderCommand {
    /// Graph of a Stirling permutation.
    Perm {
        word: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CELL)]
        cell: u32,
    },
    /// Rational Dyck path on its grid.
    Dyck {
        path: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CELL)]
        cell: u32,
        /// Omit the dashed diagonal.
        #[arg(long)]
        no_slope: bool,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&config) {
        Ok(outcome) => outcome,
        Err(msg) => Outcome::invalid(msg),
    }
}

type CmdResult = Result<Outcome, String>;

fn execute(cfg: &CliConfig) -> CmdResult {
    match &cfg.command {
        Command::Check { set, order } => check(cfg.format, set, *order),
        Command::Mesa { word } => mesa(cfg.format, word),
        Command::Count {
            n,
            engines,
            corrupt_engine,
        } => {
            let opts = report_options(cfg, engines, corrupt_engine.as_deref())?;
            let report = full_report(*n, &opts).map_err(|e| e.to_string())?;
            Ok(reports_outcome(cfg.format, &[report], false))
        }
        Command::List { n } => list(cfg.format, *n),
        Command::Maximal { k } => maximal(cfg.format, *k),
        Command::Dyck { path } => dyck(cfg.format, path),
        Command::Table {
            n_max,
            engines,
            corrupt_engine,
        } => {
            let opts = report_options(cfg, engines, corrupt_engine.as_deref())?;
            let reports = table(*n_max, &opts).map_err(|e| e.to_string())?;
            Ok(reports_outcome(cfg.format, &reports, true))
        }
        Command::Render { figure } => render(cfg.format, figure),
    }
}

fn report_options(
    cfg: &CliConfig,
    engines: &str,
    corrupt: Option<&str>,
) -> Result<ReportOptions, String> {
    let engines: EngineSet = engines.parse().map_err(|e| format!("--engines: {e}"))?;
    let corrupt = corrupt
        .map(str::parse::<Engine>)
        .transpose()
        .map_err(|e| format!("--corrupt-engine: {e}"))?;
    if cfg.workers == 0 {
        return Err("--workers must be at least 1".into());
    }
    Ok(ReportOptions {
        engines,
        brute_force: BruteForceOptions {
            guard: ResourceGuard {
                ceiling: cfg.ceiling,
                allow_above: cfg.override_ceiling,
            },
            workers: cfg.workers,
        },
        corrupt,
    })
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn joined(elements: &[u32], sep: &str) -> String {
    elements
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn check(format: Format, set: &str, order: Option<u32>) -> CmdResult {
    let mut m: MesaSet = set
        .parse()
        .map_err(|e: crate::mesa::MesaError| e.to_string())?;
    if let Some(n) = order {
        m = m.with_order(n).map_err(|e| e.to_string())?;
    }
    let admissible = is_admissible(&m);
    // First x ∈ M with 3|M_x| > 2x - 1, if any.
    let violation = m
        .elements()
        .iter()
        .copied()
        .find(|&x| 3 * truncate(&m, x).len() as u64 > 2 * x as u64 - 1);
    let witness = match order {
        Some(_) if admissible => Some(canonical_witness(&m).map_err(|e| e.to_string())?),
        _ => None,
    };
    let text = match format {
        Format::Json => json_text(&json!({
            "set": m.elements(),
            "admissible": admissible,
            "violated_at": violation,
            "order": order,
            "witness": witness.as_ref().map(ToString::to_string),
        })),
        Format::Csv => format!(
            "set,admissible,order,witness\n\"{}\",{},{},{}\n",
            joined(m.elements(), " "),
            admissible,
            order.map(|n| n.to_string()).unwrap_or_default(),
            witness
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default()
        ),
        Format::Plain => {
            let mut s = if admissible {
                format!("{m} is admissible\n")
            } else {
                format!(
                    "{m} is not admissible (3|M_x| > 2x - 1 at x = {})\n",
                    violation.expect("a violation exists")
                )
            };
            if let (Some(w), Some(n)) = (&witness, order) {
                s.push_str(&format!("canonical witness in Q_{n}: {w}\n"));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn mesa(format: Format, word: &str) -> CmdResult {
    let letters = parse_letters(word).map_err(|e| e.to_string())?;
    let w = validate_stirling(&letters).map_err(|e| e.to_string())?;
    let mesas: Vec<u32> = w.mesa_set().into_iter().collect();
    let minima: Vec<u32> = w.local_minima().into_iter().collect();
    let text = match format {
        Format::Json => json_text(&json!({
            "word": w.to_string(),
            "order": w.order(),
            "mesas": mesas,
            "local_minima": minima,
        })),
        Format::Csv => format!(
            "word,order,mesas,local_minima\n{},{},\"{}\",\"{}\"\n",
            w.to_string().replace(',', " "),
            w.order(),
            joined(&mesas, " "),
            joined(&minima, " ")
        ),
        Format::Plain => format!(
            "Mesa({w}) = {{{}}}\nlocal minima = {{{}}}\n",
            joined(&mesas, ","),
            joined(&minima, ",")
        ),
    };
    Ok(Outcome::ok(text))
}

fn list(format: Format, n: u32) -> CmdResult {
    if n == 0 {
        return Err("order must be at least 1".into());
    }
    let sets: Vec<MesaSet> = enumerate_ams(n).collect();
    let text = match format {
        Format::Json => json_text(&json!({
            "order": n,
            "count": sets.len(),
            "sets": sets.iter().map(MesaSet::elements).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("size,elements\n");
            for m in &sets {
                s.push_str(&format!("{},\"{}\"\n", m.len(), joined(m.elements(), " ")));
            }
            s
        }
        Format::Plain => sets.iter().map(|m| format!("{m}\n")).collect(),
    };
    Ok(Outcome::ok(text))
}

fn maximal(format: Format, k: u32) -> CmdResult {
    if k == 0 {
        return Err("k must be at least 1".into());
    }
    let rows: Vec<(MesaSet, RationalDyckPath)> = enumerate_maximal(k)
        .map(|m| {
            let p = delta(&m).map_err(|e| e.to_string())?;
            Ok((m, p))
        })
        .collect::<Result<_, String>>()?;
    let text = match format {
        Format::Json => json_text(&json!({
            "k": k,
            "order": 3 * k - 1,
            "count": rows.len(),
            "rational_catalan": maximal_catalan(k).to_string(),
            "sets": rows.iter().map(|(m, p)| json!({
                "set": m.elements(),
                "path": p.to_string(),
                "area": p.area(),
                "inversions": inversions(m),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("set,path,area,inversions\n");
            for (m, p) in &rows {
                s.push_str(&format!(
                    "\"{}\",{},{},{}\n",
                    joined(m.elements(), " "),
                    p,
                    p.area(),
                    inversions(m)
                ));
            }
            s
        }
        Format::Plain => rows
            .iter()
            .map(|(m, p)| format!("{m}\t{p}\tarea={}\n", p.area()))
            .collect(),
    };
    Ok(Outcome::ok(text))
}

fn dyck(format: Format, path: &str) -> CmdResult {
    let p: LatticePath = path
        .parse()
        .map_err(|e: crate::dyck::DyckError| e.to_string())?;
    let valid = is_rational_dyck(&p).map_err(|e| e.to_string())?;
    let (ell, m) = p.target();
    let checked = valid.then(|| RationalDyckPath::new(p.clone()).expect("checked"));
    let area = checked.as_ref().map(RationalDyckPath::area);
    let set = checked.as_ref().and_then(|d| delta_inverse(d).ok());
    let text = match format {
        Format::Json => json_text(&json!({
            "path": p.to_string(),
            "target": [ell, m],
            "rational_dyck": valid,
            "area": area,
            "mesa_set": set.as_ref().map(MesaSet::elements),
            "order": set.as_ref().map(MesaSet::order),
        })),
        Format::Csv => format!(
            "path,east,north,rational_dyck,area,mesa_set\n{p},{ell},{m},{valid},{},\"{}\"\n",
            area.map(|a| a.to_string()).unwrap_or_default(),
            set.as_ref()
                .map(|s| joined(s.elements(), " "))
                .unwrap_or_default()
        ),
        Format::Plain => {
            let mut s = format!(
                "{p} to ({ell}, {m}): {}\n",
                if valid {
                    "rational Dyck path"
                } else {
                    "not a rational Dyck path"
                }
            );
            if let Some(a) = area {
                s.push_str(&format!("area = {a}\n"));
            }
            if let Some(set) = &set {
                s.push_str(&format!("mesa set in order {}: {set}\n", set.order()));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn reports_outcome(format: Format, reports: &[CountReport], as_table: bool) -> Outcome {
    let text = match format {
        Format::Json if as_table => {
            json_text(&serde_json::to_value(reports).expect("serializable"))
        }
        Format::Json => json_text(&serde_json::to_value(&reports[0]).expect("serializable")),
        Format::Csv => {
            let mut s = format!("{}\n", CountReport::CSV_HEADER);
            for r in reports {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        Format::Plain => plain_reports(reports),
    };
    let disagree: Vec<u32> = reports
        .iter()
        .filter(|r| !r.agree)
        .map(|r| r.order)
        .collect();
    if disagree.is_empty() {
        Outcome::ok(text)
    } else {
        Outcome {
            code: EXIT_DISAGREE,
            stdout: text,
            stderr: format!("error: engines disagree at n = {disagree:?}\n"),
        }
    }
}

fn plain_reports(reports: &[CountReport]) -> String {
    let mut s = format!("{:>4}  {:>12}  engines\n", "n", "|AMS_n|");
    for r in reports {
        let value = r
            .value()
            .map(ToString::to_string)
            .unwrap_or_else(|| "DISAGREE".into());
        let engines: Vec<String> = Engine::ALL
            .iter()
            .filter_map(|&e| r.count(e).map(|c| format!("{e}={c}")))
            .collect();
        s.push_str(&format!(
            "{:>4}  {:>12}  {}\n",
            r.order,
            value,
            engines.join(" ")
        ));
    }
    s
}

fn render(format: Format, figure: &RenderCommand) -> CmdResult {
    let (svg, output, kind) = match figure {
        RenderCommand::Perm { word, output, cell } => {
            let letters = parse_letters(word).map_err(|e| e.to_string())?;
            let w = validate_stirling(&letters).map_err(|e| e.to_string())?;
            let styling = styling(*cell, true)?;
            (render_permutation(&w, &styling), output, "perm")
        }
        RenderCommand::Dyck {
            path,
            output,
            cell,
            no_slope,
        } => {
            let p: RationalDyckPath = path
                .parse()
                .map_err(|e: crate::dyck::DyckError| e.to_string())?;
            let styling = styling(*cell, !no_slope)?;
            (render_dyck(&p, &styling), output, "dyck")
        }
    };
    std::fs::write(output, &svg).map_err(|e| format!("cannot write {}: {e}", output.display()))?;
    let text = match format {
        Format::Json => json_text(&json!({
            "kind": kind,
            "output": output.display().to_string(),
            "bytes": svg.len(),
        })),
        Format::Csv => format!(
            "kind,output,bytes\n{kind},{},{}\n",
            output.display(),
            svg.len()
        ),
        Format::Plain => format!("wrote {}\n", output.display()),
    };
    Ok(Outcome::ok(text))
}

fn styling(cell: u32, slope_line: bool) -> Result<Styling, String> {
    if cell == 0 {
        return Err("--cell must be positive".into());
    }
    Ok(Styling {
        cell,
        margin: cell,
        canvas: None,
        slope_line,
    })
}
