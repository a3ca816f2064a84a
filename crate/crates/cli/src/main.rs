//! `spf`: command-line access to strong-parity-factor checks, spectral
//! radii, the extremal families and the verification campaigns.
//!
//! Exit status: 0 when every check passed, 1 when a report contains a failed
//! or discrepant row, 2 on usage, input or budget errors.

use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ColorChoice, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spf_core::extremal::{self, Family, IntCubic};
use spf_core::harness::{self, EdgeSchedule};
use spf_core::io::{parse_graph, serialize_graph, Format};
use spf_core::parity::{criterion_check, find_parity_factor, oracle_check, SpfVerdict};
use spf_core::report::{fmt_num, HarnessReport, Tolerances, EQUALITY_TOL, NONSTRICT_SLACK, STRICT_MARGIN};
use spf_core::spectra::{cubic_roots, spectral_radius, DEFAULT_TOL};
use spf_core::{Error, Graph, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "spf", version, about = "Strong parity factors and spectral radius tools")]
struct Cli {
    /// Graph input format; detected from the first byte when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<GraphFormat>,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Margin for strict inequalities.
    #[arg(long, global = true, default_value_t = STRICT_MARGIN)]
    strict_margin: f64,

    /// Slack for non-strict inequalities.
    #[arg(long, global = true, default_value_t = NONSTRICT_SLACK)]
    slack: f64,

    /// Tolerance for equalities.
    #[arg(long, global = true, default_value_t = EQUALITY_TOL)]
    equality_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Graph6,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Criterion,
    Oracle,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Gstar,
    G2,
    G3,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Graph,
    Phi,
    Rho,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral radius of a graph.
    Rho {
        /// Graph file, or `-` for stdin.
        graph: PathBuf,
        /// Residual tolerance of the power iteration.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Decide whether a graph has a strong parity factor.
    Check {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Criterion)]
        method: MethodArg,
    },
    /// Search for a spanning subgraph with no isolated vertex, odd exactly on the demand set.
    Factor {
        graph: PathBuf,
        /// Comma-separated vertices; empty for the all-even demand.
        #[arg(long, default_value = "")]
        demand: String,
    },
    /// Build an extremal family member.
    Extremal {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Gstar)]
        family: FamilyArg,
        /// Cut size, required for g2 and g3.
        #[arg(long)]
        s: Option<usize>,
        /// Print only this part instead of the summary.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Random graphs above the spectral threshold must have a strong parity factor.
    VerifyTheorem {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Fixed edge probability instead of the default 0.5..0.95 sweep.
        #[arg(long)]
        edge_p: Option<f64>,
    },
    /// Instance checks of every inequality in the case analysis.
    VerifyLemmas {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        /// Inclusive cut-size range, `a..b`.
        #[arg(long, value_parser = parse_range)]
        s_range: Option<(usize, usize)>,
        /// Also run this many random Lemma 2.3 instances.
        #[arg(long, default_value_t = 0)]
        partition_instances: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Compare the subset criterion with brute force on small graphs.
    Scan {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Read graph6 lines from this file (or `-`) instead of enumerating.
        #[arg(long)]
        stream: Option<PathBuf>,
    },
    /// Measure whether the extremal graph has a strong parity factor.
    ProbeSharpness {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
    },
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {text:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    Ok((a, b))
}

/// Failure of a run before any report is complete; always exit status 2.
#[derive(Debug)]
enum Fatal {
    Core(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        Fatal::Core(e)
    }
}

impl std::fmt::Display for Fatal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fatal::Core(e) => write!(f, "{e}"),
            Fatal::Io(m) | Fatal::Usage(m) => write!(f, "{m}"),
        }
    }
}

/// Data for stdout plus whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let color = if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) || !io::stderr().is_terminal() {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches = <Cli as clap::CommandFactory>::command().color(color).try_get_matches();
    let cli = match matches.and_then(|m| <Cli as clap::FromArgMatches>::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("spf: {e}");
            ExitCode::from(2)
        }
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances, Fatal> {
    for (name, v) in [
        ("--strict-margin", cli.strict_margin),
        ("--slack", cli.slack),
        ("--equality-tol", cli.equality_tol),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Fatal::Usage(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(Tolerances {
        strict: cli.strict_margin,
        slack: cli.slack,
        equality: cli.equality_tol,
    })
}

fn read_input(path: &PathBuf) -> Result<String, Fatal> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Fatal::Io(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Fatal::Io(format!("reading {}: {e}", path.display())))
    }
}

fn core_format(f: Option<GraphFormat>) -> Option<Format> {
    f.map(|f| match f {
        GraphFormat::Edgelist => Format::EdgeList,
        GraphFormat::Graph6 => Format::Graph6,
    })
}

fn read_graph(cli: &Cli, path: &PathBuf) -> Result<Graph, Fatal> {
    let text = read_input(path)?;
    Ok(parse_graph(&text, core_format(cli.format))?)
}

fn run(cli: &Cli) -> Result<Outcome, Fatal> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Rho { graph, tol: t } => {
            if t.is_nan() || *t <= 0.0 {
                return Err(Fatal::Usage(format!("--tol must be positive, got {t}")));
            }
            let g = read_graph(cli, graph)?;
            let r = spectral_radius(&g, *t)?;
            let text = match cli.output {
                Output::Text => format!("{}\n", fmt_num(r.value)),
                Output::Csv => format!(
                    "rho,residual,iterations\n{},{},{}\n",
                    fmt_num(r.value),
                    fmt_num(r.residual),
                    r.iterations
                ),
                Output::Json => format!(
                    "{}\n",
                    json!({"rho": num(r.value), "residual": num(r.residual), "iterations": r.iterations})
                ),
            };
            Ok(Outcome { text, ok: true })
        }
        Command::Check { graph, method } => {
            let g = read_graph(cli, graph)?;
            let mut verdicts = Vec::new();
            if matches!(method, MethodArg::Criterion | MethodArg::Both) {
                verdicts.push(criterion_check(&g)?);
            }
            if matches!(method, MethodArg::Oracle | MethodArg::Both) {
                verdicts.push(oracle_check(&g)?);
            }
            let ok = verdicts.iter().all(|v| v.has_spf);
            Ok(Outcome {
                text: render_verdicts(cli.output, &verdicts),
                ok,
            })
        }
        Command::Factor { graph, demand } => {
            let g = read_graph(cli, graph)?;
            let demand = parse_demand(demand)?;
            let found = find_parity_factor(&g, demand)?;
            Ok(Outcome {
                text: render_factor(cli.output, demand, found.as_ref()),
                ok: found.is_some(),
            })
        }
        Command::Extremal {
            delta,
            n,
            family,
            s,
            emit,
        } => extremal_cmd(cli, *delta, *n, *family, *s, *emit),
        Command::VerifyTheorem {
            delta,
            n,
            samples,
            seed,
            edge_p,
        } => {
            let schedule = edge_p.map(EdgeSchedule::Fixed).unwrap_or_default();
            if let EdgeSchedule::Fixed(p) = schedule {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Fatal::Usage(format!("--edge-p must lie in [0, 1], got {p}")));
                }
            }
            report(cli, harness::theorem_check(*delta, *n, *samples, *seed, schedule)?)
        }
        Command::VerifyLemmas {
            delta,
            n,
            s_range,
            partition_instances,
            seed,
        } => {
            let mut rep = harness::verify_proof_inequalities(*delta, *n, *s_range, tol)?;
            if *partition_instances > 0 {
                rep.extend(harness::lemma23_campaign(*partition_instances, *seed, tol)?);
                rep.sort();
            }
            report(cli, rep)
        }
        Command::Scan { max_n, stream } => {
            let rep = match stream {
                Some(path) => harness::scan_stream(&read_input(path)?)?,
                None => harness::scan_small(*max_n)?,
            };
            report(cli, rep)
        }
        Command::ProbeSharpness { delta, n } => report(cli, harness::sharpness_probe(*delta, *n)?),
    }
}

/// JSON number at 12 significant digits.
fn num(x: f64) -> serde_json::Value {
    fmt_num(x)
        .parse::<serde_json::Number>()
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

fn parse_demand(text: &str) -> Result<VertexSet, Fatal> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Fatal::Usage(format!("bad demand vertex {t:?}: {e}")))
                .and_then(|v| {
                    if v < spf_core::graph::MAX_ORDER {
                        Ok(v)
                    } else {
                        Err(Fatal::Usage(format!("demand vertex {v} out of range")))
                    }
                })
        })
        .collect()
}

fn set_text(s: Option<VertexSet>) -> String {
    match s {
        Some(s) => format!("{s:?}"),
        None => "none".into(),
    }
}

fn render_verdicts(output: Output, verdicts: &[SpfVerdict]) -> String {
    match output {
        Output::Json => {
            let mut out = String::new();
            for v in verdicts {
                out.push_str(&v.to_json().to_string());
                out.push('\n');
            }
            out
        }
        Output::Csv => {
            let mut out = String::from("method,has_spf,witness\n");
            for v in verdicts {
                let w = v
                    .witness
                    .map(|w| w.to_vec().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
                out.push_str(&format!(
                    "{},{},{}\n",
                    v.method.as_str(),
                    v.has_spf,
                    w.unwrap_or_default()
                ));
            }
            out
        }
        Output::Text => verdicts
            .iter()
            .map(|v| {
                let label = if v.method.as_str() == "criterion" { "S" } else { "X" };
                format!(
                    "{}: {} ({label}={})\n",
                    v.method.as_str(),
                    if v.has_spf {
                        "has a strong parity factor"
                    } else {
                        "no strong parity factor"
                    },
                    set_text(v.witness)
                )
            })
            .collect(),
    }
}

fn render_factor(output: Output, demand: VertexSet, found: Option<&spf_core::parity::FactorWitness>) -> String {
    match output {
        Output::Json => format!(
            "{}\n",
            json!({
                "demand": demand.to_vec(),
                "found": found.is_some(),
                "edges": found.map(|f| f.edges.clone()),
                "degrees": found.map(|f| f.degrees.clone()),
            })
        ),
        Output::Csv => {
            let mut out = String::from("u,v\n");
            for (u, v) in found.map(|f| f.edges.as_slice()).unwrap_or_default() {
                out.push_str(&format!("{u},{v}\n"));
            }
            out
        }
        Output::Text => match found {
            Some(f) => f.edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect(),
            None => format!("no factor for demand {demand:?}\n"),
        },
    }
}

fn extremal_cmd(
    cli: &Cli,
    delta: usize,
    n: usize,
    family: FamilyArg,
    s: Option<usize>,
    emit: Option<Emit>,
) -> Result<Outcome, Fatal> {
    let need_s = || s.ok_or_else(|| Fatal::Usage("--s is required for this family".into()));
    let (phi, built): (IntCubic, Box<dyn Fn() -> spf_core::Result<Family>>) = match family {
        FamilyArg::Gstar => (
            extremal::phi_bstar(delta, n).and_then(|p| extremal::check_extremal(delta, n).map(|_| p))?,
            Box::new(move || extremal::build_extremal(delta, n)),
        ),
        FamilyArg::G2 => {
            let s = need_s()?;
            (
                extremal::phi_b2(s, delta, n)?,
                Box::new(move || extremal::build_case1(s, delta, n)),
            )
        }
        FamilyArg::G3 => {
            let s = need_s()?;
            (
                extremal::phi_b3(s, delta, n)?,
                Box::new(move || extremal::build_case3(s, delta, n)),
            )
        }
    };
    let rho = || -> Result<f64, Fatal> { Ok(cubic_roots(&phi.to_poly())?[0]) };
    let text = match emit {
        Some(Emit::Phi) => format!("[{},{},{}]\n", phi.c2, phi.c1, phi.c0),
        Some(Emit::Rho) => format!("{}\n", fmt_num(rho()?)),
        Some(Emit::Graph) => {
            let f = built()?;
            let format = core_format(cli.format).unwrap_or(Format::EdgeList);
            let mut s = serialize_graph(&f.graph, format)?;
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        None => {
            let label = match family {
                FamilyArg::Gstar => "Gstar",
                FamilyArg::G2 => "G2",
                FamilyArg::G3 => "G3",
            };
            let order = n;
            let below = (n as u128) < 2 * (delta as u128).pow(2);
            let r = rho()?;
            match cli.output {
                Output::Json => format!(
                    "{}\n",
                    json!({
                        "family": label,
                        "params": {"delta": delta, "n": n, "s": s},
                        "order": order,
                        "phi": phi.coefficients(),
                        "rho": num(r),
                        "below_theorem_range": below,
                    })
                ),
                Output::Csv => format!(
                    "family,delta,n,s,order,c2,c1,c0,rho\n{label},{delta},{n},{},{order},{},{},{},{}\n",
                    s.map(|s| s.to_string()).unwrap_or_default(),
                    phi.c2,
                    phi.c1,
                    phi.c0,
                    fmt_num(r)
                ),
                Output::Text => format!(
                    "{label} delta={delta} n={n}{} phi=[{},{},{}] rho={}{}\n",
                    s.map(|s| format!(" s={s}")).unwrap_or_default(),
                    phi.c2,
                    phi.c1,
                    phi.c0,
                    fmt_num(r),
                    if below { " (below n >= 2 delta^2)" } else { "" }
                ),
            }
        }
    };
    Ok(Outcome { text, ok: true })
}

fn report(cli: &Cli, rep: HarnessReport) -> Result<Outcome, Fatal> {
    let ok = rep.all_passed();
    let text = match cli.output {
        Output::Csv => rep.to_csv(),
        Output::Json => rep.to_json_lines(),
        Output::Text => render_text(&rep),
    };
    Ok(Outcome { text, ok })
}

fn render_text(rep: &HarnessReport) -> String {
    let mut out = String::new();
    for r in &rep.rows {
        let mut params = Vec::new();
        for (k, v) in [
            ("delta", r.params.delta),
            ("n", r.params.n),
            ("s", r.params.s),
            ("seed", r.params.seed),
        ] {
            if let Some(v) = v {
                params.push(format!("{k}={v}"));
            }
        }
        out.push_str(&format!(
            "{} {} {} lhs={} rhs={}",
            if r.passed { "PASS" } else { "FAIL" },
            r.check_id,
            params.join(" "),
            fmt_num(r.lhs),
            fmt_num(r.rhs)
        ));
        if let Some(w) = &r.witness {
            out.push_str(&format!(" [{w}]"));
        }
        out.push('\n');
    }
    let failed = rep.failed().count();
    out.push_str(&format!("{} rows, {failed} failed\n", rep.rows.len()));
    out
}
