//! Command-line front end: parameter parsing, batch runs, reference-table
//! reproduction and CSV / JSON-lines emission. Every physical number printed
//! comes from a library call; this binary only parses, dispatches and
//! formats.
//!
//! Exit codes: 0 = success with results, 1 = clean run but no solution or
//! no convergence, 2 = invalid input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use killingbeck::{
    build_wavefunction, coulomb_energy, nearest_energy_gap, oscillator_energy,
    solve_by_termination, solve_energy, table1, verify, Channel, GridConfig, IndexConvention,
    OscillatorSpec, PhysicalParams, PotentialParams, QuasiExactSolution, SearchConfig,
};
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "killingbeck",
    about = "Relativistic Killingbeck-potential bound states under pseudospin symmetry",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the quasi-exact (E, b) system for one channel
    Solve(SolveArgs),
    /// Emit the 16-row published-table diagnostic
    Table1(Table1Args),
    /// Cross-check terminating solutions against the shooting oracle
    Verify(SolveArgs),
    /// Sample a normalized two-component wavefunction
    Wavefunction(WavefunctionArgs),
    /// Closed-form special cases
    Special(SpecialArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Mode {
    Eq19,
    Recurrence,
    Both,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Convention {
    RegularDelta,
    PaperKappa,
}

impl Convention {
    fn to_lib(self) -> IndexConvention {
        match self {
            Convention::RegularDelta => IndexConvention::RegularDelta,
            Convention::PaperKappa => IndexConvention::PaperKappa,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Csv,
    JsonLines,
}

#[derive(Args)]
struct SolveArgs {
    /// Quadratic strength a, fm^-3
    #[arg(long)]
    a: Option<f64>,
    /// Coulomb strength c (dimensionless)
    #[arg(long)]
    c: Option<f64>,
    /// Mass M, fm^-1
    #[arg(long = "M")]
    mass: Option<f64>,
    /// Pseudospin constant C_ps, fm^-1
    #[arg(long = "Cps", allow_hyphen_values = true)]
    c_ps: Option<f64>,
    /// Series index n (>= 1); the recurrence route solves degree n_r = n - 1
    #[arg(long)]
    n: Option<i64>,
    /// Spin-orbit number kappa (nonzero)
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<i64>,
    /// Solver route
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Index convention inside the closed-form relation
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plain-text key=value config file; flags take precedence over it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Number of radial samples
    #[arg(long)]
    points: Option<usize>,
    /// Which solution to sample when several terminate (ascending E)
    #[arg(long)]
    root: Option<usize>,
}

#[derive(Args)]
struct SpecialArgs {
    #[command(subcommand)]
    which: SpecialCommand,
}

#[derive(Subcommand)]
enum SpecialCommand {
    /// Coulomb limit a = b = 0 at exact p-spin symmetry
    Coulomb {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        ltilde: i64,
        #[arg(long = "M")]
        mass: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oscillator limit b = c = 0 at exact p-spin symmetry
    Oscillator {
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        nr: usize,
        #[arg(long)]
        ltilde: i64,
        #[arg(long = "M")]
        mass: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// 12-significant-digit scientific formatting, '.' decimal point, stable
/// across runs. Non-finite values map to "inf"/"-inf"/"nan".
fn sci(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{:.11e}", x)
    }
}

fn json_num(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

struct Output {
    path: Option<PathBuf>,
    buf: String,
}

impl Output {
    fn new(path: Option<PathBuf>) -> Self {
        Self {
            path,
            buf: String::new(),
        }
    }
    fn line(&mut self, s: &str) {
        self.buf.push_str(s);
        self.buf.push('\n');
    }
    fn finish(self) -> Result<(), String> {
        match self.path {
            Some(p) => {
                fs::write(&p, self.buf).map_err(|e| format!("cannot write {}: {e}", p.display()))
            }
            None => std::io::stdout()
                .write_all(self.buf.as_bytes())
                .map_err(|e| e.to_string()),
        }
    }
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

/// key=value config file; '#' starts a comment.
fn read_config(path: &PathBuf) -> Result<HashMap<String, String>, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), i + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

struct ResolvedInputs {
    pot: PotentialParams,
    phys: PhysicalParams,
    ch: Channel,
    mode: Mode,
    convention: IndexConvention,
    format: Format,
    out: Option<PathBuf>,
}

fn resolve_inputs(args: &SolveArgs) -> Result<ResolvedInputs, String> {
    let file = match &args.config {
        Some(p) => read_config(p)?,
        None => HashMap::new(),
    };
    let get_f64 = |flag: Option<f64>, key: &str| -> Result<Option<f64>, String> {
        if flag.is_some() {
            return Ok(flag);
        }
        match file.get(key) {
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key {key}: cannot parse '{v}' as a number")),
            None => Ok(None),
        }
    };
    let get_i64 = |flag: Option<i64>, key: &str| -> Result<Option<i64>, String> {
        if flag.is_some() {
            return Ok(flag);
        }
        match file.get(key) {
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key {key}: cannot parse '{v}' as an integer")),
            None => Ok(None),
        }
    };
    let required = |name: &str| {
        format!(
            "missing required input --{name}\nusage: killingbeck <solve|verify|wavefunction> --a A --c C --M M --Cps CPS --n N --kappa K [options] (see --help)"
        )
    };

    let a = get_f64(args.a, "a")?.ok_or_else(|| required("a"))?;
    let c = get_f64(args.c, "c")?.ok_or_else(|| required("c"))?;
    let mass = get_f64(args.mass, "M")?.ok_or_else(|| required("M"))?;
    let c_ps = get_f64(args.c_ps, "Cps")?.ok_or_else(|| required("Cps"))?;
    let n = get_i64(args.n, "n")?.ok_or_else(|| required("n"))?;
    let kappa = get_i64(args.kappa, "kappa")?.ok_or_else(|| required("kappa"))?;
    for (name, v) in [("a", a), ("c", c), ("M", mass), ("Cps", c_ps)] {
        if !v.is_finite() {
            return Err(format!("--{name} must be finite, got {v}"));
        }
    }
    if a == 0.0 {
        return Err("a = 0 is outside the quasi-exact path; use `special coulomb` instead".into());
    }

    let mode = args
        .mode
        .unwrap_or(match file.get("mode").map(String::as_str) {
            Some("eq19") => Mode::Eq19,
            Some("recurrence") => Mode::Recurrence,
            _ => Mode::Both,
        });
    let convention = args.convention.map(Convention::to_lib).unwrap_or(
        match file.get("convention").map(String::as_str) {
            Some("paper-kappa") => IndexConvention::PaperKappa,
            _ => IndexConvention::RegularDelta,
        },
    );
    let format = args
        .format
        .unwrap_or(match file.get("format").map(String::as_str) {
            Some("json-lines") => Format::JsonLines,
            _ => Format::Csv,
        });
    let out = args
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from));

    let pot = PotentialParams::new(a, 0.0, c).map_err(|e| e.to_string())?;
    let phys = PhysicalParams::new(mass, c_ps).map_err(|e| e.to_string())?;
    let ch = Channel::from_kappa(kappa)
        .and_then(|ch| ch.with_n(n))
        .map_err(|e| e.to_string())?;
    Ok(ResolvedInputs {
        pot,
        phys,
        ch,
        mode,
        convention,
        format,
        out,
    })
}

fn collect_solutions(
    inp: &ResolvedInputs,
) -> Result<(Vec<QuasiExactSolution>, Vec<Option<f64>>), String> {
    let search = SearchConfig::default();
    let n_r = (inp.ch.n() - 1) as usize;
    let eq19 = || solve_energy(&inp.pot, &inp.phys, &inp.ch, inp.convention, &search);
    let recurrence = || solve_by_termination(&inp.pot, &inp.phys, &inp.ch, n_r, &search);
    let (mut sols, other) = match inp.mode {
        Mode::Eq19 => (eq19().map_err(|e| e.to_string())?, Vec::new()),
        Mode::Recurrence => (recurrence().map_err(|e| e.to_string())?, Vec::new()),
        Mode::Both => {
            let mut all = eq19().map_err(|e| e.to_string())?;
            let rec = recurrence().map_err(|e| e.to_string())?;
            all.extend(rec.iter().copied());
            (all, rec)
        }
    };
    sols.sort_by(|s1, s2| s1.e.total_cmp(&s2.e));
    let gaps = match inp.mode {
        Mode::Both => nearest_energy_gap(&sols, &other),
        _ => vec![None; sols.len()],
    };
    Ok((sols, gaps))
}

fn cmd_solve(args: &SolveArgs) -> ExitCode {
    let inp = match resolve_inputs(args) {
        Ok(i) => i,
        Err(e) => return fail(2, &e),
    };
    let (sols, gaps) = match collect_solutions(&inp) {
        Ok(v) => v,
        Err(e) => return fail(1, &e),
    };
    let mut out = Output::new(inp.out.clone());
    match inp.format {
        Format::Csv => {
            out.line("method,n,kappa,a,c,M,Cps,E,b_solved,gamma_tilde,residual,agreement");
            for (s, gap) in sols.iter().zip(&gaps) {
                out.line(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    s.method.as_str(),
                    s.channel.n(),
                    s.channel.kappa(),
                    sci(inp.pot.a),
                    sci(inp.pot.c),
                    sci(inp.phys.mass),
                    sci(inp.phys.c_ps),
                    sci(s.e),
                    sci(s.b_solved),
                    sci(s.gamma_tilde(&inp.phys)),
                    sci(s.residual),
                    gap.map(sci).unwrap_or_default(),
                ));
            }
        }
        Format::JsonLines => {
            for (s, gap) in sols.iter().zip(&gaps) {
                out.line(
                    &serde_json::json!({
                        "method": s.method.as_str(),
                        "n": s.channel.n(),
                        "kappa": s.channel.kappa(),
                        "a": json_num(inp.pot.a),
                        "c": json_num(inp.pot.c),
                        "M": json_num(inp.phys.mass),
                        "Cps": json_num(inp.phys.c_ps),
                        "E": json_num(s.e),
                        "b_solved": json_num(s.b_solved),
                        "gamma_tilde": json_num(s.gamma_tilde(&inp.phys)),
                        "residual": json_num(s.residual),
                        "agreement": gap.map(json_num).unwrap_or(serde_json::Value::Null),
                    })
                    .to_string(),
                );
            }
        }
    }
    let had = !sols.is_empty();
    if let Err(e) = out.finish() {
        return fail(1, &e);
    }
    if had {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_table1(args: &Table1Args) -> ExitCode {
    let file = match &args.config {
        Some(p) => match read_config(p) {
            Ok(m) => m,
            Err(e) => return fail(2, &e),
        },
        None => HashMap::new(),
    };
    let convention = args.convention.map(Convention::to_lib).unwrap_or(
        match file.get("convention").map(String::as_str) {
            Some("paper-kappa") => IndexConvention::PaperKappa,
            _ => IndexConvention::RegularDelta,
        },
    );
    let format = args
        .format
        .unwrap_or(match file.get("format").map(String::as_str) {
            Some("json-lines") => Format::JsonLines,
            _ => Format::Csv,
        });
    let reports = table1::table1_report(convention);
    let mut out = Output::new(
        args.out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from)),
    );
    match format {
        Format::Csv => {
            out.line("n,kappa,a,E_paper,b_paper,E_computed,b_computed,abs_dE,eq19_residual_at_E_paper,computed_residual");
            for r in &reports {
                out.line(&format!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.row.n,
                    r.row.kappa,
                    r.row.a_str,
                    r.row.e_paper_str,
                    r.row.b_paper_str,
                    r.e_computed.map(sci).unwrap_or_default(),
                    r.b_computed.map(sci).unwrap_or_default(),
                    r.abs_de.map(sci).unwrap_or_default(),
                    sci(r.eq19_residual_at_e_paper),
                    r.computed_residual.map(sci).unwrap_or_default(),
                ));
            }
        }
        Format::JsonLines => {
            for r in &reports {
                out.line(
                    &serde_json::json!({
                        "n": r.row.n,
                        "kappa": r.row.kappa,
                        "a": json_num(r.row.a),
                        "E_paper": r.row.e_paper_str,
                        "b_paper": r.row.b_paper_str,
                        "E_computed": r.e_computed.map(json_num).unwrap_or(serde_json::Value::Null),
                        "b_computed": r.b_computed.map(json_num).unwrap_or(serde_json::Value::Null),
                        "abs_dE": r.abs_de.map(json_num).unwrap_or(serde_json::Value::Null),
                        "eq19_residual_at_E_paper": json_num(r.eq19_residual_at_e_paper),
                        "computed_residual": r.computed_residual.map(json_num).unwrap_or(serde_json::Value::Null),
                    })
                    .to_string(),
                );
            }
        }
    }
    if let Err(e) = out.finish() {
        return fail(1, &e);
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: &SolveArgs) -> ExitCode {
    let mut inp = match resolve_inputs(args) {
        Ok(i) => i,
        Err(e) => return fail(2, &e),
    };
    // verification runs on the terminating route; the closed-form route's
    // (E, b) pairs are generally not eigenpairs of the fixed-b problem
    inp.mode = Mode::Recurrence;
    let (sols, _) = match collect_solutions(&inp) {
        Ok(v) => v,
        Err(e) => return fail(1, &e),
    };
    if sols.is_empty() {
        return fail(1, "no terminating solution to verify");
    }
    let mut rows = Vec::new();
    for s in &sols {
        match verify(s, &inp.pot, &inp.phys, None) {
            Ok(rep) => rows.push(rep),
            Err(e) => eprintln!("verify: E = {}: {e}", sci(s.e)),
        }
    }
    if rows.is_empty() {
        return fail(1, "the oracle converged on none of the solutions");
    }
    let mut out = Output::new(inp.out.clone());
    match inp.format {
        Format::Csv => {
            out.line("E_analytic,E_numeric,abs_diff,node_count,match_defect,converged");
            for r in &rows {
                out.line(&format!(
                    "{},{},{},{},{},{}",
                    sci(r.e_analytic),
                    sci(r.e_numeric),
                    sci(r.abs_diff),
                    r.node_count,
                    sci(r.match_defect),
                    r.converged,
                ));
            }
        }
        Format::JsonLines => {
            for r in &rows {
                out.line(
                    &serde_json::json!({
                        "E_analytic": json_num(r.e_analytic),
                        "E_numeric": json_num(r.e_numeric),
                        "abs_diff": json_num(r.abs_diff),
                        "node_count": r.node_count,
                        "match_defect": json_num(r.match_defect),
                        "converged": r.converged,
                    })
                    .to_string(),
                );
            }
        }
    }
    let all_converged = rows.iter().all(|r| r.converged);
    if let Err(e) = out.finish() {
        return fail(1, &e);
    }
    if all_converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_wavefunction(args: &WavefunctionArgs) -> ExitCode {
    let mut inp = match resolve_inputs(&args.solve) {
        Ok(i) => i,
        Err(e) => return fail(2, &e),
    };
    inp.mode = Mode::Recurrence; // sampling needs a terminating series
    let (sols, _) = match collect_solutions(&inp) {
        Ok(v) => v,
        Err(e) => return fail(1, &e),
    };
    if sols.is_empty() {
        return fail(1, "no terminating solution to sample");
    }
    let idx = args.root.unwrap_or(0);
    let Some(sol) = sols.get(idx) else {
        return fail(
            2,
            &format!("--root {idx} out of range ({} solutions)", sols.len()),
        );
    };
    let grid = GridConfig {
        points: args.points.unwrap_or(GridConfig::default().points),
        ..GridConfig::default()
    };
    let wf = match build_wavefunction(sol, &inp.pot, &inp.phys, &grid) {
        Ok(w) => w,
        Err(e) => return fail(1, &e.to_string()),
    };
    let mut out = Output::new(inp.out.clone());
    match inp.format {
        Format::Csv => {
            out.line(&format!(
                "# E={} b={} N={} node_count={} norm_check={}",
                sci(sol.e),
                sci(sol.b_solved),
                sci(wf.norm),
                wf.node_count_g,
                sci(wf.quadrature_norm()),
            ));
            out.line("r,G,F");
            for i in 0..wf.grid.len() {
                out.line(&format!(
                    "{},{},{}",
                    sci(wf.grid[i]),
                    sci(wf.g[i]),
                    sci(wf.f[i])
                ));
            }
        }
        Format::JsonLines => {
            out.line(
                &serde_json::json!({
                    "E": json_num(sol.e),
                    "b": json_num(sol.b_solved),
                    "N": json_num(wf.norm),
                    "node_count": wf.node_count_g,
                    "norm_check": json_num(wf.quadrature_norm()),
                })
                .to_string(),
            );
            for i in 0..wf.grid.len() {
                out.line(
                    &serde_json::json!({
                        "r": json_num(wf.grid[i]),
                        "G": json_num(wf.g[i]),
                        "F": json_num(wf.f[i]),
                    })
                    .to_string(),
                );
            }
        }
    }
    if let Err(e) = out.finish() {
        return fail(1, &e);
    }
    ExitCode::SUCCESS
}

fn cmd_special(args: &SpecialArgs) -> ExitCode {
    let (label, e, fields, format, out_path) = match &args.which {
        SpecialCommand::Coulomb {
            c,
            n,
            ltilde,
            mass,
            format,
            out,
        } => match coulomb_energy(*c, *n, *ltilde, *mass) {
            Ok(e) => (
                "coulomb",
                e,
                vec![
                    ("c", *c),
                    ("n", *n as f64),
                    ("ltilde", *ltilde as f64),
                    ("M", *mass),
                ],
                *format,
                out.clone(),
            ),
            Err(err) => return fail(2, &err.to_string()),
        },
        SpecialCommand::Oscillator {
            omega,
            nr,
            ltilde,
            mass,
            format,
            out,
        } => match OscillatorSpec::new(*omega, *nr, *ltilde, *mass) {
            Ok(spec) => (
                "oscillator",
                oscillator_energy(&spec),
                vec![
                    ("omega", *omega),
                    ("nr", *nr as f64),
                    ("ltilde", *ltilde as f64),
                    ("M", *mass),
                ],
                *format,
                out.clone(),
            ),
            Err(err) => return fail(2, &err.to_string()),
        },
    };
    let mut out = Output::new(out_path);
    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            out.line(&format!("case,{},E", keys.join(",")));
            let vals: Vec<String> = fields.iter().map(|(_, v)| sci(*v)).collect();
            out.line(&format!("{label},{},{}", vals.join(","), sci(e)));
        }
        Format::JsonLines => {
            let mut obj = serde_json::Map::new();
            obj.insert("case".into(), serde_json::Value::String(label.into()));
            for (k, v) in &fields {
                obj.insert((*k).into(), json_num(*v));
            }
            obj.insert("E".into(), json_num(e));
            out.line(&serde_json::Value::Object(obj).to_string());
        }
    }
    if let Err(e) = out.finish() {
        return fail(1, &e);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Wavefunction(args) => cmd_wavefunction(args),
        Command::Special(args) => cmd_special(args),
    }
}
