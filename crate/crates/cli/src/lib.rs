//! Command-line front end: `audit`, `enumerate`, `similar`, `classify`,
//! `apply`, `evolve` and `select`.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 `similar` found the pair
//! not similar, 4 `audit` found an entry with no matching printed form,
//! 5 `classify` rejected the operator.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use cnot_core::catalog::{
    self, audit_catalog, builtin_catalog, check_transcription, cnot_family_entries, render_audit_table,
};
use cnot_core::linalg::format_complex;
use cnot_core::similarity::{property_name, Measured};
use cnot_core::synthesis::phase_classes;
use cnot_core::{
    apply_operator, check_similarity, classify_cnot_like, enumerate_family, hamiltonian_unitary, select_realizable,
    Angle, AxisConstraint, Error, HamiltonianParams, Op4, SequenceTemplate, State, Verdict,
};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_SIMILAR: i32 = 3;
pub const EXIT_AUDIT_MISMATCH: i32 = 4;
pub const EXIT_NOT_CNOT_LIKE: i32 = 5;

const EIGEN_TOL: f64 = 1e-9;
const EQ_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn with_code(exit_code: i32, stdout: String) -> Self {
        CommandResult { exit_code, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        CommandResult { exit_code: EXIT_USAGE, stdout: String::new(), stderr: format!("{}\n", msg.into()) }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cnotsim", version, about = "Two-spin NMR CNOT toolkit", color = clap::ColorChoice::Never)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate both printed sequence forms of every catalog entry
    Audit {
        #[arg(long, default_value_t = EQ_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// List the sixteen sandwich templates and their unitaries
    Enumerate {
        #[arg(long)]
        json: bool,
        /// Also group members that differ only by a global phase
        #[arg(long)]
        phase_classes: bool,
        #[arg(long, default_value_t = EQ_TOL)]
        tol: f64,
    },
    /// Run the six-property similarity check on two operators
    Similar {
        /// Catalog id or matrix JSON file
        a: String,
        /// Catalog id or matrix JSON file
        b: String,
        #[arg(long, default_value_t = EIGEN_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Identify control and target of a CNOT-like operator
    Classify {
        /// Catalog id or matrix JSON file
        operator: String,
        #[arg(long, default_value_t = EQ_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Apply an operator to a two-spin state
    Apply {
        /// Catalog id or matrix JSON file
        operator: String,
        /// State as inline JSON `[[re,im] x4]` or a path to such a file
        #[arg(long)]
        state: String,
        #[arg(long)]
        json: bool,
    },
    /// Free-evolution propagator exp(-iHt)
    Evolve {
        #[command(flatten)]
        params: EvolveArgs,
        #[arg(long)]
        json: bool,
    },
    /// Templates realizable with the given pulse axes
    Select {
        /// Axes drivable on spin 1, e.g. `x,z` or `none` (default: all)
        #[arg(long)]
        spin1: Option<String>,
        /// Axes drivable on spin 2 (default: all)
        #[arg(long)]
        spin2: Option<String>,
        /// Whether the scalar coupling can be used: yes or no
        #[arg(long, default_value = "yes")]
        coupling: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct EvolveArgs {
    /// Values accept `pi/4` syntax
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    omega1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    omega2: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    omega12: String,
    #[arg(long, allow_hyphen_values = true)]
    t: String,
}

/// Runs one command; `argv` excludes the program name.
pub fn run_command<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("cnotsim")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult::ok(e.render().to_string()),
                _ => {
                    let rendered = e.render().to_string();
                    CommandResult::usage(rendered.lines().next().unwrap_or("usage error").to_string())
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => CommandResult::usage(format!("error: {e}")),
    }
}

fn dispatch(cmd: Command) -> Result<CommandResult, Error> {
    match cmd {
        Command::Audit { tol, json } => Ok(audit(tol, json)),
        Command::Enumerate { json, phase_classes, tol } => Ok(enumerate(json, phase_classes, tol)),
        Command::Similar { a, b, tol, json } => similar(&a, &b, tol, json),
        Command::Classify { operator, tol, json } => classify(&operator, tol, json),
        Command::Apply { operator, state, json } => apply(&operator, &state, json),
        Command::Evolve { params, json } => evolve(&params, json),
        Command::Select { spin1, spin2, coupling, json } => select(spin1.as_deref(), spin2.as_deref(), &coupling, json),
    }
}

/// Resolves a catalog id, falling back to a matrix JSON file.
pub fn resolve_operator(spec: &str) -> Result<Op4, Error> {
    if let Ok(entry) = catalog::lookup(spec) {
        return Ok(entry.matrix());
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::MatrixFormat(format!("{spec}: {e}")))?;
        return Op4::from_json_str(&text);
    }
    Err(Error::NotFound(spec.to_string()))
}

fn parse_real(flag: &str, text: &str) -> Result<f64, Error> {
    let a: Angle = text.parse().map_err(|e| Error::InvalidParameter(format!("--{flag}: {e}")))?;
    Ok(a.radians())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json renders");
    s.push('\n');
    s
}

fn audit(tol: f64, json: bool) -> CommandResult {
    let records = audit_catalog(builtin_catalog(), tol);
    let stdout = if json {
        pretty(&serde_json::to_value(&records).expect("audit serializes"))
    } else {
        let mut t = render_audit_table(&records);
        let disagree: Vec<&str> = records.iter().filter(|r| !r.forms_agree).map(|r| r.id).collect();
        let _ =
            writeln!(t, "\n{} entries audited at tol {tol:e}; forms disagree: {}", records.len(), disagree.join(", "));
        t
    };
    match check_transcription(&records) {
        Ok(()) => CommandResult::ok(stdout),
        Err(e) => CommandResult { exit_code: EXIT_AUDIT_MISMATCH, stdout, stderr: format!("error: {e}\n") },
    }
}

fn catalog_id_for(m: &Op4) -> Option<&'static str> {
    cnot_family_entries().find(|e| e.matrix::<f64>().approx_eq(m, EQ_TOL)).map(|e| e.id)
}

fn enumerate(json: bool, with_classes: bool, tol: f64) -> CommandResult {
    let family = enumerate_family::<f64>();
    let classes = with_classes.then(|| phase_classes(&family, tol));
    if json {
        let members: Vec<serde_json::Value> = family
            .iter()
            .map(|(t, m)| {
                json!({
                    "template": t,
                    "sequence": t.to_sequence().to_notation(),
                    "matrix": m.to_json(),
                    "catalog_id": catalog_id_for(m),
                })
            })
            .collect();
        let mut doc = json!({ "count": family.len(), "family": members });
        if let Some(c) = &classes {
            doc["phase_classes"] = json!(c);
        }
        return CommandResult::ok(pretty(&doc));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{:<3} {:<14} {:<44} {:<6} control/target", "#", "template", "sequence", "id");
    for (k, (t, m)) in family.iter().enumerate() {
        let ct = classify_cnot_like(m, tol)
            .map(|c| format!("{}{:?}->{}", c.control_spin, c.control_polarity, c.target_spin).to_lowercase())
            .unwrap_or_else(|_| "-".into());
        let _ = writeln!(
            out,
            "{:<3} {:<14} {:<44} {:<6} {}",
            k,
            t.to_string(),
            t.to_sequence().to_notation(),
            catalog_id_for(m).unwrap_or("-"),
            ct
        );
    }
    let _ = writeln!(out, "{} members", family.len());
    if let Some(c) = classes {
        let _ = writeln!(out, "{} global-phase classes: {:?}", c.len(), c);
    }
    CommandResult::ok(out)
}

fn render_measured(m: &Measured<f64>) -> String {
    match m {
        Measured::Scalar(z) => format_complex(*z, 6),
        Measured::Spectrum(zs) => {
            let parts: Vec<String> = zs.iter().map(|z| format_complex(*z, 4)).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Measured::Absent => "-".into(),
    }
}

fn similar(a: &str, b: &str, tol: f64, json: bool) -> Result<CommandResult, Error> {
    let (ma, mb) = (resolve_operator(a)?, resolve_operator(b)?);
    let report = check_similarity(&ma, &mb, tol)?;
    let code = if report.verdict == Verdict::Similar { EXIT_OK } else { EXIT_NOT_SIMILAR };
    if json {
        return Ok(CommandResult::with_code(code, pretty(&report.to_json())));
    }
    let mut out = String::new();
    let _ = writeln!(out, "A = {a}, B = {b}, tol = {tol:e}");
    let _ = writeln!(out, "{:<20} {:<5} {:<34} {:<34} {:>9}", "property", "pass", "A", "B", "residual");
    for p in &report.properties {
        let _ = writeln!(
            out,
            "{:<20} {:<5} {:<34} {:<34} {:>9.2e}",
            format!("{} {}", p.property, property_name(p.property)),
            if p.pass { "yes" } else { "NO" },
            render_measured(&p.lhs),
            render_measured(&p.rhs),
            p.residual
        );
    }
    for p in report.properties.iter().filter(|p| p.note.is_some()) {
        let _ = writeln!(out, "note ({}): {}", p.property, p.note.unwrap_or_default());
    }
    let failed: Vec<String> = report.failed().iter().map(u8::to_string).collect();
    let _ = writeln!(out, "failed: {}", if failed.is_empty() { "none".into() } else { failed.join(", ") });
    let _ = writeln!(out, "verdict: {}", report.verdict);
    if let Some(p) = &report.conjugator {
        let _ = write!(out, "conjugator P (A = P·B·P⁻¹):\n{p:.6}");
    }
    Ok(CommandResult::with_code(code, out))
}

fn classify(spec: &str, tol: f64, json: bool) -> Result<CommandResult, Error> {
    let m = resolve_operator(spec)?;
    match classify_cnot_like(&m, tol) {
        Ok(c) => {
            let out = if json {
                pretty(&c.to_json())
            } else {
                let phases: Vec<String> = c.basis_phases.iter().map(|z| format_complex(*z, 6)).collect();
                format!(
                    "control spin {} ({:?}), target spin {}\npermutation {:?}\nphases ({})\n",
                    c.control_spin,
                    c.control_polarity,
                    c.target_spin,
                    c.permutation,
                    phases.join(", ")
                )
                .replace("(Up)", "(up)")
                .replace("(Down)", "(down)")
            };
            Ok(CommandResult::ok(out))
        }
        Err(e @ Error::NotCnotLike(_)) => Ok(CommandResult {
            exit_code: EXIT_NOT_CNOT_LIKE,
            stdout: if json { pretty(&json!({ "error": e.to_string() })) } else { String::new() },
            stderr: format!("{e}\n"),
        }),
        Err(e) => Err(e),
    }
}

fn read_state(arg: &str) -> Result<State, Error> {
    if arg.trim_start().starts_with('[') {
        return State::from_json_str(arg);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::StateFormat(format!("{arg}: {e}")))?;
    State::from_json_str(&text)
}

fn apply(spec: &str, state: &str, json: bool) -> Result<CommandResult, Error> {
    let m = resolve_operator(spec)?;
    let psi = read_state(state)?;
    let out = apply_operator(&m, &psi);
    if json {
        return Ok(CommandResult::ok(pretty(&out.to_json())));
    }
    let mut s = String::new();
    for (label, z) in ["|↑↑⟩", "|↑↓⟩", "|↓↑⟩", "|↓↓⟩"].iter().zip(out.amplitudes) {
        let _ = writeln!(s, "{label}  {}", format_complex(z, 6));
    }
    Ok(CommandResult::ok(s))
}

fn evolve(args: &EvolveArgs, json: bool) -> Result<CommandResult, Error> {
    let p = HamiltonianParams::new(
        parse_real("omega1", &args.omega1)?,
        parse_real("omega2", &args.omega2)?,
        parse_real("omega12", &args.omega12)?,
    )?;
    let t = parse_real("t", &args.t)?;
    let u = hamiltonian_unitary(&p, t);
    Ok(CommandResult::ok(if json { pretty(&u.to_json()) } else { format!("{u:.6}") }))
}

fn select(spin1: Option<&str>, spin2: Option<&str>, coupling: &str, json: bool) -> Result<CommandResult, Error> {
    let axes = |flag: &str, v: Option<&str>| match v {
        None => Ok(AxisConstraint::unrestricted().spin1),
        Some(list) => AxisConstraint::parse_axes(list).map_err(|e| Error::InvalidParameter(format!("--{flag}: {e}"))),
    };
    let coupling_available = match coupling.to_ascii_lowercase().as_str() {
        "yes" | "true" | "y" => true,
        "no" | "false" | "n" => false,
        other => return Err(Error::InvalidParameter(format!("--coupling expects yes or no, got {other:?}"))),
    };
    let c = AxisConstraint { spin1: axes("spin1", spin1)?, spin2: axes("spin2", spin2)?, coupling_available };
    let chosen = select_realizable(&c);
    let rejected: Vec<(SequenceTemplate, String)> =
        SequenceTemplate::all().into_iter().filter_map(|t| c.rejection(&t).map(|r| (t, r))).collect();
    if json {
        let doc = json!({
            "constraints": c,
            "templates": chosen.iter().map(|t| json!({
                "template": t,
                "sequence": t.to_sequence().to_notation(),
                "catalog_id": catalog_id_for(&t.evaluate()),
            })).collect::<Vec<_>>(),
            "rejected": rejected.iter().map(|(t, r)| json!({"template": t, "reason": r})).collect::<Vec<_>>(),
        });
        return Ok(CommandResult::ok(pretty(&doc)));
    }
    let mut out = String::new();
    if chosen.is_empty() {
        let _ = writeln!(out, "no template is realizable under these constraints");
        let mut reasons: Vec<&str> = rejected.iter().map(|(_, r)| r.as_str()).collect();
        reasons.sort_unstable();
        reasons.dedup();
        for r in reasons {
            let _ = writeln!(out, "  {r}");
        }
    } else {
        for t in &chosen {
            let _ = writeln!(
                out,
                "{:<14} {:<44} {}",
                t.to_string(),
                t.to_sequence().to_notation(),
                catalog_id_for(&t.evaluate()).unwrap_or("-")
            );
        }
        let _ = writeln!(out, "{} of 16 templates realizable", chosen.len());
    }
    Ok(CommandResult::ok(out))
}
