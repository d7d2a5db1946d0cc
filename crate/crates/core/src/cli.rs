//! Command-line front end. [`run`] does all the work and returns a
//! [`CommandResult`]; the binary only prints it and exits.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{census, BruteForce, CensusOptions, CensusReport, DEFAULT_BRUTE_MAX};
use crate::hurwitz::{
    normalize_special, primitivity_profile, validate, standard_tuple, HurwitzTuple,
};
use crate::pell::{
    classify_powers, generate_from_seed, power_polynomial, power_solution, ramification_type,
    verify_branch_locus_in, verify_pell, PellSolution, Policy, Rejection,
};
use crate::poly::{parse_rat, Poly, Rat};

/// Version tag carried by every JSON payload.
pub const SCHEMA: &str = "pellab/v1";

/// Overrides the largest `n` searched exhaustively by `census`.
pub const BRUTE_MAX_ENV: &str = "PELLAB_BRUTE_MAX";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Rejected,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Rejected => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Human-readable rendering of the payload.
    pub text: String,
    /// Whether `--json` was given.
    pub json: bool,
}

impl CommandResult {
    /// What the binary prints on stdout.
    pub fn output(&self) -> String {
        if self.json {
            serde_json::to_string_pretty(&self.payload).expect("payload serializes") + "\n"
        } else {
            self.text.clone()
        }
    }

    fn error(json: bool, message: String) -> Self {
        CommandResult {
            status: Status::Error,
            payload: json!({ "schema": SCHEMA, "status": Status::Error, "error": message }),
            text: String::new(),
            diagnostics: vec![message],
            json,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pellab",
    version,
    about = "Pell-Abel solutions, Chebyshev powers and monodromy tuples"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Triple {
    #[arg(long = "A", value_name = "POLY")]
    a: String,
    #[arg(long = "B", value_name = "POLY")]
    b: String,
    #[arg(long = "D", value_name = "POLY")]
    d: String,
    /// Accept deg D = 2.
    #[arg(long)]
    relaxed: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check A^2 - D B^2 = 1 and the conditions on D.
    Verify(Triple),
    /// Build (A, B, D) from A alone.
    Seed {
        #[arg(long = "A", value_name = "POLY")]
        a: String,
        #[arg(long)]
        relaxed: bool,
    },
    /// The m-th power of a solution.
    Power {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        m: usize,
    },
    /// Admissible powers and rational Chebyshev roots of A.
    Decompose(Triple),
    /// Ramification of f over a point, and optionally its branch locus.
    Ramify {
        /// The polynomial f; defaults to the power polynomial of --power.
        #[arg(long, conflicts_with = "power", required_unless_present = "power")]
        f: Option<String>,
        #[arg(long)]
        power: Option<usize>,
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        at: String,
        /// Comma-separated points expected to contain every critical value.
        #[arg(long, value_name = "RAT,...", allow_hyphen_values = true)]
        locus: Option<String>,
    },
    /// The explicit primitive tuple of degree n with deg D = 2d.
    Standard {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Also write the tuple JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the monodromy conditions on a tuple file.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
    /// The powers m for which a tuple passes the block conditions.
    Profile {
        #[arg(long)]
        file: PathBuf,
    },
    /// Count special 4-tuples of degree n by case.
    Census {
        #[arg(long)]
        n: usize,
        /// Also run the exhaustive search over involutions.
        #[arg(long)]
        brute_force: bool,
    },
}

type Outcome = Result<(Status, Value, String, Vec<String>), String>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let wants_json = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandResult {
                    status: Status::Ok,
                    payload: json!({ "schema": SCHEMA, "status": Status::Ok }),
                    diagnostics: Vec::new(),
                    text: e.to_string(),
                    json: false,
                };
            }
            return CommandResult::error(wants_json, e.to_string().trim_end().to_string());
        }
    };
    let json = cli.json;
    let (name, outcome) = dispatch(cli.command);
    match outcome {
        Ok((status, mut payload, text, diagnostics)) => {
            let obj = payload.as_object_mut().expect("payloads are objects");
            obj.insert("schema".into(), json!(SCHEMA));
            obj.insert("command".into(), json!(name));
            obj.insert("status".into(), json!(status));
            CommandResult {
                status,
                payload,
                diagnostics,
                text,
                json,
            }
        }
        Err(message) => {
            let mut r = CommandResult::error(json, message);
            r.payload
                .as_object_mut()
                .unwrap()
                .insert("command".into(), json!(name));
            r
        }
    }
}

fn dispatch(command: Command) -> (&'static str, Outcome) {
    match command {
        Command::Verify(t) => ("verify", cmd_verify(&t)),
        Command::Seed { a, relaxed } => ("seed", cmd_seed(&a, relaxed)),
        Command::Power { triple, m } => ("power", cmd_power(&triple, m)),
        Command::Decompose(t) => ("decompose", cmd_decompose(&t)),
        Command::Ramify {
            f,
            power,
            at,
            locus,
        } => ("ramify", cmd_ramify(f, power, &at, locus.as_deref())),
        Command::Standard { n, d, out } => ("standard", cmd_standard(n, d, out)),
        Command::Validate { file } => ("validate", cmd_validate(&file)),
        Command::Profile { file } => ("profile", cmd_profile(&file)),
        Command::Census { n, brute_force } => ("census", cmd_census(n, brute_force)),
    }
}

fn poly_arg(flag: &str, s: &str) -> Result<Poly, String> {
    s.parse().map_err(|e| format!("--{flag}: {e}"))
}

fn rat_arg(flag: &str, s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| format!("--{flag}: {e}"))
}

fn policy(relaxed: bool) -> Policy {
    if relaxed {
        Policy::RELAXED
    } else {
        Policy::STRICT
    }
}

fn solution_json(s: &PellSolution) -> Value {
    json!({
        "A": s.a().to_string(),
        "B": s.b().to_string(),
        "D": s.d().to_string(),
        "n": s.n(),
        "d": s.half_degree(),
    })
}

fn solution_text(s: &PellSolution) -> String {
    format!(
        "A = {}\nB = {}\nD = {}\nn = {}, d = {}\n",
        s.a(),
        s.b(),
        s.d(),
        s.n(),
        s.half_degree()
    )
}

fn rejected(r: &Rejection) -> Outcome {
    Ok((
        Status::Rejected,
        json!({ "rejection": r }),
        format!("rejected: {r}\n"),
        vec![r.to_string()],
    ))
}

fn triple(t: &Triple) -> Result<Result<PellSolution, Rejection>, String> {
    let (a, b, d) = (
        poly_arg("A", &t.a)?,
        poly_arg("B", &t.b)?,
        poly_arg("D", &t.d)?,
    );
    Ok(verify_pell(&a, &b, &d, policy(t.relaxed)))
}

fn cmd_verify(t: &Triple) -> Outcome {
    match triple(t)? {
        Ok(s) => Ok((
            Status::Ok,
            json!({ "solution": solution_json(&s) }),
            solution_text(&s),
            vec![],
        )),
        Err(r) => rejected(&r),
    }
}

fn cmd_seed(a: &str, relaxed: bool) -> Outcome {
    match generate_from_seed(&poly_arg("A", a)?, policy(relaxed)) {
        Ok(s) => Ok((
            Status::Ok,
            json!({ "solution": solution_json(&s) }),
            solution_text(&s),
            vec![],
        )),
        Err(r) => rejected(&r),
    }
}

fn cmd_power(t: &Triple, m: usize) -> Outcome {
    if m == 0 {
        return Err("--m: powers start at 1".into());
    }
    match triple(t)? {
        Ok(s) => {
            let p = power_solution(&s, m);
            Ok((
                Status::Ok,
                json!({ "m": m, "solution": solution_json(&p) }),
                solution_text(&p),
                vec![],
            ))
        }
        Err(r) => rejected(&r),
    }
}

fn cmd_decompose(t: &Triple) -> Outcome {
    let s = match triple(t)? {
        Ok(s) => s,
        Err(r) => return rejected(&r),
    };
    let c = classify_powers(&s);
    let witnesses: serde_json::Map<String, Value> = c
        .witnesses
        .iter()
        .map(|(m, w)| {
            (
                m.to_string(),
                json!({ "root": w.root.to_string(), "sign": w.sign }),
            )
        })
        .collect();
    let mut text = format!("n = {}, admissible m: {:?}\n", c.n, c.admissible);
    for (m, w) in &c.witnesses {
        let sign = if w.sign < 0 { "-" } else { "" };
        let _ = writeln!(text, "A = {sign}T_{m}({})", w.root);
    }
    let _ = writeln!(
        text,
        "{}",
        if c.primitive {
            "primitive over Q"
        } else {
            "a power"
        }
    );
    Ok((
        Status::Ok,
        json!({ "n": c.n, "admissible": c.admissible, "witnesses": witnesses, "primitive": c.primitive }),
        text,
        vec![],
    ))
}

fn cmd_ramify(f: Option<String>, power: Option<usize>, at: &str, locus: Option<&str>) -> Outcome {
    let f = match (f, power) {
        (Some(s), _) => poly_arg("f", &s)?,
        (None, Some(0)) => return Err("--power: powers start at 1".into()),
        (None, Some(m)) => power_polynomial(m),
        (None, None) => return Err("one of --f or --power is required".into()),
    };
    let c = rat_arg("at", at)?;
    if (&f - &Poly::constant(c.clone())).is_zero() {
        return Err("--at: f is constant at that value".into());
    }
    let ty = ramification_type(&f, &c);
    let mut text = format!("f = {f}\nindices over {at}: {:?}\n", ty.indices());
    let mut payload = json!({ "f": f.to_string(), "at": at, "indices": ty.indices() });
    let mut status = Status::Ok;
    let mut diagnostics = vec![];
    if let Some(locus) = locus {
        let points = locus
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| rat_arg("locus", s))
            .collect::<Result<Vec<_>, _>>()?;
        let ok = verify_branch_locus_in(&f, &points);
        payload["branch_locus_ok"] = json!(ok);
        let _ = writeln!(text, "critical values within {{{locus}}}: {ok}");
        if !ok {
            status = Status::Rejected;
            diagnostics.push(format!("f has a critical value outside {{{locus}}}"));
        }
    }
    Ok((status, payload, text, diagnostics))
}

fn tuple_text(t: &HurwitzTuple) -> String {
    let taus: Vec<String> = t.taus().iter().map(ToString::to_string).collect();
    format!(
        "sigma0   = {}\nsigmaInf = {}\nsigma1   = {}\ntaus     = [{}]\n",
        t.sigma0(),
        t.sigma_inf(),
        t.sigma1(),
        taus.join(", ")
    )
}

fn cmd_standard(n: usize, d: usize, out: Option<PathBuf>) -> Outcome {
    let t = standard_tuple(n, d).map_err(|e| e.to_string())?;
    let report = validate(&t);
    if let Some(path) = &out {
        std::fs::write(path, t.to_json() + "\n")
            .map_err(|e| format!("--out {}: {e}", path.display()))?;
    }
    let status = if report.passed {
        Status::Ok
    } else {
        Status::Rejected
    };
    let text = format!("{}valid: {}\n", tuple_text(&t), report.passed);
    Ok((
        status,
        json!({ "tuple": t, "validation": report }),
        text,
        vec![],
    ))
}

fn read_tuple(path: &PathBuf) -> Result<HurwitzTuple, String> {
    let s = std::fs::read_to_string(path).map_err(|e| format!("--file {}: {e}", path.display()))?;
    HurwitzTuple::from_json(&s).map_err(|e| format!("--file {}: {e}", path.display()))
}

fn cmd_validate(file: &PathBuf) -> Outcome {
    let t = read_tuple(file)?;
    let report = validate(&t);
    let mut text = String::new();
    for c in &report.checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(text, "{mark} {:?} {}", c.check, c.detail);
    }
    let b = report.budget;
    let _ = writeln!(
        text,
        "branching: 0 -> {}, 1 -> {}, inf -> {}, taus -> {}, total {}",
        b.zero, b.one, b.infinity, b.taus, b.total
    );
    let diagnostics = report
        .failures()
        .iter()
        .map(|f| format!("failed {f:?}"))
        .collect();
    let status = if report.passed {
        Status::Ok
    } else {
        Status::Rejected
    };
    Ok((status, json!({ "validation": report }), text, diagnostics))
}

fn cmd_profile(file: &PathBuf) -> Outcome {
    let t = read_tuple(file)?;
    let special = normalize_special(&t).map_err(|e| e.to_string())?;
    let profile = primitivity_profile(&special).map_err(|e| e.to_string())?;
    let mut text = String::new();
    if special != t {
        let _ = write!(text, "normalized to\n{}", tuple_text(&special));
    }
    let _ = writeln!(
        text,
        "profile: {:?}{}",
        profile,
        if profile.is_empty() {
            " (primitive)"
        } else {
            ""
        }
    );
    Ok((
        Status::Ok,
        json!({
            "normalized": special != t,
            "tuple": special,
            "profile": profile,
            "primitive": profile.is_empty(),
        }),
        text,
        vec![],
    ))
}

fn brute_max() -> Result<usize, String> {
    match std::env::var(BRUTE_MAX_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{BRUTE_MAX_ENV}: not a number: {v:?}")),
        Err(_) => Ok(DEFAULT_BRUTE_MAX),
    }
}

fn census_text(r: &CensusReport) -> String {
    let mut text = format!("n = {}\n", r.n);
    let dash = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    let _ = writeln!(
        text,
        "{:<11} {:>6} {:>6} {:>6}",
        "case", "shape", "brute", "closed"
    );
    for c in &r.cases {
        let _ = writeln!(
            text,
            "{:<11} {:>6} {:>6} {:>6}",
            format!("{:?}", c.case),
            c.shape_classes,
            dash(c.brute_classes),
            c.closed_classes
        );
    }
    let _ = writeln!(text, "C1 = {}, C2 = {}", r.closed.c1, dash(r.closed.c2));
    let p = &r.primitive_disjoint;
    let _ = writeln!(
        text,
        "primitive disjoint classes: {} (h in {:?})",
        p.count, p.classes
    );
    if let Some(k) = r.involutions_scanned {
        let _ = writeln!(text, "involutions scanned: {k}");
    }
    let _ = writeln!(text, "discrepancies: {}", r.discrepancies.len());
    text
}

fn cmd_census(n: usize, brute_force: bool) -> Outcome {
    let options = CensusOptions {
        brute_force: if brute_force {
            BruteForce::Always
        } else {
            BruteForce::Never
        },
        brute_max: brute_max()?,
    };
    let report =
        census(n, &options).map_err(|e| format!("{e}; raise {BRUTE_MAX_ENV} to allow it"))?;
    let diagnostics: Vec<String> = report
        .discrepancies
        .iter()
        .map(|d| {
            format!(
                "{:?} {:?}: {} = {} vs {} = {}",
                d.case, d.kind, d.left.0, d.left.1, d.right.0, d.right.1
            )
        })
        .collect();
    let status = if diagnostics.is_empty() {
        Status::Ok
    } else {
        Status::Rejected
    };
    let text = census_text(&report);
    let payload = serde_json::to_value(&report).expect("report serializes");
    Ok((status, payload, text, diagnostics))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> CommandResult {
        run(std::iter::once("pellab").chain(args.iter().copied()))
    }

    #[test]
    fn verify_ok_and_rejected() {
        let r = go(&["verify", "--A", "t^2", "--B", "1", "--D", "t^4-1", "--json"]);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["solution"]["n"], 2);
        assert_eq!(r.payload["solution"]["d"], 2);
        assert_eq!(r.payload["schema"], SCHEMA);
        let r = go(&["verify", "--A", "t", "--B", "1", "--D", "t^2-1"]);
        assert_eq!(r.status, Status::Rejected);
        let r = go(&[
            "verify",
            "--A",
            "t",
            "--B",
            "1",
            "--D",
            "t^2-1",
            "--relaxed",
        ]);
        assert_eq!(r.status, Status::Ok);
    }

    #[test]
    fn parse_errors_name_the_position() {
        let r = go(&["verify", "--A", "t^2 +* 1", "--B", "1", "--D", "t^4-1"]);
        assert_eq!(r.status, Status::Error);
        assert!(
            r.diagnostics[0].contains("--A") && r.diagnostics[0].contains("offset 5"),
            "{:?}",
            r.diagnostics
        );
        assert_eq!(go(&["frobnicate"]).status, Status::Error);
    }

    #[test]
    fn census_three_json() {
        let r = go(&["census", "--n", "3", "--json"]);
        assert_eq!(r.status, Status::Ok);
        let classes: Vec<u64> = r.payload["cases"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["shape_classes"].as_u64().unwrap())
            .collect();
        assert_eq!(classes, vec![1, 1, 0]);
    }

    #[test]
    fn ramify_power_polynomial() {
        let r = go(&[
            "ramify", "--power", "4", "--at", "1", "--locus", "0,1", "--json",
        ]);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["indices"], json!([1, 1, 2]));
        let r = go(&["ramify", "--f", "t^3 - 3*t", "--at", "-2", "--locus", "0,1"]);
        assert_eq!(r.status, Status::Rejected);
    }
}
