//! `amf`: JSON front end for the multiplicity and lifting library.
//!
//! Exit status is 0 on success or a true answer, 1 on a false answer or a
//! reported violation, and 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amf_core::ajpackets::{is_adams_johnson, smo_exception, LowestWeight, WeightVector};
use amf_core::lfunctions::{
    load_eigenform_data, parameter_euler_factor, verify_factorization, EigenformData, EulerFactor,
};
use amf_core::lifting::{
    empty_g, evaluate_lift, named_instance, recheck, FSource, LiftMode, LiftResult, LiftSpec, NamedParams,
};
use amf_core::params::{CuspidalDatum, GlobalAParameter, SignCharacter};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "amf", version, about = "Arthur multiplicities and lifts of Siegel modular forms")]
struct Cli {
    /// Print a plain-text report instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural conditions on a global A-parameter.
    Validate {
        #[arg(long)]
        param: PathBuf,
    },
    /// Tabulate the character ε_ψ on the component group.
    Epsilon {
        #[arg(long)]
        param: PathBuf,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
    },
    /// List the Adams-Johnson packet at the real place.
    Packet {
        #[arg(long)]
        param: PathBuf,
        /// Lowest weight to test, e.g. `12,12,12`.
        #[arg(long)]
        k: Option<String>,
    },
    /// Decide automorphy of a lift.
    Lift(LiftArgs),
    /// Local standard Euler factor `L_p(s, ψ, std)^{-1}`.
    Euler {
        #[arg(long)]
        param: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Check the Euler factor identity of a lift at one prime.
    VerifyLfactor {
        #[arg(long)]
        lift: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Whether `(k1, k2)` is an exception for `Sp_{2n}` vector-valued weights.
    SmoCheck {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Adjoint,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    A,
    B,
    General,
    Miyawaki1,
    Miyawaki2,
    Ibukiyama1,
    Ibukiyama2,
    Ikeda,
}

#[derive(clap::Args)]
struct LiftArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Weight parameter of the named instances.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    n0: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    /// Weight of the elliptic `f` (modes a and general).
    #[arg(long)]
    fweight: Option<u32>,
    /// Scalar weight of the Siegel `f ∈ S_{k,j}` (mode b).
    #[arg(long)]
    fk: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    /// Parameter file for `ψ_g`; defaults to `1[1]`.
    #[arg(long)]
    g: Option<PathBuf>,
    /// Weight certifying `ψ_g`, e.g. `12` or `10,10`; empty when omitted.
    #[arg(long)]
    gk: Option<String>,
    /// Eigenform data attached to `f`.
    #[arg(long = "f-data")]
    f_data: Option<PathBuf>,
}

/// A finished command: JSON body, text rendering and exit status.
struct Report {
    body: Value,
    text: String,
    ok: bool,
}

/// A failure reported with a machine-readable code and exit status 1.
struct Failure {
    code: String,
    message: String,
}

impl Failure {
    fn new(code: &str, message: impl ToString) -> Self {
        Failure { code: code.into(), message: message.to_string() }
    }
}

type Outcome = Result<Report, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::new("parse", format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
    })
}

fn load_form(path: &Path) -> Result<EigenformData, Failure> {
    load_eigenform_data(path).map_err(|e| Failure::new(e.code(), e))
}

fn parse_weight(s: &str) -> Result<WeightVector, Failure> {
    let parts: Result<Vec<i64>, _> =
        s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::parse).collect();
    let parts = parts.map_err(|e| Failure::new("bad_weight", format!("{s:?}: {e}")))?;
    WeightVector::new(parts).map_err(|e| Failure::new("bad_weight", e))
}

fn character_json(chi: &SignCharacter) -> Value {
    json!(chi.values.iter().map(|s| s.to_i8()).collect::<Vec<_>>())
}

fn table_rows<'a>(rows: impl Iterator<Item = &'a (Vec<usize>, i8)>) -> Vec<Value> {
    rows.map(|(subset, v)| json!({ "element": subset, "value": v })).collect()
}

fn validate(param: &Path) -> Outcome {
    let psi: GlobalAParameter = read_json(param)?;
    let violations = psi.validate().err().unwrap_or_default();
    let mut text = format!("{psi}: ");
    if violations.is_empty() {
        text.push_str("valid");
    } else {
        text.push_str("invalid");
        for v in &violations {
            let _ = write!(text, "\n  [{}] {v}", v.code());
        }
    }
    Ok(Report {
        body: json!({ "parameter": psi.to_string(), "valid": violations.is_empty(), "violations": violations }),
        text,
        ok: violations.is_empty(),
    })
}

fn epsilon(param: &Path, method: Method) -> Outcome {
    let psi: GlobalAParameter = read_json(param)?;
    let rank = psi.rank();
    let elements: Vec<_> = psi.component_group().elements().collect();
    let direct = || -> Result<Vec<(Vec<usize>, i8)>, Failure> {
        let chi = psi.epsilon_direct().map_err(|e| Failure::new(e.code(), e))?;
        Ok(elements.iter().map(|e| (e.subset(rank), chi.eval(*e).to_i8())).collect())
    };
    let adjoint = || -> Result<Vec<(Vec<usize>, i8)>, Failure> {
        let t = psi.epsilon_adjoint_table().map_err(|e| Failure::new(e.code(), e))?;
        Ok(t.into_iter().map(|(e, s)| (e.subset(rank), s.to_i8())).collect())
    };
    let render = |rows: &[(Vec<usize>, i8)]| {
        rows.iter().map(|(s, v)| format!("  {s:?}: {v:+}")).collect::<Vec<_>>().join("\n")
    };
    let central = (0..rank).collect::<Vec<_>>();
    let at_central = |rows: &[(Vec<usize>, i8)]| rows.iter().find(|(s, _)| *s == central).map(|r| r.1);
    match method {
        Method::Direct | Method::Adjoint => {
            let (name, rows) = match method {
                Method::Direct => ("direct", direct()?),
                _ => ("adjoint", adjoint()?),
            };
            Ok(Report {
                text: format!("ε for {psi} ({name}):\n{}", render(&rows)),
                body: json!({
                    "parameter": psi.to_string(),
                    "method": name,
                    "table": table_rows(rows.iter()),
                    "at_central": at_central(&rows),
                }),
                ok: true,
            })
        }
        Method::Both => {
            let (a, b) = (direct(), adjoint());
            let (a, b) = match (a, b) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(x), Err(y)) if x.code == y.code => return Err(x),
                (a, b) => {
                    let describe = |r: &Result<_, Failure>| match r {
                        Ok(_) => "table".to_string(),
                        Err(f) => f.code.clone(),
                    };
                    return Err(Failure::new(
                        "methods_disagree",
                        format!("direct gave {}, adjoint gave {}", describe(&a), describe(&b)),
                    ));
                }
            };
            let agree = a == b;
            Ok(Report {
                text: format!(
                    "ε for {psi}: methods {}\n{}",
                    if agree { "agree" } else { "DISAGREE" },
                    render(&a)
                ),
                body: json!({
                    "parameter": psi.to_string(),
                    "method": "both",
                    "agree": agree,
                    "direct": table_rows(a.iter()),
                    "adjoint": table_rows(b.iter()),
                    "at_central": at_central(&a),
                }),
                ok: agree,
            })
        }
    }
}

fn packet(param: &Path, k: Option<&str>) -> Outcome {
    let psi: GlobalAParameter = read_json(param)?;
    psi.validate().map_err(|v| {
        Failure::new("invalid_parameter", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))
    })?;
    let aj = is_adams_johnson(&psi.localize_infinity()).map_err(|v| {
        Failure::new("not_adams_johnson", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))
    })?;
    let holomorphic = aj.holomorphic_member();
    let mut members = Vec::new();
    let mut text = format!("{aj}: {} members", aj.packet_size());
    for w in aj.packet_members() {
        let chi = aj.member_character(&w).map_err(|e| Failure::new(e.code(), e))?;
        let _ = write!(text, "\n  {:?} -> {:?}", w.signature, chi.values.iter().map(|s| s.to_i8()).collect::<Vec<_>>());
        members.push(json!({
            "signature": w.signature,
            "character": character_json(&chi),
            "holomorphic": w == holomorphic,
        }));
    }
    let mut body = json!({
        "parameter": psi.to_string(),
        "aj": aj,
        "size": aj.packet_size(),
        "members": members,
        "lowest_weight": aj.lowest_weight(),
    });
    let mut ok = true;
    if let Some(k) = k {
        let k = parse_weight(k)?;
        let test = aj.lowest_weight_test(&k).map_err(|e| Failure::new(e.code(), e))?;
        ok = matches!(test, LowestWeight::Member { .. });
        let _ = write!(text, "\nL(V_{k}) {}", if ok { "is a member" } else { "is not a member" });
        body["lowest_weight_test"] = json!(test);
    }
    Ok(Report { body, text, ok })
}

fn lift_spec(args: &LiftArgs) -> Result<LiftSpec, Failure> {
    let named = |name: &str| {
        let params = NamedParams { k: args.k, d: args.d, n0: args.n0, m: args.m };
        named_instance(name, params).map_err(|e| Failure::new(e.code(), e))
    };
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| Failure::new("missing_flag", format!("--{flag} is required")));
    let mut spec = match args.mode {
        Mode::Miyawaki1 => named("miyawaki1")?,
        Mode::Miyawaki2 => named("miyawaki2")?,
        Mode::Ibukiyama1 => named("ibukiyama1")?,
        Mode::Ibukiyama2 => named("ibukiyama2")?,
        Mode::Ikeda => named("ikeda")?,
        Mode::A | Mode::B | Mode::General => {
            let g = match &args.g {
                Some(path) => read_json(path)?,
                None => empty_g(),
            };
            let k = match &args.gk {
                Some(s) => parse_weight(s)?,
                None => WeightVector::empty(),
            };
            let d = need(args.d, "d")?;
            let (mode, f, f_source) = if let Mode::B = args.mode {
                let (fk, j) = (need(args.fk, "fk")?, need(args.j, "j")?);
                (LiftMode::B, CuspidalDatum::siegel2_spin("f", fk, j), FSource::Siegel2 { k: fk, j })
            } else {
                let w = need(args.fweight, "fweight")?;
                let mode = if let Mode::A = args.mode { LiftMode::A } else { LiftMode::General };
                (mode, CuspidalDatum::elliptic("f", w), FSource::Elliptic { weight: w })
            };
            LiftSpec { mode, g, k, f, f_source, d }
        }
    };
    if let Some(path) = &args.f_data {
        spec.f = spec.f.with_form(load_form(path)?);
    }
    Ok(spec)
}

fn lift(args: &LiftArgs) -> Outcome {
    let spec = lift_spec(args)?;
    let r = evaluate_lift(&spec).map_err(|e| Failure::new(e.code(), e))?;
    let text = format!(
        "{}\n  k' = {}\n  automorphic: {}\n  m = {}\n  L(s,F,std) = {}",
        r.psi_lift, r.k_prime, r.automorphic, r.m, r.factorization
    );
    Ok(Report { body: json!(r), text, ok: r.automorphic })
}

fn coefficients(f: &EulerFactor) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

fn euler(param: &Path, p: u64) -> Outcome {
    let psi: GlobalAParameter = read_json(param)?;
    let f = parameter_euler_factor(&psi, p).map_err(|e| Failure::new(e.code(), e))?;
    Ok(Report {
        text: format!("L_{p}(s, {psi}, std)^-1 = {f}  (X = {p}^-s)"),
        body: json!({
            "parameter": psi.to_string(),
            "p": p,
            "degree": f.degree(),
            "rational": f.is_rational(),
            "coefficients": coefficients(&f),
            "polynomial": f.to_string(),
        }),
        ok: true,
    })
}

fn verify_lfactor(lift: &Path, f: &Path, p: u64) -> Outcome {
    let r: LiftResult = read_json(lift)?;
    recheck(&r).map_err(|e| Failure::new("recheck_failed", e))?;
    let data = load_form(f)?;
    let embedded = r.psi_lift.constituents[0].datum.form.is_some();
    let c = verify_factorization(&r, &data, p).map_err(|e| Failure::new(e.code(), e))?;
    let mismatch = c.first_mismatch.map(|i| {
        json!({ "degree": i, "lhs": c.lhs.coeff(i).to_string(), "rhs": c.rhs.coeff(i).to_string() })
    });
    let mut text = format!("{} at p = {p}: {}", r.factorization, if c.holds() { "holds" } else { "FAILS" });
    if let Some(i) = c.first_mismatch {
        let _ = write!(text, "\n  X^{i}: {} vs {}", c.lhs.coeff(i), c.rhs.coeff(i));
    }
    Ok(Report {
        body: json!({
            "holds": c.holds(),
            "p": p,
            "lhs_f_data": if embedded { "embedded" } else { "supplied" },
            "factorization": r.factorization,
            "lhs": coefficients(&c.lhs),
            "rhs": coefficients(&c.rhs),
            "first_mismatch": mismatch,
        }),
        text,
        ok: c.holds(),
    })
}

fn smo_check(n: u32, k1: u32, k2: u32) -> Outcome {
    let exception = smo_exception(n, k1, k2);
    Ok(Report {
        body: json!({ "n": n, "k1": k1, "k2": k2, "exception": exception }),
        text: format!("n = {n}, (k1, k2) = ({k1}, {k2}): {}", if exception { "exception" } else { "no exception" }),
        ok: exception,
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { param } => validate(param),
        Command::Epsilon { param, method } => epsilon(param, *method),
        Command::Packet { param, k } => packet(param, k.as_deref()),
        Command::Lift(args) => lift(args),
        Command::Euler { param, prime } => euler(param, *prime),
        Command::VerifyLfactor { lift, f, prime } => verify_lfactor(lift, f, *prime),
        Command::SmoCheck { n, k1, k2 } => smo_check(*n, *k1, *k2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = if cli.human {
                report.text
            } else {
                serde_json::to_string_pretty(&report.body).expect("serializable")
            };
            // A closed pipe is not an error of the command.
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(f) => {
            if cli.human {
                eprintln!("error [{}]: {}", f.code, f.message);
            } else {
                let _ = writeln!(std::io::stdout(), "{}", json!({ "error": { "code": f.code, "message": f.message } }));
            }
            ExitCode::from(1)
        }
    }
}
