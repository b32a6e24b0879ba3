use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cmc_core::cmspace::{
    build_cm_line, build_cm_trivial_with, build_cm_twisted, sigma_shift, verify_relations, CMData,
    CMKind, MoserConvention, OneForm,
};
use cmc_core::codec;
use cmc_core::curve::{elliptic, hyperbola, PlaneCurve, Smoothness, Tier};
use cmc_core::dmod::{build_ideal_presentation, skew_mul, SkewOperator};
use cmc_core::funcfield::{FuncFieldElem, FunctionField};
use cmc_core::kernel::{BivarPoly, Rational};
use cmc_core::pdspace::{divisor_gamma, is_primary_decomposable};
use cmc_core::sample;
use cmc_core::Error;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cli::{CmCmd, Command, Convention, CurveCmd, DmodCmd, Format, GlobalArgs, IdealCmd, PdCmd, SuiteCmd};
use crate::error::{CliError, CliResult};
use crate::io::{pretty, read_json, write_atomic};
use crate::suite;

/// What a command produced.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// False when the command reached a negative verdict (exit 1).
    pub ok: bool,
    /// Data outputs are always written to `--output` as JSON.
    pub data: bool,
}

impl Report {
    fn data(json: Value, text: String) -> Self {
        Report { json, text, ok: true, data: true }
    }

    fn verdict(json: Value, text: String, ok: bool) -> Self {
        Report { json, text, ok, data: false }
    }
}

/// Runs one command, writes its output and returns the exit code.
pub fn run(cli: &crate::cli::Cli) -> i32 {
    let result = execute(&cli.command, &cli.global).and_then(|r| emit(&cli.global, &r).map(|_| r));
    match result {
        Ok(r) if r.ok => 0,
        Ok(_) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(g: &GlobalArgs, r: &Report) -> CliResult<()> {
    match &g.output {
        Some(path) => {
            let body = if r.data || g.format == Format::Json {
                pretty(&r.json)
            } else {
                r.text.clone()
            };
            write_atomic(path, &body)?;
            if g.format == Format::Text {
                print!("{}", r.text);
            }
        }
        None => match g.format {
            Format::Json => print!("{}", pretty(&r.json)),
            Format::Text => print!("{}", r.text),
        },
    }
    Ok(())
}

pub fn execute(cmd: &Command, g: &GlobalArgs) -> CliResult<Report> {
    match cmd {
        Command::Curve(CurveCmd::Check { file, curve }) => curve_check(file, curve, g),
        Command::Cm(CmCmd::Build { file, random, curve, convention }) => {
            cm_build(file, *random, curve, *convention, g)
        }
        Command::Cm(CmCmd::Verify { file }) => cm_verify(&input_path(file, g)?),
        Command::Cm(CmCmd::Shift { file, omega }) => cm_shift(&input_path(file, g)?, omega),
        Command::Ideal(IdealCmd::Build { cm }) => ideal_build(&input_path(cm, g)?),
        Command::Ideal(IdealCmd::Inspect { file }) => ideal_inspect(&input_path(file, g)?),
        Command::Pd(PdCmd::Analyze { file }) => pd_analyze(&input_path(file, g)?),
        Command::Dmod(DmodCmd::Mul { a, b, curve }) => dmod_mul(a, b, curve),
        Command::Suite(SuiteCmd::Run { only }) => suite_run(g.seed, only),
    }
}

fn input_path(file: &Option<PathBuf>, g: &GlobalArgs) -> CliResult<PathBuf> {
    file.clone()
        .or_else(|| g.input.clone())
        .ok_or_else(|| CliError::Usage("no input file given (positional or --input)".into()))
}

/// `hyperbola`, `elliptic` or a polynomial such as `y^2 - x^3 - 1`.
pub fn parse_curve(s: &str) -> CliResult<PlaneCurve> {
    match s.trim() {
        "hyperbola" => Ok(hyperbola()),
        "elliptic" => Ok(elliptic()),
        poly => Ok(PlaneCurve::new(BivarPoly::parse(poly)?)?),
    }
}

fn list<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn curve_check(file: &Option<PathBuf>, inline: &Option<String>, g: &GlobalArgs) -> CliResult<Report> {
    let f = match (inline, file.as_ref().or(g.input.as_ref())) {
        (Some(s), _) => match s.trim() {
            "hyperbola" => hyperbola().f().clone(),
            "elliptic" => elliptic().f().clone(),
            poly => BivarPoly::parse(poly)?,
        },
        (None, Some(path)) => {
            let v = read_json(path)?;
            codec::bivar_from_json(v.get("F").unwrap_or(&v))?
        }
        (None, None) => return Err(CliError::Usage("no curve given (file, --input or --curve)".into())),
    };
    let c = match PlaneCurve::new(f.clone()) {
        Ok(c) => c,
        Err(Error::SingularCurve(why)) => {
            let json = json!({"F": codec::bivar_to_json(&f), "singular": true, "reason": why});
            let text = format!("curve: {f} = 0\nsingular: {why}\n");
            return Ok(Report::verdict(json, text, false));
        }
        Err(e) => return Err(e.into()),
    };
    let tier = match c.tier() {
        Tier::A => "A",
        Tier::B => "B",
    };
    let smooth = match c.smoothness() {
        Smoothness::Verified => "verified".to_string(),
        Smoothness::Inconclusive(why) => format!("inconclusive ({why})"),
    };
    let json = json!({
        "F": codec::bivar_to_json(c.f()),
        "singular": false,
        "tier": tier,
        "deg_y": c.deg_y(),
        "monic_in_y": c.monic_in_y(),
        "smoothness": smooth,
        "notes": c.notes(),
    });
    let mut text = format!(
        "curve: {c}\ntier: {tier}\ndegree in y: {}\nmonic in y: {}\nsmoothness: {smooth}\n",
        c.deg_y(),
        c.monic_in_y()
    );
    for n in c.notes() {
        let _ = writeln!(text, "note: {n}");
    }
    Ok(Report::verdict(json, text, true))
}

pub fn render_cm(m: &CMData) -> String {
    let mut s = format!("kind: {}\nn: {}\n", m.kind().as_str(), m.n());
    match m.kind() {
        CMKind::PlaneCurve => {
            let c = m.curve().expect("plane-curve data has a curve");
            let _ = writeln!(s, "curve: {c}");
            let _ = writeln!(s, "points: {}", list(m.points()));
            let _ = writeln!(s, "alphas: {}", list(m.alphas()));
            let _ = writeln!(s, "Zbar: {}", m.zbar());
        }
        CMKind::QuiverLine => {
            let _ = writeln!(s, "Xbar: {}", m.xbar());
            let _ = writeln!(s, "Ybar: {}", m.ybar());
        }
    }
    let _ = writeln!(s, "Vbar: {}", m.vbar());
    let _ = writeln!(s, "Wbar: {}", m.wbar());
    s
}

fn rationals(v: &Value, what: &str) -> CliResult<Vec<Rational>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("{what} must be an array")))?;
    Ok(arr.iter().map(codec::rational_from_json).collect::<cmc_core::Result<_>>()?)
}

fn field<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Json(format!("missing field {key:?}")).into())
}

fn cm_build(
    file: &Option<PathBuf>,
    random: Option<usize>,
    curve: &Option<String>,
    convention: Convention,
    g: &GlobalArgs,
) -> CliResult<Report> {
    let conv = match convention {
        Convention::Adopted => MoserConvention::Adopted,
        Convention::Transposed => MoserConvention::Transposed,
    };
    let m = if let Some(n) = random {
        let c = parse_curve(curve.as_deref().ok_or_else(|| {
            CliError::Usage("--random needs --curve".into())
        })?)?;
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let pts = sample::admissible_points(&mut rng, &c, n)?;
        let alphas = sample::random_alphas(&mut rng, n);
        build_cm_trivial_with(&c, &pts, &alphas, conv)?
    } else {
        let v = read_json(&input_path(file, g)?)?;
        if v.get("kind").and_then(Value::as_str) == Some(CMKind::QuiverLine.as_str()) {
            build_cm_line(&rationals(field(&v, "xs")?, "xs")?, &rationals(field(&v, "betas")?, "betas")?)?
        } else {
            let c = match curve {
                Some(s) => parse_curve(s)?,
                None => codec::curve_from_json(field(&v, "curve")?)?,
            };
            let pts = field(&v, "points")?
                .as_array()
                .ok_or_else(|| Error::Json("points must be an array".into()))?
                .iter()
                .map(|p| codec::point_from_json(&c, p))
                .collect::<cmc_core::Result<Vec<_>>>()?;
            let alphas = match v.get("alphas") {
                Some(a) => rationals(a, "alphas")?,
                None => vec![Rational::zero(); pts.len()],
            };
            match v.get("bundle") {
                Some(b) if !b.is_null() => {
                    if conv != MoserConvention::Adopted {
                        return Err(CliError::Usage(
                            "twisted data only uses the adopted convention".into(),
                        ));
                    }
                    let ff = FunctionField::new(&c)?;
                    let ideal = codec::ideal_from_json(&ff, b)?;
                    let db = ff.dual_basis(&ideal)?;
                    build_cm_twisted(&ff, &db, &pts, &alphas)?
                }
                _ => build_cm_trivial_with(&c, &pts, &alphas, conv)?,
            }
        }
    };
    Ok(Report::data(codec::cm_to_json(&m), render_cm(&m)))
}

fn cm_verify(path: &Path) -> CliResult<Report> {
    let m = codec::cm_from_json(&read_json(path)?)?;
    let rep = verify_relations(&m);
    Ok(Report::verdict(
        codec::report_to_json(&rep),
        format!("{rep}\n"),
        rep.passed,
    ))
}

fn cm_shift(path: &Path, omega: &str) -> CliResult<Report> {
    let m = codec::cm_from_json(&read_json(path)?)?;
    let curve = m
        .curve()
        .ok_or_else(|| CliError::Usage("one-forms act on plane-curve data only".into()))?;
    let (f, g) = omega
        .split_once(',')
        .ok_or_else(|| CliError::Usage("--omega expects f,g".into()))?;
    let w = OneForm::new(curve, &BivarPoly::parse(f)?, &BivarPoly::parse(g)?);
    let shifted = sigma_shift(&m, &w)?;
    Ok(Report::data(codec::cm_to_json(&shifted), render_cm(&shifted)))
}

fn ideal_build(path: &Path) -> CliResult<Report> {
    let m = codec::cm_from_json(&read_json(path)?)?;
    let curve = m
        .curve()
        .ok_or_else(|| CliError::Usage("ideal presentations need plane-curve data".into()))?;
    let ff = FunctionField::new(curve)?;
    let p = build_ideal_presentation(&ff, &m)?;
    let text = format!("gen_x = {}\ngen_y = {}\ngen_T = {}\n", p.gen_x, p.gen_y, p.gen_t);
    Ok(Report::data(codec::presentation_to_json(&ff, &p), text))
}

fn elems_text(xs: &[FuncFieldElem]) -> String {
    xs.iter().map(|e| format!("  {e}\n")).collect()
}

fn ideal_inspect(path: &Path) -> CliResult<Report> {
    let v = read_json(path)?;
    let curve = codec::curve_from_json(field(&v, "curve")?)?;
    let ff = FunctionField::new(&curve)?;
    let ideal = codec::ideal_from_json(&ff, &v)?;
    let inv = ff.ideal_inverse(&ideal)?;
    let db = ff.dual_basis(&ideal)?;
    let json = json!({
        "ideal": codec::ideal_to_json(&ff, &ideal),
        "inverse": codec::ideal_to_json(&ff, &inv),
        "dual_basis": codec::dual_basis_to_json(&db),
    });
    let mut text = format!("curve: {curve}\nbasis over Q[x]:\n{}", elems_text(&ideal.basis()));
    let _ = write!(text, "inverse basis:\n{}", elems_text(&inv.basis()));
    let _ = write!(text, "dual basis v:\n{}w:\n{}", elems_text(&db.v), elems_text(&db.w));
    Ok(Report::verdict(json, text, true))
}

fn pd_analyze(path: &Path) -> CliResult<Report> {
    let v = codec::pd_from_json(&read_json(path)?)?;
    let dec = is_primary_decomposable(&v)?;
    let mut json = codec::decomposability_to_json(&dec);
    let mut text = format!("{dec}\n");
    if dec.decomposable {
        let d = divisor_gamma(&v)?;
        json["divisor"] = codec::divisor_to_json(&d);
        let _ = writeln!(text, "divisor: {d}");
    }
    Ok(Report::verdict(json, text, dec.decomposable))
}

fn operator_file(path: &Path) -> CliResult<(Option<PlaneCurve>, Value)> {
    let v = read_json(path)?;
    match v.get("operator") {
        Some(op) => {
            let c = match v.get("curve") {
                Some(c) => Some(codec::curve_from_json(c)?),
                None => None,
            };
            Ok((c, op.clone()))
        }
        None => Ok((None, v)),
    }
}

fn dmod_mul(a: &Path, b: &Path, curve: &Option<String>) -> CliResult<Report> {
    let (ca, va) = operator_file(a)?;
    let (cb, vb) = operator_file(b)?;
    let c = match (curve, ca, cb) {
        (Some(s), _, _) => parse_curve(s)?,
        (None, Some(x), Some(y)) if x.f() != y.f() => {
            return Err(CliError::Usage("operators live on different curves".into()))
        }
        (None, Some(x), _) | (None, None, Some(x)) => x,
        (None, None, None) => {
            return Err(CliError::Usage("no curve: pass --curve or use {\"curve\", \"operator\"} files".into()))
        }
    };
    let ff = FunctionField::new(&c)?;
    let x: SkewOperator = codec::operator_from_json(&ff, &va)?;
    let y = codec::operator_from_json(&ff, &vb)?;
    let p = skew_mul(&ff, &x, &y);
    let json = json!({"curve": codec::curve_to_json(&c), "operator": codec::operator_to_json(&p)});
    Ok(Report::data(json, format!("{p}\n")))
}

fn suite_run(seed: u64, only: &[u32]) -> CliResult<Report> {
    let known = suite::criterion_ids();
    if let Some(bad) = only.iter().find(|i| !known.contains(i)) {
        return Err(CliError::Usage(format!("no criterion {bad}")));
    }
    let outcomes = suite::run(seed, only);
    let ok = outcomes.iter().all(|o| o.passed);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    let _ = writeln!(text, "{passed}/{} criteria passed (seed {seed})", outcomes.len());
    let json = json!({
        "seed": seed,
        "passed": ok,
        "criteria": outcomes.iter().map(suite::Outcome::to_json).collect::<Vec<_>>(),
    });
    Ok(Report::verdict(json, text, ok))
}
