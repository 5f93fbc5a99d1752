use crate::{Command, GlobalOpts};
use lrlab_core::localcond::{self, Place as LocalPlace, PlaceContext};
use lrlab_core::mod2rep::{self, DEFAULT_PRECISION};
use lrlab_core::primescan::{self, AuxiliarySpec};
use lrlab_core::{arith, WeierstrassCurve};
use lrlab_lmfdb::client::{bundled_fixture_dir, DEFAULT_BASE_URL};
use lrlab_lmfdb::{Client, ClientConfig, TableFixture};
use lrlab_selmer::{random, Gf2k};
use rand::SeedableRng;
use serde_json::{json, Value};
use std::fmt;
use std::path::PathBuf;

pub struct Outcome {
    pub report: Value,
    /// False when a verification ran and found a failure.
    pub ok: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, ok: true }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Usage { anchor: &'static str, message: String },
    /// Data or computation failure: exit code 1.
    Failure { anchor: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Failure { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage { anchor, message } | CliError::Failure { anchor, message } => write!(f, "[{anchor}] {message}"),
        }
    }
}

fn usage(anchor: &'static str, e: impl fmt::Display) -> CliError {
    CliError::Usage { anchor, message: e.to_string() }
}

fn failure(anchor: &'static str, e: impl fmt::Display) -> CliError {
    CliError::Failure { anchor, message: e.to_string() }
}

fn scan_error(e: primescan::ScanError) -> CliError {
    use primescan::ScanError::*;
    match e {
        NotLevelRaising(_) | BadP1(_) | Repeated => usage("auxiliary-prime-definition", e),
        _ => failure("auxiliary-prime-definition", e),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn default_cache_dir() -> PathBuf {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(x).join("lrlab");
    }
    if let Some(h) = std::env::var_os("HOME") {
        return PathBuf::from(h).join(".cache").join("lrlab");
    }
    PathBuf::from(".lrlab-cache")
}

fn client(global: &GlobalOpts) -> Client {
    Client::new(ClientConfig {
        base_url: std::env::var(lrlab_lmfdb::client::BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string()),
        cache_dir: global.cache_dir.clone().unwrap_or_else(default_cache_dir),
        fixture_dirs: vec![bundled_fixture_dir()],
        offline: global.offline,
    })
}

/// "a1,a2,a3,a4,a6" or a curve label resolved through the client.
fn resolve_curve(global: &GlobalOpts, spec: &str) -> Result<WeierstrassCurve, CliError> {
    if spec.contains(',') {
        return spec.parse::<WeierstrassCurve>().map_err(|e| usage("curve-input", e));
    }
    client(global).fetch_curve(spec).map_err(|e| match e {
        lrlab_lmfdb::LmfdbError::NotFound(_) | lrlab_lmfdb::LmfdbError::OfflineMiss(_) => usage("curve-input", e),
        other => failure("lmfdb-client", other),
    })
}

fn curve_json(e: &WeierstrassCurve) -> Value {
    json!({ "ainvs": e.ainvs(), "label": e.label })
}

pub fn run(global: &GlobalOpts, command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze { curve } => analyze(global, &curve),
        Command::RaisingPrimes { curve, bound, density } => raising_primes(global, &curve, bound, density),
        Command::AuxPrimes { curve, sigma, p1, min, bound, strict } => aux_primes(global, &curve, sigma, p1, min, bound, strict),
        Command::Local { curve, place, sign } => local(global, &curve, &place, sign),
        Command::Qform { curve, place } => qform(global, &curve, place),
        Command::SelmerSim { places, seed_dim, target, seed, field_degree, exhaustive, emit_system } => {
            selmer_sim(places, seed_dim, target, seed, field_degree, exhaustive, emit_system)
        }
        Command::LiftCheck { q, precision } => lift_check(q, precision),
        Command::Fetch { level, curve } => fetch(global, level, curve),
        Command::Audit { tables, bound, verbose } => audit(global, tables, bound, verbose),
    }
}

fn analyze(global: &GlobalOpts, spec: &str) -> Result<Outcome, CliError> {
    let e = resolve_curve(global, spec)?;
    let inv = e.invariants().map_err(|x| usage("curve-input", x))?;
    let report = mod2rep::assumption_check(&e, &[]).map_err(|x| failure("standing-hypotheses", x))?;
    let two_adic = mod2rep::two_adic_profile(&e, DEFAULT_PRECISION);
    let all_pass = report.all_pass();
    Ok(Outcome {
        report: json!({
            "anchor": "standing-hypotheses",
            "curve": curve_json(&e),
            "invariants": {
                "discriminant": inv.discriminant.to_string(),
                "c4": inv.c4.to_string(),
                "c6": inv.c6.to_string(),
                "j": format!("{}/{}", inv.j.0, inv.j.1),
            },
            "conductor": report.conductor.to_string(),
            "items": to_value(&report.items),
            "profile": to_value(&report.profile),
            "two_adic_profile": match two_adic {
                Ok(p) => to_value(&p),
                Err(x) => json!({ "error": x.to_string() }),
            },
            "all_pass": all_pass,
        }),
        ok: all_pass,
    })
}

fn raising_primes(global: &GlobalOpts, spec: &str, bound: u64, density: bool) -> Result<Outcome, CliError> {
    let e = resolve_curve(global, spec)?;
    let primes = primescan::level_raising_primes(&e, bound).map_err(scan_error)?;
    let mut report = json!({
        "anchor": "level-raising-prime",
        "curve": curve_json(&e),
        "bound": bound,
        "primes": primes,
        "count": primes.len(),
    });
    if density {
        let d = primescan::density_report(&e, bound, None).map_err(scan_error)?;
        report["density"] = json!({
            "anchor": "chebotarev-density",
            "primes_considered": d.counts.primes,
            "frequencies": to_value(&d.frequencies),
            "predictions": to_value(&d.predictions),
            "tolerance": d.tolerance,
            "small_sample": d.small_sample,
            "within_tolerance": d.within_tolerance,
        });
    }
    Ok(Outcome::ok(report))
}

fn aux_primes(global: &GlobalOpts, spec: &str, sigma: Vec<u64>, p1: u64, min: u64, bound: u64, strict: bool) -> Result<Outcome, CliError> {
    let e = resolve_curve(global, spec)?;
    let spec = AuxiliarySpec { min, strict, ..AuxiliarySpec::new(e.clone(), sigma.clone(), p1, bound) };
    let validated = primescan::validate(&spec).map_err(scan_error)?;
    let primes = primescan::auxiliary_primes(&spec).map_err(scan_error)?;
    let first = primes.first().map(|&q| primescan::check_auxiliary(&validated, q));
    let density = primescan::density_report(&e, bound, Some(&spec)).map_err(scan_error)?;
    Ok(Outcome::ok(json!({
        "anchor": "auxiliary-prime",
        "curve": curve_json(&e),
        "sigma": sigma,
        "p1": p1,
        "min": min,
        "bound": bound,
        "strict": strict,
        "conditioned_primes": validated.conditioned,
        "primes": primes,
        "q0": primes.first(),
        "q0_check": first.map(|c| to_value(&c)),
        "observed_density": density.frequencies.auxiliary,
        "predicted_density": primescan::auxiliary_prediction(&validated),
    })))
}

fn local(global: &GlobalOpts, spec: &str, place: &str, sign: Option<i8>) -> Result<Outcome, CliError> {
    let e = resolve_curve(global, spec)?;
    let (place, context) = match place {
        "inf" | "infinity" => (LocalPlace::Infinity, PlaceContext::Archimedean),
        p => {
            let p: u64 = p.parse().map_err(|_| usage("local-conditions", format!("place {p:?} is neither a prime nor inf")))?;
            if !arith::is_prime(p) {
                return Err(usage("local-conditions", format!("{p} is not prime")));
            }
            let ctx = match (p, sign) {
                (2, _) => PlaceContext::At2,
                (_, Some(s)) if s == 1 || s == -1 => PlaceContext::LevelRaised { sign: s },
                (_, Some(s)) => return Err(usage("local-conditions", format!("sign must be +1 or -1, got {s}"))),
                (_, None) => PlaceContext::Good,
            };
            (LocalPlace::Finite(p), ctx)
        }
    };
    let class = localcond::classify_local_condition(&e, place, context).map_err(|x| usage("local-conditions", x))?;
    Ok(Outcome::ok(json!({
        "anchor": "local-conditions",
        "curve": curve_json(&e),
        "sign": sign,
        "class": to_value(&class),
    })))
}

fn qform(global: &GlobalOpts, spec: &str, w: u64) -> Result<Outcome, CliError> {
    let e = resolve_curve(global, spec)?;
    let cert = localcond::qform_isotropy(&e, w).map_err(|x| match x {
        localcond::LocalError::Internal(_) => failure("toric-line-isotropy", x),
        other => usage("toric-line-isotropy", other),
    })?;
    let m = cert.involution;
    let square = m.square();
    let scalar_square = square[0][1] == 0 && square[1][0] == 0 && square[0][0] == square[1][1];
    let paths_agree = cert.derivative_via_cofactor == cert.derivative_via_formal;
    Ok(Outcome {
        report: json!({
            "anchor": "toric-line-isotropy",
            "curve": curve_json(&e),
            "place": w,
            "matrix": m.matrix,
            "matrix_square": square,
            "scalar_square": scalar_square,
            "certificate": to_value(&cert),
            "derivative_paths_agree": paths_agree,
        }),
        ok: scalar_square && paths_agree,
    })
}

#[allow(clippy::too_many_arguments)]
fn selmer_sim(
    places: Option<Vec<usize>>,
    seed_dim: Option<usize>,
    target: Option<usize>,
    seed: u64,
    field_degree: u32,
    exhaustive: Option<usize>,
    emit_system: bool,
) -> Result<Outcome, CliError> {
    let anchor = "selmer-model";
    if let Some(max) = exhaustive {
        if max > lrlab_selmer::enumerate::MAX_ENUMERATION_DIM {
            return Err(usage(anchor, format!("exhaustive enumeration is capped at total dimension {}", lrlab_selmer::enumerate::MAX_ENUMERATION_DIM)));
        }
        let report = lrlab_selmer::enumerate_verify(max).map_err(|e| failure(anchor, e))?;
        let ok = report.passed();
        return Ok(Outcome {
            report: json!({ "anchor": "selmer-model-exhaustive", "report": to_value(&report), "passed": ok }),
            ok,
        });
    }
    let field = Gf2k::new(field_degree).map_err(|e| usage(anchor, e))?;
    let seed_system = match (places, seed_dim) {
        (_, Some(s)) => lrlab_selmer::standard_seed(field, s, 1),
        (dims, None) => {
            let dims = dims.unwrap_or_else(|| vec![2, 2]);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            random::random_system(field, &dims, random::DEFAULT_WORD_LENGTH, &mut rng).map_err(|e| usage(anchor, e))?
        }
    };
    let start_dim = seed_system.selmer_dim();
    let Some(target) = target else {
        let mut report = json!({ "anchor": anchor, "seed_selmer_dim": start_dim, "places": seed_system.places().len() });
        if emit_system {
            report["system"] = seed_system.to_json();
        }
        return Ok(Outcome::ok(report));
    };
    let trace = lrlab_selmer::rank_walk(&seed_system, target, seed).map_err(|e| failure("rank-walk", e))?;
    let mut dims = vec![trace.seed_dim];
    dims.extend(trace.steps.iter().map(|s| s.new_dim));
    let unit_steps = trace.steps.iter().all(|s| s.delta().abs() == 1);
    let ok = unit_steps && trace.final_dim == target;
    let mut report = json!({
        "anchor": "rank-walk",
        "field_degree": field_degree,
        "seed": seed,
        "seed_selmer_dim": trace.seed_dim,
        "target": target,
        "final_dim": trace.final_dim,
        "dimension_path": dims,
        "unit_steps": unit_steps,
        "steps": to_value(&trace.steps),
    });
    if emit_system {
        report["system"] = trace.system.to_json();
    }
    Ok(Outcome { report, ok })
}

fn lift_check(q: u64, precision: u32) -> Result<Outcome, CliError> {
    use lrlab_liftrig::LiftError;
    let classify = |e: LiftError| match e {
        LiftError::Counterexample { .. } => failure("lift-rigidity", e),
        other => usage("lift-rigidity", other),
    };
    let r = lrlab_liftrig::verify_rigidity(q, precision).map_err(classify)?;
    let d = lrlab_liftrig::det_trick_check(q, precision).map_err(classify)?;
    let ok = r.all_in_mu2 && r.solution_count == 2 && d.dets_order_le_2;
    Ok(Outcome {
        report: json!({
            "anchor": "lift-rigidity",
            "q": q,
            "precision": precision,
            "solution_count": r.solution_count,
            "all_in_mu2": r.all_in_mu2,
            "raw_solution_count": r.raw_solution_count,
            "stable_precision": r.stable_precision,
            "solutions": r.solutions,
            "key_units": r.key_units,
            "det_trick": {
                "anchor": "inertial-determinant",
                "raw_solution_count": d.raw_solution_count,
                "stable_solution_count": d.stable_solution_count,
                "dets_order_le_2": d.dets_order_le_2,
                "stable_dets": d.stable_dets,
            },
        }),
        ok,
    })
}

fn fetch(global: &GlobalOpts, level: Option<u64>, curve: Option<String>) -> Result<Outcome, CliError> {
    let c = client(global);
    let lm = |e: lrlab_lmfdb::LmfdbError| failure("lmfdb-client", e);
    if let Some(label) = curve {
        let e = c.fetch_curve(&label).map_err(lm)?;
        return Ok(Outcome::ok(json!({ "anchor": "lmfdb-curve", "curve": curve_json(&e) })));
    }
    let Some(level) = level else {
        return Err(usage("lmfdb-client", "give --level or --curve"));
    };
    let forms = c.fetch_newforms(level).map_err(lm)?;
    let n = arith::factor(level as i128).map_err(|e| usage("lmfdb-client", e))?;
    let steinberg: Vec<u64> = n.primes().filter(|&p| n.exponent(p) == 1).collect();
    let rows: Vec<Value> = forms
        .iter()
        .map(|g| {
            let signs: Vec<Value> = steinberg
                .iter()
                .map(|&p| match lrlab_lmfdb::sign_extract(g, p) {
                    Ok(s) => json!([p, s]),
                    Err(_) => json!([p, null]),
                })
                .collect();
            json!({
                "label": g.label,
                "dim": g.dim,
                "field_poly": g.field_poly.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "traces": g.traces.iter().take(20).collect::<Vec<_>>(),
                "signs": signs,
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "anchor": "lmfdb-newforms",
        "level": level,
        "total_dim": forms.iter().map(|g| g.dim).sum::<usize>(),
        "forms": rows,
    })))
}

fn audit(global: &GlobalOpts, tables: Option<PathBuf>, bound: u64, verbose: bool) -> Result<Outcome, CliError> {
    let fixture = match tables {
        Some(p) => TableFixture::from_path(&p).map_err(|e| usage("table-audit", e))?,
        None => TableFixture::bundled(),
    };
    let report = lrlab_lmfdb::verify_table(&client(global), &fixture, bound).map_err(|e| failure("table-audit", e))?;
    let mut out = to_value(&report);
    if !verbose {
        if let Some(o) = out.as_object_mut() {
            o.remove("certificates");
        }
        out["certificate_summary"] = report
            .certificates
            .iter()
            .map(|c| json!([c.newform, to_value(&c.status)]))
            .collect::<Vec<_>>()
            .into();
    }
    Ok(Outcome { ok: report.passed, report: out })
}
