//! Job specifications, parameter validation and dispatch to the library.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use silc::charring::{demazure_word, gch_global_weyl, weyl_character, CharError, GradedCharacter, Window};
use silc::pieri::{compute_pieri, smt_character, PieriError};
use silc::quasimap::{
    defect_divisor, degree_balance, dim_parabolic, dim_richardson, evaluate, saturated_degrees, schubert_member,
    validate_dp, DPComponent, DPData, Point, QuasiMapError,
};
use silc::ratpoly::{parse_rational, RatPoly};
use silc::semiinf::{si_covers_below, si_interval, si_le, si_length, sort_elements, SemiInfError};
use silc::weylgroup::parse_ints;
use silc::{AffineWeylElement, CartanMatrix, Coweight, FiniteWeylElement, RootDataError, RootDatum, Weight, WeylGroup};

use crate::args::Format;

pub const SCHEMA: &str = "silc/1";

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: &'static str,
    pub action: Option<&'static str>,
    /// `None` only for `qmap`, which picks type A from its data
    pub cartan: Option<Vec<Vec<i64>>>,
    pub params: BTreeMap<String, String>,
    pub format: Format,
}

impl JobSpec {
    /// `order le`, `pieri`, ...
    pub fn name(&self) -> String {
        match (self.command, self.action) {
            ("cover" | "interval", _) => format!("order {}", self.action.unwrap_or_default()),
            (c, Some(a)) => format!("{c} {a}"),
            (c, None) => c.to_string(),
        }
    }

    /// Everything that determines the result; hashed for the cache key.
    pub fn identity(&self, version: &str) -> Value {
        json!({
            "command": self.name(),
            "cartan": self.cartan,
            "params": self.params,
            "version": version,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum JobError {
    Usage { field: Option<String>, message: String },
    Compute { kind: &'static str, message: String },
}

impl JobError {
    pub fn usage(field: impl Into<String>, message: impl Into<String>) -> Self {
        JobError::Usage { field: Some(field.into()), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Usage { .. } => 2,
            JobError::Compute { .. } => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, field, message) = match self {
            JobError::Usage { field, message } => ("usage", field.clone(), message.clone()),
            JobError::Compute { kind, message } => (*kind, None, message.clone()),
        };
        json!({ "error": { "kind": kind, "field": field, "message": message } })
    }
}

impl From<PieriError> for JobError {
    fn from(e: PieriError) -> Self {
        let kind = match &e {
            PieriError::Char(c) => return c.clone().into(),
            PieriError::SemiInf(s) => return s.clone().into(),
            PieriError::RootData(r) => return r.clone().into(),
            PieriError::BadWindow(_) => return JobError::usage("params.window", e.to_string()),
            PieriError::WindowExhausted { .. } => "window_exhausted",
            PieriError::Inconsistent { .. } => "inconsistent",
            PieriError::NotBelow(_) => "not_below",
        };
        JobError::Compute { kind, message: e.to_string() }
    }
}

impl From<CharError> for JobError {
    fn from(e: CharError) -> Self {
        match e {
            CharError::RootData(r) => r.into(),
            CharError::Unstable(_) => JobError::Compute { kind: "unstable", message: e.to_string() },
            CharError::BadWindow(_) => JobError::usage("params.window", e.to_string()),
        }
    }
}

impl From<SemiInfError> for JobError {
    fn from(e: SemiInfError) -> Self {
        JobError::Compute { kind: "unstable", message: e.to_string() }
    }
}

impl From<RootDataError> for JobError {
    fn from(e: RootDataError) -> Self {
        JobError::Compute { kind: "root_data", message: e.to_string() }
    }
}

impl From<QuasiMapError> for JobError {
    fn from(e: QuasiMapError) -> Self {
        let kind = match &e {
            QuasiMapError::SemiInf(s) => return s.clone().into(),
            QuasiMapError::RootData(r) => return r.clone().into(),
            QuasiMapError::Empty => "empty",
            QuasiMapError::NotMinimal(_) => return JobError::usage("params.w", e.to_string()),
            _ => "invalid_data",
        };
        JobError::Compute { kind, message: e.to_string() }
    }
}

/// Allowed and required parameters for each command.
fn schema(spec: &JobSpec) -> (&'static [&'static str], &'static [&'static str]) {
    match (spec.command, spec.action) {
        ("order", _) => (&["v", "w"], &["v", "w"]),
        ("cover", _) => (&["bound", "v"], &["v"]),
        ("interval", _) => (&["radius", "v", "w"], &["v", "w"]),
        ("char", Some("weyl")) => (&["lam"], &["lam"]),
        ("char", Some("gweyl")) => (&["lam", "window", "x"], &["lam", "window", "x"]),
        ("char", Some("demazure")) => (&["lam", "window", "word"], &["lam", "window", "word"]),
        ("pieri", _) => (&["depth", "lam", "w", "window"], &["depth", "lam", "w", "window"]),
        ("h0", _) => (&["depth", "lam", "v", "w", "window"], &["depth", "lam", "v", "w", "window"]),
        ("qmap", Some("eval")) => (&["at", "data", "opposite", "schubert"], &["at", "data"]),
        ("qmap", _) => (&["data"], &["data"]),
        ("dim", Some("richardson")) => (&["v", "w"], &["v", "w"]),
        ("dim", Some("parabolic")) => (&["beta", "j", "w"], &["beta", "w"]),
        _ => (&[], &[]),
    }
}

pub fn validate(spec: &JobSpec) -> Result<(), JobError> {
    let (allowed, required) = schema(spec);
    if allowed.is_empty() {
        return Err(JobError::usage("command", format!("unknown command {}", spec.name())));
    }
    for k in spec.params.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(JobError::usage(format!("params.{k}"), "unexpected parameter"));
        }
    }
    for k in required {
        if !spec.params.contains_key(*k) {
            return Err(JobError::usage(format!("params.{k}"), "missing parameter"));
        }
    }
    if spec.cartan.is_none() && spec.command != "qmap" {
        return Err(JobError::usage("root_datum", "give --type and --rank, or --cartan"));
    }
    Ok(())
}

struct Ctx<'a> {
    spec: &'a JobSpec,
}

impl Ctx<'_> {
    fn raw(&self, k: &str) -> &str {
        self.spec.params.get(k).map(String::as_str).unwrap_or_default()
    }

    fn has(&self, k: &str) -> bool {
        self.spec.params.contains_key(k)
    }

    fn element(&self, g: &WeylGroup, k: &str) -> Result<AffineWeylElement, JobError> {
        g.parse_element(self.raw(k)).map_err(|e| {
            let field = match e.0.split_once(':') {
                Some(("beta", _)) => format!("params.{k}.beta"),
                Some(("u_word", _)) => format!("params.{k}.u_word"),
                _ => format!("params.{k}"),
            };
            JobError::usage(field, e.0)
        })
    }

    fn finite(&self, g: &WeylGroup, k: &str) -> Result<FiniteWeylElement, JobError> {
        let x = self.element(g, k)?;
        if !x.translation.is_zero() {
            return Err(JobError::usage(format!("params.{k}"), "expected a finite Weyl group element"));
        }
        Ok(x.finite)
    }

    fn ints(&self, k: &str, len: usize) -> Result<Vec<i64>, JobError> {
        let v = parse_ints(self.raw(k)).map_err(|e| JobError::usage(format!("params.{k}"), e))?;
        if v.len() != len {
            return Err(JobError::usage(format!("params.{k}"), format!("expected {len} coordinates, got {}", v.len())));
        }
        Ok(v)
    }

    fn dominant(&self, k: &str, rank: usize) -> Result<Weight, JobError> {
        let lam = Weight(self.ints(k, rank)?);
        if !lam.is_dominant() {
            return Err(JobError::usage(format!("params.{k}"), format!("weight {lam} is not dominant")));
        }
        Ok(lam)
    }

    fn int(&self, k: &str, default: i64, min: i64) -> Result<i64, JobError> {
        if !self.has(k) {
            return Ok(default);
        }
        let n: i64 = self
            .raw(k)
            .trim()
            .parse()
            .map_err(|_| JobError::usage(format!("params.{k}"), format!("bad integer {:?}", self.raw(k))))?;
        if n < min {
            return Err(JobError::usage(format!("params.{k}"), format!("must be at least {min}")));
        }
        Ok(n)
    }

    fn window(&self) -> Result<Window, JobError> {
        let s = self.raw("window");
        let bad = || JobError::usage("params.window", format!("expected lo:hi with lo < hi, got {s:?}"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let lo: i64 = a.trim().parse().map_err(|_| bad())?;
        let hi: i64 = b.trim().parse().map_err(|_| bad())?;
        if lo >= hi || lo.abs() > 1 << 20 || hi.abs() > 1 << 20 {
            return Err(bad());
        }
        Ok(Window::new(lo, hi))
    }
}

pub fn run(spec: &JobSpec) -> Result<Value, JobError> {
    validate(spec)?;
    let cx = Ctx { spec };
    if spec.command == "qmap" {
        return run_qmap(&cx);
    }
    let cartan = CartanMatrix::new(spec.cartan.clone().expect("validated"))
        .map_err(|e| JobError::usage("root_datum", e.to_string()))?;
    let g = WeylGroup::new(RootDatum::new(cartan));
    let r = g.rank();
    match (spec.command, spec.action) {
        ("order", _) => {
            let w = cx.element(&g, "w")?;
            let v = cx.element(&g, "v")?;
            let le = si_le(&g, &w, &v)?;
            Ok(json!({ "result": le, "w": elem(&g, &w), "v": elem(&g, &v) }))
        }
        ("cover", _) => {
            let v = cx.element(&g, "v")?;
            let bound = cx.int("bound", 2, 0)?;
            let covers: Vec<Value> = si_covers_below(&g, &v, bound)?
                .into_iter()
                .map(|(a, x)| {
                    let mut e = elem(&g, &x);
                    e["root"] = json!({ "finite": a.finite_part, "delta": a.delta_coeff });
                    e
                })
                .collect();
            Ok(json!({ "v": elem(&g, &v), "bound": bound, "covers": covers }))
        }
        ("interval", _) => {
            let v = cx.element(&g, "v")?;
            let w = cx.element(&g, "w")?;
            let radius = cx.int("radius", 2, 0)?;
            let mut xs = si_interval(&g, &v, &w, radius)?;
            sort_elements(&g, &mut xs);
            let elements: Vec<Value> = xs.iter().map(|x| elem(&g, x)).collect();
            Ok(json!({ "v": elem(&g, &v), "w": elem(&g, &w), "radius": radius, "elements": elements }))
        }
        ("char", Some("weyl")) => {
            let lam = cx.dominant("lam", r)?;
            let f = weyl_character(&g, &lam)?;
            Ok(json!({ "character": character(&f), "dim": coeff(f.total()) }))
        }
        ("char", Some("gweyl")) => {
            let x = cx.element(&g, "x")?;
            let lam = cx.dominant("lam", r)?;
            let f = gch_global_weyl(&g, &x, &lam, cx.window()?)?;
            Ok(json!({ "x": elem(&g, &x), "character": character(&f) }))
        }
        ("char", Some("demazure")) => {
            let word = parse_word(cx.raw("word"), r)?;
            let lam = Weight(cx.ints("lam", r)?);
            let f = demazure_word(&g, &word, &GradedCharacter::monomial(0, lam, cx.window()?));
            Ok(json!({ "word": word, "character": character(&f) }))
        }
        ("pieri", _) => {
            let w = cx.element(&g, "w")?;
            let lam = cx.dominant("lam", r)?;
            let depth = cx.int("depth", 0, 0)?;
            let t = compute_pieri(&g, &w, &lam, cx.window()?, depth)?;
            let coeffs: Vec<Value> = t
                .coeffs
                .iter()
                .map(|(u, c)| {
                    let mut e = elem(&g, u);
                    e["coeff"] = character(c);
                    e
                })
                .collect();
            Ok(json!({
                "base": elem(&g, &t.base),
                "weight": t.weight.0,
                "window": window(t.window),
                "depth": t.depth,
                "coeffs": coeffs,
                "solve_mus": t.solve_mus.iter().map(|m| m.0.clone()).collect::<Vec<_>>(),
                "verify_mu": t.verify_mu.0,
                "verified_equations": t.verified_equations,
            }))
        }
        ("h0", _) => {
            let v = cx.element(&g, "v")?;
            let w = cx.element(&g, "w")?;
            let lam = cx.dominant("lam", r)?;
            let depth = cx.int("depth", 0, 0)?;
            let s = smt_character(&g, &v, &w, &lam, cx.window()?, depth)?;
            Ok(json!({
                "dim": coeff(s.character.total()),
                "character": character(&s.character),
                "interval": s.interval.iter().map(|x| elem(&g, x)).collect::<Vec<_>>(),
                "depth_clipped": s.depth_clipped,
                "window_clipped": s.window_clipped,
            }))
        }
        ("dim", Some("richardson")) => {
            let v = cx.element(&g, "v")?;
            let w = cx.element(&g, "w")?;
            Ok(json!({ "dim": dim_richardson(&g, &v, &w)? }))
        }
        ("dim", Some("parabolic")) => {
            let j = parse_nodes(cx.raw("j"), r)?;
            let beta = Coweight(cx.ints("beta", r)?);
            let w = cx.finite(&g, "w")?;
            Ok(json!({ "j": j, "dim": dim_parabolic(&g, &j, &beta, &w)? }))
        }
        _ => unreachable!("rejected by validate"),
    }
}

fn run_qmap(cx: &Ctx) -> Result<Value, JobError> {
    let data = parse_dp(cx.raw("data"))?;
    if let Some(c) = &cx.spec.cartan {
        let a = CartanMatrix::of_type("A", data.rank).map_err(|e| JobError::usage("params.data.rank", e.to_string()))?;
        if a.entries() != c.as_slice() {
            return Err(JobError::usage("root_datum", format!("quasi-map data is for type A{}", data.rank)));
        }
    }
    match cx.spec.action {
        Some("validate") => Ok(match validate_dp(&data) {
            Ok(d) => json!({ "valid": true, "beta": d.beta.0 }),
            Err(e) => json!({ "valid": false, "reason": e.to_string() }),
        }),
        Some("defect") => {
            let beta = validate_dp(&data)?.beta;
            let d = defect_divisor(&data)?;
            let (lhs, rhs) = degree_balance(&data)?;
            let points: Vec<Value> = d
                .finite_points
                .iter()
                .map(|p| {
                    json!({
                        "factor": p.factor.to_string(),
                        "factor_coeffs": poly(&p.factor),
                        "multiplicity": p.multiplicity.0,
                    })
                })
                .collect();
            Ok(json!({
                "beta": beta.0,
                "divisor": {
                    "finite": points,
                    "at_infinity": d.at_infinity.0,
                    "total": d.total().0,
                    "display": d.to_string(),
                },
                "saturated_degrees": saturated_degrees(&data)?.0,
                "balance": { "lhs": lhs.0, "rhs": rhs.0, "holds": lhs == rhs },
            }))
        }
        Some("eval") => {
            let point = match cx.raw("at").trim() {
                "0" => Point::Zero,
                "inf" => Point::Infinity,
                s => return Err(JobError::usage("params.at", format!("expected 0 or inf, got {s:?}"))),
            };
            let p = evaluate(&data, point)?;
            let coords: Vec<Vec<String>> =
                p.coords.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
            let mut out = json!({ "at": cx.raw("at").trim(), "coords": coords });
            if cx.has("schubert") {
                let g = WeylGroup::new(RootDatum::of_type("A", data.rank)?);
                let w = cx.finite(&g, "schubert")?;
                let opposite = cx.has("opposite");
                out["schubert"] = json!({
                    "w": g.display(&g.from_finite(&w)).to_string(),
                    "opposite": opposite,
                    "member": schubert_member(&g, &p, &w, opposite)?,
                });
            }
            Ok(out)
        }
        _ => unreachable!("rejected by validate"),
    }
}

fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>, JobError> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if i <= rank => Ok(i),
            _ => Err(JobError::usage("params.word", format!("bad index {t:?}, expected 0..={rank}"))),
        })
        .collect()
}

fn parse_nodes(s: &str, rank: usize) -> Result<Vec<usize>, JobError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut v = s
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i),
            _ => Err(JobError::usage("params.j", format!("bad node {t:?}, expected 1..={rank}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Reads the `--data` argument, a JSON object inline or in a file.
pub fn load_data(arg: &str) -> Result<Value, JobError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| JobError::usage("params.data", format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| JobError::usage("params.data", e.to_string()))
}

/// `{"rank": r, "degrees": [...], "components": [{"weight": i, "polys": [["1"], ["0", "1"]]}]}`,
/// each polynomial a list of rational coefficients from the constant term up.
fn parse_dp(text: &str) -> Result<DPData, JobError> {
    let v: Value = serde_json::from_str(text).map_err(|e| JobError::usage("params.data", e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| JobError::usage("params.data", "expected an object"))?;
    let get = |k: &str| obj.get(k).ok_or_else(|| JobError::usage(format!("params.data.{k}"), "missing"));
    let rank = get("rank")?
        .as_u64()
        .filter(|r| (1..=2).contains(r))
        .ok_or_else(|| JobError::usage("params.data.rank", "expected 1 or 2"))? as usize;
    let degrees = get("degrees")?
        .as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| JobError::usage("params.data.degrees", "expected a list of integers"))?;
    let comps = get("components")?
        .as_array()
        .ok_or_else(|| JobError::usage("params.data.components", "expected a list"))?;
    let mut components = Vec::new();
    for (n, c) in comps.iter().enumerate() {
        let at = |k: &str| format!("params.data.components[{n}].{k}");
        let weight = c
            .get("weight")
            .and_then(Value::as_u64)
            .filter(|w| (1..=rank as u64).contains(w))
            .ok_or_else(|| JobError::usage(at("weight"), format!("expected 1..={rank}")))? as usize;
        let polys = c
            .get("polys")
            .and_then(Value::as_array)
            .ok_or_else(|| JobError::usage(at("polys"), "expected a list of polynomials"))?;
        let mut ps = Vec::new();
        for (m, p) in polys.iter().enumerate() {
            let bad = |msg: String| JobError::usage(format!("{}[{m}]", at("polys")), msg);
            let cs = p.as_array().ok_or_else(|| bad("expected a list of coefficients".into()))?;
            let cs = cs
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rational(s).map_err(bad),
                    Value::Number(n) => n.as_i64().map(silc::ratpoly::rat).ok_or_else(|| bad(format!("bad coefficient {n}"))),
                    _ => Err(bad(format!("bad coefficient {x}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            ps.push(RatPoly::new(cs));
        }
        components.push(DPComponent { weight, polys: ps });
    }
    Ok(DPData { rank, components, degrees })
}

fn elem(g: &WeylGroup, x: &AffineWeylElement) -> Value {
    json!({ "element": g.display(x).to_string(), "si_length": si_length(g, x) })
}

fn coeff(c: i128) -> Value {
    match i64::try_from(c) {
        Ok(n) => json!(n),
        Err(_) => json!(c.to_string()),
    }
}

fn window(w: Window) -> Value {
    let lo = (w.lo > Window::UNBOUNDED.lo).then_some(w.lo);
    let hi = (w.hi < Window::UNBOUNDED.hi).then_some(w.hi);
    json!([lo, hi])
}

pub fn character(f: &GradedCharacter) -> Value {
    let terms: Vec<Value> = f.terms().into_iter().map(|(q, wt, c)| json!([q, wt.0, coeff(c)])).collect();
    json!({ "window": window(f.window()), "terms": terms })
}

fn poly(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Wraps a result with the job that produced it.
pub fn envelope(spec: &JobSpec, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(spec.name()));
    m.insert("cartan".into(), json!(spec.cartan));
    m.insert("params".into(), json!(spec.params));
    m.insert("result".into(), result);
    Value::Object(m)
}
