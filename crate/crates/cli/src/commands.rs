use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use bratteli::classify::{
    back_and_forth, homeomorphic, is_good, weakly_homeomorphic, Goodness, HomeoStatus, MeasureObject,
};
use bratteli::construct::{odometer_from_grouplike, OdometerMeasure};
use bratteli::diagram::{class_decomposition, StationaryDiagram};
use bratteli::exact::{parse_rational, FieldElement, NumberField, Rational, Tri, DEFAULT_CLOSURE_BOUND};
use bratteli::measure::{class_spectral_radii, ergodic_measures, ErgodicMeasure, LevelMeasure, Value};
use bratteli::oracle::EnumerationBudget;
use bratteli::svalues::{clopen_values, ClopenValuesSet};
use serde_json::{json, Value as Json};

use crate::document::{DiagramDocument, Loaded};
use crate::CliError;

/// Text to print and the process exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn new(text: String, code: u8) -> Self {
        Outcome { text, code }
    }
}

const POSITIVE: u8 = 0;
const NEGATIVE: u8 = 1;
const UNDETERMINED: u8 = 3;

/// Search limits, overridable through `BRATTELI_MAX_LEVEL`,
/// `BRATTELI_MAX_CELLS` and `BRATTELI_CLOSURE_BOUND`.
#[derive(Clone, Debug)]
pub struct Budget {
    pub enumeration: EnumerationBudget,
    pub closure_bound: usize,
}

impl Budget {
    pub fn from_env() -> Result<Self, CliError> {
        fn var<T: std::str::FromStr>(name: &str, default: T) -> Result<T, CliError> {
            match std::env::var(name) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Input(format!("environment variable {name}: cannot parse `{s}`"))),
                Err(_) => Ok(default),
            }
        }
        let enumeration = EnumerationBudget {
            max_level: var("BRATTELI_MAX_LEVEL", 12)?,
            max_cells: var("BRATTELI_MAX_CELLS", 200_000)?,
            ..EnumerationBudget::default()
        };
        Ok(Budget { enumeration, closure_bound: var("BRATTELI_CLOSURE_BOUND", DEFAULT_CLOSURE_BOUND)? })
    }
}

fn load(path: &Path) -> Result<(DiagramDocument, Loaded), CliError> {
    let doc = DiagramDocument::load(path)?;
    let d = doc.diagram()?;
    Ok((doc, d))
}

fn load_stationary(path: &Path) -> Result<StationaryDiagram, CliError> {
    match load(path)?.1 {
        Loaded::Stationary(d) => Ok(d),
        Loaded::FiniteRank(_) => {
            Err(CliError::Input(format!("{}: this command needs a stationary diagram", path.display())))
        }
    }
}

/// The measure of class `label` (from 1), or the unique full measure.
fn select_measure(d: &StationaryDiagram, label: Option<usize>) -> Result<ErgodicMeasure, CliError> {
    let measures = ergodic_measures(d)?;
    match label {
        Some(0) => Err(CliError::Input("--measure: class labels start at 1".into())),
        Some(l) => measures.into_iter().find(|m| m.alpha() + 1 == l).ok_or_else(|| {
            CliError::Input(format!("--measure: class {l} carries no ergodic measure"))
        }),
        None => {
            let mut full: Vec<ErgodicMeasure> = measures.into_iter().filter(is_full).collect();
            if full.len() == 1 {
                Ok(full.remove(0))
            } else {
                Err(CliError::Input("no unique full measure; choose one with --measure".into()))
            }
        }
    }
}

fn is_full(m: &ErgodicMeasure) -> bool {
    m.weights().iter().all(|w| w.finite().is_none_or(|x| !x.is_zero()))
}

/// A measure object from a document: ergodic on stationary diagrams,
/// the constructed odometer on finite-rank documents that record their
/// group-like input.
fn load_object(path: &Path, label: Option<usize>) -> Result<MeasureObject, CliError> {
    let (doc, d) = load(path)?;
    match d {
        Loaded::Stationary(d) => Ok(MeasureObject::Ergodic(select_measure(&d, label)?)),
        Loaded::FiniteRank(fr) => {
            let gens = doc.metadata.get("grouplike").ok_or_else(|| {
                CliError::Library(bratteli::Error::Unsupported(
                    "finite-rank measures are available only for constructed odometers".into(),
                ))
            })?;
            let lambda = match doc.metadata.get("lambda") {
                Some(s) => Some(s.parse().map_err(|_| CliError::Input(format!("metadata `lambda`: `{s}`")))?),
                None => None,
            };
            let odo = build_odometer(gens, lambda)?;
            if odo.finite_rank() != &fr {
                return Err(CliError::Input(format!(
                    "{}: matrices do not match the odometer of metadata `grouplike`",
                    path.display()
                )));
            }
            Ok(MeasureObject::Odometer(odo))
        }
    }
}

fn parse_generators(s: &str) -> Result<Vec<Rational>, CliError> {
    let gens: Vec<Rational> = s
        .split(',')
        .map(|t| parse_rational(t.trim()).ok_or_else(|| CliError::Input(format!("--grouplike: bad rational `{}`", t.trim()))))
        .collect::<Result<_, _>>()?;
    if gens.is_empty() {
        return Err(CliError::Input("--grouplike: no generators".into()));
    }
    Ok(gens)
}

fn default_lambda(gens: &[Rational]) -> Result<i64, CliError> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    gens.iter().try_fold(1i64, |acc, g| {
        let d: i64 = g.denom().try_into().map_err(|_| CliError::Input("--grouplike: denominator too large".into()))?;
        (acc / gcd(acc, d)).checked_mul(d).ok_or_else(|| CliError::Input("--grouplike: λ too large".into()))
    })
}

fn build_odometer(gens: &str, lambda: Option<i64>) -> Result<OdometerMeasure, CliError> {
    let g = parse_generators(gens)?;
    let lambda = match lambda {
        Some(l) => l,
        None => default_lambda(&g)?,
    };
    let target = ClopenValuesSet::rational(&g, Some(lambda))?;
    Ok(odometer_from_grouplike(&target)?)
}

fn tri_str(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Undetermined => "undetermined",
    }
}

fn to_json(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn measure_json(m: &ErgodicMeasure) -> Json {
    let weights: Vec<String> = m.weights().iter().map(Value::exact_string).collect();
    let profile = m.defective_profile().ok();
    json!({
        "class": m.alpha() + 1,
        "lambda": m.lambda().to_string(),
        "field": m.field().describe(),
        "tag": if m.is_finite() { "finite" } else { "infinite" },
        "full": is_full(m),
        "weights": weights,
        "total_mass": if m.is_finite() { m.total_mass().exact_string() } else { "inf".to_string() },
        "defective_profile": profile.as_ref().map(|p| json!({
            "kind": p.kind.to_string(),
            "mass_class": p.mass_class.to_string(),
            "mass": p.mass.exact_string(),
        })),
    })
}

pub fn analyze(path: &Path, as_json: bool) -> Result<Outcome, CliError> {
    let d = load_stationary(path)?;
    let classes = class_decomposition(&d);
    let radii = class_spectral_radii(&d, &classes);
    let measures = ergodic_measures(&d)?;
    if as_json {
        let cls: Vec<Json> = classes
            .classes
            .iter()
            .enumerate()
            .map(|(i, vs)| {
                json!({
                    "label": i + 1,
                    "vertices": vs.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "nontrivial": classes.nontrivial[i],
                    "perron_root": radii[i].to_string(),
                    "precedes": (0..classes.len()).filter(|&j| classes.reaches[i][j]).map(|j| j + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        let ms: Vec<Json> = measures.iter().map(measure_json).collect();
        return Ok(Outcome::new(to_json(&json!({ "vertices": d.vertex_count(), "classes": cls, "measures": ms })), POSITIVE));
    }
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", d.vertex_count());
    let _ = writeln!(s, "classes: {}", classes.len());
    for (i, vs) in classes.classes.iter().enumerate() {
        let labels: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
        let before: Vec<String> =
            (0..classes.len()).filter(|&j| classes.reaches[i][j]).map(|j| (j + 1).to_string()).collect();
        let _ = writeln!(
            s,
            "  class {} {{{}}}: perron root {}{}{}",
            i + 1,
            labels.join(","),
            radii[i],
            if classes.nontrivial[i] { "" } else { " (trivial)" },
            if before.is_empty() { String::new() } else { format!(", precedes {}", before.join(",")) }
        );
    }
    let _ = writeln!(s, "measures: {}", measures.len());
    for m in &measures {
        let tag = if m.is_finite() { "finite" } else { "infinite" };
        let _ = writeln!(s, "  class {}: λ = {}, {tag}{}", m.alpha() + 1, m.lambda(), if is_full(m) { ", full" } else { "" });
        for (v, w) in m.weights().iter().enumerate() {
            let _ = writeln!(s, "    x[{}] = {}", v + 1, w.exact_string());
        }
        if m.is_finite() {
            let _ = writeln!(s, "    total mass = {}", m.total_mass().exact_string());
        }
        if !m.field().is_rational() {
            let _ = writeln!(s, "    field: {}", m.field().describe());
        }
        if let Ok(p) = m.defective_profile() {
            let _ = writeln!(s, "    defective set: {} ({}, mass {})", p.kind, p.mass_class, p.mass.exact_string());
        }
    }
    Ok(Outcome::new(s, POSITIVE))
}

/// `p/q`, or `[c0, c1, ...]` for `c0 + c1 λ + ...` in the field of `λ`.
fn parse_value(s: &str, field: &NumberField) -> Result<FieldElement, CliError> {
    let bad = || CliError::Input(format!("--member: cannot parse `{s}`"));
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let coords: Vec<Rational> =
            inner.split(',').map(|c| parse_rational(c.trim()).ok_or_else(bad)).collect::<Result<_, _>>()?;
        return FieldElement::from_coords(field, coords).map_err(|_| {
            CliError::Input(format!("--member: `{s}` needs at most {} coordinates", field.degree()))
        });
    }
    Ok(FieldElement::from_rational(field, parse_rational(t).ok_or_else(bad)?))
}

pub fn svalues(
    path: &Path,
    label: Option<usize>,
    members: &[String],
    as_json: bool,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    let mu = select_measure(&load_stationary(path)?, label)?;
    let set = clopen_values(&mu);
    let mut rows = Vec::new();
    let mut code = POSITIVE;
    for m in members {
        let v = parse_value(m, mu.field())?;
        let t = set.member(&v, budget.closure_bound)?;
        if t == Tri::Undetermined {
            code = UNDETERMINED;
        }
        rows.push((v.exact_string(), t));
    }
    if as_json {
        let table: Vec<Json> = rows.iter().map(|(v, t)| json!({ "value": v, "member": tri_str(*t) })).collect();
        let out = json!({
            "class": mu.alpha() + 1,
            "set": set.to_string(),
            "field": mu.field().describe(),
            "bound": set.bound().map(FieldElement::exact_string),
            "members": table,
        });
        return Ok(Outcome::new(to_json(&out), code));
    }
    let mut s = format!("S(μ) for class {}: {set}\n", mu.alpha() + 1);
    if !mu.field().is_rational() {
        let _ = writeln!(s, "field: {}", mu.field().describe());
    }
    for (v, t) in &rows {
        let _ = writeln!(s, "  {v}: {}", tri_str(*t));
    }
    Ok(Outcome::new(s, code))
}

pub fn good(path: &Path, label: Option<usize>, as_json: bool, budget: &Budget) -> Result<Outcome, CliError> {
    let mu = select_measure(&load_stationary(path)?, label)?;
    let v = is_good(&mu, budget.closure_bound);
    let code = match v.verdict {
        Goodness::Good => POSITIVE,
        Goodness::Bad => NEGATIVE,
        Goodness::Undetermined => UNDETERMINED,
    };
    let exps: Vec<Json> = v
        .exponents
        .iter()
        .map(|(vx, r)| json!({ "vertex": vx + 1, "exponent": r }))
        .collect();
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "cylinder": w.cylinder.label(),
            "cylinder_measure": w.cylinder_measure.exact_string(),
            "value": w.value.exact_string(),
            "realizer": w.realizer.label(),
            "vertex": w.vertex + 1,
        })
    });
    if as_json {
        let out = json!({ "class": mu.alpha() + 1, "verdict": v.verdict.to_string(), "exponents": exps, "witness": witness });
        return Ok(Outcome::new(to_json(&out), code));
    }
    let mut s = format!("{}\n", v.verdict);
    for (vx, r) in &v.exponents {
        match r {
            Some(r) => {
                let _ = writeln!(s, "  vertex {}: λ^{r} x[{}] ∈ H(x_α)", vx + 1, vx + 1);
            }
            None => {
                let _ = writeln!(s, "  vertex {}: no exponent found", vx + 1);
            }
        }
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(
            s,
            "witness: V = {} with μ(V) = {}; w = {} (cylinder {} at vertex {}) has no clopen subset of V",
            w.cylinder.label(),
            w.cylinder_measure.exact_string(),
            w.value.exact_string(),
            w.realizer.label(),
            w.vertex + 1
        );
    }
    Ok(Outcome::new(s, code))
}

fn status_code(s: HomeoStatus) -> u8 {
    match s {
        HomeoStatus::Homeomorphic => POSITIVE,
        HomeoStatus::NotHomeomorphic => NEGATIVE,
        HomeoStatus::Undetermined => UNDETERMINED,
    }
}

fn status_str(s: HomeoStatus) -> &'static str {
    match s {
        HomeoStatus::Homeomorphic => "homeomorphic",
        HomeoStatus::NotHomeomorphic => "not homeomorphic",
        HomeoStatus::Undetermined => "undetermined",
    }
}

pub fn homeo(
    a: &Path,
    b: &Path,
    la: Option<usize>,
    lb: Option<usize>,
    weak: bool,
    as_json: bool,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    let mu = load_object(a, la)?;
    let nu = load_object(b, lb)?;
    let v = homeomorphic(&mu, &nu, budget.closure_bound)?;
    let mut code = status_code(v.verdict);
    let w = if weak { Some(weakly_homeomorphic(&mu, &nu, budget.closure_bound)?) } else { None };
    if let Some(w) = &w {
        if v.verdict != HomeoStatus::Homeomorphic {
            code = status_code(w.verdict);
        }
    }
    if as_json {
        let out = json!({
            "verdict": status_str(v.verdict),
            "reason": v.reason.to_string(),
            "weak": w.as_ref().map(|w| json!({
                "verdict": status_str(w.verdict),
                "scale": w.scale.as_ref().map(|c| c.to_string()),
            })),
        });
        return Ok(Outcome::new(to_json(&out), code));
    }
    let mut s = format!("{} ({})\n", status_str(v.verdict), v.reason);
    if let Some(w) = &w {
        match &w.scale {
            Some(c) => {
                let _ = writeln!(s, "weakly homeomorphic: S(μ) = {c}·S(ν)");
            }
            None => {
                let _ = writeln!(s, "weak: {}", status_str(w.verdict));
            }
        }
    }
    Ok(Outcome::new(s, code))
}

pub fn certify(
    a: &Path,
    b: &Path,
    depth: usize,
    la: Option<usize>,
    lb: Option<usize>,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    let mu = load_object(a, la)?;
    let nu = load_object(b, lb)?;
    let cert = back_and_forth(&mu, &nu, depth, &budget.enumeration, budget.closure_bound)?;
    let (m, n): (&dyn LevelMeasure, &dyn LevelMeasure) = (
        mu.level_measure().expect("loaded objects live on diagrams"),
        nu.level_measure().expect("loaded objects live on diagrams"),
    );
    cert.verify(m, n)?;
    Ok(Outcome::new(to_json(&cert.to_json(m, n)), POSITIVE))
}

pub fn construct(grouplike: &str, lambda: Option<i64>) -> Result<Outcome, CliError> {
    let gens = parse_generators(grouplike)?;
    let lam = match lambda {
        Some(l) => l,
        None => default_lambda(&gens)?,
    };
    let odo = build_odometer(grouplike, Some(lam))?;
    let mut meta = BTreeMap::new();
    let canon: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    meta.insert("grouplike".to_string(), canon.join(", "));
    meta.insert("lambda".to_string(), lam.to_string());
    meta.insert("scale".to_string(), odo.scale().to_string());
    meta.insert("svalues".to_string(), odo.svalues().to_string());
    let doc = DiagramDocument::finite_rank(odo.finite_rank(), meta);
    Ok(Outcome::new(doc.to_canonical(), POSITIVE))
}

pub fn dot(path: &Path) -> Result<Outcome, CliError> {
    let d = load_stationary(path)?;
    Ok(Outcome::new(class_decomposition(&d).to_dot(), POSITIVE))
}

pub fn canonical(path: &Path) -> Result<Outcome, CliError> {
    let (doc, d) = load(path)?;
    let out = match d {
        Loaded::Stationary(d) => DiagramDocument::stationary(&d, doc.metadata),
        Loaded::FiniteRank(d) => DiagramDocument::finite_rank(&d, doc.metadata),
    };
    Ok(Outcome::new(out.to_canonical(), POSITIVE))
}
