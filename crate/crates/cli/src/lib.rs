//! Job configuration, commands and report assembly for the `qdc` binary.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Map, Value};
use thiserror::Error;

use qdc_core::calculus::{Calculus, CalculusError};
use qdc_core::cyclo::CycNum;
use qdc_core::double::{central_projector, enumerate_blocks, CrossedModule, DoubleError};
use qdc_core::exterior::{
    alternate_words_s3, antisymmetrize, braiding_oracle, reduced_words, ExteriorData, ExteriorError, DEFAULT_MAX_DIM,
};
use qdc_core::group::{ConjClass, FiniteGroup, GroupError, Section};
use qdc_core::rep::{catalog, Family, RepError, Representation};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("coverage error: {0}")]
    Coverage(String),
    #[error("gate `{gate}` failed: {detail}")]
    Gate { gate: String, detail: String },
    #[error("resource bound: {0}")]
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Coverage(_) => 3,
            CliError::Gate { .. } => 4,
            CliError::Bound(_) => 5,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<DoubleError> for CliError {
    fn from(e: DoubleError) -> Self {
        match e {
            DoubleError::Uncovered { .. } => CliError::Coverage(e.to_string()),
            DoubleError::Inconsistent(_) | DoubleError::NotHomomorphism(..) => CliError::Gate {
                gate: "crossed_module".into(),
                detail: e.to_string(),
            },
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CalculusError> for CliError {
    fn from(e: CalculusError) -> Self {
        match e {
            CalculusError::TrivialPair => CliError::Input(e.to_string()),
            CalculusError::OracleMismatch(d) => CliError::Gate {
                gate: "jur_oracle".into(),
                detail: d,
            },
            CalculusError::Double(d) => d.into(),
        }
    }
}

impl From<ExteriorError> for CliError {
    fn from(e: ExteriorError) -> Self {
        match e {
            ExteriorError::SizeBound { .. } => CliError::Bound(e.to_string()),
            ExteriorError::BraidMismatch(d) => CliError::Gate {
                gate: "braid_oracle".into(),
                detail: d,
            },
            ExteriorError::Gate { gate, detail } => CliError::Gate {
                gate: gate.into(),
                detail,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector<T> {
    All,
    One(T),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrepSource {
    Builtin(Family),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub group: GroupSource,
    pub class: Selector<String>,
    pub irrep: Selector<IrrepSource>,
    /// inline JSON or a file
    pub section: Option<String>,
    pub n_max: usize,
    pub max_dim: usize,
    pub verify_only: bool,
    pub relations: bool,
    pub cohomology: bool,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            group: GroupSource::Builtin("S3".into()),
            class: Selector::All,
            irrep: Selector::All,
            section: None,
            n_max: 3,
            max_dim: DEFAULT_MAX_DIM,
            verify_only: false,
            relations: false,
            cohomology: false,
        }
    }
}

/// `file:path` or a plain value.
fn file_prefix(s: &str) -> Option<PathBuf> {
    s.strip_prefix("file:").map(PathBuf::from)
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl GroupSource {
    pub fn parse(s: &str) -> GroupSource {
        match file_prefix(s) {
            Some(p) => GroupSource::File(p),
            None => GroupSource::Builtin(s.to_string()),
        }
    }

    pub fn load(&self) -> Result<FiniteGroup, CliError> {
        Ok(match self {
            GroupSource::Builtin(name) => FiniteGroup::builtin(name)?,
            GroupSource::File(p) => FiniteGroup::from_json(&read(p)?)?,
        })
    }
}

impl IrrepSource {
    pub fn parse(s: &str) -> Result<Selector<IrrepSource>, CliError> {
        if s == "all" {
            return Ok(Selector::All);
        }
        Ok(Selector::One(match file_prefix(s) {
            Some(p) => IrrepSource::File(p),
            None => IrrepSource::Builtin(Family::parse(s)?),
        }))
    }
}

impl Selector<String> {
    pub fn parse(s: &str) -> Selector<String> {
        if s == "all" {
            Selector::All
        } else {
            Selector::One(s.to_string())
        }
    }
}

impl JobConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_dim == 0 {
            return Err(CliError::Input("matrix bound must be positive".into()));
        }
        if self.n_max == 0 {
            return Err(CliError::Input("n_max must be positive".into()));
        }
        Ok(())
    }

    fn load_section(&self, g: &FiniteGroup) -> Result<Option<Section>, CliError> {
        let Some(s) = &self.section else { return Ok(None) };
        let text = match file_prefix(s) {
            Some(p) => read(&p)?,
            None => s.clone(),
        };
        Ok(Some(Section::from_json(g, &text)?))
    }
}

/// One `(class, section, irrep)` job.
struct Pair {
    section: Section,
    rep: Representation,
}

fn resolve_pairs(cfg: &JobConfig, g: &FiniteGroup) -> Result<Vec<Pair>, CliError> {
    let custom = cfg.load_section(g)?;
    let classes: Vec<ConjClass> = match (&cfg.class, &custom) {
        (Selector::One(s), _) => vec![g.class_of(g.find_element(s)?)],
        (Selector::All, Some(sec)) => vec![g.class_of(sec.basepoint())],
        (Selector::All, None) => g.conjugacy_classes(),
    };
    let mut out = Vec::new();
    for class in classes {
        let section = match &custom {
            Some(sec) if class.contains(sec.basepoint()) => sec.clone(),
            Some(sec) => {
                return Err(CliError::Input(format!(
                    "section basepoint {} is not in the class of {}",
                    g.name(sec.basepoint()),
                    g.name(class.basepoint)
                )))
            }
            None => Section::default_for(g, &class),
        };
        let cent = g.centralizer(section.basepoint()).group;
        let reps = match &cfg.irrep {
            Selector::One(IrrepSource::Builtin(f)) => vec![Representation::builtin(&cent, f)?],
            Selector::One(IrrepSource::File(p)) => {
                let label = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                vec![Representation::from_json(&cent, &read(p)?, &label)?]
            }
            Selector::All => {
                let (reps, covered) = catalog(&cent);
                if !covered {
                    return Err(CliError::Coverage(format!(
                        "the irrep catalog does not cover the centralizer of {} (order {})",
                        g.name(section.basepoint()),
                        cent.order()
                    )));
                }
                reps
            }
        };
        for rep in reps {
            let trivial_pair = class.is_trivial(g) && rep.is_trivial();
            if trivial_pair && matches!(cfg.irrep, Selector::All) {
                continue;
            }
            out.push(Pair {
                section: section.clone(),
                rep,
            });
        }
    }
    Ok(out)
}

/// Conventions that every report carries.
pub fn convention_record(section: Option<(&FiniteGroup, &Section)>) -> Value {
    let mut rec = json!({
        "q_pairing": "Q₂(a) = (id⊗⟨·,a⟩)(Q), Q = ℛ₂₁ℛ",
        "antipode": "S(t⊗δ_v) = v⁻¹t⁻¹v ⊗ δ_{v⁻¹}",
        "differential": "d a = a·θ − θ·a; d ω = (−1)ⁿ ω∧θ − θ∧ω on degree n",
        "product": "permutations compose right to left, (pq)(i) = p(q(i))",
        "reduced_words": "bubble-sort word of each permutation in lexicographic order",
        "lambda_coordinates": "pivot columns of the echelon form of A_n",
    });
    if let Some((g, sec)) = section {
        let class = g.class_of(sec.basepoint());
        let map: Map<String, Value> = class
            .elements
            .iter()
            .map(|&a| (g.name(a).to_string(), Value::String(g.name(sec.rep(a)).to_string())))
            .collect();
        rec["section"] = json!({"basepoint": g.name(sec.basepoint()), "section": map});
    }
    rec
}

pub fn cmd_classify(cfg: &JobConfig) -> Result<Value, CliError> {
    cfg.validate()?;
    let g = cfg.group.load()?;
    let blocks = enumerate_blocks(&g)?;
    let calculi: Vec<Value> = blocks
        .iter()
        .filter(|b| !b.is_trivial())
        .map(|b| serde_json::to_value(b.report()).expect("serializable"))
        .collect();
    let dims: Vec<usize> = blocks.iter().filter(|b| !b.is_trivial()).map(|b| b.dim).collect();
    let sum: usize = dims.iter().sum();
    let n = g.order();
    Ok(json!({
        "group": g.names(),
        "group_order": n,
        "calculi": calculi,
        "summary": {
            "count": dims.len(),
            "dims": dims,
            "dim_sum": sum,
            "dim_sum_matches": sum + 1 == n * n,
        },
        "conventions": convention_record(None),
    }))
}

fn gate(gates: &mut Map<String, Value>, first: &mut Option<CliError>, name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => {
            gates.insert(name.into(), json!({"status": "pass", "detail": detail}));
        }
        Err(detail) => {
            gates.insert(name.into(), json!({"status": "fail", "detail": detail.clone()}));
            if first.is_none() {
                *first = Some(CliError::Gate {
                    gate: name.into(),
                    detail,
                });
            }
        }
    }
}

fn skip(gates: &mut Map<String, Value>, name: &str, why: &str) {
    gates.insert(name.into(), json!({"status": "skipped", "detail": why}));
}

fn cocycle_table(md: &CrossedModule) -> Value {
    let g = &md.group;
    let rows: Map<String, Value> = md
        .class
        .elements
        .iter()
        .map(|&a| {
            let row: Map<String, Value> = g
                .elements()
                .map(|x| {
                    let z = md.zeta(a, x);
                    let entries: Vec<Vec<String>> = (0..z.rows())
                        .map(|i| (0..z.cols()).map(|j| z.get(i, j).to_literal()).collect())
                        .collect();
                    let v = if md.dim_v() == 1 {
                        json!(entries[0][0])
                    } else {
                        json!(entries)
                    };
                    (g.name(x).to_string(), v)
                })
                .collect();
            (g.name(a).to_string(), Value::Object(row))
        })
        .collect();
    Value::Object(rows)
}

fn literal_vec(v: &[(usize, CycNum)]) -> Vec<Value> {
    v.iter().map(|(i, c)| json!([i, c.to_literal()])).collect()
}

/// Result of one pipeline job: the report and the first failure, if any.
pub struct PairOutcome {
    pub report: Value,
    pub failure: Option<CliError>,
}

fn run_pair(cfg: &JobConfig, g: &FiniteGroup, pair: &Pair) -> Result<PairOutcome, CliError> {
    let md = CrossedModule::new(g, &pair.section, &pair.rep)?;
    let block = central_projector(&md)?;
    let calc = Calculus::build(&md)?;
    let mut gates = Map::new();
    let mut failure = None;

    let fo = calc.verify_first_order();
    gate(
        &mut gates,
        &mut failure,
        "leibniz",
        match &fo.leibniz_failure {
            None => Ok(format!("{} pairs", fo.leibniz_checked)),
            Some(e) => Err(e.clone()),
        },
    );
    gate(
        &mut gates,
        &mut failure,
        "innerness",
        match &fo.innerness_failure {
            None => Ok(format!("{} basis elements", fo.innerness_checked)),
            Some(e) => Err(e.clone()),
        },
    );
    gate(
        &mut gates,
        &mut failure,
        "surjectivity",
        if fo.surjective {
            Ok(format!("span rank {}", fo.span_rank))
        } else {
            Err(format!(
                "A·dA spans rank {} of {}",
                fo.span_rank,
                calc.num_labels() * calc.algebra_dim()
            ))
        },
    );
    gate(
        &mut gates,
        &mut failure,
        "jur_oracle",
        match calc.oracle_check() {
            Ok(r) => Ok(format!(
                "{} rules, {} differentials; {}",
                r.comm_rules_checked,
                r.differentials_checked,
                r.orientation.describe()
            )),
            Err(e) => Err(e.to_string()),
        },
    );

    let mut report = json!({
        "block": serde_json::to_value(block.report()).expect("serializable"),
        "conventions": convention_record(Some((g, &pair.section))),
        "field_conductor": md.rep.conductor(),
        "cocycle_table": cocycle_table(&md),
    });

    let psi_labels = calc.num_labels();
    let oracle = braiding_oracle(&calc);
    if cfg.verify_only {
        let explicit = qdc_core::exterior::braiding(&calc);
        gate(
            &mut gates,
            &mut failure,
            "braid_oracle",
            match explicit.first_difference(&oracle) {
                None => Ok(format!("{0}×{0}", psi_labels * psi_labels)),
                Some(c) => Err(format!("column {c} differs")),
            },
        );
        report["calculus"] = calc.dump();
        report["gates"] = Value::Object(gates);
        return Ok(PairOutcome { report, failure });
    }

    let (ext, bound_err) = ExteriorData::build_partial(calc, cfg.n_max, cfg.max_dim);
    gate(
        &mut gates,
        &mut failure,
        "braid_oracle",
        match ext.braid.first_difference(&oracle) {
            None => Ok(format!("{0}×{0}", psi_labels * psi_labels)),
            Some(c) => Err(format!("column {c} differs")),
        },
    );
    gate(
        &mut gates,
        &mut failure,
        "braid_invertible",
        if ext.braid.is_invertible() {
            Ok("full rank".into())
        } else {
            Err("Ψ is singular".into())
        },
    );
    let cube = (psi_labels as u128).pow(3);
    if cube <= cfg.max_dim as u128 {
        gate(
            &mut gates,
            &mut failure,
            "braid_relation",
            if ext.braid.braid_relation_holds() {
                Ok(format!("{cube} basis tensors"))
            } else {
                Err("Ψ₁Ψ₂Ψ₁ ≠ Ψ₂Ψ₁Ψ₂".into())
            },
        );
        let (std, alt) = (reduced_words(3), alternate_words_s3());
        let bad = (0..cube as usize).find(|&j| {
            let e = vec![(j, CycNum::one())];
            antisymmetrize(&ext.braid, 3, &std, &e) != antisymmetrize(&ext.braid, 3, &alt, &e)
        });
        gate(
            &mut gates,
            &mut failure,
            "reduced_word_independence",
            match bad {
                None => Ok(format!("{cube} columns of A₃")),
                Some(j) => Err(format!("A₃ column {j} depends on the word for the longest element")),
            },
        );
    } else {
        skip(&mut gates, "braid_relation", "degree 3 above the matrix bound");
        skip(
            &mut gates,
            "reduced_word_independence",
            "degree 3 above the matrix bound",
        );
    }
    gate(
        &mut gates,
        &mut failure,
        "degree0",
        ext.check_degree0()
            .map(|_| "d = d₀ on A".into())
            .map_err(|e| e.to_string()),
    );
    gate(
        &mut gates,
        &mut failure,
        "dd_zero",
        match ext.check_dd_zero() {
            Ok(n) => Ok(format!("{n} basis forms")),
            Err(e) => Err(e.to_string()),
        },
    );
    if ext.n_max() >= 2 {
        gate(
            &mut gates,
            &mut failure,
            "bimodule_stability",
            match ext.check_bimodule_stability() {
                Ok(n) => Ok(format!("{n} products")),
                Err(e) => Err(e.to_string()),
            },
        );
    } else {
        skip(&mut gates, "bimodule_stability", "degree 2 not computed");
    }

    report["lambda_dims"] = json!(ext.lambda_dims());
    if ext.n_max() >= 2 {
        let rels = ext.quadratic_relations();
        report["relation_count"] = json!(rels.len());
        let quad = ext.quadratic_dims();
        report["quadratic_algebra_dims"] = json!(quad);
        report["matches_quadratic"] = json!(quad == ext.lambda_dims());
        if cfg.relations {
            report["relations_deg2"] = Value::Array(rels.iter().map(|r| json!(literal_vec(r))).collect());
            report["relations_deg2_text"] = Value::Array(rels.iter().map(|r| json!(ext.tensor_string(2, r))).collect());
        }
    }
    if ext.n_max() >= 1 {
        let h = ext.cohomology();
        report["betti"] = json!(h.betti);
        if cfg.cohomology {
            report["cohomology"] = json!({
                "omega_dims": h.omega_dims,
                "d_ranks": h.d_ranks,
                "h0_representative": if h.h0_is_unit { "1" } else { "not the unit" },
                "h1_representative": if h.theta_spans_h1 { "θ" } else { "not θ" },
                "h1_basis": h.h1_representatives.iter().map(|v| json!(literal_vec(v))).collect::<Vec<_>>(),
            });
        }
    }
    report["calculus"] = ext.calc.dump();
    report["gates"] = Value::Object(gates);
    if let Some(e) = bound_err {
        report["partial"] = json!(true);
        if failure.is_none() {
            failure = Some(e.into());
        }
    }
    Ok(PairOutcome { report, failure })
}

/// Build, verify, exterior algebra, relations and cohomology for every
/// selected pair. Returns the report and the first failure (if any).
pub fn cmd_pipeline(cfg: &JobConfig) -> Result<(Value, Option<CliError>), CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let g = cfg.group.load()?;
    let pairs = resolve_pairs(cfg, &g)?;
    if pairs.is_empty() {
        return Err(CliError::Input("no nontrivial (class, irrep) pair selected".into()));
    }
    let mut jobs = Vec::new();
    let mut first = None;
    for p in &pairs {
        let out = run_pair(cfg, &g, p)?;
        if first.is_none() {
            first = out.failure;
        }
        jobs.push(out.report);
    }
    let body = if jobs.len() == 1 {
        jobs.pop().unwrap()
    } else {
        json!({"jobs": jobs})
    };
    let report = json!({
        "input": {
            "group": g.names(),
            "n_max": cfg.n_max,
            "max_matrix_dim": cfg.max_dim,
        },
        "report": body,
        "run": {
            "tool": concat!("qdc ", env!("CARGO_PKG_VERSION")),
            "elapsed_ms": start.elapsed().as_millis() as u64,
        },
    });
    Ok((report, first))
}

/// The report without run metadata, for byte comparisons.
pub fn strip_run(v: &Value) -> Value {
    let mut v = v.clone();
    if let Value::Object(m) = &mut v {
        m.remove("run");
    }
    v
}

/// Short human summary of a classify or pipeline report.
pub fn text_summary(v: &Value) -> String {
    let mut out = String::new();
    if let Some(s) = v.get("summary") {
        for c in v["calculi"].as_array().into_iter().flatten() {
            out.push_str(&format!(
                "class {} (size {}), centralizer order {}, irrep {}: dim {}\n",
                c["class_representative"].as_str().unwrap_or(""),
                c["class_size"],
                c["centralizer_order"],
                c["irrep"].as_str().unwrap_or(""),
                c["calculus_dim"]
            ));
        }
        out.push_str(&format!(
            "{} calculi, dims {}, sum {}\n",
            s["count"], s["dims"], s["dim_sum"]
        ));
        return out;
    }
    let jobs: Vec<&Value> = match v["report"].get("jobs") {
        Some(Value::Array(a)) => a.iter().collect(),
        _ => vec![&v["report"]],
    };
    for j in jobs {
        let b = &j["block"];
        out.push_str(&format!(
            "class {} irrep {}: dim {}, field Q(ζ_{})\n",
            b["class_representative"].as_str().unwrap_or(""),
            b["irrep"].as_str().unwrap_or(""),
            b["calculus_dim"],
            j["field_conductor"]
        ));
        if let Some(l) = j.get("lambda_dims") {
            out.push_str(&format!("  lambda_dims {l}\n"));
        }
        if let Some(r) = j.get("relation_count") {
            out.push_str(&format!("  relations in degree 2: {r}\n"));
        }
        if let Some(bt) = j.get("betti") {
            out.push_str(&format!("  betti {bt}\n"));
        }
        for (name, g) in j["gates"].as_object().into_iter().flatten() {
            out.push_str(&format!("  gate {name}: {}\n", g["status"].as_str().unwrap_or("")));
        }
    }
    out
}
