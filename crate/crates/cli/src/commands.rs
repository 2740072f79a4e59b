use std::collections::BTreeMap;

use osa_core::catalog::{
    build_catalog, build_solutions, family, find, find_solution, CatalogEntry, SolutionSpec,
    ValidationFailure,
};
use osa_core::exprcore::Expr;
use osa_core::osa::{
    analyze, apply_ansatz, exponent_balance, Ansatz, Mode, Objective, OsaError, ScaleEnv,
};
use osa_core::pdeparse::parse_equation;
use osa_core::verify::{
    fit_scaling, log_spaced, measure_features, residual, scale_spectrum, Grid, VerifyError,
};
use serde_json::{json, Value};

use crate::envelope::Output;
use crate::report::markdown_report;

pub enum CliError {
    Parse(String),
    Degenerate(String),
    UnknownId(String),
    Validation {
        message: String,
        report: Option<Value>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::UnknownId(_) => 4,
            CliError::Validation { .. } => 5,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Degenerate(m) | CliError::UnknownId(m) => m,
            CliError::Validation { message, .. } => message,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Parse(_) => "parse",
            CliError::Degenerate(_) => "degenerate",
            CliError::UnknownId(_) => "unknown-id",
            CliError::Validation { .. } => "validation",
        };
        let mut v = json!({ "error": { "kind": kind, "message": self.message(), "exitCode": self.exit_code() } });
        if let CliError::Validation {
            report: Some(r), ..
        } = self
        {
            v["error"]["report"] = r.clone();
        }
        v
    }
}

impl From<OsaError> for CliError {
    fn from(e: OsaError) -> Self {
        match e {
            OsaError::InvalidAnsatz(_) => CliError::Parse(e.to_string()),
            _ => CliError::Degenerate(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::InvalidGrid(_) | VerifyError::TooFewAmplitudes => {
                CliError::Parse(e.to_string())
            }
            VerifyError::GridTooCoarse { ref report, .. } => CliError::Validation {
                message: e.to_string(),
                report: serde_json::to_value(report).ok(),
            },
            _ => CliError::Validation {
                message: e.to_string(),
                report: None,
            },
        }
    }
}

impl From<ValidationFailure> for CliError {
    fn from(e: ValidationFailure) -> Self {
        CliError::Validation {
            message: e.to_string(),
            report: e.report.as_ref().and_then(|r| serde_json::to_value(r).ok()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn split_params(s: Option<&str>) -> Vec<String> {
    s.map(|s| {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(String::from)
            .collect()
    })
    .unwrap_or_default()
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "real" => Ok(Mode::Real),
        "envelope" => Ok(Mode::Envelope),
        other => Err(CliError::Parse(format!(
            "unknown mode `{other}` (expected real or envelope)"
        ))),
    }
}

fn parse(src: &str, params: &[String]) -> Result<Expr> {
    let refs: Vec<&str> = params.iter().map(String::as_str).collect();
    parse_equation(src, &refs).map_err(|e| CliError::Parse(e.to_string()))
}

fn entry_for<'a>(cat: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry> {
    find(cat, id).ok_or_else(|| CliError::UnknownId(format!("unknown catalog entry `{id}`")))
}

fn solution(id: &str) -> Result<SolutionSpec> {
    let sols = build_solutions()?;
    let s = find_solution(&sols, id)
        .ok_or_else(|| CliError::UnknownId(format!("unknown solution `{id}`")))?;
    if s.evaluator.is_none() {
        return Err(CliError::Validation {
            message: format!("solution `{id}` is notes-only and has no evaluator"),
            report: None,
        });
    }
    Ok(s.clone())
}

fn grid(s: &SolutionSpec, n: usize) -> Result<Grid> {
    Ok(Grid::new(s.domain.0, s.domain.1, n)?)
}

pub fn cmd_analyze(
    equation: &str,
    params: &[String],
    ansatz: Option<&str>,
    mode: Mode,
) -> Result<Output> {
    let expr = parse(equation, params)?;
    let analysis = analyze(&expr, mode)?;
    let relations: Vec<Value> = analysis
        .relations
        .iter()
        .map(|ra| {
            let branches: Vec<Value> = ra
                .solution
                .iter()
                .flat_map(|s| &s.branches)
                .map(|b| {
                    json!({
                        "signs": b.signs.to_string(),
                        "kind": to_value(&b.kind),
                        "expression": b.expression,
                        "validity": b.validity,
                    })
                })
                .collect();
            json!({
                "relation": ra.relation.to_string(),
                "part": to_value(&ra.relation.part),
                "branches": branches,
                "joint": ra.solution.as_ref().and_then(|s| s.joint.clone()),
                "constraint": ra.constraint,
            })
        })
        .collect();
    let mut result = json!({
        "equation": expr.to_string(),
        "mode": mode.to_string(),
        "relations": relations,
    });
    let mut out_warnings = Vec::new();
    if let Some(src) = ansatz {
        let a = Ansatz::parse(src)?;
        let r = apply_ansatz(analysis.primary(), &a).normalize();
        result["ansatz"] = a.to_string().into();
        result["relationUnderAnsatz"] = r.to_string().into();
        match exponent_balance(&r, None, params) {
            Ok(b) => {
                result["widthExponent"] = b.width_exponent.render_with(params).into();
                result["exponentConditions"] = to_value(&b.equalities);
                result["satisfiable"] = b.satisfiable.into();
                result["scaling"] = b.description.into();
            }
            Err(e) => out_warnings.push(format!("no power-law exponent: {e}")),
        }
    }
    let mut out = Output::json(result);
    out.warnings = out_warnings;
    Ok(out)
}

pub fn cmd_balance(
    equation: &str,
    params: &[String],
    ansatz: Option<&str>,
    objective: Option<&str>,
    mode: Mode,
) -> Result<Output> {
    let expr = parse(equation, params)?;
    let analysis = analyze(&expr, mode)?;
    let a = ansatz.map(Ansatz::parse).transpose()?;
    let r = match &a {
        Some(a) => apply_ansatz(analysis.primary(), a).normalize(),
        None => analysis.primary().clone(),
    };
    let objective = objective
        .map(|o| Objective::parse(o, a.as_ref().and_then(|a| a.velocity_exponent())))
        .transpose()?;
    let b = exponent_balance(&r, objective.as_ref(), params)?;
    Ok(Output::json(json!({
        "relation": r.to_string(),
        "ansatz": a.map(|a| a.to_string()),
        "objective": objective.map(|o| o.to_string()),
        "widthExponent": b.width_exponent.render_with(params),
        "equalities": b.equalities,
        "satisfiable": b.satisfiable,
        "description": b.description,
    })))
}

pub fn cmd_verify(id: &str, grid_n: usize) -> Result<Output> {
    let s = solution(id)?;
    let cat = build_catalog();
    let entry = entry_for(&cat, &s.equation_id)?;
    let eq = parse(&entry.equation_src, &entry.params)?;
    let report = residual(&eq, &s, &grid(&s, grid_n)?)?;
    Ok(Output::json(json!({
        "solution": to_value(&s),
        "report": to_value(&report),
        "passed": report.passed(),
    })))
}

/// `lo:hi:count`
pub fn parse_range(s: &str) -> Result<(f64, f64, usize)> {
    let bad = || CliError::Parse(format!("bad amplitude range `{s}` (expected lo:hi:count)"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(bad());
    }
    Ok((lo, hi, n))
}

fn csv_float(x: Option<f64>) -> String {
    x.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

pub fn cmd_scan(id: &str, range: &str, grid_n: usize) -> Result<Output> {
    let (lo, hi, count) = parse_range(range)?;
    let fam =
        family(id).ok_or_else(|| CliError::UnknownId(format!("no amplitude family for `{id}`")))?;
    let cat = build_catalog();
    let probe = fam(lo);
    let entry = entry_for(&cat, &probe.equation_id)?;
    let predicted = entry.predicted_width_exponent(&probe.parameters);
    let amplitudes = log_spaced(lo, hi, count);
    let fit = fit_scaling(id, &*fam, &amplitudes, grid_n, predicted)?;

    let branches: Vec<_> = entry
        .analysis
        .relations
        .iter()
        .filter_map(|r| r.solution.as_ref())
        .flat_map(|s| &s.branches)
        .collect();
    let mut csv = String::from("A,W_measured,W_predicted,branch\n");
    let mut rows = Vec::new();
    for (i, &a) in amplitudes.iter().enumerate() {
        let spec = fam(a);
        let measured = measure_features(&spec, &grid(&spec, grid_n)?)?;
        debug_assert_eq!(measured.amplitude, fit.amplitudes[i]);
        let mut env = ScaleEnv::new(measured.amplitude, 1.0, spec.velocity);
        env.params = spec.parameters.clone();
        for b in &branches {
            let predicted = b.modulus_width(&env).map(|l| l * spec.width_factor);
            let label = b.signs.to_string().replace(',', " ");
            csv.push_str(&format!(
                "{},{},{},{}\n",
                csv_float(Some(measured.amplitude)),
                csv_float(Some(measured.width)),
                csv_float(predicted),
                label
            ));
            rows.push(json!({ "A": measured.amplitude, "W_measured": measured.width, "W_predicted": predicted, "branch": label }));
        }
    }
    Ok(Output::with_body(
        json!({ "fit": to_value(&fit), "rows": rows, "csv": csv }),
        csv,
    ))
}

pub fn cmd_spectrum(
    id: &str,
    jmin: i32,
    jmax: i32,
    k_stride: f64,
    grid_n: usize,
) -> Result<Output> {
    let s = solution(id)?;
    let g = grid(&s, grid_n)?;
    let values: Vec<_> = g
        .points()
        .map(|x| s.eval(x, 0.0).expect("evaluator checked"))
        .collect();
    let spec = scale_spectrum(&g, &values, (jmin, jmax), k_stride)?;
    let mut csv = String::from("j,energy\n");
    for (j, e) in (jmin..=jmax).zip(&spec.energies) {
        csv.push_str(&format!("{j},{e:.16e}\n"));
    }
    Ok(Output::with_body(
        json!({ "spectrum": to_value(&spec), "csv": csv }),
        csv,
    ))
}

pub fn cmd_catalog_list() -> Result<Output> {
    let cat = build_catalog();
    let rows: Vec<Value> = cat
        .iter()
        .map(|e| json!({ "id": e.id, "equation": e.equation_src, "matchFlag": to_value(&e.match_flag), "paperRef": e.paper_ref }))
        .collect();
    let width = cat.iter().map(|e| e.id.len()).max().unwrap_or(0);
    let mut text = String::new();
    for e in &cat {
        let flag = to_value(&e.match_flag);
        text.push_str(&format!(
            "{:width$}  {:12}  {}\n",
            e.id,
            flag.as_str().unwrap_or_default(),
            e.equation_src
        ));
    }
    Ok(Output::with_body(json!({ "entries": rows }), text))
}

pub fn cmd_catalog_show(id: &str) -> Result<Output> {
    let cat = build_catalog();
    Ok(Output::json(to_value(entry_for(&cat, id)?)))
}

pub fn cmd_report() -> Result<Output> {
    let cat = build_catalog();
    let md = markdown_report(&cat);
    let counts: BTreeMap<String, usize> = cat.iter().fold(BTreeMap::new(), |mut m, e| {
        *m.entry(
            to_value(&e.match_flag)
                .as_str()
                .unwrap_or_default()
                .to_string(),
        )
        .or_insert(0) += 1;
        m
    });
    Ok(Output::with_body(
        json!({ "entries": to_value(&cat), "counts": counts, "markdown": md }),
        md,
    ))
}
