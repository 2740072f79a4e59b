//! Registry of published equations and exact solutions, each checked
//! against the engine when the catalog is built.

mod entries;
mod solutions;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::osa::{
    analyze, apply_ansatz, compare, exponent_balance, parse_linear, parse_relation, Analysis,
    Ansatz, BranchKind, LinearForm, MatchFlag, Mode, ScaleRelation,
};
use crate::pdeparse::parse_equation;

pub use entries::{definitions, AlsoCheck, EntryDef};
pub use solutions::{
    build_solutions, burgers_kink, burgers_tanh, check_solution, family, find_solution, gp_dark,
    k22_compacton, kak, kdv_sech2, knn_compacton, mkdv_sech, nls3_soliton, pedestal, sech2_fwhm,
    sine_gordon_kink, FieldFn, KnownRelation, Provenance, SolutionKind, SolutionSpec,
    ValidationFailure, VALIDATION_POINTS,
};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchView {
    pub signs: String,
    pub kind: BranchKind,
    pub expression: String,
    pub validity: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingView {
    pub ansatz: String,
    pub width_exponent: String,
    pub equalities: Vec<String>,
    pub satisfiable: bool,
    pub description: String,
    #[serde(skip)]
    pub width_form: LinearForm,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlsoView {
    pub label: String,
    pub paper_relation: String,
    pub paper_transcription: String,
    pub match_flag: MatchFlag,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogEntry {
    pub id: String,
    pub equation_src: String,
    pub params: Vec<String>,
    pub mode: Mode,
    pub paper_relation: String,
    pub paper_ref: String,
    pub paper_transcription: String,
    pub ansatz: Option<String>,
    pub exponent_conditions: Vec<String>,
    pub engine_relations: Vec<String>,
    pub branches: Vec<BranchView>,
    pub joint: Option<String>,
    pub constraint: Option<String>,
    /// The engine relation in the form it was compared in.
    pub compared_relation: String,
    pub scaling: Option<ScalingView>,
    pub match_flag: MatchFlag,
    pub notes: Vec<String>,
    pub also: Vec<AlsoView>,
    #[serde(skip)]
    pub analysis: Analysis,
}

impl CatalogEntry {
    pub fn param_refs(&self) -> Vec<&str> {
        self.params.iter().map(String::as_str).collect()
    }

    /// `q` in `L ∝ A^q` under the entry's ansatz, with exponent parameters
    /// bound to `values`.
    pub fn predicted_width_exponent(&self, values: &BTreeMap<String, f64>) -> Option<f64> {
        self.scaling.as_ref()?.width_form.eval(values)
    }
}

fn comparable(
    rel: &ScaleRelation,
    ansatz: Option<&Ansatz>,
    under: bool,
    subst: &[(&str, &str)],
) -> ScaleRelation {
    let mut r = match (ansatz, under) {
        (Some(a), true) => apply_ansatz(rel, a),
        _ => rel.clone(),
    };
    for (name, with) in subst {
        let with = parse_linear(with).unwrap_or_else(|| panic!("bad exponent `{with}`"));
        r = r.substitute_exponent(name, &with);
    }
    r.normalize()
}

fn check(
    rel: &ScaleRelation,
    transcription: &str,
    ansatz: Option<&Ansatz>,
    under: bool,
    subst: &[(&str, &str)],
) -> (ScaleRelation, MatchFlag, Option<String>) {
    let cmp = comparable(rel, ansatz, under, subst);
    match parse_relation(transcription) {
        Ok(paper) => {
            let c = compare(&cmp, &paper, ansatz);
            (cmp, c.flag, c.note)
        }
        Err(e) => (
            cmp,
            MatchFlag::Mismatch,
            Some(format!("published formula not transcribable: {e}")),
        ),
    }
}

/// Build one entry. Panics if the stored equation or ansatz is invalid,
/// which would be a defect in the registry itself.
pub fn build_entry(def: &EntryDef) -> CatalogEntry {
    let expr = parse_equation(def.equation, def.params)
        .unwrap_or_else(|e| panic!("catalog equation `{}` does not parse: {e}", def.id));
    let analysis =
        analyze(&expr, def.mode).unwrap_or_else(|e| panic!("catalog equation `{}`: {e}", def.id));
    let ansatz = def
        .ansatz
        .map(|a| Ansatz::parse(a).unwrap_or_else(|e| panic!("{}: {e}", def.id)));
    let primary = analysis.primary();

    let (cmp, match_flag, note) = check(
        primary,
        def.transcription,
        ansatz.as_ref(),
        def.published_under_ansatz,
        def.exponent_subst,
    );
    let mut notes: Vec<String> = def.notes.iter().map(|s| s.to_string()).collect();
    notes.extend(note);

    let order: Vec<String> = if def.balance_order.is_empty() {
        def.params.iter()
    } else {
        def.balance_order.iter()
    }
    .map(|s| s.to_string())
    .collect();
    let scaling = ansatz
        .as_ref()
        .filter(|a| a.velocity_exponent().is_some())
        .and_then(|a| {
            let r = apply_ansatz(primary, a).normalize();
            let b = exponent_balance(&r, None, &order).ok()?;
            Some(ScalingView {
                ansatz: a.to_string(),
                width_exponent: b.width_exponent.render_with(&order),
                equalities: b.equalities,
                satisfiable: b.satisfiable,
                description: b.description,
                width_form: b.width_exponent,
            })
        });

    let also = def
        .also
        .iter()
        .map(|x| {
            let a = x
                .ansatz
                .map(|a| Ansatz::parse(a).unwrap_or_else(|e| panic!("{}: {e}", def.id)));
            let (_, flag, note) = check(
                primary,
                x.transcription,
                a.as_ref(),
                x.published_under_ansatz,
                def.exponent_subst,
            );
            AlsoView {
                label: x.label.into(),
                paper_relation: x.published.into(),
                paper_transcription: x.transcription.into(),
                match_flag: flag,
                note,
            }
        })
        .collect();

    let mut branches = Vec::new();
    let mut joint = None;
    let mut constraint = None;
    for ra in &analysis.relations {
        if let Some(sol) = &ra.solution {
            branches.extend(sol.branches.iter().map(|b| BranchView {
                signs: b.signs.to_string(),
                kind: b.kind,
                expression: b.expression.clone(),
                validity: b.validity.clone(),
            }));
            joint = joint.or_else(|| sol.joint.clone());
        }
        constraint = constraint.or_else(|| ra.constraint.clone());
    }

    CatalogEntry {
        id: def.id.into(),
        equation_src: def.equation.into(),
        params: def.params.iter().map(|s| s.to_string()).collect(),
        mode: def.mode,
        paper_relation: def.published.into(),
        paper_ref: def.citation.into(),
        paper_transcription: def.transcription.into(),
        ansatz: ansatz.as_ref().map(|a| a.to_string()),
        exponent_conditions: def
            .exponent_subst
            .iter()
            .map(|(n, w)| format!("{n} = {w}"))
            .collect(),
        engine_relations: analysis
            .relations
            .iter()
            .map(|r| r.relation.to_string())
            .collect(),
        branches,
        joint,
        constraint,
        compared_relation: cmp.to_string(),
        scaling,
        match_flag,
        notes,
        also,
        analysis,
    }
}

pub fn build_catalog() -> Vec<CatalogEntry> {
    definitions().iter().map(build_entry).collect()
}

pub fn find<'a>(catalog: &'a [CatalogEntry], id: &str) -> Option<&'a CatalogEntry> {
    catalog.iter().find(|e| e.id == id)
}

#[cfg(test)]
mod tests;
