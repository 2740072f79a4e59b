use osa_core::catalog::CatalogEntry;
use osa_core::osa::MatchFlag;

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn flag(f: MatchFlag) -> &'static str {
    match f {
        MatchFlag::Exact => "exact",
        MatchFlag::ScalingOnly => "scaling-only",
        MatchFlag::Mismatch => "mismatch",
    }
}

/// One row per catalog entry: published formula, engine result, match
/// flag and notes.
pub fn markdown_report(cat: &[CatalogEntry]) -> String {
    let mut out = String::from("# Published vs. engine scale relations\n\n");
    out.push_str("| id | equation | published | engine | match | notes |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for e in cat {
        let mut engine = e.compared_relation.clone();
        if let Some(w) = e.joint.as_ref().or(e.constraint.as_ref()) {
            engine = format!("{engine}; {w}");
        }
        if let Some(s) = &e.scaling {
            engine = format!("{engine}; under {}: L ∝ A^({})", s.ansatz, s.width_exponent);
            if !s.equalities.is_empty() {
                engine = format!("{engine} if {}", s.equalities.join(", "));
            }
        }
        let mut notes = e.notes.clone();
        for a in &e.also {
            notes.push(format!(
                "{}: {}{}",
                a.label,
                flag(a.match_flag),
                a.note
                    .as_ref()
                    .map(|n| format!(" ({n})"))
                    .unwrap_or_default()
            ));
        }
        out.push_str(&format!(
            "| {} | `{}` | {} ({}) | `{}` | {} | {} |\n",
            e.id,
            cell(&e.equation_src),
            cell(&e.paper_relation),
            cell(&e.paper_ref),
            cell(&engine),
            flag(e.match_flag),
            cell(&notes.join("; ")),
        ));
    }
    let count = |f: MatchFlag| cat.iter().filter(|e| e.match_flag == f).count();
    out.push_str(&format!(
        "\n{} entries: {} exact, {} scaling-only, {} mismatch.\n",
        cat.len(),
        count(MatchFlag::Exact),
        count(MatchFlag::ScalingOnly),
        count(MatchFlag::Mismatch)
    ));
    out
}
