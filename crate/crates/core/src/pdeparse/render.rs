use num_traits::Signed;

use crate::exprcore::{func_label, Expr, FactorKey, Field, Monomial, TimeDeriv};

fn powered(base: String, power: &crate::exprcore::ExponentExpr) -> String {
    if *power == 1 {
        base
    } else {
        format!("{base}^{}", power.render_atom())
    }
}

fn factor_strings(m: &Monomial, field: Field) -> Vec<String> {
    let u = field.name();
    m.factor_map()
        .iter()
        .map(|(key, power)| match key {
            FactorKey::Field(0) => powered(u.to_string(), power),
            FactorKey::Field(k) => powered(format!("{u}_{}", "x".repeat(*k as usize)), power),
            FactorKey::Func(name, r) => powered(format!("{}({u})", func_label(*name, *r)), power),
            FactorKey::Elementary(kind) => powered(format!("{}({u})", kind.name()), power),
            FactorKey::Modulus => powered(format!("|{u}|"), power),
        })
        .collect()
}

fn join_term(m: &Monomial, mut parts: Vec<String>) -> (bool, String) {
    let mut all = Vec::new();
    if let Some(c) = m.coeff.render_magnitude() {
        all.push(c);
    }
    all.append(&mut parts);
    if all.is_empty() {
        all.push("1".to_string());
    }
    (m.coeff.rational.is_negative(), all.join("*"))
}

/// One monomial as DSL text, sign included.
pub fn render_monomial(m: &Monomial, field: Field) -> String {
    let (neg, body) = join_term(m, factor_strings(m, field));
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn render_time(t: &TimeDeriv, field: Field) -> (bool, String) {
    let subs = format!(
        "{}{}",
        "x".repeat(t.x_order as usize),
        "t".repeat(t.t_order as usize)
    );
    let mut parts = factor_strings(&t.mono, field);
    // Bare-field time derivatives are the only kind the parser produces.
    if t.mono.is_bare_field() {
        parts = vec![format!("{}_{subs}", field.name())];
    } else {
        let inner = parts.join("*");
        parts = vec![format!("({inner})_{subs}")];
    }
    join_term(&t.mono, parts)
}

/// DSL text `… = 0` that re-parses to an equal expression.
pub fn render(e: &Expr) -> String {
    let mut terms: Vec<(bool, String)> = e
        .time_derivs
        .iter()
        .map(|t| render_time(t, e.field))
        .collect();
    terms.extend(
        e.monomials
            .iter()
            .map(|m| join_term(m, factor_strings(m, e.field))),
    );
    if terms.is_empty() {
        return "0 = 0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out.push_str(" = 0");
    out
}
