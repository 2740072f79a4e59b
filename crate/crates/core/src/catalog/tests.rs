use super::*;
use crate::osa::MatchFlag;

const REQUIRED: [&str; 19] = [
    "kdv6",
    "mkdv",
    "k22",
    "knn",
    "knm",
    "k212",
    "burgers",
    "qlparabolic",
    "nlburgers",
    "sine_gordon",
    "nls3",
    "nlsn",
    "gp1d",
    "linear_wave",
    "diss_disp",
    "gkdv5",
    "fgh",
    "curvature_kdv",
    "schrod_length",
];

fn entry(id: &str) -> CatalogEntry {
    let def = definitions().into_iter().find(|d| d.id == id).unwrap();
    build_entry(&def)
}

#[test]
fn registry_covers_every_required_entry() {
    let cat = build_catalog();
    assert!(cat.len() >= 17);
    for id in REQUIRED {
        assert!(find(&cat, id).is_some(), "{id}");
    }
    let mut ids: Vec<&str> = cat.iter().map(|e| e.id.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), cat.len(), "duplicate ids");
}

#[test]
fn mismatches_and_scaling_only_carry_notes() {
    for e in build_catalog() {
        if e.match_flag != MatchFlag::Exact {
            assert!(
                !e.notes.is_empty(),
                "{} is {:?} without notes",
                e.id,
                e.match_flag
            );
        }
        assert!(e.paper_ref.contains('"'), "{} cites no quote", e.id);
    }
}

#[test]
fn golden_flags() {
    let flags = [
        ("kdv6", MatchFlag::Exact),
        ("k22", MatchFlag::Exact),
        ("burgers", MatchFlag::Exact),
        ("linear_wave", MatchFlag::Exact),
        ("fgh", MatchFlag::Exact),
        ("sine_gordon", MatchFlag::Exact),
        ("mkdv", MatchFlag::ScalingOnly),
        ("knn", MatchFlag::ScalingOnly),
        ("nls3", MatchFlag::ScalingOnly),
        ("diss_disp", MatchFlag::ScalingOnly),
        ("gkdv5", MatchFlag::ScalingOnly),
        ("nlsn", MatchFlag::Mismatch),
        ("curvature_kdv", MatchFlag::Mismatch),
        ("knm", MatchFlag::Mismatch),
    ];
    let cat = build_catalog();
    for (id, flag) in flags {
        assert_eq!(find(&cat, id).unwrap().match_flag, flag, "{id}");
    }
}

#[test]
fn discrepancies_are_explained() {
    let cat = build_catalog();
    let noted = |id: &str, needle: &str| {
        find(&cat, id)
            .unwrap()
            .notes
            .iter()
            .any(|n| n.contains(needle))
    };
    assert!(noted("knn", "n(n^2+1)"));
    assert!(noted("mkdv", "factor 6"));
    assert!(noted("curvature_kdv", "(A±V)"));
    assert!(noted("nls3", "coefficients differ"));
    assert!(noted("nlsn", "published"));
}

#[test]
fn kdv_branches_and_joint_form() {
    let e = entry("kdv6");
    assert_eq!(e.joint.as_deref(), Some("L = |V ± 6*A|^(-1/2)"));
    let exprs: Vec<&str> = e.branches.iter().map(|b| b.expression.as_str()).collect();
    assert_eq!(exprs, ["L = (V - 6*A)^(-1/2)", "L = (-V - 6*A)^(-1/2)"]);
    assert_eq!(e.scaling.as_ref().unwrap().width_exponent, "-1/2");
}

#[test]
fn k22_width_is_amplitude_independent() {
    let e = entry("k22");
    assert_eq!(e.joint.as_deref(), Some("L = (8*A/|V ± 2*A|)^(1/2)"));
    assert_eq!(e.predicted_width_exponent(&BTreeMap::new()), Some(0.0));
}

#[test]
fn linear_wave_constrains_only_velocity() {
    let e = entry("linear_wave");
    assert_eq!(e.constraint.as_deref(), Some("V^2 = c^2"));
    assert!(e.branches.is_empty());
}

#[test]
fn exponent_conditions_in_published_form() {
    let d = entry("diss_disp");
    let s = d.scaling.unwrap();
    assert_eq!(s.equalities, ["2k = m + n"]);
    assert_eq!(s.width_exponent, "-m + k");
    let g = entry("gkdv5").scaling.unwrap();
    assert_eq!(g.equalities, ["m = n + l", "m = p"]);
    assert_eq!(g.width_exponent, "0");
}

#[test]
fn predicted_exponents() {
    let cat = build_catalog();
    let q = |id: &str, vals: &[(&str, f64)]| {
        let v: BTreeMap<String, f64> = vals.iter().map(|(k, x)| (k.to_string(), *x)).collect();
        find(&cat, id).unwrap().predicted_width_exponent(&v)
    };
    assert_eq!(q("kdv6", &[]), Some(-0.5));
    assert_eq!(q("mkdv", &[]), Some(-1.0));
    assert_eq!(q("knn", &[("n", 3.0)]), Some(0.0));
    assert_eq!(q("diss_disp", &[("m", 2.0), ("k", 3.0)]), Some(1.0));
    assert_eq!(q("diss_disp", &[("m", 2.0)]), None);
    assert_eq!(q("linear_wave", &[]), None);
}

#[test]
fn fgh_reduced_form_also_matches() {
    let e = entry("fgh");
    assert_eq!(e.also.len(), 1);
    assert_eq!(e.also[0].match_flag, MatchFlag::Exact);
}

#[test]
fn catalog_serializes() {
    let json = serde_json::to_value(build_catalog()).unwrap();
    let first = &json.as_array().unwrap()[0];
    for key in [
        "id",
        "equationSrc",
        "paperRelation",
        "paperRef",
        "matchFlag",
        "engineRelations",
        "notes",
    ] {
        assert!(first.get(key).is_some(), "{key}");
    }
    assert!(first.get("analysis").is_none());
}

mod solutions {
    use super::super::solutions::*;

    #[test]
    fn provenance_is_documented() {
        for s in build_solutions().unwrap() {
            for r in &s.known_relations {
                match r.provenance {
                    Provenance::Published => {
                        assert!(r.source.contains('"'), "{}: {}", s.id, r.relation)
                    }
                    Provenance::Derived => assert!(r.source.contains("residual oracle")),
                }
            }
        }
    }

    #[test]
    fn compactons_vanish_outside_support_and_are_continuous() {
        for s in [
            k22_compacton(0.75),
            knn_compacton(3, 1.0),
            knn_compacton(4, 0.6),
        ] {
            let (lo, hi) = s.support.unwrap();
            for x in [lo - 1.0, lo - 1e-9, hi + 1e-9, hi + 3.0] {
                assert_eq!(s.eval(x, 0.0).unwrap().norm(), 0.0, "{} at {x}", s.id);
            }
            for e in [lo, hi] {
                let (a, b) = (
                    s.eval(e - 1e-12, 0.0).unwrap(),
                    s.eval(e + 1e-12, 0.0).unwrap(),
                );
                assert!((a - b).norm() < 1e-6, "{} jumps at {e}", s.id);
            }
        }
    }

    #[test]
    fn kdv_relations_hold() {
        let s = kdv_sech2(2.0);
        assert_eq!(s.velocity, 4.0);
        assert_eq!(s.width_param, 1.0);
        assert!(s.known_relations.iter().all(|r| r.holds));
    }

    #[test]
    fn k22_amplitude_is_four_thirds_velocity() {
        let s = k22_compacton(0.75);
        assert!((s.amplitude - 1.0).abs() < 1e-15);
        assert_eq!(s.width_param, 4.0);
    }

    #[test]
    fn burgers_constants_fixed_by_oracle() {
        let s = find_solution(&build_solutions().unwrap(), "burgers_kink")
            .unwrap()
            .clone();
        let b = (s.velocity * s.velocity + 2.0 * s.parameters["C"]).sqrt();
        assert!((s.parameters["gamma"].abs() - b / 2.0).abs() < 1e-12);
        assert!(s
            .known_relations
            .iter()
            .any(|r| r.provenance == Provenance::Derived));
        assert!(s
            .known_relations
            .iter()
            .any(|r| r.provenance == Provenance::Published && !r.holds));
    }

    #[test]
    fn notes_only_entries_have_no_evaluator() {
        let sols = build_solutions().unwrap();
        for id in ["compacton_trig", "kak_plus_compacton"] {
            let s = find_solution(&sols, id).unwrap();
            assert!(s.evaluator.is_none() && !s.notes.is_empty());
        }
    }
}
