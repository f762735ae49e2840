//! Executes the checks of a scenario against the verification library and
//! assembles the structured report. Each check is isolated: one failing or
//! erroring check does not abort the rest.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::corresp::{
    check_mck, check_pure_degree, ck_projectors, delta_h_decomposition, kunneth_projectors,
    Correspondence, ProjectorSet,
};
use crate::model::{GradedClass, ModelSpec, Space, VarietyModel};
use crate::motive::{signed_sym_square, verify_decomposition, GradedDims, MotiveExpr, Registry};
use crate::rat::{rat_int, rat_str, Rat};
use crate::report::{values, CheckReport, Report, Status};
use crate::scenario::{CheckSpec, Scenario};
use crate::taut::{matching_sum, Gen, TautExpr, TautRing};

type CheckResult = Result<(Status, BTreeMap<String, Value>), String>;

pub fn run(scenario: &Scenario) -> Result<Report, crate::scenario::ScenarioError> {
    let model = scenario.variety.model()?;
    let mut report = Report::new(
        scenario.variety.to_string(),
        scenario.checks.iter().map(|c| c.name()).collect(),
    );
    for check in &scenario.checks {
        let start = Instant::now();
        let (status, vals) = match run_check(check, &model) {
            Ok(done) => done,
            Err(msg) => (Status::Fail, values(vec![("error", json!(msg))])),
        };
        report.checks.push(CheckReport {
            name: check.name(),
            status,
            values: vals,
            millis: start.elapsed().as_millis() as u64,
        });
    }
    Ok(report)
}

fn run_check(check: &CheckSpec, model: &Arc<VarietyModel>) -> CheckResult {
    match check {
        CheckSpec::Projectors => projectors_check(model),
        CheckSpec::Mck => mck_check(model),
        CheckSpec::Relations => relations_check(model),
        CheckSpec::Injectivity { m } => injectivity_check(model, *m),
        CheckSpec::Yf => square_decomposition_check("Y", "F(-2) + Y + Y(-3)", true),
        CheckSpec::Zf => square_decomposition_check("Z", "F(-2) + Z + Z(-3)", false),
        CheckSpec::Andthis => surface_decomposition_check(),
        CheckSpec::MatchingSum { k, b } => matching_sum_check(*k, *b),
        CheckSpec::DeltaH => delta_h_check(model),
        CheckSpec::PureDegree => pure_degree_check(model),
        CheckSpec::Normalize { m, expr } => normalize_check(model, *m, expr),
    }
}

fn is_tate_odd(model: &Arc<VarietyModel>) -> bool {
    matches!(model.spec(), ModelSpec::TateOdd { .. })
}

fn skip(reason: &str) -> CheckResult {
    Ok((Status::Skipped, values(vec![("reason", json!(reason))])))
}

/// CK projectors for polarized models, the full Künneth set otherwise.
fn projector_set(model: &Arc<VarietyModel>) -> Result<ProjectorSet, String> {
    let r = if is_tate_odd(model) { ck_projectors(model) } else { kunneth_projectors(model) };
    r.map_err(|e| e.to_string())
}

fn projectors_check(model: &Arc<VarietyModel>) -> CheckResult {
    // construction already asserts idempotence, orthogonality, sum = Δ, and
    // the Künneth action on every basis class
    let ps = projector_set(model)?;
    Ok((
        Status::Pass,
        values(vec![
            ("weights", json!(ps.weights())),
            ("validated", json!(["idempotence", "orthogonality", "sum_is_diagonal", "kunneth_action"])),
        ]),
    ))
}

fn triples(list: &[(usize, usize, usize)]) -> Value {
    json!(list.iter().map(|&(i, j, k)| format!("({i},{j},{k})")).collect::<Vec<_>>())
}

fn mck_check(model: &Arc<VarietyModel>) -> CheckResult {
    let ps = projector_set(model)?;
    let out = check_mck(model, &ps).map_err(|e| e.to_string())?;
    let status = if out.pass() { Status::Pass } else { Status::Fail };
    Ok((
        status,
        values(vec![
            ("triples_checked", json!(out.triples_checked)),
            ("violations", triples(&out.violations)),
            ("nonzero_components", triples(&out.nonzero_components)),
            ("sum_reconstructs_small_diagonal", json!(out.sum_reconstructs_small_diagonal)),
        ]),
    ))
}

fn relations_check(model: &Arc<VarietyModel>) -> CheckResult {
    if !is_tate_odd(model) {
        return skip("relations need a polarized (tate-odd) model");
    }
    let ring = TautRing::bootstrap(model).map_err(|e| e.to_string())?;
    let t = ring.table().clone();
    // the relation identities, each as lhs − rhs with the bootstrapped
    // scalars, verified by direct evaluation in the cohomology model
    let one = || Rat::one();
    let identities: Vec<(&str, TautExpr)> = vec![
        (
            "o_squared_zero",
            TautExpr::new(1, vec![(one(), vec![Gen::O(1), Gen::O(1)])]).unwrap(),
        ),
        (
            "h_o_zero",
            TautExpr::new(1, vec![(one(), vec![Gen::H(1), Gen::O(1)])]).unwrap(),
        ),
        (
            "h_cubed_is_d_o",
            TautExpr::new(
                1,
                vec![(one(), vec![Gen::H(1); 3]), (-t.d.clone(), vec![Gen::O(1)])],
            )
            .unwrap(),
        ),
        (
            "tau_h_zero",
            TautExpr::new(2, vec![(one(), vec![Gen::tau(1, 2).unwrap(), Gen::H(1)])]).unwrap(),
        ),
        (
            "tau_o_zero",
            TautExpr::new(2, vec![(one(), vec![Gen::tau(1, 2).unwrap(), Gen::O(2)])]).unwrap(),
        ),
        (
            "tau_squared",
            TautExpr::new(
                2,
                vec![
                    (one(), vec![Gen::tau(1, 2).unwrap(); 2]),
                    (-t.c_sq.clone(), vec![Gen::O(1), Gen::O(2)]),
                ],
            )
            .unwrap(),
        ),
        (
            "tau_triple",
            TautExpr::new(
                3,
                vec![
                    (one(), vec![Gen::tau(1, 2).unwrap(), Gen::tau(1, 3).unwrap()]),
                    (-t.c_tri.clone(), vec![Gen::tau(2, 3).unwrap(), Gen::O(1)]),
                ],
            )
            .unwrap(),
        ),
    ];
    let mut identity_vals = BTreeMap::new();
    let mut all_hold = true;
    for (name, expr) in &identities {
        let power = Space::power(model.clone(), expr.m);
        let holds = ring
            .evaluate_expr(expr, &power)
            .map_err(|e| e.to_string())?
            .is_zero();
        all_hold &= holds;
        identity_vals.insert(name.to_string(), json!(holds));
    }
    let expected_abs = rat_int(t.b_odd as i64);
    let abs_ok = t.c_sq.abs() == expected_abs;
    let tri_ok = t.c_tri.abs() == Rat::one();
    let status = if all_hold && abs_ok && tri_ok { Status::Pass } else { Status::Fail };
    Ok((
        status,
        values(vec![
            ("d", json!(rat_str(&t.d))),
            ("c_sq", json!(rat_str(&t.c_sq))),
            ("c_tri", json!(rat_str(&t.c_tri))),
            ("c_sq_abs_expected", json!(rat_str(&expected_abs))),
            ("c_sq_abs_matches", json!(abs_ok)),
            // the bootstrapped sign is negative while the presentation is
            // usually quoted with +|c_sq|; surfaced, not hidden
            ("c_sq_sign_matches", json!(t.c_sq.is_positive())),
            ("c_tri_abs_matches", json!(tri_ok)),
            ("identities", Value::Object(identity_vals.into_iter().collect())),
        ]),
    ))
}

fn injectivity_check(model: &Arc<VarietyModel>, m: usize) -> CheckResult {
    if !is_tate_odd(model) {
        return skip("injectivity needs a polarized (tate-odd) model");
    }
    if m < 1 {
        return Err("injectivity needs m >= 1".into());
    }
    if (model.dim() as f64).powi(m as i32) > 1e7 {
        return Err(format!(
            "resource guard: ambient dimension {}^{m} exceeds the cap of 1e7",
            model.dim()
        ));
    }
    let ring = TautRing::bootstrap(model).map_err(|e| e.to_string())?;
    let out = ring.injectivity(m).map_err(|e| e.to_string())?;
    let mut rows = serde_json::Map::new();
    for row in &out.rows {
        rows.insert(
            format!("codim{}", row.codim),
            json!({"count": row.count, "rank": row.rank, "ambient": row.ambient_dim}),
        );
    }
    let status = if out.pass { Status::Pass } else { Status::Fail };
    Ok((status, values(vec![("m", json!(m)), ("rows", Value::Object(rows))])))
}

fn profile(dims: &GradedDims) -> Value {
    let mut m = serde_json::Map::new();
    for (deg, dim) in dims.degrees() {
        m.insert(format!("d{deg}"), json!(dim));
    }
    Value::Object(m)
}

/// Signed symmetric square of a registered threefold against its
/// surface-plus-twists decomposition; the Y variant also checks the middle
/// degree against the twisted degree-1 piece of the surface.
fn square_decomposition_check(base: &str, rhs_text: &str, with_middle_iso: bool) -> CheckResult {
    let reg = Registry::standard();
    let lhs = signed_sym_square(reg.resolve(base).map_err(|e| e.to_string())?);
    let rhs = MotiveExpr::parse(rhs_text).map_err(|e| e.to_string())?;
    let out = verify_decomposition(&lhs, &rhs, &reg).map_err(|e| e.to_string())?;
    let mut vals = values(vec![
        ("lhs", json!(format!("sym2({base})"))),
        ("rhs", json!(rhs_text)),
        ("lhs_total", json!(out.lhs_total)),
        ("rhs_total", json!(out.rhs_total)),
        ("profile", profile(&lhs)),
        ("mismatched_degrees", json!(out.mismatches)),
    ]);
    let mut pass = out.pass();
    if with_middle_iso {
        let iso = verify_decomposition(
            reg.resolve("h3Y").map_err(|e| e.to_string())?,
            &MotiveExpr::parse("h1F(-1)").unwrap(),
            &reg,
        )
        .map_err(|e| e.to_string())?;
        vals.insert("middle_iso_h3Y_eq_h1F_twist1".into(), json!(iso.pass()));
        pass &= iso.pass();
    }
    Ok((if pass { Status::Pass } else { Status::Fail }, vals))
}

/// The abelian surface against `1 + h1F + sym2h1F + h1F(-1) + 1(-2)`.
fn surface_decomposition_check() -> CheckResult {
    let reg = Registry::standard();
    let lhs = reg.resolve("F").map_err(|e| e.to_string())?.clone();
    let rhs_text = "1 + h1F + sym2h1F + h1F(-1) + 1(-2)";
    let rhs = MotiveExpr::parse(rhs_text).unwrap();
    let out = verify_decomposition(&lhs, &rhs, &reg).map_err(|e| e.to_string())?;
    let status = if out.pass() { Status::Pass } else { Status::Fail };
    Ok((
        status,
        values(vec![
            ("lhs", json!("F")),
            ("rhs", json!(rhs_text)),
            ("profile", profile(&lhs)),
            ("mismatched_degrees", json!(out.mismatches)),
        ]),
    ))
}

fn matching_sum_check(k: usize, b: usize) -> CheckResult {
    let out = matching_sum(k, b).map_err(|e| e.to_string())?;
    // the symmetrization occupies 2k odd slots, so it vanishes exactly when
    // 2k exceeds the odd rank b
    let expected_zero = 2 * k > b;
    let status = if out.is_zero == expected_zero { Status::Pass } else { Status::Fail };
    Ok((
        status,
        values(vec![
            ("k", json!(k)),
            ("b", json!(b)),
            ("matchings", json!(out.matchings)),
            ("multiplicity", json!(out.multiplicity)),
            ("nonzero_terms", json!(out.nonzero_terms)),
            ("verdict", json!(if out.is_zero { "zero" } else { "nonzero" })),
            ("expected", json!(if expected_zero { "zero" } else { "nonzero" })),
        ]),
    ))
}

fn delta_h_check(model: &Arc<VarietyModel>) -> CheckResult {
    let ModelSpec::TateOdd { d, .. } = model.spec().clone() else {
        return skip("delta-h needs a polarized (tate-odd) model");
    };
    let out = delta_h_decomposition(model).map_err(|e| e.to_string())?;
    let expected = Rat::one() / &d;
    let coeffs_ok = out.coefficients.iter().all(|a| *a == expected);
    let status = if coeffs_ok && out.odd_part_zero { Status::Pass } else { Status::Fail };
    let mut vals = BTreeMap::new();
    for (i, a) in out.coefficients.iter().enumerate() {
        vals.insert(format!("a{}", i + 1), json!(rat_str(a)));
    }
    vals.insert("odd_part_zero".into(), json!(out.odd_part_zero));
    vals.insert("anticanonical_sign".into(), json!(out.anticanonical_sign));
    vals.insert("expected_each".into(), json!(rat_str(&expected)));
    Ok((status, vals))
}

/// The canonical degree-(1,3) element of H*(F×X) given by matching the four
/// odd generators, checked pure of total degree 4; a planted impure term
/// must be detected.
fn pure_degree_check(model: &Arc<VarietyModel>) -> CheckResult {
    let target = match model.spec() {
        ModelSpec::TateOdd { n: 3, b: 4, .. } => model.clone(),
        _ => crate::model::varieties::y18(),
    };
    let f = crate::model::varieties::ab2();
    let space = Space::product(vec![f.clone(), target.clone()]);
    let mut p = GradedClass::zero(space.clone());
    for a in 1..=4usize {
        // e_a in degree 1 of F is basis index a; v_a of the target is the
        // a-th element after the h tower
        p.add_term(space.encode(&[a, 3 + a]), Rat::one());
    }
    let p = Correspondence::new(p).map_err(|e| e.to_string())?;
    let ps_f = kunneth_projectors(&f).map_err(|e| e.to_string())?;
    let ps_t = ck_projectors(&target).map_err(|e| e.to_string())?;
    let canonical = check_pure_degree(&p, &ps_f, &ps_t, 4).map_err(|e| e.to_string())?;
    // plant e₁e₂ ⊗ 1, Künneth type (2,0)
    let mut planted_class = p.class.clone();
    planted_class.add_term(space.encode(&[5, 0]), Rat::one());
    let planted = check_pure_degree(
        &Correspondence::new(planted_class).map_err(|e| e.to_string())?,
        &ps_f,
        &ps_t,
        4,
    )
    .map_err(|e| e.to_string())?;
    let detected = !planted.pass() && planted.impure.contains(&(2, 0));
    let status = if canonical.pass() && detected { Status::Pass } else { Status::Fail };
    let fmt_pairs = |v: &[(usize, usize)]| {
        json!(v.iter().map(|&(i, j)| format!("({i},{j})")).collect::<Vec<_>>())
    };
    Ok((
        status,
        values(vec![
            ("total", json!(4)),
            ("components", fmt_pairs(&canonical.components)),
            ("impure", fmt_pairs(&canonical.impure)),
            ("planted_impurity_detected", json!(detected)),
        ]),
    ))
}

fn normalize_check(model: &Arc<VarietyModel>, m: usize, expr_text: &str) -> CheckResult {
    if !is_tate_odd(model) {
        return skip("normalize needs a polarized (tate-odd) model");
    }
    let ast = crate::dsl::parse(expr_text).map_err(|e| e.to_string())?;
    let expr = crate::dsl::to_taut_expr(&ast, m).map_err(|e| e.to_string())?;
    let ring = TautRing::bootstrap(model).map_err(|e| e.to_string())?;
    let nf = ring.normalize(&expr).map_err(|e| e.to_string())?;
    let rendered = if nf.is_empty() {
        "0".to_string()
    } else {
        nf.iter()
            .map(|(c, mono)| {
                if c.is_one() {
                    mono.render()
                } else {
                    format!("{}*{}", rat_str(c), mono.render())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    // the normal form must evaluate to the same cohomology class
    let power = Space::power(model.clone(), m);
    let direct = ring.evaluate_expr(&expr, &power).map_err(|e| e.to_string())?;
    let via_nf = ring.evaluate_normal_form(&nf, &power).map_err(|e| e.to_string())?;
    let consistent = direct == via_nf;
    let status = if consistent { Status::Pass } else { Status::Fail };
    Ok((
        status,
        values(vec![
            ("input", json!(expr_text)),
            ("m", json!(m)),
            ("normal_form", json!(rendered)),
            ("terms", json!(nf.len())),
            ("evaluation_consistent", json!(consistent)),
        ]),
    ))
}
