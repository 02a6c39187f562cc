use std::path::PathBuf;

use msplect::{emit, load, parse_expr, parse_workspace, print_expr, print_workspace, run, ConventionMode, DiagnosticKind, Format, Options, Pos, Status, Value};
use msplect_core::complex::Complex;
use msplect_core::random::{self, Shape};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run_src(src: &str, opts: Options) -> msplect::Report {
    let model = load(src).unwrap_or_else(|d| panic!("{d}"));
    run(&model, &opts).unwrap()
}

fn error_at(src: &str) -> (Pos, DiagnosticKind) {
    let d = load(src).expect_err("workspace should be rejected");
    (d.pos, d.kind)
}

#[test]
fn bundled_workspaces_pass() {
    for name in ["translation.msw", "g2_torus.msw", "r3_noether.msw", "rotations.msw", "so3_volume.msw"] {
        let report = run_src(&fixture(name), Options::default());
        let text = String::from_utf8(emit(&report, Format::Text)).unwrap();
        assert!(report.passed(), "{name}\n{text}");
        assert_eq!(report.exit_code(), 0);
    }
}

#[test]
fn strict_mode_ignores_annotations() {
    let report = run_src(
        &fixture("translation.msw"),
        Options {
            seed: None,
            mode: ConventionMode::Strict,
        },
    );
    assert!(!report.passed());
}

#[test]
fn corrupted_component_reports_first_nonzero_residual() {
    let src = fixture("translation.msw").replace("f[e1^e2] {plus} = q3*", "f[e1^e2] {plus} = 2*q3*");
    let report = run_src(&src, Options::default());
    assert!(!report.passed());
    assert_eq!(report.exit_code(), 1);
    let failing = report.tasks.iter().find(|t| t.status == Status::Fail).unwrap();
    let first = failing.first_failure().unwrap();
    assert!(!first.ok);
    assert_ne!(first.value, "0");
    let text = String::from_utf8(emit(&report, Format::Text)).unwrap();
    assert!(text.contains(&format!("first failure: {} = {}", first.label, first.value)), "{text}");
}

#[test]
fn json_lines_output_is_deterministic() {
    let src = fixture("g2_torus.msw");
    let a = emit(&run_src(&src, Options::default()), Format::JsonLines);
    let b = emit(&run_src(&src, Options::default()), Format::JsonLines);
    assert_eq!(a, b);
    for line in String::from_utf8(a).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.get("record").is_some());
    }
}

#[test]
fn seeded_identity_task_is_reproducible() {
    let src = "[chart]\ncoords = x, y, z\n\n[tasks]\nverify-identities degree=2 cases=5\n";
    let opts = Options {
        seed: Some(7),
        mode: ConventionMode::Paper,
    };
    let a = emit(&run_src(src, opts), Format::JsonLines);
    let b = emit(&run_src(src, opts), Format::JsonLines);
    assert_eq!(a, b);
    assert!(run_src(src, opts).passed());
}

#[test]
fn random_task_without_seed_is_an_error() {
    let src = "[chart]\ncoords = x, y, z\n\n[tasks]\nverify-identities\n";
    let model = load(src).unwrap();
    let err = run(&model, &Options::default()).unwrap_err();
    assert!(err.to_string().contains("line 5"), "{err}");
}

#[test]
fn empty_task_list_passes() {
    let report = run_src("[chart]\ncoords = x, y\n", Options::default());
    assert!(report.passed());
    assert_eq!(report.count(Status::Pass), 0);
    let report = run_src("", Options::default());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn syntax_error_position() {
    let src = "[chart]\ncoords = x, y\n[system]\nomega = d(x) +* d(y)\n";
    assert_eq!(error_at(src), (Pos::new(4, 15), DiagnosticKind::Syntax));
    assert_eq!(error_at("coords = x\n").1, DiagnosticKind::Syntax);
}

#[test]
fn unknown_identifier_position() {
    let src = "[chart]\ncoords = x, y\n[system]\nomega = d(x)^d(q)\n";
    assert_eq!(error_at(src), (Pos::new(4, 16), DiagnosticKind::UnknownIdentifier));
}

#[test]
fn degree_mismatch_position() {
    let src = "[chart]\ncoords = x, y, z\n[system]\nomega = d(x)^d(y) + z*d(x)\n";
    assert_eq!(error_at(src), (Pos::new(4, 19), DiagnosticKind::DegreeMismatch));
}

#[test]
fn duplicate_position() {
    assert_eq!(error_at("[chart]\ncoords = x, y, x\n"), (Pos::new(2, 16), DiagnosticKind::Duplicate));
    let src = "[chart]\ncoords = x, y\n[define]\nf[x] = d(x)\n";
    assert!(load(src).is_err());
}

#[test]
fn unknown_task_is_rejected_at_load() {
    let src = "[chart]\ncoords = x, y\n[tasks]\nfrobnicate\n";
    assert_eq!(error_at(src), (Pos::new(4, 1), DiagnosticKind::UnknownIdentifier));
}

#[test]
fn vanishing_wedge_warns_and_yields_zero() {
    let model = load("[chart]\ncoords = x, y\n[system]\nomega = d(x)^d(x)\n").unwrap();
    assert_eq!(model.warnings.len(), 1);
    assert_eq!(model.warnings[0].pos, Pos::new(4, 13));
    assert!(model.value("omega").unwrap().is_zero());
}

#[test]
fn unary_minus_binds_to_the_coefficient() {
    let model = load("[chart]\ncoords = x, y, z\n[system]\nH = -x*d(y)\n").unwrap();
    let h = model.value("H").unwrap();
    assert_eq!(h.degree(), 1);
    let expected = load("[chart]\ncoords = x, y, z\n[system]\nH = (-1)*(x*d(y))\n").unwrap();
    assert_eq!(h, expected.value("H").unwrap());
}

fn coords(dim: usize) -> String {
    (1..=dim).map(|i| format!("x{i}")).collect::<Vec<_>>().join(", ")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_forms_load_back(seed in any::<u64>(), dim in 2usize..=5, degree in 0usize..=3) {
        let degree = degree.min(dim);
        let form = random::form(&mut random::rng(seed), dim, degree, Shape::default());
        prop_assume!(!form.is_zero());
        let src = format!("[chart]\ncoords = {}\n[define]\na = {form}\n", coords(dim));
        let model = load(&src).map_err(|d| TestCaseError::fail(format!("{d}\n{src}")))?;
        prop_assert_eq!(model.value("a").unwrap(), &Value::Form(Complex::real(form)));
    }

    #[test]
    fn printed_fields_load_back(seed in any::<u64>(), dim in 2usize..=5, degree in 1usize..=3) {
        let degree = degree.min(dim);
        let field = random::multivec(&mut random::rng(seed), dim, degree, Shape::default());
        prop_assume!(!field.is_zero());
        let src = format!("[chart]\ncoords = {}\n[define]\nv = {field}\n", coords(dim));
        let model = load(&src).map_err(|d| TestCaseError::fail(format!("{d}\n{src}")))?;
        prop_assert_eq!(model.value("v").unwrap(), &Value::Vec(Complex::real(field)));
    }

    #[test]
    fn parse_print_parse_is_stable(seed in any::<u64>(), dim in 2usize..=5, degree in 0usize..=3) {
        let form = random::form(&mut random::rng(seed), dim, degree.min(dim), Shape::default());
        let expr = parse_expr(&form.to_string()).unwrap();
        let printed = print_expr(&expr);
        let reparsed = parse_expr(&printed).unwrap();
        prop_assert_eq!(&reparsed, &expr);
        prop_assert_eq!(print_expr(&reparsed), printed);
    }
}

#[test]
fn printing_bundled_workspaces_preserves_them() {
    for name in ["translation.msw", "g2_torus.msw", "r3_noether.msw", "rotations.msw", "so3_volume.msw"] {
        let ws = parse_workspace(&fixture(name)).unwrap();
        let printed = print_workspace(&ws);
        let reparsed = parse_workspace(&printed).unwrap();
        assert_eq!(reparsed.preamble, ws.preamble, "{name}");
        let shape = |w: &msplect::ast::Workspace| w.sections.iter().map(|s| (s.kind, s.items.clone())).collect::<Vec<_>>();
        assert_eq!(shape(&reparsed), shape(&ws), "{name}");
        assert_eq!(print_workspace(&reparsed), printed, "{name}");
    }
}
