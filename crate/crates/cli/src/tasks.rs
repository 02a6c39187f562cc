//! Task validation and execution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use msplect_core::comomentum::{build_exact, closure_defect, kernel_pairs, verify, verify_weak, ComomentumMap, ComomentumReport};
use msplect_core::g2::G2Data;
use msplect_core::identities::Identity;
use msplect_core::lie::FieldWedge;
use msplect_core::multisymplectic::{Conventions, Level, PlecticSystem, Sign};
use msplect_core::phase_space::{PhaseInputs, PhaseSpace};
use msplect_core::random::{self, Shape};
use msplect_core::{Form, MultiVec, Polynomial, WedgePower};
use thiserror::Error;

use crate::ast::{Name, TaskArg, TaskLine};
use crate::error::{Diagnostic, DiagnosticKind};
use crate::model::{MapDef, Model, Value};
use crate::printer::print_task;
use crate::report::{Entry, EntryKind, Report, Status, TaskReport};

pub const TASK_NAMES: [&str; 8] = [
    "verify-identities",
    "hamiltonian-field",
    "classify",
    "comomentum-verify",
    "comomentum-build",
    "closure-defect",
    "phase-space",
    "g2-example",
];

const IDENTITY_SHAPE: Shape = Shape {
    max_coeff_degree: 2,
    max_terms: 2,
    max_comps: 2,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    VerifyIdentities { dim: usize, degree: usize, cases: usize },
    HamiltonianField { name: String, expect: Option<String> },
    Classify { name: String, conserved: Option<Level>, symmetry: Option<Level> },
    ComomentumVerify { map: String, weak: bool },
    ComomentumBuild { theta: String, compare: Option<String> },
    ClosureDefect { map: String },
    PhaseSpace { k: usize, alpha: Option<String>, beta: Option<String> },
    G2Example { map: Option<String> },
}

/// How file conventions are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConventionMode {
    /// Use the file's signs and convert each annotated map value to the formal convention.
    #[default]
    Paper,
    /// Use the formal convention everywhere and take map values as written.
    Strict,
}

impl ConventionMode {
    pub fn name(self) -> &'static str {
        match self {
            ConventionMode::Paper => "paper",
            ConventionMode::Strict => "strict",
        }
    }
}

impl FromStr for ConventionMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(ConventionMode::Paper),
            "strict" => Ok(ConventionMode::Strict),
            _ => Err(format!("unknown convention mode `{s}`; expected paper or strict")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub mode: ConventionMode,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("line {line}: task `{task}` draws random cases and needs --seed")]
    MissingSeed { line: usize, task: String },
}

fn parse_level(n: &Name) -> Result<Level, Diagnostic> {
    [Level::None, Level::Local, Level::Global, Level::Strict]
        .into_iter()
        .find(|l| l.name() == n.text)
        .ok_or_else(|| Diagnostic::new(n.pos, DiagnosticKind::Invalid, "expected none, local, global or strict"))
}

fn parse_count(n: &Name, lo: usize, hi: usize) -> Result<usize, Diagnostic> {
    n.text
        .parse::<usize>()
        .ok()
        .filter(|v| (lo..=hi).contains(v))
        .ok_or_else(|| Diagnostic::new(n.pos, DiagnosticKind::Invalid, format!("expected an integer in {lo}..={hi}")))
}

struct Args<'a> {
    line: &'a TaskLine,
    positional: Vec<&'a Name>,
    keywords: BTreeMap<&'a str, &'a Name>,
}

impl<'a> Args<'a> {
    fn new(line: &'a TaskLine, max_positional: usize, keys: &[&str]) -> Result<Self, Diagnostic> {
        let mut positional = Vec::new();
        let mut keywords = BTreeMap::new();
        for a in &line.args {
            match a {
                TaskArg::Positional(v) => {
                    if positional.len() == max_positional {
                        return Err(Diagnostic::new(v.pos, DiagnosticKind::Invalid, format!("too many arguments for `{}`", line.name.text)));
                    }
                    positional.push(v);
                }
                TaskArg::Keyword(k, v) => {
                    if !keys.contains(&k.text.as_str()) {
                        let allowed = if keys.is_empty() { "none".to_string() } else { keys.join(", ") };
                        return Err(Diagnostic::new(
                            k.pos,
                            DiagnosticKind::Invalid,
                            format!("unknown argument `{}` for `{}`; allowed: {allowed}", k.text, line.name.text),
                        ));
                    }
                    if keywords.insert(k.text.as_str(), v).is_some() {
                        return Err(Diagnostic::new(k.pos, DiagnosticKind::Duplicate, format!("`{}` is given twice", k.text)));
                    }
                }
            }
        }
        Ok(Args { line, positional, keywords })
    }

    fn required(&self, i: usize, what: &str) -> Result<&'a Name, Diagnostic> {
        self.positional.get(i).copied().ok_or_else(|| {
            Diagnostic::new(self.line.name.pos, DiagnosticKind::Syntax, format!("`{}` needs {what}", self.line.name.text))
        })
    }
}

fn need(ok: bool, line: &TaskLine, what: &str) -> Result<(), Diagnostic> {
    if ok {
        Ok(())
    } else {
        Err(Diagnostic::new(line.name.pos, DiagnosticKind::Invalid, format!("`{}` needs {what}", line.name.text)))
    }
}

fn value_name(m: &Model, n: &Name) -> Result<String, Diagnostic> {
    match m.value(&n.text) {
        Some(_) => Ok(n.text.clone()),
        None if m.map(&n.text).is_some() => Err(Diagnostic::new(n.pos, DiagnosticKind::Invalid, format!("`{}` is a map, not a form", n.text))),
        None => Err(Diagnostic::new(n.pos, DiagnosticKind::UnknownIdentifier, format!("`{}` is not defined", n.text))),
    }
}

fn form_name(m: &Model, n: &Name) -> Result<String, Diagnostic> {
    let name = value_name(m, n)?;
    match m.value(&name) {
        Some(Value::Form(f)) if f.im.is_zero() => Ok(name),
        Some(v) => Err(Diagnostic::new(n.pos, DiagnosticKind::DegreeMismatch, format!("`{name}` must be a real form, found {}", v.describe()))),
        None => unreachable!("checked by value_name"),
    }
}

fn map_name(m: &Model, n: &Name) -> Result<String, Diagnostic> {
    match m.map(&n.text) {
        Some(_) => Ok(n.text.clone()),
        None => Err(Diagnostic::new(n.pos, DiagnosticKind::UnknownIdentifier, format!("no map `{}` is defined", n.text))),
    }
}

impl Task {
    /// Validate a task line against the resolved workspace.
    pub fn from_line(line: &TaskLine, m: &Model) -> Result<Task, Diagnostic> {
        let has_omega = m.omega.is_some();
        let has_action = m.action.is_some();
        let task = match line.name.text.as_str() {
            "verify-identities" => {
                let a = Args::new(line, 0, &["dim", "degree", "cases"])?;
                let default_dim = m.dim().filter(|d| (2..=6).contains(d)).unwrap_or(3);
                Task::VerifyIdentities {
                    dim: a.keywords.get("dim").map(|n| parse_count(n, 2, 6)).transpose()?.unwrap_or(default_dim),
                    degree: a.keywords.get("degree").map(|n| parse_count(n, 1, 4)).transpose()?.unwrap_or(2),
                    cases: a.keywords.get("cases").map(|n| parse_count(n, 1, 10_000)).transpose()?.unwrap_or(20),
                }
            }
            "hamiltonian-field" => {
                need(has_omega, line, "omega in [system]")?;
                let a = Args::new(line, 1, &["expect"])?;
                let name = value_name(m, a.required(0, "a form or field name")?)?;
                let expect = a.keywords.get("expect").map(|n| value_name(m, n)).transpose()?;
                Task::HamiltonianField { name, expect }
            }
            "classify" => {
                need(has_omega && m.hamiltonian.is_some(), line, "omega and H in [system]")?;
                let a = Args::new(line, 1, &["conserved", "symmetry"])?;
                Task::Classify {
                    name: form_name(m, a.required(0, "a form name")?)?,
                    conserved: a.keywords.get("conserved").map(|n| parse_level(n)).transpose()?,
                    symmetry: a.keywords.get("symmetry").map(|n| parse_level(n)).transpose()?,
                }
            }
            "comomentum-verify" => {
                need(has_omega && has_action, line, "omega and an [action]")?;
                let a = Args::new(line, 2, &[])?;
                let map = map_name(m, a.required(0, "a map name")?)?;
                let weak = match a.positional.get(1) {
                    None => false,
                    Some(n) if n.text == "weak" => true,
                    Some(n) => return Err(Diagnostic::new(n.pos, DiagnosticKind::Invalid, "expected `weak`")),
                };
                Task::ComomentumVerify { map, weak }
            }
            "comomentum-build" => {
                need(has_omega && has_action, line, "omega and an [action]")?;
                let a = Args::new(line, 1, &["compare"])?;
                Task::ComomentumBuild {
                    theta: form_name(m, a.required(0, "a primitive name")?)?,
                    compare: a.keywords.get("compare").map(|n| map_name(m, n)).transpose()?,
                }
            }
            "closure-defect" => {
                need(has_omega && has_action, line, "omega and an [action]")?;
                let a = Args::new(line, 1, &[])?;
                Task::ClosureDefect {
                    map: map_name(m, a.required(0, "a map name")?)?,
                }
            }
            "phase-space" => {
                need(m.chart.is_some(), line, "a [chart] for the base")?;
                let a = Args::new(line, 0, &["k", "alpha", "beta"])?;
                let k = a.keywords.get("k").ok_or_else(|| Diagnostic::new(line.name.pos, DiagnosticKind::Syntax, "`phase-space` needs k=K"))?;
                Task::PhaseSpace {
                    k: parse_count(k, 1, 4)?,
                    alpha: a.keywords.get("alpha").map(|n| form_name(m, n)).transpose()?,
                    beta: a.keywords.get("beta").map(|n| form_name(m, n)).transpose()?,
                }
            }
            "g2-example" => {
                need(has_omega, line, "omega in [system]")?;
                let a = Args::new(line, 0, &["map"])?;
                let map = a.keywords.get("map").map(|n| map_name(m, n)).transpose()?;
                if map.is_some() {
                    need(has_action, line, "an [action] when a map is given")?;
                }
                Task::G2Example { map }
            }
            other => {
                return Err(Diagnostic::new(
                    line.name.pos,
                    DiagnosticKind::UnknownIdentifier,
                    format!("unknown task `{other}`; expected one of {}", TASK_NAMES.join(", ")),
                ))
            }
        };
        Ok(task)
    }

    pub fn needs_seed(&self) -> bool {
        matches!(self, Task::VerifyIdentities { .. })
    }
}

struct TaskError(String);

impl From<msplect_core::Error> for TaskError {
    fn from(e: msplect_core::Error) -> Self {
        TaskError(e.to_string())
    }
}

impl fmt::Display for TaskError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type TaskResult = Result<(), TaskError>;

struct Ctx<'a> {
    model: &'a Model,
    opts: Options,
    conv: Conventions,
    names: Vec<String>,
    entries: Vec<Entry>,
}

impl<'a> Ctx<'a> {
    fn push(&mut self, label: String, kind: EntryKind, ok: bool, value: String) {
        self.entries.push(Entry { label, kind, ok, value });
    }

    fn value(&mut self, label: impl Into<String>, value: String) {
        self.push(label.into(), EntryKind::Value, true, value);
    }

    fn check(&mut self, label: impl Into<String>, ok: bool, value: String) {
        self.push(label.into(), EntryKind::Check, ok, value);
    }

    fn form(&mut self, label: impl Into<String>, f: &Form) {
        let v = f.fmt_with(&self.names);
        self.push(label.into(), EntryKind::Residual, f.is_zero(), v);
    }

    fn field(&mut self, label: impl Into<String>, x: &MultiVec) {
        let v = x.fmt_with(&self.names);
        self.push(label.into(), EntryKind::Residual, x.is_zero(), v);
    }

    fn fmt_form(&self, f: &Form) -> String {
        f.fmt_with(&self.names)
    }

    fn fmt_field(&self, x: &MultiVec) -> String {
        x.fmt_with(&self.names)
    }

    fn real_form(&self, name: &str) -> Result<Form, TaskError> {
        match self.model.value(name) {
            Some(Value::Form(f)) if f.im.is_zero() => Ok(f.re.clone()),
            _ => Err(TaskError(format!("`{name}` is not a real form"))),
        }
    }

    fn system(&self) -> Result<PlecticSystem, TaskError> {
        let m = self.model;
        let chart = m.chart.clone().expect("validated");
        let omega = m.omega.clone().expect("validated");
        let sys = PlecticSystem::with_conventions(chart, omega, self.conv)?;
        Ok(match &m.hamiltonian {
            Some(h) => sys.with_hamiltonian(h.clone())?,
            None => sys,
        })
    }

    fn n(&self) -> usize {
        self.model.omega.as_ref().map_or(0, |o| o.degree().saturating_sub(1))
    }

    /// The map in the formal convention.
    fn formal_map(&self, def: &MapDef, weak: bool) -> Result<ComomentumMap, TaskError> {
        let action = self.model.action.clone().expect("validated");
        let mut map = ComomentumMap::new(action, self.n(), weak);
        for c in &def.components {
            let value = match self.opts.mode {
                ConventionMode::Paper => {
                    let s = c.sign.unwrap_or(self.model.conventions.comomentum);
                    c.value.clone().with_sign(-s.value())
                }
                ConventionMode::Strict => c.value.clone(),
            };
            map.set(c.p.clone(), value)?;
        }
        Ok(map)
    }

    fn label(&self, map: &str, p: &WedgePower) -> String {
        format!("{map}{}({})", p.degree(), self.model.fmt_wedge(p))
    }

    fn residuals(&mut self, map: &str, report: &ComomentumReport) {
        for e in &report.entries {
            let label = format!("d {} residual", self.label(map, &e.p));
            self.form(label, &e.residual);
        }
    }
}

fn conventions_for(model: &Model, mode: ConventionMode) -> (Conventions, String) {
    match mode {
        ConventionMode::Paper => {
            let c = Conventions {
                hamiltonian: model.conventions.hamiltonian,
                comomentum: Sign::Minus,
            };
            let text = format!(
                "paper mode: hamiltonian {}, comomentum minus; map values converted from their annotations (file default {})",
                c.hamiltonian.name(),
                model.conventions.comomentum.name()
            );
            (c, text)
        }
        ConventionMode::Strict => (
            Conventions::default(),
            "strict mode: hamiltonian minus, comomentum minus; file signs and annotations ignored".to_string(),
        ),
    }
}

/// Run every task of a resolved workspace, in file order.
pub fn run(model: &Model, opts: &Options) -> Result<Report, RunError> {
    if opts.seed.is_none() {
        if let Some((line, _)) = model.tasks.iter().find(|(_, t)| t.needs_seed()) {
            return Err(RunError::MissingSeed {
                line: line.name.pos.line,
                task: line.name.text.clone(),
            });
        }
    }
    let (conv, conventions) = conventions_for(model, opts.mode);
    let tasks = model
        .tasks
        .iter()
        .map(|(line, task)| {
            let mut ctx = Ctx {
                model,
                opts: *opts,
                conv,
                names: model.coordinate_names().to_vec(),
                entries: Vec::new(),
            };
            let result = run_task(&mut ctx, task);
            let failed = ctx.entries.iter().any(|e| !e.ok);
            let (status, error) = match result {
                Err(e) => (Status::Error, Some(e.0)),
                Ok(()) if failed => (Status::Fail, None),
                Ok(()) => (Status::Pass, None),
            };
            TaskReport {
                task: print_task(line),
                line: line.name.pos.line,
                status,
                conventions: conventions.clone(),
                entries: ctx.entries,
                error,
            }
        })
        .collect();
    Ok(Report {
        seed: opts.seed,
        convention_mode: opts.mode.name().to_string(),
        tasks,
    })
}

/// The randomized identity suite on its own, as used by `check-identities`.
pub fn identity_report(dim: usize, degree: usize, cases: usize, seed: u64) -> Report {
    let line = format!("verify-identities dim={dim} degree={degree} cases={cases}");
    let mut ctx = Ctx {
        model: &EMPTY,
        opts: Options {
            seed: Some(seed),
            mode: ConventionMode::Paper,
        },
        conv: Conventions::default(),
        names: Vec::new(),
        entries: Vec::new(),
    };
    verify_identities(&mut ctx, dim, degree, cases);
    let status = if ctx.entries.iter().all(|e| e.ok) { Status::Pass } else { Status::Fail };
    Report {
        seed: Some(seed),
        convention_mode: "paper".into(),
        tasks: vec![TaskReport {
            task: line,
            line: 0,
            status,
            conventions: "not applicable".into(),
            entries: ctx.entries,
            error: None,
        }],
    }
}

static EMPTY: std::sync::LazyLock<Model> = std::sync::LazyLock::new(|| crate::model::load("").expect("empty workspace"));

fn run_task(ctx: &mut Ctx, task: &Task) -> TaskResult {
    match task {
        Task::VerifyIdentities { dim, degree, cases } => {
            verify_identities(ctx, *dim, *degree, *cases);
            Ok(())
        }
        Task::HamiltonianField { name, expect } => hamiltonian_field(ctx, name, expect.as_deref()),
        Task::Classify { name, conserved, symmetry } => classify(ctx, name, *conserved, *symmetry),
        Task::ComomentumVerify { map, weak } => comomentum_verify(ctx, map, *weak),
        Task::ComomentumBuild { theta, compare } => comomentum_build(ctx, theta, compare.as_deref()),
        Task::ClosureDefect { map } => closure(ctx, map),
        Task::PhaseSpace { k, alpha, beta } => phase_space(ctx, *k, alpha.as_deref(), beta.as_deref()),
        Task::G2Example { map } => g2_example(ctx, map.as_deref()),
    }
}

fn verify_identities(ctx: &mut Ctx, dim: usize, degree: usize, cases: usize) {
    let mut r = random::rng(ctx.opts.seed.expect("seed checked before running"));
    for id in Identity::ALL {
        let mut failure = None;
        let mut failures = 0;
        for _ in 0..cases {
            let res = id.random_case(&mut r, dim, degree, IDENTITY_SHAPE);
            if !res.is_zero() {
                failures += 1;
                failure.get_or_insert_with(|| res.to_string());
            }
        }
        let value = match failure {
            None => "0".to_string(),
            Some(f) => format!("{failures} nonzero, first {f}"),
        };
        ctx.push(format!("{} ({cases} cases)", id.name()), EntryKind::Residual, failures == 0, value);
    }
}

fn hamiltonian_field(ctx: &mut Ctx, name: &str, expect: Option<&str>) -> TaskResult {
    let sys = ctx.system()?;
    let expected = expect.and_then(|e| ctx.model.value(e).cloned());
    match ctx.model.value(name) {
        Some(Value::Form(f)) if f.im.is_zero() => {
            let alpha = &f.re;
            match sys.hamiltonian_field(alpha) {
                Ok(x) => {
                    ctx.check("hamiltonian", true, format!("X = {}", ctx.fmt_field(&x)));
                    ctx.form("pair residual", &sys.pair_residual(alpha, &x));
                }
                Err(e) => ctx.check("hamiltonian", false, e.to_string()),
            }
            match expected {
                Some(Value::Vec(v)) if v.im.is_zero() => {
                    let label = format!("pair residual with {}", expect.unwrap_or_default());
                    ctx.form(label, &sys.pair_residual(alpha, &v.re));
                }
                Some(_) => return Err(TaskError("`expect` must name a real vector field".into())),
                None => {}
            }
        }
        Some(Value::Vec(v)) if v.im.is_zero() => {
            let x = &v.re;
            let h = sys.hamiltonian_form(x)?;
            ctx.value("hamiltonian form", ctx.fmt_form(&h));
            ctx.form("pair residual", &sys.pair_residual(&h, x));
            match expected {
                Some(Value::Form(f)) if f.im.is_zero() => {
                    let label = format!("pair residual with {}", expect.unwrap_or_default());
                    ctx.form(label, &sys.pair_residual(&f.re, x));
                }
                Some(_) => return Err(TaskError("`expect` must name a real form".into())),
                None => {}
            }
        }
        _ => return Err(TaskError(format!("`{name}` must be real"))),
    }
    Ok(())
}

fn classify(ctx: &mut Ctx, name: &str, conserved: Option<Level>, symmetry: Option<Level>) -> TaskResult {
    let sys = ctx.system()?;
    let alpha = ctx.real_form(name)?;
    let pair = sys.pair(&alpha)?;
    ctx.value(format!("X_{name}"), ctx.fmt_field(&pair.field));
    let rep = sys.noether(&pair)?;
    let c = &rep.conserved;
    let s = &rep.symmetry;
    ctx.value("conserved", format!("{}: L_(X_H) {name} = {}", c.level.name(), ctx.fmt_form(&c.derivative)));
    ctx.value("symmetry", format!("{}: L_(X_{name}) H = {}", s.level.name(), ctx.fmt_form(&s.derivative)));
    ctx.form("noether residual", &rep.residual);
    ctx.check("levels transfer", rep.transfer_ok, format!("conserved {}, symmetry {}", c.level.name(), s.level.name()));
    for (label, want, got) in [("conserved level", conserved, c.level), ("symmetry level", symmetry, s.level)] {
        if let Some(w) = want {
            ctx.check(label, w == got, format!("{} (expected {})", got.name(), w.name()));
        }
    }
    Ok(())
}

fn comomentum_verify(ctx: &mut Ctx, name: &str, weak: bool) -> TaskResult {
    let def = ctx.model.map(name).expect("validated");
    let sys = ctx.system()?;
    let map = ctx.formal_map(def, weak)?;
    for k in 1..=map.n() {
        for (p, f) in map.components(k) {
            let label = format!("{} value", ctx.label(name, p));
            ctx.value(label, ctx.fmt_form(f));
        }
    }
    let report = if weak { verify_weak(&map, &sys)? } else { verify(&map, &sys)? };
    ctx.residuals(name, &report);
    Ok(())
}

fn comomentum_build(ctx: &mut Ctx, theta: &str, compare: Option<&str>) -> TaskResult {
    let sys = ctx.system()?;
    let theta_form = ctx.real_form(theta)?;
    let action = ctx.model.action.clone().expect("validated");
    let built = build_exact(&sys, &theta_form, &action)?;
    for k in 1..=built.n() {
        for (p, f) in built.components(k) {
            let label = format!("{} value", ctx.label("f", p));
            ctx.value(label, ctx.fmt_form(f));
        }
    }
    let report = verify_weak(&built, &sys)?;
    ctx.residuals("f", &report);
    if let Some(other) = compare {
        let given = ctx.formal_map(ctx.model.map(other).expect("validated"), true)?;
        for k in 1..=built.n() {
            for (p, f) in built.components(k) {
                let diff = f - &given.eval(p)?;
                let label = format!("{} - {}", ctx.label("f", p), ctx.label(other, p));
                ctx.form(label, &diff);
            }
        }
    }
    Ok(())
}

fn closure(ctx: &mut Ctx, name: &str) -> TaskResult {
    let sys = ctx.system()?;
    let map = ctx.formal_map(ctx.model.map(name).expect("validated"), true)?;
    closure_entries(ctx, &map, &sys)
}

fn closure_entries(ctx: &mut Ctx, map: &ComomentumMap, sys: &PlecticSystem) -> TaskResult {
    for (p, q) in kernel_pairs(map) {
        let d = closure_defect(map, sys, &p, &q)?;
        let pair = format!("{}, {}", ctx.model.fmt_wedge(&p), ctx.model.fmt_wedge(&q));
        ctx.check(format!("defect closed ({pair})"), d.closed, ctx.fmt_form(&d.defect));
        ctx.form(format!("defect field ({pair})"), &d.field_residual);
    }
    Ok(())
}

fn phase_space(ctx: &mut Ctx, k: usize, alpha: Option<&str>, beta: Option<&str>) -> TaskResult {
    let model = ctx.model;
    let base = model.chart.clone().expect("validated");
    let n = base.dim();
    let base_names = base.names().to_vec();
    let space = PhaseSpace::build(base, k)?;
    ctx.names = space.total_chart().names().to_vec();
    ctx.form("d(theta) + omega", &(&space.theta().d() + space.omega()));
    let sys = space.system(ctx.conv)?;

    let mut inputs: Vec<(String, FieldWedge)> = Vec::new();
    match &model.action {
        Some(action) => {
            let lifted = space.lift_action(action)?;
            let map = build_exact(&sys, space.theta(), &lifted)?;
            for l in 1..=map.n() {
                for (p, f) in map.components(l) {
                    let label = format!("{} value", ctx.label("f", p));
                    ctx.value(label, ctx.fmt_form(f));
                }
            }
            let report = verify_weak(&map, &sys)?;
            ctx.residuals("f", &report);
            closure_entries(ctx, &map, &sys)?;
            let g = action.algebra();
            for l in 1..=k.min(g.dim()) {
                for p in g.lie_kernel(l) {
                    inputs.push((model.fmt_wedge(&p), action.factors(&p)));
                }
            }
        }
        None => {
            for l in 1..=k.min(n) {
                let fields: Vec<MultiVec> = (0..l).map(|i| MultiVec::partial(n, i)).collect();
                let label = (0..l).map(|i| format!("@{}", base_names[i])).collect::<Vec<_>>().join("^");
                inputs.push((label, FieldWedge::single(fields)));
            }
        }
    }

    let pick = |name: Option<&str>, default: usize| -> Result<Form, TaskError> {
        match name {
            Some(s) => ctx.real_form(s),
            None => Ok(Form::scalar(n, Polynomial::var(default.min(n - 1)))),
        }
    };
    let (a, b) = (pick(alpha, 0)?, pick(beta, 1)?);
    for (l1, y1) in &inputs {
        for (l2, y2) in &inputs {
            let rep = space.verify_brackets(
                &PhaseInputs {
                    y1: y1.clone(),
                    y2: y2.clone(),
                    alpha: a.clone(),
                    beta: b.clone(),
                },
                ctx.conv,
            )?;
            let tag = format!("({l1}, {l2})");
            ctx.form(format!("momentum routes {tag}"), &rep.momentum_routes);
            for (i, f) in rep.momentum_field.iter().enumerate() {
                ctx.form(format!("momentum field {} {tag}", i + 1), f);
            }
            if let Some(f) = &rep.momenta {
                ctx.form(format!("momenta bracket {tag}"), f);
            }
            ctx.form(format!("positions bracket {tag}"), &rep.positions);
            ctx.check(format!("positions vertical {tag}"), rep.positions_vertical, rep.positions_vertical.to_string());
            if let Some(f) = &rep.mixed {
                ctx.form(format!("mixed bracket {tag}"), f);
            }
        }
    }
    Ok(())
}

fn g2_example(ctx: &mut Ctx, map: Option<&str>) -> TaskResult {
    let model = ctx.model;
    let chart = model.chart.clone().expect("validated");
    let phi = model.omega.clone().expect("validated");
    let g2 = G2Data::new(chart, phi)?;
    let pairs = g2.metric_identity();
    let bad = pairs.iter().find(|(_, r)| !r.is_zero());
    let value = match bad {
        None => "0".to_string(),
        Some(((i, j), r)) => format!("pair ({}, {}): {}", i + 1, j + 1, ctx.fmt_form(r)),
    };
    ctx.push(format!("metric identity ({} pairs)", pairs.len()), EntryKind::Residual, bad.is_none(), value);
    ctx.form("d(phi)", &g2.phi().d());
    ctx.form("d(psi)", &g2.psi().d());
    let Some(action) = &model.action else {
        return Ok(());
    };
    for (i, v) in action.generators().iter().enumerate() {
        let label = format!("curl routes {}", model.basis[i]);
        ctx.field(label, &(&g2.curl(v) - &g2.curl_coordinates(v)));
    }
    let Some(name) = map else {
        return Ok(());
    };
    let fmap = ctx.formal_map(model.map(name).expect("validated"), true)?;
    for (p, f) in fmap.components(1).to_vec() {
        let v = action.generator(&p);
        let label = model.fmt_wedge(&p);
        let h = g2.hamiltonian_check(&-f.clone(), ctx.conv)?;
        ctx.check(format!("-{name}({label}) is hamiltonian"), h.is_hamiltonian, h.is_hamiltonian.to_string());
        ctx.field(format!("curl(sharp(-{name}({label}))) - 3*{label}"), &(&h.curl - &v.scale_int(3)));
    }
    for (p, f) in fmap.components(2).to_vec() {
        let label = model.fmt_wedge(&p);
        let vp = action.generator(&p);
        ctx.form(format!("V({label}) hook phi + d {name}({label})"), &(&vp.interior(g2.phi()) + &f.d()));
        let mut terms = p.terms();
        if let (Some((blade, c)), None) = (terms.next(), terms.next()) {
            let idx = blade.indices();
            let (x, y) = (&action.generators()[idx[0]], &action.generators()[idx[1]]);
            let cross = g2.cross(x, y).scale(c);
            let (a, b) = (&model.basis[idx[0]], &model.basis[idx[1]]);
            ctx.field(format!("{a} x {b} + sharp(d {name}({label}))"), &(&cross + &f.d().sharp()));
        }
    }
    Ok(())
}
