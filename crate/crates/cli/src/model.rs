//! Name resolution and evaluation: turns a syntax tree into charts, forms, actions and maps.

use std::collections::BTreeMap;

use msplect_core::complex::{mul_scalar, CForm, CVec, Complex, ComplexCoord, Gaussian};
use msplect_core::exterior::Graded;
use msplect_core::multisymplectic::{Conventions, Sign};
use msplect_core::{Action, Blade, Chart, Form, LieAlgebra, MultiVec, Polynomial, Rational, WedgePower};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ast::*;
use crate::error::{Diagnostic, DiagnosticKind, Pos, Warning};
use crate::parser::parse_workspace;
use crate::tasks::Task;

const MAX_EXPONENT: u32 = 32;
const RESERVED: [&str; 5] = ["d", "Re", "Im", "conj", "i"];

/// The value of an expression: a complex-valued form or multivector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Form(CForm),
    Vec(CVec),
}

fn degree_of<K: msplect_core::exterior::Kind>(c: &Complex<K>) -> usize {
    c.degree()
}

/// Give the real and imaginary parts the same degree when one of them is zero.
fn normalize<K: msplect_core::exterior::Kind>(c: Complex<K>) -> Complex<K> {
    if c.re.is_zero() && c.re.degree() != c.im.degree() {
        let re = Graded::zero(c.dim(), c.im.degree());
        Complex { re, im: c.im }
    } else if c.im.is_zero() && c.im.degree() != c.re.degree() {
        let im = Graded::zero(c.dim(), c.re.degree());
        Complex { re: c.re, im }
    } else {
        c
    }
}

impl Value {
    pub fn degree(&self) -> usize {
        match self {
            Value::Form(f) => degree_of(f),
            Value::Vec(v) => degree_of(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Form(f) => f.is_zero(),
            Value::Vec(v) => v.is_zero(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Value::Form(_) => format!("a {}-form", self.degree()),
            Value::Vec(_) => format!("a {}-vector field", self.degree()),
        }
    }

    fn is_scalar(&self) -> bool {
        matches!(self, Value::Form(f) if degree_of(f) == 0)
    }
}

#[derive(Clone, Debug)]
enum Binding {
    Coord(usize),
    Complex(ComplexCoord),
    Basis(usize),
    Value(Value),
    Map,
    Reserved,
}

/// One value `f(p)` of a co-momentum map as written in the file.
#[derive(Clone, Debug)]
pub struct MapComponent {
    pub p: WedgePower,
    /// The convention annotation, `{plus}` or `{minus}`.
    pub sign: Option<Sign>,
    pub value: Form,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub struct MapDef {
    pub name: String,
    pub components: Vec<MapComponent>,
}

/// A workspace file with every name resolved and every expression evaluated.
#[derive(Clone, Debug)]
pub struct Model {
    pub workspace: Workspace,
    pub chart: Option<Chart>,
    pub basis: Vec<String>,
    pub algebra: Option<LieAlgebra>,
    pub action: Option<Action>,
    pub omega: Option<Form>,
    pub hamiltonian: Option<Form>,
    pub conventions: Conventions,
    pub maps: Vec<MapDef>,
    pub tasks: Vec<(TaskLine, Task)>,
    pub warnings: Vec<Warning>,
    names: BTreeMap<String, Binding>,
}

/// Parse and resolve a workspace file.
pub fn load(src: &str) -> Result<Model, Diagnostic> {
    Model::build(parse_workspace(src)?)
}

fn sign_of(tag: SignTag) -> Sign {
    match tag {
        SignTag::Plus => Sign::Plus,
        SignTag::Minus => Sign::Minus,
    }
}

fn invalid(pos: Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(pos, DiagnosticKind::Invalid, msg)
}

fn mismatch(pos: Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(pos, DiagnosticKind::DegreeMismatch, msg)
}

fn unknown(pos: Pos, name: &str) -> Diagnostic {
    Diagnostic::new(pos, DiagnosticKind::UnknownIdentifier, format!("`{name}` is not defined"))
}

impl Model {
    pub fn build(workspace: Workspace) -> Result<Model, Diagnostic> {
        let mut m = Model {
            workspace: Workspace::default(),
            chart: None,
            basis: Vec::new(),
            algebra: None,
            action: None,
            omega: None,
            hamiltonian: None,
            conventions: Conventions::default(),
            maps: Vec::new(),
            tasks: Vec::new(),
            warnings: Vec::new(),
            names: RESERVED.iter().map(|s| (s.to_string(), Binding::Reserved)).collect(),
        };
        m.chart_section(&workspace)?;
        m.lie_section(&workspace)?;
        m.action_section(&workspace)?;
        m.system_section(&workspace)?;
        m.define_section(&workspace)?;
        for s in workspace.statements(SectionKind::Tasks) {
            if let Stmt::Task(t) = s {
                let task = Task::from_line(t, &m)?;
                m.tasks.push((t.clone(), task));
            }
        }
        m.workspace = workspace;
        Ok(m)
    }

    fn declare(&mut self, name: &Name, b: Binding) -> Result<(), Diagnostic> {
        match self.names.get(&name.text) {
            Some(Binding::Reserved) => Err(invalid(name.pos, format!("`{}` is a reserved word", name.text))),
            Some(_) => Err(Diagnostic::new(name.pos, DiagnosticKind::Duplicate, format!("`{}` is already defined", name.text))),
            None => {
                self.names.insert(name.text.clone(), b);
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.chart.as_ref().map(Chart::dim)
    }

    pub fn coordinate_names(&self) -> &[String] {
        self.chart.as_ref().map_or(&[], |c| c.names())
    }

    /// A form or field defined by name, including `omega` and `H`.
    pub fn value(&self, name: &str) -> Option<&Value> {
        match self.names.get(name) {
            Some(Binding::Value(v)) => Some(v),
            _ => None,
        }
    }

    pub fn map(&self, name: &str) -> Option<&MapDef> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn is_basis(&self, name: &str) -> bool {
        matches!(self.names.get(name), Some(Binding::Basis(_)))
    }

    pub fn fmt_wedge(&self, p: &WedgePower) -> String {
        p.fmt_with(&self.basis)
    }

    fn chart_section(&mut self, ws: &Workspace) -> Result<(), Diagnostic> {
        for s in ws.statements(SectionKind::Chart) {
            match s {
                Stmt::Coords(names) => {
                    if self.chart.is_some() {
                        return Err(Diagnostic::new(names[0].pos, DiagnosticKind::Duplicate, "coordinates are already declared"));
                    }
                    for (i, n) in names.iter().enumerate() {
                        self.declare(n, Binding::Coord(i))?;
                    }
                    let texts: Vec<&str> = names.iter().map(|n| n.text.as_str()).collect();
                    self.chart = Some(Chart::new(&texts).map_err(|e| invalid(names[0].pos, e.to_string()))?);
                }
                Stmt::Complex { name, re, im } => {
                    let dim = self.dim().ok_or_else(|| invalid(name.pos, "declare `coords` before complex coordinates"))?;
                    let coord = |n: &Name| match self.names.get(&n.text) {
                        Some(Binding::Coord(i)) => Ok(*i),
                        Some(_) => Err(invalid(n.pos, format!("`{}` is not a real coordinate", n.text))),
                        None => Err(unknown(n.pos, &n.text)),
                    };
                    let (x, y) = (coord(re)?, coord(im)?);
                    if x == y {
                        return Err(invalid(im.pos, "real and imaginary parts must be different coordinates"));
                    }
                    self.declare(name, Binding::Complex(ComplexCoord::new(dim, x, y)))?;
                }
                _ => unreachable!("parser only produces chart statements here"),
            }
        }
        Ok(())
    }

    fn lie_section(&mut self, ws: &Workspace) -> Result<(), Diagnostic> {
        let Some(section) = ws.section(SectionKind::LieAlgebra) else {
            return Ok(());
        };
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for s in ws.statements(SectionKind::LieAlgebra) {
            match s {
                Stmt::Basis(names) => {
                    if !self.basis.is_empty() {
                        return Err(Diagnostic::new(names[0].pos, DiagnosticKind::Duplicate, "the basis is already declared"));
                    }
                    for (i, n) in names.iter().enumerate() {
                        self.declare(n, Binding::Basis(i))?;
                        self.basis.push(n.text.clone());
                    }
                }
                Stmt::Bracket { a, b, rhs } => {
                    let (i, j) = (self.basis_index(a)?, self.basis_index(b)?);
                    if i == j {
                        return Err(invalid(b.pos, "a bracket needs two different basis elements"));
                    }
                    let v = self.linear(rhs)?;
                    let (key, sign) = if i < j { ((i, j), 1) } else { ((j, i), -1) };
                    let rhs: Vec<(usize, Rational)> = v
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k, c * Rational::from_integer(sign.into())))
                        .collect();
                    if brackets.insert(key, rhs).is_some() {
                        return Err(Diagnostic::new(a.pos, DiagnosticKind::Duplicate, "this bracket is already given"));
                    }
                }
                _ => unreachable!("parser only produces lie_algebra statements here"),
            }
        }
        if self.basis.is_empty() {
            return Err(invalid(section.pos, "[lie_algebra] needs `basis = ...`"));
        }
        let list: Vec<_> = brackets.into_iter().map(|((i, j), v)| (i, j, v)).collect();
        self.algebra = Some(LieAlgebra::from_brackets(self.basis.len(), &list).map_err(|e| invalid(section.pos, e.to_string()))?);
        Ok(())
    }

    fn basis_index(&self, n: &Name) -> Result<usize, Diagnostic> {
        match self.names.get(&n.text) {
            Some(Binding::Basis(i)) => Ok(*i),
            Some(_) => Err(invalid(n.pos, format!("`{}` is not a Lie algebra basis element", n.text))),
            None => Err(unknown(n.pos, &n.text)),
        }
    }

    /// Evaluate a rational linear combination of basis elements.
    fn linear(&self, e: &Expr) -> Result<Vec<Rational>, Diagnostic> {
        enum Lin {
            Scalar(Rational),
            Vector(Vec<Rational>),
        }
        let dim = self.basis.len();
        let as_vec = |l: Lin, pos: Pos| match l {
            Lin::Vector(v) => Ok(v),
            Lin::Scalar(c) if c.is_zero() => Ok(vec![Rational::zero(); dim]),
            Lin::Scalar(_) => Err(invalid(pos, "expected a combination of basis elements")),
        };
        fn go(m: &Model, e: &Expr, dim: usize) -> Result<Lin, Diagnostic> {
            let vec_of = |l: Lin, pos: Pos| match l {
                Lin::Vector(v) => Ok(v),
                Lin::Scalar(c) if c.is_zero() => Ok(vec![Rational::zero(); dim]),
                Lin::Scalar(_) => Err(invalid(pos, "cannot add a number to a basis element")),
            };
            Ok(match &e.kind {
                ExprKind::Int(n) => Lin::Scalar(Rational::from_integer(BigInt::from(n.clone()))),
                ExprKind::Ident(s) => {
                    let i = m.basis_index(&Name::new(s.clone(), e.pos))?;
                    let mut v = vec![Rational::zero(); dim];
                    v[i] = Rational::one();
                    Lin::Vector(v)
                }
                ExprKind::Neg(a) => match go(m, a, dim)? {
                    Lin::Scalar(c) => Lin::Scalar(-c),
                    Lin::Vector(v) => Lin::Vector(v.into_iter().map(|c| -c).collect()),
                },
                ExprKind::Bin(op @ (BinOp::Add | BinOp::Sub), a, b) => {
                    let (x, y) = (go(m, a, dim)?, go(m, b, dim)?);
                    let s = if *op == BinOp::Add { Rational::one() } else { -Rational::one() };
                    match (x, y) {
                        (Lin::Scalar(p), Lin::Scalar(q)) => Lin::Scalar(p + q * s),
                        (x, y) => {
                            let (x, y) = (vec_of(x, a.pos)?, vec_of(y, b.pos)?);
                            Lin::Vector(x.into_iter().zip(y).map(|(p, q)| p + q * s.clone()).collect())
                        }
                    }
                }
                ExprKind::Bin(BinOp::Mul, a, b) => match (go(m, a, dim)?, go(m, b, dim)?) {
                    (Lin::Scalar(p), Lin::Scalar(q)) => Lin::Scalar(p * q),
                    (Lin::Scalar(c), Lin::Vector(v)) | (Lin::Vector(v), Lin::Scalar(c)) => {
                        Lin::Vector(v.into_iter().map(|x| x * c.clone()).collect())
                    }
                    _ => return Err(invalid(e.pos, "basis elements can only be scaled by numbers")),
                },
                ExprKind::Bin(BinOp::Div, a, b) => match go(m, b, dim)? {
                    Lin::Scalar(c) if !c.is_zero() => match go(m, a, dim)? {
                        Lin::Scalar(p) => Lin::Scalar(p / c),
                        Lin::Vector(v) => Lin::Vector(v.into_iter().map(|x| x / c.clone()).collect()),
                    },
                    _ => return Err(invalid(e.pos, "division only by a nonzero number")),
                },
                _ => return Err(invalid(e.pos, "bracket values are rational combinations of basis elements")),
            })
        }
        as_vec(go(self, e, dim)?, e.pos)
    }

    fn action_section(&mut self, ws: &Workspace) -> Result<(), Diagnostic> {
        let Some(section) = ws.section(SectionKind::Action) else {
            return Ok(());
        };
        let dim = self.dim().ok_or_else(|| invalid(section.pos, "an action needs a [chart]"))?;
        let declared_basis = self.algebra.is_some();
        let mut gens: Vec<Option<MultiVec>> = vec![None; self.basis.len()];
        for s in ws.statements(SectionKind::Action) {
            let Stmt::Assign { name, rhs } = s else { unreachable!("parser only produces assignments here") };
            let v = self.eval_real_vec(rhs, 1)?;
            if declared_basis {
                let i = self.basis_index(name)?;
                if gens[i].is_some() {
                    return Err(Diagnostic::new(name.pos, DiagnosticKind::Duplicate, format!("generator `{}` is already given", name.text)));
                }
                gens[i] = Some(v);
            } else {
                self.declare(name, Binding::Basis(self.basis.len()))?;
                self.basis.push(name.text.clone());
                gens.push(Some(v));
            }
        }
        if let Some(i) = gens.iter().position(Option::is_none) {
            return Err(invalid(section.pos, format!("no generator given for `{}`", self.basis[i])));
        }
        let algebra = match &self.algebra {
            Some(g) => g.clone(),
            None => {
                if self.basis.is_empty() {
                    return Err(invalid(section.pos, "[action] needs at least one generator"));
                }
                let g = LieAlgebra::abelian(self.basis.len());
                self.algebra = Some(g.clone());
                g
            }
        };
        let gens = gens.into_iter().map(|g| g.expect("checked")).collect();
        self.action = Some(Action::new(algebra, dim, gens).map_err(|e| invalid(section.pos, e.to_string()))?);
        Ok(())
    }

    fn system_section(&mut self, ws: &Workspace) -> Result<(), Diagnostic> {
        let mut seen = Vec::new();
        for s in ws.statements(SectionKind::System) {
            match s {
                Stmt::Assign { name, rhs } => {
                    let f = self.eval_real_form(rhs)?;
                    self.declare(name, Binding::Value(Value::Form(CForm::real(f.clone()))))?;
                    if name.text == "omega" {
                        self.omega = Some(f);
                    } else {
                        self.hamiltonian = Some(f);
                    }
                }
                Stmt::Convention { key, sign } => {
                    if seen.contains(&key.value) {
                        return Err(Diagnostic::new(key.pos, DiagnosticKind::Duplicate, format!("`{}` is already set", key.value.name())));
                    }
                    seen.push(key.value);
                    match key.value {
                        ConventionKey::Hamiltonian => self.conventions.hamiltonian = sign_of(sign.value),
                        ConventionKey::Comomentum => self.conventions.comomentum = sign_of(sign.value),
                    }
                }
                _ => unreachable!("parser only produces system statements here"),
            }
        }
        Ok(())
    }

    fn define_section(&mut self, ws: &Workspace) -> Result<(), Diagnostic> {
        for s in ws.statements(SectionKind::Define) {
            match s {
                Stmt::Assign { name, rhs } => {
                    let v = self.eval(rhs)?;
                    self.declare(name, Binding::Value(v))?;
                }
                Stmt::Component { map, index, sign, rhs } => {
                    let idx = index.iter().map(|n| self.basis_index(n)).collect::<Result<Vec<_>, _>>()?;
                    let (s, blade) = Blade::from_list(&idx).ok_or_else(|| invalid(index[0].pos, "repeated basis element in a wedge"))?;
                    let value = self.eval_real_form(rhs)?.with_sign(s);
                    let p = WedgePower::basis_blade(self.basis.len(), blade);
                    let comp = MapComponent {
                        p,
                        sign: sign.map(sign_of),
                        value,
                        pos: map.pos,
                    };
                    match self.names.get(&map.text) {
                        Some(Binding::Map) => {
                            let def = self.maps.iter_mut().find(|d| d.name == map.text).expect("declared map");
                            if def.components.iter().any(|c| c.p == comp.p) {
                                return Err(Diagnostic::new(map.pos, DiagnosticKind::Duplicate, "this component is already given"));
                            }
                            def.components.push(comp);
                        }
                        _ => {
                            self.declare(map, Binding::Map)?;
                            self.maps.push(MapDef {
                                name: map.text.clone(),
                                components: vec![comp],
                            });
                        }
                    }
                }
                _ => unreachable!("parser only produces define statements here"),
            }
        }
        Ok(())
    }

    fn eval_real_form(&mut self, e: &Expr) -> Result<Form, Diagnostic> {
        match self.eval(e)? {
            Value::Form(f) if f.im.is_zero() => Ok(f.re),
            Value::Form(_) => Err(invalid(e.pos, "expected a real form; take Re(...) or Im(...)")),
            v => Err(mismatch(e.pos, format!("expected a form, found {}", v.describe()))),
        }
    }

    fn eval_real_vec(&mut self, e: &Expr, degree: usize) -> Result<MultiVec, Diagnostic> {
        let dim = self.dim().expect("chart checked");
        match self.eval(e)? {
            Value::Vec(v) if v.im.is_zero() && (v.re.is_zero() || v.re.degree() == degree) => {
                Ok(if v.re.is_zero() { MultiVec::zero(dim, degree) } else { v.re })
            }
            Value::Form(f) if f.is_zero() => Ok(MultiVec::zero(dim, degree)),
            Value::Vec(v) if v.im.is_zero() => Err(mismatch(e.pos, format!("expected a vector field, found a {}-vector field", v.degree()))),
            Value::Vec(_) => Err(invalid(e.pos, "expected a real vector field")),
            v => Err(mismatch(e.pos, format!("expected a vector field, found {}", v.describe()))),
        }
    }

    /// Evaluate an expression on the chart, recording warnings.
    pub fn eval(&mut self, e: &Expr) -> Result<Value, Diagnostic> {
        let dim = self.dim().ok_or_else(|| invalid(e.pos, "expressions need a [chart] with `coords`"))?;
        let mut warnings = Vec::new();
        let v = Evaluator { model: self, dim, warnings: &mut warnings }.eval(e);
        self.warnings.extend(warnings);
        v
    }
}

struct Evaluator<'a> {
    model: &'a Model,
    dim: usize,
    warnings: &'a mut Vec<Warning>,
}

impl Evaluator<'_> {
    fn scalar(&self, re: Polynomial, im: Polynomial) -> Value {
        Value::Form(CForm::scalar(self.dim, re, im))
    }

    fn eval(&mut self, e: &Expr) -> Result<Value, Diagnostic> {
        let dim = self.dim;
        Ok(match &e.kind {
            ExprKind::Int(n) => self.scalar(Polynomial::constant(Rational::from_integer(BigInt::from(n.clone()))), Polynomial::zero()),
            ExprKind::Ident(s) => match self.model.names.get(s) {
                Some(Binding::Coord(i)) => self.scalar(Polynomial::var(*i), Polynomial::zero()),
                Some(Binding::Complex(z)) => Value::Form(z.z()),
                Some(Binding::Value(v)) => v.clone(),
                Some(Binding::Reserved) if s == "i" => self.scalar(Polynomial::zero(), Polynomial::one()),
                Some(Binding::Reserved) => return Err(Diagnostic::syntax(e.pos, format!("`{s}` needs an argument in parentheses"))),
                Some(Binding::Basis(_)) => return Err(invalid(e.pos, format!("`{s}` is a Lie algebra element, not a form"))),
                Some(Binding::Map) => return Err(invalid(e.pos, format!("`{s}` is a co-momentum map, not a form"))),
                None => return Err(unknown(e.pos, s)),
            },
            ExprKind::Partial(s) => match self.model.names.get(s) {
                Some(Binding::Coord(i)) => Value::Vec(CVec::real(MultiVec::partial(dim, *i))),
                Some(Binding::Complex(z)) => Value::Vec(z.del()),
                Some(_) => return Err(invalid(e.pos, format!("`@{s}` needs a coordinate"))),
                None => return Err(unknown(e.pos, s)),
            },
            ExprKind::Call(f, a) => {
                let v = self.eval(a)?;
                match (f, v) {
                    (Func::D, Value::Form(x)) => Value::Form(x.d()),
                    (Func::D, v) => return Err(mismatch(e.pos, format!("d applies to forms, found {}", v.describe()))),
                    (Func::Re, Value::Form(x)) => Value::Form(x.re_part()),
                    (Func::Re, Value::Vec(x)) => Value::Vec(x.re_part()),
                    (Func::Im, Value::Form(x)) => Value::Form(x.im_part()),
                    (Func::Im, Value::Vec(x)) => Value::Vec(x.im_part()),
                    (Func::Conj, Value::Form(x)) => Value::Form(x.conj()),
                    (Func::Conj, Value::Vec(x)) => Value::Vec(x.conj()),
                }
            }
            ExprKind::Neg(a) => match self.eval(a)? {
                Value::Form(x) => Value::Form(-x),
                Value::Vec(x) => Value::Vec(-x),
            },
            ExprKind::Pow(a, n) => {
                let base = self.eval(a)?;
                let Value::Form(b) = base.clone() else {
                    return Err(mismatch(e.pos, format!("`**` applies to functions, found {}", base.describe())));
                };
                if !base.is_scalar() {
                    return Err(mismatch(e.pos, format!("`**` applies to functions, found {}", base.describe())));
                }
                if *n > MAX_EXPONENT {
                    return Err(invalid(e.pos, format!("exponent exceeds {MAX_EXPONENT}")));
                }
                let mut acc = CForm::scalar(dim, Polynomial::one(), Polynomial::zero());
                for _ in 0..*n {
                    acc = acc.wedge(&b);
                }
                Value::Form(acc)
            }
            ExprKind::Bin(op, a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                self.binary(*op, x, y, e.pos)?
            }
        })
    }

    fn binary(&mut self, op: BinOp, x: Value, y: Value, pos: Pos) -> Result<Value, Diagnostic> {
        Ok(match op {
            BinOp::Add | BinOp::Sub => {
                let y = if op == BinOp::Sub {
                    match y {
                        Value::Form(f) => Value::Form(-f),
                        Value::Vec(v) => Value::Vec(-v),
                    }
                } else {
                    y
                };
                if x.is_zero() && x.is_scalar() {
                    return Ok(y);
                }
                if y.is_zero() && y.is_scalar() {
                    return Ok(x);
                }
                if !x.is_zero() && !y.is_zero() && x.degree() != y.degree() {
                    return Err(mismatch(pos, format!("cannot add {} and {}", x.describe(), y.describe())));
                }
                match (x, y) {
                    (Value::Form(p), Value::Form(q)) => Value::Form(normalize(&p + &q)),
                    (Value::Vec(p), Value::Vec(q)) => Value::Vec(normalize(&p + &q)),
                    (x, y) => return Err(mismatch(pos, format!("cannot add {} and {}", x.describe(), y.describe()))),
                }
            }
            BinOp::Mul => match (x, y) {
                (Value::Form(p), Value::Form(q)) if degree_of(&p) == 0 || degree_of(&q) == 0 => Value::Form(normalize(p.wedge(&q))),
                (Value::Form(f), Value::Vec(v)) | (Value::Vec(v), Value::Form(f)) if degree_of(&f) == 0 => Value::Vec(normalize(mul_scalar(&f, &v))),
                (x, y) => {
                    return Err(mismatch(
                        pos,
                        format!("`*` needs a function on one side, found {} and {}; use `^` for the wedge product", x.describe(), y.describe()),
                    ))
                }
            },
            BinOp::Div => {
                let c = match &y {
                    Value::Form(f) if degree_of(f) == 0 => {
                        let re = f.re.as_scalar().unwrap_or_else(Polynomial::zero);
                        let im = f.im.as_scalar().unwrap_or_else(Polynomial::zero);
                        (re.is_constant() && im.is_constant() && !y.is_zero()).then(|| (re.constant_term(), im.constant_term()))
                    }
                    _ => None,
                };
                let Some((a, b)) = c else {
                    return Err(invalid(pos, "division only by a nonzero constant"));
                };
                let n = &a * &a + &b * &b;
                let inv = Gaussian::new(a / n.clone(), -b / n);
                match x {
                    Value::Form(f) => Value::Form(normalize(f.scale(&inv))),
                    Value::Vec(v) => Value::Vec(normalize(v.scale(&inv))),
                }
            }
            BinOp::Wedge => {
                let nonzero = !x.is_zero() && !y.is_zero();
                let out = match (x, y) {
                    (Value::Form(p), Value::Form(q)) => Value::Form(normalize(p.wedge(&q))),
                    (Value::Vec(p), Value::Vec(q)) => Value::Vec(normalize(p.wedge(&q))),
                    (x, y) => return Err(mismatch(pos, format!("cannot wedge {} with {}", x.describe(), y.describe()))),
                };
                if nonzero && out.is_zero() {
                    self.warnings.push(Warning {
                        pos,
                        message: "wedge product of nonzero operands is zero".into(),
                    });
                }
                out
            }
        })
    }
}
