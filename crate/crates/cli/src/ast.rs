//! Syntax tree of a workspace file. Equality ignores source positions.

use num_bigint::BigUint;

use crate::error::Pos;

#[derive(Clone, Debug)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    pub fn new(text: impl Into<String>, pos: Pos) -> Self {
        Name { text: text.into(), pos }
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Name {}

/// A value with a source position that equality ignores.
#[derive(Clone, Copy, Debug)]
pub struct At<T> {
    pub value: T,
    pub pos: Pos,
}

impl<T> At<T> {
    pub fn new(value: T, pos: Pos) -> Self {
        At { value, pos }
    }
}

impl<T: PartialEq> PartialEq for At<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for At<T> {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Wedge,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Wedge => "^",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    D,
    Re,
    Im,
    Conj,
}

impl Func {
    pub const ALL: [Func; 4] = [Func::D, Func::Re, Func::Im, Func::Conj];

    pub fn name(self) -> &'static str {
        match self {
            Func::D => "d",
            Func::Re => "Re",
            Func::Im => "Im",
            Func::Conj => "conj",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigUint),
    Ident(String),
    Partial(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

/// An expression; `pos` is the operator position for operators and the start otherwise.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr, pos: Pos) -> Self {
        Expr::new(ExprKind::Bin(op, Box::new(l), Box::new(r)), pos)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectionKind {
    Chart,
    LieAlgebra,
    Action,
    System,
    Define,
    Tasks,
}

impl SectionKind {
    pub const ALL: [SectionKind; 6] = [
        SectionKind::Chart,
        SectionKind::LieAlgebra,
        SectionKind::Action,
        SectionKind::System,
        SectionKind::Define,
        SectionKind::Tasks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SectionKind::Chart => "chart",
            SectionKind::LieAlgebra => "lie_algebra",
            SectionKind::Action => "action",
            SectionKind::System => "system",
            SectionKind::Define => "define",
            SectionKind::Tasks => "tasks",
        }
    }

    pub fn from_name(s: &str) -> Option<SectionKind> {
        SectionKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignTag {
    Plus,
    Minus,
}

impl SignTag {
    pub fn name(self) -> &'static str {
        match self {
            SignTag::Plus => "plus",
            SignTag::Minus => "minus",
        }
    }

    pub fn from_name(s: &str) -> Option<SignTag> {
        match s {
            "plus" => Some(SignTag::Plus),
            "minus" => Some(SignTag::Minus),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConventionKey {
    Hamiltonian,
    Comomentum,
}

impl ConventionKey {
    pub fn name(self) -> &'static str {
        match self {
            ConventionKey::Hamiltonian => "hamiltonian_sign",
            ConventionKey::Comomentum => "comomentum_sign",
        }
    }

    pub fn from_name(s: &str) -> Option<ConventionKey> {
        match s {
            "hamiltonian_sign" => Some(ConventionKey::Hamiltonian),
            "comomentum_sign" => Some(ConventionKey::Comomentum),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskArg {
    Positional(Name),
    Keyword(Name, Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskLine {
    pub name: Name,
    pub args: Vec<TaskArg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    /// `coords = x, y, z`
    Coords(Vec<Name>),
    /// `z1 = x1 + i*y1`
    Complex { name: Name, re: Name, im: Name },
    /// `basis = e1, e2`
    Basis(Vec<Name>),
    /// `[e1, e2] = e3`
    Bracket { a: Name, b: Name, rhs: Expr },
    /// `name = expr` in the action, system and define sections.
    Assign { name: Name, rhs: Expr },
    /// `hamiltonian_sign = plus`
    Convention { key: At<ConventionKey>, sign: At<SignTag> },
    /// `f[e1^e2] {plus} = expr`
    Component {
        map: Name,
        index: Vec<Name>,
        sign: Option<SignTag>,
        rhs: Expr,
    },
    Task(TaskLine),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    /// The text after `#`.
    Comment(String),
    Stmt(Stmt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    pub pos: Pos,
    pub items: Vec<Item>,
}

/// A parsed workspace file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    /// Comments before the first section header.
    pub preamble: Vec<String>,
    pub sections: Vec<Section>,
}

impl Workspace {
    pub fn section(&self, kind: SectionKind) -> Option<&Section> {
        self.sections.iter().find(|s| s.kind == kind)
    }

    pub fn statements(&self, kind: SectionKind) -> impl Iterator<Item = &Stmt> {
        self.section(kind).into_iter().flat_map(|s| {
            s.items.iter().filter_map(|i| match i {
                Item::Stmt(s) => Some(s),
                Item::Comment(_) => None,
            })
        })
    }
}
