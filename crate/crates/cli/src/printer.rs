//! Canonical text for expressions and workspace files.

use crate::ast::*;

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        ExprKind::Bin(BinOp::Wedge, ..) => 2,
        ExprKind::Bin(BinOp::Mul | BinOp::Div, ..) => 3,
        ExprKind::Neg(_) => 4,
        ExprKind::Pow(..) => 5,
        _ => 6,
    }
}

fn operand(e: &Expr, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    match &e.kind {
        ExprKind::Int(n) => out.push_str(&n.to_string()),
        ExprKind::Ident(s) => out.push_str(s),
        ExprKind::Partial(s) => {
            out.push('@');
            out.push_str(s);
        }
        ExprKind::Call(f, a) => {
            out.push_str(f.name());
            operand(a, true, out);
        }
        ExprKind::Neg(a) => {
            out.push('-');
            operand(a, precedence(a) < 4, out);
        }
        ExprKind::Pow(a, n) => {
            operand(a, precedence(a) < 6, out);
            out.push_str("**");
            out.push_str(&n.to_string());
        }
        ExprKind::Bin(op, l, r) => {
            let p = precedence(e);
            operand(l, precedence(l) < p, out);
            match op {
                BinOp::Add | BinOp::Sub => {
                    out.push(' ');
                    out.push_str(op.symbol());
                    out.push(' ');
                }
                _ => out.push_str(op.symbol()),
            }
            operand(r, precedence(r) <= p, out);
        }
    }
}

pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn join(names: &[Name], sep: &str) -> String {
    names.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(sep)
}

pub fn print_stmt(s: &Stmt) -> String {
    match s {
        Stmt::Coords(names) => format!("coords = {}", join(names, ", ")),
        Stmt::Complex { name, re, im } => format!("{} = {} + i*{}", name.text, re.text, im.text),
        Stmt::Basis(names) => format!("basis = {}", join(names, ", ")),
        Stmt::Bracket { a, b, rhs } => format!("[{}, {}] = {}", a.text, b.text, print_expr(rhs)),
        Stmt::Assign { name, rhs } => format!("{} = {}", name.text, print_expr(rhs)),
        Stmt::Convention { key, sign } => format!("{} = {}", key.value.name(), sign.value.name()),
        Stmt::Component { map, index, sign, rhs } => {
            let tag = sign.map(|s| format!(" {{{}}}", s.name())).unwrap_or_default();
            format!("{}[{}]{} = {}", map.text, join(index, "^"), tag, print_expr(rhs))
        }
        Stmt::Task(t) => print_task(t),
    }
}

pub fn print_task(t: &TaskLine) -> String {
    let mut out = t.name.text.clone();
    for a in &t.args {
        out.push(' ');
        match a {
            TaskArg::Positional(v) => out.push_str(&v.text),
            TaskArg::Keyword(k, v) => {
                out.push_str(&k.text);
                out.push('=');
                out.push_str(&v.text);
            }
        }
    }
    out
}

fn print_item(i: &Item) -> String {
    match i {
        Item::Comment(c) => format!("#{c}"),
        Item::Stmt(s) => print_stmt(s),
    }
}

/// Canonical text: one blank line between blocks, no trailing blanks.
pub fn print_workspace(ws: &Workspace) -> String {
    let mut blocks = Vec::new();
    if !ws.preamble.is_empty() {
        blocks.push(ws.preamble.iter().map(|c| format!("#{c}\n")).collect::<String>());
    }
    for s in &ws.sections {
        let mut b = format!("[{}]\n", s.kind.name());
        for i in &s.items {
            b.push_str(&print_item(i));
            b.push('\n');
        }
        blocks.push(b);
    }
    blocks.join("\n")
}
