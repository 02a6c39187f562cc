use crate::ast::*;
use crate::error::{Diagnostic, Pos};
use crate::lexer::{lex_line, Tok, Token};

const MAX_DEPTH: usize = 200;

/// Parse a single-line expression.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    parse_expr_line(src, 1)
}

fn parse_expr_line(src: &str, line: usize) -> Result<Expr, Diagnostic> {
    let toks = lex_line(src, line)?;
    let mut p = Parser::new(&toks, Pos::new(line, src.chars().count() + 1));
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

struct Parser<'a> {
    toks: &'a [Token],
    i: usize,
    end: Pos,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token], end: Pos) -> Self {
        Parser { toks, i: 0, end, depth: 0 }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let found = match self.peek() {
            Some(t) => t.describe(),
            None => "end of line".into(),
        };
        Diagnostic::syntax(self.pos(), format!("expected {expected}, found {found}"))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<Pos, Diagnostic> {
        let pos = self.pos();
        if self.eat(tok) {
            Ok(pos)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn name(&mut self) -> Result<Name, Diagnostic> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let n = Name::new(s.clone(), self.pos());
                self.i += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn names(&mut self) -> Result<Vec<Name>, Diagnostic> {
        let mut out = vec![self.name()?];
        while self.eat(&Tok::Comma) {
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), Diagnostic> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of line")),
        }
    }

    fn enter(&mut self) -> Result<(), Diagnostic> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Diagnostic::syntax(self.pos(), "expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        self.enter()?;
        let mut l = self.wedge()?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => break,
            };
            self.i += 1;
            let r = self.wedge()?;
            l = Expr::bin(op, l, r, pos);
        }
        self.depth -= 1;
        Ok(l)
    }

    fn wedge(&mut self) -> Result<Expr, Diagnostic> {
        let mut l = self.product()?;
        while self.peek() == Some(&Tok::Caret) {
            let pos = self.pos();
            self.i += 1;
            let r = self.product()?;
            l = Expr::bin(BinOp::Wedge, l, r, pos);
        }
        Ok(l)
    }

    fn product(&mut self) -> Result<Expr, Diagnostic> {
        let mut l = self.unary()?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => break,
            };
            self.i += 1;
            let r = self.unary()?;
            l = Expr::bin(op, l, r, pos);
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        if self.peek() == Some(&Tok::Minus) {
            let pos = self.pos();
            self.i += 1;
            self.enter()?;
            let e = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::new(ExprKind::Neg(Box::new(e)), pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::StarStar) {
            return Ok(base);
        }
        let pos = self.pos();
        self.i += 1;
        let n = match self.peek() {
            Some(Tok::Int(n)) => u32::try_from(n.clone()).map_err(|_| Diagnostic::syntax(self.pos(), "exponent too large"))?,
            _ => return Err(self.unexpected("a natural-number exponent")),
        };
        self.i += 1;
        if self.peek() == Some(&Tok::StarStar) {
            return Err(Diagnostic::syntax(self.pos(), "`**` does not chain; use parentheses"));
        }
        Ok(Expr::new(ExprKind::Pow(Box::new(base), n), pos))
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::new(ExprKind::Int(n.clone()), pos))
            }
            Some(Tok::Partial(s)) => {
                self.i += 1;
                Ok(Expr::new(ExprKind::Partial(s.clone()), pos))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                if let Some(f) = Func::from_name(s) {
                    if self.eat(&Tok::LParen) {
                        let arg = self.expr()?;
                        self.expect(&Tok::RParen)?;
                        return Ok(Expr::new(ExprKind::Call(f, Box::new(arg)), pos));
                    }
                }
                Ok(Expr::new(ExprKind::Ident(s.clone()), pos))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

/// Parse a workspace file into its syntax tree. Names are resolved later, by
/// [`crate::model::Model::build`].
pub fn parse_workspace(src: &str) -> Result<Workspace, Diagnostic> {
    let mut ws = Workspace::default();
    for (idx, raw) in src.split('\n').enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim_start();
        if trimmed.trim_end().is_empty() {
            continue;
        }
        let indent = line.chars().count() - trimmed.chars().count();
        if let Some(text) = trimmed.strip_prefix('#') {
            let c = text.trim_end().to_string();
            match ws.sections.last_mut() {
                Some(s) => s.items.push(Item::Comment(c)),
                None => ws.preamble.push(c),
            }
            continue;
        }
        let current = ws.sections.last().map(|s| s.kind);
        if current != Some(SectionKind::Tasks) || trimmed.starts_with('[') {
            let toks = lex_line(line, lineno)?;
            if let [Token { tok: Tok::LBracket, pos }, Token { tok: Tok::Ident(name), .. }, Token { tok: Tok::RBracket, .. }] = toks.as_slice() {
                let kind = SectionKind::from_name(name).ok_or_else(|| {
                    Diagnostic::syntax(*pos, format!("unknown section [{name}]"))
                })?;
                if current.is_some_and(|c| c >= kind) {
                    let order: Vec<_> = SectionKind::ALL.iter().map(|k| format!("[{}]", k.name())).collect();
                    return Err(Diagnostic::syntax(
                        *pos,
                        format!("section [{name}] is repeated or out of order; sections appear once, in the order {}", order.join(" ")),
                    ));
                }
                ws.sections.push(Section { kind, pos: *pos, items: Vec::new() });
                continue;
            }
            let Some(kind) = current else {
                return Err(Diagnostic::syntax(Pos::new(lineno, indent + 1), "statement before the first section header"));
            };
            let end = Pos::new(lineno, line.chars().count() + 1);
            let stmt = statement(kind, &toks, end)?;
            ws.sections.last_mut().expect("section").items.push(Item::Stmt(stmt));
        } else {
            let task = task_line(line, lineno)?;
            ws.sections.last_mut().expect("section").items.push(Item::Stmt(Stmt::Task(task)));
        }
    }
    Ok(ws)
}

fn statement(kind: SectionKind, toks: &[Token], end: Pos) -> Result<Stmt, Diagnostic> {
    let mut p = Parser::new(toks, end);
    let stmt = match kind {
        SectionKind::Chart => {
            let name = p.name()?;
            p.expect(&Tok::Eq)?;
            if name.text == "coords" {
                Stmt::Coords(p.names()?)
            } else {
                let re = p.name()?;
                p.expect(&Tok::Plus)?;
                let i = p.name()?;
                if i.text != "i" {
                    return Err(Diagnostic::syntax(i.pos, "expected `i` in a complex declaration `z = x + i*y`"));
                }
                p.expect(&Tok::Star)?;
                let im = p.name()?;
                Stmt::Complex { name, re, im }
            }
        }
        SectionKind::LieAlgebra => {
            if p.eat(&Tok::LBracket) {
                let a = p.name()?;
                p.expect(&Tok::Comma)?;
                let b = p.name()?;
                p.expect(&Tok::RBracket)?;
                p.expect(&Tok::Eq)?;
                Stmt::Bracket { a, b, rhs: p.expr()? }
            } else {
                let name = p.name()?;
                if name.text != "basis" {
                    return Err(Diagnostic::syntax(name.pos, "expected `basis = ...` or a bracket `[a, b] = ...`"));
                }
                p.expect(&Tok::Eq)?;
                Stmt::Basis(p.names()?)
            }
        }
        SectionKind::Action => {
            let name = p.name()?;
            p.expect(&Tok::Eq)?;
            Stmt::Assign { name, rhs: p.expr()? }
        }
        SectionKind::System => {
            let name = p.name()?;
            p.expect(&Tok::Eq)?;
            if let Some(key) = ConventionKey::from_name(&name.text) {
                let v = p.name()?;
                let sign = SignTag::from_name(&v.text).ok_or_else(|| Diagnostic::syntax(v.pos, "expected `plus` or `minus`"))?;
                Stmt::Convention {
                    key: At::new(key, name.pos),
                    sign: At::new(sign, v.pos),
                }
            } else if name.text == "omega" || name.text == "H" {
                Stmt::Assign { name, rhs: p.expr()? }
            } else {
                return Err(Diagnostic::syntax(
                    name.pos,
                    format!("unknown system key `{}`; expected omega, H, hamiltonian_sign or comomentum_sign", name.text),
                ));
            }
        }
        SectionKind::Define => {
            let name = p.name()?;
            if p.eat(&Tok::LBracket) {
                let mut index = vec![p.name()?];
                while p.eat(&Tok::Caret) {
                    index.push(p.name()?);
                }
                p.expect(&Tok::RBracket)?;
                let sign = if p.eat(&Tok::LBrace) {
                    let v = p.name()?;
                    let s = SignTag::from_name(&v.text).ok_or_else(|| Diagnostic::syntax(v.pos, "expected `plus` or `minus`"))?;
                    p.expect(&Tok::RBrace)?;
                    Some(s)
                } else {
                    None
                };
                p.expect(&Tok::Eq)?;
                Stmt::Component {
                    map: name,
                    index,
                    sign,
                    rhs: p.expr()?,
                }
            } else {
                p.expect(&Tok::Eq)?;
                Stmt::Assign { name, rhs: p.expr()? }
            }
        }
        SectionKind::Tasks => unreachable!("task lines are split on whitespace"),
    };
    p.finish()?;
    Ok(stmt)
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')
}

fn word(text: &str, pos: Pos) -> Result<Name, Diagnostic> {
    if let Some((i, c)) = text.chars().enumerate().find(|(_, c)| !is_word_char(*c)) {
        return Err(Diagnostic::syntax(Pos::new(pos.line, pos.col + i), format!("unexpected character `{c}` in task line")));
    }
    if text.is_empty() {
        return Err(Diagnostic::syntax(pos, "empty task argument"));
    }
    Ok(Name::new(text, pos))
}

fn task_line(line: &str, lineno: usize) -> Result<TaskLine, Diagnostic> {
    let mut words = Vec::new();
    let mut start = None;
    for (i, c) in line.chars().chain(std::iter::once(' ')).enumerate() {
        let blank = c == ' ' || c == '\t' || c == '\r';
        match (blank, start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                words.push((s, line.chars().skip(s).take(i - s).collect::<String>()));
                start = None;
            }
            _ => {}
        }
    }
    let mut it = words.into_iter();
    let (c0, first) = it.next().expect("non-blank line");
    let name = word(&first, Pos::new(lineno, c0 + 1))?;
    let mut args = Vec::new();
    for (c, w) in it {
        let pos = Pos::new(lineno, c + 1);
        match w.split_once('=') {
            Some((k, v)) => {
                let key = word(k, pos)?;
                let value = word(v, Pos::new(lineno, c + 2 + k.chars().count()))?;
                args.push(TaskArg::Keyword(key, value));
            }
            None => args.push(TaskArg::Positional(word(&w, pos)?)),
        }
    }
    Ok(TaskLine { name, args })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(src: &str) -> String {
        fn go(e: &Expr) -> String {
            match &e.kind {
                ExprKind::Int(n) => n.to_string(),
                ExprKind::Ident(s) => s.clone(),
                ExprKind::Partial(s) => format!("@{s}"),
                ExprKind::Neg(a) => format!("(neg {})", go(a)),
                ExprKind::Bin(op, a, b) => format!("({} {} {})", op.symbol(), go(a), go(b)),
                ExprKind::Pow(a, n) => format!("(** {} {n})", go(a)),
                ExprKind::Call(f, a) => format!("({} {})", f.name(), go(a)),
            }
        }
        go(&parse_expr(src).unwrap())
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(shape("a + b ^ c * d"), "(+ a (^ b (* c d)))");
        assert_eq!(shape("a ^ b ^ c"), "(^ (^ a b) c)");
        assert_eq!(shape("a - b - c"), "(- (- a b) c)");
        assert_eq!(shape("-x**2"), "(neg (** x 2))");
        assert_eq!(shape("1/2*x"), "(* (/ 1 2) x)");
        assert_eq!(shape("-x*d(y)"), "(* (neg x) (d y))");
        assert_eq!(shape("Re(z1*z2)"), "(Re (* z1 z2))");
        assert_eq!(shape("d"), "d");
    }

    #[test]
    fn expression_errors_carry_positions() {
        let e = parse_expr("x + * y").unwrap_err();
        assert_eq!(e.pos, Pos::new(1, 5));
        let e = parse_expr("(x + y").unwrap_err();
        assert_eq!(e.pos, Pos::new(1, 7));
        assert!(parse_expr("x**2**2").is_err());
        assert!(parse_expr("x**y").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr(&"(".repeat(10_000)).is_err());
        assert!(parse_expr(&"-".repeat(10_000)).is_err());
    }

    #[test]
    fn workspace_sections_and_statements() {
        let src = "# sample\n[chart]\ncoords = x, y, z\n\n[system]\nomega = d(x)^d(y)^d(z)\nH = -x*d(y)\nhamiltonian_sign = plus\n[define]\nf[e1^e2] {minus} = x\n[tasks]\nclassify H conserved=strict\n";
        let ws = parse_workspace(src).unwrap();
        assert_eq!(ws.preamble, vec![" sample".to_string()]);
        assert_eq!(ws.sections.len(), 4);
        assert_eq!(ws.sections[3].items.len(), 1);
        let Item::Stmt(Stmt::Task(t)) = &ws.sections[3].items[0] else { panic!() };
        assert_eq!(t.name.text, "classify");
        assert_eq!(t.args.len(), 2);
    }

    #[test]
    fn workspace_errors() {
        let e = parse_workspace("x = 1").unwrap_err();
        assert_eq!(e.pos, Pos::new(1, 1));
        let e = parse_workspace("[system]\n[chart]").unwrap_err();
        assert_eq!(e.pos, Pos::new(2, 1));
        assert!(parse_workspace("[nope]").is_err());
        let e = parse_workspace("[system]\nomega = d(x) +").unwrap_err();
        assert_eq!(e.pos, Pos::new(2, 15));
        let e = parse_workspace("[system]\nfoo = 1").unwrap_err();
        assert_eq!(e.pos, Pos::new(2, 1));
        let e = parse_workspace("[tasks]\nclassify a=$").unwrap_err();
        assert_eq!(e.pos, Pos::new(2, 12));
    }
}
