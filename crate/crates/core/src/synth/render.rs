use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ir::{Expr, Func, Op, Stmt, Ty};
use super::style::Style;
use crate::corpus::Language;

/// One output line and the author it is attributed to; `None` for file
/// scaffolding shared by all authors.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub text: String,
    pub human: Option<bool>,
}

pub struct Renderer<'a> {
    pub lang: Language,
    pub style: &'a Style,
    pub indent: &'a str,
    pub scanner: &'a str,
    pub owner: Option<bool>,
    pub rng: &'a mut ChaCha8Rng,
    pub lines: &'a mut Vec<Line>,
}

fn op_symbol(op: Op, lang: &Language) -> &'static str {
    let py = *lang == Language::Python;
    match op {
        Op::Add => "+",
        Op::Sub => "-",
        Op::Mul => "*",
        Op::Div if py => "//",
        Op::Div => "/",
        Op::Mod => "%",
        Op::Lt => "<",
        Op::Le => "<=",
        Op::Gt => ">",
        Op::Eq => "==",
        Op::Ne => "!=",
        Op::And if py => "and",
        Op::And => "&&",
    }
}

impl Renderer<'_> {
    fn py(&self) -> bool {
        self.lang == Language::Python
    }

    fn cpp(&self) -> bool {
        self.lang == Language::Cpp
    }

    pub fn emit(&mut self, depth: usize, text: impl AsRef<str>) {
        let mut text = text.as_ref().to_string();
        if !text.is_empty() && self.chance(self.style.sloppy) {
            text = self.roughen(text);
        }
        let line = if text.is_empty() {
            String::new()
        } else {
            format!("{}{}", self.indent.repeat(depth), text)
        };
        self.lines.push(Line { text: line, human: self.owner });
    }

    pub fn blank(&mut self) {
        if self.lines.last().is_some_and(|l| !l.text.is_empty()) {
            self.lines.push(Line { text: String::new(), human: self.owner });
        }
    }

    /// One irregular space that keeps the line valid.
    fn roughen(&mut self, mut text: String) -> String {
        let spots: Vec<usize> = text
            .char_indices()
            .filter(|&(i, c)| i > 0 && matches!(c, '=' | '(' | ')' | ',' | ';' | '+' | '<'))
            .map(|(i, _)| i)
            .filter(|&i| !text[..i].contains('"') && !text[..i].contains('\''))
            .collect();
        if spots.is_empty() {
            return text;
        }
        let at = spots[self.rng.random_range(0..spots.len())];
        let after = at + 1;
        match text.as_bytes()[at] {
            b'(' if text[after..].starts_with(|c: char| c != ')') => text.insert(after, ' '),
            b'=' | b'+' | b'<' if text[..at].ends_with(' ') => text.insert(at, ' '),
            b',' | b';' | b')' => text.insert(at, ' '),
            _ => {}
        }
        text
    }

    fn chance(&mut self, p: f64) -> bool {
        p >= 1.0 || (p > 0.0 && self.rng.random_bool(p))
    }

    fn comma(&mut self) -> &'static str {
        if self.chance(self.style.comma_space) {
            ", "
        } else {
            ","
        }
    }

    fn join(&mut self, items: Vec<String>) -> String {
        let mut out = String::new();
        for (i, item) in items.into_iter().enumerate() {
            if i > 0 {
                out.push_str(self.comma());
            }
            out.push_str(&item);
        }
        out
    }

    fn keyword(&mut self, kw: &str) -> String {
        if self.py() || self.chance(self.style.keyword_space) {
            format!("{kw} (")
        } else {
            format!("{kw}(")
        }
    }

    fn std(&self, name: &str) -> String {
        if self.style.qualified_std {
            format!("std::{name}")
        } else {
            name.to_string()
        }
    }

    pub fn ty(&self, t: Ty) -> String {
        let wide = self.style.wide_ints;
        match (&self.lang, t) {
            (Language::Python, Ty::Int | Ty::Index) => "int".into(),
            (Language::Python, Ty::Bool) => "bool".into(),
            (Language::Python, Ty::List) => "list[int]".into(),
            (Language::Python, Ty::Void) => "None".into(),
            (Language::Java, Ty::Int) if wide => "long".into(),
            (Language::Java, Ty::Bool) => "boolean".into(),
            (Language::Java, Ty::List) => format!("{}[]", self.ty(Ty::Int)),
            (Language::Java, Ty::Void) => "void".into(),
            (_, Ty::Int) if wide => "long long".into(),
            (_, Ty::Bool) => "bool".into(),
            (_, Ty::List) => format!("{}<{}>", self.std("vector"), self.ty(Ty::Int)),
            (_, Ty::Void) => "void".into(),
            (_, Ty::Int | Ty::Index) => "int".into(),
        }
    }

    fn param(&self, name: &str, t: Ty) -> String {
        match &self.lang {
            Language::Python if self.style.type_hints => format!("{name}: {}", self.ty(t)),
            Language::Python => name.to_string(),
            Language::Cpp if t == Ty::List => {
                if self.style.formal {
                    format!("const {}& {name}", self.ty(t))
                } else {
                    format!("{}& {name}", self.ty(t))
                }
            }
            _ => format!("{} {name}", self.ty(t)),
        }
    }

    pub fn expr(&mut self, e: &Expr) -> String {
        match e {
            Expr::Var(v) => v.clone(),
            Expr::Int(v) => v.to_string(),
            Expr::Bool(b) if self.py() => if *b { "True" } else { "False" }.into(),
            Expr::Bool(b) => b.to_string(),
            Expr::Bin(op, a, b) => {
                let left = self.operand(a, *op, false);
                let right = self.operand(b, *op, true);
                let sym = op_symbol(*op, &self.lang);
                let spaced = *op == Op::And && self.py() || self.chance(self.style.op_space);
                if spaced {
                    format!("{left} {sym} {right}")
                } else {
                    format!("{left}{sym}{right}")
                }
            }
            Expr::Call(f, args) => {
                let args: Vec<String> = args.iter().map(|a| self.expr(a)).collect();
                format!("{f}({})", self.join(args))
            }
            Expr::Index(a, i) => format!("{}[{}]", self.expr(a), self.expr(i)),
            Expr::Len(a) => {
                let a = self.expr(a);
                match self.lang {
                    Language::Python => format!("len({a})"),
                    Language::Java => format!("{a}.length"),
                    _ => format!("{a}.size()"),
                }
            }
            Expr::ReadInt => match self.lang {
                Language::Python => "int(input())".into(),
                Language::Java if self.style.wide_ints => format!("{}.nextLong()", self.scanner),
                Language::Java => format!("{}.nextInt()", self.scanner),
                _ => "0".into(),
            },
        }
    }

    fn operand(&mut self, e: &Expr, parent: Op, right: bool) -> String {
        let s = self.expr(e);
        if let Expr::Bin(op, ..) = e {
            let (p, q) = (op.precedence(), parent.precedence());
            let assoc = matches!(parent, Op::Add | Op::Mul | Op::And);
            if p < q || (right && p == q && !assoc) {
                return format!("({s})");
            }
        }
        s
    }

    fn end(&self) -> &'static str {
        if self.py() {
            ""
        } else {
            ";"
        }
    }

    fn simple(&mut self, depth: usize, text: String) {
        let end = self.end();
        self.emit(depth, format!("{text}{end}"));
    }

    /// Emits `header {` (or Allman style) and returns nothing; the caller
    /// closes with `close`.
    fn open(&mut self, depth: usize, header: String) {
        if self.py() {
            self.emit(depth, format!("{header}:"));
        } else if self.style.allman {
            self.emit(depth, header);
            self.emit(depth, "{");
        } else {
            self.emit(depth, format!("{header} {{"));
        }
    }

    fn close(&mut self, depth: usize) {
        if !self.py() {
            self.emit(depth, "}");
        }
    }

    fn is_simple(s: &Stmt) -> bool {
        matches!(
            s,
            Stmt::Assign(..) | Stmt::AddAssign(..) | Stmt::SetIndex(..) | Stmt::Return(..) | Stmt::Break | Stmt::Print(..)
        )
    }

    /// Body of a control statement. Humans sometimes drop the braces
    /// around a single simple statement.
    fn body(&mut self, depth: usize, header: String, body: &[Stmt]) {
        if !self.py() && !self.style.braces_always && body.len() == 1 && Self::is_simple(&body[0]) {
            if self.chance(0.5) {
                let start = self.lines.len();
                self.stmt(depth, &body[0]);
                let inner = self.lines[start].text.trim_start().to_string();
                self.lines.truncate(start);
                self.emit(depth, format!("{header} {inner}"));
            } else {
                self.emit(depth, header);
                self.stmt(depth + 1, &body[0]);
            }
            return;
        }
        self.open(depth, header);
        self.block(depth + 1, body);
        self.close(depth);
    }

    pub fn block(&mut self, depth: usize, stmts: &[Stmt]) {
        let mut wrote = false;
        for s in stmts {
            if !matches!(s, Stmt::Blank) {
                wrote = true;
            }
            self.stmt(depth, s);
        }
        if !wrote && self.py() {
            self.emit(depth, "pass");
        }
        if self.lines.last().is_some_and(|l| l.text.is_empty()) && !stmts.is_empty() {
            self.lines.pop();
        }
    }

    fn incr(&mut self, name: &str, by: &Expr) -> String {
        if !self.py() && *by == Expr::Int(1) {
            if self.cpp() && self.style.formal {
                return format!("++{name}");
            }
            return format!("{name}++");
        }
        let by = self.expr(by);
        format!("{name} += {by}")
    }

    pub fn stmt(&mut self, depth: usize, s: &Stmt) {
        match s {
            Stmt::Blank => {
                if self.chance(self.style.blank_sections) {
                    self.blank();
                }
            }
            Stmt::Comment(text) => {
                let mark = if self.py() { "#" } else { "//" };
                self.emit(depth, format!("{mark} {text}"));
            }
            Stmt::Let(name, t, Expr::ReadInt) if self.cpp() => {
                let decl = format!("{} {name};", self.ty(*t));
                let read = format!("{} >> {name};", self.std("cin"));
                if self.style.is_human() && self.chance(0.5) {
                    self.emit(depth, format!("{decl} {read}"));
                } else {
                    self.emit(depth, decl);
                    self.emit(depth, read);
                }
            }
            Stmt::Let(name, t, e) => {
                let value = self.expr(e);
                if self.py() {
                    self.emit(depth, format!("{name} = {value}"));
                } else {
                    let t = self.ty(*t);
                    self.emit(depth, format!("{t} {name} = {value};"));
                }
            }
            Stmt::NewList(name, len) => {
                let len_s = self.expr(len);
                match self.lang {
                    Language::Python => {
                        let len_s = if matches!(len, Expr::Bin(..)) { format!("({len_s})") } else { len_s };
                        self.emit(depth, format!("{name} = [0] * {len_s}"));
                    }
                    Language::Java => {
                        let elem = self.ty(Ty::Int);
                        self.emit(depth, format!("{elem}[] {name} = new {elem}[{len_s}];"));
                    }
                    _ => {
                        let t = self.ty(Ty::List);
                        self.emit(depth, format!("{t} {name}({len_s});"));
                    }
                }
            }
            Stmt::ReadList(name, len) => self.read_list(depth, name, len),
            Stmt::Assign(name, e) => {
                let v = self.expr(e);
                self.simple(depth, format!("{name} = {v}"));
            }
            Stmt::SetIndex(name, i, e) => {
                let (i, v) = (self.expr(i), self.expr(e));
                self.simple(depth, format!("{name}[{i}] = {v}"));
            }
            Stmt::AddAssign(name, e) => {
                let text = self.incr(name, e);
                self.simple(depth, text);
            }
            Stmt::If(cond, then, otherwise) => self.if_chain(depth, cond, then, otherwise, false),
            Stmt::For(v, from, to, body) => {
                if self.style.prefer_while {
                    let mut inner = body.clone();
                    inner.push(Stmt::AddAssign(v.clone(), Expr::Int(1)));
                    self.stmt(depth, &Stmt::Let(v.clone(), Ty::Index, from.clone()));
                    let cond = Expr::Bin(Op::Lt, Box::new(Expr::Var(v.clone())), Box::new(to.clone()));
                    self.stmt(depth, &Stmt::While(cond, inner));
                    return;
                }
                let header = if self.py() {
                    let to_s = self.expr(to);
                    if *from == Expr::Int(0) {
                        format!("for {v} in range({to_s})")
                    } else {
                        let from_s = self.expr(from);
                        let c = self.comma();
                        format!("for {v} in range({from_s}{c}{to_s})")
                    }
                } else {
                    let kw = self.keyword("for");
                    let (from_s, to_s) = (self.expr(from), self.expr(to));
                    let step = self.incr(v, &Expr::Int(1));
                    format!("{kw}int {v} = {from_s}; {v} < {to_s}; {step})")
                };
                self.body(depth, header, body);
            }
            Stmt::While(cond, body) => {
                let c = self.expr(cond);
                let header = if self.py() {
                    format!("while {c}")
                } else {
                    format!("{}{c})", self.keyword("while"))
                };
                self.body(depth, header, body);
            }
            Stmt::Return(value) => match value {
                Some(e) => {
                    let v = self.expr(e);
                    self.simple(depth, format!("return {v}"));
                }
                None => self.simple(depth, "return".into()),
            },
            Stmt::Print(e) => {
                let v = self.expr(e);
                let text = match self.lang {
                    Language::Python => format!("print({v})"),
                    Language::Java => format!("System.out.println({v});"),
                    _ => {
                        let end = if self.style.formal { self.std("endl") } else { "\"\\n\"".to_string() };
                        format!("{} << {v} << {end};", self.std("cout"))
                    }
                };
                self.emit(depth, text);
            }
            Stmt::Break => self.simple(depth, "break".into()),
        }
    }

    fn if_chain(&mut self, depth: usize, cond: &Expr, then: &[Stmt], otherwise: &[Stmt], elif: bool) {
        let c = self.expr(cond);
        let header = match (self.py(), elif) {
            (true, false) => format!("if {c}"),
            (true, true) => format!("elif {c}"),
            (false, _) => format!("{}{c})", self.keyword("if")),
        };
        if otherwise.is_empty() && !elif {
            self.body(depth, header, then);
            return;
        }
        if self.py() {
            self.open(depth, header);
            self.block(depth + 1, then);
        } else {
            let header = if elif { format!("else {header}") } else { header };
            if elif && !self.style.allman {
                let last = self.lines.pop().expect("closing brace");
                debug_assert_eq!(last.text.trim(), "}");
                self.emit(depth, format!("}} {header} {{"));
            } else {
                self.open(depth, header);
            }
            self.block(depth + 1, then);
            self.close(depth);
        }
        if let [Stmt::If(c2, t2, o2)] = otherwise {
            self.if_chain(depth, c2, t2, o2, true);
            return;
        }
        if otherwise.is_empty() {
            return;
        }
        if self.py() {
            self.emit(depth, "else:");
            self.block(depth + 1, otherwise);
        } else {
            if self.style.allman {
                self.emit(depth, "else");
                self.emit(depth, "{");
            } else {
                self.lines.pop();
                self.emit(depth, "} else {");
            }
            self.block(depth + 1, otherwise);
            self.close(depth);
        }
    }

    fn read_list(&mut self, depth: usize, name: &str, len: &Expr) {
        let len_s = self.expr(len);
        match self.lang {
            Language::Python => {
                let c = self.comma();
                self.emit(depth, format!("{name} = list(map(int{c}input().split()))"));
            }
            Language::Java => {
                let elem = self.ty(Ty::Int);
                self.emit(depth, format!("{elem}[] {name} = new {elem}[{len_s}];"));
                let read = self.expr(&Expr::ReadInt);
                let kw = self.keyword("for");
                let header = format!("{kw}int i = 0; i < {len_s}; i++)");
                if self.style.braces_always {
                    self.open(depth, header);
                    self.emit(depth + 1, format!("{name}[i] = {read};"));
                    self.close(depth);
                } else {
                    self.emit(depth, format!("{header} {name}[i] = {read};"));
                }
            }
            _ => {
                let t = self.ty(Ty::List);
                self.emit(depth, format!("{t} {name}({len_s});"));
                let cin = self.std("cin");
                if self.style.formal {
                    self.open(depth, format!("for (int i = 0; i < {len_s}; ++i)"));
                    self.emit(depth + 1, format!("{cin} >> {name}[i];"));
                    self.close(depth);
                } else {
                    let kw = self.keyword("for");
                    self.emit(depth, format!("{kw}auto &x : {name}) {cin} >> x;"));
                }
            }
        }
    }

    pub fn func(&mut self, depth: usize, f: &Func, java_public: bool) {
        let params: Vec<String> = f.params.iter().map(|(n, t)| self.param(n, *t)).collect();
        let params = self.join(params);
        match self.lang {
            Language::Python => {
                let ret = if self.style.type_hints { format!(" -> {}", self.ty(f.ret)) } else { String::new() };
                self.emit(depth, format!("def {}({params}){ret}:", f.name));
                if self.style.docstrings && !f.doc.is_empty() {
                    self.emit(depth + 1, format!("\"\"\"{}\"\"\"", f.doc));
                }
                self.block(depth + 1, &f.body);
            }
            Language::Java => {
                if self.style.docstrings && !f.doc.is_empty() {
                    self.emit(depth, "/**");
                    self.emit(depth, format!(" * {}", f.doc));
                    self.emit(depth, " */");
                }
                let vis = if java_public { "public static" } else { "static" };
                self.open(depth, format!("{vis} {} {}({params})", self.ty(f.ret), f.name));
                self.block(depth + 1, &f.body);
                self.close(depth);
            }
            _ => {
                if self.style.docstrings && !f.doc.is_empty() {
                    self.emit(depth, format!("// {}", f.doc));
                }
                self.open(depth, format!("{} {}({params})", self.ty(f.ret), f.name));
                self.block(depth + 1, &f.body);
                self.close(depth);
            }
        }
    }
}
