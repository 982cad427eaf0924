//! Parser for `.diag` files.
//!
//! ```text
//! diagram pentagon {
//!   obj w x y z;
//!   assert comp(alphaT[w, x, (y * z)], alphaT[(w * x), y, z])
//!       == comp(ten(id[w], alphaT[x, y, z]), alphaT[w, (x * y), z], ten(alphaT[w, x, y], id[z]))
//!       mode exact;
//! }
//! ```
//!
//! Objects are `1`, `0`, declared names, `(a * b)`, `(a + b)`, `ten(a, b)`,
//! `plus(a, b)` and `ev(F)` for the value of an endofunctor at 1.
//! Endofunctors are `Id`, `K`, `M<n>`, `D(obj)`, `C(name)`, declared names,
//! `(F . G)` and `(F + G)`. Morphisms are built from structural kinds with
//! bracketed object parameters, declared generators and the combinators
//! `comp` (right to left), `ten`, `plus`, `inv`; endofunctor morphisms from
//! `omega`, `kappa`, `assoc`, `lc`, `rc`, `eid`, `xi`, `lambda`, `d2`, `d2plus`,
//! `dphi`, with `hcomp` for horizontal composition and `ev` for the
//! evaluated body.

use std::collections::{BTreeMap, BTreeSet};

use rigcalc::endo::{self, BrEndo, EndoMor, TTEndo};
use rigcalc::mor::{Kind, TypedMor};
use rigcalc::obj::{gen, oplus, tensor, ObjTerm};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DslError {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("type error at line {line} in `{expr}`: {msg}")]
    Type { line: usize, expr: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construct {
    Rotation,
    SuspensionNull,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelParams {
    pub count: Option<usize>,
    pub maxdim: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Exact,
    Model(ModelParams),
    Homotopy(Construct),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Model(_) => "model",
            Mode::Homotopy(_) => "homotopy",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Item {
    Assert { text: String, left: TypedMor, right: TypedMor, mode: Mode, line: usize },
    Check { name: String, mode: Mode, line: usize },
}

#[derive(Debug, Clone)]
pub struct DiagramSpec {
    pub name: String,
    pub line: usize,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Punct(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// Byte offset into the source.
    at: usize,
}

const PUNCT: [&str; 15] = ["==", "->", "{", "}", "(", ")", "[", "]", ",", ";", ":", "=", "*", "+", "."];

fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let bump = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let (at, c) = chars[i];
        let next = chars.get(i + 1).map(|p| p.1);
        if c.is_whitespace() {
            bump(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '#' || (c == '/' && next == Some('/')) {
            while i < chars.len() && chars[i].1 != '\n' {
                let ch = chars[i].1;
                bump(&mut i, &mut line, &mut col, ch);
            }
            continue;
        }
        let (tl, tc) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() {
                let ch = chars[i].1;
                let after = chars.get(i + 1).map(|p| p.1);
                let dash = ch == '-' && after.is_some_and(|a| a.is_ascii_alphanumeric());
                if ch.is_ascii_alphanumeric() || ch == '_' || dash {
                    s.push(ch);
                    bump(&mut i, &mut line, &mut col, ch);
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line: tl, col: tc, at });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() {
                let ch = chars[i].1;
                let sign = (ch == '-' || ch == '+') && s.ends_with(['e', 'E']);
                if ch.is_ascii_digit() || ch == '.' || ch == 'e' || ch == 'E' || sign {
                    s.push(ch);
                    bump(&mut i, &mut line, &mut col, ch);
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Num(s), line: tl, col: tc, at });
            continue;
        }
        let rest = &src[at..];
        match PUNCT.iter().find(|p| rest.starts_with(**p)) {
            Some(p) => {
                for ch in p.chars() {
                    bump(&mut i, &mut line, &mut col, ch);
                }
                out.push(Token { tok: Tok::Punct(p), line: tl, col: tc, at });
            }
            None => return Err(DslError::Parse { line, col, msg: format!("unexpected character `{c}`") }),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Val {
    Mor(TypedMor),
    Endo(EndoMor),
}

#[derive(Default)]
struct Scope {
    objs: BTreeSet<String>,
    gens: BTreeMap<String, (ObjTerm, ObjTerm)>,
    endos: BTreeMap<String, BrEndo>,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    scope: Scope,
}

pub fn parse(src: &str) -> Result<Vec<DiagramSpec>, DslError> {
    let mut p = Parser { src, toks: lex(src)?, pos: 0, scope: Scope::default() };
    let mut out = Vec::new();
    while p.pos < p.toks.len() {
        out.push(p.diagram()?);
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => {
                let line = self.src.lines().count().max(1);
                let col = self.src.lines().last().map_or(0, |l| l.chars().count()) + 1;
                (line, col)
            }
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        let (line, col) = self.here();
        Err(DslError::Parse { line, col, msg: msg.into() })
    }

    /// Source text between two token positions.
    fn text(&self, from: usize) -> String {
        let a = self.toks.get(from).map_or(self.src.len(), |t| t.at);
        let b = match self.pos.checked_sub(1).and_then(|i| self.toks.get(i)) {
            Some(t) => t.at + tok_len(&t.tok),
            None => a,
        };
        self.src[a..b.max(a)].split_whitespace().collect::<Vec<_>>().join(" ")
    }

    fn type_err<T>(&self, from: usize, msg: impl Into<String>) -> Result<T, DslError> {
        let line = self.toks.get(from).map_or(0, |t| t.line);
        Err(DslError::Type { line, expr: self.text(from), msg: msg.into() })
    }

    fn punct(&mut self, p: &'static str) -> Result<(), DslError> {
        if self.peek() == Some(&Tok::Punct(p)) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{p}`{}", self.found()))
        }
    }

    fn eat(&mut self, p: &'static str) -> bool {
        if self.peek() == Some(&Tok::Punct(p)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(Tok::Ident(s)) | Some(Tok::Num(s)) => format!(", found `{s}`"),
            Some(Tok::Punct(p)) => format!(", found `{p}`"),
            None => ", found end of input".into(),
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected a name{}", self.found())),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == k => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{k}`{}", self.found())),
        }
    }

    fn diagram(&mut self) -> Result<DiagramSpec, DslError> {
        let line = self.here().0;
        self.keyword("diagram")?;
        let name = self.ident()?;
        self.punct("{")?;
        self.scope = Scope::default();
        let mut items = Vec::new();
        while !self.eat("}") {
            let kw = self.ident()?;
            match kw.as_str() {
                "obj" => {
                    while let Some(Tok::Ident(_)) = self.peek() {
                        let n = self.ident()?;
                        self.scope.objs.insert(n);
                    }
                }
                "gen" => {
                    let n = self.ident()?;
                    self.punct(":")?;
                    let a = self.obj()?;
                    self.punct("->")?;
                    let b = self.obj()?;
                    self.scope.gens.insert(n, (a, b));
                }
                "endo" => {
                    let n = self.ident()?;
                    self.punct("=")?;
                    let e = self.endo()?;
                    self.scope.endos.insert(n, e);
                }
                "assert" => items.push(self.assert()?),
                "check" => {
                    let line = self.here().0;
                    let name = self.ident()?;
                    self.keyword("mode")?;
                    let mode = self.mode()?;
                    items.push(Item::Check { name, mode, line });
                }
                other => {
                    self.pos -= 1;
                    return self.err(format!("unknown statement `{other}`"));
                }
            }
            self.punct(";")?;
        }
        if items.is_empty() {
            return Err(DslError::Parse { line, col: 1, msg: format!("diagram `{name}` has no assert or check") });
        }
        Ok(DiagramSpec { name, line, items })
    }

    fn assert(&mut self) -> Result<Item, DslError> {
        let start = self.pos;
        let line = self.here().0;
        let l = self.expr()?;
        self.punct("==")?;
        let r = self.expr()?;
        let text = self.text(start);
        let (left, right) = match (l, r) {
            (Val::Mor(a), Val::Mor(b)) => (a, b),
            (Val::Endo(a), Val::Endo(b)) => {
                if a.src != b.src || a.tgt != b.tgt {
                    return self.type_err(start, format!("{} => {} vs {} => {}", a.src, a.tgt, b.src, b.tgt));
                }
                (a.body, b.body)
            }
            _ => return self.type_err(start, "one side is an endofunctor morphism; wrap it in ev(...)"),
        };
        if !left.parallel_to(&right) {
            return self.type_err(
                start,
                format!("sides are not parallel: {} -> {} vs {} -> {}", left.src, left.tgt, right.src, right.tgt),
            );
        }
        self.keyword("mode")?;
        let mode = self.mode()?;
        Ok(Item::Assert { text, left, right, mode, line })
    }

    fn mode(&mut self) -> Result<Mode, DslError> {
        let m = self.ident()?;
        match m.as_str() {
            "exact" => Ok(Mode::Exact),
            "model" => {
                let mut p = ModelParams::default();
                if self.eat("(") {
                    loop {
                        let key = self.ident()?;
                        self.punct("=")?;
                        let v = match self.peek() {
                            Some(Tok::Num(s)) => s.clone(),
                            _ => return self.err(format!("expected a number{}", self.found())),
                        };
                        match key.as_str() {
                            "count" => p.count = Some(self.number(&v, &key)?),
                            "maxdim" => p.maxdim = Some(self.number(&v, &key)?),
                            "seed" => p.seed = Some(self.number(&v, &key)?),
                            "tol" => p.tol = Some(self.number(&v, &key)?),
                            _ => return self.err(format!("unknown model parameter `{key}`")),
                        }
                        self.pos += 1;
                        if !self.eat(",") {
                            break;
                        }
                    }
                    self.punct(")")?;
                }
                Ok(Mode::Model(p))
            }
            "homotopy" => {
                self.punct("(")?;
                self.keyword("construct")?;
                self.punct(":")?;
                let c = match self.ident()?.as_str() {
                    "rotation" => Construct::Rotation,
                    "suspension-null" => Construct::SuspensionNull,
                    other => {
                        self.pos -= 1;
                        return self.err(format!("unknown construction `{other}`"));
                    }
                };
                self.punct(")")?;
                Ok(Mode::Homotopy(c))
            }
            other => {
                self.pos -= 1;
                self.err(format!("unknown mode `{other}`"))
            }
        }
    }

    fn number<T: std::str::FromStr>(&self, v: &str, key: &str) -> Result<T, DslError> {
        v.parse().or_else(|_| self.err(format!("bad value `{v}` for `{key}`")))
    }

    fn obj(&mut self) -> Result<ObjTerm, DslError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) if n == "1" => {
                self.pos += 1;
                Ok(ObjTerm::One)
            }
            Some(Tok::Num(n)) if n == "0" => {
                self.pos += 1;
                Ok(ObjTerm::Zero)
            }
            Some(Tok::Punct("(")) => {
                self.pos += 1;
                let a = self.obj()?;
                let op = if self.eat("*") {
                    "*"
                } else if self.eat("+") {
                    "+"
                } else {
                    return self.err(format!("expected `*` or `+`{}", self.found()));
                };
                let b = self.obj()?;
                self.punct(")")?;
                Ok(if op == "*" { tensor(a, b) } else { oplus(a, b) })
            }
            Some(Tok::Ident(s)) if self.peek2() == Some(&Tok::Punct("(")) && (s == "ten" || s == "plus") => {
                self.pos += 2;
                let a = self.obj()?;
                self.punct(",")?;
                let b = self.obj()?;
                self.punct(")")?;
                Ok(if s == "ten" { tensor(a, b) } else { oplus(a, b) })
            }
            Some(Tok::Ident(s)) if s == "ev" && self.peek2() == Some(&Tok::Punct("(")) => {
                self.pos += 2;
                let e = self.endo()?;
                self.punct(")")?;
                Ok(e.ev_obj())
            }
            Some(Tok::Ident(s)) => {
                if !self.scope.objs.contains(&s) {
                    return self.err(format!("undeclared object `{s}`"));
                }
                self.pos += 1;
                Ok(gen(&s))
            }
            _ => self.err(format!("expected an object{}", self.found())),
        }
    }

    fn endo(&mut self) -> Result<BrEndo, DslError> {
        if self.eat("(") {
            let a = self.endo()?;
            let comp = if self.eat(".") {
                true
            } else if self.eat("+") {
                false
            } else {
                return self.err(format!("expected `.` or `+`{}", self.found()));
            };
            let b = self.endo()?;
            self.punct(")")?;
            return Ok(if comp { a.compose(&b) } else { a.plus(&b) });
        }
        let name = self.ident()?;
        if let Some(e) = self.scope.endos.get(&name) {
            return Ok(e.clone());
        }
        let t = match name.as_str() {
            "Id" => TTEndo::Id,
            "K" => TTEndo::K,
            "D" => {
                self.punct("(")?;
                let a = self.obj()?;
                self.punct(")")?;
                TTEndo::DA(a)
            }
            "C" => {
                self.punct("(")?;
                let x = self.ident()?;
                self.punct(")")?;
                TTEndo::CX(x)
            }
            m if m.len() > 1 && m.starts_with('M') && m[1..].bytes().all(|b| b.is_ascii_digit()) => match m[1..].parse() {
                Ok(n) => TTEndo::Mn(n),
                Err(_) => {
                    self.pos -= 1;
                    return self.err(format!("matrix size out of range in `{m}`"));
                }
            },
            _ => {
                self.pos -= 1;
                return self.err(format!("unknown endofunctor `{name}`"));
            }
        };
        Ok(BrEndo::single(t))
    }

    fn single_endo(&mut self, from: usize) -> Result<TTEndo, DslError> {
        let e = self.endo()?;
        match e.items() {
            [t] => Ok(t.clone()),
            _ => self.type_err(from, format!("{e} is not a single tensor-type endofunctor")),
        }
    }

    fn list<T>(&mut self, open: &'static str, close: &'static str, mut item: impl FnMut(&mut Self) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        self.punct(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.punct(",")?;
        }
    }

    fn expr(&mut self) -> Result<Val, DslError> {
        let start = self.pos;
        let name = self.ident()?;
        match self.peek() {
            Some(Tok::Punct("[")) => self.bracketed(start, &name),
            Some(Tok::Punct("(")) => self.combinator(start, &name),
            _ => match self.scope.gens.get(&name) {
                Some((a, b)) => Ok(Val::Mor(TypedMor::named(&name, a.clone(), b.clone()))),
                None => {
                    self.pos -= 1;
                    self.err(format!("undeclared generator `{name}`"))
                }
            },
        }
    }

    fn bracketed(&mut self, start: usize, name: &str) -> Result<Val, DslError> {
        if name == "id" {
            let xs = self.list("[", "]", Self::obj)?;
            return match xs.as_slice() {
                [x] => Ok(Val::Mor(TypedMor::id(x.clone()))),
                _ => self.type_err(start, "id takes one object"),
            };
        }
        if let Some(kind) = Kind::from_name(name) {
            let xs = self.list("[", "]", Self::obj)?;
            return match TypedMor::structural(kind, xs) {
                Ok(m) => Ok(Val::Mor(m)),
                Err(e) => self.type_err(start, e.to_string()),
            };
        }
        let arity = |n: usize, s: &Self, got: usize| -> Result<(), DslError> {
            if got == n {
                Ok(())
            } else {
                s.type_err(start, format!("{name} takes {n} parameters, got {got}"))
            }
        };
        let m = match name {
            "d2" | "d2plus" => {
                let xs = self.list("[", "]", Self::obj)?;
                arity(2, self, xs.len())?;
                if name == "d2" {
                    endo::d2(&xs[0], &xs[1])
                } else {
                    endo::d2_plus(&xs[0], &xs[1])
                }
            }
            "omega" => {
                self.punct("[")?;
                let t = self.single_endo(start)?;
                self.punct("]")?;
                endo::omega(&t)
            }
            "xi" => {
                self.punct("[")?;
                let t = self.single_endo(start)?;
                self.punct(",")?;
                let u = self.single_endo(start)?;
                self.punct("]")?;
                endo::xi_tt(&t, &u)
            }
            "kappa" | "assoc" | "lc" | "rc" | "eid" | "lambda" => {
                let xs = self.list("[", "]", Self::endo)?;
                match name {
                    "kappa" => {
                        arity(2, self, xs.len())?;
                        endo::kappa_br(&xs[0], &xs[1])
                    }
                    "eid" => {
                        arity(1, self, xs.len())?;
                        EndoMor::id(&xs[0])
                    }
                    "lambda" => {
                        arity(1, self, xs.len())?;
                        endo::lambda_of(&xs[0])
                    }
                    _ => {
                        arity(3, self, xs.len())?;
                        let f = match name {
                            "assoc" => endo::assoc,
                            "lc" => endo::lc,
                            _ => endo::rc,
                        };
                        f(&xs[0], &xs[1], &xs[2])
                    }
                }
            }
            _ => {
                self.pos = start;
                return self.err(format!("unknown constructor `{name}`"));
            }
        };
        Ok(Val::Endo(m))
    }

    fn combinator(&mut self, start: usize, name: &str) -> Result<Val, DslError> {
        let args = match name {
            "comp" | "ten" | "plus" | "hcomp" | "inv" | "ev" | "dphi" => self.list("(", ")", Self::expr)?,
            _ => {
                self.pos = start;
                return self.err(format!("unknown combinator `{name}`"));
            }
        };
        let want = match name {
            "inv" | "ev" | "dphi" => 1,
            "comp" => args.len().max(2),
            _ => 2,
        };
        if args.len() != want {
            return self.type_err(start, format!("{name} takes {want} arguments, got {}", args.len()));
        }
        let fail = |s: &Self, msg: String| s.type_err::<Val>(start, msg);
        match name {
            "inv" => match &args[0] {
                Val::Mor(m) => m.inverse().map(Val::Mor).or_else(|e| fail(self, e.to_string())),
                Val::Endo(m) => m.inverse().map(Val::Endo).or_else(|e| fail(self, e.to_string())),
            },
            "ev" => match &args[0] {
                Val::Endo(m) => Ok(Val::Mor(m.body.clone())),
                Val::Mor(_) => fail(self, "ev expects an endofunctor morphism".into()),
            },
            "dphi" => match &args[0] {
                Val::Mor(m) => Ok(Val::Endo(endo::d_phi(m))),
                Val::Endo(_) => fail(self, "dphi expects a morphism".into()),
            },
            "comp" => {
                let mut it = args.into_iter().rev();
                let mut acc = it.next().expect("at least two");
                for g in it {
                    acc = match (g, acc) {
                        (Val::Mor(g), Val::Mor(f)) => Val::Mor(g.after(&f).or_else(|e| self.type_err(start, e.to_string()))?),
                        (Val::Endo(g), Val::Endo(f)) => {
                            Val::Endo(g.after(&f).or_else(|e| self.type_err(start, e.to_string()))?)
                        }
                        _ => return fail(self, "cannot compose a morphism with an endofunctor morphism".into()),
                    };
                }
                Ok(acc)
            }
            _ => {
                let (a, b) = (&args[0], &args[1]);
                match (name, a, b) {
                    ("ten", Val::Mor(f), Val::Mor(g)) => Ok(Val::Mor(f.tensor(g))),
                    ("plus", Val::Mor(f), Val::Mor(g)) => Ok(Val::Mor(f.oplus(g))),
                    ("plus", Val::Endo(f), Val::Endo(g)) => Ok(Val::Endo(f.plus(g))),
                    ("hcomp", Val::Endo(f), Val::Endo(g)) => Ok(Val::Endo(f.hcomp(g))),
                    _ => fail(self, format!("{name} does not apply to these arguments")),
                }
            }
        }
    }
}

fn tok_len(t: &Tok) -> usize {
    match t {
        Tok::Ident(s) | Tok::Num(s) => s.len(),
        Tok::Punct(p) => p.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_parses() {
        let src = "diagram pentagon {
            obj w x y z;
            assert comp(alphaT[w, x, ten(y, z)], alphaT[(w * x), y, z])
                == comp(ten(id[w], alphaT[x, y, z]), alphaT[w, (x * y), z], ten(alphaT[w, x, y], id[z]))
                mode exact;
        }";
        let d = parse(src).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].name, "pentagon");
        assert!(matches!(d[0].items[0], Item::Assert { mode: Mode::Exact, .. }));
    }

    #[test]
    fn malformed_bracket_is_located() {
        let src = "diagram d {\n  obj a;\n  assert xiT[a, a) == id[(a * a)] mode exact;\n}";
        match parse(src) {
            Err(DslError::Parse { line, col, .. }) => assert_eq!((line, col), (3, 18)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_parallel_is_a_type_error() {
        let src = "diagram d { obj a b; assert xiT[a, b] == id[(a * b)] mode exact; }";
        assert!(matches!(parse(src), Err(DslError::Type { .. })));
    }

    #[test]
    fn model_parameters() {
        let src = "diagram d { obj a; assert id[a] == id[a] mode model(count=3, maxdim=2, seed=7, tol=1e-9); }";
        let d = parse(src).unwrap();
        let Item::Assert { mode: Mode::Model(p), .. } = &d[0].items[0] else { panic!() };
        assert_eq!(*p, ModelParams { count: Some(3), maxdim: Some(2), seed: Some(7), tol: Some(1e-9) });
    }

    #[test]
    fn endo_level_terms() {
        let src = "diagram k { endo T = K; endo S = M2;
            assert ev(kappa[T, S]) == xiT[ev(T), ev(S)] mode exact; }";
        assert!(parse(src).is_ok());
    }
}
