//! Presentations `k<z_1..z_g>/(R)` and the line-oriented presentation file format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{NCPoly, Word};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub poly: NCPoly,
    pub degree: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    /// Symbol naming the field generator in expressions.
    pub var: String,
    pub params: Vec<(String, Scalar)>,
    pub gens: Vec<Generator>,
    pub relations: Vec<Relation>,
    /// Variable precedence, smallest first. `None` means file order.
    pub order: Option<Vec<usize>>,
}

impl Presentation {
    pub fn new(field: Field, gens: Vec<Generator>) -> Presentation {
        Presentation { field, var: "u".into(), params: Vec::new(), gens, relations: Vec::new(), order: None }
    }

    /// Two degree-one generators graded by `(1,1,0)` and `(1,0,1)`.
    pub fn two_generator(field: Field) -> Presentation {
        Presentation::new(
            field,
            vec![
                Generator { name: "z1".into(), degree: vec![1, 1, 0] },
                Generator { name: "z2".into(), degree: vec![1, 0, 1] },
            ],
        )
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }
    pub fn degrees(&self) -> Vec<Vec<i64>> {
        self.gens.iter().map(|g| g.degree.clone()).collect()
    }
    pub fn grading_rank(&self) -> usize {
        self.gens.first().map_or(1, |g| g.degree.len())
    }
    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Adds a relation after checking homogeneity.
    pub fn add_relation(&mut self, poly: NCPoly) -> Result<()> {
        let degs = self.degrees();
        if poly.is_zero() {
            return Err(Error::Invalid("relation is zero".into()));
        }
        let d = poly
            .homogeneous_degree(&degs)
            .ok_or_else(|| Error::Invalid("inhomogeneous relation".into()))?;
        if d[0] < 2 {
            return Err(Error::Invalid("relation of Adams degree below 2".into()));
        }
        for (_, c) in poly.terms() {
            if self.field.join(c.field()) != Some(self.field) {
                return Err(Error::FieldMismatch);
            }
        }
        self.relations.push(Relation { poly, degree: d });
        Ok(())
    }

    pub fn max_relation_degree(&self) -> i64 {
        self.relations.iter().map(|r| r.degree[0]).max().unwrap_or(0)
    }

    /// Renders an element with this presentation's names.
    pub fn show(&self, p: &NCPoly) -> String {
        p.render(&self.names(), &self.var)
    }
    pub fn show_word(&self, w: &Word) -> String {
        w.render(&self.names())
    }
    pub fn show_scalar(&self, s: &Scalar) -> String {
        s.to_text(&self.var)
    }

    /// Parses an element expression over this presentation's generators and parameters.
    pub fn parse_expr(&self, text: &str) -> Result<NCPoly> {
        let ctx = Ctx { pres: self, line: 1 };
        let toks = tokenize(text, 1)?;
        let mut p = ExprParser { toks: &toks, pos: 0, ctx: &ctx };
        let v = p.expr()?;
        p.expect_end()?;
        Ok(v)
    }

    /// Serialises to the presentation file format. `parse_presentation` inverts it.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("field {}\n", self.field.describe(&self.var)));
        for (name, v) in &self.params {
            s.push_str(&format!("param {} = {}\n", name, v.to_text(&self.var)));
        }
        for g in &self.gens {
            let d: Vec<String> = g.degree.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("gen {} : ({})\n", g.name, d.join(",")));
        }
        if let Some(ord) = &self.order {
            let names: Vec<&str> = ord.iter().map(|&i| self.gens[i].name.as_str()).collect();
            s.push_str(&format!("order {}\n", names.join(" ")));
        }
        for r in &self.relations {
            s.push_str(&format!("rel {}\n", self.show(&r.poly)));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[st..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line, col });
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[st..i].iter().collect()), line, col });
        } else if "+-*/^()[],:=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, col });
            i += 1;
        } else {
            return Err(Error::Parse { line, col, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Ctx<'a> {
    pres: &'a Presentation,
    line: usize,
}

struct ExprParser<'a> {
    toks: &'a [Token],
    pos: usize,
    ctx: &'a Ctx<'a>,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }
    fn err_here(&self, msg: impl Into<String>) -> Error {
        let (line, col) = match self.peek() {
            Some(t) => (t.line, t.col),
            None => (self.ctx.line, self.toks.last().map_or(1, |t| t.col + 1)),
        };
        Error::Parse { line, col, msg: msg.into() }
    }
    fn eat(&mut self, c: char) -> bool {
        if let Some(Token { tok: Tok::Sym(s), .. }) = self.peek() {
            if *s == c {
                self.pos += 1;
                return true;
            }
        }
        false
    }
    fn expect_end(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.err_here("unexpected token"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.sub(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = acc.try_mul(&f).map_err(|_| self.err_here("mixed fields"))?;
            } else if self.eat('/') {
                let tok_pos = self.pos;
                let f = self.factor()?;
                let s = as_scalar(&f).ok_or_else(|| Error::Parse {
                    line: self.toks[tok_pos].line,
                    col: self.toks[tok_pos].col,
                    msg: "division by a non-scalar".into(),
                })?;
                if s.is_zero() {
                    return Err(Error::Parse {
                        line: self.toks[tok_pos].line,
                        col: self.toks[tok_pos].col,
                        msg: "division by zero".into(),
                    });
                }
                acc = acc.scale(&s.inv());
            } else if matches!(self.peek(), Some(Token { tok: Tok::Sym('('), .. }))
                || matches!(self.peek(), Some(Token { tok: Tok::Ident(_), .. }))
            {
                // implicit product, e.g. `2(z1+z2)` is not allowed; require '*'
                return Err(self.err_here("expected '*' between factors"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let negative = self.eat('-');
            let t = self.peek().cloned();
            match t {
                Some(Token { tok: Tok::Int(n), line, col }) => {
                    self.pos += 1;
                    let e = n.to_u32().ok_or(Error::Parse { line, col, msg: "exponent too large".into() })?;
                    if negative {
                        let s = as_scalar(&base).ok_or(Error::Parse {
                            line,
                            col,
                            msg: "negative power of a non-scalar".into(),
                        })?;
                        if s.is_zero() {
                            return Err(Error::Parse { line, col, msg: "negative power of zero".into() });
                        }
                        return Ok(NCPoly::constant(s.pow(-(e as i64))));
                    }
                    Ok(base.pow(e))
                }
                _ => Err(self.err_here("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let t = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.err_here("unexpected end of expression")),
        };
        match t.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(NCPoly::constant(Scalar::from_rational(BigRational::from_integer(n))))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                let pres = self.ctx.pres;
                if let Some(i) = pres.gen_index(&name) {
                    return Ok(NCPoly::generator(i));
                }
                if let Some((_, v)) = pres.params.iter().rev().find(|(n, _)| *n == name) {
                    return Ok(NCPoly::constant(v.clone()));
                }
                if name == pres.var && pres.field != Field::Rationals {
                    return Ok(NCPoly::constant(pres.field.generator()));
                }
                Err(Error::Parse {
                    line: t.line,
                    col: t.col,
                    msg: format!("unbound parameter or unknown generator '{name}'"),
                })
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err_here("expected ')'"));
                }
                Ok(v)
            }
            _ => Err(self.err_here("unexpected token")),
        }
    }
}

fn as_scalar(p: &NCPoly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    if p.len() == 1 {
        let (w, c) = p.terms().next().unwrap();
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

pub(crate) fn parse_field(rest: &str, line: usize, col0: usize) -> Result<(Field, String)> {
    let t = rest.trim();
    if t == "Q" {
        return Ok((Field::Rationals, "u".into()));
    }
    let perr = |msg: &str| Error::Parse { line, col: col0, msg: msg.into() };
    let inner = t.strip_prefix("Q[").ok_or_else(|| perr("expected 'Q' or 'Q[u]/(f)'"))?;
    let (var, poly) = inner.split_once("]/").ok_or_else(|| perr("expected 'Q[u]/(f)'"))?;
    let var = var.trim().to_string();
    if var.is_empty() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(perr("bad field variable name"));
    }
    // evaluate f as a polynomial in one generator with integer coefficients
    let helper = Presentation::new(
        Field::Rationals,
        vec![Generator { name: var.clone(), degree: vec![1] }],
    );
    let toks = tokenize(poly, line)?;
    let toks: Vec<Token> = toks.into_iter().map(|mut t| {
        t.col += col0 + 4 + var.len();
        t
    }).collect();
    let ctx = Ctx { pres: &helper, line };
    let mut p = ExprParser { toks: &toks, pos: 0, ctx: &ctx };
    let f = p.expr()?;
    p.expect_end()?;
    let deg = f.terms().map(|(w, _)| w.len()).max().unwrap_or(0);
    let mut coeffs = vec![0i64; deg + 1];
    for (w, c) in f.terms() {
        let r = c.as_rational().ok_or_else(|| perr("minimal polynomial must have rational coefficients"))?;
        if !r.is_integer() {
            return Err(perr("minimal polynomial must have integer coefficients"));
        }
        coeffs[w.len()] = r.to_integer().to_i64().ok_or_else(|| perr("coefficient too large"))?;
    }
    if coeffs.last() != Some(&1) {
        return Err(perr("minimal polynomial must be monic"));
    }
    let field = Field::from_monic(&coeffs).map_err(|e| match e {
        Error::ReducibleField(m) => Error::Parse { line, col: col0, msg: format!("reducible minimal polynomial: {m}") },
        other => Error::Parse { line, col: col0, msg: other.to_string() },
    })?;
    Ok((field, var))
}

/// Parses a field description such as `Q` or `Q[u]/(u^2+1)`; returns the field and its variable name.
pub fn parse_field_text(text: &str) -> Result<(Field, String)> {
    parse_field(text, 1, 1)
}

/// Parses the presentation file format:
/// `field Q` | `field Q[u]/(u^2+1)`, `param p = expr`, `gen z1 : (1,0)`, `order z1 z2`, `rel expr`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut pres = Presentation::new(Field::Rationals, Vec::new());
    let mut seen_rel = false;
    let mut order_names: Option<(Vec<String>, usize)> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.len() - trimmed.len();
        let (kw, rest) = match trimmed.find(char::is_whitespace) {
            Some(i) => (&trimmed[..i], &trimmed[i..]),
            None => (trimmed, ""),
        };
        let rest_col = lead + kw.len() + 1;
        let shift = |mut toks: Vec<Token>| {
            for t in toks.iter_mut() {
                t.col += rest_col - 1;
            }
            toks
        };
        match kw {
            "field" => {
                if !pres.gens.is_empty() || !pres.params.is_empty() {
                    return Err(Error::Parse { line, col: lead + 1, msg: "field must precede params and generators".into() });
                }
                let (f, v) = parse_field(rest, line, rest_col)?;
                pres.field = f;
                pres.var = v;
            }
            "param" => {
                let (name, expr) = rest.split_once('=').ok_or(Error::Parse {
                    line,
                    col: rest_col,
                    msg: "expected 'param NAME = EXPR'".into(),
                })?;
                let name = name.trim().to_string();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(Error::Parse { line, col: rest_col, msg: "bad parameter name".into() });
                }
                let toks = shift(tokenize(expr, line)?);
                let toks: Vec<Token> = toks.into_iter().map(|mut t| {
                    t.col += rest.find('=').unwrap() + 1;
                    t
                }).collect();
                let ctx = Ctx { pres: &pres, line };
                let mut p = ExprParser { toks: &toks, pos: 0, ctx: &ctx };
                let v = p.expr()?;
                p.expect_end()?;
                let s = as_scalar(&v).ok_or(Error::Parse {
                    line,
                    col: rest_col,
                    msg: "parameter value must be a scalar".into(),
                })?;
                pres.params.push((name, s));
            }
            "gen" => {
                if seen_rel {
                    return Err(Error::Parse { line, col: lead + 1, msg: "generators must precede relations".into() });
                }
                let toks = shift(tokenize(rest, line)?);
                let name = match toks.first() {
                    Some(Token { tok: Tok::Ident(n), .. }) => n.clone(),
                    _ => return Err(Error::Parse { line, col: rest_col, msg: "expected generator name".into() }),
                };
                if pres.gen_index(&name).is_some() || name == pres.var {
                    return Err(Error::Parse { line, col: rest_col, msg: format!("duplicate name '{name}'") });
                }
                let mut degree = Vec::new();
                let mut i = 1;
                let expect = |i: usize, c: char| -> Result<()> {
                    match toks.get(i) {
                        Some(Token { tok: Tok::Sym(s), .. }) if *s == c => Ok(()),
                        Some(t) => Err(Error::Parse { line, col: t.col, msg: format!("expected '{c}'") }),
                        None => Err(Error::Parse { line, col: rest_col + rest.len(), msg: format!("expected '{c}'") }),
                    }
                };
                expect(i, ':')?;
                i += 1;
                let paren = matches!(toks.get(i), Some(Token { tok: Tok::Sym('('), .. }));
                if paren {
                    i += 1;
                }
                loop {
                    let neg = matches!(toks.get(i), Some(Token { tok: Tok::Sym('-'), .. }));
                    if neg {
                        i += 1;
                    }
                    match toks.get(i) {
                        Some(Token { tok: Tok::Int(n), line: l, col: c }) => {
                            let v = n.to_i64().ok_or(Error::Parse { line: *l, col: *c, msg: "degree too large".into() })?;
                            degree.push(if neg { -v } else { v });
                            i += 1;
                        }
                        Some(t) => return Err(Error::Parse { line, col: t.col, msg: "expected integer degree".into() }),
                        None => return Err(Error::Parse { line, col: rest_col + rest.len(), msg: "expected integer degree".into() }),
                    }
                    if !paren {
                        break;
                    }
                    if matches!(toks.get(i), Some(Token { tok: Tok::Sym(','), .. })) {
                        i += 1;
                        continue;
                    }
                    expect(i, ')')?;
                    i += 1;
                    break;
                }
                if let Some(t) = toks.get(i) {
                    return Err(Error::Parse { line, col: t.col, msg: "unexpected token".into() });
                }
                if degree.is_empty() || degree.len() > 3 {
                    return Err(Error::Parse { line, col: rest_col, msg: "Adams degree must have 1 to 3 components".into() });
                }
                if degree[0] < 1 {
                    return Err(Error::Parse { line, col: rest_col, msg: "generator degree must be at least 1".into() });
                }
                if let Some(g) = pres.gens.first() {
                    if g.degree.len() != degree.len() {
                        return Err(Error::Parse { line, col: rest_col, msg: "all generators need the same grading rank".into() });
                    }
                }
                if pres.gens.len() >= 255 {
                    return Err(Error::Parse { line, col: rest_col, msg: "too many generators".into() });
                }
                pres.gens.push(Generator { name, degree });
            }
            "order" => {
                let names: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
                order_names = Some((names, line));
            }
            "rel" => {
                seen_rel = true;
                let toks = shift(tokenize(rest, line)?);
                let ctx = Ctx { pres: &pres, line };
                let mut p = ExprParser { toks: &toks, pos: 0, ctx: &ctx };
                let v = p.expr()?;
                p.expect_end()?;
                let col = rest_col + (rest.len() - rest.trim_start().len());
                let degs = pres.degrees();
                if v.is_zero() {
                    return Err(Error::Parse { line, col, msg: "relation is zero".into() });
                }
                let Some(d) = v.homogeneous_degree(&degs) else {
                    let ds: Vec<String> = v.multidegrees(&degs).iter().map(|d| format!("{d:?}")).collect();
                    return Err(Error::Parse {
                        line,
                        col,
                        msg: format!("inhomogeneous relation (term degrees {})", ds.join(", ")),
                    });
                };
                if d[0] < 2 {
                    return Err(Error::Parse { line, col, msg: "relation of Adams degree below 2".into() });
                }
                pres.relations.push(Relation { poly: v, degree: d });
            }
            other => {
                return Err(Error::Parse { line, col: lead + 1, msg: format!("unknown directive '{other}'") });
            }
        }
    }
    if let Some((names, line)) = order_names {
        let mut idx = Vec::new();
        for n in &names {
            let i = pres
                .gen_index(n)
                .ok_or(Error::Parse { line, col: 1, msg: format!("unknown generator '{n}' in order") })?;
            idx.push(i);
        }
        let mut sorted = idx.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != pres.gens.len() || idx.len() != pres.gens.len() {
            return Err(Error::Parse { line, col: 1, msg: "order must list every generator once".into() });
        }
        if idx != (0..pres.gens.len()).collect::<Vec<_>>() {
            pres.order = Some(idx);
        }
    }
    Ok(pres)
}

/// Checks that a scalar is a nonzero rational integer-free value usable as parameter.
pub fn nonzero(s: &Scalar, what: &str) -> Result<()> {
    if s.is_zero() {
        Err(Error::Invalid(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

#[allow(dead_code)]
fn zero_rat() -> BigRational {
    BigRational::zero()
}
