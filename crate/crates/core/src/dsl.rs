//! Surface syntax for cycle expressions.
//!
//! Grammar (EBNF, whitespace insensitive):
//!
//! ```text
//!   expr   := term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := atom ('^' uint)?
//!   atom   := rational | ident '(' args ')' | ident | '(' expr ')'
//!   rational := uint ('/' uint)?
//! ```
//!
//! Recognized idents: `h`, `o`, `tau`, `pi`, `delta`, `delta_sm`. Parsing
//! checks syntax only; index ranges against the ambient power m are
//! validated when an AST is evaluated, so the same text is reusable across
//! different m. `print` emits a canonical form with minimal parentheses and
//! `parse(print(ast)) = ast`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::corresp::{ck_projectors, diagonal, small_diagonal, tau_class};
use crate::model::{h_power, point_class, GradedClass, ModelError, Space, VarietyModel};
use crate::rat::Rat;
use crate::taut::{Gen, TautError, TautExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Num(Rat),
    Gen { name: String, args: Vec<usize> },
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid expression: {0}")]
    Invalid(String),
    #[error("{0}")]
    Taut(#[from] TautError),
    #[error("{0}")]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Comma => write!(f, ","),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn tokenize(text: &str) -> Result<Lexer, DslError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col);
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Int(s.parse().unwrap()), tl, tc));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col);
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), tl, tc));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => {
                return Err(DslError::Syntax {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        toks.push((tok, tl, tc));
        advance(&mut i, &mut line, &mut col);
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|&(_, l, c)| (l, c)).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> DslError {
        let (line, col) = self.here();
        DslError::Syntax { line, col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), DslError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected '{want}', got '{t}'"))),
            None => Err(self.err(format!("expected '{want}', got end of input"))),
        }
    }

    fn uint(&mut self) -> Result<BigInt, DslError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(n)) = self.bump() else { unreachable!() };
                Ok(n)
            }
            Some(t) => Err(self.err(format!("expected an integer, got '{t}'"))),
            None => Err(self.err("expected an integer, got end of input")),
        }
    }

    fn expr(&mut self) -> Result<Ast, DslError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, DslError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ast, DslError> {
        let atom = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let n = self.uint()?;
            let exp: usize = n
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(Ast::Pow(Box::new(atom), exp));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Ast, DslError> {
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let p = self.uint()?;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let (l, c) = self.here();
                    let q = self.uint()?;
                    if q.is_zero() {
                        return Err(DslError::Syntax {
                            line: l,
                            col: c,
                            msg: "zero denominator".into(),
                        });
                    }
                    Ok(Ast::Num(Rat::new(p, q)))
                } else {
                    Ok(Ast::Num(Rat::from_integer(p)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    loop {
                        let n = self.uint()?;
                        let v: usize =
                            n.try_into().map_err(|_| self.err("index too large"))?;
                        args.push(v);
                        match self.peek() {
                            Some(Tok::Comma) => {
                                self.pos += 1;
                            }
                            Some(Tok::RParen) => {
                                self.pos += 1;
                                break;
                            }
                            Some(t) => {
                                return Err(self.err(format!("expected ',' or ')', got '{t}'")))
                            }
                            None => return Err(self.err("expected ',' or ')', got end of input")),
                        }
                    }
                }
                Ok(Ast::Gen { name, args })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some(t) => Err(self.err(format!("expected an atom, got '{t}'"))),
            None => Err(self.err("expected an atom, got end of input")),
        }
    }
}

pub fn parse(text: &str) -> Result<Ast, DslError> {
    let lexer = tokenize(text)?;
    let end = {
        let lines = text.lines().count().max(1);
        let last_len = text.lines().last().map(|l| l.chars().count()).unwrap_or(0);
        (lines, last_len + 1)
    };
    let mut p = Parser { toks: lexer.toks, pos: 0, end };
    let ast = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.err(format!("trailing input starting at '{t}'")));
    }
    Ok(ast)
}

fn prec(ast: &Ast) -> u8 {
    match ast {
        Ast::Add(..) | Ast::Sub(..) => 1,
        Ast::Mul(..) => 2,
        Ast::Pow(..) => 3,
        Ast::Num(_) | Ast::Gen { .. } => 4,
    }
}

fn print_into(ast: &Ast, out: &mut String) {
    let bin = |l: &Ast, op: &str, r: &Ast, p: u8, out: &mut String| {
        let wrap_l = prec(l) < p;
        let wrap_r = prec(r) <= p;
        if wrap_l {
            out.push('(');
        }
        print_into(l, out);
        if wrap_l {
            out.push(')');
        }
        out.push_str(op);
        if wrap_r {
            out.push('(');
        }
        print_into(r, out);
        if wrap_r {
            out.push(')');
        }
    };
    match ast {
        Ast::Num(r) => {
            out.push_str(&crate::rat::rat_str(r));
        }
        Ast::Gen { name, args } => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&a.to_string());
                }
                out.push(')');
            }
        }
        Ast::Add(l, r) => bin(l, " + ", r, 1, out),
        Ast::Sub(l, r) => bin(l, " - ", r, 1, out),
        Ast::Mul(l, r) => bin(l, "*", r, 2, out),
        Ast::Pow(b, e) => {
            let wrap = prec(b) < 4;
            if wrap {
                out.push('(');
            }
            print_into(b, out);
            if wrap {
                out.push(')');
            }
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Canonical text form; `parse(print(ast)) = ast` for every AST whose
/// rational literals are nonnegative (the grammar has no unary minus).
pub fn print(ast: &Ast) -> String {
    let mut s = String::new();
    print_into(ast, &mut s);
    s
}

/// Expands an AST into a formal tautological expression on the m-th power.
/// Only `h(i)`, `o(i)`, `tau(i,j)` and rational literals are allowed here;
/// index ranges are validated against m.
pub fn to_taut_expr(ast: &Ast, m: usize) -> Result<TautExpr, DslError> {
    let terms = expand_taut(ast)?;
    TautExpr::new(m, terms).map_err(DslError::from)
}

fn expand_taut(ast: &Ast) -> Result<Vec<(Rat, Vec<Gen>)>, DslError> {
    match ast {
        Ast::Num(r) => Ok(vec![(r.clone(), Vec::new())]),
        Ast::Gen { name, args } => {
            let g = match (name.as_str(), args.len()) {
                ("h", 1) => Gen::H(args[0]),
                ("o", 1) => Gen::O(args[0]),
                ("tau", 2) => Gen::tau(args[0], args[1])?,
                ("h" | "o", n) => {
                    return Err(DslError::Invalid(format!("{name} takes 1 index, got {n}")))
                }
                ("tau", n) => {
                    return Err(DslError::Invalid(format!("tau takes 2 indices, got {n}")))
                }
                _ => {
                    return Err(DslError::Invalid(format!(
                        "'{name}' is not a tautological generator (expected h, o, or tau)"
                    )))
                }
            };
            Ok(vec![(Rat::one(), vec![g])])
        }
        Ast::Add(l, r) => {
            let mut terms = expand_taut(l)?;
            terms.extend(expand_taut(r)?);
            Ok(terms)
        }
        Ast::Sub(l, r) => {
            let mut terms = expand_taut(l)?;
            terms.extend(expand_taut(r)?.into_iter().map(|(c, g)| (-c, g)));
            Ok(terms)
        }
        Ast::Mul(l, r) => {
            let lt = expand_taut(l)?;
            let rt = expand_taut(r)?;
            let mut out = Vec::with_capacity(lt.len() * rt.len());
            for (cl, gl) in &lt {
                for (cr, gr) in &rt {
                    let mut gens = gl.clone();
                    gens.extend(gr.iter().cloned());
                    out.push((cl * cr, gens));
                }
            }
            Ok(out)
        }
        Ast::Pow(b, e) => {
            let mut out = vec![(Rat::one(), Vec::new())];
            let base = expand_taut(b)?;
            for _ in 0..*e {
                let mut next = Vec::with_capacity(out.len() * base.len());
                for (cl, gl) in &out {
                    for (cr, gr) in &base {
                        let mut gens = gl.clone();
                        gens.extend(gr.iter().cloned());
                        next.push((cl * cr, gens));
                    }
                }
                out = next;
            }
            Ok(out)
        }
    }
}

/// Evaluates an AST as a cohomology class on the m-th power of a model.
/// Beyond the tautological generators this also resolves `delta` (m = 2),
/// `delta_sm` (m = 3), and `pi(j)` (m = 2, the CK projector class).
pub fn to_class(
    ast: &Ast,
    model: &Arc<VarietyModel>,
    m: usize,
) -> Result<GradedClass, DslError> {
    let power = Space::power(model.clone(), m);
    eval_class(ast, model, &power)
}

fn eval_class(
    ast: &Ast,
    model: &Arc<VarietyModel>,
    power: &Arc<Space>,
) -> Result<GradedClass, DslError> {
    let m = power.num_factors();
    let check_idx = |i: usize| -> Result<(), DslError> {
        if i < 1 || i > m {
            Err(DslError::Invalid(format!("index {i} out of range 1..={m}")))
        } else {
            Ok(())
        }
    };
    match ast {
        Ast::Num(r) => Ok(GradedClass::unit(power.clone()).scale(r)),
        Ast::Gen { name, args } => match (name.as_str(), args.as_slice()) {
            ("h", &[i]) => {
                check_idx(i)?;
                Ok(h_power(model, 1).pullback(power, &[i - 1])?)
            }
            ("o", &[i]) => {
                check_idx(i)?;
                Ok(point_class(model).pullback(power, &[i - 1])?)
            }
            ("tau", &[i, j]) => {
                check_idx(i)?;
                check_idx(j)?;
                if i == j {
                    return Err(DslError::Invalid(format!(
                        "tau({i},{j}): indices must differ"
                    )));
                }
                let t = tau_class(model)?;
                Ok(if i < j {
                    t.pullback(power, &[i - 1, j - 1])?
                } else {
                    // τ is symmetric in its two slots only up to the odd
                    // transposition sign; build the transposed class honestly
                    crate::corresp::Correspondence::new(t)?
                        .transpose()
                        .class
                        .pullback(power, &[j - 1, i - 1])?
                })
            }
            ("delta", &[]) => {
                if m != 2 {
                    return Err(DslError::Invalid(format!("delta needs m = 2, got m = {m}")));
                }
                Ok(diagonal(model)?.class.pullback(power, &[0, 1])?)
            }
            ("delta_sm", &[]) => {
                if m != 3 {
                    return Err(DslError::Invalid(format!(
                        "delta_sm needs m = 3, got m = {m}"
                    )));
                }
                Ok(small_diagonal(model)?.pullback(power, &[0, 1, 2])?)
            }
            ("pi", &[j]) => {
                if m != 2 {
                    return Err(DslError::Invalid(format!("pi needs m = 2, got m = {m}")));
                }
                let ps = ck_projectors(model)?;
                let p = ps.projector(j).ok_or_else(|| {
                    DslError::Invalid(format!(
                        "no projector of weight {j}; available: {:?}",
                        ps.weights()
                    ))
                })?;
                Ok(p.class.pullback(power, &[0, 1])?)
            }
            _ => Err(DslError::Invalid(format!(
                "unknown generator '{name}' with {} argument(s)",
                args.len()
            ))),
        },
        Ast::Add(l, r) => Ok(eval_class(l, model, power)?.add(&eval_class(r, model, power)?)?),
        Ast::Sub(l, r) => Ok(eval_class(l, model, power)?.sub(&eval_class(r, model, power)?)?),
        Ast::Mul(l, r) => Ok(eval_class(l, model, power)?.cup(&eval_class(r, model, power)?)?),
        Ast::Pow(b, e) => {
            let base = eval_class(b, model, power)?;
            let mut acc = GradedClass::unit(power.clone());
            for _ in 0..*e {
                acc = acc.cup(&base)?;
            }
            Ok(acc)
        }
    }
}
