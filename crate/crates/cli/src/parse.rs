//! Ring declarations and the Chern-class expression language.
//!
//! ```text
//! expr    := '-'? term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ('^' uint)?
//! atom    := int | 'c' uint '(' vbundle ')' | 'S' '[' partition ']' '(' vbundle ')' | '(' expr ')'
//! vbundle := bundle ('-' bundle)?
//! bundle  := name '~'?
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use thom_core::algebra::CommRing;
use thom_core::chern::{super_schur, virtual_chern, BundleRing, FormalBundle, GradedPolynomial};
use thom_core::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    SyntaxError,
    UnknownBundle,
    DegreeOverflow,
}

impl ParseErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            Self::SyntaxError => "SyntaxError",
            Self::UnknownBundle => "UnknownBundle",
            Self::DegreeOverflow => "DegreeOverflow",
        }
    }
}

/// A parse failure at byte offset `position` of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}: {}", self.kind.code(), self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError { kind: ParseErrorKind::SyntaxError, message: message.into(), position }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `E:2,L:1` plus an optional working-degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub slots: Vec<(String, u32)>,
    pub max_degree: Option<u32>,
}

impl RingDecl {
    pub fn with_max_degree(mut self, bound: Option<u32>) -> Self {
        self.max_degree = bound;
        self
    }

    pub fn build(&self) -> thom_core::Result<Arc<BundleRing>> {
        BundleRing::with_working_degree(&self.slots, self.max_degree)
    }
}

impl FromStr for RingDecl {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut slots: Vec<(String, u32)> = Vec::new();
        let mut offset = 0;
        for piece in s.split(',') {
            let at = offset + piece.len() - piece.trim_start().len();
            offset += piece.len() + 1;
            let (name, rank) = piece.split_once(':').ok_or_else(|| syntax(at, "expected name:rank"))?;
            let name = name.trim();
            if !is_identifier(name) {
                return Err(syntax(at, format!("{name:?} is not a bundle name")));
            }
            if slots.iter().any(|(n, _)| n == name) {
                return Err(syntax(at, format!("bundle {name} declared twice")));
            }
            let rank = rank.trim().parse::<u32>().map_err(|_| syntax(at, format!("bad rank for {name}")))?;
            slots.push((name.to_string(), rank));
        }
        Ok(Self { slots, max_degree: None })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleRef {
    pub slot: usize,
    pub dual: bool,
}

/// `plus - minus`, either side possibly dualized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VBundle {
    pub plus: BundleRef,
    pub minus: Option<BundleRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Chern { degree: u32, bundle: VBundle },
    Schur { partition: Partition, bundle: VBundle },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Uint(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Uint(src[start..i].to_string()), start));
        } else if "+-*^()[],~".contains(c) {
            out.push((Tok::Sym(c), start));
            i += 1;
        } else {
            let ch = src[start..].chars().next().unwrap_or(c);
            return Err(syntax(start, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ring: &'a BundleRing,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.at_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected '{c}'")))
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Uint(s)) => {
                let v = s.parse().map_err(|_| syntax(at, "integer too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(syntax(at, "expected an unsigned integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.at_sym('-') {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.at_sym('+') {
                self.pos += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.at_sym('-') {
                self.pos += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.at_sym('*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.at_sym('^') {
            self.pos += 1;
            let k = self.uint()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Uint(s)) => {
                self.pos += 1;
                Ok(Expr::Int(s.parse().expect("digits")))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "S" => {
                self.pos += 1;
                self.expect('[')?;
                let partition = self.partition()?;
                self.expect(']')?;
                let bundle = self.vbundle()?;
                Ok(Expr::Schur { partition, bundle })
            }
            Some(Tok::Ident(name)) if name.len() > 1 && name.starts_with('c') && name[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let degree: u32 = name[1..].parse().map_err(|_| syntax(at, "Chern degree too large"))?;
                self.pos += 1;
                let bundle = self.vbundle()?;
                if bundle.minus.is_none() {
                    let slot = self.ring.slot(bundle.plus.slot);
                    if degree > slot.rank {
                        return Err(ParseError {
                            kind: ParseErrorKind::DegreeOverflow,
                            message: format!("c{degree} of {} which has rank {}", slot.name, slot.rank),
                            position: at,
                        });
                    }
                }
                Ok(Expr::Chern { degree, bundle })
            }
            Some(_) => Err(syntax(at, "expected an integer, c<i>(...), S[...](...) or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }

    fn partition(&mut self) -> Result<Partition, ParseError> {
        let at = self.offset();
        self.expect('(')?;
        let mut parts = Vec::new();
        if !self.at_sym(')') {
            parts.push(self.uint()?);
            while self.at_sym(',') {
                self.pos += 1;
                parts.push(self.uint()?);
            }
        }
        self.expect(')')?;
        Partition::new(parts).map_err(|_| syntax(at, "parts must be weakly decreasing"))
    }

    fn vbundle(&mut self) -> Result<VBundle, ParseError> {
        self.expect('(')?;
        let plus = self.bundle()?;
        let minus = if self.at_sym('-') {
            self.pos += 1;
            Some(self.bundle()?)
        } else {
            None
        };
        self.expect(')')?;
        Ok(VBundle { plus, minus })
    }

    fn bundle(&mut self) -> Result<BundleRef, ParseError> {
        let at = self.offset();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(syntax(at, "expected a bundle name"));
        };
        let slot = self.ring.slot_index(&name).map_err(|_| ParseError {
            kind: ParseErrorKind::UnknownBundle,
            message: format!("no bundle named {name}"),
            position: at,
        })?;
        self.pos += 1;
        let dual = self.at_sym('~');
        if dual {
            self.pos += 1;
        }
        Ok(BundleRef { slot, dual })
    }
}

pub fn parse_expr(src: &str, ring: &BundleRing) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, end: src.len(), ring };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

fn formal(ring: &Arc<BundleRing>, b: BundleRef) -> FormalBundle {
    let f = FormalBundle::slot_at(ring, b.slot);
    if b.dual { f.dual() } else { f }
}

fn sides(ring: &Arc<BundleRing>, v: VBundle) -> (FormalBundle, FormalBundle) {
    let minus = v.minus.map_or_else(|| FormalBundle::zero(ring), |b| formal(ring, b));
    (formal(ring, v.plus), minus)
}

pub fn evaluate(e: &Expr, ring: &Arc<BundleRing>) -> thom_core::Result<GradedPolynomial> {
    Ok(match e {
        Expr::Int(n) => GradedPolynomial::constant(ring, n.clone()),
        Expr::Chern { degree, bundle } => {
            let (plus, minus) = sides(ring, *bundle);
            let series = virtual_chern(&plus, &minus, *degree)?;
            series.coeff(*degree).cloned().unwrap_or_else(|| GradedPolynomial::zero(ring))
        }
        Expr::Schur { partition, bundle } => {
            let (plus, minus) = sides(ring, *bundle);
            super_schur(partition, &plus, &minus)?
        }
        Expr::Neg(a) => evaluate(a, ring)?.neg_ref(),
        Expr::Add(a, b) => evaluate(a, ring)?.try_add(&evaluate(b, ring)?)?,
        Expr::Sub(a, b) => evaluate(a, ring)?.sub_ref(&evaluate(b, ring)?),
        Expr::Mul(a, b) => evaluate(a, ring)?.try_mul(&evaluate(b, ring)?)?,
        Expr::Pow(a, k) => evaluate(a, ring)?.pow(*k),
    })
}
