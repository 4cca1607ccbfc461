//! Text and JSON forms of ring elements and series.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*"|"/")? factor)*        juxtaposition multiplies
//! factor := "-" factor | atom ("^" ["-"] int)?
//! atom   := "E" | "g" | "h" | "T" | int | "d_" int | "[" int ("," int)* "]" | "(" expr ")"
//! ```
//!
//! `d_i` is the constant `d_i ∈ F_q[T]`, `[c0,c1,…]` an element of `F_q` by
//! its power-basis coordinates. Division and negative powers are only
//! allowed for constants.

use serde::{Deserialize, Serialize};

use crate::algebra::{d_coeff, FieldConfig, PolyT, RatT};
use crate::error::{Error, Result};
use crate::qmring::{Mono, QmPoly};
use crate::tseries::TSeries;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Gen(char),
    D(u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let read_num = |i: &mut usize| -> Result<u64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        let text: String = chars[start..*i].iter().collect();
        text.parse().map_err(|_| err(start, format!("bad integer {text:?}")))
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                out.push((pos, Tok::Num(read_num(&mut i)?)));
                continue;
            }
            'd' => {
                i += 1;
                if i < chars.len() && chars[i] == '_' {
                    i += 1;
                }
                if i >= chars.len() || !chars[i].is_ascii_digit() {
                    return Err(err(pos, "expected an index after d"));
                }
                let k = read_num(&mut i)?;
                out.push((pos, Tok::D(u32::try_from(k).map_err(|_| err(pos, "index too large"))?)));
                continue;
            }
            'E' | 'g' | 'h' | 'T' => Tok::Gen(c),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => return Err(err(pos, format!("unexpected character {other:?}"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    field: FieldConfig,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            other => Err(err(pos, format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(n),
            other => Err(err(pos, format!("expected an integer, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<QmPoly> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Gen(_) | Tok::D(_) | Tok::LParen | Tok::LBracket))
    }

    fn term(&mut self) -> Result<QmPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.factor()?;
                    let c = d.as_constant().ok_or_else(|| err(pos, "division is only by elements of K"))?;
                    let inv = c.inv().map_err(|_| err(pos, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_atom() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QmPoly> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let k = self.number()?;
        if negative {
            let c = base.as_constant().ok_or_else(|| err(pos, "negative powers are only allowed for elements of K"))?;
            let v = c.pow(-(k as i64)).map_err(|_| err(pos, "zero to a negative power"))?;
            Ok(QmPoly::constant(v))
        } else {
            Ok(base.pow(k))
        }
    }

    fn atom(&mut self) -> Result<QmPoly> {
        let f = self.field;
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(QmPoly::constant(RatT::from_int(f, (n % f.p() as u64) as i64))),
            Some(Tok::Gen('E')) => Ok(QmPoly::e(f)),
            Some(Tok::Gen('g')) => Ok(QmPoly::g(f)),
            Some(Tok::Gen('h')) => Ok(QmPoly::h(f)),
            Some(Tok::Gen(_)) => Ok(QmPoly::constant(RatT::t(f))),
            Some(Tok::D(i)) => Ok(QmPoly::constant(d_coeff(i, f).into())),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::LBracket) => {
                let mut coords = vec![self.number()? as u32];
                while self.peek() == Some(&Tok::Comma) {
                    self.bump();
                    coords.push(self.number()? as u32);
                }
                self.expect(Tok::RBracket)?;
                let c = f.from_coords(&coords).map_err(|e| err(pos, e.to_string()))?;
                Ok(QmPoly::constant(RatT::from_elem(f, c)))
            }
            other => Err(err(pos, format!("unexpected {other:?}"))),
        }
    }
}

/// Parses an element of `K[E, g, h]`.
pub fn parse_qm(field: FieldConfig, s: &str) -> Result<QmPoly> {
    let toks = tokenize(s)?;
    let mut p = Parser { field, toks, at: 0, end: s.len() };
    if p.peek().is_none() {
        return Err(err(0, "empty expression"));
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(v)
}

/// Parses an element of `K`.
pub fn parse_rat(field: FieldConfig, s: &str) -> Result<RatT> {
    parse_qm(field, s)?.as_constant().ok_or_else(|| err(0, format!("{s:?} is not an element of K")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    /// Coefficients of `T^0, T^1, …`, each as `F_q` coordinates.
    pub num: Vec<Vec<u32>>,
    pub den: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub n: usize,
    pub num: Vec<Vec<u32>>,
    pub den: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub terms: Vec<SeriesTermJson>,
}

fn poly_to_json(p: &PolyT) -> Vec<Vec<u32>> {
    p.coeffs().iter().map(|&c| p.field().coords(c)).collect()
}

fn poly_from_json(f: FieldConfig, v: &[Vec<u32>]) -> Result<PolyT> {
    let coeffs = v.iter().map(|c| f.from_coords(c)).collect::<Result<Vec<_>>>()?;
    Ok(PolyT::from_coeffs(f, coeffs))
}

fn rat_from_json(f: FieldConfig, num: &[Vec<u32>], den: &[Vec<u32>]) -> Result<RatT> {
    RatT::new(poly_from_json(f, num)?, poly_from_json(f, den)?)
}

pub fn qm_to_json(x: &QmPoly) -> Vec<TermJson> {
    x.terms()
        .map(|(m, c)| TermJson { alpha: m.e, beta: m.g, gamma: m.h, num: poly_to_json(c.num()), den: poly_to_json(c.den()) })
        .collect()
}

pub fn qm_from_json(field: FieldConfig, terms: &[TermJson]) -> Result<QmPoly> {
    let parsed = terms
        .iter()
        .map(|t| Ok((Mono::new(t.alpha, t.beta, t.gamma), rat_from_json(field, &t.num, &t.den)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QmPoly::from_terms(field, parsed))
}

pub fn series_to_json(s: &TSeries) -> SeriesJson {
    SeriesJson {
        order: s.order(),
        terms: s.terms().map(|(n, c)| SeriesTermJson { n, num: poly_to_json(c.num()), den: poly_to_json(c.den()) }).collect(),
    }
}

pub fn series_from_json(field: FieldConfig, s: &SeriesJson) -> Result<TSeries> {
    let terms = s.terms.iter().map(|t| Ok((t.n, rat_from_json(field, &t.num, &t.den)?))).collect::<Result<Vec<_>>>()?;
    Ok(TSeries::from_terms(field, s.order, terms))
}
