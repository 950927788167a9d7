//! Plain-text word expressions and canonical JSON for PBW elements.
//!
//! Expression grammar (whitespace separated):
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := INT | "e" INT INT | "f" INT INT
//! ```
//!
//! `e i j` is the matrix unit `e_{ij}`; `f i j` (with `i < j`) is `e_{ji}`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{GlBasisElement, Part, PbwElement, PbwOrder, SuperWord};
use crate::error::{Error, Result};
use crate::rootdata::Shape;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Word(String),
}

fn tokenize(s: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Token>| {
        if !cur.is_empty() {
            out.push(Token::Word(std::mem::take(cur)));
        }
    };
    for ch in s.chars() {
        match ch {
            '+' | '-' | '*' => {
                flush(&mut cur, &mut out);
                out.push(match ch {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    _ => Token::Star,
                });
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

pub fn parse_expression(shape: &Shape, s: &str) -> Result<Vec<SuperWord>> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let mut words = Vec::new();
    let mut sign = BigInt::from(1);
    if tokens.first() == Some(&Token::Minus) {
        sign = BigInt::from(-1);
        pos = 1;
    }
    loop {
        let (mut word, next) = parse_term(shape, &tokens, pos)?;
        word.coeff *= &sign;
        words.push(word);
        pos = next;
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) => sign = BigInt::from(1),
            Some(Token::Minus) => sign = BigInt::from(-1),
            Some(t) => return Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
        pos += 1;
    }
    Ok(words)
}

fn parse_index(shape: &Shape, tok: Option<&Token>) -> Result<usize> {
    match tok {
        Some(Token::Word(w)) => {
            let v: usize = w
                .parse()
                .map_err(|_| Error::Parse(format!("expected an index, got `{w}`")))?;
            if v == 0 || v > shape.size() {
                return Err(Error::OutOfRange(format!(
                    "index {v} outside 1..={}",
                    shape.size()
                )));
            }
            Ok(v)
        }
        other => Err(Error::Parse(format!("expected an index, got {other:?}"))),
    }
}

fn parse_term(shape: &Shape, tokens: &[Token], mut pos: usize) -> Result<(SuperWord, usize)> {
    let mut word = SuperWord::one();
    loop {
        match tokens.get(pos) {
            Some(Token::Word(w)) if w == "e" || w == "f" => {
                let i = parse_index(shape, tokens.get(pos + 1))?;
                let j = parse_index(shape, tokens.get(pos + 2))?;
                let unit = if w == "e" {
                    GlBasisElement::e(i, j)
                } else {
                    if i >= j {
                        return Err(Error::Parse(format!("f {i} {j} needs i < j")));
                    }
                    GlBasisElement::f(i, j)
                };
                word.factors.push(unit);
                pos += 3;
            }
            Some(Token::Word(w)) => {
                let c: BigInt = w
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown factor `{w}`")))?;
                word.coeff *= c;
                pos += 1;
            }
            other => return Err(Error::Parse(format!("expected a factor, got {other:?}"))),
        }
        if tokens.get(pos) == Some(&Token::Star) {
            pos += 1;
        } else {
            return Ok((word, pos));
        }
    }
}

/// Canonical JSON: monomials in engine order, coefficients as strings.
pub fn pbw_to_json(elem: &PbwElement<BigInt>, order: &PbwOrder) -> Value {
    let nn = elem.shape().size();
    let terms: Vec<Value> = elem
        .terms()
        .map(|(mono, c)| {
            let mut neg = Vec::new();
            let mut pos = Vec::new();
            let mut diag = vec![0u32; nn];
            for &r in mono {
                let e = order.element(r);
                match e.part() {
                    Part::Neg => neg.push(json!([e.row, e.col])),
                    Part::Pos => pos.push(json!([e.row, e.col])),
                    Part::Diag => diag[e.row - 1] += 1,
                }
            }
            json!({ "neg": neg, "diag": diag, "pos": pos, "coeff": c.to_string() })
        })
        .collect();
    json!({ "m": elem.shape().m, "n": elem.shape().n, "terms": terms })
}
