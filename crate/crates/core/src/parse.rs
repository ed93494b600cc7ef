//! Text syntax for monomial ideals: `x^2, x*y, y^3`.
//!
//! ```text
//! ideal  := term ("," term)*
//! term   := factor ("*" factor)* | "1"
//! factor := var ("^" posint)?
//! var    := "x" | "y" | "z" | "w" | "x" digits
//! ```
//!
//! `x, y, z, w` are the first four variables and `x1, ..., x4` name them by
//! index. Whitespace is ignored. The dimension is the highest variable index
//! used, at most [`MAX_DIM`].

use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::{Error, Result};

pub const MAX_DIM: usize = 4;

/// A parsed ideal together with the text it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealExpr {
    pub source: String,
    /// Generators as written, one exponent list per term, indexed from `x1`.
    pub terms: Vec<Vec<u32>>,
    /// Highest variable index used (1-based), 0 for constant input.
    pub max_var: usize,
}

impl IdealExpr {
    pub fn parse(source: &str) -> Result<Self> {
        Parser { src: source.as_bytes(), pos: 0 }.ideal(source)
    }

    /// The ideal in `dim` variables; `dim` must cover every variable used.
    pub fn ideal_in(&self, dim: usize) -> Result<MonomialIdeal> {
        if dim < self.max_var {
            return Err(Error::DimensionMismatch { expected: dim, found: self.max_var });
        }
        let gens = self
            .terms
            .iter()
            .map(|t| {
                let mut v = t.clone();
                v.resize(dim, 0);
                ExponentVector::new(&v)
            })
            .collect();
        MonomialIdeal::minimalize(dim, gens)
    }

    pub fn ideal(&self) -> Result<MonomialIdeal> {
        self.ideal_in(self.max_var.max(1))
    }
}

/// Parses an ideal, inferring the dimension.
pub fn parse_ideal(source: &str) -> Result<MonomialIdeal> {
    IdealExpr::parse(source)?.ideal()
}

/// Parses several ideals into their common ambient ring.
pub fn parse_ideals(sources: &[&str]) -> Result<Vec<MonomialIdeal>> {
    let exprs = sources.iter().map(|s| IdealExpr::parse(s)).collect::<Result<Vec<_>>>()?;
    let dim = exprs.iter().map(|e| e.max_var).max().unwrap_or(1).max(1);
    exprs.iter().map(|e| e.ideal_in(dim)).collect()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a positive integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<u32>() {
            Ok(0) => {
                self.pos = start;
                self.err("exponent must be positive")
            }
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("integer too large")
            }
        }
    }

    fn ideal(mut self, source: &str) -> Result<IdealExpr> {
        let mut terms = Vec::new();
        let mut max_var = 0;
        loop {
            let (t, m) = self.term()?;
            max_var = max_var.max(m);
            terms.push(t);
            match self.peek() {
                Some(b',') => self.pos += 1,
                None => break,
                Some(c) => return self.err(format!("unexpected {:?}", c as char)),
            }
        }
        Ok(IdealExpr { source: source.to_string(), terms, max_var })
    }

    fn term(&mut self) -> Result<(Vec<u32>, usize)> {
        let mut exps = vec![0u32; MAX_DIM];
        let mut max_var = 0;
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok((exps, 0));
        }
        loop {
            let (var, e) = self.factor()?;
            exps[var] = exps[var].checked_add(e).ok_or(Error::Overflow)?;
            max_var = max_var.max(var + 1);
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((exps, max_var))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return self.err("expected a variable"),
        };
        let var = match self.src[self.pos] {
            b'x' => {
                self.pos += 1;
                if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    let i = self.number().map_err(|_| Error::Parse { pos: start, msg: "bad variable index".into() })?;
                    if i as usize > MAX_DIM {
                        self.pos = start;
                        return self.err(format!("x{i}: at most {MAX_DIM} variables are supported"));
                    }
                    i as usize - 1
                } else {
                    0
                }
            }
            b'y' => {
                self.pos += 1;
                1
            }
            b'z' => {
                self.pos += 1;
                2
            }
            b'w' => {
                self.pos += 1;
                3
            }
            c => return self.err(format!("expected a variable, found {:?}", c as char)),
        };
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.number()?
        } else {
            1
        };
        Ok((var, e))
    }
}
