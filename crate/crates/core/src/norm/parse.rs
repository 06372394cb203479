//! Text forms of norm expressions and points.
//!
//! ```text
//! expr   := "zero" | "one" | "sup" [ "(" "w" "=" nums ")" ]
//!         | "p" "(" num [ ";" "w" "=" nums ] ")"
//!         | "sum" "(" expr { "," expr } ")"
//!         | "scale" "(" num "," expr ")"
//! dense  := "[" num { "," num } "]"
//! sparse := "{" [ index ":" num { "," index ":" num } ] "}"
//! num    := decimal float | "inf"
//! ```

use std::str::FromStr;

use super::{DenseVec, NormError, NormExpr, SparseVec};

/// Minimal cursor over a literal, shared by the point-set and cone parsers.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> NormError {
        NormError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), NormError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<&'a str, NormError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    pub(crate) fn number(&mut self) -> Result<f64, NormError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+')))
            .unwrap_or(rest.len());
        let token = &rest[..len];
        let value = match token {
            "inf" | "+inf" => f64::INFINITY,
            "-inf" => f64::NEG_INFINITY,
            _ => token
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| self.error(format!("invalid number '{token}'")))?,
        };
        self.pos += len;
        Ok(value)
    }

    pub(crate) fn finite(&mut self) -> Result<f64, NormError> {
        let v = self.number()?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.error("expected a finite number"))
        }
    }

    pub(crate) fn index(&mut self) -> Result<usize, NormError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let value = rest[..len]
            .parse()
            .map_err(|_| self.error("expected an index"))?;
        self.pos += len;
        Ok(value)
    }

    pub(crate) fn finish(&mut self) -> Result<(), NormError> {
        if self.peek().is_some() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    /// `num {"," num}` up to (not including) `close`.
    pub(crate) fn number_list(&mut self, close: char) -> Result<Vec<f64>, NormError> {
        let mut out = vec![self.finite()?];
        while self.peek() != Some(close) {
            self.expect(',')?;
            out.push(self.finite()?);
        }
        Ok(out)
    }

    pub(crate) fn dense(&mut self) -> Result<DenseVec, NormError> {
        self.expect('[')?;
        let coords = self.number_list(']')?;
        self.expect(']')?;
        DenseVec::new(coords)
    }

    fn weights(&mut self, close: char) -> Result<Vec<f64>, NormError> {
        let key = self.ident()?;
        if key != "w" {
            return Err(self.error("expected 'w='"));
        }
        self.expect('=')?;
        self.number_list(close)
    }

    pub(crate) fn expr(&mut self) -> Result<NormExpr, NormError> {
        let start = self.pos;
        let name = self.ident()?;
        let at = |e: NormError| match e {
            NormError::Parse { .. } => e,
            other => NormError::Parse {
                pos: start,
                msg: other.to_string(),
            },
        };
        match name {
            "zero" => Ok(NormExpr::Zero),
            "one" => Ok(NormExpr::one()),
            "sup" => {
                if self.eat('(') {
                    let w = self.weights(')')?;
                    self.expect(')')?;
                    NormExpr::weighted(f64::INFINITY, w).map_err(at)
                } else {
                    Ok(NormExpr::sup())
                }
            }
            "p" => {
                self.expect('(')?;
                let p = self.number()?;
                let w = if self.eat(';') {
                    Some(self.weights(')')?)
                } else {
                    None
                };
                self.expect(')')?;
                match w {
                    Some(w) => NormExpr::weighted(p, w),
                    None => NormExpr::p(p),
                }
                .map_err(at)
            }
            "sum" => {
                self.expect('(')?;
                let mut children = vec![self.expr()?];
                while self.eat(',') {
                    children.push(self.expr()?);
                }
                self.expect(')')?;
                Ok(NormExpr::sum(children))
            }
            "scale" => {
                self.expect('(')?;
                let alpha = self.finite()?;
                self.expect(',')?;
                let child = self.expr()?;
                self.expect(')')?;
                Ok(NormExpr::scale(alpha, child))
            }
            other => Err(NormError::Parse {
                pos: start,
                msg: format!("unknown norm '{other}'"),
            }),
        }
    }
}

impl FromStr for NormExpr {
    type Err = NormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        let e = c.expr()?;
        c.finish()?;
        Ok(e)
    }
}

impl FromStr for DenseVec {
    type Err = NormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        let v = c.dense()?;
        c.finish()?;
        Ok(v)
    }
}

impl FromStr for SparseVec {
    type Err = NormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        c.expect('{')?;
        let mut entries = Vec::new();
        if !c.eat('}') {
            loop {
                let i = c.index()?;
                c.expect(':')?;
                entries.push((i, c.finite()?));
                if c.eat('}') {
                    break;
                }
                c.expect(',')?;
            }
        }
        c.finish()?;
        SparseVec::new(entries)
    }
}
