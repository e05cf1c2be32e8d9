use std::fmt;

use super::build::{
    concat_tangle, cup_cap_tangle, identity_tangle, left_trace, mult_tangle, one_tangle, right_trace,
    rotation_tangle, s_tangle, t_pi, u_tangle, unit_tangle,
};
use super::free::{free_compose, is_free_pair};
use super::{Tangle, TangleError};
use crate::partitions::Partition;

/// Expression tree over generator tangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangleExpr {
    Tpi(Partition),
    S(usize),
    U(usize),
    /// Side-by-side concatenation of degrees `k` and `m`.
    M(usize, usize),
    Mult(usize),
    Unit,
    TrL(usize),
    TrR(usize),
    E(usize, usize),
    Rot(usize),
    /// One inner disk, joined straight to the boundary.
    Id(usize),
    /// The unit of degree `k`: vertical strings, no inner disks.
    One(usize),
    Compose(Box<TangleExpr>, usize, Box<TangleExpr>),
    Free(Box<TangleExpr>, Box<TangleExpr>),
    Inv(Box<TangleExpr>),
}

/// Outer degree and inner-disk degrees of an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub outer: usize,
    pub inner: Vec<usize>,
}

fn need_positive(name: &str, k: usize) -> Result<(), TangleError> {
    if k == 0 {
        return Err(TangleError::Invalid(format!("{name} needs a positive degree")));
    }
    Ok(())
}

impl TangleExpr {
    /// Degrees, checking every composition and free product.
    pub fn signature(&self) -> Result<Signature, TangleError> {
        use TangleExpr::*;
        let sig = |outer: usize, inner: Vec<usize>| Ok(Signature { outer, inner });
        match self {
            Tpi(pi) => {
                t_pi(pi)?;
                sig(pi.order() / 2, pi.blocks().iter().map(|b| b.len() / 2).collect())
            }
            S(k) | U(k) | One(k) => sig(*k, vec![]),
            Unit => sig(0, vec![]),
            M(k, m) => {
                need_positive("M", *k)?;
                need_positive("M", *m)?;
                sig(k + m, vec![*k, *m])
            }
            Mult(k) => {
                need_positive("Mult", *k)?;
                sig(*k, vec![*k, *k])
            }
            TrL(k) | TrR(k) => {
                need_positive("trace", *k)?;
                sig(0, vec![*k])
            }
            E(k, i) => {
                cup_cap_tangle(*k, *i)?;
                sig(*k, vec![])
            }
            Rot(k) | Id(k) => {
                need_positive("Rot/Id", *k)?;
                sig(*k, vec![*k])
            }
            Compose(host, disk, guest) => {
                let h = host.signature()?;
                let g = guest.signature()?;
                if *disk == 0 || *disk > h.inner.len() {
                    return Err(TangleError::NoSuchDisk(*disk));
                }
                if h.inner[disk - 1] != g.outer {
                    return Err(TangleError::DegreeMismatch { expected: h.inner[disk - 1], found: g.outer });
                }
                let mut inner = h.inner[..disk - 1].to_vec();
                inner.extend(g.inner);
                inner.extend_from_slice(&h.inner[*disk..]);
                sig(h.outer, inner)
            }
            Free(a, b) => {
                let sa = a.signature()?;
                let sb = b.signature()?;
                if sa.outer != sb.outer {
                    return Err(TangleError::DegreeMismatch { expected: sa.outer, found: sb.outer });
                }
                let (ta, tb) = (a.tangle()?, b.tangle()?);
                if !is_free_pair(&ta, &tb)? {
                    return Err(TangleError::NotFree(format!("free({a}, {b})")));
                }
                let mut inner = sa.inner;
                inner.extend(sb.inner);
                sig(2 * sa.outer, inner)
            }
            Inv(a) => a.signature(),
        }
    }

    /// Power of `δ` carried by normalized generators: `δ^{-k}` per trace, `δ^{-1}` per
    /// Jones element.
    pub fn delta_power(&self) -> i64 {
        use TangleExpr::*;
        match self {
            TrL(k) | TrR(k) => -(*k as i64),
            E(..) => -1,
            Compose(a, _, b) | Free(a, b) => a.delta_power() + b.delta_power(),
            Inv(a) => a.delta_power(),
            _ => 0,
        }
    }

    /// The tangle the expression denotes, closed loops included.
    pub fn tangle(&self) -> Result<Tangle, TangleError> {
        use TangleExpr::*;
        Ok(match self {
            Tpi(pi) => t_pi(pi)?,
            S(k) => s_tangle(*k),
            U(k) => u_tangle(*k),
            One(k) => one_tangle(*k),
            Unit => unit_tangle(),
            E(k, i) => cup_cap_tangle(*k, *i)?,
            M(..) | Mult(_) | TrL(_) | TrR(_) | Rot(_) | Id(_) => {
                self.signature()?;
                match self {
                    M(k, m) => concat_tangle(*k, *m),
                    Mult(k) => mult_tangle(*k),
                    TrL(k) => left_trace(*k),
                    TrR(k) => right_trace(*k),
                    Rot(k) => rotation_tangle(*k),
                    Id(k) => identity_tangle(*k),
                    _ => unreachable!(),
                }
            }
            Compose(host, disk, guest) => {
                self.signature()?;
                host.tangle()?.compose(*disk, &guest.tangle()?)?
            }
            Free(a, b) => free_compose(&a.tangle()?, &b.tangle()?)?,
            Inv(a) => a.tangle()?.involution(),
        })
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TangleExpr::*;
        match self {
            Tpi(pi) => write!(f, "Tpi[{pi}]"),
            S(k) => write!(f, "S {k}"),
            U(k) => write!(f, "U {k}"),
            M(k, m) => write!(f, "M({k},{m})"),
            Mult(k) => write!(f, "Mult {k}"),
            Unit => write!(f, "Unit"),
            TrL(k) => write!(f, "TrL {k}"),
            TrR(k) => write!(f, "TrR {k}"),
            E(k, i) => write!(f, "E({k},{i})"),
            Rot(k) => write!(f, "Rot {k}"),
            Id(k) => write!(f, "Id {k}"),
            One(k) => write!(f, "One {k}"),
            Compose(a, d, b) => write!(f, "compose({a}, {d}, {b})"),
            Free(a, b) => write!(f, "free({a}, {b})"),
            Inv(a) => write!(f, "inv({a})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    fn error_at(&self, pos: usize, expected: &str) -> TangleError {
        let (line, col) = self.location(pos);
        TangleError::Syntax { line, col, expected: expected.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), TangleError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_at(self.pos, &format!("`{c}`")))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(self.text.len() - start);
        self.pos += len;
        (start, &self.text[start..start + len])
    }

    fn int(&mut self) -> Result<usize, TangleError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].find(|c: char| !c.is_ascii_digit()).unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(self.error_at(start, "an integer"));
        }
        self.pos += len;
        self.text[start..start + len].parse().map_err(|_| self.error_at(start, "an integer that fits"))
    }

    fn pair(&mut self) -> Result<(usize, usize), TangleError> {
        self.expect('(')?;
        let a = self.int()?;
        self.expect(',')?;
        let b = self.int()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn expr(&mut self) -> Result<TangleExpr, TangleError> {
        use TangleExpr::*;
        let (start, word) = self.word();
        Ok(match word {
            "Tpi" => {
                self.expect('[')?;
                let body_start = self.pos;
                let close = self.text[body_start..].find(']').ok_or_else(|| self.error_at(self.text.len(), "`]`"))?;
                let body = &self.text[body_start..body_start + close];
                let pi: Partition = body.parse().map_err(|_| self.error_at(body_start, "a partition such as {1,2},{3,4}"))?;
                self.pos = body_start + close + 1;
                Tpi(pi)
            }
            "S" => S(self.int()?),
            "U" => U(self.int()?),
            "Mult" => Mult(self.int()?),
            "Unit" => Unit,
            "TrL" => TrL(self.int()?),
            "TrR" => TrR(self.int()?),
            "Rot" => Rot(self.int()?),
            "Id" => Id(self.int()?),
            "One" => One(self.int()?),
            "M" => {
                let (k, m) = self.pair()?;
                M(k, m)
            }
            "E" => {
                let (k, i) = self.pair()?;
                E(k, i)
            }
            "compose" => {
                self.expect('(')?;
                let host = self.expr()?;
                self.expect(',')?;
                let disk = self.int()?;
                self.expect(',')?;
                let guest = self.expr()?;
                self.expect(')')?;
                Compose(Box::new(host), disk, Box::new(guest))
            }
            "free" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Free(Box::new(a), Box::new(b))
            }
            "inv" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(')')?;
                Inv(Box::new(a))
            }
            _ => {
                return Err(self.error_at(
                    start,
                    "one of Tpi[..], S, U, M(k,m), Mult, Unit, TrL, TrR, E(k,i), Rot, Id, One, compose, free, inv",
                ))
            }
        })
    }
}

/// Parses without type-checking.
pub fn parse_syntax(text: &str) -> Result<TangleExpr, TangleError> {
    let mut parser = Parser { text, pos: 0 };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error_at(parser.pos, "end of input"));
    }
    Ok(expr)
}

/// Parses and type-checks an expression.
pub fn parse(text: &str) -> Result<TangleExpr, TangleError> {
    let expr = parse_syntax(text)?;
    expr.signature()?;
    Ok(expr)
}
