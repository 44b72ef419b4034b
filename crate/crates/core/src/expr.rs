//! Parametric orbit expressions in table notation.
//!
//! A partition expression is a parenthesised list of items. An item is an
//! affine form, either bare (`p`, `2m`, `4`) or in parentheses (`(2n-2)`),
//! optionally raised to a multiplicity (`^2`, `^{m-2}`). Anything that does
//! not start with `(` is an exceptional orbit label.
//!
//! The variables `p`, `q`, `n` and `k` all denote the family parameter and
//! `m` the rank of the stabilizer.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Env {
    pub param: i64,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Affine {
    pub constant: i64,
    pub coeffs: BTreeMap<char, i64>,
}

impl Affine {
    pub fn eval(&self, env: Env) -> i64 {
        self.constant
            + self
                .coeffs
                .iter()
                .map(|(&v, &c)| c * if v == 'm' { env.m } else { env.param })
                .sum::<i64>()
    }

    pub fn uses_param(&self) -> bool {
        self.coeffs.keys().any(|&v| v != 'm')
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub value: Affine,
    pub multiplicity: Affine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitExpr {
    Partition { items: Vec<Item>, text: String },
    Label(String),
}

impl OrbitExpr {
    /// Parts in order, before any sign check. `None` if a multiplicity is
    /// negative.
    pub fn eval_parts(&self, env: Env) -> Option<Vec<i64>> {
        let OrbitExpr::Partition { items, .. } = self else {
            return None;
        };
        let mut out = Vec::new();
        for item in items {
            let times = item.multiplicity.eval(env);
            if times < 0 {
                return None;
            }
            let v = item.value.eval(env);
            out.extend(std::iter::repeat_n(v, times as usize));
        }
        Some(out)
    }

    pub fn uses_param(&self) -> bool {
        match self {
            OrbitExpr::Partition { items, .. } => items
                .iter()
                .any(|i| i.value.uses_param() || i.multiplicity.uses_param()),
            OrbitExpr::Label(_) => false,
        }
    }
}

impl fmt::Display for OrbitExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitExpr::Partition { text, .. } => f.write_str(text),
            OrbitExpr::Label(l) => f.write_str(l),
        }
    }
}

impl FromStr for OrbitExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !text.starts_with('(') {
            if text.is_empty() {
                return Err(err(s, "empty expression"));
            }
            return Ok(OrbitExpr::Label(text));
        }
        let mut parser = Parser {
            src: s,
            chars: text.chars().collect(),
            pos: 0,
        };
        let items = parser.partition()?;
        Ok(OrbitExpr::Partition { items, text })
    }
}

fn err(expr: &str, reason: &str) -> Error {
    Error::Expression {
        expr: expr.to_string(),
        reason: reason.to_string(),
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(
                self.src,
                &format!("expected {c:?} at offset {}", self.pos),
            ))
        }
    }

    fn partition(&mut self) -> Result<Vec<Item>> {
        self.expect('(')?;
        let mut items = Vec::new();
        while self.peek() != Some(')') {
            if self.peek().is_none() {
                return Err(err(self.src, "unclosed partition"));
            }
            items.push(self.item()?);
        }
        self.expect(')')?;
        if self.pos != self.chars.len() {
            return Err(err(self.src, "trailing characters"));
        }
        if items.is_empty() {
            return Err(err(self.src, "no parts"));
        }
        Ok(items)
    }

    fn item(&mut self) -> Result<Item> {
        let value = if self.peek() == Some('(') {
            self.pos += 1;
            let a = self.affine()?;
            self.expect(')')?;
            a
        } else {
            self.term(1)?
        };
        let multiplicity = if self.peek() == Some('^') {
            self.pos += 1;
            if self.peek() == Some('{') {
                self.pos += 1;
                let a = self.affine()?;
                self.expect('}')?;
                a
            } else {
                self.term(1)?
            }
        } else {
            Affine {
                constant: 1,
                ..Affine::default()
            }
        };
        Ok(Item {
            value,
            multiplicity,
        })
    }

    fn affine(&mut self) -> Result<Affine> {
        let mut acc = Affine::default();
        let mut sign = 1;
        if self.peek() == Some('-') {
            sign = -1;
            self.pos += 1;
        }
        loop {
            let t = self.term(sign)?;
            acc.constant += t.constant;
            for (v, c) in t.coeffs {
                *acc.coeffs.entry(v).or_insert(0) += c;
            }
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        acc.coeffs.retain(|_, c| *c != 0);
        Ok(acc)
    }

    /// `7`, `p`, or `2m`: an optional integer then an optional variable.
    fn term(&mut self, sign: i64) -> Result<Affine> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let coeff = if digits.is_empty() {
            None
        } else {
            Some(
                digits
                    .parse::<i64>()
                    .map_err(|_| err(self.src, "number too large"))?,
            )
        };
        let var = match self.peek() {
            Some(c @ ('p' | 'q' | 'n' | 'k' | 'm')) => {
                self.pos += 1;
                Some(c)
            }
            _ => None,
        };
        let mut out = Affine::default();
        match (coeff, var) {
            (None, None) => {
                return Err(err(self.src, &format!("expected a term at offset {start}")))
            }
            (Some(c), None) => out.constant = sign * c,
            (c, Some(v)) => {
                out.coeffs.insert(v, sign * c.unwrap_or(1));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str, param: i64, m: i64) -> Vec<i64> {
        s.parse::<OrbitExpr>()
            .unwrap()
            .eval_parts(Env { param, m })
            .unwrap()
    }

    #[test]
    fn table_expressions() {
        assert_eq!(eval("((2n+4)(2n-2))", 3, 2), vec![10, 4]);
        assert_eq!(eval("((p+1)p(p-1))", 4, 3), vec![5, 4, 3]);
        assert_eq!(eval("((p+1)^2(p-2))", 4, 3), vec![5, 5, 2]);
        assert_eq!(eval("((q+2)(q-1)^2)", 1, 3), vec![3, 0, 0]);
        assert_eq!(eval("((p+1)p^{m-2}(p-1))", 3, 5), vec![4, 3, 3, 3, 2]);
        assert_eq!(eval("(2m)", 1, 4), vec![8]);
        assert_eq!(eval("(4)", 1, 2), vec![4]);
        assert_eq!(eval("((p+3)(p-1)(p-2))", 1, 3), vec![4, 0, -1]);
        assert_eq!(eval("((2p+3)(2p-3))", 2, 2), vec![7, 1]);
    }

    #[test]
    fn labels_and_params() {
        let e: OrbitExpr = "E6(a3)".parse().unwrap();
        assert_eq!(e, OrbitExpr::Label("E6(a3)".into()));
        assert!(!e.uses_param());
        assert!(!"(2m)".parse::<OrbitExpr>().unwrap().uses_param());
        assert!("((q+1)q(q-1))".parse::<OrbitExpr>().unwrap().uses_param());
        assert_eq!(
            "((p+1)(p-1))".parse::<OrbitExpr>().unwrap().to_string(),
            "((p+1)(p-1))"
        );
    }

    #[test]
    fn negative_multiplicity_is_rejected() {
        let e: OrbitExpr = "((p+1)p^{m-2}(p-1))".parse().unwrap();
        assert_eq!(e.eval_parts(Env { param: 1, m: 1 }), None);
    }

    #[test]
    fn malformed() {
        for bad in ["(", "()", "((p+1)", "((p+)(p))", "(p)x", "((x))", ""] {
            assert!(bad.parse::<OrbitExpr>().is_err(), "{bad}");
        }
    }
}
