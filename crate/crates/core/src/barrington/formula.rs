use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// A Boolean formula over variables `x1, x2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(u32),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(i: u32) -> Formula {
        Formula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Longest root-to-leaf path counting only AND and OR nodes.
    pub fn depth(&self) -> u32 {
        match self {
            Formula::Var(_) => 0,
            Formula::Not(f) => f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Largest variable index that occurs.
    pub fn num_vars(&self) -> u32 {
        match self {
            Formula::Var(i) => *i,
            Formula::Not(f) => f.num_vars(),
            Formula::And(a, b) | Formula::Or(a, b) => a.num_vars().max(b.num_vars()),
        }
    }

    /// Some variable of the formula (its leftmost leaf).
    pub fn first_var(&self) -> u32 {
        match self {
            Formula::Var(i) => *i,
            Formula::Not(f) => f.first_var(),
            Formula::And(a, _) | Formula::Or(a, _) => a.first_var(),
        }
    }

    pub fn eval(&self, x: &Assignment) -> Result<bool> {
        Ok(match self {
            Formula::Var(i) => x.get(*i)?,
            Formula::Not(f) => !f.eval(x)?,
            Formula::And(a, b) => a.eval(x)? & b.eval(x)?,
            Formula::Or(a, b) => a.eval(x)? | b.eval(x)?,
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "x{i}"),
            Formula::Not(g) => write!(f, "!{g}"),
            Formula::And(a, b) => write!(f, "({a}&{b})"),
            Formula::Or(a, b) => write!(f, "({a}|{b})"),
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

/// Parses `formula := var | '!' formula | '(' formula ('&'|'|') formula ')'`
/// with `var := 'x' digits`; whitespace between tokens is ignored. Error
/// positions are byte offsets into `text`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(b'x') => self.var(),
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let lhs = self.formula()?;
                let op = match self.peek() {
                    Some(c @ (b'&' | b'|')) => {
                        self.pos += 1;
                        c
                    }
                    _ => return Err(self.error("expected '&' or '|'")),
                };
                let rhs = self.formula()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(if op == b'&' {
                    Formula::and(lhs, rhs)
                } else {
                    Formula::or(lhs, rhs)
                })
            }
            Some(_) => Err(self.error("expected 'x', '!' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn var(&mut self) -> Result<Formula> {
        let start = self.pos;
        self.pos += 1;
        let digits_start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected digits after 'x'"));
        }
        let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
        let index: u32 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "variable index too large".into(),
        })?;
        if index == 0 {
            return Err(Error::Syntax {
                pos: start,
                msg: "variables are numbered from x1".into(),
            });
        }
        Ok(Formula::Var(index))
    }
}

/// Values for `x1, x2, ...`; unset variables are an error when read.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    /// Variables `x1..=x_n` from the bits of `bits`, `x1` least significant.
    pub fn from_bits(bits: u64, n: u32) -> Self {
        Assignment {
            values: (0..n).map(|i| Some(bits >> i & 1 == 1)).collect(),
        }
    }

    pub fn from_bools(values: &[bool]) -> Self {
        Assignment {
            values: values.iter().map(|&b| Some(b)).collect(),
        }
    }

    /// Every assignment to `x1..=x_n`, in counting order.
    pub fn all(n: u32) -> impl Iterator<Item = Assignment> {
        assert!(n < 64, "too many variables to enumerate");
        (0..1u64 << n).map(move |b| Assignment::from_bits(b, n))
    }

    pub fn set(&mut self, var: u32, value: bool) {
        assert!(var >= 1, "variables are numbered from x1");
        let idx = var as usize - 1;
        if self.values.len() <= idx {
            self.values.resize(idx + 1, None);
        }
        self.values[idx] = Some(value);
    }

    pub fn get(&self, var: u32) -> Result<bool> {
        var.checked_sub(1)
            .and_then(|i| self.values.get(i as usize).copied().flatten())
            .ok_or(Error::MissingVariable(var))
    }
}

impl FromStr for Assignment {
    type Err = Error;

    /// Parses `"x1=1,x2=0"`; an empty string is the empty assignment.
    fn from_str(s: &str) -> Result<Self> {
        let mut a = Assignment::default();
        let mut offset = 0;
        for item in s.split(',') {
            let here = offset;
            offset += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Syntax {
                pos: here,
                msg: format!("{item:?}: {msg}"),
            };
            let (name, value) = item.split_once('=').ok_or_else(|| bad("expected xN=0|1"))?;
            let var: u32 = name
                .trim()
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .filter(|&v| v >= 1)
                .ok_or_else(|| bad("bad variable name"))?;
            let value = match value.trim() {
                "0" | "false" => false,
                "1" | "true" => true,
                _ => return Err(bad("value must be 0 or 1")),
            };
            a.set(var, value);
        }
        Ok(a)
    }
}

/// A random formula of depth at most `max_depth` over `x1..=x_{num_vars}`.
/// NOT nodes are sprinkled in with probability 1/4 above every node.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, max_depth: u32, num_vars: u32) -> Formula {
    assert!(num_vars >= 1);
    let node = if max_depth == 0 || rng.gen_bool(0.2) {
        Formula::Var(rng.gen_range(1..=num_vars))
    } else {
        let a = random_formula(rng, max_depth - 1, num_vars);
        let b = random_formula(rng, max_depth - 1, num_vars);
        if rng.gen_bool(0.5) {
            Formula::and(a, b)
        } else {
            Formula::or(a, b)
        }
    };
    if rng.gen_bool(0.25) {
        Formula::not(node)
    } else {
        node
    }
}
