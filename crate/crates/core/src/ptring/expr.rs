use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RingError;

/// A sorted multiset of generator labels; the empty monomial is the unit `[pt]`.
pub type Monomial = Vec<String>;

/// Label of the unit class.
pub const UNIT: &str = "pt";

/// An integer combination of monomials in generator classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassExpr {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ClassExpr {
    pub fn zero() -> ClassExpr {
        ClassExpr::default()
    }

    pub fn one() -> ClassExpr {
        ClassExpr::monomial(Vec::new(), BigInt::one())
    }

    pub fn generator(label: &str) -> ClassExpr {
        if label == UNIT {
            return ClassExpr::one();
        }
        ClassExpr::monomial(vec![label.to_string()], BigInt::one())
    }

    pub fn integer(n: i64) -> ClassExpr {
        ClassExpr::monomial(Vec::new(), BigInt::from(n))
    }

    pub fn monomial(mut m: Monomial, c: BigInt) -> ClassExpr {
        m.sort();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ClassExpr { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> ClassExpr {
        let mut out = ClassExpr::zero();
        for (m, c) in terms {
            out = out + ClassExpr::monomial(m, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.terms.keys().flatten()
    }

    pub fn scaled(&self, c: &BigInt) -> ClassExpr {
        ClassExpr::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    /// Replaces every occurrence of `label` by the unit.
    pub fn dealias(&self, label: &str) -> ClassExpr {
        ClassExpr::from_terms(
            self.terms.iter().map(|(m, c)| (m.iter().filter(|l| l.as_str() != label).cloned().collect(), c.clone())),
        )
    }

    pub fn parse(s: &str) -> Result<ClassExpr, RingError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl Add for ClassExpr {
    type Output = ClassExpr;
    fn add(mut self, rhs: ClassExpr) -> ClassExpr {
        for (m, c) in rhs.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                self.terms.remove(&m);
            }
        }
        self
    }
}

impl Neg for ClassExpr {
    type Output = ClassExpr;
    fn neg(self) -> ClassExpr {
        self.scaled(&-BigInt::one())
    }
}

impl Sub for ClassExpr {
    type Output = ClassExpr;
    fn sub(self, rhs: ClassExpr) -> ClassExpr {
        self + (-rhs)
    }
}

impl Mul for &ClassExpr {
    type Output = ClassExpr;
    fn mul(self, rhs: &ClassExpr) -> ClassExpr {
        let mut out = ClassExpr::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut m = a.clone();
                m.extend(b.iter().cloned());
                out = out + ClassExpr::monomial(m, x * y);
            }
        }
        out
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let body = if m.is_empty() {
                format!("[{UNIT}]")
            } else {
                m.iter().map(|l| format!("[{l}]")).collect::<Vec<_>>().join("*")
            };
            if a.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{a}*{body}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, why: &str) -> RingError {
        RingError::Parse(format!("{why} at offset {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ClassExpr, RingError> {
        let mut sign = BigInt::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        let mut acc = self.term()?.scaled(&sign);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr, RingError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'[') | Some(b'(') => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ClassExpr, RingError> {
        match self.peek() {
            Some(b'[') => {
                let start = self.pos + 1;
                let end = self.s[start..].iter().position(|&c| c == b']').ok_or_else(|| self.err("unclosed '['"))?;
                let label = std::str::from_utf8(&self.s[start..start + end]).expect("ascii brackets").trim().to_string();
                if label.is_empty() {
                    return Err(self.err("empty label"));
                }
                self.pos = start + end + 1;
                Ok(ClassExpr::generator(&label))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).expect("digits").parse().expect("digits");
                Ok(ClassExpr::monomial(Vec::new(), n))
            }
            _ => Err(self.err("expected '[label]', an integer or '('")),
        }
    }
}
