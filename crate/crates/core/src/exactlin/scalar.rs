use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::LinError;

/// The ground field of a session: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, LinError> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(LinError::BadField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(p as i64) as u32, p),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinError> {
        if den == 0 {
            return Err(LinError::Parse("zero denominator".into()));
        }
        Ok(self.from_i64(num) * self.from_i64(den).inv()?)
    }

    /// Parses the document encoding of a scalar: `"3/7"`, `"-2"` over Q, `"5 mod 101"` over `F_p`.
    /// A bare integer is accepted over `F_p` and reduced.
    pub fn parse(&self, s: &str) -> Result<Scalar, LinError> {
        let s = s.trim();
        match *self {
            Field::Rational => {
                if s.contains("mod") {
                    return Err(LinError::FieldMismatch);
                }
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| LinError::Parse(format!("bad rational {s:?}")))?;
                let d: BigInt = d.parse().map_err(|_| LinError::Parse(format!("bad rational {s:?}")))?;
                if d.is_zero() {
                    return Err(LinError::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let (v, q) = match s.split_once("mod") {
                    Some((v, q)) => {
                        let q: u32 = q.trim().parse().map_err(|_| LinError::Parse(format!("bad modulus in {s:?}")))?;
                        (v.trim(), q)
                    }
                    None => (s, p),
                };
                if q != p {
                    return Err(LinError::FieldMismatch);
                }
                let v: BigInt = v.parse().map_err(|_| LinError::Parse(format!("bad residue {s:?}")))?;
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Ok(Scalar::Fp(r.to_u32().unwrap(), p))
            }
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<(), LinError> {
        if s.field() == *self {
            Ok(())
        } else {
            Err(LinError::FieldMismatch)
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = LinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("Fp:") {
            Some(p) => Field::prime(p.parse().map_err(|_| LinError::BadField(s.to_string()))?),
            None => Err(LinError::BadField(s.to_string())),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Arithmetic between different fields panics; boundaries
/// (parsing, matrix construction) report [`LinError::FieldMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u32, u32),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, LinError> {
        if self.is_zero() {
            return Err(LinError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Fp(v, p) => Scalar::Fp(pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32, *p),
        })
    }

    /// `(-1)^k` times `self`.
    pub fn signed(self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 1 {
            -self
        } else {
            self
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp(..) => None,
        }
    }

    /// Document encoding; inverse of [`Field::parse`].
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v, p) => write!(f, "{v} mod {p}"),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar arithmetic across different fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) if p == q => {
                Scalar::Fp(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a, p) => Scalar::Fp((*p - *a) % *p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

/// Clears denominators of a rational row, returning integer entries.
pub(crate) fn integerize(row: &[(usize, BigRational)]) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, r) in row {
        lcm = num_integer::lcm(lcm, r.denom().clone());
    }
    row.iter()
        .map(|(c, r)| (*c, r.numer() * (&lcm / r.denom())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_encode() {
        let q = Field::Rational;
        assert_eq!(q.parse("3/7").unwrap().encode(), "3/7");
        assert_eq!(q.parse("6/3").unwrap().encode(), "2");
        assert_eq!(q.parse("-4/6").unwrap().encode(), "-2/3");
        let f = Field::prime(101).unwrap();
        assert_eq!(f.parse("5 mod 101").unwrap().encode(), "5 mod 101");
        assert_eq!(f.parse("-1").unwrap().encode(), "100 mod 101");
        assert!(matches!(f.parse("5 mod 103"), Err(LinError::FieldMismatch)));
        assert!(matches!(q.parse("5 mod 101"), Err(LinError::FieldMismatch)));
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("Fp:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("Fp:100".parse::<Field>().is_err());
        assert_eq!(Field::Prime(7).to_string(), "Fp:7");
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(101).unwrap();
        for v in 1..101 {
            let x = f.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_err());
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(5).one();
    }
}
