use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field for a whole computation: either the rationals or
/// the Gaussian rationals Q(i). A session fixes one mode up front; mixing
/// modes inside a single matrix or algebra is rejected at construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    #[serde(rename = "gaussian-rational", alias = "gaussian")]
    Gaussian,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Rational => write!(f, "rational"),
            Mode::Gaussian => write!(f, "gaussian-rational"),
        }
    }
}

/// An exact scalar: a rational number or a Gaussian rational.
///
/// Arithmetic between scalars of different modes is an internal invariant
/// violation and panics; public entry points enforce mode homogeneity before
/// any arithmetic happens.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Gauss(Complex<BigRational>),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Rat(_) => Mode::Rational,
            Scalar::Gauss(_) => Mode::Gaussian,
        }
    }

    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Rational => Scalar::Rat(BigRational::zero()),
            Mode::Gaussian => Scalar::Gauss(Complex::new(BigRational::zero(), BigRational::zero())),
        }
    }

    pub fn one(mode: Mode) -> Self {
        match mode {
            Mode::Rational => Scalar::Rat(BigRational::one()),
            Mode::Gaussian => Scalar::Gauss(Complex::new(BigRational::one(), BigRational::zero())),
        }
    }

    /// The imaginary unit. Only meaningful in Gaussian mode.
    pub fn i() -> Self {
        Scalar::Gauss(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_int(v: i64, mode: Mode) -> Self {
        let r = BigRational::from_integer(BigInt::from(v));
        match mode {
            Mode::Rational => Scalar::Rat(r),
            Mode::Gaussian => Scalar::Gauss(Complex::new(r, BigRational::zero())),
        }
    }

    pub fn from_ratio(num: i64, den: i64, mode: Mode) -> Self {
        assert!(den != 0, "zero denominator");
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        match mode {
            Mode::Rational => Scalar::Rat(r),
            Mode::Gaussian => Scalar::Gauss(Complex::new(r, BigRational::zero())),
        }
    }

    pub fn from_rational(r: BigRational, mode: Mode) -> Self {
        match mode {
            Mode::Rational => Scalar::Rat(r),
            Mode::Gaussian => Scalar::Gauss(Complex::new(r, BigRational::zero())),
        }
    }

    pub fn gauss(re: BigRational, im: BigRational) -> Self {
        Scalar::Gauss(Complex::new(re, im))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gauss(c) => c.re.is_zero() && c.im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gauss(c) => c.re.is_one() && c.im.is_zero(),
        }
    }

    /// Complex conjugate; the identity in rational mode.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.clone()),
            Scalar::Gauss(c) => Scalar::Gauss(Complex::new(c.re.clone(), -c.im.clone())),
        }
    }

    /// Exact division, rejecting a zero divisor.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a / b),
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a / b),
            (a, b) => panic!("scalar mode mismatch: {:?} / {:?}", a.mode(), b.mode()),
        })
    }

    /// Multiplicative inverse, rejecting zero.
    pub fn checked_inv(&self) -> Result<Scalar> {
        Scalar::one(self.mode()).checked_div(self)
    }

    /// Parses a rational literal of the form "p" or "p/q". Floating point
    /// forms are rejected so no inexactness can sneak in through input files.
    pub fn parse_rational(text: &str) -> Result<BigRational> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty rational literal".into()));
        }
        let bad = |msg: &str| Error::Parse(format!("{msg}: {t:?}"));
        let (num_str, den_str) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (t, None),
        };
        let num: BigInt = num_str
            .parse()
            .map_err(|_| bad("expected an integer or p/q rational"))?;
        let den: BigInt = match den_str {
            Some(d) => d
                .parse()
                .map_err(|_| bad("expected an integer denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    /// Real and imaginary parts as rationals (imaginary part zero in
    /// rational mode).
    pub fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rat(r) => (r.clone(), BigRational::zero()),
            Scalar::Gauss(c) => (c.re.clone(), c.im.clone()),
        }
    }

    /// True when every rational component has denominator 1.
    pub fn is_integral(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.denom().is_one(),
            Scalar::Gauss(c) => c.re.denom().is_one() && c.im.denom().is_one(),
        }
    }

    /// Folds the denominators of all components into `acc` by lcm.
    pub(crate) fn fold_denom_lcm(&self, acc: &mut BigInt) {
        let mut step = |d: &BigInt| {
            if !d.is_one() {
                *acc = acc.lcm(d);
            }
        };
        match self {
            Scalar::Rat(r) => step(r.denom()),
            Scalar::Gauss(c) => {
                step(c.re.denom());
                step(c.im.denom());
            }
        }
    }

    /// Folds the (integral) numerators of all components into `acc` by gcd.
    /// Callers must have cleared denominators first.
    pub(crate) fn fold_numer_gcd(&self, acc: &mut BigInt) {
        debug_assert!(self.is_integral());
        let mut step = |n: &BigInt| {
            if !n.is_zero() {
                *acc = acc.gcd(n);
            }
        };
        match self {
            Scalar::Rat(r) => step(r.numer()),
            Scalar::Gauss(c) => {
                step(c.re.numer());
                step(c.im.numer());
            }
        }
    }

    pub(crate) fn mul_int(&mut self, k: &BigInt) {
        let k = BigRational::from_integer(k.clone());
        match self {
            Scalar::Rat(r) => *r *= &k,
            Scalar::Gauss(c) => {
                c.re *= &k;
                c.im *= &k;
            }
        }
    }

    pub(crate) fn div_int_exact(&mut self, k: &BigInt) {
        let k = BigRational::from_integer(k.clone());
        match self {
            Scalar::Rat(r) => *r /= &k,
            Scalar::Gauss(c) => {
                c.re /= &k;
                c.im /= &k;
            }
        }
    }
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => fmt_rat(r, f),
            Scalar::Gauss(c) => {
                if c.im.is_zero() {
                    return fmt_rat(&c.re, f);
                }
                if c.re.is_zero() {
                    if c.im.is_one() {
                        return write!(f, "i");
                    }
                    if (-&c.im).is_one() {
                        return write!(f, "-i");
                    }
                    fmt_rat(&c.im, f)?;
                    return write!(f, "i");
                }
                fmt_rat(&c.re, f)?;
                if c.im.is_positive() {
                    write!(f, "+")?;
                }
                if c.im.is_one() {
                    return write!(f, "i");
                }
                if (-&c.im).is_one() {
                    return write!(f, "-i");
                }
                fmt_rat(&c.im, f)?;
                write!(f, "i")
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $op b),
                    (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a $op b),
                    (a, b) => panic!(
                        "scalar mode mismatch: {:?} vs {:?}",
                        a.mode(),
                        b.mode()
                    ),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Gauss(c) => Scalar::Gauss(-c.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_accepts_integers_and_fractions() {
        assert_eq!(
            Scalar::parse_rational("3/4").unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(4))
        );
        assert_eq!(
            Scalar::parse_rational("-7").unwrap(),
            BigRational::from_integer(BigInt::from(-7))
        );
        assert_eq!(
            Scalar::parse_rational(" 6/-4 ").unwrap(),
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
    }

    #[test]
    fn parse_rational_rejects_floats_and_zero_denominators() {
        assert!(Scalar::parse_rational("0.5").is_err());
        assert!(Scalar::parse_rational("1e3").is_err());
        assert!(Scalar::parse_rational("1/0").is_err());
        assert!(Scalar::parse_rational("").is_err());
        assert!(Scalar::parse_rational("1/2/3").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let one = Scalar::one(Mode::Rational);
        let zero = Scalar::zero(Mode::Rational);
        assert!(matches!(one.checked_div(&zero), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gaussian_arithmetic_and_conjugation() {
        let i = Scalar::i();
        let one = Scalar::one(Mode::Gaussian);
        // i * i = -1
        assert_eq!(&i * &i, -&one);
        // conj(1 + i) = 1 - i
        let z = &one + &i;
        assert_eq!(z.conj(), &one - &i);
        // (1+i)/(1-i) = i
        assert_eq!(z.checked_div(&z.conj()).unwrap(), i);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_ratio(-3, 4, Mode::Rational).to_string(), "-3/4");
        assert_eq!(Scalar::from_int(5, Mode::Gaussian).to_string(), "5");
        let z = Scalar::gauss(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::from_integer(BigInt::from(-1)),
        );
        assert_eq!(z.to_string(), "1/2-i");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((-Scalar::i()).to_string(), "-i");
    }
}
