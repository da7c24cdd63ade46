use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact complex number `re + i*im` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigRational::new(numer.into(), denom.into()), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -&self.im / &norm))
    }

    /// `(re, im)` rounded to the nearest doubles.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// True when the number is a negative real or a purely imaginary number
    /// with negative imaginary part; used to print a leading minus sign.
    fn leading_negative(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative() && !self.im.is_positive()
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else if self.im.is_integer() {
                    write!(f, "{}i", self.im)
                } else if self.im.numer().abs().is_one() {
                    let sign = if self.im.is_negative() { "-" } else { "" };
                    write!(f, "{}i/{}", sign, self.im.denom())
                } else {
                    write!(f, "{}i/{}", self.im.numer(), self.im.denom())
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let mag = self.im.abs();
                if mag.is_one() {
                    write!(f, "({}{}i)", self.re, sign)
                } else {
                    write!(f, "({}{}{}i)", self.re, sign, mag)
                }
            }
        }
    }
}

/// A Laurent polynomial in the spacing symbol `a` with Gaussian-rational
/// coefficients. Zero terms are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    terms: BTreeMap<i32, GaussianRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * a^power`.
    pub fn monomial(c: GaussianRational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        Self { terms }
    }

    /// The spacing symbol `a` itself.
    pub fn spacing() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussianRational::is_one)
    }

    /// `(power, coefficient)` pairs in ascending power.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussianRational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Inverse of a single-term coefficient `c*a^k`; `None` otherwise.
    pub fn inv_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&k, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inv()?, -k))
    }

    fn add_term(&mut self, power: i32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(power).or_insert_with(GaussianRational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Evaluates at a concrete spacing value.
    pub fn evaluate(&self, a: f64) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), (&k, c)| {
            let (cr, ci) = c.to_f64_pair();
            let ak = a.powi(k);
            (re + cr * ak, im + ci * ak)
        })
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Self) -> Coefficient {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Self) -> Coefficient {
        self + &(-rhs)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Self) -> Coefficient {
        let mut out = Coefficient::zero();
        for (&k1, c1) in &self.terms {
            for (&k2, c2) in &rhs.terms {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }
}

impl From<BigInt> for Coefficient {
    fn from(n: BigInt) -> Self {
        Coefficient::constant(GaussianRational::real(BigRational::from_integer(n)))
    }
}

impl fmt::Display for Coefficient {
    /// Highest power of `a` first, e.g. `a^2-1/4*a^-2` or `-i/2*a^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.leading_negative();
            let mag = if negative { -c } else { c.clone() };
            if negative {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let power = match k {
                0 => String::new(),
                1 => "a".to_string(),
                k => format!("a^{k}"),
            };
            match (mag.is_one(), power.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{power}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{power}")?,
            }
        }
        Ok(())
    }
}
