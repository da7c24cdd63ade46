use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coefficient::{Coefficient, GaussianRational};

/// An element `sum c_{k,m}(a) * P^k * A^m` of the algebra generated by the
/// momentum operator `P` and the shifts `A`, `Abar = A^-1`, stored in
/// P-before-shift normal order.
///
/// Keys are `(k, m)` with `k >= 0` the power of `P` and `m` the net shift
/// (`m < 0` stands for `Abar^{-m}`). Zero coefficients are never stored, so
/// two operators are equal exactly when their maps are.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicOperator {
    terms: BTreeMap<(u32, i32), Coefficient>,
}

impl SymbolicOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Coefficient::one())
    }

    pub fn scalar(c: Coefficient) -> Self {
        Self::term(0, 0, c)
    }

    /// `c * P^k * A^m`.
    pub fn term(k: u32, m: i32, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((k, m), c);
        }
        Self { terms }
    }

    pub fn momentum() -> Self {
        Self::term(1, 0, Coefficient::one())
    }

    /// `A^m` (or `Abar^{-m}` for negative `m`).
    pub fn shift(m: i32) -> Self {
        Self::term(0, m, Coefficient::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, k: u32, m: i32) -> Option<&Coefficient> {
        self.terms.get(&(k, m))
    }

    /// `((k, m), coefficient)` in ascending `(k, m)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, i32), &Coefficient)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// The coefficient if this is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Largest `|m|` over the stored terms.
    pub fn max_shift(&self) -> u32 {
        self.terms.keys().map(|(_, m)| m.unsigned_abs()).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, k: u32, m: i32, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((k, m)).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&(k, m));
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero();
        for (&(k, m), coef) in &self.terms {
            out.add_term(k, m, &(coef * c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| &acc * self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }
}

/// Binomial coefficients `C(k, 0..=k)`.
fn binomial_row(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let next = row[i as usize].clone() * BigInt::from(k - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

impl Mul for &SymbolicOperator {
    type Output = SymbolicOperator;

    /// Uses `A^m P^k = (P + m a)^k A^m`, which is the exchange rule
    /// `A P -> (P + a) A` (and `Abar P -> (P - a) Abar`) applied until every
    /// shift sits to the right of every `P`.
    fn mul(self, rhs: Self) -> SymbolicOperator {
        let mut out = SymbolicOperator::zero();
        for (&(k1, m1), c1) in &self.terms {
            for (&(k2, m2), c2) in &rhs.terms {
                let c12 = c1 * c2;
                let binom = binomial_row(k2);
                for (i, b) in binom.iter().enumerate() {
                    let power = k2 - i as u32;
                    if m1 == 0 && power > 0 {
                        continue;
                    }
                    let shift_factor = BigInt::from(m1).pow(power) * b;
                    if shift_factor.is_zero() {
                        continue;
                    }
                    let c = &c12 * &Coefficient::monomial(GaussianRational::real(shift_factor.into()), power as i32);
                    out.add_term(k1 + i as u32, m1 + m2, &c);
                }
            }
        }
        out
    }
}

impl Add for &SymbolicOperator {
    type Output = SymbolicOperator;
    fn add(self, rhs: Self) -> SymbolicOperator {
        let mut out = self.clone();
        for (&(k, m), c) in &rhs.terms {
            out.add_term(k, m, c);
        }
        out
    }
}

impl Sub for &SymbolicOperator {
    type Output = SymbolicOperator;
    fn sub(self, rhs: Self) -> SymbolicOperator {
        self + &(-rhs)
    }
}

impl Neg for &SymbolicOperator {
    type Output = SymbolicOperator;
    fn neg(self) -> SymbolicOperator {
        SymbolicOperator { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

fn shift_name(m: i32) -> String {
    match m {
        0 => String::new(),
        1 => "A".into(),
        -1 => "Abar".into(),
        m if m > 0 => format!("A^{m}"),
        m => format!("Abar^{}", -m),
    }
}

fn p_name(k: u32) -> String {
    match k {
        0 => String::new(),
        1 => "P".into(),
        k => format!("P^{k}"),
    }
}

impl fmt::Display for SymbolicOperator {
    /// Groups terms by shift, e.g. `(P+a)*A` or `P^2-1/4*a^-2*A^2+...`.
    /// Within a group, powers of `P` are listed in descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut groups: BTreeMap<i32, Vec<(u32, &Coefficient)>> = BTreeMap::new();
        for (&(k, m), c) in &self.terms {
            groups.entry(m).or_default().push((k, c));
        }
        let mut first_group = true;
        for (m, mut items) in groups {
            items.sort_by_key(|x| std::cmp::Reverse(x.0));
            let mut poly = String::new();
            for (k, c) in &items {
                let text = monomial_text(*k, c);
                if !poly.is_empty() && !text.starts_with('-') {
                    poly.push('+');
                }
                poly.push_str(&text);
            }
            let shift = shift_name(m);
            let multi = items.len() > 1;
            let group = match (shift.is_empty(), multi) {
                (true, _) => poly,
                (false, true) => format!("({poly})*{shift}"),
                (false, false) if poly == "1" => shift,
                (false, false) if poly == "-1" => format!("-{shift}"),
                (false, false) => format!("{poly}*{shift}"),
            };
            if !first_group && !group.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{group}")?;
            first_group = false;
        }
        Ok(())
    }
}

fn monomial_text(k: u32, c: &Coefficient) -> String {
    let p = p_name(k);
    let coef = c.to_string();
    let coef = if c.term_count() > 1 { format!("({coef})") } else { coef };
    match (p.is_empty(), coef.as_str()) {
        (true, _) => coef,
        (false, "1") => p,
        (false, "-1") => format!("-{p}"),
        (false, _) => format!("{coef}*{p}"),
    }
}
