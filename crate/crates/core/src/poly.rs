//! Exact univariate polynomials over the nonnegative integers, class-size spectra,
//! and the Fibonacci/Lucas sequences that the family formulas are written in.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::PolyError;

/// Dense polynomial in `x`; `coeffs[k]` is the coefficient of `x^k`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<BigUint>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(1u32)
    }

    pub fn x() -> Self {
        Polynomial::monomial(1u32, 1)
    }

    pub fn constant(c: impl Into<BigUint>) -> Self {
        Polynomial::from_coeffs(vec![c.into()])
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigUint>, k: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); k + 1];
        coeffs[k] = c.into();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &BigUint) -> BigUint {
        self.coeffs.iter().rev().fold(BigUint::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigUint) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigUint::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// `self - other`, or an error if any coefficient would go negative.
    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if other.coeffs.len() > self.coeffs.len() {
            return Err(PolyError::NegativeCoefficient);
        }
        let mut coeffs = self.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&other.coeffs) {
            if *a < *b {
                return Err(PolyError::NegativeCoefficient);
            }
            *a -= b;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

/// Ascending `c0 + c1*x + c2*x^2`; zero terms omitted, unit coefficients on `x^k`
/// dropped. The zero polynomial renders as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Inverse of the `Display` form. Also accepts `x` written with or without a
    /// coefficient and repeated exponents (which are summed).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse("empty string".into()));
        }
        let mut coeffs: Vec<BigUint> = Vec::new();
        for term in s.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            if term.is_empty() {
                return Err(PolyError::Parse(format!("empty term in {s:?}")));
            }
            let (coef, power) = match term.split_once('x') {
                None => (term.as_str(), None),
                Some((c, rest)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let c = if c.is_empty() { "1" } else { c };
                    let k = match rest {
                        "" => 1,
                        r => r
                            .strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| PolyError::Parse(format!("bad exponent in {term:?}")))?,
                    };
                    (c, Some(k))
                }
            };
            let c: BigUint =
                coef.parse().map_err(|_| PolyError::Parse(format!("bad coefficient in {term:?}")))?;
            let k = power.unwrap_or(0);
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigUint::zero());
            }
            coeffs[k] += c;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

/// Number of classes of each size. Sizes with no classes are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SizeSpectrum {
    entries: BTreeMap<u64, BigUint>,
}

impl SizeSpectrum {
    pub fn new() -> Self {
        SizeSpectrum::default()
    }

    /// Adds `count` classes of `size`, merging with an existing entry. Zero counts are ignored.
    pub fn add(&mut self, size: u64, count: impl Into<BigUint>) {
        let count = count.into();
        assert!(size >= 1, "class sizes are positive");
        if count.is_zero() {
            return;
        }
        *self.entries.entry(size).or_default() += count;
    }

    pub fn get(&self, size: u64) -> BigUint {
        self.entries.get(&size).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.entries.iter().map(|(&s, c)| (s, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of classes.
    pub fn total_count(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Sum of size times count: the number of DAGs covered.
    pub fn total_members(&self) -> BigUint {
        self.entries.iter().map(|(&s, c)| c * s).sum()
    }

    pub fn max_size(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    /// Spectrum of a disjoint union: sizes multiply and counts multiply.
    pub fn product(&self, other: &SizeSpectrum) -> SizeSpectrum {
        let mut out = SizeSpectrum::new();
        for (&a, ca) in &self.entries {
            for (&b, cb) in &other.entries {
                out.add(a * b, ca * cb);
            }
        }
        out
    }
}

impl FromIterator<(u64, BigUint)> for SizeSpectrum {
    fn from_iter<I: IntoIterator<Item = (u64, BigUint)>>(iter: I) -> Self {
        let mut s = SizeSpectrum::new();
        for (size, count) in iter {
            s.add(size, count);
        }
        s
    }
}

/// `{size:count, ...}` in ascending size.
impl fmt::Display for SizeSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}:{c}")?;
        }
        write!(f, "}}")
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Fibonacci numbers indexed with `F_0 = F_1 = 1`.
pub fn fibonacci_number(p: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 0..p {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Lucas numbers with `L_0 = 2`, `L_1 = 1`.
pub fn lucas_number(p: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::from(2u32), BigUint::one());
    for _ in 0..p {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F_p(x) = sum_k C(p-k, k) x^k`.
pub fn fibonacci_polynomial(p: usize) -> Polynomial {
    let p = p as u64;
    Polynomial::from_coeffs((0..=p / 2).map(|k| binomial(p - k, k)).collect())
}

/// `L_0 = 2`, `L_1 = 1`, `L_p = L_{p-1} + x L_{p-2}`.
pub fn lucas_polynomial(p: usize) -> Polynomial {
    let mut prev = Polynomial::constant(2u32);
    let mut cur = Polynomial::one();
    if p == 0 {
        return prev;
    }
    for _ in 1..p {
        let next = &cur + &prev.shift(1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[u64]) -> Polynomial {
        Polynomial::from_u64s(c)
    }

    #[test]
    fn ring_basics() {
        let one_plus_x = poly(&[1, 1]);
        assert_eq!(&one_plus_x * &one_plus_x, poly(&[1, 2, 1]));
        assert_eq!(poly(&[1, 2]).eval_at_one(), BigUint::from(3u32));
        assert_eq!(&Polynomial::zero() + &poly(&[4, 0, 5]), poly(&[4, 0, 5]));
        assert_eq!(poly(&[0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(poly(&[1, 0, 3]).degree(), Some(2));
        assert_eq!(poly(&[1, 2]).scale(&BigUint::from(3u32)), poly(&[3, 6]));
        assert_eq!(poly(&[1, 2]).shift(2), poly(&[0, 0, 1, 2]));
        assert_eq!(poly(&[1, 1]).pow(3), poly(&[1, 3, 3, 1]));
        assert_eq!(poly(&[1, 2, 1]).eval(&BigUint::from(2u32)), BigUint::from(9u32));
    }

    #[test]
    fn subtraction_checks_sign() {
        assert_eq!(poly(&[1, 4, 2]).checked_sub(&Polynomial::one()).unwrap(), poly(&[0, 4, 2]));
        assert_eq!(poly(&[1, 4]).checked_sub(&poly(&[2])), Err(PolyError::NegativeCoefficient));
        assert_eq!(poly(&[1]).checked_sub(&poly(&[0, 1])), Err(PolyError::NegativeCoefficient));
    }

    #[test]
    fn rendering() {
        assert_eq!(poly(&[1, 3, 1]).to_string(), "1 + 3*x + x^2");
        assert_eq!(poly(&[0, 4, 2]).to_string(), "4*x + 2*x^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(poly(&[1, 1, 0, 1]).to_string(), "1 + x + x^3");
        assert_eq!("1 + 3x + x^2".parse::<Polynomial>().unwrap(), poly(&[1, 3, 1]));
        assert_eq!("2*x^2 + 1*x + x".parse::<Polynomial>().unwrap(), poly(&[0, 2, 2]));
        assert!("1 + y".parse::<Polynomial>().is_err());
        assert!("1 + ".parse::<Polynomial>().is_err());
        assert!("x^".parse::<Polynomial>().is_err());
    }

    #[test]
    fn fibonacci_and_lucas() {
        assert_eq!(fibonacci_polynomial(4), poly(&[1, 3, 1]));
        assert_eq!(fibonacci_polynomial(0), Polynomial::one());
        assert_eq!(fibonacci_polynomial(1), Polynomial::one());
        assert_eq!(lucas_polynomial(0), poly(&[2]));
        assert_eq!(lucas_polynomial(1), poly(&[1]));
        assert_eq!(lucas_polynomial(2), poly(&[1, 2]));
        assert_eq!(lucas_polynomial(3), poly(&[1, 3]));
        assert_eq!(lucas_polynomial(4), poly(&[1, 4, 2]));
        assert_eq!(lucas_polynomial(5).eval_at_one(), BigUint::from(11u32));
        let fibs: Vec<u64> = vec![1, 1, 2, 3, 5, 8, 13, 21];
        for (p, &f) in fibs.iter().enumerate() {
            assert_eq!(fibonacci_number(p), BigUint::from(f));
        }
        let lucas: Vec<u64> = vec![2, 1, 3, 4, 7, 11, 18];
        for (p, &l) in lucas.iter().enumerate() {
            assert_eq!(lucas_number(p), BigUint::from(l));
        }
    }

    #[test]
    fn fibonacci_polynomial_recursion_and_value() {
        for p in 2..=30 {
            let rec = &fibonacci_polynomial(p - 1) + &fibonacci_polynomial(p - 2).shift(1);
            assert_eq!(fibonacci_polynomial(p), rec, "p = {p}");
        }
        for p in 0..=30 {
            assert_eq!(fibonacci_polynomial(p).eval_at_one(), fibonacci_number(p), "p = {p}");
        }
    }

    #[test]
    fn lucas_values_match_numbers() {
        for p in 0..=30 {
            assert_eq!(lucas_polynomial(p).eval_at_one(), lucas_number(p));
        }
    }

    #[test]
    fn spectrum_merges_and_omits_zero() {
        let mut s = SizeSpectrum::new();
        s.add(2, 1u32);
        s.add(2, 1u32);
        s.add(4, 1u32);
        s.add(1, 0u32);
        assert_eq!(s.to_string(), "{2:2, 4:1}");
        assert_eq!(s.total_count(), BigUint::from(3u32));
        assert_eq!(s.total_members(), BigUint::from(8u32));
        assert_eq!(s.max_size(), Some(4));
        let t = s.product(&s);
        assert_eq!(t.total_count(), BigUint::from(9u32));
        assert_eq!(t.get(8), BigUint::from(4u32));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
    }

    proptest! {
        #[test]
        fn display_round_trips(c in proptest::collection::vec(0u64..1000, 0..12)) {
            let p = poly(&c);
            prop_assert_eq!(p.to_string().parse::<Polynomial>().unwrap(), p);
        }

        #[test]
        fn multiplication_respects_evaluation(
            a in proptest::collection::vec(0u64..50, 0..8),
            b in proptest::collection::vec(0u64..50, 0..8),
        ) {
            let (pa, pb) = (poly(&a), poly(&b));
            prop_assert_eq!((&pa * &pb).eval_at_one(), pa.eval_at_one() * pb.eval_at_one());
            prop_assert_eq!(&pa * &pb, &pb * &pa);
        }
    }
}
