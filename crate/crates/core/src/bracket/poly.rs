//! Exact Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Sparse `exponent -> coefficient` map; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `max_degree - min_degree`, or 0 for the zero polynomial.
    pub fn span(&self) -> i32 {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `x -> x^{-1}`.
    pub fn reciprocal(&self) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Substitutes `x -> x^k`.
    pub fn scale_exponents(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &c)| (e * k, c)))
    }

    /// Divides every exponent by `d`, or `None` if one is not a multiple.
    pub fn divide_exponents(&self, d: i32) -> Option<Self> {
        if self.terms.keys().any(|e| e % d != 0) {
            return None;
        }
        Some(LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (e / d, c)).collect() })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `x = v`; requires every negative power to be invertible, so
    /// `v` must be `1` or `-1`.
    pub fn eval_unit(&self, v: i64) -> i64 {
        assert!(v == 1 || v == -1);
        self.terms.iter().map(|(&e, &c)| if v == -1 && e % 2 != 0 { -c } else { c }).sum()
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dlo, dhi) = (divisor.min_degree()?, divisor.max_degree()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_degree() {
            let lo = rem.min_degree().expect("non-zero");
            if hi - lo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return None;
            }
            let term = Self::monomial(c / lead, hi - dhi);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Human-readable form in the variable `var`, e.g. `-t^-4 + t^-3 + t^-1`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        out
    }

    /// Compact `exponent:coeff,...` form used by the knot table file.
    pub fn to_compact(&self) -> String {
        self.terms.iter().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(",")
    }

    pub fn from_compact(s: &str) -> Option<Self> {
        let mut p = Self::zero();
        if s == "0" {
            return Some(p);
        }
        let mut last = None;
        for part in s.split(',') {
            let (e, c) = part.split_once(':')?;
            let (e, c): (i32, i64) = (e.parse().ok()?, c.parse().ok()?);
            if c == 0 || last.is_some_and(|l| l >= e) {
                return None;
            }
            last = Some(e);
            p.terms.insert(e, c);
        }
        Some(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}
