//! Sparse Laurent polynomials with integer coefficients in one variable `t`
//! and in two variables `t1, t2`.
//!
//! Coefficients are `i64`; every arithmetic step is checked and overflow
//! panics rather than wrapping.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

/// Element of `Z[t, t^-1]`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c t^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        LaurentPoly1 { terms }
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot = cadd(*slot, c);
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Whether `self = ±t^k` for some `k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs() == 1)
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly1 {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, cmul(c, k))))
    }

    /// `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly1 {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at `t = ±1`; the only integral evaluation points for negative
    /// exponents.
    pub fn eval_at_unit(&self, t: i64) -> i64 {
        assert!(t == 1 || t == -1, "evaluation point must be ±1");
        self.terms().fold(0, |acc, (e, c)| {
            let v = if t == -1 && e.rem_euclid(2) == 1 { -c } else { c };
            cadd(acc, v)
        })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dmax, dmin) = (d.max_degree()?, d.min_degree()?);
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let floor = match self.min_degree() {
            None => return Some(Self::zero()),
            Some(m) => m - dmin,
        };
        while let Some(rmax) = rem.max_degree() {
            let e = rmax - dmax;
            if e < floor {
                return None;
            }
            let c = rem.coeff(rmax);
            if c % lead != 0 {
                return None;
            }
            let term = Self::monomial(c / lead, e);
            rem = &rem - &(&term * d);
            quot.add_term(e, c / lead);
        }
        Some(quot)
    }

    /// Representative of `self` up to units `±t^k`: exponents centred on zero
    /// (for an odd span the extra half-step goes to the positive side) and a
    /// positive top coefficient. Zero stays zero.
    pub fn normalize_units(&self) -> Self {
        let (lo, hi) = match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Self::zero(),
        };
        let span = hi - lo;
        let shifted = self.shift(-lo - span / 2);
        if shifted.coeff(hi - lo - span / 2) < 0 {
            -shifted
        } else {
            shifted
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalize_units() == other.normalize_units()
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly1 {
    /// A list of `[exponent, coefficient]` pairs, increasing exponent.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&[e, c])?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a LaurentPoly1> for &'a LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly1> for &'a LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly1> for &'a LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, cmul(c1, c2));
            }
        }
        out
    }
}

impl Neg for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn neg(self) -> LaurentPoly1 {
        LaurentPoly1 {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: LaurentPoly1) -> LaurentPoly1 {
        &self + &rhs
    }
}

impl Sub for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: LaurentPoly1) -> LaurentPoly1 {
        &self - &rhs
    }
}

impl Mul for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: LaurentPoly1) -> LaurentPoly1 {
        &self * &rhs
    }
}

/// Determinant of a square matrix over `Z[t, t^-1]` by fraction-free
/// (Bareiss) elimination; every division is exact.
pub fn determinant(mut m: Vec<Vec<LaurentPoly1>>) -> LaurentPoly1 {
    let n = m.len();
    if n == 0 {
        return LaurentPoly1::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly1::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return LaurentPoly1::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Element of `Z[t1^±1, t2^±1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: i64, e1: i64, e2: i64) -> Self {
        Self::from_terms([((e1, e2), c)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (i64, i64), c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot = cadd(*slot, c);
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: i64, e2: i64) -> i64 {
        self.terms.get(&(e1, e2)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(t1, t2) -> (t1^-1, t2^-1)`.
    pub fn invert_variables(&self) -> Self {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(&(a, b), &c)| ((-a, -b), c)).collect(),
        }
    }

    /// Value at `t1 = t2 = 1`.
    pub fn eval_at_ones(&self) -> i64 {
        self.terms.values().fold(0, |acc, &c| cadd(acc, c))
    }

    /// `t1 = t2 = t`.
    pub fn diagonal(&self) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.terms().map(|((a, b), c)| (a + b, c)))
    }
}

impl<'a> Add<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in rhs.terms() {
                out.add_term((a1 + a2, b1 + b2), cmul(c1, c2));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = |name: &str, e: i64| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        for (i, (&(a, b), &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            let mono: Vec<String> = [var("t1", a), var("t2", b)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}")?;
                }
                write!(f, "{}", mono.join(" "))?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly2 {
    /// A list of `[e1, e2, coefficient]` triples.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for ((a, b), c) in self.terms() {
            seq.serialize_element(&[a, b, c])?;
        }
        seq.end()
    }
}
