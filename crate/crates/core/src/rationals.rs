//! Rationals, negative continued fractions `a_1 - 1/(a_2 - 1/(... - 1/a_n))`,
//! the two coefficient-move families, and the parity normal form used to
//! build twist words.
//!
//! A coefficient list `[b_1, ..., b_N]` evaluates through the product of
//! `[[b_i, -1], [1, 0]]`: the numerator is the (1,1) entry and the
//! denominator the (2,1) entry. Every factor has determinant 1, so the pair is
//! always coprime and only the sign needs fixing.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A reduced fraction `p/q` with `q >= 1`; zero is `0/1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rational {
    p: i64,
    q: i64,
}

impl Rational {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Rational { p, q })
    }

    pub fn integer(n: i64) -> Self {
        Rational { p: n, q: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `p/q`; only `p` may carry a sign.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadRational(s.to_string());
        let (ps, qs) = s.trim().split_once('/').ok_or_else(bad)?;
        if qs.is_empty() || !qs.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = ps.strip_prefix(['-', '+']).unwrap_or(ps);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let p: i64 = ps.parse().map_err(|_| bad())?;
        let q: i64 = qs.parse().map_err(|_| bad())?;
        Rational::new(p, q)
    }
}

pub(crate) type Mat2 = [[i64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| {
        a[i][0]
            .checked_mul(b[0][j])
            .and_then(|x| a[i][1].checked_mul(b[1][j]).and_then(|y| x.checked_add(y)))
            .expect("continued fraction matrix overflow")
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Sign of a unit coefficient inserted or removed by a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn of(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// One step of the coefficient calculus. Sites are 0-based indices.
///
/// `Expand`/`Contract` and `Append`/`TrimEnd` keep the value of the fraction.
/// `Prepend`/`TrimStart` send `p/q` to `p/(q ± p)`: the numerator and `q mod p`
/// survive, so the 2-bridge link is unchanged but the rational is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// `(a_i, a_{i+1}) -> (a_i + s, s, a_{i+1} + s)` with `i = site`.
    Expand { site: usize, sign: Sign },
    /// `(a, s, c) -> (a - s, c - s)` where `coeffs[site] = s = ±1`.
    Contract { site: usize },
    /// `(..., a_n) -> (..., a_n + s, s)`.
    Append { sign: Sign },
    /// `(..., a, s) -> (..., a - s)` where the last entry is `s = ±1`.
    TrimEnd,
    /// `(a_1, ...) -> (s, a_1 + s, ...)`.
    Prepend { sign: Sign },
    /// `(s, a, ...) -> (a - s, ...)` where the first entry is `s = ±1`.
    TrimStart,
}

impl Move {
    pub fn preserves_value(&self) -> bool {
        !matches!(self, Move::Prepend { .. } | Move::TrimStart)
    }

    /// The move undoing `self` when applied to `before`.
    pub fn inverse(&self, before: &[i64]) -> Move {
        match *self {
            Move::Expand { site, .. } => Move::Contract { site: site + 1 },
            Move::Contract { site } => Move::Expand {
                site: site - 1,
                sign: Sign::of(before[site]).expect("contract site holds ±1"),
            },
            Move::Append { .. } => Move::TrimEnd,
            Move::TrimEnd => Move::Append {
                sign: Sign::of(*before.last().unwrap()).expect("trimmed entry is ±1"),
            },
            Move::Prepend { .. } => Move::TrimStart,
            Move::TrimStart => Move::Prepend {
                sign: Sign::of(before[0]).expect("trimmed entry is ±1"),
            },
        }
    }
}

impl fmt::Display for Move {
    /// Compact form with 1-based sites, e.g. `expand@1+`, `contract@2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |sign: Sign| if sign == Sign::Plus { '+' } else { '-' };
        match *self {
            Move::Expand { site, sign } => write!(f, "expand@{}{}", site + 1, s(sign)),
            Move::Contract { site } => write!(f, "contract@{}", site + 1),
            Move::Append { sign } => write!(f, "append{}", s(sign)),
            Move::TrimEnd => write!(f, "trim-end"),
            Move::Prepend { sign } => write!(f, "prepend{}", s(sign)),
            Move::TrimStart => write!(f, "trim-start"),
        }
    }
}

impl FromStr for Move {
    type Err = Error;

    /// Inverse of the `Display` form.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadMove(s.to_string());
        let sign = |c: &str| match c {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(bad()),
        };
        let site = |d: &str| match d.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(bad()),
        };
        let s = s.trim();
        match s {
            "trim-end" => return Ok(Move::TrimEnd),
            "trim-start" => return Ok(Move::TrimStart),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("expand@") {
            if rest.len() < 2 {
                return Err(bad());
            }
            let (d, c) = rest.split_at(rest.len() - 1);
            return Ok(Move::Expand {
                site: site(d)?,
                sign: sign(c)?,
            });
        }
        if let Some(rest) = s.strip_prefix("contract@") {
            return Ok(Move::Contract { site: site(rest)? });
        }
        if let Some(c) = s.strip_prefix("append") {
            return Ok(Move::Append { sign: sign(c)? });
        }
        if let Some(c) = s.strip_prefix("prepend") {
            return Ok(Move::Prepend { sign: sign(c)? });
        }
        Err(bad())
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Comma-separated integers without spaces, e.g. `2,-1,4`.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|x| x.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::BadCoefficients(s.to_string()))?;
        ContinuedFraction::new(coeffs)
    }
}

/// A nonempty coefficient list `[b_1, ..., b_N]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ContinuedFraction {
    coeffs: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        Ok(ContinuedFraction { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `Π [[b_i, -1], [1, 0]]`; total.
    pub fn matrix(&self) -> Mat2 {
        self.coeffs
            .iter()
            .fold([[1, 0], [0, 1]], |acc, &b| mat_mul(&acc, &[[b, -1], [1, 0]]))
    }

    /// The value `p/q` read off the first column of [`Self::matrix`].
    pub fn evaluate(&self) -> Result<Rational> {
        let m = self.matrix();
        if m[1][0] == 0 {
            return Err(Error::InfiniteValue(self.coeffs.clone()));
        }
        Rational::new(m[0][0], m[1][0])
    }

    /// Canonical expansion by ceiling division: `b_i = ⌈p/q⌉` at every step,
    /// so `b_i >= 2` for `i >= 2`. Zero expands to `[0]`.
    pub fn expand(r: Rational) -> Self {
        let (mut p, mut q) = (r.p, r.q);
        let mut coeffs = Vec::new();
        loop {
            let b = -((-p).div_euclid(q));
            coeffs.push(b);
            let rem = b * q - p;
            if rem == 0 {
                break;
            }
            p = q;
            q = rem;
        }
        ContinuedFraction { coeffs }
    }

    pub fn apply(&self, mv: Move) -> Result<Self> {
        apply_move(&self.coeffs, mv).map(|coeffs| ContinuedFraction { coeffs })
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

fn apply_move(c: &[i64], mv: Move) -> Result<Vec<i64>> {
    let illegal = || Error::IllegalSite {
        mv: mv.to_string(),
        coeffs: c.to_vec(),
    };
    let n = c.len();
    let mut out = Vec::with_capacity(n + 1);
    match mv {
        Move::Expand { site, sign } => {
            if site + 1 >= n {
                return Err(illegal());
            }
            let s = sign.value();
            out.extend_from_slice(&c[..site]);
            out.extend([c[site] + s, s, c[site + 1] + s]);
            out.extend_from_slice(&c[site + 2..]);
        }
        Move::Contract { site } => {
            if site == 0 || site + 1 >= n {
                return Err(illegal());
            }
            let s = Sign::of(c[site]).ok_or_else(illegal)?.value();
            out.extend_from_slice(&c[..site - 1]);
            out.extend([c[site - 1] - s, c[site + 1] - s]);
            out.extend_from_slice(&c[site + 2..]);
        }
        Move::Append { sign } => {
            let s = sign.value();
            out.extend_from_slice(c);
            *out.last_mut().ok_or_else(illegal)? += s;
            out.push(s);
        }
        Move::TrimEnd => {
            if n < 2 {
                return Err(illegal());
            }
            let s = Sign::of(c[n - 1]).ok_or_else(illegal)?.value();
            out.extend_from_slice(&c[..n - 1]);
            out[n - 2] -= s;
        }
        Move::Prepend { sign } => {
            if n == 0 {
                return Err(illegal());
            }
            let s = sign.value();
            out.push(s);
            out.extend_from_slice(c);
            out[1] += s;
        }
        Move::TrimStart => {
            if n < 2 {
                return Err(illegal());
            }
            let s = Sign::of(c[0]).ok_or_else(illegal)?.value();
            out.extend_from_slice(&c[1..]);
            out[0] -= s;
        }
    }
    Ok(out)
}

pub fn cf_evaluate(cf: &ContinuedFraction) -> Result<Rational> {
    cf.evaluate()
}

pub fn cf_expand(r: Rational) -> ContinuedFraction {
    ContinuedFraction::expand(r)
}

pub fn cf_apply_move(cf: &ContinuedFraction, mv: Move) -> Result<ContinuedFraction> {
    cf.apply(mv)
}

/// Records moves while rewriting a coefficient list in place.
struct Rewriter {
    coeffs: Vec<i64>,
    moves: Vec<Move>,
}

impl Rewriter {
    fn apply(&mut self, mv: Move) {
        self.coeffs = apply_move(&self.coeffs, mv).expect("rewrite schedule applies legal moves");
        self.moves.push(mv);
    }

    /// `(w, 0, c, rest)` with `c >= 2` becomes `(w + c, rest)`.
    fn merge_interior_zero(&mut self, j: usize) {
        let c = self.coeffs[j + 1];
        for _ in 0..c {
            // (a, 0, c) -> (a + 1, 1, 1, c) -> (a + 1, 0, c - 1)
            self.apply(Move::Expand { site: j - 1, sign: Sign::Plus });
            self.apply(Move::Contract { site: j + 1 });
        }
        self.drop_zero_pair(j);
    }

    /// Removes a `(0, 0)` pair at `(j, j + 1)`; `j >= 1`.
    fn drop_zero_pair(&mut self, j: usize) {
        debug_assert_eq!(&self.coeffs[j..j + 2], &[0, 0]);
        self.apply(Move::Expand { site: j, sign: Sign::Plus });
        if j + 3 < self.coeffs.len() {
            // (x, 1, 1, 1, d) -> (x - 1, 0, 1, d) -> (x - 1, -1, d - 1) -> (x, d)
            self.apply(Move::Contract { site: j });
            self.apply(Move::Contract { site: j + 1 });
            self.apply(Move::Contract { site: j });
        } else {
            // (x, 1, 1, 1) -> (x - 1, 0, 1) -> (x - 1, -1) -> (x)
            self.apply(Move::Contract { site: j });
            self.apply(Move::TrimEnd);
            self.apply(Move::TrimEnd);
        }
    }

    /// `(u, w, 0)` at the end becomes `(u)`; the value of `(w, 0)` is infinite.
    fn drop_trailing_pole(&mut self, j: usize) {
        let mut w = self.coeffs[j - 1];
        while w != 0 {
            let sign = if w < 0 { Sign::Plus } else { Sign::Minus };
            // (w, 0) -> (w + s, s, s) -> (w + s, 0)
            self.apply(Move::Expand { site: j - 1, sign });
            self.apply(Move::TrimEnd);
            w += sign.value();
        }
        self.drop_zero_pair(j - 1);
    }
}

/// Rewrites a finite-valued list into its ceiling expansion using only
/// value-preserving moves. Returns the moves applied.
pub fn reduce_to_expansion(cf: &ContinuedFraction) -> Result<(Vec<Move>, ContinuedFraction)> {
    let value = cf.evaluate()?;
    let mut rw = Rewriter {
        coeffs: cf.coeffs.clone(),
        moves: Vec::new(),
    };
    // Entries after `j` are all >= 2.
    let mut j = rw.coeffs.len() - 1;
    while j >= 1 {
        let last = j + 1 == rw.coeffs.len();
        match rw.coeffs[j] {
            x if x >= 2 => j -= 1,
            1 | -1 if last => {
                rw.apply(Move::TrimEnd);
                j -= 1;
            }
            1 => {
                rw.apply(Move::Contract { site: j });
                // the entry now at `j` is c - 1 >= 1 and may need another pass
            }
            -1 => {
                rw.apply(Move::Contract { site: j });
                j -= 1;
            }
            0 if last => {
                rw.drop_trailing_pole(j);
                j = rw.coeffs.len() - 1;
            }
            0 => {
                rw.merge_interior_zero(j);
                j -= 1;
            }
            _ => {
                // (w, x) -> (w + 1, 1, x + 1); keep raising the negative entry
                rw.apply(Move::Expand { site: j - 1, sign: Sign::Plus });
                j += 1;
            }
        }
    }
    let out = ContinuedFraction { coeffs: rw.coeffs };
    debug_assert_eq!(out, ContinuedFraction::expand(value));
    Ok((rw.moves, out))
}

/// Whether the entries are knot-like (`b_1` odd) or link-like (`b_1` even).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Knot,
    Link,
}

/// Odd-length list with `b_3, b_5, ..., b_N` even. The value always has an
/// odd denominator and a numerator with the parity of `b_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    coeffs: Vec<i64>,
    kind: FormKind,
}

impl NormalForm {
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        let ok = coeffs.len() % 2 == 1 && coeffs.iter().skip(2).step_by(2).all(|b| b % 2 == 0);
        if !ok {
            return Err(Error::NotNormalForm(coeffs));
        }
        let kind = if coeffs[0] % 2 == 0 {
            FormKind::Link
        } else {
            FormKind::Knot
        };
        Ok(NormalForm { coeffs, kind })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self) -> Rational {
        ContinuedFraction {
            coeffs: self.coeffs.clone(),
        }
        .evaluate()
        .expect("normal forms have odd denominators")
    }

    pub fn as_continued_fraction(&self) -> ContinuedFraction {
        ContinuedFraction {
            coeffs: self.coeffs.clone(),
        }
    }

    /// `(-1)^((N-1)/2) (b_1 + b_3 + ... + b_N) mod 4`, which equals `p mod 4`.
    pub fn mod4_signed_odd_sum(&self) -> Result<u8> {
        if self.kind != FormKind::Link {
            return Err(Error::WrongKind { expected: "link" });
        }
        let sum: i64 = self.coeffs.iter().step_by(2).sum();
        let sign = if (self.len() - 1) / 2 % 2 == 0 { 1 } else { -1 };
        Ok((sign * sum).rem_euclid(4) as u8)
    }
}

pub fn mod4_signed_odd_sum(nf: &NormalForm) -> Result<u8> {
    nf.mod4_signed_odd_sum()
}

/// Nearest integer to `p/q` (`q > 0`) with the given parity.
fn nearest_with_parity(p: i64, q: i64, parity: i64) -> i64 {
    let fl = p.div_euclid(q);
    if (fl - parity).rem_euclid(2) == 0 {
        return fl;
    }
    let (lo, hi) = (fl - 1, fl + 1);
    if p - lo * q <= hi * q - p {
        lo
    } else {
        hi
    }
}

/// Nearest integer to `a/b`, halves rounded up.
fn round_div(a: i64, b: i64) -> i64 {
    let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
    (2 * a + b).div_euclid(2 * b)
}

/// Direct parity-constrained expansion of a value with odd denominator.
fn parity_expansion(r: Rational) -> NormalForm {
    debug_assert!(r.q % 2 == 1);
    let (mut p, mut q) = (r.p, r.q);
    let mut coeffs = Vec::new();
    loop {
        if q < 0 {
            p = -p;
            q = -q;
        }
        // q odd, so b*q - p is even exactly when b ≡ p (mod 2)
        let b = nearest_with_parity(p, q, p.rem_euclid(2));
        coeffs.push(b);
        let rem = b * q - p;
        if rem == 0 {
            break;
        }
        // p/q = b - 1/(c - 1/z) with z = rem/(c*rem - q); |c*rem - q| <= |rem|/2
        let c = round_div(q, rem);
        coeffs.push(c);
        let next_q = c * rem - q;
        p = rem;
        q = next_q;
    }
    NormalForm::from_coeffs(coeffs).expect("parity expansion yields a normal form")
}

/// Output of [`cf_normalize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub source: Rational,
    pub form: NormalForm,
    /// Moves turning `cf_expand(source)` into `form`.
    pub witness: Vec<Move>,
}

impl Normalized {
    /// False when `q` is even: the form then evaluates to `p/(q ± p)`.
    pub fn exact(&self) -> bool {
        self.form.value() == self.source
    }
}

/// Normal form of `r` together with a move witness starting at the ceiling
/// expansion. For even `q` no normal form evaluates to `r`; a single prepend
/// move first passes to `p/(q ± p)`, which has the same numerator and the same
/// residue of `q` mod `p`.
pub fn cf_normalize(r: Rational) -> Result<Normalized> {
    if r.p == 0 {
        return Err(Error::ZeroInput);
    }
    Ok(normalize_any(r))
}

pub(crate) fn normalize_any(r: Rational) -> Normalized {
    let start = ContinuedFraction::expand(r);
    let mut witness = Vec::new();
    let work = if r.q % 2 == 0 {
        let mv = Move::Prepend {
            sign: if r.p > 0 { Sign::Plus } else { Sign::Minus },
        };
        let shifted = start.apply(mv).expect("prepend always applies");
        witness.push(mv);
        let (moves, canon) = reduce_to_expansion(&shifted).expect("prepended list is finite");
        witness.extend(moves);
        canon.evaluate().expect("finite")
    } else {
        r
    };
    let form = parity_expansion(work);
    let (back, _) =
        reduce_to_expansion(&form.as_continued_fraction()).expect("normal forms are finite");
    let mut states = vec![form.coeffs.clone()];
    for mv in &back {
        let next = apply_move(states.last().unwrap(), *mv).expect("replay");
        states.push(next);
    }
    for (i, mv) in back.iter().enumerate().rev() {
        witness.push(mv.inverse(&states[i]));
    }
    Normalized {
        source: r,
        form,
        witness,
    }
}
