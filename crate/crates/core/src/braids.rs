//! Twist words in `{ψ, φ}`, their image in the 3-strand braid group and the
//! word problem through the reduced Burau representation.
//!
//! Burau images are multiplied left to right:
//! `σ1 ↦ [[-t, 1], [0, 1]]`, `σ2 ↦ [[1, 0], [t, -t]]`. The representation is
//! faithful on three strands, so a word is trivial iff its image is the
//! identity.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly1;
use crate::rationals::{normalize_any, FormKind, NormalForm, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistGen {
    Psi,
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BraidGen {
    Sigma1,
    Sigma2,
}

/// A run `g^exponent`, exponent nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable<G> {
    pub generator: G,
    pub exponent: i64,
}

/// Appends with free reduction of syllables; zero runs vanish and may expose
/// a further merge.
fn push_syllable<G: PartialEq + Copy>(out: &mut Vec<Syllable<G>>, generator: G, exponent: i64) {
    if exponent == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.generator == generator {
            last.exponent += exponent;
            if last.exponent == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push(Syllable {
        generator,
        exponent,
    });
}

fn reduce<G: PartialEq + Copy>(it: impl IntoIterator<Item = (G, i64)>) -> Vec<Syllable<G>> {
    let mut out = Vec::new();
    for (g, e) in it {
        push_syllable(&mut out, g, e);
    }
    out
}

fn write_word<G: Copy>(
    f: &mut fmt::Formatter<'_>,
    letters: &[Syllable<G>],
    name: impl Fn(G) -> &'static str,
) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "1");
    }
    for (i, s) in letters.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{}", name(s.generator))?;
        if s.exponent != 1 {
            write!(f, "^{}", s.exponent)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct TwistWord {
    letters: Vec<Syllable<TwistGen>>,
}

impl TwistWord {
    pub fn new(letters: impl IntoIterator<Item = (TwistGen, i64)>) -> Self {
        TwistWord {
            letters: reduce(letters),
        }
    }

    pub fn letters(&self) -> &[Syllable<TwistGen>] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        TwistWord::new(
            self.letters
                .iter()
                .chain(&other.letters)
                .map(|s| (s.generator, s.exponent)),
        )
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.letters, |g| match g {
            TwistGen::Psi => "psi",
            TwistGen::Phi => "phi",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    letters: Vec<Syllable<BraidGen>>,
}

impl BraidWord {
    pub fn new(letters: impl IntoIterator<Item = (BraidGen, i64)>) -> Self {
        BraidWord {
            letters: reduce(letters),
        }
    }

    pub fn letters(&self) -> &[Syllable<BraidGen>] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of crossings, `Σ |exponent|`.
    pub fn crossing_count(&self) -> u64 {
        self.letters.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        BraidWord::new(
            self.letters
                .iter()
                .chain(&other.letters)
                .map(|s| (s.generator, s.exponent)),
        )
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord::new(self.letters.iter().rev().map(|s| (s.generator, -s.exponent)))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.letters, |g| match g {
            BraidGen::Sigma1 => "s1",
            BraidGen::Sigma2 => "s2",
        })
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Whitespace-separated `s1`, `s2^-3`, ...; `""` or `1` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadBraidWord(s.to_string());
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(BraidWord::default());
        }
        let mut letters = Vec::new();
        for tok in trimmed.split_whitespace() {
            let (g, e) = match tok.split_once('^') {
                Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let g = match g {
                "s1" => BraidGen::Sigma1,
                "s2" => BraidGen::Sigma2,
                _ => return Err(bad()),
            };
            letters.push((g, e));
        }
        Ok(BraidWord::new(letters))
    }
}

/// `φ^{b_N/2} ψ^{b_{N-1}} ⋯ ψ^{b_2} φ^{b_1/2}` for a link normal form.
pub fn twist_word_for(nf: &NormalForm) -> Result<TwistWord> {
    if nf.kind() != FormKind::Link {
        return Err(Error::WrongKind { expected: "link" });
    }
    let letters = nf.coeffs().iter().enumerate().rev().map(|(i, &b)| {
        if i % 2 == 0 {
            (TwistGen::Phi, b / 2)
        } else {
            (TwistGen::Psi, b)
        }
    });
    Ok(TwistWord::new(letters))
}

fn require_even(r: Rational) -> Result<()> {
    if r.numer() == 0 {
        Err(Error::ZeroInput)
    } else if r.numer() % 2 != 0 {
        Err(Error::OddP(r.numer()))
    } else {
        Ok(())
    }
}

/// The twist word `φ_{p,q}` read off the normal form of `p/q`.
pub fn twist_word(r: Rational) -> Result<TwistWord> {
    require_even(r)?;
    twist_word_for(&normalize_any(r).form)
}

/// `ψ ↦ σ1`, `φ ↦ σ2²`.
pub fn to_braid(w: &TwistWord) -> BraidWord {
    BraidWord::new(w.letters.iter().map(|s| match s.generator {
        TwistGen::Psi => (BraidGen::Sigma1, s.exponent),
        TwistGen::Phi => (BraidGen::Sigma2, 2 * s.exponent),
    }))
}

/// Total ψ-exponent: the image under forgetting the third strand.
pub fn f2_exponent(w: &TwistWord) -> i64 {
    w.letters
        .iter()
        .filter(|s| s.generator == TwistGen::Psi)
        .map(|s| s.exponent)
        .sum()
}

/// 2×2 matrix over `Z[t, t^-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurauMatrix {
    pub entries: [[LaurentPoly1; 2]; 2],
}

impl BurauMatrix {
    pub fn identity() -> Self {
        let (o, z) = (LaurentPoly1::one(), LaurentPoly1::zero());
        BurauMatrix {
            entries: [[o.clone(), z.clone()], [z, o]],
        }
    }

    fn from_terms(e: [[&[(i64, i64)]; 2]; 2]) -> Self {
        let p = |t: &[(i64, i64)]| LaurentPoly1::from_terms(t.iter().copied());
        BurauMatrix {
            entries: [[p(e[0][0]), p(e[0][1])], [p(e[1][0]), p(e[1][1])]],
        }
    }

    pub fn generator(g: BraidGen, inverse: bool) -> Self {
        match (g, inverse) {
            (BraidGen::Sigma1, false) => Self::from_terms([[&[(1, -1)], &[(0, 1)]], [&[], &[(0, 1)]]]),
            (BraidGen::Sigma1, true) => {
                Self::from_terms([[&[(-1, -1)], &[(-1, 1)]], [&[], &[(0, 1)]]])
            }
            (BraidGen::Sigma2, false) => Self::from_terms([[&[(0, 1)], &[]], [&[(1, 1)], &[(1, -1)]]]),
            (BraidGen::Sigma2, true) => {
                Self::from_terms([[&[(0, 1)], &[]], [&[(0, 1)], &[(-1, -1)]]])
            }
        }
    }

    pub fn mul(&self, rhs: &BurauMatrix) -> BurauMatrix {
        let a = &self.entries;
        let b = &rhs.entries;
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        BurauMatrix {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    pub fn pow(&self, n: u64) -> BurauMatrix {
        let mut acc = Self::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn determinant(&self) -> LaurentPoly1 {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn trace(&self) -> LaurentPoly1 {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

impl fmt::Display for BurauMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

pub fn burau(w: &BraidWord) -> BurauMatrix {
    w.letters.iter().fold(BurauMatrix::identity(), |acc, s| {
        let g = BurauMatrix::generator(s.generator, s.exponent < 0);
        acc.mul(&g.pow(s.exponent.unsigned_abs()))
    })
}

pub fn is_trivial(w: &BraidWord) -> bool {
    burau(w).is_identity()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Nonzero total ψ-exponent.
    F2Exponent,
    /// Burau image differs from the identity.
    BurauMatrix,
    /// The word is trivial.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NontrivialityReport {
    pub normal_form: Vec<i64>,
    pub twist_word: String,
    pub braid_word: String,
    pub f2_exponent: i64,
    pub burau: BurauMatrix,
    pub trivial: bool,
    pub evidence: Evidence,
}

/// Report for an explicit link normal form; zero numerators are allowed here.
pub fn nontriviality_report_for(nf: &NormalForm) -> Result<NontrivialityReport> {
    let w = twist_word_for(nf)?;
    let braid = to_braid(&w);
    let f2 = f2_exponent(&w);
    let m = burau(&braid);
    let trivial = m.is_identity();
    let evidence = if f2 != 0 {
        Evidence::F2Exponent
    } else if !trivial {
        Evidence::BurauMatrix
    } else {
        Evidence::None
    };
    Ok(NontrivialityReport {
        normal_form: nf.coeffs().to_vec(),
        twist_word: w.to_string(),
        braid_word: braid.to_string(),
        f2_exponent: f2,
        burau: m,
        trivial,
        evidence,
    })
}

/// Report for `φ_{p,q}`; `p` must be even. For `p = 0` the form `[0]` is
/// used, whose word is empty.
pub fn word_nontriviality_report(r: Rational) -> Result<NontrivialityReport> {
    if r.numer() % 2 != 0 {
        return Err(Error::OddP(r.numer()));
    }
    nontriviality_report_for(&normalize_any(r).form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bw(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(bw("s1 s2^-1 s2^-1 s1^3").to_string(), "s1 s2^-2 s1^3");
        assert_eq!(bw("s1 s1^-1").to_string(), "1");
        assert!("s3".parse::<BraidWord>().is_err());
        assert!("s1^x".parse::<BraidWord>().is_err());
    }

    #[test]
    fn twist_words() {
        let r = |p, q| Rational::new(p, q).unwrap();
        assert_eq!(twist_word(r(2, 1)).unwrap().to_string(), "phi");
        assert_eq!(twist_word(r(4, 1)).unwrap().to_string(), "phi^2");
        assert_eq!(twist_word(r(0, 1)), Err(Error::ZeroInput));
        assert_eq!(twist_word(r(3, 1)), Err(Error::OddP(3)));
        let nf = NormalForm::from_coeffs(vec![4, 1, 2]).unwrap();
        assert_eq!(twist_word_for(&nf).unwrap().to_string(), "phi psi phi^2");
    }

    #[test]
    fn substitution() {
        let phi = TwistWord::new([(TwistGen::Phi, 1)]);
        assert_eq!(to_braid(&phi).to_string(), "s2^2");
        let psi = TwistWord::new([(TwistGen::Psi, 3)]);
        assert_eq!(to_braid(&psi).to_string(), "s1^3");
        assert!(to_braid(&TwistWord::default()).is_empty());
    }

    #[test]
    fn f2_examples() {
        let w = TwistWord::new([(TwistGen::Psi, 3), (TwistGen::Phi, 2), (TwistGen::Psi, -1)]);
        assert_eq!(f2_exponent(&w), 2);
        assert_eq!(f2_exponent(&TwistWord::new([(TwistGen::Phi, 7)])), 0);
    }

    #[test]
    fn braid_relation() {
        let a = burau(&bw("s1 s2 s1"));
        assert_eq!(a, burau(&bw("s2 s1 s2")));
        assert!(is_trivial(&bw("s1 s2 s1 s2^-1 s1^-1 s2^-1")));
        assert!(is_trivial(&BraidWord::default()));
        assert!(!is_trivial(&bw("s2^2")));
    }

    #[test]
    fn generator_inverses() {
        for g in [BraidGen::Sigma1, BraidGen::Sigma2] {
            let m = BurauMatrix::generator(g, false).mul(&BurauMatrix::generator(g, true));
            assert!(m.is_identity());
        }
    }

    #[test]
    fn zero_numerator_report() {
        let nf = NormalForm::from_coeffs(vec![2, 1, 2]).unwrap();
        let rep = nontriviality_report_for(&nf).unwrap();
        assert_eq!(rep.twist_word, "phi psi phi");
        let zero = word_nontriviality_report(Rational::integer(0)).unwrap();
        assert!(zero.trivial);
        let two = word_nontriviality_report(Rational::integer(2)).unwrap();
        assert!(!two.trivial);
        assert_eq!(two.evidence, Evidence::BurauMatrix);
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((any::<bool>(), -3i64..=3), 0..8).prop_map(|v| {
            BraidWord::new(v.into_iter().map(|(g, e)| {
                (if g { BraidGen::Sigma1 } else { BraidGen::Sigma2 }, e)
            }))
        })
    }

    proptest! {
        #[test]
        fn homomorphism(a in arb_word(), b in arb_word()) {
            prop_assert_eq!(burau(&a.concat(&b)), burau(&a).mul(&burau(&b)));
        }

        #[test]
        fn determinant_is_unit(a in arb_word()) {
            prop_assert!(burau(&a).determinant().is_unit());
        }

        #[test]
        fn conjugation_invariance(a in arb_word(), u in arb_word()) {
            let conj = u.concat(&a).concat(&u.inverse());
            prop_assert_eq!(is_trivial(&a), is_trivial(&conj));
            prop_assert!(is_trivial(&a.concat(&a.inverse())));
        }
    }
}
