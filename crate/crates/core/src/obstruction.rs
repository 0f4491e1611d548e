//! Adjunction-defect engine for the `Y_n` family.
//!
//! For an isometry between the forms of `Y_m` and `Y_n`, the class of the
//! surface `S_m` is written in the basis `T1', T2', S_n` of `Y_n`. A negative
//! even defect `χ - [S_m]² - k([S_m])` would produce a new basic class, which
//! rules out a diffeomorphism once `3m + 4 < n`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `S_m` bounds an `(m, 2m+1)` torus knot; basis `T1, T2, S_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceData {
    pub m: i64,
    pub genus: i64,
    pub self_int: i64,
    pub gram: [[i64; 3]; 3],
}

pub fn surface_data(m: i64) -> Result<SurfaceData> {
    if m < 0 {
        return Err(Error::Domain(format!("m = {m} must be nonnegative")));
    }
    let self_int = -2 * m * m - m - 1;
    Ok(SurfaceData {
        m,
        genus: m * (m - 1),
        self_int,
        gram: [[0, 0, 0], [0, 0, 1], [0, 1, self_int]],
    })
}

impl SurfaceData {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus
    }

    /// `[v]²` in the basis `T1, T2, S`.
    pub fn square(&self, v: &CoeffVector) -> i64 {
        let x = [v.c_t1, v.c_t2, v.c_sn];
        let mut s = 0;
        for i in 0..3 {
            for j in 0..3 {
                s += x[i] * self.gram[i][j] * x[j];
            }
        }
        s
    }
}

/// Coefficients of the image of `S_m` in the basis `T1', T2', S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoeffVector {
    pub c_t1: i64,
    pub c_t2: i64,
    pub c_sn: i64,
}

fn check_sign(e: i64) -> Result<()> {
    if e == 1 || e == -1 {
        Ok(())
    } else {
        Err(Error::Domain(format!("sign {e} must be ±1")))
    }
}

fn check_parity(m: i64, n: i64, even: bool) -> Result<()> {
    let want = if even { 0 } else { 1 };
    for x in [m, n] {
        if x < 0 || x.rem_euclid(2) != want {
            let what = if even { "even" } else { "odd" };
            return Err(Error::Parity(format!("{x} is not a nonnegative {what} integer")));
        }
    }
    Ok(())
}

/// `m² + m/2` for even `m`.
fn half_even(m: i64) -> i64 {
    m * m + m / 2
}

/// `m² + (m+1)/2` for odd `m`.
fn half_odd(m: i64) -> i64 {
    m * m + (m + 1) / 2
}

pub fn sm_coeffs_even(m: i64, n: i64, e2: i64, e3: i64, a: i64, b: i64) -> Result<CoeffVector> {
    check_parity(m, n, true)?;
    check_sign(e2)?;
    check_sign(e3)?;
    let (mm, nn) = (half_even(m), half_even(n));
    Ok(CoeffVector {
        c_t1: -(a + b) * mm - a,
        c_t2: (e2 - e3) * mm * nn + nn * e2 - mm * e3,
        c_sn: (e2 - e3) * mm + e2,
    })
}

/// The two isometry patterns of `⟨0⟩ ⊕ H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OddVariant {
    Diagonal,
    Swap,
}

impl fmt::Display for OddVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OddVariant::Diagonal => "diagonal",
            OddVariant::Swap => "swap",
        })
    }
}

pub fn sm_coeffs_odd(
    m: i64,
    n: i64,
    variant: OddVariant,
    e2: i64,
    a: i64,
    b: i64,
) -> Result<CoeffVector> {
    check_parity(m, n, false)?;
    check_sign(e2)?;
    let (mm, nn) = (half_odd(m), half_odd(n));
    // -ε2 (m-n)(m+n+1/2) = ε2 (nn - mm): the half-integers cancel
    let twice = -(m - n) * (2 * m + 2 * n + 1);
    if twice % 2 != 0 {
        return Err(Error::NonIntegerCoefficient("T2' coefficient"));
    }
    debug_assert_eq!(twice / 2, nn - mm);
    Ok(match variant {
        OddVariant::Diagonal => CoeffVector {
            c_t1: b - a * mm,
            c_t2: e2 * (twice / 2),
            c_sn: e2,
        },
        OddVariant::Swap => CoeffVector {
            c_t1: b - a * mm,
            c_t2: e2 * (1 - mm * nn),
            c_sn: -e2 * mm,
        },
    })
}

/// Sign pattern of one row of the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "parity", rename_all = "lowercase")]
pub enum Case {
    Even { e1: i64, e2: i64, e3: i64 },
    Odd { e1: i64, e2: i64, variant: OddVariant },
}

impl Case {
    /// `η = (1 - ε2 ε3)/2` in the even case.
    pub fn eta(&self) -> Option<i64> {
        match *self {
            Case::Even { e2, e3, .. } => Some((1 - e2 * e3) / 2),
            Case::Odd { .. } => None,
        }
    }
}

pub fn adjunction_defect(m: i64, n: i64, case: Case) -> Result<i64> {
    match case {
        Case::Even { e2, e3, .. } => {
            check_parity(m, n, true)?;
            check_sign(e2)?;
            check_sign(e3)?;
            let eta = (1 - e2 * e3) / 2;
            Ok(3 * m - n + 4 - (n - 1) * (2 * m * m + m) * eta)
        }
        Case::Odd { variant, .. } => {
            check_parity(m, n, false)?;
            Ok(match variant {
                OddVariant::Diagonal => 3 * m + 4 - n,
                OddVariant::Swap => 3 * m + 3 - (n - 1) * half_odd(m),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub case: Case,
    pub a: i64,
    pub b: i64,
    pub coeffs: CoeffVector,
    /// `χ(S_m) - [S_m]² - k([S_m])` computed from the coefficient vector.
    pub defect: i64,
    /// Closed-form defect; equals `defect`.
    pub defect_formula: i64,
    pub k_value: i64,
    pub k_positive: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    Certified,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    pub m: i64,
    pub n: i64,
    pub parity: Parity,
    pub cases: Vec<CaseRow>,
    pub conclusion: Conclusion,
    pub reason: String,
}

/// `k([S_m])` for the canonical class `±ε2 (n-1)(T1' + T2')` of `Y_n`.
fn k_value(n: i64, case: Case, c: &CoeffVector) -> i64 {
    match case {
        Case::Even { e2, .. }
        | Case::Odd {
            e2,
            variant: OddVariant::Diagonal,
            ..
        } => e2 * (n - 1) * c.c_sn,
        Case::Odd {
            e2,
            variant: OddVariant::Swap,
            ..
        } => -e2 * (n - 1) * c.c_sn,
    }
}

fn row(m: i64, n: i64, case: Case) -> Result<CaseRow> {
    let (a, b) = (0, 0);
    let coeffs = match case {
        Case::Even { e2, e3, .. } => sm_coeffs_even(m, n, e2, e3, a, b)?,
        Case::Odd { e2, variant, .. } => sm_coeffs_odd(m, n, variant, e2, a, b)?,
    };
    let target = surface_data(n)?;
    let source = surface_data(m)?;
    let square = target.square(&coeffs);
    let k = k_value(n, case, &coeffs);
    let defect = source.euler_characteristic() - square - k;
    let defect_formula = adjunction_defect(m, n, case)?;
    let even_ok = match case {
        Case::Even { .. } => coeffs.c_sn % 2 != 0,
        Case::Odd { .. } => true,
    };
    let ok = defect < 0 && defect % 2 == 0 && coeffs.c_sn != 0 && even_ok && defect == defect_formula;
    Ok(CaseRow {
        case,
        a,
        b,
        coeffs,
        defect,
        defect_formula,
        k_value: k,
        k_positive: k > 0,
        ok,
    })
}

pub fn nondiffeo_certificate(m: i64, n: i64) -> Result<ObstructionCertificate> {
    if m < 0 || n < 0 {
        return Err(Error::Domain(format!("({m}, {n}) must be nonnegative")));
    }
    if (m - n).rem_euclid(2) != 0 {
        return Err(Error::ParityMismatch(m, n));
    }
    if m >= n {
        return Err(Error::Domain(format!("m = {m} must be less than n = {n}")));
    }
    let signs = [1, -1];
    let parity = if m % 2 == 0 { Parity::Even } else { Parity::Odd };
    let mut cases = Vec::new();
    for e1 in signs {
        for e2 in signs {
            match parity {
                Parity::Even => {
                    for e3 in signs {
                        cases.push(row(m, n, Case::Even { e1, e2, e3 })?);
                    }
                }
                Parity::Odd => {
                    for variant in [OddVariant::Diagonal, OddVariant::Swap] {
                        cases.push(row(m, n, Case::Odd { e1, e2, variant })?);
                    }
                }
            }
        }
    }
    let (conclusion, reason) = if 3 * m + 4 >= n {
        (
            Conclusion::Inconclusive,
            format!("3m + 4 = {} is not less than n = {n}", 3 * m + 4),
        )
    } else if let Some(bad) = cases.iter().position(|r| !r.ok) {
        (Conclusion::Inconclusive, format!("case {} fails the defect test", bad + 1))
    } else {
        (
            Conclusion::Certified,
            format!(
                "3m + 4 = {} < n = {n}; every case has an even negative defect and a nonzero S_n coefficient",
                3 * m + 4
            ),
        )
    };
    Ok(ObstructionCertificate {
        m,
        n,
        parity,
        cases,
        conclusion,
        reason,
    })
}
