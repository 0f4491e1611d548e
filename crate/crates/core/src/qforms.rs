//! Integral symmetric bilinear forms of rank at most 4: named forms, isometry
//! enumeration, isomorphism search and the plug / g-cork classification of
//! twisted doubles.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rationals::{normalize_any, FormKind, NormalForm, Rational};

pub type Matrix = Vec<Vec<i64>>;

pub const MAX_RANK: usize = 4;
pub const MAX_BOUND: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramForm {
    pub entries: Matrix,
    pub basis_labels: Vec<String>,
}

impl GramForm {
    pub fn new(entries: Matrix, basis_labels: Vec<String>) -> Result<Self> {
        let n = entries.len();
        if n > MAX_RANK {
            return Err(Error::RankTooLarge(n));
        }
        if basis_labels.len() != n {
            return Err(Error::DimensionMismatch(basis_labels.len(), n));
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch(row.len(), n));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Domain(format!("Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(GramForm {
            entries,
            basis_labels,
        })
    }

    /// Basis labelled `e1, e2, ...`.
    pub fn from_matrix(entries: Matrix) -> Result<Self> {
        let labels = (1..=entries.len()).map(|i| format!("e{i}")).collect();
        Self::new(entries, labels)
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let n = d.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect())
            .collect();
        Self::from_matrix(entries).expect("diagonal forms are valid")
    }

    /// Block sum, relabelled `e1, e2, ...`.
    pub fn direct_sum(&self, other: &GramForm) -> Result<Self> {
        let (a, b) = (self.rank(), other.rank());
        let mut m = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            m[i][..a].copy_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            m[a + i][a..].copy_from_slice(&other.entries[i]);
        }
        Self::from_matrix(m)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += u[i] * self.entries[i][j] * v[j];
            }
        }
        s
    }

    pub fn determinant(&self) -> i64 {
        det(&self.entries)
    }

    /// Counts of positive, negative and zero eigenvalues.
    pub fn signature(&self) -> Signature {
        // the characteristic polynomial of a symmetric matrix is real-rooted,
        // so Descartes' rule counts roots exactly
        let cp = char_poly(&self.entries);
        let zero = cp.iter().take_while(|&&c| c == 0).count();
        let changes = |coeffs: &[i64]| {
            let nz: Vec<i64> = coeffs.iter().copied().filter(|&c| c != 0).collect();
            nz.windows(2).filter(|w| (w[0] < 0) != (w[1] < 0)).count()
        };
        let pos = changes(&cp);
        let flipped: Vec<i64> = cp
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
            .collect();
        let neg = changes(&flipped);
        Signature {
            positive: pos,
            negative: neg,
            zero,
        }
    }

    pub fn parity(&self) -> FormParity {
        form_parity(self)
    }

    pub fn invariants(&self) -> FormInvariants {
        FormInvariants {
            rank: self.rank(),
            determinant: self.determinant(),
            signature: self.signature(),
            parity: self.parity(),
        }
    }
}

impl fmt::Display for GramForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_matrix(&self.entries))
    }
}

pub fn format_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormParity {
    Even,
    Odd,
}

impl fmt::Display for FormParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormParity::Even => "even",
            FormParity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub determinant: i64,
    pub signature: Signature,
    pub parity: FormParity,
}

/// Even iff every diagonal entry is even; then every square `v·v` is even.
pub fn form_parity(q: &GramForm) -> FormParity {
    if (0..q.rank()).all(|i| q.entries[i][i] % 2 == 0) {
        FormParity::Even
    } else {
        FormParity::Odd
    }
}

/// Integer determinant by fraction-free elimination.
pub fn det(m: &Matrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Coefficients of `det(xI - A)` from the constant term up, by
/// Faddeev–LeVerrier.
fn char_poly(a: &Matrix) -> Vec<i64> {
    let n = a.len();
    let mut c = vec![0i64; n + 1];
    c[n] = 1;
    let ident = |n: usize| -> Matrix {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    };
    let mut m = vec![vec![0i64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let prod = mat_mul(a, &m);
        let id = ident(n);
        m = (0..n)
            .map(|i| (0..n).map(|j| prod[i][j] + c[n - k + 1] * id[i][j]).collect())
            .collect();
        let am = mat_mul(a, &m);
        let tr: i64 = (0..n).map(|i| am[i][i]).sum();
        c[n - k] = -tr / k as i64;
    }
    c
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// Named forms accepted by [`standard_form`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormName {
    /// `⟨0⟩`
    Zero,
    /// `⟨1⟩`
    Plus1,
    /// `⟨-1⟩`
    Minus1,
    /// Hyperbolic plane `[[0,1],[1,0]]`.
    H,
    /// `⟨0⟩ ⊕ ⟨1⟩ ⊕ ⟨-1⟩`
    YEven,
    /// `⟨0⟩ ⊕ H`
    YOdd,
    /// `2⟨1⟩ ⊕ 2⟨-1⟩`
    ZEven,
    /// `H ⊕ H`
    ZOdd,
    /// `⟨0⟩ ⊕ ⟨-1⟩ ⊕ ⟨1⟩`
    Lemma4,
    /// `2 [[0,1],[1,(-1)^{(N+1)/2} p/2]]`
    Double { p: i64, n: i64 },
    /// Intersection form of `Y_n`.
    Y(i64),
    /// Intersection form of `Z_n`.
    Z(i64),
}

impl FromStr for FormName {
    type Err = Error;

    /// `zero`, `plus1`, `minus1`, `h`, `y-even`, `y-odd`, `z-even`, `z-odd`,
    /// `lemma4`, `lemma5` (same as `y-odd`), `double:P:N`, `y:N`, `z:N`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadName(s.to_string());
        let num = |x: &str| x.parse::<i64>().map_err(|_| bad());
        let parts: Vec<&str> = s.split(':').collect();
        Ok(match parts.as_slice() {
            ["zero"] => FormName::Zero,
            ["plus1"] => FormName::Plus1,
            ["minus1"] => FormName::Minus1,
            ["h"] => FormName::H,
            ["y-even"] => FormName::YEven,
            ["y-odd"] | ["lemma5"] => FormName::YOdd,
            ["z-even"] => FormName::ZEven,
            ["z-odd"] => FormName::ZOdd,
            ["lemma4"] => FormName::Lemma4,
            ["double", p, n] => FormName::Double {
                p: num(p)?,
                n: num(n)?,
            },
            ["y", n] => FormName::Y(num(n)?),
            ["z", n] => FormName::Z(num(n)?),
            _ => return Err(bad()),
        })
    }
}

fn hyperbolic(k: i64) -> GramForm {
    GramForm::from_matrix(vec![vec![0, 1], vec![1, k]]).expect("valid")
}

/// The twisted-double form `2 [[0,1],[1,(-1)^{(N+1)/2} p/2]]`.
pub fn double_form(p: i64, n: i64) -> Result<GramForm> {
    if p % 2 != 0 {
        return Err(Error::OddP(p));
    }
    if n < 1 || n % 2 == 0 {
        return Err(Error::Domain(format!("normal-form length N = {n} must be odd and positive")));
    }
    let sign = if ((n + 1) / 2) % 2 == 0 { 1 } else { -1 };
    let block = hyperbolic(sign * p / 2);
    block.direct_sum(&block)
}

pub fn standard_form(name: FormName) -> Result<GramForm> {
    let h = hyperbolic(0);
    let lbl = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    Ok(match name {
        FormName::Zero => GramForm::diagonal(&[0]),
        FormName::Plus1 => GramForm::diagonal(&[1]),
        FormName::Minus1 => GramForm::diagonal(&[-1]),
        FormName::H => h,
        FormName::YEven => GramForm::diagonal(&[0, 1, -1]),
        FormName::YOdd => GramForm::diagonal(&[0]).direct_sum(&h)?,
        FormName::ZEven => GramForm::diagonal(&[1, 1, -1, -1]),
        FormName::ZOdd => h.direct_sum(&h)?,
        FormName::Lemma4 => GramForm::diagonal(&[0, -1, 1]),
        FormName::Double { p, n } => double_form(p, n)?,
        FormName::Y(n) | FormName::Z(n) if n < 0 => {
            return Err(Error::Domain(format!("n = {n} must be nonnegative")))
        }
        FormName::Y(n) => {
            let base = if n % 2 == 0 {
                FormName::YEven
            } else {
                FormName::YOdd
            };
            let q = standard_form(base)?;
            GramForm::new(q.entries, lbl(&["T1", "T2", "S"]))?
        }
        FormName::Z(n) => standard_form(if n % 2 == 0 {
            FormName::ZEven
        } else {
            FormName::ZOdd
        })?,
    })
}

pub fn standard_form_by_name(name: &str) -> Result<GramForm> {
    standard_form(name.parse()?)
}

fn check_square(m: &Matrix, n: usize) -> Result<()> {
    if m.len() != n {
        return Err(Error::DimensionMismatch(m.len(), n));
    }
    for r in m {
        if r.len() != n {
            return Err(Error::DimensionMismatch(r.len(), n));
        }
    }
    Ok(())
}

/// `MᵀQM = Q` and `|det M| = 1`.
pub fn preserves_form(m: &Matrix, q: &GramForm) -> Result<bool> {
    check_square(m, q.rank())?;
    let pulled = mat_mul(&mat_mul(&transpose(m), &q.entries), m);
    Ok(pulled == q.entries && det(m).abs() == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FormIsometry {
    pub matrix: Matrix,
}

/// All unimodular `P` with `Pᵀ A P = B` and bounded entries, columns being
/// images of basis vectors. Off-diagonal entries lie in `[-bound, bound]`,
/// diagonal ones in `[-max(bound,1), max(bound,1)]`.
fn bounded_maps(a: &GramForm, b: &GramForm, bound: u32, first_only: bool) -> Vec<Matrix> {
    let n = a.rank();
    if b.rank() != n {
        return Vec::new();
    }
    let off = bound as i64;
    let diag = off.max(1);
    // candidate columns j with the right square
    let candidates: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|j| {
            let mut out = Vec::new();
            let mut v = vec![0i64; n];
            let lim = |i: usize| if i == j { diag } else { off };
            fn rec(
                i: usize,
                v: &mut Vec<i64>,
                lim: &dyn Fn(usize) -> i64,
                a: &GramForm,
                target: i64,
                out: &mut Vec<Vec<i64>>,
            ) {
                if i == v.len() {
                    if a.pair(v, v) == target {
                        out.push(v.clone());
                    }
                    return;
                }
                for x in -lim(i)..=lim(i) {
                    v[i] = x;
                    rec(i + 1, v, lim, a, target, out);
                }
                v[i] = 0;
            }
            rec(0, &mut v, &lim, a, b.entries[j][j], &mut out);
            out
        })
        .collect();
    let mut found = Vec::new();
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(n);
    fn search(
        j: usize,
        cols: &mut Vec<Vec<i64>>,
        candidates: &[Vec<Vec<i64>>],
        a: &GramForm,
        b: &GramForm,
        found: &mut Vec<Matrix>,
        first_only: bool,
    ) {
        if first_only && !found.is_empty() {
            return;
        }
        let n = candidates.len();
        if j == n {
            let m = transpose(cols);
            if det(&m).abs() == 1 {
                found.push(m);
            }
            return;
        }
        for c in &candidates[j] {
            if (0..j).all(|i| a.pair(&cols[i], c) == b.entries[i][j]) {
                cols.push(c.clone());
                search(j + 1, cols, candidates, a, b, found, first_only);
                cols.pop();
            }
        }
    }
    search(0, &mut cols, &candidates, a, b, &mut found, first_only);
    found.sort();
    found
}

pub fn enumerate_isometries(q: &GramForm, bound: u32) -> Result<Vec<FormIsometry>> {
    if bound > MAX_BOUND {
        return Err(Error::BoundTooLarge(bound));
    }
    if q.rank() > MAX_RANK {
        return Err(Error::RankTooLarge(q.rank()));
    }
    Ok(bounded_maps(q, q, bound, false)
        .into_iter()
        .map(|matrix| FormIsometry { matrix })
        .collect())
}

/// A change of basis `P` with `Pᵀ A P = B`, searched within `bound` after a
/// comparison of invariants.
pub fn find_isomorphism(a: &GramForm, b: &GramForm, bound: u32) -> Result<Option<Matrix>> {
    if bound > MAX_BOUND {
        return Err(Error::BoundTooLarge(bound));
    }
    if a.invariants() != b.invariants() {
        return Ok(None);
    }
    Ok(bounded_maps(a, b, bound, true).into_iter().next())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LemmaShape {
    /// `[[ε1,a,b],[0,ε2,0],[0,0,ε3]]`
    Lemma4,
    /// `[[ε1,a,b],[0,ε2,0],[0,0,ε2]]` or `[[ε1,a,b],[0,0,ε2],[0,ε2,0]]`
    Lemma5,
}

pub fn matches_lemma_shape(m: &Matrix, which: LemmaShape) -> bool {
    if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
        return false;
    }
    let unit = |x: i64| x == 1 || x == -1;
    if !unit(m[0][0]) || m[1][0] != 0 || m[2][0] != 0 {
        return false;
    }
    let lower = [[m[1][1], m[1][2]], [m[2][1], m[2][2]]];
    match which {
        LemmaShape::Lemma4 => lower[0][1] == 0 && lower[1][0] == 0 && unit(lower[0][0]) && unit(lower[1][1]),
        LemmaShape::Lemma5 => {
            let diag = lower[0][1] == 0 && lower[1][0] == 0 && unit(lower[0][0]) && lower[0][0] == lower[1][1];
            let swap = lower[0][0] == 0 && lower[1][1] == 0 && unit(lower[0][1]) && lower[0][1] == lower[1][0];
            diag || swap
        }
    }
}

/// Every matrix of the lemma's shape with `a, b ∈ [-bound, bound]`, sorted.
pub fn lemma_shape_matrices(which: LemmaShape, bound: u32) -> Vec<Matrix> {
    let k = bound as i64;
    let mut out = Vec::new();
    for e1 in [-1, 1] {
        for e2 in [-1, 1] {
            for a in -k..=k {
                for b in -k..=k {
                    match which {
                        LemmaShape::Lemma4 => {
                            for e3 in [-1, 1] {
                                out.push(vec![vec![e1, a, b], vec![0, e2, 0], vec![0, 0, e3]]);
                            }
                        }
                        LemmaShape::Lemma5 => {
                            out.push(vec![vec![e1, a, b], vec![0, e2, 0], vec![0, 0, e2]]);
                            out.push(vec![vec![e1, a, b], vec![0, 0, e2], vec![0, e2, 0]]);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwistKind {
    Plug,
    GCork,
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistKind::Plug => "Plug",
            TwistKind::GCork => "GCork",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistClassification {
    pub kind: TwistKind,
    pub p_mod4: i64,
    pub normal_form: Vec<i64>,
    pub double_form: GramForm,
    /// `z-even` for odd double forms, `z-odd` for even ones.
    pub standard: &'static str,
    /// Columns are a basis in which `double_form` becomes `standard`.
    pub change_of_basis: Matrix,
}

/// Explicit basis turning the double form into `2⟨1⟩⊕2⟨-1⟩` or `H⊕H`.
fn standard_basis(k: i64) -> (Matrix, &'static str) {
    // block [[0,1],[1,k]] with basis e1, e2 at offset o
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let vec4 = |o: usize, x: i64, y: i64| {
        let mut v = vec![0; 4];
        v[o] = x;
        v[o + 1] = y;
        v
    };
    if k % 2 == 0 {
        // e1, e2 - (k/2) e1 span H
        for o in [0, 2] {
            cols.push(vec4(o, 1, 0));
            cols.push(vec4(o, -k / 2, 1));
        }
        (transpose(&cols), "z-odd")
    } else {
        // u = e2 - ((k-1)/2) e1 has u² = 1; w = e1 - u has w² = -1
        let h = (k - 1) / 2;
        let u = |o| vec4(o, -h, 1);
        let w = |o| vec4(o, 1 + h, -1);
        cols = vec![u(0), u(2), w(0), w(2)];
        (transpose(&cols), "z-even")
    }
}

/// Classification from an explicit link normal form of a nonzero `p`.
pub fn classify_normal_form(nf: &NormalForm) -> Result<TwistClassification> {
    if nf.kind() != FormKind::Link {
        return Err(Error::WrongKind { expected: "link" });
    }
    let p = nf.value().numer();
    if p == 0 {
        return Err(Error::ZeroInput);
    }
    let n = nf.len() as i64;
    let q = double_form(p, n)?;
    let kind = match form_parity(&q) {
        FormParity::Odd => TwistKind::Plug,
        FormParity::Even => TwistKind::GCork,
    };
    let (change_of_basis, standard) = standard_basis(q.entries[1][1]);
    Ok(TwistClassification {
        kind,
        p_mod4: p.rem_euclid(4),
        normal_form: nf.coeffs().to_vec(),
        double_form: q,
        standard,
        change_of_basis,
    })
}

pub fn classify_twist(r: Rational) -> Result<TwistClassification> {
    if r.numer() == 0 {
        return Err(Error::ZeroInput);
    }
    if r.numer() % 2 != 0 {
        return Err(Error::OddP(r.numer()));
    }
    classify_normal_form(&normalize_any(r).form)
}
