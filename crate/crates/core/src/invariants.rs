//! Closed-form invariants: the torus-link family `L_n`, its basic classes,
//! torus-knot genus, and one-variable Alexander polynomials of braid closures
//! and 2-bridge links.
//!
//! Alexander polynomials follow the Seifert convention `det(V - tV^T)`, so the
//! Hopf link gives `t - 1` and every link with two or more components vanishes
//! at `t = 1`. Results are reported up to `±t^k` via
//! [`LaurentPoly1::normalize_units`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::braids::{burau, BraidGen, BraidWord};
use crate::error::{Error, Result};
use crate::laurent::{determinant, LaurentPoly1, LaurentPoly2};
use crate::rationals::{cf_normalize, gcd, NormalForm, Rational};

/// `(t1 t2)^{n-1} + (t1 t2)^{n-3} + ... + (t1 t2)^{-n+1}`.
pub fn torus_link_alexander(n: i64) -> Result<LaurentPoly2> {
    if n < 1 {
        return Err(Error::Domain(format!("n = {n} must be positive")));
    }
    Ok(LaurentPoly2::from_terms(
        (0..n).map(|k| ((n - 1 - 2 * k, n - 1 - 2 * k), 1)),
    ))
}

/// Basic classes `i (t1 + t2)`, stored by their coefficients `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicClassSet {
    pub n: i64,
    pub coeffs: Vec<i64>,
}

/// `i = -n+1, -n+3, ..., n-1`.
pub fn basic_classes(n: i64) -> Result<BasicClassSet> {
    if n < 1 {
        return Err(Error::Domain(format!("n = {n} must be positive")));
    }
    Ok(BasicClassSet {
        n,
        coeffs: (0..n).map(|k| -n + 1 + 2 * k).collect(),
    })
}

/// `(a-1)(b-1)/2` for the `(a, b)` torus knot.
pub fn torus_knot_genus(a: i64, b: i64) -> Result<i64> {
    if a < 1 || b < 1 {
        return Err(Error::Domain(format!("({a}, {b}) must be positive")));
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    Ok((a - 1) * (b - 1) / 2)
}

/// `σ1^{b_1} σ2^{b_2} σ1^{b_3} ⋯`: odd positions twist strands 1–2, even
/// positions strands 2–3.
pub fn braid_bpq(nf: &NormalForm) -> BraidWord {
    BraidWord::new(nf.coeffs().iter().enumerate().map(|(i, &b)| {
        let g = if i % 2 == 0 {
            BraidGen::Sigma1
        } else {
            BraidGen::Sigma2
        };
        (g, b)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderResult {
    /// Normalized representative; zero when `degenerate`.
    pub polynomial: LaurentPoly1,
    /// The closure is split (or otherwise has vanishing polynomial).
    pub degenerate: bool,
}

impl AlexanderResult {
    fn from_poly(p: LaurentPoly1) -> Self {
        AlexanderResult {
            degenerate: p.is_zero(),
            polynomial: p.normalize_units(),
        }
    }
}

/// Alexander polynomial of the ordinary closure of a 3-braid from its Burau
/// image: `det(I - ρ(w)) / (1 + t + t^2)`.
pub fn alexander_closure(w: &BraidWord) -> AlexanderResult {
    let m = burau(w).entries;
    let one = LaurentPoly1::one();
    let a = &one - &m[0][0];
    let d = &one - &m[1][1];
    let det = &(&a * &d) - &(&m[0][1] * &m[1][0]);
    let cyc = LaurentPoly1::from_terms([(0, 1), (1, 1), (2, 1)]);
    let q = det
        .div_exact(&cyc)
        .expect("1 + t + t^2 divides det(I - Burau)");
    AlexanderResult::from_poly(q)
}

/// Closure used when building a diagram from braid crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// Strand `j` at the bottom joins strand `j` at the top.
    Trace,
    /// Caps join neighbouring pairs `(0,1), (2,3), ...` at top and bottom.
    Plat,
}

/// A braid-like diagram: `strands` vertical positions and crossings listed
/// from top to bottom as `(left position, positive)`.
///
/// In a positive crossing the strand entering from the left passes over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub strands: usize,
    pub crossings: Vec<(usize, bool)>,
    pub closure: Closure,
}

impl Diagram {
    /// 3-strand word with trace closure; `σ_i` crosses positions `i-1, i`.
    pub fn trace_closure(w: &BraidWord) -> Self {
        Diagram {
            strands: 3,
            crossings: Self::expand(w, 0),
            closure: Closure::Trace,
        }
    }

    /// 3-strand word with a straight strand added on the left and plat
    /// closure; `σ_i` crosses positions `i, i+1`.
    pub fn plat_closure(w: &BraidWord) -> Self {
        Diagram {
            strands: 4,
            crossings: Self::expand(w, 1),
            closure: Closure::Plat,
        }
    }

    fn expand(w: &BraidWord, offset: usize) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for s in w.letters() {
            let pos = offset
                + match s.generator {
                    BraidGen::Sigma1 => 0,
                    BraidGen::Sigma2 => 1,
                };
            for _ in 0..s.exponent.unsigned_abs() {
                out.push((pos, s.exponent > 0));
            }
        }
        out
    }

    fn point(&self, level: usize, pos: usize) -> usize {
        level * self.strands + pos
    }

    /// Edges as `(from, to, crossing)` with points `(level, position)`;
    /// crossing edges carry `(index, over)`.
    fn edges(&self) -> Vec<(usize, usize, Option<(usize, bool)>)> {
        let n = self.strands;
        let levels = self.crossings.len();
        let mut edges = Vec::new();
        for (k, &(i, positive)) in self.crossings.iter().enumerate() {
            for j in 0..n {
                if j == i {
                    edges.push((self.point(k, i), self.point(k + 1, i + 1), Some((k, positive))));
                } else if j == i + 1 {
                    edges.push((self.point(k, i + 1), self.point(k + 1, i), Some((k, !positive))));
                } else {
                    edges.push((self.point(k, j), self.point(k + 1, j), None));
                }
            }
        }
        match self.closure {
            Closure::Trace => {
                for j in 0..n {
                    edges.push((self.point(levels, j), self.point(0, j), None));
                }
            }
            Closure::Plat => {
                for j in (0..n).step_by(2) {
                    edges.push((self.point(0, j), self.point(0, j + 1), None));
                    edges.push((self.point(levels, j), self.point(levels, j + 1), None));
                }
            }
        }
        edges
    }

    /// Position of a point in the plane, `y` pointing up.
    fn coords(&self, pt: usize) -> (i64, i64) {
        ((pt % self.strands) as i64, -((pt / self.strands) as i64))
    }

    /// Components as cyclic sequences of crossing passages
    /// `(crossing, over, direction)`.
    fn components(&self) -> Vec<Vec<(usize, bool, (i64, i64))>> {
        let edges = self.edges();
        let npts = self.strands * (self.crossings.len() + 1);
        let mut incident = vec![Vec::new(); npts];
        for (e, &(a, b, _)) in edges.iter().enumerate() {
            incident[a].push(e);
            incident[b].push(e);
        }
        let mut used = vec![false; edges.len()];
        let mut comps = Vec::new();
        for start in 0..edges.len() {
            if used[start] {
                continue;
            }
            let mut passages = Vec::new();
            let (mut e, mut at) = (start, edges[start].0);
            while !used[e] {
                used[e] = true;
                let (a, b, cr) = edges[e];
                let next = if a == at { b } else { a };
                if let Some((k, over)) = cr {
                    let (x0, y0) = self.coords(at);
                    let (x1, y1) = self.coords(next);
                    passages.push((k, over, (x1 - x0, y1 - y0)));
                }
                at = next;
                e = match incident[at].as_slice() {
                    [x, y] => {
                        if *x == e {
                            *y
                        } else {
                            *x
                        }
                    }
                    _ => unreachable!("every point has degree two"),
                };
            }
            comps.push(passages);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        if self.crossings.is_empty() {
            return match self.closure {
                Closure::Trace => self.strands,
                Closure::Plat => self.strands / 2,
            };
        }
        self.components().len()
    }

    /// One-variable Alexander polynomial via Fox calculus on the Wirtinger
    /// presentation of the diagram.
    pub fn alexander(&self) -> AlexanderResult {
        let n = self.crossings.len();
        if n == 0 {
            let p = if self.component_count() == 1 {
                LaurentPoly1::one()
            } else {
                LaurentPoly1::zero()
            };
            return AlexanderResult::from_poly(p);
        }
        // per crossing: over arc, incoming under arc, outgoing under arc, directions
        let mut over_arc = vec![usize::MAX; n];
        let mut under_in = vec![usize::MAX; n];
        let mut under_out = vec![usize::MAX; n];
        let mut over_dir = vec![(0, 0); n];
        let mut under_dir = vec![(0, 0); n];
        let mut arcs = 0;
        for comp in self.components() {
            let Some(first_under) = comp.iter().position(|&(_, over, _)| !over) else {
                // a component that never passes under can be lifted off
                return AlexanderResult::from_poly(LaurentPoly1::zero());
            };
            let len = comp.len();
            let first_arc = arcs;
            arcs += 1;
            let mut cur = first_arc;
            for step in 1..=len {
                let (k, over, dir) = comp[(first_under + step) % len];
                if over {
                    over_arc[k] = cur;
                    over_dir[k] = dir;
                } else {
                    under_in[k] = cur;
                    under_dir[k] = dir;
                    cur = if step == len {
                        first_arc
                    } else {
                        arcs += 1;
                        arcs - 1
                    };
                    under_out[k] = cur;
                }
            }
        }
        debug_assert_eq!(arcs, n);
        let t = LaurentPoly1::t();
        let one = LaurentPoly1::one();
        let mut m = vec![vec![LaurentPoly1::zero(); n]; n];
        for k in 0..n {
            let (ox, oy) = over_dir[k];
            let (ux, uy) = under_dir[k];
            let positive = ox * uy - oy * ux > 0;
            let (c_over, c_in, c_out) = if positive {
                (&one - &t, t.clone(), -one.clone())
            } else {
                (&t - &one, one.clone(), -t.clone())
            };
            let row = &mut m[k];
            row[over_arc[k]] = &row[over_arc[k]] + &c_over;
            row[under_in[k]] = &row[under_in[k]] + &c_in;
            row[under_out[k]] = &row[under_out[k]] + &c_out;
        }
        m.pop();
        for row in &mut m {
            row.pop();
        }
        AlexanderResult::from_poly(determinant(m))
    }
}

/// Alexander polynomial of the plat closure of a 3-braid (a straight strand
/// joins on the left; caps pair positions `(0,1)` and `(2,3)`).
pub fn alexander_plat(w: &BraidWord) -> AlexanderResult {
    Diagram::plat_closure(w).alexander()
}

/// Alexander polynomial of the 2-bridge knot or link `K_{p,q}`.
pub fn alexander_two_bridge(r: Rational) -> Result<AlexanderResult> {
    let nf = cf_normalize(r)?.form;
    Ok(alexander_plat(&braid_bpq(&nf)))
}

/// Number of components of the 2-bridge link of `p/q` (1 for knots).
pub fn two_bridge_components(r: Rational) -> Result<usize> {
    let nf = cf_normalize(r)?.form;
    Ok(Diagram::plat_closure(&braid_bpq(&nf)).component_count())
}

/// Whether all pairwise differences of basic classes square to zero. The
/// classes are `i (T1 + T2)` with `T1`, `T2` disjoint square-zero tori.
pub fn basic_class_pairing_check(n: i64) -> Result<bool> {
    let classes = basic_classes(n)?;
    let gram = [[0i64, 0], [0, 0]];
    let square = |v: [i64; 2]| {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| v[i] * gram[i][j] * v[j])
            .sum::<i64>()
    };
    let set: BTreeSet<i64> = classes.coeffs.iter().copied().collect();
    Ok(set
        .iter()
        .flat_map(|&i| set.iter().map(move |&j| i - j))
        .all(|d| square([d, d]) == 0))
}
