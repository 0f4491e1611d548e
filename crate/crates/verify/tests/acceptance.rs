//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

#[path = "../../cli/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use plugtwist_core::qforms::{lemma_shape_matrices, Matrix};
use plugtwist_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = std::result::Result<String, String>;

fn coprime(p: i64, q: i64) -> bool {
    Rational::new(p, q).map(|r| r.denom() == q).unwrap_or(false)
}

fn mod4_lemma() -> Outcome {
    let mut checked = 0u64;
    let mut failures = Vec::new();
    let evens: Vec<i64> = (-6..=6).filter(|b| b % 2 == 0).collect();
    let all: Vec<i64> = (-6..=6).collect();
    for n in [1usize, 3, 5, 7] {
        let choices: Vec<&[i64]> = (0..n).map(|i| if i % 2 == 0 { &evens[..] } else { &all[..] }).collect();
        let mut idx = vec![0usize; n];
        loop {
            let coeffs: Vec<i64> = (0..n).map(|i| choices[i][idx[i]]).collect();
            let p = ContinuedFraction::new(coeffs.clone()).unwrap().matrix()[0][0];
            let nf = NormalForm::from_coeffs(coeffs.clone()).unwrap();
            let residue = mod4_signed_odd_sum(&nf).unwrap() as i64;
            if residue != p.rem_euclid(4) && failures.len() < 5 {
                failures.push(format!("{coeffs:?}"));
            }
            checked += 1;
            // odometer
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} coefficient lists"))
    } else {
        Err(format!("mismatches, e.g. {}", failures.join(" ")))
    }
}

fn round_trip() -> Outcome {
    let (mut total, mut expand_fail, mut parity_fail, mut witness_fail) = (0, 0, 0, 0);
    let mut value_fail = Vec::new();
    for p in 1i64..=200 {
        for q in 1..p {
            if !coprime(p, q) {
                continue;
            }
            total += 1;
            let r = Rational::new(p, q).unwrap();
            let cf = cf_expand(r);
            if cf_evaluate(&cf) != Ok(r) {
                expand_fail += 1;
            }
            let n = cf_normalize(r).unwrap();
            let c = n.form.coeffs();
            let parity_ok = c.len() % 2 == 1
                && c.iter().skip(2).step_by(2).all(|b| b % 2 == 0)
                && (n.form.kind() == FormKind::Knot) == (p % 2 == 1);
            if !parity_ok {
                parity_fail += 1;
            }
            let mut cur = cf;
            for mv in &n.witness {
                cur = cf_apply_move(&cur, *mv).unwrap();
            }
            if cur.coeffs() != c {
                witness_fail += 1;
            }
            if n.form.value() != r {
                value_fail.push((p, q));
            }
        }
    }
    let detail = format!(
        "{total} fractions; expand/eval failures {expand_fail}; parity failures {parity_fail}; \
         witness failures {witness_fail}; normal form value != p/q for {} (all with even q: {})",
        value_fail.len(),
        value_fail.iter().all(|&(_, q)| q % 2 == 0)
    );
    if expand_fail + parity_fail + witness_fail == 0 && value_fail.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn automorphism_lemmas() -> Outcome {
    let mut detail = Vec::new();
    for (name, shape) in [("lemma4", LemmaShape::Lemma4), ("lemma5", LemmaShape::Lemma5)] {
        let q = standard_form_by_name(name).unwrap();
        let found: Vec<Matrix> =
            enumerate_isometries(&q, 3).unwrap().into_iter().map(|f| f.matrix).collect();
        let pattern = lemma_shape_matrices(shape, 3);
        let found_outside = found.iter().filter(|m| !matches_lemma_shape(m, shape)).count();
        let pattern_missing = pattern.iter().filter(|m| !found.contains(m)).count();
        let pattern_bad = pattern.iter().filter(|m| !preserves_form(m, &q).unwrap()).count();
        if found_outside + pattern_missing + pattern_bad > 0 {
            return Err(format!(
                "{name}: {found_outside} isometries off-pattern, {pattern_missing} pattern matrices missing, \
                 {pattern_bad} pattern matrices not isometries"
            ));
        }
        detail.push(format!("{name} {} = {}", found.len(), pattern.len()));
    }
    Ok(detail.join(", "))
}

fn dichotomy() -> Outcome {
    let mut checked = 0;
    for p in (2i64..=100).step_by(2) {
        for q in 1..=p {
            if !coprime(p, q) {
                continue;
            }
            for sp in [p, -p] {
                let c = classify_twist(Rational::new(sp, q).unwrap()).map_err(|e| e.to_string())?;
                let expect = if sp.rem_euclid(4) == 2 { TwistKind::Plug } else { TwistKind::GCork };
                if c.kind != expect || c.p_mod4 != sp.rem_euclid(4) {
                    return Err(format!("{sp}/{q} classified {:?}", c.kind));
                }
                checked += 1;
            }
        }
    }
    // several normal forms of the same fraction
    let mut alt = 0;
    let evens = [-4i64, -2, 0, 2, 4];
    for b1 in evens {
        for b2 in -4i64..=4 {
            for b3 in evens {
                let nf = NormalForm::from_coeffs(vec![b1, b2, b3]).unwrap();
                let p = nf.value().numer();
                if p == 0 {
                    continue;
                }
                let kind = classify_normal_form(&nf).unwrap().kind;
                let direct = classify_twist(nf.value()).unwrap().kind;
                if kind != direct {
                    return Err(format!("{:?} disagrees with the canonical form", nf.coeffs()));
                }
                alt += 1;
            }
        }
    }
    let two = classify_twist(Rational::integer(2)).unwrap().kind;
    let four = classify_twist(Rational::integer(4)).unwrap().kind;
    if two != TwistKind::Plug || four != TwistKind::GCork {
        return Err(format!("2/1 -> {two:?}, 4/1 -> {four:?}"));
    }
    Ok(format!("{checked} fractions, {alt} alternative normal forms; 2/1 Plug, 4/1 GCork"))
}

fn sw_closed_forms() -> Outcome {
    for n in 1i64..=50 {
        let d = torus_link_alexander(n).unwrap();
        let expected = LaurentPoly2::from_terms((0..n).map(|k| ((n - 1 - 2 * k, n - 1 - 2 * k), 1)));
        if d != expected || d.num_terms() as i64 != n || d.invert_variables() != d || d.eval_at_ones() != n {
            return Err(format!("torus link n = {n}: {d}"));
        }
        let b = basic_classes(n).unwrap();
        let neg: Vec<i64> = b.coeffs.iter().rev().map(|x| -x).collect();
        if b.coeffs.len() as i64 != n || neg != b.coeffs || !basic_class_pairing_check(n).unwrap() {
            return Err(format!("basic classes n = {n}: {:?}", b.coeffs));
        }
    }
    Ok("n = 1..50".into())
}

fn random_word(rng: &mut StdRng) -> BraidWord {
    let n = rng.gen_range(0..10);
    BraidWord::new((0..n).map(|_| {
        let g = if rng.gen() { BraidGen::Sigma1 } else { BraidGen::Sigma2 };
        (g, rng.gen_range(-3..=3))
    }))
}

fn twist_nontriviality() -> Outcome {
    let mut checked = 0;
    for p in (2i64..=40).step_by(2) {
        for q in 1..p {
            if !coprime(p, q) {
                continue;
            }
            for sp in [p, -p] {
                let w = twist_word(Rational::new(sp, q).unwrap()).unwrap();
                if is_trivial(&to_braid(&w)) {
                    return Err(format!("φ for {sp}/{q} is trivial"));
                }
                checked += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let left: BraidWord = "s1 s2 s1".parse().unwrap();
    let right: BraidWord = "s2 s1 s2".parse().unwrap();
    for i in 0..10_000 {
        let (a, b) = (random_word(&mut rng), random_word(&mut rng));
        if burau(&a.concat(&b)) != burau(&a).mul(&burau(&b)) {
            return Err(format!("homomorphism fails on {a} · {b}"));
        }
        let lhs = burau(&a.concat(&left).concat(&b));
        let rhs = burau(&a.concat(&right).concat(&b));
        if lhs != rhs || !lhs.determinant().is_unit() {
            return Err(format!("braid relation fails in context {a} _ {b} (word {i})"));
        }
    }
    Ok(format!("{checked} twist words nontrivial; 10000 random word pairs"))
}

/// `det(V - t Vᵀ)` for a Seifert matrix, as coefficients by increasing power.
fn seifert(v: &[Vec<i64>]) -> Vec<i64> {
    match v.len() {
        1 => vec![v[0][0], -v[0][0]],
        2 => {
            let e = |i: usize, j: usize| [v[i][j], -v[j][i]];
            let mul = |a: [i64; 2], b: [i64; 2]| [a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1]];
            let (x, y) = (mul(e(0, 0), e(1, 1)), mul(e(0, 1), e(1, 0)));
            vec![x[0] - y[0], x[1] - y[1], x[2] - y[2]]
        }
        _ => unimplemented!("rank <= 2 suffices for the anchors"),
    }
}

fn same_up_to_units(oracle: &[i64], a: &LaurentPoly1) -> bool {
    let trim = |v: Vec<i64>| {
        let start = v.iter().position(|&c| c != 0).unwrap_or(v.len());
        let end = v.iter().rposition(|&c| c != 0).map_or(start, |e| e + 1);
        let mut w = v[start..end].to_vec();
        if w.last().is_some_and(|&c| c < 0) {
            w.iter_mut().for_each(|c| *c = -*c);
        }
        w
    };
    let (lo, hi) = (a.min_degree().unwrap_or(0), a.max_degree().unwrap_or(0));
    trim(oracle.to_vec()) == trim((lo..=hi).map(|e| a.coeff(e)).collect())
}

fn alexander_anchors() -> Outcome {
    let anchors: [(&str, Vec<Vec<i64>>, &[(i64, i64)]); 3] = [
        ("trefoil", vec![vec![-1, 1], vec![0, -1]], &[(3, 1)]),
        ("figure-eight", vec![vec![-1, 1], vec![0, 1]], &[(5, 2), (5, 3)]),
        ("Hopf link", vec![vec![-1]], &[(2, 1)]),
    ];
    for (name, v, fractions) in &anchors {
        let oracle = seifert(v);
        for &(p, q) in *fractions {
            let a = alexander_two_bridge(Rational::new(p, q).unwrap()).unwrap().polynomial;
            if !same_up_to_units(&oracle, &a) {
                return Err(format!("{name} {p}/{q}: {a} vs oracle {oracle:?}"));
            }
        }
    }
    let mut checked = 0;
    for p in 1i64..=25 {
        for q in 1..p {
            if !coprime(p, q) {
                continue;
            }
            let a = alexander_two_bridge(Rational::new(p, q).unwrap()).unwrap();
            if a.degenerate || a.polynomial.is_zero() {
                return Err(format!("{p}/{q} has zero Alexander polynomial"));
            }
            checked += 1;
        }
    }
    Ok(format!("anchors match the Seifert oracle; {checked} fractions nonzero"))
}

fn obstruction() -> Outcome {
    let mut certified = 0;
    for m in 0i64..=9 {
        for n in (m + 1)..=41 {
            if (n - m) % 2 != 0 || 3 * m + 4 >= n {
                continue;
            }
            let c = nondiffeo_certificate(m, n).unwrap();
            if c.conclusion != Conclusion::Certified {
                return Err(format!("({m}, {n}) not certified: {}", c.reason));
            }
            for r in &c.cases {
                let odd_ok = m % 2 == 1 || r.coeffs.c_sn % 2 != 0;
                if !(r.defect < 0 && r.defect % 2 == 0 && r.coeffs.c_sn != 0 && odd_ok) {
                    return Err(format!("({m}, {n}) row {:?} fails", r.case));
                }
            }
            certified += 1;
        }
    }
    let c = nondiffeo_certificate(2, 6).unwrap();
    if c.conclusion != Conclusion::Inconclusive {
        return Err("(2, 6) should be inconclusive".into());
    }
    Ok(format!("{certified} pairs certified; (2, 6) inconclusive"))
}

fn golden_files() -> Outcome {
    let n = common::corpus().len();
    let failures = common::check_corpus(false);
    if n != 20 {
        return Err(format!("corpus has {n} commands"));
    }
    if failures.is_empty() {
        Ok(format!("{n} commands, two runs each, byte-identical to stored output"))
    } else {
        Err(failures.join("; "))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("mod-4 lemma, exhaustive", mod4_lemma, Some(Duration::from_secs(60))),
        ("round trip and normal forms", round_trip, None),
        ("automorphism lemmas, two-sided", automorphism_lemmas, Some(Duration::from_secs(300))),
        ("plug / g-cork dichotomy", dichotomy, None),
        ("torus-link polynomials and basic classes", sw_closed_forms, None),
        ("twist-word nontriviality and Burau checks", twist_nontriviality, None),
        ("Alexander anchors", alexander_anchors, None),
        ("obstruction engine", obstruction, Some(Duration::from_secs(10))),
        ("CLI golden files", golden_files, None),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&result, limit) {
            if elapsed > limit {
                result = Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
