use plugtwist_core::invariants::two_bridge_components;
use plugtwist_core::qforms::double_form;
use plugtwist_core::*;
use proptest::prelude::*;

fn coprime_pair(max: i64) -> impl Strategy<Value = Rational> {
    (-max..=max, 1..=max)
        .prop_filter("coprime", |&(p, q)| Rational::new(p, q).map(|r| r.denom() == q).unwrap_or(false))
        .prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn even_rational(max: i64) -> impl Strategy<Value = Rational> {
    coprime_pair(max).prop_filter("even nonzero p", |r| r.numer() != 0 && r.numer() % 2 == 0)
}

fn coeff_list() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..7)
}

fn any_move(len: usize) -> impl Strategy<Value = Move> {
    let site = 0..len + 1;
    prop_oneof![
        (site.clone(), any::<bool>()).prop_map(|(site, s)| Move::Expand {
            site,
            sign: if s { Sign::Plus } else { Sign::Minus }
        }),
        site.prop_map(|site| Move::Contract { site }),
        any::<bool>().prop_map(|s| Move::Append {
            sign: if s { Sign::Plus } else { Sign::Minus }
        }),
        Just(Move::TrimEnd),
        any::<bool>().prop_map(|s| Move::Prepend {
            sign: if s { Sign::Plus } else { Sign::Minus }
        }),
        Just(Move::TrimStart),
    ]
}

fn braid_word() -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 0..7).prop_map(|v| {
        BraidWord::new(v.into_iter().map(|(g, e)| {
            (if g { BraidGen::Sigma1 } else { BraidGen::Sigma2 }, e)
        }))
    })
}

fn twist_word_strategy() -> impl Strategy<Value = TwistWord> {
    prop::collection::vec((any::<bool>(), -4i64..=4), 0..6).prop_map(|v| {
        TwistWord::new(v.into_iter().map(|(g, e)| {
            (if g { TwistGen::Psi } else { TwistGen::Phi }, e)
        }))
    })
}

fn mod_inverse(q: i64, m: i64) -> Option<i64> {
    (1..m).find(|x| (q * x).rem_euclid(m) == 1 % m)
}

proptest! {
    #[test]
    fn expand_then_evaluate_is_identity(r in coprime_pair(500)) {
        prop_assert_eq!(cf_evaluate(&cf_expand(r)).unwrap(), r);
    }

    #[test]
    fn moves_are_sound(
        (coeffs, mv) in coeff_list().prop_flat_map(|c| {
            let n = c.len();
            (Just(c), any_move(n))
        })
    ) {
        let cf = ContinuedFraction::new(coeffs.clone()).unwrap();
        if let (Ok(out), Ok(before)) = (cf_apply_move(&cf, mv), cf_evaluate(&cf)) {
            if let Ok(after) = cf_evaluate(&out) {
                if mv.preserves_value() {
                    prop_assert_eq!(after, before);
                } else {
                    prop_assert_eq!(after.numer().abs(), before.numer().abs());
                }
            }
            let back = cf_apply_move(&out, mv.inverse(&coeffs)).unwrap();
            prop_assert_eq!(back, cf);
        }
    }

    #[test]
    fn normal_form_parity(r in coprime_pair(300).prop_filter("nonzero", |r| r.numer() != 0)) {
        let n = cf_normalize(r).unwrap();
        let c = n.form.coeffs();
        prop_assert!(c.len() % 2 == 1);
        prop_assert!(c.iter().skip(2).step_by(2).all(|b| b % 2 == 0));
        let knot = r.numer() % 2 != 0;
        prop_assert_eq!(n.form.kind() == FormKind::Knot, knot);
        prop_assert_eq!(n.form.value().numer(), r.numer());
        prop_assert_eq!(n.exact(), r.denom() % 2 == 1);
        // replay the witness
        let mut cur = cf_expand(r);
        for mv in &n.witness {
            cur = cf_apply_move(&cur, *mv).unwrap();
        }
        prop_assert_eq!(cur.coeffs(), c);
    }

    #[test]
    fn mod4_lemma_on_normal_forms(r in even_rational(200)) {
        let nf = cf_normalize(r).unwrap().form;
        prop_assert_eq!(mod4_signed_odd_sum(&nf).unwrap() as i64, r.numer().rem_euclid(4));
    }

    #[test]
    fn f2_is_even_index_sum(r in even_rational(200)) {
        let nf = cf_normalize(r).unwrap().form;
        let w = twist_word_for(&nf).unwrap();
        let expected: i64 = nf.coeffs().iter().skip(1).step_by(2).sum();
        prop_assert_eq!(f2_exponent(&w), expected);
    }

    #[test]
    fn f2_is_a_homomorphism(a in twist_word_strategy(), b in twist_word_strategy()) {
        prop_assert_eq!(f2_exponent(&a.concat(&b)), f2_exponent(&a) + f2_exponent(&b));
    }

    #[test]
    fn triviality_is_conjugation_invariant(w in braid_word(), u in braid_word(), cut in 0usize..8) {
        let conj = u.concat(&w).concat(&u.inverse());
        prop_assert_eq!(is_trivial(&w), is_trivial(&conj));
        let relator: BraidWord = "s1 s2 s1 s2^-1 s1^-1 s2^-1".parse().unwrap();
        let letters = w.letters();
        let k = cut.min(letters.len());
        let head = BraidWord::new(letters[..k].iter().map(|s| (s.generator, s.exponent)));
        let tail = BraidWord::new(letters[k..].iter().map(|s| (s.generator, s.exponent)));
        prop_assert_eq!(is_trivial(&w), is_trivial(&head.concat(&relator).concat(&tail)));
    }

    #[test]
    fn closure_polynomial_is_a_conjugacy_invariant(w in braid_word(), u in braid_word()) {
        let conj = u.concat(&w).concat(&u.inverse());
        prop_assert_eq!(alexander_closure(&w), alexander_closure(&conj));
        let relator: BraidWord = "s1 s2 s1 s2^-1 s1^-1 s2^-1".parse().unwrap();
        prop_assert_eq!(alexander_closure(&w), alexander_closure(&w.concat(&relator)));
    }

    #[test]
    fn burau_and_fox_closures_agree(w in braid_word()) {
        prop_assume!(!w.is_empty());
        let fox = invariants::Diagram::trace_closure(&w).alexander();
        prop_assert_eq!(alexander_closure(&w), fox);
    }

    #[test]
    fn classification_depends_on_p_mod_4(r in even_rational(100)) {
        let c = classify_twist(r).unwrap();
        let expect = if r.numer().rem_euclid(4) == 2 { TwistKind::Plug } else { TwistKind::GCork };
        prop_assert_eq!(c.kind, expect);
    }

    #[test]
    fn double_form_parity(half in -50i64..=50, k in 0i64..4) {
        prop_assume!(half != 0);
        let p = 2 * half;
        let q = double_form(p, 2 * k + 1).unwrap();
        prop_assert_eq!(form_parity(&q) == FormParity::Odd, p.rem_euclid(4) == 2);
    }

    #[test]
    fn coefficient_vectors_square_correctly(half_m in 0i64..6, gap in 1i64..8, e2 in prop::sample::select(vec![1i64, -1]), e3 in prop::sample::select(vec![1i64, -1]), a in -3i64..=3, b in -3i64..=3) {
        let (m, n) = (2 * half_m, 2 * half_m + 2 * gap);
        let c = sm_coeffs_even(m, n, e2, e3, a, b).unwrap();
        prop_assert_eq!(surface_data(n).unwrap().square(&c), surface_data(m).unwrap().self_int);
        prop_assert!(c.c_sn % 2 != 0);
        let (mo, no) = (m + 1, n + 1);
        for v in [OddVariant::Diagonal, OddVariant::Swap] {
            let c = sm_coeffs_odd(mo, no, v, e2, a, b).unwrap();
            prop_assert_eq!(surface_data(no).unwrap().square(&c), surface_data(mo).unwrap().self_int);
            prop_assert!(c.c_sn != 0);
        }
    }
}

#[test]
fn two_bridge_equivalence_up_to_units() {
    for p in 2i64..=25 {
        for q in 1..p {
            let Ok(r) = Rational::new(p, q) else { continue };
            if r.denom() != q {
                continue;
            }
            let Some(q2) = mod_inverse(q, p) else { continue };
            let a = alexander_two_bridge(r).unwrap().polynomial;
            let b = alexander_two_bridge(Rational::new(p, q2).unwrap()).unwrap().polynomial;
            // links: orientation of the second component is only preserved
            // when q q' = 1 mod 2p
            if p % 2 == 1 || (q * q2).rem_euclid(2 * p) == 1 {
                assert_eq!(a, b, "{p}/{q} vs {p}/{q2}");
            } else {
                assert_eq!(a.eval_at_unit(-1).abs(), b.eval_at_unit(-1).abs());
            }
        }
    }
}

#[test]
fn alexander_at_one_and_minus_one() {
    for p in 1i64..=25 {
        for q in 1..=p {
            let Ok(r) = Rational::new(p, q) else { continue };
            if r.denom() != q {
                continue;
            }
            let a = alexander_two_bridge(r).unwrap().polynomial;
            assert_eq!(a.eval_at_unit(-1).abs(), p, "{p}/{q}");
            let comps = two_bridge_components(r).unwrap();
            if p % 2 == 1 {
                assert_eq!(comps, 1);
                assert_eq!(a.eval_at_unit(1).abs(), 1, "{p}/{q}");
            } else {
                assert_eq!(comps, 2);
                assert_eq!(a.eval_at_unit(1), 0, "{p}/{q}");
            }
            // symmetric up to units
            assert_eq!(a.invert_variable().normalize_units(), a, "{p}/{q}");
        }
    }
}

#[test]
fn torus_link_properties() {
    for n in 1..=30 {
        let d = torus_link_alexander(n).unwrap();
        assert_eq!(d.num_terms() as i64, n);
        assert_eq!(d.invert_variables(), d);
        assert_eq!(d.eval_at_ones(), n);
        let b = basic_classes(n).unwrap();
        assert_eq!(b.coeffs.len() as i64, n);
        let neg: Vec<i64> = b.coeffs.iter().rev().map(|x| -x).collect();
        assert_eq!(neg, b.coeffs);
    }
}

#[test]
fn y_form_parity_alternates() {
    for n in 0..12 {
        let q = standard_form(FormName::Y(n)).unwrap();
        let want = if n % 2 == 0 { FormParity::Odd } else { FormParity::Even };
        assert_eq!(form_parity(&q), want, "n = {n}");
    }
}

#[test]
fn classification_is_independent_of_normal_form() {
    // every link normal form of length <= 5 with small entries, grouped by value
    let mut seen = std::collections::BTreeMap::<(i64, i64), Vec<TwistKind>>::new();
    let range = -4i64..=4;
    let evens: Vec<i64> = range.clone().filter(|b| b % 2 == 0).collect();
    let all: Vec<i64> = range.collect();
    let mut lists: Vec<Vec<i64>> = evens.iter().map(|&b| vec![b]).collect();
    for &b1 in &evens {
        for &b2 in &all {
            for &b3 in &evens {
                lists.push(vec![b1, b2, b3]);
                for &b4 in &all {
                    for &b5 in &evens {
                        lists.push(vec![b1, b2, b3, b4, b5]);
                    }
                }
            }
        }
    }
    for l in lists {
        let nf = NormalForm::from_coeffs(l).unwrap();
        let v = nf.value();
        if v.numer() == 0 {
            continue;
        }
        let c = classify_normal_form(&nf).unwrap();
        seen.entry((v.numer(), v.denom())).or_default().push(c.kind);
    }
    let mut multi = 0;
    for ((p, _), kinds) in &seen {
        let expect = if p.rem_euclid(4) == 2 { TwistKind::Plug } else { TwistKind::GCork };
        assert!(kinds.iter().all(|k| *k == expect));
        if kinds.len() > 1 {
            multi += 1;
        }
    }
    assert!(multi > 50, "expected many fractions with several normal forms");
}

#[test]
fn monotone_certificate_family() {
    for m in 0..=6 {
        for n in (3 * m + 5)..=(3 * m + 30) {
            if (n - m) % 2 != 0 {
                continue;
            }
            let c = nondiffeo_certificate(m, n).unwrap();
            assert_eq!(c.conclusion, Conclusion::Certified, "({m}, {n})");
            assert!(c.cases.iter().all(|r| r.defect % 2 == 0 && r.k_positive));
        }
    }
}
