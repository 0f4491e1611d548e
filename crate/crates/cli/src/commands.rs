use plugtwist_core::invariants::Diagram;
use plugtwist_core::qforms::{format_matrix, Matrix};
use plugtwist_core::*;
use serde_json::{json, Value};

use crate::{BraidCmd, CfCmd, Command, FormCmd, InvCmd, ObstructCmd, Outcome, TwistCmd};

fn poly_json(p: &LaurentPoly1) -> Value {
    json!({ "text": p.to_string(), "terms": p })
}

fn burau_json(m: &BurauMatrix) -> Value {
    let e = &m.entries;
    let cell = |p: &LaurentPoly1| Value::from(p.to_string());
    json!([[cell(&e[0][0]), cell(&e[0][1])], [cell(&e[1][0]), cell(&e[1][1])]])
}

fn list(v: &[i64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Cf(c) => cf(c),
        Command::Twist(c) => twist(c),
        Command::Braid(c) => braid(c),
        Command::Inv(c) => inv(c),
        Command::Form(c) => form(c),
        Command::Obstruct(c) => obstruct(c),
    }
}

fn cf(cmd: &CfCmd) -> Result<Outcome> {
    match cmd {
        CfCmd::Expand { rational } => {
            let r: Rational = rational.parse()?;
            let c = cf_expand(r);
            Ok(Outcome::new(
                json!({ "input": r.to_string(), "coeffs": c.coeffs() }),
                c.to_string(),
            ))
        }
        CfCmd::Eval { coeffs } => {
            let c: ContinuedFraction = coeffs.parse()?;
            let r = cf_evaluate(&c)?;
            Ok(Outcome::new(
                json!({ "coeffs": c.coeffs(), "p": r.numer(), "q": r.denom() }),
                r.to_string(),
            ))
        }
        CfCmd::Move { coeffs, r#move } => {
            let c: ContinuedFraction = coeffs.parse()?;
            let mv: Move = r#move.parse()?;
            let out = cf_apply_move(&c, mv)?;
            let before = cf_evaluate(&c).ok().map(|r| r.to_string());
            let after = cf_evaluate(&out).ok().map(|r| r.to_string());
            let mut o = Outcome::new(
                json!({
                    "input": c.coeffs(),
                    "move": mv.to_string(),
                    "coeffs": out.coeffs(),
                    "value_before": before,
                    "value_after": after,
                    "preserves_value": mv.preserves_value(),
                }),
                format!(
                    "{}\nvalue: {} -> {}",
                    out,
                    before.as_deref().unwrap_or("inf"),
                    after.as_deref().unwrap_or("inf")
                ),
            );
            if !mv.preserves_value() {
                o.warnings
                    .push("boundary move at the start changes p/q to p/(q ± p)".into());
            }
            Ok(o)
        }
        CfCmd::Normalize { rational } => {
            let r: Rational = rational.parse()?;
            let n = cf_normalize(r)?;
            let witness: Vec<String> = n.witness.iter().map(|m| m.to_string()).collect();
            let kind = match n.form.kind() {
                FormKind::Knot => "knot",
                FormKind::Link => "link",
            };
            let value = n.form.value();
            let mut o = Outcome::new(
                json!({
                    "input": r.to_string(),
                    "coeffs": n.form.coeffs(),
                    "kind": kind,
                    "value": value.to_string(),
                    "exact": n.exact(),
                    "witness": witness,
                }),
                format!(
                    "{} ({kind})\nvalue: {value}\nwitness: {}",
                    list(n.form.coeffs()),
                    if witness.is_empty() { "-".to_string() } else { witness.join(" ") }
                ),
            );
            if !n.exact() {
                o.warnings.push(format!(
                    "q is even: no normal form evaluates to {r}; {value} gives the same 2-bridge link"
                ));
            }
            Ok(o)
        }
    }
}

fn twist(cmd: &TwistCmd) -> Result<Outcome> {
    match cmd {
        TwistCmd::Word { rational } => {
            let r: Rational = rational.parse()?;
            let w = twist_word(r)?;
            let b = to_braid(&w);
            Ok(Outcome::new(
                json!({
                    "input": r.to_string(),
                    "word": w.to_string(),
                    "letters": w,
                    "braid": b.to_string(),
                    "f2_exponent": f2_exponent(&w),
                }),
                format!("{w}\nbraid: {b}"),
            ))
        }
        TwistCmd::IsTrivial { rational } => {
            let r: Rational = rational.parse()?;
            let rep = word_nontriviality_report(r)?;
            let evidence = serde_json::to_value(rep.evidence).expect("serializable");
            Ok(Outcome::new(
                json!({
                    "input": r.to_string(),
                    "trivial": rep.trivial,
                    "evidence": evidence,
                    "normal_form": rep.normal_form,
                    "word": rep.twist_word,
                    "braid": rep.braid_word,
                    "f2_exponent": rep.f2_exponent,
                    "burau": burau_json(&rep.burau),
                }),
                format!(
                    "{}\nword: {}\nf2 exponent: {}\nburau: {}",
                    rep.trivial, rep.twist_word, rep.f2_exponent, rep.burau
                ),
            ))
        }
    }
}

fn braid(cmd: &BraidCmd) -> Result<Outcome> {
    match cmd {
        BraidCmd::Burau { word } => {
            let w: BraidWord = word.parse()?;
            let m = burau(&w);
            let d = m.determinant();
            Ok(Outcome::new(
                json!({
                    "word": w.to_string(),
                    "matrix": burau_json(&m),
                    "determinant": d.to_string(),
                    "identity": m.is_identity(),
                }),
                format!("{m}\ndeterminant: {d}\nidentity: {}", m.is_identity()),
            ))
        }
    }
}

fn inv(cmd: &InvCmd) -> Result<Outcome> {
    match cmd {
        InvCmd::Alexander { rational } => {
            let r: Rational = rational.parse()?;
            let a = alexander_two_bridge(r)?;
            let nf = cf_normalize(r)?.form;
            let b = braid_bpq(&nf);
            let comps = Diagram::plat_closure(&b).component_count();
            Ok(Outcome::new(
                json!({
                    "input": r.to_string(),
                    "normal_form": nf.coeffs(),
                    "braid": b.to_string(),
                    "components": comps,
                    "alexander": poly_json(&a.polynomial),
                    "degenerate": a.degenerate,
                }),
                format!("{}\nbraid: {b} (plat closure)\ncomponents: {comps}", a.polynomial),
            ))
        }
        InvCmd::Closure { word } => {
            let w: BraidWord = word.parse()?;
            let a = alexander_closure(&w);
            let mut o = Outcome::new(
                json!({
                    "word": w.to_string(),
                    "alexander": poly_json(&a.polynomial),
                    "degenerate": a.degenerate,
                }),
                a.polynomial.to_string(),
            );
            if a.degenerate {
                o.warnings.push("split closure: polynomial vanishes".into());
            }
            Ok(o)
        }
        InvCmd::TorusLink { n } => {
            let p = torus_link_alexander(*n)?;
            Ok(Outcome::new(
                json!({ "n": n, "text": p.to_string(), "terms": p }),
                p.to_string(),
            ))
        }
        InvCmd::BasicClasses { n } => {
            let b = basic_classes(*n)?;
            let check = basic_class_pairing_check(*n)?;
            let items: Vec<String> = b.coeffs.iter().map(|i| i.to_string()).collect();
            Ok(Outcome::new(
                json!({ "n": n, "coeffs": b.coeffs, "pairing_check": check }),
                format!("{}\npairing check: {check}", items.join(" ")),
            ))
        }
        InvCmd::Genus { a, b } => {
            let g = torus_knot_genus(*a, *b)?;
            Ok(Outcome::new(json!({ "a": a, "b": b, "genus": g }), g.to_string()))
        }
    }
}

fn rows(m: &Matrix) -> String {
    format_matrix(m)
}

fn form(cmd: &FormCmd) -> Result<Outcome> {
    match cmd {
        FormCmd::Classify { rational } => {
            let r: Rational = rational.parse()?;
            let c = classify_twist(r)?;
            let parity = form_parity(&c.double_form);
            Ok(Outcome::new(
                json!({
                    "input": r.to_string(),
                    "kind": c.kind.to_string(),
                    "p_mod4": c.p_mod4,
                    "normal_form": c.normal_form,
                    "double_form": c.double_form.entries,
                    "parity": parity.to_string(),
                    "standard": c.standard,
                    "change_of_basis": c.change_of_basis,
                }),
                format!(
                    "{}\np mod 4: {}\ndouble form: {} ({parity})\nisomorphic to {} via {}",
                    c.kind,
                    c.p_mod4,
                    c.double_form,
                    c.standard,
                    rows(&c.change_of_basis)
                ),
            ))
        }
        FormCmd::Isometries { name, bound } => {
            let q = standard_form_by_name(name)?;
            let isos = enumerate_isometries(&q, *bound)?;
            let mats: Vec<&Matrix> = isos.iter().map(|i| &i.matrix).collect();
            let mut text = format!("{} isometries of {} with bound {bound}", isos.len(), q);
            for m in &mats {
                text.push('\n');
                text.push_str(&rows(m));
            }
            Ok(Outcome::new(
                json!({
                    "name": name,
                    "gram": q.entries,
                    "bound": bound,
                    "count": isos.len(),
                    "isometries": mats,
                }),
                text,
            ))
        }
        FormCmd::Show { name } => {
            let q = standard_form_by_name(name)?;
            let inv = q.invariants();
            Ok(Outcome::new(
                json!({
                    "name": name,
                    "gram": q.entries,
                    "basis_labels": q.basis_labels,
                    "invariants": inv,
                }),
                format!(
                    "{}\nbasis: {}\nrank {}, determinant {}, signature (+{}, -{}, 0:{}), {}",
                    q,
                    q.basis_labels.join(" "),
                    inv.rank,
                    inv.determinant,
                    inv.signature.positive,
                    inv.signature.negative,
                    inv.signature.zero,
                    inv.parity
                ),
            ))
        }
    }
}

fn obstruct(cmd: &ObstructCmd) -> Result<Outcome> {
    match cmd {
        ObstructCmd::Certify { m, n } => {
            let cert = nondiffeo_certificate(*m, *n)?;
            let mut text = format!("{:?}: {}\n", cert.conclusion, cert.reason);
            text.push_str("case                         c_T1   c_T2   c_Sn  defect  k\n");
            for r in &cert.cases {
                let label = match r.case {
                    Case::Even { e1, e2, e3 } => format!("e1={e1:+} e2={e2:+} e3={e3:+}"),
                    Case::Odd { e1, e2, variant } => format!("e1={e1:+} e2={e2:+} {variant}"),
                };
                text.push_str(&format!(
                    "{label:<28} {:>5} {:>6} {:>6} {:>7} {:>3}{}\n",
                    r.coeffs.c_t1,
                    r.coeffs.c_t2,
                    r.coeffs.c_sn,
                    r.defect,
                    r.k_value,
                    if r.ok { "" } else { "  *" }
                ));
            }
            let mut o = Outcome::new(serde_json::to_value(&cert).expect("serializable"), text);
            o.inconclusive = cert.conclusion == Conclusion::Inconclusive;
            Ok(o)
        }
    }
}
