//! Checks on the Monge side: the passage into the flat coframe at the
//! first symmetric value, and the second-branch theorem with the exchange
//! maps.

use super::defs_flat::closure_items;
use super::defs_rolling::{conditional_span_items, conjugate_matches, contact_map, expect_zero_vf};
use super::{expect_span, expect_zero, CheckContext, CheckDef, Outcome};
use crate::catalog::rolling::{self, NINE_PRINTED, NINE_RECONCILED};
use crate::catalog::{flat, monge, RunMode};
use crate::constant::Constant;
use crate::distgeo::Distribution;
use crate::error::Result;
use crate::expr::Expr;
use crate::parse::parse_expr;

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "C14",
            title: "Monge model into the flat coframe (first branch)",
            anchor: "monge-to-flat-first",
            modes: &[RunMode::Generic],
            run: c14,
        },
        CheckDef {
            id: "C17",
            title: "Second bracket-generating theorem and exchange maps",
            anchor: "theorem-second-branch",
            modes: &[RunMode::Lit3IPos, RunMode::Lit3INeg],
            run: c17,
        },
    ]
}

fn c14(_ctx: &CheckContext) -> Result<Outcome> {
    let m = RunMode::Generic.const_mode();
    let c = flat::c_presentation(&m)?;
    let a = flat::a_presentation(&m, &c)?;
    let mn = monge::monge_ninth(&m, &a)?;
    let mut out = Outcome::default();
    for i in 0..3 {
        let pulled = a.theta[i].pullback(&mn.to_a)?;
        if let Some(coeffs) = expect_span(
            &mut out,
            &format!("theta{} in span of the annihilating forms", i + 1),
            &pulled,
            &mn.omega,
        )? {
            for j in 0..3 {
                expect_zero(
                    &mut out,
                    &format!("coefficient ({},{}) matches the printed value", i + 1, j + 1),
                    &coeffs[j].sub(&mn.printed_span[i][j])?,
                );
            }
        }
    }
    out.item(
        "span ledger lists the printed denominator",
        out.ledger.contains("2*bx*bz*bq - 1"),
    );
    let (ker, _) = Distribution::from_annihilator(&mn.omega)?;
    let g = ker.derived_flag()?;
    out.item("growth vector (2,3,5)", g.ranks == vec![2, 3, 5]);
    out.item("growth ledger nonempty", !g.ledger.is_empty());
    out.merge_ledger(&g.ledger);
    Ok(out)
}

fn c17_literal(out: &mut Outcome, mode: RunMode) -> Result<()> {
    let cm = mode.const_mode();
    let ch = rolling::roll_chart("roll", &cm);
    let r = rolling::rolling_model(&ch, &Constant::alpha(&cm))?;
    let tag = mode.to_string();
    // rescaled literal display against the reconciled generic display
    let lit = rolling::c_map_nine_literal(&ch, mode.plus())?;
    let generic = rolling::c_map_nine(&ch, NINE_RECONCILED)?;
    let s2 = Constant::sqrt2(&cm);
    let m3227 = Constant::ratio(&cm, -32, 27).div(&s2)?;
    let m43 = Constant::ratio(&cm, -4, 3).div(&s2)?;
    let scales = [
        m3227.clone(),
        m3227,
        Constant::ratio(&cm, 8, 9),
        m43.clone(),
        m43,
    ];
    for j in 0..5 {
        expect_zero(
            out,
            &format!("{}: rescaled generating function {} matches", tag, j + 1),
            &generic[j].scale(&scales[j])?.sub(&lit[j])?,
        );
    }
    // contact span for the literal functions
    let cpres = flat::c_presentation(&cm)?;
    let map = contact_map(&lit, &cpres)?;
    for (i, th) in cpres.theta.iter().enumerate() {
        let pulled = th.pullback(&map)?;
        expect_span(
            out,
            &format!("{}: contact form {} in span(w1,w2,w3)", tag, i + 1),
            &pulled,
            &r.omega,
        )?;
    }
    // printed seeds satisfy the contact seed relations S1 = Z2 + c5 Z1,
    // S2 = Z3 - c4 Z1 through their action on the generating functions
    let x3 = rolling::x3_field(&r, false)?;
    let printed = rolling::printed_fields_nine(&ch, &r, mode.plus(), &x3)?;
    let sc: [[&str; 5]; 2] = [
        ["4*c3 - 2*c4*c5", "2*c5^2", "-c5", "1", "0"],
        ["2*c4^2", "-4*c3 - 2*c4*c5", "c4", "0", "1"],
    ];
    for (i, sf) in printed.s[..2].iter().enumerate() {
        let mut ok = true;
        for j in 0..5 {
            let got = sf.apply(&lit[j])?;
            let want_c = parse_expr(sc[i][j], &cpres.chart)?;
            let want = map.pull_expr(&want_c)?;
            if !got.sub(&want)?.is_zero() {
                ok = false;
            }
        }
        out.item(
            format!("{}: printed seed {} satisfies the contact relations", tag, i + 1),
            ok,
        );
    }
    // X3 reality and the inconsistent restated display
    let conj_x3 = x3.conjugate()?;
    expect_zero_vf(out, &format!("{}: auxiliary field is real", tag), &conj_x3.sub(&x3)?);
    let x3_other = rolling::x3_field(&r, true)?;
    if x3_other.sub(&x3)?.is_zero() {
        out.item(format!("{}: restated auxiliary display consistent", tag), true);
    } else {
        out.note(format!(
            "{}: the restated auxiliary-field display scales its last term by the \
             shared denominator; the original display is the one the seeds certify",
            tag
        ));
    }
    // closure
    closure_items(out, &tag, &printed.s[0], &printed.s[1], &printed.s[2])?;
    Ok(())
}

fn c17(ctx: &CheckContext) -> Result<Outcome> {
    let mut out = Outcome::default();

    // exchange maps between the two Monge presentations
    let gm = RunMode::Generic.const_mode();
    let p9 = monge::monge_ninth_plain(&gm)?;
    let n9 = monge::monge_nine(&gm)?;
    let m1 = monge::exchange_map_first(&p9, &n9)?;
    let mut carries = true;
    for w in &n9.omega {
        let pulled = w.pullback(&m1)?;
        if !matches!(
            crate::distgeo::span_membership_forms(&pulled, &p9.omega)?,
            crate::distgeo::SpanResult::InSpan { .. }
        ) {
            carries = false;
        }
    }
    out.item("first exchange map carries the presentation", carries);
    {
        // self-composition: four components return, the third picks up 1/81
        let back = crate::exterior::CoordMap::new_plain(
            "reinterpret",
            &n9.chart,
            &p9.chart,
            (0..5).map(|j| Expr::var(&n9.chart, j)).collect(),
        )?;
        let twice = m1.compose(&back, "sq")?.compose(&m1, "twice")?;
        let mut identity_components = 0;
        for j in 0..5 {
            if twice.comps[j].plain.sub(&Expr::var(&p9.chart, j))?.is_zero() {
                identity_components += 1;
            }
        }
        out.item(
            "first exchange map: four of five components return under self-composition",
            identity_components == 4,
        );
        out.note(
            "the first exchange map is stated to compose twice to the identity; \
             the third component returns scaled by 1/81, and the map composed \
             with its genuine inverse (third component scaled by nine against \
             one ninth) is the identity",
        );
        // verify the genuine inverse
        let inv = crate::exterior::CoordMap::new_plain(
            "exchange_first_inverse",
            &n9.chart,
            &p9.chart,
            vec![
                parse_expr("1/x", &n9.chart)?,
                parse_expr("y/x", &n9.chart)?,
                parse_expr("9*z/x", &n9.chart)?,
                parse_expr("y - p*x", &n9.chart)?,
                parse_expr("q*x^3", &n9.chart)?,
            ],
        )?;
        let ok = m1.clone().with_inverse(inv).is_ok();
        out.item("first exchange map: corrected inverse verifies", ok);
    }
    {
        // second exchange map: printed exponent fails, corrected certifies
        let printed = monge::exchange_map_second(&p9, &n9, false)?;
        let mut printed_ok = true;
        for w in &n9.omega {
            let pulled = w.pullback(&printed)?;
            if !matches!(
                crate::distgeo::span_membership_forms(&pulled, &p9.omega)?,
                crate::distgeo::SpanResult::InSpan { .. }
            ) {
                printed_ok = false;
            }
        }
        if printed_ok {
            out.item("second exchange map carries the presentation (as printed)", true);
        } else {
            let corrected = monge::exchange_map_second(&p9, &n9, true)?;
            let mut ok = true;
            for w in &n9.omega {
                let pulled = w.pullback(&corrected)?;
                if !matches!(
                    crate::distgeo::span_membership_forms(&pulled, &p9.omega)?,
                    crate::distgeo::SpanResult::InSpan { .. }
                ) {
                    ok = false;
                }
            }
            out.item(
                "second exchange map carries the presentation (cubed factor)",
                ok,
            );
            out.note(
                "the final component of the second exchange map is printed with a \
                 squared factor; the cube certifies, and the corrected map equals \
                 the self-map followed by the first exchange map",
            );
            // derived equality with the self-map composition
            let sm = monge::self_map(&p9)?;
            let derived = sm.compose(&corrected_src(&m1), "m2_derived")?;
            let mut matches = true;
            for j in 0..5 {
                if !derived.comps[j]
                    .plain
                    .sub(&corrected.comps[j].plain)?
                    .is_zero()
                {
                    matches = false;
                }
            }
            out.item(
                "corrected second exchange map equals self-map then first map",
                matches,
            );
        }
    }
    {
        // the printed self-map is an involution preserving the annihilator
        let sm = monge::self_map(&p9)?;
        let twice = sm.compose(&sm, "twice")?;
        let mut identity = true;
        for j in 0..5 {
            if !twice.comps[j].plain.sub(&Expr::var(&p9.chart, j))?.is_zero() {
                identity = false;
            }
        }
        out.item("self-map squares to the identity", identity);
        let mut preserves = true;
        for w in &p9.omega {
            let pulled = w.pullback(&sm)?;
            if !matches!(
                crate::distgeo::span_membership_forms(&pulled, &p9.omega)?,
                crate::distgeo::SpanResult::InSpan { .. }
            ) {
                preserves = false;
            }
        }
        out.item("self-map preserves the annihilator span", preserves);
    }

    // generic second-branch generating functions: conditional span
    {
        conditional_span_items(
            &mut out,
            &|ch| rolling::c_map_nine(ch, NINE_RECONCILED),
            RunMode::SquaredNine,
            false,
        )?;
        // the printed display fails the specialized span, evidencing the
        // exponent reconciliation
        let scm = RunMode::SquaredNine.const_mode();
        let sch = rolling::roll_chart("roll", &scm);
        let sr = rolling::rolling_model(&sch, &Constant::alpha(&scm))?;
        let scpres = flat::c_presentation(&scm)?;
        let pcs = rolling::c_map_nine(&sch, NINE_PRINTED)?;
        let pmap = contact_map(&pcs, &scpres)?;
        let pulled = scpres.theta[1].pullback(&pmap)?;
        let printed_fails = matches!(
            crate::distgeo::span_membership_forms(&pulled, &sr.omega)?,
            crate::distgeo::SpanResult::NotInSpan { .. }
        );
        out.item(
            "printed exponents fail the specialized span (reconciliation evidence)",
            printed_fails,
        );
        out.note(
            "the generic second-branch display carries the same x-exponent on both \
             terms of the second and fifth generating functions; certification \
             requires the opposite exponent (and a sign) on their q-terms, \
             matching the literal displays",
        );
    }

    // literal modes
    let modes: Vec<RunMode> = match ctx.mode {
        Some(m) => vec![m],
        None => vec![RunMode::Lit3IPos, RunMode::Lit3INeg],
    };
    for m in &modes {
        c17_literal(&mut out, *m)?;
    }
    if ctx.mode.is_none() {
        let cmp = RunMode::Lit3IPos.const_mode();
        let chp = rolling::roll_chart("roll", &cmp);
        let rp = rolling::rolling_model(&chp, &Constant::alpha(&cmp))?;
        let x3p = rolling::x3_field(&rp, false)?;
        let pp = rolling::printed_fields_nine(&chp, &rp, true, &x3p)?;
        let cmm = RunMode::Lit3INeg.const_mode();
        let chm = rolling::roll_chart("roll", &cmm);
        let rm = rolling::rolling_model(&chm, &Constant::alpha(&cmm))?;
        let x3m = rolling::x3_field(&rm, false)?;
        let pm = rolling::printed_fields_nine(&chm, &rm, false, &x3m)?;
        out.item(
            "conjugation carries the upper-sign seeds to the lower-sign seeds",
            conjugate_matches(&pp.s, &pm.s, &chp)?,
        );
    }
    Ok(out)
}

/// The first exchange map with its source reinterpreted on the plain chart
/// (used to compose after the self-map).
fn corrected_src(m1: &crate::exterior::CoordMap) -> crate::exterior::CoordMap {
    m1.clone()
}
