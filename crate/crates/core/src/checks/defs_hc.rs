//! Checks for the classical quadratic Monge model.

use super::defs_flat::closure_items;
use super::{expect_zero, expect_zero_form, CheckContext, CheckDef, Outcome};
use crate::catalog::{flat, hc, RunMode};
use crate::distgeo::{span_membership_fields, Distribution, SpanResult};
use crate::error::Result;
use crate::expr::Expr;
use crate::exterior::VectorField;
use crate::parse::parse_expr;

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "C8",
            title: "Quadratic Monge model into the flat coframe",
            anchor: "hc-passage",
            modes: &[RunMode::Generic],
            run: c8,
        },
        CheckDef {
            id: "C9",
            title: "Quadratic Monge model bracket generation",
            anchor: "hc-generation",
            modes: &[RunMode::Generic],
            run: c9,
        },
    ]
}

fn setup() -> Result<(flat::CPresentation, flat::APresentation, hc::HilbertCartan)> {
    let m = RunMode::Generic.const_mode();
    let c = flat::c_presentation(&m)?;
    let a = flat::a_presentation(&m, &c)?;
    let h = hc::hilbert_cartan(&m, &a, &c)?;
    Ok((c, a, h))
}

fn c8(_ctx: &CheckContext) -> Result<Outcome> {
    let (c, a, h) = setup()?;
    let mut out = Outcome::default();
    out.item("maps into both presentations have verified inverses", true);

    // theta pullbacks: 2 w3 - 4q w2, 2 w1, 2 w2
    let two = Expr::int(&h.chart, 2);
    let e = |s: &str| parse_expr(s, &h.chart);
    let t1 = a.theta[0].pullback(&h.to_a)?;
    let want1 = h.omega[2]
        .scale(&two)?
        .sub(&h.omega[1].scale(&e("4*q")?)?)?;
    expect_zero_form(&mut out, "theta1 pulls back to 2 w3 - 4q w2", &t1.sub(&want1)?);
    let t2 = a.theta[1].pullback(&h.to_a)?;
    expect_zero_form(&mut out, "theta2 pulls back to 2 w1", &t2.sub(&h.omega[0].scale(&two)?)?);
    let t3 = a.theta[2].pullback(&h.to_a)?;
    expect_zero_form(&mut out, "theta3 pulls back to 2 w2", &t3.sub(&h.omega[1].scale(&two)?)?);

    // generating functions equal the composed coordinate change; the second
    // printed function carries a reported exponent slip
    let composed = h.to_a.compose(&a.to_c, "via_contact")?;
    for j in 0..5 {
        expect_zero(
            &mut out,
            &format!("generating function {} matches the composition", j + 1),
            &h.to_c.comps[j].plain.sub(&composed.comps[j].plain)?,
        );
    }
    if !h.c2_printed.sub(&h.c_funcs[1])?.is_zero() {
        out.note(
            "the second generating function is printed with q^2 x; the composition \
             and the generating-field display both give q x^2, which certifies",
        );
    }

    // frame fields by pushforward
    let back = h.to_c.inverted()?;
    for (i, z) in c.z.iter().enumerate() {
        let pushed = z.pushforward(&back)?;
        let diff_comps: Result<Vec<Expr>> = pushed
            .comps
            .iter()
            .zip(&h.z_printed[i].comps)
            .map(|(a, b)| a.sub(b))
            .collect();
        let ok = diff_comps?.iter().all(|d| d.is_zero());
        out.item(format!("frame field {} matches the printed display", i + 1), ok);
    }

    // seed fields from the recipe
    let s1 = h.z_printed[1].add(&h.z_printed[0].scale(&h.c_funcs[4])?)?;
    out.item("first seed equals the recipe combination", s1 == h.s_printed[0]);
    let s2 = h.z_printed[2].sub(&h.z_printed[0].scale(&h.c_funcs[3])?)?;
    out.item("second seed equals the recipe combination", s2 == h.s_printed[1]);
    let coef = h.c_funcs[0]
        .mul(&h.c_funcs[4])?
        .add(&h.c_funcs[1].mul(&h.c_funcs[3])?)?
        .add(&h.c_funcs[2].pow(2)?)?;
    let s3 = h.z_printed[1]
        .scale(&h.c_funcs[0].neg())?
        .add(&h.z_printed[2].scale(&h.c_funcs[1])?)?
        .sub(&h.z_printed[0].scale(&coef)?)?;
    out.item("third seed equals the recipe combination", s3 == h.s_printed[2]);

    // the frozen bracket value
    let br = h.s_printed[0].bracket(&h.s_printed[1])?;
    let want = VectorField::from_comps(
        &h.chart,
        vec![
            (h.chart.index_of("z")?, e("q")?),
            (h.chart.index_of("p")?, e("1/2")?),
        ],
    );
    out.item("[S1, S2] = q d/dz + 1/2 d/dp", br == want);
    Ok(out)
}

fn c9(_ctx: &CheckContext) -> Result<Outcome> {
    let (_c, _a, h) = setup()?;
    let mut out = Outcome::default();
    let (d, _) = Distribution::from_annihilator(&h.omega)?;
    let g = d.derived_flag()?;
    out.item("growth vector (2,3,5)", g.ranks == vec![2, 3, 5]);
    out.item("growth ledger nonempty", !g.ledger.is_empty());
    out.merge_ledger(&g.ledger);
    for (i, s) in h.s_printed[..2].iter().enumerate() {
        let ok = matches!(
            span_membership_fields(s, &d.generators)?,
            SpanResult::InSpan { .. }
        );
        out.item(format!("seed {} lies in the distribution", i + 1), ok);
    }
    closure_items(
        &mut out,
        "quadratic model",
        &h.s_printed[0],
        &h.s_printed[1],
        &h.s_printed[2],
    )?;
    Ok(out)
}
