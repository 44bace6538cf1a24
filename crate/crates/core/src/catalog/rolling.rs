//! The complex rolling model: the su(2) coframe, the spanning fields, the
//! annihilating 1-forms, the hat/bar passage to the Monge normal form, and
//! the generating c-functions for both maximally symmetric parameter values.

use std::sync::Arc;

use crate::chart::Chart;
use crate::constant::{ConstMode, Constant};
use crate::error::Result;
use crate::exterior::{CoordMap, DiffForm, MapComponent, VectorField};
use crate::expr::Expr;
use crate::lattice::ExpForm;
use crate::parse::parse_expr;

pub struct Rolling {
    pub chart: Arc<Chart>,
    pub sigma: [DiffForm; 3],
    pub e_fields: [VectorField; 3],
    pub x1: VectorField,
    pub x2: VectorField,
    pub omega: [DiffForm; 3],
    pub t_forms: [DiffForm; 3],
    /// printed expansions of the t-combinations
    pub t_printed: [DiffForm; 3],
}

fn e(ch: &Arc<Chart>, s: &str) -> Result<Expr> {
    parse_expr(s, ch)
}

pub fn roll_chart(name: &str, mode: &Arc<ConstMode>) -> Arc<Chart> {
    Chart::new(name, &["x", "y", "z", "p", "q"], mode)
}

/// An exponential of a constant-coefficient combination of chart variables.
pub fn exp_of(ch: &Arc<Chart>, entries: &[(&str, Constant)]) -> Result<Expr> {
    let mut v = vec![Constant::zero(&ch.mode); ch.dim()];
    for (name, c) in entries {
        let i = ch.index_of(name)?;
        v[i] = v[i].add(c)?;
    }
    Expr::exp_form(ch, ExpForm(v))
}

/// The su(2) coframe, its dual fields, and the spanning fields for a given
/// value of the parameter.
pub fn rolling_model(ch: &Arc<Chart>, alpha: &Constant) -> Result<Rolling> {
    let d = |v: &str| DiffForm::dvar_named(ch, v);
    // dp - p dz
    let contact = d("p")?.add(&d("z")?.scale(&e(ch, "-p")?)?)?;
    // dy + y dz
    let dyz = d("y")?.add(&d("z")?.scale(&e(ch, "y")?)?)?;
    let sigma1 = dyz
        .scale(&e(ch, "i")?)?
        .sub(&contact.scale(&e(ch, "i*(y^2 - 1)")?)?)?;
    let sigma2 = dyz.sub(&contact.scale(&e(ch, "y^2 + 1")?)?)?;
    let sigma3 = contact
        .scale(&e(ch, "-2*i*y")?)?
        .add(&d("z")?.scale(&e(ch, "i")?)?)?;

    let pv = |v: &str| VectorField::coordinate_named(ch, v);
    let e1 = pv("y")?
        .scale(&e(ch, "i/2*(y^2 - 1)")?)?
        .sub(&pv("p")?.scale(&e(ch, "i/2*(2*y*p + 1)")?)?)?
        .sub(&pv("z")?.scale(&e(ch, "i*y")?)?)?;
    let e2 = pv("y")?
        .scale(&e(ch, "1/2*(y^2 + 1)")?)?
        .sub(&pv("p")?.scale(&e(ch, "1/2*(2*y*p + 1)")?)?)?
        .sub(&pv("z")?.scale(&e(ch, "y")?)?)?;
    let e3 = pv("y")?
        .scale(&e(ch, "i*y")?)?
        .sub(&pv("p")?.scale(&e(ch, "i*p")?)?)?
        .sub(&pv("z")?.scale(&e(ch, "i")?)?)?;

    let eax = exp_of(ch, &[("x", alpha.clone())])?;
    let alpha_e = Expr::constant(ch, alpha.clone());
    let x1 = pv("x")?.sub(&e2)?;
    let x2 = pv("q")?
        .scale(&e(ch, "i")?)?
        .sub(&e1.scale(&eax)?)?
        .add(&e3.scale(&alpha_e.mul(&eax)?)?)?;

    let omega1 = sigma1.sub(&d("q")?.scale(&e(ch, "i")?.mul(&eax)?)?)?;
    let omega2 = sigma2.add(&d("x")?)?;
    let omega3 = sigma3.add(&d("q")?.scale(&e(ch, "i")?.mul(&alpha_e)?.mul(&eax)?)?)?;

    let t1 = omega1.scale(&alpha_e)?.add(&omega3)?;
    let t2 = omega1.sub(&omega2.scale(&e(ch, "i")?)?)?;
    let t3 = omega3.add(&t2.scale(&e(ch, "y")?)?)?;

    // printed expansions: t1 = i a dy + i((a y^2 + 2y - a)p + (a y + 1))dz
    //                          - i(a y^2 + 2y - a)dp
    let poly_a = e(ch, "y^2 - 1")?
        .mul(&alpha_e)?
        .add(&e(ch, "2*y")?)?; // a y^2 + 2y - a
    let t1_printed = d("y")?
        .scale(&e(ch, "i")?.mul(&alpha_e)?)?
        .add(&d("z")?.scale(
            &e(ch, "i")?.mul(
                &poly_a
                    .mul(&e(ch, "p")?)?
                    .add(&e(ch, "y")?.mul(&alpha_e)?.add(&Expr::one(ch))?)?,
            )?,
        )?)?
        .sub(&d("p")?.scale(&e(ch, "i")?.mul(&poly_a)?)?)?;
    let t2_printed = d("x")?
        .scale(&e(ch, "-i")?)?
        .add(&d("z")?.scale(&e(ch, "-2*i*p")?)?)?
        .add(&d("p")?.scale(&e(ch, "2*i")?)?)?
        .sub(&d("q")?.scale(&e(ch, "i")?.mul(&eax)?)?)?;
    let t3_printed = d("x")?
        .scale(&e(ch, "-i*y")?)?
        .add(&d("z")?.scale(&e(ch, "i")?)?)?
        .sub(&d("q")?.scale(
            &e(ch, "i")?
                .mul(&eax)?
                .mul(&e(ch, "y")?.sub(&alpha_e)?)?,
        )?)?;

    Ok(Rolling {
        chart: ch.clone(),
        sigma: [sigma1, sigma2, sigma3],
        e_fields: [e1, e2, e3],
        x1,
        x2,
        omega: [omega1, omega2, omega3],
        t_forms: [t1, t2, t3],
        t_printed: [t1_printed, t2_printed, t3_printed],
    })
}

pub struct HatPassage {
    pub hat_chart: Arc<Chart>,
    /// rolling -> hat, with verified (logarithmic) inverse
    pub to_hat: CoordMap,
    /// the hat-chart 1-forms whose pullbacks are the printed multiples of
    /// the t-combinations
    pub hat_forms: [DiffForm; 3],
    /// the multipliers: (i/2)e^{-z}, -i e^{z - a x}, -i e^{z}
    pub multipliers: [Expr; 3],
}

/// The change of coordinates into the intermediate hat chart.
pub fn hat_passage(ch: &Arc<Chart>) -> Result<HatPassage> {
    let mode = &ch.mode;
    let am = Constant::alpha(mode);
    let hat = Chart::new("hat", &["hx", "hy", "hz", "hp", "hq"], mode);
    let ez = exp_of(ch, &[("z", Constant::one(mode))])?;
    let emz = exp_of(ch, &[("z", Constant::int(mode, -1))])?;
    let emax = exp_of(ch, &[("x", am.neg())])?;
    let ezmax = exp_of(ch, &[("z", Constant::one(mode)), ("x", am.neg())])?;
    let ainv = am.inv()?;

    let fwd = CoordMap::new_plain(
        "roll_to_hat",
        ch,
        &hat,
        vec![
            e(ch, "q")?.sub(&emax.scale(&ainv)?)?,
            ez.mul(&e(ch, "y")?.scale(&am)?.add(&Expr::one(ch))?)?,
            ezmax,
            emz.mul(&e(ch, "-p")?)?,
            emax,
        ],
    )?;
    // inverse: x = -(1/a) log hq, y = (hq hy/hz - 1)/a, z = log(hz/hq),
    // p = -(hz/hq) hp, q = hx + hq/a
    let inv = CoordMap::new(
        "hat_to_roll",
        &hat,
        ch,
        vec![
            MapComponent::with_logs(Expr::zero(&hat), vec![(ainv.neg(), e(&hat, "hq")?)]),
            MapComponent::plain(e(&hat, "hq*hy/hz - 1")?.scale(&ainv)?),
            MapComponent::with_logs(
                Expr::zero(&hat),
                vec![
                    (Constant::one(mode), e(&hat, "hz")?),
                    (Constant::int(mode, -1), e(&hat, "hq")?),
                ],
            ),
            MapComponent::plain(e(&hat, "-hz*hp/hq")?),
            MapComponent::plain(e(&hat, "hx")?.add(&e(&hat, "hq")?.scale(&ainv)?)?),
        ],
    )?;
    let to_hat = fwd.with_inverse(inv)?;

    // hat-side forms
    let d = |v: &str| DiffForm::dvar_named(&hat, v);
    let asum = ainv.add(&am)?; // 1/a + a
    let f1 = d("hp")?.add(&d("hx")?.scale(&e(&hat, "1/(2*hz)")?)?)?;
    let coef2 = e(&hat, "hy")?
        .scale(&ainv)?
        .sub(&e(&hat, "hz/hq")?.scale(&asum)?)?;
    let f2 = d("hz")?.sub(&d("hx")?.scale(&coef2)?)?;
    let coef3 = e(&hat, "hy^2")?
        .scale(&ainv)?
        .sub(&e(&hat, "hz^2/hq^2")?.scale(&asum)?)?;
    let f3 = d("hy")?.add(&d("hp")?.scale(&coef3)?)?;

    let m1 = e(ch, "i/2")?.mul(&exp_of(ch, &[("z", Constant::int(mode, -1))])?)?;
    let m2 = e(ch, "-i")?.mul(&exp_of(
        ch,
        &[("z", Constant::one(mode)), ("x", am.neg())],
    )?)?;
    let m3 = e(ch, "-i")?.mul(&exp_of(ch, &[("z", Constant::one(mode))])?)?;

    Ok(HatPassage {
        hat_chart: hat,
        to_hat,
        hat_forms: [f1, f2, f3],
        multipliers: [m1, m2, m3],
    })
}

pub struct BarPassage {
    pub bar_chart: Arc<Chart>,
    /// hat -> bar, with verified inverse
    pub to_bar: CoordMap,
    /// rolling -> bar directly (the printed composite)
    pub direct: CoordMap,
    /// generic F on the bar chart
    pub f_generic: Expr,
    /// the Monge annihilator forms on the bar chart
    pub omega_bar: [DiffForm; 3],
    /// printed value of F through the bar map, on the hat chart
    pub f_through: Expr,
}

/// The bar coordinates carrying the Monge normal form with generic F.
pub fn bar_passage(ch: &Arc<Chart>, hat: &HatPassage) -> Result<BarPassage> {
    let mode = &ch.mode;
    let bar = Chart::with_roots(
        "monge_bar",
        &["bx", "by", "bz", "bp", "bq"],
        &["bx", "bq"],
        mode,
    );
    let h = &hat.hat_chart;
    let am = Constant::alpha(mode);
    let a2p1 = am.mul(&am)?.add(&Constant::one(mode))?;
    let denom = e(h, "hy*hq")?.sub(&e(h, "hz")?.scale(&a2p1)?)?;
    let bq = e(h, "hq")?
        .scale(&am.neg())?
        .div(&e(h, "4*hz")?.mul(&denom)?)?;
    let to_bar = CoordMap::new_plain(
        "hat_to_bar",
        h,
        &bar,
        vec![
            e(h, "2*hz")?,
            e(h, "hx + 2*hz*hp")?,
            e(h, "-hy")?.scale(&am.inv()?)?,
            e(h, "hp")?,
            bq,
        ],
    )?
    .with_inverse(CoordMap::new_plain(
        "bar_to_hat",
        &bar,
        h,
        vec![
            e(&bar, "by - bx*bp")?,
            e(&bar, "bz")?.scale(&am.neg())?,
            e(&bar, "bx/2")?,
            e(&bar, "bp")?,
            e(&bar, "bx^2*bq")?
                .scale(&a2p1)?
                .div(&e(&bar, "1 - 2*bx*bq*bz")?.scale(&am)?)?,
        ],
    )?)?;

    // the printed direct composite (rolling -> bar)
    let ainv = am.inv()?;
    let e_zax = exp_of(ch, &[("z", Constant::one(mode)), ("x", am.neg())])?;
    let e_max = exp_of(ch, &[("x", am.neg())])?;
    let e_z = exp_of(ch, &[("z", Constant::one(mode))])?;
    let e_mz = exp_of(ch, &[("z", Constant::int(mode, -1))])?;
    let e_2zax = exp_of(ch, &[("z", Constant::int(mode, 2)), ("x", am.neg())])?;
    let direct = CoordMap::new_plain(
        "roll_to_bar",
        ch,
        &bar,
        vec![
            e_zax.scale(&Constant::int(mode, 2))?,
            e(ch, "q")?
                .sub(&e_max.scale(&ainv)?)?
                .sub(&e_max.mul(&e(ch, "2*p")?)?)?,
            e_z.mul(&e(ch, "y")?.scale(&am)?.add(&Expr::one(ch))?)?
                .scale(&ainv.neg())?,
            e_mz.mul(&e(ch, "-p")?)?,
            Expr::one(ch).neg().div(
                &e_2zax
                    .scale(&Constant::int(mode, 4))?
                    .mul(&e(ch, "y")?.sub(&Expr::constant(ch, am.clone()))?)?,
            )?,
        ],
    )?;

    let f_generic = parse_expr(
        "bq*bz^2 - 1/(alpha^2 + 1)*(sqrt(bq)*bz - 1/(2*sqrt(bq)*bx))^2",
        &bar,
    )?;
    let d = |v: &str| DiffForm::dvar_named(&bar, v);
    let omega_bar = [
        d("by")?.add(&d("bx")?.scale(&e(&bar, "-bp")?)?)?,
        d("bp")?.add(&d("bx")?.scale(&e(&bar, "-bq")?)?)?,
        d("bz")?.add(&d("bx")?.scale(&f_generic.neg())?)?,
    ];

    // printed: F through the bar map equals
    // -(hy^2 hq^2 - (a^2+1) hz^2) / (4 a hq hz (hy hq - (1+a^2) hz))
    let f_through = e(h, "hy^2*hq^2")?
        .sub(&e(h, "hz^2")?.scale(&a2p1)?)?
        .neg()
        .div(
            &e(h, "4*hq*hz")?
                .scale(&am)?
                .mul(&e(h, "hy*hq")?.sub(&e(h, "hz")?.scale(&a2p1)?)?)?,
        )?;

    Ok(BarPassage {
        bar_chart: bar,
        to_bar,
        direct,
        f_generic,
        omega_bar,
        f_through,
    })
}

/// Variant selection for the alpha^2 = -9 generating functions, where the
/// printed exponent signs need reconciliation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NineVariant {
    /// sign of the x-exponent in the q-term of c2 (printed: -1)
    pub c2_q_exp: i64,
    /// sign of the x-exponent in the q-term of c5 (printed: -1)
    pub c5_q_exp: i64,
    /// sign of the q-term of c5 (printed: +1)
    pub c5_q_sign: i64,
}

pub const NINE_PRINTED: NineVariant = NineVariant {
    c2_q_exp: -1,
    c5_q_exp: -1,
    c5_q_sign: 1,
};

/// The variant reconciled against the literal display and the span
/// certification.
pub const NINE_RECONCILED: NineVariant = NineVariant {
    c2_q_exp: 1,
    c5_q_exp: 1,
    c5_q_sign: -1,
};

/// The generic c-functions mapping the rolling model into the contact
/// coordinates, for the branch whose symmetric values are alpha^2 = -1/9.
pub fn c_map_ninth(ch: &Arc<Chart>) -> Result<[Expr; 5]> {
    let mode = &ch.mode;
    let a = Constant::alpha(mode);
    let a2 = a.mul(&a)?;
    let a4 = a2.mul(&a2)?;
    let ax = |num: i64| -> Result<Expr> {
        exp_of(ch, &[("x", a.mul(&Constant::ratio(mode, num, 2))?)])
    };
    let zx = |num: i64| -> Result<Expr> {
        exp_of(ch, &[("z", Constant::ratio(mode, num, 2))])
    };
    let a2p1 = a2.add(&Constant::one(mode))?;
    let pre = Constant::int(mode, 48)
        .mul(&Constant::sqrt2(mode))?
        .div(&a2p1.mul(&a2p1)?.mul(&a)?)?;
    // beta = alpha y + (1 - 3 a^2)/4
    let beta = e(ch, "y")?.scale(&a)?.add(&Expr::constant(
        ch,
        Constant::one(mode)
            .sub(&a2.mul(&Constant::int(mode, 3))?)?
            .mul(&Constant::ratio(mode, 1, 4))?,
    ))?;
    let gamma = a.mul(&a2.mul(&Constant::int(mode, 7))?.add(&Constant::one(mode))?)?;
    let delta = Constant::int(mode, 15)
        .mul(&a4)?
        .sub(&Constant::int(mode, 10).mul(&a2)?)?
        .sub(&Constant::one(mode))?
        .mul(&Constant::ratio(mode, 1, 4))?;
    let aa2p1 = a.mul(&a2p1)?;

    let c1 = zx(1)?
        .mul(
            &ax(-3)?
                .mul(&e(ch, "y")?.scale(&gamma)?.sub(&Expr::constant(ch, delta.clone()))?)?
                .sub(&e(ch, "q")?.mul(&ax(-1)?)?.mul(&beta)?.scale(&aa2p1)?)?,
        )?
        .scale(&pre.neg())?;
    let c2 = zx(-1)?
        .mul(
            &ax(-3)?
                .mul(
                    &e(ch, "y*p + 1")?
                        .scale(&gamma)?
                        .sub(&e(ch, "p")?.scale(&delta)?)?,
                )?
                .sub(
                    &e(ch, "q")?
                        .mul(&ax(-1)?)?
                        .mul(
                            &Expr::constant(ch, a.clone())
                                .add(&beta.mul(&e(ch, "p")?)?)?,
                        )?
                        .scale(&aa2p1)?,
                )?,
        )?
        .scale(&pre)?;
    let nine_a2_p1 = Constant::int(mode, 9).mul(&a2)?.add(&Constant::one(mode))?;
    let c3 = exp_of(ch, &[("x", a.neg())])?
        .scale(
            &Constant::int(mode, -3)
                .mul(&nine_a2_p1)?
                .div(&a.mul(&a2p1)?)?,
        )?
        .add(&e(ch, "3*q")?)?;
    let pre45 = Constant::int(mode, 4).mul(&Constant::sqrt2(mode))?.div(&a2p1)?;
    let c4 = zx(1)?.mul(&ax(-1)?)?.mul(&beta)?.scale(&pre45)?;
    let c5 = zx(-1)?
        .mul(&ax(-1)?)?
        .mul(&Expr::constant(ch, a.clone()).add(&beta.mul(&e(ch, "p")?)?)?)?
        .scale(&pre45)?;
    Ok([c1, c2, c3, c4, c5])
}

/// Exponential of (zk/zd) z + (xk/xd) i x.
fn ex_iz(
    ch: &Arc<Chart>,
    zk: i64,
    zd: i64,
    xk: i64,
    xd: i64,
) -> Result<Expr> {
    let mode = &ch.mode;
    let i = Constant::i(mode);
    let mut entries: Vec<(&str, Constant)> = Vec::new();
    if zk != 0 {
        entries.push(("z", Constant::ratio(mode, zk, zd)));
    }
    if xk != 0 {
        entries.push(("x", i.mul(&Constant::ratio(mode, xk, xd))?));
    }
    exp_of(ch, &entries)
}

/// The rescaled generating functions at alpha = +-i/3 (sign `plus`).
pub fn c_map_ninth_literal(ch: &Arc<Chart>, plus: bool) -> Result<[Expr; 5]> {
    let mode = &ch.mode;
    let s: i64 = if plus { 1 } else { -1 };
    let si = Constant::i(mode).mul(&Constant::int(mode, s))?;
    let ypmi = e(ch, "y")?.add(&Expr::constant(ch, si.clone()))?;
    let ymmi = e(ch, "y")?.sub(&Expr::constant(ch, si.clone()))?;
    let one_p = |f: &Expr| -> Result<Expr> { Expr::one(ch).add(&f.mul(&e(ch, "p")?)?) };
    let c1 = ex_iz(ch, 1, 2, -s, 2)?
        .mul(&ypmi)?
        .sub(
            &ex_iz(ch, 1, 2, -s, 6)?
                .mul(&e(ch, "q")?)?
                .mul(&ymmi)?
                .scale(&si.mul(&Constant::ratio(mode, 4, 3))?)?,
        )?
        .scale(&Constant::int(mode, -2))?;
    let c2 = ex_iz(ch, -1, 2, -s, 2)?
        .mul(&one_p(&ypmi)?)?
        .sub(
            &ex_iz(ch, -1, 2, -s, 6)?
                .mul(&e(ch, "q")?)?
                .mul(&one_p(&ymmi)?)?
                .scale(&si.mul(&Constant::ratio(mode, 4, 3))?)?,
        )?
        .scale(&Constant::int(mode, 2))?;
    let c3 = e(ch, "2/3*q")?;
    let c4 = ex_iz(ch, 1, 2, -s, 6)?.mul(&ymmi)?.scale(&si)?;
    let c5 = ex_iz(ch, -1, 2, -s, 6)?.mul(&one_p(&ymmi)?)?.scale(&si)?;
    Ok([c1, c2, c3, c4, c5])
}

/// Printed generating fields of the first theorem (alpha = +-i/3).
pub struct NinthPrinted {
    pub z: [VectorField; 3],
    pub s: [VectorField; 3],
}

pub fn printed_fields_ninth(ch: &Arc<Chart>, r: &Rolling, plus: bool) -> Result<NinthPrinted> {
    let mode = &ch.mode;
    let s: i64 = if plus { 1 } else { -1 };
    let i = Constant::i(mode);
    let si = i.mul(&Constant::int(mode, s))?;
    // the recurring combination 5 E3 +- 3i E1
    let comb = r.e_fields[2]
        .scale_const(&Constant::int(mode, 5))?
        .add(&r.e_fields[0].scale_const(&si.mul(&Constant::int(mode, 3))?)?)?;
    let ypmi = e(ch, "y")?.add(&Expr::constant(ch, si.clone()))?;
    let ymmi = e(ch, "y")?.sub(&Expr::constant(ch, si.clone()))?;
    let one_p = |f: &Expr| -> Result<Expr> { Expr::one(ch).add(&f.mul(&e(ch, "p")?)?) };

    let z1 = r
        .x2
        .scale_const(&i.mul(&Constant::ratio(mode, -3, 2))?)?
        .add(
            &comb
                .scale(&ex_iz(ch, 0, 1, s, 3)?)?
                .scale_const(&Constant::ratio(mode, s, 2))?,
        )?;
    let z2 = r
        .x1
        .scale(&ex_iz(ch, -1, 2, s, 6)?.mul(&one_p(&ypmi)?)?)?
        .scale_const(&si.mul(&Constant::ratio(mode, 3, 4))?)?
        .sub(
            &r.x2
                .scale(&ex_iz(ch, -1, 2, -s, 6)?.mul(&one_p(&ymmi)?)?)?
                .scale_const(&Constant::int(mode, 3 * s))?,
        )?
        .sub(
            &comb
                .scale(&ex_iz(ch, -1, 2, s, 6)?.mul(&one_p(&ymmi)?)?)?
                .scale_const(&i.mul(&Constant::ratio(mode, 1, 2))?)?,
        )?;
    let z3 = r
        .x1
        .scale(&ex_iz(ch, 1, 2, s, 6)?.mul(&ypmi)?)?
        .scale_const(&si.mul(&Constant::ratio(mode, -3, 4))?)?
        .add(
            &r.x2
                .scale(&ex_iz(ch, 1, 2, -s, 6)?.mul(&ymmi)?)?
                .scale_const(&Constant::int(mode, 3 * s))?,
        )?
        .add(
            &comb
                .scale(&ex_iz(ch, 1, 2, s, 6)?.mul(&ymmi)?)?
                .scale_const(&i.mul(&Constant::ratio(mode, 1, 2))?)?,
        )?;

    let s1 = r
        .x1
        .scale(&ex_iz(ch, -1, 2, s, 6)?.mul(&one_p(&ypmi)?)?)?
        .scale_const(&si.mul(&Constant::ratio(mode, 3, 4))?)?
        .sub(
            &r.x2
                .scale(&ex_iz(ch, -1, 2, -s, 6)?.mul(&one_p(&ymmi)?)?)?
                .scale_const(&Constant::ratio(mode, 3 * s, 2))?,
        )?;
    let s2 = r
        .x1
        .scale(&ex_iz(ch, 1, 2, s, 6)?.mul(&ypmi)?)?
        .scale_const(&si.mul(&Constant::ratio(mode, -3, 4))?)?
        .add(
            &r.x2
                .scale(&ex_iz(ch, 1, 2, -s, 6)?.mul(&ymmi)?)?
                .scale_const(&Constant::ratio(mode, 3 * s, 2))?,
        )?;
    let s3 = r
        .x1
        .scale(&e(ch, "q")?)?
        .scale_const(&si.mul(&Constant::int(mode, -4))?)?
        .add(
            &r.x2
                .scale(
                    &e(ch, "q^2")?
                        .sub(&ex_iz(ch, 0, 1, -2 * s, 3)?.scale(&Constant::int(mode, 9))?)?,
                )?
                .scale_const(&i.mul(&Constant::ratio(mode, 2, 3))?)?,
        )?
        .sub(
            &comb
                .scale(&e(ch, "q^2")?.mul(&ex_iz(ch, 0, 1, s, 3)?)?)?
                .scale_const(&Constant::ratio(mode, 2 * s, 9))?,
        )?;

    Ok(NinthPrinted {
        z: [z1, z2, z3],
        s: [s1, s2, s3],
    })
}

/// The generic c-functions for the branch whose symmetric values are
/// alpha^2 = -9, with exponent-variant selection.
pub fn c_map_nine(ch: &Arc<Chart>, variant: NineVariant) -> Result<[Expr; 5]> {
    let mode = &ch.mode;
    let a = Constant::alpha(mode);
    let a2 = a.mul(&a)?;
    let s2 = Constant::sqrt2(mode);
    let exz = |zk: i64, zd: i64, xsign: i64| -> Result<Expr> {
        let mut entries: Vec<(&str, Constant)> = vec![("z", Constant::ratio(mode, zk, zd))];
        if xsign != 0 {
            entries.push(("x", a.mul(&Constant::ratio(mode, xsign, 2))?));
        }
        exp_of(ch, &entries)
    };
    let big = e(ch, "y")?
        .scale(&a.mul(&Constant::int(mode, 8))?)?
        .add(&Expr::constant(ch, a2.add(&Constant::int(mode, 9))?))?;
    let quad = e(ch, "y")?
        .scale(&a.mul(&Constant::int(mode, 4))?)?
        .add(&Expr::constant(ch, Constant::int(mode, 3).sub(&a2)?))?;
    let lin1 = e(ch, "y")?
        .scale(&a.mul(&Constant::int(mode, 10))?)?
        .add(&Expr::constant(ch, Constant::int(mode, 9).sub(&a2)?))?;
    let a_bracket = quad
        .mul(&big)?
        .mul(&e(ch, "p")?)?
        .add(&lin1.scale(&a.mul(&Constant::int(mode, 2))?)?)?;
    let lin2 = e(ch, "y")?
        .scale(&a.mul(&Constant::int(mode, 10))?)?
        .add(&Expr::constant(
            ch,
            Constant::int(mode, 9).add(&a2.mul(&Constant::int(mode, 3))?)?,
        ))?;
    let twelve = e(ch, "y")?
        .scale(&a.mul(&Constant::int(mode, 12))?)?
        .add(&Expr::constant(
            ch,
            Constant::int(mode, 9).add(&a2.mul(&Constant::int(mode, 5))?)?,
        ))?;
    let b_bracket = twelve
        .mul(&big)?
        .mul(&e(ch, "p")?)?
        .scale(&Constant::ratio(mode, 1, 3))?
        .add(&lin2.scale(&a.mul(&Constant::int(mode, 2))?)?)?;

    let big2 = big.mul(&big)?;
    let pre1 = Expr::constant(ch, Constant::int(mode, 18).mul(&s2)?).div(&big2)?;
    let c1 = exz(-3, 2, 1)?.mul(&a_bracket)?.mul(&pre1)?.neg();
    let pre2 = Expr::constant(ch, Constant::int(mode, 18).mul(&s2)?)
        .div(&big2.scale(&a)?)?;
    let c2 = exz(-3, 2, -1)?
        .mul(&b_bracket)?
        .sub(
            &e(ch, "q")?
                .mul(&exz(-3, 2, variant.c2_q_exp)?)?
                .mul(&a_bracket)?
                .scale(&a)?,
        )?
        .mul(&pre2)?;
    let c3 = e(ch, "-3")?
        .div(&big)?
        .mul(&exp_of(ch, &[("z", Constant::int(mode, -1))])?)?
        .mul(
            &big.mul(&e(ch, "p")?)?
                .add(&Expr::constant(ch, a.mul(&Constant::int(mode, 4))?))?,
        )?;
    let c4 = quad
        .div(&big)?
        .mul(&exz(-1, 2, 1)?)?
        .scale(&Constant::ratio(mode, 3, 2).mul(&s2)?)?;
    let lin3 = e(ch, "y")?
        .scale(&a.mul(&Constant::int(mode, 4))?)?
        .add(&Expr::constant(
            ch,
            Constant::int(mode, 3).add(&a2.mul(&Constant::ratio(mode, 5, 3))?)?,
        ))?;
    let pre5 = Constant::ratio(mode, 3, 2).mul(&s2)?;
    let q_term = e(ch, "q")?
        .mul(&exz(-1, 2, variant.c5_q_exp)?)?
        .mul(&quad)?
        .scale(&a.mul(&Constant::int(mode, variant.c5_q_sign))?)?;
    let c5 = exz(-1, 2, -1)?
        .mul(&lin3)?
        .add(&q_term)?
        .scale(&pre5)?
        .div(&big.scale(&a)?)?;
    Ok([c1, c2, c3, c4, c5])
}

/// The rescaled generating functions at alpha = +-3i.
pub fn c_map_nine_literal(ch: &Arc<Chart>, plus: bool) -> Result<[Expr; 5]> {
    let mode = &ch.mode;
    let s: i64 = if plus { 1 } else { -1 };
    let si = Constant::i(mode).mul(&Constant::int(mode, s))?;
    let ymmi = e(ch, "y")?.sub(&Expr::constant(ch, si.clone()))?;
    let ypmi = e(ch, "y")?.add(&Expr::constant(ch, si.clone()))?;
    // 2y(y -+ i)p + (5y -+ 3i)/4 and the +- mirror
    let bracketm = e(ch, "2*y")?
        .mul(&ymmi)?
        .mul(&e(ch, "p")?)?
        .add(
            &e(ch, "5*y")?
                .sub(&Expr::constant(ch, si.mul(&Constant::int(mode, 3))?))?
                .scale(&Constant::ratio(mode, 1, 4))?,
        )?;
    let bracketp = e(ch, "2*y")?
        .mul(&ypmi)?
        .mul(&e(ch, "p")?)?
        .add(
            &e(ch, "5*y")?
                .add(&Expr::constant(ch, si.mul(&Constant::int(mode, 3))?))?
                .scale(&Constant::ratio(mode, 1, 4))?,
        )?;
    let c1 = ex_iz(ch, -3, 2, 3 * s, 2)?
        .mul(&bracketm)?
        .mul(&e(ch, "16/(3*y^2)")?)?;
    let c2 = ex_iz(ch, -3, 2, 0, 1)?
        .mul(
            &e(ch, "q")?
                .mul(&ex_iz(ch, 0, 1, 3 * s, 2)?)?
                .mul(&bracketm)?
                .add(
                    &ex_iz(ch, 0, 1, -3 * s, 2)?
                        .mul(&bracketp)?
                        .scale(&si.mul(&Constant::ratio(mode, 1, 3))?)?,
                )?,
        )?
        .mul(&e(ch, "16/(3*y^2)")?)?;
    let c3 = ex_iz(ch, -1, 1, 0, 1)?
        .mul(&e(ch, "2*p*y + 1")?)?
        .mul(&e(ch, "-4/(3*y)")?)?;
    let c4 = ex_iz(ch, -1, 2, 3 * s, 2)?
        .mul(&ymmi)?
        .mul(&e(ch, "-1/y")?)?;
    let c5 = ex_iz(ch, -1, 2, 0, 1)?
        .mul(
            &e(ch, "q")?
                .mul(&ex_iz(ch, 0, 1, 3 * s, 2)?)?
                .mul(&ymmi)?
                .add(
                    &ex_iz(ch, 0, 1, -3 * s, 2)?
                        .mul(&ypmi)?
                        .scale(&si.mul(&Constant::ratio(mode, 1, 3))?)?,
                )?,
        )?
        .mul(&e(ch, "1/y")?)?;
    Ok([c1, c2, c3, c4, c5])
}

/// The auxiliary field for the second theorem. Two printed normalizations
/// disagree on the last term; both are available.
pub fn x3_field(r: &Rolling, shared_denominator: bool) -> Result<VectorField> {
    let ch = &r.chart;
    let e1c = e(ch, "i*(y^2 - 1)/(2*y)")?;
    let e2c = e(ch, "(y^2 + 1)/(2*y)")?;
    let e3c = if shared_denominator {
        e(ch, "10*i/(2*y)")?
    } else {
        e(ch, "5*i")?
    };
    r.e_fields[0]
        .scale(&e1c)?
        .add(&r.e_fields[1].scale(&e2c)?)?
        .add(&r.e_fields[2].scale(&e3c)?)
}

/// Printed generating fields of the second theorem (alpha = +-3i).
pub struct NinePrinted {
    pub s: [VectorField; 3],
}

pub fn printed_fields_nine(
    ch: &Arc<Chart>,
    r: &Rolling,
    plus: bool,
    x3: &VectorField,
) -> Result<NinePrinted> {
    let mode = &ch.mode;
    let s: i64 = if plus { 1 } else { -1 };
    let si = Constant::i(mode).mul(&Constant::int(mode, s))?;
    let ymmi = e(ch, "y")?.sub(&Expr::constant(ch, si.clone()))?;
    let ypmi = e(ch, "y")?.add(&Expr::constant(ch, si.clone()))?;
    // y^2 + k s i y - 1
    let quad_si = |k: i64| -> Result<Expr> {
        e(ch, "y^2 - 1")?.add(&e(ch, "y")?.scale(&si.mul(&Constant::int(mode, k))?)?)
    };
    let s1_x1 = e(ch, "3*q")?
        .mul(&ex_iz(ch, 0, 1, 3 * s, 2)?)?
        .mul(&ypmi)?
        .mul(&quad_si(-4)?)?
        .add(
            &ex_iz(ch, 0, 1, -3 * s, 2)?
                .mul(&ymmi)?
                .mul(&quad_si(4)?)?
                .scale(&si)?,
        )?
        .mul(&ex_iz(ch, 1, 2, 0, 1)?)?
        .mul(&e(ch, "1/(16*y)")?)?;
    let s1_x2 = e(ch, "3*q")?
        .mul(&ex_iz(ch, 0, 1, -3 * s, 2)?)?
        .mul(&ymmi)?
        .mul(&quad_si(-2)?)?
        .add(
            &ex_iz(ch, 0, 1, -9 * s, 2)?
                .mul(&ypmi)?
                .mul(&quad_si(2)?)?
                .scale(&si)?,
        )?
        .mul(&ex_iz(ch, 1, 2, 0, 1)?)?
        .mul(&e(ch, "i/(16*y)")?)?;
    let s1 = r.x1.scale(&s1_x1)?.add(&r.x2.scale(&s1_x2)?)?;

    let cubic = |sgn: i64| -> Result<Expr> {
        let lead = e(ch, "y^3")?
            .sub(&e(ch, "y^2")?.scale(&si.mul(&Constant::int(mode, 3))?)?)?;
        let tail = e(ch, "3*y")?.sub(&Expr::constant(ch, si.clone()))?;
        if sgn > 0 {
            lead.add(&tail)
        } else {
            lead.sub(&tail)
        }
    };
    let s2 = r
        .x1
        .scale(
            &ex_iz(ch, 1, 2, 3 * s, 2)?
                .mul(&cubic(1)?)?
                .mul(&e(ch, "3/(16*y)")?)?,
        )?
        .add(
            &r.x2.scale(
                &ex_iz(ch, 1, 2, -3 * s, 2)?
                    .mul(&cubic(-1)?)?
                    .mul(&e(ch, "3*i/(16*y)")?)?,
            )?,
        )?;

    let s3 = r
        .x1
        .scale(
            &ex_iz(ch, -1, 1, 0, 1)?
                .mul(&e(ch, "8*y^2*(y^2 + 1)*p^2 + 4*y*(3*y^2 + 1)*p + 5*y^2 + 1")?)?
                .mul(&e(ch, "2/(3*y^2)")?)?,
        )?
        .add(
            &r.x2.scale(
                &ex_iz(ch, -1, 1, -3 * s, 1)?
                    .mul(&e(ch, "8*y^2*(y^2 - 1)*p^2 + 4*y*(3*y^2 - 1)*p + 5*y^2 - 1")?)?
                    .mul(&e(ch, "2*i/(3*y^2)")?)?,
            )?,
        )?
        .add(&x3.scale(&ex_iz(ch, -1, 1, 0, 1)?.mul(&e(ch, "4*(2*y*p + 1)^2/(3*y)")?)?)?)?;

    Ok(NinePrinted { s: [s1, s2, s3] })
}
