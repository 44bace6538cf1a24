//! Monge presentations at the two symmetric parameter values: the passage
//! into the flat coframe, the exchange maps between the presentations, and
//! the self-map.

use std::sync::Arc;

use crate::chart::Chart;
use crate::constant::{ConstMode, Constant};
use crate::error::Result;
use crate::exterior::{CoordMap, DiffForm, MapComponent};
use crate::expr::Expr;
use crate::parse::parse_expr;

use super::flat::APresentation;

fn e(ch: &Arc<Chart>, s: &str) -> Result<Expr> {
    parse_expr(s, ch)
}

pub struct MongeNinth {
    /// chart (bx, by, bz, bp, bq) with root-bearing bx
    pub chart: Arc<Chart>,
    /// the annihilating forms with the specialized F
    pub omega: [DiffForm; 3],
    /// map into the a-chart (no inverse; used for pullbacks)
    pub to_a: CoordMap,
    /// printed span coefficients of theta_i over omega_j
    pub printed_span: [[Expr; 3]; 3],
}

/// The Monge presentation whose F has the -1/8 leading coefficient, with
/// the printed passage into the flat coframe.
pub fn monge_ninth(mode: &Arc<ConstMode>, a: &APresentation) -> Result<MongeNinth> {
    let ch = Chart::with_roots(
        "monge_ninth",
        &["bx", "by", "bz", "bp", "bq"],
        &["bx", "bq"],
        mode,
    );
    let f = e(&ch, "-1/8*bq*bz^2 + 9/8*bz/bx - 9/32*1/(bx^2*bq)")?;
    let d = |v: &str| DiffForm::dvar_named(&ch, v);
    let omega = [
        d("by")?.add(&d("bx")?.scale(&e(&ch, "-bp")?)?)?,
        d("bp")?.add(&d("bx")?.scale(&e(&ch, "-bq")?)?)?,
        d("bz")?.add(&d("bx")?.scale(&f.neg())?)?,
    ];

    let to_a = CoordMap::new_plain(
        "monge_ninth_to_a",
        &ch,
        &a.chart,
        vec![
            e(
                &ch,
                "-sqrt(bx)/(6*(2*bq*bx*bz - 1)^3)*(-9*(2*bq*bx*bz + 3)*(2*bq*bx*bz - 1)^2*by \
                 + 16*bq*bx*bz*((2*bq*bx*bz + 3)*(2*bq*bx*bz - 3))*bx*bp - 512*bq^3*bx^4*bz^2)",
            )?,
            e(
                &ch,
                "-sqrt(bx)/(6*(2*bq*bx*bz - 1)^3)*(2*bx*(2*bq*bx*bz + 3)*(20*bq^2*bx^2*bz^2 - 12*bq*bx*bz + 9)*bp^2 \
                 - 32*bq*bx^2*(2*bq*bx*bz - 3)*(2*bq*bx*bz + 3)*bp \
                 - 9*(2*bq*bx*bz - 1)^2*(2*bp*bq*bx*bz + 3*bp + 8*bq*bx)*by \
                 - 64*bq^2*bx^3*(10*bq*bx*bz - 9))",
            )?,
            e(
                &ch,
                "3/(2*(2*bq*bx*bz - 1))*((2*bq*bx*bz - 1)*(by - bp*bx) + 8*bq*bx^2)",
            )?,
            e(&ch, "-sqrt(bx)/(2*bq*bx*bz - 1)*(2*bq*bx*bz + 3)")?,
            e(
                &ch,
                "-sqrt(bx)/(2*bq*bx*bz - 1)*((2*bq*bx*bz + 3)*bp + 8*bq*bx)",
            )?,
            Expr::one(&ch),
        ],
    )?;

    let printed_span = [
        [
            e(&ch, "3/2*sqrt(bx)/(2*bq*bx*bz - 1)*(2*bq*bx*bz + 3)")?,
            e(
                &ch,
                "-8/3*bx^2*sqrt(bx)*bq*bz*(2*bq*bx*bz - 3)*(2*bq*bx*bz + 3)/(2*bq*bx*bz - 1)^3",
            )?,
            e(&ch, "-256/3*bx^4*sqrt(bx)*bq^3*bz/(2*bq*bx*bz - 1)^3")?,
        ],
        [
            e(
                &ch,
                "3/2*sqrt(bx)/(2*bq*bx*bz - 1)*(2*bp*bq*bx*bz + 3*bp + 8*bq*bx)",
            )?,
            e(
                &ch,
                "-8/3*bx^2*sqrt(bx)*bq*(2*bq*bx*bz - 3)*(2*bq*bx*bz + 3)*(bp*bz + 1)/(2*bq*bx*bz - 1)^3",
            )?,
            e(&ch, "-256/3*bx^4*sqrt(bx)*bq^3*(bp*bz + 1)/(2*bq*bx*bz - 1)^3")?,
        ],
        [
            e(&ch, "3/2")?,
            e(
                &ch,
                "-(4*bq^2*bx^2*bz^2 - 12*bq*bx*bz - 3)*bx/(2*bq*bx*bz - 1)^2",
            )?,
            e(&ch, "-32*bq^2*bx^3/(2*bq*bx*bz - 1)^2")?,
        ],
    ];

    Ok(MongeNinth {
        chart: ch,
        omega,
        to_a,
        printed_span,
    })
}

pub struct MongeNine {
    pub chart: Arc<Chart>,
    pub omega: [DiffForm; 3],
}

/// The Monge presentation whose F has the 9/8 leading coefficient.
pub fn monge_nine(mode: &Arc<ConstMode>) -> Result<MongeNine> {
    let ch = Chart::new("monge_nine", &["x", "y", "z", "p", "q"], mode);
    let f = e(&ch, "9/8*q*z^2 - 1/8*z/x + 1/32*1/(q*x^2)")?;
    let d = |v: &str| DiffForm::dvar_named(&ch, v);
    let omega = [
        d("y")?.add(&d("x")?.scale(&e(&ch, "-p")?)?)?,
        d("p")?.add(&d("x")?.scale(&e(&ch, "-q")?)?)?,
        d("z")?.add(&d("x")?.scale(&f.neg())?)?,
    ];
    Ok(MongeNine { chart: ch, omega })
}

/// A plain-coordinate copy of the ninth-branch Monge chart, for the
/// exchange maps (no formal roots needed there).
pub struct MongeNinthPlain {
    pub chart: Arc<Chart>,
    pub omega: [DiffForm; 3],
}

pub fn monge_ninth_plain(mode: &Arc<ConstMode>) -> Result<MongeNinthPlain> {
    let ch = Chart::new("monge_ninth_plain", &["x", "y", "z", "p", "q"], mode);
    let f = e(&ch, "-1/8*q*z^2 + 9/8*z/x - 9/32*1/(x^2*q)")?;
    let d = |v: &str| DiffForm::dvar_named(&ch, v);
    let omega = [
        d("y")?.add(&d("x")?.scale(&e(&ch, "-p")?)?)?,
        d("p")?.add(&d("x")?.scale(&e(&ch, "-q")?)?)?,
        d("z")?.add(&d("x")?.scale(&f.neg())?)?,
    ];
    Ok(MongeNinthPlain { chart: ch, omega })
}

/// First printed exchange map between the two Monge presentations.
pub fn exchange_map_first(
    src: &MongeNinthPlain,
    dst: &MongeNine,
) -> Result<CoordMap> {
    let ch = &src.chart;
    CoordMap::new_plain(
        "exchange_first",
        ch,
        &dst.chart,
        vec![
            e(ch, "1/x")?,
            e(ch, "y/x")?,
            e(ch, "z/(9*x)")?,
            e(ch, "y - p*x")?,
            e(ch, "q*x^3")?,
        ],
    )
}

/// Second printed exchange map. The final component's printed exponent on
/// (2qxz - 9) is 2; the corrected variant uses 3, which the certification
/// and the self-map composition both confirm.
pub fn exchange_map_second(
    src: &MongeNinthPlain,
    dst: &MongeNine,
    corrected_exponent: bool,
) -> Result<CoordMap> {
    let ch = &src.chart;
    let q_comp = if corrected_exponent {
        e(ch, "(2*q*x*z - 9)^3*x^2/(18*(2*q*x*z - 1)^3*z)")?
    } else {
        e(ch, "(2*q*x*z - 9)^2*x^2/(18*(2*q*x*z - 1)^3*z)")?
    };
    CoordMap::new_plain(
        "exchange_second",
        ch,
        &dst.chart,
        vec![
            e(ch, "9*(2*q*x*z - 1)^2/((2*q*x*z - 9)^2*x)")?,
            e(
                ch,
                "(9*(2*q*x*z - 1)^2*y - 8*x*p*(2*q*x*z - 3)*(2*q*x*z + 3) + 256*q^2*x^3*z)/((2*q*x*z - 9)^2*x)",
            )?,
            e(ch, "(2*q*x*z - 1)/(2*x^2*q*(2*q*x*z - 9))")?,
            e(ch, "y - p*x + 16*x^2*q/(2*q*x*z - 1)")?,
            q_comp,
        ],
    )
}

/// The printed self-map of the ninth-branch presentation.
pub fn self_map(src: &MongeNinthPlain) -> Result<CoordMap> {
    let ch = &src.chart;
    CoordMap::new_plain(
        "self_map",
        ch,
        ch,
        vec![
            e(ch, "(2*q*x*z - 9)^2*x/(9*(2*q*x*z - 1)^2)")?,
            e(
                ch,
                "y - 8*x*(2*q*x*z - 3)*(2*q*x*z + 3)/(9*(2*q*x*z - 1)^2)*p + 256*q^2*x^3*z/(9*(2*q*x*z - 1)^2)",
            )?,
            e(ch, "(2*q*x*z - 9)/(2*(2*q*x*z - 1)*q*x)")?,
            e(ch, "p - 16*x*q/(2*q*x*z - 9)")?,
            e(ch, "81*(2*q*x*z - 1)^3/(2*z*x*(2*q*x*z - 9)^3)")?,
        ],
    )
}

/// The parameter-exchange maps on the rolling model, carrying the rolling
/// distribution from one symmetric parameter to the other. `alpha_src` and
/// `alpha_dst` are the literal parameter values of the two sides.
pub fn swap_map(
    which: usize,
    src: &Arc<Chart>,
    dst: &Arc<Chart>,
    alpha_src: &Constant,
    alpha_dst: &Constant,
) -> Result<CoordMap> {
    let mode = &src.mode;
    let a = alpha_src;
    let ap = alpha_dst;
    let ez = super::rolling::exp_of(src, &[("z", Constant::one(mode))])?;
    let emz = super::rolling::exp_of(src, &[("z", Constant::int(mode, -1))])?;
    let eax = super::rolling::exp_of(src, &[("x", a.clone())])?;
    let ap_inv = ap.inv()?;
    match which {
        1 => {
            // x' = (1/a') log((2/9) a' e^z y), y' = 1/(a' a y),
            // z' = log((a'/18) e^{a x} y),
            // p' = -(a'/(18 a)) y (a q e^{a x} - 1),
            // q' = -(1/(2y))(2yp + 1) e^{-z}
            let x_comp = MapComponent::with_logs(
                Expr::zero(src),
                vec![(
                    ap_inv.clone(),
                    ez.mul(&e(src, "y")?)?
                        .scale(&ap.mul(&Constant::ratio(mode, 2, 9))?)?,
                )],
            );
            let y_comp = MapComponent::plain(
                Expr::one(src).div(&e(src, "y")?.scale(&ap.mul(a)?)?)?,
            );
            let z_comp = MapComponent::with_logs(
                Expr::zero(src),
                vec![(
                    Constant::one(mode),
                    eax.mul(&e(src, "y")?)?
                        .scale(&ap.mul(&Constant::ratio(mode, 1, 18))?)?,
                )],
            );
            let p_comp = MapComponent::plain(
                e(src, "y")?
                    .mul(&eax.mul(&e(src, "q")?)?.scale(a)?.sub(&Expr::one(src))?)?
                    .scale(&ap.div(a)?.mul(&Constant::ratio(mode, -1, 18))?)?,
            );
            let q_comp = MapComponent::plain(
                emz.mul(&e(src, "(2*y*p + 1)/(2*y)")?)?.neg(),
            );
            CoordMap::new("swap_first", src, dst, vec![x_comp, y_comp, z_comp, p_comp, q_comp])
        }
        2 => {
            // x' = (1/a') log(-(2/9) a' e^z y), y' = 9 a y / a',
            // z' = log((a'/18) e^{a x}/y),
            // p' = -(a'/(18 a y))(a q e^{a x} + 1),
            // q' = -(1/(2y))(2yp + 1) e^{-z}
            let x_comp = MapComponent::with_logs(
                Expr::zero(src),
                vec![(
                    ap_inv,
                    ez.mul(&e(src, "y")?)?
                        .scale(&ap.mul(&Constant::ratio(mode, -2, 9))?)?,
                )],
            );
            let y_comp = MapComponent::plain(
                e(src, "y")?.scale(&a.mul(&Constant::int(mode, 9))?.div(ap)?)?,
            );
            let z_comp = MapComponent::with_logs(
                Expr::zero(src),
                vec![(
                    Constant::one(mode),
                    eax.div(&e(src, "y")?)?
                        .scale(&ap.mul(&Constant::ratio(mode, 1, 18))?)?,
                )],
            );
            let p_comp = MapComponent::plain(
                eax.mul(&e(src, "q")?)?
                    .scale(a)?
                    .add(&Expr::one(src))?
                    .div(&e(src, "y")?)?
                    .scale(&ap.div(a)?.mul(&Constant::ratio(mode, -1, 18))?)?,
            );
            let q_comp = MapComponent::plain(
                emz.mul(&e(src, "(2*y*p + 1)/(2*y)")?)?.neg(),
            );
            CoordMap::new("swap_second", src, dst, vec![x_comp, y_comp, z_comp, p_comp, q_comp])
        }
        _ => unreachable!("two exchange maps"),
    }
}
