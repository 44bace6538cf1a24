//! The angular parametrisation of the su(2) coframe: trigonometric
//! coefficients are encoded through complex exponentials of half-angles.

use std::sync::Arc;

use crate::chart::Chart;
use crate::constant::{ConstMode, Constant};
use crate::error::Result;
use crate::exterior::{CoordMap, DiffForm, MapComponent, VectorField};
use crate::expr::Expr;
use crate::lattice::ExpForm;
use crate::parse::parse_expr;

fn e(ch: &Arc<Chart>, s: &str) -> Result<Expr> {
    parse_expr(s, ch)
}

pub fn angle_chart(mode: &Arc<ConstMode>) -> Arc<Chart> {
    Chart::new("angles", &["th", "ph", "ps", "x", "q"], mode)
}

/// exp(i (k/d) v) on the angle chart.
fn eang(ch: &Arc<Chart>, entries: &[(&str, i64, i64)]) -> Result<Expr> {
    let mode = &ch.mode;
    let i = Constant::i(mode);
    let mut v = vec![Constant::zero(mode); ch.dim()];
    for (name, k, d) in entries {
        let idx = ch.index_of(name)?;
        v[idx] = v[idx].add(&i.mul(&Constant::ratio(mode, *k, *d))?)?;
    }
    Expr::exp_form(ch, ExpForm(v))
}

/// sin of (k/d) v.
pub fn sin_of(ch: &Arc<Chart>, var: &str, k: i64, d: i64) -> Result<Expr> {
    let mode = &ch.mode;
    let plus = eang(ch, &[(var, k, d)])?;
    let minus = eang(ch, &[(var, -k, d)])?;
    plus.sub(&minus)?
        .scale(&Constant::i(mode).mul(&Constant::int(mode, 2))?.inv()?)
}

/// cos of (k/d) v.
pub fn cos_of(ch: &Arc<Chart>, var: &str, k: i64, d: i64) -> Result<Expr> {
    let mode = &ch.mode;
    let plus = eang(ch, &[(var, k, d)])?;
    let minus = eang(ch, &[(var, -k, d)])?;
    plus.add(&minus)?.scale(&Constant::ratio(mode, 1, 2))
}

pub struct AngleModel {
    pub chart: Arc<Chart>,
    /// the substitution into the rolling chart, with logarithmic inverse
    pub to_roll: CoordMap,
    /// printed images of the su(2) coframe
    pub sigma_printed: [DiffForm; 3],
    /// printed dual fields
    pub e_printed: [VectorField; 3],
}

/// The substitution y = i e^{-i ps}, z = -i(th - ps),
/// p = -(1/2)(ph e^{-i th} - i) e^{i ps}, with x and q untouched.
pub fn angle_model(ch: &Arc<Chart>, roll: &Arc<Chart>) -> Result<AngleModel> {
    let mode = &ch.mode;
    let i = Constant::i(mode);
    let y_comp = eang(ch, &[("ps", -1, 1)])?.scale(&i)?;
    let z_comp = e(ch, "th")?
        .sub(&e(ch, "ps")?)?
        .scale(&i.neg())?;
    let p_comp = e(ch, "ph")?
        .mul(&eang(ch, &[("th", -1, 1), ("ps", 1, 1)])?)?
        .sub(&eang(ch, &[("ps", 1, 1)])?.scale(&i)?)?
        .scale(&Constant::ratio(mode, -1, 2))?;
    let fwd = CoordMap::new_plain(
        "angles_to_roll",
        ch,
        roll,
        vec![
            e(ch, "x")?,
            y_comp,
            z_comp,
            p_comp,
            e(ch, "q")?,
        ],
    )?;
    // inverse: ps = i log(-i y), th = i z + i log(-i y),
    // ph = -(1 + 2 p y) e^{-z} / y, x = x, q = q
    let rm = &roll.mode;
    let ri = Constant::i(rm);
    let log_arg = parse_expr("y", roll)?.scale(&ri.neg())?;
    let th_comp = MapComponent::with_logs(
        parse_expr("z", roll)?.scale(&ri)?,
        vec![(ri.clone(), log_arg.clone())],
    );
    let ps_comp = MapComponent::with_logs(Expr::zero(roll), vec![(ri.clone(), log_arg)]);
    let emz = super::rolling::exp_of(roll, &[("z", Constant::int(rm, -1))])?;
    let ph_comp = MapComponent::plain(
        parse_expr("(1 + 2*p*y)/y", roll)?.mul(&emz)?.neg(),
    );
    let inv = CoordMap::new(
        "roll_to_angles",
        roll,
        ch,
        vec![
            th_comp,
            ph_comp,
            ps_comp,
            MapComponent::plain(parse_expr("x", roll)?),
            MapComponent::plain(parse_expr("q", roll)?),
        ],
    )?;
    let to_roll = fwd.with_inverse(inv)?;

    // printed images: sigma1 = sin ps dth - cos ps sin th dph - i cos ps cos th dph, etc.
    let d = |v: &str| DiffForm::dvar_named(ch, v);
    let sinth = sin_of(ch, "th", 1, 1)?;
    let costh = cos_of(ch, "th", 1, 1)?;
    let sinps = sin_of(ch, "ps", 1, 1)?;
    let cosps = cos_of(ch, "ps", 1, 1)?;
    let ie = Expr::i(ch);
    let s1 = d("th")?.scale(&sinps)?.sub(
        &d("ph")?.scale(
            &cosps
                .mul(&sinth)?
                .add(&ie.mul(&cosps)?.mul(&costh)?)?,
        )?,
    )?;
    let s2 = d("th")?.scale(&cosps)?.add(
        &d("ph")?.scale(
            &sinps
                .mul(&sinth)?
                .add(&ie.mul(&sinps)?.mul(&costh)?)?,
        )?,
    )?;
    let s3 = d("ps")?
        .neg()
        .sub(&d("ph")?.scale(&costh)?)?
        .add(&d("ph")?.scale(&ie.mul(&sinth)?)?)?;

    // printed duals: E1 = sin ps dth - cos ps (sin th dph + i(dps - cos th dph)),
    // E2 the sin/cos swap, E3 = -dps
    let pv = |v: &str| VectorField::coordinate_named(ch, v);
    let inner = pv("ph")?
        .scale(&sinth)?
        .add(
            &pv("ps")?
                .sub(&pv("ph")?.scale(&costh)?)?
                .scale(&ie)?,
        )?;
    let e1 = pv("th")?.scale(&sinps)?.sub(&inner.scale(&cosps)?)?;
    let e2 = pv("th")?.scale(&cosps)?.add(&inner.scale(&sinps)?)?;
    let e3 = pv("ps")?.neg();

    Ok(AngleModel {
        chart: ch.clone(),
        to_roll,
        sigma_printed: [s1, s2, s3],
        e_printed: [e1, e2, e3],
    })
}

/// Printed bracket-generating set on the angle chart for alpha = i/3, in
/// terms of the transported spanning fields.
pub struct AnglePrintedNinth {
    pub s: [VectorField; 3],
}

pub fn angle_printed_ninth(
    ch: &Arc<Chart>,
    x1: &VectorField,
    x2: &VectorField,
    e1: &VectorField,
    e3: &VectorField,
) -> Result<AnglePrintedNinth> {
    let mode = &ch.mode;
    let i = Constant::i(mode);
    // S2+ = (3/2) e^{-i th/2 + i x/6} cos(ps/2) X1 + 3 e^{-i th/2 - i x/6} sin(ps/2) X2
    let s2 = x1
        .scale(
            &eang(ch, &[("th", -1, 2), ("x", 1, 6)])?
                .mul(&cos_of(ch, "ps", 1, 2)?)?
                .scale(&Constant::ratio(mode, 3, 2))?,
        )?
        .add(
            &x2.scale(
                &eang(ch, &[("th", -1, 2), ("x", -1, 6)])?
                    .mul(&sin_of(ch, "ps", 1, 2)?)?
                    .scale(&Constant::int(mode, 3))?,
            )?,
        )?;
    // S1+ = (3/4) e^{i th/2 + i x/6} sin(ps/2) X1
    //       - (3/2) e^{i th/2 - i x/6} cos(ps/2) X2 + (ph/2) S2+
    let s1 = x1
        .scale(
            &eang(ch, &[("th", 1, 2), ("x", 1, 6)])?
                .mul(&sin_of(ch, "ps", 1, 2)?)?
                .scale(&Constant::ratio(mode, 3, 4))?,
        )?
        .sub(
            &x2.scale(
                &eang(ch, &[("th", 1, 2), ("x", -1, 6)])?
                    .mul(&cos_of(ch, "ps", 1, 2)?)?
                    .scale(&Constant::ratio(mode, 3, 2))?,
            )?,
        )?
        .add(&s2.scale(&e(ch, "ph/2")?)?)?;
    // S3+ = -4 i q X1 + (2/3) i (q^2 - 9 e^{-2ix/3}) X2 - (2/9) q^2 e^{ix/3}(5E3 + 3iE1)
    let comb = e3
        .scale_const(&Constant::int(mode, 5))?
        .add(&e1.scale_const(&i.mul(&Constant::int(mode, 3))?)?)?;
    let s3 = x1
        .scale(&e(ch, "q")?)?
        .scale_const(&i.mul(&Constant::int(mode, -4))?)?
        .add(
            &x2.scale(
                &e(ch, "q^2")?
                    .sub(&eang(ch, &[("x", -2, 3)])?.scale(&Constant::int(mode, 9))?)?,
            )?
            .scale_const(&i.mul(&Constant::ratio(mode, 2, 3))?)?,
        )?
        .sub(
            &comb
                .scale(&e(ch, "q^2")?.mul(&eang(ch, &[("x", 1, 3)])?)?)?
                .scale_const(&Constant::ratio(mode, 2, 9))?,
        )?;
    Ok(AnglePrintedNinth { s: [s1, s2, s3] })
}

/// Printed re-expression for alpha = 3i through the rotated fields
/// V1 = sin ps X1 - cos ps e^{-3ix} X2, V2 = cos ps X1 + sin ps e^{-3ix} X2.
pub struct AnglePrintedNine {
    pub v: [VectorField; 2],
    pub s: [VectorField; 3],
}

/// The printed leading coefficient of the first field is -1/8; the value
/// that certifies is -1/2.
pub fn angle_printed_nine(
    ch: &Arc<Chart>,
    x1: &VectorField,
    x2: &VectorField,
    e1: &VectorField,
    e2: &VectorField,
    e3: &VectorField,
    s1_prefactor: (i64, i64),
) -> Result<AnglePrintedNine> {
    let mode = &ch.mode;
    let i = Constant::i(mode);
    let sinps = sin_of(ch, "ps", 1, 1)?;
    let cosps = cos_of(ch, "ps", 1, 1)?;
    let em3 = eang(ch, &[("x", -3, 1)])?;
    let v1 = x1
        .scale(&sinps)?
        .sub(&x2.scale(&cosps.mul(&em3)?)?)?;
    let v2 = x1
        .scale(&cosps)?
        .add(&x2.scale(&sinps.mul(&em3)?)?)?;
    // S2+ = (3/2) e^{i(3x - th)/2} (sin(ps/2) V1 + (1/2) cos(ps/2) V2)
    let s2 = v1
        .scale(&sin_of(ch, "ps", 1, 2)?)?
        .add(&v2.scale(&cos_of(ch, "ps", 1, 2)?.scale(&Constant::ratio(mode, 1, 2))?)?)?
        .scale(
            &eang(ch, &[("x", 3, 2), ("th", -1, 2)])?
                .scale(&Constant::ratio(mode, 3, 2))?,
        )?;
    // S1+ = pre * e^{-i(3x + th)/2} (cos(ps/2) V1 - (1/2) sin(ps/2) V2) + q S2+
    let s1 = v1
        .scale(&cos_of(ch, "ps", 1, 2)?)?
        .sub(&v2.scale(&sin_of(ch, "ps", 1, 2)?.scale(&Constant::ratio(mode, 1, 2))?)?)?
        .scale(
            &eang(ch, &[("x", -3, 2), ("th", -1, 2)])?
                .scale(&Constant::ratio(mode, s1_prefactor.0, s1_prefactor.1))?,
        )?
        .add(&s2.scale(&e(ch, "q")?)?)?;
    // S3+ = -(4/3) i e^{i th} V1 - (8/3) i ph V2
    //       + (4/3) i e^{-i th} ph^2 (2 V1 - cos ps E1 + sin ps E2 + 5 i E3)
    let tail = v1
        .scale_const(&Constant::int(mode, 2))?
        .sub(&e1.scale(&cosps)?)?
        .add(&e2.scale(&sinps)?)?
        .add(&e3.scale_const(&i.mul(&Constant::int(mode, 5))?)?)?;
    let s3 = v1
        .scale(&eang(ch, &[("th", 1, 1)])?)?
        .scale_const(&i.mul(&Constant::ratio(mode, -4, 3))?)?
        .sub(&v2.scale(&e(ch, "ph")?)?.scale_const(&i.mul(&Constant::ratio(mode, 8, 3))?)?)?
        .add(
            &tail
                .scale(&eang(ch, &[("th", -1, 1)])?.mul(&e(ch, "ph^2")?)?)?
                .scale_const(&i.mul(&Constant::ratio(mode, 4, 3))?)?,
        )?;
    Ok(AnglePrintedNine {
        v: [v1, v2],
        s: [s1, s2, s3],
    })
}

/// The conjugate parametrisation: sigma-bar forms on the rolling chart and
/// their printed images under y = -i e^{i ps}, z = i(th - ps),
/// p = -(1/2)(ph e^{i th} + i) e^{-i ps}.
pub struct ConjugateModel {
    pub to_roll: CoordMap,
    pub sigma_bar_printed: [DiffForm; 3],
}

pub fn conjugate_model(ch: &Arc<Chart>, roll: &Arc<Chart>) -> Result<ConjugateModel> {
    let mode = &ch.mode;
    let i = Constant::i(mode);
    let y_comp = eang(ch, &[("ps", 1, 1)])?.scale(&i.neg())?;
    let z_comp = e(ch, "th")?.sub(&e(ch, "ps")?)?.scale(&i)?;
    let p_comp = e(ch, "ph")?
        .mul(&eang(ch, &[("th", 1, 1), ("ps", -1, 1)])?)?
        .add(&eang(ch, &[("ps", -1, 1)])?.scale(&i)?)?
        .scale(&Constant::ratio(mode, -1, 2))?;
    let to_roll = CoordMap::new_plain(
        "angles_to_roll_conj",
        ch,
        roll,
        vec![e(ch, "x")?, y_comp, z_comp, p_comp, e(ch, "q")?],
    )?;
    // sigma1-bar = sin ps dth + cos ps i e^{i th} dph,
    // sigma2-bar = cos ps dth - sin ps i e^{i th} dph,
    // sigma3-bar = -dps - e^{i th} dph
    let d = |v: &str| DiffForm::dvar_named(ch, v);
    let sinps = sin_of(ch, "ps", 1, 1)?;
    let cosps = cos_of(ch, "ps", 1, 1)?;
    let eith = eang(ch, &[("th", 1, 1)])?;
    let ie = Expr::i(ch);
    let s1 = d("th")?
        .scale(&sinps)?
        .add(&d("ph")?.scale(&cosps.mul(&ie)?.mul(&eith)?)?)?;
    let s2 = d("th")?
        .scale(&cosps)?
        .sub(&d("ph")?.scale(&sinps.mul(&ie)?.mul(&eith)?)?)?;
    let s3 = d("ps")?.neg().sub(&d("ph")?.scale(&eith)?)?;
    Ok(ConjugateModel {
        to_roll,
        sigma_bar_printed: [s1, s2, s3],
    })
}
