//! The flat model in both coordinate presentations, its contact forms, the
//! seed vector fields, and the auxiliary presentations used by the
//! structure checks.

use std::sync::Arc;

use crate::chart::Chart;
use crate::constant::ConstMode;
use crate::error::Result;
use crate::exterior::{d_scalar, CoordMap, DiffForm, VectorField};
use crate::expr::Expr;
use crate::parse::parse_expr;

pub struct CPresentation {
    pub chart: Arc<Chart>,
    /// contact forms Theta1, Theta2, Theta3
    pub theta: [DiffForm; 3],
    pub z: [VectorField; 3],
    pub s: [VectorField; 3],
    /// the alternative contact coordinates r1..r5 as scalar functions
    pub r_funcs: [Expr; 5],
}

pub struct APresentation {
    pub chart: Arc<Chart>,
    /// theta1..theta5
    pub theta: [DiffForm; 5],
    /// weighted rescaling (k^3, k^3, k^2, k, k) on the same chart
    pub rescale: CoordMap,
    /// map to the c-presentation, with verified inverse
    pub to_c: CoordMap,
}

pub struct TildePresentation {
    pub chart: Arc<Chart>,
    pub theta: [DiffForm; 3],
    /// map from the c-chart, with verified inverse
    pub from_c: CoordMap,
}

fn e(ch: &Arc<Chart>, s: &str) -> Result<Expr> {
    parse_expr(s, ch)
}

/// Contact forms and generating fields in the c-coordinates.
pub fn c_presentation(mode: &Arc<ConstMode>) -> Result<CPresentation> {
    let ch = Chart::with_constants(
        "flat_c",
        &["c1", "c2", "c3", "c4", "c5", "k"],
        &["k"],
        mode,
    );
    let d = |v: &str| DiffForm::dvar_named(&ch, v);
    let theta1 = d("c1")?
        .add(&d("c3")?.scale(&e(&ch, "-2*c4")?)?)?
        .add(&d("c4")?.scale(&e(&ch, "-4*c3")?)?)?;
    let theta2 = d("c2")?
        .add(&d("c3")?.scale(&e(&ch, "2*c5")?)?)?
        .add(&d("c5")?.scale(&e(&ch, "4*c3")?)?)?;
    let theta3 = d("c3")?
        .add(&d("c4")?.scale(&e(&ch, "c5")?)?)?
        .add(&d("c5")?.scale(&e(&ch, "-c4")?)?)?;
    let pv = |v: &str| VectorField::coordinate_named(&ch, v);
    let z1 = pv("c3")?
        .add(&pv("c2")?.scale(&e(&ch, "2*c5")?)?)?
        .add(&pv("c1")?.scale(&e(&ch, "-2*c4")?)?)?;
    let z2 = pv("c4")?
        .add(&pv("c1")?.scale(&e(&ch, "4*c3")?)?)?
        .add(&pv("c3")?.scale(&e(&ch, "-2*c5")?)?)?;
    let z3 = pv("c5")?
        .add(&pv("c3")?.scale(&e(&ch, "2*c4")?)?)?
        .add(&pv("c2")?.scale(&e(&ch, "-4*c3")?)?)?;
    let s1 = z2.add(&z1.scale(&e(&ch, "c5")?)?)?;
    let s2 = z3.sub(&z1.scale(&e(&ch, "c4")?)?)?;
    let s3 = z2
        .scale(&e(&ch, "-c1")?)?
        .add(&z3.scale(&e(&ch, "c2")?)?)?
        .sub(&z1.scale(&e(&ch, "c1*c5 + c2*c4 + c3^2")?)?)?;
    let r_funcs = [
        e(&ch, "c5")?,
        e(&ch, "c4")?,
        e(&ch, "c3")?,
        e(&ch, "-1/2*(c2 + 3*c3*c5)")?,
        e(&ch, "1/2*(c1 - 3*c3*c4)")?,
    ];
    Ok(CPresentation {
        chart: ch,
        theta: [theta1, theta2, theta3],
        z: [z1, z2, z3],
        s: [s1, s2, s3],
        r_funcs,
    })
}

/// Orientation of the middle bracket in the alternative contact forms. The
/// printed orientation fails verification; the flipped one certifies, and
/// the runner reports the discrepancy.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum EngelVariant {
    Printed,
    FlippedSecond,
}

/// The alternative contact 1-forms built from the r-functions:
/// dr3 + r1 dr2 - r2 dr1, dr4 +- (r3 dr1 - r1 dr3)/2, dr5 + (r2 dr3 - r3 dr2)/2.
pub fn engel_forms(c: &CPresentation, variant: EngelVariant) -> Result<[DiffForm; 3]> {
    let r = &c.r_funcs;
    let dr: Result<Vec<DiffForm>> = r.iter().map(d_scalar).collect();
    let dr = dr?;
    let half = Expr::ratio(&c.chart, 1, 2);
    let f1 = dr[2]
        .add(&dr[1].scale(&r[0])?)?
        .sub(&dr[0].scale(&r[1])?)?;
    let bracket2 = dr[0].scale(&r[2])?.sub(&dr[2].scale(&r[0])?)?;
    let bracket2 = match variant {
        EngelVariant::Printed => bracket2,
        EngelVariant::FlippedSecond => bracket2.neg(),
    };
    let f2 = dr[3].add(&bracket2.scale(&half)?)?;
    let f3 = dr[4].add(
        &dr[2]
            .scale(&r[1])?
            .sub(&dr[1].scale(&r[2])?)?
            .scale(&half)?,
    )?;
    Ok([f1, f2, f3])
}

/// The coframe presentation on the a-chart.
pub fn a_presentation(mode: &Arc<ConstMode>, c: &CPresentation) -> Result<APresentation> {
    let ch = Chart::with_constants(
        "flat_a",
        &["a1", "a2", "a3", "a4", "a5", "k"],
        &["k"],
        mode,
    );
    let d = |v: &str| DiffForm::dvar_named(&ch, v);
    let theta1 = d("a1")?.add(&d("a4")?.scale(&e(&ch, "a3 + 1/2*a4*a5")?)?)?;
    let theta2 = d("a2")?.add(&d("a5")?.scale(&e(&ch, "a3 - 1/2*a4*a5")?)?)?;
    let theta3 = d("a3")?
        .add(&d("a5")?.scale(&e(&ch, "1/2*a4")?)?)?
        .add(&d("a4")?.scale(&e(&ch, "-1/2*a5")?)?)?;
    let theta4 = d("a4")?;
    let theta5 = d("a5")?;

    let rescale = CoordMap::new_plain(
        "rescale",
        &ch,
        &ch,
        vec![
            e(&ch, "k^3*a1")?,
            e(&ch, "k^3*a2")?,
            e(&ch, "k^2*a3")?,
            e(&ch, "k*a4")?,
            e(&ch, "k*a5")?,
            e(&ch, "k")?,
        ],
    )?;

    let to_c = CoordMap::new_plain(
        "flat_a_to_c",
        &ch,
        &c.chart,
        vec![
            e(&ch, "6*a1 - 2*a3*a4 + a4^2*a5")?,
            e(&ch, "6*a2 - 2*a3*a5 - a4*a5^2")?,
            e(&ch, "2*a3")?,
            e(&ch, "-a4")?,
            e(&ch, "a5")?,
            e(&ch, "k")?,
        ],
    )?
    .with_inverse(CoordMap::new_plain(
        "flat_c_to_a",
        &c.chart,
        &ch,
        vec![
            e(&c.chart, "1/6*(c1 - c3*c4 - c4^2*c5)")?,
            e(&c.chart, "1/6*(c2 + c3*c5 - c4*c5^2)")?,
            e(&c.chart, "1/2*c3")?,
            e(&c.chart, "-c4")?,
            e(&c.chart, "c5")?,
            e(&c.chart, "k")?,
        ],
    )?)?;

    Ok(APresentation {
        chart: ch,
        theta: [theta1, theta2, theta3, theta4, theta5],
        rescale,
        to_c,
    })
}

/// The transformed presentation whose contact forms carry the symmetry
/// statement, reached from the c-chart.
pub fn tilde_presentation(
    mode: &Arc<ConstMode>,
    c: &CPresentation,
) -> Result<TildePresentation> {
    let ch = Chart::with_constants(
        "flat_at",
        &["t1", "t2", "t3", "t4", "t5", "k"],
        &["k"],
        mode,
    );
    let d = |v: &str| DiffForm::dvar_named(&ch, v);
    let theta1 = d("t1")?.add(&d("t4")?.scale(&e(&ch, "t3 + 1/2*t4*t5")?)?)?;
    let theta2 = d("t2")?.add(&d("t5")?.scale(&e(&ch, "t3 - 1/2*t4*t5")?)?)?;
    let theta3 = d("t3")?
        .add(&d("t5")?.scale(&e(&ch, "1/2*t4")?)?)?
        .add(&d("t4")?.scale(&e(&ch, "-1/2*t5")?)?)?;

    // c -> tilde: through a = inverse contact map, then the involutive twist
    // (a1 + a3 a4, a2 + a3 a5, -a3, a4, a5)
    let from_c = CoordMap::new_plain(
        "flat_c_to_tilde",
        &c.chart,
        &ch,
        vec![
            e(&c.chart, "1/6*(c1 - 4*c3*c4 - c4^2*c5)")?,
            e(&c.chart, "1/6*(c2 + 4*c3*c5 - c4*c5^2)")?,
            e(&c.chart, "-1/2*c3")?,
            e(&c.chart, "-c4")?,
            e(&c.chart, "c5")?,
            e(&c.chart, "k")?,
        ],
    )?
    .with_inverse(CoordMap::new_plain(
        "flat_tilde_to_c",
        &ch,
        &c.chart,
        vec![
            e(&ch, "6*t1 + 8*t3*t4 + t4^2*t5")?,
            e(&ch, "6*t2 + 8*t3*t5 - t4*t5^2")?,
            e(&ch, "-2*t3")?,
            e(&ch, "-t4")?,
            e(&ch, "t5")?,
            e(&ch, "k")?,
        ],
    )?)?;

    Ok(TildePresentation {
        chart: ch,
        theta: [theta1, theta2, theta3],
        from_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::ConstMode;
    use crate::distgeo::{span_membership_forms, SpanResult};

    #[test]
    fn coframe_structure_equations() {
        let m = ConstMode::generic();
        let c = c_presentation(&m).unwrap();
        let a = a_presentation(&m, &c).unwrap();
        // d theta1 = theta3 ^ theta4, d theta2 = theta3 ^ theta5,
        // d theta3 = theta4 ^ theta5, d theta4 = d theta5 = 0
        let t = &a.theta;
        assert!(t[0].d().unwrap().sub(&t[2].wedge(&t[3]).unwrap()).unwrap().is_zero());
        assert!(t[1].d().unwrap().sub(&t[2].wedge(&t[4]).unwrap()).unwrap().is_zero());
        assert!(t[2].d().unwrap().sub(&t[3].wedge(&t[4]).unwrap()).unwrap().is_zero());
        assert!(t[3].d().unwrap().is_zero());
        assert!(t[4].d().unwrap().is_zero());
    }

    #[test]
    fn contact_span_change() {
        let m = ConstMode::generic();
        let c = c_presentation(&m).unwrap();
        let a = a_presentation(&m, &c).unwrap();
        // pull the c-chart contact forms back to the a-chart and solve
        // against theta1..theta3: coefficients (6,0,2a4), (0,6,2a5), (0,0,2)
        let basis = [a.theta[0].clone(), a.theta[1].clone(), a.theta[2].clone()];
        let pulled: Vec<DiffForm> = c
            .theta
            .iter()
            .map(|f| f.pullback(&a.to_c).unwrap())
            .collect();
        let expect = [
            ["6", "0", "2*a4"],
            ["0", "6", "2*a5"],
            ["0", "0", "2"],
        ];
        for (i, f) in pulled.iter().enumerate() {
            match span_membership_forms(f, &basis).unwrap() {
                SpanResult::InSpan { coefficients, .. } => {
                    for (j, want) in expect[i].iter().enumerate() {
                        assert_eq!(
                            coefficients[j],
                            e(&a.chart, want).unwrap(),
                            "coefficient ({},{})",
                            i,
                            j
                        );
                    }
                }
                SpanResult::NotInSpan { .. } => panic!("Theta{} not in span", i + 1),
            }
        }
    }

    #[test]
    fn engel_form_identities() {
        let m = ConstMode::generic();
        let c = c_presentation(&m).unwrap();
        let half = Expr::ratio(&c.chart, 1, 2);
        // the printed middle bracket fails; the flipped orientation certifies
        let printed = engel_forms(&c, EngelVariant::Printed).unwrap();
        assert!(!printed[1]
            .add(&c.theta[1].scale(&half).unwrap())
            .unwrap()
            .is_zero());
        let f = engel_forms(&c, EngelVariant::FlippedSecond).unwrap();
        // f1 = Theta3, f2 = -Theta2/2, f3 = Theta1/2
        assert!(f[0].sub(&c.theta[2]).unwrap().is_zero());
        assert!(f[1].add(&c.theta[1].scale(&half).unwrap()).unwrap().is_zero());
        assert!(f[2].sub(&c.theta[0].scale(&half).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn seeds_annihilated() {
        let m = ConstMode::generic();
        let c = c_presentation(&m).unwrap();
        for th in &c.theta {
            for s in &c.s[..2] {
                assert!(th.pair(s).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rescale_equivariance() {
        let m = ConstMode::generic();
        let c = c_presentation(&m).unwrap();
        let a = a_presentation(&m, &c).unwrap();
        let weights = [3i32, 3, 2];
        for (i, &w) in weights.iter().enumerate() {
            let pulled = a.theta[i].pullback(&a.rescale).unwrap();
            let k = Expr::var_named(&a.chart, "k").unwrap().pow(w).unwrap();
            let scaled = a.theta[i].scale(&k).unwrap();
            assert!(
                pulled.sub(&scaled).unwrap().is_zero(),
                "theta{} not k^{}-equivariant",
                i + 1,
                w
            );
        }
    }

    #[test]
    fn symmetry_of_tilde_presentation() {
        let m = ConstMode::generic();
        let c = c_presentation(&m).unwrap();
        let t = tilde_presentation(&m, &c).unwrap();
        // transported S1 satisfies L_X theta-tilde in span(theta-tilde)
        let s1 = c.s[0].pushforward(&t.from_c).unwrap();
        for th in &t.theta {
            let lied = th.lie_derive(&s1).unwrap();
            match span_membership_forms(&lied, &t.theta).unwrap() {
                SpanResult::InSpan { .. } => {}
                SpanResult::NotInSpan { .. } => panic!("S1 is not a symmetry"),
            }
        }
    }
}
