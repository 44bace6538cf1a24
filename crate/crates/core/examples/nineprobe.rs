// dev probe: derive the true generating fields for the second theorem and
// diff against the printed displays
use g2core::catalog::rolling;
use g2core::catalog::{flat, RunMode};
use g2core::constant::Constant;
use g2core::exterior::{dual_frame, CoordMap, DiffForm};
use g2core::expr::Expr;
use g2core::parse::format_expr;

fn main() {
    let mode = RunMode::Lit3IPos;
    let cm = mode.const_mode();
    let ch = rolling::roll_chart("roll", &cm);
    let alpha = Constant::alpha(&cm);
    let r = rolling::rolling_model(&ch, &alpha).unwrap();
    let cs = rolling::c_map_nine_literal(&ch, mode.plus()).unwrap();
    let cpres = flat::c_presentation(&cm).unwrap();
    let mut comps: Vec<Expr> = cs.to_vec();
    comps.push(Expr::one(&ch));
    let map = CoordMap::new_plain("cmap", &ch, &cpres.chart, comps).unwrap();

    // coframe on the rolling chart: pullbacks of dc1..dc5
    let coframe: Vec<DiffForm> = (0..5)
        .map(|j| DiffForm::dvar(&cpres.chart, j).pullback(&map).unwrap())
        .collect();
    let (frame, _) = dual_frame(&coframe).unwrap();
    // Z1 = e3 + 2 c5 e2 - 2 c4 e1 etc with c's composed
    let z1 = frame[2]
        .add(&frame[1].scale(&cs[4].scale(&Constant::int(&cm, 2)).unwrap()).unwrap())
        .unwrap()
        .sub(&frame[0].scale(&cs[3].scale(&Constant::int(&cm, 2)).unwrap()).unwrap())
        .unwrap();
    let z2 = frame[3]
        .add(&frame[0].scale(&cs[2].scale(&Constant::int(&cm, 4)).unwrap()).unwrap())
        .unwrap()
        .sub(&frame[2].scale(&cs[4].scale(&Constant::int(&cm, 2)).unwrap()).unwrap())
        .unwrap();
    let z3 = frame[4]
        .add(&frame[2].scale(&cs[3].scale(&Constant::int(&cm, 2)).unwrap()).unwrap())
        .unwrap()
        .sub(&frame[1].scale(&cs[2].scale(&Constant::int(&cm, 4)).unwrap()).unwrap())
        .unwrap();
    let s1 = z2.add(&z1.scale(&cs[4]).unwrap()).unwrap();
    let s2 = z3.sub(&z1.scale(&cs[3]).unwrap()).unwrap();
    let coef = cs[0]
        .mul(&cs[4]).unwrap()
        .add(&cs[1].mul(&cs[3]).unwrap()).unwrap()
        .add(&cs[2].pow(2).unwrap()).unwrap();
    let s3 = z2.scale(&cs[0].neg()).unwrap()
        .add(&z3.scale(&cs[1]).unwrap()).unwrap()
        .sub(&z1.scale(&coef).unwrap()).unwrap();

    for shared in [false, true] {
        let x3 = rolling::x3_field(&r, shared).unwrap();
        let p = rolling::printed_fields_nine(&ch, &r, mode.plus(), &x3).unwrap();
        for (name, truth, printed) in [("S1", &s1, &p.s[0]), ("S2", &s2, &p.s[1]), ("S3", &s3, &p.s[2])] {
            let diff = truth.sub(printed).unwrap();
            if diff.is_zero() {
                println!("x3shared={} {} MATCHES", shared, name);
            } else {
                println!("x3shared={} {} differs:", shared, name);
                for (v, c) in diff.comps.iter().enumerate() {
                    if !c.is_zero() {
                        let txt = format_expr(c);
                        let short: String = txt.chars().take(150).collect();
                        println!("   d/d{}: {}", ch.vars[v], short);
                    }
                }
            }
        }
    }
}
