use g2core::catalog::{real_param, rolling, RunMode};
use g2core::constant::Constant;
use g2core::expr::Expr;
use g2core::parse::format_expr;

fn main() {
    let cm = RunMode::Lit3IPos.const_mode();
    let roll = rolling::roll_chart("roll", &cm);
    let alpha = Constant::alpha(&cm);
    let r = rolling::rolling_model(&roll, &alpha).unwrap();
    let ang = real_param::angle_chart(&cm);
    let am = real_param::angle_model(&ang, &roll).unwrap();
    let inv = am.to_roll.inverted().unwrap();
    let x1 = r.x1.pushforward(&inv).unwrap();
    let x2 = r.x2.pushforward(&inv).unwrap();
    let e1 = r.e_fields[0].pushforward(&inv).unwrap();
    let e2 = r.e_fields[1].pushforward(&inv).unwrap();
    let e3 = r.e_fields[2].pushforward(&inv).unwrap();
    let printed = real_param::angle_printed_nine(&ang, &x1, &x2, &e1, &e2, &e3, (-1, 2)).unwrap();
    let x3 = rolling::x3_field(&r, false).unwrap();
    let th3 = rolling::printed_fields_nine(&roll, &r, true, &x3).unwrap();
    let truth = th3.s[0].pushforward(&inv).unwrap();
    // truth - q*S2
    let s2t = th3.s[1].pushforward(&inv).unwrap();
    let head = truth
        .sub(&s2t.scale(&g2core::parse::parse_expr("q", &ang).unwrap()).unwrap())
        .unwrap();
    // compare against k * e^{-i(3x+th)/2} (cos(ps/2) V1 + c2 sin(ps/2) V2)
    // by solving: express head in span{V1, V2}
    match g2core::distgeo::span_membership_fields(&head, &printed.v).unwrap() {
        g2core::distgeo::SpanResult::InSpan { coefficients, .. } => {
            for (i, c) in coefficients.iter().enumerate() {
                println!("V{} coefficient: {}", i + 1, format_expr(c));
            }
        }
        _ => println!("head not in V-span"),
    }
    let _ = Expr::zero;
}
