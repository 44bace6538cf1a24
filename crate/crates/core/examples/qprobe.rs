use g2core::chart::Chart;
use g2core::constant::ConstMode;
use g2core::parse::parse_expr;

macro_rules! t {
    ($name:expr, $e:expr) => {{
        let t0 = std::time::Instant::now();
        let v = $e;
        eprintln!("{}: {:?} size {}", $name, t0.elapsed(), v.size());
        v
    }};
}

fn main() {
    let m = ConstMode::generic();
    let ch = Chart::new("c", &["x", "y", "z", "p", "q"], &m);
    let e = |s: &str| parse_expr(s, &ch).unwrap();
    let qp = e("81*(2*q*x*z - 1)^3/(2*z*x*(2*q*x*z - 9)^3)");
    let xp = e("(2*q*x*z - 9)^2*x/(9*(2*q*x*z - 1)^2)");
    let zp = e("(2*q*x*z - 9)/(2*(2*q*x*z - 1)*q*x)");
    let q3 = t!("q'^3", qp.pow(3).unwrap());
    let x3 = t!("x'^3", xp.pow(3).unwrap());
    let z3 = t!("z'^3", zp.pow(3).unwrap());
    let u3 = t!("u'^3", q3.mul(&x3).unwrap().mul(&z3).unwrap());
    let q2 = t!("q'^2", qp.pow(2).unwrap());
    let x2 = t!("x'^2", xp.pow(2).unwrap());
    let z2 = t!("z'^2", zp.pow(2).unwrap());
    let u2 = t!("u'^2", q2.mul(&x2).unwrap().mul(&z2).unwrap());
    let u1 = t!("u'", qp.mul(&xp).unwrap().mul(&zp).unwrap());
    // num = 81(8u^3 - 12u^2 + 6u - 1)
    let num = t!(
        "num sum",
        u3.scale(&g2core::constant::Constant::int(&m, 8))
            .unwrap()
            .sub(&u2.scale(&g2core::constant::Constant::int(&m, 12)).unwrap())
            .unwrap()
            .add(&u1.scale(&g2core::constant::Constant::int(&m, 6)).unwrap())
            .unwrap()
            .sub(&g2core::expr::Expr::one(&ch))
            .unwrap()
            .scale(&g2core::constant::Constant::int(&m, 81))
            .unwrap()
    );
    // den = 2 z' x' (8u^3 - 108u^2 + 486u - 729)
    let dsum = t!(
        "den sum",
        u3.scale(&g2core::constant::Constant::int(&m, 8))
            .unwrap()
            .sub(&u2.scale(&g2core::constant::Constant::int(&m, 108)).unwrap())
            .unwrap()
            .add(&u1.scale(&g2core::constant::Constant::int(&m, 486)).unwrap())
            .unwrap()
            .sub(&g2core::expr::Expr::int(&ch, 729))
            .unwrap()
    );
    let den = t!(
        "den prod",
        dsum.mul(&zp).unwrap().mul(&xp).unwrap().scale(&g2core::constant::Constant::int(&m, 2)).unwrap()
    );
    let _q = t!("final div", num.div(&den).unwrap());
}
