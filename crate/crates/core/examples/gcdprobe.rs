use g2core::chart::Chart;
use g2core::constant::ConstMode;
use g2core::parse::parse_expr;

fn main() {
    let m = ConstMode::generic();
    let ch = Chart::new("c", &["x", "y", "z", "p", "q"], &m);
    let e = |s: &str| parse_expr(s, &ch).unwrap();

    let t0 = std::time::Instant::now();
    let a = e("(2*q*x*z - 1)^3");
    println!("cube built {:?} size {}", t0.elapsed(), a.size());

    let t0 = std::time::Instant::now();
    let b = e("(2*q*x*z - 9)^3");
    let prod = a.mul(&b).unwrap();
    println!("product {:?} size {}", t0.elapsed(), prod.size());

    let t0 = std::time::Instant::now();
    let q6 = a.mul(&a).unwrap();
    println!("sixth power {:?} size {}", t0.elapsed(), q6.size());

    // fraction arithmetic like the self-map components
    let t0 = std::time::Instant::now();
    let qp = e("81*(2*q*x*z - 1)^3/(2*z*x*(2*q*x*z - 9)^3)");
    println!("q' parsed {:?} size {}", t0.elapsed(), qp.size());
    let t0 = std::time::Instant::now();
    let qp2 = qp.pow(2).unwrap();
    println!("q'^2 {:?} size {}", t0.elapsed(), qp2.size());
    let t0 = std::time::Instant::now();
    let xp = e("(2*q*x*z - 9)^2*x/(9*(2*q*x*z - 1)^2)");
    let xp3 = xp.pow(3).unwrap();
    println!("x'^3 {:?} size {}", t0.elapsed(), xp3.size());
    let t0 = std::time::Instant::now();
    let zp = e("(2*q*x*z - 9)/(2*(2*q*x*z - 1)*q*x)");
    let zp2 = zp.pow(2).unwrap();
    println!("z'^2 {:?} size {}", t0.elapsed(), zp2.size());
    let t0 = std::time::Instant::now();
    let t1 = qp2.mul(&xp3).unwrap();
    println!("q'^2*x'^3 {:?} size {}", t0.elapsed(), t1.size());
    let t0 = std::time::Instant::now();
    let t2 = t1.mul(&zp2).unwrap();
    println!("*z'^2 {:?} size {}", t0.elapsed(), t2.size());
}
