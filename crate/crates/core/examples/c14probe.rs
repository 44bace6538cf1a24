use g2core::catalog::{flat, monge};
use g2core::constant::ConstMode;
use g2core::distgeo::{span_membership_forms, SpanResult};

fn main() {
    let m = ConstMode::generic();
    let c = flat::c_presentation(&m).unwrap();
    let a = flat::a_presentation(&m, &c).unwrap();
    let mn = monge::monge_ninth(&m, &a).unwrap();
    for i in [2usize, 0, 1] {
        let t0 = std::time::Instant::now();
        let pulled = a.theta[i].pullback(&mn.to_a).unwrap();
        println!("theta{} pullback {:?}", i + 1, t0.elapsed());
        let t0 = std::time::Instant::now();
        match span_membership_forms(&pulled, &mn.omega).unwrap() {
            SpanResult::InSpan { coefficients, .. } => {
                let ok: Vec<bool> = (0..3)
                    .map(|j| coefficients[j].sub(&mn.printed_span[i][j]).unwrap().is_zero())
                    .collect();
                println!("theta{} span solve {:?} printed match {:?}", i + 1, t0.elapsed(), ok);
            }
            SpanResult::NotInSpan { .. } => println!("theta{} NOT in span", i + 1),
        }
    }
}
