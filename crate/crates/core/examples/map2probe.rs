use g2core::catalog::monge;
use g2core::constant::ConstMode;
use g2core::distgeo::{span_membership_forms, SpanResult};
use g2core::exterior::CoordMap;
use g2core::expr::Expr;
use g2core::parse::format_expr;

fn main() {
    let m = ConstMode::generic();
    let p9 = monge::monge_ninth_plain(&m).unwrap();
    let n9 = monge::monge_nine(&m).unwrap();
    let m1 = monge::exchange_map_first(&p9, &n9).unwrap();
    let m2 = monge::exchange_map_second(&p9, &n9, false).unwrap();
    let sm = monge::self_map(&p9).unwrap();

    // self-map: involution + preserves span?
    let twice = sm.compose(&sm, "twice").unwrap();
    let mut idc = 0;
    for j in 0..5 {
        if twice.comps[j].plain.sub(&Expr::var(&p9.chart, j)).unwrap().is_zero() {
            idc += 1;
        }
    }
    println!("self map squared: {}/5 identity", idc);
    let mut inspan = 0;
    for w in &p9.omega {
        let pulled = w.pullback(&sm).unwrap();
        if let SpanResult::InSpan { .. } = span_membership_forms(&pulled, &p9.omega).unwrap() {
            inspan += 1;
        }
    }
    println!("self map preserves annihilator: {}/3", inspan);

    // candidate: m2' = sm followed by m1  (x -> sm -> m1)
    let cand = sm.compose(&m1, "m2cand").unwrap();
    for j in 0..5 {
        let diff = cand.comps[j].plain.sub(&m2.comps[j].plain).unwrap();
        if diff.is_zero() {
            println!("component {}: printed m2 matches sm;m1", p9.chart.vars[j]);
        } else {
            let c = format_expr(&cand.comps[j].plain);
            let p = format_expr(&m2.comps[j].plain);
            println!(
                "component {}: differs\n  derived: {}\n  printed: {}",
                p9.chart.vars[j],
                &c[..c.len().min(160)],
                &p[..p.len().min(160)]
            );
        }
    }
    // and the reverse order: m1 after... m1 maps to n9; need sm on the n9 side:
    // reinterpret sm formulas on the n9 chart, then compose m1; sm9 = same formulas
    let sm9 = CoordMap::new_plain(
        "sm9",
        &n9.chart,
        &n9.chart,
        (0..5)
            .map(|j| {
                let src = sm.comps[j].plain.clone();
                // reinterpret on the n9 chart (same variable names)
                g2core::parse::parse_expr(&format_expr(&src), &n9.chart).unwrap()
            })
            .collect(),
    )
    .unwrap();
    let cand2 = m1.compose(&sm9, "m2cand2").unwrap();
    let mut match2 = 0;
    for j in 0..5 {
        if cand2.comps[j].plain.sub(&m2.comps[j].plain).unwrap().is_zero() {
            match2 += 1;
        }
    }
    println!("m1;sm9 matches printed m2 on {}/5 components", match2);
}
