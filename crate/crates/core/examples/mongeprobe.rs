// dev probe: monge-side maps
use g2core::catalog::{flat, monge, rolling, RunMode};
use g2core::constant::{ConstMode, Constant};
use g2core::distgeo::{span_membership_forms, Distribution, SpanResult};
use g2core::num::NumElem;
use g2core::num::rat;

fn main() {
    let m = ConstMode::generic();
    // C14: theta pullbacks along the a-map match the printed span coefficients
    let c = flat::c_presentation(&m).unwrap();
    let a = flat::a_presentation(&m, &c).unwrap();
    let mn = monge::monge_ninth(&m, &a).unwrap();
    for i in 0..3 {
        let t0 = std::time::Instant::now();
        let pulled = a.theta[i].pullback(&mn.to_a).unwrap();
        match span_membership_forms(&pulled, &mn.omega).unwrap() {
            SpanResult::InSpan { coefficients, ledger } => {
                let mut ok = true;
                for j in 0..3 {
                    if !coefficients[j].sub(&mn.printed_span[i][j]).unwrap().is_zero() {
                        ok = false;
                        println!("theta{} omega{} coefficient mismatch", i + 1, j + 1);
                    }
                }
                println!(
                    "theta{} span ok={} ledger has 2bqbxbz-1: {} ({:?})",
                    i + 1,
                    ok,
                    ledger.contains("2*bx*bz*bq - 1") || ledger.entries().any(|s| s.contains("- 1") && s.contains("bq")),
                    t0.elapsed()
                );
                for l in ledger.entries() {
                    println!("   ledger: {}", l);
                }
            }
            SpanResult::NotInSpan { .. } => println!("theta{} NOT in span", i + 1),
        }
    }
    // growth of the specialized monge distribution
    let (d, _) = Distribution::from_annihilator(&mn.omega).unwrap();
    let g = d.derived_flag().unwrap();
    println!("monge ninth growth {:?} ledger empty={}", g.ranks, g.ledger.is_empty());
    for l in g.ledger.entries() {
        println!("   growth ledger: {}", l);
    }

    // exchange maps
    let p9 = monge::monge_ninth_plain(&m).unwrap();
    let n9 = monge::monge_nine(&m).unwrap();
    for (idx, mkmap) in [monge::exchange_map_first(&p9, &n9).unwrap(), monge::exchange_map_second(&p9, &n9, false).unwrap()].into_iter().enumerate() {
        // pullback of the nine forms lies in the span of the ninth forms
        let mut all = true;
        for w in &n9.omega {
            let pulled = w.pullback(&mkmap).unwrap();
            match span_membership_forms(&pulled, &p9.omega).unwrap() {
                SpanResult::InSpan { .. } => {}
                SpanResult::NotInSpan { .. } => all = false,
            }
        }
        println!("exchange map {} carries the presentation: {}", idx + 1, all);
        // self-composition: apply the same formulas twice (reinterpreting
        // charts); compare with identity
        let copy_to_src = g2core::exterior::CoordMap::new_plain(
            "reinterpret", &n9.chart, &p9.chart,
            (0..5).map(|j| g2core::expr::Expr::var(&n9.chart, j)).collect(),
        ).unwrap();
        let twice = mkmap.compose(&copy_to_src, "sc").unwrap().compose(&mkmap, "twice").unwrap();
        let mut idcount = 0;
        for j in 0..5 {
            let expect = g2core::expr::Expr::var(&p9.chart, j);
            if twice.comps[j].plain.sub(&expect).unwrap().is_zero() {
                idcount += 1;
            } else {
                println!("   map {} twice: component {} differs", idx + 1, p9.chart.vars[j]);
            }
        }
        println!("exchange map {} composed twice: {}/5 identity components", idx + 1, idcount);
    }

    // self map: involution, preserves the span
    let sm = monge::self_map(&p9).unwrap();
    let twice = sm.compose(&sm, "twice").unwrap();
    let mut idcount = 0;
    for j in 0..5 {
        let expect = g2core::expr::Expr::var(&p9.chart, j);
        if twice.comps[j].plain.sub(&expect).unwrap().is_zero() {
            idcount += 1;
        }
    }
    println!("self map squared: {}/5 identity components", idcount);
    let mut all = true;
    for w in &p9.omega {
        let pulled = w.pullback(&sm).unwrap();
        match span_membership_forms(&pulled, &p9.omega).unwrap() {
            SpanResult::InSpan { .. } => {}
            SpanResult::NotInSpan { .. } => all = false,
        }
    }
    println!("self map preserves the annihilator span: {}", all);

    // swap maps: which parameter pairings certify
    for which in [1usize, 2] {
        for (sa, sp) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let cm = if sa > 0 { RunMode::LitI3Pos } else { RunMode::LitI3Neg }.const_mode();
            let src = rolling::roll_chart("roll", &cm);
            let dst = rolling::roll_chart("roll2", &cm);
            let alpha_src = Constant::alpha(&cm);
            let alpha_dst = Constant::from_num(
                &cm,
                NumElem::i().scale(&rat(3 * sp, 1)),
            );
            let r_src = rolling::rolling_model(&src, &alpha_src).unwrap();
            let r_dst = rolling::rolling_model(&dst, &alpha_dst).unwrap();
            let map = monge::swap_map(which, &src, &dst, &alpha_src, &alpha_dst).unwrap();
            let mut count = 0;
            for w in &r_dst.omega {
                match w.pullback(&map) {
                    Ok(pulled) => match span_membership_forms(&pulled, &r_src.omega).unwrap() {
                        SpanResult::InSpan { .. } => count += 1,
                        SpanResult::NotInSpan { .. } => {}
                    },
                    Err(e) => {
                        println!("   swap{} a={} a'={} pullback error: {}", which, sa, sp, e);
                        break;
                    }
                }
            }
            println!("swap map {} alpha={}i/3 alpha'={}3i: {}/3 forms in span", which, sa, sp, count);
        }
    }
}
