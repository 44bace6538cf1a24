use g2core::catalog::rolling::{self, NINE_RECONCILED};
use g2core::catalog::{flat, monge, RunMode};
use g2core::constant::Constant;
use g2core::exterior::{dual_frame, CoordMap, DiffForm};
use g2core::expr::Expr;

macro_rules! t {
    ($name:expr, $e:expr) => {{
        let t0 = std::time::Instant::now();
        let v = $e;
        eprintln!("{}: {:?}", $name, t0.elapsed());
        v
    }};
}

fn main() {
    // exchange-map block
    let gm = RunMode::Generic.const_mode();
    let p9 = t!("monge charts", {
        let p = monge::monge_ninth_plain(&gm).unwrap();
        let n = monge::monge_nine(&gm).unwrap();
        (p, n)
    });
    let (p9, n9) = p9;
    let m1 = monge::exchange_map_first(&p9, &n9).unwrap();
    t!("m1 span carries", {
        for w in &n9.omega {
            let pulled = w.pullback(&m1).unwrap();
            let _ = g2core::distgeo::span_membership_forms(&pulled, &p9.omega).unwrap();
        }
    });
    let back = CoordMap::new_plain(
        "reinterpret",
        &n9.chart,
        &p9.chart,
        (0..5).map(|j| Expr::var(&n9.chart, j)).collect(),
    )
    .unwrap();
    t!("m1 self-composition", m1.compose(&back, "sq").unwrap().compose(&m1, "twice").unwrap());
    t!("m1 corrected inverse", {
        let inv = CoordMap::new_plain(
            "inv",
            &n9.chart,
            &p9.chart,
            vec![
                g2core::parse::parse_expr("1/x", &n9.chart).unwrap(),
                g2core::parse::parse_expr("y/x", &n9.chart).unwrap(),
                g2core::parse::parse_expr("9*z/x", &n9.chart).unwrap(),
                g2core::parse::parse_expr("y - p*x", &n9.chart).unwrap(),
                g2core::parse::parse_expr("q*x^3", &n9.chart).unwrap(),
            ],
        )
        .unwrap();
        m1.clone().with_inverse(inv).unwrap()
    });
    let printed = monge::exchange_map_second(&p9, &n9, false).unwrap();
    t!("m2 printed span", {
        for w in &n9.omega {
            let pulled = w.pullback(&printed).unwrap();
            let _ = g2core::distgeo::span_membership_forms(&pulled, &p9.omega).unwrap();
        }
    });
    let corrected = monge::exchange_map_second(&p9, &n9, true).unwrap();
    t!("m2 corrected span", {
        for w in &n9.omega {
            let pulled = w.pullback(&corrected).unwrap();
            let _ = g2core::distgeo::span_membership_forms(&pulled, &p9.omega).unwrap();
        }
    });
    let sm = monge::self_map(&p9).unwrap();
    t!("sm;m1 derived equality", {
        let derived = sm.compose(&m1, "m2d").unwrap();
        for j in 0..5 {
            let _ = derived.comps[j].plain.sub(&corrected.comps[j].plain).unwrap();
        }
    });
    t!("sm involution + span", {
        let twice = sm.compose(&sm, "twice").unwrap();
        for j in 0..5 {
            let _ = twice.comps[j].plain.sub(&Expr::var(&p9.chart, j)).unwrap();
        }
        for w in &p9.omega {
            let pulled = w.pullback(&sm).unwrap();
            let _ = g2core::distgeo::span_membership_forms(&pulled, &p9.omega).unwrap();
        }
    });
    // conditional span block
    t!("conditional span (generic side)", {
        let cm = RunMode::Generic.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let r = rolling::rolling_model(&ch, &Constant::alpha(&cm)).unwrap();
        let cpres = flat::c_presentation(&cm).unwrap();
        let cs = rolling::c_map_nine(&ch, NINE_RECONCILED).unwrap();
        let mut comps: Vec<Expr> = cs.to_vec();
        comps.push(Expr::one(&ch));
        let map = CoordMap::new_plain("gm", &ch, &cpres.chart, comps).unwrap();
        let coframe = [
            r.omega[0].clone(),
            r.omega[1].clone(),
            r.omega[2].clone(),
            DiffForm::dvar_named(&ch, "x").unwrap(),
            DiffForm::dvar_named(&ch, "q").unwrap(),
        ];
        let (duals, _) = dual_frame(&coframe).unwrap();
        let spec_mode = RunMode::SquaredNine.const_mode();
        let spec_chart = rolling::roll_chart("roll", &spec_mode);
        for th in cpres.theta.iter() {
            let pulled = t!("  pullback", th.pullback(&map).unwrap());
            let _ = t!("  not-span solve", g2core::distgeo::span_membership_forms(&pulled, &r.omega).unwrap());
            let ob1 = t!("  pair1", pulled.pair(&duals[3]).unwrap());
            let ob2 = t!("  pair2", pulled.pair(&duals[4]).unwrap());
            for ob in [&ob1, &ob2] {
                if !ob.is_zero() {
                    let _ = t!("  specialize", ob.map_constants(&spec_chart, &|c| c.specialize(&spec_mode)).unwrap());
                }
            }
        }
    });
}
