// dev probe: contact-form span certifications for the c-maps
use g2core::catalog::rolling::{self, NINE_RECONCILED};
use g2core::catalog::{flat, RunMode};
use g2core::constant::Constant;
use g2core::distgeo::{span_membership_forms, SpanResult};
use g2core::exterior::CoordMap;
use g2core::expr::Expr;

fn theta_span(mode_name: &str, cs: &[Expr; 5], omega: &[g2core::exterior::DiffForm; 3]) {
    let ch = cs[0].chart.clone();
    let cpres = flat::c_presentation(&ch.mode).unwrap();
    let mut comps: Vec<Expr> = cs.to_vec();
    comps.push(Expr::one(&ch)); // the formal constant slot
    let map = CoordMap::new_plain("cmap", &ch, &cpres.chart, comps).unwrap();
    for (i, th) in cpres.theta.iter().enumerate() {
        let t0 = std::time::Instant::now();
        let pulled = th.pullback(&map).unwrap();
        match span_membership_forms(&pulled, omega).unwrap() {
            SpanResult::InSpan { .. } => {
                println!("{}: Theta{} IN span ({:?})", mode_name, i + 1, t0.elapsed())
            }
            SpanResult::NotInSpan { residual, .. } => println!(
                "{}: Theta{} NOT in span, residual size {} ({:?})",
                mode_name,
                i + 1,
                residual.size(),
                t0.elapsed()
            ),
        }
    }
}

fn main() {
    // literal +-i/3: rescaled c's must certify
    for mode in [RunMode::LitI3Pos, RunMode::LitI3Neg] {
        let cm = mode.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let alpha = Constant::alpha(&cm);
        let r = rolling::rolling_model(&ch, &alpha).unwrap();
        let cs = rolling::c_map_ninth_literal(&ch, mode.plus()).unwrap();
        theta_span(&format!("{}", mode), &cs, &r.omega);
    }
    // literal +-3i
    for mode in [RunMode::Lit3IPos, RunMode::Lit3INeg] {
        let cm = mode.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let alpha = Constant::alpha(&cm);
        let r = rolling::rolling_model(&ch, &alpha).unwrap();
        let cs = rolling::c_map_nine_literal(&ch, mode.plus()).unwrap();
        theta_span(&format!("{}", mode), &cs, &r.omega);
    }
    // generic: must FAIL span
    {
        let cm = RunMode::Generic.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let alpha = Constant::alpha(&cm);
        let r = rolling::rolling_model(&ch, &alpha).unwrap();
        let cs = rolling::c_map_ninth(&ch).unwrap();
        theta_span("generic(ninth map)", &cs, &r.omega);
        let cs9 = rolling::c_map_nine(&ch, NINE_RECONCILED).unwrap();
        theta_span("generic(nine map)", &cs9, &r.omega);
    }
    // specialized alpha^2 = -1/9: must PASS
    {
        let cm = RunMode::SquaredNinth.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let alpha = Constant::alpha(&cm);
        let r = rolling::rolling_model(&ch, &alpha).unwrap();
        let cs = rolling::c_map_ninth(&ch).unwrap();
        theta_span("alpha2=-1/9", &cs, &r.omega);
    }
    // specialized alpha^2 = -9 with the reconciled variant: must PASS
    {
        let cm = RunMode::SquaredNine.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let alpha = Constant::alpha(&cm);
        let r = rolling::rolling_model(&ch, &alpha).unwrap();
        let cs = rolling::c_map_nine(&ch, NINE_RECONCILED).unwrap();
        theta_span("alpha2=-9", &cs, &r.omega);
        let printed = rolling::c_map_nine(&ch, rolling::NINE_PRINTED).unwrap();
        theta_span("alpha2=-9 printed", &printed, &r.omega);
    }
}
