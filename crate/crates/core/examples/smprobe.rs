use g2core::catalog::monge;
use g2core::constant::ConstMode;

fn main() {
    let m = ConstMode::generic();
    let p9 = monge::monge_ninth_plain(&m).unwrap();
    let sm = monge::self_map(&p9).unwrap();
    for j in 0..5 {
        let t0 = std::time::Instant::now();
        let composed = sm.pull_expr(&sm.comps[j].plain.clone());
        match composed {
            Ok(c) => eprintln!(
                "component {} composed in {:?}, size {}",
                p9.chart.vars[j],
                t0.elapsed(),
                c.size()
            ),
            Err(e) => eprintln!("component {} error {}", p9.chart.vars[j], e),
        }
    }
}
