use g2core::catalog::monge;
use g2core::constant::ConstMode;
use g2core::poly::{GCD_CALLS, GCD_NANOS};
use std::sync::atomic::Ordering;

fn main() {
    let m = ConstMode::generic();
    let p9 = monge::monge_ninth_plain(&m).unwrap();
    let sm = monge::self_map(&p9).unwrap();
    let t0 = std::time::Instant::now();
    let c0 = GCD_CALLS.load(Ordering::Relaxed);
    let n0 = GCD_NANOS.load(Ordering::Relaxed);
    let q = sm.pull_expr(&sm.comps[4].plain.clone()).unwrap();
    eprintln!(
        "q composed in {:?} size {} / gcd calls {} inclusive {:?}",
        t0.elapsed(),
        q.size(),
        GCD_CALLS.load(Ordering::Relaxed) - c0,
        std::time::Duration::from_nanos(GCD_NANOS.load(Ordering::Relaxed) - n0),
    );
}
