use g2core::catalog::monge;
use g2core::constant::ConstMode;
use g2core::poly::{CERT_NO, CERT_OK, GCD_CALLS, GCD_NANOS, PRS_BIG};
use std::sync::atomic::Ordering;

fn main() {
    let m = ConstMode::generic();
    let p9 = monge::monge_ninth_plain(&m).unwrap();
    let sm = monge::self_map(&p9).unwrap();
    let t0 = std::time::Instant::now();
    let y = sm.pull_expr(&sm.comps[1].plain.clone()).unwrap();
    eprintln!(
        "y composed {:?} size {} / gcd calls {} nanos {:?} cert ok {} no {} big-prs {}",
        t0.elapsed(),
        y.size(),
        GCD_CALLS.load(Ordering::Relaxed),
        std::time::Duration::from_nanos(GCD_NANOS.load(Ordering::Relaxed)),
        CERT_OK.load(Ordering::Relaxed),
        CERT_NO.load(Ordering::Relaxed),
        PRS_BIG.load(Ordering::Relaxed),
    );
}
