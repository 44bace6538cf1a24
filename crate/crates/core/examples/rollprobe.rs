// dev probe: rolling model identities
use g2core::catalog::rolling;
use g2core::constant::{ConstMode, Constant};
use g2core::distgeo::{span_membership_forms, Distribution, SpanResult};

fn main() {
    let mode = ConstMode::generic();
    let ch = rolling::roll_chart("roll", &mode);
    let alpha = Constant::alpha(&mode);
    let r = rolling::rolling_model(&ch, &alpha).unwrap();

    // su(2) relations
    let d1 = r.sigma[0].d().unwrap().sub(&r.sigma[1].wedge(&r.sigma[2]).unwrap()).unwrap();
    let d2 = r.sigma[1].d().unwrap().sub(&r.sigma[2].wedge(&r.sigma[0]).unwrap()).unwrap();
    let d3 = r.sigma[2].d().unwrap().sub(&r.sigma[0].wedge(&r.sigma[1]).unwrap()).unwrap();
    println!("maurer-cartan: {} {} {}", d1.is_zero(), d2.is_zero(), d3.is_zero());

    // duality
    for (i, s) in r.sigma.iter().enumerate() {
        for (j, ef) in r.e_fields.iter().enumerate() {
            let v = s.pair(ef).unwrap();
            let expect = i == j;
            if v.is_one() != expect || (!expect && !v.is_zero()) {
                println!("duality FAIL at {} {}", i, j);
            }
        }
    }
    println!("duality ok");

    // brackets [E1,E2] = -E3 etc
    let b12 = r.e_fields[0].bracket(&r.e_fields[1]).unwrap().add(&r.e_fields[2]).unwrap();
    let b31 = r.e_fields[2].bracket(&r.e_fields[0]).unwrap().add(&r.e_fields[1]).unwrap();
    let b23 = r.e_fields[1].bracket(&r.e_fields[2]).unwrap().add(&r.e_fields[0]).unwrap();
    println!("su2 brackets: {} {} {}", b12.is_zero(), b31.is_zero(), b23.is_zero());

    // omegas annihilate X1, X2
    for (i, w) in r.omega.iter().enumerate() {
        let a = w.pair(&r.x1).unwrap();
        let b = w.pair(&r.x2).unwrap();
        println!("omega{} pairings zero: {} {}", i + 1, a.is_zero(), b.is_zero());
    }

    // t expansions
    for i in 0..3 {
        let diff = r.t_forms[i].sub(&r.t_printed[i]).unwrap();
        println!("t{} printed matches: {}", i + 1, diff.is_zero());
    }

    // conjugates: conj E1 = -E1, conj E2 = E2, conj E3 = -E3
    println!(
        "conjugates: {} {} {}",
        r.e_fields[0].conjugate().unwrap().add(&r.e_fields[0]).unwrap().is_zero(),
        r.e_fields[1].conjugate().unwrap().sub(&r.e_fields[1]).unwrap().is_zero(),
        r.e_fields[2].conjugate().unwrap().add(&r.e_fields[2]).unwrap().is_zero()
    );

    // growth vector of span{X1, X2}
    let d = Distribution::new(vec![r.x1.clone(), r.x2.clone()]);
    let g = d.derived_flag().unwrap();
    println!("growth: {:?}", g.ranks);

    // hat passage
    let t0 = std::time::Instant::now();
    let hat = rolling::hat_passage(&ch).unwrap();
    println!("hat map verified in {:?}", t0.elapsed());
    for i in 0..3 {
        let pulled = hat.hat_forms[i].pullback(&hat.to_hat).unwrap();
        let expect = r.t_forms[i_perm(i)].scale(&hat.multipliers[i]).unwrap();
        let diff = pulled.sub(&expect).unwrap();
        println!("hat identity {}: {}", i + 1, diff.is_zero());
    }

    // bar passage
    let t0 = std::time::Instant::now();
    let bar = rolling::bar_passage(&ch, &hat).unwrap();
    println!("bar map verified in {:?}", t0.elapsed());
    // f through the bar map matches the printed hat-side value
    let f_pulled = bar.to_bar.pull_expr(&bar.f_generic).unwrap();
    println!("F through bar matches printed: {}", f_pulled.sub(&bar.f_through).unwrap().is_zero());

    // direct composite equals bar . hat
    let composed = hat.to_hat.compose(&bar.to_bar, "composite").unwrap();
    for j in 0..5 {
        let diff = composed.comps[j].plain.sub(&bar.direct.comps[j].plain).unwrap();
        println!("composite component {}: {}", j, diff.is_zero());
    }

    // theorem-1 span: pull the monge forms back along the direct map; each
    // is a multiple of one t-combination
    for (j, w) in bar.omega_bar.iter().enumerate() {
        let pulled = w.pullback(&bar.direct).unwrap();
        match span_membership_forms(&pulled, &[r.t_forms[0].clone(), r.t_forms[1].clone(), r.t_forms[2].clone()]).unwrap() {
            SpanResult::InSpan { coefficients, .. } => {
                let nz: Vec<usize> = coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect();
                println!("monge form {} in t-span, nonzero coeffs at {:?}", j, nz);
            }
            SpanResult::NotInSpan { .. } => println!("monge form {} NOT in span", j),
        }
    }
}

fn i_perm(i: usize) -> usize {
    // hat identities pair with t2, t3, t1
    [1, 2, 0][i]
}
