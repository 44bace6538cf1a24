// dev probe: the angular parametrisation items
use g2core::catalog::{real_param, rolling, RunMode};
use g2core::constant::{Constant};
use g2core::exterior::dual_frame;
use g2core::num::{rat, NumElem};

fn main() {
    // alpha = i/3 side
    let cm = RunMode::LitI3Pos.const_mode();
    let roll = rolling::roll_chart("roll", &cm);
    let alpha = Constant::alpha(&cm);
    let r = rolling::rolling_model(&roll, &alpha).unwrap();
    let ang = real_param::angle_chart(&cm);
    let t0 = std::time::Instant::now();
    let am = real_param::angle_model(&ang, &roll).unwrap();
    eprintln!("angle model built (map verified) {:?}", t0.elapsed());

    // sigma pullbacks match the printed angular forms
    for i in 0..3 {
        let pulled = r.sigma[i].pullback(&am.to_roll).unwrap();
        let diff = pulled.sub(&am.sigma_printed[i]).unwrap();
        eprintln!("sigma{} printed match: {}", i + 1, diff.is_zero());
    }

    // dual frame of (sigma1, sigma2, sigma3, dx, dq) equals printed E's
    let co = [
        am.sigma_printed[0].clone(),
        am.sigma_printed[1].clone(),
        am.sigma_printed[2].clone(),
        g2core::exterior::DiffForm::dvar_named(&ang, "x").unwrap(),
        g2core::exterior::DiffForm::dvar_named(&ang, "q").unwrap(),
    ];
    let (frame, _) = dual_frame(&co).unwrap();
    for i in 0..3 {
        let diff = frame[i].sub(&am.e_printed[i]).unwrap();
        eprintln!("E{} printed match: {}", i + 1, diff.is_zero());
    }

    // transported spanning fields and the printed theorem-2 set
    let inv = am.to_roll.inverted().unwrap();
    let t0 = std::time::Instant::now();
    let x1 = r.x1.pushforward(&inv).unwrap();
    let x2 = r.x2.pushforward(&inv).unwrap();
    let e1 = r.e_fields[0].pushforward(&inv).unwrap();
    let e3 = r.e_fields[2].pushforward(&inv).unwrap();
    eprintln!("fields transported {:?}", t0.elapsed());
    let printed = real_param::angle_printed_ninth(&ang, &x1, &x2, &e1, &e3).unwrap();
    let th2 = rolling::printed_fields_ninth(&roll, &r, true).unwrap();
    for i in 0..3 {
        let transported = th2.s[i].pushforward(&inv).unwrap();
        let diff = transported.sub(&printed.s[i]).unwrap();
        eprintln!("S{}+ angular match: {}", i + 1, diff.is_zero());
    }

    // alpha = 3i side with the V fields
    let cm9 = RunMode::Lit3IPos.const_mode();
    let roll9 = rolling::roll_chart("roll", &cm9);
    let alpha9 = Constant::alpha(&cm9);
    let r9 = rolling::rolling_model(&roll9, &alpha9).unwrap();
    let ang9 = real_param::angle_chart(&cm9);
    let am9 = real_param::angle_model(&ang9, &roll9).unwrap();
    let inv9 = am9.to_roll.inverted().unwrap();
    let x1_9 = r9.x1.pushforward(&inv9).unwrap();
    let x2_9 = r9.x2.pushforward(&inv9).unwrap();
    let e1_9 = r9.e_fields[0].pushforward(&inv9).unwrap();
    let e2_9 = r9.e_fields[1].pushforward(&inv9).unwrap();
    let e3_9 = r9.e_fields[2].pushforward(&inv9).unwrap();
    let printed9 = real_param::angle_printed_nine(&ang9, &x1_9, &x2_9, &e1_9, &e2_9, &e3_9, (-1, 2)).unwrap();
    let x3 = rolling::x3_field(&r9, false).unwrap();
    let th3 = rolling::printed_fields_nine(&roll9, &r9, true, &x3).unwrap();
    for i in 0..3 {
        let transported = th3.s[i].pushforward(&inv9).unwrap();
        let diff = transported.sub(&printed9.s[i]).unwrap();
        eprintln!("S{}+ (3i) angular match: {}", i + 1, diff.is_zero());
    }

    // conjugate parametrisation: sigma-bar identities
    let conj = real_param::conjugate_model(&ang, &roll).unwrap();
    // sigma-bar on the rolling chart: conjugates (-s1, s2, -s3)
    let sb = [
        r.sigma[0].clone().neg(),
        r.sigma[1].clone(),
        r.sigma[2].clone().neg(),
    ];
    // check conj(sigma_i) equals sb_i
    for i in 0..3 {
        let mut conj_form = g2core::exterior::DiffForm::zero(&roll, 1);
        for (k, c) in &r.sigma[i].comps {
            conj_form.comps.insert(k.clone(), c.conjugate().unwrap());
        }
        let diff = conj_form.sub(&sb[i]).unwrap();
        eprintln!("conj(sigma{}) identity: {}", i + 1, diff.is_zero());
    }
    for i in 0..3 {
        let pulled = sb[i].pullback(&conj.to_roll).unwrap();
        let diff = pulled.sub(&conj.sigma_bar_printed[i]).unwrap();
        eprintln!("sigma-bar{} printed match: {}", i + 1, diff.is_zero());
    }
    let _ = (NumElem::i(), rat(1, 2));
}
