// dev probe: c-map consistency between generic and literal displays
use g2core::catalog::rolling::{self, NineVariant, NINE_PRINTED};
use g2core::catalog::RunMode;
use g2core::constant::Constant;

fn main() {
    for mode in [RunMode::LitI3Pos, RunMode::LitI3Neg] {
        let cm = mode.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let generic = rolling::c_map_ninth(&ch).unwrap();
        let lit = rolling::c_map_ninth_literal(&ch, mode.plus()).unwrap();
        let s2 = Constant::sqrt2(&cm);
        let scales = [
            s2.mul(&Constant::ratio(&cm, 2, 27)).unwrap(),
            s2.mul(&Constant::ratio(&cm, 2, 27)).unwrap(),
            Constant::ratio(&cm, 2, 9),
            s2.mul(&Constant::ratio(&cm, 1, 3)).unwrap(),
            s2.mul(&Constant::ratio(&cm, 1, 3)).unwrap(),
        ];
        print!("{} rescaled match:", mode);
        for j in 0..5 {
            let rescaled = generic[j].scale(&scales[j]).unwrap();
            let diff = rescaled.sub(&lit[j]).unwrap();
            print!(" c{}={}", j + 1, diff.is_zero());
        }
        println!();
    }

    for mode in [RunMode::Lit3IPos, RunMode::Lit3INeg] {
        let cm = mode.const_mode();
        let ch = rolling::roll_chart("roll", &cm);
        let lit = rolling::c_map_nine_literal(&ch, mode.plus()).unwrap();
        let s2 = Constant::sqrt2(&cm);
        let m3227 = Constant::ratio(&cm, -32, 27).div(&s2).unwrap();
        let m43 = Constant::ratio(&cm, -4, 3).div(&s2).unwrap();
        let scales = [
            m3227.clone(),
            m3227.clone(),
            Constant::ratio(&cm, 8, 9),
            m43.clone(),
            m43.clone(),
        ];
        for variant in [
            NINE_PRINTED,
            rolling::NINE_RECONCILED,
            NineVariant { c2_q_exp: 1, c5_q_exp: 1, c5_q_sign: 1 },
        ] {
            let generic = rolling::c_map_nine(&ch, variant).unwrap();
            print!("{} variant {:?}:", mode, variant);
            for j in 0..5 {
                let rescaled = generic[j].scale(&scales[j]).unwrap();
                let diff = rescaled.sub(&lit[j]).unwrap();
                let flipped = rescaled.add(&lit[j]).unwrap();
                let mark = if diff.is_zero() {
                    "="
                } else if flipped.is_zero() {
                    "NEG"
                } else {
                    "x"
                };
                print!(" c{}:{}", j + 1, mark);
            }
            println!();
        }
    }
}
