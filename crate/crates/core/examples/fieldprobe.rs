// dev probe: printed generating fields vs the recipe, both theorems
use g2core::catalog::rolling;
use g2core::catalog::{flat, RunMode};
use g2core::constant::Constant;
use g2core::expr::Expr;
use g2core::exterior::CoordMap;
use g2core::liealg;

fn check_fields(mode: RunMode, nine: bool) {
    let cm = mode.const_mode();
    let ch = rolling::roll_chart("roll", &cm);
    let alpha = Constant::alpha(&cm);
    let r = rolling::rolling_model(&ch, &alpha).unwrap();
    let cs = if nine {
        rolling::c_map_nine_literal(&ch, mode.plus()).unwrap()
    } else {
        rolling::c_map_ninth_literal(&ch, mode.plus()).unwrap()
    };
    let cpres = flat::c_presentation(&cm).unwrap();
    let mut comps: Vec<Expr> = cs.to_vec();
    comps.push(Expr::one(&ch));
    let map = CoordMap::new_plain("cmap", &ch, &cpres.chart, comps).unwrap();

    // derive the Z-fields: dual frame to (dc1..dc5) combination fields,
    // pulled to the rolling chart. We avoid needing the full inverse map by
    // checking the defining property instead: Z_i applied to the c-functions
    // matches the c-chart values of Z_i applied to coordinates.
    // Z1 = d/dc3 + 2c5 d/dc2 - 2c4 d/dc1 has Z1(c1) = -2c4, Z1(c2) = 2c5,
    // Z1(c3) = 1, Z1(c4) = Z1(c5) = 0, etc.
    let zc: [[&str; 5]; 3] = [
        ["-2*c4", "2*c5", "1", "0", "0"],
        ["4*c3", "0", "-2*c5", "1", "0"],
        ["0", "-4*c3", "2*c4", "0", "1"],
    ];
    let printed = if nine { None } else { Some(rolling::printed_fields_ninth(&ch, &r, mode.plus()).unwrap()) };
    if let Some(p) = &printed {
        for (i, z) in p.z.iter().enumerate() {
            let mut ok = true;
            for j in 0..5 {
                let got = z.apply(&cs[j]).unwrap();
                let want_c = g2core::parse::parse_expr(zc[i][j], &cpres.chart).unwrap();
                let want = map.pull_expr(&want_c).unwrap();
                if !got.sub(&want).unwrap().is_zero() {
                    ok = false;
                    println!("  {} Z{}(c{}) mismatch", mode, i + 1, j + 1);
                }
            }
            println!("{} printed Z{} is the contact frame field: {}", mode, i + 1, ok);
        }
        // S1 = Z2 + c5 Z1, S2 = Z3 - c4 Z1 with the c-functions
        let s1 = p.z[1].add(&p.z[0].scale(&cs[4]).unwrap()).unwrap();
        println!("{} S1 printed == recipe: {}", mode, s1 == p.s[0]);
        let s2 = p.z[2].sub(&p.z[0].scale(&cs[3]).unwrap()).unwrap();
        println!("{} S2 printed == recipe: {}", mode, s2 == p.s[1]);
        let coef = cs[0]
            .mul(&cs[4]).unwrap()
            .add(&cs[1].mul(&cs[3]).unwrap()).unwrap()
            .add(&cs[2].pow(2).unwrap()).unwrap();
        let s3 = p.z[1].scale(&cs[0].neg()).unwrap()
            .add(&p.z[2].scale(&cs[1]).unwrap()).unwrap()
            .sub(&p.z[0].scale(&coef).unwrap()).unwrap();
        println!("{} S3 printed == recipe: {}", mode, s3 == p.s[2]);

        // closure
        let t0 = std::time::Instant::now();
        let set = liealg::generate_g2_set(&p.s[0], &p.s[1], &p.s[2]).unwrap();
        match liealg::closure_structure_constants(set.labels(), &set.vector_fields()) {
            Ok(pr) => {
                println!(
                    "{} closure dim {} jacobi {} real {} ({:?})",
                    mode,
                    pr.dim(),
                    pr.jacobi_holds().unwrap(),
                    pr.constants_real(),
                    t0.elapsed()
                );
                if pr.constants_real() {
                    let k = pr.killing_matrix().unwrap();
                    println!("{} signature {:?}", mode, liealg::killing_signature(&k).unwrap());
                }
                let datum = liealg::root_decomposition(&pr).unwrap();
                match liealg::match_root_diagram(&datum) {
                    Ok(l) => println!("{} root scale {}", mode, l),
                    Err(e) => println!("{} root mismatch: {}", mode, e),
                }
            }
            Err(e) => println!("{} closure FAILED: {}", mode, e),
        }
    } else {
        // nine: printed S fields with both X3 normalizations
        for shared in [false, true] {
            let x3 = rolling::x3_field(&r, shared).unwrap();
            let p = rolling::printed_fields_nine(&ch, &r, mode.plus(), &x3).unwrap();
            // recipe S-fields from the c-map contact frame: check the
            // defining relations S1 = Z2 + c5 Z1 applied to c-functions:
            // S1(c_j) should equal (Z2 + c5 Z1)(c_j) values
            let sc: [[String; 5]; 2] = [
                // S1 = Z2 + c5 Z1: values on (c1..c5)
                [
                    "4*c3 - 2*c4*c5".into(),
                    "2*c5^2".into(),
                    "-c5".into(),
                    "1".into(),
                    "0".into(),
                ],
                // S2 = Z3 - c4 Z1: values
                [
                    "2*c4^2".into(),
                    "-4*c3 - 2*c4*c5".into(),
                    "2*c4".into(),
                    "0".into(),
                    "1".into(),
                ],
            ];
            let mut all_ok = true;
            for (i, sf) in p.s[..2].iter().enumerate() {
                for j in 0..5 {
                    let got = sf.apply(&cs[j]).unwrap();
                    let want_c = g2core::parse::parse_expr(&sc[i][j], &cpres.chart).unwrap();
                    let want = map.pull_expr(&want_c).unwrap();
                    if !got.sub(&want).unwrap().is_zero() {
                        all_ok = false;
                    }
                }
            }
            println!(
                "{} x3(shared_denominator={}) printed S1,S2 satisfy contact relations: {}",
                mode, shared, all_ok
            );
            if all_ok {
                let t0 = std::time::Instant::now();
                let set = liealg::generate_g2_set(&p.s[0], &p.s[1], &p.s[2]).unwrap();
                match liealg::closure_structure_constants(set.labels(), &set.vector_fields()) {
                    Ok(pr) => {
                        println!(
                            "{} closure dim {} jacobi {} real {} ({:?})",
                            mode,
                            pr.dim(),
                            pr.jacobi_holds().unwrap(),
                            pr.constants_real(),
                            t0.elapsed()
                        );
                        if pr.constants_real() {
                            let k = pr.killing_matrix().unwrap();
                            println!("{} signature {:?}", mode, liealg::killing_signature(&k).unwrap());
                        }
                        let datum = liealg::root_decomposition(&pr).unwrap();
                        match liealg::match_root_diagram(&datum) {
                            Ok(l) => println!("{} root scale {}", mode, l),
                            Err(e) => println!("{} root mismatch: {}", mode, e),
                        }
                    }
                    Err(e) => println!("{} closure FAILED: {}", mode, e),
                }
            }
        }
    }
}

fn main() {
    check_fields(RunMode::LitI3Pos, false);
    check_fields(RunMode::Lit3IPos, true);
}
