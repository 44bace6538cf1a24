use g2core::catalog::rolling;
use g2core::catalog::RunMode;
use g2core::constant::Constant;
use g2core::liealg;

fn main() {
    let mode = RunMode::Lit3IPos;
    let cm = mode.const_mode();
    let ch = rolling::roll_chart("roll", &cm);
    let alpha = Constant::alpha(&cm);
    let r = rolling::rolling_model(&ch, &alpha).unwrap();
    let x3 = rolling::x3_field(&r, false).unwrap();
    let p = rolling::printed_fields_nine(&ch, &r, mode.plus(), &x3).unwrap();
    let t0 = std::time::Instant::now();
    let set = liealg::generate_g2_set(&p.s[0], &p.s[1], &p.s[2]).unwrap();
    println!("generated in {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    match liealg::closure_structure_constants(set.labels(), &set.vector_fields()) {
        Ok(pr) => {
            println!("closure dim {} in {:?}", pr.dim(), t0.elapsed());
            println!("jacobi {} real {}", pr.jacobi_holds().unwrap(), pr.constants_real());
            if pr.constants_real() {
                let k = pr.killing_matrix().unwrap();
                println!("signature {:?}", liealg::killing_signature(&k).unwrap());
            }
            let datum = liealg::root_decomposition(&pr).unwrap();
            match liealg::match_root_diagram(&datum) {
                Ok(l) => println!("root scale {}", l),
                Err(e) => println!("root mismatch: {}", e),
            }
        }
        Err(e) => println!("closure FAILED: {}", e),
    }
}
