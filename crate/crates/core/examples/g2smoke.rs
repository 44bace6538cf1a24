// quick dev probe: flat model closure
use g2core::catalog::flat;
use g2core::constant::ConstMode;
use g2core::liealg;
fn main() {
    let m = ConstMode::generic();
    let c = flat::c_presentation(&m).unwrap();
    let t0 = std::time::Instant::now();
    let set = liealg::generate_g2_set(&c.s[0], &c.s[1], &c.s[2]).unwrap();
    println!("generated in {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    let p = liealg::closure_structure_constants(set.labels(), &set.vector_fields()).unwrap();
    println!("closure dim {} in {:?}", p.dim(), t0.elapsed());
    println!("jacobi: {}", p.jacobi_holds().unwrap());
    println!("real: {}", p.constants_real());
    let k = p.killing_matrix().unwrap();
    println!("signature: {:?}", liealg::killing_signature(&k).unwrap());
    println!("float sig: {:?}", liealg::float_signature(&k, 1e-9).unwrap());
    let datum = liealg::root_decomposition(&p).unwrap();
    let lambda = liealg::match_root_diagram(&datum).unwrap();
    println!("root scale: {}", lambda);
}
