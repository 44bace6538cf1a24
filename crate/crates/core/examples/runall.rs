use g2core::checks;

fn main() {
    let ids: Vec<String> = checks::all_checks().iter().map(|c| c.id.to_string()).collect();
    let t0 = std::time::Instant::now();
    for id in &ids {
        let t1 = std::time::Instant::now();
        match checks::run_check(id, None, 0) {
            Ok(r) => {
                let bad: Vec<&str> = r.items.iter().filter(|i| !i.ok).map(|i| i.name.as_str()).collect();
                eprintln!(
                    "{:<4} {:<9} {:>3} items {:>8.1?}  {}",
                    r.id,
                    r.status.to_string(),
                    r.items.len(),
                    t1.elapsed(),
                    if bad.is_empty() { String::new() } else { format!("FAILING: {:?}", bad) }
                );
                for n in &r.notes {
                    eprintln!("      note: {}", n);
                }
            }
            Err(e) => eprintln!("{:<4} ERROR: {}", id, e),
        }
    }
    eprintln!("total {:?}", t0.elapsed());
}
