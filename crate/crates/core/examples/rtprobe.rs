use g2core::catalog::RunMode;
use g2core::gen;
use g2core::numeric::Rng;
use g2core::parse::{format_expr, parse_expr};

fn main() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(11);
    let zero = g2core::expr::Expr::zero(&ch);
    let mut count = 0;
    while count < 1000 {
        let e = match gen::expr(&mut rng, &ch, 3) {
            Ok(e) => e,
            Err(_) => continue,
        };
        let renorm = e.add(&zero).unwrap();
        if renorm != e {
            eprintln!("IDEMPOTENCE failure at {}", count);
            eprintln!("  e atoms: {:?}", e.atoms);
            eprintln!("  r atoms: {:?}", renorm.atoms);
            break;
        }
        let text = format_expr(&e);
        let back = match parse_expr(&text, &ch) {
            Ok(b) => b,
            Err(err) => {
                eprintln!("REPARSE failure `{}`: {}", text, err);
                break;
            }
        };
        if back != e {
            eprintln!("ROUNDTRIP failure at {} for `{}`", count, text);
            for (i, f) in e.atoms.iter().enumerate() {
                eprintln!("  e atom {}: {:?}", i, f.0);
            }
            for (i, f) in back.atoms.iter().enumerate() {
                eprintln!("  b atom {}: {:?}", i, f.0);
            }
            break;
        }
        count += 1;
    }
    eprintln!("done at {}", count);
}
