//! Randomized property suites for the expression engine and the exterior
//! calculus, with the numeric oracle as the independent route.

use g2core::catalog::RunMode;
use g2core::constant::Constant;
use g2core::exterior::lie_derive_cartan;
use g2core::gen;
use g2core::numeric::{self, Rng};
use g2core::parse::{format_expr, parse_expr};

#[test]
fn normalize_idempotent_and_roundtrip() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(11);
    let zero = g2core::expr::Expr::zero(&ch);
    let mut count = 0;
    while count < 1000 {
        let e = match gen::expr(&mut rng, &ch, 3) {
            Ok(e) => e,
            Err(_) => continue, // division by a zero expression etc.
        };
        // adding zero re-runs the full canonicalization pipeline
        let renorm = e.add(&zero).unwrap();
        assert_eq!(renorm, e, "canonical form is stable");
        let text = format_expr(&e);
        let back = parse_expr(&text, &ch).unwrap_or_else(|err| {
            panic!("reparse failed for `{}`: {}", text, err);
        });
        assert_eq!(back, e, "round-trip failed for `{}`", text);
        count += 1;
    }
}

#[test]
fn ring_laws() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(23);
    let mut count = 0;
    while count < 200 {
        let (a, b, c) = match (
            gen::expr(&mut rng, &ch, 2),
            gen::expr(&mut rng, &ch, 2),
            gen::expr(&mut rng, &ch, 2),
        ) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => continue,
        };
        let assoc = a
            .add(&b)
            .unwrap()
            .add(&c)
            .unwrap()
            .sub(&a.add(&b.add(&c).unwrap()).unwrap())
            .unwrap();
        assert!(assoc.is_zero());
        let distrib = a
            .mul(&b.add(&c).unwrap())
            .unwrap()
            .sub(&a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap())
            .unwrap();
        assert!(distrib.is_zero());
        count += 1;
    }
}

#[test]
fn derivation_laws() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(37);
    let mut count = 0;
    while count < 200 {
        let (a, b) = match (gen::expr(&mut rng, &ch, 2), gen::expr(&mut rng, &ch, 2)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let v = ch.vars[rng.below(ch.dim())].clone();
        let w = ch.vars[rng.below(ch.dim())].clone();
        // product rule
        let lhs = a.mul(&b).unwrap().differentiate(&v).unwrap();
        let rhs = a
            .differentiate(&v)
            .unwrap()
            .mul(&b)
            .unwrap()
            .add(&a.mul(&b.differentiate(&v).unwrap()).unwrap())
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero(), "product rule");
        // mixed partials commute
        let xy = a
            .differentiate(&v)
            .unwrap()
            .differentiate(&w)
            .unwrap();
        let yx = a
            .differentiate(&w)
            .unwrap()
            .differentiate(&v)
            .unwrap();
        assert!(xy.sub(&yx).unwrap().is_zero(), "mixed partials");
        count += 1;
    }
}

#[test]
fn zero_test_soundness() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(41);
    let mut count = 0;
    while count < 200 {
        let (a, b) = match (gen::expr(&mut rng, &ch, 2), gen::expr(&mut rng, &ch, 2)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        // (a+b)^2 - a^2 - 2ab - b^2 is identically zero
        let z = a
            .add(&b)
            .unwrap()
            .pow(2)
            .unwrap()
            .sub(&a.pow(2).unwrap())
            .unwrap()
            .sub(&a.mul(&b).unwrap().scale(&Constant::int(&mode, 2)).unwrap())
            .unwrap()
            .sub(&b.pow(2).unwrap())
            .unwrap();
        assert!(z.is_zero(), "symbolic zero");
        assert!(numeric::confirm_zero(&z, 20, 1e-9, count as u64).unwrap());
        // a nonzero value evaluates visibly nonzero somewhere
        let nz = a.add(&g2core::expr::Expr::one(&ch)).unwrap();
        if !nz.is_zero() {
            match numeric::confirm_nonzero(&nz, 20, 1e-6, count as u64) {
                Ok(found) => assert!(found, "nonzero escaped sampling"),
                Err(_) => continue, // all sampled points singular; rare
            }
        }
        count += 1;
    }
}

#[test]
fn conjugation_involution_and_derivative() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(53);
    let mut count = 0;
    while count < 200 {
        let a = match gen::expr(&mut rng, &ch, 2) {
            Ok(a) => a,
            _ => continue,
        };
        let cc = a.conjugate().unwrap().conjugate().unwrap();
        assert_eq!(cc, a, "involution");
        let v = ch.vars[rng.below(ch.dim())].clone();
        let lhs = a.conjugate().unwrap().differentiate(&v).unwrap();
        let rhs = a.differentiate(&v).unwrap().conjugate().unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero(), "conjugation commutes with d/d{}", v);
        count += 1;
    }
}

#[test]
fn d_squared_vanishes() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(61);
    let mut count = 0;
    while count < 200 {
        let degree = 1 + rng.below(2);
        let f = match gen::form(&mut rng, &ch, degree, 2) {
            Ok(f) => f,
            _ => continue,
        };
        let dd = f.d().unwrap().d().unwrap();
        assert!(dd.is_zero(), "d^2 = 0");
        count += 1;
    }
}

#[test]
fn jacobi_identity() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(67);
    let mut count = 0;
    while count < 200 {
        let (x, y, z) = match (
            gen::field(&mut rng, &ch, 1),
            gen::field(&mut rng, &ch, 1),
            gen::field(&mut rng, &ch, 1),
        ) {
            (Ok(x), Ok(y), Ok(z)) => (x, y, z),
            _ => continue,
        };
        let j = x
            .bracket(&y)
            .unwrap()
            .bracket(&z)
            .unwrap()
            .add(&y.bracket(&z).unwrap().bracket(&x).unwrap())
            .unwrap()
            .add(&z.bracket(&x).unwrap().bracket(&y).unwrap())
            .unwrap();
        assert!(j.is_zero(), "Jacobi");
        count += 1;
    }
}

#[test]
fn cartan_formula() {
    let mode = RunMode::Generic.const_mode();
    let ch = gen::chart(&mode);
    let mut rng = Rng::new(71);
    let mut count = 0;
    while count < 200 {
        let degree = 1 + rng.below(2);
        let (x, f) = match (gen::field(&mut rng, &ch, 1), gen::form(&mut rng, &ch, degree, 1)) {
            (Ok(x), Ok(f)) => (x, f),
            _ => continue,
        };
        let direct = f.lie_derive(&x).unwrap();
        let cartan = lie_derive_cartan(&f, &x).unwrap();
        assert!(direct.sub(&cartan).unwrap().is_zero(), "Cartan formula");
        count += 1;
    }
}

#[test]
fn pullback_commutes_with_d() {
    let mode = RunMode::Generic.const_mode();
    let src = gen::chart(&mode);
    let dst = g2core::chart::Chart::new("dst", &["x", "y", "z", "p", "q"], &mode);
    let mut rng = Rng::new(73);
    let mut count = 0;
    while count < 200 {
        let map = match gen::poly_map(&mut rng, &src, &dst) {
            Ok(m) => m,
            _ => continue,
        };
        let f = match gen::one_form(&mut rng, &dst, 1) {
            Ok(f) => f,
            _ => continue,
        };
        let a = match f.pullback(&map).and_then(|p| p.d()) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let b = match f.d().and_then(|d| d.pullback(&map)) {
            Ok(b) => b,
            Err(_) => continue,
        };
        assert!(a.sub(&b).unwrap().is_zero(), "pullback-d commutation");
        count += 1;
    }
}
