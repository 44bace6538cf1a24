//! Seeded numeric evaluation used as an independent oracle for the
//! symbolic zero test.

use num_complex::Complex64;

use crate::chart::Chart;
use crate::constant::ModeKind;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::num::rat_to_f64;

/// Deterministic splitmix64 generator; identical streams across platforms.
#[derive(Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng {
            state: seed.wrapping_add(0x9e3779b97f4a7c15),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// uniform in [0, 1)
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// uniform in [lo, hi)
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// A sampled evaluation point: chart variable values plus an alpha value
/// consistent with the chart's mode.
pub struct SamplePoint {
    pub values: Vec<Complex64>,
    pub alpha: Complex64,
}

/// Draw a point with all variables of moderate magnitude and positive real
/// part (so principal square roots behave).
pub fn sample_point(chart: &Chart, rng: &mut Rng) -> SamplePoint {
    let values: Vec<Complex64> = (0..chart.dim())
        .map(|v| {
            let re = rng.range(0.4, 1.6);
            let im = if chart.root[v] {
                // keep root-bearing variables near the positive real axis
                rng.range(-0.2, 0.2)
            } else {
                rng.range(-0.6, 0.6)
            };
            Complex64::new(re, im)
        })
        .collect();
    let alpha = match &chart.mode.kind {
        ModeKind::Generic => Complex64::new(rng.range(0.3, 1.2), rng.range(0.3, 1.2)),
        ModeKind::Specialized(r) => {
            let rf = rat_to_f64(r);
            let root = Complex64::new(rf, 0.0).sqrt();
            if rng.bool() {
                root
            } else {
                -root
            }
        }
        ModeKind::Literal(v) => v.to_complex(),
    };
    SamplePoint { values, alpha }
}

/// Evaluate at a sampled point, retrying on singular points.
pub fn eval_sampled(e: &Expr, rng: &mut Rng) -> Result<Complex64> {
    for _ in 0..64 {
        let pt = sample_point(&e.chart, rng);
        match e.eval(&pt.values, pt.alpha) {
            Ok(v) if v.is_finite() => return Ok(v),
            Ok(_) | Err(Error::SingularPoint(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::SingularPoint(
        "no admissible sample point found".into(),
    ))
}

/// Numeric confirmation that an expression is identically zero: magnitudes
/// at `n` admissible points all within `tol`.
pub fn confirm_zero(e: &Expr, n: usize, tol: f64, seed: u64) -> Result<bool> {
    let mut rng = Rng::new(seed);
    for _ in 0..n {
        let v = eval_sampled(e, &mut rng)?;
        if v.norm() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numeric evidence that an expression is not identically zero: some point
/// among `n` has magnitude above `floor`.
pub fn confirm_nonzero(e: &Expr, n: usize, floor: f64, seed: u64) -> Result<bool> {
    let mut rng = Rng::new(seed);
    for _ in 0..n {
        let v = eval_sampled(e, &mut rng)?;
        if v.norm() > floor {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Central-difference partial derivative at a point, for testing symbolic
/// differentiation against an independent route.
pub fn central_difference(
    e: &Expr,
    var: usize,
    pt: &SamplePoint,
    h: f64,
) -> Result<Complex64> {
    let mut up = pt.values.clone();
    let mut dn = pt.values.clone();
    up[var] += Complex64::new(h, 0.0);
    dn[var] -= Complex64::new(h, 0.0);
    let fu = e.eval(&up, pt.alpha)?;
    let fd = e.eval(&dn, pt.alpha)?;
    Ok((fu - fd) / Complex64::new(2.0 * h, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::{ConstMode, Constant};
    use crate::lattice::ExpForm;
    use std::sync::Arc;

    #[test]
    fn rng_deterministic() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn zero_and_nonzero_confirmation() {
        let ch = Chart::new("c", &["x", "y"], &ConstMode::generic());
        let x = Expr::var_named(&ch, "x").unwrap();
        let y = Expr::var_named(&ch, "y").unwrap();
        // (x+y)^2 - x^2 - 2xy - y^2 == 0
        let z = x
            .add(&y)
            .unwrap()
            .pow(2)
            .unwrap()
            .sub(&x.pow(2).unwrap())
            .unwrap()
            .sub(&x.mul(&y).unwrap().scale(&Constant::int(&ch.mode, 2)).unwrap())
            .unwrap()
            .sub(&y.pow(2).unwrap())
            .unwrap();
        assert!(z.is_zero());
        assert!(confirm_zero(&z, 20, 1e-9, 0).unwrap());
        // x - y is not zero
        let nz = x.sub(&y).unwrap();
        assert!(confirm_nonzero(&nz, 20, 1e-6, 0).unwrap());
    }

    #[test]
    fn central_difference_matches_symbolic() {
        let ch = Chart::with_roots("m", &["x", "q"], &["q"], &ConstMode::generic());
        // f = sqrt(q) * x^2 + 1/q
        let sq = Expr::sqrt_var(&ch, 1).unwrap();
        let x = Expr::var_named(&ch, "x").unwrap();
        let q = Expr::var_named(&ch, "q").unwrap();
        let f = sq
            .mul(&x.pow(2).unwrap())
            .unwrap()
            .add(&q.inv().unwrap())
            .unwrap();
        let df = f.differentiate("q").unwrap();
        let mut rng = Rng::new(3);
        for _ in 0..10 {
            let pt = sample_point(&ch, &mut rng);
            let sym = df.eval(&pt.values, pt.alpha).unwrap();
            let num = central_difference(&f, 1, &pt, 1e-6).unwrap();
            assert!((sym - num).norm() < 1e-5, "sym {} vs num {}", sym, num);
        }
    }

    #[test]
    fn exp_atoms_sampled() {
        let ch: Arc<Chart> = Chart::new("r", &["x", "z"], &ConstMode::generic());
        let a = Constant::alpha(&ch.mode);
        let mut v = vec![Constant::zero(&ch.mode); 2];
        v[0] = a;
        let e = Expr::exp_form(&ch, ExpForm(v)).unwrap();
        // exp(ax)*exp(-ax) == 1 numerically
        let prod = e.mul(&e.inv().unwrap()).unwrap();
        assert!(confirm_zero(&prod.sub(&Expr::one(&ch)).unwrap(), 20, 1e-9, 1).unwrap());
    }
}
