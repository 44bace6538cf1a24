//! Seeded random instances for the property suites: expressions, forms,
//! fields, and polynomial coordinate maps.

use std::sync::Arc;

use crate::chart::Chart;
use crate::constant::{ConstMode, Constant};
use crate::error::Result;
use crate::expr::Expr;
use crate::exterior::{CoordMap, DiffForm, VectorField};
use crate::lattice::ExpForm;
use crate::numeric::Rng;

pub fn chart(mode: &Arc<ConstMode>) -> Arc<Chart> {
    Chart::with_roots("gen", &["x", "y", "z", "p", "q"], &["q"], mode)
}

fn random_constant(rng: &mut Rng, mode: &Arc<ConstMode>) -> Constant {
    let n = rng.below(7) as i64 - 3;
    let d = 1 + rng.below(3) as i64;
    let mut c = Constant::ratio(mode, n, d);
    if rng.below(4) == 0 {
        c = c.mul(&Constant::i(mode)).unwrap();
    }
    if rng.below(6) == 0 {
        c = c.add(&Constant::sqrt2(mode)).unwrap();
    }
    if rng.below(8) == 0 {
        c = c.mul(&Constant::alpha(mode)).unwrap();
    }
    c
}

/// A random expression of bounded depth: polynomial atoms, fractions,
/// exponentials of linear forms, and square roots of the root-bearing
/// variable.
pub fn expr(rng: &mut Rng, ch: &Arc<Chart>, depth: usize) -> Result<Expr> {
    let mode = &ch.mode;
    if depth == 0 {
        return Ok(match rng.below(8) {
            0 => Expr::constant(ch, random_constant(rng, mode)),
            1 => Expr::sqrt_var(ch, ch.index_of("q")?)?,
            2 | 3 => {
                // exponential of a small linear form
                let mut v = vec![Constant::zero(mode); ch.dim()];
                let slot = rng.below(3);
                v[slot] = match rng.below(3) {
                    0 => Constant::ratio(mode, 1, 2),
                    1 => Constant::i(mode),
                    _ => Constant::alpha(mode),
                };
                Expr::exp_form(ch, ExpForm(v))?
            }
            k => Expr::var(ch, (k - 4) % ch.dim()),
        });
    }
    let a = expr(rng, ch, depth - 1)?;
    let b = expr(rng, ch, depth - 1)?;
    Ok(match rng.below(6) {
        0 | 1 => a.add(&b)?,
        2 => a.sub(&b)?,
        3 | 4 => a.mul(&b)?,
        _ => {
            if b.is_zero() {
                a
            } else {
                a.div(&b)?
            }
        }
    })
}

/// A random polynomial expression (no roots or exponentials), for maps.
pub fn poly_expr(rng: &mut Rng, ch: &Arc<Chart>, depth: usize) -> Result<Expr> {
    let mode = &ch.mode;
    if depth == 0 {
        return Ok(match rng.below(5) {
            0 => Expr::constant(ch, random_constant(rng, mode)),
            k => Expr::var(ch, (k - 1) % ch.dim()),
        });
    }
    let a = poly_expr(rng, ch, depth - 1)?;
    let b = poly_expr(rng, ch, depth - 1)?;
    Ok(match rng.below(4) {
        0 | 1 => a.add(&b)?,
        _ => a.mul(&b)?,
    })
}

pub fn one_form(rng: &mut Rng, ch: &Arc<Chart>, depth: usize) -> Result<DiffForm> {
    let mut f = DiffForm::zero(ch, 1);
    for v in 0..ch.dim() {
        if rng.below(2) == 0 {
            let e = expr(rng, ch, depth)?;
            if !e.is_zero() {
                f.comps.insert(vec![v], e);
            }
        }
    }
    Ok(f)
}

pub fn form(rng: &mut Rng, ch: &Arc<Chart>, degree: usize, depth: usize) -> Result<DiffForm> {
    let mut f = DiffForm::zero(ch, degree);
    let n = ch.dim();
    for _ in 0..3 {
        // random strictly increasing tuple
        let mut key: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.below(i + 1);
            key.swap(i, j);
        }
        key.truncate(degree);
        key.sort_unstable();
        key.dedup();
        if key.len() != degree {
            continue;
        }
        let e = expr(rng, ch, depth)?;
        if !e.is_zero() {
            f.comps.insert(key, e);
        }
    }
    Ok(f)
}

pub fn field(rng: &mut Rng, ch: &Arc<Chart>, depth: usize) -> Result<VectorField> {
    let mut f = VectorField::zero(ch);
    for v in 0..ch.dim() {
        if rng.below(2) == 0 {
            f.comps[v] = expr(rng, ch, depth)?;
        }
    }
    Ok(f)
}

/// A random polynomial map between two copies of the chart (no inverse).
pub fn poly_map(rng: &mut Rng, src: &Arc<Chart>, dst: &Arc<Chart>) -> Result<CoordMap> {
    let comps: Result<Vec<Expr>> = (0..dst.dim())
        .map(|_| poly_expr(rng, src, 2))
        .collect();
    CoordMap::new_plain("random", src, dst, comps?)
}
