//! Lattice normalization for exponential atoms.
//!
//! Every exponential atom carries a linear form in the chart variables with
//! constant coefficients. Atoms whose forms are Q-linearly dependent must be
//! rewritten as integer powers of common basis atoms, so that products of
//! exponentials cancel syntactically. The basis is the row Hermite normal
//! form of the lattice generated by the forms, computed over a fixed global
//! coordinatization, which makes it canonical per expression value.
//!
//! Form coefficients are required to be polynomial in alpha; this keeps the
//! coordinatization globally consistent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::constant::Constant;
use crate::error::{Error, Result};


/// A linear form in the chart variables: one constant coefficient per
/// variable slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpForm(pub Vec<Constant>);

impl ExpForm {
    pub fn zero_like(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &ExpForm) -> Result<ExpForm> {
        let v: Result<Vec<_>> = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ExpForm(v?))
    }

    pub fn scale_int(&self, k: &BigInt) -> Result<ExpForm> {
        let mode = self.0[0].mode.clone();
        let c = Constant::from_rat(&mode, BigRational::from(k.clone()));
        let v: Result<Vec<_>> = self.0.iter().map(|a| a.mul(&c)).collect();
        Ok(ExpForm(v?))
    }

    pub fn scale_rat(&self, r: &BigRational) -> Result<ExpForm> {
        let mode = self.0[0].mode.clone();
        let c = Constant::from_rat(&mode, r.clone());
        let v: Result<Vec<_>> = self.0.iter().map(|a| a.mul(&c)).collect();
        Ok(ExpForm(v?))
    }

    pub fn neg(&self) -> ExpForm {
        ExpForm(self.0.iter().map(|c| c.neg()).collect())
    }
}

/// Global coordinate axis for flattening: (variable slot, alpha degree,
/// number-field basis mask).
type Axis = (usize, usize, usize);

/// Flatten a form into rational coordinates on the global axes.
/// Errors when a coefficient is not polynomial in alpha.
fn flatten(form: &ExpForm) -> Result<BTreeMap<Axis, BigRational>> {
    let mut out = BTreeMap::new();
    for (slot, c) in form.0.iter().enumerate() {
        let coeffs = c.alpha_poly_coeffs().ok_or_else(|| {
            Error::NonLinearExponent(format!(
                "exponent coefficient `{}` is not polynomial in alpha",
                c
            ))
        })?;
        for (k, elem) in coeffs.iter().enumerate() {
            for m in 0..8 {
                let q = elem.coord(m);
                if !q.is_zero() {
                    out.insert((slot, k, m), q.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Translation-invariant total order on forms: lexicographic on the global
/// axes of the difference.
pub fn form_cmp(a: &ExpForm, b: &ExpForm) -> Result<std::cmp::Ordering> {
    use std::cmp::Ordering;
    let mut fa = flatten(a)?;
    let fb = flatten(b)?;
    for (axis, q) in fb {
        let e = fa.entry(axis).or_insert_with(BigRational::zero);
        *e -= q;
    }
    for (_, q) in fa {
        if q.is_positive() {
            return Ok(Ordering::Greater);
        }
        if q.is_negative() {
            return Ok(Ordering::Less);
        }
    }
    Ok(Ordering::Equal)
}

/// Canonical lattice basis for a set of forms, with the integer coordinates
/// of every input form over that basis.
pub struct LatticeBasis {
    pub basis: Vec<ExpForm>,
    /// coords[i] = integer coordinates of input form i over `basis`
    pub coords: Vec<Vec<i64>>,
}

pub fn lattice_basis(forms: &[ExpForm]) -> Result<LatticeBasis> {
    let nonzero: Vec<usize> = (0..forms.len()).filter(|&i| !forms[i].zero_like()).collect();
    if nonzero.is_empty() {
        return Ok(LatticeBasis {
            basis: vec![],
            coords: vec![vec![]; forms.len()],
        });
    }

    // global axes present in any form, in order
    let flats: Vec<BTreeMap<Axis, BigRational>> = {
        let mut v = Vec::with_capacity(forms.len());
        for f in forms {
            v.push(flatten(f)?);
        }
        v
    };
    let mut axes: Vec<Axis> = flats
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    axes.sort();
    let ncols = axes.len();

    // common denominator so rows are integer
    let mut denom = BigInt::one();
    for m in &flats {
        for q in m.values() {
            denom = lcm_big(&denom, q.denom());
        }
    }

    // integer rows with tracked combinations over the input forms
    let mut rows: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    for &i in &nonzero {
        let mut row = vec![BigInt::zero(); ncols];
        for (axis, q) in &flats[i] {
            let col = axes.binary_search(axis).unwrap();
            row[col] = q.numer() * (&denom / q.denom());
        }
        let mut comb = vec![BigInt::zero(); forms.len()];
        comb[i] = BigInt::one();
        rows.push((row, comb));
    }

    // row Hermite normal form with transformation tracking
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut top = 0usize;
    for col in 0..ncols {
        // eliminate below `top` by gcd steps
        loop {
            let mut idx: Vec<usize> = (top..rows.len())
                .filter(|&r| !rows[r].0[col].is_zero())
                .collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by(|&a, &b| {
                rows[a].0[col]
                    .magnitude()
                    .cmp(rows[b].0[col].magnitude())
            });
            let smallest = idx[0];
            for &r in &idx[1..] {
                let q = div_round(&rows[r].0[col], &rows[smallest].0[col]);
                if !q.is_zero() {
                    row_sub(&mut rows, r, smallest, &q);
                }
            }
        }
        let found = (top..rows.len()).find(|&r| !rows[r].0[col].is_zero());
        if let Some(r) = found {
            rows.swap(top, r);
            if rows[top].0[col].is_negative() {
                row_negate(&mut rows, top);
            }
            // reduce entries above the pivot into [0, pivot)
            for r in 0..top {
                let q = div_floor_big(&rows[r].0[col], &rows[top].0[col]);
                if !q.is_zero() {
                    row_sub(&mut rows, r, top, &q);
                }
            }
            pivots.push((top, col));
            top += 1;
        }
    }
    rows.truncate(top);

    // basis forms = integer combinations of the input forms
    let mut basis = Vec::with_capacity(rows.len());
    for (_, comb) in &rows {
        let mut acc: Option<ExpForm> = None;
        for (i, k) in comb.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            let t = forms[i].scale_int(k)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t)?,
            });
        }
        basis.push(acc.expect("basis row cannot be empty"));
    }

    // coordinates of each input over the echelon rows
    let mut coords = vec![vec![0i64; rows.len()]; forms.len()];
    for i in 0..forms.len() {
        let mut w = vec![BigInt::zero(); ncols];
        for (axis, q) in &flats[i] {
            let col = axes.binary_search(axis).unwrap();
            w[col] = q.numer() * (&denom / q.denom());
        }
        for (bi, &(_, col)) in pivots.iter().enumerate() {
            let p = &rows[bi].0[col];
            if w[col].is_zero() {
                continue;
            }
            let (q, r) = num_integer::div_rem_big(&w[col], p);
            assert!(r.is_zero(), "form is not in its own lattice");
            for c in 0..ncols {
                let t = &q * &rows[bi].0[c];
                w[c] -= t;
            }
            coords[i][bi] = bigint_to_i64(&q);
        }
        assert!(w.iter().all(|x| x.is_zero()), "lattice reduction failed");
    }

    Ok(LatticeBasis { basis, coords })
}

fn row_sub(rows: &mut [(Vec<BigInt>, Vec<BigInt>)], dst: usize, src: usize, q: &BigInt) {
    let (srow, scomb) = (rows[src].0.clone(), rows[src].1.clone());
    for (d, s) in rows[dst].0.iter_mut().zip(&srow) {
        *d -= q * s;
    }
    for (d, s) in rows[dst].1.iter_mut().zip(&scomb) {
        *d -= q * s;
    }
}

fn row_negate(rows: &mut [(Vec<BigInt>, Vec<BigInt>)], r: usize) {
    for v in rows[r].0.iter_mut() {
        *v = -v.clone();
    }
    for v in rows[r].1.iter_mut() {
        *v = -v.clone();
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer quotient, ties toward zero: shrinks |a mod b| fast
    let two = BigInt::from(2);
    let (q, r) = (a / b, a % b);
    if (&r * &two).magnitude() > b.magnitude() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn div_floor_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    if !r.is_zero() && (r.is_negative() != b.is_negative()) {
        q - 1
    } else {
        q
    }
}

mod num_integer {
    use num_bigint::BigInt;
    use num_traits::Zero;

    pub fn div_rem_big(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        if b.is_zero() {
            panic!("division by zero");
        }
        (a / b, a % b)
    }
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_bigint::Sign;
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let g = gcd_big(a, b);
    let l = (a / &g) * b;
    match l.sign() {
        Sign::Minus => -l,
        _ => l,
    }
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.magnitude().clone();
    let mut y = b.magnitude().clone();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    BigInt::from(x)
}

fn bigint_to_i64(n: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    n.to_i64().expect("lattice coordinate exceeds i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::{ConstMode, Constant};
    use crate::num::rat;

    fn form(coeffs: &[(usize, Constant)], n: usize) -> ExpForm {
        let mode = coeffs[0].1.mode.clone();
        let mut v = vec![Constant::zero(&mode); n];
        for (i, c) in coeffs {
            v[*i] = c.clone();
        }
        ExpForm(v)
    }

    #[test]
    fn merges_dependent_forms() {
        let m = ConstMode::generic();
        let a = Constant::alpha(&m);
        // forms alpha*x and alpha*x/2 over 2 variables
        let f1 = form(&[(0, a.clone())], 2);
        let f2 = form(&[(0, a.mul(&Constant::ratio(&m, 1, 2)).unwrap())], 2);
        let lb = lattice_basis(&[f1.clone(), f2.clone()]).unwrap();
        assert_eq!(lb.basis.len(), 1);
        // f1 = 2 * basis, f2 = 1 * basis
        assert_eq!(lb.coords[0], vec![2]);
        assert_eq!(lb.coords[1], vec![1]);
    }

    #[test]
    fn independent_forms_stay_apart() {
        let m = ConstMode::generic();
        let a = Constant::alpha(&m);
        let one = Constant::one(&m);
        let f1 = form(&[(0, a)], 2);
        let f2 = form(&[(1, one)], 2);
        let lb = lattice_basis(&[f1, f2]).unwrap();
        assert_eq!(lb.basis.len(), 2);
    }

    #[test]
    fn opposite_forms_merge() {
        let m = ConstMode::generic();
        let i = Constant::i(&m);
        let f1 = form(&[(0, i.clone())], 1);
        let f2 = form(&[(0, i.neg())], 1);
        let lb = lattice_basis(&[f1, f2]).unwrap();
        assert_eq!(lb.basis.len(), 1);
        assert_eq!(lb.coords[0][0], -lb.coords[1][0]);
    }

    #[test]
    fn rational_refinement() {
        let m = ConstMode::generic();
        // x and x*2/3: common basis x/3
        let f1 = form(&[(0, Constant::one(&m))], 1);
        let f2 = form(&[(0, Constant::ratio(&m, 2, 3))], 1);
        let lb = lattice_basis(&[f1.clone(), f2]).unwrap();
        assert_eq!(lb.basis.len(), 1);
        assert_eq!(lb.coords[0], vec![3]);
        assert_eq!(lb.coords[1], vec![2]);
        // basis form is x/3
        assert_eq!(
            form_cmp(&lb.basis[0], &f1.scale_rat(&rat(1, 3)).unwrap()).unwrap(),
            std::cmp::Ordering::Equal
        );
    }

    #[test]
    fn form_order_translation_invariant() {
        let m = ConstMode::generic();
        let f1 = form(&[(0, Constant::one(&m))], 2);
        let f2 = form(&[(1, Constant::one(&m))], 2);
        let d = form(&[(0, Constant::int(&m, 5)), (1, Constant::int(&m, -7))], 2);
        let c1 = form_cmp(&f1, &f2).unwrap();
        let c2 = form_cmp(&f1.add(&d).unwrap(), &f2.add(&d).unwrap()).unwrap();
        assert_eq!(c1, c2);
    }
}
