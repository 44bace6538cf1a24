//! Exact arithmetic in the number field Q(i, sqrt2, sqrt3).
//!
//! Elements are stored on the Q-basis {1, i, s2, i*s2, s3, i*s3, s6, i*s6}
//! with s2 = sqrt(2), s3 = sqrt(3), s6 = s2*s3. The basis index is a bitmask:
//! bit 0 = i, bit 1 = s2, bit 2 = s3.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// An element of Q(i, sqrt2, sqrt3).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumElem {
    coords: [Rat; 8],
}

const MASK_I: usize = 1;
const MASK_S2: usize = 2;
const MASK_S3: usize = 4;

impl NumElem {
    pub fn zero() -> Self {
        NumElem {
            coords: std::array::from_fn(|_| Rat::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut e = Self::zero();
        e.coords[0] = r;
        e
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn i() -> Self {
        Self::basis(MASK_I)
    }

    pub fn sqrt2() -> Self {
        Self::basis(MASK_S2)
    }

    pub fn sqrt3() -> Self {
        Self::basis(MASK_S3)
    }

    fn basis(mask: usize) -> Self {
        let mut e = Self::zero();
        e.coords[mask] = Rat::one();
        e
    }

    pub fn coord(&self, mask: usize) -> &Rat {
        &self.coords[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in the real subfield Q(sqrt2, sqrt3).
    pub fn is_real(&self) -> bool {
        (0..8).all(|m| m & MASK_I == 0 || self.coords[m].is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in 0..8 {
            out.coords[m] += &other.coords[m];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in 0..8 {
            out.coords[m] -= &other.coords[m];
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for m in 0..8 {
            out.coords[m] = -out.coords[m].clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in 0..8 {
            if self.coords[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if other.coords[b].is_zero() {
                    continue;
                }
                let mut c = &self.coords[a] * &other.coords[b];
                // squared generators contribute carry factors
                if a & b & MASK_I != 0 {
                    c = -c;
                }
                if a & b & MASK_S2 != 0 {
                    c *= rat_int(2);
                }
                if a & b & MASK_S3 != 0 {
                    c *= rat_int(3);
                }
                out.coords[a ^ b] += c;
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = self.clone();
        for m in 0..8 {
            out.coords[m] *= r;
        }
        out
    }

    /// Galois conjugate obtained by negating the chosen generators.
    fn galois(&self, flip: usize) -> Self {
        let mut out = self.clone();
        for m in 0..8 {
            if (m & flip).count_ones() % 2 == 1 {
                out.coords[m] = -out.coords[m].clone();
            }
        }
        out
    }

    /// Complex conjugation: negates i, fixes the real generators.
    pub fn conj(&self) -> Self {
        self.galois(MASK_I)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero constant".into()));
        }
        // product of the seven nontrivial Galois conjugates
        let mut prod = NumElem::one();
        for flip in 1..8 {
            prod = prod.mul(&self.galois(flip));
        }
        let norm = self.mul(&prod);
        debug_assert!(norm.is_rational(), "field norm must be rational");
        let n = norm.coords[0].clone();
        if n.is_zero() {
            return Err(Error::DivisionByZero("zero norm".into()));
        }
        Ok(prod.scale(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Real and imaginary parts as elements of Q(sqrt2, sqrt3).
    pub fn re_im(&self) -> (Self, Self) {
        let mut re = Self::zero();
        let mut im = Self::zero();
        for m in 0..8 {
            if m & MASK_I == 0 {
                re.coords[m] = self.coords[m].clone();
            } else {
                im.coords[m ^ MASK_I] = self.coords[m].clone();
            }
        }
        (re, im)
    }

    /// Evaluate to a complex double.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let s2 = std::f64::consts::SQRT_2;
        let s3 = 3.0_f64.sqrt();
        let factors = [1.0, 1.0, s2, s2, s3, s3, s2 * s3, s2 * s3];
        let mut re = 0.0;
        let mut im = 0.0;
        for m in 0..8 {
            let v = rat_to_f64(&self.coords[m]) * factors[m];
            if m & MASK_I == 0 {
                re += v;
            } else {
                im += v;
            }
        }
        num_complex::Complex64::new(re, im)
    }

    /// Exact sign of a real element. Errors on elements with an imaginary part.
    pub fn sign(&self) -> Result<i32> {
        if !self.is_real() {
            return Err(Error::ComplexConstants(format!("{}", self)));
        }
        if self.is_zero() {
            return Ok(0);
        }
        // interval arithmetic with rational approximations of sqrt2/sqrt3,
        // refined until the interval excludes zero
        let mut prec = rat(1, 1000);
        loop {
            let (lo2, hi2) = sqrt_bounds(2, &prec);
            let (lo3, hi3) = sqrt_bounds(3, &prec);
            let mut lo = Rat::zero();
            let mut hi = Rat::zero();
            for (m, c) in self.coords.iter().enumerate() {
                if c.is_zero() || m & MASK_I != 0 {
                    continue;
                }
                let (flo, fhi): (Rat, Rat) = match m {
                    0 => (Rat::one(), Rat::one()),
                    2 => (lo2.clone(), hi2.clone()),
                    4 => (lo3.clone(), hi3.clone()),
                    6 => (&lo2 * &lo3, &hi2 * &hi3),
                    _ => unreachable!(),
                };
                if c.is_positive() {
                    lo += c * &flo;
                    hi += c * &fhi;
                } else {
                    lo += c * &fhi;
                    hi += c * &flo;
                }
            }
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            prec /= rat_int(1000);
        }
    }
}

/// Rational lower/upper bounds on sqrt(n) with gap below `prec`.
fn sqrt_bounds(n: i64, prec: &Rat) -> (Rat, Rat) {
    // Newton iteration from above
    let nn = rat_int(n);
    let mut x = rat_int(2);
    loop {
        let next = (&x + &nn / &x) / rat_int(2);
        let lower = &nn / &next;
        if &next - &lower < *prec {
            return (lower, next);
        }
        x = next;
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // exact conversion is fine at the magnitudes we use
    let nf = bigint_to_f64(n);
    let df = bigint_to_f64(d);
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::INFINITY)
}

impl fmt::Display for NumElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "i", "sqrt2", "i*sqrt2", "sqrt3", "i*sqrt3", "sqrt2*sqrt3", "i*sqrt2*sqrt3"];
        let mut first = true;
        for m in 0..8 {
            let c = &self.coords[m];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if names[m].is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", names[m])?;
            } else {
                write!(f, "{}*{}", c, names[m])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NumElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = NumElem::i();
        assert_eq!(i.mul(&i), NumElem::from_int(-1));
    }

    #[test]
    fn radical_relations() {
        let s2 = NumElem::sqrt2();
        let s3 = NumElem::sqrt3();
        assert_eq!(s2.mul(&s2), NumElem::from_int(2));
        assert_eq!(s3.mul(&s3), NumElem::from_int(3));
        let s6 = s2.mul(&s3);
        assert_eq!(s6.mul(&s6), NumElem::from_int(6));
    }

    #[test]
    fn inverse_roundtrip() {
        // (1 + i + sqrt2/2 - 3 sqrt3 + sqrt6/5)^-1
        let e = NumElem::one()
            .add(&NumElem::i())
            .add(&NumElem::sqrt2().scale(&rat(1, 2)))
            .add(&NumElem::sqrt3().scale(&rat(-3, 1)))
            .add(&NumElem::sqrt2().mul(&NumElem::sqrt3()).scale(&rat(1, 5)));
        let inv = e.inv().unwrap();
        assert!(e.mul(&inv).is_one());
    }

    #[test]
    fn conjugation_negates_i_only() {
        let e = NumElem::i().add(&NumElem::sqrt2());
        let c = e.conj();
        assert_eq!(c, NumElem::sqrt2().sub(&NumElem::i()));
        assert_eq!(c.conj(), e);
    }

    #[test]
    fn exact_sign() {
        // sqrt6 - 2 > 0, sqrt2 + sqrt3 - 4 < 0
        let s6 = NumElem::sqrt2().mul(&NumElem::sqrt3());
        assert_eq!(s6.sub(&NumElem::from_int(2)).sign().unwrap(), 1);
        let e = NumElem::sqrt2()
            .add(&NumElem::sqrt3())
            .sub(&NumElem::from_int(4));
        assert_eq!(e.sign().unwrap(), -1);
        assert_eq!(NumElem::zero().sign().unwrap(), 0);
        assert!(NumElem::i().sign().is_err());
    }

    #[test]
    fn tight_sign() {
        // 1393/985 and 3363/2378 are convergents sandwiching sqrt2
        let below = NumElem::sqrt2().sub(&NumElem::from_rat(rat(1393, 985)));
        assert_eq!(below.sign().unwrap(), 1);
        let above = NumElem::sqrt2().sub(&NumElem::from_rat(rat(3363, 2378)));
        assert_eq!(above.sign().unwrap(), -1);
    }
}
