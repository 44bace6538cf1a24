//! The constant field of the engine: Q(i, sqrt2, sqrt3) extended by the
//! formal parameter alpha.
//!
//! Three modes govern alpha:
//! - `Generic`: alpha is transcendental; constants are reduced fractions of
//!   alpha-polynomials over the number field.
//! - `Specialized(r)`: alpha satisfies alpha^2 = r for a rational r; constants
//!   are reduced representatives of degree < 2. The quotient ring may contain
//!   zero divisors, in which case division reports `DivisionByZero`.
//! - `Literal(v)`: alpha stands for the concrete number v; constants never
//!   mention alpha.
//!
//! Conjugation fixes the radicals, negates i, and maps alpha by the declared
//! rule (the default negates alpha, matching imaginary alpha).

use num_traits::Signed;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::num::{rat, NumElem, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaConj {
    Negate,
    Fix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModeKind {
    Generic,
    Specialized(Rat),
    Literal(NumElem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstMode {
    pub kind: ModeKind,
    pub alpha_conj: AlphaConj,
}

impl ConstMode {
    pub fn generic() -> Arc<Self> {
        Arc::new(ConstMode {
            kind: ModeKind::Generic,
            alpha_conj: AlphaConj::Negate,
        })
    }

    pub fn specialized(r: Rat) -> Arc<Self> {
        let alpha_conj = if r.is_negative() {
            AlphaConj::Negate
        } else {
            AlphaConj::Fix
        };
        Arc::new(ConstMode {
            kind: ModeKind::Specialized(r),
            alpha_conj,
        })
    }

    pub fn literal(v: NumElem) -> Arc<Self> {
        Arc::new(ConstMode {
            kind: ModeKind::Literal(v),
            alpha_conj: AlphaConj::Negate,
        })
    }
}

/// An element of the constant field, as a reduced fraction of
/// alpha-polynomials with `NumElem` coefficients. Coefficient vectors are
/// ascending in the alpha degree and never carry trailing zeros. The
/// denominator is monic and alpha-free in `Specialized`/`Literal` modes.
#[derive(Clone)]
pub struct Constant {
    pub mode: Arc<ConstMode>,
    num: Vec<NumElem>,
    den: Vec<NumElem>,
}

fn trim(v: &mut Vec<NumElem>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_add(a: &[NumElem], b: &[NumElem]) -> Vec<NumElem> {
    let mut out = vec![NumElem::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    trim(&mut out);
    out
}

fn poly_neg(a: &[NumElem]) -> Vec<NumElem> {
    a.iter().map(|c| c.neg()).collect()
}

fn poly_mul(a: &[NumElem], b: &[NumElem]) -> Vec<NumElem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![NumElem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

fn poly_scale(a: &[NumElem], s: &NumElem) -> Vec<NumElem> {
    let mut out: Vec<NumElem> = a.iter().map(|c| c.mul(s)).collect();
    trim(&mut out);
    out
}

/// Euclidean division over the number field: (quotient, remainder).
fn poly_divrem(a: &[NumElem], b: &[NumElem]) -> Result<(Vec<NumElem>, Vec<NumElem>)> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    let lead = b.last().unwrap().inv()?;
    let db = b.len() - 1;
    let mut quo = vec![NumElem::zero(); rem.len().saturating_sub(db)];
    while rem.len() >= b.len() && !rem.is_empty() {
        let dr = rem.len() - 1;
        let coef = rem.last().unwrap().mul(&lead);
        quo[dr - db] = coef.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = coef.mul(bc);
            rem[dr - db + j] = rem[dr - db + j].sub(&t);
        }
        trim(&mut rem);
    }
    trim(&mut quo);
    Ok((quo, rem))
}

fn poly_gcd(a: &[NumElem], b: &[NumElem]) -> Result<Vec<NumElem>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y)?;
        x = y;
        y = r;
    }
    if let Some(lead) = x.last() {
        let inv = lead.inv()?;
        x = poly_scale(&x, &inv);
    }
    Ok(x)
}

impl Constant {
    fn reduce(mode: Arc<ConstMode>, mut num: Vec<NumElem>, mut den: Vec<NumElem>) -> Result<Self> {
        trim(&mut num);
        trim(&mut den);
        if den.is_empty() {
            return Err(Error::DivisionByZero("constant denominator is zero".into()));
        }
        match &mode.kind {
            ModeKind::Generic => {
                if num.is_empty() {
                    return Ok(Constant {
                        mode,
                        num,
                        den: vec![NumElem::one()],
                    });
                }
                let g = poly_gcd(&num, &den)?;
                if g.len() > 1 {
                    num = poly_divrem(&num, &g)?.0;
                    den = poly_divrem(&den, &g)?.0;
                }
                let lead = den.last().unwrap().inv()?;
                num = poly_scale(&num, &lead);
                den = poly_scale(&den, &lead);
                Ok(Constant { mode, num, den })
            }
            ModeKind::Specialized(r) => {
                let rel = NumElem::from_rat(r.clone());
                num = reduce_mod_relation(num, &rel);
                den = reduce_mod_relation(den, &rel);
                if den.is_empty() {
                    return Err(Error::DivisionByZero(
                        "denominator vanishes under the alpha relation".into(),
                    ));
                }
                // force denominator 1 by multiplying with its quotient-ring inverse
                if den.len() != 1 || !den[0].is_one() {
                    let inv = quotient_inverse(&den, &rel)?;
                    num = reduce_mod_relation(poly_mul(&num, &inv), &rel);
                    den = vec![NumElem::one()];
                }
                Ok(Constant { mode, num, den })
            }
            ModeKind::Literal(v) => {
                let n = eval_poly(&num, v);
                let d = eval_poly(&den, v);
                if d.is_zero() {
                    return Err(Error::DivisionByZero(
                        "denominator vanishes at the alpha value".into(),
                    ));
                }
                let val = n.div(&d)?;
                let num = if val.is_zero() { vec![] } else { vec![val] };
                Ok(Constant {
                    mode,
                    num,
                    den: vec![NumElem::one()],
                })
            }
        }
    }

    pub fn zero(mode: &Arc<ConstMode>) -> Self {
        Constant {
            mode: mode.clone(),
            num: vec![],
            den: vec![NumElem::one()],
        }
    }

    pub fn one(mode: &Arc<ConstMode>) -> Self {
        Self::from_num(mode, NumElem::one())
    }

    pub fn from_num(mode: &Arc<ConstMode>, v: NumElem) -> Self {
        let num = if v.is_zero() { vec![] } else { vec![v] };
        Constant {
            mode: mode.clone(),
            num,
            den: vec![NumElem::one()],
        }
    }

    pub fn from_rat(mode: &Arc<ConstMode>, r: Rat) -> Self {
        Self::from_num(mode, NumElem::from_rat(r))
    }

    pub fn int(mode: &Arc<ConstMode>, n: i64) -> Self {
        Self::from_num(mode, NumElem::from_int(n))
    }

    pub fn ratio(mode: &Arc<ConstMode>, n: i64, d: i64) -> Self {
        Self::from_num(mode, NumElem::from_rat(rat(n, d)))
    }

    pub fn i(mode: &Arc<ConstMode>) -> Self {
        Self::from_num(mode, NumElem::i())
    }

    pub fn sqrt2(mode: &Arc<ConstMode>) -> Self {
        Self::from_num(mode, NumElem::sqrt2())
    }

    pub fn sqrt3(mode: &Arc<ConstMode>) -> Self {
        Self::from_num(mode, NumElem::sqrt3())
    }

    /// The parameter alpha in the given mode.
    pub fn alpha(mode: &Arc<ConstMode>) -> Self {
        match &mode.kind {
            ModeKind::Literal(v) => Self::from_num(mode, v.clone()),
            _ => Constant {
                mode: mode.clone(),
                num: vec![NumElem::zero(), NumElem::one()],
                den: vec![NumElem::one()],
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.len() == 1
            && self.den[0].is_one()
            && self.num.len() == 1
            && self.num[0].is_one()
    }

    pub fn alpha_degree(&self) -> usize {
        self.num.len().saturating_sub(1).max(self.den.len().saturating_sub(1))
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::ModeClash)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let num = poly_add(
            &poly_mul(&self.num, &other.den),
            &poly_mul(&other.num, &self.den),
        );
        let den = poly_mul(&self.den, &other.den);
        Constant::reduce(self.mode.clone(), num, den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Constant {
            mode: self.mode.clone(),
            num: poly_neg(&self.num),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        Constant::reduce(
            self.mode.clone(),
            poly_mul(&self.num, &other.num),
            poly_mul(&self.den, &other.den),
        )
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero constant".into()));
        }
        Constant::reduce(self.mode.clone(), self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn conj(&self) -> Result<Self> {
        let map = |p: &[NumElem]| -> Vec<NumElem> {
            p.iter()
                .enumerate()
                .map(|(k, c)| {
                    let mut v = c.conj();
                    if matches!(self.mode.alpha_conj, AlphaConj::Negate) && k % 2 == 1 {
                        v = v.neg();
                    }
                    v
                })
                .collect()
        };
        Constant::reduce(self.mode.clone(), map(&self.num), map(&self.den))
    }

    /// Map a generic constant into `Specialized(r)` mode.
    pub fn specialize(&self, target: &Arc<ConstMode>) -> Result<Self> {
        assert!(matches!(self.mode.kind, ModeKind::Generic));
        Constant::reduce(target.clone(), self.num.clone(), self.den.clone())
    }

    /// Map a generic constant into `Literal(v)` mode.
    pub fn substitute_alpha(&self, target: &Arc<ConstMode>) -> Result<Self> {
        assert!(matches!(self.mode.kind, ModeKind::Generic));
        Constant::reduce(target.clone(), self.num.clone(), self.den.clone())
    }

    /// Numeric value given a complex value for alpha.
    pub fn to_complex(&self, alpha: num_complex::Complex64) -> num_complex::Complex64 {
        let ev = |p: &[NumElem]| {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for c in p.iter().rev() {
                acc = acc * alpha + c.to_complex();
            }
            acc
        };
        let d = ev(&self.den);
        ev(&self.num) / d
    }

    /// Coefficients of the alpha-polynomial, when the constant has a trivial
    /// denominator. Used by the exponent-lattice coordinatization.
    pub(crate) fn alpha_poly_coeffs(&self) -> Option<&[NumElem]> {
        if self.den.len() == 1 && self.den[0].is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Raw numerator/denominator alpha-polynomials, for printing.
    pub(crate) fn fraction_parts(&self) -> (Vec<NumElem>, Vec<NumElem>) {
        (self.num.clone(), self.den.clone())
    }

    /// The constant as an element of the plain number field, if alpha-free.
    pub fn as_numelem(&self) -> Option<NumElem> {
        if self.den.len() == 1 && self.den[0].is_one() {
            match self.num.len() {
                0 => Some(NumElem::zero()),
                1 => Some(self.num[0].clone()),
                _ => None,
            }
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.as_numelem().and_then(|e| e.as_rational().cloned())
    }

    /// True when no imaginary unit and no alpha of odd degree appears
    /// (alpha itself may be imaginary; callers decide what "real" means).
    pub fn is_real_numeric(&self) -> bool {
        self.as_numelem().map_or(false, |e| e.is_real())
    }

    pub fn sign(&self) -> Result<i32> {
        match self.as_numelem() {
            Some(e) => e.sign(),
            None => Err(Error::ComplexConstants(format!("{}", self))),
        }
    }

    /// Deterministic total order used for canonical printing and map keys.
    pub fn cmp_key(&self) -> (Vec<NumElem>, Vec<NumElem>) {
        (self.num.clone(), self.den.clone())
    }
}

fn eval_poly(p: &[NumElem], v: &NumElem) -> NumElem {
    let mut acc = NumElem::zero();
    for c in p.iter().rev() {
        acc = acc.mul(v).add(c);
    }
    acc
}

fn reduce_mod_relation(p: Vec<NumElem>, r: &NumElem) -> Vec<NumElem> {
    // alpha^2 -> r
    let mut out = vec![NumElem::zero(), NumElem::zero()];
    let mut power = NumElem::one(); // r^(k/2)
    for (k, c) in p.iter().enumerate() {
        if k >= 2 && k % 2 == 0 {
            power = power.mul(r);
        }
        out[k % 2] = out[k % 2].add(&c.mul(&power));
    }
    trim(&mut out);
    out
}

/// Inverse of a + b*alpha in F[alpha]/(alpha^2 - r).
fn quotient_inverse(p: &[NumElem], r: &NumElem) -> Result<Vec<NumElem>> {
    let a = p.first().cloned().unwrap_or_else(NumElem::zero);
    let b = p.get(1).cloned().unwrap_or_else(NumElem::zero);
    // (a + b alpha)(a - b alpha) = a^2 - r b^2
    let norm = a.mul(&a).sub(&r.mul(&b.mul(&b)));
    if norm.is_zero() {
        return Err(Error::DivisionByZero(
            "zero divisor under the alpha relation".into(),
        ));
    }
    let ninv = norm.inv()?;
    let mut out = vec![a.mul(&ninv), b.neg().mul(&ninv)];
    trim(&mut out);
    Ok(out)
}

impl PartialEq for Constant {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.num == other.num && self.den == other.den
    }
}

impl Eq for Constant {}

impl std::hash::Hash for Constant {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for Constant {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Constant {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.num
            .cmp(&other.num)
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &[NumElem], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            let mut first = true;
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match k {
                    0 => write!(f, "{}", c)?,
                    1 => {
                        if c.is_one() {
                            write!(f, "alpha")?
                        } else {
                            write!(f, "({})*alpha", c)?
                        }
                    }
                    _ => {
                        if c.is_one() {
                            write!(f, "alpha^{}", k)?
                        } else {
                            write!(f, "({})*alpha^{}", c, k)?
                        }
                    }
                }
            }
            if first {
                write!(f, "0")?;
            }
            Ok(())
        };
        if self.den.len() == 1 && self.den[0].is_one() {
            show(&self.num, f)
        } else {
            write!(f, "(")?;
            show(&self.num, f)?;
            write!(f, ")/(")?;
            show(&self.den, f)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_fraction_reduces() {
        let m = ConstMode::generic();
        let a = Constant::alpha(&m);
        // (alpha^2 - 1)/(alpha - 1) = alpha + 1
        let num = a.mul(&a).unwrap().sub(&Constant::one(&m)).unwrap();
        let den = a.sub(&Constant::one(&m)).unwrap();
        let q = num.div(&den).unwrap();
        let expect = a.add(&Constant::one(&m)).unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn specialize_examples() {
        // alpha^2 + 1/9 -> 0 at r = -1/9
        let g = ConstMode::generic();
        let s = ConstMode::specialized(rat(-1, 9));
        let a = Constant::alpha(&g);
        let e = a.mul(&a).unwrap().add(&Constant::ratio(&g, 1, 9)).unwrap();
        assert!(e.specialize(&s).unwrap().is_zero());

        // (15 alpha^4 - 10 alpha^2 - 1)/4 at r = -1/9 -> 2/27
        let a2 = a.mul(&a).unwrap();
        let a4 = a2.mul(&a2).unwrap();
        let e = a4
            .mul(&Constant::int(&g, 15))
            .unwrap()
            .sub(&a2.mul(&Constant::int(&g, 10)).unwrap())
            .unwrap()
            .sub(&Constant::one(&g))
            .unwrap()
            .div(&Constant::int(&g, 4))
            .unwrap();
        let v = e.specialize(&s).unwrap();
        assert_eq!(v, Constant::ratio(&s, 2, 27));

        // generic alpha^4 stays degree 4
        assert_eq!(a4.alpha_degree(), 4);
    }

    #[test]
    fn literal_mode_folds_alpha() {
        let g = ConstMode::generic();
        let lit = ConstMode::literal(NumElem::i().scale(&rat(1, 3)));
        let a = Constant::alpha(&g);
        let e = a.mul(&a).unwrap(); // alpha^2
        let v = e.substitute_alpha(&lit).unwrap();
        assert_eq!(v, Constant::ratio(&lit, -1, 9));
    }

    #[test]
    fn conjugation_involution() {
        let m = ConstMode::generic();
        let e = Constant::alpha(&m)
            .add(&Constant::i(&m))
            .unwrap()
            .div(&Constant::alpha(&m).sub(&Constant::int(&m, 2)).unwrap())
            .unwrap();
        let c = e.conj().unwrap();
        assert_ne!(c, e);
        assert_eq!(c.conj().unwrap(), e);
    }

    #[test]
    fn zero_divisor_detected() {
        // at r = -1/9 the element (alpha - i/3) is a zero divisor
        let s = ConstMode::specialized(rat(-1, 9));
        let z = Constant::alpha(&s)
            .sub(&Constant::from_num(
                &s,
                NumElem::i().scale(&rat(1, 3)),
            ))
            .unwrap();
        assert!(!z.is_zero());
        assert!(matches!(z.inv(), Err(Error::DivisionByZero(_))));
    }
}
