//! Sparse multivariate polynomials over the constant field.
//!
//! Exponents are signed: the expression layer uses negative exponents for
//! exponential atoms (which are units). Division and gcd operate on
//! polynomials whose exponents are all non-negative; callers shift first.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::constant::{ConstMode, Constant};
use crate::error::{Error, Result};

/// Term-count ceiling; computations beyond it abort with `ExpressionTooLarge`.
pub const TERM_LIMIT: usize = 400_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn unit(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn try_div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let d = a - b;
            if d < 0 {
                return None;
            }
            out.push(d);
        }
        Some(Mono(out))
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Graded-lexicographic order with the documented fixed slot order.
impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Constant>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Constant) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, mode: &Arc<ConstMode>) -> Self {
        Self::constant(nvars, Constant::one(mode))
    }

    pub fn var(nvars: usize, idx: usize, mode: &Arc<ConstMode>) -> Self {
        let mut mono = Mono::unit(nvars);
        mono.0[idx] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(mono, Constant::one(mode));
        p
    }

    pub fn monomial(nvars: usize, mono: Mono, c: Constant) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn constant_value(&self, mode: &Arc<ConstMode>) -> Option<Constant> {
        if self.terms.is_empty() {
            return Some(Constant::zero(mode));
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn leading(&self) -> Option<(&Mono, &Constant)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] != 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            match out.terms.get_mut(m) {
                Some(e) => {
                    let s = e.add(c)?;
                    if s.is_zero() {
                        out.terms.remove(m);
                    } else {
                        *e = s;
                    }
                }
                None => {
                    out.terms.insert(m.clone(), c.clone());
                }
            }
        }
        out.check_size()?;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.terms.len().saturating_mul(other.terms.len()) > TERM_LIMIT {
            return Err(Error::ExpressionTooLarge(format!(
                "product of {} x {} terms",
                self.terms.len(),
                other.terms.len()
            )));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb)?;
                if c.is_zero() {
                    continue;
                }
                match out.terms.get_mut(&m) {
                    Some(e) => {
                        let s = e.add(&c)?;
                        if s.is_zero() {
                            out.terms.remove(&m);
                        } else {
                            *e = s;
                        }
                    }
                    None => {
                        out.terms.insert(m, c);
                    }
                }
            }
        }
        out.check_size()?;
        Ok(out)
    }

    pub fn scale(&self, c: &Constant) -> Result<Self> {
        if c.is_zero() {
            return Ok(MultiPoly::zero(self.nvars));
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c)?;
        }
        Ok(out)
    }

    pub fn mul_mono(&self, mono: &Mono) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.mul(mono), c.clone());
        }
        out
    }

    fn check_size(&self) -> Result<()> {
        if self.terms.len() > TERM_LIMIT {
            return Err(Error::ExpressionTooLarge(format!(
                "{} terms",
                self.terms.len()
            )));
        }
        Ok(())
    }

    /// Exact division; errors when `other` does not divide `self`.
    /// Both polynomials must have non-negative exponents.
    pub fn exact_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero("polynomial division by zero".into()));
        }
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(self.nvars);
        let (lb, cb) = {
            let (m, c) = other.leading().unwrap();
            (m.clone(), c.clone())
        };
        let cb_inv = cb.inv()?;
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = lm.try_div(&lb).ok_or_else(|| {
                Error::DivisionByZero("inexact polynomial division".into())
            })?;
            let c = lc.mul(&cb_inv)?;
            let t = MultiPoly::monomial(self.nvars, m, c);
            quo = quo.add(&t)?;
            rem = rem.sub(&t.mul(other)?)?;
        }
        Ok(quo)
    }

    /// Pseudo-remainder of `self` by `other` with respect to variable `v`.
    fn pseudo_rem(&self, other: &Self, v: usize) -> Result<Self> {
        let db = other.degree_in(v);
        let lcb = other.coeff_of(v, db);
        let mut rem = self.clone();
        loop {
            let dr = rem.degree_in(v);
            if rem.is_zero() || dr < db {
                return Ok(rem);
            }
            let lcr = rem.coeff_of(v, dr);
            // lcb * rem - lcr * x^(dr-db) * other
            let mut shift = Mono::unit(self.nvars);
            shift.0[v] = dr - db;
            rem = rem
                .mul(&lcb)?
                .sub(&other.mul(&lcr)?.mul_mono(&shift))?;
        }
    }

    /// Coefficient of x_v^k as a polynomial in the remaining variables
    /// (the v-slot of the result is zeroed).
    fn coeff_of(&self, v: usize, k: i32) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == k {
                let mut mm = m.clone();
                mm.0[v] = 0;
                out.terms.insert(mm, c.clone());
            }
        }
        out
    }

    /// Content of `self` as a polynomial in x_v: gcd of the coefficients.
    fn content_wrt(&self, v: usize) -> Result<Self> {
        let mut content = MultiPoly::zero(self.nvars);
        for k in self.min_degree_in(v)..=self.degree_in(v) {
            let c = self.coeff_of(v, k);
            if c.is_zero() {
                continue;
            }
            content = gcd(&content, &c)?;
            if content.is_constant() {
                break;
            }
        }
        Ok(content)
    }

    /// Normalize so the leading coefficient equals one.
    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = c.inv()?;
                self.scale(&inv)
            }
        }
    }

    pub fn mode(&self) -> Option<Arc<ConstMode>> {
        self.terms.values().next().map(|c| c.mode.clone())
    }

    /// Partial derivative with respect to slot `v`; exponents must be >= 0
    /// in that slot.
    pub fn diff(&self, v: usize) -> Result<Self> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[v] = e - 1;
            let mode = &c.mode;
            let factor = Constant::int(mode, e as i64);
            let nc = c.mul(&factor)?;
            match out.terms.get_mut(&mm) {
                Some(x) => {
                    let s = x.add(&nc)?;
                    if s.is_zero() {
                        out.terms.remove(&mm);
                    } else {
                        *x = s;
                    }
                }
                None => {
                    out.terms.insert(mm, nc);
                }
            }
        }
        Ok(out)
    }
}

/// Running counters for coarse profiling (nanoseconds and calls).
pub static GCD_NANOS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
pub static GCD_CALLS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
pub static CERT_OK: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
pub static CERT_NO: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
pub static PRS_BIG: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);

thread_local! {
    static GCD_MEMO: std::cell::RefCell<std::collections::HashMap<u64, Vec<(MultiPoly, MultiPoly, MultiPoly)>>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
}

fn poly_hash(p: &MultiPoly, state: &mut impl std::hash::Hasher) {
    use std::hash::Hash;
    p.nvars.hash(state);
    for (m, c) in &p.terms {
        m.hash(state);
        c.hash(state);
    }
}

/// Multivariate gcd over the constant field, unit-normalized (leading
/// coefficient one). Inputs must have non-negative exponents. Results are
/// memoized per thread: identical factor pairs recur heavily in fraction
/// normalization.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    let t0 = std::time::Instant::now();
    let key = {
        use std::hash::Hasher;
        let mut h = std::collections::hash_map::DefaultHasher::new();
        poly_hash(a, &mut h);
        poly_hash(b, &mut h);
        h.finish()
    };
    let cached = GCD_MEMO.with(|m| {
        m.borrow().get(&key).and_then(|bucket| {
            bucket
                .iter()
                .find(|(ka, kb, _)| ka == a && kb == b)
                .map(|(_, _, g)| g.clone())
        })
    });
    if let Some(g) = cached {
        return Ok(g);
    }
    let r = gcd_inner(a, b);
    GCD_NANOS.fetch_add(
        t0.elapsed().as_nanos() as u64,
        std::sync::atomic::Ordering::Relaxed,
    );
    GCD_CALLS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    if let Ok(g) = &r {
        GCD_MEMO.with(|m| {
            let mut m = m.borrow_mut();
            if m.len() > 20_000 {
                m.clear();
            }
            m.entry(key)
                .or_default()
                .push((a.clone(), b.clone(), g.clone()));
        });
    }
    r
}

fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let mode = a.mode().expect("nonzero poly has a mode");
    if a.is_constant() || b.is_constant() {
        return Ok(MultiPoly::one(a.nvars, &mode));
    }
    // single-term operands reduce to a monomial gcd
    if a.terms.len() == 1 || b.terms.len() == 1 {
        let (single, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
        let sm = single.terms.keys().next().unwrap();
        let mut g = Mono::unit(a.nvars);
        for v in 0..a.nvars {
            g.0[v] = sm.0[v].min(other.min_degree_in(v));
        }
        return Ok(MultiPoly::monomial(a.nvars, g, Constant::one(&mode)));
    }
    // strip factors already discovered in this computation: bounded trial
    // division against the small-factor pool
    let pool = pool_snapshot(a.nvars);
    if !pool.is_empty() {
        let mut ra = a.clone();
        let mut rb = b.clone();
        let mut common: Option<MultiPoly> = None;
        for f in &pool {
            loop {
                let (Some(qa), Some(qb)) = (try_div(&ra, f), try_div(&rb, f)) else {
                    break;
                };
                ra = qa;
                rb = qb;
                common = Some(match common {
                    None => f.clone(),
                    Some(c) => c.mul(f)?,
                });
            }
        }
        if let Some(c) = common {
            return c.mul(&gcd(&ra, &rb)?)?.monic();
        }
    }
    // evaluation certificate: when every shared variable has a constant
    // univariate image gcd, the operands are coprime
    if proven_coprime(a, b) {
        CERT_OK.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        return Ok(MultiPoly::one(a.nvars, &mode));
    }
    CERT_NO.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    // route through square-free skeletons: gcds against a derivative share
    // factors and terminate quickly, while the cross gcd then runs on small
    // operands; multiplicities telescope through the quotients
    let total = |p: &MultiPoly| -> i64 {
        p.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    };
    let sa = squarefree_part(a).unwrap_or_else(|_| a.clone());
    let sb = squarefree_part(b).unwrap_or_else(|_| b.clone());
    if total(&sa) < total(a) || total(&sb) < total(b) {
        let h = gcd_inner(&sa, &sb)?;
        if h.is_constant() {
            return Ok(MultiPoly::one(a.nvars, &mode));
        }
        pool_insert(&h);
        let qa = a.exact_div(&h)?;
        let qb = b.exact_div(&h)?;
        return h.mul(&gcd_inner(&qa, &qb)?)?.monic();
    }
    let g = gcd_prs(a, b)?;
    if !g.is_constant() {
        pool_insert(&g);
    }
    Ok(g)
}

thread_local! {
    static FACTOR_POOL: std::cell::RefCell<Vec<MultiPoly>> = const { std::cell::RefCell::new(Vec::new()) };
}

/// Remember a small non-monomial factor for later trial division.
fn pool_insert(p: &MultiPoly) {
    let nterms = p.terms.len();
    if !(2..=8).contains(&nterms) {
        return;
    }
    if p.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0) > 12 {
        return;
    }
    // strip the monomial content so the pool holds primitive factors
    let mut content = vec![i32::MAX; p.nvars];
    for m in p.terms.keys() {
        for v in 0..p.nvars {
            content[v] = content[v].min(m.0[v]);
        }
    }
    let mut q = MultiPoly::zero(p.nvars);
    for (m, c) in &p.terms {
        let mut nm = m.clone();
        for v in 0..p.nvars {
            nm.0[v] -= content[v];
        }
        q.terms.insert(nm, c.clone());
    }
    let q = match q.monic() {
        Ok(q) => q,
        Err(_) => return,
    };
    FACTOR_POOL.with(|pool| {
        let mut pool = pool.borrow_mut();
        if pool.iter().any(|f| *f == q) {
            return;
        }
        if pool.len() >= 48 {
            pool.remove(0);
        }
        pool.push(q);
    });
}

fn pool_snapshot(nvars: usize) -> Vec<MultiPoly> {
    FACTOR_POOL.with(|pool| {
        pool.borrow()
            .iter()
            .filter(|f| f.nvars == nvars)
            .cloned()
            .collect()
    })
}

/// Exact division attempt with a step bound; None when the divisor does not
/// divide or the division gets long.
fn try_div(a: &MultiPoly, f: &MultiPoly) -> Option<MultiPoly> {
    if a.is_zero() {
        return None;
    }
    let budget = 4 * a.terms.len() + 16;
    let (lb, cb) = {
        let (m, c) = f.leading()?;
        (m.clone(), c.clone())
    };
    let cb_inv = cb.inv().ok()?;
    let mut rem = a.clone();
    let mut quo = MultiPoly::zero(a.nvars);
    let mut steps = 0usize;
    while let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
        steps += 1;
        if steps > budget {
            return None;
        }
        let m = lm.try_div(&lb)?;
        let c = lc.mul(&cb_inv).ok()?;
        let t = MultiPoly::monomial(a.nvars, m, c);
        quo = quo.add(&t).ok()?;
        rem = rem.sub(&t.mul(f).ok()?).ok()?;
    }
    Some(quo)
}

/// Exact coprimality certificate. For each variable carried by both
/// operands, evaluate the remaining variables at integers that preserve the
/// leading degree; the image of any common factor then keeps its degree, so
/// a constant univariate image gcd proves the gcd free of that variable.
fn proven_coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    let shared: Vec<usize> = (0..a.nvars)
        .filter(|&v| a.degree_in(v) > 0 && b.degree_in(v) > 0)
        .collect();
    for &v in &shared {
        let mut certified = false;
        for attempt in 0..4u64 {
            let Some(ia) = univariate_image(a, v, attempt) else {
                continue;
            };
            let Some(ib) = univariate_image(b, v, attempt) else {
                continue;
            };
            if ia.len() != a.degree_in(v) as usize + 1
                || ib.len() != b.degree_in(v) as usize + 1
            {
                continue; // leading coefficient vanished at the point
            }
            match univariate_gcd_degree(ia, ib) {
                Some(0) => {
                    certified = true;
                    break;
                }
                Some(_) => return false,
                None => continue,
            }
        }
        if !certified {
            return false;
        }
    }
    !shared.is_empty()
}

/// Coefficients in `v` after evaluating the other variables at small odd
/// integers drawn from a deterministic per-attempt sequence.
fn univariate_image(p: &MultiPoly, v: usize, attempt: u64) -> Option<Vec<Constant>> {
    let mode = p.mode()?;
    let deg = p.degree_in(v);
    if deg < 0 {
        return None;
    }
    let mut coeffs = vec![Constant::zero(&mode); deg as usize + 1];
    for (m, c) in &p.terms {
        let mut val = c.clone();
        for (w, &e) in m.0.iter().enumerate() {
            if w == v || e == 0 {
                continue;
            }
            // with exponents possibly negative, inverses stay exact
            let base = 2 + ((w as u64 * 7 + attempt * 13 + 3) % 11) as i64;
            let mut pw = Constant::one(&mode);
            let b = Constant::int(&mode, base);
            for _ in 0..e.unsigned_abs() {
                pw = pw.mul(&b).ok()?;
            }
            if e < 0 {
                pw = pw.inv().ok()?;
            }
            val = val.mul(&pw).ok()?;
        }
        let k = m.0[v].max(0) as usize;
        coeffs[k] = coeffs[k].add(&val).ok()?;
    }
    while coeffs.last().map_or(false, |c| c.is_zero()) {
        coeffs.pop();
    }
    Some(coeffs)
}

/// Degree of the univariate gcd over the constant field; None when the
/// Euclid loop hits a non-invertible leading coefficient.
fn univariate_gcd_degree(mut a: Vec<Constant>, mut b: Vec<Constant>) -> Option<usize> {
    let trim = |v: &mut Vec<Constant>| {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let linv = b.last().unwrap().inv().ok()?;
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let f = a.last().unwrap().mul(&linv).ok()?;
            for (j, bc) in b.iter().enumerate() {
                let t = f.mul(bc).ok()?;
                a[shift + j] = a[shift + j].sub(&t).ok()?;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len().saturating_sub(1))
}

/// Primitive pseudo-remainder sequence over a recursively chosen main
/// variable.
fn gcd_prs(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.terms.len() + b.terms.len() > 40 {
        PRS_BIG.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    }
    let mode = a.mode().expect("nonzero poly has a mode");
    // main variable: the lowest combined positive degree keeps recursion small
    let mut var = None;
    let mut best = i32::MAX;
    for v in 0..a.nvars {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da > 0 && db > 0 {
            let d = da + db;
            if d < best {
                best = d;
                var = Some(v);
            }
        } else if da > 0 || db > 0 {
            // a variable present in only one operand cannot appear in the gcd;
            // recurse on the content of that operand
            let (with, without) = if da > 0 { (a, b) } else { (b, a) };
            let content = with.content_wrt(v)?;
            return gcd_inner(&content, without);
        }
    }
    let v = match var {
        Some(v) => v,
        None => return Ok(MultiPoly::one(a.nvars, &mode)),
    };

    let ca = a.content_wrt(v)?;
    let cb = b.content_wrt(v)?;
    let cont = gcd_inner(&ca, &cb)?;
    let mut x = a.exact_div(&ca)?;
    let mut y = b.exact_div(&cb)?;
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    // primitive PRS
    loop {
        if y.is_zero() {
            break;
        }
        let r = x.pseudo_rem(&y, v)?;
        x = y;
        y = if r.is_zero() {
            r
        } else {
            let c = r.content_wrt(v)?;
            r.exact_div(&c)?
        };
    }
    let gp = x;
    let gc = gp.content_wrt(v)?;
    let gp = gp.exact_div(&gc)?;
    cont.mul(&gp)?.monic()
}

/// Product of distinct factors of `p` (up to constants):
/// p / gcd(p, dp/dx_1, ..., dp/dx_n).
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly> {
    if p.is_zero() || p.is_constant() {
        return p.monic();
    }
    if p.terms.len() == 1 {
        let m = p.terms.keys().next().unwrap().clone();
        let sq = Mono(m.0.iter().map(|&e| e.min(1)).collect());
        let mode = p.mode().expect("nonzero");
        return Ok(MultiPoly::monomial(p.nvars, sq, Constant::one(&mode)));
    }
    let mut g = p.clone();
    for v in 0..p.nvars {
        if p.degree_in(v) == 0 {
            continue;
        }
        let d = p.diff(v)?;
        if d.is_zero() {
            continue;
        }
        g = gcd_descent(&g, &d)?;
        if g.is_constant() {
            break;
        }
    }
    if g.is_constant() {
        return p.monic();
    }
    p.exact_div(&g)?.monic()
}

/// gcd used inside the square-free computation: handles the cheap shapes
/// directly and falls back to the pseudo-remainder route without consulting
/// square-free skeletons again.
fn gcd_descent(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let mode = a.mode().expect("nonzero poly has a mode");
    if a.is_constant() || b.is_constant() {
        return Ok(MultiPoly::one(a.nvars, &mode));
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        let (single, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
        let sm = single.terms.keys().next().unwrap();
        let mut g = Mono::unit(a.nvars);
        for v in 0..a.nvars {
            g.0[v] = sm.0[v].min(other.min_degree_in(v));
        }
        return Ok(MultiPoly::monomial(a.nvars, g, Constant::one(&mode)));
    }
    if proven_coprime(a, b) {
        return Ok(MultiPoly::one(a.nvars, &mode));
    }
    gcd_prs(a, b)
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})*{:?}", c, m.0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::ConstMode;

    fn c(n: i64) -> Constant {
        Constant::int(&ConstMode::generic(), n)
    }

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i, &ConstMode::generic())
    }

    #[test]
    fn arithmetic_and_division() {
        // (x+y)^2 = x^2 + 2xy + y^2, and division back
        let s = x(0).add(&x(1)).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.terms.len(), 3);
        let q = sq.exact_div(&s).unwrap();
        assert_eq!(q, s);
        assert!(sq
            .exact_div(&x(2))
            .is_err());
    }

    #[test]
    fn gcd_multivariate() {
        // gcd((x+y)*z, (x+y)*x) = x+y (monic)
        let s = x(0).add(&x(1)).unwrap();
        let a = s.mul(&x(2)).unwrap();
        let b = s.mul(&x(0)).unwrap();
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, s.monic().unwrap());
    }

    #[test]
    fn gcd_with_constants() {
        let a = x(0).scale(&c(2)).unwrap();
        let b = x(1).scale(&c(4)).unwrap();
        let g = gcd(&a, &b).unwrap();
        assert!(g.is_constant());
        assert!(!g.is_zero());
    }

    #[test]
    fn squarefree() {
        // (x+y)^3 * z -> (x+y) * z
        let s = x(0).add(&x(1)).unwrap();
        let p = s.mul(&s).unwrap().mul(&s).unwrap().mul(&x(2)).unwrap();
        let sf = squarefree_part(&p).unwrap();
        let expect = s.mul(&x(2)).unwrap().monic().unwrap();
        assert_eq!(sf, expect);
    }

    #[test]
    fn gcd_disjoint_vars() {
        let g = gcd(&x(0), &x(1)).unwrap();
        assert!(g.is_constant());
    }
}
