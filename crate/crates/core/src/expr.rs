//! Canonical symbolic scalars on a chart.
//!
//! An expression is a reduced fraction of multivariate Laurent polynomials.
//! The polynomial slots are, in order: one slot per chart variable (slots of
//! root-bearing variables hold the formal square root, so the variable itself
//! is the slot squared), then one slot per exponential basis atom. Exponential
//! slots may carry negative exponents since atoms are units.
//!
//! Canonical form: numerator and denominator coprime, the denominator's
//! minimal term (in a translation-invariant order on exponential forms) has
//! exponential part zero, the exponential atoms form the Hermite-canonical
//! basis of the lattice spanned by the forms present, and the denominator's
//! leading coefficient is one in graded-lex order. Equality of functions then
//! coincides with structural equality, and an expression is zero exactly when
//! its numerator is the zero polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::chart::Chart;
use crate::constant::Constant;
use crate::error::{Error, Result};
use crate::lattice::{form_cmp, lattice_basis, ExpForm};
use crate::poly::{gcd, Mono, MultiPoly};

#[derive(Clone)]
pub struct Expr {
    pub chart: Arc<Chart>,
    pub atoms: Vec<ExpForm>,
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Expr {
    fn nslots(chart: &Arc<Chart>, natoms: usize) -> usize {
        chart.dim() + natoms
    }

    pub fn zero(chart: &Arc<Chart>) -> Expr {
        let n = Self::nslots(chart, 0);
        Expr {
            chart: chart.clone(),
            atoms: vec![],
            num: MultiPoly::zero(n),
            den: MultiPoly::one(n, &chart.mode),
        }
    }

    pub fn one(chart: &Arc<Chart>) -> Expr {
        Self::constant(chart, Constant::one(&chart.mode))
    }

    pub fn int(chart: &Arc<Chart>, n: i64) -> Expr {
        Self::constant(chart, Constant::int(&chart.mode, n))
    }

    pub fn ratio(chart: &Arc<Chart>, n: i64, d: i64) -> Expr {
        Self::constant(chart, Constant::ratio(&chart.mode, n, d))
    }

    pub fn i(chart: &Arc<Chart>) -> Expr {
        Self::constant(chart, Constant::i(&chart.mode))
    }

    pub fn alpha(chart: &Arc<Chart>) -> Expr {
        Self::constant(chart, Constant::alpha(&chart.mode))
    }

    pub fn constant(chart: &Arc<Chart>, c: Constant) -> Expr {
        let n = Self::nslots(chart, 0);
        Expr {
            chart: chart.clone(),
            atoms: vec![],
            num: MultiPoly::constant(n, c),
            den: MultiPoly::one(n, &chart.mode),
        }
    }

    /// The chart variable as an expression (the square of the root slot for
    /// root-bearing variables).
    pub fn var(chart: &Arc<Chart>, idx: usize) -> Expr {
        let n = Self::nslots(chart, 0);
        let mut mono = Mono::unit(n);
        mono.0[idx] = if chart.root[idx] { 2 } else { 1 };
        Expr {
            chart: chart.clone(),
            atoms: vec![],
            num: MultiPoly::monomial(n, mono, Constant::one(&chart.mode)),
            den: MultiPoly::one(n, &chart.mode),
        }
    }

    pub fn var_named(chart: &Arc<Chart>, name: &str) -> Result<Expr> {
        Ok(Self::var(chart, chart.index_of(name)?))
    }

    /// Formal square root of a root-bearing chart variable.
    pub fn sqrt_var(chart: &Arc<Chart>, idx: usize) -> Result<Expr> {
        if !chart.root[idx] {
            return Err(Error::UnknownSymbol(format!(
                "sqrt({}) is not declared root-bearing",
                chart.vars[idx]
            )));
        }
        let n = Self::nslots(chart, 0);
        let mut mono = Mono::unit(n);
        mono.0[idx] = 1;
        Ok(Expr {
            chart: chart.clone(),
            atoms: vec![],
            num: MultiPoly::monomial(n, mono, Constant::one(&chart.mode)),
            den: MultiPoly::one(n, &chart.mode),
        })
    }

    /// exp of a linear form in the chart variables.
    pub fn exp_form(chart: &Arc<Chart>, form: ExpForm) -> Result<Expr> {
        assert_eq!(form.0.len(), chart.dim());
        if form.zero_like() {
            return Ok(Self::one(chart));
        }
        let n = Self::nslots(chart, 1);
        let mut mono = Mono::unit(n);
        mono.0[chart.dim()] = 1;
        let raw = Expr {
            chart: chart.clone(),
            atoms: vec![form],
            num: MultiPoly::monomial(n, mono, Constant::one(&chart.mode)),
            den: MultiPoly::one(n, &chart.mode),
        };
        raw.renormalize()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Constant> {
        let n = self.num.constant_value(&self.chart.mode)?;
        let d = self.den.constant_value(&self.chart.mode)?;
        n.div(&d).ok()
    }

    /// Total exponential form of a monomial: sum of atom forms weighted by
    /// the exponential exponents.
    fn total_form(&self, mono: &Mono) -> Result<ExpForm> {
        let dim = self.chart.dim();
        let mut acc = ExpForm(vec![Constant::zero(&self.chart.mode); dim]);
        for (b, f) in self.atoms.iter().enumerate() {
            let e = mono.0[dim + b];
            if e != 0 {
                acc = acc.add(&f.scale_int(&num_bigint::BigInt::from(e))?)?;
            }
        }
        Ok(acc)
    }

    /// Re-establish the canonical form. Accepts any internally consistent
    /// (chart, atoms, num, den) state.
    fn renormalize(mut self) -> Result<Expr> {
        let dim = self.chart.dim();
        if self.den.is_zero() {
            return Err(Error::DivisionByZero(
                "expression denominator is zero".into(),
            ));
        }
        if self.num.is_zero() {
            return Ok(Expr::zero(&self.chart));
        }
        let nslots = dim + self.atoms.len();

        // 1. gcd reduction on shifted copies
        let shift_of = |p: &MultiPoly| -> Mono {
            let mut m = Mono::unit(nslots);
            for s in dim..nslots {
                let mn = p.min_degree_in(s);
                if mn < 0 {
                    m.0[s] = -mn;
                }
            }
            m
        };
        let ns = shift_of(&self.num);
        let ds = shift_of(&self.den);
        let n0 = self.num.mul_mono(&ns);
        let d0 = self.den.mul_mono(&ds);
        match gcd(&n0, &d0) {
            Ok(g) if !g.is_constant() => {
                let un_ns = Mono(ns.0.iter().map(|e| -e).collect());
                let un_ds = Mono(ds.0.iter().map(|e| -e).collect());
                self.num = n0.exact_div(&g)?.mul_mono(&un_ns);
                self.den = d0.exact_div(&g)?.mul_mono(&un_ds);
            }
            Ok(_) => {}
            // zero divisors in specialized mode: keep the fraction unreduced
            Err(Error::DivisionByZero(_)) => {}
            Err(e) => return Err(e),
        }

        // 2. anchor the denominator: its minimal-form term gets exponential
        //    part zero (distinct exponential vectors only)
        if !self.atoms.is_empty() {
            let mut distinct: BTreeMap<Vec<i32>, ExpForm> = BTreeMap::new();
            for m in self.den.terms.keys() {
                let key = m.0[dim..].to_vec();
                if !distinct.contains_key(&key) {
                    let f = self.total_form(m)?;
                    distinct.insert(key, f);
                }
            }
            let mut min_entry: Option<(&Vec<i32>, &ExpForm)> = None;
            for (k, f) in &distinct {
                let better = match &min_entry {
                    None => true,
                    Some((_, mf)) => form_cmp(f, mf)? == std::cmp::Ordering::Less,
                };
                if better {
                    min_entry = Some((k, f));
                }
            }
            let (mk, _) = min_entry.expect("nonzero denominator has terms");
            let mut shift = Mono::unit(nslots);
            for (s, &k) in mk.iter().enumerate() {
                shift.0[dim + s] = -k;
            }
            if !shift.is_unit() {
                self.num = self.num.mul_mono(&shift);
                self.den = self.den.mul_mono(&shift);
            }
        }

        // 3. canonical lattice basis from the forms actually present, via
        //    the distinct exponential vectors
        if !self.atoms.is_empty() {
            let mut distinct: Vec<Vec<i32>> = Vec::new();
            {
                let mut seen = std::collections::BTreeSet::new();
                for m in self.num.terms.keys().chain(self.den.terms.keys()) {
                    let key = m.0[dim..].to_vec();
                    if seen.insert(key.clone()) {
                        distinct.push(key);
                    }
                }
            }
            let mut forms = Vec::with_capacity(distinct.len());
            for key in &distinct {
                let mut fake = Mono::unit(nslots);
                fake.0[dim..].copy_from_slice(key);
                forms.push(self.total_form(&fake)?);
            }
            let lb = lattice_basis(&forms)?;
            let coord_of: BTreeMap<&Vec<i32>, &Vec<i64>> =
                distinct.iter().zip(lb.coords.iter()).collect();
            let new_n = dim + lb.basis.len();
            let remap = |p: &MultiPoly| -> MultiPoly {
                let mut out = MultiPoly::zero(new_n);
                for (m, c) in &p.terms {
                    let mut nm = Mono::unit(new_n);
                    nm.0[..dim].copy_from_slice(&m.0[..dim]);
                    let key = m.0[dim..].to_vec();
                    let coords = coord_of[&key];
                    for (b, &k) in coords.iter().enumerate() {
                        nm.0[dim + b] = k as i32;
                    }
                    out.terms.insert(nm, c.clone());
                }
                out
            };
            let num = remap(&self.num);
            let den = remap(&self.den);
            self.num = num;
            self.den = den;
            self.atoms = lb.basis;
        }

        // 4. monic denominator
        let lead = self
            .den
            .leading()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.inv()?;
            self.num = self.num.scale(&inv)?;
            self.den = self.den.scale(&inv)?;
        }
        Ok(self)
    }

    /// Bring two expressions over one atom table; returns (atoms, a_num,
    /// a_den, b_num, b_den).
    fn align(a: &Expr, b: &Expr) -> Result<(Vec<ExpForm>, MultiPoly, MultiPoly, MultiPoly, MultiPoly)> {
        Chart::expect_same(&a.chart, &b.chart)?;
        if a.atoms == b.atoms {
            return Ok((
                a.atoms.clone(),
                a.num.clone(),
                a.den.clone(),
                b.num.clone(),
                b.den.clone(),
            ));
        }
        let dim = a.chart.dim();
        let mut forms = a.atoms.clone();
        forms.extend(b.atoms.iter().cloned());
        let lb = lattice_basis(&forms)?;
        let new_n = dim + lb.basis.len();
        let remap = |p: &MultiPoly, rows: &[Vec<i64>]| -> MultiPoly {
            let mut out = MultiPoly::zero(new_n);
            for (m, c) in &p.terms {
                let mut nm = Mono::unit(new_n);
                nm.0[..dim].copy_from_slice(&m.0[..dim]);
                let src_dim = p.nvars - rows.len();
                for (b, row) in rows.iter().enumerate() {
                    let e = m.0[src_dim + b];
                    if e != 0 {
                        for (j, &k) in row.iter().enumerate() {
                            nm.0[dim + j] += e * (k as i32);
                        }
                    }
                }
                // merged exponents can collide only if forms were dependent,
                // which the basis rules out
                out.terms.insert(nm, c.clone());
            }
            out
        };
        let a_rows = &lb.coords[..a.atoms.len()];
        let b_rows = &lb.coords[a.atoms.len()..];
        Ok((
            lb.basis.clone(),
            remap(&a.num, a_rows),
            remap(&a.den, a_rows),
            remap(&b.num, b_rows),
            remap(&b.den, b_rows),
        ))
    }

    pub fn add(&self, other: &Expr) -> Result<Expr> {
        let (atoms, an, ad, bn, bd) = Expr::align(self, other)?;
        // add over the least common denominator to limit swell
        let g = gcd_laurent(&ad, &bd, self.chart.dim())?;
        let (num, den) = if g.is_constant() {
            (an.mul(&bd)?.add(&bn.mul(&ad)?)?, ad.mul(&bd)?)
        } else {
            let bd_r = div_laurent(&bd, &g, self.chart.dim())?;
            let ad_r = div_laurent(&ad, &g, self.chart.dim())?;
            (
                an.mul(&bd_r)?.add(&bn.mul(&ad_r)?)?,
                ad.mul(&bd_r)?,
            )
        };
        Expr {
            chart: self.chart.clone(),
            atoms,
            num,
            den,
        }
        .renormalize()
    }

    pub fn sub(&self, other: &Expr) -> Result<Expr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Expr {
        Expr {
            chart: self.chart.clone(),
            atoms: self.atoms.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Expr) -> Result<Expr> {
        let (atoms, mut an, mut ad, mut bn, mut bd) = Expr::align(self, other)?;
        let dim = self.chart.dim();
        // cross-cancel before multiplying
        let g1 = gcd_laurent(&an, &bd, dim)?;
        if !g1.is_constant() {
            an = div_laurent(&an, &g1, dim)?;
            bd = div_laurent(&bd, &g1, dim)?;
        }
        let g2 = gcd_laurent(&bn, &ad, dim)?;
        if !g2.is_constant() {
            bn = div_laurent(&bn, &g2, dim)?;
            ad = div_laurent(&ad, &g2, dim)?;
        }
        Expr {
            chart: self.chart.clone(),
            atoms,
            num: an.mul(&bn)?,
            den: ad.mul(&bd)?,
        }
        .renormalize()
    }

    pub fn div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(Error::DivisionByZero("division by zero expression".into()));
        }
        let (atoms, mut an, mut ad, mut bn, mut bd) = Expr::align(self, other)?;
        let dim = self.chart.dim();
        let g1 = gcd_laurent(&an, &bn, dim)?;
        if !g1.is_constant() {
            an = div_laurent(&an, &g1, dim)?;
            bn = div_laurent(&bn, &g1, dim)?;
        }
        let g2 = gcd_laurent(&bd, &ad, dim)?;
        if !g2.is_constant() {
            bd = div_laurent(&bd, &g2, dim)?;
            ad = div_laurent(&ad, &g2, dim)?;
        }
        Expr {
            chart: self.chart.clone(),
            atoms,
            num: an.mul(&bd)?,
            den: ad.mul(&bn)?,
        }
        .renormalize()
    }

    pub fn inv(&self) -> Result<Expr> {
        Expr::one(&self.chart).div(self)
    }

    pub fn pow(&self, n: i32) -> Result<Expr> {
        if n == 0 {
            return Ok(Expr::one(&self.chart));
        }
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Expr::one(&self.chart);
        let mut b = base;
        let mut k = n.unsigned_abs();
        loop {
            if k & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            b = b.mul(&b)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Constant) -> Result<Expr> {
        if c.is_zero() {
            return Ok(Expr::zero(&self.chart));
        }
        Expr {
            chart: self.chart.clone(),
            atoms: self.atoms.clone(),
            num: self.num.scale(c)?,
            den: self.den.clone(),
        }
        .renormalize()
    }

    /// Partial derivative of a polynomial part with respect to chart
    /// variable slot `v`; returns (numerator, optional root monomial factor
    /// for the denominator 2*sqrt(var)).
    fn poly_diff(&self, p: &MultiPoly, v: usize) -> Result<(MultiPoly, bool)> {
        let dim = self.chart.dim();
        let nslots = p.nvars;
        let is_root = self.chart.root[v];
        let mut plain = MultiPoly::zero(nslots);
        // exponential contributions: atom coefficient on variable v
        for (m, c) in &p.terms {
            let mut exp_coeff = Constant::zero(&self.chart.mode);
            for (b, f) in self.atoms.iter().enumerate() {
                let e = m.0[dim + b];
                if e != 0 && !f.0[v].is_zero() {
                    let k = Constant::int(&self.chart.mode, e as i64);
                    exp_coeff = exp_coeff.add(&f.0[v].mul(&k)?)?;
                }
            }
            if !exp_coeff.is_zero() {
                let t = MultiPoly::monomial(nslots, m.clone(), c.mul(&exp_coeff)?);
                plain = plain.add(&t)?;
            }
        }
        if !is_root {
            // ordinary power rule on the slot
            let d = p.diff(v)?;
            plain = plain.add(&d)?;
            Ok((plain, false))
        } else {
            // slot holds r with var = r^2: d(r^k)/dvar = (k/2) r^(k-1) / r;
            // return (k r^(k-1) + 2 r * exp-part) over denominator 2 r
            let d = p.diff(v)?;
            let mut rmono = Mono::unit(nslots);
            rmono.0[v] = 1;
            let two_r_plain = plain.mul_mono(&rmono).scale(&Constant::int(&self.chart.mode, 2))?;
            let combined = d.add(&two_r_plain)?;
            Ok((combined, true))
        }
    }

    /// Partial derivative with respect to a chart variable.
    pub fn differentiate(&self, var: &str) -> Result<Expr> {
        let v = self.chart.index_of(var)?;
        self.differentiate_slot(v)
    }

    pub fn differentiate_slot(&self, v: usize) -> Result<Expr> {
        if self.chart.constant[v] {
            return Ok(Expr::zero(&self.chart));
        }
        let (dn, n_root) = self.poly_diff(&self.num, v)?;
        let (dd, d_root) = self.poly_diff(&self.den, v)?;
        // (dn/rf) * den - num * (dd/rf) over den^2, rf = 2r when root
        debug_assert_eq!(n_root, d_root);
        let num = dn.mul(&self.den)?.sub(&self.num.mul(&dd)?)?;
        let mut den = self.den.mul(&self.den)?;
        if n_root {
            let mut rmono = Mono::unit(self.num.nvars);
            rmono.0[v] = 1;
            den = den
                .mul_mono(&rmono)
                .scale(&Constant::int(&self.chart.mode, 2))?;
        }
        Expr {
            chart: self.chart.clone(),
            atoms: self.atoms.clone(),
            num,
            den,
        }
        .renormalize()
    }

    /// Extract a homogeneous linear form (used when substituting into
    /// exponents). Returns None when the expression is not of that shape.
    pub fn as_linear_form(&self) -> Option<ExpForm> {
        if !self.den.is_constant() {
            return None;
        }
        let dim = self.chart.dim();
        let den_c = self.den.constant_value(&self.chart.mode)?;
        let mut acc = vec![Constant::zero(&self.chart.mode); dim];
        for (m, c) in &self.num.terms {
            // no exponential part allowed
            if m.0[dim..].iter().any(|&e| e != 0) {
                return None;
            }
            let mut var = None;
            for v in 0..dim {
                let e = m.0[v];
                if e == 0 {
                    continue;
                }
                let want = if self.chart.root[v] { 2 } else { 1 };
                if e != want || var.is_some() {
                    return None;
                }
                var = Some(v);
            }
            let v = var?;
            acc[v] = acc[v].add(&c.div(&den_c).ok()?).ok()?;
        }
        Some(ExpForm(acc))
    }

    /// Substitute chart variables. `bindings` maps source slots to target
    /// expressions; unbound slots map to themselves (requires equal charts).
    /// `exp_handler` optionally supplies the value of an exponential atom
    /// (used by coordinate maps with logarithmic components).
    pub fn substitute_full(
        &self,
        target: &Arc<Chart>,
        bindings: &BTreeMap<usize, Expr>,
        exp_handler: Option<&dyn Fn(&ExpForm) -> Option<Result<Expr>>>,
    ) -> Result<Expr> {
        let dim = self.chart.dim();
        // atoms the handler takes over do not need per-variable bindings
        let intercepted: Vec<Option<Result<Expr>>> = self
            .atoms
            .iter()
            .map(|f| exp_handler.and_then(|h| h(f)))
            .collect();
        // slots that actually occur, via chart exponents or exponent forms
        let mut used = vec![false; dim];
        for m in self.num.terms.keys().chain(self.den.terms.keys()) {
            for v in 0..dim {
                if m.0[v] != 0 {
                    used[v] = true;
                }
            }
            for (b, f) in self.atoms.iter().enumerate() {
                if m.0[dim + b] != 0 && intercepted[b].is_none() {
                    for (v, c) in f.0.iter().enumerate() {
                        if !c.is_zero() {
                            used[v] = true;
                        }
                    }
                }
            }
        }
        // per-slot base values; unbound used variables resolve by name
        let mut base: Vec<Option<Expr>> = vec![None; dim];
        for (v, b) in bindings {
            Chart::expect_same(&b.chart, target)?;
            base[*v] = Some(b.clone());
        }
        for v in 0..dim {
            if base[v].is_none() {
                if !used[v] {
                    base[v] = Some(Expr::zero(target));
                    continue;
                }
                let idx = target.index_of(&self.chart.vars[v]).map_err(|_| {
                    Error::UnknownVariable(format!(
                        "no binding for `{}` and no target variable of that name",
                        self.chart.vars[v]
                    ))
                })?;
                base[v] = Some(Expr::var(target, idx));
            }
        }
        let base: Vec<Expr> = base.into_iter().map(|b| b.unwrap()).collect();

        // atom values
        let mut atom_values = Vec::with_capacity(self.atoms.len());
        for (f, pre) in self.atoms.iter().zip(intercepted) {
            if let Some(v) = pre {
                atom_values.push(v?);
                continue;
            }
            // linear path: substituted form must stay linear homogeneous
            let mut acc = ExpForm(vec![Constant::zero(&target.mode); target.dim()]);
            for (v, coef) in f.0.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let lf = base[v].as_linear_form().ok_or_else(|| {
                    Error::NonLinearExponent(format!(
                        "binding for `{}` is not a homogeneous linear form",
                        self.chart.vars[v]
                    ))
                })?;
                let mode = &target.mode;
                let scaled: Result<Vec<Constant>> =
                    lf.0.iter().map(|c| c.mul(&coef.clone())).collect();
                let _ = mode;
                acc = acc.add(&ExpForm(scaled?))?;
            }
            atom_values.push(Expr::exp_form(target, acc)?);
        }

        // root values where needed
        let mut sqrt_base: Vec<Option<Expr>> = vec![None; dim];
        let need_sqrt: Vec<bool> = (0..dim)
            .map(|v| {
                self.chart.root[v]
                    && self
                        .num
                        .terms
                        .keys()
                        .chain(self.den.terms.keys())
                        .any(|m| m.0[v].rem_euclid(2) == 1)
            })
            .collect();
        for v in 0..dim {
            if need_sqrt[v] {
                sqrt_base[v] = Some(sqrt_of_expr(&base[v]).ok_or_else(|| {
                    Error::RootOfComposite(format!(
                        "sqrt of binding for `{}`",
                        self.chart.vars[v]
                    ))
                })?);
            }
        }

        let mut cache: BTreeMap<(usize, i32), Expr> = BTreeMap::new();
        let mut eval_poly = |p: &MultiPoly| -> Result<Expr> {
            let mut acc = Expr::zero(target);
            for (m, c) in &p.terms {
                let mut term = Expr::constant(target, c.clone());
                for v in 0..dim {
                    let e = m.0[v];
                    if e == 0 {
                        continue;
                    }
                    if self.chart.root[v] {
                        let half = e.div_euclid(2);
                        let odd = e.rem_euclid(2) == 1;
                        if half != 0 {
                            let key = (v, half);
                            let pw = match cache.get(&key) {
                                Some(p) => p.clone(),
                                None => {
                                    let p = base[v].pow(half)?;
                                    cache.insert(key, p.clone());
                                    p
                                }
                            };
                            term = term.mul(&pw)?;
                        }
                        if odd {
                            term = term.mul(sqrt_base[v].as_ref().expect("sqrt prepared"))?;
                        }
                    } else {
                        let key = (v, e);
                        let pw = match cache.get(&key) {
                            Some(p) => p.clone(),
                            None => {
                                let p = base[v].pow(e)?;
                                cache.insert(key, p.clone());
                                p
                            }
                        };
                        term = term.mul(&pw)?;
                    }
                }
                for (b, val) in atom_values.iter().enumerate() {
                    let e = m.0[dim + b];
                    if e == 0 {
                        continue;
                    }
                    let key = (dim + b, e);
                    let pw = match cache.get(&key) {
                        Some(p) => p.clone(),
                        None => {
                            let p = val.pow(e)?;
                            cache.insert(key, p.clone());
                            p
                        }
                    };
                    term = term.mul(&pw)?;
                }
                acc = acc.add(&term)?;
            }
            Ok(acc)
        };
        let n = eval_poly(&self.num)?;
        let d = eval_poly(&self.den)?;
        n.div(&d)
    }

    pub fn substitute(&self, target: &Arc<Chart>, bindings: &BTreeMap<usize, Expr>) -> Result<Expr> {
        self.substitute_full(target, bindings, None)
    }

    pub fn substitute_named(
        &self,
        target: &Arc<Chart>,
        bindings: &[(&str, Expr)],
    ) -> Result<Expr> {
        let mut map = BTreeMap::new();
        for (name, e) in bindings {
            map.insert(self.chart.index_of(name)?, e.clone());
        }
        self.substitute(target, &map)
    }

    /// Complex conjugation: conjugates constants and exponent forms; chart
    /// variables and formal roots are fixed.
    pub fn conjugate(&self) -> Result<Expr> {
        let conj_poly = |p: &MultiPoly| -> Result<MultiPoly> {
            let mut out = MultiPoly::zero(p.nvars);
            for (m, c) in &p.terms {
                out.terms.insert(m.clone(), c.conj()?);
            }
            Ok(out)
        };
        let atoms: Result<Vec<ExpForm>> = self
            .atoms
            .iter()
            .map(|f| {
                let v: Result<Vec<Constant>> = f.0.iter().map(|c| c.conj()).collect();
                Ok(ExpForm(v?))
            })
            .collect();
        Expr {
            chart: self.chart.clone(),
            atoms: atoms?,
            num: conj_poly(&self.num)?,
            den: conj_poly(&self.den)?,
        }
        .renormalize()
    }

    /// Map every constant through `f` into the target chart's mode.
    pub fn map_constants(
        &self,
        target: &Arc<Chart>,
        f: &dyn Fn(&Constant) -> Result<Constant>,
    ) -> Result<Expr> {
        assert_eq!(self.chart.vars, target.vars, "charts must share variables");
        let map_poly = |p: &MultiPoly| -> Result<MultiPoly> {
            let mut out = MultiPoly::zero(p.nvars);
            for (m, c) in &p.terms {
                let nc = f(c)?;
                if !nc.is_zero() {
                    out.terms.insert(m.clone(), nc);
                }
            }
            Ok(out)
        };
        let atoms: Result<Vec<ExpForm>> = self
            .atoms
            .iter()
            .map(|fm| {
                let v: Result<Vec<Constant>> = fm.0.iter().map(|c| f(c)).collect();
                Ok(ExpForm(v?))
            })
            .collect();
        Expr {
            chart: target.clone(),
            atoms: atoms?,
            num: map_poly(&self.num)?,
            den: map_poly(&self.den)?,
        }
        .renormalize()
    }

    /// Numeric evaluation. `point` supplies values for the chart variables;
    /// `alpha` the value of the parameter. Root slots use the principal
    /// branch of the square root of the variable value.
    pub fn eval(&self, point: &[Complex64], alpha: Complex64) -> Result<Complex64> {
        let dim = self.chart.dim();
        assert_eq!(point.len(), dim);
        let atom_vals: Vec<Complex64> = self
            .atoms
            .iter()
            .map(|f| {
                let mut s = Complex64::new(0.0, 0.0);
                for (v, c) in f.0.iter().enumerate() {
                    if !c.is_zero() {
                        s += c.to_complex(alpha) * point[v];
                    }
                }
                s.exp()
            })
            .collect();
        let eval_poly = |p: &MultiPoly| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, c) in &p.terms {
                let mut t = c.to_complex(alpha);
                for v in 0..dim {
                    let e = m.0[v];
                    if e == 0 {
                        continue;
                    }
                    let b = if self.chart.root[v] {
                        point[v].sqrt()
                    } else {
                        point[v]
                    };
                    t *= b.powi(e);
                }
                for (b, val) in atom_vals.iter().enumerate() {
                    let e = m.0[dim + b];
                    if e != 0 {
                        t *= val.powi(e);
                    }
                }
                acc += t;
            }
            acc
        };
        let d = eval_poly(&self.den);
        let n = eval_poly(&self.num);
        if d.norm() < 1e-8 * (1.0 + n.norm()) {
            return Err(Error::SingularPoint(format!(
                "denominator magnitude {:.3e}",
                d.norm()
            )));
        }
        Ok(n / d)
    }

    /// Number of terms in numerator plus denominator.
    pub fn size(&self) -> usize {
        self.num.terms.len() + self.den.terms.len()
    }

    /// The denominator as a standalone expression.
    pub fn den_expr(&self) -> Result<Expr> {
        Expr {
            chart: self.chart.clone(),
            atoms: self.atoms.clone(),
            num: self.den.clone(),
            den: MultiPoly::one(self.num.nvars, &self.chart.mode),
        }
        .renormalize()
    }

    /// Bring several expressions over one atom table; returns the shared
    /// atoms and per-expression (num, den) pairs.
    pub fn align_many(exprs: &[Expr]) -> Result<(Vec<ExpForm>, Vec<(MultiPoly, MultiPoly)>)> {
        assert!(!exprs.is_empty());
        let chart = exprs[0].chart.clone();
        for e in exprs {
            Chart::expect_same(&chart, &e.chart)?;
        }
        let dim = chart.dim();
        let mut forms = Vec::new();
        let mut offsets = Vec::with_capacity(exprs.len());
        for e in exprs {
            offsets.push(forms.len());
            forms.extend(e.atoms.iter().cloned());
        }
        let lb = lattice_basis(&forms)?;
        let new_n = dim + lb.basis.len();
        let mut out = Vec::with_capacity(exprs.len());
        for (e, &off) in exprs.iter().zip(&offsets) {
            let rows = &lb.coords[off..off + e.atoms.len()];
            let remap = |p: &MultiPoly| -> MultiPoly {
                let mut np = MultiPoly::zero(new_n);
                for (m, c) in &p.terms {
                    let mut nm = Mono::unit(new_n);
                    nm.0[..dim].copy_from_slice(&m.0[..dim]);
                    for (b, row) in rows.iter().enumerate() {
                        let k = m.0[dim + b];
                        if k != 0 {
                            for (j, &x) in row.iter().enumerate() {
                                nm.0[dim + j] += k * (x as i32);
                            }
                        }
                    }
                    np.terms.insert(nm, c.clone());
                }
                np
            };
            out.push((remap(&e.num), remap(&e.den)));
        }
        Ok((lb.basis, out))
    }

    /// Polynomial gcd of two expressions with trivial denominators.
    pub fn gcd_with(&self, other: &Expr) -> Result<Expr> {
        let (atoms, pairs) = Expr::align_many(&[self.clone(), other.clone()])?;
        let dim = self.chart.dim();
        let nslots = dim + atoms.len();
        let shift = |p: &MultiPoly| -> MultiPoly {
            let mut m = Mono::unit(nslots);
            for s in dim..nslots {
                let mn = p.min_degree_in(s);
                if mn < 0 {
                    m.0[s] = -mn;
                }
            }
            p.mul_mono(&m)
        };
        let g = gcd(&shift(&pairs[0].0), &shift(&pairs[1].0))?;
        Expr {
            chart: self.chart.clone(),
            atoms,
            num: g,
            den: MultiPoly::one(nslots, &self.chart.mode),
        }
        .renormalize()
    }
}

/// Unit-normalized gcd of Laurent polynomials sharing one slot table (the
/// first `dim` slots never go negative).
fn gcd_laurent(a: &MultiPoly, b: &MultiPoly, dim: usize) -> Result<MultiPoly> {
    if a.is_constant() || b.is_constant() {
        let mode = a
            .mode()
            .or_else(|| b.mode())
            .expect("one operand nonzero");
        return Ok(MultiPoly::one(a.nvars, &mode));
    }
    let shift = |p: &MultiPoly| -> MultiPoly {
        let mut m = Mono::unit(p.nvars);
        let mut any = false;
        for s in dim..p.nvars {
            let mn = p.min_degree_in(s);
            if mn < 0 {
                m.0[s] = -mn;
                any = true;
            }
        }
        if any {
            p.mul_mono(&m)
        } else {
            p.clone()
        }
    };
    match gcd(&shift(a), &shift(b)) {
        Ok(g) => Ok(g),
        // zero divisors under a specialized relation: skip the cancellation
        Err(Error::DivisionByZero(_)) => {
            let mode = a.mode().expect("nonzero");
            Ok(MultiPoly::one(a.nvars, &mode))
        }
        Err(e) => Err(e),
    }
}

/// Exact Laurent division by a (non-Laurent) divisor obtained from
/// `gcd_laurent`.
fn div_laurent(a: &MultiPoly, g: &MultiPoly, dim: usize) -> Result<MultiPoly> {
    let mut m = Mono::unit(a.nvars);
    let mut any = false;
    for s in dim..a.nvars {
        let mn = a.min_degree_in(s);
        if mn < 0 {
            m.0[s] = -mn;
            any = true;
        }
    }
    if !any {
        return a.exact_div(g);
    }
    let un = Mono(m.0.iter().map(|e| -e).collect());
    Ok(a.mul_mono(&m).exact_div(g)?.mul_mono(&un))
}

/// Square root of an expression when it is a perfect square of recognizable
/// shape: a constant-times-monomial whose chart exponents are even (or odd
/// on root-bearing variables) and whose constant is a perfect square in the
/// rationals times a recognizable radical.
fn sqrt_of_expr(e: &Expr) -> Option<Expr> {
    // plain root-bearing variable
    let dim = e.chart.dim();
    if e.den.is_constant() && e.num.terms.len() == 1 {
        let den_c = e.den.constant_value(&e.chart.mode)?;
        if !den_c.is_one() {
            return None;
        }
        let (m, c) = e.num.terms.iter().next().unwrap();
        if !c.is_one() {
            return None;
        }
        // exponents must all be even except root slots, which may be any:
        // sqrt(r^2k) = r^k, sqrt(r^2) = r
        let mut mono = Mono::unit(e.num.nvars);
        for v in 0..e.num.nvars {
            let k = m.0[v];
            if k == 0 {
                continue;
            }
            if v < dim && e.chart.root[v] {
                // r^k -> want k even for a clean sqrt r^(k/2); k=2 gives r
                if k % 2 != 0 {
                    return None;
                }
                mono.0[v] = k / 2;
            } else {
                if k % 2 != 0 {
                    return None;
                }
                mono.0[v] = k / 2;
            }
        }
        return Some(Expr {
            chart: e.chart.clone(),
            atoms: e.atoms.clone(),
            num: MultiPoly::monomial(e.num.nvars, mono, Constant::one(&e.chart.mode)),
            den: MultiPoly::one(e.num.nvars, &e.chart.mode),
        });
    }
    None
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        Chart::same(&self.chart, &other.chart)
            && self.atoms == other.atoms
            && self.num == other.num
            && self.den == other.den
    }
}

impl Eq for Expr {}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr[{}]({:?})/({:?})", self.chart.name, self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::ConstMode;
    use crate::lattice::ExpForm;

    fn roll_chart() -> Arc<Chart> {
        Chart::new("roll", &["x", "y", "z", "p", "q"], &ConstMode::generic())
    }

    fn monge_chart() -> Arc<Chart> {
        Chart::with_roots(
            "monge",
            &["x", "y", "z", "p", "q"],
            &["x", "q"],
            &ConstMode::generic(),
        )
    }

    fn form_on(chart: &Arc<Chart>, entries: &[(&str, Constant)]) -> ExpForm {
        let mut v = vec![Constant::zero(&chart.mode); chart.dim()];
        for (name, c) in entries {
            v[chart.index_of(name).unwrap()] = c.clone();
        }
        ExpForm(v)
    }

    #[test]
    fn exp_lattice_cancellation() {
        // exp(alpha x) * exp(-alpha x) - 1 == 0
        let ch = roll_chart();
        let a = Constant::alpha(&ch.mode);
        let e1 = Expr::exp_form(&ch, form_on(&ch, &[("x", a.clone())])).unwrap();
        let e2 = Expr::exp_form(&ch, form_on(&ch, &[("x", a.neg())])).unwrap();
        let r = e1.mul(&e2).unwrap().sub(&Expr::one(&ch)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn root_relation() {
        // (sqrt q)^2 - q == 0
        let ch = monge_chart();
        let sq = Expr::sqrt_var(&ch, ch.index_of("q").unwrap()).unwrap();
        let q = Expr::var_named(&ch, "q").unwrap();
        assert!(sq.mul(&sq).unwrap().sub(&q).unwrap().is_zero());
    }

    #[test]
    fn theorem_f_square_expansion() {
        // (sqrt q * z - 1/(2 sqrt q * x))^2 == q z^2 - z/x + 1/(4 q x^2)
        let ch = monge_chart();
        let sq = Expr::sqrt_var(&ch, ch.index_of("q").unwrap()).unwrap();
        let q = Expr::var_named(&ch, "q").unwrap();
        let z = Expr::var_named(&ch, "z").unwrap();
        let x = Expr::var_named(&ch, "x").unwrap();
        let half = Expr::ratio(&ch, 1, 2);
        let lhs = sq
            .mul(&z)
            .unwrap()
            .sub(&half.div(&sq.mul(&x).unwrap()).unwrap())
            .unwrap()
            .pow(2)
            .unwrap();
        let rhs = q
            .mul(&z.pow(2).unwrap())
            .unwrap()
            .sub(&z.div(&x).unwrap())
            .unwrap()
            .add(
                &Expr::one(&ch)
                    .div(&q.mul(&x.pow(2).unwrap()).unwrap().scale(&Constant::int(&ch.mode, 4)).unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn diff_exp_and_root() {
        // d/dx exp(alpha x) = alpha exp(alpha x)
        let ch = roll_chart();
        let a = Constant::alpha(&ch.mode);
        let e = Expr::exp_form(&ch, form_on(&ch, &[("x", a.clone())])).unwrap();
        let d = e.differentiate("x").unwrap();
        assert_eq!(d, e.scale(&a).unwrap());

        // d/dq sqrt(q) = 1/(2 sqrt q)
        let mch = monge_chart();
        let sq = Expr::sqrt_var(&mch, mch.index_of("q").unwrap()).unwrap();
        let d = sq.differentiate("q").unwrap();
        let expect = Expr::one(&mch)
            .div(&sq.scale(&Constant::int(&mch.mode, 2)).unwrap())
            .unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn substitute_linear_exponent() {
        // z -> -i(th - ps) in exp(z): equals exp(-i th) * exp(i ps)
        let g = ConstMode::generic();
        let roll = roll_chart();
        let sphere = Chart::new("sphere", &["th", "ph", "ps", "x", "q"], &g);
        let i = Constant::i(&g);
        let ez = Expr::exp_form(&roll, form_on(&roll, &[("z", Constant::one(&g))])).unwrap();
        let binding = Expr::var_named(&sphere, "th")
            .unwrap()
            .sub(&Expr::var_named(&sphere, "ps").unwrap())
            .unwrap()
            .scale(&i.neg())
            .unwrap();
        let out = ez
            .substitute_named(&sphere, &[("z", binding)])
            .unwrap();
        let e_th = Expr::exp_form(&sphere, form_on(&sphere, &[("th", i.neg())])).unwrap();
        let e_ps = Expr::exp_form(&sphere, form_on(&sphere, &[("ps", i.clone())])).unwrap();
        assert_eq!(out, e_th.mul(&e_ps).unwrap());
    }

    #[test]
    fn substitute_identity() {
        let ch = roll_chart();
        let x = Expr::var_named(&ch, "x").unwrap();
        let e = x.pow(3).unwrap();
        let out = e.substitute_named(&ch, &[("x", x.clone())]).unwrap();
        assert_eq!(out, e);
    }

    #[test]
    fn substitution_nonlinear_exponent_rejected() {
        let ch = roll_chart();
        let a = Constant::one(&ch.mode);
        let e = Expr::exp_form(&ch, form_on(&ch, &[("x", a)])).unwrap();
        let y2 = Expr::var_named(&ch, "y").unwrap().pow(2).unwrap();
        let r = e.substitute_named(&ch, &[("x", y2)]);
        assert!(matches!(r, Err(Error::NonLinearExponent(_))));
    }

    #[test]
    fn conjugation() {
        let ch = roll_chart();
        // conj(i) = -i
        let i = Expr::i(&ch);
        assert_eq!(i.conjugate().unwrap(), i.neg());
        // conj(exp(i x / 6)) = exp(-i x / 6)
        let c = Constant::i(&ch.mode)
            .mul(&Constant::ratio(&ch.mode, 1, 6))
            .unwrap();
        let e = Expr::exp_form(&ch, form_on(&ch, &[("x", c.clone())])).unwrap();
        let en = Expr::exp_form(&ch, form_on(&ch, &[("x", c.neg())])).unwrap();
        assert_eq!(e.conjugate().unwrap(), en);
        // involution on a messier expression
        let y = Expr::var_named(&ch, "y").unwrap();
        let mess = e
            .mul(&y)
            .unwrap()
            .add(&Expr::i(&ch))
            .unwrap()
            .div(&y.add(&Expr::int(&ch, 2)).unwrap())
            .unwrap();
        assert_eq!(mess.conjugate().unwrap().conjugate().unwrap(), mess);
    }

    #[test]
    fn ring_laws_spot() {
        let ch = roll_chart();
        let x = Expr::var_named(&ch, "x").unwrap();
        let y = Expr::var_named(&ch, "y").unwrap();
        let a = x.add(&Expr::i(&ch)).unwrap();
        let b = y.pow(2).unwrap().sub(&x).unwrap();
        let c = Expr::alpha(&ch).mul(&y).unwrap();
        let l = a.add(&b).unwrap().add(&c).unwrap();
        let r = a.add(&b.add(&c).unwrap()).unwrap();
        assert_eq!(l, r);
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn fraction_normalizes_units() {
        // 1/exp(z) has numerator exp(z)^{-1} and denominator 1
        let ch = roll_chart();
        let e = Expr::exp_form(&ch, form_on(&ch, &[("z", Constant::one(&ch.mode))])).unwrap();
        let inv = Expr::one(&ch).div(&e).unwrap();
        assert!(inv.den.is_constant());
        assert_eq!(inv.mul(&e).unwrap(), Expr::one(&ch));
    }

    #[test]
    fn mixed_charts_rejected() {
        let a = roll_chart();
        let b = monge_chart();
        let x = Expr::var_named(&a, "x").unwrap();
        let y = Expr::var_named(&b, "y").unwrap();
        assert!(matches!(x.add(&y), Err(Error::ChartMismatch(_, _))));
    }

    #[test]
    fn numeric_eval_exp() {
        let ch = roll_chart();
        let a = Constant::alpha(&ch.mode);
        let e = Expr::exp_form(&ch, form_on(&ch, &[("x", a)])).unwrap();
        let pt = vec![Complex64::new(0.0, 0.0); 5];
        let v = e.eval(&pt, Complex64::new(0.0, 1.0 / 3.0)).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
