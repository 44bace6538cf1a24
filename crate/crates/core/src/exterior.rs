//! Differential forms, vector fields, and coordinate maps on charts.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chart::Chart;
use crate::constant::Constant;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::lattice::ExpForm;
use crate::linalg::{invert_matrix, ExprMatrix, Ledger};

/// Degree-k differential form: sparse table keyed by strictly increasing
/// index tuples.
#[derive(Clone, Debug)]
pub struct DiffForm {
    pub chart: Arc<Chart>,
    pub degree: usize,
    pub comps: BTreeMap<Vec<usize>, Expr>,
}

impl DiffForm {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> DiffForm {
        DiffForm {
            chart: chart.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// The exact differential dv of a chart variable.
    pub fn dvar(chart: &Arc<Chart>, idx: usize) -> DiffForm {
        let mut f = DiffForm::zero(chart, 1);
        f.comps.insert(vec![idx], Expr::one(chart));
        f
    }

    pub fn dvar_named(chart: &Arc<Chart>, name: &str) -> Result<DiffForm> {
        Ok(Self::dvar(chart, chart.index_of(name)?))
    }

    pub fn one_form(chart: &Arc<Chart>, comps: Vec<(usize, Expr)>) -> DiffForm {
        let mut f = DiffForm::zero(chart, 1);
        for (i, e) in comps {
            if !e.is_zero() {
                f.comps.insert(vec![i], e);
            }
        }
        f
    }

    pub fn component(&self, key: &[usize]) -> Expr {
        self.comps
            .get(key)
            .cloned()
            .unwrap_or_else(|| Expr::zero(&self.chart))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn insert_signed(&mut self, key: Vec<usize>, sign: i32, e: Expr) -> Result<()> {
        if e.is_zero() {
            return Ok(());
        }
        let e = if sign < 0 { e.neg() } else { e };
        match self.comps.remove(&key) {
            None => {
                self.comps.insert(key, e);
            }
            Some(old) => {
                let s = old.add(&e)?;
                if !s.is_zero() {
                    self.comps.insert(key, s);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm> {
        Chart::expect_same(&self.chart, &other.chart)?;
        assert_eq!(self.degree, other.degree, "degree mismatch in addition");
        let mut out = self.clone();
        for (k, e) in &other.comps {
            out.insert_signed(k.clone(), 1, e.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        let mut out = self.clone();
        for e in out.comps.values_mut() {
            *e = e.neg();
        }
        out
    }

    pub fn scale(&self, e: &Expr) -> Result<DiffForm> {
        let mut out = DiffForm::zero(&self.chart, self.degree);
        for (k, c) in &self.comps {
            out.insert_signed(k.clone(), 1, c.mul(e)?)?;
        }
        Ok(out)
    }

    /// Graded-commutative wedge product.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        Chart::expect_same(&self.chart, &other.chart)?;
        let deg = self.degree + other.degree;
        let mut out = DiffForm::zero(&self.chart, deg);
        if deg > self.chart.dim() {
            return Ok(out);
        }
        for (ka, ea) in &self.comps {
            for (kb, eb) in &other.comps {
                let mut merged: Vec<usize> = ka.iter().chain(kb.iter()).cloned().collect();
                let sign = sort_parity(&mut merged);
                if sign == 0 {
                    continue;
                }
                out.insert_signed(merged, sign, ea.mul(eb)?)?;
            }
        }
        Ok(out)
    }

    /// Exterior derivative; formal constants contribute nothing.
    pub fn d(&self) -> Result<DiffForm> {
        let mut out = DiffForm::zero(&self.chart, self.degree + 1);
        if self.degree + 1 > self.chart.dim() {
            return Ok(out);
        }
        for (k, e) in &self.comps {
            for v in self.chart.geometric_vars() {
                if k.contains(&v) {
                    continue;
                }
                let de = e.differentiate_slot(v)?;
                if de.is_zero() {
                    continue;
                }
                let mut key: Vec<usize> = std::iter::once(v).chain(k.iter().cloned()).collect();
                let sign = sort_parity(&mut key);
                out.insert_signed(key, sign, de)?;
            }
        }
        Ok(out)
    }

    /// Interior product with a vector field (degree lowers by one).
    pub fn interior(&self, x: &VectorField) -> Result<DiffForm> {
        Chart::expect_same(&self.chart, &x.chart)?;
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        let mut out = DiffForm::zero(&self.chart, self.degree - 1);
        for (k, e) in &self.comps {
            for (pos, &idx) in k.iter().enumerate() {
                let xi = &x.comps[idx];
                if xi.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = k
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != pos)
                    .map(|(_, &i)| i)
                    .collect();
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                out.insert_signed(rest, sign, e.mul(xi)?)?;
            }
        }
        Ok(out)
    }

    /// Pairing of a 1-form with a vector field.
    pub fn pair(&self, x: &VectorField) -> Result<Expr> {
        assert_eq!(self.degree, 1, "pairing needs a 1-form");
        Chart::expect_same(&self.chart, &x.chart)?;
        let mut acc = Expr::zero(&self.chart);
        for (k, e) in &self.comps {
            acc = acc.add(&e.mul(&x.comps[k[0]])?)?;
        }
        Ok(acc)
    }

    /// Lie derivative along a field, expanded by the Leibniz rule on
    /// coefficient functions and coordinate differentials. The Cartan
    /// formula is kept as an independent route for tests.
    pub fn lie_derive(&self, x: &VectorField) -> Result<DiffForm> {
        Chart::expect_same(&self.chart, &x.chart)?;
        let mut out = DiffForm::zero(&self.chart, self.degree);
        for (k, e) in &self.comps {
            // X(e) dx_k
            out.insert_signed(k.clone(), 1, x.apply(e)?)?;
            // e * sum_j dx_{k1} ^ ... ^ d(X_{k_j}) ^ ...
            for (pos, &idx) in k.iter().enumerate() {
                let dx = x.comps[idx].differential()?;
                for (kk, c) in &dx.comps {
                    let j = kk[0];
                    let mut key: Vec<usize> = k
                        .iter()
                        .enumerate()
                        .map(|(p, &i)| if p == pos { j } else { i })
                        .collect();
                    let sign = sort_parity(&mut key);
                    if sign == 0 {
                        continue;
                    }
                    out.insert_signed(key, sign, e.mul(c)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Pull back along a coordinate map (self lives on the map's target).
    pub fn pullback(&self, map: &CoordMap) -> Result<DiffForm> {
        Chart::expect_same(&self.chart, &map.target)?;
        let mut out = DiffForm::zero(&map.source, self.degree);
        // differentials of the components, once
        let diffs: Vec<DiffForm> = {
            let mut v = Vec::with_capacity(map.comps.len());
            for c in &map.comps {
                v.push(c.differential(map)?);
            }
            v
        };
        for (k, e) in &self.comps {
            let coeff = map.pull_expr(e)?;
            if coeff.is_zero() {
                continue;
            }
            // wedge of pulled-back coordinate differentials
            let mut acc: Option<DiffForm> = None;
            for &idx in k {
                let next = &diffs[idx];
                acc = Some(match acc {
                    None => next.clone(),
                    Some(a) => a.wedge(next)?,
                });
                if acc.as_ref().map_or(false, |a| a.is_zero()) {
                    break;
                }
            }
            let wedge = match acc {
                Some(w) => {
                    if w.is_zero() {
                        continue;
                    }
                    w
                }
                None => {
                    // degree 0: plain function pullback
                    let mut f = DiffForm::zero(&map.source, 0);
                    f.insert_signed(vec![], 1, coeff)?;
                    out = out.add(&f)?;
                    continue;
                }
            };
            out = out.add(&wedge.scale(&coeff)?)?;
        }
        Ok(out)
    }
}

/// Sort an index tuple, returning the permutation sign, or 0 on repeats.
impl PartialEq for DiffForm {
    fn eq(&self, other: &Self) -> bool {
        Chart::same(&self.chart, &other.chart)
            && self.degree == other.degree
            && self.comps == other.comps
    }
}

impl PartialEq for VectorField {
    fn eq(&self, other: &Self) -> bool {
        Chart::same(&self.chart, &other.chart) && self.comps == other.comps
    }
}

fn sort_parity(key: &mut [usize]) -> i32 {
    let mut sign = 1i32;
    let n = key.len();
    for i in 0..n {
        for j in (i + 1..n).rev() {
            if key[j - 1] > key[j] {
                key.swap(j - 1, j);
                sign = -sign;
            }
        }
    }
    for w in key.windows(2) {
        if w[0] == w[1] {
            return 0;
        }
    }
    sign
}

/// Vector field: one component expression per chart variable.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub chart: Arc<Chart>,
    pub comps: Vec<Expr>,
}

impl VectorField {
    pub fn zero(chart: &Arc<Chart>) -> VectorField {
        VectorField {
            chart: chart.clone(),
            comps: vec![Expr::zero(chart); chart.dim()],
        }
    }

    pub fn coordinate(chart: &Arc<Chart>, idx: usize) -> VectorField {
        let mut f = Self::zero(chart);
        f.comps[idx] = Expr::one(chart);
        f
    }

    pub fn coordinate_named(chart: &Arc<Chart>, name: &str) -> Result<VectorField> {
        Ok(Self::coordinate(chart, chart.index_of(name)?))
    }

    pub fn from_comps(chart: &Arc<Chart>, comps: Vec<(usize, Expr)>) -> VectorField {
        let mut f = Self::zero(chart);
        for (i, e) in comps {
            f.comps[i] = e;
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        Chart::expect_same(&self.chart, &other.chart)?;
        let comps: Result<Vec<Expr>> = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(VectorField {
            chart: self.chart.clone(),
            comps: comps?,
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, e: &Expr) -> Result<VectorField> {
        let comps: Result<Vec<Expr>> = self.comps.iter().map(|c| c.mul(e)).collect();
        Ok(VectorField {
            chart: self.chart.clone(),
            comps: comps?,
        })
    }

    pub fn scale_const(&self, c: &Constant) -> Result<VectorField> {
        self.scale(&Expr::constant(&self.chart, c.clone()))
    }

    /// Apply the field to a function (directional derivative).
    pub fn apply(&self, f: &Expr) -> Result<Expr> {
        Chart::expect_same(&self.chart, &f.chart)?;
        let mut acc = Expr::zero(&self.chart);
        for v in self.chart.geometric_vars() {
            if self.comps[v].is_zero() {
                continue;
            }
            acc = acc.add(&self.comps[v].mul(&f.differentiate_slot(v)?)?)?;
        }
        Ok(acc)
    }

    /// Lie bracket of vector fields.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        Chart::expect_same(&self.chart, &other.chart)?;
        let mut comps = Vec::with_capacity(self.chart.dim());
        for j in 0..self.chart.dim() {
            let a = self.apply(&other.comps[j])?;
            let b = other.apply(&self.comps[j])?;
            comps.push(a.sub(&b)?);
        }
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    /// Push forward along a coordinate map with a declared inverse.
    pub fn pushforward(&self, map: &CoordMap) -> Result<VectorField> {
        Chart::expect_same(&self.chart, &map.source)?;
        let inv = map
            .inverse
            .as_ref()
            .ok_or_else(|| Error::NoInverseDeclared(map.name.clone()))?;
        let mut comps = Vec::with_capacity(map.target.dim());
        for j in 0..map.target.dim() {
            // X applied to the j-th component, then expressed in target
            // coordinates through the inverse
            let xj = map.comps[j].apply_field(self, map)?;
            comps.push(inv.pull_expr(&xj)?);
        }
        Ok(VectorField {
            chart: map.target.clone(),
            comps,
        })
    }

    pub fn conjugate(&self) -> Result<VectorField> {
        let comps: Result<Vec<Expr>> = self.comps.iter().map(|e| e.conjugate()).collect();
        Ok(VectorField {
            chart: self.chart.clone(),
            comps: comps?,
        })
    }
}

trait Differential {
    fn differential(&self) -> Result<DiffForm>;
}

impl Differential for Expr {
    fn differential(&self) -> Result<DiffForm> {
        let mut out = DiffForm::zero(&self.chart, 1);
        for v in self.chart.geometric_vars() {
            let d = self.differentiate_slot(v)?;
            if !d.is_zero() {
                out.comps.insert(vec![v], d);
            }
        }
        Ok(out)
    }
}

/// Exact differential of a scalar function.
pub fn d_scalar(e: &Expr) -> Result<DiffForm> {
    e.differential()
}

/// One component of a coordinate map: a plain expression, possibly plus
/// rational multiples of logarithms of expressions.
#[derive(Clone, Debug)]
pub struct MapComponent {
    pub plain: Expr,
    pub logs: Vec<(Constant, Expr)>,
}

impl MapComponent {
    pub fn plain(e: Expr) -> MapComponent {
        MapComponent {
            plain: e,
            logs: vec![],
        }
    }

    pub fn with_logs(plain: Expr, logs: Vec<(Constant, Expr)>) -> MapComponent {
        MapComponent { plain, logs }
    }

    fn is_plain(&self) -> bool {
        self.logs.is_empty()
    }

    /// d(plain + sum l log g) = d(plain) + sum l dg/g, on the source chart.
    fn differential(&self, map: &CoordMap) -> Result<DiffForm> {
        let mut out = self.plain.differential()?;
        for (l, g) in &self.logs {
            let dg = g.differential()?;
            let coef = Expr::constant(&map.source, l.clone()).div(g)?;
            out = out.add(&dg.scale(&coef)?)?;
        }
        Ok(out)
    }

    /// Apply a source-chart vector field to the component.
    fn apply_field(&self, x: &VectorField, _map: &CoordMap) -> Result<Expr> {
        let mut acc = x.apply(&self.plain)?;
        for (l, g) in &self.logs {
            let xg = x.apply(g)?;
            let coef = Expr::constant(&x.chart, l.clone());
            acc = acc.add(&coef.mul(&xg.div(g)?)?)?;
        }
        Ok(acc)
    }
}

/// A chart-to-chart map: one component per target variable, given in source
/// coordinates. An optional inverse is verified on construction.
#[derive(Clone, Debug)]
pub struct CoordMap {
    pub name: String,
    pub source: Arc<Chart>,
    pub target: Arc<Chart>,
    pub comps: Vec<MapComponent>,
    pub inverse: Option<Box<CoordMap>>,
}

impl CoordMap {
    pub fn new(
        name: &str,
        source: &Arc<Chart>,
        target: &Arc<Chart>,
        comps: Vec<MapComponent>,
    ) -> Result<CoordMap> {
        assert_eq!(comps.len(), target.dim(), "one component per target variable");
        for c in &comps {
            Chart::expect_same(&c.plain.chart, source)?;
            for (_, g) in &c.logs {
                Chart::expect_same(&g.chart, source)?;
            }
        }
        Ok(CoordMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            comps,
            inverse: None,
        })
    }

    pub fn new_plain(
        name: &str,
        source: &Arc<Chart>,
        target: &Arc<Chart>,
        comps: Vec<Expr>,
    ) -> Result<CoordMap> {
        Self::new(
            name,
            source,
            target,
            comps.into_iter().map(MapComponent::plain).collect(),
        )
    }

    /// Attach and verify an inverse: both compositions must be the identity.
    pub fn with_inverse(mut self, inverse: CoordMap) -> Result<CoordMap> {
        Chart::expect_same(&self.target, &inverse.source)?;
        Chart::expect_same(&self.source, &inverse.target)?;
        self.verify_composition_identity(&inverse)?;
        inverse.verify_composition_identity(&self)?;
        self.inverse = Some(Box::new(inverse));
        Ok(self)
    }

    /// Check that inv(self(x)) = x for every source variable.
    fn verify_composition_identity(&self, inverse: &CoordMap) -> Result<()> {
        for (j, comp) in inverse.comps.iter().enumerate() {
            // skip formal constants: maps do not bind them
            if inverse.target.constant[j] {
                continue;
            }
            let (composed, logs) = self.compose_component_full(comp)?;
            let expect = Expr::var(&self.source, j);
            let ok = logs.is_empty() && composed.sub(&expect)?.is_zero();
            if !ok {
                return Err(Error::DivisionByZero(format!(
                    "declared inverse of `{}` fails on `{}`",
                    self.name, inverse.target.vars[j]
                )));
            }
        }
        Ok(())
    }

    /// Value of a target-chart component of `other` after this map, i.e.
    /// other_j(self(x)). Logarithmic parts must collapse.
    fn compose_component(&self, comp: &MapComponent) -> Result<Expr> {
        let (plain, logs) = self.compose_component_full(comp)?;
        if !logs.is_empty() {
            return Err(Error::NonLinearExponent(format!(
                "logarithm does not collapse while composing `{}`",
                self.name
            )));
        }
        Ok(plain)
    }

    /// Composition keeping residual logarithms symbolic. Log-bearing target
    /// variables may occur linearly with constant coefficients in the plain
    /// part; log arguments combine, cancel, and collapse where possible.
    fn compose_component_full(
        &self,
        comp: &MapComponent,
    ) -> Result<(Expr, Vec<(Constant, Expr)>)> {
        let mut logs: Vec<(Constant, Expr)> = Vec::new();
        // split the plain part into log-slot occurrences and the rest
        let log_slots: Vec<usize> = (0..self.target.dim())
            .filter(|&v| !self.comps[v].is_plain())
            .collect();
        let mut acc = Expr::zero(&self.source);
        if !log_slots.is_empty() && !comp.plain.is_zero() {
            let mut rest = comp.plain.clone();
            for &v in &log_slots {
                // extract the linear, constant-coefficient polynomial
                // occurrence c * v; exponential occurrences stay in `rest`
                // for the pullback's atom handler
                let coef = match linear_coefficient(&rest, v) {
                    Ok(c) => c,
                    Err(e) => {
                        return Err(Error::NonLinearExponent(format!(
                            "`{}` across a logarithmic component: {}",
                            self.target.vars[v], e
                        )))
                    }
                };
                let Some(coef) = coef else { continue };
                let var = Expr::var(&self.target, v);
                rest = rest.sub(&var.scale(&coef)?)?;
                // contribute coef * (plain_v + sum l log g)
                acc = acc.add(&self.comps[v].plain.scale(&coef)?)?;
                for (l, g) in &self.comps[v].logs {
                    logs.push((coef.mul(l)?, g.clone()));
                }
            }
            acc = acc.add(&self.pull_expr(&rest)?)?;
        } else {
            acc = self.pull_expr(&comp.plain)?;
        }
        for (l, g) in &comp.logs {
            let gs = self.pull_expr(g)?;
            logs.push((l.clone(), gs));
        }
        // merge equal arguments, then collapse unit monomials
        let mut merged: Vec<(Constant, Expr)> = Vec::new();
        'outer: for (l, g) in logs {
            for (ml, mg) in merged.iter_mut() {
                if *mg == g {
                    *ml = ml.add(&l)?;
                    continue 'outer;
                }
            }
            merged.push((l, g));
        }
        let mut residual = Vec::new();
        for (l, g) in merged {
            if l.is_zero() {
                continue;
            }
            match log_of_unit_monomial(&g) {
                Some(form) => {
                    acc = acc.add(&form.scale(&l)?)?;
                }
                None => residual.push((l, g)),
            }
        }
        Ok((acc, residual))
    }

    /// Pull a target-chart scalar back along the map.
    pub fn pull_expr(&self, e: &Expr) -> Result<Expr> {
        Chart::expect_same(&e.chart, &self.target)?;
        let mut bindings = BTreeMap::new();
        let mut log_slots = false;
        for (j, c) in self.comps.iter().enumerate() {
            if c.is_plain() {
                bindings.insert(j, c.plain.clone());
            } else {
                log_slots = true;
            }
        }
        if !log_slots {
            return e.substitute(&self.source, &bindings);
        }
        // exponential atoms over log-bearing components expand to powers of
        // the log arguments
        let comps = &self.comps;
        let source = self.source.clone();
        let handler = move |form: &ExpForm| -> Option<Result<Expr>> {
            // only intercept forms that touch a log-bearing slot
            let touches = form
                .0
                .iter()
                .enumerate()
                .any(|(v, c)| !c.is_zero() && !comps[v].is_plain());
            if !touches {
                return None;
            }
            Some(expand_exp_with_logs(form, comps, &source))
        };
        e.substitute_full(&self.source, &bindings, Some(&handler))
    }

    /// The declared inverse as a standalone map, with this map attached as
    /// its inverse (so pushforwards along it work).
    pub fn inverted(&self) -> Result<CoordMap> {
        let inv = self
            .inverse
            .as_ref()
            .ok_or_else(|| Error::NoInverseDeclared(self.name.clone()))?;
        let mut out = inv.as_ref().clone();
        let mut fwd = self.clone();
        fwd.inverse = None;
        out.inverse = Some(Box::new(fwd));
        Ok(out)
    }

    /// Compose plain maps: self then `after` (so the result maps
    /// self.source -> after.target).
    pub fn compose(&self, after: &CoordMap, name: &str) -> Result<CoordMap> {
        Chart::expect_same(&self.target, &after.source)?;
        let mut comps = Vec::with_capacity(after.comps.len());
        for c in &after.comps {
            comps.push(MapComponent::plain(self.compose_component(c)?));
        }
        CoordMap::new(name, &self.source, &after.target, comps)
    }
}

/// The constant c when the polynomial dependence of `e` on chart slot `v`
/// is exactly c * v (exponential-atom dependence not counted); None when
/// there is no polynomial occurrence; an error message otherwise.
fn linear_coefficient(
    e: &Expr,
    v: usize,
) -> std::result::Result<Option<crate::constant::Constant>, String> {
    if e.den.terms.keys().any(|m| m.0[v] != 0) {
        return Err("denominator depends on the variable".into());
    }
    let den_c = e
        .den
        .constant_value(&e.chart.mode)
        .ok_or_else(|| "nonconstant denominator".to_string())?;
    let mut coef: Option<crate::constant::Constant> = None;
    for (m, c) in &e.num.terms {
        let k = m.0[v];
        if k == 0 {
            continue;
        }
        let clean = k == 1
            && m.0
                .iter()
                .enumerate()
                .all(|(w, &x)| w == v || x == 0);
        if !clean {
            return Err("nonlinear polynomial occurrence".into());
        }
        let val = c.div(&den_c).map_err(|e| e.to_string())?;
        coef = Some(match coef {
            None => val,
            Some(old) => old.add(&val).map_err(|e| e.to_string())?,
        });
    }
    Ok(coef)
}

/// exp(sum_v c_v * component_v) where some components carry logs:
/// exp(c*(plain + sum l log g)) = exp(c*plain) * prod g^(c*l), requiring
/// integer powers.
fn expand_exp_with_logs(
    form: &ExpForm,
    comps: &[MapComponent],
    source: &Arc<Chart>,
) -> Result<Expr> {
    let mut linear = ExpForm(vec![Constant::zero(&source.mode); source.dim()]);
    let mut factor = Expr::one(source);
    for (v, coef) in form.0.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let comp = &comps[v];
        // plain part must stay a homogeneous linear form
        if !comp.plain.is_zero() {
            let lf = comp.plain.as_linear_form().ok_or_else(|| {
                Error::NonLinearExponent(format!(
                    "plain part of component `{}` is not linear",
                    source.vars.get(v).cloned().unwrap_or_default()
                ))
            })?;
            let scaled: Result<Vec<Constant>> = lf.0.iter().map(|c| c.mul(coef)).collect();
            linear = linear.add(&ExpForm(scaled?))?;
        }
        for (l, g) in &comp.logs {
            let power = coef.mul(l)?;
            let k = power
                .as_rational()
                .and_then(|q| {
                    use num_traits::ToPrimitive;
                    if q.is_integer() {
                        q.numer().to_i32()
                    } else {
                        None
                    }
                })
                .ok_or_else(|| {
                    Error::NonLinearExponent(format!(
                        "log power `{}` is not an integer",
                        power
                    ))
                })?;
            factor = factor.mul(&g.pow(k)?)?;
        }
    }
    let base = Expr::exp_form(source, linear)?;
    base.mul(&factor)
}

/// Symbolic logarithm of a unit monomial: constant one times a product of
/// exponential atoms. Returns the linear form as an expression.
fn log_of_unit_monomial(e: &Expr) -> Option<Expr> {
    if !e.den.is_constant() || e.num.terms.len() != 1 {
        return None;
    }
    let dc = e.den.constant_value(&e.chart.mode)?;
    let (m, c) = e.num.terms.iter().next().unwrap();
    let coef = c.div(&dc).ok()?;
    if !coef.is_one() {
        return None;
    }
    let dim = e.chart.dim();
    // chart variables are not allowed under the log here
    if m.0[..dim].iter().any(|&k| k != 0) {
        return None;
    }
    let mut acc = Expr::zero(&e.chart);
    for (b, f) in e.atoms.iter().enumerate() {
        let k = m.0[dim + b];
        if k == 0 {
            continue;
        }
        // k * (linear form as scalar expression)
        let mut term = Expr::zero(&e.chart);
        for (v, cv) in f.0.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            let ve = Expr::var(&e.chart, v);
            term = term.add(&ve.scale(cv).ok()?).ok()?;
        }
        acc = acc
            .add(&term.scale(&Constant::int(&e.chart.mode, k as i64)).ok()?)
            .ok()?;
    }
    Some(acc)
}

/// Dual frame of n independent 1-forms on an n-dimensional chart.
pub fn dual_frame(coframe: &[DiffForm]) -> Result<(Vec<VectorField>, Ledger)> {
    assert!(!coframe.is_empty());
    let chart = coframe[0].chart.clone();
    let n = chart.dim();
    assert_eq!(coframe.len(), n, "need exactly dim forms");
    let mut m = ExprMatrix::new(&chart, n, n);
    for (i, f) in coframe.iter().enumerate() {
        assert_eq!(f.degree, 1);
        for (k, e) in &f.comps {
            m.set(i, k[0], e.clone());
        }
    }
    let (inv, ledger) = invert_matrix(&m)?;
    let mut fields = Vec::with_capacity(n);
    for j in 0..n {
        let comps: Vec<Expr> = (0..n).map(|k| inv.at(k, j).clone()).collect();
        fields.push(VectorField {
            chart: chart.clone(),
            comps,
        });
    }
    Ok((fields, ledger))
}

/// Cartan-formula route for the Lie derivative, kept separate so tests can
/// compare it with the Leibniz-rule implementation.
pub fn lie_derive_cartan(form: &DiffForm, x: &VectorField) -> Result<DiffForm> {
    let a = form.d()?.interior(x)?;
    if form.degree == 0 {
        return Ok(a);
    }
    let b = form.interior(x)?.d()?;
    a.add(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::ConstMode;
    use crate::parse::parse_expr;

    fn chart() -> Arc<Chart> {
        Chart::new("c", &["x", "y", "z"], &ConstMode::generic())
    }

    fn e(ch: &Arc<Chart>, s: &str) -> Expr {
        parse_expr(s, ch).unwrap()
    }

    #[test]
    fn wedge_antisymmetry() {
        let ch = chart();
        let dx = DiffForm::dvar_named(&ch, "x").unwrap();
        let dy = DiffForm::dvar_named(&ch, "y").unwrap();
        assert!(dx.wedge(&dx).unwrap().is_zero());
        let a = dx.wedge(&dy).unwrap();
        let b = dy.wedge(&dx).unwrap();
        assert_eq!(a, b.neg());
    }

    #[test]
    fn d_squared_zero() {
        let ch = chart();
        let f = e(&ch, "x^2*y + z/(x + 1)");
        let df = d_scalar(&f).unwrap();
        assert!(df.d().unwrap().is_zero());
        let dx = DiffForm::dvar_named(&ch, "x").unwrap();
        assert!(dx.d().unwrap().is_zero());
    }

    #[test]
    fn interior_product_basics() {
        let ch = chart();
        let dx = DiffForm::dvar_named(&ch, "x").unwrap();
        let dy = DiffForm::dvar_named(&ch, "y").unwrap();
        let px = VectorField::coordinate_named(&ch, "x").unwrap();
        assert!(dy.interior(&px).unwrap().is_zero());
        let w = dx.wedge(&dy).unwrap();
        let iw = w.interior(&px).unwrap();
        assert_eq!(iw, dy);
        assert!(matches!(
            DiffForm::zero(&ch, 0).interior(&px),
            Err(Error::DegreeZero)
        ));
    }

    #[test]
    fn bracket_coordinates() {
        let ch = chart();
        // [x d/dy, d/dx] = -d/dy
        let a = VectorField::from_comps(&ch, vec![(1, e(&ch, "x"))]);
        let b = VectorField::coordinate_named(&ch, "x").unwrap();
        let br = a.bracket(&b).unwrap();
        assert_eq!(br.comps[1], e(&ch, "-1"));
        assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_routes_agree() {
        let ch = chart();
        let x = VectorField::from_comps(
            &ch,
            vec![(0, e(&ch, "y")), (1, e(&ch, "x*z")), (2, e(&ch, "1"))],
        );
        let f = e(&ch, "x*y - z^2");
        let w = d_scalar(&f)
            .unwrap()
            .scale(&e(&ch, "z"))
            .unwrap()
            .add(&DiffForm::dvar_named(&ch, "y").unwrap())
            .unwrap();
        let a = w.lie_derive(&x).unwrap();
        let b = lie_derive_cartan(&w, &x).unwrap();
        assert_eq!(a.sub(&b).unwrap().is_zero(), true);
    }

    #[test]
    fn pullback_commutes_with_d() {
        let g = ConstMode::generic();
        let src = Chart::new("s", &["u", "v"], &g);
        let dst = Chart::new("t", &["x", "y"], &g);
        let m = CoordMap::new_plain(
            "m",
            &src,
            &dst,
            vec![e(&src, "u^2 - v"), e(&src, "u*v")],
        )
        .unwrap();
        let w = d_scalar(&e(&dst, "x*y")).unwrap().scale(&e(&dst, "y")).unwrap();
        let a = w.pullback(&m).unwrap().d().unwrap();
        let b = w.d().unwrap().pullback(&m).unwrap();
        assert!(a.sub(&b).unwrap().is_zero());
    }

    #[test]
    fn pushforward_and_pairing() {
        let g = ConstMode::generic();
        let src = Chart::new("s", &["u", "v"], &g);
        let dst = Chart::new("t", &["x", "y"], &g);
        let fwd = CoordMap::new_plain("m", &src, &dst, vec![e(&src, "u + v"), e(&src, "v")])
            .unwrap();
        let bwd = CoordMap::new_plain("minv", &dst, &src, vec![e(&dst, "x - y"), e(&dst, "y")])
            .unwrap();
        let m = fwd.with_inverse(bwd).unwrap();
        let xf = VectorField::from_comps(&src, vec![(0, e(&src, "u")), (1, e(&src, "1"))]);
        let pushed = xf.pushforward(&m).unwrap();
        // pairing invariance: <w, push X> = pull <w composed>, spot check
        let w = DiffForm::one_form(&dst, vec![(0, e(&dst, "y")), (1, e(&dst, "x"))]);
        let lhs = w.pair(&pushed).unwrap();
        let rhs = m.pull_expr(&lhs).unwrap();
        let pulled_w = w.pullback(&m).unwrap();
        let direct = pulled_w.pair(&xf).unwrap();
        assert_eq!(rhs.sub(&direct).unwrap().is_zero(), true);
    }

    #[test]
    fn dual_frame_of_coordinates() {
        let ch = chart();
        let co: Vec<DiffForm> = (0..3).map(|i| DiffForm::dvar(&ch, i)).collect();
        let (fr, ledger) = dual_frame(&co).unwrap();
        for (i, f) in fr.iter().enumerate() {
            for (j, c) in f.comps.iter().enumerate() {
                assert_eq!(!c.is_zero(), i == j);
            }
        }
        assert!(ledger.is_empty());
    }

    #[test]
    fn map_with_logs_pullback() {
        // target variable t = log-bearing: t = (1/2) log(u), so
        // exp(2 t) pulls back to u.
        let g = ConstMode::generic();
        let src = Chart::new("s", &["u"], &g);
        let dst = Chart::new("t", &["t"], &g);
        let comp = MapComponent::with_logs(
            Expr::zero(&src),
            vec![(Constant::ratio(&g, 1, 2), e(&src, "u"))],
        );
        let m = CoordMap::new("lg", &src, &dst, vec![comp]).unwrap();
        let two = Constant::int(&g, 2);
        let et = Expr::exp_form(
            &dst,
            crate::lattice::ExpForm(vec![two]),
        )
        .unwrap();
        let pulled = m.pull_expr(&et).unwrap();
        assert_eq!(pulled, e(&src, "u"));
        // non-integer power errors
        let et3 = Expr::exp_form(
            &dst,
            crate::lattice::ExpForm(vec![Constant::int(&g, 3)]),
        )
        .unwrap();
        assert!(matches!(
            m.pull_expr(&et3),
            Err(Error::NonLinearExponent(_))
        ));
    }
}
