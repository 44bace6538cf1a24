//! Bracket generation, exact structure constants, the Killing form, and
//! root data.

use std::sync::Arc;

use crate::constant::{ConstMode, Constant};
use crate::error::{Error, Result};
use crate::exterior::VectorField;
use crate::expr::Expr;
use crate::poly::{Mono, MultiPoly};

/// The labeled fields produced by the pairwise bracket-generation recipe,
/// in the order S1..S6, L1..L6, h, H.
pub struct GeneratedSet {
    pub fields: Vec<(String, VectorField)>,
}

impl GeneratedSet {
    pub fn field(&self, label: &str) -> &VectorField {
        &self
            .fields
            .iter()
            .find(|(l, _)| l == label)
            .unwrap_or_else(|| panic!("no field labeled `{}`", label))
            .1
    }

    pub fn vector_fields(&self) -> Vec<VectorField> {
        self.fields.iter().map(|(_, f)| f.clone()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.fields.iter().map(|(l, _)| l.clone()).collect()
    }

    /// The commuting pair spanning the Cartan subalgebra: (h - H)/4 and
    /// sqrt3 (h + H)/12.
    pub fn cartan_pair(&self) -> Result<(VectorField, VectorField)> {
        let h = self.field("h");
        let cap_h = self.field("H");
        let mode = &h.chart.mode;
        let c1 = h
            .sub(cap_h)?
            .scale_const(&Constant::ratio(mode, 1, 4))?;
        let c2 = h
            .add(cap_h)?
            .scale_const(&Constant::sqrt3(mode).mul(&Constant::ratio(mode, 1, 12))?)?;
        Ok((c1, c2))
    }
}

/// Bracket-generate the 14-field set from the three seeds:
/// S4=[S1,S2], S5=[S2,S3], S6=[S3,S1], L1=[S1,S4], L3=[S2,S5], L5=[S3,S6],
/// L2=[S2,S4], L4=[S3,S5], L6=[S1,S6], H=[S2,S6], h=[S4,S3].
pub fn generate_g2_set(
    s1: &VectorField,
    s2: &VectorField,
    s3: &VectorField,
) -> Result<GeneratedSet> {
    use rayon::prelude::*;
    let level1: Result<Vec<VectorField>> = vec![(s1, s2), (s2, s3), (s3, s1)]
        .into_par_iter()
        .map(|(a, b)| a.bracket(b))
        .collect();
    let level1 = level1?;
    let (s4, s5, s6) = (level1[0].clone(), level1[1].clone(), level1[2].clone());
    let pairs: Vec<(&VectorField, &VectorField)> = vec![
        (s1, &s4),
        (s2, &s5),
        (s3, &s6),
        (s2, &s4),
        (s3, &s5),
        (s1, &s6),
        (s2, &s6),
        (&s4, s3),
    ];
    let level2: Result<Vec<VectorField>> = pairs
        .into_par_iter()
        .map(|(a, b)| a.bracket(b))
        .collect();
    let level2 = level2?;
    let l1 = level2[0].clone();
    let l3 = level2[1].clone();
    let l5 = level2[2].clone();
    let l2 = level2[3].clone();
    let l4 = level2[4].clone();
    let l6 = level2[5].clone();
    let cap_h = level2[6].clone();
    let h = level2[7].clone();
    let fields = vec![
        ("S1".to_string(), s1.clone()),
        ("S2".to_string(), s2.clone()),
        ("S3".to_string(), s3.clone()),
        ("S4".to_string(), s4),
        ("S5".to_string(), s5),
        ("S6".to_string(), s6),
        ("L1".to_string(), l1),
        ("L2".to_string(), l2),
        ("L3".to_string(), l3),
        ("L4".to_string(), l4),
        ("L5".to_string(), l5),
        ("L6".to_string(), l6),
        ("h".to_string(), h),
        ("H".to_string(), cap_h),
    ];
    Ok(GeneratedSet { fields })
}

/// Exact structure constants over the constant field.
pub struct LiePresentation {
    pub labels: Vec<String>,
    /// constants[i][j] = coefficient vector of [X_i, X_j] over the basis
    pub constants: Vec<Vec<Vec<Constant>>>,
    pub mode: Arc<ConstMode>,
}

/// Express `target` as a constant-coefficient combination of `basis`, by
/// matching monomials after clearing denominators. Returns None when no
/// constant combination exists.
pub fn constant_combination(
    basis: &[VectorField],
    target: &VectorField,
) -> Result<Option<Vec<Constant>>> {
    let chart = target.chart.clone();
    let mode = chart.mode.clone();
    let n = basis.len();
    // one linear system over the constants, rows indexed by
    // (component, monomial)
    let mut rows: Vec<Vec<Constant>> = Vec::new();
    for j in 0..chart.dim() {
        let mut exprs: Vec<Expr> = basis.iter().map(|b| b.comps[j].clone()).collect();
        exprs.push(target.comps[j].clone());
        if exprs.iter().all(|e| e.is_zero()) {
            continue;
        }
        // common denominator
        let mut lcm = Expr::one(&chart);
        for e in &exprs {
            if e.is_zero() {
                continue;
            }
            let d = e.den_expr()?;
            let g = lcm.gcd_with(&d)?;
            lcm = lcm.mul(&d.div(&g)?)?;
        }
        let scaled: Result<Vec<Expr>> = exprs.iter().map(|e| e.mul(&lcm)).collect();
        let scaled = scaled?;
        let (_, pairs) = Expr::align_many(&scaled)?;
        // all denominators must now be constant
        let mut polys: Vec<MultiPoly> = Vec::with_capacity(pairs.len());
        for (num, den) in &pairs {
            let dc = den
                .constant_value(&mode)
                .ok_or_else(|| Error::ExpressionTooLarge("lcm clearing failed".into()))?;
            polys.push(num.scale(&dc.inv()?)?);
        }
        let monos: std::collections::BTreeSet<Mono> = polys
            .iter()
            .flat_map(|p| p.terms.keys().cloned())
            .collect();
        for m in monos {
            let mut row = Vec::with_capacity(n + 1);
            for p in &polys {
                row.push(
                    p.terms
                        .get(&m)
                        .cloned()
                        .unwrap_or_else(|| Constant::zero(&mode)),
                );
            }
            rows.push(row);
        }
    }
    solve_constant_system(&mut rows, n, &mode)
}

/// Gaussian elimination over the constant field; the last column is the
/// right-hand side. Returns None on inconsistency; free unknowns are zero.
fn solve_constant_system(
    rows: &mut Vec<Vec<Constant>>,
    n: usize,
    mode: &Arc<ConstMode>,
) -> Result<Option<Vec<Constant>>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut top = 0usize;
    for col in 0..n {
        let Some(r) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, r);
        let inv = rows[top][col].inv()?;
        for c in col..=n {
            rows[top][c] = rows[top][c].mul(&inv)?;
        }
        for r in 0..rows.len() {
            if r == top || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..=n {
                let t = f.mul(&rows[top][c])?;
                rows[r][c] = rows[r][c].sub(&t)?;
            }
        }
        pivots.push((top, col));
        top += 1;
    }
    // inconsistency: zero lhs with nonzero rhs
    for r in rows.iter() {
        if r[..n].iter().all(|c| c.is_zero()) && !r[n].is_zero() {
            return Ok(None);
        }
    }
    let mut x = vec![Constant::zero(mode); n];
    for (r, c) in pivots {
        x[c] = rows[r][n].clone();
    }
    Ok(Some(x))
}

/// Linear independence over constants: no nontrivial constant kernel.
pub fn constants_independent(fields: &[VectorField]) -> Result<bool> {
    // solve sum c_k X_k = 0: any pivot-free column signals dependence
    let chart = fields[0].chart.clone();
    let mode = chart.mode.clone();
    let n = fields.len();
    let mut rows: Vec<Vec<Constant>> = Vec::new();
    for j in 0..chart.dim() {
        let exprs: Vec<Expr> = fields.iter().map(|b| b.comps[j].clone()).collect();
        if exprs.iter().all(|e| e.is_zero()) {
            continue;
        }
        let mut lcm = Expr::one(&chart);
        for e in &exprs {
            if e.is_zero() {
                continue;
            }
            let d = e.den_expr()?;
            let g = lcm.gcd_with(&d)?;
            lcm = lcm.mul(&d.div(&g)?)?;
        }
        let scaled: Result<Vec<Expr>> = exprs.iter().map(|e| e.mul(&lcm)).collect();
        let scaled = scaled?;
        let (_, pairs) = Expr::align_many(&scaled)?;
        let mut polys: Vec<MultiPoly> = Vec::with_capacity(pairs.len());
        for (num, den) in &pairs {
            let dc = den
                .constant_value(&mode)
                .ok_or_else(|| Error::ExpressionTooLarge("lcm clearing failed".into()))?;
            polys.push(num.scale(&dc.inv()?)?);
        }
        let monos: std::collections::BTreeSet<Mono> = polys
            .iter()
            .flat_map(|p| p.terms.keys().cloned())
            .collect();
        for m in monos {
            let mut row: Vec<Constant> = Vec::with_capacity(n);
            for p in &polys {
                row.push(
                    p.terms
                        .get(&m)
                        .cloned()
                        .unwrap_or_else(|| Constant::zero(&mode)),
                );
            }
            rows.push(row);
        }
    }
    // rank of the homogeneous system equals n iff independent
    let mut top = 0usize;
    for col in 0..n {
        let Some(r) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Ok(false);
        };
        rows.swap(top, r);
        let inv = rows[top][col].inv()?;
        let pivot_row: Vec<Constant> = rows[top]
            .iter()
            .map(|c| c.mul(&inv))
            .collect::<Result<_>>()?;
        rows[top] = pivot_row;
        for r in 0..rows.len() {
            if r == top || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in 0..n {
                let t = f.mul(&rows[top][c])?;
                rows[r][c] = rows[r][c].sub(&t)?;
            }
        }
        top += 1;
    }
    Ok(true)
}

/// Close the bracket table over the given basis with constant coefficients.
pub fn closure_structure_constants(
    labels: Vec<String>,
    fields: &[VectorField],
) -> Result<LiePresentation> {
    assert_eq!(labels.len(), fields.len());
    let n = fields.len();
    let mode = fields[0].chart.mode.clone();
    if !constants_independent(fields)? {
        return Err(Error::DependentBasis);
    }
    use rayon::prelude::*;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let solved: Result<Vec<((usize, usize), Vec<Constant>)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let br = fields[i].bracket(&fields[j])?;
            if br.is_zero() {
                return Ok(((i, j), vec![Constant::zero(&mode); n]));
            }
            match constant_combination(fields, &br)? {
                Some(c) => Ok(((i, j), c)),
                None => {
                    // distinguish: solvable with function coefficients?
                    match crate::distgeo::span_membership_fields(&br, fields)? {
                        crate::distgeo::SpanResult::InSpan { .. } => {
                            Err(Error::NotConstantCoefficients(format!(
                                "[{}, {}]",
                                labels[i], labels[j]
                            )))
                        }
                        crate::distgeo::SpanResult::NotInSpan { .. } => Err(Error::NotClosed(
                            format!("[{}, {}]", labels[i], labels[j]),
                        )),
                    }
                }
            }
        })
        .collect();
    let solved = solved?;
    let zero_row = vec![Constant::zero(&mode); n];
    let mut constants = vec![vec![zero_row.clone(); n]; n];
    for ((i, j), c) in solved {
        let negc: Vec<Constant> = c.iter().map(|x| x.neg()).collect();
        constants[i][j] = c;
        constants[j][i] = negc;
    }
    Ok(LiePresentation {
        labels,
        constants,
        mode,
    })
}

impl LiePresentation {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Jacobi identity on the structure constants, checked exactly.
    pub fn jacobi_holds(&self) -> Result<bool> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut acc = Constant::zero(&self.mode);
                        for m in 0..n {
                            // c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj
                            let t1 = self.constants[i][j][m].mul(&self.constants[m][k][l])?;
                            let t2 = self.constants[j][k][m].mul(&self.constants[m][i][l])?;
                            let t3 = self.constants[k][i][m].mul(&self.constants[m][j][l])?;
                            acc = acc.add(&t1)?.add(&t2)?.add(&t3)?;
                        }
                        if !acc.is_zero() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Bracket of two constant-coefficient combinations, as a coefficient
    /// vector.
    pub fn bracket_coords(&self, a: &[Constant], b: &[Constant]) -> Result<Vec<Constant>> {
        let n = self.dim();
        let mut out = vec![Constant::zero(&self.mode); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let f = a[i].mul(&b[j])?;
                for k in 0..n {
                    let c = &self.constants[i][j][k];
                    if !c.is_zero() {
                        out[k] = out[k].add(&f.mul(c)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Killing form B(x_i, x_j) = trace(ad x_i . ad x_j).
    pub fn killing_matrix(&self) -> Result<Vec<Vec<Constant>>> {
        let n = self.dim();
        let mut b = vec![vec![Constant::zero(&self.mode); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = Constant::zero(&self.mode);
                for k in 0..n {
                    for m in 0..n {
                        let c1 = &self.constants[i][m][k];
                        if c1.is_zero() {
                            continue;
                        }
                        let c2 = &self.constants[j][k][m];
                        if c2.is_zero() {
                            continue;
                        }
                        acc = acc.add(&c1.mul(c2)?)?;
                    }
                }
                b[i][j] = acc.clone();
                b[j][i] = acc;
            }
        }
        Ok(b)
    }

    /// True when every structure constant lies in the real subfield.
    pub fn constants_real(&self) -> bool {
        self.constants.iter().flatten().flatten().all(|c| {
            c.is_zero() || c.as_numelem().map_or(false, |e| e.is_real())
        })
    }
}

/// Signature (positives, zeros, negatives) of a symmetric constant matrix,
/// by exact symmetric Gaussian (congruence) reduction.
pub fn killing_signature(b: &[Vec<Constant>]) -> Result<(usize, usize, usize)> {
    let n = b.len();
    let mode = b[0][0].mode.clone();
    let mut m: Vec<Vec<Constant>> = b.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut zero = 0usize;
    while let Some(&_first) = active.first() {
        // prefer a nonzero diagonal entry
        let diag = active
            .iter()
            .position(|&i| !m[i][i].is_zero());
        let pivot = match diag {
            Some(pidx) => active[pidx],
            None => {
                // all remaining diagonal zero: find off-diagonal nonzero
                let mut found = None;
                'outer: for (ai, &i) in active.iter().enumerate() {
                    for &j in &active[ai + 1..] {
                        if !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    None => {
                        zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // row/col trick: x_i <- x_i + x_j makes the diagonal
                        // entry 2 B_ij
                        for k in 0..n {
                            let t = m[j][k].clone();
                            m[i][k] = m[i][k].add(&t)?;
                        }
                        for k in 0..n {
                            let t = m[k][j].clone();
                            m[k][i] = m[k][i].add(&t)?;
                        }
                        i
                    }
                }
            }
        };
        let d = m[pivot][pivot].clone();
        match d.sign()? {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        active.retain(|&i| i != pivot);
        // eliminate the pivot row/column symmetric part
        let dinv = d.inv()?;
        for &i in &active.clone() {
            if m[i][pivot].is_zero() {
                continue;
            }
            let f = m[i][pivot].mul(&dinv)?;
            for k in 0..n {
                let t = f.mul(&m[pivot][k])?;
                m[i][k] = m[i][k].sub(&t)?;
            }
            for k in 0..n {
                let t = f.mul(&m[k][pivot])?;
                m[k][i] = m[k][i].sub(&t)?;
            }
        }
    }
    let _ = mode;
    Ok((pos, zero, neg))
}

/// Root datum: the simultaneous ad-eigenvalue pair of each non-Cartan basis
/// element under the Cartan pair.
pub struct RootDatum {
    /// (label, eigenvalue under ad C1, eigenvalue under ad C2)
    pub pairs: Vec<(String, Constant, Constant)>,
}

/// Verify each of the 12 non-Cartan fields is a simultaneous eigenvector of
/// ad(C1), ad(C2) where C1 = (h-H)/4 and C2 = sqrt3 (h+H)/12 in the
/// presentation basis {S1..S6, L1..L6, h, H}.
pub fn root_decomposition(p: &LiePresentation) -> Result<RootDatum> {
    let n = p.dim();
    assert_eq!(n, 14, "root decomposition expects the 14-field basis");
    let mode = &p.mode;
    let idx_h = p.labels.iter().position(|l| l == "h").expect("h");
    let idx_cap_h = p.labels.iter().position(|l| l == "H").expect("H");
    let mut c1 = vec![Constant::zero(mode); n];
    c1[idx_h] = Constant::ratio(mode, 1, 4);
    c1[idx_cap_h] = Constant::ratio(mode, -1, 4);
    let mut c2 = vec![Constant::zero(mode); n];
    let s3_12 = Constant::sqrt3(mode).mul(&Constant::ratio(mode, 1, 12))?;
    c2[idx_h] = s3_12.clone();
    c2[idx_cap_h] = s3_12;
    let mut pairs = Vec::new();
    for (i, label) in p.labels.iter().enumerate() {
        if i == idx_h || i == idx_cap_h {
            continue;
        }
        let mut basis_vec = vec![Constant::zero(mode); n];
        basis_vec[i] = Constant::one(mode);
        let mut eigen = Vec::with_capacity(2);
        for cartan in [&c1, &c2] {
            let ad = p.bracket_coords(cartan, &basis_vec)?;
            for (k, c) in ad.iter().enumerate() {
                if k != i && !c.is_zero() {
                    return Err(Error::NotEigenvector(label.clone()));
                }
            }
            eigen.push(ad[i].clone());
        }
        pairs.push((label.clone(), eigen[0].clone(), eigen[1].clone()));
    }
    Ok(RootDatum { pairs })
}

/// The hexagonal reference root positions, scaled by lambda:
/// S1(1,0), S5(-1,0), S4(1/2, s/2), S3(-1/2,-s/2), S2(-1/2, s/2),
/// S6(1/2,-s/2), L1(3/2, s/2), L4(-3/2,-s/2), L3(-3/2, s/2), L6(3/2,-s/2),
/// L2(0, s), L5(0,-s) with s = sqrt3.
pub fn reference_roots(mode: &Arc<ConstMode>) -> Vec<(String, Constant, Constant)> {
    let s = Constant::sqrt3(mode);
    let half = |n: i64| Constant::ratio(mode, n, 2);
    let int = |n: i64| Constant::int(mode, n);
    let sh = |n: i64| s.mul(&Constant::ratio(mode, n, 2)).unwrap();
    let sf = |n: i64| s.mul(&Constant::int(mode, n)).unwrap();
    vec![
        ("S1".into(), int(1), int(0)),
        ("S2".into(), half(-1), sh(1)),
        ("S3".into(), half(-1), sh(-1)),
        ("S4".into(), half(1), sh(1)),
        ("S5".into(), int(-1), int(0)),
        ("S6".into(), half(1), sh(-1)),
        ("L1".into(), half(3), sh(1)),
        ("L2".into(), int(0), sf(1)),
        ("L3".into(), half(-3), sh(1)),
        ("L4".into(), half(-3), sh(-1)),
        ("L5".into(), int(0), sf(-1)),
        ("L6".into(), half(3), sh(-1)),
    ]
}

/// Match computed root pairs against the reference diagram up to one global
/// positive scale; returns the scale when successful.
pub fn match_root_diagram(datum: &RootDatum) -> Result<Constant> {
    assert!(!datum.pairs.is_empty());
    let mode = datum.pairs[0].1.mode.clone();
    let reference = reference_roots(&mode);
    // scale from S1: lambda = computed(S1).x / 1
    let s1 = datum
        .pairs
        .iter()
        .find(|(l, _, _)| l == "S1")
        .ok_or_else(|| Error::NotEigenvector("S1 missing".into()))?;
    let lambda = s1.1.clone();
    if lambda.sign()? <= 0 {
        return Err(Error::ComplexConstants(format!(
            "root scale `{}` is not positive",
            lambda
        )));
    }
    for (label, x, y) in &datum.pairs {
        let (_, rx, ry) = reference
            .iter()
            .find(|(l, _, _)| l == label)
            .ok_or_else(|| Error::NotEigenvector(label.clone()))?;
        if &rx.mul(&lambda)? != x || &ry.mul(&lambda)? != y {
            return Err(Error::NotEigenvector(format!(
                "{} has pair ({}, {}), expected {} * ({}, {})",
                label, x, y, lambda, rx, ry
            )));
        }
    }
    Ok(lambda)
}

/// Real-part check helper for reporting: labels of constants with imaginary
/// parts.
pub fn complex_constant_labels(p: &LiePresentation) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..p.dim() {
        for j in i + 1..p.dim() {
            for (k, c) in p.constants[i][j].iter().enumerate() {
                let real = c.is_zero() || c.as_numelem().map_or(false, |e| e.is_real());
                if !real {
                    out.push(format!(
                        "[{},{}] -> {} coefficient {}",
                        p.labels[i], p.labels[j], p.labels[k], c
                    ));
                }
            }
        }
    }
    out
}

/// A numeric cross-check oracle for signatures: Jacobi eigenvalue iteration
/// on the floating image of the matrix.
pub fn float_signature(b: &[Vec<Constant>], tol: f64) -> Result<(usize, usize, usize)> {
    let n = b.len();
    let mut a = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let e = b[i][j]
                .as_numelem()
                .ok_or_else(|| Error::ComplexConstants("alpha in Killing entry".into()))?;
            if !e.is_real() {
                return Err(Error::ComplexConstants("imaginary Killing entry".into()));
            }
            let v = e.to_complex();
            a[i][j] = v.re;
        }
    }
    // cyclic Jacobi sweeps
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-24 {
            break;
        }
        for i in 0..n {
            for j in i + 1..n {
                if a[i][j].abs() < 1e-18 {
                    continue;
                }
                let theta = 0.5 * (a[j][j] - a[i][i]) / a[i][j];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let aik = a[i][k];
                    let ajk = a[j][k];
                    a[i][k] = c * aik - s * ajk;
                    a[j][k] = s * aik + c * ajk;
                }
                for k in 0..n {
                    let aki = a[k][i];
                    let akj = a[k][j];
                    a[k][i] = c * aki - s * akj;
                    a[k][j] = s * aki + c * akj;
                }
            }
        }
    }
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for i in 0..n {
        if a[i][i] > tol {
            pos += 1;
        } else if a[i][i] < -tol {
            neg += 1;
        } else {
            zero += 1;
        }
    }
    Ok((pos, zero, neg))
}

/// Conjugation applied componentwise to a labeled set.
pub fn conjugate_set(fields: &[(String, VectorField)]) -> Result<Vec<(String, VectorField)>> {
    fields
        .iter()
        .map(|(l, f)| Ok((l.clone(), f.conjugate()?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::parse::parse_expr;
    use std::sync::Arc;

    fn chart() -> Arc<Chart> {
        Chart::new("c", &["x", "y", "z", "p", "q"], &ConstMode::generic())
    }

    fn e(ch: &Arc<Chart>, s: &str) -> Expr {
        parse_expr(s, ch).unwrap()
    }

    #[test]
    fn abelian_pair() {
        let ch = chart();
        let fields = vec![
            VectorField::coordinate_named(&ch, "x").unwrap(),
            VectorField::coordinate_named(&ch, "y").unwrap(),
        ];
        let p = closure_structure_constants(vec!["a".into(), "b".into()], &fields).unwrap();
        assert!(p.constants.iter().flatten().flatten().all(|c| c.is_zero()));
        let k = p.killing_matrix().unwrap();
        let sig = killing_signature(&k).unwrap();
        assert_eq!(sig, (0, 2, 0));
    }

    #[test]
    fn su2_like_triple() {
        // E1 = y d/dz - z d/dy etc: so(3) rotation fields on (y,z,p)
        let ch = chart();
        let rot = |i: &str, j: &str| -> VectorField {
            let ii = ch.index_of(i).unwrap();
            let jj = ch.index_of(j).unwrap();
            let mut v = VectorField::zero(&ch);
            v.comps[ii] = e(&ch, j);
            v.comps[jj] = e(&ch, i).neg();
            v
        };
        let e1 = rot("y", "z");
        let e2 = rot("z", "p");
        let e3 = rot("p", "y");
        let p = closure_structure_constants(
            vec!["E1".into(), "E2".into(), "E3".into()],
            &[e1.clone(), e2.clone(), e3.clone()],
        )
        .unwrap();
        assert_eq!(p.dim(), 3);
        assert!(p.jacobi_holds().unwrap());
        let k = p.killing_matrix().unwrap();
        // so(3): Killing = -2 I
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j {
                    Constant::int(&ch.mode, -2)
                } else {
                    Constant::zero(&ch.mode)
                };
                assert_eq!(k[i][j], expect);
            }
        }
        assert_eq!(killing_signature(&k).unwrap(), (0, 0, 3));
        assert_eq!(float_signature(&k, 1e-9).unwrap(), (0, 0, 3));
    }

    #[test]
    fn dependent_basis_detected() {
        let ch = chart();
        let x = VectorField::coordinate_named(&ch, "x").unwrap();
        let fields = vec![x.clone(), x.clone()];
        match closure_structure_constants(vec!["a".into(), "b".into()], &fields) {
            Err(Error::DependentBasis) => {}
            other => panic!("expected DependentBasis, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn non_constant_coefficients_detected() {
        let ch = chart();
        // [d/dx, x d/dy] = d/dy: basis {d/dx, x d/dy} does not close with
        // constant coefficients
        let a = VectorField::coordinate_named(&ch, "x").unwrap();
        let b = VectorField::from_comps(&ch, vec![(1, e(&ch, "x"))]);
        match closure_structure_constants(vec!["a".into(), "b".into()], &[a, b]) {
            Err(Error::NotClosed(_)) | Err(Error::NotConstantCoefficients(_)) => {}
            other => panic!("expected failure, got {:?}", other.is_ok()),
        }
    }
}
