//! Exact linear algebra over the expression field, with recorded
//! genericity assumptions.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::parse::format_expr;
use crate::poly::{squarefree_part, MultiPoly};

/// Nonvanishing assumptions accumulated during elimination: pivots and their
/// denominators, reduced to square-free monic polynomials with monomial
/// content split off.
#[derive(Clone, Debug, Default)]
pub struct Ledger {
    entries: BTreeSet<String>,
}

impl Ledger {
    pub fn new() -> Ledger {
        Ledger::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|s| s.as_str())
    }

    pub fn merge(&mut self, other: &Ledger) {
        for e in &other.entries {
            self.entries.insert(e.clone());
        }
    }

    pub fn contains(&self, s: &str) -> bool {
        self.entries.contains(s)
    }

    /// Record the nonvanishing of a pivot: numerator and denominator factors.
    pub fn record_pivot(&mut self, e: &Expr) {
        self.record_poly(e, &e.num);
        self.record_poly(e, &e.den);
    }

    /// Record only the denominator of an expression (the locus off which a
    /// returned coefficient is defined).
    pub fn record_denominator(&mut self, e: &Expr) {
        self.record_poly(e, &e.den);
    }

    fn record_poly(&mut self, e: &Expr, p: &MultiPoly) {
        if p.is_constant() {
            return;
        }
        // strip the monomial content: record bare variables separately
        let dim = e.chart.dim();
        let mut content = vec![i32::MAX; p.nvars];
        for m in p.terms.keys() {
            for v in 0..p.nvars {
                content[v] = content[v].min(m.0[v].max(0));
            }
        }
        for v in 0..dim.min(p.nvars) {
            if content[v] > 0 {
                self.entries.insert(e.chart.vars[v].clone());
            }
        }
        let mut shifted = MultiPoly::zero(p.nvars);
        for (m, c) in &p.terms {
            let mut nm = m.clone();
            for v in 0..p.nvars {
                nm.0[v] -= content[v].min(m.0[v]);
            }
            // exponential slots are units: force their exponents to zero when
            // the whole polynomial shares them
            shifted.terms.insert(nm, c.clone());
        }
        if shifted.is_constant() {
            return;
        }
        let sf = match squarefree_part(&shifted) {
            Ok(s) => s,
            Err(_) => shifted,
        };
        if sf.is_constant() {
            return;
        }
        let sf = primitive_scale(sf);
        let view = Expr {
            chart: e.chart.clone(),
            atoms: e.atoms.clone(),
            num: sf,
            den: MultiPoly::one(p.nvars, &e.chart.mode),
        };
        self.entries.insert(format_expr(&view));
    }
}

/// Scale a polynomial so rational coordinates become coprime integers, for
/// readable ledger entries.
fn primitive_scale(p: MultiPoly) -> MultiPoly {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    let mut lcm_d = BigInt::one();
    let mut gcd_n = BigInt::zero();
    let gcd = |a: &BigInt, b: &BigInt| -> BigInt {
        let mut x = a.magnitude().clone();
        let mut y = b.magnitude().clone();
        while !y.is_zero() {
            let r = &x % &y;
            x = y;
            y = r;
        }
        BigInt::from(x)
    };
    for c in p.terms.values() {
        let Some(coeffs) = c.alpha_poly_coeffs() else {
            return p;
        };
        for e in coeffs {
            for m in 0..8 {
                let q = e.coord(m);
                if q.is_zero() {
                    continue;
                }
                let g = gcd(&lcm_d, q.denom());
                lcm_d = (&lcm_d / &g) * q.denom();
                gcd_n = gcd(&gcd_n, q.numer());
            }
        }
    }
    if gcd_n.is_zero() {
        return p;
    }
    let mode = p.mode().expect("nonzero polynomial");
    let scale = crate::constant::Constant::from_rat(
        &mode,
        crate::num::Rat::new(lcm_d, gcd_n),
    );
    let mut out = match p.scale(&scale) {
        Ok(o) => o,
        Err(_) => return p,
    };
    // sign-normalize: leading coefficient's first coordinate positive
    if let Some((_, c)) = out.leading() {
        if let Some(coeffs) = c.alpha_poly_coeffs() {
            let neg = coeffs
                .iter()
                .flat_map(|e| (0..8).map(move |m| e.coord(m)))
                .find(|q| !q.is_zero())
                .map(|q| q.is_negative())
                .unwrap_or(false);
            if neg {
                out = out.neg();
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ExprMatrix {
    pub chart: Arc<Chart>,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Expr>,
}

impl ExprMatrix {
    pub fn new(chart: &Arc<Chart>, rows: usize, cols: usize) -> ExprMatrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ExprMatrix {
            chart: chart.clone(),
            rows,
            cols,
            data: vec![Expr::zero(chart); rows * cols],
        }
    }

    pub fn from_rows(chart: &Arc<Chart>, rows: Vec<Vec<Expr>>) -> ExprMatrix {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = ExprMatrix::new(chart, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn identity(chart: &Arc<Chart>, n: usize) -> ExprMatrix {
        let mut m = ExprMatrix::new(chart, n, n);
        for i in 0..n {
            m.set(i, i, Expr::one(chart));
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Expr {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Expr) {
        self.data[i * self.cols + j] = e;
    }

    pub fn mul(&self, other: &ExprMatrix) -> Result<ExprMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = ExprMatrix::new(&self.chart, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Expr::zero(&self.chart);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

pub struct Rref {
    pub matrix: ExprMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub ledger: Ledger,
}

/// Pivot preference: constants first, then lowest numerator total degree,
/// then lowest row index.
fn pivot_quality(e: &Expr) -> (u8, i64) {
    if e.is_constant() {
        (0, 0)
    } else {
        let deg = e
            .num
            .terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0);
        (1, deg)
    }
}

/// Reduced row echelon form over the expression fraction field.
pub fn rref_rank(m: &ExprMatrix) -> Result<Rref> {
    let mut a = m.clone();
    let mut ledger = Ledger::new();
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..a.cols {
        if row >= a.rows {
            break;
        }
        // candidate rows with nonzero entry in this column
        let mut best: Option<(usize, (u8, i64))> = None;
        for r in row..a.rows {
            let e = a.at(r, col);
            if e.is_zero() {
                continue;
            }
            let q = pivot_quality(e);
            match &best {
                None => best = Some((r, q)),
                Some((_, bq)) if q < *bq => best = Some((r, q)),
                _ => {}
            }
        }
        let Some((prow, _)) = best else {
            continue;
        };
        // swap into place
        if prow != row {
            for j in 0..a.cols {
                let x = a.at(prow, j).clone();
                let y = a.at(row, j).clone();
                a.set(prow, j, y);
                a.set(row, j, x);
            }
        }
        let pivot = a.at(row, col).clone();
        ledger.record_pivot(&pivot);
        let inv = pivot.inv()?;
        for j in col..a.cols {
            let e = a.at(row, j).mul(&inv)?;
            a.set(row, j, e);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.at(r, col).clone();
            if f.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let e = a.at(r, j).sub(&f.mul(a.at(row, j))?)?;
                a.set(r, j, e);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    Ok(Rref {
        matrix: a,
        rank: row,
        pivot_cols,
        ledger,
    })
}

pub enum Solution {
    /// One particular solution (free variables set to zero).
    Solved { x: Vec<Expr>, ledger: Ledger },
    /// Certificate: a nonzero residual from an inconsistent row.
    NoSolution { residual: Expr, ledger: Ledger },
}

/// Solve A x = b exactly.
pub fn solve_linear(a: &ExprMatrix, b: &[Expr]) -> Result<Solution> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let chart = &a.chart;
    let mut aug = ExprMatrix::new(chart, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let r = rref_rank(&aug)?;
    // inconsistent when a pivot lands in the last column
    if r.pivot_cols.iter().any(|&c| c == a.cols) {
        // find the row whose pivot is in the rhs column
        let row = r.pivot_cols.iter().position(|&c| c == a.cols).unwrap();
        // reconstruct the residual: the rhs of that row before normalization
        // is a nonzero combination certifying inconsistency; report the
        // normalized rhs (1) times the pivot that was recorded, or simply
        // the original residual recomputed below.
        let _ = row;
        // recompute residual: b - A x with x from the consistent part is
        // overkill; instead report the first inconsistent reduced row.
        for i in (0..a.rows).rev() {
            let lhs_zero = (0..a.cols).all(|j| r.matrix.at(i, j).is_zero());
            let rhs = r.matrix.at(i, a.cols);
            if lhs_zero && !rhs.is_zero() {
                return Ok(Solution::NoSolution {
                    residual: rhs.clone(),
                    ledger: r.ledger,
                });
            }
        }
        // fall through: normalized pivot row itself
        return Ok(Solution::NoSolution {
            residual: Expr::one(chart),
            ledger: r.ledger,
        });
    }
    let mut x = vec![Expr::zero(chart); a.cols];
    for (k, &c) in r.pivot_cols.iter().enumerate() {
        x[c] = r.matrix.at(k, a.cols).clone();
    }
    Ok(Solution::Solved { x, ledger: r.ledger })
}

/// Invert a square matrix; errors with `SingularMatrix` on generic rank
/// deficiency.
pub fn invert_matrix(a: &ExprMatrix) -> Result<(ExprMatrix, Ledger)> {
    assert_eq!(a.rows, a.cols, "inversion needs a square matrix");
    let n = a.rows;
    let chart = &a.chart;
    let mut aug = ExprMatrix::new(chart, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, n + i, Expr::one(chart));
    }
    let r = rref_rank(&aug)?;
    let full = (0..n).all(|k| r.pivot_cols.get(k) == Some(&k));
    if !full || r.rank < n {
        return Err(Error::SingularMatrix(format!(
            "generic rank {} of {}",
            r.rank.min(n),
            n
        )));
    }
    let mut inv = ExprMatrix::new(chart, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.matrix.at(i, n + j).clone());
        }
    }
    Ok((inv, r.ledger))
}

/// Basis of the right kernel of the matrix, via RREF.
pub fn kernel(a: &ExprMatrix) -> Result<(Vec<Vec<Expr>>, Ledger)> {
    let r = rref_rank(a)?;
    let chart = &a.chart;
    let pivot_set: BTreeSet<usize> = r.pivot_cols.iter().cloned().collect();
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Expr::zero(chart); a.cols];
        v[free] = Expr::one(chart);
        for (k, &p) in r.pivot_cols.iter().enumerate() {
            v[p] = r.matrix.at(k, free).neg();
        }
        basis.push(v);
    }
    Ok((basis, r.ledger))
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
    fn identity_rref() {
        let ch = chart();
        let m = ExprMatrix::identity(&ch, 3);
        let r = rref_rank(&m).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.ledger.is_empty());
    }

    #[test]
    fn equal_rows_rank_one() {
        let ch = chart();
        let m = ExprMatrix::from_rows(
            &ch,
            vec![
                vec![e(&ch, "x"), e(&ch, "1")],
                vec![e(&ch, "x"), e(&ch, "1")],
            ],
        );
        let r = rref_rank(&m).unwrap();
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn solve_identity() {
        let ch = chart();
        let m = ExprMatrix::identity(&ch, 2);
        let b = vec![e(&ch, "x*y"), e(&ch, "z^2")];
        match solve_linear(&m, &b).unwrap() {
            Solution::Solved { x, .. } => {
                assert_eq!(x[0], b[0]);
                assert_eq!(x[1], b[1]);
            }
            _ => panic!("expected solution"),
        }
    }

    #[test]
    fn inconsistent_system() {
        let ch = chart();
        // x * c = 1 and x * c = 2 cannot both hold
        let m = ExprMatrix::from_rows(&ch, vec![vec![e(&ch, "x")], vec![e(&ch, "x")]]);
        let b = vec![e(&ch, "1"), e(&ch, "2")];
        match solve_linear(&m, &b).unwrap() {
            Solution::NoSolution { residual, .. } => assert!(!residual.is_zero()),
            _ => panic!("expected no solution"),
        }
    }

    #[test]
    fn invert_roundtrip() {
        let ch = chart();
        let m = ExprMatrix::from_rows(
            &ch,
            vec![
                vec![e(&ch, "x"), e(&ch, "1"), e(&ch, "0")],
                vec![e(&ch, "0"), e(&ch, "y"), e(&ch, "1")],
                vec![e(&ch, "1"), e(&ch, "0"), e(&ch, "z")],
            ],
        );
        let (inv, ledger) = invert_matrix(&m).unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        assert!(!ledger.is_empty());
    }

    #[test]
    fn singular_matrix_detected() {
        let ch = chart();
        let m = ExprMatrix::new(&ch, 2, 2);
        assert!(matches!(
            invert_matrix(&m),
            Err(Error::SingularMatrix(_))
        ));
    }

    #[test]
    fn rref_idempotent() {
        let ch = chart();
        let m = ExprMatrix::from_rows(
            &ch,
            vec![
                vec![e(&ch, "x"), e(&ch, "y"), e(&ch, "1")],
                vec![e(&ch, "x^2"), e(&ch, "x*y"), e(&ch, "x")],
                vec![e(&ch, "z"), e(&ch, "1"), e(&ch, "y")],
            ],
        );
        let r1 = rref_rank(&m).unwrap();
        let r2 = rref_rank(&r1.matrix).unwrap();
        for i in 0..m.rows {
            for j in 0..m.cols {
                assert_eq!(r1.matrix.at(i, j), r2.matrix.at(i, j));
            }
        }
    }

    #[test]
    fn kernel_annihilates() {
        let ch = chart();
        let m = ExprMatrix::from_rows(
            &ch,
            vec![vec![e(&ch, "x"), e(&ch, "y"), e(&ch, "z")]],
        );
        let (basis, _) = kernel(&m).unwrap();
        assert_eq!(basis.len(), 2);
        for v in basis {
            let mut acc = Expr::zero(&ch);
            for (j, c) in v.iter().enumerate() {
                acc = acc.add(&m.at(0, j).mul(c).unwrap()).unwrap();
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn ledger_squarefree_entries() {
        let ch = chart();
        // pivot (2*x*y*z - 1)^3 * x should record the bare factor and x
        let p = e(&ch, "(2*x*y*z - 1)^3*x");
        let m = ExprMatrix::from_rows(&ch, vec![vec![p]]);
        let r = rref_rank(&m).unwrap();
        assert!(r.ledger.contains("2*x*y*z - 1"), "ledger: {:?}", r.ledger);
        assert!(r.ledger.contains("x"));
    }
}
