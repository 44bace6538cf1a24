//! Distribution analysis: spans, annihilators, derived flags, and
//! span-membership certificates.

use std::sync::Arc;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::exterior::{DiffForm, VectorField};
use crate::expr::Expr;
use crate::linalg::{kernel, rref_rank, solve_linear, ExprMatrix, Ledger, Solution};

#[derive(Clone, Debug)]
pub struct Distribution {
    pub chart: Arc<Chart>,
    pub generators: Vec<VectorField>,
}

/// Generic ranks of the derived flag, with the pivots assumed nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthVector {
    pub ranks: Vec<usize>,
    pub ledger: Ledger,
}

impl PartialEq<&[usize]> for GrowthVector {
    fn eq(&self, other: &&[usize]) -> bool {
        self.ranks == *other
    }
}

impl PartialEq for Ledger {
    fn eq(&self, _other: &Self) -> bool {
        true // ledgers do not participate in growth-vector equality
    }
}

impl Distribution {
    pub fn new(generators: Vec<VectorField>) -> Distribution {
        assert!(!generators.is_empty());
        let chart = generators[0].chart.clone();
        Distribution { chart, generators }
    }

    /// Distribution presented as the kernel of a family of 1-forms. Formal
    /// constants are not directions: their columns are excluded.
    pub fn from_annihilator(forms: &[DiffForm]) -> Result<(Distribution, Ledger)> {
        assert!(!forms.is_empty());
        let chart = forms[0].chart.clone();
        let cols: Vec<usize> = chart.geometric_vars().collect();
        let mut m = ExprMatrix::new(&chart, forms.len(), cols.len());
        for (i, f) in forms.iter().enumerate() {
            assert_eq!(f.degree, 1);
            for (k, e) in &f.comps {
                if let Some(j) = cols.iter().position(|&c| c == k[0]) {
                    m.set(i, j, e.clone());
                }
            }
        }
        let (basis, ledger) = kernel(&m)?;
        let generators = basis
            .into_iter()
            .map(|small| {
                let mut comps = vec![Expr::zero(&chart); chart.dim()];
                for (j, e) in small.into_iter().enumerate() {
                    comps[cols[j]] = e;
                }
                VectorField {
                    chart: chart.clone(),
                    comps,
                }
            })
            .collect();
        Ok((Distribution::new(generators), ledger))
    }

    fn rank_of(chart: &Arc<Chart>, fields: &[VectorField]) -> Result<(usize, Ledger)> {
        let n = chart.dim();
        let mut m = ExprMatrix::new(chart, fields.len(), n);
        for (i, f) in fields.iter().enumerate() {
            for (j, e) in f.comps.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        let r = rref_rank(&m)?;
        Ok((r.rank, r.ledger))
    }

    /// Generic rank of the span of the generators.
    pub fn rank(&self) -> Result<(usize, Ledger)> {
        Self::rank_of(&self.chart, &self.generators)
    }

    /// Ranks of D, D + [D,D], ... until stable; adjoins all pairwise
    /// brackets of the current generators at each level.
    pub fn derived_flag(&self) -> Result<GrowthVector> {
        let mut ledger = Ledger::new();
        let mut current = self.generators.clone();
        let (r0, l0) = Self::rank_of(&self.chart, &current)?;
        ledger.merge(&l0);
        let mut ranks = vec![r0];
        let dim = self.chart.dim();
        loop {
            let mut next = current.clone();
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    next.push(current[i].bracket(&current[j])?);
                }
            }
            let (r, l) = Self::rank_of(&self.chart, &next)?;
            ledger.merge(&l);
            let last = *ranks.last().unwrap();
            if r == last {
                break;
            }
            ranks.push(r);
            current = next;
            if r == dim {
                break;
            }
        }
        Ok(GrowthVector { ranks, ledger })
    }

    /// 1-forms annihilating the distribution (geometric dim - rank of them).
    pub fn annihilator(&self) -> Result<(Vec<DiffForm>, Ledger)> {
        let cols: Vec<usize> = self.chart.geometric_vars().collect();
        let (rank, _) = self.rank()?;
        if rank >= cols.len() {
            return Err(Error::FullRank);
        }
        // forms w with sum_j w_j X_j = 0 for all generators: kernel of the
        // component matrix
        let mut m = ExprMatrix::new(&self.chart, self.generators.len(), cols.len());
        for (i, f) in self.generators.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, f.comps[c].clone());
            }
        }
        let (basis, ledger) = kernel(&m)?;
        let forms = basis
            .into_iter()
            .map(|v| {
                DiffForm::one_form(
                    &self.chart,
                    v.into_iter()
                        .enumerate()
                        .map(|(j, e)| (cols[j], e))
                        .collect::<Vec<(usize, Expr)>>(),
                )
            })
            .collect();
        Ok((forms, ledger))
    }
}

pub enum SpanResult {
    InSpan { coefficients: Vec<Expr>, ledger: Ledger },
    NotInSpan { residual: Expr, ledger: Ledger },
}

impl SpanResult {
    pub fn coefficients(&self) -> Option<&[Expr]> {
        match self {
            SpanResult::InSpan { coefficients, .. } => Some(coefficients),
            SpanResult::NotInSpan { .. } => None,
        }
    }

    pub fn ledger(&self) -> &Ledger {
        match self {
            SpanResult::InSpan { ledger, .. } => ledger,
            SpanResult::NotInSpan { ledger, .. } => ledger,
        }
    }
}

/// Solve target = sum c_i basis_i for 1-forms, with function coefficients.
pub fn span_membership_forms(target: &DiffForm, basis: &[DiffForm]) -> Result<SpanResult> {
    assert!(!basis.is_empty());
    let chart = target.chart.clone();
    for b in basis {
        Chart::expect_same(&chart, &b.chart)?;
        assert_eq!(b.degree, 1);
    }
    assert_eq!(target.degree, 1);
    let n = chart.dim();
    let mut a = ExprMatrix::new(&chart, n, basis.len());
    for (col, b) in basis.iter().enumerate() {
        for (k, e) in &b.comps {
            a.set(k[0], col, e.clone());
        }
    }
    let rhs: Vec<Expr> = (0..n).map(|j| target.component(&[j])).collect();
    match solve_linear(&a, &rhs)? {
        Solution::Solved { x, ledger } => Ok(SpanResult::InSpan {
            coefficients: x,
            ledger,
        }),
        Solution::NoSolution { residual, ledger } => {
            Ok(SpanResult::NotInSpan { residual, ledger })
        }
    }
}

/// Solve target = sum c_i basis_i for vector fields.
pub fn span_membership_fields(
    target: &VectorField,
    basis: &[VectorField],
) -> Result<SpanResult> {
    assert!(!basis.is_empty());
    let chart = target.chart.clone();
    for b in basis {
        Chart::expect_same(&chart, &b.chart)?;
    }
    let n = chart.dim();
    let mut a = ExprMatrix::new(&chart, n, basis.len());
    for (col, b) in basis.iter().enumerate() {
        for (j, e) in b.comps.iter().enumerate() {
            a.set(j, col, e.clone());
        }
    }
    match solve_linear(&a, &target.comps)? {
        Solution::Solved { x, ledger } => Ok(SpanResult::InSpan {
            coefficients: x,
            ledger,
        }),
        Solution::NoSolution { residual, ledger } => {
            Ok(SpanResult::NotInSpan { residual, ledger })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant::ConstMode;
    use crate::parse::parse_expr;

    fn chart5() -> Arc<Chart> {
        Chart::new("m", &["x", "y", "z", "p", "q"], &ConstMode::generic())
    }

    fn e(ch: &Arc<Chart>, s: &str) -> Expr {
        parse_expr(s, ch).unwrap()
    }

    #[test]
    fn integrable_flag() {
        let ch = chart5();
        let d = Distribution::new(vec![
            VectorField::coordinate_named(&ch, "x").unwrap(),
            VectorField::coordinate_named(&ch, "y").unwrap(),
        ]);
        let g = d.derived_flag().unwrap();
        assert_eq!(g.ranks, vec![2]);
    }

    #[test]
    fn hilbert_cartan_flag_and_annihilator() {
        let ch = chart5();
        // kernel of {dy - p dx, dp - q dx, dz - q^2 dx}
        let w1 = DiffForm::one_form(&ch, vec![(0, e(&ch, "-p")), (1, e(&ch, "1"))]);
        let w2 = DiffForm::one_form(&ch, vec![(0, e(&ch, "-q")), (3, e(&ch, "1"))]);
        let w3 = DiffForm::one_form(&ch, vec![(0, e(&ch, "-q^2")), (2, e(&ch, "1"))]);
        let (d, _) = Distribution::from_annihilator(&[w1.clone(), w2.clone(), w3.clone()])
            .unwrap();
        assert_eq!(d.generators.len(), 2);
        let g = d.derived_flag().unwrap();
        assert_eq!(g.ranks, vec![2, 3, 5]);
        assert!(!g.ledger.is_empty());
        // annihilator recovers a span inside {w1,w2,w3}
        let (ann, _) = d.annihilator().unwrap();
        assert_eq!(ann.len(), 3);
        for a in &ann {
            match span_membership_forms(a, &[w1.clone(), w2.clone(), w3.clone()]).unwrap() {
                SpanResult::InSpan { .. } => {}
                SpanResult::NotInSpan { .. } => panic!("annihilator escapes the span"),
            }
        }
        // duality: every annihilator form kills every generator
        for a in &ann {
            for x in &d.generators {
                assert!(a.pair(x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn span_membership_not_in_span() {
        let ch = chart5();
        let dx = DiffForm::dvar_named(&ch, "x").unwrap();
        let dy = DiffForm::dvar_named(&ch, "y").unwrap();
        match span_membership_forms(&dx, &[dy]).unwrap() {
            SpanResult::NotInSpan { residual, .. } => assert!(!residual.is_zero()),
            _ => panic!("dx is not a multiple of dy"),
        }
    }

    #[test]
    fn field_membership() {
        let ch = chart5();
        let pq = VectorField::coordinate_named(&ch, "q").unwrap();
        let s1 = pq.scale(&e(&ch, "-1/2")).unwrap();
        match span_membership_fields(&s1, &[pq]).unwrap() {
            SpanResult::InSpan { coefficients, .. } => {
                assert_eq!(coefficients[0], e(&ch, "-1/2"));
            }
            _ => panic!("expected membership"),
        }
    }
}
