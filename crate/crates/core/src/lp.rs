//! Exact linear programming over rationals: a small dense two-phase simplex
//! with Bland's rule.  Problem sizes here are tiny (a handful of variables,
//! a few dozen constraints), so the full-tableau method is plenty.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, point: Vec<BigRational> },
    Unbounded,
    Infeasible,
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Maximize c.x subject to A x <= b, x free (unrestricted in sign).
pub fn maximize(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> Result<LpOutcome> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    for row in a {
        assert_eq!(row.len(), n);
    }
    // free x -> u - v with u, v >= 0; one slack per row; artificials for
    // rows whose right-hand side starts negative.
    let split = 2 * n;
    let mut need_artificial = Vec::new();
    for (i, bi) in b.iter().enumerate() {
        if bi.is_negative() {
            need_artificial.push(i);
        }
    }
    let total = split + m + need_artificial.len();
    let mut t = Tableau::new(m, total);
    for i in 0..m {
        let flip = b[i].is_negative();
        let sgn = if flip { -BigRational::one() } else { BigRational::one() };
        for j in 0..n {
            t.rows[i][j] = &a[i][j] * &sgn;
            t.rows[i][n + j] = -&a[i][j] * &sgn;
        }
        t.rows[i][split + i] = sgn.clone();
        t.rhs[i] = &b[i] * &sgn;
    }
    for (k, &i) in need_artificial.iter().enumerate() {
        t.rows[i][split + m + k] = BigRational::one();
        t.basis[i] = split + m + k;
    }
    for i in 0..m {
        if !need_artificial.contains(&i) {
            t.basis[i] = split + i;
        }
    }
    if !need_artificial.is_empty() {
        // phase one: maximize minus the artificial sum
        let mut obj = vec![BigRational::zero(); total];
        for k in 0..need_artificial.len() {
            obj[split + m + k] = -BigRational::one();
        }
        match t.run(&obj)? {
            SimplexEnd::Optimal(v) if v.is_zero() => {}
            SimplexEnd::Optimal(_) => return Ok(LpOutcome::Infeasible),
            SimplexEnd::Unbounded => unreachable!("phase one is bounded above by zero"),
        }
        // pivot any artificial still basic (at zero) out if possible
        for i in 0..m {
            if t.basis[i] >= split + m {
                if let Some(j) = (0..split + m).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                }
            }
        }
        t.forbidden_from = split + m;
    }
    let mut obj = vec![BigRational::zero(); total];
    for j in 0..n {
        obj[j] = c[j].clone();
        obj[n + j] = -c[j].clone();
    }
    match t.run(&obj)? {
        SimplexEnd::Unbounded => Ok(LpOutcome::Unbounded),
        SimplexEnd::Optimal(value) => {
            let mut point = vec![BigRational::zero(); n];
            for i in 0..m {
                let bj = t.basis[i];
                if bj < n {
                    point[bj] += &t.rhs[i];
                } else if bj < split {
                    point[bj - n] -= &t.rhs[i];
                }
            }
            Ok(LpOutcome::Optimal { value, point })
        }
    }
}

enum SimplexEnd {
    Optimal(BigRational),
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    /// Columns at or past this index may not re-enter the basis.
    forbidden_from: usize,
}

impl Tableau {
    fn new(m: usize, total: usize) -> Self {
        Tableau {
            rows: vec![vec![BigRational::zero(); total]; m],
            rhs: vec![BigRational::zero(); m],
            basis: vec![0; m],
            forbidden_from: usize::MAX,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.rows[i].len() {
                let d = &self.rows[r][j] * &f;
                self.rows[i][j] -= d;
            }
            let d = &self.rhs[r] * &f;
            self.rhs[i] -= d;
        }
        self.basis[r] = c;
    }

    /// Simplex iterations with Bland's rule for the given objective.
    fn run(&mut self, obj: &[BigRational]) -> Result<SimplexEnd> {
        let total = obj.len();
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 100_000 {
                return Err(Error::Unsupported("simplex iteration limit".into()));
            }
            // reduced costs: obj[j] - sum_i obj[basis[i]] * rows[i][j]
            let mut entering = None;
            for j in 0..total.min(self.forbidden_from) {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = obj[j].clone();
                for i in 0..self.rows.len() {
                    if !obj[self.basis[i]].is_zero() && !self.rows[i][j].is_zero() {
                        red -= &obj[self.basis[i]] * &self.rows[i][j];
                    }
                }
                if red.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                let mut value = BigRational::zero();
                for i in 0..self.rows.len() {
                    if !obj[self.basis[i]].is_zero() {
                        value += &obj[self.basis[i]] * &self.rhs[i];
                    }
                }
                return Ok(SimplexEnd::Optimal(value));
            };
            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][j].is_positive() {
                    let r = &self.rhs[i] / &self.rows[i][j];
                    let better = match &leaving {
                        None => true,
                        Some((li, lr)) => r < *lr || (r == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leaving = Some((i, r));
                    }
                }
            }
            let Some((i, _)) = leaving else {
                return Ok(SimplexEnd::Unbounded);
            };
            self.pivot(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rvec(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| ratio(v, 1)).collect()
    }

    #[test]
    fn simple_box() {
        // maximize x + y on [0,1] x [0,2]
        let a = vec![rvec(&[1, 0]), rvec(&[-1, 0]), rvec(&[0, 1]), rvec(&[0, -1])];
        let b = rvec(&[1, 0, 2, 0]);
        match maximize(&a, &b, &rvec(&[1, 1])).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, ratio(3, 1));
                assert_eq!(point, rvec(&[1, 2]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn free_variables_and_negative_rhs() {
        // maximize -x subject to -x <= -5, i.e. x >= 5: optimum -5
        let a = vec![rvec(&[-1])];
        let b = rvec(&[-5]);
        match maximize(&a, &b, &rvec(&[-1])).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, ratio(-5, 1));
                assert_eq!(point, rvec(&[5]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        // x <= 0 and -x <= -1 cannot both hold
        let a = vec![rvec(&[1]), rvec(&[-1])];
        let b = rvec(&[0, -1]);
        assert_eq!(maximize(&a, &b, &rvec(&[1])).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let a = vec![rvec(&[-1])];
        let b = rvec(&[0]);
        assert_eq!(maximize(&a, &b, &rvec(&[1])).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_optimum() {
        // maximize x subject to 2x <= 1
        let a = vec![vec![ratio(2, 1)]];
        let b = vec![ratio(1, 1)];
        match maximize(&a, &b, &rvec(&[1])).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
