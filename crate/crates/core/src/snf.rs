//! Integer matrices and Smith normal form.
//!
//! The matrices that show up here are boundary maps of order complexes: very
//! sparse, with every entry in {-1, 0, 1}.  We exploit that with a first pass
//! that eliminates unit pivots while the matrix is stored sparsely, then hand
//! the small dense remainder to a classical Smith reduction.  All arithmetic
//! is `i128` and checked; an overflow aborts with an error rather than
//! returning a wrong invariant factor.

use crate::error::{Error, Result};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

/// Sparse integer matrix stored as (row, col) -> value triplets.
#[derive(Debug, Clone, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        assert!(r < self.rows && c < self.cols);
        if v == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        *self.entries.get(&(r, c)).unwrap_or(&0)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i128)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (&(r, k), &a) in &self.entries {
            for c in 0..other.cols {
                let b = other.get(k, c);
                if b != 0 {
                    let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                    let v = out.get(r, c).checked_add(term).ok_or(Error::Overflow)?;
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Result of a Smith reduction: the nonzero diagonal (invariant factors,
/// each dividing the next) and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<i128>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors bigger than 1, i.e. the torsion a cokernel of this
    /// map contributes.
    pub fn torsion(&self) -> Vec<i128> {
        self.factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

/// Mutable sparse row/column representation used during phase one.
struct SparseElim {
    row_entries: Vec<BTreeMap<usize, i128>>,
    col_entries: Vec<BTreeMap<usize, i128>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl SparseElim {
    fn new(m: &IntMatrix) -> Self {
        let mut s = SparseElim {
            row_entries: vec![BTreeMap::new(); m.rows],
            col_entries: vec![BTreeMap::new(); m.cols],
            row_alive: vec![true; m.rows],
            col_alive: vec![true; m.cols],
        };
        for (&(r, c), &v) in &m.entries {
            s.row_entries[r].insert(c, v);
            s.col_entries[c].insert(r, v);
        }
        s
    }

    fn set(&mut self, r: usize, c: usize, v: i128) {
        if v == 0 {
            self.row_entries[r].remove(&c);
            self.col_entries[c].remove(&r);
        } else {
            self.row_entries[r].insert(c, v);
            self.col_entries[c].insert(r, v);
        }
    }

    fn cost(&self, r: usize, c: usize) -> usize {
        (self.row_entries[r].len() - 1) * (self.col_entries[c].len() - 1)
    }

    fn is_unit(&self, r: usize, c: usize) -> bool {
        matches!(self.row_entries[r].get(&c), Some(1) | Some(-1))
    }

    /// Eliminate +-1 pivots, cheapest (Markowitz cost) first, using a lazily
    /// invalidated heap so selection stays near-linear in fill.  Returns the
    /// number of pivots retired.
    fn eliminate_units(&mut self) -> Result<usize> {
        let mut heap: BinaryHeap<Reverse<(usize, usize, usize)>> = BinaryHeap::new();
        for r in 0..self.row_entries.len() {
            for (&c, &v) in &self.row_entries[r] {
                if v == 1 || v == -1 {
                    heap.push(Reverse((self.cost(r, c), r, c)));
                }
            }
        }
        let mut units = 0;
        while let Some(Reverse((cost, r, c))) = heap.pop() {
            if !self.row_alive[r] || !self.col_alive[c] || !self.is_unit(r, c) {
                continue;
            }
            let now = self.cost(r, c);
            if now > cost {
                heap.push(Reverse((now, r, c)));
                continue;
            }
            let touched: Vec<usize> = self.col_entries[c]
                .keys()
                .copied()
                .filter(|&rr| rr != r)
                .collect();
            self.eliminate(r, c)?;
            units += 1;
            for rr in touched {
                for (&cc, &v) in &self.row_entries[rr] {
                    if v == 1 || v == -1 {
                        heap.push(Reverse((self.cost(rr, cc), rr, cc)));
                    }
                }
            }
        }
        Ok(units)
    }

    /// Clear the pivot's row and column with unimodular row/col operations,
    /// then retire both lines.  Valid only when the pivot entry is +-1.
    fn eliminate(&mut self, pr: usize, pc: usize) -> Result<()> {
        let pivot = *self.row_entries[pr].get(&pc).unwrap();
        debug_assert!(pivot == 1 || pivot == -1);
        let col: Vec<(usize, i128)> =
            self.col_entries[pc].iter().map(|(&r, &v)| (r, v)).collect();
        for (r, v) in col {
            if r == pr {
                continue;
            }
            // row_r -= (v / pivot) * row_pr
            let mult = v * pivot; // v / pivot since pivot is +-1
            let prow: Vec<(usize, i128)> =
                self.row_entries[pr].iter().map(|(&c, &w)| (c, w)).collect();
            for (c, w) in prow {
                let delta = mult.checked_mul(w).ok_or(Error::Overflow)?;
                let nv = self.row_entries[r]
                    .get(&c)
                    .copied()
                    .unwrap_or(0)
                    .checked_sub(delta)
                    .ok_or(Error::Overflow)?;
                self.set(r, c, nv);
            }
        }
        self.row_alive[pr] = false;
        self.col_alive[pc] = false;
        for (&c, _) in self.row_entries[pr].clone().iter() {
            self.col_entries[c].remove(&pr);
        }
        self.row_entries[pr].clear();
        Ok(())
    }

    /// Collect the remaining live submatrix densely.
    fn remainder(&self) -> Vec<Vec<i128>> {
        let live_cols: Vec<usize> =
            (0..self.col_alive.len()).filter(|&c| self.col_alive[c]).collect();
        let mut out = Vec::new();
        for r in 0..self.row_alive.len() {
            if !self.row_alive[r] {
                continue;
            }
            let row: Vec<i128> = live_cols
                .iter()
                .map(|&c| self.row_entries[r].get(&c).copied().unwrap_or(0))
                .collect();
            out.push(row);
        }
        out
    }
}

/// Dense Smith reduction for the small remainder left after the sparse phase.
fn dense_smith(mut a: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // find the nonzero entry of smallest magnitude in the live block
        let mut best: Option<(i128, usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a[r][c];
                if v != 0 && best.map_or(true, |(b, _, _)| v.abs() < b) {
                    best = Some((v.abs(), r, c));
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        if a[t][t] < 0 {
            for c in t..cols {
                a[t][c] = a[t][c].checked_neg().ok_or(Error::Overflow)?;
            }
        }
        // reduce the pivot row and column by euclidean steps
        let mut dirty = false;
        for r in t + 1..rows {
            if a[r][t] != 0 {
                let q = a[r][t].div_euclid(a[t][t]);
                for c in t..cols {
                    let d = q.checked_mul(a[t][c]).ok_or(Error::Overflow)?;
                    a[r][c] = a[r][c].checked_sub(d).ok_or(Error::Overflow)?;
                }
                if a[r][t] != 0 {
                    dirty = true;
                }
            }
        }
        for c in t + 1..cols {
            if a[t][c] != 0 {
                let q = a[t][c].div_euclid(a[t][t]);
                for r in t..rows {
                    let d = q.checked_mul(a[r][t]).ok_or(Error::Overflow)?;
                    a[r][c] = a[r][c].checked_sub(d).ok_or(Error::Overflow)?;
                }
                if a[t][c] != 0 {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // smaller remainders appeared; re-pick the pivot
        }
        // enforce divisibility: pivot must divide every later entry
        let p = a[t][t];
        let mut fixed = true;
        'scan: for r in t + 1..rows {
            for c in t + 1..cols {
                if a[r][c] % p != 0 {
                    // fold row r into row t and restart this pivot
                    for k in t..cols {
                        a[t][k] = a[t][k].checked_add(a[r][k]).ok_or(Error::Overflow)?;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        factors.push(p);
        t += 1;
    }
    Ok(factors)
}

/// Smith normal form.  Returns the invariant factors d_1 | d_2 | ... | d_r,
/// all positive, with r the rank of the matrix.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let mut elim = SparseElim::new(m);
    let units = elim.eliminate_units()?;
    let tail = dense_smith(elim.remainder())?;
    let mut factors = vec![1i128; units];
    factors.extend(tail);
    factors.sort();
    Ok(SmithForm { factors })
}
