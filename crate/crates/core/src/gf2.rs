//! Dense bit-packed matrices over GF(2).

/// Row-major bit matrix. Row `i` occupies `words_per_row` u64 words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        Gf2Matrix { rows, cols, words_per_row, data: vec![0; rows * words_per_row] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = r * self.words_per_row + c / 64;
        if v {
            self.data[w] |= 1 << (c % 64);
        } else {
            self.data[w] &= !(1 << (c % 64));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words_per_row + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.words_per_row, source * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.data[s + k];
            self.data[t + k] ^= v;
        }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (t, s) = (r * out.words_per_row, c * other.words_per_row);
                    for k in 0..out.words_per_row {
                        out.data[t + k] ^= other.data[s + k];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (w, o) in out.data.iter_mut().zip(&other.data) {
            *w ^= o;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().0
    }

    /// In-place row reduction; returns (rank, pivot column per pivot row).
    fn row_reduce(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..self.cols {
            let Some(p) = (next_row..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.data.swap_chunks(p, next_row, self.words_per_row);
            for r in 0..self.rows {
                if r != next_row && self.get(r, c) {
                    self.xor_row(r, next_row);
                }
            }
            pivots.push(c);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        (next_row, pivots)
    }

    /// Basis of the right kernel, one column vector per basis element,
    /// returned as a (cols x nullity) matrix.
    pub fn kernel_basis(&self) -> Gf2Matrix {
        let mut reduced = self.clone();
        let (rank, pivots) = reduced.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Gf2Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, true);
            for (prow, &pc) in pivots.iter().enumerate().take(rank) {
                if reduced.get(prow, fc) {
                    out.set(pc, k, true);
                }
            }
        }
        out
    }

    /// Ranks needed for quotient-space computations: given column blocks
    /// [A | B], returns rank(A), rank([A|B]).
    pub fn block_ranks(a: &Gf2Matrix, b: &Gf2Matrix) -> (usize, usize) {
        assert_eq!(a.rows, b.rows);
        let mut joined = Gf2Matrix::zeros(a.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                if a.get(r, c) {
                    joined.set(r, c, true);
                }
            }
            for c in 0..b.cols {
                if b.get(r, c) {
                    joined.set(r, a.cols + c, true);
                }
            }
        }
        (a.rank(), joined.rank())
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for k in 0..width {
            self.swap(a * width + k, b * width + k);
        }
    }
}
