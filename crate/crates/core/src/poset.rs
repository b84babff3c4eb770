//! Finite graded posets given by covering relations.
//!
//! The poset is stored as an indexed element set together with the list of
//! covers and a grade function. The full order is the transitive closure of
//! the covers; the closure is precomputed as bitsets so that `leq` is cheap.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FinitePoset {
    len: usize,
    covers: Vec<(usize, usize)>,
    grade: Vec<usize>,
    /// below[i] holds j (as a bit) iff j < i in the order.
    below: Vec<Bitset>,
}

impl FinitePoset {
    /// Builds a poset from a strict-order predicate on `0..len`.
    ///
    /// Covers are reduced to the minimal generating set. Grades must strictly
    /// increase along the order.
    pub fn from_less(len: usize, grade: Vec<usize>, less: impl Fn(usize, usize) -> bool) -> Result<Self> {
        assert_eq!(grade.len(), len);
        let mut below = vec![Bitset::new(len); len];
        for i in 0..len {
            for j in 0..len {
                if i != j && less(j, i) {
                    if grade[j] >= grade[i] {
                        return Err(Error::InvalidUnshuffle(format!(
                            "grade does not increase along order: {} !< {}",
                            grade[j], grade[i]
                        )));
                    }
                    below[i].set(j);
                }
            }
        }
        // A cover (j, i) is a relation not implied by an intermediate element.
        let mut covers = Vec::new();
        for i in 0..len {
            for j in below[i].iter() {
                let implied = below[i].iter().any(|k| k != j && below[k].get(j));
                if !implied {
                    covers.push((j, i));
                }
            }
        }
        covers.sort_unstable();
        Ok(FinitePoset { len, covers, grade, below })
    }

    /// Builds a poset directly from covering pairs `(lower, upper)`.
    pub fn from_covers(len: usize, grade: Vec<usize>, covers: Vec<(usize, usize)>) -> Result<Self> {
        assert_eq!(grade.len(), len);
        let mut below = vec![Bitset::new(len); len];
        // Propagate in grade order so each closure is complete when used.
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&i| grade[i]);
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); len];
        for &(l, u) in &covers {
            if grade[l] >= grade[u] {
                return Err(Error::InvalidUnshuffle("cover does not increase grade".into()));
            }
            up[l].push(u);
        }
        for &i in &order {
            let ups = up[i].clone();
            for u in ups {
                let lower = below[i].clone();
                below[u].set(i);
                below[u].union_with(&lower);
            }
        }
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();
        Ok(FinitePoset { len, covers, grade, below })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn grade(&self, i: usize) -> usize {
        self.grade[i]
    }

    pub fn grades(&self) -> &[usize] {
        &self.grade
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict order test.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].get(a)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    /// Elements strictly below `i`.
    pub fn strictly_below(&self, i: usize) -> Vec<usize> {
        self.below[i].iter().collect()
    }

    /// Elements covered by `i`.
    pub fn covered_by(&self, i: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(_, u)| u == i).map(|&(l, _)| l).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len)
            .filter(|&i| !(0..self.len).any(|j| self.less(i, j)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.below[i].is_empty()).collect()
    }

    /// All nonempty strict chains, as ascending index lists.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); self.len];
        for i in 0..self.len {
            for j in 0..self.len {
                if self.less(i, j) {
                    above[i].push(j);
                }
            }
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for i in 0..self.len {
            extend_chains(i, &above, &mut stack, &mut out);
        }
        out
    }

    /// Length (number of covers) of the longest maximal chain through the poset.
    pub fn max_chain_covers(&self) -> usize {
        self.chains().iter().map(|c| c.len() - 1).max().unwrap_or(0)
    }
}

fn extend_chains(i: usize, above: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    stack.push(i);
    out.push(stack.clone());
    for &j in &above[i] {
        extend_chains(j, above, stack, out);
    }
    stack.pop();
}

/// JSON form of a poset whose elements carry block data, per the export schema.
#[derive(Debug, Serialize)]
pub struct PosetJson {
    pub elements: Vec<PosetElementJson>,
    pub covers: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize)]
pub struct PosetElementJson {
    pub id: usize,
    pub blocks: Vec<Vec<u32>>,
    pub grade: usize,
}

/// Plain bitset over `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}
