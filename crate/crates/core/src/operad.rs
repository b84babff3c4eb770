//! Chain-level operadic composition in the sequence presentation.  A cell is
//! written as the word read while walking around the outside of its cactus;
//! composition substitutes an overlapping splitting of the inner word for
//! the occurrences of the composed slot.

use crate::error::{Error, Result};
use crate::seq::NrSequence;
use crate::tree::{BlackNode, BWTree, WhiteNode};
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// A cactus word: nonempty, no two consecutive letters equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CactSequence {
    word: Vec<u32>,
}

impl CactSequence {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidSequence("empty word".into()));
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSequence(format!("equal consecutive letters in {word:?}")));
        }
        if word.contains(&0) {
            return Err(Error::InvalidSequence("letters must be positive".into()));
        }
        Ok(CactSequence { word })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn letter_set(&self) -> BTreeSet<u32> {
        self.word.iter().copied().collect()
    }

    pub fn arity(&self) -> usize {
        self.letter_set().len()
    }

    pub fn degree(&self) -> usize {
        self.word.len() - self.arity()
    }
}

impl std::fmt::Display for CactSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.word.iter().all(|&l| l <= 9) {
            for l in &self.word {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Unsigned formal sum of cactus words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<CactSequence, u64>,
}

impl FormalSum {
    pub fn singleton(s: CactSequence) -> Self {
        let mut sum = FormalSum::default();
        sum.add(s, 1);
        sum
    }

    pub fn add(&mut self, s: CactSequence, mult: u64) {
        if mult > 0 {
            *self.terms.entry(s).or_insert(0) += mult;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CactSequence, u64)> {
        self.terms.iter().map(|(s, &m)| (s, m))
    }

    pub fn support(&self) -> Vec<&CactSequence> {
        self.terms.keys().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn all_multiplicities_one(&self) -> bool {
        self.terms.values().all(|&m| m == 1)
    }

    /// Sorted `multiplicity x word` lines.
    pub fn lines(&self) -> Vec<String> {
        self.terms.iter().map(|(s, m)| format!("{m} x {s}")).collect()
    }
}

/// Outside-circle traversal: a white vertex emits its label before, between
/// and after its black branches.
pub fn tree_to_sequence(tau: &BWTree) -> CactSequence {
    let mut word = Vec::new();
    emit_black(&tau.root, &mut word);
    CactSequence::new(word).expect("traversal never repeats a letter consecutively")
}

fn emit_black(node: &BlackNode, word: &mut Vec<u32>) {
    for w in &node.whites {
        word.push(w.label);
        for child in &w.children {
            emit_black(child, word);
            word.push(w.label);
        }
    }
}

/// Inverse of the traversal; rejects words that fail to reconstruct.
pub fn sequence_to_tree(s: &CactSequence) -> Result<BWTree> {
    let root = parse_black(s.word())?;
    let tree = BWTree::new(root)?;
    if &tree_to_sequence(&tree) != s {
        return Err(Error::Parse(format!("word {s} fails the round-trip reconstruction")));
    }
    Ok(tree)
}

fn parse_black(word: &[u32]) -> Result<BlackNode> {
    let mut whites = Vec::new();
    let mut pos = 0;
    while pos < word.len() {
        let label = word[pos];
        let rel_last = word[pos..]
            .iter()
            .rposition(|&l| l == label)
            .expect("label occurs at pos");
        let segment = &word[pos..pos + rel_last + 1];
        let occ: Vec<usize> = segment
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == label)
            .map(|(i, _)| i)
            .collect();
        let mut children = Vec::new();
        for pair in occ.windows(2) {
            let inner = &segment[pair[0] + 1..pair[1]];
            if inner.is_empty() {
                return Err(Error::Parse(format!("empty lobe arc in {word:?}")));
            }
            children.push(parse_black(inner)?);
        }
        whites.push(WhiteNode { label, children });
        pos += rel_last + 1;
    }
    Ok(BlackNode { whites })
}

/// Which letters a cut duplicates when an inner word is split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplittingConvention {
    /// Consecutive pieces share the letter at each cut.
    Overlapping,
    /// Pieces partition the word with nothing shared.
    NonOverlapping,
}

/// Frozen by validation against the composition identities: only the
/// overlapping rule reproduces the top-cell recursion and keeps degrees
/// additive.
pub const SPLITTING_CONVENTION: SplittingConvention = SplittingConvention::Overlapping;

fn check_standard_labels(s: &CactSequence, who: &str) -> Result<()> {
    let want: BTreeSet<u32> = (1..=s.arity() as u32).collect();
    if s.letter_set() != want {
        return Err(Error::InvalidSequence(format!(
            "{who} word {s} is not labelled by 1..{}",
            s.arity()
        )));
    }
    Ok(())
}

/// Operadic composition u o_i v under the given splitting convention.
pub fn compose_with(
    conv: SplittingConvention,
    u: &CactSequence,
    i: u32,
    v: &CactSequence,
) -> Result<FormalSum> {
    check_standard_labels(u, "outer")?;
    check_standard_labels(v, "inner")?;
    if i == 0 || i as usize > u.arity() {
        return Err(Error::InvalidSequence(format!("slot {i} absent from {u}")));
    }
    let m = v.arity() as u32;
    let shifted_u: Vec<u32> = u
        .word()
        .iter()
        .map(|&l| if l > i { l + m - 1 } else { l })
        .collect();
    let shifted_v: Vec<u32> = v.word().iter().map(|&l| l + i - 1).collect();
    let k = u.word().iter().filter(|&&l| l == i).count();
    let mut sum = FormalSum::default();
    for cuts in cut_tuples(conv, shifted_v.len(), k - 1) {
        let mut pieces: Vec<&[u32]> = Vec::with_capacity(k);
        let mut start = 0usize;
        for &q in &cuts {
            let end = match conv {
                SplittingConvention::Overlapping => q + 1,
                SplittingConvention::NonOverlapping => q,
            };
            pieces.push(&shifted_v[start..end]);
            start = q;
        }
        pieces.push(&shifted_v[start..]);
        let mut word = Vec::new();
        let mut next_piece = 0usize;
        for &l in &shifted_u {
            if l == i {
                word.extend_from_slice(pieces[next_piece]);
                next_piece += 1;
            } else {
                word.push(l);
            }
        }
        if let Ok(s) = CactSequence::new(word) {
            sum.add(s, 1);
        }
    }
    Ok(sum)
}

/// Cut positions for splitting a word of the given length into `cuts + 1`
/// pieces: weakly increasing indices for the overlapping rule, strictly
/// increasing interior indices otherwise.
fn cut_tuples(conv: SplittingConvention, len: usize, cuts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let (lo, hi) = match conv {
        SplittingConvention::Overlapping => (0usize, len - 1),
        SplittingConvention::NonOverlapping => (1usize, len.saturating_sub(1)),
    };
    fn rec(
        conv: SplittingConvention,
        lo: usize,
        hi: usize,
        cuts: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == cuts {
            out.push(current.clone());
            return;
        }
        let start = match (current.last(), conv) {
            (None, _) => lo,
            (Some(&p), SplittingConvention::Overlapping) => p,
            (Some(&p), SplittingConvention::NonOverlapping) => p + 1,
        };
        for q in start..=hi {
            current.push(q);
            rec(conv, lo, hi, cuts, current, out);
            current.pop();
        }
    }
    if hi >= lo || cuts == 0 {
        rec(conv, lo, hi.max(lo), cuts, &mut current, &mut out);
    }
    out
}

pub fn compose(u: &CactSequence, i: u32, v: &CactSequence) -> Result<FormalSum> {
    compose_with(SPLITTING_CONVENTION, u, i, v)
}

/// Linear extension of compose over a formal sum in the inner slot.
pub fn compose_sum(u: &CactSequence, i: u32, inner: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::default();
    for (v, mult) in inner.terms() {
        for (w, m2) in compose(u, i, v)?.terms() {
            out.add(w.clone(), mult * m2);
        }
    }
    Ok(out)
}

fn two_lobe() -> CactSequence {
    CactSequence::new(vec![1, 2, 1]).unwrap()
}

/// Right-nested iterate of the two-lobe cell under o_1; its support is all
/// top cells of one permutahedron, each with multiplicity one.
pub fn dyer_lashof_right(n: u32) -> Result<FormalSum> {
    if n < 2 {
        return Err(Error::Unsupported("iterate needs n >= 2".into()));
    }
    let tau = two_lobe();
    let mut sum = FormalSum::singleton(tau.clone());
    for _ in 3..=n {
        sum = compose_sum(&tau, 1, &sum)?;
    }
    Ok(sum)
}

/// The o_2-nested iterate: a single hypercube cell, the caterpillar of the
/// identity order.
pub fn dyer_lashof_left(n: u32) -> Result<FormalSum> {
    if n < 2 {
        return Err(Error::Unsupported("iterate needs n >= 2".into()));
    }
    let tau = two_lobe();
    let mut sum = FormalSum::singleton(tau.clone());
    for _ in 3..=n {
        sum = compose_sum(&tau, 2, &sum)?;
    }
    Ok(sum)
}

/// Empirical scan: words in the image of the traversal should avoid the
/// pattern i...j...i...j with distinct i, j.  Returns the offending words.
pub fn subpattern_findings(words: &[CactSequence]) -> Vec<String> {
    let mut findings = Vec::new();
    for s in words {
        let w = s.word();
        let letters: Vec<u32> = s.letter_set().into_iter().collect();
        'pairs: for &i in &letters {
            for &j in &letters {
                if i == j {
                    continue;
                }
                // greedy subsequence match of i, j, i, j
                let mut want = [i, j, i, j].into_iter().peekable();
                for &l in w {
                    if Some(&l) == want.peek() {
                        want.next();
                    }
                }
                if want.peek().is_none() {
                    findings.push(format!("{s} contains {i}...{j}...{i}...{j}"));
                    break 'pairs;
                }
            }
        }
    }
    findings
}

/// Relabels a word by a bijection of 1..arity.
pub fn relabel(s: &CactSequence, perm: &NrSequence) -> Result<CactSequence> {
    let map: BTreeMap<u32, u32> = (1..).zip(perm.letters().iter().copied()).collect();
    CactSequence::new(
        s.word()
            .iter()
            .map(|l| {
                map.get(l)
                    .copied()
                    .ok_or_else(|| Error::InvalidSequence(format!("letter {l} unmapped")))
            })
            .collect::<Result<Vec<u32>>>()?,
    )
}
