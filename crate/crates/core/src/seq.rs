//! Non-repeating sequences, unshuffles, and the posets they index.
//!
//! An unshuffle of a sequence is an ordered list of pairwise disjoint
//! subsequences covering it. Unshuffles of a fixed permutation form the face
//! poset of a permutahedron; taking the union over all permutations on the
//! same letters yields the gluing poset for the Milgram-style complex.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PosetElementJson, PosetJson};

/// Ordered list of distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NrSequence {
    letters: Vec<u32>,
}

impl NrSequence {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        let set: BTreeSet<u32> = letters.iter().copied().collect();
        if set.len() != letters.len() {
            return Err(Error::InvalidSequence(format!("repeated letter in {letters:?}")));
        }
        if letters.contains(&0) {
            return Err(Error::InvalidSequence("letters must be positive".into()));
        }
        Ok(NrSequence { letters })
    }

    /// The identity permutation `1 2 ... n`.
    pub fn identity(n: u32) -> Self {
        NrSequence { letters: (1..=n).collect() }
    }

    /// Parses decimal digit notation such as "3214" (single-digit letters only).
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit in {s:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        NrSequence::new(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter_set(&self) -> BTreeSet<u32> {
        self.letters.iter().copied().collect()
    }

    /// True if this is a permutation of `1..=n`.
    pub fn is_permutation(&self) -> bool {
        self.letter_set() == (1..=self.letters.len() as u32).collect()
    }

    /// Position (0-based) of each letter, for compatibility tests.
    pub fn position(&self, letter: u32) -> Option<usize> {
        self.letters.iter().position(|&l| l == letter)
    }

    /// The subsequence on the letters of `set`, in this sequence's order.
    pub fn restrict(&self, set: &BTreeSet<u32>) -> Result<Self> {
        let letters: Vec<u32> = self.letters.iter().copied().filter(|l| set.contains(l)).collect();
        if letters.len() != set.len() {
            return Err(Error::SetMismatch(format!("{set:?} not a subset of {:?}", self.letters)));
        }
        NrSequence::new(letters)
    }

    /// Removes the first term; rejects length-1 input.
    pub fn remove_first(&self) -> Result<Self> {
        if self.letters.len() < 2 {
            return Err(Error::InvalidSequence("cannot remove first term of a length-1 sequence".into()));
        }
        NrSequence::new(self.letters[1..].to_vec())
    }

    /// True if `sub` occurs as a (not necessarily contiguous) subsequence.
    pub fn has_subsequence(&self, sub: &[u32]) -> bool {
        let mut it = self.letters.iter();
        sub.iter().all(|s| it.any(|l| l == s))
    }
}

impl std::fmt::Display for NrSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.iter().any(|&l| l > 9) {
            let strs: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", strs.join(","))
        } else {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        }
    }
}

/// Ordered list of disjoint nonempty blocks, written `l1|l2|...|lk`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unshuffle {
    blocks: Vec<NrSequence>,
}

impl Unshuffle {
    pub fn new(blocks: Vec<NrSequence>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidUnshuffle("no blocks".into()));
        }
        let mut seen = BTreeSet::new();
        for b in &blocks {
            for &l in b.letters() {
                if !seen.insert(l) {
                    return Err(Error::InvalidUnshuffle(format!("letter {l} occurs twice")));
                }
            }
        }
        Ok(Unshuffle { blocks })
    }

    /// Parses bar notation such as "321|4" (single-digit letters only).
    pub fn parse(s: &str) -> Result<Self> {
        let blocks = s.split('|').map(NrSequence::parse).collect::<Result<Vec<_>>>()?;
        Unshuffle::new(blocks)
    }

    pub fn from_sequence(seq: NrSequence) -> Self {
        Unshuffle { blocks: vec![seq] }
    }

    pub fn blocks(&self) -> &[NrSequence] {
        &self.blocks
    }

    pub fn letter_set(&self) -> BTreeSet<u32> {
        self.blocks.iter().flat_map(|b| b.letters().iter().copied()).collect()
    }

    pub fn total_letters(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// degree = total letter count minus block count.
    pub fn degree(&self) -> usize {
        self.total_letters() - self.blocks.len()
    }

    /// The concatenation of all blocks, with bars removed.
    pub fn concatenation(&self) -> NrSequence {
        let letters = self.blocks.iter().flat_map(|b| b.letters().iter().copied()).collect();
        NrSequence::new(letters).expect("blocks are disjoint")
    }
}

impl std::fmt::Display for Unshuffle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// All unshuffles of `phi` into blocks of the given lengths, sorted
/// lexicographically by block contents.
pub fn unshuffles(phi: &NrSequence, parts: &[usize]) -> Result<Vec<Unshuffle>> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidUnshuffle(format!("bad part list {parts:?}")));
    }
    if parts.iter().sum::<usize>() != phi.len() {
        return Err(Error::InvalidUnshuffle(format!(
            "parts {parts:?} do not sum to sequence length {}",
            phi.len()
        )));
    }
    let mut out = Vec::new();
    let mut assignment = vec![usize::MAX; phi.len()];
    let mut remaining: Vec<usize> = parts.to_vec();
    assign_positions(phi, 0, &mut assignment, &mut remaining, &mut out);
    out.sort();
    Ok(out)
}

fn assign_positions(
    phi: &NrSequence,
    pos: usize,
    assignment: &mut [usize],
    remaining: &mut [usize],
    out: &mut Vec<Unshuffle>,
) {
    if pos == phi.len() {
        let blocks = (0..remaining.len())
            .map(|b| {
                let letters: Vec<u32> = phi
                    .letters()
                    .iter()
                    .zip(assignment.iter())
                    .filter(|&(_, &a)| a == b)
                    .map(|(&l, _)| l)
                    .collect();
                NrSequence::new(letters).expect("nonempty by part counts")
            })
            .collect();
        out.push(Unshuffle { blocks });
        return;
    }
    for b in 0..remaining.len() {
        if remaining[b] > 0 {
            remaining[b] -= 1;
            assignment[pos] = b;
            assign_positions(phi, pos + 1, assignment, remaining, out);
            remaining[b] += 1;
        }
    }
}

/// All unshuffles of `phi` into any number of blocks.
pub fn all_unshuffles(phi: &NrSequence) -> Vec<Unshuffle> {
    let n = phi.len();
    let mut out = Vec::new();
    for parts in compositions(n) {
        out.extend(unshuffles(phi, &parts).expect("valid parts"));
    }
    out
}

/// All compositions of `n` into positive parts, in a deterministic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Order test by the run characterization: `a <= b` iff the blocks of `a` can
/// be split into consecutive runs, one per block of `b`, with each block of
/// `b` a shuffle of its run.
pub fn poset_leq(a: &Unshuffle, b: &Unshuffle) -> Result<bool> {
    if a.letter_set() != b.letter_set() {
        return Err(Error::SetMismatch(format!("{a} vs {b}")));
    }
    Ok(runs_match(a.blocks(), b.blocks()))
}

fn runs_match(a: &[NrSequence], b: &[NrSequence]) -> bool {
    if b.is_empty() {
        return a.is_empty();
    }
    let want: usize = b[0].len();
    let mut taken = 0;
    for r in 1..=a.len() {
        taken += a[r - 1].len();
        if taken > want {
            return false;
        }
        if taken == want {
            return is_shuffle_of(&b[0], &a[..r]) && runs_match(&a[r..], &b[1..]);
        }
    }
    false
}

/// True if `whole` is a shuffle of the given blocks: same letter set and each
/// block a subsequence. Letters are distinct so this characterizes shuffles.
fn is_shuffle_of(whole: &NrSequence, blocks: &[NrSequence]) -> bool {
    let union: BTreeSet<u32> = blocks.iter().flat_map(|b| b.letters().iter().copied()).collect();
    union == whole.letter_set() && blocks.iter().all(|b| whole.has_subsequence(b.letters()))
}

/// The face poset of one permutahedron: all unshuffles of `sigma`, graded by
/// degree, with `sigma` itself the unique maximal element.
pub struct UnshufflePoset {
    pub elements: Vec<Unshuffle>,
    pub poset: FinitePoset,
}

impl UnshufflePoset {
    pub fn index_of(&self, u: &Unshuffle) -> Option<usize> {
        self.elements.iter().position(|e| e == u)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self
                .elements
                .iter()
                .enumerate()
                .map(|(id, u)| PosetElementJson {
                    id,
                    blocks: u.blocks().iter().map(|b| b.letters().to_vec()).collect(),
                    grade: self.poset.grade(id),
                })
                .collect(),
            covers: self.poset.covers().to_vec(),
        }
    }
}

fn poset_from_elements(elements: Vec<Unshuffle>) -> Result<UnshufflePoset> {
    let grade: Vec<usize> = elements.iter().map(|u| u.degree()).collect();
    let poset = FinitePoset::from_less(elements.len(), grade, |i, j| {
        elements[i] != elements[j] && poset_leq(&elements[i], &elements[j]).unwrap_or(false)
    })?;
    Ok(UnshufflePoset { elements, poset })
}

/// The poset of all unshuffles of a single nr-sequence.
pub fn build_j_sigma(sigma: &NrSequence) -> Result<UnshufflePoset> {
    let mut elements = all_unshuffles(sigma);
    elements.sort();
    poset_from_elements(elements)
}

/// The union over all permutations on the letters of [n]: every list of
/// disjoint nonempty blocks covering [n]. Element count is n! * 2^(n-1).
pub fn build_j_n(n: u32) -> Result<UnshufflePoset> {
    if n == 0 {
        return Err(Error::InvalidSequence("n must be positive".into()));
    }
    let mut elements = Vec::new();
    for perm in permutations((1..=n).collect()) {
        let seq = NrSequence::new(perm)?;
        for parts in compositions(n as usize) {
            for u in unshuffles(&seq, &parts)? {
                // Each (permutation, cut) pair yields a distinct block list.
                elements.push(u);
            }
        }
    }
    elements.sort();
    elements.dedup();
    poset_from_elements(elements)
}

/// Enumerates all block lists of J(n) without building the order, for counts.
pub fn j_n_elements(n: u32) -> Vec<Unshuffle> {
    let mut elements = Vec::new();
    for perm in permutations((1..=n).collect()) {
        let seq = NrSequence::new(perm).expect("distinct");
        for parts in compositions(n as usize) {
            elements.extend(unshuffles(&seq, &parts).expect("valid"));
        }
    }
    elements.sort();
    elements.dedup();
    elements
}

/// All permutations of the given letters, in lexicographic order.
pub fn permutations(letters: Vec<u32>) -> Vec<Vec<u32>> {
    let mut sorted = letters;
    sorted.sort_unstable();
    let mut out = Vec::new();
    permute_into(&mut Vec::new(), &sorted, &mut out);
    out
}

fn permute_into(prefix: &mut Vec<u32>, rest: &[u32], out: &mut Vec<Vec<u32>>) {
    if rest.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for (i, &l) in rest.iter().enumerate() {
        prefix.push(l);
        let mut next = rest.to_vec();
        next.remove(i);
        permute_into(prefix, &next, out);
        prefix.pop();
    }
}
