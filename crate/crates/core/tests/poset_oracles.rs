//! Reference implementation of the face order on unshuffles: the transitive
//! closure of single adjacent-block merges, computed by brute force and
//! compared against the run-based test.

use permop_core::seq::{j_n_elements, poset_leq, NrSequence, Unshuffle};
use std::collections::HashMap;

/// All interleavings of two disjoint sequences.
fn shuffles(a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut s in shuffles(&a[1..], b) {
        s.insert(0, a[0]);
        out.push(s);
    }
    for mut s in shuffles(a, &b[1..]) {
        s.insert(0, b[0]);
        out.push(s);
    }
    out
}

/// Direct merge steps: replace two adjacent blocks by any shuffle of them.
fn merge_steps(u: &Unshuffle) -> Vec<Unshuffle> {
    let blocks = u.blocks();
    let mut out = Vec::new();
    for i in 0..blocks.len().saturating_sub(1) {
        for merged in shuffles(blocks[i].letters(), blocks[i + 1].letters()) {
            let mut nb: Vec<NrSequence> = blocks.to_vec();
            nb.splice(i..i + 2, [NrSequence::new(merged).unwrap()]);
            out.push(Unshuffle::new(nb).unwrap());
        }
    }
    out
}

fn closure_matrix(elements: &[Unshuffle]) -> Vec<Vec<bool>> {
    let idx: HashMap<String, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, u)| (u.to_string(), i))
        .collect();
    let len = elements.len();
    let mut reach = vec![vec![false; len]; len];
    for (i, u) in elements.iter().enumerate() {
        reach[i][i] = true;
        for m in merge_steps(u) {
            reach[i][idx[&m.to_string()]] = true;
        }
    }
    for k in 0..len {
        for i in 0..len {
            if reach[i][k] {
                for j in 0..len {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

#[test]
fn poset_leq_matches_brute_force_closure() {
    for n in 1..=4u32 {
        let elements = j_n_elements(n);
        let reach = closure_matrix(&elements);
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let fast = poset_leq(a, b).unwrap();
                assert_eq!(fast, reach[i][j], "n={n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn j_n_sizes() {
    for n in 1..=5u32 {
        let expect = (1..=n as usize).product::<usize>() * (1 << (n - 1));
        assert_eq!(j_n_elements(n).len(), expect, "n={n}");
    }
}
