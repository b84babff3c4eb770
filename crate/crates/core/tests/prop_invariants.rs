//! Randomized invariants with a fixed seed: encoding round-trips on sampled
//! trees and equivariance of operadic composition under relabelling.

use permop_core::operad::{compose, relabel, sequence_to_tree, tree_to_sequence, CactSequence};
use permop_core::seq::NrSequence;
use permop_core::tree::{enumerate_trees, BWTree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_cafe;

fn sample_tree(rng: &mut ChaCha8Rng, labels: &[u32]) -> BWTree {
    let trees = enumerate_trees(labels).unwrap();
    trees[rng.gen_range(0..trees.len())].clone()
}

#[test]
fn tree_encoding_round_trip_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool: Vec<u32> = (1..=7).collect();
    for _ in 0..200 {
        let size = rng.gen_range(1..=4usize);
        let mut labels = pool.clone();
        labels.shuffle(&mut rng);
        labels.truncate(size);
        labels.sort();
        let tau = sample_tree(&mut rng, &labels);
        let back = BWTree::parse(&tau.encode()).unwrap();
        assert_eq!(back.encode(), tau.encode());
        assert_eq!(back.degree(), tau.degree());
    }
}

#[test]
fn word_round_trip_on_samples_n5() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let labels: Vec<u32> = (1..=5).collect();
    let trees = enumerate_trees(&labels).unwrap();
    for _ in 0..300 {
        let tau = &trees[rng.gen_range(0..trees.len())];
        let w = tree_to_sequence(tau);
        let back = sequence_to_tree(&w).unwrap();
        assert_eq!(back.encode(), tau.encode());
        assert_eq!(w.degree(), tau.degree());
    }
}

/// Extends a relabelling of the inner slot to the composite labelling: letters
/// below the slot stay put, the inner block is relabelled, letters above the
/// inner block stay put.
fn extend_inner_perm(outer_arity: usize, i: u32, pi: &NrSequence) -> NrSequence {
    let m = pi.len();
    let total = outer_arity + m - 1;
    let mut image = Vec::with_capacity(total);
    for p in 1..=total as u32 {
        if p < i {
            image.push(p);
        } else if (p as usize) < i as usize + m {
            image.push(pi.letters()[(p - i) as usize] + i - 1);
        } else {
            image.push(p);
        }
    }
    NrSequence::new(image).unwrap()
}

#[test]
fn compose_is_equivariant_in_the_inner_slot() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for _ in 0..120 {
        let n = rng.gen_range(2..=4u32);
        let m = rng.gen_range(2..=4u32);
        let outer_labels: Vec<u32> = (1..=n).collect();
        let inner_labels: Vec<u32> = (1..=m).collect();
        let u = tree_to_sequence(&sample_tree(&mut rng, &outer_labels));
        let v = tree_to_sequence(&sample_tree(&mut rng, &inner_labels));
        let i = rng.gen_range(1..=n);
        let mut pi_letters = inner_labels.clone();
        pi_letters.shuffle(&mut rng);
        let pi = NrSequence::new(pi_letters).unwrap();

        let lhs = compose(&u, i, &relabel(&v, &pi).unwrap()).unwrap();
        let pi_hat = extend_inner_perm(n as usize, i, &pi);
        let rhs = compose(&u, i, &v).unwrap();
        let mut relabelled: Vec<(CactSequence, u64)> = rhs
            .terms()
            .map(|(w, mult)| (relabel(w, &pi_hat).unwrap(), mult))
            .collect();
        relabelled.sort();
        let mut lhs_terms: Vec<(CactSequence, u64)> =
            lhs.terms().map(|(w, mult)| (w.clone(), mult)).collect();
        lhs_terms.sort();
        assert_eq!(lhs_terms, relabelled, "u={u} i={i} v={v} pi={pi}");
    }
}
