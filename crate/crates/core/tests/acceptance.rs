//! The acceptance gate: one test per criterion, each printing a single
//! pass/fail line.  Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines as they complete.

use permop_core::complex::{
    build_cact, build_milgram, celleq_f_vectors, chain_map_i, order_complex,
    permutahedral_cover,
};
use permop_core::geometry::{
    cact_cell_vertex_sequences, face_lattice_violations, subdivision_volume_check,
};
use permop_core::homology::{induced_iso_check, is_chain_map};
use permop_core::operad::{
    dyer_lashof_left, dyer_lashof_right, sequence_to_tree, tree_to_sequence,
};
use permop_core::seq::{all_unshuffles, permutations, poset_leq, NrSequence, Unshuffle};
use permop_core::tree::{
    collapses, decomposition, enumerate_trees, face_top_pairs, t_sigma, BWTree,
};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

fn criterion<F: FnOnce() -> Result<(), String>>(label: &str, body: F) {
    let start = Instant::now();
    let outcome = body();
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => println!("[PASS] {label} ({secs:.2}s)"),
        Err(ref why) => println!("[FAIL] {label} ({secs:.2}s): {why}"),
    }
    if let Err(why) = outcome {
        panic!("{label}: {why}");
    }
}

fn check(cond: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seq(s: &str) -> NrSequence {
    NrSequence::parse(s).unwrap()
}

fn all_sigmas(n: u32) -> Vec<NrSequence> {
    permutations((1..=n).collect())
        .into_iter()
        .map(|l| NrSequence::new(l).unwrap())
        .collect()
}

#[test]
fn c1_structured_tree_counts_and_face_top_bijection() {
    criterion("C1 structured tree counts and face/top bijection", || {
        let t3 = t_sigma(&seq("4321"), Some(3)).map_err(|e| e.to_string())?;
        check(t3.len() == 15, || format!("|tops(4321)| = {}", t3.len()))?;
        let dec4 = decomposition(&seq("4321")).map_err(|e| e.to_string())?;
        let want4: BTreeMap<usize, usize> = [(1, 3), (2, 6), (3, 6)].into();
        check(dec4.piece_sizes_by_k() == want4, || {
            format!("4321 piece sizes {:?}", dec4.piece_sizes_by_k())
        })?;
        let t4 = t_sigma(&seq("54321"), Some(4)).map_err(|e| e.to_string())?;
        check(t4.len() == 105, || format!("|tops(54321)| = {}", t4.len()))?;
        let dec5 = decomposition(&seq("54321")).map_err(|e| e.to_string())?;
        let want5: BTreeMap<usize, usize> = [(1, 15), (2, 30), (3, 36), (4, 24)].into();
        check(dec5.piece_sizes_by_k() == want5, || {
            format!("54321 piece sizes {:?}", dec5.piece_sizes_by_k())
        })?;
        for sigma in [seq("321"), seq("4321"), seq("54321")] {
            let pairs = face_top_pairs(&sigma).map_err(|e| e.to_string())?;
            let tops: BTreeSet<String> = t_sigma(&sigma, Some(sigma.len() - 1))
                .map_err(|e| e.to_string())?
                .iter()
                .map(|t| t.encode())
                .collect();
            let domains: BTreeSet<String> = pairs.iter().map(|(d, _)| d.encode()).collect();
            let images: BTreeSet<String> = pairs.iter().map(|(_, t)| t.encode()).collect();
            check(
                domains.len() == pairs.len() && images == tops,
                || format!("{sigma}: face/top map not bijective onto tops"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn c2_double_factorial_top_counts_all_sigma() {
    criterion("C2 top-cell count (2n-3)!! for every vertex order, n = 2..5", || {
        for n in 2..=5u32 {
            let want: usize = (0..n as usize - 1).map(|k| 2 * k + 1).product();
            for sigma in all_sigmas(n) {
                let got = t_sigma(&sigma, Some(n as usize - 1))
                    .map_err(|e| e.to_string())?
                    .len();
                check(got == want, || format!("{sigma}: {got} tops, want {want}"))?;
            }
        }
        Ok(())
    });
}

fn subdivision_signature(sigma: &NrSequence) -> BTreeSet<Vec<Vec<u32>>> {
    t_sigma(sigma, Some(sigma.len() - 1))
        .unwrap()
        .iter()
        .map(|t| {
            cact_cell_vertex_sequences(t)
                .iter()
                .map(|s| s.letters().to_vec())
                .collect()
        })
        .collect()
}

#[test]
fn c3_decomposition_product_structure() {
    criterion("C3 decomposition pieces: product cell counts and partition", || {
        for n in 2..=4u32 {
            for sigma in all_sigmas(n) {
                let rest = sigma.remove_first().map_err(|e| e.to_string())?;
                for l in all_unshuffles(&rest) {
                    let (actual, predicted) =
                        celleq_f_vectors(&sigma, &l).map_err(|e| e.to_string())?;
                    check(actual == predicted, || {
                        format!("sigma={sigma} l={l}: {actual:?} vs {predicted:?}")
                    })?;
                }
                let dec = decomposition(&sigma).map_err(|e| e.to_string())?;
                let mut from_pieces: Vec<String> =
                    dec.all_top_trees().iter().map(|t| t.encode()).collect();
                from_pieces.sort();
                let uniq: BTreeSet<&String> = from_pieces.iter().collect();
                let mut tops: Vec<String> = t_sigma(&sigma, Some(n as usize - 1))
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|t| t.encode())
                    .collect();
                tops.sort();
                check(uniq.len() == from_pieces.len() && from_pieces == tops, || {
                    format!("{sigma}: pieces do not partition the top cells")
                })?;
            }
        }
        for n in 3..=4u32 {
            let signatures: BTreeSet<_> =
                all_sigmas(n).iter().map(subdivision_signature).collect();
            let half: usize = (1..=n as usize).product::<usize>() / 2;
            check(signatures.len() == half, || {
                format!("n={n}: {} distinct subdivisions, want {half}", signatures.len())
            })?;
        }
        Ok(())
    });
}

#[test]
fn c4_integral_homology_of_both_models() {
    criterion("C4 integral homology: both models contractible-free E2 Betti", || {
        let betti = [vec![1usize, 1], vec![1, 3, 2], vec![1, 6, 11, 6]];
        for n in 2..=4u32 {
            for cx in [build_milgram(n), build_cact(n)] {
                let cx = cx.map_err(|e| e.to_string())?;
                let oc = order_complex(cx.face_poset());
                let h = oc.integral_homology().map_err(|e| e.to_string())?;
                check(
                    h.betti_vector() == betti[n as usize - 2] && h.is_torsion_free(),
                    || {
                        format!(
                            "{} n={n}: betti {:?}, torsion-free {}",
                            cx.name(),
                            h.betti_vector(),
                            h.is_torsion_free()
                        )
                    },
                )?;
                check(cx.euler_characteristic() == 0, || {
                    format!("{} n={n}: chi = {}", cx.name(), cx.euler_characteristic())
                })?;
            }
        }
        let f5 = build_milgram(5).map_err(|e| e.to_string())?;
        check(f5.cell_count() == 1920, || format!("|F(5)| = {}", f5.cell_count()))?;
        check(f5.euler_characteristic() == 0, || {
            format!("F(5): chi = {}", f5.euler_characteristic())
        })?;
        Ok(())
    });
}

#[test]
fn c5_chain_map_and_induced_isomorphism() {
    criterion("C5 cellular chain map commutes and induces mod-2 iso, n = 2..4", || {
        for n in 2..=4u32 {
            let f = build_milgram(n).map_err(|e| e.to_string())?;
            let c = build_cact(n).map_err(|e| e.to_string())?;
            let i = chain_map_i(&f, &c).map_err(|e| e.to_string())?;
            check(is_chain_map(f.boundary2(), c.boundary2(), &i), || {
                format!("n={n}: boundary does not commute with the chain map")
            })?;
            let verdict =
                induced_iso_check(f.boundary2(), c.boundary2(), &i).map_err(|e| e.to_string())?;
            check(verdict.iter().all(|&ok| ok), || {
                format!("n={n}: induced map fails in degrees {verdict:?}")
            })?;
        }
        Ok(())
    });
}

#[test]
fn c6_iterated_compositions() {
    criterion("C6 iterated compositions: full subdivision vs single cube cell", || {
        for n in 2..=5u32 {
            let right = dyer_lashof_right(n).map_err(|e| e.to_string())?;
            let tops: BTreeSet<String> = t_sigma(&NrSequence::identity(n), Some(n as usize - 1))
                .map_err(|e| e.to_string())?
                .iter()
                .map(|t| tree_to_sequence(t).to_string())
                .collect();
            let support: BTreeSet<String> =
                right.support().iter().map(|w| w.to_string()).collect();
            check(support == tops && right.all_multiplicities_one(), || {
                format!("n={n}: right iterate support {} words, want {}", support.len(), tops.len())
            })?;
            let left = dyer_lashof_left(n).map_err(|e| e.to_string())?;
            let mut cat: Vec<u32> = (1..=n).chain((1..n).rev()).collect();
            cat.dedup();
            let want = cat.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("");
            check(
                left.len() == 1 && left.support()[0].to_string() == want,
                || format!("n={n}: left iterate is {left:?}, want the single word {want}"),
            )?;
        }
        for n in 1..=4u32 {
            let labels: Vec<u32> = (1..=n).collect();
            for tau in enumerate_trees(&labels).map_err(|e| e.to_string())? {
                let w = tree_to_sequence(&tau);
                let back = sequence_to_tree(&w).map_err(|e| e.to_string())?;
                check(back.encode() == tau.encode(), || {
                    format!("round trip breaks on {}", tau.encode())
                })?;
            }
        }
        Ok(())
    });
}

#[test]
fn c7_exact_geometry() {
    criterion("C7 exact geometry: face lattices, volume partition, disjoint interiors", || {
        for n in 2..=4u32 {
            for sigma in all_sigmas(n) {
                let bad = face_lattice_violations(&sigma).map_err(|e| e.to_string())?;
                check(bad.is_empty(), || format!("{sigma}: {}", bad.join("; ")))?;
            }
        }
        for n in 3..=4u32 {
            for sigma in all_sigmas(n) {
                let report = subdivision_volume_check(&sigma).map_err(|e| e.to_string())?;
                check(report.volumes_partition && report.interiors_disjoint, || {
                    format!(
                        "{sigma}: total volume {} of {}, disjoint {}",
                        report.total_volume, report.pn_volume, report.interiors_disjoint
                    )
                })?;
            }
        }
        Ok(())
    });
}

fn brute_closure_leq(a: &Unshuffle, b: &Unshuffle, table: &HashMap<String, Vec<String>>) -> bool {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut queue = vec![a.to_string()];
    while let Some(u) = queue.pop() {
        if !seen.insert(u.clone()) {
            continue;
        }
        if u == b.to_string() {
            return true;
        }
        queue.extend(table[&u].iter().cloned());
    }
    false
}

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

#[test]
fn c8_complex_sanity_and_poset_oracle() {
    criterion("C8 boundaries square to zero, regular gluing, face-order oracle", || {
        for n in 2..=4u32 {
            for cx in [build_milgram(n), build_cact(n)] {
                let cx = cx.map_err(|e| e.to_string())?;
                check(cx.boundary_squares_to_zero(), || {
                    format!("{} n={n}: boundary squared nonzero", cx.name())
                })?;
                let bad = cx.regularity_violations();
                check(bad.is_empty(), || {
                    format!("{} n={n}: irregular cells {}", cx.name(), bad.join(", "))
                })?;
            }
            let cover = permutahedral_cover(n).map_err(|e| e.to_string())?;
            let cact = build_cact(n).map_err(|e| e.to_string())?;
            check(cover.uncovered(&cact).is_empty(), || {
                format!("n={n}: cells outside every permutahedral copy")
            })?;
            for sigma in all_sigmas(n) {
                let cells: BTreeSet<String> = t_sigma(&sigma, None)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(BWTree::encode)
                    .collect();
                for t in t_sigma(&sigma, None).map_err(|e| e.to_string())? {
                    for f in collapses(&t) {
                        check(
                            cells.contains(&f.encode()) && f.degree() + 1 == t.degree(),
                            || format!("{sigma}: collapse of {} escapes or skips", t.encode()),
                        )?;
                    }
                }
            }
        }
        let f5 = build_milgram(5).map_err(|e| e.to_string())?;
        check(f5.boundary_squares_to_zero(), || "F(5): boundary squared nonzero".into())?;
        for n in 1..=4u32 {
            let elements = permop_core::seq::j_n_elements(n);
            let table: HashMap<String, Vec<String>> = elements
                .iter()
                .map(|u| {
                    (
                        u.to_string(),
                        merge_steps(u).iter().map(|m| m.to_string()).collect(),
                    )
                })
                .collect();
            for a in &elements {
                for b in &elements {
                    let fast = poset_leq(a, b).map_err(|e| e.to_string())?;
                    let slow = brute_closure_leq(a, b, &table);
                    check(fast == slow, || format!("n={n}: {a} <= {b}: {fast} vs {slow}"))?;
                }
            }
        }
        Ok(())
    });
}
