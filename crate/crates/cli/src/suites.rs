//! The named verification suites behind `permop verify`.

use permop_core::complex::{
    build_cact, build_milgram, chain_map_i, order_complex, permutahedral_cover,
};
use permop_core::geometry::{face_lattice_violations, subdivision_volume_check};
use permop_core::homology::{gf2_betti, induced_iso_check, is_chain_map};
use permop_core::operad::{
    dyer_lashof_left, dyer_lashof_right, sequence_to_tree, tree_to_sequence,
};
use permop_core::seq::{j_n_elements, permutations, poset_leq, NrSequence, Unshuffle};
use permop_core::tree::{collapses, enumerate_trees, face_top_pairs, t_sigma, BWTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

/// Worker count: PERMOP_THREADS when set, otherwise the machine's parallelism.
fn thread_limit() -> usize {
    std::env::var("PERMOP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
        })
}

/// Applies `f` to every item on a bounded worker pool; results keep the input
/// order, so downstream output stays deterministic.
fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = thread_limit().min(items.len().max(1));
    let mut slots: Vec<Option<U>> = (0..items.len()).map(|_| None).collect();
    if workers <= 1 {
        for (slot, item) in slots.iter_mut().zip(items.iter()) {
            *slot = Some(f(item));
        }
    } else {
        let next = Mutex::new(0usize);
        let out = Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = {
                        let mut guard = next.lock().unwrap();
                        let i = *guard;
                        *guard += 1;
                        i
                    };
                    if i >= items.len() {
                        break;
                    }
                    let value = f(&items[i]);
                    out.lock().unwrap()[i] = Some(value);
                });
            }
        });
    }
    slots.into_iter().map(|s| s.unwrap()).collect()
}

fn all_sigmas(n: u32) -> Vec<NrSequence> {
    permutations((1..=n).collect())
        .into_iter()
        .map(|l| NrSequence::new(l).unwrap())
        .collect()
}

/// Betti numbers of the labelled configuration space of the plane:
/// coefficients of prod_{i=1}^{n-1} (1 + i t).
fn betti_oracle(n: u32) -> Vec<usize> {
    let mut coeffs = vec![1usize];
    for i in 1..n as usize {
        let mut next = vec![0usize; coeffs.len() + 1];
        for (d, &c) in coeffs.iter().enumerate() {
            next[d] += c;
            next[d + 1] += c * i;
        }
        coeffs = next;
    }
    coeffs
}

fn range_err(suite: &str, n: u32, lo: u32, hi: u32) -> Result<(), String> {
    if (lo..=hi).contains(&n) {
        Ok(())
    } else {
        Err(format!("suite {suite} supports {lo} <= n <= {hi}, got {n}"))
    }
}

pub fn run(suite: &str, n: u32, seed: u64, allow_large: bool) -> Result<Vec<Check>, String> {
    match suite {
        "poset" => {
            range_err(suite, n, 1, 5)?;
            Ok(poset_suite(n))
        }
        "trees" => {
            range_err(suite, n, 2, 5)?;
            Ok(trees_suite(n, seed, allow_large))
        }
        "cover" => {
            range_err(suite, n, 2, if allow_large { 5 } else { 4 })?;
            Ok(cover_suite(n))
        }
        "chainmap" => {
            range_err(suite, n, 2, 4)?;
            Ok(chainmap_suite(n))
        }
        "homology" => {
            range_err(suite, n, 2, 4)?;
            Ok(homology_suite(n))
        }
        "operad" => {
            range_err(suite, n, 2, 5)?;
            Ok(operad_suite(n))
        }
        "geometry" => {
            range_err(suite, n, 2, 4)?;
            Ok(geometry_suite(n))
        }
        "all" => {
            let mut out = Vec::new();
            for s in ["poset", "trees", "cover", "chainmap", "homology", "operad", "geometry"] {
                match run(s, n, seed, allow_large) {
                    Ok(mut checks) => out.append(&mut checks),
                    Err(_) => out.push(check(
                        format!("{s} (skipped)"),
                        true,
                        format!("n={n} outside the suite's range"),
                    )),
                }
            }
            Ok(out)
        }
        other => Err(format!(
            "unknown suite {other}; pick poset, trees, cover, chainmap, homology, operad, geometry, or all"
        )),
    }
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

fn poset_suite(n: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let elements = j_n_elements(n);
    let expect = (1..=n as usize).product::<usize>() * (1usize << (n - 1));
    out.push(check(
        "unshuffle count",
        elements.len() == expect,
        format!("{} elements, want {expect}", elements.len()),
    ));
    if n <= 4 {
        let table: HashMap<String, Vec<String>> = elements
            .iter()
            .map(|u| (u.to_string(), merge_steps(u).iter().map(|m| m.to_string()).collect()))
            .collect();
        let mut witness = None;
        'outer: for a in &elements {
            for b in &elements {
                let fast = poset_leq(a, b).unwrap();
                let slow = closure_reachable(&a.to_string(), &b.to_string(), &table);
                if fast != slow {
                    witness = Some(format!("{a} <= {b}: run test {fast}, closure {slow}"));
                    break 'outer;
                }
            }
        }
        out.push(check(
            "face order vs brute-force closure",
            witness.is_none(),
            witness.unwrap_or_else(|| format!("{0}x{0} pairs agree", elements.len())),
        ));
    } else {
        out.push(check(
            "face order vs brute-force closure",
            true,
            "skipped above n=4 (quadratic in 1920 elements); covered for n<=4",
        ));
    }
    out
}

fn closure_reachable(a: &str, b: &str, table: &HashMap<String, Vec<String>>) -> bool {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut queue = vec![a];
    while let Some(u) = queue.pop() {
        if !seen.insert(u) {
            continue;
        }
        if u == b {
            return true;
        }
        queue.extend(table[u].iter().map(|s| s.as_str()));
    }
    false
}

fn trees_suite(n: u32, seed: u64, allow_large: bool) -> Vec<Check> {
    let mut out = Vec::new();
    let want: usize = (0..n as usize - 1).map(|k| 2 * k + 1).product();
    let orders = if n == 5 && !allow_large {
        vec![NrSequence::identity(n), NrSequence::new((1..=n).rev().collect()).unwrap()]
    } else {
        all_sigmas(n)
    };
    let counts: Vec<usize> = par_map(orders.clone(), |sigma| {
        t_sigma(sigma, Some(n as usize - 1)).unwrap().len()
    });
    let bad: Vec<String> = orders
        .iter()
        .zip(&counts)
        .filter(|&(_, &c)| c != want)
        .map(|(s, c)| format!("{s}: {c}"))
        .collect();
    out.push(check(
        "top cells are (2n-3)!! for every vertex order",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} orders, {want} tops each", orders.len())
        } else {
            bad.join("; ")
        },
    ));
    let sigma = NrSequence::new((1..=n).rev().collect()).unwrap();
    let pairs = face_top_pairs(&sigma).unwrap();
    let tops: BTreeSet<String> =
        t_sigma(&sigma, Some(n as usize - 1)).unwrap().iter().map(BWTree::encode).collect();
    let domains: BTreeSet<String> = pairs.iter().map(|(d, _)| d.encode()).collect();
    let images: BTreeSet<String> = pairs.iter().map(|(_, t)| t.encode()).collect();
    out.push(check(
        "face/top bijection",
        domains.len() == pairs.len() && images == tops,
        format!("{} pairs over {sigma}", pairs.len()),
    ));
    let mut collapse_bad = None;
    for sigma in orders.iter().take(if n == 5 { 1 } else { orders.len() }) {
        let cells: BTreeSet<String> =
            t_sigma(sigma, None).unwrap().iter().map(BWTree::encode).collect();
        for t in t_sigma(sigma, None).unwrap() {
            for f in collapses(&t) {
                if !cells.contains(&f.encode()) || f.degree() + 1 != t.degree() {
                    collapse_bad = Some(format!("{sigma}: collapse of {}", t.encode()));
                }
            }
        }
    }
    out.push(check(
        "collapse closure and grading",
        collapse_bad.is_none(),
        collapse_bad.unwrap_or_else(|| "every collapse stays in its copy, degree drops by 1".into()),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<u32> = (1..=n).collect();
    let trees = enumerate_trees(&labels).unwrap();
    let mut rt_bad = None;
    for _ in 0..100 {
        let tau = &trees[rng.gen_range(0..trees.len())];
        if BWTree::parse(&tau.encode()).unwrap().encode() != tau.encode() {
            rt_bad = Some(tau.encode());
        }
    }
    out.push(check(
        "seeded encode/parse round trips",
        rt_bad.is_none(),
        rt_bad.unwrap_or_else(|| format!("100 samples from {} trees", trees.len())),
    ));
    out
}

fn cover_suite(n: u32) -> Vec<Check> {
    let cover = permutahedral_cover(n).unwrap();
    let cx = build_cact(n).unwrap();
    let missing = cover.uncovered(&cx);
    let mut out = vec![check(
        "permutahedral copies cover the complex",
        missing.is_empty(),
        if missing.is_empty() {
            format!("{} cells covered", cx.cell_count())
        } else {
            format!("uncovered: {}", missing.join(", "))
        },
    )];
    let leaks: Vec<String> = cover
        .caterpillar_memberships()
        .into_iter()
        .filter(|(sigma, homes)| homes != &vec![sigma.clone()])
        .map(|(sigma, homes)| format!("{sigma} sits in {}", homes.join(", ")))
        .collect();
    out.push(check(
        "caterpillar cells stay private to their copy",
        leaks.is_empty(),
        if leaks.is_empty() {
            format!("{} copies checked", cover.per_sigma.len())
        } else {
            leaks.join("; ")
        },
    ));
    out
}

fn chainmap_suite(n: u32) -> Vec<Check> {
    let f = build_milgram(n).unwrap();
    let c = build_cact(n).unwrap();
    let i = chain_map_i(&f, &c).unwrap();
    let commutes = is_chain_map(f.boundary2(), c.boundary2(), &i);
    let mut out = vec![check(
        "boundary commutes with the chain map",
        commutes,
        format!("degrees 0..{}", f.dim()),
    )];
    let verdict = induced_iso_check(f.boundary2(), c.boundary2(), &i).unwrap();
    let bad: Vec<String> = verdict
        .iter()
        .enumerate()
        .filter(|&(_, &ok)| !ok)
        .map(|(d, _)| format!("degree {d}"))
        .collect();
    out.push(check(
        "induced map is a mod-2 homology isomorphism",
        bad.is_empty(),
        if bad.is_empty() { format!("all {} degrees", verdict.len()) } else { bad.join(", ") },
    ));
    out
}

fn homology_suite(n: u32) -> Vec<Check> {
    let oracle = betti_oracle(n);
    let spaces = vec![build_milgram(n).unwrap(), build_cact(n).unwrap()];
    let results = par_map(spaces, |cx| {
        let betti2 = gf2_betti(&cx.f_vector(), cx.boundary2());
        let h = order_complex(cx.face_poset()).integral_homology().unwrap();
        (cx.name().to_string(), betti2, h, cx.euler_characteristic())
    });
    let mut out = Vec::new();
    for (name, betti2, h, chi) in results {
        out.push(check(
            format!("{name} mod-2 Betti"),
            betti2 == oracle,
            format!("{betti2:?}, oracle {oracle:?}"),
        ));
        out.push(check(
            format!("{name} integral Betti, torsion-free"),
            h.betti_vector() == oracle && h.is_torsion_free(),
            format!("{:?}, torsion-free {}", h.betti_vector(), h.is_torsion_free()),
        ));
        out.push(check(format!("{name} Euler characteristic"), chi == 0, format!("chi = {chi}")));
    }
    out
}

fn operad_suite(n: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let right = dyer_lashof_right(n).unwrap();
    let tops: BTreeSet<String> = t_sigma(&NrSequence::identity(n), Some(n as usize - 1))
        .unwrap()
        .iter()
        .map(|t| tree_to_sequence(t).to_string())
        .collect();
    let support: BTreeSet<String> = right.support().iter().map(|w| w.to_string()).collect();
    out.push(check(
        "right-nested iterate sweeps the top cells",
        support == tops && right.all_multiplicities_one(),
        format!("support {}, tops {}, multiplicities one: {}", support.len(), tops.len(),
            right.all_multiplicities_one()),
    ));
    let left = dyer_lashof_left(n).unwrap();
    let want: String = (1..=n)
        .chain((1..n).rev())
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(if n > 9 { "," } else { "" });
    out.push(check(
        "left-nested iterate is the single caterpillar cell",
        left.len() == 1 && left.support()[0].to_string() == want,
        format!("got {}", left.lines().join(" + ")),
    ));
    let round_n = n.min(4);
    let labels: Vec<u32> = (1..=round_n).collect();
    let mut rt_bad = None;
    for tau in enumerate_trees(&labels).unwrap() {
        let back = sequence_to_tree(&tree_to_sequence(&tau)).unwrap();
        if back.encode() != tau.encode() {
            rt_bad = Some(tau.encode());
        }
    }
    out.push(check(
        "tree/word round trip",
        rt_bad.is_none(),
        rt_bad.unwrap_or_else(|| format!("exhaustive through n={round_n}")),
    ));
    out
}

fn geometry_suite(n: u32) -> Vec<Check> {
    let sigmas = all_sigmas(n);
    let lattice: Vec<Vec<String>> =
        par_map(sigmas.clone(), |sigma| face_lattice_violations(sigma).unwrap());
    let bad: Vec<String> = sigmas
        .iter()
        .zip(&lattice)
        .filter(|&(_, v)| !v.is_empty())
        .map(|(s, v)| format!("{s}: {}", v.join("; ")))
        .collect();
    let mut out = vec![check(
        "face lattices realized exactly",
        bad.is_empty(),
        if bad.is_empty() { format!("{} copies", sigmas.len()) } else { bad.join(" | ") },
    )];
    let reports = par_map(sigmas.clone(), |sigma| subdivision_volume_check(sigma).unwrap());
    let vol_bad: Vec<String> = reports
        .iter()
        .filter(|r| !(r.volumes_partition && r.interiors_disjoint))
        .map(|r| format!("{}: total {} of {}", r.sigma, r.total_volume, r.pn_volume))
        .collect();
    out.push(check(
        "cactus cells partition each copy with disjoint interiors",
        vol_bad.is_empty(),
        if vol_bad.is_empty() {
            format!("volume {} per copy", reports[0].pn_volume)
        } else {
            vol_bad.join("; ")
        },
    ));
    out
}
