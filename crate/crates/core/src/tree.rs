//! Planted planar bipartite black/white trees and their surgery operators.
//!
//! Trees have a black root, strictly alternating colors, labelled white
//! vertices and white leaves. They index the cells of the normalized cactus
//! complex; the degree of a tree (number of black vertices minus one) is the
//! cell dimension. Angle collapses generate the face order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::{NrSequence, Unshuffle};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WhiteNode {
    pub label: u32,
    pub children: Vec<BlackNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlackNode {
    pub whites: Vec<WhiteNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BWTree {
    pub root: BlackNode,
}

impl BWTree {
    pub fn new(root: BlackNode) -> Result<Self> {
        let tree = BWTree { root };
        tree.validate()?;
        Ok(tree)
    }

    fn validate(&self) -> Result<()> {
        if self.root.whites.is_empty() {
            return Err(Error::InvalidTree("root has no white children".into()));
        }
        let mut labels = BTreeSet::new();
        validate_black(&self.root, true, &mut labels)?;
        Ok(())
    }

    /// The corolla: one black root with childless white vertices in the
    /// order of `seq`.
    pub fn scc(seq: &NrSequence) -> Self {
        BWTree {
            root: BlackNode {
                whites: seq
                    .letters()
                    .iter()
                    .map(|&l| WhiteNode { label: l, children: vec![] })
                    .collect(),
            },
        }
    }

    /// The linear tree realizing the total order of `seq`:
    /// `s1` below `s2` below ... below `sn`.
    pub fn caterpillar(seq: &NrSequence) -> Self {
        let mut node: Option<BlackNode> = None;
        for &l in seq.letters().iter().rev() {
            let children = match node.take() {
                Some(b) => vec![b],
                None => vec![],
            };
            node = Some(BlackNode { whites: vec![WhiteNode { label: l, children }] });
        }
        BWTree { root: node.expect("nonempty sequence") }
    }

    pub fn label_set(&self) -> BTreeSet<u32> {
        let mut set = BTreeSet::new();
        collect_labels(&self.root, &mut set);
        set
    }

    /// Number of black vertices minus one.
    pub fn degree(&self) -> usize {
        count_blacks(&self.root) - 1
    }

    pub fn is_white_rooted(&self) -> bool {
        self.root.whites.len() == 1
    }

    /// Number of incoming edges of the unique white root.
    pub fn initial_branching(&self) -> Result<usize> {
        if !self.is_white_rooted() {
            return Err(Error::InvalidTree("initial branching is defined for white-rooted trees only".into()));
        }
        Ok(self.root.whites[0].children.len())
    }

    /// Canonical nested encoding: black nodes as bracket groups, white labels
    /// in place, e.g. `[1[2],3]` for white 1 (carrying a branch with white 2)
    /// followed by white 3 at the root.
    pub fn encode(&self) -> String {
        encode_black(&self.root)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut chars = s.chars().peekable();
        let root = parse_black(&mut chars)?;
        if chars.next().is_some() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        BWTree::new(root)
    }

    /// Arity (number of incoming edges) of each white vertex, by label.
    pub fn white_arities(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        collect_arities(&self.root, &mut out);
        out
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            label_set: self.label_set().into_iter().collect(),
            encoding: self.encode(),
            degree: self.degree(),
        }
    }
}

impl std::fmt::Display for BWTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.encode())
    }
}

#[derive(Debug, Serialize)]
pub struct TreeJson {
    pub label_set: Vec<u32>,
    pub encoding: String,
    pub degree: usize,
}

fn validate_black(node: &BlackNode, is_root: bool, labels: &mut BTreeSet<u32>) -> Result<()> {
    if !is_root && node.whites.is_empty() {
        return Err(Error::InvalidTree("non-root black vertex without white child".into()));
    }
    for w in &node.whites {
        if w.label == 0 {
            return Err(Error::InvalidTree("labels must be positive".into()));
        }
        if !labels.insert(w.label) {
            return Err(Error::InvalidTree(format!("label {} occurs twice", w.label)));
        }
        for b in &w.children {
            validate_black(b, false, labels)?;
        }
    }
    Ok(())
}

fn collect_labels(node: &BlackNode, set: &mut BTreeSet<u32>) {
    for w in &node.whites {
        set.insert(w.label);
        for b in &w.children {
            collect_labels(b, set);
        }
    }
}

fn count_blacks(node: &BlackNode) -> usize {
    1 + node
        .whites
        .iter()
        .map(|w| w.children.iter().map(count_blacks).sum::<usize>())
        .sum::<usize>()
}

fn collect_arities(node: &BlackNode, out: &mut BTreeMap<u32, usize>) {
    for w in &node.whites {
        out.insert(w.label, w.children.len());
        for b in &w.children {
            collect_arities(b, out);
        }
    }
}

fn encode_black(node: &BlackNode) -> String {
    let parts: Vec<String> = node
        .whites
        .iter()
        .map(|w| {
            let mut s = w.label.to_string();
            for b in &w.children {
                s.push_str(&encode_black(b));
            }
            s
        })
        .collect();
    format!("[{}]", parts.join(","))
}

fn parse_black(chars: &mut std::iter::Peekable<std::str::Chars>) -> Result<BlackNode> {
    if chars.next() != Some('[') {
        return Err(Error::Parse("expected '['".into()));
    }
    let mut whites = Vec::new();
    loop {
        match chars.peek() {
            Some(']') => {
                chars.next();
                return Ok(BlackNode { whites });
            }
            Some(',') => {
                chars.next();
            }
            Some(c) if c.is_ascii_digit() => {
                let mut label = 0u32;
                while let Some(c) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        label = label * 10 + d;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let mut children = Vec::new();
                while chars.peek() == Some(&'[') {
                    children.push(parse_black(chars)?);
                }
                whites.push(WhiteNode { label, children });
            }
            other => return Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

/// Enumerates every tree on the given distinct labels, sorted by
/// (degree, encoding). Recursion follows the root surgery: a tree is the
/// black merge of white-rooted trees; a white-rooted tree is a graft of trees
/// onto a corolla.
pub fn enumerate_trees(labels: &[u32]) -> Result<Vec<BWTree>> {
    let set: BTreeSet<u32> = labels.iter().copied().collect();
    if set.len() != labels.len() || labels.is_empty() {
        return Err(Error::InvalidTree(format!("labels must be nonempty and distinct: {labels:?}")));
    }
    let mut memo = Memo::default();
    let key: Vec<u32> = set.into_iter().collect();
    let mut out = memo.trees(&key);
    out.sort_by_key(|t| (t.degree(), t.encode()));
    Ok(out)
}

#[derive(Default)]
struct Memo {
    trees: HashMap<Vec<u32>, Vec<BWTree>>,
    white_rooted: HashMap<Vec<u32>, Vec<BWTree>>,
}

impl Memo {
    fn trees(&mut self, labels: &[u32]) -> Vec<BWTree> {
        if let Some(hit) = self.trees.get(labels) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for parts in ordered_set_partitions(labels, 1) {
            let branch_sets: Vec<Vec<BWTree>> =
                parts.iter().map(|p| self.white_rooted(p)).collect();
            for combo in cartesian(&branch_sets) {
                let whites = combo
                    .iter()
                    .map(|t| t.root.whites[0].clone())
                    .collect();
                out.push(BWTree { root: BlackNode { whites } });
            }
        }
        self.trees.insert(labels.to_vec(), out.clone());
        out
    }

    fn white_rooted(&mut self, labels: &[u32]) -> Vec<BWTree> {
        if let Some(hit) = self.white_rooted.get(labels) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for &s in labels {
            let rest: Vec<u32> = labels.iter().copied().filter(|&l| l != s).collect();
            if rest.is_empty() {
                out.push(BWTree {
                    root: BlackNode { whites: vec![WhiteNode { label: s, children: vec![] }] },
                });
                continue;
            }
            for parts in ordered_set_partitions(&rest, 1) {
                let child_sets: Vec<Vec<BWTree>> = parts.iter().map(|p| self.trees(p)).collect();
                for combo in cartesian(&child_sets) {
                    let children = combo.iter().map(|t| t.root.clone()).collect();
                    out.push(BWTree {
                        root: BlackNode { whites: vec![WhiteNode { label: s, children }] },
                    });
                }
            }
        }
        self.white_rooted.insert(labels.to_vec(), out.clone());
        out
    }
}

/// Ordered partitions of `elems` into at least `min_parts` nonempty parts.
/// Part contents are kept in sorted order (they act as sets).
fn ordered_set_partitions(elems: &[u32], min_parts: usize) -> Vec<Vec<Vec<u32>>> {
    let m = elems.len();
    let mut out = Vec::new();
    for j in min_parts.max(1)..=m {
        let mut assignment = vec![0usize; m];
        assign_parts(elems, 0, j, &mut assignment, &mut out);
    }
    out
}

fn assign_parts(
    elems: &[u32],
    pos: usize,
    parts: usize,
    assignment: &mut [usize],
    out: &mut Vec<Vec<Vec<u32>>>,
) {
    if pos == elems.len() {
        let mut groups = vec![Vec::new(); parts];
        for (e, &a) in elems.iter().zip(assignment.iter()) {
            groups[a].push(*e);
        }
        if groups.iter().all(|g| !g.is_empty()) {
            out.push(groups);
        }
        return;
    }
    for p in 0..parts {
        assignment[pos] = p;
        assign_parts(elems, pos + 1, parts, assignment, out);
    }
}

pub fn cartesian<T: Clone>(sets: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for set in sets {
        let mut next = Vec::with_capacity(out.len() * set.len());
        for prefix in &out {
            for item in set {
                let mut row = prefix.clone();
                row.push(item.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// All single angle collapses of `tau`. Each result has degree one less.
/// The output is a list, not a set: a repeated target would violate
/// regularity and is detected by the invariant suite, not hidden here.
pub fn collapses(tau: &BWTree) -> Vec<BWTree> {
    collapse_black(&tau.root)
        .into_iter()
        .map(|root| BWTree { root })
        .collect()
}

fn collapse_black(node: &BlackNode) -> Vec<BlackNode> {
    let mut out = Vec::new();
    for (i, w) in node.whites.iter().enumerate() {
        let wdeg = w.children.len();
        if wdeg >= 1 {
            // Inner angles: merge adjacent black children j and j+1.
            for j in 0..wdeg - 1 {
                let mut children = w.children.clone();
                let merged = BlackNode {
                    whites: children[j]
                        .whites
                        .iter()
                        .chain(children[j + 1].whites.iter())
                        .cloned()
                        .collect(),
                };
                children.splice(j..j + 2, [merged]);
                out.push(replace_white(node, i, WhiteNode { label: w.label, children }));
            }
            // Leftmost angle: splice first branch into the parent before this vertex.
            {
                let mut whites = node.whites.clone();
                let mut w2 = w.clone();
                let first = w2.children.remove(0);
                whites.splice(i..i + 1, first.whites.into_iter().chain([w2]));
                out.push(BlackNode { whites });
            }
            // Rightmost angle: splice last branch into the parent after this vertex.
            {
                let mut whites = node.whites.clone();
                let mut w2 = w.clone();
                let last = w2.children.pop().expect("nonempty");
                whites.splice(i..i + 1, [w2].into_iter().chain(last.whites));
                out.push(BlackNode { whites });
            }
        }
        // Collapses inside each branch.
        for (j, b) in w.children.iter().enumerate() {
            for collapsed in collapse_black(b) {
                let mut children = w.children.clone();
                children[j] = collapsed;
                out.push(replace_white(node, i, WhiteNode { label: w.label, children }));
            }
        }
    }
    out
}

fn replace_white(node: &BlackNode, i: usize, w: WhiteNode) -> BlackNode {
    let mut whites = node.whites.clone();
    whites[i] = w;
    BlackNode { whites }
}

/// The downward closure of `tau` under collapses, including `tau`.
pub fn collapse_closure(tau: &BWTree) -> Vec<BWTree> {
    let mut seen: BTreeSet<BWTree> = BTreeSet::new();
    let mut queue = vec![tau.clone()];
    while let Some(t) = queue.pop() {
        if seen.insert(t.clone()) {
            queue.extend(collapses(&t));
        }
    }
    seen.into_iter().collect()
}

/// Strict partial order on labels induced by descent through the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelOrder {
    pub relation: BTreeSet<(u32, u32)>,
}

impl LabelOrder {
    pub fn is_coarser_than(&self, other: &LabelOrder) -> bool {
        self.relation.is_subset(&other.relation)
    }
}

pub fn partial_order(tau: &BWTree) -> LabelOrder {
    let mut relation = BTreeSet::new();
    let mut ancestors = Vec::new();
    order_from_black(&tau.root, &mut ancestors, &mut relation);
    LabelOrder { relation }
}

fn order_from_black(node: &BlackNode, ancestors: &mut Vec<u32>, relation: &mut BTreeSet<(u32, u32)>) {
    for w in &node.whites {
        for &a in ancestors.iter() {
            relation.insert((a, w.label));
        }
        ancestors.push(w.label);
        for b in &w.children {
            order_from_black(b, ancestors, relation);
        }
        ancestors.pop();
    }
}

/// True iff the label order of `tau` is compatible with the total order of
/// `phi`: along every descent edge the labels advance within `phi`.
pub fn compatible(tau: &BWTree, phi: &NrSequence) -> Result<bool> {
    if tau.label_set() != phi.letter_set() {
        return Err(Error::SetMismatch(format!("tree {} vs sequence {}", tau.encode(), phi)));
    }
    Ok(partial_order(tau)
        .relation
        .iter()
        .all(|&(a, b)| phi.position(a).unwrap() < phi.position(b).unwrap()))
}

/// The trees on the letters of `phi` whose label order is compatible with
/// `phi`, optionally restricted to a single degree.
pub fn t_sigma(phi: &NrSequence, degree_filter: Option<usize>) -> Result<Vec<BWTree>> {
    let all = enumerate_trees(phi.letters())?;
    Ok(all
        .into_iter()
        .filter(|t| degree_filter.is_none_or(|d| t.degree() == d))
        .filter(|t| compatible(t, phi).expect("same labels"))
        .collect())
}

/// Merges the black roots of an ordered forest into one tree (bar notation).
pub fn b_plus_black(forest: &[BWTree]) -> Result<BWTree> {
    let mut labels = BTreeSet::new();
    for t in forest {
        for l in t.label_set() {
            if !labels.insert(l) {
                return Err(Error::LabelClash(format!("label {l} occurs in two forest members")));
            }
        }
    }
    let whites = forest.iter().flat_map(|t| t.root.whites.iter().cloned()).collect();
    BWTree::new(BlackNode { whites })
}

/// Cuts all edges at the black root, one white-rooted tree per branch.
pub fn b_minus_black(tau: &BWTree) -> Vec<BWTree> {
    tau.root
        .whites
        .iter()
        .map(|w| BWTree { root: BlackNode { whites: vec![w.clone()] } })
        .collect()
}

/// Cuts all edges above the unique white root; returns its label and the
/// ordered branches, each with a fresh black root.
pub fn b_minus_white(tau: &BWTree) -> Result<(u32, Vec<BWTree>)> {
    if !tau.is_white_rooted() {
        return Err(Error::InvalidTree("white-root surgery needs a white-rooted tree".into()));
    }
    let w = &tau.root.whites[0];
    Ok((w.label, w.children.iter().map(|b| BWTree { root: b.clone() }).collect()))
}

/// Grafts an ordered forest onto the corolla of a single fresh label.
pub fn b_plus_s(s: u32, forest: &[BWTree]) -> Result<BWTree> {
    let mut labels = BTreeSet::new();
    labels.insert(s);
    for t in forest {
        for l in t.label_set() {
            if !labels.insert(l) {
                return Err(Error::LabelClash(format!("label {l} clashes while grafting onto {s}")));
            }
        }
    }
    let children = forest.iter().map(|t| t.root.clone()).collect();
    BWTree::new(BlackNode { whites: vec![WhiteNode { label: s, children }] })
}

/// Top-degree piece of the decomposition of one permutahedron: for each
/// initial branching number `k` and each unshuffle `l` of `sigma` minus its
/// first letter, the top trees grafted from that unshuffle.
pub struct Decomposition {
    pub sigma: NrSequence,
    /// k -> (unshuffle of sigma\sigma1 -> top trees).
    pub pieces: BTreeMap<usize, BTreeMap<Unshuffle, Vec<BWTree>>>,
}

impl Decomposition {
    pub fn piece_sizes_by_k(&self) -> BTreeMap<usize, usize> {
        self.pieces
            .iter()
            .map(|(&k, by_l)| (k, by_l.values().map(|v| v.len()).sum()))
            .collect()
    }

    pub fn all_top_trees(&self) -> Vec<BWTree> {
        let mut out: Vec<BWTree> = self
            .pieces
            .values()
            .flat_map(|by_l| by_l.values().flatten().cloned())
            .collect();
        out.sort();
        out
    }
}

pub fn decomposition(sigma: &NrSequence) -> Result<Decomposition> {
    let n = sigma.len();
    if n < 2 {
        return Err(Error::InvalidSequence("decomposition needs length >= 2".into()));
    }
    let rest = sigma.remove_first()?;
    let top = t_sigma(sigma, Some(n - 1))?;
    let mut pieces: BTreeMap<usize, BTreeMap<Unshuffle, Vec<BWTree>>> = BTreeMap::new();
    for tau in top {
        let (root_label, branches) = b_minus_white(&tau)?;
        debug_assert_eq!(root_label, sigma.letters()[0], "top trees are rooted at the first letter");
        let k = branches.len();
        let blocks = branches
            .iter()
            .map(|b| rest.restrict(&b.label_set()))
            .collect::<Result<Vec<_>>>()?;
        let l = Unshuffle::new(blocks)?;
        pieces.entry(k).or_default().entry(l).or_default().push(tau);
    }
    Ok(Decomposition { sigma: sigma.clone(), pieces })
}

/// All cells of the decomposition piece for one unshuffle `l`: the downward
/// collapse closure of the top trees grafted from `l`.
pub fn t_sigma_l_cells(sigma: &NrSequence, l: &Unshuffle) -> Result<Vec<BWTree>> {
    let decomp = decomposition(sigma)?;
    let mut cells: BTreeSet<BWTree> = BTreeSet::new();
    for by_l in decomp.pieces.values() {
        if let Some(tops) = by_l.get(l) {
            for t in tops {
                cells.extend(collapse_closure(t));
            }
        }
    }
    Ok(cells.into_iter().collect())
}

/// The ascending filtration piece: closures of all parts with initial
/// branching number at most `k`.
pub fn filtration(sigma: &NrSequence, k: usize) -> Result<Vec<BWTree>> {
    let decomp = decomposition(sigma)?;
    let mut cells: BTreeSet<BWTree> = BTreeSet::new();
    for (&q, by_l) in &decomp.pieces {
        if q <= k {
            for tops in by_l.values() {
                for t in tops {
                    cells.extend(collapse_closure(t));
                }
            }
        }
    }
    Ok(cells.into_iter().collect())
}

/// The face/top-cell correspondence: pairs (face tree of the smaller
/// permutahedron, top tree of the larger one) related by regrafting the
/// branches onto the first letter of `sigma`.
pub fn face_top_pairs(sigma: &NrSequence) -> Result<Vec<(BWTree, BWTree)>> {
    let n = sigma.len();
    if n < 2 {
        return Err(Error::InvalidSequence("face/top map needs length >= 2".into()));
    }
    let first = sigma.letters()[0];
    let rest = sigma.remove_first()?;
    let mut pairs = Vec::new();
    for parts in crate::seq::compositions(n - 1) {
        let unshuffle_list = crate::seq::unshuffles(&rest, &parts)?;
        for l in unshuffle_list {
            let factor_sets: Vec<Vec<BWTree>> = l
                .blocks()
                .iter()
                .map(|b| t_sigma(b, Some(b.len() - 1)))
                .collect::<Result<Vec<_>>>()?;
            for combo in cartesian(&factor_sets) {
                let face = b_plus_black(&combo)?;
                let top = b_plus_s(first, &combo)?;
                pairs.push((face, top));
            }
        }
    }
    Ok(pairs)
}
