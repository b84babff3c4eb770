//! The two cell complexes: the permutahedral gluing indexed by the unshuffle
//! poset, and the cactus complex indexed by black/white trees.  Cells carry
//! string encodings; boundaries are kept both as incidence lists with
//! multiplicity and as GF(2) matrices.

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::homology::boundary_squares_to_zero_gf2;
use crate::poset::FinitePoset;
use crate::seq::{build_j_n, unshuffles, NrSequence, Unshuffle};
use crate::snf::IntMatrix;
use crate::tree::{
    b_plus_black, cartesian, collapses, enumerate_trees, t_sigma, t_sigma_l_cells, BWTree,
};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// A finite regular-CW-style complex: graded cells with string encodings,
/// boundary incidences with multiplicity, mod-2 boundary matrices, and the
/// face poset on the full cell set.
#[derive(Debug, Clone)]
pub struct CellComplex {
    name: String,
    cells: Vec<Vec<String>>,
    /// incidence[d][j] lists (index in dimension d-1, multiplicity); the
    /// degree-0 layer has no entries.
    incidence: Vec<Vec<Vec<(usize, usize)>>>,
    boundary2: Vec<Gf2Matrix>,
    face_poset: FinitePoset,
    offsets: Vec<usize>,
}

impl CellComplex {
    fn build(
        name: String,
        cells: Vec<Vec<String>>,
        incidence: Vec<Vec<Vec<(usize, usize)>>>,
        face_poset: FinitePoset,
    ) -> Self {
        let mut boundary2 = Vec::new();
        for d in 0..cells.len() {
            let rows = if d == 0 { 0 } else { cells[d - 1].len() };
            let mut m = Gf2Matrix::zeros(rows, cells[d].len());
            if d > 0 {
                for (j, faces) in incidence[d].iter().enumerate() {
                    for &(i, mult) in faces {
                        if mult % 2 == 1 {
                            m.flip(i, j);
                        }
                    }
                }
            }
            boundary2.push(m);
        }
        let mut offsets = vec![0];
        for layer in &cells {
            offsets.push(offsets.last().unwrap() + layer.len());
        }
        CellComplex { name, cells, incidence, boundary2, face_poset, offsets }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(|layer| layer.len()).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.offsets[self.cells.len()]
    }

    pub fn cells(&self, d: usize) -> &[String] {
        &self.cells[d]
    }

    pub fn incidence(&self, d: usize, j: usize) -> &[(usize, usize)] {
        &self.incidence[d][j]
    }

    pub fn boundary2(&self) -> &[Gf2Matrix] {
        &self.boundary2
    }

    pub fn face_poset(&self) -> &FinitePoset {
        &self.face_poset
    }

    /// Flat index of cell `j` of dimension `d` in the face poset.
    pub fn global_index(&self, d: usize, j: usize) -> usize {
        self.offsets[d] + j
    }

    pub fn locate(&self, g: usize) -> (usize, usize) {
        let d = self.offsets.iter().rposition(|&o| o <= g).unwrap().min(self.cells.len() - 1);
        (d, g - self.offsets[d])
    }

    pub fn euler_characteristic(&self) -> i64 {
        crate::homology::euler_characteristic(&self.f_vector())
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        boundary_squares_to_zero_gf2(&self.boundary2)
    }

    /// Regularity: every incidence multiplicity is 1 and the faces of each
    /// cell are exactly the cells it covers in the face poset.  Returns the
    /// encodings of offending cells.
    pub fn regularity_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for d in 1..self.cells.len() {
            for j in 0..self.cells[d].len() {
                let faces = &self.incidence[d][j];
                let mut listed: Vec<usize> =
                    faces.iter().map(|&(i, _)| self.global_index(d - 1, i)).collect();
                listed.sort_unstable();
                let mut covered = self.face_poset.covered_by(self.global_index(d, j));
                covered.sort_unstable();
                if faces.iter().any(|&(_, m)| m != 1) || listed != covered {
                    bad.push(self.cells[d][j].clone());
                }
            }
        }
        bad
    }

    pub fn to_json(&self) -> ComplexJson {
        let mut cells = Vec::new();
        for (d, layer) in self.cells.iter().enumerate() {
            for (j, enc) in layer.iter().enumerate() {
                cells.push(CellJson {
                    id: self.global_index(d, j),
                    dim: d,
                    encoding: enc.clone(),
                });
            }
        }
        let mut boundary = Vec::new();
        for d in 1..self.cells.len() {
            for (j, faces) in self.incidence[d].iter().enumerate() {
                for &(i, mult) in faces {
                    boundary.push([
                        self.global_index(d, j),
                        self.global_index(d - 1, i),
                        mult,
                    ]);
                }
            }
        }
        ComplexJson {
            name: self.name.clone(),
            f_vector: self.f_vector(),
            cells,
            boundary,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexJson {
    pub name: String,
    pub f_vector: Vec<usize>,
    pub cells: Vec<CellJson>,
    /// Sparse triplets (cell id, face id, multiplicity).
    pub boundary: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellJson {
    pub id: usize,
    pub dim: usize,
    pub encoding: String,
}

/// The complex glued from n! permutahedra: one cell per element of the
/// global unshuffle poset, graded by degree.  Boundary of l1|...|lk is the
/// sum of all single-block two-part refinements.
pub fn build_milgram(n: u32) -> Result<CellComplex> {
    if n == 0 || n > 5 {
        return Err(Error::Unsupported(format!("permutahedral complex needs 1 <= n <= 5, got {n}")));
    }
    let jp = build_j_n(n)?;
    let top = n as usize - 1;
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut layer_of: Vec<(usize, usize)> = Vec::with_capacity(jp.elements.len());
    for u in &jp.elements {
        let d = u.degree();
        layer_of.push((d, cells[d].len()));
        cells[d].push(u.to_string());
    }
    let lookup: Vec<HashMap<&str, usize>> = cells
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
        .collect();
    let mut incidence: Vec<Vec<Vec<(usize, usize)>>> =
        cells.iter().map(|layer| vec![Vec::new(); layer.len()]).collect();
    for u in &jp.elements {
        let d = u.degree();
        if d == 0 {
            continue;
        }
        let j = lookup[d][u.to_string().as_str()];
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for (bi, block) in u.blocks().iter().enumerate() {
            for p in 1..block.len() {
                for split in unshuffles(block, &[p, block.len() - p])? {
                    let mut blocks: Vec<NrSequence> = u.blocks().to_vec();
                    blocks.splice(bi..bi + 1, split.blocks().iter().cloned());
                    let refined = Unshuffle::new(blocks)?;
                    let i = lookup[d - 1][refined.to_string().as_str()];
                    *counts.entry(i).or_insert(0) += 1;
                }
            }
        }
        incidence[d][j] = counts.into_iter().collect();
    }
    // reuse the already-computed order on J(n), re-indexed dimension-major
    let mut offsets = vec![0usize; top + 2];
    for (d, layer) in cells.iter().enumerate() {
        offsets[d + 1] = offsets[d] + layer.len();
    }
    let remap: Vec<usize> = layer_of.iter().map(|&(d, j)| offsets[d] + j).collect();
    let covers = jp
        .poset
        .covers()
        .iter()
        .map(|&(l, u)| (remap[l], remap[u]))
        .collect();
    let mut grade = vec![0usize; jp.elements.len()];
    for (old, &(d, _)) in layer_of.iter().enumerate() {
        grade[remap[old]] = d;
    }
    let face_poset = FinitePoset::from_covers(jp.elements.len(), grade, covers)?;
    Ok(CellComplex::build(format!("milgram-{n}"), cells, incidence, face_poset))
}

/// The cactus complex: one cell per black/white tree on labels 1..n, graded
/// by degree, with boundary given by angle collapses counted with
/// multiplicity.
pub fn build_cact(n: u32) -> Result<CellComplex> {
    if n == 0 || n > 5 {
        return Err(Error::Unsupported(format!("cactus complex needs 1 <= n <= 5, got {n}")));
    }
    let labels: Vec<u32> = (1..=n).collect();
    let trees = enumerate_trees(&labels)?;
    let top = trees.iter().map(|t| t.degree()).max().unwrap();
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut by_layer: Vec<Vec<&BWTree>> = vec![Vec::new(); top + 1];
    for t in &trees {
        cells[t.degree()].push(t.encode());
        by_layer[t.degree()].push(t);
    }
    let lookup: Vec<HashMap<&str, usize>> = cells
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
        .collect();
    let mut incidence: Vec<Vec<Vec<(usize, usize)>>> =
        cells.iter().map(|layer| vec![Vec::new(); layer.len()]).collect();
    let mut covers = Vec::new();
    let mut offsets = vec![0usize; top + 2];
    for (d, layer) in cells.iter().enumerate() {
        offsets[d + 1] = offsets[d] + layer.len();
    }
    for d in 1..=top {
        for (j, t) in by_layer[d].iter().enumerate() {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for f in collapses(t) {
                let i = lookup[d - 1][f.encode().as_str()];
                *counts.entry(i).or_insert(0) += 1;
            }
            for (&i, _) in &counts {
                covers.push((offsets[d - 1] + i, offsets[d] + j));
            }
            incidence[d][j] = counts.into_iter().collect();
        }
    }
    let mut grade = Vec::new();
    for (d, layer) in cells.iter().enumerate() {
        grade.extend(std::iter::repeat(d).take(layer.len()));
    }
    let face_poset = FinitePoset::from_covers(grade.len(), grade, covers)?;
    Ok(CellComplex::build(format!("cact-{n}"), cells, incidence, face_poset))
}

/// For each permutation sigma, the cells of the cactus complex lying in its
/// permutahedral copy.
#[derive(Debug, Clone)]
pub struct PermutahedralCover {
    pub n: u32,
    pub per_sigma: Vec<(NrSequence, Vec<String>)>,
}

pub fn permutahedral_cover(n: u32) -> Result<PermutahedralCover> {
    if n == 0 || n > 5 {
        return Err(Error::Unsupported(format!("cover needs 1 <= n <= 5, got {n}")));
    }
    let letters: Vec<u32> = (1..=n).collect();
    let mut per_sigma = Vec::new();
    for perm in crate::seq::permutations(letters) {
        let sigma = NrSequence::new(perm)?;
        let cells = t_sigma(&sigma, None)?.iter().map(|t| t.encode()).collect();
        per_sigma.push((sigma, cells));
    }
    Ok(PermutahedralCover { n, per_sigma })
}

impl PermutahedralCover {
    /// Cells of the complex missing from every permutahedral copy.
    pub fn uncovered(&self, cx: &CellComplex) -> Vec<String> {
        let mut all: std::collections::BTreeSet<&str> = std::collections::BTreeSet::new();
        for (_, cells) in &self.per_sigma {
            all.extend(cells.iter().map(|s| s.as_str()));
        }
        (0..=cx.dim())
            .flat_map(|d| cx.cells(d).iter())
            .filter(|enc| !all.contains(enc.as_str()))
            .cloned()
            .collect()
    }

    /// For each sigma, the copies containing its caterpillar cell; regular
    /// gluing demands each caterpillar stays private to its own copy.
    pub fn caterpillar_memberships(&self) -> Vec<(String, Vec<String>)> {
        let mut out = Vec::new();
        for (sigma, _) in &self.per_sigma {
            let cat = BWTree::caterpillar(sigma).encode();
            let homes: Vec<String> = self
                .per_sigma
                .iter()
                .filter(|(_, cells)| cells.iter().any(|c| c == &cat))
                .map(|(nu, _)| nu.to_string())
                .collect();
            out.push((sigma.to_string(), homes));
        }
        out
    }
}

/// Simplicial complex stored as per-dimension lists of ascending vertex
/// tuples, closed under faces.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|layer| layer.len()).collect()
    }

    /// Signed boundary matrices; entry d maps d-simplices to (d-1)-simplices.
    pub fn boundaries(&self) -> Vec<IntMatrix> {
        let lookup: Vec<HashMap<&[usize], usize>> = self
            .simplices
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
            .collect();
        let mut out = vec![IntMatrix::zeros(0, self.simplices[0].len())];
        for d in 1..self.simplices.len() {
            let mut m = IntMatrix::zeros(self.simplices[d - 1].len(), self.simplices[d].len());
            for (j, s) in self.simplices[d].iter().enumerate() {
                let mut sign = 1i128;
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    let i = lookup[d - 1][face.as_slice()];
                    m.set(i, j, m.get(i, j) + sign);
                    sign = -sign;
                }
            }
            out.push(m);
        }
        out
    }

    pub fn integral_homology(&self) -> Result<crate::homology::HomologySummary> {
        crate::homology::integral_homology(&self.f_vector(), &self.boundaries())
    }
}

/// The order complex of a poset: vertices are elements, d-simplices are
/// strict chains of d+1 elements.
pub fn order_complex(p: &FinitePoset) -> SimplicialComplex {
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::new();
    for chain in p.chains() {
        let mut s = chain;
        s.sort_unstable();
        let d = s.len() - 1;
        if layers.len() <= d {
            layers.resize(d + 1, Vec::new());
        }
        layers[d].push(s);
    }
    for layer in &mut layers {
        layer.sort_unstable();
        layer.dedup();
    }
    SimplicialComplex { simplices: layers }
}

/// The cellular chain map from the permutahedral complex to the cactus
/// complex: a cell l1|...|lk goes to the sum over tuples of top trees on the
/// individual blocks of their black-root merge.
pub fn chain_map_i(milgram: &CellComplex, cact: &CellComplex) -> Result<Vec<Gf2Matrix>> {
    assert_eq!(milgram.dim(), cact.dim());
    let mut maps = Vec::new();
    for d in 0..=milgram.dim() {
        let mut m = Gf2Matrix::zeros(cact.cells(d).len(), milgram.cells(d).len());
        let lookup: HashMap<&str, usize> = cact
            .cells(d)
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        for (j, enc) in milgram.cells(d).iter().enumerate() {
            let u = Unshuffle::parse(enc)?;
            let block_tops: Vec<Vec<BWTree>> = u
                .blocks()
                .iter()
                .map(|b| t_sigma(b, Some(b.len() - 1)))
                .collect::<Result<Vec<_>>>()?;
            for forest in cartesian(&block_tops) {
                let tree = b_plus_black(&forest)?;
                debug_assert_eq!(tree.degree(), d);
                let i = lookup[tree.encode().as_str()];
                m.flip(i, j);
            }
        }
        maps.push(m);
    }
    Ok(maps)
}

/// Faces of the m-permutahedron counted by dimension: ordered set partitions
/// of m letters into m-d blocks.
pub fn permutahedron_f_vector(m: usize) -> Vec<usize> {
    // count[d] = S(m, m-d) * (m-d)! via ordered-partition recursion
    let mut stirling = vec![vec![0u128; m + 1]; m + 1];
    stirling[0][0] = 1;
    for i in 1..=m {
        for k in 1..=i {
            stirling[i][k] = stirling[i - 1][k - 1] + k as u128 * stirling[i - 1][k];
        }
    }
    let mut fact = vec![1u128; m + 1];
    for k in 1..=m {
        fact[k] = fact[k - 1] * k as u128;
    }
    (0..m).map(|d| (stirling[m][m - d] * fact[m - d]) as usize).collect()
}

/// Faces of the k-simplex by dimension, the simplex itself included.
pub fn simplex_f_vector(k: usize) -> Vec<usize> {
    let mut binom = vec![0u128; k + 2];
    binom[0] = 1;
    for i in 1..=k + 1 {
        for j in (1..=i).rev() {
            binom[j] += binom[j - 1];
        }
    }
    (0..=k).map(|d| binom[d + 1] as usize).collect()
}

pub fn product_f_vector(factors: &[Vec<usize>]) -> Vec<usize> {
    let mut acc = vec![1usize];
    for f in factors {
        let mut next = vec![0usize; acc.len() + f.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in f.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// Graded cell count of one permutahedral copy in its cactus subdivision;
/// independent of the chosen total order.
pub fn subdivided_pn_f_vector(m: usize) -> Result<Vec<usize>> {
    let mut out = vec![0usize; m];
    for t in t_sigma(&NrSequence::identity(m as u32), None)? {
        out[t.degree()] += 1;
    }
    Ok(out)
}

/// Compares the graded cell count of the closed decomposition piece for
/// (sigma, l) with the product formula P_{m1} x ... x P_{mk} x simplex^k,
/// each permutahedron factor carrying its cactus subdivision.  Returns
/// (actual, predicted).
pub fn celleq_f_vectors(sigma: &NrSequence, l: &Unshuffle) -> Result<(Vec<usize>, Vec<usize>)> {
    let cells = t_sigma_l_cells(sigma, l)?;
    let top = sigma.len() - 1;
    let mut actual = vec![0usize; top + 1];
    for t in &cells {
        actual[t.degree()] += 1;
    }
    let mut factors: Vec<Vec<usize>> = l
        .blocks()
        .iter()
        .map(|b| subdivided_pn_f_vector(b.len()))
        .collect::<Result<Vec<_>>>()?;
    factors.push(simplex_f_vector(l.blocks().len()));
    let mut predicted = product_f_vector(&factors);
    predicted.resize(top + 1, 0);
    Ok((actual, predicted))
}
