//! Exact rational geometry of the permutahedron, its faces, and the cactus
//! cells that subdivide it.  Every computation stays in BigRational; volumes
//! are taken in the chart that drops the last coordinate (the points all lie
//! in the hyperplane of constant coordinate sum, so this chart is affine and
//! a common scale for every volume comparison).

use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};
use crate::seq::{build_j_sigma, permutations, unshuffles, NrSequence, Unshuffle};
use crate::tree::{collapse_closure, collapses, compatible, t_sigma, BWTree};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn coordinate_sum(&self) -> BigRational {
        self.coords.iter().sum()
    }

    /// The affine chart dropping the last coordinate.
    pub fn chart(&self) -> Vec<BigRational> {
        self.coords[..self.coords.len() - 1].to_vec()
    }

    pub fn squared_distance(&self, other: &RationalPoint) -> BigRational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .sum()
    }
}

fn int(v: usize) -> BigRational {
    BigRational::from(BigInt::from(v))
}

/// The vertex of a non-repeating sequence: coordinate j holds the 1-based
/// position of the j-th smallest letter.  For a permutation of 1..n this is
/// the inverse-permutation vector.
pub fn vertex(phi: &NrSequence) -> RationalPoint {
    let mut letters: Vec<u32> = phi.letters().to_vec();
    letters.sort_unstable();
    RationalPoint {
        coords: letters
            .iter()
            .map(|&l| int(phi.position(l).unwrap() + 1))
            .collect(),
    }
}

/// Rank of a rational matrix by Gaussian elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                for k in c..cols {
                    let d = &rows[rank][k] * &f;
                    rows[r][k] -= d;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                for k in c..n {
                    let d = &m[c][k] * &f;
                    m[r][k] -= d;
                }
            }
        }
    }
    det
}

#[derive(Debug, Clone)]
pub struct FaceRealization {
    pub vertices: Vec<(NrSequence, RationalPoint)>,
    pub affine_dim: usize,
}

/// Degree-0 refinements of an unshuffle: each block permuted freely, blocks
/// concatenated in order.
pub fn face_vertex_sequences(a: &Unshuffle) -> Vec<NrSequence> {
    let per_block: Vec<Vec<Vec<u32>>> = a
        .blocks()
        .iter()
        .map(|b| permutations(b.letters().to_vec()))
        .collect();
    let mut out = Vec::new();
    for combo in crate::tree::cartesian(&per_block) {
        let letters: Vec<u32> = combo.into_iter().flatten().collect();
        out.push(NrSequence::new(letters).expect("blocks disjoint"));
    }
    out.sort_by(|x, y| x.letters().cmp(y.letters()));
    out
}

/// Convex realization of a face of the permutahedron.
pub fn realize_face(a: &Unshuffle) -> FaceRealization {
    let vertices: Vec<(NrSequence, RationalPoint)> = face_vertex_sequences(a)
        .into_iter()
        .map(|s| {
            let v = vertex(&s);
            (s, v)
        })
        .collect();
    let base = &vertices[0].1;
    let diffs: Vec<Vec<BigRational>> = vertices[1..]
        .iter()
        .map(|(_, p)| {
            p.coords
                .iter()
                .zip(&base.coords)
                .map(|(x, y)| x - y)
                .collect()
        })
        .collect();
    let affine_dim = rational_rank(diffs);
    FaceRealization { vertices, affine_dim }
}

fn corolla_sequence(t: &BWTree) -> NrSequence {
    debug_assert_eq!(t.degree(), 0);
    NrSequence::new(t.root.whites.iter().map(|w| w.label).collect()).expect("labels distinct")
}

/// Degree-0 members of the collapse closure, as sequences.
pub fn cact_cell_vertex_sequences(tau: &BWTree) -> Vec<NrSequence> {
    let mut out: Vec<NrSequence> = collapse_closure(tau)
        .iter()
        .filter(|t| t.degree() == 0)
        .map(corolla_sequence)
        .collect();
    out.sort_by(|x, y| x.letters().cmp(y.letters()));
    out
}

/// Convex realization of a cactus cell inside the permutahedral copy of
/// `sigma`; rejects trees outside that copy.
pub fn realize_cact_cell(tau: &BWTree, sigma: &NrSequence) -> Result<Vec<(NrSequence, RationalPoint)>> {
    if !compatible(tau, sigma)? {
        return Err(Error::InvalidTree(format!(
            "tree {} is not a cell of the copy of {}",
            tau.encode(),
            sigma
        )));
    }
    Ok(cact_cell_vertex_sequences(tau)
        .into_iter()
        .map(|s| {
            let v = vertex(&s);
            (s, v)
        })
        .collect())
}

type Triangulation = Vec<Vec<NrSequence>>;

/// Pulling triangulation of a permutahedron face: cone the least vertex over
/// the recursively triangulated facets that miss it.
pub fn triangulate_face(a: &Unshuffle) -> Result<Triangulation> {
    let mut memo = HashMap::new();
    triangulate_face_memo(a, &mut memo)
}

fn face_facets(a: &Unshuffle) -> Result<Vec<Unshuffle>> {
    let mut out = BTreeMap::new();
    for (bi, block) in a.blocks().iter().enumerate() {
        for p in 1..block.len() {
            for split in unshuffles(block, &[p, block.len() - p])? {
                let mut blocks: Vec<NrSequence> = a.blocks().to_vec();
                blocks.splice(bi..bi + 1, split.blocks().iter().cloned());
                let refined = Unshuffle::new(blocks)?;
                out.insert(refined.to_string(), refined);
            }
        }
    }
    Ok(out.into_values().collect())
}

fn triangulate_face_memo(
    a: &Unshuffle,
    memo: &mut HashMap<String, Triangulation>,
) -> Result<Triangulation> {
    let key = a.to_string();
    if let Some(t) = memo.get(&key) {
        return Ok(t.clone());
    }
    let verts = face_vertex_sequences(a);
    let result = if a.degree() == 0 {
        vec![vec![verts[0].clone()]]
    } else {
        let base = verts[0].clone();
        let mut simplices = Vec::new();
        for facet in face_facets(a)? {
            let fverts = face_vertex_sequences(&facet);
            if fverts.contains(&base) {
                continue;
            }
            for s in triangulate_face_memo(&facet, memo)? {
                let mut s = s;
                s.push(base.clone());
                simplices.push(s);
            }
        }
        simplices
    };
    memo.insert(key, result.clone());
    Ok(result)
}

/// Pulling triangulation of a cactus cell over its collapse facets.
pub fn triangulate_cact_cell(tau: &BWTree) -> Triangulation {
    let mut memo = HashMap::new();
    triangulate_cact_memo(tau, &mut memo)
}

fn cell_facets(tau: &BWTree) -> Vec<BWTree> {
    let mut out: BTreeMap<String, BWTree> = BTreeMap::new();
    for f in collapses(tau) {
        out.insert(f.encode(), f);
    }
    out.into_values().collect()
}

fn triangulate_cact_memo(tau: &BWTree, memo: &mut HashMap<String, Triangulation>) -> Triangulation {
    let key = tau.encode();
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let verts = cact_cell_vertex_sequences(tau);
    let result = if tau.degree() == 0 {
        vec![vec![verts[0].clone()]]
    } else {
        let base = verts[0].clone();
        let mut simplices = Vec::new();
        for facet in cell_facets(tau) {
            let fverts = cact_cell_vertex_sequences(&facet);
            if fverts.contains(&base) {
                continue;
            }
            for s in triangulate_cact_memo(&facet, memo) {
                let mut s = s;
                s.push(base.clone());
                simplices.push(s);
            }
        }
        simplices
    };
    memo.insert(key, result.clone());
    result
}

/// Total chart volume of full-dimensional simplices given by their vertex
/// sequences; each simplex must have n vertices for ambient dimension n.
pub fn simplices_volume(simplices: &[Vec<NrSequence>]) -> BigRational {
    let mut total = BigRational::zero();
    for s in simplices {
        let pts: Vec<Vec<BigRational>> = s.iter().map(|q| vertex(q).chart()).collect();
        let d = pts.len() - 1;
        let mat: Vec<Vec<BigRational>> = (1..=d)
            .map(|i| {
                pts[i]
                    .iter()
                    .zip(&pts[0])
                    .map(|(x, y)| x - y)
                    .collect()
            })
            .collect();
        let mut fact = BigRational::one();
        for k in 2..=d {
            fact *= int(k);
        }
        total += determinant(mat).abs() / fact;
    }
    total
}

/// Exact chart volume of the whole permutahedron.
pub fn pn_volume(n: u32) -> Result<BigRational> {
    let full = Unshuffle::from_sequence(NrSequence::identity(n));
    Ok(simplices_volume(&triangulate_face(&full)?))
}

pub fn cact_cell_volume(tau: &BWTree) -> BigRational {
    simplices_volume(&triangulate_cact_cell(tau))
}

/// Inward facet inequalities a.x <= b of a full-dimensional cell in the
/// chart, one per combinatorial facet.
fn cell_inequalities(tau: &BWTree) -> Result<Vec<(Vec<BigRational>, BigRational)>> {
    let cell_verts: Vec<Vec<BigRational>> = cact_cell_vertex_sequences(tau)
        .iter()
        .map(|s| vertex(s).chart())
        .collect();
    let dim = cell_verts[0].len();
    let mut out = Vec::new();
    for facet in cell_facets(tau) {
        let pts: Vec<Vec<BigRational>> = cact_cell_vertex_sequences(&facet)
            .iter()
            .map(|s| vertex(s).chart())
            .collect();
        // solve a.x + c = 0 for all facet points; nullspace must be a line
        let rows: Vec<Vec<BigRational>> = pts
            .iter()
            .map(|p| {
                let mut r = p.clone();
                r.push(BigRational::one());
                r
            })
            .collect();
        let (a, c) = hyperplane_from(rows, dim)?;
        // orient inward using any cell vertex off the hyperplane
        let mut oriented = None;
        for w in &cell_verts {
            let val: BigRational =
                w.iter().zip(&a).map(|(x, y)| x * y).sum::<BigRational>() + &c;
            if val.is_negative() {
                oriented = Some((a.clone(), -c.clone()));
                break;
            }
            if val.is_positive() {
                let neg: Vec<BigRational> = a.iter().map(|x| -x).collect();
                oriented = Some((neg, c.clone()));
                break;
            }
        }
        out.push(oriented.ok_or_else(|| {
            Error::Unsupported(format!("degenerate facet on cell {}", tau.encode()))
        })?);
    }
    Ok(out)
}

fn hyperplane_from(mut rows: Vec<Vec<BigRational>>, dim: usize) -> Result<(Vec<BigRational>, BigRational)> {
    // row-reduce and read one nullspace vector for the dim+1 unknowns
    let cols = dim + 1;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                for k in 0..cols {
                    let d = &rows[rank][k] * &f;
                    rows[r][k] -= d;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rank != dim {
        return Err(Error::Unsupported(format!(
            "facet affine hull has codimension {} instead of 1",
            cols - rank
        )));
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).unwrap();
    let mut sol = vec![BigRational::zero(); cols];
    sol[free] = BigRational::one();
    for (ri, &pc) in pivots.iter().enumerate() {
        sol[pc] = -&rows[ri][free] / &rows[ri][pc];
    }
    let c = sol.pop().unwrap();
    Ok((sol, c))
}

/// True iff the two cells have disjoint interiors: the best common slack of
/// their inward inequalities is non-positive.
pub fn interiors_disjoint(tau1: &BWTree, tau2: &BWTree) -> Result<bool> {
    let mut ineqs = cell_inequalities(tau1)?;
    ineqs.extend(cell_inequalities(tau2)?);
    let dim = ineqs[0].0.len();
    let mut a_rows = Vec::new();
    let mut b_vals = Vec::new();
    for (a, b) in ineqs {
        let mut row = a;
        row.push(BigRational::one()); // slack variable t
        a_rows.push(row);
        b_vals.push(b);
    }
    let mut cap = vec![BigRational::zero(); dim + 1];
    cap[dim] = BigRational::one();
    a_rows.push(cap.clone());
    b_vals.push(BigRational::one());
    match maximize(&a_rows, &b_vals, &cap)? {
        LpOutcome::Optimal { value, .. } => Ok(!value.is_positive()),
        LpOutcome::Infeasible => Ok(true),
        LpOutcome::Unbounded => Err(Error::Unsupported("unbounded slack program".into())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubdivisionReport {
    pub sigma: String,
    pub cell_volumes: Vec<(String, String)>,
    pub total_volume: String,
    pub pn_volume: String,
    pub volumes_partition: bool,
    pub interiors_disjoint: bool,
}

/// Exact volume partition and interior disjointness of the top cactus cells
/// inside the permutahedral copy of `sigma`.
pub fn subdivision_volume_check(sigma: &NrSequence) -> Result<SubdivisionReport> {
    let n = sigma.len() as u32;
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(format!("volume check needs 2 <= n <= 4, got {n}")));
    }
    let tops = t_sigma(sigma, Some(n as usize - 1))?;
    let mut cell_volumes = Vec::new();
    let mut total = BigRational::zero();
    for t in &tops {
        let v = cact_cell_volume(t);
        total += &v;
        cell_volumes.push((t.encode(), v.to_string()));
    }
    let pn = pn_volume(n)?;
    let mut disjoint = true;
    for i in 0..tops.len() {
        for j in i + 1..tops.len() {
            if !interiors_disjoint(&tops[i], &tops[j])? {
                disjoint = false;
            }
        }
    }
    Ok(SubdivisionReport {
        sigma: sigma.to_string(),
        volumes_partition: total == pn,
        total_volume: total.to_string(),
        pn_volume: pn.to_string(),
        cell_volumes,
        interiors_disjoint: disjoint,
    })
}

/// Geometric verification of the face lattice of one permutahedral copy:
/// vertex supports from minimizing functionals, affine dimensions, inclusion
/// order, hyperplane membership, and edge lengths.  Returns human-readable
/// violations, empty on success.
pub fn face_lattice_violations(sigma: &NrSequence) -> Result<Vec<String>> {
    let n = sigma.len();
    let jp = build_j_sigma(sigma)?;
    let mut bad = Vec::new();
    let all_vertices: Vec<NrSequence> = permutations(sigma.letters().to_vec())
        .into_iter()
        .map(|l| NrSequence::new(l).unwrap())
        .collect();
    let target_sum = int(n * (n + 1) / 2);
    for s in &all_vertices {
        if vertex(s).coordinate_sum() != target_sum {
            bad.push(format!("vertex {s} off the hyperplane"));
        }
    }
    let mut vertex_sets: Vec<BTreeSet<Vec<u32>>> = Vec::new();
    for a in &jp.elements {
        let real = realize_face(a);
        if real.affine_dim != a.degree() {
            bad.push(format!("face {a}: affine dim {} != degree {}", real.affine_dim, a.degree()));
        }
        // support functional: letters of earlier blocks get smaller weights
        let mut weight: BTreeMap<u32, i64> = BTreeMap::new();
        let k = a.blocks().len() as i64;
        for (bi, block) in a.blocks().iter().enumerate() {
            for &l in block.letters() {
                // decreasing weights: earlier blocks pull toward earlier
                // positions when the weighted position sum is minimized
                weight.insert(l, k - bi as i64);
            }
        }
        let score = |s: &NrSequence| -> i64 {
            s.letters()
                .iter()
                .enumerate()
                .map(|(pos, l)| weight[l] * (pos as i64 + 1))
                .sum()
        };
        let best = all_vertices.iter().map(&score).min().unwrap();
        let support: BTreeSet<Vec<u32>> = all_vertices
            .iter()
            .filter(|s| score(s) == best)
            .map(|s| s.letters().to_vec())
            .collect();
        let actual: BTreeSet<Vec<u32>> =
            real.vertices.iter().map(|(s, _)| s.letters().to_vec()).collect();
        if support != actual {
            bad.push(format!("face {a}: support set does not match its vertex set"));
        }
        if a.degree() == 1 {
            let pts: Vec<RationalPoint> =
                real.vertices.iter().map(|(_, p)| p.clone()).collect();
            if pts.len() != 2 || pts[0].squared_distance(&pts[1]) != int(2) {
                bad.push(format!("edge {a}: wrong vertex count or squared length"));
            }
        }
        vertex_sets.push(actual);
    }
    for i in 0..jp.elements.len() {
        for j in 0..jp.elements.len() {
            let inc = vertex_sets[i].is_subset(&vertex_sets[j]);
            if inc != jp.poset.leq(i, j) {
                bad.push(format!(
                    "inclusion mismatch between {} and {}",
                    jp.elements[i], jp.elements[j]
                ));
            }
        }
    }
    Ok(bad)
}

fn fmt_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        v.to_string()
    }
}

fn off_coords(p: &RationalPoint, n: usize) -> Vec<String> {
    // always three numbers: pad low dimensions, chart down n = 4
    let coords = if n == 4 { p.chart() } else { p.coords.clone() };
    let mut out: Vec<String> = coords.iter().map(fmt_rational).collect();
    while out.len() < 3 {
        out.push("0".into());
    }
    out
}

fn polygon_cycle(vertex_ids: &[usize], edges: &[(usize, usize)]) -> Vec<usize> {
    if vertex_ids.len() <= 2 {
        return vertex_ids.to_vec();
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(x, y) in edges {
        adj.entry(x).or_default().push(y);
        adj.entry(y).or_default().push(x);
    }
    for nb in adj.values_mut() {
        nb.sort_unstable();
    }
    let start = *vertex_ids.iter().min().unwrap();
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = *adj[&cur].iter().find(|&&v| v != prev).unwrap();
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}

/// OFF file for the permutahedron itself: its vertices and polygonal
/// 2-faces.
pub fn export_off_pn(n: u32) -> Result<String> {
    if n == 0 || n > 4 {
        return Err(Error::Unsupported(format!("OFF export needs 1 <= n <= 4, got {n}")));
    }
    let sigma = NrSequence::identity(n);
    let jp = build_j_sigma(&sigma)?;
    let verts: Vec<NrSequence> = permutations(sigma.letters().to_vec())
        .into_iter()
        .map(|l| NrSequence::new(l).unwrap())
        .collect();
    let ids: HashMap<Vec<u32>, usize> = verts
        .iter()
        .enumerate()
        .map(|(i, s)| (s.letters().to_vec(), i))
        .collect();
    let mut edges = Vec::new();
    let mut polys = Vec::new();
    for a in &jp.elements {
        let vs: Vec<usize> = face_vertex_sequences(a)
            .iter()
            .map(|s| ids[s.letters()])
            .collect();
        match a.degree() {
            1 => edges.push((vs[0], vs[1])),
            2 => polys.push(a.clone()),
            _ => {}
        }
    }
    let mut faces: Vec<Vec<usize>> = Vec::new();
    if n == 2 {
        faces.push(vec![0, 1]);
    }
    for a in &polys {
        let vs: Vec<usize> = face_vertex_sequences(a)
            .iter()
            .map(|s| ids[s.letters()])
            .collect();
        let sub_edges: Vec<(usize, usize)> = face_facets(a)?
            .iter()
            .flat_map(|e| {
                let ev: Vec<usize> =
                    face_vertex_sequences(e).iter().map(|s| ids[s.letters()]).collect();
                ev.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()
            })
            .collect();
        faces.push(polygon_cycle(&vs, &sub_edges));
    }
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} {}\n", verts.len(), faces.len(), edges.len()));
    for s in &verts {
        out.push_str(&off_coords(&vertex(s), n as usize).join(" "));
        out.push('\n');
    }
    for f in &faces {
        let mut line = f.len().to_string();
        for v in f {
            line.push(' ');
            line.push_str(&v.to_string());
        }
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// OFF file for the cactus subdivision of the copy of `sigma`: all
/// permutahedron vertices plus the polygonal 2-faces of every top cell.
pub fn export_off_subdivision(sigma: &NrSequence) -> Result<String> {
    let n = sigma.len();
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(format!("OFF export needs 2 <= n <= 4, got {n}")));
    }
    let verts: Vec<NrSequence> = permutations(sigma.letters().to_vec())
        .into_iter()
        .map(|l| NrSequence::new(l).unwrap())
        .collect();
    let ids: HashMap<Vec<u32>, usize> = verts
        .iter()
        .enumerate()
        .map(|(i, s)| (s.letters().to_vec(), i))
        .collect();
    let tops = t_sigma(sigma, Some(n - 1))?;
    let mut polys: BTreeMap<String, BWTree> = BTreeMap::new();
    let mut edge_count: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in &tops {
        for f in collapse_closure(t) {
            if f.degree() == 2 || (n == 2 && f.degree() == 1) {
                polys.insert(f.encode(), f.clone());
            }
            if f.degree() == 1 {
                let vs: Vec<usize> = cact_cell_vertex_sequences(&f)
                    .iter()
                    .map(|s| ids[s.letters()])
                    .collect();
                edge_count.insert((vs[0].min(vs[1]), vs[0].max(vs[1])));
            }
        }
    }
    let mut faces = Vec::new();
    for t in polys.values() {
        let vs: Vec<usize> = cact_cell_vertex_sequences(t)
            .iter()
            .map(|s| ids[s.letters()])
            .collect();
        if t.degree() == 1 {
            faces.push(vs);
            continue;
        }
        let sub_edges: Vec<(usize, usize)> = cell_facets(t)
            .iter()
            .filter(|e| e.degree() == 1)
            .map(|e| {
                let ev: Vec<usize> = cact_cell_vertex_sequences(e)
                    .iter()
                    .map(|s| ids[s.letters()])
                    .collect();
                (ev[0], ev[1])
            })
            .collect();
        faces.push(polygon_cycle(&vs, &sub_edges));
    }
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} {}\n", verts.len(), faces.len(), edge_count.len()));
    for s in &verts {
        out.push_str(&off_coords(&vertex(s), n).join(" "));
        out.push('\n');
    }
    for f in &faces {
        let mut line = f.len().to_string();
        for v in f {
            line.push(' ');
            line.push_str(&v.to_string());
        }
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SubdivisionJson {
    pub sigma: String,
    pub n: usize,
    pub vertices: Vec<SubdivisionVertexJson>,
    pub cells: Vec<SubdivisionCellJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubdivisionVertexJson {
    pub id: usize,
    pub sequence: String,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubdivisionCellJson {
    pub encoding: String,
    pub vertex_ids: Vec<usize>,
    pub volume: String,
}

pub fn subdivision_json(sigma: &NrSequence) -> Result<SubdivisionJson> {
    let n = sigma.len();
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(format!("JSON export needs 2 <= n <= 4, got {n}")));
    }
    let verts: Vec<NrSequence> = permutations(sigma.letters().to_vec())
        .into_iter()
        .map(|l| NrSequence::new(l).unwrap())
        .collect();
    let ids: HashMap<Vec<u32>, usize> = verts
        .iter()
        .enumerate()
        .map(|(i, s)| (s.letters().to_vec(), i))
        .collect();
    let vertices = verts
        .iter()
        .enumerate()
        .map(|(i, s)| SubdivisionVertexJson {
            id: i,
            sequence: s.to_string(),
            coords: vertex(s).coords.iter().map(fmt_rational).collect(),
        })
        .collect();
    let mut cells = Vec::new();
    for t in t_sigma(sigma, Some(n - 1))? {
        cells.push(SubdivisionCellJson {
            encoding: t.encode(),
            vertex_ids: cact_cell_vertex_sequences(&t)
                .iter()
                .map(|s| ids[s.letters()])
                .collect(),
            volume: cact_cell_volume(&t).to_string(),
        });
    }
    Ok(SubdivisionJson { sigma: sigma.to_string(), n, vertices, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_examples() {
        let v = vertex(&NrSequence::parse("3241").unwrap());
        let want: Vec<BigRational> = [4, 2, 1, 3].iter().map(|&k| int(k)).collect();
        assert_eq!(v.coords, want);
        let id = vertex(&NrSequence::identity(4));
        let want: Vec<BigRational> = [1, 2, 3, 4].iter().map(|&k| int(k)).collect();
        assert_eq!(id.coords, want);
        assert_eq!(vertex(&NrSequence::parse("21").unwrap()).coords, vec![int(2), int(1)]);
    }

    #[test]
    fn realize_face_examples() {
        let full3 = Unshuffle::parse("123").unwrap();
        let r = realize_face(&full3);
        assert_eq!(r.vertices.len(), 6);
        assert_eq!(r.affine_dim, 2);
        let point = Unshuffle::parse("1|2|3").unwrap();
        assert_eq!(realize_face(&point).vertices.len(), 1);
        // product face of P4
        let prod = Unshuffle::parse("12|34").unwrap();
        let r = realize_face(&prod);
        assert_eq!(r.vertices.len(), 4);
        assert_eq!(r.affine_dim, 2);
    }

    #[test]
    fn cact_cell_vertices() {
        let sigma = NrSequence::parse("321").unwrap();
        let scc = BWTree::scc(&sigma);
        assert_eq!(realize_cact_cell(&scc, &sigma).unwrap().len(), 1);
        let cat = BWTree::caterpillar(&sigma);
        assert_eq!(realize_cact_cell(&cat, &sigma).unwrap().len(), 4);
        let cat4 = BWTree::caterpillar(&NrSequence::parse("4321").unwrap());
        assert_eq!(cact_cell_vertex_sequences(&cat4).len(), 8);
    }

    #[test]
    fn hexagon_volume() {
        // P3 in the chart: hexagon of area 9/2... fixed by the triangulation
        let v = pn_volume(3).unwrap();
        assert!(v.is_positive());
        // the segment P2 has chart length 1
        assert_eq!(pn_volume(2).unwrap(), int(1));
    }

    #[test]
    fn volume_partition_n3() {
        for s in ["123", "321", "213"] {
            let sigma = NrSequence::parse(s).unwrap();
            let report = subdivision_volume_check(&sigma).unwrap();
            assert!(report.volumes_partition, "{report:?}");
            assert!(report.interiors_disjoint, "{report:?}");
            assert_eq!(report.cell_volumes.len(), 3);
        }
    }

    #[test]
    fn face_lattice_n3() {
        let sigma = NrSequence::parse("321").unwrap();
        let v = face_lattice_violations(&sigma).unwrap();
        assert!(v.is_empty(), "{v:?}");
    }

    #[test]
    fn off_export_hexagon() {
        let off = export_off_pn(3).unwrap();
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("6 1 6"));
        assert_eq!(export_off_pn(3).unwrap(), off); // deterministic
    }
}
