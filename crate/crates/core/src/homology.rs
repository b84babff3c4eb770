//! Homology of chain complexes given by explicit boundary matrices.

use crate::error::Result;
use crate::gf2::Gf2Matrix;
use crate::snf::{smith_normal_form, IntMatrix};

/// Homology in a single degree: the free rank and the torsion coefficients
/// as a divisibility chain d_1 | d_2 | ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<i128>,
}

/// Homology of a whole complex, one group per degree starting at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn betti_vector(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }
}

/// Integral homology of a chain complex.  `dims[d]` is the rank of C_d and
/// `boundaries[d]` (for d >= 1) is the matrix of the map C_d -> C_{d-1} with
/// `dims[d-1]` rows and `dims[d]` columns.  `boundaries[0]` must be the empty
/// map out of C_0 (zero rows or columns are both accepted).
pub fn integral_homology(dims: &[usize], boundaries: &[IntMatrix]) -> Result<HomologySummary> {
    assert_eq!(dims.len(), boundaries.len());
    for d in 1..dims.len() {
        assert_eq!(boundaries[d].rows(), dims[d - 1]);
        assert_eq!(boundaries[d].cols(), dims[d]);
    }
    if !boundary_squares_to_zero(boundaries)? {
        return Err(crate::error::Error::NotAComplex("boundary does not square to zero".into()));
    }
    let mut rank = vec![0usize; dims.len() + 1];
    let mut torsion: Vec<Vec<i128>> = vec![Vec::new(); dims.len() + 1];
    for d in 1..dims.len() {
        let snf = smith_normal_form(&boundaries[d])?;
        rank[d] = snf.rank();
        torsion[d] = snf.torsion();
    }
    let groups = (0..dims.len())
        .map(|d| HomologyGroup {
            betti: dims[d] - rank[d] - rank[d + 1],
            // torsion of H_d comes from the invariant factors of d_{d+1}
            torsion: torsion[d + 1].clone(),
        })
        .collect();
    Ok(HomologySummary { groups })
}

/// GF(2) Betti numbers of a chain complex over the two-element field.
pub fn gf2_betti(dims: &[usize], boundaries: &[Gf2Matrix]) -> Vec<usize> {
    assert_eq!(dims.len(), boundaries.len());
    for d in 1..dims.len() {
        assert_eq!(boundaries[d].rows(), dims[d - 1]);
        assert_eq!(boundaries[d].cols(), dims[d]);
    }
    let mut rank = vec![0usize; dims.len() + 1];
    for d in 1..dims.len() {
        rank[d] = boundaries[d].rank();
    }
    (0..dims.len()).map(|d| dims[d] - rank[d] - rank[d + 1]).collect()
}

/// Euler characteristic from cell counts.
pub fn euler_characteristic(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Check that the composite of consecutive boundary maps vanishes.
pub fn boundary_squares_to_zero(boundaries: &[IntMatrix]) -> Result<bool> {
    for d in 2..boundaries.len() {
        if !boundaries[d - 1].mul(&boundaries[d])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same check over GF(2).
pub fn boundary_squares_to_zero_gf2(boundaries: &[Gf2Matrix]) -> bool {
    (2..boundaries.len()).all(|d| boundaries[d - 1].mul(&boundaries[d]).is_zero())
}

/// Chain-map identity: target boundary composed with the map equals the map
/// composed with the source boundary, in every positive degree.
pub fn is_chain_map(
    src_bd: &[Gf2Matrix],
    tgt_bd: &[Gf2Matrix],
    maps: &[Gf2Matrix],
) -> bool {
    assert_eq!(src_bd.len(), tgt_bd.len());
    assert_eq!(src_bd.len(), maps.len());
    (1..maps.len()).all(|d| tgt_bd[d].mul(&maps[d]) == maps[d - 1].mul(&src_bd[d]))
}

/// Verdict per degree on the induced map in GF(2) homology: true iff the
/// induced map is bijective in that degree.  Computed from a cycle basis of
/// the source and the boundary columns of the target.
pub fn induced_iso_check(
    src_bd: &[Gf2Matrix],
    tgt_bd: &[Gf2Matrix],
    maps: &[Gf2Matrix],
) -> Result<Vec<bool>> {
    if !is_chain_map(src_bd, tgt_bd, maps) {
        return Err(crate::error::Error::NotAComplex("not a chain map".into()));
    }
    let len = maps.len();
    let mut out = Vec::new();
    for d in 0..len {
        let cycles = src_bd[d].kernel_basis();
        let src_bdry_rank = if d + 1 < len { src_bd[d + 1].rank() } else { 0 };
        let betti_src = cycles.cols() - src_bdry_rank;
        let tgt_cells = tgt_bd[d].cols();
        let tgt_cycle_dim = tgt_cells - tgt_bd[d].rank();
        let mapped = maps[d].mul(&cycles);
        let (tgt_bdry_rank, joint) = if d + 1 < len {
            Gf2Matrix::block_ranks(&tgt_bd[d + 1], &mapped)
        } else {
            (0, mapped.rank())
        };
        let betti_tgt = tgt_cycle_dim - tgt_bdry_rank;
        let image_dim = joint - tgt_bdry_rank;
        out.push(betti_src == betti_tgt && image_dim == betti_tgt);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> (Vec<usize>, Vec<IntMatrix>) {
        // triangle boundary: 3 vertices, 3 edges glued in a cycle
        let mut d1 = IntMatrix::zeros(3, 3);
        for e in 0..3 {
            d1.set(e, e, -1);
            d1.set((e + 1) % 3, e, 1);
        }
        (vec![3, 3], vec![IntMatrix::zeros(0, 3), d1])
    }

    #[test]
    fn circle_homology() {
        let (dims, bds) = circle();
        let h = integral_homology(&dims, &bds).unwrap();
        assert_eq!(h.betti_vector(), vec![1, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(euler_characteristic(&dims), 0);
    }

    #[test]
    fn projective_plane_torsion() {
        // minimal CW structure: one cell per degree, degree-2 attaching map
        let d1 = IntMatrix::zeros(1, 1);
        let mut d2 = IntMatrix::zeros(1, 1);
        d2.set(0, 0, 2);
        let dims = vec![1, 1, 1];
        let bds = vec![IntMatrix::zeros(0, 1), d1, d2];
        assert!(boundary_squares_to_zero(&bds).unwrap());
        let h = integral_homology(&dims, &bds).unwrap();
        assert_eq!(h.betti_vector(), vec![1, 0, 0]);
        assert_eq!(h.groups[1].torsion, vec![2]);
        // over GF(2) the torsion shows up as extra Betti numbers
        let g1 = Gf2Matrix::zeros(1, 1);
        let g2 = Gf2Matrix::zeros(1, 1); // multiplication by 2 is zero mod 2
        assert_eq!(gf2_betti(&dims, &[Gf2Matrix::zeros(0, 1), g1, g2]), vec![1, 1, 1]);
    }
}
