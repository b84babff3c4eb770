//! Frozen homology values: the Betti numbers of both complexes must match
//! the coefficients of prod_{i=1}^{n-1} (1 + i t), with no torsion.

use permop_core::complex::{build_cact, build_milgram, order_complex, CellComplex};
use permop_core::homology::{gf2_betti, HomologySummary};

/// Coefficients of prod_{i=1}^{n-1} (1 + i t).
fn poincare_coefficients(n: usize) -> Vec<usize> {
    let mut acc = vec![1usize];
    for i in 1..n {
        let mut next = vec![0usize; acc.len() + 1];
        for (d, &a) in acc.iter().enumerate() {
            next[d] += a;
            next[d + 1] += a * i;
        }
        acc = next;
    }
    acc
}

fn integral(cx: &CellComplex) -> HomologySummary {
    order_complex(cx.face_poset()).integral_homology().unwrap()
}

fn cellular_gf2(cx: &CellComplex) -> Vec<usize> {
    gf2_betti(&cx.f_vector(), cx.boundary2())
}

#[test]
fn betti_oracle_table() {
    assert_eq!(poincare_coefficients(2), vec![1, 1]);
    assert_eq!(poincare_coefficients(3), vec![1, 3, 2]);
    assert_eq!(poincare_coefficients(4), vec![1, 6, 11, 6]);
}

#[test]
fn milgram_homology_n2_n3() {
    for n in 2..=3u32 {
        let cx = build_milgram(n).unwrap();
        let h = integral(&cx);
        assert_eq!(h.betti_vector(), poincare_coefficients(n as usize));
        assert!(h.is_torsion_free());
        assert_eq!(cellular_gf2(&cx), poincare_coefficients(n as usize));
    }
}

#[test]
fn cact_homology_n2_n3() {
    for n in 2..=3u32 {
        let cx = build_cact(n).unwrap();
        let h = integral(&cx);
        assert_eq!(h.betti_vector(), poincare_coefficients(n as usize));
        assert!(h.is_torsion_free());
        assert_eq!(cellular_gf2(&cx), poincare_coefficients(n as usize));
    }
}

#[test]
fn milgram_homology_n4() {
    let cx = build_milgram(4).unwrap();
    let h = integral(&cx);
    assert_eq!(h.betti_vector(), vec![1, 6, 11, 6]);
    assert!(h.is_torsion_free());
    assert_eq!(cellular_gf2(&cx), vec![1, 6, 11, 6]);
}

#[test]
fn cact_homology_n4() {
    let cx = build_cact(4).unwrap();
    let h = integral(&cx);
    assert_eq!(h.betti_vector(), vec![1, 6, 11, 6]);
    assert!(h.is_torsion_free());
    assert_eq!(cellular_gf2(&cx), vec![1, 6, 11, 6]);
}

#[test]
fn euler_characteristics_vanish() {
    for n in 2..=4u32 {
        assert_eq!(build_milgram(n).unwrap().euler_characteristic(), 0);
        assert_eq!(build_cact(n).unwrap().euler_characteristic(), 0);
    }
    // the n = 5 permutahedral complex stays cheap: 5! * 2^4 cells
    let m5 = build_milgram(5).unwrap();
    assert_eq!(m5.cell_count(), 1920);
    assert_eq!(m5.euler_characteristic(), 0);
    assert!(m5.boundary_squares_to_zero());
}
