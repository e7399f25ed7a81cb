use num_bigint::BigInt;
use proptest::prelude::*;
use surfconf::acceptance::structural_consistency;
use surfconf::complex::{boundary_cell, build_complex};
use surfconf::linalg::{
    elementary_divisors, homology, homology_ranks, induced_on_homology, reindex_poincare_lefschetz, smith_normal_form,
    ChainComplex, SparseIntMatrix,
};
use surfconf::model::{CellTuple, SurfaceParams};
use surfconf::simplicial::{relative_homology_oracle, Guardrail, OneComplexModel, SubspaceMode};

fn betti(g: usize, n: usize) -> Vec<usize> {
    homology_ranks(build_complex(SurfaceParams::new(g), n).unwrap().chain()).iter().map(|r| r.betti).collect()
}

fn oracle_betti(g: usize, n: usize) -> Vec<usize> {
    relative_homology_oracle(&OneComplexModel::surface(g), n, SubspaceMode::DiagonalAndBoundary, &Guardrail::unlimited())
        .unwrap()
        .iter()
        .map(|r| r.betti)
        .collect()
}

#[test]
fn square_zero_through_genus_three_four_points() {
    for g in 0..=3 {
        for n in 0..=4 {
            build_complex(SurfaceParams::new(g), n).unwrap();
        }
    }
}

#[test]
fn boundary_examples() {
    let p = SurfaceParams::new(1);
    let t: CellTuple = "l=1;P=(1);U=();V=()".parse().unwrap();
    assert!(boundary_cell(&t, p).is_zero());

    let p = SurfaceParams::new(0);
    let t: CellTuple = "l=2;P=(1),(2);U=;V=".parse().unwrap();
    let b = boundary_cell(&t, p);
    let a = b.coefficient(&"l=1;P=(1,2);U=;V=".parse().unwrap());
    let c = b.coefficient(&"l=1;P=(2,1);U=;V=".parse().unwrap());
    assert_eq!(a.abs(), 1);
    assert_eq!(a, -c);
    assert_eq!(b.terms.len(), 2);

    let p = SurfaceParams::new(2);
    let t: CellTuple = "l=0;P=;U=(1,3),();V=(),(2)".parse().unwrap();
    assert!(boundary_cell(&t, p).is_zero());
}

#[test]
fn known_groups_agree_with_the_simplicial_model() {
    // one point: H_*(M, boundary)
    assert_eq!(betti(1, 1), vec![0, 2, 1]);
    assert_eq!(oracle_betti(1, 1), vec![0, 2, 1]);
    // two points on a torus with one hole
    assert_eq!(betti(1, 2), vec![0, 0, 5, 4, 1]);
    assert_eq!(oracle_betti(1, 2), vec![0, 0, 5, 4, 1]);
    // three points in a disc: H^0, H^1, H^2 = 1, 3, 2
    assert_eq!(betti(0, 3), vec![0, 0, 0, 0, 2, 3, 1]);
    assert_eq!(oracle_betti(0, 3), vec![0, 0, 0, 0, 2, 3, 1]);
}

#[test]
fn cohomological_reindexing() {
    let c = build_complex(SurfaceParams::new(0), 3).unwrap();
    let table = reindex_poincare_lefschetz(&homology_ranks(c.chain()), 3);
    let ranks: Vec<usize> = table.values().map(|r| r.betti).collect();
    assert_eq!(ranks, vec![1, 3, 2, 0, 0, 0, 0]);
}

#[test]
fn dual_ranks_of_one_point_complex() {
    let c = build_complex(SurfaceParams::new(1), 1).unwrap();
    let dual = c.cochain_dual();
    // cohomological degree k sits at dual degree 2n - k
    assert_eq!(dual.dims(), &[1, 2, 0]);
    assert_eq!(dual.dual(), *c.chain());
}

#[test]
fn euler_characteristic_and_universal_coefficients() {
    for g in 0..=2 {
        for n in 0..=3 {
            let c = build_complex(SurfaceParams::new(g), n).unwrap();
            assert!(structural_consistency(c.chain()), "g={g} n={n}");
        }
    }
    let c = build_complex(SurfaceParams::new(1), 2).unwrap();
    assert_eq!(c.chain().euler_characteristic(), 2);
}

#[test]
fn torsion_is_detected() {
    // RP^2: Z <-2- Z <-0- Z with the usual cell structure gives H_1 = Z/2
    let c = ChainComplex::new(
        vec![1, 1, 1],
        vec![SparseIntMatrix::from_triplets(1, 1, [(0, 0, 0)]), SparseIntMatrix::from_triplets(1, 1, [(0, 0, 2)])],
    )
    .unwrap();
    let r = homology_ranks(&c);
    assert_eq!(r[1].torsion, vec![BigInt::from(2)]);
    assert_eq!((r[0].betti, r[1].betti, r[2].betti), (1, 0, 0));
    assert!(structural_consistency(&c));
}

#[test]
fn sign_flip_on_a_generator() {
    let c = ChainComplex::new(vec![0, 0, 2], vec![SparseIntMatrix::new(0, 0), SparseIntMatrix::new(0, 2)]).unwrap();
    let h = homology(&c);
    let flip = SparseIntMatrix::from_triplets(2, 2, [(0, 0, -1), (1, 1, 1)]);
    let maps = induced_on_homology(&c, &h, &[SparseIntMatrix::new(0, 0), SparseIntMatrix::new(0, 0), flip.clone()]).unwrap();
    assert_eq!(maps[2].free, flip);
}

#[test]
fn snf_example() {
    let m = SparseIntMatrix::from_triplets(2, 2, [(0, 0, 2), (1, 1, 3)]);
    assert_eq!(elementary_divisors(&m), vec![BigInt::from(1), BigInt::from(6)]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-6i64..=6, r * c)))
}

proptest! {
    #[test]
    fn snf_invariant_under_permutations((r, c, vals) in small_matrix(), seed in any::<u64>()) {
        let m = SparseIntMatrix::from_triplets(r, c, (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| (i, j, vals[i * c + j])));
        let rp: Vec<usize> = { let mut v: Vec<usize> = (0..r).collect(); v.rotate_left((seed as usize) % r); v.reverse(); v };
        let cp: Vec<usize> = { let mut v: Vec<usize> = (0..c).collect(); v.rotate_left((seed as usize / 7) % c); v };
        let p = SparseIntMatrix::from_triplets(r, c, m.iter().map(|(i, j, v)| (rp[i], cp[j], v.clone())));
        prop_assert_eq!(elementary_divisors(&m), elementary_divisors(&p));
    }

    #[test]
    fn snf_transforms_are_unimodular((r, c, vals) in small_matrix()) {
        let m = SparseIntMatrix::from_triplets(r, c, (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| (i, j, vals[i * c + j])));
        let s = smith_normal_form(&m);
        let d = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        for (i, j, v) in d.iter() {
            prop_assert!(i == j && i < s.rank && *v == s.diagonal[i]);
        }
        prop_assert!(s.left.mul(&s.left_inverse).unwrap().is_identity());
        prop_assert!(s.right.mul(&s.right_inverse).unwrap().is_identity());
    }

    #[test]
    fn random_two_step_complexes_are_consistent(a in prop::collection::vec(-3i64..=3, 6), k in -3i64..=3) {
        // d1: Z^3 -> Z^2, d2 = multiples of a vector in ker d1 when available
        let d1 = SparseIntMatrix::from_triplets(2, 3, (0..2).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (i, j, a[i * 3 + j])));
        // cross product of the rows lies in the kernel
        let x = [a[1] * a[5] - a[2] * a[4], a[2] * a[3] - a[0] * a[5], a[0] * a[4] - a[1] * a[3]];
        let d2 = SparseIntMatrix::from_triplets(3, 1, (0..3).map(|i| (i, 0, x[i] * k)));
        let c = ChainComplex::new(vec![2, 3, 1], vec![d1, d2]).unwrap();
        prop_assert!(c.first_nonzero_square().is_none());
        prop_assert!(structural_consistency(&c));
    }
}
