use proptest::prelude::*;
use surfconf::acceptance::fixtures;
use surfconf::action::{action_on_cohomology, combinatorial_mor_action, full_action, verify_johnson_triviality};
use surfconf::complex::build_complex;
use surfconf::free_group::{dehn_twist_generator, johnson_depth, parse_mapping_class, FreeEndomorphism};
use surfconf::model::{factorize_cell, SurfaceParams};
use surfconf::simplicial::{abelianization_action, mor_action, Guardrail};

#[test]
fn simplicial_and_combinatorial_routes_agree() {
    for (g, n) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
        for (name, phi) in fixtures(g) {
            if n == 3 && name.contains("Td^2") {
                continue;
            }
            let b = mor_action(&phi, n, &Guardrail::default()).unwrap();
            assert_eq!(combinatorial_mor_action(&phi, n), b, "{name} g={g} n={n}");
        }
    }
    let odd = parse_mapping_class("endo: a1-> A1 b1 a1 a1; b1-> 1", 1).unwrap().endo;
    for n in 1..=3 {
        assert_eq!(combinatorial_mor_action(&odd, n), mor_action(&odd, n, &Guardrail::default()).unwrap());
    }
}

#[test]
fn one_point_is_abelianization() {
    for g in 1..=2 {
        for (name, phi) in fixtures(g) {
            assert_eq!(mor_action(&phi, 1, &Guardrail::default()).unwrap(), abelianization_action(&phi), "{name}");
        }
    }
    let inv = parse_mapping_class("endo: a1-> A1", 1).unwrap().endo;
    let m = mor_action(&inv, 1, &Guardrail::default()).unwrap();
    let a_point = m.basis.iter().position(|c| !c.arcs()[0].is_empty()).unwrap();
    assert_eq!(m.matrix.get(a_point, a_point), (-1).into());
}

#[test]
fn boundary_twist_on_the_moriyama_module() {
    let td = dehn_twist_generator("Td", 1).unwrap();
    let two = mor_action(&td, 2, &Guardrail::default()).unwrap();
    assert_eq!(two.basis.len(), 6);
    assert!(two.is_identity());
    let three = mor_action(&td, 3, &Guardrail::default()).unwrap();
    assert_eq!(three.basis.len(), 24);
    assert!(!three.is_identity());
}

#[test]
fn kernel_is_the_johnson_subgroup_at_small_scale() {
    for g in 1..=2 {
        for (name, phi) in fixtures(g) {
            for n in 1..=3 {
                let depth = johnson_depth(&phi, n + 1);
                let id = combinatorial_mor_action(&phi, n).is_identity();
                assert_eq!(id, depth >= n, "{name} g={g} n={n} depth={depth}");
            }
        }
    }
}

#[test]
fn column_cells_are_fixed() {
    let c = build_complex(SurfaceParams::new(2), 2).unwrap();
    let phi = dehn_twist_generator("Ta1", 2).unwrap();
    let map = full_action(&phi, &c).unwrap();
    for d in 0..map.matrices.len() {
        for (j, cell) in c.basis().cells_in_degree(d).iter().enumerate() {
            if cell.is_pure_column() {
                let col: Vec<_> = map.matrices[d].iter().filter(|(_, cc, _)| *cc == j).collect();
                assert_eq!(col.len(), 1);
                assert_eq!((col[0].0, col[0].2.clone()), (j, 1.into()));
            }
        }
    }
}

#[test]
fn boundary_twist_chain_map_support() {
    let c = build_complex(SurfaceParams::new(1), 3).unwrap();
    let map = full_action(&dehn_twist_generator("Td", 1).unwrap(), &c).unwrap();
    for d in 4..=6 {
        assert!(map.is_identity_in_degree(d), "degree {d}");
    }
    assert!(!map.is_identity_in_degree(3));
    // only cells with three arc points move
    for (j, cell) in c.basis().cells_in_degree(3).iter().enumerate() {
        let (_, x) = factorize_cell(cell);
        let moved = map.matrices[3].iter().any(|(r, cc, v)| cc == j && (r != j || *v != 1.into()));
        assert!(!moved || x.weight() == 3);
    }
}

#[test]
fn boundary_twist_is_trivial_on_cohomology() {
    for g in 0..=2 {
        for n in 0..=3 {
            let c = build_complex(SurfaceParams::new(g), n).unwrap();
            let actions = action_on_cohomology(&dehn_twist_generator("Td", g).unwrap(), &c).unwrap();
            assert!(actions.values().all(|a| a.is_identity()), "g={g} n={n}");
        }
    }
}

#[test]
fn separating_twist_sharpness() {
    let c = build_complex(SurfaceParams::new(2), 3).unwrap();
    let r = verify_johnson_triviality(&dehn_twist_generator("Tsep1", 2).unwrap(), &c, 2).unwrap();
    assert!(r.depth >= 2);
    assert!(r.holds());
    assert_eq!(r.first_nontrivial(), Some(3));

    let c = build_complex(SurfaceParams::new(1), 2).unwrap();
    let r = verify_johnson_triviality(&dehn_twist_generator("Td", 1).unwrap(), &c, 2).unwrap();
    assert_eq!(r.depth, 2);
    assert!((0..=2).all(|j| r.identity[&j]));
}

#[test]
fn identity_is_trivial() {
    let c = build_complex(SurfaceParams::new(2), 2).unwrap();
    let map = full_action(&FreeEndomorphism::identity(2), &c).unwrap();
    assert!(map.matrices.iter().all(|m| m.is_identity()));
    assert!(combinatorial_mor_action(&FreeEndomorphism::identity(2), 3).is_identity());
}

#[test]
fn nonseparating_twist_moves_first_cohomology() {
    let c = build_complex(SurfaceParams::new(2), 1).unwrap();
    let r = verify_johnson_triviality(&dehn_twist_generator("Tb2", 2).unwrap(), &c, 1).unwrap();
    assert_eq!(r.depth, 0);
    assert_eq!(r.first_nontrivial(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moriyama_action_is_functorial(i in 0usize..10, j in 0usize..10, n in 1usize..=2) {
        let fx = fixtures(2);
        let (a, b) = (&fx[i % fx.len()].1, &fx[j % fx.len()].1);
        let guard = Guardrail::default();
        let ma = mor_action(a, n, &guard).unwrap();
        let mb = mor_action(b, n, &guard).unwrap();
        let mab = mor_action(&a.compose(b), n, &guard).unwrap();
        prop_assert_eq!(ma.matrix.mul(&mb.matrix).unwrap(), mab.matrix);
    }

    #[test]
    fn cohomology_action_is_functorial(i in 0usize..10, j in 0usize..10) {
        let fx = fixtures(2);
        let (a, b) = (&fx[i % fx.len()].1, &fx[j % fx.len()].1);
        let c = build_complex(SurfaceParams::new(2), 2).unwrap();
        let ha = action_on_cohomology(a, &c).unwrap();
        let hb = action_on_cohomology(b, &c).unwrap();
        let hab = action_on_cohomology(&a.compose(b), &c).unwrap();
        for (k, x) in &hab {
            let prod = ha[k].map.as_ref().unwrap().free.mul(&hb[k].map.as_ref().unwrap().free).unwrap();
            prop_assert_eq!(&prod, &x.map.as_ref().unwrap().free);
        }
    }
}
