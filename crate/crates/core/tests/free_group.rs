use num_bigint::BigInt;
use proptest::prelude::*;
use surfconf::free_group::{
    boundary_twist_class, boundary_word, dehn_twist_generator, expected_boundary_twist_class, johnson_depth, lcs_depth,
    magnus_expansion, parse_mapping_class, FreeEndomorphism, FreeWord, Letter, TruncatedMagnusSeries,
};

fn w(s: &str) -> FreeWord {
    s.parse().unwrap()
}

fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..rank, any::<bool>()), 0..max_len)
        .prop_map(|v| FreeWord::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
}

#[test]
fn commutator_is_boundary_word() {
    assert_eq!(w("a1").commutator(&w("b1")), boundary_word(1));
    assert_eq!(boundary_word(2), w("a1 b1 A1 B1 a2 b2 A2 B2"));
}

#[test]
fn boundary_twist_conjugates_by_boundary_word() {
    for g in 1..=3 {
        let t = dehn_twist_generator("Td", g).unwrap();
        let c = boundary_word(g);
        for k in 0..2 * g {
            assert_eq!(*t.image(k), FreeWord::generator(k).conjugate_by(&c));
        }
    }
}

#[test]
fn alpha_twist_abelianization() {
    let t = dehn_twist_generator("Ta1", 1).unwrap();
    let m = t.abelianization_matrix();
    // [a1] fixed, [b1] -> [b1] + [a1]
    assert_eq!((m[0][0], m[1][0]), (1, 0));
    assert_eq!((m[0][1], m[1][1]), (1, 1));
}

#[test]
fn magnus_examples() {
    let c = w("a1 b1 A1 B1");
    assert_eq!(magnus_expansion(&c, 2).to_string(), "1 + A1 B1 - B1 A1");
    assert_eq!(lcs_depth(&c, 4), 1);
    assert_eq!(lcs_depth(&c.commutator(&w("a1")), 4), 2);
}

#[test]
fn depths_of_named_classes() {
    assert_eq!(johnson_depth(&dehn_twist_generator("Td", 1).unwrap(), 4), 2);
    assert_eq!(johnson_depth(&dehn_twist_generator("Td", 2).unwrap(), 4), 2);
    assert_eq!(johnson_depth(&dehn_twist_generator("Ta2", 2).unwrap(), 4), 0);
    assert!(johnson_depth(&dehn_twist_generator("Tsep1", 2).unwrap(), 4) >= 2);
    assert_eq!(johnson_depth(&FreeEndomorphism::identity(2), 6), 6);
}

#[test]
fn boundary_twist_classes() {
    assert_eq!(boundary_twist_class(1, 1).unwrap().to_string(), "-[A1,[A1,B1]]");
    for g in 1..=2 {
        for k in -3..=3 {
            assert_eq!(boundary_twist_class(g, k).unwrap(), expected_boundary_twist_class(g, k).unwrap());
        }
    }
    let one = boundary_twist_class(2, 1).unwrap();
    let three = boundary_twist_class(2, 3).unwrap();
    assert_eq!(one.coeffs.keys().collect::<Vec<_>>(), three.coeffs.keys().collect::<Vec<_>>());
    assert!(one.coeffs.iter().all(|(w, c)| three.coeffs[w] == c * BigInt::from(3)));
}

#[test]
fn grammar() {
    let m = parse_mapping_class("Ta1 Tb1^2 Tb1^-2", 1).unwrap();
    assert_eq!(m.normal_form, "Ta1");
    let e = parse_mapping_class("endo: a1-> A1", 1).unwrap();
    assert_eq!(e.endo.to_string(), "endo: a1-> A1; b1-> b1");
    assert!(parse_mapping_class("endo: c1-> a1", 1).is_err());
    assert!(parse_mapping_class("Ta1^x", 1).is_err());
}

proptest! {
    #[test]
    fn magnus_is_multiplicative(u in word_strategy(4, 8), v in word_strategy(4, 8)) {
        let d = 4;
        let lhs = magnus_expansion(&u.mul(&v), d);
        let rhs = magnus_expansion(&u, d).mul(&magnus_expansion(&v, d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn magnus_of_inverse_is_inverse(u in word_strategy(4, 8)) {
        let d = 4;
        let p = magnus_expansion(&u, d).mul(&magnus_expansion(&u.inverse(), d));
        prop_assert_eq!(p, TruncatedMagnusSeries::one(d));
    }

    #[test]
    fn commutators_deepen(u in word_strategy(4, 6), v in word_strategy(4, 6)) {
        let du = lcs_depth(&u, 5);
        let dv = lcs_depth(&v, 5);
        prop_assert!(lcs_depth(&u.commutator(&v), 5) >= (du + dv + 1).min(5));
    }

    #[test]
    fn twist_products_fix_the_boundary(tokens in prop::collection::vec((0usize..7, -2i64..=2), 0..5)) {
        let names = ["Ta1", "Tb1", "Ta2", "Tb2", "Tsep1", "Tsep2", "Td"];
        let input: Vec<String> = tokens.iter().map(|(i, k)| format!("{}^{k}", names[*i])).collect();
        let m = parse_mapping_class(&input.join(" "), 2).unwrap();
        prop_assert!(m.endo.fixes_boundary());
        prop_assert!(m.endo.abelianization_is_unimodular());
        let again = parse_mapping_class(&m.normal_form, 2).unwrap();
        prop_assert_eq!(again.endo, m.endo);
    }

    #[test]
    fn endomorphisms_compose_as_functions(tokens in prop::collection::vec(0usize..4, 1..4), u in word_strategy(4, 6)) {
        let names = ["Ta1", "Tb2", "Tsep1", "Td"];
        let maps: Vec<FreeEndomorphism> = tokens.iter().map(|&i| dehn_twist_generator(names[i], 2).unwrap()).collect();
        let composed = maps.iter().fold(FreeEndomorphism::identity(2), |acc, m| acc.compose(m));
        let stepwise = maps.iter().rev().fold(u.clone(), |acc, m| m.apply(&acc));
        prop_assert_eq!(composed.apply(&u), stepwise);
    }
}
