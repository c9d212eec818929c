use parahoric_core::alcove::{
    ell_of_datum, enumerate_p_c, enumerate_p_c_f, is_admissible, l_of_facet, levi_weyl,
};
use parahoric_core::{Error, Facet, MarkedPoint, ParahoricDatum, RootDatum, TypeLetter, Weight};
use proptest::prelude::*;

const TYPES: &[(TypeLetter, usize)] = &[
    (TypeLetter::A, 1),
    (TypeLetter::A, 2),
    (TypeLetter::A, 3),
    (TypeLetter::B, 2),
    (TypeLetter::B, 3),
    (TypeLetter::C, 2),
    (TypeLetter::C, 3),
    (TypeLetter::G, 2),
];

fn datum(l: TypeLetter, r: usize) -> RootDatum {
    RootDatum::new(l, r).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn facet_strategy() -> impl Strategy<Value = (RootDatum, Facet)> {
    (0..TYPES.len()).prop_flat_map(|t| {
        let (l, r) = TYPES[t];
        (1u32..(1 << (r + 1))).prop_map(move |mask| {
            let nodes = (0..=r).filter(|i| mask & (1 << i) != 0);
            (datum(l, r), Facet::new(nodes).unwrap())
        })
    })
}

#[test]
fn all_facets_are_nonempty_subsets() {
    for r in 1..=4 {
        let facets = Facet::all(r);
        assert_eq!(facets.len(), (1 << (r + 1)) - 1);
        assert!(facets.iter().all(|f| f.validate(r).is_ok()));
    }
}

#[test]
fn l_of_facet_is_brute_force_gcd() {
    for &(l, r) in TYPES
        .iter()
        .chain(&[(TypeLetter::A, 4), (TypeLetter::D, 4)])
    {
        let d = datum(l, r);
        let mut comarks = vec![1];
        comarks.extend_from_slice(d.comarks());
        for f in Facet::all(r) {
            let g = f.nodes().iter().fold(0, |g, &n| gcd(g, comarks[n]));
            assert_eq!(l_of_facet(&d, &f).unwrap(), g, "{d} {:?}", f.nodes());
        }
    }
}

#[test]
fn p_c_counts_for_a1_and_a2() {
    let a1 = datum(TypeLetter::A, 1);
    let a2 = datum(TypeLetter::A, 2);
    for c in 0..8u32 {
        assert_eq!(enumerate_p_c(&a1, c).len(), c as usize + 1);
        // Pairs (n1, n2) with n1 + n2 ≤ c.
        let n = c as usize + 1;
        assert_eq!(enumerate_p_c(&a2, c).len(), n * (n + 1) / 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gcd_over_superset_divides((d, f) in facet_strategy(), extra in 0usize..4) {
        let node = extra % (d.rank() + 1);
        let bigger = Facet::new(f.nodes().iter().copied().chain([node])).unwrap();
        let small = l_of_facet(&d, &f).unwrap();
        let big = l_of_facet(&d, &bigger).unwrap();
        prop_assert_eq!(small % big, 0);
    }

    #[test]
    fn p_c_is_monotone_and_lexicographic((d, _f) in facet_strategy(), c in 0u32..5) {
        let small = enumerate_p_c(&d, c);
        let big = enumerate_p_c(&d, c + 1);
        prop_assert!(small.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(small.iter().all(|w| big.binary_search(w).is_ok()));
        prop_assert!(big.iter().all(|w| w.is_dominant() && d.level_of(w) <= i64::from(c) + 1));
    }

    #[test]
    fn admissibility_agrees_with_enumeration((d, f) in facet_strategy(), c in 1u32..6) {
        let l = l_of_facet(&d, &f).unwrap();
        match enumerate_p_c_f(&d, c, &f) {
            Ok(list) => {
                prop_assert_eq!(i64::from(c) % l, 0);
                for w in enumerate_p_c(&d, c) {
                    prop_assert_eq!(is_admissible(&d, c, &f, &w), list.contains(&w));
                }
            }
            Err(Error::LevelNotMultiple { required, .. }) => {
                prop_assert_eq!(required, l);
                prop_assert!(i64::from(c) % l != 0);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn ell_divides_every_l((d, f) in facet_strategy(), mask in 1u32..32) {
        let g = Facet::new((0..=d.rank()).filter(|i| mask & (1 << i) != 0))
            .unwrap_or_else(|_| Facet::vertex(0));
        let pts = vec![
            MarkedPoint { label: "x".into(), facet: f.clone() },
            MarkedPoint { label: "y".into(), facet: g.clone() },
        ];
        let p = ParahoricDatum::new(d.clone(), 0, pts, 1).unwrap();
        let ell = ell_of_datum(&p).unwrap();
        prop_assert_eq!(ell % l_of_facet(&d, &f).unwrap(), 0);
        prop_assert_eq!(ell % l_of_facet(&d, &g).unwrap(), 0);
    }

    #[test]
    fn levi_length_matches_exhaustive_search(
        (d, f) in facet_strategy(),
        coords in proptest::collection::vec(-6i64..=6, 3),
    ) {
        let w = Weight::new(coords[..d.rank()].to_vec());
        let levi = levi_weyl(&d, &f).unwrap();
        // 2(λ + ρ_L) keeps everything integral; the dominant chamber is
        // where all Levi simple coroot pairings are positive.
        let doubled = &(&w * 2) + levi.two_rho();
        let found: Vec<usize> = levi
            .words(100_000)
            .unwrap()
            .iter()
            .filter(|word| {
                let image = levi.apply_word(&d, word, &doubled);
                levi.pairings(&d, &image).iter().all(|&p| p > 0)
            })
            .map(|word| levi.length(word))
            .collect();
        match levi.dot_length(&d, &w) {
            Some(len) => prop_assert_eq!(found, vec![len]),
            None => prop_assert!(found.is_empty()),
        }
    }
}
