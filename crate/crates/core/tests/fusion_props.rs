use std::collections::BTreeMap;

use parahoric_core::alcove::enumerate_p_c;
use parahoric_core::fusion::{propagate, vacua_dim, verlinde_dim, verlinde_dim_smatrix};
use parahoric_core::{
    Facet, FusionTable, HandleOrder, MarkedPoint, ParahoricDatum, RootDatum, TypeLetter, Weight,
};
use proptest::prelude::*;

fn datum(l: TypeLetter, r: usize) -> RootDatum {
    RootDatum::new(l, r).unwrap()
}

const SMALL: &[(TypeLetter, usize, u32)] = &[
    (TypeLetter::A, 1, 4),
    (TypeLetter::A, 2, 3),
    (TypeLetter::B, 2, 2),
    (TypeLetter::C, 2, 2),
    (TypeLetter::G, 2, 2),
    (TypeLetter::A, 3, 2),
];

#[test]
fn fusion_coefficients_match_s_matrix() {
    for &(l, r, c) in SMALL {
        let d = datum(l, r);
        let t = FusionTable::new(&d, c).unwrap();
        for a in t.basis() {
            for b in t.basis() {
                for nu in t.basis() {
                    let dual = d.dual_weight(nu).unwrap();
                    let s = verlinde_dim_smatrix(&d, c, 0, &[a.clone(), b.clone(), dual]).unwrap();
                    assert_eq!(
                        u128::from(t.fusion_coeff(a, b, nu).unwrap()),
                        s,
                        "{d} level {c}: {a} × {b} → {nu}"
                    );
                }
            }
        }
    }
}

#[test]
fn fusion_ring_axioms() {
    for &(l, r, c) in SMALL {
        let d = datum(l, r);
        let t = FusionTable::new(&d, c).unwrap();
        let n = t.len();
        for i in 0..n {
            // Unit and duality.
            assert_eq!(t.product_by_index(0, i).unwrap().as_slice(), &[(i, 1)]);
            let with_dual = t.product_by_index(i, t.dual_index(i)).unwrap();
            assert_eq!(with_dual.iter().find(|(k, _)| *k == 0), Some(&(0, 1)));
            for j in 0..n {
                assert_eq!(
                    t.product_by_index(i, j).unwrap(),
                    t.product_by_index(j, i).unwrap()
                );
                for k in 0..n {
                    let mut left = vec![0u128; n];
                    left[i] = 1;
                    let left = t.multiply(&t.multiply(&left, j).unwrap(), k).unwrap();
                    let mut jk = vec![0u128; n];
                    jk[j] = 1;
                    let jk = t.multiply(&jk, k).unwrap();
                    let mut right = vec![0u128; n];
                    for (m, &coeff) in jk.iter().enumerate() {
                        for &(p, mult) in t.product_by_index(i, m).unwrap().iter() {
                            right[p] += coeff * u128::from(mult);
                        }
                    }
                    assert_eq!(left, right, "{d} level {c}: ({i} {j}) {k}");
                }
            }
        }
    }
}

#[test]
fn parallel_fill_matches_sequential() {
    let d = datum(TypeLetter::B, 2);
    let seq = FusionTable::new(&d, 3).unwrap();
    seq.fill(1).unwrap();
    for threads in [2, 4, 8] {
        let par = FusionTable::new(&d, 3).unwrap();
        par.fill(threads).unwrap();
        assert_eq!(par.cached_products(), seq.cached_products());
        for i in 0..seq.len() {
            for j in 0..seq.len() {
                assert_eq!(
                    par.product_by_index(i, j).unwrap(),
                    seq.product_by_index(i, j).unwrap()
                );
            }
        }
    }
}

#[test]
fn concurrent_queries_agree() {
    let d = datum(TypeLetter::A, 2);
    let t = FusionTable::new(&d, 4).unwrap();
    let results: Vec<Vec<u128>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..6)
            .map(|_| {
                s.spawn(|| {
                    (0..4)
                        .map(|g| vacua_dim(&t, g, &[], HandleOrder::Append).unwrap())
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(results.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn cache_round_trip_preserves_products() {
    let dir = tempfile::tempdir().unwrap();
    let d = datum(TypeLetter::G, 2);
    let t = FusionTable::new(&d, 2).unwrap();
    t.fill(2).unwrap();
    let path = t.save(dir.path()).unwrap();
    assert!(path.exists());
    let first = std::fs::read(&path).unwrap();
    t.save(dir.path()).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);

    let reloaded = FusionTable::open(&d, 2, Some(dir.path())).unwrap();
    assert_eq!(reloaded.cached_products(), t.cached_products());
    for i in 0..t.len() {
        for j in 0..t.len() {
            assert_eq!(
                reloaded.product_by_index(i, j).unwrap(),
                t.product_by_index(i, j).unwrap()
            );
        }
    }
    // A table for another level ignores the file.
    let other = FusionTable::new(&d, 3).unwrap();
    assert_eq!(other.load(dir.path()), 0);
}

fn a_type_config() -> impl Strategy<Value = (RootDatum, u32, u32, Vec<Weight>)> {
    (1usize..=2, 1u32..=3, 0u32..=2).prop_flat_map(|(r, c, g)| {
        let d = datum(TypeLetter::A, r);
        let basis = enumerate_p_c(&d, c);
        proptest::collection::vec(proptest::sample::select(basis), 0..=3)
            .prop_map(move |ins| (d.clone(), c, g, ins))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn handle_orders_agree((d, c, g, ins) in a_type_config()) {
        let t = FusionTable::new(&d, c).unwrap();
        prop_assert_eq!(
            vacua_dim(&t, g, &ins, HandleOrder::Append).unwrap(),
            vacua_dim(&t, g, &ins, HandleOrder::Prepend).unwrap()
        );
    }

    #[test]
    fn insertion_order_is_irrelevant((d, c, g, mut ins) in a_type_config()) {
        let t = FusionTable::new(&d, c).unwrap();
        let before = vacua_dim(&t, g, &ins, HandleOrder::Append).unwrap();
        ins.reverse();
        prop_assert_eq!(vacua_dim(&t, g, &ins, HandleOrder::Append).unwrap(), before);
    }

    #[test]
    fn matches_s_matrix_oracle((d, c, g, ins) in a_type_config()) {
        let t = FusionTable::new(&d, c).unwrap();
        prop_assert_eq!(
            vacua_dim(&t, g, &ins, HandleOrder::Append).unwrap(),
            verlinde_dim_smatrix(&d, c, g, &ins).unwrap()
        );
    }

    #[test]
    fn trivial_insertions_propagate((d, c, g, ins) in a_type_config()) {
        let t = FusionTable::new(&d, c).unwrap();
        let r = d.rank();
        let points: Vec<MarkedPoint> = (0..ins.len())
            .map(|i| MarkedPoint { label: format!("p{i}"), facet: Facet::iwahori(r) })
            .collect();
        let labelled: BTreeMap<String, Weight> = ins
            .iter()
            .enumerate()
            .map(|(i, w)| (format!("p{i}"), w.clone()))
            .collect();
        let p = ParahoricDatum::new(d.clone(), g, points, c).unwrap();
        let base = verlinde_dim(&t, &p, &labelled).unwrap();
        let z = MarkedPoint { label: "z".into(), facet: Facet::vertex(0) };
        prop_assert_eq!(propagate(&t, &p, &labelled, z).unwrap(), base);
    }
}
