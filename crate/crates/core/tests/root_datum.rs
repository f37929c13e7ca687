use std::collections::BTreeSet;

use bruhat::root_datum::{parse_root_datum, CartanSpec, Isogeny, ParabolicClass, ParabolicSubset, Root, RootDatum};
use proptest::prelude::*;

/// Closure of the simple roots under the simple reflections, computed from
/// the Cartan entries alone.
fn roots_by_closure(cartan: &CartanSpec) -> BTreeSet<Vec<i32>> {
    let n = cartan.rank();
    let mut seen: BTreeSet<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| i32::from(i == j)).collect()).collect();
    let mut frontier: Vec<Vec<i32>> = seen.iter().cloned().collect();
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            let pairing: i32 = (0..n).map(|j| beta[j] * cartan.entry(i, j)).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if seen.insert(img.clone()) {
                frontier.push(img);
            }
        }
    }
    seen
}

#[test]
fn positive_roots_match_closure_and_counts() {
    let expected = [
        ("A1", 1),
        ("A2", 3),
        ("A3", 6),
        ("A4", 10),
        ("B2", 4),
        ("B3", 9),
        ("C3", 9),
        ("D4", 12),
        ("G2", 6),
        ("F4", 24),
        ("E6", 36),
        ("A1xA1", 2),
        ("A2xB2", 7),
    ];
    for (t, count) in expected {
        let d = RootDatum::of_type(t).unwrap();
        let pos: BTreeSet<Vec<i32>> = d.positive_roots().iter().map(|r| r.coords().to_vec()).collect();
        let closure = roots_by_closure(d.cartan());
        let closure_pos: BTreeSet<Vec<i32>> = closure.iter().filter(|r| r.iter().all(|&c| c >= 0)).cloned().collect();
        assert_eq!(pos, closure_pos, "{t}");
        assert_eq!(pos.len(), count, "{t}");
        assert_eq!(closure.len(), 2 * count, "{t}");
        assert!(d.positive_roots().windows(2).all(|w| w[0].height() <= w[1].height()), "{t}");
    }
}

#[test]
fn highest_roots() {
    let top = |t: &str| RootDatum::of_type(t).unwrap().positive_roots().last().unwrap().coords().to_vec();
    assert_eq!(top("A3"), vec![1, 1, 1]);
    assert_eq!(top("B3"), vec![1, 2, 2]);
    assert_eq!(top("C3"), vec![2, 2, 1]);
    assert_eq!(top("G2"), vec![3, 2]);
    assert_eq!(top("F4"), vec![2, 3, 4, 2]);
}

#[test]
fn m_alpha_by_isogeny() {
    let sc = RootDatum::of_type("A1").unwrap();
    assert!(!sc.is_m_alpha_trivial(0));
    let ad = RootDatum::new(CartanSpec::from_type("A1").unwrap(), Isogeny::Adjoint, None).unwrap();
    assert!(ad.is_m_alpha_trivial(0));
    // In the adjoint B2 datum the long coroot is twice a generator.
    let b2 = RootDatum::new(CartanSpec::from_type("B2").unwrap(), Isogeny::Adjoint, None).unwrap();
    assert_eq!((0..2).filter(|&i| b2.is_m_alpha_trivial(i)).count(), 1);
}

#[test]
fn twists() {
    let a3 = RootDatum::of_type("A3").unwrap();
    assert_eq!(a3.diagram_flip(), Some(vec![2, 1, 0]));
    assert!(RootDatum::of_type("B2").unwrap().diagram_flip().is_none());
    assert!(a3.with_twist(vec![1, 0, 2]).is_err());
    let flipped = a3.with_twist(vec![2, 1, 0]).unwrap();
    assert_eq!(flipped.twist_root(&Root(vec![1, 1, 0])), Root(vec![0, 1, 1]));
    assert!(flipped.twist_preserves_lattice());
}

#[test]
fn classification() {
    let d = RootDatum::of_type("A3").unwrap();
    let i = ParabolicSubset::from_indices([0, 1]);
    assert_eq!(d.classify_wrt_parabolic(&Root(vec![1, 1, 0]), &i).unwrap(), ParabolicClass::Levi);
    assert_eq!(d.classify_wrt_parabolic(&Root(vec![0, 1, 1]), &i).unwrap(), ParabolicClass::Nilradical);
    assert_eq!(d.classify_wrt_parabolic(&Root(vec![0, -1, -1]), &i).unwrap(), ParabolicClass::OppositeNilradical);
    assert!(d.classify_wrt_parabolic(&Root(vec![1, 0, 1]), &i).is_err());
}

#[test]
fn text_formats() {
    let direct = "rootdatum v1\ncartan 2\n2 -1\n-3 2\nisogeny adjoint\ntwist id\n";
    let d = parse_root_datum(direct).unwrap();
    assert_eq!(d.positive_roots().len(), 6);
    assert_eq!(d.to_text(), direct);
    let flip = "rootdatum v1\ntype A3\nisogeny simply_connected\ntwist 3 2 1\n";
    assert_eq!(parse_root_datum(flip).unwrap().to_text(), flip);
    for bad in [
        "rootdatum v2\n",
        "rootdatum v1\ntype Q7\nisogeny adjoint\ntwist id\n",
        "rootdatum v1\ncartan 2\n2 -1\n-1 3\nisogeny adjoint\ntwist id\n",
        "rootdatum v1\ntype A2\nisogeny adjoint\ntwist 1 1\n",
        "rootdatum v1\ntype A2\nisogeny adjoint\ntwist id\nextra\n",
    ] {
        assert!(parse_root_datum(bad).is_err(), "{bad}");
    }
}

proptest! {
    #[test]
    fn reflections_preserve_roots(t in prop::sample::select(vec!["A3", "B3", "C3", "G2", "D4", "F4"]), k in 0usize..100, i in 0usize..4) {
        let d = RootDatum::of_type(t).unwrap();
        let all = d.all_roots();
        let beta = &all[k % all.len()];
        let i = i % d.rank();
        let img = d.reflect(i, beta).unwrap();
        prop_assert!(d.is_root(&img));
        prop_assert_eq!(&d.reflect(i, &img).unwrap(), beta);
        if *beta == d.simple_root(i) {
            prop_assert_eq!(img, beta.neg());
        } else if beta.is_positive() {
            prop_assert!(img.is_positive());
        }
    }

    #[test]
    fn text_round_trip(t in prop::sample::select(vec!["A1", "A2", "B2", "G2", "A3", "A1xA1", "C3"]), adjoint: bool) {
        let iso = if adjoint { Isogeny::Adjoint } else { Isogeny::SimplyConnected };
        let d = RootDatum::new(CartanSpec::from_type(t).unwrap(), iso, None).unwrap();
        let text = d.to_text();
        let back = parse_root_datum(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back.to_text(), text);
    }
}
