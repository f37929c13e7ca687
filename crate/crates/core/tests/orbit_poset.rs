use std::collections::BTreeSet;

use bruhat::kgb::fixtures;
use bruhat::orbit_poset::{from_parabolic, from_weyl, Fiber, OrbitGraph};
use bruhat::parabolic::{coset_bruhat_leq, enumerate_cosets};
use bruhat::root_datum::{ParabolicSubset, RootDatum};
use bruhat::weyl::WeylGroup;
use proptest::prelude::*;

fn datum(t: &str) -> RootDatum {
    RootDatum::of_type(t).unwrap()
}

fn node(g: &OrbitGraph, name: &str) -> usize {
    g.names().iter().position(|n| n == name).unwrap()
}

/// Every graph the library can build with at most 24 nodes.
fn small_graphs() -> Vec<(String, OrbitGraph)> {
    let mut out = Vec::new();
    for t in ["A1", "A1xA1", "A2", "B2", "G2", "A3"] {
        let d = datum(t);
        out.push((format!("weyl {t}"), from_weyl(&d)));
        for s in ParabolicSubset::all(d.rank()).into_iter().skip(1) {
            out.push((format!("parabolic {t} {s}"), from_parabolic(&d, &s)));
        }
    }
    for (name, g) in fixtures() {
        if g.node_count() <= 24 {
            out.push((format!("kgb {name}"), g.to_orbit_poset()));
        }
    }
    out
}

/// `from_weyl(A2)` with the simple root `alpha` edge between `lo` and `hi` removed.
fn cut_a2(alpha: usize, lo: &str, hi: &str) -> OrbitGraph {
    let g = from_weyl(&datum("A2"));
    let (lo, hi) = (node(&g, lo), node(&g, hi));
    let mut fibers = vec![g.fibers(0).to_vec(), g.fibers(1).to_vec()];
    fibers[alpha].retain(|f| f.dense != hi);
    fibers[alpha].extend([Fiber::singleton(lo), Fiber::singleton(hi)]);
    OrbitGraph::new(2, "A2", g.lengths().to_vec(), fibers).with_names(g.names().to_vec())
}

#[test]
fn weyl_graphs_carry_bruhat_order() {
    for t in ["A1", "A1xA1", "A2", "B2", "G2", "A3"] {
        let d = datum(t);
        let grp = WeylGroup::new(d.clone());
        let all = grp.enumerate();
        let g = from_weyl(&d);
        assert!(g.validate().is_empty());
        for (u, x) in all.iter().enumerate() {
            assert_eq!(g.name(u), grp.format(x));
            for (v, y) in all.iter().enumerate() {
                assert_eq!(g.poset_leq(u, v), grp.bruhat_leq(x, y).unwrap(), "{t}");
            }
        }
    }
}

#[test]
fn parabolic_graphs_carry_coset_order() {
    for t in ["A2", "B2", "A3"] {
        let d = datum(t);
        let grp = WeylGroup::new(d.clone());
        for s in ParabolicSubset::all(d.rank()) {
            let g = from_parabolic(&d, &s);
            let cosets = enumerate_cosets(&grp, &s);
            assert!(g.validate().is_empty(), "{t} {s}");
            assert_eq!(g.node_count(), cosets.len());
            for (u, c1) in cosets.iter().enumerate() {
                assert_eq!(g.length(u), c1.p_length(&grp));
                for (v, c2) in cosets.iter().enumerate() {
                    assert_eq!(g.poset_leq(u, v), coset_bruhat_leq(&grp, c1, c2).unwrap(), "{t} {s}");
                }
            }
        }
    }
}

#[test]
fn order_is_a_partial_order_refining_length() {
    for (name, g) in small_graphs() {
        let n = g.node_count();
        for u in 0..n {
            assert!(g.poset_leq(u, u), "{name}");
            for v in 0..n {
                if u != v && g.poset_leq(u, v) {
                    assert!(!g.poset_leq(v, u), "{name}");
                    assert!(g.length(u) < g.length(v), "{name}");
                }
                for w in 0..n {
                    if g.poset_leq(u, v) && g.poset_leq(v, w) {
                        assert!(g.poset_leq(u, w), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn property_z_on_every_built_graph() {
    for (name, g) in small_graphs() {
        assert!(g.property_z_check().is_empty(), "{name}");
    }
}

#[test]
fn mutation_breaks_property_z() {
    let m = cut_a2(0, "2", "2,1");
    assert!(!m.property_z_check().is_empty());
    assert_eq!(m.validate().iter().map(|v| v.axiom()).collect::<Vec<_>>(), vec!["Unreachable"]);
    // Removing a top edge keeps every axiom, and then property Z survives too.
    for (alpha, lo) in [(0, "1,2"), (1, "2,1")] {
        let m = cut_a2(alpha, lo, "1,2,1");
        assert!(m.validate().is_empty());
        assert!(m.property_z_check().is_empty());
    }
}

#[test]
fn subexpressions_match_order_on_every_decomposition() {
    for (name, g) in small_graphs() {
        for v in 0..g.node_count() {
            let below: BTreeSet<usize> = (0..g.node_count()).filter(|&u| g.poset_leq(u, v)).collect();
            let decompositions = g.all_reduced_decompositions(v);
            assert!(!decompositions.is_empty(), "{name} {v}");
            for rd in decompositions {
                assert!(g.is_reduced_decomposition(&rd));
                assert_eq!(rd.end(), v);
                assert_eq!(rd.len(), g.length(v));
                assert_eq!(g.subexpression_endpoints(&rd), below, "{name} node {v} via {:?}", rd.roots);
            }
        }
    }
}

#[test]
fn shared_target_clause_is_needed_exactly_for_multi_node_fibers() {
    let mut needed = Vec::new();
    for (name, g) in small_graphs() {
        let big_fiber = (0..g.rank()).any(|a| g.fibers(a).iter().any(|f| f.len() == 3));
        let differs = (0..g.node_count()).any(|v| {
            g.all_reduced_decompositions(v)
                .iter()
                .any(|rd| g.subexpression_endpoints(rd) != g.subexpression_endpoints_without_shared_target(rd))
        });
        assert_eq!(differs, big_fiber, "{name}");
        if differs {
            needed.push(name);
        }
    }
    assert_eq!(needed, vec!["kgb sl2_split".to_string()]);
}

#[test]
fn hasse_is_the_transitive_reduction() {
    for (name, g) in small_graphs() {
        let n = g.node_count();
        let mut expect = Vec::new();
        for u in 0..n {
            for v in 0..n {
                let lt = |a: usize, b: usize| a != b && g.poset_leq(a, b);
                if lt(u, v) && !(0..n).any(|w| lt(u, w) && lt(w, v)) {
                    expect.push((u, v));
                }
            }
        }
        let mut got = g.hasse();
        got.sort();
        assert_eq!(got, expect, "{name}");
        // Covers in a graded poset span one length step.
        assert!(got.iter().all(|&(u, v)| g.length(v) == g.length(u) + 1), "{name}");
    }
    assert_eq!(from_weyl(&datum("A2")).hasse().len(), 8);
    assert_eq!(from_weyl(&datum("B2")).hasse().len(), 12);
}

#[test]
fn text_and_dot_are_canonical() {
    for (name, g) in small_graphs() {
        let text = g.to_text();
        let back = OrbitGraph::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text, "{name}");
        assert_eq!(back.order_matrix(), g.order_matrix(), "{name}");
        assert_eq!(g.to_dot(), g.clone().to_dot());
    }
}

proptest! {
    #[test]
    fn monoid_respects_idempotence_and_braids(
        t in prop::sample::select(vec!["A2", "B2", "G2", "A3"]),
        k in 0usize..24,
        x in 0usize..24,
    ) {
        let d = datum(t);
        let grp = WeylGroup::new(d.clone());
        let g = from_weyl(&d);
        let all = grp.enumerate();
        let w = &all[k % all.len()];
        let x = x % g.node_count();
        let images: BTreeSet<usize> = grp.all_reduced_words(w).iter().map(|word| g.monoid_apply_word(word, x)).collect();
        prop_assert_eq!(images.len(), 1);
        for a in 0..g.rank() {
            let y = g.monoid_apply(a, x);
            prop_assert_eq!(g.monoid_apply(a, y), y);
            prop_assert!(g.poset_leq(x, y));
        }
    }
}
