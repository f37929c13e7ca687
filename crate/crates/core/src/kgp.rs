//! `K \ G / P`: classes of KGB nodes identified by a standard parabolic.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::kgb::KgbGraph;
use crate::par;
use crate::root_datum::{classify_unchecked, ParabolicClass, ParabolicSubset, RootDatum};
use crate::weyl::{WeylElt, WeylGroup, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KgpError {
    #[error("class does not belong to this graph and parabolic subset")]
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IEquivClass {
    /// Sorted.
    pub members: Vec<usize>,
    /// Member of maximal length (smallest id on ties; see [`class_structure_check`]).
    pub top: usize,
}

/// Nodes fixed by `m(alpha)` for every `alpha` in `I`.
pub fn p_maximal_set(g: &KgbGraph, subset: &ParabolicSubset) -> Vec<usize> {
    (0..g.node_count()).filter(|&v| subset.iter().all(|a| g.monoid(a, v) == v)).collect()
}

/// Closure of `v ~ m(alpha) v` and `v ~ cross(alpha, v)` for `alpha` in `I`,
/// ordered by the length and id of the top member.
pub fn i_equivalence_classes(g: &KgbGraph, subset: &ParabolicSubset) -> Vec<IEquivClass> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for v in 0..n {
        for a in subset.iter() {
            for w in [g.monoid(a, v), g.cross_action(a, v)] {
                let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
                if rv != rw {
                    parent[rv.max(rw)] = rv.min(rw);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut classes: Vec<IEquivClass> = groups
        .into_values()
        .map(|members| {
            let top = *members.iter().max_by(|&&a, &&b| g.length(a).cmp(&g.length(b)).then(b.cmp(&a))).expect("nonempty");
            IEquivClass { members, top }
        })
        .collect();
    classes.sort_by_key(|c| (g.length(c.top), c.top));
    classes
}

/// The classes of one `(g, I)` with a node-to-class index.
#[derive(Debug, Clone)]
pub struct KgpQuotient {
    pub subset: ParabolicSubset,
    pub classes: Vec<IEquivClass>,
    class_of: Vec<usize>,
}

impl KgpQuotient {
    pub fn new(g: &KgbGraph, subset: &ParabolicSubset) -> Self {
        let classes = i_equivalence_classes(g, subset);
        let mut class_of = vec![0; g.node_count()];
        for (k, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = k;
            }
        }
        KgpQuotient { subset: subset.clone(), classes, class_of }
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Order on classes through their tops.
    pub fn leq(&self, g: &KgbGraph, a: usize, b: usize) -> bool {
        g.orbit_graph().poset_leq(self.classes[a].top, self.classes[b].top)
    }

    /// Order induced from the nodes: some member of `a` lies below some member of `b`.
    pub fn induced_leq(&self, g: &KgbGraph, a: usize, b: usize) -> bool {
        let order = g.orbit_graph().order_matrix();
        self.classes[a].members.iter().any(|&u| self.classes[b].members.iter().any(|&v| order[u][v]))
    }

    /// Cover relations between classes, as class indices.
    pub fn hasse(&self, g: &KgbGraph) -> Vec<(usize, usize)> {
        let n = self.len();
        let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| self.leq(g, a, b)).collect()).collect();
        let mut out = Vec::new();
        for b in 0..n {
            for a in 0..n {
                if a != b && leq[a][b] && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
                    out.push((a, b));
                }
            }
        }
        out.sort();
        out
    }
}

pub fn kgp_leq(g: &KgbGraph, subset: &ParabolicSubset, c1: &IEquivClass, c2: &IEquivClass) -> Result<bool, KgpError> {
    let classes = i_equivalence_classes(g, subset);
    if !classes.contains(c1) || !classes.contains(c2) {
        return Err(KgpError::Mismatch);
    }
    Ok(g.orbit_graph().poset_leq(c1.top, c2.top))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassViolation {
    NonUniqueTop { class: usize },
    TopNotPMaximal { class: usize },
    CountMismatch { classes: usize, p_maximal: usize },
}

/// Every class has one longest member, it is `I`-maximal, and the two counts agree.
pub fn class_structure_check(g: &KgbGraph, subset: &ParabolicSubset) -> Vec<ClassViolation> {
    let classes = i_equivalence_classes(g, subset);
    let vp = p_maximal_set(g, subset);
    let mut out = Vec::new();
    for (k, c) in classes.iter().enumerate() {
        let top_len = g.length(c.top);
        if c.members.iter().filter(|&&m| g.length(m) == top_len).count() != 1 {
            out.push(ClassViolation::NonUniqueTop { class: k });
        }
        if !vp.contains(&c.top) {
            out.push(ClassViolation::TopNotPMaximal { class: k });
        }
    }
    if classes.len() != vp.len() {
        out.push(ClassViolation::CountMismatch { classes: classes.len(), p_maximal: vp.len() });
    }
    out
}

/// Elements of the parabolic subgroup `W_L`, by length.
pub fn levi_weyl_elements(group: &WeylGroup, subset: &ParabolicSubset) -> Vec<WeylElt> {
    group
        .enumerate()
        .into_iter()
        .filter(|w| group.reduced_word(w).letters().iter().all(|&i| subset.contains(i)))
        .collect()
}

/// `m(s_beta) v` through a reduced word of the reflection `s_beta`.
fn monoid_reflection(g: &KgbGraph, beta_reflection: &Word, v: usize) -> usize {
    g.orbit_graph().monoid_apply_word(beta_reflection, v)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DescentViolation {
    pub node: usize,
    pub alpha: usize,
    pub w: Word,
}

impl fmt::Display for DescentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {} alpha {} w={}: m(s_(w alpha)) leaves the class of m(s_alpha)", self.node, self.alpha + 1, self.w)
    }
}

/// For `v` in `V_P`, `alpha` outside `I` and `w` in `W_L`, the class of
/// `m(s_{w alpha}) v` equals the class of `m(s_alpha) v`.
pub fn monoid_descent_check(g: &KgbGraph, subset: &ParabolicSubset) -> Vec<DescentViolation> {
    let q = KgpQuotient::new(g, subset);
    let group = g.group();
    let levi = levi_weyl_elements(group, subset);
    let outside: Vec<usize> = (0..g.rank()).filter(|a| !subset.contains(*a)).collect();
    let vp = p_maximal_set(g, subset);
    let mut jobs = Vec::new();
    for &alpha in &outside {
        for w in &levi {
            let beta = w.apply(&g.datum().simple_root(alpha));
            let refl = group.reduced_word(&group.reflection(&beta).expect("w alpha is a root"));
            jobs.push((alpha, group.reduced_word(w), refl));
        }
    }
    let mut out = par::flat_map_range(vp.len(), |k| {
        let v = vp[k];
        jobs.iter()
            .filter(|(alpha, _, refl)| q.class_of(monoid_reflection(g, refl, v)) != q.class_of(g.monoid(*alpha, v)))
            .map(|(alpha, w, _)| DescentViolation { node: v, alpha: *alpha, w: w.clone() })
            .collect::<Vec<_>>()
    });
    out.sort();
    out
}

/// `m(w) u = v` for `w` in `W_L`, `v` in `V_P`, but `m(s_alpha)` sends `u`
/// and `v` to different classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DescentWitness {
    pub v: usize,
    pub u: usize,
    pub alpha: usize,
    pub w: Word,
}

impl fmt::Display for DescentWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} u={} alpha={} w={}", self.v, self.u, self.alpha + 1, self.w)
    }
}

/// Shortest elements `w` of `W_L` with `m(w) u = v`.
fn shortest_levi_words(g: &KgbGraph, levi: &[WeylElt], u: usize, v: usize) -> Vec<Word> {
    let group = g.group();
    let mut best: Option<usize> = None;
    let mut out = Vec::new();
    for w in levi {
        let word = group.reduced_word(w);
        if best.is_some_and(|b| word.len() > b) {
            break;
        }
        if g.orbit_graph().monoid_apply_word(&word, u) == v {
            best = Some(word.len());
            out.push(word);
        }
    }
    out
}

/// Exhaustive search for a failure of naive descent of the monoid action;
/// returns every witness, sorted.
pub fn find_descent_counterexamples(g: &KgbGraph, subset: &ParabolicSubset) -> Vec<DescentWitness> {
    let q = KgpQuotient::new(g, subset);
    let levi = levi_weyl_elements(g.group(), subset);
    let outside: Vec<usize> = (0..g.rank()).filter(|a| !subset.contains(*a)).collect();
    let mut out = Vec::new();
    for c in &q.classes {
        let v = c.top;
        for &u in &c.members {
            let words = shortest_levi_words(g, &levi, u, v);
            let Some(w) = words.first() else { continue };
            for &alpha in &outside {
                if q.class_of(g.monoid(alpha, v)) != q.class_of(g.monoid(alpha, u)) {
                    out.push(DescentWitness { v, u, alpha, w: w.clone() });
                }
            }
        }
    }
    out.sort();
    out
}

/// First witness of [`find_descent_counterexamples`], if any.
pub fn find_descent_counterexample(g: &KgbGraph, subset: &ParabolicSubset) -> Option<DescentWitness> {
    find_descent_counterexamples(g, subset).into_iter().next()
}

/// For `u ~ v` with `v` in `V_P`, `w` shortest in `W_L` with `m(w) u = v`
/// and `alpha` outside `I`: the classes of `m(s_alpha) v`,
/// `m(s_{w^-1 alpha}) v` and `m(s_{w^-1 alpha}) u` coincide.
pub fn transported_descent_check(g: &KgbGraph, subset: &ParabolicSubset) -> Vec<DescentWitness> {
    let q = KgpQuotient::new(g, subset);
    let group = g.group();
    let levi = levi_weyl_elements(group, subset);
    let outside: Vec<usize> = (0..g.rank()).filter(|a| !subset.contains(*a)).collect();
    let mut out = Vec::new();
    for c in &q.classes {
        let v = c.top;
        for &u in &c.members {
            for w in shortest_levi_words(g, &levi, u, v) {
                let w_inv = group.inv(&group.from_word(&w).expect("valid word")).expect("same group");
                for &alpha in &outside {
                    let beta = w_inv.apply(&g.datum().simple_root(alpha));
                    let refl = group.reduced_word(&group.reflection(&beta).expect("root"));
                    let a = q.class_of(g.monoid(alpha, v));
                    let b = q.class_of(monoid_reflection(g, &refl, v));
                    let c2 = q.class_of(monoid_reflection(g, &refl, u));
                    if a != b || b != c2 {
                        out.push(DescentWitness { v, u, alpha, w: w.clone() });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AscentCollision {
    pub node: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl fmt::Display for AscentCollision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: ascents through {} and {} land in the same class", self.node, self.alpha + 1, self.beta + 1)
    }
}

/// Distinct genuine ascents outside `I` from a node of `V_P` reach distinct classes.
pub fn distinct_ascents_check(g: &KgbGraph, subset: &ParabolicSubset) -> Vec<AscentCollision> {
    let q = KgpQuotient::new(g, subset);
    let outside: Vec<usize> = (0..g.rank()).filter(|a| !subset.contains(*a)).collect();
    let mut out = Vec::new();
    for v in p_maximal_set(g, subset) {
        let ups: Vec<(usize, usize)> =
            outside.iter().map(|&a| (a, g.monoid(a, v))).filter(|&(_, y)| y != v).collect();
        for (i, &(alpha, x)) in ups.iter().enumerate() {
            for &(beta, y) in &ups[i + 1..] {
                if q.class_of(x) == q.class_of(y) {
                    out.push(AscentCollision { node: v, alpha, beta });
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlphaViolation {
    pub alpha: usize,
    pub w: Word,
}

/// For `alpha` outside `I` and `w` in `W_L`: `w alpha` has `alpha`-coefficient 1,
/// lies in the nilradical, and is simple only when it equals `alpha`.
pub fn alpha_lemma_check(datum: &RootDatum, subset: &ParabolicSubset) -> Vec<AlphaViolation> {
    let group = WeylGroup::new(datum.clone());
    let levi = levi_weyl_elements(&group, subset);
    let mut out = BTreeSet::new();
    for alpha in (0..datum.rank()).filter(|a| !subset.contains(*a)) {
        let a = datum.simple_root(alpha);
        for w in &levi {
            let b = w.apply(&a);
            let simple_other = b.height() == 1 && b != a;
            if b.coords()[alpha] != 1 || classify_unchecked(&b, subset) != ParabolicClass::Nilradical || simple_other {
                out.insert(AlphaViolation { alpha, w: group.reduced_word(w) });
            }
        }
    }
    out.into_iter().collect()
}
