//! Consistency checks and sequence encodings on KGB graphs.

use std::collections::BTreeMap;
use std::fmt;

use crate::par;
use crate::weyl::{WeylGroup, Word};

use super::{KgbError, KgbGraph, RootTypeLabel};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AscentViolation {
    pub alpha: usize,
    pub node: usize,
    pub label: RootTypeLabel,
}

impl fmt::Display for AscentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "label {} at alpha {} node {} disagrees with the sign of w theta(alpha)", self.label, self.alpha + 1, self.node)
    }
}

/// A label is an ascent exactly when `w theta(alpha) > 0` and the root is not compact.
pub fn ascent_consistency_check(g: &KgbGraph) -> Vec<AscentViolation> {
    let mut out = Vec::new();
    for v in 0..g.node_count() {
        for alpha in 0..g.rank() {
            let label = g.root_type(alpha, v);
            let predicted = g.tw_theta_image(alpha, v).is_positive() && label != RootTypeLabel::CompactImaginary;
            if label.is_ascent() != predicted {
                out.push(AscentViolation { alpha, node: v, label });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwLengthViolation {
    pub alpha: usize,
    pub node: usize,
}

/// Complex ascents raise `l(tw)` by 2 and Cayley transforms raise it by 1.
pub fn tw_length_check(g: &KgbGraph) -> Vec<TwLengthViolation> {
    let grp = g.group();
    let len = |v: usize| grp.length(g.tw(v));
    let mut out = Vec::new();
    for v in 0..g.node_count() {
        for alpha in 0..g.rank() {
            let ok = match g.root_type(alpha, v) {
                RootTypeLabel::ComplexAscent => len(g.cross_action(alpha, v)) == len(v) + 2,
                RootTypeLabel::NoncompactI | RootTypeLabel::NoncompactII => {
                    g.cayley(alpha, v).is_ok_and(|c| len(c) == len(v) + 1)
                }
                _ => true,
            };
            if !ok {
                out.push(TwLengthViolation { alpha, node: v });
            }
        }
    }
    out
}

/// Several shortest Weyl group elements carry `node` to `target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinimalWViolation {
    pub node: usize,
    pub target: usize,
    pub words: Vec<Word>,
}

impl fmt::Display for MinimalWViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words.iter().map(ToString::to_string).collect();
        write!(f, "node {} reaches {} through distinct shortest elements [{}]", self.node, self.target, words.join("; "))
    }
}

/// For every node `u` and every target `t`, the shortest `w` with `m(w) u = t`
/// should be unique. Reports each `(u, t)` where it is not.
pub fn minimal_w_uniqueness_check(g: &KgbGraph) -> Vec<MinimalWViolation> {
    let grp: &WeylGroup = g.group();
    let elements = grp.enumerate();
    let index = WeylGroup::index_map(&elements);
    let words: Vec<Word> = elements.iter().map(|w| grp.reduced_word(w)).collect();
    // m(s_i w') = m(s_i) m(w') with w' = s_i w shorter; the order of
    // `elements` is by length so w' is always computed first.
    let shorter: Vec<Option<(usize, usize)>> = elements
        .iter()
        .zip(&words)
        .map(|(w, word)| word.letters().first().map(|&i| (i, index[&grp.left_mul_simple(i, w)])))
        .collect();
    let lengths: Vec<usize> = words.iter().map(Word::len).collect();
    let n = g.node_count();
    let mut out: Vec<MinimalWViolation> = par::flat_map_range(n, |u| {
        let mut image = vec![u; elements.len()];
        for k in 0..elements.len() {
            if let Some((i, prev)) = shorter[k] {
                image[k] = g.monoid(i, image[prev]);
            }
        }
        let mut best: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
        for k in 0..elements.len() {
            let entry = best.entry(image[k]).or_insert((lengths[k], Vec::new()));
            if entry.0 == lengths[k] {
                entry.1.push(k);
            }
        }
        best.into_iter()
            .filter(|(_, (_, ks))| ks.len() > 1)
            .map(|(t, (_, ks))| MinimalWViolation { node: u, target: t, words: ks.iter().map(|&k| words[k].clone()).collect() })
            .collect::<Vec<_>>()
    });
    out.sort();
    out
}

/// An upward path into a type I Cayley transform with no parallel path
/// through the cross-action partner.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RewritingViolation {
    pub alpha: usize,
    pub node: usize,
    pub roots: Vec<usize>,
}

/// For every upward path `v_0 -> ... -> v_{k-1}` with `alpha` noncompact
/// type I at `v_{k-1}`, look for a path with the same roots and the same root
/// types ending at `cross(alpha, v_{k-1})`.
pub fn cayley_rewriting_check(g: &KgbGraph) -> Vec<RewritingViolation> {
    let orbit = g.orbit_graph();
    let mut out = Vec::new();
    for x in 0..g.node_count() {
        for alpha in 0..g.rank() {
            if g.root_type(alpha, x) != RootTypeLabel::NoncompactI {
                continue;
            }
            let y = g.cross_action(alpha, x);
            if g.root_type(alpha, y) != RootTypeLabel::NoncompactI {
                out.push(RewritingViolation { alpha, node: x, roots: Vec::new() });
                continue;
            }
            for rd in orbit.all_reduced_decompositions(x) {
                let types: Vec<RootTypeLabel> = rd.roots.iter().enumerate().map(|(j, &a)| g.root_type(a, rd.nodes[j])).collect();
                if !parallel_path_exists(g, y, &rd.roots, &types) {
                    out.push(RewritingViolation { alpha, node: x, roots: rd.roots.clone() });
                }
            }
        }
    }
    out.sort();
    out
}

fn parallel_path_exists(g: &KgbGraph, top: usize, roots: &[usize], types: &[RootTypeLabel]) -> bool {
    let Some((&alpha, rest)) = roots.split_last() else {
        return g.length(top) == 0;
    };
    let want = types[rest.len()];
    let fiber = g.orbit_graph().fiber(alpha, top);
    if fiber.dense != top {
        return false;
    }
    let found = fiber
        .others()
        .filter(|&z| g.length(z) + 1 == g.length(top) && g.root_type(alpha, z) == want)
        .any(|z| parallel_path_exists(g, z, rest, &types[..rest.len()]));
    found
}

/// The two ways of naming a node: climbing from a closed node, and
/// descending from the open node with a branch at every two-way step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSequences {
    pub start: usize,
    pub upward: Vec<usize>,
    pub downward: Vec<(usize, Option<usize>)>,
}

pub fn canonical_sequences(g: &KgbGraph, v: usize) -> Result<CanonicalSequences, KgbError> {
    if v >= g.node_count() {
        return Err(KgbError::NodeOutOfRange(v));
    }
    let orbit = g.orbit_graph();
    let rd = orbit.reduced_decomposition(v).map_err(|_| KgbError::Unreachable(v))?;
    let open = orbit.open_nodes();
    let [open] = open.as_slice() else {
        return Err(KgbError::NoOpenNode);
    };
    let mut steps = Vec::new();
    let mut x = v;
    while x != *open {
        let Some(alpha) = (0..g.rank()).find(|&a| g.monoid(a, x) != x) else {
            return Err(KgbError::Unreachable(v));
        };
        let y = g.monoid(alpha, x);
        let others: Vec<usize> = orbit.fiber(alpha, y).others().collect();
        let branch = if others.len() > 1 { others.iter().position(|&z| z == x) } else { None };
        steps.push((alpha, branch));
        x = y;
    }
    steps.reverse();
    Ok(CanonicalSequences { start: rd.start(), upward: rd.roots, downward: steps })
}

/// Follows a downward sequence from the open node.
pub fn replay_downward(g: &KgbGraph, seq: &[(usize, Option<usize>)]) -> Result<usize, KgbError> {
    let orbit = g.orbit_graph();
    let open = orbit.open_nodes();
    let [mut x] = open.as_slice() else {
        return Err(KgbError::NoOpenNode);
    };
    for &(alpha, branch) in seq {
        let fiber = orbit.fiber(alpha, x);
        let others: Vec<usize> = fiber.others().collect();
        if fiber.dense != x || others.is_empty() {
            return Err(KgbError::Unreachable(x));
        }
        x = match branch {
            Some(k) => *others.get(k).ok_or(KgbError::Unreachable(x))?,
            None if others.len() == 1 => others[0],
            None => return Err(KgbError::Unreachable(x)),
        };
    }
    Ok(x)
}
