//! Graphs built from data: hand-written fixtures, the diagonal group case and
//! the twisted-involution shadow.

use std::collections::VecDeque;

use crate::root_datum::{CartanSpec, Isogeny, RootDatum};
use crate::weyl::{WeylElt, WeylGroup, Word};

use super::{KgbGraph, KgbNode, Label, RootTypeLabel};

/// All `w` with `theta(w) = w^-1`, in the order of [`WeylGroup::enumerate`].
pub fn twisted_involutions(datum: &RootDatum) -> Vec<WeylElt> {
    let g = WeylGroup::new(datum.clone());
    g.enumerate().into_iter().filter(|w| g.is_twisted_involution(w)).collect()
}

fn label(kind: RootTypeLabel, cross: usize, cayley: Option<usize>) -> Label {
    Label { kind, cross, cayley }
}

fn a1(isogeny: Isogeny) -> RootDatum {
    RootDatum::new(CartanSpec::from_type("A1").expect("built-in type"), isogeny, None).expect("A1 is valid")
}

/// Split real form of `SL(2)`: two closed nodes swapped by the cross action,
/// both Cayley-transforming to the open node.
pub fn sl2_split() -> KgbGraph {
    let d = a1(Isogeny::SimplyConnected);
    let g = WeylGroup::new(d.clone());
    let (e, s) = (g.identity(), g.simple_reflection(0));
    let nodes = vec![
        KgbNode { length: 0, tw: e.clone(), labels: vec![label(RootTypeLabel::NoncompactI, 1, Some(2))] },
        KgbNode { length: 0, tw: e, labels: vec![label(RootTypeLabel::NoncompactI, 0, Some(2))] },
        KgbNode { length: 1, tw: s, labels: vec![label(RootTypeLabel::RealI, 2, None)] },
    ];
    KgbGraph::new(d, nodes).expect("fixture satisfies the axioms")
}

/// Split real form of `PGL(2)`: one closed node, one open node, type II.
pub fn pgl2_split() -> KgbGraph {
    let d = a1(Isogeny::Adjoint);
    let g = WeylGroup::new(d.clone());
    let nodes = vec![
        KgbNode { length: 0, tw: g.identity(), labels: vec![label(RootTypeLabel::NoncompactII, 0, Some(1))] },
        KgbNode { length: 1, tw: g.simple_reflection(0), labels: vec![label(RootTypeLabel::RealII, 1, None)] },
    ];
    KgbGraph::new(d, nodes).expect("fixture satisfies the axioms")
}

/// `A1 x A1` with the twist exchanging the factors; both roots are complex.
pub fn a1xa1_swap() -> KgbGraph {
    let d = RootDatum::of_type("A1xA1").expect("built-in type").with_twist(vec![1, 0]).expect("swap is a diagram involution");
    let g = WeylGroup::new(d.clone());
    let top = g.from_word(&Word(vec![0, 1])).expect("valid word");
    let nodes = vec![
        KgbNode {
            length: 0,
            tw: g.identity(),
            labels: vec![label(RootTypeLabel::ComplexAscent, 1, None), label(RootTypeLabel::ComplexAscent, 1, None)],
        },
        KgbNode {
            length: 1,
            tw: top,
            labels: vec![label(RootTypeLabel::ComplexDescent, 0, None), label(RootTypeLabel::ComplexDescent, 0, None)],
        },
    ];
    KgbGraph::new(d, nodes).expect("fixture satisfies the axioms")
}

/// `G` viewed as the symmetric space `(G x G) / diagonal`.
///
/// The datum is doubled with the twist swapping the copies. Node `k` is the
/// `k`-th element `x` of [`WeylGroup::enumerate`], with twisted involution
/// `(x, x^-1)` and length `l(x)`. Roots of the first copy act by left
/// multiplication `x -> s_i x`, roots of the second copy by right
/// multiplication `x -> x s_i`.
pub fn group_case(datum: &RootDatum) -> KgbGraph {
    let small = WeylGroup::new(datum.clone());
    let doubled = datum.doubled_with_swap();
    let big = WeylGroup::new(doubled.clone());
    let n = small.rank();
    let elements = small.enumerate();
    let index = WeylGroup::index_map(&elements);
    let nodes = elements
        .iter()
        .map(|x| {
            let inv = small.inv(x).expect("same group");
            let mut word = small.reduced_word(x).0;
            word.extend(small.reduced_word(&inv).0.iter().map(|i| i + n));
            let tw = big.from_word(&Word(word)).expect("valid word");
            let mut labels = Vec::with_capacity(2 * n);
            for i in 0..n {
                let up = inv.apply_simple(i).is_positive();
                let kind = if up { RootTypeLabel::ComplexAscent } else { RootTypeLabel::ComplexDescent };
                labels.push(label(kind, index[&small.left_mul_simple(i, x)], None));
            }
            for i in 0..n {
                let up = x.apply_simple(i).is_positive();
                let kind = if up { RootTypeLabel::ComplexAscent } else { RootTypeLabel::ComplexDescent };
                labels.push(label(kind, index[&small.right_mul_simple(x, i)], None));
            }
            KgbNode { length: small.length(x), tw, labels }
        })
        .collect();
    KgbGraph::new(doubled, nodes).expect("group case satisfies the axioms")
}

/// Synthetic graph on the twisted involutions of `datum`.
///
/// Every imaginary root is declared noncompact of type II, every real root
/// type II, and complex roots follow the sign of `w theta(alpha)`. Lengths
/// are assigned by breadth-first search from the identity. This is a test
/// harness for the axioms, not the orbit set of any particular real form.
pub fn twisted_involution_shadow(datum: &RootDatum) -> Result<KgbGraph, super::KgbError> {
    let g = WeylGroup::new(datum.clone());
    let tws = twisted_involutions(datum);
    let index = WeylGroup::index_map(&tws);
    let twist = datum.twist().to_vec();
    let rank = g.rank();
    let mut labels: Vec<Vec<Label>> = Vec::with_capacity(tws.len());
    for (k, w) in tws.iter().enumerate() {
        let mut row = Vec::with_capacity(rank);
        for alpha in 0..rank {
            let a = datum.simple_root(alpha);
            let img = w.apply(&datum.simple_root(twist[alpha]));
            let l = if img == a {
                label(RootTypeLabel::NoncompactII, k, Some(index[&g.left_mul_simple(alpha, w)]))
            } else if img == a.neg() {
                label(RootTypeLabel::RealII, k, None)
            } else {
                let crossed = g.left_mul_simple(alpha, &g.right_mul_simple(w, twist[alpha]));
                let kind = if img.is_positive() { RootTypeLabel::ComplexAscent } else { RootTypeLabel::ComplexDescent };
                label(kind, index[&crossed], None)
            };
            row.push(l);
        }
        labels.push(row);
    }
    let mut lengths = vec![usize::MAX; tws.len()];
    let start = index[&g.identity()];
    lengths[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for l in &labels[v] {
            let up = match l.kind {
                RootTypeLabel::ComplexAscent => Some(l.cross),
                RootTypeLabel::NoncompactII => l.cayley,
                _ => None,
            };
            if let Some(u) = up {
                if lengths[u] == usize::MAX {
                    lengths[u] = lengths[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    let nodes = tws
        .into_iter()
        .zip(labels)
        .zip(lengths)
        .map(|((tw, labels), length)| KgbNode { length: if length == usize::MAX { 0 } else { length }, tw, labels })
        .collect();
    KgbGraph::new(datum.clone(), nodes)
}

/// The shipped fixtures, by file stem.
pub fn fixtures() -> Vec<(&'static str, KgbGraph)> {
    let ty = |t: &str| RootDatum::of_type(t).expect("built-in type");
    vec![
        ("sl2_split", sl2_split()),
        ("pgl2_split", pgl2_split()),
        ("a1xa1_swap", a1xa1_swap()),
        ("group_a1", group_case(&ty("A1"))),
        ("group_a2", group_case(&ty("A2"))),
        ("group_b2", group_case(&ty("B2"))),
        ("group_g2", group_case(&ty("G2"))),
        ("group_a3", group_case(&ty("A3"))),
    ]
}
