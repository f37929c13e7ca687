//! Left cosets `W_L \ W` of a standard parabolic subgroup.

use std::fmt;

use thiserror::Error;

use crate::par;
use crate::root_datum::{classify_unchecked, ParabolicClass, ParabolicSubset, Root};
use crate::weyl::{WeylElt, WeylError, WeylGroup, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("cosets belong to different parabolic subsets")]
    ParabolicMismatch,
    #[error("not a positive root: {0}")]
    NotPositiveRoot(Root),
    #[error("word is not P-reduced")]
    NotPReduced,
    #[error("simple root {0} is not a downward step of the word")]
    NotDownward(usize),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// How right multiplication by `s_alpha` moves a coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepClass {
    LeviType,
    ComplexUpward,
    ComplexDownward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicCoset {
    pub subset: ParabolicSubset,
    pub min_rep: WeylElt,
    pub max_rep: WeylElt,
}

impl ParabolicCoset {
    /// Length of the minimal representative.
    pub fn p_length(&self, group: &WeylGroup) -> usize {
        group.length(&self.min_rep)
    }
}

/// Minimal representative of `W_L w`: strip left descents lying in `I`.
pub fn min_rep(group: &WeylGroup, w: &WeylElt, subset: &ParabolicSubset) -> WeylElt {
    let mut w = w.clone();
    loop {
        let Some(a) = subset.iter().find(|&a| is_left_descent(group, &w, a)) else {
            return w;
        };
        w = group.left_mul_simple(a, &w);
    }
}

fn is_left_descent(group: &WeylGroup, w: &WeylElt, a: usize) -> bool {
    // s_a w < w exactly when w^-1 sends alpha_a negative, i.e. some negative
    // root maps to alpha_a; equivalently alpha_a is not in w(positive roots).
    let n = group.rank();
    let target = Root::simple(n, a);
    group.datum().positive_roots().iter().all(|b| w.apply(b) != target)
}

pub fn coset_of(group: &WeylGroup, w: &WeylElt, subset: &ParabolicSubset) -> ParabolicCoset {
    let min = min_rep(group, w, subset);
    let w_l = group.longest_in(|i| subset.contains(i));
    let max = group.mul(&w_l, &min).expect("same group");
    ParabolicCoset { subset: subset.clone(), min_rep: min, max_rep: max }
}

/// Shortest element of its coset: no simple root of `I` is a left descent.
pub fn is_p_minimal(group: &WeylGroup, w: &WeylElt, subset: &ParabolicSubset) -> bool {
    subset.iter().all(|a| !is_left_descent(group, w, a))
}

/// Longest element of its coset: every simple root of `I` is a left descent.
pub fn is_p_maximal(group: &WeylGroup, w: &WeylElt, subset: &ParabolicSubset) -> bool {
    subset.iter().all(|a| is_left_descent(group, w, a))
}

/// Every prefix must carry the next simple root into the nilradical.
pub fn is_p_reduced(group: &WeylGroup, word: &Word, subset: &ParabolicSubset) -> bool {
    let mut w = group.identity();
    for &i in word.letters() {
        if i >= group.rank() || classify_unchecked(w.apply_simple(i), subset) != ParabolicClass::Nilradical {
            return false;
        }
        w = group.right_mul_simple(&w, i);
    }
    true
}

pub fn classify_step(
    group: &WeylGroup,
    w: &WeylElt,
    alpha: &Root,
    subset: &ParabolicSubset,
) -> Result<StepClass, ParabolicError> {
    if !group.datum().is_root(alpha) {
        return Err(WeylError::NotARoot(alpha.clone()).into());
    }
    if !alpha.is_positive() {
        return Err(ParabolicError::NotPositiveRoot(alpha.clone()));
    }
    Ok(step_class(&w.apply(alpha), subset))
}

pub(crate) fn step_class(image: &Root, subset: &ParabolicSubset) -> StepClass {
    match classify_unchecked(image, subset) {
        ParabolicClass::Levi => StepClass::LeviType,
        ParabolicClass::Nilradical => StepClass::ComplexUpward,
        ParabolicClass::OppositeNilradical => StepClass::ComplexDownward,
    }
}

pub fn coset_bruhat_leq(group: &WeylGroup, c1: &ParabolicCoset, c2: &ParabolicCoset) -> Result<bool, ParabolicError> {
    if c1.subset != c2.subset {
        return Err(ParabolicError::ParabolicMismatch);
    }
    Ok(group.bruhat_leq(&c1.min_rep, &c2.min_rep)?)
}

/// All cosets, ordered by P-length and then by the minimal representative's reduced word.
pub fn enumerate_cosets(group: &WeylGroup, subset: &ParabolicSubset) -> Vec<ParabolicCoset> {
    let w_l = group.longest_in(|i| subset.contains(i));
    group
        .enumerate()
        .into_iter()
        .filter(|w| is_p_minimal(group, w, subset))
        .map(|min| {
            let max = group.mul(&w_l, &min).expect("same group");
            ParabolicCoset { subset: subset.clone(), min_rep: min, max_rep: max }
        })
        .collect()
}

/// Position whose deletion turns a P-reduced word for `w` into one for `w s_alpha`.
pub fn quotient_exchange(
    group: &WeylGroup,
    word: &Word,
    alpha: usize,
    subset: &ParabolicSubset,
) -> Result<usize, ParabolicError> {
    if alpha >= group.rank() {
        return Err(WeylError::LetterOutOfRange(alpha + 1).into());
    }
    if !is_p_reduced(group, word, subset) {
        return Err(ParabolicError::NotPReduced);
    }
    let w = group.from_word(word)?;
    if step_class(w.apply_simple(alpha), subset) != StepClass::ComplexDownward {
        return Err(ParabolicError::NotDownward(alpha + 1));
    }
    Ok(group.exchange(word, alpha)?)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuotientZViolation {
    /// The three comparisons of property Z disagree.
    PropertyZ { simple: usize, u: Word, v: Word, values: [bool; 3] },
    /// The order rebuilt from the two characterising properties differs from Bruhat order.
    Rederivation { u: Word, v: Word, bruhat: bool, derived: bool },
}

impl fmt::Display for QuotientZViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientZViolation::PropertyZ { simple, u, v, values } => {
                write!(f, "property Z fails at s{} for u={} v={} ({:?})", simple + 1, u, v, values)
            }
            QuotientZViolation::Rederivation { u, v, bruhat, derived } => {
                write!(f, "rederived order differs at u={} v={} (bruhat {}, derived {})", u, v, bruhat, derived)
            }
        }
    }
}

/// Coset data used by the quotient checks: for each coset and simple index,
/// the index of the coset `W_L u s` and its step class.
struct CosetTable {
    cosets: Vec<ParabolicCoset>,
    lengths: Vec<usize>,
    step: Vec<Vec<(usize, StepClass)>>,
    leq: Vec<Vec<bool>>,
}

impl CosetTable {
    fn new(group: &WeylGroup, subset: &ParabolicSubset) -> Self {
        let cosets = enumerate_cosets(group, subset);
        let index = WeylGroup::index_map(&cosets.iter().map(|c| c.min_rep.clone()).collect::<Vec<_>>());
        let lengths: Vec<usize> = cosets.iter().map(|c| group.length(&c.min_rep)).collect();
        let step = cosets
            .iter()
            .map(|c| {
                (0..group.rank())
                    .map(|s| {
                        let class = step_class(c.min_rep.apply_simple(s), subset);
                        let target = min_rep(group, &group.right_mul_simple(&c.min_rep, s), subset);
                        (index[&target], class)
                    })
                    .collect()
            })
            .collect();
        let n = cosets.len();
        let leq = par::map_range(n, |u| {
            (0..n).map(|v| group.bruhat_leq(&cosets[u].min_rep, &cosets[v].min_rep).expect("same group")).collect()
        });
        CosetTable { cosets, lengths, step, leq }
    }
}

/// Checks property Z on `W_L \ W` and that the order is recovered from it.
///
/// A step `W_L u -> W_L u s` counts as "not raising" when the P-length does
/// not grow, so Levi-type steps (which fix the coset) are included.
pub fn quotient_property_z_check(group: &WeylGroup, subset: &ParabolicSubset) -> Vec<QuotientZViolation> {
    let t = CosetTable::new(group, subset);
    let n = t.cosets.len();
    let word = |k: usize| group.reduced_word(&t.cosets[k].min_rep);
    let mut out: Vec<QuotientZViolation> = par::flat_map_range(n, |u| {
        let mut found = Vec::new();
        for v in 0..n {
            for s in 0..group.rank() {
                let (us, _) = t.step[u][s];
                let (vs, _) = t.step[v][s];
                if t.lengths[us] > t.lengths[u] || t.lengths[vs] > t.lengths[v] {
                    continue;
                }
                let values = [t.leq[u][v], t.leq[us][v], t.leq[us][vs]];
                if values[0] != values[1] || values[1] != values[2] {
                    found.push(QuotientZViolation::PropertyZ { simple: s, u: word(u), v: word(v), values });
                }
            }
        }
        found
    });

    let derived = rederive_order(&t);
    for u in 0..n {
        for v in 0..n {
            if derived[u][v] != t.leq[u][v] {
                out.push(QuotientZViolation::Rederivation { u: word(u), v: word(v), bruhat: t.leq[u][v], derived: derived[u][v] });
            }
        }
    }
    out.sort();
    out
}

/// The order forced by "only the identity coset lies below it" plus property Z.
fn rederive_order(t: &CosetTable) -> Vec<Vec<bool>> {
    let n = t.cosets.len();
    let mut by_len: Vec<usize> = (0..n).collect();
    by_len.sort_by_key(|&k| t.lengths[k]);
    let mut leq = vec![vec![false; n]; n];
    for &v in &by_len {
        let descent = t.step[v].iter().position(|&(_, c)| c == StepClass::ComplexDownward);
        for u in 0..n {
            leq[u][v] = match descent {
                None => t.lengths[u] == 0,
                Some(s) => {
                    let vs = t.step[v][s].0;
                    match t.step[u][s].1 {
                        StepClass::ComplexDownward => leq[t.step[u][s].0][vs],
                        _ => leq[u][vs],
                    }
                }
            };
        }
    }
    leq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::RootDatum;

    fn setup(t: &str, idx: &[usize]) -> (WeylGroup, ParabolicSubset) {
        let g = WeylGroup::new(RootDatum::of_type(t).unwrap());
        (g, ParabolicSubset::from_indices(idx.iter().map(|i| i - 1)))
    }

    fn el(g: &WeylGroup, letters: &[usize]) -> WeylElt {
        g.from_word(&Word(letters.iter().map(|i| i - 1).collect())).unwrap()
    }

    #[test]
    fn coset_examples() {
        let (g, i) = setup("A2", &[1]);
        let e = g.identity();
        assert_eq!(coset_of(&g, &e, &i).min_rep, e);
        let c = coset_of(&g, &el(&g, &[1]), &i);
        assert_eq!((c.min_rep, c.max_rep), (e.clone(), el(&g, &[1])));
        let c = coset_of(&g, &el(&g, &[1, 2]), &i);
        assert_eq!((c.min_rep, c.max_rep), (el(&g, &[2]), el(&g, &[1, 2])));
    }

    #[test]
    fn minimality_examples() {
        let (g, i) = setup("A2", &[1]);
        assert!(is_p_minimal(&g, &g.identity(), &i));
        assert!(is_p_minimal(&g, &el(&g, &[2, 1]), &i));
        assert!(!is_p_minimal(&g, &el(&g, &[1]), &i));
        // s1 is the longer element of W_L itself.
        assert!(is_p_maximal(&g, &el(&g, &[1]), &i));
        assert!(is_p_maximal(&g, &el(&g, &[1, 2]), &i));
        assert!(!is_p_maximal(&g, &el(&g, &[2]), &i));
    }

    #[test]
    fn p_reduced_examples() {
        let (g, i) = setup("A2", &[1]);
        assert!(is_p_reduced(&g, &Word::default(), &i));
        assert!(is_p_reduced(&g, &Word(vec![1, 0]), &i));
        assert!(!is_p_reduced(&g, &Word(vec![0]), &i));
    }

    #[test]
    fn step_examples() {
        let (g, i) = setup("A2", &[1]);
        let e = g.identity();
        let (a1, a2) = (Root(vec![1, 0]), Root(vec![0, 1]));
        assert_eq!(classify_step(&g, &e, &a1, &i).unwrap(), StepClass::LeviType);
        assert_eq!(classify_step(&g, &e, &a2, &i).unwrap(), StepClass::ComplexUpward);
        assert_eq!(classify_step(&g, &el(&g, &[2]), &a2, &i).unwrap(), StepClass::ComplexDownward);
        assert!(matches!(classify_step(&g, &e, &a1.neg(), &i), Err(ParabolicError::NotPositiveRoot(_))));
    }

    #[test]
    fn order_examples() {
        let (g, i) = setup("A2", &[1]);
        let c = |l: &[usize]| coset_of(&g, &el(&g, l), &i);
        assert!(coset_bruhat_leq(&g, &c(&[2]), &c(&[2])).unwrap());
        assert!(coset_bruhat_leq(&g, &c(&[]), &c(&[2])).unwrap());
        assert!(!coset_bruhat_leq(&g, &c(&[2, 1]), &c(&[2])).unwrap());
        let other = coset_of(&g, &g.identity(), &ParabolicSubset::empty());
        assert_eq!(coset_bruhat_leq(&g, &c(&[]), &other), Err(ParabolicError::ParabolicMismatch));
    }

    #[test]
    fn coset_counts() {
        assert_eq!(enumerate_cosets(&setup("A2", &[]).0, &ParabolicSubset::empty()).len(), 6);
        let (g, i) = setup("A2", &[1]);
        assert_eq!(enumerate_cosets(&g, &i).len(), 3);
        let (g, i) = setup("B2", &[1]);
        assert_eq!(enumerate_cosets(&g, &i).len(), 4);
    }

    #[test]
    fn exchange_examples() {
        let (g, i) = setup("A2", &[1]);
        assert_eq!(quotient_exchange(&g, &Word(vec![1]), 1, &i).unwrap(), 0);
        assert_eq!(quotient_exchange(&g, &Word(vec![1, 0]), 0, &i).unwrap(), 1);
        assert_eq!(quotient_exchange(&g, &Word(vec![0]), 0, &i), Err(ParabolicError::NotPReduced));
        assert_eq!(quotient_exchange(&g, &Word(vec![1]), 0, &i), Err(ParabolicError::NotDownward(1)));
    }

    #[test]
    fn property_z_small_cases() {
        let (g, _) = setup("A1", &[]);
        assert!(quotient_property_z_check(&g, &ParabolicSubset::empty()).is_empty());
        let (g, i) = setup("A2", &[1]);
        assert!(quotient_property_z_check(&g, &i).is_empty());
        let (g, i) = setup("B2", &[2]);
        assert!(quotient_property_z_check(&g, &i).is_empty());
    }
}
