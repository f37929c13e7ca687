//! Weyl group arithmetic on the images of simple roots.
//!
//! An element is stored as the tuple `(w(alpha_1), ..., w(alpha_n))`, which
//! determines it uniquely and makes equality and hashing cheap. Words are
//! sequences of 0-based simple indices; positions returned by the exchange
//! operations are 0-based as well.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::root_datum::{Root, RootDatum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("elements belong to different root data")]
    DatumMismatch,
    #[error("not a root: {0}")]
    NotARoot(Root),
    #[error("not a positive root: {0}")]
    NotPositiveRoot(Root),
    #[error("word is not reduced")]
    NotReduced,
    #[error("simple root {0} is not a descent of the word")]
    NotADescent(usize),
    #[error("letter {0} out of range")]
    LetterOutOfRange(usize),
    #[error("cannot parse word `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    images: Vec<Root>,
}

impl WeylElt {
    pub fn images(&self) -> &[Root] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// Linear action on a vector in root coordinates.
    pub fn apply(&self, beta: &Root) -> Root {
        let n = self.rank();
        let mut c = vec![0; n];
        for (j, &b) in beta.0.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for (k, &x) in self.images[j].0.iter().enumerate() {
                c[k] += b * x;
            }
        }
        Root(c)
    }

    pub fn apply_simple(&self, i: usize) -> &Root {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, r)| r.0.iter().enumerate().all(|(k, &c)| c == (i == k) as i32))
    }
}

/// A finite sequence of simple reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word with the letter at `pos` removed.
    pub fn delete(&self, pos: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(pos);
        Word(v)
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Parse `1,2,1`; the empty string and `e` denote the empty word.
    pub fn parse(s: &str) -> Result<Word, WeylError> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::default());
        }
        let mut out = Vec::new();
        for tok in s.split(',') {
            let k: usize = tok.trim().parse().map_err(|_| WeylError::Parse(s.to_string()))?;
            if k == 0 {
                return Err(WeylError::LetterOutOfRange(0));
            }
            out.push(k - 1);
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    /// Comma-separated 1-based letters; the empty word prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Direction of `w -> w s_alpha` for a positive root `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    datum: RootDatum,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Self {
        WeylGroup { datum }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    fn check(&self, w: &WeylElt) -> Result<(), WeylError> {
        if w.rank() != self.rank() {
            Err(WeylError::DatumMismatch)
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> WeylElt {
        let n = self.rank();
        WeylElt { images: (0..n).map(|i| Root::simple(n, i)).collect() }
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        let n = self.rank();
        WeylElt { images: (0..n).map(|j| self.datum.reflect_unchecked(i, &Root::simple(n, j))).collect() }
    }

    /// `w * s_i`.
    pub fn right_mul_simple(&self, w: &WeylElt, i: usize) -> WeylElt {
        let n = self.rank();
        WeylElt { images: (0..n).map(|j| w.apply(&self.datum.reflect_unchecked(i, &Root::simple(n, j)))).collect() }
    }

    /// `s_i * w`.
    pub fn left_mul_simple(&self, i: usize, w: &WeylElt) -> WeylElt {
        WeylElt { images: w.images.iter().map(|r| self.datum.reflect_unchecked(i, r)).collect() }
    }

    /// Product of the letters, left to right.
    pub fn from_word(&self, word: &Word) -> Result<WeylElt, WeylError> {
        let mut w = self.identity();
        for &i in word.letters() {
            if i >= self.rank() {
                return Err(WeylError::LetterOutOfRange(i + 1));
            }
            w = self.right_mul_simple(&w, i);
        }
        Ok(w)
    }

    pub fn mul(&self, u: &WeylElt, v: &WeylElt) -> Result<WeylElt, WeylError> {
        self.check(u)?;
        self.check(v)?;
        Ok(WeylElt { images: v.images.iter().map(|r| u.apply(r)).collect() })
    }

    pub fn inv(&self, u: &WeylElt) -> Result<WeylElt, WeylError> {
        self.check(u)?;
        let n = self.rank();
        let mut images = vec![None; n];
        // u permutes the roots; invert it on the preimages of the simple roots.
        for beta in self.datum.all_roots() {
            let img = u.apply(&beta);
            if img.height() == 1 && img.is_positive() {
                let i = img.support().next().expect("simple root has support");
                images[i] = Some(beta);
            }
        }
        Ok(WeylElt { images: images.into_iter().map(|r| r.expect("u permutes the roots")).collect() })
    }

    pub fn act_on_root(&self, w: &WeylElt, beta: &Root) -> Result<Root, WeylError> {
        self.check(w)?;
        if !self.datum.is_root(beta) {
            return Err(WeylError::NotARoot(beta.clone()));
        }
        Ok(w.apply(beta))
    }

    pub fn length(&self, w: &WeylElt) -> usize {
        self.datum.positive_roots().iter().filter(|b| w.apply(b).is_negative()).count()
    }

    /// Every prefix must send the next letter's simple root to a positive root.
    pub fn is_reduced(&self, word: &Word) -> bool {
        let mut w = self.identity();
        for &i in word.letters() {
            if i >= self.rank() || !w.apply_simple(i).is_positive() {
                return false;
            }
            w = self.right_mul_simple(&w, i);
        }
        true
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self, w: &WeylElt) -> Word {
        // Peel the smallest left descent of w, i.e. right descent of w^-1.
        let mut u = self.inv(w).expect("element of this group");
        let mut out = Vec::new();
        loop {
            match (0..self.rank()).find(|&i| u.apply_simple(i).is_negative()) {
                Some(i) => {
                    out.push(i);
                    u = self.right_mul_simple(&u, i);
                }
                None => break,
            }
        }
        Word(out)
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn all_reduced_words(&self, w: &WeylElt) -> Vec<Word> {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        self.collect_reduced_words(w, &mut suffix, &mut out);
        for word in &mut out {
            word.0.reverse();
        }
        out.sort();
        out
    }

    fn collect_reduced_words(&self, w: &WeylElt, suffix: &mut Vec<usize>, out: &mut Vec<Word>) {
        let descents: Vec<usize> = (0..self.rank()).filter(|&i| w.apply_simple(i).is_negative()).collect();
        if descents.is_empty() {
            out.push(Word(suffix.clone()));
            return;
        }
        for i in descents {
            suffix.push(i);
            let next = self.right_mul_simple(w, i);
            self.collect_reduced_words(&next, suffix, out);
            suffix.pop();
        }
    }

    pub fn descent_direction(&self, w: &WeylElt, alpha: &Root) -> Result<Direction, WeylError> {
        self.check(w)?;
        if !self.datum.is_root(alpha) {
            return Err(WeylError::NotARoot(alpha.clone()));
        }
        if !alpha.is_positive() {
            return Err(WeylError::NotPositiveRoot(alpha.clone()));
        }
        Ok(if w.apply(alpha).is_positive() { Direction::Up } else { Direction::Down })
    }

    /// Elements obtained as products of reduced subwords of the canonical
    /// reduced word of `v`.
    pub fn reduced_subword_products(&self, v: &WeylElt) -> HashSet<WeylElt> {
        self.reduced_subword_products_of(&self.reduced_word(v))
    }

    pub fn reduced_subword_products_of(&self, word: &Word) -> HashSet<WeylElt> {
        let mut frontier: HashSet<WeylElt> = HashSet::from([self.identity()]);
        for &i in word.letters() {
            let mut next = frontier.clone();
            for u in &frontier {
                // Keep the subword reduced: the new letter must raise length.
                if u.apply_simple(i).is_positive() {
                    next.insert(self.right_mul_simple(u, i));
                }
            }
            frontier = next;
        }
        frontier
    }

    /// Subword characterisation: `u <= v` iff a reduced word of `u` is a
    /// subsequence of a fixed reduced word of `v`.
    pub fn bruhat_leq_subword(&self, u: &WeylElt, v: &WeylElt) -> Result<bool, WeylError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.reduced_subword_products(v).contains(u))
    }

    /// Bruhat order through the lifting rule: with `v s < v`,
    /// `u <= v` iff `min(u, u s) <= v s`.
    pub fn bruhat_leq(&self, u: &WeylElt, v: &WeylElt) -> Result<bool, WeylError> {
        self.check(u)?;
        self.check(v)?;
        let (mut u, mut v) = (u.clone(), v.clone());
        loop {
            let Some(i) = (0..self.rank()).find(|&i| v.apply_simple(i).is_negative()) else {
                return Ok(u.is_identity());
            };
            if u.apply_simple(i).is_negative() {
                u = self.right_mul_simple(&u, i);
            }
            v = self.right_mul_simple(&v, i);
        }
    }

    /// Position `j` such that deleting letter `j` gives a reduced word for `w s_alpha`.
    pub fn exchange(&self, word: &Word, alpha: usize) -> Result<usize, WeylError> {
        if alpha >= self.rank() {
            return Err(WeylError::LetterOutOfRange(alpha + 1));
        }
        if !self.is_reduced(word) {
            return Err(WeylError::NotReduced);
        }
        let w = self.from_word(word)?;
        if !w.apply_simple(alpha).is_negative() {
            return Err(WeylError::NotADescent(alpha + 1));
        }
        // Walk the root backwards until it becomes the simple root of a letter.
        let mut gamma = self.datum.simple_root(alpha);
        for (j, &i) in word.letters().iter().enumerate().rev() {
            if gamma == self.datum.simple_root(i) {
                return Ok(j);
            }
            gamma = self.datum.reflect_unchecked(i, &gamma);
        }
        unreachable!("a descent of a reduced word always has an exchange position")
    }

    /// The whole group, ordered by length and then canonical reduced word.
    pub fn enumerate(&self) -> Vec<WeylElt> {
        let mut seen: HashSet<WeylElt> = HashSet::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let x = self.right_mul_simple(&w, i);
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        let mut keyed: Vec<(usize, Word, WeylElt)> =
            seen.into_iter().map(|w| (self.length(&w), self.reduced_word(&w), w)).collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        keyed.into_iter().map(|(_, _, w)| w).collect()
    }

    /// Index of every element of `enumerate()`.
    pub fn index_map(elements: &[WeylElt]) -> HashMap<WeylElt, usize> {
        elements.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect()
    }

    pub fn longest_element(&self) -> WeylElt {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| w.apply_simple(i).is_positive()) {
            w = self.right_mul_simple(&w, i);
        }
        w
    }

    /// Longest element of the parabolic subgroup generated by `subset`.
    pub fn longest_in(&self, subset: impl Fn(usize) -> bool) -> WeylElt {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| subset(i) && w.apply_simple(i).is_positive()) {
            w = self.right_mul_simple(&w, i);
        }
        w
    }

    /// Reflection in a root, built by conjugating a simple reflection.
    pub fn reflection(&self, beta: &Root) -> Result<WeylElt, WeylError> {
        if !self.datum.is_root(beta) {
            return Err(WeylError::NotARoot(beta.clone()));
        }
        let beta = if beta.is_positive() { beta.clone() } else { beta.neg() };
        if beta.height() == 1 {
            return Ok(self.simple_reflection(beta.support().next().expect("nonzero")));
        }
        let i = (0..self.rank())
            .find(|&i| self.datum.coroot_pairing(&beta, i) > 0)
            .expect("a non-simple positive root pairs positively with some simple coroot");
        let lower = self.datum.reflect_unchecked(i, &beta);
        let inner = self.reflection(&lower)?;
        Ok(self.left_mul_simple(i, &self.right_mul_simple(&inner, i)))
    }

    /// The diagram involution acting on `W`: `theta(w) = theta o w o theta^-1`.
    pub fn twist(&self, w: &WeylElt) -> WeylElt {
        let t = self.datum.twist();
        let n = self.rank();
        let mut images = vec![Root(vec![0; n]); n];
        for i in 0..n {
            images[t[i]] = self.datum.twist_root(&w.images[i]);
        }
        WeylElt { images }
    }

    /// Whether `theta(w) = w^-1`.
    pub fn is_twisted_involution(&self, w: &WeylElt) -> bool {
        self.twist(w) == self.inv(w).expect("element of this group")
    }

    pub fn format(&self, w: &WeylElt) -> String {
        self.reduced_word(w).to_string()
    }

    pub fn parse_element(&self, s: &str) -> Result<WeylElt, WeylError> {
        let word = Word::parse(s)?;
        self.from_word(&word)
    }
}
