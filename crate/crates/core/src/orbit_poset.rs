//! Orbit graphs: finitely many orbits, a length on each, and for every simple
//! root a partition of the orbits into fibers of size 1, 2 or 3 with a unique
//! dense member. Everything else (monoid action, decompositions, order) is
//! derived from that data.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::par;
use crate::parabolic::{enumerate_cosets, min_rep, step_class, StepClass};
use crate::root_datum::{ParabolicSubset, RootDatum};
use crate::weyl::{WeylGroup, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("node {0} cannot be reached from a closed node")]
    Unreachable(usize),
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fiber {
    pub dense: usize,
    /// Sorted, includes `dense`.
    pub members: Vec<usize>,
}

impl Fiber {
    pub fn new(dense: usize, others: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = others.into_iter().collect();
        members.push(dense);
        members.sort_unstable();
        members.dedup();
        Fiber { dense, members }
    }

    pub fn singleton(node: usize) -> Self {
        Fiber { dense: node, members: vec![node] }
    }

    pub fn others(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied().filter(move |&x| x != self.dense)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Axiom violations reported by [`OrbitGraph::validate`]. Simple indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitViolation {
    FiberTooLarge { alpha: usize, node: usize },
    NoDenseNode { alpha: usize, node: usize },
    LengthGap { alpha: usize, node: usize },
    FiberPartition { alpha: usize, node: usize },
    NoClosedNode,
    Unreachable { node: usize },
}

impl OrbitViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            OrbitViolation::FiberTooLarge { .. } => "FiberTooLarge",
            OrbitViolation::NoDenseNode { .. } => "NoDenseNode",
            OrbitViolation::LengthGap { .. } => "LengthGap",
            OrbitViolation::FiberPartition { .. } => "FiberPartition",
            OrbitViolation::NoClosedNode => "NoClosedNode",
            OrbitViolation::Unreachable { .. } => "Unreachable",
        }
    }
}

impl fmt::Display for OrbitViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitViolation::FiberTooLarge { alpha, node }
            | OrbitViolation::NoDenseNode { alpha, node }
            | OrbitViolation::LengthGap { alpha, node }
            | OrbitViolation::FiberPartition { alpha, node } => {
                write!(f, "{}: alpha {} node {}", self.axiom(), alpha + 1, node)
            }
            OrbitViolation::NoClosedNode => write!(f, "NoClosedNode"),
            OrbitViolation::Unreachable { node } => write!(f, "Unreachable: node {}", node),
        }
    }
}

/// A failure of property Z at simple root `alpha` for `u1 -> u2`, `v1 -> v2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PropertyZViolation {
    pub alpha: usize,
    pub u1: usize,
    pub v1: usize,
    pub values: [bool; 3],
}

impl fmt::Display for PropertyZViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "property Z fails at alpha {} for u1={} v1={} ({:?})", self.alpha + 1, self.u1, self.v1, self.values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedDecomposition {
    pub nodes: Vec<usize>,
    pub roots: Vec<usize>,
}

impl ReducedDecomposition {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn start(&self) -> usize {
        self.nodes[0]
    }

    pub fn end(&self) -> usize {
        *self.nodes.last().expect("decomposition has a start node")
    }
}

const MISSING: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct OrbitGraph {
    rank: usize,
    rootsystem: String,
    lengths: Vec<usize>,
    names: Vec<String>,
    fibers: Vec<Vec<Fiber>>,
    owner: Vec<Vec<usize>>,
    duplicates: Vec<(usize, usize)>,
    order: OnceLock<Vec<Vec<bool>>>,
}

impl PartialEq for OrbitGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.lengths == other.lengths && self.canonical_fibers() == other.canonical_fibers()
    }
}

impl OrbitGraph {
    /// Builds a graph from per-root fiber lists; `fibers[alpha]` lists the
    /// fibers for simple index `alpha`. Nothing is checked here; see [`validate`](Self::validate).
    pub fn new(rank: usize, rootsystem: impl Into<String>, lengths: Vec<usize>, fibers: Vec<Vec<Fiber>>) -> Self {
        let n = lengths.len();
        let mut fibers = fibers;
        fibers.resize(rank, Vec::new());
        let mut owner = vec![vec![MISSING; n]; rank];
        let mut duplicates = Vec::new();
        for (alpha, list) in fibers.iter().enumerate() {
            for (k, fib) in list.iter().enumerate() {
                for &m in &fib.members {
                    if m >= n {
                        continue;
                    }
                    if owner[alpha][m] == MISSING {
                        owner[alpha][m] = k;
                    } else {
                        duplicates.push((alpha, m));
                    }
                }
            }
        }
        OrbitGraph {
            rank,
            rootsystem: rootsystem.into(),
            names: (0..n).map(|i| i.to_string()).collect(),
            lengths,
            fibers,
            owner,
            duplicates,
            order: OnceLock::new(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.lengths.len());
        self.names = names;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rootsystem(&self) -> &str {
        &self.rootsystem
    }

    pub fn node_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn length(&self, x: usize) -> usize {
        self.lengths[x]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn fibers(&self, alpha: usize) -> &[Fiber] {
        &self.fibers[alpha]
    }

    /// The fiber through `x` for simple index `alpha`. On graphs failing the
    /// partition axiom a missing fiber is treated as the singleton `{x}`.
    pub fn fiber(&self, alpha: usize, x: usize) -> Fiber {
        match self.owner[alpha][x] {
            MISSING => Fiber::singleton(x),
            k => self.fibers[alpha][k].clone(),
        }
    }

    fn fiber_ref(&self, alpha: usize, x: usize) -> Option<&Fiber> {
        match self.owner[alpha][x] {
            MISSING => None,
            k => Some(&self.fibers[alpha][k]),
        }
    }

    fn dense_of(&self, alpha: usize, x: usize) -> usize {
        self.fiber_ref(alpha, x).map_or(x, |f| f.dense)
    }

    pub fn closed_nodes(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&x| self.lengths[x] == 0).collect()
    }

    /// Nodes of maximal length.
    pub fn open_nodes(&self) -> Vec<usize> {
        let max = self.lengths.iter().copied().max().unwrap_or(0);
        (0..self.node_count()).filter(|&x| self.lengths[x] == max).collect()
    }

    pub fn validate(&self) -> Vec<OrbitViolation> {
        let n = self.node_count();
        let mut out = Vec::new();
        for &(alpha, node) in &self.duplicates {
            out.push(OrbitViolation::FiberPartition { alpha, node });
        }
        for (alpha, list) in self.fibers.iter().enumerate() {
            for fib in list {
                let owner = fib.dense;
                if fib.members.iter().any(|&m| m >= n) || !fib.members.contains(&fib.dense) {
                    out.push(OrbitViolation::FiberPartition { alpha, node: owner.min(n.saturating_sub(1)) });
                    continue;
                }
                if fib.len() > 3 {
                    out.push(OrbitViolation::FiberTooLarge { alpha, node: owner });
                }
                let top = fib.members.iter().map(|&m| self.lengths[m]).max().unwrap_or(0);
                let tops = fib.members.iter().filter(|&&m| self.lengths[m] == top).count();
                if tops != 1 || self.lengths[fib.dense] != top {
                    out.push(OrbitViolation::NoDenseNode { alpha, node: owner });
                    continue;
                }
                for m in fib.others() {
                    if self.lengths[m] + 1 != top {
                        out.push(OrbitViolation::LengthGap { alpha, node: m });
                    }
                }
            }
            for x in 0..n {
                if self.owner[alpha][x] == MISSING {
                    out.push(OrbitViolation::FiberPartition { alpha, node: x });
                }
            }
        }
        if n == 0 || self.closed_nodes().is_empty() {
            out.push(OrbitViolation::NoClosedNode);
        }
        for x in 0..n {
            if self.lengths[x] > 0 && self.descent(x).is_none() {
                out.push(OrbitViolation::Unreachable { node: x });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `m(alpha) x`: the dense node of the fiber through `x`.
    pub fn monoid_apply(&self, alpha: usize, x: usize) -> usize {
        self.dense_of(alpha, x)
    }

    /// Applies `m(a_1)`, then `m(a_2)`, and so on.
    pub fn monoid_apply_sequence(&self, seq: &[usize], x: usize) -> usize {
        seq.iter().fold(x, |y, &a| self.monoid_apply(a, y))
    }

    /// `m(w) x` for `w = s_{i_1} ... s_{i_k}`: the rightmost letter acts first.
    pub fn monoid_apply_word(&self, word: &Word, x: usize) -> usize {
        word.letters().iter().rev().fold(x, |y, &a| self.monoid_apply(a, y))
    }

    /// Smallest simple index at which `x` is dense in a fiber of size at least 2,
    /// with the smallest non-dense member of that fiber.
    pub fn descent(&self, x: usize) -> Option<(usize, usize)> {
        (0..self.rank).find_map(|alpha| {
            let f = self.fiber_ref(alpha, x)?;
            if f.dense == x {
                f.others().next().map(|y| (alpha, y))
            } else {
                None
            }
        })
    }

    /// Whether `u -> x` at `alpha`: `u` is not dense and `x` is the dense node of its fiber.
    pub fn is_simple_relation(&self, alpha: usize, u: usize, x: usize) -> bool {
        u != x && self.fiber_ref(alpha, u).is_some_and(|f| f.dense == x)
    }

    pub fn reduced_decomposition(&self, v: usize) -> Result<ReducedDecomposition, OrbitError> {
        if v >= self.node_count() {
            return Err(OrbitError::NodeOutOfRange(v));
        }
        let mut nodes = vec![v];
        let mut roots = Vec::new();
        let mut x = v;
        while self.lengths[x] > 0 {
            let (alpha, y) = self.descent(x).ok_or(OrbitError::Unreachable(v))?;
            if self.lengths[y] + 1 != self.lengths[x] {
                return Err(OrbitError::Unreachable(v));
            }
            nodes.push(y);
            roots.push(alpha);
            x = y;
        }
        nodes.reverse();
        roots.reverse();
        Ok(ReducedDecomposition { nodes, roots })
    }

    /// Every reduced decomposition of `v`.
    pub fn all_reduced_decompositions(&self, v: usize) -> Vec<ReducedDecomposition> {
        let mut out = Vec::new();
        let mut nodes = vec![v];
        let mut roots = Vec::new();
        self.collect_decompositions(&mut nodes, &mut roots, &mut out);
        out
    }

    fn collect_decompositions(&self, nodes: &mut Vec<usize>, roots: &mut Vec<usize>, out: &mut Vec<ReducedDecomposition>) {
        let x = *nodes.last().expect("nonempty");
        if self.lengths[x] == 0 {
            let mut n = nodes.clone();
            let mut r = roots.clone();
            n.reverse();
            r.reverse();
            out.push(ReducedDecomposition { nodes: n, roots: r });
            return;
        }
        for alpha in 0..self.rank {
            let Some(f) = self.fiber_ref(alpha, x) else { continue };
            if f.dense != x {
                continue;
            }
            for y in f.others() {
                if self.lengths[y] + 1 != self.lengths[x] {
                    continue;
                }
                nodes.push(y);
                roots.push(alpha);
                self.collect_decompositions(nodes, roots, out);
                nodes.pop();
                roots.pop();
            }
        }
    }

    /// Whether `rd` is a reduced decomposition in this graph.
    pub fn is_reduced_decomposition(&self, rd: &ReducedDecomposition) -> bool {
        rd.nodes.len() == rd.roots.len() + 1
            && rd.nodes.iter().all(|&x| x < self.node_count())
            && self.lengths[rd.start()] == 0
            && rd.roots.iter().enumerate().all(|(i, &a)| a < self.rank && self.is_simple_relation(a, rd.nodes[i], rd.nodes[i + 1]))
    }

    /// Endpoints of all subexpressions of `rd`.
    pub fn subexpression_endpoints(&self, rd: &ReducedDecomposition) -> BTreeSet<usize> {
        self.endpoints(rd, true)
    }

    /// Same, with the shared-target clause disabled: only staying put or
    /// moving up to the dense node are allowed.
    pub fn subexpression_endpoints_without_shared_target(&self, rd: &ReducedDecomposition) -> BTreeSet<usize> {
        self.endpoints(rd, false)
    }

    fn endpoints(&self, rd: &ReducedDecomposition, shared_target: bool) -> BTreeSet<usize> {
        let mut current = BTreeSet::from([rd.start()]);
        for &alpha in &rd.roots {
            let mut next = BTreeSet::new();
            for &u in &current {
                next.insert(u);
                let f = self.fiber(alpha, u);
                if f.dense == u {
                    continue;
                }
                next.insert(f.dense);
                if shared_target {
                    next.extend(f.others());
                }
            }
            current = next;
        }
        current
    }

    /// The full order, `leq[u][v]`, built level by level in `v`.
    pub fn order_matrix(&self) -> &Vec<Vec<bool>> {
        self.order.get_or_init(|| self.compute_order())
    }

    fn compute_order(&self) -> Vec<Vec<bool>> {
        let n = self.node_count();
        let mut columns: Vec<Vec<bool>> = vec![Vec::new(); n];
        let max = self.lengths.iter().copied().max().unwrap_or(0);
        let mut levels: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
        for x in 0..n {
            levels[self.lengths[x]].push(x);
        }
        for level in &levels {
            let cols = par::map_slice(level, |&v| self.column(v, &columns));
            for (&v, col) in level.iter().zip(cols) {
                columns[v] = col;
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (v, col) in columns.iter().enumerate() {
            for (u, &b) in col.iter().enumerate() {
                leq[u][v] = b;
            }
        }
        leq
    }

    /// `{u : u <= v}` from the column of a lower node: if `v` is dense over
    /// `v'` at `alpha`, then `u <= v` iff some member of the `alpha`-fiber of
    /// `u` lies below `v'`.
    fn column(&self, v: usize, columns: &[Vec<bool>]) -> Vec<bool> {
        let n = self.node_count();
        match self.descent(v) {
            Some((alpha, lower)) if !columns[lower].is_empty() => {
                let below = &columns[lower];
                (0..n).map(|u| self.fiber(alpha, u).members.iter().any(|&x| below[x])).collect()
            }
            _ => (0..n).map(|u| u == v).collect(),
        }
    }

    pub fn poset_leq(&self, u: usize, v: usize) -> bool {
        self.order_matrix()[u][v]
    }

    /// Checks property Z for every simple root and every pair of simple relations.
    pub fn property_z_check(&self) -> Vec<PropertyZViolation> {
        let leq = self.order_matrix();
        let n = self.node_count();
        let mut out = par::flat_map_range(self.rank * n, |k| {
            let (alpha, u1) = (k / n, k % n);
            let mut found = Vec::new();
            let uf = self.fiber(alpha, u1);
            if uf.dense == u1 {
                return found;
            }
            let u2 = uf.dense;
            for v1 in 0..n {
                let vf = self.fiber(alpha, v1);
                if vf.dense == v1 {
                    continue;
                }
                let v2 = vf.dense;
                let c1 = leq[u1][v1] || uf.others().any(|x| leq[x][v1]);
                let c2 = leq[u2][v2];
                let c3 = leq[u1][v2];
                if c1 != c2 || c2 != c3 {
                    found.push(PropertyZViolation { alpha, u1, v1, values: [c1, c2, c3] });
                }
            }
            found
        });
        out.sort();
        out
    }

    /// Cover relations of the order, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let leq = self.order_matrix();
        let n = self.node_count();
        par::flat_map_range(n, |v| {
            let below: Vec<usize> = (0..n).filter(|&u| u != v && leq[u][v]).collect();
            below
                .iter()
                .copied()
                .filter(|&u| !below.iter().any(|&w| w != u && leq[u][w]))
                .map(|u| (u, v))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
    }

    /// Hasse diagram in DOT syntax, nodes labelled with their length.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n");
        for x in 0..self.node_count() {
            s.push_str(&format!("  \"{}\" [label=\"{} len={}\"];\n", self.names[x], self.names[x], self.lengths[x]));
        }
        for (u, v) in self.hasse() {
            s.push_str(&format!("  \"{}\" -> \"{}\";\n", self.names[u], self.names[v]));
        }
        s.push_str("}\n");
        s
    }

    fn canonical_fibers(&self) -> Vec<Vec<(usize, Vec<usize>)>> {
        self.fibers
            .iter()
            .map(|list| {
                let mut v: Vec<(usize, Vec<usize>)> = list.iter().map(|f| (f.dense, f.members.clone())).collect();
                v.sort();
                v
            })
            .collect()
    }

    /// Canonical `orbitgraph v1` text.
    pub fn to_text(&self) -> String {
        let mut s = String::from("orbitgraph v1\n");
        s.push_str(&format!("rootsystem {}\n", self.rootsystem));
        s.push_str(&format!("nodes {}\n", self.node_count()));
        for (x, l) in self.lengths.iter().enumerate() {
            s.push_str(&format!("node {} {}\n", x, l));
        }
        for (alpha, list) in self.canonical_fibers().into_iter().enumerate() {
            for (dense, members) in list {
                s.push_str(&format!("fiber {} {}", alpha + 1, dense));
                for m in members.into_iter().filter(|&m| m != dense) {
                    s.push_str(&format!(" {}", m));
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<OrbitGraph, OrbitError> {
        let err = |line: usize, msg: &str| OrbitError::Parse { line, msg: msg.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "orbitgraph v1")) => {}
            Some((i, _)) => return Err(err(i, "expected `orbitgraph v1`")),
            None => return Err(err(0, "empty input")),
        }
        let mut rootsystem = String::new();
        let mut count: Option<usize> = None;
        let mut lengths: Vec<Option<usize>> = Vec::new();
        let mut fibers: Vec<Vec<Fiber>> = Vec::new();
        for (i, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| t.parse::<usize>().map_err(|_| err(i, &format!("bad number `{}`", t)));
            match toks[0] {
                "rootsystem" => rootsystem = toks[1..].join(" "),
                "nodes" if toks.len() == 2 => {
                    let n = num(toks[1])?;
                    count = Some(n);
                    lengths = vec![None; n];
                }
                "node" if toks.len() == 3 => {
                    let n = count.ok_or_else(|| err(i, "`node` before `nodes`"))?;
                    let id = num(toks[1])?;
                    if id >= n {
                        return Err(err(i, "node id out of range"));
                    }
                    if lengths[id].replace(num(toks[2])?).is_some() {
                        return Err(err(i, "duplicate node"));
                    }
                }
                "fiber" if toks.len() >= 3 => {
                    let alpha = num(toks[1])?;
                    if alpha == 0 {
                        return Err(err(i, "simple indices are 1-based"));
                    }
                    let ids = toks[2..].iter().map(|t| num(t)).collect::<Result<Vec<_>, _>>()?;
                    if fibers.len() < alpha {
                        fibers.resize(alpha, Vec::new());
                    }
                    fibers[alpha - 1].push(Fiber::new(ids[0], ids[1..].iter().copied()));
                }
                _ => return Err(err(i, &format!("unrecognised line `{}`", line))),
            }
        }
        let count = count.ok_or_else(|| err(0, "missing `nodes`"))?;
        let lengths = lengths
            .into_iter()
            .enumerate()
            .map(|(x, l)| l.ok_or_else(|| err(0, &format!("node {} has no length", x))))
            .collect::<Result<Vec<_>, _>>()?;
        debug_assert_eq!(lengths.len(), count);
        let rank = fibers.len();
        Ok(OrbitGraph::new(rank, rootsystem, lengths, fibers))
    }

    /// Node maps `m(alpha)` as vectors.
    pub fn monoid_tables(&self) -> Vec<Vec<usize>> {
        (0..self.rank).map(|a| (0..self.node_count()).map(|x| self.monoid_apply(a, x)).collect()).collect()
    }

    /// Nodes reachable from the closed nodes through the monoid action.
    pub fn monoid_orbit(&self, start: &[usize]) -> BTreeSet<usize> {
        let mut seen: HashSet<usize> = start.iter().copied().collect();
        let mut stack: Vec<usize> = start.to_vec();
        while let Some(x) = stack.pop() {
            for a in 0..self.rank {
                let y = self.monoid_apply(a, x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// `B \ G / B`: nodes are the elements of `W` in the order of [`WeylGroup::enumerate`].
pub fn from_weyl(datum: &RootDatum) -> OrbitGraph {
    let group = WeylGroup::new(datum.clone());
    let elements = group.enumerate();
    let index = WeylGroup::index_map(&elements);
    let lengths: Vec<usize> = elements.iter().map(|w| group.length(w)).collect();
    let fibers = (0..group.rank())
        .map(|alpha| {
            elements
                .iter()
                .enumerate()
                .filter(|(_, w)| w.apply_simple(alpha).is_positive())
                .map(|(k, w)| Fiber::new(index[&group.right_mul_simple(w, alpha)], [k]))
                .collect()
        })
        .collect();
    let names = elements.iter().map(|w| group.format(w)).collect();
    OrbitGraph::new(group.rank(), datum_ref(datum), lengths, fibers).with_names(names)
}

/// `P \ G / B`: nodes are the cosets in the order of [`enumerate_cosets`].
pub fn from_parabolic(datum: &RootDatum, subset: &ParabolicSubset) -> OrbitGraph {
    let group = WeylGroup::new(datum.clone());
    let cosets = enumerate_cosets(&group, subset);
    let mins: Vec<_> = cosets.iter().map(|c| c.min_rep.clone()).collect();
    let index = WeylGroup::index_map(&mins);
    let lengths: Vec<usize> = mins.iter().map(|w| group.length(w)).collect();
    let fibers = (0..group.rank())
        .map(|alpha| {
            mins.iter()
                .enumerate()
                .filter_map(|(k, w)| match step_class(w.apply_simple(alpha), subset) {
                    StepClass::LeviType => Some(Fiber::singleton(k)),
                    StepClass::ComplexUpward => {
                        let up = min_rep(&group, &group.right_mul_simple(w, alpha), subset);
                        Some(Fiber::new(index[&up], [k]))
                    }
                    StepClass::ComplexDownward => None,
                })
                .collect()
        })
        .collect();
    let names = mins.iter().map(|w| group.format(w)).collect();
    OrbitGraph::new(group.rank(), datum_ref(datum), lengths, fibers).with_names(names)
}

fn datum_ref(datum: &RootDatum) -> String {
    datum.cartan().name.clone().unwrap_or_else(|| "custom".to_string())
}
