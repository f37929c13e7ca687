//! `K \ G / B` graphs in the Springer model: each node carries a twisted
//! involution and, for every simple root, a root-type label with its cross
//! action and (for noncompact imaginary roots) Cayley transform.

mod build;
mod checks;
mod text;

use std::fmt;

use thiserror::Error;

use crate::orbit_poset::{Fiber, OrbitGraph, OrbitViolation};
use crate::root_datum::{RootDatum, RootDatumError};
use crate::weyl::{WeylElt, WeylError, WeylGroup};

pub use build::{a1xa1_swap, fixtures, group_case, pgl2_split, sl2_split, twisted_involution_shadow, twisted_involutions};
pub use checks::{
    ascent_consistency_check, canonical_sequences, cayley_rewriting_check, minimal_w_uniqueness_check,
    replay_downward, tw_length_check, AscentViolation, CanonicalSequences, MinimalWViolation, RewritingViolation,
    TwLengthViolation,
};
pub use text::{load_kgb, load_kgb_file, save_kgb};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KgbError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("graph violates {} axiom(s); first: {}", .0.len(), .0[0])]
    AxiomViolation(Vec<KgbViolation>),
    #[error("simple root {alpha} is not noncompact imaginary at node {node}")]
    NotNoncompact { alpha: usize, node: usize },
    #[error("simple root {alpha} is not real at node {node}")]
    NotReal { alpha: usize, node: usize },
    #[error("graph has no unique open node")]
    NoOpenNode,
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("node {0} is not connected to the open node by ascents")]
    Unreachable(usize),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootTypeLabel {
    ComplexAscent,
    ComplexDescent,
    CompactImaginary,
    NoncompactI,
    NoncompactII,
    RealI,
    RealII,
}

impl RootTypeLabel {
    pub const ALL: [RootTypeLabel; 7] = [
        RootTypeLabel::ComplexAscent,
        RootTypeLabel::ComplexDescent,
        RootTypeLabel::CompactImaginary,
        RootTypeLabel::NoncompactI,
        RootTypeLabel::NoncompactII,
        RootTypeLabel::RealI,
        RootTypeLabel::RealII,
    ];

    pub fn code(self) -> &'static str {
        match self {
            RootTypeLabel::ComplexAscent => "C+",
            RootTypeLabel::ComplexDescent => "C-",
            RootTypeLabel::CompactImaginary => "ci",
            RootTypeLabel::NoncompactI => "nci1",
            RootTypeLabel::NoncompactII => "nci2",
            RootTypeLabel::RealI => "r1",
            RootTypeLabel::RealII => "r2",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.code() == s)
    }

    pub fn is_complex(self) -> bool {
        matches!(self, RootTypeLabel::ComplexAscent | RootTypeLabel::ComplexDescent)
    }

    pub fn is_imaginary(self) -> bool {
        matches!(self, RootTypeLabel::CompactImaginary | RootTypeLabel::NoncompactI | RootTypeLabel::NoncompactII)
    }

    pub fn is_noncompact(self) -> bool {
        matches!(self, RootTypeLabel::NoncompactI | RootTypeLabel::NoncompactII)
    }

    pub fn is_real(self) -> bool {
        matches!(self, RootTypeLabel::RealI | RootTypeLabel::RealII)
    }

    /// Labels for which `m(alpha)` moves the node up.
    pub fn is_ascent(self) -> bool {
        matches!(self, RootTypeLabel::ComplexAscent | RootTypeLabel::NoncompactI | RootTypeLabel::NoncompactII)
    }
}

impl fmt::Display for RootTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub kind: RootTypeLabel,
    pub cross: usize,
    pub cayley: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KgbNode {
    pub length: usize,
    pub tw: WeylElt,
    /// One label per simple root.
    pub labels: Vec<Label>,
}

/// Axiom violations found by [`KgbGraph::validate`]. Simple indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum KgbViolation {
    DanglingEdge { alpha: usize, node: usize },
    LabelCount { node: usize },
    NotTwistedInvolution { node: usize },
    LabelMismatch { alpha: usize, node: usize },
    TwUpdate { alpha: usize, node: usize },
    CrossNotInvolution { alpha: usize, node: usize },
    CrossBraid { alpha: usize, beta: usize, node: usize },
    FiberPattern { alpha: usize, node: usize, detail: &'static str },
    TypeIAtTrivialM { alpha: usize, node: usize },
    Orbit(OrbitViolation),
}

impl KgbViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            KgbViolation::DanglingEdge { .. } => "DanglingEdge",
            KgbViolation::LabelCount { .. } => "LabelCount",
            KgbViolation::NotTwistedInvolution { .. } => "NotTwistedInvolution",
            KgbViolation::LabelMismatch { .. } => "LabelMismatch",
            KgbViolation::TwUpdate { .. } => "TwUpdate",
            KgbViolation::CrossNotInvolution { .. } => "CrossNotInvolution",
            KgbViolation::CrossBraid { .. } => "CrossBraid",
            KgbViolation::FiberPattern { .. } => "FiberPattern",
            KgbViolation::TypeIAtTrivialM { .. } => "TypeIAtTrivialM",
            KgbViolation::Orbit(v) => v.axiom(),
        }
    }
}

impl fmt::Display for KgbViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KgbViolation::DanglingEdge { alpha, node }
            | KgbViolation::LabelMismatch { alpha, node }
            | KgbViolation::TwUpdate { alpha, node }
            | KgbViolation::CrossNotInvolution { alpha, node }
            | KgbViolation::TypeIAtTrivialM { alpha, node } => {
                write!(f, "{}: alpha {} node {}", self.axiom(), alpha + 1, node)
            }
            KgbViolation::LabelCount { node } | KgbViolation::NotTwistedInvolution { node } => {
                write!(f, "{}: node {}", self.axiom(), node)
            }
            KgbViolation::CrossBraid { alpha, beta, node } => {
                write!(f, "CrossBraid: alpha {} beta {} node {}", alpha + 1, beta + 1, node)
            }
            KgbViolation::FiberPattern { alpha, node, detail } => {
                write!(f, "FiberPattern: alpha {} node {} ({})", alpha + 1, node, detail)
            }
            KgbViolation::Orbit(v) => write!(f, "{}", v),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KgbGraph {
    group: WeylGroup,
    nodes: Vec<KgbNode>,
    orbit: OrbitGraph,
    inverse_cayley: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for KgbGraph {
    fn eq(&self, other: &Self) -> bool {
        self.group.datum() == other.group.datum() && self.nodes == other.nodes
    }
}

impl KgbGraph {
    /// Builds and validates a graph.
    pub fn new(datum: RootDatum, nodes: Vec<KgbNode>) -> Result<Self, KgbError> {
        let g = Self::new_unchecked(datum, nodes);
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(KgbError::AxiomViolation(violations))
        }
    }

    /// Builds a graph without checking the axioms.
    pub fn new_unchecked(datum: RootDatum, nodes: Vec<KgbNode>) -> Self {
        let group = WeylGroup::new(datum);
        let rank = group.rank();
        let n = nodes.len();
        let ok = |x: usize| x < n;
        let mut inverse_cayley = vec![vec![Vec::new(); n]; rank];
        for (v, node) in nodes.iter().enumerate() {
            for (alpha, l) in node.labels.iter().enumerate().take(rank) {
                if let Some(c) = l.cayley.filter(|&c| ok(c)) {
                    inverse_cayley[alpha][c].push(v);
                }
            }
        }
        let fibers = (0..rank)
            .map(|alpha| {
                let mut by_dense: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
                for (v, node) in nodes.iter().enumerate() {
                    let Some(l) = node.labels.get(alpha) else {
                        by_dense.entry(v).or_default();
                        continue;
                    };
                    match l.kind {
                        RootTypeLabel::ComplexAscent if ok(l.cross) => by_dense.entry(l.cross).or_default().push(v),
                        RootTypeLabel::NoncompactI | RootTypeLabel::NoncompactII => {
                            if let Some(c) = l.cayley.filter(|&c| ok(c)) {
                                by_dense.entry(c).or_default().push(v);
                            } else {
                                by_dense.entry(v).or_default();
                            }
                        }
                        RootTypeLabel::CompactImaginary => {
                            by_dense.entry(v).or_default();
                        }
                        _ => {}
                    }
                }
                // Nodes that no rule placed anywhere still need a fiber of their own.
                let mut covered = vec![false; n];
                for (d, ms) in &by_dense {
                    covered[*d] = true;
                    for &m in ms {
                        covered[m] = true;
                    }
                }
                for (v, c) in covered.iter().enumerate() {
                    if !c {
                        by_dense.entry(v).or_default();
                    }
                }
                by_dense.into_iter().map(|(d, ms)| Fiber::new(d, ms)).collect()
            })
            .collect();
        let lengths = nodes.iter().map(|x| x.length).collect();
        let orbit = OrbitGraph::new(rank, rootsystem_name(group.datum()), lengths, fibers);
        KgbGraph { group, nodes, orbit, inverse_cayley }
    }

    pub fn datum(&self) -> &RootDatum {
        self.group.datum()
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[KgbNode] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &KgbNode {
        &self.nodes[v]
    }

    pub fn length(&self, v: usize) -> usize {
        self.nodes[v].length
    }

    pub fn tw(&self, v: usize) -> &WeylElt {
        &self.nodes[v].tw
    }

    pub fn root_type(&self, alpha: usize, v: usize) -> RootTypeLabel {
        self.nodes[v].labels[alpha].kind
    }

    pub fn cross_action(&self, alpha: usize, v: usize) -> usize {
        self.nodes[v].labels[alpha].cross
    }

    pub fn cayley(&self, alpha: usize, v: usize) -> Result<usize, KgbError> {
        let l = &self.nodes[v].labels[alpha];
        match (l.kind.is_noncompact(), l.cayley) {
            (true, Some(c)) => Ok(c),
            _ => Err(KgbError::NotNoncompact { alpha: alpha + 1, node: v }),
        }
    }

    /// Sorted inverse Cayley images: two for `RealI`, one for `RealII`.
    pub fn inverse_cayley(&self, alpha: usize, v: usize) -> Result<Vec<usize>, KgbError> {
        if !self.root_type(alpha, v).is_real() {
            return Err(KgbError::NotReal { alpha: alpha + 1, node: v });
        }
        Ok(self.inverse_cayley[alpha][v].clone())
    }

    /// `m(alpha) v`.
    pub fn monoid(&self, alpha: usize, v: usize) -> usize {
        self.orbit.monoid_apply(alpha, v)
    }

    /// The underlying orbit graph: fibers are assembled from the labels.
    pub fn to_orbit_poset(&self) -> OrbitGraph {
        self.orbit.clone()
    }

    pub fn orbit_graph(&self) -> &OrbitGraph {
        &self.orbit
    }

    /// `w theta(alpha)` for the twisted involution of `v`.
    pub fn tw_theta_image(&self, alpha: usize, v: usize) -> crate::root_datum::Root {
        let theta_alpha = self.datum().simple_root(self.datum().twist()[alpha]);
        self.nodes[v].tw.apply(&theta_alpha)
    }

    pub fn validate(&self) -> Vec<KgbViolation> {
        let n = self.node_count();
        let rank = self.rank();
        let mut out = Vec::new();
        for (v, node) in self.nodes.iter().enumerate() {
            if node.labels.len() != rank || node.tw.rank() != rank {
                out.push(KgbViolation::LabelCount { node: v });
                continue;
            }
            for (alpha, l) in node.labels.iter().enumerate() {
                if l.cross >= n || l.cayley.is_some_and(|c| c >= n) {
                    out.push(KgbViolation::DanglingEdge { alpha, node: v });
                }
            }
        }
        if !out.is_empty() {
            out.sort();
            return out;
        }
        let g = &self.group;
        let twist = self.datum().twist().to_vec();
        for (v, node) in self.nodes.iter().enumerate() {
            if !g.is_twisted_involution(&node.tw) {
                out.push(KgbViolation::NotTwistedInvolution { node: v });
            }
            for (alpha, l) in node.labels.iter().enumerate() {
                let a = self.datum().simple_root(alpha);
                let img = self.tw_theta_image(alpha, v);
                let consistent = if l.kind.is_real() {
                    img == a.neg()
                } else if l.kind.is_imaginary() {
                    img == a
                } else {
                    img != a && img != a.neg()
                };
                if !consistent {
                    out.push(KgbViolation::LabelMismatch { alpha, node: v });
                }
                let crossed = g.left_mul_simple(alpha, &g.right_mul_simple(&node.tw, twist[alpha]));
                if self.nodes[l.cross].tw != crossed {
                    out.push(KgbViolation::TwUpdate { alpha, node: v });
                }
                if let Some(c) = l.cayley {
                    if self.nodes[c].tw != g.left_mul_simple(alpha, &node.tw) {
                        out.push(KgbViolation::TwUpdate { alpha, node: v });
                    }
                }
                if self.nodes[l.cross].labels[alpha].cross != v {
                    out.push(KgbViolation::CrossNotInvolution { alpha, node: v });
                }
                self.check_pattern(alpha, v, &mut out);
                if matches!(l.kind, RootTypeLabel::NoncompactI | RootTypeLabel::RealI)
                    && self.datum().is_m_alpha_trivial(alpha)
                {
                    out.push(KgbViolation::TypeIAtTrivialM { alpha, node: v });
                }
            }
            for alpha in 0..rank {
                for beta in alpha + 1..rank {
                    let m = self.datum().cartan().coxeter_order(alpha, beta);
                    let mut x = v;
                    for _ in 0..m {
                        x = self.nodes[self.nodes[x].labels[alpha].cross].labels[beta].cross;
                    }
                    if x != v {
                        out.push(KgbViolation::CrossBraid { alpha, beta, node: v });
                    }
                }
            }
        }
        out.extend(self.orbit.validate().into_iter().map(KgbViolation::Orbit));
        out.sort();
        out.dedup();
        out
    }

    fn check_pattern(&self, alpha: usize, v: usize, out: &mut Vec<KgbViolation>) {
        let l = &self.nodes[v].labels[alpha];
        let len = self.nodes[v].length;
        let mut bad = |detail: &'static str| out.push(KgbViolation::FiberPattern { alpha, node: v, detail });
        let other = |x: usize| &self.nodes[x];
        if l.cayley.is_some() && !l.kind.is_noncompact() {
            bad("cayley edge on a root that is not noncompact imaginary");
        }
        match l.kind {
            RootTypeLabel::ComplexAscent | RootTypeLabel::ComplexDescent => {
                let (want_len, want_kind) = if l.kind == RootTypeLabel::ComplexAscent {
                    (len + 1, RootTypeLabel::ComplexDescent)
                } else {
                    (len.wrapping_sub(1), RootTypeLabel::ComplexAscent)
                };
                if l.cross == v || other(l.cross).length != want_len || other(l.cross).labels[alpha].kind != want_kind {
                    bad("complex pair must swap ascent and descent across one length step");
                }
            }
            RootTypeLabel::NoncompactI | RootTypeLabel::NoncompactII => {
                let Some(c) = l.cayley else {
                    bad("noncompact root without cayley edge");
                    return;
                };
                let real = if l.kind == RootTypeLabel::NoncompactI { RootTypeLabel::RealI } else { RootTypeLabel::RealII };
                if other(c).length != len + 1 || other(c).labels[alpha].kind != real {
                    bad("cayley target must be one step up with the matching real label");
                }
                if l.kind == RootTypeLabel::NoncompactI {
                    let x = other(l.cross);
                    if l.cross == v || x.length != len || x.labels[alpha].kind != RootTypeLabel::NoncompactI || x.labels[alpha].cayley != Some(c) {
                        bad("type I root must be moved by the cross action and share its cayley target");
                    }
                } else if l.cross != v {
                    bad("type II root must be fixed by the cross action");
                }
            }
            RootTypeLabel::CompactImaginary => {
                if l.cross != v {
                    bad("compact root must be fixed by the cross action");
                }
            }
            RootTypeLabel::RealI | RootTypeLabel::RealII => {
                if l.cross != v {
                    bad("real root must be fixed by the cross action");
                }
                let want = if l.kind == RootTypeLabel::RealI { 2 } else { 1 };
                if self.inverse_cayley[alpha][v].len() != want {
                    bad("wrong number of inverse cayley images");
                }
            }
        }
    }
}

pub(crate) fn rootsystem_name(datum: &RootDatum) -> String {
    datum.cartan().name.clone().unwrap_or_else(|| "custom".to_string())
}
