//! Based root data: Cartan matrices, isogeny lattices, diagram involutions and
//! root arithmetic over the simple roots.
//!
//! Simple roots are indexed `0..rank` internally and `1..=rank` in every text
//! format. The Cartan matrix follows the convention `a[i][j] = <alpha_j, alpha_i^v>`,
//! so the simple reflection is `s_i(beta) = beta - <beta, alpha_i^v> alpha_i`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDatumError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("not a root: {0}")]
    NotARoot(Root),
    #[error("simple index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A root written in coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// Indices of simple roots with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Square Cartan matrix with simple-root labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSpec {
    pub entries: Vec<Vec<i32>>,
    pub labels: Vec<String>,
    /// Cartan type name such as `A2` or `A1xA1`, when built from a type.
    pub name: Option<String>,
}

impl CartanSpec {
    /// Cartan matrix from explicit entries; labels default to `a1..an`.
    pub fn from_entries(entries: Vec<Vec<i32>>) -> Result<Self, RootDatumError> {
        let labels = (1..=entries.len()).map(|i| format!("a{i}")).collect();
        let spec = CartanSpec { entries, labels, name: None };
        spec.validate()?;
        Ok(spec)
    }

    /// Built-in Cartan type, e.g. `A3`, `B2`, `G2` or a product `A1xA1`.
    pub fn from_type(name: &str) -> Result<Self, RootDatumError> {
        let mut blocks = Vec::new();
        for part in name.split(['x', 'X', '*']) {
            blocks.push(simple_type(part.trim())?);
        }
        let rank: usize = blocks.iter().map(|b| b.len()).sum();
        let mut entries = vec![vec![0; rank]; rank];
        let mut off = 0;
        for b in &blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, &a) in row.iter().enumerate() {
                    entries[off + i][off + j] = a;
                }
            }
            off += b.len();
        }
        let labels = (1..=rank).map(|i| format!("a{i}")).collect();
        let spec = CartanSpec { entries, labels, name: Some(canonical_type_name(name)) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.entries[i][j]
    }

    /// Block sum of two Cartan matrices.
    pub fn direct_sum(&self, other: &CartanSpec) -> CartanSpec {
        let (n, m) = (self.rank(), other.rank());
        let mut entries = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            entries[i][..n].copy_from_slice(&self.entries[i]);
        }
        for i in 0..m {
            entries[n + i][n..].copy_from_slice(&other.entries[i]);
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        CartanSpec { entries, labels, name }
    }

    pub fn validate(&self) -> Result<(), RootDatumError> {
        let n = self.rank();
        if n == 0 {
            return Err(RootDatumError::InvalidCartan("rank must be positive".into()));
        }
        if self.entries.iter().any(|r| r.len() != n) {
            return Err(RootDatumError::InvalidCartan("matrix is not square".into()));
        }
        if self.labels.len() != n {
            return Err(RootDatumError::InvalidCartan("label count differs from rank".into()));
        }
        for i in 0..n {
            if self.entries[i][i] != 2 {
                return Err(RootDatumError::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (self.entries[i][j], self.entries[j][i]);
                if a > 0 {
                    return Err(RootDatumError::InvalidCartan(format!(
                        "entry ({},{}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (a == 0) != (b == 0) {
                    return Err(RootDatumError::InvalidCartan(format!(
                        "zero pattern not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
                if a * b > 3 {
                    return Err(RootDatumError::InvalidCartan(format!(
                        "bond ({},{}) has product {}",
                        i + 1,
                        j + 1,
                        a * b
                    )));
                }
            }
        }
        // Positive principal minors characterise finite type.
        for mask in 1u32..(1u32 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let sub: Vec<Vec<i128>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j] as i128).collect())
                .collect();
            if determinant(&sub) <= 0 {
                return Err(RootDatumError::InvalidCartan("not of finite type".into()));
            }
        }
        Ok(())
    }

    /// Coxeter exponent m(i,j) for the pair of simple reflections.
    pub fn coxeter_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.entries[i][j] * self.entries[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => unreachable!("validated Cartan product {p}"),
        }
    }
}

fn canonical_type_name(name: &str) -> String {
    name.split(['x', 'X', '*'])
        .map(|p| p.trim().to_ascii_uppercase())
        .collect::<Vec<_>>()
        .join("x")
}

fn simple_type(name: &str) -> Result<Vec<Vec<i32>>, RootDatumError> {
    let bad = || RootDatumError::InvalidCartan(format!("unknown Cartan type `{name}`"));
    let mut chars = name.chars();
    let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    let chain = |n: usize| {
        let mut m = vec![vec![0i32; n]; n];
        for i in 0..n {
            m[i][i] = 2;
            if i + 1 < n {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        m
    };
    let m = match (letter, n) {
        ('A', n) if n >= 1 => chain(n),
        ('B', n) if n >= 2 => {
            // last root short
            let mut m = chain(n);
            m[n - 1][n - 2] = -2;
            m
        }
        ('C', n) if n >= 2 => {
            // last root long
            let mut m = chain(n);
            m[n - 2][n - 1] = -2;
            m
        }
        ('D', n) if n >= 4 => {
            let mut m = chain(n);
            m[n - 2][n - 1] = 0;
            m[n - 1][n - 2] = 0;
            m[n - 3][n - 1] = -1;
            m[n - 1][n - 3] = -1;
            m
        }
        ('E', n) if (6..=8).contains(&n) => {
            // Bourbaki numbering: 1-3-4-5-..., 2 attached to 4
            let mut m = vec![vec![0i32; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 2;
            }
            let mut bond = |a: usize, b: usize| {
                m[a][b] = -1;
                m[b][a] = -1;
            };
            bond(0, 2);
            bond(1, 3);
            for k in 2..n - 1 {
                bond(k, k + 1);
            }
            m
        }
        ('F', 4) => {
            let mut m = chain(4);
            m[2][1] = -2;
            m
        }
        ('G', 2) => vec![vec![2, -3], vec![-1, 2]],
        _ => return Err(bad()),
    };
    Ok(m)
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// How the character and cocharacter lattices sit relative to the roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isogeny {
    /// Cocharacter lattice spanned by the simple coroots.
    SimplyConnected,
    /// Character lattice spanned by the simple roots.
    Adjoint,
    /// Simple coroots given explicitly in a basis of the cocharacter lattice.
    Lattice(Vec<Vec<i64>>),
}

/// Membership of a root relative to a standard parabolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParabolicClass {
    Levi,
    Nilradical,
    OppositeNilradical,
}

/// Subset of simple-root indices defining a standard parabolic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicSubset(pub BTreeSet<usize>);

impl ParabolicSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(rank: usize) -> Self {
        ParabolicSubset((0..rank).collect())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ParabolicSubset(it.into_iter().collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every subset of `0..rank`, ordered by bitmask.
    pub fn all(rank: usize) -> Vec<ParabolicSubset> {
        (0u32..(1 << rank))
            .map(|mask| ParabolicSubset((0..rank).filter(|&i| mask & (1 << i) != 0).collect()))
            .collect()
    }

    /// Parse a comma-separated list of 1-based indices (empty string = no roots).
    pub fn parse(s: &str, rank: usize) -> Result<Self, RootDatumError> {
        let mut out = BTreeSet::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| RootDatumError::Parse { line: 0, msg: format!("bad index `{tok}`") })?;
            if i == 0 || i > rank {
                return Err(RootDatumError::IndexOutOfRange(i));
            }
            out.insert(i - 1);
        }
        Ok(ParabolicSubset(out))
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A based root datum with an optional diagram involution.
#[derive(Debug, Clone)]
pub struct RootDatum {
    cartan: CartanSpec,
    isogeny: Isogeny,
    /// Simple coroots in a basis of the cocharacter lattice (rows).
    coroot_images: Vec<Vec<i64>>,
    /// Simple roots in the dual basis of the character lattice (rows).
    root_images: Vec<Vec<i64>>,
    twist: Vec<usize>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan.entries == other.cartan.entries
            && self.coroot_images == other.coroot_images
            && self.twist == other.twist
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    pub fn new(cartan: CartanSpec, isogeny: Isogeny, twist: Option<Vec<usize>>) -> Result<Self, RootDatumError> {
        cartan.validate()?;
        let n = cartan.rank();
        let a = &cartan.entries;
        let (coroot_images, root_images) = match &isogeny {
            Isogeny::SimplyConnected => {
                let c = identity(n);
                // alpha_j = sum_i a[i][j] * (fundamental weight i)
                let r = (0..n).map(|j| (0..n).map(|i| a[i][j] as i64).collect()).collect();
                (c, r)
            }
            Isogeny::Adjoint => {
                let c = (0..n).map(|i| (0..n).map(|j| a[i][j] as i64).collect()).collect();
                (c, identity(n))
            }
            Isogeny::Lattice(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(RootDatumError::InvalidLattice(format!("expected {n} rows of {n} integers")));
                }
                let r = solve_root_images(rows, a)?;
                (rows.clone(), r)
            }
        };
        let twist = twist.unwrap_or_else(|| (0..n).collect());
        if twist.len() != n {
            return Err(RootDatumError::InvalidTwist(format!("expected {n} images")));
        }
        let mut seen = vec![false; n];
        for &t in &twist {
            if t >= n || seen[t] {
                return Err(RootDatumError::InvalidTwist("not a permutation".into()));
            }
            seen[t] = true;
        }
        if (0..n).any(|i| twist[twist[i]] != i) {
            return Err(RootDatumError::InvalidTwist("not an involution".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if a[twist[i]][twist[j]] != a[i][j] {
                    return Err(RootDatumError::InvalidTwist(format!(
                        "does not preserve Cartan entry ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let positive = generate_positive_roots(&cartan);
        let mut index = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.clone(), k);
        }
        let np = positive.len();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.neg(), np + k);
        }
        Ok(RootDatum { cartan, isogeny, coroot_images, root_images, twist, positive, index })
    }

    /// Built-in type, simply connected, trivial twist.
    pub fn of_type(name: &str) -> Result<Self, RootDatumError> {
        Self::new(CartanSpec::from_type(name)?, Isogeny::SimplyConnected, None)
    }

    pub fn cartan(&self) -> &CartanSpec {
        &self.cartan
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn twist(&self) -> &[usize] {
        &self.twist
    }

    pub fn has_trivial_twist(&self) -> bool {
        self.twist.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn coroot_images(&self) -> &[Vec<i64>] {
        &self.coroot_images
    }

    pub fn root_images(&self) -> &[Vec<i64>] {
        &self.root_images
    }

    /// `<alpha_j, alpha_i^v>` computed through the lattices.
    pub fn pairing(&self, j: usize, i: usize) -> i64 {
        self.root_images[j].iter().zip(&self.coroot_images[i]).map(|(a, b)| a * b).sum()
    }

    /// Block sum with another datum; twists are combined componentwise.
    pub fn direct_sum(&self, other: &RootDatum) -> RootDatum {
        let n = self.rank();
        let cartan = self.cartan.direct_sum(&other.cartan);
        let twist = self.twist.iter().copied().chain(other.twist.iter().map(|t| t + n)).collect();
        let isogeny = match (&self.isogeny, &other.isogeny) {
            (Isogeny::SimplyConnected, Isogeny::SimplyConnected) => Isogeny::SimplyConnected,
            (Isogeny::Adjoint, Isogeny::Adjoint) => Isogeny::Adjoint,
            _ => Isogeny::Lattice(block_sum(&self.coroot_images, &other.coroot_images)),
        };
        RootDatum::new(cartan, isogeny, Some(twist)).expect("block sum of valid data is valid")
    }

    /// Two copies of this datum with the twist exchanging them.
    pub fn doubled_with_swap(&self) -> RootDatum {
        let n = self.rank();
        let sum = RootDatum::new(self.cartan.direct_sum(&self.cartan), self.doubled_isogeny(), None)
            .expect("block sum of valid data is valid");
        let swap = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        sum.with_twist(swap).expect("swap preserves a doubled Cartan matrix")
    }

    fn doubled_isogeny(&self) -> Isogeny {
        match &self.isogeny {
            Isogeny::SimplyConnected => Isogeny::SimplyConnected,
            Isogeny::Adjoint => Isogeny::Adjoint,
            Isogeny::Lattice(rows) => Isogeny::Lattice(block_sum(rows, rows)),
        }
    }

    pub fn with_twist(&self, twist: Vec<usize>) -> Result<RootDatum, RootDatumError> {
        RootDatum::new(self.cartan.clone(), self.isogeny.clone(), Some(twist))
    }

    /// The nontrivial diagram involution of a connected diagram, if any.
    pub fn diagram_flip(&self) -> Option<Vec<usize>> {
        let n = self.rank();
        // Search all involutive permutations; ranks here are small.
        let mut best: Option<Vec<usize>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute_search(&mut perm, 0, &mut |p| {
            let inv = (0..n).all(|i| p[p[i]] == i);
            let pres = (0..n).all(|i| (0..n).all(|j| self.cartan.entries[p[i]][p[j]] == self.cartan.entries[i][j]));
            let nontrivial = p.iter().enumerate().any(|(i, &t)| i != t);
            if inv && pres && nontrivial && best.is_none() {
                best = Some(p.to_vec());
            }
        });
        best
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// All roots: positive ones first, then their negatives in the same order.
    pub fn all_roots(&self) -> Vec<Root> {
        self.positive.iter().cloned().chain(self.positive.iter().map(Root::neg)).collect()
    }

    pub fn root_count(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn is_root(&self, beta: &Root) -> bool {
        self.index.contains_key(beta)
    }

    /// Position of a root in `all_roots`.
    pub fn root_index(&self, beta: &Root) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    fn check_index(&self, i: usize) -> Result<(), RootDatumError> {
        if i >= self.rank() {
            Err(RootDatumError::IndexOutOfRange(i + 1))
        } else {
            Ok(())
        }
    }

    /// `<beta, alpha_i^v>` for `beta` in root coordinates.
    pub fn coroot_pairing(&self, beta: &Root, i: usize) -> i32 {
        beta.0.iter().zip(&self.cartan.entries[i]).map(|(b, a)| b * a).sum()
    }

    /// Linear reflection without root membership check.
    pub(crate) fn reflect_unchecked(&self, i: usize, beta: &Root) -> Root {
        let p = self.coroot_pairing(beta, i);
        let mut c = beta.0.clone();
        c[i] -= p;
        Root(c)
    }

    pub fn reflect(&self, i: usize, beta: &Root) -> Result<Root, RootDatumError> {
        self.check_index(i)?;
        if !self.is_root(beta) {
            return Err(RootDatumError::NotARoot(beta.clone()));
        }
        Ok(self.reflect_unchecked(i, beta))
    }

    /// Apply the diagram involution to a root.
    pub fn twist_root(&self, beta: &Root) -> Root {
        let mut c = vec![0; self.rank()];
        for (j, &b) in beta.0.iter().enumerate() {
            c[self.twist[j]] = b;
        }
        Root(c)
    }

    pub fn classify_wrt_parabolic(&self, beta: &Root, parabolic: &ParabolicSubset) -> Result<ParabolicClass, RootDatumError> {
        if !self.is_root(beta) {
            return Err(RootDatumError::NotARoot(beta.clone()));
        }
        Ok(classify_unchecked(beta, parabolic))
    }

    /// `m_alpha = alpha^v(-1)` is trivial exactly when the coroot is divisible by two
    /// in the cocharacter lattice.
    pub fn is_m_alpha_trivial(&self, i: usize) -> bool {
        self.coroot_images[i].iter().all(|c| c % 2 == 0)
    }

    /// Whether the twist is induced by an automorphism of the cocharacter lattice.
    pub fn twist_preserves_lattice(&self) -> bool {
        // M * C = C_perm must have an integral solution M.
        let n = self.rank();
        let c: Vec<Vec<i128>> = self.coroot_images.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let det = determinant(&c);
        if det == 0 {
            return false;
        }
        // Row k of M solves M_k * C = C_{twist(k)}, i.e. C^T M_k^T = C_{twist(k)}^T.
        let ct: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| c[j][i]).collect()).collect();
        for k in 0..n {
            let rhs = &c[self.twist[k]];
            for col in 0..n {
                let mut m = ct.clone();
                for r in 0..n {
                    m[r][col] = rhs[r];
                }
                if determinant(&m) % det != 0 {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn classify_unchecked(beta: &Root, parabolic: &ParabolicSubset) -> ParabolicClass {
    if beta.support().all(|i| parabolic.contains(i)) {
        ParabolicClass::Levi
    } else if beta.is_positive() {
        ParabolicClass::Nilradical
    } else {
        ParabolicClass::OppositeNilradical
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn block_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n + m]; n + m];
    for i in 0..n {
        out[i][..n].copy_from_slice(&a[i]);
    }
    for i in 0..m {
        out[n + i][n..].copy_from_slice(&b[i]);
    }
    out
}

fn permute_search(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_search(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Solve `R_j . C_i = a[i][j]` for integer root images by Cramer's rule.
fn solve_root_images(coroots: &[Vec<i64>], a: &[Vec<i32>]) -> Result<Vec<Vec<i64>>, RootDatumError> {
    let n = coroots.len();
    let c: Vec<Vec<i128>> = coroots.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let det = determinant(&c);
    if det == 0 {
        return Err(RootDatumError::InvalidLattice("coroot images are linearly dependent".into()));
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let rhs: Vec<i128> = (0..n).map(|i| a[i][j] as i128).collect();
        let mut row = Vec::with_capacity(n);
        for col in 0..n {
            let mut m = c.clone();
            for r in 0..n {
                m[r][col] = rhs[r];
            }
            let num = determinant(&m);
            if num % det != 0 {
                return Err(RootDatumError::InvalidLattice(format!(
                    "simple root {} is not integral on the given cocharacter lattice",
                    j + 1
                )));
            }
            row.push((num / det) as i64);
        }
        out.push(row);
    }
    Ok(out)
}

/// Positive roots by closure of the simple roots under simple reflections,
/// ordered by height and then descending coordinates.
fn generate_positive_roots(cartan: &CartanSpec) -> Vec<Root> {
    let n = cartan.rank();
    let mut seen: BTreeSet<Root> = BTreeSet::new();
    let mut queue: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    while let Some(beta) = queue.pop() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..n {
            let p: i32 = beta.0.iter().zip(&cartan.entries[i]).map(|(b, a)| b * a).sum();
            let mut c = beta.0.clone();
            c[i] -= p;
            let r = Root(c);
            if r.is_positive() && !seen.contains(&r) {
                queue.push(r);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().collect();
    roots.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| y.0.cmp(&x.0)));
    roots
}

/// Parse the `rootdatum v1` text format.
pub fn parse_root_datum(text: &str) -> Result<RootDatum, RootDatumError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    parse_root_datum_lines(&lines)
}

pub(crate) fn parse_root_datum_lines(lines: &[(usize, Vec<&str>)]) -> Result<RootDatum, RootDatumError> {
    let err = |line: usize, msg: &str| RootDatumError::Parse { line, msg: msg.to_string() };
    let mut it = lines.iter().peekable();
    match it.next() {
        Some((_, t)) if t.as_slice() == ["rootdatum", "v1"] => {}
        Some((n, _)) => return Err(err(*n, "expected header `rootdatum v1`")),
        None => return Err(err(0, "empty input")),
    }
    let int_row = |n: usize, toks: &[&str], len: usize| -> Result<Vec<i64>, RootDatumError> {
        let row: Result<Vec<i64>, _> = toks.iter().map(|t| t.parse::<i64>()).collect();
        let row = row.map_err(|_| err(n, "expected integers"))?;
        if row.len() != len {
            return Err(err(n, &format!("expected {len} integers")));
        }
        Ok(row)
    };
    let cartan = match it.next() {
        Some((_, t)) if t.len() == 2 && t[0] == "type" => CartanSpec::from_type(t[1])?,
        Some((n, t)) if t.len() == 2 && t[0] == "cartan" => {
            let rank: usize = t[1].parse().map_err(|_| err(*n, "bad rank"))?;
            let mut rows = Vec::with_capacity(rank);
            for _ in 0..rank {
                let (n, toks) = it.next().ok_or_else(|| err(*n, "missing Cartan row"))?;
                rows.push(int_row(*n, toks, rank)?.into_iter().map(|x| x as i32).collect());
            }
            CartanSpec::from_entries(rows)?
        }
        Some((n, _)) => return Err(err(*n, "expected `type <name>` or `cartan <rank>`")),
        None => return Err(err(0, "missing Cartan line")),
    };
    let rank = cartan.rank();
    let isogeny = match it.next() {
        Some((_, t)) if t.as_slice() == ["isogeny", "simply_connected"] => Isogeny::SimplyConnected,
        Some((_, t)) if t.as_slice() == ["isogeny", "adjoint"] => Isogeny::Adjoint,
        Some((n, t)) if t.as_slice() == ["isogeny", "lattice"] => {
            let mut rows = Vec::with_capacity(rank);
            for _ in 0..rank {
                let (n, toks) = it.next().ok_or_else(|| err(*n, "missing lattice row"))?;
                rows.push(int_row(*n, toks, rank)?);
            }
            Isogeny::Lattice(rows)
        }
        Some((n, _)) => return Err(err(*n, "expected `isogeny simply_connected|adjoint|lattice`")),
        None => return Err(err(0, "missing isogeny line")),
    };
    let twist = match it.next() {
        Some((_, t)) if t.as_slice() == ["twist", "id"] => None,
        Some((n, t)) if t.len() == rank + 1 && t[0] == "twist" => {
            let mut perm = Vec::with_capacity(rank);
            for tok in &t[1..] {
                let k: usize = tok.parse().map_err(|_| err(*n, "bad twist image"))?;
                if k == 0 || k > rank {
                    return Err(RootDatumError::InvalidTwist(format!("image {k} out of range")));
                }
                perm.push(k - 1);
            }
            Some(perm)
        }
        Some((n, _)) => return Err(err(*n, "expected `twist id` or `twist <images>`")),
        None => return Err(err(0, "missing twist line")),
    };
    if let Some((n, _)) = it.next() {
        return Err(err(*n, "trailing content after twist line"));
    }
    RootDatum::new(cartan, isogeny, twist)
}

impl RootDatum {
    /// Canonical `rootdatum v1` text.
    pub fn to_text(&self) -> String {
        let mut out = String::from("rootdatum v1\n");
        match &self.cartan.name {
            Some(name) => out.push_str(&format!("type {name}\n")),
            None => {
                out.push_str(&format!("cartan {}\n", self.rank()));
                for row in &self.cartan.entries {
                    out.push_str(&join(row));
                    out.push('\n');
                }
            }
        }
        match &self.isogeny {
            Isogeny::SimplyConnected => out.push_str("isogeny simply_connected\n"),
            Isogeny::Adjoint => out.push_str("isogeny adjoint\n"),
            Isogeny::Lattice(rows) => {
                out.push_str("isogeny lattice\n");
                for row in rows {
                    out.push_str(&join(row));
                    out.push('\n');
                }
            }
        }
        if self.has_trivial_twist() {
            out.push_str("twist id\n");
        } else {
            let imgs: Vec<usize> = self.twist.iter().map(|t| t + 1).collect();
            out.push_str(&format!("twist {}\n", join(&imgs)));
        }
        out
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
