//! Finite partial commutative monoids given by an addition table.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, ExtremumError, Result};

/// Element index. Index 0 is always the zero element.
pub type Elem = usize;

/// Default bound on exhaustive checkers.
pub const DEFAULT_MAX_SIZE: usize = 64;

/// Default bound on formal sum length in [`RefMonoid`].
pub const DEFAULT_REF_LEN: usize = 6;

/// A finite carrier with a partial addition table.
///
/// The table is not required to satisfy the monoid laws; [`validate_pcm`]
/// reports what fails.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidTable {
    labels: Vec<String>,
    add: Vec<Option<Elem>>,
    leq: Vec<bool>,
}

impl fmt::Debug for MonoidTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidTable")
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl MonoidTable {
    pub fn new(labels: Vec<String>, add: Vec<Option<Elem>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if add.len() != n * n {
            return Err(Error::TableShape {
                expected: n * n,
                got: add.len(),
            });
        }
        if let Some(bad) = add.iter().flatten().find(|&&c| c >= n) {
            return Err(Error::BadIndex(*bad));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for x in 0..n {
                if let Some(b) = add[a * n + x] {
                    leq[a * n + b] = true;
                }
            }
        }
        Ok(MonoidTable { labels, add, leq })
    }

    /// Builds a table from a closure over index pairs.
    pub fn from_fn<F>(labels: Vec<String>, f: F) -> Result<Self>
    where
        F: Fn(Elem, Elem) -> Option<Elem>,
    {
        let n = labels.len();
        let mut add = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(f(a, b));
            }
        }
        Self::new(labels, add)
    }

    /// The truncated chain {0..n} with sums defined up to `n`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..=n).map(|i| i.to_string()).collect();
        Self::from_fn(labels, |a, b| (a + b <= n).then_some(a + b)).expect("chain table")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.add[a * self.len() + b]
    }

    /// Algebraic preorder: `a <= b` iff `a + x = b` for some `x`.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    /// Left-to-right sum; `None` if some partial sum is undefined.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Option<Elem> {
        items.into_iter().try_fold(0, |acc, x| self.add(acc, x))
    }

    /// `k * a`, with `0 * a = 0`.
    pub fn multiple(&self, k: usize, a: Elem) -> Option<Elem> {
        (0..k).try_fold(0, |acc, _| self.add(acc, a))
    }

    pub fn check_size(&self, limit: usize) -> Result<()> {
        if self.len() > limit {
            Err(Error::TooLarge {
                size: self.len(),
                limit,
            })
        } else {
            Ok(())
        }
    }

    /// Greatest lower bound in the algebraic order, if it exists and is unique.
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        let lower: Vec<Elem> = self
            .elements()
            .filter(|&x| self.leq(x, a) && self.leq(x, b))
            .collect();
        greatest(self, &lower, "meet").ok()
    }

    /// Least upper bound in the algebraic order, if it exists and is unique.
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        let upper: Vec<Elem> = self
            .elements()
            .filter(|&x| self.leq(a, x) && self.leq(b, x))
            .collect();
        least(self, &upper, "join").ok()
    }
}

/// The least element of `candidates` in the algebraic order.
pub fn least(
    t: &MonoidTable,
    candidates: &[Elem],
    what: &str,
) -> std::result::Result<Elem, ExtremumError> {
    extremum(candidates, what, |m, x| t.leq(m, x))
}

/// The largest element of `candidates` in the algebraic order.
pub fn greatest(
    t: &MonoidTable,
    candidates: &[Elem],
    what: &str,
) -> std::result::Result<Elem, ExtremumError> {
    extremum(candidates, what, |m, x| t.leq(x, m))
}

fn extremum<F: Fn(Elem, Elem) -> bool>(
    candidates: &[Elem],
    what: &str,
    dominates: F,
) -> std::result::Result<Elem, ExtremumError> {
    if candidates.is_empty() {
        return Err(ExtremumError::Empty {
            what: what.to_string(),
        });
    }
    let winners: Vec<Elem> = candidates
        .iter()
        .copied()
        .filter(|&m| candidates.iter().all(|&x| dominates(m, x)))
        .collect();
    match winners.as_slice() {
        [] => Err(ExtremumError::NoExtremum {
            what: what.to_string(),
            candidates: candidates.to_vec(),
        }),
        [m] => Ok(*m),
        [a, b, ..] => Err(ExtremumError::NotUnique {
            what: what.to_string(),
            first: *a,
            second: *b,
        }),
    }
}

/// A violated clause of the partial commutative monoid definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PcmViolation {
    ZeroLaw { a: Elem },
    Commutativity { a: Elem, b: Elem },
    Associativity { a: Elem, b: Elem, c: Elem },
}

impl fmt::Display for PcmViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PcmViolation::ZeroLaw { a } => write!(f, "zero law fails at {a}"),
            PcmViolation::Commutativity { a, b } => write!(f, "commutativity fails at ({a},{b})"),
            PcmViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a},{b},{c})")
            }
        }
    }
}

/// Every violated clause with a witness; empty iff `t` is a partial commutative monoid.
pub fn validate_pcm(t: &MonoidTable) -> Vec<PcmViolation> {
    let mut out = Vec::new();
    for a in t.elements() {
        if t.add(a, 0) != Some(a) || t.add(0, a) != Some(a) {
            out.push(PcmViolation::ZeroLaw { a });
        }
    }
    for a in t.elements() {
        for b in t.elements() {
            if b > a && t.add(a, b) != t.add(b, a) {
                out.push(PcmViolation::Commutativity { a, b });
            }
        }
    }
    for a in t.elements() {
        for b in t.elements() {
            for c in t.elements() {
                let left = t.add(a, b).and_then(|ab| t.add(ab, c));
                let right = t.add(b, c).and_then(|bc| t.add(a, bc));
                if left != right {
                    out.push(PcmViolation::Associativity { a, b, c });
                }
            }
        }
    }
    out
}

pub fn alg_leq(t: &MonoidTable, a: Elem, b: Elem) -> bool {
    t.leq(a, b)
}

/// Whether `x + y = 0` forces `x = y = 0`.
pub fn conical_witness(t: &MonoidTable) -> Option<(Elem, Elem)> {
    for x in t.elements() {
        for y in t.elements() {
            if (x, y) != (0, 0) && t.add(x, y) == Some(0) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Restriction of `t` to the lower subset `set`, with the index map into `t`.
pub fn lower_submonoid(t: &MonoidTable, set: &BTreeSet<Elem>) -> Result<(MonoidTable, Vec<Elem>)> {
    if !set.contains(&0) {
        return Err(Error::MissingZero);
    }
    if let Some(&bad) = set.iter().find(|&&x| x >= t.len()) {
        return Err(Error::BadIndex(bad));
    }
    for &above in set {
        for below in t.elements() {
            if t.leq(below, above) && !set.contains(&below) {
                return Err(Error::NotLower { below, above });
            }
        }
    }
    let map: Vec<Elem> = set.iter().copied().collect();
    let mut back = vec![None; t.len()];
    for (i, &x) in map.iter().enumerate() {
        back[x] = Some(i);
    }
    let labels = map.iter().map(|&x| t.label(x).to_string()).collect();
    let sub = MonoidTable::from_fn(labels, |i, j| t.add(map[i], map[j]).and_then(|c| back[c]))?;
    if let Err(v) = verify_lower_embedding(&sub, t, &map) {
        return Err(Error::Precondition(format!(
            "restriction is not a lower embedding: {v}"
        )));
    }
    Ok((sub, map))
}

/// `S^•`: a new top element absorbing every undefined sum.
pub fn adjoin_infinity(t: &MonoidTable) -> MonoidTable {
    let n = t.len();
    let mut top = String::from("inf");
    while t.index_of(&top).is_some() {
        top.push('\'');
    }
    let mut labels = t.labels.clone();
    labels.push(top);
    MonoidTable::from_fn(labels, |a, b| {
        if a == n || b == n {
            Some(n)
        } else {
            Some(t.add(a, b).unwrap_or(n))
        }
    })
    .expect("extended table")
}

/// A matrix of elements with prescribed row and column sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementMatrix {
    pub entries: Vec<Vec<Elem>>,
}

/// The first 2x2 matrix, in row-major index order, with row sums `(a0,a1)`
/// and column sums `(b0,b1)`.
pub fn find_refinement(
    t: &MonoidTable,
    a0: Elem,
    a1: Elem,
    b0: Elem,
    b1: Elem,
) -> Result<Option<RefinementMatrix>> {
    for &x in &[a0, a1, b0, b1] {
        if x >= t.len() {
            return Err(Error::BadIndex(x));
        }
    }
    let left = t.add(a0, a1);
    let right = t.add(b0, b1);
    if left.is_none() || left != right {
        return Err(Error::UnequalMarginals(
            format!("{a0}+{a1}"),
            format!("{b0}+{b1}"),
        ));
    }
    Ok(search_matrix(t, &[a0, a1], &[b0, b1]))
}

/// Backtracking search for an m x n matrix with given marginals, first in
/// row-major index order.
pub fn search_matrix(t: &MonoidTable, rows: &[Elem], cols: &[Elem]) -> Option<RefinementMatrix> {
    let (m, n) = (rows.len(), cols.len());
    let mut cells = vec![0; m * n];
    let mut row_acc = vec![0; m];
    let mut col_acc = vec![0; n];
    if fill(t, rows, cols, 0, &mut cells, &mut row_acc, &mut col_acc) {
        Some(RefinementMatrix {
            entries: cells.chunks(n).map(|r| r.to_vec()).collect(),
        })
    } else {
        None
    }
}

fn fill(
    t: &MonoidTable,
    rows: &[Elem],
    cols: &[Elem],
    pos: usize,
    cells: &mut [Elem],
    row_acc: &mut [Elem],
    col_acc: &mut [Elem],
) -> bool {
    let n = cols.len();
    let m = rows.len();
    if pos == m * n {
        return true;
    }
    let (i, j) = (pos / n, pos % n);
    let last_col = j + 1 == n;
    let last_row = i + 1 == m;
    for c in t.elements() {
        let (Some(r), Some(k)) = (t.add(row_acc[i], c), t.add(col_acc[j], c)) else {
            continue;
        };
        if !t.leq(r, rows[i]) || !t.leq(k, cols[j]) {
            continue;
        }
        if (last_col && r != rows[i]) || (last_row && k != cols[j]) {
            continue;
        }
        let (old_r, old_k) = (row_acc[i], col_acc[j]);
        row_acc[i] = r;
        col_acc[j] = k;
        cells[pos] = c;
        if fill(t, rows, cols, pos + 1, cells, row_acc, col_acc) {
            return true;
        }
        row_acc[i] = old_r;
        col_acc[j] = old_k;
    }
    false
}

/// A quadruple with `a0+a1 = b0+b1` and no refinement matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementFailure {
    pub a: (Elem, Elem),
    pub b: (Elem, Elem),
}

impl fmt::Display for RefinementFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{} = {}+{} has no refinement",
            self.a.0, self.a.1, self.b.0, self.b.1
        )
    }
}

/// Refinement for every equal-sum quadruple, or the first counterexample.
pub fn check_refinement(t: &MonoidTable) -> std::result::Result<(), RefinementFailure> {
    let n = t.len();
    let mut by_sum: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = t.add(a, b) {
                by_sum[c].push((a, b));
            }
        }
    }
    for pairs in &by_sum {
        for &(a0, a1) in pairs {
            for &(b0, b1) in pairs {
                if search_matrix(t, &[a0, a1], &[b0, b1]).is_none() {
                    return Err(RefinementFailure {
                        a: (a0, a1),
                        b: (b0, b1),
                    });
                }
            }
        }
    }
    Ok(())
}

/// A nonempty multiset of elements, read as a formal sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum {
    summands: Vec<Elem>,
}

impl FormalSum {
    pub fn new(mut summands: Vec<Elem>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::EmptySum);
        }
        summands.sort_unstable();
        Ok(FormalSum { summands })
    }

    pub fn summands(&self) -> &[Elem] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The word problem of the universal refinement monoid `Ref S` over a
/// conical partial refinement monoid: two formal sums are equal iff some
/// matrix has them as row and column sums.
#[derive(Debug, Clone)]
pub struct RefMonoid {
    host: MonoidTable,
    max_len: usize,
}

impl RefMonoid {
    pub fn new(host: MonoidTable) -> Result<Self> {
        Self::with_bound(host, DEFAULT_REF_LEN)
    }

    pub fn with_bound(host: MonoidTable, max_len: usize) -> Result<Self> {
        if let Some((x, y)) = conical_witness(&host) {
            return Err(Error::NotConical(x, y));
        }
        if let Err(w) = check_refinement(&host) {
            return Err(Error::NotRefinement(w.to_string()));
        }
        Ok(RefMonoid { host, max_len })
    }

    pub fn host(&self) -> &MonoidTable {
        &self.host
    }

    pub fn eq(&self, u: &FormalSum, v: &FormalSum) -> Result<bool> {
        Ok(self.witness(u, v)?.is_some())
    }

    pub fn witness(&self, u: &FormalSum, v: &FormalSum) -> Result<Option<RefinementMatrix>> {
        for s in [u, v] {
            if s.len() > self.max_len {
                return Err(Error::SumTooLong {
                    len: s.len(),
                    bound: self.max_len,
                });
            }
            if let Some(&bad) = s.summands().iter().find(|&&x| x >= self.host.len()) {
                return Err(Error::BadIndex(bad));
            }
        }
        Ok(search_matrix(&self.host, u.summands(), v.summands()))
    }
}

/// `ref_eq` as a one-shot call.
pub fn ref_eq(t: &MonoidTable, u: &FormalSum, v: &FormalSum) -> Result<bool> {
    RefMonoid::new(t.clone())?.eq(u, v)
}

/// A violated clause of the lower embedding definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    NotTotal,
    ZeroNotPreserved,
    SumNotPreserved { x: Elem, y: Elem },
    NotInjective { x: Elem, y: Elem },
    NotOrderReflecting { x: Elem, y: Elem },
    RangeNotLower { below: Elem, above: Elem },
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingViolation::NotTotal => write!(f, "map is not total"),
            EmbeddingViolation::ZeroNotPreserved => write!(f, "zero is not preserved"),
            EmbeddingViolation::SumNotPreserved { x, y } => write!(f, "sum {x}+{y} not preserved"),
            EmbeddingViolation::NotInjective { x, y } => {
                write!(f, "{x} and {y} have the same image")
            }
            EmbeddingViolation::NotOrderReflecting { x, y } => {
                write!(
                    f,
                    "image of {x} is below image of {y} but {x} is not below {y}"
                )
            }
            EmbeddingViolation::RangeNotLower { below, above } => {
                write!(f, "range is not lower: {below} is below image {above}")
            }
        }
    }
}

/// Checks that `f: A -> B` is a homomorphism, injective and order-reflecting,
/// with lower range.
pub fn verify_lower_embedding(
    a: &MonoidTable,
    b: &MonoidTable,
    f: &[Elem],
) -> std::result::Result<(), EmbeddingViolation> {
    if f.len() != a.len() || f.iter().any(|&y| y >= b.len()) {
        return Err(EmbeddingViolation::NotTotal);
    }
    if f[0] != 0 {
        return Err(EmbeddingViolation::ZeroNotPreserved);
    }
    for x in a.elements() {
        for y in a.elements() {
            if let Some(s) = a.add(x, y) {
                if b.add(f[x], f[y]) != Some(f[s]) {
                    return Err(EmbeddingViolation::SumNotPreserved { x, y });
                }
            }
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if x < y && f[x] == f[y] {
                return Err(EmbeddingViolation::NotInjective { x, y });
            }
            if b.leq(f[x], f[y]) && !a.leq(x, y) {
                return Err(EmbeddingViolation::NotOrderReflecting { x, y });
            }
        }
    }
    let mut in_range = vec![false; b.len()];
    for &y in f {
        in_range[y] = true;
    }
    for &above in f {
        for below in b.elements() {
            if b.leq(below, above) && !in_range[below] {
                return Err(EmbeddingViolation::RangeNotLower { below, above });
            }
        }
    }
    Ok(())
}

/// Whether `f: A -> B` is a bijection with `x+y=z` iff `f(x)+f(y)=f(z)`.
pub fn is_isomorphism(a: &MonoidTable, b: &MonoidTable, f: &[Elem]) -> bool {
    if a.len() != b.len() || f.len() != a.len() {
        return false;
    }
    let mut seen = vec![false; b.len()];
    for &y in f {
        if y >= b.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    a.elements().all(|x| {
        a.elements()
            .all(|y| a.add(x, y).map(|s| f[s]) == b.add(f[x], f[y]))
    })
}

/// Cartesian product with componentwise partial addition. Elements are
/// indexed lexicographically, first factor most significant.
pub fn product(factors: &[MonoidTable]) -> MonoidTable {
    let sizes: Vec<usize> = factors.iter().map(|t| t.len()).collect();
    let total: usize = sizes.iter().product();
    let decode = |mut i: usize| {
        let mut out = vec![0; sizes.len()];
        for k in (0..sizes.len()).rev() {
            out[k] = i % sizes[k];
            i /= sizes[k];
        }
        out
    };
    let encode = |v: &[usize]| v.iter().zip(&sizes).fold(0, |acc, (&x, &s)| acc * s + x);
    let labels = (0..total)
        .map(|i| {
            let parts: Vec<&str> = decode(i)
                .iter()
                .zip(factors)
                .map(|(&x, t)| t.label(x))
                .collect();
            if parts.len() == 1 {
                parts[0].to_string()
            } else {
                format!("({})", parts.join(","))
            }
        })
        .collect();
    MonoidTable::from_fn(labels, |i, j| {
        let (x, y) = (decode(i), decode(j));
        let mut z = Vec::with_capacity(x.len());
        for k in 0..x.len() {
            z.push(factors[k].add(x[k], y[k])?);
        }
        Some(encode(&z))
    })
    .expect("product table")
}
