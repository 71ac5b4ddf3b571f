//! Generated espaliers: equipotency, group actions, subspace lattices,
//! products and lower subespaliers.

use std::collections::{BTreeSet, VecDeque};

use super::closure::additive_fixpoint;
use super::{espalier_closure, EspalierTable};
use crate::error::{Error, Result};
use crate::monoid::Elem;

/// Default carrier bound for generators.
pub const ESP_MAX_SIZE: usize = 256;

fn guard(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// The powerset of `points` points with `∼` the identity. Element `i` is the
/// subset with bitmask `i`.
fn powerset(points: usize, point_label: impl Fn(usize) -> String) -> Result<EspalierTable> {
    let size = 1usize << points;
    let labels = (0..size)
        .map(|m| {
            let parts: Vec<String> = (0..points)
                .filter(|&k| m >> k & 1 == 1)
                .map(&point_label)
                .collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    EspalierTable::from_fns(labels, |a, b| a & !b == 0, |a, b| a & b == 0, |a, b| a == b)
}

/// The powerset of `{1..n}` with disjointness and equal cardinality.
pub fn gen_equipotency(n: usize) -> Result<EspalierTable> {
    if !(1..=6).contains(&n) {
        return Err(Error::Params(format!(
            "equipotency needs 1 <= n <= 6, got {n}"
        )));
    }
    let base = powerset(n, |k| (k + 1).to_string())?;
    let classes: Vec<usize> = base.elements().map(|m| m.count_ones() as usize).collect();
    base.with_classes(&classes)
}

fn check_perm(n: usize, g: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if g.len() != n {
        return Err(Error::Params(format!(
            "permutation {g:?} does not have length {n}"
        )));
    }
    for &x in g {
        if x >= n || seen[x] {
            return Err(Error::Params(format!(
                "{g:?} is not a permutation of 0..{n}"
            )));
        }
        seen[x] = true;
    }
    Ok(())
}

/// The permutation group generated by `generators`, in BFS order from the
/// identity. Permutations are image lists over `0..n`.
pub fn group_closure(n: usize, generators: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    for g in generators {
        check_perm(n, g)?;
    }
    let id: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(out)
}

/// The Boolean espalier on subsets of `{1..n} × I`, `|I| = power`, whose
/// equivalence is the espalier closure of the orbit relation of `G^I ⋊ Sym(I)`,
/// where `G` is generated by `generators` acting on the first coordinate.
///
/// Point `(k, i)` is bit `i·n + k`; it is labelled `k+1` when `power = 1` and
/// `k+1` followed by the letter of `i` otherwise.
pub fn gen_group_action(
    n: usize,
    generators: &[Vec<usize>],
    power: usize,
    limit: usize,
) -> Result<EspalierTable> {
    if n == 0 || power == 0 || power > 26 {
        return Err(Error::Params(format!(
            "group action needs n >= 1 and 1 <= |I| <= 26, got {n} and {power}"
        )));
    }
    for g in generators {
        check_perm(n, g)?;
    }
    let points = n * power;
    if points >= usize::BITS as usize - 1 {
        return Err(Error::TooLarge {
            size: usize::MAX,
            limit,
        });
    }
    guard(1 << points, limit)?;
    let letter = |i: usize| char::from(b'a' + i as u8);
    let base = powerset(points, |p| {
        let (i, k) = (p / n, p % n);
        if power == 1 {
            (k + 1).to_string()
        } else {
            format!("{}{}", k + 1, letter(i))
        }
    })?;
    let mut moves: Vec<Vec<usize>> = Vec::new();
    for i in 0..power {
        for g in generators {
            moves.push(
                (0..points)
                    .map(|p| if p / n == i { i * n + g[p % n] } else { p })
                    .collect(),
            );
        }
    }
    for i in 0..power.saturating_sub(1) {
        moves.push(
            (0..points)
                .map(|p| match p / n {
                    j if j == i => (i + 1) * n + p % n,
                    j if j == i + 1 => i * n + p % n,
                    _ => p,
                })
                .collect(),
        );
    }
    let mut sim0 = Vec::new();
    for x in base.elements() {
        for mv in &moves {
            let y = (0..points)
                .filter(|&p| x >> p & 1 == 1)
                .fold(0, |acc, p| acc | 1 << mv[p]);
            sim0.push((x, y));
        }
    }
    espalier_closure(&base, &sim0)
}

fn digits(v: usize, q: usize, n: usize) -> Vec<usize> {
    (0..n).map(|j| v / q.pow(j as u32) % q).collect()
}

fn undigits(d: &[usize], q: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * q + x)
}

fn inverse(x: usize, q: usize) -> usize {
    (1..q)
        .find(|&y| x * y % q == 1)
        .expect("nonzero element of a prime field")
}

/// Reduced row echelon basis of a subspace, as digit strings.
fn echelon_label(space: u64, q: usize, n: usize) -> String {
    let mut basis: Vec<Vec<usize>> = Vec::new();
    for v in (0..q.pow(n as u32)).filter(|&v| space >> v & 1 == 1) {
        let mut d = digits(v, q, n);
        for b in &basis {
            let piv = b.iter().position(|&x| x != 0).expect("pivot");
            let f = d[piv];
            for j in 0..n {
                d[j] = (d[j] + (q - f) * b[j]) % q;
            }
        }
        let Some(piv) = d.iter().position(|&x| x != 0) else {
            continue;
        };
        let inv = inverse(d[piv], q);
        for x in d.iter_mut() {
            *x = *x * inv % q;
        }
        for b in basis.iter_mut() {
            let f = b[piv];
            for j in 0..n {
                b[j] = (b[j] + (q - f) * d[j]) % q;
            }
        }
        basis.push(d);
    }
    if basis.is_empty() {
        return "0".into();
    }
    basis.sort_by_key(|b| b.iter().position(|&x| x != 0));
    let rows: Vec<String> = basis
        .iter()
        .map(|b| b.iter().map(|x| x.to_string()).collect())
        .collect();
    format!("<{}>", rows.join(","))
}

/// The subspace lattice of `F_q^n` with `⊥` as trivial intersection and `∼`
/// as projectivity by decomposition.
///
/// Perspectivity `x ⊕ z = y ⊕ z` is found by axis search, projectivity is its
/// transitive closure, and the decomposition rule is applied as a fixpoint.
/// Subspaces are ordered by dimension, then by their vector bitmask.
pub fn gen_subspace_lattice(q: usize, n: usize) -> Result<EspalierTable> {
    if !matches!(q, 2 | 3) || !(1..=3).contains(&n) {
        return Err(Error::Params(format!(
            "subspace lattice needs q in {{2,3}} and 1 <= n <= 3, got {q} and {n}"
        )));
    }
    let size = q.pow(n as u32);
    let add = |u: usize, v: usize| {
        let (a, b) = (digits(u, q, n), digits(v, q, n));
        undigits(
            &a.iter()
                .zip(&b)
                .map(|(x, y)| (x + y) % q)
                .collect::<Vec<_>>(),
            q,
        )
    };
    let scale = |c: usize, v: usize| {
        undigits(
            &digits(v, q, n)
                .iter()
                .map(|x| x * c % q)
                .collect::<Vec<_>>(),
            q,
        )
    };
    let span_with = |s: u64, v: usize| {
        let mut out = 0u64;
        for w in (0..size).filter(|&w| s >> w & 1 == 1) {
            for c in 0..q {
                out |= 1 << add(w, scale(c, v));
            }
        }
        out
    };
    let mut spaces = BTreeSet::from([1u64]);
    let mut queue = VecDeque::from([1u64]);
    while let Some(s) = queue.pop_front() {
        for v in 0..size {
            let t = span_with(s, v);
            if spaces.insert(t) {
                queue.push_back(t);
            }
        }
    }
    let mut spaces: Vec<u64> = spaces.into_iter().collect();
    spaces.sort_by_key(|&s| (s.count_ones(), s));
    let m = spaces.len();
    let join_mask = |a: u64, b: u64| (0..size).filter(|&v| b >> v & 1 == 1).fold(a, span_with);
    let labels = spaces.iter().map(|&s| echelon_label(s, q, n)).collect();
    let l = EspalierTable::from_fns(
        labels,
        |a, b| spaces[a] & !spaces[b] == 0,
        |a, b| spaces[a] & spaces[b] == 1,
        |a, b| a == b,
    )?;
    let mut persp = vec![false; m * m];
    for x in 0..m {
        for y in 0..m {
            persp[x * m + y] = (0..m).any(|z| {
                spaces[x] & spaces[z] == 1
                    && spaces[y] & spaces[z] == 1
                    && join_mask(spaces[x], spaces[z]) == join_mask(spaces[y], spaces[z])
            });
        }
    }
    let projective = l.with_sim(persp)?;
    projective.with_classes(&additive_fixpoint(&projective))
}

/// A lower subset of an espalier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerSet {
    /// An explicit lower subset, which must contain `0`.
    Set(BTreeSet<Elem>),
    /// The principal ideal `(a]`.
    Ceiling(Elem),
}

/// How [`combine`] builds a new espalier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combine {
    /// Componentwise `≤`, `⊥` and `∼`, lexicographic index order with the
    /// first factor most significant.
    Product,
    /// Restriction of the single input to a lower subset.
    LowerSub(LowerSet),
}

/// Products and lower subespaliers.
pub fn combine(parts: &[&EspalierTable], mode: &Combine, limit: usize) -> Result<EspalierTable> {
    match mode {
        Combine::Product => product(parts, limit),
        Combine::LowerSub(set) => {
            let [l] = parts else {
                return Err(Error::Params(
                    "a lower subespalier takes exactly one input".into(),
                ));
            };
            lower_sub(l, set)
        }
    }
}

fn product(parts: &[&EspalierTable], limit: usize) -> Result<EspalierTable> {
    if parts.is_empty() {
        return Err(Error::Params("a product needs at least one factor".into()));
    }
    let sizes: Vec<usize> = parts.iter().map(|l| l.len()).collect();
    let total = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .unwrap_or(usize::MAX);
    guard(total, limit)?;
    let decode = |mut i: usize| {
        let mut out = vec![0; sizes.len()];
        for k in (0..sizes.len()).rev() {
            out[k] = i % sizes[k];
            i /= sizes[k];
        }
        out
    };
    let coords: Vec<Vec<usize>> = (0..total).map(decode).collect();
    let labels = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(parts).map(|(&x, l)| l.label(x)).collect();
            if parts.len() == 1 {
                parts[0].to_string()
            } else {
                format!("({})", parts.join(","))
            }
        })
        .collect();
    let all = |f: fn(&EspalierTable, Elem, Elem) -> bool, a: Elem, b: Elem| {
        parts
            .iter()
            .enumerate()
            .all(|(k, l)| f(l, coords[a][k], coords[b][k]))
    };
    EspalierTable::from_fns(
        labels,
        |a, b| all(EspalierTable::leq, a, b),
        |a, b| all(EspalierTable::perp, a, b),
        |a, b| all(EspalierTable::sim, a, b),
    )
}

fn lower_sub(l: &EspalierTable, set: &LowerSet) -> Result<EspalierTable> {
    let keep: Vec<Elem> = match set {
        LowerSet::Ceiling(a) => {
            if *a >= l.len() {
                return Err(Error::BadIndex(*a));
            }
            l.elements().filter(|&x| l.leq(x, *a)).collect()
        }
        LowerSet::Set(s) => {
            if let Some(&bad) = s.iter().find(|&&x| x >= l.len()) {
                return Err(Error::BadIndex(bad));
            }
            if !s.contains(&0) {
                return Err(Error::MissingZero);
            }
            for &b in s {
                if let Some(a) = l.elements().find(|&a| l.leq(a, b) && !s.contains(&a)) {
                    return Err(Error::NotLower { below: a, above: b });
                }
            }
            s.iter().copied().collect()
        }
    };
    let labels = keep.iter().map(|&a| l.label(a).to_string()).collect();
    EspalierTable::from_fns(
        labels,
        |a, b| l.leq(keep[a], keep[b]),
        |a, b| l.perp(keep[a], keep[b]),
        |a, b| l.sim(keep[a], keep[b]),
    )
}
