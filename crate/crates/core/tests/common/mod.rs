//! Brute-force oracles shared by the integration tests. They use only the
//! raw addition table, never the library's derived operations.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dimscale::corpus;
use dimscale::monoid::{Elem, MonoidTable};

/// `a <= b` by searching every `x` with `a + x = b`.
pub fn leq(t: &MonoidTable, a: Elem, b: Elem) -> bool {
    t.elements().any(|x| t.add(a, x) == Some(b))
}

/// The unique element of `cands` below every other, if any.
pub fn least(t: &MonoidTable, cands: &[Elem]) -> Option<Elem> {
    let hits: Vec<Elem> = cands
        .iter()
        .copied()
        .filter(|&m| cands.iter().all(|&c| leq(t, m, c)))
        .collect();
    (hits.len() == 1).then(|| hits[0])
}

/// The unique element of `cands` above every other, if any.
pub fn greatest(t: &MonoidTable, cands: &[Elem]) -> Option<Elem> {
    let hits: Vec<Elem> = cands
        .iter()
        .copied()
        .filter(|&m| cands.iter().all(|&c| leq(t, c, m)))
        .collect();
    (hits.len() == 1).then(|| hits[0])
}

/// Greatest lower bound under the brute-force order.
pub fn meet(t: &MonoidTable, a: Elem, b: Elem) -> Option<Elem> {
    let lower: Vec<Elem> = t
        .elements()
        .filter(|&x| leq(t, x, a) && leq(t, x, b))
        .collect();
    greatest(t, &lower)
}

/// Least upper bound under the brute-force order.
pub fn join(t: &MonoidTable, a: Elem, b: Elem) -> Option<Elem> {
    let upper: Vec<Elem> = t
        .elements()
        .filter(|&x| leq(t, a, x) && leq(t, b, x))
        .collect();
    least(t, &upper)
}

/// `a ⊥ b`: every common lower bound is zero.
pub fn perp(t: &MonoidTable, a: Elem, b: Elem) -> bool {
    t.elements()
        .all(|x| x == 0 || !(leq(t, x, a) && leq(t, x, b)))
}

/// Every ideal (lower subset closed under defined sums), found by closing
/// `{0}` plus one element at a time.
pub fn ideals(t: &MonoidTable) -> Vec<BTreeSet<Elem>> {
    let close = |mut set: BTreeSet<Elem>| loop {
        let mut next = set.clone();
        for &a in &set {
            next.extend(t.elements().filter(|&x| leq(t, x, a)));
            for &b in &set {
                next.extend(t.add(a, b));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    };
    let mut seen = BTreeSet::from([close(BTreeSet::from([0]))]);
    let mut stack: Vec<BTreeSet<Elem>> = seen.iter().cloned().collect();
    while let Some(i) = stack.pop() {
        for x in t.elements().filter(|x| !i.contains(x)) {
            let mut j = i.clone();
            j.insert(x);
            let j = close(j);
            if seen.insert(j.clone()) {
                stack.push(j);
            }
        }
    }
    seen.into_iter().collect()
}

/// `X^⊥` by brute force.
pub fn ortho(t: &MonoidTable, set: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    t.elements()
        .filter(|&s| set.iter().all(|&x| perp(t, s, x)))
        .collect()
}

/// A direct summand `I` with its component map `x ↦ i`, where
/// `x = i + k` uniquely with `i ∈ I` and `k ∈ I^⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub range: BTreeSet<Elem>,
    pub map: Vec<Elem>,
}

/// Every direct summand, by brute force over ideals.
pub fn summands(t: &MonoidTable) -> Vec<Summand> {
    let mut out = Vec::new();
    for i in ideals(t) {
        let k = ortho(t, &i);
        let mut map = Vec::new();
        for x in t.elements() {
            let parts: Vec<Elem> = i
                .iter()
                .copied()
                .filter(|&a| k.iter().any(|&b| t.add(a, b) == Some(x)))
                .collect();
            let unique = parts.len() == 1
                && k.iter().filter(|&&b| t.add(parts[0], b) == Some(x)).count() == 1;
            if !unique {
                break;
            }
            map.push(parts[0]);
        }
        if map.len() == t.len() {
            out.push(Summand { range: i, map });
        }
    }
    out
}

/// The summand whose range contains every range in `cands`, if any.
pub fn largest_summand(cands: &[&Summand]) -> Option<Summand> {
    cands
        .iter()
        .find(|s| cands.iter().all(|o| o.range.is_subset(&s.range)))
        .map(|s| (*s).clone())
}

/// The summand whose range is contained in every range in `cands`, if any.
pub fn smallest_summand(cands: &[&Summand]) -> Option<Summand> {
    cands
        .iter()
        .find(|s| cands.iter().all(|o| s.range.is_subset(&o.range)))
        .map(|s| (*s).clone())
}

/// `⟦a ≤ b⟧` as a range.
pub fn bool_value(t: &MonoidTable, sums: &[Summand], a: Elem, b: Elem) -> Option<BTreeSet<Elem>> {
    let good: Vec<&Summand> = sums.iter().filter(|s| leq(t, s.map[a], s.map[b])).collect();
    largest_summand(&good).map(|s| s.range)
}

/// `cc(a)` as the smallest summand fixing `a`.
pub fn central_cover(sums: &[Summand], a: Elem) -> Option<BTreeSet<Elem>> {
    let fixing: Vec<&Summand> = sums.iter().filter(|s| s.map[a] == a).collect();
    smallest_summand(&fixing).map(|s| s.range)
}

/// `b∖a`: least `x` with `b ≤ a + x`.
pub fn least_difference(t: &MonoidTable, a: Elem, b: Elem) -> Option<Elem> {
    let c: Vec<Elem> = t
        .elements()
        .filter(|&x| t.add(a, x).is_some_and(|s| leq(t, b, s)))
        .collect();
    least(t, &c)
}

/// `b−a`: largest `c` with `a + c ≤ b`.
pub fn largest_difference(t: &MonoidTable, a: Elem, b: Elem) -> Option<Elem> {
    let c: Vec<Elem> = t
        .elements()
        .filter(|&x| t.add(a, x).is_some_and(|s| leq(t, s, b)))
        .collect();
    greatest(t, &c)
}

pub fn purely_infinite(t: &MonoidTable, a: Elem) -> bool {
    t.add(a, a) == Some(a)
}

/// `a|∞`: largest purely infinite element below `a`.
pub fn infinite_part(t: &MonoidTable, a: Elem) -> Option<Elem> {
    let c: Vec<Elem> = t
        .elements()
        .filter(|&u| purely_infinite(t, u) && leq(t, u, a))
        .collect();
    greatest(t, &c)
}

/// `a ≪_rem b`.
pub fn removable(t: &MonoidTable, a: Elem, b: Elem) -> bool {
    leq(t, a, b)
        && t.elements()
            .all(|x| t.add(a, x).is_none_or(|s| !leq(t, b, s) || leq(t, b, x)))
}

/// `⟨p,ℵ_n⟩` for finite `n`, or `⟨p,0⟩` when `n` is `None`; `p` given by
/// its range. Each layer is the least purely infinite `x` removable over
/// the previous layer with `cc(x) = p`.
pub fn layer(
    t: &MonoidTable,
    sums: &[Summand],
    p: &BTreeSet<Elem>,
    n: Option<u32>,
) -> Option<Elem> {
    let Some(n) = n else { return Some(0) };
    let mut cur = 0;
    for _ in 0..=n {
        let c: Vec<Elem> = t
            .elements()
            .filter(|&x| purely_infinite(t, x) && removable(t, cur, x))
            .filter(|&x| central_cover(sums, x).as_ref() == Some(p))
            .collect();
        cur = least(t, &c)?;
    }
    Some(cur)
}

/// Every finite corpus scale.
pub fn scales() -> Vec<(&'static str, MonoidTable)> {
    corpus::scales()
}

/// Corpus scales small enough for cubic and quartic sweeps.
pub fn small_scales() -> Vec<(&'static str, MonoidTable)> {
    corpus::scales()
        .into_iter()
        .filter(|(_, t)| t.len() <= 16)
        .collect()
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Every tuple of length `k` over `0..n`.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// An isomorphism `a -> b` by trying every bijection fixing zero.
pub fn find_isomorphism(a: &MonoidTable, b: &MonoidTable) -> Option<Vec<Elem>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    assert!(n <= 9, "isomorphism search is factorial");
    permutations(n - 1)
        .into_iter()
        .map(|p| {
            std::iter::once(0)
                .chain(p.into_iter().map(|x| x + 1))
                .collect::<Vec<_>>()
        })
        .find(|f| {
            a.elements().all(|x| {
                a.elements()
                    .all(|y| a.add(x, y).map(|s| f[s]) == b.add(f[x], f[y]))
            })
        })
}
