//! The dimension range `L/∼` and the operations that need it.

use std::collections::BTreeSet;

use super::EspalierTable;
use crate::error::{Error, Result};
use crate::monoid::{Elem, FormalSum, MonoidTable, RefMonoid, DEFAULT_REF_LEN};
use crate::projections::{least_difference, BoolValueError, Mask, ProjectionAlgebra};

/// `L/∼` with the addition induced by `⊕`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrngQuotient {
    pub scale: MonoidTable,
    /// `Δ(a)` for each element of `L`.
    pub delta: Vec<Elem>,
    /// The first element of each class.
    pub reps: Vec<Elem>,
}

/// Builds the quotient. Fails with a witness if the induced addition is not
/// well defined.
pub fn drng(l: &EspalierTable) -> Result<DrngQuotient> {
    let k = l.class_count();
    let delta: Vec<Elem> = l.elements().map(|a| l.class(a)).collect();
    let mut reps = vec![usize::MAX; k];
    for a in l.elements().rev() {
        reps[delta[a]] = a;
    }
    if delta[0] != 0 {
        return Err(Error::Precondition(
            "the least element is not in the first class".into(),
        ));
    }
    let mut add: Vec<Option<Elem>> = vec![None; k * k];
    let mut why: Vec<Option<(Elem, Elem)>> = vec![None; k * k];
    for (a, b, c) in l.oplus_pairs() {
        let slot = delta[a] * k + delta[b];
        match add[slot] {
            None => {
                add[slot] = Some(delta[c]);
                why[slot] = Some((a, b));
            }
            Some(d) if d != delta[c] => {
                let (x, y) = why[slot].expect("recorded witness");
                return Err(Error::Precondition(format!(
                    "ill-defined addition: {} (+) {} and {} (+) {} lie in different classes",
                    l.label(x),
                    l.label(y),
                    l.label(a),
                    l.label(b)
                )));
            }
            Some(_) => {}
        }
    }
    let labels = reps
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            if i == 0 {
                "0".to_string()
            } else {
                format!("[{}]", l.label(r))
            }
        })
        .collect();
    let scale = MonoidTable::new(labels, add)?;
    Ok(DrngQuotient { scale, delta, reps })
}

/// An espalier together with its dimension range and the projections of the
/// range.
#[derive(Debug, Clone)]
pub struct EspalierScale<'a> {
    esp: &'a EspalierTable,
    drng: DrngQuotient,
    algebra: ProjectionAlgebra,
}

impl<'a> EspalierScale<'a> {
    pub fn new(esp: &'a EspalierTable) -> Result<Self> {
        let drng = drng(esp)?;
        let algebra = ProjectionAlgebra::new(&drng.scale)?;
        Ok(EspalierScale { esp, drng, algebra })
    }

    pub fn espalier(&self) -> &EspalierTable {
        self.esp
    }

    pub fn drng(&self) -> &DrngQuotient {
        &self.drng
    }

    pub fn algebra(&self) -> &ProjectionAlgebra {
        &self.algebra
    }

    pub fn delta(&self, a: Elem) -> Elem {
        self.drng.delta[a]
    }

    /// `Δ(a) ⊥ Δ(b)` in the range.
    pub fn delta_perp(&self, a: Elem, b: Elem) -> bool {
        self.algebra.perp(self.delta(a), self.delta(b))
    }

    /// `a ⊞ b`: the join when `Δ(a) ⊥ Δ(b)`.
    pub fn boxplus(&self, a: Elem, b: Elem) -> Option<Elem> {
        if self.delta_perp(a, b) {
            self.esp.join(a, b)
        } else {
            None
        }
    }

    /// `p·a`: the largest `u ≤ a` with `Δ(u) ∈ pS`.
    pub fn p_dot(&self, p: Mask, a: Elem) -> Result<Elem> {
        let l = self.esp;
        let range = &self.algebra.get(p).range;
        let cands: Vec<Elem> = l
            .elements()
            .filter(|&u| l.leq(u, a) && range.contains(&self.delta(u)))
            .collect();
        let top = cands
            .iter()
            .copied()
            .find(|&u| cands.iter().all(|&v| l.leq(v, u)));
        top.ok_or_else(|| {
            Error::Precondition(format!(
                "no largest element below {} with range in {:#b}",
                l.label(a),
                p
            ))
        })
    }

    /// `⟦a ≲ b⟧`: the largest projection `p` with `p·a ≲ b`.
    pub fn bv_lesssim(&self, a: Elem, b: Elem) -> std::result::Result<Mask, BoolValueError> {
        let l = self.esp;
        let good: Vec<Mask> = self
            .algebra
            .masks()
            .filter(|&p| self.p_dot(p, a).is_ok_and(|u| l.lesssim(u, b)))
            .collect();
        if good.is_empty() {
            return Err(BoolValueError::EmptyFamily);
        }
        let join = good.iter().fold(0, |acc, &p| acc | p);
        if good.contains(&join) {
            Ok(join)
        } else {
            let maximal = good
                .iter()
                .copied()
                .filter(|&p| !good.iter().any(|&q| q != p && q & p == p))
                .collect();
            Err(BoolValueError::NoMaximum { maximal })
        }
    }

    /// `a ≤_trim b`: some `c` with `a ⊕ c = b` and `Δ(c) = Δ(b)∖Δ(a)`.
    pub fn trim_leq(&self, a: Elem, b: Elem) -> bool {
        let t = &self.drng.scale;
        let Ok(diff) = least_difference(t, self.delta(a), self.delta(b)) else {
            return false;
        };
        self.esp
            .elements()
            .any(|c| self.esp.oplus(a, c) == Some(b) && self.delta(c) == diff)
    }

    /// A trim lifting of an increasing chain in `[0, Δ(b)]` into `[0, b]`.
    /// Each step takes the first witness in index order.
    pub fn trim_lift(&self, b: Elem, chain: &[Elem]) -> Result<Vec<Elem>> {
        let l = self.esp;
        let t = &self.drng.scale;
        for (i, &x) in chain.iter().enumerate() {
            if x >= t.len() || !t.leq(x, self.delta(b)) {
                return Err(Error::Precondition(format!(
                    "chain entry {i} is not below the dimension of {}",
                    l.label(b)
                )));
            }
            if i > 0 && !t.leq(chain[i - 1], x) {
                return Err(Error::Precondition(format!(
                    "chain is not increasing at entry {i}"
                )));
            }
        }
        let mut out: Vec<Elem> = Vec::with_capacity(chain.len());
        for (i, &x) in chain.iter().enumerate() {
            let next = match out.last() {
                None => l.elements().find(|&u| l.leq(u, b) && self.delta(u) == x),
                Some(&prev) => l.elements().find(|&u| {
                    l.leq(prev, u) && l.leq(u, b) && self.delta(u) == x && self.trim_leq(prev, u)
                }),
            };
            match next {
                Some(u) => out.push(u),
                None => {
                    return Err(Error::Precondition(format!(
                        "no trim insertion witness at chain entry {i}"
                    )));
                }
            }
        }
        Ok(out)
    }
}

/// `Dim L` presented as the refinement word problem over `Drng L`, with the
/// relations D0–D2 checked on the generators `Δ(a, b)`.
#[derive(Debug, Clone)]
pub struct DimMonoid {
    pub drng: DrngQuotient,
    pub words: RefMonoid,
    /// Failed relations, empty when D0–D2 all hold.
    pub violations: Vec<String>,
}

impl DimMonoid {
    /// `Δ(a, b)` for `a ≤ b`, via a relative complement.
    pub fn generator(&self, l: &EspalierTable, a: Elem, b: Elem) -> Option<Elem> {
        dim_generator(l, &self.drng, a, b)
    }

    /// Equality of two formal sums of generators in `Dim L`.
    pub fn eq(&self, u: &FormalSum, v: &FormalSum) -> Result<bool> {
        self.words.eq(u, v)
    }
}

fn dim_generator(l: &EspalierTable, d: &DrngQuotient, a: Elem, b: Elem) -> Option<Elem> {
    if !l.leq(a, b) {
        return None;
    }
    l.relative_complement(a, b).map(|x| d.delta[x])
}

/// Builds `Dim L` and checks D0–D2 on every applicable pair or triple.
pub fn dim_monoid(l: &EspalierTable) -> Result<DimMonoid> {
    let drng = drng(l)?;
    let words = RefMonoid::with_bound(drng.scale.clone(), DEFAULT_REF_LEN)?;
    let t = &drng.scale;
    let gen = |a: Elem, b: Elem| dim_generator(l, &drng, a, b);
    let mut violations = Vec::new();
    for a in l.elements() {
        if gen(a, a) != Some(0) {
            violations.push(format!("D0 at {}", l.label(a)));
        }
    }
    let chains: BTreeSet<(Elem, Elem, Elem)> = l
        .elements()
        .flat_map(|a| l.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| l.leq(a, b))
        .flat_map(|(a, b)| {
            l.elements()
                .filter(move |&c| l.leq(b, c))
                .map(move |c| (a, b, c))
        })
        .collect();
    for (a, b, c) in chains {
        let lhs = gen(a, c);
        let rhs = gen(a, b).zip(gen(b, c)).and_then(|(x, y)| t.add(x, y));
        if lhs.is_none() || lhs != rhs {
            violations.push(format!(
                "D1 at {} <= {} <= {}",
                l.label(a),
                l.label(b),
                l.label(c)
            ));
        }
    }
    for a in l.elements() {
        for b in l.elements() {
            let (Some(j), Some(m)) = (l.join(a, b), l.meet(a, b)) else {
                continue;
            };
            if gen(a, j).is_none() || gen(a, j) != gen(m, b) {
                violations.push(format!("D2 at {} and {}", l.label(a), l.label(b)));
            }
        }
    }
    Ok(DimMonoid {
        drng,
        words,
        violations,
    })
}
