//! Orthogonality, direct summands and the Boolean algebra of projections.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, ExtremumError, Result};
use crate::monoid::{greatest, least, Elem, MonoidTable};

/// A projection named by the set of atoms below it (bit `i` = atom `i`).
pub type Mask = u32;

/// Largest number of atoms handled.
pub const MAX_ATOMS: usize = 20;

/// `a ⊥ b`: the only common lower bound is 0.
pub fn perp_table(t: &MonoidTable) -> Vec<bool> {
    let n = t.len();
    let mut out = vec![true; n * n];
    for x in 1..n {
        let ups: Vec<Elem> = t.elements().filter(|&a| t.leq(x, a)).collect();
        for &a in &ups {
            for &b in &ups {
                out[a * n + b] = false;
            }
        }
    }
    out
}

/// `X^⊥`: all elements orthogonal to every member of `set`.
pub fn orthocomplement(t: &MonoidTable, set: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    let perp = perp_table(t);
    let n = t.len();
    t.elements()
        .filter(|&s| set.iter().all(|&x| perp[s * n + x]))
        .collect()
}

/// Nonempty, and `a+b` lies in the set iff `a` and `b` do (for defined sums).
pub fn is_ideal(t: &MonoidTable, set: &BTreeSet<Elem>) -> bool {
    if set.is_empty() {
        return false;
    }
    t.elements().all(|a| {
        t.elements().all(|b| match t.add(a, b) {
            Some(c) => set.contains(&c) == (set.contains(&a) && set.contains(&b)),
            None => true,
        })
    })
}

/// A projection: range `pS`, kernel `(pS)^⊥` and the component map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub mask: Mask,
    pub range: BTreeSet<Elem>,
    pub kernel: BTreeSet<Elem>,
    pub map: Vec<Elem>,
}

impl Projection {
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }
}

/// The finite Boolean algebra `B(S)`.
#[derive(Debug, Clone)]
pub struct ProjectionAlgebra {
    host: MonoidTable,
    perp: Vec<bool>,
    projections: Vec<Projection>,
    atom_count: usize,
}

/// Failure of a Boolean value computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolValueError {
    /// Only reachable through a corrupted algebra, since 0 always qualifies.
    EmptyFamily,
    /// The join of the qualifying projections does not qualify.
    NoMaximum { maximal: Vec<Mask> },
}

impl fmt::Display for BoolValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolValueError::EmptyFamily => write!(f, "no projection qualifies"),
            BoolValueError::NoMaximum { maximal } => {
                write!(f, "no largest projection, maximal ones {maximal:?}")
            }
        }
    }
}

fn from_bits(b: &FixedBitSet) -> BTreeSet<Elem> {
    b.ones().collect()
}

fn ortho_bits(n: usize, perp: &[bool], s: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n);
    for x in 0..n {
        if s.ones().all(|y| perp[x * n + y]) {
            out.insert(x);
        }
    }
    out
}

/// Closes `{a^⊥⊥ : a ∈ S}` under intersection and orthocomplement.
fn candidate_summands(t: &MonoidTable, perp: &[bool]) -> Result<Vec<FixedBitSet>> {
    let n = t.len();
    let ortho = |s: &FixedBitSet| ortho_bits(n, perp, s);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut summands: Vec<FixedBitSet> = Vec::new();
    let mut push = |s: FixedBitSet, summands: &mut Vec<FixedBitSet>| {
        if found.insert(s.ones().collect()) {
            summands.push(s);
        }
    };
    for a in t.elements() {
        let mut single = FixedBitSet::with_capacity(n);
        single.insert(a);
        push(ortho(&ortho(&single)), &mut summands);
    }
    let mut done = 0;
    while done < summands.len() {
        let s = summands[done].clone();
        push(ortho(&s), &mut summands);
        for k in 0..=done {
            let mut m = s.clone();
            m.intersect_with(&summands[k]);
            push(m, &mut summands);
        }
        done += 1;
        if summands.len() > 1 << MAX_ATOMS {
            return Err(Error::Decomposition("too many summands".into()));
        }
    }
    Ok(summands)
}

/// The component map `x ↦ x_0` for `x = x_0 + x_1`, `x_0 ∈ I`, `x_1 ∈ I^⊥`,
/// or a description of why the decomposition fails.
fn component_map(
    t: &MonoidTable,
    perp: &[bool],
    s: &FixedBitSet,
) -> std::result::Result<Vec<Elem>, String> {
    let n = t.len();
    let k = ortho_bits(n, perp, s);
    let mut map = vec![0; n];
    for (x, slot) in map.iter_mut().enumerate() {
        let mut hits = Vec::new();
        for x0 in s.ones() {
            for x1 in k.ones() {
                if t.add(x0, x1) == Some(x) {
                    hits.push(x0);
                }
            }
        }
        match hits.as_slice() {
            [x0] => *slot = *x0,
            [] => {
                return Err(format!(
                    "{} has no decomposition along {:?}",
                    t.label(x),
                    s.ones().collect::<Vec<_>>()
                ))
            }
            _ => {
                return Err(format!(
                    "{} decomposes in several ways along {:?}",
                    t.label(x),
                    s.ones().collect::<Vec<_>>()
                ))
            }
        }
    }
    Ok(map)
}

/// Projections for those generated candidate summands that are direct
/// summands, as `(range, map)` pairs. On a scale these are all of `B(S)`.
pub fn summand_projections(t: &MonoidTable) -> Result<Vec<(BTreeSet<Elem>, Vec<Elem>)>> {
    let perp = perp_table(t);
    let cands = candidate_summands(t, &perp)?;
    Ok(cands
        .iter()
        .filter_map(|s| component_map(t, &perp, s).ok().map(|m| (from_bits(s), m)))
        .collect())
}

impl ProjectionAlgebra {
    /// Generates all direct summands by closing `{a^⊥⊥}` under intersection
    /// and orthocomplement, then builds one projection per summand.
    pub fn new(t: &MonoidTable) -> Result<Self> {
        let n = t.len();
        let perp = perp_table(t);
        let ortho = |s: &FixedBitSet| ortho_bits(n, &perp, s);
        let summands = candidate_summands(t, &perp)?;
        let mut maps = Vec::with_capacity(summands.len());
        for s in &summands {
            maps.push(component_map(t, &perp, s).map_err(Error::Decomposition)?);
        }

        let mut atoms: Vec<usize> = (0..summands.len())
            .filter(|&i| summands[i].count_ones(..) > 1)
            .filter(|&i| {
                !summands
                    .iter()
                    .any(|o| o.count_ones(..) > 1 && o.is_subset(&summands[i]) && *o != summands[i])
            })
            .collect();
        atoms.sort_by_key(|&i| summands[i].ones().find(|&x| x != 0));
        if atoms.len() > MAX_ATOMS {
            return Err(Error::Decomposition(format!(
                "{} atoms exceed the limit",
                atoms.len()
            )));
        }
        let k = atoms.len();
        let mut by_mask: Vec<Option<usize>> = vec![None; 1 << k];
        for (i, s) in summands.iter().enumerate() {
            let mut mask: Mask = 0;
            for (j, &a) in atoms.iter().enumerate() {
                if summands[a].is_subset(s) {
                    mask |= 1 << j;
                }
            }
            if by_mask[mask as usize].is_some() {
                return Err(Error::Decomposition(format!(
                    "two summands share atoms {mask:#b}"
                )));
            }
            by_mask[mask as usize] = Some(i);
        }
        let mut projections = Vec::with_capacity(1 << k);
        for (mask, slot) in by_mask.iter().enumerate() {
            let Some(i) = slot else {
                return Err(Error::Decomposition(format!(
                    "summands do not form a Boolean algebra; join {mask:#b} missing"
                )));
            };
            let range = summands[*i].clone();
            let kernel = ortho(&range);
            projections.push(Projection {
                mask: mask as Mask,
                range: from_bits(&range),
                kernel: from_bits(&kernel),
                map: maps[*i].clone(),
            });
        }
        Ok(ProjectionAlgebra {
            host: t.clone(),
            perp,
            projections,
            atom_count: k,
        })
    }

    pub fn host(&self) -> &MonoidTable {
        &self.host
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn top(&self) -> Mask {
        ((1u64 << self.atom_count) - 1) as Mask
    }

    pub fn complement(&self, p: Mask) -> Mask {
        self.top() & !p
    }

    pub fn masks(&self) -> impl Iterator<Item = Mask> {
        0..=self.top()
    }

    pub fn atom(&self, i: usize) -> Mask {
        1 << i
    }

    pub fn get(&self, p: Mask) -> &Projection {
        &self.projections[p as usize]
    }

    pub fn all(&self) -> &[Projection] {
        &self.projections
    }

    pub fn apply(&self, p: Mask, x: Elem) -> Elem {
        self.projections[p as usize].map[x]
    }

    pub fn perp(&self, a: Elem, b: Elem) -> bool {
        self.perp[a * self.host.len() + b]
    }

    /// `p ≤ q` iff `pS ⊆ qS`.
    pub fn leq(&self, p: Mask, q: Mask) -> bool {
        self.get(p).range.is_subset(&self.get(q).range)
    }

    /// The atoms below `p`.
    pub fn atoms_of(&self, p: Mask) -> impl Iterator<Item = usize> + '_ {
        (0..self.atom_count).filter(move |i| p & (1 << i) != 0)
    }

    /// `⟦a ≤ b⟧`: the largest projection with `p(a) ≤ p(b)`.
    pub fn bool_value_leq(&self, a: Elem, b: Elem) -> std::result::Result<Mask, BoolValueError> {
        let t = &self.host;
        let good: Vec<Mask> = self
            .masks()
            .filter(|&p| t.leq(self.apply(p, a), self.apply(p, b)))
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

    /// `cc(a) = ⟦a = 0⟧^⊥`.
    pub fn central_cover(&self, a: Elem) -> std::result::Result<Mask, BoolValueError> {
        Ok(self.complement(self.bool_value_leq(a, 0)?))
    }

    /// First `p`, in increasing mask order, with `p(x) ≤ p(y)` and `p^⊥(x) ≥ p^⊥(y)`.
    pub fn comparability_witness(&self, x: Elem, y: Elem) -> Option<Mask> {
        let t = &self.host;
        self.masks().find(|&p| {
            let q = self.complement(p);
            t.leq(self.apply(p, x), self.apply(p, y)) && t.leq(self.apply(q, y), self.apply(q, x))
        })
    }
}

/// `b∖a`: the least `x` with `b ≤ a + x`.
pub fn least_difference(
    t: &MonoidTable,
    a: Elem,
    b: Elem,
) -> std::result::Result<Elem, ExtremumError> {
    let cands: Vec<Elem> = t
        .elements()
        .filter(|&x| t.add(a, x).is_some_and(|s| t.leq(b, s)))
        .collect();
    least(t, &cands, "least difference")
}

/// `b−a`: the largest `c` with `a + c ≤ b`.
pub fn largest_difference(
    t: &MonoidTable,
    a: Elem,
    b: Elem,
) -> std::result::Result<Elem, ExtremumError> {
    let cands: Vec<Elem> = t
        .elements()
        .filter(|&c| t.add(a, c).is_some_and(|s| t.leq(s, b)))
        .collect();
    greatest(t, &cands, "largest difference")
}

/// `a ≪_rem b`: `a ≤ b`, and `b ≤ a + x` forces `b ≤ x`.
pub fn is_removable(t: &MonoidTable, a: Elem, b: Elem) -> bool {
    t.leq(a, b)
        && t.elements().all(|x| match t.add(a, x) {
            Some(s) if t.leq(b, s) => t.leq(b, x),
            _ => true,
        })
}
