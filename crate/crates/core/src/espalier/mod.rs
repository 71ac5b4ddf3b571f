//! Finite espaliers `(L, ≤, ⊥, ∼)` given by relation tables.

mod closure;
mod drng;
mod generators;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::monoid::Elem;
use crate::scale::Verdict;

pub use closure::{check_pre_espalier, espalier_closure, is_boolean_lattice, PreEspalierFailure};
pub use drng::{dim_monoid, drng, DimMonoid, DrngQuotient, EspalierScale};
pub use generators::{
    combine, gen_equipotency, gen_group_action, gen_subspace_lattice, group_closure, Combine,
    LowerSet, ESP_MAX_SIZE,
};

/// A finite structure `(L, ≤, ⊥, ∼)`. Index 0 is meant to be the least element.
///
/// Meets, joins and `∼`-classes are cached at construction. The tables are not
/// required to satisfy the axioms; [`validate_espalier`] reports what fails.
#[derive(Clone, PartialEq, Eq)]
pub struct EspalierTable {
    labels: Vec<String>,
    leq: Vec<bool>,
    perp: Vec<bool>,
    sim: Vec<bool>,
    meet: Vec<Option<Elem>>,
    join: Vec<Option<Elem>>,
    class: Vec<usize>,
    class_count: usize,
}

impl std::fmt::Debug for EspalierTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EspalierTable")
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

fn rows(n: usize, rel: &[bool]) -> Vec<FixedBitSet> {
    (0..n)
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(n);
            for b in 0..n {
                s.set(b, rel[a * n + b]);
            }
            s
        })
        .collect()
}

/// The greatest element of `set` w.r.t. `down`, if there is one.
fn top_of(set: &FixedBitSet, down: &[FixedBitSet]) -> Option<Elem> {
    set.ones().find(|&m| set.is_subset(&down[m]))
}

impl EspalierTable {
    /// Builds a table from row-major relation matrices.
    pub fn new(
        labels: Vec<String>,
        leq: Vec<bool>,
        perp: Vec<bool>,
        sim: Vec<bool>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        for rel in [&leq, &perp, &sim] {
            if rel.len() != n * n {
                return Err(Error::TableShape {
                    expected: n * n,
                    got: rel.len(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let down: Vec<FixedBitSet> = (0..n)
            .map(|a| {
                let mut s = FixedBitSet::with_capacity(n);
                for x in 0..n {
                    s.set(x, leq[x * n + a]);
                }
                s
            })
            .collect();
        let up = rows(n, &leq);
        let mut meet = vec![None; n * n];
        let mut join = vec![None; n * n];
        for a in 0..n {
            for b in a..n {
                let mut lo = down[a].clone();
                lo.intersect_with(&down[b]);
                let m = top_of(&lo, &down);
                let mut hi = up[a].clone();
                hi.intersect_with(&up[b]);
                let j = hi.ones().find(|&c| hi.is_subset(&up[c]));
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let (class, class_count) = components(n, &sim);
        Ok(EspalierTable {
            labels,
            leq,
            perp,
            sim,
            meet,
            join,
            class,
            class_count,
        })
    }

    /// Builds a table from closures over index pairs.
    pub fn from_fns<L, P, S>(labels: Vec<String>, leq: L, perp: P, sim: S) -> Result<Self>
    where
        L: Fn(Elem, Elem) -> bool,
        P: Fn(Elem, Elem) -> bool,
        S: Fn(Elem, Elem) -> bool,
    {
        let n = labels.len();
        let grid = |f: &dyn Fn(Elem, Elem) -> bool| {
            (0..n * n).map(|i| f(i / n, i % n)).collect::<Vec<bool>>()
        };
        Self::new(labels, grid(&leq), grid(&perp), grid(&sim))
    }

    /// Same order and orthogonality, new equivalence.
    pub fn with_sim(&self, sim: Vec<bool>) -> Result<Self> {
        let n = self.len();
        if sim.len() != n * n {
            return Err(Error::TableShape {
                expected: n * n,
                got: sim.len(),
            });
        }
        let (class, class_count) = components(n, &sim);
        Ok(EspalierTable {
            sim,
            class,
            class_count,
            ..self.clone()
        })
    }

    /// Same order and orthogonality; `∼` is the partition given by class ids.
    pub fn with_classes(&self, class: &[usize]) -> Result<Self> {
        let n = self.len();
        let sim = (0..n * n).map(|i| class[i / n] == class[i % n]).collect();
        self.with_sim(sim)
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

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn perp(&self, a: Elem, b: Elem) -> bool {
        self.perp[a * self.len() + b]
    }

    pub fn sim(&self, a: Elem, b: Elem) -> bool {
        self.sim[a * self.len() + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.meet[a * self.len() + b]
    }

    /// Defined iff `{a, b}` has a least upper bound.
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.join[a * self.len() + b]
    }

    /// `a ⊕ b`: the join when `a ⊥ b`.
    pub fn oplus(&self, a: Elem, b: Elem) -> Option<Elem> {
        if self.perp(a, b) {
            self.join(a, b)
        } else {
            None
        }
    }

    /// Some `x` with `a ⊕ x = b`, the first in index order.
    pub fn relative_complement(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.elements().find(|&x| self.oplus(a, x) == Some(b))
    }

    /// All `x` with `a ⊕ x = b`.
    pub fn relative_complements(&self, a: Elem, b: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&x| self.oplus(a, x) == Some(b))
            .collect()
    }

    /// Class id of `a` under the equivalence generated by `sim`. Zero's class is 0.
    pub fn class(&self, a: Elem) -> usize {
        self.class[a]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// `a ≲ b`: `a ∼ x ≤ b` for some `x`.
    pub fn lesssim(&self, a: Elem, b: Elem) -> bool {
        self.elements().any(|x| self.sim(a, x) && self.leq(x, b))
    }

    /// Whether `⊥` coincides with `x ∧ y = 0`.
    pub fn perp_is_disjointness(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.perp(a, b) == (self.meet(a, b) == Some(0)))
        })
    }

    /// Ordered pairs `(a, b)` with `a ⊕ b` defined, with the sum.
    pub fn oplus_pairs(&self) -> Vec<(Elem, Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if let Some(c) = self.oplus(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }
}

/// Connected components of a relation, numbered by first appearance.
fn components(n: usize, rel: &[bool]) -> (Vec<usize>, usize) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in 0..n {
        for b in 0..n {
            if rel[a * n + b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut ids = HashMap::new();
    let mut class = vec![0; n];
    for (a, slot) in class.iter_mut().enumerate() {
        let r = find(&mut parent, a);
        let next = ids.len();
        *slot = *ids.entry(r).or_insert(next);
    }
    (class, ids.len())
}

/// Verdicts on the order, the equivalence and L1–L8.
///
/// L6 and L7 are checked for binary and ternary families. On a finite carrier
/// the binary form implies the unrestricted one by induction, so the report
/// is labelled as a finite reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EspalierReport {
    pub verdicts: Vec<Verdict>,
}

impl EspalierReport {
    pub const MODE: &'static str = "finite-reduction";

    pub fn get(&self, name: &str) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.name == name)
            .expect("known axiom")
    }

    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

fn verdict(name: &'static str, failure: Option<String>) -> Verdict {
    Verdict {
        name,
        pass: failure.is_none(),
        witness: failure,
    }
}

/// Checks every axiom by exhaustive search; see [`EspalierReport`].
pub fn validate_espalier(l: &EspalierTable) -> EspalierReport {
    let n = l.len();
    let lb = |a: Elem| l.label(a).to_string();
    let up = rows(n, &l.leq);
    let pr = rows(n, &l.perp);
    let sm = rows(n, &l.sim);
    let mut verdicts = Vec::new();

    let order = (0..n)
        .find(|&a| !l.leq(a, a))
        .map(|a| format!("reflexivity: {}", lb(a)))
        .or_else(|| {
            (0..n)
                .find(|&a| !l.leq(0, a))
                .map(|a| format!("least element: {} is not below {}", lb(0), lb(a)))
        })
        .or_else(|| {
            pairs(n)
                .find(|&(a, b)| a != b && l.leq(a, b) && l.leq(b, a))
                .map(|(a, b)| format!("antisymmetry: {} and {}", lb(a), lb(b)))
        })
        .or_else(|| {
            pairs(n)
                .find(|&(a, b)| l.leq(a, b) && !up[b].is_subset(&up[a]))
                .map(|(a, b)| format!("transitivity: {} <= {}", lb(a), lb(b)))
        });
    verdicts.push(verdict("order", order));

    let equiv = (0..n)
        .find(|&a| !l.sim(a, a))
        .map(|a| format!("reflexivity: {}", lb(a)))
        .or_else(|| {
            pairs(n)
                .find(|&(a, b)| l.sim(a, b) != l.sim(b, a))
                .map(|(a, b)| format!("symmetry: {} ~ {}", lb(a), lb(b)))
        })
        .or_else(|| {
            pairs(n)
                .find(|&(a, b)| l.sim(a, b) && !sm[b].is_subset(&sm[a]))
                .map(|(a, b)| format!("transitivity: {} ~ {}", lb(a), lb(b)))
        });
    let equiv_ok = equiv.is_none();
    verdicts.push(verdict("sim", equiv));

    let l1 = pairs(n)
        .find(|&(a, b)| l.meet(a, b).is_none())
        .map(|(a, b)| format!("no meet of {} and {}", lb(a), lb(b)))
        .or_else(|| {
            pairs(n)
                .find(|&(a, b)| {
                    l.join(a, b).is_none() && up[a].intersection(&up[b]).next().is_some()
                })
                .map(|(a, b)| format!("majorized pair {} {} has no join", lb(a), lb(b)))
        });
    verdicts.push(verdict("L1", l1));

    let l2 = (0..n)
        .find(|&a| !l.perp(a, 0))
        .map(|a| format!("(i) {} not perp 0", lb(a)))
        .or_else(|| {
            pairs(n)
                .find(|&(a, b)| l.perp(a, b) && !l.perp(b, a))
                .map(|(a, b)| format!("(ii) {} perp {} only one way", lb(a), lb(b)))
        })
        .or_else(|| {
            pairs(n)
                .find(|&(a, b)| l.leq(a, b) && !pr[b].is_subset(&pr[a]))
                .map(|(a, b)| {
                    let c = pr[b].difference(&pr[a]).next().expect("difference");
                    format!(
                        "(iii) {} <= {} perp {} but {} not perp {}",
                        lb(a),
                        lb(b),
                        lb(c),
                        lb(a),
                        lb(c)
                    )
                })
        })
        .or_else(|| l2_iv(l, &pr))
        .or_else(|| {
            (1..n)
                .find(|&a| l.perp(a, a))
                .map(|a| format!("(v) {} perp itself", lb(a)))
        });
    verdicts.push(verdict("L2", l2));

    let l3 = (0..n).find_map(|a| {
        let mut reach = FixedBitSet::with_capacity(n);
        for x in 0..n {
            if let Some(c) = l.oplus(a, x) {
                reach.insert(c);
            }
        }
        up[a]
            .difference(&reach)
            .next()
            .map(|b| format!("{} <= {} without complement", lb(a), lb(b)))
    });
    verdicts.push(verdict("L3", l3));

    // Every orthogonal family in a finite carrier is finite, so its sum is one
    // of its finite partial sums.
    verdicts.push(verdict("L4", None));

    let l5 = (1..n)
        .find(|&x| l.sim(x, 0))
        .map(|x| format!("{} ~ {}", lb(x), lb(0)));
    verdicts.push(verdict("L5", l5));

    let sums = l.oplus_pairs();
    if equiv_ok {
        verdicts.push(verdict("L6", refining(l, &sums)));
        verdicts.push(verdict("L7", additive(l, &sums)));
    } else {
        verdicts.push(verdict("L6", Some("sim is not an equivalence".into())));
        verdicts.push(verdict("L7", Some("sim is not an equivalence".into())));
    }
    verdicts.push(verdict("L8", parallelogram(l, &sums)));
    EspalierReport { verdicts }
}

fn pairs(n: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn l2_iv(l: &EspalierTable, pr: &[FixedBitSet]) -> Option<String> {
    let n = l.len();
    for a in 0..n {
        for b in pr[a].ones() {
            let Some(s) = l.join(a, b) else { continue };
            for c in pr[s].ones() {
                if l.join(s, c).is_none() {
                    continue;
                }
                let bc = l.join(b, c).expect("majorized pair has a join under L1");
                if !l.perp(a, bc) {
                    return Some(format!(
                        "(iv) a={} b={} c={}: a not perp b v c",
                        l.label(a),
                        l.label(b),
                        l.label(c)
                    ));
                }
            }
        }
    }
    None
}

/// Ternary orthogonal families `(b0, b1, b2)` with their sum.
fn triples(l: &EspalierTable, sums: &[(Elem, Elem, Elem)]) -> Vec<([Elem; 3], Elem)> {
    let mut by_left: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); l.len()];
    for &(a, b, c) in sums {
        by_left[a].push((b, c));
    }
    let mut out = Vec::new();
    for &(b0, b1, s) in sums {
        for &(b2, t) in &by_left[s] {
            if l.perp(b0, b2) && l.perp(b1, b2) {
                out.push(([b0, b1, b2], t));
            }
        }
    }
    out
}

/// L6 for binary and ternary families.
fn refining(l: &EspalierTable, sums: &[(Elem, Elem, Elem)]) -> Option<String> {
    let n = l.len();
    let mut dec2: Vec<BTreeMap<(usize, usize), (Elem, Elem)>> = vec![BTreeMap::new(); n];
    for &(a, b, c) in sums {
        dec2[c].entry((l.class(a), l.class(b))).or_insert((a, b));
    }
    let mut dec3: Vec<BTreeMap<[usize; 3], [Elem; 3]>> = vec![BTreeMap::new(); n];
    for (f, c) in triples(l, sums) {
        dec3[c].entry(f.map(|x| l.class(x))).or_insert(f);
    }
    for (a, c) in pairs(n) {
        if !l.sim(a, c) {
            continue;
        }
        if let Some((_, &(b0, b1))) = dec2[c].iter().find(|(k, _)| !dec2[a].contains_key(k)) {
            return Some(format!(
                "{} ~ {} = {} (+) {} has no matching decomposition",
                l.label(a),
                l.label(c),
                l.label(b0),
                l.label(b1)
            ));
        }
        if let Some((_, f)) = dec3[c].iter().find(|(k, _)| !dec3[a].contains_key(*k)) {
            return Some(format!(
                "{} ~ {} = {} (+) {} (+) {} has no matching decomposition",
                l.label(a),
                l.label(c),
                l.label(f[0]),
                l.label(f[1]),
                l.label(f[2])
            ));
        }
    }
    None
}

/// L7 for binary and ternary families: the class of a sum depends only on
/// the classes of the summands.
fn additive(l: &EspalierTable, sums: &[(Elem, Elem, Elem)]) -> Option<String> {
    let mut seen2: HashMap<(usize, usize), (Elem, Elem, Elem)> = HashMap::new();
    for &(a, b, c) in sums {
        let key = (l.class(a), l.class(b));
        match seen2.get(&key) {
            Some(&(x, y, z)) if l.class(z) != l.class(c) => {
                return Some(format!(
                    "{} ~ {} and {} ~ {} but {} !~ {}",
                    l.label(x),
                    l.label(a),
                    l.label(y),
                    l.label(b),
                    l.label(z),
                    l.label(c)
                ))
            }
            Some(_) => {}
            None => {
                seen2.insert(key, (a, b, c));
            }
        }
    }
    let mut seen3: HashMap<[usize; 3], ([Elem; 3], Elem)> = HashMap::new();
    for (f, c) in triples(l, sums) {
        let key = f.map(|x| l.class(x));
        match seen3.get(&key) {
            Some(&(g, d)) if l.class(d) != l.class(c) => {
                return Some(format!(
                    "families {}, {}, {} and {}, {}, {} are pairwise equivalent but sums {} !~ {}",
                    l.label(g[0]),
                    l.label(g[1]),
                    l.label(g[2]),
                    l.label(f[0]),
                    l.label(f[1]),
                    l.label(f[2]),
                    l.label(d),
                    l.label(c)
                ))
            }
            Some(_) => {}
            None => {
                seen3.insert(key, (f, c));
            }
        }
    }
    None
}

/// L8 over all admissible quadruples.
fn parallelogram(l: &EspalierTable, sums: &[(Elem, Elem, Elem)]) -> Option<String> {
    let n = l.len();
    let mut rc: HashMap<(Elem, Elem), Vec<Elem>> = HashMap::new();
    for &(a, x, c) in sums {
        rc.entry((a, c)).or_default().push(x);
    }
    let empty = Vec::new();
    for (a, b) in pairs(n) {
        let Some(v) = l.join(a, b) else { continue };
        let Some(m) = l.meet(a, b) else { continue };
        let xs = rc.get(&(m, a)).unwrap_or(&empty);
        let ys = rc.get(&(b, v)).unwrap_or(&empty);
        for &x in xs {
            for &y in ys {
                if !l.sim(x, y) {
                    return Some(format!(
                        "a={} b={}: {} (+) {} = a and b (+) {} = a v b but {} !~ {}",
                        l.label(a),
                        l.label(b),
                        l.label(m),
                        l.label(x),
                        l.label(y),
                        l.label(x),
                        l.label(y)
                    ));
                }
            }
        }
    }
    None
}
