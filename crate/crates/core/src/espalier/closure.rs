//! Boolean pre-espaliers and their espalier closure.

use std::collections::HashMap;

use super::{refining, EspalierTable};
use crate::error::{Error, Result};
use crate::monoid::Elem;

/// Why a relation does not define a Boolean pre-espalier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreEspalierFailure {
    pub axiom: &'static str,
    pub witness: String,
}

impl std::fmt::Display for PreEspalierFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails: {}", self.axiom, self.witness)
    }
}

/// Whether the order is a Boolean lattice and `⊥` is disjointness.
pub fn is_boolean_lattice(l: &EspalierTable) -> bool {
    let n = l.len();
    let all = |f: &dyn Fn(Elem, Elem) -> bool| (0..n).all(|a| (0..n).all(|b| f(a, b)));
    if !all(&|a, b| l.meet(a, b).is_some() && l.join(a, b).is_some()) {
        return false;
    }
    let Some(top) = (0..n).find(|&t| (0..n).all(|x| l.leq(x, t))) else {
        return false;
    };
    if !l.perp_is_disjointness() {
        return false;
    }
    let complemented =
        (0..n).all(|a| (0..n).any(|x| l.meet(a, x) == Some(0) && l.join(a, x) == Some(top)));
    let distributive = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let lhs = l.meet(a, l.join(b, c).expect("join"));
                let rhs = l.join(l.meet(a, b).expect("meet"), l.meet(a, c).expect("meet"));
                lhs == rhs
            })
        })
    });
    complemented && distributive
}

/// Checks B0 and B1 for the equivalence generated by `l`'s `∼`.
pub fn check_pre_espalier(l: &EspalierTable) -> std::result::Result<(), PreEspalierFailure> {
    if let Some(x) = (1..l.len()).find(|&x| l.class(x) == l.class(0)) {
        return Err(PreEspalierFailure {
            axiom: "B0",
            witness: format!("{} ~ {}", l.label(x), l.label(0)),
        });
    }
    let generated = l
        .with_classes(&l.elements().map(|a| l.class(a)).collect::<Vec<_>>())
        .expect("same shape");
    match refining(&generated, &generated.oplus_pairs()) {
        Some(w) => Err(PreEspalierFailure {
            axiom: "B1",
            witness: w,
        }),
        None => Ok(()),
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// The espalier closure `∼*` of `sim0` on a Boolean lattice: the least
/// equivalence containing `sim0` that is closed under orthogonal sums.
///
/// `sim0` is first replaced by the equivalence it generates, which must
/// satisfy B0 and B1. The result keeps `b`'s order and orthogonality.
pub fn espalier_closure(b: &EspalierTable, sim0: &[(Elem, Elem)]) -> Result<EspalierTable> {
    let n = b.len();
    if !is_boolean_lattice(b) {
        return Err(Error::Precondition(
            "the order is not a Boolean lattice with disjointness".into(),
        ));
    }
    let mut rel = vec![false; n * n];
    for &(x, y) in sim0 {
        if x >= n || y >= n {
            return Err(Error::BadIndex(x.max(y)));
        }
        rel[x * n + y] = true;
    }
    let base = b.with_sim(rel)?;
    if let Err(f) = check_pre_espalier(&base) {
        return Err(Error::Precondition(f.to_string()));
    }
    let roots = additive_fixpoint(&base);
    base.with_classes(&roots)
}

/// Class representatives of the least equivalence that contains `l`'s
/// equivalence and relates `x ⊕ x'` to `y ⊕ y'` whenever `x ∼ y` and `x' ∼ y'`.
pub(super) fn additive_fixpoint(l: &EspalierTable) -> Vec<usize> {
    let n = l.len();
    let sums = l.oplus_pairs();
    let mut first = vec![usize::MAX; l.class_count()];
    for a in 0..n {
        if first[l.class(a)] == usize::MAX {
            first[l.class(a)] = a;
        }
    }
    let mut parent: Vec<usize> = (0..n).map(|a| first[l.class(a)]).collect();
    loop {
        let mut changed = false;
        let mut by_key: HashMap<(usize, usize), usize> = HashMap::new();
        for &(x, y, s) in &sums {
            let key = (find(&mut parent, x), find(&mut parent, y));
            let r = find(&mut parent, s);
            match by_key.get(&key) {
                None => {
                    by_key.insert(key, r);
                }
                Some(&q) => {
                    let q = find(&mut parent, q);
                    if q != r {
                        parent[q.max(r)] = q.min(r);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n).map(|a| find(&mut parent, a)).collect()
}
