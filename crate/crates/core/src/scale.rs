//! Element classes, the finite/infinite split, the `⟨p,κ⟩` layers, finitary
//! units, the type decomposition and the axiom checkers.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, ExtremumError, Result};
use crate::monoid::{check_refinement, greatest, least, Elem, MonoidTable};
use crate::projections::{
    is_removable, least_difference, orthocomplement, perp_table, summand_projections, Mask,
    ProjectionAlgebra,
};
use crate::targets::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementClass {
    pub directly_finite: bool,
    pub purely_infinite: bool,
    pub multiple_free: bool,
    pub cancellable: bool,
}

/// `x + c = c` forces `x = 0`.
pub fn is_directly_finite(t: &MonoidTable, c: Elem) -> bool {
    t.elements().all(|x| x == 0 || t.add(x, c) != Some(c))
}

pub fn is_purely_infinite(t: &MonoidTable, a: Elem) -> bool {
    t.add(a, a) == Some(a)
}

/// `2x ≤ a` forces `x = 0`.
pub fn is_multiple_free(t: &MonoidTable, a: Elem) -> bool {
    t.elements()
        .all(|x| x == 0 || !t.add(x, x).is_some_and(|d| t.leq(d, a)))
}

/// `a + x = a + y` forces `x = y`.
pub fn is_cancellable(t: &MonoidTable, a: Elem) -> bool {
    let mut seen = vec![None; t.len()];
    for x in t.elements() {
        if let Some(s) = t.add(a, x) {
            if seen[s].is_some() {
                return false;
            }
            seen[s] = Some(x);
        }
    }
    true
}

pub fn classify_element(t: &MonoidTable, a: Elem) -> ElementClass {
    ElementClass {
        directly_finite: is_directly_finite(t, a),
        purely_infinite: is_purely_infinite(t, a),
        multiple_free: is_multiple_free(t, a),
        cancellable: is_cancellable(t, a),
    }
}

/// `a|∞`: the largest purely infinite element below `a`.
pub fn infinite_part(t: &MonoidTable, a: Elem) -> std::result::Result<Elem, ExtremumError> {
    let cands: Vec<Elem> = t
        .elements()
        .filter(|&u| is_purely_infinite(t, u) && t.leq(u, a))
        .collect();
    greatest(t, &cands, "largest purely infinite element below")
}

/// `a = v + u` with `u = a|∞`, `v` directly finite and `u ⊥ v`.
pub fn split_finite_infinite(t: &MonoidTable, a: Elem) -> Result<(Elem, Elem)> {
    let u = infinite_part(t, a)?;
    let perp = perp_table(t);
    let n = t.len();
    let vs: Vec<Elem> = t
        .elements()
        .filter(|&v| t.add(u, v) == Some(a) && perp[u * n + v] && is_directly_finite(t, v))
        .collect();
    match vs.as_slice() {
        [v] => Ok((*v, u)),
        [] => Err(Error::Precondition(format!(
            "{} has no finite part beside {}",
            t.label(a),
            t.label(u)
        ))),
        [v, w, ..] => Err(Error::Precondition(format!(
            "{} has finite parts {} and {}",
            t.label(a),
            t.label(*v),
            t.label(*w)
        ))),
    }
}

/// A table together with its projection algebra and element classes.
#[derive(Debug, Clone)]
pub struct Scale {
    table: MonoidTable,
    algebra: ProjectionAlgebra,
    classes: Vec<ElementClass>,
}

impl Scale {
    /// Fails if the direct summands do not form a Boolean algebra.
    pub fn new(table: MonoidTable) -> Result<Self> {
        let algebra = ProjectionAlgebra::new(&table)?;
        let classes = table
            .elements()
            .map(|a| classify_element(&table, a))
            .collect();
        Ok(Scale {
            table,
            algebra,
            classes,
        })
    }

    pub fn table(&self) -> &MonoidTable {
        &self.table
    }

    pub fn algebra(&self) -> &ProjectionAlgebra {
        &self.algebra
    }

    pub fn class(&self, a: Elem) -> ElementClass {
        self.classes[a]
    }

    pub fn purely_infinite(&self) -> impl Iterator<Item = Elem> + '_ {
        self.table
            .elements()
            .filter(|&a| self.classes[a].purely_infinite)
    }

    pub fn directly_finite(&self) -> impl Iterator<Item = Elem> + '_ {
        self.table
            .elements()
            .filter(|&a| self.classes[a].directly_finite)
    }

    pub fn central_cover(&self, a: Elem) -> Result<Mask> {
        self.algebra
            .central_cover(a)
            .map_err(|e| Error::Precondition(e.to_string()))
    }

    pub fn split(&self, a: Elem) -> Result<(Elem, Elem)> {
        split_finite_infinite(&self.table, a)
    }

    /// `⟨p,κ⟩` for `κ ∈ {0, ℵ_α}`; `Ok(None)` when undefined.
    pub fn scal(&self, p: Mask, kappa: &Value) -> Result<Option<Elem>> {
        let target = match kappa {
            Value::Fin(_) if kappa.is_zero() => return Ok(Some(0)),
            Value::Fin(_) => return Err(Error::Precondition(format!("{kappa} is not in 2_γ"))),
            Value::Aleph(a) => *a,
        };
        let mut cur = self.successor_layer(p, 0)?;
        for _ in 0..target.omega {
            cur = self.limit_layer(p, cur)?;
        }
        for _ in 0..target.fin {
            cur = match cur {
                Some(x) => self.successor_layer(p, x)?,
                None => None,
            };
        }
        Ok(cur)
    }

    /// The supremum at the next limit, given the value at the previous one:
    /// iterate successor steps until a term is undefined (then the limit is
    /// undefined) or repeats (then the sequence is constant and that is
    /// the supremum).
    fn limit_layer(&self, p: Mask, start: Option<Elem>) -> Result<Option<Elem>> {
        let mut cur = start;
        for _ in 0..=self.table.len() {
            let Some(x) = cur else { return Ok(None) };
            let next = self.successor_layer(p, x)?;
            if next == Some(x) {
                return Ok(Some(x));
            }
            cur = next;
        }
        Err(Error::Precondition(
            "layer sequence longer than the carrier".into(),
        ))
    }

    /// Least purely infinite `x` with `prev ≪_rem x` and `cc(x) = p`.
    pub fn successor_layer(&self, p: Mask, prev: Elem) -> Result<Option<Elem>> {
        let t = &self.table;
        let mut cands = Vec::new();
        for x in self.purely_infinite() {
            if is_removable(t, prev, x) && self.central_cover(x)? == p {
                cands.push(x);
            }
        }
        if cands.is_empty() {
            return Ok(None);
        }
        Ok(Some(least(t, &cands, "successor layer")?))
    }

    /// Greedy maximal antichain, in index order, of the nonzero directly
    /// finite elements that are multiple-free or have no nonzero
    /// multiple-free element below. Verified dense in `S_fin`.
    pub fn finitary_unit(&self) -> Result<Vec<Elem>> {
        let t = &self.table;
        let mf = |x: Elem| self.classes[x].multiple_free;
        let u: Vec<Elem> = self
            .directly_finite()
            .filter(|&x| x != 0)
            .filter(|&x| mf(x) || !t.elements().any(|y| y != 0 && mf(y) && t.leq(y, x)))
            .collect();
        let mut e: Vec<Elem> = Vec::new();
        for &x in &u {
            if e.iter().all(|&y| self.algebra.perp(x, y)) {
                e.push(x);
            }
        }
        for a in self.directly_finite().filter(|&a| a != 0) {
            if e.iter().all(|&y| self.algebra.perp(a, y)) {
                return Err(Error::Precondition(format!(
                    "finitary unit misses {}",
                    t.label(a)
                )));
            }
        }
        Ok(e)
    }

    pub fn type_decomposition(&self) -> Result<TypeDecomposition> {
        let t = &self.table;
        let mf: BTreeSet<Elem> = t
            .elements()
            .filter(|&a| self.classes[a].multiple_free)
            .collect();
        let fin: BTreeSet<Elem> = self.directly_finite().collect();
        let mf_perp = orthocomplement(t, &mf);
        let fin_perp = orthocomplement(t, &fin);
        let s_i = orthocomplement(t, &mf_perp);
        let fin_pp = orthocomplement(t, &fin_perp);
        let s_ii: BTreeSet<Elem> = mf_perp.intersection(&fin_pp).copied().collect();
        let s_iii = fin_perp;
        let find = |set: &BTreeSet<Elem>| {
            self.algebra
                .masks()
                .find(|&p| self.algebra.get(p).range == *set)
                .ok_or_else(|| Error::Decomposition(format!("{set:?} is not a direct summand")))
        };
        let (p_i, p_ii, p_iii) = (find(&s_i)?, find(&s_ii)?, find(&s_iii)?);
        if p_i & p_ii != 0
            || p_i & p_iii != 0
            || p_ii & p_iii != 0
            || p_i | p_ii | p_iii != self.algebra.top()
        {
            return Err(Error::Decomposition(
                "type summands do not partition the atoms".into(),
            ));
        }
        for x in t.elements() {
            let count = s_i
                .iter()
                .flat_map(|&a| s_ii.iter().map(move |&b| (a, b)))
                .flat_map(|(a, b)| s_iii.iter().map(move |&c| (a, b, c)))
                .filter(|&(a, b, c)| t.add(a, b).and_then(|ab| t.add(ab, c)) == Some(x))
                .count();
            if count != 1 {
                return Err(Error::Decomposition(format!(
                    "{} has {count} type decompositions",
                    t.label(x)
                )));
            }
        }
        Ok(TypeDecomposition {
            s_i,
            s_ii,
            s_iii,
            p_i,
            p_ii,
            p_iii,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecomposition {
    pub s_i: BTreeSet<Elem>,
    pub s_ii: BTreeSet<Elem>,
    pub s_iii: BTreeSet<Elem>,
    pub p_i: Mask,
    pub p_ii: Mask,
    pub p_iii: Mask,
}

/// One axiom verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.pass, &self.witness) {
            (true, _) => write!(f, "{} PASS", self.name),
            (false, Some(w)) => write!(f, "{} FAIL {w}", self.name),
            (false, None) => write!(f, "{} FAIL", self.name),
        }
    }
}

fn verdict(name: &'static str, failure: Option<String>) -> Verdict {
    Verdict {
        name,
        pass: failure.is_none(),
        witness: failure,
    }
}

/// Verdicts on M1–M6 and N1–N3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub verdicts: Vec<Verdict>,
}

impl AxiomReport {
    pub fn get(&self, name: &str) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.name == name)
            .expect("known axiom")
    }

    fn all(&self, names: &[&str]) -> bool {
        names.iter().all(|n| self.get(n).pass)
    }

    /// M1–M6.
    pub fn m_route(&self) -> bool {
        self.all(&["M1", "M2", "M3", "M4", "M5", "M6"])
    }

    /// M1, M2, M5, M6, N1–N3.
    pub fn n_route(&self) -> bool {
        self.all(&["M1", "M2", "M5", "M6", "N1", "N2", "N3"])
    }

    pub fn routes_agree(&self) -> bool {
        self.m_route() == self.n_route()
    }

    pub fn is_scale(&self) -> bool {
        self.m_route() && self.n_route()
    }
}

/// Evaluates every axiom by exhaustive search.
pub fn check_scale(t: &MonoidTable) -> AxiomReport {
    let n = t.len();
    let lbl = |a: Elem| t.label(a).to_string();
    let perp = perp_table(t);
    let pi: Vec<bool> = t.elements().map(|a| is_purely_infinite(t, a)).collect();
    let df: Vec<bool> = t.elements().map(|a| is_directly_finite(t, a)).collect();

    let m1 = match check_refinement(t) {
        Err(w) => Some(format!(
            "refinement: {}+{} = {}+{}",
            lbl(w.a.0),
            lbl(w.a.1),
            lbl(w.b.0),
            lbl(w.b.1)
        )),
        Ok(()) => t
            .elements()
            .flat_map(|a| t.elements().map(move |b| (a, b)))
            .find(|&(a, b)| a != b && t.leq(a, b) && t.leq(b, a))
            .map(|(a, b)| format!("antisymmetry: {} <= {} <= {}", lbl(a), lbl(b), lbl(a))),
    };

    let m2 = t
        .elements()
        .flat_map(|a| t.elements().map(move |b| (a, b)))
        .find(|&(a, b)| a < b && t.meet(a, b).is_none())
        .map(|(a, b)| format!("no meet of {} and {}", lbl(a), lbl(b)));

    let family = summand_projections(t).unwrap_or_default();
    let comp: Vec<Option<usize>> = family
        .iter()
        .map(|(range, _)| {
            let c = orthocomplement(t, range);
            family.iter().position(|(r, _)| *r == c)
        })
        .collect();
    let m3 = t
        .elements()
        .flat_map(|a| t.elements().map(move |b| (a, b)))
        .find(|&(x, y)| {
            !family.iter().zip(&comp).any(|((_, p), q)| match q {
                Some(q) => {
                    let q = &family[*q].1;
                    t.leq(p[x], p[y]) && t.leq(q[y], q[x])
                }
                None => false,
            })
        })
        .map(|(x, y)| format!("no comparability projection for {} and {}", lbl(x), lbl(y)));

    let m4 = t
        .elements()
        .flat_map(|a| t.elements().map(move |b| (a, b)))
        .find(|&(a, b)| {
            let good: Vec<&BTreeSet<Elem>> = family
                .iter()
                .filter(|(_, p)| t.leq(p[a], p[b]))
                .map(|(r, _)| r)
                .collect();
            !good.iter().any(|r| good.iter().all(|o| o.is_subset(r)))
        })
        .map(|(a, b)| format!("no largest projection with p({}) <= p({})", lbl(a), lbl(b)));

    let m5 = t
        .elements()
        .find(|&a| {
            !t.elements()
                .any(|x| df[x] && t.elements().any(|y| pi[y] && t.add(x, y) == Some(a)))
        })
        .map(|a| format!("{} is not finite plus purely infinite", lbl(a)));

    let ortho_of = |a: Elem| -> Vec<bool> { (0..n).map(|s| perp[s * n + a]).collect() };
    let mut m6 = None;
    'outer: for a in t.elements().filter(|&a| pi[a]) {
        for b in t.elements().filter(|&b| pi[b]) {
            if !is_removable(t, a, b) {
                continue;
            }
            let bp = ortho_of(b);
            let cands: Vec<Elem> = t
                .elements()
                .filter(|&x| pi[x] && is_removable(t, a, x) && ortho_of(x) == bp)
                .collect();
            if least(t, &cands, "M6").is_err() {
                m6 = Some(format!(
                    "no least x with {} removable in x and x^⊥ = {}^⊥",
                    lbl(a),
                    lbl(b)
                ));
                break 'outer;
            }
        }
    }

    let mut diffs: Vec<Vec<Elem>> = vec![Vec::new(); n * n];
    for c in 0..n {
        for x in 0..n {
            if let Some(a) = t.add(c, x) {
                diffs[c * n + a].push(x);
            }
        }
    }
    let n1 = t
        .elements()
        .flat_map(|a| t.elements().map(move |b| (a, b)))
        .find(|&(a, b)| {
            !t.elements().any(|c| {
                diffs[c * n + a]
                    .iter()
                    .any(|&x| diffs[c * n + b].iter().any(|&y| perp[x * n + y]))
            })
        })
        .map(|(a, b)| format!("no orthogonal decomposition of {} and {}", lbl(a), lbl(b)));

    let n2 = t
        .elements()
        .find(|&a| {
            let single: BTreeSet<Elem> = [a].into();
            let ap = orthocomplement(t, &single);
            let app = orthocomplement(t, &ap);
            !t.elements().all(|s| {
                ap.iter()
                    .any(|&x| app.iter().any(|&y| t.add(x, y) == Some(s)))
            })
        })
        .map(|a| format!("S is not {0}^⊥ + {0}^⊥⊥", lbl(a)));

    let n3 = t
        .elements()
        .flat_map(|a| t.elements().map(move |b| (a, b)))
        .find(|&(a, b)| t.leq(a, b) && least_difference(t, a, b).is_err())
        .map(|(a, b)| format!("{} ∖ {} does not exist", lbl(b), lbl(a)));

    AxiomReport {
        verdicts: vec![
            verdict("M1", m1),
            verdict("M2", m2),
            verdict("M3", m3),
            verdict("M4", m4),
            verdict("M5", m5),
            verdict("M6", m6),
            verdict("N1", n1),
            verdict("N2", n2),
            verdict("N3", n3),
        ],
    }
}
