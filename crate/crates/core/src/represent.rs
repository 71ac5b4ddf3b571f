//! Dimension functions on the atoms of `B(S)` and the canonical embedding
//! of a finite scale into a function scale.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::monoid::{adjoin_infinity, is_isomorphism, lower_submonoid, Elem, MonoidTable};
use crate::projections::Mask;
use crate::scale::{Scale, TypeDecomposition};
use crate::targets::{FunctionScale, MonoidKind, Ordinal, PointType, Value, ValueMonoid};

/// A function from the atoms of `B(S)` to values, with a type per atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepFunction {
    pub types: Vec<PointType>,
    pub values: Vec<Value>,
}

impl RepFunction {
    pub fn zero(types: &[PointType]) -> Self {
        RepFunction {
            types: types.to_vec(),
            values: vec![Value::zero(); types.len()],
        }
    }

    pub fn add(&self, other: &RepFunction) -> RepFunction {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect();
        RepFunction {
            types: self.types.clone(),
            values,
        }
    }

    pub fn leq(&self, other: &RepFunction) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a.leq(b))
    }

    pub fn meet(&self, other: &RepFunction) -> RepFunction {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.meet(b))
            .collect();
        RepFunction {
            types: self.types.clone(),
            values,
        }
    }

    /// `f⌋_{Ω_p}`: zero at atoms outside `p`.
    pub fn restrict(&self, p: Mask) -> RepFunction {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if p & (1 << i) != 0 {
                    v.clone()
                } else {
                    Value::zero()
                }
            })
            .collect();
        RepFunction {
            types: self.types.clone(),
            values,
        }
    }

    /// Characteristic function of `Ω_p`.
    pub fn chi(types: &[PointType], p: Mask) -> RepFunction {
        let values = (0..types.len())
            .map(|i| {
                if p & (1 << i) != 0 {
                    Value::int(1)
                } else {
                    Value::zero()
                }
            })
            .collect();
        RepFunction {
            types: types.to_vec(),
            values,
        }
    }
}

impl fmt::Display for RepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (ty, v)) in self.types.iter().zip(&self.values).enumerate() {
            writeln!(f, "atom:{i} type:{ty} value:{v}")?;
        }
        Ok(())
    }
}

/// Type tag of each atom, in the canonical atom order.
pub fn omega_atoms(s: &Scale) -> Result<Vec<PointType>> {
    let td = s.type_decomposition()?;
    Ok(atom_types(s, &td))
}

fn atom_types(s: &Scale, td: &TypeDecomposition) -> Vec<PointType> {
    (0..s.algebra().atom_count())
        .map(|i| {
            let a = 1 << i;
            if td.p_i & a != 0 {
                PointType::I
            } else if td.p_ii & a != 0 {
                PointType::II
            } else {
                PointType::III
            }
        })
        .collect()
}

/// The canonical embedding of a finite scale, with everything it is built from.
#[derive(Debug, Clone)]
pub struct Representation {
    scale: Scale,
    types: Vec<PointType>,
    unit: Vec<Elem>,
    /// `layers[i]` lists `⟨q_i, 0⟩, ⟨q_i, ℵ_0⟩, …` up to the last defined one.
    layers: Vec<Vec<Elem>>,
    eps: Vec<RepFunction>,
    table_inf: MonoidTable,
}

impl Representation {
    pub fn new(scale: Scale) -> Result<Self> {
        let unit = scale.finitary_unit()?;
        Self::with_unit(scale, unit)
    }

    pub fn with_unit(scale: Scale, unit: Vec<Elem>) -> Result<Self> {
        let td = scale.type_decomposition()?;
        let types = atom_types(&scale, &td);
        let mut layers = Vec::with_capacity(types.len());
        for i in 0..types.len() {
            layers.push(atom_layers(&scale, 1 << i)?);
        }
        let table_inf = adjoin_infinity(scale.table());
        let mut rep = Representation {
            scale,
            types,
            unit,
            layers,
            eps: Vec::new(),
            table_inf,
        };
        let mut eps = Vec::with_capacity(rep.scale.table().len());
        for x in rep.scale.table().elements() {
            eps.push(rep.compute_epsilon(x)?);
        }
        rep.eps = eps;
        Ok(rep)
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn types(&self) -> &[PointType] {
        &self.types
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    /// `⟨q,α⟩` for each atom `q`, as computed when the representation was built.
    pub fn layers(&self) -> &[Vec<Elem>] {
        &self.layers
    }

    pub fn epsilon(&self, x: Elem) -> &RepFunction {
        &self.eps[x]
    }

    pub fn epsilon_table(&self) -> &[RepFunction] {
        &self.eps
    }

    /// `μ(x)(q) = sup{α : ⟨q,α⟩ defined and ≤ x}` at each atom `q`.
    pub fn mu(&self, x: Elem) -> RepFunction {
        let t = self.scale.table();
        let values = self
            .layers
            .iter()
            .map(|ls| {
                let k = ls.iter().rposition(|&l| t.leq(l, x)).unwrap_or(0);
                layer_value(k)
            })
            .collect();
        RepFunction {
            types: self.types.clone(),
            values,
        }
    }

    /// `μ` read off the literal quantifier: `α` counts at atom `q` if some
    /// projection `p ≥ q` has `⟨p,α⟩` defined and `≤ x`.
    pub fn mu_literal(&self, x: Elem) -> Result<RepFunction> {
        let s = &self.scale;
        let t = s.table();
        let mut values = Vec::with_capacity(self.types.len());
        for i in 0..self.types.len() {
            let mut best = Value::zero();
            for p in s.algebra().masks().filter(|p| p & (1 << i) != 0) {
                let mut kappa = Value::aleph(0);
                for _ in 0..=t.len() {
                    match s.scal(p, &kappa)? {
                        Some(l) if t.leq(l, x) => {
                            best = best.join(&kappa);
                            kappa = kappa.successor().expect("aleph successor");
                        }
                        _ => break,
                    }
                }
            }
            values.push(best);
        }
        Ok(RepFunction {
            types: self.types.clone(),
            values,
        })
    }

    /// `δ(x)` for directly finite `x`: at each I/II atom `q`, the supremum of
    /// `m/n` with `m·q(e) ≤ n·q(x)` for all `e ∈ E`, sums taken in `S^•` and
    /// an overflowing sum counting as failure. Zero at III atoms.
    pub fn delta(&self, x: Elem) -> Result<RepFunction> {
        let s = &self.scale;
        if !s.class(x).directly_finite {
            return Err(Error::Precondition(format!(
                "{} is not directly finite",
                s.table().label(x)
            )));
        }
        let denominators = s.table().len();
        let mut values = Vec::with_capacity(self.types.len());
        for (i, ty) in self.types.iter().enumerate() {
            if *ty == PointType::III {
                values.push(Value::zero());
                continue;
            }
            let v = self.delta_at(1 << i, x, denominators)?;
            if *ty == PointType::I {
                let k = self.delta_integer_at(1 << i, x)?;
                if v != Value::int(k as i64) {
                    return Err(Error::Precondition(format!(
                        "delta forms disagree at atom {i}: {v} vs {k}"
                    )));
                }
            }
            values.push(v);
        }
        Ok(RepFunction {
            types: self.types.clone(),
            values,
        })
    }

    /// Whether the supremum found with denominators up to the carrier size
    /// is unchanged when the bound is doubled.
    pub fn delta_certificate(&self, x: Elem) -> Result<bool> {
        let n = self.scale.table().len();
        for (i, ty) in self.types.iter().enumerate() {
            if *ty != PointType::III
                && self.delta_at(1 << i, x, n)? != self.delta_at(1 << i, x, 2 * n)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn multiple_inf(&self, k: usize, a: Elem) -> Option<Elem> {
        let inf = self.table_inf.len() - 1;
        let r = self.table_inf.multiple(k, a).expect("total");
        (r != inf).then_some(r)
    }

    fn delta_at(&self, q: Mask, x: Elem, denominators: usize) -> Result<Value> {
        let alg = self.scale.algebra();
        let t = self.scale.table();
        let qe: Vec<Elem> = self
            .unit
            .iter()
            .map(|&e| alg.apply(q, e))
            .filter(|&e| e != 0)
            .collect();
        if qe.is_empty() {
            return Err(Error::Precondition(
                "finitary unit vanishes at a finite atom".into(),
            ));
        }
        let qx = alg.apply(q, x);
        let mut best = BigRational::from_integer(BigInt::from(0));
        for n in 1..=denominators {
            let Some(nx) = self.multiple_inf(n, qx) else {
                continue;
            };
            let mut m = 0usize;
            while qe
                .iter()
                .all(|&e| self.multiple_inf(m + 1, e).is_some_and(|me| t.leq(me, nx)))
            {
                m += 1;
                if m > t.len() * n {
                    return Err(Error::Precondition(
                        "unbounded multiples of a unit element".into(),
                    ));
                }
            }
            let r = BigRational::new(BigInt::from(m), BigInt::from(n));
            if r > best {
                best = r;
            }
        }
        Ok(Value::Fin(best))
    }

    fn delta_integer_at(&self, q: Mask, x: Elem) -> Result<usize> {
        let alg = self.scale.algebra();
        let t = self.scale.table();
        let qe: Vec<Elem> = self
            .unit
            .iter()
            .map(|&e| alg.apply(q, e))
            .filter(|&e| e != 0)
            .collect();
        let qx = alg.apply(q, x);
        let mut k = 0;
        while qe
            .iter()
            .all(|&e| self.multiple_inf(k + 1, e).is_some_and(|ke| t.leq(ke, qx)))
        {
            k += 1;
            if k > t.len() {
                return Err(Error::Precondition(
                    "unbounded multiples of a unit element".into(),
                ));
            }
        }
        Ok(k)
    }

    /// `ε(v + u) = δ(v) + μ(u)` with `u = x|∞`.
    fn compute_epsilon(&self, x: Elem) -> Result<RepFunction> {
        let (v, u) = self.scale.split(x)?;
        Ok(self.delta(v)?.add(&self.mu(u)))
    }

    /// The enumerable function scale that holds the image of `ε`: at each
    /// atom, values up to the largest one attained.
    pub fn codomain(&self) -> Result<FunctionScale> {
        let mut points = Vec::with_capacity(self.types.len());
        for (i, ty) in self.types.iter().enumerate() {
            let top = self
                .eps
                .iter()
                .map(|f| f.values[i].clone())
                .max()
                .unwrap_or_else(Value::zero);
            let bound = match (ty.kind(), &top) {
                (MonoidKind::Two, Value::Fin(_)) => Value::zero(),
                _ => top,
            };
            points.push((*ty, ValueMonoid::new(ty.kind(), bound)));
        }
        FunctionScale::new(points)
    }
}

fn layer_value(k: usize) -> Value {
    if k == 0 {
        Value::zero()
    } else {
        Value::Aleph(Ordinal::finite(k as u32 - 1))
    }
}

/// `⟨q,0⟩, ⟨q,ℵ_0⟩, …` until the first undefined term.
fn atom_layers(s: &Scale, q: Mask) -> Result<Vec<Elem>> {
    let mut out = vec![0];
    let mut kappa = Value::aleph(0);
    loop {
        match s.scal(q, &kappa)? {
            Some(x) => out.push(x),
            None => return Ok(out),
        }
        if out.len() > s.table().len() + 1 {
            return Err(Error::Precondition(
                "layers of an atom do not terminate".into(),
            ));
        }
        kappa = kappa.successor().expect("aleph successor");
    }
}

/// One named clause of the embedding verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failure: Option<String>,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{} PASS", self.name),
            Some(w) => write!(f, "{} FAIL {w}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub checks: Vec<Check>,
}

impl EmbeddingReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }
}

fn check(name: &'static str, failure: Option<String>) -> Check {
    Check { name, failure }
}

fn pairs(n: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// Clauses that an assignment `S → functions` must satisfy to be the
/// canonical embedding; `None` means the clause holds.
pub struct Clauses<'a> {
    pub rep: &'a Representation,
    pub table: &'a [RepFunction],
}

impl Clauses<'_> {
    pub fn additivity(&self) -> Option<String> {
        let t = self.rep.scale.table();
        pairs(t.len()).find_map(|(x, y)| {
            let s = t.add(x, y)?;
            (self.table[s] != self.table[x].add(&self.table[y])).then(|| {
                format!(
                    "image of {} + {} is not the sum of images",
                    t.label(x),
                    t.label(y)
                )
            })
        })
    }

    pub fn injective(&self) -> Option<String> {
        let t = self.rep.scale.table();
        pairs(t.len())
            .find(|&(x, y)| x < y && self.table[x] == self.table[y])
            .map(|(x, y)| format!("{} and {} share an image", t.label(x), t.label(y)))
    }

    pub fn order(&self) -> Option<String> {
        let t = self.rep.scale.table();
        pairs(t.len())
            .find(|&(x, y)| self.table[x].leq(&self.table[y]) != t.leq(x, y))
            .map(|(x, y)| format!("order of {} and {} not matched", t.label(x), t.label(y)))
    }

    /// Every codomain function below an image is an image.
    pub fn lower_image(&self) -> Option<String> {
        let cod = match self.rep.codomain() {
            Ok(c) => c,
            Err(e) => return Some(e.to_string()),
        };
        let (_, funcs) = match cod.materialize() {
            Ok(m) => m,
            Err(e) => return Some(e.to_string()),
        };
        let image: BTreeSet<&Vec<Value>> = self.table.iter().map(|f| &f.values).collect();
        for f in self.table {
            for g in &funcs {
                if cod.leq(g, &f.values) && !image.contains(g) {
                    let shown: Vec<String> = g.iter().map(|v| v.to_string()).collect();
                    return Some(format!(
                        "[{}] is below an image but not an image",
                        shown.join(" ")
                    ));
                }
            }
        }
        None
    }

    /// `ε(p(x)) = ε(x)⌋_{Ω_p}`.
    pub fn projections(&self) -> Option<String> {
        let alg = self.rep.scale.algebra();
        let t = self.rep.scale.table();
        for p in alg.masks() {
            for x in t.elements() {
                if self.table[alg.apply(p, x)] != self.table[x].restrict(p) {
                    return Some(format!("projection {p:#b} at {}", t.label(x)));
                }
            }
        }
        None
    }

    /// `ε(e) = χ(cc(e))` for `e ∈ E`.
    pub fn unit_normalization(&self) -> Option<String> {
        let s = &self.rep.scale;
        for &e in &self.rep.unit {
            let cc = match s.central_cover(e) {
                Ok(c) => c,
                Err(err) => return Some(err.to_string()),
            };
            if self.table[e] != RepFunction::chi(&self.rep.types, cc) {
                return Some(format!(
                    "unit element {} is not the characteristic function of its cover",
                    s.table().label(e)
                ));
            }
        }
        None
    }
}

/// Exhaustive verification of the canonical embedding and of `μ`.
pub fn verify_embedding(rep: &Representation) -> EmbeddingReport {
    let s = &rep.scale;
    let t = s.table();
    let alg = s.algebra();
    let c = Clauses {
        rep,
        table: &rep.eps,
    };
    let mut checks = vec![
        check("injective", c.injective()),
        check("order", c.order()),
        check("additive", c.additivity()),
        check("lower-image", c.lower_image()),
        check("projections", c.projections()),
        check("unit-normalized", c.unit_normalization()),
    ];

    let pi: Vec<Elem> = s.purely_infinite().collect();
    let mus: Vec<RepFunction> = t.elements().map(|x| rep.mu(x)).collect();
    let mu_add = pairs(t.len()).find_map(|(x, y)| {
        let z = t.add(x, y)?;
        (mus[z] != mus[x].add(&mus[y]))
            .then(|| format!("mu not additive at {} + {}", t.label(x), t.label(y)))
    });
    let mu_order = pi
        .iter()
        .flat_map(|&x| pi.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| mus[x].leq(&mus[y]) != t.leq(x, y))
        .map(|(x, y)| format!("mu order of {} and {}", t.label(x), t.label(y)));
    let mu_lower = {
        let image: BTreeSet<&RepFunction> = pi.iter().map(|&x| &mus[x]).collect();
        let mut fail = None;
        'outer: for &x in &pi {
            for g in below_two_valued(&mus[x]) {
                if !image.contains(&g) {
                    fail = Some(format!("mu image not lower below {}", t.label(x)));
                    break 'outer;
                }
            }
        }
        fail
    };
    let mu_proj = alg.masks().find_map(|p| {
        t.elements()
            .find(|&x| mus[alg.apply(p, x)] != mus[x].restrict(p))
            .map(|x| format!("mu and projection {p:#b} at {}", t.label(x)))
    });
    let mu_lit = t.elements().find_map(|x| match rep.mu_literal(x) {
        Ok(f) if f == mus[x] => None,
        Ok(_) => Some(format!(
            "mu differs from its literal form at {}",
            t.label(x)
        )),
        Err(e) => Some(e.to_string()),
    });
    let delta_finite = s.directly_finite().find_map(|x| match rep.delta(x) {
        Ok(f) if f.values.iter().all(Value::is_finite) => None,
        Ok(_) => Some(format!("delta of {} has an infinite value", t.label(x))),
        Err(e) => Some(e.to_string()),
    });
    let delta_cert = s
        .directly_finite()
        .find_map(|x| match rep.delta_certificate(x) {
            Ok(true) => None,
            Ok(false) => Some(format!(
                "delta of {} depends on the denominator bound",
                t.label(x)
            )),
            Err(e) => Some(e.to_string()),
        });
    checks.extend([
        check("mu-additive", mu_add),
        check("mu-order", mu_order),
        check("mu-lower-image", mu_lower),
        check("mu-projections", mu_proj),
        check("mu-literal", mu_lit),
        check("delta-finite", delta_finite),
        check("delta-denominators", delta_cert),
    ]);
    EmbeddingReport { checks }
}

/// All functions with values in `{0, ℵ_0, …}` below `f`.
fn below_two_valued(f: &RepFunction) -> Vec<RepFunction> {
    let mut out = vec![RepFunction::zero(&f.types)];
    for (i, v) in f.values.iter().enumerate() {
        let opts: Vec<Value> = match v {
            Value::Aleph(a) if a.omega == 0 => std::iter::once(Value::zero())
                .chain((0..=a.fin).map(Value::aleph))
                .collect(),
            _ => vec![Value::zero()],
        };
        out = out
            .into_iter()
            .flat_map(|g| {
                opts.iter().map(move |o| {
                    let mut h = g.clone();
                    h.values[i] = o.clone();
                    h
                })
            })
            .collect();
    }
    out
}

/// Outcome of the round trip through the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub codomain_size: usize,
    pub image: MonoidTable,
    pub isomorphic: bool,
}

/// Materializes the codomain, restricts it to the image of `ε`, and checks
/// that `ε` is an isomorphism onto that partial submonoid.
pub fn roundtrip(rep: &Representation) -> Result<RoundTrip> {
    let cod = rep.codomain()?;
    let (table, funcs) = cod.materialize()?;
    let mut index = Vec::with_capacity(rep.eps.len());
    for f in &rep.eps {
        let i = funcs
            .iter()
            .position(|g| *g == f.values)
            .ok_or_else(|| Error::Precondition("image outside the codomain".into()))?;
        index.push(i);
    }
    let set: BTreeSet<Elem> = index.iter().copied().collect();
    let (image, map) = lower_submonoid(&table, &set)?;
    let to_sub: Vec<Elem> = index
        .iter()
        .map(|i| map.iter().position(|m| m == i).expect("in image"))
        .collect();
    let isomorphic = is_isomorphism(rep.scale.table(), &image, &to_sub);
    Ok(RoundTrip {
        codomain_size: table.len(),
        image,
        isomorphic,
    })
}

/// A single-atom, single-element change of the `ε` table that keeps every
/// checked clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survivor {
    pub element: Elem,
    pub atom: usize,
    pub value: Value,
}

/// Tries every change of one value of the `ε` table to another value of the
/// codomain at that atom. Returns how many were tried, or the first one that
/// breaks none of the projection, additivity, lower-embedding (injective,
/// order-reflecting, lower image) and unit-normalization clauses.
pub fn perturbation_check(rep: &Representation) -> Result<std::result::Result<usize, Survivor>> {
    let cod = rep.codomain()?;
    let mut tried = 0;
    for (i, (_, m)) in cod.points().iter().enumerate() {
        let vals = m
            .enumerate()
            .ok_or_else(|| Error::Precondition("codomain not enumerable".into()))?;
        for x in rep.scale.table().elements() {
            for v in &vals {
                if *v == rep.eps[x].values[i] {
                    continue;
                }
                tried += 1;
                let mut table = rep.eps.clone();
                table[x].values[i] = v.clone();
                let c = Clauses { rep, table: &table };
                let broken = c.projections().is_some()
                    || c.additivity().is_some()
                    || c.injective().is_some()
                    || c.order().is_some()
                    || c.lower_image().is_some()
                    || c.unit_normalization().is_some();
                if !broken {
                    return Ok(Err(Survivor {
                        element: x,
                        atom: i,
                        value: v.clone(),
                    }));
                }
            }
        }
    }
    Ok(Ok(tried))
}
