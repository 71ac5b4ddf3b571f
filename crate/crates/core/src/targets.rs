//! Value monoids with symbolic alephs, and function scales over a finite
//! discrete set of points.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::monoid::{lower_submonoid, product, Elem, MonoidTable};

/// Enumerated function scales larger than this are refused.
pub const MAX_FUNCTION_SCALE: usize = 4096;

/// An ordinal below `ω²`, written `ω·omega + fin`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    pub omega: u32,
    pub fin: u32,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { omega: 0, fin: 0 };
    pub const OMEGA: Ordinal = Ordinal { omega: 1, fin: 0 };

    pub fn finite(n: u32) -> Self {
        Ordinal { omega: 0, fin: n }
    }

    pub fn succ(self) -> Self {
        Ordinal {
            omega: self.omega,
            fin: self.fin + 1,
        }
    }

    pub fn is_limit(self) -> bool {
        self.fin == 0 && self.omega > 0
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.omega, self.fin) {
            (0, n) => write!(f, "{n}"),
            (1, 0) => write!(f, "w"),
            (1, n) => write!(f, "w+{n}"),
            (k, 0) => write!(f, "w*{k}"),
            (k, n) => write!(f, "w*{k}+{n}"),
        }
    }
}

impl FromStr for Ordinal {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("bad ordinal `{s}`");
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let (head, fin) = match s.split_once('+') {
            Some((h, n)) => (Some(h), num(n)?),
            None if s.starts_with('w') => (Some(s), 0),
            None => (None, num(s)?),
        };
        let omega = match head {
            None => 0,
            Some("w") => 1,
            Some(h) => num(h.strip_prefix("w*").ok_or_else(bad)?)?,
        };
        Ok(Ordinal { omega, fin })
    }
}

/// A finite nonnegative rational or a symbolic aleph. Finite values sort
/// below every aleph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Fin(BigRational),
    Aleph(Ordinal),
}

impl Value {
    pub fn zero() -> Self {
        Value::Fin(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Value::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Value::Fin(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn aleph(n: u32) -> Self {
        Value::Aleph(Ordinal::finite(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Fin(q) if q.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Fin(_))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Value::Fin(q) if q.is_integer())
    }

    /// `n + ℵ_β = ℵ_α + ℵ_β = ℵ_β` for `α ≤ β`.
    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Fin(a), Value::Fin(b)) => Value::Fin(a + b),
            (Value::Fin(_), Value::Aleph(b)) => Value::Aleph(*b),
            (Value::Aleph(a), Value::Fin(_)) => Value::Aleph(*a),
            (Value::Aleph(a), Value::Aleph(b)) => Value::Aleph(*a.max(b)),
        }
    }

    pub fn leq(&self, other: &Value) -> bool {
        self <= other
    }

    pub fn meet(&self, other: &Value) -> Value {
        self.min(other).clone()
    }

    pub fn join(&self, other: &Value) -> Value {
        self.max(other).clone()
    }

    /// Immediate successor among `0, ℵ_0, ℵ_1, …`: `0⁺ = ℵ_0`.
    pub fn successor(&self) -> Option<Value> {
        match self {
            Value::Fin(q) if q.is_zero() => Some(Value::aleph(0)),
            Value::Fin(_) => None,
            Value::Aleph(a) => Some(Value::Aleph(a.succ())),
        }
    }

    /// Least `x` with `self ≤ a + x`, given `a ≤ self`.
    pub fn least_difference(&self, a: &Value) -> Value {
        match (self, a) {
            (Value::Fin(b), Value::Fin(a)) => Value::Fin(b - a),
            (Value::Aleph(_), _) if self == a => Value::zero(),
            _ => self.clone(),
        }
    }

    /// Largest `c` with `a + c ≤ self`, given `a ≤ self`.
    pub fn largest_difference(&self, a: &Value) -> Value {
        match (self, a) {
            (Value::Fin(b), Value::Fin(a)) => Value::Fin(b - a),
            _ => self.clone(),
        }
    }

    /// `n · self`.
    pub fn times(&self, n: u64) -> Value {
        match self {
            Value::Fin(q) => Value::Fin(q * BigRational::from_integer(BigInt::from(n))),
            Value::Aleph(_) if n == 0 => Value::zero(),
            Value::Aleph(a) => Value::Aleph(*a),
        }
    }

    /// Compact label used for table elements: `3`, `7/2`, `aleph0`, `aleph(w+1)`.
    pub fn label(&self) -> String {
        match self {
            Value::Fin(q) => q.to_string(),
            Value::Aleph(a) if a.omega == 0 => format!("aleph{}", a.fin),
            Value::Aleph(a) => format!("aleph({a})"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Fin(q) => write!(f, "fin:{q}"),
            Value::Aleph(a) => write!(f, "aleph:{a}"),
        }
    }
}

impl FromStr for Value {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(rest) = s.strip_prefix("fin:") {
            let q: BigRational = rest.parse().map_err(|_| format!("bad rational `{rest}`"))?;
            if q.is_negative() {
                return Err(format!("negative value `{rest}`"));
            }
            Ok(Value::Fin(q))
        } else if let Some(rest) = s.strip_prefix("aleph:") {
            Ok(Value::Aleph(rest.parse()?))
        } else {
            Err(format!("bad value literal `{s}`"))
        }
    }
}

/// Which of ℤ_γ, ℚ_γ (standing in for ℝ_γ) or 2_γ a value monoid is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonoidKind {
    Z,
    Q,
    Two,
}

/// Type tag of a point of Ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointType {
    I,
    II,
    III,
}

impl PointType {
    pub fn kind(self) -> MonoidKind {
        match self {
            PointType::I => MonoidKind::Z,
            PointType::II => MonoidKind::Q,
            PointType::III => MonoidKind::Two,
        }
    }
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointType::I => "I",
            PointType::II => "II",
            PointType::III => "III",
        };
        f.write_str(s)
    }
}

/// A value monoid truncated to the values below `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueMonoid {
    pub kind: MonoidKind,
    pub bound: Value,
}

impl ValueMonoid {
    pub fn new(kind: MonoidKind, bound: Value) -> Self {
        ValueMonoid { kind, bound }
    }

    /// `2_γ`.
    pub fn two(gamma: u32) -> Self {
        Self::new(MonoidKind::Two, Value::aleph(gamma))
    }

    /// `{0..n}` inside ℤ_γ.
    pub fn z(n: i64) -> Self {
        Self::new(MonoidKind::Z, Value::int(n))
    }

    pub fn contains(&self, v: &Value) -> bool {
        let shape = match (self.kind, v) {
            (_, Value::Aleph(_)) => true,
            (MonoidKind::Z, Value::Fin(q)) => q.is_integer() && !q.is_negative(),
            (MonoidKind::Q, Value::Fin(q)) => !q.is_negative(),
            (MonoidKind::Two, Value::Fin(q)) => q.is_zero(),
        };
        shape && v.leq(&self.bound)
    }

    /// All members in increasing order, if finitely many.
    pub fn enumerate(&self) -> Option<Vec<Value>> {
        let mut out = Vec::new();
        match (&self.bound, self.kind) {
            (Value::Fin(q), MonoidKind::Z) => {
                let n = q.floor().to_integer();
                let mut i = BigInt::zero();
                while i <= n {
                    out.push(Value::Fin(BigRational::from_integer(i.clone())));
                    i += BigInt::one();
                }
            }
            (Value::Fin(_), MonoidKind::Two) => out.push(Value::zero()),
            (Value::Fin(q), MonoidKind::Q) if q.is_zero() => out.push(Value::zero()),
            (Value::Aleph(a), MonoidKind::Two) if a.omega == 0 => {
                out.push(Value::zero());
                out.extend((0..=a.fin).map(Value::aleph));
            }
            _ => return None,
        }
        Some(out)
    }
}

/// Functions on a finite set of typed points, bounded pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionScale {
    points: Vec<(PointType, ValueMonoid)>,
}

impl FunctionScale {
    pub fn new(points: Vec<(PointType, ValueMonoid)>) -> Result<Self> {
        for (i, (ty, m)) in points.iter().enumerate() {
            if ty.kind() != m.kind {
                return Err(Error::Params(format!(
                    "point {i} has type {ty} but monoid {:?}",
                    m.kind
                )));
            }
            if !m.contains(&m.bound) {
                return Err(Error::Params(format!(
                    "point {i} has bound {} outside its monoid",
                    m.bound
                )));
            }
        }
        Ok(FunctionScale { points })
    }

    pub fn points(&self) -> &[(PointType, ValueMonoid)] {
        &self.points
    }

    pub fn contains(&self, f: &[Value]) -> bool {
        f.len() == self.points.len() && f.iter().zip(&self.points).all(|(v, (_, m))| m.contains(v))
    }

    pub fn add(&self, f: &[Value], g: &[Value]) -> Option<Vec<Value>> {
        let s: Vec<Value> = f.iter().zip(g).map(|(a, b)| a.add(b)).collect();
        self.contains(&s).then_some(s)
    }

    pub fn leq(&self, f: &[Value], g: &[Value]) -> bool {
        f.iter().zip(g).all(|(a, b)| a.leq(b))
    }

    pub fn meet(&self, f: &[Value], g: &[Value]) -> Vec<Value> {
        f.iter().zip(g).map(|(a, b)| a.meet(b)).collect()
    }

    /// `g ∖ f` pointwise, for `f ≤ g`.
    pub fn least_difference(&self, f: &[Value], g: &[Value]) -> Vec<Value> {
        f.iter()
            .zip(g)
            .map(|(a, b)| b.least_difference(a))
            .collect()
    }

    /// `f⌋_U`: zero outside `keep`.
    pub fn restrict(f: &[Value], keep: &BTreeSet<usize>) -> Vec<Value> {
        f.iter()
            .enumerate()
            .map(|(i, v)| {
                if keep.contains(&i) {
                    v.clone()
                } else {
                    Value::zero()
                }
            })
            .collect()
    }

    /// Materializes an enumerable scale; elements are in lexicographic order
    /// of their value vectors.
    pub fn materialize(&self) -> Result<(MonoidTable, Vec<Vec<Value>>)> {
        let mut factors = Vec::new();
        let mut values = Vec::new();
        let mut size: usize = 1;
        for (i, (_, m)) in self.points.iter().enumerate() {
            let vals = m
                .enumerate()
                .ok_or_else(|| Error::Params(format!("point {i} has infinitely many values")))?;
            size = size.saturating_mul(vals.len());
            if size > MAX_FUNCTION_SCALE {
                return Err(Error::TooLarge {
                    size,
                    limit: MAX_FUNCTION_SCALE,
                });
            }
            factors.push(value_chain(&vals));
            values.push(vals);
        }
        let table = if factors.is_empty() {
            MonoidTable::new(vec!["0".into()], vec![Some(0)])?
        } else {
            product(&factors)
        };
        let mut elems = Vec::with_capacity(table.len());
        let sizes: Vec<usize> = values.iter().map(|v| v.len()).collect();
        for mut idx in 0..table.len() {
            let mut f = vec![Value::zero(); sizes.len()];
            for k in (0..sizes.len()).rev() {
                f[k] = values[k][idx % sizes[k]].clone();
                idx /= sizes[k];
            }
            elems.push(f);
        }
        Ok((table, elems))
    }

    /// A random member, for sampling the non-enumerable scales.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<Value> {
        self.points
            .iter()
            .map(|(_, m)| loop {
                let v = random_value(m.kind, &m.bound, rng);
                if m.contains(&v) {
                    break v;
                }
            })
            .collect()
    }
}

fn random_value<R: Rng>(kind: MonoidKind, bound: &Value, rng: &mut R) -> Value {
    let top_aleph = match bound {
        Value::Aleph(a) => Some(*a),
        Value::Fin(_) => None,
    };
    if let Some(a) = top_aleph {
        if rng.gen_bool(0.3) {
            let n = rng.gen_range(0..=a.fin.min(3));
            return Value::Aleph(Ordinal {
                omega: a.omega,
                fin: n,
            });
        }
    }
    match kind {
        MonoidKind::Two => Value::zero(),
        MonoidKind::Z => {
            let cap = match bound {
                Value::Fin(q) => q.floor().to_integer().try_into().unwrap_or(8i64),
                Value::Aleph(_) => 8,
            };
            Value::int(rng.gen_range(0..=cap))
        }
        MonoidKind::Q => {
            let d = rng.gen_range(1..=6);
            let cap = match bound {
                Value::Fin(q) => (q * BigRational::from_integer(BigInt::from(d)))
                    .floor()
                    .to_integer(),
                Value::Aleph(_) => BigInt::from(8 * d),
            };
            let cap: i64 = cap.try_into().unwrap_or(8);
            Value::ratio(rng.gen_range(0..=cap), d)
        }
    }
}

/// A totally ordered table from an increasing list of values closed under
/// the value addition where defined.
pub fn value_chain(vals: &[Value]) -> MonoidTable {
    let labels = vals.iter().map(|v| v.label()).collect();
    MonoidTable::from_fn(labels, |a, b| {
        let s = vals[a].add(&vals[b]);
        vals.iter().position(|v| *v == s)
    })
    .expect("value chain")
}

/// The chain `{0..n}`.
pub fn z_chain(n: u32) -> MonoidTable {
    ValueMonoid::z(n as i64)
        .enumerate()
        .map(|v| value_chain(&v))
        .expect("finite")
}

/// `2_γ = {0, ℵ_0, …, ℵ_γ}`.
pub fn two_gamma(gamma: u32) -> MonoidTable {
    ValueMonoid::two(gamma)
        .enumerate()
        .map(|v| value_chain(&v))
        .expect("finite")
}

/// Componentwise product, refused beyond [`MAX_FUNCTION_SCALE`] elements.
pub fn product_scale(factors: &[MonoidTable]) -> Result<MonoidTable> {
    if factors.is_empty() {
        return Err(Error::Params("empty product".into()));
    }
    let size = factors
        .iter()
        .fold(1usize, |acc, t| acc.saturating_mul(t.len()));
    if size > MAX_FUNCTION_SCALE {
        return Err(Error::TooLarge {
            size,
            limit: MAX_FUNCTION_SCALE,
        });
    }
    Ok(product(factors))
}

/// How a lower subset is specified.
#[derive(Clone, Debug)]
pub enum LowerSpec {
    Set(BTreeSet<Elem>),
    Ceiling(Elem),
}

/// The partial submonoid on a lower subset, with its index map.
pub fn lower_subset_scale(t: &MonoidTable, spec: &LowerSpec) -> Result<(MonoidTable, Vec<Elem>)> {
    let set = match spec {
        LowerSpec::Set(s) => s.clone(),
        LowerSpec::Ceiling(c) => {
            if *c >= t.len() {
                return Err(Error::BadIndex(*c));
            }
            t.elements().filter(|&x| t.leq(x, *c)).collect()
        }
    };
    lower_submonoid(t, &set)
}

/// Outcome of [`sample_axioms`]: counts of sampled instances and violations of
/// refinement, N1 and N3. M2 is not sampled, since `ℚ_γ` is not Dedekind
/// complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    pub samples: usize,
    pub refinement: usize,
    pub n1: usize,
    pub n3: usize,
    pub first_witness: Option<String>,
}

impl SampleReport {
    pub fn violations(&self) -> usize {
        self.refinement + self.n1 + self.n3
    }
}

/// Pointwise refinement of `a0 + a1 = b0 + b1` in one value monoid, by search
/// over values built from the inputs.
fn refine_point(m: &ValueMonoid, a: [&Value; 2], b: [&Value; 2]) -> Option<[Value; 4]> {
    let base = [
        Value::zero(),
        a[0].clone(),
        a[1].clone(),
        b[0].clone(),
        b[1].clone(),
    ];
    let mut cands: Vec<Value> = base.to_vec();
    for x in &base {
        for y in &base {
            if y.leq(x) {
                cands.push(x.least_difference(y));
            }
        }
    }
    cands.retain(|v| m.contains(v));
    cands.sort();
    cands.dedup();
    let sum = |x: &Value, y: &Value| Some(x.add(y)).filter(|s| m.contains(s));
    for c00 in &cands {
        for c01 in cands.iter().filter(|c| sum(c00, c).as_ref() == Some(a[0])) {
            for c10 in cands.iter().filter(|c| sum(c00, c).as_ref() == Some(b[0])) {
                for c11 in &cands {
                    if sum(c10, c11).as_ref() == Some(a[1]) && sum(c01, c11).as_ref() == Some(b[1])
                    {
                        return Some([c00.clone(), c01.clone(), c10.clone(), c11.clone()]);
                    }
                }
            }
        }
    }
    None
}

fn show(f: &[Value]) -> String {
    let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Randomized checks of refinement, N1 and N3 on a function scale that need
/// not be enumerable. Each sample draws fresh elements from a seeded stream.
pub fn sample_axioms(s: &FunctionScale, samples: usize, seed: u64) -> SampleReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = SampleReport {
        samples,
        refinement: 0,
        n1: 0,
        n3: 0,
        first_witness: None,
    };
    let note = |report: &mut SampleReport, w: String| {
        if report.first_witness.is_none() {
            report.first_witness = Some(w);
        }
    };
    for _ in 0..samples {
        // Refinement: b0 is drawn below a0 + a1 and b1 completes the sum.
        let (a0, a1, total) = loop {
            let (x, y) = (s.sample(&mut rng), s.sample(&mut rng));
            if let Some(t) = s.add(&x, &y) {
                break (x, y, t);
            }
        };
        let b0: Vec<Value> = s.meet(&s.sample(&mut rng), &total);
        let b1: Vec<Value> = s.least_difference(&b0, &total);
        let ok = s.add(&b0, &b1).as_deref() == Some(&total[..])
            && s.points
                .iter()
                .enumerate()
                .all(|(i, (_, m))| refine_point(m, [&a0[i], &a1[i]], [&b0[i], &b1[i]]).is_some());
        if !ok {
            report.refinement += 1;
            note(
                &mut report,
                format!(
                    "refinement: {} + {} = {} + {}",
                    show(&a0),
                    show(&a1),
                    show(&b0),
                    show(&b1)
                ),
            );
        }

        // N1: a = c + x and b = c + y with x ⊥ y.
        let (a, b) = (s.sample(&mut rng), s.sample(&mut rng));
        let c = s.meet(&a, &b);
        let x = s.least_difference(&c, &a);
        let y = s.least_difference(&c, &b);
        let disjoint = x.iter().zip(&y).all(|(u, v)| u.is_zero() || v.is_zero());
        if s.add(&c, &x).as_deref() != Some(&a[..])
            || s.add(&c, &y).as_deref() != Some(&b[..])
            || !disjoint
        {
            report.n1 += 1;
            note(&mut report, format!("N1: {} and {}", show(&a), show(&b)));
        }

        // N3: for a ≤ b, x = b ∖ a satisfies b ≤ a + x and is below every
        // sampled z with b ≤ a + z.
        let lo = s.meet(&a, &b);
        let x = s.least_difference(&lo, &b);
        let covers = |z: &[Value]| s.add(&lo, z).is_some_and(|t| s.leq(&b, &t));
        let z = s.sample(&mut rng);
        if !covers(&x) || (covers(&z) && !s.leq(&x, &z)) {
            report.n3 += 1;
            note(&mut report, format!("N3: {} ∖ {}", show(&b), show(&lo)));
        }
    }
    report
}
