//! Named invariant checks run by the acceptance target. Each check sweeps
//! its instances exhaustively and returns the number of cases examined, or a
//! witness on the first failure.

use std::collections::BTreeSet;

use dimscale::corpus;
use dimscale::espalier::{drng, gen_equipotency, EspalierScale, EspalierTable};
use dimscale::format::{parse, Instance};
use dimscale::monoid::{
    check_refinement, conical_witness, product, Elem, FormalSum, MonoidTable, RefMonoid,
};
use dimscale::projections::{least_difference, ProjectionAlgebra};
use dimscale::represent::{perturbation_check, Representation};
use dimscale::scale::{check_scale, infinite_part, Scale};
use dimscale::targets::{
    sample_axioms, two_gamma, z_chain, FunctionScale, PointType, Value, ValueMonoid,
};

use crate::common;

pub struct Lemma {
    pub name: &'static str,
    pub statement: &'static str,
    pub run: fn() -> Result<usize, String>,
}

type Check = Result<usize, String>;

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn scales() -> Vec<(&'static str, MonoidTable)> {
    corpus::scales()
}

fn espaliers() -> Vec<(&'static str, EspalierTable)> {
    corpus::espaliers()
}

fn algebra(t: &MonoidTable) -> ProjectionAlgebra {
    ProjectionAlgebra::new(t).expect("corpus scale has a projection algebra")
}

fn fold(xs: &[Elem], f: &dyn Fn(Elem, Elem) -> Option<Elem>) -> Option<Elem> {
    xs[1..].iter().try_fold(xs[0], |acc, &x| f(acc, x))
}

/// Set partitions of `0..n` as block lists.
fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(i);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![i]);
            next.push(q);
        }
        out = next;
    }
    out
}

fn sum_permutations() -> Check {
    let mut n = 0;
    let perms = common::permutations(3);
    for (name, t) in scales() {
        for xs in common::tuples(t.len(), 3) {
            let sums: BTreeSet<Option<Elem>> = perms
                .iter()
                .map(|p| t.sum(p.iter().map(|&i| xs[i])))
                .collect();
            ensure(sums.len() == 1, || format!("{name}: {xs:?}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn block_associativity() -> Check {
    let mut n = 0;
    let parts = partitions(4);
    for (name, t) in common::small_scales() {
        for xs in common::tuples(t.len(), 4) {
            let Some(total) = t.sum(xs.iter().copied()) else {
                continue;
            };
            for p in &parts {
                let blocks: Option<Vec<Elem>> =
                    p.iter().map(|b| t.sum(b.iter().map(|&i| xs[i]))).collect();
                let grouped = blocks.and_then(|b| t.sum(b));
                ensure(grouped == Some(total), || {
                    format!("{name}: {xs:?} grouped as {p:?}")
                })?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn monotone_definedness() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        for a in t.elements() {
            for b in t.elements() {
                let Some(s) = t.add(a, b) else { continue };
                for a2 in t.elements().filter(|&x| t.leq(x, a)) {
                    for b2 in t.elements().filter(|&x| t.leq(x, b)) {
                        let ok = t.add(a2, b2).is_some_and(|s2| t.leq(s2, s));
                        ensure(ok, || format!("{name}: {a2} <= {a}, {b2} <= {b}"))?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

fn ref_transfer() -> Check {
    let mut n = 0;
    for (name, t) in scales().into_iter().filter(|(_, t)| t.len() <= 6) {
        let r = RefMonoid::new(t.clone()).map_err(|e| e.to_string())?;
        let fs = |v: Vec<Elem>| FormalSum::new(v).expect("nonempty");
        let zero = fs(vec![0]);
        let sums: Vec<Vec<Elem>> = (1..=2).flat_map(|k| common::tuples(t.len(), k)).collect();
        let cancellative = t.elements().all(|a| {
            t.elements().all(|b| {
                t.elements()
                    .all(|c| t.add(a, c).is_none() || t.add(a, c) != t.add(b, c) || a == b)
            })
        });
        for u in &sums {
            for w in t.elements() {
                let uw = fs(u.iter().copied().chain([w]).collect());
                if conical_witness(&t).is_none() && r.eq(&uw, &zero).map_err(|e| e.to_string())? {
                    let ok = r.eq(&fs(u.clone()), &zero).map_err(|e| e.to_string())? && w == 0;
                    ensure(ok, || format!("{name}: {u:?} + {w} is zero"))?;
                }
                n += 1;
                if !cancellative {
                    continue;
                }
                for v in &sums {
                    let vw = fs(v.iter().copied().chain([w]).collect());
                    if r.eq(&uw, &vw).map_err(|e| e.to_string())? {
                        let ok = r
                            .eq(&fs(u.clone()), &fs(v.clone()))
                            .map_err(|e| e.to_string())?;
                        ensure(ok, || {
                            format!("{name}: cancelling {w} from {u:?} and {v:?}")
                        })?;
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn projections_preserve_meets_and_joins() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let alg = algebra(&t);
        for p in alg.masks() {
            let pr = |x| alg.apply(p, x);
            for a in t.elements() {
                for b in t.elements() {
                    let m = t.meet(a, b).expect("meet");
                    ensure(t.meet(pr(a), pr(b)) == Some(pr(m)), || {
                        format!("{name}: meet of {a},{b} under {p:#b}")
                    })?;
                    if let Some(j) = t.join(a, b) {
                        ensure(t.join(pr(a), pr(b)) == Some(pr(j)), || {
                            format!("{name}: join of {a},{b} under {p:#b}")
                        })?;
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn projections_preserve_differences() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let alg = algebra(&t);
        for p in alg.masks() {
            for a in t.elements() {
                for b in t.elements().filter(|&b| t.leq(a, b)) {
                    let d = least_difference(&t, a, b).map_err(|e| e.to_string())?;
                    let pd = least_difference(&t, alg.apply(p, a), alg.apply(p, b))
                        .map_err(|e| e.to_string())?;
                    ensure(alg.apply(p, d) == pd, || {
                        format!("{name}: {b} minus {a} under {p:#b}")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn pseudo_cancellation() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        for c in t.elements() {
            let absorbed: Vec<Elem> = t.elements().filter(|&u| t.add(u, c) == Some(c)).collect();
            for x in t.elements() {
                let Some(s) = t.add(x, c) else { continue };
                for y in t.elements().filter(|&y| t.add(y, c) == Some(s)) {
                    let found = t.elements().any(|d| {
                        absorbed.iter().any(|&u| t.add(d, u) == Some(x))
                            && absorbed.iter().any(|&v| t.add(d, v) == Some(y))
                    });
                    ensure(found, || format!("{name}: {x} + {c} = {y} + {c}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn separativity() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        for x in t.elements() {
            for y in t.elements() {
                for c in t.elements().filter(|&c| t.leq(c, x) && t.leq(c, y)) {
                    let s = t.add(x, c);
                    if s.is_some() && s == t.add(y, c) {
                        ensure(x == y, || format!("{name}: {x} + {c} = {y} + {c}"))?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

fn meet_formula() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let alg = algebra(&t);
        for x in t.elements() {
            for y in t.elements() {
                let p = alg
                    .comparability_witness(x, y)
                    .ok_or_else(|| format!("{name}: {x},{y} incomparable"))?;
                let c = t.add(alg.apply(p, x), alg.apply(alg.complement(p), y));
                ensure(c.is_some() && c == t.meet(x, y), || {
                    format!("{name}: meet of {x},{y}")
                })?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn directly_finite_cancellable() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        for c in t
            .elements()
            .filter(|&c| t.elements().all(|x| t.add(c, x) != Some(c) || x == 0))
        {
            for a in t.elements() {
                for b in t.elements() {
                    let s = t.add(a, c);
                    if s.is_some() && s == t.add(b, c) {
                        ensure(a == b, || format!("{name}: {a} + {c} = {b} + {c}"))?;
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Every `X^⊥` is an intersection of singleton orthocomplements, so closing
/// those under intersection covers every subset `X`.
fn orthogonal_splitting() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let all: BTreeSet<Elem> = t.elements().collect();
        let single: Vec<BTreeSet<Elem>> = t
            .elements()
            .map(|x| common::ortho(&t, &BTreeSet::from([x])))
            .collect();
        let mut family = BTreeSet::from([all.clone()]);
        loop {
            let mut next = family.clone();
            for f in &family {
                for s in &single {
                    next.insert(f.intersection(s).copied().collect());
                }
            }
            if next == family {
                break;
            }
            family = next;
        }
        for y in &family {
            let z = common::ortho(&t, y);
            for s in t.elements() {
                let ways = y
                    .iter()
                    .flat_map(|&a| z.iter().map(move |&b| (a, b)))
                    .filter(|&(a, b)| t.add(a, b) == Some(s));
                ensure(ways.count() == 1, || format!("{name}: {s} against {y:?}"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn infinite_part_additive() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let ip = |x| infinite_part(&t, x).expect("infinite part");
        for a in t.elements() {
            for b in t.elements() {
                let Some(s) = t.add(a, b) else { continue };
                ensure(t.add(ip(a), ip(b)) == Some(ip(s)), || {
                    format!("{name}: {a} + {b}")
                })?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn translation_meets_joins() -> Check {
    let mut n = 0;
    for (name, t) in common::small_scales() {
        for a in t.elements() {
            for k in 1..=3 {
                for xs in common::tuples(t.len(), k) {
                    let Some(ax) = xs
                        .iter()
                        .map(|&x| t.add(a, x))
                        .collect::<Option<Vec<Elem>>>()
                    else {
                        continue;
                    };
                    let m = fold(&xs, &|x, y| t.meet(x, y)).expect("meet");
                    ensure(t.add(a, m) == fold(&ax, &|x, y| t.meet(x, y)), || {
                        format!("{name}: {a} + meet {xs:?}")
                    })?;
                    if let Some(aj) = fold(&xs, &|x, y| t.join(x, y)).and_then(|j| t.add(a, j)) {
                        let ok = Some(aj) == fold(&ax, &|x, y| t.join(x, y));
                        ensure(ok, || format!("{name}: {a} + join {xs:?}"))?;
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn layers(s: &Scale, p: u32) -> Result<Vec<Elem>, String> {
    let mut out = Vec::new();
    for k in 0..=s.table().len() as u32 {
        match s.scal(p, &Value::aleph(k)).map_err(|e| e.to_string())? {
            Some(x) => out.push(x),
            None => break,
        }
    }
    Ok(out)
}

fn layer_growth() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let s = Scale::new(t.clone()).map_err(|e| e.to_string())?;
        let alg = s.algebra();
        for p in alg.masks().filter(|&p| p != 0) {
            let ls = layers(&s, p)?;
            for (i, &x) in ls.iter().enumerate() {
                ensure(s.central_cover(x).ok() == Some(p), || {
                    format!("{name}: cover of layer {i} under {p:#b}")
                })?;
                for &y in &ls[i + 1..] {
                    ensure(t.leq(x, y) && x != y, || {
                        format!("{name}: layers {x},{y} under {p:#b}")
                    })?;
                    ensure(common::removable(&t, x, y), || {
                        format!("{name}: {x} not removable in {y}")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn layer_bilinearity() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let s = Scale::new(t.clone()).map_err(|e| e.to_string())?;
        let alg = s.algebra();
        for p in alg.masks() {
            for q in alg.masks() {
                for k in 0..4 {
                    let kappa = Value::aleph(k);
                    let (Some(a), Some(b)) = (
                        s.scal(p, &kappa).ok().flatten(),
                        s.scal(q, &kappa).ok().flatten(),
                    ) else {
                        continue;
                    };
                    let Some(j) = t.join(a, b) else { continue };
                    let pq = s.scal(p | q, &kappa).map_err(|e| e.to_string())?;
                    ensure(pq == Some(j), || {
                        format!("{name}: {p:#b} and {q:#b} at aleph{k}")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn strict_chains_bound_layers() -> Check {
    let mut n = 0;
    let cases = [
        two_gamma(3),
        product(&[two_gamma(1), two_gamma(0)]),
        product(&[two_gamma(0), two_gamma(2)]),
    ];
    for t in cases {
        let s = Scale::new(t.clone()).map_err(|e| e.to_string())?;
        let alg = s.algebra();
        let pi: Vec<Elem> = t
            .elements()
            .filter(|&x| common::purely_infinite(&t, x))
            .collect();
        for k in 0..=3usize {
            for chain in common::tuples(pi.len(), k + 1) {
                let b: Vec<Elem> = chain.iter().map(|&i| pi[i]).collect();
                let p = s.central_cover(b[0]).map_err(|e| e.to_string())?;
                if p == 0 {
                    continue;
                }
                let below = |q: u32| q != 0 && q & p == q;
                let grows = (0..=k).all(|i| {
                    (i + 1..=k).all(|j| {
                        t.leq(b[i], b[j])
                            && alg
                                .masks()
                                .filter(|&q| below(q))
                                .all(|q| !t.leq(alg.apply(q, b[j]), alg.apply(q, b[i])))
                    })
                });
                if grows {
                    let l = s
                        .scal(p, &Value::aleph(k as u32))
                        .map_err(|e| e.to_string())?;
                    ensure(l.is_some_and(|l| t.leq(l, b[k])), || format!("chain {b:?}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn checker_routes_agree() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        ensure(check_scale(&t).routes_agree(), || name.to_string())?;
        n += 1;
    }
    for (name, l) in espaliers() {
        let d = drng(&l).map_err(|e| e.to_string())?;
        ensure(check_scale(&d.scale).routes_agree(), || name.to_string())?;
        n += 1;
    }
    Ok(n)
}

fn products_and_lower_subsets() -> Check {
    let mut n = 0;
    let small = common::small_scales()
        .into_iter()
        .filter(|(_, t)| t.len() <= 8)
        .collect::<Vec<_>>();
    for (a, s) in &small {
        for (b, u) in small.iter().filter(|(_, u)| s.len() * u.len() <= 36) {
            let p = product(&[s.clone(), u.clone()]);
            ensure(check_scale(&p).is_scale(), || format!("{a} x {b}"))?;
            n += 1;
        }
        for c in s.elements() {
            let set: BTreeSet<Elem> = s.elements().filter(|&x| s.leq(x, c)).collect();
            let (l, _) = dimscale::monoid::lower_submonoid(s, &set).map_err(|e| e.to_string())?;
            ensure(check_scale(&l).is_scale(), || format!("{a} below {c}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn type_ii_is_trivial() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let s = Scale::new(t).map_err(|e| e.to_string())?;
        let td = s.type_decomposition().map_err(|e| e.to_string())?;
        ensure(td.p_ii == 0, || name.to_string())?;
        n += 1;
    }
    Ok(n)
}

fn truncations_are_scales() -> Check {
    let mut n = 0;
    for k in 0..=8 {
        ensure(check_scale(&z_chain(k)).is_scale(), || format!("chain {k}"))?;
        n += 1;
    }
    for g in 0..=4 {
        ensure(check_scale(&two_gamma(g)).is_scale(), || {
            format!("aleph truncation {g}")
        })?;
        n += 1;
    }
    Ok(n)
}

fn rational_scales_sample_clean() -> Check {
    let mut n = 0;
    for (name, s) in corpus::q_scales() {
        let r = sample_axioms(&s, 10_000, 0);
        ensure(r.violations() == 0, || {
            format!("{name}: {:?}", r.first_witness)
        })?;
        n += r.samples;
    }
    Ok(n)
}

fn restriction_laws() -> Check {
    let mut n = 0;
    let cases = [
        vec![
            (PointType::I, ValueMonoid::z(2)),
            (PointType::III, ValueMonoid::two(1)),
        ],
        vec![
            (PointType::I, ValueMonoid::z(1)),
            (PointType::I, ValueMonoid::z(1)),
            (PointType::III, ValueMonoid::two(0)),
        ],
    ];
    for points in cases {
        let s = FunctionScale::new(points).map_err(|e| e.to_string())?;
        let (_, funcs) = s.materialize().map_err(|e| e.to_string())?;
        let k = s.points().len();
        let subsets: Vec<BTreeSet<usize>> = (0..1u32 << k)
            .map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        for f in &funcs {
            for u in &subsets {
                let rest: BTreeSet<usize> = (0..k).filter(|i| !u.contains(i)).collect();
                let whole = s.add(
                    &FunctionScale::restrict(f, u),
                    &FunctionScale::restrict(f, &rest),
                );
                ensure(whole.as_ref() == Some(f), || format!("split of {f:?}"))?;
                for v in &subsets {
                    let both: BTreeSet<usize> = u.intersection(v).copied().collect();
                    let lhs = FunctionScale::restrict(&FunctionScale::restrict(f, u), v);
                    ensure(lhs == FunctionScale::restrict(f, &both), || {
                        format!("restriction of {f:?}")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn schroeder_bernstein() -> Check {
    let mut n = 0;
    for (name, l) in espaliers() {
        for a in l.elements() {
            for b in l.elements() {
                if l.lesssim(a, b) && l.lesssim(b, a) {
                    ensure(l.sim(a, b), || {
                        format!("{name}: {} and {}", l.label(a), l.label(b))
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn drng_refinement() -> Check {
    let mut n = 0;
    for (name, l) in espaliers() {
        let d = drng(&l).map_err(|e| e.to_string())?;
        check_refinement(&d.scale).map_err(|f| format!("{name}: {f:?}"))?;
        n += 1;
    }
    Ok(n)
}

fn drng_is_scale() -> Check {
    let mut n = 0;
    for (name, l) in espaliers() {
        let d = drng(&l).map_err(|e| e.to_string())?;
        ensure(check_scale(&d.scale).is_scale(), || name.to_string())?;
        n += 1;
    }
    Ok(n)
}

fn strong_orthogonality() -> Check {
    let mut n = 0;
    for (name, l) in espaliers().into_iter().filter(|(_, l)| l.len() <= 64) {
        let s = EspalierScale::new(&l).map_err(|e| e.to_string())?;
        let m = l.len();
        let majorized = |xs: &[Elem]| l.elements().any(|c| xs.iter().all(|&x| l.leq(x, c)));
        for a in 0..m {
            for b in (0..m).filter(|&b| s.delta_perp(a, b)) {
                if !majorized(&[a, b]) {
                    continue;
                }
                let ab = l
                    .oplus(a, b)
                    .ok_or_else(|| format!("{name}: pair {a},{b}"))?;
                n += 1;
                for c in (0..m).filter(|&c| s.delta_perp(a, c) && s.delta_perp(b, c)) {
                    if majorized(&[a, b, c]) {
                        ensure(l.oplus(ab, c).is_some(), || {
                            format!("{name}: triple {a},{b},{c}")
                        })?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

fn perspectivity_implies_sim() -> Check {
    let mut n = 0;
    for (name, l) in espaliers().into_iter().filter(|(_, l)| l.len() <= 64) {
        for a in l.elements() {
            for b in l.elements() {
                if l.elements()
                    .any(|c| l.join(a, c) == l.join(b, c) && l.meet(a, c) == l.meet(b, c))
                {
                    ensure(l.sim(a, b), || {
                        format!("{name}: {} and {}", l.label(a), l.label(b))
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn drng_general_comparability() -> Check {
    let mut n = 0;
    for (name, l) in espaliers() {
        let s = EspalierScale::new(&l).map_err(|e| e.to_string())?;
        let t = &s.drng().scale;
        let alg = s.algebra();
        for x in t.elements() {
            for y in t.elements() {
                let p = alg
                    .comparability_witness(x, y)
                    .ok_or_else(|| format!("{name}: {x},{y}"))?;
                let q = alg.complement(p);
                let ok = t.leq(alg.apply(p, x), alg.apply(p, y))
                    && t.leq(alg.apply(q, y), alg.apply(q, x));
                ensure(ok, || format!("{name}: witness for {x},{y}"))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn equipotency_symmetry() -> Check {
    let mut n = 0;
    for (name, l) in espaliers()
        .into_iter()
        .filter(|(n, _)| n.starts_with("group-"))
    {
        let (base, power) = group_shape(name);
        let block = |set: usize| {
            (0..power)
                .filter(|i| set >> i & 1 == 1)
                .fold(0, |acc, i| acc | ((1 << base) - 1) << (i * base))
        };
        for x in 0..1usize << power {
            for y in (0..1usize << power).filter(|y| y.count_ones() == x.count_ones()) {
                ensure(l.sim(block(x), block(y)), || {
                    format!("{name}: index sets {x:#b} and {y:#b}")
                })?;
                n += 1;
            }
        }
    }
    let e = gen_equipotency(4).map_err(|e| e.to_string())?;
    for x in e.elements() {
        for y in e.elements() {
            ensure(e.sim(x, y) == (x.count_ones() == y.count_ones()), || {
                format!("equipotency {x} {y}")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

/// Base size and index-set size from a corpus name like `group-sym3-i2`.
fn group_shape(name: &str) -> (usize, usize) {
    let digits: Vec<usize> = name
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().expect("digits"))
        .collect();
    (digits[0], digits[1])
}

fn representations() -> Result<Vec<(&'static str, Representation)>, String> {
    scales()
        .into_iter()
        .map(|(name, t)| {
            let s = Scale::new(t).map_err(|e| e.to_string())?;
            Ok((
                name,
                Representation::new(s).map_err(|e| format!("{name}: {e}"))?,
            ))
        })
        .collect()
}

fn mu_additive() -> Check {
    let mut n = 0;
    for (name, r) in representations()? {
        let t = r.scale().table();
        let pi: Vec<Elem> = r.scale().purely_infinite().collect();
        for &x in &pi {
            for &y in &pi {
                if let Some(z) = t.add(x, y) {
                    ensure(r.mu(z) == r.mu(x).add(&r.mu(y)), || {
                        format!("{name}: {x} + {y}")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn mu_order_reflecting() -> Check {
    let mut n = 0;
    for (name, r) in representations()? {
        let t = r.scale().table();
        let pi: Vec<Elem> = r.scale().purely_infinite().collect();
        for &x in &pi {
            for &y in &pi {
                ensure(r.mu(x).leq(&r.mu(y)) == t.leq(x, y), || {
                    format!("{name}: {x} and {y}")
                })?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn epsilon_unique() -> Check {
    let mut n = 0;
    for (name, r) in representations()?
        .into_iter()
        .filter(|(_, r)| r.scale().table().len() <= 16)
    {
        match perturbation_check(&r).map_err(|e| e.to_string())? {
            Ok(tried) => n += tried,
            Err(s) => {
                return Err(format!(
                    "{name}: element {} atom {} value {}",
                    s.element, s.atom, s.value
                ))
            }
        }
    }
    Ok(n)
}

fn delta_finite() -> Check {
    let mut n = 0;
    for (name, r) in representations()? {
        for x in r.scale().directly_finite() {
            let f = r.delta(x).map_err(|e| e.to_string())?;
            ensure(f.values.iter().all(Value::is_finite), || {
                format!("{name}: {x}")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn format_round_trip() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let inst = Instance::Pcm(t);
        let text = inst.emit();
        let back = parse(&text, 1024).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == inst && back.emit() == text, || name.to_string())?;
        n += 1;
    }
    for (name, l) in espaliers() {
        let text = Instance::Esp(l).emit();
        let back = parse(&text, 1024).map_err(|e| format!("{name}: {e}"))?;
        ensure(back.emit() == text, || name.to_string())?;
        n += 1;
    }
    Ok(n)
}

fn reports_deterministic() -> Check {
    let mut n = 0;
    for (name, t) in scales() {
        let inst = Instance::Pcm(t);
        let a = dimscale_cli::run_check(&inst);
        let b = dimscale_cli::run_check(&inst);
        ensure(a.stdout == b.stdout && a.code == b.code, || {
            name.to_string()
        })?;
        n += 1;
    }
    Ok(n)
}

pub fn all() -> Vec<Lemma> {
    macro_rules! lemma {
        ($name:literal, $statement:literal, $run:ident) => {
            Lemma {
                name: $name,
                statement: $statement,
                run: $run,
            }
        };
    }
    vec![
        lemma!(
            "sum-permutation-invariance",
            "a defined finite sum is unchanged by reordering",
            sum_permutations
        ),
        lemma!(
            "block-associativity",
            "regrouping a defined sum of four terms gives the same sum",
            block_associativity
        ),
        lemma!(
            "monotone-definedness",
            "shrinking both summands keeps a sum defined and below",
            monotone_definedness
        ),
        lemma!(
            "refinement-quotient-transfer",
            "conicality and cancellation pass to formal sums",
            ref_transfer
        ),
        lemma!(
            "projection-lattice-maps",
            "projections preserve meets and bounded joins",
            projections_preserve_meets_and_joins
        ),
        lemma!(
            "projection-differences",
            "projections preserve least differences",
            projections_preserve_differences
        ),
        lemma!(
            "pseudo-cancellation",
            "equal translates differ only by absorbed parts",
            pseudo_cancellation
        ),
        lemma!(
            "separativity",
            "a + c = b + c with c below both forces a = b",
            separativity
        ),
        lemma!(
            "meet-from-comparability",
            "the meet is p(a) + p'(b) for a comparability witness p",
            meet_formula
        ),
        lemma!(
            "directly-finite-cancellable",
            "directly finite elements cancel",
            directly_finite_cancellable
        ),
        lemma!(
            "orthogonal-splitting",
            "every subset X splits the scale as X^perp plus X^perp-perp",
            orthogonal_splitting
        ),
        lemma!(
            "infinite-part-additive",
            "the infinite part of a sum is the sum of infinite parts",
            infinite_part_additive
        ),
        lemma!(
            "translation-meets-joins",
            "adding a constant preserves meets and majorized joins",
            translation_meets_joins
        ),
        lemma!(
            "layer-growth",
            "layers increase strictly, have cover p and are removable in later ones",
            layer_growth
        ),
        lemma!(
            "layer-bilinearity",
            "the layer of a join of projections is the join of layers",
            layer_bilinearity
        ),
        lemma!(
            "strict-chains-bound-layers",
            "a strictly growing chain of length n bounds the aleph_n layer",
            strict_chains_bound_layers
        ),
        lemma!(
            "checker-routes-agree",
            "the two axiom routes give the same verdict",
            checker_routes_agree
        ),
        lemma!(
            "products-and-lower-subsets",
            "products and principal lower subsets of scales are scales",
            products_and_lower_subsets
        ),
        lemma!(
            "type-ii-trivial",
            "finite corpus scales have no type II part",
            type_ii_is_trivial
        ),
        lemma!(
            "truncations-are-scales",
            "integer chains and aleph truncations are scales",
            truncations_are_scales
        ),
        lemma!(
            "rational-scales-sampled",
            "sampled refinement and N1/N3 hold on rational function scales",
            rational_scales_sample_clean
        ),
        lemma!(
            "restriction-laws",
            "restriction composes by intersection and splits additively",
            restriction_laws
        ),
        lemma!(
            "schroeder-bernstein",
            "mutual subequivalence implies equivalence",
            schroeder_bernstein
        ),
        lemma!(
            "dimension-range-refinement",
            "every dimension range has refinement",
            drng_refinement
        ),
        lemma!(
            "dimension-range-is-scale",
            "every dimension range is a scale",
            drng_is_scale
        ),
        lemma!(
            "strong-orthogonality",
            "majorized families with orthogonal dimensions are orthogonal",
            strong_orthogonality
        ),
        lemma!(
            "perspectivity-equivalence",
            "perspective elements are equivalent",
            perspectivity_implies_sim
        ),
        lemma!(
            "range-comparability",
            "dimension ranges have general comparability",
            drng_general_comparability
        ),
        lemma!(
            "equipotency-symmetry",
            "equal-size index sets give equivalent full blocks",
            equipotency_symmetry
        ),
        lemma!(
            "mu-additive",
            "mu is additive on purely infinite elements",
            mu_additive
        ),
        lemma!(
            "mu-order-reflecting",
            "mu reflects order on purely infinite elements",
            mu_order_reflecting
        ),
        lemma!(
            "epsilon-uniqueness",
            "every single-value change of epsilon breaks a clause",
            epsilon_unique
        ),
        lemma!(
            "delta-finite",
            "delta of a directly finite element has finite values",
            delta_finite
        ),
        lemma!(
            "format-round-trip",
            "emitting and parsing an instance is the identity",
            format_round_trip
        ),
        lemma!(
            "report-determinism",
            "check reports are identical across runs",
            reports_deterministic
        ),
    ]
}
