//! Named instances used by the test suites and the command line tool.

use std::collections::BTreeSet;

use crate::espalier::{
    combine, gen_equipotency, gen_group_action, gen_subspace_lattice, Combine, EspalierTable,
    LowerSet, ESP_MAX_SIZE,
};
use crate::monoid::MonoidTable;
use crate::targets::{
    lower_subset_scale, product_scale, two_gamma, z_chain, FunctionScale, LowerSpec, MonoidKind,
    PointType, Value, ValueMonoid,
};

fn prod(parts: &[MonoidTable]) -> MonoidTable {
    product_scale(parts).expect("small product")
}

fn lower(t: &MonoidTable, spec: LowerSpec) -> MonoidTable {
    lower_subset_scale(t, &spec).expect("lower subset").0
}

fn ceiling(t: &MonoidTable, label: &str) -> LowerSpec {
    LowerSpec::Ceiling(t.index_of(label).expect("known label"))
}

fn function(points: Vec<(PointType, ValueMonoid)>) -> MonoidTable {
    FunctionScale::new(points)
        .and_then(|s| s.materialize())
        .expect("enumerable function scale")
        .0
}

/// Enumerable scales, each with at most 64 elements.
pub fn scales() -> Vec<(&'static str, MonoidTable)> {
    let z = |n| z_chain(n);
    let two = |g| two_gamma(g);
    let z1_two0 = prod(&[z(1), two(0)]);
    let z1_two1 = prod(&[z(1), two(1)]);
    let z2_z2 = prod(&[z(2), z(2)]);
    let z3_two1 = prod(&[z(3), two(1)]);
    vec![
        ("trivial", z(0)),
        ("z1", z(1)),
        ("z2", z(2)),
        ("z3", z(3)),
        ("z5", z(5)),
        ("z8", z(8)),
        ("two0", two(0)),
        ("two1", two(1)),
        ("two2", two(2)),
        ("two3", two(3)),
        ("z1xz1", prod(&[z(1), z(1)])),
        ("z2xz1", prod(&[z(2), z(1)])),
        ("z1^3", prod(&[z(1), z(1), z(1)])),
        ("z2xz2", z2_z2.clone()),
        ("z1xtwo0", z1_two0.clone()),
        ("z1xtwo1", z1_two1.clone()),
        ("z2xtwo1", prod(&[z(2), two(1)])),
        ("z3xtwo0", prod(&[z(3), two(0)])),
        ("two0xtwo0", prod(&[two(0), two(0)])),
        ("two1xtwo0", prod(&[two(1), two(0)])),
        ("z1xz1xtwo0", prod(&[z(1), z(1), two(0)])),
        ("z2xz2xtwo0", prod(&[z(2), z(2), two(0)])),
        ("z3xz3xtwo1", prod(&[z(3), z(3), two(1)])),
        ("z1^4xtwo0", prod(&[z(1), z(1), z(1), z(1), two(0)])),
        (
            "z1xtwo0|L3",
            lower(&z1_two0, LowerSpec::Set(BTreeSet::from([0, 1, 2]))),
        ),
        (
            "z1xtwo1|(1,aleph0)",
            lower(&z1_two1, ceiling(&z1_two1, "(1,aleph0)")),
        ),
        ("z2xz2|(2,1)", lower(&z2_z2, ceiling(&z2_z2, "(2,1)"))),
        (
            "z3xtwo1|(2,aleph1)",
            lower(&z3_two1, ceiling(&z3_two1, "(2,aleph1)")),
        ),
        (
            "fn:I2,III1",
            function(vec![
                (PointType::I, ValueMonoid::z(2)),
                (PointType::III, ValueMonoid::two(1)),
            ]),
        ),
        (
            "fn:I1,I1,III0",
            function(vec![
                (PointType::I, ValueMonoid::z(1)),
                (PointType::I, ValueMonoid::z(1)),
                (PointType::III, ValueMonoid::two(0)),
            ]),
        ),
        (
            "fn:III0,III2",
            function(vec![
                (PointType::III, ValueMonoid::two(0)),
                (PointType::III, ValueMonoid::two(2)),
            ]),
        ),
        ("z4xz1xtwo0", prod(&[z(4), z(1), two(0)])),
    ]
}

/// Generated espaliers.
pub fn espaliers() -> Vec<(&'static str, EspalierTable)> {
    let eq = |n| gen_equipotency(n).expect("equipotency");
    let sub = |q, n| gen_subspace_lattice(q, n).expect("subspace lattice");
    let ga =
        |n, g: &[Vec<usize>], i| gen_group_action(n, g, i, ESP_MAX_SIZE).expect("group action");
    let sym2 = vec![vec![1, 0]];
    let sym3 = vec![vec![1, 0, 2], vec![1, 2, 0]];
    let cyc3 = vec![vec![1, 2, 0]];
    let cyc4 = vec![vec![1, 2, 3, 0]];
    let pr = |ls: &[&EspalierTable]| combine(ls, &Combine::Product, ESP_MAX_SIZE).expect("product");
    let low = |l: &EspalierTable, label: &str| {
        let a = l.index_of(label).expect("known label");
        combine(&[l], &Combine::LowerSub(LowerSet::Ceiling(a)), ESP_MAX_SIZE)
            .expect("lower subespalier")
    };
    let (e1, e2, e3) = (eq(1), eq(2), eq(3));
    let (s21, s22, s23) = (sub(2, 1), sub(2, 2), sub(2, 3));
    let e2s22 = pr(&[&e2, &s22]);
    vec![
        ("equipotency-1", e1.clone()),
        ("equipotency-2", e2.clone()),
        ("equipotency-3", e3.clone()),
        ("equipotency-4", eq(4)),
        ("equipotency-5", eq(5)),
        ("group-sym3-i1", ga(3, &sym3, 1)),
        ("group-trivial3-i1", ga(3, &[], 1)),
        ("group-trivial2-i2", ga(2, &[], 2)),
        ("group-sym2-i2", ga(2, &sym2, 2)),
        ("group-sym3-i2", ga(3, &sym3, 2)),
        ("group-cyc4-i1", ga(4, &cyc4, 1)),
        ("group-cyc3-i2", ga(3, &cyc3, 2)),
        ("group-sym2-i3", ga(2, &sym2, 3)),
        ("group-cyc4-i2", ga(4, &cyc4, 2)),
        ("subspace-2-1", s21.clone()),
        ("subspace-2-2", s22.clone()),
        ("subspace-3-2", sub(3, 2)),
        ("subspace-2-3", s23.clone()),
        ("equipotency-1xequipotency-2", pr(&[&e1, &e2])),
        ("equipotency-2xsubspace-2-2", e2s22.clone()),
        ("subspace-2-1xsubspace-2-1", pr(&[&s21, &s21])),
        ("equipotency-1^3", pr(&[&e1, &e1, &e1])),
        ("equipotency-3|{1,2}", low(&e3, "{1,2}")),
        ("subspace-2-3|<100,010>", low(&s23, "<100,010>")),
        (
            "equipotency-2xsubspace-2-2|({1},<10,01>)",
            low(&e2s22, "({1},<10,01>)"),
        ),
    ]
}

/// Function scales with `ℚ` points, checked by sampling.
pub fn q_scales() -> Vec<(&'static str, FunctionScale)> {
    let q = |b: Value| ValueMonoid::new(MonoidKind::Q, b);
    let mk = |p| FunctionScale::new(p).expect("consistent tags");
    vec![
        ("q:II3", mk(vec![(PointType::II, q(Value::int(3)))])),
        (
            "q:II7/2,III1",
            mk(vec![
                (PointType::II, q(Value::ratio(7, 2))),
                (PointType::III, ValueMonoid::two(1)),
            ]),
        ),
        ("q:IIaleph1", mk(vec![(PointType::II, q(Value::aleph(1)))])),
        (
            "q:I2,II1,III0",
            mk(vec![
                (PointType::I, ValueMonoid::z(2)),
                (PointType::II, q(Value::int(1))),
                (PointType::III, ValueMonoid::two(0)),
            ]),
        ),
    ]
}
