//! Shared generators and helpers for the property and acceptance suites.
//
// Each integration-test target compiles its own copy of this module, so not
// every helper is used by every target.
#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use tautcheck::dsl::Ast;
use tautcheck::rat::{rat, Rat};
use tautcheck::taut::{Gen, Local, NormalMonomial, TautExpr};

/// One generator symbol with indices in 1..=m.
pub fn arb_gen(m: usize) -> BoxedStrategy<Gen> {
    let h = (1..=m).prop_map(Gen::H);
    let o = (1..=m).prop_map(Gen::O);
    if m >= 2 {
        let tau = (1..=m, 1..=m)
            .prop_filter("tau needs distinct indices", |(i, j)| i != j)
            .prop_map(|(i, j)| Gen::tau(i, j).unwrap());
        prop_oneof![h, o, tau].boxed()
    } else {
        prop_oneof![h, o].boxed()
    }
}

/// A product of up to `max_len` generator symbols.
pub fn arb_gens(m: usize, max_len: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(arb_gen(m), 0..=max_len)
}

/// (m, generator word) with 1 ≤ m ≤ 3.
pub fn arb_word() -> impl Strategy<Value = (usize, Vec<Gen>)> {
    (1..=3usize).prop_flat_map(|m| (Just(m), arb_gens(m, 6)))
}

pub fn expr_of(m: usize, coeff: Rat, gens: Vec<Gen>) -> TautExpr {
    TautExpr::new(m, vec![(coeff, gens)]).unwrap()
}

/// Turns a normal monomial back into a flat generator word.
pub fn monomial_gens(mono: &NormalMonomial) -> Vec<Gen> {
    let mut gens = Vec::new();
    for &(i, j) in &mono.matching {
        gens.push(Gen::tau(i, j).unwrap());
    }
    for (&i, l) in &mono.local {
        match l {
            Local::H1 => gens.push(Gen::H(i)),
            Local::H2 => {
                gens.push(Gen::H(i));
                gens.push(Gen::H(i));
            }
            Local::O => gens.push(Gen::O(i)),
        }
    }
    gens
}

/// Applies an index relabeling (1-based permutation table) to a generator.
pub fn relabel_gen(g: &Gen, perm: &[usize]) -> Gen {
    match *g {
        Gen::H(i) => Gen::H(perm[i - 1]),
        Gen::O(i) => Gen::O(perm[i - 1]),
        Gen::Tau(i, j) => Gen::tau(perm[i - 1], perm[j - 1]).unwrap(),
    }
}

/// Applies an index relabeling to a normal monomial, restoring canonical
/// pair and key order.
pub fn relabel_monomial(mono: &NormalMonomial, perm: &[usize]) -> NormalMonomial {
    let mut matching: Vec<(usize, usize)> = mono
        .matching
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (perm[i - 1], perm[j - 1]);
            (a.min(b), a.max(b))
        })
        .collect();
    matching.sort_unstable();
    let local: BTreeMap<usize, Local> =
        mono.local.iter().map(|(&i, &l)| (perm[i - 1], l)).collect();
    NormalMonomial { m: mono.m, matching, local }
}

/// Sorted, canonical view of a normal form for comparisons.
pub fn normal_form_key(nf: &[(Rat, NormalMonomial)]) -> Vec<(NormalMonomial, Rat)> {
    let mut v: Vec<(NormalMonomial, Rat)> =
        nf.iter().map(|(c, m)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// Random AST conforming to the expression grammar (nonnegative rational
/// literals; the grammar has no unary minus).
pub fn arb_ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (0i64..100, 1i64..40).prop_map(|(p, q)| Ast::Num(rat(p, q))),
        (1usize..=4).prop_map(|i| Ast::Gen { name: "h".into(), args: vec![i] }),
        (1usize..=4).prop_map(|i| Ast::Gen { name: "o".into(), args: vec![i] }),
        (1usize..=4, 1usize..=4)
            .prop_filter("distinct", |(i, j)| i != j)
            .prop_map(|(i, j)| Ast::Gen { name: "tau".into(), args: vec![i, j] }),
        prop_oneof![Just(0usize), Just(2), Just(3), Just(4), Just(6)]
            .prop_map(|j| Ast::Gen { name: "pi".into(), args: vec![j] }),
        Just(Ast::Gen { name: "delta".into(), args: vec![] }),
        Just(Ast::Gen { name: "delta_sm".into(), args: vec![] }),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
            (inner, 0usize..5).prop_map(|(a, e)| Ast::Pow(Box::new(a), e)),
        ]
    })
}

/// Runs `cases` randomized checks of `f` over `strategy`; returns the error
/// message of the first failure, if any.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: &S,
    f: impl Fn(S::Value) -> Result<(), String>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, ..Config::default() });
    runner
        .run(strategy, |v| f(v).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())
}
