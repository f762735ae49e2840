//! Randomized invariants of the arithmetic core, the cohomology models,
//! the rewriting system, and the expression language.

mod common;

use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::*;
use tautcheck::dsl;
use tautcheck::linalg::SparseMatrix;
use tautcheck::model::{standard_omega, varieties, GradedClass, Space, VarietyModel};
use tautcheck::rat::{is_canonical, rat, rat_int, Rat};
use tautcheck::taut::{TautExpr, TautRing};

fn y_ring() -> &'static TautRing {
    static RING: OnceLock<TautRing> = OnceLock::new();
    RING.get_or_init(|| TautRing::bootstrap(&varieties::y18()).unwrap())
}

fn arb_coeff() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(arb_coeff(), r * c).prop_map(move |entries| {
            let mut m = SparseMatrix::new(r, c);
            for (k, v) in entries.into_iter().enumerate() {
                m.set(k / c, k % c, v).unwrap();
            }
            m
        })
    })
}

fn arb_model() -> impl Strategy<Value = Arc<VarietyModel>> {
    prop_oneof![
        Just(varieties::y18()),
        Just(varieties::z4()),
        Just(varieties::curve2()),
        Just(varieties::ab2()),
    ]
}

fn arb_space(max_factors: usize) -> impl Strategy<Value = Arc<Space>> {
    prop::collection::vec(arb_model(), 1..=max_factors).prop_map(Space::product)
}

fn arb_class(space: Arc<Space>) -> impl Strategy<Value = GradedClass> {
    let d = space.dim();
    prop::collection::vec((0..d, arb_coeff()), 0..=4)
        .prop_map(move |terms| GradedClass::from_terms(space.clone(), terms))
}

/// A homogeneous class: random coefficients on up to four basis elements
/// that share the degree of a randomly chosen seed index.
fn arb_homogeneous(space: Arc<Space>) -> impl Strategy<Value = GradedClass> {
    let d = space.dim();
    (0..d, prop::collection::vec((0..d, arb_coeff()), 1..=4)).prop_map(move |(seed, terms)| {
        let deg = space.degree(seed);
        let picked: Vec<(usize, Rat)> = terms
            .into_iter()
            .map(|(i, c)| {
                // snap each pick to the seed degree by scanning forward
                let mut j = i;
                while space.degree(j) != deg {
                    j = (j + 1) % space.dim();
                }
                (j, c)
            })
            .collect();
        GradedClass::from_terms(space.clone(), picked)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rationals_stay_canonical(a in -1000i64..1000, b in 1i64..200, c in -1000i64..1000, d in 1i64..200) {
        let x = rat(a, b);
        let y = rat(c, d);
        prop_assert!(is_canonical(&x));
        prop_assert!(is_canonical(&(&x + &y)));
        prop_assert!(is_canonical(&(&x * &y)));
        prop_assert!(is_canonical(&(&x - &y)));
    }

    #[test]
    fn rank_equals_transpose_rank(m in arb_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_invariant_under_row_permutation_and_scaling(
        m in arb_matrix(),
        seed in any::<u64>(),
        scale_num in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
    ) {
        let rows = m.rows();
        let mut order: Vec<usize> = (0..rows).collect();
        // Fisher-Yates driven by the seed
        let mut state = seed | 1;
        for i in (1..rows).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            order.swap(i, j);
        }
        let mut permuted = SparseMatrix::new(rows, m.cols());
        for r in 0..rows {
            for c in 0..m.cols() {
                let v = m.get(order[r], c);
                if !v.is_zero() {
                    permuted.set(r, c, v).unwrap();
                }
            }
        }
        prop_assert_eq!(permuted.rank(), m.rank());
        // scale row 0 by a nonzero rational
        let mut scaled = permuted.clone();
        for c in 0..m.cols() {
            let v = scaled.get(0, c) * rat_int(scale_num);
            scaled.set(0, c, v).unwrap();
        }
        prop_assert_eq!(scaled.rank(), m.rank());
    }

    #[test]
    fn solve_recovers_consistent_systems(
        m in arb_matrix(),
        xs in prop::collection::vec(arb_coeff(), 5),
    ) {
        let x: Vec<Rat> = xs.into_iter().take(m.cols()).collect();
        let mut x = x;
        x.resize(m.cols(), Rat::zero());
        let b = m.apply(&x).unwrap();
        let y = m.solve(&b).unwrap();
        let y = y.expect("system constructed from a solution must be consistent");
        prop_assert_eq!(m.apply(&y).unwrap(), b);
    }

    #[test]
    fn cup_is_supercommutative(
        (x, y) in arb_space(2).prop_flat_map(|sp| (arb_homogeneous(sp.clone()), arb_homogeneous(sp)))
    ) {
        let xy = x.cup(&y).unwrap();
        let yx = y.cup(&x).unwrap();
        let dx = x.degrees().first().copied().unwrap_or(0);
        let dy = y.degrees().first().copied().unwrap_or(0);
        let sign = if dx * dy % 2 == 1 { rat_int(-1) } else { rat_int(1) };
        prop_assert_eq!(xy, yx.scale(&sign));
    }

    #[test]
    fn cup_is_associative(
        (x, y, z) in arb_space(2).prop_flat_map(|sp| (
            arb_class(sp.clone()),
            arb_class(sp.clone()),
            arb_class(sp),
        ))
    ) {
        let lhs = x.cup(&y).unwrap().cup(&z).unwrap();
        let rhs = x.cup(&y.cup(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_formula_holds(
        (y, x) in (arb_model(), arb_model()).prop_flat_map(|(m1, m2)| {
            let sp = Space::product(vec![m1.clone(), m2]);
            (arb_class(Space::single(m1)), arb_class(sp))
        })
    ) {
        let product = x.space.clone();
        let pulled = y.pullback(&product, &[0]).unwrap();
        let lhs = pulled.cup(&x).unwrap().pushforward(&[0]).unwrap();
        let rhs = y.cup(&x.pushforward(&[0]).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_betti_numbers_convolve(models in prop::collection::vec(arb_model(), 1..=3)) {
        let space = Space::product(models.clone());
        let mut conv = vec![1i64];
        for m in &models {
            let b = m.betti();
            let mut next = vec![0i64; conv.len() + b.len() - 1];
            for (i, &ci) in conv.iter().enumerate() {
                for (j, &bj) in b.iter().enumerate() {
                    next[i + j] += ci * bj as i64;
                }
            }
            conv = next;
        }
        let got: Vec<i64> = space.betti().iter().map(|&v| v as i64).collect();
        prop_assert_eq!(got, conv);
    }

    #[test]
    fn normalization_is_order_independent(
        (m, gens, shuffled) in arb_word().prop_flat_map(|(m, gens)| {
            (Just(m), Just(gens.clone()), Just(gens).prop_shuffle())
        })
    ) {
        let ring = y_ring();
        let a = ring.normalize(&expr_of(m, rat_int(1), gens)).unwrap();
        let b = ring.normalize(&expr_of(m, rat_int(1), shuffled)).unwrap();
        prop_assert_eq!(normal_form_key(&a), normal_form_key(&b));
    }

    #[test]
    fn normalization_of_products_is_closed(
        (m, gens, split) in arb_word().prop_flat_map(|(m, gens)| {
            let n = gens.len();
            (Just(m), Just(gens), 0..=n)
        })
    ) {
        let ring = y_ring();
        let whole = ring.normalize(&expr_of(m, rat_int(1), gens.clone())).unwrap();
        let left = ring.normalize(&expr_of(m, rat_int(1), gens[..split].to_vec())).unwrap();
        let right = ring.normalize(&expr_of(m, rat_int(1), gens[split..].to_vec())).unwrap();
        // multiply the two normal forms and renormalize
        let mut terms = Vec::new();
        for (c1, m1) in &left {
            for (c2, m2) in &right {
                let mut word = monomial_gens(m1);
                word.extend(monomial_gens(m2));
                terms.push((c1 * c2, word));
            }
        }
        let product = ring.normalize(&TautExpr::new(m, terms).unwrap()).unwrap();
        prop_assert_eq!(normal_form_key(&product), normal_form_key(&whole));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        (m, gens1, gens2) in (1usize..=2).prop_flat_map(|m| {
            (Just(m), arb_gens(m, 4), arb_gens(m, 4))
        }),
        c1 in arb_coeff(),
        c2 in arb_coeff(),
    ) {
        let ring = y_ring();
        let power = Space::power(ring.model().clone(), m);
        let e = expr_of(m, c1.clone(), gens1.clone());
        let f = expr_of(m, c2.clone(), gens2.clone());
        let mut word = gens1;
        word.extend(gens2);
        let ef = expr_of(m, &c1 * &c2, word);
        let ve = ring.evaluate_expr(&e, &power).unwrap();
        let vf = ring.evaluate_expr(&f, &power).unwrap();
        let vef = ring.evaluate_expr(&ef, &power).unwrap();
        prop_assert_eq!(ve.cup(&vf).unwrap(), vef.clone());
        // a normal form evaluates to the same class as the raw expression
        let nf = ring.normalize(&ef).unwrap();
        prop_assert_eq!(ring.evaluate_normal_form(&nf, &power).unwrap(), vef);
    }

    #[test]
    fn normalization_commutes_with_relabeling(
        (m, gens, perm) in arb_word().prop_flat_map(|(m, gens)| {
            (Just(m), Just(gens), Just((1..=m).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let ring = y_ring();
        let relabeled: Vec<_> = gens.iter().map(|g| relabel_gen(g, &perm)).collect();
        let direct = ring.normalize(&expr_of(m, rat_int(1), relabeled)).unwrap();
        let transported: Vec<_> = ring
            .normalize(&expr_of(m, rat_int(1), gens))
            .unwrap()
            .iter()
            .map(|(c, mono)| (c.clone(), relabel_monomial(mono, &perm)))
            .collect();
        prop_assert_eq!(normal_form_key(&direct), normal_form_key(&transported));
    }

    #[test]
    fn relation_scalars_survive_basis_permutation(
        perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()
    ) {
        let w = standard_omega(4);
        let permuted: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..4).map(|j| w[perm[i]][perm[j]]).collect())
            .collect();
        let model = Arc::new(
            VarietyModel::tate_odd_with_pairing(3, rat_int(18), permuted).unwrap(),
        );
        let ring = TautRing::bootstrap(&model).unwrap();
        prop_assert_eq!(ring.table().c_sq.abs(), rat_int(4));
        prop_assert_eq!(ring.table().c_tri.abs(), rat_int(1));
        prop_assert!(ring.injectivity(2).unwrap().pass);
    }

    #[test]
    fn parser_round_trips_printed_expressions(ast in arb_ast()) {
        let text = dsl::print(&ast);
        let reparsed = dsl::parse(&text).unwrap();
        prop_assert_eq!(reparsed, ast);
    }
}

#[test]
fn poincare_pairing_is_nondegenerate() {
    for model in [varieties::y18(), varieties::z4(), varieties::curve2(), varieties::ab2()] {
        let space = Space::single(model.clone());
        let n = space.dim();
        let mut pairing = SparseMatrix::new(n, n);
        for i in 0..n {
            let x = GradedClass::basis(space.clone(), i);
            for j in 0..n {
                let v = x.cup(&GradedClass::basis(space.clone(), j)).unwrap().integrate();
                if !v.is_zero() {
                    pairing.set(i, j, v).unwrap();
                }
            }
        }
        assert_eq!(pairing.rank(), n, "degenerate pairing on {model}");
    }
}

#[test]
fn unit_class_is_neutral_for_cup() {
    let space = Space::power(varieties::y18(), 2);
    let one = GradedClass::unit(space.clone());
    for idx in 0..space.dim() {
        let x = GradedClass::basis(space.clone(), idx);
        assert_eq!(one.cup(&x).unwrap(), x);
        assert_eq!(x.cup(&one).unwrap(), x);
    }
}
