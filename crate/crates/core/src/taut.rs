//! The presented tautological ring R*(Xᵐ): formal expressions in the
//! generators h(i), o(i), tau(i,j), normal-form rewriting under the
//! relations
//!
//! ```text
//!   o·o = 0,  h·o = 0,  h³ = d·o          (per index)
//!   τ·o = 0,  τ·h = 0   (on a shared index)
//!   τ(i,j)² = c_sq · o(i)·o(j)
//!   τ(i,j)·τ(i,k) = c_tri · τ(j,k)·o(i)
//! ```
//!
//! with the scalars d, c_sq, c_tri bootstrapped from the cohomology model
//! rather than copied from anywhere, monomial basis enumeration, evaluation
//! into H*(Xᵐ), the injectivity rank check, and the matching-sum
//! symmetrization identity on the odd middle part.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::corresp::tau_class;
use crate::linalg::SparseMatrix;
use crate::model::{
    h_power, point_class, GradedClass, ModelError, ModelSpec, Space, VarietyModel,
};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Gen {
    H(usize),
    O(usize),
    Tau(usize, usize),
}

impl Gen {
    /// tau indices stored with i < j; invalid indices rejected.
    pub fn tau(i: usize, j: usize) -> Result<Gen, TautError> {
        if i == j {
            return Err(TautError::BadIndex(format!("tau({i},{j}): indices must differ")));
        }
        Ok(Gen::Tau(i.min(j), i.max(j)))
    }

    fn max_index(&self) -> usize {
        match *self {
            Gen::H(i) | Gen::O(i) => i,
            Gen::Tau(_, j) => j,
        }
    }

    fn min_index(&self) -> usize {
        match *self {
            Gen::H(i) | Gen::O(i) => i,
            Gen::Tau(i, _) => i,
        }
    }
}

/// Formal linear combination of products of generators on the m-th power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TautExpr {
    pub m: usize,
    pub terms: Vec<(Rat, Vec<Gen>)>,
}

impl TautExpr {
    pub fn new(m: usize, terms: Vec<(Rat, Vec<Gen>)>) -> Result<Self, TautError> {
        for (_, gens) in &terms {
            for g in gens {
                if g.min_index() < 1 || g.max_index() > m {
                    return Err(TautError::BadIndex(format!(
                        "generator index out of range 1..={m}"
                    )));
                }
            }
        }
        Ok(TautExpr { m, terms })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TautError {
    #[error("invalid index: {0}")]
    BadIndex(String),
    #[error("{0}")]
    Model(#[from] ModelError),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
}

/// Local state of an unmatched index in a normal monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Local {
    H1,
    H2,
    O,
}

impl Local {
    pub fn codim(self) -> usize {
        match self {
            Local::H1 => 1,
            Local::H2 => 2,
            Local::O => 3,
        }
    }
}

/// Canonical monomial: a partial matching (τ pairs, disjoint, each pair
/// i < j, pairs sorted) plus local states on unmatched indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalMonomial {
    pub m: usize,
    pub matching: Vec<(usize, usize)>,
    pub local: BTreeMap<usize, Local>,
}

impl NormalMonomial {
    pub fn codim(&self) -> usize {
        3 * self.matching.len() + self.local.values().map(|l| l.codim()).sum::<usize>()
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .matching
            .iter()
            .map(|&(i, j)| format!("tau({i},{j})"))
            .collect();
        for (&i, l) in &self.local {
            parts.push(match l {
                Local::H1 => format!("h({i})"),
                Local::H2 => format!("h({i})^2"),
                Local::O => format!("o({i})"),
            });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Relation scalars, bootstrapped from a cohomology model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTable {
    /// ∫ hⁿ of the model; h³ = d·o
    pub d: Rat,
    /// τ(i,j)² = c_sq · o(i)·o(j)
    pub c_sq: Rat,
    /// τ(i,j)·τ(i,k) = c_tri · τ(j,k)·o(i)
    pub c_tri: Rat,
    /// dimension of the odd middle part
    pub b_odd: usize,
}

/// Returns `Some(c)` with `x = c·y` when x is an exact scalar multiple of a
/// nonzero y, `None` otherwise.
fn proportionality(x: &GradedClass, y: &GradedClass) -> Option<Rat> {
    if y.is_zero() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let (&i0, v0) = y.coeffs.iter().next()?;
    let c = x.coeffs.get(&i0)? / v0;
    if *x == y.scale(&c) {
        Some(c)
    } else {
        None
    }
}

/// Evaluation context: a tate-odd model, its τ class, and the bootstrapped
/// relation scalars.
#[derive(Debug, Clone)]
pub struct TautRing {
    model: Arc<VarietyModel>,
    tau: GradedClass,
    table: RelationTable,
}

impl TautRing {
    /// Computes τ², τ(1,2)·τ(1,3) and h-tower products directly in the
    /// cohomology of X² and X³ and solves for the relation scalars. A model
    /// whose products are not of the presented shape is rejected.
    pub fn bootstrap(model: &Arc<VarietyModel>) -> Result<Self, TautError> {
        let ModelSpec::TateOdd { n, d, b } = model.spec().clone() else {
            return Err(TautError::Model(ModelError::InvalidSpec(
                "tautological ring needs a tate-odd model".into(),
            )));
        };
        if b == 0 {
            return Err(TautError::Model(ModelError::InvalidSpec(
                "tautological ring needs a nonzero odd middle part".into(),
            )));
        }
        let tau = tau_class(model)?;
        // τ² against o⊗o on X²
        let square = tau.space.clone();
        let tau_sq = tau.cup(&tau)?;
        let oo = point_class(model)
            .pullback(&square, &[0])?
            .cup(&point_class(model).pullback(&square, &[1])?)?;
        let c_sq = proportionality(&tau_sq, &oo).ok_or_else(|| {
            TautError::Model(ModelError::Inconsistent(
                "τ² is not proportional to o⊗o".into(),
            ))
        })?;
        // τ(1,2)·τ(1,3) against τ(2,3)·o(1) on X³
        let cube = Space::power(model.clone(), 3);
        let t12 = tau.pullback(&cube, &[0, 1])?;
        let t13 = tau.pullback(&cube, &[0, 2])?;
        let t23 = tau.pullback(&cube, &[1, 2])?;
        let o1 = point_class(model).pullback(&cube, &[0])?;
        let lhs = t12.cup(&t13)?;
        let rhs = t23.cup(&o1)?;
        let c_tri = proportionality(&lhs, &rhs).ok_or_else(|| {
            TautError::Model(ModelError::Inconsistent(
                "τ(1,2)·τ(1,3) is not proportional to τ(2,3)·o(1)".into(),
            ))
        })?;
        // sanity: h³ = d·o and the degeneracies h·o = o·o = 0 hold by the
        // tate-odd product structure; n ≥ 3 keeps h and h² independent
        let _ = n;
        Ok(TautRing {
            model: model.clone(),
            tau,
            table: RelationTable { d, c_sq, c_tri, b_odd: b },
        })
    }

    pub fn model(&self) -> &Arc<VarietyModel> {
        &self.model
    }

    pub fn table(&self) -> &RelationTable {
        &self.table
    }

    pub fn tau(&self) -> &GradedClass {
        &self.tau
    }

    /// Rewrites an expression to its canonical normal form. Each rewrite
    /// strictly reduces the τ count or a local measure, so this terminates.
    pub fn normalize(&self, expr: &TautExpr) -> Result<Vec<(Rat, NormalMonomial)>, TautError> {
        let mut acc: BTreeMap<NormalMonomial, Rat> = BTreeMap::new();
        for (coeff, gens) in &expr.terms {
            for g in gens {
                if g.min_index() < 1 || g.max_index() > expr.m {
                    return Err(TautError::BadIndex(format!(
                        "generator index out of range 1..={}",
                        expr.m
                    )));
                }
            }
            let mut stack = vec![(coeff.clone(), gens.clone())];
            while let Some((c, gens)) = stack.pop() {
                if c.is_zero() {
                    continue;
                }
                match self.reduce_monomial(expr.m, c, gens)? {
                    Reduction::Done(c, mono) => {
                        let e = acc.entry(mono).or_insert_with(Rat::zero);
                        *e = &*e + c;
                    }
                    Reduction::Rewritten(items) => stack.extend(items),
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect())
    }

    fn reduce_monomial(
        &self,
        m: usize,
        coeff: Rat,
        gens: Vec<Gen>,
    ) -> Result<Reduction, TautError> {
        // collect per-index h exponents / o counts and the τ multiset
        let mut h_exp = vec![0usize; m + 1];
        let mut o_cnt = vec![0usize; m + 1];
        let mut taus: Vec<(usize, usize)> = Vec::new();
        for g in gens {
            match g {
                Gen::H(i) => h_exp[i] += 1,
                Gen::O(i) => o_cnt[i] += 1,
                Gen::Tau(i, j) => taus.push((i.min(j), i.max(j))),
            }
        }
        taus.sort_unstable();
        // first pair of τ factors sharing an index, in lex order
        for a in 0..taus.len() {
            for b in a + 1..taus.len() {
                let (i1, j1) = taus[a];
                let (i2, j2) = taus[b];
                let shared: Vec<usize> = [i1, j1]
                    .iter()
                    .filter(|x| **x == i2 || **x == j2)
                    .copied()
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                let mut rest: Vec<Gen> = Vec::new();
                for (k, &(i, j)) in taus.iter().enumerate() {
                    if k != a && k != b {
                        rest.push(Gen::Tau(i, j));
                    }
                }
                for idx in 1..=m {
                    for _ in 0..h_exp[idx] {
                        rest.push(Gen::H(idx));
                    }
                    for _ in 0..o_cnt[idx] {
                        rest.push(Gen::O(idx));
                    }
                }
                if shared.len() == 2 {
                    // τ(i,j)² → c_sq·o(i)·o(j)
                    let mut gens = rest;
                    gens.push(Gen::O(i1));
                    gens.push(Gen::O(j1));
                    return Ok(Reduction::Rewritten(vec![(coeff * &self.table.c_sq, gens)]));
                } else {
                    // τ(s,x)·τ(s,y) → c_tri·τ(x,y)·o(s)
                    let s = shared[0];
                    let x = if i1 == s { j1 } else { i1 };
                    let y = if i2 == s { j2 } else { i2 };
                    let mut gens = rest;
                    gens.push(Gen::tau(x, y)?);
                    gens.push(Gen::O(s));
                    return Ok(Reduction::Rewritten(vec![(coeff * &self.table.c_tri, gens)]));
                }
            }
        }
        // τ factors now pairwise disjoint: a partial matching
        let mut matched = vec![false; m + 1];
        for &(i, j) in &taus {
            matched[i] = true;
            matched[j] = true;
        }
        let mut coeff = coeff;
        let mut local = BTreeMap::new();
        for idx in 1..=m {
            let (mut h, mut o) = (h_exp[idx], o_cnt[idx]);
            if matched[idx] {
                // τ·h = 0 and τ·o = 0 on a shared index
                if h > 0 || o > 0 {
                    return Ok(Reduction::Done(
                        Rat::zero(),
                        NormalMonomial { m, matching: taus, local },
                    ));
                }
                continue;
            }
            while h >= 3 {
                h -= 3;
                o += 1;
                coeff = coeff * &self.table.d;
            }
            let state = match (h, o) {
                (0, 0) => None,
                (1, 0) => Some(Local::H1),
                (2, 0) => Some(Local::H2),
                (0, 1) => Some(Local::O),
                // h·o = 0, o² = 0
                _ => {
                    return Ok(Reduction::Done(
                        Rat::zero(),
                        NormalMonomial { m, matching: taus, local },
                    ))
                }
            };
            if let Some(s) = state {
                local.insert(idx, s);
            }
        }
        Ok(Reduction::Done(coeff, NormalMonomial { m, matching: taus, local }))
    }

    /// All normal monomials on m factors of the given codimension:
    /// a partial matching, then local states on the rest.
    pub fn basis(&self, m: usize, codim: usize) -> Vec<NormalMonomial> {
        let mut out = Vec::new();
        let indices: Vec<usize> = (1..=m).collect();
        for (matching, free) in partial_matchings(&indices) {
            let used = 3 * matching.len();
            if used > codim {
                continue;
            }
            let mut states: Vec<(usize, Local)> = Vec::new();
            assign_locals(&free, codim - used, &mut states, &mut |states| {
                out.push(NormalMonomial {
                    m,
                    matching: matching.clone(),
                    local: states.iter().copied().collect(),
                });
            });
        }
        out.sort();
        out.dedup();
        out
    }

    /// Cycle-class realization: the monomial as a class on the m-fold power.
    pub fn evaluate(&self, mono: &NormalMonomial, power: &Arc<Space>) -> Result<GradedClass, TautError> {
        if power.num_factors() != mono.m
            || power.factors().iter().any(|f| f != &self.model)
        {
            return Err(TautError::Model(ModelError::SpaceMismatch));
        }
        let mut acc = GradedClass::unit(power.clone());
        for &(i, j) in &mono.matching {
            acc = acc.cup(&self.tau.pullback(power, &[i - 1, j - 1])?)?;
        }
        for (&i, l) in &mono.local {
            let cls = match l {
                Local::H1 => h_power(&self.model, 1),
                Local::H2 => h_power(&self.model, 2),
                Local::O => point_class(&self.model),
            };
            acc = acc.cup(&cls.pullback(power, &[i - 1])?)?;
        }
        Ok(acc)
    }

    /// Evaluates a full expression (for the ring-homomorphism property test):
    /// generators are realized one factor at a time and cup-multiplied.
    pub fn evaluate_expr(&self, expr: &TautExpr, power: &Arc<Space>) -> Result<GradedClass, TautError> {
        let mut out = GradedClass::zero(power.clone());
        for (coeff, gens) in &expr.terms {
            let mut acc = GradedClass::unit(power.clone());
            for g in gens {
                let cls = match *g {
                    Gen::H(i) => h_power(&self.model, 1).pullback(power, &[i - 1])?,
                    Gen::O(i) => point_class(&self.model).pullback(power, &[i - 1])?,
                    Gen::Tau(i, j) => self.tau.pullback(power, &[i - 1, j - 1])?,
                };
                acc = acc.cup(&cls)?;
            }
            out = out.add(&acc.scale(coeff))?;
        }
        Ok(out)
    }

    /// Sum of a normalized expression, evaluated.
    pub fn evaluate_normal_form(
        &self,
        nf: &[(Rat, NormalMonomial)],
        power: &Arc<Space>,
    ) -> Result<GradedClass, TautError> {
        let mut out = GradedClass::zero(power.clone());
        for (c, mono) in nf {
            out = out.add(&self.evaluate(mono, power)?.scale(c))?;
        }
        Ok(out)
    }

    /// For each codimension 0..=3m: compares the normal-monomial count with
    /// the rank of the evaluation matrix in H*(Xᵐ). Equality at every
    /// codimension certifies both completeness of the presentation and
    /// injectivity of the realization at this m.
    pub fn injectivity(&self, m: usize) -> Result<InjectivityOutcome, TautError> {
        let power = Space::power(self.model.clone(), m);
        let mut rows = Vec::new();
        let mut all_match = true;
        for codim in 0..=3 * m {
            let basis = self.basis(m, codim);
            // ambient basis indices in degree 2·codim
            let ambient: Vec<usize> =
                (0..power.dim()).filter(|&i| power.degree(i) == 2 * codim).collect();
            let col_of: HashMap<usize, usize> =
                ambient.iter().enumerate().map(|(c, &i)| (i, c)).collect();
            let mut mat = SparseMatrix::new(basis.len(), ambient.len());
            for (r, mono) in basis.iter().enumerate() {
                let cls = self.evaluate(mono, &power)?;
                for (&i, v) in &cls.coeffs {
                    mat.set(r, col_of[&i], v.clone()).unwrap();
                }
            }
            let rank = mat.rank();
            let ok = rank == basis.len();
            all_match &= ok;
            rows.push(InjectivityRow { codim, count: basis.len(), rank, ambient_dim: ambient.len() });
        }
        Ok(InjectivityOutcome { m, rows, pass: all_match })
    }
}

enum Reduction {
    Done(Rat, NormalMonomial),
    Rewritten(Vec<(Rat, Vec<Gen>)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityRow {
    pub codim: usize,
    pub count: usize,
    pub rank: usize,
    pub ambient_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityOutcome {
    pub m: usize,
    pub rows: Vec<InjectivityRow>,
    pub pass: bool,
}

/// All partial matchings on `indices` (including the empty one), each with
/// its set of unmatched indices.
fn partial_matchings(indices: &[usize]) -> Vec<(Vec<(usize, usize)>, Vec<usize>)> {
    if indices.is_empty() {
        return vec![(Vec::new(), Vec::new())];
    }
    let first = indices[0];
    let rest = &indices[1..];
    let mut out = Vec::new();
    for (m, mut free) in partial_matchings(rest) {
        free.insert(0, first);
        out.push((m, free));
    }
    for (k, &partner) in rest.iter().enumerate() {
        let remaining: Vec<usize> =
            rest.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
        for (mut m, free) in partial_matchings(&remaining) {
            m.insert(0, (first, partner));
            out.push((m, free));
        }
    }
    out
}

fn assign_locals(
    free: &[usize],
    codim: usize,
    acc: &mut Vec<(usize, Local)>,
    f: &mut impl FnMut(&[(usize, Local)]),
) {
    if free.is_empty() {
        if codim == 0 {
            f(acc);
        }
        return;
    }
    let idx = free[0];
    let rest = &free[1..];
    // unit
    assign_locals(rest, codim, acc, f);
    for l in [Local::H1, Local::H2, Local::O] {
        if l.codim() <= codim {
            acc.push((idx, l));
            assign_locals(rest, codim - l.codim(), acc, f);
            acc.pop();
        }
    }
}

/// Result of the matching-sum symmetrization on the odd middle part.
#[derive(Debug, Clone)]
pub struct MatchingSumOutcome {
    pub k: usize,
    pub b: usize,
    pub matchings: usize,
    /// 2ᵏ·k!, the multiplicity collapsing the 𝔖₂ₖ sum to matchings
    pub multiplicity: u64,
    pub nonzero_terms: usize,
    pub is_zero: bool,
}

/// Full symmetrization of the product of k τ classes over 2k slots,
/// restricted to the odd-part tensor component: the sum over all perfect
/// matchings of {1..2k} with Koszul signs, times 2ᵏ·k!. Vanishing realizes
/// Symᵏ of the odd middle part being zero.
pub fn matching_sum(k: usize, b: usize) -> Result<MatchingSumOutcome, TautError> {
    if k < 1 || b < 2 || b % 2 != 0 {
        return Err(TautError::BadIndex(format!(
            "matching-sum needs k ≥ 1 and even b ≥ 2, got k={k}, b={b}"
        )));
    }
    let slots = 2 * k;
    let size = (b as u64).checked_pow(slots as u32).filter(|&s| s <= 100_000_000);
    let Some(size) = size else {
        return Err(TautError::ResourceGuard(format!(
            "b^(2k) = {b}^{slots} exceeds the coefficient cap of 1e8"
        )));
    };
    // odd-part component of τ: Σ_t v_{2t}⊗v_{2t+1} − v_{2t+1}⊗v_{2t}
    // (indices 0-based), i.e. pairs (α,β) with coefficient ±1
    let mut tau_pairs: Vec<(usize, usize, i64)> = Vec::new();
    for t in 0..b / 2 {
        tau_pairs.push((2 * t, 2 * t + 1, 1));
        tau_pairs.push((2 * t + 1, 2 * t, -1));
    }
    // dense accumulator over the b^(2k) odd-part tensor coordinates
    let mut acc: Vec<i64> = vec![0; size as usize];
    // stride of slot s in the mixed-radix index (rightmost fastest)
    let strides: Vec<u64> = (0..slots)
        .map(|s| (b as u64).pow((slots - 1 - s) as u32))
        .collect();
    let mut matchings_count = 0usize;
    let mut matching = Vec::with_capacity(k);
    let mut slot_val = vec![0usize; slots];
    let mut assignment = vec![0usize; k];
    enumerate_perfect_matchings(&(0..slots).collect::<Vec<_>>(), &mut matching, &mut |m| {
        matchings_count += 1;
        // Koszul sign: parity of the permutation sorting (p₁,q₁,…,p_k,q_k)
        // into slot order; every inserted element is odd
        let word: Vec<usize> = m.iter().flat_map(|&(p, q)| [p, q]).collect();
        let mut inversions = 0usize;
        for a in 0..word.len() {
            for c in a + 1..word.len() {
                if word[a] > word[c] {
                    inversions += 1;
                }
            }
        }
        let msign: i64 = if inversions % 2 == 0 { 1 } else { -1 };
        // expand the product of τ factors over this matching
        assignment.iter_mut().for_each(|a| *a = 0);
        loop {
            let mut key: u64 = 0;
            let mut coeff = msign;
            for (t, &(p, q)) in m.iter().enumerate() {
                let (alpha, beta, c) = tau_pairs[assignment[t]];
                slot_val[p] = alpha;
                slot_val[q] = beta;
                coeff *= c;
            }
            for (s, &v) in slot_val.iter().enumerate() {
                key += strides[s] * v as u64;
            }
            acc[key as usize] += coeff;
            // next assignment
            let mut t = 0;
            loop {
                if t == k {
                    break;
                }
                assignment[t] += 1;
                if assignment[t] < tau_pairs.len() {
                    break;
                }
                assignment[t] = 0;
                t += 1;
            }
            if t == k {
                break;
            }
        }
    });
    let nonzero_terms = acc.iter().filter(|&&v| v != 0).count();
    let mut multiplicity: u64 = 1;
    for t in 1..=k as u64 {
        multiplicity *= 2 * t;
    }
    Ok(MatchingSumOutcome {
        k,
        b,
        matchings: matchings_count,
        multiplicity,
        nonzero_terms,
        is_zero: nonzero_terms == 0,
    })
}

fn enumerate_perfect_matchings(
    free: &[usize],
    acc: &mut Vec<(usize, usize)>,
    f: &mut impl FnMut(&[(usize, usize)]),
) {
    if free.is_empty() {
        f(acc);
        return;
    }
    let first = free[0];
    for k in 1..free.len() {
        let partner = free[k];
        let rest: Vec<usize> =
            free.iter().copied().filter(|&x| x != first && x != partner).collect();
        acc.push((first, partner));
        enumerate_perfect_matchings(&rest, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::varieties::*;
    use crate::rat::rat_int;
    use num_traits::{One, Signed};

    fn y_ring() -> TautRing {
        TautRing::bootstrap(&y18()).unwrap()
    }

    #[test]
    fn bootstrap_scalars_y() {
        let r = y_ring();
        assert_eq!(r.table().d, rat_int(18));
        assert_eq!(r.table().c_sq.abs(), rat_int(4));
        assert_eq!(r.table().c_sq, rat_int(-4));
        assert_eq!(r.table().c_tri.abs(), rat_int(1));
    }

    #[test]
    fn bootstrap_scalars_z() {
        let r = TautRing::bootstrap(&z4()).unwrap();
        assert_eq!(r.table().d, rat_int(4));
        assert_eq!(r.table().c_sq.abs(), rat_int(4));
    }

    #[test]
    fn normalize_h_cubed() {
        let r = y_ring();
        let e = TautExpr::new(1, vec![(Rat::one(), vec![Gen::H(1), Gen::H(1), Gen::H(1)])]).unwrap();
        let nf = r.normalize(&e).unwrap();
        assert_eq!(nf.len(), 1);
        assert_eq!(nf[0].0, rat_int(18));
        assert_eq!(nf[0].1.render(), "o(1)");
    }

    #[test]
    fn normalize_tau_kills_shared_locals() {
        let r = y_ring();
        let e = TautExpr::new(2, vec![(Rat::one(), vec![Gen::tau(1, 2).unwrap(), Gen::H(1)])]).unwrap();
        assert!(r.normalize(&e).unwrap().is_empty());
        let e = TautExpr::new(2, vec![(Rat::one(), vec![Gen::tau(1, 2).unwrap(), Gen::O(2)])]).unwrap();
        assert!(r.normalize(&e).unwrap().is_empty());
    }

    #[test]
    fn normalize_tau_triple() {
        let r = y_ring();
        let e = TautExpr::new(
            3,
            vec![(Rat::one(), vec![Gen::tau(1, 2).unwrap(), Gen::tau(1, 3).unwrap()])],
        )
        .unwrap();
        let nf = r.normalize(&e).unwrap();
        assert_eq!(nf.len(), 1);
        assert_eq!(nf[0].0, r.table().c_tri);
        assert_eq!(nf[0].1.render(), "tau(2,3)*o(1)");
    }

    #[test]
    fn normalize_relation_expr_vanishes() {
        // h(1)^3 − 18·o(1) → 0
        let r = y_ring();
        let e = TautExpr::new(
            1,
            vec![
                (Rat::one(), vec![Gen::H(1); 3]),
                (rat_int(-18), vec![Gen::O(1)]),
            ],
        )
        .unwrap();
        assert!(r.normalize(&e).unwrap().is_empty());
    }

    #[test]
    fn basis_counts() {
        let r = y_ring();
        let b = r.basis(1, 3);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].render(), "o(1)");
        let b = r.basis(2, 3);
        let rendered: Vec<String> = b.iter().map(|m| m.render()).collect();
        assert_eq!(b.len(), 5, "{rendered:?}");
        let b = r.basis(2, 6);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].render(), "o(1)*o(2)");
    }

    #[test]
    fn evaluate_bootstrap_consistency() {
        let r = y_ring();
        let sq = Space::power(r.model().clone(), 2);
        let t = r
            .evaluate(
                &NormalMonomial { m: 2, matching: vec![(1, 2)], local: BTreeMap::new() },
                &sq,
            )
            .unwrap();
        let tt = t.cup(&t).unwrap();
        let oo = r
            .evaluate(
                &NormalMonomial {
                    m: 2,
                    matching: vec![],
                    local: [(1, Local::O), (2, Local::O)].into_iter().collect(),
                },
                &sq,
            )
            .unwrap();
        assert_eq!(tt, oo.scale(&r.table().c_sq));
    }

    #[test]
    fn injectivity_m1_m2() {
        let r = y_ring();
        let out = r.injectivity(1).unwrap();
        assert!(out.pass);
        assert_eq!(out.rows.iter().map(|r| r.count).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        let out = r.injectivity(2).unwrap();
        assert!(out.pass);
        let row3 = &out.rows[3];
        assert_eq!((row3.count, row3.rank, row3.ambient_dim), (5, 5, 20));
    }

    #[test]
    fn matching_sum_single_pair() {
        let out = matching_sum(1, 4).unwrap();
        assert_eq!(out.matchings, 1);
        assert_eq!(out.multiplicity, 2);
        assert!(!out.is_zero);
    }

    #[test]
    fn matching_sum_vanishes_iff_slots_exceed_odd_rank() {
        // the symmetrization lives on 2k odd slots, so it dies exactly when
        // 2k exceeds b (checked against the full-model oracle below)
        for b in [2usize, 4, 6] {
            for k in 1..=4usize {
                let out = matching_sum(k, b).unwrap();
                assert_eq!(out.is_zero, 2 * k > b, "k={k} b={b}");
            }
        }
        let out = matching_sum(4, 4).unwrap();
        assert_eq!(out.matchings, 105);
    }

    #[test]
    fn matching_sum_agrees_with_model_computation() {
        // independent route: cup products of pulled-back τ classes in the
        // cohomology of Y^(2k)
        let y = y18();
        let tau = crate::corresp::tau_class(&y).unwrap();
        for k in 1..=2usize {
            let space = Space::power(y.clone(), 2 * k);
            let mut total = GradedClass::zero(space.clone());
            let mut matchings = Vec::new();
            enumerate_perfect_matchings(
                &(0..2 * k).collect::<Vec<_>>(),
                &mut Vec::new(),
                &mut |m| matchings.push(m.to_vec()),
            );
            for m in &matchings {
                let mut prod = GradedClass::unit(space.clone());
                for &(p, q) in m {
                    prod = prod.cup(&tau.pullback(&space, &[p, q]).unwrap()).unwrap();
                }
                total = total.add(&prod).unwrap();
            }
            let fast = matching_sum(k, 4).unwrap();
            assert_eq!(fast.is_zero, total.is_zero(), "k={k}");
            assert_eq!(fast.matchings, matchings.len());
        }
    }

    #[test]
    fn matching_sum_resource_guard() {
        assert!(matches!(matching_sum(8, 8), Err(TautError::ResourceGuard(_))));
    }
}
