//! Finite models of cohomology rings with exact rational coefficients.
//!
//! Two kinds of model:
//!
//! * `TateOdd { n, d, b }`: one-dimensional even pieces spanned by the powers
//!   of a degree-2 class `h` with `∫ hⁿ = d`, plus a `b`-dimensional middle
//!   piece in (odd) degree `n` spanned by generators `v₁,…,v_b` carrying a
//!   symplectic pairing `vⱼ ∪ vₖ = ω(j,k)·o`, where `o := (1/d)·hⁿ`.
//! * `Exterior { g }`: the exterior algebra on `2g` degree-1 generators
//!   (an abelian variety of irregularity `g`).
//!
//! A `Space` is an ordered tensor product of models (length 1 for a single
//! variety); classes on a space are sparse rational coefficient vectors over
//! the tuple basis. All products and pushforwards carry Koszul signs for the
//! fixed convention: transposing homogeneous factors x, y costs
//! (−1)^(|x||y|), and pushforwards contract rightmost-first.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::rat::{rat_int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    TateOdd { n: usize, d: Rat, b: usize },
    Exterior { g: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    InvalidSpec(String),
    #[error("classes live on different spaces")]
    SpaceMismatch,
    #[error("factor index out of range: {0}")]
    BadFactor(usize),
    #[error("projector validation failed: {0}")]
    ProjectorInvariant(String),
    #[error("model inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub degree: usize,
    /// exterior models only: bitmask of the generators in this monomial
    mask: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyModel {
    spec: ModelSpec,
    /// tate-odd only: antisymmetric pairing on the odd generators
    omega: Vec<Vec<i64>>,
    basis: Vec<BasisElem>,
    mask_index: BTreeMap<u32, usize>,
}

/// Standard symplectic form on `b` generators: consecutive pairs
/// (v₁,v₂), (v₃,v₄), … pair to +1.
pub fn standard_omega(b: usize) -> Vec<Vec<i64>> {
    let mut w = vec![vec![0i64; b]; b];
    for t in 0..b / 2 {
        w[2 * t][2 * t + 1] = 1;
        w[2 * t + 1][2 * t] = -1;
    }
    w
}

impl VarietyModel {
    pub fn tate_odd(n: usize, d: Rat, b: usize) -> Result<Self, ModelError> {
        Self::tate_odd_with_pairing(n, d, standard_omega(b))
    }

    /// Same model with an arbitrary (unimodular, antisymmetric) pairing on
    /// the odd part; exists so tests can permute the symplectic basis.
    pub fn tate_odd_with_pairing(
        n: usize,
        d: Rat,
        omega: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        let b = omega.len();
        if n == 0 {
            return Err(ModelError::InvalidSpec("dimension n must be positive".into()));
        }
        if !d.is_positive() {
            return Err(ModelError::InvalidSpec("polarization degree must be positive".into()));
        }
        if b % 2 != 0 {
            return Err(ModelError::InvalidSpec(format!("odd rank b = {b} must be even")));
        }
        if b > 0 && n % 2 == 0 {
            return Err(ModelError::InvalidSpec(format!(
                "odd middle part requires odd dimension, got n = {n}"
            )));
        }
        for (i, row) in omega.iter().enumerate() {
            if row.len() != b {
                return Err(ModelError::InvalidSpec("pairing matrix not square".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != -omega[j][i] {
                    return Err(ModelError::InvalidSpec("pairing not antisymmetric".into()));
                }
            }
        }
        let mut basis = Vec::with_capacity(n + 1 + b);
        for j in 0..=n {
            let label = match j {
                0 => "1".to_string(),
                1 => "h".to_string(),
                _ => format!("h^{j}"),
            };
            basis.push(BasisElem { label, degree: 2 * j, mask: 0 });
        }
        for k in 0..b {
            basis.push(BasisElem { label: format!("v{}", k + 1), degree: n, mask: 0 });
        }
        Ok(VarietyModel {
            spec: ModelSpec::TateOdd { n, d, b },
            omega,
            basis,
            mask_index: BTreeMap::new(),
        })
    }

    pub fn exterior(g: usize) -> Result<Self, ModelError> {
        if g == 0 {
            return Err(ModelError::InvalidSpec("irregularity g must be positive".into()));
        }
        let gens = 2 * g;
        if gens > 16 {
            return Err(ModelError::InvalidSpec("exterior model limited to g <= 8".into()));
        }
        let mut masks: Vec<u32> = (0..(1u32 << gens)).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut basis = Vec::with_capacity(masks.len());
        let mut mask_index = BTreeMap::new();
        for (i, &m) in masks.iter().enumerate() {
            let label = if m == 0 {
                "1".to_string()
            } else {
                (0..gens).filter(|k| m >> k & 1 == 1).map(|k| format!("e{}", k + 1)).collect()
            };
            basis.push(BasisElem { label, degree: m.count_ones() as usize, mask: m });
            mask_index.insert(m, i);
        }
        Ok(VarietyModel { spec: ModelSpec::Exterior { g }, omega: Vec::new(), basis, mask_index })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_elem(&self, i: usize) -> &BasisElem {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    /// Top cohomological degree (2n or 2g).
    pub fn top_degree(&self) -> usize {
        match &self.spec {
            ModelSpec::TateOdd { n, .. } => 2 * n,
            ModelSpec::Exterior { g } => 2 * g,
        }
    }

    /// Basis index of the top class.
    pub fn top_index(&self) -> usize {
        match &self.spec {
            ModelSpec::TateOdd { n, .. } => *n,
            ModelSpec::Exterior { .. } => self.basis.len() - 1,
        }
    }

    /// Integration normalization: `∫ (top basis element) = top_norm`.
    /// Tate-odd: `∫ hⁿ = d` (so `∫ o = 1`); exterior: `∫ e₁⋯e_{2g} = 1`.
    pub fn top_norm(&self) -> Rat {
        match &self.spec {
            ModelSpec::TateOdd { d, .. } => d.clone(),
            ModelSpec::Exterior { .. } => Rat::one(),
        }
    }

    /// Cup product of two basis elements; at most one basis element results.
    pub fn cup_basis(&self, i: usize, j: usize) -> Option<(usize, Rat)> {
        match &self.spec {
            ModelSpec::TateOdd { n, d, b } => {
                let (n, b) = (*n, *b);
                let even = |k: usize| k <= n;
                if even(i) && even(j) {
                    if i + j <= n {
                        Some((i + j, Rat::one()))
                    } else {
                        None
                    }
                } else if even(i) || even(j) {
                    // hᵃ ∪ v = 0 for a ≥ 1; unit acts as identity
                    let (e, v) = if even(i) { (i, j) } else { (j, i) };
                    if e == 0 {
                        Some((v, Rat::one()))
                    } else {
                        None
                    }
                } else {
                    let (a, c) = (i - n - 1, j - n - 1);
                    debug_assert!(a < b && c < b);
                    let w = self.omega[a][c];
                    if w == 0 {
                        None
                    } else {
                        // vⱼ ∪ vₖ = ω(j,k)·o = (ω/d)·hⁿ
                        Some((n, rat_int(w) / d))
                    }
                }
            }
            ModelSpec::Exterior { .. } => {
                let (ma, mb) = (self.basis[i].mask, self.basis[j].mask);
                if ma & mb != 0 {
                    return None;
                }
                // shuffle sign: count pairs (a ∈ ma, b ∈ mb) with b < a
                let mut sign = 0u32;
                let mut rest = ma;
                while rest != 0 {
                    let a = rest.trailing_zeros();
                    sign += (mb & ((1u32 << a) - 1)).count_ones();
                    rest &= rest - 1;
                }
                let idx = self.mask_index[&(ma | mb)];
                Some((idx, if sign % 2 == 0 { Rat::one() } else { -Rat::one() }))
            }
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        let mut v = vec![0usize; self.top_degree() + 1];
        for e in &self.basis {
            v[e.degree] += 1;
        }
        v
    }
}

impl fmt::Display for VarietyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            ModelSpec::TateOdd { n, d, b } => {
                write!(f, "tate-odd(n={n}, d={}, b={b})", crate::rat::rat_str(d))
            }
            ModelSpec::Exterior { g } => write!(f, "exterior(g={g})"),
        }
    }
}

/// An ordered tensor product of variety models; length 1 for a single
/// variety. Basis elements are tuples of factor basis elements, encoded as
/// one mixed-radix index with the rightmost factor varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    factors: Vec<Arc<VarietyModel>>,
    strides: Vec<usize>,
    total: usize,
}

impl Space {
    pub fn product(factors: Vec<Arc<VarietyModel>>) -> Arc<Space> {
        assert!(!factors.is_empty());
        let dims: Vec<usize> = factors.iter().map(|m| m.dim()).collect();
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        let total = dims.iter().product();
        Arc::new(Space { factors, strides, total })
    }

    pub fn single(model: Arc<VarietyModel>) -> Arc<Space> {
        Space::product(vec![model])
    }

    pub fn power(model: Arc<VarietyModel>, m: usize) -> Arc<Space> {
        Space::product(vec![model; m])
    }

    pub fn factors(&self) -> &[Arc<VarietyModel>] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        debug_assert!(idx < self.total);
        self.strides
            .iter()
            .zip(&self.factors)
            .map(|(s, m)| (idx / s) % m.dim())
            .collect()
    }

    pub fn encode(&self, parts: &[usize]) -> usize {
        debug_assert_eq!(parts.len(), self.factors.len());
        parts.iter().zip(&self.strides).map(|(p, s)| p * s).sum()
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.factor_degrees(idx).iter().sum()
    }

    pub fn factor_degrees(&self, idx: usize) -> Vec<usize> {
        self.decode(idx)
            .iter()
            .zip(&self.factors)
            .map(|(&p, m)| m.degree(p))
            .collect()
    }

    pub fn top_degree(&self) -> usize {
        self.factors.iter().map(|m| m.top_degree()).sum()
    }

    /// Künneth convolution of the factor Betti vectors.
    pub fn betti(&self) -> Vec<usize> {
        let mut acc = vec![1usize];
        for m in &self.factors {
            let b = m.betti();
            let mut next = vec![0usize; acc.len() + b.len() - 1];
            for (i, &x) in acc.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    next[i + j] += x * y;
                }
            }
            acc = next;
        }
        acc
    }

    pub fn euler_char(&self) -> i64 {
        self.betti()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn label(&self, idx: usize) -> String {
        self.decode(idx)
            .iter()
            .zip(&self.factors)
            .map(|(&p, m)| m.basis_elem(p).label.clone())
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

pub fn same_space(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Sparse exact class on a space. Not required to be homogeneous.
#[derive(Debug, Clone)]
pub struct GradedClass {
    pub space: Arc<Space>,
    pub coeffs: BTreeMap<usize, Rat>,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.coeffs == other.coeffs
    }
}
impl Eq for GradedClass {}

impl GradedClass {
    pub fn zero(space: Arc<Space>) -> Self {
        GradedClass { space, coeffs: BTreeMap::new() }
    }

    pub fn basis(space: Arc<Space>, idx: usize) -> Self {
        let mut c = GradedClass::zero(space);
        c.coeffs.insert(idx, Rat::one());
        c
    }

    pub fn unit(space: Arc<Space>) -> Self {
        let idx = space.encode(&vec![0; space.num_factors()]);
        debug_assert_eq!(space.degree(idx), 0);
        GradedClass::basis(space, idx)
    }

    pub fn from_terms(space: Arc<Space>, terms: Vec<(usize, Rat)>) -> Self {
        let mut c = GradedClass::zero(space);
        for (i, v) in terms {
            c.add_term(i, v);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, idx: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Rat::zero);
        *entry = &*entry + v;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass, ModelError> {
        if !same_space(&self.space, &other.space) {
            return Err(ModelError::SpaceMismatch);
        }
        let mut out = self.clone();
        for (&i, v) in &other.coeffs {
            out.add_term(i, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedClass) -> Result<GradedClass, ModelError> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> GradedClass {
        if s.is_zero() {
            return GradedClass::zero(self.space.clone());
        }
        GradedClass {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().map(|(&i, v)| (i, v * s)).collect(),
        }
    }

    /// Cup product with Koszul signs: interleaving the factor tuples of x and
    /// y costs (−1)^(Σ_{i<j} |yᵢ||xⱼ|).
    pub fn cup(&self, other: &GradedClass) -> Result<GradedClass, ModelError> {
        if !same_space(&self.space, &other.space) {
            return Err(ModelError::SpaceMismatch);
        }
        let space = &self.space;
        let nf = space.num_factors();
        let mut out = GradedClass::zero(space.clone());
        for (&ix, cx) in &self.coeffs {
            let px = space.decode(ix);
            let dx: Vec<usize> = px
                .iter()
                .zip(space.factors())
                .map(|(&p, m)| m.degree(p))
                .collect();
            for (&iy, cy) in &other.coeffs {
                let py = space.decode(iy);
                // sign from moving each yᵢ left past xⱼ for j > i
                let mut sign_exp = 0usize;
                let mut suffix = 0usize; // Σ_{j>i} |xⱼ|
                for i in (0..nf).rev() {
                    let dy = space.factors()[i].degree(py[i]);
                    sign_exp += dy * suffix;
                    suffix += dx[i];
                }
                let mut coeff = cx * cy;
                if sign_exp % 2 == 1 {
                    coeff = -coeff;
                }
                let mut parts = Vec::with_capacity(nf);
                let mut dead = false;
                for i in 0..nf {
                    match space.factors()[i].cup_basis(px[i], py[i]) {
                        Some((idx, f)) => {
                            coeff = coeff * f;
                            parts.push(idx);
                        }
                        None => {
                            dead = true;
                            break;
                        }
                    }
                }
                if !dead {
                    out.add_term(space.encode(&parts), coeff);
                }
            }
        }
        Ok(out)
    }

    /// Integral over the whole space: the coefficient of the all-factors-top
    /// basis tuple, times the product of factor normalizations.
    pub fn integrate(&self) -> Rat {
        let top: Vec<usize> = self.space.factors().iter().map(|m| m.top_index()).collect();
        let idx = self.space.encode(&top);
        match self.coeffs.get(&idx) {
            None => Rat::zero(),
            Some(c) => {
                let norm = self
                    .space
                    .factors()
                    .iter()
                    .fold(Rat::one(), |acc, m| acc * m.top_norm());
                c * norm
            }
        }
    }

    /// Integrates out the factors not listed in `kept` (strictly increasing
    /// indices), contracting rightmost-first. A term survives only when every
    /// omitted factor sits at its top basis element.
    pub fn pushforward(&self, kept: &[usize]) -> Result<GradedClass, ModelError> {
        let nf = self.space.num_factors();
        if kept.windows(2).any(|w| w[0] >= w[1]) || kept.iter().any(|&k| k >= nf) {
            return Err(ModelError::BadFactor(*kept.iter().max().unwrap_or(&0)));
        }
        let keep: Vec<bool> = {
            let mut v = vec![false; nf];
            for &k in kept {
                v[k] = true;
            }
            v
        };
        let target = Space::product(kept.iter().map(|&k| self.space.factors()[k].clone()).collect());
        let mut out = GradedClass::zero(target.clone());
        for (&ix, cx) in &self.coeffs {
            let px = self.space.decode(ix);
            let mut coeff = cx.clone();
            let mut dead = false;
            let mut sign_exp = 0usize;
            for p in 0..nf {
                if keep[p] {
                    continue;
                }
                let m = &self.space.factors()[p];
                if px[p] != m.top_index() {
                    dead = true;
                    break;
                }
                // Koszul sign for moving the contracted element past the kept
                // elements to its right (always even here: top classes have
                // even degree, but keep the formula honest)
                let right: usize = (p + 1..nf)
                    .filter(|&q| keep[q])
                    .map(|q| self.space.factors()[q].degree(px[q]))
                    .sum();
                sign_exp += m.degree(px[p]) * right;
                coeff = coeff * m.top_norm();
            }
            if dead {
                continue;
            }
            if sign_exp % 2 == 1 {
                coeff = -coeff;
            }
            let parts: Vec<usize> = kept.iter().map(|&k| px[k]).collect();
            out.add_term(target.encode(&parts), coeff);
        }
        Ok(out)
    }

    /// Pulls this class back along the projection of `target` onto the listed
    /// factor positions (strictly increasing): the remaining positions are
    /// tensored with the unit class.
    pub fn pullback(&self, target: &Arc<Space>, positions: &[usize]) -> Result<GradedClass, ModelError> {
        let nf = self.space.num_factors();
        if positions.len() != nf {
            return Err(ModelError::BadFactor(positions.len()));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::BadFactor(positions[0]));
        }
        for (i, &p) in positions.iter().enumerate() {
            if p >= target.num_factors() {
                return Err(ModelError::BadFactor(p));
            }
            if target.factors()[p] != self.space.factors()[i] {
                return Err(ModelError::SpaceMismatch);
            }
        }
        let mut out = GradedClass::zero(target.clone());
        for (&ix, cx) in &self.coeffs {
            let px = self.space.decode(ix);
            let mut parts = vec![0usize; target.num_factors()];
            for (i, &p) in positions.iter().enumerate() {
                parts[p] = px[i];
            }
            out.add_term(target.encode(&parts), cx.clone());
        }
        Ok(out)
    }

    /// The part of the class in total degree `k`.
    pub fn degree_component(&self, k: usize) -> GradedClass {
        GradedClass {
            space: self.space.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&i, _)| self.space.degree(i) == k)
                .map(|(&i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for &i in self.coeffs.keys() {
            let d = self.space.degree(i);
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return false,
                _ => {}
            }
        }
        true
    }

    /// Degrees present in the class, sorted.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.coeffs.keys().map(|&i| self.space.degree(i)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// hʲ on a single tate-odd model.
pub fn h_power(model: &Arc<VarietyModel>, j: usize) -> GradedClass {
    let ModelSpec::TateOdd { n, .. } = model.spec() else {
        panic!("h_power needs a tate-odd model");
    };
    let space = Space::single(model.clone());
    if j > *n {
        GradedClass::zero(space)
    } else {
        GradedClass::basis(space, j)
    }
}

/// The point class o = (1/d)·hⁿ with ∫ o = 1.
pub fn point_class(model: &Arc<VarietyModel>) -> GradedClass {
    let ModelSpec::TateOdd { n, d, .. } = model.spec() else {
        panic!("point_class needs a tate-odd model");
    };
    h_power(model, *n).scale(&(Rat::one() / d))
}

/// The k-th odd middle generator v_k (1-based) of a tate-odd model.
pub fn odd_gen(model: &Arc<VarietyModel>, k: usize) -> GradedClass {
    let ModelSpec::TateOdd { n, b, .. } = model.spec() else {
        panic!("odd_gen needs a tate-odd model");
    };
    assert!(k >= 1 && k <= *b);
    GradedClass::basis(Space::single(model.clone()), n + k)
}

/// The four reference models of the verification suite.
pub mod varieties {
    use super::*;

    /// Genus-10 prime Fano threefold: (n,d,b) = (3,18,4).
    pub fn y18() -> Arc<VarietyModel> {
        Arc::new(VarietyModel::tate_odd(3, rat_int(18), 4).unwrap())
    }

    /// Index-2 degree-4 Fano threefold: (n,d,b) = (3,4,4).
    pub fn z4() -> Arc<VarietyModel> {
        Arc::new(VarietyModel::tate_odd(3, rat_int(4), 4).unwrap())
    }

    /// Genus-2 curve: (n,d,b) = (1,2,4).
    pub fn curve2() -> Arc<VarietyModel> {
        Arc::new(VarietyModel::tate_odd(1, rat_int(2), 4).unwrap())
    }

    /// Abelian surface: exterior algebra on H¹ of dimension 4.
    pub fn ab2() -> Arc<VarietyModel> {
        Arc::new(VarietyModel::exterior(2).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::varieties::*;
    use super::*;
    use crate::rat::rat;

    #[test]
    fn y_betti_vector() {
        assert_eq!(y18().betti(), vec![1, 0, 1, 4, 1, 0, 1]);
        assert_eq!(Space::single(y18()).euler_char(), 0);
    }

    #[test]
    fn f_betti_vector() {
        assert_eq!(ab2().betti(), vec![1, 4, 6, 4, 1]);
        assert_eq!(Space::single(ab2()).euler_char(), 0);
    }

    #[test]
    fn curve_betti_vector() {
        assert_eq!(curve2().betti(), vec![1, 4, 1]);
    }

    #[test]
    fn z_matches_y_betti() {
        assert_eq!(y18().betti(), z4().betti());
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(VarietyModel::tate_odd(3, rat_int(18), 3).is_err());
        assert!(VarietyModel::tate_odd(2, rat_int(5), 2).is_err());
        assert!(VarietyModel::tate_odd(3, rat_int(-1), 4).is_err());
        assert!(VarietyModel::exterior(0).is_err());
    }

    #[test]
    fn cup_h_tower() {
        let y = y18();
        let h = h_power(&y, 1);
        let h2 = h_power(&y, 2);
        // h² ∪ h = h³ = 18·o
        let h3 = h2.cup(&h).unwrap();
        assert_eq!(h3, point_class(&y).scale(&rat_int(18)));
        assert_eq!(h3.integrate(), rat_int(18));
        assert_eq!(point_class(&y).integrate(), rat_int(1));
    }

    #[test]
    fn cup_h_v_vanishes() {
        let y = y18();
        assert!(h_power(&y, 1).cup(&odd_gen(&y, 1)).unwrap().is_zero());
    }

    #[test]
    fn symplectic_structure_constants() {
        let y = y18();
        let (v1, v2) = (odd_gen(&y, 1), odd_gen(&y, 2));
        let o = point_class(&y);
        assert_eq!(v1.cup(&v2).unwrap(), o);
        assert_eq!(v2.cup(&v1).unwrap(), o.scale(&-Rat::one()));
        assert!(odd_gen(&y, 1).cup(&odd_gen(&y, 3)).unwrap().is_zero());
    }

    #[test]
    fn exterior_products() {
        let f = ab2();
        let s = Space::single(f.clone());
        // e1, e2 are basis indices 1, 2 in the popcount ordering
        let e1 = GradedClass::basis(s.clone(), 1);
        let e2 = GradedClass::basis(s.clone(), 2);
        let a = e1.cup(&e2).unwrap();
        let b = e2.cup(&e1).unwrap();
        assert_eq!(a, b.scale(&-Rat::one()));
        assert!(e1.cup(&e1).unwrap().is_zero());
    }

    #[test]
    fn kunneth_dim_h6_of_y_squared() {
        let yy = Space::power(y18(), 2);
        assert_eq!(yy.betti()[6], 20);
    }

    #[test]
    fn pushforward_examples() {
        let y = y18();
        let yy = Space::power(y.clone(), 2);
        let o = point_class(&y);
        let h = h_power(&y, 1);
        // o⊗h pushed to factor 2 gives h
        let oh = o
            .pullback(&yy, &[0])
            .unwrap()
            .cup(&h.pullback(&yy, &[1]).unwrap())
            .unwrap();
        assert_eq!(oh.pushforward(&[1]).unwrap(), h);
        // h⊗h pushed to factor 2 dies (no top class in factor 1)
        let hh = h
            .pullback(&yy, &[0])
            .unwrap()
            .cup(&h.pullback(&yy, &[1]).unwrap())
            .unwrap();
        assert!(hh.pushforward(&[1]).unwrap().is_zero());
    }

    #[test]
    fn degree_bookkeeping() {
        let y = y18();
        let s = Space::single(y.clone());
        assert_eq!(s.degree(3), 6); // h³
        assert_eq!(s.degree(4), 3); // v₁
        let mixed = GradedClass::from_terms(s, vec![(0, rat(1, 2)), (4, rat_int(1))]);
        assert!(!mixed.is_homogeneous());
        assert_eq!(mixed.degrees(), vec![0, 3]);
    }
}
